mod oracle;

use ialg_core::identities::{catalog, check_identity, predict_zn};
use ialg_core::special::{find_special, verify_entry, Kind};
use ialg_core::subs::{closure, ideals_of, principal_isotope, Side};
use ialg_core::*;
use proptest::prelude::*;

fn gpd(n: u64, t: u64, u: u64) -> Structure {
    zn_groupoid(n, t as i64, u as i64, Flavor::Interval).unwrap()
}

/// (n, t, u) with t, u reduced mod n.
fn zn_params(max: u64) -> impl Strategy<Value = (u64, u64, u64)> {
    (2..=max).prop_flat_map(|n| (Just(n), 0..n, 0..n))
}

fn loop_params() -> impl Strategy<Value = (u64, u64)> {
    (2u64..=12)
        .prop_map(|k| 2 * k + 1)
        .prop_flat_map(|n| (Just(n), 2..n))
        .prop_filter("valid loop", |&(n, m)| oracle::valid_loop(n, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn predictor_matches_brute_force((n, t, u) in zn_params(24)) {
        let s = gpd(n, t, u);
        let m = s.magma(0).unwrap();
        for id in catalog() {
            if let Some(p) = predict_zn(&id.name, n, t, u) {
                prop_assert_eq!(p, check_identity(m, &id).unwrap().is_strong(), "{} on Z_{}({},{})", id.name, n, t, u);
            }
        }
    }

    #[test]
    fn groupoid_matches_oracle((n, t, u) in zn_params(40), a in 0u64..40, b in 0u64..40) {
        let (a, b) = (a % n, b % n);
        let s = gpd(n, t, u);
        let got = s.apply(&Element::residue(a as i64, n), &Element::residue(b as i64, n)).unwrap();
        prop_assert_eq!(got.as_residue(), Some(oracle::zn(n, t, u, a, b)));
    }

    #[test]
    fn closure_is_idempotent((n, t, u) in zn_params(20), seed in prop::collection::vec(0u64..20, 1..4)) {
        let s = gpd(n, t, u);
        let seed: Vec<Element> = seed.into_iter().map(|v| Element::residue((v % n) as i64, n)).collect();
        let once = closure(&s, &seed).unwrap();
        let again = closure(&s, &once.elements(&s).unwrap()[0]).unwrap();
        prop_assert_eq!(&once.parts, &again.parts);
        prop_assert!(once.verify(&s).unwrap());
        let table = s.magma(0).unwrap().table().unwrap();
        prop_assert!(table.is_closed(&once.parts[0]));
    }

    #[test]
    fn transposition_swaps_ideal_sides((n, t, u) in zn_params(10)) {
        let a = gpd(n, t, u);
        let b = gpd(n, u, t);
        let (l, _) = ideals_of(a.magma(0).unwrap().table().unwrap(), Side::Left, 1 << 12);
        let (r, _) = ideals_of(b.magma(0).unwrap().table().unwrap(), Side::Right, 1 << 12);
        let (mut l, mut r) = (l, r);
        l.sort();
        r.sort();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn special_certificates_verify(n in 2u64..40, kind in prop::sample::select(Kind::ALL.to_vec())) {
        let s = zn_semigroup(n, SemigroupOp::Mul, Flavor::Interval).unwrap();
        let report = find_special(&s, kind).unwrap();
        for e in &report.elements {
            prop_assert!(verify_entry(&s, kind, e).unwrap(), "{:?} {} in Z_{}", kind, e.element, n);
        }
    }

    #[test]
    fn isotopes_of_loops_are_loops((n, m) in loop_params(), a in 0usize..25, b in 0usize..25) {
        let l = new_loop(n, m, Flavor::Interval).unwrap();
        let mg = l.magma(0).unwrap();
        let k = mg.order();
        let iso = principal_isotope(mg, mg.element(a % k), mg.element(b % k)).unwrap();
        let t = iso.table().unwrap();
        prop_assert!(t.is_latin());
        prop_assert!(t.identity().is_some());
    }

    #[test]
    fn loop_matches_oracle((n, m) in loop_params()) {
        let l = new_loop(n, m, Flavor::Plain).unwrap();
        let t = l.magma(0).unwrap().table().unwrap();
        let o = oracle::loop_table(n, m);
        for (i, row) in o.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                prop_assert_eq!(t.get(i, j), v);
            }
        }
    }

    #[test]
    fn product_is_componentwise((n1, t1, u1) in zn_params(9), (n2, t2, u2) in zn_params(9), a in 0u64..81, b in 0u64..81) {
        let p = product(&[gpd(n1, t1, u1), gpd(n2, t2, u2)]).unwrap();
        prop_assert_eq!(p.order().unwrap(), (n1 * n2) as u128);
        let x = Element::tuple([Element::residue((a % n1) as i64, n1), Element::residue((a / 9 % n2) as i64, n2)]);
        let y = Element::tuple([Element::residue((b % n1) as i64, n1), Element::residue((b / 9 % n2) as i64, n2)]);
        let xy = p.apply(&x, &y).unwrap();
        prop_assert_eq!(xy.components()[0].as_residue(), Some(oracle::zn(n1, t1, u1, a % n1, b % n1)));
        prop_assert_eq!(xy.components()[1].as_residue(), Some(oracle::zn(n2, t2, u2, a / 9 % n2, b / 9 % n2)));
    }
}
