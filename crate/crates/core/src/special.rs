//! Zero divisors, units, idempotents, nilpotents and Cauchy elements, plus
//! their quasi variants in products.
//!
//! Products are scanned componentwise: each component contributes a list of
//! candidate indices with certificates and the report is their filtered
//! cross product.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::lcm;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::magma::{CayleyTable, Magma};
use crate::structure::Structure;

/// Largest candidate cross product a single query will walk.
pub const MAX_SCAN: u128 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    ZeroDivisor,
    Unit,
    Idempotent,
    Nilpotent,
    Cauchy,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::ZeroDivisor, Kind::Unit, Kind::Idempotent, Kind::Nilpotent, Kind::Cauchy];

    pub fn name(self) -> &'static str {
        match self {
            Kind::ZeroDivisor => "zero-divisors",
            Kind::Unit => "units",
            Kind::Idempotent => "idempotents",
            Kind::Nilpotent => "nilpotents",
            Kind::Cauchy => "cauchy",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Kind::ALL.into_iter().find(|k| k.name() == s || k.name().trim_end_matches('s') == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The partner `y` (zero divisors and units).
    Partner(Element),
    /// The exponent `k` (nilpotents and Cauchy elements).
    Power(u64),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialEntry {
    pub element: Element,
    pub certificate: Certificate,
    /// The identity or the absorber itself.
    pub trivial: bool,
    /// Active components, for quasi variants.
    pub active_mask: Option<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialElementReport {
    pub kind: Kind,
    pub quasi: bool,
    pub elements: Vec<SpecialEntry>,
}

impl SpecialElementReport {
    pub fn contains(&self, x: &Element) -> bool {
        self.elements.iter().any(|e| &e.element == x)
    }

    pub fn entry(&self, x: &Element) -> Option<&SpecialEntry> {
        self.elements.iter().find(|e| &e.element == x)
    }
}

pub fn absorbing_element(m: &Magma) -> Result<Option<Element>> {
    m.absorber()
}

// Per-component certificate: partner index or exponent.
#[derive(Clone, Copy)]
enum Cert {
    Partner(usize),
    Power(usize),
    None,
}

struct Comp<'a> {
    magma: &'a Magma,
    table: &'a CayleyTable,
}

impl Comp<'_> {
    fn absorber(&self, i: usize) -> Result<usize> {
        self.table.absorber().ok_or(Error::NoAbsorberInComponent(i))
    }

    fn identity(&self) -> Result<usize> {
        self.table.identity().ok_or(Error::NoIdentity)
    }

    /// First `y` other than the absorber with `x y = z`.
    fn annihilator(&self, x: usize, z: usize) -> Option<usize> {
        (0..self.table.size()).find(|&y| y != z && self.table.get(x, y) == z)
    }

    fn inverse(&self, x: usize, e: usize) -> Option<usize> {
        (0..self.table.size()).find(|&y| self.table.get(x, y) == e && self.table.get(y, x) == e)
    }

    /// Candidates of `kind` inside this component; `strict` drops the
    /// absorber (used for active components of quasi variants).
    fn candidates(&self, idx: usize, kind: Kind, strict: bool) -> Result<Vec<(usize, Cert)>> {
        let t = self.table;
        let n = t.size();
        Ok(match kind {
            Kind::ZeroDivisor => {
                let z = self.absorber(idx)?;
                (0..n)
                    .filter(|&x| x != z)
                    .filter_map(|x| self.annihilator(x, z).map(|y| (x, Cert::Partner(y))))
                    .collect()
            }
            Kind::Unit => {
                let e = self.identity()?;
                (0..n)
                    .filter_map(|x| self.inverse(x, e).map(|y| (x, Cert::Partner(y))))
                    .collect()
            }
            Kind::Idempotent => {
                let z = if strict { Some(self.absorber(idx)?) } else { None };
                (0..n)
                    .filter(|&x| t.get(x, x) == x && Some(x) != z)
                    .map(|x| (x, Cert::None))
                    .collect()
            }
            Kind::Nilpotent => {
                let z = self.absorber(idx)?;
                (0..n)
                    .filter(|&x| !(strict && x == z))
                    .filter_map(|x| t.nilpotency(x, z).map(|k| (x, Cert::Power(k))))
                    .collect()
            }
            Kind::Cauchy => {
                let e = self.identity()?;
                (0..n)
                    .filter_map(|x| t.order_of(x, e).map(|k| (x, Cert::Power(k))))
                    .collect()
            }
        })
    }
}

fn components(structure: &Structure) -> Result<Vec<Comp<'_>>> {
    if !structure.is_finite() {
        return Err(Error::InfiniteCarrier);
    }
    structure
        .magmas()?
        .into_iter()
        .map(|m| Ok(Comp { magma: m, table: m.table()? }))
        .collect()
}

/// Walks the cross product of `lists` in mixed-radix order, first component
/// most significant.
fn cross_walk(lists: &[Vec<(usize, Cert)>], mut f: impl FnMut(&[(usize, Cert)])) -> Result<()> {
    let total: u128 = lists.iter().map(|l| l.len() as u128).product();
    if total > MAX_SCAN {
        return Err(Error::OrderTooLarge { order: total, cap: MAX_SCAN });
    }
    if total == 0 {
        return Ok(());
    }
    let mut digits = vec![0usize; lists.len()];
    let mut cur: Vec<(usize, Cert)> = lists.iter().map(|l| l[0]).collect();
    loop {
        f(&cur);
        let mut k = lists.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < lists[k].len() {
                cur[k] = lists[k][digits[k]];
                break;
            }
            digits[k] = 0;
            cur[k] = lists[k][0];
        }
    }
}

fn build(structure: &Structure, comps: &[Comp<'_>], idx: impl Iterator<Item = usize>) -> Element {
    structure.join(idx.zip(comps).map(|(i, c)| c.magma.element(i).clone()).collect())
}

fn power_cert(picked: &[(usize, Cert)], combine: impl Fn(u64, u64) -> u64) -> u64 {
    picked
        .iter()
        .filter_map(|(_, c)| match c {
            Cert::Power(k) => Some(*k as u64),
            _ => None,
        })
        .fold(1, combine)
}

/// Every element of `kind`, with certificates, in canonical element order.
pub fn find_special(structure: &Structure, kind: Kind) -> Result<SpecialElementReport> {
    let comps = components(structure)?;
    let ids: Vec<Option<usize>> = comps.iter().map(|c| c.table.identity()).collect();
    let zs: Vec<Option<usize>> = comps.iter().map(|c| c.table.absorber()).collect();
    let map_missing = |e: Error| match e {
        Error::NoAbsorberInComponent(_) => Error::NoAbsorber,
        other => other,
    };
    let is_trivial = |idx: &[(usize, Cert)]| {
        idx.iter().zip(&ids).all(|((x, _), e)| Some(*x) == *e) || idx.iter().zip(&zs).all(|((x, _), z)| Some(*x) == *z)
    };
    let mut elements = Vec::new();
    match kind {
        Kind::ZeroDivisor => {
            // Some component needs a proper annihilator; the others may use
            // the absorber as partner.
            let mut lists = Vec::new();
            let mut proper = Vec::new();
            for (i, c) in comps.iter().enumerate() {
                let z = c.absorber(i).map_err(map_missing)?;
                let ann: Vec<Option<usize>> = (0..c.table.size()).map(|x| c.annihilator(x, z)).collect();
                lists.push(
                    (0..c.table.size())
                        .map(|x| (x, Cert::Partner(ann[x].unwrap_or(z))))
                        .collect::<Vec<_>>(),
                );
                proper.push(ann);
            }
            cross_walk(&lists, |picked| {
                let some_proper = picked.iter().zip(&proper).any(|((x, _), a)| a[*x].is_some());
                let is_zero = picked.iter().zip(&zs).all(|((x, _), z)| Some(*x) == *z);
                if some_proper && !is_zero {
                    let partner = picked.iter().map(|(_, c)| match c {
                        Cert::Partner(y) => *y,
                        _ => unreachable!(),
                    });
                    elements.push(SpecialEntry {
                        element: build(structure, &comps, picked.iter().map(|p| p.0)),
                        certificate: Certificate::Partner(build(structure, &comps, partner)),
                        trivial: false,
                        active_mask: None,
                    });
                }
            })?;
        }
        Kind::Cauchy => {
            let order = structure.order()?;
            let lists = comps
                .iter()
                .enumerate()
                .map(|(i, c)| c.candidates(i, kind, false))
                .collect::<Result<Vec<_>>>()?;
            cross_walk(&lists, |picked| {
                let r = power_cert(picked, lcm);
                if r > 1 && order % r as u128 == 0 {
                    elements.push(SpecialEntry {
                        element: build(structure, &comps, picked.iter().map(|p| p.0)),
                        certificate: Certificate::Power(r),
                        trivial: false,
                        active_mask: None,
                    });
                }
            })?;
        }
        _ => {
            let lists = comps
                .iter()
                .enumerate()
                .map(|(i, c)| c.candidates(i, kind, false).map_err(map_missing))
                .collect::<Result<Vec<_>>>()?;
            cross_walk(&lists, |picked| {
                let certificate = match kind {
                    Kind::Unit => Certificate::Partner(build(
                        structure,
                        &comps,
                        picked.iter().map(|(_, c)| match c {
                            Cert::Partner(y) => *y,
                            _ => unreachable!(),
                        }),
                    )),
                    Kind::Nilpotent => Certificate::Power(power_cert(picked, u64::max)),
                    _ => Certificate::None,
                };
                elements.push(SpecialEntry {
                    element: build(structure, &comps, picked.iter().map(|p| p.0)),
                    certificate,
                    trivial: is_trivial(picked),
                    active_mask: None,
                });
            })?;
        }
    }
    Ok(SpecialElementReport {
        kind,
        quasi: false,
        elements,
    })
}

/// Quasi variants: active components satisfy `kind` (and differ from their
/// absorber), inactive ones sit at their absorber. `mask` picks one active
/// set; `None` scans every proper nonempty one.
pub fn find_quasi_special(structure: &Structure, kind: Kind, mask: Option<&[bool]>) -> Result<SpecialElementReport> {
    if !structure.is_product() {
        return Err(Error::NotAProduct);
    }
    let comps = components(structure)?;
    let k = comps.len();
    let masks: Vec<Vec<bool>> = match mask {
        Some(m) => {
            if m.len() != k {
                return Err(Error::ArityMismatch { expected: k, found: m.len() });
            }
            if m.iter().all(|&b| b) || m.iter().all(|&b| !b) {
                return Err(Error::UnsupportedRule(alloc::string::String::from(
                    "quasi mask must be a proper nonempty subset",
                )));
            }
            vec![m.to_vec()]
        }
        None => (1..(1u32 << k) - 1)
            .map(|bits| (0..k).map(|i| bits & (1 << (k - 1 - i)) != 0).collect())
            .collect(),
    };
    let order = structure.order()?;
    let mut elements = Vec::new();
    for m in masks {
        let mut lists = Vec::with_capacity(k);
        for (i, (c, &active)) in comps.iter().zip(&m).enumerate() {
            let z = c.absorber(i)?;
            if active {
                let mut l = c.candidates(i, kind, true)?;
                l.retain(|(x, _)| *x != z);
                lists.push(l);
            } else {
                lists.push(vec![(z, Cert::Partner(z))]);
            }
        }
        cross_walk(&lists, |picked| {
            let certificate = match kind {
                Kind::ZeroDivisor | Kind::Unit => Certificate::Partner(build(
                    structure,
                    &comps,
                    picked.iter().map(|(x, c)| match c {
                        Cert::Partner(y) => *y,
                        _ => *x,
                    }),
                )),
                Kind::Idempotent => Certificate::None,
                Kind::Nilpotent => Certificate::Power(power_cert(picked, u64::max)),
                Kind::Cauchy => Certificate::Power(power_cert(picked, lcm)),
            };
            if let Certificate::Power(r) = certificate {
                if kind == Kind::Cauchy && (r <= 1 || order % r as u128 != 0) {
                    return;
                }
            }
            elements.push(SpecialEntry {
                element: build(structure, &comps, picked.iter().map(|p| p.0)),
                certificate,
                trivial: false,
                active_mask: Some(m.clone()),
            });
        })?;
    }
    Ok(SpecialElementReport {
        kind,
        quasi: true,
        elements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyEntry {
    pub element: Element,
    /// Order of each component.
    pub orders: Vec<u64>,
    pub lcm: u64,
    pub product: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyAudit {
    pub order: u128,
    /// `lcm(r_i) > 1` divides the order.
    pub standard: Vec<CauchyEntry>,
    /// Every `r_i > 1` and `prod r_i` divides the order.
    pub book_mode: Vec<CauchyEntry>,
    /// Every `r_i > 1` but `prod r_i` does not divide the order.
    pub book_failures: Vec<CauchyEntry>,
}

pub fn cauchy_audit(structure: &Structure) -> Result<CauchyAudit> {
    let comps = components(structure)?;
    let order = structure.order()?;
    let lists = comps
        .iter()
        .enumerate()
        .map(|(i, c)| c.candidates(i, Kind::Cauchy, false))
        .collect::<Result<Vec<_>>>()?;
    let mut audit = CauchyAudit {
        order,
        standard: Vec::new(),
        book_mode: Vec::new(),
        book_failures: Vec::new(),
    };
    cross_walk(&lists, |picked| {
        let orders: Vec<u64> = picked
            .iter()
            .map(|(_, c)| match c {
                Cert::Power(k) => *k as u64,
                _ => unreachable!(),
            })
            .collect();
        let l = orders.iter().copied().fold(1, lcm);
        let product: u128 = orders.iter().map(|&r| r as u128).product();
        let standard = l > 1 && order % l as u128 == 0;
        let book_shape = orders.iter().all(|&r| r > 1);
        if !standard && !book_shape {
            return;
        }
        let entry = CauchyEntry {
            element: build(structure, &comps, picked.iter().map(|p| p.0)),
            orders,
            lcm: l,
            product,
        };
        if book_shape {
            if order % product == 0 {
                audit.book_mode.push(entry.clone());
            } else {
                audit.book_failures.push(entry.clone());
            }
        }
        if standard {
            audit.standard.push(entry);
        }
    })?;
    Ok(audit)
}

/// Re-checks a certificate against the defining equation.
pub fn verify_entry(structure: &Structure, kind: Kind, entry: &SpecialEntry) -> Result<bool> {
    let x = &entry.element;
    let mask = entry.active_mask.as_deref();
    // Expected value of x*y per kind; quasi entries keep inactive parts at
    // the absorber, which is what the componentwise product yields there.
    let target = |use_identity: bool| -> Result<Option<Element>> {
        let parts = structure.split(x)?;
        let mut out = Vec::with_capacity(parts.len());
        for (i, m) in structure.magmas()?.into_iter().enumerate() {
            let active = mask.is_none_or(|mk| mk[i]);
            let v = if use_identity && active { m.identity()? } else { m.absorber()? };
            match v {
                Some(v) => out.push(v),
                None => return Ok(None),
            }
        }
        Ok(Some(structure.join(out)))
    };
    Ok(match (&entry.certificate, kind) {
        (Certificate::Partner(y), Kind::ZeroDivisor) => {
            let z = structure.absorber()?;
            z.as_ref() != Some(y) && Some(structure.apply(x, y)?) == z
        }
        (Certificate::Partner(y), Kind::Unit) => {
            let e = target(true)?;
            Some(structure.apply(x, y)?) == e && Some(structure.apply(y, x)?) == e
        }
        (Certificate::None, Kind::Idempotent) => structure.apply(x, x)? == *x,
        (Certificate::Power(k), Kind::Nilpotent) => {
            let z = structure.absorber()?;
            let pow = |k: u64| -> Result<Element> {
                let mut acc = x.clone();
                for _ in 1..k {
                    acc = structure.apply(x, &acc)?;
                }
                Ok(acc)
            };
            Some(pow(*k)?) == z && (*k == 1 || Some(pow(*k - 1)?) != z)
        }
        (Certificate::Power(k), Kind::Cauchy) => match mask {
            None => structure.element_order(x)? == Some(*k),
            Some(_) => {
                let mut acc = x.clone();
                for _ in 1..*k {
                    acc = structure.apply(x, &acc)?;
                }
                Some(acc) == target(true)?
            }
        },
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::structure::Flavor;

    const I: Flavor = Flavor::Interval;

    fn zmul(n: u64) -> Structure {
        zn_semigroup(n, SemigroupOp::Mul, I).unwrap()
    }

    fn r(v: i64, n: u64) -> Element {
        Element::residue(v, n)
    }

    #[test]
    fn absorbers() {
        let m = zmul(12);
        assert_eq!(absorbing_element(m.magma(0).unwrap()).unwrap(), Some(r(0, 12)));
        let a = zn_semigroup(12, SemigroupOp::Add, I).unwrap();
        assert_eq!(absorbing_element(a.magma(0).unwrap()).unwrap(), None);
    }

    #[test]
    fn idempotents_z12() {
        let rep = find_special(&zmul(12), Kind::Idempotent).unwrap();
        let got: Vec<Element> = rep.elements.iter().map(|e| e.element.clone()).collect();
        assert_eq!(got, vec![r(0, 12), r(1, 12), r(4, 12), r(9, 12)]);
        assert!(rep.elements[0].trivial && rep.elements[1].trivial && !rep.elements[2].trivial);
    }

    #[test]
    fn product_specials() {
        let s = product(&[zmul(12), zmul(420)]).unwrap();
        let zd = find_special(&s, Kind::ZeroDivisor).unwrap();
        let a = Element::tuple(vec![r(6, 12), r(60, 420)]);
        assert!(zd.contains(&a));
        let units = find_special(&s, Kind::Unit).unwrap();
        let u = Element::tuple(vec![r(11, 12), r(419, 420)]);
        assert_eq!(units.entry(&u).unwrap().certificate, Certificate::Partner(u.clone()));
        assert!(zd.elements.iter().step_by(97).all(|e| verify_entry(&s, Kind::ZeroDivisor, e).unwrap()));
        assert!(units.elements.iter().all(|e| verify_entry(&s, Kind::Unit, e).unwrap()));
    }

    #[test]
    fn errors() {
        let a = zn_semigroup(12, SemigroupOp::Add, I).unwrap();
        assert_eq!(find_special(&a, Kind::ZeroDivisor), Err(Error::NoAbsorber));
        let g = zn_groupoid(7, 2, 3, I).unwrap();
        assert_eq!(find_special(&g, Kind::Unit), Err(Error::NoIdentity));
        let p = product(&[zmul(7), a]).unwrap();
        assert_eq!(
            find_quasi_special(&p, Kind::Unit, Some(&[true, false])),
            Err(Error::NoAbsorberInComponent(1))
        );
        assert_eq!(find_quasi_special(&zmul(7), Kind::Unit, None), Err(Error::NotAProduct));
    }

    #[test]
    fn quasi() {
        let p = product(&[zmul(7), zmul(50)]).unwrap();
        let rep = find_quasi_special(&p, Kind::Unit, Some(&[false, true])).unwrap();
        let x = Element::tuple(vec![r(0, 7), r(49, 50)]);
        assert!(rep.contains(&x));
        let p = product(&[zmul(29), zmul(35)]).unwrap();
        let rep = find_quasi_special(&p, Kind::ZeroDivisor, Some(&[false, true])).unwrap();
        let e = rep.entry(&Element::tuple(vec![r(0, 29), r(5, 35)])).unwrap();
        assert_eq!(e.certificate, Certificate::Partner(Element::tuple(vec![r(0, 29), r(7, 35)])));
        assert!(verify_entry(&p, Kind::ZeroDivisor, e).unwrap());
        let rep = find_quasi_special(&p, Kind::Idempotent, None).unwrap();
        assert!(rep.contains(&Element::tuple(vec![r(0, 29), r(15, 35)])));
        for e in &rep.elements {
            assert!(verify_entry(&p, Kind::Idempotent, e).unwrap());
        }
    }

    #[test]
    fn nilpotents_and_primes() {
        let rep = find_special(&zmul(8), Kind::Nilpotent).unwrap();
        let got: Vec<(Element, Certificate)> = rep.elements.iter().map(|e| (e.element.clone(), e.certificate.clone())).collect();
        assert_eq!(
            got,
            vec![
                (r(0, 8), Certificate::Power(1)),
                (r(2, 8), Certificate::Power(3)),
                (r(4, 8), Certificate::Power(2)),
                (r(6, 8), Certificate::Power(3)),
            ]
        );
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
            assert!(find_special(&zmul(p), Kind::ZeroDivisor).unwrap().elements.is_empty());
            let ids = find_special(&zmul(p), Kind::Idempotent).unwrap();
            assert_eq!(ids.elements.len(), 2);
        }
    }

    #[test]
    fn cauchy() {
        let s = product(&[units_group(11, I).unwrap(), zmul(9)]).unwrap();
        let a = cauchy_audit(&s).unwrap();
        assert_eq!(a.order, 90);
        let x = Element::tuple(vec![r(10, 11), r(8, 9)]);
        let f = a.book_failures.iter().find(|e| e.element == x).unwrap();
        assert_eq!((f.orders.clone(), f.product), (vec![2, 2], 4));
        let l = product(&[new_loop(5, 2, I).unwrap(), new_loop(7, 3, I).unwrap()]).unwrap();
        let a = cauchy_audit(&l).unwrap();
        assert_eq!(a.book_mode.len(), 35);
        assert!(a.book_failures.is_empty());
        assert!(a.standard.iter().all(|e| e.lcm > 1));
    }
}
