//! Registry of checkable claims, parameter sweeps with counterexamples,
//! known-errata registry, the `F_n` count and homomorphism checks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{factorize, gcd, is_prime, primes_in};
use crate::construct::{
    check_loop_params, matrix_structure, new_loop, product, units_group, valid_loop_params, zn_groupoid, zn_semigroup,
    MatrixMode, SemigroupOp,
};
use crate::element::{Element, Matrix};
use crate::error::{Error, Result};
use crate::identities::{check_identity, lookup, Grade};
use crate::magma::ClassLabel;
use crate::rule::loop_mul;
use crate::special::{cauchy_audit, find_special, Kind};
use crate::structure::{Flavor, Structure};
use crate::subs::{
    ideals_of, lagrange_audit, loop_centers, loop_subloop_family, normalizers, principal_isotope, smarandache_witness,
    table_is_simple, LagrangeGrade, Side, SimpleMode, DEFAULT_BUDGET,
};

const I: Flavor = Flavor::Interval;

/// One sweep instance: named parameter values.
/// Summary line computed over all checked instances.
type NoteFn = fn(&[Params]) -> Result<String>;

pub type Params = Vec<(&'static str, u64)>;

fn get(p: &Params, key: &str) -> u64 {
    p.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).expect("parameter present")
}

pub fn render_params(p: &Params) -> String {
    let parts: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(",")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyRange {
    pub key: &'static str,
    pub lo: u64,
    pub hi: u64,
    /// Largest `hi` a sweep may request.
    pub max: u64,
}

const fn key(key: &'static str, lo: u64, hi: u64, max: u64) -> KeyRange {
    KeyRange { key, lo, hi, max }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClaimStatus {
    PaperAsserted,
    /// Asserted, but a printed example contradicts it or its own arithmetic.
    RefutedInPrint,
    /// A printed counterexample to a classical theorem, reproduced.
    Demonstration,
}

impl ClaimStatus {
    pub fn name(self) -> &'static str {
        match self {
            ClaimStatus::PaperAsserted => "paper-asserted",
            ClaimStatus::RefutedInPrint => "paper-asserted, refuted-in-print",
            ClaimStatus::Demonstration => "demonstration",
        }
    }
}

/// Resolved sweep bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds(Vec<(&'static str, u64, u64)>);

impl Bounds {
    pub fn get(&self, key: &str) -> (u64, u64) {
        self.0
            .iter()
            .find(|(k, _, _)| *k == key)
            .map(|&(_, lo, hi)| (lo, hi))
            .expect("declared key")
    }

    fn range(&self, key: &str) -> core::ops::RangeInclusive<u64> {
        let (lo, hi) = self.get(key);
        lo..=hi
    }
}

/// `key=lo..hi` pairs separated by commas or whitespace; `key=v` pins one
/// value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RangeSpec(pub Vec<(String, u64, u64)>);

impl RangeSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for part in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::BadRange(part.to_string()))?;
            let num = |x: &str| x.trim().parse::<u64>().map_err(|_| Error::BadRange(part.to_string()));
            let (lo, hi) = match v.split_once("..") {
                Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
                None => {
                    let x = num(v)?;
                    (x, x)
                }
            };
            if lo > hi {
                return Err(Error::BadRange(part.to_string()));
            }
            out.push((k.trim().to_string(), lo, hi));
        }
        Ok(RangeSpec(out))
    }
}

pub struct TheoremClaim {
    pub id: &'static str,
    pub statement: &'static str,
    pub status: ClaimStatus,
    pub keys: &'static [KeyRange],
    pub errata: &'static [&'static str],
    instances: fn(&Bounds) -> Vec<Params>,
    check: fn(&Params) -> Result<Option<String>>,
    note: Option<NoteFn>,
}

impl core::fmt::Debug for TheoremClaim {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("TheoremClaim").field("id", &self.id).finish_non_exhaustive()
    }
}

impl TheoremClaim {
    pub fn default_bounds(&self) -> Bounds {
        Bounds(self.keys.iter().map(|k| (k.key, k.lo, k.hi)).collect())
    }

    pub fn bounds(&self, spec: &RangeSpec) -> Result<Bounds> {
        let mut b = self.default_bounds();
        for (k, lo, hi) in &spec.0 {
            let decl = self
                .keys
                .iter()
                .find(|d| d.key == k)
                .ok_or_else(|| Error::BadRange(format!("{} has no parameter '{k}'", self.id)))?;
            if *hi > decl.max {
                return Err(Error::RangeTooLarge(format!("{k} <= {} for {}", decl.max, self.id)));
            }
            let slot = b.0.iter_mut().find(|(key, _, _)| *key == decl.key).expect("declared");
            slot.1 = *lo;
            slot.2 = *hi;
        }
        Ok(b)
    }

    pub fn instances(&self, bounds: &Bounds) -> Vec<Params> {
        (self.instances)(bounds)
    }

    /// Evaluates one instance: `None` confirms, `Some` is a counterexample.
    pub fn check(&self, params: &Params) -> Result<Option<String>> {
        (self.check)(params)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub params: Params,
    pub counterexample: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub claim: &'static str,
    pub status: ClaimStatus,
    pub checked: u64,
    pub confirmed: u64,
    pub refuted: Vec<Refutation>,
    pub errata_refs: Vec<&'static str>,
    pub note: String,
}

pub fn lookup_claim(id: &str) -> Result<TheoremClaim> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

pub fn audit(id: &str, spec: &RangeSpec) -> Result<AuditReport> {
    let claim = lookup_claim(id)?;
    let bounds = claim.bounds(spec)?;
    let instances = claim.instances(&bounds);
    let mut refuted = Vec::new();
    for p in &instances {
        if let Some(cx) = claim.check(p)? {
            refuted.push(Refutation {
                params: p.clone(),
                counterexample: cx,
            });
        }
    }
    let checked = instances.len() as u64;
    let note = match claim.note {
        Some(f) => f(&instances)?,
        None => String::new(),
    };
    Ok(AuditReport {
        claim: claim.id,
        status: claim.status,
        checked,
        confirmed: checked - refuted.len() as u64,
        refuted,
        errata_refs: claim.errata.to_vec(),
        note,
    })
}

/// Re-runs one instance of a claim.
pub fn replay(id: &str, params: &Params) -> Result<Option<String>> {
    lookup_claim(id)?.check(params)
}

fn divides(n: u64, v: i128) -> bool {
    v.rem_euclid(n as i128) == 0
}

fn gpd(n: u64, t: u64, u: u64) -> Result<Structure> {
    zn_groupoid(n, t as i64, u as i64, I)
}

fn zmul(n: u64) -> Result<Structure> {
    zn_semigroup(n, SemigroupOp::Mul, I)
}

/// Verdict of a catalog identity on a single-component structure, with the
/// first violating assignment.
fn verdict(s: &Structure, name: &str) -> Result<(bool, Option<Vec<usize>>)> {
    let v = check_identity(s.magma(0)?, &lookup(name)?)?;
    Ok(match v.grade {
        Grade::Fails(cx) => (false, Some(cx)),
        _ => (true, None),
    })
}

fn describe(name: &str, got: bool, cx: &Option<Vec<usize>>) -> String {
    match cx {
        Some(c) if !got => {
            let vars: Vec<String> = c.iter().zip(["x", "y", "z"]).map(|(v, k)| format!("{k}={v}")).collect();
            format!("{name} fails at {}", vars.join(","))
        }
        _ => format!("{name} holds"),
    }
}

fn odd_loops(b: &Bounds, key: &str, filter: impl Fn(u64) -> bool) -> Vec<Params> {
    let mut out = Vec::new();
    for n in b.range(key).filter(|&n| n % 2 == 1 && n > 3 && filter(n)) {
        for m in valid_loop_params(n) {
            out.push(vec![("n", n), ("m", m)]);
        }
    }
    out
}

fn primes(b: &Bounds, key: &str) -> Vec<u64> {
    let (lo, hi) = b.get(key);
    primes_in(lo, hi)
}

fn all_tu(b: &Bounds) -> Vec<Params> {
    let mut out = Vec::new();
    for n in b.range("n").filter(|&n| n >= 2) {
        for t in 0..n {
            for u in 0..n {
                out.push(vec![("n", n), ("t", t), ("u", u)]);
            }
        }
    }
    out
}

fn all_nt(b: &Bounds) -> Vec<Params> {
    let mut out = Vec::new();
    for n in b.range("n").filter(|&n| n >= 2) {
        for t in 0..n {
            out.push(vec![("n", n), ("t", t)]);
        }
    }
    out
}

fn loop_of(p: &Params) -> Result<Structure> {
    new_loop(get(p, "n"), get(p, "m"), I)
}

fn check_idem(p: &Params) -> Result<Option<String>> {
    let (n, t, u) = (get(p, "n"), get(p, "t"), get(p, "u"));
    let (got, cx) = verdict(&gpd(n, t, u)?, "idempotent-law")?;
    let want = divides(n, t as i128 + u as i128 - 1);
    Ok((got != want).then(|| format!("{}; n | t+u-1 is {want}", describe("idempotent-law", got, &cx))))
}

fn check_ptt(p: &Params) -> Result<Option<String>> {
    let (n, t) = (get(p, "n"), get(p, "t"));
    let (got, cx) = verdict(&gpd(n, t, t)?, "P-identity")?;
    Ok((!got).then(|| describe("P-identity", got, &cx)))
}

fn zero_family(p: &Params, names: &[&str]) -> Result<Option<String>> {
    let (n, t) = (get(p, "n"), get(p, "t"));
    let want = divides(n, t as i128 * t as i128 - t as i128);
    for (a, b) in [(0, t), (t, 0)] {
        let s = gpd(n, a, b)?;
        for name in names {
            let (got, cx) = verdict(&s, name)?;
            if got != want {
                return Ok(Some(format!("Z_{n}({a},{b}): {}; n | t^2-t is {want}", describe(name, got, &cx))));
            }
        }
    }
    Ok(None)
}

fn check_alt(p: &Params) -> Result<Option<String>> {
    zero_family(p, &["left-alternative", "right-alternative"])
}

fn check_p_zero(p: &Params) -> Result<Option<String>> {
    zero_family(p, &["P-identity"])
}

const FAMILY: [&str; 5] = ["left-alternative", "right-alternative", "P-identity", "bol", "moufang"];

fn check_strong_family(p: &Params) -> Result<Option<String>> {
    let (n, t) = (get(p, "n"), get(p, "t"));
    let u = (1 + n - t % n) % n;
    let s = gpd(n, t, u)?;
    let want = divides(n, t as i128 * t as i128 - t as i128);
    let mut bad = Vec::new();
    for name in FAMILY {
        let (got, cx) = verdict(&s, name)?;
        if got != want {
            bad.push(describe(name, got, &cx));
        }
    }
    Ok((!bad.is_empty()).then(|| format!("Z_{n}({t},{u}): {}; n | t^2-t is {want}", bad.join("; "))))
}

fn sgpd_instances(b: &Bounds) -> Vec<Params> {
    let mut out = Vec::new();
    for n in b.range("n").filter(|&n| n > 5) {
        for t in 0..n {
            for u in 0..n {
                if gcd(t, u) == 1 && t != u && (t + u) % n == 1 {
                    out.push(vec![("n", n), ("t", t), ("u", u)]);
                }
            }
        }
    }
    out
}

fn check_sgpd(p: &Params) -> Result<Option<String>> {
    let s = gpd(get(p, "n"), get(p, "t"), get(p, "u"))?;
    let w = smarandache_witness(&s)?;
    Ok(w.parts[0].is_none().then(|| "no proper subsemigroup witness".to_string()))
}

fn check_ideal_dual(p: &Params) -> Result<Option<String>> {
    let (n, t, u) = (get(p, "n"), get(p, "t"), get(p, "u"));
    let a = gpd(n, t, u)?;
    let b = gpd(n, u, t)?;
    let (right, c1) = ideals_of(a.magma(0)?.table()?, Side::Right, DEFAULT_BUDGET);
    let (left, c2) = ideals_of(b.magma(0)?.table()?, Side::Left, DEFAULT_BUDGET);
    if !(c1 && c2) {
        return Ok(Some("ideal enumeration exceeded its budget".to_string()));
    }
    if right == left {
        return Ok(None);
    }
    let odd = right
        .iter()
        .find(|s| !left.contains(s))
        .map(|s| format!("right ideal {s:?} of Z_{n}({t},{u}) is not a left ideal of Z_{n}({u},{t})"))
        .or_else(|| {
            left.iter()
                .find(|s| !right.contains(s))
                .map(|s| format!("left ideal {s:?} of Z_{n}({u},{t}) is not a right ideal of Z_{n}({t},{u})"))
        });
    Ok(odd)
}

fn prime_instances(b: &Bounds) -> Vec<Params> {
    primes(b, "p").into_iter().map(|p| vec![("p", p)]).collect()
}

fn check_simple_add(p: &Params) -> Result<Option<String>> {
    let s = zn_semigroup(get(p, "p"), SemigroupOp::Add, I)?;
    Ok((!table_is_simple(s.magma(0)?.table()?, SimpleMode::Substructure)).then(|| "has a proper subsemigroup".to_string()))
}

fn check_ideal_simple(p: &Params) -> Result<Option<String>> {
    let s = zmul(get(p, "p"))?;
    Ok((!table_is_simple(s.magma(0)?.table()?, SimpleMode::Ideal)).then(|| "has a proper nontrivial ideal".to_string()))
}

fn all_odd_nm(b: &Bounds) -> Vec<Params> {
    let mut out = Vec::new();
    for n in b.range("n").filter(|&n| n % 2 == 1 && n > 3) {
        for m in 2..n {
            out.push(vec![("n", n), ("m", m)]);
        }
    }
    out
}

fn check_loop_axioms(p: &Params) -> Result<Option<String>> {
    let (n, m) = (get(p, "n"), get(p, "m"));
    let valid = check_loop_params(n, m).is_ok();
    let built = new_loop(n, m, I);
    let s = match (valid, built) {
        (true, Ok(s)) => s,
        (true, Err(e)) => return Ok(Some(format!("valid parameters rejected: {e}"))),
        (false, Ok(_)) => return Ok(Some("invalid parameters accepted".to_string())),
        (false, Err(_)) => return Ok(None),
    };
    let t = s.magma(0)?.table()?;
    if !t.is_latin() {
        return Ok(Some("table is not latin".to_string()));
    }
    if t.identity() != Some(0) {
        return Ok(Some("e is not the identity".to_string()));
    }
    if let Some(x) = (1..t.size()).find(|&x| t.get(x, x) != 0) {
        return Ok(Some(format!("[0,{x}]*[0,{x}] = [0,{}]", t.get(x, x))));
    }
    Ok(None)
}

fn check_loop_order2(p: &Params) -> Result<Option<String>> {
    let n = get(p, "n");
    let s = loop_of(p)?;
    let t = s.magma(0)?.table()?;
    if let Some(x) = (1..t.size()).find(|&x| t.order_of(x, 0) != Some(2)) {
        return Ok(Some(format!("[0,{x}] has order {:?}", t.order_of(x, 0))));
    }
    let cauchy = find_special(&s, Kind::Cauchy)?;
    Ok((cauchy.elements.len() as u64 != n).then(|| format!("{} Cauchy elements, expected {n}", cauchy.elements.len())))
}

fn loop_pairs(b: &Bounds) -> Vec<Params> {
    let loops = odd_loops(b, "n", |_| true);
    let mut out = Vec::new();
    for a in &loops {
        for c in &loops {
            if get(a, "n") < get(c, "n") {
                out.push(vec![("n", get(a, "n")), ("m", get(a, "m")), ("k", get(c, "n")), ("s", get(c, "m"))]);
            }
        }
    }
    out
}

fn check_cauchy_pair(p: &Params) -> Result<Option<String>> {
    let a = new_loop(get(p, "n"), get(p, "m"), I)?;
    let b = new_loop(get(p, "k"), get(p, "s"), I)?;
    let s = product(&[a, b])?;
    let audit = cauchy_audit(&s)?;
    if let Some(f) = audit.book_failures.first() {
        return Ok(Some(format!("{} has book order {} not dividing {}", f.element.label(true), f.product, audit.order)));
    }
    let want = (get(p, "n") * get(p, "k")) as usize;
    Ok((audit.book_mode.len() != want).then(|| format!("{} book-Cauchy elements, expected {want}", audit.book_mode.len())))
}

fn prime_loops(b: &Bounds) -> Vec<Params> {
    odd_loops(b, "p", is_prime)
}

fn check_2sylow(p: &Params) -> Result<Option<String>> {
    let n = get(p, "n");
    let s = loop_of(p)?;
    let r = lagrange_audit(&s, Some(ClassLabel::Group))?;
    if let Some((sub, _)) = r.entries.iter().find(|(sub, _)| sub.order() != 2) {
        return Ok(Some(format!("subgroup of order {}", sub.order())));
    }
    if r.entries.is_empty() || r.grade != LagrangeGrade::Lagrange || !(n + 1).is_multiple_of(2) {
        return Ok(Some(format!("grade {} over {} subgroups", r.grade.name(), r.entries.len())));
    }
    Ok(None)
}

fn all_valid_loops(b: &Bounds) -> Vec<Params> {
    odd_loops(b, "n", |_| true)
}

fn check_comm_loop(p: &Params) -> Result<Option<String>> {
    let (n, m) = (get(p, "n"), get(p, "m"));
    let (got, cx) = verdict(&loop_of(p)?, "commutative")?;
    let want = 2 * m == n + 1;
    Ok((got != want).then(|| format!("{}; m = (n+1)/2 is {want}", describe("commutative", got, &cx))))
}

fn odd_n(b: &Bounds) -> Vec<Params> {
    b.range("n").filter(|&n| n % 2 == 1 && n > 3).map(|n| vec![("n", n)]).collect()
}

fn check_fn_count(p: &Params) -> Result<Option<String>> {
    let c = strict_noncommutative_count(get(p, "n"))?;
    Ok((c.brute != c.formula).then(|| format!("brute {} but formula {}", c.brute, c.formula)))
}

fn normalizer_instances(b: &Bounds) -> Vec<Params> {
    let mut out = Vec::new();
    for base in odd_loops(b, "n", |n| !is_prime(n)) {
        let n = get(&base, "n");
        for t in (2..n).filter(|t| n.is_multiple_of(*t)) {
            let mut p = base.clone();
            p.push(("t", t));
            out.push(p);
        }
    }
    out
}

fn h_set(n: u64, t: u64, i: u64) -> Vec<usize> {
    let mut h: Vec<usize> = vec![0];
    h.extend((0..n / t).map(|k| (i + k * t) as usize));
    h.sort_unstable();
    h
}

fn check_normalizer(p: &Params) -> Result<Option<String>> {
    let (n, m, t) = (get(p, "n"), get(p, "m"), get(p, "t"));
    let s = loop_of(p)?;
    let nz = normalizers(s.magma(0)?, &h_set(n, t, 1))?;
    let want = gcd(m * m - m + 1, t) == gcd(2 * m - 1, t);
    Ok((nz.equal != want).then(|| {
        format!(
            "first {:?}, second {:?}; gcd(m^2-m+1,t) = gcd(2m-1,t) is {want}",
            nz.first, nz.second
        )
    }))
}

fn check_moufang_center(p: &Params) -> Result<Option<String>> {
    let s = loop_of(p)?;
    let c = loop_centers(s.magma(0)?)?;
    let whole = c.moufang_center.len() == s.magma(0)?.order();
    Ok((!(whole || c.moufang_center == [0])).then(|| format!("Moufang center {:?}", c.moufang_center)))
}

fn check_center_e(p: &Params) -> Result<Option<String>> {
    let c = loop_centers(loop_of(p)?.magma(0)?)?;
    Ok((c.center != [0]).then(|| format!("center {:?}", c.center)))
}

fn composite_loops(b: &Bounds) -> Vec<Params> {
    odd_loops(b, "n", |n| !is_prime(n))
}

fn check_subloop_family(p: &Params) -> Result<Option<String>> {
    let n = get(p, "n");
    for h in loop_subloop_family(&loop_of(p)?)? {
        if !h.closed || !h.is_loop || h.elements.len() as u64 != n / h.t + 1 {
            return Ok(Some(format!(
                "H_{}({}) = {:?}: closed {}, loop {}",
                h.i, h.t, h.elements, h.closed, h.is_loop
            )));
        }
    }
    Ok(None)
}

fn idem_gpd_instances(b: &Bounds) -> Vec<Params> {
    let mut out = Vec::new();
    for n in b.range("n").filter(|&n| n >= 2) {
        for t in 0..n {
            for u in 0..n {
                if gcd(t, u) == 1 && (t + u) % n == 1 % n {
                    out.push(vec![("n", n), ("t", t), ("u", u)]);
                }
            }
        }
    }
    out
}

fn check_idem_gpd(p: &Params) -> Result<Option<String>> {
    let (n, t, u) = (get(p, "n"), get(p, "t"), get(p, "u"));
    let (got, cx) = verdict(&gpd(n, t, u)?, "idempotent-law")?;
    Ok((!got).then(|| describe("idempotent-law", got, &cx)))
}

fn odd_primes(b: &Bounds) -> Vec<Params> {
    primes(b, "p").into_iter().filter(|&p| p > 2).map(|p| vec![("p", p)]).collect()
}

fn check_prime_half(p: &Params) -> Result<Option<String>> {
    let q = get(p, "p");
    let h = q.div_ceil(2);
    let (got, cx) = verdict(&gpd(q, h, h)?, "idempotent-law")?;
    Ok((!got).then(|| describe("idempotent-law", got, &cx)))
}

fn prime_sets(b: &Bounds) -> Vec<Params> {
    let ps = primes(b, "p");
    let mut out = Vec::new();
    for (i, &a) in ps.iter().enumerate() {
        for (j, &c) in ps.iter().enumerate().skip(i + 1) {
            out.push(vec![("p", a), ("q", c)]);
            for &d in &ps[j + 1..] {
                out.push(vec![("p", a), ("q", c), ("r", d)]);
            }
        }
    }
    out
}

fn check_no_cauchy(p: &Params) -> Result<Option<String>> {
    let parts = p.iter().map(|&(_, v)| zmul(v)).collect::<Result<Vec<_>>>()?;
    let audit = cauchy_audit(&product(&parts)?)?;
    Ok(audit.book_mode.first().map(|e| {
        format!("{} has orders {:?} with product dividing {}", e.element.label(true), e.orders, audit.order)
    }))
}

fn single(_: &Bounds) -> Vec<Params> {
    vec![Vec::new()]
}

fn lagrange_demo() -> Result<(Structure, Vec<Vec<Element>>)> {
    let s = product(&[zmul(16)?, units_group(7, I)?])?;
    let want = vec![
        [0, 1, 4, 8, 12].iter().map(|&v| Element::residue(v, 16)).collect(),
        [1, 6].iter().map(|&v| Element::residue(v, 7)).collect(),
    ];
    Ok((s, want))
}

fn check_lagrange_fail(_: &Params) -> Result<Option<String>> {
    let (s, want) = lagrange_demo()?;
    let order = s.order()?;
    let r = lagrange_audit(&s, None)?;
    for (sub, divides) in &r.entries {
        if sub.elements(&s)? == want {
            return Ok((*divides || order != 96 || sub.order() != 10)
                .then(|| format!("order {} inside {order}", sub.order())));
        }
    }
    Ok(Some("the order-10 substructure was not enumerated".to_string()))
}

fn check_cauchy_fail(_: &Params) -> Result<Option<String>> {
    let s = product(&[units_group(11, I)?, zmul(9)?])?;
    let x = Element::tuple([Element::residue(10, 11), Element::residue(8, 9)]);
    let a = cauchy_audit(&s)?;
    let hit = a.book_failures.iter().find(|e| e.element == x);
    Ok(match hit {
        Some(e) if e.orders == [2, 2] && e.product == 4 && a.order == 90 => None,
        Some(e) => Some(format!("orders {:?} in order {}", e.orders, a.order)),
        None => Some("element not reported as a book-mode failure".to_string()),
    })
}

fn bisimple_instances(b: &Bounds) -> Vec<Params> {
    let mut out = Vec::new();
    for n in b.range("n") {
        for t in primes_in(2, n) {
            let u = n - t;
            if u >= 2 && is_prime(u) {
                out.push(vec![("n", n), ("t", t), ("u", u)]);
            }
        }
    }
    out
}

fn check_bisimple(p: &Params) -> Result<Option<String>> {
    let s = gpd(get(p, "n"), get(p, "t"), get(p, "u"))?;
    let t = s.magma(0)?.table()?;
    if table_is_simple(t, SimpleMode::Ideal) {
        return Ok(None);
    }
    let (ideals, _) = ideals_of(t, Side::Two, DEFAULT_BUDGET);
    let proper = ideals.iter().find(|i| i.len() < t.size());
    Ok(Some(format!("proper ideal {:?}", proper.cloned().unwrap_or_default())))
}

fn bisimple_note(instances: &[Params]) -> Result<String> {
    let (mut ideal, mut ignoring_zero, mut subs) = (0, 0, 0);
    for p in instances {
        let s = gpd(get(p, "n"), get(p, "t"), get(p, "u"))?;
        let t = s.magma(0)?.table()?;
        if table_is_simple(t, SimpleMode::Ideal) {
            ideal += 1;
        }
        let (ideals, _) = ideals_of(t, Side::Two, DEFAULT_BUDGET);
        if ideals.iter().all(|i| i.len() == t.size() || i.contains(&0)) {
            ignoring_zero += 1;
        }
        if table_is_simple(t, SimpleMode::Substructure) {
            subs += 1;
        }
    }
    let n = instances.len();
    Ok(format!(
        "ideal-simple {ideal}/{n}; simple when ideals containing 0 are ignored {ignoring_zero}/{n}; \
         without proper subgroupoids {subs}/{n}"
    ))
}

fn strong_family_note(instances: &[Params]) -> Result<String> {
    let mut counts = [0u64; 5];
    for p in instances {
        let (n, t) = (get(p, "n"), get(p, "t"));
        let s = gpd(n, t, (1 + n - t % n) % n)?;
        let want = divides(n, t as i128 * t as i128 - t as i128);
        for (c, name) in counts.iter_mut().zip(FAMILY) {
            if verdict(&s, name)?.0 != want {
                *c += 1;
            }
        }
    }
    let parts: Vec<String> = FAMILY.iter().zip(counts).map(|(n, c)| format!("{n} {c}")).collect();
    Ok(format!("identity-level mismatches: {}", parts.join(", ")))
}

pub fn registry() -> Vec<TheoremClaim> {
    use ClaimStatus::*;
    const N30: &[KeyRange] = &[key("n", 2, 30, 60)];
    const N12: &[KeyRange] = &[key("n", 2, 12, 16)];
    const P50: &[KeyRange] = &[key("p", 2, 50, 200)];
    const L51: &[KeyRange] = &[key("n", 5, 51, 101)];
    const PAIRS: &[KeyRange] = &[key("n", 5, 15, 25)];
    const SYLOW: &[KeyRange] = &[key("p", 5, 23, 53)];
    const NORM: &[KeyRange] = &[key("n", 9, 51, 75)];
    const P13: &[KeyRange] = &[key("p", 5, 13, 31)];
    const FAM: &[KeyRange] = &[key("n", 9, 33, 51)];
    const P19: &[KeyRange] = &[key("p", 2, 19, 31)];
    let claim = |id, statement, status, keys, errata, instances, check| TheoremClaim {
        id,
        statement,
        status,
        keys,
        errata,
        instances,
        check,
        note: None,
    };
    vec![
        claim("T-IDEM", "Z_n(t,u) is idempotent iff n | t+u-1", RefutedInPrint, N30, &["E-IDEM-Z15"], all_tu, check_idem),
        claim("T-PTT", "Z_n(t,t) satisfies the P-identity", PaperAsserted, N30, &[], all_nt, check_ptt),
        claim(
            "T-ALT",
            "Z_n(0,t) and Z_n(t,0) are alternative iff t^2 = t (mod n)",
            PaperAsserted,
            N30,
            &[],
            all_nt,
            check_alt,
        ),
        claim(
            "T-P-ZERO",
            "Z_n(0,t) and Z_n(t,0) satisfy the P-identity iff t^2 = t (mod n)",
            PaperAsserted,
            N30,
            &[],
            all_nt,
            check_p_zero,
        ),
        TheoremClaim {
            note: Some(strong_family_note),
            ..claim(
                "T-STRONG-FAMILY",
                "under t+u = 1 (mod n): alternative, P, Bol and Moufang verdicts all equal [n | t^2-t]",
                PaperAsserted,
                N30,
                &[],
                all_nt,
                check_strong_family,
            )
        },
        claim(
            "T-SGPD",
            "gcd(t,u) = 1, t != u, t+u = 1 (mod n), n > 5: Z_n(t,u) is Smarandache",
            PaperAsserted,
            N30,
            &[],
            sgpd_instances,
            check_sgpd,
        ),
        claim(
            "T-IDEAL-DUAL",
            "right ideals of Z_n(t,u) are the left ideals of Z_n(u,t)",
            PaperAsserted,
            N12,
            &[],
            all_tu,
            check_ideal_dual,
        ),
        claim("T-SIMPLE-ADD", "(Z_p,+) has no proper subsemigroup", PaperAsserted, P50, &[], prime_instances, check_simple_add),
        claim("T-IDEAL-SIMPLE", "(Z_p,x) is ideally simple", PaperAsserted, P50, &[], prime_instances, check_ideal_simple),
        claim(
            "T-LOOP-AXIOMS",
            "valid L_n(m) are loops with x*x = e; invalid m are rejected",
            RefutedInPrint,
            L51,
            &["E-LOOP-ARITH", "E-LOOP-TABLE-CELL", "E-PROD5-COMP4"],
            all_odd_nm,
            check_loop_axioms,
        ),
        claim(
            "T-LOOP-ORDER2",
            "every non-identity element of L_n(m) has order 2 and is Cauchy",
            PaperAsserted,
            L51,
            &[],
            all_valid_loops,
            check_loop_order2,
        ),
        claim(
            "T-CAUCHY",
            "every pair of points of L_n(m) x L_k(s) is book-Cauchy",
            PaperAsserted,
            PAIRS,
            &[],
            loop_pairs,
            check_cauchy_pair,
        ),
        claim(
            "T-2SYLOW",
            "proper subgroups of L_p(m) all have order 2, and 2 | p+1",
            PaperAsserted,
            SYLOW,
            &[],
            prime_loops,
            check_2sylow,
        ),
        claim(
            "T-COMM-LOOP",
            "L_n(m) is commutative iff m = (n+1)/2",
            PaperAsserted,
            L51,
            &[],
            all_valid_loops,
            check_comm_loop,
        ),
        claim(
            "T-FN-COUNT",
            "strictly non-commutative L_n(m) number F_n = prod (p-3) p^(a-1)",
            PaperAsserted,
            L51,
            &[],
            odd_n,
            check_fn_count,
        ),
        claim(
            "T-NORMALIZER",
            "for H = H_1(t): SN_1(H) = SN_2(H) iff gcd(m^2-m+1,t) = gcd(2m-1,t)",
            PaperAsserted,
            NORM,
            &[],
            normalizer_instances,
            check_normalizer,
        ),
        claim(
            "T-MOUF-CENTER",
            "the Moufang center of L_p(m) is {e} or the whole loop",
            PaperAsserted,
            P13,
            &[],
            prime_loops,
            check_moufang_center,
        ),
        claim(
            "T-CENTER-E",
            "the center of L_p(m) is {e}",
            PaperAsserted,
            P13,
            &[],
            prime_loops,
            check_center_e,
        ),
        claim(
            "T-SUBLOOP-FAMILY",
            "every H_i(t) of L_n(m) is a subloop of order n/t + 1",
            PaperAsserted,
            FAM,
            &["E-SUBLOOP-SET"],
            composite_loops,
            check_subloop_family,
        ),
        claim(
            "T-IDEM-GPD-N",
            "gcd(t,u) = 1 and t+u = 1 (mod n) make Z_n(t,u) idempotent",
            PaperAsserted,
            N30,
            &[],
            idem_gpd_instances,
            check_idem_gpd,
        ),
        claim(
            "T-PRIME-HALF",
            "Z_p((p+1)/2,(p+1)/2) is idempotent",
            PaperAsserted,
            P50,
            &[],
            odd_primes,
            check_prime_half,
        ),
        claim(
            "T-NO-CAUCHY",
            "products of (Z_p,x) over distinct primes have no element with all r_i > 1 and prod r_i | prod p_i",
            PaperAsserted,
            P19,
            &[],
            prime_sets,
            check_no_cauchy,
        ),
        claim(
            "T-LAGRANGE-FAIL",
            "(Z_16,x) x U_7 of order 96 has a substructure of order 10",
            Demonstration,
            &[],
            &[],
            single,
            check_lagrange_fail,
        ),
        claim(
            "T-CAUCHY-FAIL",
            "U_11 x (Z_9,x) has ([0,10],[0,8]) with book order 4 not dividing 90",
            Demonstration,
            &[],
            &[],
            single,
            check_cauchy_fail,
        ),
        TheoremClaim {
            note: Some(bisimple_note),
            ..claim(
                "T-BISIMPLE",
                "n = t+u with t, u prime makes Z_n(t,u) ideally simple",
                PaperAsserted,
                N30,
                &[],
                bisimple_instances,
                check_bisimple,
            )
        },
    ]
}

/// A printed value that disagrees with its own defining rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub id: &'static str,
    pub claim: Option<&'static str>,
    pub summary: &'static str,
    pub printed: String,
    pub computed: String,
}

impl Erratum {
    /// Still an erratum: the recomputed value differs from the print.
    pub fn confirmed(&self) -> bool {
        self.printed != self.computed
    }
}

fn loop_value(n: u64, m: u64, i: u64, j: u64) -> String {
    match loop_mul(n, m, i, j) {
        0 => "e".to_string(),
        v => format!("{v}"),
    }
}

fn matrix_label(n: u64, rows: &[&[i64]]) -> String {
    Element::Matrix(Matrix::from_rows(n, rows)).label(false)
}

/// Every catalogued erratum, each recomputed from its rule.
pub fn errata() -> Result<Vec<Erratum>> {
    let mut out = Vec::new();

    let z15 = gpd(15, 9, 6)?;
    let (idem, cx) = verdict(&z15, "idempotent-law")?;
    let computed = match cx {
        Some(c) if !idem => {
            let x = Element::residue(c[0] as i64, 15);
            format!("not idempotent: {x}*{x} = {}", z15.apply(&x, &x)?)
        }
        _ => "idempotent".to_string(),
    };
    out.push(Erratum {
        id: "E-IDEM-Z15",
        claim: Some("T-IDEM"),
        summary: "Z_15(9,6) is presented as idempotent, but 9+6 is not 1 mod 15",
        printed: "idempotent".to_string(),
        computed,
    });

    out.push(Erratum {
        id: "E-LOOP-ARITH",
        claim: Some("T-LOOP-AXIOMS"),
        summary: "L_9(8): 6*4 and L_15(8): 9*10 printed against the loop formula",
        printed: "([0,2],[0,8])".to_string(),
        computed: format!("([0,{}],[0,{}])", loop_value(9, 8, 6, 4), loop_value(15, 8, 9, 10)),
    });

    out.push(Erratum {
        id: "E-LOOP-TABLE-CELL",
        claim: Some("T-LOOP-AXIOMS"),
        summary: "L_5(2) table cell 4*4",
        printed: "3".to_string(),
        computed: loop_value(5, 2, 4, 4),
    });

    out.push(Erratum {
        id: "E-PROD5-COMP4",
        claim: Some("T-LOOP-AXIOMS"),
        summary: "fourth component L_13(9): 8*5 of a five-loop product",
        printed: "3".to_string(),
        computed: loop_value(13, 9, 8, 5),
    });

    let base = gpd(12, 7, 0)?;
    let ms = matrix_structure(3, 3, &base, MatrixMode::Entrywise)?;
    let a = Element::Matrix(Matrix::from_rows(12, &[&[3, 1, 7], &[1, 8, 0], &[2, 0, 5]]));
    let b = Element::Matrix(Matrix::from_rows(12, &[&[2, 0, 0], &[7, 5, 0], &[1, 3, 8]]));
    out.push(Erratum {
        id: "E-MATRIX-ENTRYWISE",
        claim: None,
        summary: "entrywise Z_12(7,0) product of two 3x3 matrices; only entries (1,1), (2,3), (3,2) agree",
        printed: matrix_label(12, &[&[9, 0, 0], &[1, 11, 0], &[7, 0, 8]]),
        computed: ms.apply(&a, &b)?.label(false),
    });

    let base = zmul(12)?;
    let ms = matrix_structure(5, 5, &base, MatrixMode::Mul)?;
    let x = Element::Matrix(Matrix::from_rows(
        12,
        &[&[0, 1, 0, 2, 0], &[3, 0, 4, 0, 1], &[0, 2, 0, 3, 0], &[5, 0, 1, 0, 2], &[0, 3, 0, 7, 0]],
    ));
    let y = Element::Matrix(Matrix::from_rows(
        12,
        &[&[1, 0, 2, 0, 3], &[0, 4, 0, 5, 0], &[6, 0, 7, 0, 8], &[0, 9, 0, 10, 0], &[11, 0, 1, 0, 2]],
    ));
    out.push(Erratum {
        id: "E-MATMUL-Z12",
        claim: None,
        summary: "5x5 matrix product over Z_12; entries (2,3), (2,5), (3,2), (4,1), (4,3) differ",
        printed: matrix_label(
            12,
            &[&[0, 10, 0, 1, 0], &[2, 0, 5, 0, 9], &[0, 5, 0, 4, 0], &[3, 0, 1, 0, 3], &[0, 3, 0, 1, 0]],
        ),
        computed: ms.apply(&x, &y)?.label(false),
    });

    let z19 = gpd(19, 4, 4)?;
    out.push(Erratum {
        id: "E-GPD-Z19",
        claim: None,
        summary: "Z_19(4,4): 1*8",
        printed: "12".to_string(),
        computed: z19.apply(&Element::residue(1, 19), &Element::residue(8, 19))?.label(false),
    });

    let l53 = new_loop(5, 3, I)?;
    let iso = principal_isotope(l53.magma(0)?, &Element::loop_identity(), &Element::point(4))?;
    let row: Vec<String> = (0..6)
        .map(|j| match iso.table()?.get(1, j) {
            0 => Ok("e".to_string()),
            v => Ok(format!("{v}")),
        })
        .collect::<Result<_>>()?;
    out.push(Erratum {
        id: "E-ISOTOPE-ROW",
        claim: None,
        summary: "row [0,1] of a principal isotope of L_5(3) repeats [0,3]; isotope at (e,[0,4]) shown",
        printed: "3 2 5 3 1 4".to_string(),
        computed: row.join(" "),
    });

    let l33 = new_loop(33, 5, I)?;
    let t = l33.magma(0)?.table()?;
    let printed = [0usize, 11, 12, 23];
    out.push(Erratum {
        id: "E-SUBLOOP-SET",
        claim: Some("T-SUBLOOP-FAMILY"),
        summary: "H_1(11) of L_33(5) printed with 11 in place of 1",
        printed: format!("{{e,11,12,23}} closed={}", t.is_closed(&printed)),
        computed: format!("{{e,1,12,23}} closed={}", t.is_closed(&h_set(33, 11, 1))),
    });

    Ok(out)
}

pub fn erratum(id: &str) -> Result<Erratum> {
    errata()?
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrictCount {
    pub brute: u64,
    pub formula: u64,
}

/// Counts valid `m` whose `L_n(m)` has no commuting pair of distinct
/// non-identity elements, next to `prod (p - 3) p^(a - 1)`.
pub fn strict_noncommutative_count(n: u64) -> Result<StrictCount> {
    if n.is_multiple_of(2) || n <= 3 {
        return Err(Error::BadN(n));
    }
    let strict = |m: u64| (1..=n).all(|x| (x + 1..=n).all(|y| loop_mul(n, m, x, y) != loop_mul(n, m, y, x)));
    let brute = valid_loop_params(n).into_iter().filter(|&m| strict(m)).count() as u64;
    let formula = factorize(n).into_iter().map(|(p, a)| (p - 3) * p.pow(a - 1)).product();
    Ok(StrictCount { brute, formula })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCounterexample {
    pub component: usize,
    pub a: Element,
    pub b: Element,
    /// `eta(a*b)` and `eta(a)*eta(b)`.
    pub lhs: Element,
    pub rhs: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCheck {
    pub ok: bool,
    pub counterexample: Option<HomCounterexample>,
}

/// Source component `i` maps into destination component `assignment[i]`
/// through `map(i, x)`; each map is checked exhaustively.
pub fn check_homomorphism(
    src: &Structure,
    dst: &Structure,
    assignment: &[usize],
    map: impl Fn(usize, &Element) -> Option<Element>,
) -> Result<HomCheck> {
    if assignment.len() != src.arity() {
        return Err(Error::ArityMismatch {
            expected: src.arity(),
            found: assignment.len(),
        });
    }
    if let Some(&bad) = assignment.iter().find(|&&j| j >= dst.arity()) {
        return Err(Error::ArityMismatch {
            expected: dst.arity(),
            found: bad + 1,
        });
    }
    for (i, &j) in assignment.iter().enumerate() {
        let s = src.magma(i)?;
        let d = dst.magma(j)?;
        let st = s.table()?;
        let images: Vec<Element> = s
            .elements()
            .iter()
            .map(|x| {
                map(i, x)
                    .filter(|y| d.index(y).is_some())
                    .ok_or_else(|| Error::CarrierMismatch(x.label(true)))
            })
            .collect::<Result<_>>()?;
        for a in 0..st.size() {
            for b in 0..st.size() {
                let lhs = &images[st.get(a, b)];
                let rhs = d.apply(&images[a], &images[b])?;
                if *lhs != rhs {
                    return Ok(HomCheck {
                        ok: false,
                        counterexample: Some(HomCounterexample {
                            component: i,
                            a: s.element(a).clone(),
                            b: s.element(b).clone(),
                            lhs: lhs.clone(),
                            rhs,
                        }),
                    });
                }
            }
        }
    }
    Ok(HomCheck {
        ok: true,
        counterexample: None,
    })
}
