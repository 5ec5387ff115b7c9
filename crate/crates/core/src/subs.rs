//! Closures, substructure and ideal enumeration, Smarandache witnesses,
//! simplicity, loop machinery and Lagrange/Sylow audits.
//!
//! Sets are sorted vectors of element indices into a component's canonical
//! order. Product substructures are products of component subsets.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::gcd;
use crate::carrier::Carrier;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::identities::OverallGrade;
use crate::magma::{CayleyTable, ClassLabel, Magma, StructureClass};
use crate::structure::Structure;

/// Default cap on the number of subsets an enumerator will collect.
pub const DEFAULT_BUDGET: usize = 4096;

/// Above this order the witness search only tries single seeds.
const PAIR_SEED_LIMIT: usize = 512;

/// Singletons a witness search may fall back to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exclusions {
    NoSingletons,
    /// Singletons allowed except these indices.
    Except(Vec<usize>),
}

/// Scans closures of single seeds, then of pairs, both in descending index
/// order, and returns the smallest proper candidate of size at least 2 that
/// satisfies `pred` (ties go to the first scanned). A singleton is returned
/// only when no larger candidate exists and `exclusions` allows it.
pub fn witness_search(
    table: &CayleyTable,
    exclusions: Exclusions,
    pred: impl Fn(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let n = table.size();
    let mut seen = BTreeSet::new();
    let mut best: Option<Vec<usize>> = None;
    let mut fallback: Option<Vec<usize>> = None;
    let mut consider = |cand: Vec<usize>, best: &mut Option<Vec<usize>>| -> bool {
        if cand.len() >= n || !seen.insert(cand.clone()) {
            return false;
        }
        if cand.len() == 1 {
            let allowed = match &exclusions {
                Exclusions::NoSingletons => false,
                Exclusions::Except(bad) => !bad.contains(&cand[0]),
            };
            if allowed && fallback.is_none() && pred(&cand) {
                fallback = Some(cand);
            }
            return false;
        }
        if best.as_ref().is_some_and(|b| b.len() <= cand.len()) {
            return false;
        }
        if pred(&cand) {
            let done = cand.len() == 2;
            *best = Some(cand);
            return done;
        }
        false
    };
    for i in (0..n).rev() {
        if consider(table.closure(&[i]), &mut best) {
            return best;
        }
    }
    if n <= PAIR_SEED_LIMIT {
        for i in (0..n).rev() {
            for j in (0..i).rev() {
                if consider(table.closure(&[i, j]), &mut best) {
                    return best;
                }
            }
        }
    }
    best.or(fallback)
}

/// A substructure given per component as sorted index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substructure {
    pub parts: Vec<Vec<usize>>,
    pub classes: Vec<StructureClass>,
}

impl Substructure {
    pub fn order(&self) -> u128 {
        self.parts.iter().map(|p| p.len() as u128).product()
    }

    /// Member elements of each component.
    pub fn elements(&self, parent: &Structure) -> Result<Vec<Vec<Element>>> {
        let magmas = parent.magmas()?;
        Ok(self
            .parts
            .iter()
            .zip(magmas)
            .map(|(p, m)| p.iter().map(|&i| m.element(i).clone()).collect())
            .collect())
    }

    /// Re-checks closure and the recorded classes against the parent.
    pub fn verify(&self, parent: &Structure) -> Result<bool> {
        for ((p, m), c) in self.parts.iter().zip(parent.magmas()?).zip(&self.classes) {
            match m.table()?.induced(p) {
                Some(t) if t.classify() == *c => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsReport {
    pub items: Vec<Substructure>,
    /// False when the budget cut the enumeration short.
    pub complete: bool,
}

fn finite(structure: &Structure) -> Result<()> {
    if structure.is_finite() {
        Ok(())
    } else {
        Err(Error::InfiniteCarrier)
    }
}

fn indices(m: &Magma, xs: &[Element]) -> Result<Vec<usize>> {
    xs.iter()
        .map(|x| m.index(x).ok_or_else(|| Error::CarrierMismatch(x.label(true))))
        .collect()
}

/// Least closed superset of `seed`. For products this is the least
/// product of component substructures containing the seed.
pub fn closure(structure: &Structure, seed: &[Element]) -> Result<Substructure> {
    finite(structure)?;
    let magmas = structure.magmas()?;
    let mut parts = Vec::with_capacity(magmas.len());
    let mut classes = Vec::with_capacity(magmas.len());
    for (k, m) in magmas.iter().enumerate() {
        let projected: Vec<Element> = seed
            .iter()
            .map(|x| structure.split(x).map(|p| p[k].clone()))
            .collect::<Result<_>>()?;
        let t = m.table()?;
        let c = t.closure(&indices(m, &projected)?);
        classes.push(t.induced(&c).expect("closure is closed").classify());
        parts.push(c);
    }
    Ok(Substructure { parts, classes })
}

/// Every nonempty closed subset of one table, the whole set included,
/// sorted by size then members. Built as the join lattice of the
/// single-generator closures, so it is exhaustive unless `budget` runs out.
pub fn closed_subsets(table: &CayleyTable, budget: usize) -> (Vec<Vec<usize>>, bool) {
    let n = table.size();
    let mut principals: Vec<Vec<usize>> = (0..n).map(|i| table.closure(&[i])).collect();
    principals.sort();
    principals.dedup();
    lattice(n, &principals, budget, |s| table.closure(s))
}

fn lattice(
    n: usize,
    generators: &[Vec<usize>],
    budget: usize,
    join: impl Fn(&[usize]) -> Vec<usize>,
) -> (Vec<Vec<usize>>, bool) {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for g in generators {
        if found.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    let mut complete = true;
    let mut member = vec![false; n];
    'outer: while let Some(s) = queue.pop_front() {
        member.iter_mut().for_each(|m| *m = false);
        for &x in &s {
            member[x] = true;
        }
        for g in generators {
            if g.iter().all(|&x| member[x]) {
                continue;
            }
            let mut union = s.clone();
            union.extend(g.iter().copied().filter(|&x| !member[x]));
            let joined = join(&union);
            if !found.contains(&joined) {
                if found.len() >= budget {
                    complete = false;
                    break 'outer;
                }
                found.insert(joined.clone());
                queue.push_back(joined);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    (out, complete)
}

/// Whole set, empty set, or a singleton holding the identity or absorber.
pub fn is_trivial(table: &CayleyTable, subset: &[usize]) -> bool {
    match subset {
        [] => true,
        [x] => Some(*x) == table.identity() || Some(*x) == table.absorber(),
        s => s.len() == table.size(),
    }
}

fn product_is_trivial(tables: &[&CayleyTable], parts: &[Vec<usize>]) -> bool {
    if parts.iter().zip(tables).all(|(p, t)| p.len() == t.size()) {
        return true;
    }
    if parts.iter().any(Vec::is_empty) {
        return true;
    }
    if parts.iter().all(|p| p.len() == 1) {
        let ids = tables.iter().zip(parts).all(|(t, p)| t.identity() == Some(p[0]));
        let abs = tables.iter().zip(parts).all(|(t, p)| t.absorber() == Some(p[0]));
        return ids || abs;
    }
    false
}

fn cross(families: &[Vec<Vec<usize>>], budget: usize) -> (Vec<Vec<Vec<usize>>>, bool) {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for fam in families {
        let mut next = Vec::new();
        for prefix in &out {
            for s in fam {
                if next.len() >= budget {
                    return (next, false);
                }
                let mut p = prefix.clone();
                p.push(s.clone());
                next.push(p);
            }
        }
        out = next;
    }
    (out, true)
}

/// Proper nontrivial substructures, optionally restricted to a class and a
/// maximum order.
pub fn enumerate_substructures(
    structure: &Structure,
    class_filter: Option<ClassLabel>,
    max_size: Option<u128>,
) -> Result<SubsReport> {
    enumerate_substructures_budget(structure, class_filter, max_size, DEFAULT_BUDGET)
}

pub fn enumerate_substructures_budget(
    structure: &Structure,
    class_filter: Option<ClassLabel>,
    max_size: Option<u128>,
    budget: usize,
) -> Result<SubsReport> {
    finite(structure)?;
    let magmas = structure.magmas()?;
    let tables: Vec<&CayleyTable> = magmas.iter().map(|m| m.table()).collect::<Result<_>>()?;
    let mut complete = true;
    let mut families = Vec::with_capacity(tables.len());
    for t in &tables {
        let (mut fam, ok) = closed_subsets(t, budget);
        complete &= ok;
        // Each component keeps only subsets of the requested class.
        if let Some(cls) = class_filter {
            fam.retain(|s| t.induced(s).is_some_and(|i| i.classify().satisfies(cls)));
        }
        families.push(fam);
    }
    let (combos, ok) = cross(&families, budget.saturating_mul(4));
    complete &= ok;
    let mut items = Vec::new();
    for parts in combos {
        if product_is_trivial(&tables, &parts) {
            continue;
        }
        let order: u128 = parts.iter().map(|p| p.len() as u128).product();
        if max_size.is_some_and(|m| order > m) {
            continue;
        }
        let classes = parts
            .iter()
            .zip(&tables)
            .map(|(p, t)| t.induced(p).expect("closed").classify())
            .collect();
        items.push(Substructure { parts, classes });
    }
    items.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.parts.cmp(&b.parts)));
    Ok(SubsReport { items, complete })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Two,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Two => "two",
        }
    }
}

/// Smallest ideal on `side` containing `seed`.
pub fn ideal_closure(table: &CayleyTable, side: Side, seed: &[usize]) -> Vec<usize> {
    let n = table.size();
    let mut member = vec![false; n];
    let mut items = Vec::new();
    for &s in seed {
        if !member[s] {
            member[s] = true;
            items.push(s);
        }
    }
    let mut k = 0;
    while k < items.len() {
        let p = items[k];
        for s in 0..n {
            let left = matches!(side, Side::Left | Side::Two).then(|| table.get(s, p));
            let right = matches!(side, Side::Right | Side::Two).then(|| table.get(p, s));
            for v in [left, right].into_iter().flatten() {
                if !member[v] {
                    member[v] = true;
                    items.push(v);
                }
            }
        }
        k += 1;
    }
    items.sort_unstable();
    items
}

/// All nonempty ideals on `side`, the whole set included.
pub fn ideals_of(table: &CayleyTable, side: Side, budget: usize) -> (Vec<Vec<usize>>, bool) {
    let n = table.size();
    let mut principals: Vec<Vec<usize>> = (0..n).map(|i| ideal_closure(table, side, &[i])).collect();
    principals.sort();
    principals.dedup();
    lattice(n, &principals, budget, |s| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    })
}

/// Proper ideals (the whole structure excluded). Products use products of
/// component ideals.
pub fn enumerate_ideals(structure: &Structure, side: Side) -> Result<SubsReport> {
    finite(structure)?;
    let magmas = structure.magmas()?;
    let tables: Vec<&CayleyTable> = magmas.iter().map(|m| m.table()).collect::<Result<_>>()?;
    let mut complete = true;
    let mut families = Vec::new();
    for t in &tables {
        let (fam, ok) = ideals_of(t, side, DEFAULT_BUDGET);
        complete &= ok;
        families.push(fam);
    }
    let (combos, ok) = cross(&families, DEFAULT_BUDGET * 4);
    complete &= ok;
    let mut items: Vec<Substructure> = combos
        .into_iter()
        .filter(|parts| !parts.iter().zip(&tables).all(|(p, t)| p.len() == t.size()))
        .map(|parts| {
            let classes = parts
                .iter()
                .zip(&tables)
                .map(|(p, t)| t.induced(p).expect("ideals are closed").classify())
                .collect();
            Substructure { parts, classes }
        })
        .collect();
    items.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.parts.cmp(&b.parts)));
    Ok(SubsReport { items, complete })
}

/// The class a Smarandache witness must have inside a magma of class `c`.
pub fn witness_class(c: &StructureClass) -> ClassLabel {
    if c.associative || c.latin_square {
        ClassLabel::Group
    } else {
        ClassLabel::Semigroup
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub grade: OverallGrade,
    /// Witness per component, if one was found.
    pub parts: Vec<Option<Vec<usize>>>,
    pub classes: Vec<ClassLabel>,
}

/// Searches each component for a proper substructure of the richer class
/// (a group inside a semigroup or loop, a semigroup inside a groupoid).
pub fn smarandache_witness(structure: &Structure) -> Result<WitnessReport> {
    finite(structure)?;
    let mut parts = Vec::new();
    let mut classes = Vec::new();
    for m in structure.magmas()? {
        let t = m.table()?;
        let want = witness_class(&t.classify());
        let mut bad: Vec<usize> = [t.identity(), t.absorber()].into_iter().flatten().collect();
        if matches!(m.carrier(), Carrier::Zmod(_)) {
            bad.push(0);
        }
        let found = witness_search(t, Exclusions::Except(bad), |s| {
            t.induced(s).is_some_and(|i| i.classify().satisfies(want))
        });
        parts.push(found);
        classes.push(want);
    }
    let hits = parts.iter().filter(|p| p.is_some()).count();
    let grade = if hits == parts.len() {
        OverallGrade::Smarandache
    } else if hits > 0 {
        OverallGrade::QuasiSmarandache
    } else {
        OverallGrade::Fails
    };
    Ok(WitnessReport {
        grade,
        parts,
        classes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpleMode {
    Substructure,
    Ideal,
}

/// Whether a single table has no proper nontrivial substructure or ideal.
/// Any such set contains one generated by at most two elements, so seeds
/// of size one and two decide it.
pub fn table_is_simple(table: &CayleyTable, mode: SimpleMode) -> bool {
    let n = table.size();
    let gen = |seed: &[usize]| match mode {
        SimpleMode::Substructure => table.closure(seed),
        SimpleMode::Ideal => ideal_closure(table, Side::Two, seed),
    };
    for i in 0..n {
        if !is_trivial(table, &gen(&[i])) {
            return false;
        }
        for j in 0..i {
            if !is_trivial(table, &gen(&[i, j])) {
                return false;
            }
        }
    }
    true
}

/// Products are simple when every component is.
pub fn is_simple(structure: &Structure, mode: SimpleMode) -> Result<bool> {
    finite(structure)?;
    for m in structure.magmas()? {
        if !table_is_simple(m.table()?, mode) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn loop_table(m: &Magma) -> Result<(&CayleyTable, usize)> {
    let t = m.table()?;
    if !t.is_latin() {
        return Err(Error::NotLatin);
    }
    let e = t.identity().ok_or(Error::NoIdentity)?;
    Ok((t, e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubloopFamilyMember {
    pub t: u64,
    pub i: u64,
    /// Indices, `0` being `e`.
    pub elements: Vec<usize>,
    pub closed: bool,
    pub is_loop: bool,
}

/// `H_i(t) = {e, i, i + t, ..., i + (n/t - 1) t}` for every divisor
/// `1 < t < n` and base `1 <= i <= t`.
pub fn loop_subloop_family(structure: &Structure) -> Result<Vec<SubloopFamilyMember>> {
    let m = structure.magma(0)?;
    let n = match m.carrier() {
        Carrier::LoopSet(n) => *n,
        other => return Err(Error::UnsupportedRule(alloc::format!("subloop family on {other:?}"))),
    };
    let t = m.table()?;
    let mut out = Vec::new();
    for d in (2..n).filter(|d| n % d == 0) {
        for i in 1..=d {
            let mut h: Vec<usize> = vec![0];
            h.extend((0..n / d).map(|k| (i + k * d) as usize));
            h.sort_unstable();
            let closed = t.is_closed(&h);
            let is_loop = closed && t.induced(&h).is_some_and(|s| s.classify().satisfies(ClassLabel::Loop));
            out.push(SubloopFamilyMember {
                t: d,
                i,
                elements: h,
                closed,
                is_loop,
            });
        }
    }
    Ok(out)
}

fn setwise(n: usize, f: impl Iterator<Item = usize>) -> Vec<bool> {
    let mut v = vec![false; n];
    for x in f {
        v[x] = true;
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalizers {
    /// `{j : jH = Hj}`.
    pub first: Vec<usize>,
    /// `{j : (jH)j = H}`.
    pub second: Vec<usize>,
    pub equal: bool,
}

/// Needs no latin property, so it also runs on formula tables outside the
/// loop domain.
pub fn normalizers(m: &Magma, h: &[usize]) -> Result<Normalizers> {
    let t = m.table()?;
    let n = t.size();
    let hset = setwise(n, h.iter().copied());
    let first: Vec<usize> = (0..n)
        .filter(|&j| setwise(n, h.iter().map(|&x| t.get(j, x))) == setwise(n, h.iter().map(|&x| t.get(x, j))))
        .collect();
    let second: Vec<usize> = (0..n)
        .filter(|&j| setwise(n, h.iter().map(|&x| t.get(t.get(j, x), j))) == hset)
        .collect();
    let equal = first == second;
    Ok(Normalizers { first, second, equal })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopCenters {
    pub commutant: Vec<usize>,
    pub left_nucleus: Vec<usize>,
    pub middle_nucleus: Vec<usize>,
    pub right_nucleus: Vec<usize>,
    pub nucleus: Vec<usize>,
    pub center: Vec<usize>,
    pub moufang_center: Vec<usize>,
}

pub fn loop_centers(m: &Magma) -> Result<LoopCenters> {
    let (t, _) = loop_table(m)?;
    let n = t.size();
    let all = |f: &dyn Fn(usize, usize, usize) -> bool| -> Vec<usize> {
        (0..n)
            .filter(|&a| (0..n).all(|x| (0..n).all(|y| f(a, x, y))))
            .collect()
    };
    let commutant: Vec<usize> = (0..n)
        .filter(|&a| (0..n).all(|x| t.get(a, x) == t.get(x, a)))
        .collect();
    let left_nucleus = all(&|a, x, y| t.get(t.get(a, x), y) == t.get(a, t.get(x, y)));
    let middle_nucleus = all(&|a, x, y| t.get(t.get(x, a), y) == t.get(x, t.get(a, y)));
    let right_nucleus = all(&|a, x, y| t.get(t.get(x, y), a) == t.get(x, t.get(y, a)));
    let moufang_center = all(&|a, x, y| t.get(t.get(a, a), t.get(x, y)) == t.get(t.get(a, x), t.get(a, y)));
    let nucleus: Vec<usize> = left_nucleus
        .iter()
        .copied()
        .filter(|a| middle_nucleus.contains(a) && right_nucleus.contains(a))
        .collect();
    let center = commutant.iter().copied().filter(|a| nucleus.contains(a)).collect();
    Ok(LoopCenters {
        commutant,
        left_nucleus,
        middle_nucleus,
        right_nucleus,
        nucleus,
        center,
        moufang_center,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSubloops {
    pub commutator: Vec<usize>,
    pub associator: Vec<usize>,
}

/// Subloops generated by the commutators `c` (`xy = (yx)c`) and associators
/// `a` (`(xy)z = (x(yz))a`) of elements drawn from `within`.
pub fn derived_subloops(m: &Magma, within: Option<&[usize]>) -> Result<DerivedSubloops> {
    let (t, e) = loop_table(m)?;
    let pool: Vec<usize> = within.map_or_else(|| (0..t.size()).collect(), <[usize]>::to_vec);
    let div = |a: usize, b: usize| t.left_div(a, b).ok_or(Error::NotLatin);
    let mut comms = vec![e];
    let mut assocs = vec![e];
    for &x in &pool {
        for &y in &pool {
            comms.push(div(t.get(y, x), t.get(x, y))?);
            for &z in &pool {
                assocs.push(div(t.get(x, t.get(y, z)), t.get(t.get(x, y), z))?);
            }
        }
    }
    comms.sort_unstable();
    comms.dedup();
    assocs.sort_unstable();
    assocs.dedup();
    Ok(DerivedSubloops {
        commutator: t.closure(&comms),
        associator: t.closure(&assocs),
    })
}

/// The principal isotope `x o y = R_b^-1(x) L_a^-1(y)`, whose identity is
/// `ab`.
pub fn principal_isotope(m: &Magma, a: &Element, b: &Element) -> Result<Magma> {
    let t = m.table()?;
    if !t.is_latin() {
        return Err(Error::NotLatin);
    }
    let ai = m.index(a).ok_or_else(|| Error::CarrierMismatch(a.label(true)))?;
    let bi = m.index(b).ok_or_else(|| Error::CarrierMismatch(b.label(true)))?;
    let n = t.size();
    let rinv: Vec<usize> = (0..n).map(|x| t.right_div(x, bi).expect("latin")).collect();
    let linv: Vec<usize> = (0..n).map(|y| t.left_div(ai, y).expect("latin")).collect();
    let table = CayleyTable::from_fn(n, |x, y| t.get(rinv[x], linv[y]));
    Ok(Magma::from_table(m.carrier().clone(), m.elements().to_vec(), table))
}

/// `xH = Hx`, `(xy)H = x(yH)` and `(Hx)y = H(xy)` setwise for all `x, y`.
pub fn is_normal_subloop(m: &Magma, h: &[usize]) -> Result<bool> {
    let (t, _) = loop_table(m)?;
    let n = t.size();
    if !t.is_closed(h) {
        return Err(Error::ClosureViolation(alloc::string::String::from("H is not closed")));
    }
    for x in 0..n {
        if setwise(n, h.iter().map(|&k| t.get(x, k))) != setwise(n, h.iter().map(|&k| t.get(k, x))) {
            return Ok(false);
        }
        for y in 0..n {
            let xy = t.get(x, y);
            let a = setwise(n, h.iter().map(|&k| t.get(xy, k)));
            let b = setwise(n, h.iter().map(|&k| t.get(x, t.get(y, k))));
            let c = setwise(n, h.iter().map(|&k| t.get(t.get(k, x), y)));
            let d = setwise(n, h.iter().map(|&k| t.get(k, xy)));
            if a != b || c != d {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LagrangeGrade {
    Lagrange,
    WeaklyLagrange,
    Neither,
}

impl LagrangeGrade {
    pub fn name(self) -> &'static str {
        match self {
            LagrangeGrade::Lagrange => "lagrange",
            LagrangeGrade::WeaklyLagrange => "weakly-lagrange",
            LagrangeGrade::Neither => "neither",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangeReport {
    pub order: u128,
    pub grade: LagrangeGrade,
    /// Every substructure examined, with whether its order divides.
    pub entries: Vec<(Substructure, bool)>,
    pub complete: bool,
}

pub fn lagrange_audit(structure: &Structure, class_filter: Option<ClassLabel>) -> Result<LagrangeReport> {
    let order = structure.order()?;
    let subs = enumerate_substructures(structure, class_filter, None)?;
    let entries: Vec<(Substructure, bool)> = subs
        .items
        .into_iter()
        .map(|s| {
            let d = order % s.order() == 0;
            (s, d)
        })
        .collect();
    let dividing = entries.iter().filter(|(_, d)| *d).count();
    let grade = if dividing == entries.len() {
        LagrangeGrade::Lagrange
    } else if dividing > 0 {
        LagrangeGrade::WeaklyLagrange
    } else {
        LagrangeGrade::Neither
    };
    Ok(LagrangeReport {
        order,
        grade,
        entries,
        complete: subs.complete,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowReport {
    pub p: u64,
    pub order: u128,
    /// Substructures whose order is a positive power of `p`.
    pub p_subs: Vec<Substructure>,
    pub max_k: u32,
    /// `p^k` divides the order for the largest `k` found.
    pub divides: bool,
    /// `p^(k+1)` does not divide the order.
    pub maximal: bool,
    pub complete: bool,
}

pub fn sylow_audit(structure: &Structure, p: u64, class_filter: Option<ClassLabel>) -> Result<SylowReport> {
    if p < 2 || crate::arith::factorize(p).len() != 1 || gcd(p, p) != p {
        return Err(Error::BadN(p));
    }
    let order = structure.order()?;
    let subs = enumerate_substructures(structure, class_filter, None)?;
    let power = |mut v: u128| -> Option<u32> {
        let mut k = 0;
        while v > 1 && v.is_multiple_of(p as u128) {
            v /= p as u128;
            k += 1;
        }
        (v == 1 && k > 0).then_some(k)
    };
    let p_subs: Vec<Substructure> = subs.items.into_iter().filter(|s| power(s.order()).is_some()).collect();
    let max_k = p_subs.iter().filter_map(|s| power(s.order())).max().unwrap_or(0);
    let pk = (p as u128).pow(max_k);
    Ok(SylowReport {
        p,
        order,
        divides: order % pk == 0,
        maximal: order % (pk * p as u128) != 0,
        max_k,
        p_subs,
        complete: subs.complete,
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

    #[test]
    fn closures() {
        let s = zmul(12);
        let c = closure(&s, &[Element::residue(2, 12)]).unwrap();
        assert_eq!(c.parts, vec![vec![2, 4, 8]]);
        let l = new_loop(5, 2, I).unwrap();
        assert_eq!(closure(&l, &[Element::point(1)]).unwrap().parts, vec![vec![0, 1]]);
    }

    #[test]
    fn groups_in_z10() {
        let r = enumerate_substructures(&zmul(10), Some(ClassLabel::Group), None).unwrap();
        assert!(r.complete);
        let sets: Vec<&Vec<usize>> = r.items.iter().map(|s| &s.parts[0]).collect();
        assert!(sets.contains(&&vec![1, 9]));
        assert!(sets.contains(&&vec![1, 3, 7, 9]));
        for s in &r.items {
            assert!(s.verify(&zmul(10)).unwrap());
        }
    }

    #[test]
    fn additive_prime_is_simple() {
        let s = zn_semigroup(11, SemigroupOp::Add, I).unwrap();
        assert!(enumerate_substructures(&s, None, None).unwrap().items.is_empty());
        assert!(is_simple(&s, SimpleMode::Substructure).unwrap());
        assert!(!is_simple(&zmul(12), SimpleMode::Substructure).unwrap());
        assert!(is_simple(&zmul(11), SimpleMode::Ideal).unwrap());
    }

    #[test]
    fn ideals() {
        let r = enumerate_ideals(&zmul(24), Side::Two).unwrap();
        let want: Vec<usize> = (0..24).step_by(3).collect();
        assert!(r.items.iter().any(|s| s.parts[0] == want));
        let r = enumerate_ideals(&zmul(7), Side::Two).unwrap();
        assert_eq!(r.items.len(), 1);
        assert_eq!(r.items[0].parts[0], vec![0]);
    }

    #[test]
    fn witnesses() {
        let w = smarandache_witness(&zmul(40)).unwrap();
        assert_eq!(w.parts[0], Some(vec![1, 39]));
        let l = new_loop(7, 3, I).unwrap();
        let w = smarandache_witness(&l).unwrap();
        assert_eq!(w.parts[0].as_ref().map(Vec::len), Some(2));
        let g = zn_groupoid(5, 1, 3, I).unwrap();
        assert_eq!(smarandache_witness(&g).unwrap().grade, OverallGrade::Fails);
    }

    #[test]
    fn subloop_family() {
        let l = formula_loop(21, 8, I).unwrap();
        let fam = loop_subloop_family(&l).unwrap();
        let h = fam.iter().find(|m| m.t == 7 && m.i == 1).unwrap();
        assert_eq!(h.elements, vec![0, 1, 8, 15]);
        assert!(h.closed);
        let l = new_loop(33, 5, I).unwrap();
        let fam = loop_subloop_family(&l).unwrap();
        let h = fam.iter().find(|m| m.t == 11 && m.i == 1).unwrap();
        assert_eq!(h.elements, vec![0, 1, 12, 23]);
        assert!(fam.iter().all(|m| m.closed && m.is_loop));
        assert!(loop_subloop_family(&new_loop(7, 3, I).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn normalizer_examples() {
        let l = new_loop(5, 2, I).unwrap();
        let m = l.magma(0).unwrap();
        assert_eq!(normalizers(m, &[0, 1]).unwrap().first, vec![0, 1]);
        let all: Vec<usize> = (0..6).collect();
        let nz = normalizers(m, &all).unwrap();
        assert_eq!(nz.first, all);
        assert_eq!(nz.second, all);
        let l = formula_loop(21, 8, I).unwrap();
        let nz = normalizers(l.magma(0).unwrap(), &[0, 1, 8, 15]).unwrap();
        assert!(nz.equal);
        assert_eq!(nz.first, vec![0, 1, 8, 15]);
    }

    #[test]
    fn centers_and_derived() {
        let l = new_loop(5, 3, I).unwrap();
        let c = loop_centers(l.magma(0).unwrap()).unwrap();
        assert_eq!(c.moufang_center, vec![0]);
        let l = new_loop(11, 5, I).unwrap();
        let d = derived_subloops(l.magma(0).unwrap(), None).unwrap();
        assert_eq!(d.associator.len(), 12);
        let l = new_loop(9, 5, I).unwrap();
        let d = derived_subloops(l.magma(0).unwrap(), None).unwrap();
        assert_eq!(d.commutator, vec![0]);
        let d = derived_subloops(l.magma(0).unwrap(), Some(&[0])).unwrap();
        assert_eq!((d.commutator, d.associator), (vec![0], vec![0]));
    }

    #[test]
    fn isotopes_are_loops() {
        let l = new_loop(5, 2, I).unwrap();
        let m = l.magma(0).unwrap();
        let same = principal_isotope(m, &Element::loop_identity(), &Element::loop_identity()).unwrap();
        assert_eq!(same.table().unwrap(), m.table().unwrap());
        for a in m.elements() {
            for b in m.elements() {
                let iso = principal_isotope(m, a, b).unwrap();
                let c = iso.classify().unwrap();
                assert!(c.latin_square && c.has_identity);
                assert_eq!(iso.identity().unwrap(), Some(m.apply(a, b).unwrap()));
            }
        }
    }

    #[test]
    fn normality() {
        let l = new_loop(7, 3, I).unwrap();
        let m = l.magma(0).unwrap();
        assert!(is_normal_subloop(m, &[0]).unwrap());
        assert!(is_normal_subloop(m, &(0..8).collect::<Vec<_>>()).unwrap());
        assert!(!is_normal_subloop(m, &[0, 2]).unwrap());
    }

    #[test]
    fn lagrange_in_z10() {
        let r = lagrange_audit(&zmul(10), Some(ClassLabel::Group)).unwrap();
        assert!(r.entries.iter().any(|(s, d)| s.order() == 4 && !d));
        assert_ne!(r.grade, LagrangeGrade::Lagrange);
    }
}
