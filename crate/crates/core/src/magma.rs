//! Finite magmas and their Cayley tables.
//!
//! `CayleyTable` carries every algorithm over element indices; `Magma` pairs
//! a table with the carrier elements it indexes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::carrier::{units_of, Carrier};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::rule::{eval, loop_mul, OpRule};

/// Largest order for which a Cayley table is materialized.
pub const DEFAULT_ORDER_CAP: u128 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    Groupoid,
    Semigroup,
    Monoid,
    Group,
    Quasigroup,
    Loop,
}

impl ClassLabel {
    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::Groupoid => "groupoid",
            ClassLabel::Semigroup => "semigroup",
            ClassLabel::Monoid => "monoid",
            ClassLabel::Group => "group",
            ClassLabel::Quasigroup => "quasigroup",
            ClassLabel::Loop => "loop",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "groupoid" => ClassLabel::Groupoid,
            "semigroup" => ClassLabel::Semigroup,
            "monoid" => ClassLabel::Monoid,
            "group" => ClassLabel::Group,
            "quasigroup" => ClassLabel::Quasigroup,
            "loop" => ClassLabel::Loop,
            _ => return None,
        })
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StructureClass {
    pub closed: bool,
    pub associative: bool,
    pub has_identity: bool,
    pub all_invertible: bool,
    pub latin_square: bool,
    pub commutative: bool,
    pub label: ClassLabel,
}

impl StructureClass {
    pub fn from_flags(
        associative: bool,
        has_identity: bool,
        all_invertible: bool,
        latin_square: bool,
        commutative: bool,
    ) -> Self {
        let label = if associative && has_identity && all_invertible {
            ClassLabel::Group
        } else if associative && has_identity {
            ClassLabel::Monoid
        } else if associative {
            ClassLabel::Semigroup
        } else if latin_square && has_identity {
            ClassLabel::Loop
        } else if latin_square {
            ClassLabel::Quasigroup
        } else {
            ClassLabel::Groupoid
        };
        Self {
            closed: true,
            associative,
            has_identity,
            all_invertible,
            latin_square,
            commutative,
            label,
        }
    }

    /// Whether a magma of this class is also a `class` (a group is a
    /// monoid, a loop, and so on).
    pub fn satisfies(&self, class: ClassLabel) -> bool {
        match class {
            ClassLabel::Groupoid => self.closed,
            ClassLabel::Semigroup => self.associative,
            ClassLabel::Monoid => self.associative && self.has_identity,
            ClassLabel::Group => self.label == ClassLabel::Group,
            ClassLabel::Quasigroup => self.latin_square,
            ClassLabel::Loop => self.latin_square && self.has_identity,
        }
    }
}

/// A square table of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<u32>,
}

impl CayleyTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                debug_assert!(v < n);
                cells.push(v as u32);
            }
        }
        Self { n, cells }
    }

    /// Builds a table from row-major cells. Returns `None` if a cell is out
    /// of range or the cell count is not square.
    pub fn from_cells(n: usize, cells: Vec<usize>) -> Option<Self> {
        if cells.len() != n * n || cells.iter().any(|&c| c >= n) {
            return None;
        }
        Some(Self {
            n,
            cells: cells.into_iter().map(|c| c as u32).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.n + j] as usize
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.cells[i * self.n..(i + 1) * self.n].iter().map(|&c| c as usize)
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.get(e, x) == x && self.get(x, e) == x))
    }

    pub fn absorber(&self) -> Option<usize> {
        (0..self.n).find(|&z| (0..self.n).all(|x| self.get(z, x) == z && self.get(x, z) == z))
    }

    /// First triple in lexicographic order with `(xy)z != x(yz)`.
    pub fn non_associative_triple(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                let xy = self.get(x, y);
                for z in 0..self.n {
                    if self.get(xy, z) != self.get(x, self.get(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.non_associative_triple().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.get(x, y) == self.get(y, x)))
    }

    /// Every row and column is a permutation.
    pub fn is_latin(&self) -> bool {
        let mut seen = vec![usize::MAX; self.n];
        let mut stamp = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.get(i, j);
                if seen[v] == stamp {
                    return false;
                }
                seen[v] = stamp;
            }
            stamp += 1;
            for j in 0..self.n {
                let v = self.get(j, i);
                if seen[v] == stamp {
                    return false;
                }
                seen[v] = stamp;
            }
            stamp += 1;
        }
        true
    }

    fn all_invertible(&self, e: usize) -> bool {
        (0..self.n).all(|x| (0..self.n).any(|y| self.get(x, y) == e && self.get(y, x) == e))
    }

    pub fn classify(&self) -> StructureClass {
        let identity = self.identity();
        StructureClass::from_flags(
            self.is_associative(),
            identity.is_some(),
            identity.is_some_and(|e| self.all_invertible(e)),
            self.is_latin(),
            self.is_commutative(),
        )
    }

    /// Left power `x^k` with `x^1 = x` and `x^(k+1) = x x^k`.
    pub fn power(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1, "powers start at 1");
        let mut acc = x;
        for _ in 1..k {
            acc = self.get(x, acc);
        }
        acc
    }

    /// Least `k >= 1` with `x^k = e` among the first `n` left powers.
    pub fn order_of(&self, x: usize, e: usize) -> Option<usize> {
        let mut acc = x;
        for k in 1..=self.n {
            if acc == e {
                return Some(k);
            }
            acc = self.get(x, acc);
        }
        None
    }

    /// Least `k >= 1` with `x^k = z`; `z` absorbing makes later powers stay.
    pub fn nilpotency(&self, x: usize, z: usize) -> Option<usize> {
        self.order_of(x, z)
    }

    /// Smallest closed superset of `seed`, sorted.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        let mut items = Vec::new();
        for &s in seed {
            if !member[s] {
                member[s] = true;
                items.push(s);
            }
        }
        let mut k = 0;
        while k < items.len() {
            let x = items[k];
            for i in 0..=k {
                let y = items[i];
                for v in [self.get(x, y), self.get(y, x)] {
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

    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &s in subset {
            member[s] = true;
        }
        subset
            .iter()
            .all(|&a| subset.iter().all(|&b| member[self.get(a, b)]))
    }

    /// Table of the submagma on `subset` (sorted, closed), indexed by
    /// position in `subset`.
    pub fn induced(&self, subset: &[usize]) -> Option<CayleyTable> {
        let mut pos = vec![usize::MAX; self.n];
        for (k, &s) in subset.iter().enumerate() {
            pos[s] = k;
        }
        let mut cells = Vec::with_capacity(subset.len() * subset.len());
        for &a in subset {
            for &b in subset {
                let p = pos[self.get(a, b)];
                if p == usize::MAX {
                    return None;
                }
                cells.push(p);
            }
        }
        CayleyTable::from_cells(subset.len(), cells)
    }

    /// The `x` with `a x = b`, if unique.
    pub fn left_div(&self, a: usize, b: usize) -> Option<usize> {
        let mut hits = (0..self.n).filter(|&x| self.get(a, x) == b);
        let x = hits.next()?;
        hits.next().is_none().then_some(x)
    }

    /// The `x` with `x a = b`, if unique.
    pub fn right_div(&self, b: usize, a: usize) -> Option<usize> {
        let mut hits = (0..self.n).filter(|&x| self.get(x, a) == b);
        let x = hits.next()?;
        hits.next().is_none().then_some(x)
    }
}

/// A finite carrier with its operation and lazily built table.
pub struct Magma {
    carrier: Carrier,
    rule: Option<OpRule>,
    elements: Vec<Element>,
    table: OnceBox<CayleyTable>,
}

impl Clone for Magma {
    fn clone(&self) -> Self {
        let table = OnceBox::new();
        if let Some(t) = self.table.get() {
            let _ = table.set(alloc::boxed::Box::new(t.clone()));
        }
        Self {
            carrier: self.carrier.clone(),
            rule: self.rule.clone(),
            elements: self.elements.clone(),
            table,
        }
    }
}

impl fmt::Debug for Magma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Magma")
            .field("carrier", &self.carrier)
            .field("rule", &self.rule)
            .field("order", &self.elements.len())
            .finish()
    }
}

impl Magma {
    pub fn new(carrier: Carrier, rule: OpRule) -> Result<Self> {
        Self::with_cap(carrier, rule, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(carrier: Carrier, rule: OpRule, cap: u128) -> Result<Self> {
        if !carrier.is_finite() {
            return Err(Error::InfiniteCarrier);
        }
        let order = carrier.cardinality()?;
        if order > cap {
            return Err(Error::OrderTooLarge { order, cap });
        }
        let elements = carrier.enumerate()?;
        Ok(Self {
            carrier,
            rule: Some(rule),
            elements,
            table: OnceBox::new(),
        })
    }

    /// A magma given directly by its table over `elements`.
    pub fn from_table(carrier: Carrier, elements: Vec<Element>, table: CayleyTable) -> Self {
        assert_eq!(elements.len(), table.size());
        let cell = OnceBox::new();
        let _ = cell.set(alloc::boxed::Box::new(table));
        Self {
            carrier,
            rule: None,
            elements,
            table: cell,
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn rule(&self) -> Option<&OpRule> {
        self.rule.as_ref()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index(&self, x: &Element) -> Option<usize> {
        if self.rule.is_some() {
            self.carrier.index_of(x).map(|i| i as usize)
        } else {
            self.elements.iter().position(|e| e == x)
        }
    }

    fn require(&self, x: &Element) -> Result<usize> {
        self.index(x)
            .ok_or_else(|| Error::CarrierMismatch(x.label(true)))
    }

    /// The Cayley table, built and closure-checked on first use.
    pub fn table(&self) -> Result<&CayleyTable> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let rule = self.rule.as_ref().expect("explicit magmas carry a table");
        let built = build_table(&self.carrier, rule, &self.elements)?;
        Ok(self.table.get_or_init(|| alloc::boxed::Box::new(built)))
    }

    pub fn apply(&self, a: &Element, b: &Element) -> Result<Element> {
        let (i, j) = (self.require(a)?, self.require(b)?);
        let t = self.table()?;
        Ok(self.elements[t.get(i, j)].clone())
    }

    pub fn identity(&self) -> Result<Option<Element>> {
        Ok(self.table()?.identity().map(|i| self.elements[i].clone()))
    }

    pub fn absorber(&self) -> Result<Option<Element>> {
        Ok(self.table()?.absorber().map(|i| self.elements[i].clone()))
    }

    pub fn element_order(&self, x: &Element) -> Result<Option<usize>> {
        let t = self.table()?;
        let e = t.identity().ok_or(Error::NoIdentity)?;
        Ok(t.order_of(self.require(x)?, e))
    }

    pub fn classify(&self) -> Result<StructureClass> {
        Ok(self.table()?.classify())
    }

    /// Submagma on the given members.
    pub fn induced(&self, members: &[usize]) -> Result<Magma> {
        let table = self.table()?.induced(members).ok_or_else(|| {
            Error::ClosureViolation(format!("subset of size {} is not closed", members.len()))
        })?;
        let elements = members.iter().map(|&i| self.elements[i].clone()).collect();
        Ok(Magma::from_table(self.carrier.clone(), elements, table))
    }
}

fn build_table(carrier: &Carrier, rule: &OpRule, elements: &[Element]) -> Result<CayleyTable> {
    let n = elements.len();
    match (carrier, rule) {
        (Carrier::Zmod(m), OpRule::AddMod | OpRule::MulMod | OpRule::GroupoidPair { .. }) => {
            let m = *m as u128;
            let (t, u, mul) = match rule {
                OpRule::AddMod => (1, 1, false),
                OpRule::GroupoidPair { t, u } => (*t as u128, *u as u128, false),
                _ => (0, 0, true),
            };
            return Ok(CayleyTable::from_fn(n, |a, b| {
                let (a, b) = (a as u128, b as u128);
                (if mul { a * b % m } else { (t * a + u * b) % m }) as usize
            }));
        }
        (Carrier::LoopSet(ln), OpRule::LoopRule { m }) => {
            return Ok(CayleyTable::from_fn(n, |i, j| {
                loop_mul(*ln, *m, i as u64, j as u64) as usize
            }));
        }
        (Carrier::Units(m), OpRule::MulMod) => {
            let units = units_of(*m);
            let mut pos = vec![usize::MAX; *m as usize];
            for (k, &u) in units.iter().enumerate() {
                pos[u as usize] = k;
            }
            let m128 = *m as u128;
            return Ok(CayleyTable::from_fn(n, |a, b| {
                pos[(units[a] as u128 * units[b] as u128 % m128) as usize]
            }));
        }
        (Carrier::TupleOf(parts), OpRule::Componentwise(rules)) if parts.len() == rules.len() => {
            let mut tables = Vec::with_capacity(parts.len());
            for (c, r) in parts.iter().zip(rules) {
                let sub = Magma::new(c.clone(), r.clone())?;
                tables.push(sub.table()?.clone());
            }
            return Ok(product_table(&tables));
        }
        _ => {}
    }
    let mut cells = Vec::with_capacity(n * n);
    for a in elements {
        for b in elements {
            let v = eval(carrier, rule, a, b)?;
            let idx = carrier.index_of(&v).ok_or_else(|| {
                Error::ClosureViolation(format!(
                    "{} . {} = {} leaves the carrier",
                    a.label(true),
                    b.label(true),
                    v.label(true)
                ))
            })?;
            cells.push(idx as usize);
        }
    }
    Ok(CayleyTable::from_cells(n, cells).expect("indices come from the carrier"))
}

/// Componentwise product table with mixed-radix indexing, first factor most
/// significant.
pub fn product_table(tables: &[CayleyTable]) -> CayleyTable {
    let sizes: Vec<usize> = tables.iter().map(CayleyTable::size).collect();
    let n: usize = sizes.iter().product();
    let split = |mut idx: usize, out: &mut [usize]| {
        for (slot, &s) in out.iter_mut().zip(&sizes).rev() {
            *slot = idx % s;
            idx /= s;
        }
    };
    let mut xs = vec![0; tables.len()];
    let mut ys = vec![0; tables.len()];
    CayleyTable::from_fn(n, |a, b| {
        split(a, &mut xs);
        split(b, &mut ys);
        tables
            .iter()
            .zip(xs.iter().zip(&ys))
            .zip(&sizes)
            .fold(0, |acc, ((t, (&x, &y)), &s)| acc * s + t.get(x, y))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u64, rule: OpRule) -> Magma {
        Magma::new(Carrier::Zmod(n), rule).unwrap()
    }

    #[test]
    fn loop_row_matches_rule() {
        let l = Magma::new(Carrier::LoopSet(5), OpRule::LoopRule { m: 2 }).unwrap();
        let t = l.table().unwrap();
        let row: Vec<usize> = t.row(2).collect();
        assert_eq!(row, vec![2, 5, 0, 4, 1, 3]);
        assert_eq!(l.element_order(&Element::point(3)).unwrap(), Some(2));
        assert_eq!(l.identity().unwrap(), Some(Element::loop_identity()));
    }

    #[test]
    fn classes() {
        assert_eq!(zmod(24, OpRule::MulMod).classify().unwrap().label, ClassLabel::Monoid);
        assert_eq!(zmod(13, OpRule::AddMod).classify().unwrap().label, ClassLabel::Group);
        assert_eq!(
            zmod(12, OpRule::GroupoidPair { t: 3, u: 9 }).classify().unwrap().label,
            ClassLabel::Groupoid
        );
        let l = Magma::new(Carrier::LoopSet(7), OpRule::LoopRule { m: 3 }).unwrap();
        let c = l.classify().unwrap();
        assert_eq!(c.label, ClassLabel::Loop);
        assert!(!c.associative);
        assert_eq!(zmod(1, OpRule::MulMod).table().unwrap().get(0, 0), 0);
        let u = Magma::new(Carrier::Units(11), OpRule::MulMod).unwrap();
        assert_eq!(u.classify().unwrap().label, ClassLabel::Group);
        assert_eq!(u.order(), 10);
    }

    #[test]
    fn no_identity() {
        let g = zmod(6, OpRule::GroupoidPair { t: 2, u: 4 });
        assert_eq!(g.identity().unwrap(), None);
        assert_eq!(g.element_order(&Element::residue(1, 6)), Err(Error::NoIdentity));
    }

    #[test]
    fn closure_examples() {
        let m = zmod(12, OpRule::MulMod);
        let t = m.table().unwrap();
        assert_eq!(t.closure(&[2]), vec![2, 4, 8]);
        assert_eq!(t.closure(&(0..12).collect::<Vec<_>>()).len(), 12);
        let l = Magma::new(Carrier::LoopSet(5), OpRule::LoopRule { m: 2 }).unwrap();
        assert_eq!(l.table().unwrap().closure(&[1]), vec![0, 1]);
    }

    #[test]
    fn closure_is_fixed_point() {
        let m = zmod(20, OpRule::GroupoidPair { t: 3, u: 7 });
        let t = m.table().unwrap();
        for a in 0..20 {
            for b in 0..20 {
                let c = t.closure(&[a, b]);
                assert!(t.is_closed(&c));
                assert_eq!(t.closure(&c), c);
            }
        }
    }

    #[test]
    fn product_table_is_componentwise() {
        let carrier = Carrier::TupleOf(vec![Carrier::Zmod(3), Carrier::Zmod(4)]);
        let rule = OpRule::Componentwise(vec![OpRule::AddMod, OpRule::MulMod]);
        let fast = Magma::new(carrier.clone(), rule.clone()).unwrap();
        let elements = carrier.enumerate().unwrap();
        for a in &elements {
            for b in &elements {
                let direct = crate::rule::apply(&carrier, &rule, a, b).unwrap();
                assert_eq!(fast.apply(a, b).unwrap(), direct);
            }
        }
    }

    #[test]
    fn infinite_and_oversized_rejected() {
        let z = Carrier::Unbounded(crate::carrier::Unbounded::Integers);
        assert_eq!(Magma::new(z, OpRule::AddMod).unwrap_err(), Error::InfiniteCarrier);
        let big = Carrier::Maps {
            degree: 7,
            bijective: false,
        };
        assert!(matches!(Magma::new(big, OpRule::Compose), Err(Error::OrderTooLarge { .. })));
    }
}
