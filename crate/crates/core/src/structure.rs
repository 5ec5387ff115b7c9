//! Structures: one or more components, each a carrier, a rule and a flavor.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::carrier::Carrier;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::magma::{ClassLabel, Magma, StructureClass, DEFAULT_ORDER_CAP};
use crate::rule::{self, OpRule};

/// Interval or plain presentation. The algebra is identical; flavor only
/// changes labels and the quasi naming of mixed products.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Flavor {
    #[default]
    Interval,
    Plain,
}

impl Flavor {
    pub fn is_interval(self) -> bool {
        self == Flavor::Interval
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Interval => "interval",
            Flavor::Plain => "plain",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub carrier: Carrier,
    pub rule: OpRule,
    pub flavor: Flavor,
}

pub struct Structure {
    name: String,
    components: Vec<Component>,
    kind_claim: Vec<Option<ClassLabel>>,
    magmas: Vec<OnceBox<Magma>>,
}

impl Clone for Structure {
    fn clone(&self) -> Self {
        Self::with_claims(self.name.clone(), self.components.clone(), self.kind_claim.clone())
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Structure")
            .field("name", &self.name)
            .field("components", &self.components)
            .finish()
    }
}

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl Structure {
    pub fn new(name: impl Into<String>, components: Vec<Component>) -> Self {
        let claims = alloc::vec![None; components.len()];
        Self::with_claims(name.into(), components, claims)
    }

    pub fn with_claims(name: String, components: Vec<Component>, kind_claim: Vec<Option<ClassLabel>>) -> Self {
        assert!(!components.is_empty(), "a structure needs a component");
        assert_eq!(components.len(), kind_claim.len());
        let magmas = components.iter().map(|_| OnceBox::new()).collect();
        Self {
            name,
            components,
            kind_claim,
            magmas,
        }
    }

    pub(crate) fn single(name: String, carrier: Carrier, rule: OpRule, flavor: Flavor, claim: ClassLabel) -> Self {
        Self::with_claims(
            name,
            alloc::vec![Component {
                carrier,
                rule,
                flavor
            }],
            alloc::vec![Some(claim)],
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn kind_claims(&self) -> &[Option<ClassLabel>] {
        &self.kind_claim
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn is_product(&self) -> bool {
        self.components.len() > 1
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.carrier.is_finite())
    }

    /// The `i`-th component as a structure of its own.
    pub fn component(&self, i: usize) -> Structure {
        Self::with_claims(
            component_name(&self.name, i),
            alloc::vec![self.components[i].clone()],
            alloc::vec![self.kind_claim[i]],
        )
    }

    /// Product of the component cardinalities.
    pub fn order(&self) -> Result<u128> {
        self.components.iter().try_fold(1u128, |acc, c| {
            acc.checked_mul(c.carrier.cardinality()?).ok_or(Error::Overflow)
        })
    }

    pub fn carrier(&self) -> Carrier {
        match self.components.as_slice() {
            [c] => c.carrier.clone(),
            parts => Carrier::TupleOf(parts.iter().map(|c| c.carrier.clone()).collect()),
        }
    }

    pub fn rule(&self) -> OpRule {
        match self.components.as_slice() {
            [c] => c.rule.clone(),
            parts => OpRule::Componentwise(parts.iter().map(|c| c.rule.clone()).collect()),
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.carrier().contains(x)
    }

    /// Applies the operation, componentwise for products.
    pub fn apply(&self, a: &Element, b: &Element) -> Result<Element> {
        match self.components.as_slice() {
            [c] => rule::apply(&c.carrier, &c.rule, a, b),
            parts => {
                let (xs, ys) = match (a, b) {
                    (Element::Tuple(xs), Element::Tuple(ys)) => (xs, ys),
                    (Element::Tuple(_), other) | (other, _) => {
                        return Err(Error::CarrierMismatch(other.label(true)))
                    }
                };
                for v in [xs, ys] {
                    if v.len() != parts.len() {
                        return Err(Error::ArityMismatch {
                            expected: parts.len(),
                            found: v.len(),
                        });
                    }
                }
                let out = parts
                    .iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(c, (x, y))| rule::apply(&c.carrier, &c.rule, x, y))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Element::Tuple(out))
            }
        }
    }

    /// Cached magma of component `i`.
    pub fn magma(&self, i: usize) -> Result<&Magma> {
        if let Some(m) = self.magmas[i].get() {
            return Ok(m);
        }
        let c = &self.components[i];
        let m = Magma::new(c.carrier.clone(), c.rule.clone())?;
        m.table()?;
        Ok(self.magmas[i].get_or_init(|| Box::new(m)))
    }

    pub fn magmas(&self) -> Result<Vec<&Magma>> {
        (0..self.arity()).map(|i| self.magma(i)).collect()
    }

    /// The whole structure as one magma; products are flattened into a
    /// tuple carrier, subject to `cap`.
    pub fn flat_magma(&self, cap: u128) -> Result<Magma> {
        if !self.is_product() {
            let order = self.order()?;
            if order > cap {
                return Err(Error::OrderTooLarge { order, cap });
            }
            return self.magma(0).cloned();
        }
        Magma::with_cap(self.carrier(), self.rule(), cap)
    }

    pub fn flat(&self) -> Result<Magma> {
        self.flat_magma(DEFAULT_ORDER_CAP)
    }

    /// Identity element, componentwise.
    pub fn identity(&self) -> Result<Option<Element>> {
        let mut parts = Vec::with_capacity(self.arity());
        for m in self.magmas()? {
            match m.identity()? {
                Some(e) => parts.push(e),
                None => return Ok(None),
            }
        }
        Ok(Some(self.join(parts)))
    }

    /// Absorbing element, componentwise.
    pub fn absorber(&self) -> Result<Option<Element>> {
        let mut parts = Vec::with_capacity(self.arity());
        for m in self.magmas()? {
            match m.absorber()? {
                Some(e) => parts.push(e),
                None => return Ok(None),
            }
        }
        Ok(Some(self.join(parts)))
    }

    /// Left-power order: the lcm of the component orders.
    pub fn element_order(&self, x: &Element) -> Result<Option<u64>> {
        let parts = self.split(x)?;
        let mut acc = 1u64;
        for (m, p) in self.magmas()?.into_iter().zip(parts) {
            match m.element_order(p)? {
                Some(k) => acc = crate::arith::lcm(acc, k as u64),
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    /// Wraps component values into an element of this structure.
    pub fn join(&self, mut parts: Vec<Element>) -> Element {
        if parts.len() == 1 && !self.is_product() {
            parts.pop().expect("one part")
        } else {
            Element::Tuple(parts)
        }
    }

    /// Component values of `x`.
    pub fn split<'a>(&self, x: &'a Element) -> Result<&'a [Element]> {
        let parts = if self.is_product() {
            match x {
                Element::Tuple(xs) => xs.as_slice(),
                other => return Err(Error::CarrierMismatch(other.label(true))),
            }
        } else {
            core::slice::from_ref(x)
        };
        if parts.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: parts.len(),
            });
        }
        Ok(parts)
    }

    /// Label of `x` following each component's flavor.
    pub fn label(&self, x: &Element) -> String {
        match (self.is_product(), x) {
            (true, Element::Tuple(xs)) if xs.len() == self.arity() => {
                let cells: Vec<String> = xs
                    .iter()
                    .zip(&self.components)
                    .map(|(e, c)| e.label(c.flavor.is_interval()))
                    .collect();
                format!("({})", cells.join(","))
            }
            _ => x.label(self.components[0].flavor.is_interval()),
        }
    }

    pub fn classes(&self) -> Result<Vec<StructureClass>> {
        self.magmas()?.into_iter().map(Magma::classify).collect()
    }

    /// Component class labels joined with `×`, e.g. `group × monoid`.
    pub fn class_label(&self) -> Result<String> {
        let names: Vec<&str> = self.classes()?.iter().map(|c| c.label.name()).collect();
        Ok(names.join(" × "))
    }

    /// Family name: `interval loop`, `interval bisemigroup`,
    /// `quasi interval group-semigroup`, `interval mixed 5-structure`.
    pub fn kind_name(&self) -> Result<String> {
        let classes = self.classes()?;
        let flavor = if self.components.iter().all(|c| c.flavor == Flavor::Interval) {
            "interval"
        } else if self.components.iter().all(|c| c.flavor == Flavor::Plain) {
            "plain"
        } else {
            "quasi interval"
        };
        let labels: Vec<&str> = classes.iter().map(|c| c.label.name()).collect();
        let mut distinct = labels.clone();
        distinct.sort_unstable();
        distinct.dedup();
        Ok(match (labels.len(), distinct.len()) {
            (1, _) => format!("{flavor} {}", labels[0]),
            (2, 1) => format!("{flavor} bi{}", labels[0]),
            (2, _) => format!("{flavor} {}-{}", labels[0], labels[1]),
            (k, 1) => format!("{flavor} {k}-{}", labels[0]),
            (k, _) => format!("{flavor} mixed {k}-structure"),
        })
    }
}

fn component_name(name: &str, i: usize) -> String {
    name.split(" x ")
        .nth(i)
        .map_or_else(|| format!("{name}[{i}]"), String::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    #[test]
    fn product_apply_and_labels() {
        let s = product(&[
            zn_semigroup(13, SemigroupOp::Add, Flavor::Interval).unwrap(),
            zn_semigroup(16, SemigroupOp::Mul, Flavor::Interval).unwrap(),
        ])
        .unwrap();
        let x = Element::tuple([Element::residue(10, 13), Element::residue(14, 16)]);
        let y = Element::tuple([Element::residue(7, 13), Element::residue(10, 16)]);
        let z = s.apply(&x, &y).unwrap();
        assert_eq!(s.label(&z), "([0,4],[0,12])");
        assert_eq!(s.order().unwrap(), 208);
        assert_eq!(s.class_label().unwrap(), "group × monoid");
        assert_eq!(s.kind_name().unwrap(), "interval group-monoid");
        assert_eq!(s.component(1).name(), "Z_16(mul)");
    }

    #[test]
    fn quasi_label() {
        let s = product(&[
            zn_semigroup(4, SemigroupOp::Mul, Flavor::Plain).unwrap(),
            zn_semigroup(6, SemigroupOp::Mul, Flavor::Interval).unwrap(),
        ])
        .unwrap();
        assert_eq!(s.kind_name().unwrap(), "quasi interval bimonoid");
        let x = Element::tuple([Element::residue(3, 4), Element::residue(5, 6)]);
        assert_eq!(s.label(&x), "(3,[0,5])");
    }

    #[test]
    fn arity_checked() {
        let s = product(&[zn_group(3, Flavor::Interval).unwrap(), zn_group(5, Flavor::Interval).unwrap()]).unwrap();
        let bad = Element::tuple([Element::residue(1, 3)]);
        assert!(matches!(s.apply(&bad, &bad), Err(Error::ArityMismatch { .. })));
    }
}
