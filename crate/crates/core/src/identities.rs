//! Identity templates, the named catalog, exhaustive checking and
//! Smarandache grading.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::magma::{CayleyTable, Magma};
use crate::structure::Structure;
use crate::subs::{witness_search, Exclusions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    fn slot(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Op(Box<Term>, Box<Term>),
}

pub const MAX_DEPTH: usize = 4;

pub fn x() -> Term {
    Term::Var(Var::X)
}

pub fn y() -> Term {
    Term::Var(Var::Y)
}

pub fn z() -> Term {
    Term::Var(Var::Z)
}

pub fn op(a: Term, b: Term) -> Term {
    Term::Op(Box::new(a), Box::new(b))
}

impl Term {
    #[inline]
    pub fn eval(&self, table: &CayleyTable, assignment: &[usize; 3]) -> usize {
        match self {
            Term::Var(v) => assignment[v.slot()],
            Term::Op(a, b) => table.get(a.eval(table, assignment), b.eval(table, assignment)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    fn var_mask(&self) -> u8 {
        match self {
            Term::Var(v) => 1 << v.slot(),
            Term::Op(a, b) => a.var_mask() | b.var_mask(),
        }
    }

    /// Substitutes variables through `f`.
    pub fn rename(&self, f: &impl Fn(Var) -> Var) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(*v)),
            Term::Op(a, b) => op(a.rename(f), b.rename(f)),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, outer: bool) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{}", v.name()),
            Term::Op(a, b) => {
                if !outer {
                    f.write_str("(")?;
                }
                a.write(f, false)?;
                f.write_str("*")?;
                b.write(f, false)?;
                if !outer {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term) -> Self {
        assert!(lhs.depth() <= MAX_DEPTH && rhs.depth() <= MAX_DEPTH, "term too deep");
        Self {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    /// Variables appearing on either side, in `x, y, z` order.
    pub fn vars_used(&self) -> Vec<Var> {
        let mask = self.lhs.var_mask() | self.rhs.var_mask();
        [Var::X, Var::Y, Var::Z]
            .into_iter()
            .filter(|v| mask & (1 << v.slot()) != 0)
            .collect()
    }

    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Identity {
        Identity {
            name: self.name.clone(),
            lhs: self.lhs.rename(&f),
            rhs: self.rhs.rename(&f),
        }
    }

    /// Lexicographically first violating assignment of the used variables,
    /// with the number of assignments examined.
    pub fn first_counterexample(&self, table: &CayleyTable) -> (Option<Vec<usize>>, u64) {
        let vars = self.vars_used();
        let n = table.size();
        let total = (n as u64).pow(vars.len() as u32);
        let mut digits = alloc::vec![0usize; vars.len()];
        let mut assignment = [0usize; 3];
        for step in 0..total {
            for (v, &d) in vars.iter().zip(&digits) {
                assignment[v.slot()] = d;
            }
            if self.lhs.eval(table, &assignment) != self.rhs.eval(table, &assignment) {
                return (Some(digits), step + 1);
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < n {
                    break;
                }
                *d = 0;
            }
        }
        (None, total)
    }

    pub fn holds(&self, table: &CayleyTable) -> bool {
        self.first_counterexample(table).0.is_none()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// The named identities, in a fixed order.
pub fn catalog() -> Vec<Identity> {
    alloc::vec![
        Identity::new("commutative", op(x(), y()), op(y(), x())),
        Identity::new("idempotent-law", op(x(), x()), x()),
        Identity::new("associative", op(op(x(), y()), z()), op(x(), op(y(), z()))),
        Identity::new("left-alternative", op(op(x(), x()), y()), op(x(), op(x(), y()))),
        Identity::new("right-alternative", op(op(y(), x()), x()), op(y(), op(x(), x()))),
        Identity::new("P-identity", op(op(x(), y()), x()), op(x(), op(y(), x()))),
        Identity::new(
            "bol",
            op(op(op(x(), y()), z()), x()),
            op(x(), op(op(y(), z()), x()))
        ),
        Identity::new(
            "moufang",
            op(op(x(), y()), op(z(), x())),
            op(op(x(), op(y(), z())), x())
        ),
        Identity::new(
            "bol-left",
            op(x(), op(y(), op(x(), z()))),
            op(op(x(), op(y(), x())), z())
        ),
        Identity::new(
            "bol-right",
            op(op(op(z(), x()), y()), x()),
            op(z(), op(op(x(), y()), x()))
        ),
    ]
}

/// Catalog lookup; `is-semigroup` is accepted for `associative`.
pub fn lookup(name: &str) -> Result<Identity> {
    let key = if name == "is-semigroup" { "associative" } else { name };
    catalog()
        .into_iter()
        .find(|id| id.name == key)
        .ok_or_else(|| Error::UnknownIdentity(String::from(name)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grade {
    Strong,
    /// Fails on the whole magma, holds on this closed proper subset.
    SmarandacheVia(Vec<usize>),
    /// Fails, with the first violating assignment of the used variables.
    Fails(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub grade: Grade,
    pub checked: u64,
}

impl IdentityVerdict {
    pub fn is_strong(&self) -> bool {
        self.grade == Grade::Strong
    }
}

/// Exhaustive check; grade is `Strong` or `Fails`.
pub fn check_identity(magma: &Magma, id: &Identity) -> Result<IdentityVerdict> {
    let (cx, checked) = id.first_counterexample(magma.table()?);
    Ok(IdentityVerdict {
        grade: cx.map_or(Grade::Strong, Grade::Fails),
        checked,
    })
}

/// Like `check_identity`, but a failing magma is searched for a closed
/// proper subset of size at least 2 on which the identity holds.
pub fn s_check_magma(magma: &Magma, id: &Identity) -> Result<IdentityVerdict> {
    let table = magma.table()?;
    let verdict = check_identity(magma, id)?;
    let Grade::Fails(cx) = verdict.grade else {
        return Ok(verdict);
    };
    let witness = witness_search(table, Exclusions::NoSingletons, |sub| {
        table.induced(sub).is_some_and(|t| id.holds(&t))
    });
    Ok(IdentityVerdict {
        grade: witness.map_or(Grade::Fails(cx), Grade::SmarandacheVia),
        checked: verdict.checked,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverallGrade {
    Strong,
    Smarandache,
    /// Some but not all components hold strongly or through a witness.
    QuasiSmarandache,
    Fails,
}

impl OverallGrade {
    pub fn name(self) -> &'static str {
        match self {
            OverallGrade::Strong => "strong",
            OverallGrade::Smarandache => "smarandache",
            OverallGrade::QuasiSmarandache => "quasi-smarandache",
            OverallGrade::Fails => "fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureVerdict {
    pub overall: OverallGrade,
    pub components: Vec<IdentityVerdict>,
}

/// Grades a structure componentwise.
pub fn s_check_identity(structure: &Structure, id: &Identity) -> Result<StructureVerdict> {
    if !structure.is_finite() {
        return Err(Error::InfiniteCarrier);
    }
    let components = structure
        .magmas()?
        .into_iter()
        .map(|m| s_check_magma(m, id))
        .collect::<Result<Vec<_>>>()?;
    let strong = components.iter().filter(|v| v.is_strong()).count();
    let passing = components
        .iter()
        .filter(|v| !matches!(v.grade, Grade::Fails(_)))
        .count();
    let overall = if strong == components.len() {
        OverallGrade::Strong
    } else if passing == components.len() {
        OverallGrade::Smarandache
    } else if passing > 0 {
        OverallGrade::QuasiSmarandache
    } else {
        OverallGrade::Fails
    };
    Ok(StructureVerdict { overall, components })
}

fn divides(n: u64, v: i128) -> bool {
    v.rem_euclid(n as i128) == 0
}

/// Closed-form verdict for `Z_n(t, u)` where a family formula applies.
pub fn predict_zn(name: &str, n: u64, t: u64, u: u64) -> Option<bool> {
    let (t, u) = ((t % n) as i128, (u % n) as i128);
    match name {
        "idempotent-law" => return Some(divides(n, t + u - 1)),
        "commutative" => return Some(divides(n, t - u)),
        "associative" | "is-semigroup" => return Some(divides(n, t * t - t) && divides(n, u * u - u)),
        _ => {}
    }
    if divides(n, t + u - 1) {
        return match name {
            "P-identity" => Some(true),
            "bol" => Some(divides(n, t * t * (t - 1))),
            "left-alternative" | "right-alternative" | "moufang" => Some(divides(n, t * t - t)),
            _ => None,
        };
    }
    if t == 0 || u == 0 {
        let s = t.max(u);
        return match name {
            "P-identity" | "left-alternative" | "right-alternative" => Some(divides(n, s * s - s)),
            _ => None,
        };
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::construct::{new_loop, zn_groupoid};
    use crate::structure::Flavor;

    fn gpd(n: u64, t: i64, u: i64) -> Structure {
        zn_groupoid(n, t, u, Flavor::Interval).unwrap()
    }

    #[test]
    fn catalog_names() {
        let names: Vec<String> = catalog().into_iter().map(|i| i.name).collect();
        assert!(names.len() >= 8);
        assert_eq!(lookup("idempotent-law").unwrap().to_string(), "x*x = x");
        assert_eq!(lookup("P-identity").unwrap().to_string(), "(x*y)*x = x*(y*x)");
        assert_eq!(lookup("commutative").unwrap().to_string(), "x*y = y*x");
        assert_eq!(lookup("is-semigroup").unwrap().name, "associative");
        assert!(matches!(lookup("wip"), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn idempotent_examples() {
        let id = lookup("idempotent-law").unwrap();
        let g = gpd(12, 7, 6);
        assert!(check_identity(g.magma(0).unwrap(), &id).unwrap().is_strong());
        let g = gpd(19, 16, 4);
        assert!(check_identity(g.magma(0).unwrap(), &id).unwrap().is_strong());
        let g = gpd(15, 9, 6);
        assert!(!check_identity(g.magma(0).unwrap(), &id).unwrap().is_strong());
    }

    #[test]
    fn loop_commutativity_counterexample() {
        let l = new_loop(5, 2, Flavor::Interval).unwrap();
        let v = check_identity(l.magma(0).unwrap(), &lookup("commutative").unwrap()).unwrap();
        assert_eq!(v.grade, Grade::Fails(alloc::vec![1, 2]));
    }

    #[test]
    fn semigroup_witness() {
        let g = gpd(8, 2, 6);
        let v = s_check_identity(&g, &lookup("is-semigroup").unwrap()).unwrap();
        assert_eq!(v.overall, OverallGrade::Smarandache);
        assert_eq!(v.components[0].grade, Grade::SmarandacheVia(alloc::vec![0, 4]));
        let g = gpd(5, 1, 3);
        let v = s_check_identity(&g, &lookup("associative").unwrap()).unwrap();
        assert_eq!(v.overall, OverallGrade::Fails);
    }

    #[test]
    fn renaming_preserves_verdict() {
        let id = lookup("bol").unwrap();
        let swapped = id.rename(|v| match v {
            Var::X => Var::Z,
            Var::Z => Var::X,
            other => other,
        });
        for (t, u) in [(2, 3), (3, 5), (4, 7)] {
            let g = gpd(10, t, u);
            let table = g.magma(0).unwrap().table().unwrap();
            assert_eq!(id.holds(table), swapped.holds(table));
        }
    }

    #[test]
    fn predictions() {
        assert_eq!(predict_zn("idempotent-law", 12, 7, 6), Some(true));
        assert_eq!(predict_zn("idempotent-law", 15, 9, 6), Some(false));
        assert_eq!(predict_zn("P-identity", 45, 7, 7), None);
    }
}
