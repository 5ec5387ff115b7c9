//! Operation rules and their element-level evaluation.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::carrier::Carrier;
use crate::element::{Element, LoopPoint, Matrix, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OpRule {
    AddMod,
    MulMod,
    /// `a * b = t a + u b`.
    GroupoidPair { t: u64, u: u64 },
    /// `i * j = m j - (m - 1) i (mod n)` with `0` read as `n`, `i * i = e`.
    LoopRule { m: u64 },
    /// Map composition, left operand applied first.
    Compose,
    EntrywiseOf(Box<OpRule>),
    MatrixMulMod,
    Componentwise(Vec<OpRule>),
}

/// Loop product on point indices, `0` standing for `e`.
#[inline]
pub fn loop_mul(n: u64, m: u64, i: u64, j: u64) -> u64 {
    if i == 0 {
        return j;
    }
    if j == 0 {
        return i;
    }
    if i == j {
        return 0;
    }
    let v = ((m as u128 * j as u128 + (n - m + 1) as u128 * i as u128) % n as u128) as u64;
    if v == 0 {
        n
    } else {
        v
    }
}

/// Evaluates `rule(a, b)` in `carrier`, checking that both operands and the
/// result belong to it.
pub fn apply(carrier: &Carrier, rule: &OpRule, a: &Element, b: &Element) -> Result<Element> {
    for x in [a, b] {
        if !carrier.contains(x) {
            return Err(Error::CarrierMismatch(x.label(true)));
        }
    }
    let out = eval(carrier, rule, a, b)?;
    if !carrier.contains(&out) {
        return Err(Error::ClosureViolation(format!(
            "{} . {} = {} leaves the carrier",
            a.label(true),
            b.label(true),
            out.label(true)
        )));
    }
    Ok(out)
}

fn unsupported(rule: &OpRule, carrier: &Carrier) -> Error {
    Error::UnsupportedRule(format!("{rule:?} on {carrier:?}"))
}

/// Evaluation without membership checks.
pub(crate) fn eval(carrier: &Carrier, rule: &OpRule, a: &Element, b: &Element) -> Result<Element> {
    match (carrier, rule, a, b) {
        (Carrier::Zmod(n) | Carrier::Units(n), _, Element::Mod(x), Element::Mod(y)) => {
            let (x, y, n128) = (x.value() as u128, y.value() as u128, *n as u128);
            let v = match rule {
                OpRule::AddMod => (x + y) % n128,
                OpRule::MulMod => (x * y) % n128,
                OpRule::GroupoidPair { t, u } => (*t as u128 * x + *u as u128 * y) % n128,
                _ => return Err(unsupported(rule, carrier)),
            };
            Ok(Element::residue(v as i64, *n))
        }
        (Carrier::LoopSet(n), OpRule::LoopRule { m }, Element::Loop(i), Element::Loop(j)) => {
            Ok(match loop_mul(*n, *m, i.rank(), j.rank()) {
                0 => Element::Loop(LoopPoint::Identity),
                v => Element::point(v),
            })
        }
        (Carrier::Maps { .. }, OpRule::Compose, Element::Map(x), Element::Map(y)) => Ok(
            Element::Map(x.iter().map(|&i| y[i as usize - 1]).collect()),
        ),
        (
            Carrier::MatrixOf { inner, .. },
            OpRule::EntrywiseOf(cell),
            Element::Matrix(x),
            Element::Matrix(y),
        ) => {
            let entries = x
                .entries
                .iter()
                .zip(&y.entries)
                .map(|(p, q)| eval(inner, cell, p, q))
                .collect::<Result<Vec<_>>>()?;
            Ok(Element::Matrix(Matrix::new(x.rows, x.cols, entries)))
        }
        (Carrier::MatrixOf { rows, cols, inner }, OpRule::MatrixMulMod, Element::Matrix(x), Element::Matrix(y)) => {
            let n = match **inner {
                Carrier::Zmod(n) => n,
                _ => return Err(Error::UnsupportedBase(format!("{inner:?}"))),
            };
            if rows != cols {
                return Err(Error::NonSquareMul {
                    rows: *rows,
                    cols: *cols,
                });
            }
            let k = *rows;
            let val = |m: &Matrix, i: usize, j: usize| m.get(i, j).as_residue().unwrap_or(0) as u128;
            let mut entries = Vec::with_capacity(k * k);
            for i in 0..k {
                for j in 0..k {
                    let s = (0..k).fold(0u128, |acc, l| (acc + val(x, i, l) * val(y, l, j)) % n as u128);
                    entries.push(Element::residue(s as i64, n));
                }
            }
            Ok(Element::Matrix(Matrix::new(k, k, entries)))
        }
        (Carrier::TupleOf(parts), OpRule::Componentwise(rules), Element::Tuple(xs), Element::Tuple(ys)) => {
            if rules.len() != parts.len() {
                return Err(Error::ArityMismatch {
                    expected: parts.len(),
                    found: rules.len(),
                });
            }
            let out = parts
                .iter()
                .zip(rules)
                .zip(xs.iter().zip(ys))
                .map(|((c, r), (x, y))| eval(c, r, x, y))
                .collect::<Result<Vec<_>>>()?;
            Ok(Element::Tuple(out))
        }
        (Carrier::Unbounded(_), _, Element::Scalar(x), Element::Scalar(y)) => {
            let v = match rule {
                OpRule::AddMod => scalar_add(*x, *y)?,
                OpRule::MulMod => scalar_mul(*x, *y)?,
                OpRule::GroupoidPair { t, u } => {
                    let tx = scalar_mul(Scalar::Int(*t as u128), *x)?;
                    let uy = scalar_mul(Scalar::Int(*u as u128), *y)?;
                    scalar_add(tx, uy)?
                }
                _ => return Err(unsupported(rule, carrier)),
            };
            Ok(Element::Scalar(v))
        }
        _ => Err(unsupported(rule, carrier)),
    }
}

fn as_ratio(s: Scalar) -> Option<(u128, u128)> {
    match s {
        Scalar::Int(a) => Some((a, 1)),
        Scalar::Rational(n, d) => Some((n, d)),
        Scalar::Real(_) => None,
    }
}

fn scalar_add(x: Scalar, y: Scalar) -> Result<Scalar> {
    match (as_ratio(x), as_ratio(y)) {
        (Some((a, b)), Some((c, d))) => {
            let num = a
                .checked_mul(d)
                .and_then(|l| c.checked_mul(b).and_then(|r| l.checked_add(r)))
                .ok_or(Error::Overflow)?;
            Ok(Scalar::rational(num, b.checked_mul(d).ok_or(Error::Overflow)?))
        }
        _ => Ok(Scalar::Real(x.as_f64() + y.as_f64())),
    }
}

fn scalar_mul(x: Scalar, y: Scalar) -> Result<Scalar> {
    match (as_ratio(x), as_ratio(y)) {
        (Some((a, b)), Some((c, d))) => Ok(Scalar::rational(
            a.checked_mul(c).ok_or(Error::Overflow)?,
            b.checked_mul(d).ok_or(Error::Overflow)?,
        )),
        _ => Ok(Scalar::Real(x.as_f64() * y.as_f64())),
    }
}
