//! Carrier descriptors and their canonical element order.
//!
//! Every finite carrier has a stable bijection between `0..cardinality` and
//! its elements. Residues ascend, loop points run `e, 1, ..., n`, maps go in
//! lexicographic image order (permutations by Lehmer rank), and matrices and
//! tuples use mixed radix with the first component most significant.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::gcd;
use crate::element::{Element, LoopPoint, Matrix, Scalar};
use crate::error::{Error, Result};

/// Largest carrier `enumerate` will materialize.
pub const MAX_ENUMERATION: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unbounded {
    Integers,
    Rationals,
    Reals,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    Zmod(u64),
    /// Residues coprime to `n`.
    Units(u64),
    LoopSet(u64),
    Maps { degree: usize, bijective: bool },
    MatrixOf { rows: usize, cols: usize, inner: Box<Carrier> },
    TupleOf(Vec<Carrier>),
    Unbounded(Unbounded),
}

impl Carrier {
    pub fn is_finite(&self) -> bool {
        match self {
            Carrier::Unbounded(_) => false,
            Carrier::MatrixOf { inner, .. } => inner.is_finite(),
            Carrier::TupleOf(parts) => parts.iter().all(Carrier::is_finite),
            _ => true,
        }
    }

    pub fn cardinality(&self) -> Result<u128> {
        match self {
            Carrier::Zmod(n) => Ok(*n as u128),
            Carrier::Units(n) => Ok(units_of(*n).len() as u128),
            Carrier::LoopSet(n) => Ok(*n as u128 + 1),
            Carrier::Maps { degree, bijective } => {
                let k = *degree as u128;
                if *bijective {
                    (1..=k).try_fold(1u128, |acc, i| acc.checked_mul(i).ok_or(Error::Overflow))
                } else {
                    k.checked_pow(*degree as u32).ok_or(Error::Overflow)
                }
            }
            Carrier::MatrixOf { rows, cols, inner } => {
                let base = inner.cardinality()?;
                base.checked_pow((rows * cols) as u32).ok_or(Error::Overflow)
            }
            Carrier::TupleOf(parts) => parts.iter().try_fold(1u128, |acc, p| {
                acc.checked_mul(p.cardinality()?).ok_or(Error::Overflow)
            }),
            Carrier::Unbounded(_) => Err(Error::InfiniteCarrier),
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        match (self, x) {
            (Carrier::Unbounded(kind), Element::Scalar(s)) => match (kind, s) {
                (_, Scalar::Real(v)) => *kind == Unbounded::Reals && *v >= 0.0,
                (Unbounded::Integers, Scalar::Rational(..)) => false,
                _ => true,
            },
            (Carrier::Unbounded(_), _) => false,
            (Carrier::MatrixOf { rows, cols, inner }, Element::Matrix(m)) => {
                m.rows == *rows && m.cols == *cols && m.entries.iter().all(|e| inner.contains(e))
            }
            (Carrier::TupleOf(parts), Element::Tuple(xs)) => {
                parts.len() == xs.len() && parts.iter().zip(xs).all(|(c, e)| c.contains(e))
            }
            _ => self.index_of(x).is_some(),
        }
    }

    /// Position of `x` in the canonical order.
    pub fn index_of(&self, x: &Element) -> Option<u128> {
        match (self, x) {
            (Carrier::Zmod(n), Element::Mod(m)) if m.modulus() == *n => Some(m.value() as u128),
            (Carrier::Units(n), Element::Mod(m)) if m.modulus() == *n => units_of(*n)
                .binary_search(&m.value())
                .ok()
                .map(|i| i as u128),
            (Carrier::LoopSet(n), Element::Loop(p)) => match p {
                LoopPoint::Identity => Some(0),
                LoopPoint::Point(i) if (1..=*n).contains(i) => Some(*i as u128),
                _ => None,
            },
            (Carrier::Maps { degree, bijective }, Element::Map(img)) => {
                map_index(*degree, *bijective, img)
            }
            (Carrier::MatrixOf { rows, cols, inner }, Element::Matrix(m)) => {
                if m.rows != *rows || m.cols != *cols {
                    return None;
                }
                let base = inner.cardinality().ok()?;
                m.entries.iter().try_fold(0u128, |acc, e| {
                    acc.checked_mul(base)?.checked_add(inner.index_of(e)?)
                })
            }
            (Carrier::TupleOf(parts), Element::Tuple(xs)) => {
                if parts.len() != xs.len() {
                    return None;
                }
                parts.iter().zip(xs).try_fold(0u128, |acc, (c, e)| {
                    acc.checked_mul(c.cardinality().ok()?)?.checked_add(c.index_of(e)?)
                })
            }
            _ => None,
        }
    }

    /// Inverse of `index_of`.
    pub fn element_at(&self, mut idx: u128) -> Option<Element> {
        if idx >= self.cardinality().ok()? {
            return None;
        }
        Some(match self {
            Carrier::Zmod(n) => Element::residue(idx as i64, *n),
            Carrier::Units(n) => Element::residue(units_of(*n)[idx as usize] as i64, *n),
            Carrier::LoopSet(_) => match idx {
                0 => Element::loop_identity(),
                i => Element::point(i as u64),
            },
            Carrier::Maps { degree, bijective } => Element::Map(map_at(*degree, *bijective, idx)),
            Carrier::MatrixOf { rows, cols, inner } => {
                let base = inner.cardinality().ok()?;
                let mut entries = vec![Element::int(0); rows * cols];
                for slot in entries.iter_mut().rev() {
                    *slot = inner.element_at(idx % base)?;
                    idx /= base;
                }
                Element::Matrix(Matrix::new(*rows, *cols, entries))
            }
            Carrier::TupleOf(parts) => {
                let mut out = vec![Element::int(0); parts.len()];
                for (slot, c) in out.iter_mut().zip(parts).rev() {
                    let base = c.cardinality().ok()?;
                    *slot = c.element_at(idx % base)?;
                    idx /= base;
                }
                Element::Tuple(out)
            }
            Carrier::Unbounded(_) => return None,
        })
    }

    /// Every element exactly once, in canonical order.
    pub fn enumerate(&self) -> Result<Vec<Element>> {
        let card = self.cardinality()?;
        if card > MAX_ENUMERATION {
            return Err(Error::OrderTooLarge {
                order: card,
                cap: MAX_ENUMERATION,
            });
        }
        Ok((0..card)
            .map(|i| self.element_at(i).expect("index within cardinality"))
            .collect())
    }
}

/// Ascending residues coprime to `n`. For `n = 1` this is `{0}`.
pub fn units_of(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

fn map_index(k: usize, bijective: bool, img: &[u8]) -> Option<u128> {
    if img.len() != k || img.iter().any(|&v| v == 0 || v as usize > k) {
        return None;
    }
    if !bijective {
        return Some(
            img.iter()
                .fold(0u128, |acc, &v| acc * k as u128 + (v as u128 - 1)),
        );
    }
    let mut seen = vec![false; k + 1];
    let mut rank = 0u128;
    for (pos, &v) in img.iter().enumerate() {
        if seen[v as usize] {
            return None;
        }
        let smaller = (1..v).filter(|&w| !seen[w as usize]).count() as u128;
        rank = rank * (k - pos) as u128 + smaller;
        seen[v as usize] = true;
    }
    Some(rank)
}

fn map_at(k: usize, bijective: bool, mut idx: u128) -> Vec<u8> {
    if !bijective {
        let mut out = vec![0u8; k];
        for slot in out.iter_mut().rev() {
            *slot = (idx % k as u128) as u8 + 1;
            idx /= k as u128;
        }
        return out;
    }
    let mut digits = vec![0usize; k];
    for (pos, slot) in digits.iter_mut().enumerate().rev() {
        let radix = (k - pos) as u128;
        *slot = (idx % radix) as usize;
        idx /= radix;
    }
    let mut pool: Vec<u8> = (1..=k as u8).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(Carrier::Zmod(5).enumerate().unwrap().len(), 5);
        assert_eq!(Carrier::LoopSet(5).enumerate().unwrap().len(), 6);
        let maps = Carrier::Maps {
            degree: 4,
            bijective: false,
        };
        assert_eq!(maps.cardinality().unwrap(), 256);
        let perms = Carrier::Maps {
            degree: 3,
            bijective: true,
        };
        assert_eq!(perms.cardinality().unwrap(), 6);
        assert_eq!(Carrier::Units(11).cardinality().unwrap(), 10);
        assert_eq!(
            Carrier::Unbounded(Unbounded::Integers).cardinality(),
            Err(Error::InfiniteCarrier)
        );
    }

    #[test]
    fn orders_round_trip() {
        let carriers = [
            Carrier::Zmod(7),
            Carrier::Units(20),
            Carrier::LoopSet(7),
            Carrier::Maps {
                degree: 3,
                bijective: false,
            },
            Carrier::Maps {
                degree: 4,
                bijective: true,
            },
            Carrier::MatrixOf {
                rows: 1,
                cols: 2,
                inner: Box::new(Carrier::Zmod(3)),
            },
            Carrier::TupleOf(vec![Carrier::Zmod(3), Carrier::LoopSet(5)]),
        ];
        for c in carriers {
            let all = c.enumerate().unwrap();
            let mut sorted = all.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
            for (i, e) in all.iter().enumerate() {
                assert_eq!(c.index_of(e), Some(i as u128), "{c:?} {e:?}");
                assert!(c.contains(e));
            }
        }
    }

    #[test]
    fn permutations_are_lexicographic() {
        let perms = Carrier::Maps {
            degree: 3,
            bijective: true,
        }
        .enumerate()
        .unwrap();
        let images: Vec<Vec<u8>> = perms
            .into_iter()
            .map(|e| match e {
                Element::Map(v) => v,
                _ => unreachable!(),
            })
            .collect();
        let mut sorted = images.clone();
        sorted.sort();
        assert_eq!(images, sorted);
        assert_eq!(images[0], vec![1, 2, 3]);
    }

    #[test]
    fn foreign_elements_rejected() {
        assert!(!Carrier::Zmod(5).contains(&Element::residue(1, 6)));
        assert!(!Carrier::Units(10).contains(&Element::residue(5, 10)));
        assert!(!Carrier::LoopSet(5).contains(&Element::point(6)));
        assert!(!Carrier::Maps {
            degree: 3,
            bijective: true
        }
        .contains(&Element::Map(vec![1, 1, 2])));
    }
}
