//! Tagged element values.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::arith::reduce;

/// A residue `a` of `Z_n`, printed as the interval `[0, a]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModInterval {
    value: u64,
    modulus: u64,
}

impl ModInterval {
    /// Reduces `value` into `0..modulus`. Panics on a zero modulus.
    pub fn new(value: i128, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            value: reduce(value, modulus),
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }
}

/// A point of the loop carrier `{e, 1, ..., n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LoopPoint {
    Identity,
    Point(u64),
}

impl LoopPoint {
    /// Position in the order `e, 1, ..., n`.
    pub fn rank(self) -> u64 {
        match self {
            LoopPoint::Identity => 0,
            LoopPoint::Point(i) => i,
        }
    }
}

/// Values of the unbounded nonnegative carriers. Only element-level
/// arithmetic is defined on these.
#[derive(Clone, Copy, Debug)]
pub enum Scalar {
    Int(u128),
    /// Numerator and denominator, kept in lowest terms.
    Rational(u128, u128),
    Real(f64),
}

impl Scalar {
    pub fn rational(num: u128, den: u128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd128(num, den);
        let (n, d) = (num / g, den / g);
        if d == 1 {
            Scalar::Int(n)
        } else {
            Scalar::Rational(n, d)
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Scalar::Int(a) => a as f64,
            Scalar::Rational(n, d) => n as f64 / d as f64,
            Scalar::Real(x) => x,
        }
    }

    fn key(&self) -> (u8, u128, u128, u64) {
        match *self {
            Scalar::Int(a) => (0, a, 1, 0),
            Scalar::Rational(n, d) => (1, n, d, 0),
            Scalar::Real(x) => (2, 0, 0, x.to_bits()),
        }
    }
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Real(a), Scalar::Real(b)) => a.total_cmp(b),
            _ => self.key().cmp(&other.key()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(a) => write!(f, "{a}"),
            Scalar::Rational(n, d) => write!(f, "{n}/{d}"),
            Scalar::Real(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<Element>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Element>) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix shape mismatch");
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix of residues mod `n` from row slices.
    pub fn from_rows(n: u64, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(move |&v| Element::residue(v, n)))
            .collect();
        Self::new(r, c, entries)
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.cols + j]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Element {
    Mod(ModInterval),
    Loop(LoopPoint),
    /// A self-map of `{1, ..., k}` given by its images.
    Map(Vec<u8>),
    Matrix(Matrix),
    Tuple(Vec<Element>),
    Scalar(Scalar),
}

impl Element {
    pub fn residue(value: i64, modulus: u64) -> Self {
        Element::Mod(ModInterval::new(value as i128, modulus))
    }

    pub fn point(i: u64) -> Self {
        Element::Loop(LoopPoint::Point(i))
    }

    pub fn loop_identity() -> Self {
        Element::Loop(LoopPoint::Identity)
    }

    pub fn tuple(parts: impl IntoIterator<Item = Element>) -> Self {
        Element::Tuple(parts.into_iter().collect())
    }

    pub fn int(v: u128) -> Self {
        Element::Scalar(Scalar::Int(v))
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Element::Mod(m) => Some(m.value()),
            _ => None,
        }
    }

    pub fn components(&self) -> &[Element] {
        match self {
            Element::Tuple(parts) => parts,
            other => core::slice::from_ref(other),
        }
    }

    /// Label under the interval convention when `interval` is set, plain
    /// otherwise. Loop identity is always `e`.
    pub fn label(&self, interval: bool) -> String {
        match self {
            Element::Mod(m) => wrap(m.value(), interval),
            Element::Loop(LoopPoint::Identity) => String::from("e"),
            Element::Loop(LoopPoint::Point(i)) => wrap(*i, interval),
            Element::Map(images) => {
                let parts: Vec<String> = images.iter().map(|v| format!("{v}")).collect();
                format!("({})", parts.join(","))
            }
            Element::Matrix(m) => {
                let rows: Vec<String> = (0..m.rows)
                    .map(|i| {
                        let cells: Vec<String> =
                            (0..m.cols).map(|j| m.get(i, j).label(interval)).collect();
                        cells.join(" ")
                    })
                    .collect();
                format!("[{}]", rows.join(";"))
            }
            Element::Tuple(parts) => {
                let cells: Vec<String> = parts.iter().map(|p| p.label(interval)).collect();
                format!("({})", cells.join(","))
            }
            Element::Scalar(s) => {
                if interval {
                    format!("[0,{s}]")
                } else {
                    format!("{s}")
                }
            }
        }
    }
}

fn wrap(v: u64, interval: bool) -> String {
    if interval {
        format!("[0,{v}]")
    } else {
        format!("{v}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label(true))
    }
}
