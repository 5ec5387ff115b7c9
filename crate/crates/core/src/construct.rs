//! Builders for every structure family, with parameter validation.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::{gcd, reduce};
use crate::carrier::{Carrier, Unbounded};
use crate::error::{Error, Result};
use crate::magma::ClassLabel;
use crate::rule::OpRule;
use crate::structure::{Flavor, Structure};

/// Degree guard for transformation and permutation structures.
pub const MAX_DEGREE: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemigroupOp {
    Add,
    Mul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixMode {
    Entrywise,
    Mul,
}

pub fn zn_semigroup(n: u64, op: SemigroupOp, flavor: Flavor) -> Result<Structure> {
    if n == 0 {
        return Err(Error::BadModulus(n));
    }
    let (rule, tag, claim) = match op {
        SemigroupOp::Add => (OpRule::AddMod, "add", ClassLabel::Group),
        SemigroupOp::Mul => (OpRule::MulMod, "mul", ClassLabel::Monoid),
    };
    Ok(Structure::single(format!("Z_{n}({tag})"), Carrier::Zmod(n), rule, flavor, claim))
}

/// `Z_n(t, u)` with `a * b = t a + u b (mod n)`.
pub fn zn_groupoid(n: u64, t: i64, u: i64, flavor: Flavor) -> Result<Structure> {
    if n < 2 {
        return Err(Error::BadModulus(n));
    }
    let (t, u) = (reduce(t as i128, n), reduce(u as i128, n));
    Ok(Structure::single(
        format!("Z_{n}({t},{u})"),
        Carrier::Zmod(n),
        OpRule::GroupoidPair { t, u },
        flavor,
        ClassLabel::Groupoid,
    ))
}

/// `zn_groupoid` for coefficients given as fractions `num / den`. Anything
/// that is not an integer is rejected, since it would not stay in `Z_n`.
pub fn zn_groupoid_ratio(n: u64, t: (i64, u64), u: (i64, u64), flavor: Flavor) -> Result<Structure> {
    let whole = |(num, den): (i64, u64)| -> Result<i64> {
        if den == 0 || num.unsigned_abs() % den != 0 {
            Err(Error::NonResiduePair)
        } else {
            Ok(num / den as i64)
        }
    };
    zn_groupoid(n, whole(t)?, whole(u)?, flavor)
}

/// The loop `L_n(m)` on `{e, 1, ..., n}`.
pub fn new_loop(n: u64, m: u64, flavor: Flavor) -> Result<Structure> {
    check_loop_params(n, m)?;
    Ok(Structure::single(
        format!("L_{n}({m})"),
        Carrier::LoopSet(n),
        OpRule::LoopRule { m },
        flavor,
        ClassLabel::Loop,
    ))
}

/// The loop formula on `{e, 1, ..., n}` with only `gcd(m, n) = 1` required.
/// When `gcd(m - 1, n) > 1` the table is not latin, so the result is merely
/// a groupoid with identity.
pub fn formula_loop(n: u64, m: u64, flavor: Flavor) -> Result<Structure> {
    if n.is_multiple_of(2) || n <= 3 || m <= 1 || m >= n || gcd(m, n) != 1 {
        return Err(Error::BadLoopParams(format!("L_{n}({m}) is outside the formula's domain")));
    }
    if check_loop_params(n, m).is_ok() {
        return new_loop(n, m, flavor);
    }
    Ok(Structure::single(
        format!("L_{n}({m})"),
        Carrier::LoopSet(n),
        OpRule::LoopRule { m },
        flavor,
        ClassLabel::Groupoid,
    ))
}

pub fn check_loop_params(n: u64, m: u64) -> Result<()> {
    let bad = |s: String| Err(Error::BadLoopParams(s));
    if n.is_multiple_of(2) || n <= 3 {
        return bad(format!("n = {n} must be odd and greater than 3"));
    }
    if m <= 1 || m >= n {
        return bad(format!("m = {m} must satisfy 1 < m < {n}"));
    }
    if gcd(m, n) != 1 {
        return bad(format!("gcd(m, n) = gcd({m}, {n}) = {} is not 1", gcd(m, n)));
    }
    if gcd(m - 1, n) != 1 {
        return bad(format!("gcd(m - 1, n) = gcd({}, {n}) = {} is not 1", m - 1, gcd(m - 1, n)));
    }
    Ok(())
}

/// Every valid `m` for `L_n(m)`.
pub fn valid_loop_params(n: u64) -> Vec<u64> {
    (2..n).filter(|&m| check_loop_params(n, m).is_ok()).collect()
}

pub fn zn_group(n: u64, flavor: Flavor) -> Result<Structure> {
    if n == 0 {
        return Err(Error::BadModulus(n));
    }
    Ok(Structure::single(format!("Z_{n}(add)"), Carrier::Zmod(n), OpRule::AddMod, flavor, ClassLabel::Group))
}

/// Units of `Z_n` under multiplication; `Z_p \ {0}` for prime `p`.
pub fn units_group(n: u64, flavor: Flavor) -> Result<Structure> {
    if n < 2 {
        return Err(Error::BadModulus(n));
    }
    Ok(Structure::single(format!("U_{n}"), Carrier::Units(n), OpRule::MulMod, flavor, ClassLabel::Group))
}

/// Self-maps of `{1, ..., k}` under composition: all maps, or only the
/// bijections.
pub fn sym_structure(k: usize, bijective: bool, flavor: Flavor) -> Result<Structure> {
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: k,
            max: MAX_DEGREE,
        });
    }
    let (name, claim) = if bijective {
        (format!("S_{k}"), ClassLabel::Group)
    } else {
        (format!("T_{k}"), ClassLabel::Monoid)
    };
    Ok(Structure::single(
        name,
        Carrier::Maps { degree: k, bijective },
        OpRule::Compose,
        flavor,
        claim,
    ))
}

/// `r x c` matrices over a one-component base, either with the base rule
/// applied cellwise or under matrix multiplication mod `n`.
pub fn matrix_structure(r: usize, c: usize, base: &Structure, mode: MatrixMode) -> Result<Structure> {
    let comp = match base.components() {
        [comp] => comp,
        parts => {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: parts.len(),
            })
        }
    };
    let (rule, claim) = match mode {
        MatrixMode::Entrywise => (OpRule::EntrywiseOf(Box::new(comp.rule.clone())), ClassLabel::Groupoid),
        MatrixMode::Mul => {
            if !matches!(comp.carrier, Carrier::Zmod(_)) {
                return Err(Error::UnsupportedBase(String::from(base.name())));
            }
            if r != c {
                return Err(Error::NonSquareMul { rows: r, cols: c });
            }
            (OpRule::MatrixMulMod, ClassLabel::Monoid)
        }
    };
    let carrier = Carrier::MatrixOf {
        rows: r,
        cols: c,
        inner: Box::new(comp.carrier.clone()),
    };
    let tag = match mode {
        MatrixMode::Entrywise => "entrywise",
        MatrixMode::Mul => "mul",
    };
    Ok(Structure::single(
        format!("M_{r}x{c}[{}]({tag})", base.name()),
        carrier,
        rule,
        comp.flavor,
        claim,
    ))
}

/// Componentwise product. Products among the inputs are flattened.
pub fn product(parts: &[Structure]) -> Result<Structure> {
    let components: Vec<_> = parts.iter().flat_map(|s| s.components().iter().cloned()).collect();
    if components.len() < 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: components.len(),
        });
    }
    let claims = parts.iter().flat_map(|s| s.kind_claims().iter().copied()).collect();
    let names: Vec<&str> = parts.iter().map(Structure::name).collect();
    Ok(Structure::with_claims(names.join(" x "), components, claims))
}

/// Addition or multiplication on an unbounded nonnegative carrier. Only
/// element-level `apply` is available.
pub fn unbounded_semigroup(kind: Unbounded, op: SemigroupOp, flavor: Flavor) -> Structure {
    let rule = match op {
        SemigroupOp::Add => OpRule::AddMod,
        SemigroupOp::Mul => OpRule::MulMod,
    };
    Structure::single(format!("{kind:?}({op:?})"), Carrier::Unbounded(kind), rule, flavor, ClassLabel::Semigroup)
}

pub fn unbounded_groupoid(kind: Unbounded, t: u64, u: u64, flavor: Flavor) -> Structure {
    Structure::single(
        format!("{kind:?}({t},{u})"),
        Carrier::Unbounded(kind),
        OpRule::GroupoidPair { t, u },
        flavor,
        ClassLabel::Groupoid,
    )
}
