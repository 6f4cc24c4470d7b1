//! Small helpers on exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::superfield::Rat;

pub fn rat_i64(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Generalized binomial coefficient `w (w-1) ... (w-j+1) / j!`.
pub fn binomial(w: &Rat, j: u32) -> Rat {
    let mut acc = Rat::one();
    for r in 0..j {
        acc *= w - rat_int(r as i64);
        acc /= rat_int((r + 1) as i64);
    }
    acc
}

/// Exact integer power with negative exponents allowed on nonzero bases.
pub fn rat_pow_int(base: &Rat, e: i64) -> Result<Rat> {
    if e == 0 {
        return Ok(Rat::one());
    }
    if base.is_zero() {
        if e > 0 {
            return Ok(Rat::zero());
        }
        return Err(Error::UnsupportedPower("zero to a negative power".into()));
    }
    let mut acc = Rat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc = acc.recip();
    }
    Ok(acc)
}

fn exact_nth_root(x: &BigInt, q: u64) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(q as u32);
    let mut p = BigInt::one();
    for _ in 0..q {
        p *= &r;
    }
    (p == *x).then_some(r)
}

/// Exact rational power `base^(p/q)`; errors when no exact rational value
/// exists (negative base, or numerator/denominator without an exact q-th
/// root).
pub fn rat_pow(base: &Rat, w: &Rat) -> Result<Rat> {
    if w.is_integer() {
        let e = i64::try_from(w.to_integer())
            .map_err(|_| Error::UnsupportedPower("exponent too large".into()))?;
        return rat_pow_int(base, e);
    }
    if !base.is_positive() {
        return Err(Error::UnsupportedPower(format!(
            "fractional power of non-positive rational {base}"
        )));
    }
    let (p, q) = (w.numer().clone(), w.denom().clone());
    let q = u64::try_from(q.magnitude().to_u64_digits().first().copied().unwrap_or(0))
        .map_err(|_| Error::UnsupportedPower("exponent denominator too large".into()))?;
    let rn = exact_nth_root(base.numer(), q).ok_or_else(|| {
        Error::UnsupportedPower(format!("{} has no exact {q}-th root", base.numer()))
    })?;
    let rd = exact_nth_root(base.denom(), q).ok_or_else(|| {
        Error::UnsupportedPower(format!("{} has no exact {q}-th root", base.denom()))
    })?;
    let root = Rat::new(rn, rd);
    let e = i64::try_from(p).map_err(|_| Error::UnsupportedPower("exponent too large".into()))?;
    rat_pow_int(&root, e)
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for r in 2..=n as u64 {
        acc *= BigInt::from(r);
    }
    Rat::from(acc)
}

/// Parses "p" or "p/q" with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    t.parse::<Rat>().map_err(|_| Error::Invalid(format!("not a rational literal: `{t}`")))
}

pub fn is_int(r: &Rat, n: i64) -> bool {
    r.is_integer() && r.to_integer() == BigInt::from(n)
}

#[allow(dead_code)]
pub fn gcd_check(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}
