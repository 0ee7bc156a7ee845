//! Helpers around `num_rational::BigRational`: parsing, canonical strings,
//! simplest-rational search and cheap reduction of very large fractions.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// Shorthand constructor for small literals.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Canonical string: "p/q", or "p" when the denominator is one.
pub fn to_string(x: &BigRational) -> String {
    x.to_string()
}

/// Parses "p/q", "p", or a decimal such as "-0.001" / "1e-3".
pub fn parse(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("cannot parse rational from {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Domain(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Ok(p) = s.parse::<BigInt>() {
        return Ok(BigRational::from_integer(p));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{whole}{frac}");
    let mut value = BigRational::from_integer(joined.parse::<BigInt>().ok()?);
    let shift = exp - frac.len() as i64;
    let ten = BigInt::from(10u32);
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= BigRational::from_integer(scale);
    } else {
        value /= BigRational::from_integer(scale);
    }
    Some(if neg { -value } else { value })
}

/// The rational with the smallest denominator (then smallest magnitude) in
/// the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_positive(&-hi, &-lo);
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &BigRational, hi: &BigRational) -> BigRational {
    // Continued-fraction descent, collected iteratively then folded back up.
    let mut terms: Vec<BigInt> = Vec::new();
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let last = loop {
        let fl = lo.floor();
        if fl == lo {
            break fl;
        }
        let next = &fl + BigRational::one();
        if next <= hi {
            break next;
        }
        terms.push(fl.to_integer());
        let (a, b) = ((&hi - &fl).recip(), (&lo - &fl).recip());
        lo = a;
        hi = b;
    };
    terms
        .into_iter()
        .rev()
        .fold(last, |acc, t| BigRational::from_integer(t) + acc.recip())
}

/// Builds `num/den` in lowest terms when every prime shared by the two is
/// known to divide `hint`. Avoids a full gcd on multi-megabit operands.
///
/// The caller is responsible for the structural argument that justifies the
/// hint; in debug builds small cases are cross-checked against a real gcd.
pub fn reduce_with_hint(num: BigInt, den: BigInt, hint: &BigInt) -> BigRational {
    assert!(!den.is_zero(), "zero denominator");
    let (mut num, mut den) = if den.is_negative() { (-num, -den) } else { (num, den) };
    if num.is_zero() {
        return BigRational::zero();
    }
    let hint = hint.abs();
    if !hint.is_zero() && !hint.is_one() {
        loop {
            let h = hint.gcd(&num.mod_floor(&hint)).gcd(&den.mod_floor(&hint));
            if h.is_one() {
                break;
            }
            num /= &h;
            den /= &h;
        }
    }
    debug_assert!(num.bits() > 4096 || num.gcd(&den).is_one(), "hint missed a common factor");
    BigRational::new_raw(num, den)
}

/// Floating estimate of `num/den` that does not overflow for huge operands.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let (mn, en) = top_bits(num);
    let (md, ed) = top_bits(den);
    let v = mn / md;
    let e = en - ed;
    if e > 2000 {
        return if v > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    if e < -2000 {
        return 0.0;
    }
    v * 2f64.powi(e as i32)
}

fn top_bits(x: &BigInt) -> (f64, i64) {
    let bits = x.bits() as i64;
    let shift = (bits - 64).max(0);
    let top = x.magnitude() >> shift as usize;
    let m = top.to_f64().unwrap_or(0.0);
    (if x.sign() == Sign::Minus { -m } else { m }, shift)
}

pub fn to_f64(x: &BigRational) -> f64 {
    ratio_to_f64(x.numer(), x.denom())
}

/// `|num/den - target| <= eps` decided by integer cross-multiplication, so
/// multi-megabit fractions never go through a gcd.
pub fn within_parts(num: &BigInt, den: &BigInt, target: &BigRational, eps: &BigRational) -> bool {
    assert!(!den.is_zero(), "zero denominator");
    let diff = num * target.denom() - target.numer() * den;
    diff.abs() * eps.denom() <= eps.numer() * target.denom() * den.abs()
}

pub fn within(x: &BigRational, target: &BigRational, eps: &BigRational) -> bool {
    within_parts(x.numer(), x.denom(), target, eps)
}

/// Exact rational cube root, if `x` is a cube of a rational.
pub fn rational_cbrt(x: &BigRational) -> Option<BigRational> {
    let n = exact_cbrt(x.numer())?;
    let d = exact_cbrt(x.denom())?;
    Some(BigRational::new(n, d))
}

fn exact_cbrt(x: &BigInt) -> Option<BigInt> {
    let r = x.cbrt();
    (&r * &r * &r == *x).then_some(r)
}

/// Serde adaptor: rationals as canonical "p/q" strings.
pub mod serde_str {
    use super::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adaptor for `Vec<BigRational>`.
pub mod serde_vec {
    use super::BigRational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adaptor for `Option<BigRational>`.
pub mod serde_opt {
    use super::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        v.map(|s| super::parse(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}
