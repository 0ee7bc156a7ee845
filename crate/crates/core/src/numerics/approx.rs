//! Verified real enclosures. An `ApproxReal` is a closed interval with
//! dyadic rational endpoints; every operation rounds outward, so the true
//! value of any expression built from exact inputs stays inside.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{self, BigRational};
use crate::error::{domain, Result};

pub const DEFAULT_PRECISION: u32 = 128;

/// Precision from `HCGL_PRECISION_BITS`, falling back to 128 bits.
pub fn default_precision() -> u32 {
    std::env::var("HCGL_PRECISION_BITS")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&p| p >= 16)
        .unwrap_or(DEFAULT_PRECISION)
}

#[derive(Clone, PartialEq, Eq)]
pub struct ApproxReal {
    lo: BigRational,
    hi: BigRational,
    prec: u32,
}

impl fmt::Debug for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e} ± {:.3e}", self.mid_f64(), rational::to_f64(&self.radius()))
    }
}

impl fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Endpoints as exact `p/q` strings.
impl serde::Serialize for ApproxReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ApproxReal", 3)?;
        st.serialize_field("lo", &rational::to_string(&self.lo))?;
        st.serialize_field("hi", &rational::to_string(&self.hi))?;
        st.serialize_field("precision", &self.prec)?;
        st.end()
    }
}

fn log2_estimate(x: &BigRational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k as usize
}

/// `x` rounded down (`up == false`) or up to about `prec` significant bits.
fn round(x: &BigRational, prec: u32, up: bool) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    if x.numer().bits() + x.denom().bits() <= 2 * prec as u64 {
        return x.clone();
    }
    let k = prec as i64 - log2_estimate(x);
    let (n, d) = if k >= 0 {
        (x.numer() << k as usize, x.denom().clone())
    } else {
        (x.numer().clone(), x.denom() << (-k) as usize)
    };
    let m = if up { n.div_ceil(&d) } else { n.div_floor(&d) };
    if k >= 0 {
        BigRational::new(m, pow2(k as u64))
    } else {
        BigRational::from_integer(m << (-k) as usize)
    }
}

impl ApproxReal {
    /// The exact point `x`, no rounding.
    pub fn exact(x: BigRational, prec: u32) -> Self {
        ApproxReal { lo: x.clone(), hi: x, prec }
    }

    /// Outward-rounded enclosure of `x`.
    pub fn from_rational(x: &BigRational, prec: u32) -> Self {
        ApproxReal { lo: round(x, prec, false), hi: round(x, prec, true), prec }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::exact(rational::int(v), prec)
    }

    /// Interval from explicit endpoints, rounded outward.
    pub fn from_bounds(lo: &BigRational, hi: &BigRational, prec: u32) -> Self {
        assert!(lo <= hi, "inverted interval");
        ApproxReal { lo: round(lo, prec, false), hi: round(hi, prec, true), prec }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn radius(&self) -> BigRational {
        (&self.hi - &self.lo) / rational::int(2)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid_f64(&self) -> f64 {
        rational::to_f64(&self.midpoint())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// True when `other` lies entirely inside `self`.
    pub fn encloses(&self, other: &ApproxReal) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// `Some(ordering)` once the interval is separated from `x`.
    pub fn cmp_rational(&self, x: &BigRational) -> Option<Ordering> {
        if &self.lo > x {
            Some(Ordering::Greater)
        } else if &self.hi < x {
            Some(Ordering::Less)
        } else if self.lo == self.hi {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Upper bound of |x| over the interval.
    pub fn mag(&self) -> BigRational {
        let (a, b) = (self.lo.abs(), self.hi.abs());
        if a > b { a } else { b }
    }

    pub fn with_precision(mut self, prec: u32) -> Self {
        self.prec = prec;
        self
    }

    fn make(lo: BigRational, hi: BigRational, prec: u32) -> Self {
        ApproxReal { lo: round(&lo, prec, false), hi: round(&hi, prec, true), prec }
    }

    pub fn neg(&self) -> Self {
        ApproxReal { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        Self::make(&self.lo + &o.lo, &self.hi + &o.hi, p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec.max(o.prec);
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::make(lo, hi, p)
    }

    pub fn mul_rational(&self, x: &BigRational) -> Self {
        self.mul(&Self::exact(x.clone(), self.prec))
    }

    pub fn add_rational(&self, x: &BigRational) -> Self {
        self.add(&Self::exact(x.clone(), self.prec))
    }

    pub fn sqr(&self) -> Self {
        let m = self.mag();
        let lo = if self.lo.is_negative() && self.hi.is_positive() {
            BigRational::zero()
        } else {
            let (a, b) = (self.lo.abs(), self.hi.abs());
            let mn = if a < b { a } else { b };
            &mn * &mn
        };
        Self::make(lo, &m * &m, self.prec)
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::exact(BigRational::one(), self.prec);
        let mut base = self.clone();
        let mut e = n;
        if e.is_multiple_of(2) {
            // Even powers via squaring keep the lower endpoint non-negative.
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(&base);
                }
                e >>= 1;
                if e > 0 {
                    base = base.sqr();
                }
            }
            return acc;
        }
        for _ in 0..n {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn recip(&self) -> Result<Self> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return domain("reciprocal of an interval containing zero");
        }
        Ok(Self::make(self.hi.recip(), self.lo.recip(), self.prec))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.hi.is_negative() {
            return domain("square root of a negative interval");
        }
        let lo = if self.lo.is_positive() {
            sqrt_bound(&self.lo, self.prec, false)
        } else {
            BigRational::zero()
        };
        let hi = sqrt_bound(&self.hi, self.prec, true);
        Ok(ApproxReal { lo, hi, prec: self.prec })
    }

    /// Real cube root (odd, monotone).
    pub fn cbrt(&self) -> Self {
        ApproxReal {
            lo: cbrt_bound(&self.lo, self.prec, false),
            hi: cbrt_bound(&self.hi, self.prec, true),
            prec: self.prec,
        }
    }

    /// Interval hull.
    pub fn hull(&self, o: &Self) -> Self {
        ApproxReal {
            lo: if self.lo < o.lo { self.lo.clone() } else { o.lo.clone() },
            hi: if self.hi > o.hi { self.hi.clone() } else { o.hi.clone() },
            prec: self.prec.max(o.prec),
        }
    }

    /// Widens the interval symmetrically by `r >= 0`.
    pub fn widen(&self, r: &BigRational) -> Self {
        Self::make(&self.lo - r, &self.hi + r, self.prec)
    }

    fn clamp_unit(self) -> Self {
        let one = BigRational::one();
        let lo = if self.lo < -&one { -&one } else { self.lo };
        let hi = if self.hi > one { one } else { self.hi };
        ApproxReal { lo, hi, prec: self.prec }
    }

    pub fn sin(&self) -> Self {
        trig(self, false)
    }

    pub fn cos(&self) -> Self {
        trig(self, true)
    }

    /// Arctangent, monotone so evaluated at the endpoints.
    pub fn atan(&self) -> Self {
        let lo = atan_point(&self.lo, self.prec);
        let hi = atan_point(&self.hi, self.prec);
        ApproxReal { lo: lo.lo, hi: hi.hi, prec: self.prec }
    }
}

/// floor/ceil of sqrt(x) on a dyadic grid fine enough for `prec` bits.
fn sqrt_bound(x: &BigRational, prec: u32, up: bool) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let k = (prec as i64 + 2 - log2_estimate(x) / 2).max(0) as u64;
    let scaled = (x.numer() << (2 * k) as usize).div_floor(x.denom());
    let s = scaled.sqrt();
    let exact = &s * &s == scaled && (&scaled * x.denom()) == (x.numer() << (2 * k) as usize);
    let s = if up && !exact { s + 1 } else { s };
    BigRational::new(s, pow2(k))
}

fn cbrt_bound(x: &BigRational, prec: u32, up: bool) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    if x.is_negative() {
        return -cbrt_bound(&-x, prec, !up);
    }
    let k = (prec as i64 + 2 - log2_estimate(x) / 3).max(0) as u64;
    let shifted = x.numer() << (3 * k) as usize;
    let scaled = shifted.div_floor(x.denom());
    let s = scaled.cbrt();
    let exact = &s * &s * &s == scaled && &scaled * x.denom() == shifted;
    let s = if up && !exact { s + 1 } else { s };
    BigRational::new(s, pow2(k))
}

fn guard(prec: u32) -> u32 {
    prec + 32
}

/// 2^-bits as a rational.
fn eps(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), pow2(bits as u64))
}

/// Alternating series sum_{j>=0} (-1)^j x^{2j+1} / (2j+1) for |x| <= 1/8.
fn atan_series(x: &ApproxReal, prec: u32) -> ApproxReal {
    let x2 = x.sqr();
    let mut power = x.clone();
    let mut sum = ApproxReal::exact(BigRational::zero(), prec);
    let target = eps(prec + 4);
    let mut j: i64 = 0;
    loop {
        let term = power.mul_rational(&rational::rat(1, 2 * j + 1));
        sum = if j % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        power = power.mul(&x2);
        let next = power.mag() / rational::int(2 * j + 3);
        if next < target {
            return sum.widen(&next);
        }
        j += 1;
    }
}

/// pi = 16 atan(1/5) - 4 atan(1/239), memoized per precision.
pub fn pi(prec: u32) -> ApproxReal {
    static CACHE: Mutex<BTreeMap<u32, ApproxReal>> = Mutex::new(BTreeMap::new());
    if let Some(v) = CACHE.lock().expect("pi cache").get(&prec) {
        return v.clone();
    }
    let v = pi_machin(prec);
    CACHE.lock().expect("pi cache").insert(prec, v.clone());
    v
}

fn pi_machin(prec: u32) -> ApproxReal {
    let p = guard(prec);
    let a = atan_series(&ApproxReal::exact(rational::rat(1, 5), p), p);
    let b = atan_series(&ApproxReal::exact(rational::rat(1, 239), p), p);
    a.mul_rational(&rational::int(16))
        .sub(&b.mul_rational(&rational::int(4)))
        .with_precision(prec)
}

fn atan_point(x: &BigRational, prec: u32) -> ApproxReal {
    let p = guard(prec);
    if x.is_zero() {
        return ApproxReal::exact(BigRational::zero(), prec);
    }
    if x.is_negative() {
        return atan_point(&-x, prec).neg();
    }
    if x > &BigRational::one() {
        let half_pi = pi(p).mul_rational(&rational::rat(1, 2));
        return half_pi.sub(&atan_point(&x.recip(), p)).with_precision(prec);
    }
    // atan(y) = 2 atan(y / (1 + sqrt(1 + y^2))); three halvings bring 1 to ~0.1.
    let mut y = ApproxReal::exact(x.clone(), p);
    let one = BigRational::one();
    for _ in 0..3 {
        let denom = y.sqr().add_rational(&one).sqrt().expect("positive").add_rational(&one);
        y = y.div(&denom).expect("positive denominator");
    }
    atan_series(&y, p)
        .mul_rational(&rational::int(8))
        .with_precision(prec)
}

/// Taylor series for sin (or cos) at a reduced interval argument |x| <= 4.
fn trig_series(x: &ApproxReal, cosine: bool, prec: u32) -> ApproxReal {
    let x2 = x.sqr();
    let mut term = if cosine { ApproxReal::exact(BigRational::one(), prec) } else { x.clone() };
    let mut k: i64 = if cosine { 0 } else { 1 };
    let mut sum = ApproxReal::exact(BigRational::zero(), prec);
    let target = eps(prec + 4);
    let mut sign = true;
    loop {
        sum = if sign { sum.add(&term) } else { sum.sub(&term) };
        term = term.mul(&x2).mul_rational(&rational::rat(1, (k + 1) * (k + 2)));
        k += 2;
        sign = !sign;
        // Once terms decrease, the tail is bounded by the first omitted term.
        let next = term.mag();
        if next < target && x2.mag() < rational::int((k + 1) * (k + 2)) {
            return sum.widen(&next);
        }
    }
}

fn trig(x: &ApproxReal, cosine: bool) -> ApproxReal {
    let p = guard(x.prec);
    let m = x.midpoint();
    let r = x.radius();
    let approx_turns = rational::to_f64(&m) / std::f64::consts::TAU;
    let k = approx_turns.round();
    let reduced = if k == 0.0 {
        ApproxReal::exact(m, p)
    } else {
        let two_pi = pi(p + 16).mul_rational(&rational::int(2));
        let k = BigRational::from_integer(BigInt::from(k as i64));
        ApproxReal::exact(m, p).sub(&two_pi.mul_rational(&k))
    };
    // Lipschitz constant 1 covers the input radius.
    trig_series(&reduced, cosine, p)
        .widen(&r)
        .clamp_unit()
        .with_precision(x.prec)
}

/// theta in (0, pi/2) with cos^2 theta = -1/(4 lambda), for lambda < -1/4.
pub fn acos_lambda(lambda: &BigRational, prec: u32) -> Result<ApproxReal> {
    if lambda >= &rational::rat(-1, 4) {
        return domain(format!("acos_lambda needs lambda < -1/4, got {lambda}"));
    }
    // tan^2 theta = 1/cos^2 theta - 1 = -4 lambda - 1.
    let t2 = -rational::int(4) * lambda - BigRational::one();
    let t = ApproxReal::exact(t2, guard(prec)).sqrt()?;
    Ok(t.atan().with_precision(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    #[test]
    fn pi_digits() {
        let p = pi(200);
        let approx = rational::parse("3.14159265358979323846264338327950288419716939937510").unwrap();
        assert!(p.widen(&eps(160)).contains(&approx));
        assert!(p.radius() < eps(190));
    }

    #[test]
    fn sqrt_and_cbrt_are_tight() {
        let s = ApproxReal::exact(rational::int(2), 128).sqrt().unwrap();
        assert!(s.sqr().contains(&rational::int(2)));
        assert!(s.width() < eps(120));
        let c = ApproxReal::exact(rat(3, 10), 128).cbrt();
        assert!(c.powi(3).contains(&rat(3, 10)));
        assert!(c.radius() < eps(100));
        let e = ApproxReal::exact(rat(1, 8), 64).cbrt();
        assert_eq!(e.lo(), &rat(1, 2));
        assert_eq!(e.hi(), &rat(1, 2));
    }

    #[test]
    fn special_angles() {
        let third = pi(128).mul_rational(&rat(1, 3));
        let th = acos_lambda(&rational::int(-1), 128).unwrap();
        assert!(th.sub(&third).mag() < eps(120));
        let c = th.cos();
        assert!(c.contains(&rat(1, 2)), "{c:?}");
        let s = pi(128).mul_rational(&rat(1, 6)).sin();
        assert!(s.contains(&rat(1, 2)));
        assert!(acos_lambda(&rat(-1, 4), 64).is_err());
    }

    #[test]
    fn large_arguments_reduce() {
        let x = ApproxReal::exact(rational::int(100), 128);
        let s = x.sin();
        assert!((s.mid_f64() - 100f64.sin()).abs() < 1e-12);
        assert!(s.radius() < eps(100));
    }
}
