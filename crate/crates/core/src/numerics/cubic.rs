//! The field Q(t) with t^3 = r for a fixed positive rational radicand r.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::approx::ApproxReal;
use super::rational::{self, BigRational};
use crate::error::{Error, Result};

/// `a + b t + c t^2` with `t^3 = radicand`.
///
/// When the radicand is the cube of a rational `s`, the `t` and `t^2` slots are
/// folded into `a` on construction, so equality stays componentwise.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "CubicRepr", into = "CubicRepr")]
pub struct CubicNumber {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    radicand: BigRational,
    root: Option<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct CubicRepr {
    #[serde(with = "rational::serde_str")]
    a: BigRational,
    #[serde(with = "rational::serde_str")]
    b: BigRational,
    #[serde(with = "rational::serde_str")]
    c: BigRational,
    #[serde(with = "rational::serde_str")]
    radicand: BigRational,
}

impl TryFrom<CubicRepr> for CubicNumber {
    type Error = Error;
    fn try_from(r: CubicRepr) -> Result<Self> {
        CubicNumber::new(r.a, r.b, r.c, r.radicand)
    }
}

impl From<CubicNumber> for CubicRepr {
    fn from(x: CubicNumber) -> Self {
        CubicRepr { a: x.a, b: x.b, c: x.c, radicand: x.radicand }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CubicValue {
    Number(CubicNumber),
    Bool(bool),
}

impl CubicNumber {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, radicand: BigRational) -> Result<Self> {
        if !radicand.is_positive() {
            return Err(Error::Domain(format!("radicand must be positive, got {radicand}")));
        }
        let root = rational::rational_cbrt(&radicand);
        Ok(Self::assemble(a, b, c, radicand, root))
    }

    fn assemble(
        a: BigRational,
        b: BigRational,
        c: BigRational,
        radicand: BigRational,
        root: Option<BigRational>,
    ) -> Self {
        match &root {
            Some(s) if !(b.is_zero() && c.is_zero()) => {
                let a = a + &b * s + &c * s * s;
                CubicNumber { a, b: BigRational::zero(), c: BigRational::zero(), radicand, root }
            }
            _ => CubicNumber { a, b, c, radicand, root },
        }
    }

    fn sibling(&self, a: BigRational, b: BigRational, c: BigRational) -> Self {
        Self::assemble(a, b, c, self.radicand.clone(), self.root.clone())
    }

    pub fn from_rational(x: BigRational, radicand: &BigRational) -> Result<Self> {
        Self::new(x, BigRational::zero(), BigRational::zero(), radicand.clone())
    }

    /// The generator t itself.
    pub fn t(radicand: &BigRational) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), BigRational::zero(), radicand.clone())
    }

    pub fn rational(&self, x: BigRational) -> Self {
        self.sibling(x, BigRational::zero(), BigRational::zero())
    }

    pub fn zero_like(&self) -> Self {
        self.rational(BigRational::zero())
    }

    pub fn one_like(&self) -> Self {
        self.rational(BigRational::one())
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// The value as a rational, when it has no t or t^2 part.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.b.is_zero() && self.c.is_zero()).then_some(&self.a)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.radicand != o.radicand {
            return Err(Error::Composition(format!(
                "radicand mismatch: {} vs {}",
                self.radicand, o.radicand
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.sibling(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.sibling(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let r = &self.radicand;
        let (a0, a1, a2) = (&self.a, &self.b, &self.c);
        let (b0, b1, b2) = (&o.a, &o.b, &o.c);
        let c0 = a0 * b0 + r * (a1 * b2 + a2 * b1);
        let c1 = a0 * b1 + a1 * b0 + r * (a2 * b2);
        let c2 = a0 * b2 + a1 * b1 + a2 * b0;
        Ok(self.sibling(c0, c1, c2))
    }

    /// Field norm N(x) = a^3 + r b^3 + r^2 c^3 - 3 r a b c.
    pub fn norm(&self) -> BigRational {
        let r = &self.radicand;
        let (a, b, c) = (&self.a, &self.b, &self.c);
        a * a * a + r * (b * b * b) + r * r * (c * c * c) - rational::int(3) * r * a * b * c
    }

    /// Exact inverse through the norm.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = &self.radicand;
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let n = self.norm();
        debug_assert!(!n.is_zero());
        let i0 = (a * a - r * b * c) / &n;
        let i1 = (r * c * c - a * b) / &n;
        let i2 = (b * b - a * c) / &n;
        Ok(self.sibling(i0, i1, i2))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        self.try_mul(&o.inverse()?)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        self.sibling(&self.a * k, &self.b * k, &self.c * k)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Verified enclosure of the real value.
    pub fn to_approx(&self, prec: u32) -> ApproxReal {
        let t = ApproxReal::exact(self.radicand.clone(), prec + 16).cbrt();
        let v = ApproxReal::exact(self.a.clone(), prec + 16)
            .add(&t.mul_rational(&self.b))
            .add(&t.sqr().mul_rational(&self.c));
        v.with_precision(prec)
    }

    /// Exact sign, refining the enclosure until it separates from zero.
    pub fn signum(&self) -> Ordering {
        if let Some(q) = self.as_rational() {
            return q.cmp(&BigRational::zero());
        }
        let mut prec = 64;
        loop {
            let v = self.to_approx(prec);
            if let Some(ord) = v.cmp_rational(&BigRational::zero()) {
                return ord;
            }
            // A nonzero element of the field is a nonzero real, so this ends.
            prec *= 2;
            assert!(prec < 1 << 22, "sign refinement did not converge");
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn cmp_value(&self, o: &Self) -> Result<Ordering> {
        Ok(self.try_sub(o)?.signum())
    }

    pub fn to_f64(&self) -> f64 {
        self.to_approx(64).mid_f64()
    }
}

/// The `cubic_arith` entry point: one binary (or unary) field operation.
pub fn cubic_arith(x: &CubicNumber, y: &CubicNumber, op: CubicOp) -> Result<CubicValue> {
    Ok(match op {
        CubicOp::Add => CubicValue::Number(x.try_add(y)?),
        CubicOp::Sub => CubicValue::Number(x.try_sub(y)?),
        CubicOp::Mul => CubicValue::Number(x.try_mul(y)?),
        CubicOp::Div => CubicValue::Number(x.try_div(y)?),
        CubicOp::Neg => CubicValue::Number(-x),
        CubicOp::Eq => {
            x.check(y)?;
            CubicValue::Bool(x == y)
        }
    })
}

impl PartialEq for CubicNumber {
    fn eq(&self, o: &Self) -> bool {
        self.radicand == o.radicand && self.a == o.a && self.b == o.b && self.c == o.c
    }
}

impl Eq for CubicNumber {}

impl fmt::Debug for CubicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})t + ({})t^2 [t^3={}]", self.a, self.b, self.c, self.radicand)
    }
}

impl fmt::Display for CubicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => fmt::Debug::fmt(self, f),
        }
    }
}

// Operator forms panic on radicand mismatch; library code only combines
// numbers derived from one radicand. Use the `try_*` forms at API edges.
impl Add for &CubicNumber {
    type Output = CubicNumber;
    fn add(self, o: &CubicNumber) -> CubicNumber {
        self.try_add(o).expect("radicand mismatch")
    }
}

impl Sub for &CubicNumber {
    type Output = CubicNumber;
    fn sub(self, o: &CubicNumber) -> CubicNumber {
        self.try_sub(o).expect("radicand mismatch")
    }
}

impl Mul for &CubicNumber {
    type Output = CubicNumber;
    fn mul(self, o: &CubicNumber) -> CubicNumber {
        self.try_mul(o).expect("radicand mismatch")
    }
}

impl Neg for &CubicNumber {
    type Output = CubicNumber;
    fn neg(self) -> CubicNumber {
        self.sibling(-&self.a, -&self.b, -&self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    fn cn(a: BigRational, b: BigRational, c: BigRational, r: BigRational) -> CubicNumber {
        CubicNumber::new(a, b, c, r).unwrap()
    }

    #[test]
    fn t_times_t_squared_is_radicand() {
        let r = rat(3, 10);
        let t = CubicNumber::t(&r).unwrap();
        let t2 = &t * &t;
        assert_eq!(&t * &t2, t.rational(r.clone()));
    }

    #[test]
    fn telescoping_product() {
        let r = rat(2, 7);
        let z = BigRational::zero();
        let x = cn(int(1), int(1), z.clone(), r.clone());
        let y = cn(int(1), int(-1), int(1), r.clone());
        assert_eq!(&x * &y, x.rational(int(1) + r));
    }

    #[test]
    fn inverse_of_t() {
        let r = rat(1, 2);
        let t = CubicNumber::t(&r).unwrap();
        let inv = t.one_like().try_div(&t).unwrap();
        let z = BigRational::zero();
        assert_eq!(inv, cn(z.clone(), z, int(2), r));
    }

    #[test]
    fn radicand_mismatch_is_composition_error() {
        let a = CubicNumber::t(&rat(1, 2)).unwrap();
        let b = CubicNumber::t(&rat(1, 3)).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::Composition(_))));
        assert!(matches!(cubic_arith(&a, &b, CubicOp::Eq), Err(Error::Composition(_))));
        assert!(matches!(a.try_div(&a.zero_like()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn approximations() {
        let one = CubicNumber::t(&int(1)).unwrap().to_approx(128);
        assert_eq!(one.lo(), &int(1));
        assert_eq!(one.hi(), &int(1));
        let half = CubicNumber::t(&rat(1, 8)).unwrap().to_approx(128);
        assert_eq!((half.lo(), half.hi()), (&rat(1, 2), &rat(1, 2)));
        let t = CubicNumber::t(&rat(3, 10)).unwrap().to_approx(128);
        assert!((t.mid_f64() - 0.669_432_950_082_169_8).abs() < 1e-15);
        assert!(t.radius() < rat(1, 1) / BigRational::from_integer(num_bigint::BigInt::from(2).pow(100)));
    }

    #[test]
    fn perfect_cube_radicand_folds() {
        let t = CubicNumber::t(&rat(8, 27)).unwrap();
        assert_eq!(t.as_rational(), Some(&rat(2, 3)));
        assert_eq!(t.signum(), Ordering::Greater);
    }

    #[test]
    fn sign_of_tiny_irrational_difference() {
        // t - 0.669432950082 is tiny but nonzero.
        let t = CubicNumber::t(&rat(3, 10)).unwrap();
        let d = t.try_sub(&t.rational(rational::parse("0.669432950082").unwrap())).unwrap();
        assert_eq!(d.signum(), Ordering::Greater);
    }

    #[test]
    fn json_roundtrip() {
        let x = cn(rat(1, 2), int(-3), rat(5, 7), rat(3, 10));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"1/2","b":"-3","c":"5/7","radicand":"3/10"}"#);
        let back: CubicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
