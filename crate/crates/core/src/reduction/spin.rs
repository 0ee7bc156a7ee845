//! The antiferromagnetic 2-spin parameters and their non-uniqueness check.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::numerics::rational::{int, rat, BigRational};
use crate::numerics::{default_precision, ApproxReal, CubicNumber};
use crate::partition::TwoSpinParams;

use super::targets::cube_root_abs;

/// `beta = -((l1+1)^2 + l2) / (t (1+l1+l2))`, `gamma = -t (1+l2) / (1+l1+l2)`,
/// with the sign conditions and `0 < beta, gamma < 1/3` checked exactly.
pub fn beta_gamma(lambda: &BigRational, l1: &BigRational, l2: &BigRational) -> Result<TwoSpinParams> {
    let p = beta_gamma_formula(lambda, l1, l2)?;
    let one = BigRational::one();
    let z00 = (l1 + &one) * (l1 + &one) + l2;
    if !z00.is_positive() {
        return Err(Error::Precondition(format!("(l1 + 1)^2 + l2 = {z00} is not positive")));
    }
    if !(&one + l2).is_positive() {
        return Err(Error::Precondition(format!("1 + l2 = {} is not positive", &one + l2)));
    }
    if !in_unit_window(&p) {
        return Err(Error::Precondition(format!("beta = {}, gamma = {} not both in (0, 1/3)", p.beta, p.gamma)));
    }
    Ok(p)
}

/// The bare formulas, without the window checks.
pub(crate) fn beta_gamma_formula(lambda: &BigRational, l1: &BigRational, l2: &BigRational) -> Result<TwoSpinParams> {
    let t = cube_root_abs(lambda)?;
    let s = int(1) + l1 + l2;
    if s.is_zero() {
        return domain("1 + l1 + l2 vanishes; beta and gamma are undefined");
    }
    let z00 = (l1 + int(1)) * (l1 + int(1)) + l2;
    let beta = t.rational(-z00 / &s).try_div(&t)?;
    let gamma = t.scale(&(-(int(1) + l2) / &s));
    Ok(TwoSpinParams { beta, gamma })
}

/// `0 < beta, gamma < 1/3`, decided exactly.
pub fn in_unit_window(p: &TwoSpinParams) -> bool {
    let third = p.beta.rational(rat(1, 3));
    [&p.beta, &p.gamma].iter().all(|x| x.is_positive() && (&third - x).is_positive())
}

#[derive(Clone, Debug, Serialize)]
pub struct NonUniquenessWitness {
    pub a: CubicNumber,
    pub b: CubicNumber,
    pub c: CubicNumber,
    pub discriminant: CubicNumber,
    /// `1 - 4 beta^3 - 6 beta gamma - 3 beta^2 gamma^2 - 4 gamma^3`.
    pub factor: CubicNumber,
    pub z1: ApproxReal,
    pub z2: ApproxReal,
    /// Upper bound on both fixed-point residuals.
    #[serde(with = "crate::numerics::rational::serde_str")]
    pub residual_bound: BigRational,
}

/// Residual tolerance for the fixed-point equations.
pub fn witness_tolerance() -> BigRational {
    BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), 10))
}

/// Two distinct positive roots of `A z^2 + B z + C` with
/// `A = (b^2 + g)^2`, `B = -1 + (b^2 + 2g)(2b + g^2)`, `C = (b + g^2)^2`,
/// each mapped to the other by `y -> ((b y + 1)/(y + g))^2`.
pub fn nonuniqueness_witness(p: &TwoSpinParams) -> Result<NonUniquenessWitness> {
    if !in_unit_window(p) {
        return Err(Error::Precondition(format!("beta = {}, gamma = {} not both in (0, 1/3)", p.beta, p.gamma)));
    }
    let (b, g) = (&p.beta, &p.gamma);
    let one = b.one_like();
    let b2 = b * b;
    let g2 = g * g;
    let s = &b2 + &g.scale(&int(2));
    let qa = (&b2 + g).pow(2);
    let qb = &(&s * &(&b.scale(&int(2)) + &g2)) - &one;
    let qc = (b + &g2).pow(2);
    let fail = |m: String| Err(Error::VerificationFailed(m));
    if !(qa.is_positive() && qb.is_negative() && qc.is_positive()) {
        return fail("sign pattern A > 0, B < 0, C > 0 violated".into());
    }
    let disc = &(&qb * &qb) - &(&qa * &qc).scale(&int(4));
    let bg = b * g;
    let factor = &(&(&(&one - &b.pow(3).scale(&int(4))) - &bg.scale(&int(6))) - &(&bg * &bg).scale(&int(3)))
        - &g.pow(3).scale(&int(4));
    if disc != &(&one - &bg).pow(2) * &factor {
        return fail("discriminant does not factor".into());
    }
    if !factor.is_positive() || bg == one {
        return fail("discriminant is not positive".into());
    }
    // (z + s)(A z^2 + B z + C) = A z (z+g)^2 + A (b z + 1)^2 + B (z+g)^2,
    // compared coefficient by coefficient.
    let lhs = [&qc * &s, &qc + &(&qb * &s), &qb + &(&qa * &s), qa.clone()];
    let rhs = [
        &qa + &(&qb * &g2),
        &(&(&qa * &g2) + &(&qa * b).scale(&int(2))) + &(&qb * g).scale(&int(2)),
        &(&(&qa * g).scale(&int(2)) + &(&qa * &b2)) + &qb,
        qa.clone(),
    ];
    if lhs != rhs {
        return fail("fixed-point factorization does not hold".into());
    }

    let tol = witness_tolerance();
    let mut prec = default_precision();
    loop {
        if let Some((z1, z2, bound)) = roots(p, &qa, &qb, &disc, prec)? {
            if bound <= tol {
                return Ok(NonUniquenessWitness {
                    a: qa,
                    b: qb,
                    c: qc,
                    discriminant: disc,
                    factor,
                    z1,
                    z2,
                    residual_bound: bound,
                });
            }
        }
        prec *= 2;
        if prec > 1 << 14 {
            return fail("root enclosures did not separate".into());
        }
    }
}

/// Enclosed roots and the residual bound; `None` when the enclosures are
/// too wide to tell the roots apart or from zero.
fn roots(
    p: &TwoSpinParams,
    qa: &CubicNumber,
    qb: &CubicNumber,
    disc: &CubicNumber,
    prec: u32,
) -> Result<Option<(ApproxReal, ApproxReal, BigRational)>> {
    let a = qa.to_approx(prec);
    let b = qb.to_approx(prec);
    let sd = disc.to_approx(prec).sqrt()?;
    let two_a = a.mul_rational(&int(2));
    let z1 = b.neg().sub(&sd).div(&two_a)?;
    let z2 = b.neg().add(&sd).div(&two_a)?;
    if !z1.is_positive() || z1.hi() >= z2.lo() {
        return Ok(None);
    }
    let beta = p.beta.to_approx(prec);
    let gamma = p.gamma.to_approx(prec);
    let f = |y: &ApproxReal| -> Result<ApproxReal> {
        Ok(beta.mul(y).add_rational(&int(1)).div(&y.add(&gamma))?.sqr())
    };
    let r1 = z1.sub(&f(&z2)?);
    let r2 = z2.sub(&f(&z1)?);
    let bound = std::cmp::max(r1.mag(), r2.mag());
    Ok(Some((z1, z2, bound)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::CubicNumber;

    fn rational_params(b: BigRational, g: BigRational) -> TwoSpinParams {
        let r = int(1);
        TwoSpinParams {
            beta: CubicNumber::from_rational(b, &r).unwrap(),
            gamma: CubicNumber::from_rational(g, &r).unwrap(),
        }
    }

    #[test]
    fn minus_one_example() {
        let p = beta_gamma(&int(-1), &rat(-13, 6), &rat(-9, 10)).unwrap();
        assert_eq!(p.beta.as_rational(), Some(&rat(83, 372)));
        assert_eq!(p.gamma.as_rational(), Some(&rat(3, 62)));
        // Numerator and denominator on their own.
        let num = (rat(-13, 6) + int(1)) * (rat(-13, 6) + int(1)) + rat(-9, 10);
        assert_eq!(num, rat(83, 180));
        assert_eq!(int(1) + rat(-13, 6) + rat(-9, 10), rat(-31, 15));
    }

    #[test]
    fn degenerate_and_out_of_window() {
        assert!(matches!(beta_gamma(&int(-1), &int(-2), &int(1)), Err(Error::Domain(_))));
        assert!(matches!(beta_gamma(&int(-1), &int(-3), &rat(-1, 2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn irrational_parameters() {
        let l = rat(-3, 10);
        let p = beta_gamma(&l, &rat(-21, 10), &rat(-19, 20)).unwrap();
        assert!(p.beta.as_rational().is_none());
        assert!(in_unit_window(&p));
        let w = nonuniqueness_witness(&p).unwrap();
        assert!(w.residual_bound <= witness_tolerance());
    }

    #[test]
    fn quarter_discriminant() {
        let p = rational_params(rat(1, 4), rat(1, 4));
        let w = nonuniqueness_witness(&p).unwrap();
        let f = int(1) - rat(4, 64) - rat(6, 16) - rat(3, 256) - rat(4, 64);
        let want = rat(15, 16) * rat(15, 16) * &f;
        assert_eq!(w.discriminant.as_rational(), Some(&want));
        assert!(want.is_positive());
        assert!(w.z1.hi() < w.z2.lo());
    }

    #[test]
    fn witness_roots_match_the_quadratic_formula() {
        let p = rational_params(rat(83, 372), rat(3, 62));
        let w = nonuniqueness_witness(&p).unwrap();
        // Float oracle, written from scratch.
        let (b, g) = (83.0 / 372.0f64, 3.0 / 62.0f64);
        let a = (b * b + g).powi(2);
        let bb = -1.0 + (b * b + 2.0 * g) * (2.0 * b + g * g);
        let c = (b + g * g).powi(2);
        let d = (bb * bb - 4.0 * a * c).sqrt();
        let (r1, r2) = ((-bb - d) / (2.0 * a), (-bb + d) / (2.0 * a));
        assert!((w.z1.mid_f64() - r1).abs() < 1e-9 * r1.abs().max(1.0));
        assert!((w.z2.mid_f64() - r2).abs() < 1e-9 * r2.abs().max(1.0));
        let f = |y: f64| ((b * y + 1.0) / (y + g)).powi(2);
        assert!((r1 - f(r2)).abs() < 1e-6 * r1);
    }

    #[test]
    fn outside_the_window_is_rejected() {
        let p = rational_params(rat(1, 2), rat(1, 4));
        assert!(matches!(nonuniqueness_witness(&p), Err(Error::Precondition(_))));
    }
}
