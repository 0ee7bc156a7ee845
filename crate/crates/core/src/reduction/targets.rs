//! The windows for the two auxiliary activities and the picks inside them.

use std::cmp::Ordering;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::gadgets::{implement_activity_with, lambda_star, ImplementOptions, Implementation};
use crate::numerics::rational::{self, int, rat, simplest_between, BigRational};
use crate::numerics::{default_precision, CubicNumber};

/// `t = |lambda|^(1/3)` as an element of Q(t).
pub fn cube_root_abs(lambda: &BigRational) -> Result<CubicNumber> {
    if !lambda.is_negative() {
        return domain(format!("the reduction needs a negative activity, got {lambda}"));
    }
    CubicNumber::t(&lambda.abs())
}

/// Open interval with endpoints in Q(t).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub low: CubicNumber,
    pub high: CubicNumber,
}

impl Interval {
    /// Strict membership, decided exactly.
    pub fn contains(&self, x: &BigRational) -> bool {
        let x = self.low.rational(x.clone());
        (&x - &self.low).is_positive() && (&self.high - &x).is_positive()
    }

    /// Verified lower bound on the width, and a rational near the middle.
    fn width_and_mid(&self, prec: u32) -> (BigRational, BigRational) {
        let lo = self.low.to_approx(prec);
        let hi = self.high.to_approx(prec);
        let w = hi.lo() - lo.hi();
        let mid = (lo.midpoint() + hi.midpoint()) / int(2);
        (w, mid)
    }
}

/// `(-2 - t/3, min{-2, -2 - (t^2 - 1)/(3t + 1)})`.
pub fn interval_i1(lambda: &BigRational) -> Result<Interval> {
    let t = cube_root_abs(lambda)?;
    let minus_two = t.rational(int(-2));
    let low = &minus_two - &t.scale(&rat(1, 3));
    let num = &(&t * &t) - &t.one_like();
    let den = &t.scale(&int(3)) + &t.one_like();
    let other = &minus_two - &num.try_div(&den)?;
    let high = if other.cmp_value(&minus_two)? == Ordering::Less { other } else { minus_two };
    Ok(Interval { low, high })
}

/// `(-1, -1 - l1 (l1 + 2 + t/3) / (1 + t/3))`.
pub fn interval_i2(lambda: &BigRational, lambda1: &BigRational) -> Result<Interval> {
    let t = cube_root_abs(lambda)?;
    let s = &t.one_like() + &t.scale(&rat(1, 3));
    let inner = &t.rational(lambda1 + int(2)) + &t.scale(&rat(1, 3));
    let high = &t.rational(int(-1)) - &inner.scale(lambda1).try_div(&s)?;
    Ok(Interval { low: t.rational(int(-1)), high })
}

#[derive(Clone, Debug, Default)]
pub struct TargetOptions {
    /// Explicit target for `lambda1'`; by default a simple rational near the
    /// middle of its window.
    pub lambda1: Option<BigRational>,
    pub lambda2: Option<BigRational>,
    /// Synthesis accuracy for both gadgets; by default about 1/8 of the
    /// window width.
    pub eps: Option<BigRational>,
    pub implement: ImplementOptions,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActivityTargets {
    pub i1: Interval,
    pub i2: Interval,
    #[serde(with = "rational::serde_str")]
    pub target1: BigRational,
    #[serde(with = "rational::serde_str")]
    pub eps1: BigRational,
    #[serde(with = "rational::serde_str")]
    pub target2: BigRational,
    #[serde(with = "rational::serde_str")]
    pub eps2: BigRational,
    /// Exact ratio of `gadget1`; lies in `i1`.
    #[serde(with = "rational::serde_str")]
    pub lambda1: BigRational,
    #[serde(with = "rational::serde_str")]
    pub lambda2: BigRational,
    pub gadget1: Implementation,
    pub gadget2: Implementation,
}

/// Picks `lambda1'` in `I1`, implements it, then does the same for
/// `lambda2'` in the window `I2` determined by the implemented `lambda1'`.
pub fn choose_activity_targets(delta: usize, lambda: &BigRational, opts: &TargetOptions) -> Result<ActivityTargets> {
    let ls = lambda_star(delta)?;
    if lambda >= &-&ls {
        return domain(format!("lambda = {lambda} is not below -lambda*({delta}) = -{ls}"));
    }
    let i1 = interval_i1(lambda)?;
    let (target1, eps1) = pick(&i1, opts.lambda1.as_ref(), opts.eps.as_ref(), "lambda1'")?;
    let gadget1 = implement_in(delta, lambda, &i1, &target1, &eps1, opts, "lambda1'")?;
    let lambda1 = gadget1.gadget.claimed_ratio.clone();

    let i2 = interval_i2(lambda, &lambda1)?;
    let (target2, eps2) = pick(&i2, opts.lambda2.as_ref(), opts.eps.as_ref(), "lambda2'")?;
    let gadget2 = implement_in(delta, lambda, &i2, &target2, &eps2, opts, "lambda2'")?;
    let lambda2 = gadget2.gadget.claimed_ratio.clone();

    Ok(ActivityTargets { i1, i2, target1, eps1, target2, eps2, lambda1, lambda2, gadget1, gadget2 })
}

/// The target sits within `w/8` of the middle and the accuracy is at most
/// `w/8`, so the implemented value keeps a margin of about `w/4` per side.
fn pick(
    iv: &Interval,
    explicit: Option<&BigRational>,
    eps: Option<&BigRational>,
    what: &str,
) -> Result<(BigRational, BigRational)> {
    let (w, mid) = iv.width_and_mid(default_precision());
    if !w.is_positive() {
        return domain(format!("the window for {what} is empty or too narrow to separate"));
    }
    let eighth = &w / int(8);
    let eps = match eps {
        Some(e) if e.is_negative() => return domain(format!("accuracy must be non-negative, got {e}")),
        Some(e) => e.clone(),
        None => simplest_between(&(&w / int(9)), &eighth),
    };
    let target = match explicit {
        Some(x) => {
            if !iv.contains(x) {
                return Err(Error::Precondition(format!("{what} = {x} is outside its window")));
            }
            x.clone()
        }
        None => simplest_between(&(&mid - &eighth), &(&mid + &eighth)),
    };
    Ok((target, eps))
}

fn implement_in(
    delta: usize,
    lambda: &BigRational,
    iv: &Interval,
    target: &BigRational,
    eps: &BigRational,
    opts: &TargetOptions,
    what: &str,
) -> Result<Implementation> {
    let imp = implement_activity_with(delta, lambda, target, eps, &opts.implement)?;
    if !iv.contains(&imp.gadget.claimed_ratio) {
        return Err(Error::VerificationFailed(format!(
            "implemented {what} = {} left its window",
            imp.gadget.claimed_ratio
        )));
    }
    Ok(imp)
}
