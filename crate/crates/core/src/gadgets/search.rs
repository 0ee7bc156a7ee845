//! Scanning path ratios for one close to a target.
//!
//! The scan runs the integer recurrence exactly. A float copy of the ratio,
//! resynchronized from the exact state every few steps, decides which `n`
//! deserve an exact comparison; all accept/reject decisions are exact.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::numerics::rational::{self, BigRational};
use crate::partition::PathSequence;

use super::bad_set::bad_set_member;

pub const DEFAULT_N_MAX: u64 = 1_000_000;

const RESYNC: u64 = 32;

/// A path length and the exact ratio it achieves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathHit {
    pub n: u64,
    #[serde(with = "rational::serde_str")]
    pub ratio: BigRational,
}

/// What is compared against the target: the path ratio itself, or the
/// ratio `outer / (1 + r)` seen through a pendant at activity `outer`.
#[derive(Clone, Copy, Debug)]
pub(crate) enum View<'a> {
    Path,
    Pendant(&'a BigRational),
}

/// Smallest `n <= n_max` with `|path_ratio(n, lambda) - target| <= eps`.
pub fn find_path_activity(
    lambda: &BigRational,
    target: &BigRational,
    eps: &BigRational,
    n_max: u64,
) -> Result<PathHit> {
    find_path_activity_from(lambda, target, eps, 1, n_max)
}

/// As [`find_path_activity`], starting at `n_from` (for resuming).
pub fn find_path_activity_from(
    lambda: &BigRational,
    target: &BigRational,
    eps: &BigRational,
    n_from: u64,
    n_max: u64,
) -> Result<PathHit> {
    if bad_set_member(lambda)? {
        return Err(Error::Precondition(format!("{lambda} is in the bad set; path ratios are periodic")));
    }
    scan(lambda, View::Path, target, eps, n_from, n_max)
}

pub(crate) fn scan(
    lambda: &BigRational,
    view: View<'_>,
    target: &BigRational,
    eps: &BigRational,
    n_from: u64,
    n_max: u64,
) -> Result<PathHit> {
    if eps.is_negative() {
        return domain(format!("accuracy must be non-negative, got {eps}"));
    }
    let n_from = n_from.max(1);
    if n_from > n_max {
        return Err(Error::SearchExhausted { searched_to: n_max, resume_from: n_from });
    }
    let lf = rational::to_f64(lambda);
    let tf = rational::to_f64(target);
    let window = rational::to_f64(eps) + 1e-6 * (1.0 + tf.abs());
    let outer_f = match view {
        View::Path => None,
        View::Pendant(o) => Some(rational::to_f64(o)),
    };

    let mut seq = PathSequence::new(lambda);
    seq.advance_to(n_from - 1);
    let mut rf = f64::NAN;
    for n in n_from..=n_max {
        // The state now holds V_{n-2}, V_{n-1}: enough for the ratio of P_n.
        if (n - n_from).is_multiple_of(RESYNC) {
            let (num, den) = seq.next_ratio_parts();
            rf = rational::ratio_to_f64(&num, &den);
        } else {
            rf = lf / (1.0 + rf);
        }
        let vf = match outer_f {
            None => rf,
            Some(o) => o / (1.0 + rf),
        };
        if !((vf - tf).abs() <= window) && vf.is_finite() {
            seq.advance();
            continue;
        }
        let (num, den) = view_parts(&seq, view);
        if !den.is_zero() && rational::within_parts(&num, &den, target, eps) {
            let hint = view_hint(lambda, view);
            return Ok(PathHit { n, ratio: rational::reduce_with_hint(num, den, &hint) });
        }
        seq.advance();
    }
    Err(Error::SearchExhausted { searched_to: n_max, resume_from: n_max + 1 })
}

/// Unreduced numerator and denominator of the viewed ratio for `P_{k+1}`,
/// where `k` is the sequence index.
fn view_parts(seq: &PathSequence, view: View<'_>) -> (BigInt, BigInt) {
    let (num, den) = seq.next_ratio_parts();
    match view {
        View::Path => (num, den),
        // outer / (1 + num/den) = outer * den / (den + num)
        View::Pendant(o) => {
            let sum = &den + &num;
            (o.numer() * den, o.denom() * sum)
        }
    }
}

/// Every prime shared by the viewed numerator and denominator divides this.
/// Consecutive `V_n` can only share primes of `p`, and the scaling adds
/// primes of `q`; the pendant view also brings in `outer`'s parts.
fn view_hint(lambda: &BigRational, view: View<'_>) -> BigInt {
    let base = lambda.numer() * lambda.denom();
    match view {
        View::Path => base,
        View::Pendant(o) => base * o.numer() * o.denom(),
    }
}

/// Checks `r_n > -1` for every `n <= n_max`, exactly. Returns the first
/// violating `n`, if any.
pub fn first_ratio_at_most_minus_one(lambda: &BigRational, n_max: u64) -> Result<Option<u64>> {
    if lambda.is_zero() {
        return domain("lambda must be nonzero");
    }
    let mut seq = PathSequence::new(lambda);
    for n in 1..=n_max {
        let (num, den) = seq.next_ratio_parts();
        if den.is_zero() {
            return Ok(Some(n));
        }
        // num/den > -1  <=>  (num + den) / den > 0.
        let s = &num + &den;
        if s.is_zero() || s.is_negative() != den.is_negative() {
            return Ok(Some(n));
        }
        seq.advance();
    }
    Ok(None)
}
