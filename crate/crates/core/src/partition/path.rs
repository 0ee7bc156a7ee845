use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::numerics::approx::{acos_lambda, ApproxReal};
use crate::numerics::rational::{self, BigRational};

/// Integer form of the path recurrence at `lambda = p/q`.
///
/// With `x_{-1} = x_0 = 1` and `x_n = x_{n-1} + lambda x_{n-2}`, the scaled
/// values `V_n = q^ceil(n/2) x_n` are integers and satisfy
/// `V_n = q^[n odd] V_{n-1} + p V_{n-2}`. Scaling by `q^ceil(n/2)` rather than
/// `q^n` halves the size of the numbers carried along long scans.
#[derive(Clone, Debug)]
pub struct PathSequence {
    p: BigInt,
    q: BigInt,
    n: u64,
    prev: BigInt,
    cur: BigInt,
}

impl PathSequence {
    pub fn new(lambda: &BigRational) -> Self {
        PathSequence {
            p: lambda.numer().clone(),
            q: lambda.denom().clone(),
            n: 0,
            prev: BigInt::one(),
            cur: BigInt::one(),
        }
    }

    /// Current index n (the state holds `V_{n-1}` and `V_n`).
    pub fn index(&self) -> u64 {
        self.n
    }

    pub fn advance(&mut self) {
        let n = self.n + 1;
        let mut next = if n % 2 == 1 { &self.q * &self.cur } else { self.cur.clone() };
        next += &self.p * &self.prev;
        self.prev = std::mem::replace(&mut self.cur, next);
        self.n = n;
    }

    pub fn advance_to(&mut self, n: u64) {
        while self.n < n {
            self.advance();
        }
    }

    /// `Z_{P_n}(lambda)` in lowest terms.
    pub fn value(&self) -> BigRational {
        let k = self.n.div_ceil(2) as usize;
        let den = num_traits::pow(self.q.clone(), k);
        rational::reduce_with_hint(self.cur.clone(), den, &self.q)
    }

    pub fn value_is_zero(&self) -> bool {
        self.cur.is_zero()
    }

    /// Unreduced numerator and denominator of the endpoint ratio of
    /// `P_{n+1}`, i.e. `lambda Z_{P_{n-1}} / Z_{P_n}`.
    pub fn next_ratio_parts(&self) -> (BigInt, BigInt) {
        let num = &self.p * &self.prev;
        let den = if (self.n + 1) % 2 == 1 { &self.q * &self.cur } else { self.cur.clone() };
        (num, den)
    }

    /// Prime factors shared by any ratio numerator and denominator divide this.
    pub fn ratio_hint(&self) -> BigInt {
        &self.p * &self.q
    }
}

/// `Z_{P_n}(lambda)` by the two-term recurrence.
pub fn z_path_recurrence(n: u64, lambda: &BigRational) -> Result<BigRational> {
    if n == 0 {
        return domain("path length must be at least 1");
    }
    let mut s = PathSequence::new(lambda);
    s.advance_to(n);
    Ok(s.value())
}

/// Unreduced parts of `path_ratio(n, lambda)`, with the reduction hint.
pub fn path_ratio_parts(n: u64, lambda: &BigRational) -> Result<(BigInt, BigInt, BigInt)> {
    if n == 0 {
        return domain("path length must be at least 1");
    }
    let mut s = PathSequence::new(lambda);
    s.advance_to(n - 1);
    let (num, den) = s.next_ratio_parts();
    if den.is_zero() {
        return Err(Error::ZeroDenominator(format!("Z of the path on {} vertices vanishes at {lambda}", n - 1)));
    }
    Ok((num, den, s.ratio_hint()))
}

/// Endpoint ratio `Z^in / Z^out` of P_n, i.e. `lambda Z_{P_{n-2}} / Z_{P_{n-1}}`.
pub fn path_ratio(n: u64, lambda: &BigRational) -> Result<BigRational> {
    let (num, den, hint) = path_ratio_parts(n, lambda)?;
    Ok(rational::reduce_with_hint(num, den, &hint))
}

/// The trigonometric closed form `sin((n+2)θ) / (2^n cos^n θ sin 2θ)` at a
/// fixed working precision.
pub fn z_path_closed_at(n: u64, lambda: &BigRational, prec: u32) -> Result<ApproxReal> {
    if n == 0 {
        return domain("path length must be at least 1");
    }
    let theta = acos_lambda(lambda, prec + 32)?;
    let two_cos = theta.cos().mul_rational(&rational::int(2));
    let num = theta.mul_rational(&rational::int(n as i64 + 2)).sin();
    let den = two_cos.powi(n as u32).mul(&theta.mul_rational(&rational::int(2)).sin());
    Ok(num.div(&den)?.with_precision(prec))
}

/// Closed form with adaptive precision: doubles until the enclosure is
/// narrower than 2^-64 (or a hard ceiling is reached).
pub fn z_path_closed(n: u64, lambda: &BigRational, prec: u32) -> Result<ApproxReal> {
    let target = BigRational::new(BigInt::one(), BigInt::one() << 64);
    let mut p = prec.max(32);
    loop {
        let v = z_path_closed_at(n, lambda, p)?;
        if v.width() < target || p >= 1 << 14 {
            return Ok(v);
        }
        p *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    #[test]
    fn recurrence_values() {
        assert_eq!(z_path_recurrence(1, &int(-1)).unwrap(), int(0));
        assert_eq!(z_path_recurrence(2, &rat(-1, 2)).unwrap(), int(0));
        assert_eq!(z_path_recurrence(3, &int(-1)).unwrap(), int(-1));
        assert_eq!(z_path_recurrence(4, &rat(-1, 3)).unwrap(), int(0));
        assert_eq!(z_path_recurrence(3, &rat(-1, 3)).unwrap(), rat(1, 9));
        assert!(z_path_recurrence(0, &int(1)).is_err());
    }

    #[test]
    fn ratio_values() {
        let l = rat(-3, 10);
        assert_eq!(path_ratio(1, &l).unwrap(), l);
        assert_eq!(path_ratio(4, &int(-1)).unwrap(), int(-1));
        assert!(matches!(path_ratio(3, &rat(-1, 2)), Err(Error::ZeroDenominator(_))));
        // lambda / (1 + r) recursion.
        let mut r = l.clone();
        for n in 2..40 {
            r = &l / (int(1) + &r);
            assert_eq!(path_ratio(n, &l).unwrap(), r);
        }
    }

    #[test]
    fn closed_form_encloses_recurrence() {
        for l in [rat(-1, 2), rat(-3, 10), int(-2), rat(-7, 8)] {
            for n in [1u64, 2, 10, 33, 64] {
                let exact = z_path_recurrence(n, &l).unwrap();
                let c = z_path_closed(n, &l, 128).unwrap();
                assert!(c.contains(&exact), "n={n} lambda={l}: {c:?} vs {exact}");
            }
        }
        let z = z_path_closed(4, &rat(-1, 3), 128).unwrap();
        assert!(z.contains(&int(0)));
        assert!(z_path_closed(3, &rat(-1, 4), 128).is_err());
    }
}
