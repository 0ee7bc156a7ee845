//! Small reference computations, deliberately written without the library's
//! evaluators.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gadgets::Step;
use crate::graphs::Graph;
use crate::numerics::BigRational;

/// `Z_{P_n}` by `Z_n = Z_{n-1} + lambda Z_{n-2}`, `Z_0 = 1`, `Z_1 = 1 + lambda`.
pub fn path_z(n: u64, lambda: &BigRational) -> BigRational {
    let (mut a, mut b) = (BigRational::one(), BigRational::one() + lambda);
    for _ in 1..n {
        let c = &b + lambda * &a;
        a = b;
        b = c;
    }
    if n == 0 { a } else { b }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Rational roots below `-1/4` of `Z_{P_n}` for `n <= n_max`.
///
/// `Z_{P_n}(x) = sum_k C(n-k+1, k) x^k` has constant term 1, so a rational
/// root is `-1/b` with `b` dividing the leading coefficient.
pub fn path_zeros_below_quarter(n_max: u64) -> BTreeSet<(u64, BigRational)> {
    let mut found = BTreeSet::new();
    for n in 1..=n_max {
        let coeffs: Vec<BigInt> = (0..=n.div_ceil(2)).map(|k| binomial(n - k + 1, k)).collect();
        let lead = coeffs.iter().rev().find(|c| !c.is_zero()).expect("nonzero").clone();
        let lead: u64 = lead.try_into().expect("small leading coefficient");
        for b in (1..=lead).filter(|b| lead % b == 0) {
            let x = BigRational::new(BigInt::from(-1), BigInt::from(b));
            if x >= BigRational::new((-1).into(), 4.into()) {
                continue;
            }
            let mut v = BigRational::zero();
            for c in coeffs.iter().rev() {
                v = v * &x + BigRational::from_integer(c.clone());
            }
            if v.is_zero() {
                found.insert((n, x));
            }
        }
    }
    found
}

/// Iterates `x -> 1 / (1 + lambda x^d)` from `1 / (1 + lambda)` until
/// `-lambda x^d >= 1`; returns `(h, x_h, lambda x_h^(d-1))`.
pub fn boost_loop(delta: u32, lambda: &BigRational) -> (usize, BigRational, BigRational) {
    let d = delta - 1;
    let one = BigRational::one();
    let mut x = (&one + lambda).recip();
    let mut h = 0;
    loop {
        let lx = lambda * num_traits::pow(x.clone(), d as usize);
        if -&lx >= one {
            break;
        }
        x = (&one + lx).recip();
        h += 1;
    }
    let lh = lambda * num_traits::pow(x.clone(), (d - 1) as usize);
    (h, x, lh)
}

/// Replays a word by hand.
pub fn replay(steps: &[Step]) -> Option<BigRational> {
    let mut x = BigRational::zero();
    for s in steps {
        let d = match s {
            Step::Plus => BigRational::one() + &x,
            Step::Minus => BigRational::one() - &x,
        };
        if d.is_zero() {
            return None;
        }
        x = d.recip();
    }
    Some(x)
}

/// BFS two-colouring.
pub fn bipartite(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut colour = vec![u8::MAX; n];
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in g.neighbors(u) {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[u];
                    q.push_back(w);
                } else if colour[w] == colour[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// `sum_sigma prod_{uv} M[sigma(u)][sigma(v)]` with `M = [[beta, 1], [1, gamma]]`.
pub fn two_spin(h: &Graph, beta: &BigRational, gamma: &BigRational) -> BigRational {
    let n = h.vertex_count();
    let mut z = BigRational::zero();
    for sigma in 0u64..1 << n {
        let mut w = BigRational::one();
        for &(u, v) in h.edges() {
            match (sigma >> u & 1 == 1, sigma >> v & 1 == 1) {
                (false, false) => w *= beta,
                (true, true) => w *= gamma,
                _ => {}
            }
        }
        z += w;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    #[test]
    fn small_cases() {
        assert_eq!(path_z(1, &int(-1)), int(0));
        assert_eq!(path_z(2, &rat(-1, 2)), int(0));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        let zeros = path_zeros_below_quarter(10);
        assert!(zeros.contains(&(4, rat(-1, 3))));
        assert_eq!(replay(&[Step::Minus]), Some(int(1)));
        assert_eq!(replay(&[Step::Minus, Step::Minus]), None);
    }
}
