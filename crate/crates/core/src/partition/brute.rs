use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Activities, SplitValue};
use crate::error::{Error, Result};
use crate::graphs::{ActivityVector, Graph};
use crate::numerics::rational::BigRational;

pub const DEFAULT_BRUTE_CAP: usize = 30;

/// Calls `f(mask)` for every independent set of `g`, as a bit mask over
/// vertex ids. Branches vertex by vertex and prunes neighbours of chosen
/// vertices, so only independent sets are ever visited.
pub fn for_each_independent_set(g: &Graph, mut f: impl FnMut(u64)) -> Result<()> {
    let n = g.vertex_count();
    if n > 64 {
        return Err(Error::Capacity { what: "enumeration".into(), size: n, cap: 64 });
    }
    let nb: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    fn rec(i: usize, n: usize, nb: &[u64], forbidden: u64, set: u64, f: &mut dyn FnMut(u64)) {
        let mut i = i;
        while i < n && forbidden >> i & 1 == 1 {
            i += 1;
        }
        if i == n {
            f(set);
            return;
        }
        rec(i + 1, n, nb, forbidden, set, f);
        rec(i + 1, n, nb, forbidden | nb[i], set | (1 << i), f);
    }
    rec(0, n, &nb, 0, 0, &mut f);
    Ok(())
}

/// Exact enumeration over all independent sets (default cap 30 vertices).
pub fn z_bruteforce(g: &Graph, acts: &ActivityVector, marked: Option<usize>) -> Result<SplitValue> {
    z_bruteforce_capped(g, acts.into(), marked, DEFAULT_BRUTE_CAP)
}

pub fn z_bruteforce_capped(
    g: &Graph,
    acts: Activities<'_>,
    marked: Option<usize>,
    cap: usize,
) -> Result<SplitValue> {
    let n = g.vertex_count();
    if n > cap.min(64) {
        return Err(Error::Capacity { what: "brute-force graph".into(), size: n, cap: cap.min(64) });
    }
    if let Some(v) = marked {
        g.check_vertex(v)?;
    }
    let value = |v: usize| -> BigRational {
        match acts {
            Activities::Uniform(x) => x.clone(),
            Activities::Vector(a) => a.get(v).clone(),
        }
    };
    if let Activities::Vector(a) = acts {
        a.check_len(g)?;
    }

    // Sets are tallied by how many vertices of each distinct activity they
    // use; the weights are applied once per tally at the end.
    let mut classes: Vec<BigRational> = Vec::new();
    let mut class_of = vec![0usize; n];
    for (v, slot) in class_of.iter_mut().enumerate() {
        let x = value(v);
        *slot = match classes.iter().position(|c| *c == x) {
            Some(i) => i,
            None => {
                classes.push(x);
                classes.len() - 1
            }
        };
    }
    let k = classes.len();
    let mut tally_in: HashMap<Vec<u8>, u64> = HashMap::new();
    let mut tally_out: HashMap<Vec<u8>, u64> = HashMap::new();
    let marked_bit = marked.map(|v| 1u64 << v).unwrap_or(0);
    let mut counts = vec![0u8; k];
    for_each_independent_set(g, |set| {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut s = set;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            counts[class_of[v]] += 1;
            s &= s - 1;
        }
        let tally = if set & marked_bit != 0 { &mut tally_in } else { &mut tally_out };
        match tally.get_mut(counts.as_slice()) {
            Some(c) => *c += 1,
            None => {
                tally.insert(counts.clone(), 1);
            }
        }
    })?;

    let weigh = |tally: &HashMap<Vec<u8>, u64>| -> BigRational {
        tally.iter().fold(BigRational::zero(), |acc, (exps, &count)| {
            let mut term = BigRational::from_integer(BigInt::from(count));
            for (c, &e) in classes.iter().zip(exps) {
                term *= num_traits::pow(c.clone(), e as usize);
            }
            acc + term
        })
    };
    let z_in = weigh(&tally_in);
    let z_out = weigh(&tally_out);
    Ok(SplitValue { z_in, z_out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::path;
    use crate::numerics::rational::{int, rat};

    fn uniform(g: &Graph, x: BigRational) -> ActivityVector {
        ActivityVector::uniform(g.vertex_count(), &x)
    }

    #[test]
    fn small_paths() {
        let l = rat(-3, 7);
        let p1 = path(1).unwrap();
        assert_eq!(z_bruteforce(&p1, &uniform(&p1, l.clone()), None).unwrap().total(), int(1) + &l);
        let p2 = path(2).unwrap();
        let z = z_bruteforce(&p2, &uniform(&p2, l.clone()), None).unwrap();
        assert_eq!(z.total(), int(1) + int(2) * &l);
        assert!(z.z_in.is_zero());
        let p4 = path(4).unwrap();
        assert!(z_bruteforce(&p4, &uniform(&p4, rat(-1, 3)), None).unwrap().total().is_zero());
    }

    #[test]
    fn marked_split() {
        let p4 = path(4).unwrap();
        let s = z_bruteforce(&p4, &uniform(&p4, int(-1)), Some(0)).unwrap();
        assert_eq!((s.z_in, s.z_out), (int(1), int(-1)));
    }

    #[test]
    fn cap_is_enforced() {
        let g = path(31).unwrap();
        let acts = uniform(&g, int(1));
        assert!(matches!(z_bruteforce(&g, &acts, None), Err(Error::Capacity { .. })));
        assert!(z_bruteforce_capped(&g, (&acts).into(), None, 40).is_ok());
    }

    #[test]
    fn counts_independent_sets() {
        // Fibonacci: P_10 has F(12) = 144 independent sets.
        let g = path(10).unwrap();
        let mut count = 0;
        for_each_independent_set(&g, |_| count += 1).unwrap();
        assert_eq!(count, 144);
    }
}
