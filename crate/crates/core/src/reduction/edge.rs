//! The five-vertex edge gadget `v1 - x - z - y - v2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{path, Graph};
use crate::numerics::rational::{int, BigRational};
use crate::numerics::CubicNumber;

use super::targets::cube_root_abs;

#[derive(Clone, Debug, Serialize)]
pub struct EdgeGadget {
    pub graph: Graph,
    /// `(-t, l1, l2, l1, -t)`; only ever used inside Q(t).
    pub activities: Vec<CubicNumber>,
    pub z00: CubicNumber,
    pub z01: CubicNumber,
    pub z11: CubicNumber,
    /// Conditioned sums by enumeration, indexed by the spins of `v1`, `v2`.
    pub enumerated: [[CubicNumber; 2]; 2],
}

/// Closed forms `Z00 = (l1+1)^2 + l2`, `Z01 = -t (1+l1+l2)`,
/// `Z11 = t^2 (1+l2)`, checked against enumeration of the 8 independent
/// sets of the path.
pub fn edge_gadget(lambda: &BigRational, l1: &BigRational, l2: &BigRational) -> Result<EdgeGadget> {
    let t = cube_root_abs(lambda)?;
    let (z00, z01, z11) = closed_forms(&t, l1, l2);
    let graph = path(5)?;
    let ends = -&t;
    let activities = vec![ends.clone(), t.rational(l1.clone()), t.rational(l2.clone()), t.rational(l1.clone()), ends];

    let zero = t.zero_like();
    let mut enumerated = [[zero.clone(), zero.clone()], [zero.clone(), zero]];
    for mask in 0u32..32 {
        if graph.edges().iter().any(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1) {
            continue;
        }
        let mut w = t.one_like();
        for (i, a) in activities.iter().enumerate() {
            if mask >> i & 1 == 1 {
                w = &w * a;
            }
        }
        let (s1, s2) = ((mask & 1) as usize, (mask >> 4 & 1) as usize);
        enumerated[s1][s2] = &enumerated[s1][s2] + &w;
    }
    let e = &enumerated;
    if e[0][0] != z00 || e[0][1] != z01 || e[1][0] != z01 || e[1][1] != z11 {
        return Err(Error::VerificationFailed("edge gadget closed forms disagree with enumeration".into()));
    }
    Ok(EdgeGadget { graph, activities, z00, z01, z11, enumerated })
}

pub(crate) fn closed_forms(t: &CubicNumber, l1: &BigRational, l2: &BigRational) -> (CubicNumber, CubicNumber, CubicNumber) {
    let z00 = t.rational((l1 + int(1)) * (l1 + int(1)) + l2);
    let z01 = t.scale(&-(int(1) + l1 + l2));
    let z11 = (t * t).scale(&(int(1) + l2));
    (z00, z01, z11)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;
    use crate::reduction::beta_gamma;

    #[test]
    fn minus_one_values() {
        let e = edge_gadget(&int(-1), &rat(-13, 6), &rat(-9, 10)).unwrap();
        assert_eq!(e.z01.as_rational(), Some(&rat(31, 15)));
        assert_eq!(e.z00.as_rational(), Some(&rat(83, 180)));
        assert_eq!(e.z11.as_rational(), Some(&rat(1, 10)));
    }

    #[test]
    fn ratios_reproduce_beta_gamma() {
        for (l, l1, l2) in [(int(-1), rat(-13, 6), rat(-9, 10)), (rat(-3, 10), rat(-21, 10), rat(-19, 20))] {
            let e = edge_gadget(&l, &l1, &l2).unwrap();
            let p = beta_gamma(&l, &l1, &l2).unwrap();
            assert_eq!(e.z00.try_div(&e.z01).unwrap(), p.beta);
            assert_eq!(e.z11.try_div(&e.z01).unwrap(), p.gamma);
            assert!(e.z01.is_positive());
        }
    }
}
