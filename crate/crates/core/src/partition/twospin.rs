use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::numerics::cubic::CubicNumber;

pub const DEFAULT_TWOSPIN_CAP: usize = 20;

/// Edge interaction `[[beta, 1], [1, gamma]]` of a 2-spin system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSpinParams {
    pub beta: CubicNumber,
    pub gamma: CubicNumber,
}

/// `sum_sigma prod_{uv in E} M[sigma(u)][sigma(v)]`, exactly in Q(t).
pub fn z_twospin(h: &Graph, p: &TwoSpinParams) -> Result<CubicNumber> {
    z_twospin_capped(h, p, DEFAULT_TWOSPIN_CAP)
}

pub fn z_twospin_capped(h: &Graph, p: &TwoSpinParams, cap: usize) -> Result<CubicNumber> {
    let n = h.vertex_count();
    if n > cap.min(30) {
        return Err(Error::Capacity { what: "2-spin graph".into(), size: n, cap: cap.min(30) });
    }
    // Tally assignments by (#edges with both ends 0, #edges with both ends 1).
    let mut tally: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for sigma in 0u32..(1u32 << n) {
        let (mut e00, mut e11) = (0, 0);
        for &(u, v) in h.edges() {
            match (sigma >> u & 1, sigma >> v & 1) {
                (0, 0) => e00 += 1,
                (1, 1) => e11 += 1,
                _ => {}
            }
        }
        *tally.entry((e00, e11)).or_default() += 1;
    }
    let mut z = p.beta.zero_like();
    for ((e00, e11), count) in tally {
        let term = &p.beta.pow(e00 as u64) * &p.gamma.pow(e11 as u64);
        z = &z + &term.scale(&crate::numerics::BigRational::from_integer(BigInt::from(count)));
    }
    Ok(z)
}
