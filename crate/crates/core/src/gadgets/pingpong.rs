//! Reaching every rational from 0 with `f+(x) = 1/(1+x)` and
//! `f-(x) = 1/(1-x)`, and the caterpillar that realizes such a word.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graphs::{Gadget, GraphBuilder};
use crate::numerics::rational::{self, int, rat, BigRational};

use super::certified;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Plus,
    Minus,
}

impl Step {
    /// `None` at the pole (`x = -1` for plus, `x = 1` for minus).
    pub fn apply(self, x: &BigRational) -> Option<BigRational> {
        let d = match self {
            Step::Plus => BigRational::one() + x,
            Step::Minus => BigRational::one() - x,
        };
        (!d.is_zero()).then(|| d.recip())
    }
}

pub fn f_plus(x: &BigRational) -> Option<BigRational> {
    Step::Plus.apply(x)
}

pub fn f_minus(x: &BigRational) -> Option<BigRational> {
    Step::Minus.apply(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PingPongCertificate {
    pub steps: Vec<Step>,
    #[serde(with = "rational::serde_str")]
    pub target: BigRational,
}

impl PingPongCertificate {
    /// Every iterate `x_0 = 0, x_1, ..., x_k`, failing at a pole.
    pub fn trajectory(&self) -> Result<Vec<BigRational>> {
        let mut xs = vec![BigRational::zero()];
        for (i, s) in self.steps.iter().enumerate() {
            let x = xs.last().expect("non-empty");
            let next = s
                .apply(x)
                .ok_or_else(|| Error::InvalidCertificate(format!("step {i} ({s:?}) hits the pole at {x}")))?;
            xs.push(next);
        }
        Ok(xs)
    }

    /// Replays from 0 and checks the end point.
    pub fn replay(&self) -> Result<BigRational> {
        let end = self.trajectory()?.pop().expect("non-empty");
        if end != self.target {
            return Err(Error::InvalidCertificate(format!("replay ends at {end}, not {}", self.target)));
        }
        Ok(end)
    }

    pub fn counts(&self) -> (usize, usize) {
        let plus = self.steps.iter().filter(|&&s| s == Step::Plus).count();
        (plus, self.steps.len() - plus)
    }
}

use Step::{Minus, Plus};

fn base_word(x: &BigRational) -> Option<Vec<Step>> {
    let w: &[Step] = if x.is_zero() {
        &[]
    } else if x == &int(1) {
        &[Minus]
    } else if x == &rat(1, 2) {
        &[Minus, Plus]
    } else if x == &int(2) {
        &[Plus, Plus, Minus]
    } else if x == &int(-1) {
        &[Plus, Plus, Minus, Minus]
    } else {
        return None;
    };
    Some(w.to_vec())
}

/// A word taking 0 to `rho`.
///
/// Descends from `rho` towards a base value while `|p| + |q|` shrinks,
/// remembering the forward word that undoes each descent step:
/// negative `x` came from `-x` via `f- f- f+` (which negates), `x > 1` came
/// from `f-(x)` via `f-^{-1} = f- f-`, and `0 < x < 1` came from
/// `f+^{-1}(x) = (1-x)/x` via `f+`.
pub fn pingpong_certificate(rho: &BigRational) -> PingPongCertificate {
    let mut words: Vec<&'static [Step]> = Vec::new();
    let mut x = rho.clone();
    let base = loop {
        if let Some(w) = base_word(&x) {
            break w;
        }
        if x.is_negative() {
            words.push(&[Plus, Minus, Minus]);
            x = -x;
        } else if x > int(1) {
            words.push(&[Minus, Minus]);
            x = f_minus(&x).expect("x > 1 is not a pole");
        } else {
            words.push(&[Plus]);
            x = (int(1) - &x) / &x;
        }
    };
    let mut steps = base;
    for w in words.iter().rev() {
        steps.extend_from_slice(w);
    }
    PingPongCertificate { steps, target: rho.clone() }
}

/// Size of the caterpillar for a word, given the sizes of the two gadgets.
pub fn caterpillar_size(cert: &PingPongCertificate, minus_size: usize, plus_size: usize) -> usize {
    let (p, m) = cert.counts();
    minus_size + 2 + m * minus_size + p * plus_size
}

/// Realizes `lambda * z`.
///
/// Start from the minus-one gadget with a pendant `u` on its terminal, where
/// `R = Z^out / Z = 0`. Joining the terminal of a fresh ±1 gadget to the
/// current head by an edge turns the head's `R` into `f±(R)`. A last pendant
/// on the head has ratio `lambda * R`.
pub fn implement_rational_multiple(
    delta: usize,
    lambda: &BigRational,
    z: &BigRational,
    minus_one: &Gadget,
    plus_one: &Gadget,
) -> Result<(Gadget, PingPongCertificate)> {
    let cert = pingpong_certificate(z);
    let g = caterpillar(delta, lambda, &cert, minus_one, plus_one)?;
    Ok((g, cert))
}

/// The caterpillar for an explicit certificate (replayed first).
pub fn caterpillar(
    delta: usize,
    lambda: &BigRational,
    cert: &PingPongCertificate,
    minus_one: &Gadget,
    plus_one: &Gadget,
) -> Result<Gadget> {
    if delta < 3 {
        return domain(format!("maximum degree must be at least 3, got {delta}"));
    }
    if minus_one.claimed_ratio != int(-1) || plus_one.claimed_ratio != int(1) {
        return Err(Error::Precondition("caterpillar needs the -1 and +1 gadgets".into()));
    }
    if &minus_one.lambda != lambda || &plus_one.lambda != lambda {
        return Err(Error::Composition("gadgets were built for a different lambda".into()));
    }
    let z = cert.replay()?;
    let mut b = GraphBuilder::new();
    let off = b.append(&minus_one.graph);
    let mut head = b.add_vertex();
    b.add_edge(off + minus_one.terminal, head);
    for s in &cert.steps {
        let gd = match s {
            Plus => plus_one,
            Minus => minus_one,
        };
        let off = b.append(&gd.graph);
        b.add_edge(head, off + gd.terminal);
        head = off + gd.terminal;
    }
    let v = b.add_vertex();
    b.add_edge(head, v);
    let g = Gadget { graph: b.build()?, terminal: v, claimed_ratio: lambda * z, lambda: lambda.clone() };
    certified(g, delta)
}
