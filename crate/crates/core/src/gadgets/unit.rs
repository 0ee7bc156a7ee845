//! Gadgets for the activities -1 and +1.

use crate::error::{domain, Error, Result};
use crate::graphs::{path, ActivityVector, Gadget, Graph};
use crate::numerics::rational::{int, BigRational};

use super::attach::attach_activities;
use super::bad_set::{leaves, minimalize_zero_tree, ZeroTree};
use super::certified;

/// A gadget with ratio -1. At `lambda = -1` this is `P_4` from an endpoint
/// (`Z^in = 1`, `Z^out = -1`); otherwise a leaf of the minimalized zero tree,
/// where `Z^in + Z^out = 0` and minimality keeps `Z^out` nonzero.
pub fn implement_minus_one(delta: usize, lambda: &BigRational, zt: Option<&ZeroTree>) -> Result<Gadget> {
    if delta < 3 {
        return domain(format!("maximum degree must be at least 3, got {delta}"));
    }
    if lambda == &int(-1) {
        let g = Gadget { graph: path(4)?, terminal: 0, claimed_ratio: int(-1), lambda: lambda.clone() };
        return certified(g, delta);
    }
    let zt = zt.ok_or_else(|| Error::Precondition(format!("a zero tree is needed at lambda = {lambda}")))?;
    if &zt.lambda != lambda {
        return Err(Error::Precondition(format!("zero tree is for {}, not {lambda}", zt.lambda)));
    }
    if zt.max_degree > delta {
        return Err(Error::Precondition(format!("zero tree has degree {} > {delta}", zt.max_degree)));
    }
    let t = minimalize_zero_tree(zt)?;
    let terminal = *leaves(&t.tree)
        .first()
        .ok_or_else(|| Error::Precondition("minimal zero tree has no leaf".into()))?;
    certified(Gadget { graph: t.tree, terminal, claimed_ratio: int(-1), lambda: lambda.clone() }, delta)
}

/// The nine-vertex template: a 6-cycle 3-4-5-8-7-6 with the tail 0-1-2-3.
/// Vertices 1, 2, 5, 6, 8 carry activity -1, the rest `lambda`; the terminal
/// is 0. Then `Z^in = Z^out = -lambda^2` at the terminal.
pub fn plus_one_template(lambda: &BigRational) -> (Graph, ActivityVector) {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 8), (3, 6), (6, 7), (7, 8)];
    let g = Graph::new(9, edges).expect("template is simple");
    let m = int(-1);
    let acts = [lambda, &m, &m, lambda, lambda, &m, &m, lambda, &m].map(Clone::clone);
    (g, ActivityVector::from_vec(acts.to_vec()))
}

/// The template with a copy of `minus_one` on each of its -1 vertices.
pub fn implement_plus_one(delta: usize, lambda: &BigRational, minus_one: &Gadget) -> Result<Gadget> {
    if minus_one.claimed_ratio != int(-1) || &minus_one.lambda != lambda {
        return Err(Error::Precondition("implement_plus_one needs a minus-one gadget at the same lambda".into()));
    }
    let (g, acts) = plus_one_template(lambda);
    // Where -1 coincides with lambda nothing is attached.
    let out = attach_activities(&g, &acts, lambda, &[minus_one])?;
    certified(Gadget { graph: out.graph, terminal: 0, claimed_ratio: int(1), lambda: lambda.clone() }, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::bad_set::zero_path;
    use crate::numerics::rational::rat;
    use crate::partition::{z_blocks, z_bruteforce};

    #[test]
    fn template_identity() {
        for l in [int(-1), rat(-1, 2), int(-2), rat(-3, 10), rat(-7, 8)] {
            let (g, acts) = plus_one_template(&l);
            let s = z_bruteforce(&g, &acts, Some(0)).unwrap();
            assert_eq!(s.z_in, -(&l * &l));
            assert_eq!(s.z_out, -(&l * &l));
        }
    }

    #[test]
    fn minus_one_examples() {
        let g = implement_minus_one(3, &int(-1), None).unwrap();
        assert_eq!(g.vertex_count(), 4);
        let l = rat(-1, 2);
        let g = implement_minus_one(3, &l, Some(&zero_path(&l).unwrap())).unwrap();
        assert_eq!((g.vertex_count(), g.terminal), (2, 0));
        let l = rat(-1, 3);
        let g = implement_minus_one(3, &l, Some(&zero_path(&l).unwrap())).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert!(matches!(implement_minus_one(3, &l, None), Err(Error::Precondition(_))));
        assert!(implement_minus_one(2, &int(-1), None).is_err());
    }

    #[test]
    fn plus_one_at_minus_one() {
        let l = int(-1);
        let m = implement_minus_one(3, &l, None).unwrap();
        let p = implement_plus_one(3, &l, &m).unwrap();
        assert_eq!(p.vertex_count(), 9);
        assert_eq!(p.graph.max_degree(), 3);
        assert!(!p.graph.is_tree());
        let uni = ActivityVector::uniform(p.vertex_count(), &l);
        assert_eq!(z_blocks(&p.graph, &uni, Some(0)).unwrap().ratio().unwrap(), int(1));
        assert_eq!(z_bruteforce(&p.graph, &uni, Some(0)).unwrap().ratio().unwrap(), int(1));
    }

    #[test]
    fn plus_one_elsewhere() {
        for l in [rat(-1, 2), rat(-1, 3)] {
            let m = implement_minus_one(3, &l, Some(&zero_path(&l).unwrap())).unwrap();
            let p = implement_plus_one(3, &l, &m).unwrap();
            assert!(p.check().unwrap().passes_with_degree(3));
        }
    }
}
