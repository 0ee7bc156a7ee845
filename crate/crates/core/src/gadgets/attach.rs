use crate::error::{Error, Result};
use crate::graphs::{ActivityVector, Gadget, Graph, GraphBuilder};
use crate::numerics::BigRational;

/// Result of trading non-uniform activities for attached gadgets.
#[derive(Clone, Debug)]
pub struct Attached {
    pub graph: Graph,
    /// How many copies of each gadget were attached, in input order.
    pub counts: Vec<usize>,
    /// For every original vertex, the index of the gadget attached there.
    pub site_gadget: Vec<Option<usize>>,
}

/// Replaces every vertex whose activity differs from `lambda` by a copy of
/// the gadget implementing that activity, terminal identified with the
/// vertex. Original vertices keep their ids.
pub fn attach_activities(
    g: &Graph,
    acts: &ActivityVector,
    lambda: &BigRational,
    gadgets: &[&Gadget],
) -> Result<Attached> {
    acts.check_len(g)?;
    for gd in gadgets {
        if &gd.lambda != lambda {
            return Err(Error::Composition(format!(
                "gadget built for lambda = {}, attaching at {lambda}",
                gd.lambda
            )));
        }
    }
    let mut b = GraphBuilder::from_graph(g);
    let mut counts = vec![0; gadgets.len()];
    let mut site_gadget = vec![None; g.vertex_count()];
    for v in 0..g.vertex_count() {
        let a = acts.get(v);
        if a == lambda {
            continue;
        }
        let j = gadgets
            .iter()
            .position(|gd| &gd.claimed_ratio == a)
            .ok_or_else(|| Error::Composition(format!("no gadget implements activity {a} (vertex {v})")))?;
        b.attach(v, &gadgets[j].graph, gadgets[j].terminal);
        counts[j] += 1;
        site_gadget[v] = Some(j);
    }
    Ok(Attached { graph: b.build()?, counts, site_gadget })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::path;
    use crate::numerics::rational::{int, rat};
    use crate::partition::{z_bruteforce, z_exact};

    #[test]
    fn attachment_scales_by_z_out() {
        // At -1/2 the minus-one gadget is P_2 with Z^out = 1/2.
        let lambda = rat(-1, 2);
        let minus = Gadget { graph: path(2).unwrap(), terminal: 0, claimed_ratio: int(-1), lambda: lambda.clone() };
        let g = path(3).unwrap();
        let acts = ActivityVector::from_vec(vec![int(-1), lambda.clone(), int(-1)]);
        let out = attach_activities(&g, &acts, &lambda, &[&minus]).unwrap();
        assert_eq!(out.counts, vec![2]);
        assert_eq!(out.site_gadget, vec![Some(0), None, Some(0)]);
        assert_eq!(out.graph.vertex_count(), 5);
        assert_eq!(out.graph.degree(0), 2);
        assert_eq!(out.graph.degree(1), 2);

        let c = z_exact(&minus.graph, &lambda, Some(0)).unwrap().z_out;
        assert_eq!(c, rat(1, 2));
        let uni = ActivityVector::uniform(5, &lambda);
        for v in 0..3 {
            let big = z_bruteforce(&out.graph, &uni, Some(v)).unwrap();
            let small = z_bruteforce(&g, &acts, Some(v)).unwrap();
            assert_eq!(big.z_in, &c * &c * &small.z_in);
            assert_eq!(big.z_out, &c * &c * &small.z_out);
        }
    }

    #[test]
    fn missing_gadget_is_a_composition_error() {
        let lambda = rat(-1, 2);
        let g = path(2).unwrap();
        let acts = ActivityVector::from_vec(vec![int(3), lambda.clone()]);
        assert!(matches!(attach_activities(&g, &acts, &lambda, &[]), Err(Error::Composition(_))));
    }
}
