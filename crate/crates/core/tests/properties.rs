//! Randomized invariants across the modules.

use hcgl::gadgets::{boost, decorated_path, f_minus, f_plus, pingpong_certificate};
use hcgl::graphs::{attach_at_mapped, is_bipartite, path, ActivityVector, Graph};
use hcgl::numerics::{acos_lambda, int, rat, BigRational, CubicNumber};
use hcgl::partition::{
    path_ratio, ratio_R, z_bruteforce, z_exact, z_path_recurrence, z_tree, z_tree_uniform,
};
use hcgl::reduction::{edge_gadget, interval_i1, interval_i2};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn rational(max: i64) -> impl Strategy<Value = BigRational> {
    (-max..=max, 1..=max).prop_map(|(p, q)| rat(p, q))
}

fn nonzero_rational(max: i64) -> impl Strategy<Value = BigRational> {
    rational(max).prop_filter("nonzero", |x| !x.is_zero())
}

/// Random tree on `n` vertices as a parent array: vertex `i > 0` hangs off
/// `parent[i] < i`.
fn tree(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_n).prop_flat_map(|n| {
        (1..n).map(|i| (0..i).boxed()).collect::<Vec<_>>().prop_map(|ps| {
            let mut v = vec![0];
            v.extend(ps);
            v
        })
    })
}

fn tree_graph(parent: &[usize]) -> Graph {
    Graph::new(parent.len(), (1..parent.len()).map(|i| (parent[i], i))).unwrap()
}

/// Vertices below `root` (inclusive) in a parent-array tree, and the subtree.
fn subtree(parent: &[usize], root: usize) -> (Vec<usize>, Graph) {
    let mut keep = vec![root];
    for i in root + 1..parent.len() {
        if keep.contains(&parent[i]) {
            keep.push(i);
        }
    }
    let idx = |v: usize| keep.iter().position(|&k| k == v).unwrap();
    let edges: Vec<_> = keep.iter().skip(1).map(|&v| (idx(parent[v]), idx(v))).collect();
    let g = Graph::new(keep.len(), edges).unwrap();
    (keep, g)
}

fn pm1_ok(x: &BigRational) -> bool {
    // 0 and -1 are the poles of the composition below.
    !x.is_zero() && x != &int(-1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rational_addition_clears_denominators(p in -10_000i64..10_000, q in 1i64..10_000, r in -10_000i64..10_000, s in 1i64..10_000) {
        let lhs = (rat(p, q) + rat(r, s)) * int(q) * int(s);
        prop_assert_eq!(lhs, int(p * s + r * q));
        let prod = rat(p, q) * rat(r, s);
        prop_assert_eq!(prod * int(q * s), int(p * r));
    }

    #[test]
    fn closed_form_encloses_value_at_double_precision(
        a in rational(30), b in rational(30), c in rational(30), m in 2i64..40, prec in 40u32..120,
    ) {
        let x = CubicNumber::new(a, b, c, int(m)).unwrap();
        let coarse = x.to_approx(prec);
        let fine = x.to_approx(2 * prec);
        prop_assert!(coarse.contains(&fine.midpoint()));
        prop_assert!(fine.width() <= coarse.width());
    }

    #[test]
    fn acos_lambda_solves_its_equation(p in 1i64..200, q in 1i64..50, prec in 64u32..160) {
        let l = -rat(p, q) - rat(1, 4);
        let theta = acos_lambda(&l, prec).unwrap();
        // 4 lambda cos^2 theta + 1 must enclose zero, and tightly.
        let e = theta.cos().sqr().mul_rational(&(int(4) * &l)).add_rational(&int(1));
        prop_assert!(e.contains(&BigRational::zero()));
        let bound = (int(8) * l.abs() + int(1)) * theta.width() * int(2) + rat(1, 1 << 40);
        prop_assert!(e.width() <= bound);
    }

    #[test]
    fn pingpong_identities(x in rational(60)) {
        if pm1_ok(&x) {
            let y = f_minus(&f_minus(&f_plus(&x).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(y, -&x);
        }
        if !x.is_zero() && !x.is_one() {
            let y = f_minus(&f_minus(&x).unwrap()).unwrap();
            prop_assert_eq!(y, (&x - int(1)) / &x);
        }
        if !x.is_zero() && !x.is_one() && x != rat(1, 2) {
            let mut y = x.clone();
            for f in [f_minus, f_minus, f_plus, f_minus, f_minus] {
                y = f(&y).unwrap();
            }
            prop_assert_eq!(y, (int(1) - &x) / &x);
        }
    }

    #[test]
    fn certificates_replay_without_poles(rho in rational(60)) {
        let cert = pingpong_certificate(&rho);
        // Replay by hand: x -> 1/(1 +- x) from 0.
        let mut x = BigRational::zero();
        for s in &cert.steps {
            let d = match s {
                hcgl::gadgets::Step::Plus => int(1) + &x,
                hcgl::gadgets::Step::Minus => int(1) - &x,
            };
            prop_assert!(!d.is_zero(), "pole on the way to {}", rho);
            x = d.recip();
        }
        prop_assert_eq!(&x, &rho);
        prop_assert_eq!(cert.replay().unwrap(), rho);
    }

    #[test]
    fn attach_keeps_bipartite_and_degrees(t1 in tree(12), t2 in tree(12), u in 0usize..12, v in 0usize..12) {
        let (g1, g2) = (tree_graph(&t1), tree_graph(&t2));
        let (u, v) = (u % g1.vertex_count(), v % g2.vertex_count());
        let (g, map) = attach_at_mapped(&g1, u, &g2, v).unwrap();
        prop_assert!(is_bipartite(&g).is_some());
        prop_assert_eq!(g.vertex_count(), g1.vertex_count() + g2.vertex_count() - 1);
        for w in 0..g1.vertex_count() {
            let gain = if w == u { g2.degree(v) } else { 0 };
            prop_assert_eq!(g.degree(w), g1.degree(w) + gain);
        }
        for w in (0..g2.vertex_count()).filter(|&w| w != v) {
            prop_assert_eq!(g.degree(map[w]), g2.degree(w));
        }
    }

    #[test]
    fn additivity_across_evaluators(t in tree(14), l in rational(20), mark in 0usize..14) {
        let g = tree_graph(&t);
        let m = mark % g.vertex_count();
        let acts = ActivityVector::uniform(g.vertex_count(), &l);
        let total = z_bruteforce(&g, &acts, None).unwrap().total();
        for s in [z_tree(&g, m, &acts).unwrap(), z_bruteforce(&g, &acts, Some(m)).unwrap(), z_exact(&g, &l, Some(m)).unwrap()] {
            prop_assert_eq!(&s.z_in + &s.z_out, total.clone());
        }
    }

    #[test]
    fn zero_iff_child_ratio_product(t in tree(12), choice in 0usize..5, l in rational(6)) {
        let lambda = [int(-1), rat(-1, 2), rat(-1, 3), rat(-1, 5), l][choice].clone();
        prop_assume!(!lambda.is_zero());
        let g = tree_graph(&t);
        let z = z_tree_uniform(&g, 0, &lambda).unwrap().total();
        let children: Vec<usize> = (1..t.len()).filter(|&i| t[i] == 0).collect();
        let mut prod = BigRational::one();
        for c in children {
            let (keep, sub) = subtree(&t, c);
            match ratio_R(&sub, 0, &ActivityVector::uniform(keep.len(), &lambda)) {
                Ok(r) => prod *= r,
                // R undefined: the lemma says nothing.
                Err(_) => return Ok(()),
            }
        }
        prop_assert_eq!(z.is_zero(), prod == -lambda.recip());
    }

    #[test]
    fn regime_guard_above_threshold(p in 1i64..4_000) {
        // -4/27 < lambda < 0.
        let l = -rat(p, 27_000);
        let mut r = l.clone();
        for n in 2..200u64 {
            r = &l / (int(1) + &r);
            prop_assert!(r > int(-1), "P_{} at {}", n, l);
        }
        prop_assert_eq!(path_ratio(199, &l).unwrap(), r);
    }

    #[test]
    fn targets_satisfy_the_inequalities(choice in 0usize..4, s1 in 1i64..99, s2 in 1i64..99) {
        let lambda = [int(-1), rat(-1, 8), int(-8), rat(-1, 5)][choice].clone();
        let i1 = interval_i1(&lambda).unwrap();
        let (lo1, hi1) = (i1.low.to_f64(), i1.high.to_f64());
        let l1 = rat((lo1 * 1000.0) as i64, 1000) + (rat((hi1 * 1000.0) as i64, 1000) - rat((lo1 * 1000.0) as i64, 1000)) * rat(s1, 100);
        prop_assume!(i1.contains(&l1));
        let i2 = interval_i2(&lambda, &l1).unwrap();
        let (lo2, hi2) = (rat((i2.low.to_f64() * 1e6) as i64, 1_000_000), rat((i2.high.to_f64() * 1e6) as i64, 1_000_000));
        let l2 = &lo2 + (&hi2 - &lo2) * rat(s2, 100);
        prop_assume!(i2.contains(&l2));
        let one = int(1);
        prop_assert!(((&l1 + &one) * (&l1 + &one) + &l2).is_positive());
        prop_assert!((&one + &l2).is_positive());
        prop_assert!((&one + &l1 + &l2).is_negative());
        // edge_gadget checks its closed forms against enumeration itself.
        let eg = edge_gadget(&lambda, &l1, &l2).unwrap();
        prop_assert!(eg.z01.is_positive());
        for row in &eg.enumerated {
            prop_assert!(row.iter().all(|z| z.radicand() == eg.z01.radicand()));
        }
        prop_assert_eq!(&eg.enumerated[0][0], &eg.z00);
        prop_assert_eq!(&eg.enumerated[1][1], &eg.z11);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cubic_division_inverts_multiplication(
        a in rational(40), b in rational(40), c in rational(40),
        d in nonzero_rational(40), e in rational(40), f in rational(40),
        m in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 12, 30]),
        den in 1i64..9,
    ) {
        let r = rat(m, den);
        let x = CubicNumber::new(a, b, c, r.clone()).unwrap();
        let y = CubicNumber::new(d, e, f, r).unwrap();
        prop_assume!(!y.is_zero());
        let q = x.try_div(&y).unwrap();
        prop_assert_eq!(q.try_mul(&y).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tree_dp_matches_brute_force(t in tree(20), raw in prop::collection::vec(rational(12), 20), root in 0usize..20) {
        let g = tree_graph(&t);
        let n = g.vertex_count();
        let acts = ActivityVector::from_vec(raw[..n].to_vec());
        let r = root % n;
        prop_assert_eq!(z_tree(&g, r, &acts).unwrap(), z_bruteforce(&g, &acts, Some(r)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn boost_iterates_increase(p in 0i64..1000) {
        // lambda in [-1/4, -4/27), kept clear of the threshold so heights stay small.
        let l = rat(-1, 4) + rat(p, 1000) * rat(11, 108) * rat(4, 5);
        let br = boost(3, &l).unwrap();
        prop_assert_eq!(br.iterates.len(), br.height + 1);
        for w in br.iterates.windows(2) {
            prop_assert!(w[1] > w[0]);
        }
        // The threshold is crossed exactly at the last iterate.
        let (last, rest) = br.iterates.split_last().unwrap();
        prop_assert!(-&l * last * last >= int(1));
        for x in rest {
            prop_assert!(-&l * x * x < int(1));
        }
    }

    #[test]
    fn decorated_paths_scale(choice in 0usize..3, n in 1usize..=10) {
        let l = [rat(-1, 5), rat(-1, 4), rat(-6, 35)][choice].clone();
        let br = boost(3, &l).unwrap();
        let lh = &br.lambda_hat;
        let zt = z_tree_uniform(&br.tree, br.root, &l).unwrap().total();
        let dp = decorated_path(&br, n).unwrap();
        let pn = z_exact(&path(n).unwrap(), lh, Some(0)).unwrap();
        let gn = z_tree_uniform(&dp.g, dp.path[0], &l).unwrap();
        let s = num_traits::pow(zt, (br.delta - 2) * n);
        prop_assert_eq!(&pn.z_out * &s, gn.z_out.clone());
        prop_assert_eq!(&pn.z_in * &s, gn.z_in.clone());
        prop_assert_eq!(pn.total() * &s, gn.total());
        prop_assert_eq!(z_path_recurrence(n as u64, lh).unwrap() * &s, gn.total());
    }
}
