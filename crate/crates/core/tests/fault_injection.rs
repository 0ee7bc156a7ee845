//! Every criterion must notice a perturbed frozen value. A known gap does not
//! count as noticing.

use hcgl::selftest::{run, SelftestOptions, CRITERIA};

#[test]
fn each_criterion_fails_when_corrupted() {
    for c in CRITERIA.iter() {
        let r = run(&SelftestOptions { only: Some(vec![c.id]), corrupt: Some(c.id) }).remove(0);
        assert!(!r.passed, "criterion {} passed with a corrupted value: {}", c.id, r.detail);
        assert!(r.known_gap.is_none(), "criterion {} hid the corruption behind its gap", c.id);
    }
}

#[test]
fn corruption_is_local() {
    let r = run(&SelftestOptions { only: Some(vec![5]), corrupt: Some(6) }).remove(0);
    assert!(r.passed, "{}", r.detail);
}
