//! The acceptance suite, runnable from the library, the CLI and the test
//! harness alike.
//!
//! Each criterion compares library output with an oracle written here,
//! independently of the code under test, and with frozen values. With
//! `corrupt` set, a frozen value is deliberately perturbed so the criterion
//! must fail; this is how the checks themselves are tested.

mod criteria;
mod oracles;

use std::time::Instant;

use serde::Serialize;

pub use criteria::CRITERIA;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Set when the literal requirement cannot be met by any faithful
    /// construction; the detail explains what was checked instead.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known_gap: Option<&'static str>,
    pub millis: u128,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestOptions {
    /// Run only these criteria.
    pub only: Option<Vec<u8>>,
    /// Perturb a frozen value of this criterion.
    pub corrupt: Option<u8>,
}

pub fn run(opts: &SelftestOptions) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .filter(|c| opts.only.as_ref().is_none_or(|o| o.contains(&c.id)))
        .map(|c| run_one(c, opts.corrupt == Some(c.id)))
        .collect()
}

fn run_one(c: &criteria::Criterion, corrupt: bool) -> CriterionReport {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| (c.run)(corrupt))
        .unwrap_or_else(|_| Err(criteria::Outcome::fail("panicked")));
    let (passed, detail, known_gap) = match outcome {
        Ok(d) => (true, d, None),
        Err(o) => (false, o.detail, o.known_gap),
    };
    CriterionReport { id: c.id, title: c.title, passed, detail, known_gap, millis: start.elapsed().as_millis() }
}

/// True when every failure is a documented gap.
pub fn only_known_gaps(reports: &[CriterionReport]) -> bool {
    reports.iter().all(|r| r.passed || r.known_gap.is_some())
}
