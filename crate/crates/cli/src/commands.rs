use std::path::{Path, PathBuf};

use hcgl::gadgets::{implement_activity_with, ImplementOptions};
use hcgl::graphs::{ActivityVector, Graph};
use hcgl::numerics::approx::default_precision;
use hcgl::numerics::rational::{self, BigRational};
use hcgl::partition::{z_exact, Activities};
use hcgl::partition::TwoSpinParams;
use hcgl::reduction::{nonuniqueness_witness, reduce, verify_reduction, ReductionOutput, TargetOptions};
use hcgl::selftest::{only_known_gaps, run, SelftestOptions};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::outcome::{CommandResult, Status};

pub type Outcome = Result<CommandResult, CommandResult>;

fn domain(msg: String) -> CommandResult {
    CommandResult::error(Status::DomainError, msg)
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CommandResult> {
    let text = std::fs::read_to_string(path).map_err(|e| domain(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| domain(format!("cannot parse {}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CommandResult> {
    let text = serde_json::to_string(value).map_err(|e| domain(format!("cannot serialize: {e}")))?;
    std::fs::write(path, text).map_err(|e| domain(format!("cannot write {}: {e}", path.display())))
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("library types serialize")
}

pub fn eval(graph: &Path, lambda: Option<&BigRational>, activities: Option<&Path>, vertex: Option<usize>) -> Outcome {
    let g: Graph = read_json(graph)?;
    let vector: Option<ActivityVector> = activities.map(read_json).transpose()?;
    let acts = match (lambda, &vector) {
        (Some(l), None) => Activities::Uniform(l),
        (None, Some(v)) => Activities::Vector(v),
        _ => return Err(domain("give exactly one of --lambda and --activities".into())),
    };
    if let Some(v) = vertex {
        g.check_vertex(v)?;
    }
    let s = z_exact(&g, acts, vertex)?;
    let mut payload = json!({ "z": s.total().to_string() });
    if vertex.is_some() {
        payload["z_in"] = json!(s.z_in.to_string());
        payload["z_out"] = json!(s.z_out.to_string());
    }
    let trace = json!({ "vertices": g.vertex_count(), "edges": g.edge_count(), "tree": g.is_tree() });
    Ok(CommandResult::ok(payload, trace))
}

pub struct ImplementArgs {
    pub delta: usize,
    pub lambda: BigRational,
    pub target: BigRational,
    pub eps: BigRational,
    pub n_max: Option<u64>,
    pub out: Option<PathBuf>,
}

pub fn implement(a: &ImplementArgs) -> Outcome {
    let mut opts = ImplementOptions::default();
    if let Some(n) = a.n_max {
        opts.n_max = n;
    }
    let imp = implement_activity_with(a.delta, &a.lambda, &a.target, &a.eps, &opts)?;
    let g = &imp.gadget;
    let mut payload = json!({
        "lambda": a.lambda.to_string(),
        "target": a.target.to_string(),
        "eps": a.eps.to_string(),
        "ratio": g.claimed_ratio.to_string(),
        "error": (&g.claimed_ratio - &a.target).to_string(),
        "vertices": g.vertex_count(),
        "edges": g.graph.edge_count(),
        "terminal": g.terminal,
        "max_degree": g.graph.max_degree(),
    });
    match &a.out {
        Some(path) => {
            write_json(path, &imp)?;
            payload["out"] = json!(path.display().to_string());
        }
        None => payload["gadget"] = to_value(g),
    }
    Ok(CommandResult::ok(payload, to_value(&imp.trace)))
}

pub struct ReduceArgs {
    pub h_graph: PathBuf,
    pub delta: usize,
    pub lambda: BigRational,
    pub lambda1: Option<BigRational>,
    pub lambda2: Option<BigRational>,
    pub eps: Option<BigRational>,
    pub out: PathBuf,
}

pub fn reduce_cmd(a: &ReduceArgs) -> Outcome {
    let h: Graph = read_json(&a.h_graph)?;
    let opts = TargetOptions {
        lambda1: a.lambda1.clone(),
        lambda2: a.lambda2.clone(),
        eps: a.eps.clone(),
        ..Default::default()
    };
    let out = reduce(&h, a.delta, &a.lambda, &opts)?;
    write_json(&a.out, &out)?;
    let witness = nonuniqueness_witness(&TwoSpinParams { beta: out.beta.clone(), gamma: out.gamma.clone() })?;
    let t = &out.targets;
    let payload = json!({
        "out": a.out.display().to_string(),
        "h_vertices": h.vertex_count(),
        "g_vertices": out.g.vertex_count(),
        "g_prime_vertices": out.g_prime.vertex_count(),
        "blowup": out.blowup().to_string(),
        "lambda1": t.lambda1.to_string(),
        "lambda2": t.lambda2.to_string(),
        "beta": to_value(&out.beta),
        "gamma": to_value(&out.gamma),
        "c": to_value(&out.c),
        "c1": out.c1.to_string(),
        "c2": out.c2.to_string(),
        "n1": out.n1,
        "n2": out.n2,
        "witness": to_value(&witness),
    });
    let trace = json!({
        "i1": to_value(&t.i1),
        "i2": to_value(&t.i2),
        "gadget1": to_value(&t.gadget1.trace),
        "gadget2": to_value(&t.gadget2.trace),
    });
    Ok(CommandResult::ok(payload, trace))
}

pub fn verify(reduction: &Path, h_graph: Option<&Path>, brute_cap: usize, out: Option<&Path>) -> Outcome {
    let r: ReductionOutput = read_json(reduction)?;
    let h: Graph = match h_graph {
        Some(p) => read_json(p)?,
        None => r.h.clone(),
    };
    let report = verify_reduction(&h, &r, brute_cap)?;
    if let Some(p) = out {
        write_json(p, &report)?;
    }
    let status = if report.passed { Status::Ok } else { Status::VerificationFailed };
    let trace = json!({ "brute_cap": brute_cap });
    Ok(CommandResult { status, payload: to_value(&report), trace })
}

pub fn selftest(only: Option<Vec<u8>>, corrupt: Option<u8>) -> Outcome {
    let reports = run(&SelftestOptions { only, corrupt });
    let status = if only_known_gaps(&reports) { Status::Ok } else { Status::VerificationFailed };
    let trace = json!({ "precision_bits": default_precision(), "corrupt": corrupt });
    Ok(CommandResult { status, payload: to_value(&reports), trace })
}
