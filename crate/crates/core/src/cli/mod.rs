//! JSON jobs: parsing, validation and dispatch. The `abmod` binary is a thin
//! wrapper around [`parse_spec`] and [`run_job`].

mod suites;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::change_of_variable::{module_pushforward, ChangeOfVariable};
use crate::classification::{
    empirical_l, find_l, gamma_normal_basis, invariants, presentation_theme_param,
    semisimplicity_witness, EmpiricalL, SemisimplicityWitness,
};
use crate::error::{AbError, Result};
use crate::module::{
    delta_and_depth_module, principal_jh, saturate_and_bernstein, standard_presentation, AbModule,
    FrescoPresentation,
};
use crate::rational::Rat;
use crate::series::TruncSeries;

pub use suites::{verify_suite, Case, Summary, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Invariants,
    Bernstein,
    Jh,
    Pushforward,
    Classify,
    Verify,
}

impl std::str::FromStr for Command {
    type Err = AbError;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(Value::String(s.to_string()))
            .map_err(|_| AbError::Validation(format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Presentation(FrescoPresentation),
    Module(AbModule),
}

impl Input {
    pub fn rank(&self) -> usize {
        match self {
            Input::Presentation(p) => p.rank(),
            Input::Module(m) => m.rank(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Input::Presentation(p) => p.order,
            Input::Module(m) => m.order(),
        }
    }

    pub fn module(&self) -> AbModule {
        match self {
            Input::Presentation(p) => p.module(),
            Input::Module(m) => m.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub input: Option<Input>,
    pub theta: Option<ChangeOfVariable>,
    pub order: Option<usize>,
    pub guard: Option<usize>,
    pub suite: Option<String>,
    pub seed: u64,
    pub decimal: bool,
}

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    command: Command,
    #[serde(default)]
    input: Option<Value>,
    #[serde(default)]
    theta: Option<Vec<Rat>>,
    #[serde(default)]
    order: Option<usize>,
    #[serde(default)]
    guard: Option<usize>,
    #[serde(default)]
    suite: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    decimal: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    lambda1: Rat,
    p: Vec<usize>,
    #[serde(rename = "S")]
    s: Vec<Vec<Rat>>,
    order: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    rank: usize,
    order: usize,
    action: Vec<Vec<Vec<Rat>>>,
}

fn parse_error(e: serde_json::Error) -> AbError {
    AbError::Parse(e.to_string())
}

fn parse_input(v: Value) -> Result<Input> {
    let is_pres = v.get("lambda1").is_some();
    if is_pres {
        let r: RawPresentation = serde_json::from_value(v).map_err(|e| AbError::Parse(format!("input: {e}")))?;
        if r.s.iter().any(|c| c.len() > r.order) {
            return Err(AbError::Validation("a series is longer than the order".into()));
        }
        let s = r.s.into_iter().map(|c| TruncSeries::new(c, r.order)).collect();
        Ok(Input::Presentation(FrescoPresentation::new(r.lambda1, r.p, s, r.order)?))
    } else {
        let r: RawModule = serde_json::from_value(v).map_err(|e| AbError::Parse(format!("input: {e}")))?;
        if r.action.len() != r.rank || r.action.iter().any(|row| row.len() != r.rank) {
            return Err(AbError::Validation("action must be rank × rank".into()));
        }
        if r.action.iter().flatten().any(|s| s.len() > r.order) {
            return Err(AbError::Validation("a series is longer than the order".into()));
        }
        let action = r
            .action
            .into_iter()
            .map(|row| row.into_iter().map(|c| TruncSeries::new(c, r.order)).collect())
            .collect();
        Ok(Input::Module(AbModule::new(action, r.order)))
    }
}

/// Parses and validates a JSON job. Syntax errors and malformed values
/// (including rationals such as "1/0") give `Parse`; well-formed but
/// inadmissible data gives `Validation`.
pub fn parse_spec(text: &[u8]) -> Result<JobSpec> {
    let text = std::str::from_utf8(text).map_err(|e| AbError::Parse(format!("input is not UTF-8: {e}")))?;
    let raw: RawJob = serde_json::from_str(text).map_err(parse_error)?;
    let input = raw.input.map(parse_input).transpose()?;
    let theta = raw.theta.map(ChangeOfVariable::new).transpose()?;
    let job = JobSpec {
        command: raw.command,
        input,
        theta,
        order: raw.order,
        guard: raw.guard,
        suite: raw.suite,
        seed: raw.seed.unwrap_or(DEFAULT_SEED),
        decimal: raw.decimal,
    };
    validate(&job)?;
    Ok(job)
}

pub fn validate(job: &JobSpec) -> Result<()> {
    match job.command {
        Command::Verify => {
            let name = job.suite.as_deref().unwrap_or("all");
            if !SUITES.contains(&name) {
                return Err(AbError::Validation(format!("unknown suite {name:?}")));
            }
            return Ok(());
        }
        Command::Pushforward if job.theta.is_none() => {
            return Err(AbError::Validation("pushforward needs theta".into()));
        }
        _ => {}
    }
    let input = job
        .input
        .as_ref()
        .ok_or_else(|| AbError::Validation("missing input".into()))?;
    let k = input.rank();
    let guard = job.guard.unwrap_or(k + 2);
    let order = job.order.unwrap_or(input.order());
    if order < k + guard {
        return Err(AbError::Validation(format!(
            "order {order} is below rank + guard = {}",
            k + guard
        )));
    }
    if let (Input::Module(m), Some(o)) = (input, job.order) {
        if o > m.order() {
            return Err(AbError::Validation("a module cannot be raised above its stored order".into()));
        }
    }
    Ok(())
}

fn working_input(job: &JobSpec) -> Result<Input> {
    let input = job
        .input
        .clone()
        .ok_or_else(|| AbError::Validation("missing input".into()))?;
    Ok(match (input, job.order) {
        (Input::Presentation(p), Some(o)) => Input::Presentation(p.with_order(o)),
        (Input::Module(m), Some(o)) => Input::Module(m.truncate(o)),
        (i, None) => i,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub rank: usize,
    pub lambda1: Rat,
    pub p: Vec<usize>,
    pub delta: usize,
    pub d: usize,
    pub theme_param: Option<Rat>,
    pub gamma: Option<Rat>,
    pub witness: Option<SemisimplicityWitness>,
    pub l_exponent: Option<Rat>,
    pub empirical_l: Option<EmpiricalL>,
    pub notes: Vec<String>,
}

fn classify(e: &AbModule) -> Result<ClassifyReport> {
    let (pres, _) = standard_presentation(e)?;
    let (delta, d) = delta_and_depth_module(e)?;
    let mut notes = Vec::new();
    let mut report = ClassifyReport {
        rank: e.rank(),
        lambda1: pres.lambda1.clone(),
        p: pres.p.clone(),
        delta,
        d,
        theme_param: None,
        gamma: None,
        witness: None,
        l_exponent: None,
        empirical_l: None,
        notes: Vec::new(),
    };
    match e.rank() {
        2 => match presentation_theme_param(&pres) {
            Ok(z) => report.theme_param = Some(z),
            Err(err) => notes.push(format!("theme parameter: {err}")),
        },
        3 => {
            let (p1, p2) = (pres.p[0], pres.p[1]);
            match semisimplicity_witness(&pres.lambda1, p1, p2, &pres.s[0], &pres.s[1]) {
                Ok(w) => report.witness = Some(w),
                Err(err) => notes.push(format!("witness: {err}")),
            }
            match gamma_normal_basis(&pres) {
                Ok(g) => {
                    report.gamma = Some(g.gamma);
                    if pres.lambda1 > Rat::int(2) {
                        let order = crate::classification::default_order(&pres.p);
                        report.empirical_l = Some(empirical_l(&pres.lambda1, p1, p2, order)?);
                    }
                }
                Err(err) => notes.push(format!("gamma: {err}")),
            }
        }
        _ => {}
    }
    if e.rank() <= 4 {
        match find_l(e) {
            Ok(mu) => report.l_exponent = mu,
            Err(err) => notes.push(format!("L(E): {err}")),
        }
    }
    report.notes = notes;
    Ok(report)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

/// Runs a validated job and returns its JSON report. A `verify` job whose
/// suite has failures still returns its summary; see [`report_status`].
pub fn run_job(job: &JobSpec) -> Result<Value> {
    validate(job)?;
    let mut report = match job.command {
        Command::Verify => {
            let name = job.suite.as_deref().unwrap_or("all");
            to_value(&verify_suite(name, job.seed)?)
        }
        Command::Invariants => {
            let e = working_input(job)?.module();
            to_value(&invariants(&e)?)
        }
        Command::Bernstein => {
            let input = working_input(job)?;
            let e = input.module();
            let k = e.rank();
            let sat = saturate_and_bernstein(&e, job.guard.unwrap_or(k + 1))?;
            let (roots, rest) = sat.bernstein.rational_roots();
            let mut out = json!({
                "bernstein": sat.bernstein,
                "minimal": sat.minimal,
                "roots": roots,
                "irrational_factor": if rest.degree() == Some(0) { Value::Null } else { to_value(&rest) },
            });
            if let Input::Presentation(p) = &input {
                out["matches_formula"] = Value::Bool(p.bernstein_formula() == sat.bernstein);
            }
            out
        }
        Command::Jh => {
            let e = working_input(job)?.module();
            let jh = principal_jh(&e)?;
            let (pres, basis) = standard_presentation(&e)?;
            json!({
                "exponents": jh.exponents,
                "flag_basis": jh.basis,
                "presentation": pres,
                "standard_basis": basis,
            })
        }
        Command::Pushforward => {
            let input = working_input(job)?;
            let e = input.module();
            let theta = job.theta.as_ref().expect("validated");
            let guard = job.guard.unwrap_or(e.rank() + 2);
            let f = module_pushforward(&e, theta);
            let (pres, _) = standard_presentation(&f)?;
            let target = e.order().saturating_sub(guard).min(pres.order);
            json!({
                "theta": theta.coeffs(),
                "presentation": pres.with_order(target),
            })
        }
        Command::Classify => {
            let e = working_input(job)?.module();
            to_value(&classify(&e)?)
        }
    };
    if job.decimal {
        let dec = decimal_view(&report);
        report["decimal"] = dec;
    }
    Ok(report)
}

/// 0 unless the report is a verification summary with failures.
pub fn report_status(report: &Value) -> i32 {
    match report.get("failed").and_then(Value::as_u64) {
        Some(n) if n > 0 => 1,
        _ => 0,
    }
}

/// Same tree with every rational string replaced by a float.
pub fn decimal_view(v: &Value) -> Value {
    match v {
        Value::String(s) if s.contains('/') => match s.parse::<Rat>() {
            Ok(r) => json!(r.to_f64()),
            Err(_) => v.clone(),
        },
        Value::Array(a) => Value::Array(a.iter().map(decimal_view).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, x)| (k.clone(), decimal_view(x))).collect()),
        _ => v.clone(),
    }
}

pub fn error_report(e: &AbError) -> Value {
    json!({"error": e.code(), "message": e.to_string()})
}
