//! Named checks, run in parallel and reported in name order.

use std::fmt::Write as _;

use diptych_core::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

/// What a single check found.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass(String),
    Fail(Value),
    Skip(String),
    DeskScale(u64),
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Pass(_) => "pass",
            Outcome::Fail(_) => "FAIL",
            Outcome::Skip(_) => "skip",
            Outcome::DeskScale(_) => "desk-scale",
        }
    }

    /// One-line detail for the summary table, cut at [`DETAIL_WIDTH`].
    fn short_detail(&self) -> String {
        let d = self.detail();
        match d.char_indices().nth(DETAIL_WIDTH) {
            Some((i, _)) => format!("{}... (full report on stderr)", &d[..i]),
            None => d,
        }
    }

    fn detail(&self) -> String {
        match self {
            Outcome::Pass(s) | Outcome::Skip(s) => s.clone(),
            Outcome::Fail(v) => match v {
                Value::String(s) => s.clone(),
                v => v.to_string(),
            },
            Outcome::DeskScale(n) => format!("step cap exceeded after {n} steps"),
        }
    }

    /// Pass when `ok`, otherwise fail with `detail`.
    pub fn check(ok: bool, pass: impl Into<String>, detail: impl FnOnce() -> Value) -> Outcome {
        if ok {
            Outcome::Pass(pass.into())
        } else {
            Outcome::Fail(detail())
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::DeskScaleExceeded { steps } => Outcome::DeskScale(steps),
            e => Outcome::Fail(json!({ "error": e.to_string() })),
        }
    }
}

const DETAIL_WIDTH: usize = 100;

type Job = Box<dyn FnOnce() -> Result<Outcome, Error> + Send>;

/// A check waiting to run.
pub struct Check {
    pub name: String,
    job: Job,
}

impl Check {
    pub fn new(name: impl Into<String>, job: impl FnOnce() -> Result<Outcome, Error> + Send + 'static) -> Self {
        Check { name: name.into(), job: Box::new(job) }
    }

    pub fn skip(name: impl Into<String>, reason: impl Into<String>) -> Self {
        let reason = reason.into();
        Check::new(name, move || Ok(Outcome::Skip(reason)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub outcome: Outcome,
}

/// Runs every check on the current rayon pool; results come back sorted by
/// name whatever the scheduling.
pub fn run_all(checks: Vec<Check>) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = checks
        .into_par_iter()
        .map(|c| CheckResult { name: c.name, outcome: (c.job)().unwrap_or_else(Outcome::from) })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub run: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub desk_scale: usize,
}

pub fn tally(results: &[CheckResult]) -> Tally {
    let mut t = Tally::default();
    for r in results {
        match r.outcome {
            Outcome::Pass(_) => t.passed += 1,
            Outcome::Fail(_) => t.failed += 1,
            Outcome::Skip(_) => t.skipped += 1,
            Outcome::DeskScale(_) => t.desk_scale += 1,
        }
    }
    t.run = results.len() - t.skipped;
    t
}

/// The summary table printed by `verify`.
pub fn summary(results: &[CheckResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(5).max(5);
    let mut s = String::new();
    let _ = writeln!(s, "{:width$}  {:10}  detail", "check", "result");
    for r in results {
        let _ = writeln!(s, "{:width$}  {:10}  {}", r.name, r.outcome.tag(), r.outcome.short_detail());
    }
    let t = tally(results);
    let _ = writeln!(
        s,
        "run {}  passed {}  failed {}  desk-scale {}  skipped {}",
        t.run, t.passed, t.failed, t.desk_scale, t.skipped
    );
    s
}

/// Machine-readable report of the checks that did not pass.
pub fn failure_report(target: &str, params: Value, results: &[CheckResult]) -> Value {
    let pick = |want: fn(&Outcome) -> Option<Value>| -> Vec<Value> {
        results.iter().filter_map(|r| want(&r.outcome).map(|d| json!({ "check": r.name, "detail": d }))).collect()
    };
    json!({
        "target": target,
        "params": params,
        "failures": pick(|o| match o { Outcome::Fail(v) => Some(v.clone()), _ => None }),
        "desk_scale": pick(|o| match o { Outcome::DeskScale(n) => Some(json!({ "steps": n })), _ => None }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_are_sorted_and_tallied() {
        let checks = vec![
            Check::new("b", || Ok(Outcome::Pass("ok".into()))),
            Check::skip("c", "not here"),
            Check::new("a", || Err(Error::DeskScaleExceeded { steps: 9 })),
            Check::new("d", || Ok(Outcome::Fail(json!("bad")))),
        ];
        let r = run_all(checks);
        let names: Vec<&str> = r.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["a", "b", "c", "d"]);
        assert_eq!(r[0].outcome, Outcome::DeskScale(9));
        let t = tally(&r);
        assert_eq!((t.run, t.passed, t.failed, t.skipped, t.desk_scale), (3, 1, 1, 1, 1));
        let rep = failure_report("x", json!({}), &r);
        assert_eq!(rep["failures"][0]["check"], "d");
        assert_eq!(rep["desk_scale"][0]["detail"]["steps"], 9);
        assert!(summary(&r).ends_with("run 3  passed 1  failed 1  desk-scale 1  skipped 1\n"));
    }
}
