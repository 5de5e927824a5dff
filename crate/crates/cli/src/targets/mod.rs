//! The varieties the CLI knows about, each behind [`Target`].

mod crazy;
mod de3;
mod diptych;
mod keyw;
mod polar;

use std::collections::BTreeMap;
use std::sync::Arc;

use diptych_core::groebner::Limits;
use diptych_core::matrix::SkewPolyMatrix;
use diptych_core::sample::DEFAULT_SEED;
use diptych_core::{EquationSystem, Error, RationalPoint};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::check::{Check, Outcome};

/// Largest `k` or `d` accepted on the command line.
pub const MAX_PARAM: usize = 40;

/// Parameters shared by all subcommands. Unset options are `None`.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub e: Option<u32>,
    pub case: Option<String>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub matrix: Option<String>,
    pub weights_only: bool,
    pub limits: Limits,
}

impl Params {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn samples_or(&self, n: usize) -> usize {
        self.samples.unwrap_or(n)
    }

    pub fn k(&self) -> Result<usize, Fault> {
        bounded("--k", self.k)
    }

    pub fn d(&self) -> Result<usize, Fault> {
        bounded("--d", self.d)
    }

    pub fn case(&self) -> Result<&str, Fault> {
        self.case.as_deref().ok_or_else(|| Fault::Usage("--case is required".into()))
    }

    /// The flags that were given, by name.
    pub fn given(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (name, set) in [
            ("k", self.k.is_some()),
            ("d", self.d.is_some()),
            ("e", self.e.is_some()),
            ("case", self.case.is_some()),
            ("matrix", self.matrix.is_some()),
            ("weights-only", self.weights_only),
        ] {
            if set {
                out.push(name);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "d": self.d,
            "e": self.e,
            "case": self.case,
            "samples": self.samples,
            "seed": self.seed(),
            "matrix": self.matrix,
            "weights_only": self.weights_only,
            "step_cap": self.limits.step_cap,
        })
    }
}

fn bounded(flag: &str, v: Option<usize>) -> Result<usize, Fault> {
    match v {
        None => Err(Fault::Usage(format!("{flag} is required"))),
        Some(n) if n > MAX_PARAM => Err(Fault::Usage(format!("{flag} {n} is above the limit {MAX_PARAM}"))),
        Some(n) => Ok(n),
    }
}

/// Why a command could not produce its output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fault {
    Usage(String),
    DeskScale(u64),
    Failed(String),
}

impl From<Error> for Fault {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::BadIndex(_) => Fault::Usage(e.to_string()),
            Error::DeskScaleExceeded { steps } => Fault::DeskScale(steps),
            e => Fault::Failed(e.to_string()),
        }
    }
}

/// A skew matrix picked by `--matrix`, with an optional note for exporters.
pub struct NamedMatrix {
    pub matrix: SkewPolyMatrix,
    pub note: Option<String>,
    /// Equations to report instead of the ordinary Pfaffians.
    pub pfaffians: Option<EquationSystem>,
}

impl NamedMatrix {
    pub fn plain(matrix: SkewPolyMatrix) -> Self {
        NamedMatrix { matrix, note: None, pfaffians: None }
    }
}

pub type Rows = Vec<(String, Value)>;

pub trait Target: Send + Sync {
    fn name(&self) -> &'static str;

    fn about(&self) -> &'static str;

    /// Flags the target reads, besides the common ones.
    fn flags(&self) -> &'static [&'static str];

    /// Names accepted by `--matrix`, the first being the default.
    fn matrices(&self, p: &Params) -> Result<Vec<String>, Fault>;

    fn system(&self, p: &Params) -> Result<EquationSystem, Fault>;

    fn matrix(&self, p: &Params, name: &str) -> Result<NamedMatrix, Fault>;

    fn points(&self, p: &Params, n: usize) -> Result<Vec<RationalPoint>, Fault>;

    fn weights(&self, _p: &Params) -> Result<Rows, Fault> {
        Err(Fault::Usage(format!("`weights` is not available for {}", self.name())))
    }

    fn checks(&self, p: &Params) -> Result<Vec<Check>, Fault>;

    /// Rejects flags the target does not read.
    fn validate(&self, p: &Params) -> Result<(), Fault> {
        for f in p.given() {
            if !self.flags().contains(&f) {
                return Err(Fault::Usage(format!("--{f} does not apply to {}", self.name())));
            }
        }
        Ok(())
    }

    fn pick_matrix(&self, p: &Params) -> Result<NamedMatrix, Fault> {
        let names = self.matrices(p)?;
        let name = match &p.matrix {
            Some(m) if names.contains(m) => m.clone(),
            Some(m) => {
                return Err(Fault::Usage(format!(
                    "unknown matrix `{m}` for {}; expected one of {}",
                    self.name(),
                    names.join(", ")
                )))
            }
            None => names[0].clone(),
        };
        self.matrix(p, &name)
    }
}

/// Targets by name.
pub struct Registry {
    targets: BTreeMap<&'static str, Arc<dyn Target>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { targets: BTreeMap::new() }
    }

    pub fn register(&mut self, t: Arc<dyn Target>) {
        self.targets.insert(t.name(), t);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Target>> {
        self.targets.get(name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.targets.keys().copied().collect()
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register(Arc::new(polar::Vk));
        r.register(Arc::new(polar::Wd));
        r.register(Arc::new(crazy::Crazy));
        r.register(Arc::new(diptych::Diptych));
        r.register(Arc::new(de3::De3));
        r.register(Arc::new(keyw::KeyW));
        r
    }
}

/// Labels of the generators of `sys` that do not vanish at `pt`.
pub(crate) fn nonzero_at(sys: &EquationSystem, pt: &RationalPoint) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for g in sys.generators() {
        if !g.poly.evaluate(pt)?.is_zero() {
            out.push(g.label.clone());
        }
    }
    Ok(out)
}

/// Every point annihilates every generator.
pub(crate) fn point_check(sys: &EquationSystem, points: &[RationalPoint]) -> Result<Outcome, Error> {
    let mut bad = Vec::new();
    for (i, pt) in points.iter().enumerate() {
        let labels = nonzero_at(sys, pt)?;
        if !labels.is_empty() {
            bad.push(json!({ "point": i, "nonvanishing": labels }));
        }
    }
    let n = points.len();
    let g = sys.len();
    Ok(Outcome::check(bad.is_empty(), format!("{n} points x {g} generators"), || json!(bad)))
}

/// Draws `n` points, redrawing when `draw` reports a zero denominator.
pub(crate) fn draw_points(
    n: usize,
    mut draw: impl FnMut() -> Result<RationalPoint, Error>,
) -> Result<Vec<RationalPoint>, Error> {
    let mut out = Vec::with_capacity(n);
    let mut misses = 0;
    while out.len() < n {
        match draw() {
            Ok(p) => out.push(p),
            Err(Error::DivisionByZero) if misses < 100 * (n + 1) => misses += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
