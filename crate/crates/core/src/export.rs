//! Deterministic text output of equation systems and skew matrices, one
//! [`Exporter`] per format, looked up by name in a [`Registry`].
//!
//! Variable names are already flat (`x0`, `y12`, `a3`), so the CAS formats
//! use them unchanged; LaTeX splits a trailing digit run into a subscript.

use std::fmt::Write;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SkewPolyMatrix;
use crate::ring::{Monomial, Polynomial, Rational, VarTable};
use crate::system::EquationSystem;

/// The built-in formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExportFormat {
    Json,
    Macaulay2,
    Magma,
    Latex,
}

impl ExportFormat {
    pub const ALL: [ExportFormat; 4] =
        [ExportFormat::Json, ExportFormat::Macaulay2, ExportFormat::Magma, ExportFormat::Latex];

    pub fn name(self) -> &'static str {
        match self {
            ExportFormat::Json => "json",
            ExportFormat::Macaulay2 => "macaulay2",
            ExportFormat::Magma => "magma",
            ExportFormat::Latex => "latex",
        }
    }
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ExportFormat::Json),
            "macaulay2" | "m2" => Ok(ExportFormat::Macaulay2),
            "magma" => Ok(ExportFormat::Magma),
            "latex" | "tex" => Ok(ExportFormat::Latex),
            _ => Err(Error::InvalidParameter(format!("unknown format `{s}`"))),
        }
    }
}

/// One output format.
pub trait Exporter: Send + Sync {
    fn name(&self) -> &'static str;

    /// File extension without the dot.
    fn extension(&self) -> &'static str;

    fn system(&self, sys: &EquationSystem) -> String;

    /// The upper triangle of `m`; `note` is written as a comment line.
    fn matrix(&self, m: &SkewPolyMatrix, note: Option<&str>) -> String;
}

/// Exporters by name, in registration order.
pub struct Registry {
    entries: Vec<Box<dyn Exporter>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { entries: Vec::new() }
    }

    /// Replaces any exporter of the same name.
    pub fn register(&mut self, e: Box<dyn Exporter>) {
        self.entries.retain(|x| x.name() != e.name());
        self.entries.push(e);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Exporter> {
        self.entries.iter().find(|e| e.name() == name).map(|e| e.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(Json));
        r.register(Box::new(Macaulay2));
        r.register(Box::new(Magma));
        r.register(Box::new(Latex));
        r
    }
}

fn exporter(fmt: ExportFormat) -> Box<dyn Exporter> {
    match fmt {
        ExportFormat::Json => Box::new(Json),
        ExportFormat::Macaulay2 => Box::new(Macaulay2),
        ExportFormat::Magma => Box::new(Magma),
        ExportFormat::Latex => Box::new(Latex),
    }
}

pub fn emit(sys: &EquationSystem, fmt: ExportFormat) -> String {
    exporter(fmt).system(sys)
}

pub fn emit_matrix(m: &SkewPolyMatrix, fmt: ExportFormat) -> String {
    exporter(fmt).matrix(m, None)
}

pub fn emit_matrix_annotated(m: &SkewPolyMatrix, fmt: ExportFormat, note: &str) -> String {
    exporter(fmt).matrix(m, Some(note))
}

/// `p/q` in lowest terms with `q > 0`.
pub fn rational_text(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Format(format!("bad coefficient `{s}`"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn one_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    exponents: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct JsonGenerator {
    label: String,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonSystem {
    name: String,
    variables: Vec<String>,
    generators: Vec<JsonGenerator>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    i: usize,
    j: usize,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonMatrix {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    note: Option<String>,
    size: usize,
    variables: Vec<String>,
    entries: Vec<JsonEntry>,
}

fn json_terms(p: &Polynomial) -> Vec<JsonTerm> {
    p.terms().iter().map(|(m, c)| JsonTerm { coeff: rational_text(c), exponents: m.exponents().to_vec() }).collect()
}

fn from_json_terms(v: &VarTable, terms: &[JsonTerm]) -> Result<Polynomial> {
    let mut out = Vec::new();
    for t in terms {
        if t.exponents.len() != v.len() {
            return Err(Error::Format(format!("term has {} exponents, expected {}", t.exponents.len(), v.len())));
        }
        out.push((Monomial::from_exponents(t.exponents.clone()), parse_rational(&t.coeff)?));
    }
    Ok(Polynomial::from_terms(v, out))
}

/// `{"name", "variables", "generators": [{"label", "terms": [{"coeff", "exponents"}]}]}`.
pub struct Json;

impl Exporter for Json {
    fn name(&self) -> &'static str {
        "json"
    }

    fn extension(&self) -> &'static str {
        "json"
    }

    fn system(&self, sys: &EquationSystem) -> String {
        let doc = JsonSystem {
            name: sys.name().to_string(),
            variables: sys.vars().names().to_vec(),
            generators: sys
                .generators()
                .iter()
                .map(|g| JsonGenerator { label: g.label.clone(), terms: json_terms(&g.poly) })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }

    fn matrix(&self, m: &SkewPolyMatrix, note: Option<&str>) -> String {
        let n = m.size();
        let mut entries = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if !m.upper(i, j).is_zero() {
                    entries.push(JsonEntry { i, j, terms: json_terms(m.upper(i, j)) });
                }
            }
        }
        let doc = JsonMatrix { note: note.map(String::from), size: n, variables: m.vars().names().to_vec(), entries };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}

/// Reads back the output of [`Json`] for a system.
pub fn parse_json(text: &str) -> Result<EquationSystem> {
    let doc: JsonSystem = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let v = VarTable::new(&doc.variables)?;
    let mut sys = EquationSystem::new(doc.name, &v);
    for g in &doc.generators {
        sys.push(g.label.clone(), from_json_terms(&v, &g.terms)?)?;
    }
    Ok(sys)
}

/// Reads back the output of [`Json`] for a matrix.
pub fn parse_json_matrix(text: &str) -> Result<SkewPolyMatrix> {
    let doc: JsonMatrix = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let v = VarTable::new(&doc.variables)?;
    let mut m = SkewPolyMatrix::zeros(&v, doc.size);
    for e in &doc.entries {
        if !(1 <= e.i && e.i < e.j && e.j <= doc.size) {
            return Err(Error::Format(format!("entry ({}, {}) outside the upper triangle", e.i, e.j)));
        }
        m.set(e.i, e.j, from_json_terms(&v, &e.terms)?);
    }
    Ok(m)
}

/// `R = QQ[...]`, `I = ideal(...)`, one generator per line with its label.
pub struct Macaulay2;

impl Exporter for Macaulay2 {
    fn name(&self) -> &'static str {
        "macaulay2"
    }

    fn extension(&self) -> &'static str {
        "m2"
    }

    fn system(&self, sys: &EquationSystem) -> String {
        let mut s = String::new();
        writeln!(s, "-- {}", one_line(sys.name())).unwrap();
        writeln!(s, "R = QQ[{}];", sys.vars().names().join(", ")).unwrap();
        if sys.is_empty() {
            writeln!(s, "I = ideal(0_R);").unwrap();
            return s;
        }
        writeln!(s, "I = ideal(").unwrap();
        let n = sys.len();
        for (k, g) in sys.generators().iter().enumerate() {
            writeln!(s, "  -- {}", one_line(&g.label)).unwrap();
            writeln!(s, "  {}{}", g.poly, if k + 1 < n { "," } else { "" }).unwrap();
        }
        writeln!(s, ");").unwrap();
        s
    }

    fn matrix(&self, m: &SkewPolyMatrix, note: Option<&str>) -> String {
        let mut s = String::new();
        if let Some(n) = note {
            writeln!(s, "-- {}", one_line(n)).unwrap();
        }
        writeln!(s, "R = QQ[{}];", m.vars().names().join(", ")).unwrap();
        let rows: Vec<String> = (1..=m.size())
            .map(|i| {
                let r: Vec<String> = (1..=m.size()).map(|j| m.get(i, j).to_string()).collect();
                format!("  {{{}}}", r.join(", "))
            })
            .collect();
        writeln!(s, "N = matrix(R, {{\n{}\n}});", rows.join(",\n")).unwrap();
        s
    }
}

/// `R<...> := PolynomialRing(Q, n)`, `I := ideal<R | ...>`.
pub struct Magma;

impl Exporter for Magma {
    fn name(&self) -> &'static str {
        "magma"
    }

    fn extension(&self) -> &'static str {
        "m"
    }

    fn system(&self, sys: &EquationSystem) -> String {
        let mut s = String::new();
        writeln!(s, "// {}", one_line(sys.name())).unwrap();
        writeln!(s, "Q := Rationals();").unwrap();
        let names = sys.vars().names();
        writeln!(s, "R<{}> := PolynomialRing(Q, {});", names.join(", "), names.len()).unwrap();
        if sys.is_empty() {
            writeln!(s, "I := ideal<R | 0>;").unwrap();
            return s;
        }
        writeln!(s, "I := ideal<R |").unwrap();
        let n = sys.len();
        for (k, g) in sys.generators().iter().enumerate() {
            writeln!(s, "  // {}", one_line(&g.label)).unwrap();
            writeln!(s, "  {}{}", g.poly, if k + 1 < n { "," } else { "" }).unwrap();
        }
        writeln!(s, ">;").unwrap();
        s
    }

    fn matrix(&self, m: &SkewPolyMatrix, note: Option<&str>) -> String {
        let mut s = String::new();
        if let Some(n) = note {
            writeln!(s, "// {}", one_line(n)).unwrap();
        }
        writeln!(s, "Q := Rationals();").unwrap();
        let names = m.vars().names();
        writeln!(s, "R<{}> := PolynomialRing(Q, {});", names.join(", "), names.len()).unwrap();
        let mut upper = Vec::new();
        for i in 1..=m.size() {
            for j in i + 1..=m.size() {
                upper.push(m.upper(i, j).to_string());
            }
        }
        writeln!(s, "N := UpperTriangularMatrix(R, [{}]);", upper.join(", ")).unwrap();
        s
    }
}

/// LaTeX form of a variable: `x12` becomes `x_{12}`.
pub fn latex_var(name: &str) -> String {
    let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
    if stem.is_empty() || stem.len() == name.len() {
        name.to_string()
    } else {
        format!("{stem}_{{{}}}", &name[stem.len()..])
    }
}

fn latex_monomial(m: &Monomial, v: &VarTable) -> String {
    let mut s = String::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        s.push_str(&latex_var(v.name(i)));
        if e > 1 {
            write!(s, "^{{{e}}}").unwrap();
        }
    }
    s
}

fn latex_coefficient(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// A polynomial in LaTeX, terms in descending degrevlex.
pub fn latex_poly(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let a = c.abs();
        match (k, c.is_negative()) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if m.is_one() {
            s.push_str(&latex_coefficient(&a));
        } else {
            if !a.is_one() {
                s.push_str(&latex_coefficient(&a));
            }
            s.push_str(&latex_monomial(m, p.vars()));
        }
    }
    s
}

fn latex_text(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '_' | '{' | '}' | '&' | '%' | '#' | '$' => {
                out.push('\\');
                out.push(c);
            }
            '\\' => out.push_str("\\textbackslash{}"),
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            '\n' | '\r' => out.push(' '),
            _ => out.push(c),
        }
    }
    out
}

/// `align*` with one `label & poly = 0` row per generator; matrices as a
/// `pmatrix` upper triangle with blank lower cells.
pub struct Latex;

impl Exporter for Latex {
    fn name(&self) -> &'static str {
        "latex"
    }

    fn extension(&self) -> &'static str {
        "tex"
    }

    fn system(&self, sys: &EquationSystem) -> String {
        let mut s = String::new();
        writeln!(s, "% {}", one_line(sys.name())).unwrap();
        writeln!(s, "\\begin{{align*}}").unwrap();
        let n = sys.len();
        for (k, g) in sys.generators().iter().enumerate() {
            let end = if k + 1 < n { " \\\\" } else { "" };
            writeln!(s, "  \\text{{{}}} &: {} = 0{end}", latex_text(&g.label), latex_poly(&g.poly)).unwrap();
        }
        writeln!(s, "\\end{{align*}}").unwrap();
        s
    }

    fn matrix(&self, m: &SkewPolyMatrix, note: Option<&str>) -> String {
        let mut s = String::new();
        if let Some(n) = note {
            writeln!(s, "% {}", one_line(n)).unwrap();
        }
        writeln!(s, "\\begin{{pmatrix}}").unwrap();
        let n = m.size();
        for i in 1..n {
            let cells: Vec<String> = (i + 1..=n)
                .map(|j| {
                    let e = m.upper(i, j);
                    if e.is_zero() {
                        String::new()
                    } else {
                        latex_poly(e)
                    }
                })
                .collect();
            let lead = if i > 1 { format!("{} ", "&".repeat(i - 1)) } else { String::new() };
            let end = if i + 1 < n { " \\\\" } else { "" };
            writeln!(s, "  {}{end}", format!("{lead}{}", cells.join(" & ")).trim_end()).unwrap();
        }
        writeln!(s, "\\end{{pmatrix}}").unwrap();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::{vk_equations, vk_skew_matrix, VkSpec};
    use crate::ring::ratio;

    #[test]
    fn registry_lookup() {
        let r = Registry::default();
        assert_eq!(r.names(), ["json", "macaulay2", "magma", "latex"]);
        for f in ExportFormat::ALL {
            assert_eq!(r.get(f.name()).unwrap().name(), f.name());
            assert_eq!(f.name().parse::<ExportFormat>().unwrap(), f);
        }
        assert!(r.get("maple").is_none());
        assert!("maple".parse::<ExportFormat>().is_err());
        let mut r = Registry::empty();
        r.register(Box::new(Json));
        r.register(Box::new(Json));
        assert_eq!(r.names(), ["json"]);
    }

    #[test]
    fn coefficients_are_ratios() {
        assert_eq!(rational_text(&ratio(-6, 4)), "-3/2");
        assert_eq!(rational_text(&ratio(5, 1)), "5/1");
        assert_eq!(parse_rational("4/-6").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let sys = vk_equations(VkSpec::new(4).unwrap()).unwrap();
        let text = emit(&sys, ExportFormat::Json);
        let back = parse_json(&text).unwrap();
        assert_eq!(back.name(), sys.name());
        assert_eq!(back.vars(), sys.vars());
        let pairs: Vec<_> = back.generators().iter().map(|g| (&g.label, &g.poly)).collect();
        let want: Vec<_> = sys.generators().iter().map(|g| (&g.label, &g.poly)).collect();
        assert_eq!(pairs, want);
        let v = VarTable::of(&["x", "y"]);
        let mut s = EquationSystem::new("half", &v);
        s.push("h", v.poly("1/2*x^2 - 3/7*y")).unwrap();
        assert_eq!(parse_json(&emit(&s, ExportFormat::Json)).unwrap().get("h"), s.get("h"));
        assert!(parse_json("{").is_err());
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = vk_skew_matrix(VkSpec::new(5).unwrap()).unwrap();
        let back = parse_json_matrix(&emit_matrix(&m, ExportFormat::Json)).unwrap();
        assert!(back.differences(&m).is_empty());
    }

    #[test]
    fn empty_system_everywhere() {
        let v = VarTable::of(&["x"]);
        let sys = EquationSystem::new("empty", &v);
        assert_eq!(parse_json(&emit(&sys, ExportFormat::Json)).unwrap().len(), 0);
        assert!(emit(&sys, ExportFormat::Macaulay2).contains("ideal(0_R)"));
        assert!(emit(&sys, ExportFormat::Magma).contains("ideal<R | 0>"));
        assert!(emit(&sys, ExportFormat::Latex).contains("\\end{align*}"));
    }

    #[test]
    fn latex_rendering() {
        assert_eq!(latex_var("x12"), "x_{12}");
        assert_eq!(latex_var("A"), "A");
        let v = VarTable::of(&["x0", "x1", "A"]);
        assert_eq!(latex_poly(&v.poly("x0*x1^2 - 1/2*A + 3")), "x_{0}x_{1}^{2} - \\frac{1}{2}A + 3");
        let m = vk_skew_matrix(VkSpec::new(3).unwrap()).unwrap();
        let tex = emit_matrix(&m, ExportFormat::Latex);
        let body: Vec<&str> = tex.lines().skip(1).take(4).map(str::trim).collect();
        assert_eq!(body, ["c & -b & x_{0} & x_{1} \\\\", "& a & x_{1} & x_{2} \\\\", "&& x_{2} & x_{3} \\\\", "&&& z"]);
        let zero = SkewPolyMatrix::zeros(&v, 4);
        let tex = emit_matrix(&zero, ExportFormat::Latex);
        assert!(tex.lines().all(|l| !l.chars().any(|c| c.is_alphanumeric()) || l.contains("pmatrix")));
    }
}
