use diptych_core::smallcases::{
    crazy_equation_set, crazy_scan, crazy_unprojection, expected_exceptions, floated_matrix, m1mc_matrix, m3d1_matrix,
    m3d1_substitution, missing_equation, printed_m3d1_substitution, wd_pullback_matrix, x1y0_pentagram, CrazySpec,
};
use diptych_core::{EquationSystem, RationalPoint};
use serde_json::json;

use super::{Fault, NamedMatrix, Params, Target};
use crate::check::{Check, Outcome};

pub struct Crazy;

fn spec(p: &Params) -> Result<CrazySpec, Fault> {
    Ok(CrazySpec::new(p.d()?)?)
}

/// Describes the floating factor of the extended matrix.
pub fn float_note(spec: CrazySpec) -> String {
    format!("M floats between the entries on rows {{2, 3, {}}} and the rest", spec.size())
}

impl Target for Crazy {
    fn name(&self) -> &'static str {
        "crazy"
    }

    fn about(&self) -> &'static str {
        "the k = 3, e = 1 diptych for --d >= 2, with its crazy Pfaffians"
    }

    fn flags(&self) -> &'static [&'static str] {
        &["d", "matrix"]
    }

    fn matrices(&self, p: &Params) -> Result<Vec<String>, Fault> {
        spec(p)?;
        Ok(["1mc", "floated", "m3d1", "x1y0"].map(String::from).to_vec())
    }

    fn system(&self, p: &Params) -> Result<EquationSystem, Fault> {
        Ok(crazy_equation_set(spec(p)?)?)
    }

    fn matrix(&self, p: &Params, name: &str) -> Result<NamedMatrix, Fault> {
        let s = spec(p)?;
        Ok(match name {
            "1mc" => NamedMatrix { matrix: m1mc_matrix(s)?, note: Some(float_note(s)), pfaffians: None },
            "floated" => NamedMatrix {
                matrix: floated_matrix(s)?,
                note: Some(float_note(s)),
                pfaffians: Some(crazy_equation_set(s)?),
            },
            "m3d1" => NamedMatrix::plain(m3d1_matrix(s)?),
            _ => NamedMatrix::plain(x1y0_pentagram(s)),
        })
    }

    fn points(&self, _p: &Params, _n: usize) -> Result<Vec<RationalPoint>, Fault> {
        Err(Fault::Usage("`points` is not available for crazy".into()))
    }

    fn checks(&self, p: &Params) -> Result<Vec<Check>, Fault> {
        let s = spec(p)?;
        let d = s.d();
        Ok(vec![
            Check::new("scan", move || {
                let found = crazy_scan(s)?;
                let sets: Vec<[usize; 4]> = found.iter().map(|e| e.indices).collect();
                let want = expected_exceptions(s);
                let inexact: Vec<[usize; 4]> = found.iter().filter(|e| !e.exact_division).map(|e| e.indices).collect();
                Ok(Outcome::check(
                    sets == want && inexact.is_empty(),
                    format!("{} exceptional index sets, each exactly ordinary / M", sets.len()),
                    || json!({ "found": sets, "expected": want, "inexact": inexact }),
                ))
            }),
            Check::new("missing-equation", move || {
                let miss = missing_equation(s)?;
                let ordinary = m1mc_matrix(s)?.all_pfaffians4("ordinary");
                let all = crazy_equation_set(s)?;
                // At d = 2 the ordinary Pf_{14.56} is already this equation.
                let in_ordinary = ordinary.contains_up_to_scalar(&miss);
                let ok = in_ordinary == (d == 2) && all.contains_up_to_scalar(&miss);
                Ok(Outcome::check(
                    ok,
                    format!("{miss}"),
                    || json!({ "equation": miss.to_string(), "in_ordinary": in_ordinary }),
                ))
            }),
            Check::new("m3d1/pullback", move || {
                let diff = m3d1_matrix(s)?.differences(&wd_pullback_matrix(s, &m3d1_substitution(s))?);
                Ok(Outcome::check(diff.is_empty(), "entrywise pullback of W(d-1)", || json!({ "entries": diff })))
            }),
            Check::new("m3d1/printed-substitution", move || {
                let diff = m3d1_matrix(s)?.differences(&wd_pullback_matrix(s, &printed_m3d1_substitution(s))?);
                Ok(Outcome::check(
                    !diff.is_empty(),
                    format!("printed substitution differs in {} entries (documented)", diff.len()),
                    || json!("printed substitution reproduces the matrix"),
                ))
            }),
            Check::new("unprojection", move || {
                let r = crazy_unprojection(s)?;
                Ok(Outcome::check(r.holds(), format!("{} Pfaffians in I_D0", r.pfaffians_scanned), || {
                    json!({
                        "term_failures": r.term_failures,
                        "substitution_failures": r.substitution_failures,
                        "pf_12_35": r.pf_12_35.to_string(),
                    })
                }))
            }),
        ])
    }
}
