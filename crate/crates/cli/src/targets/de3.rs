use diptych_core::sample::Sampler;
use diptych_core::smallcases::{
    de3_case_equations, de3_pentagram_checks, de3_pentagrams, de3_point, de3_pullback, de3_vars,
    graph_13131_elimination_is_zero, graph_13131_is_affine_space, long_equation_report, pullback_table, De3Case,
};
use diptych_core::{EquationSystem, RationalPoint};
use serde_json::json;

use super::{draw_points, point_check, Fault, NamedMatrix, Params, Target};
use crate::check::{Check, Outcome};

const SAMPLES: usize = 20;

pub struct De3;

fn case(p: &Params) -> Result<De3Case, Fault> {
    Ok(p.case()?.parse()?)
}

impl Target for De3 {
    fn name(&self) -> &'static str {
        "de3"
    }

    fn about(&self) -> &'static str {
        "the de = 3 cases: --case 3131, 1313 or 13131"
    }

    fn flags(&self) -> &'static [&'static str] {
        &["case", "matrix"]
    }

    fn matrices(&self, p: &Params) -> Result<Vec<String>, Fault> {
        let names: Vec<String> = de3_pentagrams(case(p)?).iter().map(|g| g.name.to_string()).collect();
        if names.is_empty() {
            return Err(Fault::Usage("this case has no pentagrams".into()));
        }
        Ok(names)
    }

    fn system(&self, p: &Params) -> Result<EquationSystem, Fault> {
        Ok(de3_case_equations(case(p)?)?)
    }

    fn matrix(&self, p: &Params, name: &str) -> Result<NamedMatrix, Fault> {
        let g = de3_pentagrams(case(p)?)
            .into_iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Fault::Usage(format!("no pentagram `{name}`")))?;
        Ok(NamedMatrix::plain(g.matrix))
    }

    fn points(&self, p: &Params, n: usize) -> Result<Vec<RationalPoint>, Fault> {
        let c = case(p)?;
        let mut s = Sampler::new(p.seed());
        Ok(draw_points(n, || de3_point(c, &mut s))?)
    }

    fn checks(&self, p: &Params) -> Result<Vec<Check>, Fault> {
        let c = case(p)?;
        let n = p.samples_or(SAMPLES);
        let seed = p.seed();
        let limits = p.limits;
        let points = self.points(p, n)?;
        let mut out = vec![
            Check::new("points", move || point_check(&de3_case_equations(c)?, &points)),
            Check::new("pentagrams", move || {
                let checks = de3_pentagram_checks(c)?;
                if checks.is_empty() {
                    return Ok(Outcome::Skip("no pentagrams: the case is a graph".into()));
                }
                let bad: Vec<&str> = checks.iter().filter(|k| !k.holds()).map(|k| k.name).collect();
                Ok(Outcome::check(bad.is_empty(), format!("{} pentagrams give their displays", checks.len()), || {
                    json!(bad)
                }))
            }),
            Check::new("pullback", move || {
                if !pullback_table(c).is_total() {
                    return Ok(Outcome::Fail(json!("substitution table does not cover every coordinate of W")));
                }
                let r = de3_pullback(c, n, seed, limits)?;
                let how = match &r.membership {
                    Some(_) => "ideal membership and points",
                    None => "points only, membership past the step cap",
                };
                Ok(Outcome::check(r.holds(), format!("{} images of W, {how}", r.images.len()), || {
                    let not_members: Vec<&str> = match &r.membership {
                        Some(m) => {
                            r.images.iter().zip(m).filter(|(_, ok)| !**ok).map(|((l, _), _)| l.as_str()).collect()
                        }
                        None => vec![],
                    };
                    json!({ "not_members": not_members, "point_failures": r.point_failures })
                }))
            }),
        ];
        match c {
            De3Case::ThreeOneThreeOne => out.push(Check::new("pullback/s1v1", move || {
                let r = de3_pullback(c, 1, seed, limits)?;
                let want = de3_vars(c).poly("x1 - x0*x2 + A*B^2*M");
                let got = r.image("s1v1").cloned();
                let ok = got.as_ref().is_some_and(|g| g.same_up_to_sign(&want));
                Ok(Outcome::check(ok, format!("{want}"), || json!({ "image": got.map(|g| g.to_string()) })))
            })),
            De3Case::OneThreeOneThree => out.push(Check::new("long-equation", move || {
                let r = long_equation_report(limits)?;
                Ok(Outcome::check(r.holds(), "saturation and elimination agree", || json!(format!("{r:?}"))))
            })),
            De3Case::OneThreeOneThreeOne => {
                out.push(Check::new("graph/substitution", move || {
                    Ok(Outcome::check(graph_13131_is_affine_space()?, "a graph over A^6", || json!("not a graph")))
                }));
                out.push(Check::new("graph/elimination", move || {
                    Ok(Outcome::check(graph_13131_elimination_is_zero(limits)?, "elimination ideal is zero", || {
                        json!("nonzero elimination ideal")
                    }))
                }));
            }
        }
        Ok(out)
    }
}
