use diptych_core::groebner::{buchberger_with, TermOrder};
use diptych_core::polar::{
    bottom_block_pfaffians, compare_pfaffians, contraction_matches_recurrence, gl2_transform, pfaffians_same_ideal,
    vk_equations, vk_printed_matrix, vk_sample_point, vk_sections, vk_skew_matrix, vk_typical_point, wd_displayed,
    wd_equations, wd_identities, wd_matrix, wd_parametrize, wd_w2_form, Gl2Action, VkSpec, WdParams, WdSpec,
};
use diptych_core::sample::Sampler;
use diptych_core::smallcases::k2_point;
use diptych_core::{EquationSystem, RationalPoint};
use num_traits::Zero;
use serde_json::json;

use super::{draw_points, point_check, Fault, NamedMatrix, Params, Target};
use crate::check::{Check, Outcome};

/// Points drawn by `verify vk` unless `--samples` says otherwise.
const VK_SAMPLES: usize = 200;
const WD_SAMPLES: usize = 100;
const WD_IDENTITY_SAMPLES: usize = 50;
/// Ideal-level checks run up to these sizes.
const VK_IDEAL_MAX: usize = 8;
const WD_IDEAL_MAX: usize = 3;

pub struct Vk;

fn vk_spec(p: &Params) -> Result<VkSpec, Fault> {
    Ok(VkSpec::new(p.k()?)?)
}

impl Target for Vk {
    fn name(&self) -> &'static str {
        "vk"
    }

    fn about(&self) -> &'static str {
        "the 5-fold V(k) by equations (I) and (II), k >= 3"
    }

    fn flags(&self) -> &'static [&'static str] {
        &["k", "matrix"]
    }

    fn matrices(&self, p: &Params) -> Result<Vec<String>, Fault> {
        let k = vk_spec(p)?.k();
        let mut out = vec!["skew".to_string()];
        if vk_printed_matrix(k).is_some() {
            out.push("printed".into());
        }
        Ok(out)
    }

    fn system(&self, p: &Params) -> Result<EquationSystem, Fault> {
        Ok(vk_equations(vk_spec(p)?)?)
    }

    fn matrix(&self, p: &Params, name: &str) -> Result<NamedMatrix, Fault> {
        let spec = vk_spec(p)?;
        let m = match name {
            "printed" => vk_printed_matrix(spec.k()).ok_or_else(|| Fault::Usage("no printed matrix".into()))?,
            _ => vk_skew_matrix(spec)?,
        };
        Ok(NamedMatrix::plain(m))
    }

    fn points(&self, p: &Params, n: usize) -> Result<Vec<RationalPoint>, Fault> {
        let spec = vk_spec(p)?;
        let mut s = Sampler::new(p.seed());
        Ok(draw_points(n, || vk_sample_point(spec, &mut s))?)
    }

    fn checks(&self, p: &Params) -> Result<Vec<Check>, Fault> {
        let spec = vk_spec(p)?;
        let k = spec.k();
        let limits = p.limits;
        let points = self.points(p, p.samples_or(VK_SAMPLES))?;
        let mut out = vec![
            Check::new("pfaffians/literal-set", move || {
                let c = compare_pfaffians(spec)?;
                Ok(Outcome::check(
                    c.sets_equal(),
                    format!("{} Pfaffians = {} equations", c.pfaffians, c.equations),
                    || {
                        json!({
                            "pfaffians": c.pfaffians,
                            "equations": c.equations,
                            "only_pfaffians": c.only_pfaffians,
                            "only_equations": c.only_equations,
                        })
                    },
                ))
            }),
            Check::new("points/parametrized", move || point_check(&vk_equations(spec)?, &points)),
            Check::new("points/typical", move || point_check(&vk_equations(spec)?, &[vk_typical_point(spec)])),
            Check::new("sections", move || {
                let eqs = vk_equations(spec)?;
                let pf = vk_skew_matrix(spec)?.all_pfaffians4("Pf");
                let r = vk_sections(spec, &[&eqs, &pf], &eqs)?;
                Ok(Outcome::check(r.passed(), format!("{} generators divisible by g", r.z_checked), || {
                    json!({
                        "z_failures": r.z_failures,
                        "azc_images": r.azc_images,
                        "azc_expected": r.azc_expected,
                    })
                }))
            }),
            Check::new("apolarity/recurrence", move || {
                Ok(Outcome::check(contraction_matches_recurrence(spec)?, "contraction gives (I)", || {
                    json!("contraction of the second polar differs from the recurrence")
                }))
            }),
        ];
        out.push(if k <= VK_IDEAL_MAX {
            Check::new("pfaffians/ideal", move || {
                Ok(Outcome::check(pfaffians_same_ideal(spec, limits)?, "same ideal", || {
                    json!("Pfaffians and (I)+(II) generate different ideals")
                }))
            })
        } else {
            Check::skip("pfaffians/ideal", format!("ideal comparison runs for k <= {VK_IDEAL_MAX}"))
        });
        out.push(match vk_printed_matrix(k) {
            Some(pm) => Check::new("matrix/printed", move || {
                let d = pm.differences(&vk_skew_matrix(spec)?);
                Ok(Outcome::check(d.is_empty(), "entrywise equal", || json!({ "differing_entries": d })))
            }),
            None => Check::skip("matrix/printed", "hard-coded for k = 3, 4, 5 only"),
        });
        out.push(if k >= 5 {
            Check::new("pfaffians/bottom-block", move || {
                let b = bottom_block_pfaffians(spec)?;
                let bad: Vec<String> =
                    b.iter().filter(|(_, p)| !p.is_zero()).map(|(q, p)| format!("{q:?}: {p}")).collect();
                Ok(Outcome::check(bad.is_empty(), format!("{} vanish identically", b.len()), || json!(bad)))
            })
        } else {
            Check::skip("pfaffians/bottom-block", "rows >= 4 hold four indices only from k = 5")
        });
        Ok(out)
    }
}

pub struct Wd;

fn wd_spec(p: &Params) -> Result<WdSpec, Fault> {
    let d = p.d()?;
    Ok(match p.e {
        Some(e) => WdSpec::section(d, e)?,
        None => WdSpec::new(d)?,
    })
}

impl Target for Wd {
    fn name(&self) -> &'static str {
        "wd"
    }

    fn about(&self) -> &'static str {
        "W(d) by the Pfaffians of its (d+5) x (d+5) matrix; --e sets C = x1^(e-1)"
    }

    fn flags(&self) -> &'static [&'static str] {
        &["d", "e", "matrix"]
    }

    fn matrices(&self, p: &Params) -> Result<Vec<String>, Fault> {
        wd_spec(p)?;
        Ok(vec!["w".into()])
    }

    fn system(&self, p: &Params) -> Result<EquationSystem, Fault> {
        Ok(wd_equations(wd_spec(p)?)?)
    }

    fn matrix(&self, p: &Params, _name: &str) -> Result<NamedMatrix, Fault> {
        Ok(NamedMatrix::plain(wd_matrix(wd_spec(p)?)?))
    }

    fn points(&self, p: &Params, n: usize) -> Result<Vec<RationalPoint>, Fault> {
        let spec = wd_spec(p)?;
        let mut s = Sampler::new(p.seed());
        Ok(match spec.e() {
            Some(e) => draw_points(n, || k2_point(spec.d(), e, &mut s))?,
            None => draw_points(n, || wd_parametrize(spec, &WdParams::sample(&mut s)))?,
        })
    }

    fn checks(&self, p: &Params) -> Result<Vec<Check>, Fault> {
        let spec = wd_spec(p)?;
        let d = spec.d();
        let limits = p.limits;
        let points = self.points(p, p.samples_or(WD_SAMPLES))?;
        let mut out = vec![
            Check::new("displayed", move || {
                let s = wd_equations(spec)?;
                let shown = wd_displayed(spec);
                let bad: Vec<String> =
                    shown.iter().filter(|(_, q)| !s.contains_up_to_scalar(q)).map(|(l, _)| l.clone()).collect();
                Ok(Outcome::check(
                    bad.is_empty(),
                    format!("{} displayed equations are Pfaffians", shown.len()),
                    || json!({ "not_pfaffians": bad }),
                ))
            }),
            Check::new("points/parametrized", {
                let points = points.clone();
                move || point_check(&wd_equations(spec)?, &points)
            }),
        ];
        if d >= 2 {
            out.push(Check::new("w2", move || {
                let m = wd_matrix(spec)?;
                let mut bad = Vec::new();
                for i in 0..d {
                    for j in i + 1..d {
                        if m.pfaffian4(1, 2, i + 5, j + 5)? != wd_w2_form(spec, i, j)? {
                            bad.push(format!("({i},{j})"));
                        }
                    }
                }
                Ok(Outcome::check(bad.is_empty(), "Pf on rows 1, 2, i+5, j+5", || json!(bad)))
            }));
        } else {
            out.push(Check::skip("w2", "needs d >= 2"));
        }
        if spec.e().is_some() {
            let why = "identities are stated for the generic C";
            out.push(Check::skip("identities/points", why));
            out.push(Check::skip("identities/ideal", why));
            out.push(Check::skip("gl2", why));
            return Ok(out);
        }
        let id_points: Vec<RationalPoint> = points.iter().take(WD_IDENTITY_SAMPLES).cloned().collect();
        out.push(Check::new("identities/points", move || {
            let ids = wd_identities(spec)?;
            let mut bad = Vec::new();
            for (i, pt) in id_points.iter().enumerate() {
                for (l, q) in &ids {
                    if !q.evaluate(pt)?.is_zero() {
                        bad.push(json!({ "point": i, "identity": l }));
                    }
                }
            }
            let n = id_points.len();
            Ok(Outcome::check(bad.is_empty(), format!("{} identities at {n} points", ids.len()), || json!(bad)))
        }));
        out.push(if d <= WD_IDEAL_MAX {
            Check::new("identities/ideal", move || {
                let s = wd_equations(spec)?;
                let gb = buchberger_with(s.vars(), &s.polys(), &TermOrder::DegRevLex, limits)?;
                let mut bad = Vec::new();
                let ids = wd_identities(spec)?;
                for (l, q) in &ids {
                    if !gb.contains(q)? {
                        bad.push(l.clone());
                    }
                }
                Ok(Outcome::check(bad.is_empty(), format!("{} coefficients in the ideal", ids.len()), || json!(bad)))
            })
        } else {
            Check::skip("identities/ideal", format!("ideal membership runs for d <= {WD_IDEAL_MAX}"))
        });
        let gl_points: Vec<RationalPoint> = points.iter().take(10).cloned().collect();
        let seed = p.seed();
        out.push(Check::new("gl2", move || {
            let s = wd_equations(spec)?;
            let mut rng = Sampler::new(seed ^ 0x612);
            let mut bad = Vec::new();
            for (i, pt) in gl_points.iter().enumerate() {
                let lambda = rng.nonzero();
                for act in [Gl2Action::ShiftU, Gl2Action::ShiftV] {
                    let moved = gl2_transform(spec, pt, &lambda, act)?;
                    if !super::nonzero_at(&s, &moved)?.is_empty() {
                        bad.push(json!({ "point": i, "action": format!("{act:?}") }));
                    }
                }
            }
            Ok(Outcome::check(bad.is_empty(), format!("{} points moved both ways", gl_points.len()), || json!(bad)))
        }));
        Ok(out)
    }
}
