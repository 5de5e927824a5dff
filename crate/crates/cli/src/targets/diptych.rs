use diptych_core::diptych::{
    all_equations, bottom_equations, deviations, diptych_point, divisor_containment, groebner_chain, mirror,
    pentagram_list, pentagram_matrix, printed_pentagram, pullback_equations, rally_equations, stages, top_equations,
    weight_deviations, weight_table, CaseId, DiptychCase, Pentagram, DOCUMENTED_DEVIATIONS,
};
use diptych_core::sample::Sampler;
use diptych_core::{EquationSystem, RationalPoint};
use serde_json::json;

use super::{draw_points, point_check, Fault, NamedMatrix, Params, Rows, Target};
use crate::check::{Check, Outcome};

const SAMPLES: usize = 20;
/// The Gröbner chain runs at this `k` only.
const CHAIN_K: usize = 3;

pub struct Diptych;

fn case(p: &Params) -> Result<DiptychCase, Fault> {
    let id: CaseId = p.case()?.parse()?;
    Ok(DiptychCase::new(id, p.k()?)?)
}

fn documented(id: CaseId, prefix: &str) -> Vec<String> {
    let mut v: Vec<String> = DOCUMENTED_DEVIATIONS
        .iter()
        .filter(|(c, item)| *c == id && item.starts_with(prefix))
        .map(|(_, item)| item.to_string())
        .collect();
    v.sort();
    v
}

/// Checks that use weights, enumeration and term scans only.
fn weight_checks(c: DiptychCase) -> Vec<Check> {
    let mut out = vec![
        Check::new("weights/homogeneous", move || {
            let t = weight_table(c)?;
            let sys = all_equations(c)?;
            let bad: Vec<&str> =
                sys.generators().iter().filter(|g| !t.is_homogeneous(&g.poly)).map(|g| g.label.as_str()).collect();
            Ok(Outcome::check(bad.is_empty(), format!("{} generators", sys.len()), || json!(bad)))
        }),
        Check::new("weights/printed-table", move || {
            let t = weight_table(c)?;
            let mut got: Vec<String> = weight_deviations(c, &t).into_iter().map(|d| d.item).collect();
            got.sort();
            let want = documented(c.id(), "weight ");
            Ok(Outcome::check(
                got == want,
                format!("{} documented deviations", want.len()),
                || json!({ "found": got, "documented": want }),
            ))
        }),
    ];
    for st in stages(c) {
        let s = st.index;
        out.push(Check::new(format!("divisibility/stage{s}"), move || {
            let r = divisor_containment(c, s)?;
            let cap = r.claims.iter().filter(|cl| !cl.certified).map(|cl| cl.target.clone()).collect::<Vec<_>>();
            Ok(Outcome::check(
                r.holds(),
                format!("{} in {}: {} generators, {} targets", st.new_var, r.divisor, r.generators_scanned, r.claims.len()),
                || {
                    json!({
                        "divisor": r.divisor,
                        "term_failures": r.term_failures,
                        "uncertified": cap,
                        "counterexamples": r.claims.iter().flat_map(|cl| cl.counterexamples.clone()).collect::<Vec<_>>(),
                    })
                },
            ))
        }));
    }
    out
}

impl Target for Diptych {
    fn name(&self) -> &'static str {
        "diptych"
    }

    fn about(&self) -> &'static str {
        "the de = 4 diptych varieties: --case 22, 41e, 14e or 14o with --k >= 3"
    }

    fn flags(&self) -> &'static [&'static str] {
        &["case", "k", "matrix", "weights-only"]
    }

    fn matrices(&self, p: &Params) -> Result<Vec<String>, Fault> {
        Ok(pentagram_list(case(p)?).iter().map(|q| q.to_string()).collect())
    }

    fn system(&self, p: &Params) -> Result<EquationSystem, Fault> {
        Ok(all_equations(case(p)?)?)
    }

    fn matrix(&self, p: &Params, name: &str) -> Result<NamedMatrix, Fault> {
        let c = case(p)?;
        let which: Pentagram = pentagram_list(c)
            .into_iter()
            .find(|q| q.to_string() == name)
            .ok_or_else(|| Fault::Usage(format!("no pentagram `{name}`")))?;
        Ok(NamedMatrix::plain(pentagram_matrix(c, which)?))
    }

    fn points(&self, p: &Params, n: usize) -> Result<Vec<RationalPoint>, Fault> {
        let c = case(p)?;
        let mut s = Sampler::new(p.seed());
        Ok(draw_points(n, || diptych_point(c, &mut s))?)
    }

    fn weights(&self, p: &Params) -> Result<Rows, Fault> {
        let t = weight_table(case(p)?)?;
        Ok(t.vars()
            .names()
            .iter()
            .map(|n| {
                let v = match t.get(n) {
                    Some(w) => json!({ "LMAB": w.to_string(), "quarters": w.quarters() }),
                    None => json!(null),
                };
                (n.clone(), v)
            })
            .collect())
    }

    fn checks(&self, p: &Params) -> Result<Vec<Check>, Fault> {
        let c = case(p)?;
        let mut out = weight_checks(c);
        if p.weights_only {
            return Ok(out);
        }
        let points = self.points(p, p.samples_or(SAMPLES))?;
        let limits = p.limits;
        out.push(Check::new("points", move || point_check(&all_equations(c)?, &points)));
        out.push(Check::new("pullback/rally", move || {
            let pull = pullback_equations(c)?;
            let mut bad = Vec::new();
            for i in 1..c.vk_k() {
                for (l, q) in rally_equations(c, i)? {
                    if !pull.contains_up_to_scalar(&q) {
                        bad.push(format!("i={i} {l}"));
                    }
                }
            }
            Ok(Outcome::check(bad.is_empty(), "every rally display is a pulled-back equation", || json!(bad)))
        }));
        out.push(if c.has_mirror() {
            Check::new("pullback/mirror", move || {
                let m = mirror(c)?;
                let top = top_equations(c);
                let mut bad = Vec::new();
                for g in bottom_equations(c).generators() {
                    if !top.contains_up_to_scalar(&m.apply(&g.poly)?) {
                        bad.push(g.label.clone());
                    }
                }
                Ok(Outcome::check(bad.is_empty(), "top cross is the mirror of the bottom", || json!(bad)))
            })
        } else {
            Check::skip("pullback/mirror", "no mirror symmetry for this case")
        });
        out.push(Check::new("pentagrams/printed", move || {
            let mut bad = Vec::new();
            let mut n = 0;
            for q in pentagram_list(c) {
                if let (Pentagram::Flat(_), Some(pm)) = (q, printed_pentagram(c, q)) {
                    n += 1;
                    if !pm.differences(&pentagram_matrix(c, q)?).is_empty() {
                        bad.push(q.to_string());
                    }
                }
            }
            Ok(Outcome::check(bad.is_empty(), format!("{n} flat pentagrams match"), || json!(bad)))
        }));
        out.push(Check::new("deviations", move || {
            let mut got: Vec<String> = deviations(c)?.into_iter().map(|d| d.item).collect();
            got.sort();
            let want = documented(c.id(), "");
            Ok(Outcome::check(
                got == want,
                format!("exactly the {} documented", want.len()),
                || json!({ "found": got, "documented": want }),
            ))
        }));
        out.push(if c.k() == CHAIN_K {
            Check::new("groebner/chain", move || {
                let certs = groebner_chain(c, limits)?;
                let bad: Vec<String> =
                    certs.iter().filter(|s| !s.holds()).map(|s| format!("stage{}", s.stage)).collect();
                Ok(Outcome::check(bad.is_empty(), format!("{} stages certified", certs.len()), || json!(bad)))
            })
        } else {
            Check::skip("groebner/chain", format!("ideal-level chain runs at k = {CHAIN_K}"))
        });
        Ok(out)
    }
}
