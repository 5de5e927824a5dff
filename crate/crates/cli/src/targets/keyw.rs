use diptych_core::ring::{ratio, Rational};
use diptych_core::sample::Sampler;
use diptych_core::smallcases::{
    cyclic_shift, key_variety_degenerate_point, key_variety_equations, key_variety_parametrize,
    key_variety_sample_point, uv_values, v1_pentagram, v1_triple,
};
use diptych_core::{EquationSystem, RationalPoint};
use serde_json::json;

use super::{point_check, Fault, NamedMatrix, Params, Target};
use crate::check::{Check, Outcome};

const SAMPLES: usize = 100;

pub struct KeyW;

fn ints(v: [i64; 4]) -> [Rational; 4] {
    v.map(|x| ratio(x, 1))
}

impl Target for KeyW {
    fn name(&self) -> &'static str {
        "keyw"
    }

    fn about(&self) -> &'static str {
        "the key variety W in A^16 with its 20 generators"
    }

    fn flags(&self) -> &'static [&'static str] {
        &["matrix"]
    }

    fn matrices(&self, _p: &Params) -> Result<Vec<String>, Fault> {
        Ok(vec!["v1".into()])
    }

    fn system(&self, _p: &Params) -> Result<EquationSystem, Fault> {
        Ok(key_variety_equations()?)
    }

    fn matrix(&self, _p: &Params, _name: &str) -> Result<NamedMatrix, Fault> {
        Ok(NamedMatrix::plain(v1_pentagram()))
    }

    fn points(&self, p: &Params, n: usize) -> Result<Vec<RationalPoint>, Fault> {
        let mut s = Sampler::new(p.seed());
        Ok((0..n).map(|_| key_variety_sample_point(&mut s)).collect())
    }

    fn checks(&self, p: &Params) -> Result<Vec<Check>, Fault> {
        let points = self.points(p, p.samples_or(SAMPLES))?;
        let seed = p.seed();
        Ok(vec![
            Check::new("generators", || {
                let w = key_variety_equations()?;
                Ok(Outcome::check(w.len() == 20, "20 generators", || json!({ "count": w.len() })))
            }),
            Check::new("points/random", move || point_check(&key_variety_equations()?, &points)),
            Check::new("points/worked", || {
                let pt = key_variety_parametrize(&ints([1; 4]), &ints([1; 4]), &ratio(2, 1), &ratio(3, 1))?;
                let want =
                    [(2, 1), (3, 1), (11, 5), (7, 5), (5, 1), (28, 5), (52, 25), (9, 5)].map(|(p, q)| ratio(p, q));
                let got = uv_values(&pt);
                if got != want {
                    let shown: Vec<String> = got.iter().map(|r| r.to_string()).collect();
                    return Ok(Outcome::Fail(json!({ "uv": shown })));
                }
                point_check(&key_variety_equations()?, &[pt])
            }),
            Check::new("points/zero-s", move || {
                let mut s = Sampler::new(seed ^ 0x5);
                let mut pts = Vec::new();
                while pts.len() < 30 {
                    let a = [0; 4].map(|_| s.nonzero_int(7));
                    let mut sv = [0; 4].map(|_| s.nonzero_int(7));
                    sv[1 + pts.len() % 3] = ratio(0, 1);
                    if let Ok(pt) = key_variety_degenerate_point(&a, &sv, &s.nonzero_int(7), &s.nonzero_int(7)) {
                        pts.push(pt);
                    }
                }
                point_check(&key_variety_equations()?, &pts)
            }),
            Check::new("symmetry", || {
                let w = key_variety_equations()?;
                let shift = cyclic_shift(1);
                let mut bad = Vec::new();
                for g in w.generators() {
                    if !w.contains_up_to_scalar(&shift.apply(&g.poly)?) {
                        bad.push(g.label.clone());
                    }
                }
                Ok(Outcome::check(bad.is_empty(), "closed under (1234)", || json!(bad)))
            }),
            Check::new("pentagram/v1", || {
                let pf = v1_pentagram().all_pfaffians4("v1");
                let bad: Vec<String> =
                    v1_triple().into_iter().filter(|(_, q)| !pf.contains_up_to_scalar(q)).map(|(l, _)| l).collect();
                Ok(Outcome::check(bad.is_empty(), "the v1 triple are Pfaffians", || json!(bad)))
            }),
        ])
    }
}
