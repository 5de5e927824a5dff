//! The unprojection chain `W_0 -> W_1 -> ..`: divisors, the equation that
//! adjoins each new variable, and the two certificates for `D_s in W_s`.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::weights::{divisibility_claim, solve_weights, ClaimResult, DivisorIdeal, WeightTable};
use super::{
    all_equations, bottom_equations, diptych_vars, mono, pentagram_matrix, pullback_equations, top_equations, xn,
    CaseId, DiptychCase, Pentagram,
};
use crate::error::Result;
use crate::groebner::{buchberger_with, saturate_by_variable_with, Limits, TermOrder};
use crate::ring::{Monomial, Polynomial, VarTable};

/// One unprojection: `D_s in W_s` is unprojected by adjoining `new_var`
/// through `adjoin` and saturating at `pole`.
#[derive(Clone, Debug)]
pub struct Stage {
    pub index: usize,
    pub divisor: DivisorIdeal,
    pub new_var: String,
    pub adjoin: (String, Polynomial),
    pub pole: String,
    /// Equations that must lie in `W_{s+1}`.
    pub expected: Vec<(String, Polynomial)>,
    /// Monomials whose weight class must lie in `D_s`; each is the leading
    /// term of a generator of `W_s` not already covered by the term scan.
    pub targets: Vec<Monomial>,
}

fn ideal(name: &str, gens: Vec<String>) -> DivisorIdeal {
    DivisorIdeal::new(name, gens)
}

fn xs(r: std::ops::Range<usize>) -> Vec<String> {
    r.map(xn).collect()
}

fn with(mut v: Vec<String>, extra: &[&str]) -> Vec<String> {
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn pf(case: DiptychCase, which: Pentagram, q: [usize; 4], label: &str) -> (String, Polynomial) {
    let m = pentagram_matrix(case, which).expect("pentagram exists");
    (label.to_string(), m.pfaffian4(q[0], q[1], q[2], q[3]).expect("valid indices"))
}

/// The unprojection chain of a case.
///
/// `[2,2]` and `[1,4]`-even unproject `y0` from `D0 = (x1..xk, M)` and
/// then `y2` from `D1 = (x0..x_{k-1}, y0, B)`. `[4,1]`-even unprojects
/// `y1, y0, y3, y4` from `D0 = (x1..xk, M)`, `D1 = (x1..xk, y2, M)`,
/// `D2 = (x0..x_{k-1}, y0, y1, B)`, `D3 = (x0..x_{k-1}, y0..y2, B)`.
/// `[1,4]`-odd runs the first two `[4,1]` steps on `x0..x_{k-1}`.
pub fn stages(case: DiptychCase) -> Vec<Stage> {
    let v = diptych_vars(case);
    let k = case.k();
    let n = case.vk_k();
    let m = |s: &str| monomial(&v, s);
    let bottom = bottom_equations(case);
    let top = top_equations(case);
    let gen = |sys: &crate::system::EquationSystem, l: &str| (l.to_string(), sys.get(l).expect("label").clone());
    match case.id() {
        CaseId::TwoTwo | CaseId::OneFourEven => {
            let (first, pole0) = if case.id() == CaseId::TwoTwo { ("x1y0", "x1") } else { ("x0y1", "M") };
            let other = if first == "x1y0" { "x0y1" } else { "x1y0" };
            let (top_new, top_other) = (format!("x{k}y1"), format!("x{}y2", k - 1));
            let mut exp0 = vec![gen(&bottom, other)];
            if case.id() == CaseId::TwoTwo {
                let p = Pentagram::Bottom;
                for (q, l) in [([1, 2, 3, 4], "Pf12.34"), ([1, 2, 3, 5], "Pf12.35"), ([1, 2, 4, 5], "Pf12.45")] {
                    exp0.push(pf(case, p, q, l));
                }
            }
            vec![
                Stage {
                    index: 0,
                    divisor: ideal("D0", with(xs(1..k + 1), &["M"])),
                    new_var: "y0".into(),
                    adjoin: gen(&bottom, first),
                    pole: pole0.into(),
                    expected: exp0,
                    targets: vec![],
                },
                Stage {
                    index: 1,
                    divisor: ideal("D1", with(xs(0..k), &["y0", "B"])),
                    new_var: "y2".into(),
                    adjoin: gen(&top, &top_new),
                    pole: "B".into(),
                    expected: vec![gen(&top, &top_other)],
                    targets: (1..=k).map(|i| m(&format!("x{i}*y0"))).collect(),
                },
            ]
        }
        CaseId::FourOneEven | CaseId::OneFourOdd => {
            let kk = k as u32;
            let (c, e0) = if case.id() == CaseId::FourOneEven {
                (mono(&v, &[("A", 1), ("B", 2)]), mono(&v, &[("A", kk - 1), ("B", 2 * kk - 1)]))
            } else {
                (mono(&v, &[("A", 2), ("B", 1)]), mono(&v, &[("A", 2 * kk - 3), ("B", kk - 1)]))
            };
            let (x0, x1, y0, y1, y2) = (v.var("x0"), v.var("x1"), v.var("y0"), v.var("y1"), v.var("y2"));
            let (l, mm) = (v.var("L"), v.var("M"));
            let adj0 = &(&(&x0 * &y2) - &(&c * &x1)) - &(&mm * &y1);
            let cross0 = &(&(&x1 * &y1) - &(&e0 * &y2)) - &(&(&x0.pow(2) * &l) * &mm);
            let sq = &(&(&y0 * &y2) - &y1.pow(2)) - &(&(&c * &x0.pow(2)) * &l);
            let d1 = with(xs(1..n + 1), &["y2", "M"]);
            let mut t1: Vec<Monomial> = (1..=n).map(|i| m(&format!("x{i}*y1"))).collect();
            t1.push(m("x0*y2"));
            let mut out = vec![
                Stage {
                    index: 0,
                    divisor: ideal("D0", with(xs(1..n + 1), &["M"])),
                    new_var: "y1".into(),
                    adjoin: ("x0y2".into(), adj0),
                    pole: "M".into(),
                    expected: vec![("x1y1".into(), cross0)],
                    targets: vec![],
                },
                Stage {
                    index: 1,
                    divisor: ideal("D1", d1),
                    new_var: "y0".into(),
                    adjoin: gen(&bottom, "x0y1"),
                    pole: "M".into(),
                    expected: vec![gen(&bottom, "x1y0"), ("y0y2".into(), sq)],
                    targets: t1,
                },
            ];
            if case.id() == CaseId::FourOneEven {
                let mir = super::mirror(case).expect("mirrored case");
                let img = |p: &Polynomial| mir.apply(p).expect("same table");
                let s0 = out[0].clone();
                let s1 = out[1].clone();
                let top_new = format!("x{k}y3");
                out.push(Stage {
                    index: 2,
                    divisor: ideal("D2", with(xs(0..k), &["y0", "y1", "B"])),
                    new_var: "y3".into(),
                    adjoin: (format!("x{k}y2"), img(&s0.adjoin.1)),
                    pole: "B".into(),
                    expected: vec![(format!("x{}y3", k - 1), img(&s0.expected[0].1))],
                    targets: vec![m(&format!("x{k}*y0")), m("y0*y2")],
                });
                out.push(Stage {
                    index: 3,
                    divisor: ideal("D3", with(xs(0..k), &["y0", "y1", "y2", "B"])),
                    new_var: "y4".into(),
                    adjoin: gen(&top, &top_new),
                    pole: "B".into(),
                    expected: vec![gen(&top, &format!("x{}y4", k - 1)), ("y2y4".into(), img(&s1.expected[1].1))],
                    targets: vec![m("y0*y3")],
                });
            }
            out
        }
    }
}

fn monomial(v: &VarTable, s: &str) -> Monomial {
    super::monomial_of(v, s).expect("monomial text")
}

/// The variables of `W_s`: those of `W_0` plus the ones adjoined before `s`.
pub fn stage_vars(case: DiptychCase, s: usize) -> Vec<String> {
    let v = diptych_vars(case);
    let pull = pullback_equations(case).expect("pullback");
    let mut used: Vec<bool> = vec![false; v.len()];
    for g in pull.generators() {
        for i in g.poly.support() {
            used[i] = true;
        }
    }
    for b in super::BASIS {
        used[v.index(b).expect("basis")] = true;
    }
    for st in stages(case).iter().take(s) {
        used[v.index(&st.new_var).expect("new var")] = true;
    }
    (0..v.len()).filter(|&i| used[i]).map(|i| v.name(i).to_string()).collect()
}

/// Variables of `W_s` outside `D_s`, together with the four basis
/// variables: the monomials a weight class has to be searched over.
pub fn allowed_for(case: DiptychCase, stage: &Stage) -> Vec<String> {
    stage_vars(case, stage.index)
        .into_iter()
        .filter(|n| super::BASIS.contains(&n.as_str()) || !stage.divisor.generators.contains(n))
        .collect()
}

/// Explicit generators known on `W_s`: the pullback, plus for every earlier
/// stage its adjoining equation and its expected equations.
pub fn explicit_generators(case: DiptychCase, s: usize) -> Result<Vec<(String, Polynomial)>> {
    let mut out: Vec<(String, Polynomial)> =
        pullback_equations(case)?.generators().iter().map(|g| (g.label.clone(), g.poly.clone())).collect();
    for st in stages(case).into_iter().take(s) {
        out.push(st.adjoin.clone());
        out.extend(st.expected.iter().cloned());
    }
    Ok(out)
}

/// Result of checking `D_s in W_s` on explicit generators and by weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentReport {
    pub case: CaseId,
    pub k: usize,
    pub stage: usize,
    pub divisor: String,
    pub generators_scanned: usize,
    /// Labels of explicit generators with a term outside the divisor.
    pub term_failures: Vec<String>,
    pub claims: Vec<ClaimResult>,
}

impl ContainmentReport {
    pub fn holds(&self) -> bool {
        self.term_failures.is_empty() && self.claims.iter().all(|c| c.holds())
    }
}

/// Default enumeration cap: total degree `4k + 8`.
pub fn default_cap(case: DiptychCase) -> u32 {
    4 * case.k() as u32 + 8
}

/// Weight table of a case, solved from the homogeneity of
/// [`all_equations`].
pub fn weight_table(case: DiptychCase) -> Result<WeightTable> {
    let sys = all_equations(case)?;
    solve_weights(sys.vars(), &sys.polys())
}

/// Direct part: every term of every explicit generator of `W_s` lies in
/// `D_s`. Weight part: every target's weight class lies in `D_s`.
pub fn divisor_containment(case: DiptychCase, stage: usize) -> Result<ContainmentReport> {
    let st = stages(case)
        .into_iter()
        .find(|s| s.index == stage)
        .ok_or_else(|| crate::Error::BadIndex(format!("{} has no stage {stage}", case.id())))?;
    let table = weight_table(case)?;
    containment_with(case, &st, &table)
}

pub(crate) fn containment_with(case: DiptychCase, st: &Stage, table: &WeightTable) -> Result<ContainmentReport> {
    let gens = explicit_generators(case, st.index)?;
    let mut term_failures = Vec::new();
    for (l, p) in &gens {
        if !st.divisor.contains(p)? {
            term_failures.push(l.clone());
        }
    }
    let allowed = allowed_for(case, st);
    let allowed: Vec<&str> = allowed.iter().map(|s| s.as_str()).collect();
    let claims = divisibility_claim(table, &st.divisor, &st.targets, &allowed, default_cap(case))?;
    Ok(ContainmentReport {
        case: case.id(),
        k: case.k(),
        stage: st.index,
        divisor: st.divisor.name.clone(),
        generators_scanned: gens.len(),
        term_failures,
        claims,
    })
}

/// Every stage of a case, checked in parallel.
pub fn all_containments(case: DiptychCase) -> Result<Vec<ContainmentReport>> {
    let table = weight_table(case)?;
    stages(case).par_iter().map(|st| containment_with(case, st, &table)).collect()
}

/// Outcome of computing the stage ideals by Gröbner bases.
#[derive(Clone, Debug)]
pub struct StageCertificate {
    pub stage: usize,
    pub divisor: String,
    /// Generators of a Gröbner basis of `W_s` with a term outside `D_s`.
    pub outside_divisor: Vec<String>,
    /// For each expected equation, the pole power `N` of its certificate
    /// (`0` when tested in the saturation itself); `None` when not a member.
    pub pole_powers: Vec<(String, Option<u32>)>,
    /// Whether `W_{s+1}` was computed; otherwise the expected equations were
    /// certified by [`clear_new_variable`] against `W_s`.
    pub saturated: bool,
    pub basis_size: usize,
    pub elapsed: Duration,
}

impl StageCertificate {
    pub fn holds(&self) -> bool {
        self.outside_divisor.is_empty() && self.pole_powers.iter().all(|(_, n)| n.is_some())
    }

    pub fn missing(&self) -> Vec<&str> {
        self.pole_powers.iter().filter(|(_, n)| n.is_none()).map(|(l, _)| l.as_str()).collect()
    }
}

/// Runs the unprojection chain with Gröbner bases: `W_0` is the pullback,
/// `W_{s+1} = (W_s + adjoin_s) : pole_s^inf`. For each stage, certifies
/// `I_{W_s} in I_{D_s}` by scanning a generating set of `W_s`. The expected
/// equations are tested in `W_{s+1}` directly, except on the last stage,
/// where the saturation is skipped and [`clear_new_variable`] is used
/// instead. Only feasible at small `k`.
pub fn groebner_chain(case: DiptychCase, limits: Limits) -> Result<Vec<StageCertificate>> {
    let v = diptych_vars(case);
    let mut current: Vec<Polynomial> = pullback_equations(case)?.polys();
    let all = stages(case);
    let mut out = Vec::new();
    for (pos, st) in all.iter().enumerate() {
        let start = Instant::now();
        let gb = buchberger_with(&v, &current, &TermOrder::DegRevLex, limits)?;
        let mut outside = Vec::new();
        for g in gb.generators() {
            if !st.divisor.contains(g)? {
                outside.push(g.to_string());
            }
        }
        let last = pos + 1 == all.len();
        let mut pole_powers = Vec::new();
        let test = if last {
            for (l, e) in &st.expected {
                let (n, cleared) = clear_new_variable(st, e)?;
                pole_powers.push((l.clone(), gb.contains(&cleared)?.then_some(n)));
            }
            gb
        } else {
            let mut next = gb.generators().to_vec();
            next.push(st.adjoin.1.clone());
            let sat = saturate_by_variable_with(&v, &next, &st.pole, limits)?;
            let test = buchberger_with(&v, &sat, &TermOrder::DegRevLex, limits)?;
            for (l, e) in &st.expected {
                pole_powers.push((l.clone(), test.contains(e)?.then_some(0)));
            }
            test
        };
        let saturated = !last;
        out.push(StageCertificate {
            stage: st.index,
            divisor: st.divisor.name.clone(),
            outside_divisor: outside,
            pole_powers,
            saturated,
            basis_size: test.len(),
            elapsed: start.elapsed(),
        });
        current = test.generators().to_vec();
    }
    Ok(out)
}

/// Clears the new variable from `e`: with `adjoin = c * new + r` and `c`
/// a scalar multiple of the pole, returns `(n, c^n e(new = -r/c))` for
/// `n = deg_new e`. Membership of the result in `W_s` puts `pole^n e` in
/// `W_s + adjoin`, hence `e` in the saturation `W_{s+1}`.
pub fn clear_new_variable(st: &Stage, e: &Polynomial) -> Result<(u32, Polynomial)> {
    let vars = e.vars();
    let new = vars.require(&st.new_var)?;
    let pole = vars.require(&st.pole)?;
    let parts = st.adjoin.1.collect(&[new]);
    let coeff = st.adjoin.1.coefficient_in(&[new], &[1]);
    let bad = || crate::Error::InvalidParameter(format!("adjoin equation of stage {} is not pole-linear", st.index));
    if parts.iter().any(|(d, _)| d[0] > 1) || coeff.len() != 1 || coeff.support() != vec![pole] {
        return Err(bad());
    }
    let rest = -&st.adjoin.1.coefficient_in(&[new], &[0]);
    let n = e.collect(&[new]).iter().map(|(d, _)| d[0]).max().unwrap_or(0);
    let mut acc = Polynomial::zero(vars);
    for (d, c) in e.collect(&[new]) {
        let j = d[0];
        acc = &acc + &(&(&c * &rest.pow(j)) * &coeff.pow(n - j));
    }
    Ok((n, acc))
}

/// The ideal `W_s` by Gröbner basis, `s` unprojections after the pullback.
pub fn stage_ideal(case: DiptychCase, s: usize, limits: Limits) -> Result<Vec<Polynomial>> {
    let v = diptych_vars(case);
    let mut current = pullback_equations(case)?.polys();
    for st in stages(case).into_iter().take(s) {
        current.push(st.adjoin.1.clone());
        current = saturate_by_variable_with(&v, &current, &st.pole, limits)?;
    }
    Ok(buchberger_with(&v, &current, &TermOrder::DegRevLex, limits)?.generators().to_vec())
}
