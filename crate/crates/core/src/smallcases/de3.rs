//! The cases `de = 3` with `k = 4, 5`, built from a reduced model by
//! pentagrams, and their pullback tables from the key variety.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::{key_variety_equations, keyw_vars, resolve_graph, vanishes_on_graph};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_with, eliminate_with, saturate_by_variable_with, Limits, TermOrder};
use crate::matrix::{pf_label, quadruples, SkewPolyMatrix};
use crate::ring::{Polynomial, Rational, RationalPoint, Substitution, VarTable};
use crate::sample::Sampler;
use crate::system::EquationSystem;

/// `[3,1,3,1]`, `[1,3,1,3]` and `[1,3,1,3,1]`; the last also stands for
/// its reflection `[3,1,3,1,3]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum De3Case {
    ThreeOneThreeOne,
    OneThreeOneThree,
    OneThreeOneThreeOne,
}

impl De3Case {
    pub const ALL: [De3Case; 3] = [De3Case::ThreeOneThreeOne, De3Case::OneThreeOneThree, De3Case::OneThreeOneThreeOne];

    pub fn id(self) -> &'static str {
        match self {
            De3Case::ThreeOneThreeOne => "3131",
            De3Case::OneThreeOneThree => "1313",
            De3Case::OneThreeOneThreeOne => "13131",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            De3Case::ThreeOneThreeOne => "[3,1,3,1]",
            De3Case::OneThreeOneThree => "[1,3,1,3]",
            De3Case::OneThreeOneThreeOne => "[1,3,1,3,1]",
        }
    }

    /// Name of the pullback table landing on this case.
    pub fn table_label(self) -> &'static str {
        match self {
            De3Case::OneThreeOneThreeOne => "[3,1,3,1,3]",
            c => c.label(),
        }
    }

    fn x_top(self) -> usize {
        match self {
            De3Case::OneThreeOneThreeOne => 5,
            _ => 4,
        }
    }

    fn y_top(self) -> usize {
        match self {
            De3Case::ThreeOneThreeOne => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for De3Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for De3Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
        match t.as_str() {
            "3131" => Ok(De3Case::ThreeOneThreeOne),
            "1313" => Ok(De3Case::OneThreeOneThree),
            "13131" | "31313" => Ok(De3Case::OneThreeOneThreeOne),
            _ => Err(Error::InvalidParameter(format!("unknown de=3 case `{s}`"))),
        }
    }
}

/// `x0..x_top, y0..y_top, A, B, L, M`.
pub fn de3_vars(case: De3Case) -> VarTable {
    let mut names: Vec<String> = (0..=case.x_top()).map(|i| format!("x{i}")).collect();
    names.extend((0..=case.y_top()).map(|i| format!("y{i}")));
    names.extend(["A", "B", "L", "M"].map(String::from));
    VarTable::of(&names)
}

/// One adjunction step: the displayed matrix and the displayed equations,
/// each as `(label, lhs - rhs)`.
#[derive(Clone, Debug)]
pub struct De3Pentagram {
    pub name: &'static str,
    pub new_var: &'static str,
    pub matrix: SkewPolyMatrix,
    pub displayed: Vec<(String, Polynomial)>,
}

fn eqs(v: &VarTable, list: &[(&str, &str)]) -> Vec<(String, Polynomial)> {
    list.iter().map(|(l, p)| (l.to_string(), v.poly(p))).collect()
}

/// The reduced model's two equations, before any pentagram.
pub fn de3_complete_intersection(case: De3Case) -> Vec<(String, Polynomial)> {
    let v = de3_vars(case);
    match case {
        De3Case::ThreeOneThreeOne => eqs(&v, &[("x0y1", "x0*y1 - A*B - M*y0"), ("x4y0", "x4*y0 - B*y1^2 - L*x0")]),
        De3Case::OneThreeOneThree => eqs(&v, &[("x0y1", "x0*y1 - A*x1 - y0^2*M"), ("x1y0", "x1*y0 - A^2*B - L*x0")]),
        De3Case::OneThreeOneThreeOne => eqs(&v, &[("x0y1", "x0*y1 - A - y0*M"), ("x5y0", "x5*y0 - y1^3*B - L")]),
    }
}

/// The displayed pentagrams in order of adjunction.
pub fn de3_pentagrams(case: De3Case) -> Vec<De3Pentagram> {
    let v = de3_vars(case);
    let mk = |name, new_var, rows: &[&[&str]], displayed: &[(&str, &str)]| De3Pentagram {
        name,
        new_var,
        matrix: SkewPolyMatrix::parse_upper_rows(&v, rows),
        displayed: eqs(&v, displayed),
    };
    match case {
        De3Case::ThreeOneThreeOne => vec![
            mk(
                "M1",
                "y2",
                &[&["x4", "y1^2", "-L", "-y2"], &["x0", "B", "-M"], &["y0", "A"], &["y1"]],
                &[("x0y2", "x0*y2 - x4*A - M*y1^2"), ("y0y2", "y0*y2 - y1^3 - A*L"), ("x4y1", "x4*y1 - y2*B - L*M")],
            ),
            mk(
                "M2",
                "x2",
                &[&["x0", "A*B", "-M", "-x2"], &["y0", "1", "-y1*B"], &["y1", "L*x0"], &["x4"]],
                &[
                    ("x2", "x2 - x0*x4 + y1*B*M"),
                    ("x2y0", "x2*y0 - y1*A*B^2 - L*x0^2"),
                    ("x2y1", "x2*y1 - x4*A*B - L*M*x0"),
                ],
            ),
            mk(
                "M3",
                "x1",
                &[&["x0", "x2", "-B*M", "-x1"], &["y1", "1", "-A*B"], &["x4", "L*M*x0"], &["x2"]],
                &[
                    ("x1", "x1 - x0*x2 + A*B^2*M"),
                    ("x1x4", "x1*x4 - x2^2 - x0*B*L*M^2"),
                    ("x1y1", "x1*y1 - x2*A*B - L*M*x0^2"),
                ],
            ),
            mk(
                "M4",
                "x3",
                &[&["x2", "x4*A*B", "-L*M", "-x3"], &["x0", "1", "-B*M"], &["y1", "x2"], &["x4"]],
                &[
                    ("x3", "x3 - x2*x4 + B*L*M^2"),
                    ("x0x3", "x0*x3 - x2^2 - x4*A*B^2*M"),
                    ("x3y1", "x3*y1 - x4^2*A*B - L*M*x2"),
                ],
            ),
        ],
        De3Case::OneThreeOneThree => vec![
            mk(
                "M1",
                "x3",
                &[&["x1", "A*B", "-L", "-x3"], &["x0", "A", "-M*y0"], &["y0", "x1"], &["y1"]],
                &[
                    ("x0x3", "x0*x3 - x1^2 - y0*A*B*M"),
                    ("x3y0", "x3*y0 - y1*A*B - x1*L"),
                    ("x1y1", "x1*y1 - x3*A - L*M*y0"),
                ],
            ),
            mk(
                "M2",
                "x4",
                &[&["x3", "y1*B", "-L", "-x4"], &["x1", "A", "-L*M"], &["y0", "x3"], &["y1"]],
                &[
                    ("x1x4", "x1*x4 - x3^2 - y1*B*L*M"),
                    ("x3y1", "x3*y1 - x4*A - L^2*M"),
                    ("x4y0", "x4*y0 - y1^2*B - x3*L"),
                ],
            ),
            mk(
                "M3",
                "x2",
                &[&["x1", "x3*A", "-L*M", "-x2"], &["y0", "1", "-A*B"], &["y1", "x1*L"], &["x3"]],
                &[
                    ("x2", "x1*x3 - x2 - A*B*L*M"),
                    ("x2y0", "x2*y0 - x3*A^2*B - x1^2*L"),
                    ("x2y1", "x2*y1 - x3^2*A - x1*L^2*M"),
                ],
            ),
        ],
        De3Case::OneThreeOneThreeOne => vec![],
    }
}

/// `x0x4 = x1x3 + y0y1BM + ABLM` in the case `[1,3,1,3]`.
pub fn long_equation_1313() -> Polynomial {
    de3_vars(De3Case::OneThreeOneThree).poly("x0*x4 - x1*x3 - y0*y1*B*M - A*B*L*M")
}

/// The graph of `A, L, x4, x2, x1, x3` over `A^6` in the case `[1,3,1,3,1]`,
/// each as `(variable, image)`, listed so that images only use earlier ones.
pub fn graph_13131() -> Vec<(&'static str, Polynomial)> {
    let v = de3_vars(De3Case::OneThreeOneThreeOne);
    [
        ("A", "x0*y1 - y0*M"),
        ("L", "x5*y0 - y1^3*B"),
        ("x4", "x0*x5 - y1^2*B*M"),
        ("x2", "x0*x4 - y1*A*B*M"),
        ("x1", "x0*x2 - A^2*B*M"),
        ("x3", "x2*x4 - A*B*L*M^2"),
    ]
    .into_iter()
    .map(|(n, p)| (n, v.poly(p)))
    .collect()
}

/// The full labelled list of displayed equations.
pub fn de3_case_equations(case: De3Case) -> Result<EquationSystem> {
    let v = de3_vars(case);
    let mut sys = EquationSystem::new(format!("V_ABLM{}", case.label()), &v);
    for (l, p) in de3_complete_intersection(case) {
        sys.push(format!("ci:{l}"), p)?;
    }
    for pg in de3_pentagrams(case) {
        for (l, p) in pg.displayed {
            sys.push(format!("{}:{l}", pg.name), p)?;
        }
        if case == De3Case::OneThreeOneThree && pg.name == "M2" {
            sys.push("long:x0x4", long_equation_1313())?;
        }
    }
    if case == De3Case::OneThreeOneThreeOne {
        for (n, image) in graph_13131() {
            sys.push_dedup(format!("graph:{n}"), &v.var(n) - &image)?;
        }
    }
    Ok(sys)
}

/// How the five Pfaffians of one pentagram relate to the displayed list.
#[derive(Clone, Debug)]
pub struct PentagramCheck {
    pub name: &'static str,
    /// Displayed equations found among the Pfaffians, up to sign.
    pub displayed_found: usize,
    pub displayed_total: usize,
    /// The remaining Pfaffians, each with the label of an earlier equation
    /// it equals up to sign, or `None`.
    pub others: Vec<(String, Option<String>)>,
}

impl PentagramCheck {
    pub fn holds(&self) -> bool {
        self.displayed_found == self.displayed_total && self.others.iter().all(|(_, k)| k.is_some())
    }
}

/// For each pentagram, whether its Pfaffians are exactly the displayed
/// triple together with equations already known.
pub fn de3_pentagram_checks(case: De3Case) -> Result<Vec<PentagramCheck>> {
    let v = de3_vars(case);
    let mut known = EquationSystem::new("known", &v);
    for (l, p) in de3_complete_intersection(case) {
        known.push(l, p)?;
    }
    let mut out = Vec::new();
    for pg in de3_pentagrams(case) {
        let pfs: Vec<(String, Polynomial)> = quadruples(5)
            .iter()
            .map(|q| Ok((pf_label(q), pg.matrix.pfaffian4(q[0], q[1], q[2], q[3])?)))
            .collect::<Result<_>>()?;
        let found = pg.displayed.iter().filter(|(_, d)| pfs.iter().any(|(_, p)| p.same_up_to_sign(d))).count();
        let others = pfs
            .iter()
            .filter(|(_, p)| !pg.displayed.iter().any(|(_, d)| p.same_up_to_sign(d)))
            .map(|(l, p)| {
                let hit = known.generators().iter().find(|g| g.poly.same_up_to_sign(p)).map(|g| g.label.clone());
                (l.clone(), hit)
            })
            .collect();
        out.push(PentagramCheck { name: pg.name, displayed_found: found, displayed_total: pg.displayed.len(), others });
        for (l, p) in pg.displayed {
            known.push(format!("{}:{l}", pg.name), p)?;
        }
    }
    Ok(out)
}

/// A point of the case built from free coordinates of its reduced model.
pub fn de3_point(case: De3Case, s: &mut Sampler) -> Result<RationalPoint> {
    let v = de3_vars(case);
    let mut pt = RationalPoint::zeros(&v);
    let free: &[&str] = match case {
        De3Case::ThreeOneThreeOne => &["x0", "y0", "y1", "A", "B", "x4"],
        De3Case::OneThreeOneThree => &["x0", "x1", "y0", "y1", "A", "B"],
        De3Case::OneThreeOneThreeOne => &["x0", "x5", "y0", "y1", "B", "M"],
    };
    for n in free {
        pt.set(n, s.nonzero())?;
    }
    // Each remaining coordinate is `num / den` evaluated at the point so far.
    let steps: &[(&str, &str, &str)] = match case {
        De3Case::ThreeOneThreeOne => &[
            ("M", "x0*y1 - A*B", "y0"),
            ("L", "x4*y0 - B*y1^2", "x0"),
            ("y2", "y1^3 + A*L", "y0"),
            ("x2", "x0*x4 - y1*B*M", "1"),
            ("x1", "x0*x2 - A*B^2*M", "1"),
            ("x3", "x2*x4 - B*L*M^2", "1"),
        ],
        De3Case::OneThreeOneThree => &[
            ("M", "x0*y1 - A*x1", "y0^2"),
            ("L", "x1*y0 - A^2*B", "x0"),
            ("x3", "y1*A*B + x1*L", "y0"),
            ("x4", "y1^2*B + x3*L", "y0"),
            ("x2", "x1*x3 - A*B*L*M", "1"),
        ],
        De3Case::OneThreeOneThreeOne => &[
            ("A", "x0*y1 - y0*M", "1"),
            ("L", "x5*y0 - y1^3*B", "1"),
            ("x4", "x0*x5 - y1^2*B*M", "1"),
            ("x2", "x0*x4 - y1*A*B*M", "1"),
            ("x1", "x0*x2 - A^2*B*M", "1"),
            ("x3", "x2*x4 - A*B*L*M^2", "1"),
        ],
    };
    for (n, num, den) in steps {
        let d = v.poly(den).evaluate(&pt)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let val = v.poly(num).evaluate(&pt)? / d;
        pt.set(n, val)?;
    }
    Ok(pt)
}

/// The eight pentagram equations of the `[1,3,1,3]` reduced model.
pub fn reduced_model_1313() -> Vec<Polynomial> {
    let case = De3Case::OneThreeOneThree;
    let mut out: Vec<Polynomial> = de3_complete_intersection(case).into_iter().map(|(_, p)| p).collect();
    for pg in de3_pentagrams(case).into_iter().take(2) {
        out.extend(pg.displayed.into_iter().map(|(_, p)| p));
    }
    out
}

/// Ideal-level certificates for `[1,3,1,3]`.
#[derive(Clone, Debug)]
pub struct LongEquationReport {
    /// The long equation is not in the ideal of the eight equations.
    pub long_outside_eight: bool,
    /// Saturating the eight at `y0` gives exactly the ideal of eight + long.
    pub saturation_is_eight_plus_long: bool,
    /// A reduced degrevlex basis element of the saturation equals the long
    /// equation up to sign.
    pub long_verbatim_in_basis: bool,
    /// Eliminating `x2` from the twelve displayed equations gives eight + long.
    pub elimination_is_reduced_model: bool,
    /// Eliminating `x2` from the eight and `M3` gives only the eight.
    pub elimination_without_long_is_eight: bool,
}

impl LongEquationReport {
    pub fn holds(&self) -> bool {
        self.long_outside_eight
            && self.saturation_is_eight_plus_long
            && self.long_verbatim_in_basis
            && self.elimination_is_reduced_model
            && self.elimination_without_long_is_eight
    }
}

pub fn long_equation_report(limits: Limits) -> Result<LongEquationReport> {
    let case = De3Case::OneThreeOneThree;
    let v = de3_vars(case);
    let o = TermOrder::DegRevLex;
    let eight = reduced_model_1313();
    let long = long_equation_1313();
    let gb8 = buchberger_with(&v, &eight, &o, limits)?;
    let mut eight_long = eight.clone();
    eight_long.push(long.clone());
    let gb8l = buchberger_with(&v, &eight_long, &o, limits)?;
    let sat = saturate_by_variable_with(&v, &eight, "y0", limits)?;
    let gbs = buchberger_with(&v, &sat, &o, limits)?;
    let full = de3_case_equations(case)?.polys();
    let elim = eliminate_with(&v, &full, &["x2"], limits)?;
    let gbe = buchberger_with(&v, &elim, &o, limits)?;
    let m3: Vec<Polynomial> = de3_pentagrams(case)[2].displayed.iter().map(|(_, p)| p.clone()).collect();
    let mut eight_m3 = eight.clone();
    eight_m3.extend(m3);
    let elim2 = eliminate_with(&v, &eight_m3, &["x2"], limits)?;
    let gbe2 = buchberger_with(&v, &elim2, &o, limits)?;
    Ok(LongEquationReport {
        long_outside_eight: !gb8.contains(&long)?,
        saturation_is_eight_plus_long: gbs.same_ideal(&gb8l),
        long_verbatim_in_basis: gbs.generators().iter().any(|g| g.same_up_to_sign(&long)),
        elimination_is_reduced_model: gbe.same_ideal(&gb8l),
        elimination_without_long_is_eight: gbe2.same_ideal(&gb8),
    })
}

/// Whether every `[1,3,1,3,1]` equation vanishes identically once
/// `A, L, x4, x2, x1, x3` are replaced by their graph images, so the case is
/// the graph over `A^6` in `x0, x5, y0, y1, B, M`.
pub fn graph_13131_is_affine_space() -> Result<bool> {
    let case = De3Case::OneThreeOneThreeOne;
    let v = de3_vars(case);
    let graph = resolve_graph(&v, &graph_13131())?;
    for g in de3_case_equations(case)?.generators() {
        if !vanishes_on_graph(&v, &graph, &g.poly)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same by elimination: the ideal meets `k[x0, x5, y0, y1, B, M]` in 0.
pub fn graph_13131_elimination_is_zero(limits: Limits) -> Result<bool> {
    let case = De3Case::OneThreeOneThreeOne;
    let v = de3_vars(case);
    let full = de3_case_equations(case)?.polys();
    Ok(eliminate_with(&v, &full, &["A", "L", "x1", "x2", "x3", "x4"], limits)?.is_empty())
}

/// Assignment of the 16 key variables to case variables or constants.
#[derive(Clone, Debug)]
pub struct PullbackTable {
    pub case: De3Case,
    pub assignment: Vec<(&'static str, &'static str)>,
}

/// The substitution tables from `W`. In `[1,3,1,3]`, `v3` goes to the
/// redundant generator `z = y0y1 - AL`.
pub fn pullback_table(case: De3Case) -> PullbackTable {
    let assignment: Vec<(&str, &str)> = match case {
        De3Case::ThreeOneThreeOne => vec![
            ("v1", "x1"),
            ("v2", "x3"),
            ("v3", "y2"),
            ("v4", "y0"),
            ("u1", "x0"),
            ("u2", "x2"),
            ("u3", "x4"),
            ("u4", "y1"),
            ("a1", "L"),
            ("a2", "1"),
            ("a3", "A"),
            ("a4", "1"),
            ("s1", "1"),
            ("s2", "1"),
            ("s3", "B"),
            ("s4", "M"),
        ],
        De3Case::OneThreeOneThree => vec![
            ("v1", "x2"),
            ("v2", "x4"),
            ("v3", "y0*y1 - A*L"),
            ("v4", "x0"),
            ("u1", "x1"),
            ("u2", "x3"),
            ("u3", "y1"),
            ("u4", "y0"),
            ("a1", "1"),
            ("a2", "1"),
            ("a3", "B"),
            ("a4", "M"),
            ("s1", "1"),
            ("s2", "A"),
            ("s3", "1"),
            ("s4", "L"),
        ],
        De3Case::OneThreeOneThreeOne => vec![
            ("v1", "x1"),
            ("v2", "x3"),
            ("v3", "x5"),
            ("v4", "y0"),
            ("u1", "x0"),
            ("u2", "x2"),
            ("u3", "x4"),
            ("u4", "y1"),
            ("a1", "L"),
            ("a2", "1"),
            ("a3", "1"),
            ("a4", "B"),
            ("s1", "1"),
            ("s2", "1"),
            ("s3", "A"),
            ("s4", "M"),
        ],
    };
    PullbackTable { case, assignment }
}

impl PullbackTable {
    /// Total over the 16 key variables.
    pub fn is_total(&self) -> bool {
        let v = keyw_vars();
        v.names().iter().all(|n| self.assignment.iter().filter(|(k, _)| k == n).count() == 1)
            && self.assignment.len() == v.len()
    }

    pub fn substitution(&self) -> Substitution {
        let tgt = de3_vars(self.case);
        let mut s = Substitution::new(&keyw_vars(), &tgt);
        for (k, img) in &self.assignment {
            s.set(k, tgt.poly(img)).expect("key variable");
        }
        s
    }
}

/// Outcome of pulling `W` back to one case.
#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub case: De3Case,
    pub images: Vec<(String, Polynomial)>,
    /// Per-image ideal membership, or `None` if the basis ran past the cap.
    pub membership: Option<Vec<bool>>,
    pub points_checked: usize,
    /// `(label, point index)` of images that do not vanish at a case point.
    pub point_failures: Vec<(String, usize)>,
}

impl PullbackReport {
    pub fn holds(&self) -> bool {
        self.point_failures.is_empty() && self.membership.as_ref().is_none_or(|m| m.iter().all(|&b| b))
    }

    pub fn image(&self, label: &str) -> Option<&Polynomial> {
        self.images.iter().find(|(l, _)| l == label).map(|(_, p)| p)
    }
}

/// Substitutes the table into every generator of `W` and checks each image
/// against the case: membership in the ideal of the displayed equations and
/// vanishing at `samples` case points.
pub fn de3_pullback(case: De3Case, samples: usize, seed: u64, limits: Limits) -> Result<PullbackReport> {
    let s = pullback_table(case).substitution();
    let w = key_variety_equations()?;
    let images: Vec<(String, Polynomial)> =
        w.generators().iter().map(|g| Ok((g.label.clone(), s.apply(&g.poly)?))).collect::<Result<_>>()?;
    let v = de3_vars(case);
    let ideal = de3_case_equations(case)?.polys();
    let membership = match buchberger_with(&v, &ideal, &TermOrder::DegRevLex, limits) {
        Ok(gb) => Some(images.iter().map(|(_, p)| gb.contains(p)).collect::<Result<Vec<_>>>()?),
        Err(Error::DeskScaleExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut sampler = Sampler::new(seed);
    let mut point_failures = Vec::new();
    let mut points: Vec<RationalPoint> = Vec::new();
    while points.len() < samples {
        match de3_point(case, &mut sampler) {
            Ok(p) => points.push(p),
            Err(Error::DivisionByZero) => continue,
            Err(e) => return Err(e),
        }
    }
    for (idx, pt) in points.iter().enumerate() {
        for (l, p) in &images {
            let val: Rational = p.evaluate(pt)?;
            if !val.is_zero() {
                point_failures.push((l.clone(), idx));
            }
        }
    }
    Ok(PullbackReport { case, images, membership, points_checked: points.len(), point_failures })
}
