use num_traits::Zero;

use super::binomial;
use crate::error::{Error, Result};
use crate::matrix::SkewPolyMatrix;
use crate::ring::{rat, Polynomial, Rational, RationalPoint, Substitution, VarTable};
use crate::sample::Sampler;
use crate::system::EquationSystem;

/// Parameter of the 7-fold `W(d)`. With `e` set, the entry `C` is
/// specialised to `x1^(e-1)` and dropped from the coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WdSpec {
    d: usize,
    e: Option<u32>,
}

impl WdSpec {
    /// `W(d)` with the abstract entry `C`.
    pub fn new(d: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameter("W(d) needs d >= 1".into()));
        }
        Ok(WdSpec { d, e: None })
    }

    /// The section `C = x1^(e-1)`.
    pub fn section(d: usize, e: u32) -> Result<Self> {
        if e < 1 {
            return Err(Error::InvalidParameter("the section needs e >= 1".into()));
        }
        Ok(WdSpec { e: Some(e), ..Self::new(d)? })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn e(&self) -> Option<u32> {
        self.e
    }
}

fn y(i: usize) -> String {
    format!("y{i}")
}

/// `x0, x1, x2, y0..yd, A, B, L, M` and `C` unless specialised.
pub fn wd_vars(spec: WdSpec) -> VarTable {
    let mut names: Vec<String> = ["x0", "x1", "x2"].map(String::from).to_vec();
    names.extend((0..=spec.d).map(y));
    names.extend(["A", "B", "L", "M"].map(String::from));
    if spec.e.is_none() {
        names.push("C".into());
    }
    VarTable::of(&names)
}

/// `C`, or `x1^(e-1)` on a section.
pub fn wd_c(spec: WdSpec, v: &VarTable) -> Polynomial {
    match spec.e {
        None => v.var("C"),
        Some(e) => v.var("x1").pow(e - 1),
    }
}

/// The `(d+4) x (d+4)` skew matrix. For `0 <= i < j <= d-1` the lower block
/// is `m_{i+5,j+5} = ALC (x0 B)^{d-j-1} (x2 M)^i (x0x2)^{j-i}-(BM)^{j-i}`
/// divided by `x0x2 - BM`.
pub fn wd_matrix(spec: WdSpec) -> Result<SkewPolyMatrix> {
    let v = wd_vars(spec);
    let d = spec.d;
    let c = wd_c(spec, &v);
    let p = |s: &str| v.poly(s);
    let mut m = SkewPolyMatrix::zeros(&v, d + 4);
    m.set(1, 2, c.clone());
    m.set(1, 3, p("-x0"));
    m.set(1, 4, p("B"));
    m.set(2, 3, p("-M"));
    m.set(2, 4, p("x2"));
    m.set(3, 4, p("x1"));
    for i in 0..d {
        m.set(1, 5 + i, v.var(&y(i)));
        m.set(2, 5 + i, v.var(&y(i + 1)));
        m.set(3, 5 + i, p(&format!("A*B^{}*x2^{}", d - 1 - i, i)));
        m.set(4, 5 + i, p(&format!("L*x0^{}*M^{}", d - 1 - i, i)));
    }
    let alc = &p("A*L") * &c;
    let (x0b, x2m) = (p("x0*B"), p("x2*M"));
    let (x0x2, bm) = (p("x0*x2"), p("B*M"));
    for i in 0..d {
        for j in i + 1..d {
            let q = Polynomial::geom_quotient(&x0x2, &bm, (j - i) as u32)?;
            let e = &(&(&alc * &x0b.pow((d - j - 1) as u32)) * &x2m.pow(i as u32)) * &q;
            m.set(5 + i, 5 + j, e);
        }
    }
    Ok(m)
}

/// All nonzero 4x4 Pfaffians of [`wd_matrix`].
pub fn wd_equations(spec: WdSpec) -> Result<EquationSystem> {
    let name = match spec.e {
        None => format!("W({})", spec.d),
        Some(e) => format!("W({})|C=x1^{}", spec.d, e - 1),
    };
    Ok(wd_matrix(spec)?.all_pfaffians4(&name))
}

/// The displayed equations of `W(d)`, each as `lhs - rhs`.
pub fn wd_displayed(spec: WdSpec) -> Vec<(String, Polynomial)> {
    let v = wd_vars(spec);
    let d = spec.d;
    let c = wd_c(spec, &v);
    let p = |s: String| v.poly(&s);
    let mut out = vec![("x0x2".to_string(), &p("x0*x2 - B*M".into()) + &(&v.var("x1") * &c))];
    let alc2 = &p("A*L".into()) * &c.pow(2);
    for i in 1..d {
        let tail = &(&alc2 * &p(format!("(x0*B)^{}", d - i - 1))) * &p(format!("(x2*M)^{}", i - 1));
        out.push((format!("yy_{i}"), &p(format!("y{}*y{} - y{i}^2", i - 1, i + 1)) - &tail));
    }
    for i in 1..=d {
        let t = &p(format!("x2^{}*A*B^{}", i - 1, d - i)) * &c;
        out.push((format!("x0y_{i}"), &p(format!("x0*y{i} - y{}*M", i - 1)) + &t));
    }
    for i in 0..=d {
        out.push((format!("x1y_{i}"), p(format!("x1*y{i} - A*x2^{i}*B^{} - L*x0^{}*M^{i}", d - i, d - i))));
    }
    for i in 0..d {
        let t = &p(format!("x0^{}*L*M^{i}", d - i - 1)) * &c;
        out.push((format!("x2y_{i}"), &p(format!("x2*y{i} - y{}*B", i + 1)) + &t));
    }
    out
}

/// `C m_{i+5,j+5} - y_i y_{j+1} + y_{i+1} y_j`, which is the Pfaffian on
/// rows `1, 2, i+5, j+5`.
pub fn wd_w2_form(spec: WdSpec, i: usize, j: usize) -> Result<Polynomial> {
    let m = wd_matrix(spec)?;
    let v = m.vars().clone();
    let c = wd_c(spec, &v);
    let yy = |a: usize, b: usize| &v.var(&y(a)) * &v.var(&y(b));
    Ok(&(&(&c * m.upper(i + 5, j + 5)) - &yy(i, j + 1)) + &yy(i + 1, j))
}

/// Free parameters of the parametrization of `W(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdParams {
    pub b: Rational,
    pub x2: Rational,
    pub x0: Rational,
    pub m: Rational,
    pub a: Rational,
    pub l: Rational,
    pub x1: Rational,
}

impl WdParams {
    /// Random parameters with `x1 != 0`, so that [`wd_parametrize`] succeeds.
    pub fn sample(s: &mut Sampler) -> Self {
        WdParams { b: s.any(), x2: s.any(), x0: s.any(), m: s.any(), a: s.any(), l: s.any(), x1: s.nonzero() }
    }

    pub fn from_ints(v: [i64; 7]) -> Self {
        let [b, x2, x0, m, a, l, x1] = v.map(rat);
        WdParams { b, x2, x0, m, a, l, x1 }
    }
}

fn uv_table() -> VarTable {
    VarTable::of(&["u", "v"])
}

/// `c0 u + c1 v` over `u, v`.
fn linear_form(t: &VarTable, c0: &Rational, c1: &Rational) -> Polynomial {
    &t.var("u").scale(c0) + &t.var("v").scale(c1)
}

/// `sum binom(d,i) y_i u^{d-i} v^i` over `u, v`.
fn form_of(t: &VarTable, ys: &[Rational]) -> Polynomial {
    let d = ys.len() - 1;
    let mut f = Polynomial::zero(t);
    for (i, yi) in ys.iter().enumerate() {
        let w = &t.var("u").pow((d - i) as u32) * &t.var("v").pow(i as u32);
        f = &f + &w.scale(&(yi * rat(binomial(d as u32, i as u32))));
    }
    f
}

/// Inverse of [`form_of`] for a form of degree `d`.
fn ys_of(f: &Polynomial, d: usize) -> Vec<Rational> {
    (0..=d)
        .map(|i| {
            let m = [(d - i) as u32, i as u32];
            let c = f
                .terms()
                .iter()
                .find(|(mm, _)| mm.exponents() == m)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::zero);
            c / rat(binomial(d as u32, i as u32))
        })
        .collect()
}

/// A point of `W(d)` with `x1 != 0`: `C = (BM - x0x2)/x1` and the `y_i` read
/// off from `f = (A g^d + L h^d)/x1`, `g = Bu + x2v`, `h = x0u + Mv`.
///
/// On a section `C = x1^(e-1)` the parameters must satisfy that relation.
pub fn wd_parametrize(spec: WdSpec, p: &WdParams) -> Result<RationalPoint> {
    if p.x1.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let d = spec.d;
    let c = (&p.b * &p.m - &p.x0 * &p.x2) / &p.x1;
    if let Some(e) = spec.e {
        if c != num_traits::pow(p.x1.clone(), (e - 1) as usize) {
            return Err(Error::InvalidParameter("parameters violate C = x1^(e-1)".into()));
        }
    }
    let t = uv_table();
    let g = linear_form(&t, &p.b, &p.x2);
    let h = linear_form(&t, &p.x0, &p.m);
    let f = (&g.pow(d as u32).scale(&p.a) + &h.pow(d as u32).scale(&p.l)).div_scalar(&p.x1)?;
    let v = wd_vars(spec);
    let mut pt = RationalPoint::zeros(&v);
    for (name, val) in [("x0", &p.x0), ("x1", &p.x1), ("x2", &p.x2), ("A", &p.a), ("B", &p.b), ("L", &p.l), ("M", &p.m)]
    {
        pt.set(name, val.clone())?;
    }
    if spec.e.is_none() {
        pt.set("C", c)?;
    }
    for (i, yi) in ys_of(&f, d).into_iter().enumerate() {
        pt.set(&y(i), yi)?;
    }
    Ok(pt)
}

/// `x0 = x2 = 0`, `x1 = A = C = L = B = M = 1`, so `f = u^d + v^d`.
pub fn wd_typical_point(spec: WdSpec) -> RationalPoint {
    let v = wd_vars(spec);
    let d = spec.d;
    let mut pt = RationalPoint::zeros(&v);
    for name in ["x1", "A", "B", "L", "M"] {
        pt.set(name, rat(1)).expect("present");
    }
    if spec.e.is_none() {
        pt.set("C", rat(1)).expect("present");
    }
    pt.set("y0", rat(1)).expect("present");
    pt.set(&y(d), rat(1)).expect("present");
    pt
}

/// The identities of the binary forms `f`, `g = Bu + x2v`, `h = x0u + Mv`,
/// split into their coefficients in `u, v`. Each returned polynomial lives
/// over [`wd_vars`] and should lie in the ideal of `W(d)`:
///
/// * `x1 f - A g^d - L h^d`
/// * `M f_u - x0 f_v - d A C g^{d-1}`
/// * `-x2 f_u + B f_v - d L C h^{d-1}`
/// * `(BM - x0x2) (f_u ^ f_v) - d^2 A L C^2 (g^{d-1} ^ h^{d-1})`, in the
///   Pluecker coordinates of the coefficient vectors (`d >= 2`)
pub fn wd_identities(spec: WdSpec) -> Result<Vec<(String, Polynomial)>> {
    let base = wd_vars(spec);
    let t = base.extended(&["u", "v"])?;
    let d = spec.d;
    let c = wd_c(spec, &base).embed(&t)?;
    let mut f = Polynomial::zero(&t);
    for i in 0..=d {
        let w = t.poly(&format!("y{i}*u^{}*v^{i}", d - i));
        f = &f + &w.scale(&rat(binomial(d as u32, i as u32)));
    }
    let g = t.poly("B*u + x2*v");
    let h = t.poly("x0*u + M*v");
    let fu = f.differentiate_by("u")?;
    let fv = f.differentiate_by("v")?;
    let dd = rat(d as i64);
    let gd1 = g.pow(d as u32 - 1);
    let hd1 = h.pow(d as u32 - 1);
    let forms = [
        ("x1f", &(&(&t.var("x1") * &f) - &(&t.var("A") * &g.pow(d as u32))) - &(&t.var("L") * &h.pow(d as u32))),
        ("Mfu", &(&(&t.var("M") * &fu) - &(&t.var("x0") * &fv)) - &(&(&t.var("A") * &c) * &gd1).scale(&dd)),
        ("Bfv", &(&(&t.var("B") * &fv) - &(&t.var("x2") * &fu)) - &(&(&t.var("L") * &c) * &hd1).scale(&dd)),
    ];
    let keys = [t.require("u")?, t.require("v")?];
    let mut out = Vec::new();
    for (name, form) in forms {
        for (e, coef) in form.collect(&keys) {
            out.push((format!("{name}[{},{}]", e[0], e[1]), coef.embed(&base)?));
        }
    }
    if d >= 2 {
        let coeffs = |p: &Polynomial| -> Vec<Polynomial> {
            (0..d).map(|i| p.coefficient_in(&keys, &[(d - 1 - i) as u32, i as u32])).collect()
        };
        let (a1, a2, b1, b2) = (coeffs(&fu), coeffs(&fv), coeffs(&gd1), coeffs(&hd1));
        let gh = t.poly("B*M - x0*x2");
        let scale = &(&t.poly("A*L") * &c.pow(2)).scale(&rat((d * d) as i64));
        for i in 0..d {
            for j in i + 1..d {
                let pf = &(&a1[i] * &a2[j]) - &(&a1[j] * &a2[i]);
                let pg = &(&b1[i] * &b2[j]) - &(&b1[j] * &b2[i]);
                let id = &(&gh * &pf) - &(scale * &pg);
                out.push((format!("wedge[{i},{j}]"), id.embed(&base)?));
            }
        }
    }
    Ok(out)
}

/// One-parameter subgroups acting on `W(d)` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gl2Action {
    /// `u -> u + lambda v`: `x2 += lambda B`, `M += lambda x0`,
    /// `f(u, v) -> f(u + lambda v, v)`.
    ShiftU,
    /// `v -> v + lambda u`: `B += lambda x2`, `x0 += lambda M`,
    /// `f(u, v) -> f(u, v + lambda u)`.
    ShiftV,
    /// `x0 += lambda B`, `M += lambda x2` with `f(u + lambda v, v)`; this
    /// pairing does not preserve `W(d)` for `d >= 2`.
    Mismatched,
}

/// The image of a point under a one-parameter subgroup.
pub fn gl2_transform(spec: WdSpec, pt: &RationalPoint, lambda: &Rational, action: Gl2Action) -> Result<RationalPoint> {
    let d = spec.d;
    let get = |n: &str| pt.get(n).cloned();
    let ys: Vec<Rational> = (0..=d).map(|i| get(&y(i))).collect::<Result<_>>()?;
    let t = uv_table();
    let f = form_of(&t, &ys);
    let lv = |var: &str| t.var(var).scale(lambda);
    let (shift, moves) = match action {
        Gl2Action::ShiftU => (("u", &t.var("u") + &lv("v")), [("x2", "B"), ("M", "x0")]),
        Gl2Action::ShiftV => (("v", &t.var("v") + &lv("u")), [("B", "x2"), ("x0", "M")]),
        Gl2Action::Mismatched => (("u", &t.var("u") + &lv("v")), [("x0", "B"), ("M", "x2")]),
    };
    let shift = Substitution::new(&t, &t).with_poly(shift.0, shift.1);
    let mut out = pt.clone();
    for (target, source) in moves {
        out.set(target, get(target)? + lambda * get(source)?)?;
    }
    for (i, yi) in ys_of(&f.substitute(&shift)?, d).into_iter().enumerate() {
        out.set(&y(i), yi)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, TermOrder};
    use crate::sample::DEFAULT_SEED;

    fn spec(d: usize) -> WdSpec {
        WdSpec::new(d).unwrap()
    }

    fn vanishes(sys: &EquationSystem, pt: &RationalPoint) -> bool {
        sys.generators().iter().all(|g| g.poly.evaluate(pt).unwrap().is_zero())
    }

    fn random_params(rng: &mut Sampler) -> WdParams {
        WdParams {
            b: rng.any(),
            x2: rng.any(),
            x0: rng.any(),
            m: rng.any(),
            a: rng.any(),
            l: rng.any(),
            x1: rng.nonzero(),
        }
    }

    #[test]
    fn small_matrices() {
        assert_eq!(wd_matrix(spec(1)).unwrap().size(), 5);
        let m = wd_matrix(spec(2)).unwrap();
        assert_eq!(m.upper(5, 6), &m.vars().poly("A*L*C"));
        let m = wd_matrix(spec(3)).unwrap();
        assert_eq!(m.upper(5, 7), &m.vars().poly("A*L*C*(x0*x2 + B*M)"));
        assert_eq!(m.upper(5, 6), &m.vars().poly("A*L*C*x0*B"));
        assert_eq!(m.upper(6, 7), &m.vars().poly("A*L*C*x2*M"));
        assert!(WdSpec::new(0).is_err());
    }

    #[test]
    fn d1_is_the_grassmannian() {
        let s = wd_equations(spec(1)).unwrap();
        assert_eq!(s.len(), 5);
        let mut rng = Sampler::new(DEFAULT_SEED);
        for _ in 0..5 {
            assert!(vanishes(&s, &wd_parametrize(spec(1), &random_params(&mut rng)).unwrap()));
        }
    }

    #[test]
    fn displayed_equations_are_pfaffians() {
        for d in 1..=5 {
            let s = wd_equations(spec(d)).unwrap();
            for (label, p) in wd_displayed(spec(d)) {
                assert!(s.contains_up_to_scalar(&p), "d={d} {label}: {p}");
            }
        }
        let s = wd_equations(spec(2)).unwrap();
        assert!(s.contains_up_to_scalar(&s.vars().poly("x1*y1 - A*x2*B - L*x0*M")));
    }

    #[test]
    fn w2_lives_on_rows_one_two() {
        for d in 2..=5 {
            let m = wd_matrix(spec(d)).unwrap();
            for i in 0..d {
                for j in i + 1..d {
                    assert_eq!(m.pfaffian4(1, 2, i + 5, j + 5).unwrap(), wd_w2_form(spec(d), i, j).unwrap());
                }
            }
        }
        // rows 2,3 give another equation
        let m = wd_matrix(spec(3)).unwrap();
        assert_ne!(m.pfaffian4(2, 3, 5, 7).unwrap(), wd_w2_form(spec(3), 0, 2).unwrap());
    }

    #[test]
    fn parametrized_points_vanish() {
        let mut rng = Sampler::new(DEFAULT_SEED ^ 7);
        for d in 1..=4 {
            let s = wd_equations(spec(d)).unwrap();
            for _ in 0..4 {
                assert!(vanishes(&s, &wd_parametrize(spec(d), &random_params(&mut rng)).unwrap()));
            }
            assert!(vanishes(&s, &wd_typical_point(spec(d))));
        }
    }

    #[test]
    fn parametrize_d3_example() {
        let pt = wd_parametrize(spec(3), &WdParams::from_ints([1, 1, 1, 2, 1, 1, 1])).unwrap();
        assert_eq!(pt.get("C").unwrap(), &rat(1));
        // f = (u+v)^3 + (u+2v)^3 = 2u^3 + 9u^2v + 15uv^2 + 9v^3
        let ys: Vec<_> = (0..4).map(|i| pt.get(&y(i)).unwrap().clone()).collect();
        assert_eq!(ys, vec![rat(2), rat(3), rat(5), rat(9)]);
        assert!(vanishes(&wd_equations(spec(3)).unwrap(), &pt));
        let zero = WdParams { x1: rat(0), ..WdParams::from_ints([1; 7]) };
        assert_eq!(wd_parametrize(spec(3), &zero), Err(Error::DivisionByZero));
    }

    #[test]
    fn identities_vanish_at_points() {
        let mut rng = Sampler::new(DEFAULT_SEED ^ 11);
        for d in 1..=4 {
            let ids = wd_identities(spec(d)).unwrap();
            for _ in 0..3 {
                let pt = wd_parametrize(spec(d), &random_params(&mut rng)).unwrap();
                for (label, p) in &ids {
                    assert!(p.evaluate(&pt).unwrap().is_zero(), "d={d} {label}");
                }
            }
        }
    }

    #[test]
    fn d1_identity_coefficients() {
        let ids = wd_identities(spec(1)).unwrap();
        let v = wd_vars(spec(1));
        let x1f: Vec<_> = ids.iter().filter(|(l, _)| l.starts_with("x1f")).map(|(_, p)| p.clone()).collect();
        assert_eq!(x1f, vec![v.poly("x1*y0 - A*B - L*x0"), v.poly("x1*y1 - A*x2 - L*M")]);
    }

    #[test]
    fn identities_in_the_ideal_d2() {
        let s = wd_equations(spec(2)).unwrap();
        let gb = buchberger(s.vars(), &s.polys(), &TermOrder::DegRevLex).unwrap();
        for (label, p) in wd_identities(spec(2)).unwrap() {
            assert!(gb.contains(&p).unwrap(), "{label}");
        }
    }

    #[test]
    fn gl2_actions() {
        let mut rng = Sampler::new(DEFAULT_SEED ^ 13);
        for d in 1..=3 {
            let s = wd_equations(spec(d)).unwrap();
            for _ in 0..3 {
                let pt = wd_parametrize(spec(d), &random_params(&mut rng)).unwrap();
                let lambda = rng.nonzero();
                for act in [Gl2Action::ShiftU, Gl2Action::ShiftV] {
                    assert!(vanishes(&s, &gl2_transform(spec(d), &pt, &lambda, act).unwrap()), "d={d} {act:?}");
                }
            }
        }
        let pt = wd_parametrize(spec(2), &WdParams::from_ints([1, 2, 3, 1, 1, 1, 1])).unwrap();
        let moved = gl2_transform(spec(2), &pt, &rat(1), Gl2Action::Mismatched).unwrap();
        assert!(!vanishes(&wd_equations(spec(2)).unwrap(), &moved));
    }

    #[test]
    fn section_specialises_c() {
        let s = WdSpec::section(2, 2).unwrap();
        let m = wd_matrix(s).unwrap();
        assert_eq!(m.upper(1, 2), &m.vars().poly("x1"));
        assert!(!m.vars().contains("C"));
        let one = WdSpec::section(2, 1).unwrap();
        assert!(wd_matrix(one).unwrap().upper(1, 2).is_one());
    }
}
