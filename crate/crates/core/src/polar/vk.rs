use std::collections::BTreeSet;

use num_traits::Zero;

use super::binomial;
use crate::error::{Error, Result};
use crate::groebner::{buchberger_with, Limits, TermOrder};
use crate::matrix::{quadruples, PolyMatrix, SkewPolyMatrix};
use crate::ring::{rat, ratio, Polynomial, Rational, RationalPoint, Substitution, VarTable};
use crate::sample::Sampler;
use crate::system::EquationSystem;

/// Parameter of the 5-fold `V(k)`: coordinates `x_0..x_k, a, b, c, z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VkSpec {
    k: usize,
}

impl VkSpec {
    /// `k >= 2`; `k = 2` has the single (II) equation `x0*x2 - x1^2 = z`.
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("V(k) needs k >= 2, got {k}")));
        }
        Ok(VkSpec { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn need_matrix(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::InvalidParameter(format!("the skew format needs k >= 3, got {}", self.k)));
        }
        Ok(())
    }
}

fn x(i: usize) -> String {
    format!("x{i}")
}

/// `x0, .., xk, a, b, c, z`.
pub fn vk_vars(spec: VkSpec) -> VarTable {
    let mut names: Vec<String> = (0..=spec.k).map(x).collect();
    names.extend(["a", "b", "c", "z"].map(String::from));
    VarTable::of(&names)
}

/// The `2 x k` matrix with rows `x_0..x_{k-1}` and `x_1..x_k`.
pub fn vk_m(spec: VkSpec) -> PolyMatrix {
    let v = vk_vars(spec);
    PolyMatrix::from_fn(&v, 2, spec.k, |r, c| v.var(&x(r + c)))
}

/// The `n x (n-2)` band matrix with columns `(a, b, c)` shifted down.
pub fn band_matrix(vars: &VarTable, n: usize) -> PolyMatrix {
    let cols = n.saturating_sub(2);
    PolyMatrix::from_fn(vars, n, cols, |r, c| match r.checked_sub(c) {
        Some(0) => vars.var("a"),
        Some(1) => vars.var("b"),
        Some(2) => vars.var("c"),
        _ => Polynomial::zero(vars),
    })
}

/// The `k x (k-2)` matrix `N` with `MN = 0` the recurrence.
pub fn vk_n(spec: VkSpec) -> PolyMatrix {
    band_matrix(&vk_vars(spec), spec.k)
}

/// `a x_{i-1} + b x_i + c x_{i+1}`.
pub fn recurrence(vars: &VarTable, i: usize) -> Polynomial {
    &(&(&vars.var("a") * &vars.var(&x(i - 1))) + &(&vars.var("b") * &vars.var(&x(i))))
        + &(&vars.var("c") * &vars.var(&x(i + 1)))
}

/// Equations (I) (labels `I_i`, `i = 1..k-1`) and (II) (labels `II_{p,q}`,
/// `0 <= p < q <= k-1`): `x_p x_{q+1} - x_{p+1} x_q - z D(p,q)`, where `D`
/// is the signed complementary maximal minor of `N`.
pub fn vk_equations(spec: VkSpec) -> Result<EquationSystem> {
    let v = vk_vars(spec);
    let k = spec.k;
    let mut sys = EquationSystem::new(format!("V({k})"), &v);
    for i in 1..k {
        sys.push(format!("I_{i}"), recurrence(&v, i))?;
    }
    let d = vk_n(spec).complementary_minors()?;
    let z = v.var("z");
    for p in 0..k {
        for q in p + 1..k {
            let minor = &(&v.var(&x(p)) * &v.var(&x(q + 1))) - &(&v.var(&x(p + 1)) * &v.var(&x(q)));
            sys.push(format!("II_{{{p},{q}}}"), &minor - &(&z * &d.get(p + 1, q + 1)))?;
        }
    }
    Ok(sys)
}

/// The guiding complete intersection at `i`: the (II) equation
/// `x_{i-1}x_{i+1} - x_i^2 - a^{i-1} c^{k-i-1} z` and the recurrence (I)_i.
pub fn vk_guiding_pair(spec: VkSpec, i: usize) -> Result<[Polynomial; 2]> {
    let k = spec.k;
    if i < 1 || i >= k {
        return Err(Error::BadIndex(format!("guiding index {i} outside 1..{k}")));
    }
    let v = vk_vars(spec);
    let coef = &v.var("a").pow(i as u32 - 1) * &v.var("c").pow((k - i - 1) as u32);
    let quad = &(&v.var(&x(i - 1)) * &v.var(&x(i + 1))) - &v.var(&x(i)).pow(2);
    Ok([&quad - &(&coef * &v.var("z")), recurrence(&v, i)])
}

/// The `(k+2) x (k+2)` skew matrix: rows 1..3 are `(c, -b | x_0..x_{k-2})`,
/// `(a | x_1..x_{k-1})`, `(x_2..x_k)`; the lower right block is `z` times
/// the signed complementary minors of the `(k-1) x (k-3)` band matrix.
pub fn vk_skew_matrix(spec: VkSpec) -> Result<SkewPolyMatrix> {
    spec.need_matrix()?;
    let v = vk_vars(spec);
    let k = spec.k;
    let mut m = SkewPolyMatrix::zeros(&v, k + 2);
    m.set(1, 2, v.var("c"));
    m.set(1, 3, -v.var("b"));
    m.set(2, 3, v.var("a"));
    for t in 0..k - 1 {
        for r in 0..3 {
            m.set(r + 1, t + 4, v.var(&x(t + r)));
        }
    }
    let block = band_matrix(&v, k - 1).complementary_minors()?;
    let z = v.var("z");
    for s in 1..k {
        for t in s + 1..k {
            m.set(s + 3, t + 3, &z * &block.get(s, t));
        }
    }
    Ok(m)
}

/// The matrices displayed for `k = 3, 4, 5`, transcribed by hand.
pub fn vk_printed_matrix(k: usize) -> Option<SkewPolyMatrix> {
    let v = vk_vars(VkSpec::new(k).ok()?);
    let rows: &[&[&str]] = match k {
        3 => &[&["c", "-b", "x0", "x1"], &["a", "x1", "x2"], &["x2", "x3"], &["z"]],
        4 => {
            &[&["c", "-b", "x0", "x1", "x2"], &["a", "x1", "x2", "x3"], &["x2", "x3", "x4"], &["z*c", "-z*b"], &["z*a"]]
        }
        5 => &[
            &["c", "-b", "x0", "x1", "x2", "x3"],
            &["a", "x1", "x2", "x3", "x4"],
            &["x2", "x3", "x4", "x5"],
            &["z*c^2", "-z*b*c", "z*(b^2 - a*c)"],
            &["z*a*c", "-z*a*b"],
            &["z*a^2"],
        ],
        _ => return None,
    };
    Some(SkewPolyMatrix::parse_upper_rows(&v, rows))
}

/// A point of `V(k)` on the chart `c != 0`: `a, b, c, x_0, x_1` free,
/// `x_{i+1} = -(a x_{i-1} + b x_i)/c`, and
/// `z = -(a x_0^2 + b x_0 x_1 + c x_1^2)/c^{k-1}`.
pub fn vk_parametrize(
    spec: VkSpec,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    x0: &Rational,
    x1: &Rational,
) -> Result<RationalPoint> {
    if c.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let k = spec.k;
    let mut xs = vec![x0.clone(), x1.clone()];
    for i in 1..k {
        let next = -(a * &xs[i - 1] + b * &xs[i]) / c;
        xs.push(next);
    }
    let cpow = num_traits::pow(c.clone(), k - 1);
    let z = -(a * x0 * x0 + b * x0 * x1 + c * x1 * x1) / cpow;
    xs.extend([a.clone(), b.clone(), c.clone(), z]);
    RationalPoint::new(&vk_vars(spec), xs)
}

/// The chart `a != 0`, obtained from [`vk_parametrize`] by the symmetry
/// `x_i <-> x_{k-i}`, `a <-> c`: here `a, b, c, x_k, x_{k-1}` are free.
pub fn vk_parametrize_reversed(
    spec: VkSpec,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    xk: &Rational,
    xk1: &Rational,
) -> Result<RationalPoint> {
    let fwd = vk_parametrize(spec, c, b, a, xk, xk1)?;
    let k = spec.k;
    let vals = fwd.values();
    let mut out: Vec<Rational> = (0..=k).map(|i| vals[k - i].clone()).collect();
    out.extend([a.clone(), b.clone(), c.clone(), vals[k + 4].clone()]);
    RationalPoint::new(&vk_vars(spec), out)
}

/// A random point on the chart `c != 0`.
pub fn vk_sample_point(spec: VkSpec, s: &mut Sampler) -> Result<RationalPoint> {
    let (a, b, c) = (s.any(), s.any(), s.nonzero());
    vk_parametrize(spec, &a, &b, &c, &s.any(), &s.any())
}

/// `(a, b, c) = (0, 1, 0)`, `x = (1, 0, .., 0, 1)`, `z = (-1)^k`.
pub fn vk_typical_point(spec: VkSpec) -> RationalPoint {
    let v = vk_vars(spec);
    let k = spec.k;
    let z = if k.is_multiple_of(2) { rat(1) } else { rat(-1) };
    RationalPoint::from_pairs(&v, &[("x0", rat(1)), (&x(k), rat(1)), ("b", rat(1)), ("z", z)]).expect("names exist")
}

/// `x0..xk, a, b, c, z, u, v, up, vp`, the ring of the apolarity forms.
pub fn polar_vars(spec: VkSpec) -> VarTable {
    vk_vars(spec).extended(&["u", "v", "up", "vp"]).expect("fresh names")
}

/// Outcome of the two section checks on `V(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionReport {
    pub k: usize,
    /// Generators checked under `x_i = u^{k-i} v^i`, `z = 0`.
    pub z_checked: usize,
    /// Labels whose image is not divisible by `g = au^2 + buv + cv^2`.
    pub z_failures: Vec<String>,
    /// Images of the generators under `z = a = c = 0`, up to sign.
    pub azc_images: BTreeSet<String>,
    /// 2x2 minors of `M` together with `b x_i`, up to sign.
    pub azc_expected: BTreeSet<String>,
}

impl SectionReport {
    pub fn passed(&self) -> bool {
        self.z_failures.is_empty() && self.azc_images == self.azc_expected
    }
}

/// `g = a u^2 + b u v + c v^2` over [`polar_vars`].
pub fn polar_g(spec: VkSpec) -> Polynomial {
    polar_vars(spec).poly("a*u^2 + b*u*v + c*v^2")
}

/// The substitution `x_i = u^{k-i} v^i`, `z = 0` into [`polar_vars`].
pub fn z_section(spec: VkSpec) -> Substitution {
    let src = vk_vars(spec);
    let tgt = polar_vars(spec);
    let k = spec.k;
    let mut s = Substitution::new(&src, &tgt).with_poly("z", Polynomial::zero(&tgt));
    for i in 0..=k {
        let img = &tgt.var("u").pow((k - i) as u32) * &tgt.var("v").pow(i as u32);
        s = s.with_poly(&x(i), img);
    }
    s
}

/// Runs both section checks on the given systems (typically the equations
/// and the Pfaffians for the first, the equations alone for the second).
pub fn vk_sections(spec: VkSpec, divisible: &[&EquationSystem], azc: &EquationSystem) -> Result<SectionReport> {
    let g = polar_g(spec);
    let sub = z_section(spec);
    let mut z_failures = Vec::new();
    let mut z_checked = 0;
    for sys in divisible {
        for gen in sys.generators() {
            z_checked += 1;
            let img = gen.poly.substitute(&sub)?;
            if img.exact_divide(&g).is_err() {
                z_failures.push(gen.label.clone());
            }
        }
    }
    let v = vk_vars(spec);
    let zero = Substitution::constant(&v, &[("z", rat(0)), ("a", rat(0)), ("c", rat(0))])?;
    let sign_class = |p: &Polynomial| {
        let n = -p;
        std::cmp::max(p.to_string(), n.to_string())
    };
    let mut azc_images = BTreeSet::new();
    for gen in azc.generators() {
        let img = gen.poly.substitute(&zero)?;
        if !img.is_zero() {
            azc_images.insert(sign_class(&img));
        }
    }
    let mut azc_expected = BTreeSet::new();
    let k = spec.k;
    for p in 0..k {
        for q in p + 1..k {
            let m = &(&v.var(&x(p)) * &v.var(&x(q + 1))) - &(&v.var(&x(p + 1)) * &v.var(&x(q)));
            if !m.is_zero() {
                azc_expected.insert(sign_class(&m));
            }
        }
    }
    for i in 1..k {
        azc_expected.insert(sign_class(&(&v.var("b") * &v.var(&x(i)))));
    }
    Ok(SectionReport { k, z_checked, z_failures, azc_images, azc_expected })
}

/// `f = sum binom(k,i) x_i u^{k-i} v^i` over [`polar_vars`].
pub fn binary_form(spec: VkSpec) -> Polynomial {
    let v = polar_vars(spec);
    let k = spec.k;
    let mut f = Polynomial::zero(&v);
    for i in 0..=k {
        let t = &(&v.var(&x(i)) * &v.var("u").pow((k - i) as u32)) * &v.var("v").pow(i as u32);
        f = &f + &t.scale(&rat(binomial(k as u32, i as u32)));
    }
    f
}

/// The second polar from derivatives:
/// `(f_uu u'^2 + 2 f_uv u'v' + f_vv v'^2) / (k(k-1))`.
pub fn second_polar_by_derivatives(spec: VkSpec) -> Result<Polynomial> {
    let v = polar_vars(spec);
    let f = binary_form(spec);
    let fu = f.differentiate_by("u")?;
    let fv = f.differentiate_by("v")?;
    let fuu = fu.differentiate_by("u")?;
    let fuv = fu.differentiate_by("v")?;
    let fvv = fv.differentiate_by("v")?;
    let up = v.var("up");
    let vp = v.var("vp");
    let s = &(&(&fuu * &up.pow(2)) + &(&fuv * &(&up * &vp)).scale(&rat(2))) + &(&fvv * &vp.pow(2));
    let k = spec.k as i64;
    s.div_scalar(&rat(k * (k - 1)))
}

/// The second polar in closed form:
/// `sum binom(k-2,i) u^{k-2-i} v^i (x_i u'^2 + 2 x_{i+1} u'v' + x_{i+2} v'^2)`.
pub fn second_polar(spec: VkSpec) -> Polynomial {
    let v = polar_vars(spec);
    let k = spec.k;
    let mut phi = Polynomial::zero(&v);
    for i in 0..=k - 2 {
        let inner = v.poly(&format!("x{}*up^2 + 2*x{}*up*vp + x{}*vp^2", i, i + 1, i + 2));
        let w = &v.var("u").pow((k - 2 - i) as u32) * &v.var("v").pow(i as u32);
        phi = &phi + &(&w * &inner).scale(&rat(binomial(k as u32 - 2, i as u32)));
    }
    phi
}

/// Contracts the quadratic dependence on `u', v'` against the apolar vector:
/// `u'^2 -> a`, `u'v' -> b/2`, `v'^2 -> c`. Terms of other degree in
/// `u', v'` are rejected.
pub fn apolar_contraction(phi: &Polynomial) -> Result<Polynomial> {
    let v = phi.vars();
    let keys = [v.require("up")?, v.require("vp")?];
    let mut out = Polynomial::zero(v);
    for (e, coef) in phi.collect(&keys) {
        let factor = match e.as_slice() {
            [2, 0] => v.var("a"),
            [1, 1] => v.var("b").scale(&ratio(1, 2)),
            [0, 2] => v.var("c"),
            _ => return Err(Error::InvalidParameter(format!("term of degree {e:?} in u', v'"))),
        };
        out = &out + &(&coef * &factor);
    }
    Ok(out)
}

/// Coefficients of `u^{k-2-i} v^i` in a form of degree `k-2` in `u, v`,
/// `i = 0..k-2`, as polynomials in the remaining variables.
pub fn uv_coefficients(p: &Polynomial, deg: usize) -> Result<Vec<Polynomial>> {
    let v = p.vars();
    let keys = [v.require("u")?, v.require("v")?];
    Ok((0..=deg).map(|i| p.coefficient_in(&keys, &[(deg - i) as u32, i as u32])).collect())
}

/// Whether the contraction's `u^{k-2-i} v^i` coefficient is exactly
/// `binom(k-2, i)` times the recurrence `(I)_{i+1}`, for every `i`.
pub fn contraction_matches_recurrence(spec: VkSpec) -> Result<bool> {
    let k = spec.k;
    let contracted = apolar_contraction(&second_polar(spec))?;
    let coeffs = uv_coefficients(&contracted, k - 2)?;
    let v = polar_vars(spec);
    Ok(coeffs
        .iter()
        .enumerate()
        .all(|(i, c)| *c == recurrence(&v, i + 1).scale(&rat(binomial(k as u32 - 2, i as u32)))))
}

/// The Pfaffians of [`vk_skew_matrix`] against (I)+(II), compared as sets
/// up to scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianComparison {
    pub k: usize,
    pub pfaffians: usize,
    pub equations: usize,
    /// Monic Pfaffians that are not an (I)+(II) equation.
    pub only_pfaffians: Vec<String>,
    /// Monic (I)+(II) equations that are not a Pfaffian.
    pub only_equations: Vec<String>,
}

impl PfaffianComparison {
    pub fn sets_equal(&self) -> bool {
        self.only_pfaffians.is_empty() && self.only_equations.is_empty()
    }
}

pub fn compare_pfaffians(spec: VkSpec) -> Result<PfaffianComparison> {
    let pf = vk_skew_matrix(spec)?.all_pfaffians4("Pf");
    let eq = vk_equations(spec)?;
    let (a, b) = (pf.canonical_set(), eq.canonical_set());
    Ok(PfaffianComparison {
        k: spec.k,
        pfaffians: a.len(),
        equations: b.len(),
        only_pfaffians: a.difference(&b).cloned().collect(),
        only_equations: b.difference(&a).cloned().collect(),
    })
}

/// Whether the Pfaffians and (I)+(II) generate the same ideal, by mutual
/// membership against the two Groebner bases.
pub fn pfaffians_same_ideal(spec: VkSpec, limits: Limits) -> Result<bool> {
    let v = vk_vars(spec);
    let pf = vk_skew_matrix(spec)?.all_pfaffians4("Pf").polys();
    let eq = vk_equations(spec)?.polys();
    let o = TermOrder::DegRevLex;
    let gp = buchberger_with(&v, &pf, &o, limits)?;
    let ge = buchberger_with(&v, &eq, &o, limits)?;
    Ok(gp.contains_all(&eq)? && ge.contains_all(&pf)?)
}

/// Pfaffians on index sets inside rows `4..=k+2`, that is inside the block
/// `z wedge^{k-3} N'`, with their values.
pub fn bottom_block_pfaffians(spec: VkSpec) -> Result<Vec<([usize; 4], Polynomial)>> {
    let m = vk_skew_matrix(spec)?;
    quadruples(m.size())
        .into_iter()
        .filter(|q| q[0] >= 4)
        .map(|q| Ok((q, m.pfaffian4(q[0], q[1], q[2], q[3])?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{Sampler, DEFAULT_SEED};

    fn spec(k: usize) -> VkSpec {
        VkSpec::new(k).unwrap()
    }

    fn vanishes(sys: &EquationSystem, pt: &RationalPoint) -> bool {
        sys.generators().iter().all(|g| g.poly.evaluate(pt).unwrap().is_zero())
    }

    #[test]
    fn k3_equations() {
        let s = vk_equations(spec(3)).unwrap();
        let v = s.vars().clone();
        assert_eq!(s.len(), 5);
        assert_eq!(s.get("I_1").unwrap(), &v.poly("a*x0 + b*x1 + c*x2"));
        assert_eq!(s.get("II_{0,1}").unwrap(), &v.poly("x0*x2 - x1^2 - c*z"));
        assert_eq!(s.get("II_{0,2}").unwrap(), &v.poly("x0*x3 - x1*x2 + b*z"));
        assert_eq!(s.get("II_{1,2}").unwrap(), &v.poly("x1*x3 - x2^2 - a*z"));
    }

    #[test]
    fn k2_degenerate() {
        let s = vk_equations(spec(2)).unwrap();
        let v = s.vars().clone();
        assert_eq!(s.polys(), vec![v.poly("a*x0 + b*x1 + c*x2"), v.poly("x0*x2 - x1^2 - z")]);
        assert!(VkSpec::new(1).is_err());
        assert!(vk_skew_matrix(spec(2)).is_err());
    }

    #[test]
    fn k4_adjacent_cross() {
        // x0x3 - x1x2 = -bcz at k = 4
        let s = vk_equations(spec(4)).unwrap();
        assert_eq!(s.get("II_{0,2}").unwrap(), &s.vars().poly("x0*x3 - x1*x2 + b*c*z"));
        assert_eq!(s.len(), 3 + 6);
    }

    #[test]
    fn printed_matrices_agree() {
        for k in 3..=5 {
            assert_eq!(vk_skew_matrix(spec(k)).unwrap(), vk_printed_matrix(k).unwrap(), "k = {k}");
        }
        assert!(vk_printed_matrix(6).is_none());
    }

    #[test]
    fn set_comparison_and_ideals() {
        let c3 = compare_pfaffians(spec(3)).unwrap();
        assert!(c3.sets_equal());
        let c4 = compare_pfaffians(spec(4)).unwrap();
        assert_eq!((c4.pfaffians, c4.equations), (12, 9));
        assert!(!c4.sets_equal());
        for k in 3..=8 {
            assert!(pfaffians_same_ideal(spec(k), Limits::default()).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn bottom_block_vanishes() {
        for k in 5..=8 {
            let b = bottom_block_pfaffians(spec(k)).unwrap();
            assert!(!b.is_empty());
            assert!(b.iter().all(|(_, p)| p.is_zero()), "k = {k}");
        }
    }

    #[test]
    fn recurrence_pfaffians() {
        for k in 3..=6 {
            let m = vk_skew_matrix(spec(k)).unwrap();
            let v = m.vars().clone();
            for i in 1..k {
                assert_eq!(m.pfaffian4(1, 2, 3, i + 3).unwrap(), recurrence(&v, i));
            }
        }
    }

    #[test]
    fn parametrized_points() {
        let mut rng = Sampler::new(DEFAULT_SEED);
        for k in 2..=6 {
            let eqs = vk_equations(spec(k)).unwrap();
            for _ in 0..5 {
                let (a, b, c, x0, x1) = (rng.any(), rng.any(), rng.nonzero(), rng.any(), rng.any());
                assert!(vanishes(&eqs, &vk_parametrize(spec(k), &a, &b, &c, &x0, &x1).unwrap()));
                let a2 = rng.nonzero();
                assert!(vanishes(&eqs, &vk_parametrize_reversed(spec(k), &a2, &b, &c, &x0, &x1).unwrap()));
            }
        }
    }

    #[test]
    fn parametrize_examples() {
        let p = vk_parametrize(spec(3), &rat(1), &rat(0), &rat(1), &rat(1), &rat(0)).unwrap();
        assert_eq!(p.values()[..4], [rat(1), rat(0), rat(-1), rat(0)]);
        assert_eq!(p.get("z").unwrap(), &rat(-1));
        assert_eq!(vk_parametrize(spec(3), &rat(0), &rat(1), &rat(0), &rat(1), &rat(0)), Err(Error::DivisionByZero));
        let p = vk_parametrize(spec(4), &rat(0), &rat(0), &rat(1), &rat(1), &rat(1)).unwrap();
        assert_eq!(p.get("z").unwrap(), &rat(-1));
        assert!(vanishes(&vk_equations(spec(4)).unwrap(), &p));
    }

    #[test]
    fn typical_point_sign() {
        for k in 3..=8 {
            let eqs = vk_equations(spec(k)).unwrap();
            assert!(vanishes(&eqs, &vk_typical_point(spec(k))));
        }
        // z = 1 fails at odd k
        let mut p = vk_typical_point(spec(3));
        p.set("z", rat(1)).unwrap();
        assert!(!vanishes(&vk_equations(spec(3)).unwrap(), &p));
    }

    #[test]
    fn guiding_pairs_are_sublists() {
        for k in 3..=8 {
            let eqs = vk_equations(spec(k)).unwrap();
            for i in 1..k {
                for g in vk_guiding_pair(spec(k), i).unwrap() {
                    assert!(eqs.contains_up_to_scalar(&g), "k={k} i={i} {g}");
                }
            }
        }
    }

    #[test]
    fn no_generator_divisible_by_z() {
        for k in 2..=8 {
            let eqs = vk_equations(spec(k)).unwrap();
            let zi = eqs.vars().index("z").unwrap();
            for g in eqs.generators() {
                assert!(!g.poly.every_term_divisible_by_one_of(&[zi]), "{}", g.label);
            }
        }
    }

    #[test]
    fn z_section_first_recurrence() {
        let s = z_section(spec(3));
        let v = polar_vars(spec(3));
        let img = vk_vars(spec(3)).poly("a*x0 + b*x1 + c*x2").substitute(&s).unwrap();
        assert_eq!(img, &v.var("u") * &polar_g(spec(3)));
    }

    #[test]
    fn section_checks() {
        for k in 3..=5 {
            let eqs = vk_equations(spec(k)).unwrap();
            let pf = vk_skew_matrix(spec(k)).unwrap().all_pfaffians4("pf");
            let r = vk_sections(spec(k), &[&eqs, &pf], &eqs).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.z_checked, eqs.len() + pf.len());
        }
    }

    #[test]
    fn polar_two_routes() {
        for k in 2..=7 {
            assert_eq!(second_polar(spec(k)), second_polar_by_derivatives(spec(k)).unwrap(), "k = {k}");
            assert!(contraction_matches_recurrence(spec(k)).unwrap());
        }
    }

    #[test]
    fn polar_small_cases() {
        let v = polar_vars(spec(2));
        let c = apolar_contraction(&second_polar(spec(2))).unwrap();
        assert_eq!(c, v.poly("a*x0 + b*x1 + c*x2"));
        let v = polar_vars(spec(4));
        let c = uv_coefficients(&apolar_contraction(&second_polar(spec(4))).unwrap(), 2).unwrap();
        assert_eq!(c[1], v.poly("2*(a*x1 + b*x2 + c*x3)"));
        assert!(apolar_contraction(&v.poly("up*u")).is_err());
    }
}
