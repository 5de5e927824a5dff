//! The key 10-fold `W` in `A^16`: parallel unprojection of four divisors of
//! a complete intersection, with cyclic symmetry `(1234)`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::SkewPolyMatrix;
use crate::ring::{rat, Polynomial, Rational, RationalPoint, Substitution, VarTable};
use crate::sample::Sampler;
use crate::system::EquationSystem;

const FAMILIES: [&str; 4] = ["u", "v", "s", "a"];

/// `u1..u4, v1..v4, s1..s4, a1..a4`.
pub fn keyw_vars() -> VarTable {
    let names: Vec<String> = FAMILIES.iter().flat_map(|f| (1..=4).map(move |i| format!("{f}{i}"))).collect();
    VarTable::of(&names)
}

/// Index `i + n` in `1..=4`, cyclically.
fn cyc(i: usize, n: usize) -> usize {
    (i - 1 + n) % 4 + 1
}

/// The `n`-th power of the shift `u_i -> u_{i+1}`, `v_i -> v_{i+1}`,
/// `s_i -> s_{i+1}`, `a_i -> a_{i+1}`.
pub fn cyclic_shift(n: usize) -> Substitution {
    let v = keyw_vars();
    let mut s = Substitution::new(&v, &v);
    for f in FAMILIES {
        for i in 1..=4 {
            s.set(&format!("{f}{i}"), v.var(&format!("{f}{}", cyc(i, n)))).expect("present");
        }
    }
    s
}

/// Shifts the indices in a label such as `u4v1` by `n`.
fn shift_label(label: &str, n: usize) -> String {
    let mut out = String::new();
    for c in label.chars() {
        match c.to_digit(10) {
            Some(i @ 1..=4) => out.push_str(&cyc(i as usize, n).to_string()),
            _ => out.push(c),
        }
    }
    out
}

/// The two complete intersection equations of `W0`.
pub fn keyw_ci() -> [(String, Polynomial); 2] {
    let v = keyw_vars();
    [
        ("u1u3".into(), v.poly("u1*u3 - a2*s1*s2*u2 - a4*s3*s4*u4")),
        ("u2u4".into(), v.poly("u2*u4 - a1*s1*s4*u1 - a3*s2*s3*u3")),
    ]
}

/// The pentagram adjoining `v1`.
pub fn v1_pentagram() -> SkewPolyMatrix {
    SkewPolyMatrix::parse_upper_rows(
        &keyw_vars(),
        &[&["u2", "a1*s4*u1", "-a3*s2*s3", "-v1"], &["u3", "s1", "-a4*s3*s4"], &["u4", "a2*s2*u2"], &["u1"]],
    )
}

/// The three unprojection equations of `v1`.
pub fn v1_triple() -> [(String, Polynomial); 3] {
    let v = keyw_vars();
    [
        ("s1v1".into(), v.poly("s1*v1 - u1*u2 + a3*a4*s2*s3^2*s4")),
        ("u4v1".into(), v.poly("u4*v1 - a1*s4*u1^2 - a2*a3*s2^2*s3*u2")),
        ("u3v1".into(), v.poly("u3*v1 - a1*a4*s3*s4^2*u1 - a2*s2*u2^2")),
    ]
}

pub fn v1v2_equation() -> Polynomial {
    keyw_vars().poly("v1*v2 - a2*u2^3 - a1*a3*a4^2*s3^3*s4^3")
}

/// The two long equations as displayed.
pub fn long_equations() -> [(String, Polynomial); 2] {
    let v = keyw_vars();
    [
        ("v1v3".into(), v.poly("v1*v3 - a1*a4*s4^3*v4 - a2*a3*s2^3*v2 - 3*a1*a2*a3*a4*s1*s2^2*s3*s4^2")),
        ("v2v4".into(), v.poly("v2*v4 - a1*a2*s1^3*v1 - a3*a4*s3^3*v3 - 3*a1*a2*a3*a4*s1^2*s2*s3^2*s4")),
    ]
}

/// The 20 generators: 2 + 4 x 3 unprojection equations + 4 pentagram
/// bilinear equations + 2 long equations. All but the complete
/// intersection and the long equations are shift images of the `v1` data.
pub fn key_variety_equations() -> Result<EquationSystem> {
    let v = keyw_vars();
    let mut sys = EquationSystem::new("W", &v);
    for (l, p) in keyw_ci() {
        sys.push(l, p)?;
    }
    for n in 0..4 {
        let sh = cyclic_shift(n);
        for (l, p) in v1_triple() {
            sys.push(shift_label(&l, n), sh.apply(&p)?)?;
        }
    }
    for n in 0..4 {
        sys.push(shift_label("v1v2", n), cyclic_shift(n).apply(&v1v2_equation())?)?;
    }
    for (l, p) in long_equations() {
        sys.push(l, p)?;
    }
    Ok(sys)
}

fn value(pt: &RationalPoint, f: &str, i: usize) -> Rational {
    pt.get(&format!("{f}{i}")).expect("present").clone()
}

/// The complete intersection solved for `u3, u4` from the given `a, s, u1,
/// u2`. Fails when `u1u2 - a3a4s2s3^2s4 = 0`.
fn ci_point(a: &[Rational; 4], s: &[Rational; 4], u1: &Rational, u2: &Rational) -> Result<RationalPoint> {
    let v = keyw_vars();
    let det = u1 * u2 - &a[2] * &a[3] * &s[1] * &s[2] * &s[2] * &s[3];
    if det.is_zero() {
        return Err(Error::DivisionByZero);
    }
    // u1 u3 - a4 s3 s4 u4 = a2 s1 s2 u2, -a3 s2 s3 u3 + u2 u4 = a1 s1 s4 u1.
    let r1 = &a[1] * &s[0] * &s[1] * u2;
    let r2 = &a[0] * &s[0] * &s[3] * u1;
    let p = &a[3] * &s[2] * &s[3];
    let q = &a[2] * &s[1] * &s[2];
    let u3 = (&r1 * u2 + &p * &r2) / &det;
    let u4 = (u1 * &r2 + &q * &r1) / &det;
    let mut pt = RationalPoint::zeros(&v);
    for i in 1..=4 {
        pt.set(&format!("a{i}"), a[i - 1].clone())?;
        pt.set(&format!("s{i}"), s[i - 1].clone())?;
    }
    for (i, u) in [u1.clone(), u2.clone(), u3, u4].into_iter().enumerate() {
        pt.set(&format!("u{}", i + 1), u)?;
    }
    Ok(pt)
}

/// `v_i` from the first nondegenerate equation of its (shifted) triple.
fn solve_v(pt: &RationalPoint, i: usize, strict: bool) -> Result<Rational> {
    let n = i - 1;
    let sh = cyclic_shift(n);
    let vi = format!("v{i}");
    for (_, eq) in v1_triple().iter().take(if strict { 1 } else { 3 }) {
        let e = sh.apply(eq)?;
        let mut at = pt.clone();
        at.set(&vi, Rational::zero())?;
        let c0 = e.evaluate(&at)?;
        at.set(&vi, rat(1))?;
        let coef = e.evaluate(&at)? - &c0;
        if !coef.is_zero() {
            return Ok(-c0 / coef);
        }
    }
    Err(Error::DivisionByZero)
}

/// A point of `W`: `u3, u4` from the complete intersection and
/// `v_i = (u_i u_{i+1} - a_{i+2} a_{i+3} s_{i+1} s_{i+2}^2 s_{i+3}) / s_i`.
/// Needs every `s_i` and the determinant `u1u2 - a3a4s2s3^2s4` nonzero.
pub fn key_variety_parametrize(
    a: &[Rational; 4],
    s: &[Rational; 4],
    u1: &Rational,
    u2: &Rational,
) -> Result<RationalPoint> {
    if s.iter().any(|x| x.is_zero()) {
        return Err(Error::DivisionByZero);
    }
    let mut pt = ci_point(a, s, u1, u2)?;
    for i in 1..=4 {
        let vi = solve_v(&pt, i, true)?;
        pt.set(&format!("v{i}"), vi)?;
    }
    Ok(pt)
}

/// A random point of `W` with small nonzero integer parameters, redrawn
/// until the determinant is nonzero.
pub fn key_variety_sample_point(s: &mut Sampler) -> RationalPoint {
    loop {
        let a = [0; 4].map(|_| s.nonzero_int(7));
        let sv = [0; 4].map(|_| s.nonzero_int(7));
        if let Ok(pt) = key_variety_parametrize(&a, &sv, &s.nonzero_int(7), &s.nonzero_int(7)) {
            return pt;
        }
    }
}

/// As [`key_variety_parametrize`] but allowing zero `s_i`: each `v_i` comes
/// from the first equation of its triple with a nonzero coefficient. With
/// `s1 = 0` the result lies on `W` only if `u1u2 = a3a4s2s3^2s4`.
pub fn key_variety_degenerate_point(
    a: &[Rational; 4],
    s: &[Rational; 4],
    u1: &Rational,
    u2: &Rational,
) -> Result<RationalPoint> {
    let mut pt = ci_point(a, s, u1, u2)?;
    for i in 1..=4 {
        let vi = solve_v(&pt, i, false)?;
        pt.set(&format!("v{i}"), vi)?;
    }
    Ok(pt)
}

/// The values `(u1..u4, v1..v4)` of a point, for display.
pub fn uv_values(pt: &RationalPoint) -> Vec<Rational> {
    ["u", "v"].iter().flat_map(|f| (1..=4).map(move |i| value(pt, f, i))).collect()
}
