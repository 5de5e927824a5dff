//! Diptychs with `k <= 3` and `de = 3`: the `k = 1` complete intersection,
//! `k = 2` as a section of `W(d)`, the `k = 3, e = 1` crazy Pfaffians, the
//! small pentagram cases and the 16-variable key variety `W`.

mod crazy;
mod de3;
mod keyw;

pub use crazy::*;
pub use de3::*;
pub use keyw::*;

use crate::diptych::{solve_weights, WeightTable};
use crate::error::{Error, Result};
use crate::polar::{wd_equations, wd_vars, WdSpec};
use crate::ring::{Polynomial, RationalPoint, VarTable};
use crate::system::EquationSystem;

/// `x0, x1, y0, y1, A, B, L, M`.
pub fn k1_vars() -> VarTable {
    VarTable::of(&["x0", "x1", "y0", "y1", "A", "B", "L", "M"])
}

/// `x1y0 = B + L x0^e` and `x0y1 = A x1^d + M`.
pub fn k1_equations(d: u32, e: u32) -> Result<EquationSystem> {
    if d < 1 || e < 1 {
        return Err(Error::InvalidParameter(format!("k = 1 needs d, e >= 1, got ({d}, {e})")));
    }
    let v = k1_vars();
    let mut sys = EquationSystem::new(format!("V_ABLM k=1 (d,e)=({d},{e})"), &v);
    sys.push("x1y0", v.poly(&format!("x1*y0 - B - L*x0^{e}")))?;
    sys.push("x0y1", v.poly(&format!("x0*y1 - A*x1^{d} - M")))?;
    Ok(sys)
}

/// Torus weights of the `k = 1` complete intersection.
pub fn k1_weights(d: u32, e: u32) -> Result<WeightTable> {
    let sys = k1_equations(d, e)?;
    solve_weights(&k1_vars(), &sys.polys())
}

/// `W(d)` on the section `C = x1^(e-1)`.
pub fn k2_section(d: usize, e: u32) -> Result<EquationSystem> {
    wd_equations(WdSpec::section(d, e)?)
}

/// The bottom cross `x1y0 = AB^d + Lx0^d`, `x0y1 = -x1^(e-1) A B^(d-1) + y0M`
/// over the section table.
pub fn k2_bottom_cross(d: usize, e: u32) -> Result<EquationSystem> {
    let spec = WdSpec::section(d, e)?;
    let v = wd_vars(spec);
    let mut sys = EquationSystem::new("bottom cross", &v);
    sys.push("x1y0", v.poly(&format!("x1*y0 - A*B^{d} - L*x0^{d}")))?;
    let c = v.var("x1").pow(e - 1);
    let rhs = &(&c * &v.poly(&format!("-A*B^{}", d - 1))) + &v.poly("y0*M");
    sys.push("x0y1", &v.poly("x0*y1") - &rhs)?;
    Ok(sys)
}

/// A point of the section: `x0, x1, B, M` and the rest free, with
/// `x2 = (BM - x1^e)/x0` so that `C = x1^(e-1)` holds.
pub fn k2_point(d: usize, e: u32, s: &mut crate::sample::Sampler) -> Result<RationalPoint> {
    use crate::polar::{wd_parametrize, WdParams};
    let spec = WdSpec::section(d, e)?;
    let (x0, x1, b, m) = (s.nonzero(), s.nonzero(), s.nonzero(), s.nonzero());
    let x2 = (&b * &m - num_traits::pow(x1.clone(), e as usize)) / &x0;
    let p = WdParams { b, x2, x0, m, a: s.nonzero(), l: s.nonzero(), x1 };
    wd_parametrize(spec, &p)
}

/// Replaces each named variable by its image, images listed in an order in
/// which each refers only to free variables or to images listed before it.
/// Returns the composite as a map from names to polynomials over `v`.
pub(crate) fn resolve_graph(v: &VarTable, graph: &[(&str, Polynomial)]) -> Result<Vec<(String, Polynomial)>> {
    let mut done: Vec<(String, Polynomial)> = Vec::new();
    for (name, image) in graph {
        let mut s = crate::ring::Substitution::new(v, v);
        for (n, p) in &done {
            s.set(n, p.clone())?;
        }
        done.push((name.to_string(), s.apply(image)?));
    }
    Ok(done)
}

/// Whether `p` vanishes after replacing every graph variable.
pub(crate) fn vanishes_on_graph(v: &VarTable, graph: &[(String, Polynomial)], p: &Polynomial) -> Result<bool> {
    let mut s = crate::ring::Substitution::new(v, v);
    for (n, q) in graph {
        s.set(n, q.clone())?;
    }
    Ok(s.apply(p)?.is_zero())
}

#[cfg(test)]
mod tests;
