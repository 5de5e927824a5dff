//! The four diptych varieties with `de = 4`: pullbacks of `V(k)` along a
//! substitution of `a, b, c, z`, followed by a chain of unprojections whose
//! divisors are checked through torus weights in the basis `L, M, A, B`.

mod deviations;
mod stages;
mod weights;

pub use deviations::*;
pub use stages::*;
pub use weights::*;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::SkewPolyMatrix;
use crate::polar::{vk_equations, vk_parametrize, vk_vars, VkSpec};
use crate::ring::{Monomial, Polynomial, Rational, RationalPoint, Substitution, VarTable};
use crate::sample::Sampler;
use crate::system::EquationSystem;

type NamedPowers = &'static [(&'static str, u32)];

/// Which of the four `de = 4` constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    /// `[2,2]`, variables `x_0..x_k, y_0..y_2`.
    TwoTwo,
    /// `[4,1]` with `l = 2k`, variables `x_0..x_k, y_0..y_4`.
    FourOneEven,
    /// `[1,4]` with `l = 2k`, variables `x_0..x_k, y_0..y_2`.
    OneFourEven,
    /// `[1,4]` with `l = 2k+1`, variables `x_0..x_k, y_0..y_3`; pulls back
    /// `V(k-1)` on `x_0..x_{k-1}`.
    OneFourOdd,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [CaseId::TwoTwo, CaseId::FourOneEven, CaseId::OneFourEven, CaseId::OneFourOdd];

    /// Short name used on the command line.
    pub fn id(self) -> &'static str {
        match self {
            CaseId::TwoTwo => "22",
            CaseId::FourOneEven => "41e",
            CaseId::OneFourEven => "14e",
            CaseId::OneFourOdd => "14o",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CaseId::TwoTwo => "[2,2]",
            CaseId::FourOneEven => "[4,1]-even",
            CaseId::OneFourEven => "[1,4]-even",
            CaseId::OneFourOdd => "[1,4]-odd",
        }
    }

    /// Index of the last `y` variable.
    pub fn y_top(self) -> usize {
        match self {
            CaseId::TwoTwo | CaseId::OneFourEven => 2,
            CaseId::FourOneEven => 4,
            CaseId::OneFourOdd => 3,
        }
    }

    /// The `y` variable playing `-b` in the rally.
    pub fn rally_y(self) -> usize {
        match self {
            CaseId::TwoTwo | CaseId::OneFourEven => 1,
            CaseId::FourOneEven | CaseId::OneFourOdd => 2,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !matches!(c, '[' | ']' | ',' | '-' | ' ')).collect();
        match t.to_ascii_lowercase().as_str() {
            "22" => Ok(CaseId::TwoTwo),
            "41e" | "41even" | "41" => Ok(CaseId::FourOneEven),
            "14e" | "14even" => Ok(CaseId::OneFourEven),
            "14o" | "14odd" => Ok(CaseId::OneFourOdd),
            _ => Err(Error::InvalidParameter(format!("unknown diptych case `{s}`"))),
        }
    }
}

/// A case together with its length parameter `k >= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiptychCase {
    id: CaseId,
    k: usize,
}

impl DiptychCase {
    pub fn new(id: CaseId, k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParameter(format!("diptych cases need k >= 3, got {k}")));
        }
        Ok(DiptychCase { id, k })
    }

    pub fn id(&self) -> CaseId {
        self.id
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The `k` of the `V(k)` being pulled back.
    pub fn vk_k(&self) -> usize {
        match self.id {
            CaseId::OneFourOdd => self.k - 1,
            _ => self.k,
        }
    }

    pub fn vk_spec(&self) -> VkSpec {
        VkSpec::new(self.vk_k()).expect("k >= 2")
    }

    /// Whether the top corner mirrors the bottom one.
    pub fn has_mirror(&self) -> bool {
        self.id != CaseId::OneFourOdd
    }
}

impl fmt::Display for DiptychCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={}", self.id, self.k)
    }
}

pub(crate) fn xn(i: usize) -> String {
    format!("x{i}")
}

pub(crate) fn yn(j: usize) -> String {
    format!("y{j}")
}

/// `x0..xk, y0..y_top, L, M, A, B`.
pub fn diptych_vars(case: DiptychCase) -> VarTable {
    let mut names: Vec<String> = (0..=case.k).map(xn).collect();
    names.extend((0..=case.id.y_top()).map(yn));
    names.extend(BASIS.map(String::from));
    VarTable::of(&names)
}

/// Product of powers of named variables.
pub(crate) fn mono(v: &VarTable, factors: &[(&str, u32)]) -> Polynomial {
    factors.iter().fold(Polynomial::one(v), |acc, (n, e)| &acc * &v.var(n).pow(*e))
}

/// The monomial of a one-term polynomial written as text.
pub fn monomial_of(v: &VarTable, src: &str) -> Result<Monomial> {
    let p = v.parse(src)?;
    match p.terms() {
        [(m, _)] => Ok(m.clone()),
        _ => Err(Error::InvalidParameter(format!("`{src}` is not a monomial"))),
    }
}

/// Images of `(a, b, c, z)` as a tuple of polynomials over the case table.
fn abcz(case: DiptychCase, printed: bool) -> [Polynomial; 4] {
    let v = diptych_vars(case);
    let [a, b, c, z] = match case.id {
        CaseId::TwoTwo => ["L*M", "-y1", "A*B", "B*M"],
        CaseId::FourOneEven => ["L*M^2", "-y2", "A*B^2", "B*M*y2"],
        CaseId::OneFourEven => ["L^2*M", "-y1", "A^2*B", "B*M"],
        CaseId::OneFourOdd => ["L*M^2", "-y2", "A^2*B", "A*B*M*y2"],
    }
    .map(|s| v.poly(s));
    if printed {
        [a, b, c, v.poly("B*M")]
    } else {
        [a, b, c, z]
    }
}

fn make_substitution(case: DiptychCase, images: [Polynomial; 4]) -> Substitution {
    let src = vk_vars(case.vk_spec());
    let tgt = diptych_vars(case);
    let [a, b, c, z] = images;
    Substitution::new(&src, &tgt).with_poly("a", a).with_poly("b", b).with_poly("c", c).with_poly("z", z)
}

/// The substitution `(a, b, c, z)` into the case ring, with `x_i` fixed.
///
/// `[2,2]`: `(LM, -y1, AB, BM)`; `[4,1]`-even: `(LM^2, -y2, AB^2, BMy2)`;
/// `[1,4]`-even: `(L^2M, -y1, A^2B, BM)`; `[1,4]`-odd: `(LM^2, -y2, A^2B,
/// ABMy2)` into `V(k-1)`. For the two `y2` cases these are the only
/// `z`-images making the rally and the bottom cross homogeneous together.
pub fn case_substitution(case: DiptychCase) -> Substitution {
    make_substitution(case, abcz(case, false))
}

/// The substitution as printed, with `z -> BM` in all four cases.
pub fn printed_substitution(case: DiptychCase) -> Substitution {
    make_substitution(case, abcz(case, true))
}

fn pull(case: DiptychCase, s: &Substitution, name: String) -> Result<EquationSystem> {
    let base = vk_equations(case.vk_spec())?;
    let mut sys = EquationSystem::new(name, s.target());
    for g in base.generators() {
        let p = s.apply(&g.poly)?;
        if !p.is_zero() {
            sys.push_dedup(g.label.clone(), p)?;
        }
    }
    Ok(sys)
}

/// `V(k)` (resp. `V(k-1)`) pulled back along [`case_substitution`]: the
/// equations of `W_0`.
pub fn pullback_equations(case: DiptychCase) -> Result<EquationSystem> {
    pull(case, &case_substitution(case), format!("W0{}", case.id.label()))
}

pub fn printed_pullback_equations(case: DiptychCase) -> Result<EquationSystem> {
    pull(case, &printed_substitution(case), format!("W0{}-printed", case.id.label()))
}

/// The two equations of the bottom cross, in the form `lhs - rhs`.
///
/// For `[1,4]`-even these are derived by unprojecting `y0` with pole `M`;
/// the printed pair is [`printed_bottom_equations`].
pub fn bottom_equations(case: DiptychCase) -> EquationSystem {
    let v = diptych_vars(case);
    let k = case.k as u32;
    let (x0, x1) = (v.var("x0"), v.var("x1"));
    let (y0, y1) = (v.var("y0"), v.var("y1"));
    let (l, m) = (v.var("L"), v.var("M"));
    let pair = match case.id {
        CaseId::TwoTwo => [
            &(&(&x1 * &y0) - &mono(&v, &[("A", k - 1), ("B", k)])) - &(&x0.pow(2) * &l),
            &(&(&x0 * &y1) - &(&mono(&v, &[("A", 1), ("B", 1)]) * &x1)) - &(&y0 * &m),
        ],
        CaseId::FourOneEven => [
            &(&(&x1 * &y0) - &(&mono(&v, &[("A", k - 1), ("B", 2 * k - 1)]) * &y1)) - &(&x0.pow(3) * &l),
            &(&(&x0 * &y1) - &mono(&v, &[("A", k), ("B", 2 * k + 1)])) - &(&y0 * &m),
        ],
        CaseId::OneFourEven => [
            &(&(&x1 * &y0) - &mono(&v, &[("A", 2 * k - 2), ("B", k)])) - &(&x0.pow(2) * &l.pow(2)),
            &(&(&x0 * &y1) - &(&mono(&v, &[("A", 2), ("B", 1)]) * &x1)) - &(&y0 * &m),
        ],
        CaseId::OneFourOdd => [
            &(&(&x1 * &y0) - &(&mono(&v, &[("A", 2 * k - 3), ("B", k - 1)]) * &y1)) - &(&x0.pow(3) * &l),
            &(&(&x0 * &y1) - &mono(&v, &[("A", 2 * k - 1), ("B", k)])) - &(&y0 * &m),
        ],
    };
    let mut sys = EquationSystem::new(format!("bottom{}", case.id.label()), &v);
    let [e0, e1] = pair;
    sys.push("x1y0", e0).expect("fresh");
    sys.push("x0y1", e1).expect("fresh");
    sys
}

/// The `[1,4]`-even bottom pair exactly as printed,
/// `x1y0 = A^{2k-1}B^k + x0L` and `x0y1 = x1^2A^2B + y0^2M`; `None` for
/// the other cases, whose printed pairs are [`bottom_equations`].
pub fn printed_bottom_equations(case: DiptychCase) -> Option<EquationSystem> {
    if case.id != CaseId::OneFourEven {
        return None;
    }
    let v = diptych_vars(case);
    let k = case.k as u32;
    let mut sys = EquationSystem::new("bottom[1,4]-even-printed", &v);
    let e0 = &(&v.poly("x1*y0") - &mono(&v, &[("A", 2 * k - 1), ("B", k)])) - &v.poly("x0*L");
    sys.push("x1y0", e0).expect("fresh");
    sys.push("x0y1", v.poly("x0*y1 - x1^2*A^2*B - y0^2*M")).expect("fresh");
    Some(sys)
}

/// The involution `x_i <-> x_{k-i}`, `y_j <-> y_{top-j}`, `A <-> L`,
/// `B <-> M` exchanging the two corners. Not defined for `[1,4]`-odd.
pub fn mirror(case: DiptychCase) -> Result<Substitution> {
    if !case.has_mirror() {
        return Err(Error::InvalidParameter(format!("{} has no top/bottom symmetry", case.id)));
    }
    let v = diptych_vars(case);
    let (k, t) = (case.k, case.id.y_top());
    let mut s = Substitution::new(&v, &v);
    for i in 0..=k {
        s.set(&xn(i), v.var(&xn(k - i)))?;
    }
    for j in 0..=t {
        s.set(&yn(j), v.var(&yn(t - j)))?;
    }
    for (p, q) in [("A", "L"), ("L", "A"), ("B", "M"), ("M", "B")] {
        s.set(p, v.var(q))?;
    }
    Ok(s)
}

/// The top cross, written out; for the mirrored cases it equals the image
/// of [`bottom_equations`] under [`mirror`]. `[1,4]`-odd has none.
pub fn top_equations(case: DiptychCase) -> EquationSystem {
    let v = diptych_vars(case);
    let k = case.k as u32;
    let ku = case.k;
    let (xk, xk1) = (v.var(&xn(ku)), v.var(&xn(ku - 1)));
    let (a, b) = (v.var("A"), v.var("B"));
    let mut sys = EquationSystem::new(format!("top{}", case.id.label()), &v);
    let pair = match case.id {
        CaseId::TwoTwo => {
            let (y1, y2) = (v.var("y1"), v.var("y2"));
            Some([
                &(&(&xk1 * &y2) - &mono(&v, &[("L", k - 1), ("M", k)])) - &(&xk.pow(2) * &a),
                &(&(&xk * &y1) - &(&mono(&v, &[("L", 1), ("M", 1)]) * &xk1)) - &(&y2 * &b),
            ])
        }
        CaseId::FourOneEven => {
            let (y3, y4) = (v.var("y3"), v.var("y4"));
            Some([
                &(&(&xk1 * &y4) - &(&mono(&v, &[("L", k - 1), ("M", 2 * k - 1)]) * &y3)) - &(&xk.pow(3) * &a),
                &(&(&xk * &y3) - &mono(&v, &[("L", k), ("M", 2 * k + 1)])) - &(&y4 * &b),
            ])
        }
        CaseId::OneFourEven => {
            let (y1, y2) = (v.var("y1"), v.var("y2"));
            Some([
                &(&(&xk1 * &y2) - &mono(&v, &[("L", 2 * k - 2), ("M", k)])) - &(&xk.pow(2) * &a.pow(2)),
                &(&(&xk * &y1) - &(&mono(&v, &[("L", 2), ("M", 1)]) * &xk1)) - &(&y2 * &b),
            ])
        }
        CaseId::OneFourOdd => None,
    };
    if let Some([e0, e1]) = pair {
        let t = case.id.y_top();
        sys.push(format!("x{}y{}", ku - 1, t), e0).expect("fresh");
        sys.push(format!("x{}y{}", ku, t - 1), e1).expect("fresh");
    }
    sys
}

/// The three equations displayed for the rally at `i`, in the form
/// `lhs - rhs`: `y x_i = c x_{i+1} + a x_{i-1}`, the guiding
/// `x_{i-1}x_{i+1} = x_i^2 + c^{n-i-1}a^{i-1} t2` and, for `i <= n-2`,
/// `x_{i-1}x_{i+2} = x_i x_{i+1} + c^{n-i-2}a^{i-1} t3`, where `n` is the
/// pulled back `k`.
fn rally_from(case: DiptychCase, i: usize, t2: &Polynomial, t3: &Polynomial) -> Result<Vec<(String, Polynomial)>> {
    let n = case.vk_k();
    if i < 1 || i >= n {
        return Err(Error::BadIndex(format!("rally index {i} outside 1..{}", n - 1)));
    }
    let v = diptych_vars(case);
    let [a, b, c, _] = abcz(case, false);
    let x = |j: usize| v.var(&xn(j));
    let mut out = Vec::new();
    let lin = &(&(&(-&b) * &x(i)) - &(&c * &x(i + 1))) - &(&a * &x(i - 1));
    out.push((format!("rally1_{i}"), lin));
    let coef = &a.pow(i as u32 - 1) * &c.pow((n - i - 1) as u32);
    let guiding = &(&(&x(i - 1) * &x(i + 1)) - &x(i).pow(2)) - &(&coef * t2);
    out.push((format!("rally2_{i}"), guiding));
    if i + 2 <= n {
        let coef = &a.pow(i as u32 - 1) * &c.pow((n - i - 2) as u32);
        let third = &(&(&x(i - 1) * &x(i + 2)) - &(&x(i) * &x(i + 1))) - &(&coef * t3);
        out.push((format!("rally3_{i}"), third));
    }
    Ok(out)
}

/// The rally equations at `i` derived from [`case_substitution`]:
/// `t2 = z` and `t3 = y z`.
pub fn rally_equations(case: DiptychCase, i: usize) -> Result<Vec<(String, Polynomial)>> {
    let [_, b, _, z] = abcz(case, false);
    rally_from(case, i, &z, &(&(-&b) * &z))
}

/// The rally equations at `i` as printed.
pub fn printed_rally_equations(case: DiptychCase, i: usize) -> Result<Vec<(String, Polynomial)>> {
    let v = diptych_vars(case);
    let (t2, t3) = match case.id {
        CaseId::TwoTwo => ("B*M", "B*M*y1"),
        CaseId::FourOneEven => ("B*M", "B*M*y2"),
        CaseId::OneFourEven => ("A*L", "B*M*y2"),
        CaseId::OneFourOdd => ("A*B*M*y2", "A*B*M*y2^2"),
    };
    rally_from(case, i, &v.poly(t2), &v.poly(t3))
}

/// Which pentagram of a case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pentagram {
    /// The matrix adjoining the bottom corner: the first matrix of the
    /// `[2,2]` rally, the `y2` matrix of `[1,4]`-odd, and their analogues.
    Bottom,
    /// The `x2` matrix of `[1,4]`-odd and its `[4,1]`-even analogue.
    Second,
    /// The flat pentagram with the rally `y` against `x_{i-1}..x_{i+2}`.
    Flat(usize),
}

impl fmt::Display for Pentagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pentagram::Bottom => f.write_str("bottom"),
            Pentagram::Second => f.write_str("second"),
            Pentagram::Flat(i) => write!(f, "flat{i}"),
        }
    }
}

/// A skew matrix from its displayed upper triangle. Displayed pentagrams
/// carry the entries `m14`, `m15`, `m25` with the opposite sign to the
/// Pfaffian convention `m_ij m_kl - m_ik m_jl + m_il m_jk`, so those three
/// are negated here.
pub fn from_display(vars: &VarTable, rows: Vec<Vec<Polynomial>>) -> Result<SkewPolyMatrix> {
    let mut m = SkewPolyMatrix::from_upper_rows(vars, rows)?;
    if m.size() != 5 {
        return Err(Error::InvalidParameter(format!("a pentagram is 5 x 5, got {}", m.size())));
    }
    for (i, j) in [(1, 4), (1, 5), (2, 5)] {
        let e = -m.upper(i, j);
        m.set(i, j, e);
    }
    Ok(m)
}

fn display(v: &VarTable, rows: &[&[&str]]) -> SkewPolyMatrix {
    let rows = rows.iter().map(|r| r.iter().map(|s| v.poly(s)).collect()).collect();
    from_display(v, rows).unwrap_or_else(|e| panic!("{e}"))
}

/// The pentagrams a case uses, in adjoining order.
pub fn pentagram_list(case: DiptychCase) -> Vec<Pentagram> {
    let n = case.vk_k();
    let mut out = vec![Pentagram::Bottom];
    if matches!(case.id, CaseId::FourOneEven | CaseId::OneFourOdd) {
        out.push(Pentagram::Second);
    }
    out.extend((1..n - 1).map(Pentagram::Flat));
    out
}

/// The flat pentagram at `i` built from `V(n)` and substituted:
/// display rows `(-b, x_{i+1}, a, x_{i+2} / x_{i-1}, c, x_i / x_i,
/// c^{n-i-2}a^{i-1}z / x_{i+1})`.
pub fn flat_pentagram(case: DiptychCase, i: usize) -> Result<SkewPolyMatrix> {
    let n = case.vk_k();
    if i < 1 || i + 2 > n {
        return Err(Error::BadIndex(format!("flat pentagram index {i} outside 1..{}", n.saturating_sub(2))));
    }
    let spec = case.vk_spec();
    let vv = vk_vars(spec);
    let x = |j: usize| vv.var(&xn(j));
    let (a, b, c, z) = (vv.var("a"), vv.var("b"), vv.var("c"), vv.var("z"));
    let corner = &(&c.pow((n - i - 2) as u32) * &a.pow(i as u32 - 1)) * &z;
    let rows = vec![
        vec![-&b, x(i + 1), a.clone(), x(i + 2)],
        vec![x(i - 1), c.clone(), x(i)],
        vec![x(i), corner],
        vec![x(i + 1)],
    ];
    from_display(&vv, rows)?.substitute(&case_substitution(case))
}

/// The pentagram as a skew matrix over the case table (Pfaffian sign
/// convention). Flat pentagrams come from [`flat_pentagram`]; the printed
/// transcriptions are in [`printed_pentagram`].
pub fn pentagram_matrix(case: DiptychCase, which: Pentagram) -> Result<SkewPolyMatrix> {
    let v = diptych_vars(case);
    let k = case.k;
    let bad = || Error::BadIndex(format!("{} has no {which} pentagram", case.id));
    match which {
        Pentagram::Flat(i) => flat_pentagram(case, i),
        Pentagram::Bottom => Ok(match case.id {
            CaseId::TwoTwo => display(
                &v,
                &[
                    &["y1", "x1", "M", "x2"],
                    &["y0", "A*B", "x0*L"],
                    &["x0", &format!("A^{}*B^{}", k - 2, k - 1)],
                    &["x1"],
                ],
            ),
            CaseId::OneFourEven => display(
                &v,
                &[
                    &["y1", "x1", "M", "x2"],
                    &["y0", "A^2*B", "x0*L^2"],
                    &["x0", &format!("A^{}*B^{}", 2 * k - 4, k - 1)],
                    &["x1"],
                ],
            ),
            CaseId::FourOneEven => display(
                &v,
                &[
                    &["y1", "A*B^2", "M", "y2"],
                    &["y0", &format!("A^{}*B^{}", k - 1, 2 * k - 1), "x0^2*L"],
                    &["x0", "y1"],
                    &["x1"],
                ],
            ),
            CaseId::OneFourOdd => display(
                &v,
                &[
                    &["y1", "A^2*B", "M", "y2"],
                    &["y0", &format!("A^{}*B^{}", 2 * k - 3, k - 1), "x0^2*L"],
                    &["x0", "y1"],
                    &["x1"],
                ],
            ),
        }),
        Pentagram::Second => match case.id {
            CaseId::FourOneEven => Ok(display(
                &v,
                &[
                    &["y2", "x1", "M", "x2"],
                    &["y1", "A*B^2", "x0*L*M"],
                    &["x0", &format!("y2*A^{}*B^{}", k - 2, 2 * k - 3)],
                    &["x1"],
                ],
            )),
            CaseId::OneFourOdd => Ok(display(
                &v,
                &[
                    &["y2", "x1", "M", "x2"],
                    &["y1", "A^2*B", "x0*L*M"],
                    &["x0", &format!("y2*A^{}*B^{}", 2 * k - 5, k - 2)],
                    &["x1"],
                ],
            )),
            _ => Err(bad()),
        },
    }
}

/// The pentagrams displayed as matrices, transcribed as printed (display
/// sign convention applied): the first `[2,2]` matrix, the `[2,2]` and
/// `[1,4]`-odd flat pentagrams and the `[1,4]`-odd `y2` and `x2` matrices.
pub fn printed_pentagram(case: DiptychCase, which: Pentagram) -> Option<SkewPolyMatrix> {
    let v = diptych_vars(case);
    match (case.id, which) {
        (CaseId::TwoTwo, Pentagram::Flat(i)) | (CaseId::OneFourOdd, Pentagram::Flat(i)) => {
            let n = case.vk_k();
            if i < 1 || i + 2 > n {
                return None;
            }
            let (y, lm, ab, z) = if case.id == CaseId::TwoTwo {
                ("y1", "L*M", "A*B", "B*M")
            } else {
                ("y2", "L*M^2", "A^2*B", "A*B*M*y2")
            };
            let corner = format!("({ab})^{}*({lm})^{}*{z}", n - i - 2, i - 1);
            let (xa, xb, xc, xd) = (xn(i - 1), xn(i), xn(i + 1), xn(i + 2));
            Some(display(&v, &[&[y, &xc, lm, &xd], &[&xa, ab, &xb], &[&xb, &corner], &[&xc]]))
        }
        (CaseId::TwoTwo, Pentagram::Bottom)
        | (CaseId::OneFourOdd, Pentagram::Bottom)
        | (CaseId::OneFourOdd, Pentagram::Second) => pentagram_matrix(case, which).ok(),
        _ => None,
    }
}

/// Rational point of the full diptych variety, built by running the
/// unprojections forward from a point of `V(k)`:
/// the rally `y` is fixed by the `z`-constraint, then each new `y` is the
/// quotient of a linear unprojection equation by `M` (bottom) or `B` (top).
pub fn diptych_point(case: DiptychCase, sampler: &mut Sampler) -> Result<RationalPoint> {
    loop {
        if let Some(p) = try_point(case, sampler)? {
            return Ok(p);
        }
    }
}

fn try_point(case: DiptychCase, s: &mut Sampler) -> Result<Option<RationalPoint>> {
    let v = diptych_vars(case);
    let k = case.k;
    let n = case.vk_k();
    let (av, bv, lv, mv) = (s.nonzero(), s.nonzero(), s.nonzero(), s.nonzero());
    let (x0, x1) = (s.nonzero(), s.nonzero());
    let pw = |r: &Rational, e: usize| num_traits::pow(r.clone(), e);
    let (a, c) = match case.id {
        CaseId::TwoTwo => (&lv * &mv, &av * &bv),
        CaseId::FourOneEven => (&lv * pw(&mv, 2), &av * pw(&bv, 2)),
        CaseId::OneFourEven => (pw(&lv, 2) * &mv, pw(&av, 2) * &bv),
        CaseId::OneFourOdd => (&lv * pw(&mv, 2), pw(&av, 2) * &bv),
    };
    let quad = &a * &x0 * &x0 + &c * &x1 * &x1;
    let cn = pw(&c, n - 1);
    // z = -(a x0^2 + b x0 x1 + c x1^2)/c^{n-1} with z = zf, or z = zf * y
    // and b = -y.
    let y_rally = match case.id {
        CaseId::TwoTwo | CaseId::OneFourEven => {
            let b = -(&bv * &mv * &cn + &quad) / (&x0 * &x1);
            -b
        }
        CaseId::FourOneEven | CaseId::OneFourOdd => {
            let zf = if case.id == CaseId::FourOneEven { &bv * &mv } else { &av * &bv * &mv };
            let den = &x0 * &x1 - zf * &cn;
            if den.is_zero() {
                return Ok(None);
            }
            quad / den
        }
    };
    let base = vk_parametrize(case.vk_spec(), &a, &(-y_rally.clone()), &c, &x0, &x1)?;
    let mut pt = RationalPoint::zeros(&v);
    for i in 0..=n {
        pt.set(&xn(i), base.get(&xn(i))?.clone())?;
    }
    for (name, val) in [("A", &av), ("B", &bv), ("L", &lv), ("M", &mv)] {
        pt.set(name, val.clone())?;
    }
    pt.set(&yn(case.id.rally_y()), y_rally)?;
    let get = |pt: &RationalPoint, n: &str| pt.get(n).cloned();
    let xk = get(&pt, &xn(k))?;
    let xk1 = get(&pt, &xn(k - 1))?;
    let ku = k as u32;
    let mon = |pt: &RationalPoint, fs: &[(&str, u32)]| -> Result<Rational> {
        let mut r = Rational::from_integer(1.into());
        for (nm, e) in fs {
            r *= num_traits::pow(pt.get(nm)?.clone(), *e as usize);
        }
        Ok(r)
    };
    match case.id {
        CaseId::TwoTwo | CaseId::OneFourEven => {
            let (cb, ct): (NamedPowers, NamedPowers) = if case.id == CaseId::TwoTwo {
                (&[("A", 1), ("B", 1)], &[("L", 1), ("M", 1)])
            } else {
                (&[("A", 2), ("B", 1)], &[("L", 2), ("M", 1)])
            };
            let y1 = get(&pt, "y1")?;
            let y0 = (&x0 * &y1 - mon(&pt, cb)? * &x1) / &mv;
            let y2 = (&xk * &y1 - mon(&pt, ct)? * &xk1) / &bv;
            pt.set("y0", y0)?;
            pt.set("y2", y2)?;
        }
        CaseId::FourOneEven => {
            let y2 = get(&pt, "y2")?;
            let y1 = (&x0 * &y2 - mon(&pt, &[("A", 1), ("B", 2)])? * &x1) / &mv;
            let y0 = (&x0 * &y1 - mon(&pt, &[("A", ku), ("B", 2 * ku + 1)])?) / &mv;
            let y3 = (&xk * &y2 - mon(&pt, &[("L", 1), ("M", 2)])? * &xk1) / &bv;
            let y4 = (&xk * &y3 - mon(&pt, &[("L", ku), ("M", 2 * ku + 1)])?) / &bv;
            for (nm, val) in [("y0", y0), ("y1", y1), ("y3", y3), ("y4", y4)] {
                pt.set(nm, val)?;
            }
        }
        CaseId::OneFourOdd => {
            let y2 = get(&pt, "y2")?;
            let y1 = (&x0 * &y2 - mon(&pt, &[("A", 2), ("B", 1)])? * &x1) / &mv;
            let y0 = (&x0 * &y1 - mon(&pt, &[("A", 2 * ku - 1), ("B", ku)])?) / &mv;
            pt.set("y0", y0)?;
            pt.set("y1", y1)?;
            pt.set(&xn(k), s.nonzero())?;
            pt.set("y3", s.nonzero())?;
        }
    }
    Ok(Some(pt))
}

/// Every equation of the case: pullback, bottom and top crosses, the
/// Pfaffians of every pentagram and the unprojection equations of every
/// stage, merged up to scalar.
pub fn all_equations(case: DiptychCase) -> Result<EquationSystem> {
    let v = diptych_vars(case);
    let mut sys = EquationSystem::new(format!("V_ABLM{}", case.id.label()), &v);
    for part in [pullback_equations(case)?, bottom_equations(case), top_equations(case)] {
        for g in part.generators() {
            sys.push_dedup(format!("{}:{}", part.name(), g.label), g.poly.clone())?;
        }
    }
    for p in pentagram_list(case) {
        let pf = pentagram_matrix(case, p)?.all_pfaffians4(&p.to_string());
        for g in pf.generators() {
            sys.push_dedup(format!("{p}:{}", g.label), g.poly.clone())?;
        }
    }
    for st in stages(case) {
        sys.push_dedup(format!("stage{}:{}", st.index, st.adjoin.0), st.adjoin.1.clone())?;
        for (l, e) in &st.expected {
            sys.push_dedup(format!("stage{}:{l}", st.index), e.clone())?;
        }
    }
    Ok(sys)
}

/// Labels of the generators of `sys` that do not vanish at `pt`.
pub fn nonvanishing(sys: &EquationSystem, pt: &RationalPoint) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for g in sys.generators() {
        if !g.poly.evaluate(pt)?.is_zero() {
            out.push(g.label.clone());
        }
    }
    Ok(out)
}
