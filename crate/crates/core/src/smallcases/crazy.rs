//! `k = 3, e = 1`: the `(d+3) x (d+3)` matrix pulled back from `W(d-1)`, its
//! extension by a last column, and the floated factor `M`.

use crate::error::{Error, Result};
use crate::matrix::{pf_label, quadruples, FloatRegion, SkewPolyMatrix};
use crate::polar::{wd_matrix, wd_vars, WdSpec};
use crate::ring::{Polynomial, Substitution, VarTable};
use crate::system::EquationSystem;

/// The case `k = 3`, `e = 1`, `d >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrazySpec {
    d: usize,
}

impl CrazySpec {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("the crazy case needs d >= 2, got {d}")));
        }
        Ok(CrazySpec { d })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Size of the extended matrix.
    pub fn size(&self) -> usize {
        self.d + 4
    }

    /// `{2, 3, d+4}` with factor `M`.
    pub fn region(&self) -> FloatRegion {
        let v = crazy_vars(*self);
        FloatRegion::new([2, 3, self.size()], v.var("M"), self.size()).expect("proper subset")
    }
}

/// `x0..x3, y0..y_{d-1}, A, B, L, M, C`.
pub fn crazy_vars(spec: CrazySpec) -> VarTable {
    let mut names: Vec<String> = (0..4).map(|i| format!("x{i}")).collect();
    names.extend((0..spec.d).map(|i| format!("y{i}")));
    names.extend(["A", "B", "L", "M", "C"].map(String::from));
    VarTable::of(&names)
}

fn fill_m3d1(spec: CrazySpec, m: &mut SkewPolyMatrix) -> Result<()> {
    let v = m.vars().clone();
    let d = spec.d;
    let p = |s: &str| v.poly(s);
    m.set(1, 2, p("-C"));
    m.set(1, 3, p("x1"));
    m.set(1, 4, p("B"));
    m.set(2, 3, p("L*M"));
    m.set(2, 4, p("x3"));
    m.set(3, 4, p("x2"));
    for i in 0..d - 1 {
        m.set(1, 5 + i, p(&format!("y{i}")));
        m.set(2, 5 + i, p(&format!("y{}", i + 1)));
        m.set(3, 5 + i, p(&format!("x3^{}*A*B^{}", i + 1, d - 2 - i)));
        m.set(4, 5 + i, p(&format!("x1^{}*L^{}*M^{}", d - 2 - i, i + 1, i)));
    }
    let (x1x3, blm) = (p("x1*x3"), p("B*L*M"));
    for i in 0..d - 1 {
        for j in i + 1..d - 1 {
            let q = Polynomial::geom_quotient(&x1x3, &blm, (j - i) as u32)?;
            let e = &(&(&p("x3*A*L*C") * &p("x1*B").pow((d - 2 - j) as u32)) * &p("x3*L*M").pow(i as u32)) * &q;
            m.set(5 + i, 5 + j, e);
        }
    }
    Ok(())
}

/// The `(d+3) x (d+3)` matrix with lower block
/// `m_{i+5,j+5} = x3ALC (x1B)^{d-2-j} (x3LM)^i ((x1x3)^{j-i} - (BLM)^{j-i})/(x1x3 - BLM)`.
pub fn m3d1_matrix(spec: CrazySpec) -> Result<SkewPolyMatrix> {
    let v = crazy_vars(spec);
    let mut m = SkewPolyMatrix::zeros(&v, spec.d + 3);
    fill_m3d1(spec, &mut m)?;
    Ok(m)
}

/// The same matrix with the last column `x0, y0M, AB^{d-1}M, x1^{d-1}` and
/// `m_{4+i,d+4} = -AC (Bx1)^{d-1-i} ((x1x3)^i - (BLM)^i)/(x1x3 - BLM)`.
pub fn m1mc_matrix(spec: CrazySpec) -> Result<SkewPolyMatrix> {
    let v = crazy_vars(spec);
    let d = spec.d;
    let n = spec.size();
    let mut m = SkewPolyMatrix::zeros(&v, n);
    fill_m3d1(spec, &mut m)?;
    let p = |s: &str| v.poly(s);
    m.set(1, n, p("x0"));
    m.set(2, n, p("y0*M"));
    m.set(3, n, p(&format!("A*B^{}*M", d - 1)));
    m.set(4, n, p(&format!("x1^{}", d - 1)));
    let (x1x3, blm) = (p("x1*x3"), p("B*L*M"));
    for i in 1..d {
        let q = Polynomial::geom_quotient(&x1x3, &blm, i as u32)?;
        m.set(4 + i, n, &(&p("-A*C") * &p("B*x1").pow((d - 1 - i) as u32)) * &q);
    }
    Ok(m)
}

/// Both matrices.
pub fn crazy_matrices(spec: CrazySpec) -> Result<(SkewPolyMatrix, SkewPolyMatrix)> {
    Ok((m3d1_matrix(spec)?, m1mc_matrix(spec)?))
}

fn pullback_from_wd(spec: CrazySpec, l_sign: i64, m_image: &str) -> Substitution {
    let src = wd_vars(WdSpec::new(spec.d - 1).expect("d >= 2"));
    let tgt = crazy_vars(spec);
    let l = tgt.var("L").scale(&crate::ring::rat(l_sign));
    Substitution::new(&src, &tgt)
        .with("x0", "-x1")
        .with("x1", "x2")
        .with("x2", "x3")
        .with("A", "x3*A")
        .with_poly("L", l)
        .with("M", m_image)
        .with("C", "-C")
}

/// `(x0, x1, x2, y, A, B, L, M, C) -> (-x1, x2, x3, y, x3A, B, (-1)^d L, -LM, -C)`,
/// which carries the matrix of `W(d-1)` entrywise onto [`m3d1_matrix`].
pub fn m3d1_substitution(spec: CrazySpec) -> Substitution {
    let sign = if spec.d.is_multiple_of(2) { 1 } else { -1 };
    pullback_from_wd(spec, sign, "-L*M")
}

/// The substitution as printed: `L -> L`, `M -> LM`.
pub fn printed_m3d1_substitution(spec: CrazySpec) -> Substitution {
    pullback_from_wd(spec, 1, "L*M")
}

/// The matrix of `W(d-1)` pulled back along `s`.
pub fn wd_pullback_matrix(spec: CrazySpec, s: &Substitution) -> Result<SkewPolyMatrix> {
    wd_matrix(WdSpec::new(spec.d - 1)?)?.substitute(s)
}

/// [`m1mc_matrix`] with `M` divided out of the entries inside the region.
pub fn floated_matrix(spec: CrazySpec) -> Result<SkewPolyMatrix> {
    let mut m = m1mc_matrix(spec)?;
    let region = spec.region();
    let inside: Vec<usize> = region.special().iter().copied().collect();
    for (a, &i) in inside.iter().enumerate() {
        for &j in &inside[a + 1..] {
            let e = m.upper(i, j).exact_divide(region.factor())?;
            m.set(i, j, e);
        }
    }
    Ok(m)
}

/// Ordinary Pfaffians of the extended matrix together with the crazy
/// Pfaffians of the floated one, merged up to scalar. Crazy labels carry a
/// `crazy:` prefix.
pub fn crazy_equation_set(spec: CrazySpec) -> Result<EquationSystem> {
    let m = m1mc_matrix(spec)?;
    let f = floated_matrix(spec)?;
    let region = spec.region();
    let mut sys = m.all_pfaffians4(&format!("V_ABLM k=3 e=1 d={}", spec.d));
    for q in quadruples(spec.size()) {
        let p = f.crazy_pfaffian4(&region, q[0], q[1], q[2], q[3])?;
        if !p.is_zero() {
            sys.push_dedup(format!("crazy:{}", pf_label(&q)), p)?;
        }
    }
    Ok(sys)
}

/// One index set where the crazy value differs from the ordinary one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrazyException {
    pub indices: [usize; 4],
    /// Whether `M * crazy = ordinary` holds exactly.
    pub exact_division: bool,
}

/// Every index set of the extended matrix where crazy and ordinary
/// evaluation differ.
pub fn crazy_scan(spec: CrazySpec) -> Result<Vec<CrazyException>> {
    let m = m1mc_matrix(spec)?;
    let f = floated_matrix(spec)?;
    let region = spec.region();
    let mut out = Vec::new();
    for q in quadruples(spec.size()) {
        let crazy = f.crazy_pfaffian4(&region, q[0], q[1], q[2], q[3])?;
        let ordinary = m.pfaffian4(q[0], q[1], q[2], q[3])?;
        if crazy != ordinary {
            out.push(CrazyException { indices: q, exact_division: &crazy * region.factor() == ordinary });
        }
    }
    Ok(out)
}

/// The index sets expected to pick up the division: `{1,2,3,d+4}` and
/// `{2,3,i,d+4}` for `i = 4..=d+3`.
pub fn expected_exceptions(spec: CrazySpec) -> Vec<[usize; 4]> {
    let n = spec.size();
    let mut out = vec![[1, 2, 3, n]];
    out.extend((4..n).map(|i| [2, 3, i, n]));
    out
}

/// The crazy `Pf_{12.3(d+4)}`, that is `x1y0 = -AB^{d-1}C + x0L` up to
/// sign. Only `M` times it is an ordinary Pfaffian.
pub fn missing_equation(spec: CrazySpec) -> Result<Polynomial> {
    let n = spec.size();
    floated_matrix(spec)?.crazy_pfaffian4(&spec.region(), 1, 2, 3, n)
}

/// The pentagram `x1, y0, y0, y1, xi` with `xi = x3`.
pub fn x1y0_pentagram(spec: CrazySpec) -> SkewPolyMatrix {
    let v = crazy_vars(spec);
    let d = spec.d;
    let rows: Vec<Vec<Polynomial>> = vec![
        vec![v.poly("x1"), v.poly("B*C"), v.poly("-L"), v.poly("-x3")],
        vec![v.poly("x0"), v.poly(&format!("A*B^{}*C", d - 2)), v.poly("-M*y0")],
        vec![v.poly("y0"), v.poly(&format!("x1^{}", d - 2))],
        vec![v.poly("y1")],
    ];
    SkewPolyMatrix::from_upper_rows(&v, rows).expect("5x5")
}

/// The variables cutting out `D0 = (x2 = x3 = y_1..y_{d-1} = L = 0)`.
pub fn d0_generators(spec: CrazySpec) -> Vec<String> {
    let mut out = vec!["x2".to_string(), "x3".to_string()];
    out.extend((1..spec.d).map(|i| format!("y{i}")));
    out.push("L".into());
    out
}

/// Outcome of [`crazy_unprojection`].
#[derive(Clone, Debug)]
pub struct CrazyUnprojection {
    pub d: usize,
    pub divisor: Vec<String>,
    pub pfaffians_scanned: usize,
    /// Pfaffians of the pulled-back matrix with a term outside `I_{D0}`.
    pub term_failures: Vec<String>,
    /// Pfaffians not killed by setting the divisor variables to zero.
    pub substitution_failures: Vec<String>,
    pub pf_12_35: Polynomial,
    /// Whether `Pf_{12.35} = x1^{d-1} - x0x3 + BMCy0`.
    pub pf_12_35_matches: bool,
}

impl CrazyUnprojection {
    pub fn holds(&self) -> bool {
        self.term_failures.is_empty() && self.substitution_failures.is_empty() && self.pf_12_35_matches
    }
}

/// Checks that every Pfaffian of [`m3d1_matrix`] lies in `I_{D0}`, both by
/// scanning terms and by substituting zero, and reads off the pentagram
/// Pfaffian that identifies `xi` with `x3`.
pub fn crazy_unprojection(spec: CrazySpec) -> Result<CrazyUnprojection> {
    let v = crazy_vars(spec);
    let divisor = d0_generators(spec);
    let idx = divisor.iter().map(|n| v.require(n)).collect::<Result<Vec<_>>>()?;
    let pfs = m3d1_matrix(spec)?.all_pfaffians4("m3d1");
    let mut zero = Substitution::new(&v, &v);
    for n in &divisor {
        zero.set(n, Polynomial::zero(&v))?;
    }
    let mut term_failures = Vec::new();
    let mut substitution_failures = Vec::new();
    for g in pfs.generators() {
        if !g.poly.every_term_divisible_by_one_of(&idx) {
            term_failures.push(g.label.clone());
        }
        if !zero.apply(&g.poly)?.is_zero() {
            substitution_failures.push(g.label.clone());
        }
    }
    let pf = x1y0_pentagram(spec).pfaffian4(1, 2, 3, 5)?;
    let want = v.poly(&format!("x1^{} - x0*x3 + B*M*C*y0", spec.d - 1));
    Ok(CrazyUnprojection {
        d: spec.d,
        divisor,
        pfaffians_scanned: pfs.len(),
        term_failures,
        substitution_failures,
        pf_12_35_matches: pf == want,
        pf_12_35: pf,
    })
}
