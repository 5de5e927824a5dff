//! Matrices of polynomials: minors, wedge powers, skew matrices and their
//! 4x4 Pfaffians, including the floating-factor ("crazy") evaluation rule.
//!
//! [`PolyMatrix`] is indexed from 0. [`SkewPolyMatrix`] is indexed from 1 so
//! that Pfaffian labels such as `Pf_{12.34}` read directly off the indices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring::{Polynomial, Substitution, VarTable};
use crate::system::EquationSystem;

/// Dense rectangular matrix of polynomials over one table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: VarTable,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(vars: &VarTable, rows: usize, cols: usize) -> Self {
        PolyMatrix { vars: vars.clone(), rows, cols, entries: vec![Polynomial::zero(vars); rows * cols] }
    }

    pub fn from_fn(vars: &VarTable, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut m = Self::zeros(vars, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    /// Panics if the entry lives over another table or the cell is out of range.
    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        assert!(r < self.rows && c < self.cols, "cell ({r},{c}) out of range");
        assert!(p.vars() == &self.vars, "entry over a different table");
        self.entries[r * self.cols + c] = p;
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        check_indices(rows, self.rows, "row")?;
        check_indices(cols, self.cols, "column")?;
        if rows.len() != cols.len() {
            return Err(Error::BadIndex(format!("{} rows but {} columns selected", rows.len(), cols.len())));
        }
        if rows.len() > 63 {
            return Err(Error::BadIndex("minor larger than 63".into()));
        }
        let mut memo = HashMap::new();
        Ok(self.laplace(rows, cols, 0, (1u64 << cols.len()) - 1, &mut memo))
    }

    /// Expansion along row `rows[t]` over the columns still in `mask`.
    fn laplace(
        &self,
        rows: &[usize],
        cols: &[usize],
        t: usize,
        mask: u64,
        memo: &mut HashMap<u64, Polynomial>,
    ) -> Polynomial {
        if t == rows.len() {
            return Polynomial::one(&self.vars);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(&self.vars);
        let mut sign_neg = false;
        for (s, &c) in cols.iter().enumerate() {
            if mask & (1 << s) == 0 {
                continue;
            }
            let e = self.get(rows[t], c);
            if !e.is_zero() {
                let sub = self.laplace(rows, cols, t + 1, mask & !(1 << s), memo);
                let term = e * &sub;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// All `r x r` minors. Row and column subsets are listed in lexicographic
    /// order; entry `(i, j)` is the minor on `row_sets[i]` and `col_sets[j]`.
    pub fn wedge_power(&self, r: usize) -> Result<Wedge> {
        if r == 0 || r > self.rows.min(self.cols) {
            return Err(Error::InvalidParameter(format!("wedge power {r} of a {}x{} matrix", self.rows, self.cols)));
        }
        let row_sets = subsets(self.rows, r);
        let col_sets = subsets(self.cols, r);
        let cells: Vec<(usize, usize)> =
            (0..row_sets.len()).flat_map(|i| (0..col_sets.len()).map(move |j| (i, j))).collect();
        let values: Vec<Polynomial> =
            cells.par_iter().map(|&(i, j)| self.minor(&row_sets[i], &col_sets[j]).expect("valid subsets")).collect();
        let mut minors = PolyMatrix::zeros(&self.vars, row_sets.len(), col_sets.len());
        for ((i, j), v) in cells.into_iter().zip(values) {
            minors.set(i, j, v);
        }
        Ok(Wedge { row_sets, col_sets, minors })
    }

    /// For an `n x (n-2)` matrix, the skew matrix of signed complementary
    /// maximal minors: entry `(p+1, q+1)` is
    /// `(-1)^(p+q+1) det(rows without p and q)`.
    ///
    /// This is the sign convention pairing the 2x2 minor of a `2 x n` matrix on
    /// columns `p < q` with a maximal minor of an `n x (n-2)` matrix.
    pub fn complementary_minors(&self) -> Result<SkewPolyMatrix> {
        let n = self.rows;
        if n < 2 || self.cols + 2 != n {
            return Err(Error::InvalidParameter(format!(
                "complementary minors need an n x (n-2) matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let all_cols: Vec<usize> = (0..self.cols).collect();
        let mut out = SkewPolyMatrix::zeros(&self.vars, n);
        for p in 0..n {
            for q in p + 1..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != p && r != q).collect();
                let d = self.minor(&rows, &all_cols)?;
                out.set(p + 1, q + 1, if (p + q + 1) % 2 == 1 { -d } else { d });
            }
        }
        Ok(out)
    }

    pub fn substitute(&self, s: &Substitution) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|e| e.substitute(s)).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { vars: s.target().clone(), rows: self.rows, cols: self.cols, entries })
    }
}

/// Table of `r x r` minors, see [`PolyMatrix::wedge_power`].
#[derive(Clone, Debug)]
pub struct Wedge {
    pub row_sets: Vec<Vec<usize>>,
    pub col_sets: Vec<Vec<usize>>,
    pub minors: PolyMatrix,
}

impl Wedge {
    pub fn get(&self, rows: &[usize], cols: &[usize]) -> Option<&Polynomial> {
        let i = self.row_sets.iter().position(|s| s == rows)?;
        let j = self.col_sets.iter().position(|s| s == cols)?;
        Some(self.minors.get(i, j))
    }
}

fn check_indices(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadIndex(format!("{what} indices {idx:?} not strictly increasing")));
    }
    if let Some(&i) = idx.iter().find(|&&i| i >= bound) {
        return Err(Error::BadIndex(format!("{what} index {i} out of range 0..{bound}")));
    }
    Ok(())
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Skew-symmetric matrix stored by its strict upper triangle, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPolyMatrix {
    vars: VarTable,
    n: usize,
    upper: Vec<Polynomial>,
}

impl SkewPolyMatrix {
    pub fn zeros(vars: &VarTable, n: usize) -> Self {
        SkewPolyMatrix { vars: vars.clone(), n, upper: vec![Polynomial::zero(vars); n * n.saturating_sub(1) / 2] }
    }

    /// Builds from displayed rows: row `r` (0-based) lists the entries
    /// `m_{r+1, r+2} .. m_{r+1, n}`.
    pub fn from_upper_rows(vars: &VarTable, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = rows.len() + 1;
        let mut m = Self::zeros(vars, n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n - 1 - r {
                return Err(Error::InvalidParameter(format!(
                    "row {} has {} entries, expected {}",
                    r + 1,
                    row.len(),
                    n - 1 - r
                )));
            }
            for (c, p) in row.into_iter().enumerate() {
                if p.vars() != vars {
                    return Err(Error::VarTableMismatch);
                }
                m.set(r + 1, r + 2 + c, p);
            }
        }
        Ok(m)
    }

    /// Same as [`SkewPolyMatrix::from_upper_rows`] with entries given as text.
    /// Panics on malformed input.
    pub fn parse_upper_rows(vars: &VarTable, rows: &[&[&str]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|s| vars.poly(s)).collect()).collect();
        Self::from_upper_rows(vars, rows).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        // i < j, both 1-based
        let (i, j) = (i - 1, j - 1);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Entry `m_{ij}` with `m_{ji} = -m_{ij}` and zero diagonal. Panics out
    /// of range.
    pub fn get(&self, i: usize, j: usize) -> Polynomial {
        assert!(i >= 1 && j >= 1 && i <= self.n && j <= self.n, "index ({i},{j}) out of range");
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[self.slot(i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.upper[self.slot(j, i)],
            std::cmp::Ordering::Equal => Polynomial::zero(&self.vars),
        }
    }

    /// Reference to the stored entry `m_{ij}`, `i < j`.
    pub fn upper(&self, i: usize, j: usize) -> &Polynomial {
        assert!(1 <= i && i < j && j <= self.n, "index ({i},{j}) not in the upper triangle");
        &self.upper[self.slot(i, j)]
    }

    /// Sets `m_{ij}` for `i < j`. Panics otherwise.
    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(1 <= i && i < j && j <= self.n, "index ({i},{j}) not in the upper triangle");
        assert!(p.vars() == &self.vars, "entry over a different table");
        let s = self.slot(i, j);
        self.upper[s] = p;
    }

    pub fn to_full(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.vars, self.n, self.n, |r, c| self.get(r + 1, c + 1))
    }

    pub fn substitute(&self, s: &Substitution) -> Result<SkewPolyMatrix> {
        let upper = self.upper.iter().map(|e| e.substitute(s)).collect::<Result<Vec<_>>>()?;
        Ok(SkewPolyMatrix { vars: s.target().clone(), n: self.n, upper })
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> SkewPolyMatrix {
        SkewPolyMatrix { vars: self.vars.clone(), n: self.n, upper: self.upper.iter().map(f).collect() }
    }

    /// Upper-triangle cells `(i, j)` where the two matrices differ.
    pub fn differences(&self, other: &SkewPolyMatrix) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n.max(other.n) {
            for j in i + 1..=self.n.max(other.n) {
                let a = (j <= self.n).then(|| self.upper(i, j));
                let b = (j <= other.n).then(|| other.upper(i, j));
                if a != b {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn check4(&self, idx: [usize; 4]) -> Result<()> {
        if idx[0] < 1 || idx.windows(2).any(|w| w[0] >= w[1]) || idx[3] > self.n {
            return Err(Error::BadIndex(format!(
                "Pfaffian indices {idx:?} must satisfy 1 <= i < j < k < l <= {}",
                self.n
            )));
        }
        Ok(())
    }

    /// `m_ij m_kl - m_ik m_jl + m_il m_jk`.
    pub fn pfaffian4(&self, i: usize, j: usize, k: usize, l: usize) -> Result<Polynomial> {
        self.check4([i, j, k, l])?;
        let t1 = self.upper(i, j) * self.upper(k, l);
        let t2 = self.upper(i, k) * self.upper(j, l);
        let t3 = self.upper(i, l) * self.upper(j, k);
        Ok(&(&t1 - &t2) + &t3)
    }

    /// Every nonzero 4x4 Pfaffian, labelled `Pf_{ij.kl}`, merged up to scalar.
    pub fn all_pfaffians4(&self, name: &str) -> EquationSystem {
        let quads = quadruples(self.n);
        let values: Vec<Polynomial> =
            quads.par_iter().map(|q| self.pfaffian4(q[0], q[1], q[2], q[3]).expect("valid")).collect();
        let mut sys = EquationSystem::new(name, &self.vars);
        for (q, p) in quads.iter().zip(values) {
            sys.push_dedup(pf_label(q), p).expect("labels are unique");
        }
        sys
    }

    /// Pfaffian of the floated matrix under the region's rule: a product of
    /// two entries picks up the floated factor exactly when one entry has
    /// both indices in the special set and the other has neither.
    pub fn crazy_pfaffian4(&self, region: &FloatRegion, i: usize, j: usize, k: usize, l: usize) -> Result<Polynomial> {
        self.check4([i, j, k, l])?;
        if region.factor.vars() != &self.vars {
            return Err(Error::VarTableMismatch);
        }
        let term = |a: usize, b: usize, c: usize, d: usize| {
            let p = self.upper(a, b) * self.upper(c, d);
            if region.crosses(a, b, c, d) {
                &p * &region.factor
            } else {
                p
            }
        };
        Ok(&(&term(i, j, k, l) - &term(i, k, j, l)) + &term(i, l, j, k))
    }
}

impl fmt::Display for SkewPolyMatrix {
    /// One line per row of the upper triangle, entries separated by ` | `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..self.n {
            let row: Vec<String> = (i + 1..=self.n).map(|j| self.upper(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" | "))?;
        }
        Ok(())
    }
}

/// All index quadruples `1 <= i < j < k < l <= n`.
pub fn quadruples(n: usize) -> Vec<[usize; 4]> {
    subsets(n, 4).into_iter().map(|s| [s[0] + 1, s[1] + 1, s[2] + 1, s[3] + 1]).collect()
}

/// `Pf_{12.34}`; indices above 9 switch to comma separation, `Pf_{1,2.3,10}`.
pub fn pf_label(q: &[usize; 4]) -> String {
    if q.iter().all(|&i| i < 10) {
        format!("Pf_{{{}{}.{}{}}}", q[0], q[1], q[2], q[3])
    } else {
        format!("Pf_{{{},{}.{},{}}}", q[0], q[1], q[2], q[3])
    }
}

/// Index region sharing a floated factor between its inside and outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloatRegion {
    special: BTreeSet<usize>,
    factor: Polynomial,
    size: usize,
}

impl FloatRegion {
    /// `special` must be a nonempty proper subset of `1..=size`.
    pub fn new(special: impl IntoIterator<Item = usize>, factor: Polynomial, size: usize) -> Result<Self> {
        let special: BTreeSet<usize> = special.into_iter().collect();
        if special.is_empty() || special.len() >= size || special.iter().any(|&i| i < 1 || i > size) {
            return Err(Error::InvalidParameter(format!(
                "special set {special:?} is not a nonempty proper subset of 1..={size}"
            )));
        }
        Ok(FloatRegion { special, factor, size })
    }

    pub fn special(&self) -> &BTreeSet<usize> {
        &self.special
    }

    pub fn factor(&self) -> &Polynomial {
        &self.factor
    }

    fn side(&self, a: usize, b: usize) -> Side {
        match (self.special.contains(&a), self.special.contains(&b)) {
            (true, true) => Side::Internal,
            (false, false) => Side::External,
            _ => Side::Crossing,
        }
    }

    /// Whether the product `m_ab m_cd` picks up the factor.
    pub fn crosses(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        matches!(
            (self.side(a, b), self.side(c, d)),
            (Side::Internal, Side::External) | (Side::External, Side::Internal)
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Internal,
    External,
    Crossing,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k3_matrix() -> SkewPolyMatrix {
        let v = VarTable::of(&["x0", "x1", "x2", "x3", "a", "b", "c", "z"]);
        SkewPolyMatrix::parse_upper_rows(&v, &[&["c", "-b", "x0", "x1"], &["a", "x1", "x2"], &["x2", "x3"], &["z"]])
    }

    fn n_matrix(k: usize) -> PolyMatrix {
        let names: Vec<&str> = vec!["a", "b", "c"];
        let v = VarTable::of(&names);
        PolyMatrix::from_fn(&v, k, k - 2, |r, c| match r as isize - c as isize {
            0 => v.var("a"),
            1 => v.var("b"),
            2 => v.var("c"),
            _ => Polynomial::zero(&v),
        })
    }

    #[test]
    fn minors_of_n() {
        let n = n_matrix(4);
        let v = n.vars().clone();
        assert_eq!(n.minor(&[0, 1], &[0, 1]).unwrap(), v.poly("a^2"));
        assert_eq!(n.minor(&[2], &[0]).unwrap(), v.poly("c"));
        let n5 = n_matrix(5);
        assert_eq!(n5.minor(&[0, 2, 4], &[0, 1, 2]).unwrap(), v.poly("a*b*c"));
        assert!(n.minor(&[1, 0], &[0, 1]).is_err());
        assert!(n.minor(&[0, 1], &[0, 5]).is_err());
    }

    #[test]
    fn wedge_of_m() {
        let v = VarTable::of(&["x0", "x1", "x2", "x3"]);
        let m = PolyMatrix::from_fn(&v, 2, 3, |r, c| v.var(&format!("x{}", r + c)));
        let w = m.wedge_power(2).unwrap();
        let got: Vec<String> = (0..3).map(|j| w.minors.get(0, j).to_string()).collect();
        assert_eq!(got, ["-x1^2 + x0*x2", "-x1*x2 + x0*x3", "-x2^2 + x1*x3"]);
        let n = n_matrix(3);
        let w1 = n.wedge_power(1).unwrap();
        assert_eq!(w1.minors.rows(), 3);
        assert_eq!(w1.get(&[1], &[0]).unwrap(), &n.vars().var("b"));
        assert!(n.wedge_power(2).is_err());
    }

    #[test]
    fn complementary_minors_of_n5_prime() {
        // N' for k = 5 is 4x2; its complementary minors form the k = 5 block.
        let n = n_matrix(4);
        let v = n.vars().clone();
        let s = n.complementary_minors().unwrap();
        let got: Vec<Polynomial> =
            [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)].iter().map(|&(i, j)| s.get(i, j)).collect();
        let want = ["c^2", "-b*c", "b^2 - a*c", "a*c", "-a*b", "a^2"];
        for (g, w) in got.iter().zip(want) {
            assert_eq!(g, &v.poly(w));
        }
    }

    #[test]
    fn k3_pfaffians() {
        let m = k3_matrix();
        let v = m.vars().clone();
        assert_eq!(m.pfaffian4(1, 2, 3, 4).unwrap(), v.poly("c*x2 + b*x1 + a*x0"));
        assert_eq!(m.pfaffian4(1, 2, 4, 5).unwrap(), v.poly("c*z - x0*x2 + x1^2"));
        assert_eq!(m.all_pfaffians4("V(3)").len(), 5);
        assert!(m.pfaffian4(1, 1, 2, 3).is_err());
        assert!(m.pfaffian4(1, 2, 3, 6).is_err());
        assert!(SkewPolyMatrix::zeros(&v, 6).all_pfaffians4("zero").is_empty());
    }

    #[test]
    fn skew_accessors() {
        let m = k3_matrix();
        assert_eq!(m.get(2, 1), -m.get(1, 2));
        assert!(m.get(3, 3).is_zero());
        assert_eq!(m.to_full().get(3, 2), &-m.get(3, 4));
        assert!(m.differences(&m).is_empty());
    }

    #[test]
    fn labels() {
        assert_eq!(pf_label(&[1, 2, 3, 4]), "Pf_{12.34}");
        assert_eq!(pf_label(&[1, 2, 3, 10]), "Pf_{1,2.3,10}");
    }

    #[test]
    fn crazy_rule_on_disjoint_set_is_ordinary() {
        let m = k3_matrix();
        let v = m.vars().clone();
        let region = FloatRegion::new([2, 3], v.var("z"), 5).unwrap();
        // {1,4,5} misses the region except index 2 or 3 at most once.
        for q in quadruples(5) {
            let c = m.crazy_pfaffian4(&region, q[0], q[1], q[2], q[3]).unwrap();
            let o = m.pfaffian4(q[0], q[1], q[2], q[3]).unwrap();
            if !(q.contains(&2) && q.contains(&3)) {
                assert_eq!(c, o, "{q:?}");
            }
        }
        assert!(FloatRegion::new([], v.var("z"), 5).is_err());
        assert!(FloatRegion::new(1..=5, v.var("z"), 5).is_err());
    }

    fn arb_entry(v: VarTable) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((0u32..2, 0u32..2, -3i64..4), 0..3).prop_map(move |ts| {
            Polynomial::from_terms(
                &v,
                ts.into_iter()
                    .map(|(a, b, c)| (crate::ring::Monomial::from_exponents(vec![a, b]), crate::ring::rat(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn pfaffian_squared_is_determinant(es in prop::collection::vec(arb_entry(VarTable::of(&["s", "t"])), 6)) {
            let v = es[0].vars().clone();
            let mut m = SkewPolyMatrix::zeros(&v, 4);
            let mut it = es.into_iter();
            for i in 1..=4 {
                for j in i + 1..=4 {
                    m.set(i, j, it.next().unwrap());
                }
            }
            let pf = m.pfaffian4(1, 2, 3, 4).unwrap();
            let det = m.to_full().minor(&[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
            prop_assert_eq!(&pf * &pf, det);
        }
    }
}
