//! Torus weights in the impartial basis `L, M, A, B`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Monomial, Polynomial, VarTable};

/// Exact rational weight in the basis `L, M, A, B`.
pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

/// A 4-vector of weights, coordinates `(L, M, A, B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub [Q; 4]);

impl WeightVector {
    pub const ZERO: WeightVector = WeightVector([Q::new_raw(0, 1); 4]);

    pub fn new(l: Q, m: Q, a: Q, b: Q) -> Self {
        WeightVector([l, m, a, b])
    }

    /// From numerators over a common denominator.
    pub fn over(den: i64, l: i64, m: i64, a: i64, b: i64) -> Self {
        WeightVector([q(l, den), q(m, den), q(a, den), q(b, den)])
    }

    pub fn unit(i: usize) -> Self {
        let mut w = Self::ZERO;
        w.0[i] = q(1, 1);
        w
    }

    /// Whether every coordinate has denominator dividing 4.
    pub fn is_quarter_integral(&self) -> bool {
        self.0.iter().all(|c| 4 % c.denom() == 0)
    }

    /// Coordinates scaled by 4, when quarter-integral.
    pub fn quarters(&self) -> Option<[i64; 4]> {
        self.is_quarter_integral().then(|| self.0.map(|c| (c * q(4, 1)).to_integer()))
    }
}

impl Add for WeightVector {
    type Output = WeightVector;
    fn add(self, o: WeightVector) -> WeightVector {
        WeightVector([0, 1, 2, 3].map(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for WeightVector {
    type Output = WeightVector;
    fn sub(self, o: WeightVector) -> WeightVector {
        WeightVector([0, 1, 2, 3].map(|i| self.0[i] - o.0[i]))
    }
}

impl Mul<WeightVector> for i64 {
    type Output = WeightVector;
    fn mul(self, w: WeightVector) -> WeightVector {
        WeightVector(w.0.map(|c| c * self))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The basis monomials and their unit weights.
pub const BASIS: [&str; 4] = ["L", "M", "A", "B"];

/// A weight per variable of a table; `None` marks a variable left free by
/// the constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    vars: VarTable,
    weights: Vec<Option<WeightVector>>,
}

impl WeightTable {
    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn get(&self, name: &str) -> Option<WeightVector> {
        self.weights[self.vars.index(name)?]
    }

    pub fn weights(&self) -> &[Option<WeightVector>] {
        &self.weights
    }

    /// Names of variables without a determined weight.
    pub fn undetermined(&self) -> Vec<&str> {
        self.weights.iter().enumerate().filter(|(_, w)| w.is_none()).map(|(i, _)| self.vars.name(i)).collect()
    }

    /// Weight of a monomial, if all its variables have weights.
    pub fn of_monomial(&self, m: &Monomial) -> Option<WeightVector> {
        let mut w = WeightVector::ZERO;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                w = w + (e as i64) * self.weights[i]?;
            }
        }
        Some(w)
    }

    /// Every term carries the same weight.
    pub fn is_homogeneous(&self, p: &Polynomial) -> bool {
        let mut ws = p.terms().iter().map(|(m, _)| self.of_monomial(m));
        match ws.next() {
            None => true,
            Some(first) => first.is_some() && ws.all(|w| w == first),
        }
    }

    /// Common weight of the terms of a homogeneous polynomial.
    pub fn of_polynomial(&self, p: &Polynomial) -> Option<WeightVector> {
        if !self.is_homogeneous(p) {
            return None;
        }
        p.terms().first().and_then(|(m, _)| self.of_monomial(m))
    }
}

/// Solves the homogeneity constraints of `gens`, with `L, M, A, B` fixed to
/// the unit vectors. The four coordinates decouple, so each is one linear
/// system over the remaining variables, solved by exact Gaussian
/// elimination.
pub fn solve_weights(vars: &VarTable, gens: &[Polynomial]) -> Result<WeightTable> {
    let basis: Vec<usize> = BASIS.iter().map(|b| vars.require(b)).collect::<Result<_>>()?;
    let unknown: Vec<usize> = (0..vars.len()).filter(|i| !basis.contains(i)).collect();
    let col_of = |v: usize| unknown.iter().position(|&u| u == v);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<[i64; 4]> = Vec::new();
    for g in gens {
        if g.vars() != vars {
            return Err(Error::VarTableMismatch);
        }
        let terms = g.terms();
        let Some((m0, _)) = terms.first() else { continue };
        for (m, _) in &terms[1..] {
            let mut row = vec![0i64; unknown.len()];
            let mut r = [0i64; 4];
            for v in 0..vars.len() {
                let delta = m.exponents()[v] as i64 - m0.exponents()[v] as i64;
                if delta == 0 {
                    continue;
                }
                match col_of(v) {
                    Some(c) => row[c] = delta,
                    None => {
                        let b = basis.iter().position(|&x| x == v).expect("basis variable");
                        r[b] -= delta;
                    }
                }
            }
            rows.push(row);
            rhs.push(r);
        }
    }
    let n = unknown.len();
    let mut a: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect();
    let mut b: Vec<[Q; 4]> = rhs.iter().map(|r| r.map(|x| q(x, 1))).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        for x in b[row].iter_mut() {
            *x *= inv;
        }
        let (pa, pb) = (a[row].clone(), b[row]);
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                for (x, &y) in a[r].iter_mut().zip(&pa) {
                    *x -= y * f;
                }
                for (x, &y) in b[r].iter_mut().zip(&pb) {
                    *x -= y * f;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    if let Some(r) = (row..a.len()).find(|&r| b[r].iter().any(|x| !x.is_zero())) {
        return Err(Error::InconsistentWeights(format!("constraint row {r} reduces to 0 = nonzero")));
    }
    let mut weights: Vec<Option<WeightVector>> = vec![None; vars.len()];
    for (i, &v) in basis.iter().enumerate() {
        weights[v] = Some(WeightVector::unit(i));
    }
    for &(r, c) in &pivots {
        let determined = (0..n).all(|cc| cc == c || a[r][cc].is_zero());
        if determined {
            weights[unknown[c]] = Some(WeightVector(b[r]));
        }
    }
    Ok(WeightTable { vars: vars.clone(), weights })
}

/// A monomial prime ideal, given by its generating variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorIdeal {
    pub name: String,
    pub generators: Vec<String>,
}

impl DivisorIdeal {
    pub fn new(name: impl Into<String>, generators: Vec<String>) -> Self {
        DivisorIdeal { name: name.into(), generators }
    }

    pub fn indices(&self, vars: &VarTable) -> Result<Vec<usize>> {
        self.generators.iter().map(|g| vars.require(g)).collect()
    }

    /// Membership of a monomial: some generator divides it.
    pub fn contains_monomial(&self, vars: &VarTable, m: &Monomial) -> Result<bool> {
        Ok(self.indices(vars)?.iter().any(|&i| m.exponents()[i] > 0))
    }

    /// Membership of a polynomial: every term lies in the ideal.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(p.every_term_divisible_by_one_of(&self.indices(p.vars())?))
    }
}

/// Monomials found by [`enumerate_equal_weight`], with the way the search
/// was bounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub solutions: Vec<Monomial>,
    /// Every non-basis variable was bounded by a sign argument on one
    /// coordinate, so the list is complete without any cap.
    pub certified: bool,
}

/// All monomials in the `allowed` variables with the same weight as
/// `target`.
///
/// Exponents of the basis variables `L, M, A, B` are determined by the
/// others, so only the non-basis allowed variables are enumerated. Each of
/// them is bounded through a coordinate on which it has positive weight and
/// every other allowed non-basis variable has nonnegative weight; when no
/// such coordinate exists the exponent runs up to `cap` and the result is
/// marked uncertified. A solution with some exponent at the cap is reported
/// as [`Error::CapReached`].
pub fn enumerate_equal_weight(
    table: &WeightTable,
    target: &Monomial,
    allowed: &[&str],
    cap: u32,
) -> Result<Enumeration> {
    let vars = table.vars();
    let goal = table
        .of_monomial(target)
        .ok_or_else(|| Error::InvalidParameter("target has a variable of undetermined weight".into()))?;
    let basis: Vec<usize> = BASIS.iter().map(|b| vars.require(b)).collect::<Result<_>>()?;
    let allowed: Vec<usize> = allowed.iter().map(|n| vars.require(n)).collect::<Result<_>>()?;
    let free: Vec<usize> = allowed.iter().copied().filter(|v| !basis.contains(v)).collect();
    let mut ws = Vec::with_capacity(free.len());
    for &v in &free {
        ws.push(table.weights()[v].ok_or_else(|| {
            Error::InvalidParameter(format!("allowed variable {} has undetermined weight", vars.name(v)))
        })?);
    }
    let mut bounds = Vec::with_capacity(free.len());
    let mut certified = true;
    for (i, w) in ws.iter().enumerate() {
        let mut best: Option<u32> = None;
        for c in 0..4 {
            if w.0[c].is_positive() && ws.iter().all(|o| !o.0[c].is_negative()) {
                let bound = (goal.0[c] / w.0[c]).floor().to_integer().max(0) as u32;
                best = Some(best.map_or(bound, |b| b.min(bound)));
            }
        }
        bounds.push(best.unwrap_or_else(|| {
            certified = false;
            cap
        }));
        let _ = i;
    }
    let mut solutions = Vec::new();
    let mut exps = vec![0u32; free.len()];
    loop {
        let mut rest = goal;
        for (e, w) in exps.iter().zip(&ws) {
            rest = rest - (*e as i64) * *w;
        }
        let mut mono = vec![0u32; vars.len()];
        let mut ok = true;
        for (b, &v) in basis.iter().enumerate() {
            let c = rest.0[b];
            if c.is_negative() || !c.is_integer() || (!c.is_zero() && !allowed.contains(&v)) {
                ok = false;
                break;
            }
            mono[v] = c.to_integer() as u32;
        }
        if ok {
            for (e, &v) in exps.iter().zip(&free) {
                mono[v] = *e;
            }
            if !certified && exps.iter().zip(&bounds).any(|(e, b)| e == b) {
                return Err(Error::CapReached(target.render(vars)));
            }
            solutions.push(Monomial::from_exponents(mono));
        }
        let mut i = 0;
        loop {
            if i == exps.len() {
                solutions.sort();
                return Ok(Enumeration { solutions, certified });
            }
            if exps[i] < bounds[i] {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Outcome of a divisibility claim for one target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub target: String,
    pub solutions: usize,
    pub certified: bool,
    /// Equal-weight monomials not divisible by any generator of the divisor.
    pub counterexamples: Vec<String>,
}

impl ClaimResult {
    pub fn holds(&self) -> bool {
        self.certified && self.counterexamples.is_empty()
    }
}

/// Every monomial in `allowed` with the weight of each target lies in the
/// divisor ideal.
pub fn divisibility_claim(
    table: &WeightTable,
    divisor: &DivisorIdeal,
    targets: &[Monomial],
    allowed: &[&str],
    cap: u32,
) -> Result<Vec<ClaimResult>> {
    let vars = table.vars();
    targets
        .iter()
        .map(|t| {
            let e = enumerate_equal_weight(table, t, allowed, cap)?;
            let mut counterexamples = Vec::new();
            for m in &e.solutions {
                if !divisor.contains_monomial(vars, m)? {
                    counterexamples.push(m.render(vars));
                }
            }
            Ok(ClaimResult {
                target: t.render(vars),
                solutions: e.solutions.len(),
                certified: e.certified,
                counterexamples,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> (VarTable, WeightTable) {
        let v = VarTable::of(&["x", "y", "L", "M", "A", "B"]);
        let gens = [v.poly("x*y - L*M*A"), v.poly("x - y*B")];
        let t = solve_weights(&v, &gens).unwrap();
        (v, t)
    }

    #[test]
    fn solves_small_system() {
        let (_, t) = table();
        // 2y + B = L + M + A
        assert_eq!(t.get("y"), Some(WeightVector::over(2, 1, 1, 1, -1)));
        assert_eq!(t.get("x"), Some(WeightVector::over(2, 1, 1, 1, 1)));
        assert!(t.undetermined().is_empty());
    }

    #[test]
    fn free_and_inconsistent() {
        let v = VarTable::of(&["x", "y", "L", "M", "A", "B"]);
        let t = solve_weights(&v, &[v.poly("x*y - L")]).unwrap();
        assert_eq!(t.undetermined(), vec!["x", "y"]);
        assert!(matches!(solve_weights(&v, &[v.poly("x - L"), v.poly("x - M")]), Err(Error::InconsistentWeights(_))));
    }

    #[test]
    fn enumeration_with_certificate() {
        let (v, t) = table();
        let target = v.poly("x*y").leading_monomial().unwrap().clone();
        let e = enumerate_equal_weight(&t, &target, &["x", "L", "M", "A", "B"], 50).unwrap();
        assert!(e.certified);
        let found: Vec<String> = e.solutions.iter().map(|m| m.render(&v)).collect();
        assert_eq!(found, vec!["L*M*A"]);
        let one = Monomial::one(v.len());
        let e = enumerate_equal_weight(&t, &one, &["x", "y", "L", "M", "A", "B"], 5).unwrap();
        assert_eq!(e.solutions, vec![one]);
    }

    #[test]
    fn divisor_membership() {
        let (v, _) = table();
        let d = DivisorIdeal::new("D", vec!["x".into(), "B".into()]);
        assert!(d.contains(&v.poly("x*y + B^2")).unwrap());
        assert!(!d.contains(&v.poly("x*y + L")).unwrap());
    }

    #[test]
    fn quarter_display() {
        let w = WeightVector::over(4, -1, 0, 3, 4);
        assert_eq!(w.quarters(), Some([-1, 0, 3, 4]));
        assert_eq!(w.to_string(), "(-1/4, 0, 3/4, 1)");
        assert!(!WeightVector::over(3, 1, 0, 0, 0).is_quarter_integral());
    }
}
