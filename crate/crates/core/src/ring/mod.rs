//! Exact sparse multivariate polynomials over the rationals.
//!
//! Every polynomial carries the [`VarTable`] it lives over. Terms are kept
//! sorted in descending degrevlex order (variable order of the table), with
//! no stored zero coefficients, so structural equality is mathematical
//! equality.

mod parse;
mod subst;

pub use subst::Substitution;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient type.
pub type Rational = num_rational::BigRational;

/// Integer constant as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a [`Rational`].
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug)]
struct VarTableInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// Ordered list of distinct variable names, cheap to clone.
#[derive(Clone, Debug)]
pub struct VarTable(Arc<VarTableInner>);

impl VarTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut out = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref().to_string();
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(n));
            }
            out.push(n);
        }
        Ok(VarTable(Arc::new(VarTableInner { names: out, index })))
    }

    /// Builds a table from names known to be distinct. Panics otherwise.
    pub fn of<S: AsRef<str>>(names: &[S]) -> Self {
        Self::new(names).expect("distinct variable names")
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.index.contains_key(name)
    }

    /// The variable `name` as a polynomial.
    pub fn var(&self, name: &str) -> Polynomial {
        let i = self.require(name).unwrap_or_else(|e| panic!("{e}"));
        Polynomial::variable(self, i)
    }

    /// Parses an expression such as `x0*x2 - x1^2 - 3/2*A*B`.
    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        parse::parse(self, src)
    }

    /// Like [`VarTable::parse`] but panics on malformed input. For literals
    /// written in source code.
    pub fn poly(&self, src: &str) -> Polynomial {
        self.parse(src).unwrap_or_else(|e| panic!("bad literal `{src}`: {e}"))
    }

    /// A new table with extra variables appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self> {
        let mut names: Vec<String> = self.names().to_vec();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Self::new(&names)
    }

    /// A name not present in the table, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if !self.contains(stem) {
            return stem.to_string();
        }
        (0..).map(|i| format!("{stem}{i}")).find(|n| !self.contains(n)).expect("unbounded search")
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl Eq for VarTable {}

/// Exponent vector over a [`VarTable`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    pub fn render(&self, vars: &VarTable) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| if *e == 1 { vars.name(i).to_string() } else { format!("{}^{}", vars.name(i), e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Degree reverse lexicographic comparison.
pub fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        degrevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarTable,
    /// Descending degrevlex, nonzero coefficients only.
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(vars: &VarTable) -> Self {
        Polynomial { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &VarTable, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.push((Monomial::one(vars.len()), c));
        }
        p
    }

    pub fn integer(vars: &VarTable, n: i64) -> Self {
        Self::constant(vars, rat(n))
    }

    pub fn variable(vars: &VarTable, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i), Rational::one())
    }

    pub fn monomial(vars: &VarTable, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), vars.len(), "monomial length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(vars: &VarTable, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "monomial length");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: &VarTable, acc: BTreeMap<Monomial, Rational>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Indices of variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.vars.len()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, u)| **u).map(|(i, _)| i).collect()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarTableMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some((ma, _)), Some((mb, _))) => ma.cmp(mb),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &b[j];
                    out.push((m.clone(), if negate { -c.clone() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { vars: self.vars.clone(), terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Division by a nonzero rational scalar.
    pub fn div_scalar(&self, c: &Rational) -> Result<Polynomial> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&c.recip()))
    }

    /// Multiplies by a monomial with coefficient `c`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(t, x)| (t.mul(m), x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.product(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// `self = divisor * q` for some polynomial `q`, returned on success.
    pub fn exact_divide(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check(divisor)?;
        let (lm, lc) = match divisor.terms.first() {
            Some((m, c)) => (m, c),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quotient: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let q = lm.quotient_of(m).ok_or(Error::NotDivisible)?;
            let qc = c / lc;
            rem = rem.merge(&divisor.mul_term(&q, &qc), true);
            quotient.push((q, qc));
        }
        Ok(Polynomial { vars: self.vars.clone(), terms: quotient })
    }

    /// `sum_{s=0}^{n-1} p^s q^{n-1-s}`, the polynomial `(p^n - q^n)/(p - q)`.
    pub fn geom_quotient(p: &Polynomial, q: &Polynomial, n: u32) -> Result<Polynomial> {
        p.check(q)?;
        if n == 0 {
            return Err(Error::InvalidParameter("geom_quotient needs n >= 1".into()));
        }
        let mut acc = Polynomial::zero(&p.vars);
        for s in 0..n {
            acc = acc.merge(&p.pow(s).product(&q.pow(n - 1 - s)), false);
        }
        Ok(acc)
    }

    pub fn differentiate(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] -= 1;
            (Monomial(e), c * rat(k as i64))
        });
        Polynomial::from_terms(&self.vars, terms)
    }

    pub fn differentiate_by(&self, name: &str) -> Result<Polynomial> {
        Ok(self.differentiate(self.vars.require(name)?))
    }

    pub fn evaluate(&self, pt: &RationalPoint) -> Result<Rational> {
        if pt.vars != self.vars {
            return Err(Error::VarTableMismatch);
        }
        let mut cache: HashMap<(usize, u32), Rational> = HashMap::new();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = cache.entry((i, e)).or_insert_with(|| num_traits::pow(pt.values[i].clone(), e as usize));
                t *= &*v;
                if t.is_zero() {
                    break;
                }
            }
            total += t;
        }
        Ok(total)
    }

    pub fn substitute(&self, s: &Substitution) -> Result<Polynomial> {
        s.apply(self)
    }

    /// Same polynomial over a table that contains every variable used here.
    pub fn embed(&self, target: &VarTable) -> Result<Polynomial> {
        if *target == self.vars {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| target.index(n)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    let j = map[i].ok_or_else(|| Error::UnmappedVariable(self.vars.name(i).into()))?;
                    e[j] = x;
                }
            }
            terms.push((Monomial(e), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Scalar multiple with leading coefficient one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Scalar multiple with coprime integer coefficients and positive leading
    /// coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// True when `self` and `other` agree up to a nonzero rational scalar.
    pub fn same_up_to_scalar(&self, other: &Polynomial) -> bool {
        self.vars == other.vars && self.monic() == other.monic()
    }

    /// True when `self == other` or `self == -other`.
    pub fn same_up_to_sign(&self, other: &Polynomial) -> bool {
        self == other || *self == -other
    }

    /// Splits into coefficients with respect to the variables `keys`:
    /// `self = sum m(keys) * c_m(rest)`. Returned in descending degrevlex of
    /// the key exponents.
    pub fn collect(&self, keys: &[usize]) -> Vec<(Vec<u32>, Polynomial)> {
        let mut acc: BTreeMap<Monomial, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = keys.iter().map(|&i| m.0[i]).collect();
            let mut rest = m.0.clone();
            for &i in keys {
                rest[i] = 0;
            }
            acc.entry(Monomial(key)).or_default().push((Monomial(rest), c.clone()));
        }
        acc.into_iter().rev().map(|(k, ts)| (k.0, Polynomial::from_terms(&self.vars, ts))).collect()
    }

    /// Coefficient of the key monomial `exps` (over variables `keys`).
    pub fn coefficient_in(&self, keys: &[usize], exps: &[u32]) -> Polynomial {
        self.collect(keys)
            .into_iter()
            .find(|(k, _)| k == exps)
            .map(|(_, p)| p)
            .unwrap_or_else(|| Polynomial::zero(&self.vars))
    }

    /// Every term is divisible by at least one of the listed variables.
    pub fn every_term_divisible_by_one_of(&self, vars: &[usize]) -> bool {
        self.terms.iter().all(|(m, _)| vars.iter().any(|&v| m.0[v] > 0))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", m.render(&self.vars))?;
            } else {
                write!(f, "{a}*{}", m.render(&self.vars))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live over different tables.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$imp(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// An exact rational value for every variable of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    vars: VarTable,
    values: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(vars: &VarTable, values: Vec<Rational>) -> Result<Self> {
        if values.len() != vars.len() {
            return Err(Error::InvalidParameter(format!(
                "point has {} coordinates, table has {}",
                values.len(),
                vars.len()
            )));
        }
        Ok(RationalPoint { vars: vars.clone(), values })
    }

    pub fn zeros(vars: &VarTable) -> Self {
        RationalPoint { vars: vars.clone(), values: vec![Rational::zero(); vars.len()] }
    }

    /// Builds a point from `(name, value)` pairs; unnamed coordinates are 0.
    pub fn from_pairs(vars: &VarTable, pairs: &[(&str, Rational)]) -> Result<Self> {
        let mut p = Self::zeros(vars);
        for (n, v) in pairs {
            p.set(n, v.clone())?;
        }
        Ok(p)
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, name: &str) -> Result<&Rational> {
        Ok(&self.values[self.vars.require(name)?])
    }

    pub fn set(&mut self, name: &str, v: Rational) -> Result<()> {
        let i = self.vars.require(name)?;
        self.values[i] = v;
        Ok(())
    }
}

#[cfg(test)]
mod tests;
