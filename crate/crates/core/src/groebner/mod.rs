//! Buchberger's algorithm over the rationals, at desk scale.
//!
//! Internally polynomials are kept with integer coefficients and reduced
//! fraction-free, dividing out the content as it grows. Pairs are selected
//! by the sugar strategy and pruned with the Gebauer-Moeller criteria. The
//! engine counts reduction steps and stops with
//! [`Error::DeskScaleExceeded`] once the configured cap is passed.

mod order;

pub use order::TermOrder;

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Monomial, Polynomial, Rational, VarTable};

/// Default cap on reduction steps.
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_STEP_CAP`].
pub const STEP_CAP_ENV: &str = "DIPTYCH_STEP_CAP";

/// Resource limits for one basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub step_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        let step_cap = std::env::var(STEP_CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_STEP_CAP);
        Limits { step_cap }
    }
}

static BASES_COMPUTED: AtomicU64 = AtomicU64::new(0);

/// Number of basis computations started in this process.
pub fn bases_computed() -> u64 {
    BASES_COMPUTED.load(AtomicOrdering::Relaxed)
}

type Exp = Box<[u32]>;

#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<(Exp, BigInt)>,
    sugar: u32,
}

impl IPoly {
    fn lm(&self) -> &Exp {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Divides by the content and makes the leading coefficient positive.
    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms.first().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if !g.is_zero() && g != BigInt::one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn quotient(a: &[u32], b: &[u32]) -> Exp {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn mask(e: &[u32]) -> u64 {
    let mut m = 0u64;
    for (i, &x) in e.iter().enumerate() {
        if x > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

/// Working state of a computation: the order and the step budget.
struct Engine<'a> {
    order: &'a TermOrder,
    limits: Limits,
    steps: u64,
}

impl<'a> Engine<'a> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.limits.step_cap {
            return Err(Error::DeskScaleExceeded { steps: self.steps });
        }
        Ok(())
    }

    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Imports a polynomial: clears denominators and sorts by the order.
    /// Returns the integer polynomial and the factor it was multiplied by.
    fn import(&self, p: &Polynomial) -> (IPoly, BigInt) {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
        let mut terms: Vec<(Exp, BigInt)> = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let v = c.numer() * (&den / c.denom());
                (m.exponents().to_vec().into_boxed_slice(), v)
            })
            .collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let sugar = terms.iter().map(|(e, _)| degree(e)).max().unwrap_or(0);
        (IPoly { terms, sugar }, den)
    }

    /// `a*p - b*m*g`, where the leading terms cancel.
    fn combine(&self, p: &[(Exp, BigInt)], a: &BigInt, b: &BigInt, m: &[u32], g: &IPoly) -> Vec<(Exp, BigInt)> {
        let mut out = Vec::with_capacity(p.len() + g.terms.len());
        let shifted = g.terms.iter().map(|(e, c)| {
            let e: Exp = e.iter().zip(m).map(|(x, y)| x + y).collect();
            (e, c * b)
        });
        let mut i = 0;
        let mut shifted = shifted.peekable();
        loop {
            match (p.get(i), shifted.peek()) {
                (None, None) => break,
                (Some((e, c)), None) => {
                    out.push((e.clone(), c * a));
                    i += 1;
                }
                (None, Some(_)) => {
                    let (e, c) = shifted.next().unwrap();
                    out.push((e, -c));
                }
                (Some((e, c)), Some((f, _))) => match self.cmp(e, f) {
                    Ordering::Greater => {
                        out.push((e.clone(), c * a));
                        i += 1;
                    }
                    Ordering::Less => {
                        let (f, d) = shifted.next().unwrap();
                        out.push((f, -d));
                    }
                    Ordering::Equal => {
                        let (f, d) = shifted.next().unwrap();
                        let v = c * a - d;
                        if !v.is_zero() {
                            out.push((f, v));
                        }
                        i += 1;
                    }
                },
            }
        }
        out
    }

    fn find_reducer<'b>(&self, e: &[u32], basis: &'b [Member]) -> Option<&'b Member> {
        let em = mask(e);
        basis.iter().find(|g| g.active && g.mask & !em == 0 && divides(g.poly.lm(), e))
    }

    /// Reduction of `p` by the active members of `basis`. Returns the
    /// result `r` and the rational `s` with `r = s*p` modulo the ideal.
    fn reduce(&mut self, p: IPoly, basis: &[Member], mode: Mode) -> Result<(IPoly, Rational)> {
        let mut scale = Rational::one();
        let mut rest = p.terms;
        let mut sugar = p.sugar;
        let mut done: Vec<(Exp, BigInt)> = Vec::new();
        if mode == Mode::Tail && !rest.is_empty() {
            done.push(rest.remove(0));
        }
        let mut since_content = 0usize;
        while !rest.is_empty() {
            let lead = rest[0].0.clone();
            match self.find_reducer(&lead, basis) {
                Some(g) => {
                    self.tick()?;
                    let m = quotient(g.poly.lm(), &lead);
                    let c = g.poly.lc().gcd(&rest[0].1);
                    let mut a = g.poly.lc() / &c;
                    let mut b = &rest[0].1 / &c;
                    if a.is_negative() {
                        a = -a;
                        b = -b;
                    }
                    sugar = sugar.max(g.poly.sugar + degree(&m));
                    rest = self.combine(&rest, &a, &b, &m, &g.poly);
                    if !a.is_one() {
                        for (_, x) in &mut done {
                            *x *= &a;
                        }
                        scale *= Rational::from_integer(a);
                    }
                    since_content += 1;
                    if since_content >= 8 {
                        since_content = 0;
                        let g = content(done.iter().chain(rest.iter()));
                        if !g.is_zero() && !g.is_one() {
                            for (_, x) in done.iter_mut().chain(rest.iter_mut()) {
                                *x /= &g;
                            }
                            scale /= Rational::from_integer(g);
                        }
                    }
                }
                None if mode == Mode::Top => {
                    done.extend(rest);
                    break;
                }
                None => done.push(rest.remove(0)),
            }
        }
        let out = IPoly { terms: done, sugar };
        Ok((out, scale))
    }

    fn export(&self, vars: &VarTable, p: &IPoly, divide_by: &Rational) -> Polynomial {
        Polynomial::from_terms(
            vars,
            p.terms
                .iter()
                .map(|(e, c)| (Monomial::from_exponents(e.to_vec()), Rational::from_integer(c.clone()) / divide_by)),
        )
    }
}

fn content<'a>(it: impl Iterator<Item = &'a (Exp, BigInt)>) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in it {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    /// Stop at the first irreducible leading term.
    Top,
    /// Reduce every term.
    Full,
    /// Reduce every term except the leading one.
    Tail,
}

#[derive(Clone, Debug)]
struct Member {
    poly: IPoly,
    mask: u64,
    active: bool,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: u32,
}

/// A reduced Groebner basis of an ideal for a fixed term order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: VarTable,
    order: TermOrder,
    members: Vec<IPoly>,
    generators: Vec<Polynomial>,
    steps: u64,
}

/// Reduced Groebner basis of the ideal generated by `gens` under the default
/// limits.
pub fn buchberger(vars: &VarTable, gens: &[Polynomial], order: &TermOrder) -> Result<GroebnerBasis> {
    buchberger_with(vars, gens, order, Limits::default())
}

pub fn buchberger_with(
    vars: &VarTable,
    gens: &[Polynomial],
    order: &TermOrder,
    limits: Limits,
) -> Result<GroebnerBasis> {
    order.validate(vars.len())?;
    BASES_COMPUTED.fetch_add(1, AtomicOrdering::Relaxed);
    let mut eng = Engine { order, limits, steps: 0 };
    let mut basis: Vec<Member> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for g in gens {
        if g.vars() != vars {
            return Err(Error::VarTableMismatch);
        }
        if g.is_zero() {
            continue;
        }
        let (mut p, _) = eng.import(g);
        p.make_primitive();
        let (mut r, _) = eng.reduce(p, &basis, Mode::Top)?;
        if r.is_zero() {
            continue;
        }
        r.make_primitive();
        update(&mut basis, &mut pairs, r);
    }
    while let Some(k) = select(&eng, &pairs) {
        let pair = pairs.swap_remove(k);
        let s = spoly(&eng, &basis[pair.i].poly, &basis[pair.j].poly, &pair.lcm, pair.sugar);
        eng.tick()?;
        let (mut r, _) = eng.reduce(s, &basis, Mode::Top)?;
        if r.is_zero() {
            continue;
        }
        r.make_primitive();
        update(&mut basis, &mut pairs, r);
    }
    // The active members form a minimal basis; reduce their tails.
    let mut minimal: Vec<IPoly> = basis.into_iter().filter(|m| m.active).map(|m| m.poly).collect();
    minimal.sort_by(|a, b| eng.cmp(a.lm(), b.lm()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Member> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| Member { poly: p.clone(), mask: mask(p.lm()), active: true })
            .collect();
        let (mut p, _) = eng.reduce(minimal[i].clone(), &others, Mode::Tail)?;
        p.make_primitive();
        reduced.push(p);
    }
    let generators = reduced
        .iter()
        .map(|p| {
            let lc = Rational::from_integer(p.lc().clone());
            eng.export(vars, p, &lc)
        })
        .collect();
    Ok(GroebnerBasis { vars: vars.clone(), order: order.clone(), members: reduced, generators, steps: eng.steps })
}

fn spoly(eng: &Engine, f: &IPoly, g: &IPoly, l: &[u32], sugar: u32) -> IPoly {
    let mf = quotient(f.lm(), l);
    let mg = quotient(g.lm(), l);
    let c = f.lc().gcd(g.lc());
    let a = g.lc() / &c;
    let b = f.lc() / &c;
    // a*mf*f - b*mg*g; the leading terms cancel
    let ff: Vec<(Exp, BigInt)> =
        f.terms.iter().map(|(e, x)| (e.iter().zip(mf.iter()).map(|(p, q)| p + q).collect(), x.clone())).collect();
    IPoly { terms: eng.combine(&ff, &a, &b, &mg, g), sugar }
}

fn select(eng: &Engine, pairs: &[Pair]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in pairs.iter().enumerate() {
        best = match best {
            None => Some(k),
            Some(b) => {
                let q = &pairs[b];
                let ord = p
                    .sugar
                    .cmp(&q.sugar)
                    .then_with(|| eng.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)));
                if ord == Ordering::Less {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

/// Gebauer-Moeller update: adds `h` to the basis and the useful new pairs.
fn update(basis: &mut Vec<Member>, pairs: &mut Vec<Pair>, h: IPoly) {
    let hn = basis.len();
    let hm = h.lm().clone();
    let hs = h.sugar;
    let hd = degree(&hm);
    let cands: Vec<(usize, Exp, bool)> = basis
        .iter()
        .enumerate()
        .filter(|(_, g)| g.active)
        .map(|(i, g)| (i, lcm(g.poly.lm(), &hm), coprime(g.poly.lm(), &hm)))
        .collect();
    // Criteria M and F: keep (g, h) only if it is coprime or no other
    // candidate's lcm divides its lcm.
    let mut keep: Vec<bool> = vec![false; cands.len()];
    for a in 0..cands.len() {
        let la = &cands[a].1;
        let later = cands[a + 1..].iter().any(|c| divides(&c.1, la));
        let earlier = (0..a).any(|b| keep[b] && divides(&cands[b].1, la));
        keep[a] = cands[a].2 || (!later && !earlier);
    }
    // Criterion B: old pairs whose lcm is divisible by lm(h) strictly.
    pairs.retain(|p| {
        let gi = basis[p.i].poly.lm();
        let gj = basis[p.j].poly.lm();
        !(divides(&hm, &p.lcm) && lcm(gi, &hm) != p.lcm && lcm(gj, &hm) != p.lcm)
    });
    for (k, (i, l, cop)) in cands.into_iter().enumerate() {
        if keep[k] && !cop {
            let gi = &basis[i].poly;
            let sugar = (gi.sugar + degree(&l) - degree(gi.lm())).max(hs + degree(&l) - hd);
            pairs.push(Pair { i, j: hn, lcm: l, sugar });
        }
    }
    for g in basis.iter_mut() {
        if g.active && divides(&hm, g.poly.lm()) {
            g.active = false;
        }
    }
    basis.push(Member { mask: mask(&hm), poly: h, active: true });
}

impl GroebnerBasis {
    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// Monic generators, sorted by ascending leading monomial.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Always true: bases returned by [`buchberger`] are reduced.
    pub fn is_reduced(&self) -> bool {
        true
    }

    /// Reduction steps spent computing the basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Leading monomial of each generator under the basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.members.iter().map(|p| Monomial::from_exponents(p.lm().to_vec())).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    /// The remainder of `p` on division by the basis; zero exactly when `p`
    /// lies in the ideal. Unique because the basis is reduced.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.vars() != &self.vars {
            return Err(Error::VarTableMismatch);
        }
        let mut eng = Engine { order: &self.order, limits: Limits { step_cap: u64::MAX }, steps: 0 };
        let members: Vec<Member> =
            self.members.iter().map(|m| Member { poly: m.clone(), mask: mask(m.lm()), active: true }).collect();
        let (ip, den) = eng.import(p);
        let (r, scale) = eng.reduce(ip, &members, Mode::Full)?;
        Ok(eng.export(&self.vars, &r, &(scale * Rational::from_integer(den))))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn contains_all(&self, ps: &[Polynomial]) -> Result<bool> {
        for p in ps {
            if !self.contains(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same ideal as `other` (both reduced for the same order).
    pub fn same_ideal(&self, other: &GroebnerBasis) -> bool {
        self.vars == other.vars && self.order == other.order && self.generators == other.generators
    }
}

/// Generators of `(I : v^inf)`, computed by adjoining a fresh `t` with
/// `t*v - 1` and eliminating `t`.
pub fn saturate_by_variable(vars: &VarTable, gens: &[Polynomial], v: &str) -> Result<Vec<Polynomial>> {
    saturate_by_variable_with(vars, gens, v, Limits::default())
}

pub fn saturate_by_variable_with(
    vars: &VarTable,
    gens: &[Polynomial],
    v: &str,
    limits: Limits,
) -> Result<Vec<Polynomial>> {
    vars.require(v)?;
    saturate_by_with(vars, gens, &vars.var(v), limits)
}

/// Generators of `(I : h^inf)` for a polynomial `h`, through `t*h - 1`.
pub fn saturate_by(vars: &VarTable, gens: &[Polynomial], h: &Polynomial) -> Result<Vec<Polynomial>> {
    saturate_by_with(vars, gens, h, Limits::default())
}

pub fn saturate_by_with(
    vars: &VarTable,
    gens: &[Polynomial],
    h: &Polynomial,
    limits: Limits,
) -> Result<Vec<Polynomial>> {
    let t = vars.fresh_name("t");
    let ext = vars.extended(&[t.as_str()])?;
    let mut lifted = gens.iter().map(|g| g.embed(&ext)).collect::<Result<Vec<_>>>()?;
    lifted.push(&(&ext.var(&t) * &h.embed(&ext)?) - &Polynomial::one(&ext));
    let kept = eliminate_with(&ext, &lifted, &[t.as_str()], limits)?;
    kept.iter().map(|p| p.embed(vars)).collect()
}

/// Generators of the elimination ideal `I` intersected with the polynomial
/// ring in the variables not listed in `drop`, expressed over `vars`.
pub fn eliminate(vars: &VarTable, gens: &[Polynomial], drop: &[&str]) -> Result<Vec<Polynomial>> {
    eliminate_with(vars, gens, drop, Limits::default())
}

pub fn eliminate_with(vars: &VarTable, gens: &[Polynomial], drop: &[&str], limits: Limits) -> Result<Vec<Polynomial>> {
    let idx = drop.iter().map(|n| vars.require(n)).collect::<Result<Vec<_>>>()?;
    let order = TermOrder::block(idx.clone());
    let gb = buchberger_with(vars, gens, &order, limits)?;
    Ok(gb.generators.iter().filter(|g| idx.iter().all(|&i| !g.involves(i))).cloned().collect())
}

/// Whether two generator lists span the same ideal, by comparing reduced
/// degrevlex bases.
pub fn same_ideal(vars: &VarTable, a: &[Polynomial], b: &[Polynomial]) -> Result<bool> {
    let o = TermOrder::DegRevLex;
    Ok(buchberger(vars, a, &o)?.same_ideal(&buchberger(vars, b, &o)?))
}

#[cfg(test)]
mod tests;
