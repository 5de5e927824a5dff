use std::collections::HashMap;

use super::{Polynomial, Rational, RationalPoint, VarTable};
use crate::error::{Error, Result};

/// Assignment of polynomials over `target` to the variables of `source`.
///
/// Variables without an explicit image map to the variable of the same name
/// in `target` when one exists. Using a variable that has neither is an
/// error at application time.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: VarTable,
    target: VarTable,
    images: Vec<Option<Polynomial>>,
}

impl Substitution {
    pub fn new(source: &VarTable, target: &VarTable) -> Self {
        let images = source.names().iter().map(|n| target.index(n).map(|j| Polynomial::variable(target, j))).collect();
        Substitution { source: source.clone(), target: target.clone(), images }
    }

    pub fn source(&self) -> &VarTable {
        &self.source
    }

    pub fn target(&self) -> &VarTable {
        &self.target
    }

    pub fn set(&mut self, name: &str, image: Polynomial) -> Result<&mut Self> {
        let i = self.source.require(name)?;
        if image.vars() != &self.target {
            return Err(Error::VarTableMismatch);
        }
        self.images[i] = Some(image);
        Ok(self)
    }

    /// Builder form of [`Substitution::set`] with the image given as text
    /// over the target table. Panics on malformed input.
    pub fn with(mut self, name: &str, image: &str) -> Self {
        let p = self.target.poly(image);
        self.set(name, p).unwrap_or_else(|e| panic!("{e}"));
        self
    }

    /// Builder form taking a polynomial image.
    pub fn with_poly(mut self, name: &str, image: Polynomial) -> Self {
        self.set(name, image).unwrap_or_else(|e| panic!("{e}"));
        self
    }

    pub fn image(&self, name: &str) -> Option<&Polynomial> {
        self.source.index(name).and_then(|i| self.images[i].as_ref())
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.vars() != &self.source {
            return Err(Error::VarTableMismatch);
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(&self.target);
        for (m, c) in p.terms() {
            let mut t = Polynomial::constant(&self.target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = self.images[i].as_ref().ok_or_else(|| Error::UnmappedVariable(self.source.name(i).into()))?;
                let pw = powers.entry((i, e)).or_insert_with(|| img.pow(e));
                t = &t * &*pw;
                if t.is_zero() {
                    break;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// The source point whose coordinates are the images evaluated at `pt`.
    pub fn pull_point(&self, pt: &RationalPoint) -> Result<RationalPoint> {
        let mut values = Vec::with_capacity(self.source.len());
        for (i, img) in self.images.iter().enumerate() {
            let img = img.as_ref().ok_or_else(|| Error::UnmappedVariable(self.source.name(i).into()))?;
            values.push(img.evaluate(pt)?);
        }
        RationalPoint::new(&self.source, values)
    }

    /// Composition: apply `self`, then `next`.
    pub fn then(&self, next: &Substitution) -> Result<Substitution> {
        if next.source != self.target {
            return Err(Error::VarTableMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|img| img.as_ref().map(|p| next.apply(p)).transpose())
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution { source: self.source.clone(), target: next.target.clone(), images })
    }

    /// Replaces the named variables by constants, keeping the table.
    pub fn constant(vars: &VarTable, assignments: &[(&str, Rational)]) -> Result<Substitution> {
        let mut s = Substitution::new(vars, vars);
        for (n, v) in assignments {
            s.set(n, Polynomial::constant(vars, v.clone()))?;
        }
        Ok(s)
    }
}
