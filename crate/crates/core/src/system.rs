//! Named, labelled lists of polynomial generators.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::ring::{Polynomial, VarTable};

/// One labelled generator. `aliases` records other labels that produced the
/// same polynomial up to a scalar and were merged into this one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub poly: Polynomial,
    pub aliases: Vec<String>,
}

/// An ordered system of nonzero generators over one variable table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    name: String,
    vars: VarTable,
    generators: Vec<Generator>,
}

impl EquationSystem {
    pub fn new(name: impl Into<String>, vars: &VarTable) -> Self {
        EquationSystem { name: name.into(), vars: vars.clone(), generators: Vec::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&Polynomial> {
        self.generators.iter().find(|g| g.label == label || g.aliases.iter().any(|a| a == label)).map(|g| &g.poly)
    }

    /// Appends a generator. Zero polynomials are rejected, as are repeated
    /// labels.
    pub fn push(&mut self, label: impl Into<String>, poly: Polynomial) -> Result<()> {
        let label = label.into();
        if poly.vars() != &self.vars {
            return Err(Error::VarTableMismatch);
        }
        if poly.is_zero() {
            return Err(Error::InvalidParameter(format!("generator `{label}` is zero")));
        }
        if self.get(&label).is_some() {
            return Err(Error::DuplicateLabel(label));
        }
        self.generators.push(Generator { label, poly, aliases: Vec::new() });
        Ok(())
    }

    /// Appends unless a scalar multiple is already present, in which case the
    /// label is recorded as an alias. Zero polynomials are skipped. Returns
    /// whether a new generator was added.
    pub fn push_dedup(&mut self, label: impl Into<String>, poly: Polynomial) -> Result<bool> {
        let label = label.into();
        if poly.is_zero() {
            return Ok(false);
        }
        let key = poly.monic();
        if let Some(g) = self.generators.iter_mut().find(|g| g.poly.monic() == key) {
            g.aliases.push(label);
            return Ok(false);
        }
        self.push(label, poly)?;
        Ok(true)
    }

    /// Appends every generator of `other` (same table), keeping labels.
    pub fn extend_from(&mut self, other: &EquationSystem) -> Result<()> {
        for g in &other.generators {
            self.push(g.label.clone(), g.poly.clone())?;
        }
        Ok(())
    }

    /// A copy re-expressed over `target` by shared variable names.
    pub fn embed(&self, target: &VarTable) -> Result<EquationSystem> {
        let mut out = EquationSystem::new(self.name.clone(), target);
        for g in &self.generators {
            out.generators.push(Generator {
                label: g.label.clone(),
                poly: g.poly.embed(target)?,
                aliases: g.aliases.clone(),
            });
        }
        Ok(out)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Monic representatives, as a set: comparison up to nonzero scalars.
    pub fn canonical_set(&self) -> BTreeSet<String> {
        self.generators.iter().map(|g| g.poly.monic().to_string()).collect()
    }

    /// Whether some generator equals `p` up to a nonzero scalar.
    pub fn contains_up_to_scalar(&self, p: &Polynomial) -> bool {
        let key = p.monic();
        self.generators.iter().any(|g| g.poly.monic() == key)
    }

    /// Label of a generator equal to `p` up to a scalar.
    pub fn find_up_to_scalar(&self, p: &Polynomial) -> Option<&str> {
        let key = p.monic();
        self.generators.iter().find(|g| g.poly.monic() == key).map(|g| g.label.as_str())
    }

    /// Labels are unique and generators nonzero.
    pub fn is_well_formed(&self) -> bool {
        let mut seen = HashSet::new();
        self.generators.iter().all(|g| !g.poly.is_zero() && seen.insert(g.label.clone()))
    }
}
