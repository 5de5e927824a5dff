use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ring::degrevlex;

/// Monomial order on exponent vectors over a fixed table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Graded reverse lexicographic in table order.
    DegRevLex,
    /// Pure lexicographic in table order.
    Lex,
    /// Elimination order: the listed variables, compared by degrevlex among
    /// themselves, dominate; ties are broken by degrevlex on the rest.
    Block(Vec<usize>),
}

impl TermOrder {
    pub fn block(first: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = first.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        TermOrder::Block(v)
    }

    pub(crate) fn validate(&self, nvars: usize) -> Result<()> {
        if let TermOrder::Block(v) = self {
            if let Some(&i) = v.iter().find(|&&i| i >= nvars) {
                return Err(Error::BadIndex(format!("block variable {i} out of range")));
            }
        }
        Ok(())
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Lex => a.cmp(b),
            TermOrder::Block(first) => block_cmp(a, b, |i| first.binary_search(&i).is_ok())
                .then_with(|| block_cmp(a, b, |i| first.binary_search(&i).is_err())),
        }
    }
}

/// Degrevlex restricted to the variables selected by `inside`.
fn block_cmp(a: &[u32], b: &[u32], inside: impl Fn(usize) -> bool) -> Ordering {
    let (mut da, mut db) = (0u64, 0u64);
    for i in 0..a.len() {
        if inside(i) {
            da += a[i] as u64;
            db += b[i] as u64;
        }
    }
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if inside(i) && a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_on_three_variables() {
        let xz = [1, 0, 1];
        let yy = [0, 2, 0];
        assert_eq!(TermOrder::DegRevLex.cmp(&xz, &yy), Ordering::Less);
        assert_eq!(TermOrder::Lex.cmp(&xz, &yy), Ordering::Greater);
        // z eliminated first: any z beats no z
        let o = TermOrder::block([2]);
        assert_eq!(o.cmp(&[0, 0, 1], &[5, 0, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 1]), Ordering::Less);
        assert!(TermOrder::block([3]).validate(3).is_err());
    }
}
