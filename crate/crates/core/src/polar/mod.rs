//! The polar varieties: the 5-folds `V(k)` cut out by an apolarity
//! recurrence and a Cramer's rule for its solutions, and the 7-folds `W(d)`
//! given by the Pfaffians of a `(d+4) x (d+4)` skew matrix.

mod vk;
mod wd;

pub use vk::*;
pub use wd::*;

/// `binom(n, k)` as an exact integer, for small arguments.
pub fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}
