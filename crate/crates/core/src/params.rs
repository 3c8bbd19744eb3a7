use std::fmt;

use serde::{Deserialize, Serialize};

/// `(n, k, mu)` parameters shared by difference sets and symmetric designs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub mu: usize,
}

impl Params {
    pub const fn new(n: usize, k: usize, mu: usize) -> Self {
        Self { n, k, mu }
    }

    /// `k(k-1) = (n-1)mu`.
    pub fn satisfies_counting_identity(&self) -> bool {
        self.k * self.k.saturating_sub(1) == self.n.saturating_sub(1) * self.mu
    }

    /// Parameters of the complementary object, `(n, n-k, n-2k+mu)`.
    pub fn complement(&self) -> Option<Params> {
        let k = self.n.checked_sub(self.k)?;
        let mu = (self.n + self.mu).checked_sub(2 * self.k)?;
        Some(Params::new(self.n, k, mu))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.mu)
    }
}
