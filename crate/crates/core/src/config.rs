//! Size caps, sampling budgets and numeric tolerances shared by every module.

use serde::Serialize;

/// Caps that decide when a check is exhaustive and when it samples.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Limits {
    /// Largest group on which pair-exhaustive loops (closure, homomorphism) run.
    pub element_cap: usize,
    /// Largest order accepted by the brute-force isomorphism search.
    pub iso_cap: usize,
    /// Associativity is checked on all triples up to this order.
    pub exhaustive_assoc_max: usize,
    /// Random triples used for associativity above `exhaustive_assoc_max`.
    pub random_assoc_triples: usize,
    /// The brace axiom is checked on all triples up to this carrier size.
    pub exhaustive_brace_max: usize,
    /// Random triples used for the brace axiom above `exhaustive_brace_max`.
    pub random_brace_triples: usize,
    /// Force the exhaustive brace-axiom check regardless of size.
    pub force_exhaustive_brace: bool,
    /// Random element pairs added on top of generator-pair checks.
    pub random_pairs: usize,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            element_cap: 5000,
            iso_cap: 2000,
            exhaustive_assoc_max: 100,
            random_assoc_triples: 1000,
            exhaustive_brace_max: 100,
            random_brace_triples: 10_000,
            force_exhaustive_brace: false,
            random_pairs: 1000,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    /// Entrywise tolerance for matrix identities.
    pub matrix: f64,
    /// Tolerance on character inner products.
    pub character: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            matrix: 1e-9,
            character: 1e-6,
        }
    }
}
