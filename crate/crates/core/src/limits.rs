/// Resource caps shared by constructions, analyzers and the evaluator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest order stored as a full multiplication table.
    pub table_cap: usize,
    /// Largest order any enumeration may reach.
    pub element_cap: usize,
    /// Largest order for which the full subgroup lattice is computed.
    pub lattice_cap: usize,
    /// Largest order accepted by the commutator-product solubility test.
    pub sigma_cap: usize,
    /// Largest order for brute-force isomorphism search.
    pub iso_cap: usize,
    /// Atomic evaluation steps allowed per formula evaluation.
    pub work_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            table_cap: 5000,
            element_cap: 1_000_000,
            lattice_cap: 200,
            sigma_cap: 200,
            iso_cap: 200,
            work_budget: 1_000_000_000,
        }
    }
}
