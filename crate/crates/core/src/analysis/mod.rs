//! Semantic structure analysis: series, radicals, lattices, minimal normal
//! subgroups and direct decompositions.

mod lattice;
mod normal;
mod series;

pub use lattice::{
    check_condition_a, condition_a_witness, frattini, has_proper_supplement,
    is_quasisimple_subgroup, is_subnormal, maximal_from_lattice, maximal_subgroups,
    proper_supplement, subgroup_lattice,
};
pub use normal::{
    cyclic_sylow_prime, decompose_semisimple, is_simple, is_simple_subgroup,
    is_simple_subgroup_mod, minimal_normal_subgroups, normal_subgroups, DecompositionReport,
};
pub use series::{
    commutator_subgroup, derived_series, derived_series_of, derived_subgroup, derived_subgroup_of,
    fitting, is_nilpotent, is_nilpotent_subgroup, is_perfect, is_perfect_subgroup, is_soluble,
    is_soluble_subgroup, lower_central_series, lower_central_series_of, nilpotency_class,
    soluble_radical, SeriesKind, SeriesReport,
};
