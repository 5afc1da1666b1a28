//! Finite fields, `SL_2(q)`, the class-two groups over exterior squares and
//! their perfect extensions, and the indexed group families used by sweeps.

mod comlength;
mod families;
mod field;
pub mod linalg;
mod perfect;
mod sl2;
mod thmd;

pub use comlength::{comlength_inequality, comlength_min_n, ComlengthReport};
pub use families::{family, small_simple_group, FamilyKind, GroupFamily, SIMPLE_LIST_LEN};
pub use field::{gf, Fe, Fq, FIELD_CAP};
pub use perfect::{
    build_en, build_hn, central_commutators, expected_split_dims, hn_order, split_wn,
    CentralCommutatorReport, Coords, En, EnLawReport, GnOps, HnOps, ModuleSplit,
    PerfectGroupBundle, PerfectOptions, WedgeSpace, EN_EXHAUSTIVE_CAP,
};
pub use sl2::{
    find_binary_icosahedral, psl2, sl2, sl2_generators, small_simple_groups, Mat2, Sl2, Sl2Ops,
};
pub use thmd::{thm_d_finite_instance, thm_d_group, ThmDInstance, ThmDSummary};

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::limits::Limits;

/// The field of order `q`, for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<Fq> {
    match prime_power(q) {
        Some((p, e)) => gf(p, e),
        None => Err(Error::NotPrime(q)),
    }
}

fn numbers(args: &str, want: usize, token: &str) -> Result<Vec<u64>> {
    let v: Vec<u64> = args
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Spec(format!("bad arguments in `{token}`")))?;
    if v.len() != want {
        return Err(Error::Spec(format!("`{token}` takes {want} argument(s)")));
    }
    Ok(v)
}

/// Builds a group from a construction token: `sl2:<q>`, `psl2:<q>`,
/// `icosahedral:<q>`, `en:<n>,<q>`, `gn:<n>,<q>`, `perfect:<n>,<q>`,
/// `thmD:<n>,<p>` or `family:<name>:<index>`.
pub fn named_group(token: &str, opts: PerfectOptions, limits: &Limits) -> Result<FiniteGroup> {
    let token = token.trim();
    let (head, args) = token
        .split_once(':')
        .ok_or_else(|| Error::Spec(format!("`{token}` is not a construction")))?;
    match head {
        "sl2" => {
            let q = numbers(args, 1, token)?[0];
            Ok(sl2(&field_of_order(q)?, limits)?.group().clone())
        }
        "psl2" => psl2(&field_of_order(numbers(args, 1, token)?[0])?, limits),
        "icosahedral" => {
            let s = sl2(&field_of_order(numbers(args, 1, token)?[0])?, limits)?;
            let b = find_binary_icosahedral(&s)?;
            let label = format!("B({})", s.field().order());
            Ok(s.group().subgroup_as_group(&b, label)?.0)
        }
        "en" => {
            let v = numbers(args, 2, token)?;
            build_en(v[0] as usize, &field_of_order(v[1])?, opts)?.to_group(limits)
        }
        "gn" => {
            let v = numbers(args, 2, token)?;
            Ok(build_hn(v[0] as usize, &field_of_order(v[1])?, opts, limits)?.gn)
        }
        "perfect" => {
            let v = numbers(args, 2, token)?;
            Ok(build_hn(v[0] as usize, &field_of_order(v[1])?, opts, limits)?.hn)
        }
        "thmD" => {
            let v = numbers(args, 2, token)?;
            Ok(thm_d_finite_instance(v[0] as u32, v[1], limits)?.f)
        }
        "family" => {
            let (name, idx) = args
                .rsplit_once(':')
                .ok_or_else(|| Error::Spec(format!("`{token}` needs family:<name>:<index>")))?;
            let n = idx
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Spec(format!("bad index in `{token}`")))?;
            family(name)?.instance(n, limits)
        }
        _ => Err(Error::Spec(format!("unknown construction `{head}`"))),
    }
}
