use serde::Serialize;

/// Least `n` with `2k(2n+3) <= n(n+1)/2 - 1`, next to the threshold `8k+2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComlengthReport {
    pub k: u64,
    pub n: u64,
    pub threshold_8k_plus_2: u64,
}

/// `q^(2k(2n+3)) <= q^(n(n+1)/2 - 1)`: products of `k` commutators in
/// `G_n ⋊ SL_2(q)` are fewer than the lines of its centre.
pub fn comlength_inequality(k: u64, n: u64) -> bool {
    // Doubled to stay in integers.
    4 * k * (2 * n + 3) + 2 <= n * (n + 1)
}

pub fn comlength_min_n(k: u64) -> ComlengthReport {
    assert!(k >= 1, "k must be at least 1");
    let n = (1..).find(|&n| comlength_inequality(k, n)).unwrap();
    ComlengthReport {
        k,
        n,
        threshold_8k_plus_2: 8 * k + 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(comlength_min_n(1).n, 9);
        assert_eq!(comlength_min_n(2).n, 17);
        let r = comlength_min_n(10);
        assert_eq!((r.n, r.threshold_8k_plus_2), (81, 82));
    }
}
