//! Small integer helpers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The `n`-th prime (1-based) different from `skip`, odd primes only.
pub fn nth_odd_prime_except(n: usize, skip: u64) -> u64 {
    let mut count = 0;
    let mut c = 3;
    loop {
        if is_prime(c) && c != skip {
            count += 1;
            if count == n {
                return c;
            }
        }
        c += 2;
    }
}

/// Splits a prime power `q = p^e`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let ps = prime_divisors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut e = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        e += 1;
    }
    Some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_parts() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(9));
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(p_part(360, 2), 8);
        assert_eq!(nth_odd_prime_except(1, 2), 3);
        assert_eq!(nth_odd_prime_except(2, 3), 7);
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
    }
}
