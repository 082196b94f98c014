//! Small integer helpers: primality, factorization, p-parts.

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

/// True iff `n = p^k` for some `k ≥ 0`.
pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u64);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u128, p: u64) -> u128 {
    let p = p as u128;
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn divisors_and_parts() {
        assert_eq!(prime_divisors(420), [2, 3, 5, 7]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(p_part(168, 2), 8);
        assert_eq!(p_part(27783, 3), 81);
        assert_eq!(p_part(35, 2), 1);
        assert!(is_power_of(1, 5));
        assert!(is_power_of(49, 7));
        assert!(!is_power_of(6, 2));
    }
}
