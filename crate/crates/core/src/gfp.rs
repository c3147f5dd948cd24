//! Scalar arithmetic mod a prime p. All values are kept reduced in [0, p).

pub fn add(p: u64, a: u64, b: u64) -> u64 {
    (a + b) % p
}

pub fn sub(p: u64, a: u64, b: u64) -> u64 {
    (a + p - b) % p
}

pub fn neg(p: u64, a: u64) -> u64 {
    (p - a % p) % p
}

pub fn mul(p: u64, a: u64, b: u64) -> u64 {
    a * b % p
}

/// Inverse of a nonzero residue, by Fermat (p is prime and desk-scale).
pub fn inv(p: u64, a: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(p, a, p - 2)
}

pub fn pow(p: u64, mut base: u64, mut exp: u64) -> u64 {
    base %= p;
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_field_arithmetic() {
        assert_eq!(add(5, 3, 4), 2);
        assert_eq!(sub(5, 1, 3), 3);
        assert_eq!(neg(5, 0), 0);
        assert_eq!(mul(7, 3, 5), 1);
        for a in 1..7 {
            assert_eq!(mul(7, a, inv(7, a)), 1);
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }
}
