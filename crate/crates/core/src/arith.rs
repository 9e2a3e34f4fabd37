//! Small integer helpers shared by the group and field code.

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
pub fn prime_divisors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
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

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(mut n: u128, p: u128) -> u32 {
    assert!(n != 0 && p > 1);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Inverse of `a` modulo a prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Smallest `l` with `p^l >= n` (so `l = ceil(log_p n)` for `n >= 1`).
pub fn ceil_log(n: u64, p: u64) -> u32 {
    let mut l = 0;
    let mut pw = 1u64;
    while pw < n {
        pw *= p;
        l += 1;
    }
    l
}

/// `Some(e)` when `n = p^e`.
pub fn exact_log(n: u128, p: u128) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let v = valuation(n, p);
    if checked_pow(p, v) == Some(n) {
        Some(v)
    } else {
        None
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended gcd: returns `(g, x, y)` with `a x + b y = g`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

pub fn modp(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_helpers() {
        assert!(is_prime(7) && is_prime(19) && !is_prime(9) && !is_prime(1));
        assert_eq!(prime_divisors(342), vec![2, 3, 19]);
        assert_eq!(valuation(342, 3), 2);
        assert_eq!(valuation(18, 3), 2);
        assert_eq!(ceil_log(1, 3), 0);
        assert_eq!(ceil_log(3, 3), 1);
        assert_eq!(ceil_log(4, 3), 2);
        assert_eq!(ceil_log(10, 3), 3);
        assert_eq!(exact_log(81, 3), Some(4));
        assert_eq!(exact_log(18, 3), None);
        assert_eq!(inv_mod(3, 7), 5);
        let (g, x, y) = ext_gcd(2, 3);
        assert_eq!((g, 2 * x + 3 * y), (1, 1));
    }
}
