//! Elementary exact number theory on machine integers.

use crate::{Error, Result};

/// Result of the extended Euclidean algorithm: `u·a + v·b = g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtendedGcd {
    pub g: i64,
    pub u: i64,
    pub v: i64,
}

/// Extended Euclid. `g` is always nonnegative; `egcd(0, 0)` is `(0, 0, 1)`.
///
/// Neither argument may be `i64::MIN` (its absolute value is not
/// representable).
pub fn egcd(a: i64, b: i64) -> ExtendedGcd {
    debug_assert!(a != i64::MIN && b != i64::MIN);
    if a == 0 && b == 0 {
        return ExtendedGcd { g: 0, u: 0, v: 1 };
    }
    let (mut old_r, mut r) = (a, b);
    let (mut old_u, mut u) = (1i64, 0i64);
    let (mut old_v, mut v) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_u, u) = (u, old_u - q * u);
        (old_v, v) = (v, old_v - q * v);
    }
    if old_r < 0 {
        ExtendedGcd {
            g: -old_r,
            u: -old_u,
            v: -old_v,
        }
    } else {
        ExtendedGcd {
            g: old_r,
            u: old_u,
            v: old_v,
        }
    }
}

/// Inverse of `a` modulo the prime `p`, in `1..p`.
pub fn mod_inverse(a: i64, p: u64) -> Result<u64> {
    let modulus = i64::try_from(p).map_err(|_| Error::NotInvertible { a, modulus: p })?;
    let reduced = a.rem_euclid(modulus);
    if reduced == 0 {
        return Err(Error::NotInvertible { a, modulus: p });
    }
    let ExtendedGcd { g, u, .. } = egcd(reduced, modulus);
    if g != 1 {
        return Err(Error::NotInvertible { a, modulus: p });
    }
    Ok(u.rem_euclid(modulus) as u64)
}

/// Inverses of `1..p` modulo the prime `p`; entry `k` holds `k⁻¹` and entry 0
/// is unused.
///
/// Uses `k⁻¹ = -⌊p/k⌋ · (p mod k)⁻¹`, one division per entry. Full-scale
/// profiles need every inverse mod `p`, and running Euclid once per residue
/// would dominate the construction.
pub fn inverse_table(p: u64) -> Vec<u32> {
    assert!(p >= 2 && p <= u32::MAX as u64, "modulus {p} out of range");
    let n = p as usize;
    let mut inv = vec![0u32; n];
    if n > 1 {
        inv[1] = 1;
    }
    for k in 2..n {
        let q = p / k as u64;
        let r = (p % k as u64) as usize;
        inv[k] = ((p - q) * inv[r] as u64 % p) as u32;
    }
    inv
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `⌊√n⌋`, by integer Newton iteration followed by an exact correction.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let bits = 64 - n.leading_zeros();
    let mut x = 1u64 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while (x as u128) * (x as u128) > n as u128 {
        x -= 1;
    }
    while ((x + 1) as u128) * ((x + 1) as u128) <= n as u128 {
        x += 1;
    }
    x
}

/// Deterministic Miller–Rabin. The first twelve prime bases are a proven
/// witness set for every `n < 3.3·10^24`, which covers all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in `min..=max`, ascending.
pub fn primes_between(min: u64, max: u64) -> Vec<u64> {
    if min > max {
        return Vec::new();
    }
    (min..=max).filter(|&n| is_prime(n)).collect()
}

/// The `count` smallest primes strictly greater than `n`.
pub fn primes_after(n: u64, count: usize) -> Vec<u64> {
    (n + 1..).filter(|&q| is_prime(q)).take(count).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn egcd_examples() {
        assert_eq!(egcd(0, 0), ExtendedGcd { g: 0, u: 0, v: 1 });
        assert_eq!(egcd(1, 0), ExtendedGcd { g: 1, u: 1, v: 0 });
        assert_eq!(egcd(6, 9), ExtendedGcd { g: 3, u: -1, v: 1 });
        let r = egcd(-12, 18);
        assert_eq!(r.g, 6);
        assert_eq!(r.u * -12 + r.v * 18, 6);
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 5), Ok(1));
        assert_eq!(mod_inverse(2, 5), Ok(3));
        assert_eq!(mod_inverse(-2, 5), Ok(2));
        assert!(matches!(
            mod_inverse(10, 5),
            Err(Error::NotInvertible { a: 10, modulus: 5 })
        ));
    }

    #[test]
    fn inverses_for_small_primes() {
        for p in primes_between(2, 10_000) {
            let table = inverse_table(p);
            for a in 1..p {
                let z = mod_inverse(a as i64, p).unwrap();
                assert!((1..p).contains(&z));
                assert_eq!(a * z % p, 1, "a = {a}, p = {p}");
                assert_eq!(table[a as usize] as u64, z);
            }
        }
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(25), 5);
        assert_eq!(isqrt(1_000_003), 1000);
        assert_eq!(isqrt(u64::MAX), u32::MAX as u64);
        for k in 0..=1_000_000u64 {
            assert_eq!(isqrt(k * k), k);
        }
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(!is_prime(0) && !is_prime(1));
        // strong pseudoprimes to several small bases
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime(18_446_744_073_709_551_557));
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
        assert!(trial_division(1_000_003));
        assert_eq!(
            primes_after(1_000_000, 3),
            vec![1_000_003, 1_000_033, 1_000_037]
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100_000))]
        #[test]
        fn egcd_bezout(a in -(1i64 << 62)..(1i64 << 62), b in -(1i64 << 62)..(1i64 << 62)) {
            let ExtendedGcd { g, u, v } = egcd(a, b);
            prop_assert!(g >= 0);
            prop_assert_eq!(u as i128 * a as i128 + v as i128 * b as i128, g as i128);
            if g == 0 {
                prop_assert!(a == 0 && b == 0);
            } else {
                prop_assert!(a % g == 0 && b % g == 0);
            }
        }
    }

    proptest! {
        #[test]
        fn isqrt_brackets_and_is_monotone(n in any::<u64>(), m in any::<u64>()) {
            let r = isqrt(n) as u128;
            prop_assert!(r * r <= n as u128 && (r + 1) * (r + 1) > n as u128);
            let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
            prop_assert!(isqrt(lo) <= isqrt(hi));
        }
    }
}
