//! Integer helpers: gcd, Euler's totient, radical and the largest integer
//! whose totient stays under a given ceiling.
//!
//! Every quantity handled here is small (group orders stay below the global
//! element cap), so plain trial division is used throughout.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Returns `p` when `n = p^k` for a prime `p` and `k >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// Euler's totient. `phi(1) = 1`.
pub fn phi(n: u64) -> u64 {
    assert!(n >= 1, "phi is defined on positive integers");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Product of the distinct primes dividing `n`; `rad(1) = 1`.
pub fn rad(n: u64) -> u64 {
    assert!(n >= 1, "rad is defined on positive integers");
    factorize(n).into_iter().map(|(p, _)| p).product()
}

/// Largest `m` with `phi(m) <= k`.
///
/// Uses `phi(m) >= sqrt(m / 2)`: any `m > 2k^2` has `phi(m) > k`, so the scan
/// stops at `2k^2 + 1`.
pub fn max_phi_inverse(k: u64) -> u64 {
    assert!(k >= 1, "max_phi_inverse needs k >= 1");
    let limit = 2 * k * k + 1;
    (1..=limit).rev().find(|&m| phi(m) <= k).unwrap_or(1)
}
