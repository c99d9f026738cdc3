//! Small integer helpers: primality, factorization, divisors, orders.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // deterministic for all 64-bit n
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Prime factorization by trial division, as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Multiplies two factorizations given as ascending `(prime, exponent)` lists.
pub fn merge_factorizations(a: &[(u128, u32)], b: &[(u128, u32)]) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = a.to_vec();
    for &(p, e) in b {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += e,
            None => out.push((p, e)),
        }
    }
    out.sort_unstable();
    out
}

/// All divisors of the number with the given factorization, ascending.
pub fn divisors_from_factorization(factors: &[(u128, u32)]) -> Vec<u128> {
    let mut divs = vec![1u128];
    for &(p, e) in factors {
        let current = divs.len();
        let mut pk = 1u128;
        for _ in 0..e {
            pk *= p;
            for i in 0..current {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn divisors(n: u64) -> Vec<u64> {
    divisors_from_factorization(&factorize(n as u128))
        .into_iter()
        .map(|d| d as u64)
        .collect()
}

pub fn totient(n: u64) -> u64 {
    factorize(n as u128)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p as u64 * (p as u64 - 1))
}

/// Multiplicative order of `a` modulo `m`, or `None` when `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if a.gcd(&m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        k += 1;
    }
    Some(k)
}

/// Writes `q = p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factorize(q as u128);
    match f.as_slice() {
        [(p, k)] => Some((*p as u64, *k)),
        _ => None,
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}
