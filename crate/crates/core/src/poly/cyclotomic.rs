use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{Factorization, Poly, PolyRing};
use crate::error::Result;
use crate::fields::{Field, PrimeField};
use crate::numtheory;

/// The d-th cyclotomic polynomial over the integers, ascending coefficients,
/// by exact division `(x^d - 1) / prod_{e | d, e < d} Phi_e`.
pub fn cyclotomic_integer(d: u64) -> Vec<BigInt> {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut num = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for e in numtheory::divisors(d) {
        if e < d {
            num = exact_div_monic(&num, &cyclotomic_integer(e));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate() {
            rem[top - dd + i] -= &c * di;
        }
        quot[top - dd] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// `Phi_d` reduced modulo `p`.
pub fn cyclotomic_mod_p(d: u64, p: u64) -> Result<Poly<u64>> {
    let field = PrimeField::new(p)?;
    let ring = PolyRing::new(&field);
    Ok(ring.from_coeffs(
        cyclotomic_integer(d)
            .iter()
            .map(|c| field.from_integer(c))
            .collect(),
    ))
}

/// How `Phi_d` splits mod p: `g` irreducible factors of degree `f`, `f*g = phi(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicSplit {
    pub d: u64,
    pub phi: u64,
    pub f: u64,
    pub g: u64,
}

/// One irreducible factor of `x^N - 1` together with the cyclotomic
/// polynomial it divides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactor {
    pub factor: Poly<u64>,
    pub multiplicity: u32,
    pub d: u64,
    pub f: u64,
    pub g: u64,
}

/// Structured factorization of `x^N - 1` over `F_p` with `N = p^s * l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XnFactorization {
    pub n: u64,
    pub p: u64,
    pub s: u32,
    pub ell: u64,
    /// Canonically ordered, each with multiplicity `p^s`.
    pub factors: Vec<CyclotomicFactor>,
    /// One entry per divisor `d` of `l`, ascending.
    pub splits: Vec<CyclotomicSplit>,
}

impl XnFactorization {
    pub fn factorization(&self) -> Factorization<u64> {
        Factorization {
            unit: 1,
            factors: self
                .factors
                .iter()
                .map(|f| (f.factor.clone(), f.multiplicity))
                .collect(),
        }
    }

    /// Number of linear factors, which is `gcd(N, p - 1)`.
    pub fn linear_factor_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| f.factor.degree() == Some(1))
            .count()
    }
}

/// Factors `x^N - 1 = (x^l - 1)^(p^s) = prod_{d | l} Phi_d^(p^s)` over `F_p`,
/// splitting each `Phi_d` into irreducibles of degree `ord_d(p)`.
pub fn factor_xn_minus_1(n: u64, p: u64) -> Result<XnFactorization> {
    factor_xn_minus_1_seeded(n, p, 0)
}

pub fn factor_xn_minus_1_seeded(n: u64, p: u64, seed: u64) -> Result<XnFactorization> {
    assert!(n >= 1, "N must be positive");
    let field = PrimeField::new(p)?;
    let ring = PolyRing::new(&field);
    let (mut s, mut ell) = (0u32, n);
    while ell % p == 0 {
        ell /= p;
        s += 1;
    }
    let multiplicity = p.pow(s) as u32;
    let mut factors = Vec::new();
    let mut splits = Vec::new();
    for d in numtheory::divisors(ell) {
        let phi = numtheory::totient(d);
        let f = numtheory::multiplicative_order(p % d, d).expect("p is coprime to l");
        let g = phi / f;
        let cyclo = cyclotomic_mod_p(d, p)?;
        let fac = ring.factor_seeded(&cyclo, seed);
        debug_assert_eq!(fac.factors.len() as u64, g);
        for (factor, m) in fac.factors {
            debug_assert_eq!(m, 1);
            factors.push(CyclotomicFactor {
                factor,
                multiplicity,
                d,
                f,
                g,
            });
        }
        splits.push(CyclotomicSplit { d, phi, f, g });
    }
    factors.sort_by(|a, b| ring.cmp_canonical(&a.factor, &b.factor));
    Ok(XnFactorization {
        n,
        p,
        s,
        ell,
        factors,
        splits,
    })
}
