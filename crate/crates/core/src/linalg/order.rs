// Multiplicative order of a matrix over a prime field.
//
// The order of an invertible L x L matrix divides
//   U = p^(L-1) * prod_i (p^(k_i) - 1)
// where k_i runs over the degrees of the irreducible factors of its
// characteristic polynomial.  The least divisor d of U with M^d = I is the order.

use serde::Serialize;

use super::{char_poly, Matrix};
use crate::error::{Error, Result};
use crate::fields::{Field, PrimeField};
use crate::numtheory;
use crate::poly::PolyRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatrixOrder {
    Order(u128),
    NotInvertible,
}

impl MatrixOrder {
    pub fn order(self) -> Option<u128> {
        match self {
            MatrixOrder::Order(d) => Some(d),
            MatrixOrder::NotInvertible => None,
        }
    }
}

/// The bound `U` together with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderBound {
    pub factor_degrees: Vec<usize>,
    pub bound: u128,
    pub bound_factorization: Vec<(u128, u32)>,
}

pub fn order_bound(field: &PrimeField, m: &Matrix<u64>) -> Result<OrderBound> {
    let cp = char_poly(field, m)?;
    let fac = PolyRing::new(field).factor(&cp);
    let p = field.modulus() as u128;
    let size = m.rows();
    let factor_degrees = fac.degrees();
    let mut bound_factorization = if size > 1 {
        vec![(p, size as u32 - 1)]
    } else {
        Vec::new()
    };
    let mut bound = p.pow(size.saturating_sub(1) as u32);
    for &k in &factor_degrees {
        let term = p.pow(k as u32) - 1;
        bound *= term;
        bound_factorization =
            numtheory::merge_factorizations(&bound_factorization, &numtheory::factorize(term));
    }
    Ok(OrderBound {
        factor_degrees,
        bound,
        bound_factorization,
    })
}

/// Least divisor `d` of the order bound with `M^d = I`, scanning divisors in
/// increasing order.
pub fn matrix_order_ff(field: &PrimeField, m: &Matrix<u64>) -> Result<MatrixOrder> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(MatrixOrder::Order(1));
    }
    let cp = char_poly(field, m)?;
    if field.is_zero(&cp.coeffs().first().copied().unwrap_or(0)) {
        return Ok(MatrixOrder::NotInvertible);
    }
    let bound = order_bound(field, m)?;
    let mut powers = PowerTable::new(field.modulus(), m);
    for d in numtheory::divisors_from_factorization(&bound.bound_factorization) {
        if powers.is_identity_power(d) {
            return Ok(MatrixOrder::Order(d));
        }
    }
    unreachable!("order of an invertible matrix divides its bound")
}

/// Order by repeated multiplication; the independent check for small matrices.
pub fn matrix_order_naive(field: &PrimeField, m: &Matrix<u64>, limit: u128) -> Option<u128> {
    let p = field.modulus();
    let n = m.rows();
    let mut acc = m.data().to_vec();
    let ident = identity_vec(n);
    for d in 1..=limit {
        if acc == ident {
            return Some(d);
        }
        acc = mul_mod(p, n, &acc, m.data());
    }
    None
}

fn identity_vec(n: usize) -> Vec<u64> {
    let mut v = vec![0; n * n];
    for i in 0..n {
        v[i * n + i] = 1;
    }
    v
}

/// Square matrix product mod p, accumulating before reducing.
fn mul_mod(p: u64, n: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    let wide = (p as u128 - 1).pow(2) * n as u128 >= u64::MAX as u128;
    for i in 0..n {
        if wide {
            let mut acc = vec![0u128; n];
            for k in 0..n {
                let aik = a[i * n + k] as u128;
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    acc[j] = (acc[j] + aik * b[k * n + j] as u128) % p as u128;
                }
            }
            for j in 0..n {
                out[i * n + j] = acc[j] as u64;
            }
        } else {
            let mut acc = vec![0u64; n];
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0 {
                    continue;
                }
                let row = &b[k * n..(k + 1) * n];
                for (slot, bkj) in acc.iter_mut().zip(row) {
                    *slot += aik * bkj;
                }
            }
            for j in 0..n {
                out[i * n + j] = acc[j] % p;
            }
        }
    }
    out
}

/// Caches `M^(2^i)` so each `M^d` costs one product per set bit of `d`.
struct PowerTable {
    p: u64,
    n: usize,
    squares: Vec<Vec<u64>>,
    identity: Vec<u64>,
}

impl PowerTable {
    fn new(p: u64, m: &Matrix<u64>) -> Self {
        Self {
            p,
            n: m.rows(),
            squares: vec![m.data().to_vec()],
            identity: identity_vec(m.rows()),
        }
    }

    fn is_identity_power(&mut self, mut d: u128) -> bool {
        let mut acc: Option<Vec<u64>> = None;
        let mut bit = 0;
        while d > 0 {
            while self.squares.len() <= bit {
                let last = self.squares.last().unwrap();
                let next = mul_mod(self.p, self.n, last, last);
                self.squares.push(next);
            }
            if d & 1 == 1 {
                acc = Some(match acc {
                    None => self.squares[bit].clone(),
                    Some(a) => mul_mod(self.p, self.n, &a, &self.squares[bit]),
                });
            }
            d >>= 1;
            bit += 1;
        }
        acc.map_or(true, |a| a == self.identity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_orders() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(
            matrix_order_ff(&f2, &identity(&f2, 3)).unwrap(),
            MatrixOrder::Order(1)
        );
        let companion = Matrix::from_rows(vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(matrix_order_ff(&f2, &companion).unwrap(), MatrixOrder::Order(3));
        assert_eq!(matrix_order_naive(&f2, &companion, 10), Some(3));
        let singular = Matrix::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            matrix_order_ff(&f2, &singular).unwrap(),
            MatrixOrder::NotInvertible
        );
    }

    #[test]
    fn agrees_with_naive_on_random_invertibles() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        for p in [2u64, 3] {
            let field = PrimeField::new(p).unwrap();
            for n in 1..=4 {
                for _ in 0..40 {
                    let data = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
                    let m = Matrix::from_vec(n, n, data).unwrap();
                    match matrix_order_ff(&field, &m).unwrap() {
                        MatrixOrder::Order(d) => {
                            assert_eq!(matrix_order_naive(&field, &m, 100_000), Some(d));
                            checked += 1;
                        }
                        MatrixOrder::NotInvertible => {
                            assert_eq!(matrix_order_naive(&field, &m, 10_000), None);
                        }
                    }
                }
            }
        }
        assert!(checked >= 100, "only {checked} invertible samples");
    }
}
