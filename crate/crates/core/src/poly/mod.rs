//! Dense univariate polynomials over a [`Field`].

mod cyclotomic;
mod factor;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fields::{FiniteField, Field};

pub use cyclotomic::{
    cyclotomic_integer, cyclotomic_mod_p, factor_xn_minus_1, factor_xn_minus_1_seeded,
    CyclotomicFactor, CyclotomicSplit,
    XnFactorization,
};
pub use factor::Factorization;

/// Coefficients in ascending degree, with no trailing zeros.  The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

impl Poly<u64> {
    /// Prime-field polynomial from already reduced residues.
    pub fn from_vec(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }
}

/// Polynomial arithmetic over a borrowed coefficient field.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<'a, F: Field> {
    field: &'a F,
}

impl<'a, F: Field> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn monomial(&self, c: F::Elem, degree: usize) -> Poly<F::Elem> {
        let mut coeffs = vec![self.field.zero(); degree + 1];
        coeffs[degree] = c;
        self.from_coeffs(coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(&self, n: usize) -> Poly<F::Elem> {
        let mut coeffs = vec![self.field.zero(); n + 1];
        coeffs[0] = self.field.neg(&self.field.one());
        coeffs[n] = self.field.add(&coeffs[n], &self.field.one());
        self.from_coeffs(coeffs)
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, p: &Poly<F::Elem>, i: usize) -> F::Elem {
        p.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Coefficient vector padded with zeros to exactly `len` entries.
    pub fn padded(&self, p: &Poly<F::Elem>, len: usize) -> Vec<F::Elem> {
        let mut v = p.coeffs.clone();
        v.resize(len.max(v.len()), self.field.zero());
        v
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(&self.coeff(a, i), &self.coeff(b, i)))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.sub(&self.coeff(a, i), &self.coeff(b, i)))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let k = self.field;
        let mut out = vec![k.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    pub fn pow(&self, a: &Poly<F::Elem>, e: u32) -> Poly<F::Elem> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Quotient and remainder with `deg(r) < deg(b)`.
    pub fn divmod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let k = self.field;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = k.inv(b.leading().unwrap()).ok_or(Error::DivisionByZero)?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((self.zero(), a.clone()));
        }
        let mut quot = vec![k.zero(); rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = k.mul(&rem[top], &lead_inv);
            if k.is_zero(&c) {
                continue;
            }
            for (i, bi) in b.coeffs.iter().enumerate() {
                let idx = top - db + i;
                rem[idx] = k.sub(&rem[idx], &k.mul(&c, bi));
            }
            quot[top - db] = c;
        }
        rem.truncate(db);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    /// Remainder modulo a nonzero polynomial.
    ///
    /// Panics if `b` is zero.
    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divmod(a, b).expect("remainder by zero polynomial").1
    }

    /// Exact quotient; panics if `b` is zero.
    pub fn quo(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divmod(a, b).expect("division by zero polynomial").0
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.leading() {
            None => a.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).unwrap(), a),
        }
    }

    pub fn is_monic(&self, a: &Poly<F::Elem>) -> bool {
        a.leading().is_some_and(|c| self.field.is_one(c))
    }

    /// Returns `(d, u, v)` with `d = gcd(a, b)` monic and `u*a + v*b = d`.
    /// The gcd of two zero polynomials is zero.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divmod(&r0, &r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.field.inv(lc).unwrap();
                (
                    self.scale(&inv, &r0),
                    self.scale(&inv, &s0),
                    self.scale(&inv, &t0),
                )
            }
        }
    }

    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = self.rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
        }
        self.monic(&r0)
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(&self.field.from_i64(i as i64), c))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        a.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| {
                self.field.add(&self.field.mul(&acc, x), c)
            })
    }

    pub fn mul_mod(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
        m: &Poly<F::Elem>,
    ) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    /// `a^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, a: &Poly<F::Elem>, mut e: u128, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = self.rem(&self.one(), m);
        let mut base = self.rem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base, m);
            }
        }
        acc
    }

    /// Palindromic: the coefficient vector equals its reverse.
    pub fn is_palindromic(&self, a: &Poly<F::Elem>) -> bool {
        a.coeffs.iter().eq(a.coeffs.iter().rev())
    }
}

impl<F: FiniteField> PolyRing<'_, F> {
    /// Canonical order: by degree, then lexicographically on the ascending
    /// coefficient vector using each field's element enumeration.
    pub fn cmp_canonical(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Ordering {
        a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
            let ia = a.coeffs.iter().map(|c| self.field.index_of(c));
            let ib = b.coeffs.iter().map(|c| self.field.index_of(c));
            ia.cmp(ib)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn freshmans_dream() {
        let f2 = PrimeField::new(2).unwrap();
        let r = PolyRing::new(&f2);
        let a = Poly::from_vec(vec![1, 1]);
        assert_eq!(r.mul(&a, &a), Poly::from_vec(vec![1, 0, 1]));
    }

    #[test]
    fn divmod_examples() {
        let f7 = PrimeField::new(7).unwrap();
        let r = PolyRing::new(&f7);
        let (q, rem) = r
            .divmod(&Poly::from_vec(vec![6, 0, 1]), &Poly::from_vec(vec![6, 1]))
            .unwrap();
        assert_eq!(q, Poly::from_vec(vec![1, 1]));
        assert!(rem.is_zero());

        // x^3 + 2x = x(x^2 + 1) + x over F_3
        let f3 = PrimeField::new(3).unwrap();
        let r3 = PolyRing::new(&f3);
        let (q, rem) = r3
            .divmod(&Poly::from_vec(vec![0, 2, 0, 1]), &Poly::from_vec(vec![1, 0, 1]))
            .unwrap();
        assert_eq!(q, Poly::from_vec(vec![0, 1]));
        assert_eq!(rem, Poly::from_vec(vec![0, 1]));

        assert_eq!(
            r3.divmod(&Poly::from_vec(vec![1]), &r3.zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn xgcd_examples() {
        let f7 = PrimeField::new(7).unwrap();
        let r = PolyRing::new(&f7);
        let (f, g) = (Poly::from_vec(vec![6, 1]), Poly::from_vec(vec![1, 1]));
        let (d, u, v) = r.xgcd(&f, &g);
        assert_eq!(d, r.one());
        assert_eq!(r.add(&r.mul(&u, &f), &r.mul(&v, &g)), d);

        let (d, u, v) = r.xgcd(&f, &f);
        assert_eq!(d, f);
        assert_eq!(r.add(&r.mul(&u, &f), &r.mul(&v, &f)), d);

        let f5 = PrimeField::new(5).unwrap();
        let r5 = PolyRing::new(&f5);
        let (d, _, _) = r5.xgcd(&Poly::from_vec(vec![4, 0, 1]), &Poly::from_vec(vec![4, 1]));
        assert_eq!(d, Poly::from_vec(vec![4, 1]));
    }

    #[test]
    fn rational_polys() {
        let q = Rationals;
        let r = PolyRing::new(&q);
        let half = BigRational::new(1.into(), 2.into());
        let a = r.from_coeffs(vec![half.clone(), q.one()]);
        let (d, _, _) = r.xgcd(&a, &r.mul(&a, &a));
        assert_eq!(d, a);
        assert!(r.is_palindromic(&r.from_coeffs(vec![q.one(), half, q.one()])));
    }

    fn poly_strategy(p: u64, max_len: usize) -> impl Strategy<Value = Poly<u64>> {
        prop::collection::vec(0..p, 0..max_len).prop_map(Poly::from_vec)
    }

    proptest! {
        #[test]
        fn xgcd_identity(a in poly_strategy(11, 9), b in poly_strategy(11, 9)) {
            let f11 = PrimeField::new(11).unwrap();
            let r = PolyRing::new(&f11);
            let (d, u, v) = r.xgcd(&a, &b);
            prop_assert_eq!(r.add(&r.mul(&u, &a), &r.mul(&v, &b)), d.clone());
            if !d.is_zero() {
                prop_assert!(r.is_monic(&d));
                prop_assert!(r.rem(&a, &d).is_zero());
                prop_assert!(r.rem(&b, &d).is_zero());
            }
        }

        #[test]
        fn divmod_reconstructs(a in poly_strategy(5, 12), b in poly_strategy(5, 6)) {
            prop_assume!(!b.is_zero());
            let f5 = PrimeField::new(5).unwrap();
            let r = PolyRing::new(&f5);
            let (q, rem) = r.divmod(&a, &b).unwrap();
            prop_assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
            prop_assert!(rem.degree().map_or(true, |d| d < b.degree().unwrap()));
        }
    }
}
