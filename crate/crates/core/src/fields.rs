//! Exact coefficient fields.
//!
//! Fields are runtime values (a prime modulus, an irreducible polynomial) so
//! every operation goes through a field handle implementing [`Field`]; the
//! elements themselves are plain data.  Prime fields use `u64` residues,
//! extension fields use a reduced coefficient vector over their base field,
//! and [`Rationals`] uses arbitrary-precision fractions.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory;
use crate::poly::{Poly, PolyRing};

/// A commutative field with runtime parameters.
pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_integer(&self, n: &BigInt) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(n))
    }

    /// `None` when the denominator vanishes in this field.
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem> {
        let den = self.inv(&self.from_integer(r.denom()))?;
        Some(self.mul(&self.from_integer(r.numer()), &den))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|b_inv| self.mul(a, &b_inv))
    }

    fn pow(&self, a: &Self::Elem, mut exp: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// A finite field `F_q`, `q = p^k`, with a canonical enumeration of its elements.
pub trait FiniteField: Field {
    fn prime(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> usize;

    /// Element number `index` in the canonical enumeration `0..q`.
    /// Index 0 is zero and index 1 is one.
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;

    fn order(&self) -> u64 {
        self.prime().pow(self.degree() as u32)
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.element(rng.gen_range(0..self.order()))
    }

    /// The inverse of `x -> x^p`, which is `x -> x^(q/p)`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, (self.order() / self.prime()) as u128)
    }
}

// ---------------------------------------------------------------------------
// Prime fields

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !numtheory::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        numtheory::mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let e = (*a as i128).extended_gcd(&(self.p as i128));
        Some(e.x.rem_euclid(self.p as i128) as u64)
    }
    fn from_integer(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl FiniteField for PrimeField {
    fn prime(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn element(&self, index: u64) -> u64 {
        index % self.p
    }
    fn index_of(&self, a: &u64) -> u64 {
        *a
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

// ---------------------------------------------------------------------------
// Extension fields

/// `B[t]/(m(t))` for a monic irreducible `m` of degree `k >= 1`.
///
/// Elements are coefficient vectors of length exactly `k`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField<B: FiniteField> {
    base: B,
    modulus: Poly<B::Elem>,
}

impl<B: FiniteField> ExtField<B> {
    /// Builds the extension from a caller-supplied modulus; it is made monic and
    /// checked for irreducibility.
    pub fn new(base: B, modulus: Poly<B::Elem>) -> Result<Self> {
        let ring = PolyRing::new(&base);
        if modulus.degree().unwrap_or(0) < 1 {
            return Err(Error::DegenerateModulus);
        }
        let modulus = ring.monic(&modulus);
        if !ring.is_irreducible(&modulus) {
            return Err(Error::NotIrreducible);
        }
        Ok(Self { base, modulus })
    }

    /// The extension of degree `k` defined by the least monic irreducible
    /// polynomial in the canonical enumeration of its lower coefficients.
    pub fn with_least_modulus(base: B, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::DegenerateModulus);
        }
        let modulus = least_irreducible(&base, k);
        Ok(Self { base, modulus })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn modulus(&self) -> &Poly<B::Elem> {
        &self.modulus
    }

    /// Degree of the extension over its immediate base.
    pub fn relative_degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// Embeds a base-field element as a constant.
    pub fn embed(&self, a: &B::Elem) -> Vec<B::Elem> {
        let mut v = vec![self.base.zero(); self.relative_degree()];
        v[0] = a.clone();
        v
    }

    /// The class of `t`, the adjoined root of the modulus.
    pub fn generator_root(&self) -> Vec<B::Elem> {
        let k = self.relative_degree();
        let mut v = vec![self.base.zero(); k];
        if k == 1 {
            v[0] = self.base.neg(&self.modulus.coeffs()[0]);
        } else {
            v[1] = self.base.one();
        }
        v
    }

    pub fn from_coeffs(&self, coeffs: &[B::Elem]) -> Vec<B::Elem> {
        let ring = PolyRing::new(&self.base);
        let p = ring.from_coeffs(coeffs.to_vec());
        self.to_elem(&ring.rem(&p, &self.modulus))
    }

    fn to_elem(&self, reduced: &Poly<B::Elem>) -> Vec<B::Elem> {
        let mut v = reduced.coeffs().to_vec();
        v.resize(self.relative_degree(), self.base.zero());
        v
    }
}

fn least_irreducible<B: FiniteField>(base: &B, k: usize) -> Poly<B::Elem> {
    let ring = PolyRing::new(base);
    let q = base.order();
    let mut index: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut rest = index;
        for _ in 0..k {
            coeffs.push(base.element(rest % q));
            rest /= q;
        }
        coeffs.push(base.one());
        let candidate = ring.from_coeffs(coeffs);
        if ring.is_irreducible(&candidate) {
            return candidate;
        }
        index += 1;
    }
}

impl<B: FiniteField> Field for ExtField<B> {
    type Elem = Vec<B::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.relative_degree()]
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = self.relative_degree();
        let base = &self.base;
        let mut prod = vec![base.zero(); 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = base.add(&prod[i + j], &base.mul(x, y));
            }
        }
        // modulus is monic: t^k = -(m_0 + ... + m_{k-1} t^{k-1})
        let m = self.modulus.coeffs();
        for top in (k..prod.len()).rev() {
            let c = prod[top].clone();
            if base.is_zero(&c) {
                continue;
            }
            for (i, mi) in m[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = base.sub(&prod[idx], &base.mul(&c, mi));
            }
        }
        prod.truncate(k);
        prod
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let ring = PolyRing::new(&self.base);
        let (g, u, _) = ring.xgcd(&ring.from_coeffs(a.clone()), &self.modulus);
        debug_assert!(g.degree() == Some(0));
        Some(self.to_elem(&ring.rem(&u, &self.modulus)))
    }
    fn from_integer(&self, n: &BigInt) -> Self::Elem {
        self.embed(&self.base.from_integer(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
}

impl<B: FiniteField> FiniteField for ExtField<B> {
    fn prime(&self) -> u64 {
        self.base.prime()
    }
    fn degree(&self) -> usize {
        self.base.degree() * self.relative_degree()
    }
    fn element(&self, mut index: u64) -> Self::Elem {
        let q = self.base.order();
        (0..self.relative_degree())
            .map(|_| {
                let c = self.base.element(index % q);
                index /= q;
                c
            })
            .collect()
    }
    fn index_of(&self, a: &Self::Elem) -> u64 {
        let q = self.base.order();
        a.iter()
            .rev()
            .fold(0, |acc, c| acc * q + self.base.index_of(c))
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// The field of rational numbers with exact big-integer fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_integer(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, r: &BigRational) -> Option<BigRational> {
        Some(r.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Parses `"p/q"` or `"n"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * f64::INFINITY
    })
}

// ---------------------------------------------------------------------------
// Structural operations

/// Multiplicative order of a nonzero element, `None` for zero.
pub fn element_order<F: FiniteField>(field: &F, a: &F::Elem) -> Option<u64> {
    if field.is_zero(a) {
        return None;
    }
    let group_order = field.order() - 1;
    let mut order = group_order;
    for (r, _) in numtheory::factorize(group_order as u128) {
        let r = r as u64;
        while order % r == 0 && field.is_one(&field.pow(a, (order / r) as u128)) {
            order /= r;
        }
    }
    Some(order)
}

/// The canonical generator of `F_q^*`: the first element in the canonical
/// enumeration whose order is `q - 1`.  For prime fields this is the smallest
/// positive primitive root.
pub fn multiplicative_generator<F: FiniteField>(field: &F) -> F::Elem {
    let target = field.order() - 1;
    (1..field.order())
        .map(|i| field.element(i))
        .find(|g| element_order(field, g) == Some(target))
        .expect("finite field multiplicative group is cyclic")
}

/// Smallest positive primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    Ok(multiplicative_generator(&PrimeField::new(p)?))
}

/// `g^((q-1)/N)` for the canonical generator `g`; has order exactly `N`.
pub fn nth_root_of_unity<F: FiniteField>(field: &F, n: u64) -> Result<F::Elem> {
    let q = field.order();
    if n == 0 || (q - 1) % n != 0 {
        return Err(Error::NoRootOfUnity { n, q });
    }
    let g = multiplicative_generator(field);
    Ok(field.pow(&g, ((q - 1) / n) as u128))
}

/// `x^(p^r)`.
pub fn frobenius<F: FiniteField>(field: &F, x: &F::Elem, r: u32) -> F::Elem {
    (0..r).fold(x.clone(), |acc, _| field.pow(&acc, field.prime() as u128))
}

/// Result of a square-root search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareRoot<E> {
    Root(E),
    NotASquare,
}

impl<E> SquareRoot<E> {
    pub fn root(self) -> Option<E> {
        match self {
            SquareRoot::Root(r) => Some(r),
            SquareRoot::NotASquare => None,
        }
    }
}

const EXHAUSTIVE_SQRT_LIMIT: u64 = 1 << 16;

/// A square root of `a`, the one of `{s, -s}` with smaller canonical index.
pub fn sqrt_in_field<F: FiniteField>(field: &F, a: &F::Elem) -> SquareRoot<F::Elem> {
    let q = field.order();
    let found = if q <= EXHAUSTIVE_SQRT_LIMIT {
        (0..q)
            .map(|i| field.element(i))
            .find(|s| field.mul(s, s) == *a)
    } else {
        tonelli_shanks(field, a)
    };
    match found {
        Some(s) => {
            let t = field.neg(&s);
            if field.index_of(&t) < field.index_of(&s) {
                SquareRoot::Root(t)
            } else {
                SquareRoot::Root(s)
            }
        }
        None => SquareRoot::NotASquare,
    }
}

fn tonelli_shanks<F: FiniteField>(field: &F, a: &F::Elem) -> Option<F::Elem> {
    let q = field.order() as u128;
    if field.is_zero(a) {
        return Some(field.zero());
    }
    if field.prime() == 2 {
        return Some(field.pow(a, q / 2));
    }
    if !field.is_one(&field.pow(a, (q - 1) / 2)) {
        return None;
    }
    let mut s = 0;
    let mut t = q - 1;
    while t % 2 == 0 {
        t /= 2;
        s += 1;
    }
    let minus_one = field.neg(&field.one());
    let z = (2..field.order())
        .map(|i| field.element(i))
        .find(|z| field.pow(z, (q - 1) / 2) == minus_one)?;
    let mut m = s;
    let mut c = field.pow(&z, t);
    let mut x = field.pow(a, (t + 1) / 2);
    let mut b = field.pow(a, t);
    while !field.is_one(&b) {
        let mut i = 0;
        let mut b2 = b.clone();
        while !field.is_one(&b2) {
            b2 = field.mul(&b2, &b2);
            i += 1;
        }
        let mut d = c.clone();
        for _ in 0..(m - i - 1) {
            d = field.mul(&d, &d);
        }
        x = field.mul(&x, &d);
        c = field.mul(&d, &d);
        b = field.mul(&b, &c);
        m = i;
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Checked element wrapper

/// An element bundled with its parent field, for callers that want arithmetic
/// to reject operands from different fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement<F: Field + PartialEq> {
    field: F,
    value: F::Elem,
}

/// The four field operations exposed by [`FieldElement::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl<F: Field + PartialEq> FieldElement<F> {
    pub fn new(field: F, value: F::Elem) -> Self {
        Self { field, value }
    }

    pub fn value(&self) -> &F::Elem {
        &self.value
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn apply(&self, op: FieldOp, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::MismatchedFields);
        }
        let k = &self.field;
        let (a, b) = (&self.value, &other.value);
        let value = match op {
            FieldOp::Add => k.add(a, b),
            FieldOp::Sub => k.sub(a, b),
            FieldOp::Mul => k.mul(a, b),
            FieldOp::Div => k.div(a, b).ok_or(Error::DivisionByZero)?,
        };
        Ok(Self::new(k.clone(), value))
    }
}
