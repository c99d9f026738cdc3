//! Unitary Fourier transforms of `S_n`.
//!
//! Floating point: each Specht representation is made orthogonal by Weyl's
//! trick, `tau(g) = Q^-1 rho(g) Q` with `Q = P^(1/2)` and
//! `P = (1/n!) sum_g rho(g) rho(g)^T`, and the blocks are scaled by
//! `sqrt(d/n!)`.
//!
//! Exact: arithmetic in `K = Q(sqrt 2, sqrt 3)` and a battery of checks on the
//! stored `n = 3` matrix, its characteristic polynomial `f` and the product of
//! the Galois conjugates of `f`.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{format_rational, parse_rational, rational_to_f64, Field, Rationals};
use crate::linalg::complex::{self, CMatrix};
use crate::linalg::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::symmetric::{Partition, SpechtTable};

/// Largest `n` for the floating-point unitary transform.
pub const MAX_UNITARY: usize = 5;
pub const UNITARITY_TOL: f64 = 1e-10;
pub const EIGENVALUE_TOL: f64 = 1e-9;
const PD_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Weyl unitarization

fn real_mul(a: &Matrix<f64>, b: &Matrix<f64>) -> Matrix<f64> {
    Matrix::from_fn(a.rows(), b.cols(), |i, j| (0..a.cols()).map(|k| a.get(i, k) * b.get(k, j)).sum())
}

/// Largest entry of `|A A^T - I|`.
fn orthogonality_defect(a: &Matrix<f64>) -> f64 {
    let prod = real_mul(a, &a.transpose());
    let mut worst: f64 = 0.0;
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod.get(i, j) - want).abs());
        }
    }
    worst
}

/// `P`, its principal square root `Q`, and the unitary matrices
/// `tau(g) = Q^-1 rho(g) Q` in group order.
#[derive(Clone, Debug)]
pub struct WeylUnitarization {
    pub lambda: Partition,
    pub p: Matrix<f64>,
    pub q: Matrix<f64>,
    pub q_inv: Matrix<f64>,
    pub tau: Vec<Matrix<f64>>,
    /// Largest `|tau(g) tau(g)^* - I|` over all `g`.
    pub defect: f64,
}

/// Unitarizes the Specht representation at position `index` of `table`.
pub fn weyl_unitarize(table: &SpechtTable, index: usize) -> Result<WeylUnitarization> {
    let n = table.n();
    if n > MAX_UNITARY {
        return Err(Error::TooLarge { n, max: MAX_UNITARY });
    }
    let (lambda, mats) = &table.reps[index];
    let rho: Vec<Matrix<f64>> = mats.iter().map(|m| m.map(|&x| x as f64)).collect();
    let d = rho[0].rows();
    let order = rho.len() as f64;
    let mut p = Matrix::filled(d, d, 0.0);
    for r in &rho {
        let rr = real_mul(r, &r.transpose());
        p = Matrix::from_fn(d, d, |i, j| p.get(i, j) + rr.get(i, j));
    }
    let p = Matrix::from_fn(d, d, |i, j| (p.get(i, j) + p.get(j, i)) / (2.0 * order));
    let (vals, m) = complex::jacobi_symmetric(&p, 1e-14, 100)?;
    if let Some(&bad) = vals.iter().find(|&&v| v < PD_TOL) {
        return Err(Error::NotPositiveDefinite(bad));
    }
    let scaled = |f: &dyn Fn(f64) -> f64| {
        let md = Matrix::from_fn(d, d, |i, j| m.get(i, j) * f(vals[j]));
        real_mul(&md, &m.transpose())
    };
    let q = scaled(&|v| v.sqrt());
    let q_inv = scaled(&|v| 1.0 / v.sqrt());
    let tau: Vec<Matrix<f64>> = rho.iter().map(|r| real_mul(&real_mul(&q_inv, r), &q)).collect();
    let defect = tau.iter().map(orthogonality_defect).fold(0.0, f64::max);
    Ok(WeylUnitarization {
        lambda: lambda.clone(),
        p,
        q,
        q_inv,
        tau,
        defect,
    })
}

/// The assembled unitary transform and its checks.
#[derive(Clone, Debug)]
pub struct UnitaryDftReport {
    pub n: usize,
    /// Rows `(lambda, i, j)` in canonical partition order and row-major entry
    /// order, columns in group order.
    pub u: CMatrix,
    pub blocks: Vec<WeylUnitarization>,
    /// Largest entry of `|U U^* - I|`.
    pub defect: f64,
    pub eigenvalues: Vec<Complex64>,
}

impl UnitaryDftReport {
    pub fn max_modulus_deviation(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| (z.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// `U[(lambda,i,j), g] = sqrt(d_lambda / n!) tau_lambda(g)_ij`.
pub fn unitary_sn_dft(n: usize) -> Result<UnitaryDftReport> {
    if n > MAX_UNITARY {
        return Err(Error::TooLarge { n, max: MAX_UNITARY });
    }
    let table = SpechtTable::new(n)?;
    let order = table.group.order();
    let blocks = (0..table.reps.len())
        .map(|i| weyl_unitarize(&table, i))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(order);
    for block in &blocks {
        let d = block.tau[0].rows();
        let scale = (d as f64 / order as f64).sqrt();
        for i in 0..d {
            for j in 0..d {
                rows.push(
                    block
                        .tau
                        .iter()
                        .map(|t| Complex64::new(scale * t.get(i, j), 0.0))
                        .collect(),
                );
            }
        }
    }
    let u = Matrix::from_rows(rows)?;
    let defect = complex::unitarity_defect(&u)?;
    let mut eigenvalues = complex::eigenvalues(&u, 1e-15, 100_000)?;
    complex::sort_by_argument(&mut eigenvalues);
    Ok(UnitaryDftReport {
        n,
        u,
        blocks,
        defect,
        eigenvalues,
    })
}

// ---------------------------------------------------------------------------
// Q(sqrt 2, sqrt 3)

/// `a + b sqrt2 + c sqrt3 + d sqrt6` with rational components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadTowerElement {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl QuadTowerElement {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self { a, b, c, d }
    }

    pub fn rational(a: BigRational) -> Self {
        Self::new(a, Zero::zero(), Zero::zero(), Zero::zero())
    }

    /// From four strings `"p/q"`.
    pub fn parse(parts: &[String]) -> Result<Self> {
        if parts.len() != 4 {
            return Err(Error::Fixture(format!("tower element needs 4 components, got {}", parts.len())));
        }
        let r = |s: &str| parse_rational(s).ok_or_else(|| Error::Fixture(format!("bad rational {s:?}")));
        Ok(Self::new(r(&parts[0])?, r(&parts[1])?, r(&parts[2])?, r(&parts[3])?))
    }

    pub fn components(&self) -> [&BigRational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a)
            + rational_to_f64(&self.b) * 2f64.sqrt()
            + rational_to_f64(&self.c) * 3f64.sqrt()
            + rational_to_f64(&self.d) * 6f64.sqrt()
    }

    /// Matrix of `y -> self * y` on the basis `1, sqrt2, sqrt3, sqrt6`.
    fn multiplication_matrix(&self) -> Matrix<BigRational> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let k = |n: i64| BigRational::from_integer(n.into());
        Matrix::from_rows(vec![
            vec![a.clone(), b * k(2), c * k(3), d * k(6)],
            vec![b.clone(), a.clone(), d * k(3), c * k(3)],
            vec![c.clone(), d * k(2), a.clone(), b * k(2)],
            vec![d.clone(), c.clone(), b.clone(), a.clone()],
        ])
        .unwrap()
    }
}

impl fmt::Display for QuadTowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (coef, unit) in self.components().iter().zip(["", "*sqrt2", "*sqrt3", "*sqrt6"]) {
            if !coef.is_zero() {
                terms.push(format!("{}{unit}", format_rational(coef)));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// The field `Q(sqrt 2, sqrt 3)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QuadTower;

impl Field for QuadTower {
    type Elem = QuadTowerElement;

    fn zero(&self) -> QuadTowerElement {
        QuadTowerElement::rational(Zero::zero())
    }
    fn one(&self) -> QuadTowerElement {
        QuadTowerElement::rational(One::one())
    }
    fn add(&self, x: &QuadTowerElement, y: &QuadTowerElement) -> QuadTowerElement {
        QuadTowerElement::new(&x.a + &y.a, &x.b + &y.b, &x.c + &y.c, &x.d + &y.d)
    }
    fn sub(&self, x: &QuadTowerElement, y: &QuadTowerElement) -> QuadTowerElement {
        QuadTowerElement::new(&x.a - &y.a, &x.b - &y.b, &x.c - &y.c, &x.d - &y.d)
    }
    fn neg(&self, x: &QuadTowerElement) -> QuadTowerElement {
        QuadTowerElement::new(-&x.a, -&x.b, -&x.c, -&x.d)
    }
    fn mul(&self, x: &QuadTowerElement, y: &QuadTowerElement) -> QuadTowerElement {
        let k = |n: i64| BigRational::from_integer(n.into());
        let (a1, b1, c1, d1) = (&x.a, &x.b, &x.c, &x.d);
        let (a2, b2, c2, d2) = (&y.a, &y.b, &y.c, &y.d);
        QuadTowerElement::new(
            a1 * a2 + k(2) * b1 * b2 + k(3) * c1 * c2 + k(6) * d1 * d2,
            a1 * b2 + b1 * a2 + k(3) * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + k(2) * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )
    }
    /// Solves `x * y = 1` as a 4x4 rational system.
    fn inv(&self, x: &QuadTowerElement) -> Option<QuadTowerElement> {
        let m = linalg::inverse(&Rationals, &x.multiplication_matrix()).ok()?;
        let col = m.column(0);
        Some(QuadTowerElement::new(col[0].clone(), col[1].clone(), col[2].clone(), col[3].clone()))
    }
    fn from_integer(&self, n: &num_bigint::BigInt) -> QuadTowerElement {
        QuadTowerElement::rational(BigRational::from_integer(n.clone()))
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// An element of `Gal(K/Q)`: which of `sqrt2`, `sqrt3` change sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisAutomorphism {
    pub negate_sqrt2: bool,
    pub negate_sqrt3: bool,
}

impl GaloisAutomorphism {
    pub const ALL: [GaloisAutomorphism; 4] = [
        GaloisAutomorphism { negate_sqrt2: false, negate_sqrt3: false },
        GaloisAutomorphism { negate_sqrt2: true, negate_sqrt3: false },
        GaloisAutomorphism { negate_sqrt2: false, negate_sqrt3: true },
        GaloisAutomorphism { negate_sqrt2: true, negate_sqrt3: true },
    ];
}

pub fn galois_conjugate(x: &QuadTowerElement, s: GaloisAutomorphism) -> QuadTowerElement {
    let flip = |v: &BigRational, neg: bool| if neg { -v } else { v.clone() };
    QuadTowerElement::new(
        x.a.clone(),
        flip(&x.b, s.negate_sqrt2),
        flip(&x.c, s.negate_sqrt3),
        flip(&x.d, s.negate_sqrt2 != s.negate_sqrt3),
    )
}

fn conjugate_poly(f: &Poly<QuadTowerElement>, s: GaloisAutomorphism) -> Poly<QuadTowerElement> {
    PolyRing::new(&QuadTower).from_coeffs(f.coeffs().iter().map(|c| galois_conjugate(c, s)).collect())
}

/// `prod_s s(f)` over the four automorphisms.
pub fn galois_norm(f: &Poly<QuadTowerElement>) -> Poly<QuadTowerElement> {
    let ring = PolyRing::new(&QuadTower);
    GaloisAutomorphism::ALL
        .iter()
        .fold(ring.one(), |acc, &s| ring.mul(&acc, &conjugate_poly(f, s)))
}

/// `f(-x)`.
pub fn negate_variable<F: Field>(field: &F, f: &Poly<F::Elem>) -> Poly<F::Elem> {
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { field.neg(c) } else { c.clone() })
        .collect();
    PolyRing::new(field).from_coeffs(coeffs)
}

// ---------------------------------------------------------------------------
// The stored n = 3 matrix

#[derive(Clone, Debug, Deserialize)]
struct RawFixture {
    version: u32,
    u_dft: Vec<Vec<Vec<String>>>,
    f_descending: Vec<Vec<String>>,
    g_descending: Vec<String>,
    eigenvalues: Vec<[String; 2]>,
}

/// The stored `n = 3` unitary DFT with its characteristic polynomial `f`, the
/// degree-24 rational polynomial `g` and six eigenvalues.
#[derive(Clone, Debug)]
pub struct UnitaryS3Fixture {
    pub u: Matrix<QuadTowerElement>,
    /// Ascending coefficients.
    pub f: Poly<QuadTowerElement>,
    /// Ascending coefficients.
    pub g: Poly<BigRational>,
    pub eigenvalues: Vec<Complex64>,
}

pub const UNITARY_S3_JSON: &str = include_str!("../data/unitary_s3.json");

impl UnitaryS3Fixture {
    pub fn load() -> Result<Self> {
        Self::parse(UNITARY_S3_JSON)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFixture = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        if raw.version != 1 {
            return Err(Error::Fixture(format!("unsupported version {}", raw.version)));
        }
        let rows = raw
            .u_dft
            .iter()
            .map(|row| row.iter().map(|e| QuadTowerElement::parse(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let u = Matrix::from_rows(rows)?;
        let mut f = raw
            .f_descending
            .iter()
            .map(|e| QuadTowerElement::parse(e))
            .collect::<Result<Vec<_>>>()?;
        f.reverse();
        let mut g = raw
            .g_descending
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| Error::Fixture(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        g.reverse();
        let eigenvalues = raw
            .eigenvalues
            .iter()
            .map(|[re, im]| {
                let p = |s: &str| s.parse::<f64>().map_err(|e| Error::Fixture(e.to_string()));
                Ok(Complex64::new(p(re)?, p(im)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            u,
            f: PolyRing::new(&QuadTower).from_coeffs(f),
            g: PolyRing::new(&Rationals).from_coeffs(g),
            eigenvalues,
        })
    }
}

/// One coefficient that differs between a computed and a stored polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientDiff {
    pub degree: usize,
    pub computed: String,
    pub stored: String,
}

fn poly_diff<E, D: Fn(&E) -> String>(computed: &[E], stored: &[E], zero: &E, show: D) -> Vec<CoefficientDiff>
where
    E: PartialEq,
{
    let len = computed.len().max(stored.len());
    (0..len)
        .filter_map(|i| {
            let c = computed.get(i).unwrap_or(zero);
            let s = stored.get(i).unwrap_or(zero);
            (c != s).then(|| CoefficientDiff {
                degree: i,
                computed: show(c),
                stored: show(s),
            })
        })
        .collect()
}

/// Results of the exact and numerical checks on the stored `n = 3` data.
#[derive(Clone, Debug, Serialize)]
pub struct N3FixtureReport {
    /// (a) `U U^T = I` exactly.
    pub unitary_exact: bool,
    /// (b) `char_poly(U)` equals the stored `f`.
    pub charpoly_matches_f: bool,
    pub charpoly_diffs: Vec<CoefficientDiff>,
    /// (c) `f` equals its reverse.
    pub f_palindromic: bool,
    /// (d) `prod_s s(f)` has rational coefficients ...
    pub norm_is_rational: bool,
    /// ... and equals the stored `g`.
    pub norm_matches_g: bool,
    pub norm_diffs: Vec<CoefficientDiff>,
    /// (e) every stored eigenvalue is within tolerance of a computed one.
    pub eigenvalues_match: bool,
    pub computed_eigenvalues: Vec<[f64; 2]>,
    pub eigenvalue_errors: Vec<f64>,
    /// (f) the rational polynomial has a non-integer coefficient, so its roots
    /// are not roots of unity.
    pub g_has_non_integer_coefficient: bool,
    /// Diagnostics for failures of (d), (e).
    pub diagnostics: N3Diagnostics,
}

#[derive(Clone, Debug, Serialize)]
pub struct N3Diagnostics {
    /// Stored `g(x)` equals `prod_s s(f)(-x)`.
    pub stored_g_is_norm_at_minus_x: bool,
    /// Each conjugate `s(f)` divides the stored `g` over `K`.
    pub conjugates_dividing_stored_g: Vec<bool>,
    /// Stored eigenvalues match the negatives of the computed ones.
    pub stored_eigenvalues_are_negated: bool,
    /// The stored eigenvalues are roots of `f(-x)` to tolerance.
    pub stored_eigenvalues_are_roots_of_f_at_minus_x: bool,
}

impl N3FixtureReport {
    /// The six check outcomes in order (a)..(f).
    pub fn checks(&self) -> [(&'static str, bool); 6] {
        [
            ("(a) U U^T = I exactly", self.unitary_exact),
            ("(b) char_poly(U) = f", self.charpoly_matches_f),
            ("(c) f palindromic", self.f_palindromic),
            ("(d) prod of conjugates of f is rational and equals g", self.norm_is_rational && self.norm_matches_g),
            ("(e) eigenvalues match to 1e-9", self.eigenvalues_match),
            ("(f) g has a non-integer coefficient", self.g_has_non_integer_coefficient),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.checks().iter().all(|(_, ok)| *ok)
    }
}

fn match_all(targets: &[Complex64], pool: &[Complex64]) -> (bool, Vec<f64>) {
    let mut used = vec![false; pool.len()];
    let mut errors = Vec::new();
    for t in targets {
        let best = pool
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .min_by(|a, b| (a.1 - t).norm().partial_cmp(&(b.1 - t).norm()).unwrap());
        match best {
            Some((i, z)) => {
                used[i] = true;
                errors.push((z - t).norm());
            }
            None => errors.push(f64::INFINITY),
        }
    }
    (errors.iter().all(|&e| e <= EIGENVALUE_TOL), errors)
}

fn eval_complex(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Runs checks (a) to (f) on the stored data.
pub fn verify_n3_fixture() -> Result<N3FixtureReport> {
    verify_fixture(&UnitaryS3Fixture::load()?)
}

pub fn verify_fixture(fx: &UnitaryS3Fixture) -> Result<N3FixtureReport> {
    let k = QuadTower;
    let q = Rationals;
    let kring = PolyRing::new(&k);
    let qring = PolyRing::new(&q);

    let uut = linalg::mul(&k, &fx.u, &fx.u.transpose())?;
    let unitary_exact = linalg::is_identity(&k, &uut);

    let cp = linalg::char_poly(&k, &fx.u)?;
    let charpoly_diffs = poly_diff(cp.coeffs(), fx.f.coeffs(), &k.zero(), |c| c.to_string());
    let charpoly_matches_f = charpoly_diffs.is_empty();
    let f_palindromic = kring.is_palindromic(&fx.f);

    let norm = galois_norm(&fx.f);
    let norm_is_rational = norm.coeffs().iter().all(QuadTowerElement::is_rational);
    let norm_q = qring.from_coeffs(norm.coeffs().iter().map(|c| c.a.clone()).collect());
    let norm_diffs = poly_diff(norm_q.coeffs(), fx.g.coeffs(), &q.zero(), format_rational);
    let norm_matches_g = norm_is_rational && norm_diffs.is_empty();
    let g_has_non_integer_coefficient =
        norm_is_rational && norm_q.coeffs().iter().any(|c| !c.is_integer());

    let uf = fx.u.map(|x| Complex64::new(x.to_f64(), 0.0));
    let mut computed = complex::eigenvalues(&uf, 1e-15, 10_000)?;
    complex::sort_by_argument(&mut computed);
    let (eigenvalues_match, eigenvalue_errors) = match_all(&fx.eigenvalues, &computed);

    let negated: Vec<Complex64> = computed.iter().map(|z| -z).collect();
    let (stored_eigenvalues_are_negated, _) = match_all(&fx.eigenvalues, &negated);
    let f_minus: Vec<f64> = negate_variable(&k, &fx.f).coeffs().iter().map(|c| c.to_f64()).collect();
    let stored_eigenvalues_are_roots_of_f_at_minus_x = fx
        .eigenvalues
        .iter()
        .all(|&z| eval_complex(&f_minus, z).norm() <= 1e-8);
    let stored_g_is_norm_at_minus_x = negate_variable(&q, &fx.g) == norm_q;
    let g_in_k = kring.from_coeffs(
        fx.g.coeffs().iter().map(|c| QuadTowerElement::rational(c.clone())).collect(),
    );
    let conjugates_dividing_stored_g = GaloisAutomorphism::ALL
        .iter()
        .map(|&s| kring.rem(&g_in_k, &conjugate_poly(&fx.f, s)).is_zero())
        .collect();

    Ok(N3FixtureReport {
        unitary_exact,
        charpoly_matches_f,
        charpoly_diffs,
        f_palindromic,
        norm_is_rational,
        norm_matches_g,
        norm_diffs,
        eigenvalues_match,
        computed_eigenvalues: computed.iter().map(|z| [z.re, z.im]).collect(),
        eigenvalue_errors,
        g_has_non_integer_coefficient,
        diagnostics: N3Diagnostics {
            stored_g_is_norm_at_minus_x,
            conjugates_dividing_stored_g,
            stored_eigenvalues_are_negated,
            stored_eigenvalues_are_roots_of_f_at_minus_x,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qt(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> QuadTowerElement {
        QuadTowerElement::new(r(a.0, a.1), r(b.0, b.1), r(c.0, c.1), r(d.0, d.1))
    }

    const Z: (i64, i64) = (0, 1);

    #[test]
    fn tower_arithmetic() {
        let k = QuadTower;
        let s2 = qt(Z, (1, 1), Z, Z);
        let s3 = qt(Z, Z, (1, 1), Z);
        assert_eq!(k.mul(&s2, &s3), qt(Z, Z, Z, (1, 1)));
        assert_eq!(k.inv(&s2).unwrap(), qt(Z, (1, 2), Z, Z));
        let a = qt((1, 1), (1, 1), Z, Z);
        let b = qt((1, 1), (-1, 1), Z, Z);
        assert_eq!(k.mul(&a, &b), qt((-1, 1), Z, Z, Z));
        assert_eq!(k.inv(&k.zero()), None);
        assert_eq!(k.div(&k.one(), &k.zero()), None);
    }

    #[test]
    fn galois_action() {
        let s6 = qt(Z, Z, Z, (1, 1));
        let flip2 = GaloisAutomorphism::ALL[1];
        assert_eq!(galois_conjugate(&s6, GaloisAutomorphism::ALL[0]), s6);
        assert_eq!(galois_conjugate(&s6, flip2), qt(Z, Z, Z, (-1, 1)));
        assert_eq!(galois_conjugate(&s6, GaloisAutomorphism::ALL[3]), s6);
    }

    fn element() -> impl Strategy<Value = QuadTowerElement> {
        prop::collection::vec((-9i64..10, 1i64..5), 4)
            .prop_map(|v| qt(v[0], v[1], v[2], v[3]))
    }

    proptest! {
        #[test]
        fn trace_is_four_times_rational_part(x in element()) {
            let k = QuadTower;
            let sum = GaloisAutomorphism::ALL.iter().fold(k.zero(), |acc, &s| k.add(&acc, &galois_conjugate(&x, s)));
            prop_assert_eq!(sum, QuadTowerElement::rational(&x.a * r(4, 1)));
        }

        #[test]
        fn automorphisms_are_multiplicative(x in element(), y in element()) {
            let k = QuadTower;
            for s in GaloisAutomorphism::ALL {
                prop_assert_eq!(
                    galois_conjugate(&k.mul(&x, &y), s),
                    k.mul(&galois_conjugate(&x, s), &galois_conjugate(&y, s))
                );
            }
        }

        #[test]
        fn inverse_round_trip(x in element()) {
            let k = QuadTower;
            prop_assume!(x != k.zero());
            prop_assert_eq!(k.mul(&x, &k.inv(&x).unwrap()), k.one());
            let f = x.to_f64() * k.inv(&x).unwrap().to_f64();
            prop_assert!((f - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn weyl_trivial_sign_and_standard() {
        let table = SpechtTable::new(3).unwrap();
        let trivial = weyl_unitarize(&table, 0).unwrap();
        assert_eq!(trivial.p.data(), &[1.0]);
        assert_eq!(trivial.q.data(), &[1.0]);
        let sign = weyl_unitarize(&table, 2).unwrap();
        for (t, rho) in sign.tau.iter().zip(&table.reps[2].1) {
            assert_eq!(t.data()[0], *rho.get(0, 0) as f64);
        }
        let standard = weyl_unitarize(&table, 1).unwrap();
        assert!(standard.defect < 1e-12);
        for n in 1..=4 {
            let table = SpechtTable::new(n).unwrap();
            for i in 0..table.reps.len() {
                assert!(weyl_unitarize(&table, i).unwrap().defect < UNITARITY_TOL);
            }
        }
    }

    #[test]
    fn unitary_dft_small_cases() {
        let r2 = unitary_sn_dft(2).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let want = [h, h, h, -h];
        for (x, w) in r2.u.data().iter().zip(want) {
            assert!((x.re - w).abs() < 1e-15 && x.im == 0.0);
        }
        for n in 2..=4 {
            let rep = unitary_sn_dft(n).unwrap();
            assert!(rep.defect < UNITARITY_TOL, "n={n} defect {}", rep.defect);
            assert!(rep.max_modulus_deviation() < UNITARITY_TOL);
            let c = 1.0 / (rep.u.cols() as f64).sqrt();
            assert!(rep.u.row(0).iter().all(|x| (x.re - c).abs() < 1e-14));
        }
        assert!(unitary_sn_dft(3).unwrap().defect < 1e-12);
        assert!(unitary_sn_dft(6).is_err());
    }

    #[test]
    fn fixture_exact_checks() {
        let fx = UnitaryS3Fixture::load().unwrap();
        assert_eq!(fx.f.coeffs()[5], qt((-1, 2), Z, (-1, 3), Z));
        assert_eq!(fx.g.coeffs()[23], r(2, 1));
        assert_eq!(fx.g.coeffs()[22], r(-1, 2));
        assert!(fx
            .eigenvalues
            .contains(&Complex64::new(0.9916391752712170, 0.1290416447020912)));
        let rep = verify_fixture(&fx).unwrap();
        assert!(rep.unitary_exact);
        assert!(rep.charpoly_matches_f, "{:?}", rep.charpoly_diffs);
        assert!(rep.f_palindromic);
        assert!(rep.norm_is_rational);
        assert!(rep.g_has_non_integer_coefficient);
        // the stored g and eigenvalues correspond to f(-x), not f(x)
        assert!(rep.diagnostics.stored_g_is_norm_at_minus_x);
        assert!(rep.diagnostics.stored_eigenvalues_are_negated);
        assert!(rep.diagnostics.stored_eigenvalues_are_roots_of_f_at_minus_x);
        assert!(!rep.norm_matches_g);
        assert!(!rep.eigenvalues_match);
    }

    #[test]
    fn norm_leading_terms_by_hand() {
        // x^23 coefficient of prod s(f) is the trace of f's x^5 coefficient
        let fx = UnitaryS3Fixture::load().unwrap();
        let norm = galois_norm(&fx.f);
        assert_eq!(norm.coeffs()[24], QuadTower.one());
        assert_eq!(norm.coeffs()[23], QuadTowerElement::rational(r(-2, 1)));
    }
}
