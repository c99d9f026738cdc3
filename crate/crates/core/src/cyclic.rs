//! Fourier transforms of the cyclic group `Z/N`.
//!
//! Two regimes: the root-of-unity transform `f_k = sum_j v_j alpha^(jk)` when a
//! primitive `N`-th root of unity exists, and the Chinese-remainder transform
//! `F_p[x]/(x^N - 1) -> prod_i F_p[x]/(P_i^m_i)`, which also works when `p | N`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{
    element_order, nth_root_of_unity, sqrt_in_field, ExtField, Field, FiniteField, PrimeField,
    SquareRoot,
};
use crate::linalg::{self, Matrix};
use crate::numtheory;
use crate::poly::{Poly, PolyRing};

fn check_root_order<F: Field>(field: &F, alpha: &F::Elem, n: u64) -> Result<()> {
    if !field.is_one(&field.pow(alpha, n as u128)) {
        // order does not divide N; search a bounded range, 0 when not found
        let found = (1..=4 * n)
            .find(|&k| field.is_one(&field.pow(alpha, k as u128)))
            .unwrap_or(0);
        return Err(Error::WrongRootOrder { expected: n, found });
    }
    for (r, _) in numtheory::factorize(n as u128) {
        let r = r as u64;
        if field.is_one(&field.pow(alpha, (n / r) as u128)) {
            let mut found = n / r;
            for (s, _) in numtheory::factorize(found as u128) {
                let s = s as u64;
                while found % s == 0 && field.is_one(&field.pow(alpha, (found / s) as u128)) {
                    found /= s;
                }
            }
            return Err(Error::WrongRootOrder { expected: n, found });
        }
    }
    Ok(())
}

/// `f_k = sum_j v_j alpha^(jk)`; `alpha` must have order exactly `N = v.len()`.
pub fn dft_root_of_unity<F: Field>(field: &F, v: &[F::Elem], alpha: &F::Elem) -> Result<Vec<F::Elem>> {
    let n = v.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("signal must have length at least 1".into()));
    }
    check_root_order(field, alpha, n as u64)?;
    Ok(evaluate_powers(field, v, alpha))
}

fn evaluate_powers<F: Field>(field: &F, v: &[F::Elem], alpha: &F::Elem) -> Vec<F::Elem> {
    let n = v.len();
    let powers: Vec<F::Elem> = (0..n).map(|i| field.pow(alpha, i as u128)).collect();
    (0..n)
        .map(|k| {
            v.iter().enumerate().fold(field.zero(), |acc, (j, vj)| {
                field.add(&acc, &field.mul(vj, &powers[(j * k) % n]))
            })
        })
        .collect()
}

/// `v_j = (1/N) sum_k f_k alpha^(-jk)`; requires `p` not dividing `N`.
pub fn idft_root_of_unity<F: Field>(field: &F, f: &[F::Elem], alpha: &F::Elem) -> Result<Vec<F::Elem>> {
    let n = f.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("signal must have length at least 1".into()));
    }
    check_root_order(field, alpha, n as u64)?;
    let n_inv = field
        .inv(&field.from_i64(n as i64))
        .ok_or(Error::LengthNotInvertible {
            n: n as u64,
            p: field.characteristic(),
        })?;
    let alpha_inv = field.inv(alpha).ok_or(Error::DivisionByZero)?;
    Ok(evaluate_powers(field, f, &alpha_inv)
        .iter()
        .map(|x| field.mul(x, &n_inv))
        .collect())
}

/// Canonical `N`-th root of unity of `F_p`, with the preconditions spelled out.
pub fn default_root(field: &PrimeField, n: u64) -> Result<u64> {
    let p = field.modulus();
    if n % p == 0 {
        return Err(Error::CharacteristicDividesLength { n, p });
    }
    nth_root_of_unity(field, n)
}

/// `(u * v)_k = sum_{i + j = k mod N} u_i v_j`.
pub fn cyclic_convolution<F: Field>(field: &F, u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
    let n = u.len();
    assert_eq!(n, v.len(), "convolution operands must have equal length");
    let mut out = vec![field.zero(); n];
    for (i, ui) in u.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            let k = (i + j) % n;
            out[k] = field.add(&out[k], &field.mul(ui, vj));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Chinese-remainder transform

/// Residues of a signal modulo each prime-power factor `n_i = P_i^m_i` of
/// `x^N - 1`, in canonical factor order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtSpectrum<E> {
    pub n: usize,
    pub moduli: Vec<Poly<E>>,
    pub residues: Vec<Vec<E>>,
}

impl<E> CrtSpectrum<E> {
    pub fn total_length(&self) -> usize {
        self.residues.iter().map(Vec::len).sum()
    }
}

/// The moduli `P_i^m_i` of `x^N - 1` over `field`, canonically ordered.
pub fn crt_moduli<F: FiniteField>(field: &F, n: usize) -> Vec<Poly<F::Elem>> {
    let ring = PolyRing::new(field);
    ring.factor(&ring.x_pow_minus_one(n))
        .factors
        .iter()
        .map(|(p, m)| ring.pow(p, *m))
        .collect()
}

/// `h mod n_i` for every modulus of `x^N - 1` over `field`, where `N = h.len()`.
pub fn crt_dft_in<F: FiniteField>(field: &F, h: &[F::Elem]) -> Result<CrtSpectrum<F::Elem>> {
    let n = h.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("signal must have length at least 1".into()));
    }
    let ring = PolyRing::new(field);
    let hp = ring.from_coeffs(h.to_vec());
    let moduli = crt_moduli(field, n);
    let residues = moduli
        .iter()
        .map(|m| ring.padded(&ring.rem(&hp, m), m.degree().unwrap()))
        .collect();
    Ok(CrtSpectrum { n, moduli, residues })
}

/// Inverts [`crt_dft_in`]: `h = sum_i a_i M_i N_i mod (x^N - 1)` with
/// `N_i = (x^N - 1)/n_i` and `M_i N_i = 1 mod n_i` from Bezout.
pub fn crt_idft_in<F: FiniteField>(field: &F, spectrum: &CrtSpectrum<F::Elem>) -> Result<Vec<F::Elem>> {
    let n = spectrum.n;
    if n == 0 {
        return Err(Error::MalformedSpectrum("N must be at least 1".into()));
    }
    let moduli = crt_moduli(field, n);
    if spectrum.residues.len() != moduli.len() {
        return Err(Error::MalformedSpectrum(format!(
            "expected {} components, got {}",
            moduli.len(),
            spectrum.residues.len()
        )));
    }
    let ring = PolyRing::new(field);
    let big = ring.x_pow_minus_one(n);
    let mut h = ring.zero();
    for (i, (m, a)) in moduli.iter().zip(&spectrum.residues).enumerate() {
        let deg = m.degree().unwrap();
        if a.len() != deg {
            return Err(Error::MalformedSpectrum(format!(
                "component {i} has length {}, expected {deg}",
                a.len()
            )));
        }
        let cofactor = ring.quo(&big, m);
        let (d, u, _) = ring.xgcd(&cofactor, m);
        debug_assert!(ring.field().is_one(&d.coeffs()[0]) && d.degree() == Some(0));
        let idem = ring.rem(&ring.mul(&u, &cofactor), &big);
        let term = ring.mul(&ring.from_coeffs(a.clone()), &idem);
        h = ring.add(&h, &term);
    }
    Ok(ring.padded(&ring.rem(&h, &big), n))
}

/// CRT transform over `F_p`.
pub fn crt_dft(h: &[u64], p: u64) -> Result<CrtSpectrum<u64>> {
    let field = PrimeField::new(p)?;
    let h: Vec<u64> = h.iter().map(|x| x % p).collect();
    crt_dft_in(&field, &h)
}

/// Inverse CRT transform over `F_p`.
pub fn crt_idft(spectrum: &CrtSpectrum<u64>, p: u64) -> Result<Vec<u64>> {
    crt_idft_in(&PrimeField::new(p)?, spectrum)
}

/// The smallest extension `F_(p^f)` splitting `x^l - 1`, `l` the part of `N`
/// prime to `p`; `f` is the order of `p` modulo `l`.
pub fn splitting_field(n: u64, p: u64) -> Result<ExtField<PrimeField>> {
    let base = PrimeField::new(p)?;
    let mut ell = n;
    while ell % p == 0 {
        ell /= p;
    }
    let f = if ell == 1 {
        1
    } else {
        numtheory::multiplicative_order(p % ell, ell).expect("p is coprime to l")
    };
    ExtField::with_least_modulus(base, f as usize)
}

/// CRT transform with arithmetic lifted to the splitting field of `x^l - 1`.
pub fn crt_dft_splitting(h: &[u64], p: u64) -> Result<(ExtField<PrimeField>, CrtSpectrum<Vec<u64>>)> {
    let field = splitting_field(h.len() as u64, p)?;
    let lifted: Vec<Vec<u64>> = h.iter().map(|x| field.embed(&(x % p))).collect();
    let spectrum = crt_dft_in(&field, &lifted)?;
    Ok((field, spectrum))
}

// ---------------------------------------------------------------------------
// Unitary DFT over finite fields

/// Where `sqrt(N)` was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SqrtLocation {
    WorkingField,
    QuadraticExtension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitaryCyclicReport {
    pub n: u64,
    pub q: u64,
    pub p: u64,
    /// Degree over `F_p` of the field `U` lives in.
    pub field_degree: usize,
    pub sqrt_location: SqrtLocation,
    pub q_is_minus_one_mod_n: bool,
    /// `U U* = I` with `U*` the transpose of `x -> x^q` applied entrywise.
    pub unitary: bool,
    /// `(A A*)_(ik) = N delta(i, -q k mod N)` for the unnormalized `A`.
    pub kronecker_structure: bool,
    /// `sqrt(N) * sqrt(N)^q = N`, so normalizing `A A*` by `1/N` is exact.
    /// When false, `U U* = -A A*/N` and `U` is not unitary even if
    /// `q = -1 mod N`.
    pub sqrt_n_norm_is_n: bool,
    pub order_four: bool,
    /// Every root of `char_poly(U)` satisfies `x^4 = 1`.
    pub eigenvalues_fourth_roots: bool,
    /// `deg gcd(char_poly(U), x^4 - 1)`.
    pub gcd_with_x4_minus_1_degree: usize,
}

/// `U = A / sqrt(N)` with `A_ij = alpha^(ij)` and its unitarity report, in a
/// field of characteristic `p` where `alpha` has order `N`.
pub struct UnitaryCyclicDft<E> {
    pub u: Matrix<E>,
    pub report: UnitaryCyclicReport,
}

/// Builds the transform in `field`, which must contain a primitive `N`-th root
/// of unity.  `sqrt(N)` is taken in `field` when it exists, otherwise in
/// `field[y]/(y^2 - N)`.  The matrix is returned as canonical element indices
/// of whichever field was used.
pub fn unitary_dft_in_field<F: FiniteField>(field: &F, n: u64, q: u64) -> Result<UnitaryCyclicDft<u64>> {
    let p = field.prime();
    if n % p == 0 {
        return Err(Error::CharacteristicDividesLength { n, p });
    }
    let n_elem = field.from_i64(n as i64);
    match sqrt_in_field(field, &n_elem) {
        SquareRoot::Root(s) => build_unitary(field, n, q, &s, SqrtLocation::WorkingField),
        SquareRoot::NotASquare => {
            let ring = PolyRing::new(field);
            let modulus = ring.from_coeffs(vec![field.neg(&n_elem), field.zero(), field.one()]);
            let ext = ExtField::new(field.clone(), modulus)?;
            // y is a square root of N by construction
            let s = ext.generator_root();
            build_unitary(&ext, n, q, &s, SqrtLocation::QuadraticExtension)
        }
    }
}

fn build_unitary<F: FiniteField>(
    field: &F,
    n: u64,
    q: u64,
    sqrt_n: &F::Elem,
    sqrt_location: SqrtLocation,
) -> Result<UnitaryCyclicDft<u64>> {
    let size = n as usize;
    let alpha = nth_root_of_unity(field, n)?;
    debug_assert_eq!(element_order(field, &alpha), Some(n));
    let inv_sqrt = field.inv(sqrt_n).ok_or(Error::DivisionByZero)?;
    let u = Matrix::from_fn(size, size, |i, j| {
        field.mul(&field.pow(&alpha, ((i * j) % size) as u128), &inv_sqrt)
    });
    let conj_t = |m: &Matrix<F::Elem>| Matrix::from_fn(size, size, |i, j| field.pow(m.get(j, i), q as u128));
    let uu = linalg::mul(field, &u, &conj_t(&u))?;
    let unitary = linalg::is_identity(field, &uu);
    let a = Matrix::from_fn(size, size, |i, j| field.pow(&alpha, ((i * j) % size) as u128));
    let aa = linalg::mul(field, &a, &conj_t(&a))?;
    let n_elem = field.from_i64(n as i64);
    let kronecker_structure = (0..size).all(|i| {
        (0..size).all(|k| {
            let target = (size - (q as usize % size) * k % size) % size;
            let want = if i == target { n_elem.clone() } else { field.zero() };
            *aa.get(i, k) == want
        })
    });
    let sqrt_n_norm_is_n = field.mul(sqrt_n, &field.pow(sqrt_n, q as u128)) == n_elem;
    let order_four = linalg::is_identity(field, &linalg::pow(field, &u, 4)?);
    let ring = PolyRing::new(field);
    let cp = linalg::char_poly(field, &u)?;
    let x4 = ring.x_pow_minus_one(4);
    let eigenvalues_fourth_roots = ring.rem(&ring.pow(&x4, n as u32), &cp).is_zero();
    let gcd_with_x4_minus_1_degree = ring.gcd(&cp, &x4).degree().unwrap_or(0);
    let report = UnitaryCyclicReport {
        n,
        q,
        p: field.prime(),
        field_degree: field.degree(),
        sqrt_location,
        q_is_minus_one_mod_n: (q + 1) % n == 0,
        unitary,
        kronecker_structure,
        sqrt_n_norm_is_n,
        order_four,
        eigenvalues_fourth_roots,
        gcd_with_x4_minus_1_degree,
    };
    Ok(UnitaryCyclicDft {
        u: u.map(|x| field.index_of(x)),
        report,
    })
}

/// Unitary DFT of length `N` over the smallest field `F_(q^(2m))` containing a
/// primitive `N`-th root of unity, with conjugation `x -> x^q`.
pub fn unitary_cyclic_dft_ff(n: u64, q: u64) -> Result<UnitaryCyclicDft<u64>> {
    if n == 0 {
        return Err(Error::DimensionMismatch("N must be at least 1".into()));
    }
    let (p, r) = numtheory::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if n % p == 0 {
        return Err(Error::CharacteristicDividesLength { n, p });
    }
    let q2 = (q as u128) * (q as u128);
    let mut m = 1u32;
    let mut order = q2;
    while (order - 1) % n as u128 != 0 {
        m += 1;
        order *= q2;
    }
    let degree = 2 * m as usize * r as usize;
    let field = ExtField::with_least_modulus(PrimeField::new(p)?, degree)?;
    unitary_dft_in_field(&field, n, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn f17_golden_vector() {
        let field = f(17);
        let v: Vec<u64> = (0..16).collect();
        let out = dft_root_of_unity(&field, &v, &3).unwrap();
        assert_eq!(out, vec![1, 8, 2, 15, 7, 4, 6, 5, 9, 13, 12, 14, 11, 3, 16, 10]);
        assert_eq!(idft_root_of_unity(&field, &out, &3).unwrap(), v);
    }

    #[test]
    fn delta_and_constant() {
        let field = f(17);
        let mut v = vec![0; 16];
        v[0] = 5;
        assert_eq!(dft_root_of_unity(&field, &v, &3).unwrap(), vec![5; 16]);
        let ones = vec![1; 16];
        let mut want = vec![0; 16];
        want[0] = 16;
        assert_eq!(dft_root_of_unity(&field, &ones, &3).unwrap(), want);
        assert_eq!(idft_root_of_unity(&field, &want, &3).unwrap(), ones);
        assert_eq!(idft_root_of_unity(&field, &[4], &1).unwrap(), vec![4]);
    }

    #[test]
    fn wrong_root_order_is_rejected() {
        let field = f(17);
        let v: Vec<u64> = (0..16).collect();
        // 2 has order 8 mod 17
        assert_eq!(
            dft_root_of_unity(&field, &v, &2),
            Err(Error::WrongRootOrder { expected: 16, found: 8 })
        );
        assert!(matches!(
            dft_root_of_unity(&field, &v[..5], &3),
            Err(Error::WrongRootOrder { expected: 5, .. })
        ));
    }

    #[test]
    fn idft_requires_invertible_length() {
        // in characteristic p no element has order divisible by p, so p | N
        // surfaces as a root-order error or as the explicit precondition
        let field = f(2);
        assert!(idft_root_of_unity(&field, &[1, 0], &1).is_err());
        assert_eq!(
            default_root(&field, 6),
            Err(Error::CharacteristicDividesLength { n: 6, p: 2 })
        );
    }

    #[test]
    fn crt_of_x_over_f7() {
        let mut h = vec![0; 10];
        h[1] = 1;
        let s = crt_dft(&h, 7).unwrap();
        // canonical order lists x + 1 before x + 6 = x - 1
        assert_eq!(s.moduli[0], Poly::from_vec(vec![1, 1]));
        assert_eq!(s.moduli[1], Poly::from_vec(vec![6, 1]));
        assert_eq!(
            s.residues,
            vec![vec![6], vec![1], vec![0, 1, 0, 0], vec![0, 1, 0, 0]]
        );
        assert_eq!(crt_idft(&s, 7).unwrap(), h);
    }

    #[test]
    fn crt_modular_case_by_long_division() {
        // x^3 + 1 over F_2, N = 6: moduli (x+1)^2 = x^2+1 and (x^2+x+1)^2 = x^4+x^2+1
        let h = vec![1, 0, 0, 1, 0, 0];
        let s = crt_dft(&h, 2).unwrap();
        assert_eq!(s.moduli[0], Poly::from_vec(vec![1, 0, 1]));
        assert_eq!(s.moduli[1], Poly::from_vec(vec![1, 0, 1, 0, 1]));
        // x^3 + 1 = x (x^2 + 1) + (x + 1)
        assert_eq!(s.residues[0], vec![1, 1]);
        // degree 3 < 4, so the residue is the input itself
        assert_eq!(s.residues[1], vec![1, 0, 0, 1]);
        assert_eq!(crt_idft(&s, 2).unwrap(), h);
    }

    #[test]
    fn zero_and_delta_spectra() {
        let s = crt_dft(&[0; 12], 2).unwrap();
        assert!(s.residues.iter().flatten().all(|&x| x == 0));
        assert_eq!(crt_idft(&s, 2).unwrap(), vec![0; 12]);
        let mut delta = vec![0; 12];
        delta[0] = 1;
        let s = crt_dft(&delta, 2).unwrap();
        for r in &s.residues {
            assert_eq!(r[0], 1);
            assert!(r[1..].iter().all(|&x| x == 0));
        }
        assert_eq!(crt_idft(&s, 2).unwrap(), delta);
    }

    #[test]
    fn malformed_spectrum() {
        let mut s = crt_dft(&[1, 2, 3, 4, 5, 6], 7).unwrap();
        s.residues[0].push(0);
        assert!(matches!(crt_idft(&s, 7), Err(Error::MalformedSpectrum(_))));
        s.residues.pop();
        assert!(matches!(crt_idft(&s, 7), Err(Error::MalformedSpectrum(_))));
    }

    #[test]
    fn splitting_field_spectrum_matches_root_of_unity_dft() {
        for (n, p) in [(10u64, 7u64), (5, 2), (8, 3), (6, 5)] {
            let h: Vec<u64> = (0..n).map(|i| (i * i + 3) % p).collect();
            let (field, spectrum) = crt_dft_splitting(&h, p).unwrap();
            assert_eq!(spectrum.residues.len(), n as usize);
            assert!(spectrum.residues.iter().all(|r| r.len() == 1));
            let lifted: Vec<Vec<u64>> = h.iter().map(|x| field.embed(x)).collect();
            let alpha = nth_root_of_unity(&field, n).unwrap();
            let dft = dft_root_of_unity(&field, &lifted, &alpha).unwrap();
            let mut a: Vec<u64> = spectrum.residues.iter().map(|r| field.index_of(&r[0])).collect();
            let mut b: Vec<u64> = dft.iter().map(|x| field.index_of(x)).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "N={n} p={p}");
            assert_eq!(crt_idft_in(&field, &spectrum).unwrap(), lifted);
        }
    }

    #[test]
    fn unitary_grid() {
        for (n, q, unitary, degree) in [
            (3u64, 2u64, true, 2usize),
            (4, 3, true, 2),
            (5, 3, false, 4),
            (5, 4, true, 4),
            (6, 5, true, 2),
            (8, 7, true, 2),
        ] {
            let out = unitary_cyclic_dft_ff(n, q).unwrap();
            let r = &out.report;
            assert_eq!(r.unitary, unitary, "N={n} q={q}");
            assert_eq!(r.q_is_minus_one_mod_n, unitary);
            assert_eq!(r.field_degree, degree);
            assert!(r.kronecker_structure);
            assert!(r.sqrt_n_norm_is_n || !unitary);
            assert!(r.order_four);
            assert!(r.eigenvalues_fourth_roots);
            assert_eq!(r.sqrt_location, SqrtLocation::WorkingField);
        }
    }

    #[test]
    fn unitary_rejects_characteristic_dividing_length() {
        assert_eq!(
            unitary_cyclic_dft_ff(4, 2).err(),
            Some(Error::CharacteristicDividesLength { n: 4, p: 2 })
        );
        assert_eq!(unitary_cyclic_dft_ff(3, 6).err(), Some(Error::NotPrimePower(6)));
    }

    #[test]
    fn quadratic_extension_branch() {
        // 3 is not a square in F_7, which contains cube roots of unity
        let out = unitary_dft_in_field(&f(7), 3, 7).unwrap();
        assert_eq!(out.report.sqrt_location, SqrtLocation::QuadraticExtension);
        assert_eq!(out.report.field_degree, 2);
        assert!(out.report.order_four);
        assert!(out.report.kronecker_structure);
        assert!(!out.report.sqrt_n_norm_is_n);
        assert!(!out.report.unitary);
    }

    #[test]
    fn congruence_alone_does_not_force_unitarity() {
        // 5 = -1 mod 3 but 3 is not a square mod 5, so sqrt(3)^5 = -sqrt(3)
        let r = unitary_cyclic_dft_ff(3, 5).unwrap().report;
        assert!(r.q_is_minus_one_mod_n);
        assert!(r.kronecker_structure);
        assert!(!r.sqrt_n_norm_is_n);
        assert!(!r.unitary);
        assert!(r.order_four);
    }

    fn signal(p: u64, n: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0..p, n)
    }

    proptest! {
        #[test]
        fn convolution_theorem_f17(u in signal(17, 16), v in signal(17, 16)) {
            let field = f(17);
            let lhs = dft_root_of_unity(&field, &cyclic_convolution(&field, &u, &v), &3).unwrap();
            let fu = dft_root_of_unity(&field, &u, &3).unwrap();
            let fv = dft_root_of_unity(&field, &v, &3).unwrap();
            let rhs: Vec<u64> = fu.iter().zip(&fv).map(|(a, b)| field.mul(a, b)).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn convolution_theorem_f7(u in signal(7, 6), v in signal(7, 6)) {
            let field = f(7);
            let alpha = default_root(&field, 6).unwrap();
            let lhs = dft_root_of_unity(&field, &cyclic_convolution(&field, &u, &v), &alpha).unwrap();
            let fu = dft_root_of_unity(&field, &u, &alpha).unwrap();
            let fv = dft_root_of_unity(&field, &v, &alpha).unwrap();
            let rhs: Vec<u64> = fu.iter().zip(&fv).map(|(a, b)| field.mul(a, b)).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn crt_is_a_ring_homomorphism(
            (n, p, u, v) in prop_oneof![Just((10usize, 7u64)), Just((6, 2)), Just((9, 3)), Just((12, 2))]
                .prop_flat_map(|(n, p)| (Just(n), Just(p), signal(p, n), signal(p, n)))
        ) {
            let field = f(p);
            let ring = PolyRing::new(&field);
            let su = crt_dft(&u, p).unwrap();
            let sv = crt_dft(&v, p).unwrap();
            let suv = crt_dft(&cyclic_convolution(&field, &u, &v), p).unwrap();
            for (i, m) in suv.moduli.iter().enumerate() {
                let prod = ring.mul(&ring.from_coeffs(su.residues[i].clone()), &ring.from_coeffs(sv.residues[i].clone()));
                let want = ring.padded(&ring.rem(&prod, m), m.degree().unwrap());
                prop_assert_eq!(&suv.residues[i], &want);
            }
            prop_assert_eq!(su.total_length(), n);
            prop_assert_eq!(crt_idft(&su, p).unwrap(), u);
        }
    }
}
