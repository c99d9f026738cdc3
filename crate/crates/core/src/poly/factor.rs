// Factorization over finite fields: squarefree decomposition, then
// distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Poly, PolyRing};
use crate::fields::FiniteField;

/// `unit * prod(factor^multiplicity)`, factors monic, irreducible, pairwise
/// distinct and sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(Poly<E>, u32)>,
}

impl<E: Clone> Factorization<E> {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors
            .iter()
            .map(|(f, _)| f.degree().unwrap_or(0))
            .collect()
    }
}

impl<F: FiniteField> PolyRing<'_, F> {
    /// Complete factorization with the default seed 0.
    pub fn factor(&self, f: &Poly<F::Elem>) -> Factorization<F::Elem> {
        self.factor_seeded(f, 0)
    }

    /// Complete factorization; `seed` drives the equal-degree splitting.
    ///
    /// Panics on the zero polynomial.
    pub fn factor_seeded(&self, f: &Poly<F::Elem>, seed: u64) -> Factorization<F::Elem> {
        let unit = f.leading().expect("cannot factor the zero polynomial").clone();
        let monic = self.monic(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors: Vec<(Poly<F::Elem>, u32)> = Vec::new();
        for (sqfree, mult) in self.squarefree_decomposition(&monic) {
            for (part, degree) in self.distinct_degree(&sqfree) {
                for irreducible in self.equal_degree(&part, degree, &mut rng) {
                    factors.push((irreducible, mult));
                }
            }
        }
        factors.sort_by(|a, b| self.cmp_canonical(&a.0, &b.0).then(a.1.cmp(&b.1)));
        Factorization { unit, factors }
    }

    /// Rebuilds `unit * prod(factor^mult)`.
    pub fn expand(&self, fac: &Factorization<F::Elem>) -> Poly<F::Elem> {
        fac.factors
            .iter()
            .fold(self.constant(fac.unit.clone()), |acc, (p, m)| {
                self.mul(&acc, &self.pow(p, *m))
            })
    }

    /// Squarefree parts `(s_i, i)` with `f = prod s_i^i`, for monic `f`.
    /// Handles `f' = 0` by extracting p-th roots of the coefficients.
    pub fn squarefree_decomposition(&self, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, u32)> {
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.field().prime() as usize;
        let c0 = self.gcd(f, &self.derivative(f));
        let mut w = self.quo(f, &c0);
        let mut c = c0;
        let mut i = 1u32;
        while w.degree() != Some(0) {
            let y = self.gcd(&w, &c);
            let fac = self.quo(&w, &y);
            if fac.degree() != Some(0) {
                out.push((fac, i));
            }
            w = y;
            c = self.quo(&c, &w);
            i += 1;
        }
        if c.degree() != Some(0) {
            // c is a polynomial in x^p
            let root_coeffs = c
                .coeffs()
                .iter()
                .step_by(p)
                .map(|a| self.field().pth_root(a))
                .collect();
            let root = self.from_coeffs(root_coeffs);
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * p as u32));
            }
        }
        out
    }

    /// Splits a monic squarefree polynomial into `(product of all irreducible
    /// factors of degree d, d)`.
    pub fn distinct_degree(&self, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
        let q = self.field().order() as u128;
        let x = self.x();
        let mut out = Vec::new();
        let mut rest = f.clone();
        let mut h = self.rem(&x, &rest);
        let mut d = 1;
        while rest.degree().unwrap_or(0) >= 2 * d {
            h = self.pow_mod(&h, q, &rest);
            let g = self.gcd(&rest, &self.sub(&h, &x));
            if g.degree() != Some(0) {
                rest = self.quo(&rest, &g);
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
            out.push((rest, deg));
        }
        out
    }

    /// Cantor-Zassenhaus: splits a monic squarefree product of irreducibles of
    /// degree `d` into its factors.
    pub fn equal_degree<R: rand::Rng>(
        &self,
        f: &Poly<F::Elem>,
        d: usize,
        rng: &mut R,
    ) -> Vec<Poly<F::Elem>> {
        let n = f.degree().unwrap_or(0);
        if n <= d {
            return vec![f.clone()];
        }
        let field = self.field();
        loop {
            let a = self.from_coeffs((0..n).map(|_| field.random_element(rng)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let g = self.gcd(&a, f);
            let candidate = if g.degree() != Some(0) {
                g
            } else {
                let b = self.splitting_map(&a, f, d);
                self.gcd(f, &b)
            };
            let dc = candidate.degree().unwrap_or(0);
            if dc > 0 && dc < n {
                let other = self.quo(f, &candidate);
                let mut left = self.equal_degree(&candidate, d, rng);
                left.extend(self.equal_degree(&other, d, rng));
                return left;
            }
        }
    }

    /// `a^((q^d - 1)/2) - 1` for odd q, or the trace `a + a^2 + ... + a^(2^(kd-1))`
    /// for q = 2^k, reduced mod f.
    fn splitting_map(&self, a: &Poly<F::Elem>, f: &Poly<F::Elem>, d: usize) -> Poly<F::Elem> {
        let field = self.field();
        let q = field.order() as u128;
        if field.prime() == 2 {
            let steps = field.degree() * d;
            let mut term = self.rem(a, f);
            let mut acc = term.clone();
            for _ in 1..steps {
                term = self.mul_mod(&term, &term, f);
                acc = self.add(&acc, &term);
            }
            acc
        } else {
            // a^(1 + q + ... + q^(d-1)), then ^((q-1)/2)
            let mut term = self.rem(a, f);
            let mut norm = term.clone();
            for _ in 1..d {
                term = self.pow_mod(&term, q, f);
                norm = self.mul_mod(&norm, &term, f);
            }
            let b = self.pow_mod(&norm, (q - 1) / 2, f);
            self.sub(&b, &self.one())
        }
    }

    /// True when `f` has degree at least 1 and no factor of degree at most
    /// `deg(f)/2`.
    pub fn is_irreducible(&self, f: &Poly<F::Elem>) -> bool {
        let n = match f.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        let f = self.monic(f);
        let q = self.field().order() as u128;
        let x = self.x();
        let mut h = self.rem(&x, &f);
        for _ in 1..=n / 2 {
            h = self.pow_mod(&h, q, &f);
            if self.gcd(&f, &self.sub(&h, &x)).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}
