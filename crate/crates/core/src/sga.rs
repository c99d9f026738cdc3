//! The modular group algebra `F_p[S_n]`: products, the center, central
//! primitive idempotents and the block change-of-basis matrix.
//!
//! Idempotents come from splitting the commutative center `Z`, written in the
//! class-sum basis.  A component `eZ` is local exactly when the fixed space of
//! Frobenius `x -> x^p` on it is one-dimensional; otherwise a fixed element
//! `z` has a split separable minimal polynomial and Bezout projectors
//! `u_i (mu / q_i)(z)` break `e` into orthogonal pieces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::fields::{Field, FiniteField, PrimeField};
use crate::linalg::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::symmetric::{convolve, partitions, Partition, Permutation, SymmetricGroup};

/// `F_p[S_n]` with elements as dense coefficient vectors in
/// [`crate::symmetric::enumerate_group`] order.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    field: PrimeField,
    group: SymmetricGroup,
    /// Cycle types, identity class first, `n`-cycles last.
    class_types: Vec<Partition>,
    class_of: Vec<usize>,
    /// `structure[i][j][k]`: coefficient of `K_k` in `K_i K_j`.
    structure: Vec<Vec<Vec<u64>>>,
}

impl GroupAlgebra {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let group = SymmetricGroup::new(n)?;
        let mut class_types = partitions(n);
        class_types.reverse();
        let class_of: Vec<usize> = group
            .elements()
            .iter()
            .map(|s| {
                let ct = s.cycle_type();
                class_types.iter().position(|c| *c == ct).unwrap()
            })
            .collect();
        let c = class_types.len();
        let mut structure = vec![vec![vec![0u64; c]; c]; c];
        for (k, row) in (0..c).map(|k| (k, class_of.iter().position(|&x| x == k).unwrap())) {
            for a in 0..group.order() {
                let b = group.mul(group.inverse(a), row);
                let slot = &mut structure[class_of[a]][class_of[b]][k];
                *slot = (*slot + 1) % p;
            }
        }
        Ok(Self {
            field,
            group,
            class_types,
            class_of,
            structure,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn n(&self) -> usize {
        self.group.degree()
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn class_types(&self) -> &[Partition] {
        &self.class_types
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    pub fn delta(&self, s: &Permutation) -> Vec<u64> {
        let mut v = self.zero();
        v[self.group.index_of(s).expect("permutation of the right degree")] = 1;
        v
    }

    pub fn one(&self) -> Vec<u64> {
        self.delta(&Permutation::identity(self.n()))
    }

    pub fn multiply(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        convolve(&self.field, &self.group, a, b)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    /// One sum of all permutations per cycle type, in class order.
    pub fn class_sums(&self) -> Vec<Vec<u64>> {
        (0..self.class_types.len())
            .map(|k| self.class_of.iter().map(|&c| u64::from(c == k)).collect())
            .collect()
    }

    /// Group algebra element of a center element given in class-sum coordinates.
    pub fn from_center(&self, z: &[u64]) -> Vec<u64> {
        self.class_of.iter().map(|&c| z[c]).collect()
    }

    fn center_mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let c = x.len();
        let mut out = vec![0; c];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                let xy = f.mul(xi, yj);
                for (k, o) in out.iter_mut().enumerate() {
                    let s = self.structure[i][j][k];
                    if s != 0 {
                        *o = f.add(o, &f.mul(&xy, &s));
                    }
                }
            }
        }
        out
    }

    fn center_pow(&self, x: &[u64], mut e: u64, unit: &[u64]) -> Vec<u64> {
        let mut acc = unit.to_vec();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.center_mul(&acc, &base);
            }
            base = self.center_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Basis (rows) of the subspace `eZ`.
    fn component_basis(&self, e: &[u64]) -> Vec<Vec<u64>> {
        let c = e.len();
        let spanning = Matrix::from_fn(c, c, |i, j| {
            let mut k = vec![0; c];
            k[i] = 1;
            self.center_mul(e, &k)[j]
        });
        let red = linalg::rref(&self.field, &spanning);
        (0..red.rank).map(|i| red.matrix.row(i).to_vec()).collect()
    }

    /// Basis of `{x in eZ : x^p = x}`.
    fn frobenius_fixed(&self, e: &[u64]) -> Vec<Vec<u64>> {
        let f = &self.field;
        let basis = self.component_basis(e);
        let c = e.len();
        let images: Vec<Vec<u64>> = basis
            .iter()
            .map(|b| {
                let fb = self.center_pow(b, self.p(), e);
                fb.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
            })
            .collect();
        let m = Matrix::from_fn(c, basis.len(), |i, j| images[j][i]);
        linalg::kernel(f, &m)
            .into_iter()
            .map(|coef| {
                (0..c)
                    .map(|i| {
                        coef.iter()
                            .zip(&basis)
                            .fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, &b[i])))
                    })
                    .collect()
            })
            .collect()
    }

    /// True when `e` (center coordinates) admits no splitting into two nonzero
    /// orthogonal central idempotents.
    pub fn is_primitive_center(&self, e: &[u64]) -> bool {
        self.frobenius_fixed(e).len() == 1
    }

    fn minimal_polynomial(&self, z: &[u64], unit: &[u64]) -> Poly<u64> {
        let f = &self.field;
        let c = z.len();
        let mut powers = vec![unit.to_vec()];
        loop {
            let next = self.center_mul(powers.last().unwrap(), z);
            powers.push(next);
            let k = powers.len();
            let m = Matrix::from_fn(c, k, |i, j| powers[j][i]);
            if let Some(v) = linalg::kernel(f, &m).into_iter().next() {
                return PolyRing::new(f).monic(&Poly::from_vec(v));
            }
        }
    }

    fn eval_at(&self, poly: &Poly<u64>, z: &[u64], unit: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut acc = vec![0; z.len()];
        for coef in poly.coeffs().iter().rev() {
            acc = self.center_mul(&acc, z);
            acc = acc.iter().zip(unit).map(|(a, u)| f.add(a, &f.mul(coef, u))).collect();
        }
        acc
    }

    fn split(&self, e: Vec<u64>, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
        let f = &self.field;
        let fixed = self.frobenius_fixed(&e);
        if fixed.len() <= 1 {
            out.push(e);
            return;
        }
        let ring = PolyRing::new(f);
        loop {
            let mut z = vec![0; e.len()];
            for b in &fixed {
                let a = f.random_element(rng);
                for (zi, bi) in z.iter_mut().zip(b) {
                    *zi = f.add(zi, &f.mul(&a, bi));
                }
            }
            let mu = self.minimal_polynomial(&z, &e);
            if mu.degree() == Some(1) {
                continue;
            }
            let fac = ring.factor(&mu);
            for (q, _) in &fac.factors {
                let cof = ring.quo(&mu, q);
                let (_, u, _) = ring.xgcd(&cof, q);
                let proj = ring.rem(&ring.mul(&u, &cof), &mu);
                self.split(self.eval_at(&proj, &z, &e), rng, out);
            }
            return;
        }
    }

    /// Central primitive orthogonal idempotents, sorted by block dimension and
    /// then by coefficient vector.
    pub fn central_idempotents(&self, seed: u64) -> IdempotentSet {
        let c = self.class_types.len();
        let mut unit = vec![0; c];
        unit[0] = 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut raw = Vec::new();
        self.split(unit, &mut rng, &mut raw);
        let mut entries: Vec<(usize, Vec<u64>, Vec<u64>)> = raw
            .into_iter()
            .map(|z| {
                let e = self.from_center(&z);
                (self.block_rank(&e), e, z)
            })
            .collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        IdempotentSet {
            p: self.p(),
            n: self.n(),
            block_dims: entries.iter().map(|x| x.0).collect(),
            idempotents: entries.iter().map(|x| x.1.clone()).collect(),
            center_coords: entries.into_iter().map(|x| x.2).collect(),
        }
    }

    /// Rows `s * e` for every `s`, one per group element.
    fn spanning_set(&self, e: &[u64]) -> Matrix<u64> {
        let order = self.dim();
        let g = &self.group;
        // (s * e)(t) = e(s^-1 t)
        Matrix::from_fn(order, order, |s, t| e[g.mul(g.inverse(s), t)])
    }

    fn block_rank(&self, e: &[u64]) -> usize {
        linalg::rank(&self.field, &self.spanning_set(e))
    }

    /// `v * e`.
    pub fn block_project(&self, v: &[u64], e: &[u64]) -> Vec<u64> {
        self.multiply(v, e)
    }

    /// Columns are the rref bases of the blocks `F_p[S_n] e_i`, in idempotent
    /// order; also returns the inverse, which maps standard coordinates to
    /// block coordinates.
    pub fn modular_dft_matrix(&self, set: &IdempotentSet) -> Result<ModularDftMatrix> {
        let order = self.dim();
        let mut columns: Vec<Vec<u64>> = Vec::with_capacity(order);
        let mut layout = Vec::new();
        for (i, e) in set.idempotents.iter().enumerate() {
            let red = linalg::rref(&self.field, &self.spanning_set(e));
            layout.push(BlockRange {
                idempotent: i,
                start: columns.len(),
                len: red.rank,
            });
            columns.extend((0..red.rank).map(|r| red.matrix.row(r).to_vec()));
        }
        let basis = Matrix::from_fn(order, columns.len(), |i, j| columns[j][i]);
        let transform = linalg::inverse(&self.field, &basis)?;
        Ok(ModularDftMatrix {
            p: self.p(),
            n: self.n(),
            basis,
            transform,
            layout,
        })
    }
}

/// Central primitive orthogonal idempotents of `F_p[S_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSet {
    pub p: u64,
    pub n: usize,
    pub idempotents: Vec<Vec<u64>>,
    /// `dim F_p[S_n] e_i`.
    pub block_dims: Vec<usize>,
    /// The same idempotents in class-sum coordinates.
    pub center_coords: Vec<Vec<u64>>,
}

impl IdempotentSet {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }
}

/// Result of checking the idempotent axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentChecks {
    pub central: bool,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub sum_is_one: bool,
    pub primitive: bool,
}

impl IdempotentChecks {
    pub fn all(&self) -> bool {
        self.central && self.idempotent && self.orthogonal && self.sum_is_one && self.primitive
    }
}

/// Checks every axiom exactly.  Centrality is tested against every group
/// element for `n <= 5` and against the generators `(1 2)`, `(1 2 ... n)`
/// beyond that.
pub fn verify_idempotents(alg: &GroupAlgebra, set: &IdempotentSet) -> IdempotentChecks {
    let n = alg.n();
    let witnesses: Vec<Permutation> = if n <= 5 {
        alg.group().elements().to_vec()
    } else {
        let cycle: Vec<usize> = (2..=n).chain(std::iter::once(1)).collect();
        vec![
            Permutation::transposition(n, 0, 1),
            Permutation::from_one_line(&cycle).unwrap(),
        ]
    };
    let es = &set.idempotents;
    let central = es.iter().all(|e| {
        witnesses.iter().all(|s| {
            let d = alg.delta(s);
            alg.multiply(e, &d) == alg.multiply(&d, e)
        })
    });
    let idempotent = es.iter().all(|e| alg.multiply(e, e) == *e);
    let zero = alg.zero();
    let orthogonal = (0..es.len())
        .all(|i| (0..es.len()).all(|j| i == j || alg.multiply(&es[i], &es[j]) == zero));
    let sum = es.iter().fold(alg.zero(), |acc, e| alg.add(&acc, e));
    let sum_is_one = sum == alg.one();
    let primitive = set.center_coords.iter().all(|z| alg.is_primitive_center(z));
    IdempotentChecks {
        central,
        idempotent,
        orthogonal,
        sum_is_one,
        primitive,
    }
}

/// JSON form of a group algebra element: one-line permutation strings mapped
/// to nonzero coefficients, in group order.
pub struct SparseElement<'a> {
    pub group: &'a SymmetricGroup,
    pub coeffs: &'a [u64],
}

impl Serialize for SparseElement<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nonzero = self.coeffs.iter().filter(|&&c| c != 0).count();
        let mut map = s.serialize_map(Some(nonzero))?;
        for (g, &c) in self.group.elements().iter().zip(self.coeffs) {
            if c != 0 {
                map.serialize_entry(&g.to_string(), &c)?;
            }
        }
        map.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockRange {
    pub idempotent: usize,
    pub start: usize,
    pub len: usize,
}

/// The block change of basis for `F_p[S_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularDftMatrix {
    pub p: u64,
    pub n: usize,
    /// Columns are block basis vectors in standard coordinates.
    pub basis: Matrix<u64>,
    /// `basis^-1`: standard coordinates to block coordinates.
    pub transform: Matrix<u64>,
    pub layout: Vec<BlockRange>,
}

impl ModularDftMatrix {
    fn block_of(&self, col: usize) -> usize {
        self.layout
            .iter()
            .position(|b| col >= b.start && col < b.start + b.len)
            .unwrap()
    }

    /// Whether `x -> x * w` is block diagonal in block coordinates.
    pub fn is_block_diagonal_for(&self, alg: &GroupAlgebra, w: &[u64]) -> bool {
        let f = alg.field();
        (0..self.basis.cols()).all(|j| {
            let image = alg.multiply(&self.basis.column(j), w);
            let coords = linalg::mat_vec(f, &self.transform, &image);
            let block = &self.layout[self.block_of(j)];
            coords
                .iter()
                .enumerate()
                .all(|(i, c)| *c == 0 || (i >= block.start && i < block.start + block.len))
        })
    }
}

/// A uniformly random element of `F_p[S_n]`.
pub fn random_element<R: Rng>(alg: &GroupAlgebra, rng: &mut R) -> Vec<u64> {
    (0..alg.dim()).map(|_| rng.gen_range(0..alg.p())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::{hook_length_dim, p_core};
    use std::collections::BTreeSet;

    fn distinct_cores(n: usize, p: usize) -> usize {
        partitions(n)
            .iter()
            .map(|l| p_core(l, p).0)
            .collect::<BTreeSet<_>>()
            .len()
    }

    #[test]
    fn products() {
        let alg = GroupAlgebra::new(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_element(&alg, &mut rng);
        assert_eq!(alg.multiply(&alg.one(), &a), a);
        let s = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        let t = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        assert_eq!(alg.multiply(&alg.delta(&s), &alg.delta(&t)), alg.delta(&s.compose(&t)));
        let x = alg.add(&alg.one(), &alg.delta(&t));
        assert_eq!(alg.multiply(&x, &x), alg.zero());
    }

    #[test]
    fn class_sums_are_central() {
        for (n, count) in [(3, 3), (4, 5)] {
            let alg = GroupAlgebra::new(5, n).unwrap();
            let sums = alg.class_sums();
            assert_eq!(sums.len(), count);
            let cycle: Vec<usize> = (2..=n).chain(std::iter::once(1)).collect();
            for s in [
                Permutation::transposition(n, 0, 1),
                Permutation::from_one_line(&cycle).unwrap(),
            ] {
                let d = alg.delta(&s);
                for k in &sums {
                    assert_eq!(alg.multiply(k, &d), alg.multiply(&d, k));
                }
            }
        }
        let types: Vec<Vec<usize>> = GroupAlgebra::new(2, 3)
            .unwrap()
            .class_types()
            .iter()
            .map(|c| c.parts().to_vec())
            .collect();
        assert_eq!(types, vec![vec![1, 1, 1], vec![2, 1], vec![3]]);
    }

    #[test]
    fn structure_constants_match_direct_products() {
        let alg = GroupAlgebra::new(3, 4).unwrap();
        let sums = alg.class_sums();
        for (i, ki) in sums.iter().enumerate() {
            for (j, kj) in sums.iter().enumerate() {
                let mut ei = vec![0; sums.len()];
                let mut ej = vec![0; sums.len()];
                ei[i] = 1;
                ej[j] = 1;
                let z = alg.center_mul(&ei, &ej);
                assert_eq!(alg.from_center(&z), alg.multiply(ki, kj));
            }
        }
    }

    #[test]
    fn idempotent_counts_and_axioms() {
        for (p, n, count) in [(2u64, 3usize, 2usize), (3, 4, 3), (7, 4, 5), (2, 4, 1), (3, 3, 1), (5, 4, 5)] {
            let alg = GroupAlgebra::new(p, n).unwrap();
            let set = alg.central_idempotents(0);
            assert_eq!(set.len(), count, "p={p} n={n}");
            assert_eq!(set.len(), distinct_cores(n, p as usize));
            assert!(verify_idempotents(&alg, &set).all(), "p={p} n={n}");
            assert_eq!(set.block_dims.iter().sum::<usize>(), alg.dim());
        }
    }

    #[test]
    fn block_count_is_number_of_p_cores() {
        for p in [2u64, 3, 5, 7] {
            for n in 3..=5 {
                let alg = GroupAlgebra::new(p, n).unwrap();
                let set = alg.central_idempotents(0);
                assert_eq!(set.len(), distinct_cores(n, p as usize), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn semisimple_block_dimensions() {
        let alg = GroupAlgebra::new(7, 4).unwrap();
        let set = alg.central_idempotents(0);
        let mut want: Vec<usize> = partitions(4)
            .iter()
            .map(|l| (hook_length_dim(l) as usize).pow(2))
            .collect();
        want.sort();
        assert_eq!(set.block_dims, want);
        assert_eq!(want, vec![1, 1, 4, 9, 9]);
    }

    #[test]
    fn seeds_do_not_change_the_sorted_set() {
        let alg = GroupAlgebra::new(3, 4).unwrap();
        let a = alg.central_idempotents(0);
        for seed in 1..5 {
            assert_eq!(alg.central_idempotents(seed), a);
        }
    }

    #[test]
    fn projections() {
        let alg = GroupAlgebra::new(3, 4).unwrap();
        let set = alg.central_idempotents(0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let total = set.idempotents.iter().fold(alg.zero(), |acc, e| alg.add(&acc, e));
        for _ in 0..100 {
            let v = random_element(&alg, &mut rng);
            assert_eq!(alg.block_project(&v, &total), v);
            let parts = set
                .idempotents
                .iter()
                .fold(alg.zero(), |acc, e| alg.add(&acc, &alg.block_project(&v, e)));
            assert_eq!(parts, v);
        }
        for _ in 0..10 {
            let u = random_element(&alg, &mut rng);
            let v = random_element(&alg, &mut rng);
            for e in &set.idempotents {
                let lhs = alg.block_project(&alg.multiply(&u, &v), e);
                let rhs = alg.multiply(&alg.block_project(&u, e), &alg.block_project(&v, e));
                assert_eq!(lhs, rhs);
            }
        }
        for (i, ei) in set.idempotents.iter().enumerate() {
            for (j, ej) in set.idempotents.iter().enumerate() {
                let want = if i == j { ei.clone() } else { alg.zero() };
                assert_eq!(alg.block_project(ei, ej), want);
            }
        }
    }

    #[test]
    fn modular_dft_matrix_block_diagonalizes() {
        for (p, n) in [(2u64, 3usize), (3, 4), (7, 4)] {
            let alg = GroupAlgebra::new(p, n).unwrap();
            let set = alg.central_idempotents(0);
            let m = alg.modular_dft_matrix(&set).unwrap();
            assert_eq!(m.layout.len(), set.len());
            assert_eq!(m.layout.iter().map(|b| b.len).collect::<Vec<_>>(), set.block_dims);
            let prod = linalg::mul(alg.field(), &m.transform, &m.basis).unwrap();
            assert!(linalg::is_identity(alg.field(), &prod));
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..20 {
                let w = random_element(&alg, &mut rng);
                assert!(m.is_block_diagonal_for(&alg, &w));
            }
        }
    }

    #[test]
    fn sparse_json() {
        let alg = GroupAlgebra::new(2, 3).unwrap();
        let e = alg.one();
        let json = serde_json::to_string(&SparseElement {
            group: alg.group(),
            coeffs: &e,
        })
        .unwrap();
        assert_eq!(json, r#"{"(1,2,3)":1}"#);
    }
}
