//! Permutations, partitions, tableaux and the Specht representations of `S_n`,
//! together with the matrix Fourier transform `f -> (sum_a f(a) rho_lambda(a))_lambda`
//! and its inverse.
//!
//! Conventions: permutations compose right to left, `(st)(i) = s(t(i))`, and the
//! group algebra product is `(f * g)(s) = sum_t f(t) g(t^-1 s)`, so that
//! `dft(f * g) = dft(f) dft(g)` blockwise.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fields::{Field, Rationals};
use crate::linalg::{self, Matrix};
use crate::numtheory;

/// Largest `n` for which the group is enumerated.
pub const MAX_ENUMERATE: usize = 8;
/// Largest `n` for group tables and transforms.
pub const MAX_TRANSFORM: usize = 6;

// ---------------------------------------------------------------------------
// Permutations

/// A bijection of `{1..n}`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From the 1-based one-line form `[s(1), ..., s(n)]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(images.to_vec()));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation(images.iter().map(|x| x - 1).collect()))
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self . other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(a, b);
        Permutation(v)
    }

    /// Cycle lengths in decreasing order, as a partition of `n`.
    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition(lens)
    }

    pub fn sign(&self) -> i64 {
        let ct = self.cycle_type();
        let even_cycles = ct.parts().iter().filter(|&&l| l % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order of one-line forms; index 0 is the identity.
pub fn enumerate_group(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::EmptyGroup);
    }
    if n > MAX_ENUMERATE {
        return Err(Error::TooLarge { n, max: MAX_ENUMERATE });
    }
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation(cur.clone())];
    while next_permutation(&mut cur) {
        out.push(Permutation(cur.clone()));
    }
    Ok(out)
}

/// `S_n` with its elements indexed in lexicographic order and a full
/// multiplication table.
#[derive(Clone, Debug)]
pub struct SymmetricGroup {
    n: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: Vec<u32>,
    inverses: Vec<usize>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_TRANSFORM {
            return Err(Error::TooLarge { n, max: MAX_TRANSFORM });
        }
        let elements = enumerate_group(n)?;
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let order = elements.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                table.push(index[&a.compose(b)] as u32);
            }
        }
        let inverses = elements.iter().map(|s| index[&s.inverse()]).collect();
        Ok(Self {
            n,
            elements,
            index,
            table,
            inverses,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, s: &Permutation) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Index of `elements[a] . elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// `(f * g)(s) = sum_t f(t) g(t^-1 s)`, i.e. `delta_a * delta_b = delta_(ab)`.
pub fn convolve<F: Field>(field: &F, group: &SymmetricGroup, f: &[F::Elem], g: &[F::Elem]) -> Vec<F::Elem> {
    let order = group.order();
    assert!(f.len() == order && g.len() == order, "coefficient vectors must have length n!");
    let mut out = vec![field.zero(); order];
    for (a, fa) in f.iter().enumerate() {
        if field.is_zero(fa) {
            continue;
        }
        for (b, gb) in g.iter().enumerate() {
            if field.is_zero(gb) {
                continue;
            }
            let ab = group.mul(a, b);
            out[ab] = field.add(&out[ab], &field.mul(fa, gb));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Partitions

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&x| x == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&r| r > j).count()).collect())
    }

    /// Hook length of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &row)| (0..row).map(|j| (row - j - 1) + (conj.0[j] - i - 1) + 1).collect())
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Partitions of `n` in reverse lexicographic order: `(n)` first, `(1^n)` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `n! / prod(hook lengths)`.
pub fn hook_length_dim(lambda: &Partition) -> u64 {
    let n = lambda.size();
    let hooks: u128 = lambda.hook_lengths().iter().flatten().map(|&h| h as u128).product();
    let mut fact: u128 = 1;
    for k in 2..=n as u128 {
        fact *= k;
    }
    (fact / hooks) as u64
}

/// The `p`-core of `lambda` and its `p`-weight, by sliding beads on the
/// `p`-abacus of the beta-numbers `lambda_i + (r - i)`.
pub fn p_core(lambda: &Partition, p: usize) -> (Partition, usize) {
    assert!(p >= 2, "p must be at least 2");
    let r = lambda.len();
    let mut beta: Vec<usize> = lambda.0.iter().enumerate().map(|(i, &l)| l + (r - 1 - i)).collect();
    let mut weight = 0;
    loop {
        let present: std::collections::HashSet<usize> = beta.iter().copied().collect();
        let movable = beta
            .iter()
            .position(|&b| b >= p && !present.contains(&(b - p)));
        match movable {
            Some(i) => {
                beta[i] -= p;
                weight += 1;
            }
            None => break,
        }
    }
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let parts = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (r - 1 - i))
        .filter(|&x| x > 0)
        .collect();
    (Partition(parts), weight)
}

// ---------------------------------------------------------------------------
// Tableaux

/// A filling of a Young diagram with `1..n`, rows and columns increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StandardTableau {
    pub shape: Partition,
    pub rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }
}

/// Standard tableaux of shape `lambda`, sorted by row-reading word.
pub fn standard_tableaux(lambda: &Partition) -> Vec<StandardTableau> {
    fn go(shape: &[usize], k: usize, n: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k > n {
            out.push(rows.clone());
            return;
        }
        for i in 0..shape.len() {
            let len = rows[i].len();
            let fits = len < shape[i] && (i == 0 || rows[i - 1].len() > len);
            if fits {
                rows[i].push(k);
                go(shape, k + 1, n, rows, out);
                rows[i].pop();
            }
        }
    }
    let mut raw = Vec::new();
    go(&lambda.0, 1, lambda.size(), &mut vec![Vec::new(); lambda.len()], &mut raw);
    let mut out: Vec<StandardTableau> = raw
        .into_iter()
        .map(|rows| StandardTableau {
            shape: lambda.clone(),
            rows,
        })
        .collect();
    out.sort_by_key(StandardTableau::reading_word);
    out
}

// ---------------------------------------------------------------------------
// Specht modules

/// A tabloid as the row index of each entry `1..n` (0-based entries).
type Tabloid = Vec<u8>;

/// The Specht module `V^lambda` with basis the standard polytabloids.
///
/// Coordinates of a polytabloid are found by restricting to a set of tabloid
/// rows on which the standard basis is invertible.
#[derive(Clone, Debug)]
pub struct SpechtModule {
    shape: Partition,
    tableaux: Vec<StandardTableau>,
    tabloid_index: HashMap<Tabloid, usize>,
    pivot_rows: Vec<usize>,
    pivot_inverse: Matrix<BigRational>,
}

impl SpechtModule {
    pub fn new(shape: &Partition) -> Result<Self> {
        let n = shape.size();
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        let tableaux = standard_tableaux(shape);
        let tabloid_index = all_tabloids(shape)
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect::<HashMap<_, _>>();
        let q = Rationals;
        let basis: Vec<Vec<i64>> = tableaux
            .iter()
            .map(|t| polytabloid(&t.rows, n, &tabloid_index))
            .collect();
        // rows of the tabloid x basis matrix where it has full rank
        let bt = Matrix::from_fn(basis.len(), tabloid_index.len(), |i, j| {
            BigRational::from_integer(basis[i][j].into())
        });
        let pivot_rows = linalg::rref(&q, &bt).pivots;
        let d = tableaux.len();
        debug_assert_eq!(pivot_rows.len(), d);
        let sub = Matrix::from_fn(d, d, |i, j| bt.get(j, pivot_rows[i]).clone());
        let pivot_inverse = linalg::inverse(&q, &sub)?;
        Ok(Self {
            shape: shape.clone(),
            tableaux,
            tabloid_index,
            pivot_rows,
            pivot_inverse,
        })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn basis(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    /// Matrix of `s` acting by relabelling entries: column `j` holds the
    /// coordinates of `s . E_(T_j) = E_(s T_j)`.
    pub fn matrix(&self, s: &Permutation) -> Result<Matrix<i64>> {
        let n = self.shape.size();
        if s.degree() != n {
            return Err(Error::DimensionMismatch(format!(
                "permutation of degree {} acting on a shape of size {n}",
                s.degree()
            )));
        }
        let d = self.dim();
        let mut out = Matrix::filled(d, d, 0i64);
        for (j, t) in self.tableaux.iter().enumerate() {
            let moved: Vec<Vec<usize>> = t
                .rows
                .iter()
                .map(|row| row.iter().map(|&x| s.apply(x - 1) + 1).collect())
                .collect();
            let v = polytabloid(&moved, n, &self.tabloid_index);
            for i in 0..d {
                let mut acc = BigRational::zero();
                for (k, &r) in self.pivot_rows.iter().enumerate() {
                    if v[r] != 0 {
                        acc += self.pivot_inverse.get(i, k) * BigRational::from_integer(v[r].into());
                    }
                }
                assert!(acc.is_integer(), "Specht matrices are integral");
                out.set(i, j, acc.to_integer().to_i64().expect("entry fits in i64"));
            }
        }
        Ok(out)
    }
}

fn all_tabloids(shape: &Partition) -> Vec<Tabloid> {
    fn go(shape: &[usize], counts: &mut Vec<usize>, cur: &mut Tabloid, n: usize, out: &mut Vec<Tabloid>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..shape.len() {
            if counts[r] < shape[r] {
                counts[r] += 1;
                cur.push(r as u8);
                go(shape, counts, cur, n, out);
                cur.pop();
                counts[r] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&shape.0, &mut vec![0; shape.len()], &mut Vec::new(), shape.size(), &mut out);
    out
}

/// `E_T = sum_(c in C_T) sign(c) {c T}` in tabloid coordinates.
fn polytabloid(rows: &[Vec<usize>], n: usize, index: &HashMap<Tabloid, usize>) -> Vec<i64> {
    let width = rows[0].len();
    let columns: Vec<Vec<(usize, usize)>> = (0..width)
        .map(|j| (0..rows.len()).filter(|&i| rows[i].len() > j).map(|i| (i, rows[i][j])).collect())
        .collect();
    let mut out = vec![0i64; index.len()];
    let mut tabloid = vec![0u8; n];
    // iterate over the product of column permutations
    fn go(
        columns: &[Vec<(usize, usize)>],
        c: usize,
        sign: i64,
        tabloid: &mut Tabloid,
        index: &HashMap<Tabloid, usize>,
        out: &mut [i64],
    ) {
        if c == columns.len() {
            out[index[tabloid]] += sign;
            return;
        }
        let col = &columns[c];
        let mut perm: Vec<usize> = (0..col.len()).collect();
        loop {
            for (k, &(row, _)) in col.iter().enumerate() {
                tabloid[col[perm[k]].1 - 1] = row as u8;
            }
            let s = Permutation(perm.clone()).sign();
            go(columns, c + 1, sign * s, tabloid, index, out);
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    go(&columns, 0, 1, &mut tabloid, index, &mut out);
    out
}

/// Matrix of `s` on `V^lambda` over the rationals.
pub fn specht_matrix(lambda: &Partition, s: &Permutation) -> Result<Matrix<BigRational>> {
    let m = SpechtModule::new(lambda)?.matrix(s)?;
    Ok(m.map(|&x| BigRational::from_integer(x.into())))
}

/// All Specht representations of `S_n`, evaluated on every group element.
#[derive(Clone, Debug)]
pub struct SpechtTable {
    pub group: SymmetricGroup,
    /// `(lambda, rho_lambda(g) for g in group order)`, partitions in reverse
    /// lexicographic order.
    pub reps: Vec<(Partition, Vec<Matrix<i64>>)>,
}

impl SpechtTable {
    pub fn new(n: usize) -> Result<Self> {
        let group = SymmetricGroup::new(n)?;
        let mut reps = Vec::new();
        for lambda in partitions(n) {
            let module = SpechtModule::new(&lambda)?;
            let mats = group
                .elements()
                .iter()
                .map(|s| module.matrix(s))
                .collect::<Result<Vec<_>>>()?;
            reps.push((lambda, mats));
        }
        Ok(Self { group, reps })
    }

    pub fn n(&self) -> usize {
        self.group.degree()
    }
}

/// One Fourier coefficient `f_hat(lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierBlock<E> {
    pub lambda: Partition,
    pub matrix: Matrix<E>,
}

/// `f_hat(lambda) = sum_a f(a) rho_lambda(a)` for every partition of `n`.
pub fn sn_dft<F: Field>(field: &F, table: &SpechtTable, f: &[F::Elem]) -> Result<Vec<FourierBlock<F::Elem>>> {
    let order = table.group.order();
    if f.len() != order {
        return Err(Error::DimensionMismatch(format!(
            "group algebra element has {} coefficients, expected {order}",
            f.len()
        )));
    }
    Ok(table
        .reps
        .iter()
        .map(|(lambda, mats)| {
            let d = mats[0].rows();
            let mut acc = linalg::zeros(field, d, d);
            for (fa, m) in f.iter().zip(mats) {
                if field.is_zero(fa) {
                    continue;
                }
                for i in 0..d {
                    for j in 0..d {
                        let e = *m.get(i, j);
                        if e != 0 {
                            let v = field.add(acc.get(i, j), &field.mul(fa, &field.from_i64(e)));
                            acc.set(i, j, v);
                        }
                    }
                }
            }
            FourierBlock {
                lambda: lambda.clone(),
                matrix: acc,
            }
        })
        .collect())
}

/// `f(a) = (1/n!) sum_lambda d_lambda Tr(rho_lambda(a^-1) f_hat(lambda))`.
pub fn sn_idft<F: Field>(field: &F, table: &SpechtTable, coeffs: &[FourierBlock<F::Elem>]) -> Result<Vec<F::Elem>> {
    let n = table.n();
    let order = table.group.order();
    let inv_order = field.inv(&field.from_i64(order as i64)).ok_or(
        Error::CharacteristicDividesGroupOrder {
            p: field.characteristic(),
            n,
            order: numtheory::factorial(n),
        },
    )?;
    if coeffs.len() != table.reps.len() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} Fourier blocks, got {}",
            table.reps.len(),
            coeffs.len()
        )));
    }
    for (block, (lambda, mats)) in coeffs.iter().zip(&table.reps) {
        let d = mats[0].rows();
        if block.lambda != *lambda || block.matrix.rows() != d || block.matrix.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "block for {} must be {d}x{d} and in canonical order",
                lambda
            )));
        }
    }
    let mut out = Vec::with_capacity(order);
    for a in 0..order {
        let a_inv = table.group.inverse(a);
        let mut total = field.zero();
        for (block, (_, mats)) in coeffs.iter().zip(&table.reps) {
            let rho = &mats[a_inv];
            let d = rho.rows();
            // Tr(rho f_hat) = sum_(i,k) rho_ik f_hat_ki
            let mut tr = field.zero();
            for i in 0..d {
                for k in 0..d {
                    let e = *rho.get(i, k);
                    if e != 0 {
                        tr = field.add(&tr, &field.mul(&field.from_i64(e), block.matrix.get(k, i)));
                    }
                }
            }
            total = field.add(&total, &field.mul(&field.from_i64(d as i64), &tr));
        }
        out.push(field.mul(&total, &inv_order));
    }
    Ok(out)
}
