//! Dense matrices over exact fields, plus a small complex floating-point
//! toolkit in [`complex`].

pub mod complex;
mod order;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::poly::{Poly, PolyRing};

pub use order::{matrix_order_ff, matrix_order_naive, order_bound, MatrixOrder, OrderBound};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows: {} vs {cols}",
                bad.len()
            )));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

pub fn identity<F: Field>(field: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() })
}

pub fn zeros<F: Field>(field: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, field.zero())
}

pub fn mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if field.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let idx = i * b.cols + j;
                out.data[idx] = field.add(&out.data[idx], &field.mul(aik, b.get(k, j)));
            }
        }
    }
    Ok(out)
}

pub fn add<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::DimensionMismatch("matrix sum".into()));
    }
    Ok(Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| field.add(x, y)).collect(),
    })
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.map(|x| field.mul(c, x))
}

pub fn mat_vec<F: Field>(field: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v)
                .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
        })
        .collect()
}

pub fn pow<F: Field>(field: &F, a: &Matrix<F::Elem>, mut e: u128) -> Result<Matrix<F::Elem>> {
    let n = a.require_square()?;
    let mut acc = identity(field, n);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(field, &acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = mul(field, &base, &base)?;
        }
    }
    Ok(acc)
}

pub fn trace<F: Field>(field: &F, a: &Matrix<F::Elem>) -> F::Elem {
    (0..a.rows.min(a.cols)).fold(field.zero(), |acc, i| field.add(&acc, a.get(i, i)))
}

pub fn is_identity<F: Field>(field: &F, a: &Matrix<F::Elem>) -> bool {
    a.is_square()
        && (0..a.rows).all(|i| {
            (0..a.cols).all(|j| {
                let x = a.get(i, j);
                if i == j {
                    field.is_one(x)
                } else {
                    field.is_zero(x)
                }
            })
        })
}

/// Reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<E> {
    pub matrix: Matrix<E>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Leftmost-pivot, topmost-row Gauss-Jordan elimination with unit pivots.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Rref<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(src) = (r..a.rows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        if src != r {
            for j in 0..a.cols {
                a.data.swap(src * a.cols + j, r * a.cols + j);
            }
        }
        let inv = field.inv(a.get(r, c)).unwrap();
        for j in c..a.cols {
            let idx = r * a.cols + j;
            a.data[idx] = field.mul(&inv, &a.data[idx]);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            for j in c..a.cols {
                let t = field.mul(&factor, a.get(r, j));
                let idx = i * a.cols + j;
                a.data[idx] = field.sub(&a.data[idx], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        matrix: a,
        rank: r,
        pivots,
    }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).rank
}

/// Exact inverse via elimination on `[M | I]`.
pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    let n = m.require_square()?;
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            field.one()
        } else {
            field.zero()
        }
    });
    let red = rref(field, &aug);
    let rank = red.pivots.iter().take_while(|&&c| c < n).count();
    if rank < n {
        return Err(Error::Singular { rank, size: n });
    }
    Ok(Matrix::from_fn(n, n, |i, j| red.matrix.get(i, n + j).clone()))
}

/// Basis of the right null space `{v : M v = 0}`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let red = rref(field, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !red.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); m.cols];
            v[fc] = field.one();
            for (row, &pc) in red.pivots.iter().enumerate() {
                v[pc] = field.neg(red.matrix.get(row, fc));
            }
            v
        })
        .collect()
}

/// `det(xI - M)`, monic, by Berkowitz's division-free recurrence.
pub fn char_poly<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<Poly<F::Elem>> {
    let n = m.require_square()?;
    // descending coefficients of the char poly of the leading r x r block
    let mut v = vec![field.one()];
    for r in 0..n {
        // T = [1, -a_rr, -R C, -R A C, ..., -R A^(r-1) C]
        let mut t = Vec::with_capacity(r + 2);
        t.push(field.one());
        t.push(field.neg(m.get(r, r)));
        let mut col: Vec<F::Elem> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for _ in 0..r {
            let dot = (0..r).fold(field.zero(), |acc, j| {
                field.add(&acc, &field.mul(m.get(r, j), &col[j]))
            });
            t.push(field.neg(&dot));
            col = (0..r)
                .map(|i| {
                    (0..r).fold(field.zero(), |acc, j| {
                        field.add(&acc, &field.mul(m.get(i, j), &col[j]))
                    })
                })
                .collect();
        }
        v = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(field.zero(), |acc, j| {
                    field.add(&acc, &field.mul(&t[i - j], &v[j]))
                })
            })
            .collect();
    }
    v.reverse();
    Ok(PolyRing::new(field).from_coeffs(v))
}

/// `p(M)` by Horner's rule.
pub fn eval_poly_at_matrix<F: Field>(
    field: &F,
    p: &Poly<F::Elem>,
    m: &Matrix<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    let n = m.require_square()?;
    let mut acc = zeros(field, n, n);
    for c in p.coeffs().iter().rev() {
        acc = mul(field, &acc, m)?;
        for i in 0..n {
            let idx = i * n + i;
            acc.data[idx] = field.add(&acc.data[idx], c);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(rows: Vec<Vec<u64>>) -> Matrix<u64> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f2 = fp(2);
        let id = identity(&f2, 3);
        let r = rref(&f2, &id);
        assert_eq!((r.matrix, r.rank), (id, 3));
        let z = zeros(&f2, 2, 3);
        assert_eq!(rref(&f2, &z).rank, 0);
        let r = rref(&f2, &m(vec![vec![1, 1], vec![1, 1]]));
        assert_eq!(r.matrix, m(vec![vec![1, 1], vec![0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn inverse_examples() {
        let f3 = fp(3);
        assert_eq!(inverse(&f3, &identity(&f3, 2)).unwrap(), identity(&f3, 2));
        assert_eq!(
            inverse(&f3, &m(vec![vec![1, 1], vec![0, 1]])).unwrap(),
            m(vec![vec![1, 2], vec![0, 1]])
        );
        assert_eq!(
            inverse(&f3, &m(vec![vec![1, 1], vec![1, 1]])),
            Err(Error::Singular { rank: 1, size: 2 })
        );
        assert!(matches!(
            inverse(&f3, &m(vec![vec![1, 1]])),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn char_poly_examples() {
        let f2 = fp(2);
        assert_eq!(
            char_poly(&f2, &identity(&f2, 2)).unwrap(),
            Poly::from_vec(vec![1, 0, 1])
        );
        // companion matrix of x^2 + x + 1
        let c = m(vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(char_poly(&f2, &c).unwrap(), Poly::from_vec(vec![1, 1, 1]));
        let q = Rationals;
        let swap = Matrix::from_rows(vec![
            vec![q.zero(), q.one()],
            vec![q.one(), q.zero()],
        ])
        .unwrap();
        let cp = char_poly(&q, &swap).unwrap();
        assert_eq!(cp.coeffs(), &[-q.one(), q.zero(), q.one()]);
    }

    #[test]
    fn kernel_is_annihilated() {
        let f5 = fp(5);
        let a = m(vec![vec![1, 2, 3, 4], vec![2, 4, 1, 0]]);
        let ker = kernel(&f5, &a);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(mat_vec(&f5, &a, &v).iter().all(|x| *x == 0));
        }
    }

    fn square(p: u64, n: usize) -> impl Strategy<Value = Matrix<u64>> {
        prop::collection::vec(0..p, n * n).prop_map(move |d| Matrix::from_vec(n, n, d).unwrap())
    }

    proptest! {
        #[test]
        fn rref_idempotent(a in square(7, 4)) {
            let f7 = fp(7);
            let once = rref(&f7, &a);
            prop_assert_eq!(rref(&f7, &once.matrix), once);
        }

        #[test]
        fn cayley_hamilton_fp(a in square(5, 5)) {
            let f5 = fp(5);
            let cp = char_poly(&f5, &a).unwrap();
            prop_assert_eq!(cp.degree(), Some(5));
            let z = eval_poly_at_matrix(&f5, &cp, &a).unwrap();
            prop_assert!(z.data().iter().all(|x| *x == 0));
        }

        #[test]
        fn cayley_hamilton_q(entries in prop::collection::vec((-9i64..9, 1i64..5), 9)) {
            let q = Rationals;
            let data = entries.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
            let a = Matrix::from_vec(3, 3, data).unwrap();
            let cp = char_poly(&q, &a).unwrap();
            let z = eval_poly_at_matrix(&q, &cp, &a).unwrap();
            prop_assert!(z.data().iter().all(|x| q.is_zero(x)));
        }

        #[test]
        fn inverse_roundtrip(a in square(11, 4)) {
            let f11 = fp(11);
            match inverse(&f11, &a) {
                Ok(inv) => prop_assert!(is_identity(&f11, &mul(&f11, &a, &inv).unwrap())),
                Err(Error::Singular { rank, .. }) => prop_assert!(rank < 4 && rank == rref(&f11, &a).rank),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}
