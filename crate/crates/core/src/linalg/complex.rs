// Floating-point helpers for the unitary transforms: complex matrix products,
// eigenvalues by Hessenberg reduction plus shifted QR, and symmetric Jacobi.

use num_complex::Complex64;

use super::Matrix;
use crate::error::{Error, Result};

pub type CMatrix = Matrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity(n: usize) -> CMatrix {
    Matrix::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
}

pub fn from_real(m: &Matrix<f64>) -> CMatrix {
    m.map(|&x| Complex64::new(x, 0.0))
}

pub fn mul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut out = Matrix::filled(a.rows(), b.cols(), ZERO);
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let aik = *a.get(i, k);
            if aik == ZERO {
                continue;
            }
            for j in 0..b.cols() {
                let v = *out.get(i, j) + aik * b.get(k, j);
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

pub fn adjoint(a: &CMatrix) -> CMatrix {
    Matrix::from_fn(a.cols(), a.rows(), |i, j| a.get(j, i).conj())
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest entry modulus of `U U* - I`.
pub fn unitarity_defect(u: &CMatrix) -> Result<f64> {
    let prod = mul(u, &adjoint(u))?;
    Ok(max_abs_diff(&prod, &identity(u.rows())))
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg(a: &mut Vec<Vec<Complex64>>) {
    let n = a.len();
    for k in 0..n.saturating_sub(2) {
        let alpha: f64 = (k + 1..n).map(|i| a[i][k].norm_sqr()).sum::<f64>().sqrt();
        if alpha < 1e-300 {
            continue;
        }
        let x0 = a[k + 1][k];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[i][k]).collect();
        v[0] += phase * alpha;
        let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm < 1e-300 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H = I - 2 v v*, applied on both sides
        for j in 0..n {
            let s: Complex64 = (0..v.len()).map(|t| v[t].conj() * a[k + 1 + t][j]).sum();
            for t in 0..v.len() {
                a[k + 1 + t][j] -= v[t] * s * 2.0;
            }
        }
        for row in a.iter_mut() {
            let s: Complex64 = (0..v.len()).map(|t| row[k + 1 + t] * v[t]).sum();
            for t in 0..v.len() {
                row[k + 1 + t] -= s * v[t].conj() * 2.0;
            }
        }
    }
}

fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if r == 0.0 {
        return (1.0, ZERO);
    }
    if a.norm() == 0.0 {
        return (0.0, b.conj() / r);
    }
    let c = a.norm() / r;
    let s = (a / a.norm()) * b.conj() / r;
    (c, s)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    // eigenvalue of [[a, b], [c, d]] closest to d
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr * 0.25 - det).sqrt();
    let l1 = tr * 0.5 + disc;
    let l2 = tr * 0.5 - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of a square complex matrix.
pub fn eigenvalues(m: &CMatrix, tol: f64, max_iter: usize) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut a = m.to_rows();
    hessenberg(&mut a);
    let mut out = Vec::with_capacity(a.len());
    let mut hi = a.len();
    let mut iters = 0;
    let mut since_deflation = 0;
    while hi > 0 {
        if hi == 1 {
            out.push(a[0][0]);
            break;
        }
        // look for a negligible subdiagonal entry
        let mut lo = hi - 1;
        while lo > 0 {
            let scale = a[lo][lo].norm() + a[lo - 1][lo - 1].norm();
            if a[lo][lo - 1].norm() <= tol * scale.max(tol) {
                a[lo][lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            out.push(a[hi - 1][hi - 1]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iters += 1;
        since_deflation += 1;
        if iters > max_iter {
            return Err(Error::NoConvergence(max_iter));
        }
        let mut mu = wilkinson_shift(
            a[hi - 2][hi - 2],
            a[hi - 2][hi - 1],
            a[hi - 1][hi - 2],
            a[hi - 1][hi - 1],
        );
        if since_deflation % 11 == 10 {
            // exceptional shift to break cycles
            mu += Complex64::new(a[hi - 1][hi - 2].norm(), 0.0);
        }
        for i in lo..hi {
            a[i][i] -= mu;
        }
        let n = a.len();
        let mut rots = Vec::with_capacity(hi - lo - 1);
        for k in lo..hi - 1 {
            let (c, s) = givens(a[k][k], a[k + 1][k]);
            for j in k..n {
                let x = a[k][j];
                let y = a[k + 1][j];
                a[k][j] = x * c + s * y;
                a[k + 1][j] = -s.conj() * x + y * c;
            }
            rots.push((k, c, s));
        }
        for (k, c, s) in rots {
            for row in a.iter_mut().take((k + 2).min(hi)) {
                let x = row[k];
                let y = row[k + 1];
                row[k] = x * c + s.conj() * y;
                row[k + 1] = -s * x + y * c;
            }
        }
        for i in lo..hi {
            a[i][i] += mu;
        }
    }
    Ok(out)
}

/// Sorts complex numbers by argument in (-pi, pi], ties by modulus.
pub fn sort_by_argument(values: &mut [Complex64]) {
    values.sort_by(|x, y| {
        x.arg()
            .partial_cmp(&y.arg())
            .unwrap()
            .then(x.norm().partial_cmp(&y.norm()).unwrap())
    });
}

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix.
/// Returns eigenvalues and a matrix whose columns are orthonormal eigenvectors.
pub fn jacobi_symmetric(m: &Matrix<f64>, tol: f64, max_sweeps: usize) -> Result<(Vec<f64>, Matrix<f64>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let off = |a: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&a) > tol {
        sweeps += 1;
        if sweeps > max_sweeps {
            return Err(Error::NoConvergence(max_sweeps));
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i][i]).collect();
    let vectors = Matrix::from_rows(v)?;
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_eigenvalues() {
        let ev = eigenvalues(&identity(4), 1e-14, 1000).unwrap();
        assert_eq!(ev.len(), 4);
        assert!(ev.iter().all(|z| (z - ONE).norm() < 1e-12));
    }

    #[test]
    fn rotation_has_eigenvalues_plus_minus_i() {
        let r = Matrix::from_rows(vec![vec![c(0.0, 0.0), c(-1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let mut ev = eigenvalues(&r, 1e-14, 1000).unwrap();
        sort_by_argument(&mut ev);
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn triangular_eigenvalues_are_the_diagonal() {
        let m = Matrix::from_fn(5, 5, |i, j| {
            if i <= j {
                c((i + 1) as f64, (j as f64) * 0.5)
            } else {
                ZERO
            }
        });
        let ev = eigenvalues(&m, 1e-14, 1000).unwrap();
        for i in 0..5 {
            let target = c((i + 1) as f64, i as f64 * 0.5);
            assert!(ev.iter().any(|z| (z - target).norm() < 1e-9));
        }
    }

    #[test]
    fn eigenvalue_sum_and_product_match_trace_and_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..8 {
            let m = Matrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let ev = eigenvalues(&m, 1e-14, 10_000).unwrap();
            let tr: Complex64 = (0..n).map(|i| *m.get(i, i)).sum();
            let sum: Complex64 = ev.iter().sum();
            assert!((tr - sum).norm() < 1e-9);
            // each eigenvalue makes M - lambda I nearly singular: check via char poly residual
            for lambda in &ev {
                let mut rows = m.to_rows();
                for i in 0..n {
                    rows[i][i] -= lambda;
                }
                assert!(det(rows).norm() < 1e-8);
            }
        }
    }

    fn det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
        let n = a.len();
        let mut d = ONE;
        for k in 0..n {
            let piv = (k..n).max_by(|&i, &j| a[i][k].norm().partial_cmp(&a[j][k].norm()).unwrap()).unwrap();
            if a[piv][k].norm() == 0.0 {
                return ZERO;
            }
            if piv != k {
                a.swap(piv, k);
                d = -d;
            }
            d *= a[k][k];
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    let t = a[k][j];
                    a[i][j] -= f * t;
                }
            }
        }
        d
    }

    #[test]
    fn jacobi_diagonalizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 6;
        let b = Matrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        let s = Matrix::from_fn(n, n, |i, j| b.get(i, j) + b.get(j, i));
        let (vals, vecs) = jacobi_symmetric(&s, 1e-13, 100).unwrap();
        for k in 0..n {
            for i in 0..n {
                let sv: f64 = (0..n).map(|j| s.get(i, j) * vecs.get(j, k)).sum();
                assert!((sv - vals[k] * vecs.get(i, k)).abs() < 1e-10);
            }
            for l in 0..n {
                let dot: f64 = (0..n).map(|i| vecs.get(i, k) * vecs.get(i, l)).sum();
                let want = if k == l { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unitarity_defect_of_dft_matrix() {
        let n = 5;
        let w = std::f64::consts::TAU / n as f64;
        let u = Matrix::from_fn(n, n, |i, j| Complex64::from_polar(1.0 / (n as f64).sqrt(), -w * (i * j) as f64));
        assert!(unitarity_defect(&u).unwrap() < 1e-14);
    }
}
