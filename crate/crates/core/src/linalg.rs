//! Dense linear algebra kept in-repo: Gaussian elimination with partial
//! pivoting, a cyclic Jacobi eigensolver for Hermitian matrices, Cholesky
//! for positivity checks, and an exact elimination over Gaussian rationals
//! for the root-of-unity structure constants with denominator dividing 4.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

/// Dense complex matrix, row major.
#[derive(Clone, Debug)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Rank by row reduction with partial pivoting. `tol` is relative to the
/// largest entry of the input.
pub fn rank(mut m: CMat, tol: f64) -> usize {
    let scale = m.max_abs().max(1.0);
    let eps = tol * scale;
    let mut rank = 0;
    for col in 0..m.cols {
        let pivot = (rank..m.rows).max_by(|&a, &b| {
            m.get(a, col)
                .norm()
                .partial_cmp(&m.get(b, col).norm())
                .unwrap()
        });
        let Some(p) = pivot else { break };
        if m.get(p, col).norm() <= eps {
            continue;
        }
        for j in 0..m.cols {
            let tmp = m.get(rank, j);
            m.set(rank, j, m.get(p, j));
            m.set(p, j, tmp);
        }
        let inv = m.get(rank, col).inv();
        for i in rank + 1..m.rows {
            let f = m.get(i, col) * inv;
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..m.cols {
                let v = m.get(i, j) - f * m.get(rank, j);
                m.set(i, j, v);
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

/// Orthonormal-ish basis of the nullspace of `m`, via RREF and free columns.
pub fn nullspace(mut m: CMat, tol: f64) -> Vec<Vec<Complex64>> {
    let scale = m.max_abs().max(1.0);
    let eps = tol * scale;
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..m.cols {
        let pivot = (r..m.rows)
            .max_by(|&a, &b| {
                m.get(a, col)
                    .norm()
                    .partial_cmp(&m.get(b, col).norm())
                    .unwrap()
            })
            .filter(|&p| m.get(p, col).norm() > eps);
        let Some(p) = pivot else { continue };
        for j in 0..m.cols {
            let tmp = m.get(r, j);
            m.set(r, j, m.get(p, j));
            m.set(p, j, tmp);
        }
        let inv = m.get(r, col).inv();
        for j in 0..m.cols {
            let v = m.get(r, j) * inv;
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let f = m.get(i, col);
            if f.norm() == 0.0 {
                continue;
            }
            for j in 0..m.cols {
                let v = m.get(i, j) - f * m.get(r, j);
                m.set(i, j, v);
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == m.rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); m.cols];
        v[free] = Complex64::new(1.0, 0.0);
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m.get(row, free);
        }
        basis.push(v);
    }
    basis
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps.
pub fn hermitian_eigenvalues(m: &CMat, max_sweeps: usize) -> Vec<f64> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    for _ in 0..max_sweeps {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).norm_sqr())
            .sum();
        if off.sqrt() < 1e-13 * a.max_abs().max(1.0) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = a.get(p, q);
                if g.norm() < 1e-300 {
                    continue;
                }
                // phase out the off-diagonal entry, then a real rotation
                let phi = g / g.norm();
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * g.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // columns: col_p' = c*col_p - s*conj(phi)*col_q ; col_q' = s*phi*col_p + c*col_q
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0) * phi;
                let u_qp = -Complex64::new(s, 0.0) * phi.conj();
                let u_qq = Complex64::new(c, 0.0);
                // A <- U^H A U with U the identity outside rows/cols {p,q}
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * u_pp + aiq * u_qp);
                    a.set(i, q, aip * u_pq + aiq * u_qq);
                }
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, u_pp.conj() * apj + u_qp.conj() * aqj);
                    a.set(q, j, u_pq.conj() * apj + u_qq.conj() * aqj);
                }
            }
        }
    }
    (0..n).map(|i| a.get(i, i).re).collect()
}

/// Cholesky factorization `m = L·L^H`; `None` unless Hermitian positive
/// definite.
pub fn cholesky_factor(m: &CMat) -> Option<CMat> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut l = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = m.get(i, j);
            for k in 0..j {
                sum -= l.get(i, k) * l.get(j, k).conj();
            }
            if i == j {
                if sum.re <= 0.0 || sum.im.abs() > 1e-9 * sum.re.abs().max(1.0) {
                    return None;
                }
                l.set(i, j, Complex64::new(sum.re.sqrt(), 0.0));
            } else {
                l.set(i, j, sum / l.get(j, j));
            }
        }
    }
    Some(l)
}

/// Smallest Cholesky pivot; positive definiteness check.
pub fn cholesky_min_pivot(m: &CMat) -> Option<f64> {
    let l = cholesky_factor(m)?;
    Some(
        (0..m.rows)
            .map(|i| l.get(i, i).re * l.get(i, i).re)
            .fold(f64::INFINITY, f64::min),
    )
}

/// Inverse of the upper-triangular `L^H` by back substitution, for moving
/// operators into orthonormal coordinates.
pub fn inv_upper_from_cholesky(l: &CMat) -> CMat {
    let n = l.rows;
    // u = L^H is upper triangular with u[i][j] = conj(l[j][i])
    let mut inv = CMat::zeros(n, n);
    for col in 0..n {
        for i in (0..n).rev() {
            let mut s = if i == col {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            for j in i + 1..n {
                s -= l.get(j, i).conj() * inv.get(j, col);
            }
            inv.set(i, col, s / l.get(i, i).conj());
        }
    }
    inv
}

/// Gaussian rational `re + i·im`, the exact scalar domain for structure
/// constants whose phases have denominator dividing 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn zero() -> Self {
        GaussRat {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add_assign(&mut self, other: &GaussRat) {
        self.re += &other.re;
        self.im += &other.im;
    }

    pub fn sub_assign(&mut self, other: &GaussRat) {
        self.re -= &other.re;
        self.im -= &other.im;
    }

    pub fn sub_mul(&mut self, f: &GaussRat, x: &GaussRat) {
        // self -= f * x
        let re = &f.re * &x.re - &f.im * &x.im;
        let im = &f.re * &x.im + &f.im * &x.re;
        self.re -= re;
        self.im -= im;
    }

    pub fn inv(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        assert!(!n.is_zero());
        GaussRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    pub fn mul(&self, other: &GaussRat) -> Self {
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat {
            re: BigRational::from(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }
}

/// Exact rank of a matrix over the Gaussian rationals.
pub fn rank_exact(rows: usize, cols: usize, mut data: Vec<GaussRat>) -> usize {
    assert_eq!(data.len(), rows * cols);
    let mut rank = 0;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&i| !data[i * cols + col].is_zero());
        let Some(p) = pivot else { continue };
        if p != rank {
            for j in 0..cols {
                data.swap(rank * cols + j, p * cols + j);
            }
        }
        let inv = data[rank * cols + col].inv();
        for i in rank + 1..rows {
            if data[i * cols + col].is_zero() {
                continue;
            }
            let f = data[i * cols + col].mul(&inv);
            for j in col..cols {
                let x = data[rank * cols + j].clone();
                data[i * cols + j].sub_mul(&f, &x);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
