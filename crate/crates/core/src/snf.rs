//! Integer linear algebra: Smith-type diagonalization and solving
//! `A·y ≡ c (mod D)`, the exponent-level form of coboundary equations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Clone, Debug)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[i] -= q * row[k]
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(k, j)] * q;
            self[(i, j)] -= v;
        }
    }

    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, k)] * q;
            self[(i, j)] -= v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `u · a · v = d` with `d` diagonal and `u`, `v` unimodular.
pub struct Diagonalized {
    pub u: IntMat,
    pub v: IntMat,
    pub d: IntMat,
}

/// Diagonalizes by alternating row/column reduction with a minimal pivot.
/// The divisibility chain of full Smith form is not needed for solving.
pub fn diagonalize(a: &IntMat) -> Diagonalized {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let steps = a.rows.min(a.cols);

    for t in 0..steps {
        loop {
            // smallest nonzero entry of the remaining block as pivot
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if !d[(i, j)].is_zero()
                        && pivot.is_none_or(|p| d[(i, j)].abs() < d[p].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return Diagonalized { u, v, d };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..d.rows {
                if !d[(i, t)].is_zero() {
                    let (q, r) = d[(i, t)].div_mod_floor(&d[(t, t)]);
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    if !r.is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..d.cols {
                if !d[(t, j)].is_zero() {
                    let (q, r) = d[(t, j)].div_mod_floor(&d[(t, t)]);
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    if !r.is_zero() {
                        clean = false;
                    }
                }
            }
            let row_clear = (t + 1..d.cols).all(|j| d[(t, j)].is_zero());
            let col_clear = (t + 1..d.rows).all(|i| d[(i, t)].is_zero());
            if clean && row_clear && col_clear {
                break;
            }
        }
    }
    Diagonalized { u, v, d }
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if b.is_zero() {
        (a.clone(), BigInt::one(), BigInt::zero())
    } else {
        let (q, r) = a.div_mod_floor(b);
        let (g, x, y) = ext_gcd(b, &r);
        (g, y.clone(), x - q * y)
    }
}

/// Solves `a · y ≡ c (mod modulus)` over the integers, returning one solution
/// with entries reduced mod `modulus`, or `None` if no solution exists at
/// this modulus.
pub fn solve_mod(a: &IntMat, c: &[BigInt], modulus: &BigInt) -> Option<Vec<BigInt>> {
    assert_eq!(c.len(), a.rows);
    assert!(modulus.is_positive());
    let Diagonalized { u, v, d } = diagonalize(a);
    let rhs = u.mul_vec(c);
    let k = a.rows.min(a.cols);
    let mut w = vec![BigInt::zero(); a.cols];
    for i in 0..a.rows {
        let s = if i < k { d[(i, i)].clone() } else { BigInt::zero() };
        let r = rhs[i].mod_floor(modulus);
        if s.is_zero() {
            if !r.is_zero() {
                return None;
            }
            continue;
        }
        // solve s * w_i ≡ r (mod modulus)
        let (g, inv, _) = ext_gcd(&s.mod_floor(modulus), modulus);
        if !(&r % &g).is_zero() {
            return None;
        }
        let m2 = modulus / &g;
        let wi = ((&r / &g) * inv).mod_floor(&m2);
        w[i] = wi;
    }
    let y: Vec<BigInt> = v.mul_vec(&w).iter().map(|x| x.mod_floor(modulus)).collect();
    // safety: confirm the residue equations hold
    let check = a.mul_vec(&y);
    for i in 0..a.rows {
        if !(&check[i] - &c[i]).mod_floor(modulus).is_zero() {
            return None;
        }
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, entries: &[i64]) -> IntMat {
        let mut m = IntMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = BigInt::from(entries[i * cols + j]);
            }
        }
        m
    }

    #[test]
    fn diagonalization_is_equivalent() {
        let a = mat(3, 3, &[2, 4, 4, -6, 6, 12, 10, 4, 16]);
        let Diagonalized { u, v, d } = diagonalize(&a);
        // u*a*v == d, checked entrywise via action on unit vectors
        for j in 0..3 {
            let mut e = vec![BigInt::zero(); 3];
            e[j] = BigInt::one();
            let av = a.mul_vec(&v.mul_vec(&e));
            let uav = u.mul_vec(&av);
            for i in 0..3 {
                assert_eq!(uav[i], d[(i, j)]);
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn solve_simple_congruence() {
        // 2y ≡ 1 (mod 4) has no solution; 2y ≡ 2 (mod 4) does
        let a = mat(1, 1, &[2]);
        let four = BigInt::from(4);
        assert!(solve_mod(&a, &[BigInt::from(1)], &four).is_none());
        let y = solve_mod(&a, &[BigInt::from(2)], &four).unwrap();
        assert_eq!((BigInt::from(2) * &y[0] - BigInt::from(2)) % four, BigInt::from(0));
    }

    #[test]
    fn solve_rectangular_system() {
        // y1 + y2 ≡ 3, y1 - y2 ≡ 1 (mod 5)
        let a = mat(2, 2, &[1, 1, 1, -1]);
        let five = BigInt::from(5);
        let y = solve_mod(&a, &[BigInt::from(3), BigInt::from(1)], &five).unwrap();
        assert_eq!((&y[0] + &y[1]) % &five, BigInt::from(3));
    }

    #[test]
    fn inconsistent_overdetermined() {
        let a = mat(2, 1, &[1, 1]);
        let two = BigInt::from(2);
        assert!(solve_mod(&a, &[BigInt::from(0), BigInt::from(1)], &two).is_none());
    }
}
