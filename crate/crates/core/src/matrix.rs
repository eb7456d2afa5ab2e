//! Small dense integer and rational matrices.
//!
//! Everything in this crate is at most 12x12, so a flat row-major `Vec` is
//! plenty. Rational work uses `Ratio<i128>`; entries stay tiny for the
//! groups we handle.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i128>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IMat { rows: r, cols: c, data: rows.concat() }
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_cols(cols: &[Vec<i64>]) -> Self {
        Self::from_rows(cols).transpose()
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

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IMat) -> IMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, rhs: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: i64) -> IMat {
        IMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == i64::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Top-left `r x c` block.
    pub fn block(&self, r: usize, c: usize) -> IMat {
        let mut out = Self::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                out[(i, j)] = self[(i, j)];
            }
        }
        out
    }

    /// Embeds into the top-left corner of an `n x n` identity.
    pub fn pad_identity(&self, n: usize) -> IMat {
        let mut out = Self::identity(n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> IMat {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn to_q(&self) -> QMat {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| Q::from_integer(x as i128)).collect())
            .collect()
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl Index<(usize, usize)> for IMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Rational matrix as a list of rows.
pub type QMat = Vec<Vec<Q>>;

pub fn q(x: i64) -> Q {
    Q::from_integer(x as i128)
}

/// In-place reduced row echelon form. Returns the pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let d = f * m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of `{x : m x = 0}`, returned in reduced row echelon form.
pub fn kernel(m: &QMat, cols: usize) -> QMat {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: QMat = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = -row[f];
            }
            v
        })
        .collect();
    rref(&mut basis);
    basis
}

pub fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + row[k] * b[k][j]))
                .collect()
        })
        .collect()
}

pub fn qmat_transpose(a: &QMat) -> QMat {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn qmat_inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut aug: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Converts to an integer matrix if every entry is integral.
pub fn qmat_to_int(a: &QMat) -> Option<IMat> {
    let rows: Option<Vec<Vec<i64>>> = a
        .iter()
        .map(|row| row.iter().map(|x| x.is_integer().then(|| x.to_integer() as i64)).collect())
        .collect();
    rows.map(|r| IMat::from_rows(&r))
}

/// Solves `a x = b` for one solution (free variables set to zero).
pub fn qsolve(a: &QMat, b: &[Q]) -> Option<Vec<Q>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[cols];
    }
    Some(x)
}

pub fn abs_max_q(v: &[Q]) -> Q {
    v.iter().map(|x| x.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_matches_repeated_product() {
        let m = IMat::from_rows(&[vec![0, -1], vec![1, 1]]);
        let mut acc = IMat::identity(2);
        for e in 0..8 {
            assert_eq!(m.pow(e), acc);
            acc = acc.mul(&m);
        }
        assert!(m.pow(6).is_identity());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = IMat::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]).to_q();
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((v[0] + v[1] * q(2) + v[2] * q(3)).is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = IMat::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]).to_q();
        let inv = qmat_inverse(&m).unwrap();
        let id = qmat_mul(&m, &inv);
        assert_eq!(qmat_to_int(&id).unwrap(), IMat::identity(3));
        assert!(qmat_inverse(&IMat::from_rows(&[vec![1, 2], vec![2, 4]]).to_q()).is_none());
    }

    #[test]
    fn solve_inconsistent() {
        let a = IMat::from_rows(&[vec![1, 1], vec![1, 1]]).to_q();
        assert!(qsolve(&a, &[q(1), q(2)]).is_none());
        let x = qsolve(&a, &[q(3), q(3)]).unwrap();
        assert_eq!(x[0] + x[1], q(3));
    }
}
