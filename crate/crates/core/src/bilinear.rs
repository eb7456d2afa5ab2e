//! Ambient spaces V, Ṽ, V̂ with their Gram forms, exact signatures and
//! rational subspaces.
//!
//! Basis order is fixed as `(alpha_1..alpha_n, a, b, b', a')`, truncated to
//! the ambient dimension. The hyperbolic partners are normalized so that
//! `(b | b') = (a | a') = 1` and all other pairings with `b'`, `a'` vanish.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::group::GroupMatrix;
use crate::matrix::{kernel, q, qmat_mul, qmat_transpose, rref, IMat, QMat, Q};
use crate::rootsys::{root_system, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ambient {
    V,
    Vtilde,
    Vhat,
}

impl Ambient {
    pub fn dim(self, kind: Kind) -> usize {
        kind.rank()
            + match self {
                Ambient::V => 2,
                Ambient::Vtilde => 3,
                Ambient::Vhat => 4,
            }
    }

    pub fn labels(self, kind: Kind) -> Vec<String> {
        let n = kind.rank();
        let mut out: Vec<String> = (1..=n).map(|i| format!("alpha_{i}")).collect();
        out.extend(["a", "b", "b'", "a'"].iter().map(|s| s.to_string()));
        out.truncate(self.dim(kind));
        out
    }
}

/// Coordinate indices of the radical and hyperbolic partners.
pub fn idx_a(kind: Kind) -> usize {
    kind.rank()
}
pub fn idx_b(kind: Kind) -> usize {
    kind.rank() + 1
}
pub fn idx_b_prime(kind: Kind) -> usize {
    kind.rank() + 2
}
pub fn idx_a_prime(kind: Kind) -> usize {
    kind.rank() + 3
}

pub fn gram_matrix(kind: Kind, ambient: Ambient) -> IMat {
    let n = kind.rank();
    let dim = ambient.dim(kind);
    let mut g = IMat::zeros(dim, dim);
    let cartan = &root_system(kind).cartan;
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = cartan[(i, j)];
        }
    }
    if dim > idx_b_prime(kind) {
        let (b, bp) = (idx_b(kind), idx_b_prime(kind));
        g[(b, bp)] = 1;
        g[(bp, b)] = 1;
    }
    if dim > idx_a_prime(kind) {
        let (a, ap) = (idx_a(kind), idx_a_prime(kind));
        g[(a, ap)] = 1;
        g[(ap, a)] = 1;
    }
    g
}

/// Counts of positive, negative and zero entries after diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Signature { positive, negative, zero }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BilinearError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square")]
    NotSquare,
}

/// Exact signature by symmetric Gaussian elimination over the rationals.
pub fn signature(m: &QMat) -> Result<Signature, BilinearError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(BilinearError::NotSquare);
    }
    for i in 0..n {
        for j in 0..i {
            if m[i][j] != m[j][i] {
                return Err(BilinearError::NotSymmetric);
            }
        }
    }
    let mut a = m.clone();
    let mut sig = Signature::new(0, 0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // Pick a nonzero diagonal pivot if possible.
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.swap_remove(pos);
            let d = a[p][p];
            if d.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            for &i in &active {
                let f = a[i][p] / d;
                if f.is_zero() {
                    continue;
                }
                for &j in &active {
                    let delta = f * a[p][j];
                    a[i][j] -= delta;
                }
            }
            for &i in &active {
                a[i][p] = Q::zero();
                a[p][i] = Q::zero();
            }
            continue;
        }
        // All remaining diagonal entries vanish: find an off-diagonal pair.
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j))
        });
        match pair {
            None => {
                sig.zero += active.len();
                break;
            }
            Some((i, j)) => {
                // Replace e_i by e_i + e_j, which has (e_i+e_j)^2 = 2 a_ij != 0.
                for &k in &active {
                    let v = a[k][j];
                    a[k][i] += v;
                }
                for &k in &active {
                    let v = a[j][k];
                    a[i][k] += v;
                }
            }
        }
    }
    Ok(sig)
}

pub fn signature_int(m: &IMat) -> Result<Signature, BilinearError> {
    signature(&m.to_q())
}

/// Subspace of an ambient space, basis kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSubspace {
    pub kind: Kind,
    pub ambient: Ambient,
    basis: QMat,
}

impl RationalSubspace {
    pub fn span(kind: Kind, ambient: Ambient, vectors: &[Vec<Q>]) -> Self {
        let dim = ambient.dim(kind);
        let mut basis: QMat = vectors.to_vec();
        for v in &basis {
            assert_eq!(v.len(), dim, "vector does not live in {ambient:?}");
        }
        rref(&mut basis);
        RationalSubspace { kind, ambient, basis }
    }

    pub fn span_int(kind: Kind, ambient: Ambient, vectors: &[Vec<i64>]) -> Self {
        let qs: QMat = vectors.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        Self::span(kind, ambient, &qs)
    }

    /// The span of the listed basis coordinates.
    pub fn coordinate_span(kind: Kind, ambient: Ambient, coords: &[usize]) -> Self {
        let dim = ambient.dim(kind);
        let vs: Vec<Vec<i64>> = coords
            .iter()
            .map(|&c| {
                let mut v = vec![0; dim];
                v[c] = 1;
                v
            })
            .collect();
        Self::span_int(kind, ambient, &vs)
    }

    pub fn full(kind: Kind, ambient: Ambient) -> Self {
        let coords: Vec<usize> = (0..ambient.dim(kind)).collect();
        Self::coordinate_span(kind, ambient, &coords)
    }

    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut m = self.basis.clone();
        m.push(v.to_vec());
        rref(&mut m);
        m.len() == self.basis.len()
    }

    pub fn contains_int(&self, v: &[i64]) -> bool {
        self.contains(&v.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    pub fn gram(&self) -> QMat {
        let g = gram_matrix(self.kind, self.ambient).to_q();
        qmat_mul(&qmat_mul(&self.basis, &g), &qmat_transpose(&self.basis))
    }
}

/// Exact fixed space `ker(M - I)`.
pub fn fixed_space(m: &GroupMatrix) -> RationalSubspace {
    let dim = m.matrix().rows();
    let diff = m.matrix().sub(&IMat::identity(dim)).to_q();
    let basis = kernel(&diff, dim);
    RationalSubspace { kind: m.kind(), ambient: m.ambient(), basis }
}

/// `{v : (v | s) = 0 for all s in S}`.
pub fn orth_complement(s: &RationalSubspace) -> RationalSubspace {
    let dim = s.ambient.dim(s.kind);
    let g = gram_matrix(s.kind, s.ambient).to_q();
    let constraints = qmat_mul(&s.basis, &g);
    let basis = kernel(&constraints, dim);
    RationalSubspace { kind: s.kind, ambient: s.ambient, basis }
}

/// True iff the form vanishes identically on `s`.
pub fn is_null_space(s: &RationalSubspace) -> bool {
    s.gram().iter().all(|row| row.iter().all(Zero::is_zero))
}
