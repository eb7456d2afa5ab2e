//! Elements of W, W̃ and Ŵ.
//!
//! Elements of the elliptic group W and of the cover Ŵ are carried as
//! Gram-preserving integer matrices. Elements of the cover W̃ are carried
//! in normal form as triples `(w_fin, lambda, mu)` standing for
//! `e(w_fin) * TR_b(lambda) * TR_a(mu)`, with matrices derived on demand.
//!
//! Composition is `(fg)(v) = f(g(v))` throughout.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bilinear::{gram_matrix, idx_a, idx_a_prime, idx_b, idx_b_prime, Ambient};
use crate::matrix::{q, qmat_inverse, qmat_to_int, qsolve, IMat, QMat, Q};
use crate::rootsys::{elliptic_basis, is_root, root_system, Kind, RootVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("{0} is not a root")]
    NotRoot(RootVector),
    #[error("matrix does not preserve the Gram form of {0:?}")]
    NotIsometry(Ambient),
    #[error("matrix has shape {rows}x{cols}, expected {dim}x{dim}")]
    BadShape { rows: usize, cols: usize, dim: usize },
    #[error("vector has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("operands live in different groups")]
    Mismatch,
    #[error("not an element of the hyperbolic cover: {0}")]
    NotInCover(&'static str),
}

/// An integer matrix certified to preserve the Gram form of its ambient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupMatrix {
    kind: Kind,
    ambient: Ambient,
    m: IMat,
}

impl GroupMatrix {
    pub fn new(kind: Kind, ambient: Ambient, m: IMat) -> Result<Self, GroupError> {
        let dim = ambient.dim(kind);
        if m.rows() != dim || m.cols() != dim {
            return Err(GroupError::BadShape { rows: m.rows(), cols: m.cols(), dim });
        }
        if !is_isometry(kind, ambient, &m) {
            return Err(GroupError::NotIsometry(ambient));
        }
        Ok(GroupMatrix { kind, ambient, m })
    }

    pub fn identity(kind: Kind, ambient: Ambient) -> Self {
        GroupMatrix { kind, ambient, m: IMat::identity(ambient.dim(kind)) }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn matrix(&self) -> &IMat {
        &self.m
    }

    pub fn into_matrix(self) -> IMat {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    pub fn compose(&self, rhs: &GroupMatrix) -> GroupMatrix {
        assert_eq!((self.kind, self.ambient), (rhs.kind, rhs.ambient), "mismatched groups");
        let m = self.m.mul(&rhs.m);
        debug_assert!(is_isometry(self.kind, self.ambient, &m));
        GroupMatrix { kind: self.kind, ambient: self.ambient, m }
    }

    pub fn try_compose(&self, rhs: &GroupMatrix) -> Result<GroupMatrix, GroupError> {
        if (self.kind, self.ambient) != (rhs.kind, rhs.ambient) {
            return Err(GroupError::Mismatch);
        }
        Ok(self.compose(rhs))
    }

    pub fn pow(&self, e: u64) -> GroupMatrix {
        GroupMatrix { kind: self.kind, ambient: self.ambient, m: self.m.pow(e) }
    }

    pub fn inverse(&self) -> GroupMatrix {
        let inv = qmat_inverse(&self.m.to_q()).expect("isometries of these spaces are invertible");
        let m = qmat_to_int(&inv).expect("integral group element has integral inverse");
        GroupMatrix { kind: self.kind, ambient: self.ambient, m }
    }

    pub fn conjugate_by(&self, g: &GroupMatrix) -> GroupMatrix {
        g.inverse().compose(self).compose(g)
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.m.mul_vec(v)
    }

    /// Restriction to V of an element of W̃ or Ŵ (the projection `phi`).
    pub fn restrict_to_v(&self) -> Result<GroupMatrix, GroupError> {
        let d = Ambient::V.dim(self.kind);
        let full = self.m.rows();
        for j in 0..d {
            for i in d..full {
                if self.m[(i, j)] != 0 {
                    return Err(GroupError::NotInCover("does not preserve V"));
                }
            }
        }
        GroupMatrix::new(self.kind, Ambient::V, self.m.block(d, d))
    }
}

pub fn is_isometry(kind: Kind, ambient: Ambient, m: &IMat) -> bool {
    let g = gram_matrix(kind, ambient);
    m.transpose().mul(&g).mul(m) == g
}

/// Reflection `v -> v - (gamma | v) gamma` in the given ambient.
pub fn reflection_matrix(
    kind: Kind,
    gamma: &RootVector,
    ambient: Ambient,
) -> Result<GroupMatrix, GroupError> {
    if gamma.beta.len() != kind.rank() || !is_root(kind, gamma) {
        return Err(GroupError::NotRoot(gamma.clone()));
    }
    let dim = ambient.dim(kind);
    let g = gram_matrix(kind, ambient);
    let v = gamma.coords(dim);
    let gv = g.mul_vec(&v);
    let mut m = IMat::identity(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] -= v[i] * gv[j];
        }
    }
    Ok(GroupMatrix { kind, ambient, m })
}

/// A formal sum `sum f_i (x) g_i` with `f_i` in Ṽ and `g_i` in V (mod `a`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorWord {
    pub terms: Vec<(Vec<i64>, Vec<i64>)>,
}

impl TensorWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(f: Vec<i64>, g: Vec<i64>) -> Self {
        TensorWord { terms: vec![(f, g)] }
    }

    pub fn push(&mut self, f: Vec<i64>, g: Vec<i64>) {
        self.terms.push((f, g));
    }

    /// `phi_1 o phi_2 = phi_1 + phi_2 - (phi_1 | phi_2)`.
    pub fn compose(&self, other: &TensorWord, kind: Kind) -> TensorWord {
        let g = gram_matrix(kind, Ambient::Vtilde);
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        for (f1, g1) in &self.terms {
            for (f2, g2) in &other.terms {
                let p = pair_tilde(&g, &pad(g1, f2.len()), f2);
                if p != 0 {
                    out.terms.push((f1.clone(), g2.iter().map(|x| -p * x).collect()));
                }
            }
        }
        out
    }
}

fn pad(v: &[i64], len: usize) -> Vec<i64> {
    let mut out = v.to_vec();
    out.resize(len, 0);
    out
}

fn pair_tilde(g: &IMat, x: &[i64], y: &[i64]) -> i64 {
    let gy = g.mul_vec(y);
    x.iter().zip(&gy).map(|(a, b)| a * b).sum()
}

/// The Eichler-Siegel endomorphism `v -> v - sum (g_i | v) f_i` of Ṽ.
pub fn eichler_endomorphism(kind: Kind, word: &TensorWord) -> Result<IMat, GroupError> {
    let dim = Ambient::Vtilde.dim(kind);
    let vdim = Ambient::V.dim(kind);
    let g = gram_matrix(kind, Ambient::Vtilde);
    let mut m = IMat::identity(dim);
    for (f, gv) in &word.terms {
        if f.len() != dim {
            return Err(GroupError::BadLength { got: f.len(), expected: dim });
        }
        if gv.len() != vdim {
            return Err(GroupError::BadLength { got: gv.len(), expected: vdim });
        }
        let row = g.mul_vec(&pad(gv, dim));
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] -= f[i] * row[j];
            }
        }
    }
    Ok(m)
}

/// Eichler-Siegel image, rejected unless it is an isometry of Ṽ.
pub fn eichler(kind: Kind, word: &TensorWord) -> Result<GroupMatrix, GroupError> {
    GroupMatrix::new(kind, Ambient::Vtilde, eichler_endomorphism(kind, word)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Radical {
    A,
    B,
}

/// Transvection `TR_x(lambda)`.
///
/// On V this is `v -> v - (v | lambda) x`. On Ṽ and V̂ it is the element of
/// the cover generated by the corresponding reflection pairs, which adds the
/// correction terms needed to preserve the larger form. `lambda` has length
/// `n` (finite lattice) or `n + 1` (last entry the coefficient of `b`, only
/// allowed for `x = a`).
pub fn transvection(
    kind: Kind,
    ambient: Ambient,
    x: Radical,
    lambda: &[i64],
) -> Result<GroupMatrix, GroupError> {
    let n = kind.rank();
    let ok_len = match x {
        Radical::B => lambda.len() == n,
        Radical::A => lambda.len() == n || lambda.len() == n + 1,
    };
    if !ok_len {
        return Err(GroupError::BadLength { got: lambda.len(), expected: n });
    }
    let mut mu = lambda.to_vec();
    mu.resize(n + 1, 0);
    let triple = match x {
        Radical::B => Triple::translation_b(kind, lambda.to_vec()),
        Radical::A => Triple::translation_a(kind, mu.clone()),
    };
    match ambient {
        Ambient::Vtilde => Ok(triple.to_matrix()),
        Ambient::Vhat => lift_to_vhat(&triple.to_matrix()),
        Ambient::V => {
            let dim = Ambient::V.dim(kind);
            let g = gram_matrix(kind, Ambient::V);
            let mut lv = mu[..n].to_vec();
            lv.resize(dim, 0);
            let row = g.mul_vec(&lv);
            let xi = match x {
                Radical::A => idx_a(kind),
                Radical::B => idx_b(kind),
            };
            let mut m = IMat::identity(dim);
            for (j, r) in row.iter().enumerate() {
                m[(xi, j)] -= r;
            }
            GroupMatrix::new(kind, Ambient::V, m)
        }
    }
}

/// Unique extension of an element of W̃ to an isometry of V̂.
///
/// The image of `a'` is pinned down by its pairings with the image of Ṽ up
/// to a multiple of `a`, and that multiple by isotropy.
pub fn lift_to_vhat(m: &GroupMatrix) -> Result<GroupMatrix, GroupError> {
    if m.ambient() != Ambient::Vtilde {
        return Err(GroupError::Mismatch);
    }
    let kind = m.kind();
    let dt = Ambient::Vtilde.dim(kind);
    let dh = Ambient::Vhat.dim(kind);
    let gh = gram_matrix(kind, Ambient::Vhat);
    let mut cols: Vec<Vec<i64>> = (0..dt).map(|j| pad(&m.matrix().col(j), dh)).collect();
    // Rows: (M e_j)^T G_hat, right-hand side (a' | e_j).
    let a: QMat = cols
        .iter()
        .map(|c| gh.mul_vec(c).into_iter().map(q).collect())
        .collect();
    let rhs: Vec<Q> = (0..dt).map(|j| q(gh[(idx_a_prime(kind), j)])).collect();
    let x = qsolve(&a, &rhs).ok_or(GroupError::NotInCover("no isometric extension"))?;
    let gq = gh.to_q();
    let xx: Q = (0..dh)
        .map(|i| (0..dh).map(|j| x[i] * gq[i][j] * x[j]).sum::<Q>())
        .sum();
    let xa: Q = (0..dh).map(|i| x[i] * gq[i][idx_a(kind)]).sum();
    if xa == q(0) {
        return Err(GroupError::NotInCover("image of a' is orthogonal to a"));
    }
    let t = -xx / (q(2) * xa);
    let mut u = x;
    u[idx_a(kind)] += t;
    if !u.iter().all(|v| v.is_integer()) {
        return Err(GroupError::NotInCover("extension is not integral"));
    }
    cols.push(u.iter().map(|v| v.to_integer() as i64).collect());
    GroupMatrix::new(kind, Ambient::Vhat, IMat::from_cols(&cols))
}

/// Normal form `(w_fin, lambda, mu)` of an element of W̃.
///
/// `lambda` lies in the finite root lattice (length `n`), `mu` in
/// `L(Phi_fin) + Z b` (length `n + 1`, last entry the `b` coefficient).
#[derive(Clone)]
pub struct Triple {
    kind: Kind,
    w_fin: IMat,
    lambda: Vec<i64>,
    mu: Vec<i64>,
    matrix: OnceLock<IMat>,
}

impl Triple {
    fn raw(kind: Kind, w_fin: IMat, lambda: Vec<i64>, mu: Vec<i64>) -> Self {
        Triple { kind, w_fin, lambda, mu, matrix: OnceLock::new() }
    }

    /// Validates that `w_fin` lies in the finite Weyl group.
    pub fn new(kind: Kind, w_fin: IMat, lambda: Vec<i64>, mu: Vec<i64>) -> Result<Self, GroupError> {
        let n = kind.rank();
        if w_fin.rows() != n || w_fin.cols() != n {
            return Err(GroupError::BadShape { rows: w_fin.rows(), cols: w_fin.cols(), dim: n });
        }
        if lambda.len() != n {
            return Err(GroupError::BadLength { got: lambda.len(), expected: n });
        }
        if mu.len() != n + 1 {
            return Err(GroupError::BadLength { got: mu.len(), expected: n + 1 });
        }
        if !is_weyl_element(kind, &w_fin) {
            return Err(GroupError::NotInCover("w_fin is not in the finite Weyl group"));
        }
        Ok(Self::raw(kind, w_fin, lambda, mu))
    }

    pub fn identity(kind: Kind) -> Self {
        let n = kind.rank();
        Self::raw(kind, IMat::identity(n), vec![0; n], vec![0; n + 1])
    }

    pub fn translation_b(kind: Kind, lambda: Vec<i64>) -> Self {
        let n = kind.rank();
        assert_eq!(lambda.len(), n);
        Self::raw(kind, IMat::identity(n), lambda, vec![0; n + 1])
    }

    pub fn translation_a(kind: Kind, mu: Vec<i64>) -> Self {
        let n = kind.rank();
        assert_eq!(mu.len(), n + 1);
        Self::raw(kind, IMat::identity(n), vec![0; n], mu)
    }

    pub fn finite(kind: Kind, w_fin: IMat) -> Self {
        let n = kind.rank();
        Self::raw(kind, w_fin, vec![0; n], vec![0; n + 1])
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn w_fin(&self) -> &IMat {
        &self.w_fin
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn is_identity(&self) -> bool {
        self.w_fin.is_identity()
            && self.lambda.iter().all(|&x| x == 0)
            && self.mu.iter().all(|&x| x == 0)
    }

    /// `(w1, l1, m1)(w2, l2, m2) =
    /// (w1 w2, w2^{-1} l1 + l2, TR_b(l2)^{-1} w2^{-1} m1 + m2)`.
    pub fn mul(&self, rhs: &Triple) -> Triple {
        assert_eq!(self.kind, rhs.kind, "mismatched kinds");
        let rs = root_system(self.kind);
        let n = rs.n();
        let w2inv = rs.weyl_inverse(&rhs.w_fin);
        let w = self.w_fin.mul(&rhs.w_fin);
        let l1 = w2inv.mul_vec(&self.lambda);
        let lambda: Vec<i64> = l1.iter().zip(&rhs.lambda).map(|(a, b)| a + b).collect();
        let mut m1 = w2inv.mul_vec(&self.mu[..n]);
        let shift = rs.pair(&m1, &rhs.lambda);
        m1.push(self.mu[n] + shift);
        let mu: Vec<i64> = m1.iter().zip(&rhs.mu).map(|(a, b)| a + b).collect();
        Triple::raw(self.kind, w, lambda, mu)
    }

    pub fn inverse(&self) -> Triple {
        let rs = root_system(self.kind);
        let n = rs.n();
        let winv = rs.weyl_inverse(&self.w_fin);
        let lambda: Vec<i64> = self.w_fin.mul_vec(&self.lambda).iter().map(|x| -x).collect();
        let mut mu: Vec<i64> = self.w_fin.mul_vec(&self.mu[..n]).iter().map(|x| -x).collect();
        mu.push(-self.mu[n] + rs.pair(&self.mu[..n], &self.lambda));
        Triple::raw(self.kind, winv, lambda, mu)
    }

    pub fn pow(&self, e: i64) -> Triple {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Triple::identity(self.kind);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            k >>= 1;
        }
        acc
    }

    /// `g^{-1} x g`.
    pub fn conjugate_by(&self, g: &Triple) -> Triple {
        g.inverse().mul(self).mul(g)
    }

    pub fn commutes_with(&self, other: &Triple) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Matrix on Ṽ of `e(w_fin) TR_b(lambda) TR_a(mu)`.
    pub fn to_matrix(&self) -> GroupMatrix {
        let m = self.matrix.get_or_init(|| self.build_matrix()).clone();
        GroupMatrix { kind: self.kind, ambient: Ambient::Vtilde, m }
    }

    fn build_matrix(&self) -> IMat {
        let kind = self.kind;
        let rs = root_system(kind);
        let n = rs.n();
        let dim = Ambient::Vtilde.dim(kind);
        let (ia, ib, ibp) = (idx_a(kind), idx_b(kind), idx_b_prime(kind));
        let mut m = IMat::identity(dim);
        let c_lambda = rs.cartan.mul_vec(&self.lambda);
        let c_mu = rs.cartan.mul_vec(&self.mu[..n]);
        for j in 0..n {
            for i in 0..n {
                m[(i, j)] = self.w_fin[(i, j)];
            }
            m[(ib, j)] = -c_lambda[j];
            m[(ia, j)] = -c_mu[j];
        }
        let w_lambda = self.w_fin.mul_vec(&self.lambda);
        let half_norm = rs.pair(&self.lambda, &self.lambda) / 2;
        for i in 0..n {
            m[(i, ibp)] = w_lambda[i];
        }
        m[(ib, ibp)] = -half_norm;
        m[(ia, ibp)] = -self.mu[n];
        m
    }

    /// Recovers the normal form from a matrix on Ṽ, rejecting anything
    /// outside W̃.
    pub fn from_matrix(g: &GroupMatrix) -> Result<Triple, GroupError> {
        if g.ambient() != Ambient::Vtilde {
            return Err(GroupError::Mismatch);
        }
        let kind = g.kind();
        let rs = root_system(kind);
        let n = rs.n();
        let m = g.matrix();
        let (ia, ib, ibp) = (idx_a(kind), idx_b(kind), idx_b_prime(kind));
        let w_fin = m.block(n, n);
        let row_b: Vec<i64> = (0..n).map(|j| -m[(ib, j)]).collect();
        let row_a: Vec<i64> = (0..n).map(|j| -m[(ia, j)]).collect();
        let lambda =
            rs.solve_cartan(&row_b).ok_or(GroupError::NotInCover("b-row is not in the root lattice"))?;
        let mut mu =
            rs.solve_cartan(&row_a).ok_or(GroupError::NotInCover("a-row is not in the root lattice"))?;
        mu.push(-m[(ia, ibp)]);
        if !is_weyl_element(kind, &w_fin) {
            return Err(GroupError::NotInCover("finite block is not in the finite Weyl group"));
        }
        let t = Triple::raw(kind, w_fin, lambda, mu);
        if t.to_matrix().matrix() != m {
            return Err(GroupError::NotInCover("matrix is not of normal-form shape"));
        }
        Ok(t)
    }

    /// The projection `phi` to W.
    pub fn phi(&self) -> GroupMatrix {
        self.to_matrix().restrict_to_v().expect("W-tilde preserves V")
    }

    /// Acts on a vector of Ṽ.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.to_matrix().apply(v)
    }

    /// Stable textual key used for hashing and node identifiers.
    pub fn key(&self) -> String {
        serde_json::to_string(self).expect("triples serialize")
    }
}

impl PartialEq for Triple {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.w_fin == other.w_fin
            && self.lambda == other.lambda
            && self.mu == other.mu
    }
}

impl Eq for Triple {}

impl Hash for Triple {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.w_fin.hash(state);
        self.lambda.hash(state);
        self.mu.hash(state);
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.kind, &self.w_fin, &self.lambda, &self.mu).cmp(&(
            other.kind,
            &other.w_fin,
            &other.lambda,
            &other.mu,
        ))
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Triple")
            .field("kind", &self.kind)
            .field("w_fin", &self.w_fin.to_rows())
            .field("lambda", &self.lambda)
            .field("mu", &self.mu)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct TripleJson {
    kind: Kind,
    w_fin: Vec<Vec<i64>>,
    lambda: Vec<i64>,
    mu: Vec<i64>,
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TripleJson {
            kind: self.kind,
            w_fin: self.w_fin.to_rows(),
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = TripleJson::deserialize(d)?;
        let n = j.kind.rank();
        if j.w_fin.len() != n || j.w_fin.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("w_fin has the wrong shape"));
        }
        Triple::new(j.kind, IMat::from_rows(&j.w_fin), j.lambda, j.mu)
            .map_err(serde::de::Error::custom)
    }
}

/// Membership in the finite Weyl group by descent reduction.
pub fn is_weyl_element(kind: Kind, w: &IMat) -> bool {
    let rs = root_system(kind);
    let n = rs.n();
    if w.rows() != n || w.cols() != n {
        return false;
    }
    if w.transpose().mul(&rs.cartan).mul(w) != rs.cartan {
        return false;
    }
    let mut cur = w.clone();
    for _ in 0..=rs.positive_roots().len() {
        let descent = (0..n).find(|&i| cur.col(i).iter().any(|&x| x < 0));
        match descent {
            None => return cur.is_identity(),
            Some(i) => {
                let mut e = vec![0; n];
                e[i] = 1;
                cur = cur.mul(&rs.finite_reflection(&e));
            }
        }
    }
    false
}

/// `(s_beta, l beta, k beta + k l b)` for the root `beta + k a + l b`.
pub fn reflection_triple(kind: Kind, gamma: &RootVector) -> Result<Triple, GroupError> {
    if gamma.beta.len() != kind.rank() || !is_root(kind, gamma) {
        return Err(GroupError::NotRoot(gamma.clone()));
    }
    let rs = root_system(kind);
    let w = rs.finite_reflection(&gamma.beta);
    let lambda: Vec<i64> = gamma.beta.iter().map(|x| gamma.l * x).collect();
    let mut mu: Vec<i64> = gamma.beta.iter().map(|x| gamma.k * x).collect();
    mu.push(gamma.k * gamma.l);
    Ok(Triple::raw(kind, w, lambda, mu))
}

pub fn triple_to_matrix(x: &Triple) -> GroupMatrix {
    x.to_matrix()
}

pub fn matrix_to_triple(m: &GroupMatrix) -> Result<Triple, GroupError> {
    Triple::from_matrix(m)
}

pub fn triple_mul(x: &Triple, y: &Triple) -> Triple {
    x.mul(y)
}

/// The projection `phi: W̃ -> W`.
pub fn projection_phi(x: &Triple) -> GroupMatrix {
    x.phi()
}

/// Roots of the standard Coxeter factorization
/// `s_1 ... ^s_t ... s_n s_0 s_t s_{t*}`, canonical signs.
pub fn coxeter_roots(kind: Kind) -> Vec<RootVector> {
    let basis = elliptic_basis(kind);
    let n = kind.rank();
    let t = root_system(kind).ty.t;
    let mut out: Vec<RootVector> =
        (1..=n).filter(|&i| i != t).map(|i| basis.alpha[i - 1].clone()).collect();
    out.push(basis.alpha_0().canonical());
    out.push(basis.alpha[t - 1].clone());
    out.push(basis.alpha_t_star().clone());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Realization {
    W,
    Wtilde,
    What,
}

impl Realization {
    pub fn ambient(self) -> Ambient {
        match self {
            Realization::W => Ambient::V,
            Realization::Wtilde => Ambient::Vtilde,
            Realization::What => Ambient::Vhat,
        }
    }
}

/// Product of the reflection matrices of `roots` in the given ambient.
pub fn product_matrix(
    kind: Kind,
    roots: &[RootVector],
    ambient: Ambient,
) -> Result<GroupMatrix, GroupError> {
    roots.iter().try_fold(GroupMatrix::identity(kind, ambient), |acc, r| {
        Ok(acc.compose(&reflection_matrix(kind, r, ambient)?))
    })
}

/// Product of reflection triples.
pub fn product_triple(kind: Kind, roots: &[RootVector]) -> Result<Triple, GroupError> {
    roots
        .iter()
        .try_fold(Triple::identity(kind), |acc, r| Ok(acc.mul(&reflection_triple(kind, r)?)))
}

pub fn coxeter_transformation(kind: Kind, which: Realization) -> GroupMatrix {
    product_matrix(kind, &coxeter_roots(kind), which.ambient()).expect("basis roots are roots")
}

pub fn coxeter_triple(kind: Kind) -> Triple {
    product_triple(kind, &coxeter_roots(kind)).expect("basis roots are roots")
}

/// Least `m <= cap` with `M^m = I`.
pub fn order_in_w(m: &GroupMatrix, cap: u64) -> Option<u64> {
    let mut acc = m.clone();
    for k in 1..=cap {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.compose(m);
    }
    None
}

/// The central element `z = E(a (x) b) = (id, 0, b)`.
pub fn central_z(kind: Kind) -> Triple {
    let n = kind.rank();
    let mut mu = vec![0; n + 1];
    mu[n] = 1;
    Triple::translation_a(kind, mu)
}

/// `E(a (x) b)` as a tensor word.
pub fn central_z_word(kind: Kind) -> TensorWord {
    let dt = Ambient::Vtilde.dim(kind);
    let dv = Ambient::V.dim(kind);
    let mut f = vec![0; dt];
    f[idx_a(kind)] = 1;
    let mut g = vec![0; dv];
    g[idx_b(kind)] = 1;
    TensorWord::single(f, g)
}
