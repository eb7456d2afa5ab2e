//! Static data for the tubular elliptic root systems D4, E6, E7, E8 with
//! their affine and elliptic extensions.
//!
//! Roots are kept in simple-root coordinates: an elliptic root is
//! `beta + k a + l b` with `beta` a finite root written in the basis
//! `alpha_1..alpha_n` (Bourbaki numbering) and `a`, `b` spanning the radical.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::matrix::{q, qmat_inverse, qmat_to_int, IMat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    D4,
    E6,
    E7,
    E8,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::D4, Kind::E6, Kind::E7, Kind::E8];

    pub fn rank(self) -> usize {
        match self {
            Kind::D4 => 4,
            Kind::E6 => 6,
            Kind::E7 => 7,
            Kind::E8 => 8,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::D4 => "D4",
            Kind::E6 => "E6",
            Kind::E7 => "E7",
            Kind::E8 => "E8",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown root system type `{0}` (expected D4, E6, E7 or E8)")]
pub struct UnknownKind(pub String);

impl FromStr for Kind {
    type Err = UnknownKind;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "D4" => Ok(Kind::D4),
            "E6" => Ok(Kind::E6),
            "E7" => Ok(Kind::E7),
            "E8" => Ok(Kind::E8),
            _ => Err(UnknownKind(s.to_string())),
        }
    }
}

/// Finite-type table entry. Node indices are 1-based as in Bourbaki.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteType {
    pub kind: Kind,
    pub n: usize,
    /// The unique node of maximal mark.
    pub t: usize,
    pub m_t: i64,
    pub marks: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    /// The finite node joined to `alpha_0` in the affine diagram.
    pub affine_neighbor: usize,
}

pub fn finite_type_data(kind: Kind) -> FiniteType {
    let (t, m_t, marks, edges, affine_neighbor): (usize, i64, Vec<i64>, Vec<(usize, usize)>, usize) =
        match kind {
            Kind::D4 => (2, 2, vec![1, 2, 1, 1], vec![(1, 2), (2, 3), (2, 4)], 2),
            Kind::E6 => (
                4,
                3,
                vec![1, 2, 2, 3, 2, 1],
                vec![(1, 3), (2, 4), (3, 4), (4, 5), (5, 6)],
                2,
            ),
            Kind::E7 => (
                4,
                4,
                vec![2, 2, 3, 4, 3, 2, 1],
                vec![(1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7)],
                1,
            ),
            Kind::E8 => (
                4,
                6,
                vec![2, 3, 4, 6, 5, 4, 3, 2],
                vec![(1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)],
                8,
            ),
        };
    FiniteType { kind, n: kind.rank(), t, m_t, marks, edges, affine_neighbor }
}

/// An elliptic root `beta + k a + l b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector {
    pub beta: Vec<i64>,
    pub k: i64,
    pub l: i64,
}

impl RootVector {
    pub fn new(beta: Vec<i64>, k: i64, l: i64) -> Self {
        RootVector { beta, k, l }
    }

    pub fn finite(beta: Vec<i64>) -> Self {
        RootVector { beta, k: 0, l: 0 }
    }

    /// The simple root `alpha_i`, 1-based.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut beta = vec![0; n];
        beta[i - 1] = 1;
        RootVector::finite(beta)
    }

    pub fn plus_radical(mut self, k: i64, l: i64) -> Self {
        self.k += k;
        self.l += l;
        self
    }

    pub fn negated(&self) -> Self {
        RootVector { beta: self.beta.iter().map(|x| -x).collect(), k: -self.k, l: -self.l }
    }

    pub fn is_canonical(&self) -> bool {
        self.beta.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    /// Representative with the first nonzero `beta` entry positive.
    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.negated()
        }
    }

    /// Coordinates in the basis `(alpha_1..alpha_n, a, b)` of V.
    pub fn coords_v(&self) -> Vec<i64> {
        let mut v = self.beta.clone();
        v.push(self.k);
        v.push(self.l);
        v
    }

    /// Coordinates padded with zeros to length `dim`.
    pub fn coords(&self, dim: usize) -> Vec<i64> {
        let mut v = self.coords_v();
        v.resize(dim, 0);
        v
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.beta)?;
        match (self.k, self.l) {
            (0, 0) => Ok(()),
            (k, l) => write!(f, "{k:+}a{l:+}b"),
        }
    }
}

/// Precomputed finite root system of one kind.
#[derive(Debug)]
pub struct RootSystem {
    pub ty: FiniteType,
    /// Cartan matrix, equal to the Gram matrix of the simple roots.
    pub cartan: IMat,
    /// Adjugate of the Cartan matrix together with its determinant.
    cartan_adj: IMat,
    cartan_det: i64,
    roots: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    positive_index: HashMap<Vec<i64>, usize>,
    /// `pairing[i][j] = (beta_i | beta_j)` over positive roots.
    pairing: Vec<Vec<i8>>,
    /// `reflect[i][j]` = signed index of `s_{beta_i}(beta_j)`; entry `(idx, neg)`.
    reflect: Vec<Vec<(u16, bool)>>,
}

impl RootSystem {
    fn build(kind: Kind) -> Self {
        let ty = finite_type_data(kind);
        let n = ty.n;
        let mut cartan = IMat::identity(n).scale(2);
        for &(i, j) in &ty.edges {
            cartan[(i - 1, j - 1)] = -1;
            cartan[(j - 1, i - 1)] = -1;
        }
        let roots = close_under_simple_reflections(&cartan);
        let mut positive: Vec<Vec<i64>> =
            roots.iter().filter(|r| r.iter().all(|&x| x >= 0)).cloned().collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let positive_index: HashMap<Vec<i64>, usize> =
            positive.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();

        let pair = |x: &[i64], y: &[i64]| -> i64 {
            let cy = cartan.mul_vec(y);
            x.iter().zip(&cy).map(|(a, b)| a * b).sum()
        };
        let pairing: Vec<Vec<i8>> = positive
            .iter()
            .map(|x| positive.iter().map(|y| pair(x, y) as i8).collect())
            .collect();
        let reflect = positive
            .iter()
            .enumerate()
            .map(|(i, x)| {
                positive
                    .iter()
                    .enumerate()
                    .map(|(j, y)| {
                        let p = pairing[i][j] as i64;
                        let img: Vec<i64> = y.iter().zip(x).map(|(yy, xx)| yy - p * xx).collect();
                        let neg = !img.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0);
                        let key: Vec<i64> =
                            if neg { img.iter().map(|v| -v).collect() } else { img };
                        (positive_index[&key] as u16, neg)
                    })
                    .collect()
            })
            .collect();

        let inv = qmat_inverse(&cartan.to_q()).expect("Cartan matrix is invertible");
        let det = cartan_det(&cartan);
        let adj = qmat_to_int(
            &inv.iter().map(|row| row.iter().map(|x| x * q(det)).collect()).collect(),
        )
        .expect("adjugate is integral");

        let rs = RootSystem {
            ty,
            cartan,
            cartan_adj: adj,
            cartan_det: det,
            roots,
            positive,
            positive_index,
            pairing,
            reflect,
        };
        rs.validate();
        rs
    }

    /// Cross-checks the stored marks against the root data.
    fn validate(&self) {
        let ty = &self.ty;
        assert_eq!(
            ty.marks.iter().filter(|&&m| m == ty.m_t).count(),
            1,
            "{}: maximal mark must be unique",
            ty.kind
        );
        assert_eq!(ty.marks[ty.t - 1], ty.m_t);
        assert!(self.is_finite_root(&ty.marks), "{}: marks must form a root", ty.kind);
        let top = self.positive.last().expect("nonempty");
        assert_eq!(top, &ty.marks, "{}: marks must be the highest root", ty.kind);
        // b = alpha_0 + sum m_i alpha_i with alpha_0 = b - highest is radical:
        // equivalently (highest | alpha_j) is 1 at the affine neighbour, else 0.
        let ch = self.cartan.mul_vec(&ty.marks);
        for (j, &v) in ch.iter().enumerate() {
            let expect = i64::from(j + 1 == ty.affine_neighbor);
            assert_eq!(v, expect, "{}: affine extension inconsistent at node {}", ty.kind, j + 1);
        }
        let edges = ty.edges.len();
        assert_eq!(edges, ty.n - 1, "{}: Dynkin diagram must be a tree", ty.kind);
    }

    pub fn kind(&self) -> Kind {
        self.ty.kind
    }

    pub fn n(&self) -> usize {
        self.ty.n
    }

    /// All finite roots (both signs).
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn positive_root(&self, idx: usize) -> &[i64] {
        &self.positive[idx]
    }

    pub fn positive_index(&self, beta: &[i64]) -> Option<usize> {
        self.positive_index.get(beta).copied()
    }

    pub fn is_finite_root(&self, beta: &[i64]) -> bool {
        if beta.len() != self.n() {
            return false;
        }
        if self.positive_index.contains_key(beta) {
            return true;
        }
        let neg: Vec<i64> = beta.iter().map(|x| -x).collect();
        self.positive_index.contains_key(&neg)
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let cy = self.cartan.mul_vec(y);
        x.iter().zip(&cy).map(|(a, b)| a * b).sum()
    }

    pub fn pair_positive(&self, i: usize, j: usize) -> i64 {
        self.pairing[i][j] as i64
    }

    pub fn reflect_positive(&self, i: usize, j: usize) -> (usize, bool) {
        let (idx, neg) = self.reflect[i][j];
        (idx as usize, neg)
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.ty.marks
    }

    /// `x` with `cartan * x = y`, if integral.
    pub fn solve_cartan(&self, y: &[i64]) -> Option<Vec<i64>> {
        let adj_y = self.cartan_adj.mul_vec(y);
        adj_y
            .iter()
            .map(|&v| (v % self.cartan_det == 0).then_some(v / self.cartan_det))
            .collect()
    }

    /// Inverse of a finite Weyl group element `w` (simple-root coordinates),
    /// via `w^{-1} = C^{-1} w^T C`.
    pub fn weyl_inverse(&self, w: &IMat) -> IMat {
        let prod = self.cartan_adj.mul(&w.transpose()).mul(&self.cartan);
        let d = self.cartan_det;
        let rows: Vec<Vec<i64>> = prod
            .to_rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        debug_assert_eq!(x % d, 0, "not a Weyl group element");
                        x / d
                    })
                    .collect()
            })
            .collect();
        IMat::from_rows(&rows)
    }

    /// Matrix of `s_beta` on the finite lattice.
    pub fn finite_reflection(&self, beta: &[i64]) -> IMat {
        let n = self.n();
        let cb = self.cartan.mul_vec(beta);
        let mut m = IMat::identity(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] -= beta[i] * cb[j];
            }
        }
        m
    }
}

fn cartan_det(c: &IMat) -> i64 {
    let mut m = c.to_q();
    let n = m.len();
    let mut det = q(1);
    for col in 0..n {
        let p = (col..n).find(|&r| m[r][col] != q(0)).expect("nonsingular");
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for j in col..n {
                let d = f * m[col][j];
                m[r][j] -= d;
            }
        }
    }
    det.to_integer() as i64
}

fn close_under_simple_reflections(cartan: &IMat) -> Vec<Vec<i64>> {
    let n = cartan.rows();
    let mut seen: Vec<Vec<i64>> = Vec::new();
    let mut index = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if index.insert(e.clone()) {
            queue.push_back(e.clone());
            seen.push(e);
        }
    }
    while let Some(r) = queue.pop_front() {
        let cr = cartan.mul_vec(&r);
        for i in 0..n {
            let mut img = r.clone();
            img[i] -= cr[i];
            if index.insert(img.clone()) {
                queue.push_back(img.clone());
                seen.push(img);
            }
        }
    }
    seen.sort();
    seen
}

pub fn root_system(kind: Kind) -> &'static RootSystem {
    static CACHE: [OnceLock<RootSystem>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CACHE[kind.slot()].get_or_init(|| RootSystem::build(kind))
}

/// The full finite root system as roots with `k = l = 0`.
pub fn finite_roots(kind: Kind) -> Vec<RootVector> {
    root_system(kind).roots().iter().map(|b| RootVector::finite(b.clone())).collect()
}

pub fn highest_root(kind: Kind) -> RootVector {
    RootVector::finite(root_system(kind).highest_root().to_vec())
}

/// `[alpha_1..alpha_n, alpha_0, alpha_{t*}]` with `alpha_0 = -highest + b`
/// and `alpha_{t*} = alpha_t + a`, stored with their true signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllipticBasis {
    pub kind: Kind,
    pub alpha: Vec<RootVector>,
}

impl EllipticBasis {
    pub fn alpha_0(&self) -> &RootVector {
        &self.alpha[self.alpha.len() - 2]
    }

    pub fn alpha_t_star(&self) -> &RootVector {
        &self.alpha[self.alpha.len() - 1]
    }
}

pub fn elliptic_basis(kind: Kind) -> EllipticBasis {
    let rs = root_system(kind);
    let n = rs.n();
    let mut alpha: Vec<RootVector> = (1..=n).map(|i| RootVector::simple(n, i)).collect();
    alpha.push(highest_root(kind).negated().plus_radical(0, 1));
    alpha.push(RootVector::simple(n, rs.ty.t).plus_radical(1, 0));
    EllipticBasis { kind, alpha }
}

pub fn is_root(kind: Kind, gamma: &RootVector) -> bool {
    root_system(kind).is_finite_root(&gamma.beta)
}

/// Pairing of two elliptic roots in V (the radical drops out).
pub fn pairing(kind: Kind, x: &RootVector, y: &RootVector) -> i64 {
    root_system(kind).pair(&x.beta, &y.beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Node {
    /// `alpha_i` for `0 <= i <= n`.
    Simple(usize),
    TStar,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Simple(i) => write!(f, "{i}"),
            Node::TStar => write!(f, "t*"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeKind {
    Single,
    DottedDouble,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramEdge {
    pub from: Node,
    pub to: Node,
    pub edge: EdgeKind,
}

/// Elliptic Dynkin diagram on `{0..n, t*}`.
pub fn elliptic_diagram(kind: Kind) -> Vec<DiagramEdge> {
    let basis = elliptic_basis(kind);
    let n = kind.rank();
    let node = |i: usize| match i {
        i if i < n => Node::Simple(i + 1),
        i if i == n => Node::Simple(0),
        _ => Node::TStar,
    };
    let mut edges = Vec::new();
    for i in 0..basis.alpha.len() {
        for j in i + 1..basis.alpha.len() {
            let p = pairing(kind, &basis.alpha[i], &basis.alpha[j]);
            let edge = match p {
                0 => continue,
                -1 => EdgeKind::Single,
                2 => EdgeKind::DottedDouble,
                other => unreachable!("unexpected pairing {other} in a tubular basis"),
            };
            let (a, b) = (node(i), node(j));
            let (from, to) = if a <= b { (a, b) } else { (b, a) };
            edges.push(DiagramEdge { from, to, edge });
        }
    }
    edges.sort_by_key(|e| (e.from, e.to));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let d4 = finite_type_data(Kind::D4);
        assert_eq!((d4.n, d4.t, d4.m_t), (4, 2, 2));
        assert_eq!(d4.marks, vec![1, 2, 1, 1]);
        let e6 = finite_type_data(Kind::E6);
        assert_eq!((e6.t, e6.m_t), (4, 3));
        let e7 = finite_type_data(Kind::E7);
        assert_eq!((e7.t, e7.m_t), (4, 4));
        let e8 = finite_type_data(Kind::E8);
        assert_eq!((e8.n, e8.t, e8.m_t), (8, 4, 6));
    }

    #[test]
    fn root_counts() {
        let expect = [(Kind::D4, 24), (Kind::E6, 72), (Kind::E7, 126), (Kind::E8, 240)];
        for (kind, count) in expect {
            let rs = root_system(kind);
            assert_eq!(rs.roots().len(), count, "{kind}");
            assert_eq!(rs.positive_roots().len(), count / 2);
            for r in rs.roots() {
                assert_eq!(rs.pair(r, r), 2);
            }
        }
    }

    #[test]
    fn simple_roots_are_members() {
        for kind in Kind::ALL {
            let n = kind.rank();
            for i in 1..=n {
                assert!(is_root(kind, &RootVector::simple(n, i)));
            }
        }
    }

    #[test]
    fn highest_root_is_maximal() {
        for kind in Kind::ALL {
            let rs = root_system(kind);
            let h = rs.highest_root().to_vec();
            for i in 0..rs.n() {
                let mut up = h.clone();
                up[i] += 1;
                assert!(!rs.is_finite_root(&up));
            }
            assert_eq!(rs.pair(&h, &h), 2);
        }
        assert_eq!(highest_root(Kind::D4).beta, vec![1, 2, 1, 1]);
    }

    #[test]
    fn is_root_examples() {
        let a1 = RootVector::simple(4, 1);
        assert!(is_root(Kind::D4, &a1.clone().plus_radical(5, -3)));
        assert!(!is_root(Kind::D4, &RootVector::finite(vec![2, 0, 0, 0])));
        assert!(is_root(Kind::D4, &RootVector::new(vec![1, 1, 0, 0], 1, 1)));
        assert!(!is_root(Kind::D4, &RootVector::finite(vec![1, 0, 1, 0])));
    }

    #[test]
    fn elliptic_basis_shape() {
        let b = elliptic_basis(Kind::D4);
        assert_eq!(b.alpha_0(), &RootVector::new(vec![-1, -2, -1, -1], 0, 1));
        assert_eq!(b.alpha_0().canonical(), RootVector::new(vec![1, 2, 1, 1], 0, -1));
        assert_eq!(b.alpha_t_star(), &RootVector::new(vec![0, 1, 0, 0], 1, 0));
        let e7 = elliptic_basis(Kind::E7);
        assert_eq!(e7.alpha_t_star(), &RootVector::simple(7, 4).plus_radical(1, 0));
        for kind in Kind::ALL {
            let b = elliptic_basis(kind);
            let t = finite_type_data(kind).t;
            let diff = b.alpha_t_star().clone();
            assert_eq!(diff.beta, b.alpha[t - 1].beta);
            assert_eq!((diff.k - b.alpha[t - 1].k, diff.l - b.alpha[t - 1].l), (1, 0));
        }
    }

    #[test]
    fn canonical_sign() {
        let r = RootVector::new(vec![0, -1, -1, 0], 2, -1);
        let c = r.canonical();
        assert!(c.is_canonical());
        assert_eq!(c, RootVector::new(vec![0, 1, 1, 0], -2, 1));
        assert_eq!(c.canonical(), c);
    }

    #[test]
    fn diagram_d4() {
        let edges = elliptic_diagram(Kind::D4);
        assert!(edges.contains(&DiagramEdge {
            from: Node::Simple(2),
            to: Node::TStar,
            edge: EdgeKind::DottedDouble
        }));
        assert!(edges.iter().all(|e| e.from != e.to));
    }

    #[test]
    fn t_star_mirrors_t() {
        for kind in Kind::ALL {
            let t = finite_type_data(kind).t;
            let edges = elliptic_diagram(kind);
            let nbrs = |v: Node| -> Vec<Node> {
                let mut out: Vec<Node> = edges
                    .iter()
                    .filter(|e| e.edge == EdgeKind::Single)
                    .filter_map(|e| {
                        if e.from == v {
                            Some(e.to)
                        } else if e.to == v {
                            Some(e.from)
                        } else {
                            None
                        }
                    })
                    .collect();
                out.sort();
                out
            };
            assert_eq!(nbrs(Node::TStar), nbrs(Node::Simple(t)), "{kind}");
            let dotted: Vec<_> =
                edges.iter().filter(|e| e.edge == EdgeKind::DottedDouble).collect();
            assert_eq!(dotted.len(), 1);
        }
    }

    #[test]
    fn diagram_connected() {
        for kind in Kind::ALL {
            let edges = elliptic_diagram(kind);
            let n = kind.rank();
            let mut reached = std::collections::BTreeSet::from([Node::Simple(0)]);
            loop {
                let before = reached.len();
                for e in &edges {
                    if reached.contains(&e.from) || reached.contains(&e.to) {
                        reached.insert(e.from);
                        reached.insert(e.to);
                    }
                }
                if reached.len() == before {
                    break;
                }
            }
            assert_eq!(reached.len(), n + 2, "{kind}");
        }
    }
}
