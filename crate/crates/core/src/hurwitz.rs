//! Hurwitz action of the braid group on reflection factorizations.
//!
//! A factorization is stored as a list of canonical-sign elliptic roots;
//! the reflection of a root does not depend on its sign. Generator `i`
//! (1-based) acts on positions `i, i+1` by
//! `(g_i, g_{i+1}) -> (g_{i+1}, g_{i+1}^{-1} g_i g_{i+1})`, its inverse by
//! `(g_i, g_{i+1}) -> (g_i g_{i+1} g_i^{-1}, g_i)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::group::{
    coxeter_roots, product_triple, reflection_triple, GroupError, GroupMatrix, Triple,
};
use crate::rootsys::{finite_roots, is_root, root_system, Kind, RootVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HurwitzError {
    #[error("generator index {index} out of range for a tuple of length {len}")]
    IndexOutOfRange { index: i32, len: usize },
    #[error("tuples have different products")]
    ProductMismatch,
    #[error("tuples have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("tuples belong to different root systems")]
    KindMismatch,
    #[error("tuple does not have the required shape: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Compact canonical root: positive finite root index plus radical part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct CRoot {
    pub idx: u16,
    pub k: i32,
    pub l: i32,
}

impl CRoot {
    pub(crate) fn from_root(kind: Kind, r: &RootVector) -> Option<CRoot> {
        let c = r.canonical();
        let idx = root_system(kind).positive_index(&c.beta)?;
        let k = i32::try_from(c.k).ok()?;
        let l = i32::try_from(c.l).ok()?;
        Some(CRoot { idx: idx as u16, k, l })
    }

    pub(crate) fn to_root(self, kind: Kind) -> RootVector {
        let beta = root_system(kind).positive_root(self.idx as usize).to_vec();
        RootVector::new(beta, self.k as i64, self.l as i64)
    }

    fn radical_max(self) -> i64 {
        (self.k as i64).abs().max((self.l as i64).abs())
    }

    /// `s_self(other)`, canonicalized.
    fn reflect(self, kind: Kind, other: CRoot) -> CRoot {
        let rs = root_system(kind);
        let p = rs.pair_positive(self.idx as usize, other.idx as usize) as i32;
        let (idx, neg) = rs.reflect_positive(self.idx as usize, other.idx as usize);
        let shift = |x: i32, y: i32| {
            p.checked_mul(y).and_then(|py| x.checked_sub(py)).expect("radical coefficient overflow")
        };
        let k = shift(other.k, self.k);
        let l = shift(other.l, self.l);
        if neg {
            CRoot { idx: idx as u16, k: -k, l: -l }
        } else {
            CRoot { idx: idx as u16, k, l }
        }
    }
}

pub(crate) type State = Box<[CRoot]>;

fn apply_move(kind: Kind, s: &mut [CRoot], g: i32) {
    let i = g.unsigned_abs() as usize - 1;
    let (x, y) = (s[i], s[i + 1]);
    if g > 0 {
        s[i] = y;
        s[i + 1] = y.reflect(kind, x);
    } else {
        s[i] = x.reflect(kind, y);
        s[i + 1] = x;
    }
}

fn state_bound(s: &[CRoot]) -> i64 {
    s.iter().map(|r| r.radical_max()).max().unwrap_or(0)
}

/// An ordered reflection factorization with its cached product in W̃.
#[derive(Clone, Debug)]
pub struct ReflTuple {
    kind: Kind,
    entries: Vec<RootVector>,
    product: Triple,
}

impl PartialEq for ReflTuple {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.entries == other.entries
    }
}

impl Eq for ReflTuple {}

impl std::hash::Hash for ReflTuple {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.entries.hash(state);
    }
}

impl ReflTuple {
    pub fn new(kind: Kind, entries: Vec<RootVector>) -> Result<Self, HurwitzError> {
        for r in &entries {
            if r.beta.len() != kind.rank() || !is_root(kind, r) {
                return Err(GroupError::NotRoot(r.clone()).into());
            }
        }
        let entries: Vec<RootVector> = entries.iter().map(RootVector::canonical).collect();
        let product = product_triple(kind, &entries)?;
        Ok(ReflTuple { kind, entries, product })
    }

    pub(crate) fn from_state(kind: Kind, s: &[CRoot], product: &Triple) -> Self {
        ReflTuple {
            kind,
            entries: s.iter().map(|r| r.to_root(kind)).collect(),
            product: product.clone(),
        }
    }

    pub(crate) fn state(&self) -> State {
        self.entries
            .iter()
            .map(|r| CRoot::from_root(self.kind, r).expect("entries are roots of moderate height"))
            .collect()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn entries(&self) -> &[RootVector] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn product(&self) -> &Triple {
        &self.product
    }

    /// Largest `|k|` or `|l|` among the entries.
    pub fn coeff_max(&self) -> i64 {
        self.entries.iter().map(|r| r.k.abs().max(r.l.abs())).max().unwrap_or(0)
    }

    /// Images of the entries in W.
    pub fn phi(&self) -> Vec<GroupMatrix> {
        self.entries
            .iter()
            .map(|r| reflection_triple(self.kind, r).expect("entries are roots").phi())
            .collect()
    }

    /// Product recomputed from the entries, ignoring the cache.
    pub fn recompute_product(&self) -> Triple {
        product_triple(self.kind, &self.entries).expect("entries are roots")
    }
}

impl fmt::Display for ReflTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for ReflTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct J<'a> {
            kind: Kind,
            entries: &'a [RootVector],
        }
        J { kind: self.kind, entries: &self.entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ReflTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct J {
            kind: Kind,
            entries: Vec<RootVector>,
        }
        let j = J::deserialize(d)?;
        ReflTuple::new(j.kind, j.entries).map_err(serde::de::Error::custom)
    }
}

/// A braid word as signed 1-based generator indices, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BraidWord(pub Vec<i32>);

impl BraidWord {
    pub fn new(gens: Vec<i32>) -> Self {
        BraidWord(gens)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().map(|g| -g).collect())
    }

    pub fn then(&self, other: &BraidWord) -> BraidWord {
        BraidWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn check(&self, len: usize) -> Result<(), HurwitzError> {
        match self.0.iter().find(|&&g| g == 0 || g.unsigned_abs() as usize >= len) {
            Some(&g) => Err(HurwitzError::IndexOutOfRange { index: g, len }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&g| if g > 0 { format!("s{g}") } else { format!("s{}^-1", -g) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// One Hurwitz move; `direction` is `+1` or `-1`.
pub fn sigma(i: usize, t: &ReflTuple, direction: i32) -> Result<ReflTuple, HurwitzError> {
    let g = i as i32 * direction.signum();
    if direction == 0 {
        return Err(HurwitzError::IndexOutOfRange { index: 0, len: t.len() });
    }
    apply_braid(&BraidWord(vec![g]), t)
}

pub fn apply_braid(w: &BraidWord, t: &ReflTuple) -> Result<ReflTuple, HurwitzError> {
    w.check(t.len())?;
    let mut s = t.state();
    for &g in &w.0 {
        apply_move(t.kind, &mut s, g);
    }
    Ok(ReflTuple::from_state(t.kind, &s, &t.product))
}

/// Applies a braid word to a tuple of reflections in W, conjugating matrices.
pub fn apply_braid_matrices(
    w: &BraidWord,
    t: &[GroupMatrix],
) -> Result<Vec<GroupMatrix>, HurwitzError> {
    w.check(t.len())?;
    let mut s = t.to_vec();
    for &g in &w.0 {
        let i = g.unsigned_abs() as usize - 1;
        let (x, y) = (s[i].clone(), s[i + 1].clone());
        if g > 0 {
            s[i + 1] = x.conjugate_by(&y);
            s[i] = y;
        } else {
            s[i] = y.conjugate_by(&x.inverse());
            s[i + 1] = x;
        }
    }
    Ok(s)
}

/// `(s_1, .., ^s_t, .., s_n, s_0, s_t, s_{t*})`, a reduced factorization of
/// the Coxeter transformation.
pub fn standard_tuple(kind: Kind) -> ReflTuple {
    ReflTuple::new(kind, coxeter_roots(kind)).expect("basis roots are roots")
}

/// Result of a bounded breadth-first exploration of a Hurwitz orbit.
#[derive(Clone, Debug)]
pub struct OrbitCensus {
    kind: Kind,
    seed: ReflTuple,
    coeff_bound: i64,
    effective_bound: i64,
    states: Vec<State>,
    depths: Vec<u32>,
    index: HashMap<State, u32>,
    truncations: u64,
    complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub kind: Kind,
    pub bound: i64,
    pub effective_bound: i64,
    pub states: usize,
    pub truncations: u64,
    pub max_depth: u32,
    pub complete: bool,
}

#[derive(Serialize)]
struct CensusLine<'a> {
    entries: &'a [RootVector],
    depth: u32,
}

impl OrbitCensus {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn seed(&self) -> &ReflTuple {
        &self.seed
    }

    pub fn coeff_bound(&self) -> i64 {
        self.coeff_bound
    }

    /// The bound actually enforced: never below the seed's own coefficients.
    pub fn effective_bound(&self) -> i64 {
        self.effective_bound
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn truncations(&self) -> u64 {
        self.truncations
    }

    /// False when `max_states` stopped the exploration early.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn product(&self) -> &Triple {
        self.seed.product()
    }

    pub fn tuple(&self, i: usize) -> ReflTuple {
        ReflTuple::from_state(self.kind, &self.states[i], self.seed.product())
    }

    pub fn depth(&self, i: usize) -> u32 {
        self.depths[i]
    }

    pub fn tuples(&self) -> impl Iterator<Item = ReflTuple> + '_ {
        (0..self.states.len()).map(|i| self.tuple(i))
    }

    pub fn contains(&self, t: &ReflTuple) -> bool {
        t.kind == self.kind && self.index.contains_key(&t.state())
    }

    pub(crate) fn states(&self) -> &[State] {
        &self.states
    }

    pub fn summary(&self) -> CensusSummary {
        CensusSummary {
            kind: self.kind,
            bound: self.coeff_bound,
            effective_bound: self.effective_bound,
            states: self.states.len(),
            truncations: self.truncations,
            max_depth: self.depths.iter().copied().max().unwrap_or(0),
            complete: self.complete,
        }
    }

    /// One JSON object `{entries, depth}` per line, in discovery order.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for i in 0..self.states.len() {
            let t = self.tuple(i);
            let line = CensusLine { entries: t.entries(), depth: self.depths[i] };
            serde_json::to_writer(&mut out, &line)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Breadth-first closure of `seed` under all `sigma_i^{+-1}`.
///
/// States containing a root with `|k|` or `|l|` above the effective bound are
/// not stored; each such expansion counts as one truncation. Levels are
/// expanded in parallel and merged in a fixed order, so the census does not
/// depend on the thread count.
pub fn orbit_explore(seed: &ReflTuple, coeff_bound: i64, max_states: usize) -> OrbitCensus {
    let kind = seed.kind;
    let effective_bound = coeff_bound.max(seed.coeff_max());
    let len = seed.len();
    let start = seed.state();
    let mut states = vec![start.clone()];
    let mut depths = vec![0u32];
    let mut index = HashMap::new();
    index.insert(start, 0u32);
    let mut truncations = 0u64;
    let mut complete = true;
    let mut level_start = 0usize;
    let mut depth = 0u32;
    let gens: Vec<i32> = (1..len as i32).flat_map(|g| [g, -g]).collect();
    'outer: while level_start < states.len() {
        let level_end = states.len();
        let expanded: Vec<(Vec<State>, u64)> = states[level_start..level_end]
            .par_iter()
            .map(|s| {
                let mut out = Vec::with_capacity(gens.len());
                let mut cut = 0;
                for &g in &gens {
                    let mut next = s.clone();
                    apply_move(kind, &mut next, g);
                    if state_bound(&next) > effective_bound {
                        cut += 1;
                    } else {
                        out.push(next);
                    }
                }
                (out, cut)
            })
            .collect();
        depth += 1;
        for (nexts, cut) in expanded {
            truncations += cut;
            for next in nexts {
                if index.contains_key(&next) {
                    continue;
                }
                if states.len() >= max_states {
                    complete = false;
                    break 'outer;
                }
                index.insert(next.clone(), states.len() as u32);
                states.push(next);
                depths.push(depth);
            }
        }
        level_start = level_end;
    }
    OrbitCensus {
        kind,
        seed: seed.clone(),
        coeff_bound,
        effective_bound,
        states,
        depths,
        index,
        truncations,
        complete,
    }
}

/// Runs `orbit_explore` on a dedicated pool of `threads` workers.
pub fn orbit_explore_threads(
    seed: &ReflTuple,
    coeff_bound: i64,
    max_states: usize,
    threads: usize,
) -> OrbitCensus {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| orbit_explore(seed, coeff_bound, max_states))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectResult {
    Found(BraidWord),
    /// Search space exhausted within the bounds; not a disproof.
    Inconclusive { explored: usize },
}

/// Bidirectional breadth-first search for a braid word taking `from` to `to`.
pub fn connect_search(
    from: &ReflTuple,
    to: &ReflTuple,
    coeff_bound: i64,
    max_states: usize,
) -> Result<ConnectResult, HurwitzError> {
    if from.kind != to.kind {
        return Err(HurwitzError::KindMismatch);
    }
    if from.len() != to.len() {
        return Err(HurwitzError::LengthMismatch(from.len(), to.len()));
    }
    if from.product != to.product {
        return Err(HurwitzError::ProductMismatch);
    }
    let kind = from.kind;
    let bound = coeff_bound.max(from.coeff_max()).max(to.coeff_max());
    let len = from.len();
    let gens: Vec<i32> = (1..len as i32).flat_map(|g| [g, -g]).collect();

    struct Side {
        states: Vec<State>,
        parent: Vec<(u32, i32)>,
        index: HashMap<State, u32>,
        frontier: VecDeque<u32>,
    }
    impl Side {
        fn new(s: State) -> Self {
            let mut index = HashMap::new();
            index.insert(s.clone(), 0);
            Side { states: vec![s], parent: vec![(0, 0)], index, frontier: VecDeque::from([0]) }
        }
        fn path(&self, mut i: u32) -> Vec<i32> {
            let mut out = Vec::new();
            while i != 0 {
                let (p, g) = self.parent[i as usize];
                out.push(g);
                i = p;
            }
            out.reverse();
            out
        }
    }

    let mut fwd = Side::new(from.state());
    let mut bwd = Side::new(to.state());
    if let Some(&j) = bwd.index.get(&fwd.states[0]) {
        debug_assert_eq!(j, 0);
        return Ok(ConnectResult::Found(BraidWord::default()));
    }
    loop {
        let explored = fwd.states.len() + bwd.states.len();
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() || explored >= max_states {
            return Ok(ConnectResult::Inconclusive { explored });
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (side, other) = if forward { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
        let level: Vec<u32> = side.frontier.drain(..).collect();
        for i in level {
            for &g in &gens {
                let mut next = side.states[i as usize].clone();
                apply_move(kind, &mut next, g);
                if state_bound(&next) > bound || side.index.contains_key(&next) {
                    continue;
                }
                let id = side.states.len() as u32;
                side.index.insert(next.clone(), id);
                side.parent.push((i, g));
                side.frontier.push_back(id);
                if let Some(&j) = other.index.get(&next) {
                    let (fi, bj) = if forward { (id, j) } else { (j, id) };
                    let mut word = fwd.path(fi);
                    word.extend(BraidWord(bwd.path(bj)).inverse().0);
                    let word = BraidWord(word);
                    debug_assert_eq!(apply_braid(&word, from).ok().as_ref(), Some(to));
                    return Ok(ConnectResult::Found(word));
                }
                side.states.push(next);
            }
        }
    }
}

/// The braid `tau` of the D4 computation, in application order.
pub fn d4_tau() -> BraidWord {
    BraidWord(vec![4, 3, 2, 1, 5, 4, 3, 2, 2, 1, 3, 2, 4, 3, 5, 4])
}

/// The inner factor of `tau`, applied first.
pub fn d4_tau_inner() -> BraidWord {
    BraidWord(vec![4, 3, 2, 1, 5, 4, 3, 2])
}

fn d4_root(beta: [i64; 4], k: i64, l: i64) -> RootVector {
    RootVector::new(beta.to_vec(), k, l)
}

/// `(a_1 - a, a_3 - a, a_4 - a, h - b + a, a_2 - b, a_2 - b - a)` in D4.
pub fn d4_tau_seed() -> ReflTuple {
    ReflTuple::new(
        Kind::D4,
        vec![
            d4_root([1, 0, 0, 0], -1, 0),
            d4_root([0, 0, 1, 0], -1, 0),
            d4_root([0, 0, 0, 1], -1, 0),
            d4_root([1, 2, 1, 1], 1, -1),
            d4_root([0, 1, 0, 0], 0, -1),
            d4_root([0, 1, 0, 0], -1, -1),
        ],
    )
    .expect("roots")
}

/// `(a_2 - b, a_2 - b - a, a_1, a_3, a_4, h - b)` in D4.
pub fn d4_tau_middle() -> ReflTuple {
    ReflTuple::new(
        Kind::D4,
        vec![
            d4_root([0, 1, 0, 0], 0, -1),
            d4_root([0, 1, 0, 0], -1, -1),
            d4_root([1, 0, 0, 0], 0, 0),
            d4_root([0, 0, 1, 0], 0, 0),
            d4_root([0, 0, 0, 1], 0, 0),
            d4_root([1, 2, 1, 1], 0, -1),
        ],
    )
    .expect("roots")
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoOrbitWitness {
    /// Roots of the displayed factorization.
    pub tuple: ReflTuple,
    pub product: Triple,
    pub coxeter: Triple,
    pub differs_from_coxeter: bool,
    /// The product equals `c~ z^{-1}`.
    pub differs_by_central: bool,
    pub phi_product_is_c: bool,
    /// The same word read with unshifted first three reflections.
    pub unshifted_product: Triple,
    pub unshifted_phi_is_c: bool,
}

/// The D4 factorization whose image in W multiplies to `c` while its lift
/// does not multiply to `c~`.
///
/// The first three factors are the triples `(s_i, 0, -alpha_i)`, i.e. the
/// reflections in `alpha_i - a`.
pub fn d4_two_orbit_witness() -> TwoOrbitWitness {
    let kind = Kind::D4;
    let shifted = vec![
        d4_root([1, 0, 0, 0], -1, 0),
        d4_root([0, 0, 1, 0], -1, 0),
        d4_root([0, 0, 0, 1], -1, 0),
        d4_root([1, 2, 1, 1], 1, -1),
        d4_root([0, 1, 0, 0], 0, 0),
        d4_root([0, 1, 0, 0], -1, 0),
    ];
    let mut unshifted = shifted.clone();
    for r in unshifted.iter_mut().take(3) {
        r.k = 0;
    }
    let tuple = ReflTuple::new(kind, shifted).expect("roots");
    let product = tuple.product().clone();
    let coxeter = standard_tuple(kind).product().clone();
    let c = coxeter.phi();
    let unshifted_product = product_triple(kind, &unshifted).expect("roots");
    let z_inv = crate::group::central_z(kind).inverse();
    TwoOrbitWitness {
        differs_from_coxeter: product != coxeter,
        differs_by_central: product == coxeter.mul(&z_inv),
        phi_product_is_c: product.phi() == c,
        unshifted_phi_is_c: unshifted_product.phi() == c,
        unshifted_product,
        tuple,
        product,
        coxeter,
    }
}

/// Data of a tuple of the normalized shape
/// `(a_i + k_i a (i != t), h - b + kbar a, beta + k a + l b, beta + k' a + l b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeData {
    pub k_i: Vec<i64>,
    pub k_bar: i64,
    pub beta: Vec<i64>,
    pub k: i64,
    pub k_prime: i64,
    pub ell: i64,
}

/// Matches the normalized shape, accepting either sign on each entry.
pub fn tau12_shape(t: &ReflTuple) -> Option<ShapeData> {
    let kind = t.kind;
    let rs = root_system(kind);
    let n = rs.n();
    let tt = rs.ty.t;
    if t.len() != n + 2 {
        return None;
    }
    let e = t.entries();
    let mut k_i = Vec::with_capacity(n - 1);
    for (pos, i) in (1..=n).filter(|&i| i != tt).enumerate() {
        let r = &e[pos];
        if r.beta != RootVector::simple(n, i).beta || r.l != 0 {
            return None;
        }
        k_i.push(r.k);
    }
    let r0 = &e[n - 1];
    if r0.beta != rs.highest_root() || r0.l != -1 {
        return None;
    }
    let (x, y) = (&e[n], &e[n + 1]);
    if x.beta != y.beta || x.l != y.l {
        return None;
    }
    Some(ShapeData {
        k_i,
        k_bar: r0.k,
        beta: x.beta.clone(),
        k: x.k,
        k_prime: y.k,
        ell: x.l,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaTReport {
    pub lambda_t: i64,
    pub ell: i64,
    pub x: i64,
    pub valid: bool,
}

/// Extracts `(lambda_t, l, x = k' - k)` and tests it against
/// `{(1, 0, 1), (m_t - 1, -1, -1)}`.
pub fn lambda_t_check(t: &ReflTuple) -> Result<LambdaTReport, HurwitzError> {
    let shape = tau12_shape(t)
        .ok_or_else(|| HurwitzError::ShapeMismatch("not of the normalized shape".into()))?;
    if t.product() != standard_tuple(t.kind).product() {
        return Err(HurwitzError::ProductMismatch);
    }
    let rs = root_system(t.kind);
    let lambda_t = shape.beta[rs.ty.t - 1];
    let x = shape.k_prime - shape.k;
    let triple = (lambda_t, shape.ell, x);
    let valid = triple == (1, 0, 1) || triple == (rs.ty.m_t - 1, -1, -1);
    Ok(LambdaTReport { lambda_t, ell: shape.ell, x, valid })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugationOrbit {
    pub kind: Kind,
    pub coeff_bound: i64,
    /// Reached roots (canonical sign) with their distance from `alpha_t`.
    pub reached: Vec<(RootVector, u32)>,
    /// Positive finite roots with `lambda_t = 1`, all of which must be reached.
    pub lambda_t_one: Vec<Vec<i64>>,
    pub all_lambda_t_one_reached: bool,
    /// Positive finite roots with `lambda_t = m_t - 1`.
    pub lambda_t_top: Vec<Vec<i64>>,
    /// Each `lambda_t = m_t - 1` root has coefficient 1 at the neighbour of
    /// the highest root (meaningful for the E types).
    pub top_has_unit_neighbor: bool,
}

/// Orbit of `alpha_t` under conjugation by
/// `P = <s_h, s_1, .., ^s_t, .., s_n>`.
///
/// These generators are finite reflections, so the radical coefficients
/// of `alpha_t` never change and `coeff_bound` only filters the report.
pub fn p_conjugation_orbit(kind: Kind, coeff_bound: i64) -> ConjugationOrbit {
    let rs = root_system(kind);
    let n = rs.n();
    let t = rs.ty.t;
    let mut gens: Vec<Vec<i64>> =
        (1..=n).filter(|&i| i != t).map(|i| RootVector::simple(n, i).beta).collect();
    gens.push(rs.highest_root().to_vec());
    let start = RootVector::simple(n, t);
    let mut dist: HashMap<RootVector, u32> = HashMap::from([(start.clone(), 0)]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        let d = dist[&r];
        for g in &gens {
            let p = rs.pair(g, &r.beta);
            let img = RootVector::new(
                r.beta.iter().zip(g).map(|(x, y)| x - p * y).collect(),
                r.k,
                r.l,
            )
            .canonical();
            if img.k.abs().max(img.l.abs()) > coeff_bound.max(0) || dist.contains_key(&img) {
                continue;
            }
            dist.insert(img.clone(), d + 1);
            order.push(img.clone());
            queue.push_back(img);
        }
    }
    let positives = rs.positive_roots();
    let lambda_t_one: Vec<Vec<i64>> =
        positives.iter().filter(|b| b[t - 1] == 1).cloned().collect();
    let all_lambda_t_one_reached =
        lambda_t_one.iter().all(|b| dist.contains_key(&RootVector::finite(b.clone())));
    let lambda_t_top: Vec<Vec<i64>> =
        positives.iter().filter(|b| b[t - 1] == rs.ty.m_t - 1).cloned().collect();
    let j = rs.ty.affine_neighbor;
    let top_has_unit_neighbor = lambda_t_top.iter().all(|b| b[j - 1] == 1);
    let reached = order.into_iter().map(|r| {
        let d = dist[&r];
        (r, d)
    });
    ConjugationOrbit {
        kind,
        coeff_bound,
        reached: reached.collect(),
        lambda_t_one,
        all_lambda_t_one_reached,
        lambda_t_top,
        top_has_unit_neighbor,
    }
}

/// Canonical finite roots of a kind, convenient for sampling.
pub fn canonical_finite_roots(kind: Kind) -> Vec<RootVector> {
    let mut v: Vec<RootVector> =
        finite_roots(kind).into_iter().filter(RootVector::is_canonical).collect();
    v.sort();
    v
}
