//! The absolute-order interval below the Coxeter transformation, as far as
//! it is discovered by prefixes of explored reduced factorizations.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::group::{reflection_triple, Triple};
use crate::hurwitz::{OrbitCensus, ReflTuple};
use crate::rootsys::{Kind, RootVector};
use crate::scherk::{hex16, scherk_length_triple, verify_reduced};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("factorization is not certified reduced")]
    NotReduced,
    #[error("unsupported export format `{0}` (expected json or dot)")]
    UnsupportedFormat(String),
    #[error("malformed poset export: {0}")]
    Malformed(String),
}

/// Where an element was seen: factorization index in the census and cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub factorization: usize,
    pub cut: usize,
}

/// Witnesses kept per node; the total is tracked separately.
const WITNESS_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalElement {
    pub element: Triple,
    pub length: usize,
    pub witnesses: Vec<Witness>,
}

/// `id, t_1, t_1 t_2, .., t_1 .. t_r` with their lengths.
pub fn prefixes_of(t: &ReflTuple) -> Result<Vec<IntervalElement>, IntervalError> {
    if !verify_reduced(t).is_reduced() {
        return Err(IntervalError::NotReduced);
    }
    let mut acc = Triple::identity(t.kind());
    let mut out = vec![IntervalElement { element: acc.clone(), length: 0, witnesses: Vec::new() }];
    for (i, r) in t.entries().iter().enumerate() {
        acc = acc.mul(&reflection_triple(t.kind(), r).expect("entries are roots"));
        out.push(IntervalElement { element: acc.clone(), length: i + 1, witnesses: Vec::new() });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetNode {
    pub id: String,
    pub element: IntervalElement,
    pub witness_count: u64,
    pub scherk_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cover {
    pub from: usize,
    pub to: usize,
    /// Reflection taking `from` to `to` by right multiplication.
    pub root: RootVector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetStats {
    pub nodes: usize,
    pub covers: usize,
    pub levels: usize,
    /// Nodes whose Scherk length equals their length.
    pub scherk_equal: usize,
    pub scherk_below: usize,
    /// Elements reached at two different lengths (expected to be zero).
    pub length_conflicts: usize,
}

/// Nodes sorted by `(length, serialized element)`; covers index into them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPoset {
    kind: Kind,
    bound: i64,
    complete: bool,
    nodes: Vec<PosetNode>,
    covers: Vec<Cover>,
    up: Vec<Vec<usize>>,
    index: HashMap<Triple, usize>,
    length_conflicts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum Leq {
    /// `y = x t_1 .. t_k` with the listed reflections.
    Yes { witness: Vec<RootVector> },
    /// No chain in a complete census.
    NoInCensus,
    /// No chain found, census truncated.
    Unknown,
}

pub fn build_poset(census: &OrbitCensus) -> Result<IntervalPoset, IntervalError> {
    if !verify_reduced(census.seed()).is_reduced() {
        return Err(IntervalError::NotReduced);
    }
    let kind = census.kind();
    let mut refl_cache: HashMap<_, Triple> = HashMap::new();
    for s in census.states() {
        for &r in s.iter() {
            refl_cache
                .entry(r)
                .or_insert_with(|| reflection_triple(kind, &r.to_root(kind)).expect("root"));
        }
    }
    let prefix_lists: Vec<Vec<Triple>> = census
        .states()
        .par_iter()
        .map(|s| {
            let mut acc = Triple::identity(kind);
            let mut out = Vec::with_capacity(s.len());
            for r in s.iter() {
                acc = acc.mul(&refl_cache[r]);
                out.push(acc.clone());
            }
            out
        })
        .collect();

    struct Raw {
        length: usize,
        witnesses: Vec<Witness>,
        count: u64,
    }
    let mut raw: HashMap<Triple, usize> = HashMap::new();
    let mut elems: Vec<(Triple, Raw)> = Vec::new();
    let mut conflicts = 0usize;
    let mut edges: Vec<(usize, usize, RootVector)> = Vec::new();
    let mut intern = |t: &Triple, length: usize, w: Witness, elems: &mut Vec<(Triple, Raw)>| {
        let id = *raw.entry(t.clone()).or_insert_with(|| {
            elems.push((t.clone(), Raw { length, witnesses: Vec::new(), count: 0 }));
            elems.len() - 1
        });
        let r = &mut elems[id].1;
        if r.length != length {
            conflicts += 1;
        }
        r.count += 1;
        if r.witnesses.len() < WITNESS_CAP {
            r.witnesses.push(w);
        }
        id
    };
    let identity = Triple::identity(kind);
    for (f, prefixes) in prefix_lists.iter().enumerate() {
        let mut prev = intern(&identity, 0, Witness { factorization: f, cut: 0 }, &mut elems);
        for (i, p) in prefixes.iter().enumerate() {
            let cur = intern(p, i + 1, Witness { factorization: f, cut: i + 1 }, &mut elems);
            let root = census.states()[f][i].to_root(kind);
            edges.push((prev, cur, root));
            prev = cur;
        }
    }

    let keys: Vec<String> = elems.par_iter().map(|(t, _)| t.key()).collect();
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by(|&a, &b| (elems[a].1.length, &keys[a]).cmp(&(elems[b].1.length, &keys[b])));
    let mut rank = vec![0usize; elems.len()];
    for (pos, &old) in order.iter().enumerate() {
        rank[old] = pos;
    }
    let scherk: Vec<usize> =
        order.par_iter().map(|&old| scherk_length_triple(&elems[old].0).length).collect();
    let nodes: Vec<PosetNode> = order
        .iter()
        .zip(scherk)
        .map(|(&old, scherk_length)| {
            let (t, r) = &elems[old];
            PosetNode {
                id: hex16(keys[old].as_bytes()),
                element: IntervalElement {
                    element: t.clone(),
                    length: r.length,
                    witnesses: r.witnesses.clone(),
                },
                witness_count: r.count,
                scherk_length,
            }
        })
        .collect();
    let mut covers: Vec<Cover> = edges
        .into_iter()
        .map(|(a, b, root)| Cover { from: rank[a], to: rank[b], root })
        .collect();
    covers.sort();
    covers.dedup();
    Ok(IntervalPoset::assemble(kind, census.coeff_bound(), census.is_complete(), nodes, covers, conflicts))
}

impl IntervalPoset {
    fn assemble(
        kind: Kind,
        bound: i64,
        complete: bool,
        nodes: Vec<PosetNode>,
        covers: Vec<Cover>,
        length_conflicts: usize,
    ) -> Self {
        let mut up = vec![Vec::new(); nodes.len()];
        for (i, c) in covers.iter().enumerate() {
            up[c.from].push(i);
        }
        let index = nodes.iter().enumerate().map(|(i, n)| (n.element.element.clone(), i)).collect();
        IntervalPoset { kind, bound, complete, nodes, covers, up, index, length_conflicts }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn nodes(&self) -> &[PosetNode] {
        &self.nodes
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    pub fn node_of(&self, x: &Triple) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn bottom(&self) -> Option<usize> {
        self.node_of(&Triple::identity(self.kind))
    }

    /// Indices of the nodes of maximal length.
    pub fn maximal(&self) -> Vec<usize> {
        let top = self.nodes.iter().map(|n| n.element.length).max().unwrap_or(0);
        (0..self.nodes.len()).filter(|&i| self.nodes[i].element.length == top).collect()
    }

    /// Indices of the nodes of length zero.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].element.length == 0).collect()
    }

    pub fn levels(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for n in &self.nodes {
            *m.entry(n.element.length).or_insert(0) += 1;
        }
        m
    }

    pub fn stats(&self) -> PosetStats {
        let scherk_equal =
            self.nodes.iter().filter(|n| n.scherk_length == n.element.length).count();
        PosetStats {
            nodes: self.nodes.len(),
            covers: self.covers.len(),
            levels: self.levels().len(),
            scherk_equal,
            scherk_below: self.nodes.len() - scherk_equal,
            length_conflicts: self.length_conflicts,
        }
    }

    /// Three-valued comparison by search along cover edges.
    pub fn leq(&self, x: usize, y: usize) -> Leq {
        if x == y {
            return Leq::Yes { witness: Vec::new() };
        }
        let target_len = self.nodes[y].element.length;
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            if self.nodes[u].element.length >= target_len {
                continue;
            }
            for &ci in &self.up[u] {
                let v = self.covers[ci].to;
                if v == x || parent.contains_key(&v) {
                    continue;
                }
                parent.insert(v, ci);
                if v == y {
                    let mut witness = Vec::new();
                    let mut cur = y;
                    while cur != x {
                        let c = &self.covers[parent[&cur]];
                        witness.push(c.root.clone());
                        cur = c.from;
                    }
                    witness.reverse();
                    return Leq::Yes { witness };
                }
                queue.push_back(v);
            }
        }
        if self.complete {
            Leq::NoInCensus
        } else {
            Leq::Unknown
        }
    }

    pub fn to_export(&self) -> PosetExport {
        PosetExport {
            kind: self.kind,
            bound: self.bound,
            complete: self.complete,
            stats: self.stats(),
            nodes: self.nodes.clone(),
            covers: self.covers.clone(),
        }
    }

    pub fn from_export(e: PosetExport) -> Result<Self, IntervalError> {
        let n = e.nodes.len();
        if let Some(c) = e.covers.iter().find(|c| c.from >= n || c.to >= n) {
            return Err(IntervalError::Malformed(format!("cover {} -> {} out of range", c.from, c.to)));
        }
        if e.nodes.iter().any(|x| x.element.element.kind() != e.kind) {
            return Err(IntervalError::Malformed("node of another kind".into()));
        }
        Ok(Self::assemble(e.kind, e.bound, e.complete, e.nodes, e.covers, e.stats.length_conflicts))
    }

    pub fn export(&self, format: ExportFormat) -> Vec<u8> {
        match format {
            ExportFormat::Json => {
                let mut v = serde_json::to_vec(&self.to_export()).expect("poset serializes");
                v.push(b'\n');
                v
            }
            ExportFormat::Dot => self.to_dot().into_bytes(),
        }
    }

    fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "digraph interval_{} {{", self.kind).unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        writeln!(s, "  node [shape=box, fontsize=9];").unwrap();
        for (len, _) in self.levels() {
            write!(s, "  {{ rank=same;").unwrap();
            for n in self.nodes.iter().filter(|n| n.element.length == len) {
                write!(s, " \"{}\";", n.id).unwrap();
            }
            writeln!(s, " }}").unwrap();
        }
        for n in &self.nodes {
            writeln!(s, "  \"{}\" [label=\"{}\\nlen {}\"];", n.id, n.id, n.element.length).unwrap();
        }
        for c in &self.covers {
            writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.nodes[c.from].id, self.nodes[c.to].id, c.root
            )
            .unwrap();
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

impl std::str::FromStr for ExportFormat {
    type Err = IntervalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            other => Err(IntervalError::UnsupportedFormat(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetExport {
    pub kind: Kind,
    pub bound: i64,
    pub complete: bool,
    pub stats: PosetStats,
    pub nodes: Vec<PosetNode>,
    pub covers: Vec<Cover>,
}

pub fn parse_json(bytes: &[u8]) -> Result<IntervalPoset, IntervalError> {
    let e: PosetExport =
        serde_json::from_slice(bytes).map_err(|e| IntervalError::Malformed(e.to_string()))?;
    IntervalPoset::from_export(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{orbit_explore, standard_tuple};

    fn seed_only() -> IntervalPoset {
        build_poset(&orbit_explore(&standard_tuple(Kind::D4), 0, 1)).unwrap()
    }

    #[test]
    fn prefixes_of_standard() {
        let t = standard_tuple(Kind::D4);
        let p = prefixes_of(&t).unwrap();
        assert_eq!(p.len(), 7);
        assert!(p[0].element.is_identity());
        assert_eq!(p[6].element, *t.product());
        assert_eq!(p[1].element, reflection_triple(Kind::D4, &RootVector::simple(4, 1)).unwrap());
        assert_eq!(p[1].length, 1);
    }

    #[test]
    fn prefixes_reject_non_reduced() {
        let a = RootVector::simple(4, 1);
        let t = ReflTuple::new(Kind::D4, vec![a.clone(), a]).unwrap();
        assert_eq!(prefixes_of(&t), Err(IntervalError::NotReduced));
    }

    #[test]
    fn seed_only_is_a_chain() {
        let p = seed_only();
        assert_eq!(p.nodes().len(), 7);
        assert_eq!(p.covers().len(), 6);
        let bottom = p.bottom().unwrap();
        let top = p.maximal();
        assert_eq!(top.len(), 1);
        assert!(matches!(p.leq(bottom, top[0]), Leq::Yes { ref witness } if witness.len() == 6));
        assert!(matches!(p.leq(top[0], bottom), Leq::Unknown));
        assert_eq!(p.leq(3, 3), Leq::Yes { witness: vec![] });
    }

    #[test]
    fn json_round_trip() {
        let p = build_poset(&orbit_explore(&standard_tuple(Kind::D4), 0, 300)).unwrap();
        let bytes = p.export(ExportFormat::Json);
        let back = parse_json(&bytes).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.export(ExportFormat::Json), bytes);
    }

    #[test]
    fn dot_ranks() {
        let p = seed_only();
        let dot = String::from_utf8(p.export(ExportFormat::Dot)).unwrap();
        assert_eq!(dot.matches("rank=same").count(), 7);
        assert!("svg".parse::<ExportFormat>().is_err());
    }
}
