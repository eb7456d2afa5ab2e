//! Reflection length in the non-degenerate ambient V̂.
//!
//! For an isometry `s != 1` with fixed space `F`, the minimal number of
//! reflections of the full orthogonal group with product `s` is
//! `dim F^perp`, or `dim F^perp + 2` when `F^perp` is totally isotropic.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bilinear::{fixed_space, is_null_space, orth_complement, Ambient};
use crate::group::{lift_to_vhat, product_matrix, GroupError, GroupMatrix, Triple};
use crate::hurwitz::{BraidWord, ReflTuple};
use crate::rootsys::RootVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthCertificate {
    pub element_id: String,
    pub dim_fperp: usize,
    pub is_null: bool,
    pub length: usize,
}

/// First 16 hex digits of the SHA-256 of the matrix rows as JSON.
pub fn matrix_id(m: &GroupMatrix) -> String {
    let json = serde_json::to_string(&m.matrix().to_rows()).expect("rows serialize");
    hex16(json.as_bytes())
}

pub(crate) fn hex16(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub fn scherk_length(m: &GroupMatrix) -> Result<LengthCertificate, GroupError> {
    if m.ambient() != Ambient::Vhat {
        return Err(GroupError::Mismatch);
    }
    // Re-check: the certificate is only meaningful for isometries.
    let checked = GroupMatrix::new(m.kind(), Ambient::Vhat, m.matrix().clone())?;
    let f = fixed_space(&checked);
    let fperp = orth_complement(&f);
    let dim_fperp = fperp.dim();
    let is_null = is_null_space(&fperp);
    let length = match (dim_fperp, is_null) {
        (0, _) => 0,
        (d, true) => d + 2,
        (d, false) => d,
    };
    Ok(LengthCertificate { element_id: matrix_id(m), dim_fperp, is_null, length })
}

/// Scherk length of an element of W̃, computed on its lift to V̂.
pub fn scherk_length_triple(x: &Triple) -> LengthCertificate {
    let hat = lift_to_vhat(&x.to_matrix()).expect("elements of the cover lift");
    scherk_length(&hat).expect("lifts are isometries")
}

/// Scherk length of the product of a factorization, lifted by re-expressing
/// the reflection word in Ŵ.
pub fn tuple_scherk_length(t: &ReflTuple) -> LengthCertificate {
    let m = product_matrix(t.kind(), t.entries(), Ambient::Vhat).expect("entries are roots");
    scherk_length(&m).expect("products of reflections are isometries")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Reducedness {
    /// The length meets the Scherk lower bound.
    Reduced { certificate: LengthCertificate },
    /// A strictly shorter factorization of the same element was found.
    NotReduced { certificate: LengthCertificate, witness: Vec<RootVector>, braid: BraidWord },
    /// Scherk allows a shorter factorization but none was exhibited.
    Indeterminate { certificate: LengthCertificate },
}

impl Reducedness {
    pub fn is_reduced(&self) -> bool {
        matches!(self, Reducedness::Reduced { .. })
    }

    pub fn certificate(&self) -> &LengthCertificate {
        match self {
            Reducedness::Reduced { certificate }
            | Reducedness::NotReduced { certificate, .. }
            | Reducedness::Indeterminate { certificate } => certificate,
        }
    }
}

/// Default number of Hurwitz states searched for a cancelling pair.
pub const WITNESS_SEARCH_STATES: usize = 20_000;

pub fn verify_reduced(t: &ReflTuple) -> Reducedness {
    verify_reduced_with(t, WITNESS_SEARCH_STATES)
}

/// Like [`verify_reduced`], searching at most `max_states` tuples of the
/// Hurwitz orbit for two adjacent equal reflections.
pub fn verify_reduced_with(t: &ReflTuple, max_states: usize) -> Reducedness {
    let certificate = tuple_scherk_length(t);
    assert!(certificate.length <= t.len(), "Scherk length exceeds factorization length");
    if certificate.length == t.len() {
        return Reducedness::Reduced { certificate };
    }
    match find_cancellation(t, max_states) {
        Some((braid, witness)) => Reducedness::NotReduced { certificate, witness, braid },
        None => Reducedness::Indeterminate { certificate },
    }
}

/// Breadth-first search over the Hurwitz orbit, staying within one more
/// than the tuple's own coefficient range, for adjacent repeated entries.
fn find_cancellation(t: &ReflTuple, max_states: usize) -> Option<(BraidWord, Vec<RootVector>)> {
    let bound = t.coeff_max() + 1;
    let len = t.len();
    let gens: Vec<i32> = (1..len as i32).flat_map(|g| [g, -g]).collect();
    let mut parent: HashMap<Vec<RootVector>, (Vec<RootVector>, i32)> = HashMap::new();
    let start = t.entries().to_vec();
    parent.insert(start.clone(), (Vec::new(), 0));
    let mut queue = VecDeque::from([t.clone()]);
    while let Some(cur) = queue.pop_front() {
        let e = cur.entries();
        if let Some(i) = (0..len.saturating_sub(1)).find(|&i| e[i] == e[i + 1]) {
            let mut word = Vec::new();
            let mut key = e.to_vec();
            while key != start {
                let (p, g) = parent[&key].clone();
                word.push(g);
                key = p;
            }
            word.reverse();
            let mut shorter = e.to_vec();
            shorter.drain(i..i + 2);
            return Some((BraidWord(word), shorter));
        }
        for &g in &gens {
            let next = crate::hurwitz::apply_braid(&BraidWord(vec![g]), &cur).ok()?;
            if next.coeff_max() > bound || parent.contains_key(next.entries()) {
                continue;
            }
            if parent.len() >= max_states {
                return None;
            }
            parent.insert(next.entries().to_vec(), (e.to_vec(), g));
            queue.push_back(next);
        }
    }
    None
}
