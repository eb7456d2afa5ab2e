//! The reproducible check suite behind `verify --paper`.
//!
//! Every item has a stable id. Sampling checks draw from a seeded ChaCha
//! stream so reruns with the same seed see the same samples.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bilinear::{gram_matrix, signature_int, Ambient, Signature};
use crate::group::{
    central_z, coxeter_roots, coxeter_transformation, lift_to_vhat, product_matrix,
    reflection_triple, GroupMatrix, Realization, Triple,
};
use crate::hurwitz::{
    apply_braid, apply_braid_matrices, connect_search, d4_tau, d4_tau_inner, d4_tau_middle,
    d4_tau_seed, d4_two_orbit_witness, lambda_t_check, orbit_explore, p_conjugation_orbit,
    standard_tuple, tau12_shape, BraidWord, ConnectResult, ReflTuple,
};
use crate::interval::{build_poset, Leq};
use crate::matrix::IMat;
use crate::rootsys::{finite_type_data, is_root, root_system, Kind, RootVector};
use crate::scherk::{scherk_length, verify_reduced};

#[derive(Clone, Debug, Serialize)]
pub struct CheckConfig {
    pub seed: u64,
    pub normal_form_pairs: usize,
    pub braid_words: usize,
    pub central_samples: usize,
    pub census_states: usize,
    pub connect_samples: usize,
    /// Negative control: perturbs the Gram matrix used by the form checks.
    pub sabotage_gram: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            normal_form_pairs: 10_000,
            braid_words: 10_000,
            central_samples: 1_000,
            census_states: 1_000_000,
            connect_samples: 100,
            sabotage_gram: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to this kind.
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub kind: Kind,
    pub status: Status,
    pub detail: String,
    pub millis: u128,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub const CHECK_IDS: [&str; 14] = [
    "table-data",
    "gram-signature",
    "coxeter-isometry",
    "scherk-coxeter",
    "coxeter-triple",
    "central-element",
    "d4-two-orbit",
    "d4-tau",
    "normal-form",
    "hurwitz-invariants",
    "lambda-t",
    "p-conjugation",
    "connectivity",
    "poset",
];

pub fn run_check(id: &str, kind: Kind, cfg: &CheckConfig) -> Option<CheckResult> {
    let start = Instant::now();
    let d4_only = matches!(id, "d4-two-orbit" | "d4-tau" | "lambda-t" | "connectivity" | "poset");
    let outcome: Option<Outcome> = if d4_only && kind != Kind::D4 {
        None
    } else {
        Some(match id {
            "table-data" => check_table_data(kind),
            "gram-signature" => check_gram_signature(kind, cfg),
            "coxeter-isometry" => check_coxeter_isometry(kind, cfg),
            "scherk-coxeter" => check_scherk_coxeter(kind),
            "coxeter-triple" => check_coxeter_triple(kind),
            "central-element" => check_central_element(kind, cfg),
            "d4-two-orbit" => check_d4_two_orbit(),
            "d4-tau" => check_d4_tau(),
            "normal-form" => check_normal_form(kind, cfg),
            "hurwitz-invariants" => check_hurwitz_invariants(kind, cfg),
            "lambda-t" => check_lambda_t(cfg),
            "p-conjugation" => check_p_conjugation(kind),
            "connectivity" => check_connectivity(cfg),
            "poset" => check_poset(),
            _ => return None,
        })
    };
    let (status, detail) = match outcome {
        None => (Status::Skip, "applies to D4 only".to_string()),
        Some(Ok(d)) => (Status::Pass, d),
        Some(Err(d)) => (Status::Fail, d),
    };
    let id = CHECK_IDS.iter().find(|&&c| c == id).copied()?;
    Some(CheckResult { id, kind, status, detail, millis: start.elapsed().as_millis() })
}

pub fn run_all_checks(kind: Kind, cfg: &CheckConfig) -> Vec<CheckResult> {
    CHECK_IDS.iter().filter_map(|id| run_check(id, kind, cfg)).collect()
}

fn used_gram(kind: Kind, ambient: Ambient, cfg: &CheckConfig) -> IMat {
    let mut g = gram_matrix(kind, ambient);
    if cfg.sabotage_gram {
        let b = crate::bilinear::idx_b(kind);
        g[(0, b)] += 1;
        g[(b, 0)] += 1;
    }
    g
}

fn check_table_data(kind: Kind) -> Outcome {
    let ty = finite_type_data(kind);
    let (t, m_t, count) = match kind {
        Kind::D4 => (2, 2, 24),
        Kind::E6 => (4, 3, 72),
        Kind::E7 => (4, 4, 126),
        Kind::E8 => (4, 6, 240),
    };
    let roots = root_system(kind).roots().len();
    ensure(ty.t == t && ty.m_t == m_t && roots == count, || {
        format!("t={} m_t={} roots={roots}", ty.t, ty.m_t)
    })?;
    Ok(format!("t={t} m_t={m_t} roots={roots}"))
}

fn check_gram_signature(kind: Kind, cfg: &CheckConfig) -> Outcome {
    let n = kind.rank();
    let want = [
        (Ambient::V, Signature::new(n, 0, 2)),
        (Ambient::Vtilde, Signature::new(n + 1, 1, 1)),
        (Ambient::Vhat, Signature::new(n + 2, 2, 0)),
    ];
    for (amb, sig) in want {
        let got = signature_int(&used_gram(kind, amb, cfg)).map_err(|e| e.to_string())?;
        ensure(got == sig, || format!("{amb:?}: got {got:?}, expected {sig:?}"))?;
    }
    Ok("signatures (n,0,2), (n+1,1,1), (n+2,2,0)".into())
}

fn check_coxeter_isometry(kind: Kind, cfg: &CheckConfig) -> Outcome {
    for r in [Realization::W, Realization::Wtilde, Realization::What] {
        let amb = r.ambient();
        let c = coxeter_transformation(kind, r);
        let g = used_gram(kind, amb, cfg);
        let m = c.matrix();
        ensure(m.transpose().mul(&g).mul(m) == g, || format!("{amb:?}: c does not preserve the form"))?;
    }
    Ok("c preserves the form on V, V~, V^".into())
}

pub fn hat_coxeter(kind: Kind) -> GroupMatrix {
    coxeter_transformation(kind, Realization::What)
}

pub fn hat_central(kind: Kind) -> GroupMatrix {
    lift_to_vhat(&central_z(kind).to_matrix()).expect("z lifts")
}

fn check_scherk_coxeter(kind: Kind) -> Outcome {
    let want = kind.rank() + 2;
    let c = hat_coxeter(kind);
    let z = hat_central(kind);
    let zi = z.inverse();
    for j in -3i64..=3 {
        let zj = if j >= 0 { z.pow(j as u64) } else { zi.pow((-j) as u64) };
        let cert = scherk_length(&c.compose(&zj)).map_err(|e| e.to_string())?;
        ensure(cert.length == want, || format!("j={j}: length {}", cert.length))?;
    }
    ensure(verify_reduced(&standard_tuple(kind)).is_reduced(), || "standard tuple not reduced".into())?;
    Ok(format!("length {want} for c^ z^j, j in -3..3"))
}

fn check_coxeter_triple(kind: Kind) -> Outcome {
    let rs = root_system(kind);
    let n = rs.n();
    let t = rs.ty.t;
    let product = coxeter_roots(kind)
        .iter()
        .fold(Triple::identity(kind), |acc, r| acc.mul(&reflection_triple(kind, r).unwrap()));
    let mut w = IMat::identity(n);
    for i in (1..=n).filter(|&i| i != t) {
        w = w.mul(&rs.finite_reflection(&RootVector::simple(n, i).beta));
    }
    w = w.mul(&rs.finite_reflection(rs.highest_root()));
    let lambda: Vec<i64> = rs.highest_root().iter().map(|x| -x).collect();
    let mut mu = vec![0; n + 1];
    mu[t - 1] = 1;
    let expected = Triple::new(kind, w, lambda, mu).map_err(|e| e.to_string())?;
    ensure(product == expected, || format!("product {product:?}"))?;
    let mats = product_matrix(kind, &coxeter_roots(kind), Ambient::Vtilde).unwrap();
    ensure(product.to_matrix() == mats, || "matrix of triple differs from matrix product".into())?;
    Ok("(s_1..^s_t..s_n s_h, -h, alpha_t)".into())
}

/// Random element of W~ as a word of 1..=len generator reflections.
pub fn random_element(kind: Kind, rng: &mut ChaCha8Rng, len: usize) -> Triple {
    let gens = coxeter_roots(kind);
    let k = rng.gen_range(1..=len);
    (0..k).fold(Triple::identity(kind), |acc, _| {
        let r = gens.choose(rng).unwrap();
        acc.mul(&reflection_triple(kind, r).unwrap())
    })
}

/// Random normal form with coordinates of `lambda`, `mu` in `[-b, b]`.
pub fn random_triple(kind: Kind, rng: &mut ChaCha8Rng, b: i64) -> Triple {
    let rs = root_system(kind);
    let n = rs.n();
    let mut w = IMat::identity(n);
    for _ in 0..rng.gen_range(0..3 * n) {
        let i = rng.gen_range(1..=n);
        w = w.mul(&rs.finite_reflection(&RootVector::simple(n, i).beta));
    }
    let lambda = (0..n).map(|_| rng.gen_range(-b..=b)).collect();
    let mu = (0..=n).map(|_| rng.gen_range(-b..=b)).collect();
    Triple::new(kind, w, lambda, mu).expect("words in simple reflections lie in W")
}

pub fn random_braid(rng: &mut ChaCha8Rng, tuple_len: usize, word_len: usize) -> BraidWord {
    BraidWord(
        (0..word_len)
            .map(|_| {
                let g = rng.gen_range(1..tuple_len as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect(),
    )
}

fn check_central_element(kind: Kind, cfg: &CheckConfig) -> Outcome {
    let c = crate::group::coxeter_triple(kind);
    let m = crate::group::order_in_w(&c.phi(), 1000).ok_or("phi(c) has no order <= 1000")?;
    let z = central_z(kind);
    ensure(c.pow(m as i64) == z, || format!("c^{m} != z"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..cfg.central_samples {
        let g = random_element(kind, &mut rng, 24);
        ensure(g.commutes_with(&z), || format!("sample {i} does not commute with z"))?;
    }
    let mut acc = Triple::identity(kind);
    for k in 1..=100 {
        acc = acc.mul(&z);
        ensure(!acc.is_identity(), || format!("z^{k} = id"))?;
    }
    Ok(format!("m={m}, c^m = z central on {} samples", cfg.central_samples))
}

fn check_d4_two_orbit() -> Outcome {
    let w = d4_two_orbit_witness();
    ensure(w.product.mu() == [0, 1, 0, 0, -1], || format!("mu = {:?}", w.product.mu()))?;
    ensure(w.product.lambda() == [-1, -2, -1, -1], || format!("lambda = {:?}", w.product.lambda()))?;
    ensure(w.product.w_fin() == w.coxeter.w_fin(), || "finite parts differ".into())?;
    ensure(w.coxeter.mu() == [0, 1, 0, 0, 0], || "c~ has unexpected mu".into())?;
    ensure(w.differs_from_coxeter, || "product equals c~".into())?;
    let c = w.coxeter.phi();
    let phi_prod = w.tuple.phi().iter().fold(GroupMatrix::identity(Kind::D4, Ambient::V), |a, g| a.compose(g));
    ensure(phi_prod == c, || "phi of the tuple does not multiply to c".into())?;
    let std_phi = standard_tuple(Kind::D4)
        .phi()
        .iter()
        .fold(GroupMatrix::identity(Kind::D4, Ambient::V), |a, g| a.compose(g));
    ensure(std_phi == c, || "phi of the standard tuple does not multiply to c".into())?;
    Ok("product (s1s3s4s_h, -h, alpha_2 - b) != c~, both map to c".into())
}

fn check_d4_tau() -> Outcome {
    let seed = d4_tau_seed();
    let mid = apply_braid(&d4_tau_inner(), &seed).map_err(|e| e.to_string())?;
    ensure(mid == d4_tau_middle(), || format!("middle line {mid}"))?;
    let end = apply_braid(&d4_tau(), &seed).map_err(|e| e.to_string())?;
    ensure(end == standard_tuple(Kind::D4), || format!("final line {end}"))?;
    Ok("middle and final lines reproduced".into())
}

fn check_normal_form(kind: Kind, cfg: &CheckConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6e66);
    for i in 0..cfg.normal_form_pairs {
        let x = random_triple(kind, &mut rng, 3);
        let y = random_triple(kind, &mut rng, 3);
        let mx = x.to_matrix();
        let prod = x.mul(&y).to_matrix();
        ensure(prod == mx.compose(&y.to_matrix()), || format!("pair {i}: product mismatch"))?;
        let back = Triple::from_matrix(&mx).map_err(|e| format!("pair {i}: {e}"))?;
        ensure(back == x, || format!("pair {i}: round trip failed"))?;
    }
    Ok(format!("{} pairs", cfg.normal_form_pairs))
}

/// A tuple reached from the standard tuple by a short random braid.
pub fn random_reachable(kind: Kind, rng: &mut ChaCha8Rng) -> ReflTuple {
    let t = standard_tuple(kind);
    let len = rng.gen_range(0..=12);
    apply_braid(&random_braid(rng, t.len(), len), &t).expect("in range")
}

fn check_hurwitz_invariants(kind: Kind, cfg: &CheckConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6877);
    let std = standard_tuple(kind);
    let len = std.len();
    for s in 0..cfg.braid_words {
        let t = random_reachable(kind, &mut rng);
        let wl = rng.gen_range(0..=12);
        let w = random_braid(&mut rng, len, wl);
        let img = apply_braid(&w, &t).map_err(|e| e.to_string())?;
        ensure(img.recompute_product() == *std.product(), || format!("sample {s}: product changed"))?;
        ensure(img.entries().iter().all(|r| is_root(kind, r)), || format!("sample {s}: non-root"))?;
        ensure(apply_braid(&w.inverse(), &img).ok().as_ref() == Some(&t), || {
            format!("sample {s}: inverse word does not undo")
        })?;
        let i = rng.gen_range(1..len as i32 - 1);
        let lhs = apply_braid(&BraidWord(vec![i, i + 1, i]), &t).unwrap();
        let rhs = apply_braid(&BraidWord(vec![i + 1, i, i + 1]), &t).unwrap();
        ensure(lhs == rhs, || format!("sample {s}: braid relation at {i}"))?;
        let j = rng.gen_range(1..len as i32);
        if (i - j).abs() >= 2 {
            let a = apply_braid(&BraidWord(vec![i, j]), &t).unwrap();
            let b = apply_braid(&BraidWord(vec![j, i]), &t).unwrap();
            ensure(a == b, || format!("sample {s}: far commutation {i},{j}"))?;
        }
        if s % 10 == 0 {
            let down = apply_braid_matrices(&w, &t.phi()).map_err(|e| e.to_string())?;
            ensure(down == img.phi(), || format!("sample {s}: phi-equivariance"))?;
        }
    }
    Ok(format!("{} braid words", cfg.braid_words))
}

fn check_lambda_t(cfg: &CheckConfig) -> Outcome {
    let census = orbit_explore(&standard_tuple(Kind::D4), 2, cfg.census_states);
    let mut shaped = 0usize;
    for t in census.tuples() {
        if tau12_shape(&t).is_some() {
            shaped += 1;
            let r = lambda_t_check(&t).map_err(|e| e.to_string())?;
            ensure(r.valid, || format!("{t}: (lambda_t, l, x) = ({}, {}, {})", r.lambda_t, r.ell, r.x))?;
        }
    }
    ensure(shaped > 0, || "no shaped tuple found".into())?;
    Ok(format!("{shaped} shaped tuples among {} states", census.len()))
}

fn check_p_conjugation(kind: Kind) -> Outcome {
    let o = p_conjugation_orbit(kind, 0);
    ensure(o.all_lambda_t_one_reached, || "a root with lambda_t = 1 is not reached".into())?;
    if kind != Kind::D4 {
        ensure(o.top_has_unit_neighbor, || "a lambda_t = m_t - 1 root lacks a unit neighbour coefficient".into())?;
    }
    Ok(format!("{} roots with lambda_t = 1 reached", o.lambda_t_one.len()))
}

fn check_connectivity(cfg: &CheckConfig) -> Outcome {
    let std = standard_tuple(Kind::D4);
    let census = orbit_explore(&std, 1, cfg.census_states);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x636f);
    let n = cfg.connect_samples.min(census.len());
    let picks = rand::seq::index::sample(&mut rng, census.len(), n);
    for i in picks.iter() {
        let from = census.tuple(i);
        match connect_search(&from, &std, 1, 4 * census.len() + 16).map_err(|e| e.to_string())? {
            ConnectResult::Found(w) => {
                ensure(apply_braid(&w, &from).ok().as_ref() == Some(&std), || "bad word".into())?
            }
            ConnectResult::Inconclusive { .. } => return Err(format!("state {i} inconclusive")),
        }
    }
    Ok(format!("{n} sampled states connected"))
}

fn check_poset() -> Outcome {
    let census = orbit_explore(&standard_tuple(Kind::D4), 0, 1_000_000);
    let p = build_poset(&census).map_err(|e| e.to_string())?;
    let n = Kind::D4.rank();
    let bottom = p.minimal();
    let top = p.maximal();
    ensure(bottom.len() == 1 && p.nodes()[bottom[0]].element.element.is_identity(), || "bottom".into())?;
    ensure(top.len() == 1 && p.nodes()[top[0]].element.length == n + 2, || "top".into())?;
    ensure(p.nodes()[top[0]].element.element == *census.product(), || "top is not c~".into())?;
    for c in p.covers() {
        let (a, b) = (&p.nodes()[c.from], &p.nodes()[c.to]);
        ensure(b.element.length == a.element.length + 1, || format!("cover {} -> {}", a.id, b.id))?;
    }
    for node in p.nodes() {
        ensure(node.scherk_length <= node.element.length, || format!("node {}", node.id))?;
    }
    ensure(matches!(p.leq(bottom[0], top[0]), Leq::Yes { .. }), || "bottom <= top".into())?;
    let st = p.stats();
    ensure(st.length_conflicts == 0, || "length conflicts".into())?;
    Ok(format!("{} nodes, {} covers, {} levels", st.nodes, st.covers, st.levels))
}
