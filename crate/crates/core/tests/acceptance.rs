//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use ellweyl::bilinear::Ambient;
use ellweyl::group::{
    central_z, coxeter_roots, coxeter_transformation, lift_to_vhat, order_in_w,
    product_matrix, reflection_triple, GroupMatrix, Realization, Triple,
};
use ellweyl::hurwitz::{
    apply_braid, apply_braid_matrices, connect_search, d4_tau, d4_tau_inner, d4_tau_middle,
    d4_tau_seed, d4_two_orbit_witness, lambda_t_check, orbit_explore, p_conjugation_orbit,
    standard_tuple, tau12_shape, BraidWord, ConnectResult,
};
use ellweyl::interval::{build_poset, Leq};
use ellweyl::matrix::IMat;
use ellweyl::rootsys::{is_root, root_system, Kind, RootVector};
use ellweyl::scherk::scherk_length;
use ellweyl::verify::{random_braid, random_element, random_reachable, random_triple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn main() {
    let criteria: [(&str, Duration, Check); 11] = [
        ("1 reflection length of c^", Duration::from_secs(4), c1_reflection_length),
        ("2 coxeter triple", Duration::from_secs(1), c2_coxeter_triple),
        ("3 central element", Duration::from_secs(10), c3_central_element),
        ("4 D4 two-orbit witness", Duration::from_secs(1), c4_two_orbit),
        ("5 explicit braid", Duration::from_secs(1), c5_explicit_braid),
        ("6 normal form vs matrices", Duration::from_secs(30), c6_normal_form),
        ("7 Hurwitz invariants", Duration::from_secs(60), c7_hurwitz_invariants),
        ("8 lambda_t constraint", Duration::from_secs(300), c8_lambda_t),
        ("9 P-conjugation orbit", Duration::from_secs(60), c9_p_conjugation),
        ("10 connectivity evidence", Duration::from_secs(300), c10_connectivity),
        ("11 poset properties", Duration::from_secs(30), c11_poset),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, limit, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let result = result.and_then(|d| {
            if elapsed <= limit {
                Ok(d)
            } else {
                Err(format!("{d}; took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn c1_reflection_length() -> Result<String, String> {
    let mut lengths = Vec::new();
    for (kind, want) in [(Kind::D4, 6), (Kind::E6, 8), (Kind::E7, 9), (Kind::E8, 10)] {
        let start = Instant::now();
        let c = coxeter_transformation(kind, Realization::What);
        let z = lift_to_vhat(&central_z(kind).to_matrix()).map_err(|e| e.to_string())?;
        let zi = z.inverse();
        let base = scherk_length(&c).map_err(|e| e.to_string())?;
        ensure(base.length == want, || format!("{kind}: length {}", base.length))?;
        for j in -3i64..=3 {
            let zj = if j >= 0 { z.pow(j as u64) } else { zi.pow(j.unsigned_abs()) };
            let l = scherk_length(&c.compose(&zj)).map_err(|e| e.to_string())?.length;
            ensure(l == want, || format!("{kind}, j={j}: length {l}"))?;
        }
        ensure(start.elapsed() < Duration::from_secs(1), || format!("{kind} took over 1 s"))?;
        lengths.push(format!("{kind}={want}"));
    }
    Ok(lengths.join(" "))
}

fn c2_coxeter_triple() -> Result<String, String> {
    for kind in Kind::ALL {
        let rs = root_system(kind);
        let (n, t) = (rs.n(), rs.ty.t);
        let roots = coxeter_roots(kind);
        ensure(roots.len() == n + 2, || "generator count".into())?;
        let product = roots
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
        ensure(product.w_fin() == &w, || format!("{kind}: finite part"))?;
        ensure(product.lambda() == lambda.as_slice(), || format!("{kind}: lambda"))?;
        ensure(product.mu() == mu.as_slice(), || format!("{kind}: mu"))?;
        let mats = product_matrix(kind, &roots, Ambient::Vtilde).map_err(|e| e.to_string())?;
        ensure(product.to_matrix() == mats, || format!("{kind}: matrix"))?;
    }
    Ok("all kinds".into())
}

fn c3_central_element() -> Result<String, String> {
    let mut orders = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for kind in Kind::ALL {
        let roots = coxeter_roots(kind);
        let c = roots
            .iter()
            .fold(Triple::identity(kind), |acc, r| acc.mul(&reflection_triple(kind, r).unwrap()));
        let m = order_in_w(&c.phi(), 1000).ok_or_else(|| format!("{kind}: order not found"))?;
        let z = central_z(kind);
        ensure(z.w_fin().is_identity() && z.lambda().iter().all(|&x| x == 0), || "z shape".into())?;
        ensure(z.mu()[kind.rank()] == 1, || "z has b-coefficient 1".into())?;
        ensure(c.pow(m as i64) == z, || format!("{kind}: c^{m} != z"))?;
        let zm = z.to_matrix();
        for _ in 0..1000 {
            let g = random_element(kind, &mut rng, 24).to_matrix();
            ensure(g.compose(&zm) == zm.compose(&g), || format!("{kind}: z not central"))?;
        }
        let mut acc = GroupMatrix::identity(kind, Ambient::Vtilde);
        for k in 1..=100 {
            acc = acc.compose(&zm);
            ensure(!acc.is_identity(), || format!("{kind}: z^{k} = id"))?;
        }
        orders.push(format!("{kind}: m={m}"));
    }
    Ok(orders.join(", "))
}

fn c4_two_orbit() -> Result<String, String> {
    let w = d4_two_orbit_witness();
    let kind = Kind::D4;
    let rs = root_system(kind);
    let mut s = IMat::identity(4);
    for i in [1, 3, 4] {
        s = s.mul(&rs.finite_reflection(&RootVector::simple(4, i).beta));
    }
    s = s.mul(&rs.finite_reflection(rs.highest_root()));
    ensure(w.product.w_fin() == &s, || "finite part".into())?;
    ensure(w.product.lambda() == [-1, -2, -1, -1], || "lambda".into())?;
    ensure(w.product.mu() == [0, 1, 0, 0, -1], || format!("mu = {:?}", w.product.mu()))?;
    ensure(w.product != w.coxeter, || "product equals c~".into())?;
    let c = coxeter_transformation(kind, Realization::W);
    let down = product_matrix(kind, w.tuple.entries(), Ambient::V).map_err(|e| e.to_string())?;
    ensure(down == c, || "witness does not multiply to c in W".into())?;
    let std = product_matrix(kind, standard_tuple(kind).entries(), Ambient::V).unwrap();
    ensure(std == c, || "standard tuple does not multiply to c in W".into())?;
    Ok("mu = alpha_2 - b, distinct from c~, both map to c".into())
}

fn c5_explicit_braid() -> Result<String, String> {
    let seed = d4_tau_seed();
    let mid = apply_braid(&d4_tau_inner(), &seed).map_err(|e| e.to_string())?;
    ensure(mid == d4_tau_middle(), || format!("intermediate {mid}"))?;
    let end = apply_braid(&d4_tau(), &seed).map_err(|e| e.to_string())?;
    let n = 4;
    let expected: Vec<RootVector> = vec![
        RootVector::simple(n, 1),
        RootVector::simple(n, 3),
        RootVector::simple(n, 4),
        RootVector::new(vec![1, 2, 1, 1], 0, -1),
        RootVector::simple(n, 2),
        RootVector::simple(n, 2).plus_radical(1, 0),
    ];
    ensure(end.entries() == expected.as_slice(), || format!("final {end}"))?;
    Ok(format!("tau = {}", d4_tau()))
}

fn c6_normal_form() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let per_kind = 10_000 / 4;
    for kind in Kind::ALL {
        for i in 0..per_kind {
            let x = random_triple(kind, &mut rng, 3);
            let y = random_triple(kind, &mut rng, 3);
            let (mx, my) = (x.to_matrix(), y.to_matrix());
            let prod = IMat::mul(mx.matrix(), my.matrix());
            ensure(x.mul(&y).to_matrix().matrix() == &prod, || format!("{kind} pair {i}: product"))?;
            let back = Triple::from_matrix(&mx).map_err(|e| format!("{kind} pair {i}: {e}"))?;
            ensure(back == x, || format!("{kind} pair {i}: round trip"))?;
        }
    }
    Ok("10000 pairs over all kinds".into())
}

fn c7_hurwitz_invariants() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let per_kind = 10_000 / 4;
    for kind in Kind::ALL {
        let std = standard_tuple(kind);
        let len = std.len();
        for s in 0..per_kind {
            let t = random_reachable(kind, &mut rng);
            let wl = rng.gen_range(0..=12);
            let w = random_braid(&mut rng, len, wl);
            let img = apply_braid(&w, &t).map_err(|e| e.to_string())?;
            ensure(img.recompute_product() == *std.product(), || format!("{kind} {s}: product"))?;
            ensure(img.entries().iter().all(|r| is_root(kind, r)), || format!("{kind} {s}: root"))?;
            let back = apply_braid(&w.inverse(), &img).map_err(|e| e.to_string())?;
            ensure(back == t, || format!("{kind} {s}: inverse"))?;
            let i = rng.gen_range(1..len as i32 - 1);
            let l = apply_braid(&BraidWord(vec![i, i + 1, i]), &t).unwrap();
            let r = apply_braid(&BraidWord(vec![i + 1, i, i + 1]), &t).unwrap();
            ensure(l == r, || format!("{kind} {s}: braid relation"))?;
            let j = rng.gen_range(1..len as i32);
            if (i - j).abs() >= 2 {
                let a = apply_braid(&BraidWord(vec![i, -j]), &t).unwrap();
                let b = apply_braid(&BraidWord(vec![-j, i]), &t).unwrap();
                ensure(a == b, || format!("{kind} {s}: far commutation"))?;
            }
            let down = apply_braid_matrices(&w, &t.phi()).map_err(|e| e.to_string())?;
            ensure(down == img.phi(), || format!("{kind} {s}: phi-equivariance"))?;
        }
    }
    Ok("10000 braid words over all kinds".into())
}

fn c8_lambda_t() -> Result<String, String> {
    let census = orbit_explore(&standard_tuple(Kind::D4), 2, 1_000_000);
    let mut shaped = 0;
    let mut seen = std::collections::BTreeSet::new();
    for t in census.tuples() {
        if tau12_shape(&t).is_none() {
            continue;
        }
        shaped += 1;
        let r = lambda_t_check(&t).map_err(|e| e.to_string())?;
        ensure(r.valid, || format!("{t}: ({}, {}, {})", r.lambda_t, r.ell, r.x))?;
        seen.insert((r.lambda_t, r.ell, r.x));
    }
    ensure(shaped > 0, || "no shaped tuples".into())?;
    Ok(format!(
        "{shaped} shaped tuples in {} states (complete: {}), values {seen:?}",
        census.len(),
        census.is_complete()
    ))
}

fn c9_p_conjugation() -> Result<String, String> {
    let mut out = Vec::new();
    for kind in Kind::ALL {
        let rs = root_system(kind);
        let t = rs.ty.t;
        let o = p_conjugation_orbit(kind, 0);
        for beta in rs.roots().iter().filter(|b| b[t - 1] == 1) {
            let r = RootVector::finite(beta.clone());
            ensure(o.reached.iter().any(|(x, _)| *x == r), || format!("{kind}: {r} not reached"))?;
        }
        if kind != Kind::D4 {
            let j = rs.ty.affine_neighbor;
            for beta in rs.roots().iter().filter(|b| b[t - 1] == rs.ty.m_t - 1) {
                ensure(beta[j - 1] == 1, || format!("{kind}: {beta:?}"))?;
            }
        }
        out.push(format!("{kind}: {}", o.lambda_t_one.len()));
    }
    Ok(format!("lambda_t = 1 roots reached ({})", out.join(", ")))
}

fn c10_connectivity() -> Result<String, String> {
    let std = standard_tuple(Kind::D4);
    let census = orbit_explore(&std, 1, 1_000_000);
    ensure(census.is_complete(), || "census truncated".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let picks = rand::seq::index::sample(&mut rng, census.len(), 120);
    let mut longest = 0;
    for i in picks.iter() {
        let from = census.tuple(i);
        match connect_search(&from, &std, 1, 4_000_000).map_err(|e| e.to_string())? {
            ConnectResult::Found(w) => {
                ensure(apply_braid(&w, &from).unwrap() == std, || "word does not connect".into())?;
                longest = longest.max(w.len());
            }
            ConnectResult::Inconclusive { .. } => return Err(format!("state {i} inconclusive")),
        }
    }
    Ok(format!("120 of {} states connected, longest word {longest}", census.len()))
}

fn c11_poset() -> Result<String, String> {
    let census = orbit_explore(&standard_tuple(Kind::D4), 0, 1_000_000);
    let p = build_poset(&census).map_err(|e| e.to_string())?;
    let bottom = p.minimal();
    let top = p.maximal();
    ensure(bottom.len() == 1, || format!("{} minimal nodes", bottom.len()))?;
    ensure(top.len() == 1, || format!("{} maximal nodes", top.len()))?;
    ensure(p.nodes()[bottom[0]].element.element.is_identity(), || "bottom is not id".into())?;
    ensure(p.nodes()[top[0]].element.element == *census.product(), || "top is not c~".into())?;
    ensure(p.nodes()[top[0]].element.length == 6, || "top length".into())?;
    for c in p.covers() {
        let (a, b) = (&p.nodes()[c.from], &p.nodes()[c.to]);
        ensure(b.element.length == a.element.length + 1, || format!("cover {} -> {}", a.id, b.id))?;
        let step = a.element.element.mul(&reflection_triple(Kind::D4, &c.root).unwrap());
        ensure(step == b.element.element, || format!("cover label {}", c.root))?;
    }
    for n in p.nodes() {
        ensure(n.scherk_length <= n.element.length, || format!("node {}", n.id))?;
    }
    for &x in bottom.iter().chain(&top) {
        ensure(matches!(p.leq(bottom[0], x), Leq::Yes { .. }), || "bottom <= x".into())?;
    }
    let st = p.stats();
    Ok(format!("{} nodes, {} covers, levels {:?}", st.nodes, st.covers, p.levels()))
}
