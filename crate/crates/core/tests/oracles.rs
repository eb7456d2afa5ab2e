//! Independent recomputations of frozen reference values.

use std::collections::{HashSet, VecDeque};

use ellweyl::bilinear::{gram_matrix, signature_int, Ambient, Signature};
use ellweyl::group::{coxeter_triple, order_in_w, reflection_matrix};
use ellweyl::hurwitz::{orbit_explore, standard_tuple};
use ellweyl::matrix::IMat;
use ellweyl::rootsys::{finite_type_data, root_system, Kind, RootVector};

fn cartan_from_edges(kind: Kind) -> IMat {
    let ty = finite_type_data(kind);
    let mut c = IMat::identity(ty.n).scale(2);
    for &(i, j) in &ty.edges {
        c[(i - 1, j - 1)] = -1;
        c[(j - 1, i - 1)] = -1;
    }
    c
}

fn quad(c: &IMat, x: &[i64]) -> i64 {
    let cx = c.mul_vec(x);
    x.iter().zip(&cx).map(|(a, b)| a * b).sum()
}

/// Every root has `|coefficient_i| <= m_i`, so scanning that box for
/// vectors of norm 2 finds all of them.
#[test]
fn root_counts_by_box_scan() {
    for (kind, want) in [(Kind::D4, 24), (Kind::E6, 72), (Kind::E7, 126), (Kind::E8, 240)] {
        let ty = finite_type_data(kind);
        let c = cartan_from_edges(kind);
        let mut x: Vec<i64> = ty.marks.iter().map(|m| -m).collect();
        let mut count = 0;
        let mut highest = Vec::new();
        'scan: loop {
            if quad(&c, &x) == 2 {
                count += 1;
                let h: i64 = x.iter().sum();
                if highest.is_empty() || h > highest.iter().sum::<i64>() {
                    highest = x.clone();
                }
            }
            for i in 0..x.len() {
                if x[i] < ty.marks[i] {
                    x[i] += 1;
                    continue 'scan;
                }
                x[i] = -ty.marks[i];
            }
            break;
        }
        assert_eq!(count, want, "{kind}");
        assert_eq!(count, root_system(kind).roots().len());
        assert_eq!(highest, ty.marks, "{kind}");
    }
}

/// Faddeev-LeVerrier characteristic polynomial, highest degree first.
fn charpoly(m: &IMat) -> Vec<i128> {
    let n = m.rows();
    let a: Vec<Vec<i128>> = m.to_rows().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mul = |x: &Vec<Vec<i128>>, y: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
    };
    let mut coeffs = vec![1i128];
    let mut mk: Vec<Vec<i128>> = vec![vec![0; n]; n];
    let mut c_prev = 1i128;
    for k in 1..=n {
        let mut next = mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c_prev;
        }
        mk = next;
        let am = mul(&a, &mk);
        let tr: i128 = (0..n).map(|i| am[i][i]).sum();
        assert_eq!(tr % k as i128, 0);
        c_prev = -tr / k as i128;
        coeffs.push(c_prev);
    }
    coeffs
}

/// Descartes' rule is exact for real-rooted polynomials.
fn signature_by_descartes(m: &IMat) -> Signature {
    let p = charpoly(m);
    let n = m.rows();
    let zero = p.iter().rev().take_while(|&&c| c == 0).count();
    let trimmed = &p[..p.len() - zero];
    let changes = |coeffs: &[i128]| {
        let nz: Vec<i128> = coeffs.iter().copied().filter(|&c| c != 0).collect();
        nz.windows(2).filter(|w| (w[0] > 0) != (w[1] > 0)).count()
    };
    let pos = changes(trimmed);
    let deg = trimmed.len() - 1;
    let neg_coeffs: Vec<i128> =
        trimmed.iter().enumerate().map(|(i, &c)| if (deg - i) % 2 == 1 { -c } else { c }).collect();
    let neg = changes(&neg_coeffs);
    assert_eq!(pos + neg + zero, n);
    Signature::new(pos, neg, zero)
}

#[test]
fn signatures_match_descartes() {
    for kind in Kind::ALL {
        for amb in [Ambient::V, Ambient::Vtilde, Ambient::Vhat] {
            let g = gram_matrix(kind, amb);
            assert_eq!(signature_int(&g).unwrap(), signature_by_descartes(&g), "{kind} {amb:?}");
        }
    }
}

#[test]
fn reflection_matrix_matches_formula() {
    let kind = Kind::E6;
    let dim = Ambient::Vhat.dim(kind);
    let g = gram_matrix(kind, Ambient::Vhat);
    let pair = |x: &[i64], y: &[i64]| -> i64 { x.iter().zip(&g.mul_vec(y)).map(|(a, b)| a * b).sum() };
    let gamma = RootVector::new(vec![0, 1, 1, 2, 1, 0], 2, -3);
    let s = reflection_matrix(kind, &gamma, Ambient::Vhat).unwrap();
    let gv = gamma.coords(dim);
    for j in 0..dim {
        let mut e = vec![0; dim];
        e[j] = 1;
        let p = pair(&gv, &e);
        let expect: Vec<i64> = e.iter().zip(&gv).map(|(x, y)| x - p * y).collect();
        assert_eq!(s.apply(&e), expect);
    }
}

/// The order of the Coxeter element in W equals the maximal mark.
#[test]
fn coxeter_orders_in_w() {
    for kind in Kind::ALL {
        let m = order_in_w(&coxeter_triple(kind).phi(), 100).unwrap();
        assert_eq!(m as i64, finite_type_data(kind).m_t, "{kind}");
    }
}

type Root = (Vec<i64>, i64, i64);

fn canon(mut r: Root) -> Root {
    if r.0.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        r.0.iter_mut().for_each(|x| *x = -*x);
        r.1 = -r.1;
        r.2 = -r.2;
    }
    r
}

/// Naive Hurwitz BFS on plain vectors, sharing no code with the library.
fn naive_census(kind: Kind, bound: i64) -> usize {
    let c = cartan_from_edges(kind);
    let reflect = |g: &Root, d: &Root| -> Root {
        let cg = c.mul_vec(&g.0);
        let p: i64 = d.0.iter().zip(&cg).map(|(a, b)| a * b).sum();
        canon((
            d.0.iter().zip(&g.0).map(|(x, y)| x - p * y).collect(),
            d.1 - p * g.1,
            d.2 - p * g.2,
        ))
    };
    let seed: Vec<Root> = standard_tuple(kind)
        .entries()
        .iter()
        .map(|r| canon((r.beta.clone(), r.k, r.l)))
        .collect();
    let bound = bound.max(seed.iter().map(|r| r.1.abs().max(r.2.abs())).max().unwrap());
    let mut seen: HashSet<Vec<Root>> = HashSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed]);
    while let Some(s) = queue.pop_front() {
        for i in 0..s.len() - 1 {
            for dir in [1, -1] {
                let mut t = s.clone();
                if dir == 1 {
                    t[i] = s[i + 1].clone();
                    t[i + 1] = reflect(&s[i + 1], &s[i]);
                } else {
                    t[i] = reflect(&s[i], &s[i + 1]);
                    t[i + 1] = s[i].clone();
                }
                if t.iter().any(|r| r.1.abs() > bound || r.2.abs() > bound) {
                    continue;
                }
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
    }
    seen.len()
}

#[test]
fn d4_census_size_frozen() {
    const D4_BOUND1_STATES: usize = 145_824;
    assert_eq!(naive_census(Kind::D4, 1), D4_BOUND1_STATES);
    let c = orbit_explore(&standard_tuple(Kind::D4), 1, 1_000_000);
    assert!(c.is_complete());
    assert_eq!(c.len(), D4_BOUND1_STATES);
    let c0 = orbit_explore(&standard_tuple(Kind::D4), 0, 1_000_000);
    assert_eq!(c0.len(), D4_BOUND1_STATES);
}
