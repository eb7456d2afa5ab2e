use ellweyl::bilinear::{fixed_space, orth_complement, Ambient, RationalSubspace};
use ellweyl::group::{
    eichler_endomorphism, lift_to_vhat, reflection_matrix, reflection_triple, GroupMatrix, TensorWord,
    Triple,
};
use ellweyl::hurwitz::{apply_braid, canonical_finite_roots, sigma, BraidWord};
use ellweyl::matrix::{q, Q};
use ellweyl::rootsys::{Kind, RootVector};
use ellweyl::scherk::{scherk_length, tuple_scherk_length};
use ellweyl::verify::{random_braid, random_element, random_reachable, random_triple};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kind_strategy() -> impl Strategy<Value = Kind> {
    prop::sample::select(Kind::ALL.to_vec())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn hat(x: &Triple) -> GroupMatrix {
    lift_to_vhat(&x.to_matrix()).unwrap()
}

fn elliptic_root(kind: Kind, idx: usize, k: i64, l: i64) -> RootVector {
    let roots = canonical_finite_roots(kind);
    roots[idx % roots.len()].clone().plus_radical(k, l)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_a_homomorphism(kind in kind_strategy(), seed: u64) {
        let mut r = rng(seed);
        let x = random_triple(kind, &mut r, 3);
        let y = random_triple(kind, &mut r, 3);
        prop_assert_eq!(x.mul(&y).to_matrix(), x.to_matrix().compose(&y.to_matrix()));
        prop_assert_eq!(Triple::from_matrix(&x.to_matrix()).unwrap(), x.clone());
    }

    #[test]
    fn normal_form_group_laws(kind in kind_strategy(), seed: u64) {
        let mut r = rng(seed);
        let x = random_triple(kind, &mut r, 3);
        let y = random_triple(kind, &mut r, 3);
        let z = random_triple(kind, &mut r, 3);
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert!(x.inverse().mul(&x).is_identity());
        prop_assert_eq!(x.pow(3), x.mul(&x).mul(&x));
        prop_assert_eq!(x.pow(-2), x.inverse().mul(&x.inverse()));
    }

    #[test]
    fn reflection_triples_match_matrices(
        kind in kind_strategy(), idx in 0usize..200, k in -4i64..=4, l in -4i64..=4,
    ) {
        let gamma = elliptic_root(kind, idx, k, l);
        let t = reflection_triple(kind, &gamma).unwrap();
        prop_assert_eq!(t.to_matrix(), reflection_matrix(kind, &gamma, Ambient::Vtilde).unwrap());
        prop_assert!(t.mul(&t).is_identity());
        prop_assert_eq!(hat(&t), reflection_matrix(kind, &gamma, Ambient::Vhat).unwrap());
    }

    #[test]
    fn reflections_have_length_one(
        kind in kind_strategy(), idx in 0usize..200, k in -5i64..=5, l in -5i64..=5,
    ) {
        let s = reflection_matrix(kind, &elliptic_root(kind, idx, k, l), Ambient::Vhat).unwrap();
        prop_assert_eq!(scherk_length(&s).unwrap().length, 1);
    }

    #[test]
    fn length_is_conjugation_invariant(kind in kind_strategy(), seed: u64) {
        let mut r = rng(seed);
        let x = hat(&random_element(kind, &mut r, 8));
        let g = hat(&random_element(kind, &mut r, 8));
        let before = scherk_length(&x).unwrap();
        let after = scherk_length(&x.conjugate_by(&g)).unwrap();
        prop_assert_eq!(before.length, after.length);
        prop_assert_eq!(before.is_null, after.is_null);
    }

    #[test]
    fn fixed_space_and_complement_fill_vhat(kind in kind_strategy(), seed: u64) {
        let mut r = rng(seed);
        let x = hat(&random_element(kind, &mut r, 10));
        let f = fixed_space(&x);
        prop_assert_eq!(f.dim() + orth_complement(&f).dim(), Ambient::Vhat.dim(kind));
    }

    /// For linearly independent roots, the product fixes `u` exactly when
    /// every factor does.
    #[test]
    fn independent_roots_fix_jointly(
        kind in kind_strategy(),
        picks in prop::collection::vec((0usize..200, -2i64..=2, -2i64..=2), 1..5),
        coeffs in prop::collection::vec(-3i64..=3, 12),
        use_complement: bool,
    ) {
        let roots: Vec<RootVector> =
            picks.iter().map(|&(i, k, l)| elliptic_root(kind, i, k, l)).collect();
        let dim = Ambient::Vhat.dim(kind);
        let coords: Vec<Vec<i64>> = roots.iter().map(|r| r.coords(dim)).collect();
        let span = RationalSubspace::span_int(kind, Ambient::Vhat, &coords);
        prop_assume!(span.dim() == roots.len());

        let u: Vec<Q> = if use_complement {
            let perp = orth_complement(&span);
            let mut u = vec![Q::zero(); dim];
            for (row, &c) in perp.basis().iter().zip(&coeffs) {
                for (ui, x) in u.iter_mut().zip(row) {
                    *ui += q(c) * x;
                }
            }
            u
        } else {
            coeffs.iter().take(dim).map(|&c| q(c)).collect()
        };
        let mats: Vec<GroupMatrix> =
            roots.iter().map(|r| reflection_matrix(kind, r, Ambient::Vhat).unwrap()).collect();
        let fixes = |m: &GroupMatrix| {
            (0..dim).all(|i| {
                let s: Q = (0..dim).map(|j| q(m.matrix()[(i, j)]) * u[j]).sum();
                s == u[i]
            })
        };
        let product = mats.iter().skip(1).fold(mats[0].clone(), |acc, m| acc.compose(m));
        prop_assert_eq!(fixes(&product), mats.iter().all(fixes));
    }

    #[test]
    fn eichler_words_compose(
        kind in kind_strategy(),
        raw in prop::collection::vec(prop::collection::vec(-2i64..=2, 16), 4),
    ) {
        let tdim = Ambient::Vtilde.dim(kind);
        let vdim = Ambient::V.dim(kind);
        let w1 = TensorWord::single(raw[0][..tdim].to_vec(), raw[1][..vdim].to_vec());
        let mut w2 = TensorWord::single(raw[2][..tdim].to_vec(), raw[3][..vdim].to_vec());
        w2.push(raw[1][..tdim].to_vec(), raw[0][..vdim].to_vec());
        let lhs = eichler_endomorphism(kind, &w1.compose(&w2, kind)).unwrap();
        let rhs = eichler_endomorphism(kind, &w1).unwrap().mul(&eichler_endomorphism(kind, &w2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hurwitz_moves_preserve_invariants(kind in kind_strategy(), seed: u64, len in 1usize..40) {
        let mut r = rng(seed);
        let t = random_reachable(kind, &mut r);
        let w = random_braid(&mut r, t.len(), len);
        let moved = apply_braid(&w, &t).unwrap();
        prop_assert_eq!(moved.product(), t.product());
        prop_assert_eq!(&moved.recompute_product(), t.product());
        prop_assert_eq!(moved.len(), t.len());
        prop_assert_eq!(apply_braid(&w.inverse(), &moved).unwrap(), t.clone());
        let len_t = tuple_scherk_length(&t).length;
        prop_assert!(len_t <= t.len());
        prop_assert_eq!(len_t % 2, t.len() % 2);
    }

    #[test]
    fn sigma_is_invertible(kind in kind_strategy(), seed: u64, i in 1usize..12) {
        let t = random_reachable(kind, &mut rng(seed));
        let i = 1 + (i - 1) % (t.len() - 1);
        let fwd = sigma(i, &t, 1).unwrap();
        prop_assert_eq!(sigma(i, &fwd, -1).unwrap(), t.clone());
        prop_assert!(sigma(t.len(), &t, 1).is_err());
        prop_assert!(sigma(0, &t, 1).is_err());
    }

    #[test]
    fn braid_relations_hold(kind in kind_strategy(), seed: u64, i in 1usize..12, j in 1usize..12) {
        let t = random_reachable(kind, &mut rng(seed));
        let top = t.len() as i32 - 1;
        let i = 1 + (i as i32 - 1) % top;
        if i < top {
            let a = BraidWord::new(vec![i, i + 1, i]);
            let b = BraidWord::new(vec![i + 1, i, i + 1]);
            prop_assert_eq!(apply_braid(&a, &t).unwrap(), apply_braid(&b, &t).unwrap());
        }
        let j = 1 + (j as i32 - 1) % top;
        if (i - j).abs() >= 2 {
            let a = BraidWord::new(vec![i, -j]);
            let b = BraidWord::new(vec![-j, i]);
            prop_assert_eq!(apply_braid(&a, &t).unwrap(), apply_braid(&b, &t).unwrap());
        }
    }
}
