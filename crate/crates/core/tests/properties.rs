use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use pdsforge::algebra::{convolution, difference_census, verify_pds, with_threads};
use pdsforge::constructions::{affine_g1, affine_g1_with, affine_g2, semidirect_scheme};
use pdsforge::field::{FieldCtx, SquareClass};
use pdsforge::groups::{abelian_group, direct_product, semidirect_group, ElementSet, GroupHandle};
use pdsforge::quadform::QuadForm;

fn groups() -> &'static Vec<GroupHandle> {
    static G: OnceLock<Vec<GroupHandle>> = OnceLock::new();
    G.get_or_init(|| {
        let s32 = semidirect_group(3, 2).unwrap();
        vec![
            s32.clone(),
            semidirect_group(3, 3).unwrap(),
            semidirect_group(5, 2).unwrap(),
            affine_g1(3, 2, 1).unwrap().0,
            affine_g1(3, 2, -1).unwrap().0,
            affine_g2(3, 2, 1).unwrap().0,
            affine_g1(9, 2, 1).unwrap().0,
            abelian_group(&[9, 9]).unwrap(),
            direct_product(&s32, &abelian_group(&[7]).unwrap()).unwrap(),
            direct_product(&affine_g2(3, 2, 1).unwrap().0, &s32).unwrap(),
        ]
    })
}

fn group_and_elems(n: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (0..groups().len()).prop_flat_map(move |gi| {
        let order = groups()[gi].order() as u32;
        (Just(gi), prop::collection::vec(0..order, n))
    })
}

fn field(q: u64) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::for_order(q).unwrap())
}

proptest! {
    #[test]
    fn group_associative((gi, x) in group_and_elems(3)) {
        let g = &groups()[gi];
        let (a, b, c) = (x[0], x[1], x[2]);
        prop_assert_eq!(g.mul_idx(g.mul_idx(a, b), c), g.mul_idx(a, g.mul_idx(b, c)));
    }

    #[test]
    fn group_inverse_and_identity((gi, x) in group_and_elems(2)) {
        let g = &groups()[gi];
        let a = x[0];
        prop_assert_eq!(g.mul_idx(a, g.inv_idx(a)), 0);
        prop_assert_eq!(g.mul_idx(g.inv_idx(a), a), 0);
        prop_assert_eq!(g.mul_idx(0, a), a);
        // (ab)^{-1} = b^{-1} a^{-1}
        let b = x[1];
        prop_assert_eq!(g.inv_idx(g.mul_idx(a, b)), g.mul_idx(g.inv_idx(b), g.inv_idx(a)));
    }

    #[test]
    fn element_ids_round_trip((gi, x) in group_and_elems(1)) {
        let g = &groups()[gi];
        let e = g.element(x[0] as u64).unwrap();
        prop_assert_eq!(e.index(), x[0]);
        prop_assert!(g.element(g.order()).is_err());
    }

    #[test]
    fn product_index_layout(a in 0u32..81, b in 0u32..7) {
        let s = semidirect_group(3, 2).unwrap();
        let z = abelian_group(&[7]).unwrap();
        let p = direct_product(&s, &z).unwrap();
        let idx = p.pair_idx(a, b);
        prop_assert_eq!(idx, a + 81 * b);
        prop_assert_eq!(p.coords(idx), vec![a as u64 % 9, a as u64 / 9, b as u64]);
    }

    #[test]
    fn affine_encoding_round_trip(idx in 0u32..6561, q in prop::sample::select(vec![3u64, 9])) {
        let c = affine_g1_with(q, 2, 1, None).unwrap();
        let idx = idx % c.group.order() as u32;
        let x = c.decode(idx);
        let qq = q as u32;
        let back = x.iter().rev().fold(0u32, |acc, &d| acc * qq + d);
        prop_assert_eq!(back, idx);
    }

    #[test]
    fn bilinear_form_laws(
        q in prop::sample::select(vec![3u64, 5, 9, 25]),
        eps in prop::sample::select(vec![1i32, -1]),
        seed in prop::collection::vec(0u32..1000, 12),
    ) {
        let f = field(q);
        let form = QuadForm::new(f.clone(), 2, eps).unwrap();
        let o = f.order();
        let x: Vec<u32> = seed[0..4].iter().map(|s| s % o).collect();
        let y: Vec<u32> = seed[4..8].iter().map(|s| s % o).collect();
        let z: Vec<u32> = seed[8..12].iter().map(|s| s % o).collect();
        let a = seed[0] % o;
        let add = |u: &[u32], v: &[u32]| u.iter().zip(v).map(|(&s, &t)| f.add(s, t)).collect::<Vec<u32>>();
        let scale = |c: u32, u: &[u32]| u.iter().map(|&s| f.mul(c, s)).collect::<Vec<u32>>();
        let b = |u: &[u32], v: &[u32]| form.bilinear(u, v).unwrap();
        prop_assert_eq!(b(&x, &y), b(&y, &x));
        prop_assert_eq!(b(&add(&x, &y), &z), f.add(b(&x, &z), b(&y, &z)));
        prop_assert_eq!(b(&scale(a, &x), &y), f.mul(a, b(&x, &y)));
        prop_assert_eq!(b(&x, &x), f.mul(f.from_int(2), form.evaluate(&x).unwrap()));
        prop_assert_eq!(form.evaluate(&scale(a, &x)).unwrap(), f.mul(f.mul(a, a), form.evaluate(&x).unwrap()));
        prop_assert_eq!(b(&x, &y), form.bilinear_expanded(&x, &y).unwrap());
    }

    #[test]
    fn square_classes_multiply(q in prop::sample::select(vec![3u64, 7, 9, 25, 27, 121]), a in 0u32..1000, b in 0u32..1000) {
        let f = field(q);
        let (a, b) = (a % f.order(), b % f.order());
        let sign = |x: u32| match f.square_class_of(x) {
            SquareClass::Zero => 0,
            SquareClass::Square => 1,
            SquareClass::NonSquare => -1,
        };
        prop_assert_eq!(sign(f.mul(a, b)), sign(a) * sign(b));
        prop_assert_eq!(sign(f.mul(a, a)), if a == 0 { 0 } else { 1 });
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, f.order() as i64 - 1), Some(1));
        }
    }

    #[test]
    fn census_total_and_linearity((gi, x) in group_and_elems(40), split in 0usize..40) {
        let g = &groups()[gi];
        let s = ElementSet::from_idx_iter(g, x.iter().copied());
        let k = s.len() as u64;
        prop_assert_eq!(difference_census(g, &s).unwrap().total(), k * k.saturating_sub(1));
        let left = ElementSet::from_idx_iter(g, x[..split].iter().copied());
        let right = s.difference(&left).unwrap();
        let b = ElementSet::from_idx_iter(g, x.iter().map(|&i| g.inv_idx(i)));
        let whole = convolution(g, &s, &b).unwrap();
        let parts = convolution(g, &left, &b).unwrap().add(&convolution(g, &right, &b).unwrap());
        prop_assert_eq!(whole.counts(), parts.counts());
        prop_assert_eq!(whole.total(), k * b.len() as u64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn certificates_independent_of_threads(mask in prop::collection::vec(any::<bool>(), 6), threads in 2usize..6) {
        let (g, s) = semidirect_scheme(3, 2, true).unwrap();
        let selection: Vec<usize> = (0..6).filter(|&i| mask[i]).collect();
        let set = s.fuse(&selection);
        let one = with_threads(Some(1), || serde_json::to_string(&verify_pds(&g, &set).unwrap()).unwrap());
        let many = with_threads(Some(threads), || serde_json::to_string(&verify_pds(&g, &set).unwrap()).unwrap());
        prop_assert_eq!(one, many);
    }
}
