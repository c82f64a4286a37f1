use pdsforge::algebra::{
    scheme_constants, verify_amorphic, verify_mixed_product, verify_partition, verify_skew_hadamard,
    verify_square_identity, AmorphicMode, LatinFamily, MAX_FUSION_CLASSES,
};
use pdsforge::constructions::{affine_abelian, affine_g1, paley_field_set, semidirect_scheme};
use pdsforge::groups::{abelian_group, ElementSet};
use pdsforge::partition::PartitionScheme;
use pdsforge::Error;

/// Moves `x` and `x^{-1}` from class 0 to class 1. The cover still holds.
fn corrupted_twisted_scheme() -> (pdsforge::groups::GroupHandle, PartitionScheme) {
    let (g, s) = semidirect_scheme(3, 2, true).unwrap();
    let mut classes = s.classes().to_vec();
    let x = classes[0].indices().next().unwrap();
    for y in [x, g.inv_idx(x)] {
        classes[0].remove_idx(y);
        classes[1].insert_idx(y);
    }
    let p = PartitionScheme::new(&g, classes, s.labels().to_vec()).unwrap();
    (g, p)
}

#[test]
fn corrupted_partition_is_not_a_scheme() {
    let (g, p) = corrupted_twisted_scheme();
    assert!(matches!(scheme_constants(&g, &p), Err(Error::NotAScheme { .. })));
    let report = verify_partition(&g, &p).unwrap();
    assert!(report.cover_ok);
    assert!(!report.passed());
}

#[test]
fn missing_elements_are_reported() {
    let (g, s) = semidirect_scheme(3, 2, true).unwrap();
    let mut classes = s.classes().to_vec();
    classes.pop();
    let labels = s.labels()[..classes.len()].to_vec();
    assert!(matches!(PartitionScheme::new(&g, classes.clone(), labels.clone()), Err(Error::PartitionFailure(_))));
    let p = PartitionScheme::new_unchecked(&g, classes, labels).unwrap();
    let report = verify_partition(&g, &p).unwrap();
    assert!(!report.cover_ok && report.cover_problem.is_some());
    assert!(matches!(scheme_constants(&g, &p), Err(Error::NotAScheme { .. })));
}

#[test]
fn owner_mismatch_is_rejected() {
    let (_, s) = semidirect_scheme(3, 2, true).unwrap();
    let other = abelian_group(&[81]).unwrap();
    assert!(matches!(verify_partition(&other, &s), Err(Error::HandleMismatch { .. })));
    assert!(matches!(scheme_constants(&other, &s), Err(Error::HandleMismatch { .. })));
}

#[test]
fn too_many_classes_for_exhaustive_fusion() {
    let g = abelian_group(&[23]).unwrap();
    let classes: Vec<ElementSet> = (1..23u32).map(|i| ElementSet::from_idx_iter(&g, [i])).collect();
    let labels = (1..23).map(|i| format!("c{i}")).collect();
    let p = PartitionScheme::new(&g, classes, labels).unwrap();
    assert!(p.len() > MAX_FUSION_CLASSES);
    assert!(matches!(
        verify_amorphic(&g, &p, AmorphicMode::All),
        Err(Error::TooManyClasses { classes: 22, limit: MAX_FUSION_CLASSES })
    ));
}

#[test]
fn amorphic_needs_a_shared_family() {
    let (g, p) = corrupted_twisted_scheme();
    assert!(matches!(verify_amorphic(&g, &p, AmorphicMode::All), Err(Error::BadParameters(_))));
}

#[test]
fn sample_mode_is_reproducible() {
    let (g, s) = semidirect_scheme(3, 2, true).unwrap();
    let mode = AmorphicMode::Sample { n: 25, seed: 7 };
    let a = verify_amorphic(&g, &s, mode).unwrap();
    let b = verify_amorphic(&g, &s, mode).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.tested, 25);
    assert!(a.all_passed());
    assert_eq!(a.mode, "sample:25:7");
}

#[test]
fn exhaustive_fusions_of_affine_partitions() {
    for (eps, family) in [(1, LatinFamily::Latin), (-1, LatinFamily::NegLatin)] {
        let (g, p) = affine_g1(3, 2, eps).unwrap();
        let r = verify_amorphic(&g, &p, AmorphicMode::All).unwrap();
        assert!(r.families.contains(&family), "eps {eps}: {:?}", r.families);
        assert_eq!(r.tested, (1 << r.classes) - 2);
        assert!(r.all_passed(), "eps {eps}: {:?}", r.failures);
    }
}

#[test]
fn constants_of_a_strongly_regular_split() {
    // Squares and nonsquares in GF(9) form a two-class symmetric scheme.
    let (g, sq, _) = paley_field_set(9).unwrap();
    let p =
        PartitionScheme::new(&g, vec![sq.clone(), sq.nonidentity_complement()], vec!["R".into(), "N".into()]).unwrap();
    let c = scheme_constants(&g, &p).unwrap();
    assert!(c.symmetric);
    assert_eq!(c.labels, ["1", "R", "N"]);
    // p_11^0 = k, p_11^1 = λ, p_11^2 = μ for the (9, 4, 1, 2) Paley graph.
    assert_eq!([c.p[1][1][0], c.p[1][1][1], c.p[1][1][2]], [4, 1, 2]);
    for i in 0..3 {
        for j in 0..3 {
            let row: u64 = (0..3).map(|k| c.p[i][j][k] * [1, 4, 4][k]).sum();
            assert_eq!(row, [1, 4, 4][i] * [1, 4, 4][j]);
        }
    }
}

#[test]
fn mixed_products_on_elementary_abelian_group() {
    let (g, p) = affine_abelian(3, 2, 1).unwrap();
    for i in 0..p.len() {
        verify_square_identity(&g, &p, i).unwrap();
        for j in 0..p.len() {
            if i != j {
                let r = verify_mixed_product(&g, &p, i, j).unwrap();
                assert!(r.holds, "{i},{j}");
            }
        }
    }
}

#[test]
fn skew_hadamard_detection() {
    for q in [7u64, 11, 19, 27, 83] {
        let (g, d, _) = paley_field_set(q).unwrap();
        assert!(verify_skew_hadamard(&g, &d).unwrap().is_skew_hadamard, "q = {q}");
    }
    let (g, d, _) = paley_field_set(13).unwrap();
    assert!(!verify_skew_hadamard(&g, &d).unwrap().is_skew_hadamard);
    let g = abelian_group(&[7]).unwrap();
    let not_ds = ElementSet::from_idx_iter(&g, [1, 2, 3]);
    let r = verify_skew_hadamard(&g, &not_ds).unwrap();
    assert!(!r.is_skew_hadamard && r.note.is_some());
}
