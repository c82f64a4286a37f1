//! Acceptance criteria 1-12. Each test writes one `criterion N: PASS|FAIL ...`
//! line to stderr (outside the test harness capture) and then asserts.
//! Every comparison is exact integer equality.

use std::io::Write;
use std::time::{Duration, Instant};

use pdsforge::algebra::identities::{
    check_diagonal_sum, check_external_constituents, check_external_printed, check_internal_corrected,
    check_internal_printed,
};
use pdsforge::algebra::{
    check_mixed_product_undoubled, difference_census, scheme_constants, verify_amorphic, verify_ds,
    verify_mixed_product, verify_partition, verify_pds, with_threads, AmorphicMode, CertKind, Certificate, Params,
    TypeTag,
};
use pdsforge::constructions::*;
use pdsforge::field::{FieldCtx, SquareClass};
use pdsforge::groups::{ElementSet, GroupHandle};
use pdsforge::partition::PartitionScheme;
use pdsforge::products::*;

fn verdict(id: &str, ok: bool, detail: impl std::fmt::Display) {
    let line = format!("\ncriterion {id}: {} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {id} failed: {detail}");
}

fn within(start: Instant, limit_s: u64) -> (bool, Duration) {
    let e = start.elapsed();
    (e < Duration::from_secs(limit_s), e)
}

fn pds(v: u64, k: u64, lambda: u64, mu: u64) -> Option<Params> {
    Some(Params::Pds { v, k, lambda, mu })
}

fn sizes(p: &PartitionScheme) -> Vec<usize> {
    p.classes().iter().map(ElementSet::len).collect()
}

fn class_params(p: &PartitionScheme) -> Vec<Option<Params>> {
    let r = verify_partition(p.owner(), p).unwrap();
    assert!(r.cover_ok);
    r.classes.into_iter().map(|c| c.certificate.params.filter(|_| c.certificate.kind == CertKind::Pds)).collect()
}

#[test]
fn criterion_01_affine_g1_latin() {
    let start = Instant::now();
    let (_, p) = affine_g1(3, 2, 1).unwrap();
    let got = class_params(&p);
    let want = vec![pds(81, 32, 13, 12), pds(81, 24, 9, 6), pds(81, 24, 9, 6)];
    let (fast, e) = within(start, 1);
    verdict(
        "1",
        sizes(&p) == [32, 24, 24] && got == want && fast,
        format!("sizes {:?} params {:?} in {e:?}", sizes(&p), got),
    );
}

#[test]
fn criterion_02_affine_g1_negative_latin() {
    let start = Instant::now();
    let (_, p) = affine_g1(3, 2, -1).unwrap();
    let got = class_params(&p);
    let want = vec![pds(81, 20, 1, 6), pds(81, 30, 9, 12), pds(81, 30, 9, 12)];
    let (fast, e) = within(start, 1);
    verdict(
        "2",
        sizes(&p) == [20, 30, 30] && got == want && fast,
        format!("sizes {:?} params {:?} in {e:?}", sizes(&p), got),
    );
}

#[test]
fn criterion_03_nonisomorphism_probes() {
    let start = Instant::now();
    let (g1, _) = affine_g1(3, 2, 1).unwrap();
    let (g2, _) = affine_g2(3, 2, 1).unwrap();
    let z1 = g1.center().unwrap().len();
    let z2 = g2.center().unwrap().len();
    let exp2 = g2.exponent().unwrap();
    let nonabelian = !g1.is_abelian() && !g2.is_abelian();
    let (fast, e) = within(start, 1);
    verdict(
        "3",
        z1 == 3 && z2 == 9 && exp2 == 3 && nonabelian && fast,
        format!("|Z(G1+)| = {z1}, |Z(G2)| = {z2}, exp(G2) = {exp2}, both nonabelian = {nonabelian}, {e:?}"),
    );
}

fn twisted_scheme_certificates() -> Vec<Certificate> {
    let (g, s) = semidirect_scheme(3, 2, true).unwrap();
    let mut certs: Vec<Certificate> = s.classes().iter().map(|c| verify_pds(&g, c).unwrap()).collect();
    certs.push(verify_pds(&g, &s.fuse(&paley_selection(3))).unwrap());
    certs
}

#[test]
fn criterion_04_twisted_semidirect_scheme() {
    let start = Instant::now();
    let (g, s) = semidirect_scheme(3, 2, true).unwrap();
    let got = class_params(&s);
    let want = vec![
        pds(81, 24, 9, 6),
        pds(81, 24, 9, 6),
        pds(81, 8, 7, 0),
        pds(81, 8, 7, 0),
        pds(81, 8, 7, 0),
        pds(81, 8, 7, 0),
    ];
    let fusions = verify_amorphic(&g, &s, AmorphicMode::All).unwrap();
    let (_, d) = semidirect_paley(3, 2, true).unwrap();
    let dc = verify_pds(&g, &d).unwrap();
    let nonabelian = !g.is_abelian();
    let ok =
        got == want && fusions.tested == 62 && fusions.passed == 62 && dc.params == pds(81, 40, 19, 20) && nonabelian;
    let (fast, e) = within(start, 5);
    verdict(
        "4",
        ok && fast,
        format!(
            "classes {got:?}, fusions {}/{} ({:?}), paley {:?}, {e:?}",
            fusions.passed, fusions.tested, fusions.families, dc.params
        ),
    );
}

#[test]
fn criterion_05_general_t() {
    let start = Instant::now();
    let (g, s) = semidirect_scheme(3, 3, true).unwrap();
    let report = verify_partition(&g, &s).unwrap();
    let p_params: Vec<_> = report.classes[..2].iter().map(|c| c.certificate.params).collect();
    let s_params: Vec<_> = report.classes[2..].iter().map(|c| c.certificate.params).collect();
    let (_, d) = semidirect_paley(3, 3, true).unwrap();
    let dc = verify_pds(&g, &d).unwrap();
    // Latin(27, 12): printed mu r^2 - 3r = 108, census gives r^2 - r = 132.
    let (n, r) = (27u64, 12u64);
    let printed_mu = r * r - 3 * r;
    let latin = p_params.iter().all(|p| *p == pds(729, 312, 135, 132))
        && report.classes[..2].iter().all(|c| c.certificate.has_tag(|t| *t == TypeTag::Latin { n, r }));
    let ok = report.cover_ok
        && latin
        && s_params.iter().all(|p| *p == pds(729, 26, 25, 0))
        && dc.params == pds(729, 364, 181, 182);
    let (fast, e) = within(start, 30);
    verdict(
        "5",
        ok && fast,
        format!(
            "cover {}, P classes {p_params:?}, paley {:?}; census mu 132 supersedes printed {printed_mu}; {e:?}",
            report.cover_ok, dc.params
        ),
    );
}

#[test]
fn criterion_06_q_plus_3_class_scheme() {
    let start = Instant::now();
    let (g, s) = affine_scheme_q4(3).unwrap();
    let fusions = verify_amorphic(&g, &s, AmorphicMode::All).unwrap();
    let (g3, d3) = affine_paley_q4(3).unwrap();
    let c3 = verify_pds(&g3, &d3).unwrap();
    let (g5, d5) = affine_paley_q4(5).unwrap();
    let c5 = verify_pds(&g5, &d5).unwrap();
    let ok = sizes(&s) == [24, 24, 8, 8, 8, 8]
        && s.cover_problem().is_none()
        && fusions.tested == 62
        && fusions.passed == 62
        && c3.params == pds(81, 40, 19, 20)
        && c5.params == pds(625, 312, 155, 156);
    let (fast, e) = within(start, 10);
    verdict(
        "6",
        ok && fast,
        format!(
            "sizes {:?}, fusions {}/{}, q=3 {:?}, q=5 {:?}, {e:?}",
            sizes(&s),
            fusions.passed,
            fusions.tested,
            c3.params,
            c5.params
        ),
    );
}

fn paley_product_81() -> (GroupHandle, ElementSet) {
    let (g, d) = semidirect_paley(3, 2, true).unwrap();
    let (h, e) = affine_paley_q4(3).unwrap();
    paley_product(&g, &d, &h, &e).unwrap()
}

#[test]
fn criterion_07_paley_product() {
    let start = Instant::now();
    let (gg, s) = paley_product_81();
    let check = certify_product(&gg, &s, Target::Pds, paley_product_size(81)).unwrap();
    let w = 81u64;
    let template = pds(w * w, (w * w - 1) / 2, (w * w - 5) / 4, (w * w - 1) / 4);
    let params = check.certificate.as_ref().and_then(|c| c.params);
    let ok =
        check.tier == Tier::Censused && params == pds(6561, 3280, 1639, 1640) && params == template && check.passed();
    let (fast, e) = within(start, 60);
    verdict("7", ok && fast, format!("order {}, tier {:?}, params {params:?}, {e:?}", gg.order(), check.tier));
}

#[test]
fn criterion_08_skew_hadamard_products() {
    let start = Instant::now();
    let (h, e, _) = paley_field_set(83).unwrap();
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, (g, d)) in
        [("twisted semidirect", semidirect_paley(3, 2, true).unwrap()), ("affine G2", affine_paley_q4(3).unwrap())]
    {
        let (gg, s) = stanton_sprott(&g, &d, &h, &e).unwrap();
        let c = verify_ds(&gg, &s).unwrap();
        ok &= c.params == Some(Params::Ds { v: 6723, k: 3361, lambda: 1680 });
        lines.push(format!("{name}: {:?}", c.params));
    }
    // Order 6561 * 6563, construction-only tier: exact size (N - 1) / 2.
    let (g, d) = paley_product_81();
    let (h, e, _) = paley_field_set(6563).unwrap();
    let (gg, s) = stanton_sprott(&g, &d, &h, &e).unwrap();
    let check = certify_product(&gg, &s, Target::Ds, stanton_sprott_size(gg.order())).unwrap();
    let n = gg.order();
    ok &= n == 6561 * 6563 && check.tier == Tier::Constructed && s.len() as u64 == (n - 1) / 2 && check.passed();
    lines.push(format!(
        "order {n} constructed, size {} = (N-1)/2; the printed 45724643 = 6761 * 6763 is not this order",
        s.len()
    ));
    let (fast, el) = within(start, 120);
    verdict("8", ok && fast, format!("{}; {el:?}", lines.join("; ")));
}

fn both_schemes() -> Vec<(&'static str, GroupHandle, PartitionScheme)> {
    let mut out = Vec::new();
    for (name, twisted) in [("twisted", true), ("abelian", false)] {
        let (g, s) = semidirect_scheme(3, 2, twisted).unwrap();
        out.push((name, g, s));
    }
    out
}

#[test]
fn criterion_09a_mixed_product_doubled() {
    let start = Instant::now();
    let mut pairs = 0;
    let mut failures = Vec::new();
    for (name, g, s) in both_schemes() {
        for i in 0..s.len() {
            for j in 0..s.len() {
                if i != j {
                    pairs += 1;
                    if let Err(e) = verify_mixed_product(&g, &s, i, j) {
                        failures.push(format!("{name} ({i},{j}): {e}"));
                    }
                }
            }
        }
    }
    let (g, s) = affine_abelian(3, 2, 1).unwrap();
    pairs += 2;
    for (i, j) in [(1, 2), (2, 1)] {
        if let Err(e) = verify_mixed_product(&g, &s, i, j) {
            failures.push(format!("Z_3^4 D{i},D{j}: {e}"));
        }
    }
    let (fast, e) = within(start, 10);
    verdict(
        "9a",
        failures.is_empty() && fast,
        format!(
            "P_iP_j = P_jP_i and 2 P_iP_j matches the parameter formula for {pairs} ordered pairs {failures:?}; {e:?}"
        ),
    );
}

#[test]
fn criterion_09b_mixed_product_as_printed() {
    let mut first = None;
    let mut failing = 0;
    let mut pairs = 0;
    for (name, g, s) in both_schemes() {
        for i in 0..s.len() {
            for j in 0..s.len() {
                if i != j {
                    pairs += 1;
                    let c = check_mixed_product_undoubled(&g, &s, i, j).unwrap();
                    if !c.holds {
                        failing += 1;
                        first.get_or_insert((name, i, j, c.first_mismatch));
                    }
                }
            }
        }
    }
    verdict(
        "9b",
        failing == 0,
        format!("single product P_iP_j against the parameter formula: {failing}/{pairs} pairs differ, first {first:?}"),
    );
}

#[test]
fn criterion_09c_diagonal_sum() {
    let mut results = Vec::new();
    for twisted in [true, false] {
        for i in 1..3 {
            results.push(check_diagonal_sum(3, twisted, i).unwrap());
        }
    }
    let ok = results.iter().all(|r| r.holds);
    verdict("9c", ok, format!("sum of squared constituents equals sum of (p^2-2p)H + pK in {} cases", results.len()));
}

#[test]
fn criterion_09d_internal_identity_as_printed() {
    let mut detail = Vec::new();
    let mut ok = true;
    for twisted in [true, false] {
        for i in 1..3 {
            let r = check_internal_printed(3, twisted, i).unwrap();
            ok &= r.holds;
            detail.push(format!("twisted={twisted} i={i}: mismatches {} first {:?}", r.mismatches, r.first_mismatch));
        }
    }
    verdict("9d", ok, detail.join("; "));
}

#[test]
fn criterion_09e_internal_identity_without_double_identity() {
    let mut ok = true;
    for twisted in [true, false] {
        for i in 1..3 {
            ok &= check_internal_corrected(3, twisted, i).unwrap().holds;
        }
    }
    verdict("9e", ok, "internal differences with (p^2-p)(<x^p,y^p> - 1), both groups, i = 1, 2");
}

#[test]
fn criterion_09f_external_identity_as_printed() {
    let mut detail = Vec::new();
    let mut ok = true;
    for twisted in [true, false] {
        for i in 1..3 {
            let r = check_external_printed(3, twisted, i).unwrap();
            ok &= r.holds;
            detail.push(format!(
                "twisted={twisted} i={i}: mass {} vs {}, mismatches {}",
                r.lhs_mass, r.rhs_mass, r.mismatches
            ));
        }
    }
    verdict("9f", ok, detail.join("; "));
}

#[test]
fn criterion_09g_external_identity_over_constituents() {
    let start = Instant::now();
    let mut ok = true;
    for twisted in [true, false] {
        for i in 1..3 {
            ok &= check_external_constituents(3, twisted, i).unwrap().holds;
        }
    }
    let (fast, e) = within(start, 10);
    verdict("9g", ok && fast, format!("cross terms over all p+1 constituents, both groups, i = 1, 2; {e:?}"));
}

#[test]
fn criterion_10_recipe_substitution() {
    let start = Instant::now();
    let (ga, sa) = semidirect_scheme(3, 2, false).unwrap();
    let da = sa.fuse(&paley_selection(3));
    let (h, e) = affine_paley_q4(3).unwrap();
    let (g0, d0) = paley_product(&ga, &da, &h, &e).unwrap();
    let c0 = verify_pds(&g0, &d0).unwrap();
    let recipe = recipe_extract(&sa, &h, &d0).unwrap();
    let (_, back) = recipe_instantiate(&recipe, &sa, &h).unwrap();
    let (_, st) = semidirect_scheme(3, 2, true).unwrap();
    let (g1, d1) = recipe_instantiate(&recipe, &st, &h).unwrap();
    let c1 = verify_pds(&g1, &d1).unwrap();
    let ok = c0.kind == CertKind::Pds && c1.kind == CertKind::Pds && c0.params == c1.params && back == d0 && g1 != g0;
    let (fast, el) = within(start, 90);
    verdict(
        "10",
        ok && fast,
        format!(
            "abelian {:?}, twisted {:?}, round trip {}, {} fibers; {el:?}",
            c0.params,
            c1.params,
            back == d0,
            recipe.fibers.len()
        ),
    );
}

#[test]
fn criterion_11_three_class_combination() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    let (_, l_aff) = affine_g1(3, 2, 1).unwrap();
    let (_, l_ab) = affine_abelian(3, 2, 1).unwrap();
    let (_, c_aff) = affine_g1(3, 2, -1).unwrap();
    let cases: [(&str, &PartitionScheme, &PartitionScheme, Combine3Mode); 4] = [
        ("LC affine-g1", &l_aff, &c_aff, Combine3Mode::LC),
        ("LC affine-abelian", &l_ab, &c_aff, Combine3Mode::LC),
        ("LL", &l_aff, &l_aff, Combine3Mode::LL),
        ("CC", &c_aff, &c_aff, Combine3Mode::CC),
    ];
    for (name, a, b, mode) in cases {
        let (gg, p) = combine3(a, b, mode).unwrap();
        let report = verify_partition(&gg, &p).unwrap();
        let neg = mode == Combine3Mode::LC;
        let fam_ok = report.classes.iter().all(|c| {
            c.certificate.kind == CertKind::Pds
                && c.certificate.has_tag(|t| if neg { t.is_neg_latin() } else { t.is_latin() })
        });
        let expected = combine3_sizes(mode, 2, 2);
        let got: Vec<u64> = sizes(&p).into_iter().map(|x| x as u64).collect();
        let tags: Vec<String> =
            report.classes.iter().flat_map(|c| c.certificate.type_tags.iter().map(|t| t.to_string())).collect();
        ok &= report.cover_ok && fam_ok && gg.order() == 6561 && got == expected;
        if neg {
            ok &= got == [2132, 2214, 2214];
        }
        lines.push(format!("{name}: sizes {got:?} {tags:?}"));
    }
    let (fast, e) = within(start, 600);
    verdict("11", ok && fast, format!("{}; {e:?}", lines.join("; ")));
}

#[test]
fn criterion_12_property_suites() {
    let mut checks = Vec::new();

    // Census totals and counting identities over every constructed set.
    let mut sets: Vec<(GroupHandle, ElementSet)> = Vec::new();
    for (g, s) in [affine_g1(3, 2, 1), affine_g1(3, 2, -1), affine_g2(3, 2, 1), semidirect_scheme(3, 2, true)]
        .into_iter()
        .map(Result::unwrap)
    {
        for c in s.classes() {
            sets.push((g.clone(), c.clone()));
        }
    }
    sets.push(semidirect_paley(3, 2, true).unwrap());
    sets.push(affine_paley_q4(3).unwrap());
    let mut totals_ok = true;
    let mut identities_ok = true;
    for (g, s) in &sets {
        let k = s.len() as u64;
        totals_ok &= difference_census(g, s).unwrap().total() == k * (k - 1);
        let c = verify_pds(g, s).unwrap();
        identities_ok &= c.params.is_some_and(|p| p.counting_identity_holds());
    }
    for q in [7, 11, 19, 23, 27, 83] {
        let (g, s, _) = paley_field_set(q).unwrap();
        let c = verify_ds(&g, &s).unwrap();
        identities_ok &= c.params.is_some_and(|p| p.counting_identity_holds());
    }
    checks.push(("census totals |S|(|S|-1)", totals_ok));
    checks.push(("PDS/DS counting identities", identities_ok));

    // Square classes multiply like the group {+1, -1}.
    let mut squares_ok = true;
    for q in [3u64, 5, 9, 25, 27, 49] {
        let f = FieldCtx::for_order(q).unwrap();
        let sign = |a: u32| match f.square_class_of(a) {
            SquareClass::Zero => 0,
            SquareClass::Square => 1,
            SquareClass::NonSquare => -1,
        };
        for a in 0..f.order() {
            for b in 0..f.order() {
                squares_ok &= sign(f.mul(a, b)) == sign(a) * sign(b);
            }
        }
    }
    checks.push(("square-class product rule", squares_ok));

    // Index bijections: inverse and identity laws over every element.
    let mut index_ok = true;
    let groups: Vec<GroupHandle> = vec![
        affine_g1(3, 2, 1).unwrap().0,
        affine_g2(3, 2, 1).unwrap().0,
        affine_g1(5, 2, -1).unwrap().0,
        semidirect_scheme(3, 3, true).unwrap().0,
        paley_product_81().0,
    ];
    for g in &groups {
        for a in 0..g.order() as u32 {
            let i = g.inv_idx(a);
            index_ok &= g.mul_idx(a, i) == 0 && g.mul_idx(a, 0) == a && g.inv_idx(i) == a;
        }
    }
    checks.push(("index bijection round trips", index_ok));

    // Isometry, additivity, closure, anchor and regular-action checks.
    let mut affine_ok = true;
    for (q, m, eps) in [(3, 2, 1), (3, 2, -1), (5, 2, 1), (5, 2, -1), (3, 3, 1), (3, 3, -1), (9, 2, 1)] {
        let c = affine_g1_with(q, m, eps, None).unwrap();
        affine_ok &= c.check_isometries().unwrap()
            && c.check_additive()
            && c.check_closure()
            && c.check_anchor_fixed()
            && c.check_regular_action();
        if m > 2 || eps == 1 {
            let c = affine_g2_with(q, m, eps, None).unwrap();
            affine_ok &=
                c.check_isometries().unwrap() && c.check_additive() && c.check_closure() && c.check_regular_action();
        }
    }
    checks.push(("isometry and additivity of every affine instance", affine_ok));

    // Thread-count independence of the criterion 4 and 7 certificates.
    let n = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    let render = |threads: usize| {
        with_threads(Some(threads), || {
            let mut certs = twisted_scheme_certificates();
            let (gg, s) = paley_product_81();
            certs.push(verify_pds(&gg, &s).unwrap());
            serde_json::to_string(&certs).unwrap()
        })
    };
    let one = render(1);
    let many = render(n);
    checks.push(("certificates byte-identical at 1 and N threads", one == many));

    let ok = checks.iter().all(|(_, c)| *c);
    let detail: Vec<String> =
        checks.iter().map(|(name, c)| format!("{name} {}", if *c { "ok" } else { "FAILED" })).collect();
    verdict("12", ok, format!("{} (N = {n})", detail.join("; ")));
}

#[test]
fn criterion_04_scheme_constants_commutative() {
    let (g, s) = semidirect_scheme(3, 2, true).unwrap();
    let c = scheme_constants(&g, &s).unwrap();
    verdict("4b", c.symmetric && c.p.len() == 7, format!("7 relations, p_ij^k = p_ji^k: {}", c.symmetric));
}
