//! The `2p`-class schemes on `Z_{p^t} × Z_{p^t}` and on the twisted
//! `Z_{p^t} ⋊ Z_{p^t}`, built from differences of cyclic subgroups.
//!
//! `x = (1, 0)` and `y = (0, 1)`; `⟨x^a y^b⟩` is the cyclic subgroup generated by `(a, b)`.

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::groups::{abelian_group, semidirect_group, ElementSet, GroupHandle};
use crate::partition::PartitionScheme;

/// Cyclic subgroup `⟨x^a y^b⟩` (exponents reduced mod `p^t`).
pub fn gen_subgroup(g: &GroupHandle, n: u64, a: u64, b: u64) -> ElementSet {
    g.cyclic_subgroup_idx(((a % n) + n * (b % n)) as u32)
}

fn check(p: u32, t: u32) -> Result<u64> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::BadParameters(format!("p = {p} is not an odd prime")));
    }
    if t < 2 {
        return Err(Error::BadParameters(format!("t = {t} must be at least 2")));
    }
    let n = (p as u64).checked_pow(t).filter(|&n| n * n <= u32::MAX as u64);
    n.ok_or_else(|| Error::BadParameters(format!("{p}^{t} is too large")))
}

pub fn scheme_group(p: u32, t: u32, twisted: bool) -> Result<GroupHandle> {
    let n = check(p, t)?;
    if twisted {
        semidirect_group(p, t)
    } else {
        abelian_group(&[n, n])
    }
}

/// The terms whose union is `P_{t,i}`, each a difference of nested cyclic subgroups.
/// The final term of each `(r, j)` block sits inside the `j`-union.
pub fn p_class_terms(g: &GroupHandle, p: u32, t: u32, i: u32) -> Vec<ElementSet> {
    let (p, t, i) = (p as u64, t, i as u64);
    let n = p.pow(t);
    let mut terms = Vec::new();
    for r in 1..t {
        let pr = p.pow(r);
        let ptr = p.pow(t - r);
        for j in 0..p.pow(r - 1) {
            for k in 0..p {
                let big = gen_subgroup(g, n, 1, i * pr + p * j + k);
                let small = gen_subgroup(g, n, ptr, j * p * ptr + k * ptr);
                terms.push(big.difference(&small).expect("same group"));
            }
            let big = gen_subgroup(g, n, i * pr + j * p, 1);
            let small = gen_subgroup(g, n, j * p * ptr, ptr);
            terms.push(big.difference(&small).expect("same group"));
        }
    }
    terms
}

/// Classes `P1..P_{p-1}`, `S0..S_{p-1}`, `S_inf` in that order.
pub fn semidirect_scheme(p: u32, t: u32, twisted: bool) -> Result<(GroupHandle, PartitionScheme)> {
    let g = scheme_group(p, t, twisted)?;
    let n = (p as u64).pow(t);
    let mut classes = Vec::new();
    let mut labels = Vec::new();
    for i in 1..p {
        let mut class = ElementSet::empty(&g);
        for term in p_class_terms(&g, p, t, i) {
            class = class.union(&term)?;
        }
        classes.push(class);
        labels.push(format!("P{i}"));
    }
    for j in 0..p as u64 {
        classes.push(gen_subgroup(&g, n, 1, j).without_identity());
        labels.push(format!("S{j}"));
    }
    classes.push(gen_subgroup(&g, n, 0, 1).without_identity());
    labels.push("S_inf".into());
    let scheme = PartitionScheme::new(&g, classes, labels)?;
    Ok((g, scheme))
}

/// Indices of the Paley fusion: `P1..P_{(p-1)/2}` and `S0..S_{(p-1)/2}`.
pub fn paley_selection(p: u32) -> Vec<usize> {
    let half = ((p - 1) / 2) as usize;
    let mut sel: Vec<usize> = (0..half).collect();
    let s0 = (p - 1) as usize;
    sel.extend(s0..=s0 + half);
    sel
}

pub fn semidirect_paley(p: u32, t: u32, twisted: bool) -> Result<(GroupHandle, ElementSet)> {
    let (g, scheme) = semidirect_scheme(p, t, twisted)?;
    Ok((g, scheme.fuse(&paley_selection(p))))
}
