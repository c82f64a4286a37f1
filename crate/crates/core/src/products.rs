//! Product constructions on `G × G'`: Paley-type products, skew Hadamard
//! difference-set products, partition recipes and three-class combinations.

use serde::Serialize;

use crate::algebra::{verify_ds, verify_pds, verify_skew_hadamard, CertKind, Certificate, TypeTag};
use crate::error::{Error, Result};
use crate::groups::{direct_product, ElementSet, GroupHandle};
use crate::partition::PartitionScheme;

/// Largest product order that is certified by a full census.
pub const CENSUS_TIER_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Censused,
    /// Built and checked against the structural size invariant only.
    Constructed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Pds,
    Ds,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductCheck {
    pub tier: Tier,
    pub expected_size: u64,
    pub size: u64,
    pub inverse_closed: bool,
    pub identity_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl ProductCheck {
    pub fn passed(&self) -> bool {
        self.size == self.expected_size && self.certificate.as_ref().is_none_or(|c| c.passed())
    }
}

/// Full census up to [`CENSUS_TIER_LIMIT`], otherwise only the structural checks.
pub fn certify_product(g: &GroupHandle, s: &ElementSet, target: Target, expected_size: u64) -> Result<ProductCheck> {
    let certificate = if g.order() <= CENSUS_TIER_LIMIT {
        Some(match target {
            Target::Pds => verify_pds(g, s)?,
            Target::Ds => verify_ds(g, s)?,
        })
    } else {
        None
    };
    Ok(ProductCheck {
        tier: if certificate.is_some() { Tier::Censused } else { Tier::Constructed },
        expected_size,
        size: s.len() as u64,
        inverse_closed: s.is_inverse_closed(),
        identity_free: !s.contains_identity(),
        certificate,
    })
}

fn require_paley(g: &GroupHandle, d: &ElementSet, side: &str) -> Result<()> {
    let cert = verify_pds(g, d)?;
    if cert.kind != CertKind::Pds || !cert.has_tag(|t| *t == TypeTag::PaleyType) {
        let got = cert.params.map_or_else(|| format!("{:?}", cert.kind), |p| p.to_string());
        return Err(Error::NotPaleyType(format!("{side} factor: {got}")));
    }
    Ok(())
}

/// Inserts `A × B` into `out` on `G × G'`.
fn insert_block(out: &mut ElementSet, gg: &GroupHandle, a: impl Iterator<Item = u32>, b: &[u32]) {
    for x in a {
        for &y in b {
            out.insert_idx(gg.pair_idx(x, y));
        }
    }
}

/// `D (1 + D') + D^c (1 + D'^c)` with complements taken in the nonidentity elements.
/// Both inputs must be Paley-type PDSs in groups of the same order `v`; the result
/// has `(v² - 1) / 2` elements.
pub fn paley_product(
    g: &GroupHandle,
    d: &ElementSet,
    h: &GroupHandle,
    e: &ElementSet,
) -> Result<(GroupHandle, ElementSet)> {
    if g.order() != h.order() {
        return Err(Error::SizeMismatch(format!("|G| = {} but |G'| = {}", g.order(), h.order())));
    }
    require_paley(g, d, "left")?;
    require_paley(h, e, "right")?;
    let gg = direct_product(g, h)?;
    let dc = d.nonidentity_complement();
    let with_one = |s: &ElementSet| s.with_identity().to_vec();
    let mut out = ElementSet::empty(&gg);
    insert_block(&mut out, &gg, d.indices(), &with_one(e));
    insert_block(&mut out, &gg, dc.indices(), &with_one(&e.nonidentity_complement()));
    Ok((gg, out))
}

pub fn paley_product_size(v: u64) -> u64 {
    (v * v - 1) / 2
}

/// Skew Hadamard difference set on `G × G'` from a Paley-type PDS `D` in `G`
/// (order `v`) and a skew Hadamard DS `D'` in `G'` of order `v ± 2`.
///
/// For `|G'| = v + 2`: `G × {1'} ∪ D × D' ∪ D^c × D'^(-1)`.
/// For `|G'| = v - 2`: `{1} × G' ∪ D × D' ∪ D^c × D'^(-1)`; the first block is
/// the one that makes the size `(v(v - 2) - 1) / 2`.
pub fn stanton_sprott(
    g: &GroupHandle,
    d: &ElementSet,
    h: &GroupHandle,
    e: &ElementSet,
) -> Result<(GroupHandle, ElementSet)> {
    let v = g.order();
    let w = h.order();
    if w != v + 2 && w + 2 != v {
        return Err(Error::SizeMismatch(format!("|G'| = {w} is not |G| ± 2 = {v} ± 2")));
    }
    require_paley(g, d, "left")?;
    let skew = verify_skew_hadamard(h, e)?;
    if !skew.is_skew_hadamard {
        return Err(Error::NotSkewHadamard(skew.note.unwrap_or_default()));
    }
    let gg = direct_product(g, h)?;
    let mut out = ElementSet::empty(&gg);
    if w == v + 2 {
        insert_block(&mut out, &gg, 0..v as u32, &[0]);
    } else {
        insert_block(&mut out, &gg, std::iter::once(0), &(0..w as u32).collect::<Vec<_>>());
    }
    insert_block(&mut out, &gg, d.indices(), &e.to_vec());
    insert_block(&mut out, &gg, d.nonidentity_complement().indices(), &e.inverse().to_vec());
    Ok((gg, out))
}

pub fn stanton_sprott_size(order: u64) -> u64 {
    (order - 1) / 2
}

/// A set in `G × G'` written as a union of `A × {x'}` with `A` a union of
/// partition classes of `G`. Class index 0 is `{1}`, index `i` is class `i - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recipe {
    /// `(v, k, λ, μ)` per class, starting with `(v, 1, 0, 0)` for `{1}`.
    pub signature: Vec<[u64; 4]>,
    /// Nonempty fibers as `(x' index, sorted class indices)`, sorted by `x'`.
    pub fibers: Vec<(u32, Vec<usize>)>,
}

/// Classwise `(v, k, λ, μ)`; empty classes get `(v, 0, 0, 0)`.
pub fn partition_signature(p: &PartitionScheme) -> Result<Vec<[u64; 4]>> {
    let g = p.owner();
    let v = g.order();
    let mut sig = vec![[v, 1, 0, 0]];
    for (c, label) in p.classes().iter().zip(p.labels()) {
        if c.is_empty() {
            sig.push([v, 0, 0, 0]);
            continue;
        }
        let cert = verify_pds(g, c)?;
        match cert.params {
            Some(pr) if cert.kind == CertKind::Pds => sig.push([pr.v(), pr.k(), pr.lambda(), pr.mu().unwrap_or(0)]),
            _ => return Err(Error::SignatureMismatch(format!("class {label} is not a PDS"))),
        }
    }
    Ok(sig)
}

pub fn recipe_extract(p: &PartitionScheme, h: &GroupHandle, d: &ElementSet) -> Result<Recipe> {
    let g = p.owner();
    let gg = direct_product(g, h)?;
    if d.owner() != &gg {
        return Err(Error::HandleMismatch {
            expected: gg.descriptor().to_string(),
            found: d.owner().descriptor().to_string(),
        });
    }
    let v = g.order() as u32;
    let mut rels = vec![ElementSet::from_idx_iter(g, [0])];
    rels.extend(p.classes().iter().filter(|c| !c.is_empty()).cloned());
    let rel_index: Vec<usize> =
        std::iter::once(0).chain((0..p.len()).filter(|&i| !p.class(i).is_empty()).map(|i| i + 1)).collect();
    let mut fibers = Vec::new();
    for x in 0..h.order() as u32 {
        let fiber = ElementSet::from_idx_iter(g, (0..v).filter(|&a| d.contains_idx(gg.pair_idx(a, x))));
        if fiber.is_empty() {
            continue;
        }
        let mut classes = Vec::new();
        for (r, rel) in rels.iter().enumerate() {
            let hit = rel.intersection(&fiber)?.len();
            if hit == rel.len() {
                classes.push(rel_index[r]);
            } else if hit > 0 {
                let element = rel.indices().find(|&a| !fiber.contains_idx(a)).unwrap_or(0);
                return Err(Error::FiberNotClassUnion { fiber: x, element });
            }
        }
        fibers.push((x, classes));
    }
    Ok(Recipe { signature: partition_signature(p)?, fibers })
}

pub fn recipe_instantiate(r: &Recipe, p: &PartitionScheme, h: &GroupHandle) -> Result<(GroupHandle, ElementSet)> {
    let sig = partition_signature(p)?;
    if sig != r.signature {
        return Err(Error::SignatureMismatch(format!("recipe has {:?}, partition has {:?}", r.signature, sig)));
    }
    let g = p.owner();
    let gg = direct_product(g, h)?;
    let mut out = ElementSet::empty(&gg);
    for (x, classes) in &r.fibers {
        if *x as u64 >= h.order() {
            return Err(Error::IndexOutOfRange { idx: *x as u64, order: h.order() });
        }
        for &c in classes {
            let members: Vec<u32> = if c == 0 { vec![0] } else { p.class(c - 1).to_vec() };
            insert_block(&mut out, &gg, members.into_iter(), &[*x]);
        }
    }
    Ok((gg, out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Combine3Mode {
    /// Latin × negative Latin, giving negative Latin classes.
    LC,
    /// Latin × Latin, giving Latin classes.
    LL,
    /// Negative Latin × negative Latin, giving Latin classes.
    CC,
}

/// `m` with `order = 9^m`.
fn three_exponent(order: u64) -> Option<u32> {
    let mut m = 0;
    let mut o = order;
    while o > 1 && o.is_multiple_of(9) {
        o /= 9;
        m += 1;
    }
    (o == 1 && m > 0).then_some(m)
}

/// Class sizes of a three-class Latin partition of a group of order `9^m`.
pub fn latin3_sizes(m: u32) -> [u64; 3] {
    let (a, b) = (3u64.pow(m - 1), 3u64.pow(m));
    [(a + 1) * (b - 1), a * (b - 1), a * (b - 1)]
}

/// Class sizes of a three-class negative Latin partition of a group of order `9^m`.
pub fn neg_latin3_sizes(m: u32) -> [u64; 3] {
    let (a, b) = (3u64.pow(m - 1), 3u64.pow(m));
    [(a - 1) * (b + 1), a * (b + 1), a * (b + 1)]
}

fn check_sizes(p: &PartitionScheme, latin: bool, side: &str) -> Result<u32> {
    let m = three_exponent(p.owner().order()).ok_or_else(|| {
        Error::SignatureMismatch(format!("{side} group order {} is not a power of 9", p.owner().order()))
    })?;
    if p.len() != 3 {
        return Err(Error::SignatureMismatch(format!("{side} partition has {} classes, not 3", p.len())));
    }
    let want = if latin { latin3_sizes(m) } else { neg_latin3_sizes(m) };
    let got: Vec<u64> = p.classes().iter().map(|c| c.len() as u64).collect();
    if got != want {
        let kind = if latin { "Latin" } else { "negative Latin" };
        return Err(Error::SignatureMismatch(format!("{side} class sizes {got:?}, {kind} needs {want:?}")));
    }
    Ok(m)
}

/// Expected class sizes of the combined partition.
pub fn combine3_sizes(mode: Combine3Mode, m: u32, n: u32) -> [u64; 3] {
    match mode {
        Combine3Mode::LC => neg_latin3_sizes(m + n),
        Combine3Mode::LL | Combine3Mode::CC => latin3_sizes(m + n),
    }
}

/// Three classes on `G × G'` from three-class partitions `A` of `G` and `B` of `G'`,
/// with `A_0^+ = A_0 ∪ {1}` and `B_0^+ = B_0 ∪ {1'}`:
/// `X_0 = A_0^+ × B_0^+ ∪ A_1 × B_1 ∪ A_2 × B_2 - {(1, 1')}`,
/// `X_1 = A_0^+ × B_1 ∪ A_1 × B_2 ∪ A_2 × B_0^+`,
/// `X_2 = A_0^+ × B_2 ∪ A_1 × B_0^+ ∪ A_2 × B_1`.
pub fn combine3(
    a: &PartitionScheme,
    b: &PartitionScheme,
    mode: Combine3Mode,
) -> Result<(GroupHandle, PartitionScheme)> {
    let (a_latin, b_latin) = match mode {
        Combine3Mode::LC => (true, false),
        Combine3Mode::LL => (true, true),
        Combine3Mode::CC => (false, false),
    };
    check_sizes(a, a_latin, "left")?;
    check_sizes(b, b_latin, "right")?;
    let gg = direct_product(a.owner(), b.owner())?;
    let ap = [a.class(0).with_identity(), a.class(1).clone(), a.class(2).clone()];
    let bp = [b.class(0).with_identity().to_vec(), b.class(1).to_vec(), b.class(2).to_vec()];
    let mut classes = Vec::new();
    for shift in 0..3 {
        let mut out = ElementSet::empty(&gg);
        for (i, ai) in ap.iter().enumerate() {
            insert_block(&mut out, &gg, ai.indices(), &bp[(i + shift) % 3]);
        }
        out.remove_idx(0);
        classes.push(out);
    }
    let prefix = if mode == Combine3Mode::LC { "C" } else { "L" };
    let labels = (0..3).map(|i| format!("{prefix}{i}")).collect();
    let scheme = PartitionScheme::new(&gg, classes, labels)?;
    Ok((gg, scheme))
}
