//! Partition, fusion and association-scheme checks over a [`PartitionScheme`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::census::convolution;
use super::identities::IdentityCheck;
use super::verify::{verify_pds, CertKind, Certificate, Params};
use crate::error::{Error, Result};
use crate::groups::{ElementSet, GroupHandle};
use crate::partition::PartitionScheme;

pub const MAX_FUSION_CLASSES: usize = 20;

fn check_owner(g: &GroupHandle, p: &PartitionScheme) -> Result<()> {
    if p.owner() != g {
        return Err(Error::HandleMismatch {
            expected: g.descriptor().to_string(),
            found: p.owner().descriptor().to_string(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct LabeledCertificate {
    pub label: String,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    pub cover_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_problem: Option<String>,
    pub classes: Vec<LabeledCertificate>,
}

impl PartitionReport {
    /// Cover holds and every nonempty class is a PDS.
    pub fn passed(&self) -> bool {
        self.cover_ok && self.classes.iter().all(|c| c.certificate.passed() || c.certificate.set_size == 0)
    }
}

pub fn verify_partition(g: &GroupHandle, p: &PartitionScheme) -> Result<PartitionReport> {
    check_owner(g, p)?;
    let cover_problem = p.cover_problem();
    let classes = p
        .classes()
        .iter()
        .zip(p.labels())
        .map(|(c, l)| Ok(LabeledCertificate { label: l.clone(), certificate: verify_pds(g, c)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(PartitionReport { cover_ok: cover_problem.is_none(), cover_problem, classes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatinFamily {
    Latin,
    NegLatin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmorphicMode {
    All,
    Sample { n: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct FusionFailure {
    pub classes: Vec<String>,
    pub kind: CertKind,
    pub params: Option<Params>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AmorphicReport {
    pub families: Vec<LatinFamily>,
    pub mode: String,
    pub classes: usize,
    pub tested: usize,
    pub passed: usize,
    pub failures: Vec<FusionFailure>,
}

impl AmorphicReport {
    pub fn all_passed(&self) -> bool {
        self.tested == self.passed
    }
}

impl LatinFamily {
    fn fits(self, cert: &Certificate) -> bool {
        cert.passed()
            && match self {
                LatinFamily::Latin => cert.has_tag(|t| t.is_latin()),
                LatinFamily::NegLatin => cert.has_tag(|t| t.is_neg_latin()),
            }
    }
}

/// Families shared by every certificate. Small parameter sets can be of both
/// types at once, e.g. `(9, 4, 1, 2)`.
pub fn latin_families(certs: &[&Certificate]) -> Vec<LatinFamily> {
    [LatinFamily::Latin, LatinFamily::NegLatin].into_iter().filter(|f| certs.iter().all(|c| f.fits(c))).collect()
}

/// Checks that unions of classes are PDSs of the classes' (negative) Latin family.
/// Empty classes are left out of the fusions.
pub fn verify_amorphic(g: &GroupHandle, p: &PartitionScheme, mode: AmorphicMode) -> Result<AmorphicReport> {
    check_owner(g, p)?;
    let live: Vec<usize> = (0..p.len()).filter(|&i| !p.class(i).is_empty()).collect();
    let c = live.len();
    if mode == AmorphicMode::All && c > MAX_FUSION_CLASSES {
        return Err(Error::TooManyClasses { classes: c, limit: MAX_FUSION_CLASSES });
    }
    if c < 2 {
        return Err(Error::BadParameters("fewer than two nonempty classes".into()));
    }
    let certs = live.iter().map(|&i| verify_pds(g, p.class(i))).collect::<Result<Vec<_>>>()?;
    let families = latin_families(&certs.iter().collect::<Vec<_>>());
    if families.is_empty() {
        return Err(Error::BadParameters("classes are not all of one Latin or negative Latin type".into()));
    }
    let full = (1u64 << c) - 1;
    let masks: Vec<u64> = match mode {
        AmorphicMode::All => (1..full).collect(),
        AmorphicMode::Sample { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.gen_range(1..full)).collect()
        }
    };
    let mut passed = 0;
    let mut failures = Vec::new();
    for &mask in &masks {
        let selection: Vec<usize> = (0..c).filter(|b| mask >> b & 1 == 1).map(|b| live[b]).collect();
        let cert = verify_pds(g, &p.fuse(&selection))?;
        if families.iter().any(|f| f.fits(&cert)) {
            passed += 1;
        } else {
            failures.push(FusionFailure {
                classes: selection.iter().map(|&i| p.labels()[i].clone()).collect(),
                kind: cert.kind,
                params: cert.params,
            });
        }
    }
    let mode = match mode {
        AmorphicMode::All => "all".to_string(),
        AmorphicMode::Sample { n, seed } => format!("sample:{n}:{seed}"),
    };
    Ok(AmorphicReport { families, mode, classes: c, tested: masks.len(), passed, failures })
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeConstants {
    /// Relation labels; index 0 is the identity relation.
    pub labels: Vec<String>,
    /// `p[i][j][k]`.
    pub p: Vec<Vec<Vec<u64>>>,
    pub symmetric: bool,
}

/// Structure constants `p_ij^k`, with relation 0 the identity and relation
/// `i > 0` the class `i - 1`. `p_ij^k` is the number of ways an element of
/// relation `k` is a product `ab` with `a` in `i` and `b` in `j`.
pub fn scheme_constants(g: &GroupHandle, p: &PartitionScheme) -> Result<SchemeConstants> {
    check_owner(g, p)?;
    let mut rels = vec![ElementSet::from_idx_iter(g, [0])];
    rels.extend(p.classes().iter().cloned());
    let mut labels = vec!["1".to_string()];
    labels.extend(p.labels().iter().cloned());
    let r = rels.len();
    let mut tensor = vec![vec![vec![0u64; r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            let conv = convolution(g, &rels[i], &rels[j])?;
            for k in 0..r {
                let mut first: Option<(u32, u64)> = None;
                for x in rels[k].indices() {
                    let c = conv.get(x);
                    match first {
                        None => first = Some((x, c)),
                        Some((w, f)) if f != c => {
                            return Err(Error::NotAScheme { i, j, k, witness_a: w, witness_b: x, first: f, second: c });
                        }
                        _ => {}
                    }
                }
                tensor[i][j][k] = first.map_or(0, |(_, c)| c);
            }
            let covered: u64 = (0..r).map(|k| tensor[i][j][k] * rels[k].len() as u64).sum();
            if covered != conv.total() {
                // Some product lands outside every relation: the classes miss elements.
                let x = (0..g.order() as u32)
                    .find(|&x| conv.get(x) > 0 && rels.iter().all(|s| !s.contains_idx(x)))
                    .unwrap_or(0);
                return Err(Error::NotAScheme {
                    i,
                    j,
                    k: r,
                    witness_a: x,
                    witness_b: x,
                    first: conv.get(x),
                    second: 0,
                });
            }
        }
    }
    let symmetric = (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| tensor[i][j][k] == tensor[j][i][k])));
    Ok(SchemeConstants { labels, p: tensor, symmetric })
}

#[derive(Debug, Clone, Serialize)]
pub struct MixedProductReport {
    pub i: usize,
    pub j: usize,
    /// Coefficients of `P_i`, `P_j` and `G - 1 - P_i - P_j` in `P_i P_j + P_j P_i`.
    pub coefficients: [i64; 3],
    pub union_params: Params,
    pub holds: bool,
}

fn pds_params(g: &GroupHandle, s: &ElementSet, what: &str) -> Result<(u64, u64, u64)> {
    let cert = verify_pds(g, s)?;
    match cert.params {
        Some(Params::Pds { k, lambda, mu, .. }) if cert.kind == CertKind::Pds => Ok((k, lambda, mu)),
        _ => Err(Error::BadParameters(format!("{what} is not a PDS ({:?})", cert.kind))),
    }
}

fn compare(lhs: &[u32], rhs: impl Fn(u32) -> i64) -> Result<()> {
    for (x, &l) in lhs.iter().enumerate() {
        let r = rhs(x as u32);
        if l as i64 != r {
            return Err(Error::IdentityFails { element: x as u32, lhs: l as i64, rhs: r });
        }
    }
    Ok(())
}

/// `P_i^2 = (k_i - μ_i) 1 + λ_i P_i + μ_i (G - P_i)` for a class `P_i`.
pub fn verify_square_identity(g: &GroupHandle, p: &PartitionScheme, i: usize) -> Result<()> {
    check_owner(g, p)?;
    let pi = p.class(i);
    let (k, lam, mu) = pds_params(g, pi, &p.labels()[i])?;
    let sq = convolution(g, pi, pi)?;
    let (k, lam, mu) = (k as i64, lam as i64, mu as i64);
    compare(sq.counts(), |x| {
        let id = if x == 0 { k - mu } else { 0 };
        id + if pi.contains_idx(x) { lam } else { mu }
    })
}

struct MixedSetup {
    coefficients: [i64; 3],
    union_params: Params,
    forward: Vec<i64>,
    backward: Vec<i64>,
}

fn mixed_setup(g: &GroupHandle, p: &PartitionScheme, i: usize, j: usize) -> Result<MixedSetup> {
    check_owner(g, p)?;
    if i == j {
        return Err(Error::BadParameters("mixed product needs two distinct classes".into()));
    }
    let (pi, pj) = (p.class(i), p.class(j));
    let (_, li, mi) = pds_params(g, pi, &p.labels()[i])?;
    let (_, lj, mj) = pds_params(g, pj, &p.labels()[j])?;
    let union_cert = verify_pds(g, &pi.union(pj)?)?;
    let union_params = match union_cert.params {
        Some(pr @ Params::Pds { .. }) if union_cert.kind == CertKind::Pds => pr,
        _ => return Err(Error::BadParameters("the union of the two classes is not a PDS".into())),
    };
    let (lam, mu) = (union_params.lambda() as i64, union_params.mu().unwrap_or(0) as i64);
    let (li, mi, lj, mj) = (li as i64, mi as i64, lj as i64, mj as i64);
    Ok(MixedSetup {
        coefficients: [lam - li - mj, lam - mi - lj, mu - mi - mj],
        union_params,
        forward: convolution(g, pi, pj)?.signed(),
        backward: convolution(g, pj, pi)?.signed(),
    })
}

fn mixed_rhs(p: &PartitionScheme, i: usize, j: usize, c: [i64; 3]) -> impl Fn(u32) -> i64 + '_ {
    move |x| {
        if x == 0 {
            0
        } else if p.class(i).contains_idx(x) {
            c[0]
        } else if p.class(j).contains_idx(x) {
            c[1]
        } else {
            c[2]
        }
    }
}

fn compare_signed(lhs: &[i64], rhs: impl Fn(u32) -> i64) -> Result<()> {
    for (x, &l) in lhs.iter().enumerate() {
        let r = rhs(x as u32);
        if l != r {
            return Err(Error::IdentityFails { element: x as u32, lhs: l, rhs: r });
        }
    }
    Ok(())
}

/// With `(λ, μ)` the parameters of `P_i ∪ P_j`, expanding `(P_i + P_j)^2` both ways gives
/// `P_i P_j + P_j P_i = (λ-λ_i-μ_j) P_i + (λ-μ_i-λ_j) P_j + (μ-μ_i-μ_j)(G-1-P_i-P_j)`.
/// Checks that the two products agree, that twice either one equals the right side,
/// and the square identity for both classes.
pub fn verify_mixed_product(g: &GroupHandle, p: &PartitionScheme, i: usize, j: usize) -> Result<MixedProductReport> {
    let m = mixed_setup(g, p, i, j)?;
    compare_signed(&m.forward, |x| m.backward[x as usize])?;
    let doubled: Vec<i64> = m.forward.iter().map(|c| 2 * c).collect();
    compare_signed(&doubled, mixed_rhs(p, i, j, m.coefficients))?;
    verify_square_identity(g, p, i)?;
    verify_square_identity(g, p, j)?;
    Ok(MixedProductReport { i, j, coefficients: m.coefficients, union_params: m.union_params, holds: true })
}

/// The single product `P_i P_j` against the same right side, without the factor 2.
pub fn check_mixed_product_undoubled(
    g: &GroupHandle,
    p: &PartitionScheme,
    i: usize,
    j: usize,
) -> Result<IdentityCheck> {
    let m = mixed_setup(g, p, i, j)?;
    let rhs: Vec<i64> = (0..g.order() as u32).map(mixed_rhs(p, i, j, m.coefficients)).collect();
    Ok(IdentityCheck::compare("mixed-product-undoubled", &m.forward, &rhs))
}
