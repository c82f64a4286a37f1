//! Certificates for PDS and DS claims, backed by a full difference census.

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use super::census::difference_census;
use crate::error::Result;
use crate::groups::{ElementSet, GroupHandle};

pub const HASH_ALG: &str = "sha256";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    Pds,
    Ds,
    NotRegular,
    NotPds,
    NotDs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Params {
    Pds { v: u64, k: u64, lambda: u64, mu: u64 },
    Ds { v: u64, k: u64, lambda: u64 },
}

impl Params {
    pub fn v(&self) -> u64 {
        match *self {
            Params::Pds { v, .. } | Params::Ds { v, .. } => v,
        }
    }

    pub fn k(&self) -> u64 {
        match *self {
            Params::Pds { k, .. } | Params::Ds { k, .. } => k,
        }
    }

    pub fn lambda(&self) -> u64 {
        match *self {
            Params::Pds { lambda, .. } | Params::Ds { lambda, .. } => lambda,
        }
    }

    pub fn mu(&self) -> Option<u64> {
        match *self {
            Params::Pds { mu, .. } => Some(mu),
            Params::Ds { .. } => None,
        }
    }

    pub fn as_vec(&self) -> Vec<u64> {
        match *self {
            Params::Pds { v, k, lambda, mu } => vec![v, k, lambda, mu],
            Params::Ds { v, k, lambda } => vec![v, k, lambda],
        }
    }

    /// `k(k-1) = λk + μ(v-k-1)` or `k(k-1) = λ(v-1)`.
    pub fn counting_identity_holds(&self) -> bool {
        match *self {
            Params::Pds { v, k, lambda, mu } => k * k.saturating_sub(1) == lambda * k + mu * (v - k - 1),
            Params::Ds { v, k, lambda } => k * k.saturating_sub(1) == lambda * (v - 1),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.as_vec().iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_vec().serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeTag {
    Latin { n: u64, r: u64 },
    NegLatin { n: u64, r: u64 },
    PaleyType,
    PaleyHadamard,
    TrivialSubgroup,
    Other,
}

impl TypeTag {
    pub fn is_latin(&self) -> bool {
        matches!(self, TypeTag::Latin { .. })
    }

    pub fn is_neg_latin(&self) -> bool {
        matches!(self, TypeTag::NegLatin { .. })
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::Latin { n, r } => write!(f, "Latin({n},{r})"),
            TypeTag::NegLatin { n, r } => write!(f, "NegLatin({n},{r})"),
            TypeTag::PaleyType => write!(f, "PaleyType"),
            TypeTag::PaleyHadamard => write!(f, "PaleyHadamard"),
            TypeTag::TrivialSubgroup => write!(f, "TrivialSubgroup"),
            TypeTag::Other => write!(f, "Other"),
        }
    }
}

impl Serialize for TypeTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn isqrt(v: u64) -> Option<u64> {
    let r = (v as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&n| n * n == v)
}

/// Every template the parameters match; `[Other]` if none.
pub fn classify_parameters(params: &Params) -> Vec<TypeTag> {
    let mut tags = Vec::new();
    match *params {
        Params::Pds { v, k, lambda, mu } => {
            let (l, m) = (lambda as i64, mu as i64);
            if let Some(n) = isqrt(v).filter(|&n| n >= 2 && k > 0) {
                if k % (n - 1) == 0 {
                    let r = (k / (n - 1)) as i64;
                    if l == n as i64 + r * r - 3 * r && m == r * r - r {
                        tags.push(TypeTag::Latin { n, r: r as u64 });
                    }
                }
                if k % (n + 1) == 0 {
                    let r = (k / (n + 1)) as i64;
                    if l == -(n as i64) + r * r + 3 * r && m == r * r + r {
                        tags.push(TypeTag::NegLatin { n, r: r as u64 });
                    }
                }
            }
            if v % 4 == 1 && 2 * k == v - 1 && 4 * lambda + 5 == v && 4 * mu + 1 == v {
                tags.push(TypeTag::PaleyType);
            }
            if k > 0 && lambda + 1 == k && mu == 0 {
                tags.push(TypeTag::TrivialSubgroup);
            }
        }
        Params::Ds { v, k, lambda } => {
            if v % 4 == 3 && 2 * k + 1 == v && 4 * lambda + 3 == v {
                tags.push(TypeTag::PaleyHadamard);
            }
        }
    }
    if tags.is_empty() {
        tags.push(TypeTag::Other);
    }
    tags
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub group: String,
    pub set_size: u64,
    pub set_hash: String,
    pub hash_alg: &'static str,
    pub kind: CertKind,
    pub params: Option<Params>,
    pub type_tags: Vec<TypeTag>,
    pub census_checksum: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        matches!(self.kind, CertKind::Pds | CertKind::Ds)
    }

    pub fn has_tag(&self, pred: impl Fn(&TypeTag) -> bool) -> bool {
        self.type_tags.iter().any(pred)
    }
}

/// SHA-256 of the ascending element indices as little-endian u64 values.
pub fn set_hash(s: &ElementSet) -> String {
    let mut h = Sha256::new();
    for i in s.indices() {
        h.update((i as u64).to_le_bytes());
    }
    hex::encode(h.finalize())
}

/// Identity-free and inverse-closed.
pub fn verify_regularity(s: &ElementSet) -> bool {
    !s.contains_identity() && s.is_inverse_closed()
}

fn constant_on(counts: &[u32], members: impl Iterator<Item = u32>) -> Option<Option<u64>> {
    let mut value = None;
    for x in members {
        let c = counts[x as usize] as u64;
        match value {
            None => value = Some(c),
            Some(v) if v != c => return None,
            _ => {}
        }
    }
    Some(value)
}

pub fn verify_pds(g: &GroupHandle, s: &ElementSet) -> Result<Certificate> {
    let start = Instant::now();
    let census = difference_census(g, s)?;
    let v = g.order();
    let k = s.len() as u64;
    let mut cert = Certificate {
        group: g.descriptor().to_string(),
        set_size: k,
        set_hash: set_hash(s),
        hash_alg: HASH_ALG,
        kind: CertKind::NotPds,
        params: None,
        type_tags: Vec::new(),
        census_checksum: census.checksum(),
        note: None,
        elapsed: Duration::ZERO,
    };
    let counts = census.counts();
    let on = constant_on(counts, s.indices().filter(|&x| x != 0));
    let off = constant_on(counts, (1..v as u32).filter(|&x| !s.contains_idx(x)));
    let regular = verify_regularity(s);
    if k == 0 {
        cert.note = Some("empty set (k = 0), a degenerate class".into());
    } else if k == v {
        cert.note = Some("the full group is not a PDS".into());
    } else if let (Some(lam), Some(mu)) = (on, off) {
        let note_mu = mu.is_none();
        let params = Params::Pds { v, k, lambda: lam.unwrap_or(0), mu: mu.unwrap_or(0) };
        if !regular {
            cert.kind = CertKind::NotRegular;
            cert.note = Some(format!(
                "differences are PDS-constant {params} but the set is not identity-free and inverse-closed"
            ));
        } else if !params.counting_identity_holds() {
            cert.note = Some(format!("census constants {params} violate the counting identity"));
        } else {
            cert.kind = CertKind::Pds;
            cert.type_tags = classify_parameters(&params);
            cert.params = Some(params);
            if note_mu {
                cert.note = Some("complement of the set is {1}; mu recorded as 0".into());
            }
        }
    } else if !regular {
        cert.kind = CertKind::NotRegular;
        cert.note = Some("not identity-free and inverse-closed".into());
    } else {
        cert.note = Some(describe_failure(counts, s, v));
    }
    cert.elapsed = start.elapsed();
    Ok(cert)
}

fn describe_failure(counts: &[u32], s: &ElementSet, v: u64) -> String {
    let range = |inside: bool| {
        let vals = (1..v as u32).filter(|&x| s.contains_idx(x) == inside).map(|x| counts[x as usize]);
        let (lo, hi) = vals.fold((u32::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
        format!("{lo}..{hi}")
    };
    format!("census not constant: inside {} outside {}", range(true), range(false))
}

pub fn verify_ds(g: &GroupHandle, s: &ElementSet) -> Result<Certificate> {
    let start = Instant::now();
    let census = difference_census(g, s)?;
    let v = g.order();
    let k = s.len() as u64;
    let mut cert = Certificate {
        group: g.descriptor().to_string(),
        set_size: k,
        set_hash: set_hash(s),
        hash_alg: HASH_ALG,
        kind: CertKind::NotDs,
        params: None,
        type_tags: Vec::new(),
        census_checksum: census.checksum(),
        note: None,
        elapsed: Duration::ZERO,
    };
    match constant_on(census.counts(), 1..v as u32) {
        _ if k == 0 => cert.note = Some("empty set (k = 0)".into()),
        Some(Some(lambda)) => {
            let params = Params::Ds { v, k, lambda };
            if params.counting_identity_holds() {
                cert.kind = CertKind::Ds;
                cert.type_tags = classify_parameters(&params);
                cert.params = Some(params);
            } else {
                cert.note = Some(format!("census constants {params} violate the counting identity"));
            }
        }
        _ => {
            let (lo, hi) = census.counts()[1..].iter().fold((u32::MAX, 0), |(lo, hi), &c| (lo.min(c), hi.max(c)));
            cert.note = Some(format!("census not constant on G - 1: {lo}..{hi}"));
        }
    }
    cert.elapsed = start.elapsed();
    Ok(cert)
}

#[derive(Debug, Clone, Serialize)]
pub struct SkewReport {
    pub is_skew_hadamard: bool,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A DS with `G = {1} ⊔ D ⊔ D^{(-1)}`.
pub fn verify_skew_hadamard(g: &GroupHandle, d: &ElementSet) -> Result<SkewReport> {
    let certificate = verify_ds(g, d)?;
    let inv = d.inverse();
    let note = if certificate.kind != CertKind::Ds {
        Some("not a difference set".to_string())
    } else if d.contains_identity() {
        Some("contains the identity".into())
    } else if !d.is_disjoint(&inv)? {
        Some("meets its own inverse image".into())
    } else if 2 * d.len() as u64 + 1 != g.order() {
        Some("D, D^(-1) and {1} do not cover the group".into())
    } else {
        None
    };
    Ok(SkewReport { is_skew_hadamard: note.is_none(), certificate, note })
}
