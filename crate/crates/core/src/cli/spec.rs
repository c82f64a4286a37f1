//! Spec strings for groups and constructed objects.
//!
//! Groups: `abelian:9,9`, `semidirect:3:2`, `product:(A)x(B)`, and the affine
//! descriptors `affine-g1:3:2:+1`, `affine-g2:9:2:+1:mod=...`.
//!
//! Objects: `affine-g1:q:m:eps`, `affine-g2:q:m:eps`, `affine-abelian:q:m:eps`,
//! `affine-scheme-q4:q`, `affine-paley-q4:q`, `semidirect-scheme:p:t[:twisted]`,
//! `semidirect-paley:p:t[:twisted]`, `paley-field:q`, `latin3`, `latin3:L`,
//! `latin3:C` and `paley-product:(A)x(B)`.

use crate::constructions::{
    affine_abelian_with, affine_g1_with, affine_g2_with, affine_paley_selection, affine_scheme_q4_with,
    latin3_partitions, paley_field_set, paley_selection, semidirect_scheme, AffineConstruction, PaleyKind,
};
use crate::error::{Error, Result};
use crate::groups::{abelian_group, direct_product, semidirect_group, ElementSet, GroupHandle};
use crate::partition::PartitionScheme;
use crate::products::paley_product;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    Pds,
    Ds,
}

#[derive(Debug, Clone)]
pub struct NamedSet {
    pub label: String,
    pub set: ElementSet,
    pub kind: SetKind,
}

/// Result of building an object spec: a group with its distinguished sets and partitions.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub spec: String,
    pub provenance: String,
    pub group: GroupHandle,
    pub sets: Vec<NamedSet>,
    pub partitions: Vec<PartitionScheme>,
    pub affine: Option<AffineConstruction>,
}

impl Artifact {
    pub fn main_set(&self) -> Result<&NamedSet> {
        self.sets.first().ok_or_else(|| Error::Parse(format!("`{}` does not define a set", self.spec)))
    }

    pub fn main_partition(&self) -> Result<&PartitionScheme> {
        self.partitions.first().ok_or_else(|| Error::Parse(format!("`{}` does not define a partition", self.spec)))
    }
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad {what} `{s}`")))
}

pub fn parse_eps(s: &str) -> Result<i32> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => Err(Error::Parse(format!("eps must be +1 or -1, got `{other}`"))),
    }
}

/// Splits `(A)x(B)` at the top-level `)x(`.
fn split_pair(s: &str) -> Result<(&str, &str)> {
    let bad = || Error::Parse(format!("expected `(A)x(B)`, got `{s}`"));
    let b = s.as_bytes();
    if b.first() != Some(&b'(') || b.last() != Some(&b')') {
        return Err(bad());
    }
    let mut depth = 0i32;
    for (i, &c) in b.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return if s[i + 1..].starts_with("x(") {
                        Ok((&s[1..i], &s[i + 3..s.len() - 1]))
                    } else {
                        Err(bad())
                    };
                }
            }
            _ => {}
        }
        if depth < 0 {
            return Err(bad());
        }
    }
    Err(bad())
}

/// Affine fields: `q:m:eps[:mod=c0,c1,...]`.
fn affine_fields(parts: &[&str]) -> Result<(u64, u32, i32, Option<Vec<u32>>)> {
    if parts.len() < 3 || parts.len() > 4 {
        return Err(Error::Parse("affine spec needs q:m:eps[:mod=...]".into()));
    }
    let modulus = match parts.get(3) {
        Some(m) => {
            let list = m.strip_prefix("mod=").ok_or_else(|| Error::Parse(format!("bad modulus `{m}`")))?;
            Some(list.split(',').map(|c| num(c, "modulus coefficient")).collect::<Result<Vec<u32>>>()?)
        }
        None => None,
    };
    Ok((num(parts[0], "q")?, num(parts[1], "m")?, parse_eps(parts[2])?, modulus))
}

fn semidirect_fields(parts: &[&str]) -> Result<(u32, u32, bool)> {
    let twisted = match parts.get(2) {
        None => false,
        Some(&"twisted") => true,
        Some(&"abelian") => false,
        Some(x) => return Err(Error::Parse(format!("expected `twisted`, got `{x}`"))),
    };
    if parts.len() < 2 || parts.len() > 3 {
        return Err(Error::Parse("semidirect spec needs p:t[:twisted]".into()));
    }
    Ok((num(parts[0], "p")?, num(parts[1], "t")?, twisted))
}

pub fn parse_group(s: &str) -> Result<GroupHandle> {
    let s = s.trim();
    let (head, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("bad group spec `{s}`")))?;
    match head {
        "abelian" => abelian_group(&rest.split(',').map(|o| num(o, "order")).collect::<Result<Vec<u64>>>()?),
        "semidirect" => {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 2 {
                return Err(Error::Parse("semidirect group spec needs p:t".into()));
            }
            semidirect_group(num(parts[0], "p")?, num(parts[1], "t")?)
        }
        "product" => {
            let (a, b) = split_pair(rest)?;
            direct_product(&parse_group(a)?, &parse_group(b)?)
        }
        "affine-g1" | "affine-g2" => Ok(build_affine(head, rest)?.group),
        _ => Err(Error::Parse(format!("unknown group family `{head}`"))),
    }
}

fn build_affine(head: &str, rest: &str) -> Result<AffineConstruction> {
    let parts: Vec<&str> = rest.split(':').collect();
    let (q, m, eps, modulus) = affine_fields(&parts)?;
    let md = modulus.as_deref();
    match head {
        "affine-g1" => affine_g1_with(q, m, eps, md),
        "affine-g2" => affine_g2_with(q, m, eps, md),
        _ => affine_abelian_with(q, m, eps, md),
    }
}

pub fn parse_artifact(s: &str) -> Result<Artifact> {
    let s = s.trim();
    let (head, rest) = match s.split_once(':') {
        Some((h, r)) => (h, r),
        None => (s, ""),
    };
    let parts: Vec<&str> = if rest.is_empty() { Vec::new() } else { rest.split(':').collect() };
    let art = |provenance: &str, group: GroupHandle, sets, partitions, affine| Artifact {
        spec: s.to_string(),
        provenance: provenance.to_string(),
        group,
        sets,
        partitions,
        affine,
    };
    match head {
        "affine-g1" | "affine-g2" | "affine-abelian" => {
            let c = build_affine(head, rest)?;
            Ok(art(head, c.group.clone(), Vec::new(), vec![c.scheme.clone()], Some(c)))
        }
        "affine-scheme-q4" | "affine-paley-q4" => {
            let [q] = parts[..] else {
                return Err(Error::Parse(format!("`{head}` needs q")));
            };
            let q: u64 = num(q, "q")?;
            let (base, scheme) = affine_scheme_q4_with(q, None)?;
            let set = scheme.fuse(&affine_paley_selection(q));
            let paley = NamedSet { label: "paley".into(), set, kind: SetKind::Pds };
            let sets = if head == "affine-paley-q4" { vec![paley] } else { Vec::new() };
            Ok(art(head, base.group.clone(), sets, vec![scheme], Some(base)))
        }
        "semidirect-scheme" | "semidirect-paley" => {
            let (p, t, twisted) = semidirect_fields(&parts)?;
            let (g, scheme) = semidirect_scheme(p, t, twisted)?;
            let paley = NamedSet { label: "paley".into(), set: scheme.fuse(&paley_selection(p)), kind: SetKind::Pds };
            let sets = if head == "semidirect-paley" { vec![paley] } else { Vec::new() };
            let prov = if twisted { "semidirect-twisted" } else { "semidirect-abelian" };
            let prov = if head == "semidirect-paley" { format!("{prov}-paley") } else { prov.to_string() };
            Ok(art(&prov, g, sets, vec![scheme], None))
        }
        "paley-field" => {
            let [q] = parts[..] else {
                return Err(Error::Parse("`paley-field` needs q".into()));
            };
            let (g, set, kind) = paley_field_set(num(q, "q")?)?;
            let kind = if kind == PaleyKind::Pds { SetKind::Pds } else { SetKind::Ds };
            Ok(art("paley-field", g, vec![NamedSet { label: "squares".into(), set, kind }], Vec::new(), None))
        }
        "latin3" => {
            let (l, c) = latin3_partitions()?;
            let partitions = match parts[..] {
                [] => vec![l, c],
                ["L"] => vec![l],
                ["C"] => vec![c],
                _ => return Err(Error::Parse("`latin3` takes L or C".into())),
            };
            Ok(art("latin3", partitions[0].owner().clone(), Vec::new(), partitions, None))
        }
        "paley-product" => {
            let (a, b) = split_pair(rest)?;
            let (a, b) = (parse_artifact(a)?, parse_artifact(b)?);
            let (g, set) = paley_product(&a.group, &a.main_set()?.set, &b.group, &b.main_set()?.set)?;
            Ok(art(
                "paley-product",
                g,
                vec![NamedSet { label: "paley".into(), set, kind: SetKind::Pds }],
                Vec::new(),
                None,
            ))
        }
        _ => Err(Error::Parse(format!("unknown construction `{head}`"))),
    }
}
