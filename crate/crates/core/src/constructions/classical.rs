use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldCtx, SquareClass};
use crate::groups::{abelian_group, ElementSet, GroupHandle};
use crate::partition::PartitionScheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PaleyKind {
    Pds,
    Ds,
}

/// Nonzero squares in the additive group of GF(q). Field indices are the
/// abelian indices of `Z_p^e`, so the set is read off the square-class table.
pub fn paley_field_set(q: u64) -> Result<(GroupHandle, ElementSet, PaleyKind)> {
    let (p, e) = prime_power(q)
        .filter(|&(p, _)| p % 2 == 1)
        .ok_or_else(|| Error::BadParameters(format!("q = {q} is not an odd prime power")))?;
    let f = FieldCtx::new(p, e, None)?;
    let g = abelian_group(&vec![p as u64; e as usize])?;
    let set = ElementSet::from_idx_iter(&g, (1..f.order()).filter(|&a| f.square_class_of(a) == SquareClass::Square));
    let kind = if q % 4 == 1 { PaleyKind::Pds } else { PaleyKind::Ds };
    Ok((g, set, kind))
}

/// The Latin partition `(H3 ∪ H4, H1, H2)` and the negative Latin partition
/// `(∅, H1 ∪ H2, H3 ∪ H4)` of `Z_3^2 = ⟨x, y⟩`.
pub fn latin3_partitions() -> Result<(PartitionScheme, PartitionScheme)> {
    let g = abelian_group(&[3, 3])?;
    let e = |a: u32, b: u32| a + 3 * b;
    let h1 = [e(1, 0), e(2, 0)];
    let h2 = [e(1, 1), e(2, 2)];
    let h3 = [e(1, 2), e(2, 1)];
    let h4 = [e(0, 1), e(0, 2)];
    let set = |parts: &[&[u32]]| ElementSet::from_idx_iter(&g, parts.iter().flat_map(|p| p.iter().copied()));
    let labels = |s: &str| (0..3).map(|i| format!("{s}{i}")).collect::<Vec<_>>();
    let latin = PartitionScheme::new(&g, vec![set(&[&h3, &h4]), set(&[&h1]), set(&[&h2])], labels("L"))?;
    let neg = PartitionScheme::new(&g, vec![set(&[]), set(&[&h1, &h2]), set(&[&h3, &h4])], labels("C"))?;
    Ok((latin, neg))
}
