use fixedbitset::FixedBitSet;

use super::{ElementId, GroupHandle};
use crate::error::{Error, Result};

/// A subset of a group as a dense membership bitmap.
#[derive(Clone)]
pub struct ElementSet {
    owner: GroupHandle,
    bits: FixedBitSet,
    len: usize,
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ElementSet").field("owner", &self.owner.descriptor()).field("len", &self.len).finish()
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.owner == other.owner && self.bits == other.bits
    }
}

impl Eq for ElementSet {}

impl ElementSet {
    pub fn empty(owner: &GroupHandle) -> Self {
        ElementSet { owner: owner.clone(), bits: FixedBitSet::with_capacity(owner.order() as usize), len: 0 }
    }

    pub fn from_indices<I: IntoIterator<Item = u64>>(owner: &GroupHandle, ids: I) -> Result<Self> {
        let mut s = Self::empty(owner);
        for i in ids {
            if i >= owner.order() {
                return Err(Error::IndexOutOfRange { idx: i, order: owner.order() });
            }
            s.insert_idx(i as u32);
        }
        Ok(s)
    }

    /// Panics on out-of-range indices; for internal construction.
    pub fn from_idx_iter<I: IntoIterator<Item = u32>>(owner: &GroupHandle, ids: I) -> Self {
        let mut s = Self::empty(owner);
        for i in ids {
            s.insert_idx(i);
        }
        s
    }

    pub fn owner(&self) -> &GroupHandle {
        &self.owner
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains_idx(&self, idx: u32) -> bool {
        self.bits.contains(idx as usize)
    }

    pub fn contains(&self, e: ElementId) -> Result<bool> {
        self.owner.check(e)?;
        Ok(self.contains_idx(e.index()))
    }

    #[inline]
    pub fn insert_idx(&mut self, idx: u32) {
        if !self.bits.put(idx as usize) {
            self.len += 1;
        }
    }

    pub fn insert(&mut self, e: ElementId) -> Result<()> {
        self.owner.check(e)?;
        self.insert_idx(e.index());
        Ok(())
    }

    pub fn remove_idx(&mut self, idx: u32) {
        if self.bits.contains(idx as usize) {
            self.bits.set(idx as usize, false);
            self.len -= 1;
        }
    }

    pub(super) fn fill(&mut self) {
        self.bits.insert_range(..);
        self.len = self.bits.len();
    }

    /// Ascending element indices.
    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.indices().collect()
    }

    fn same_owner(&self, other: &ElementSet) -> Result<()> {
        if self.owner != other.owner {
            return Err(Error::HandleMismatch {
                expected: self.owner.descriptor().to_string(),
                found: other.owner.descriptor().to_string(),
            });
        }
        Ok(())
    }

    fn with_bits(&self, bits: FixedBitSet) -> Self {
        let len = bits.count_ones(..);
        ElementSet { owner: self.owner.clone(), bits, len }
    }

    pub fn union(&self, other: &ElementSet) -> Result<Self> {
        self.same_owner(other)?;
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Ok(self.with_bits(bits))
    }

    pub fn intersection(&self, other: &ElementSet) -> Result<Self> {
        self.same_owner(other)?;
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(self.with_bits(bits))
    }

    pub fn difference(&self, other: &ElementSet) -> Result<Self> {
        self.same_owner(other)?;
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Ok(self.with_bits(bits))
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> Result<bool> {
        self.same_owner(other)?;
        Ok(self.bits.is_disjoint(&other.bits))
    }

    /// `G - S`.
    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        self.with_bits(bits)
    }

    /// `G - 1 - S`, the complement used for PDS pairs.
    pub fn nonidentity_complement(&self) -> Self {
        let mut c = self.complement();
        c.remove_idx(0);
        c
    }

    pub fn without_identity(&self) -> Self {
        let mut c = self.clone();
        c.remove_idx(0);
        c
    }

    pub fn with_identity(&self) -> Self {
        let mut c = self.clone();
        c.insert_idx(0);
        c
    }

    /// `S^{(-1)}`.
    pub fn inverse(&self) -> Self {
        let mut out = ElementSet::empty(&self.owner);
        for i in self.indices() {
            out.insert_idx(self.owner.inv_idx(i));
        }
        out
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.indices().all(|i| self.contains_idx(self.owner.inv_idx(i)))
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_idx(0)
    }

    /// Re-homes a set onto a group with the same descriptor.
    pub fn rebind(&self, owner: &GroupHandle) -> Result<Self> {
        if owner.order() != self.owner.order() {
            return Err(Error::SizeMismatch(format!(
                "cannot move a set from order {} to order {}",
                self.owner.order(),
                owner.order()
            )));
        }
        Ok(ElementSet { owner: owner.clone(), bits: self.bits.clone(), len: self.len })
    }
}
