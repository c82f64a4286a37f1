use crate::error::{Error, Result};
use crate::groups::{ElementSet, GroupHandle};

/// Labeled classes that should partition the nonidentity elements of `owner`.
/// Empty classes are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionScheme {
    owner: GroupHandle,
    classes: Vec<ElementSet>,
    labels: Vec<String>,
}

impl PartitionScheme {
    /// Builds and checks the disjoint cover; a failure is [`Error::PartitionFailure`].
    pub fn new(owner: &GroupHandle, classes: Vec<ElementSet>, labels: Vec<String>) -> Result<Self> {
        let scheme = Self::new_unchecked(owner, classes, labels)?;
        if let Some(problem) = scheme.cover_problem() {
            return Err(Error::PartitionFailure(problem));
        }
        Ok(scheme)
    }

    /// Skips the cover check; classes must still belong to `owner`.
    pub fn new_unchecked(owner: &GroupHandle, classes: Vec<ElementSet>, labels: Vec<String>) -> Result<Self> {
        if classes.len() != labels.len() {
            return Err(Error::BadParameters(format!("{} classes but {} labels", classes.len(), labels.len())));
        }
        for c in &classes {
            if c.owner() != owner {
                return Err(Error::HandleMismatch {
                    expected: owner.descriptor().to_string(),
                    found: c.owner().descriptor().to_string(),
                });
            }
        }
        Ok(PartitionScheme { owner: owner.clone(), classes, labels })
    }

    pub fn owner(&self) -> &GroupHandle {
        &self.owner
    }

    pub fn classes(&self) -> &[ElementSet] {
        &self.classes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &ElementSet {
        &self.classes[i]
    }

    /// Index of the class containing a nonidentity element.
    pub fn class_of(&self, idx: u32) -> Option<usize> {
        self.classes.iter().position(|c| c.contains_idx(idx))
    }

    /// Lookup table element index → class index; the identity maps to `None`.
    pub fn class_map(&self) -> Vec<Option<u32>> {
        let mut map = vec![None; self.owner.order() as usize];
        for (i, c) in self.classes.iter().enumerate() {
            for x in c.indices() {
                map[x as usize] = Some(i as u32);
            }
        }
        map
    }

    /// Union of the selected classes.
    pub fn fuse(&self, selection: &[usize]) -> ElementSet {
        let mut out = ElementSet::empty(&self.owner);
        for &i in selection {
            for x in self.classes[i].indices() {
                out.insert_idx(x);
            }
        }
        out
    }

    /// Describes the first way the classes fail to partition `G - {1}`.
    pub fn cover_problem(&self) -> Option<String> {
        let v = self.owner.order() as usize;
        let mut seen = vec![usize::MAX; v];
        for (i, c) in self.classes.iter().enumerate() {
            if c.contains_identity() {
                return Some(format!("class {} contains the identity", self.labels[i]));
            }
            for x in c.indices() {
                let prev = seen[x as usize];
                if prev != usize::MAX {
                    return Some(format!("element {x} lies in both {} and {}", self.labels[prev], self.labels[i]));
                }
                seen[x as usize] = i;
            }
        }
        seen.iter().skip(1).position(|&c| c == usize::MAX).map(|x| format!("element {} is in no class", x + 1))
    }
}
