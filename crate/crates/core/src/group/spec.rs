use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupAction};
use crate::error::Result;
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Cyclic,
    Symmetric,
}

/// JSON group document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { n: usize },
    Symmetric { n: usize },
    Cayley { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self, limits: &Limits) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { n } => FiniteGroup::standard(GroupKind::Cyclic, *n, limits),
            GroupSpec::Symmetric { n } => FiniteGroup::standard(GroupKind::Symmetric, *n, limits),
            GroupSpec::Cayley { table } => FiniteGroup::from_cayley_with(table, limits),
        }
    }

    /// The action this group naturally comes with: `S_n` on `0..n`, others
    /// on themselves by left multiplication.
    pub fn natural_action(&self, limits: &Limits) -> Result<GroupAction> {
        let g = Arc::new(self.build(limits)?);
        match self {
            GroupSpec::Symmetric { n } => GroupAction::new(g, *n, super::permutations_lex(*n)),
            _ => Ok(GroupAction::regular(g)),
        }
    }
}

/// JSON action document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub group: GroupSpec,
    pub set_size: usize,
    pub act: Vec<Vec<usize>>,
}

impl ActionSpec {
    pub fn build(&self, limits: &Limits) -> Result<GroupAction> {
        let g = Arc::new(self.group.build(limits)?);
        GroupAction::new(g, self.set_size, self.act.clone())
    }
}
