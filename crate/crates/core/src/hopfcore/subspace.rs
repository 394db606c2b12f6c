//! Blockwise subspaces of a presentation.

use std::collections::BTreeMap;

use crate::exactla::{subspace, FpMatrix, SubspaceOp};

use super::presentation::{BlockKey, Vector};
use super::HopfError;

/// One block of a graded subspace: the ambient basis indices of the block and a matrix whose
/// columns (in those coordinates) span the subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubBlock {
    pub indices: Vec<usize>,
    pub basis: FpMatrix,
}

impl SubBlock {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// The spanning vectors in global sparse form.
    pub fn vectors(&self) -> Vec<Vector> {
        (0..self.basis.cols())
            .map(|c| {
                self.indices
                    .iter()
                    .enumerate()
                    .filter_map(|(r, &i)| {
                        let x = self.basis.get(r, c);
                        (x != 0).then_some((i, x))
                    })
                    .collect()
            })
            .collect()
    }
}

/// A subspace given per (degree, weight) block. Blocks absent from the map are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSubspace {
    pub blocks: BTreeMap<BlockKey, SubBlock>,
}

impl GradedSubspace {
    /// Nonzero block dimensions.
    pub fn dims(&self) -> BTreeMap<BlockKey, usize> {
        self.blocks.iter().filter(|(_, b)| b.dim() > 0).map(|(k, b)| (*k, b.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(SubBlock::dim).sum()
    }

    pub fn dim_at(&self, key: BlockKey) -> usize {
        self.blocks.get(&key).map_or(0, SubBlock::dim)
    }

    /// All spanning vectors with their blocks.
    pub fn vectors(&self) -> Vec<(BlockKey, Vector)> {
        self.blocks.iter().flat_map(|(k, b)| b.vectors().into_iter().map(move |v| (*k, v))).collect()
    }

    /// Whether `self ⊆ other` blockwise.
    pub fn is_subspace_of(&self, other: &GradedSubspace) -> Result<bool, HopfError> {
        for (k, b) in &self.blocks {
            if b.dim() == 0 {
                continue;
            }
            let Some(o) = other.blocks.get(k) else { return Ok(false) };
            let s = subspace(SubspaceOp::Sum, &o.basis, &b.basis)?;
            if s.cols() != o.basis.rank() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Blockwise equality of spans.
    pub fn same_span(&self, other: &GradedSubspace) -> Result<bool, HopfError> {
        Ok(self.is_subspace_of(other)? && other.is_subspace_of(self)?)
    }
}
