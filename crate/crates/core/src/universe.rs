//! Variable universes, block groupings and multi-degrees.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::PolyError;

/// Upper bound on the number of variables in any universe.
pub const MAX_VARS: usize = 16;

/// Dense index of a variable inside its [`Universe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VariableId(pub u8);

impl VariableId {
    pub fn index(self) -> usize {
        usize::from(self.0)
    }
}

/// An ordered list of distinct variable names. Polynomials only combine when
/// their universes are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    names: Vec<String>,
}

/// The three point coordinates of the projective plane.
pub const X_NAMES: [&str; 3] = ["x0", "x1", "x2"];

/// Exponent triples `(i0, i1, i2)` with `i0 + i1 + i2 = 3`, lexicographically
/// descending; this fixes the order of the cubic-coefficient variables.
pub const CUBIC_EXPONENTS: [[u8; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// Text name `a{i0}{i1}{i2}` of the coefficient variable for `x0^i0*x1^i1*x2^i2`.
pub fn coefficient_name(exps: [u8; 3]) -> String {
    format!("a{}{}{}", exps[0], exps[1], exps[2])
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(PolyError::InvalidVariableName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(Universe { names }))
    }

    /// `x0, x1, x2` followed by the ten cubic coefficients `a300 … a003`.
    pub fn flex() -> Arc<Self> {
        let names = X_NAMES
            .iter()
            .map(|s| s.to_string())
            .chain(CUBIC_EXPONENTS.iter().map(|e| coefficient_name(*e)));
        Universe::new(names).expect("flex universe is well formed")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: VariableId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<VariableId> {
        self.names.iter().position(|n| n == name).map(|i| VariableId(i as u8))
    }

    pub fn lookup(&self, name: &str) -> Result<VariableId, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn vars(&self) -> impl Iterator<Item = VariableId> + '_ {
        (0..self.names.len()).map(|i| VariableId(i as u8))
    }

    /// A new universe with `extra` appended after the existing names.
    pub fn extended<I, S>(&self, extra: I) -> Result<Arc<Self>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Universe::new(self.names.iter().cloned().chain(extra.into_iter().map(Into::into)))
    }

    /// Whether every name of `self` also occurs in `other`.
    pub fn is_subset_of(&self, other: &Universe) -> bool {
        self.names.iter().all(|n| other.index_of(n).is_some())
    }
}

/// A vector of per-block degrees, ordered like the blocks of the grouping.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every entry strictly positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&d| d > 0)
    }

    /// The same vector with the block order reversed.
    pub fn reversed(&self) -> MultiDegree {
        MultiDegree(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// An ordered partition of a universe into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableGrouping {
    universe: Arc<Universe>,
    blocks: Vec<Vec<VariableId>>,
    block_of: Vec<usize>,
}

impl VariableGrouping {
    pub fn new(universe: Arc<Universe>, blocks: Vec<Vec<VariableId>>) -> Result<Self, PolyError> {
        let mut block_of = vec![usize::MAX; universe.len()];
        if blocks.is_empty() {
            return Err(PolyError::InvalidGrouping("no blocks".into()));
        }
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PolyError::InvalidGrouping(format!("block {b} is empty")));
            }
            for &v in block {
                let slot = block_of.get_mut(v.index()).ok_or_else(|| {
                    PolyError::InvalidGrouping(format!("variable index {} out of range", v.0))
                })?;
                if *slot != usize::MAX {
                    return Err(PolyError::InvalidGrouping(format!(
                        "variable {} appears in two blocks",
                        universe.name(v)
                    )));
                }
                *slot = b;
            }
        }
        if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(PolyError::InvalidGrouping(format!(
                "variable {} is not covered",
                universe.names()[i]
            )));
        }
        Ok(VariableGrouping { universe, blocks, block_of })
    }

    pub fn from_names(universe: Arc<Universe>, blocks: &[Vec<&str>]) -> Result<Self, PolyError> {
        let ids = blocks
            .iter()
            .map(|b| b.iter().map(|n| universe.lookup(n)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        VariableGrouping::new(universe, ids)
    }

    /// Blocks `{x0, x1, x2}` and `{a300, …, a003}` of the flex universe.
    pub fn flex() -> Self {
        let universe = Universe::flex();
        let x = (0..3).map(VariableId).collect();
        let alpha = (3..13).map(VariableId).collect();
        VariableGrouping::new(universe, vec![x, alpha]).expect("flex grouping is a partition")
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> &[VariableId] {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[Vec<VariableId>] {
        &self.blocks
    }

    pub fn block_of(&self, v: VariableId) -> usize {
        self.block_of[v.index()]
    }

    /// The same partition over a larger universe containing every name of this one.
    /// Variables new to `target` must be listed in `extra_blocks`.
    pub fn lift_to(
        &self,
        target: &Arc<Universe>,
        extra_blocks: Vec<Vec<VariableId>>,
    ) -> Result<Self, PolyError> {
        let mut blocks = Vec::with_capacity(self.blocks.len() + extra_blocks.len());
        for block in &self.blocks {
            let mapped = block
                .iter()
                .map(|&v| target.lookup(self.universe.name(v)))
                .collect::<Result<Vec<_>, _>>()?;
            blocks.push(mapped);
        }
        blocks.extend(extra_blocks);
        VariableGrouping::new(target.clone(), blocks)
    }
}
