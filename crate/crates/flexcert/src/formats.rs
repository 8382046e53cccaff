//! JSON forms of polynomials and multi-cone systems.

use std::sync::Arc;

use flexcert_core::multicone::{ConeError, MultiConeSystem};
use flexcert_core::{
    parse, Monomial, ParseError, PolyError, Polynomial, Rationals, Scalar, Universe,
    VariableGrouping,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{0}")]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Cone(#[from] ConeError),
    #[error("generator {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error("term {index}: exponent vector has {found} entries, expected {expected}")]
    ExponentLength { index: usize, expected: usize, found: usize },
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

/// A polynomial as its variable names plus `(exponents, coefficient)` pairs
/// in canonical term order. Coefficients are strings (`"-3"`, `"1/2"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub variables: Vec<String>,
    pub terms: Vec<(Vec<u16>, Scalar)>,
}

impl PolynomialJson {
    pub fn from_poly(p: &Polynomial) -> Self {
        let n = p.universe().len();
        PolynomialJson {
            variables: p.universe().names().to_vec(),
            terms: p.terms().iter().map(|(m, c)| (m.exponents(n).to_vec(), c.clone())).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<Polynomial, FormatError> {
        let universe = Universe::new(self.variables.iter().cloned())?;
        self.to_poly_in(&universe)
    }

    /// Rebuilds the polynomial over an existing universe with the same names.
    pub fn to_poly_in(&self, universe: &Arc<Universe>) -> Result<Polynomial, FormatError> {
        if universe.names() != self.variables.as_slice() {
            return Err(PolyError::UniverseMismatch.into());
        }
        let n = universe.len();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (index, (exps, c)) in self.terms.iter().enumerate() {
            if exps.len() != n {
                return Err(FormatError::ExponentLength { index, expected: n, found: exps.len() });
            }
            let m = Monomial::from_exponents(exps).ok_or(PolyError::ExponentOverflow)?;
            terms.push((m, c.clone()));
        }
        Ok(Polynomial::from_terms(Rationals, universe.clone(), terms))
    }
}

/// A multi-cone system: variable blocks and generator expressions.
/// The universe is the concatenation of the blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub blocks: Vec<Vec<String>>,
    pub generators: Vec<String>,
}

impl SystemJson {
    pub fn from_system(sys: &MultiConeSystem) -> Self {
        let u = sys.grouping().universe();
        SystemJson {
            blocks: sys
                .grouping()
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&v| u.name(v).to_string()).collect())
                .collect(),
            generators: sys.generators().iter().map(|g| g.to_string()).collect(),
        }
    }

    /// Parses the generators and builds the grouping; does not check
    /// homogeneity (see [`SystemJson::to_system`]).
    pub fn to_parts(&self) -> Result<(VariableGrouping, Vec<Polynomial>), FormatError> {
        let universe = Universe::new(self.blocks.iter().flatten().cloned())?;
        let blocks: Vec<Vec<&str>> =
            self.blocks.iter().map(|b| b.iter().map(String::as_str).collect()).collect();
        let grouping = VariableGrouping::from_names(universe.clone(), &blocks)?;
        let generators = self
            .generators
            .iter()
            .enumerate()
            .map(|(index, text)| parse(text, &universe).map_err(|source| FormatError::Parse { index, source }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((grouping, generators))
    }

    pub fn to_system(&self) -> Result<MultiConeSystem, FormatError> {
        let (grouping, generators) = self.to_parts()?;
        Ok(MultiConeSystem::new(grouping, generators)?)
    }
}
