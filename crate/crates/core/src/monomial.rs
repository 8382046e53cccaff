use core::cmp::Ordering;
use core::fmt;

use crate::universe::{Universe, VariableGrouping, VariableId, MultiDegree, MAX_VARS};
use alloc::vec::Vec;

/// Dense exponent vector. Unused trailing slots are zero, so monomials from
/// the same universe compare correctly without knowing its length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS] };

    pub fn var(v: VariableId) -> Self {
        let mut m = Monomial::ONE;
        m.exps[v.index()] = 1;
        m
    }

    /// `None` if there are more than [`MAX_VARS`] exponents.
    pub fn from_exponents(exps: &[u16]) -> Option<Self> {
        if exps.len() > MAX_VARS {
            return None;
        }
        let mut m = Monomial::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        Some(m)
    }

    pub fn exponent(&self, v: VariableId) -> u16 {
        self.exps[v.index()]
    }

    pub fn set_exponent(&mut self, v: VariableId, e: u16) {
        self.exps[v.index()] = e;
    }

    pub fn exponents(&self, n: usize) -> &[u16] {
        &self.exps[..n]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| u32::from(e)).sum()
    }

    /// Indices with a nonzero exponent, ascending.
    pub fn support(&self) -> impl Iterator<Item = (VariableId, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (VariableId(i as u8), e))
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        Some(out)
    }

    pub fn degree_in(&self, vars: &[VariableId]) -> u32 {
        vars.iter().map(|&v| u32::from(self.exps[v.index()])).sum()
    }

    pub fn multidegree(&self, grouping: &VariableGrouping) -> MultiDegree {
        MultiDegree(grouping.blocks().iter().map(|b| self.degree_in(b)).collect())
    }

    /// Renders as `x0^2*a300`, or `1` for the empty monomial.
    pub fn display<'a>(&'a self, universe: &'a Universe) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, universe }
    }

    pub(crate) fn write_factors(&self, universe: &Universe, f: &mut dyn fmt::Write) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(universe.name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }

    pub fn to_vec(&self, n: usize) -> Vec<u16> {
        self.exps[..n].to_vec()
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    universe: &'a Universe,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.m.write_factors(self.universe, f)
    }
}

/// Graded lexicographic: higher total degree is greater, ties broken by the
/// exponent of the lowest-indexed variable first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        f.debug_list().entries(&self.exps[..last]).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x0 = Monomial::var(VariableId(0));
        let x1 = Monomial::var(VariableId(1));
        let x1sq = x1.checked_mul(&x1).unwrap();
        assert!(x1sq > x0);
        assert!(x0 > x1);
        assert!(x1 > Monomial::ONE);
        let x0x2 = Monomial::from_exponents(&[1, 0, 1]).unwrap();
        assert!(x0x2 > x1sq);
    }

    #[test]
    fn exponent_overflow_is_detected() {
        let m = Monomial::from_exponents(&[u16::MAX]).unwrap();
        assert!(m.checked_mul(&Monomial::var(VariableId(0))).is_none());
    }
}
