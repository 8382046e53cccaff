//! Torus actions on a product `V = V_1 × ⋯ × V_s` of coordinate blocks.
//!
//! The torus `T = (k^*)^s` scales block `i` by `t_i`. A system of generators
//! is a multi-cone system when every generator is multi-homogeneous; the
//! zero set `C` then contains each coordinate subspace `D_i = {v_i = 0}` as
//! soon as all block degrees are positive, and every point of `C ∩ U`
//! (all blocks nonzero) has its `T_i`-orbit curve inside `C`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::PolyError;
use crate::monomial::Monomial;
use crate::poly::{PointAssignment, Poly, Polynomial};
use crate::ring::{Rationals, Ring};
use crate::scalar::Scalar;
use crate::universe::{MultiDegree, VariableGrouping, VariableId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeError {
    BlockCountMismatch { expected: usize, found: usize },
    InvalidBlock(usize),
    ZeroTorusCoordinate(usize),
    ZeroParameter,
    NotOnCone { generator: usize },
    NotInU { block: usize },
    DeclaredMismatch { generator: usize, declared: MultiDegree, found: MultiDegree },
    Poly(PolyError),
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::BlockCountMismatch { expected, found } => {
                write!(f, "expected {expected} blocks, found {found}")
            }
            ConeError::InvalidBlock(i) => write!(f, "block index {i} out of range"),
            ConeError::ZeroTorusCoordinate(i) => write!(f, "torus coordinate {i} is zero"),
            ConeError::ZeroParameter => f.write_str("orbit parameter must be nonzero"),
            ConeError::NotOnCone { generator } => {
                write!(f, "point is not on the cone: generator {generator} does not vanish")
            }
            ConeError::NotInU { block } => write!(f, "block {block} of the point is zero"),
            ConeError::DeclaredMismatch { generator, declared, found } => write!(
                f,
                "generator {generator} has multidegree {found}, declared {declared}"
            ),
            ConeError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConeError {}

impl From<PolyError> for ConeError {
    fn from(e: PolyError) -> Self {
        ConeError::Poly(e)
    }
}

/// An element `(t_1, …, t_s)` of the torus; every coordinate is a unit.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusElement<R: Ring = Rationals> {
    ring: R,
    coords: Vec<R::Elem>,
}

impl<R: Ring> TorusElement<R> {
    pub fn new(ring: R, coords: Vec<R::Elem>) -> Result<Self, ConeError> {
        if let Some(i) = coords.iter().position(|c| ring.is_zero(c)) {
            return Err(ConeError::ZeroTorusCoordinate(i));
        }
        Ok(TorusElement { ring, coords })
    }

    pub fn identity(ring: R, s: usize) -> Self {
        let one = ring.one();
        TorusElement { coords: alloc::vec![one; s], ring }
    }

    pub fn coords(&self) -> &[R::Elem] {
        &self.coords
    }

    /// Componentwise product.
    pub fn compose(&self, other: &Self) -> Result<Self, ConeError> {
        if self.coords.len() != other.coords.len() {
            return Err(ConeError::BlockCountMismatch {
                expected: self.coords.len(),
                found: other.coords.len(),
            });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| self.ring.mul(a, b))
            .collect();
        Ok(TorusElement { ring: self.ring.clone(), coords })
    }

    /// `t^d = ∏ t_i^{d_i}`.
    pub fn character(&self, d: &MultiDegree) -> R::Elem {
        self.coords
            .iter()
            .zip(d.as_slice())
            .fold(self.ring.one(), |acc, (t, &e)| self.ring.mul(&acc, &self.ring.pow(t, e)))
    }
}

impl TorusElement<Rationals> {
    pub fn rational(coords: Vec<Scalar>) -> Result<Self, ConeError> {
        TorusElement::new(Rationals, coords)
    }
}

/// Coordinates used for the default torus translates.
pub const TRANSLATE_VALUES: [i64; 7] = [1, -1, 2, -2, 3, -3, 5];
pub const DEFAULT_TRANSLATES: usize = 16;

/// Sixteen distinct torus elements with coordinates from
/// `{±1, ±2, ±3, 5}`; elements with a coordinate that vanishes in `ring`
/// are skipped.
pub fn default_translates<R: Ring>(ring: &R, s: usize) -> Vec<TorusElement<R>> {
    (0..DEFAULT_TRANSLATES)
        .filter_map(|k| {
            let coords = (0..s)
                .map(|j| {
                    let idx = (k * (2 * j + 1) + j + k / 7) % TRANSLATE_VALUES.len();
                    ring.from_i64(TRANSLATE_VALUES[idx])
                })
                .collect();
            TorusElement::new(ring.clone(), coords).ok()
        })
        .collect()
}

/// A point of `V` together with its block structure.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPoint<R: Ring = Rationals> {
    ring: R,
    grouping: VariableGrouping,
    values: Vec<R::Elem>,
}

impl<R: Ring> BlockPoint<R> {
    pub fn new(ring: R, grouping: VariableGrouping, values: Vec<R::Elem>) -> Result<Self, ConeError> {
        let n = grouping.universe().len();
        if values.len() != n {
            return Err(PolyError::PointLength { expected: n, found: values.len() }.into());
        }
        Ok(BlockPoint { ring, grouping, values })
    }

    pub fn grouping(&self) -> &VariableGrouping {
        &self.grouping
    }

    pub fn values(&self) -> &[R::Elem] {
        &self.values
    }

    pub fn get(&self, v: VariableId) -> &R::Elem {
        &self.values[v.index()]
    }

    pub fn block_values(&self, i: usize) -> Vec<R::Elem> {
        self.grouping.block(i).iter().map(|v| self.values[v.index()].clone()).collect()
    }

    pub fn block_is_zero(&self, i: usize) -> bool {
        self.grouping.block(i).iter().all(|v| self.ring.is_zero(&self.values[v.index()]))
    }

    /// Membership in `U = V ∖ D`: every block has a nonzero coordinate.
    pub fn in_u(&self) -> bool {
        (0..self.grouping.num_blocks()).all(|i| !self.block_is_zero(i))
    }

    /// The point with block `i` replaced by zero.
    pub fn with_block_zeroed(&self, i: usize) -> Result<Self, ConeError> {
        if i >= self.grouping.num_blocks() {
            return Err(ConeError::InvalidBlock(i));
        }
        let mut out = self.clone();
        for v in self.grouping.block(i) {
            out.values[v.index()] = self.ring.zero();
        }
        Ok(out)
    }
}

impl BlockPoint<Rationals> {
    pub fn from_assignment(grouping: VariableGrouping, point: &PointAssignment) -> Result<Self, ConeError> {
        if point.universe() != grouping.universe() {
            return Err(PolyError::UniverseMismatch.into());
        }
        BlockPoint::new(Rationals, grouping, point.values().to_vec())
    }

    pub fn to_assignment(&self) -> PointAssignment {
        PointAssignment::new(self.grouping.universe().clone(), self.values.clone())
            .expect("length checked at construction")
    }
}

/// `(t·v)_i = t_i·v_i`.
pub fn torus_act<R: Ring>(t: &TorusElement<R>, v: &BlockPoint<R>) -> Result<BlockPoint<R>, ConeError> {
    let s = v.grouping.num_blocks();
    if t.coords.len() != s {
        return Err(ConeError::BlockCountMismatch { expected: s, found: t.coords.len() });
    }
    let mut out = v.clone();
    for (i, value) in out.values.iter_mut().enumerate() {
        let b = v.grouping.block_of(VariableId(i as u8));
        *value = v.ring.mul(&t.coords[b], value);
    }
    Ok(out)
}

/// Substitutes zero for every variable of block `block`.
pub fn restrict_block_to_zero<R: Ring>(
    p: &Poly<R>,
    grouping: &VariableGrouping,
    block: usize,
) -> Result<Poly<R>, ConeError> {
    if block >= grouping.num_blocks() {
        return Err(ConeError::InvalidBlock(block));
    }
    if p.universe() != grouping.universe() {
        return Err(PolyError::UniverseMismatch.into());
    }
    let zero = p.ring().zero();
    let assignments: Vec<(VariableId, R::Elem)> =
        grouping.block(block).iter().map(|&v| (v, zero.clone())).collect();
    Ok(p.specialize(&assignments))
}

/// Outcome of the symbolic homogeneity check for one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HomogeneityRecord {
    pub index: usize,
    pub generator: String,
    /// Block degrees read off `q(t·v) = t^d·q(v)`, or the reason it failed.
    pub degree: Option<MultiDegree>,
    pub positive: bool,
    pub witness_terms: Option<(String, String)>,
}

impl HomogeneityRecord {
    pub fn is_homogeneous(&self) -> bool {
        self.degree.is_some()
    }
}

/// Verifies `q(t·v) = t_1^{d_1}⋯t_s^{d_s}·q(v)` symbolically for each
/// generator by adjoining scale variables, one per block.
pub fn check_multihomogeneous(
    grouping: &VariableGrouping,
    generators: &[Polynomial],
) -> Result<Vec<HomogeneityRecord>, ConeError> {
    let u = grouping.universe();
    let s = grouping.num_blocks();
    let scale_names: Vec<String> = (1..=s).map(|i| format!("__t{i}")).collect();
    let big = u.extended(scale_names.iter().cloned())?;
    let scale_vars: Vec<VariableId> = scale_names.iter().map(|n| big.lookup(n)).collect::<Result<_, _>>()?;

    let mut map = BTreeMap::new();
    for v in u.vars() {
        let target = big.lookup(u.name(v))?;
        let t = Polynomial::var_in(&big, scale_vars[grouping.block_of(v)]);
        map.insert(target, &t * &Polynomial::var_in(&big, target));
    }

    let mut out = Vec::with_capacity(generators.len());
    for (index, q) in generators.iter().enumerate() {
        if q.universe() != u {
            return Err(PolyError::UniverseMismatch.into());
        }
        let lifted = q.embed(&big)?;
        let scaled = lifted.substitute(&map)?;
        let t_part = |m: &Monomial| -> Vec<u32> {
            scale_vars.iter().map(|&t| u32::from(m.exponent(t))).collect()
        };
        let strip = |m: &Monomial| -> String {
            let mut m = *m;
            for &t in &scale_vars {
                m.set_exponent(t, 0);
            }
            let text = m.display(&big).to_string();
            text
        };
        let mut record = HomogeneityRecord {
            index,
            generator: q.to_string(),
            degree: None,
            positive: false,
            witness_terms: None,
        };
        match scaled.terms().first() {
            // The zero polynomial satisfies the identity for every character.
            None => {}
            Some((m0, _)) => {
                let d0 = t_part(m0);
                match scaled.terms().iter().find(|(m, _)| t_part(m) != d0) {
                    Some((m1, _)) => record.witness_terms = Some((strip(m0), strip(m1))),
                    None => {
                        let mut char_mono = Monomial::ONE;
                        for (&t, &e) in scale_vars.iter().zip(&d0) {
                            char_mono.set_exponent(t, e as u16);
                        }
                        let character = Polynomial::from_terms(Rationals, big.clone(), [(char_mono, Scalar::ONE)]);
                        if scaled == &character * &lifted {
                            let d = MultiDegree(d0);
                            record.positive = d.is_positive();
                            record.degree = Some(d);
                        }
                    }
                }
            }
        }
        out.push(record);
    }
    Ok(out)
}

/// Generators `q_1, …, q_m` over a block grouping, each multi-homogeneous.
#[derive(Debug, Clone)]
pub struct MultiConeSystem {
    grouping: VariableGrouping,
    generators: Vec<Polynomial>,
    degrees: Vec<MultiDegree>,
    positive: bool,
}

impl MultiConeSystem {
    /// Infers each generator's multidegree; fails on the first generator that
    /// is zero or not multi-homogeneous.
    pub fn new(grouping: VariableGrouping, generators: Vec<Polynomial>) -> Result<Self, ConeError> {
        let degrees = generators
            .iter()
            .map(|q| q.multidegree(&grouping))
            .collect::<Result<Vec<_>, _>>()?;
        let positive = degrees.iter().all(MultiDegree::is_positive);
        Ok(MultiConeSystem { grouping, generators, degrees, positive })
    }

    pub fn with_declared(
        grouping: VariableGrouping,
        generators: Vec<Polynomial>,
        declared: Vec<MultiDegree>,
    ) -> Result<Self, ConeError> {
        let sys = Self::new(grouping, generators)?;
        for (i, (found, want)) in sys.degrees.iter().zip(&declared).enumerate() {
            if found != want {
                return Err(ConeError::DeclaredMismatch {
                    generator: i,
                    declared: want.clone(),
                    found: found.clone(),
                });
            }
        }
        if declared.len() != sys.degrees.len() {
            return Err(ConeError::BlockCountMismatch { expected: sys.degrees.len(), found: declared.len() });
        }
        Ok(sys)
    }

    pub fn grouping(&self) -> &VariableGrouping {
        &self.grouping
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degrees(&self) -> &[MultiDegree] {
        &self.degrees
    }

    /// Every generator has positive degree in every block.
    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn num_blocks(&self) -> usize {
        self.grouping.num_blocks()
    }

    /// Index of the first generator not vanishing at `v`, if any.
    pub fn first_nonvanishing(&self, v: &BlockPoint) -> Option<usize> {
        self.generators.iter().position(|q| !q.eval_values(v.values()).is_zero())
    }

    pub fn contains(&self, v: &BlockPoint) -> bool {
        self.first_nonvanishing(v).is_none()
    }

    pub fn point(&self, values: Vec<Scalar>) -> Result<BlockPoint, ConeError> {
        BlockPoint::new(Rationals, self.grouping.clone(), values)
    }
}

/// The point of the `T_i`-orbit of `c` with `t_i = t` and `t_j = 1` otherwise.
pub fn orbit_curve(sys: &MultiConeSystem, c: &BlockPoint, block: usize, t: &Scalar) -> Result<BlockPoint, ConeError> {
    let s = sys.num_blocks();
    if block >= s {
        return Err(ConeError::InvalidBlock(block));
    }
    if t.is_zero() {
        return Err(ConeError::ZeroParameter);
    }
    if c.grouping() != sys.grouping() {
        return Err(PolyError::UniverseMismatch.into());
    }
    if let Some(generator) = sys.first_nonvanishing(c) {
        return Err(ConeError::NotOnCone { generator });
    }
    if let Some(b) = (0..s).find(|&b| c.block_is_zero(b)) {
        return Err(ConeError::NotInU { block: b });
    }
    let mut coords = alloc::vec![Scalar::ONE; s];
    coords[block] = t.clone();
    torus_act(&TorusElement::rational(coords)?, c)
}

/// The `t → 0` end of the orbit curve: block `block` set to zero.
pub fn orbit_limit(sys: &MultiConeSystem, c: &BlockPoint, block: usize) -> Result<BlockPoint, ConeError> {
    if block >= sys.num_blocks() {
        return Err(ConeError::InvalidBlock(block));
    }
    c.with_block_zeroed(block)
}

/// Result of testing, at finitely many points, that every isotypic component
/// of `g` vanishes wherever `g` vanishes on the torus translates of the point.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IsotypicVanishingReport {
    pub components: Vec<MultiDegree>,
    pub points: usize,
    pub translates: usize,
    /// Points at which `g` vanished on every translate.
    pub applicable_points: usize,
    /// `(component index, point index)` pairs where a component survived.
    pub failures: Vec<(usize, usize)>,
    pub empirical: bool,
}

impl IsotypicVanishingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Decomposes `g` into isotypic components, then for each point `c` at
/// which `g(t·c) = 0` for every supplied translate `t`, checks that each
/// component vanishes at `c`. The check is empirical: it covers only the
/// supplied points.
pub fn isotypic_vanishing_check<R: Ring>(
    g: &Poly<R>,
    grouping: &VariableGrouping,
    points: &[BlockPoint<R>],
    translates: &[TorusElement<R>],
) -> Result<IsotypicVanishingReport, ConeError> {
    let parts = g.isotypic_decompose(grouping)?;
    let mut applicable = 0;
    let mut failures = Vec::new();
    for (pi, c) in points.iter().enumerate() {
        if c.grouping() != grouping {
            return Err(PolyError::UniverseMismatch.into());
        }
        let mut vanishes = g.ring().is_zero(&g.eval_values(c.values()));
        for t in translates {
            if !vanishes {
                break;
            }
            vanishes = g.ring().is_zero(&g.eval_values(torus_act(t, c)?.values()));
        }
        if !vanishes {
            continue;
        }
        applicable += 1;
        for (ci, (_, part)) in parts.iter().enumerate() {
            if !part.ring().is_zero(&part.eval_values(c.values())) {
                failures.push((ci, pi));
            }
        }
    }
    Ok(IsotypicVanishingReport {
        components: parts.into_iter().map(|(d, _)| d).collect(),
        points: points.len(),
        translates: translates.len(),
        applicable_points: applicable,
        failures,
        empirical: true,
    })
}
