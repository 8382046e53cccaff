//! Sparse multivariate polynomials in canonical form.
//!
//! Terms are kept sorted in descending graded-lex order with no zero
//! coefficients, so structural equality is polynomial equality.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::PolyError;
use crate::monomial::Monomial;
use crate::ring::{Rationals, Ring};
use crate::scalar::Scalar;
use crate::universe::{MultiDegree, Universe, VariableGrouping, VariableId};

#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring = Rationals> {
    ring: R,
    universe: Arc<Universe>,
    terms: Vec<(Monomial, R::Elem)>,
}

/// Polynomials with exact rational coefficients.
pub type Polynomial = Poly<Rationals>;

impl<R: Ring> Eq for Poly<R> where R::Elem: Eq {}

/// A total assignment of values to the variables of a universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointAssignment<E = Scalar> {
    universe: Arc<Universe>,
    values: Vec<E>,
}

impl<E: Clone> PointAssignment<E> {
    pub fn new(universe: Arc<Universe>, values: Vec<E>) -> Result<Self, PolyError> {
        if values.len() != universe.len() {
            return Err(PolyError::PointLength { expected: universe.len(), found: values.len() });
        }
        Ok(PointAssignment { universe, values })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn values(&self) -> &[E] {
        &self.values
    }

    pub fn get(&self, v: VariableId) -> &E {
        &self.values[v.index()]
    }

    pub fn set(&mut self, v: VariableId, value: E) {
        self.values[v.index()] = value;
    }

    pub fn into_values(self) -> Vec<E> {
        self.values
    }
}

impl<R: Ring> Poly<R> {
    pub fn zero(ring: R, universe: Arc<Universe>) -> Self {
        Poly { ring, universe, terms: Vec::new() }
    }

    pub fn constant(ring: R, universe: Arc<Universe>, c: R::Elem) -> Self {
        let terms = if ring.is_zero(&c) { Vec::new() } else { alloc::vec![(Monomial::ONE, c)] };
        Poly { ring, universe, terms }
    }

    pub fn one(ring: R, universe: Arc<Universe>) -> Self {
        let one = ring.one();
        Self::constant(ring, universe, one)
    }

    pub fn var(ring: R, universe: Arc<Universe>, v: VariableId) -> Self {
        assert!(v.index() < universe.len(), "variable index out of range");
        let one = ring.one();
        Poly { ring, universe, terms: alloc::vec![(Monomial::var(v), one)] }
    }

    /// Builds the canonical form of an arbitrary list of terms; repeated
    /// monomials are combined and zero sums dropped.
    pub fn from_terms<I>(ring: R, universe: Arc<Universe>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, R::Elem)>,
    {
        let mut acc: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (m, c) in terms {
            accumulate(&ring, &mut acc, m, c);
        }
        Self::from_map(ring, universe, acc)
    }

    fn from_map(ring: R, universe: Arc<Universe>, acc: BTreeMap<Monomial, R::Elem>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !ring.is_zero(c)).collect();
        Poly { ring, universe, terms }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> &[(Monomial, R::Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`Poly::is_zero`]: the zero polynomial has no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> R::Elem {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.ring.zero())
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.total_degree())
    }

    /// The constant value if the polynomial has no variables in its support.
    pub fn as_constant(&self) -> Option<R::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.ring.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.universe != other.universe {
            return Err(PolyError::UniverseMismatch);
        }
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let ring = &self.ring;
        let rhs = |c: &R::Elem| if negate_other { ring.neg(c) } else { c.clone() };
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                core::cmp::Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                core::cmp::Ordering::Less => {
                    out.push((*mb, rhs(cb)));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let s = if negate_other { ring.sub(ca, cb) } else { ring.add(ca, cb) };
                    if !ring.is_zero(&s) {
                        out.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (*m, rhs(c))));
        Poly { ring: self.ring.clone(), universe: self.universe.clone(), terms: out }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut acc: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(PolyError::ExponentOverflow)?;
                accumulate(&self.ring, &mut acc, m, self.ring.mul(ca, cb));
            }
        }
        Ok(Self::from_map(self.ring.clone(), self.universe.clone(), acc))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(self.ring.clone(), self.universe.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (*m, self.ring.mul(a, c)))
            .filter(|(_, a)| !self.ring.is_zero(a))
            .collect();
        Poly { ring: self.ring.clone(), universe: self.universe.clone(), terms }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.universe.clone());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn diff(&self, v: VariableId) -> Self {
        assert!(v.index() < self.universe.len(), "variable index out of range");
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.set_exponent(v, e - 1);
            let dc = self.ring.mul(c, &self.ring.from_i64(i64::from(e)));
            if !self.ring.is_zero(&dc) {
                terms.push((dm, dc));
            }
        }
        // Lowering one exponent can reorder terms of equal total degree.
        terms.sort_by_key(|t| core::cmp::Reverse(t.0));
        Poly { ring: self.ring.clone(), universe: self.universe.clone(), terms }
    }

    /// Iterated partial derivative, one step per listed variable.
    pub fn diff_many(&self, vars: &[VariableId]) -> Self {
        vars.iter().fold(self.clone(), |p, &v| p.diff(v))
    }

    /// Partial derivative by variable name.
    pub fn diff_name(&self, name: &str) -> Result<Self, PolyError> {
        let v = self.universe.lookup(name)?;
        Ok(self.diff(v))
    }

    /// Value at a point given as one coordinate per universe variable.
    ///
    /// # Panics
    /// If `values` does not have exactly one entry per variable.
    pub fn eval_values(&self, values: &[R::Elem]) -> R::Elem {
        assert_eq!(values.len(), self.universe.len(), "point length mismatch");
        let mut sum = self.ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.support() {
                t = self.ring.mul(&t, &self.ring.pow(&values[v.index()], u32::from(e)));
            }
            sum = self.ring.add(&sum, &t);
        }
        sum
    }

    pub fn evaluate(&self, point: &PointAssignment<R::Elem>) -> Result<R::Elem, PolyError> {
        if point.universe != self.universe {
            return Err(PolyError::UniverseMismatch);
        }
        Ok(self.eval_values(&point.values))
    }

    /// Simultaneous substitution. Variables absent from `map` stay fixed.
    /// Every image must share this polynomial's ring and universe.
    pub fn substitute(&self, map: &BTreeMap<VariableId, Self>) -> Result<Self, PolyError> {
        for img in map.values() {
            self.compatible(img)?;
        }
        let mut powers: BTreeMap<(VariableId, u16), Self> = BTreeMap::new();
        let mut acc: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut factor = Self::constant(self.ring.clone(), self.universe.clone(), c.clone());
            for (v, e) in m.support() {
                match map.get(&v) {
                    None => kept.set_exponent(v, e),
                    Some(img) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| img.pow(u32::from(e)));
                        factor = factor.checked_mul(pw)?;
                    }
                }
            }
            for (fm, fc) in factor.terms {
                let m = fm.checked_mul(&kept).ok_or(PolyError::ExponentOverflow)?;
                accumulate(&self.ring, &mut acc, m, fc);
            }
        }
        Ok(Self::from_map(self.ring.clone(), self.universe.clone(), acc))
    }

    /// Substitutes constants for some variables.
    pub fn specialize(&self, assignments: &[(VariableId, R::Elem)]) -> Self {
        let mut acc: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m = *m;
            let mut c = c.clone();
            for (v, value) in assignments {
                let e = m.exponent(*v);
                if e > 0 {
                    c = self.ring.mul(&c, &self.ring.pow(value, u32::from(e)));
                    m.set_exponent(*v, 0);
                }
            }
            accumulate(&self.ring, &mut acc, m, c);
        }
        Self::from_map(self.ring.clone(), self.universe.clone(), acc)
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable name of the current universe.
    pub fn embed(&self, target: &Arc<Universe>) -> Result<Self, PolyError> {
        let mapping = self
            .universe
            .vars()
            .map(|v| target.lookup(self.universe.name(v)))
            .collect::<Result<Vec<_>, _>>()?;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::ONE;
            for (v, e) in m.support() {
                out.set_exponent(mapping[v.index()], e);
            }
            (out, c.clone())
        });
        Ok(Self::from_terms(self.ring.clone(), target.clone(), terms))
    }

    /// Coefficient-wise conversion into another ring. Returns `None` as soon
    /// as `convert` rejects a coefficient.
    pub fn try_map_coefficients<S, F>(&self, ring: S, mut convert: F) -> Option<Poly<S>>
    where
        S: Ring,
        F: FnMut(&R::Elem) -> Option<S::Elem>,
    {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((*m, convert(c)?));
        }
        Some(Poly::from_terms(ring, self.universe.clone(), terms))
    }

    /// The common per-block degree vector of all terms.
    pub fn multidegree(&self, grouping: &VariableGrouping) -> Result<MultiDegree, PolyError> {
        if grouping.universe() != &self.universe {
            return Err(PolyError::UniverseMismatch);
        }
        let mut iter = self.terms.iter();
        let (m0, _) = iter.next().ok_or(PolyError::ZeroPolynomial)?;
        let d0 = m0.multidegree(grouping);
        for (m, _) in iter {
            let d = m.multidegree(grouping);
            if d != d0 {
                return Err(PolyError::NotHomogeneous {
                    first_term: render_monomial(m0, &self.universe),
                    first_degree: d0,
                    second_term: render_monomial(m, &self.universe),
                    second_degree: d,
                });
            }
        }
        Ok(d0)
    }

    /// Splits the polynomial into multi-homogeneous parts, one per distinct
    /// multidegree, sorted by multidegree. Zero gives an empty list.
    pub fn isotypic_decompose(
        &self,
        grouping: &VariableGrouping,
    ) -> Result<Vec<(MultiDegree, Self)>, PolyError> {
        if grouping.universe() != &self.universe {
            return Err(PolyError::UniverseMismatch);
        }
        let mut parts: BTreeMap<MultiDegree, Vec<(Monomial, R::Elem)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.multidegree(grouping)).or_default().push((*m, c.clone()));
        }
        Ok(parts
            .into_iter()
            .map(|(d, terms)| {
                // Subsequences of a sorted term list stay sorted.
                (d, Poly { ring: self.ring.clone(), universe: self.universe.clone(), terms })
            })
            .collect())
    }

    /// Writes the canonical text form, e.g. `3*x0^2*a300-x1+1`.
    pub fn write_canonical(&self, f: &mut dyn fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_char('0');
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = self.ring.is_negative(c);
            let magnitude = if negative { self.ring.neg(c) } else { c.clone() };
            if negative {
                f.write_char('-')?;
            } else if i > 0 {
                f.write_char('+')?;
            }
            let unit = magnitude == self.ring.one();
            if m.is_one() {
                self.ring.fmt_elem(&magnitude, f)?;
            } else {
                if !unit {
                    self.ring.fmt_elem(&magnitude, f)?;
                    f.write_char('*')?;
                }
                m.write_factors(&self.universe, f)?;
            }
        }
        Ok(())
    }
}

fn accumulate<R: Ring>(ring: &R, acc: &mut BTreeMap<Monomial, R::Elem>, m: Monomial, c: R::Elem) {
    use alloc::collections::btree_map::Entry;
    match acc.entry(m) {
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
        Entry::Occupied(mut slot) => {
            let s = ring.add(slot.get(), &c);
            *slot.get_mut() = s;
        }
    }
}

fn render_monomial(m: &Monomial, universe: &Universe) -> String {
    let mut s = String::new();
    let _ = m.write_factors(universe, &mut s);
    s
}

/// Determinant of a 3×3 matrix of polynomials by cofactor expansion along
/// the first row.
pub fn det3<R: Ring>(m: &[[Poly<R>; 3]; 3]) -> Result<Poly<R>, PolyError> {
    let minor = |a: &Poly<R>, b: &Poly<R>, c: &Poly<R>, d: &Poly<R>| -> Result<Poly<R>, PolyError> {
        a.checked_mul(d)?.checked_sub(&b.checked_mul(c)?)
    };
    let c0 = minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2])?;
    let c1 = minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2])?;
    let c2 = minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1])?;
    m[0][0]
        .checked_mul(&c0)?
        .checked_sub(&m[0][1].checked_mul(&c1)?)?
        .checked_add(&m[0][2].checked_mul(&c2)?)
}

impl Polynomial {
    pub fn zero_in(universe: &Arc<Universe>) -> Self {
        Poly::zero(Rationals, universe.clone())
    }

    pub fn constant_in(universe: &Arc<Universe>, c: impl Into<Scalar>) -> Self {
        Poly::constant(Rationals, universe.clone(), c.into())
    }

    pub fn var_in(universe: &Arc<Universe>, v: VariableId) -> Self {
        Poly::var(Rationals, universe.clone(), v)
    }

    /// The variable with the given name.
    pub fn named(universe: &Arc<Universe>, name: &str) -> Result<Self, PolyError> {
        Ok(Self::var_in(universe, universe.lookup(name)?))
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_canonical(f)
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// Operator forms panic on universe or ring mismatch; use the `checked_*`
// methods where that can happen.
impl<'a, R: Ring> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: &'a Poly<R>) -> Poly<R> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a, R: Ring> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: &'a Poly<R>) -> Poly<R> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a, R: Ring> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &'a Poly<R>) -> Poly<R> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        let terms = self.terms.iter().map(|(m, c)| (*m, self.ring.neg(c))).collect();
        Poly { ring: self.ring.clone(), universe: self.universe.clone(), terms }
    }
}

macro_rules! forward_owned_poly {
    ($($tr:ident $m:ident),*) => {$(
        impl<R: Ring> $tr<Poly<R>> for Poly<R> {
            type Output = Poly<R>;
            fn $m(self, rhs: Poly<R>) -> Poly<R> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned_poly!(Add add, Sub sub, Mul mul);

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}
