//! Reductions modulo small primes: exhaustive flex scans over `P²(F_p)`,
//! constructive surjectivity of the flex cone onto the point plane, and
//! seeded sampling of points on `{f = h = 0}`.
//!
//! Sampling uses `ChaCha8Rng::seed_from_u64(seed)`, which is stable across
//! platforms and releases; every report carries its seed.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::PolyError;
use crate::flex::{self, alpha, cubic_monomial, FlexError, Matrix3, WITNESS_X, X};
use crate::multicone::BlockPoint;
use crate::poly::{PointAssignment, Poly, Polynomial};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::universe::{VariableGrouping, VariableId, CUBIC_EXPONENTS};

/// Largest supported modulus.
pub const MAX_PRIME: u32 = 65521;
/// Largest modulus for which the whole plane is enumerated.
pub const MAX_ENUMERATION_PRIME: u32 = 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// Characteristic 2 and 3 are excluded, so `2`, `3` and `6` stay units.
    OutOfRange(u32),
    NotPrime(u32),
    /// A coefficient or coordinate has a denominator divisible by `p`.
    NotIntegral,
    ZeroCubic,
    EnumerationTooLarge(u32),
    SamplingExhausted { attempts: usize },
    Poly(PolyError),
    Flex(FlexError),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::OutOfRange(p) => write!(f, "modulus {p} must satisfy 3 < p <= {MAX_PRIME}"),
            FieldError::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            FieldError::NotIntegral => f.write_str("denominator divisible by the modulus"),
            FieldError::ZeroCubic => f.write_str("the zero cubic has no flexes"),
            FieldError::EnumerationTooLarge(p) => write!(
                f,
                "enumerating the plane needs p <= {MAX_ENUMERATION_PRIME}, got {p}"
            ),
            FieldError::SamplingExhausted { attempts } => {
                write!(f, "no point found after {attempts} attempts")
            }
            FieldError::Poly(e) => write!(f, "{e}"),
            FieldError::Flex(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FieldError {}

impl From<PolyError> for FieldError {
    fn from(e: PolyError) -> Self {
        FieldError::Poly(e)
    }
}

impl From<FlexError> for FieldError {
    fn from(e: FlexError) -> Self {
        FieldError::Flex(e)
    }
}

/// `Z/pZ` with residues `0..p` stored as `u32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if p <= 3 || p > MAX_PRIME {
            return Err(FieldError::OutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u32 {
        n.rem_euclid(i64::from(self.p)) as u32
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(&a, self.p - 2))
        }
    }

    /// Number of points of the projective plane, `p² + p + 1`.
    pub fn plane_size(&self) -> usize {
        let p = self.p as usize;
        p * p + p + 1
    }

    /// `a` as the integer in `(-p/2, p/2]`, handy for printing.
    pub fn signed(&self, a: u32) -> i64 {
        let a = i64::from(a);
        let p = i64::from(self.p);
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

impl Ring for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.elem(n)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((u64::from(*a) + u64::from(*b)) % u64::from(self.p)) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((u64::from(*a) * u64::from(*b)) % u64::from(self.p)) as u32
    }
    fn fmt_elem(&self, a: &u32, f: &mut dyn fmt::Write) -> fmt::Result {
        write!(f, "{a}")
    }
}

pub type FpPolynomial = Poly<PrimeField>;

/// Coefficient-wise reduction. Fails if a denominator is divisible by `p`.
pub fn reduce_mod_p(p: &Polynomial, field: PrimeField) -> Result<FpPolynomial, FieldError> {
    p.try_map_coefficients(field, |c| c.rem_euclid_prime(field.p))
        .ok_or(FieldError::NotIntegral)
}

pub fn reduce_scalar(c: &Scalar, field: PrimeField) -> Result<u32, FieldError> {
    c.rem_euclid_prime(field.p).ok_or(FieldError::NotIntegral)
}

pub fn reduce_point(point: &PointAssignment, field: PrimeField) -> Result<Vec<u32>, FieldError> {
    point.values().iter().map(|c| reduce_scalar(c, field)).collect()
}

/// A point of `P²(F_p)` whose first nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProjectivePoint2([u32; 3]);

impl ProjectivePoint2 {
    /// Normal form of a nonzero vector; `None` for the zero vector.
    pub fn normalize(field: PrimeField, v: [u32; 3]) -> Option<Self> {
        let v = v.map(|c| c % field.p);
        let lead = *v.iter().find(|&&c| c != 0)?;
        let inv = field.inv(lead).expect("nonzero residue");
        Some(ProjectivePoint2(v.map(|c| field.mul(&c, &inv))))
    }

    pub fn coords(&self) -> [u32; 3] {
        self.0
    }

    /// Every point of the plane, in lexicographic order of normal forms.
    pub fn all(field: PrimeField) -> Vec<Self> {
        let p = field.p;
        let mut out = Vec::with_capacity(field.plane_size());
        for a in 0..p {
            for b in 0..p {
                out.push(ProjectivePoint2([1, a, b]));
            }
        }
        for b in 0..p {
            out.push(ProjectivePoint2([0, 1, b]));
        }
        out.push(ProjectivePoint2([0, 0, 1]));
        out.sort();
        out
    }
}

impl fmt::Display for ProjectivePoint2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Whether `points` contains every point of some line of `P²(F_p)`.
pub fn contains_full_line(field: PrimeField, points: &[ProjectivePoint2]) -> bool {
    if points.len() < field.p as usize + 1 {
        return false;
    }
    let set: alloc::collections::BTreeSet<ProjectivePoint2> = points.iter().copied().collect();
    // Lines are the points of the dual plane.
    ProjectivePoint2::all(field).into_iter().any(|line| {
        let l = line.0;
        ProjectivePoint2::all(field).into_iter().all(|q| {
            let dot = (0..3).fold(0, |acc, i| field.add(&acc, &field.mul(&l[i], &q.0[i])));
            dot != 0 || set.contains(&q)
        })
    })
}

/// A cubic (ten coefficients in the order `a300 … a003`) with a flex at `point`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FlexWitness {
    pub cubic: [u32; 10],
    pub point: ProjectivePoint2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SurjectivityReport {
    pub prime: u32,
    pub total: usize,
    pub covered: usize,
    pub failures: Vec<ProjectivePoint2>,
}

impl SurjectivityReport {
    pub fn complete(&self) -> bool {
        self.failures.is_empty() && self.covered == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FlexSurvey {
    pub prime: u32,
    pub seed: u64,
    pub cubics: usize,
    /// Cubics without any rational flex.
    pub empty: usize,
    /// Number of rational flexes → number of cubics.
    pub histogram: BTreeMap<usize, usize>,
    /// Cubics whose flex set contains a whole line (degenerate cubics).
    pub with_full_line: usize,
}

/// `f` and `h` reduced modulo a prime, with the scans built on them.
#[derive(Debug, Clone)]
pub struct FlexLab {
    field: PrimeField,
    grouping: VariableGrouping,
    f: FpPolynomial,
    h: FpPolynomial,
}

const MAX_LINE_DRAWS: usize = 8;
const MAX_SAMPLE_ATTEMPTS: usize = 10_000;

impl FlexLab {
    pub fn new(field: PrimeField) -> Self {
        let f = reduce_mod_p(&flex::build_f(), field).expect("integral");
        let h = reduce_mod_p(&flex::build_h(), field).expect("integral");
        FlexLab { field, grouping: VariableGrouping::flex(), f, h }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn f(&self) -> &FpPolynomial {
        &self.f
    }

    pub fn h(&self) -> &FpPolynomial {
        &self.h
    }

    /// Whether `f` and `h` both vanish at the full point `values`.
    pub fn on_cone(&self, values: &[u32]) -> bool {
        self.f.eval_values(values) == 0 && self.h.eval_values(values) == 0
    }

    fn alpha_assignments(cubic: &[u32; 10]) -> Vec<(VariableId, u32)> {
        CUBIC_EXPONENTS.iter().zip(cubic).map(|(&e, &c)| (alpha(e), c)).collect()
    }

    /// `f` and `h` with the cubic coefficients fixed, as forms in x0, x1, x2.
    pub fn forms_for_cubic(&self, cubic: &[u32; 10]) -> (FpPolynomial, FpPolynomial) {
        let a = Self::alpha_assignments(cubic);
        (self.f.specialize(&a), self.h.specialize(&a))
    }

    /// All points of `P²(F_p)` where the cubic and its Hessian both vanish.
    pub fn flexes_of_cubic(&self, cubic: &[u32; 10]) -> Result<Vec<ProjectivePoint2>, FieldError> {
        if cubic.iter().all(|&c| c % self.field.p == 0) {
            return Err(FieldError::ZeroCubic);
        }
        let (fa, ha) = self.forms_for_cubic(cubic);
        let mut values = vec![0u32; self.grouping.universe().len()];
        let mut out = Vec::new();
        for pt in ProjectivePoint2::all(self.field) {
            values[..3].copy_from_slice(&pt.0);
            if fa.eval_values(&values) == 0 && ha.eval_values(&values) == 0 {
                out.push(pt);
            }
        }
        Ok(out)
    }

    /// A cubic with a flex at `target`, obtained by moving the integer
    /// witness with a unimodular integer matrix `A` such that
    /// `A⁻¹·(0, -1, 1)` is the normal form of `target`.
    pub fn transport_to(&self, target: ProjectivePoint2) -> Result<FlexWitness, FieldError> {
        let e = target.0.map(i64::from);
        let lead = e.iter().position(|&c| c != 0).expect("projective point is nonzero");
        // Columns: the two unit vectors other than `lead`, then `e`; det = ±1.
        let mut b = [[0i64; 3]; 3];
        let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
        for (col, &i) in others.iter().enumerate() {
            b[i][col] = 1;
        }
        for (i, row) in b.iter_mut().enumerate() {
            row[2] = e[i];
        }
        // P sends the third unit vector to (0, -1, 1) and has det 1.
        let p: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, -1], [0, 0, 1]];
        let b_inv = flex::inverse3(&b.map(|r| r.map(Scalar::from))).ok_or(FieldError::Flex(FlexError::SingularMatrix))?;
        let a: Matrix3 = core::array::from_fn(|i| {
            core::array::from_fn(|j| {
                (0..3).fold(Scalar::ZERO, |acc, k| &acc + &(&Scalar::from(p[i][k]) * &b_inv[k][j]))
            })
        });
        let moved = flex::transport_witness(&a)?;
        let values = reduce_point(&moved, self.field)?;
        let point = ProjectivePoint2::normalize(self.field, [values[0], values[1], values[2]])
            .expect("transported point is nonzero");
        let cubic = core::array::from_fn(|k| values[alpha(CUBIC_EXPONENTS[k]).index()]);
        Ok(FlexWitness { cubic, point })
    }

    /// For every point of `P²(F_p)`, exhibits a cubic with a flex there.
    pub fn surjectivity_onto_plane(&self) -> Result<SurjectivityReport, FieldError> {
        if self.field.p > MAX_ENUMERATION_PRIME {
            return Err(FieldError::EnumerationTooLarge(self.field.p));
        }
        let points = ProjectivePoint2::all(self.field);
        let mut failures = Vec::new();
        let mut values = vec![0u32; self.grouping.universe().len()];
        for &e in &points {
            let ok = match self.transport_to(e) {
                Ok(w) => {
                    values[..3].copy_from_slice(&w.point.0);
                    for (k, &c) in w.cubic.iter().enumerate() {
                        values[alpha(CUBIC_EXPONENTS[k]).index()] = c;
                    }
                    w.point == e && self.on_cone(&values)
                }
                Err(_) => false,
            };
            if !ok {
                failures.push(e);
            }
        }
        Ok(SurjectivityReport {
            prime: self.field.p,
            total: points.len(),
            covered: points.len() - failures.len(),
            failures,
        })
    }

    /// Scans `count` uniformly random nonzero cubics for rational flexes.
    pub fn rational_flex_survey(&self, count: usize, seed: u64) -> FlexSurvey {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut histogram = BTreeMap::new();
        let mut empty = 0;
        let mut with_full_line = 0;
        for _ in 0..count {
            let cubic = loop {
                let c: [u32; 10] = core::array::from_fn(|_| rng.gen_range(0..self.field.p));
                if c.iter().any(|&x| x != 0) {
                    break c;
                }
            };
            let flexes = self.flexes_of_cubic(&cubic).expect("nonzero cubic");
            if flexes.is_empty() {
                empty += 1;
            }
            if contains_full_line(self.field, &flexes) {
                with_full_line += 1;
            }
            *histogram.entry(flexes.len()).or_insert(0) += 1;
        }
        FlexSurvey { prime: self.field.p, seed, cubics: count, empty, histogram, with_full_line }
    }

    /// The integer witness reduced mod `p`, as a block point.
    pub fn witness_point(&self) -> BlockPoint<PrimeField> {
        let values = reduce_point(&flex::witness(), self.field).expect("integral witness");
        BlockPoint::new(self.field, self.grouping.clone(), values).expect("13 coordinates")
    }

    /// `n` points of `C ∩ U` over `F_p`, deterministic in `seed`. Point 0 is
    /// the reduced witness. Each further point fixes a random x, solves the
    /// linear equation `f = 0` for a random line of cubic coefficients, and
    /// picks a root of the cubic `h` restricted to that line.
    pub fn sample_cone_points(&self, n: usize, seed: u64) -> Result<Vec<BlockPoint<PrimeField>>, FieldError> {
        let field = self.field;
        let p = field.p;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return Ok(out);
        }
        out.push(self.witness_point());
        let mut attempts = 0;
        let x_vars: Vec<(VariableId, u32)> = X.iter().map(|&v| (v, 0)).collect();
        while out.len() < n {
            attempts += 1;
            if attempts > MAX_SAMPLE_ATTEMPTS {
                return Err(FieldError::SamplingExhausted { attempts: MAX_SAMPLE_ATTEMPTS });
            }
            let x = loop {
                let v: [u32; 3] = core::array::from_fn(|_| rng.gen_range(0..p));
                if let Some(pt) = ProjectivePoint2::normalize(field, v) {
                    break pt.0;
                }
            };
            // Monomial values x^e; f restricted to this x is Σ a_e·x^e.
            let mono: [u32; 10] = core::array::from_fn(|k| {
                let e = CUBIC_EXPONENTS[k];
                (0..3).fold(1, |acc, i| field.mul(&acc, &field.pow(&x[i], u32::from(e[i]))))
            });
            let pivot = mono.iter().position(|&m| m != 0).expect("some x_i^3 is nonzero");
            let pivot_inv = field.inv(mono[pivot]).expect("nonzero");
            let in_hyperplane = |rng: &mut ChaCha8Rng| -> [u32; 10] {
                let mut a: [u32; 10] = core::array::from_fn(|_| rng.gen_range(0..p));
                a[pivot] = 0;
                let s = (0..10).fold(0, |acc, k| field.add(&acc, &field.mul(&a[k], &mono[k])));
                a[pivot] = field.mul(&field.neg(&s), &pivot_inv);
                a
            };
            let x_assign: Vec<(VariableId, u32)> =
                x_vars.iter().enumerate().map(|(i, (v, _))| (*v, x[i])).collect();
            let h_x = self.h.specialize(&x_assign);
            let mut values = vec![0u32; self.grouping.universe().len()];
            values[..3].copy_from_slice(&x);
            for _ in 0..MAX_LINE_DRAWS {
                let base = in_hyperplane(&mut rng);
                let dir = in_hyperplane(&mut rng);
                let line = |s: u32| -> [u32; 10] {
                    core::array::from_fn(|k| field.add(&base[k], &field.mul(&s, &dir[k])))
                };
                let h_on_line = |s: u32| -> u32 {
                    let a = line(s);
                    let mut v = values.clone();
                    for (k, &c) in a.iter().enumerate() {
                        v[alpha(CUBIC_EXPONENTS[k]).index()] = c;
                    }
                    h_x.eval_values(&v)
                };
                let coeffs = interpolate_cubic(field, [h_on_line(0), h_on_line(1), h_on_line(2), h_on_line(3)]);
                let roots: Vec<u32> = (0..p)
                    .filter(|&s| horner(field, &coeffs, s) == 0)
                    .filter(|&s| line(s).iter().any(|&c| c != 0))
                    .collect();
                if roots.is_empty() {
                    continue;
                }
                let s = roots[rng.gen_range(0..roots.len())];
                for (k, &c) in line(s).iter().enumerate() {
                    values[alpha(CUBIC_EXPONENTS[k]).index()] = c;
                }
                debug_assert!(self.on_cone(&values));
                out.push(BlockPoint::new(field, self.grouping.clone(), values).expect("13 coordinates"));
                break;
            }
        }
        Ok(out)
    }
}

/// Coefficients `[c0, c1, c2, c3]` of the cubic through `(s, values[s])`
/// for `s = 0..4` (Newton divided differences; needs p > 3).
fn interpolate_cubic(field: PrimeField, values: [u32; 4]) -> [u32; 4] {
    let sub = |a: u32, b: u32| field.sub(&a, &b);
    let inv2 = field.inv(2).expect("p > 2");
    let inv3 = field.inv(3).expect("p > 3");
    let [y0, y1, y2, y3] = values;
    let d1 = [sub(y1, y0), sub(y2, y1), sub(y3, y2)];
    let d2 = [field.mul(&sub(d1[1], d1[0]), &inv2), field.mul(&sub(d1[2], d1[1]), &inv2)];
    let d3 = field.mul(&sub(d2[1], d2[0]), &inv3);
    // p(s) = y0 + d1₀·s + d2₀·s(s-1) + d3·s(s-1)(s-2)
    let c3 = d3;
    let c2 = sub(d2[0], field.mul(&d3, &3));
    let c1 = field.add(&sub(d1[0], d2[0]), &field.mul(&d3, &2));
    [y0, c1, c2, c3]
}

fn horner(field: PrimeField, c: &[u32; 4], s: u32) -> u32 {
    c.iter().rev().fold(0, |acc, k| field.add(&field.mul(&acc, &s), k))
}

/// The cubic coefficients of a point, in the order `a300 … a003`.
pub fn cubic_of(values: &[u32]) -> [u32; 10] {
    core::array::from_fn(|k| values[alpha(CUBIC_EXPONENTS[k]).index()])
}

/// The ten coefficients of a cubic form in x0, x1, x2, reduced mod `p`.
pub fn cubic_coefficients(form: &Polynomial, field: PrimeField) -> Result<[u32; 10], FieldError> {
    let mut out = [0u32; 10];
    let mut seen = 0;
    for (k, e) in CUBIC_EXPONENTS.iter().enumerate() {
        let c = form.coefficient(&cubic_monomial(*e));
        if !c.is_zero() {
            seen += 1;
        }
        out[k] = reduce_scalar(&c, field)?;
    }
    if seen != form.len() {
        return Err(FieldError::Flex(FlexError::NotACubicForm));
    }
    Ok(out)
}

/// The Scalar form of the witness x-coordinates, reduced.
pub fn witness_x(field: PrimeField) -> [u32; 3] {
    WITNESS_X.map(|c| field.elem(c))
}
