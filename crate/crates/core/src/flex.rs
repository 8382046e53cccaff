//! The generic ternary cubic `f`, its Hessian `h`, and the smooth-point
//! certificate for the flex cone `{f = h = 0}` in `L × Φ`, where `L` holds
//! the point `(x0, x1, x2)` and `Φ` the ten cubic coefficients.
//!
//! The certificate checks that the witness `c` (point `(0, -1, 1)` on the
//! cubic `x0³ + x1³ + x2³ + x0·x1·x2`) lies on the cone and that the 2×2
//! minor `f_(0)·h_(1) − f_(1)·h_(0)` of the Jacobian is nonzero there.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::PolyError;
use crate::monomial::Monomial;
use crate::poly::{det3, PointAssignment, Polynomial};
use crate::scalar::Scalar;
use crate::universe::{
    MultiDegree, Universe, VariableGrouping, VariableId, CUBIC_EXPONENTS,
};

pub const X: [VariableId; 3] = [VariableId(0), VariableId(1), VariableId(2)];

/// Variable of the coefficient of `x0^i0*x1^i1*x2^i2` in the flex universe.
pub fn alpha(exps: [u8; 3]) -> VariableId {
    let pos = CUBIC_EXPONENTS
        .iter()
        .position(|e| *e == exps)
        .expect("exponents of a cubic monomial");
    VariableId(3 + pos as u8)
}

pub fn cubic_monomial(exps: [u8; 3]) -> Monomial {
    Monomial::from_exponents(&[u16::from(exps[0]), u16::from(exps[1]), u16::from(exps[2])])
        .expect("three exponents")
}

/// Sorted tuple of x-indices naming an iterated partial such as `f_(012)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    /// Sorts `indices`; partials do not depend on the order of differentiation.
    pub fn new(indices: &[u8]) -> Self {
        assert!(indices.iter().all(|&i| i < 3), "x-index out of range");
        let mut v = indices.to_vec();
        v.sort_unstable();
        MultiIndex(v)
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn vars(&self) -> Vec<VariableId> {
        self.0.iter().map(|&i| X[usize::from(i)]).collect()
    }

    /// All sorted index tuples of the given order, ascending.
    pub fn all(order: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(order);
        fn rec(order: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<MultiIndex>) {
            if cur.len() == order {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for i in start..3 {
                cur.push(i);
                rec(order, i, cur, out);
                cur.pop();
            }
        }
        rec(order, 0, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in &self.0 {
            write!(f, "{i}")?;
        }
        f.write_str(")")
    }
}

/// `f = Σ a_{i0 i1 i2} · x0^i0 x1^i1 x2^i2` over all ten cubic monomials.
pub fn build_f() -> Polynomial {
    let u = Universe::flex();
    let terms = CUBIC_EXPONENTS.iter().map(|&e| {
        let m = cubic_monomial(e)
            .checked_mul(&Monomial::var(alpha(e)))
            .expect("degree four monomial");
        (m, Scalar::ONE)
    });
    Polynomial::from_terms(crate::Rationals, u, terms)
}

/// Matrix of second partials of `p` with respect to `x0, x1, x2` (looked up by name).
pub fn hessian_matrix(p: &Polynomial) -> Result<[[Polynomial; 3]; 3], PolyError> {
    let u = p.universe();
    let xs = [u.lookup("x0")?, u.lookup("x1")?, u.lookup("x2")?];
    let first: Vec<Polynomial> = xs.iter().map(|&v| p.diff(v)).collect();
    Ok(core::array::from_fn(|i| core::array::from_fn(|j| first[i].diff(xs[j]))))
}

/// Determinant of [`hessian_matrix`].
pub fn hessian_det(p: &Polynomial) -> Result<Polynomial, PolyError> {
    det3(&hessian_matrix(p)?)
}

/// `h = det(∂²f/∂x_i∂x_j)`.
pub fn build_h() -> Polynomial {
    hessian_det(&build_f()).expect("flex universe contains x0, x1, x2")
}

/// `x0³ + x1³ + x2³ + x0·x1·x2`, the cubic of the witness.
pub fn witness_cubic() -> Polynomial {
    let u = Universe::flex();
    let terms = [[3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1]]
        .into_iter()
        .map(|e| (cubic_monomial(e), Scalar::ONE));
    Polynomial::from_terms(crate::Rationals, u, terms)
}

pub const WITNESS_X: [i64; 3] = [0, -1, 1];

/// The point of `L × Φ` with x-coordinates `x` and cubic-coefficient
/// coordinates read off `cubic`, which must be a form in x0, x1, x2 only.
pub fn point_on_cubic(x: [Scalar; 3], cubic: &Polynomial) -> Result<PointAssignment, FlexError> {
    let u = Universe::flex();
    if cubic.universe() != &u {
        return Err(FlexError::Poly(PolyError::UniverseMismatch));
    }
    let mut values = vec![Scalar::ZERO; u.len()];
    let mut seen = 0;
    for e in CUBIC_EXPONENTS {
        let c = cubic.coefficient(&cubic_monomial(e));
        if !c.is_zero() {
            seen += 1;
        }
        values[alpha(e).index()] = c;
    }
    if seen != cubic.len() {
        return Err(FlexError::NotACubicForm);
    }
    for (i, xi) in x.into_iter().enumerate() {
        values[i] = xi;
    }
    Ok(PointAssignment::new(u, values).expect("13 coordinates"))
}

/// The witness `c`: point `(0, -1, 1)` and cubic `x0³ + x1³ + x2³ + x0·x1·x2`.
pub fn witness() -> PointAssignment {
    point_on_cubic(WITNESS_X.map(Scalar::from), &witness_cubic()).expect("witness cubic is a form")
}

/// The cubic-coefficient part of a point, as a form in x0, x1, x2.
pub fn cubic_of_point(point: &PointAssignment) -> Polynomial {
    let terms = CUBIC_EXPONENTS
        .iter()
        .map(|&e| (cubic_monomial(e), point.get(alpha(e)).clone()));
    Polynomial::from_terms(crate::Rationals, point.universe().clone(), terms)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlexError {
    SingularMatrix,
    NotACubicForm,
    Poly(PolyError),
}

impl fmt::Display for FlexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlexError::SingularMatrix => f.write_str("matrix is singular"),
            FlexError::NotACubicForm => f.write_str("expected a cubic form in x0, x1, x2"),
            FlexError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FlexError {}

impl From<PolyError> for FlexError {
    fn from(e: PolyError) -> Self {
        FlexError::Poly(e)
    }
}

pub type Matrix3 = [[Scalar; 3]; 3];

pub fn det3_scalar(a: &Matrix3) -> Scalar {
    let m = |i: usize, j: usize, k: usize, l: usize| &(&a[i][j] * &a[k][l]) - &(&a[i][l] * &a[k][j]);
    let t0 = &a[0][0] * &m(1, 1, 2, 2);
    let t1 = &a[0][1] * &m(1, 0, 2, 2);
    let t2 = &a[0][2] * &m(1, 0, 2, 1);
    &(&t0 - &t1) + &t2
}

/// Inverse via the adjugate; `None` if singular.
pub fn inverse3(a: &Matrix3) -> Option<Matrix3> {
    let det = det3_scalar(a);
    let inv_det = det.recip()?;
    let cof = |r: usize, c: usize| -> Scalar {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let minor = &(&a[rows[0]][cols[0]] * &a[rows[1]][cols[1]])
            - &(&a[rows[0]][cols[1]] * &a[rows[1]][cols[0]]);
        if (r + c) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    // (A⁻¹)_{ij} = cof(j, i) / det
    Some(core::array::from_fn(|i| core::array::from_fn(|j| &cof(j, i) * &inv_det)))
}

pub fn mat_vec(a: &Matrix3, v: &[Scalar; 3]) -> [Scalar; 3] {
    core::array::from_fn(|i| {
        (0..3).fold(Scalar::ZERO, |acc, k| &acc + &(&a[i][k] * &v[k]))
    })
}

/// The linear substitution `x ↦ A·x` applied to the x-variables of `p`.
pub fn substitute_linear(p: &Polynomial, a: &Matrix3) -> Result<Polynomial, PolyError> {
    let u = p.universe();
    let xs = [u.lookup("x0")?, u.lookup("x1")?, u.lookup("x2")?];
    let mut map = BTreeMap::new();
    for (j, &xj) in xs.iter().enumerate() {
        let image = (0..3).fold(Polynomial::zero_in(u), |acc, k| {
            &acc + &Polynomial::var_in(u, xs[k]).scale(&a[j][k])
        });
        map.insert(xj, image);
    }
    p.substitute(&map)
}

/// Moves the witness along `x ↦ A·x`: the cubic becomes `c₂(A·x)` and the
/// point becomes `A⁻¹·(0, -1, 1)`. The result is again on the flex cone.
pub fn transport_witness(a: &Matrix3) -> Result<PointAssignment, FlexError> {
    let inv = inverse3(a).ok_or(FlexError::SingularMatrix)?;
    let cubic = substitute_linear(&witness_cubic(), a)?;
    let x = mat_vec(&inv, &WITNESS_X.map(Scalar::from));
    point_on_cubic(x, &cubic)
}

/// `f`, `h`, the grouping `{x} | {a}` and cached partials of `f` up to order 3.
#[derive(Debug, Clone)]
pub struct FlexSystem {
    f: Polynomial,
    h: Polynomial,
    grouping: VariableGrouping,
    f_partials: BTreeMap<MultiIndex, Polynomial>,
    h_partials: [Polynomial; 3],
}

impl Default for FlexSystem {
    fn default() -> Self {
        Self::new()
    }
}

impl FlexSystem {
    pub fn new() -> Self {
        Self::from_parts(build_f(), build_h())
    }

    /// A system with arbitrary `f` and `h` over the flex universe; used to
    /// exercise the certificate on deliberately wrong inputs.
    pub fn from_parts(f: Polynomial, h: Polynomial) -> Self {
        let grouping = VariableGrouping::flex();
        assert_eq!(f.universe(), grouping.universe(), "f must live in the flex universe");
        assert_eq!(h.universe(), grouping.universe(), "h must live in the flex universe");
        let mut f_partials = BTreeMap::new();
        for order in 1..=3 {
            for idx in MultiIndex::all(order) {
                let p = f.diff_many(&idx.vars());
                f_partials.insert(idx, p);
            }
        }
        let h_partials = core::array::from_fn(|i| h.diff(X[i]));
        FlexSystem { f, h, grouping, f_partials, h_partials }
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn grouping(&self) -> &VariableGrouping {
        &self.grouping
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.grouping.universe()
    }

    /// Partial of `f` for any index order, e.g. `&[2, 1, 0]` gives `f_(012)`.
    pub fn f_partial(&self, indices: &[u8]) -> &Polynomial {
        &self.f_partials[&MultiIndex::new(indices)]
    }

    pub fn derivative_table(&self, order: usize) -> BTreeMap<MultiIndex, Polynomial> {
        assert!((1..=3).contains(&order), "tables exist for orders 1 to 3");
        self.f_partials
            .iter()
            .filter(|(k, _)| k.order() == order)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    /// Values of every tabulated partial of `f` at `point`.
    pub fn evaluate_tables(&self, point: &PointAssignment) -> Result<BTreeMap<MultiIndex, Scalar>, PolyError> {
        self.f_partials
            .iter()
            .map(|(k, p)| Ok((k.clone(), p.evaluate(point)?)))
            .collect()
    }

    /// `h_(i)` by direct differentiation of the expanded Hessian.
    pub fn h_partial(&self, i: usize) -> &Polynomial {
        &self.h_partials[i]
    }

    /// `h` from its cofactor expansion in the second partials of `f`:
    /// `f00·f11·f22 + 2·f01·f12·f02 − f02²·f11 − f12²·f00 − f01²·f22`.
    pub fn hessian_expansion(&self) -> Polynomial {
        let p = |ix: &[u8]| self.f_partial(ix);
        let two = Scalar::from(2);
        let terms = [
            p(&[0, 0]) * p(&[1, 1]) * p(&[2, 2]).clone(),
            (p(&[0, 1]) * p(&[1, 2]) * p(&[0, 2]).clone()).scale(&two),
            -(p(&[0, 2]) * p(&[0, 2]) * p(&[1, 1]).clone()),
            -(p(&[1, 2]) * p(&[1, 2]) * p(&[0, 0]).clone()),
            -(p(&[0, 1]) * p(&[0, 1]) * p(&[2, 2]).clone()),
        ];
        terms.iter().fold(Polynomial::zero_in(self.universe()), |acc, t| &acc + t)
    }

    /// `h_(i)` from the product rule applied to [`Self::hessian_expansion`],
    /// using only the tabulated partials of `f` (twelve products).
    pub fn h_partial_expansion(&self, i: u8) -> Polynomial {
        assert!(i < 3, "x-index out of range");
        let p = |ix: &[u8]| self.f_partial(ix).clone();
        let two = Scalar::from(2);
        let prod = |a: Polynomial, b: Polynomial, c: Polynomial| &(&a * &b) * &c;
        let terms = [
            prod(p(&[i, 0, 0]), p(&[1, 1]), p(&[2, 2])),
            prod(p(&[0, 0]), p(&[i, 1, 1]), p(&[2, 2])),
            prod(p(&[0, 0]), p(&[1, 1]), p(&[i, 2, 2])),
            prod(p(&[i, 0, 1]), p(&[1, 2]), p(&[0, 2])).scale(&two),
            prod(p(&[0, 1]), p(&[i, 1, 2]), p(&[0, 2])).scale(&two),
            prod(p(&[0, 1]), p(&[1, 2]), p(&[i, 0, 2])).scale(&two),
            -prod(p(&[0, 2]), p(&[i, 0, 2]), p(&[1, 1])).scale(&two),
            -prod(p(&[0, 2]), p(&[0, 2]), p(&[i, 1, 1])),
            -prod(p(&[1, 2]), p(&[i, 1, 2]), p(&[0, 0])).scale(&two),
            -prod(p(&[1, 2]), p(&[1, 2]), p(&[i, 0, 0])),
            -prod(p(&[0, 1]), p(&[i, 0, 1]), p(&[2, 2])).scale(&two),
            -prod(p(&[0, 1]), p(&[0, 1]), p(&[i, 2, 2])),
        ];
        terms.iter().fold(Polynomial::zero_in(self.universe()), |acc, t| &acc + t)
    }

    /// `det [[f_(i), f_(j)], [h_(i), h_(j)]]` at `point`, with `h` partials
    /// taken by direct differentiation.
    pub fn jacobian_minor_cols(&self, point: &PointAssignment, i: usize, j: usize) -> Result<Scalar, PolyError> {
        let fi = self.f_partial(&[i as u8]).evaluate(point)?;
        let fj = self.f_partial(&[j as u8]).evaluate(point)?;
        let hi = self.h_partials[i].evaluate(point)?;
        let hj = self.h_partials[j].evaluate(point)?;
        Ok(&(&fi * &hj) - &(&fj * &hi))
    }

    /// The `(x0, x1)` minor used by the certificate.
    pub fn jacobian_minor(&self, point: &PointAssignment) -> Result<Scalar, PolyError> {
        self.jacobian_minor_cols(point, 0, 1)
    }

    /// The three x-column minors `(01)`, `(02)`, `(12)`.
    pub fn jacobian_minors(&self, point: &PointAssignment) -> Result<[(MultiIndex, Scalar); 3], PolyError> {
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let mut out: [(MultiIndex, Scalar); 3] = Default::default();
        for (slot, (i, j)) in out.iter_mut().zip(pairs) {
            *slot = (MultiIndex::new(&[i as u8, j as u8]), self.jacobian_minor_cols(point, i, j)?);
        }
        Ok(out)
    }
}

/// Partials of `f` at the witness, as tabulated for the certificate.
pub const EXPECTED_FIRST: [([u8; 1], i64); 3] = [([0], -1), ([1], 3), ([2], 3)];
pub const EXPECTED_SECOND: [([u8; 2], i64); 6] =
    [([0, 0], 0), ([0, 1], 1), ([0, 2], -1), ([1, 1], -6), ([1, 2], 0), ([2, 2], 6)];
pub const EXPECTED_THIRD: [([u8; 3], i64); 10] = [
    ([0, 0, 0], 6),
    ([0, 0, 1], 0),
    ([0, 0, 2], 0),
    ([0, 1, 1], 0),
    ([0, 1, 2], 1),
    ([0, 2, 2], 0),
    ([1, 1, 1], 6),
    ([1, 1, 2], 0),
    ([1, 2, 2], 0),
    ([2, 2, 2], 6),
];
/// `h_(0)(c)` and `h_(1)(c)`.
pub const EXPECTED_H_PARTIALS: [i64; 2] = [-218, -18];
/// `f_(0)(c)·h_(1)(c) − f_(1)(c)·h_(0)(c) = (−1)(−18) − 3(−218)`.
pub const EXPECTED_MINOR: i64 = 672;

/// The internal bidegree convention is `(x-degree, a-degree)`.
pub const EXPECTED_F_DEGREE: [u32; 2] = [3, 1];
pub const EXPECTED_H_DEGREE: [u32; 2] = [3, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckRecord {
    pub id: String,
    /// The statement this row checks, in words.
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MinorRecord {
    pub columns: String,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub checks: Vec<CheckRecord>,
    /// All three x-column minors at the witness; only `(01)` is required.
    pub minors: Vec<MinorRecord>,
    pub assumptions: Vec<String>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// What the certificate runs on. [`CertificateInput::standard`] is the real
/// thing; the other constructors exist to show that broken inputs fail.
#[derive(Debug, Clone)]
pub struct CertificateInput {
    pub system: FlexSystem,
    pub witness: PointAssignment,
}

impl CertificateInput {
    pub fn standard() -> Self {
        CertificateInput { system: FlexSystem::new(), witness: witness() }
    }

    /// Witness with `x1 = +1`, which puts it off the cubic.
    pub fn corrupted_witness() -> Self {
        let mut input = Self::standard();
        input.witness.set(X[1], Scalar::ONE);
        input
    }

    /// `h` replaced by `f`, making the Jacobian rows proportional.
    pub fn h_replaced_by_f() -> Self {
        let f = build_f();
        CertificateInput { system: FlexSystem::from_parts(f.clone(), f), witness: witness() }
    }
}

struct Recorder {
    checks: Vec<CheckRecord>,
}

impl Recorder {
    fn push(&mut self, id: impl Into<String>, claim: &str, expected: impl ToString, computed: impl ToString, pass: bool) {
        self.checks.push(CheckRecord {
            id: id.into(),
            claim: claim.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        });
    }

    fn value(&mut self, id: impl Into<String>, claim: &str, expected: i64, computed: &Scalar) {
        let pass = *computed == Scalar::from(expected);
        self.push(id, claim, expected, computed, pass);
    }
}

fn degree_text(d: &Result<MultiDegree, PolyError>) -> String {
    match d {
        Ok(d) => format!("{d} [a-first {}]", d.reversed()),
        Err(e) => e.to_string(),
    }
}

const SRC_DEGREES: &str = "bidegrees of f and h";
const SRC_POSITIVITY: &str = "every generator has positive degree in every block";
const SRC_MEMBERSHIP: &str = "witness lies on f = h = 0";
const SRC_FIRST: &str = "first partials of f at the witness";
const SRC_SECOND: &str = "second partials of f at the witness";
const SRC_THIRD: &str = "third partials of f at the witness";
const SRC_EXPANSION: &str = "product-rule expansion of h_(i) in partials of f";
const SRC_H_VALUES: &str = "partials of h at the witness";
const SRC_MINOR: &str = "nonzero 2x2 Jacobian minor at the witness";

/// Runs every check on the standard input.
pub fn verify_certificate() -> CertificateReport {
    verify_certificate_with(&CertificateInput::standard())
}

pub fn verify_certificate_with(input: &CertificateInput) -> CertificateReport {
    let sys = &input.system;
    let c = &input.witness;
    let grouping = sys.grouping();
    let mut rec = Recorder { checks: Vec::new() };

    // Bidegrees.
    let df = sys.f().multidegree(grouping);
    let dh = sys.h().multidegree(grouping);
    let want_f = MultiDegree(EXPECTED_F_DEGREE.to_vec());
    let want_h = MultiDegree(EXPECTED_H_DEGREE.to_vec());
    rec.push("degree.f", SRC_DEGREES, degree_text(&Ok(want_f.clone())), degree_text(&df), df.as_ref() == Ok(&want_f));
    rec.push("degree.h", SRC_DEGREES, degree_text(&Ok(want_h.clone())), degree_text(&dh), dh.as_ref() == Ok(&want_h));

    // Positivity of every block degree.
    for (name, d) in [("f", &df), ("h", &dh)] {
        let pass = matches!(d, Ok(d) if d.is_positive());
        rec.push(format!("positivity.{name}"), SRC_POSITIVITY, "all block degrees > 0", degree_text(d), pass);
    }

    // Witness membership.
    let eval = |p: &Polynomial| p.evaluate(c).expect("witness lives in the flex universe");
    rec.value("witness.f", SRC_MEMBERSHIP, 0, &eval(sys.f()));
    rec.value("witness.h", SRC_MEMBERSHIP, 0, &eval(sys.h()));
    let hess_at_c: [[Polynomial; 3]; 3] = core::array::from_fn(|i| {
        core::array::from_fn(|j| Polynomial::constant_in(sys.universe(), eval(sys.f_partial(&[i as u8, j as u8]))))
    });
    let hess_det = det3(&hess_at_c).expect("same universe").as_constant().expect("constant entries");
    rec.value("witness.hessian_matrix_det", SRC_MEMBERSHIP, 0, &hess_det);

    // Derivative tables at the witness.
    for (idx, want) in EXPECTED_FIRST {
        rec.value(format!("table.f_{}", MultiIndex::new(&idx)), SRC_FIRST, want, &eval(sys.f_partial(&idx)));
    }
    for (idx, want) in EXPECTED_SECOND {
        rec.value(format!("table.f_{}", MultiIndex::new(&idx)), SRC_SECOND, want, &eval(sys.f_partial(&idx)));
    }
    for (idx, want) in EXPECTED_THIRD {
        rec.value(format!("table.f_{}", MultiIndex::new(&idx)), SRC_THIRD, want, &eval(sys.f_partial(&idx)));
    }

    // Expansion of h_(i) against direct differentiation, as polynomials.
    let expansions: [Polynomial; 3] = core::array::from_fn(|i| sys.h_partial_expansion(i as u8));
    for (i, expansion) in expansions.iter().enumerate() {
        let diff = expansion - sys.h_partial(i);
        let computed = if diff.is_zero() {
            String::from("identical")
        } else {
            format!("differs in {} terms", diff.len())
        };
        rec.push(format!("expansion.h_({i})"), SRC_EXPANSION, "identical", computed, diff.is_zero());
    }

    // h_(0)(c), h_(1)(c) by both routes.
    for (i, want) in EXPECTED_H_PARTIALS.into_iter().enumerate() {
        let direct = eval(sys.h_partial(i));
        let expanded = eval(&expansions[i]);
        let pass = direct == Scalar::from(want) && expanded == direct;
        let computed = if expanded == direct {
            direct.to_string()
        } else {
            format!("{direct} (direct) vs {expanded} (expansion)")
        };
        rec.push(format!("value.h_({i})"), SRC_H_VALUES, want, computed, pass);
    }

    // The (x0, x1) Jacobian minor by both routes.
    let minor_direct = sys.jacobian_minor(c).expect("flex universe");
    let f0 = eval(sys.f_partial(&[0]));
    let f1 = eval(sys.f_partial(&[1]));
    let minor_expanded = &(&f0 * &eval(&expansions[1])) - &(&f1 * &eval(&expansions[0]));
    let pass = !minor_direct.is_zero() && minor_direct == minor_expanded;
    let computed = if minor_direct == minor_expanded {
        minor_direct.to_string()
    } else {
        format!("{minor_direct} (direct) vs {minor_expanded} (expansion)")
    };
    rec.push("minor.(01)", SRC_MINOR, format!("nonzero ({EXPECTED_MINOR})"), computed, pass);

    let minors = sys
        .jacobian_minors(c)
        .expect("flex universe")
        .into_iter()
        .map(|(idx, value)| MinorRecord { columns: idx.to_string(), value })
        .collect();

    let verdict = if rec.checks.iter().all(|r| r.pass) { Verdict::Pass } else { Verdict::Fail };
    CertificateReport {
        verdict,
        checks: rec.checks,
        minors,
        assumptions: vec![
            String::from("the ideal (f, h) is prime and the flex variety F has dimension 9 (taken as known, not verified here)"),
            String::from("bidegrees are printed as (x-degree, a-degree); the bracketed pair lists the a-degree first"),
            String::from("the witness is checked on the affine cone f = h = 0 in L x Phi"),
        ],
    }
}
