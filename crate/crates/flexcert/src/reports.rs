//! One payload type per subcommand. Each renders as JSON (the serde form,
//! field order fixed by declaration) or as plain text built from the same
//! values, so the two formats never disagree.

use std::fmt::Write as _;

use flexcert_core::ff_lab::{FieldError, FlexLab, FlexSurvey, PrimeField, MAX_ENUMERATION_PRIME};
use flexcert_core::flex::{
    self, build_f, build_h, hessian_det, CertificateInput, CertificateReport, FlexSystem,
    MultiIndex,
};
use flexcert_core::multicone::{
    check_multihomogeneous, orbit_curve, orbit_limit, restrict_block_to_zero, BlockPoint,
    ConeError, HomogeneityRecord, MultiConeSystem,
};
use flexcert_core::{MultiDegree, Polynomial, Scalar, VariableGrouping};
use serde::Serialize;

/// A subcommand result: serializable, printable, and either passing or not.
pub trait Report: Serialize {
    fn render_text(&self) -> String;

    /// Whether every mathematical check in the report holds.
    fn passed(&self) -> bool;

    fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types serialize");
        s.push('\n');
        s
    }
}

fn degree_pair(d: &MultiDegree) -> String {
    format!("{d} [a-first {}]", d.reversed())
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Points of the flex system are printed as `(x0, x1, x2 | a300, …, a003)`.
fn flex_point_text(values: &[Scalar]) -> String {
    let join = |v: &[Scalar]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    format!("({} | {})", join(&values[..3]), join(&values[3..]))
}

// ---------------------------------------------------------------- certificate

#[derive(Debug, Clone, Serialize)]
pub struct CertificateOutput(pub CertificateReport);

impl CertificateOutput {
    pub fn run(corrupt_witness: bool) -> Self {
        let input = if corrupt_witness {
            CertificateInput::corrupted_witness()
        } else {
            CertificateInput::standard()
        };
        CertificateOutput(flex::verify_certificate_with(&input))
    }
}

impl Report for CertificateOutput {
    fn render_text(&self) -> String {
        let r = &self.0;
        let mut out = String::from("flex-variety smoothness certificate\n");
        let id_width = r.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &r.checks {
            let _ = writeln!(
                out,
                "{}  {:<id_width$}  expected {}; computed {}  -- {}",
                mark(c.pass),
                c.id,
                c.expected,
                c.computed,
                c.claim
            );
        }
        for (id, label) in [("value.h_(0)", "h_(0)(c)"), ("value.h_(1)", "h_(1)(c)"), ("minor.(01)", "minor (01)")] {
            if let Some(c) = r.check(id) {
                let _ = writeln!(out, "{label} = {}", c.computed);
            }
        }
        let minors: Vec<String> = r.minors.iter().map(|m| format!("{} = {}", m.columns, m.value)).collect();
        let _ = writeln!(out, "x-column minors: {}", minors.join(", "));
        for a in &r.assumptions {
            let _ = writeln!(out, "assumption: {a}");
        }
        let failed = r.checks.iter().filter(|c| !c.pass).count();
        let _ = writeln!(
            out,
            "verdict: {} ({} checks, {} failed)",
            if r.passed() { "pass" } else { "fail" },
            r.checks.len(),
            failed
        );
        out
    }

    fn passed(&self) -> bool {
        self.0.passed()
    }
}

// --------------------------------------------------------------------- tables

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub index: String,
    pub symbolic: String,
    pub value: Scalar,
    pub expected: Scalar,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TablesReport {
    pub witness: Vec<Scalar>,
    pub rows: Vec<TableRow>,
}

impl TablesReport {
    pub fn run() -> Self {
        let sys = FlexSystem::new();
        let c = flex::witness();
        let expected: Vec<(MultiIndex, i64)> = flex::EXPECTED_FIRST
            .iter()
            .map(|(i, v)| (MultiIndex::new(i), *v))
            .chain(flex::EXPECTED_SECOND.iter().map(|(i, v)| (MultiIndex::new(i), *v)))
            .chain(flex::EXPECTED_THIRD.iter().map(|(i, v)| (MultiIndex::new(i), *v)))
            .collect();
        let rows = expected
            .into_iter()
            .map(|(idx, want)| {
                let p = sys.f_partial(idx.indices());
                let value = p.evaluate(&c).expect("flex universe");
                let expected = Scalar::from(want);
                TableRow {
                    index: format!("f_{idx}"),
                    symbolic: p.to_string(),
                    matches: value == expected,
                    value,
                    expected,
                }
            })
            .collect();
        TablesReport { witness: c.values().to_vec(), rows }
    }
}

impl Report for TablesReport {
    fn render_text(&self) -> String {
        let mut out = format!("partial derivatives of f at {}\n", flex_point_text(&self.witness));
        let sym_width = self.rows.iter().map(|r| r.symbolic.len()).max().unwrap_or(0);
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<8}{:<sym_width$}  value {:>3}  expected {:>3}  {}",
                r.index,
                r.symbolic,
                r.value.to_string(),
                r.expected.to_string(),
                if r.matches { "ok" } else { "MISMATCH" }
            );
        }
        out
    }

    fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

// ------------------------------------------------------------------ decompose

#[derive(Debug, Clone, Serialize)]
pub struct Component {
    /// Block degrees with the x-block first.
    pub degree: MultiDegree,
    /// The same pair with the coefficient block first.
    pub a_first: MultiDegree,
    pub terms: usize,
    pub polynomial: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeReport {
    pub input: String,
    pub components: Vec<Component>,
}

impl DecomposeReport {
    pub fn run(p: &Polynomial) -> Self {
        let parts = p.isotypic_decompose(&VariableGrouping::flex()).expect("flex universe");
        DecomposeReport {
            input: p.to_string(),
            components: parts
                .into_iter()
                .map(|(d, q)| Component { a_first: d.reversed(), degree: d, terms: q.len(), polynomial: q.to_string() })
                .collect(),
        }
    }
}

impl Report for DecomposeReport {
    fn render_text(&self) -> String {
        if self.components.is_empty() {
            return String::from("zero polynomial; empty decomposition\n");
        }
        let mut out = format!("{} isotypic components\n", self.components.len());
        for c in &self.components {
            let _ = writeln!(out, "{} ({} terms): {}", degree_pair(&c.degree), c.terms, c.polynomial);
        }
        out
    }

    fn passed(&self) -> bool {
        true
    }
}

// -------------------------------------------------------------------- hessian

#[derive(Debug, Clone, Serialize)]
pub struct HessianReport {
    pub input: String,
    pub hessian: String,
    pub terms: usize,
    /// `None` when the determinant is zero or not bihomogeneous.
    pub degree: Option<MultiDegree>,
    pub a_first: Option<MultiDegree>,
}

impl HessianReport {
    pub fn run(p: &Polynomial) -> Self {
        let h = hessian_det(p).expect("flex universe has x0, x1, x2");
        let degree = h.multidegree(&VariableGrouping::flex()).ok();
        HessianReport {
            input: p.to_string(),
            hessian: h.to_string(),
            terms: h.len(),
            a_first: degree.as_ref().map(MultiDegree::reversed),
            degree,
        }
    }
}

impl Report for HessianReport {
    fn render_text(&self) -> String {
        let degree = match &self.degree {
            Some(d) => degree_pair(d),
            None => String::from("none (zero or not bihomogeneous)"),
        };
        format!("{}\nterms: {}\nmultidegree: {}\n", self.hessian, self.terms, degree)
    }

    fn passed(&self) -> bool {
        true
    }
}

// ---------------------------------------------------------------------- orbit

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorValues {
    pub f: Scalar,
    pub h: Scalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub block: usize,
    pub t: Scalar,
    pub variables: Vec<String>,
    pub point: Vec<Scalar>,
    pub values: GeneratorValues,
    /// The `t → 0` end of the curve: the block set to zero.
    pub limit: Vec<Scalar>,
    pub limit_values: GeneratorValues,
}

fn flex_cone() -> MultiConeSystem {
    MultiConeSystem::new(VariableGrouping::flex(), vec![build_f(), build_h()]).expect("bihomogeneous")
}

impl OrbitReport {
    pub fn run(block: usize, t: &Scalar) -> Result<Self, ConeError> {
        let sys = flex_cone();
        let c = BlockPoint::from_assignment(sys.grouping().clone(), &flex::witness())?;
        let point = orbit_curve(&sys, &c, block, t)?;
        let limit = orbit_limit(&sys, &c, block)?;
        let values = |p: &BlockPoint| GeneratorValues {
            f: sys.generators()[0].eval_values(p.values()),
            h: sys.generators()[1].eval_values(p.values()),
        };
        Ok(OrbitReport {
            block,
            t: t.clone(),
            variables: sys.grouping().universe().names().to_vec(),
            values: values(&point),
            limit_values: values(&limit),
            point: point.values().to_vec(),
            limit: limit.values().to_vec(),
        })
    }
}

impl Report for OrbitReport {
    fn render_text(&self) -> String {
        let name = if self.block == 0 { "x" } else { "coefficient" };
        format!(
            "orbit of the witness scaling the {name} block (block {}) by t = {}\n\
             point {}\n  f = {}, h = {}  {}\n\
             limit t -> 0 {}\n  f = {}, h = {}  {}\n",
            self.block,
            self.t,
            flex_point_text(&self.point),
            self.values.f,
            self.values.h,
            mark(self.values.f.is_zero() && self.values.h.is_zero()),
            flex_point_text(&self.limit),
            self.limit_values.f,
            self.limit_values.h,
            mark(self.limit_values.f.is_zero() && self.limit_values.h.is_zero()),
        )
    }

    fn passed(&self) -> bool {
        [&self.values, &self.limit_values].iter().all(|v| v.f.is_zero() && v.h.is_zero())
    }
}

// --------------------------------------------------------------------- sample

pub const CHECK_PLANE: &str = "P(L) coverage";
pub const CHECK_SAMPLING: &str = "C-point sampling";
pub const CHECK_SURVEY: &str = "rational flex survey";
/// Cubics scanned by the survey, and the largest prime it runs for.
pub const SURVEY_CUBICS: usize = 200;
pub const MAX_SURVEY_PRIME: u32 = 101;

#[derive(Debug, Clone, Serialize)]
pub struct FieldCheck {
    pub prime: u32,
    pub check: String,
    /// `covered/total`.
    pub coverage: String,
    pub failures: Vec<String>,
    pub seed: u64,
    /// Whether a shortfall counts as a failure of the run.
    pub required: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampledPoint {
    pub x: [u32; 3],
    pub cubic: [u32; 10],
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub prime: u32,
    pub seed: u64,
    pub checks: Vec<FieldCheck>,
    pub points: Vec<SampledPoint>,
    pub survey: Option<FlexSurvey>,
}

impl SampleReport {
    pub fn run(field: PrimeField, count: usize, seed: u64) -> Result<Self, FieldError> {
        let p = field.modulus();
        let lab = FlexLab::new(field);
        let mut checks = Vec::new();

        if p <= MAX_ENUMERATION_PRIME {
            let s = lab.surjectivity_onto_plane()?;
            checks.push(FieldCheck {
                prime: p,
                check: CHECK_PLANE.into(),
                coverage: format!("{}/{}", s.covered, s.total),
                failures: s.failures.iter().map(ToString::to_string).collect(),
                seed,
                required: true,
            });
        }

        let sampled = lab.sample_cone_points(count, seed)?;
        let failures: Vec<String> = sampled
            .iter()
            .enumerate()
            .filter(|(_, pt)| !(lab.on_cone(pt.values()) && pt.in_u()))
            .map(|(i, _)| format!("point {i}"))
            .collect();
        checks.push(FieldCheck {
            prime: p,
            check: CHECK_SAMPLING.into(),
            coverage: format!("{}/{}", sampled.len() - failures.len(), sampled.len()),
            failures,
            seed,
            required: true,
        });
        let points = sampled
            .iter()
            .map(|pt| {
                let v = pt.values();
                SampledPoint { x: [v[0], v[1], v[2]], cubic: core::array::from_fn(|k| v[3 + k]) }
            })
            .collect();

        let survey = (p <= MAX_SURVEY_PRIME).then(|| lab.rational_flex_survey(SURVEY_CUBICS, seed));
        if let Some(s) = &survey {
            checks.push(FieldCheck {
                prime: p,
                check: CHECK_SURVEY.into(),
                coverage: format!("{}/{}", s.cubics - s.empty, s.cubics),
                failures: Vec::new(),
                seed,
                required: false,
            });
        }
        Ok(SampleReport { prime: p, seed, checks, points, survey })
    }
}

impl Report for SampleReport {
    fn render_text(&self) -> String {
        let mut out = format!("finite-field checks over F_{} (seed {})\n", self.prime, self.seed);
        if self.prime > MAX_ENUMERATION_PRIME {
            let _ = writeln!(out, "{CHECK_PLANE} skipped: plane enumeration needs p <= {MAX_ENUMERATION_PRIME}");
        }
        for c in &self.checks {
            let status = if c.required { mark(c.failures.is_empty()) } else { "INFO" };
            let _ = writeln!(out, "{} {}  [{status}]", c.check, c.coverage);
            for f in &c.failures {
                let _ = writeln!(out, "  failure: {f}");
            }
        }
        if let Some(s) = &self.survey {
            let hist: Vec<String> = s.histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            let _ = writeln!(
                out,
                "  cubics without a rational flex: {}; with a line of flexes: {}; flex counts {}",
                s.empty,
                s.with_full_line,
                hist.join(" ")
            );
        }
        for (i, pt) in self.points.iter().enumerate() {
            let join = |v: &[u32]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            let _ = writeln!(out, "point {i}: ({} | {})", join(&pt.x), join(&pt.cubic));
        }
        out
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.required || c.failures.is_empty())
    }
}

// ----------------------------------------------------------------------- cone

#[derive(Debug, Clone, Serialize)]
pub struct RestrictionRow {
    pub generator: usize,
    pub block: usize,
    /// The generator restricted to `block = 0` is the zero polynomial.
    pub vanishes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConeReport {
    pub blocks: Vec<Vec<String>>,
    pub generators: Vec<HomogeneityRecord>,
    pub positive: bool,
    pub restrictions: Vec<RestrictionRow>,
}

impl ConeReport {
    pub fn run(grouping: &VariableGrouping, generators: &[Polynomial]) -> Result<Self, ConeError> {
        let records = check_multihomogeneous(grouping, generators)?;
        let mut restrictions = Vec::new();
        for (i, q) in generators.iter().enumerate() {
            for b in 0..grouping.num_blocks() {
                let vanishes = restrict_block_to_zero(q, grouping, b)?.is_zero();
                restrictions.push(RestrictionRow { generator: i, block: b, vanishes });
            }
        }
        let u = grouping.universe();
        Ok(ConeReport {
            blocks: grouping.blocks().iter().map(|b| b.iter().map(|&v| u.name(v).to_string()).collect()).collect(),
            positive: records.iter().all(|r| r.positive),
            generators: records,
            restrictions,
        })
    }
}

impl Report for ConeReport {
    fn render_text(&self) -> String {
        let mut out = format!("multi-cone system with {} blocks\n", self.blocks.len());
        for r in &self.generators {
            match (&r.degree, &r.witness_terms) {
                (Some(d), _) => {
                    let _ = writeln!(out, "PASS  q{}: multidegree {d}, positive {}", r.index, r.positive);
                }
                (None, Some((a, b))) => {
                    let _ = writeln!(out, "FAIL  q{}: not multi-homogeneous; terms {a} and {b} differ", r.index);
                }
                (None, None) => {
                    let _ = writeln!(out, "FAIL  q{}: not multi-homogeneous", r.index);
                }
            }
        }
        for row in &self.restrictions {
            let _ = writeln!(
                out,
                "q{} with block {} set to zero: {}",
                row.generator,
                row.block,
                if row.vanishes { "zero" } else { "nonzero" }
            );
        }
        let _ = writeln!(out, "positivity: {}", self.positive);
        out
    }

    fn passed(&self) -> bool {
        self.generators.iter().all(HomogeneityRecord::is_homogeneous)
    }
}
