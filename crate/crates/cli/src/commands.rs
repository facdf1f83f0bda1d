use std::fmt::Write as _;

use charvar::cohomology::{cohomology_report, rank_theorem_from_report, AnalysisOptions, CohomologyReport, RankDecision, RankTheoremNote};
use charvar::document::{DocumentError, InputDocument};
use charvar::presentation::{index2_subgroup, ParseError, Presentation};
use charvar::rep::{format_matrix, random_surface_representation, GroupKind, GroupSpec, Representation, ValidationReport};
use charvar::smoothness::{
    classify_with_report, expected_dimension, projective_stabilizer, scan_family, Classification, Good, ScanReport, Stabilizer,
};
use charvar::surfaces::{
    canonical_presentation, cup_pairing, h0_h2_closed_form, lagrangian_check, orientation_double_cover, pairing_form,
    pairing_gram, recognize_surface, ClosedForm, CoverReport, LagrangianReport, PairingGram, SurfaceKind,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::canonical::format_float;

pub const SCHEMA_VERSION: u32 = 1;

/// A failed command. Input problems exit with 1, domain failures with 2.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Domain(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Domain(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Domain(m) => m,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn from_document(path: &str, e: DocumentError) -> Failure {
    match e {
        DocumentError::Parse(p) => parse_failure(path, &p),
        other => Failure::Domain(format!("{path}: {other}")),
    }
}

fn parse_failure(path: &str, e: &ParseError) -> Failure {
    Failure::Input(format!("{path}: {e}"))
}

pub fn load(path: &str) -> Result<InputDocument, Failure> {
    let source = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    InputDocument::parse(&source).map_err(|e| parse_failure(path, &e))
}

pub fn load_representation(path: &str, options: &AnalysisOptions) -> Result<(InputDocument, Representation, ValidationReport), Failure> {
    let doc = load(path)?;
    let rep = doc.representation().map_err(|e| from_document(path, e))?;
    let validation = rep.ensure_valid(options.validation_tol).map_err(|e| Failure::Domain(format!("{path}: {e}")))?;
    Ok((doc, rep, validation))
}

#[derive(Serialize)]
pub struct Tolerance {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub min_gap_ratio: f64,
    pub validation_tol: f64,
}

#[derive(Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema_version: u32,
    pub tolerance: Tolerance,
}

pub fn metadata(options: &AnalysisOptions) -> Metadata {
    Metadata {
        tool: "charvar",
        version: env!("CARGO_PKG_VERSION"),
        schema_version: SCHEMA_VERSION,
        tolerance: Tolerance {
            rel_tol: options.rank.rel_tol,
            abs_floor: options.rank.abs_floor,
            min_gap_ratio: options.rank.min_gap_ratio,
            validation_tol: options.validation_tol,
        },
    }
}

#[derive(Serialize)]
pub struct InputEcho {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub group: String,
    /// SHA-256 of the generator images written with 17 significant digits.
    pub matrix_sha256: Option<String>,
}

fn relator_strings(p: &Presentation) -> Vec<String> {
    p.relators().iter().map(|r| p.format_word(r)).collect()
}

fn echo(p: &Presentation, spec: GroupSpec, rep: Option<&Representation>) -> InputEcho {
    InputEcho {
        generators: p.generator_names().to_vec(),
        relators: relator_strings(p),
        group: spec.to_string(),
        matrix_sha256: rep.map(matrix_digest),
    }
}

pub fn matrix_digest(rep: &Representation) -> String {
    let mut text = String::new();
    for (name, m) in rep.presentation().generator_names().iter().zip(rep.images()) {
        let _ = write!(text, "{name}");
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let _ = write!(text, " {} {}", format_float(m[(i, j)].re), format_float(m[(i, j)].im));
            }
        }
        text.push('\n');
    }
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningKind {
    RankGap,
    MultiRelator,
    PslCenter,
    GoodDimOnly,
}

#[derive(Serialize)]
pub struct Warning {
    pub kind: WarningKind,
    pub message: String,
}

fn gap_warnings(label: &str, d: &RankDecision, out: &mut Vec<Warning>) {
    if d.warning {
        out.push(Warning {
            kind: WarningKind::RankGap,
            message: format!("{label}: singular-value gap ratio {:.3e} is ambiguous", d.effective_gap()),
        });
    }
}

fn analysis_warnings(report: &CohomologyReport, class: &Classification, validation: &ValidationReport, spec: GroupSpec) -> Vec<Warning> {
    let mut out = Vec::new();
    gap_warnings("rank d1", &report.rank_d1, &mut out);
    gap_warnings("rank d2", &report.rank_d2, &mut out);
    if report.relator_count > 1 {
        out.push(Warning {
            kind: WarningKind::MultiRelator,
            message: format!("{} relators: b2 is the dimension of coker d2, an upper bound for H^2", report.relator_count),
        });
    }
    if spec.kind == GroupKind::PSL {
        for r in &validation.residuals {
            if let Some([re, im]) = r.central_value {
                if (re - 1.0).abs() + im.abs() > 1e-6 {
                    out.push(Warning {
                        kind: WarningKind::PslCenter,
                        message: format!(
                            "relator {} (`{}`) holds only in PSL: its lift evaluates to ({:.6}{:+.6}i)·I",
                            r.index + 1,
                            r.relator,
                            re,
                            im
                        ),
                    });
                }
            }
        }
    }
    if class.good == Good::DimOnly {
        out.push(Warning {
            kind: WarningKind::GoodDimOnly,
            message: "good is a dimension-level check here: a finite stabilizer larger than the center is not detected".into(),
        });
    }
    out
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub command: &'static str,
    pub input: InputEcho,
    pub surface: Option<SurfaceKind>,
    pub validation: ValidationReport,
    pub cohomology: CohomologyReport,
    pub rank_theorem: RankTheoremNote,
    pub classification: Classification,
    pub closed_form: Option<ClosedForm>,
    pub warnings: Vec<Warning>,
    pub metadata: Metadata,
}

pub fn analyze(path: &str, options: &AnalysisOptions) -> Result<AnalysisReport, Failure> {
    let (_, rep, validation) = load_representation(path, options)?;
    let cohomology = cohomology_report(&rep, options).map_err(domain)?;
    let classification = classify_with_report(&rep, &cohomology, options).map_err(domain)?;
    let surface = recognize_surface(rep.presentation());
    let closed_form = match surface {
        Some(SurfaceKind::NonOrientable { .. }) => Some(h0_h2_closed_form(&rep, options).map_err(domain)?),
        _ => None,
    };
    let warnings = analysis_warnings(&cohomology, &classification, &validation, rep.spec());
    Ok(AnalysisReport {
        command: "analyze",
        input: echo(rep.presentation(), rep.spec(), Some(&rep)),
        surface,
        validation,
        rank_theorem: rank_theorem_from_report(&cohomology),
        cohomology,
        classification,
        closed_form,
        warnings,
        metadata: metadata(options),
    })
}

pub fn analyze_text(r: &AnalysisReport) -> String {
    let c = &r.cohomology;
    let k = &r.classification;
    let mut s = String::new();
    let _ = writeln!(s, "group        {}", r.input.group);
    let _ = writeln!(s, "generators   {}", r.input.generators.join(" "));
    for rel in &r.input.relators {
        let _ = writeln!(s, "relator      {rel}");
    }
    if let Some(surface) = &r.surface {
        let _ = writeln!(s, "surface      {surface}");
    }
    let _ = writeln!(s, "betti        b0 = {}  b1 = {}  b2 = {}  ({:?})", c.b0, c.b1, c.b2, c.b2_status);
    let _ = writeln!(s, "ranks        d1 = {}  d2 = {}  min gap {:.3e}", c.rank_d1.rank, c.rank_d2.rank, c.min_gap_ratio());
    let _ = writeln!(s, "simple       {}", k.simple);
    let _ = writeln!(s, "reductive    {}", k.reductive);
    let _ = writeln!(s, "irreducible  {}", k.irreducible);
    if let Some(order) = k.projective_stabilizer_order {
        let _ = writeln!(s, "stabilizer   order {order}");
    } else {
        let _ = writeln!(s, "stabilizer   dimension {}", k.stabilizer_dim);
    }
    let _ = writeln!(s, "good         {:?}", k.good);
    let _ = writeln!(s, "smooth       {:?} ({})", k.smooth_verdict, k.smooth_reason);
    for w in &r.warnings {
        let _ = writeln!(s, "warning      {}", w.message);
    }
    let _ = writeln!(s, "tolerance    {:e}", r.metadata.tolerance.rel_tol);
    s
}

#[derive(Serialize)]
pub struct SurfaceReport {
    pub command: &'static str,
    pub surface: SurfaceKind,
    pub group: String,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub euler_characteristic: i64,
    pub expected_dimension: i64,
    pub metadata: Metadata,
}

pub fn surface(kind: SurfaceKind, spec: GroupSpec, options: &AnalysisOptions) -> Result<SurfaceReport, Failure> {
    let p = canonical_presentation(kind).map_err(domain)?;
    let dim = expected_dimension(spec, kind).map_err(domain)?;
    Ok(SurfaceReport {
        command: "surface",
        surface: kind,
        group: spec.to_string(),
        generators: p.generator_names().to_vec(),
        relators: relator_strings(&p),
        euler_characteristic: kind.euler_characteristic(),
        expected_dimension: dim,
        metadata: metadata(options),
    })
}

pub fn surface_text(r: &SurfaceReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "gens {}", r.generators.join(" "));
    for rel in &r.relators {
        let _ = writeln!(s, "rel {rel}");
    }
    let _ = writeln!(s, "# {} into {}, euler characteristic {}", r.surface, r.group, r.euler_characteristic);
    let _ = writeln!(s, "expected dimension {}", r.expected_dimension);
    s
}

#[derive(Serialize)]
pub struct CoverCommandReport {
    pub command: &'static str,
    pub input: InputEcho,
    pub cover: CoverReport,
    pub closed_form: ClosedForm,
    pub lagrangian: LagrangianReport,
    /// Stabilizer of the restriction to the orientation cover (SL(2), PSL(2)).
    pub cover_stabilizer: Option<Stabilizer>,
    pub embedding: Vec<String>,
    pub metadata: Metadata,
}

pub fn cover(path: &str, options: &AnalysisOptions) -> Result<CoverCommandReport, Failure> {
    let (doc, rep, _) = load_representation(path, options)?;
    let cover = orientation_double_cover(&rep, options).map_err(domain)?;
    let closed_form = h0_h2_closed_form(&rep, options).map_err(domain)?;
    let words = doc.embedding_words();
    let lagrangian = lagrangian_check(&rep, (!words.is_empty()).then_some(words.as_slice()), options).map_err(domain)?;
    let cover_stabilizer = if rep.spec().is_rank_one() {
        let sub = index2_subgroup(rep.presentation(), &vec![1; rep.generator_count()]).map_err(domain)?;
        let restricted = rep.restrict(&sub).map_err(domain)?;
        Some(projective_stabilizer(&restricted, &options.rank).map_err(domain)?)
    } else {
        None
    };
    Ok(CoverCommandReport {
        command: "cover",
        input: echo(rep.presentation(), rep.spec(), Some(&rep)),
        cover,
        closed_form,
        lagrangian,
        cover_stabilizer,
        embedding: doc.embedding.iter().map(|(name, w)| format!("{name} = {}", rep.presentation().format_word(w))).collect(),
        metadata: metadata(options),
    })
}

pub fn cover_text(r: &CoverCommandReport) -> String {
    let c = &r.cover;
    let l = &r.lagrangian;
    let mut s = String::new();
    let _ = writeln!(s, "base         h0 = {}  h1 = {}  h2 = {}", c.h0_base, c.h1_base, c.h2_base);
    let _ = writeln!(s, "cover        genus {}  h0 = {}  h1 = {}  h2 = {}", c.cover_genus, c.h0_cover, c.h1_cover, c.h2_cover);
    let ok = if c.decomposition_ok { "ok" } else { "FAILED" };
    let _ = writeln!(s, "decomposition {} = {} + {}  {ok}", c.h0_cover, c.h0_base, c.h2_base);
    let _ = writeln!(s, "h1 rewritten {}  consistent {}", c.h1_cover_rewritten, c.h1_consistent);
    let _ = writeln!(s, "lagrangian   {} = {}/2  {}", l.h1_base, l.h1_cover, l.dimension_ok);
    if let (Some(res), Some(scale)) = (l.isotropy_residual, l.isotropy_scale) {
        let _ = writeln!(s, "isotropy     max |w| = {res:.3e} (scale {scale:.3e})");
    }
    if let Some(stab) = &r.cover_stabilizer {
        match (stab.order, stab.positive_dimension) {
            (Some(order), _) => {
                let _ = writeln!(s, "cover stabilizer order {order}");
            }
            (_, Some(dim)) => {
                let _ = writeln!(s, "cover stabilizer dimension {dim}");
            }
            _ => {}
        }
    }
    s
}

#[derive(Serialize)]
pub struct ScanInput {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub group: String,
    pub grid: Vec<f64>,
}

#[derive(Serialize)]
pub struct ScanCommandReport {
    pub command: &'static str,
    pub input: ScanInput,
    pub scan: ScanReport,
    pub metadata: Metadata,
}

pub fn scan(path: &str, options: &AnalysisOptions) -> Result<ScanCommandReport, Failure> {
    let doc = load(path)?;
    let fam = doc.family().map_err(|e| from_document(path, e))?;
    let spec = doc.group().map_err(|e| parse_failure(path, &e))?;
    let scan = scan_family(&fam, options).map_err(|e| Failure::Domain(format!("{path}: {e}")))?;
    Ok(ScanCommandReport {
        command: "scan",
        input: ScanInput {
            generators: doc.presentation.generator_names().to_vec(),
            relators: relator_strings(&doc.presentation),
            group: spec.to_string(),
            grid: fam.grid().to_vec(),
        },
        scan,
        metadata: metadata(options),
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn scan_csv(r: &ScanCommandReport) -> String {
    let mut s = String::from("t,b0,b1,b2,simple,reductive,warnings\n");
    for row in &r.scan.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            row.t,
            row.b0,
            row.b1,
            row.b2,
            row.simple,
            row.reductive,
            csv_field(&row.warnings.join("; "))
        );
    }
    s
}

pub fn scan_text(r: &ScanCommandReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>10}  {:>3} {:>3} {:>3}  {:>6}  {:>6}  {:>9}  smooth", "t", "b0", "b1", "b2", "simple", "reduct", "good");
    for row in &r.scan.rows {
        let _ = writeln!(
            s,
            "{:>10}  {:>3} {:>3} {:>3}  {:>6}  {:>6}  {:>9}  {:?}",
            row.t,
            row.b0,
            row.b1,
            row.b2,
            row.simple,
            row.reductive,
            format!("{:?}", row.good),
            row.smooth_verdict
        );
    }
    let [b0, b1, b2] = r.scan.mode;
    let _ = writeln!(s, "generic ({b0}, {b1}, {b2})");
    for j in &r.scan.jumps {
        let _ = writeln!(s, "jump at t = {}: {:?}", j.t, j.betti);
    }
    match r.scan.euler_constant {
        Some(e) => {
            let _ = writeln!(s, "euler characteristic {e} at every sample");
        }
        None => {
            let _ = writeln!(s, "euler characteristic varies");
        }
    }
    s
}

#[derive(Serialize)]
pub struct PairValue {
    pub alpha: String,
    pub beta: String,
    /// `[re, im]`; the overall scale of the form is not normalized.
    pub value: [f64; 2],
    pub antisymmetry_residual: f64,
    pub descent_residual: f64,
}

#[derive(Serialize)]
pub struct PairingCommandReport {
    pub command: &'static str,
    pub input: InputEcho,
    pub pairing: Option<PairValue>,
    pub gram: Option<PairingGram>,
    pub normalization: &'static str,
    pub metadata: Metadata,
}

pub fn pairing(
    path: &str,
    gram: bool,
    names: (Option<&str>, Option<&str>),
    options: &AnalysisOptions,
) -> Result<PairingCommandReport, Failure> {
    let (doc, rep, _) = load_representation(path, options)?;
    let mut report = PairingCommandReport {
        command: "pairing",
        input: echo(rep.presentation(), rep.spec(), Some(&rep)),
        pairing: None,
        gram: None,
        normalization: "unnormalized",
        metadata: metadata(options),
    };
    if gram {
        report.gram = Some(pairing_gram(&rep, options).map_err(domain)?);
        return Ok(report);
    }
    let declared = doc.cocycle_names();
    let pick = |given: Option<&str>, k: usize| -> Result<String, Failure> {
        match given {
            Some(n) => Ok(n.to_string()),
            None => declared.get(k).map(|s| s.to_string()).ok_or_else(|| {
                Failure::Input(format!("{path}: pairing needs two `cocycle` sections or --gram, found {}", declared.len()))
            }),
        }
    };
    let (a, b) = (pick(names.0, 0)?, pick(names.1, 1)?);
    let alpha = doc.cocycle(&a, &rep).map_err(|e| from_document(path, e))?;
    let beta = doc.cocycle(&b, &rep).map_err(|e| from_document(path, e))?;
    let value = cup_pairing(&rep, &alpha, &beta, options).map_err(|e| Failure::Domain(format!("{path}: {e}")))?;
    let form = pairing_form(&rep, options).map_err(domain)?;
    report.pairing = Some(PairValue {
        alpha: a,
        beta: b,
        value: [value.re, value.im],
        antisymmetry_residual: form.antisymmetry_residual,
        descent_residual: form.descent_residual,
    });
    Ok(report)
}

pub fn pairing_text(r: &PairingCommandReport) -> String {
    let mut s = String::new();
    if let Some(p) = &r.pairing {
        let _ = writeln!(s, "w({}, {}) = {:e}{:+e}i  (unnormalized)", p.alpha, p.beta, p.value[0], p.value[1]);
        let _ = writeln!(s, "antisymmetry residual {:.3e}  descent residual {:.3e}", p.antisymmetry_residual, p.descent_residual);
    }
    if let Some(g) = &r.gram {
        let _ = writeln!(s, "h1 dimension {}  gram rank {}  nondegenerate {}", g.h1_dim, g.rank.rank, g.nondegenerate);
        let _ = writeln!(s, "antisymmetry residual {:.3e}  descent residual {:.3e}", g.antisymmetry_residual, g.descent_residual);
    }
    s
}

/// An input file for a seeded random representation of a surface group.
pub fn random_document(kind: SurfaceKind, spec: GroupSpec, seed: u64) -> Result<String, Failure> {
    let rep = random_surface_representation(spec, kind, seed).map_err(domain)?;
    let mut s = String::new();
    let _ = writeln!(s, "# random representation, {kind}, seed {seed}");
    let _ = writeln!(s, "group {spec}");
    s.push_str(&rep.presentation().to_source());
    for (name, m) in rep.presentation().generator_names().iter().zip(rep.images()) {
        let _ = writeln!(s, "mat {name} = {}", format_matrix(m));
    }
    Ok(s)
}
