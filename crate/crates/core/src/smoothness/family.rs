//! One-parameter families `t ↦ φ_t` whose generator images are products of
//! constant matrices and exponentials `exp(c·π·t·i·M)`, and scans of their
//! cohomology along a grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{classify_with_report, Good, SmoothVerdict, SmoothnessError};
use crate::cohomology::{cohomology_report, AnalysisOptions};
use crate::presentation::Presentation;
use crate::rep::{CMatrix, GroupSpec, Representation};

#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    Const(CMatrix),
    /// `exp(coefficient·π·t·i·generator)`.
    ExpI { coefficient: f64, generator: CMatrix },
}

impl Factor {
    pub fn size(&self) -> usize {
        match self {
            Factor::Const(m) => m.nrows(),
            Factor::ExpI { generator, .. } => generator.nrows(),
        }
    }

    fn at(&self, t: f64) -> CMatrix {
        match self {
            Factor::Const(m) => m.clone(),
            Factor::ExpI { coefficient, generator } => (generator * Complex64::new(0.0, coefficient * PI * t)).exp(),
        }
    }

    fn is_constant(&self) -> bool {
        matches!(self, Factor::Const(_)) || matches!(self, Factor::ExpI { coefficient, .. } if *coefficient == 0.0)
    }
}

/// An ordered product of factors.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTemplate {
    pub factors: Vec<Factor>,
}

impl MatrixTemplate {
    pub fn constant(m: CMatrix) -> Self {
        Self { factors: vec![Factor::Const(m)] }
    }

    pub fn at(&self, t: f64) -> CMatrix {
        let n = self.factors[0].size();
        self.factors.iter().fold(CMatrix::identity(n, n), |acc, f| acc * f.at(t))
    }

    pub fn is_constant(&self) -> bool {
        self.factors.iter().all(Factor::is_constant)
    }
}

#[derive(Clone, Debug)]
pub struct FamilySpec {
    presentation: Presentation,
    spec: GroupSpec,
    templates: Vec<MatrixTemplate>,
    grid: Vec<f64>,
}

impl FamilySpec {
    pub fn new(
        presentation: Presentation,
        spec: GroupSpec,
        templates: Vec<MatrixTemplate>,
        grid: Vec<f64>,
    ) -> Result<Self, SmoothnessError> {
        if templates.len() != presentation.generator_count() {
            return Err(SmoothnessError::Family(format!(
                "{} generators but {} matrix templates",
                presentation.generator_count(),
                templates.len()
            )));
        }
        for (k, tpl) in templates.iter().enumerate() {
            if tpl.factors.is_empty() {
                return Err(SmoothnessError::Family(format!("template {} has no factors", k + 1)));
            }
            if tpl.factors.iter().any(|f| f.size() != spec.n) {
                return Err(SmoothnessError::Family(format!("template {} has factors of the wrong size", k + 1)));
            }
        }
        if grid.is_empty() || grid.iter().any(|t| !t.is_finite()) {
            return Err(SmoothnessError::Family("the grid must be a nonempty list of finite values".into()));
        }
        Ok(Self { presentation, spec, templates, grid })
    }

    /// The constant family at `rep`.
    pub fn constant(rep: &Representation, grid: Vec<f64>) -> Result<Self, SmoothnessError> {
        let templates = rep.images().iter().cloned().map(MatrixTemplate::constant).collect();
        Self::new(rep.presentation().clone(), rep.spec(), templates, grid)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn templates(&self) -> &[MatrixTemplate] {
        &self.templates
    }

    pub fn with_grid(&self, grid: Vec<f64>) -> Result<Self, SmoothnessError> {
        Self::new(self.presentation.clone(), self.spec, self.templates.clone(), grid)
    }

    pub fn instance(&self, t: f64) -> Result<Representation, SmoothnessError> {
        let images = self.templates.iter().map(|tpl| tpl.at(t)).collect();
        Representation::new(self.presentation.clone(), self.spec, images).map_err(|source| SmoothnessError::Sample { t, source })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub t: f64,
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
    pub euler: i64,
    pub simple: bool,
    pub reductive: bool,
    pub good: Good,
    pub smooth_verdict: SmoothVerdict,
    pub min_gap_ratio: f64,
    pub warnings: Vec<String>,
}

impl ScanRow {
    pub fn betti(&self) -> [usize; 3] {
        [self.b0, self.b1, self.b2]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Jump {
    pub t: f64,
    pub betti: [usize; 3],
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    /// Most frequent `(b0, b1, b2)`; ties go to the earliest.
    pub mode: [usize; 3],
    pub jumps: Vec<Jump>,
    /// `b0 − b1 + b2` when it is the same at every sample.
    pub euler_constant: Option<i64>,
}

const JUMP_LABEL: &str =
    "betti jump: cohomology differs from the generic value along the family, so the point is singular by upper semicontinuity";

fn scan_row(fam: &FamilySpec, t: f64, options: &AnalysisOptions) -> Result<ScanRow, SmoothnessError> {
    let rep = fam.instance(t)?;
    rep.ensure_valid(options.validation_tol).map_err(|source| SmoothnessError::Sample { t, source })?;
    let report = cohomology_report(&rep, options)?;
    let class = classify_with_report(&rep, &report, options)?;
    let mut warnings = Vec::new();
    if report.has_gap_warning() {
        warnings.push(format!("rank gap ratio {:.3e} below threshold", report.min_gap_ratio()));
    }
    if report.relator_count > 1 {
        warnings.push("b2 is a coker bound".to_string());
    }
    Ok(ScanRow {
        t,
        b0: report.b0,
        b1: report.b1,
        b2: report.b2,
        euler: report.euler_characteristic(),
        simple: class.simple,
        reductive: class.reductive,
        good: class.good,
        smooth_verdict: class.smooth_verdict,
        min_gap_ratio: report.min_gap_ratio(),
        warnings,
    })
}

/// Cohomology and classification at every grid point, in grid order.
pub fn scan_family(fam: &FamilySpec, options: &AnalysisOptions) -> Result<ScanReport, SmoothnessError> {
    let results: Vec<Result<ScanRow, SmoothnessError>> = fam.grid.par_iter().map(|&t| scan_row(fam, t, options)).collect();
    // Report the first failing sample in grid order.
    let rows = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut counts: Vec<([usize; 3], usize)> = Vec::new();
    for row in &rows {
        match counts.iter_mut().find(|(b, _)| *b == row.betti()) {
            Some((_, n)) => *n += 1,
            None => counts.push((row.betti(), 1)),
        }
    }
    let best = counts.iter().map(|(_, n)| *n).max().unwrap_or(0);
    let mode = counts.iter().find(|(_, n)| *n == best).map(|(b, _)| *b).unwrap_or_default();
    let jumps = rows
        .iter()
        .filter(|r| r.betti() != mode)
        .map(|r| Jump { t: r.t, betti: r.betti(), label: JUMP_LABEL.to_string() })
        .collect();
    let euler_constant = rows.first().map(|r| r.euler).filter(|&e| rows.iter().all(|r| r.euler == e));
    Ok(ScanReport { rows, mode, jumps, euler_constant })
}
