//! Point classification and grid sweeps over the three-parameter family.
//!
//! Everything here is deterministic: sweeps run in grid order and numbers are
//! printed with 15 significant digits, so identical inputs give identical bytes.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{horodecki_to_simplex, simplex_state, HorodeckiParam, SimplexParams};
use crate::ppt::classify_ppt;
use crate::witness::{
    c_gamma_lambda, certify_lemma1, detection_profile, hs_measure_gamma0, minimize_lambda_min,
    region_witnesses, DetectionProfile, Gamma0Label, LambdaMinimum, RegionWitnesses, GAMMA_WINDOW,
};

/// Witness names used in [`RegionSample::witness_values`].
pub const W_CI: &str = "C_I";
pub const W_CII: &str = "C_II";
pub const W_SLICE: &str = "C_slice";
pub const W_RAY: &str = "C_ray";

/// Columns of [`SweepReport::to_csv`].
pub const SLICE_COLUMNS: &str =
    "alpha,beta,gamma,valid,min_pt_eig,label,w_ci,w_cii,w_slice,w_ray,measure";
/// Columns of [`LambdaScan::to_csv`].
pub const SCAN_COLUMNS: &str = "gamma,lambda_1,lambda_2,lambda_min,detects";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "invalid")]
    Invalid,
    #[serde(rename = "NPT-I")]
    NptI,
    #[serde(rename = "NPT-II")]
    NptII,
    /// NPT but neither region witness is negative.
    #[serde(rename = "NPT")]
    Npt,
    #[serde(rename = "PPT-detected-bound-entangled")]
    PptDetectedBoundEntangled,
    #[serde(rename = "PPT-unresolved")]
    PptUnresolved,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Invalid => "invalid",
            Label::NptI => "NPT-I",
            Label::NptII => "NPT-II",
            Label::Npt => "NPT",
            Label::PptDetectedBoundEntangled => "PPT-detected-bound-entangled",
            Label::PptUnresolved => "PPT-unresolved",
        }
    }

    pub fn is_npt(self) -> bool {
        matches!(self, Label::NptI | Label::NptII | Label::Npt)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Label rule shared by `classify` and the sweeps.
///
/// Witness values that are `None` were not applicable at this point.
pub fn derive_label(
    valid: bool,
    min_pt_eigenvalue: f64,
    w_ci: f64,
    w_cii: f64,
    w_slice: Option<f64>,
    w_ray: Option<f64>,
    tol: f64,
) -> Label {
    if !valid {
        Label::Invalid
    } else if min_pt_eigenvalue < -tol {
        if w_ci < 0.0 && w_ci <= w_cii {
            Label::NptI
        } else if w_cii < 0.0 {
            Label::NptII
        } else {
            Label::Npt
        }
    } else if [w_slice, w_ray].into_iter().flatten().any(|w| w < -tol) {
        Label::PptDetectedBoundEntangled
    } else {
        Label::PptUnresolved
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSample {
    pub params: SimplexParams,
    pub valid: bool,
    pub min_pt_eigenvalue: f64,
    pub label: Label,
    pub witness_values: BTreeMap<String, f64>,
    pub measure: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Certified witnesses used to classify points of one `γ` slice.
#[derive(Debug, Clone)]
pub struct WitnessBank {
    gamma: f64,
    regions: RegionWitnesses,
    slice: Option<crate::witness::LambdaLineWitness>,
    tol: f64,
}

fn gamma_tol(x: f64) -> bool {
    x.abs() <= 1e-14
}

/// `C_{γ,λ_min(γ)}` when it is defined, detecting, and certified.
fn detecting_witness(gamma: f64) -> Result<Option<crate::witness::LambdaLineWitness>> {
    if !gamma.is_finite() || gamma.abs() > GAMMA_WINDOW + 1e-12 {
        return Ok(None);
    }
    let profile = detection_profile(gamma)?;
    if !profile.detects {
        return Ok(None);
    }
    let w = c_gamma_lambda(gamma, profile.lambda_min)?;
    Ok(certify_lemma1(&w.witness.op)?.certified.then_some(w))
}

impl WitnessBank {
    pub fn for_gamma(gamma: f64, tol: f64) -> Result<Self> {
        Ok(Self {
            gamma,
            regions: region_witnesses(),
            slice: detecting_witness(gamma)?,
            tol,
        })
    }

    /// The slice witness `C_{γ,λ_min(γ)}`, if this slice has one.
    pub fn slice_witness(&self) -> Option<&crate::witness::LambdaLineWitness> {
        self.slice.as_ref()
    }

    /// Witness for the λ-line through `p`, when `p = λ·ρ_b` for some PPT anchor
    /// `ρ_b` whose line is detected.
    fn ray_witness(&self, p: SimplexParams) -> Result<Option<crate::witness::LambdaLineWitness>> {
        let lambda = 6.0 * p.alpha - p.gamma;
        if lambda <= 1e-9 {
            return Ok(None);
        }
        let anchor_gamma = p.gamma / lambda;
        let on_ray = (p.beta - lambda * (-5.0 + 7.0 * anchor_gamma) / 21.0).abs() <= 1e-12;
        if !on_ray {
            return Ok(None);
        }
        detecting_witness(anchor_gamma)
    }

    pub fn classify(&self, p: SimplexParams) -> Result<RegionSample> {
        if (p.gamma - self.gamma).abs() > 1e-14 {
            return Err(Error::InvalidParameter(format!(
                "point gamma {} does not match slice gamma {}",
                p.gamma, self.gamma
            )));
        }
        let state = simplex_state(p);
        let verdict = classify_ppt(&state.operator, self.tol)?;
        let mut values = BTreeMap::new();
        let w_ci = self.regions.c_i.expectation(&state.operator)?;
        let w_cii = self.regions.c_ii.expectation(&state.operator)?;
        values.insert(W_CI.to_string(), w_ci);
        values.insert(W_CII.to_string(), w_cii);
        let w_slice = match &self.slice {
            Some(w) => Some(w.witness.expectation(&state.operator)?),
            None => None,
        };
        let w_ray = match self.ray_witness(p)? {
            Some(w) => Some(w.witness.expectation(&state.operator)?),
            None => None,
        };
        if let Some(v) = w_slice {
            values.insert(W_SLICE.to_string(), v);
        }
        if let Some(v) = w_ray {
            values.insert(W_RAY.to_string(), v);
        }
        let label = derive_label(
            state.valid,
            verdict.min_pt_eigenvalue,
            w_ci,
            w_cii,
            w_slice,
            w_ray,
            self.tol,
        );
        let measure = if label.is_npt() && gamma_tol(p.gamma) {
            match hs_measure_gamma0(p.alpha, p.beta, self.tol)? {
                m if matches!(m.label, Gamma0Label::Entangled(_)) => Some(m.value),
                _ => None,
            }
        } else {
            None
        };
        let note = (label == Label::PptUnresolved && gamma_tol(p.gamma)).then(|| {
            "PPT on the gamma = 0 slice, where PPT states are known to be separable".to_string()
        });
        Ok(RegionSample {
            params: p,
            valid: state.valid,
            min_pt_eigenvalue: verdict.min_pt_eigenvalue,
            label,
            witness_values: values,
            measure,
            note,
        })
    }
}

/// Classifies `ρ(α, β, γ)`.
pub fn classify_point(p: SimplexParams, tol: f64) -> Result<RegionSample> {
    WitnessBank::for_gamma(p.gamma, tol)?.classify(p)
}

/// Classifies the Horodecki state `ρ_b`, or its λ-line point `λρ_b + (1-λ)𝟙/9`.
pub fn classify_horodecki(b: f64, lambda: Option<f64>, tol: f64) -> Result<RegionSample> {
    let param = HorodeckiParam::new(b)?;
    let mut p = horodecki_to_simplex(param);
    if let Some(l) = lambda {
        if !(0.0..=1.0).contains(&l) {
            return Err(Error::InvalidParameter(format!(
                "lambda = {l} outside [0, 1]"
            )));
        }
        p = p.scaled(l);
    }
    let mut sample = classify_point(p, tol)?;
    if lambda.is_none() && (2.0..=3.0).contains(&b) && sample.label == Label::PptUnresolved {
        sample.note =
            Some("Horodecki state with 2 <= b <= 3, which is known to be separable".to_string());
    }
    Ok(sample)
}

/// Fixed-width scientific notation with 15 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        // avoid printing -0
        return format!("{:.14e}", 0.0);
    }
    format!("{x:.14e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

/// Axis-aligned box around the positive region of a `γ` slice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceBox {
    pub alpha: (f64, f64),
    pub beta: (f64, f64),
}

/// Positivity of `ρ(α, β, γ)` at fixed `γ` is the triangle
/// `α + β ≤ min(1-γ, 1+2γ)`, `8α - β ≥ -(1-γ)`, `-α + 7β/2 ≥ -(1-γ)`.
pub fn slice_bounding_box(gamma: f64) -> Result<SliceBox> {
    let s = (1.0 - gamma).min(1.0 + 2.0 * gamma);
    let t = 1.0 - gamma;
    // lines a·α + b·β = c, each oriented so the region is a·α + b·β ≤ c
    let lines = [(1.0, 1.0, s), (-8.0, 1.0, t), (1.0, -3.5, t)];
    let mut vertices = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            let (a1, b1, c1) = lines[i];
            let (a2, b2, c2) = lines[j];
            let det = a1 * b2 - a2 * b1;
            let v = ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det);
            let inside = lines
                .iter()
                .all(|&(a, b, c)| a * v.0 + b * v.1 <= c + 1e-12);
            if inside {
                vertices.push(v);
            }
        }
    }
    if vertices.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "the gamma = {gamma} slice contains no states"
        )));
    }
    let span = |f: fn(&(f64, f64)) -> f64| {
        let lo = vertices.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = vertices.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    };
    Ok(SliceBox {
        alpha: span(|v| v.0),
        beta: span(|v| v.1),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub gamma: f64,
    pub alpha: (f64, f64),
    pub beta: (f64, f64),
    pub grid_n: usize,
}

impl GridSpec {
    pub fn len(&self) -> usize {
        self.grid_n * self.grid_n
    }

    pub fn is_empty(&self) -> bool {
        self.grid_n == 0
    }

    /// Point `k`; `α` varies slowest.
    pub fn point(&self, k: usize) -> SimplexParams {
        let lerp =
            |(lo, hi): (f64, f64), i: usize| lo + (hi - lo) * i as f64 / (self.grid_n - 1) as f64;
        SimplexParams::new(
            lerp(self.alpha, k / self.grid_n),
            lerp(self.beta, k % self.grid_n),
            self.gamma,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub tolerance: f64,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(tolerance: f64, seed: Option<u64>) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            tolerance,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub grid: GridSpec,
    pub rows: Vec<RegionSample>,
    pub provenance: Provenance,
}

/// Classifies a `grid_n × grid_n` grid over the bounding box of the `γ` slice.
pub fn slice_sweep(gamma: f64, grid_n: usize, tol: f64) -> Result<SweepReport> {
    if grid_n < 2 {
        return Err(Error::InvalidParameter("grid must be at least 2".into()));
    }
    let bbox = slice_bounding_box(gamma)?;
    let grid = GridSpec {
        gamma,
        alpha: bbox.alpha,
        beta: bbox.beta,
        grid_n,
    };
    let bank = WitnessBank::for_gamma(gamma, tol)?;
    let rows = (0..grid.len())
        .map(|k| bank.classify(grid.point(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        grid,
        rows,
        provenance: Provenance::new(tol, None),
    })
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let p = &self.provenance;
        let g = &self.grid;
        writeln!(out, "# {} {} slice", p.tool, p.version).unwrap();
        writeln!(
            out,
            "# gamma={} grid={} alpha=[{},{}] beta=[{},{}] tol={}",
            fmt_num(g.gamma),
            g.grid_n,
            fmt_num(g.alpha.0),
            fmt_num(g.alpha.1),
            fmt_num(g.beta.0),
            fmt_num(g.beta.1),
            fmt_num(p.tolerance)
        )
        .unwrap();
        writeln!(out, "{SLICE_COLUMNS}").unwrap();
        for r in &self.rows {
            let w = |k: &str| r.witness_values.get(k).copied();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                fmt_num(r.params.alpha),
                fmt_num(r.params.beta),
                fmt_num(r.params.gamma),
                r.valid,
                fmt_num(r.min_pt_eigenvalue),
                r.label,
                fmt_opt(w(W_CI)),
                fmt_opt(w(W_CII)),
                fmt_opt(w(W_SLICE)),
                fmt_opt(w(W_RAY)),
                fmt_opt(r.measure),
            )
            .unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaScan {
    pub rows: Vec<DetectionProfile>,
    /// Smallest `λ_min` among the rows.
    pub scan_minimum: LambdaMinimum,
    /// Minimum after golden-section refinement around the best row.
    pub refined_minimum: LambdaMinimum,
    pub provenance: Provenance,
}

/// Closed-form detection profile on `steps` evenly spaced `γ` in `[lo, hi]`.
pub fn lambda_scan(lo: f64, hi: f64, steps: usize) -> Result<LambdaScan> {
    if steps < 2 || lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidParameter(
            "need from < to and steps >= 2".into(),
        ));
    }
    let rows = (0..steps)
        .map(|k| detection_profile(lo + (hi - lo) * k as f64 / (steps - 1) as f64))
        .collect::<Result<Vec<_>>>()?;
    let best = rows
        .iter()
        .min_by(|a, b| a.lambda_min.total_cmp(&b.lambda_min))
        .expect("at least two rows");
    Ok(LambdaScan {
        scan_minimum: LambdaMinimum {
            gamma: best.gamma,
            lambda_min: best.lambda_min,
        },
        refined_minimum: minimize_lambda_min(lo, hi, steps)?,
        rows,
        provenance: Provenance::new(0.0, None),
    })
}

impl LambdaScan {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# {} {} lambda-scan",
            self.provenance.tool, self.provenance.version
        )
        .unwrap();
        writeln!(out, "{SCAN_COLUMNS}").unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                fmt_num(r.gamma),
                fmt_num(r.lambda_1),
                fmt_num(r.lambda_2),
                fmt_num(r.lambda_min),
                r.detects
            )
            .unwrap();
        }
        writeln!(
            out,
            "# min lambda_min={} at gamma={}; refined lambda_min={} at gamma={}",
            fmt_num(self.scan_minimum.lambda_min),
            fmt_num(self.scan_minimum.gamma),
            fmt_num(self.refined_minimum.lambda_min),
            fmt_num(self.refined_minimum.gamma),
        )
        .unwrap();
        out
    }
}
