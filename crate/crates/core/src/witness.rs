//! Geometric entanglement witnesses and their certification.
//!
//! For two states `σ ≠ ρ` the operator
//!
//! ```text
//! C = σ - ρ - ⟨σ, σ - ρ⟩ 𝟙
//! ```
//!
//! defines the hyperplane through `σ` orthogonal to `σ - ρ`: `⟨σ, C⟩ = 0` and
//! `⟨ρ, C⟩ = -‖σ - ρ‖²`. It is an entanglement witness exactly when every
//! separable state lies on the nonnegative side, which is certified here by a
//! sufficient Weyl-coefficient test: any Hermitian
//!
//! ```text
//! C = a((d-1)𝟙 + Σ c_nm U_nm ⊗ U_{-n,m}),   a > 0,
//! ```
//!
//! with all `|c_nm| ≤ 1` has nonnegative expectation on every separable state.

use std::f64::consts::SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{horodecki_state, line_state, simplex_state, HorodeckiParam, SimplexParams};
use crate::operator::{
    hermitian_spectrum, hs_inner, hs_norm, partial_transpose, BipartiteOperator, DensityMatrix,
    Subsystem, PSD_TOL, SPECTRUM_HERMITIAN_TOL,
};
use crate::weyl::{weyl_expand, weyl_product, WeylIndex, ZERO_THRESHOLD};

/// Largest `|γ|` with a PPT Horodecki anchor (`b ∈ [1, 4]`).
pub const GAMMA_WINDOW: f64 = 3.0 / 7.0;
/// `1/√21`: below this `|γ|` the λ-line witness never certifies for `λ < 1`.
pub fn detection_threshold() -> f64 {
    1.0 / 21f64.sqrt()
}
/// `√5/7`: where `f₁ = f₂` and `λ_min` is smallest.
pub fn crossover_gamma() -> f64 {
    5f64.sqrt() / 7.0
}
/// Global minimum of `λ_min(γ)`.
pub const LAMBDA_MIN_TOTAL: f64 = 7.0 / 8.0;

/// Slack allowed on `|c_nm| ≤ 1`.
pub const CERTIFY_SLACK: f64 = 1e-12;

/// Hermitian operator built from a reference/target pair.
#[derive(Debug, Clone)]
pub struct GeometricWitness {
    pub op: BipartiteOperator,
    /// State the hyperplane passes through (`σ`, or `ρ_λ` on a λ-line).
    pub reference: DensityMatrix,
    /// State the hyperplane separates off (`ρ`).
    pub target: DensityMatrix,
    /// `‖σ - ρ‖` when normalized, otherwise 1.
    pub normalization: f64,
}

impl GeometricWitness {
    /// `Tr(ρ C)`.
    pub fn expectation(&self, rho: &BipartiteOperator) -> Result<f64> {
        self.op.expectation(rho)
    }

    pub fn certify(&self) -> Result<WitnessCertificate> {
        certify_lemma1(&self.op)
    }
}

/// `C = σ - ρ - ⟨σ, σ-ρ⟩𝟙`, divided by `‖σ-ρ‖` when `normalize` is set.
pub fn geometric_witness(
    sigma: &DensityMatrix,
    rho: &DensityMatrix,
    normalize: bool,
) -> Result<GeometricWitness> {
    let diff = sigma.try_sub(rho)?;
    let dist = hs_norm(&diff);
    if dist < 1e-14 {
        return Err(Error::ZeroDifference);
    }
    let shift = hs_inner(sigma, &diff)?.re;
    let id = BipartiteOperator::identity(sigma.dim_a(), sigma.dim_b());
    let raw = diff.add_scaled(-shift, &id)?.hermitian_part();
    let (op, normalization) = if normalize {
        (raw * (1.0 / dist), dist)
    } else {
        (raw, 1.0)
    };
    Ok(GeometricWitness {
        op,
        reference: sigma.clone(),
        target: rho.clone(),
        normalization,
    })
}

/// One `c_nm` entry of a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylCoefficient {
    pub n: usize,
    pub m: usize,
    /// `[re, im]`
    pub c: Complex64,
}

/// Outcome of the Weyl-coefficient test.
///
/// `certified = true` proves `Tr σC ≥ 0` for every separable `σ`;
/// `certified = false` is inconclusive because the test is only sufficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub in_lemma_form: bool,
    pub a: f64,
    pub c_table: Vec<WeylCoefficient>,
    pub max_abs_c: f64,
    /// Largest coefficient outside the `U_nm ⊗ U_{-n,m}` pattern.
    pub max_off_form: f64,
    pub certified: bool,
}

impl WitnessCertificate {
    pub fn c(&self, idx: WeylIndex) -> Complex64 {
        self.c_table
            .iter()
            .find(|e| e.n == idx.n && e.m == idx.m)
            .map(|e| e.c)
            .unwrap_or_default()
    }
}

pub fn certify_lemma1(w: &BipartiteOperator) -> Result<WitnessCertificate> {
    let dev = w.hermitian_deviation();
    if dev > SPECTRUM_HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let d = w.dim_a();
    let expansion = weyl_expand(w)?;
    let identity = expansion.identity_coeff();

    let mut max_off_form = identity.im.abs();
    for (a, b, c) in expansion.iter() {
        let on_form = b == a.partner(d);
        if !on_form {
            max_off_form = max_off_form.max(c.norm());
        }
    }

    let a = identity.re / (d - 1) as f64;
    let scale_ok = a > ZERO_THRESHOLD;
    let c_table: Vec<WeylCoefficient> = WeylIndex::all(d)
        .map(|idx| {
            let c = if idx.is_identity() || !scale_ok {
                Complex64::new(0.0, 0.0)
            } else {
                expansion.coeff(idx, idx.partner(d)) / a
            };
            WeylCoefficient {
                n: idx.n,
                m: idx.m,
                c,
            }
        })
        .collect();
    let max_abs_c = if scale_ok {
        c_table.iter().map(|e| e.c.norm()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let in_lemma_form = scale_ok && max_off_form <= ZERO_THRESHOLD;
    Ok(WitnessCertificate {
        in_lemma_form,
        a: if scale_ok {
            a
        } else {
            identity.re / (d - 1) as f64
        },
        c_table,
        max_abs_c,
        max_off_form,
        certified: in_lemma_form && max_abs_c <= 1.0 + CERTIFY_SLACK,
    })
}

/// `U₁ = Σ_{n, m≠0} U_nm ⊗ U_{-n,m}`, the six `m ≠ 0` Bell-diagonal terms.
pub fn u1() -> BipartiteOperator {
    let mut out = BipartiteOperator::zeros(3, 3);
    for n in 0..3 {
        for m in 1..3 {
            let idx = WeylIndex::new(3, n, m);
            out = &out + &weyl_product(3, idx, idx.partner(3));
        }
    }
    out
}

/// `U₂ᴵ = U₁₀ ⊗ U₋₁₀`.
pub fn u2_i() -> BipartiteOperator {
    weyl_product(3, WeylIndex::new(3, 1, 0), WeylIndex::new(3, -1, 0))
}

/// `U₂ᴵᴵ = U₂₀ ⊗ U₋₂₀`.
pub fn u2_ii() -> BipartiteOperator {
    weyl_product(3, WeylIndex::new(3, 2, 0), WeylIndex::new(3, -2, 0))
}

/// Which NPT region of the `γ = 0` slice a state belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    I,
    II,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::I => f.write_str("I"),
            Region::II => f.write_str("II"),
        }
    }
}

/// The two optimal witnesses of the `γ = 0` slice.
#[derive(Debug, Clone)]
pub struct RegionWitnesses {
    pub c_i: GeometricWitness,
    pub c_ii: GeometricWitness,
}

impl RegionWitnesses {
    pub fn get(&self, region: Region) -> &GeometricWitness {
        match region {
            Region::I => &self.c_i,
            Region::II => &self.c_ii,
        }
    }
}

fn gamma0_density(alpha: f64, beta: f64) -> DensityMatrix {
    simplex_state(SimplexParams::new(alpha, beta, 0.0))
        .into_density()
        .expect("representative point is a valid state")
}

/// `C_I = (2𝟙 - U₁ - U₂)/(6√2)` and `C_II = (2𝟙 + U₁ - U₂)/(6√2)`.
///
/// The recorded source pairs are the representatives `ρ(1/2, 0) → σ(1/4, 0)`
/// and `ρ(0, 4/5) → σ(1/12, 7/15)`; both are at distance `√2/6`.
pub fn region_witnesses() -> RegionWitnesses {
    let id = BipartiteOperator::identity(3, 3);
    let u2 = &u2_i() + &u2_ii();
    let u1 = u1();
    let scale = 1.0 / (6.0 * SQRT_2);
    let c_i = (&(&(&id * 2.0) - &u1) - &u2) * scale;
    let c_ii = (&(&(&id * 2.0) + &u1) - &u2) * scale;
    let norm = SQRT_2 / 6.0;
    RegionWitnesses {
        c_i: GeometricWitness {
            op: c_i,
            reference: gamma0_density(0.25, 0.0),
            target: gamma0_density(0.5, 0.0),
            normalization: norm,
        },
        c_ii: GeometricWitness {
            op: c_ii,
            reference: gamma0_density(1.0 / 12.0, 7.0 / 15.0),
            target: gamma0_density(0.0, 0.8),
            normalization: norm,
        },
    }
}

/// `D_I = (2√2/3)(α - 1/4 - β/8)`; positive exactly on region I.
pub fn d_i_formula(alpha: f64, beta: f64) -> f64 {
    (2.0 * SQRT_2 / 3.0) * (alpha - 0.25 - beta / 8.0)
}

/// `D_II = (2√2/6)(-α - 1/2 + 5β/4)`; positive exactly on region II.
pub fn d_ii_formula(alpha: f64, beta: f64) -> f64 {
    (2.0 * SQRT_2 / 6.0) * (-alpha - 0.5 + 1.25 * beta)
}

/// Nearest point of the separable set for a region-I/II state at `γ = 0`.
pub fn nearest_point_formula(alpha: f64, beta: f64, region: Region) -> SimplexParams {
    match region {
        Region::I => SimplexParams::new(0.25 + beta / 8.0, beta, 0.0),
        Region::II => SimplexParams::new(
            (-2.0 + 20.0 * alpha + 5.0 * beta) / 24.0,
            (2.0 + 4.0 * alpha + beta) / 6.0,
            0.0,
        ),
    }
}

/// Nearest separable state of an NPT `γ = 0` state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gamma0Projection {
    pub nearest: SimplexParams,
    pub region: Region,
    pub d_i: f64,
    pub d_ii: f64,
    pub min_pt_eigenvalue: f64,
}

impl Gamma0Projection {
    pub fn distance(&self) -> f64 {
        match self.region {
            Region::I => self.d_i,
            Region::II => self.d_ii,
        }
    }
}

fn gamma0_checked(alpha: f64, beta: f64) -> Result<(DensityMatrix, f64)> {
    let state = simplex_state(SimplexParams::new(alpha, beta, 0.0));
    if !state.valid {
        return Err(Error::NotPositive(state.min_eigenvalue));
    }
    let rho = state.into_density()?;
    let min_pt = hermitian_spectrum(&partial_transpose(&rho, Subsystem::Second))?[0];
    Ok((rho, min_pt))
}

fn assign_region(d_i: f64, d_ii: f64) -> Option<Region> {
    match (d_i > 0.0, d_ii > 0.0) {
        (true, true) => Some(if d_i <= d_ii { Region::I } else { Region::II }),
        (true, false) => Some(Region::I),
        (false, true) => Some(Region::II),
        (false, false) => None,
    }
}

/// Region and nearest separable point of a valid NPT state on the `γ = 0` slice.
pub fn nearest_separable_gamma0(alpha: f64, beta: f64, tol: f64) -> Result<Gamma0Projection> {
    let (_, min_pt) = gamma0_checked(alpha, beta)?;
    if min_pt >= -tol {
        return Err(Error::AlreadyPpt(min_pt));
    }
    let d_i = d_i_formula(alpha, beta);
    let d_ii = d_ii_formula(alpha, beta);
    let region = assign_region(d_i, d_ii).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "NPT state ({alpha}, {beta}) lies in neither region (D_I = {d_i}, D_II = {d_ii})"
        ))
    })?;
    Ok(Gamma0Projection {
        nearest: nearest_point_formula(alpha, beta, region),
        region,
        d_i,
        d_ii,
        min_pt_eigenvalue: min_pt,
    })
}

/// Hilbert-Schmidt measure label on the `γ = 0` slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gamma0Label {
    /// PPT, and on this slice PPT states are separable.
    Separable,
    Entangled(Region),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gamma0Measure {
    pub value: f64,
    pub label: Gamma0Label,
    pub d_i: f64,
    pub d_ii: f64,
}

/// `D(ρ)` for `ρ(α, β, 0)`; zero with a separable label for PPT input.
pub fn hs_measure_gamma0(alpha: f64, beta: f64, tol: f64) -> Result<Gamma0Measure> {
    match nearest_separable_gamma0(alpha, beta, tol) {
        Ok(p) => Ok(Gamma0Measure {
            value: p.distance(),
            label: Gamma0Label::Entangled(p.region),
            d_i: p.d_i,
            d_ii: p.d_ii,
        }),
        Err(Error::AlreadyPpt(_)) => Ok(Gamma0Measure {
            value: 0.0,
            label: Gamma0Label::Separable,
            d_i: d_i_formula(alpha, beta),
            d_ii: d_ii_formula(alpha, beta),
        }),
        Err(e) => Err(e),
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !gamma.is_finite() || gamma.abs() > GAMMA_WINDOW + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "gamma = {gamma} outside the PPT anchor window |gamma| <= 3/7"
        )));
    }
    Ok(())
}

/// Weyl coefficients of the λ-line witness in the form
/// `a(2𝟙 + c₁U₁ + c₂U₂ᴵ + c₂*U₂ᴵᴵ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CbeCoefficients {
    pub a: f64,
    pub c1: Complex64,
    pub c2: Complex64,
}

/// Closed forms
/// `a = -(1+3γ²)λ(λ-1)/36`, `c₁ = -8/(7λ(1+3γ²))`,
/// `c₂ = 2(1 - 7√3γ i)/(7λ(1+3γ²))`.
pub fn cbe_coefficients(gamma: f64, lambda: f64) -> Result<CbeCoefficients> {
    check_gamma(gamma)?;
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda = {lambda} outside (0, 1]"
        )));
    }
    let g2 = 1.0 + 3.0 * gamma * gamma;
    let denom = 7.0 * lambda * g2;
    Ok(CbeCoefficients {
        a: -g2 / 36.0 * lambda * (lambda - 1.0),
        c1: Complex64::new(-8.0 / denom, 0.0),
        c2: Complex64::new(2.0, -14.0 * 3f64.sqrt() * gamma) / denom,
    })
}

impl CbeCoefficients {
    pub fn operator(&self) -> BipartiteOperator {
        let id = BipartiteOperator::identity(3, 3);
        let sum = (&id * 2.0)
            .add_scaled(self.c1.re, &u1())
            .expect("qutrit")
            .add_scaled(1.0, &(u2_i() * self.c2))
            .expect("qutrit")
            .add_scaled(1.0, &(u2_ii() * self.c2.conj()))
            .expect("qutrit");
        sum * self.a
    }
}

/// `f₁ = |c₁|`.
pub fn f1(gamma: f64, lambda: f64) -> f64 {
    8.0 / (7.0 * lambda * (1.0 + 3.0 * gamma * gamma))
}

/// `f₂ = |c₂|`.
pub fn f2(gamma: f64, lambda: f64) -> f64 {
    2.0 * (1.0 + 147.0 * gamma * gamma).sqrt() / (7.0 * lambda * (1.0 + 3.0 * gamma * gamma))
}

/// λ-line witness `C_{γ,λ}` anchored at the Horodecki state with `γ = (5-2b)/7`.
#[derive(Debug, Clone)]
pub struct LambdaLineWitness {
    pub gamma: f64,
    pub lambda: f64,
    pub anchor: HorodeckiParam,
    pub witness: GeometricWitness,
    pub coefficients: CbeCoefficients,
}

/// Builds `C_{γ,λ} = ρ_λ - ρ_b - ⟨ρ_λ, ρ_λ - ρ_b⟩𝟙` (unnormalized) for `0 < λ < 1`.
pub fn c_gamma_lambda(gamma: f64, lambda: f64) -> Result<LambdaLineWitness> {
    check_gamma(gamma)?;
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda = {lambda} outside (0, 1); the witness degenerates at both ends"
        )));
    }
    let anchor = HorodeckiParam::from_gamma(gamma)?;
    let rho = horodecki_state(anchor);
    let rho_lambda = line_state(&rho, lambda)?;
    let witness = geometric_witness(&rho_lambda, &rho, false)?;
    Ok(LambdaLineWitness {
        gamma,
        lambda,
        anchor,
        witness,
        coefficients: cbe_coefficients(gamma, lambda)?,
    })
}

/// λ thresholds of the witness family at fixed `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionProfile {
    pub gamma: f64,
    pub lambda_1: f64,
    pub lambda_2: f64,
    pub lambda_min: f64,
    pub detects: bool,
}

/// Closed-form roots of `f₁ = 1` and `f₂ = 1`.
pub fn detection_profile(gamma: f64) -> Result<DetectionProfile> {
    check_gamma(gamma)?;
    let g2 = 1.0 + 3.0 * gamma * gamma;
    let lambda_1 = 8.0 / (7.0 * g2);
    let lambda_2 = 2.0 * (1.0 + 147.0 * gamma * gamma).sqrt() / (7.0 * g2);
    let lambda_min = lambda_1.max(lambda_2);
    Ok(DetectionProfile {
        gamma,
        lambda_1,
        lambda_2,
        lambda_min,
        detects: lambda_min < 1.0,
    })
}

/// `λ_min(γ)` by bisection on `max{f₁, f₂} - 1`, independent of the closed form.
pub fn lambda_min_by_bisection(gamma: f64, tol: f64) -> Result<f64> {
    check_gamma(gamma)?;
    let g = |lambda: f64| f1(gamma, lambda).max(f2(gamma, lambda)) - 1.0;
    let (mut lo, mut hi) = (1e-3, 4.0);
    debug_assert!(g(lo) > 0.0 && g(hi) < 0.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Result of minimizing `λ_min(γ)` numerically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaMinimum {
    pub gamma: f64,
    pub lambda_min: f64,
}

/// Grid scan of the bisection `λ_min` over `[lo, hi]`, followed by golden-section
/// refinement around the best grid point.
pub fn minimize_lambda_min(lo: f64, hi: f64, steps: usize) -> Result<LambdaMinimum> {
    if steps < 2 || lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidParameter(
            "need lo < hi and steps >= 2".into(),
        ));
    }
    let eval = |g: f64| lambda_min_by_bisection(g, 1e-14);
    let h = (hi - lo) / (steps - 1) as f64;
    let mut best = (lo, eval(lo)?);
    let mut best_k = 0;
    for k in 1..steps {
        let g = lo + h * k as f64;
        let v = eval(g)?;
        if v < best.1 {
            best = (g, v);
            best_k = k;
        }
    }
    let mut a = lo + h * best_k.saturating_sub(1) as f64;
    let mut b = (lo + h * (best_k + 1) as f64).min(hi);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    while b - a > 1e-13 {
        let x1 = b - inv_phi * (b - a);
        let x2 = a + inv_phi * (b - a);
        if eval(x1)? <= eval(x2)? {
            b = x2;
        } else {
            a = x1;
        }
    }
    let g = 0.5 * (a + b);
    let v = eval(g)?;
    Ok(if v < best.1 {
        LambdaMinimum {
            gamma: g,
            lambda_min: v,
        }
    } else {
        LambdaMinimum {
            gamma: best.0,
            lambda_min: best.1,
        }
    })
}

/// Horodecki parameters whose state the λ-line witnesses detect as bound entangled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionRange {
    /// `[1, (15-√21)/6)`
    pub lower: (f64, f64),
    /// `((15+√21)/6, 4]`
    pub upper: (f64, f64),
}

impl DetectionRange {
    pub fn contains(&self, b: f64) -> bool {
        (b >= self.lower.0 && b < self.lower.1) || (b > self.upper.0 && b <= self.upper.1)
    }
}

pub fn horodecki_detection_range() -> DetectionRange {
    let r = 21f64.sqrt();
    DetectionRange {
        lower: (1.0, (15.0 - r) / 6.0),
        upper: ((15.0 + r) / 6.0, 4.0),
    }
}

/// Minimum PT eigenvalue, PT on the second factor.
pub(crate) fn min_pt_eigenvalue(rho: &BipartiteOperator) -> Result<f64> {
    Ok(hermitian_spectrum(&partial_transpose(rho, Subsystem::Second))?[0])
}

/// True when `ρ(α, β, γ)` is a valid state whose PT is PSD.
pub fn is_ppt_point(p: SimplexParams, tol: f64) -> bool {
    let s = simplex_state(p);
    s.valid && min_pt_eigenvalue(&s.operator).is_ok_and(|v| v >= -tol)
}

/// Default tolerance re-exported for callers that only deal in witnesses.
pub const DEFAULT_TOL: f64 = PSD_TOL;
