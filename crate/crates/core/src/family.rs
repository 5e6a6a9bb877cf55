//! Two-qutrit state families inside the magic simplex.
//!
//! The three-parameter family is
//!
//! ```text
//! ρ(α,β,γ) = (1-α-β-γ)/9 𝟙 + α P00 + β/2 (P10 + P20) + γ/3 (P01 + P11 + P21)
//! ```
//!
//! and is Bell-diagonal, so its spectrum is available in closed form. The
//! Horodecki states `ρ_b` are the one-parameter line
//! `α = (6-b)/21, β = -2b/21, γ = (5-2b)/7` through it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{
    basis_index, hermitian_spectrum, hs_distance, BipartiteOperator, DensityMatrix, Matrix, PSD_TOL,
};
use crate::weyl::{bell_projector, max_entangled, WeylIndex};

/// Coordinates `(α, β, γ)` of the three-parameter family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl SimplexParams {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    /// `(1-α-β-γ)/9`, the weight every Bell projector receives from the identity term.
    pub fn base_weight(&self) -> f64 {
        (1.0 - self.alpha - self.beta - self.gamma) / 9.0
    }

    /// Smallest closed-form eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        simplex_spectrum(*self)
            .iter()
            .map(|(v, _)| *v)
            .fold(f64::INFINITY, f64::min)
    }

    /// True when all four eigenvalue families are `≥ -tol`.
    pub fn is_valid(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    /// Euclidean combination `λ·self` (the λ-line toward the origin, which is `𝟙/9`).
    pub fn scaled(&self, lambda: f64) -> Self {
        Self::new(lambda * self.alpha, lambda * self.beta, lambda * self.gamma)
    }
}

/// Parameter `b ∈ [0, 5]` of the Horodecki family.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct HorodeckiParam(f64);

impl HorodeckiParam {
    pub fn new(b: f64) -> Result<Self> {
        if !(0.0..=5.0).contains(&b) {
            return Err(Error::InvalidParameter(format!(
                "Horodecki parameter b = {b} outside [0, 5]"
            )));
        }
        Ok(Self(b))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `γ = (5-2b)/7`.
    pub fn gamma(self) -> f64 {
        (5.0 - 2.0 * self.0) / 7.0
    }

    /// Inverse of [`gamma`](Self::gamma): `b = (5-7γ)/2`.
    pub fn from_gamma(gamma: f64) -> Result<Self> {
        Self::new((5.0 - 7.0 * gamma) / 2.0)
    }
}

impl TryFrom<f64> for HorodeckiParam {
    type Error = Error;

    fn try_from(b: f64) -> Result<Self> {
        Self::new(b)
    }
}

impl From<HorodeckiParam> for f64 {
    fn from(b: HorodeckiParam) -> f64 {
        b.0
    }
}

/// A member of the family together with its positivity status.
///
/// Construction never fails; parameters outside the positivity region are
/// reported through `valid` rather than rejected.
#[derive(Debug, Clone)]
pub struct SimplexState {
    pub params: SimplexParams,
    pub operator: BipartiteOperator,
    pub min_eigenvalue: f64,
    pub valid: bool,
}

impl SimplexState {
    pub fn density(&self) -> Result<DensityMatrix> {
        if !self.valid {
            return Err(Error::NotPositive(self.min_eigenvalue));
        }
        DensityMatrix::new(self.operator.clone())
    }

    pub fn into_density(self) -> Result<DensityMatrix> {
        if !self.valid {
            return Err(Error::NotPositive(self.min_eigenvalue));
        }
        DensityMatrix::new(self.operator)
    }
}

pub fn simplex_state(p: SimplexParams) -> SimplexState {
    let base = p.base_weight();
    let mut op = BipartiteOperator::identity(3, 3) * base;
    let terms = [
        ((0, 0), p.alpha),
        ((1, 0), p.beta / 2.0),
        ((2, 0), p.beta / 2.0),
        ((0, 1), p.gamma / 3.0),
        ((1, 1), p.gamma / 3.0),
        ((2, 1), p.gamma / 3.0),
    ];
    for ((n, m), w) in terms {
        let proj = bell_projector(3, WeylIndex::new(3, n, m));
        op = op.add_scaled(w, &proj).expect("qutrit shapes");
    }
    // Zero the O(1e-17) anti-Hermitian residue of the phase arithmetic.
    let operator = op.hermitian_part();
    let min_eigenvalue = hermitian_spectrum(&operator).expect("Hermitian by construction")[0];
    SimplexState {
        params: p,
        operator,
        min_eigenvalue,
        valid: min_eigenvalue >= -PSD_TOL,
    }
}

/// Closed-form eigenvalues with multiplicities: one per Bell projector weight.
pub fn simplex_spectrum(p: SimplexParams) -> Vec<(f64, usize)> {
    let base = p.base_weight();
    vec![
        (base + p.alpha, 1),
        (base + p.beta / 2.0, 2),
        (base + p.gamma / 3.0, 3),
        (base, 3),
    ]
}

/// Flattened closed-form spectrum, ascending.
pub fn simplex_eigenvalues(p: SimplexParams) -> Vec<f64> {
    let mut out: Vec<f64> = simplex_spectrum(p)
        .into_iter()
        .flat_map(|(v, k)| std::iter::repeat_n(v, k))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

fn diagonal_projector(kets: &[(usize, usize)]) -> BipartiteOperator {
    let mut m = Matrix::zeros(9, 9);
    for &(i, j) in kets {
        let r = basis_index(i, j, 3);
        m[(r, r)] = Complex64::new(1.0 / kets.len() as f64, 0.0);
    }
    BipartiteOperator::new(3, 3, m).expect("9x9")
}

/// `σ₊ = ⅓(|10⟩⟨10| + |21⟩⟨21| + |02⟩⟨02|)`.
///
/// This is the labeling under which `ρ_b` sits on the simplex line
/// `γ = (5-2b)/7` for the Weyl convention `U_nm = Σ ω^{kn}|k⟩⟨k+m|`.
/// The other labeling (`|01⟩, |12⟩, |20⟩`) gives the subsystem-swapped
/// family, `ρ_b ↦ ρ_{5-b}`, with identical PT spectra and separability.
pub fn sigma_plus() -> BipartiteOperator {
    diagonal_projector(&[(1, 0), (2, 1), (0, 2)])
}

/// `σ₋ = ⅓(|01⟩⟨01| + |12⟩⟨12| + |20⟩⟨20|)`; see [`sigma_plus`].
pub fn sigma_minus() -> BipartiteOperator {
    diagonal_projector(&[(0, 1), (1, 2), (2, 0)])
}

/// `ρ_b = 2/7 |φ⁺⟩⟨φ⁺| + b/7 σ₊ + (5-b)/7 σ₋`.
pub fn horodecki_state(b: HorodeckiParam) -> DensityMatrix {
    let b = b.value();
    let phi = BipartiteOperator::projector(3, 3, &max_entangled(3)).expect("9-vector");
    let op = (phi * (2.0 / 7.0))
        .add_scaled(b / 7.0, &sigma_plus())
        .and_then(|o| o.add_scaled((5.0 - b) / 7.0, &sigma_minus()))
        .expect("qutrit shapes");
    DensityMatrix::new(op).expect("valid for b in [0, 5]")
}

/// `(α, β, γ) = ((6-b)/21, -2b/21, (5-2b)/7)`.
pub fn horodecki_to_simplex(b: HorodeckiParam) -> SimplexParams {
    let b = b.value();
    SimplexParams::new((6.0 - b) / 21.0, -2.0 * b / 21.0, (5.0 - 2.0 * b) / 7.0)
}

/// `ρ_λ = λρ + (1-λ)𝟙/D` for `λ ∈ [0, 1]`.
pub fn line_state(rho: &DensityMatrix, lambda: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "lambda = {lambda} outside [0, 1]"
        )));
    }
    let mixed = BipartiteOperator::maximally_mixed(rho.dim_a(), rho.dim_b());
    let op = (rho.as_operator() * lambda).add_scaled(1.0 - lambda, &mixed)?;
    DensityMatrix::new(op)
}

/// `(α, β) = ((1+γ)/6, (-5+7γ)/21)`, the Horodecki point of the slice at `γ`.
///
/// No window check; see [`gamma_slice_point`] for the validated variant.
pub fn slice_point_for_gamma(gamma: f64) -> (f64, f64) {
    ((1.0 + gamma) / 6.0, (-5.0 + 7.0 * gamma) / 21.0)
}

/// Slice coordinates of a bound-entangled Horodecki state.
///
/// The window `-3/7 ≤ γ < -1/7` is tested on `b` directly (`3 < b ≤ 4`),
/// which is exact in floating point.
pub fn gamma_slice_point(b: HorodeckiParam) -> Result<(f64, f64)> {
    let bv = b.value();
    if !(bv > 3.0 && bv <= 4.0) {
        return Err(Error::InvalidParameter(format!(
            "b = {bv} (gamma = {:.6}) outside the bound-entangled window \
             -3/7 <= gamma < -1/7 (3 < b <= 4)",
            b.gamma()
        )));
    }
    Ok(slice_point_for_gamma(b.gamma()))
}

/// Closest family coordinates to `op`, read off its Bell-projector weights,
/// together with the Hilbert-Schmidt distance from `op` to `ρ(α, β, γ)`.
pub fn simplex_params_of(op: &BipartiteOperator) -> Result<(SimplexParams, f64)> {
    if op.dim_a() != 3 || op.dim_b() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "expected a 3x3 bipartite operator, got {}x{}",
            op.dim_a(),
            op.dim_b()
        )));
    }
    let w = |n: usize, m: usize| {
        bell_projector(3, WeylIndex::new(3, n as i64, m as i64))
            .expectation(op)
            .expect("qutrit shapes")
    };
    let base = (w(0, 2) + w(1, 2) + w(2, 2)) / 3.0;
    let params = SimplexParams::new(
        w(0, 0) - base,
        w(1, 0) + w(2, 0) - 2.0 * base,
        w(0, 1) + w(1, 1) + w(2, 1) - 3.0 * base,
    );
    let residual = hs_distance(op, &simplex_state(params).operator)?;
    Ok((params, residual))
}
