//! Dense operators on a bipartite Hilbert space `C^{d1} ⊗ C^{d2}`.
//!
//! Basis vector `|i⟩⊗|j⟩` sits at row `i·d2 + j`. All geometry is taken with
//! respect to the Hilbert-Schmidt inner product `⟨A, B⟩ = Tr A†B`.

use std::fmt;
use std::ops::{Add, Deref, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Single-system operator.
pub type Matrix = DMatrix<Complex64>;

/// Entrywise tolerance for Hermiticity of density matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on `Tr ρ = 1`.
pub const TRACE_TOL: f64 = 1e-12;
/// Default PSD gate: minimum eigenvalue must be `≥ -PSD_TOL`.
pub const PSD_TOL: f64 = 1e-10;
/// Hermiticity gate used before eigen-decomposition of arbitrary operators.
pub const SPECTRUM_HERMITIAN_TOL: f64 = 1e-10;

/// Which tensor factor a partial operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    First,
    Second,
}

/// Dense complex matrix on `C^{dim_a} ⊗ C^{dim_b}`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorJson", into = "OperatorJson")]
pub struct BipartiteOperator {
    dim_a: usize,
    dim_b: usize,
    entries: Matrix,
}

impl BipartiteOperator {
    pub fn new(dim_a: usize, dim_b: usize, entries: Matrix) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidParameter(
                "subsystem dimensions must be positive".into(),
            ));
        }
        let total = dim_a * dim_b;
        if entries.nrows() != total || entries.ncols() != total {
            return Err(Error::DimensionMismatch(format!(
                "expected {total}x{total} entries for {dim_a}x{dim_b} system, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self {
            dim_a,
            dim_b,
            entries,
        })
    }

    pub fn zeros(dim_a: usize, dim_b: usize) -> Self {
        let n = dim_a * dim_b;
        Self {
            dim_a,
            dim_b,
            entries: Matrix::zeros(n, n),
        }
    }

    pub fn identity(dim_a: usize, dim_b: usize) -> Self {
        let n = dim_a * dim_b;
        Self {
            dim_a,
            dim_b,
            entries: Matrix::identity(n, n),
        }
    }

    /// `𝟙/D`, the maximally mixed state.
    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Self {
        let n = (dim_a * dim_b) as f64;
        Self::identity(dim_a, dim_b) * (1.0 / n)
    }

    /// Rank-one operator `|v⟩⟨v|`.
    pub fn projector(dim_a: usize, dim_b: usize, v: &[Complex64]) -> Result<Self> {
        let n = dim_a * dim_b;
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} on a {n}-dimensional space",
                v.len()
            )));
        }
        let entries = Matrix::from_fn(n, n, |r, c| v[r] * v[c].conj());
        Self::new(dim_a, dim_b, entries)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total dimension `D = d1·d2`.
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_entries(self) -> Matrix {
        self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            entries: self.entries.adjoint(),
        }
    }

    /// Largest entrywise deviation `|A_ij - conj(A_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for r in 0..n {
            for c in r..n {
                let dev = (self.entries[(r, c)] - self.entries[(c, r)].conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            entries: (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0),
        }
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.dim_a == other.dim_a && self.dim_b == other.dim_b
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.dim_a, self.dim_b, other.dim_a, other.dim_b
            )))
        }
    }

    /// `Tr(ρ A)` for a density matrix; the real part of `⟨ρ, A⟩`.
    pub fn expectation(&self, rho: &BipartiteOperator) -> Result<f64> {
        Ok(hs_inner(rho, self)?.re)
    }

    /// `self + t·other`, shape-checked.
    pub fn add_scaled(&self, t: f64, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            entries: &self.entries + &other.entries * Complex64::new(t, 0.0),
        })
    }

    /// `self - other`, shape-checked.
    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(-1.0, other)
    }

    /// Ordinary matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            entries: &self.entries * &other.entries,
        })
    }
}

impl fmt::Debug for BipartiteOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteOperator")
            .field("dim_a", &self.dim_a)
            .field("dim_b", &self.dim_b)
            .finish_non_exhaustive()
    }
}

// Arithmetic panics on shape mismatch; use `add_scaled`/`try_sub` for checked
// variants.
impl Add for &BipartiteOperator {
    type Output = BipartiteOperator;

    fn add(self, rhs: Self) -> BipartiteOperator {
        self.add_scaled(1.0, rhs).expect("operator shapes differ")
    }
}

impl Sub for &BipartiteOperator {
    type Output = BipartiteOperator;

    fn sub(self, rhs: Self) -> BipartiteOperator {
        self.add_scaled(-1.0, rhs).expect("operator shapes differ")
    }
}

impl Mul<f64> for BipartiteOperator {
    type Output = BipartiteOperator;

    fn mul(mut self, rhs: f64) -> BipartiteOperator {
        self.entries *= Complex64::new(rhs, 0.0);
        self
    }
}

impl Mul<Complex64> for BipartiteOperator {
    type Output = BipartiteOperator;

    fn mul(mut self, rhs: Complex64) -> BipartiteOperator {
        self.entries *= rhs;
        self
    }
}

impl Mul<f64> for &BipartiteOperator {
    type Output = BipartiteOperator;

    fn mul(self, rhs: f64) -> BipartiteOperator {
        self.clone() * rhs
    }
}

/// Wire format shared by the library and the command-line tool.
#[derive(Serialize, Deserialize)]
struct OperatorJson {
    dim_a: usize,
    dim_b: usize,
    /// Row-major `[re, im]` pairs.
    entries: Vec<[f64; 2]>,
}

impl TryFrom<OperatorJson> for BipartiteOperator {
    type Error = Error;

    fn try_from(raw: OperatorJson) -> Result<Self> {
        let n = raw.dim_a * raw.dim_b;
        if raw.entries.len() != n * n {
            return Err(Error::Format(format!(
                "expected {} entries for a {}x{} system, found {}",
                n * n,
                raw.dim_a,
                raw.dim_b,
                raw.entries.len()
            )));
        }
        if raw.entries.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Format("non-finite matrix entry".into()));
        }
        let entries = Matrix::from_row_iterator(
            n,
            n,
            raw.entries.iter().map(|[re, im]| Complex64::new(*re, *im)),
        );
        BipartiteOperator::new(raw.dim_a, raw.dim_b, entries)
    }
}

impl From<BipartiteOperator> for OperatorJson {
    fn from(op: BipartiteOperator) -> Self {
        let n = op.dim();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let z = op.entries[(r, c)];
                entries.push([z.re, z.im]);
            }
        }
        OperatorJson {
            dim_a: op.dim_a,
            dim_b: op.dim_b,
            entries,
        }
    }
}

impl BipartiteOperator {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("operator serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// A Hermitian, unit-trace, positive-semidefinite operator.
#[derive(Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityMatrix {
    op: BipartiteOperator,
}

impl DensityMatrix {
    /// Validates with the default tolerances (Hermitian and unit trace to
    /// 1e-12, minimum eigenvalue ≥ -1e-10).
    pub fn new(op: BipartiteOperator) -> Result<Self> {
        Self::with_tolerance(op, PSD_TOL)
    }

    pub fn with_tolerance(op: BipartiteOperator, psd_tol: f64) -> Result<Self> {
        let dev = op.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = op.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min = min_eigenvalue(&op.entries);
        if min < -psd_tol {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { op })
    }

    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Self {
        Self {
            op: BipartiteOperator::maximally_mixed(dim_a, dim_b),
        }
    }

    /// Pure state `|ψ⟩⟨ψ|`; `psi` is normalized first.
    pub fn pure(dim_a: usize, dim_b: usize, psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter("zero state vector".into()));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(BipartiteOperator::projector(dim_a, dim_b, &v)?)
    }

    pub fn as_operator(&self) -> &BipartiteOperator {
        &self.op
    }

    pub fn into_operator(self) -> BipartiteOperator {
        self.op
    }
}

impl Deref for DensityMatrix {
    type Target = BipartiteOperator;

    fn deref(&self) -> &BipartiteOperator {
        &self.op
    }
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityMatrix")
            .field("dim_a", &self.op.dim_a)
            .field("dim_b", &self.op.dim_b)
            .finish_non_exhaustive()
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let op = BipartiteOperator::deserialize(de)?;
        DensityMatrix::new(op).map_err(serde::de::Error::custom)
    }
}

/// `⟨a, b⟩ = Tr a†b`.
pub fn hs_inner(a: &BipartiteOperator, b: &BipartiteOperator) -> Result<Complex64> {
    a.check_shape(b)?;
    Ok(a.entries
        .iter()
        .zip(b.entries.iter())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Hilbert-Schmidt (Frobenius) norm.
pub fn hs_norm(a: &BipartiteOperator) -> f64 {
    a.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖a - b‖`.
pub fn hs_distance(a: &BipartiteOperator, b: &BipartiteOperator) -> Result<f64> {
    Ok(hs_norm(&a.try_sub(b)?))
}

/// Kronecker product of two single-system operators.
pub fn tensor(a: &Matrix, b: &Matrix) -> Result<BipartiteOperator> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::DimensionMismatch(
            "tensor factors must be square".into(),
        ));
    }
    BipartiteOperator::new(a.nrows(), b.nrows(), a.kronecker(b))
}

/// Transposition of one tensor factor.
///
/// With `|i j⟩⟨k l|` as the matrix unit, the second-factor transpose maps it to
/// `|i l⟩⟨k j|` and the first-factor transpose to `|k j⟩⟨i l|`.
pub fn partial_transpose(rho: &BipartiteOperator, subsystem: Subsystem) -> BipartiteOperator {
    let (da, db) = (rho.dim_a, rho.dim_b);
    let n = rho.dim();
    let src = &rho.entries;
    let entries = Matrix::from_fn(n, n, |r, c| {
        let (i, j) = (r / db, r % db);
        let (k, l) = (c / db, c % db);
        match subsystem {
            Subsystem::Second => src[(i * db + l, k * db + j)],
            Subsystem::First => src[(k * db + j, i * db + l)],
        }
    });
    debug_assert_eq!(entries.nrows(), da * db);
    BipartiteOperator {
        dim_a: da,
        dim_b: db,
        entries,
    }
}

fn sorted_eigenvalues(m: &Matrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn min_eigenvalue(m: &Matrix) -> f64 {
    sorted_eigenvalues(m)[0]
}

/// Eigenvalues of a Hermitian operator in ascending order.
pub fn hermitian_spectrum(h: &BipartiteOperator) -> Result<Vec<f64>> {
    let dev = h.hermitian_deviation();
    if dev > SPECTRUM_HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(sorted_eigenvalues(&h.entries))
}

/// Outcome of a PSD test; the minimum eigenvalue is always reported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdCheck {
    pub positive: bool,
    pub min_eigenvalue: f64,
}

pub fn is_positive_semidefinite(h: &BipartiteOperator, tol: f64) -> Result<PsdCheck> {
    let min_eigenvalue = hermitian_spectrum(h)?[0];
    Ok(PsdCheck {
        positive: min_eigenvalue >= -tol,
        min_eigenvalue,
    })
}

/// Spectral decomposition `h = V diag(λ) V†` with ascending eigenvalues.
pub(crate) fn hermitian_eigh(h: &Matrix) -> (Vec<f64>, Matrix) {
    let eig = h.clone().symmetric_eigen();
    let n = h.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Row index of `|i⟩⊗|j⟩`.
pub fn basis_index(i: usize, j: usize, dim_b: usize) -> usize {
    i * dim_b + j
}

/// Reduced operator on one factor.
pub fn partial_trace(rho: &BipartiteOperator, keep: Subsystem) -> Matrix {
    let (da, db) = (rho.dim_a, rho.dim_b);
    match keep {
        Subsystem::First => Matrix::from_fn(da, da, |i, k| {
            (0..db).map(|j| rho.entries[(i * db + j, k * db + j)]).sum()
        }),
        Subsystem::Second => Matrix::from_fn(db, db, |j, l| {
            (0..da).map(|i| rho.entries[(i * db + j, i * db + l)]).sum()
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{bell_projector, weyl, WeylIndex};
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn p00() -> BipartiteOperator {
        bell_projector(3, WeylIndex::new(3, 0, 0)).into_operator()
    }

    #[test]
    fn inner_product_examples() {
        let id = BipartiteOperator::identity(3, 3);
        assert_abs_diff_eq!(hs_inner(&id, &id).unwrap().re, 9.0, epsilon = 1e-14);
        assert_abs_diff_eq!(hs_inner(&p00(), &p00()).unwrap().re, 1.0, epsilon = 1e-14);

        let u01 = weyl(3, WeylIndex::new(3, 0, 1));
        let u02 = weyl(3, WeylIndex::new(3, 0, 2));
        let a = tensor(&u01, &u01).unwrap();
        let b = tensor(&u02, &u02).unwrap();
        assert!(hs_inner(&a, &b).unwrap().norm() < 1e-14);
    }

    #[test]
    fn inner_product_rejects_mismatched_shapes() {
        let a = BipartiteOperator::identity(3, 3);
        let b = BipartiteOperator::identity(2, 3);
        assert!(matches!(hs_inner(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(hs_norm(&BipartiteOperator::zeros(3, 3)), 0.0);
        let mixed = BipartiteOperator::maximally_mixed(3, 3);
        assert_abs_diff_eq!(hs_norm(&mixed), 1.0 / 3.0, epsilon = 1e-15);
        let diff = &p00() - &mixed;
        assert_abs_diff_eq!(hs_norm(&diff), 8.0_f64.sqrt() / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn tensor_examples() {
        let id3 = Matrix::identity(3, 3);
        assert_eq!(
            tensor(&id3, &id3).unwrap(),
            BipartiteOperator::identity(3, 3)
        );

        let mut a = Matrix::zeros(3, 3);
        a[(0, 0)] = c(1.0);
        let mut b = Matrix::zeros(3, 3);
        b[(1, 1)] = c(1.0);
        let t = tensor(&a, &b).unwrap();
        let idx = basis_index(0, 1, 3);
        for r in 0..9 {
            for col in 0..9 {
                let expect = if r == idx && col == idx { 1.0 } else { 0.0 };
                assert_eq!(t.entries()[(r, col)], c(expect));
            }
        }

        let u10 = weyl(3, WeylIndex::new(3, 1, 0));
        let um10 = weyl(3, WeylIndex::new(3, -1, 0));
        assert!(tensor(&u10, &um10).unwrap().trace().norm() < 1e-14);
    }

    #[test]
    fn partial_transpose_of_product_transposes_second_factor() {
        let s1 = Matrix::from_fn(3, 3, |r, k| {
            Complex64::new((r + 2 * k) as f64, (r as f64) - (k as f64))
        });
        let s2 = Matrix::from_fn(3, 3, |r, k| {
            Complex64::new((3 * r + k) as f64, 0.5 * (k as f64))
        });
        let prod = tensor(&s1, &s2).unwrap();
        let expected = tensor(&s1, &s2.transpose()).unwrap();
        assert_eq!(partial_transpose(&prod, Subsystem::Second), expected);
        let expected_first = tensor(&s1.transpose(), &s2).unwrap();
        assert_eq!(partial_transpose(&prod, Subsystem::First), expected_first);
    }

    #[test]
    fn partial_transpose_of_bell_projector() {
        let mixed = BipartiteOperator::maximally_mixed(3, 3);
        assert_eq!(partial_transpose(&mixed, Subsystem::First), mixed);

        let pt = partial_transpose(&p00(), Subsystem::Second);
        let spec = hermitian_spectrum(&pt).unwrap();
        for v in &spec[..3] {
            assert_abs_diff_eq!(*v, -1.0 / 3.0, epsilon = 1e-12);
        }
        for v in &spec[3..] {
            assert_abs_diff_eq!(*v, 1.0 / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn spectrum_examples() {
        let id = BipartiteOperator::identity(3, 3);
        assert!(hermitian_spectrum(&id)
            .unwrap()
            .iter()
            .all(|v| (v - 1.0).abs() < 1e-14));
        let spec = hermitian_spectrum(&p00()).unwrap();
        assert_abs_diff_eq!(spec[8], 1.0, epsilon = 1e-12);
        assert!(spec[..8].iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn spectrum_rejects_non_hermitian() {
        let mut m = Matrix::zeros(9, 9);
        m[(0, 1)] = c(1.0);
        let op = BipartiteOperator::new(3, 3, m).unwrap();
        assert!(matches!(
            hermitian_spectrum(&op),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn psd_gate() {
        let mixed = BipartiteOperator::maximally_mixed(3, 3);
        let check = is_positive_semidefinite(&mixed, PSD_TOL).unwrap();
        assert!(check.positive);
        assert_abs_diff_eq!(check.min_eigenvalue, 1.0 / 9.0, epsilon = 1e-14);

        let shifted = p00()
            .add_scaled(-0.1, &BipartiteOperator::identity(3, 3))
            .unwrap();
        let check = is_positive_semidefinite(&shifted, PSD_TOL).unwrap();
        assert!(!check.positive);
        assert_abs_diff_eq!(check.min_eigenvalue, -0.1, epsilon = 1e-12);
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(BipartiteOperator::identity(3, 3)).is_err());
        // 1.5·P00 - 0.5·𝟙/9 has unit trace and eigenvalue -1/18.
        let overshoot = (p00() * 1.5)
            .add_scaled(-0.5, &BipartiteOperator::maximally_mixed(3, 3))
            .unwrap();
        assert!(matches!(
            DensityMatrix::new(overshoot),
            Err(Error::NotPositive(_))
        ));
        assert!(DensityMatrix::new(p00()).is_ok());
    }

    #[test]
    fn json_format_is_row_major_pairs() {
        let mut m = Matrix::zeros(4, 4);
        m[(0, 1)] = Complex64::new(1.5, -2.0);
        let op = BipartiteOperator::new(2, 2, m).unwrap();
        let v: serde_json::Value = serde_json::from_str(&op.to_json()).unwrap();
        assert_eq!(v["dim_a"], 2);
        assert_eq!(v["dim_b"], 2);
        assert_eq!(v["entries"][1], serde_json::json!([1.5, -2.0]));
        assert_eq!(v["entries"].as_array().unwrap().len(), 16);
        assert_eq!(BipartiteOperator::from_json(&op.to_json()).unwrap(), op);
    }

    #[test]
    fn json_rejects_wrong_entry_count() {
        let bad = r#"{"dim_a":3,"dim_b":3,"entries":[[1.0,0.0]]}"#;
        assert!(BipartiteOperator::from_json(bad).is_err());
    }

    #[test]
    fn partial_trace_of_product() {
        let mut a = Matrix::zeros(3, 3);
        a[(2, 2)] = c(1.0);
        let b = Matrix::identity(3, 3) * c(1.0 / 3.0);
        let t = tensor(&a, &b).unwrap();
        assert_eq!(partial_trace(&t, Subsystem::First), a);
        assert!((partial_trace(&t, Subsystem::Second) - b).norm() < 1e-15);
    }

    proptest::proptest! {
        #[test]
        fn json_round_trip_is_bit_exact(
            vals in proptest::collection::vec(-1e3f64..1e3, 2 * 16),
        ) {
            let entries = Matrix::from_fn(4, 4, |r, c| {
                let k = 2 * (r * 4 + c);
                Complex64::new(vals[k], vals[k + 1])
            });
            let op = BipartiteOperator::new(2, 2, entries).unwrap();
            proptest::prop_assert_eq!(BipartiteOperator::from_json(&op.to_json()).unwrap(), op);
        }
    }
}
