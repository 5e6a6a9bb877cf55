//! PPT classification, nearest-PPT projection and a separable-state sampler.
//!
//! The sampler gives one-sided evidence about witness candidates: a negative
//! expectation on a sampled separable state refutes witness-hood, a
//! nonnegative minimum only supports it.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{
    hermitian_eigh, hermitian_spectrum, hs_norm, partial_transpose, BipartiteOperator,
    DensityMatrix, Matrix, Subsystem, PSD_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PptLabel {
    #[serde(rename = "PPT")]
    Ppt,
    #[serde(rename = "NPT")]
    Npt,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PptVerdict {
    pub label: PptLabel,
    pub min_pt_eigenvalue: f64,
    pub tolerance: f64,
}

impl PptVerdict {
    pub fn is_ppt(&self) -> bool {
        self.label == PptLabel::Ppt
    }
}

/// PT is always taken on the second factor.
pub fn classify_ppt(rho: &BipartiteOperator, tol: f64) -> Result<PptVerdict> {
    let min_pt_eigenvalue = hermitian_spectrum(&partial_transpose(rho, Subsystem::Second))?[0];
    let label = if min_pt_eigenvalue < -tol {
        PptLabel::Npt
    } else {
        PptLabel::Ppt
    };
    Ok(PptVerdict {
        label,
        min_pt_eigenvalue,
        tolerance: tol,
    })
}

/// Euclidean projection of `v` onto the probability simplex.
fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut css = 0.0;
    let mut theta = 0.0;
    for (k, &x) in u.iter().enumerate() {
        css += x;
        let t = (css - 1.0) / (k + 1) as f64;
        if x - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|x| (x - theta).max(0.0)).collect()
}

/// Nearest unit-trace PSD operator to the Hermitian part of `x`.
pub fn project_density(x: &BipartiteOperator) -> BipartiteOperator {
    let h = x.hermitian_part();
    let (values, vectors) = hermitian_eigh(h.entries());
    let clipped = project_simplex(&values);
    let diag = DVector::from_iterator(
        clipped.len(),
        clipped.iter().map(|&v| Complex64::new(v, 0.0)),
    );
    let entries: Matrix = &vectors * Matrix::from_diagonal(&diag) * vectors.adjoint();
    BipartiteOperator::new(x.dim_a(), x.dim_b(), entries)
        .expect("shape preserved")
        .hermitian_part()
}

/// Nearest operator whose partial transpose is a unit-trace PSD operator.
///
/// Partial transposition is an isometric involution, so this is
/// `PT ∘ project_density ∘ PT`.
pub fn project_ppt(x: &BipartiteOperator) -> BipartiteOperator {
    partial_transpose(
        &project_density(&partial_transpose(x, Subsystem::Second)),
        Subsystem::Second,
    )
}

#[derive(Debug, Clone)]
pub struct NearestPpt {
    pub state: DensityMatrix,
    pub iterations: usize,
    pub residual: f64,
    pub distance: f64,
}

/// Metric projection onto the PPT states by Dykstra's alternating projections.
///
/// The two convex sets are the unit-trace PSD operators and the operators with
/// unit-trace PSD partial transpose. Stops once successive iterates and the two
/// half-step iterates all agree to `tol` in Hilbert-Schmidt norm.
pub fn nearest_ppt(rho: &DensityMatrix, tol: f64, max_iter: usize) -> Result<NearestPpt> {
    if classify_ppt(rho, tol)?.is_ppt() {
        return Ok(NearestPpt {
            state: rho.clone(),
            iterations: 0,
            residual: 0.0,
            distance: 0.0,
        });
    }
    let target = rho.as_operator();
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let mut x = target.clone();
    let mut p = BipartiteOperator::zeros(da, db);
    let mut q = BipartiteOperator::zeros(da, db);
    let mut residual = f64::INFINITY;
    for iter in 1..=max_iter {
        let xp = &x + &p;
        let y = project_density(&xp);
        p = &xp - &y;
        let yq = &y + &q;
        let next = project_ppt(&yq);
        q = &yq - &next;
        residual = hs_norm(&(&next - &x)).max(hs_norm(&(&next - &y)));
        x = next;
        if residual < tol {
            let distance = hs_norm(&(&x - target));
            let state = DensityMatrix::with_tolerance(x, tol.max(PSD_TOL))?;
            return Ok(NearestPpt {
                state,
                iterations: iter,
                residual,
                distance,
            });
        }
    }
    Err(Error::NotConverged {
        iterations: max_iter,
        residual,
        last: Box::new(x),
    })
}

/// Sampler settings; a fixed seed yields a fixed, prefix-stable stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub count: usize,
    /// Number of pure product terms mixed into each sample.
    pub mixing_degree: usize,
}

impl SamplerConfig {
    pub fn new(seed: u64, count: usize, mixing_degree: usize) -> Result<Self> {
        if count == 0 || mixing_degree == 0 {
            return Err(Error::InvalidParameter(
                "sample count and mixing degree must be at least 1".into(),
            ));
        }
        Ok(Self {
            seed,
            count,
            mixing_degree,
        })
    }
}

/// `Σ_k p_k |a_k⟩⟨a_k| ⊗ |b_k⟩⟨b_k|`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSample {
    pub weights: Vec<f64>,
    pub factors: Vec<(Vec<Complex64>, Vec<Complex64>)>,
}

impl ProductSample {
    pub fn density(&self) -> DensityMatrix {
        let (da, db) = (self.factors[0].0.len(), self.factors[0].1.len());
        let mut op = BipartiteOperator::zeros(da, db);
        for (w, (a, b)) in self.weights.iter().zip(&self.factors) {
            let v = kron(a, b);
            let proj = BipartiteOperator::projector(da, db, &v).expect("matching lengths");
            op = op.add_scaled(*w, &proj).expect("matching shapes");
        }
        DensityMatrix::new(op.hermitian_part()).expect("convex mixture of pure states")
    }
}

fn kron(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

fn haar_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

/// Stream of random separable states on `C^{d_a} ⊗ C^{d_b}`.
///
/// Sample `i` draws from its own ChaCha stream, so any index block can be
/// regenerated independently.
#[derive(Debug, Clone)]
pub struct ProductSampler {
    dims: (usize, usize),
    config: SamplerConfig,
    next: usize,
}

impl ProductSampler {
    pub fn new(dim_a: usize, dim_b: usize, config: SamplerConfig) -> Self {
        Self {
            dims: (dim_a, dim_b),
            config,
            next: 0,
        }
    }

    pub fn sample(&self, index: usize) -> ProductSample {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(index as u64);
        let k = self.config.mixing_degree;
        let weights = if k == 1 {
            vec![1.0]
        } else {
            // flat Dirichlet via normalized exponentials
            let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
            let total: f64 = raw.iter().sum();
            raw.iter().map(|x| x / total).collect()
        };
        let factors = (0..k)
            .map(|_| {
                (
                    haar_vector(&mut rng, self.dims.0),
                    haar_vector(&mut rng, self.dims.1),
                )
            })
            .collect();
        ProductSample { weights, factors }
    }
}

impl Iterator for ProductSampler {
    type Item = ProductSample;

    fn next(&mut self) -> Option<ProductSample> {
        if self.next >= self.config.count {
            return None;
        }
        let s = self.sample(self.next);
        self.next += 1;
        Some(s)
    }
}

/// Separable states `Σ p_k ρ₁ᵏ ⊗ ρ₂ᵏ` with Haar-random pure factors.
pub fn sample_product_state(
    d: usize,
    config: SamplerConfig,
) -> impl Iterator<Item = DensityMatrix> {
    ProductSampler::new(d, d, config).map(|s| s.density())
}

/// Row-major copy of a witness for the inner loops of the sampler.
struct DenseWitness {
    da: usize,
    db: usize,
    w: Vec<Complex64>,
}

impl DenseWitness {
    fn new(op: &BipartiteOperator) -> Self {
        let n = op.dim();
        let mut w = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                w.push(op.entries()[(r, c)]);
            }
        }
        Self {
            da: op.dim_a(),
            db: op.dim_b(),
            w,
        }
    }

    fn at(&self, i: usize, k: usize, j: usize, l: usize) -> Complex64 {
        let n = self.da * self.db;
        self.w[(i * self.db + k) * n + j * self.db + l]
    }

    /// `⟨a⊗b| W |a⊗b⟩` for normalized factors.
    fn product_expectation(&self, a: &[Complex64], b: &[Complex64]) -> f64 {
        let reduced = self.reduce_second(b);
        quadratic_form(&reduced, a, self.da)
    }

    /// `M_ij = Σ_kl conj(b_k) W_{(i,k),(j,l)} b_l`, the operator seen by the first factor.
    fn reduce_second(&self, b: &[Complex64]) -> Vec<Complex64> {
        let (da, db) = (self.da, self.db);
        let mut m = vec![Complex64::new(0.0, 0.0); da * da];
        for i in 0..da {
            for j in 0..da {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..db {
                    let row: Complex64 = b
                        .iter()
                        .enumerate()
                        .map(|(l, bl)| self.at(i, k, j, l) * bl)
                        .sum();
                    acc += b[k].conj() * row;
                }
                m[i * da + j] = acc;
            }
        }
        m
    }

    /// `M_kl = Σ_ij conj(a_i) W_{(i,k),(j,l)} a_j`, the operator seen by the second factor.
    fn reduce_first(&self, a: &[Complex64]) -> Vec<Complex64> {
        let (da, db) = (self.da, self.db);
        let mut m = vec![Complex64::new(0.0, 0.0); db * db];
        for k in 0..db {
            for l in 0..db {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..da {
                    let row: Complex64 = a
                        .iter()
                        .enumerate()
                        .map(|(j, aj)| self.at(i, k, j, l) * aj)
                        .sum();
                    acc += a[i].conj() * row;
                }
                m[k * db + l] = acc;
            }
        }
        m
    }
}

fn quadratic_form(m: &[Complex64], x: &[Complex64], n: usize) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..n {
            row += m[i * n + j] * x[j];
        }
        acc += x[i].conj() * row;
    }
    acc.re
}

/// One sweep of ± perturbations on the real and imaginary part of each
/// coordinate of `x`, minimizing the Rayleigh quotient of `m`. Leaves `x`
/// normalized.
fn perturb_sweep(m: &[Complex64], x: &mut [Complex64], step: f64) {
    let n = x.len();
    let mut mx: Vec<Complex64> = (0..n)
        .map(|i| (0..n).map(|j| m[i * n + j] * x[j]).sum())
        .collect();
    let mut num = x
        .iter()
        .zip(&mx)
        .map(|(a, b)| (a.conj() * b).re)
        .sum::<f64>();
    let mut den = x.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let dirs = [
        Complex64::new(step, 0.0),
        Complex64::new(-step, 0.0),
        Complex64::new(0.0, step),
        Complex64::new(0.0, -step),
    ];
    for j in 0..n {
        for delta in dirs {
            let num_new =
                num + 2.0 * (delta.conj() * mx[j]).re + delta.norm_sqr() * m[j * n + j].re;
            let den_new = den + 2.0 * (delta.conj() * x[j]).re + delta.norm_sqr();
            if den_new > 1e-12 && num_new / den_new < num / den {
                x[j] += delta;
                for (i, v) in mx.iter_mut().enumerate() {
                    *v += m[i * n + j] * delta;
                }
                num = num_new;
                den = den_new;
                break;
            }
        }
    }
    let scale = 1.0 / den.sqrt();
    x.iter_mut().for_each(|z| *z *= scale);
}

fn refine_product(
    w: &DenseWitness,
    a: &mut [Complex64],
    b: &mut [Complex64],
    rounds: usize,
) -> f64 {
    let mut step = 0.5;
    for _ in 0..rounds {
        let ma = w.reduce_second(b);
        perturb_sweep(&ma, a, step);
        let mb = w.reduce_first(a);
        perturb_sweep(&mb, b, step);
        step *= 0.5;
    }
    w.product_expectation(a, b)
}

/// Empirical minimum of `Tr σW` over sampled separable states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparableProbe {
    /// Upper bound on the true separable minimum.
    pub minimum: f64,
    pub best_index: usize,
    pub samples: usize,
    pub refine_steps: usize,
}

/// Samples `config.count` separable states, refines every pure product factor
/// for `refine_steps` step-halving rounds, and returns the smallest expectation.
///
/// A negative result falsifies witness-hood; a nonnegative one is only evidence.
pub fn min_separable_expectation(
    w: &BipartiteOperator,
    config: SamplerConfig,
    refine_steps: usize,
) -> Result<SeparableProbe> {
    let dev = w.hermitian_deviation();
    if dev > crate::operator::SPECTRUM_HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let dense = DenseWitness::new(w);
    let sampler = ProductSampler::new(w.dim_a(), w.dim_b(), config);
    let mut best = SeparableProbe {
        minimum: f64::INFINITY,
        best_index: 0,
        samples: config.count,
        refine_steps,
    };
    for index in 0..config.count {
        let mut sample = sampler.sample(index);
        let mut value = 0.0;
        for (p, (a, b)) in sample.weights.iter().zip(sample.factors.iter_mut()) {
            value += p * refine_product(&dense, a, b, refine_steps);
        }
        if value < best.minimum {
            best.minimum = value;
            best.best_index = index;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{horodecki_state, simplex_state, HorodeckiParam, SimplexParams};
    use crate::operator::{hs_distance, partial_trace};
    use crate::witness::{c_gamma_lambda, crossover_gamma, region_witnesses};
    use approx::assert_abs_diff_eq;

    fn cfg(seed: u64, count: usize, k: usize) -> SamplerConfig {
        SamplerConfig::new(seed, count, k).unwrap()
    }

    fn gamma0(alpha: f64, beta: f64) -> DensityMatrix {
        simplex_state(SimplexParams::new(alpha, beta, 0.0))
            .into_density()
            .unwrap()
    }

    #[test]
    fn classify_examples() {
        let mixed = DensityMatrix::maximally_mixed(3, 3);
        assert!(classify_ppt(&mixed, PSD_TOL).unwrap().is_ppt());
        let v = classify_ppt(&horodecki_state(HorodeckiParam::new(0.5).unwrap()), PSD_TOL).unwrap();
        assert_eq!(v.label, PptLabel::Npt);
        assert!(v.min_pt_eigenvalue < -PSD_TOL);
        let v = classify_ppt(&horodecki_state(HorodeckiParam::new(3.5).unwrap()), PSD_TOL).unwrap();
        assert_eq!(v.label, PptLabel::Ppt);
    }

    #[test]
    fn classify_matches_eigenvalue_sign_on_horodecki_grid() {
        for k in 0..=20 {
            let b = 0.25 * k as f64;
            let rho = horodecki_state(HorodeckiParam::new(b).unwrap());
            let v = classify_ppt(&rho, PSD_TOL).unwrap();
            let expect_ppt = (1.0..=4.0).contains(&b);
            assert_eq!(v.is_ppt(), expect_ppt, "b = {b}");
            assert_eq!(v.is_ppt(), v.min_pt_eigenvalue >= -PSD_TOL);
        }
    }

    #[test]
    fn simplex_projection() {
        let p = project_simplex(&[0.5, 0.5, 0.5]);
        assert!(p.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15));
        let p = project_simplex(&[2.0, 0.0, -1.0]);
        assert_eq!(p, vec![1.0, 0.0, 0.0]);
        let p = project_simplex(&[0.2, 0.3, 0.5]);
        assert!(p
            .iter()
            .zip([0.2, 0.3, 0.5])
            .all(|(a, b)| (a - b).abs() < 1e-15));
    }

    #[test]
    fn nearest_ppt_matches_gamma0_analytic_points() {
        let cases = [
            ((0.5, 0.0), (0.25, 0.0)),
            ((0.0, 0.8), (1.0 / 12.0, 7.0 / 15.0)),
        ];
        for ((a, b), (na, nb)) in cases {
            let out = nearest_ppt(&gamma0(a, b), 1e-12, 10_000).unwrap();
            let expect = gamma0(na, nb);
            assert!(hs_distance(&out.state, &expect).unwrap() < 1e-6);
            assert!(classify_ppt(&out.state, 1e-10).unwrap().is_ppt());
        }
    }

    #[test]
    fn nearest_ppt_fixes_ppt_input() {
        let rho = horodecki_state(HorodeckiParam::new(3.5).unwrap());
        let out = nearest_ppt(&rho, 1e-12, 10).unwrap();
        assert_eq!(out.iterations, 0);
        assert_eq!(out.distance, 0.0);
        assert!(hs_distance(&out.state, &rho).unwrap() == 0.0);
    }

    #[test]
    fn nearest_ppt_of_npt_horodecki_state() {
        let rho = horodecki_state(HorodeckiParam::new(0.5).unwrap());
        let out = nearest_ppt(&rho, 1e-12, 100_000).unwrap();
        let v = classify_ppt(&out.state, 1e-10).unwrap();
        assert!(v.is_ppt());
        // never farther than the PPT Horodecki state at b = 1
        let b1 = horodecki_state(HorodeckiParam::new(1.0).unwrap());
        assert!(out.distance <= hs_distance(&rho, &b1).unwrap() + 1e-12);
    }

    #[test]
    fn nearest_ppt_reports_non_convergence() {
        let rho = gamma0(0.0, 0.8);
        // a generic (non-symmetric) NPT state needs more than one sweep
        let mut v = crate::weyl::max_entangled(3);
        v[1] = Complex64::new(0.3, 0.2);
        v[5] = Complex64::new(-0.1, 0.4);
        let pure = DensityMatrix::pure(3, 3, &v).unwrap();
        let mixed =
            DensityMatrix::new((pure.as_operator() * 0.7).add_scaled(0.3, &rho).unwrap()).unwrap();
        match nearest_ppt(&mixed, 1e-15, 1) {
            Err(Error::NotConverged {
                iterations,
                residual,
                last,
            }) => {
                assert_eq!(iterations, 1);
                assert!(residual > 0.0);
                assert_eq!(last.dim(), 9);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn sampler_is_reproducible_and_prefix_stable() {
        let a: Vec<_> = ProductSampler::new(3, 3, cfg(5, 10, 2)).collect();
        let b: Vec<_> = ProductSampler::new(3, 3, cfg(5, 20, 2)).take(10).collect();
        assert_eq!(a, b);
        let c: Vec<_> = ProductSampler::new(3, 3, cfg(6, 10, 2)).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn samples_are_separable_states() {
        for rho in sample_product_state(3, cfg(1, 200, 3)) {
            assert!(classify_ppt(&rho, 1e-10).unwrap().is_ppt());
            assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-12);
        }
        for s in ProductSampler::new(3, 3, cfg(2, 20, 1)) {
            let rho = s.density();
            let r2 = partial_trace(&rho, Subsystem::First);
            let purity = (&r2 * &r2).trace().re;
            assert_abs_diff_eq!(purity, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn region_witness_is_nonnegative_on_samples() {
        let c_i = region_witnesses().c_i.op;
        for rho in sample_product_state(3, cfg(3, 500, 2)) {
            assert!(c_i.expectation(&rho).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn fast_expectation_matches_dense_trace() {
        let w = c_gamma_lambda(0.3, 0.8).unwrap().witness.op;
        let dense = DenseWitness::new(&w);
        for s in ProductSampler::new(3, 3, cfg(9, 20, 1)) {
            let (a, b) = &s.factors[0];
            let fast = dense.product_expectation(a, b);
            let slow = w.expectation(&s.density()).unwrap();
            assert!((fast - slow).abs() < 1e-13);
        }
    }

    #[test]
    fn refinement_never_increases_value() {
        let w = c_gamma_lambda(crossover_gamma(), 0.5).unwrap().witness.op;
        let dense = DenseWitness::new(&w);
        for s in ProductSampler::new(3, 3, cfg(4, 50, 1)) {
            let (mut a, mut b) = s.factors[0].clone();
            let before = dense.product_expectation(&a, &b);
            let after = refine_product(&dense, &mut a, &mut b, 12);
            assert!(after <= before + 1e-14);
            let na: f64 = a.iter().map(|z| z.norm_sqr()).sum();
            assert_abs_diff_eq!(na, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn probe_examples() {
        let id = BipartiteOperator::identity(3, 3);
        let probe = min_separable_expectation(&id, cfg(1, 100, 1), 4).unwrap();
        assert_abs_diff_eq!(probe.minimum, 1.0, epsilon = 1e-12);

        let c_i = region_witnesses().c_i.op;
        let probe = min_separable_expectation(&c_i, cfg(1, 2000, 1), 8).unwrap();
        assert!(probe.minimum >= -1e-9);
    }

    #[test]
    fn probe_is_monotone_in_sample_count() {
        let w = c_gamma_lambda(crossover_gamma(), 0.5).unwrap().witness.op;
        let mut prev = f64::INFINITY;
        for count in [10, 50, 200, 800] {
            let m = min_separable_expectation(&w, cfg(77, count, 2), 6)
                .unwrap()
                .minimum;
            assert!(m <= prev);
            prev = m;
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]

        #[test]
        fn nearest_ppt_is_feasible_and_no_farther_than_analytic(
            alpha in -0.15f64..1.0,
            beta in -0.3f64..1.0,
        ) {
            let p = SimplexParams::new(alpha, beta, 0.0);
            proptest::prop_assume!(p.is_valid(0.0));
            let rho = gamma0(alpha, beta);
            let out = nearest_ppt(&rho, 1e-12, 100_000).unwrap();
            proptest::prop_assert!(classify_ppt(&out.state, 1e-9).unwrap().is_ppt());
            let spec = hermitian_spectrum(&out.state).unwrap();
            proptest::prop_assert!(spec[0] >= -1e-9);
            if let Ok(exact) = crate::witness::nearest_separable_gamma0(alpha, beta, PSD_TOL) {
                proptest::prop_assert!(out.distance <= exact.distance() + 1e-9);
            }
        }

        #[test]
        fn mixed_samples_are_ppt(seed in 0u64..1000, k in 1usize..5) {
            for rho in sample_product_state(3, cfg(seed, 5, k)) {
                proptest::prop_assert!(classify_ppt(&rho, 1e-10).unwrap().is_ppt());
            }
        }
    }
}
