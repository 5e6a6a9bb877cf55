//! Threshold-reproduction battery behind `qudit-witness reproduce`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::family::{
    horodecki_state, horodecki_to_simplex, simplex_eigenvalues, simplex_state, HorodeckiParam,
    SimplexParams,
};
use crate::operator::{hermitian_spectrum, hs_distance, hs_inner, BipartiteOperator, PSD_TOL};
use crate::ppt::{classify_ppt, min_separable_expectation, nearest_ppt, SamplerConfig};
use crate::weyl::{bell_projector, WeylIndex};
use crate::witness::{
    c_gamma_lambda, cbe_coefficients, certify_lemma1, crossover_gamma, d_i_formula, d_ii_formula,
    detection_profile, detection_threshold, lambda_min_by_bisection, minimize_lambda_min,
    nearest_point_formula, region_witnesses, Region, GAMMA_WINDOW,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryConfig {
    /// Product samples per witness in the sampler check.
    pub samples: usize,
    pub seed: u64,
    pub refine_steps: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            seed: 1,
            refine_steps: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub name: String,
    pub target: String,
    pub computed: String,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<4} {}: target {}, computed {}, tol {:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.target,
            self.computed,
            self.tolerance
        )
    }
}

fn within(id: &str, name: &str, target: f64, computed: f64, tol: f64) -> Check {
    Check {
        id: id.into(),
        name: name.into(),
        target: format!("{target:.15e}"),
        computed: format!("{computed:.15e}"),
        tolerance: tol,
        passed: (computed - target).abs() <= tol,
    }
}

/// `computed ≤ tol`, for maximum errors.
fn max_error(id: &str, name: &str, computed: f64, tol: f64) -> Check {
    Check {
        id: id.into(),
        name: name.into(),
        target: "0".into(),
        computed: format!("{computed:.3e}"),
        tolerance: tol,
        passed: computed <= tol,
    }
}

fn flag(id: &str, name: &str, target: &str, computed: String, passed: bool) -> Check {
    Check {
        id: id.into(),
        name: name.into(),
        target: target.into(),
        computed,
        tolerance: 0.0,
        passed,
    }
}

/// `γ` values used for the λ-line witness checks: ten on each side of the window.
pub fn window_gammas() -> Vec<f64> {
    let lo = detection_threshold();
    let pos: Vec<f64> = (1..=10)
        .map(|k| lo + (GAMMA_WINDOW - lo) * k as f64 / 10.0)
        .collect();
    pos.iter().map(|g| -g).chain(pos.iter().copied()).collect()
}

fn min_pt(b: f64) -> Result<f64> {
    Ok(classify_ppt(&horodecki_state(HorodeckiParam::new(b)?), PSD_TOL)?.min_pt_eigenvalue)
}

fn bisect(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    mut left: impl FnMut(f64) -> Result<bool>,
) -> Result<f64> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if left(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Random valid NPT points of one `γ = 0` region.
pub fn gamma0_region_points(region: Region, count: usize, rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.random_range(-1.0 / 6.0..1.0);
        let b = rng.random_range(-1.0 / 3.0..1.0);
        let p = SimplexParams::new(a, b, 0.0);
        if !p.is_valid(0.0) {
            continue;
        }
        let d = match region {
            Region::I => d_i_formula(a, b),
            Region::II => d_ii_formula(a, b),
        };
        if d > 1e-6 {
            out.push((a, b));
        }
    }
    out
}

fn simplex_density(p: SimplexParams) -> BipartiteOperator {
    simplex_state(p).operator
}

pub fn run_battery(config: BatteryConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    // 1. global minimum of λ_min
    let closed = detection_profile(crossover_gamma())?.lambda_min;
    out.push(within(
        "1a",
        "lambda_min_tot closed form",
        0.875,
        closed,
        1e-12,
    ));
    let numeric = minimize_lambda_min(0.0, GAMMA_WINDOW, 10_000)?;
    out.push(within(
        "1b",
        "lambda_min_tot numeric scan",
        0.875,
        numeric.lambda_min,
        1e-6,
    ));

    // 2. crossover
    let g = crossover_gamma();
    let p = detection_profile(g)?;
    out.push(within(
        "2a",
        "lambda_1 = lambda_2 at sqrt5/7",
        0.0,
        p.lambda_1 - p.lambda_2,
        1e-12,
    ));
    let below = detection_profile(g - 1e-6)?;
    let above = detection_profile(g + 1e-6)?;
    let flips =
        (below.lambda_1 - below.lambda_2).signum() != (above.lambda_1 - above.lambda_2).signum();
    out.push(flag(
        "2b",
        "sign of lambda_1 - lambda_2 flips",
        "flip",
        if flips { "flip" } else { "no flip" }.to_string(),
        flips,
    ));

    // 3. detection boundary
    let t = detection_threshold();
    let mut ok = true;
    for s in [1.0, -1.0] {
        ok &= !detection_profile(s * (t - 1e-6))?.detects;
        ok &= detection_profile(s * (t + 1e-6))?.detects;
    }
    out.push(flag(
        "3",
        "detects iff |gamma| > 1/sqrt21 (at +-1e-6)",
        "no/yes",
        if ok {
            "no/yes".into()
        } else {
            "mismatch".into()
        },
        ok,
    ));

    // 4. Horodecki detection endpoints
    let lmin_b =
        |b: f64| -> Result<f64> { lambda_min_by_bisection(HorodeckiParam::new(b)?.gamma(), 1e-15) };
    let lower = bisect(1.0, 2.5, 1e-13, |b| Ok(lmin_b(b)? < 1.0))?;
    let upper = bisect(2.5, 4.0, 1e-13, |b| Ok(lmin_b(b)? >= 1.0))?;
    let r = 21f64.sqrt();
    out.push(within(
        "4a",
        "lower b endpoint",
        (15.0 - r) / 6.0,
        lower,
        1e-9,
    ));
    out.push(within(
        "4b",
        "upper b endpoint",
        (15.0 + r) / 6.0,
        upper,
        1e-9,
    ));

    // 5. Horodecki PT classification
    let mut labels_ok = true;
    for (bs, ppt) in [
        (&[0.0, 0.5, 0.99][..], false),
        (&[1.0, 2.0, 3.0, 4.0][..], true),
        (&[4.01, 4.5, 5.0][..], false),
    ] {
        for &b in bs {
            labels_ok &=
                classify_ppt(&horodecki_state(HorodeckiParam::new(b)?), PSD_TOL)?.is_ppt() == ppt;
        }
    }
    out.push(flag(
        "5a",
        "Horodecki PT labels",
        "NPT/PPT/NPT",
        if labels_ok {
            "NPT/PPT/NPT".into()
        } else {
            "mismatch".into()
        },
        labels_ok,
    ));
    let npt = |b: f64| -> Result<bool> { Ok(min_pt(b)? < -1e-13) };
    let first = bisect(0.99, 1.01, 1e-10, npt)?;
    let second = bisect(3.99, 4.01, 1e-10, |b| Ok(!npt(b)?))?;
    out.push(within("5b", "PT sign change near b = 1", 1.0, first, 1e-8));
    out.push(within("5c", "PT sign change near b = 4", 4.0, second, 1e-8));

    // 6. embedding
    let mut worst: f64 = 0.0;
    for k in 0..=50 {
        let b = HorodeckiParam::new(0.1 * k as f64)?;
        let d = hs_distance(
            &horodecki_state(b),
            &simplex_density(horodecki_to_simplex(b)),
        )?;
        worst = worst.max(d);
    }
    out.push(max_error(
        "6",
        "Horodecki embedding (51 points)",
        worst,
        1e-12,
    ));

    // 7. γ = 0 measures
    let rw = region_witnesses();
    let mut worst_dist: f64 = 0.0;
    let mut worst_wit: f64 = 0.0;
    for region in [Region::I, Region::II] {
        for (a, b) in gamma0_region_points(region, 100, &mut rng) {
            let rho = simplex_density(SimplexParams::new(a, b, 0.0));
            let sigma = simplex_density(nearest_point_formula(a, b, region));
            let d = match region {
                Region::I => d_i_formula(a, b),
                Region::II => d_ii_formula(a, b),
            };
            worst_dist = worst_dist.max((d - hs_distance(&sigma, &rho)?).abs());
            let w = hs_inner(&rho, &rw.get(region).op)?.re;
            worst_wit = worst_wit.max((d + w).abs());
        }
    }
    out.push(max_error(
        "7a",
        "D formula vs nearest-point distance",
        worst_dist,
        1e-12,
    ));
    out.push(max_error(
        "7b",
        "D formula vs witness violation",
        worst_wit,
        1e-12,
    ));

    // 8. certification
    let mut witnesses: Vec<(String, BipartiteOperator)> = vec![
        ("C_I".into(), rw.c_i.op.clone()),
        ("C_II".into(), rw.c_ii.op.clone()),
    ];
    let mut all_certified = true;
    let mut all_rejected = true;
    for g in window_gammas() {
        let lmin = detection_profile(g)?.lambda_min;
        witnesses.push((
            format!("C_{{{g:.4},lmin}}"),
            c_gamma_lambda(g, lmin)?.witness.op,
        ));
        let short = certify_lemma1(&c_gamma_lambda(g, 0.9 * lmin)?.witness.op)?;
        all_rejected &= !short.certified && short.max_abs_c > 1.0;
    }
    let mut worst_c: f64 = 0.0;
    for (_, w) in &witnesses {
        let cert = certify_lemma1(w)?;
        all_certified &= cert.certified;
        worst_c = worst_c.max(cert.max_abs_c);
    }
    out.push(flag(
        "8a",
        "C_I, C_II and 20 C_{gamma,lambda_min} certified",
        "22/22",
        format!("max |c| = {worst_c:.15}"),
        all_certified,
    ));
    out.push(flag(
        "8b",
        "lambda = 0.9 lambda_min not certified, max |c| > 1",
        "20/20",
        if all_rejected {
            "20/20".into()
        } else {
            "mismatch".into()
        },
        all_rejected,
    ));

    // 9. sampler safety
    let sampler = SamplerConfig::new(config.seed, config.samples, 1)?;
    let mut worst_min = f64::INFINITY;
    for (_, w) in &witnesses {
        let probe = min_separable_expectation(w, sampler, config.refine_steps)?;
        worst_min = worst_min.min(probe.minimum);
    }
    out.push(Check {
        id: "9".into(),
        name: format!(
            "sampler minimum over {} samples per witness",
            config.samples
        ),
        target: ">= -1e-9".into(),
        computed: format!("{worst_min:.3e}"),
        tolerance: 1e-9,
        passed: worst_min >= -1e-9,
    });

    // 10. closed-form Weyl coefficients
    let mut worst_coeff: f64 = 0.0;
    for i in 0..20 {
        let g = -GAMMA_WINDOW + 2.0 * GAMMA_WINDOW * i as f64 / 19.0;
        for j in 0..20 {
            let l = 0.04 + 0.92 * j as f64 / 19.0;
            let cert = certify_lemma1(&c_gamma_lambda(g, l)?.witness.op)?;
            let cf = cbe_coefficients(g, l)?;
            // the identity term is a(d-1)𝟙 = 2a𝟙
            let mut err = (cert.a - cf.a).abs();
            for idx in WeylIndex::all(3).filter(|i| !i.is_identity()) {
                let expect = if idx.m != 0 {
                    cf.c1
                } else if idx.n == 1 {
                    cf.c2
                } else {
                    cf.c2.conj()
                };
                err = err.max((cert.c(idx) - expect).norm());
            }
            worst_coeff = worst_coeff.max(err);
        }
    }
    out.push(max_error(
        "10",
        "closed-form (a, c1, c2) on 20x20 grid",
        worst_coeff,
        1e-10,
    ));

    // 11. nearest-PPT oracle
    let mut worst_np: f64 = 0.0;
    for k in 0..20 {
        let region = if k % 2 == 0 { Region::I } else { Region::II };
        let (a, b) = gamma0_region_points(region, 1, &mut rng)[0];
        let rho = simplex_state(SimplexParams::new(a, b, 0.0)).into_density()?;
        let found = nearest_ppt(&rho, 1e-12, 100_000)?;
        let sigma = simplex_density(nearest_point_formula(a, b, region));
        worst_np = worst_np.max(hs_distance(&found.state, &sigma)?);
    }
    out.push(max_error(
        "11",
        "nearest_ppt vs analytic point (20 states)",
        worst_np,
        1e-6,
    ));

    // 12. spectrum and Bell projectors
    let mut worst_spec: f64 = 0.0;
    for _ in 0..1000 {
        let p = SimplexParams::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let closed = simplex_eigenvalues(p);
        let numeric = hermitian_spectrum(&simplex_density(p))?;
        for (x, y) in closed.iter().zip(&numeric) {
            worst_spec = worst_spec.max((x - y).abs());
        }
    }
    out.push(max_error(
        "12a",
        "closed-form simplex spectrum (1000 triples)",
        worst_spec,
        1e-12,
    ));
    let ps: Vec<_> = WeylIndex::all(3).map(|i| bell_projector(3, i)).collect();
    let mut worst_bell: f64 = 0.0;
    let mut sum = BipartiteOperator::zeros(3, 3);
    for (i, p) in ps.iter().enumerate() {
        sum = &sum + p.as_operator();
        for (j, q) in ps.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst_bell = worst_bell.max((hs_inner(p, q)? - target).norm());
        }
    }
    worst_bell = worst_bell.max(hs_distance(&sum, &BipartiteOperator::identity(3, 3))?);
    out.push(max_error(
        "12b",
        "Bell projector orthogonality and completeness",
        worst_bell,
        1e-12,
    ));

    Ok(out)
}
