//! Detection thresholds of the λ-line witnesses C_{γ,λ} and the Weyl coefficients behind them.

use qudit_witness::witness::{
    c_gamma_lambda, certify_lemma1, crossover_gamma, detection_profile, detection_threshold,
    minimize_lambda_min, GAMMA_WINDOW,
};

fn main() -> qudit_witness::Result<()> {
    println!(
        "{:>8} {:>9} {:>9} {:>9}  detects",
        "gamma", "lambda_1", "lambda_2", "lambda_min"
    );
    for k in 0..=12 {
        let g = GAMMA_WINDOW * k as f64 / 12.0;
        let p = detection_profile(g)?;
        println!(
            "{g:>8.4} {:>9.5} {:>9.5} {:>9.5}  {}",
            p.lambda_1, p.lambda_2, p.lambda_min, p.detects
        );
    }
    println!("\nthreshold 1/sqrt(21) = {:.6}", detection_threshold());
    let best = minimize_lambda_min(0.0, GAMMA_WINDOW, 2000)?;
    println!(
        "minimum lambda_min = {:.12} at gamma = {:.9} (sqrt5/7 = {:.9})",
        best.lambda_min,
        best.gamma,
        crossover_gamma()
    );

    let g = crossover_gamma();
    for lambda in [0.8, 0.875, 0.95] {
        let w = c_gamma_lambda(g, lambda)?;
        let cert = certify_lemma1(&w.witness.op)?;
        let on_anchor = w.witness.expectation(&w.witness.target)?;
        println!(
            "lambda = {lambda:.3}: a = {:.6}, c1 = {:.4}, |c2| = {:.4}, certified = {}, Tr(rho_b C) = {on_anchor:.3e}",
            w.coefficients.a,
            w.coefficients.c1.re,
            w.coefficients.c2.norm(),
            cert.certified
        );
    }
    Ok(())
}
