//! Hilbert-Schmidt measure, nearest separable state and optimal witness on the γ = 0 slice.

use qudit_witness::family::{simplex_state, SimplexParams};
use qudit_witness::operator::PSD_TOL;
use qudit_witness::witness::{
    hs_measure_gamma0, nearest_separable_gamma0, region_witnesses, Gamma0Label,
};

fn main() -> qudit_witness::Result<()> {
    let witnesses = region_witnesses();
    let points = [
        (0.5, 0.0),
        (0.9, 0.05),
        (0.0, 0.8),
        (0.05, 0.75),
        (0.2, 0.2),
        (0.1, 0.4),
    ];
    println!(
        "{:>6} {:>6}  {:<12} {:>10} {:>10}  nearest",
        "alpha", "beta", "label", "D", "Tr(rho C)"
    );
    for (a, b) in points {
        let m = hs_measure_gamma0(a, b, PSD_TOL)?;
        let (label, w, nearest) = match m.label {
            Gamma0Label::Separable => ("separable".to_string(), "-".to_string(), String::new()),
            Gamma0Label::Entangled(region) => {
                let rho = simplex_state(SimplexParams::new(a, b, 0.0)).operator;
                let w = witnesses.get(region).expectation(&rho)?;
                let s = nearest_separable_gamma0(a, b, PSD_TOL)?.nearest;
                (
                    format!("NPT-{region}"),
                    format!("{w:.6}"),
                    format!("({:.4}, {:.4})", s.alpha, s.beta),
                )
            }
        };
        println!(
            "{a:>6.2} {b:>6.2}  {label:<12} {:>10.6} {w:>10}  {nearest}",
            m.value
        );
    }
    println!("\nthe witness violation equals -D on every NPT point");
    Ok(())
}
