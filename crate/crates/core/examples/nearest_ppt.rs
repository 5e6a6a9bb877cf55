//! Dykstra projection onto the PPT states, compared with the analytic γ = 0 answer.

use qudit_witness::family::{
    horodecki_state, simplex_params_of, simplex_state, HorodeckiParam, SimplexParams,
};
use qudit_witness::operator::PSD_TOL;
use qudit_witness::ppt::{classify_ppt, nearest_ppt};
use qudit_witness::witness::nearest_separable_gamma0;

fn main() -> qudit_witness::Result<()> {
    for (a, b) in [(0.5, 0.0), (0.0, 0.8), (0.7, 0.2)] {
        let rho = simplex_state(SimplexParams::new(a, b, 0.0)).into_density()?;
        let found = nearest_ppt(&rho, 1e-12, 10_000)?;
        let (p, _) = simplex_params_of(&found.state)?;
        let exact = nearest_separable_gamma0(a, b, PSD_TOL)?;
        println!(
            "({a}, {b}): Dykstra ({:.6}, {:.6}) in {} iterations, analytic ({:.6}, {:.6}), distance {:.6}",
            p.alpha, p.beta, found.iterations, exact.nearest.alpha, exact.nearest.beta, found.distance
        );
    }

    // off the γ = 0 slice there is no closed form
    let rho = horodecki_state(HorodeckiParam::new(0.3)?);
    let found = nearest_ppt(&rho, 1e-10, 100_000)?;
    let (p, off) = simplex_params_of(&found.state)?;
    let v = classify_ppt(&found.state, PSD_TOL)?;
    println!(
        "\nHorodecki b = 0.3: distance {:.6} after {} iterations; nearest ({:.5}, {:.5}, {:.5}), off-family {:.1e}, min PT eig {:.1e}",
        found.distance, found.iterations, p.alpha, p.beta, p.gamma, off, v.min_pt_eigenvalue
    );
    Ok(())
}
