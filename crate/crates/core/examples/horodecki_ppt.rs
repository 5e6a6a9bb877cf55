//! PT spectrum of the Horodecki states and their place in the three-parameter family.

use qudit_witness::family::{horodecki_state, horodecki_to_simplex, HorodeckiParam};
use qudit_witness::operator::PSD_TOL;
use qudit_witness::ppt::classify_ppt;
use qudit_witness::witness::horodecki_detection_range;

fn main() -> qudit_witness::Result<()> {
    let range = horodecki_detection_range();
    println!(
        "{:>5} {:>9} {:>9} {:>9}  {:<4} {:>14}  detected",
        "b", "alpha", "beta", "gamma", "PT", "min PT eig"
    );
    for k in 0..=20 {
        let b = HorodeckiParam::new(0.25 * k as f64)?;
        let p = horodecki_to_simplex(b);
        let v = classify_ppt(&horodecki_state(b), PSD_TOL)?;
        println!(
            "{:>5.2} {:>9.5} {:>9.5} {:>9.5}  {:<4} {:>14.6e}  {}",
            b.value(),
            p.alpha,
            p.beta,
            p.gamma,
            if v.is_ppt() { "PPT" } else { "NPT" },
            v.min_pt_eigenvalue,
            if v.is_ppt() && range.contains(b.value()) {
                "yes"
            } else {
                ""
            }
        );
    }
    println!(
        "\nλ-line witnesses detect b in [{:.4}, {:.4}) and ({:.4}, {:.4}]",
        range.lower.0, range.lower.1, range.upper.0, range.upper.1
    );
    Ok(())
}
