//! Label census of a few γ slices; the CLI `slice` command writes the full grid as CSV.

use std::collections::BTreeMap;

use qudit_witness::atlas::{slice_sweep, Label};
use qudit_witness::family::slice_point_for_gamma;
use qudit_witness::operator::PSD_TOL;

fn main() -> qudit_witness::Result<()> {
    for gamma in [0.0, 0.25, -2.0 / 7.0, -3.0 / 7.0] {
        let report = slice_sweep(gamma, 61, PSD_TOL)?;
        let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
        for row in &report.rows {
            *counts.entry(row.label).or_default() += 1;
        }
        let census: Vec<String> = counts.iter().map(|(l, n)| format!("{l} {n}")).collect();
        println!("gamma = {gamma:+.4}: {}", census.join(", "));
        if gamma < -1.0 / 7.0 {
            let (a, b) = slice_point_for_gamma(gamma);
            println!("    Horodecki point of this slice: ({a:.5}, {b:.5})");
        }
    }
    Ok(())
}
