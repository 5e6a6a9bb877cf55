//! Weyl-coefficient certificate versus the separable-state sampler, plus the JSON file format.

use qudit_witness::operator::BipartiteOperator;
use qudit_witness::ppt::{min_separable_expectation, SamplerConfig};
use qudit_witness::witness::{c_gamma_lambda, certify_lemma1, detection_profile, region_witnesses};

fn report(name: &str, op: &BipartiteOperator) -> qudit_witness::Result<()> {
    let cert = certify_lemma1(op)?;
    let probe = min_separable_expectation(op, SamplerConfig::new(7, 20_000, 1)?, 10)?;
    println!(
        "{name:<24} lemma form {:<5} max|c| {:>8.5}  certified {:<5}  sampled min {:+.3e}",
        cert.in_lemma_form, cert.max_abs_c, cert.certified, probe.minimum
    );
    Ok(())
}

fn main() -> qudit_witness::Result<()> {
    let rw = region_witnesses();
    report("C_I", &rw.c_i.op)?;
    report("C_II", &rw.c_ii.op)?;
    let g = 0.3;
    let lmin = detection_profile(g)?.lambda_min;
    report("C_{0.3, lambda_min}", &c_gamma_lambda(g, lmin)?.witness.op)?;
    report(
        "C_{0.3, 0.9 lambda_min}",
        &c_gamma_lambda(g, 0.9 * lmin)?.witness.op,
    )?;

    // operators travel as {"dim_a", "dim_b", "entries": [[re, im], ...]} in row-major order
    let path = std::env::temp_dir().join("c_ii.json");
    std::fs::write(&path, rw.c_ii.op.to_json())?;
    let back = BipartiteOperator::from_json(&std::fs::read_to_string(&path)?)?;
    println!(
        "\nwrote {}; round trip exact: {}",
        path.display(),
        back == rw.c_ii.op
    );
    Ok(())
}
