//! Weyl operators, their composition phases, and the Bell basis they generate.

use qudit_witness::operator::hs_inner;
use qudit_witness::weyl::{bell_projector, weyl, weyl_expand, WeylIndex};

fn main() -> qudit_witness::Result<()> {
    let d = 3;
    let x = WeylIndex::new(d, 1, 0);
    let z = WeylIndex::new(d, 0, 1);
    let xz = &weyl(d, x) * &weyl(d, z);
    let zx = &weyl(d, z) * &weyl(d, x);
    // U10 U01 = ω U01 U10
    let phase = (0..d * d)
        .map(|k| (xz[k], zx[k]))
        .find(|(_, b)| b.norm() > 1e-9)
        .map(|(a, b)| a / b)
        .unwrap();
    println!(
        "U10 U01 (U01 U10)^-1 phase: {:.6} {:+.6}i",
        phase.re, phase.im
    );

    println!("\nBell projector overlaps <P_a, P_b>:");
    let ps: Vec<_> = WeylIndex::all(d)
        .map(|i| (i, bell_projector(d, i)))
        .collect();
    for (i, p) in &ps {
        let row: Vec<String> = ps
            .iter()
            .map(|(_, q)| format!("{:.0}", hs_inner(p, q).unwrap().re.abs()))
            .collect();
        println!("  P{}{}  {}", i.n, i.m, row.join(" "));
    }

    // P00 = (1/9) Σ U_nm ⊗ U_{-n,m}
    let exp = weyl_expand(&bell_projector(d, WeylIndex::IDENTITY))?;
    println!("\nWeyl expansion of P00:");
    for (a, b, c) in exp.significant(1e-12) {
        println!("  {a} ⊗ {b}: {:+.6} {:+.6}i", c.re, c.im);
    }
    Ok(())
}
