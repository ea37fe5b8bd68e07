//! The negative result, end to end: no positive parameter pair makes the
//! full-support permanental model projectively consistent.
//!
//! Consistency forces the fibre-numerator-to-denominator ratio to be
//! constant across base graphs. The witness pair has identical denominators
//! but fibre numerators differing by a polynomial with strictly positive
//! coefficients, which cannot vanish at positive parameters.
//!
//! ```bash
//! cargo run -p permanental --example impossibility_certificate
//! ```

use num_rational::BigRational;
use permanental::consistency::{
    denominator_poly, dr_refutation, ltp_check, ss_contradiction_chain,
};
use permanental::fixtures;
use permanental::pgm::{PgmParams, SupportFamily};
use permanental::projection::ProjectionOp;
use permanental::rational::format_rational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    let g1 = fixtures::g1();
    let g2 = fixtures::g2();
    println!("witness pair ({} and {} edges):", g1.edge_count(), g2.edge_count());
    println!("G1 = {}   G2 = {}", g1.compact(), g2.compact());

    println!("\nshared denominator: {}", denominator_poly(&g1).unwrap());

    let cert = dr_refutation().unwrap();
    println!("\nfibre numerator of G1: {}", cert.rhs_g1);
    println!("\nfibre numerator of G2: {}", cert.rhs_g2);
    println!("\ndifference (G2 - G1):  {}", cert.difference);
    println!(
        "\ndenominators equal: {}; difference strictly positive: {}; refutes for all parameters: {}",
        cert.denominators_equal,
        cert.strictly_positive,
        cert.refutes_for_all_parameters()
    );

    // The difference is positive at any positive point; sample a few.
    for (a, b) in [(rat(1, 1), rat(1, 1)), (rat(1, 2), rat(3, 1)), (rat(7, 3), rat(2, 5))] {
        println!(
            "  difference at (alpha, beta) = ({}, {}): {}",
            format_rational(&a),
            format_rational(&b),
            format_rational(&cert.difference.evaluate(&a, &b))
        );
    }

    // The same checker that refutes the full space confirms the Ewens
    // family, with the identical code path.
    let lower = PgmParams::new(4, rat(7, 3), rat(1, 1)).unwrap();
    let upper = PgmParams::new(5, rat(7, 3), rat(1, 1)).unwrap();
    let ewens = ltp_check(ProjectionOp::Dr, SupportFamily::Permutations, &lower, &upper).unwrap();
    println!("\nEwens family, delete-and-repair, n=4 -> 5: pass = {}", ewens.pass);

    let full = ltp_check(ProjectionOp::Dr, SupportFamily::All, &lower, &upper).unwrap();
    println!("full support,  delete-and-repair, n=4 -> 5: pass = {}", full.pass);

    // Subselection falls to a chain of forcing steps instead.
    println!("\nsubselection refutation chain at n = 3:");
    for step in ss_contradiction_chain(3).unwrap().steps {
        println!("  [{}] {}", if step.pass { "ok" } else { "FAIL" }, step.name);
    }
}
