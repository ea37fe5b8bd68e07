//! Ewens/CRP distributions and the positive consistency result: the
//! permutation law survives delete-and-repair exactly, but not
//! subselection.
//!
//! ```bash
//! cargo run -p permanental --example ewens_consistency
//! ```

use num_rational::BigRational;
use permanental::crp::{
    consistency_check_dr, consistency_check_ss, crp_partition_pmf, ewens_pmf, rising_factorial,
    CrpSampler, EwensParams,
};
use permanental::graphs::{Partition, Permutation};
use permanental::projection::permutation_dr_preimages;
use permanental::rational::format_rational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    let alpha = rat(2, 1);
    let params = EwensParams::new(3, alpha.clone()).unwrap();
    println!(
        "Ewens law on S_3 at alpha = 2 (normalizer = rising(2,3) = {}):",
        format_rational(&rising_factorial(&alpha, 3))
    );
    for sigma in Permutation::enumerate(3).unwrap() {
        println!(
            "  P{} = {}",
            sigma.to_cycle_string(),
            format_rational(&ewens_pmf(&sigma, &params).unwrap())
        );
    }

    println!("\npartition push-forward (cycles -> blocks):");
    for pi in Partition::enumerate(3).unwrap() {
        println!(
            "  P{:?} = {}",
            pi,
            format_rational(&crp_partition_pmf(&pi, &params).unwrap())
        );
    }

    // The preimage structure behind delete-and-repair consistency: the new
    // element spliced after each existing one, plus a lone fixed point.
    let sigma = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
    println!("\ndelete-and-repair preimages of {}:", sigma.to_cycle_string());
    for p in permutation_dr_preimages(&sigma) {
        println!("  {} ({} cycles)", p.to_cycle_string(), p.cycle_count());
    }

    // The identity itself, exactly, for several concentrations.
    println!();
    for alpha in [rat(1, 2), rat(1, 1), rat(7, 3)] {
        for n in 1..=5 {
            let report = consistency_check_dr(n, &alpha).unwrap();
            assert!(report.holds && report.census_holds);
        }
        println!("delete-and-repair consistency holds exactly for n <= 5 at alpha = {}", format_rational(&alpha));
    }

    // Subselection destroys it: the top-left block of a permutation matrix
    // need not be a permutation matrix.
    let report = consistency_check_ss(3, &rat(1, 1)).unwrap();
    println!(
        "subselection consistency at n = 3: holds = {}, first violation at sigma = {}",
        report.holds,
        report.witness.unwrap().to_cycle_string()
    );

    // Seeded seating-process draws.
    let mut sampler = CrpSampler::new(EwensParams::new(8, rat(3, 2)).unwrap(), 11);
    println!("\nfive seeded draws at n = 8, alpha = 3/2:");
    for _ in 0..5 {
        println!("  {}", sampler.draw_permutation().to_cycle_string());
    }
}
