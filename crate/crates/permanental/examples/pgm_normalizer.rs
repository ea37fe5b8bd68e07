//! The permanental graph model: closed-form normalizer, degree law, and
//! expected edge count, all checked against brute-force enumeration.
//!
//! ```bash
//! cargo run -p permanental --example pgm_normalizer
//! ```

use num_rational::BigRational;
use num_traits::ToPrimitive;
use permanental::graphs::enumerate_graphs;
use permanental::pgm::{
    degree_pmf, expected_edges, normalizer_bruteforce, normalizer_closed_form, pmf, PgmParams,
    SupportFamily,
};
use permanental::rational::format_rational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    println!("normalizer z_n = rising(alpha, n) * beta^n * (1+beta)^(n^2-n)\n");
    for n in 1..=3 {
        for (alpha, beta) in [(rat(1, 1), rat(1, 1)), (rat(1, 2), rat(2, 1)), (rat(3, 1), rat(1, 3))] {
            let params = PgmParams::new(n, alpha.clone(), beta.clone()).unwrap();
            let closed = normalizer_closed_form(&params);
            let brute = normalizer_bruteforce(&params, SupportFamily::All).unwrap();
            assert_eq!(closed, brute);
            println!(
                "n={n} alpha={} beta={}: z = {} (closed form == {}-graph sum)",
                format_rational(&alpha),
                format_rational(&beta),
                format_rational(&closed),
                1u64 << (n * n),
            );
        }
    }

    // Restricted to permutation matrices at beta = 1 the normalizer is the
    // rising factorial itself.
    let params = PgmParams::new(4, rat(7, 3), rat(1, 1)).unwrap();
    println!(
        "\npermutation family, n=4, alpha=7/3: z = {}",
        format_rational(&normalizer_bruteforce(&params, SupportFamily::Permutations).unwrap())
    );

    // Degree law: out-degree minus one is Binomial(n-1, beta/(1+beta)).
    let n = 4;
    let beta = rat(1, 1);
    println!("\ndegree law at n={n}, beta=1 (exact vs enumerated marginal):");
    let params = PgmParams::new(n, rat(1, 1), beta.clone()).unwrap();
    for k in 0..n {
        let exact = degree_pmf(n, &beta, k).unwrap();
        let marginal: BigRational = enumerate_graphs(n)
            .unwrap()
            .filter(|g| g.row(0).count_ones() as usize == k + 1)
            .map(|g| pmf(&g, &params).unwrap())
            .sum();
        assert_eq!(exact, marginal);
        println!("  P(degree-1 = {k}) = {}", format_rational(&exact));
    }

    // Expected edges: n planted by the permutation, the rest Bernoulli.
    println!("\nexpected edge count, beta = 1:");
    for n in [1usize, 4, 10, 100] {
        let exact = expected_edges(n, &beta);
        let asymptotic = (n * n) as f64 / 2.0;
        println!(
            "  n={n:>3}: exact {} ~ beta n^2/(1+beta) = {asymptotic} (ratio {:.4})",
            format_rational(&exact),
            exact.to_f64().unwrap() / asymptotic
        );
    }
}
