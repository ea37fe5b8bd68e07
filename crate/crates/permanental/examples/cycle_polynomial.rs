//! Cycle polynomials and the alpha-weighted permanent.
//!
//! ```bash
//! cargo run -p permanental --example cycle_polynomial
//! ```

use num_rational::BigRational;
use permanental::graphs::{DirectedGraph, Permutation};
use permanental::permanent::{
    alpha_permanent_graph_bruteforce, cycle_polynomial, ryser_permanent, RationalMatrix,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    // The complete graph contains every permutation, grouped by cycle count
    // the coefficients are the unsigned Stirling numbers of the first kind.
    let j3 = DirectedGraph::complete(3).unwrap();
    let p = cycle_polynomial(&j3).unwrap();
    println!("complete graph on 3 vertices:");
    for k in 1..=3 {
        println!("  permutations with {k} cycle(s): {}", p.coefficient(k));
    }

    // per_alpha(J_n) is the rising factorial alpha (alpha+1) (alpha+2).
    for alpha in [rat(1, 1), rat(2, 1), rat(7, 3)] {
        println!("  per_{{{alpha}}} = {}", p.evaluate(&alpha));
    }

    // per_1 is the ordinary permanent; per_{-1} recovers the determinant up
    // to sign. J_3 is singular, so it vanishes.
    println!("  per_1  = {} (Ryser route: {})", p.evaluate(&rat(1, 1)), ryser_permanent(&j3).unwrap());
    println!("  per_-1 = {}", p.evaluate(&rat(-1, 1)));
    println!(
        "  (-1)^3 det = {}",
        -RationalMatrix::from_graph(&j3).determinant()
    );

    // A sparse example: the union of a 4-cycle and a double swap contains
    // exactly those two permutations.
    let g = DirectedGraph::from_edges(
        4,
        &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2), (3, 0)],
    )
    .unwrap();
    let p = cycle_polynomial(&g).unwrap();
    println!("\nwitness graph ({} edges):", g.edge_count());
    print!("{g}");
    println!("cycle coefficients c_1..c_4: {:?}", p.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    println!("per_2 = {}", p.evaluate(&rat(2, 1)));

    // The subset DP and the factorial oracle always agree.
    let alpha = rat(7, 3);
    assert_eq!(
        p.evaluate(&alpha),
        alpha_permanent_graph_bruteforce(&g, &alpha).unwrap()
    );
    println!("subset DP agrees with the factorial oracle at alpha = 7/3");

    // Conjugation invariance: relabelling the vertices never changes the
    // polynomial.
    let tau = Permutation::from_cycles(4, &[vec![0, 2, 3]]).unwrap();
    assert_eq!(cycle_polynomial(&g.conjugate(&tau).unwrap()).unwrap(), p);
    println!("cycle polynomial is invariant under conjugation by {tau}");
}
