//! Exact alpha-weighted permanents.
//!
//! `per_alpha(G) = sum over sigma in S_n of alpha^(#sigma) * prod_i G[i][sigma(i)]`,
//! where `#sigma` is the number of cycles. For a boolean graph the product is
//! the indicator that `sigma` is contained in `G`, so the whole functional is
//! captured by the cycle polynomial: the vector `c_k` counting contained
//! permutations with exactly `k` cycles. `per_1` is the ordinary permanent
//! and `per_{-1}(G) = (-1)^n det(G)`.
//!
//! Two independent routes are provided: a factorial-enumeration oracle and a
//! subset dynamic program that extends cycle covers one cycle at a time,
//! anchoring every cycle at its smallest vertex so each cover is counted
//! exactly once.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::{DirectedGraph, Permutation};

/// Factorial-enumeration budget for the brute-force oracles.
pub const MAX_ORACLE_VERTICES: usize = 10;

/// Default budget for the subset dynamic program (`O(3^n)` time).
pub const MAX_CYCLE_POLY_VERTICES: usize = 18;

/// Hard cap even when the caller accepts the cost: all intermediate counts
/// are bounded by `n!`, and `20! < 2^64` keeps the u64 kernel exact.
pub const MAX_CYCLE_POLY_FORCED: usize = 20;

/// Ryser-formula budget (`2^n` signed i128 accumulation).
pub const MAX_RYSER_VERTICES: usize = 16;

/// The cycle polynomial of a boolean graph: `coefficient(k)` counts the
/// permutations contained in the graph that have exactly `k` cycles, so
/// `per_alpha = sum_k c_k alpha^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclePolynomial {
    n: usize,
    coeffs: Vec<BigUint>, // index k = cycle count; coeffs[0] is always zero
}

impl CyclePolynomial {
    fn from_counts(n: usize, counts: &[u64]) -> Self {
        let mut coeffs = vec![BigUint::zero(); n + 1];
        for (k, &c) in counts.iter().enumerate() {
            coeffs[k] = BigUint::from(c);
        }
        CyclePolynomial { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c_k`; zero outside `1..=n`.
    pub fn coefficient(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Coefficients `c_1..c_n` in cycle-count order.
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coeffs[1..]
    }

    /// Total number of permutations contained in the graph (`per_1`).
    pub fn total_permutations(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Pure polynomial evaluation `sum_k c_k alpha^k` at any rational.
    pub fn evaluate(&self, alpha: &BigRational) -> BigRational {
        // Horner over k = n..1.
        let mut acc = BigRational::zero();
        for k in (1..=self.n).rev() {
            acc = (acc + BigRational::from_integer(BigInt::from(self.coeffs[k].clone()))) * alpha;
        }
        acc
    }
}

/// Cycle-cover subset DP, `O(poly(n) * 3^n)` time, within the default budget.
pub fn cycle_polynomial(g: &DirectedGraph) -> Result<CyclePolynomial> {
    if g.n() > MAX_CYCLE_POLY_VERTICES {
        return Err(Error::Capacity {
            what: "cycle polynomial DP",
            n: g.n(),
            limit: MAX_CYCLE_POLY_VERTICES,
        });
    }
    Ok(CyclePolynomial::from_counts(g.n(), &cycle_cover_dp(g)))
}

/// Same DP without the default budget, for callers who accept the
/// exponential cost. Still refuses sizes where the u64 kernel could lose
/// exactness.
pub fn cycle_polynomial_accepting_cost(g: &DirectedGraph) -> Result<CyclePolynomial> {
    if g.n() > MAX_CYCLE_POLY_FORCED {
        return Err(Error::Capacity {
            what: "cycle polynomial DP (forced)",
            n: g.n(),
            limit: MAX_CYCLE_POLY_FORCED,
        });
    }
    Ok(CyclePolynomial::from_counts(g.n(), &cycle_cover_dp(g)))
}

/// Counts cycle covers of `g` grouped by number of cycles.
///
/// Phase 1 counts, for every vertex subset `S`, the directed cycles whose
/// vertex set is exactly `S` (each such cycle passes through `min S`, which
/// is where the path DP is rooted). Phase 2 assembles covers: the state for a
/// subset `D` is reached by choosing the cycle through `min D` and recursing
/// on the rest, so every cover is built in exactly one order.
///
/// All counts are bounded by `n! <= 20!`, which fits u64.
fn cycle_cover_dp(g: &DirectedGraph) -> Vec<u64> {
    let n = g.n();
    let full: usize = (1usize << n) - 1;

    // cycles[s] = number of directed cycles in g with vertex set exactly s.
    let mut cycles = vec![0u64; full + 1];
    for anchor in 0..n {
        let m = n - anchor; // local universe: vertices anchor..n-1
        let local = |v: usize| v - anchor;
        // paths[mask * m + u] = simple paths anchor -> u covering `mask`.
        let mut paths = vec![0u64; (1usize << m) * m];
        let start_mask = 1usize; // just the anchor, local bit 0
        paths[start_mask * m + local(anchor)] = 1;
        for mask in 1usize..1 << m {
            if mask & 1 == 0 {
                continue; // every path starts at the anchor
            }
            for u_local in 0..m {
                let count = paths[mask * m + u_local];
                if count == 0 {
                    continue;
                }
                let u = anchor + u_local;
                // close the cycle
                if g.has_edge(u, anchor) {
                    cycles[mask << anchor] += count;
                }
                // extend the path
                let mut out = g.row(u) >> anchor;
                out &= !(mask as u64);
                while out != 0 {
                    let v_local = out.trailing_zeros() as usize;
                    out &= out - 1;
                    let next = mask | 1 << v_local;
                    paths[next * m + v_local] += count;
                }
            }
        }
    }
    // Self-loop "cycles" of length 1 are already handled above: mask = {anchor}
    // closes via g.has_edge(anchor, anchor).

    // covers[d * (n+1) + k] = cycle covers of subset d using exactly k cycles.
    let width = n + 1;
    let mut covers = vec![0u64; (full + 1) * width];
    covers[0] = 1; // empty cover of the empty set
    for d in 1usize..=full {
        let low = d & d.wrapping_neg(); // bit of min(d)
        let rest = d ^ low;
        // Enumerate subsets c of d that contain min(d).
        let mut sub = rest;
        loop {
            let c = sub | low;
            let cyc = cycles[c];
            if cyc != 0 {
                let other = d ^ c;
                for k in 0..n {
                    let prev = covers[other * width + k];
                    if prev != 0 {
                        covers[d * width + k + 1] += cyc * prev;
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }

    covers[full * width..(full + 1) * width].to_vec()
}

/// True iff the graph contains at least one permutation (`per_1 > 0`),
/// decided by bipartite row-to-column matching.
pub fn has_permutation(g: &DirectedGraph) -> bool {
    let n = g.n();
    let mut col_owner = vec![usize::MAX; n];

    fn augment(g: &DirectedGraph, row: usize, visited: &mut [bool], col_owner: &mut [usize]) -> bool {
        let mut bits = g.row(row);
        while bits != 0 {
            let col = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if visited[col] {
                continue;
            }
            visited[col] = true;
            if col_owner[col] == usize::MAX
                || augment(g, col_owner[col], visited, col_owner)
            {
                col_owner[col] = row;
                return true;
            }
        }
        false
    }

    for row in 0..n {
        let mut visited = vec![false; n];
        if !augment(g, row, &mut visited, &mut col_owner) {
            return false;
        }
    }
    true
}

/// Brute-force census of contained permutations grouped by cycle count:
/// the factorial-enumeration oracle for [`cycle_polynomial`].
pub fn cycle_census_bruteforce(g: &DirectedGraph) -> Result<Vec<u64>> {
    let n = g.n();
    if n > MAX_ORACLE_VERTICES {
        return Err(Error::Capacity {
            what: "factorial permanent oracle",
            n,
            limit: MAX_ORACLE_VERTICES,
        });
    }
    let mut counts = vec![0u64; n + 1];
    for sigma in Permutation::enumerate(n)? {
        if g.contains_permutation(&sigma)? {
            counts[sigma.cycle_count()] += 1;
        }
    }
    Ok(counts)
}

/// A square matrix of exact rationals; the domain of the general-purpose
/// `per_alpha` oracle.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>, // row-major
}

impl RationalMatrix {
    pub fn new(n: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: n * n,
            });
        }
        Ok(RationalMatrix { n, entries })
    }

    pub fn from_graph(g: &DirectedGraph) -> Self {
        let n = g.n();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(if g.has_edge(i, j) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
        }
        RationalMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination with
    /// partial pivoting over the rationals.
    pub fn determinant(&self) -> BigRational {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !m[r * n + col].is_zero()) {
                Some(r) => r,
                None => return BigRational::zero(),
            };
            if pivot_row != col {
                for j in 0..n {
                    m.swap(pivot_row * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = m[col * n + col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[r * n + col].is_zero() {
                    continue;
                }
                let factor = &m[r * n + col] / &pivot;
                for j in col..n {
                    let sub = &factor * &m[col * n + j];
                    m[r * n + j] -= sub;
                }
            }
        }
        det
    }
}

/// The defining factorial sum, evaluated term by term: for every permutation
/// the entry product is taken literally (with early exit on a zero factor)
/// and weighted by `alpha^(#sigma)`.
pub fn alpha_permanent_bruteforce(a: &RationalMatrix, alpha: &BigRational) -> Result<BigRational> {
    let n = a.n();
    if n > MAX_ORACLE_VERTICES {
        return Err(Error::Capacity {
            what: "factorial permanent oracle",
            n,
            limit: MAX_ORACLE_VERTICES,
        });
    }
    let mut alpha_powers = Vec::with_capacity(n + 1);
    alpha_powers.push(BigRational::one());
    for k in 1..=n {
        let next = &alpha_powers[k - 1] * alpha;
        alpha_powers.push(next);
    }
    let mut total = BigRational::zero();
    for sigma in Permutation::enumerate(n)? {
        let mut product = BigRational::one();
        let mut zero = false;
        for i in 0..n {
            let entry = a.get(i, sigma.apply(i));
            if entry.is_zero() {
                zero = true;
                break;
            }
            product *= entry;
        }
        if !zero {
            total += &alpha_powers[sigma.cycle_count()] * product;
        }
    }
    Ok(total)
}

/// Oracle specialization for boolean graphs: group the factorial sum by
/// cycle count, then evaluate the resulting polynomial.
pub fn alpha_permanent_graph_bruteforce(
    g: &DirectedGraph,
    alpha: &BigRational,
) -> Result<BigRational> {
    let counts = cycle_census_bruteforce(g)?;
    Ok(CyclePolynomial::from_counts(g.n(), &counts).evaluate(alpha))
}

/// Ordinary permanent of a boolean matrix by the Ryser inclusion-exclusion
/// formula; a third route, independent of both the DP and the factorial
/// enumeration.
pub fn ryser_permanent(g: &DirectedGraph) -> Result<BigUint> {
    let n = g.n();
    if n > MAX_RYSER_VERTICES {
        return Err(Error::Capacity {
            what: "Ryser permanent",
            n,
            limit: MAX_RYSER_VERTICES,
        });
    }
    let mut total: i128 = 0;
    for subset in 0u64..1u64 << n {
        let mut product: i128 = 1;
        for i in 0..n {
            let sum = (g.row(i) & subset).count_ones() as i128;
            product *= sum;
            if product == 0 {
                break;
            }
        }
        if product != 0 {
            let sign = if (n as u32 - subset.count_ones()) % 2 == 0 {
                1
            } else {
                -1
            };
            total += sign * product;
        }
    }
    debug_assert!(total >= 0);
    Ok(BigUint::from(total as u128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::enumerate_graphs;
    use num_traits::ToPrimitive;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn complete_graph_counts_are_stirling_numbers() {
        // Oracle first: the census of S_3 grouped by cycle count.
        let counts = cycle_census_bruteforce(&DirectedGraph::complete(3).unwrap()).unwrap();
        assert_eq!(&counts[1..], &[2, 3, 1]);
        let p = cycle_polynomial(&DirectedGraph::complete(3).unwrap()).unwrap();
        assert_eq!(p.coefficient(1).to_u64(), Some(2));
        assert_eq!(p.coefficient(2).to_u64(), Some(3));
        assert_eq!(p.coefficient(3).to_u64(), Some(1));
        assert_eq!(p.coefficient(0).to_u64(), Some(0));
        assert_eq!(p.coefficient(4).to_u64(), Some(0));
    }

    #[test]
    fn evaluation_matches_known_values() {
        let p = cycle_polynomial(&DirectedGraph::complete(3).unwrap()).unwrap();
        assert_eq!(p.evaluate(&int(1)), int(6));
        // J_3 is singular, so per_{-1} = (-1)^3 det = 0.
        assert_eq!(p.evaluate(&int(-1)), int(0));
        // Rising factorial: per_alpha(J_n) = alpha (alpha+1) ... (alpha+n-1).
        assert_eq!(p.evaluate(&int(2)), int(2 * 3 * 4));
        assert_eq!(p.evaluate(&rat(1, 2)), rat(1, 2) * rat(3, 2) * rat(5, 2));
    }

    #[test]
    fn identity_graph_has_alpha_to_the_n() {
        for n in 1..=6 {
            let p = cycle_polynomial(&DirectedGraph::identity(n).unwrap()).unwrap();
            for k in 1..=n {
                let expect = if k == n { 1 } else { 0 };
                assert_eq!(p.coefficient(k).to_u64(), Some(expect));
            }
        }
    }

    #[test]
    fn zero_graph_contains_nothing() {
        let p = cycle_polynomial(&DirectedGraph::zero(4).unwrap()).unwrap();
        assert!(p.total_permutations().is_zero());
        assert!(!has_permutation(&DirectedGraph::zero(4).unwrap()));
    }

    #[test]
    fn dp_matches_oracle_exhaustively_small() {
        for n in 1..=3 {
            for g in enumerate_graphs(n).unwrap() {
                let counts = cycle_census_bruteforce(&g).unwrap();
                let p = cycle_polynomial(&g).unwrap();
                for k in 0..=n {
                    assert_eq!(p.coefficient(k), BigUint::from(counts[k]), "graph {g:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn dp_matches_oracle_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(11);
        let alphas = [rat(1, 2), int(1), int(2), rat(7, 3)];
        for n in [4usize, 5, 6] {
            for _ in 0..25 {
                let g = DirectedGraph::random(n, &mut rng).unwrap();
                let p = cycle_polynomial(&g).unwrap();
                for alpha in &alphas {
                    assert_eq!(
                        p.evaluate(alpha),
                        alpha_permanent_graph_bruteforce(&g, alpha).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn determinant_identity_on_boolean_graphs() {
        let mut rng = StdRng::seed_from_u64(12);
        for n in 2..=6 {
            for _ in 0..10 {
                let g = DirectedGraph::random(n, &mut rng).unwrap();
                let p = cycle_polynomial(&g).unwrap();
                let det = RationalMatrix::from_graph(&g).determinant();
                let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                assert_eq!(p.evaluate(&int(-1)), sign * det);
            }
        }
    }

    #[test]
    fn rational_oracle_on_the_all_ones_matrix() {
        // per_alpha(J_n) = alpha (alpha+1) ... (alpha+n-1), straight from
        // the defining sum.
        for n in 1..=5 {
            let m = RationalMatrix::from_graph(&DirectedGraph::complete(n).unwrap());
            for alpha in [rat(1, 2), int(1), rat(7, 3)] {
                let expect = crate::crp::rising_factorial(&alpha, n);
                assert_eq!(alpha_permanent_bruteforce(&m, &alpha).unwrap(), expect);
            }
        }
    }

    #[test]
    fn determinant_identity_on_rational_matrices() {
        let mut rng = StdRng::seed_from_u64(13);
        for n in 1..=5 {
            for _ in 0..5 {
                let entries: Vec<BigRational> = (0..n * n)
                    .map(|_| rat(rng.random_range(-3..=3), rng.random_range(1..=3)))
                    .collect();
                let m = RationalMatrix::new(n, entries).unwrap();
                let per = alpha_permanent_bruteforce(&m, &int(-1)).unwrap();
                let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                assert_eq!(per, sign * m.determinant());
            }
        }
    }

    #[test]
    fn ryser_agrees_with_dp_at_alpha_one() {
        let mut rng = StdRng::seed_from_u64(14);
        for n in 1..=12 {
            for _ in 0..10 {
                let g = DirectedGraph::random(n, &mut rng).unwrap();
                let dp = cycle_polynomial(&g).unwrap().total_permutations();
                assert_eq!(ryser_permanent(&g).unwrap(), dp);
            }
        }
    }

    #[test]
    fn matching_test_agrees_with_census() {
        let mut rng = StdRng::seed_from_u64(15);
        for n in 1..=6 {
            for _ in 0..40 {
                let g = DirectedGraph::random(n, &mut rng).unwrap();
                let expected = cycle_census_bruteforce(&g).unwrap().iter().sum::<u64>() > 0;
                assert_eq!(has_permutation(&g), expected);
            }
        }
    }

    #[test]
    fn capacity_errors() {
        let big = DirectedGraph::zero(19).unwrap();
        assert!(matches!(cycle_polynomial(&big), Err(Error::Capacity { .. })));
        let too_big = DirectedGraph::zero(21).unwrap();
        assert!(matches!(
            cycle_polynomial_accepting_cost(&too_big),
            Err(Error::Capacity { .. })
        ));
        let oracle_big = DirectedGraph::zero(11).unwrap();
        assert!(matches!(
            cycle_census_bruteforce(&oracle_big),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn partition_graph_cycle_structure() {
        use crate::graphs::Partition;
        // Blocks {1,2,3},{4}: permutations whose cycles coincide with the
        // blocks number (3-1)! * (1-1)! = 2, both with 2 cycles; the full
        // polynomial counts every within-block permutation.
        let pi = Partition::from_blocks(4, &[vec![0, 1, 2], vec![3]]).unwrap();
        let g = pi.to_graph();
        let coinciding = Permutation::enumerate(4)
            .unwrap()
            .filter(|s| g.contains_permutation(s).unwrap())
            .filter(|s| {
                let mut cycles: Vec<Vec<usize>> = s
                    .cycles()
                    .into_iter()
                    .map(|mut c| {
                        c.sort_unstable();
                        c
                    })
                    .collect();
                cycles.sort();
                cycles == pi.blocks()
            })
            .count();
        assert_eq!(coinciding, 2);
        // Full containment polynomial: rising(alpha,3) * alpha
        //   = 2 alpha^2 + 3 alpha^3 + alpha^4.
        let p = cycle_polynomial(&g).unwrap();
        let got: Vec<u64> = (1..=4).map(|k| p.coefficient(k).to_u64().unwrap()).collect();
        assert_eq!(got, vec![0, 2, 3, 1]);
    }

    #[test]
    fn conjugation_invariance_of_cycle_polynomial() {
        let mut rng = StdRng::seed_from_u64(16);
        for _ in 0..30 {
            let g = DirectedGraph::random(6, &mut rng).unwrap();
            let tau = Permutation::random(6, &mut rng);
            assert_eq!(
                cycle_polynomial(&g.conjugate(&tau).unwrap()).unwrap(),
                cycle_polynomial(&g).unwrap()
            );
        }
    }
}
