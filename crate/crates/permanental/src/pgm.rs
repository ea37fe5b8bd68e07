//! The Permanental Graph Model: `P(G) ∝ beta^(#G) per_alpha(G)` over all
//! n-graphs, for positive rationals `alpha` and `beta`.
//!
//! Interchanging the permutation and graph sums factors the normalizer as
//!
//! ```text
//! z_n(alpha, beta) = alpha_rising(n) * beta^n * (1+beta)^(n^2 - n)
//! ```
//!
//! and yields two structural consequences implemented here exactly: the
//! out-degree of a vertex minus one is Binomial(n-1, beta/(1+beta)), and the
//! model can be sampled in O(n^2) by drawing an Ewens permutation, planting
//! its `n` edges, and filling every remaining cell with an independent
//! Bernoulli(beta/(1+beta)) coin. The sampler is validated against the exact
//! pmf rather than trusted.
//!
//! Restricted support families (permutation matrices, partition matrices,
//! and friends) are provided with brute-force normalizers only.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::crp::{draw_crp_permutation, rising_factorial, uniform_below};
use crate::error::{Error, Result};
use crate::graphs::{enumerate_graphs, DirectedGraph, Partition, Permutation};
use crate::permanent::{cycle_polynomial, has_permutation};
use crate::rational::format_rational;

/// Brute-force normalization over the full space tops out at `2^(n^2)` terms.
pub const MAX_BRUTEFORCE_ALL: usize = 4;

/// Brute-force normalization over the small families (`n!` / Bell terms).
pub const MAX_BRUTEFORCE_FAMILY: usize = 6;

/// Exhaustive exchangeability checking enumerates the whole space.
pub const MAX_EXCHANGEABILITY_N: usize = 4;

/// Model size and the two positive rational parameters.
#[derive(Clone, PartialEq, Debug)]
pub struct PgmParams {
    n: usize,
    alpha: BigRational,
    beta: BigRational,
}

impl PgmParams {
    pub fn new(n: usize, alpha: BigRational, beta: BigRational) -> Result<Self> {
        if n == 0 || n > crate::graphs::MAX_VERTICES {
            return Err(Error::VertexCount {
                n,
                max: crate::graphs::MAX_VERTICES,
            });
        }
        if !alpha.is_positive() {
            return Err(Error::NonPositive {
                name: "alpha",
                value: format_rational(&alpha),
            });
        }
        if !beta.is_positive() {
            return Err(Error::NonPositive {
                name: "beta",
                value: format_rational(&beta),
            });
        }
        Ok(PgmParams { n, alpha, beta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }
}

/// A conjugation-closed support family containing at least one
/// permutation-bearing graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportFamily {
    /// The whole space `{0,1}^(n x n)`.
    All,
    /// Permutation matrices.
    Permutations,
    /// Equivalence relations (set partitions) as graphs.
    Partitions,
    /// Permutation matrices with empty diagonal; empty for `n = 1`.
    FixedPointFreePermutations,
    /// Permutation matrices consisting of a single cycle.
    SingleCyclePermutations,
}

impl std::fmt::Display for SupportFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SupportFamily::All => "all",
            SupportFamily::Permutations => "permutations",
            SupportFamily::Partitions => "partitions",
            SupportFamily::FixedPointFreePermutations => "fixed-point-free-permutations",
            SupportFamily::SingleCyclePermutations => "single-cycle-permutations",
        };
        write!(f, "{name}")
    }
}

/// Reads a permutation back out of its adjacency matrix, if the graph is one.
pub fn permutation_from_graph(g: &DirectedGraph) -> Option<Permutation> {
    let n = g.n();
    let mut image = Vec::with_capacity(n);
    let mut seen = 0u64;
    for i in 0..n {
        let row = g.row(i);
        if row.count_ones() != 1 {
            return None;
        }
        if row & seen != 0 {
            return None;
        }
        seen |= row;
        image.push(row.trailing_zeros() as usize);
    }
    Some(Permutation::from_image(image).expect("validated bijection"))
}

fn is_equivalence_graph(g: &DirectedGraph) -> bool {
    let n = g.n();
    for i in 0..n {
        if !g.has_edge(i, i) {
            return false;
        }
        for j in 0..n {
            if g.has_edge(i, j) {
                // Rows of related vertices must agree (symmetry + transitivity).
                if g.row(j) != g.row(i) {
                    return false;
                }
            }
        }
    }
    true
}

impl SupportFamily {
    pub fn contains(&self, g: &DirectedGraph) -> bool {
        match self {
            SupportFamily::All => true,
            SupportFamily::Permutations => permutation_from_graph(g).is_some(),
            SupportFamily::Partitions => is_equivalence_graph(g),
            SupportFamily::FixedPointFreePermutations => permutation_from_graph(g)
                .map(|p| p.image().iter().enumerate().all(|(i, &v)| i != v))
                .unwrap_or(false),
            SupportFamily::SingleCyclePermutations => permutation_from_graph(g)
                .map(|p| p.cycle_count() == 1)
                .unwrap_or(false),
        }
    }

    /// Every member at size `n`, within the per-family enumeration budget.
    pub fn members(&self, n: usize) -> Result<Vec<DirectedGraph>> {
        match self {
            SupportFamily::All => Ok(enumerate_graphs(n)?.collect()),
            SupportFamily::Permutations => {
                Ok(Permutation::enumerate(n)?.map(|p| p.to_graph()).collect())
            }
            SupportFamily::Partitions => {
                Ok(Partition::enumerate(n)?.map(|p| p.to_graph()).collect())
            }
            SupportFamily::FixedPointFreePermutations => Ok(Permutation::enumerate(n)?
                .filter(|p| p.image().iter().enumerate().all(|(i, &v)| i != v))
                .map(|p| p.to_graph())
                .collect()),
            SupportFamily::SingleCyclePermutations => Ok(Permutation::enumerate(n)?
                .filter(|p| p.cycle_count() == 1)
                .map(|p| p.to_graph())
                .collect()),
        }
    }

    /// Exhaustively checks closure under conjugation on the enumerated
    /// members at size `n`.
    pub fn condition1_conjugation_closed(&self, n: usize) -> Result<bool> {
        let members = self.members(n)?;
        for tau in Permutation::enumerate(n)? {
            for g in &members {
                if !self.contains(&g.conjugate(&tau)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Checks that some member contains a permutation.
    pub fn condition2_has_permutation_bearing_member(&self, n: usize) -> Result<bool> {
        Ok(self.members(n)?.iter().any(has_permutation))
    }
}

/// `alpha_rising(n) * beta^n * (1+beta)^(n^2-n)`, exactly.
pub fn normalizer_closed_form(params: &PgmParams) -> BigRational {
    let n = params.n;
    rising_factorial(&params.alpha, n)
        * pow_rational(&params.beta, n)
        * pow_rational(&(BigRational::one() + &params.beta), n * n - n)
}

fn pow_rational(base: &BigRational, exp: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// The weight `beta^(#G) per_alpha(G)` of one graph.
pub fn graph_weight(g: &DirectedGraph, params: &PgmParams) -> Result<BigRational> {
    if g.n() != params.n {
        return Err(Error::DimensionMismatch {
            left: g.n(),
            right: params.n,
        });
    }
    let per = cycle_polynomial(g)?.evaluate(&params.alpha);
    Ok(pow_rational(&params.beta, g.edge_count()) * per)
}

/// Sums `beta^(#G) per_alpha(G)` over the family by direct enumeration.
pub fn normalizer_bruteforce(params: &PgmParams, family: SupportFamily) -> Result<BigRational> {
    let limit = match family {
        SupportFamily::All => MAX_BRUTEFORCE_ALL,
        _ => MAX_BRUTEFORCE_FAMILY,
    };
    if params.n > limit {
        return Err(Error::Capacity {
            what: "brute-force normalizer",
            n: params.n,
            limit,
        });
    }
    if family == SupportFamily::All {
        // 2^(n^2) terms; exact rational addition commutes, so a parallel
        // reduction returns the same value on any thread count.
        let n = params.n;
        let total: u64 = 1u64 << (n * n);
        return (0..total)
            .into_par_iter()
            .map(|code| {
                let g = DirectedGraph::from_code(n, code).expect("code in range");
                graph_weight(&g, params)
            })
            .try_reduce(BigRational::zero, |a, b| Ok(a + b));
    }
    let mut total = BigRational::zero();
    for g in family.members(params.n)? {
        total += graph_weight(&g, params)?;
    }
    Ok(total)
}

/// Exact probability of one graph under the full-support model.
pub fn pmf(g: &DirectedGraph, params: &PgmParams) -> Result<BigRational> {
    Ok(graph_weight(g, params)? / normalizer_closed_form(params))
}

/// `P(out-degree - 1 = k) = C(n-1, k) beta^k / (1+beta)^(n-1)`.
pub fn degree_pmf(n: usize, beta: &BigRational, k: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::VertexCount {
            n,
            max: crate::graphs::MAX_VERTICES,
        });
    }
    if k > n - 1 {
        return Err(Error::DimensionMismatch {
            left: k,
            right: n - 1,
        });
    }
    let choose = num_integer::binomial(BigUint::from(n - 1), BigUint::from(k));
    Ok(BigRational::from_integer(choose.into()) * pow_rational(beta, k)
        / pow_rational(&(BigRational::one() + beta), n - 1))
}

/// Exact expected edge count: the planted permutation always contributes
/// `n` edges and each of the other `n^2 - n` cells is present with
/// probability `beta/(1+beta)`, so
/// `E[#G] = n + (n^2 - n) beta / (1 + beta)`.
pub fn expected_edges(n: usize, beta: &BigRational) -> BigRational {
    let cells = BigRational::from_integer(((n * n - n) as u64).into());
    BigRational::from_integer((n as u64).into())
        + cells * beta / (BigRational::one() + beta)
}

/// Exact two-stage sampler.
///
/// Draws a permutation from the Ewens(alpha) law, plants its edges, then
/// fills every off-permutation cell (row-major order) with an independent
/// exact Bernoulli(beta/(1+beta)) draw. The marginal law equals [`pmf`];
/// the acceptance suite checks this with a goodness-of-fit test instead of
/// taking the factorization on faith.
pub struct PgmSampler {
    params: PgmParams,
    rng: ChaCha8Rng,
    bern_num: BigUint,   // beta = s/t: success on draw < s
    bern_total: BigUint, // out of s + t
}

impl PgmSampler {
    pub fn new(params: PgmParams, seed: u64) -> Self {
        let s = params.beta.numer().magnitude().clone();
        let t = params.beta.denom().magnitude().clone();
        PgmSampler {
            params,
            rng: ChaCha8Rng::seed_from_u64(seed),
            bern_total: &s + &t,
            bern_num: s,
        }
    }

    pub fn params(&self) -> &PgmParams {
        &self.params
    }

    pub fn draw(&mut self) -> DirectedGraph {
        let n = self.params.n;
        let sigma = draw_crp_permutation(&mut self.rng, n, &self.params.alpha);
        let mut rows: Vec<u64> = sigma.to_graph().rows().to_vec();
        for i in 0..n {
            for j in 0..n {
                if sigma.apply(i) == j {
                    continue;
                }
                if uniform_below(&mut self.rng, &self.bern_total) < self.bern_num {
                    rows[i] |= 1u64 << j;
                }
            }
        }
        DirectedGraph::new(n, rows).expect("sampler stays in range")
    }
}

/// One-shot draw with a fresh seeded sampler.
pub fn sample(params: &PgmParams, seed: u64) -> DirectedGraph {
    PgmSampler::new(params.clone(), seed).draw()
}

/// Searches for a violation of conjugation invariance of an arbitrary
/// weight function: a pair `(G, tau)` with `w(G^tau) != w(G)`. Exhaustive
/// over graphs, randomized over `trials` conjugating permutations.
pub fn conjugation_invariance_witness(
    n: usize,
    trials: usize,
    seed: u64,
    weight: impl Fn(&DirectedGraph) -> BigRational,
) -> Result<Option<(DirectedGraph, Permutation)>> {
    if n > MAX_EXCHANGEABILITY_N {
        return Err(Error::Capacity {
            what: "exchangeability check",
            n,
            limit: MAX_EXCHANGEABILITY_N,
        });
    }
    let graphs: Vec<DirectedGraph> = enumerate_graphs(n)?.collect();
    let weights: Vec<BigRational> = graphs.iter().map(&weight).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let tau = Permutation::random(n, &mut rng);
        for (g, w) in graphs.iter().zip(&weights) {
            if weight(&g.conjugate(&tau)?) != *w {
                return Ok(Some((g.clone(), tau)));
            }
        }
    }
    Ok(None)
}

/// True iff the model pmf is invariant under `trials` random conjugations,
/// checked exhaustively over all `n`-graphs.
pub fn exchangeability_check(params: &PgmParams, trials: usize, seed: u64) -> Result<bool> {
    let z = normalizer_closed_form(params);
    let witness = conjugation_invariance_witness(params.n, trials, seed, |g| {
        graph_weight(g, params).expect("sizes match") / &z
    })?;
    Ok(witness.is_none())
}

/// Erdos-Renyi pmf with edge probability `beta/(1+beta)`, the natural
/// comparison model: `P(G) = beta^(#G) / (1+beta)^(n^2)`.
pub fn er_pmf(n: usize, beta: &BigRational, g: &DirectedGraph) -> Result<BigRational> {
    if g.n() != n {
        return Err(Error::DimensionMismatch { left: g.n(), right: n });
    }
    Ok(pow_rational(beta, g.edge_count())
        / pow_rational(&(BigRational::one() + beta), n * n))
}

/// Exact total-variation distance between the model and Erdos-Renyi with
/// the matched edge probability, by enumeration.
pub fn total_variation_vs_er(params: &PgmParams) -> Result<BigRational> {
    if params.n > MAX_BRUTEFORCE_ALL {
        return Err(Error::Capacity {
            what: "total-variation enumeration",
            n: params.n,
            limit: MAX_BRUTEFORCE_ALL,
        });
    }
    let mut total = BigRational::zero();
    for g in enumerate_graphs(params.n)? {
        let diff = pmf(&g, params)? - er_pmf(params.n, &params.beta, &g)?;
        total += diff.abs();
    }
    Ok(total / BigRational::from_integer(2.into()))
}
