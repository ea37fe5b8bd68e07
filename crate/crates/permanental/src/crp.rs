//! Ewens/CRP(alpha) distributions on permutations and set partitions.
//!
//! The permutation law is `P(sigma) = alpha^(#sigma) / alpha_rising(n)`,
//! where `alpha_rising(n) = alpha (alpha+1) ... (alpha+n-1)`. Pushed through
//! cycles -> blocks it becomes the partition law
//! `P(pi) = alpha^(#pi) prod_j (n_j - 1)! / alpha_rising(n)`.
//!
//! Both are generated by the restaurant seating process, and the permutation
//! law is consistent under delete-and-repair: the probability of `sigma` at
//! level `n` equals the total probability of its `n + 1` preimages at level
//! `n + 1`. [`consistency_check_dr`] verifies this identity exactly by
//! enumeration, together with the preimage census it rests on (exactly one
//! preimage gains a cycle). Under subselection the same family is *not*
//! consistent, which [`consistency_check_ss`] demonstrates.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graphs::{Partition, Permutation};
use crate::projection::{delete_and_repair, permutation_dr_preimages, subselect};
use crate::rational::format_rational;

/// Enumeration budget for the consistency checks (`(n+1)!` terms).
pub const MAX_CONSISTENCY_N: usize = 6;

/// Size and concentration parameter of an Ewens permutation law.
#[derive(Clone, PartialEq, Debug)]
pub struct EwensParams {
    n: usize,
    alpha: BigRational,
}

impl EwensParams {
    pub fn new(n: usize, alpha: BigRational) -> Result<Self> {
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
        Ok(EwensParams { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }
}

/// `alpha (alpha+1) (alpha+2) ... (alpha+n-1)`; empty product for `n = 0`.
pub fn rising_factorial(alpha: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    for k in 0..n {
        acc *= alpha + BigRational::from_integer(k.into());
    }
    acc
}

/// `alpha^(#sigma) / alpha_rising(n)`.
pub fn ewens_pmf(sigma: &Permutation, params: &EwensParams) -> Result<BigRational> {
    if sigma.n() != params.n {
        return Err(Error::DimensionMismatch {
            left: sigma.n(),
            right: params.n,
        });
    }
    let alpha_pow = power(&params.alpha, sigma.cycle_count());
    Ok(alpha_pow / rising_factorial(&params.alpha, params.n))
}

/// `alpha^(#pi) prod_j (n_j - 1)! / alpha_rising(n)`.
pub fn crp_partition_pmf(pi: &Partition, params: &EwensParams) -> Result<BigRational> {
    if pi.n() != params.n {
        return Err(Error::DimensionMismatch {
            left: pi.n(),
            right: params.n,
        });
    }
    let mut numer = power(&params.alpha, pi.block_count());
    for size in pi.block_sizes() {
        numer *= BigRational::from_integer(factorial(size - 1).into());
    }
    Ok(numer / rising_factorial(&params.alpha, params.n))
}

fn power(base: &BigRational, exp: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Uniform draw from `0..bound`, exact for arbitrary-size bounds.
pub(crate) fn uniform_below<R: Rng + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    debug_assert!(!bound.is_zero());
    if let Some(b) = bound.to_u128() {
        return BigUint::from(rng.random_range(0..b));
    }
    // Rejection sampling on the bit width of the bound.
    let bits = bound.bits();
    loop {
        let mut candidate = BigUint::zero();
        let mut remaining = bits;
        while remaining > 0 {
            let take = remaining.min(64);
            let chunk = rng.random::<u64>() >> (64 - take);
            candidate = (candidate << take) | BigUint::from(chunk);
            remaining -= take;
        }
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Seating-process sampler for the Ewens laws.
///
/// Element `k` (0-indexed) either opens its own cycle with probability
/// `alpha / (alpha + k)` or is inserted directly after one of the `k`
/// already-seated elements, each with probability `1 / (alpha + k)`. The
/// choice is made by an exact integer draw, so the marginal law is exactly
/// the pmf above. The stream is the portable ChaCha8 generator: a given
/// seed yields the same draws on every platform.
pub struct CrpSampler {
    params: EwensParams,
    rng: ChaCha8Rng,
}

impl CrpSampler {
    pub fn new(params: EwensParams, seed: u64) -> Self {
        CrpSampler {
            params,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn params(&self) -> &EwensParams {
        &self.params
    }

    pub fn draw_permutation(&mut self) -> Permutation {
        draw_crp_permutation(&mut self.rng, self.params.n, &self.params.alpha)
    }

    /// Cycles of a sampled permutation, as a partition.
    pub fn draw_partition(&mut self) -> Partition {
        Partition::from_permutation_cycles(&self.draw_permutation())
    }
}

pub(crate) fn draw_crp_permutation<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    alpha: &BigRational,
) -> Permutation {
    // alpha = p/q; the step-k weights are p (new cycle) and q per element.
    let p = alpha.numer().magnitude().clone();
    let q = alpha.denom().magnitude().clone();
    let mut image: Vec<usize> = vec![0];
    for k in 1..n {
        let total = &p + &q * BigUint::from(k);
        let draw = uniform_below(rng, &total);
        if draw < p {
            image.push(k); // own cycle
        } else {
            let j = ((draw - &p) / &q)
                .to_usize()
                .expect("index below k fits usize");
            image.push(image[j]); // splice: j -> k -> old sigma(j)
            image[j] = k;
        }
    }
    Permutation::from_image(image).expect("seating process yields a bijection")
}

/// Outcome of an exact consistency check, with the first violation if any.
#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub holds: bool,
    /// Level-`n` permutation whose preimage mass does not match, if any.
    pub witness: Option<Permutation>,
    /// Whether every permutation had `n + 1` preimages with exactly one of
    /// them gaining a cycle (delete-and-repair only; vacuous for ss).
    pub census_holds: bool,
}

/// Verifies, for every `sigma` in `S_n`, that the Ewens mass of the `n + 1`
/// delete-and-repair preimages at level `n + 1` sums exactly to the level-n
/// mass of `sigma`, and that the preimage census behind the identity holds.
pub fn consistency_check_dr(n: usize, alpha: &BigRational) -> Result<ConsistencyReport> {
    if n > MAX_CONSISTENCY_N {
        return Err(Error::Capacity {
            what: "delete-and-repair consistency check",
            n,
            limit: MAX_CONSISTENCY_N,
        });
    }
    let lower = EwensParams::new(n, alpha.clone())?;
    let upper = EwensParams::new(n + 1, alpha.clone())?;
    let mut holds = true;
    let mut census_holds = true;
    let mut witness = None;
    for sigma in Permutation::enumerate(n)? {
        let preimages = permutation_dr_preimages(&sigma);
        let gained = preimages
            .iter()
            .filter(|p| p.cycle_count() == sigma.cycle_count() + 1)
            .count();
        let kept = preimages
            .iter()
            .filter(|p| p.cycle_count() == sigma.cycle_count())
            .count();
        if preimages.len() != n + 1 || gained != 1 || kept != n {
            census_holds = false;
        }
        let mut mass = BigRational::zero();
        for p in &preimages {
            mass += ewens_pmf(p, &upper)?;
        }
        if mass != ewens_pmf(&sigma, &lower)? {
            holds = false;
            if witness.is_none() {
                witness = Some(sigma.clone());
            }
        }
    }
    Ok(ConsistencyReport {
        holds,
        witness,
        census_holds,
    })
}

/// Outcome of the partition-law consistency check.
#[derive(Clone, Debug)]
pub struct PartitionConsistencyReport {
    pub holds: bool,
    pub witness: Option<Partition>,
    /// Every partition of `[n]` has exactly `#pi + 1` preimages among the
    /// partitions of `[n+1]` (the new element joins each block or sits
    /// alone).
    pub census_holds: bool,
}

/// Verifies by enumeration that the seating-process law on set partitions
/// is delete-and-repair consistent: for every partition of `[n]`, the mass
/// of the level-(n+1) partitions whose graphs project onto its graph sums
/// exactly to its own mass. Preimages are found by projecting graphs, not
/// by the insertion construction, so the check is independent of it.
pub fn partition_consistency_check_dr(
    n: usize,
    alpha: &BigRational,
) -> Result<PartitionConsistencyReport> {
    if n > MAX_CONSISTENCY_N {
        return Err(Error::Capacity {
            what: "partition consistency check",
            n,
            limit: MAX_CONSISTENCY_N,
        });
    }
    let lower = EwensParams::new(n, alpha.clone())?;
    let upper = EwensParams::new(n + 1, alpha.clone())?;
    let upper_partitions: Vec<Partition> = Partition::enumerate(n + 1)?.collect();
    let mut holds = true;
    let mut census_holds = true;
    let mut witness = None;
    for pi in Partition::enumerate(n)? {
        let target = pi.to_graph();
        let mut mass = BigRational::zero();
        let mut fibre = 0usize;
        for candidate in &upper_partitions {
            if delete_and_repair(&candidate.to_graph())? == target {
                fibre += 1;
                mass += crp_partition_pmf(candidate, &upper)?;
            }
        }
        if fibre != pi.block_count() + 1 {
            census_holds = false;
        }
        if mass != crp_partition_pmf(&pi, &lower)? {
            holds = false;
            if witness.is_none() {
                witness = Some(pi.clone());
            }
        }
    }
    Ok(PartitionConsistencyReport {
        holds,
        witness,
        census_holds,
    })
}

/// The same total-probability check with subselection in place of
/// delete-and-repair: the preimages of `sigma` are the level-(n+1)
/// permutations whose matrix subselects to the matrix of `sigma`. The Ewens
/// family fails this for every `n`.
pub fn consistency_check_ss(n: usize, alpha: &BigRational) -> Result<ConsistencyReport> {
    if n > MAX_CONSISTENCY_N {
        return Err(Error::Capacity {
            what: "subselection consistency check",
            n,
            limit: MAX_CONSISTENCY_N,
        });
    }
    let lower = EwensParams::new(n, alpha.clone())?;
    let upper = EwensParams::new(n + 1, alpha.clone())?;
    let upper_perms: Vec<Permutation> = Permutation::enumerate(n + 1)?.collect();
    let mut holds = true;
    let mut witness = None;
    for sigma in Permutation::enumerate(n)? {
        let target = sigma.to_graph();
        let mut mass = BigRational::zero();
        for p in &upper_perms {
            if subselect(&p.to_graph())? == target {
                mass += ewens_pmf(p, &upper)?;
            }
        }
        if mass != ewens_pmf(&sigma, &lower)? {
            holds = false;
            if witness.is_none() {
                witness = Some(sigma.clone());
            }
        }
    }
    Ok(ConsistencyReport {
        holds,
        witness,
        census_holds: true,
    })
}
