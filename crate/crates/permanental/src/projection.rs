//! The two projections from `(n+1)`-graphs to `n`-graphs and their exact
//! preimage enumeration.
//!
//! Subselection keeps the top-left block. Delete-and-repair removes the
//! last vertex and adds an edge `i -> j` (self-pairs included) whenever the
//! two-step path `i -> last -> j` was present:
//!
//! ```text
//! result[i][j] = G[i][j] OR (G[i][last] AND G[last][j])
//! ```
//!
//! The deleted vertex is always the highest-index one; to project out an
//! arbitrary vertex, conjugate it into last position first.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{DirectedGraph, Permutation};

/// Largest base size for exhaustive preimage enumeration.
pub const MAX_PREIMAGE_BASE: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionOp {
    /// Keep the top-left `(n-1) x (n-1)` block.
    Ss,
    /// Delete the last vertex, repairing two-step paths through it.
    Dr,
}

impl ProjectionOp {
    pub fn apply(self, g: &DirectedGraph) -> Result<DirectedGraph> {
        match self {
            ProjectionOp::Ss => subselect(g),
            ProjectionOp::Dr => delete_and_repair(g),
        }
    }
}

impl std::fmt::Display for ProjectionOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjectionOp::Ss => write!(f, "ss"),
            ProjectionOp::Dr => write!(f, "dr"),
        }
    }
}

/// Top-left block of the adjacency matrix.
pub fn subselect(g: &DirectedGraph) -> Result<DirectedGraph> {
    let n = g.n();
    if n < 2 {
        return Err(Error::ProjectionUnderflow);
    }
    let mask = (1u64 << (n - 1)) - 1;
    let rows = (0..n - 1).map(|i| g.row(i) & mask).collect();
    DirectedGraph::new(n - 1, rows)
}

/// Deletes the last vertex and repairs every pair (including self pairs)
/// that was joined by a length-2 path through it.
pub fn delete_and_repair(g: &DirectedGraph) -> Result<DirectedGraph> {
    let n = g.n();
    if n < 2 {
        return Err(Error::ProjectionUnderflow);
    }
    let last = n - 1;
    let mask = (1u64 << last) - 1;
    let last_row = g.row(last) & mask;
    let rows = (0..last)
        .map(|i| {
            let mut row = g.row(i) & mask;
            if g.has_edge(i, last) {
                row |= last_row;
            }
            row
        })
        .collect();
    DirectedGraph::new(last, rows)
}

/// All graphs one level up that project onto a fixed base graph.
///
/// Members are generated in a canonical order: lexicographic in the last
/// row, then the last column, then the corner, then the free top-left cells.
#[derive(Clone, Debug)]
pub struct PreimageSet {
    base: DirectedGraph,
    members: Vec<DirectedGraph>,
}

impl PreimageSet {
    pub fn base(&self) -> &DirectedGraph {
        &self.base
    }

    /// Size of the graphs in the set (`base.n() + 1`).
    pub fn level(&self) -> usize {
        self.base.n() + 1
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[DirectedGraph] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DirectedGraph> {
        self.members.iter()
    }

    /// Keeps only the members satisfying the predicate.
    pub fn filtered(self, mut predicate: impl FnMut(&DirectedGraph) -> bool) -> Self {
        PreimageSet {
            base: self.base,
            members: self.members.into_iter().filter(|g| predicate(g)).collect(),
        }
    }
}

fn check_base(g: &DirectedGraph, what: &'static str) -> Result<()> {
    if g.n() > MAX_PREIMAGE_BASE {
        return Err(Error::Capacity {
            what,
            n: g.n(),
            limit: MAX_PREIMAGE_BASE,
        });
    }
    Ok(())
}

/// Subselection preimages: the top-left block is pinned to the base and the
/// `2n + 1` new cells are free, so there are exactly `2^(2n+1)` members.
pub fn preimages_ss(g: &DirectedGraph) -> Result<PreimageSet> {
    check_base(g, "subselection preimage enumeration")?;
    let n = g.n();
    let mut members = Vec::with_capacity(1usize << (2 * n + 1));
    for last_row in 0u64..1 << n {
        for last_col in 0u64..1 << n {
            for corner in 0u64..2 {
                let mut rows: Vec<u64> = (0..n)
                    .map(|i| g.row(i) | (last_col >> i & 1) << n)
                    .collect();
                rows.push(last_row | corner << n);
                members.push(DirectedGraph::new(n + 1, rows).expect("constructed in range"));
            }
        }
    }
    Ok(PreimageSet {
        base: g.clone(),
        members,
    })
}

/// Delete-and-repair preimages by the border census.
///
/// Fix the last row `r`, last column `c`, and corner `d` of a candidate
/// `G'`. Projecting forces the top-left block `H` cell by cell:
///
/// * where `c_i AND r_j = 0` the repair term vanishes, so `H[i][j]` must
///   equal the base cell;
/// * where `c_i AND r_j = 1` the projected cell is 1 regardless of `H`, so
///   the base cell must be 1 (otherwise this border has no preimages) and
///   `H[i][j]` is free.
///
/// Summing `2^(free cells)` over compatible borders enumerates the whole
/// fibre without scanning all `2^((n+1)^2)` graphs.
pub fn preimages_dr(g: &DirectedGraph) -> Result<PreimageSet> {
    check_base(g, "delete-and-repair preimage enumeration")?;
    let n = g.n();
    let mut members = Vec::new();
    for last_row in 0u64..1 << n {
        for last_col in 0u64..1 << n {
            // Compatibility: every repaired cell must be an edge of the base.
            let mut compatible = true;
            let mut free_cells: Vec<(usize, usize)> = Vec::new();
            for i in 0..n {
                if last_col >> i & 1 == 0 {
                    continue;
                }
                if last_row & !g.row(i) != 0 {
                    compatible = false;
                    break;
                }
                let mut bits = last_row;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    free_cells.push((i, j));
                }
            }
            if !compatible {
                continue;
            }
            for corner in 0u64..2 {
                for assignment in 0u64..1 << free_cells.len() {
                    let mut rows: Vec<u64> = (0..n)
                        .map(|i| g.row(i) | (last_col >> i & 1) << n)
                        .collect();
                    for (t, &(i, j)) in free_cells.iter().enumerate() {
                        if assignment >> t & 1 == 0 {
                            rows[i] &= !(1u64 << j);
                        }
                    }
                    rows.push(last_row | corner << n);
                    members.push(DirectedGraph::new(n + 1, rows).expect("constructed in range"));
                }
            }
        }
    }
    Ok(PreimageSet {
        base: g.clone(),
        members,
    })
}

/// The `n + 1` permutations one level up that delete-and-repair down to
/// `sigma`: the new element inserted after each existing element, plus the
/// new element as a fixed point. Exactly one of them (the fixed point) gains
/// a cycle; the others keep the cycle count of `sigma`.
pub fn permutation_dr_preimages(sigma: &Permutation) -> Vec<Permutation> {
    let n = sigma.n();
    let mut result = Vec::with_capacity(n + 1);
    for after in 0..n {
        // Splice: after -> new -> sigma(after).
        let mut image: Vec<usize> = sigma.image().to_vec();
        image.push(sigma.apply(after));
        image[after] = n;
        result.push(Permutation::from_image(image).expect("splice is a bijection"));
    }
    let mut image: Vec<usize> = sigma.image().to_vec();
    image.push(n);
    result.push(Permutation::from_image(image).expect("extension is a bijection"));
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::enumerate_graphs;
    use crate::permanent::has_permutation;

    fn three_cycle_graph() -> DirectedGraph {
        Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap().to_graph()
    }

    #[test]
    fn worked_example_three_cycle() {
        // Subselection chops the cycle open; delete-and-repair reroutes it.
        let g = three_cycle_graph();
        assert_eq!(subselect(&g).unwrap().rows(), &[0b10, 0b00]);
        assert_eq!(delete_and_repair(&g).unwrap().rows(), &[0b10, 0b01]);
    }

    #[test]
    fn projections_reject_single_vertex() {
        let g = DirectedGraph::identity(1).unwrap();
        assert!(matches!(subselect(&g), Err(Error::ProjectionUnderflow)));
        assert!(matches!(delete_and_repair(&g), Err(Error::ProjectionUnderflow)));
    }

    #[test]
    fn identity_projects_to_identity() {
        for n in 2..=6 {
            let g = DirectedGraph::identity(n).unwrap();
            assert_eq!(subselect(&g).unwrap(), DirectedGraph::identity(n - 1).unwrap());
            assert_eq!(delete_and_repair(&g).unwrap(), DirectedGraph::identity(n - 1).unwrap());
        }
    }

    #[test]
    fn dr_of_permutation_with_fixed_last_point_restricts() {
        let sigma = Permutation::from_cycles(4, &[vec![0, 2], vec![1]]).unwrap();
        let mut image = sigma.image().to_vec();
        image.push(4);
        let extended = Permutation::from_image(image).unwrap();
        assert_eq!(
            delete_and_repair(&extended.to_graph()).unwrap(),
            sigma.to_graph()
        );
    }

    #[test]
    fn ss_preimage_counts() {
        let base = DirectedGraph::identity(1).unwrap();
        let pre = preimages_ss(&base).unwrap();
        assert_eq!(pre.len(), 8);
        for n in 1..=3 {
            let g = DirectedGraph::identity(n).unwrap();
            assert_eq!(preimages_ss(&g).unwrap().len(), 1 << (2 * n + 1));
        }
    }

    #[test]
    fn ss_preimages_round_trip() {
        for g in enumerate_graphs(2).unwrap() {
            let pre = preimages_ss(&g).unwrap();
            for member in pre.iter() {
                assert_eq!(subselect(member).unwrap(), g);
            }
        }
    }

    #[test]
    fn dr_preimages_of_loop_graph() {
        // Brute-force oracle over all 16 two-graphs.
        let base = DirectedGraph::new(1, vec![1]).unwrap();
        let brute: Vec<DirectedGraph> = enumerate_graphs(2)
            .unwrap()
            .filter(|g| delete_and_repair(g).unwrap() == base)
            .collect();
        assert_eq!(brute.len(), 10);

        let census = preimages_dr(&base).unwrap();
        assert_eq!(census.len(), 10);
        let mut a: Vec<_> = census.members().to_vec();
        let mut b = brute;
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn dr_census_matches_direct_scan_at_n3() {
        // Every 2-graph: the census fibre must equal a scan over all 512
        // three-graphs, member for member.
        for base in enumerate_graphs(2).unwrap() {
            let mut scan: Vec<DirectedGraph> = enumerate_graphs(3)
                .unwrap()
                .filter(|g| delete_and_repair(g).unwrap() == base)
                .collect();
            let mut census = preimages_dr(&base).unwrap().members().to_vec();
            scan.sort();
            census.sort();
            assert_eq!(scan, census, "fibre mismatch over {base:?}");
        }
    }

    #[test]
    fn dr_preimages_have_no_duplicates() {
        for base in enumerate_graphs(2).unwrap() {
            let mut members = preimages_dr(&base).unwrap().members().to_vec();
            let before = members.len();
            members.sort();
            members.dedup();
            assert_eq!(members.len(), before);
        }
    }

    #[test]
    fn permutation_preimage_structure() {
        // The worked four-cycle: five preimages, exactly one gaining a cycle.
        let sigma = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let pre = permutation_dr_preimages(&sigma);
        assert_eq!(pre.len(), 5);
        let expected = [
            "(1 2 3 4 5)",
            "(1 2 3 5 4)",
            "(1 2 5 3 4)",
            "(1 5 2 3 4)",
            "(1 2 3 4)(5)",
        ];
        let mut got: Vec<String> = pre.iter().map(Permutation::to_cycle_string).collect();
        let mut want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(
            pre.iter()
                .filter(|p| p.cycle_count() == sigma.cycle_count() + 1)
                .count(),
            1
        );
        for p in &pre {
            assert_eq!(delete_and_repair(&p.to_graph()).unwrap(), sigma.to_graph());
        }
    }

    #[test]
    fn dr_commutes_with_conjugation_fixing_last_vertex() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..50 {
            let g = DirectedGraph::random(5, &mut rng).unwrap();
            // Random permutation of the first four vertices, last one fixed.
            let mut image: Vec<usize> = (0..4).collect();
            for i in (1..4).rev() {
                let j = rng.random_range(0..=i);
                image.swap(i, j);
            }
            let tau_small = Permutation::from_image(image.clone()).unwrap();
            image.push(4);
            let tau = Permutation::from_image(image).unwrap();
            assert_eq!(
                delete_and_repair(&g.conjugate(&tau).unwrap()).unwrap(),
                delete_and_repair(&g).unwrap().conjugate(&tau_small).unwrap()
            );
        }
    }

    #[test]
    fn filtered_keeps_only_matching_members() {
        let base = DirectedGraph::new(1, vec![1]).unwrap();
        let pre = preimages_dr(&base).unwrap().filtered(has_permutation);
        assert!(pre.len() < 10);
        assert!(pre.iter().all(has_permutation));
    }
}
