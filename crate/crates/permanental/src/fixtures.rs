//! Canonical witness graphs and the star-pattern preimage families, shipped
//! both as parsed constants and as text files under `fixtures/` at the
//! workspace root.
//!
//! `g1` and `g2` are the 4-vertex witness pair for the impossibility
//! certificate: same edge count, same cycle polynomial (one single-cycle and
//! one two-cycle permutation each), but fibres of different weight under
//! delete-and-repair.

use crate::error::{Error, Result};
use crate::graphs::DirectedGraph;

pub const G1_TEXT: &str = include_str!("../../../fixtures/g1.txt");
pub const G2_TEXT: &str = include_str!("../../../fixtures/g2.txt");
pub const THREE_CYCLE_TEXT: &str = include_str!("../../../fixtures/perm_123.txt");
pub const G1_DR_PATTERNS_TEXT: &str = include_str!("../../../fixtures/g1_dr_patterns.txt");
pub const G2_DR_PATTERNS_TEXT: &str = include_str!("../../../fixtures/g2_dr_patterns.txt");

/// First witness graph: the 4-cycle joined with `(1 2)(3 4)` and the
/// `2 <-> 3` edges. Seven edges, contains exactly two permutations.
pub fn g1() -> DirectedGraph {
    DirectedGraph::parse(G1_TEXT).expect("fixture parses")
}

/// Second witness graph: the 4-cycle joined with `(1 2 3)(4)` and the
/// `2 <-> 3` edges. Same edge count and cycle polynomial as [`g1`].
pub fn g2() -> DirectedGraph {
    DirectedGraph::parse(G2_TEXT).expect("fixture parses")
}

/// The worked projection example: adjacency matrix of the 3-cycle.
pub fn three_cycle() -> DirectedGraph {
    DirectedGraph::parse(THREE_CYCLE_TEXT).expect("fixture parses")
}

/// An adjacency pattern whose cells are 0, 1, or free (`*`).
#[derive(Clone, Debug)]
pub struct GraphPattern {
    n: usize,
    ones: Vec<u64>,
    stars: Vec<u64>,
}

impl GraphPattern {
    pub fn parse(lines: &[&str]) -> Result<Self> {
        let n: usize = lines
            .first()
            .ok_or_else(|| Error::Parse("empty pattern".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::Parse("pattern must start with its size".into()))?;
        if lines.len() != n + 1 {
            return Err(Error::Parse(format!(
                "pattern of size {n} needs {n} rows, got {}",
                lines.len() - 1
            )));
        }
        let mut ones = vec![0u64; n];
        let mut stars = vec![0u64; n];
        for (i, line) in lines[1..].iter().enumerate() {
            let line = line.trim();
            if line.len() != n {
                return Err(Error::Parse(format!("pattern row {line:?} has wrong length")));
            }
            for (j, ch) in line.bytes().enumerate() {
                match ch {
                    b'1' => ones[i] |= 1 << j,
                    b'*' => stars[i] |= 1 << j,
                    b'0' => {}
                    _ => return Err(Error::Parse(format!("bad pattern cell {:?}", ch as char))),
                }
            }
        }
        Ok(GraphPattern { n, ones, stars })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn star_count(&self) -> usize {
        self.stars.iter().map(|s| s.count_ones() as usize).sum()
    }

    /// All `2^(star count)` graphs matching the pattern.
    pub fn expand(&self) -> Vec<DirectedGraph> {
        let positions: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| {
                let row = self.stars[i];
                (0..self.n).filter_map(move |j| (row >> j & 1 == 1).then_some((i, j)))
            })
            .collect();
        let mut graphs = Vec::with_capacity(1 << positions.len());
        for assignment in 0u64..1 << positions.len() {
            let mut rows = self.ones.clone();
            for (t, &(i, j)) in positions.iter().enumerate() {
                if assignment >> t & 1 == 1 {
                    rows[i] |= 1 << j;
                }
            }
            graphs.push(DirectedGraph::new(self.n, rows).expect("pattern stays in range"));
        }
        graphs
    }

    pub fn matches(&self, g: &DirectedGraph) -> bool {
        g.n() == self.n
            && (0..self.n).all(|i| g.row(i) & !self.stars[i] == self.ones[i])
    }
}

/// Parses a pattern file: blocks separated by blank lines, `#` comments
/// ignored, each block a size line followed by that many rows over `01*`.
pub fn parse_patterns(text: &str) -> Result<Vec<GraphPattern>> {
    let mut patterns = Vec::new();
    let mut block: Vec<&str> = Vec::new();
    for line in text.lines().chain(std::iter::once("")) {
        let line = line.trim();
        if line.is_empty() {
            if !block.is_empty() {
                patterns.push(GraphPattern::parse(&block)?);
                block.clear();
            }
        } else if !line.starts_with('#') {
            block.push(line);
        }
    }
    Ok(patterns)
}

/// The 30 star patterns covering the permutation-bearing delete-and-repair
/// preimages of [`g1`].
pub fn g1_dr_preimage_patterns() -> Vec<GraphPattern> {
    parse_patterns(G1_DR_PATTERNS_TEXT).expect("fixture parses")
}

/// The 34 star patterns covering the permutation-bearing delete-and-repair
/// preimages of [`g2`].
pub fn g2_dr_preimage_patterns() -> Vec<GraphPattern> {
    parse_patterns(G2_DR_PATTERNS_TEXT).expect("fixture parses")
}
