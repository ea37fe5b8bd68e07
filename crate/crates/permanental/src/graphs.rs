//! Directed graphs as row bitmasks, permutations with cached cycle counts,
//! and set partitions in restricted-growth canonical form.
//!
//! Graphs are simple and directed, self-loops allowed: an `n`-graph is a
//! boolean matrix of order `n`, stored one `u64` row per vertex. All types
//! here are immutable values; every operation returns a fresh value, so
//! everything is safe to share across threads.
//!
//! Vertices are 0-indexed internally. Textual I/O (permutation images, cycle
//! notation) uses the 1-indexed convention throughout.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Structural cap: one bitmask row per vertex must fit a machine word.
pub const MAX_VERTICES: usize = 64;

/// Full enumeration of `{0,1}^{n x n}` is only offered while `2^(n^2)` stays
/// desk-sized.
pub const MAX_FULL_ENUMERATION: usize = 5;

/// Set-partition enumeration cap (Bell numbers grow fast).
pub const MAX_PARTITION_ENUMERATION: usize = 12;

/// Permutation enumeration cap (`n!` terms).
pub const MAX_PERMUTATION_ENUMERATION: usize = 10;

fn check_vertex_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::VertexCount {
            n,
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

fn row_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A simple directed graph on `1..=64` vertices, self-loops allowed.
///
/// Bit `j` of `rows[i]` is the edge `i -> j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedGraph {
    n: usize,
    rows: Vec<u64>,
}

impl DirectedGraph {
    /// Builds a graph from raw bitmask rows. Bits at or above column `n`
    /// must be clear.
    pub fn new(n: usize, rows: Vec<u64>) -> Result<Self> {
        check_vertex_count(n)?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                left: rows.len(),
                right: n,
            });
        }
        let mask = row_mask(n);
        if rows.iter().any(|&r| r & !mask != 0) {
            return Err(Error::Parse(format!(
                "row bits outside the first {n} columns"
            )));
        }
        Ok(DirectedGraph { n, rows })
    }

    /// The edgeless graph.
    pub fn zero(n: usize) -> Result<Self> {
        check_vertex_count(n)?;
        Ok(DirectedGraph {
            n,
            rows: vec![0; n],
        })
    }

    /// The identity matrix: one self-loop per vertex.
    pub fn identity(n: usize) -> Result<Self> {
        check_vertex_count(n)?;
        Ok(DirectedGraph {
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        })
    }

    /// The all-ones graph (every edge present, loops included).
    pub fn complete(n: usize) -> Result<Self> {
        check_vertex_count(n)?;
        Ok(DirectedGraph {
            n,
            rows: vec![row_mask(n); n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = DirectedGraph::zero(n)?;
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch {
                    left: i.max(j),
                    right: n,
                });
            }
            g.rows[i] |= 1u64 << j;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Copy of `self` with the edge `i -> j` present.
    pub fn with_edge(&self, i: usize, j: usize) -> Self {
        let mut g = self.clone();
        g.rows[i] |= 1u64 << j;
        g
    }

    /// Total number of edges, loops included.
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// True iff every edge `i -> sigma(i)` is present.
    pub fn contains_permutation(&self, sigma: &Permutation) -> Result<bool> {
        if sigma.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: sigma.n(),
            });
        }
        Ok(self
            .rows
            .iter()
            .zip(sigma.image())
            .all(|(&row, &img)| row >> img & 1 == 1))
    }

    /// Simultaneous row/column relabelling: `result[tau(i)][tau(j)] = self[i][j]`.
    pub fn conjugate(&self, tau: &Permutation) -> Result<Self> {
        if tau.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: tau.n(),
            });
        }
        let mut rows = vec![0u64; self.n];
        for i in 0..self.n {
            let mut new_row = 0u64;
            let mut bits = self.rows[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                new_row |= 1u64 << tau.apply(j);
            }
            rows[tau.apply(i)] = new_row;
        }
        Ok(DirectedGraph { n: self.n, rows })
    }

    /// Packs the adjacency matrix into a row-major bit code. Only available
    /// while `n^2 <= 64`.
    pub fn code(&self) -> u64 {
        assert!(self.n * self.n <= 64, "code() needs n <= 8");
        let mut code = 0u64;
        for (i, &row) in self.rows.iter().enumerate() {
            code |= row << (i * self.n);
        }
        code
    }

    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        check_vertex_count(n)?;
        if n * n > 64 {
            return Err(Error::Capacity {
                what: "graph bit codes",
                n,
                limit: 8,
            });
        }
        let mask = row_mask(n);
        let rows = (0..n).map(|i| code >> (i * n) & mask).collect();
        Ok(DirectedGraph { n, rows })
    }

    /// Parses the plain text format: first line `n`, then `n` rows of `n`
    /// characters in `{0,1}`. A row may instead be given as `0x<hex>`, read
    /// as the row bitmask (bit `j` = edge to vertex `j`). Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the vertex count".into()))?;
        check_vertex_count(n)?;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {} of {}", i + 1, n)))?;
            if let Some(hex) = line.strip_prefix("0x").or_else(|| line.strip_prefix("0X")) {
                let row = u64::from_str_radix(hex, 16)
                    .map_err(|_| Error::Parse(format!("bad hex row {line:?}")))?;
                if row & !row_mask(n) != 0 {
                    return Err(Error::Parse(format!("hex row {line:?} has bits beyond column {n}")));
                }
                rows.push(row);
            } else {
                if line.len() != n {
                    return Err(Error::Parse(format!(
                        "row {:?} must have exactly {n} characters",
                        line
                    )));
                }
                let mut row = 0u64;
                for (j, ch) in line.bytes().enumerate() {
                    match ch {
                        b'1' => row |= 1u64 << j,
                        b'0' => {}
                        _ => {
                            return Err(Error::Parse(format!(
                                "row {:?} contains a character other than 0/1",
                                line
                            )))
                        }
                    }
                }
                rows.push(row);
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after the last row".into()));
        }
        DirectedGraph::new(n, rows)
    }

    /// Single-line row encoding, rows joined by `|`: `0100|1010|0101|1010`.
    pub fn compact(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                (0..self.n)
                    .map(|j| if row >> j & 1 == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect();
        rows.join("|")
    }

    /// Uniform random graph: every cell an independent fair coin.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_vertex_count(n)?;
        let mask = row_mask(n);
        let rows = (0..n).map(|_| rng.random::<u64>() & mask).collect();
        Ok(DirectedGraph { n, rows })
    }
}

impl fmt::Display for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for &row in &self.rows {
            for j in 0..self.n {
                write!(f, "{}", row >> j & 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| (0..self.n).map(|j| if row >> j & 1 == 1 { '1' } else { '0' }).collect())
            .collect();
        write!(f, "DirectedGraph({})", rows.join("|"))
    }
}

/// Streams all `2^(n^2)` graphs on `n` vertices in row-major code order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = DirectedGraph>> {
    check_vertex_count(n)?;
    if n > MAX_FULL_ENUMERATION {
        return Err(Error::Capacity {
            what: "full graph enumeration",
            n,
            limit: MAX_FULL_ENUMERATION,
        });
    }
    let total: u64 = 1u64 << (n * n);
    Ok((0..total).map(move |code| DirectedGraph::from_code(n, code).expect("code in range")))
}

/// A bijection on `[n]` with its cycle count cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
    cycle_count: usize,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
            cycle_count: n,
        }
    }

    /// Builds from the image array `map[i] = sigma(i)`, validating that it
    /// is a bijection.
    pub fn from_image(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        check_vertex_count(n)?;
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::Parse("image array is not a bijection".into()));
            }
            seen[v] = true;
        }
        let cycle_count = count_cycles(&map);
        Ok(Permutation { map, cycle_count })
    }

    /// Builds from disjoint cycles over `0..n`; omitted elements are fixed
    /// points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        check_vertex_count(n)?;
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (idx, &v) in cycle.iter().enumerate() {
                if v >= n {
                    return Err(Error::Parse(format!("cycle element {v} out of range")));
                }
                if used[v] {
                    return Err(Error::Parse(format!("element {v} appears twice")));
                }
                used[v] = true;
                map[v] = cycle[(idx + 1) % cycle.len()];
            }
        }
        let cycle_count = count_cycles(&map);
        Ok(Permutation { map, cycle_count })
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.map
    }

    /// Number of cycles in the disjoint-cycle decomposition.
    pub fn cycle_count(&self) -> usize {
        self.cycle_count
    }

    /// Disjoint cycles, each rotated to start at its minimum element and
    /// ordered by that minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::with_capacity(self.cycle_count);
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.map[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.map[v];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation {
            map: inv,
            cycle_count: self.cycle_count,
        }
    }

    /// `(self . other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let map: Vec<usize> = other.map.iter().map(|&i| self.map[i]).collect();
        let cycle_count = count_cycles(&map);
        Ok(Permutation { map, cycle_count })
    }

    /// The conjugate `tau . self . tau^-1`; preserves the cycle type.
    pub fn conjugate_by(&self, tau: &Permutation) -> Result<Self> {
        if self.n() != tau.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: tau.n(),
            });
        }
        let mut map = vec![0; self.n()];
        for i in 0..self.n() {
            map[tau.apply(i)] = tau.apply(self.map[i]);
        }
        let cycle_count = count_cycles(&map);
        Ok(Permutation { map, cycle_count })
    }

    /// The adjacency matrix of the functional graph `i -> sigma(i)`.
    pub fn to_graph(&self) -> DirectedGraph {
        DirectedGraph {
            n: self.n(),
            rows: self.map.iter().map(|&j| 1u64 << j).collect(),
        }
    }

    /// Parses either a 1-indexed image list (`2 3 1`) or 1-indexed cycle
    /// notation (`(1 2 3)(4)`). For cycle notation, `n` is taken from
    /// `n_hint` or the largest element mentioned.
    pub fn parse(text: &str, n_hint: Option<usize>) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('(') {
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            let mut max_elem = 0usize;
            for chunk in text.split(')') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let inner = chunk
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("unbalanced cycle {chunk:?}")))?;
                let cycle: Vec<usize> = inner
                    .split([' ', ','])
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad cycle element {t:?}")))
                            .and_then(|v| {
                                if v == 0 {
                                    Err(Error::Parse("cycle notation is 1-indexed".into()))
                                } else {
                                    Ok(v - 1)
                                }
                            })
                    })
                    .collect::<Result<_>>()?;
                if cycle.is_empty() {
                    return Err(Error::Parse("empty cycle".into()));
                }
                max_elem = max_elem.max(*cycle.iter().max().unwrap());
                cycles.push(cycle);
            }
            let n = n_hint.unwrap_or(max_elem + 1);
            Permutation::from_cycles(n, &cycles)
        } else {
            let image: Vec<usize> = text
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad image entry {t:?}")))
                        .and_then(|v| {
                            if v == 0 {
                                Err(Error::Parse("image lists are 1-indexed".into()))
                            } else {
                                Ok(v - 1)
                            }
                        })
                })
                .collect::<Result<_>>()?;
            if let Some(n) = n_hint {
                if n != image.len() {
                    return Err(Error::DimensionMismatch {
                        left: image.len(),
                        right: n,
                    });
                }
            }
            Permutation::from_image(image)
        }
    }

    /// 1-indexed cycle notation, fixed points included: `(1 2 3)(4)`.
    pub fn to_cycle_string(&self) -> String {
        self.cycles()
            .iter()
            .map(|cycle| {
                let inner: Vec<String> = cycle.iter().map(|v| (v + 1).to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }

    /// Uniform random permutation (Fisher-Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            map.swap(i, j);
        }
        let cycle_count = count_cycles(&map);
        Permutation { map, cycle_count }
    }

    /// All of `S_n` in lexicographic image order.
    pub fn enumerate(n: usize) -> Result<impl Iterator<Item = Permutation>> {
        check_vertex_count(n)?;
        if n > MAX_PERMUTATION_ENUMERATION {
            return Err(Error::Capacity {
                what: "permutation enumeration",
                n,
                limit: MAX_PERMUTATION_ENUMERATION,
            });
        }
        let mut current: Option<Vec<usize>> = Some((0..n).collect());
        Ok(std::iter::from_fn(move || {
            let map = current.take()?;
            let mut next = map.clone();
            if next_permutation(&mut next) {
                current = Some(next);
            }
            let cycle_count = count_cycles(&map);
            Some(Permutation { map, cycle_count })
        }))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

fn count_cycles(map: &[usize]) -> usize {
    let mut seen = vec![false; map.len()];
    let mut count = 0;
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = map[v];
        }
    }
    count
}

/// In-place lexicographic successor; returns false at the last permutation.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// A set partition of `[n]`: disjoint nonempty blocks covering `0..n`,
/// stored with each block sorted and blocks ordered by minimum element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        check_vertex_count(n)?;
        let mut seen = vec![false; n];
        let mut canonical: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(Error::Parse("empty partition block".into()));
            }
            let mut b = block.clone();
            b.sort_unstable();
            for &v in &b {
                if v >= n || seen[v] {
                    return Err(Error::Parse(
                        "blocks must be disjoint subsets of the ground set".into(),
                    ));
                }
                seen[v] = true;
            }
            canonical.push(b);
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::Parse("blocks must cover the ground set".into()));
        }
        canonical.sort_by_key(|b| b[0]);
        Ok(Partition {
            n,
            blocks: canonical,
        })
    }

    /// From a restricted-growth string: `rgs[0] = 0` and each entry is at
    /// most `1 + max` of the prefix.
    pub fn from_restricted_growth(rgs: &[usize]) -> Result<Self> {
        let n = rgs.len();
        check_vertex_count(n)?;
        let mut max_label = 0usize;
        for (i, &label) in rgs.iter().enumerate() {
            let bound = if i == 0 { 0 } else { max_label + 1 };
            if label > bound {
                return Err(Error::Parse(format!(
                    "not a restricted growth string at position {i}"
                )));
            }
            max_label = max_label.max(label);
        }
        let mut blocks = vec![Vec::new(); max_label + 1];
        for (i, &label) in rgs.iter().enumerate() {
            blocks[label].push(i);
        }
        Ok(Partition { n, blocks })
    }

    pub fn singletons(n: usize) -> Result<Self> {
        check_vertex_count(n)?;
        Ok(Partition {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        })
    }

    /// The partition whose blocks are the cycles of `sigma`.
    pub fn from_permutation_cycles(sigma: &Permutation) -> Self {
        let mut blocks = sigma.cycles();
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        Partition {
            n: sigma.n(),
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// The equivalence-relation graph: `i -> j` iff `i` and `j` share a
    /// block (reflexive, symmetric, transitive).
    pub fn to_graph(&self) -> DirectedGraph {
        let mut rows = vec![0u64; self.n];
        for block in &self.blocks {
            let mut mask = 0u64;
            for &v in block {
                mask |= 1u64 << v;
            }
            for &v in block {
                rows[v] = mask;
            }
        }
        DirectedGraph { n: self.n, rows }
    }

    /// All partitions of `[n]` in restricted-growth-string order.
    pub fn enumerate(n: usize) -> Result<impl Iterator<Item = Partition>> {
        check_vertex_count(n)?;
        if n > MAX_PARTITION_ENUMERATION {
            return Err(Error::Capacity {
                what: "partition enumeration",
                n,
                limit: MAX_PARTITION_ENUMERATION,
            });
        }
        let mut rgs: Option<Vec<usize>> = Some(vec![0; n]);
        Ok(std::iter::from_fn(move || {
            let current = rgs.take()?;
            let partition =
                Partition::from_restricted_growth(&current).expect("generator emits valid strings");
            rgs = next_restricted_growth(&current);
            Some(partition)
        }))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|v| (v + 1).to_string()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        write!(f, "Partition{}", blocks.join(""))
    }
}

fn next_restricted_growth(rgs: &[usize]) -> Option<Vec<usize>> {
    let n = rgs.len();
    let mut next = rgs.to_vec();
    // Increment the rightmost position that can grow, reset the suffix to 0.
    for i in (1..n).rev() {
        let prefix_max = next[..i].iter().copied().max().unwrap_or(0);
        if next[i] <= prefix_max {
            next[i] += 1;
            for v in next[i + 1..].iter_mut() {
                *v = 0;
            }
            return Some(next);
        }
    }
    None
}
