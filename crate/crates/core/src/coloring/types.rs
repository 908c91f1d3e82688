use crate::sim::VertexId;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "bound", rename_all = "snake_case")]
pub enum ColoringKind {
    Proper,
    /// Every vertex has at most this many neighbours of its own color.
    Defective(u32),
    /// Every color class induces a subgraph of at most this arboricity.
    Arbdefective(u32),
}

impl fmt::Display for ColoringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringKind::Proper => f.write_str("proper"),
            ColoringKind::Defective(m) => write!(f, "defective({m})"),
            ColoringKind::Arbdefective(r) => write!(f, "arbdefective({r})"),
        }
    }
}

/// Colors are in `1..=palette_size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: Vec<u32>,
    pub kind: ColoringKind,
    pub palette_size: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, kind: ColoringKind, palette_size: u32) -> Self {
        Coloring {
            colors,
            kind,
            palette_size,
        }
    }

    /// Palette size taken as the largest color present.
    pub fn from_colors(colors: Vec<u32>, kind: ColoringKind) -> Self {
        let palette_size = colors.iter().copied().max().unwrap_or(0);
        Coloring::new(colors, kind, palette_size)
    }

    pub fn color(&self, v: VertexId) -> u32 {
        self.colors[v as usize]
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

/// Orientation that may leave some edges unoriented. `parents[v]` lists the
/// heads of `v`'s outgoing edges; `unoriented[v]` the other endpoints of its
/// unoriented edges. Both are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialOrientation {
    pub parents: Vec<Vec<VertexId>>,
    pub unoriented: Vec<Vec<VertexId>>,
    pub deficit_bound: u32,
    pub outdeg_bound: u32,
}

impl PartialOrientation {
    pub fn n(&self) -> usize {
        self.parents.len()
    }

    pub fn max_deficit(&self) -> usize {
        self.unoriented.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_out_degree(&self) -> usize {
        self.parents.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of vertices on the longest directed path (0 when `n == 0`).
    /// Panics if the oriented part has a cycle.
    pub fn longest_path(&self) -> usize {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for ps in &self.parents {
            for &p in ps {
                indeg[p as usize] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut depth = vec![1usize; n];
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &p in &self.parents[v] {
                let p = p as usize;
                depth[p] = depth[p].max(depth[v] + 1);
                indeg[p] -= 1;
                if indeg[p] == 0 {
                    stack.push(p);
                }
            }
        }
        assert_eq!(seen, n, "oriented part is cyclic");
        depth.into_iter().max().unwrap_or(0)
    }
}
