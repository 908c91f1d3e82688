use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("exact arboricity is limited to n <= {limit}, got n = {n}")]
    TooLarge { n: usize, limit: usize },
}

pub const EXACT_ARBORICITY_LIMIT: usize = 14;

/// Exact degeneracy by repeatedly deleting a minimum-degree vertex.
pub fn degeneracy(g: &Graph) -> u32 {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); maxd + 1];
    for v in g.vertices() {
        buckets[deg[v as usize]].push(v);
    }
    let mut removed = vec![false; n];
    let mut best = 0;
    let mut d = 0usize;
    for _ in 0..n {
        // degrees only drop by one per deletion, so the scan can restart one
        // bucket lower
        d = d.saturating_sub(1);
        let v = loop {
            match buckets[d].pop() {
                Some(v) if !removed[v as usize] && deg[v as usize] == d => break v,
                Some(_) => {}
                None => d += 1,
            }
        };
        removed[v as usize] = true;
        best = best.max(d);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !removed[w] {
                deg[w] -= 1;
                buckets[deg[w]].push(w as u32);
            }
        }
    }
    best as u32
}

/// Maximum of `ceil(|E(S)| / (|S| - 1))` over all vertex subsets with at
/// least two vertices.
pub fn exact_arboricity(g: &Graph) -> Result<u32, OracleError> {
    let n = g.n();
    if n > EXACT_ARBORICITY_LIMIT {
        return Err(OracleError::TooLarge {
            n,
            limit: EXACT_ARBORICITY_LIMIT,
        });
    }
    let masks: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut best = 0u32;
    for s in 1u32..(1u32 << n) {
        let size = s.count_ones();
        if size < 2 {
            continue;
        }
        let twice_edges: u32 = (0..n)
            .filter(|&v| s & (1 << v) != 0)
            .map(|v| (masks[v] & s).count_ones())
            .sum();
        let edges = twice_edges / 2;
        best = best.max(edges.div_ceil(size - 1));
    }
    Ok(best)
}

/// Number of times `log2` must be applied before the value drops below 2.
pub fn log_star(n: u64) -> u32 {
    let mut x = n as f64;
    let mut k = 0;
    while x >= 2.0 {
        x = x.log2();
        k += 1;
    }
    k
}
