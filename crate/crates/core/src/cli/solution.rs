//! Solution files: one `v <id> <value>` line per vertex, sorted by id.
//!
//! Values are a color, `0`/`1` for set membership, or for a forest labeling
//! a comma-separated `parent:label` list (`-` when the vertex has none).

use crate::decomposition::ForestLabeling;
use crate::sim::VertexId;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Colors(Vec<u32>),
    Set(Vec<bool>),
    Labeling(ForestLabeling),
}

impl Solution {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            Solution::Colors(c) => c.iter().enumerate().for_each(|(v, c)| writeln!(s, "v {v} {c}").unwrap()),
            Solution::Set(m) => m
                .iter()
                .enumerate()
                .for_each(|(v, &b)| writeln!(s, "v {v} {}", b as u8).unwrap()),
            Solution::Labeling(l) => {
                for (v, ps) in l.parents.iter().enumerate() {
                    let val = if ps.is_empty() {
                        "-".to_string()
                    } else {
                        ps.iter().map(|(p, lab)| format!("{p}:{lab}")).collect::<Vec<_>>().join(",")
                    };
                    writeln!(s, "v {v} {val}").unwrap();
                }
            }
        }
        s
    }
}

/// Lines of a solution file as `(id, value)`, checked to list `0..n` once
/// each in order.
pub fn parse_lines(text: &str, n: usize) -> Result<Vec<String>, String> {
    let mut values = Vec::with_capacity(n);
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some("v"), Some(id), Some(val), None) = (it.next(), it.next(), it.next(), it.next()) else {
            return Err(format!("solution line {}: expected 'v <id> <value>'", i + 1));
        };
        let id: usize = id.parse().map_err(|_| format!("solution line {}: bad id", i + 1))?;
        if id != values.len() {
            return Err(format!("solution line {}: expected vertex {}, found {id}", i + 1, values.len()));
        }
        values.push(val.to_string());
    }
    if values.len() != n {
        return Err(format!("solution lists {} vertices, graph has {n}", values.len()));
    }
    Ok(values)
}

pub fn parse_colors(text: &str, n: usize) -> Result<Vec<u32>, String> {
    parse_lines(text, n)?
        .iter()
        .map(|v| v.parse().map_err(|_| format!("bad color {v:?}")))
        .collect()
}

pub fn parse_set(text: &str, n: usize) -> Result<Vec<bool>, String> {
    parse_lines(text, n)?
        .iter()
        .map(|v| match v.as_str() {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(format!("bad membership flag {v:?}")),
        })
        .collect()
}

pub fn parse_labeling(text: &str, n: usize) -> Result<ForestLabeling, String> {
    let mut parents = Vec::with_capacity(n);
    for v in parse_lines(text, n)? {
        if v == "-" {
            parents.push(Vec::new());
            continue;
        }
        let list = v
            .split(',')
            .map(|item| {
                let (p, l) = item.split_once(':').ok_or_else(|| format!("bad arc {item:?}"))?;
                let p: VertexId = p.parse().map_err(|_| format!("bad parent {p:?}"))?;
                let l: u32 = l.parse().map_err(|_| format!("bad label {l:?}"))?;
                Ok((p, l))
            })
            .collect::<Result<Vec<_>, String>>()?;
        parents.push(list);
    }
    Ok(ForestLabeling { parents })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let c = Solution::Colors(vec![1, 2, 1]);
        assert_eq!(c.to_text(), "v 0 1\nv 1 2\nv 2 1\n");
        assert_eq!(parse_colors(&c.to_text(), 3).unwrap(), vec![1, 2, 1]);
        let m = vec![true, false];
        assert_eq!(parse_set(&Solution::Set(m.clone()).to_text(), 2).unwrap(), m);
        let l = ForestLabeling {
            parents: vec![vec![(1, 1), (2, 2)], vec![(2, 1)], vec![]],
        };
        let text = Solution::Labeling(l.clone()).to_text();
        assert_eq!(text, "v 0 1:1,2:2\nv 1 2:1\nv 2 -\n");
        assert_eq!(parse_labeling(&text, 3).unwrap(), l);
    }

    #[test]
    fn malformed() {
        assert!(parse_colors("v 0 1\n", 2).is_err());
        assert!(parse_colors("v 1 1\nv 0 1\n", 2).is_err());
        assert!(parse_colors("v 0 x\n", 1).is_err());
        assert!(parse_set("v 0 2\n", 1).is_err());
        assert!(parse_labeling("v 0 3\n", 1).is_err());
        assert!(parse_lines("w 0 1\n", 1).is_err());
    }
}
