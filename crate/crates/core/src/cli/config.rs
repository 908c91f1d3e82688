use crate::graph::{GraphFamily, GraphFamilySpec};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    ForestDecomp,
    ColorA2,
    ColorA2eps,
    ColorA1eps,
    ColorOa,
    Mis,
    Universal,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ForestDecomp => "forest-decomp",
            Algorithm::ColorA2 => "color-a2",
            Algorithm::ColorA2eps => "color-a2eps",
            Algorithm::ColorA1eps => "color-a1eps",
            Algorithm::ColorOa => "color-oa",
            Algorithm::Mis => "mis",
            Algorithm::Universal => "universal",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Algorithm as ValueEnum>::from_str(s, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    ForestUnion,
    Grid,
    Cycle,
    Star,
    Complete,
    RandomDegenerate,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::ForestUnion => "forest-union",
            FamilyKind::Grid => "grid",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Star => "star",
            FamilyKind::Complete => "complete",
            FamilyKind::RandomDegenerate => "random-degenerate",
        }
    }
}

/// Flat family description as given on the command line; unused sizes are
/// ignored by the family that does not need them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: Option<usize>,
    pub k: Option<u32>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub d: Option<u32>,
}

fn need<T: Copy>(v: Option<T>, what: &str, fam: FamilyKind) -> Result<T, String> {
    v.ok_or_else(|| format!("family {} needs --{what}", fam.name()))
}

pub fn family_spec(kind: FamilyKind, p: &FamilyParams, seed: u64) -> Result<GraphFamilySpec, String> {
    let family = match kind {
        FamilyKind::ForestUnion => GraphFamily::ForestUnion {
            n: need(p.n, "n", kind)?,
            k: need(p.k, "k", kind)?,
        },
        FamilyKind::Grid => GraphFamily::Grid {
            rows: need(p.rows, "rows", kind)?,
            cols: need(p.cols, "cols", kind)?,
        },
        FamilyKind::Cycle => GraphFamily::Cycle { n: need(p.n, "n", kind)? },
        FamilyKind::Star => GraphFamily::Star { n: need(p.n, "n", kind)? },
        FamilyKind::Complete => GraphFamily::Complete { n: need(p.n, "n", kind)? },
        FamilyKind::RandomDegenerate => GraphFamily::RandomDegenerate {
            n: need(p.n, "n", kind)?,
            d: need(p.d, "d", kind)?,
        },
    };
    Ok(GraphFamilySpec::new(family, seed))
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Family(GraphFamilySpec),
}

/// Everything a single `run` needs. Serialized as flat `key=value` lines.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub graph: GraphSource,
    /// Arboricity promise; the generator witness or the degeneracy when absent.
    pub a: Option<u32>,
    /// Slack of the H-partitions, or the palette exponent for color-oa.
    pub eps: f64,
    /// Slack of the H-partitions inside the recursive algorithms.
    pub eps_h: f64,
    pub p: Option<u32>,
    pub k: Option<u32>,
    pub t: Option<u32>,
    pub seed: u64,
    pub solution: Option<PathBuf>,
    pub stats: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, graph: GraphSource) -> Self {
        RunConfig {
            algorithm,
            graph,
            a: None,
            eps: 2.0,
            eps_h: 2.0,
            p: None,
            k: None,
            t: None,
            seed: 0,
            solution: None,
            stats: None,
            csv: None,
        }
    }

    pub fn to_kv(&self) -> String {
        let mut lines = vec![format!("algorithm={}", self.algorithm)];
        match &self.graph {
            GraphSource::File(p) => lines.push(format!("graph={}", p.display())),
            GraphSource::Family(spec) => {
                let (kind, fields): (FamilyKind, Vec<(&str, String)>) = match &spec.family {
                    GraphFamily::ForestUnion { n, k } => {
                        (FamilyKind::ForestUnion, vec![("n", n.to_string()), ("forests", k.to_string())])
                    }
                    GraphFamily::Grid { rows, cols } => {
                        (FamilyKind::Grid, vec![("rows", rows.to_string()), ("cols", cols.to_string())])
                    }
                    GraphFamily::Cycle { n } => (FamilyKind::Cycle, vec![("n", n.to_string())]),
                    GraphFamily::Star { n } => (FamilyKind::Star, vec![("n", n.to_string())]),
                    GraphFamily::Complete { n } => (FamilyKind::Complete, vec![("n", n.to_string())]),
                    GraphFamily::RandomDegenerate { n, d } => {
                        (FamilyKind::RandomDegenerate, vec![("n", n.to_string()), ("d", d.to_string())])
                    }
                };
                lines.push(format!("family={}", kind.name()));
                lines.extend(fields.into_iter().map(|(k, v)| format!("{k}={v}")));
                lines.push(format!("graph_seed={}", spec.seed));
            }
        }
        let opt = |k: &str, v: Option<u32>| v.map(|v| format!("{k}={v}"));
        lines.extend(opt("a", self.a));
        lines.push(format!("eps={}", self.eps));
        lines.push(format!("eps_h={}", self.eps_h));
        lines.extend(opt("p", self.p));
        lines.extend(opt("k", self.k));
        lines.extend(opt("t", self.t));
        lines.push(format!("seed={}", self.seed));
        for (k, v) in [("solution", &self.solution), ("stats", &self.stats), ("csv", &self.csv)] {
            if let Some(p) = v {
                lines.push(format!("{k}={}", p.display()));
            }
        }
        lines.join("\n") + "\n"
    }

    /// Parses `key=value` lines; `#` starts a comment line.
    pub fn from_kv(text: &str) -> Result<Self, String> {
        let mut kv = KvFile::parse(text)?;
        let cfg = kv.build()?;
        if let Some(k) = kv.leftover() {
            return Err(format!("unknown config key {k:?}"));
        }
        Ok(cfg)
    }
}

/// Raw keys of a config file, consumed while building a [`RunConfig`].
#[derive(Debug, Default)]
pub struct KvFile {
    entries: std::collections::BTreeMap<String, String>,
}

impl KvFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = std::collections::BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
            if entries.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(format!("config line {}: repeated key {:?}", i + 1, k.trim()));
            }
        }
        Ok(KvFile { entries })
    }

    fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, String> {
        match self.entries.remove(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| format!("bad value {v:?} for {key}")),
        }
    }

    fn leftover(&self) -> Option<&String> {
        self.entries.keys().next()
    }

    fn build(&mut self) -> Result<RunConfig, String> {
        let algorithm: Algorithm = self.take("algorithm")?.ok_or("config needs algorithm")?;
        let graph = if let Some(path) = self.take::<PathBuf>("graph")? {
            GraphSource::File(path)
        } else {
            let fam: String = self.take("family")?.ok_or("config needs graph or family")?;
            let kind = <FamilyKind as ValueEnum>::from_str(&fam, false)?;
            let params = FamilyParams {
                n: self.take("n")?,
                k: self.take("forests")?,
                rows: self.take("rows")?,
                cols: self.take("cols")?,
                d: self.take("d")?,
            };
            let seed = self.take("graph_seed")?.unwrap_or(0);
            GraphSource::Family(family_spec(kind, &params, seed)?)
        };
        let mut cfg = RunConfig::new(algorithm, graph);
        cfg.a = self.take("a")?;
        cfg.eps = self.take("eps")?.unwrap_or(cfg.eps);
        cfg.eps_h = self.take("eps_h")?.unwrap_or(cfg.eps_h);
        cfg.p = self.take("p")?;
        cfg.k = self.take("k")?;
        cfg.t = self.take("t")?;
        cfg.seed = self.take("seed")?.unwrap_or(0);
        cfg.solution = self.take("solution")?;
        cfg.stats = self.take("stats")?;
        cfg.csv = self.take("csv")?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_round_trip() {
        let spec = family_spec(
            FamilyKind::ForestUnion,
            &FamilyParams { n: Some(64), k: Some(3), ..Default::default() },
            9,
        )
        .unwrap();
        let mut cfg = RunConfig::new(Algorithm::ColorOa, GraphSource::Family(spec));
        cfg.a = Some(3);
        cfg.eps = 2.5;
        cfg.p = Some(7);
        cfg.stats = Some("out/stats.json".into());
        let text = cfg.to_kv();
        assert_eq!(RunConfig::from_kv(&text).unwrap(), cfg);

        let cfg = RunConfig::new(Algorithm::Mis, GraphSource::File("g.txt".into()));
        assert_eq!(RunConfig::from_kv(&cfg.to_kv()).unwrap(), cfg);
    }

    #[test]
    fn kv_errors() {
        assert!(RunConfig::from_kv("family=grid\nrows=2\ncols=2\n").is_err());
        assert!(RunConfig::from_kv("algorithm=mis\ngraph=g\nbogus=1\n").is_err());
        assert!(RunConfig::from_kv("algorithm=mis\ngraph=g\neps=x\n").is_err());
        assert!(RunConfig::from_kv("algorithm=mis\nalgorithm=mis\n").is_err());
        assert!(RunConfig::from_kv("algorithm=mis\nfamily=grid\nrows=2\n").is_err());
        let cfg = RunConfig::from_kv("# comment\nalgorithm = universal\ngraph = a.txt\n").unwrap();
        assert_eq!(cfg.algorithm, Algorithm::Universal);
    }
}
