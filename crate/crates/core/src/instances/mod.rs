//! Benchmark instances: generation, ingestion and the on-disk formats.
//!
//! # Instance file (`.gccf`)
//!
//! ```text
//! gccf v1
//! <n> <m> <kind> <seed>
//! <i> <j>                                   m edge lines, 0-based
//! <parameter block>
//! ```
//!
//! The parameter block depends on `kind`:
//!
//! * `energy <T> <p_spot> <p_forward> <gamma>` then `n` CSV rows of `T` readings
//! * `edgesum <gamma>` then one CSV row `i,j,w` per edge
//! * `coalsize <alpha>` then `n` CSV rows of `n` distances
//!
//! Numbers are written in shortest round-trip form, so generation with the
//! same seed is byte-for-byte reproducible.
//!
//! # Edge list
//!
//! First line `n m`, then `m` lines `i j`, whitespace separated.

mod generate;

use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

pub use generate::{
    barabasi_albert, bfs_subgraph, bfs_subgraph_from, random_params, rng_for, synthetic_profiles,
    BFS_ATTEMPTS, DEFAULT_ALPHA, DEFAULT_GAMMA, DEFAULT_P_FORWARD, DEFAULT_P_SPOT, DEFAULT_SLOTS,
    DISTANCE_RANGE, STREAM_GRAPH, STREAM_PARAMS, STREAM_SUBGRAPH, WEIGHT_RANGE,
};

use crate::characteristic::{
    Characteristic, CoalitionSizeFunction, CoalitionSizeParams, EdgeSumFunction, EdgeSumParams,
    EnergyFunction, EnergyParams,
};
use crate::contraction_graph::ContractionGraph;
use crate::error::{GccfError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    Energy,
    EdgeSum,
    CoalitionSize,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 3] = [
        FunctionKind::Energy,
        FunctionKind::EdgeSum,
        FunctionKind::CoalitionSize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Energy => "energy",
            FunctionKind::EdgeSum => "edgesum",
            FunctionKind::CoalitionSize => "coalsize",
        }
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionKind {
    type Err = GccfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "energy" => Ok(FunctionKind::Energy),
            "edgesum" | "edge_sum" => Ok(FunctionKind::EdgeSum),
            "coalsize" | "coalition_size" => Ok(FunctionKind::CoalitionSize),
            other => Err(GccfError::InvalidParameters(format!(
                "unknown function kind `{other}` (expected energy, edgesum or coalsize)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionParams {
    Energy(EnergyParams),
    EdgeSum(EdgeSumParams),
    CoalitionSize(CoalitionSizeParams),
}

impl FunctionParams {
    pub fn kind(&self) -> FunctionKind {
        match self {
            FunctionParams::Energy(_) => FunctionKind::Energy,
            FunctionParams::EdgeSum(_) => FunctionKind::EdgeSum,
            FunctionParams::CoalitionSize(_) => FunctionKind::CoalitionSize,
        }
    }
}

/// A self-contained, reproducible problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub params: FunctionParams,
    pub seed: u64,
}

impl InstanceSpec {
    /// Random parameters of `kind` on a given graph.
    pub fn from_graph(n: usize, edges: Vec<(usize, usize)>, kind: FunctionKind, seed: u64) -> Result<Self> {
        validate_edges(&edges, n)?;
        let params = random_params(kind, n, &edges, seed);
        Ok(InstanceSpec {
            n,
            edges,
            params,
            seed,
        })
    }

    /// Scale-free graph plus random parameters, all from `seed`.
    pub fn barabasi_albert(n: usize, m: usize, kind: FunctionKind, seed: u64) -> Result<Self> {
        Self::from_graph(n, barabasi_albert(n, m, seed)?, kind, seed)
    }

    pub fn kind(&self) -> FunctionKind {
        self.params.kind()
    }

    pub fn characteristic(&self) -> Result<Characteristic> {
        Ok(match &self.params {
            FunctionParams::Energy(p) => {
                p.validate(self.n)?;
                Characteristic::Energy(EnergyFunction::new(p.clone())?)
            }
            FunctionParams::EdgeSum(p) => {
                Characteristic::EdgeSum(EdgeSumFunction::new(self.n, p.clone())?)
            }
            FunctionParams::CoalitionSize(p) => {
                if p.distances.len() != self.n {
                    return Err(GccfError::InvalidParameters(format!(
                        "distance matrix has {} rows, expected {}",
                        p.distances.len(),
                        self.n
                    )));
                }
                Characteristic::CoalitionSize(CoalitionSizeFunction::new(p.clone())?)
            }
        })
    }

    /// Root of the search tree with edges ranked in input order.
    pub fn root_graph(&self) -> Result<ContractionGraph> {
        ContractionGraph::from_instance_graph(&self.edges, self.n)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "gccf v1").unwrap();
        writeln!(s, "{} {} {} {}", self.n, self.edges.len(), self.kind(), self.seed).unwrap();
        for (i, j) in &self.edges {
            writeln!(s, "{i} {j}").unwrap();
        }
        match &self.params {
            FunctionParams::Energy(p) => {
                writeln!(s, "energy {} {} {} {}", p.slots(), p.p_spot, p.p_forward, p.gamma).unwrap();
                for row in &p.profiles {
                    write_csv_row(&mut s, row);
                }
            }
            FunctionParams::EdgeSum(p) => {
                writeln!(s, "edgesum {}", p.gamma).unwrap();
                for (i, j, w) in &p.weights {
                    writeln!(s, "{i},{j},{w}").unwrap();
                }
            }
            FunctionParams::CoalitionSize(p) => {
                writeln!(s, "coalsize {}", p.alpha).unwrap();
                for row in &p.distances {
                    write_csv_row(&mut s, row);
                }
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let (ln, header) = lines.next_required("header")?;
        if header.trim() != "gccf v1" {
            return Err(GccfError::parse(ln, "expected `gccf v1`"));
        }
        let (ln, meta) = lines.next_required("instance summary")?;
        let f: Vec<&str> = meta.split_whitespace().collect();
        if f.len() != 4 {
            return Err(GccfError::parse(ln, "expected `<n> <m> <kind> <seed>`"));
        }
        let n: usize = num(ln, f[0])?;
        let m: usize = num(ln, f[1])?;
        let kind: FunctionKind = f[2].parse().map_err(|e: GccfError| GccfError::parse(ln, e.to_string()))?;
        let seed: u64 = num(ln, f[3])?;

        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, line) = lines.next_required("edge")?;
            edges.push(parse_pair(ln, line)?);
        }
        validate_edges(&edges, n)?;

        let (ln, block) = lines.next_required("parameter block")?;
        let f: Vec<&str> = block.split_whitespace().collect();
        if f.first().copied() != Some(kind.name()) {
            return Err(GccfError::parse(ln, format!("expected `{}` parameter block", kind.name())));
        }
        let params = match kind {
            FunctionKind::Energy => {
                if f.len() != 5 {
                    return Err(GccfError::parse(ln, "expected `energy <T> <p_spot> <p_forward> <gamma>`"));
                }
                let slots: usize = num(ln, f[1])?;
                let mut profiles = Vec::with_capacity(n);
                for _ in 0..n {
                    let (ln, line) = lines.next_required("profile row")?;
                    let row = parse_csv_floats(ln, line)?;
                    if row.len() != slots {
                        return Err(GccfError::parse(ln, format!("expected {slots} readings")));
                    }
                    profiles.push(row);
                }
                FunctionParams::Energy(EnergyParams {
                    p_spot: num(ln, f[2])?,
                    p_forward: num(ln, f[3])?,
                    gamma: num(ln, f[4])?,
                    profiles,
                })
            }
            FunctionKind::EdgeSum => {
                if f.len() != 2 {
                    return Err(GccfError::parse(ln, "expected `edgesum <gamma>`"));
                }
                let mut weights = Vec::with_capacity(m);
                for _ in 0..m {
                    let (ln, line) = lines.next_required("weight row")?;
                    weights.push(parse_weight_row(ln, line)?);
                }
                FunctionParams::EdgeSum(EdgeSumParams {
                    weights,
                    gamma: num(ln, f[1])?,
                })
            }
            FunctionKind::CoalitionSize => {
                if f.len() != 2 {
                    return Err(GccfError::parse(ln, "expected `coalsize <alpha>`"));
                }
                let mut distances = Vec::with_capacity(n);
                for _ in 0..n {
                    let (ln, line) = lines.next_required("distance row")?;
                    distances.push(parse_csv_floats(ln, line)?);
                }
                FunctionParams::CoalitionSize(CoalitionSizeParams {
                    alpha: num(ln, f[1])?,
                    distances,
                })
            }
        };
        if let Some((ln, _)) = lines.next() {
            return Err(GccfError::parse(ln, "trailing content"));
        }
        let spec = InstanceSpec {
            n,
            edges,
            params,
            seed,
        };
        spec.characteristic()?;
        Ok(spec)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| ingest(path, e.to_string()))?;
        Self::parse(&text).map_err(|e| ingest(path, e.to_string()))
    }
}

fn ingest(path: &Path, message: String) -> GccfError {
    GccfError::Ingest {
        path: path.to_path_buf(),
        message,
    }
}

fn validate_edges(edges: &[(usize, usize)], n: usize) -> Result<()> {
    for &(i, j) in edges {
        for index in [i, j] {
            if index >= n {
                return Err(GccfError::InvalidAgentIndex { index, n });
            }
        }
        if i == j {
            return Err(GccfError::InvalidParameters(format!("self-loop on agent {i}")));
        }
    }
    Ok(())
}

fn write_csv_row(s: &mut String, row: &[f64]) {
    for (k, x) in row.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        write!(s, "{x}").unwrap();
    }
    s.push('\n');
}

/// Non-empty, non-comment lines with 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    fn next_required(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next()
            .ok_or_else(|| GccfError::parse(0, format!("unexpected end of input, expected {what}")))
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        self.inner
            .by_ref()
            .map(|(i, l)| (i + 1, l.trim()))
            .find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
    }
}

fn num<T: FromStr>(line: usize, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| GccfError::parse(line, format!("invalid number `{s}`")))
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let f: Vec<&str> = s.split_whitespace().collect();
    if f.len() != 2 {
        return Err(GccfError::parse(line, "expected `i j`"));
    }
    Ok((num(line, f[0])?, num(line, f[1])?))
}

fn parse_csv_floats(line: usize, s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|x| num(line, x)).collect()
}

fn parse_weight_row(line: usize, s: &str) -> Result<(usize, usize, f64)> {
    let f: Vec<&str> = s.split(',').collect();
    if f.len() != 3 {
        return Err(GccfError::parse(line, "expected `i,j,w`"));
    }
    Ok((num(line, f[0])?, num(line, f[1])?, num(line, f[2])?))
}

/// Parses the `n m` edge-list format.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next_required("`n m` header")?;
    let (n, m) = parse_pair(ln, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, line) = lines.next_required("edge")?;
        edges.push(parse_pair(ln, line)?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(GccfError::parse(ln, format!("more than the declared {m} edges")));
    }
    validate_edges(&edges, n)?;
    Ok((n, edges))
}

pub fn edge_list_to_text(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("{n} {}\n", edges.len());
    for (i, j) in edges {
        writeln!(s, "{i} {j}").unwrap();
    }
    s
}

pub fn read_edge_list(path: &Path) -> Result<(usize, Vec<(usize, usize)>)> {
    let text = std::fs::read_to_string(path).map_err(|e| ingest(path, e.to_string()))?;
    parse_edge_list(&text).map_err(|e| ingest(path, e.to_string()))
}

/// Profiles CSV: one row per agent, `T` readings per row.
pub fn parse_profiles_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let rows: Vec<Vec<f64>> = Lines::new(text)
        .map(|(ln, l)| parse_csv_floats(ln, l))
        .collect::<Result<_>>()?;
    if let Some(t) = rows.first().map(Vec::len) {
        if let Some(k) = rows.iter().position(|r| r.len() != t) {
            return Err(GccfError::parse(k + 1, format!("expected {t} readings")));
        }
    }
    Ok(rows)
}

/// Weights CSV: rows `i,j,w`.
pub fn parse_weights_csv(text: &str) -> Result<Vec<(usize, usize, f64)>> {
    Lines::new(text).map(|(ln, l)| parse_weight_row(ln, l)).collect()
}

/// Distances CSV: an `n x n` matrix.
pub fn parse_distances_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let rows: Vec<Vec<f64>> = Lines::new(text)
        .map(|(ln, l)| parse_csv_floats(ln, l))
        .collect::<Result<_>>()?;
    let n = rows.len();
    if let Some(k) = rows.iter().position(|r| r.len() != n) {
        return Err(GccfError::parse(k + 1, format!("expected {n} columns")));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_each_kind() {
        for kind in FunctionKind::ALL {
            let spec = InstanceSpec::barabasi_albert(12, 2, kind, 99).unwrap();
            let text = spec.to_text();
            let back = InstanceSpec::parse(&text).unwrap();
            assert_eq!(back, spec);
            assert_eq!(back.to_text(), text);
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(InstanceSpec::parse("gccf v2\n").is_err());
        assert!(InstanceSpec::parse("gccf v1\n3 1 energy 0\n0 5\n").is_err());
        let good = InstanceSpec::barabasi_albert(4, 1, FunctionKind::EdgeSum, 1).unwrap().to_text();
        let truncated: String = good.lines().take(5).collect::<Vec<_>>().join("\n");
        assert!(InstanceSpec::parse(&truncated).is_err());
        let wrong_kind = good.replace("\nedgesum", "\ncoalsize");
        assert!(InstanceSpec::parse(&wrong_kind).is_err());
    }

    #[test]
    fn edge_list_format() {
        let (n, e) = parse_edge_list("4 3\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(n, 4);
        assert_eq!(e, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(edge_list_to_text(n, &e), "4 3\n0 1\n1 2\n2 3\n");
        assert!(parse_edge_list("2 1\n0 2\n").is_err());
        assert!(parse_edge_list("2 2\n0 1\n").is_err());
        assert!(parse_edge_list("2 1\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn csv_formats() {
        assert_eq!(parse_profiles_csv("1,2\n3,4\n").unwrap(), vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert!(parse_profiles_csv("1,2\n3\n").is_err());
        assert_eq!(parse_weights_csv("0,1,-2.5\n").unwrap(), vec![(0, 1, -2.5)]);
        assert!(parse_distances_csv("0,1\n1,0,3\n").is_err());
    }
}
