//! Exhaustive baselines for `γ`, `γ_P`, `dim` and `η_P`.
//!
//! These deliberately share nothing with the fast paths beyond the graph
//! itself: distances come from Floyd–Warshall, the monitoring closure is a
//! naive rescan until nothing changes, and every candidate is evaluated from
//! scratch. Only the returned certificate is re-checked with the library
//! checkers.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::powerdom;
use crate::resolving;

pub const DEFAULT_LIMIT: usize = 24;
pub const DEFAULT_ETA_P_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Problem {
    Gamma,
    GammaP,
    Dim,
    EtaP,
}

impl Problem {
    pub fn tag(self) -> &'static str {
        match self {
            Problem::Gamma => "gamma",
            Problem::GammaP => "gamma-p",
            Problem::Dim => "dim",
            Problem::EtaP => "eta-p",
        }
    }

    pub fn default_limit(self) -> usize {
        match self {
            Problem::EtaP => DEFAULT_ETA_P_LIMIT,
            _ => DEFAULT_LIMIT,
        }
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(Problem::Gamma),
            "gamma-p" | "gamma_p" => Ok(Problem::GammaP),
            "dim" => Ok(Problem::Dim),
            "eta-p" | "eta_p" => Ok(Problem::EtaP),
            other => Err(Error::UnknownProblem(other.to_owned())),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub problem: Problem,
    pub optimum: usize,
    pub certificate: VertexSet,
    pub subsets_examined: u64,
    pub elapsed: Duration,
}

/// JSON form of an [`OracleResult`], with labels instead of ids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub problem: Problem,
    pub optimum: usize,
    pub certificate: Vec<String>,
    pub subsets_examined: u64,
    pub elapsed_us: u64,
}

impl OracleResult {
    pub fn record(&self, g: &Graph) -> OracleRecord {
        OracleRecord {
            problem: self.problem,
            optimum: self.optimum,
            certificate: g.set_labels(&self.certificate),
            subsets_examined: self.subsets_examined,
            elapsed_us: self.elapsed.as_micros() as u64,
        }
    }
}

struct Naive<'g> {
    g: &'g Graph,
    dist: Option<Vec<Vec<Option<u32>>>>,
}

impl<'g> Naive<'g> {
    fn new(g: &'g Graph, needs_distances: bool) -> Self {
        Self {
            g,
            dist: needs_distances.then(|| floyd_warshall(g)),
        }
    }

    fn dominates(&self, s: &[VertexId]) -> bool {
        let mut seen = vec![false; self.g.n()];
        for &v in s {
            seen[v] = true;
            for &w in self.g.neighbors(v) {
                seen[w] = true;
            }
        }
        seen.into_iter().all(|b| b)
    }

    fn power_dominates(&self, s: &[VertexId]) -> bool {
        let n = self.g.n();
        let mut mon = vec![false; n];
        for &v in s {
            mon[v] = true;
            for &w in self.g.neighbors(v) {
                mon[w] = true;
            }
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                if !mon[x] {
                    continue;
                }
                let mut open = self.g.neighbors(x).iter().filter(|&&w| !mon[w]);
                if let (Some(&y), None) = (open.next(), open.next()) {
                    mon[y] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        mon.into_iter().all(|b| b)
    }

    fn resolves(&self, s: &[VertexId]) -> bool {
        let dist = self.dist.as_ref().expect("distances computed");
        let n = self.g.n();
        for x in 0..n {
            for y in x + 1..n {
                if s.iter().all(|&r| dist[r][x] == dist[r][y]) {
                    return false;
                }
            }
        }
        true
    }

    fn accepts(&self, problem: Problem, s: &[VertexId]) -> bool {
        match problem {
            Problem::Gamma => self.dominates(s),
            Problem::GammaP => self.power_dominates(s),
            Problem::Dim => self.resolves(s),
            Problem::EtaP => self.resolves(s) && self.power_dominates(s),
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
        for &w in g.neighbors(v) {
            row[w] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = d[k][j] {
                    if d[i][j].is_none_or(|ij| ik + kj < ij) {
                        d[i][j] = Some(ik + kj);
                    }
                }
            }
        }
    }
    d
}

/// Smallest set solving `problem`, searched from size 0 upward with the
/// first witness in lexicographic order.
pub fn brute_force(g: &Graph, problem: Problem, limit: usize) -> Result<OracleResult> {
    let start = Instant::now();
    if g.n() > limit {
        return Err(Error::LimitExceeded {
            what: "exhaustive oracle",
            n: g.n(),
            limit,
        });
    }
    if matches!(problem, Problem::Dim | Problem::EtaP) {
        g.require_connected()?;
    }
    let naive = Naive::new(g, matches!(problem, Problem::Dim | Problem::EtaP));
    let mut examined = 0u64;
    let mut found = None;
    'search: for size in 0..=g.n() {
        for combo in (0..g.n()).combinations(size) {
            examined += 1;
            if naive.accepts(problem, &combo) {
                found = Some(combo);
                break 'search;
            }
        }
    }
    let certificate = g.vertex_set(found.expect("the full vertex set always qualifies"))?;
    verify_certificate(g, problem, &certificate)?;
    Ok(OracleResult {
        problem,
        optimum: certificate.len(),
        certificate,
        subsets_examined: examined,
        elapsed: start.elapsed(),
    })
}

/// Checks a certificate with the library checker for `problem`.
pub fn verify_certificate(g: &Graph, problem: Problem, s: &VertexSet) -> Result<()> {
    let ok = match problem {
        Problem::Gamma => g.closed_neighborhood_of_set(s).is_full(),
        Problem::GammaP => powerdom::is_pds(g, s)?,
        Problem::Dim => resolving::is_resolving(g, s)?.is_resolving(),
        Problem::EtaP => resolving::is_rpds(g, s)?,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Certificate(format!(
            "{} certificate {:?} does not verify",
            problem,
            g.set_labels(s)
        )))
    }
}
