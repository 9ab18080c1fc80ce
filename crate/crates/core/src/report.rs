//! Serializable analysis report.
//!
//! Field order is fixed and maps are ordered, so two runs over the same input
//! produce identical JSON apart from `timestamp` (and oracle timings, when
//! oracle runs are requested). Every certificate in a report can be checked
//! again with [`AnalysisReport::verify`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Diameter, Graph, VertexSet};
use crate::method::Methods;
use crate::oracle::{self, OracleRecord, Problem};
use crate::powerdom::{self, Maximization};
use crate::resolving;
use crate::twins::twin_partition;

pub const REPORT_SCHEMA_VERSION: &str = "1.0";

/// Graphs above this size get no diameter in the summary.
pub const DIAMETER_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Twins,
    GammaP,
    Dim,
    EtaP,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Twins, Check::GammaP, Check::Dim, Check::EtaP];
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "twins" => Ok(Check::Twins),
            "gamma-p" => Ok(Check::GammaP),
            "dim" => Ok(Check::Dim),
            "eta-p" => Ok(Check::EtaP),
            other => Err(Error::InvalidArgument(format!(
                "unknown check `{other}` (expected twins, gamma-p, dim, eta-p or all)"
            ))),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Twins => "twins",
            Check::GammaP => "gamma-p",
            Check::Dim => "dim",
            Check::EtaP => "eta-p",
        })
    }
}

/// Parses a comma-separated check list; `all` selects every check.
pub fn parse_checks(list: &str) -> Result<BTreeSet<Check>> {
    let mut out = BTreeSet::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "all" {
            out.extend(Check::ALL);
        } else {
            out.insert(item.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidArgument("no checks requested".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub connected: bool,
    /// `None` for disconnected or very large graphs.
    pub diameter: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinCensus {
    pub open_class_count: usize,
    pub closed_class_count: usize,
    /// Class size to number of classes of that size.
    pub open_class_sizes: BTreeMap<usize, usize>,
    pub closed_class_sizes: BTreeMap<usize, usize>,
    pub open: Vec<Vec<String>>,
    pub closed: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaPRecord {
    pub lower: usize,
    pub upper: usize,
    pub certificate: Vec<String>,
    pub lower_methods: Methods,
    pub upper_methods: Methods,
    /// Twin classes certifying the twin lower bound.
    pub twin_bound_classes: Vec<Vec<String>>,
    pub twin_bound_maximization: Maximization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRecord {
    pub lower: usize,
    pub upper: usize,
    pub basis: Vec<String>,
    pub lower_methods: Methods,
    pub upper_methods: Methods,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaPRecord {
    pub lower: usize,
    pub upper: usize,
    pub certificate: Option<Vec<String>>,
    pub lower_methods: Methods,
    pub upper_methods: Methods,
}

/// Propagation trace of one seed set, in the `DOM`/`PROP` line format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub seeds: Vec<String>,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub tool_version: String,
    pub timestamp: String,
    pub source: String,
    pub graph_summary: GraphSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twin_census: Option<TwinCensus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_p: Option<GammaPRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<DimRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_p: Option<EtaPRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<TraceEntry>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub oracle: Vec<OracleRecord>,
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub checks: BTreeSet<Check>,
    pub exact_limit: usize,
    /// Candidate certificate tried for every bounded quantity.
    pub hint: Option<VertexSet>,
    pub with_traces: bool,
    /// Also run the exhaustive oracle for each requested quantity that fits
    /// its default limit.
    pub with_oracle: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            checks: Check::ALL.into(),
            exact_limit: powerdom::DEFAULT_EXACT_LIMIT,
            hint: None,
            with_traces: false,
            with_oracle: false,
        }
    }
}

fn size_histogram(classes: &[VertexSet]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for c in classes {
        *h.entry(c.len()).or_insert(0) += 1;
    }
    h
}

pub fn analyze(
    g: &Graph,
    source: &str,
    opts: &AnalysisOptions,
    timestamp: &str,
) -> Result<AnalysisReport> {
    let connected = g.is_connected();
    let diameter = match (connected, g.n() <= DIAMETER_LIMIT) {
        (true, true) => match g.diameter() {
            Diameter::Finite(d) => Some(d),
            Diameter::Disconnected => None,
        },
        _ => None,
    };
    let mut report = AnalysisReport {
        schema_version: REPORT_SCHEMA_VERSION.into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        timestamp: timestamp.into(),
        source: source.into(),
        graph_summary: GraphSummary {
            n: g.n(),
            m: g.m(),
            degree_histogram: g.degree_histogram(),
            connected,
            diameter,
        },
        twin_census: None,
        gamma_p: None,
        dim: None,
        eta_p: None,
        traces: None,
        oracle: Vec::new(),
    };
    let hint = opts.hint.as_ref();

    if opts.checks.contains(&Check::Twins) {
        let tp = twin_partition(g);
        let labels = tp.to_labels(g);
        report.twin_census = Some(TwinCensus {
            open_class_count: tp.open_classes.len(),
            closed_class_count: tp.closed_classes.len(),
            open_class_sizes: size_histogram(&tp.open_classes),
            closed_class_sizes: size_histogram(&tp.closed_classes),
            open: labels.open,
            closed: labels.closed,
        });
    }
    if opts.checks.contains(&Check::GammaP) {
        let b = powerdom::gamma_p_bounds_with_hint(g, opts.exact_limit, hint)?;
        if opts.with_traces {
            let trace = powerdom::monitoring_closure(g, &b.certificate)?;
            report.traces = Some(vec![TraceEntry {
                seeds: g.set_labels(&b.certificate),
                lines: trace.to_text(g).lines().map(str::to_owned).collect(),
            }]);
        }
        report.gamma_p = Some(GammaPRecord {
            lower: b.lower,
            upper: b.upper,
            certificate: g.set_labels(&b.certificate),
            lower_methods: b.lower_methods,
            upper_methods: b.upper_methods,
            twin_bound_classes: b
                .twin_bound
                .classes
                .iter()
                .map(|c| g.set_labels(c))
                .collect(),
            twin_bound_maximization: b.twin_bound.method,
        });
    }
    if opts.checks.contains(&Check::Dim) {
        let b = resolving::dim_bounds(g, opts.exact_limit, hint)?;
        report.dim = Some(DimRecord {
            lower: b.lower,
            upper: b.upper,
            basis: g.set_labels(&b.basis),
            lower_methods: b.lower_methods,
            upper_methods: b.upper_methods,
        });
    }
    if opts.checks.contains(&Check::EtaP) {
        let b = resolving::eta_p_bounds_with_hint(g, opts.exact_limit, hint)?;
        report.eta_p = Some(EtaPRecord {
            lower: b.lower,
            upper: b.upper,
            certificate: b.certificate.as_ref().map(|c| g.set_labels(c)),
            lower_methods: b.lower_methods,
            upper_methods: b.upper_methods,
        });
    }
    if opts.with_oracle {
        let problems = [
            (Check::GammaP, Problem::GammaP),
            (Check::Dim, Problem::Dim),
            (Check::EtaP, Problem::EtaP),
        ];
        for (check, problem) in problems {
            if opts.checks.contains(&check) && g.n() <= problem.default_limit() {
                let r = oracle::brute_force(g, problem, problem.default_limit())?;
                report.oracle.push(r.record(g));
            }
        }
    }
    Ok(report)
}

impl AnalysisReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Parses a report; call [`AnalysisReport::verify`] to re-check it.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Re-checks every certificate and bound ordering against `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::Certificate(msg));
        let s = &self.graph_summary;
        if (s.n, s.m) != (g.n(), g.m()) {
            return fail(format!(
                "report describes n={} m={}, graph has n={} m={}",
                s.n,
                s.m,
                g.n(),
                g.m()
            ));
        }
        if let Some(t) = &self.twin_census {
            let labels = twin_partition(g).to_labels(g);
            if labels.open != t.open || labels.closed != t.closed {
                return fail("twin census does not match the graph".into());
            }
        }
        if let Some(gp) = &self.gamma_p {
            check_order("gamma_p", gp.lower, gp.upper)?;
            let cert = g.vertex_set_from_labels(&gp.certificate)?;
            if cert.len() != gp.upper || !powerdom::is_pds(g, &cert)? {
                return fail("gamma_p certificate is not a PDS of the stated size".into());
            }
            let classes = gp
                .twin_bound_classes
                .iter()
                .map(|c| g.vertex_set_from_labels(c))
                .collect::<Result<Vec<_>>>()?;
            check_twin_packing(g, &classes)?;
            if classes.len() > gp.lower {
                return fail("twin packing exceeds the reported lower bound".into());
            }
        }
        if let Some(d) = &self.dim {
            check_order("dim", d.lower, d.upper)?;
            let basis = g.vertex_set_from_labels(&d.basis)?;
            if basis.len() != d.upper || !resolving::is_resolving(g, &basis)?.is_resolving() {
                return fail("dim basis is not a resolving set of the stated size".into());
            }
        }
        if let Some(e) = &self.eta_p {
            check_order("eta_p", e.lower, e.upper)?;
            match &e.certificate {
                Some(c) => {
                    let cert = g.vertex_set_from_labels(c)?;
                    if cert.len() != e.upper || !resolving::is_rpds(g, &cert)? {
                        return fail("eta_p certificate is not an RPDS of the stated size".into());
                    }
                }
                None if e.upper != g.n() => {
                    return fail("eta_p upper bound below n needs a certificate".into());
                }
                None => {}
            }
        }
        for t in self.traces.iter().flatten() {
            let seeds = g.vertex_set_from_labels(&t.seeds)?;
            let text = powerdom::monitoring_closure(g, &seeds)?.to_text(g);
            if text.lines().ne(t.lines.iter().map(String::as_str)) {
                return fail("stored trace differs from a fresh closure".into());
            }
        }
        for r in &self.oracle {
            let cert = g.vertex_set_from_labels(&r.certificate)?;
            if cert.len() != r.optimum {
                return fail(format!("{} oracle certificate size mismatch", r.problem));
            }
            oracle::verify_certificate(g, r.problem, &cert)?;
        }
        Ok(())
    }
}

fn check_order(what: &str, lower: usize, upper: usize) -> Result<()> {
    if lower > upper {
        return Err(Error::Certificate(format!(
            "{what}: lower {lower} > upper {upper}"
        )));
    }
    Ok(())
}

/// Classes must be open twin sets of size ≥ 2 with pairwise disjoint closed
/// neighborhoods.
fn check_twin_packing(g: &Graph, classes: &[VertexSet]) -> Result<()> {
    let mut used = VertexSet::new(g.n());
    for c in classes {
        let members = c.to_vec();
        let same = members
            .windows(2)
            .all(|w| g.neighbors(w[0]) == g.neighbors(w[1]));
        if members.len() < 2 || !same {
            return Err(Error::Certificate(format!(
                "{:?} is not an open twin set",
                g.set_labels(c)
            )));
        }
        let zone = g.closed_neighborhood_of_set(c);
        if !zone.is_disjoint(&used) {
            return Err(Error::Certificate(
                "twin packing neighborhoods overlap".into(),
            ));
        }
        used.union_with(&zone);
    }
    Ok(())
}
