//! Power domination.
//!
//! The monitored set starts as `N[S]` and grows by propagation: a monitored
//! vertex with exactly one unmonitored neighbor forces that neighbor. The
//! fixpoint does not depend on the order forces are applied in.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::method::{Method, Methods};
use crate::twins::twin_partition;

pub const DEFAULT_EXACT_LIMIT: usize = 24;

/// Above this many classes in one conflict component the twin bound is
/// maximized greedily.
const EXACT_CONFLICT_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Dominated {
        vertex: VertexId,
    },
    Propagated {
        vertex: VertexId,
        from: VertexId,
        step: u32,
    },
}

impl TraceEvent {
    pub fn vertex(&self) -> VertexId {
        match *self {
            TraceEvent::Dominated { vertex } | TraceEvent::Propagated { vertex, .. } => vertex,
        }
    }
}

/// Domination events in ascending id order, then propagation events round by
/// round, each round ordered by the forcing vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationTrace {
    pub events: Vec<TraceEvent>,
    pub monitored: VertexSet,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum EventRecord {
    Dominated {
        vertex: String,
    },
    Propagated {
        vertex: String,
        from: String,
        step: u32,
    },
}

#[derive(Serialize, Deserialize)]
struct TraceRecord {
    events: Vec<EventRecord>,
    #[serde(rename = "final")]
    monitored: Vec<String>,
}

impl PropagationTrace {
    /// Number of propagation rounds that fired.
    pub fn rounds(&self) -> u32 {
        self.events
            .iter()
            .filter_map(|e| match e {
                TraceEvent::Propagated { step, .. } => Some(*step),
                TraceEvent::Dominated { .. } => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn propagated(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.events.iter().filter_map(|e| match *e {
            TraceEvent::Propagated { vertex, from, step } => Some((vertex, from, step)),
            TraceEvent::Dominated { .. } => None,
        })
    }

    /// `DOM v` lines followed by `PROP y FROM x STEP t` lines.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        for e in &self.events {
            match *e {
                TraceEvent::Dominated { vertex } => writeln!(out, "DOM {}", g.label(vertex)),
                TraceEvent::Propagated { vertex, from, step } => writeln!(
                    out,
                    "PROP {} FROM {} STEP {}",
                    g.label(vertex),
                    g.label(from),
                    step
                ),
            }
            .unwrap();
        }
        out
    }

    pub fn to_json(&self, g: &Graph) -> Result<String> {
        let record = TraceRecord {
            events: self
                .events
                .iter()
                .map(|e| match *e {
                    TraceEvent::Dominated { vertex } => EventRecord::Dominated {
                        vertex: g.label(vertex).to_owned(),
                    },
                    TraceEvent::Propagated { vertex, from, step } => EventRecord::Propagated {
                        vertex: g.label(vertex).to_owned(),
                        from: g.label(from).to_owned(),
                        step,
                    },
                })
                .collect(),
            monitored: g.set_labels(&self.monitored),
        };
        Ok(serde_json::to_string_pretty(&record)? + "\n")
    }

    pub fn from_json(g: &Graph, text: &str) -> Result<Self> {
        let record: TraceRecord = serde_json::from_str(text)?;
        let mut events = Vec::with_capacity(record.events.len());
        for e in record.events {
            events.push(match e {
                EventRecord::Dominated { vertex } => TraceEvent::Dominated {
                    vertex: g.require_id(&vertex)?,
                },
                EventRecord::Propagated { vertex, from, step } => TraceEvent::Propagated {
                    vertex: g.require_id(&vertex)?,
                    from: g.require_id(&from)?,
                    step,
                },
            });
        }
        Ok(Self {
            events,
            monitored: g.vertex_set_from_labels(&record.monitored)?,
        })
    }

    /// Replays the trace against `g` and `seeds`, checking that every event
    /// is justified by the rules and that `monitored` is their union.
    pub fn validate(&self, g: &Graph, seeds: &VertexSet) -> Result<()> {
        let fail = |msg: String| Err(Error::Certificate(msg));
        let dominated = g.closed_neighborhood_of_set(seeds);
        let mut state = VertexSet::new(g.n());
        // monitored-before-round snapshot for the current step
        let mut before_round = VertexSet::new(g.n());
        let mut current_step = 0;
        let mut seen_prop = false;
        for e in &self.events {
            match *e {
                TraceEvent::Dominated { vertex } => {
                    if seen_prop {
                        return fail(format!("DOM {} after a propagation", g.label(vertex)));
                    }
                    if !dominated.contains(vertex) {
                        return fail(format!("{} is not in N[S]", g.label(vertex)));
                    }
                    if !state.insert(vertex) {
                        return fail(format!("{} recorded twice", g.label(vertex)));
                    }
                }
                TraceEvent::Propagated { vertex, from, step } => {
                    if !seen_prop {
                        if state != dominated {
                            return fail("domination events do not cover N[S]".into());
                        }
                        seen_prop = true;
                    }
                    if step < current_step || step == 0 {
                        return fail(format!("step {step} out of order"));
                    }
                    if step > current_step {
                        current_step = step;
                        before_round = state.clone();
                    }
                    if !g.has_edge(from, vertex) || !before_round.contains(from) {
                        return fail(format!(
                            "{} cannot force {} at step {step}",
                            g.label(from),
                            g.label(vertex)
                        ));
                    }
                    let others_monitored = g
                        .neighbors(from)
                        .iter()
                        .all(|&w| w == vertex || before_round.contains(w));
                    if !others_monitored || before_round.contains(vertex) {
                        return fail(format!(
                            "{} has more than one unmonitored neighbor at step {step}",
                            g.label(from)
                        ));
                    }
                    if !state.insert(vertex) {
                        return fail(format!("{} recorded twice", g.label(vertex)));
                    }
                }
            }
        }
        if !seen_prop && state != dominated {
            return fail("domination events do not cover N[S]".into());
        }
        if state != self.monitored {
            return fail("final set differs from the union of events".into());
        }
        Ok(())
    }
}

fn closure(g: &Graph, seeds: &VertexSet, mut events: Option<&mut Vec<TraceEvent>>) -> VertexSet {
    let monitored = g.closed_neighborhood_of_set(seeds);
    if let Some(ev) = events.as_deref_mut() {
        ev.extend(
            monitored
                .iter()
                .map(|vertex| TraceEvent::Dominated { vertex }),
        );
    }
    propagation(g, monitored, events)
}

fn propagation(
    g: &Graph,
    mut monitored: VertexSet,
    mut events: Option<&mut Vec<TraceEvent>>,
) -> VertexSet {
    let n = g.n();
    let mut unmonitored: Vec<usize> = (0..n)
        .map(|x| {
            g.neighbors(x)
                .iter()
                .filter(|&&w| !monitored.contains(w))
                .count()
        })
        .collect();
    let mut candidates: BTreeSet<VertexId> =
        monitored.iter().filter(|&x| unmonitored[x] == 1).collect();
    let mut step = 0;
    while !candidates.is_empty() {
        step += 1;
        // forces are chosen against the state at the start of the round
        let forces: Vec<(VertexId, VertexId)> = candidates
            .iter()
            .filter(|&&x| unmonitored[x] == 1)
            .map(|&x| {
                let y = *g
                    .neighbors(x)
                    .iter()
                    .find(|&&w| !monitored.contains(w))
                    .expect("counter says one neighbor is unmonitored");
                (y, x)
            })
            .collect();
        let mut added = Vec::new();
        for (y, x) in forces {
            if monitored.insert(y) {
                if let Some(ev) = events.as_deref_mut() {
                    ev.push(TraceEvent::Propagated {
                        vertex: y,
                        from: x,
                        step,
                    });
                }
                for &w in g.neighbors(y) {
                    unmonitored[w] -= 1;
                }
                added.push(y);
            }
        }
        candidates.clear();
        for y in added {
            if unmonitored[y] == 1 {
                candidates.insert(y);
            }
            for &w in g.neighbors(y) {
                if unmonitored[w] == 1 && monitored.contains(w) {
                    candidates.insert(w);
                }
            }
        }
    }
    monitored
}

pub fn monitoring_closure(g: &Graph, seeds: &VertexSet) -> Result<PropagationTrace> {
    g.check_set(seeds)?;
    let mut events = Vec::new();
    let monitored = closure(g, seeds, Some(&mut events));
    Ok(PropagationTrace { events, monitored })
}

/// The monitored set only, without recording events.
pub fn monitored_set(g: &Graph, seeds: &VertexSet) -> Result<VertexSet> {
    g.check_set(seeds)?;
    Ok(closure(g, seeds, None))
}

/// Propagation rule alone, starting from an already monitored set.
pub fn propagate(g: &Graph, monitored: &VertexSet) -> Result<VertexSet> {
    g.check_set(monitored)?;
    Ok(propagation(g, monitored.clone(), None))
}

pub fn is_pds(g: &Graph, seeds: &VertexSet) -> Result<bool> {
    Ok(monitored_set(g, seeds)?.is_full())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Maximization {
    Exact,
    Greedy,
}

/// A packing of open twin classes whose closed neighborhoods `T ∪ N(T)` are
/// pairwise disjoint. Every PDS meets each such neighborhood, so `k ≤ γ_P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinLowerBound {
    pub k: usize,
    pub classes: Vec<VertexSet>,
    pub method: Maximization,
}

/// Maximum independent set of a small graph given as bitmask adjacency.
/// Prefers including the lowest index on ties.
fn max_independent(adj: &[u32], mask: u32) -> u32 {
    if mask == 0 {
        return 0;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let with = (1 << v) | max_independent(adj, rest & !adj[v]);
    if adj[v] & rest == 0 {
        return with;
    }
    let without = max_independent(adj, rest);
    if without.count_ones() > with.count_ones() {
        without
    } else {
        with
    }
}

pub fn twin_lower_bound(g: &Graph) -> TwinLowerBound {
    let classes = twin_partition(g).open_classes;
    let zones: Vec<VertexSet> = classes
        .iter()
        .map(|t| g.closed_neighborhood_of_set(t))
        .collect();
    let c = classes.len();
    let conflicts: Vec<Vec<usize>> = (0..c)
        .map(|i| {
            (0..c)
                .filter(|&j| j != i && !zones[i].is_disjoint(&zones[j]))
                .collect()
        })
        .collect();

    let mut seen = vec![false; c];
    let mut chosen = Vec::new();
    let mut method = Maximization::Exact;
    for start in 0..c {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            for &j in &conflicts[comp[i]] {
                if !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        if comp.len() <= EXACT_CONFLICT_LIMIT {
            let local: Vec<u32> = comp
                .iter()
                .map(|&a| {
                    comp.iter()
                        .enumerate()
                        .filter(|(_, &b)| conflicts[a].contains(&b))
                        .fold(0, |m, (bi, _)| m | (1 << bi))
                })
                .collect();
            let best = max_independent(&local, (1u32 << comp.len()) - 1);
            chosen.extend(
                (0..comp.len())
                    .filter(|&bi| best & (1 << bi) != 0)
                    .map(|bi| comp[bi]),
            );
        } else {
            method = Maximization::Greedy;
            let mut order = comp.clone();
            order.sort_by_key(|&a| (conflicts[a].len(), a));
            let mut taken: Vec<usize> = Vec::new();
            for a in order {
                if taken.iter().all(|&b| zones[a].is_disjoint(&zones[b])) {
                    taken.push(a);
                }
            }
            chosen.extend(taken);
        }
    }
    chosen.sort_unstable();
    TwinLowerBound {
        k: chosen.len(),
        classes: chosen.into_iter().map(|i| classes[i].clone()).collect(),
        method,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPBounds {
    pub lower: usize,
    pub upper: usize,
    /// A verified PDS of size `upper`.
    pub certificate: VertexSet,
    pub lower_methods: Methods,
    pub upper_methods: Methods,
    pub twin_bound: TwinLowerBound,
}

pub fn gamma_p_bounds(g: &Graph, exact_limit: usize) -> Result<GammaPBounds> {
    gamma_p_bounds_with_hint(g, exact_limit, None)
}

/// Like [`gamma_p_bounds`], also trying `hint` as an upper-bound certificate.
/// The hint is used only if it verifies as a PDS.
pub fn gamma_p_bounds_with_hint(
    g: &Graph,
    exact_limit: usize,
    hint: Option<&VertexSet>,
) -> Result<GammaPBounds> {
    if let Some(h) = hint {
        g.check_set(h)?;
    }
    let twin_bound = twin_lower_bound(g);
    let components = g.components();
    let mut out = GammaPBounds {
        lower: 0,
        upper: 0,
        certificate: VertexSet::new(g.n()),
        lower_methods: Methods::new(),
        upper_methods: Methods::new(),
        twin_bound,
    };
    if components.len() == 1 {
        let part = component_bounds(g, exact_limit, hint, &out.twin_bound)?;
        out.lower = part.lower;
        out.upper = part.upper;
        out.certificate = part.certificate;
        out.lower_methods = part.lower_methods;
        out.upper_methods = part.upper_methods;
    } else {
        for comp in components {
            let sub = g.induced_subgraph(&comp);
            let sub_hint = hint
                .map(|h| {
                    sub.vertex_set(
                        comp.iter()
                            .enumerate()
                            .filter(|(_, &v)| h.contains(v))
                            .map(|(i, _)| i),
                    )
                })
                .transpose()?;
            let sub_twins = twin_lower_bound(&sub);
            let part = component_bounds(&sub, exact_limit, sub_hint.as_ref(), &sub_twins)?;
            out.lower += part.lower;
            out.upper += part.upper;
            for i in part.certificate.iter() {
                out.certificate.insert(comp[i]);
            }
            out.lower_methods.extend(part.lower_methods);
            out.upper_methods.extend(part.upper_methods);
        }
    }
    debug_assert!(is_pds(g, &out.certificate)?);
    debug_assert!(out.lower <= out.upper);
    Ok(out)
}

struct Part {
    lower: usize,
    upper: usize,
    certificate: VertexSet,
    lower_methods: Methods,
    upper_methods: Methods,
}

/// Bounds for a connected graph.
fn component_bounds(
    g: &Graph,
    exact_limit: usize,
    hint: Option<&VertexSet>,
    twins: &TwinLowerBound,
) -> Result<Part> {
    let mut lower = twins.k.max(1);
    let mut lower_methods = Methods::new();
    lower_methods.insert(if twins.k >= 1 {
        Method::Lemma2Lower
    } else {
        Method::Trivial
    });

    if g.n() <= exact_limit {
        let certificate = exact_pds(g, lower)?;
        lower = certificate.len();
        if twins.k != lower {
            lower_methods.clear();
        }
        lower_methods.insert(Method::ExactOracle);
        return Ok(Part {
            lower,
            upper: lower,
            certificate,
            lower_methods,
            upper_methods: [Method::ExactOracle].into(),
        });
    }

    let hinted = match hint {
        Some(h) if !h.is_empty() && is_pds(g, h)? => Some(h.clone()),
        _ => None,
    };
    let (certificate, method) = match hinted {
        Some(h) if h.len() == lower => (h, Method::CanonicalCertificate),
        Some(h) => {
            let greedy = greedy_pds(g)?;
            if greedy.len() < h.len() {
                (greedy, Method::Greedy)
            } else {
                (h, Method::CanonicalCertificate)
            }
        }
        None => (greedy_pds(g)?, Method::Greedy),
    };
    Ok(Part {
        lower,
        upper: certificate.len(),
        certificate,
        lower_methods,
        upper_methods: [method].into(),
    })
}

/// Smallest PDS of a connected graph by subset enumeration from `start`
/// upward, first in lexicographic order.
fn exact_pds(g: &Graph, start: usize) -> Result<VertexSet> {
    for size in start..=g.n() {
        for combo in (0..g.n()).combinations(size) {
            let s = g.vertex_set(combo)?;
            if is_pds(g, &s)? {
                return Ok(s);
            }
        }
    }
    Ok(VertexSet::full(g.n()))
}

/// One seed per open twin class, then greedy additions by closure gain, then
/// pruning of redundant seeds in descending id order.
fn greedy_pds(g: &Graph) -> Result<VertexSet> {
    let n = g.n();
    let mut seeds = VertexSet::new(n);
    for class in twin_partition(g).open_classes {
        seeds.insert(class.iter().next().expect("classes are nonempty"));
    }
    let mut monitored = monitored_set(g, &seeds)?;
    while !monitored.is_full() {
        let mut pool = VertexSet::new(n);
        for v in (0..n).filter(|&v| !monitored.contains(v)) {
            pool.insert(v);
            for &w in g.neighbors(v) {
                pool.insert(w);
            }
        }
        let mut best: Option<(usize, VertexId, VertexSet)> = None;
        for v in pool.iter().filter(|&v| !seeds.contains(v)) {
            let mut trial = seeds.clone();
            trial.insert(v);
            let reach = monitored_set(g, &trial)?;
            if best.as_ref().is_none_or(|(c, _, _)| reach.len() > *c) {
                best = Some((reach.len(), v, reach));
            }
        }
        let (_, v, reach) = best.expect("an unmonitored vertex exists");
        seeds.insert(v);
        monitored = reach;
    }
    for v in seeds.to_vec().into_iter().rev() {
        seeds.remove(v);
        if !is_pds(g, &seeds)? {
            seeds.insert(v);
        }
    }
    Ok(seeds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fcn::{build_fcn, canonical_pds, FcnDimension};
    use crate::graph::build_graph;

    fn fcn(d: u32) -> (Graph, FcnDimension) {
        let dim = FcnDimension::new(d).unwrap();
        (build_fcn(dim), dim)
    }

    #[test]
    fn c4_closure_trace() {
        let (g, _) = fcn(0);
        let seeds = g.vertex_set([0]).unwrap();
        let trace = monitoring_closure(&g, &seeds).unwrap();
        assert_eq!(
            trace.to_text(&g),
            "DOM 00\nDOM 01\nDOM 10\nPROP 11 FROM 01 STEP 1\n"
        );
        assert!(trace.monitored.is_full());
        trace.validate(&g, &seeds).unwrap();

        let empty = monitoring_closure(&g, &VertexSet::new(4)).unwrap();
        assert!(empty.events.is_empty() && empty.monitored.is_empty());
    }

    #[test]
    fn canonical_set_monitors_fcn1_in_one_round() {
        let (g, dim) = fcn(1);
        let a = canonical_pds(dim);
        let trace = monitoring_closure(&g, &a).unwrap();
        assert!(trace.monitored.is_full());
        assert_eq!(trace.rounds(), 1);
        let propagated: Vec<_> = trace
            .propagated()
            .map(|(y, _, _)| g.label(y).to_owned())
            .collect();
        assert_eq!(propagated.len(), 4);
        assert!(propagated.iter().all(|l| l.ends_with("10")));
        trace.validate(&g, &a).unwrap();
    }

    #[test]
    fn single_suffix_10_vertex_stalls() {
        let (g, _) = fcn(1);
        for v in (0..16).filter(|v| v & 3 == 0b10) {
            assert!(!is_pds(&g, &g.vertex_set([v]).unwrap()).unwrap());
        }
    }

    #[test]
    fn trace_json_round_trip_and_tamper_detection() {
        let (g, dim) = fcn(1);
        let a = canonical_pds(dim);
        let trace = monitoring_closure(&g, &a).unwrap();
        let back = PropagationTrace::from_json(&g, &trace.to_json(&g).unwrap()).unwrap();
        assert_eq!(back, trace);

        let mut bad = trace.clone();
        if let Some(TraceEvent::Propagated { from, .. }) = bad.events.last_mut() {
            *from = 0b0001;
        }
        assert!(bad.validate(&g, &a).is_err());
    }

    #[test]
    fn twin_bounds_on_small_cases() {
        let (c4, _) = fcn(0);
        let tb = twin_lower_bound(&c4);
        assert_eq!(tb.k, 1);
        assert_eq!(tb.method, Maximization::Exact);
        assert_eq!(twin_lower_bound(&fcn(1).0).k, 4);
        assert_eq!(twin_lower_bound(&fcn(2).0).k, 16);
    }

    #[test]
    fn bounds_on_c4_and_fcn1() {
        let (c4, _) = fcn(0);
        let b = gamma_p_bounds(&c4, DEFAULT_EXACT_LIMIT).unwrap();
        assert_eq!((b.lower, b.upper), (1, 1));

        let (g, _) = fcn(1);
        let b = gamma_p_bounds(&g, DEFAULT_EXACT_LIMIT).unwrap();
        assert_eq!((b.lower, b.upper, b.certificate.len()), (4, 4, 4));
        assert!(b.upper_methods.contains(&Method::ExactOracle));
    }

    #[test]
    fn fcn2_bounds_from_canonical_certificate() {
        let (g, dim) = fcn(2);
        let a = canonical_pds(dim);
        let b = gamma_p_bounds_with_hint(&g, DEFAULT_EXACT_LIMIT, Some(&a)).unwrap();
        assert_eq!((b.lower, b.upper), (16, 16));
        assert_eq!(b.certificate, a);
        assert!(b.lower_methods.contains(&Method::Lemma2Lower));
        assert!(b.upper_methods.contains(&Method::CanonicalCertificate));

        let greedy = gamma_p_bounds(&g, DEFAULT_EXACT_LIMIT).unwrap();
        assert_eq!(greedy.upper, 16);
        assert!(is_pds(&g, &greedy.certificate).unwrap());
    }

    #[test]
    fn disconnected_graphs_sum_over_components() {
        let g = build_graph(
            &["a", "b", "c", "x", "y", "z", "q"],
            &[("a", "b"), ("b", "c"), ("x", "y"), ("y", "z"), ("z", "x")],
        )
        .unwrap();
        let b = gamma_p_bounds(&g, DEFAULT_EXACT_LIMIT).unwrap();
        assert_eq!((b.lower, b.upper), (3, 3));
        assert!(is_pds(&g, &b.certificate).unwrap());

        let forced = gamma_p_bounds(&g, 0).unwrap();
        assert!(forced.lower <= forced.upper);
        assert!(is_pds(&g, &forced.certificate).unwrap());
    }

    #[test]
    fn rejects_foreign_sets() {
        let (g, _) = fcn(0);
        assert!(is_pds(&g, &VertexSet::new(5)).is_err());
    }
}
