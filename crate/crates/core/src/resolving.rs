//! Distance codes, resolving sets, metric dimension and resolving power
//! domination.
//!
//! Every operation here needs a connected graph; disconnected inputs are
//! rejected with [`Error::Disconnected`].

use std::cmp::Ordering;
use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, VertexId, VertexSet};
use crate::method::{Method, Methods};
use crate::powerdom::{gamma_p_bounds_with_hint, is_pds};
use crate::twins::twin_partition;

/// Largest graph for which greedy resolving sets and pruned RPDS
/// certificates are computed (they need the full distance matrix).
pub const GREEDY_LIMIT: usize = 4096;

/// Distances from one vertex to the landmarks, in landmark order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CodeVector(pub Vec<u32>);

/// Distances from each landmark to every vertex, one row per landmark.
fn landmark_rows(g: &Graph, landmarks: &[VertexId]) -> Vec<Vec<u32>> {
    landmarks.iter().map(|&r| g.bfs(r)).collect()
}

/// `C_R(x)` for every vertex `x`, indexed by vertex id.
pub fn codes(g: &Graph, landmarks: &[VertexId]) -> Result<Vec<CodeVector>> {
    g.require_connected()?;
    if landmarks.is_empty() {
        return Err(Error::InvalidArgument("landmark list is empty".into()));
    }
    for &r in landmarks {
        g.check_vertex(r)?;
    }
    let rows = landmark_rows(g, landmarks);
    Ok((0..g.n())
        .map(|x| CodeVector(rows.iter().map(|row| row[x]).collect()))
        .collect())
}

/// Code table as CSV: a header `vertex,<landmark labels…>` and one row per
/// vertex.
pub fn codes_csv(g: &Graph, landmarks: &[VertexId]) -> Result<String> {
    let table = codes(g, landmarks)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(std::iter::once("vertex").chain(landmarks.iter().map(|&r| g.label(r))))?;
    for (x, code) in table.iter().enumerate() {
        let mut rec = vec![g.label(x).to_owned()];
        rec.extend(code.0.iter().map(u32::to_string));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 labels"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    Resolving,
    /// Two distinct vertices with equal codes, `u < v`.
    Unresolved(VertexId, VertexId),
}

impl Resolution {
    pub fn is_resolving(self) -> bool {
        self == Resolution::Resolving
    }
}

/// Sorts vertices by code and reports the first adjacent duplicate.
fn first_collision<F>(n: usize, cmp: F) -> Resolution
where
    F: Fn(VertexId, VertexId) -> Ordering,
{
    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by(|&a, &b| cmp(a, b).then(a.cmp(&b)));
    order
        .windows(2)
        .find(|w| cmp(w[0], w[1]) == Ordering::Equal)
        .map_or(Resolution::Resolving, |w| {
            Resolution::Unresolved(w[0], w[1])
        })
}

fn resolves_in(dm: &DistanceMatrix, landmarks: &[VertexId]) -> Resolution {
    first_collision(dm.n(), |a, b| {
        landmarks
            .iter()
            .map(|&r| dm.row(r)[a])
            .cmp(landmarks.iter().map(|&r| dm.row(r)[b]))
    })
}

pub fn is_resolving(g: &Graph, landmarks: &VertexSet) -> Result<Resolution> {
    g.require_connected()?;
    g.check_set(landmarks)?;
    let rows = landmark_rows(g, &landmarks.to_vec());
    Ok(first_collision(g.n(), |a, b| {
        rows.iter()
            .map(|row| row[a])
            .cmp(rows.iter().map(|row| row[b]))
    }))
}

/// Every twin class keeps all but at most one member in any resolving set.
/// Open and closed classes never share a vertex, so their deficits add up.
pub fn dim_lower_bound(g: &Graph) -> usize {
    let tp = twin_partition(g);
    let forced: usize = tp
        .open_classes
        .iter()
        .chain(&tp.closed_classes)
        .map(|c| c.len() - 1)
        .sum();
    if g.n() >= 2 {
        forced.max(1)
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricBasis {
    pub dim: usize,
    pub basis: VertexSet,
}

/// Minimum resolving set by subset enumeration in size-then-lexicographic
/// order.
pub fn metric_dimension_exact(g: &Graph, limit: usize) -> Result<MetricBasis> {
    g.require_connected()?;
    if g.n() > limit {
        return Err(Error::LimitExceeded {
            what: "exact metric dimension (use dim bounds instead)",
            n: g.n(),
            limit,
        });
    }
    let dm = g.all_pairs_distances();
    for size in dim_lower_bound(g)..=g.n() {
        for combo in (0..g.n()).combinations(size) {
            if resolves_in(&dm, &combo).is_resolving() {
                return Ok(MetricBasis {
                    dim: size,
                    basis: g.vertex_set(combo)?,
                });
            }
        }
    }
    unreachable!("the full vertex set resolves a connected graph")
}

/// Forced twin members first, then repeatedly the landmark that splits the
/// current code classes most, then pruning in descending id order.
pub fn greedy_resolving_set(g: &Graph) -> Result<VertexSet> {
    g.require_connected()?;
    if g.n() > GREEDY_LIMIT {
        return Err(Error::LimitExceeded {
            what: "greedy resolving set",
            n: g.n(),
            limit: GREEDY_LIMIT,
        });
    }
    let n = g.n();
    let dm = g.all_pairs_distances();
    let mut set = VertexSet::new(n);
    let tp = twin_partition(g);
    for class in tp.open_classes.iter().chain(&tp.closed_classes) {
        for v in class.iter().skip(1) {
            set.insert(v);
        }
    }
    let class_count = |members: &[VertexId]| -> usize {
        let mut seen = HashSet::with_capacity(n);
        for x in 0..n {
            seen.insert(members.iter().map(|&r| dm.row(r)[x]).collect::<Vec<_>>());
        }
        seen.len()
    };
    let mut members = set.to_vec();
    let mut classes = class_count(&members);
    while classes < n {
        let (best, count) = (0..n)
            .filter(|&v| !set.contains(v))
            .map(|v| {
                let mut trial = members.clone();
                trial.push(v);
                (v, class_count(&trial))
            })
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("an unresolved pair leaves a candidate");
        set.insert(best);
        members.push(best);
        classes = count;
    }
    for v in set.to_vec().into_iter().rev() {
        set.remove(v);
        if !resolves_in(&dm, &set.to_vec()).is_resolving() {
            set.insert(v);
        }
    }
    Ok(set)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimBounds {
    pub lower: usize,
    pub upper: usize,
    /// A verified resolving set of size `upper`.
    pub basis: VertexSet,
    pub lower_methods: Methods,
    pub upper_methods: Methods,
}

/// Exact when `n ≤ exact_limit`; otherwise the twin bound below and the
/// better of the verified `hint` and a greedy set above.
pub fn dim_bounds(g: &Graph, exact_limit: usize, hint: Option<&VertexSet>) -> Result<DimBounds> {
    g.require_connected()?;
    if g.n() <= exact_limit {
        let exact = metric_dimension_exact(g, exact_limit)?;
        return Ok(DimBounds {
            lower: exact.dim,
            upper: exact.dim,
            basis: exact.basis,
            lower_methods: [Method::ExactOracle].into(),
            upper_methods: [Method::ExactOracle].into(),
        });
    }
    let lower = dim_lower_bound(g);
    let hinted = match hint {
        Some(h) if is_resolving(g, h)?.is_resolving() => Some(h.clone()),
        _ => None,
    };
    let (basis, method) = match hinted {
        Some(h) if h.len() == lower => (h, Method::CanonicalCertificate),
        hinted if g.n() <= GREEDY_LIMIT => {
            let greedy = greedy_resolving_set(g)?;
            match hinted {
                Some(h) if h.len() <= greedy.len() => (h, Method::CanonicalCertificate),
                _ => (greedy, Method::Greedy),
            }
        }
        Some(h) => (h, Method::CanonicalCertificate),
        None => {
            // all but one vertex always resolve
            let mut all = VertexSet::full(g.n());
            all.remove(g.n() - 1);
            (all, Method::Trivial)
        }
    };
    Ok(DimBounds {
        lower,
        upper: basis.len(),
        basis,
        lower_methods: [Method::TwinLower].into(),
        upper_methods: [method].into(),
    })
}

pub fn is_rpds(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(is_resolving(g, s)?.is_resolving() && is_pds(g, s)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaPBounds {
    pub lower: usize,
    pub upper: usize,
    /// A verified RPDS of size `upper`; `None` when the upper bound is the
    /// whole vertex set and was not searched.
    pub certificate: Option<VertexSet>,
    pub lower_methods: Methods,
    pub upper_methods: Methods,
}

pub fn eta_p_bounds(g: &Graph, exact_limit: usize) -> Result<EtaPBounds> {
    eta_p_bounds_with_hint(g, exact_limit, None)
}

/// `max(dim, γ_P)` below; above, the smallest verified RPDS found: exhaustive
/// when `n ≤ exact_limit`, otherwise the hint or a pruned union of a
/// resolving set and a PDS.
pub fn eta_p_bounds_with_hint(
    g: &Graph,
    exact_limit: usize,
    hint: Option<&VertexSet>,
) -> Result<EtaPBounds> {
    g.require_connected()?;
    let gp = gamma_p_bounds_with_hint(g, exact_limit, hint)?;
    let dim = dim_bounds(g, exact_limit, hint)?;
    let lower = gp.lower.max(dim.lower);

    if g.n() <= exact_limit {
        let dm = g.all_pairs_distances();
        for size in lower..=g.n() {
            for combo in (0..g.n()).combinations(size) {
                if !resolves_in(&dm, &combo).is_resolving() {
                    continue;
                }
                let s = g.vertex_set(combo)?;
                if is_pds(g, &s)? {
                    return Ok(EtaPBounds {
                        lower: size,
                        upper: size,
                        certificate: Some(s),
                        lower_methods: [Method::ExactOracle].into(),
                        upper_methods: [Method::ExactOracle].into(),
                    });
                }
            }
        }
        unreachable!("the full vertex set is an RPDS of a connected graph");
    }

    let lower_methods: Methods = [Method::SandwichLower].into();
    if let Some(h) = hint {
        if h.len() == lower && is_rpds(g, h)? {
            return Ok(EtaPBounds {
                lower,
                upper: lower,
                certificate: Some(h.clone()),
                lower_methods,
                upper_methods: [Method::CanonicalCertificate].into(),
            });
        }
    }
    if g.n() > GREEDY_LIMIT {
        return Ok(EtaPBounds {
            lower,
            upper: g.n(),
            certificate: None,
            lower_methods,
            upper_methods: [Method::Trivial].into(),
        });
    }

    let dm = g.all_pairs_distances();
    let mut set = dim.basis.clone();
    set.union_with(&gp.certificate);
    let outside_pds = set
        .iter()
        .filter(|&v| !gp.certificate.contains(v))
        .collect_vec();
    let order = outside_pds
        .into_iter()
        .rev()
        .chain(gp.certificate.to_vec().into_iter().rev());
    for v in order {
        if set.len() == lower {
            break;
        }
        set.remove(v);
        if !(resolves_in(&dm, &set.to_vec()).is_resolving() && is_pds(g, &set)?) {
            set.insert(v);
        }
    }
    let mut upper_methods: Methods = [Method::Greedy].into();
    let mut certificate = set;
    if let Some(h) = hint {
        if h.len() <= certificate.len() && is_rpds(g, h)? {
            certificate = h.clone();
            upper_methods = [Method::CanonicalCertificate].into();
        }
    }
    Ok(EtaPBounds {
        lower,
        upper: certificate.len(),
        certificate: Some(certificate),
        lower_methods,
        upper_methods,
    })
}
