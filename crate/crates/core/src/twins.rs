//! Open twins share `N(u) = N(v)`; closed twins share `N[u] = N[v]`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Maximal twin classes of size at least two, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPartition {
    pub open_classes: Vec<VertexSet>,
    pub closed_classes: Vec<VertexSet>,
}

impl TwinPartition {
    pub fn to_labels(&self, g: &Graph) -> TwinReport {
        let conv = |cs: &[VertexSet]| cs.iter().map(|c| g.set_labels(c)).collect();
        TwinReport {
            open: conv(&self.open_classes),
            closed: conv(&self.closed_classes),
        }
    }
}

/// JSON shape of a twin partition: label arrays keyed `open` and `closed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TwinReport {
    pub open: Vec<Vec<String>>,
    pub closed: Vec<Vec<String>>,
}

fn group_by_key<K, F>(g: &Graph, key: F) -> Vec<VertexSet>
where
    K: std::hash::Hash + Eq,
    F: Fn(VertexId) -> K,
{
    // Keys are full neighborhood lists, so bucket equality is exact.
    let mut buckets: HashMap<K, Vec<VertexId>> = HashMap::new();
    for v in 0..g.n() {
        buckets.entry(key(v)).or_default().push(v);
    }
    let mut classes: Vec<Vec<VertexId>> = buckets.into_values().filter(|c| c.len() >= 2).collect();
    classes.sort_unstable_by_key(|c| c[0]);
    classes
        .into_iter()
        .map(|c| g.vertex_set(c).expect("ids come from the graph"))
        .collect()
}

pub fn twin_partition(g: &Graph) -> TwinPartition {
    let open_classes = group_by_key(g, |v| g.neighbors(v));
    let closed_classes = group_by_key(g, |v| {
        let mut closed = g.neighbors(v).to_vec();
        let at = closed.binary_search(&v).unwrap_err();
        closed.insert(at, v);
        closed
    });
    debug_assert!(open_classes
        .iter()
        .all(|o| closed_classes.iter().all(|c| o.intersection_count(c) <= 1)));
    TwinPartition {
        open_classes,
        closed_classes,
    }
}

fn check_pair(g: &Graph, u: VertexId, v: VertexId) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidArgument(format!(
            "twin test needs two distinct vertices, got `{}` twice",
            g.label(u)
        )));
    }
    Ok(())
}

pub fn are_open_twins(g: &Graph, u: VertexId, v: VertexId) -> Result<bool> {
    check_pair(g, u, v)?;
    Ok(g.neighbors(u) == g.neighbors(v))
}

pub fn are_closed_twins(g: &Graph, u: VertexId, v: VertexId) -> Result<bool> {
    check_pair(g, u, v)?;
    if !g.has_edge(u, v) {
        return Ok(false);
    }
    let strip = |x: VertexId, other: VertexId| -> Vec<VertexId> {
        g.neighbors(x)
            .iter()
            .copied()
            .filter(|&w| w != other)
            .collect()
    };
    Ok(strip(u, v) == strip(v, u))
}
