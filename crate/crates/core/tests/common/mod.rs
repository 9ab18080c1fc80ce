#![allow(dead_code)]

use std::collections::VecDeque;

use pdom::{Graph, VertexId, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_id_edges(labels(n), edges).unwrap()
}

/// A random spanning tree plus `G(n, p)` extra edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_id_edges(labels(n), edges).unwrap()
}

/// A connected base graph grown by copying neighborhoods, so it has open
/// (and sometimes closed) twin classes. Total size is at most `n`.
pub fn twin_rich<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let base_n = (n / 2).max(2).min(n);
    let base = random_connected(rng, base_n, p);
    let mut adj: Vec<Vec<VertexId>> = (0..base_n).map(|v| base.neighbors(v).to_vec()).collect();
    while adj.len() < n {
        let v = rng.gen_range(0..adj.len());
        let w = adj.len();
        let closed = rng.gen_bool(0.25);
        let mut nbrs = adj[v].clone();
        if closed {
            nbrs.push(v);
        }
        for &u in &nbrs {
            adj[u].push(w);
        }
        adj.push(nbrs);
    }
    let edges: Vec<_> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
        .collect();
    Graph::from_id_edges(labels(n), edges).unwrap()
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize, p: f64) -> VertexSet {
    VertexSet::from_ids(n, (0..n).filter(|_| rng.gen_bool(p))).unwrap()
}

/// Sequential closure applying one force at a time, chosen uniformly among
/// all currently available forces.
pub fn closure_in_random_order<R: Rng>(rng: &mut R, g: &Graph, seeds: &VertexSet) -> VertexSet {
    let mut mon = g.closed_neighborhood_of_set(seeds);
    loop {
        let mut forces = Vec::new();
        for x in mon.iter() {
            let open: Vec<_> = g
                .neighbors(x)
                .iter()
                .filter(|&&w| !mon.contains(w))
                .collect();
            if open.len() == 1 {
                forces.push(*open[0]);
            }
        }
        match forces.choose(rng) {
            Some(&y) => {
                mon.insert(y);
            }
            None => return mon,
        }
    }
}

/// Plain queue-based BFS kept separate from the library's.
pub fn reference_distances(g: &Graph, source: VertexId) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// The open twin pairs implied by a twin partition.
pub fn open_twin_pairs(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let mut pairs = Vec::new();
    for class in pdom::twins::twin_partition(g).open_classes {
        let members = class.to_vec();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                pairs.push((u, v));
            }
        }
    }
    pairs
}
