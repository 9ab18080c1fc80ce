//! The fractal cubic network `FCN(d)`.
//!
//! `FCN(0)` is the 4-cycle `00–01–11–10–00`. `FCN(d)` takes four copies of
//! `FCN(d−1)`, prefixes their labels with `00`, `01`, `10` and `11`, and joins
//! the copies with a 4-cycle through their connector vertices
//! `q ∥ 11 ∥ 0^{2d−2}` in the order `00 → 10 → 11 → 01 → 00`.
//!
//! Labels are binary strings of length `2d + 2` and a vertex id is the label
//! read as a binary number, so ids follow lexicographic label order. The
//! generator is iterative: every vertex gets the base 4-cycle on its last two
//! bits, and every level `ℓ = 1..=d` adds one connector cycle per block of
//! `2(d − ℓ)` leading bits.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

pub const DEFAULT_MAX_DIMENSION: u32 = 8;

/// Base cycle order on the last two bits: 00, 01, 11, 10.
const BASE_CYCLE: [usize; 4] = [0b00, 0b01, 0b11, 0b10];
/// Connector cycle order on the copy prefix: 00, 10, 11, 01.
const CONNECTOR_CYCLE: [usize; 4] = [0b00, 0b10, 0b11, 0b01];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FcnDimension(u32);

impl FcnDimension {
    pub fn new(d: u32) -> Result<Self> {
        Self::with_cap(d, DEFAULT_MAX_DIMENSION)
    }

    pub fn with_cap(d: u32, cap: u32) -> Result<Self> {
        if d > cap {
            return Err(Error::DimensionCap { d, cap });
        }
        Ok(Self(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn label_len(self) -> usize {
        2 * self.0 as usize + 2
    }

    pub fn vertex_count(self) -> usize {
        1 << self.label_len()
    }

    /// `4^d`, the size of the canonical monitoring set for `d ≥ 1`.
    pub fn block_count(self) -> usize {
        1 << (2 * self.0)
    }
}

/// A binary vertex label of length `2d + 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FcnLabel(String);

impl FcnLabel {
    pub fn from_id(id: VertexId, dim: FcnDimension) -> Self {
        Self(format!("{:0width$b}", id, width = dim.label_len()))
    }

    pub fn parse(bits: &str, dim: FcnDimension) -> Result<Self> {
        let label: FcnLabel = bits.parse()?;
        if label.0.len() != dim.label_len() {
            return Err(Error::InvalidArgument(format!(
                "label `{bits}` has length {}, FCN({}) labels have length {}",
                bits.len(),
                dim.get(),
                dim.label_len()
            )));
        }
        Ok(label)
    }

    pub fn id(&self) -> VertexId {
        usize::from_str_radix(&self.0, 2).expect("validated binary label")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The last two characters, `u_2 u_1`.
    pub fn suffix(&self) -> &str {
        &self.0[self.0.len() - 2..]
    }
}

impl FromStr for FcnLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() < 2 || !s.len().is_multiple_of(2) || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidArgument(format!(
                "`{s}` is not an even-length binary label"
            )));
        }
        if s.len() >= usize::BITS as usize {
            return Err(Error::InvalidArgument(format!("label `{s}` is too long")));
        }
        Ok(Self(s.to_owned()))
    }
}

impl fmt::Display for FcnLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The four connector edges added at `level` (1..=d), for every prefix.
pub fn connector_edges(dim: FcnDimension, level: u32) -> Vec<(VertexId, VertexId)> {
    let d = dim.get();
    assert!((1..=d).contains(&level), "level {level} outside 1..={d}");
    let tail = 2 * level as usize - 2;
    let anchor = 0b11 << tail;
    let prefixes = 1usize << (2 * (d - level));
    let mut edges = Vec::with_capacity(4 * prefixes);
    for p in 0..prefixes {
        let base = p << (tail + 4);
        let vertex = |q: usize| base | (q << (tail + 2)) | anchor;
        for i in 0..4 {
            edges.push((
                vertex(CONNECTOR_CYCLE[i]),
                vertex(CONNECTOR_CYCLE[(i + 1) % 4]),
            ));
        }
    }
    edges
}

pub fn build_fcn(dim: FcnDimension) -> Graph {
    let n = dim.vertex_count();
    let labels = (0..n).map(|id| FcnLabel::from_id(id, dim).0).collect();
    let mut edges = Vec::new();
    for block in (0..n).step_by(4) {
        for i in 0..4 {
            edges.push((block | BASE_CYCLE[i], block | BASE_CYCLE[(i + 1) % 4]));
        }
    }
    for level in 1..=dim.get() {
        edges.extend(connector_edges(dim, level));
    }
    Graph::from_id_edges(labels, edges).expect("FCN edges are simple and in range")
}

fn with_suffix(dim: FcnDimension, suffix: usize) -> VertexSet {
    let n = dim.vertex_count();
    VertexSet::from_ids(n, (0..n).filter(|id| id & 0b11 == suffix)).unwrap()
}

/// All labels ending in `01` for `d ≥ 1`; `{00}` for `d = 0`.
pub fn canonical_pds(dim: FcnDimension) -> VertexSet {
    if dim.get() == 0 {
        return VertexSet::from_ids(4, [0]).unwrap();
    }
    with_suffix(dim, 0b01)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPartition {
    /// Labels ending in `01`.
    pub a: VertexSet,
    /// Labels ending in `10`.
    pub b: VertexSet,
    /// Labels ending in `00` or `11`.
    pub c: VertexSet,
}

pub fn canonical_partition(dim: FcnDimension) -> Result<CanonicalPartition> {
    if dim.get() == 0 {
        return Err(Error::InvalidArgument(
            "the canonical partition is defined for d >= 1".into(),
        ));
    }
    let a = with_suffix(dim, 0b01);
    let b = with_suffix(dim, 0b10);
    let mut c = VertexSet::full(dim.vertex_count());
    c.difference_with(&a);
    c.difference_with(&b);
    Ok(CanonicalPartition { a, b, c })
}

/// `|E(FCN(d))|` from `m(0) = 4`, `m(d) = 4·m(d−1) + 4`.
pub fn expected_edge_count(d: u32) -> usize {
    (0..d).fold(4, |m, _| 4 * m + 4)
}
