//! Simple undirected graphs on dense bitset rows, with combinatorial
//! strong-regularity checks and the constructions built on Delsarte
//! cocliques.

mod coclique;
mod construct;
mod extract;
pub mod graph6;
mod lemma71;

pub use coclique::{
    enumerate_delsarte_cocliques, enumerate_delsarte_cocliques_threaded, verify_delsarte_coclique,
    CocliqueCertificate,
};
pub use construct::{kneser2, kneser2_index, m22_graph, petersen, steiner_s3_6_22};
pub use extract::{
    coclique_intersection_stats, equality_design_matches, extract_quasisym_design,
    extract_symmetric_design, induced_complement_srg, intersection_family_design,
    intersections_match, verify_quasisym_extraction, verify_symmetric_extraction, InducedSrg,
    IntersectionStats, QuasiSymExtraction, SymmetricExtraction,
};
pub use lemma71::{generalized_m22_q, lemma71_extend};

use serde::Serialize;
use thiserror::Error;

use crate::srg::{spectrum_of, Spectrum, SrgError, SrgParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; need at least 2")]
    TooSmall(usize),
    #[error("not regular: vertex {vertex} has degree {degree}, vertex 0 has {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error(
        "not strongly regular: {} pair ({a},{b}) has {count} common neighbours, expected {expected}",
        if *.adjacent { "adjacent" } else { "non-adjacent" }
    )]
    NotStronglyRegular {
        a: usize,
        b: usize,
        adjacent: bool,
        count: usize,
        expected: usize,
    },
    #[error("parameters: {0}")]
    Params(#[from] SrgError),
    #[error("parameters {0} are not tight")]
    NotTight(SrgParams),
    #[error("coclique has {got} vertices, expected {expected}")]
    WrongSize { got: usize, expected: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is listed twice")]
    DuplicateVertex(usize),
    #[error("not independent: edge ({0},{1})")]
    NotIndependent(usize, usize),
    #[error("vertex {vertex} has {count} neighbours in the coclique, expected {expected}")]
    OutsideDegreeViolated {
        vertex: usize,
        count: usize,
        expected: usize,
    },
    #[error("the two cocliques are equal")]
    SameCoclique,
    #[error("parameters {0} are not in the generalized M22 family")]
    WrongFamily(SrgParams),
    #[error("expected {expected} cocliques, got {got}")]
    WrongCount { got: usize, expected: usize },
    #[error("constructed graph has parameters {got}, expected {expected}")]
    SrgAssertionFailed { got: String, expected: SrgParams },
    #[error("self-check failed: {0}")]
    SelfCheckFailed(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("argument too small: {0}")]
    ArgumentTooSmall(String),
}

/// Simple undirected graph; row `i` is the neighbour set of vertex `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={})", self.n, self.edge_count())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    /// # Panics
    /// On a loop or an out-of-range vertex.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "loops are not allowed");
        assert!(a < self.n && b < self.n, "vertex out of range");
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
        self.bits[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bit_iter(self.row(v))
    }

    pub fn common_neighbors(&self, a: usize, b: usize) -> usize {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| {
            self.neighbors(a)
                .filter(move |&b| b > a)
                .map(move |b| (a, b))
        })
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Number of vertices of `set` adjacent to `v`.
    pub fn neighbors_in(&self, v: usize, set: &[usize]) -> usize {
        set.iter().filter(|&&y| self.has_edge(v, y)).count()
    }
}

pub(crate) fn bit_iter(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + t)
        })
    })
}

/// Checks by exhaustive common-neighbour counting that `g` is strongly
/// regular and returns its parameters. When a graph has no adjacent (or no
/// non-adjacent) pairs the corresponding parameter is reported as 0.
pub fn verify_srg(g: &Graph) -> Result<SrgParams, GraphError> {
    let n = g.order();
    if n < 2 {
        return Err(GraphError::TooSmall(n));
    }
    let k = g.degree(0);
    if let Some(vertex) = (1..n).find(|&v| g.degree(v) != k) {
        return Err(GraphError::NotRegular {
            vertex,
            degree: g.degree(vertex),
            expected: k,
        });
    }
    let mut lambda: Option<usize> = None;
    let mut mu: Option<usize> = None;
    for a in 0..n {
        for b in a + 1..n {
            let adjacent = g.has_edge(a, b);
            let count = g.common_neighbors(a, b);
            let slot = if adjacent { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(count),
                Some(expected) if expected != count => {
                    return Err(GraphError::NotStronglyRegular {
                        a,
                        b,
                        adjacent,
                        count,
                        expected,
                    });
                }
                _ => {}
            }
        }
    }
    Ok(SrgParams::new(
        n as i64,
        k as i64,
        lambda.unwrap_or(0) as i64,
        mu.unwrap_or(0) as i64,
    ))
}

/// Parameters and spectrum of a verified, tight, primitive SRG.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TightGraphInfo {
    pub params: SrgParams,
    pub spectrum: Spectrum,
}

pub fn tight_info(g: &Graph) -> Result<TightGraphInfo, GraphError> {
    let params = verify_srg(g)?;
    let spectrum = spectrum_of(&params)?;
    if !crate::srg::is_tight(&params)? {
        return Err(GraphError::NotTight(params));
    }
    Ok(TightGraphInfo { params, spectrum })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_is_not_regular() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert!(matches!(
            verify_srg(&p3),
            Err(GraphError::NotRegular { vertex: 1, .. })
        ));
    }

    #[test]
    fn petersen_parameters() {
        assert_eq!(
            verify_srg(&petersen()).unwrap(),
            SrgParams::new(10, 3, 0, 1)
        );
    }

    #[test]
    fn hexagon_is_regular_but_not_strongly() {
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)));
        assert!(matches!(
            verify_srg(&c6),
            Err(GraphError::NotStronglyRegular {
                adjacent: false,
                ..
            })
        ));
    }

    #[test]
    fn bitset_basics() {
        let mut g = Graph::empty(130);
        g.add_edge(0, 129);
        g.add_edge(64, 129);
        assert!(g.has_edge(129, 0));
        assert_eq!(g.neighbors(129).collect::<Vec<_>>(), vec![0, 64]);
        assert_eq!(g.common_neighbors(0, 64), 1);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 129), (64, 129)]);
        let h = g.induced(&[129, 0]);
        assert!(h.has_edge(0, 1));
    }
}
