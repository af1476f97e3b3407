//! Certification and exhaustive enumeration of Delsarte cocliques.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use super::{bit_iter, tight_info, Graph, GraphError};

/// A verified Delsarte coclique: independent, of the ratio-bound size, and
/// with every outside vertex having exactly `outside_degree = −e⁻`
/// neighbours inside.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CocliqueCertificate {
    pub vertices: Vec<usize>,
    pub outside_degree: usize,
}

impl CocliqueCertificate {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Checks that `ys` is a Delsarte coclique of the tight graph `g`.
pub fn verify_delsarte_coclique(
    g: &Graph,
    ys: &[usize],
) -> Result<CocliqueCertificate, GraphError> {
    let info = tight_info(g)?;
    check_with(
        g,
        ys,
        info.spectrum.m_minus as usize,
        (-info.spectrum.e_minus) as usize,
    )
}

pub(crate) fn check_with(
    g: &Graph,
    ys: &[usize],
    size: usize,
    d: usize,
) -> Result<CocliqueCertificate, GraphError> {
    let n = g.order();
    let mut vertices = ys.to_vec();
    vertices.sort_unstable();
    if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
        return Err(GraphError::VertexOutOfRange(v));
    }
    if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
        return Err(GraphError::DuplicateVertex(w[0]));
    }
    if vertices.len() != size {
        return Err(GraphError::WrongSize {
            got: vertices.len(),
            expected: size,
        });
    }
    for (i, &a) in vertices.iter().enumerate() {
        if let Some(&b) = vertices[i + 1..].iter().find(|&&b| g.has_edge(a, b)) {
            return Err(GraphError::NotIndependent(a, b));
        }
    }
    let mut inside = vec![false; n];
    for &y in &vertices {
        inside[y] = true;
    }
    for x in (0..n).filter(|&x| !inside[x]) {
        let count = g.neighbors(x).filter(|&y| inside[y]).count();
        if count != d {
            return Err(GraphError::OutsideDegreeViolated {
                vertex: x,
                count,
                expected: d,
            });
        }
    }
    Ok(CocliqueCertificate {
        vertices,
        outside_degree: d,
    })
}

/// Every Delsarte coclique of the tight graph `g`, sorted lexicographically.
///
/// Depth-first include/exclude search over vertices in index order. A vertex
/// stays a candidate only while it has no chosen neighbour and no neighbour
/// that already has `−e⁻` chosen neighbours. Branches are cut when too few
/// candidates remain, or when some rejected vertex can no longer collect
/// `−e⁻` chosen neighbours.
pub fn enumerate_delsarte_cocliques(g: &Graph) -> Result<Vec<CocliqueCertificate>, GraphError> {
    enumerate_delsarte_cocliques_threaded(g, 1)
}

/// As [`enumerate_delsarte_cocliques`], splitting the search by the smallest
/// chosen vertex across up to `threads` threads. The output does not depend
/// on the thread count.
pub fn enumerate_delsarte_cocliques_threaded(
    g: &Graph,
    threads: usize,
) -> Result<Vec<CocliqueCertificate>, GraphError> {
    let info = tight_info(g)?;
    let size = info.spectrum.m_minus as usize;
    let d = (-info.spectrum.e_minus) as usize;
    let n = g.order();
    let next = AtomicUsize::new(0);
    let worker = || {
        let mut found = Vec::new();
        loop {
            let first = next.fetch_add(1, Ordering::Relaxed);
            if first >= n {
                return found;
            }
            let mut search = Search {
                g,
                size,
                d,
                chosen: Vec::with_capacity(size),
                found: Vec::new(),
            };
            let mut avail = vec![0u64; g.words()];
            for v in first..n {
                avail[v / 64] |= 1 << (v % 64);
            }
            search.include(first, &avail, &vec![0; n]);
            found.append(&mut search.found);
        }
    };
    let threads = threads.clamp(1, n.max(1));
    let found: Vec<Vec<usize>> = if threads == 1 {
        worker()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads).map(|_| s.spawn(worker)).collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("enumeration thread panicked"))
                .collect()
        })
    };
    let mut out = Vec::with_capacity(found.len());
    for ys in found {
        // the search constraints already imply the certificate; re-check anyway
        out.push(check_with(g, &ys, size, d)?);
    }
    out.sort();
    Ok(out)
}

struct Search<'a> {
    g: &'a Graph,
    size: usize,
    d: usize,
    chosen: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Chooses `v` (the smallest undecided candidate) and recurses.
    fn include(&mut self, v: usize, avail: &[u64], count: &[usize]) {
        let mut next = avail.to_vec();
        next[v / 64] &= !(1 << (v % 64));
        let mut with = count.to_vec();
        for (w, r) in next.iter_mut().zip(self.g.row(v)) {
            *w &= !r;
        }
        for u in self.g.neighbors(v) {
            with[u] += 1;
            if with[u] == self.d {
                for (w, r) in next.iter_mut().zip(self.g.row(u)) {
                    *w &= !r;
                }
            }
        }
        self.chosen.push(v);
        self.step(&next, &with);
        self.chosen.pop();
    }

    /// `avail` holds the undecided vertices that may still be chosen; `count[u]`
    /// is the number of chosen neighbours of `u`.
    fn step(&mut self, avail: &[u64], count: &[usize]) {
        let n = self.g.order();
        if self.chosen.len() == self.size {
            if count
                .iter()
                .enumerate()
                .all(|(u, &c)| c == self.d || self.chosen.contains(&u))
            {
                self.found.push(self.chosen.clone());
            }
            return;
        }
        let need = self.size - self.chosen.len();
        let pool: usize = avail.iter().map(|w| w.count_ones() as usize).sum();
        if pool < need {
            return;
        }
        // every vertex left out needs enough candidate neighbours
        for u in 0..n {
            let open = avail[u / 64] >> (u % 64) & 1 == 1;
            if !open && count[u] < self.d && !self.chosen.contains(&u) {
                let reach: usize = self
                    .g
                    .row(u)
                    .iter()
                    .zip(avail)
                    .map(|(r, a)| (r & a).count_ones() as usize)
                    .sum();
                if count[u] + reach.min(need) < self.d {
                    return;
                }
            }
        }
        let Some(v) = bit_iter(avail).next() else {
            return;
        };
        self.include(v, avail, count);
        // exclude v
        let mut next = avail.to_vec();
        next[v / 64] &= !(1 << (v % 64));
        self.step(&next, count);
    }
}
