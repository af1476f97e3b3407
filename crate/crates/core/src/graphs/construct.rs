//! Small named graphs used to exercise the theory constructively.

use super::{verify_srg, Graph, GraphError};
use crate::designs::BlockDesign;
use crate::srg::SrgParams;

const S3_6_22: &str = include_str!("../../data/s3_6_22.blk");

/// Kneser graph K(n,2): the 2-subsets of `{0,…,n−1}` in lexicographic order,
/// adjacent when disjoint.
pub fn kneser2(n: usize) -> Result<Graph, GraphError> {
    if n < 5 {
        return Err(GraphError::ArgumentTooSmall(format!(
            "kneser2 needs n >= 5, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut g = Graph::empty(pairs.len());
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// The Petersen graph as K(5,2).
pub fn petersen() -> Graph {
    kneser2(5).expect("n = 5 is valid")
}

/// Index of the 2-subset `{a,b}` (`a < b`) in the vertex order of [`kneser2`].
pub fn kneser2_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// The embedded Steiner system S(3,6,22), checked on load: 77 blocks of
/// size 6 on 22 points with every 3-subset in exactly one block.
pub fn steiner_s3_6_22() -> Result<BlockDesign, GraphError> {
    let fail = |m: String| GraphError::SelfCheckFailed(m);
    let d = BlockDesign::parse(S3_6_22).map_err(|e| fail(e.to_string()))?;
    if d.point_count() != 22 || d.block_count() != 77 || d.block_size() != Some(6) {
        return Err(fail("embedded S(3,6,22) data has the wrong shape".into()));
    }
    let idx = |a: usize, b: usize, c: usize| (a * 22 + b) * 22 + c;
    let mut cover = vec![0u8; 22 * 22 * 22];
    for blk in d.blocks() {
        for i in 0..6 {
            for j in i + 1..6 {
                for l in j + 1..6 {
                    cover[idx(blk[i], blk[j], blk[l])] += 1;
                }
            }
        }
    }
    for a in 0..22 {
        for b in a + 1..22 {
            for c in b + 1..22 {
                let n = cover[idx(a, b, c)];
                if n != 1 {
                    return Err(fail(format!("triple {{{a},{b},{c}}} lies in {n} blocks")));
                }
            }
        }
    }
    Ok(d)
}

/// The M22 graph: blocks of S(3,6,22), adjacent when disjoint. Verified to be
/// SRG(77,16,0,4) before it is returned.
pub fn m22_graph() -> Result<Graph, GraphError> {
    let d = steiner_s3_6_22()?;
    let blocks = d.blocks();
    let mut g = Graph::empty(blocks.len());
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if crate::designs::block_intersection(&blocks[i], &blocks[j]) == 0 {
                g.add_edge(i, j);
            }
        }
    }
    let expected = SrgParams::new(77, 16, 0, 4);
    match verify_srg(&g) {
        Ok(p) if p == expected => Ok(g),
        Ok(p) => Err(GraphError::SelfCheckFailed(format!(
            "M22 graph has parameters {p}"
        ))),
        Err(e) => Err(GraphError::SelfCheckFailed(e.to_string())),
    }
}
