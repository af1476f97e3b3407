//! Extending a generalized M22 graph with a full set of `m⁻+1` Delsarte
//! cocliques to a triangle-free strongly regular graph.

use super::coclique::{verify_delsarte_coclique, CocliqueCertificate};
use super::{tight_info, verify_srg, Graph, GraphError};
use crate::srg::SrgParams;

/// `q` when `params` is `((q²+2q−1)(q²+3q+1), q²(q+2), 0, q²)` with `q ≥ 1`.
pub fn generalized_m22_q(params: &SrgParams) -> Option<i64> {
    let q = (params.mu as f64).sqrt().round() as i64;
    if q < 1 || q * q != params.mu {
        return None;
    }
    let want = SrgParams::new(
        (q * q + 2 * q - 1) * (q * q + 3 * q + 1),
        q * q * (q + 2),
        0,
        q * q,
    );
    (*params == want).then_some(q)
}

/// Adds one vertex per coclique, joined to that coclique's vertices, and one
/// more vertex joined to all the new ones. The result is checked to be
/// SRG(q²(q+3)², q³+3q²+q, 0, q²+q).
pub fn lemma71_extend(g: &Graph, cocliques: &[CocliqueCertificate]) -> Result<Graph, GraphError> {
    let params = verify_srg(g)?;
    let q = generalized_m22_q(&params).ok_or(GraphError::WrongFamily(params))?;
    let info = tight_info(g)?;
    let want = info.spectrum.m_minus as usize + 1;
    if cocliques.len() != want {
        return Err(GraphError::WrongCount {
            got: cocliques.len(),
            expected: want,
        });
    }
    let mut checked = Vec::with_capacity(want);
    for c in cocliques {
        let c = verify_delsarte_coclique(g, &c.vertices)?;
        if checked.contains(&c) {
            return Err(GraphError::SameCoclique);
        }
        checked.push(c);
    }
    let n = g.order();
    let star = n + want;
    let mut h = Graph::from_edges(star + 1, g.edges());
    for (i, c) in checked.iter().enumerate() {
        for &x in &c.vertices {
            h.add_edge(x, n + i);
        }
        h.add_edge(n + i, star);
    }
    let expected = SrgParams::new(
        q * q * (q + 3) * (q + 3),
        q * q * q + 3 * q * q + q,
        0,
        q * q + q,
    );
    match verify_srg(&h) {
        Ok(p) if p == expected => Ok(h),
        Ok(p) => Err(GraphError::SrgAssertionFailed {
            got: p.to_string(),
            expected,
        }),
        Err(e) => Err(GraphError::SrgAssertionFailed {
            got: e.to_string(),
            expected,
        }),
    }
}
