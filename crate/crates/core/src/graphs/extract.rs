//! Designs read off Delsarte cocliques, and the graph left after deleting
//! one.

use std::collections::BTreeSet;

use serde::Serialize;

use super::coclique::{verify_delsarte_coclique, CocliqueCertificate};
use super::{tight_info, verify_srg, Graph, GraphError};
use crate::arith::{as_count, rat};
use crate::designs::{
    check_2design, equality_design_params, intersection_profile, pairwise_intersection,
    quasisym_params, symmetric_design_params, triple_intersection, BlockDesign, DesignStats,
    QuasiSymParams, SymmetricParams,
};
use crate::srg::{SrgParams, TightParams};

fn fail(msg: String) -> GraphError {
    GraphError::VerificationFailed(msg)
}

fn tight(g: &Graph) -> Result<TightParams, GraphError> {
    let info = tight_info(g)?;
    Ok(crate::srg::tight_params(&info.params)?)
}

/// Position of each vertex of `set` (sorted) in `set`, `usize::MAX` elsewhere.
fn index_map(n: usize, set: &[usize]) -> Vec<usize> {
    let mut idx = vec![usize::MAX; n];
    for (i, &v) in set.iter().enumerate() {
        idx[v] = i;
    }
    idx
}

/// Neighbourhoods inside `Y` of the vertices outside `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiSymExtraction {
    /// Points of the design: point `i` is vertex `coclique[i]`.
    pub coclique: Vec<usize>,
    /// Block `j` is the neighbourhood of vertex `outside[j]`.
    pub outside: Vec<usize>,
    pub design: BlockDesign,
}

pub fn extract_quasisym_design(
    g: &Graph,
    y: &CocliqueCertificate,
) -> Result<QuasiSymExtraction, GraphError> {
    let y = verify_delsarte_coclique(g, &y.vertices)?;
    let idx = index_map(g.order(), &y.vertices);
    let outside: Vec<usize> = (0..g.order()).filter(|&v| !y.contains(v)).collect();
    let blocks = outside
        .iter()
        .map(|&z| {
            g.neighbors(z)
                .filter(|&u| y.contains(u))
                .map(|u| idx[u])
                .collect()
        })
        .collect();
    let design = BlockDesign::new(y.len(), blocks).map_err(|e| fail(e.to_string()))?;
    Ok(QuasiSymExtraction {
        coclique: y.vertices,
        outside,
        design,
    })
}

/// Checks an extraction against the closed-form parameters: a 2-design with
/// replication `k` and index `μ`, block intersections in `{s1, s2, k̃}`, and
/// `s1` exactly for adjacent outside vertices.
pub fn verify_quasisym_extraction(
    g: &Graph,
    ex: &QuasiSymExtraction,
) -> Result<QuasiSymParams, GraphError> {
    let t = tight(g)?;
    let q = quasisym_params(&t).map_err(|e| fail(e.to_string()))?;
    let stats = check_2design(&ex.design).map_err(|e| fail(e.to_string()))?;
    if stats
        != (DesignStats {
            r: q.r as u64,
            lambda: q.lambda as u64,
        })
    {
        return Err(fail(format!(
            "design has r = {}, lambda = {}; expected {q}",
            stats.r, stats.lambda
        )));
    }
    if ex.design.block_count() as i64 != q.blocks || ex.design.point_count() as i64 != q.v {
        return Err(fail(format!("design shape differs from {q}")));
    }
    let allowed = [q.s1 as usize, q.s2 as usize, q.k as usize];
    if !intersection_profile(&ex.design).is_within(&allowed) {
        return Err(fail(format!(
            "intersection sizes outside {{{}, {}, {}}}",
            q.s1, q.s2, q.k
        )));
    }
    let blocks = ex.design.blocks();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let x = crate::designs::block_intersection(&blocks[i], &blocks[j]) as i64;
            let want = if g.has_edge(ex.outside[i], ex.outside[j]) {
                q.s1
            } else {
                q.s2
            };
            if x != want {
                return Err(fail(format!(
                    "blocks of vertices {} and {} meet in {x}, expected {want}",
                    ex.outside[i], ex.outside[j]
                )));
            }
        }
    }
    Ok(q)
}

/// For cocliques `Y ≠ Z`: the neighbourhoods in `Y∖Z` of the vertices of
/// `Z∖Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricExtraction {
    /// Points of the design: point `i` is vertex `ground[i]` of `Y∖Z`.
    pub ground: Vec<usize>,
    /// Block `j` is the neighbourhood of vertex `sources[j]` of `Z∖Y`.
    pub sources: Vec<usize>,
    /// `Y∩Z`.
    pub common: Vec<usize>,
    pub y: Vec<usize>,
    pub design: BlockDesign,
}

impl SymmetricExtraction {
    /// The same blocks over all of `Y`, indexed in sorted order of `Y`.
    pub fn embedded_in_y(&self) -> BlockDesign {
        let idx = index_map(self.y.last().map_or(0, |&m| m + 1), &self.y);
        let blocks = self
            .design
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&p| idx[self.ground[p]]).collect())
            .collect();
        BlockDesign::new(self.y.len(), blocks).expect("indices inside Y")
    }
}

pub fn extract_symmetric_design(
    g: &Graph,
    y: &CocliqueCertificate,
    z: &CocliqueCertificate,
) -> Result<SymmetricExtraction, GraphError> {
    let y = verify_delsarte_coclique(g, &y.vertices)?;
    let z = verify_delsarte_coclique(g, &z.vertices)?;
    if y == z {
        return Err(GraphError::SameCoclique);
    }
    let ground: Vec<usize> = y
        .vertices
        .iter()
        .copied()
        .filter(|&v| !z.contains(v))
        .collect();
    let common: Vec<usize> = y
        .vertices
        .iter()
        .copied()
        .filter(|&v| z.contains(v))
        .collect();
    let sources: Vec<usize> = z
        .vertices
        .iter()
        .copied()
        .filter(|&v| !y.contains(v))
        .collect();
    let idx = index_map(g.order(), &ground);
    let blocks = sources
        .iter()
        .map(|&w| {
            g.neighbors(w)
                .filter(|&u| idx[u] != usize::MAX)
                .map(|u| idx[u])
                .collect()
        })
        .collect();
    let design = BlockDesign::new(ground.len(), blocks).map_err(|e| fail(e.to_string()))?;
    Ok(SymmetricExtraction {
        ground,
        sources,
        common,
        y: y.vertices,
        design,
    })
}

/// Checks the symmetric design against its closed form, `|Y∩Z|` against the
/// pairwise intersection number, and that every vertex outside `Y∪Z` has
/// exactly `e⁺` neighbours in `Y∩Z`.
pub fn verify_symmetric_extraction(
    g: &Graph,
    ex: &SymmetricExtraction,
) -> Result<SymmetricParams, GraphError> {
    let t = tight(g)?;
    let s = symmetric_design_params(&t).map_err(|e| fail(e.to_string()))?;
    if ex.design.point_count() as i64 != s.v || ex.design.block_count() as i64 != s.v {
        return Err(fail(format!(
            "{} blocks on {} points, expected {s}",
            ex.design.block_count(),
            ex.design.point_count()
        )));
    }
    let stats = check_2design(&ex.design).map_err(|e| fail(e.to_string()))?;
    if stats
        != (DesignStats {
            r: s.k as u64,
            lambda: s.lambda as u64,
        })
    {
        return Err(fail(format!(
            "design has r = {}, lambda = {}; expected {s}",
            stats.r, stats.lambda
        )));
    }
    if rat(ex.common.len() as i64) != pairwise_intersection(&t) {
        return Err(fail(format!("|Y∩Z| = {}", ex.common.len())));
    }
    let e_plus = t.e_plus() as usize;
    let in_y = index_map(g.order(), &ex.y);
    for (x, &pos) in in_y.iter().enumerate() {
        if pos != usize::MAX || ex.sources.contains(&x) {
            continue;
        }
        let c = g.neighbors_in(x, &ex.common);
        if c != e_plus {
            return Err(fail(format!(
                "vertex {x} has {c} neighbours in Y∩Z, expected {e_plus}"
            )));
        }
    }
    Ok(s)
}

/// Parameters of the graph induced on the complement of a Delsarte coclique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InducedSrg {
    pub params: SrgParams,
    /// `μ′ = 0`: a disjoint union of cliques.
    pub imprimitive: bool,
}

/// Deletes `Y` and checks that what is left is strongly regular with
/// `k′ = k+e⁻`, `μ′ = e⁺(e⁻+e⁺)+k+e⁻`, `λ′ = 2e⁺+e⁻+μ′`.
pub fn induced_complement_srg(
    g: &Graph,
    y: &CocliqueCertificate,
) -> Result<InducedSrg, GraphError> {
    let y = verify_delsarte_coclique(g, &y.vertices)?;
    let t = tight(g)?;
    let (k, p, m) = (t.params.k, t.e_plus(), t.e_minus());
    let rest: Vec<usize> = (0..g.order()).filter(|&v| !y.contains(v)).collect();
    let mu = p * (m + p) + k + m;
    let expected = SrgParams::new(rest.len() as i64, k + m, 2 * p + m + mu, mu);
    let got = verify_srg(&g.induced(&rest))?;
    if got != expected {
        return Err(GraphError::SrgAssertionFailed {
            got: got.to_string(),
            expected,
        });
    }
    Ok(InducedSrg {
        params: got,
        imprimitive: mu == 0,
    })
}

/// Given cocliques `Y₁,…,Yₜ`, the sets `Y₁∩Yᵢ` (`i ≥ 2`) as blocks over
/// `Y₁`, indexed in sorted order.
pub fn intersection_family_design(
    cocliques: &[CocliqueCertificate],
) -> Result<BlockDesign, GraphError> {
    let (first, rest) = cocliques.split_first().ok_or(GraphError::WrongCount {
        got: 0,
        expected: 1,
    })?;
    let n = first.vertices.last().map_or(0, |&m| m + 1);
    let idx = index_map(n, &first.vertices);
    let blocks = rest
        .iter()
        .map(|c| {
            c.vertices
                .iter()
                .filter(|&&v| v < n && idx[v] != usize::MAX)
                .map(|&v| idx[v])
                .collect()
        })
        .collect();
    BlockDesign::new(first.len(), blocks).map_err(|e| fail(e.to_string()))
}

/// Observed sizes of pairwise and triple intersections among cocliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionStats {
    pub pairwise: BTreeSet<usize>,
    pub triple: BTreeSet<usize>,
}

pub fn coclique_intersection_stats(cocliques: &[CocliqueCertificate]) -> IntersectionStats {
    let mut pairwise = BTreeSet::new();
    let mut triple = BTreeSet::new();
    for (i, a) in cocliques.iter().enumerate() {
        for (j, b) in cocliques.iter().enumerate().skip(i + 1) {
            let ab: Vec<usize> = a
                .vertices
                .iter()
                .copied()
                .filter(|&v| b.contains(v))
                .collect();
            pairwise.insert(ab.len());
            for c in &cocliques[j + 1..] {
                triple.insert(ab.iter().filter(|&&v| c.contains(v)).count());
            }
        }
    }
    IntersectionStats { pairwise, triple }
}

/// Compares observed intersections with the closed forms.
pub fn intersections_match(t: &TightParams, stats: &IntersectionStats) -> bool {
    let single = |s: &BTreeSet<usize>, want: Option<u64>| {
        s.is_empty() || (s.len() == 1 && want == s.first().map(|&x| x as u64))
    };
    single(&stats.pairwise, as_count(&pairwise_intersection(t)))
        && single(&stats.triple, as_count(&triple_intersection(t)))
}

/// The intersection family of `m⁻+1` cocliques against the closed-form
/// equality design.
pub fn equality_design_matches(t: &TightParams, d: &BlockDesign) -> bool {
    let Some(want) = equality_design_params(t).integral() else {
        return false;
    };
    d.point_count() as i64 == want.v
        && d.block_count() as i64 == want.v
        && check_2design(d)
            == Ok(DesignStats {
                r: want.k as u64,
                lambda: want.lambda as u64,
            })
}
