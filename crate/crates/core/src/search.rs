//! Exact backtracking completion of a partial design (typically the symmetric
//! design carried by two Delsarte cocliques) to a quasisymmetric design with
//! prescribed parameters.
//!
//! Candidate blocks are all `k̃`-subsets compatible with the base, generated
//! once in lexicographic order. The search repeatedly takes the
//! lexicographically smallest pair of points that still needs coverage and
//! tries every candidate through it, so each completion is found once per
//! ordering of its blocks through that pair; repeating the same pair forces
//! nondecreasing candidate indices, which removes those permutations.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::designs::{block_intersection, BlockDesign, QuasiSymParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_nodes: u64,
    #[serde(serialize_with = "ser_duration")]
    pub max_time: Duration,
}

fn ser_duration<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionProblem {
    pub base: BlockDesign,
    pub target: QuasiSymParams,
    pub limits: Limits,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Status {
    /// The complete design: base blocks followed by the added ones.
    Found {
        design: BlockDesign,
    },
    /// The complete search space was explored without success.
    Infeasible,
    BudgetExhausted {
        nodes: u64,
        elapsed_ms: u128,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Blocks placed, summed over the whole search.
    pub nodes: u64,
    pub max_depth: usize,
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionResult {
    pub status: Status,
    pub stats: SearchStats,
    pub elapsed_ms: u128,
}

const MAX_POINTS: usize = 128;

type Mask = u128;

fn mask(block: &[usize]) -> Mask {
    block.iter().fold(0, |m, &p| m | 1 << p)
}

fn points(m: Mask) -> Vec<usize> {
    bits(m).collect()
}

/// Points strictly above `a`.
fn above(a: usize) -> Mask {
    if a + 1 >= MAX_POINTS {
        0
    } else {
        !0 << (a + 1)
    }
}

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let p = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(p)
    })
}

struct Budget {
    start: Instant,
    limits: Limits,
    ticks: u64,
    out: bool,
}

impl Budget {
    /// Charges one unit of work; true once either budget is spent.
    fn charge(&mut self, nodes: u64) -> bool {
        self.ticks += 1;
        if nodes > self.limits.max_nodes
            || (self.ticks.is_multiple_of(1024) && self.start.elapsed() > self.limits.max_time)
        {
            self.out = true;
        }
        self.out
    }
}

fn validate(p: &ExtensionProblem) -> Result<(Vec<u32>, Vec<u32>), SearchError> {
    let t = &p.target;
    let bad = |m: String| Err(SearchError::InvalidTarget(m));
    if t.v < 2 || t.v as usize > MAX_POINTS {
        return bad(format!("v = {} outside 2..={MAX_POINTS}", t.v));
    }
    if t.k < 2 || t.k > t.v || t.lambda < 1 || t.s1 < 0 || t.s2 < 0 || t.blocks < 1 {
        return bad(format!("{t}"));
    }
    if t.r * (t.k - 1) != t.lambda * (t.v - 1) || t.blocks * t.k != t.v * t.r {
        return bad(format!("{t} violates the counting identities"));
    }
    let n = t.v as usize;
    let k = t.k as usize;
    let invalid = |m: String| Err(SearchError::InvalidBase(m));
    if p.base.point_count() != n {
        return invalid(format!(
            "base has {} points, target {n}",
            p.base.point_count()
        ));
    }
    if p.base.block_count() as i64 > t.blocks {
        return invalid(format!(
            "base has {} blocks, target {}",
            p.base.block_count(),
            t.blocks
        ));
    }
    let allowed = [t.s1 as usize, t.s2 as usize, k];
    let blocks = p.base.blocks();
    for (i, b) in blocks.iter().enumerate() {
        if b.len() != k {
            return invalid(format!("block {i} has size {}, expected {k}", b.len()));
        }
        for (j, c) in blocks.iter().enumerate().skip(i + 1) {
            let x = block_intersection(b, c);
            if !allowed.contains(&x) {
                return invalid(format!("blocks {i} and {j} meet in {x} points"));
            }
        }
    }
    let mut pair = vec![t.lambda as u32; n * n];
    let mut rep = vec![t.r as u32; n];
    for b in blocks {
        for (i, &a) in b.iter().enumerate() {
            if rep[a] == 0 {
                return invalid(format!("point {a} lies in more than r = {} blocks", t.r));
            }
            rep[a] -= 1;
            for &c in &b[i + 1..] {
                if pair[a * n + c] == 0 {
                    return invalid(format!(
                        "pair {{{a},{c}}} is covered more than lambda = {} times",
                        t.lambda
                    ));
                }
                pair[a * n + c] -= 1;
            }
        }
    }
    Ok((pair, rep))
}

struct Solver<'a> {
    n: usize,
    allowed: [u32; 3],
    base: Vec<Mask>,
    cands: Vec<Mask>,
    /// Candidate indices through each pair `a < b`, at `a*n + b`.
    by_pair: Vec<Vec<u32>>,
    pair: Vec<u32>,
    rep: Vec<u32>,
    /// `sat[a]`: points `b` whose pair with `a` needs no more blocks.
    sat: Vec<Mask>,
    /// Points whose replication is used up.
    full: Mask,
    chosen: Vec<u32>,
    remaining: usize,
    stats: SearchStats,
    budget: &'a mut Budget,
}

impl Solver<'_> {
    fn generate(&mut self, k: usize) -> bool {
        let mut cur = Vec::with_capacity(k);
        self.gen_rec(0, k, &mut cur) && {
            self.stats.candidates = self.cands.len();
            true
        }
    }

    /// Extends `cur` with points `≥ from`, keeping every pair inside it
    /// uncovered in the residual and every point below its replication.
    fn gen_rec(&mut self, from: usize, k: usize, cur: &mut Vec<usize>) -> bool {
        if self.budget.charge(self.stats.nodes) {
            return false;
        }
        if cur.len() == k {
            let m = mask(cur);
            if self
                .base
                .iter()
                .all(|&b| self.allowed.contains(&(b & m).count_ones()))
            {
                self.cands.push(m);
            }
            return true;
        }
        for p in from..=self.n - (k - cur.len()) {
            if self.rep[p] == 0 || cur.iter().any(|&a| self.pair[a * self.n + p] == 0) {
                continue;
            }
            cur.push(p);
            let ok = self.gen_rec(p + 1, k, cur);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    fn index(&mut self) {
        self.by_pair = vec![Vec::new(); self.n * self.n];
        for (i, &m) in self.cands.iter().enumerate() {
            let pts = points(m);
            for (x, &a) in pts.iter().enumerate() {
                for &b in &pts[x + 1..] {
                    self.by_pair[a * self.n + b].push(i as u32);
                }
            }
        }
    }

    fn init_masks(&mut self) {
        let n = self.n;
        self.sat = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| b != a && self.pair[a.min(b) * n + a.max(b)] == 0)
                    .fold(0, |m, b| m | 1 << b)
            })
            .collect();
        self.full = (0..n)
            .filter(|&p| self.rep[p] == 0)
            .fold(0, |m, p| m | 1 << p);
    }

    fn first_open_pair(&self) -> Option<(usize, usize)> {
        let all: Mask = if self.n == MAX_POINTS {
            !0
        } else {
            (1 << self.n) - 1
        };
        (0..self.n).find_map(|a| {
            let above = all & above(a) & !self.sat[a];
            (above != 0).then(|| (a, above.trailing_zeros() as usize))
        })
    }

    fn fits(&self, m: Mask) -> bool {
        m & self.full == 0
            && bits(m).all(|a| self.sat[a] & m == 0)
            && self.chosen.iter().all(|&c| {
                self.allowed
                    .contains(&(self.cands[c as usize] & m).count_ones())
            })
    }

    fn apply(&mut self, m: Mask, add: bool) {
        let n = self.n;
        for a in bits(m) {
            if add {
                self.rep[a] -= 1;
                if self.rep[a] == 0 {
                    self.full |= 1 << a;
                }
            } else {
                self.rep[a] += 1;
                self.full &= !(1 << a);
            }
            for b in bits(m & above(a)) {
                let slot = &mut self.pair[a * n + b];
                if add {
                    *slot -= 1;
                    if *slot == 0 {
                        self.sat[a] |= 1 << b;
                        self.sat[b] |= 1 << a;
                    }
                } else {
                    *slot += 1;
                    self.sat[a] &= !(1 << b);
                    self.sat[b] &= !(1 << a);
                }
            }
        }
    }

    /// Returns `Some(true)` on success, `Some(false)` when the subtree is
    /// exhausted, `None` when the budget ran out.
    fn solve(&mut self, last: Option<((usize, usize), u32)>) -> Option<bool> {
        self.stats.max_depth = self.stats.max_depth.max(self.chosen.len());
        let Some((a, b)) = self.first_open_pair() else {
            return Some(self.remaining == 0 && self.rep.iter().all(|&r| r == 0));
        };
        if self.remaining == 0 || self.rep.iter().any(|&r| r as usize > self.remaining) {
            return Some(false);
        }
        let floor = match last {
            Some((pair, idx)) if pair == (a, b) => idx,
            _ => 0,
        };
        let ab = a * self.n + b;
        let start = self.by_pair[ab].partition_point(|&c| c < floor);
        let mut result = Some(false);
        for i in start..self.by_pair[ab].len() {
            let c = self.by_pair[ab][i];
            let m = self.cands[c as usize];
            if !self.fits(m) {
                continue;
            }
            self.stats.nodes += 1;
            if self.budget.charge(self.stats.nodes) {
                result = None;
                break;
            }
            self.apply(m, true);
            self.chosen.push(c);
            self.remaining -= 1;
            let r = self.solve(Some(((a, b), c)));
            if r != Some(true) {
                self.remaining += 1;
                self.chosen.pop();
                self.apply(m, false);
            }
            if r != Some(false) {
                result = r;
                break;
            }
        }
        result
    }
}

/// Searches for blocks that complete `p.base` to a design with parameters
/// `p.target`: every pair in exactly `λ̃` blocks, every point in `r̃`, every
/// two blocks meeting in `s1`, `s2` or `k̃` points.
pub fn extend_design(p: &ExtensionProblem) -> Result<ExtensionResult, SearchError> {
    let (pair, rep) = validate(p)?;
    let t = &p.target;
    let mut budget = Budget {
        start: Instant::now(),
        limits: p.limits,
        ticks: 0,
        out: false,
    };
    let mut solver = Solver {
        n: t.v as usize,
        allowed: [t.s1 as u32, t.s2 as u32, t.k as u32],
        base: p.base.blocks().iter().map(|b| mask(b)).collect(),
        cands: Vec::new(),
        by_pair: Vec::new(),
        pair,
        rep,
        sat: Vec::new(),
        full: 0,
        chosen: Vec::new(),
        remaining: (t.blocks as usize) - p.base.block_count(),
        stats: SearchStats::default(),
        budget: &mut budget,
    };
    solver.init_masks();
    let outcome = if solver.generate(t.k as usize) {
        solver.index();
        solver.solve(None)
    } else {
        None
    };
    let stats = solver.stats;
    let added: Vec<Vec<usize>> = solver
        .chosen
        .iter()
        .map(|&c| points(solver.cands[c as usize]))
        .collect();
    let elapsed_ms = budget.start.elapsed().as_millis();
    let status = match outcome {
        Some(true) => {
            let mut blocks = p.base.blocks().to_vec();
            blocks.extend(added);
            let design = BlockDesign::new(t.v as usize, blocks)
                .expect("candidate blocks are sorted and in range");
            Status::Found { design }
        }
        Some(false) => Status::Infeasible,
        None => Status::BudgetExhausted {
            nodes: stats.nodes,
            elapsed_ms,
        },
    };
    Ok(ExtensionResult {
        status,
        stats,
        elapsed_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{check_2design, intersection_profile, DesignStats};

    fn limits() -> Limits {
        Limits {
            max_nodes: 10_000_000,
            max_time: Duration::from_secs(60),
        }
    }

    fn target(v: i64, k: i64, lambda: i64, s1: i64, s2: i64) -> QuasiSymParams {
        let r = lambda * (v - 1) / (k - 1);
        QuasiSymParams {
            v,
            k,
            lambda,
            r,
            s1,
            s2,
            blocks: v * r / k,
        }
    }

    fn run(base: BlockDesign, t: QuasiSymParams) -> ExtensionResult {
        extend_design(&ExtensionProblem {
            base,
            target: t,
            limits: limits(),
        })
        .unwrap()
    }

    fn verify(d: &BlockDesign, t: &QuasiSymParams) {
        assert_eq!(d.block_count() as i64, t.blocks);
        assert_eq!(
            check_2design(d).unwrap(),
            DesignStats {
                r: t.r as u64,
                lambda: t.lambda as u64
            }
        );
        assert!(intersection_profile(d).is_within(&[t.s1 as usize, t.s2 as usize, t.k as usize]));
    }

    #[test]
    fn petersen_base_completes_to_all_pairs() {
        // blocks through the star {0,1,2} minus one point: a 2-(3,2,1) on 4 points
        let base = BlockDesign::new(4, vec![vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let t = target(4, 2, 1, 0, 1);
        let r = run(base, t);
        let Status::Found { design } = r.status else {
            panic!("{:?}", r.status)
        };
        verify(&design, &t);
        assert_eq!(
            design.canonical().blocks(),
            BlockDesign::new(
                4,
                vec![
                    vec![0, 1],
                    vec![0, 2],
                    vec![0, 3],
                    vec![1, 2],
                    vec![1, 3],
                    vec![2, 3],
                ]
            )
            .unwrap()
            .blocks()
        );
    }

    #[test]
    fn m22_biplane_completes() {
        use crate::graphs::{enumerate_delsarte_cocliques, extract_symmetric_design, m22_graph};
        let g = m22_graph().unwrap();
        let all = enumerate_delsarte_cocliques(&g).unwrap();
        let base = extract_symmetric_design(&g, &all[0], &all[1])
            .unwrap()
            .embedded_in_y();
        let t = QuasiSymParams {
            v: 21,
            k: 6,
            lambda: 4,
            r: 16,
            s1: 0,
            s2: 2,
            blocks: 56,
        };
        let r = run(base.clone(), t);
        let Status::Found { design } = r.status else {
            panic!("{:?}", r.status)
        };
        verify(&design, &t);
        assert_eq!(&design.blocks()[..16], base.blocks());
        assert_eq!(intersection_profile(&design).sizes(), vec![0, 2]);
    }

    #[test]
    fn overcovered_base_is_rejected() {
        let base = BlockDesign::new(4, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let err = extend_design(&ExtensionProblem {
            base,
            target: target(4, 2, 1, 0, 1),
            limits: limits(),
        });
        assert!(matches!(err, Err(SearchError::InvalidBase(_))));
        let base = BlockDesign::new(4, vec![vec![0, 1, 2]]).unwrap();
        let err = extend_design(&ExtensionProblem {
            base,
            target: target(4, 2, 1, 0, 1),
            limits: limits(),
        });
        assert!(matches!(err, Err(SearchError::InvalidBase(_))));
    }

    #[test]
    fn infeasible_and_budget() {
        // 2-(7,3,1) with intersection numbers {0} cannot exist: lines of a
        // Fano plane always meet
        let t = target(7, 3, 1, 0, 0);
        assert_eq!(
            run(BlockDesign::new(7, vec![]).unwrap(), t).status,
            Status::Infeasible
        );
        let tight = Limits {
            max_nodes: 3,
            max_time: Duration::from_secs(60),
        };
        let t = target(7, 3, 2, 1, 1);
        let r = extend_design(&ExtensionProblem {
            base: BlockDesign::new(7, vec![]).unwrap(),
            target: t,
            limits: tight,
        })
        .unwrap();
        assert!(
            matches!(r.status, Status::BudgetExhausted { .. }),
            "{:?}",
            r.status
        );
    }

    #[test]
    fn deterministic() {
        let t = target(7, 3, 1, 1, 1);
        let a = run(BlockDesign::new(7, vec![]).unwrap(), t);
        let b = run(BlockDesign::new(7, vec![]).unwrap(), t);
        assert_eq!(a.status, b.status);
        assert_eq!(a.stats, b.stats);
        let Status::Found { design } = a.status else {
            panic!()
        };
        verify(&design, &t);
    }

    /// All `k`-subsets of `0..n` as sorted vectors, in lexicographic order.
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|&p| m >> p & 1 == 1).collect::<Vec<_>>())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Oracle: does some multiset of `count` k-subsets complete `base`?
    fn brute_force(base: &[Vec<usize>], t: &QuasiSymParams) -> bool {
        let all = subsets(t.v as usize, t.k as usize);
        let count = t.blocks as usize - base.len();
        let allowed = [t.s1 as usize, t.s2 as usize, t.k as usize];
        let mut idx = vec![0usize; count];
        loop {
            let mut blocks = base.to_vec();
            blocks.extend(idx.iter().map(|&i| all[i].clone()));
            let d = BlockDesign::new(t.v as usize, blocks).unwrap();
            if check_2design(&d)
                == Ok(DesignStats {
                    r: t.r as u64,
                    lambda: t.lambda as u64,
                })
                && intersection_profile(&d).is_within(&allowed)
            {
                return true;
            }
            // next nondecreasing index sequence
            let Some(p) = (0..count).rev().find(|&p| idx[p] + 1 < all.len()) else {
                return false;
            };
            idx[p] += 1;
            for q in p + 1..count {
                idx[q] = idx[p];
            }
        }
    }

    #[test]
    fn agrees_with_exhaustive_enumeration() {
        let mut checked = 0;
        for (v, k, lambda) in [
            (4, 2, 1),
            (4, 3, 2),
            (5, 2, 1),
            (4, 2, 2),
            (6, 3, 2),
            (5, 4, 3),
            (6, 2, 1),
        ] {
            for s1 in 0..k {
                for s2 in s1..k {
                    let t = target(v, k, lambda, s1, s2);
                    if t.r * (k - 1) != lambda * (v - 1) || t.blocks * k != v * t.r {
                        continue;
                    }
                    let all = subsets(v as usize, k as usize);
                    for base_len in 0..=2usize.min(t.blocks as usize) {
                        let base: Vec<Vec<usize>> = all.iter().take(base_len).cloned().collect();
                        let d = BlockDesign::new(v as usize, base.clone()).unwrap();
                        let Ok(r) = extend_design(&ExtensionProblem {
                            base: d,
                            target: t,
                            limits: limits(),
                        }) else {
                            continue;
                        };
                        // multisets of the missing blocks: C(subsets+count-1, count)
                        let count = t.blocks as usize - base_len;
                        let space = (0..count).fold(1u128, |acc, i| {
                            acc * (all.len() + i) as u128 / (i + 1) as u128
                        });
                        if space > 200_000 {
                            continue;
                        }
                        let expect = brute_force(&base, &t);
                        match r.status {
                            Status::Found { design } => {
                                assert!(expect, "{t} base {base:?}");
                                verify(&design, &t);
                            }
                            Status::Infeasible => assert!(!expect, "{t} base {base:?}"),
                            s => panic!("{s:?}"),
                        }
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 20, "{checked}");
    }
}
