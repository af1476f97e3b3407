//! Nonexistence tests for quasisymmetric designs, the family rules for
//! generalized quadrangles of order (q, q²−q) and Taylor 2-graphs, and the
//! engine that bounds the number of Delsarte cocliques of a tight parameter
//! set.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{as_count, gcd_i64};
use crate::designs::{pairwise_intersection, quasisym_params, triple_intersection, QuasiSymParams};
use crate::numtheory::{
    is_odd_prime, odd_prime_divisors, residue_unchecked, valuation, valuation_capped,
};
use crate::srg::TightParams;

/// Machine-readable rule identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    CalderbankMod2,
    BlokhuisCalderbankP,
    BlokhuisCalderbankPe,
    GqOvoid,
    Taylor,
    PairwiseIntersection,
    TripleIntersection,
    CoprimeEigenvalues,
    KnownFact,
    RankBound,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::CalderbankMod2 => "calderbank-mod2",
            Rule::BlokhuisCalderbankP => "blokhuis-calderbank-p",
            Rule::BlokhuisCalderbankPe => "blokhuis-calderbank-pe",
            Rule::GqOvoid => "gq-ovoid",
            Rule::Taylor => "taylor",
            Rule::PairwiseIntersection => "pairwise-intersection",
            Rule::TripleIntersection => "triple-intersection",
            Rule::CoprimeEigenvalues => "coprime-eigenvalues",
            Rule::KnownFact => "known-fact",
            Rule::RankBound => "rank-bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub rule: Rule,
    pub text: String,
}

impl Reason {
    fn new(rule: Rule, text: impl Into<String>) -> Self {
        Reason {
            rule,
            text: text.into(),
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    RuledOut { reason: Reason },
    Bound { value: u64, reason: Reason },
    Inconclusive,
}

impl Verdict {
    pub fn is_ruled_out(&self) -> bool {
        matches!(
            self,
            Verdict::RuledOut { .. } | Verdict::Bound { value: 0, .. }
        )
    }

    /// `RuledOut` becomes `Bound(0)`.
    pub fn normalized(self) -> Verdict {
        match self {
            Verdict::RuledOut { reason } => Verdict::Bound { value: 0, reason },
            v => v,
        }
    }

    pub fn reason(&self) -> Option<&Reason> {
        match self {
            Verdict::RuledOut { reason } | Verdict::Bound { reason, .. } => Some(reason),
            Verdict::Inconclusive => None,
        }
    }
}

fn ruled_out(rule: Rule, text: String) -> Verdict {
    Verdict::RuledOut {
        reason: Reason::new(rule, text),
    }
}

/// If `s1 ≡ s2 (mod 2)` and `r ≢ λ (mod 4)`, a quasisymmetric design needs
/// `v ≡ ±1 (mod 8)`.
pub fn calderbank_mod2(q: &QuasiSymParams) -> Verdict {
    if (q.s1 - q.s2).rem_euclid(2) == 0 && (q.r - q.lambda).rem_euclid(4) != 0 {
        let v8 = q.v.rem_euclid(8);
        if v8 != 1 && v8 != 7 {
            return ruled_out(
                Rule::CalderbankMod2,
                format!("Calderbank mod 2: v = {} = {v8} mod 8, not +-1", q.v),
            );
        }
    }
    Verdict::Inconclusive
}

/// Blokhuis–Calderbank condition modulo an odd prime `p`: when
/// `s1 ≡ s2 ≡ s (mod p)` and `r ≢ λ (mod p²)` one of four cases must hold.
///
/// # Panics
/// If `p` is not an odd prime.
pub fn blokhuis_calderbank_p(q: &QuasiSymParams, p: u64) -> Verdict {
    assert!(is_odd_prime(p), "{p} is not an odd prime");
    let pi = p as i128;
    let (v, k, lambda) = (q.v as i128, q.k as i128, q.lambda as i128);
    if (q.s1 - q.s2) as i128 % pi != 0 || (q.r - q.lambda) as i128 % (pi * pi) == 0 {
        return Verdict::Inconclusive;
    }
    let s = (q.s1 as i128).rem_euclid(pi);
    let vm = v.rem_euclid(pi);
    let sign = |exp: i128| if exp % 2 == 0 { 1 } else { -1 };
    let square = |a: i128| residue_unchecked(a, p);
    let holds = if v % 2 == 0 {
        let a = vm == 0 && s == 0 && square(sign(v / 2));
        let b = vm != s && s != 0 && lambda % pi == 0 && square(sign((v + 2) / 2) * k * (v - k));
        a || b
    } else {
        let c = s == 0 && vm != 0 && lambda % pi == 0 && square(-v * sign((v + 1) / 2));
        let d = vm == s && s != 0 && square(-s * sign((v + 1) / 2));
        c || d
    };
    if holds {
        Verdict::Inconclusive
    } else {
        ruled_out(
            Rule::BlokhuisCalderbankP,
            format!("Blokhuis-Calderbank mod p, p={p}: none of the admissible cases holds"),
        )
    }
}

/// Blokhuis–Calderbank condition modulo `p^e` for odd `e` and odd `v`.
/// The intersection number `s` is taken to be `s1`.
///
/// # Panics
/// If `p` is not an odd prime or `e` is even.
pub fn blokhuis_calderbank_pe(q: &QuasiSymParams, p: u64, e: u32) -> Verdict {
    assert!(is_odd_prime(p), "{p} is not an odd prime");
    assert!(e % 2 == 1, "exponent {e} must be odd");
    let pi = p as i128;
    let pe = match pi.checked_pow(e) {
        Some(x) => x,
        None => return Verdict::Inconclusive,
    };
    let (v, s) = (q.v as i128, q.s1 as i128);
    if (q.s1 - q.s2) as i128 % pe != 0 || (q.r - q.lambda) as i128 % (pe * pi) == 0 || v % 2 == 0 {
        return Verdict::Inconclusive;
    }
    let sign = if ((v - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let psi_s = valuation_capped(s, p, e);
    let holds = if psi_s % 2 == 1 {
        let tau = (v - s) / pi.pow(valuation_capped(v - s, p, e));
        residue_unchecked(sign * tau, p)
    } else {
        let sigma = s / pi.pow(psi_s);
        residue_unchecked(sign * sigma, p)
    };
    if holds {
        Verdict::Inconclusive
    } else {
        ruled_out(
            Rule::BlokhuisCalderbankPe,
            format!("Blokhuis-Calderbank mod p^e, p={p}, e={e}: residue condition fails"),
        )
    }
}

/// Runs the mod-2 test and then both odd-prime tests for every odd prime
/// power `p^e` (odd `e`) dividing `s2 − s1`; the first rule that rules the
/// design out wins.
pub fn scan_primes(q: &QuasiSymParams) -> Verdict {
    let v = calderbank_mod2(q);
    if v.is_ruled_out() {
        return v;
    }
    let diff = (q.s2 - q.s1).unsigned_abs();
    if diff == 0 {
        return Verdict::Inconclusive;
    }
    for p in odd_prime_divisors(diff) {
        let v = blokhuis_calderbank_p(q, p);
        if v.is_ruled_out() {
            return v;
        }
        let top = valuation(diff, p);
        for e in (1..=top).step_by(2) {
            let v = blokhuis_calderbank_pe(q, p, e);
            if v.is_ruled_out() {
                return v;
            }
        }
    }
    Verdict::Inconclusive
}

/// Odd primes `p ≡ 3 (mod 4)` and odd `e` with `n = ℓ·p^e`, as `(ℓ, p, e)`.
fn factorizations_3mod4(n: u64) -> Vec<(u64, u64, u32)> {
    let mut out = Vec::new();
    for p in odd_prime_divisors(n) {
        if p % 4 != 3 {
            continue;
        }
        let top = valuation(n, p);
        for e in (1..=top).step_by(2) {
            out.push((n / p.pow(e), p, e));
        }
    }
    out
}

/// Ovoids in a generalized quadrangle of order (q, q²−q), i.e. Delsarte
/// cocliques of a graph with `e⁺ = q−1`, `e⁻ = −q²+q−1`.
pub fn gq_ovoid_rule(q: u64) -> Verdict {
    if q < 2 {
        return Verdict::Inconclusive;
    }
    if q % 8 == 3 {
        return ruled_out(
            Rule::GqOvoid,
            format!("GQ(q,q^2-q) ovoid rule (i): q = {q} = 3 mod 8"),
        );
    }
    for (l, p, e) in factorizations_3mod4(q - 1) {
        if l % 4 == 2 {
            return ruled_out(
                Rule::GqOvoid,
                format!("GQ(q,q^2-q) ovoid rule (ii): q - 1 = {l}*{p}^{e}"),
            );
        }
    }
    Verdict::Inconclusive
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaylorVerdict {
    pub verdict: Verdict,
    /// At most two Delsarte cocliques (`q > 3`).
    pub at_most_two: bool,
}

/// Delsarte cocliques in graphs with the parameters of Taylor's 2-graph for
/// odd `q`: `e⁺ = (q−1)/2`, `e⁻ = −(q²+1)/2`.
pub fn taylor_rule(q: u64) -> TaylorVerdict {
    let at_most_two = q > 3;
    if q < 3 || q.is_multiple_of(2) {
        return TaylorVerdict {
            verdict: Verdict::Inconclusive,
            at_most_two: false,
        };
    }
    let verdict = if q % 8 == 5 {
        ruled_out(Rule::Taylor, format!("Taylor rule (a): q = {q} = 5 mod 8"))
    } else {
        factorizations_3mod4((q - 1) / 2)
            .into_iter()
            .find(|&(l, p, _)| l % 2 == 1 && l % p != 0)
            .map(|(l, p, e)| {
                ruled_out(
                    Rule::Taylor,
                    format!("Taylor rule (b): q - 1 = 2*{l}*{p}^{e}"),
                )
            })
            .unwrap_or(Verdict::Inconclusive)
    };
    TaylorVerdict {
        verdict,
        at_most_two,
    }
}

/// `Some(q)` when `(e⁺, e⁻) = (q−1, −q²+q−1)`.
pub fn gq_shape(e_plus: i64, e_minus: i64) -> Option<u64> {
    let q = e_plus + 1;
    (q >= 2 && e_minus == -q * q + q - 1).then_some(q as u64)
}

/// `Some(q)` when `(e⁺, e⁻) = ((q−1)/2, −(q²+1)/2)` for odd `q`.
pub fn taylor_shape(e_plus: i64, e_minus: i64) -> Option<u64> {
    let q = 2 * e_plus + 1;
    (q >= 3 && 2 * e_minus == -(q * q + 1)).then_some(q as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactsError {
    #[error("facts line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("facts line {line}: duplicate key ({e_plus},{e_minus})")]
    Duplicate {
        line: usize,
        e_plus: i64,
        e_minus: i64,
    },
}

/// A bound on the number of Delsarte cocliques taken from the literature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnownFact {
    pub e_plus: i64,
    pub e_minus: i64,
    pub bound: u64,
    pub citation: String,
}

const BUILTIN_FACTS: &str = include_str!("../data/facts.txt");

/// The facts that the bundled `facts.txt` lists.
pub fn builtin_facts() -> Vec<KnownFact> {
    parse_facts(BUILTIN_FACTS).expect("bundled facts file parses")
}

/// One fact per line: `e+ e- bound citation text`. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_facts(text: &str) -> Result<Vec<KnownFact>, FactsError> {
    let mut out: Vec<KnownFact> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: &str| FactsError::Parse {
            line,
            message: message.into(),
        };
        let mut parts = trimmed.splitn(4, char::is_whitespace);
        let mut field = |name: &str| {
            parts
                .next()
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| err(&format!("missing {name}")))
        };
        let e_plus: i64 = field("e+")?
            .parse()
            .map_err(|_| err("e+ is not an integer"))?;
        let e_minus: i64 = field("e-")?
            .parse()
            .map_err(|_| err("e- is not an integer"))?;
        let bound: u64 = field("bound")?
            .parse()
            .map_err(|_| err("bound is not a non-negative integer"))?;
        let citation = field("citation")?.to_string();
        if out
            .iter()
            .any(|f| f.e_plus == e_plus && f.e_minus == e_minus)
        {
            return Err(FactsError::Duplicate {
                line,
                e_plus,
                e_minus,
            });
        }
        out.push(KnownFact {
            e_plus,
            e_minus,
            bound,
            citation,
        });
    }
    Ok(out)
}

pub fn format_facts(facts: &[KnownFact]) -> String {
    facts
        .iter()
        .map(|f| format!("{} {} {} {}\n", f.e_plus, f.e_minus, f.bound, f.citation))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoteKind {
    /// Taylor 2-graph parameters with `q > 3` where no counting rule gives 0.
    TaylorTransitivity,
    /// A literature fact exists for this key but was not supplied.
    FactAvailable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Note {
    pub kind: NoteKind,
    pub text: String,
}

/// Upper bound on the number of Delsarte cocliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocliqueBound {
    pub bound: u64,
    pub reason: Reason,
    pub notes: Vec<Note>,
}

impl CocliqueBound {
    pub fn verdict(&self) -> Verdict {
        Verdict::Bound {
            value: self.bound,
            reason: self.reason.clone(),
        }
    }
}

/// Bounds the number of Delsarte cocliques of any graph with parameters `t`.
///
/// Candidate bounds, in priority order: 0 from a family rule or a design
/// nonexistence test; 1 when `|Y∩Z|` is not a non-negative integer; 2 when
/// the triple intersection is not, or when `e⁺ > 1` and `gcd(e⁺, e⁻) = 1`;
/// a matching known fact; otherwise `m⁻+1`. The smallest applicable bound is
/// returned, ties going to the earlier rule.
pub fn max_delsarte_cocliques(t: &TightParams, facts: &[KnownFact]) -> CocliqueBound {
    let (ep, em) = t.key();
    let mut candidates: Vec<(u64, Reason)> = Vec::new();
    let mut notes = Vec::new();

    let gq = gq_shape(ep, em).map(gq_ovoid_rule);
    let taylor_q = taylor_shape(ep, em);
    let taylor = taylor_q.map(taylor_rule);
    let family = gq
        .into_iter()
        .chain(taylor.as_ref().map(|t| t.verdict.clone()))
        .find(Verdict::is_ruled_out);
    if let Some(v) = family {
        candidates.push((0, v.reason().cloned().expect("ruled out has reason")));
    } else if let Ok(q) = quasisym_params(t) {
        assert_eq!(q.s2 - q.s1, ep, "intersection numbers differ by e+");
        if let Verdict::RuledOut { reason } = scan_primes(&q) {
            candidates.push((0, reason));
        }
    }

    match as_count(&pairwise_intersection(t)) {
        None => candidates.push((
            1,
            Reason::new(
                Rule::PairwiseIntersection,
                "non-integral pairwise coclique intersection",
            ),
        )),
        Some(_) => {
            if as_count(&triple_intersection(t)).is_none() {
                candidates.push((
                    2,
                    Reason::new(
                        Rule::TripleIntersection,
                        "non-integral triple coclique intersection",
                    ),
                ));
            }
        }
    }
    if ep > 1 && gcd_i64(ep, -em) == 1 {
        candidates.push((
            2,
            Reason::new(Rule::CoprimeEigenvalues, "e+ and e- coprime with e+ > 1"),
        ));
    }
    if let Some(f) = facts.iter().find(|f| (f.e_plus, f.e_minus) == (ep, em)) {
        candidates.push((f.bound, Reason::new(Rule::KnownFact, f.citation.clone())));
    }
    candidates.push((
        (t.m_minus() + 1) as u64,
        Reason::new(
            Rule::RankBound,
            "at most m-+1 Delsarte cocliques (rank bound)",
        ),
    ));

    let (bound, reason) = candidates
        .into_iter()
        .enumerate()
        .min_by_key(|(i, (b, _))| (*b, *i))
        .map(|(_, c)| c)
        .expect("rank bound always applies");

    if let (Some(q), Some(tv)) = (taylor_q, taylor.as_ref()) {
        if tv.at_most_two && bound > 0 {
            notes.push(Note {
                kind: NoteKind::TaylorTransitivity,
                text: format!(
                    "Taylor 2-graph parameters (q={q}): the Taylor graph itself has no Delsarte \
                     coclique because its automorphism group is transitive; that argument is not \
                     a counting rule, so other graphs with these parameters keep bound {bound}"
                ),
            });
        }
    }
    CocliqueBound {
        bound,
        reason,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srg::params_from_eigenvalues;

    fn qs(ep: i64, em: i64) -> QuasiSymParams {
        quasisym_params(&params_from_eigenvalues(ep, em).unwrap()).unwrap()
    }

    fn gq_design(q: i64) -> QuasiSymParams {
        qs(q - 1, -q * q + q - 1)
    }

    fn taylor_design(q: i64) -> QuasiSymParams {
        qs((q - 1) / 2, -(q * q + 1) / 2)
    }

    #[test]
    fn design_shapes() {
        let d = gq_design(3);
        assert_eq!((d.v, d.k, d.lambda, d.r, d.s1, d.s2), (19, 7, 7, 21, 1, 3));
        let d = gq_design(7);
        assert_eq!(
            (d.v, d.k, d.lambda, d.r, d.s1, d.s2),
            (295, 43, 43, 301, 1, 7)
        );
        let d = taylor_design(7);
        assert_eq!(
            (d.v, d.k, d.lambda, d.r, d.s1, d.s2),
            (43, 25, 100, 175, 13, 16)
        );
        let d = taylor_design(9);
        assert_eq!(
            (d.v, d.k, d.lambda, d.r, d.s1, d.s2),
            (73, 41, 205, 369, 21, 25)
        );
    }

    #[test]
    fn mod2() {
        assert!(calderbank_mod2(&gq_design(3)).is_ruled_out());
        assert!(calderbank_mod2(&taylor_design(5)).is_ruled_out());
        assert_eq!(calderbank_mod2(&taylor_design(9)), Verdict::Inconclusive);
    }

    #[test]
    fn mod_p() {
        assert!(blokhuis_calderbank_p(&qs(3, -17), 3).is_ruled_out());
        assert!(blokhuis_calderbank_p(&qs(5, -37), 5).is_ruled_out());
        assert_eq!(blokhuis_calderbank_p(&qs(2, -6), 3), Verdict::Inconclusive);
    }

    #[test]
    fn mod_pe() {
        assert!(blokhuis_calderbank_pe(&gq_design(7), 3, 1).is_ruled_out());
        assert!(blokhuis_calderbank_pe(&taylor_design(7), 3, 1).is_ruled_out());
        let d = gq_design(4);
        assert_eq!(blokhuis_calderbank_pe(&d, 3, 1), Verdict::Inconclusive);
        assert_eq!(scan_primes(&d), Verdict::Inconclusive);
    }

    #[test]
    fn prime_scan() {
        let v = scan_primes(&qs(3, -41));
        assert_eq!(v.reason().unwrap().rule, Rule::BlokhuisCalderbankP);
        assert!(v.reason().unwrap().text.contains("p=3"));
        let v = scan_primes(&qs(5, -34));
        assert!(v.reason().unwrap().text.contains("p=5"));
        assert_eq!(scan_primes(&qs(2, -6)), Verdict::Inconclusive);
    }

    #[test]
    fn family_rules() {
        assert!(gq_ovoid_rule(3).reason().unwrap().text.contains("(i)"));
        assert!(gq_ovoid_rule(7).reason().unwrap().text.contains("(ii)"));
        for q in [4, 5, 6] {
            assert_eq!(gq_ovoid_rule(q), Verdict::Inconclusive);
        }
        assert!(taylor_rule(5)
            .verdict
            .reason()
            .unwrap()
            .text
            .contains("(a)"));
        assert!(taylor_rule(7)
            .verdict
            .reason()
            .unwrap()
            .text
            .contains("(b)"));
        let t = taylor_rule(9);
        assert_eq!(t.verdict, Verdict::Inconclusive);
        assert!(t.at_most_two);
        assert!(!taylor_rule(3).at_most_two);
    }

    #[test]
    fn family_rules_match_direct_design_tests() {
        for q in 2..=50i64 {
            let direct = scan_primes(&gq_design(q)).is_ruled_out();
            assert_eq!(gq_ovoid_rule(q as u64).is_ruled_out(), direct, "GQ q={q}");
        }
        for q in (3..=79i64).step_by(2) {
            let direct = scan_primes(&taylor_design(q)).is_ruled_out();
            assert_eq!(
                taylor_rule(q as u64).verdict.is_ruled_out(),
                direct,
                "Taylor q={q}"
            );
        }
    }

    #[test]
    fn shapes() {
        assert_eq!(gq_shape(3, -13), Some(4));
        assert_eq!(taylor_shape(3, -25), Some(7));
        assert_eq!(taylor_shape(4, -41), Some(9));
        assert_eq!(gq_shape(2, -6), None);
        assert_eq!(taylor_shape(2, -6), None);
    }

    #[test]
    fn count_engine() {
        let facts = builtin_facts();
        let b = |ep, em| max_delsarte_cocliques(&params_from_eigenvalues(ep, em).unwrap(), &facts);
        assert_eq!(b(3, -13).bound, 2);
        assert_eq!(b(3, -12).bound, 56);
        assert_eq!(b(3, -12).reason.rule, Rule::KnownFact);
        assert_eq!(b(4, -20).bound, 116);
        assert_eq!(b(2, -6).bound, 22);
        assert_eq!(b(2, -22).bound, 0);
        // |Y∩Z| = 32/5 here
        let taylor9 = b(4, -41);
        assert_eq!(taylor9.bound, 1);
        assert_eq!(taylor9.notes[0].kind, NoteKind::TaylorTransitivity);
        let without = max_delsarte_cocliques(&params_from_eigenvalues(2, -22).unwrap(), &[]);
        assert_eq!(without.bound, 1);
    }

    #[test]
    fn facts_format() {
        let facts = builtin_facts();
        assert_eq!(facts.len(), 3);
        assert_eq!(parse_facts(&format_facts(&facts)).unwrap(), facts);
        assert!(matches!(
            parse_facts("1 2\n"),
            Err(FactsError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_facts("2 -6 3 a\n2 -6 4 b\n"),
            Err(FactsError::Duplicate { line: 2, .. })
        ));
        assert!(parse_facts("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn primality() {
        use crate::numtheory::is_prime;
        assert!(is_prime(2) && is_prime(97) && !is_prime(91));
    }
}
