//! Tabular and JSON reports over tight parameter sets.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::arith::{fmt_rational, Rational};
use crate::designs::{
    divisibility_check, equality_design_params, pairwise_intersection, quasisym_params,
    symmetric_design_params, triple_intersection, DivisibilityCheck, QuasiSymParams,
    RationalDesignParams, SymmetricParams,
};
use crate::nonexistence::{
    builtin_facts, max_delsarte_cocliques, CocliqueBound, KnownFact, Note, NoteKind,
};
use crate::srg::{scan_tight_parameters, TightParams};

/// The ten columns shared with the published table.
pub const CSV_HEADER: &str = "v,k,lambda,mu,e+,e-,m-,s1,s2,#";

/// One tight parameter set with its design intersection numbers and the
/// coclique bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub tight: TightParams,
    pub s1: i64,
    pub s2: i64,
    pub bound: CocliqueBound,
}

/// `s1 = −(e⁺)²−e⁺−e⁻`, `s2 = −(e⁺)²−e⁻`.
pub fn intersection_numbers(t: &TightParams) -> (i64, i64) {
    let (p, m) = t.key();
    (-p * p - p - m, -p * p - m)
}

/// Bound with a note when the bundled literature has a fact for this key
/// that `facts` does not supply.
pub fn bound_with_notes(t: &TightParams, facts: &[KnownFact]) -> CocliqueBound {
    let mut bound = max_delsarte_cocliques(t, facts);
    let key = t.key();
    if !facts.iter().any(|f| (f.e_plus, f.e_minus) == key) {
        if let Some(f) = builtin_facts()
            .into_iter()
            .find(|f| (f.e_plus, f.e_minus) == key)
        {
            if f.bound < bound.bound {
                bound.notes.push(Note {
                    kind: NoteKind::FactAvailable,
                    text: format!(
                        "literature fact available: at most {} ({})",
                        f.bound, f.citation
                    ),
                });
            }
        }
    }
    bound
}

pub fn scan_rows(v_min: i64, v_max: i64, e_plus_min: i64, facts: &[KnownFact]) -> Vec<ScanRow> {
    scan_tight_parameters(v_min, v_max, e_plus_min)
        .into_iter()
        .map(|tight| {
            let (s1, s2) = intersection_numbers(&tight);
            ScanRow {
                tight,
                s1,
                s2,
                bound: bound_with_notes(&tight, facts),
            }
        })
        .collect()
}

fn columns(r: &ScanRow) -> [i64; 10] {
    let t = &r.tight;
    [
        t.params.v,
        t.params.k,
        t.params.lambda,
        t.params.mu,
        t.e_plus(),
        t.e_minus(),
        t.m_minus(),
        r.s1,
        r.s2,
        r.bound.bound as i64,
    ]
}

pub fn to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = columns(r).iter().map(i64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Aligned table with the rule behind each bound and any notes.
pub fn to_text(rows: &[ScanRow]) -> String {
    let heads = ["v", "k", "lambda", "mu", "e+", "e-", "m-", "s1", "s2", "#"];
    let cells: Vec<[String; 10]> = rows
        .iter()
        .map(|r| columns(r).map(|c| c.to_string()))
        .collect();
    let width: Vec<usize> = (0..10)
        .map(|i| {
            cells
                .iter()
                .map(|c| c[i].len())
                .chain([heads[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let line = |out: &mut String, items: &[&str]| {
        let padded: Vec<String> = items
            .iter()
            .zip(&width)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        out.push_str(padded.join(" ").trim_end());
    };
    line(&mut out, &heads);
    out.push_str("  reason\n");
    for (r, c) in rows.iter().zip(&cells) {
        let items: Vec<&str> = c.iter().map(String::as_str).collect();
        line(&mut out, &items);
        let _ = writeln!(out, "  {}", r.bound.reason.text);
        for n in &r.bound.notes {
            let _ = writeln!(out, "    note: {}", n.text);
        }
    }
    out
}

/// JSON value with object keys sorted.
pub fn to_json_value<T: Serialize>(x: &T) -> Value {
    // serde_json's default map is ordered by key
    serde_json::to_value(x).expect("report types serialize")
}

pub fn to_json(rows: &[ScanRow]) -> String {
    let mut s = serde_json::to_string_pretty(&to_json_value(&rows)).expect("json");
    s.push('\n');
    s
}

/// Every derived quantity for one eigenvalue pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub tight: TightParams,
    pub quasisymmetric: Option<QuasiSymParams>,
    /// Symmetric design from two cocliques, when integral.
    pub symmetric: Option<SymmetricParams>,
    #[serde(with = "crate::arith::serde_rational")]
    pub pairwise_intersection: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub triple_intersection: Rational,
    pub equality_design: RationalDesignParams,
    pub divisibility: DivisibilityCheck,
    pub bound: CocliqueBound,
}

pub fn analyze(t: &TightParams, facts: &[KnownFact]) -> Analysis {
    Analysis {
        tight: *t,
        quasisymmetric: quasisym_params(t).ok(),
        symmetric: symmetric_design_params(t).ok(),
        pairwise_intersection: pairwise_intersection(t),
        triple_intersection: triple_intersection(t),
        equality_design: equality_design_params(t),
        divisibility: divisibility_check(t.e_plus(), t.e_minus()),
        bound: bound_with_notes(t, facts),
    }
}

impl Analysis {
    pub fn to_text(&self) -> String {
        let t = &self.tight;
        let mut out = String::new();
        let _ = writeln!(out, "parameters        {}", t.params);
        let _ = writeln!(
            out,
            "spectrum          e+ = {} (m+ = {}), e- = {} (m- = {})",
            t.e_plus(),
            t.spectrum.m_plus,
            t.e_minus(),
            t.m_minus()
        );
        let _ = writeln!(out, "Hoffman bound     {}", t.hoffman);
        match &self.quasisymmetric {
            Some(q) => {
                let _ = writeln!(out, "one coclique      quasisymmetric {q}");
            }
            None => {
                let (s1, s2) = intersection_numbers(t);
                let _ = writeln!(out, "one coclique      no design (s1 = {s1}, s2 = {s2})");
            }
        }
        match &self.symmetric {
            Some(s) => {
                let _ = writeln!(out, "two cocliques     symmetric {s}");
            }
            None => {
                let _ = writeln!(
                    out,
                    "two cocliques     symmetric design parameters not integral"
                );
            }
        }
        let _ = writeln!(
            out,
            "|Y∩Z|             {}",
            fmt_rational(&self.pairwise_intersection)
        );
        let _ = writeln!(
            out,
            "|Y1∩Y2∩Y3|        {}",
            fmt_rational(&self.triple_intersection)
        );
        let _ = writeln!(out, "m-+1 cocliques    {}", self.equality_design);
        let _ = writeln!(
            out,
            "divisibility      c = {}, e+ + 1 divides 2c+4: {}",
            fmt_rational(&self.divisibility.c),
            if self.divisibility.holds { "yes" } else { "no" }
        );
        let _ = writeln!(
            out,
            "max cocliques     {} ({})",
            self.bound.bound, self.bound.reason.text
        );
        for n in &self.bound.notes {
            let _ = writeln!(out, "note              {}", n.text);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srg::params_from_eigenvalues;

    #[test]
    fn csv_layout() {
        let rows = scan_rows(1, 100, 2, &builtin_facts());
        let csv = to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.next(), Some("76,21,2,7,2,-7,19,1,3,0"));
        assert_eq!(lines.next(), Some("77,16,0,4,2,-6,21,0,2,22"));
        assert_eq!(to_csv(&rows), csv);
    }

    #[test]
    fn fact_notes_only_without_the_fact() {
        let t = params_from_eigenvalues(3, -12).unwrap();
        let without = bound_with_notes(&t, &[]);
        assert_eq!(without.bound, 57);
        assert_eq!(without.notes[0].kind, NoteKind::FactAvailable);
        let with = bound_with_notes(&t, &builtin_facts());
        assert_eq!(with.bound, 56);
        assert!(with.notes.is_empty());
    }

    #[test]
    fn json_keys_are_sorted() {
        let a = analyze(&params_from_eigenvalues(2, -6).unwrap(), &[]);
        let s = serde_json::to_string(&to_json_value(&a)).unwrap();
        let top: Vec<&str> = [
            "bound",
            "divisibility",
            "equality_design",
            "pairwise_intersection",
        ]
        .into_iter()
        .collect();
        let pos: Vec<usize> = top
            .iter()
            .map(|k| s.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(a.to_text().contains("max cocliques     22"));
    }
}
