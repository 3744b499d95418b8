//! The analysis report and its JSON and text renderings.
//!
//! Vector sets are arrays of integer arrays in degree-then-lexicographic
//! order, column indices are one-based and an infinite shift is the string
//! `"inf"`. Fields of stages that did not run are `null`.

use std::collections::BTreeMap;
use std::fmt::Write;

use semihole_core::{
    Completeness, FinitenessVerdict, FinitenessWitness, HilbertBasis, InfinityCertificate,
    JointVerdict, MinimalSet, Point, Shift, ShiftTable,
};
use serde::ser::Serializer;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftValue {
    Finite(u64),
    Infinite,
}

impl Serialize for ShiftValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ShiftValue::Finite(v) => s.serialize_u64(*v),
            ShiftValue::Infinite => s.serialize_str("inf"),
        }
    }
}

impl std::fmt::Display for ShiftValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ShiftValue::Finite(v) => f.pad(&v.to_string()),
            ShiftValue::Infinite => f.pad("inf"),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BasisEntry {
    pub vector: Vec<i64>,
    pub generator: bool,
    pub hole: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ShiftTableReport {
    pub sources: Vec<Vec<i64>>,
    pub columns: Vec<usize>,
    /// One row per source, one value per column.
    pub values: Vec<Vec<ShiftValue>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct WitnessReport {
    pub basis_element: Vec<i64>,
    pub column: usize,
    pub certificate: &'static str,
    /// Farkas multipliers as exact fractions.
    pub multipliers: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FinitenessReport {
    pub verdict: &'static str,
    pub note: Option<&'static str>,
    pub witness: Option<WitnessReport>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MinSetReport {
    pub points: Vec<Vec<i64>>,
    pub completeness: &'static str,
    pub bound: Option<i64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct JointReport {
    #[serde(rename = "minSSFinite")]
    pub min_ss_finite: bool,
    pub cone_polyhedral: bool,
    pub extreme_rays_saturated: bool,
    pub holes_finite: bool,
    pub non_saturation_finite: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub matrix: Vec<Vec<i64>>,
    pub rank: Option<usize>,
    pub pointed: Option<bool>,
    pub grading: Option<Vec<i64>>,
    pub extreme_columns: Option<Vec<usize>>,
    pub hilbert_basis: Option<Vec<BasisEntry>>,
    pub fundamental_holes: Option<Vec<Vec<i64>>>,
    pub shift_table: Option<ShiftTableReport>,
    pub finiteness: Option<FinitenessReport>,
    pub holes: Option<Vec<Vec<i64>>>,
    pub non_saturation: Option<Vec<Vec<i64>>>,
    #[serde(rename = "minSS")]
    pub min_ss: Option<MinSetReport>,
    #[serde(rename = "minSQ")]
    pub min_sq: Option<MinSetReport>,
    #[serde(rename = "minSQsat")]
    pub min_sqsat: Option<MinSetReport>,
    #[serde(rename = "theorem21")]
    pub joint_verdict: Option<JointReport>,
    pub timings_ms: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

pub fn points(v: &[Point]) -> Vec<Vec<i64>> {
    v.iter().map(|p| p.0.clone()).collect()
}

pub fn basis_entries(hb: &HilbertBasis) -> Vec<BasisEntry> {
    hb.elements
        .iter()
        .map(|e| BasisEntry {
            vector: e.vector.0.clone(),
            generator: e.is_generator,
            hole: e.is_hole,
        })
        .collect()
}

pub fn shift_table(t: &ShiftTable) -> ShiftTableReport {
    let values = (0..t.sources.len())
        .map(|s| {
            t.columns
                .iter()
                .map(|&c| match t.get(s, c) {
                    Some(Shift::Finite { value, .. }) => ShiftValue::Finite(*value),
                    _ => ShiftValue::Infinite,
                })
                .collect()
        })
        .collect();
    ShiftTableReport {
        sources: points(&t.sources),
        columns: t.columns.iter().map(|c| c + 1).collect(),
        values,
    }
}

pub fn finiteness(verdict: FinitenessVerdict, witness: &FinitenessWitness) -> FinitenessReport {
    let verdict = match verdict {
        FinitenessVerdict::Finite => "FINITE",
        FinitenessVerdict::Infinite => "INFINITE",
        FinitenessVerdict::NotRun => "NOT_RUN",
    };
    let (note, witness) = match witness {
        FinitenessWitness::Saturated => (Some("saturated"), None),
        FinitenessWitness::InfiniteShift {
            element,
            column,
            certificate,
        } => {
            let (certificate, multipliers) = match certificate {
                InfinityCertificate::RealInfeasible(y) => (
                    "real-infeasible",
                    Some(y.iter().map(|q| q.to_string()).collect()),
                ),
                InfinityCertificate::NoIntegerSolution => ("no-integer-solution", None),
            };
            let w = WitnessReport {
                basis_element: element.0.clone(),
                column: column + 1,
                certificate,
                multipliers,
            };
            (None, Some(w))
        }
        FinitenessWitness::AllFinite | FinitenessWitness::NotRun => (None, None),
    };
    FinitenessReport {
        verdict,
        note,
        witness,
    }
}

pub fn min_set(m: &MinimalSet) -> MinSetReport {
    let (completeness, bound) = match m.completeness {
        Completeness::Complete => ("COMPLETE", None),
        Completeness::Bounded(b) => ("BOUNDED_SEARCH", Some(b)),
        Completeness::Skipped => ("SKIPPED", None),
    };
    MinSetReport {
        points: points(&m.points),
        completeness,
        bound,
    }
}

pub fn joint(j: &JointVerdict) -> JointReport {
    JointReport {
        min_ss_finite: j.min_ss_finite,
        cone_polyhedral: j.cone_polyhedral,
        extreme_rays_saturated: j.extreme_rays_saturated,
        holes_finite: j.holes_finite,
        non_saturation_finite: j.non_saturation_finite,
        consistent: j.consistent(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let vec = |v: &[i64]| {
            let parts: Vec<String> = v.iter().map(i64::to_string).collect();
            format!("({})", parts.join(", "))
        };
        let set = |out: &mut String, title: &str, v: &[Vec<i64>]| {
            let _ = writeln!(out, "{title} ({}):", v.len());
            for p in v {
                let _ = writeln!(out, "  {}", vec(p));
            }
        };

        let _ = writeln!(
            out,
            "Matrix ({} x {}):",
            self.matrix.len(),
            self.matrix.first().map_or(0, Vec::len)
        );
        for row in &self.matrix {
            let parts: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            let _ = writeln!(out, "  {}", parts.join(" "));
        }
        if let Some(r) = self.rank {
            let _ = writeln!(out, "Rank: {r}");
        }
        if let Some(p) = self.pointed {
            let _ = writeln!(out, "Pointed: {}", if p { "yes" } else { "no" });
        }
        if let Some(g) = &self.grading {
            let _ = writeln!(out, "Grading: {}", vec(g));
        }
        if let Some(e) = &self.extreme_columns {
            let parts: Vec<String> = e.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "Extreme columns: {}", parts.join(" "));
        }
        if let Some(hb) = &self.hilbert_basis {
            let _ = writeln!(out, "Hilbert basis ({}):", hb.len());
            for e in hb {
                let tag = match (e.generator, e.hole) {
                    (true, _) => "  generator",
                    (false, true) => "  hole",
                    (false, false) => "",
                };
                let _ = writeln!(out, "  {}{tag}", vec(&e.vector));
            }
        }
        if let Some(h0) = &self.fundamental_holes {
            set(&mut out, "Fundamental holes", h0);
        }
        if let Some(t) = &self.shift_table {
            let cols: Vec<String> = t.columns.iter().map(|c| format!("{c:>4}")).collect();
            let _ = writeln!(out, "Shift table:");
            let _ = writeln!(out, "  columns {}", cols.join(""));
            for (src, row) in t.sources.iter().zip(&t.values) {
                let vals: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
                let _ = writeln!(out, "  {} {}", vec(src), vals.join(""));
            }
        }
        if let Some(f) = &self.finiteness {
            let note = f.note.map(|n| format!(" ({n})")).unwrap_or_default();
            let _ = writeln!(out, "Holes finite: {}{note}", f.verdict);
            if let Some(w) = &f.witness {
                let _ = writeln!(
                    out,
                    "  witness: {} along column {} ({})",
                    vec(&w.basis_element),
                    w.column,
                    w.certificate
                );
                if let Some(m) = &w.multipliers {
                    let _ = writeln!(out, "  multipliers: {}", m.join(" "));
                }
            }
        }
        if let Some(h) = &self.holes {
            set(&mut out, "Holes", h);
        }
        if let Some(s) = &self.non_saturation {
            set(&mut out, "Non-saturation points", s);
        }
        for (title, m) in [
            ("min(S;S)", &self.min_ss),
            ("min(S;Q)", &self.min_sq),
            ("min(S;Q_sat)", &self.min_sqsat),
        ] {
            if let Some(m) = m {
                let how = match m.bound {
                    Some(b) => format!("{}, degree <= {b}", m.completeness),
                    None => m.completeness.to_string(),
                };
                set(&mut out, &format!("{title} [{how}]"), &m.points);
            }
        }
        if let Some(j) = &self.joint_verdict {
            let _ = writeln!(out, "Finiteness statements:");
            for (name, v) in [
                ("min(S;S) finite", j.min_ss_finite),
                ("cone polyhedral", j.cone_polyhedral),
                ("extreme rays meet S", j.extreme_rays_saturated),
                ("holes finite", j.holes_finite),
                ("non-saturation points finite", j.non_saturation_finite),
            ] {
                let _ = writeln!(out, "  {name}: {v}");
            }
            let _ = writeln!(out, "  consistent: {}", j.consistent);
        }
        if let Some(f) = self.frobenius {
            let _ = writeln!(out, "Frobenius number: {f}");
        }
        if !self.timings_ms.is_empty() {
            let parts: Vec<String> = self
                .timings_ms
                .iter()
                .map(|(k, v)| format!("{k}={v}ms"))
                .collect();
            let _ = writeln!(out, "Timings: {}", parts.join(" "));
        }
        for e in &self.errors {
            let _ = writeln!(out, "error: {e}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_shift_is_a_string() {
        let v = vec![ShiftValue::Finite(3), ShiftValue::Infinite];
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[3,"inf"]"#);
    }

    #[test]
    fn field_names() {
        let json = Report::default().to_json();
        for key in [
            "matrix",
            "rank",
            "pointed",
            "grading",
            "extremeColumns",
            "hilbertBasis",
            "fundamentalHoles",
            "shiftTable",
            "finiteness",
            "holes",
            "nonSaturation",
            "minSS",
            "minSQ",
            "minSQsat",
            "theorem21",
            "timingsMs",
        ] {
            assert!(json.contains(&format!("\"{key}\"")), "{key}");
        }
        assert!(!json.contains("frobenius"));
    }
}
