use std::time::Duration;

use serde::Serialize;

use super::dimension::Realizer;
use crate::drawing::TopoOrder;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Heuristic,
}

/// Results of one solver run. Fields a run did not compute are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub labels: Vec<String>,
    pub n: usize,
    pub edge_count: usize,
    pub closure_edge_count: usize,
    pub inc: usize,
    pub extension_count: Option<usize>,
    /// Exact runs: the diameter. Heuristic runs: the best distance found.
    pub led: Option<usize>,
    pub min_fip: Option<usize>,
    pub diametral_pair: Option<(TopoOrder, TopoOrder)>,
    /// Pair attaining `min_fip` in the direct search.
    pub optimal_pair: Option<(TopoOrder, TopoOrder)>,
    pub dim: Option<usize>,
    pub realizer: Option<Realizer>,
    pub method: Method,
    pub timings: Vec<(&'static str, Duration)>,
}

fn lemma1(inc: usize, dim: usize) -> i64 {
    inc as i64 - (dim as i64 - 2)
}

fn lemma2(inc: usize, dim: usize) -> i64 {
    inc as i64 - (2 * inc).div_ceil(dim) as i64
}

impl SolveReport {
    /// inc − (dim − 2).
    pub fn lemma1_bound(&self) -> Option<i64> {
        self.dim.map(|d| lemma1(self.inc, d))
    }

    /// inc − ⌈2·inc / dim⌉.
    pub fn lemma2_bound(&self) -> Option<i64> {
        self.dim.map(|d| lemma2(self.inc, d))
    }

    /// JSON document with stable field names. Timings are left out unless
    /// asked for, so the default output is byte-for-byte reproducible.
    pub fn to_json(&self, include_timings: bool) -> String {
        let labelled = |p: &Option<(TopoOrder, TopoOrder)>| {
            p.as_ref().map(|(a, b)| [a.labelled(&self.labels), b.labelled(&self.labels)])
        };
        let doc = ReportDoc {
            method: self.method,
            n: self.n,
            edges: self.edge_count,
            closure_edges: self.closure_edge_count,
            inc: self.inc,
            extensions: self.extension_count,
            led: self.led,
            min_fip: self.min_fip,
            dim: self.dim,
            lemma1_bound: self.lemma1_bound(),
            lemma2_bound: self.lemma2_bound(),
            bounds_satisfied: verify_bounds(self).ok().map(|b| BoundsDoc {
                within_inc: b.within_inc,
                lemma1: b.lemma1,
                lemma2: b.lemma2,
            }),
            diametral_pair: labelled(&self.diametral_pair),
            optimal_pair: labelled(&self.optimal_pair),
            realizer: self
                .realizer
                .as_ref()
                .map(|r| r.members().iter().map(|m| m.labelled(&self.labels)).collect()),
            timings_ms: include_timings.then(|| {
                self.timings
                    .iter()
                    .map(|&(phase, d)| (phase, d.as_secs_f64() * 1e3))
                    .collect()
            }),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
struct BoundsDoc {
    within_inc: bool,
    lemma1: bool,
    lemma2: bool,
}

#[derive(Serialize)]
struct ReportDoc {
    method: Method,
    n: usize,
    edges: usize,
    closure_edges: usize,
    inc: usize,
    extensions: Option<usize>,
    led: Option<usize>,
    min_fip: Option<usize>,
    dim: Option<usize>,
    lemma1_bound: Option<i64>,
    lemma2_bound: Option<i64>,
    bounds_satisfied: Option<BoundsDoc>,
    diametral_pair: Option<[Vec<String>; 2]>,
    optimal_pair: Option<[Vec<String>; 2]>,
    realizer: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_ms: Option<PhaseTimings>,
}

/// Phase timings as a JSON object, in run order.
struct PhaseTimings(Vec<(&'static str, f64)>);

impl FromIterator<(&'static str, f64)> for PhaseTimings {
    fn from_iter<I: IntoIterator<Item = (&'static str, f64)>>(iter: I) -> Self {
        PhaseTimings(iter.into_iter().collect())
    }
}

impl Serialize for PhaseTimings {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub inc: usize,
    pub min_fip: usize,
    pub dim: usize,
    pub lemma1_bound: i64,
    pub lemma2_bound: i64,
    /// min_fip ≤ inc.
    pub within_inc: bool,
    /// min_fip ≤ inc − (dim − 2).
    pub lemma1: bool,
    /// min_fip ≤ inc − ⌈2·inc / dim⌉.
    pub lemma2: bool,
}

impl BoundCheck {
    pub fn all_satisfied(&self) -> bool {
        self.within_inc && self.lemma1 && self.lemma2
    }

    /// The check as a JSON object, with an extra `ok` field.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("bound check serializes");
        v["ok"] = self.all_satisfied().into();
        let mut s = serde_json::to_string_pretty(&v).expect("bound check serializes");
        s.push('\n');
        s
    }
}

pub fn verify_bounds(report: &SolveReport) -> Result<BoundCheck> {
    let dim = report.dim.ok_or(Error::MissingDim)?;
    let min_fip = report.min_fip.ok_or(Error::MissingMinFip)?;
    let inc = report.inc;
    let (l1, l2) = (lemma1(inc, dim), lemma2(inc, dim));
    Ok(BoundCheck {
        inc,
        min_fip,
        dim,
        lemma1_bound: l1,
        lemma2_bound: l2,
        within_inc: min_fip <= inc,
        lemma1: min_fip as i64 <= l1,
        lemma2: min_fip as i64 <= l2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(inc: usize, min_fip: Option<usize>, dim: Option<usize>) -> SolveReport {
        SolveReport {
            labels: vec![],
            n: 0,
            edge_count: 0,
            closure_edge_count: 0,
            inc,
            extension_count: None,
            led: None,
            min_fip,
            diametral_pair: None,
            optimal_pair: None,
            dim,
            realizer: None,
            method: Method::Exact,
            timings: vec![("closure", Duration::from_millis(2))],
        }
    }

    #[test]
    fn crown_bounds() {
        let b = verify_bounds(&report(9, Some(1), Some(3))).unwrap();
        assert_eq!((b.lemma1_bound, b.lemma2_bound), (8, 3));
        assert!(b.all_satisfied());
    }

    #[test]
    fn chain_bounds() {
        let b = verify_bounds(&report(0, Some(0), Some(1))).unwrap();
        assert!(b.all_satisfied());
        assert!(b.lemma2_bound >= 0);
    }

    #[test]
    fn violations_are_flagged() {
        let b = verify_bounds(&report(9, Some(4), Some(3))).unwrap();
        assert!(b.lemma1 && !b.lemma2 && !b.all_satisfied());
    }

    #[test]
    fn missing_fields() {
        assert_eq!(verify_bounds(&report(3, Some(0), None)), Err(Error::MissingDim));
        assert_eq!(verify_bounds(&report(3, None, Some(2))), Err(Error::MissingMinFip));
    }

    #[test]
    fn json_fields() {
        let r = report(9, Some(1), Some(3));
        let v: serde_json::Value = serde_json::from_str(&r.to_json(false)).unwrap();
        assert_eq!(v["inc"], 9);
        assert_eq!(v["min_fip"], 1);
        assert_eq!(v["lemma1_bound"], 8);
        assert_eq!(v["method"], "exact");
        assert!(v["led"].is_null());
        assert!(v.get("timings_ms").is_none());
        let v: serde_json::Value = serde_json::from_str(&r.to_json(true)).unwrap();
        assert_eq!(v["timings_ms"]["closure"], 2.0);
    }
}
