//! Interchange documents and report renderings.
//!
//! A MUB set is exchanged as one JSON object:
//!
//! ```json
//! {"format":"mubkit-mub/1","dim":2,"order":4,"provenance":{…},
//!  "bases":[{"index":0,"route":"computational","parameter":null,
//!            "scale_sq":1,"vectors":[["1","0"],["0","1"]]}, …]}
//! ```
//!
//! Every entry is a cyclotomic integer in the text grammar of
//! [`CyclotomicInt`]'s `Display` (`"1 - 2*z12^3"`), written in the document's
//! `order`. A vector stands for `entries / √scale_sq`.
//!
//! Reports come in two shapes: aligned text, or JSON lines ("records") with a
//! `kind` field on every line.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cyclotomic::CyclotomicInt;
use crate::entangle::{BellFamily, BellReport};
use crate::error::{Error, Result};
use crate::geometry::{IncidencePlane, PlaneReport};
use crate::mub::{
    Basis, BasisLabel, DimensionClass, MubReport, MubSet, Provenance, Route, StateVector,
};

pub const MUB_FORMAT: &str = "mubkit-mub/1";
pub const BELL_FORMAT: &str = "mubkit-bell/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MubDocument {
    pub format: String,
    pub dim: usize,
    pub order: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub bases: Vec<BasisRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRecord {
    pub index: usize,
    pub route: Route,
    #[serde(default)]
    pub parameter: Option<String>,
    pub scale_sq: u64,
    pub vectors: Vec<Vec<String>>,
}

fn entry_strings(v: &StateVector, order: u32) -> Vec<String> {
    v.entries()
        .iter()
        .map(|e| e.rescale_order(order).expect("document order").to_string())
        .collect()
}

impl MubDocument {
    pub fn from_set(set: &MubSet) -> Result<Self> {
        let order = set.order();
        let bases = set
            .bases
            .iter()
            .map(|b| {
                let scale_sq = b.common_scale().ok_or_else(|| {
                    Error::DimensionMismatch(format!("basis {} mixes scales", b.label.index))
                })?;
                Ok(BasisRecord {
                    index: b.label.index,
                    route: b.label.route,
                    parameter: b.label.parameter.clone(),
                    scale_sq,
                    vectors: b.vectors.iter().map(|v| entry_strings(v, order)).collect(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(MubDocument {
            format: MUB_FORMAT.into(),
            dim: set.dim,
            order,
            provenance: Some(set.provenance.clone()),
            bases,
        })
    }

    /// Rebuilds the set, checking shapes but not any MUB property.
    pub fn to_set(&self) -> Result<MubSet> {
        if self.format != MUB_FORMAT {
            return Err(Error::Parse(format!("unknown format {:?}", self.format)));
        }
        if self.dim == 0 || self.order == 0 {
            return Err(Error::Parse("dim and order must be positive".into()));
        }
        let bases = self
            .bases
            .iter()
            .map(|b| {
                if b.scale_sq == 0 {
                    return Err(Error::Parse(format!("basis {}: scale_sq is 0", b.index)));
                }
                let vectors = b
                    .vectors
                    .iter()
                    .map(|v| {
                        if v.len() != self.dim {
                            return Err(Error::Parse(format!(
                                "basis {}: vector of length {} in dimension {}",
                                b.index,
                                v.len(),
                                self.dim
                            )));
                        }
                        let entries = v
                            .iter()
                            .map(|s| CyclotomicInt::parse(s, self.order))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(StateVector::new(entries, b.scale_sq))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Basis::new(
                    vectors,
                    BasisLabel {
                        index: b.index,
                        route: b.route,
                        parameter: b.parameter.clone(),
                    },
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MubSet {
            dim: self.dim,
            bases,
            provenance: self.provenance.clone().unwrap_or(Provenance {
                class: DimensionClass::Trivial,
                route: Route::Computational,
                moduli: Vec::new(),
            }),
        })
    }
}

pub fn mub_to_json(set: &MubSet) -> Result<String> {
    let doc = MubDocument::from_set(set)?;
    Ok(serde_json::to_string(&doc).expect("serializable"))
}

pub fn mub_from_json(text: &str) -> Result<MubSet> {
    let doc: MubDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_set()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellDocument {
    pub format: String,
    pub dim: usize,
    pub order: u32,
    pub route: Route,
    pub layers: Vec<String>,
    pub states: Vec<BellRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellRecord {
    pub h: usize,
    pub a: usize,
    pub b: usize,
    pub scale_sq: u64,
    /// Nonzero amplitudes as `[left, right, value]`.
    pub terms: Vec<(usize, usize, String)>,
}

pub fn bell_document(f: &BellFamily) -> BellDocument {
    let order = f
        .iter()
        .map(|s| s.vector.order())
        .fold(1, crate::cyclotomic::common_order);
    let d = f.dim;
    let states = f
        .iter()
        .map(|s| BellRecord {
            h: s.h,
            a: s.a,
            b: s.b,
            scale_sq: s.vector.scale_sq(),
            terms: s
                .vector
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, e)| {
                    (
                        i / d,
                        i % d,
                        e.rescale_order(order).expect("lcm").to_string(),
                    )
                })
                .collect(),
        })
        .collect();
    BellDocument {
        format: BELL_FORMAT.into(),
        dim: d,
        order,
        route: f.route,
        layers: f.layer_labels.clone(),
        states,
    }
}

pub fn bell_to_json(f: &BellFamily) -> String {
    serde_json::to_string(&bell_document(f)).expect("serializable")
}

/// Dirac-style rendering such as `|0,0⟩ + z4|1,1⟩`. Roots of unity are shown
/// as single monomials (`z12^4` rather than its reduced form `-1 + z12^2`).
pub fn render_ket(v: &StateVector, d: usize) -> String {
    let mut out = String::new();
    for (i, e) in v.entries().iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let ket = format!("|{},{}⟩", i / d, i % d);
        let (neg, coef) = coefficient_text(e);
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&coef);
        out.push_str(&ket);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn coefficient_text(e: &CyclotomicInt) -> (bool, String) {
    let n = e.order();
    if let Some(k) = e.as_root_of_unity() {
        let (neg, k) = if n.is_multiple_of(2) && k >= n / 2 {
            (true, k - n / 2)
        } else {
            (false, k)
        };
        let mono = match k {
            0 => String::new(),
            1 => format!("z{n}"),
            _ => format!("z{n}^{k}"),
        };
        return (neg, mono);
    }
    let text = e.to_string();
    match text.strip_prefix('-') {
        Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
        _ if text.contains(['+', '-']) => (false, format!("({text})")),
        _ => (false, text),
    }
}

pub fn render_set_text(set: &MubSet) -> String {
    let mut out = format!(
        "dimension {}: {} bases via {}\n",
        set.dim,
        set.len(),
        set.provenance.route
    );
    for m in &set.provenance.moduli {
        out.push_str(&format!("  {m}\n"));
    }
    for b in &set.bases {
        out.push_str(&format!(
            "basis {} [{}{}]\n",
            b.label.index,
            b.label.route,
            b.label
                .parameter
                .as_ref()
                .map(|p| format!(" {p}"))
                .unwrap_or_default()
        ));
        for v in &b.vectors {
            out.push_str(&format!("  {v}\n"));
        }
    }
    out
}

pub fn render_mub_report_text(report: &MubReport) -> String {
    let mut out = String::new();
    if report.bases.is_empty() {
        out.push_str("warning: no bases to verify\n");
    }
    for b in &report.bases {
        out.push_str(&format!(
            "basis {:>3}: {}\n",
            b.index,
            if b.passed {
                "orthonormal"
            } else {
                "NOT orthonormal"
            }
        ));
        if let Some(f) = &b.failure {
            out.push_str(&format!(
                "           vectors ({}, {}) have raw inner product {}\n",
                f.left, f.right, f.value
            ));
        }
    }
    for p in &report.pairs {
        let status = if p.passed {
            "unbiased"
        } else if p.structural_failure {
            "NOT unbiased (incompatible normalization)"
        } else {
            "NOT unbiased"
        };
        out.push_str(&format!("pair ({:>3}, {:>3}): {status}\n", p.left, p.right));
        if let Some(f) = &p.failure {
            out.push_str(&format!(
                "           vectors ({}, {}) have raw inner product {}\n",
                f.left, f.right, f.value
            ));
        }
    }
    out.push_str(&format!(
        "result: {} ({} bases, {} pairs)\n",
        if report.passed { "PASS" } else { "FAIL" },
        report.bases.len(),
        report.pairs.len()
    ));
    out
}

pub fn render_mub_report_records(report: &MubReport) -> String {
    let mut lines = Vec::new();
    for b in &report.bases {
        lines.push(json!({
            "kind": "basis",
            "index": b.index,
            "orthonormal": b.passed,
            "failure": b.failure.as_ref().map(|f| json!({
                "left": f.left, "right": f.right, "value": f.value.to_string()
            })),
        }));
    }
    for p in &report.pairs {
        lines.push(json!({
            "kind": "pair",
            "left": p.left,
            "right": p.right,
            "unbiased": p.passed,
            "structural_failure": p.structural_failure,
            "failure": p.failure.as_ref().map(|f| json!({
                "left": f.left, "right": f.right, "value": f.value.to_string()
            })),
        }));
    }
    lines.push(json!({
        "kind": "summary",
        "dim": report.dim,
        "bases": report.bases.len(),
        "pairs": report.pairs.len(),
        "passed": report.passed,
    }));
    join_lines(&lines)
}

fn join_lines(lines: &[serde_json::Value]) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(&l.to_string());
        out.push('\n');
    }
    out
}

pub fn render_bell_text(f: &BellFamily, report: &BellReport) -> String {
    let mut out = format!(
        "dimension {}: {} layers per shift via {}\n",
        f.dim,
        f.layers(),
        f.route
    );
    for (h, layers) in f.states.iter().enumerate() {
        out.push_str(&format!("h = {h}\n"));
        for (a, states) in layers.iter().enumerate() {
            out.push_str(&format!("  layer {a} [{}]\n", f.layer_labels[a]));
            for s in states {
                out.push_str(&format!(
                    "    (1/√{}) {}\n",
                    s.vector.scale_sq(),
                    render_ket(&s.vector, f.dim)
                ));
            }
        }
    }
    out.push_str(&render_bell_report_text(report));
    out
}

pub fn render_bell_report_text(report: &BellReport) -> String {
    let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
    let mut out = String::new();
    out.push_str(&format!(
        "orthonormal layers:      {}\n",
        mark(report.orthonormal)
    ));
    out.push_str(&format!(
        "maximally entangled:     {}\n",
        mark(report.maximally_entangled)
    ));
    out.push_str(&format!(
        "unbiased within shift:   {}\n",
        mark(report.unbiased_within_h)
    ));
    out.push_str(&format!(
        "orthogonal across shift: {}\n",
        mark(report.orthogonal_across_h)
    ));
    for f in report.failures.iter().take(10) {
        out.push_str(&format!(
            "  {:?} failure between {:?} and {:?}: {}\n",
            f.check, f.left, f.right, f.value
        ));
    }
    out.push_str(&format!(
        "result: {} ({} states)\n",
        if report.passed { "PASS" } else { "FAIL" },
        report.states
    ));
    out
}

pub fn render_bell_records(f: &BellFamily, report: &BellReport) -> String {
    let doc = bell_document(f);
    let mut lines = vec![json!({
        "kind": "family",
        "format": doc.format,
        "dim": doc.dim,
        "order": doc.order,
        "route": doc.route,
        "layers": doc.layers,
    })];
    for s in &doc.states {
        let mut v = serde_json::to_value(s).expect("serializable");
        v["kind"] = json!("state");
        lines.push(v);
    }
    lines.push(json!({
        "kind": "summary",
        "dim": report.dim,
        "states": report.states,
        "orthonormal": report.orthonormal,
        "maximally_entangled": report.maximally_entangled,
        "unbiased_within_h": report.unbiased_within_h,
        "orthogonal_across_h": report.orthogonal_across_h,
        "passed": report.passed,
    }));
    join_lines(&lines)
}

pub fn render_plane_text(plane: &IncidencePlane, report: &PlaneReport) -> String {
    let mut out = plane.render();
    let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
    out.push_str(&format!(
        "order: {}\n",
        report.order.map_or("none".into(), |n| n.to_string())
    ));
    out.push_str(&format!(
        "two points, one line:  {}\n",
        mark(report.two_points_one_line)
    ));
    out.push_str(&format!(
        "two lines, one point:  {}\n",
        mark(report.two_lines_one_point)
    ));
    out.push_str(&format!(
        "four points in general position: {}\n",
        mark(report.four_points_general)
    ));
    out.push_str(&format!(
        "counts n²+n+1:         {}\n",
        mark(report.counts_match)
    ));
    if let Some(f) = &report.failure {
        out.push_str(&format!("failure: {f}\n"));
    }
    out.push_str(&format!(
        "result: {}\n",
        if report.passed { "PASS" } else { "FAIL" }
    ));
    out
}

pub fn render_plane_records(plane: &IncidencePlane, report: &PlaneReport) -> String {
    let mut lines = Vec::new();
    for (i, p) in plane.points.iter().enumerate() {
        lines.push(json!({
            "kind": "point",
            "index": i,
            "name": p,
            "label": plane.labels.as_ref().map(|l| l[i].clone()),
        }));
    }
    for (i, l) in plane.lines.iter().enumerate() {
        lines.push(json!({"kind": "line", "index": i, "points": l}));
    }
    lines.push(json!({
        "kind": "summary",
        "points": report.points,
        "lines": report.lines,
        "order": report.order,
        "two_points_one_line": report.two_points_one_line,
        "two_lines_one_point": report.two_lines_one_point,
        "four_points_general": report.four_points_general,
        "counts_match": report.counts_match,
        "failure": report.failure,
        "passed": report.passed,
    }));
    join_lines(&lines)
}

/// JSON lines of serializable rows, each tagged with `kind`.
pub fn render_rows<T: Serialize>(kind: &str, rows: &[T]) -> String {
    let lines: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("serializable");
            v["kind"] = json!(kind);
            v
        })
        .collect();
    join_lines(&lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::{mub_composite, verify_mub_set};

    #[test]
    fn round_trip() {
        for d in [2, 3, 4, 6] {
            let set = mub_composite(d).unwrap();
            let text = mub_to_json(&set).unwrap();
            let back = mub_from_json(&text).unwrap();
            assert!(verify_mub_set(&back).passed);
            assert_eq!(mub_to_json(&back).unwrap(), text);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(mub_from_json("{").is_err());
        let bad = r#"{"format":"mubkit-mub/1","dim":2,"order":1,"bases":[{"index":0,"route":"computational","scale_sq":1,"vectors":[["1"]]}]}"#;
        assert!(matches!(mub_from_json(bad), Err(Error::Parse(_))));
        let empty = r#"{"format":"mubkit-mub/1","dim":3,"order":1,"bases":[]}"#;
        assert!(verify_mub_set(&mub_from_json(empty).unwrap()).passed);
    }

    #[test]
    fn kets() {
        let f = crate::entangle::bell_even(1).unwrap();
        assert_eq!(render_ket(&f.state(0, 1, 1).vector, 2), "|0,0⟩ - z4|1,1⟩");
        assert_eq!(render_ket(&f.state(1, 0, 0).vector, 2), "|0,1⟩ + |1,0⟩");
    }
}
