//! Plain-text and JSON renderings of command results.

use serde::Serialize;
use swtqft::InvariantReport;

/// JSON shape of an invariant report. Field order is the output order.
#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub genus: usize,
    pub degree: i64,
    pub chamber: String,
    pub eta_bar: String,
    pub k_trail: Vec<(usize, i64)>,
    pub value: i64,
    pub empty: bool,
    pub warnings: Vec<String>,
}

impl From<&InvariantReport> for ReportJson {
    fn from(r: &InvariantReport) -> Self {
        let p = r.word.params();
        Self {
            genus: r.word.start_genus(),
            degree: p.d,
            chamber: p.chamber.to_string(),
            eta_bar: p.eta_bar.to_string(),
            k_trail: r.k_trail.clone(),
            value: r.value,
            empty: r.empty,
            warnings: r.warnings.clone(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

/// Stable-key JSON for an invariant report.
pub fn emit_json(report: &InvariantReport) -> String {
    to_json(&ReportJson::from(report))
}

pub fn trail_text(trail: &[(usize, i64)]) -> String {
    trail
        .iter()
        .map(|(g, k)| format!("({g},{k})"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn report_text(report: &InvariantReport) -> String {
    let p = report.word.params();
    let mut out = String::new();
    out.push_str(&format!("genus: {}\n", report.word.start_genus()));
    out.push_str(&format!("degree: {}\n", p.d));
    out.push_str(&format!("chamber: {}\n", p.chamber));
    out.push_str(&format!("eta_bar: {}\n", p.eta_bar));
    out.push_str(&format!("moves: {}\n", report.word.moves().len()));
    out.push_str(&format!("k_trail: {}\n", trail_text(&report.k_trail)));
    out.push_str(&format!("value: {}\n", report.value));
    out.push_str(&format!("empty: {}\n", report.empty));
    for w in &report.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

pub fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
