//! Result serialization: CSV, JSON, and human-readable tables.
//!
//! Every float is emitted with 17 significant digits and a dot decimal
//! separator so downstream comparison never loses precision.

use serde::Serialize;

use hspec_core::{SpectralReport, SweepResult, TableComparison};

/// 17 significant digits, locale-independent.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct PeakJson {
    location: f64,
    half_width: f64,
}

#[derive(Serialize)]
struct SpectralReportJson {
    integral: f64,
    err_estimate: f64,
    peaks: Vec<PeakJson>,
    subdivisions_used: usize,
    delta_roots: Vec<f64>,
    converged: bool,
}

pub fn spectral_json(report: &SpectralReport) -> String {
    let mirror = SpectralReportJson {
        integral: report.integral,
        err_estimate: report.err_estimate,
        peaks: report
            .peaks
            .iter()
            .map(|p| PeakJson {
                location: p.location,
                half_width: p.half_width,
            })
            .collect(),
        subdivisions_used: report.subdivisions_used,
        delta_roots: report.delta_roots.clone(),
        converged: report.converged,
    };
    serde_json::to_string_pretty(&mirror).expect("report serializes")
}

pub fn spectral_csv(report: &SpectralReport) -> String {
    let mut out = String::from("integral,err_estimate,subdivisions_used,converged\n");
    out.push_str(&format!(
        "{},{},{},{}\n",
        float(report.integral),
        float(report.err_estimate),
        report.subdivisions_used,
        report.converged
    ));
    out
}

pub fn spectral_human(report: &SpectralReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "integral      = {}\nerr_estimate  = {}\nsubdivisions  = {}\nconverged     = {}\n",
        float(report.integral),
        float(report.err_estimate),
        report.subdivisions_used,
        report.converged
    ));
    if !report.peaks.is_empty() {
        out.push_str("peaks (location, half_width):\n");
        for p in &report.peaks {
            out.push_str(&format!(
                "  {}  {}\n",
                float(p.location),
                float(p.half_width)
            ));
        }
    }
    if !report.delta_roots.is_empty() {
        out.push_str("delta roots:\n");
        for r in &report.delta_roots {
            out.push_str(&format!("  {}\n", float(*r)));
        }
    }
    out
}

#[derive(Serialize)]
struct SweepPointJson {
    alpha: f64,
    integral: f64,
    err: f64,
    converged: bool,
}

#[derive(Serialize)]
struct SweepJson {
    family: String,
    points: Vec<SweepPointJson>,
    threshold_bracket: Option<(f64, f64)>,
}

pub fn sweep_json(sweep: &SweepResult) -> String {
    let mirror = SweepJson {
        family: sweep.shape.to_string(),
        points: sweep
            .points
            .iter()
            .map(|p| SweepPointJson {
                alpha: p.alpha,
                integral: p.integral,
                err: p.err,
                converged: p.converged,
            })
            .collect(),
        threshold_bracket: sweep.threshold_bracket,
    };
    serde_json::to_string_pretty(&mirror).expect("sweep serializes")
}

pub fn sweep_csv(sweep: &SweepResult) -> String {
    let mut out = String::from("alpha,integral,err\n");
    for p in &sweep.points {
        out.push_str(&format!(
            "{},{},{}\n",
            float(p.alpha),
            float(p.integral),
            float(p.err)
        ));
    }
    out
}

pub fn sweep_human(sweep: &SweepResult) -> String {
    let mut out = format!("family: {}\n", sweep.shape);
    out.push_str(&format!(
        "{:>12} {:>22} {:>12} {:>9}\n",
        "alpha", "integral", "err", "converged"
    ));
    for p in &sweep.points {
        out.push_str(&format!(
            "{:>12} {:>22.15} {:>12.3e} {:>9}\n",
            p.alpha, p.integral, p.err, p.converged
        ));
    }
    if let Some((lo, hi)) = sweep.threshold_bracket {
        out.push_str(&format!("threshold bracket: [{lo}, {hi}]\n"));
    }
    out
}

#[derive(Serialize)]
struct RowJson {
    label: String,
    paper_value: f64,
    computed_value: f64,
    abs_diff: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct TableJson {
    title: String,
    rows: Vec<RowJson>,
}

pub fn tables_json(tables: &[TableComparison]) -> String {
    let mirror: Vec<TableJson> = tables
        .iter()
        .map(|t| TableJson {
            title: t.title.clone(),
            rows: t
                .rows
                .iter()
                .map(|r| RowJson {
                    label: r.label.clone(),
                    paper_value: r.paper_value,
                    computed_value: r.computed_value,
                    abs_diff: r.abs_diff,
                    tolerance: r.tolerance,
                    pass: r.pass,
                })
                .collect(),
        })
        .collect();
    serde_json::to_string_pretty(&mirror).expect("tables serialize")
}

pub fn tables_csv(tables: &[TableComparison]) -> String {
    let mut out = String::from("table,label,paper_value,computed_value,abs_diff,tolerance,pass\n");
    for t in tables {
        for r in &t.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                t.title,
                r.label,
                float(r.paper_value),
                float(r.computed_value),
                float(r.abs_diff),
                float(r.tolerance),
                r.pass
            ));
        }
    }
    out
}

pub fn tables_human(tables: &[TableComparison]) -> String {
    let mut out = String::new();
    for t in tables {
        out.push_str(&format!("== {} ==\n", t.title));
        out.push_str(&format!(
            "{:<42} {:>16} {:>19} {:>10} {:>9} {:>5}\n",
            "label", "paper_value", "computed_value", "abs_diff", "tol", "pass"
        ));
        for r in &t.rows {
            out.push_str(&format!(
                "{:<42} {:>16.9} {:>19.12} {:>10.2e} {:>9.0e} {:>5}\n",
                r.label, r.paper_value, r.computed_value, r.abs_diff, r.tolerance, r.pass
            ));
        }
    }
    let total: usize = tables.iter().map(|t| t.rows.len()).sum();
    let passed: usize = tables
        .iter()
        .map(|t| t.rows.iter().filter(|r| r.pass).count())
        .sum();
    out.push_str(&format!("{passed}/{total} rows pass\n"));
    out
}
