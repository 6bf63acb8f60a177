//! Grid evaluation for the table command.
//!
//! Cells are fixed up front in (q, n, d) order, evaluated in parallel, and
//! rendered sequentially from the collected results, so the output bytes do
//! not depend on scheduling.  Cells whose d falls outside 1..=floor(n/2)
//! are skipped with a note on standard error rather than failing the run.

use altbounds::bounds::{full_report, BoundReport};
use altbounds::spectra::diameter;
use altbounds::Result;
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;

use crate::render::{cell_text, flag_text, CellJson, FlagsJson, NamedCellJson};

pub const BOUND_NAMES: [&str; 10] = [
    "singleton",
    "hoffman",
    "ratio-k2",
    "ratio-k3",
    "minor-lp",
    "delsarte-lp",
    "code-anticode",
    "sphere-packing",
    "total-distance",
    "gq-linear",
];

pub struct TableRequest {
    pub qs: Vec<u64>,
    pub n_range: (usize, usize),
    /// None tabulates every valid d for each n.
    pub d_range: Option<(usize, usize)>,
    pub bounds: Vec<&'static str>,
}

#[derive(Serialize)]
struct RowJson {
    q: u64,
    n: usize,
    d: usize,
    bounds: Vec<NamedCellJson>,
    flags: FlagsJson,
}

#[derive(Serialize)]
struct TableJson {
    rows: Vec<RowJson>,
}

fn cells(req: &TableRequest) -> Vec<(u64, usize, usize)> {
    let mut out = Vec::new();
    for &q in &req.qs {
        for n in req.n_range.0..=req.n_range.1 {
            let dmax = diameter(n);
            let (lo, hi) = req.d_range.unwrap_or((1, dmax));
            for d in lo..=hi {
                if d < 1 || d > dmax {
                    eprintln!("skipping q={q} n={n} d={d}: d must lie in 1..={dmax}");
                    continue;
                }
                out.push((q, n, d));
            }
        }
    }
    out
}

/// Evaluates every cell of the request and returns the reports in row order.
pub fn evaluate(req: &TableRequest) -> Result<Vec<BoundReport>> {
    cells(req)
        .into_par_iter()
        .map(|(q, n, d)| full_report(q, n, d))
        .collect()
}

pub fn write_csv(req: &TableRequest, rows: &[BoundReport], out: &mut dyn Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["q".to_string(), "n".to_string(), "d".to_string()];
    header.extend(req.bounds.iter().map(|s| s.to_string()));
    header.extend(
        [
            "eq-hoffman-singleton",
            "eq-ratio-k2-singleton",
            "eq-ratio-k3-singleton",
            "eq-minor-delsarte",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    w.write_record(&header)?;
    for report in rows {
        let mut record = vec![
            report.q.to_string(),
            report.n.to_string(),
            report.d.to_string(),
        ];
        for name in &req.bounds {
            let entry = report.entry(name).expect("every bound is always present");
            record.push(cell_text(&entry.value));
        }
        let f = &report.flags;
        record.push(flag_text(f.hoffman_equals_singleton).to_string());
        record.push(flag_text(f.ratio_k2_equals_singleton).to_string());
        record.push(flag_text(f.ratio_k3_equals_singleton).to_string());
        record.push(flag_text(f.minor_lp_equals_delsarte).to_string());
        w.write_record(&record)?;
    }
    w.flush()
}

pub fn write_json(req: &TableRequest, rows: &[BoundReport], out: &mut dyn Write) -> std::io::Result<()> {
    let table = TableJson {
        rows: rows
            .iter()
            .map(|report| RowJson {
                q: report.q,
                n: report.n,
                d: report.d,
                bounds: req
                    .bounds
                    .iter()
                    .map(|name| {
                        let entry = report.entry(name).expect("present");
                        NamedCellJson {
                            name: entry.name,
                            cell: CellJson::from_entry(entry),
                        }
                    })
                    .collect(),
                flags: FlagsJson::from_flags(&report.flags),
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut *out, &table)?;
    out.write_all(b"\n")
}
