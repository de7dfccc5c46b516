//! CSV rendering of sweep tables, spectra and single-run readouts.
//!
//! Floats use Rust's shortest round-trip formatting, so identical inputs
//! give byte-identical files.

use crate::algebra::Pattern;
use crate::analysis::SweepTable;
use crate::evolve::SpectrumTrace;

fn write_rows<I>(header: Vec<String>, rows: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// `control,control_value,pattern,probability`, one row per reported pattern.
pub fn sweep_csv(table: &SweepTable) -> String {
    let header = ["control", "control_value", "pattern", "probability"]
        .map(String::from)
        .to_vec();
    write_rows(
        header,
        table.rows.iter().map(|r| {
            vec![
                table.control.to_string(),
                r.control_value.to_string(),
                r.pattern.to_string(),
                r.probability.to_string(),
            ]
        }),
    )
}

/// `t,E1,...,E{3^n}`, levels ascending.
pub fn spectrum_csv(trace: &SpectrumTrace) -> String {
    let dim = trace.levels.first().map_or(0, Vec::len);
    let header = std::iter::once("t".to_string())
        .chain((1..=dim).map(|k| format!("E{k}")))
        .collect();
    write_rows(
        header,
        trace.times.iter().zip(&trace.levels).map(|(t, lv)| {
            std::iter::once(t.to_string())
                .chain(lv.iter().map(f64::to_string))
                .collect()
        }),
    )
}

/// `pattern,probability` for a single anneal.
pub fn readout_csv(rows: &[(Pattern, f64)]) -> String {
    write_rows(
        vec!["pattern".into(), "probability".into()],
        rows.iter().map(|(p, v)| vec![p.to_string(), v.to_string()]),
    )
}
