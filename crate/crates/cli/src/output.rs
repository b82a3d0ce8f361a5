//! CSV serialization. Every real-valued field is written in fixed notation
//! with nine significant digits so files diff cleanly across runs.

use std::path::Path;

use anyhow::Context;
use coupled_array::optimizer::TraceEntry;
use coupled_array::sweep::{Fig2Row, Table1Row};
use coupled_array::SweepRecord;

pub const RECORD_HEADER: [&str; 8] = [
    "theta_deg",
    "u",
    "algorithm",
    "d_max_wl",
    "directivity",
    "positions_wl",
    "termination",
    "wall_ms",
];

const SIGNIFICANT: i32 = 9;

pub fn fixed(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return format!("{:.*}", (SIGNIFICANT - 1) as usize, 0.0);
    }
    let magnitude = v.abs().log10().floor() as i32;
    let mut decimals = (SIGNIFICANT - 1 - magnitude).max(0);
    let mut text = format!("{:.*}", decimals as usize, v);
    // rounding can carry into a new leading digit (9.9999999996 -> 10.00000000)
    if decimals > 0 && text.trim_start_matches('-').replace('.', "").trim_start_matches('0').len()
        > SIGNIFICANT as usize
    {
        decimals -= 1;
        text = format!("{:.*}", decimals as usize, v);
    }
    text
}

pub fn positions_field(positions: &[f64]) -> String {
    let mut x = positions.to_vec();
    x.sort_by(f64::total_cmp);
    x.iter().map(|&p| fixed(p)).collect::<Vec<_>>().join(";")
}

pub fn record_fields(r: &SweepRecord, timing: bool) -> Vec<String> {
    vec![
        fixed(r.theta_deg),
        fixed(r.u),
        r.algorithm.label().to_string(),
        fixed(r.d_max),
        fixed(r.directivity),
        positions_field(&r.positions),
        r.termination.to_string(),
        fixed(if timing { r.wall_time_ms } else { 0.0 }),
    ]
}

fn write_rows<I>(path: &Path, header: &[&str], rows: I) -> anyhow::Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush().with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn write_records(path: &Path, records: &[SweepRecord], timing: bool) -> anyhow::Result<()> {
    write_rows(path, &RECORD_HEADER, records.iter().map(|r| record_fields(r, timing)))
}

pub fn write_trace(path: &Path, trace: &[TraceEntry<f64>]) -> anyhow::Result<()> {
    write_rows(
        path,
        &["iteration", "directivity", "step"],
        trace
            .iter()
            .map(|t| vec![t.iteration.to_string(), fixed(t.directivity), fixed(t.step)]),
    )
}

pub fn write_table1(path: &Path, rows: &[Table1Row]) -> anyhow::Result<()> {
    write_rows(
        path,
        &["N", "exact", "approx"],
        rows.iter()
            .map(|r| vec![r.n_antennas.to_string(), fixed(r.exact), fixed(r.approx)]),
    )
}

pub fn write_fig2(path: &Path, rows: &[Fig2Row]) -> anyhow::Result<()> {
    write_rows(
        path,
        &["n", "d", "exact", "approx", "u"],
        rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                fixed(r.d),
                fixed(r.exact),
                fixed(r.approx),
                fixed(r.u),
            ]
        }),
    )
}
