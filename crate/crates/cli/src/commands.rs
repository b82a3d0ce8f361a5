use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use coupled_array::model::evaluate;
use coupled_array::sweep::{fig2_spacings, reproduce_fig2, reproduce_table1, run_algorithm};
use coupled_array::{
    is_feasible, optimal_excitation, run_sweep, Algorithm, DirectionCosine, SweepRecord, SweepSpec,
};

use crate::config::{meters_to_wavelengths, wavelengths_to_meters, RunConfig};
use crate::exit::Failure;
use crate::output::{self, fixed, positions_field};
use crate::svg::{line_chart, series_from_records};

fn prepare_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))
        .map_err(Failure::from)
}

fn direction(theta_deg: f64) -> Result<DirectionCosine<f64>, Failure> {
    if !(0.0..=180.0).contains(&theta_deg) {
        return Err(Failure::usage(format!("theta must lie in [0, 180] degrees, got {theta_deg}")));
    }
    Ok(DirectionCosine::from_degrees(theta_deg)?)
}

pub fn eval(cfg: &RunConfig, allow_infeasible: bool) -> Result<(), Failure> {
    let wavelength = cfg.wavelength()?;
    let meters = cfg
        .positions
        .as_ref()
        .ok_or_else(|| Failure::usage("eval needs --positions (meters)"))?;
    if meters.is_empty() {
        return Err(Failure::usage("no positions given"));
    }
    let x = meters_to_wavelengths(meters, wavelength);
    let theta = cfg.theta.unwrap_or(90.0);
    let u = direction(theta)?;
    let d_min = cfg.d_min.unwrap_or(0.1);
    let d_max = cfg.d_max.unwrap_or(f64::INFINITY);
    if !allow_infeasible && !is_feasible(&x, d_min, d_max) {
        return Err(Failure::usage(format!(
            "positions violate the spacing limits [{d_min}, {d_max}] wavelengths (pass --allow-infeasible to evaluate anyway)"
        )));
    }
    let e = evaluate(u, &x)?;
    let w = optimal_excitation(u, &x)?;
    let norm = w.weights.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let mut out = std::io::stdout().lock();
    writeln!(out, "theta_deg {}", fixed(theta))?;
    writeln!(out, "u {}", fixed(u.value()))?;
    writeln!(out, "positions_wl {}", x.iter().map(|&p| fixed(p)).collect::<Vec<_>>().join(";"))?;
    writeln!(out, "directivity {}", fixed(e.directivity))?;
    writeln!(out, "directivity_gain_over_n {}", fixed(e.directivity / x.len() as f64))?;
    let weights: Vec<String> = w
        .weights
        .iter()
        .map(|c| {
            let sign = if c.im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}j", fixed(c.re), fixed(c.im.abs()))
        })
        .collect();
    writeln!(out, "excitation {}", weights.join(";"))?;
    writeln!(out, "excitation_norm {}", fixed(norm))?;
    writeln!(out, "jitter_applied {:e}", e.jitter_applied)?;
    Ok(())
}

pub struct OptimizeRequest {
    pub algorithm: Algorithm,
    pub trace: Option<PathBuf>,
    pub timing: bool,
}

pub fn optimize(cfg: &RunConfig, req: &OptimizeRequest) -> Result<(), Failure> {
    let mut spec = cfg.sweep_spec()?;
    let theta = cfg.theta.unwrap_or(90.0);
    let u = direction(theta)?;
    let d_max = cfg.d_max.unwrap_or((spec.n_antennas - 1) as f64);
    if req.algorithm == Algorithm::Gd {
        spec.gd_iterations = cfg.iterations.or(cfg.gd_iterations).unwrap_or(spec.gd_iterations);
    }
    let start = std::time::Instant::now();
    let result = run_algorithm(&spec, u, req.algorithm, d_max)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let eval = evaluate(u, result.positions.positions())?;
    let record = SweepRecord {
        theta_deg: theta,
        u: u.value(),
        algorithm: req.algorithm,
        d_max,
        directivity: eval.directivity,
        positions: result.positions.positions().to_vec(),
        wall_time_ms,
        termination: coupled_array::sweep::RecordOutcome::Finished(result.termination),
        jitter_applied: eval.jitter_applied,
    };
    let dir = cfg.output_dir();
    prepare_dir(&dir)?;
    let path = dir.join("optimize.csv");
    output::write_records(&path, std::slice::from_ref(&record), req.timing)?;
    if let Some(trace) = &req.trace {
        output::write_trace(trace, &result.trace)?;
    }
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", output::RECORD_HEADER.join(","))?;
    writeln!(out, "{}", output::record_fields(&record, req.timing).join(","))?;
    let meters = wavelengths_to_meters(&record.positions, cfg.wavelength()?);
    writeln!(out, "# positions_m {}", positions_field(&meters))?;
    Ok(())
}

fn write_sweep_outputs(
    dir: &Path,
    stem: &str,
    records: &[SweepRecord],
    n: usize,
    title: &str,
    svg: bool,
    timing: bool,
) -> Result<(), Failure> {
    let csv_path = dir.join(format!("{stem}.csv"));
    output::write_records(&csv_path, records, timing)?;
    println!("wrote {} ({} records)", csv_path.display(), records.len());
    if svg {
        let svg_path = dir.join(format!("{stem}.svg"));
        let chart = line_chart(title, &series_from_records(records), n as f64);
        fs::write(&svg_path, chart).with_context(|| format!("writing {}", svg_path.display()))?;
        println!("wrote {}", svg_path.display());
    }
    Ok(())
}

fn report_failures(records: &[SweepRecord]) {
    for r in records.iter().filter(|r| !r.termination.is_success()) {
        eprintln!(
            "warning: {} at theta = {} deg, d_max = {}: {}",
            r.algorithm, r.theta_deg, r.d_max, r.termination
        );
    }
}

pub fn sweep(cfg: &RunConfig, timing: bool) -> Result<(), Failure> {
    let spec = cfg.sweep_spec()?;
    let dir = cfg.output_dir();
    prepare_dir(&dir)?;
    let records = run_sweep(&spec)?;
    report_failures(&records);
    let csv_path = dir.join("sweep.csv");
    output::write_records(&csv_path, &records, timing)?;
    println!("wrote {} ({} records)", csv_path.display(), records.len());
    if cfg.wants("svg") {
        let n = spec.n_antennas;
        let chart = line_chart(
            &format!("Directivity against θ, N = {n}"),
            &series_from_records(&records),
            n as f64,
        );
        let path = dir.join("fig3.svg");
        fs::write(&path, chart).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
        let span = (n - 1) as f64;
        let at_span: Vec<SweepRecord> =
            records.iter().filter(|r| r.d_max == span).cloned().collect();
        if !at_span.is_empty() {
            let chart = line_chart(
                &format!("Algorithms at d_max = {span}λ, N = {n}"),
                &series_from_records(&at_span),
                n as f64,
            );
            let path = dir.join("fig4.svg");
            fs::write(&path, chart).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Table1,
    Fig2,
    Fig3,
    Fig4,
}

pub struct ReproduceRequest {
    pub target: Target,
    pub with_es: bool,
    pub timing: bool,
}

pub fn reproduce(cfg: &RunConfig, req: &ReproduceRequest) -> Result<(), Failure> {
    let dir = cfg.output_dir();
    prepare_dir(&dir)?;
    match req.target {
        Target::Table1 => {
            let rows = reproduce_table1()?;
            let path = dir.join("table1.csv");
            output::write_table1(&path, &rows)?;
            println!("N,exact,approx");
            for r in &rows {
                println!("{},{},{}", r.n_antennas, fixed(r.exact), fixed(r.approx));
            }
            println!("wrote {}", path.display());
        }
        Target::Fig2 => {
            let spacings = fig2_spacings();
            let mut rows = reproduce_fig2(2, &spacings)?;
            rows.extend(reproduce_fig2(3, &spacings)?);
            let path = dir.join("fig2.csv");
            output::write_fig2(&path, &rows)?;
            println!("wrote {} ({} rows)", path.display(), rows.len());
        }
        Target::Fig3 | Target::Fig4 => {
            let mut algorithms = if req.target == Target::Fig3 {
                vec![Algorithm::GsGd, Algorithm::Ulah]
            } else {
                vec![Algorithm::GsGd, Algorithm::Gs, Algorithm::Gd, Algorithm::Ulah]
            };
            if req.with_es {
                algorithms.push(Algorithm::Es);
            }
            let mut spec = SweepSpec::reference(algorithms);
            if let Some(b) = cfg.es_budget {
                spec.es_budget = u128::from(b);
            }
            let n = spec.n_antennas;
            if req.target == Target::Fig4 {
                spec.apertures = vec![(n - 1) as f64];
            }
            let records = run_sweep(&spec)?;
            report_failures(&records);
            let (stem, title) = match req.target {
                Target::Fig3 => ("fig3", format!("Coupled movable array against ULAH, N = {n}")),
                _ => ("fig4", format!("GS-GD against baselines, d_max = {}λ", n - 1)),
            };
            write_sweep_outputs(&dir, stem, &records, n, &title, true, req.timing)?;
        }
    }
    Ok(())
}
