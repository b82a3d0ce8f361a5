//! Run configuration: TOML file plus command-line overrides.
//!
//! Optimizer lengths (`d_min`, `d_max`, `d_g`, `apertures`) are given in
//! wavelengths; antenna positions for `eval` are given in meters and
//! converted with `wavelength_m`.

use std::fs;
use std::path::{Path, PathBuf};

use coupled_array::{Algorithm, SweepSpec};
use serde::Deserialize;

use crate::exit::Failure;

/// Wavelength used when neither the file nor the flags set one (1 GHz).
pub const DEFAULT_WAVELENGTH_M: f64 = 0.3;

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub wavelength_m: Option<f64>,
    pub thetas: Option<Vec<f64>>,
    pub theta: Option<f64>,
    pub algorithms: Option<Vec<String>>,
    pub algorithm: Option<String>,
    pub n_antennas: Option<usize>,
    pub apertures: Option<Vec<f64>>,
    pub d_max: Option<f64>,
    pub d_min: Option<f64>,
    pub d_g: Option<f64>,
    pub iterations: Option<usize>,
    pub gd_iterations: Option<usize>,
    pub alpha0: Option<f64>,
    pub epsilon: Option<f64>,
    pub es_budget: Option<u64>,
    /// Meters, for `eval`.
    pub positions: Option<Vec<f64>>,
    pub output_dir: Option<PathBuf>,
    pub formats: Option<Vec<String>>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| Failure::usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn wavelength(&self) -> Result<f64, Failure> {
        let w = self.wavelength_m.unwrap_or(DEFAULT_WAVELENGTH_M);
        if w > 0.0 && w.is_finite() {
            Ok(w)
        } else {
            Err(Failure::usage(format!("wavelength must be positive, got {w}")))
        }
    }

    /// Sweep settings; unset fields fall back to the reference settings.
    pub fn sweep_spec(&self) -> Result<SweepSpec, Failure> {
        let algorithms = match &self.algorithms {
            Some(names) => parse_algorithms(names)?,
            None => vec![Algorithm::GsGd, Algorithm::Ulah],
        };
        let mut spec = SweepSpec::reference(algorithms);
        if let Some(n) = self.n_antennas {
            spec.n_antennas = n;
            let span = n.saturating_sub(1) as f64;
            spec.apertures = vec![span / 2.0, span, 2.0 * span];
        }
        if let Some(t) = &self.thetas {
            spec.thetas = t.clone();
        }
        if let Some(a) = &self.apertures {
            spec.apertures = a.clone();
        }
        set(&mut spec.d_min, self.d_min);
        set(&mut spec.d_g, self.d_g);
        set(&mut spec.iterations, self.iterations);
        set(&mut spec.gd_iterations, self.gd_iterations);
        set(&mut spec.alpha0, self.alpha0);
        set(&mut spec.epsilon, self.epsilon);
        if let Some(b) = self.es_budget {
            spec.es_budget = u128::from(b);
        }
        spec.validate().map_err(|e| Failure::usage(e.to_string()))?;
        Ok(spec)
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir.clone().unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn wants(&self, format: &str) -> bool {
        self.formats
            .as_ref()
            .is_none_or(|f| f.iter().any(|x| x.eq_ignore_ascii_case(format)))
    }
}

fn set<T: Copy>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

/// `flag.or(file)` for every field: flags win.
pub fn overlay(file: RunConfig, flags: RunConfig) -> RunConfig {
    macro_rules! pick {
        ($($field:ident),*) => {
            RunConfig { $($field: flags.$field.or(file.$field),)* }
        };
    }
    pick!(
        wavelength_m, thetas, theta, algorithms, algorithm, n_antennas, apertures, d_max, d_min,
        d_g, iterations, gd_iterations, alpha0, epsilon, es_budget, positions, output_dir, formats
    )
}

pub fn parse_algorithms(names: &[String]) -> Result<Vec<Algorithm>, Failure> {
    names
        .iter()
        .map(|n| n.trim().parse::<Algorithm>().map_err(|e| Failure::usage(e.to_string())))
        .collect()
}

/// Comma separated reals.
pub fn parse_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("`{t}` is not a finite number")),
            }
        })
        .collect()
}

/// Either a comma list or `start:stop:step` (inclusive) in degrees.
pub fn parse_angles(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return parse_list(text);
    }
    let v = parse_list(&parts.join(","))?;
    let (start, stop, step) = (v[0], v[1], v[2]);
    if !(step > 0.0 && stop >= start) {
        return Err(format!("bad range `{text}`"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| start + k as f64 * step).collect())
}

pub fn meters_to_wavelengths(meters: &[f64], wavelength_m: f64) -> Vec<f64> {
    meters.iter().map(|m| m / wavelength_m).collect()
}

pub fn wavelengths_to_meters(wl: &[f64], wavelength_m: f64) -> Vec<f64> {
    wl.iter().map(|x| x * wavelength_m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_round_trip() {
        let m = [0.0, 0.15, 0.216, -1.3, 2.4e-4];
        for &lambda in &[0.3, 0.01, 7.0] {
            let back = wavelengths_to_meters(&meters_to_wavelengths(&m, lambda), lambda);
            for (a, b) in m.iter().zip(&back) {
                assert!((a - b).abs() <= 1e-12 * a.abs());
            }
        }
        assert_eq!(meters_to_wavelengths(&[0.15], 0.3), vec![0.5]);
    }

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list("0, 0.15").unwrap(), vec![0.0, 0.15]);
        assert!(parse_list("0,abc").is_err());
        assert!(parse_list("0,NaN").is_err());
        assert_eq!(parse_angles("0:90:30").unwrap(), vec![0.0, 30.0, 60.0, 90.0]);
        assert_eq!(parse_angles("0:90:1").unwrap().len(), 91);
        assert_eq!(parse_angles("5,10").unwrap(), vec![5.0, 10.0]);
    }

    #[test]
    fn file_values_yield_to_flags() {
        let file: RunConfig = toml::from_str(
            "n_antennas = 3\nd_min = 0.2\nalgorithms = [\"GS\", \"ES\"]\nwavelength_m = 0.5",
        )
        .unwrap();
        let flags = RunConfig {
            d_min: Some(0.15),
            ..RunConfig::default()
        };
        let merged = overlay(file, flags);
        assert_eq!(merged.d_min, Some(0.15));
        assert_eq!(merged.n_antennas, Some(3));
        assert_eq!(merged.wavelength().unwrap(), 0.5);
        let spec = merged.sweep_spec().unwrap();
        assert_eq!(spec.apertures, vec![1.0, 2.0, 4.0]);
        assert_eq!(spec.algorithms, vec![Algorithm::Gs, Algorithm::Es]);
    }

    #[test]
    fn unknown_keys_and_names_rejected() {
        assert!(toml::from_str::<RunConfig>("n_antenas = 3").is_err());
        let cfg = RunConfig {
            algorithms: Some(vec!["annealing".into()]),
            ..RunConfig::default()
        };
        assert_eq!(cfg.sweep_spec().unwrap_err().code, 2);
    }
}
