//! Run configuration: one flat TOML file with nested sections. Unknown
//! keys are rejected so that typos cannot silently fall back to defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hrc_core::config::{CavityConfig, LaserConfig};
use hrc_core::membrane::MembraneGeometry;
use hrc_core::noise::MechanicalMode;

use crate::{CliError, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub cavity: CavitySection,
    pub laser: LaserSection,
    pub membrane: MembraneSection,
    pub grid: GridSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavitySection {
    /// Ring round-trip length, m.
    pub length_m: f64,
    /// Front mirror power transmission T^2.
    pub front_power_transmission: f64,
    /// Test-mass (membrane) power reflectivity |r|^2.
    pub tm_power_reflectivity: f64,
    /// Measured half-linewidth in Hz; when set it replaces the derived
    /// c T^2 / (4 pi L) in all noise computations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linewidth_override_hz: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaserSection {
    pub wavelength_m: f64,
    pub input_power_w: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembraneSection {
    pub size_x_m: f64,
    pub size_y_m: f64,
    pub thickness_m: f64,
    pub stress_pa: f64,
    pub density_kg_m3: f64,
    /// Measured fundamental (1,1) frequency, Hz; pins the mode-ladder
    /// rescale and the mechanical oscillator used in noise budgets.
    pub fundamental_hz: f64,
    pub q_factor: f64,
    /// Highest (m, n) index included in multimode transfer.
    #[serde(default = "default_max_mode_index")]
    pub max_mode_index: u32,
}

fn default_max_mode_index() -> u32 {
    3
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub f_min_hz: f64,
    pub f_max_hz: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cavity: CavitySection {
                length_m: 0.391,
                front_power_transmission: 0.01,
                tm_power_reflectivity: 0.046,
                linewidth_override_hz: None,
            },
            laser: LaserSection {
                wavelength_m: 1.55e-6,
                input_power_w: 1.0e-5,
            },
            membrane: MembraneSection {
                size_x_m: 1.0e-3,
                size_y_m: 1.0e-3,
                thickness_m: 200e-9,
                stress_pa: 800e6,
                density_kg_m3: 2700.0,
                fundamental_hz: 395.2e3,
                q_factor: 4.6e5,
                max_mode_index: 3,
            },
            grid: GridSection {
                f_min_hz: 1.0,
                f_max_hz: 1.0e6,
                points: 4001,
                spacing: Spacing::Log,
            },
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Validation(format!("cannot read config {}: {e}", path.display()))
        })?;
        let cfg: RunConfig = toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.cavity_config()?;
        self.laser_config()?;
        self.geometry()?;
        if !(self.membrane.fundamental_hz > 0.0) || !(self.membrane.q_factor > 0.0) {
            return Err(CliError::Validation(
                "membrane: fundamental_hz and q_factor must be positive".into(),
            ));
        }
        if self.membrane.max_mode_index == 0 {
            return Err(CliError::Validation(
                "membrane: max_mode_index must be at least 1".into(),
            ));
        }
        if let Some(hz) = self.cavity.linewidth_override_hz {
            if !(hz > 0.0) {
                return Err(CliError::Validation(
                    "cavity: linewidth_override_hz must be positive".into(),
                ));
            }
        }
        let g = &self.grid;
        if !(g.f_min_hz > 0.0) || !(g.f_min_hz < g.f_max_hz) {
            return Err(CliError::Validation(
                "grid: requires 0 < f_min_hz < f_max_hz".into(),
            ));
        }
        if g.points < 2 {
            return Err(CliError::Validation("grid: points must be at least 2".into()));
        }
        Ok(())
    }

    /// Stable content hash: SHA-256 of the canonical serialization, so
    /// formatting and comments do not affect output identity.
    pub fn content_hash(&self) -> String {
        let canonical = toml::to_string(self).expect("config serialization");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let digest = hasher.finalize();
        let mut hex = String::with_capacity(64);
        for byte in digest {
            use std::fmt::Write;
            let _ = write!(hex, "{byte:02x}");
        }
        hex
    }

    pub fn cavity_config(&self) -> Result<CavityConfig> {
        CavityConfig::from_power(
            self.cavity.length_m,
            self.cavity.front_power_transmission,
            self.cavity.tm_power_reflectivity,
        )
        .map_err(|e| CliError::Validation(format!("cavity: {e}")))
    }

    pub fn laser_config(&self) -> Result<LaserConfig> {
        LaserConfig::new(self.laser.wavelength_m, self.laser.input_power_w)
            .map_err(|e| CliError::Validation(format!("laser: {e}")))
    }

    pub fn geometry(&self) -> Result<MembraneGeometry> {
        MembraneGeometry::new(
            self.membrane.size_x_m,
            self.membrane.size_y_m,
            self.membrane.thickness_m,
            self.membrane.stress_pa,
            self.membrane.density_kg_m3,
        )
        .map_err(|e| CliError::Validation(format!("membrane: {e}")))
    }

    /// Cavity half-linewidth in rad/s: the measured override when
    /// present, otherwise the derived c T^2 / (2 L).
    pub fn gamma(&self) -> Result<f64> {
        match self.cavity.linewidth_override_hz {
            Some(hz) => Ok(2.0 * std::f64::consts::PI * hz),
            None => Ok(self.cavity_config()?.linewidth()),
        }
    }

    /// Fundamental drum mode as a mechanical oscillator with the modal
    /// mass of the membrane.
    pub fn fundamental_mode(&self) -> Result<MechanicalMode> {
        let geom = self.geometry()?;
        let omega_m = 2.0 * std::f64::consts::PI * self.membrane.fundamental_hz;
        MechanicalMode::new(
            geom.effective_mass(),
            omega_m,
            omega_m / (2.0 * self.membrane.q_factor),
        )
        .map_err(|e| CliError::Validation(format!("membrane: {e}")))
    }

    /// Frequency grid in Hz per the grid section.
    pub fn frequency_grid_hz(&self) -> Vec<f64> {
        let g = &self.grid;
        let n = g.points;
        (0..n)
            .map(|i| {
                let s = (i as f64) / ((n - 1) as f64);
                match g.spacing {
                    Spacing::Linear => g.f_min_hz + (g.f_max_hz - g.f_min_hz) * s,
                    Spacing::Log => (g.f_min_hz.ln() + (g.f_max_hz / g.f_min_hz).ln() * s).exp(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid_and_stable() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.content_hash(), cfg.clone().content_hash());
        assert_eq!(cfg.content_hash().len(), 64);
    }

    #[test]
    fn parse_rejects_unknown_keys() {
        let text = r#"
            [cavity]
            length_m = 0.391
            front_power_transmission = 0.01
            tm_power_reflectivity = 0.046
            bogus_key = 1.0
            [laser]
            wavelength_m = 1.55e-6
            input_power_w = 1e-5
            [membrane]
            size_x_m = 1e-3
            size_y_m = 1e-3
            thickness_m = 2e-7
            stress_pa = 8e8
            density_kg_m3 = 2700.0
            fundamental_hz = 395.2e3
            q_factor = 4.6e5
            [grid]
            f_min_hz = 1.0
            f_max_hz = 1e6
            points = 100
            spacing = "log"
        "#;
        let err = toml::from_str::<RunConfig>(text).unwrap_err();
        assert!(err.to_string().contains("bogus_key"), "{err}");
    }

    #[test]
    fn grid_validation() {
        let mut cfg = RunConfig::default();
        cfg.grid.f_max_hz = cfg.grid.f_min_hz;
        let err = cfg.validate().unwrap_err();
        assert!(format!("{err}").contains("grid"));

        let mut cfg = RunConfig::default();
        cfg.grid.points = 1;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn grid_shapes() {
        let mut cfg = RunConfig::default();
        cfg.grid = GridSection {
            f_min_hz: 10.0,
            f_max_hz: 1000.0,
            points: 3,
            spacing: Spacing::Log,
        };
        let g = cfg.frequency_grid_hz();
        assert_eq!(g.len(), 3);
        assert!((g[0] - 10.0).abs() < 1e-9);
        assert!((g[1] - 100.0).abs() < 1e-9);
        assert!((g[2] - 1000.0).abs() < 1e-9);

        cfg.grid.spacing = Spacing::Linear;
        let g = cfg.frequency_grid_hz();
        assert!((g[1] - 505.0).abs() < 1e-9);
    }

    #[test]
    fn linewidth_override_applies() {
        let mut cfg = RunConfig::default();
        let derived = cfg.gamma().unwrap();
        cfg.cavity.linewidth_override_hz = Some(0.84e6);
        let overridden = cfg.gamma().unwrap();
        assert!((overridden - 2.0 * std::f64::consts::PI * 0.84e6).abs() < 1e-6);
        assert!(overridden > derived);
    }
}
