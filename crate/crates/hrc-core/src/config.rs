//! Cavity and laser parameter sets with derived quantities.

use crate::constants::{C, HBAR};
use crate::error::HrcError;
use crate::Result;
#[allow(unused_imports)] // f64 math methods come from this trait in no_std builds
use num_traits::Float;

/// Geometric and mirror parameters of the hybrid readout cavity.
///
/// `r_front`/`t_front` are the amplitude reflectivity and transmissivity of
/// the front (coupling) mirror; `r_tm`/`t_tm` those of the movable test
/// mass inside the ring. All other mirrors are treated as perfectly
/// reflective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    /// Front mirror to test mass, clockwise, m.
    pub l1: f64,
    /// Front mirror to test mass, counter-clockwise, m.
    pub l2: f64,
    /// Front mirror amplitude reflectivity.
    pub r_front: f64,
    /// Front mirror amplitude transmissivity.
    pub t_front: f64,
    /// Test mass amplitude reflectivity.
    pub r_tm: f64,
    /// Test mass amplitude transmissivity.
    pub t_tm: f64,
}

impl CavityConfig {
    pub fn new(l1: f64, l2: f64, r_front: f64, t_front: f64, r_tm: f64, t_tm: f64) -> Result<Self> {
        let cfg = CavityConfig {
            l1,
            l2,
            r_front,
            t_front,
            r_tm,
            t_tm,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Build a lossless configuration from power coefficients: the front
    /// mirror power transmission T^2 and the test mass power reflectivity
    /// r^2. The test mass sits at the ring midpoint (L1 = L2 = L/2).
    pub fn from_power(
        length: f64,
        front_power_transmission: f64,
        tm_power_reflectivity: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&front_power_transmission)
            || !(0.0..=1.0).contains(&tm_power_reflectivity)
        {
            return Err(HrcError::InvalidArgument(
                "power coefficients must lie in [0, 1]",
            ));
        }
        let t_front = front_power_transmission.sqrt();
        let r_front = (1.0 - front_power_transmission).sqrt();
        let r_tm = tm_power_reflectivity.sqrt();
        let t_tm = (1.0 - tm_power_reflectivity).sqrt();
        CavityConfig::new(length / 2.0, length / 2.0, r_front, t_front, r_tm, t_tm)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.l1 > 0.0 && self.l2 > 0.0) {
            return Err(HrcError::InvalidArgument("cavity lengths must be positive"));
        }
        for v in [self.r_front, self.t_front, self.r_tm, self.t_tm] {
            if !(0.0..=1.0).contains(&v) {
                return Err(HrcError::InvalidArgument(
                    "amplitude coefficients must lie in [0, 1]",
                ));
            }
        }
        let front = self.r_front * self.r_front + self.t_front * self.t_front;
        if front > 1.0 + 1e-12 {
            return Err(HrcError::NonPhysicalMirror { sum: front });
        }
        let tm = self.r_tm * self.r_tm + self.t_tm * self.t_tm;
        if tm > 1.0 + 1e-12 {
            return Err(HrcError::NonPhysicalMirror { sum: tm });
        }
        Ok(())
    }

    /// Round-trip length L = L1 + L2, m.
    pub fn length(&self) -> f64 {
        self.l1 + self.l2
    }

    /// Round-trip time tau = L/c, s.
    pub fn round_trip_time(&self) -> f64 {
        self.length() / C
    }

    /// Free spectral range c/L, rad/s in the round-trip phase convention
    /// used throughout (resonances repeat every 2*pi of k*L).
    pub fn fsr(&self) -> f64 {
        C / self.length()
    }

    /// Optical half-linewidth gamma = c T^2 / (2 L), rad/s, from the
    /// single-mode approximation. Measured setups may deviate (extra
    /// losses); pass an override where a measured value is available.
    pub fn linewidth(&self) -> f64 {
        C * self.t_front * self.t_front / (2.0 * self.length())
    }

    /// Test-mass mixing angle theta with r = cos(theta), t = sin(theta).
    pub fn theta(&self) -> f64 {
        self.t_tm.atan2(self.r_tm)
    }
}

/// Input laser parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserConfig {
    /// Vacuum wavelength, m.
    pub wavelength: f64,
    /// Average input power, W.
    pub input_power: f64,
}

impl LaserConfig {
    pub fn new(wavelength: f64, input_power: f64) -> Result<Self> {
        if !(wavelength > 0.0) {
            return Err(HrcError::InvalidArgument("wavelength must be positive"));
        }
        if !(input_power > 0.0) {
            return Err(HrcError::InvalidArgument("input power must be positive"));
        }
        Ok(LaserConfig {
            wavelength,
            input_power,
        })
    }

    /// Carrier wave number k_p = 2 pi / lambda, rad/m.
    pub fn k_p(&self) -> f64 {
        2.0 * core::f64::consts::PI / self.wavelength
    }

    /// Carrier angular frequency omega_p = k_p c, rad/s.
    pub fn omega_p(&self) -> f64 {
        self.k_p() * C
    }

    /// Field amplitude A with I_in = (1/2) hbar k_p c A^2.
    pub fn amplitude(&self) -> f64 {
        (2.0 * self.input_power / (HBAR * self.k_p() * C)).sqrt()
    }

    /// Quadrature-vector amplitude sqrt(2 I_in / (hbar omega_p)); equals
    /// the classical amplitude A of the cosine-quadrature carrier.
    pub fn quad_amplitude(&self) -> f64 {
        (2.0 * self.input_power / (HBAR * self.omega_p())).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_power_matches_table_values() {
        let cfg = CavityConfig::from_power(0.391, 0.01, 0.046).unwrap();
        assert!((cfg.length() - 0.391).abs() < 1e-15);
        assert!((cfg.t_front * cfg.t_front - 0.01).abs() < 1e-15);
        assert!((cfg.r_tm - 0.046_f64.sqrt()).abs() < 1e-15);
        // derived linewidth c T^2 / (2 L) for these numbers is ~0.61 MHz
        let ghz = cfg.linewidth() / (2.0 * core::f64::consts::PI);
        assert!((ghz - 0.61e6).abs() / 0.61e6 < 0.01, "{ghz}");
    }

    #[test]
    fn validation_rejects_bad_configs() {
        assert!(CavityConfig::new(0.0, 0.1, 0.9, 0.1, 0.2, 0.9).is_err());
        assert!(CavityConfig::new(0.1, 0.1, 0.9, 0.9, 0.2, 0.9).is_err());
        assert!(CavityConfig::from_power(0.391, 1.5, 0.046).is_err());
        assert!(LaserConfig::new(1.55e-6, 0.0).is_err());
        assert!(LaserConfig::new(-1.0, 1e-5).is_err());
    }

    #[test]
    fn laser_amplitude_conventions_are_consistent() {
        let laser = LaserConfig::new(1.55e-6, 1e-5).unwrap();
        // I_in = (1/2) hbar k_p c A^2 round-trips
        let i = 0.5 * HBAR * laser.k_p() * C * laser.amplitude().powi(2);
        assert!((i - laser.input_power).abs() / laser.input_power < 1e-12);
        // quad amplitude equals A because omega_p = k_p c
        assert!((laser.quad_amplitude() - laser.amplitude()).abs() < 1e-12);
    }
}
