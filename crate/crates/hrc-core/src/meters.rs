//! Free-space reference meters: the two-pass speed meter and the
//! single-pass position meter read out at a homodyne angle zeta, with
//! their spectral densities, total sensitivity and the sub-SQL optimum.

use crate::constants::{C, HBAR};
use crate::error::HrcError;
use crate::mat2::C64;
use crate::noise::{sql, MechanicalMode};
use crate::Result;
#[allow(unused_imports)] // f64 math methods come from this trait in no_std builds
use num_traits::Float;

/// Which free-space meter is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeterKind {
    /// Two bounces separated by the delay tau; couples to the velocity.
    Speed,
    /// One bounce; couples to the position.
    Position,
}

/// Parameters of a free-space meter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeterParams {
    pub kind: MeterKind,
    /// Circulating power P = hbar k_p c A^2, W.
    pub power: f64,
    /// Carrier wave number, rad/m.
    pub k_p: f64,
    /// Delay between the two bounces of the speed meter, s.
    pub tau: f64,
    /// Homodyne readout angle, rad.
    pub zeta: f64,
}

impl MeterParams {
    pub fn new(kind: MeterKind, power: f64, k_p: f64, tau: f64, zeta: f64) -> Result<Self> {
        if !(power > 0.0) || !(k_p > 0.0) || !(tau > 0.0) {
            return Err(HrcError::InvalidArgument(
                "meter power, wave number and delay must be positive",
            ));
        }
        if zeta.sin().abs() < 1e-12 {
            return Err(HrcError::InvalidArgument(
                "homodyne angle must have a phase-quadrature component",
            ));
        }
        Ok(MeterParams {
            kind,
            power,
            k_p,
            tau,
            zeta,
        })
    }
}

/// The three spectral densities of a linear meter: imprecision S_xx
/// (m^2/Hz), back-action S_FF (N^2/Hz) and their cross-correlation S_xF
/// (m N / Hz, real here).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeterSpectra {
    pub s_xx: f64,
    pub s_ff: f64,
    pub s_xf: f64,
}

impl MeterSpectra {
    /// Meter-level uncertainty product S_xx S_FF - S_xF^2, bounded below
    /// by hbar^2/4 for any linear meter.
    pub fn uncertainty_product(&self) -> f64 {
        self.s_xx * self.s_ff - self.s_xf * self.s_xf
    }
}

/// In the small-delay regime the speed meter's signal scales as Omega
/// tau; the position meter replaces that factor by one.
fn signal_factor(kind: MeterKind, omega: f64, tau: f64) -> f64 {
    match kind {
        MeterKind::Speed => omega * tau,
        MeterKind::Position => 1.0,
    }
}

/// Imprecision, back-action and cross-correlation of the meter:
/// S_xx = hbar c / (4 k_p P s^2 sin^2 zeta), S_FF = 4 hbar k_p P s^2 / c,
/// S_xF = -hbar cot(zeta), with s = Omega tau (speed) or 1 (position).
pub fn meter_spectra(p: &MeterParams, omega: f64) -> Result<MeterSpectra> {
    let s = signal_factor(p.kind, omega, p.tau);
    if s == 0.0 {
        return Err(HrcError::InvalidArgument(
            "speed meter spectra diverge at zero frequency",
        ));
    }
    let sin2 = p.zeta.sin().powi(2);
    let cot = p.zeta.cos() / p.zeta.sin();
    Ok(MeterSpectra {
        s_xx: HBAR * C / (4.0 * p.k_p * p.power * s * s * sin2),
        s_ff: 4.0 * HBAR * p.k_p * p.power * s * s / C,
        s_xf: -HBAR * cot,
    })
}

/// Displacement-referred sensitivity
/// S_x = S_xx + 2 Re[chi] S_xF + |chi|^2 S_FF for the mechanical response
/// chi of `mode` (free mass: chi = -1/(M Omega^2)).
pub fn meter_sensitivity(p: &MeterParams, mode: &MechanicalMode, omega: f64) -> Result<f64> {
    let sp = meter_spectra(p, omega)?;
    let chi = crate::noise::mechanical_susceptibility(mode, omega, 0.0);
    Ok(meter_sensitivity_with_susceptibility(&sp, chi))
}

/// Sensitivity for an externally supplied susceptibility.
pub fn meter_sensitivity_with_susceptibility(sp: &MeterSpectra, chi: C64) -> f64 {
    sp.s_xx + 2.0 * chi.re * sp.s_xf + chi.norm_sqr() * sp.s_ff
}

/// Dimensionless coupling 𝒦 of the meter to a free mass of mass M:
/// 4 k_p P tau^2 / (M c) for the speed meter (frequency independent) and
/// 4 k_p P / (M Omega^2 c) for the position meter.
pub fn coupling_factor(p: &MeterParams, mass: f64, omega: f64) -> Result<f64> {
    if !(mass > 0.0) {
        return Err(HrcError::InvalidArgument("mass must be positive"));
    }
    match p.kind {
        MeterKind::Speed => Ok(4.0 * p.k_p * p.power * p.tau * p.tau / (mass * C)),
        MeterKind::Position => {
            if omega == 0.0 {
                return Err(HrcError::InvalidArgument(
                    "position meter coupling diverges at zero frequency",
                ));
            }
            Ok(4.0 * p.k_p * p.power / (mass * omega * omega * C))
        }
    }
}

/// Homodyne angle that cancels the free-mass back-action:
/// cot(zeta) = -K, i.e. zeta = atan(-1/K) folded into (0, pi).
pub fn optimal_zeta(p: &MeterParams, mass: f64, omega: f64) -> Result<f64> {
    let k = coupling_factor(p, mass, omega)?;
    let zeta = (-1.0 / k).atan();
    Ok(if zeta <= 0.0 {
        zeta + core::f64::consts::PI
    } else {
        zeta
    })
}

/// Free-mass sensitivity in units of the SQL:
/// S_x / (S_SQL/2) = 1/(K sin^2 zeta) + 2 cot(zeta) + K
/// which reaches 1/K (below the SQL for K > 1) at the optimal angle.
pub fn sensitivity_in_sql_units(p: &MeterParams, mass: f64, omega: f64) -> Result<f64> {
    let k = coupling_factor(p, mass, omega)?;
    let sin2 = p.zeta.sin().powi(2);
    let cot = p.zeta.cos() / p.zeta.sin();
    Ok(1.0 / (k * sin2) + 2.0 * cot + k)
}

/// Sensitivity of the meter at its optimal homodyne angle: exactly
/// S_SQL/2 * 1/K, hence hbar c / (4 k_p P tau^2 Omega^2) for the speed
/// meter and hbar c / (4 k_p P) for the position meter.
pub fn sub_sql_sensitivity(p: &MeterParams, mass: f64, omega: f64) -> Result<f64> {
    let k = coupling_factor(p, mass, omega)?;
    Ok(sql(mass, omega) / 2.0 / k)
}
