//! Displacement-referred quantum noise of the HRC: per-port shot noise,
//! QRPN with its position/speed decomposition, the optical spring,
//! mechanical susceptibility, the two-port optimal readout and the
//! topology comparison table.

use alloc::vec::Vec;

use crate::config::{CavityConfig, LaserConfig};
use crate::constants::{C, HBAR};
use crate::error::HrcError;
use crate::mat2::C64;
use crate::transfer::QuadratureState;
use crate::Result;
#[allow(unused_imports)] // f64 math methods come from this trait in no_std builds
use num_traits::Float;

/// One mechanical oscillator: M x'' + 2 gamma_m M x' + M omega_m^2 x = F,
/// so Q = omega_m / (2 gamma_m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MechanicalMode {
    /// Effective mass, kg.
    pub mass: f64,
    /// Angular resonance frequency, rad/s.
    pub omega_m: f64,
    /// Mechanical half-linewidth, rad/s.
    pub gamma_m: f64,
}

impl MechanicalMode {
    pub fn new(mass: f64, omega_m: f64, gamma_m: f64) -> Result<Self> {
        if !(mass > 0.0) || !(omega_m >= 0.0) || !(gamma_m >= 0.0) {
            return Err(HrcError::InvalidArgument(
                "mechanical mode requires mass > 0, omega_m >= 0, gamma_m >= 0",
            ));
        }
        Ok(MechanicalMode {
            mass,
            omega_m,
            gamma_m,
        })
    }

    /// Free test mass (no restoring force, no damping).
    pub fn free_mass(mass: f64) -> Self {
        MechanicalMode {
            mass,
            omega_m: 0.0,
            gamma_m: 0.0,
        }
    }

    pub fn q_factor(&self) -> f64 {
        if self.gamma_m == 0.0 {
            f64::INFINITY
        } else {
            self.omega_m / (2.0 * self.gamma_m)
        }
    }
}

/// Per-frequency noise budget entry. Displacement densities in m^2/Hz,
/// force densities in N^2/Hz. Divergent values (e.g. the speed-port shot
/// noise at Omega = 0) are reported as explicit infinities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseBudget {
    pub omega: f64,
    pub s_shot_1: f64,
    pub s_shot_2: f64,
    pub s_rp_x: f64,
    pub s_rp_v: f64,
    pub s_total_1: f64,
    pub s_total_2: f64,
    pub s_sql: f64,
    pub k_os: f64,
}

/// Shot-noise-limited displacement densities of the two ports:
/// S_x1 = (hbar c^2 / 4 I omega_p) (gamma^2 + Omega^2) / (gamma^2 + Omega^2/4),
/// S_x2 = (hbar c^2 / 4 I omega_p) (gamma^2 + Omega^2) / Omega^2.
pub fn shot_noise_displacement(gamma: f64, i_in: f64, omega_p: f64, omega: f64) -> (f64, f64) {
    let base = HBAR * C * C / (4.0 * i_in * omega_p);
    let num = gamma * gamma + omega * omega;
    let s1 = base * num / (gamma * gamma + omega * omega / 4.0);
    let s2 = if omega == 0.0 {
        f64::INFINITY
    } else {
        base * num / (omega * omega)
    };
    (s1, s2)
}

/// Effective force amplitude sqrt(I_in / (hbar omega_p)) entering the
/// QRPN prefactor; fixed so that the vacuum covariance of the force
/// reproduces the closed-form S_rp exactly.
fn force_amplitude(i_in: f64, omega_p: f64) -> f64 {
    (i_in / (HBAR * omega_p)).sqrt()
}

/// Radiation-pressure force amplitude (N per root Hz) driven by the input
/// quadratures, in the single-mode approximation:
/// F = pref [ (r^2-t^2)(2 gamma - i Omega) a1c + i r t Omega a1s
///            - i (r^2-t^2) Omega a2c + i r t (2 gamma - i Omega) a2s ].
pub fn qrpn_force_quadratures(
    gamma: f64,
    k_p: f64,
    i_in: f64,
    omega_p: f64,
    omega: f64,
    r: f64,
    t: f64,
    a1: QuadratureState,
    a2: QuadratureState,
) -> C64 {
    let amp = force_amplitude(i_in, omega_p);
    let pref = C64::from(HBAR * k_p * amp / core::f64::consts::SQRT_2) / C64::new(gamma, -omega);
    let d = r * r - t * t;
    let rt = r * t;
    let two_g = C64::new(2.0 * gamma, -omega);
    pref
        * (C64::from(d) * two_g * a1.c
            + C64::new(0.0, rt * omega) * a1.s
            + C64::new(0.0, -d * omega) * a2.c
            + C64::I * rt * two_g * a2.s)
}

/// Position and speed parts of the QRPN force spectral density for a test
/// mass with amplitude coefficients (r, t); reduces to the printed
/// closed form (2 gamma^2 + Omega^2) hbar omega_p I / (c^2 (gamma^2+Omega^2))
/// at r = 1.
pub fn qrpn_spectral_density(
    gamma: f64,
    i_in: f64,
    omega_p: f64,
    omega: f64,
    r: f64,
    t: f64,
) -> (f64, f64) {
    let pref2 = HBAR * omega_p * i_in / (2.0 * C * C * (gamma * gamma + omega * omega));
    let d = r * r - t * t;
    let q = d * d + r * r * t * t;
    let s_x = pref2 * q * 4.0 * gamma * gamma;
    let s_v = pref2 * q * 2.0 * omega * omega;
    (s_x, s_v)
}

/// QRPN force density of the equivalent Fabry-Perot cavity,
/// S_rp,FP = 4 hbar I omega_p / (L^2 (gamma^2 + Omega^2)).
pub fn qrpn_fabry_perot(gamma: f64, i_in: f64, omega_p: f64, omega: f64, l: f64) -> f64 {
    4.0 * HBAR * i_in * omega_p / (l * l * (gamma * gamma + omega * omega))
}

/// Optical spring constant K_os = 4 omega_p I t / (c L gamma), N/m.
/// Positive K_os reduces the effective spring constant.
pub fn optical_spring(omega_p: f64, i_in: f64, t: f64, l: f64, gamma: f64) -> f64 {
    4.0 * omega_p * i_in * t / (C * l * gamma)
}

/// Mechanical susceptibility
/// chi(Omega) = 1 / (M (omega_m'^2 - Omega^2) - 2 i gamma_m M Omega)
/// with omega_m'^2 = omega_m^2 - K_os / M. The undamped on-resonance case
/// returns an infinite-magnitude sentinel.
pub fn mechanical_susceptibility(mode: &MechanicalMode, omega: f64, k_os: f64) -> C64 {
    let wp2 = mode.omega_m * mode.omega_m - k_os / mode.mass;
    let re = mode.mass * (wp2 - omega * omega);
    let im = -2.0 * mode.gamma_m * mode.mass * omega;
    if re == 0.0 && im == 0.0 {
        return C64::new(f64::INFINITY, 0.0);
    }
    C64::new(re, im).inv()
}

/// Standard quantum limit S_SQL = 2 hbar / (M Omega^2), m^2/Hz.
pub fn sql(mass: f64, omega: f64) -> f64 {
    if omega == 0.0 {
        f64::INFINITY
    } else {
        2.0 * HBAR / (mass * omega * omega)
    }
}

/// Optimal-readout filter coefficient
/// K(Omega) = i Omega hbar k_p^2 A1^2 / (sqrt(2) M Omega^2 (gamma - i Omega)).
pub fn readout_filter_k(gamma: f64, k_p: f64, a1: f64, mass: f64, omega: f64) -> C64 {
    C64::new(0.0, omega) * HBAR * k_p * k_p * a1 * a1
        / (core::f64::consts::SQRT_2 * mass * omega * omega * C64::new(gamma, -omega))
}

/// Input-quadrature coefficients of the combined two-port record
/// b_opt = [speed-port sine] + g(Omega) [position-port cosine], including
/// the QRPN-induced displacement of a fully reflective free test mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutCombination {
    /// Filter value used for this record.
    pub g: C64,
    /// Back-action coefficient K(Omega).
    pub k: C64,
    pub coeff_a1c: C64,
    pub coeff_a1s: C64,
    pub coeff_a2c: C64,
    pub coeff_a2s: C64,
}

impl ReadoutCombination {
    /// Evaluate the combined record for given input quadratures.
    pub fn apply(&self, a1: QuadratureState, a2: QuadratureState) -> C64 {
        self.coeff_a1c * a1.c + self.coeff_a1s * a1.s + self.coeff_a2c * a2.c
            + self.coeff_a2s * a2.s
    }
}

/// Combined two-port readout for a fully reflective free test mass. When
/// `g` is `None` the optimal filter g = -2K is used, which removes the
/// zeroth-order (position) back-action from the record.
pub fn optimal_readout(
    gamma: f64,
    k_p: f64,
    a1: f64,
    mass: f64,
    omega: f64,
    g: Option<C64>,
) -> Result<ReadoutCombination> {
    if !(mass > 0.0) {
        return Err(HrcError::InvalidArgument("mass must be positive"));
    }
    if !(omega > 0.0) {
        return Err(HrcError::InvalidArgument("omega must be positive"));
    }
    let k = readout_filter_k(gamma, k_p, a1, mass, omega);
    let g = g.unwrap_or(-(k + k));
    let den = C64::new(gamma, -omega);
    let two_g = C64::new(2.0 * gamma, -omega);
    Ok(ReadoutCombination {
        g,
        k,
        coeff_a1c: (k * two_g + g * gamma) / den,
        coeff_a1s: C64::new(0.0, -omega) / den,
        coeff_a2c: C64::new(0.0, -omega) * (k + g) / den,
        coeff_a2s: C64::from(gamma) / den,
    })
}

/// Shot-noise-limited sensitivities of Table form: speed and position
/// readout for a bare mirror, the HRC, and a standard cavity detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopologyComparison {
    pub free_speed: f64,
    pub free_position: f64,
    pub hrc_speed: f64,
    pub hrc_position: f64,
    pub standard_speed: f64,
    pub standard_position: f64,
}

/// Evaluate the six closed-form shot-noise-limited sensitivities.
pub fn table1_comparison(
    i_in: f64,
    omega_p: f64,
    t_front: f64,
    tau: f64,
    omega: f64,
) -> TopologyComparison {
    let base = HBAR * C * C / (4.0 * i_in * omega_p);
    let t4 = t_front.powi(4);
    let ot2 = omega * omega * tau * tau;
    TopologyComparison {
        free_speed: base / ot2,
        free_position: base,
        hrc_speed: base * t4 / ot2,
        hrc_position: base,
        standard_speed: base * (t4 / 4.0) * (t4 / (16.0 * ot2)),
        standard_position: base * t4 / 4.0,
    }
}

/// Options for [`total_budget`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetOptions {
    /// Homodyne angle, rad. The budget is exact at zeta = pi/2; away from
    /// it the shot noise scales as 1/sin^2 and the free-space
    /// cross-correlation S_xF = -hbar cot(zeta) is applied.
    pub zeta: f64,
    /// Remove the position part of the back-action from the speed-port
    /// total (two-port post-processing with g = -2K).
    pub optimal_readout: bool,
    /// Use a measured linewidth instead of the derived c T^2 / (2 L).
    pub gamma_override: Option<f64>,
}

impl Default for BudgetOptions {
    fn default() -> Self {
        BudgetOptions {
            zeta: core::f64::consts::FRAC_PI_2,
            optimal_readout: false,
            gamma_override: None,
        }
    }
}

/// Quantum noise budget of both HRC ports over a frequency grid.
pub fn total_budget(
    cfg: &CavityConfig,
    laser: &LaserConfig,
    mode: &MechanicalMode,
    opts: &BudgetOptions,
    omega_grid: &[f64],
) -> Result<Vec<NoiseBudget>> {
    cfg.validate()?;
    if omega_grid.iter().any(|&w| !(w > 0.0)) {
        return Err(HrcError::InvalidArgument(
            "budget grid frequencies must be positive",
        ));
    }
    let sin_z = opts.zeta.sin();
    if sin_z.abs() < 1e-12 {
        return Err(HrcError::InvalidArgument(
            "homodyne angle too close to an amplitude-quadrature readout",
        ));
    }
    let cot_z = opts.zeta.cos() / sin_z;
    let gamma = opts.gamma_override.unwrap_or_else(|| cfg.linewidth());
    let i_in = laser.input_power;
    let omega_p = laser.omega_p();
    let k_os = optical_spring(omega_p, i_in, cfg.t_tm, cfg.length(), gamma);

    let mut out = Vec::with_capacity(omega_grid.len());
    for &omega in omega_grid {
        let (sn1, sn2) = shot_noise_displacement(gamma, i_in, omega_p, omega);
        let (rp_x, rp_v) = qrpn_spectral_density(gamma, i_in, omega_p, omega, cfg.r_tm, cfg.t_tm);
        let chi = mechanical_susceptibility(mode, omega, k_os);
        let chi2 = chi.norm_sqr();
        let cross = 2.0 * chi.re * (-HBAR * cot_z);
        let scale = 1.0 / (sin_z * sin_z);
        let force_2 = if opts.optimal_readout { rp_v } else { rp_x + rp_v };
        out.push(NoiseBudget {
            omega,
            s_shot_1: sn1,
            s_shot_2: sn2,
            s_rp_x: rp_x,
            s_rp_v: rp_v,
            s_total_1: sn1 * scale + cross + chi2 * (rp_x + rp_v),
            s_total_2: sn2 * scale + cross + chi2 * force_2,
            s_sql: sql(mode.mass, omega),
            k_os,
        });
    }
    Ok(out)
}
