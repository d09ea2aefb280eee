//! Sideband-frequency quantum input-output relations of the HRC: full
//! beta coefficients, their single-mode approximation, and the
//! two-photon-quadrature transfer matrices.

use crate::classical::{resonance_factor_from_phasor, Branch};
use crate::config::{CavityConfig, LaserConfig};
use crate::error::HrcError;
use crate::mat2::{pauli, Mat2, Vec2, C64};
use crate::Result;

/// The six input-output coefficients at one sideband frequency:
/// b1 = b11 a1 + b12 a2 + b13 x,  b2 = b21 a1 + b22 a2 + b23 x.
///
/// `b13`/`b23` carry the full 2 i k_p A1 signal prefactor (units 1/m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferSet {
    pub omega: f64,
    pub b11: C64,
    pub b12: C64,
    pub b21: C64,
    pub b22: C64,
    pub b13: C64,
    pub b23: C64,
}

/// Quadrature-space transfer matrices of the single-mode model:
/// b1 = R1 a1 + R2 a2 + x M1x A1 + Omega x M1v A1,
/// b2 = R2 a1 + R1 a2 + Omega x M2v A1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhotonTransfer {
    pub r1: Mat2,
    pub r2: Mat2,
    pub m1x: Mat2,
    pub m1v: Mat2,
    pub m2v: Mat2,
}

/// Cosine/sine two-photon quadrature pair of one field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureState {
    pub c: C64,
    pub s: C64,
}

impl QuadratureState {
    pub fn new(c: C64, s: C64) -> Self {
        QuadratureState { c, s }
    }

    pub fn zero() -> Self {
        QuadratureState::new(C64::ZERO, C64::ZERO)
    }

    pub fn as_vec(&self) -> Vec2 {
        Vec2::new(self.c, self.s)
    }

    pub fn from_vec(v: Vec2) -> Self {
        QuadratureState::new(v.c0, v.c1)
    }
}

/// Exact beta coefficients of the full model, with the carrier placed on
/// one split resonance (round-trip phasor fixed by `branch`).
pub fn transfer_full(
    cfg: &CavityConfig,
    laser: &LaserConfig,
    omega: f64,
    branch: Branch,
) -> Result<TransferSet> {
    cfg.validate()?;
    let r = C64::from(cfg.r_front);
    let r2 = r * r;
    let t2 = C64::from(cfg.t_front * cfg.t_front);
    let rm = C64::from(cfg.r_tm);
    let tm = C64::from(cfg.t_tm);
    let tau = cfg.round_trip_time();
    let k_p = laser.k_p();
    let a1 = C64::from(laser.quad_amplitude());

    // e^{ik_pL} on resonance, and sideband-shifted round-trip phasors
    let e0 = branch.round_trip_phasor(cfg);
    let eo = e0 * (C64::I * (omega * tau)).exp(); // e^{i(k_p + Omega/c)L}
    let eh = e0 * (C64::I * (omega * tau / 2.0)).exp(); // e^{i(k_p + Omega/2c)L}

    let d0 = resonance_factor_from_phasor(cfg, e0);
    let dw = resonance_factor_from_phasor(cfg, eo);
    let d_abs = dw.norm().min(d0.norm());
    if d_abs < 1e-14 {
        return Err(HrcError::SingularResonance { d_abs });
    }

    let b11 = -(rm * t2 * eo) / dw;
    let b12 = -((-r) + C64::I * tm * (C64::ONE + r2) * eo + r * eo * eo) / dw;

    let eot = (C64::I * (omega * tau)).exp(); // e^{i Omega L / c}
    let b13 = (C64::I * (2.0 * k_p) * rm * t2 * a1 * eh) / (d0 * dw)
        * (C64::ONE - r * e0 * (C64::I * tm + C64::I * tm * eot + r * eo));
    let b23 = (C64::I * (2.0 * k_p) * a1 * rm * rm * t2 * r * e0 * eh * (eot - C64::ONE))
        / (d0 * dw);

    Ok(TransferSet {
        omega,
        b11,
        b12,
        b21: b12,
        b22: b11,
        b13,
        b23,
    })
}

/// Single-mode beta coefficients (printed closed forms).
pub fn transfer_single_mode(gamma: f64, k_p: f64, a1: f64, omega: f64) -> TransferSet {
    let den = C64::new(gamma, -omega);
    let sig = C64::I * (2.0 * k_p * a1);
    let b11 = C64::from(gamma) / den;
    let b12 = C64::new(0.0, -omega) / den;
    let b13 = sig * (C64::ONE + C64::I * omega / (2.0 * den));
    let b23 = C64::new(0.0, omega) * sig / (2.0 * den);
    TransferSet {
        omega,
        b11,
        b12,
        b21: b12,
        b22: b11,
        b13,
        b23,
    }
}

/// Two-photon quadrature transfer matrices of the single-mode model.
pub fn two_photon_transfer(gamma: f64, k_p: f64, omega: f64) -> TwoPhotonTransfer {
    let den = C64::new(gamma, -omega);
    let s2 = pauli(2).expect("pauli(2)");
    TwoPhotonTransfer {
        r1: Mat2::scalar(C64::from(gamma) / den),
        r2: Mat2::scalar(C64::new(0.0, -omega) / den),
        m1x: s2 * (-C64::I * k_p * gamma / den),
        m1v: s2 * (-C64::I * k_p / (2.0 * den)),
        m2v: s2 * (C64::from(k_p) / den),
    }
}

/// Apply the quadrature-space input-output map for displacement `x` and
/// carrier quadrature vector `a1_quad` = sqrt(2 I_in / hbar omega_p) (1,0).
pub fn output_quadratures(
    tpt: &TwoPhotonTransfer,
    a1: QuadratureState,
    a2: QuadratureState,
    x: f64,
    omega: f64,
    a1_quad: Vec2,
) -> (QuadratureState, QuadratureState) {
    let xc = C64::from(x);
    let oxc = C64::from(omega * x);
    let b1 = tpt.r1 * a1.as_vec()
        + tpt.r2 * a2.as_vec()
        + (tpt.m1x * a1_quad) * xc
        + (tpt.m1v * a1_quad) * oxc;
    let b2 = tpt.r2 * a1.as_vec() + tpt.r1 * a2.as_vec() + (tpt.m2v * a1_quad) * oxc;
    (QuadratureState::from_vec(b1), QuadratureState::from_vec(b2))
}
