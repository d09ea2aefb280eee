//! Steady-state field solution, resonance structure and normal-mode
//! splitting of the hybrid readout cavity.

use alloc::vec::Vec;

use crate::config::CavityConfig;
use crate::constants::C;
use crate::error::HrcError;
use crate::mat2::{invert2, mirror_matrix, pauli, Mat2, Vec2, C64};
use crate::Result;
#[allow(unused_imports)] // f64 math methods come from this trait in no_std builds
use num_traits::Float;

/// Which member of the split resonance doublet carries the laser.
///
/// With the canonical round-trip phase in [0, 2*pi), the doublet sits at
/// k L = pi + arcsin(x) (lower) and k L = 2*pi - arcsin(x) (upper), with
/// x = t (1 + R^2) / (2 R). On the upper branch the round-trip phasor is
/// e^{ikL} = r - i t, the substitution used for the single-mode forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Lower,
    Upper,
}

impl Branch {
    /// Exact on-resonance round-trip phasor e^{ikL}. Defined through the
    /// test-mass mixing angle so that it is unimodular also for a lossy
    /// test mass: upper branch e^{-i theta}, lower branch -e^{+i theta}.
    pub fn round_trip_phasor(&self, cfg: &CavityConfig) -> C64 {
        let theta = cfg.theta();
        match self {
            Branch::Upper => (-C64::I * theta).exp(),
            Branch::Lower => -((C64::I * theta).exp()),
        }
    }
}

/// Steady-state (Omega = 0) fields for a given carrier wave number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalSolution {
    /// Output fields (B1: position port, B2: speed port).
    pub b: Vec2,
    /// Intra-cavity field arriving back at the front mirror.
    pub c: Vec2,
    /// Field just inside the front mirror.
    pub d: Vec2,
    /// Field arriving at the test mass.
    pub e: Vec2,
    /// Field leaving the test mass.
    pub f: Vec2,
    /// Cavity resonance factor D(0) at this wave number.
    pub resonance_factor: C64,
}

/// The two resonance frequencies of the split doublet, reduced to the
/// canonical interval [0, 2*pi c / L) (one phase period).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonancePair {
    /// Lower doublet member, rad/s.
    pub lower: f64,
    /// Upper doublet member, rad/s.
    pub upper: f64,
}

impl ResonancePair {
    /// Doublet separation, rad/s.
    pub fn splitting(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Cavity resonance factor
/// D(Omega) = R^2 e^{2i(k + Omega/c)L} + 2 i R t e^{i(k + Omega/c)L} - 1.
pub fn resonance_factor(cfg: &CavityConfig, k: f64, omega: f64) -> C64 {
    let phase = (C64::I * ((k + omega / C) * cfg.length())).exp();
    resonance_factor_from_phasor(cfg, phase)
}

/// Same resonance factor, parameterized by the round-trip phasor
/// e^{i(k + Omega/c)L}. Using the exact on-resonance phasor avoids the
/// precision loss of forming k*L (~1e6 rad) in double precision.
pub fn resonance_factor_from_phasor(cfg: &CavityConfig, round_trip: C64) -> C64 {
    let r2 = C64::from(cfg.r_front * cfg.r_front);
    let two_irt = C64::I * (2.0 * cfg.r_front * cfg.t_tm);
    r2 * round_trip * round_trip + two_irt * round_trip - C64::ONE
}

/// Solve the steady-state linear system for input amplitudes `a_in`.
///
/// The propagation phases are taken from the unimodular per-arm phasors
/// `p1 = e^{ikL1}`, `p2 = e^{ikL2}`.
pub fn classical_fields_from_phasors(
    cfg: &CavityConfig,
    p1: C64,
    p2: C64,
    a_in: Vec2,
) -> Result<ClassicalSolution> {
    cfg.validate()?;
    let p = Mat2::diag(p1, p2);
    let m = mirror_matrix(cfg.r_tm, cfg.t_tm)?;
    let s1 = pauli(1)?;
    let rr = Mat2::scalar(C64::from(cfg.r_front));
    let tt = Mat2::scalar(C64::from(cfg.t_front));

    let pmp = p * m * p;
    let kk = invert2(&(Mat2::identity() - pmp * rr * s1)).map_err(|e| match e {
        HrcError::SingularMatrix { det_abs } => HrcError::SingularResonance { d_abs: det_abs },
        other => other,
    })?;

    let c = kk * (pmp * (tt * a_in));
    let d = rr * (s1 * c) + tt * a_in;
    let e = p * d;
    let f = m * e;
    let b = (tt * c) - rr * (s1 * a_in);
    let resonance = resonance_factor_from_phasor(cfg, p1 * p2);
    Ok(ClassicalSolution {
        b,
        c,
        d,
        e,
        f,
        resonance_factor: resonance,
    })
}

/// Steady-state fields at carrier wave number `k`, rad/m.
pub fn classical_fields(cfg: &CavityConfig, k: f64, a_in: Vec2) -> Result<ClassicalSolution> {
    let p1 = (C64::I * (k * cfg.l1)).exp();
    let p2 = (C64::I * (k * cfg.l2)).exp();
    classical_fields_from_phasors(cfg, p1, p2, a_in)
}

/// Exact arcsin argument of the resonance condition.
fn resonance_arg(cfg: &CavityConfig) -> f64 {
    let r = cfg.r_front;
    cfg.t_tm * (1.0 + r * r) / (2.0 * r)
}

/// The two split resonance frequencies from the exact condition
/// omega_c = (c/L) arcsin(-t (1 + R^2) / (2R)) and its pi-complement,
/// reduced to the canonical phase interval [0, 2*pi).
pub fn resonance_frequencies(cfg: &CavityConfig) -> Result<ResonancePair> {
    cfg.validate()?;
    let x = resonance_arg(cfg);
    if x > 1.0 + 1e-12 {
        return Err(HrcError::NoSplitResonance { arg: x });
    }
    let asin_x = x.min(1.0).asin();
    let pi = core::f64::consts::PI;
    let scale = C / cfg.length();
    Ok(ResonancePair {
        lower: scale * (pi + asin_x),
        upper: scale * (2.0 * pi - asin_x),
    })
}

/// Approximate normal-mode splitting Delta omega_c = (2c/L) arcsin(r).
pub fn mode_splitting(cfg: &CavityConfig) -> f64 {
    2.0 * (C / cfg.length()) * cfg.r_tm.asin()
}

/// Intra-cavity intensity |C1|^2 + |C2|^2 versus round-trip phase k*L,
/// normalized to its maximum over the grid. Input is A = (1, 0).
pub fn intracavity_intensity_sweep(
    cfg: &CavityConfig,
    phase_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if phase_grid.is_empty() {
        return Err(HrcError::InvalidArgument("phase grid must be non-empty"));
    }
    let a_in = Vec2::new(C64::ONE, C64::ZERO);
    let l = cfg.length();
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(phase_grid.len());
    let mut peak = 0.0_f64;
    for &phi in phase_grid {
        let k = phi / l;
        let sol = classical_fields(cfg, k, a_in)?;
        let intensity = sol.c.norm_sqr();
        peak = peak.max(intensity);
        out.push((phi, intensity));
    }
    if peak > 0.0 {
        for p in &mut out {
            p.1 /= peak;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_cfg() -> CavityConfig {
        CavityConfig::from_power(0.391, 0.01, 0.046).unwrap()
    }

    #[test]
    fn resonance_factor_limits() {
        // R = 0: D = -1 for all k, Omega
        let cfg = CavityConfig::new(0.1, 0.1, 0.0, 1.0, 0.3, 0.9).unwrap();
        for k in [0.0, 1.0, 13.7] {
            let d = resonance_factor(&cfg, k, 1e5);
            assert!((d + C64::ONE).norm() < 1e-12);
        }

        // single-mode reduction on the upper branch:
        // D(Omega) ~ -2 r tau e^{-i theta} (gamma - i Omega)
        let cfg = paper_cfg();
        let gamma = cfg.linewidth();
        let tau = cfg.round_trip_time();
        let theta = cfg.theta();
        let base = Branch::Upper.round_trip_phasor(&cfg);
        let fsr = cfg.fsr();
        let mut worst = 0.0_f64;
        for i in 1..=200 {
            let omega = 0.01 * fsr * (i as f64) / 200.0;
            let rt = base * (C64::I * (omega * tau)).exp();
            let full = resonance_factor_from_phasor(&cfg, rt);
            let reduced = C64::from(-2.0 * cfg.r_tm * tau)
                * (-C64::I * theta).exp()
                * C64::new(gamma, -omega);
            worst = worst.max((full - reduced).norm() / reduced.norm());
        }
        // the reduction drops O(T^2) and O(Omega tau) terms; at
        // Omega = 0.01 FSR = 2 gamma both are at the percent level
        assert!(worst < 0.05, "worst deviation {worst}");

        // the leading error shrinks with the frequency range
        let mut worst_low = 0.0_f64;
        for i in 1..=50 {
            let omega = 0.001 * fsr * (i as f64) / 50.0;
            let rt = base * (C64::I * (omega * tau)).exp();
            let full = resonance_factor_from_phasor(&cfg, rt);
            let reduced = C64::from(-2.0 * cfg.r_tm * tau)
                * (-C64::I * theta).exp()
                * C64::new(gamma, -omega);
            worst_low = worst_low.max((full - reduced).norm() / reduced.norm());
        }
        assert!(worst_low < worst);
        // the floor is the frequency-independent O(T^2) truncation error
        assert!(worst_low < 0.02, "low-frequency deviation {worst_low}");
    }

    #[test]
    fn empty_ring_has_fsr_spaced_peaks() {
        // r = 0, high-R front mirror: |D| minima separated by 2*pi in phase
        let cfg = CavityConfig::new(0.1, 0.1, 0.999, (1.0f64 - 0.999 * 0.999).sqrt(), 0.0, 1.0)
            .unwrap();
        let l = cfg.length();
        let n = 8000;
        let mut minima = alloc::vec::Vec::new();
        let mut prev2 = f64::MAX;
        let mut prev = f64::MAX;
        for i in 0..n {
            let phi = 4.0 * core::f64::consts::PI * (i as f64) / (n as f64);
            let d = resonance_factor(&cfg, phi / l, 0.0).norm();
            if prev2 < f64::MAX && prev < prev2 && prev < d {
                minima.push(4.0 * core::f64::consts::PI * ((i - 1) as f64) / (n as f64));
            }
            prev2 = prev;
            prev = d;
        }
        assert_eq!(minima.len(), 2, "expected 2 minima over 2 FSR: {minima:?}");
        let sep = minima[1] - minima[0];
        assert!((sep - 2.0 * core::f64::consts::PI).abs() < 0.01, "{sep}");
    }

    #[test]
    fn dark_port_and_energy_conservation() {
        let cfg = paper_cfg();
        let pair = resonance_frequencies(&cfg).unwrap();
        let k = pair.upper / C;
        let a_in = Vec2::new(C64::ONE, C64::ZERO);
        let sol = classical_fields(&cfg, k, a_in).unwrap();

        // lossless energy conservation
        assert!((sol.b.norm_sqr() - 1.0).abs() < 1e-10);

        // the second port is exactly dark on resonance; only floating
        // point residue survives
        let dark = sol.b.c1.norm_sqr();
        assert!(dark < 1e-16, "dark port residual {dark}");

        // detuning from resonance leaks carrier into the second port
        let detuned = classical_fields(&cfg, k + 0.5 * cfg.linewidth() / C, a_in).unwrap();
        assert!(detuned.b.c1.norm_sqr() > 1e3 * dark.max(1e-30));
        assert!(detuned.b.c1.norm_sqr() > 1e-4);

        // zero input -> zero fields
        let sol0 = classical_fields(&cfg, k, Vec2::zero()).unwrap();
        assert_eq!(sol0.b.norm_sqr(), 0.0);
        assert_eq!(sol0.c.norm_sqr(), 0.0);
    }

    #[test]
    fn energy_conservation_off_resonance() {
        let cfg = paper_cfg();
        let a_in = Vec2::new(C64::new(0.3, 0.4), C64::new(-0.2, 0.9));
        for i in 0..50 {
            let phi = 2.0 * core::f64::consts::PI * (i as f64) / 50.0;
            let sol = classical_fields(&cfg, phi / cfg.length(), a_in).unwrap();
            assert!((sol.b.norm_sqr() - a_in.norm_sqr()).abs() < 1e-10);
        }
    }

    #[test]
    fn resonance_frequencies_limits() {
        // r = 0 with R = 1: degenerate doublet (one FSR periodicity)
        let cfg = CavityConfig::new(0.1, 0.1, 1.0, 0.0, 0.0, 1.0).unwrap();
        let pair = resonance_frequencies(&cfg).unwrap();
        assert!((pair.splitting()).abs() < 1e-9 * cfg.fsr());

        // r = 0 with R < 1: no split resonance exists
        let cfg = CavityConfig::new(0.1, 0.1, 0.995, (1.0f64 - 0.995 * 0.995).sqrt(), 0.0, 1.0)
            .unwrap();
        assert!(matches!(
            resonance_frequencies(&cfg),
            Err(HrcError::NoSplitResonance { .. })
        ));

        // r = 1: equidistant peaks (Fabry-Perot), half-FSR separation
        let cfg = CavityConfig::new(0.1, 0.1, 0.995, (1.0f64 - 0.995 * 0.995).sqrt(), 1.0, 0.0)
            .unwrap();
        let pair = resonance_frequencies(&cfg).unwrap();
        let expect = core::f64::consts::PI * C / cfg.length();
        assert!((pair.splitting() - expect).abs() < 1e-6 * expect);
    }

    #[test]
    fn exact_and_approximate_splitting_agree() {
        for r2 in [0.046, 0.25, 0.81] {
            let cfg = CavityConfig::from_power(0.391, 1.0 - 0.995 * 0.995, r2).unwrap();
            assert!(cfg.r_front >= 0.99);
            let exact = resonance_frequencies(&cfg).unwrap().splitting();
            let approx = mode_splitting(&cfg);
            assert!(
                (exact - approx).abs() / approx < 0.005,
                "r2={r2}: {exact} vs {approx}"
            );
        }
    }

    #[test]
    fn splitting_values_match_table() {
        let cfg = paper_cfg();
        let mhz = mode_splitting(&cfg) / (2.0 * core::f64::consts::PI) / 1e6;
        assert!((mhz - 52.8).abs() < 0.1, "{mhz}");
        assert!((mhz - 53.5).abs() / 53.5 < 0.02);

        let cfg_fit = CavityConfig::from_power(0.391, 0.01, 0.039).unwrap();
        let mhz_fit = mode_splitting(&cfg_fit) / (2.0 * core::f64::consts::PI) / 1e6;
        assert!((mhz_fit - 49.28).abs() / 49.28 < 0.02, "{mhz_fit}");

        // r = 0 -> no splitting; monotone in r
        let mut prev = -1.0;
        for i in 0..=10 {
            let r = i as f64 / 10.0;
            let cfg = CavityConfig::new(0.1, 0.1, 0.995, 0.0997, r, (1.0 - r * r).sqrt()).unwrap();
            let s = mode_splitting(&cfg);
            assert!(s > prev || (i == 0 && s == 0.0));
            prev = s;
        }
    }

    #[test]
    fn splitting_invariant_under_test_mass_position() {
        let base = paper_cfg();
        let shifted = CavityConfig::new(
            base.l1 + 0.07,
            base.l2 - 0.07,
            base.r_front,
            base.t_front,
            base.r_tm,
            base.t_tm,
        )
        .unwrap();
        let a = resonance_frequencies(&base).unwrap();
        let b = resonance_frequencies(&shifted).unwrap();
        assert!((a.lower - b.lower).abs() < 1e-9);
        assert!((a.upper - b.upper).abs() < 1e-9);
    }

    #[test]
    fn sweep_peak_structure() {
        let n = 4096;
        let grid: alloc::vec::Vec<f64> = (0..n)
            .map(|i| 2.0 * core::f64::consts::PI * (i as f64) / (n as f64))
            .collect();

        let count_peaks = |vals: &[(f64, f64)]| {
            let mut peaks = alloc::vec::Vec::new();
            for i in 0..vals.len() {
                let prev = vals[(i + vals.len() - 1) % vals.len()].1;
                let next = vals[(i + 1) % vals.len()].1;
                if vals[i].1 > prev && vals[i].1 >= next && vals[i].1 > 0.5 {
                    peaks.push(vals[i].0);
                }
            }
            peaks
        };

        // r = 0: one peak per 2*pi
        let cfg = CavityConfig::new(0.1, 0.1, 0.97, (1.0f64 - 0.97 * 0.97).sqrt(), 0.0, 1.0)
            .unwrap();
        let sweep = intracavity_intensity_sweep(&cfg, &grid).unwrap();
        assert_eq!(count_peaks(&sweep).len(), 1);

        // r = 0.5: two peaks per 2*pi at the closed-form positions
        let cfg = CavityConfig::new(
            0.1,
            0.1,
            0.97,
            (1.0f64 - 0.97 * 0.97).sqrt(),
            0.5,
            (0.75f64).sqrt(),
        )
        .unwrap();
        let sweep = intracavity_intensity_sweep(&cfg, &grid).unwrap();
        let peaks = count_peaks(&sweep);
        assert_eq!(peaks.len(), 2, "{peaks:?}");
        let pair = resonance_frequencies(&cfg).unwrap();
        let tol = 2.0 * core::f64::consts::PI / (n as f64) * 1.5;
        let expect_lo = pair.lower * cfg.length() / C;
        let expect_hi = pair.upper * cfg.length() / C;
        assert!((peaks[0] - expect_lo).abs() < tol, "{} vs {expect_lo}", peaks[0]);
        assert!((peaks[1] - expect_hi).abs() < tol, "{} vs {expect_hi}", peaks[1]);

        assert!(intracavity_intensity_sweep(&cfg, &[]).is_err());
    }
}
