//! Parameter estimation: bounded Nelder-Mead minimization with a damped
//! Gauss-Newton polish for least-squares problems, plus the three model
//! fits used by the toolkit (split transmission resonances, the optical
//! transfer function magnitudes, and ringdown decays).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::HrcError;
use crate::Result;
#[allow(unused_imports)] // f64 math methods come from this trait in no_std builds
use num_traits::Float;

/// A fitted parameter with its one-sigma uncertainty from the linearized
/// covariance at the optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct FitParam {
    pub name: &'static str,
    pub value: f64,
    pub sigma: f64,
    /// True when the optimizer stopped against a bound for this
    /// parameter; the uncertainty is then unreliable.
    pub at_bound: bool,
}

/// Result of a model fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub params: Vec<FitParam>,
    /// Root of the summed squared residuals at the optimum.
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl FitResult {
    pub fn param(&self, name: &str) -> Option<&FitParam> {
        self.params.iter().find(|p| p.name == name)
    }
}

/// One measured sweep: abscissa values with one or more observation
/// channels per point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepData {
    pub x: Vec<f64>,
    /// Channel-major observations: `y[c]` has the same length as `x`.
    pub y: Vec<Vec<f64>>,
}

impl SweepData {
    pub fn single(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let data = SweepData { x, y: vec![y] };
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        if self.x.len() < 2 || self.y.is_empty() {
            return Err(HrcError::InvalidArgument(
                "sweep needs at least two points and one channel",
            ));
        }
        for ch in &self.y {
            if ch.len() != self.x.len() {
                return Err(HrcError::InvalidArgument(
                    "sweep channels must match the abscissa length",
                ));
            }
        }
        if self
            .x
            .iter()
            .chain(self.y.iter().flatten())
            .any(|v| !v.is_finite())
        {
            return Err(HrcError::InvalidArgument("sweep contains non-finite values"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Total number of observations across channels.
    pub fn observations(&self) -> usize {
        self.x.len() * self.y.len()
    }
}

/// Options for [`minimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    pub max_iterations: usize,
    /// Relative simplex-size tolerance.
    pub x_tol: f64,
    /// Relative objective-spread tolerance.
    pub f_tol: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            max_iterations: 10_000,
            x_tol: 1e-10,
            f_tol: 1e-12,
        }
    }
}

/// Output of [`minimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn clamp_to_bounds(x: &mut [f64], lower: &[f64], upper: &[f64]) {
    for i in 0..x.len() {
        x[i] = x[i].max(lower[i]).min(upper[i]);
    }
}

/// Bounded Nelder-Mead minimization. Trial points are clamped to the box
/// `[lower, upper]`; the initial simplex is spanned from `x0` with steps
/// scaled to the box size.
pub fn minimize<F>(
    mut f: F,
    x0: &[f64],
    lower: &[f64],
    upper: &[f64],
    opts: &MinimizeOptions,
) -> Result<MinimizeResult>
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    if n == 0 || lower.len() != n || upper.len() != n {
        return Err(HrcError::InvalidArgument(
            "minimize needs consistent non-empty parameter and bound vectors",
        ));
    }
    for i in 0..n {
        if !(lower[i] <= upper[i]) || !x0[i].is_finite() {
            return Err(HrcError::InvalidArgument(
                "minimize bounds must be ordered and the start finite",
            ));
        }
    }

    // initial simplex
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut start = x0.to_vec();
    clamp_to_bounds(&mut start, lower, upper);
    simplex.push(start.clone());
    for i in 0..n {
        let mut v = start.clone();
        let span = upper[i] - lower[i];
        let step = if span.is_finite() && span > 0.0 {
            (0.05 * span).min(0.1 * v[i].abs().max(span * 0.01))
        } else {
            0.1 * v[i].abs().max(1e-4)
        };
        v[i] += if v[i] + step <= upper[i] { step } else { -step };
        clamp_to_bounds(&mut v, lower, upper);
        if v == simplex[0] {
            v[i] = (v[i] - step.max(1e-12)).max(lower[i]);
        }
        simplex.push(v);
    }
    let mut fvals: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        iterations += 1;
        // order by objective
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| fvals[a].partial_cmp(&fvals[b]).unwrap_or(core::cmp::Ordering::Equal));
        let reorder = |s: &mut Vec<Vec<f64>>, fv: &mut Vec<f64>, idx: &[usize]| {
            let snew: Vec<Vec<f64>> = idx.iter().map(|&i| s[i].clone()).collect();
            let fnew: Vec<f64> = idx.iter().map(|&i| fv[i]).collect();
            *s = snew;
            *fv = fnew;
        };
        reorder(&mut simplex, &mut fvals, &idx);

        // convergence: simplex extent and objective spread
        let scale = simplex[0]
            .iter()
            .map(|v| v.abs())
            .fold(1.0_f64, f64::max);
        let extent = simplex[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0_f64, f64::max)
            })
            .fold(0.0_f64, f64::max);
        let fspread = (fvals[n] - fvals[0]).abs();
        let fscale = fvals[0].abs().max(1e-300);
        if extent <= opts.x_tol * scale || fspread <= opts.f_tol * fscale {
            converged = true;
            break;
        }

        // centroid of all but worst
        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for i in 0..n {
                centroid[i] += v[i] / (n as f64);
            }
        }

        let point_at = |coef: f64, centroid: &[f64], worst: &[f64]| {
            let mut p: Vec<f64> = centroid
                .iter()
                .zip(worst)
                .map(|(c, w)| c + coef * (c - w))
                .collect();
            clamp_to_bounds(&mut p, lower, upper);
            p
        };

        let reflected = point_at(1.0, &centroid, &simplex[n]);
        let fr = f(&reflected);
        if fr < fvals[0] {
            // expand
            let expanded = point_at(2.0, &centroid, &simplex[n]);
            let fe = f(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                fvals[n] = fe;
            } else {
                simplex[n] = reflected;
                fvals[n] = fr;
            }
        } else if fr < fvals[n - 1] {
            simplex[n] = reflected;
            fvals[n] = fr;
        } else {
            // contract (outside if reflection helped at all, else inside)
            let coef = if fr < fvals[n] { 0.5 } else { -0.5 };
            let contracted = point_at(coef, &centroid, &simplex[n]);
            let fc = f(&contracted);
            if fc < fvals[n].min(fr) {
                simplex[n] = contracted;
                fvals[n] = fc;
            } else {
                // shrink toward the best vertex
                for k in 1..=n {
                    let best = simplex[0].clone();
                    for i in 0..n {
                        simplex[k][i] = best[i] + 0.5 * (simplex[k][i] - best[i]);
                    }
                    clamp_to_bounds(&mut simplex[k], lower, upper);
                    fvals[k] = f(&simplex[k]);
                }
            }
        }
    }

    let mut best = 0;
    for k in 1..=n {
        if fvals[k] < fvals[best] {
            best = k;
        }
    }
    Ok(MinimizeResult {
        x: simplex[best].clone(),
        f: fvals[best],
        iterations,
        converged,
    })
}

/// Solve the dense n x n system `a x = b` in place by Gaussian
/// elimination with partial pivoting. `a` is row-major.
pub fn solve_dense(a: &mut [f64], b: &mut [f64], n: usize) -> Result<()> {
    if a.len() != n * n || b.len() != n {
        return Err(HrcError::InvalidArgument("solve_dense dimension mismatch"));
    }
    for col in 0..n {
        // pivot
        let mut piv = col;
        for row in (col + 1)..n {
            if a[row * n + col].abs() > a[piv * n + col].abs() {
                piv = row;
            }
        }
        if a[piv * n + col].abs() < 1e-300 {
            return Err(HrcError::SingularMatrix {
                det_abs: a[piv * n + col].abs(),
            });
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        let d = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / d;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            b[row] -= factor * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut s = b[col];
        for k in (col + 1)..n {
            s -= a[col * n + k] * b[k];
        }
        b[col] = s / a[col * n + col];
    }
    Ok(())
}

fn sum_sq(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

/// Forward-difference Jacobian of the residual vector, column-major per
/// parameter, with steps respecting the bounds.
fn fd_jacobian<R>(
    residuals: &mut R,
    x: &[f64],
    lower: &[f64],
    upper: &[f64],
    r0: &[f64],
) -> Vec<Vec<f64>>
where
    R: FnMut(&[f64]) -> Vec<f64>,
{
    let n = x.len();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let h = 1e-6 * x[i].abs().max(1e-9);
        let mut xp = x.to_vec();
        let (step, sign) = if x[i] + h <= upper[i] {
            (h, 1.0)
        } else {
            (h, -1.0)
        };
        xp[i] = (x[i] + sign * step).max(lower[i]).min(upper[i]);
        let actual = xp[i] - x[i];
        let rp = residuals(&xp);
        let col: Vec<f64> = if actual == 0.0 {
            vec![0.0; r0.len()]
        } else {
            rp.iter().zip(r0).map(|(a, b)| (a - b) / actual).collect()
        };
        cols.push(col);
    }
    cols
}

/// Output of [`least_squares`].
#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresResult {
    pub x: Vec<f64>,
    /// One-sigma uncertainties from sigma^2 (J^T J)^{-1} with
    /// sigma^2 = SSR / (n_obs - n_par); zero when not estimable.
    pub sigma: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub at_bound: Vec<bool>,
}

/// Nonlinear least squares: a global bounded Nelder-Mead pass on the
/// summed squared residuals, then a damped Gauss-Newton polish, then a
/// linearized covariance estimate at the optimum.
pub fn least_squares<R>(
    mut residuals: R,
    x0: &[f64],
    lower: &[f64],
    upper: &[f64],
    opts: &MinimizeOptions,
) -> Result<LeastSquaresResult>
where
    R: FnMut(&[f64]) -> Vec<f64>,
{
    let nm = minimize(
        |x| sum_sq(&residuals(x)),
        x0,
        lower,
        upper,
        opts,
    )?;
    let n = x0.len();
    let mut x = nm.x;
    let mut r = residuals(&x);
    let mut ssr = sum_sq(&r);
    let mut iterations = nm.iterations;

    // damped Gauss-Newton polish
    for _ in 0..60 {
        iterations += 1;
        let jac = fd_jacobian(&mut residuals, &x, lower, upper, &r);
        // normal equations J^T J dx = -J^T r
        let mut ata = vec![0.0; n * n];
        let mut atb = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                ata[i * n + j] = jac[i].iter().zip(&jac[j]).map(|(a, b)| a * b).sum();
            }
            atb[i] = -jac[i].iter().zip(&r).map(|(a, b)| a * b).sum::<f64>();
        }
        let mut step = atb.clone();
        let mut lhs = ata.clone();
        if solve_dense(&mut lhs, &mut step, n).is_err() {
            break;
        }
        // backtracking line search
        let mut lambda = 1.0;
        let mut improved = false;
        for _ in 0..12 {
            let mut xt: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a + lambda * s).collect();
            clamp_to_bounds(&mut xt, lower, upper);
            let rt = residuals(&xt);
            let st = sum_sq(&rt);
            if st < ssr {
                let rel = (ssr - st) / ssr.max(1e-300);
                x = xt;
                r = rt;
                ssr = st;
                improved = true;
                if rel < 1e-14 {
                    improved = false;
                }
                break;
            }
            lambda *= 0.5;
        }
        if !improved {
            break;
        }
    }

    // covariance at the optimum
    let n_obs = r.len();
    let mut sigma = vec![0.0; n];
    if n_obs > n {
        let jac = fd_jacobian(&mut residuals, &x, lower, upper, &r);
        let mut ata = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                ata[i * n + j] = jac[i].iter().zip(&jac[j]).map(|(a, b)| a * b).sum();
            }
        }
        let s2 = ssr / ((n_obs - n) as f64);
        // invert J^T J column by column
        let mut cov_diag = vec![f64::NAN; n];
        let mut ok = true;
        for j in 0..n {
            let mut rhs = vec![0.0; n];
            rhs[j] = 1.0;
            let mut lhs = ata.clone();
            if solve_dense(&mut lhs, &mut rhs, n).is_err() {
                ok = false;
                break;
            }
            cov_diag[j] = rhs[j];
        }
        if ok {
            for j in 0..n {
                let v = s2 * cov_diag[j];
                sigma[j] = if v.is_finite() && v >= 0.0 { v.sqrt() } else { 0.0 };
            }
        }
    }

    let at_bound: Vec<bool> = (0..n)
        .map(|i| {
            let span = (upper[i] - lower[i]).abs().max(x[i].abs()).max(1e-300);
            (x[i] - lower[i]).abs() < 1e-9 * span || (upper[i] - x[i]).abs() < 1e-9 * span
        })
        .collect();

    Ok(LeastSquaresResult {
        x,
        sigma,
        residual_norm: ssr.sqrt(),
        iterations,
        converged: nm.converged,
        at_bound,
    })
}

/// Double-Lorentzian transmission model evaluated at `x` (Hz):
/// a1 g1^2 / ((x-f1)^2 + g1^2) + a2 g2^2 / ((x-f2)^2 + g2^2).
pub fn double_lorentzian(p: &[f64; 6], x: f64) -> f64 {
    let [f1, g1, a1, f2, g2, a2] = *p;
    a1 * g1 * g1 / ((x - f1).powi(2) + g1 * g1) + a2 * g2 * g2 / ((x - f2).powi(2) + g2 * g2)
}

/// Pick the two most prominent separated local maxima of a sweep.
fn two_peaks(data: &SweepData) -> Result<(usize, usize)> {
    let y = &data.y[0];
    let n = y.len();
    let mut peaks: Vec<usize> = (1..n - 1)
        .filter(|&i| y[i] >= y[i - 1] && y[i] >= y[i + 1])
        .collect();
    peaks.sort_by(|&a, &b| y[b].partial_cmp(&y[a]).unwrap());
    let first = *peaks.first().ok_or(HrcError::FitFailure(
        "no local maximum found in the transmission sweep",
    ))?;
    // second peak must be separated from the first by more than the local
    // width of the first peak (avoid shoulder points of the same line)
    let x = &data.x;
    let half = y[first] / 2.0;
    let mut width = (x[n - 1] - x[0]).abs() / (n as f64);
    for i in (0..first).rev() {
        if y[i] < half {
            width = (x[first] - x[i]).abs();
            break;
        }
    }
    let second = peaks
        .iter()
        .skip(1)
        .find(|&&i| (x[i] - x[first]).abs() > 2.0 * width)
        .copied();
    match second {
        Some(s) => Ok((first.min(s), first.max(s))),
        None => Err(HrcError::FitFailure(
            "transmission sweep does not show two separated resonances",
        )),
    }
}

/// Fit two Lorentzian resonances to a transmission sweep (x in Hz).
/// Returns parameters `f1, gamma1, amp1, f2, gamma2, amp2, splitting`
/// with f1 < f2 and splitting = f2 - f1.
pub fn fit_double_lorentzian(data: &SweepData) -> Result<FitResult> {
    data.validate()?;
    if data.len() < 8 {
        return Err(HrcError::InvalidArgument(
            "transmission fit needs at least eight samples",
        ));
    }
    let (p1, p2) = two_peaks(data)?;
    let x = &data.x;
    let y = &data.y[0];
    let span = (x[data.len() - 1] - x[0]).abs();
    let guess_width = span / 20.0;
    let x0 = [
        x[p1],
        guess_width,
        y[p1],
        x[p2],
        guess_width,
        y[p2],
    ];
    let ymax = y.iter().cloned().fold(0.0_f64, f64::max);
    let lower = [
        x[0] - span,
        span * 1e-6,
        0.0,
        x[0] - span,
        span * 1e-6,
        0.0,
    ];
    let upper = [
        x[data.len() - 1] + span,
        span,
        10.0 * ymax,
        x[data.len() - 1] + span,
        span,
        10.0 * ymax,
    ];
    let xs = x.clone();
    let ys = y.clone();
    let res = least_squares(
        move |p: &[f64]| {
            let pp = [p[0], p[1], p[2], p[3], p[4], p[5]];
            xs.iter()
                .zip(&ys)
                .map(|(&xi, &yi)| double_lorentzian(&pp, xi) - yi)
                .collect()
        },
        &x0,
        &lower,
        &upper,
        &MinimizeOptions::default(),
    )?;

    // order the two lines by frequency
    let (lo, hi) = if res.x[0] <= res.x[3] { (0, 3) } else { (3, 0) };
    let pick = |base: usize, off: usize| (res.x[base + off], res.sigma[base + off], res.at_bound[base + off]);
    let splitting = res.x[hi] - res.x[lo];
    let split_sigma = (res.sigma[lo].powi(2) + res.sigma[hi].powi(2)).sqrt();
    if splitting < 2.0 * (res.x[lo + 1] + res.x[hi + 1]).abs() / 2.0 * 0.1 {
        return Err(HrcError::FitFailure(
            "fitted resonances collapse onto a single line",
        ));
    }
    let names = ["f1", "gamma1", "amp1", "f2", "gamma2", "amp2"];
    let mut params = Vec::new();
    for (slot, base) in [(0usize, lo), (1, hi)] {
        for off in 0..3 {
            let (value, sigma, at_bound) = pick(base, off);
            params.push(FitParam {
                name: names[slot * 3 + off],
                value,
                sigma,
                at_bound,
            });
        }
    }
    params.push(FitParam {
        name: "splitting",
        value: splitting,
        sigma: split_sigma,
        at_bound: false,
    });
    Ok(FitResult {
        params,
        residual_norm: res.residual_norm,
        iterations: res.iterations,
        converged: res.converged,
    })
}

/// Single-mode optical transfer magnitudes for the two ports, normalized
/// so that the position port tends to `scale` far above the linewidth.
pub fn tf_model(gamma: f64, scale: f64, omega: f64) -> (f64, f64) {
    let den = (gamma * gamma + omega * omega).sqrt();
    let p1 = scale * (gamma * gamma + omega * omega / 4.0).sqrt() * 2.0 / den;
    let p2 = scale * omega / den;
    (p1, p2)
}

/// Joint fit of the cavity half-linewidth `gamma` (rad/s) and an overall
/// `scale` to measured transfer magnitudes. `data.x` is frequency in Hz;
/// channels are the position-port and speed-port magnitudes (one channel
/// fits that port alone).
pub fn fit_optical_tf(data: &SweepData, gamma_guess: f64) -> Result<FitResult> {
    data.validate()?;
    if data.y.len() > 2 {
        return Err(HrcError::InvalidArgument(
            "transfer fit takes one or two channels",
        ));
    }
    if !(gamma_guess > 0.0) {
        return Err(HrcError::InvalidArgument("gamma guess must be positive"));
    }
    let two_pi = 2.0 * core::f64::consts::PI;
    let omegas: Vec<f64> = data.x.iter().map(|f| two_pi * f).collect();
    if omegas.iter().any(|&w| w <= 0.0) {
        return Err(HrcError::InvalidArgument(
            "transfer fit frequencies must be positive",
        ));
    }
    let mean_mag = data.y.iter().flatten().map(|v| v.abs()).sum::<f64>()
        / (data.observations() as f64);
    let x0 = [gamma_guess, mean_mag.max(1e-30)];
    let lower = [gamma_guess * 1e-3, mean_mag * 1e-6];
    let upper = [gamma_guess * 1e3, mean_mag * 1e6];
    let channels = data.y.clone();
    let res = least_squares(
        move |p: &[f64]| {
            let mut r = Vec::with_capacity(omegas.len() * channels.len());
            for (ci, ch) in channels.iter().enumerate() {
                for (&w, &yi) in omegas.iter().zip(ch) {
                    let (m1, m2) = tf_model(p[0], p[1], w);
                    let model = if ci == 0 { m1 } else { m2 };
                    r.push(model - yi);
                }
            }
            r
        },
        &x0,
        &lower,
        &upper,
        &MinimizeOptions::default(),
    )?;
    Ok(FitResult {
        params: vec![
            FitParam {
                name: "gamma",
                value: res.x[0],
                sigma: res.sigma[0],
                at_bound: res.at_bound[0],
            },
            FitParam {
                name: "scale",
                value: res.x[1],
                sigma: res.sigma[1],
                at_bound: res.at_bound[1],
            },
        ],
        residual_norm: res.residual_norm,
        iterations: res.iterations,
        converged: res.converged,
    })
}

/// Linear fit of a ringdown level in dB against time (s). Returns the
/// decay slope (dB/s), the intercept, and the quality factor for the
/// supplied mode frequency.
pub fn fit_ringdown(data: &SweepData, omega_m: f64) -> Result<FitResult> {
    data.validate()?;
    if !(omega_m > 0.0) {
        return Err(HrcError::InvalidArgument("omega_m must be positive"));
    }
    let n = data.len() as f64;
    let x = &data.x;
    let y = &data.y[0];
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-300 {
        return Err(HrcError::SingularMatrix { det_abs: det.abs() });
    }
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / n;
    // residual variance and standard errors of the linear fit
    let ssr: f64 = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| (yi - slope * xi - intercept).powi(2))
        .sum();
    let dof = (data.len().max(3) - 2) as f64;
    let s2 = ssr / dof;
    let slope_sigma = (s2 * n / det).sqrt();
    let intercept_sigma = (s2 * sxx / det).sqrt();
    let q = crate::membrane::ringdown_q(omega_m, slope)?;
    let q_sigma = q * slope_sigma / slope.abs();
    Ok(FitResult {
        params: vec![
            FitParam {
                name: "slope_db_per_s",
                value: slope,
                sigma: slope_sigma,
                at_bound: false,
            },
            FitParam {
                name: "intercept_db",
                value: intercept,
                sigma: intercept_sigma,
                at_bound: false,
            },
            FitParam {
                name: "q",
                value: q,
                sigma: q_sigma,
                at_bound: false,
            },
        ],
        residual_norm: ssr.sqrt(),
        iterations: 1,
        converged: true,
    })
}

/// Convenience: format a parameter name for diagnostics.
pub fn describe(result: &FitResult) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for p in &result.params {
        let _ = write!(s, "{}={:.6e}+-{:.1e} ", p.name, p.value, p.sigma);
    }
    let _ = write!(
        s,
        "residual={:.3e} iters={} converged={}",
        result.residual_norm, result.iterations, result.converged
    );
    s
}
