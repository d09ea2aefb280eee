//! Generate the synthetic measurement CSVs shipped under `data/`:
//! a transmission doublet scan, transfer-magnitude sweeps of both ports,
//! and a ringdown trace. Deterministic for a fixed seed.
//!
//! Usage: cargo run -p hrc-cli --example gen_data [out_dir] [seed]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hrc_core::fit::{double_lorentzian, tf_model};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn write_file(path: &Path, header: &str, lines: &[String]) {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).expect("create data dir");
    }
    let mut text = String::from("# synthetic measurement generated by gen_data\n");
    text.push_str(header);
    text.push('\n');
    for l in lines {
        text.push_str(l);
        text.push('\n');
    }
    std::fs::write(path, text).expect("write data file");
}

fn main() {
    let mut args = std::env::args().skip(1);
    let out_dir = PathBuf::from(args.next().unwrap_or_else(|| "data".into()));
    let seed: u64 = args
        .next()
        .map(|s| s.parse().expect("seed must be a u64"))
        .unwrap_or(42);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = |sigma: f64, rng: &mut ChaCha8Rng| -> f64 {
        // Box-Muller transform
        let u1: f64 = rng.gen_range(1e-12..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        sigma * (-2.0 * u1.ln()).sqrt() * (TWO_PI * u2).cos()
    };

    // transmission doublet: two Lorentzians split by 49.28 MHz
    let truth = [30.0e6, 0.84e6, 1.0, 79.28e6, 0.95e6, 0.8];
    let mut lines = Vec::new();
    let n = 2001;
    for i in 0..n {
        let f = 20.0e6 + 70.0e6 * (i as f64) / ((n - 1) as f64);
        let v = double_lorentzian(&truth, f) + noise(0.01, &mut rng);
        let mut line = String::new();
        let _ = write!(line, "{f:.6e},{v:.6e}");
        lines.push(line);
    }
    write_file(&out_dir.join("transmission.csv"), "frequency_hz,value", &lines);

    // transfer magnitudes of both ports, 3% noise on a gamma/2pi = 0.84 MHz cavity
    let gamma = TWO_PI * 0.84e6;
    let scale = 1.0;
    let mut lines = Vec::new();
    let n = 400;
    for port in [1u32, 2u32] {
        for i in 0..n {
            let f = 1.0e4 * (10.0e6f64 / 1.0e4).powf((i as f64) / ((n - 1) as f64));
            let (m1, m2) = tf_model(gamma, scale, TWO_PI * f);
            let base = if port == 1 { m1 } else { m2 };
            let v = base * (1.0 + noise(0.03, &mut rng));
            let mut line = String::new();
            let _ = write!(line, "{f:.6e},{v:.6e},{port}");
            lines.push(line);
        }
    }
    write_file(&out_dir.join("tf.csv"), "frequency_hz,value,port", &lines);

    // ringdown of the 395.2 kHz drum mode at Q = 4.6e5
    let omega_m = TWO_PI * 395.2e3;
    let q = 4.6e5;
    let gamma_m = omega_m / (2.0 * q);
    let slope_db = -20.0 * gamma_m / std::f64::consts::LN_10; // dB/s
    let mut lines = Vec::new();
    let n = 400;
    for i in 0..n {
        let t = 2.0 * (i as f64) / ((n - 1) as f64);
        let v = slope_db * t + noise(0.043, &mut rng);
        let mut line = String::new();
        let _ = write!(line, "{t:.6e},{v:.6e}");
        lines.push(line);
    }
    write_file(&out_dir.join("ringdown.csv"), "time_s,amplitude_db", &lines);

    println!("wrote transmission.csv, tf.csv, ringdown.csv to {}", out_dir.display());
}
