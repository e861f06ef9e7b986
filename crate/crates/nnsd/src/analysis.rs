//! Statistical comparison machinery: histograms, numeric CDFs,
//! Kolmogorov-Smirnov distance, and norm/mean audits of densities.

use crate::oracle::{integrate_half_line, QuadratureSpec};
use crate::{Error, GridSpec, Result};
use serde::Serialize;

/// Default pass threshold for the KS distance at `n = 10^6`: three times
/// the 1%-significance critical value `1.63/sqrt(n)`, loose enough to be
/// stable run to run and tight enough that a wrong reference
/// distribution (which lands at `D >~ 0.01`) cannot pass.
pub const DEFAULT_KS_THRESHOLD: f64 = 0.005;

/// A density histogram with explicit out-of-range accounting.
#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// `counts / (n_in_range * bin_width)`; integrates to one over the
    /// in-range mass.
    pub density: Vec<f64>,
    pub n_below: u64,
    pub n_above: u64,
}

impl Histogram {
    pub fn n_in_range(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Bin `samples` into `bins` equal cells over `[lo, hi)`, with `hi`
/// itself counted into the last cell. Samples outside the range are
/// tallied separately.
pub fn histogram(samples: &[f64], bins: usize, range: (f64, f64)) -> Result<Histogram> {
    let (lo, hi) = range;
    if samples.is_empty() {
        return Err(Error::Usage("histogram needs at least one sample".into()));
    }
    if bins == 0 {
        return Err(Error::Usage("histogram needs at least one bin".into()));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Usage(format!("bad histogram range [{lo}, {hi})")));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    let mut n_below = 0u64;
    let mut n_above = 0u64;
    for &x in samples {
        if x < lo {
            n_below += 1;
        } else if x > hi {
            n_above += 1;
        } else {
            let idx = (((x - lo) / width) as usize).min(bins - 1);
            counts[idx] += 1;
        }
    }
    let n_in = counts.iter().sum::<u64>();
    let density = counts
        .iter()
        .map(|&c| {
            if n_in == 0 {
                0.0
            } else {
                c as f64 / (n_in as f64 * width)
            }
        })
        .collect();
    let edges = (0..=bins).map(|i| lo + i as f64 * width).collect();
    Ok(Histogram { edges, counts, density, n_below, n_above })
}

/// A cached cumulative distribution on a grid, with monotone linear
/// interpolation between nodes.
#[derive(Debug, Clone)]
pub struct CdfTable {
    xs: Vec<f64>,
    cs: Vec<f64>,
}

impl CdfTable {
    /// Evaluate the cached CDF, clamped to `[0, total]` outside the grid.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return 0.0;
        }
        if x >= *self.xs.last().unwrap() {
            return *self.cs.last().unwrap();
        }
        // grid is uniform; index arithmetic instead of search
        let step = self.xs[1] - self.xs[0];
        let idx = (((x - self.xs[0]) / step) as usize).min(self.xs.len() - 2);
        let frac = (x - self.xs[idx]) / step;
        self.cs[idx] + frac * (self.cs[idx + 1] - self.cs[idx])
    }

    pub fn total_mass(&self) -> f64 {
        *self.cs.last().unwrap()
    }
}

// 3-point Gauss-Legendre on [-1, 1].
const GL3_X: [f64; 3] = [-0.7745966692414834, 0.0, 0.7745966692414834];
const GL3_W: [f64; 3] = [0.5555555555555556, 0.8888888888888888, 0.5555555555555556];

/// Build a CDF table by cumulative per-cell Gauss-Legendre integration of
/// `pdf` over the grid. The total mass must land within `1e-4` of one:
/// anything worse flags a broken density rather than silently
/// renormalizing it.
pub fn cdf_from_pdf<F: Fn(f64) -> f64>(pdf: F, grid: GridSpec) -> Result<CdfTable> {
    grid.validate()?;
    let xs = grid.points();
    let mut cs = Vec::with_capacity(xs.len());
    let mut acc = 0.0f64;
    cs.push(0.0);
    for w in xs.windows(2) {
        let half = 0.5 * (w[1] - w[0]);
        let center = 0.5 * (w[0] + w[1]);
        let mut cell = 0.0;
        for (x, wt) in GL3_X.iter().zip(GL3_W) {
            let v = pdf(center + half * x);
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Integrity(format!(
                    "density returned {v} at {}",
                    center + half * x
                )));
            }
            cell += wt * v;
        }
        acc += cell * half;
        cs.push(acc);
    }
    if (acc - 1.0).abs() > 1e-4 {
        return Err(Error::Integrity(format!(
            "density mass over the grid is {acc}, expected 1 within 1e-4"
        )));
    }
    Ok(CdfTable { xs, cs })
}

/// Result of a Kolmogorov-Smirnov comparison.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KsReport {
    pub statistic: f64,
    pub n: usize,
    pub threshold: f64,
    pub pass: bool,
}

/// Two-sided KS distance between `samples` and the reference CDF:
/// `D = sup_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|)` over the sorted
/// sample.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F, threshold: f64) -> Result<KsReport> {
    if samples.is_empty() {
        return Err(Error::Usage("ks_statistic needs at least one sample".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len();
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let hi = ((i + 1) as f64 / nf - f).abs();
        let lo = (i as f64 / nf - f).abs();
        d = d.max(hi).max(lo);
    }
    Ok(KsReport { statistic: d, n, threshold, pass: d <= threshold })
}

/// Norm and raw first moment of a density over `[0, inf)` by mapped
/// quadrature: `(int pdf, int s pdf)`. A vanishing norm flags a broken
/// density instead of reporting a meaningless pair.
pub fn moment_audit<F: Fn(f64) -> f64>(pdf: F, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let norm = integrate_half_line(|s| pdf(s), spec)?.value;
    if !norm.is_finite() || norm.abs() < 1e-6 {
        return Err(Error::Integrity(format!(
            "density norm {norm} is not usable (zero or non-finite)"
        )));
    }
    let mean = integrate_half_line(|s| s * pdf(s), spec)?.value;
    Ok((norm, mean))
}
