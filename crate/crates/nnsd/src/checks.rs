//! The machine-checkable verification suite behind `nnsd check` and the
//! acceptance test target.
//!
//! Every closed form in the crate is cross-validated here against an
//! independent route: special-function kernels against quadrature of
//! their defining integrals, transitional densities against the raw
//! shell integrals, exact means against `int s F`, Monte Carlo samples
//! against the analytic distributions. Each checker returns a
//! [`CriterionReport`] with one line per sub-check; nothing is asserted
//! here so a front end can render the outcome however it likes.

use crate::analysis::{cdf_from_pdf, ks_statistic, moment_audit, DEFAULT_KS_THRESHOLD};
use crate::chebfit::{refit, validate_fit, ChebCoeffs, DomainConvention, ADOPTED_CONVENTION};
use crate::ensemble::method_audit;
use crate::oracle::{integrate_1d, pdf_integral, QuadratureSpec};
use crate::specfun::{
    bessel_i0_scaled, bessel_i1_scaled, chebyshev_t, elliptic_e, elliptic_k, erf, gamma_fn,
};
use crate::surmise::{surmise_constants, surmise_pdf, SurmiseBeta};
use crate::transition::{pdf_normalized, transition_mean, transition_pdf};
use crate::{Alpha, Error, Result, Scale, TransitionKind, ZMode};
use serde::Serialize;

const SQRT_2PI: f64 = 2.5066282746310002;

/// One verified statement with its measured evidence.
#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckLine {
    fn measured(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        CheckLine {
            name: name.into(),
            pass: measured <= bound,
            detail: format!("measured {measured:.3e}, bound {bound:.3e}"),
        }
    }
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: &'static str,
    pub title: &'static str,
    pub pass: bool,
    pub lines: Vec<CheckLine>,
}

impl CriterionReport {
    fn from_lines(id: &'static str, title: &'static str, lines: Vec<CheckLine>) -> Self {
        let pass = lines.iter().all(|l| l.pass);
        CriterionReport { id, title, pass, lines }
    }

    /// Worst offending line, for compact failure messages.
    pub fn first_failure(&self) -> Option<&CheckLine> {
        self.lines.iter().find(|l| !l.pass)
    }
}

fn alpha_grid() -> Vec<Alpha> {
    (1..=19).map(|i| Alpha::new(i as f64 * 0.05).unwrap()).collect()
}

fn s_grid() -> Vec<f64> {
    (1..=80).map(|i| i as f64 * 0.1).collect()
}

/// Criterion: special-function kernels within `1e-12` relative error of
/// quadrature / series oracles; Legendre relation to `1e-12`.
pub fn kernel_accuracy() -> Result<CriterionReport> {
    // rel_tol must stay above the summed panel error-estimate floor
    // (~1e-13 relative); 2.5e-13 is still four times tighter than the
    // bound being certified
    let spec = QuadratureSpec {
        abs_tol: 1e-15,
        rel_tol: 2.5e-13,
        ..QuadratureSpec::default()
    };
    let pi = std::f64::consts::PI;
    let mut lines = Vec::new();

    // scaled Bessel kernels against the defining angular integrals
    let mut worst_i0 = 0.0f64;
    let mut worst_i1 = 0.0f64;
    for &x in &[0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 19.5, 20.5, 35.0, 50.0, 100.0, 1e3, 1e4] {
        let ref_i0 = integrate_1d(|t| (x * (t.cos() - 1.0)).exp(), 0.0, pi, &spec)?.value / pi;
        let ref_i1 =
            integrate_1d(|t| (x * (t.cos() - 1.0)).exp() * t.cos(), 0.0, pi, &spec)?.value / pi;
        worst_i0 = worst_i0.max((bessel_i0_scaled(x)? / ref_i0 - 1.0).abs());
        worst_i1 = worst_i1.max((bessel_i1_scaled(x)? / ref_i1 - 1.0).abs());
    }
    lines.push(CheckLine::measured("i0_scaled vs angular-integral oracle", worst_i0, 1e-12));
    lines.push(CheckLine::measured("i1_scaled vs angular-integral oracle", worst_i1, 1e-12));

    // elliptic K and E against their defining integrals
    let mut worst_k = 0.0f64;
    let mut worst_e = 0.0f64;
    for i in 1..=19 {
        let m = i as f64 * 0.05;
        let ref_k = integrate_1d(
            |t| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(),
            0.0,
            pi / 2.0,
            &spec,
        )?
        .value;
        let ref_e =
            integrate_1d(|t| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, pi / 2.0, &spec)?.value;
        worst_k = worst_k.max((elliptic_k(m)? / ref_k - 1.0).abs());
        worst_e = worst_e.max((elliptic_e(m)? / ref_e - 1.0).abs());
    }
    lines.push(CheckLine::measured("elliptic_k vs defining integral", worst_k, 1e-12));
    lines.push(CheckLine::measured("elliptic_e vs defining integral", worst_e, 1e-12));

    // Legendre relation E(m)K(1-m) + E(1-m)K(m) - K(m)K(1-m) = pi/2
    let mut worst_leg = 0.0f64;
    for i in 1..=9 {
        let m = i as f64 * 0.1;
        let lhs = elliptic_e(m)? * elliptic_k(1.0 - m)? + elliptic_e(1.0 - m)? * elliptic_k(m)?
            - elliptic_k(m)? * elliptic_k(1.0 - m)?;
        worst_leg = worst_leg.max((lhs - pi / 2.0).abs());
    }
    lines.push(CheckLine::measured("Legendre relation residual", worst_leg, 1e-12));

    // erf against its defining integral
    let mut worst_erf = 0.0f64;
    for i in 1..=24 {
        let x = i as f64 * 0.25;
        let reference =
            2.0 / pi.sqrt() * integrate_1d(|t| (-t * t).exp(), 0.0, x, &spec)?.value;
        worst_erf = worst_erf.max((erf(x)? / reference - 1.0).abs());
    }
    lines.push(CheckLine::measured("erf vs defining integral", worst_erf, 1e-12));

    // gamma against series + tail quadrature of the Euler integral
    let mut worst_gamma = 0.0f64;
    for &x in &[0.5, 1.0, 1.5, 2.5, 3.7, 5.0, 7.5, 10.0] {
        // int_0^1 t^(x-1) e^-t dt = sum_k (-1)^k / (k! (x + k))
        let mut head = 0.0f64;
        let mut term = 1.0f64;
        let mut k = 0.0f64;
        loop {
            let contrib = term / (x + k);
            head += if (k as u64) % 2 == 0 { contrib } else { -contrib };
            k += 1.0;
            term /= k;
            if term / (x + k) < 1e-18 {
                break;
            }
        }
        let tail = integrate_1d(
            |u| {
                let t = 1.0 + u / (1.0 - u);
                let jac = 1.0 / ((1.0 - u) * (1.0 - u));
                t.powf(x - 1.0) * (-t).exp() * jac
            },
            0.0,
            1.0,
            &spec,
        )?
        .value;
        worst_gamma = worst_gamma.max((gamma_fn(x)? / (head + tail) - 1.0).abs());
    }
    lines.push(CheckLine::measured("gamma vs Euler-integral oracle", worst_gamma, 1e-12));

    // Chebyshev against the trigonometric identity
    let mut worst_cheb = 0.0f64;
    for n in 0..=12u32 {
        for i in -10..=10 {
            let y = i as f64 / 10.0;
            let reference = (n as f64 * y.acos()).cos();
            worst_cheb = worst_cheb.max((chebyshev_t(n, y)? - reference).abs());
        }
    }
    lines.push(CheckLine::measured("chebyshev_t vs cos(n acos y)", worst_cheb, 1e-12));

    Ok(CriterionReport::from_lines(
        "kernels",
        "special-function kernels within 1e-12 of independent oracles",
        lines,
    ))
}

/// Criterion: closed-form densities agree with adaptive quadrature of
/// the raw shell integrals to `1e-8` relative error over the full
/// `alpha x s` certification grid.
pub fn oracle_certification() -> Result<CriterionReport> {
    let spec = QuadratureSpec::default();
    let mut lines = Vec::new();
    for kind in TransitionKind::ALL {
        let mut worst = 0.0f64;
        let mut worst_at = (0.0, 0.0);
        for alpha in alpha_grid() {
            for &s in &s_grid() {
                let closed = transition_pdf(kind, s, alpha, ZMode::ExactQuadrature)?;
                let raw = pdf_integral(kind, s, alpha, &spec)?;
                let rel = (closed / raw - 1.0).abs();
                if rel > worst {
                    worst = rel;
                    worst_at = (s, alpha.get());
                }
            }
        }
        let mut line = CheckLine::measured(
            format!("{kind}: closed form vs raw shell integral"),
            worst,
            1e-8,
        );
        line.detail = format!("{} (worst at s={}, alpha={})", line.detail, worst_at.0, worst_at.1);
        lines.push(line);
    }
    Ok(CriterionReport::from_lines(
        "oracle",
        "closed forms within 1e-8 of raw-integral quadrature on the full grid",
        lines,
    ))
}

/// Criterion: exact means match `int s F(s) ds` to `1e-8` across the
/// alpha grid, and the endpoint constants reproduce their closed forms
/// to `1e-9`.
pub fn mean_identities() -> Result<CriterionReport> {
    let spec = QuadratureSpec::default();
    let mut lines = Vec::new();
    for kind in TransitionKind::ALL {
        let mut worst = 0.0f64;
        for alpha in alpha_grid() {
            let exact = transition_mean(kind, alpha);
            let (_, quad_mean) =
                moment_audit(|s| transition_pdf(kind, s, alpha, ZMode::ExactQuadrature).unwrap_or(f64::NAN), &spec)?;
            worst = worst.max((quad_mean / exact - 1.0).abs());
        }
        lines.push(CheckLine::measured(
            format!("{kind}: exact mean vs quadrature of s*F"),
            worst,
            1e-8,
        ));
    }

    let pi = std::f64::consts::PI;
    let endpoints = [
        ("goe endpoint sqrt(2 pi) ~ 2.5066283", transition_mean(TransitionKind::GoeToGinibre, Alpha::ZERO), (2.0 * pi).sqrt()),
        ("gue endpoint 4 sqrt2/sqrt pi ~ 3.1915383", transition_mean(TransitionKind::GueToGinibre, Alpha::ZERO), 4.0 * 2.0f64.sqrt() / pi.sqrt()),
        ("ginibre vertex (3/2) sqrt(2 pi) ~ 3.7599424 (gue side)", transition_mean(TransitionKind::GueToGinibre, Alpha::ONE), 1.5 * (2.0 * pi).sqrt()),
        ("ginibre vertex (gse side)", transition_mean(TransitionKind::GinibreToGse, Alpha::ZERO), 1.5 * (2.0 * pi).sqrt()),
        ("ginibre vertex (goe side)", transition_mean(TransitionKind::GoeToGinibre, Alpha::ONE), 1.5 * (2.0 * pi).sqrt()),
        ("gse endpoint 32/(3 sqrt(2 pi)) ~ 4.2553842", transition_mean(TransitionKind::GinibreToGse, Alpha::ONE), 32.0 / (3.0 * (2.0 * pi).sqrt())),
    ];
    for (name, got, want) in endpoints {
        lines.push(CheckLine::measured(name, (got - want).abs(), 1e-9));
    }

    Ok(CriterionReport::from_lines(
        "means",
        "exact means within 1e-8 of quadrature; endpoint constants to 1e-9",
        lines,
    ))
}

fn endpoint_beta(kind: TransitionKind, at_one: bool) -> SurmiseBeta {
    match (kind, at_one) {
        (TransitionKind::GueToGinibre, false) => SurmiseBeta::Gue,
        (TransitionKind::GueToGinibre, true) => SurmiseBeta::Ginibre,
        (TransitionKind::GinibreToGse, false) => SurmiseBeta::Ginibre,
        (TransitionKind::GinibreToGse, true) => SurmiseBeta::Gse,
        (TransitionKind::GoeToGinibre, false) => SurmiseBeta::Goe,
        (TransitionKind::GoeToGinibre, true) => SurmiseBeta::Ginibre,
    }
}

/// Criterion: unit-mean transitional densities collapse onto the correct
/// surmises at the endpoints (sup-norm `1e-9` exactly at the endpoint,
/// `1e-4` at distance `1e-3` from it), and the three families agree at
/// the shared Ginibre vertex.
pub fn endpoint_equivalence() -> Result<CriterionReport> {
    let mut lines = Vec::new();
    let rs: Vec<f64> = (0..=500).map(|i| i as f64 * 0.01).collect();

    for kind in TransitionKind::ALL {
        for at_one in [false, true] {
            let beta = endpoint_beta(kind, at_one);
            let alpha = if at_one { Alpha::ONE } else { Alpha::ZERO };
            let mut sup = 0.0f64;
            for &r in &rs {
                let lhs = pdf_normalized(kind, r, alpha)?;
                let rhs = surmise_pdf(beta, r)?;
                sup = sup.max((lhs - rhs).abs());
            }
            lines.push(CheckLine::measured(
                format!("{kind} at alpha={} vs {beta} surmise (sup norm)", alpha.get()),
                sup,
                1e-9,
            ));

            // approach at distance 1e-3 from the endpoint
            let near = if at_one {
                Alpha::new(1.0 - 1e-3).unwrap()
            } else {
                Alpha::new(1e-3).unwrap()
            };
            let mut sup = 0.0f64;
            for &r in &rs {
                let lhs = pdf_normalized(kind, r, near)?;
                let rhs = surmise_pdf(beta, r)?;
                sup = sup.max((lhs - rhs).abs());
            }
            lines.push(CheckLine::measured(
                format!("{kind} at alpha={} vs {beta} surmise (sup norm)", near.get()),
                sup,
                1e-4,
            ));
        }
    }

    // shared Ginibre vertex: means within 1e-10, densities within 1e-9
    let vertex = [
        (TransitionKind::GueToGinibre, Alpha::ONE),
        (TransitionKind::GinibreToGse, Alpha::ZERO),
        (TransitionKind::GoeToGinibre, Alpha::ONE),
    ];
    let means: Vec<f64> = vertex.iter().map(|&(k, a)| transition_mean(k, a)).collect();
    let mean_spread = means
        .iter()
        .flat_map(|x| means.iter().map(move |y| (x - y).abs()))
        .fold(0.0f64, f64::max);
    lines.push(CheckLine::measured("shared Ginibre vertex mean spread", mean_spread, 1e-10));

    let mut sup = 0.0f64;
    for &r in &rs {
        let vals: Vec<f64> = vertex
            .iter()
            .map(|&(k, a)| pdf_normalized(k, r, a))
            .collect::<Result<_>>()?;
        for x in &vals {
            for y in &vals {
                sup = sup.max((x - y).abs());
            }
        }
    }
    lines.push(CheckLine::measured("shared Ginibre vertex density spread (sup)", sup, 1e-9));

    Ok(CriterionReport::from_lines(
        "endpoints",
        "endpoint densities collapse onto the matching surmises",
        lines,
    ))
}

/// Criterion: the stock six-coefficient Chebyshev set reproduces the
/// quadrature kernel to 1% under its best argument convention, and an
/// order-6 refit independently reaches 1%.
///
/// Both clauses FAIL against this crate's quadrature kernel, under both
/// the relative and the absolute-fraction-of-peak reading; the measured
/// errors are reported verbatim. See the README's accuracy note and
/// `chebfit` for the refit orders that do reach percent level.
pub fn chebyshev_claim() -> Result<CriterionReport> {
    let spec = QuadratureSpec::default();
    let mut lines = Vec::new();

    let mut reports = Vec::new();
    for convention in DomainConvention::BOTH {
        let report = validate_fit(&ChebCoeffs::stock(convention), &spec)?;
        lines.push(CheckLine {
            name: format!("stock set under {convention} (informational)"),
            pass: true,
            detail: format!(
                "max_rel {:.4}, max_abs {:.4}, abs/peak {:.4}",
                report.max_rel_err, report.max_abs_err, report.max_abs_over_peak
            ),
        });
        reports.push(report);
    }
    let winner = reports
        .iter()
        .min_by(|a, b| a.max_abs_err.total_cmp(&b.max_abs_err))
        .expect("two reports");
    lines.push(CheckLine {
        name: format!("winning convention {} meets 1% (either reading)", winner.convention),
        pass: winner.max_rel_err <= 0.01 || winner.max_abs_over_peak <= 0.01,
        detail: format!(
            "max_rel {:.4} vs 0.01, abs/peak {:.4} vs 0.01",
            winner.max_rel_err, winner.max_abs_over_peak
        ),
    });

    let (_, refit_report) = refit(6, 512, &spec, ADOPTED_CONVENTION)?;
    lines.push(CheckLine {
        name: "order-6 refit meets 1% (either reading)".into(),
        pass: refit_report.max_rel_err <= 0.01 || refit_report.max_abs_over_peak <= 0.01,
        detail: format!(
            "max_rel {:.4} vs 0.01, abs/peak {:.4} vs 0.01",
            refit_report.max_rel_err, refit_report.max_abs_over_peak
        ),
    });

    Ok(CriterionReport::from_lines(
        "cheb",
        "percent-level Chebyshev representation of the angular kernel",
        lines,
    ))
}

/// Criterion: `n`-sample Monte Carlo runs at `alpha` in {0.25, 0.5, 0.75}
/// pass the KS test against the analytic distributions at `D <= 0.005`;
/// the two sampling routes agree draw by draw to `1e-10`, with eigenvalue
/// degeneracy at the same level.
pub fn monte_carlo_consistency(n: usize) -> Result<CriterionReport> {
    let mut lines = Vec::new();
    let cdf_grid = crate::GridSpec::new(0.0, 8.0, 1.0 / 1024.0)?;
    for kind in TransitionKind::ALL {
        for &a in &[0.25, 0.5, 0.75] {
            let alpha = Alpha::new(a)?;
            let alpha_vec = kind.alpha_vec(alpha);
            let seed = 0x5eed ^ (a * 100.0) as u64 ^ ((kind as u64) << 32);

            let audit = method_audit(&alpha_vec, n, seed)?;
            lines.push(CheckLine::measured(
                format!("{kind} alpha={a}: max |s_matrix - s_formula|"),
                audit.max_method_diff,
                1e-10,
            ));
            lines.push(CheckLine::measured(
                format!("{kind} alpha={a}: max degeneracy defect"),
                audit.max_degeneracy_defect,
                1e-10,
            ));

            let mean = transition_mean(kind, alpha);
            let scaled: Vec<f64> = audit.spacings.iter().map(|s| s / mean).collect();
            let cdf = cdf_from_pdf(|r| pdf_normalized(kind, r, alpha).unwrap_or(f64::NAN), cdf_grid)?;
            let ks = ks_statistic(&scaled, |x| cdf.eval(x), DEFAULT_KS_THRESHOLD)?;
            lines.push(CheckLine::measured(
                format!("{kind} alpha={a}: KS distance, n={n}"),
                ks.statistic,
                DEFAULT_KS_THRESHOLD,
            ));
        }
    }
    Ok(CriterionReport::from_lines(
        "montecarlo",
        "Monte Carlo spacings match the analytic distributions",
        lines,
    ))
}

/// Numerical argmax of a unit-mean density by golden-section refinement
/// of a coarse grid scan.
fn peak_value(kind: TransitionKind, alpha: Alpha) -> Result<f64> {
    let mut best_r = 0.0;
    let mut best = 0.0f64;
    for i in 1..400 {
        let r = i as f64 * 0.005;
        let v = pdf_normalized(kind, r, alpha)?;
        if v > best {
            best = v;
            best_r = r;
        }
    }
    let (mut lo, mut hi) = (best_r - 0.005, best_r + 0.005);
    let phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = pdf_normalized(kind, x1, alpha)?;
    let mut f2 = pdf_normalized(kind, x2, alpha)?;
    for _ in 0..60 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = pdf_normalized(kind, x2, alpha)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = pdf_normalized(kind, x1, alpha)?;
        }
    }
    Ok(f1.max(f2))
}

/// Criterion: the peak of the unit-mean Ginibre-endpoint density exceeds
/// the unit-mean GUE peak by the derived ratio 1.1634 (the rounded
/// single-digit folklore figure is 20%; the exact figure is 16.34% and
/// the deviation is reported, not hidden).
pub fn peak_ratio() -> Result<CriterionReport> {
    let p1 = peak_value(TransitionKind::GueToGinibre, Alpha::ONE)?;
    let p0 = peak_value(TransitionKind::GueToGinibre, Alpha::ZERO)?;
    let ratio = p1 / p0;

    // closed-form peaks: (8/pi) e^-1 for the unit-mean beta=2 density and
    // C1 (3/(2 C2))^(3/2) e^(-3/2) for beta=3
    let k2 = surmise_constants(SurmiseBeta::Gue);
    let k3 = surmise_constants(SurmiseBeta::Ginibre);
    let peak2 = k2.c1 / k2.c2 * (-1.0f64).exp();
    let peak3 = k3.c1 * (1.5 / k3.c2).powf(1.5) * (-1.5f64).exp();
    let derived = peak3 / peak2;

    let mut lines = vec![
        CheckLine::measured("numeric peak ratio vs derived closed form", (ratio / derived - 1.0).abs(), 1e-6),
        CheckLine::measured("peak ratio within 0.01 of 1.163", (ratio - 1.163).abs(), 0.01),
        CheckLine {
            name: "derived peak gain vs the rounded 20% figure".into(),
            pass: true,
            detail: format!(
                "exact ratio {derived:.7} = +{:.2}% (peaks {:.7} and {:.7}); '20%' overstates by {:.2} points",
                (derived - 1.0) * 100.0,
                peak3,
                peak2,
                20.0 - (derived - 1.0) * 100.0
            ),
        },
    ];
    lines[0].detail = format!("ratio {ratio:.9} vs derived {derived:.9}");
    Ok(CriterionReport::from_lines(
        "peak",
        "unit-mean peak gain across the GUE -> Ginibre family",
        lines,
    ))
}

/// Criterion: the small-s leading coefficients of the three families
/// match their derived constants to 0.1%, and the GOE-endpoint density
/// is exactly linear in the small-s window.
pub fn small_s_structure() -> Result<CriterionReport> {
    let mut lines = Vec::new();
    let s = 1e-4;
    for &a in &[0.25, 0.5, 0.75] {
        let alpha = Alpha::new(a)?;
        let checks = [
            (TransitionKind::GueToGinibre, 3, 1.0 / (32.0 * a)),
            (TransitionKind::GinibreToGse, 4, 1.0 / (48.0 * SQRT_2PI * a)),
            (TransitionKind::GoeToGinibre, 3, 1.0 / (32.0 * a * a)),
        ];
        for (kind, power, expect) in checks {
            let f = transition_pdf(kind, s, alpha, ZMode::ExactQuadrature)?;
            let measured = f / s.powi(power);
            lines.push(CheckLine::measured(
                format!("{kind} alpha={a}: F/s^{power} at s=1e-4 vs {expect:.6}"),
                (measured / expect - 1.0).abs(),
                1e-3,
            ));
        }
    }

    // GOE endpoint: log-log slope 1.00 +- 0.01 on s in [1e-3, 1e-2]
    let xs: Vec<f64> = (1..=10).map(|i| i as f64 * 1e-3).collect();
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &s in &xs {
        let x = s.ln();
        let y = transition_pdf(TransitionKind::GoeToGinibre, s, Alpha::ZERO, ZMode::ExactQuadrature)?
            .ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let nf = xs.len() as f64;
    let slope = (nf * sxy - sx * sy) / (nf * sxx - sx * sx);
    lines.push(CheckLine::measured(
        "goe-ginibre alpha=0: log-log slope vs 1.00",
        (slope - 1.0).abs(),
        0.01,
    ));

    Ok(CriterionReport::from_lines(
        "small-s",
        "small-s leading powers and coefficients",
        lines,
    ))
}

/// Cross-check of the general shell integral: the four endpoint triples
/// reproduce the correct surmise shapes after unit-mean rescaling, and
/// the density integrates to one. Desk-scale tolerances (1e-6); this is
/// the only route for parameter triples without a closed form.
pub fn general_shell_endpoints() -> Result<CriterionReport> {
    use crate::oracle::{integrate_half_line, mean_numeric_general, pdf_general};
    let spec = QuadratureSpec::default();
    let mut lines = Vec::new();
    let cases: [([f64; 3], SurmiseBeta); 4] = [
        ([0.0, 0.0, 0.0], SurmiseBeta::Goe),
        ([1.0, 0.0, 0.0], SurmiseBeta::Gue),
        ([1.0, 1.0, 0.0], SurmiseBeta::Ginibre),
        ([1.0, 1.0, 1.0], SurmiseBeta::Gse),
    ];
    for (components, beta) in cases {
        let av = crate::AlphaVec::new(components[0], components[1], components[2])?;
        let mean = mean_numeric_general(&av, &spec)?;
        let mut sup = 0.0f64;
        for i in 1..=15 {
            let r = i as f64 * 0.2;
            let shell = mean * pdf_general(mean * r, &av, &spec)?;
            let reference = surmise_pdf(beta, r)?;
            sup = sup.max((shell - reference).abs());
        }
        lines.push(CheckLine::measured(
            format!("shell density ({},{},{}) vs {beta} surmise (sup)", av.a1, av.a2, av.a3),
            sup,
            1e-6,
        ));
    }
    // unit norm for a genuinely transitional triple
    let av = crate::AlphaVec::new(1.0, 0.7, 0.3)?;
    let norm = integrate_half_line(|s| pdf_general(s, &av, &spec.child()).unwrap_or(f64::NAN), &spec)?;
    lines.push(CheckLine::measured(
        "shell density (1,0.7,0.3) norm deviation",
        (norm.value - 1.0).abs(),
        1e-6,
    ));
    Ok(CriterionReport::from_lines(
        "general",
        "general shell integral reproduces the endpoint surmises",
        lines,
    ))
}

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 9] = [
    "kernels", "oracle", "means", "endpoints", "cheb", "montecarlo", "peak", "small-s", "general",
];

/// Run one named suite, or every suite with `"all"`. `mc_n` is the
/// sample count for the Monte Carlo criterion.
pub fn run_suite(name: &str, mc_n: usize) -> Result<Vec<CriterionReport>> {
    match name {
        "kernels" => Ok(vec![kernel_accuracy()?]),
        "oracle" => Ok(vec![oracle_certification()?]),
        "means" => Ok(vec![mean_identities()?]),
        "endpoints" => Ok(vec![endpoint_equivalence()?]),
        "cheb" => Ok(vec![chebyshev_claim()?]),
        "montecarlo" => Ok(vec![monte_carlo_consistency(mc_n)?]),
        "peak" => Ok(vec![peak_ratio()?]),
        "small-s" => Ok(vec![small_s_structure()?]),
        "general" => Ok(vec![general_shell_endpoints()?]),
        "all" => {
            let mut reports = Vec::new();
            for suite in SUITES {
                reports.extend(run_suite(suite, mc_n)?);
            }
            Ok(reports)
        }
        other => Err(Error::Usage(format!(
            "unknown suite '{other}' (expected all or one of {SUITES:?})"
        ))),
    }
}

/// Scale figure table: the figure-style reproduction path used by tests.
pub fn figure_table(kind: TransitionKind, alpha: Alpha) -> Result<crate::transition::PdfTable> {
    crate::transition::pdf_table(
        crate::transition::Family::Transition(kind),
        Some(alpha),
        crate::GridSpec::new(0.0, 5.0, 0.01)?,
        Scale::UnitMeanR,
        ZMode::ExactQuadrature,
        false,
    )
}
