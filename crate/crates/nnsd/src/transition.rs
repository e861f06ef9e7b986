//! Closed-form transitional spacing densities and their exact means for
//! the three one-parameter families, on the raw spacing scale and the
//! unit-mean scale.
//!
//! Numerical strategy, in brief:
//!
//! * `GUE -> Ginibre` is restated with exponentially scaled Bessel
//!   kernels. The textbook form multiplies `e^(-s^2(1+a^2)/(16 a^2))`
//!   against `I_n` of an argument that overflows long before the product
//!   does; pulling `e^-x I_n(x)` together leaves the bounded factor
//!   `e^(-s^2/8) [i0e + i1e](x)`, valid over the whole parameter range.
//! * `Ginibre -> GSE` needs the bracket
//!   `B(mu) = e^-mu/mu + sqrt(pi)(2mu - 1) erf(sqrt(mu))/(2 mu^(3/2))`,
//!   which is a 0/0 pair as `mu -> 0`; below `mu = 1e-4` it switches to
//!   its Taylor series `sum_k 4 (-mu)^k / (k! (2k+1)(2k+3))`.
//! * `GOE -> Ginibre` has no elementary kernel; the angular factor `Z` is
//!   evaluated by adaptive quadrature ([`ZMode::ExactQuadrature`]) or by
//!   the built-in Chebyshev surrogate ([`ZMode::ChebApprox`]).
//! * `alpha = 0` and `alpha = 1` route to the analytic limit expressions
//!   instead of evaluating removable 1/alpha and 1/sqrt(1-alpha^2)
//!   prefactors. The means switch to series near their removable 0/0
//!   points the same way.

use crate::chebfit::{z_cheb_raw, ChebCoeffs, ADOPTED_CONVENTION};
use crate::oracle::{z_integral, QuadratureSpec};
use crate::specfun::{elliptic_e, elliptic_k, erf_raw, i0e_raw, i1e_raw};
use crate::surmise::SurmiseBeta;
use crate::{Alpha, Error, GridSpec, Result, Scale, TransitionKind, ZMode};
use serde::Serialize;

const SQRT_2PI: f64 = 2.5066282746310002;

fn check_s(op: &str, s: f64) -> Result<()> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::Domain(format!("{op} requires s >= 0, got {s}")));
    }
    Ok(())
}

/// `GUE -> Ginibre` spacing density at raw spacing `s`.
///
/// `F(s, a) = s^3/(32 a) e^(-s^2/8) [i0e + i1e](x)` with
/// `x = (s^2/16)(1 - a^2)/a^2`; at `a = 0` the Laplace limit
/// `s^2 e^(-s^2/8) / (4 sqrt(2 pi))`.
pub fn pdf_gue_ginibre(s: f64, alpha: Alpha) -> Result<f64> {
    check_s("pdf_gue_ginibre", s)?;
    let a = alpha.get();
    if s == 0.0 {
        return Ok(0.0);
    }
    let gauss = (-s * s / 8.0).exp();
    if a == 0.0 {
        return Ok(s * s * gauss / (4.0 * SQRT_2PI));
    }
    let aa = a * a;
    let x = s * s / 16.0 * (1.0 - aa) / aa;
    if !x.is_finite() {
        // alpha so small that x overflows: same limit, scaled leading factor
        return Ok(s * s * gauss / (4.0 * SQRT_2PI * (1.0 - aa).sqrt()));
    }
    Ok(s.powi(3) / (32.0 * a) * gauss * (i0e_raw(x) + i1e_raw(x)))
}

/// Exact mean of the `GUE -> Ginibre` density:
/// `<s> = (2 sqrt2 / sqrt pi) [(2 - a^2) E(m) - a^2 K(m)] / m` with
/// `m = 1 - a^2`. The numerator is a 0/0 pair as `m -> 0`; below
/// `m = 1e-4` the series `sqrt(2 pi) [3/2 - 3m/16 - 3m^2/128 - 15m^3/2048]`
/// takes over.
pub fn mean_gue_ginibre(alpha: Alpha) -> f64 {
    let a = alpha.get();
    let m = (1.0 - a) * (1.0 + a);
    if m >= 1.0 {
        // a = 0 (or denormally close): E(1) = 1 and the K term vanishes
        return 4.0 * std::f64::consts::SQRT_2 / std::f64::consts::PI.sqrt();
    }
    if m < 1e-4 {
        return SQRT_2PI
            * (1.5 - 3.0 * m / 16.0 - 3.0 * m * m / 128.0 - 15.0 * m.powi(3) / 2048.0);
    }
    let aa = a * a;
    let e = elliptic_e(m).expect("m in (0, 1)");
    let k = elliptic_k(m).expect("m in (0, 1)");
    2.0 * std::f64::consts::SQRT_2 / std::f64::consts::PI.sqrt()
        * ((2.0 - aa) * e - aa * k)
        / m
}

/// Bracket of the `Ginibre -> GSE` closed form. Taylor series below
/// `mu = 1e-4`, where the analytic form loses digits to cancellation.
fn gse_bracket(mu: f64) -> f64 {
    if mu < 1e-4 {
        // B(mu) = sum_k 4 (-mu)^k / (k! (2k+1)(2k+3)) = 4/3 - (4/15) mu + ...
        let mut term = 4.0 / 3.0;
        let mut sum = term;
        let mut k = 1.0;
        loop {
            term *= -mu * (2.0 * k - 1.0) / (k * (2.0 * k + 3.0));
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                return sum;
            }
            k += 1.0;
        }
    }
    let root = mu.sqrt();
    (-mu).exp() / mu + std::f64::consts::PI.sqrt() * (2.0 * mu - 1.0) * erf_raw(root)
        / (2.0 * mu * root)
}

/// `Ginibre -> GSE` spacing density at raw spacing `s`.
///
/// `F(s, a) = s^4 e^(-s^2/8) / (64 sqrt(2 pi) a) B(mu)` with
/// `mu = (s^2/8)(1 - a^2)/a^2`; at `a = 0` it reduces to the shared
/// Ginibre endpoint shape `s^3 e^(-s^2/8) / 32`.
pub fn pdf_ginibre_gse(s: f64, alpha: Alpha) -> Result<f64> {
    check_s("pdf_ginibre_gse", s)?;
    let a = alpha.get();
    if s == 0.0 {
        return Ok(0.0);
    }
    let gauss = (-s * s / 8.0).exp();
    if a == 0.0 {
        return Ok(s.powi(3) * gauss / 32.0);
    }
    let aa = a * a;
    let mu = s * s / 8.0 * (1.0 - aa) / aa;
    if !mu.is_finite() {
        return Ok(s.powi(3) * gauss / (32.0 * (1.0 - aa).sqrt()));
    }
    Ok(s.powi(4) * gauss / (64.0 * SQRT_2PI * a) * gse_bracket(mu))
}

/// Exact mean of the `Ginibre -> GSE` density:
/// `<s> = sqrt(2/pi) [a(3 - 2a^2)/(1 - a^2) + (3 - 4a^2) arccos(a)/(1 - a^2)^(3/2)]`.
/// The two terms diverge individually as `a -> 1`; above `a = 1 - 1e-4`
/// the series in `t = 1 - a`,
/// `sqrt(2/pi) [16/3 - (16/15) t + (32/105) t^2]`, takes over.
pub fn mean_ginibre_gse(alpha: Alpha) -> f64 {
    let a = alpha.get();
    let t = 1.0 - a;
    let sqrt_2_over_pi = (2.0 / std::f64::consts::PI).sqrt();
    if t < 1e-4 {
        return sqrt_2_over_pi * (16.0 / 3.0 - 16.0 * t / 15.0 + 32.0 * t * t / 105.0);
    }
    let aa = a * a;
    let one_minus = (1.0 - a) * (1.0 + a);
    sqrt_2_over_pi
        * (a * (3.0 - 2.0 * aa) / one_minus
            + (3.0 - 4.0 * aa) * a.acos() / (one_minus * one_minus.sqrt()))
}

/// `GOE -> Ginibre` spacing density at raw spacing `s`.
///
/// `F(s, a) = s^2 e^(-s^2/8) sqrt(2/pi) / (16 a sqrt(1 - a^2)) * Z(xi)`
/// with `xi = s sqrt(1 - a^2) / (2 sqrt2 a)`. Endpoints route to the
/// analytic limits `(s/4) e^(-s^2/8)` (`a = 0`, GOE shape) and
/// `s^3 e^(-s^2/8)/32` (`a = 1`, Ginibre shape).
pub fn pdf_goe_ginibre(s: f64, alpha: Alpha, z_mode: ZMode) -> Result<f64> {
    check_s("pdf_goe_ginibre", s)?;
    let a = alpha.get();
    if s == 0.0 {
        return Ok(0.0);
    }
    let gauss = (-s * s / 8.0).exp();
    if a == 0.0 {
        return Ok(s / 4.0 * gauss);
    }
    if a == 1.0 {
        return Ok(s.powi(3) * gauss / 32.0);
    }
    let one_minus = (1.0 - a) * (1.0 + a);
    let root = one_minus.sqrt();
    let xi = s * root / (2.0 * std::f64::consts::SQRT_2 * a);
    let z = match z_mode {
        ZMode::ExactQuadrature => z_integral(xi, &QuadratureSpec::default())?,
        ZMode::ChebApprox => {
            let y = xi / (1.0 + xi);
            z_cheb_raw(y, &ChebCoeffs::stock(ADOPTED_CONVENTION))
        }
    };
    let prefactor = s * s * gauss * (2.0 / std::f64::consts::PI).sqrt() / (16.0 * a * root);
    Ok(prefactor * z)
}

/// Exact mean of the `GOE -> Ginibre` density:
/// `<s> = sqrt(2 pi) (1 + a + a^2)/(1 + a)`. Continuous on the whole
/// parameter range.
pub fn mean_goe_ginibre(alpha: Alpha) -> f64 {
    let a = alpha.get();
    SQRT_2PI * (1.0 + a + a * a) / (1.0 + a)
}

/// Exact mean of the given family at `alpha`.
pub fn transition_mean(kind: TransitionKind, alpha: Alpha) -> f64 {
    match kind {
        TransitionKind::GueToGinibre => mean_gue_ginibre(alpha),
        TransitionKind::GinibreToGse => mean_ginibre_gse(alpha),
        TransitionKind::GoeToGinibre => mean_goe_ginibre(alpha),
    }
}

/// Raw-scale density of the given family at `alpha`, with an explicit
/// kernel mode for the `GOE -> Ginibre` family (ignored by the others).
pub fn transition_pdf(kind: TransitionKind, s: f64, alpha: Alpha, z_mode: ZMode) -> Result<f64> {
    match kind {
        TransitionKind::GueToGinibre => pdf_gue_ginibre(s, alpha),
        TransitionKind::GinibreToGse => pdf_ginibre_gse(s, alpha),
        TransitionKind::GoeToGinibre => pdf_goe_ginibre(s, alpha, z_mode),
    }
}

/// Unit-mean density `<s> F(<s> r)` at scaled spacing `r`. Exact-kernel
/// mode throughout; unit norm and unit mean hold by construction of the
/// change of variables.
pub fn pdf_normalized(kind: TransitionKind, r: f64, alpha: Alpha) -> Result<f64> {
    check_s("pdf_normalized", r)?;
    let mean = transition_mean(kind, alpha);
    Ok(mean * transition_pdf(kind, mean * r, alpha, ZMode::ExactQuadrature)?)
}

/// Either a transitional family or a pure surmise, for table generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Transition(TransitionKind),
    Surmise(SurmiseBeta),
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Transition(kind) => kind.as_str().to_string(),
            Family::Surmise(beta) => format!("surmise-{}", beta.as_str()),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

/// An evaluated density table with full provenance.
#[derive(Debug, Clone, Serialize)]
pub struct PdfTable {
    pub family: Family,
    pub alpha: Option<f64>,
    pub scale: Scale,
    pub z_mode: Option<ZMode>,
    pub renormalized: bool,
    /// The mean spacing used for unit-mean scaling (1 for surmises).
    pub mean_s: f64,
    pub rows: Vec<(f64, f64)>,
}

impl PdfTable {
    /// Trapezoid integral of the tabulated density.
    pub fn trapezoid_norm(&self) -> f64 {
        trapezoid(&self.rows)
    }
}

fn trapezoid(rows: &[(f64, f64)]) -> f64 {
    rows.windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum()
}

/// Evaluate a density on a grid.
///
/// Transitional families need `alpha`; surmises reject it. `z_mode` only
/// reaches the `GOE -> Ginibre` kernel. With `renormalize` the emitted
/// densities are divided by the table's trapezoid norm (meant for the
/// approximate kernel mode, whose norm drifts by the fit error) and the
/// flag is recorded.
pub fn pdf_table(
    family: Family,
    alpha: Option<Alpha>,
    grid: GridSpec,
    scale: Scale,
    z_mode: ZMode,
    renormalize: bool,
) -> Result<PdfTable> {
    grid.validate()?;
    let points = grid.points();
    let mut rows = Vec::with_capacity(points.len());
    let (mean_s, z_mode_out) = match family {
        Family::Transition(kind) => {
            let alpha = alpha.ok_or_else(|| {
                Error::Usage(format!("family {} needs an alpha parameter", family.name()))
            })?;
            let mean = transition_mean(kind, alpha);
            for &x in &points {
                let density = match scale {
                    Scale::RawS => transition_pdf(kind, x, alpha, z_mode)?,
                    Scale::UnitMeanR => mean * transition_pdf(kind, mean * x, alpha, z_mode)?,
                };
                rows.push((x, density));
            }
            let mode = match kind {
                TransitionKind::GoeToGinibre => Some(z_mode),
                _ => None,
            };
            (mean, mode)
        }
        Family::Surmise(beta) => {
            if alpha.is_some() {
                return Err(Error::Usage(
                    "surmise densities take no alpha parameter".into(),
                ));
            }
            // surmises are unit-mean by construction on either scale
            for &x in &points {
                rows.push((x, crate::surmise::surmise_pdf(beta, x)?));
            }
            (1.0, None)
        }
    };

    let mut table = PdfTable {
        family,
        alpha: alpha.map(|a| a.get()),
        scale,
        z_mode: z_mode_out,
        renormalized: false,
        mean_s,
        rows,
    };
    if renormalize {
        let norm = table.trapezoid_norm();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::Integrity(format!(
                "cannot renormalize a table with norm {norm}"
            )));
        }
        for row in &mut table.rows {
            row.1 /= norm;
        }
        table.renormalized = true;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::integrate_half_line;
    use crate::surmise::surmise_pdf;
    use approx::assert_relative_eq;

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    // Frozen 35-digit references.
    const GINIBRE_POINT: f64 = 0.15163266492815836; // s^3 e^(-s^2/8)/32 at s=2
    const MEAN_GUE_END: f64 = 3.1915382432114614; // 4 sqrt2/sqrt pi
    const MEAN_GINIBRE: f64 = 3.7599424119465008; // (3/2) sqrt(2 pi)
    const MEAN_GSE_END: f64 = 4.2553843242819486; // 32/(3 sqrt(2 pi))

    #[test]
    fn gue_ginibre_reference_values() {
        assert_relative_eq!(pdf_gue_ginibre(2.0, a(1.0)).unwrap(), GINIBRE_POINT, max_relative = 1e-13);
        assert_eq!(pdf_gue_ginibre(0.0, a(0.7)).unwrap(), 0.0);
        assert_relative_eq!(
            pdf_gue_ginibre(2.0, a(0.0)).unwrap(),
            0.24197072451914335,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            pdf_gue_ginibre(2.0, a(0.5)).unwrap(),
            0.22170303298079889,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            pdf_gue_ginibre(3.7, a(0.25)).unwrap(),
            0.25221167075717803,
            max_relative = 1e-12
        );
        assert!(pdf_gue_ginibre(-1.0, a(0.5)).is_err());
    }

    #[test]
    fn gue_ginibre_mean_references() {
        assert_relative_eq!(mean_gue_ginibre(a(0.0)), MEAN_GUE_END, max_relative = 1e-13);
        assert_relative_eq!(mean_gue_ginibre(a(1.0)), MEAN_GINIBRE, max_relative = 1e-13);
        assert_relative_eq!(mean_gue_ginibre(a(0.5)), 3.3622198709194015, max_relative = 1e-12);
        assert_relative_eq!(mean_gue_ginibre(a(0.25)), 3.2383664385230647, max_relative = 1e-12);
        assert_relative_eq!(mean_gue_ginibre(a(0.75)), 3.5411519687898325, max_relative = 1e-12);
    }

    #[test]
    fn gue_ginibre_mean_matches_quadrature() {
        let spec = QuadratureSpec::default();
        let alpha = a(0.5);
        let q = integrate_half_line(|s| s * pdf_gue_ginibre(s, alpha).unwrap(), &spec).unwrap();
        assert_relative_eq!(q.value, mean_gue_ginibre(alpha), max_relative = 1e-9);
    }

    #[test]
    fn gue_mean_series_is_continuous_at_threshold() {
        // alpha values straddling m = 1e-4
        let m_hi: f64 = 1.0000001e-4;
        let m_lo: f64 = 0.9999999e-4;
        let hi = mean_gue_ginibre(a((1.0 - m_hi).sqrt()));
        let lo = mean_gue_ginibre(a((1.0 - m_lo).sqrt()));
        assert_relative_eq!(hi, lo, max_relative = 1e-10);
    }

    #[test]
    fn ginibre_gse_reference_values() {
        assert_relative_eq!(
            pdf_ginibre_gse(2.0, a(1.0)).unwrap(),
            0.080656908173047783,
            max_relative = 1e-13
        );
        assert_eq!(pdf_ginibre_gse(0.0, a(0.3)).unwrap(), 0.0);
        // shared Ginibre endpoint with pdf_gue_ginibre at alpha = 1
        assert_relative_eq!(pdf_ginibre_gse(2.0, a(0.0)).unwrap(), GINIBRE_POINT, max_relative = 1e-13);
        assert_relative_eq!(
            pdf_ginibre_gse(2.0, a(0.5)).unwrap(),
            0.12500466148802591,
            max_relative = 1e-12
        );
    }

    #[test]
    fn gse_bracket_series_matches_analytic() {
        // frozen: B(1e-4) and B(0.01) from 35-digit arithmetic
        assert_relative_eq!(gse_bracket(1e-4 - 1e-12), 1.3333066672380847, max_relative = 1e-12);
        assert_relative_eq!(gse_bracket(0.01), 1.3306723703871821, max_relative = 1e-11);
        // continuity across the series threshold
        let below = gse_bracket(1e-4 * (1.0 - 1e-9));
        let above = gse_bracket(1e-4 * (1.0 + 1e-9));
        assert_relative_eq!(below, above, max_relative = 1e-11);
    }

    #[test]
    fn ginibre_gse_mean_references() {
        assert_relative_eq!(mean_ginibre_gse(a(0.0)), MEAN_GINIBRE, max_relative = 1e-13);
        assert_relative_eq!(mean_ginibre_gse(a(1.0)), MEAN_GSE_END, max_relative = 1e-13);
        assert_relative_eq!(mean_ginibre_gse(a(0.5)), 3.9026120619897273, max_relative = 1e-12);
        assert_relative_eq!(mean_ginibre_gse(a(0.25)), 3.7978855460479753, max_relative = 1e-12);
        assert_relative_eq!(mean_ginibre_gse(a(0.75)), 4.0591872900964419, max_relative = 1e-12);
    }

    #[test]
    fn gse_mean_series_is_continuous_at_threshold() {
        let hi = mean_ginibre_gse(a(1.0 - 1.0000001e-4));
        let lo = mean_ginibre_gse(a(1.0 - 0.9999999e-4));
        assert_relative_eq!(hi, lo, max_relative = 1e-10);
    }

    #[test]
    fn ginibre_gse_mean_matches_quadrature() {
        let spec = QuadratureSpec::default();
        let alpha = a(0.5);
        let q = integrate_half_line(|s| s * pdf_ginibre_gse(s, alpha).unwrap(), &spec).unwrap();
        assert_relative_eq!(q.value, mean_ginibre_gse(alpha), max_relative = 1e-9);
    }

    #[test]
    fn goe_ginibre_reference_values() {
        assert_relative_eq!(
            pdf_goe_ginibre(2.0, a(1.0), ZMode::ExactQuadrature).unwrap(),
            GINIBRE_POINT,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            pdf_goe_ginibre(2.0, a(0.0), ZMode::ExactQuadrature).unwrap(),
            0.30326532985631671,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            pdf_goe_ginibre(2.0, a(0.5), ZMode::ExactQuadrature).unwrap(),
            0.31413025098401382,
            max_relative = 1e-9
        );
        assert_eq!(pdf_goe_ginibre(0.0, a(0.5), ZMode::ExactQuadrature).unwrap(), 0.0);
    }

    #[test]
    fn goe_ginibre_mean_references() {
        assert_relative_eq!(mean_goe_ginibre(a(0.0)), SQRT_2PI, max_relative = 1e-14);
        assert_relative_eq!(mean_goe_ginibre(a(1.0)), MEAN_GINIBRE, max_relative = 1e-13);
        assert_relative_eq!(mean_goe_ginibre(a(0.5)), 2.9243996537361673, max_relative = 1e-13);
    }

    #[test]
    fn goe_ginibre_mean_matches_quadrature() {
        let spec = QuadratureSpec::default();
        let alpha = a(0.5);
        let q = integrate_half_line(
            |s| s * pdf_goe_ginibre(s, alpha, ZMode::ExactQuadrature).unwrap(),
            &spec,
        )
        .unwrap();
        assert_relative_eq!(q.value, mean_goe_ginibre(alpha), max_relative = 1e-9);
    }

    #[test]
    fn shared_ginibre_vertex() {
        let m1 = mean_gue_ginibre(a(1.0));
        let m2 = mean_ginibre_gse(a(0.0));
        let m3 = mean_goe_ginibre(a(1.0));
        assert!((m1 - m2).abs() < 1e-10);
        assert!((m1 - m3).abs() < 1e-10);
    }

    #[test]
    fn unit_mean_endpoints_match_surmises() {
        // (kind, alpha, endpoint surmise)
        let cases = [
            (TransitionKind::GueToGinibre, 0.0, SurmiseBeta::Gue),
            (TransitionKind::GueToGinibre, 1.0, SurmiseBeta::Ginibre),
            (TransitionKind::GinibreToGse, 0.0, SurmiseBeta::Ginibre),
            (TransitionKind::GinibreToGse, 1.0, SurmiseBeta::Gse),
            (TransitionKind::GoeToGinibre, 0.0, SurmiseBeta::Goe),
            (TransitionKind::GoeToGinibre, 1.0, SurmiseBeta::Ginibre),
        ];
        for (kind, alpha, beta) in cases {
            let alpha = a(alpha);
            let mut sup = 0.0f64;
            for i in 0..=250 {
                let r = i as f64 * 0.02;
                let lhs = pdf_normalized(kind, r, alpha).unwrap();
                let rhs = surmise_pdf(beta, r).unwrap();
                sup = sup.max((lhs - rhs).abs());
            }
            assert!(sup <= 1e-9, "{kind} alpha={} vs {beta}: sup {sup}", alpha.get());
        }
    }

    #[test]
    fn small_s_leading_power_constants() {
        let s = 1e-4;
        for &al in &[0.25, 0.5, 0.75] {
            let alpha = a(al);
            let f = pdf_gue_ginibre(s, alpha).unwrap();
            assert_relative_eq!(f / s.powi(3), 1.0 / (32.0 * al), max_relative = 1e-3);
            let f = pdf_ginibre_gse(s, alpha).unwrap();
            assert_relative_eq!(f / s.powi(4), 1.0 / (48.0 * SQRT_2PI * al), max_relative = 1e-3);
            let f = pdf_goe_ginibre(s, alpha, ZMode::ExactQuadrature).unwrap();
            assert_relative_eq!(f / s.powi(3), 1.0 / (32.0 * al * al), max_relative = 1e-3);
        }
    }

    #[test]
    fn normalized_table_has_unit_norm() {
        let grid = GridSpec::new(0.0, 5.0, 0.01).unwrap();
        let table = pdf_table(
            Family::Transition(TransitionKind::GueToGinibre),
            Some(a(1.0)),
            grid,
            Scale::UnitMeanR,
            ZMode::ExactQuadrature,
            false,
        )
        .unwrap();
        assert!((table.trapezoid_norm() - 1.0).abs() < 1e-4);
        assert_eq!(table.rows.len(), 501);
        assert_eq!(table.mean_s, MEAN_GINIBRE);
    }

    #[test]
    fn goe_table_linear_rise_at_goe_endpoint() {
        let grid = GridSpec::new(0.0, 0.1, 0.01).unwrap();
        let table = pdf_table(
            Family::Transition(TransitionKind::GoeToGinibre),
            Some(a(0.0)),
            grid,
            Scale::UnitMeanR,
            ZMode::ExactQuadrature,
            false,
        )
        .unwrap();
        // density/r constant on the first rows = linear rise
        let r1 = table.rows[1].1 / table.rows[1].0;
        let r5 = table.rows[5].1 / table.rows[5].0;
        assert_relative_eq!(r1, r5, max_relative = 1e-2);
    }

    #[test]
    fn gse_table_matches_pointwise_calls() {
        let grid = GridSpec::new(0.0, 3.0, 0.25).unwrap();
        let alpha = a(0.5);
        let table = pdf_table(
            Family::Transition(TransitionKind::GinibreToGse),
            Some(alpha),
            grid,
            Scale::UnitMeanR,
            ZMode::ExactQuadrature,
            false,
        )
        .unwrap();
        for &(r, d) in &table.rows {
            assert_relative_eq!(d, pdf_normalized(TransitionKind::GinibreToGse, r, alpha).unwrap(), max_relative = 1e-13);
        }
    }

    #[test]
    fn renormalized_cheb_table_is_flagged_and_unit_norm() {
        let grid = GridSpec::new(0.0, 5.0, 0.01).unwrap();
        let table = pdf_table(
            Family::Transition(TransitionKind::GoeToGinibre),
            Some(a(0.5)),
            grid,
            Scale::UnitMeanR,
            ZMode::ChebApprox,
            true,
        )
        .unwrap();
        assert!(table.renormalized);
        assert_eq!(table.z_mode, Some(ZMode::ChebApprox));
        assert!((table.trapezoid_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn surmise_tables_and_usage_errors() {
        let grid = GridSpec::new(0.0, 5.0, 0.05).unwrap();
        let table = pdf_table(
            Family::Surmise(SurmiseBeta::Gse),
            None,
            grid,
            Scale::UnitMeanR,
            ZMode::ExactQuadrature,
            false,
        )
        .unwrap();
        assert_eq!(table.mean_s, 1.0);
        // beta=4 quartic rise peaks near r = sqrt(2/C2) ~ 0.94
        let peak_row = table
            .rows
            .iter()
            .cloned()
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        assert!((peak_row.0 - 0.94).abs() < 0.06, "peak at {}", peak_row.0);

        assert!(pdf_table(
            Family::Surmise(SurmiseBeta::Gse),
            Some(a(0.5)),
            grid,
            Scale::UnitMeanR,
            ZMode::ExactQuadrature,
            false
        )
        .is_err());
        assert!(pdf_table(
            Family::Transition(TransitionKind::GueToGinibre),
            None,
            grid,
            Scale::UnitMeanR,
            ZMode::ExactQuadrature,
            false
        )
        .is_err());
    }
}
