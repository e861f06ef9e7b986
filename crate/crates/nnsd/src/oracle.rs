//! Independent adaptive-quadrature engine and the defining shell
//! integrals of the spacing densities in raw form.
//!
//! Everything the closed forms in [`crate::transition`] claim is checked
//! against this module: the angular integrals are evaluated here exactly
//! as they come out of the Gaussian shell construction, with no Bessel /
//! erf / elliptic reductions, so agreement between the two routes is
//! meaningful evidence. The module also serves arbitrary `(a1, a2, a3)`
//! triples numerically, which is the only route available for parameter
//! combinations without a closed form.

use crate::specfun::erf_raw;
use crate::{Alpha, AlphaVec, Error, Result, TransitionKind};
use serde::Serialize;
use std::collections::BinaryHeap;

/// Panel rule used by the adaptive engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PanelRule {
    /// 15-point Kronrod extension of 7-point Gauss (default).
    GaussKronrod,
    /// Classic adaptive Simpson with Richardson error estimate.
    AdaptiveSimpson,
}

/// Tolerances and limits for adaptive integration.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    pub panel_rule: PanelRule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_depth: 40,
            panel_rule: PanelRule::GaussKronrod,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) {
            return Err(Error::Usage("quadrature tolerances must be positive".into()));
        }
        if max_depth == 0 {
            return Err(Error::Usage("quadrature max_depth must be at least 1".into()));
        }
        Ok(QuadratureSpec { abs_tol, rel_tol, max_depth, panel_rule: PanelRule::GaussKronrod })
    }

    /// Tightened tolerances for the inner integral of a nested pair, so
    /// the inner noise floor stays below the outer error estimate.
    pub(crate) fn child(&self) -> QuadratureSpec {
        QuadratureSpec {
            abs_tol: (self.abs_tol * 0.01).max(1e-15),
            rel_tol: (self.rel_tol * 0.01).max(1e-13),
            ..*self
        }
    }
}

/// Value and error estimate of an adaptive integration.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Quadrature {
    pub value: f64,
    pub err_est: f64,
}

// 15-point Kronrod nodes (positive half) with embedded 7-point Gauss.
// Odd indices are the Gauss nodes; index 7 is the shared center.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct PanelEstimate {
    value: f64,
    err: f64,
}

/// One Gauss-Kronrod panel. Error rescaling follows the QUADPACK recipe
/// so the estimate stays meaningful when the integrand is nearly zero on
/// the panel.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<PanelEstimate> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut res_kronrod = fc * WGK[7];
    let mut res_gauss = fc * WG[3];
    let mut res_abs = res_kronrod.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        let fsum = f1 + f2;
        res_kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * fsum;
        }
    }

    if !res_kronrod.is_finite() {
        return Err(Error::Numeric(format!(
            "integrand returned a non-finite value on [{a}, {b}]"
        )));
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let raw_err = ((res_kronrod - res_gauss) * half).abs();
    res_abs *= half.abs();
    res_asc *= half.abs();

    let mut err = raw_err;
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    Ok(PanelEstimate { value: res_kronrod * half, err })
}

#[derive(PartialEq)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    depth: u32,
}

impl Eq for Segment {}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

const MAX_SEGMENTS: usize = 1 << 15;

/// Adaptively integrate `f` over the finite interval `[a, b]`.
///
/// Bisects the segment with the worst error estimate until the summed
/// estimate meets `max(abs_tol, rel_tol * |value|)`. Non-convergence at
/// `max_depth` returns [`Error::Quadrature`] carrying the partial value.
pub fn integrate_1d<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    integrate_segmented(f, &[a, b], spec)
}

/// Like [`integrate_1d`] but seeded with the segments between the given
/// breakpoints. Sampling-based adaptive rules cannot see features that
/// fall between their nodes, so integrands with known sharp structure
/// (the axial boundary layers here) must bracket it explicitly.
pub fn integrate_segmented<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    if points.len() < 2 {
        return Err(Error::Usage("need at least two integration breakpoints".into()));
    }
    for w in points.windows(2) {
        if !w[0].is_finite() || !w[1].is_finite() {
            return Err(Error::Usage(format!(
                "integration breakpoints must be finite, got [{}, {}]",
                w[0], w[1]
            )));
        }
        if w[0] >= w[1] {
            return Err(Error::Usage(format!(
                "integration breakpoints must increase strictly, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    match spec.panel_rule {
        PanelRule::GaussKronrod => integrate_gk(&f, points, spec),
        PanelRule::AdaptiveSimpson => {
            let mut value = 0.0;
            let mut err = 0.0;
            let seg_spec = QuadratureSpec {
                abs_tol: spec.abs_tol / (points.len() - 1) as f64,
                ..*spec
            };
            for w in points.windows(2) {
                let q = integrate_simpson(&f, w[0], w[1], &seg_spec)?;
                value += q.value;
                err += q.err_est;
            }
            Ok(Quadrature { value, err_est: err })
        }
    }
}

fn integrate_gk<F: Fn(f64) -> f64>(
    f: &F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    let mut heap = BinaryHeap::new();
    let mut total_value = 0.0;
    let mut total_err = 0.0;
    for w in points.windows(2) {
        let first = gk15(f, w[0], w[1])?;
        total_value += first.value;
        total_err += first.err;
        heap.push(Segment { a: w[0], b: w[1], value: first.value, err: first.err, depth: 0 });
    }

    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * total_value.abs());
        if total_err <= tol {
            return Ok(Quadrature { value: total_value, err_est: total_err });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        if worst.depth >= spec.max_depth || heap.len() + 2 > MAX_SEGMENTS {
            return Err(Error::Quadrature { value: total_value, err_est: total_err });
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval no longer splittable in f64
            return Err(Error::Quadrature { value: total_value, err_est: total_err });
        }
        let left = gk15(f, worst.a, mid)?;
        let right = gk15(f, mid, worst.b)?;
        total_value += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(Segment { a: worst.a, b: mid, value: left.value, err: left.err, depth: worst.depth + 1 });
        heap.push(Segment { a: mid, b: worst.b, value: right.value, err: right.err, depth: worst.depth + 1 });
    }
}

/// Breakpoints for an angular integral over `[0, pi]` whose integrand
/// carries the factor `e^(-xi_eff^2 cos^2 psi)`: a boundary layer of
/// width `~1/xi_eff` centered at `pi/2`. For thin layers the layer is
/// bracketed so the panel rule starts well-scaled.
fn axial_breakpoints(xi_eff: f64) -> Vec<f64> {
    let pi = std::f64::consts::PI;
    if xi_eff > 16.0 {
        let w = 8.0 / xi_eff;
        vec![0.0, 0.5 * pi - w, 0.5 * pi + w, pi]
    } else {
        vec![0.0, pi]
    }
}

/// Layer sharpness of the axial factor `e^(-(s^2/8)(1-a^2)/a^2 cos^2 psi)`.
fn axial_xi(s: f64, alpha: f64) -> f64 {
    s * (1.0 - alpha * alpha).max(0.0).sqrt() / (2.0 * std::f64::consts::SQRT_2 * alpha)
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn integrate_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    struct Ctx<'a, F> {
        f: &'a F,
        abs_tol: f64,
        rel_tol: f64,
        max_depth: u32,
    }

    fn rec<F: Fn(f64) -> f64>(
        ctx: &Ctx<'_, F>,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> std::result::Result<(f64, f64), (f64, f64)> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (ctx.f)(lm);
        let frm = (ctx.f)(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let err = (left + right - whole) / 15.0;
        if err.abs() <= tol || err.abs() <= ctx.rel_tol * (left + right).abs() {
            return Ok((left + right + err, err.abs()));
        }
        if depth >= ctx.max_depth {
            return Err((left + right + err, err.abs()));
        }
        let half_tol = 0.5 * tol;
        match (
            rec(ctx, a, m, fa, flm, fm, left, half_tol, depth + 1),
            rec(ctx, m, b, fm, frm, fb, right, half_tol, depth + 1),
        ) {
            (Ok((v1, e1)), Ok((v2, e2))) => Ok((v1 + v2, e1 + e2)),
            (r1, r2) => {
                let (v1, e1) = r1.unwrap_or_else(|x| x);
                let (v2, e2) = r2.unwrap_or_else(|x| x);
                Err((v1 + v2, e1 + e2))
            }
        }
    }

    let ctx = Ctx { f, abs_tol: spec.abs_tol, rel_tol: spec.rel_tol, max_depth: spec.max_depth };
    let fa = f(a);
    let fm = f(0.5 * (a + b));
    let fb = f(b);
    if !fa.is_finite() || !fm.is_finite() || !fb.is_finite() {
        return Err(Error::Numeric("integrand returned a non-finite value".into()));
    }
    let whole = simpson(fa, fm, fb, b - a);
    match rec(&ctx, a, b, fa, fm, fb, whole, ctx.abs_tol, 0) {
        Ok((value, err_est)) => Ok(Quadrature { value, err_est }),
        Err((value, err_est)) => Err(Error::Quadrature { value, err_est }),
    }
}

/// Integrate `f` over `[0, inf)` through the substitution `s = t/(1-t)`.
///
/// Intended for integrands with Gaussian decay; the map keeps the
/// adaptive rule panel-efficient on the compact image.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<Quadrature> {
    integrate_1d(
        |t| {
            let u = 1.0 - t;
            if u <= 0.0 {
                return 0.0;
            }
            let s = t / u;
            if !s.is_finite() {
                return 0.0;
            }
            f(s) / (u * u)
        },
        0.0,
        1.0,
        spec,
    )
}

/// Exponent of the Gaussian shell integrand for the two 1-D families:
/// `sin^2 + cos^2/a^2` scaled by `s^2/8`.
#[inline]
fn axial_exponent(s: f64, alpha: f64, psi: f64) -> f64 {
    let (sin, cos) = psi.sin_cos();
    -(s * s / 8.0) * (sin * sin + cos * cos / (alpha * alpha))
}

/// The defining angular integral of a transitional density, evaluated
/// adaptively in raw form. `alpha` must lie strictly inside `(0, 1)`:
/// both endpoints make the integrand representation singular.
pub fn pdf_integral(
    kind: TransitionKind,
    s: f64,
    alpha: Alpha,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let a = alpha.get();
    if !(0.0 < a && a < 1.0) {
        return Err(Error::Domain(format!(
            "pdf_integral requires alpha strictly inside (0, 1), got {a}"
        )));
    }
    if !s.is_finite() || s < 0.0 {
        return Err(Error::Domain(format!("pdf_integral requires s >= 0, got {s}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let pi = std::f64::consts::PI;
    let outer_pts = axial_breakpoints(axial_xi(s, a));
    match kind {
        TransitionKind::GueToGinibre => {
            let q = integrate_segmented(
                |psi| {
                    let sp = psi.sin();
                    axial_exponent(s, a, psi).exp() * sp * sp
                },
                &outer_pts,
                spec,
            )?;
            Ok(s.powi(3) / (16.0 * pi * a) * q.value)
        }
        TransitionKind::GinibreToGse => {
            let q = integrate_segmented(
                |psi| {
                    let sp = psi.sin();
                    axial_exponent(s, a, psi).exp() * sp * sp * sp
                },
                &outer_pts,
                spec,
            )?;
            Ok(s.powi(4) / (64.0 * (2.0 * pi).sqrt() * a) * q.value)
        }
        TransitionKind::GoeToGinibre => {
            let inner_spec = spec.child();
            let q = integrate_segmented(
                |psi| {
                    let (sin_psi, cos_psi) = psi.sin_cos();
                    let inner_pts = axial_breakpoints(axial_xi(s * sin_psi, a));
                    let inner = integrate_segmented(
                        |theta| {
                            let (sin_th, cos_th) = theta.sin_cos();
                            let expo = -(s * s / 8.0)
                                * (sin_psi * sin_psi * sin_th * sin_th
                                    + (sin_psi * sin_psi * cos_th * cos_th
                                        + cos_psi * cos_psi)
                                        / (a * a));
                            expo.exp() * sin_th
                        },
                        &inner_pts,
                        &inner_spec,
                    )
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                    sin_psi * sin_psi * inner
                },
                &outer_pts,
                spec,
            )?;
            Ok(s.powi(3) / (32.0 * pi * a * a) * q.value)
        }
    }
}

/// The 2-D `GOE -> Ginibre` integral with the nesting order swapped
/// (theta outermost). Used to check invariance under nesting order.
pub fn pdf_integral_goe_swapped(s: f64, alpha: Alpha, spec: &QuadratureSpec) -> Result<f64> {
    let a = alpha.get();
    if !(0.0 < a && a < 1.0) {
        return Err(Error::Domain(format!(
            "pdf_integral_goe_swapped requires alpha strictly inside (0, 1), got {a}"
        )));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let pi = std::f64::consts::PI;
    let inner_spec = spec.child();
    let q = integrate_segmented(
        |theta| {
            let (sin_th, cos_th) = theta.sin_cos();
            // psi-layer sharpness at this theta
            let k1 = sin_th * sin_th + cos_th * cos_th / (a * a);
            let xi_inner =
                s / (2.0 * std::f64::consts::SQRT_2) * (1.0 / (a * a) - k1).max(0.0).sqrt();
            let inner = integrate_segmented(
                |psi: f64| {
                    let (sin_psi, cos_psi) = psi.sin_cos();
                    let expo = -(s * s / 8.0)
                        * (sin_psi * sin_psi * sin_th * sin_th
                            + (sin_psi * sin_psi * cos_th * cos_th + cos_psi * cos_psi)
                                / (a * a));
                    expo.exp() * sin_psi * sin_psi
                },
                &axial_breakpoints(xi_inner),
                &inner_spec,
            )
            .map(|r| r.value)
            .unwrap_or(f64::NAN);
            sin_th * inner
        },
        &axial_breakpoints(axial_xi(s, a)),
        spec,
    )?;
    Ok(s.powi(3) / (32.0 * pi * a * a) * q.value)
}

/// Numeric spacing density for an arbitrary `(a1, a2, a3)` by nested
/// quadrature over the surviving polar angles of the Gaussian shell.
///
/// The two unit-variance directions are always present; each nonzero
/// component adds one dimension. The azimuthal integral contributes its
/// `2 pi` analytically, leaving one polar integral per nonzero component.
pub fn pdf_general(s: f64, alpha: &AlphaVec, spec: &QuadratureSpec) -> Result<f64> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::Domain(format!("pdf_general requires s >= 0, got {s}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let scales = alpha.nonzero();
    let m = scales.len();
    let n_dim = m + 2;
    let half_s = 0.5 * s;
    let two_pi = 2.0 * std::f64::consts::PI;

    // (1/2) (s/2)^(N-1) (2 pi)^(-N/2) / prod(scales) * 2 pi * angular
    let prefactor = 0.5 * half_s.powi(n_dim as i32 - 1) * two_pi.powf(-(n_dim as f64) / 2.0)
        / scales.iter().product::<f64>()
        * two_pi;

    if m == 0 {
        return Ok(prefactor * (-s * s / 8.0).exp());
    }

    // Angle k (outermost first) pairs with the last nonzero component,
    // mirroring the hyperspherical assignment x_N = cos(theta_1), etc.
    let inv_sq: Vec<f64> = scales.iter().rev().map(|a| 1.0 / (a * a)).collect();
    let v = nested_angular(s, &inv_sq, 0, 1.0, spec)?;
    Ok(prefactor * v)
}

/// Recursive nested quadrature over polar angles. `sin_prod_sq` carries
/// the product of sin^2 of the enclosing angles; the weight at level `k`
/// is sin^(M+1-k) with 1-based k.
fn nested_angular(
    s: f64,
    inv_sq: &[f64],
    level: usize,
    sin_prod_sq: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let m = inv_sq.len();
    let weight_pow = (m - level) as i32; // sin exponent at this level
    let last = level + 1 == m;
    let child_spec = spec.child();
    // layer sharpness of e^(-(s^2/8) sin_prod^2 (inv_sq - 1) cos^2)
    let xi_eff = s / (2.0 * std::f64::consts::SQRT_2)
        * (sin_prod_sq * (inv_sq[level] - 1.0).max(0.0)).sqrt();
    let q = integrate_segmented(
        |theta: f64| {
            let (sin_t, cos_t) = theta.sin_cos();
            let axis = sin_prod_sq * cos_t * cos_t * inv_sq[level];
            let w = sin_t.powi(weight_pow);
            let inner_prod_sq = sin_prod_sq * sin_t * sin_t;
            if last {
                // all angles fixed: remaining directions are the two unit
                // variables, contributing inner_prod_sq with coefficient 1
                let expo = -(s * s / 8.0) * (axis + inner_prod_sq);
                w * expo.exp()
            } else {
                let partial = (-(s * s / 8.0) * axis).exp();
                if partial == 0.0 {
                    return 0.0;
                }
                match nested_angular(s, inv_sq, level + 1, inner_prod_sq, &child_spec) {
                    Ok(v) => w * partial * v,
                    Err(_) => f64::NAN,
                }
            }
        },
        &axial_breakpoints(xi_eff),
        spec,
    )?;
    Ok(q.value)
}

/// Mean spacing of a transitional family by quadrature of `s * F(s)` in
/// raw form. `alpha` strictly inside `(0, 1)`.
pub fn mean_numeric(kind: TransitionKind, alpha: Alpha, spec: &QuadratureSpec) -> Result<f64> {
    let inner = spec.child();
    let q = integrate_half_line(
        |s| s * pdf_integral(kind, s, alpha, &inner).unwrap_or(f64::NAN),
        spec,
    )?;
    Ok(q.value)
}

/// Mean spacing for an arbitrary `(a1, a2, a3)` triple.
pub fn mean_numeric_general(alpha: &AlphaVec, spec: &QuadratureSpec) -> Result<f64> {
    let inner = spec.child();
    let q = integrate_half_line(|s| s * pdf_general(s, alpha, &inner).unwrap_or(f64::NAN), spec)?;
    Ok(q.value)
}

/// The angular kernel of the `GOE -> Ginibre` reduction:
/// `Z(xi) = int_0^pi e^(-xi^2 cos^2 psi) erf(xi sin psi) sin psi d psi`.
///
/// Vanishes linearly as `xi -> 0` (like `sqrt(pi) xi`) and decays as
/// `sqrt(pi)/xi` for large `xi`.
pub fn z_integral(xi: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !xi.is_finite() || xi < 0.0 {
        return Err(Error::Domain(format!("z_integral requires xi >= 0, got {xi}")));
    }
    if xi == 0.0 {
        return Ok(0.0);
    }
    let q = integrate_segmented(
        |psi: f64| {
            let (sin_p, cos_p) = psi.sin_cos();
            (-xi * xi * cos_p * cos_p).exp() * erf_raw(xi * sin_p) * sin_p
        },
        &axial_breakpoints(xi),
        spec,
    )?;
    Ok(q.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn classical_integrals() {
        // int_0^pi sin^2 = pi/2
        let q = integrate_1d(|x| x.sin().powi(2), 0.0, std::f64::consts::PI, &spec()).unwrap();
        assert_relative_eq!(q.value, std::f64::consts::FRAC_PI_2, max_relative = 1e-12);
        assert!(q.err_est < 1e-10);

        // defining integral of K(0.5), against the AGM value
        let q = integrate_1d(
            |t| 1.0 / (1.0 - 0.5 * t.sin().powi(2)).sqrt(),
            0.0,
            std::f64::consts::FRAC_PI_2,
            &spec(),
        )
        .unwrap();
        assert_relative_eq!(q.value, 1.8540746773013719, max_relative = 1e-12);

        // int_0^inf s^3 e^(-s^2/8) ds = 32
        let q = integrate_half_line(|s| s.powi(3) * (-s * s / 8.0).exp(), &spec()).unwrap();
        assert_relative_eq!(q.value, 32.0, max_relative = 1e-11);
    }

    #[test]
    fn adaptive_simpson_agrees_with_gauss_kronrod() {
        let simpson_spec = QuadratureSpec {
            panel_rule: PanelRule::AdaptiveSimpson,
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            max_depth: 40,
            ..spec()
        };
        let q = integrate_1d(|x| x.sin().powi(2), 0.0, std::f64::consts::PI, &simpson_spec).unwrap();
        assert_relative_eq!(q.value, std::f64::consts::FRAC_PI_2, max_relative = 1e-9);
        let q = integrate_1d(|x| (-x * x).exp(), 0.0, 6.0, &simpson_spec).unwrap();
        assert_relative_eq!(q.value, std::f64::consts::PI.sqrt() / 2.0, max_relative = 1e-9);
    }

    #[test]
    fn narrow_boundary_layer_is_resolved() {
        // centered layer, the shape the axial integrands develop at pi/2;
        // mass sqrt(pi)*w
        let w = 0.01;
        let center = std::f64::consts::FRAC_PI_2;
        let q = integrate_1d(
            |x| (-((x - center) / w).powi(2)).exp(),
            0.0,
            std::f64::consts::PI,
            &spec(),
        )
        .unwrap();
        assert_relative_eq!(q.value, std::f64::consts::PI.sqrt() * w, max_relative = 1e-9);

        // off-center bump wide enough for the first panel to notice
        let w = 0.02;
        let q = integrate_1d(
            |x| (-((x - 1.0) / w).powi(2)).exp(),
            0.0,
            std::f64::consts::PI,
            &spec(),
        )
        .unwrap();
        assert_relative_eq!(q.value, std::f64::consts::PI.sqrt() * w, max_relative = 1e-9);

        // a needle between nodes is invisible without a bracketing hint
        let w = 1e-3;
        let q = integrate_segmented(
            |x: f64| (-((x - 1.0) / w).powi(2)).exp(),
            &[0.0, 0.99, 1.01, std::f64::consts::PI],
            &spec(),
        )
        .unwrap();
        assert_relative_eq!(q.value, std::f64::consts::PI.sqrt() * w, max_relative = 1e-9);
    }

    #[test]
    fn usage_and_failure_paths() {
        assert!(integrate_1d(|x| x, 1.0, 0.0, &spec()).is_err());
        assert!(integrate_1d(|x| x, f64::NEG_INFINITY, 0.0, &spec()).is_err());
        assert!(integrate_segmented(|x| x, &[0.0], &spec()).is_err());
        assert!(integrate_segmented(|x| x, &[0.0, 2.0, 1.0], &spec()).is_err());
        // depth starvation: an integrable near-singularity needs far more
        // than two bisection levels for 1e-12
        let starved = QuadratureSpec { max_depth: 2, ..spec() };
        let r = integrate_1d(|x: f64| (x - 0.49).abs().powf(-0.4), 0.0, 1.0, &starved);
        match r {
            Err(Error::Quadrature { value, err_est }) => {
                assert!(err_est > 1e-12);
                assert!(value.is_finite());
            }
            other => panic!("expected quadrature failure, got {other:?}"),
        }
    }

    #[test]
    fn gue_ginibre_raw_integral_reference() {
        // frozen from 35-digit quadrature of the defining integral
        let v = pdf_integral(
            TransitionKind::GueToGinibre,
            2.0,
            Alpha::new(0.5).unwrap(),
            &spec(),
        )
        .unwrap();
        assert_relative_eq!(v, 0.22170303298079889, max_relative = 1e-10);

        let v = pdf_integral(
            TransitionKind::GueToGinibre,
            3.7,
            Alpha::new(0.25).unwrap(),
            &spec(),
        )
        .unwrap();
        assert_relative_eq!(v, 0.25221167075717803, max_relative = 1e-10);
    }

    #[test]
    fn ginibre_gse_raw_integral_reference() {
        let v = pdf_integral(
            TransitionKind::GinibreToGse,
            2.0,
            Alpha::new(0.5).unwrap(),
            &spec(),
        )
        .unwrap();
        assert_relative_eq!(v, 0.12500466148802591, max_relative = 1e-10);
        // near the GSE endpoint the raw integral approaches s^4 e^(-s^2/8) (4/3) / (64 sqrt(2pi))
        let v = pdf_integral(
            TransitionKind::GinibreToGse,
            2.0,
            Alpha::new(1.0 - 1e-6).unwrap(),
            &spec(),
        )
        .unwrap();
        assert_relative_eq!(v, 0.080656908173047783, max_relative = 1e-5);
    }

    #[test]
    fn goe_ginibre_raw_integral_reference() {
        let v = pdf_integral(
            TransitionKind::GoeToGinibre,
            2.0,
            Alpha::new(0.5).unwrap(),
            &spec(),
        )
        .unwrap();
        assert_relative_eq!(v, 0.31413025098401382, max_relative = 1e-9);
        // small-s leading power: F / s^3 -> 1/(32 a^2)
        let s = 1e-4;
        let v = pdf_integral(TransitionKind::GoeToGinibre, s, Alpha::new(0.5).unwrap(), &spec())
            .unwrap();
        assert_relative_eq!(v / s.powi(3), 1.0 / (32.0 * 0.25), max_relative = 1e-3);
    }

    #[test]
    fn goe_nesting_order_invariance() {
        for &(s, a) in &[(1.0, 0.3), (2.0, 0.5), (4.0, 0.8)] {
            let alpha = Alpha::new(a).unwrap();
            let v1 = pdf_integral(TransitionKind::GoeToGinibre, s, alpha, &spec()).unwrap();
            let v2 = pdf_integral_goe_swapped(s, alpha, &spec()).unwrap();
            assert_relative_eq!(v1, v2, max_relative = 1e-8);
        }
    }

    #[test]
    fn pdf_integral_rejects_endpoints() {
        assert!(pdf_integral(TransitionKind::GueToGinibre, 1.0, Alpha::ZERO, &spec()).is_err());
        assert!(pdf_integral(TransitionKind::GueToGinibre, 1.0, Alpha::ONE, &spec()).is_err());
        assert!(pdf_integral(TransitionKind::GueToGinibre, -1.0, Alpha::new(0.5).unwrap(), &spec()).is_err());
    }

    #[test]
    fn general_matches_dedicated_families() {
        // (1, 0.5, 0) is the GUE->Ginibre integral by construction
        let av = AlphaVec::new(1.0, 0.5, 0.0).unwrap();
        let v = pdf_general(2.0, &av, &spec()).unwrap();
        assert_relative_eq!(v, 0.22170303298079889, max_relative = 1e-8);

        // frozen external references
        let av = AlphaVec::new(1.0, 0.7, 0.3).unwrap();
        let v = pdf_general(2.0, &av, &spec()).unwrap();
        assert_relative_eq!(v, 0.18282273643655364, max_relative = 1e-7);

        let av = AlphaVec::new(0.6, 0.0, 0.8).unwrap();
        let v = pdf_general(2.0, &av, &spec()).unwrap();
        assert_relative_eq!(v, 0.2407388624804857, max_relative = 1e-8);

        let av = AlphaVec::new(0.5, 0.0, 0.0).unwrap();
        let v = pdf_general(2.0, &av, &spec()).unwrap();
        assert_relative_eq!(v, 0.32102301795088961, max_relative = 1e-8);

        // endpoint triples
        let av = AlphaVec::new(1.0, 1.0, 1.0).unwrap();
        let v = pdf_general(2.0, &av, &spec()).unwrap();
        assert_relative_eq!(v, 0.080656908173047783, max_relative = 1e-6);

        let av = AlphaVec::new(0.0, 0.0, 0.0).unwrap();
        let v = pdf_general(2.0, &av, &spec()).unwrap();
        assert_relative_eq!(v, 0.30326532985631671, max_relative = 1e-12);
    }

    #[test]
    fn z_integral_reference_and_asymptotes() {
        assert_eq!(z_integral(0.0, &spec()).unwrap(), 0.0);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        // frozen references
        assert_relative_eq!(z_integral(1.0, &spec()).unwrap(), 1.1204045187322238, max_relative = 1e-9);
        assert_relative_eq!(z_integral(0.5, &spec()).unwrap(), 0.78413080772474611, max_relative = 1e-9);
        assert_relative_eq!(z_integral(2.0, &spec()).unwrap(), 0.86999511311269215, max_relative = 1e-9);
        // small-xi law: Z ~ sqrt(pi) xi
        let z = z_integral(1e-3, &spec()).unwrap();
        assert_relative_eq!(z, sqrt_pi * 1e-3, max_relative = 1e-4);
        // large-xi law: Z ~ sqrt(pi)/xi
        let z = z_integral(1e3, &spec()).unwrap();
        assert_relative_eq!(z, sqrt_pi / 1e3, max_relative = 1e-3);
        assert!(z_integral(-1.0, &spec()).is_err());
    }

    #[test]
    fn mean_numeric_reference() {
        let m = mean_numeric(TransitionKind::GueToGinibre, Alpha::new(0.5).unwrap(), &spec()).unwrap();
        assert_relative_eq!(m, 3.3622198709194015, max_relative = 1e-9);
        let m = mean_numeric_general(&AlphaVec::new(1.0, 1.0, 1.0).unwrap(), &spec()).unwrap();
        assert_relative_eq!(m, 4.2553843242819486, max_relative = 1e-6);
    }
}
