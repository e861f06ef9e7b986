//! The four pure unit-mean spacing densities `P(s) = C1 s^beta e^(-C2 s^2)`
//! for beta = 1 (GOE), 2 (GUE), 3 (Ginibre) and 4 (GSE). They are the
//! endpoint references for every transitional family.
//!
//! The constants are derived from gamma functions at call time instead of
//! being hard-coded decimals, so unit norm and unit mean hold to full
//! precision by construction.

use crate::specfun::gamma_raw;
use crate::{Error, Result};
use serde::Serialize;

/// The admissible level-repulsion exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurmiseBeta {
    Goe,
    Gue,
    Ginibre,
    Gse,
}

impl SurmiseBeta {
    pub const ALL: [SurmiseBeta; 4] =
        [SurmiseBeta::Goe, SurmiseBeta::Gue, SurmiseBeta::Ginibre, SurmiseBeta::Gse];

    pub fn beta(self) -> u32 {
        match self {
            SurmiseBeta::Goe => 1,
            SurmiseBeta::Gue => 2,
            SurmiseBeta::Ginibre => 3,
            SurmiseBeta::Gse => 4,
        }
    }

    pub fn from_beta(beta: u32) -> Result<Self> {
        match beta {
            1 => Ok(SurmiseBeta::Goe),
            2 => Ok(SurmiseBeta::Gue),
            3 => Ok(SurmiseBeta::Ginibre),
            4 => Ok(SurmiseBeta::Gse),
            other => Err(Error::Domain(format!(
                "surmise exponent must be 1, 2, 3 or 4, got {other}"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SurmiseBeta::Goe => "goe",
            SurmiseBeta::Gue => "gue",
            SurmiseBeta::Ginibre => "ginibre",
            SurmiseBeta::Gse => "gse",
        }
    }
}

impl std::fmt::Display for SurmiseBeta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SurmiseBeta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "goe" | "1" => Ok(SurmiseBeta::Goe),
            "gue" | "2" => Ok(SurmiseBeta::Gue),
            "ginibre" | "3" => Ok(SurmiseBeta::Ginibre),
            "gse" | "4" => Ok(SurmiseBeta::Gse),
            other => Err(Error::Usage(format!(
                "unknown surmise '{other}' (expected goe/gue/ginibre/gse or 1-4)"
            ))),
        }
    }
}

/// Amplitude and Gaussian rate of a unit-norm, unit-mean surmise density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurmiseConstants {
    pub c1: f64,
    pub c2: f64,
}

/// Normalization pair for the given exponent:
/// `C2 = [Gamma((b+2)/2) / Gamma((b+1)/2)]^2`,
/// `C1 = 2 C2^((b+1)/2) / Gamma((b+1)/2)`.
pub fn surmise_constants(beta: SurmiseBeta) -> SurmiseConstants {
    let b = beta.beta() as f64;
    let g_half = gamma_raw((b + 1.0) / 2.0);
    let ratio = gamma_raw((b + 2.0) / 2.0) / g_half;
    let c2 = ratio * ratio;
    let c1 = 2.0 * c2.powf((b + 1.0) / 2.0) / g_half;
    SurmiseConstants { c1, c2 }
}

/// Unit-mean spacing density `C1 s^beta e^(-C2 s^2)` at `s >= 0`.
pub fn surmise_pdf(beta: SurmiseBeta, s: f64) -> Result<f64> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::Domain(format!("surmise_pdf requires s >= 0, got {s}")));
    }
    let k = surmise_constants(beta);
    Ok(k.c1 * s.powi(beta.beta() as i32) * (-k.c2 * s * s).exp())
}

/// Closed-form CDF of the unit-mean density, used as a reference
/// distribution in sampling tests. Obtained by repeated integration by
/// parts of `s^beta e^(-C2 s^2)`.
pub fn surmise_cdf(beta: SurmiseBeta, s: f64) -> Result<f64> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::Domain(format!("surmise_cdf requires s >= 0, got {s}")));
    }
    let SurmiseConstants { c1, c2 } = surmise_constants(beta);
    let e = (-c2 * s * s).exp();
    let sqrt_c2 = c2.sqrt();
    let erf_term = crate::specfun::erf_raw(sqrt_c2 * s);
    let v = match beta {
        // int_0^s C1 t e^(-C2 t^2) dt
        SurmiseBeta::Goe => c1 / (2.0 * c2) * (1.0 - e),
        // int t^2: (sqrt(pi) erf / (4 C2^1.5) - s e / (2 C2)) C1
        SurmiseBeta::Gue => {
            c1 * (std::f64::consts::PI.sqrt() * erf_term / (4.0 * c2 * sqrt_c2)
                - s * e / (2.0 * c2))
        }
        // int t^3: (1 - (1 + C2 s^2) e) / (2 C2^2) * C1
        SurmiseBeta::Ginibre => c1 * (1.0 - (1.0 + c2 * s * s) * e) / (2.0 * c2 * c2),
        // int t^4: 3 sqrt(pi) erf / (8 C2^2.5) - e s (3 + 2 C2 s^2)/(4 C2^2)
        SurmiseBeta::Gse => {
            c1 * (3.0 * std::f64::consts::PI.sqrt() * erf_term / (8.0 * c2 * c2 * sqrt_c2)
                - s * e * (3.0 + 2.0 * c2 * s * s) / (4.0 * c2 * c2))
        }
    };
    Ok(v.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{integrate_half_line, QuadratureSpec};
    use approx::assert_relative_eq;

    #[test]
    fn constants_match_closed_forms() {
        let pi = std::f64::consts::PI;
        let k = surmise_constants(SurmiseBeta::Goe);
        assert_relative_eq!(k.c1, pi / 2.0, max_relative = 1e-13);
        assert_relative_eq!(k.c2, pi / 4.0, max_relative = 1e-13);

        let k = surmise_constants(SurmiseBeta::Gue);
        assert_relative_eq!(k.c1, 32.0 / (pi * pi), max_relative = 1e-13);
        assert_relative_eq!(k.c2, 4.0 / pi, max_relative = 1e-13);

        let k = surmise_constants(SurmiseBeta::Ginibre);
        assert_relative_eq!(k.c1, 81.0 * pi * pi / 128.0, max_relative = 1e-13);
        assert_relative_eq!(k.c2, 9.0 * pi / 16.0, max_relative = 1e-13);

        let k = surmise_constants(SurmiseBeta::Gse);
        assert_relative_eq!(k.c1, 262144.0 / (729.0 * pi.powi(3)), max_relative = 1e-13);
        assert_relative_eq!(k.c2, 64.0 / (9.0 * pi), max_relative = 1e-13);
    }

    #[test]
    fn norm_and_mean_are_one() {
        let spec = QuadratureSpec::default();
        for beta in SurmiseBeta::ALL {
            let norm = integrate_half_line(|s| surmise_pdf(beta, s).unwrap(), &spec).unwrap();
            let mean = integrate_half_line(|s| s * surmise_pdf(beta, s).unwrap(), &spec).unwrap();
            assert!((norm.value - 1.0).abs() < 1e-10, "{beta}: norm {}", norm.value);
            assert!((mean.value - 1.0).abs() < 1e-10, "{beta}: mean {}", mean.value);
        }
    }

    #[test]
    fn pdf_reference_values() {
        assert_eq!(surmise_pdf(SurmiseBeta::Goe, 0.0).unwrap(), 0.0);
        // (32/pi^2) e^(-4/pi), frozen from the constants
        assert_relative_eq!(
            surmise_pdf(SurmiseBeta::Gue, 1.0).unwrap(),
            0.90758921091668139,
            max_relative = 1e-13
        );
        assert!(surmise_pdf(SurmiseBeta::Gue, -0.5).is_err());
    }

    #[test]
    fn ginibre_peak_location() {
        // argmax of s^3 e^(-C2 s^2) at sqrt(3/(2 C2)) = sqrt(8/(3 pi))
        let peak = (8.0 / (3.0 * std::f64::consts::PI)).sqrt();
        assert_relative_eq!(peak, 0.92131773192356128, max_relative = 1e-14);
        let p = |s: f64| surmise_pdf(SurmiseBeta::Ginibre, s).unwrap();
        let h = 1e-5;
        assert!(p(peak) > p(peak - h));
        assert!(p(peak) > p(peak + h));
    }

    #[test]
    fn small_s_log_slope_equals_beta() {
        // least-squares slope of log P vs log s on s in [1e-3, 1e-2]
        for beta in SurmiseBeta::ALL {
            let xs: Vec<f64> = (0..10).map(|i| 1e-3 + i as f64 * 1e-3).collect();
            let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
            for &s in &xs {
                let x = s.ln();
                let y = surmise_pdf(beta, s).unwrap().ln();
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            let n = xs.len() as f64;
            let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            assert!(
                (slope - beta.beta() as f64).abs() < 0.01,
                "{beta}: slope {slope}"
            );
        }
    }

    #[test]
    fn cdf_matches_quadrature_of_pdf() {
        let spec = QuadratureSpec::default();
        for beta in SurmiseBeta::ALL {
            for &s in &[0.3, 0.9, 1.7, 3.0] {
                let direct = surmise_cdf(beta, s).unwrap();
                let quad = crate::oracle::integrate_1d(
                    |t| surmise_pdf(beta, t).unwrap(),
                    0.0,
                    s,
                    &spec,
                )
                .unwrap();
                assert_relative_eq!(direct, quad.value, max_relative = 1e-10);
            }
        }
        // GOE closed form: 1 - e^(-pi s^2/4) at s=1
        assert_relative_eq!(
            surmise_cdf(SurmiseBeta::Goe, 1.0).unwrap(),
            0.54406187223400376,
            max_relative = 1e-13
        );
    }
}
