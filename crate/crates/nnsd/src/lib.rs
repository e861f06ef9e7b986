//! Nearest-neighbor level-spacing statistics for a 4x4 random-matrix model.
//!
//! The model interpolates continuously between the classical spacing
//! surmises (GOE, GUE, GSE) and the beta = 3 "Ginibre" case by scaling
//! three of its Gaussian degrees of freedom with parameters
//! `(a1, a2, a3)`, each in `[0, 1]`. This crate provides
//!
//! * the four pure unit-mean surmise densities ([`surmise`]),
//! * closed-form transitional spacing densities and their exact means for
//!   the three one-parameter families `GUE -> Ginibre`, `Ginibre -> GSE`
//!   and `GOE -> Ginibre` ([`transition`]),
//! * an independent adaptive-quadrature engine evaluating the defining
//!   shell integrals in raw form, used to certify every closed form
//!   ([`oracle`]),
//! * a reproducible Monte Carlo sampler of the underlying matrix
//!   ensemble, by direct spacing formula or by eigendecomposition
//!   ([`ensemble`]),
//! * a Chebyshev approximation toolbox for the one family whose angular
//!   integral has no elementary antiderivative ([`chebfit`]),
//! * histogram / CDF / Kolmogorov-Smirnov machinery ([`analysis`]), and
//! * the full verification suite behind `nnsd check` ([`checks`]).
//!
//! All densities are available on the raw spacing scale and on the
//! unit-mean scale `r = s / <s>`.

use serde::Serialize;

pub mod analysis;
pub mod chebfit;
pub mod checks;
pub mod ensemble;
pub mod oracle;
pub mod specfun;
pub mod surmise;
pub mod transition;

mod error;

pub use error::{Error, Result};

/// Interpolation parameter of a one-parameter transition family.
///
/// Guaranteed to lie in `[0, 1]` by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Alpha(f64);

impl Alpha {
    pub const ZERO: Alpha = Alpha(0.0);
    pub const ONE: Alpha = Alpha(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain(format!(
                "alpha must lie in [0, 1], got {value}"
            )));
        }
        Ok(Alpha(value))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The `(a1, a2, a3)` scaling triple of the matrix model.
///
/// Component order matches the three scaled Gaussian variables of the
/// model; a zero component removes its variable from the spacing formula
/// and drops the dimension of the underlying Gaussian space by one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaVec {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl AlphaVec {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        for (name, v) in [("a1", a1), ("a2", a2), ("a3", a3)] {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!(
                    "alpha component {name} must lie in [0, 1], got {v}"
                )));
            }
        }
        Ok(AlphaVec { a1, a2, a3 })
    }

    pub fn components(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    /// Nonzero components in declaration order.
    pub fn nonzero(&self) -> Vec<f64> {
        self.components().into_iter().filter(|&a| a > 0.0).collect()
    }

    /// Dimension of the Gaussian space: the two unit variables plus one
    /// per nonzero component.
    pub fn dimension(&self) -> usize {
        2 + self.nonzero().len()
    }
}

impl std::fmt::Display for AlphaVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{},{}", self.a1, self.a2, self.a3)
    }
}

impl std::str::FromStr for AlphaVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Usage(format!(
                "alpha vector must be three comma-separated values, got '{s}'"
            )));
        }
        let mut v = [0.0; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::Usage(format!("invalid alpha component '{part}'")))?;
        }
        AlphaVec::new(v[0], v[1], v[2])
    }
}

/// The three one-parameter transition families with closed-form densities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TransitionKind {
    /// `(1, a, 0)`: GUE at `a = 0`, Ginibre at `a = 1`.
    #[serde(rename = "gue-ginibre")]
    GueToGinibre,
    /// `(1, 1, a)`: Ginibre at `a = 0`, GSE at `a = 1`.
    #[serde(rename = "ginibre-gse")]
    GinibreToGse,
    /// `(a, a, 0)`: GOE at `a = 0`, Ginibre at `a = 1`.
    #[serde(rename = "goe-ginibre")]
    GoeToGinibre,
}

impl TransitionKind {
    pub const ALL: [TransitionKind; 3] = [
        TransitionKind::GueToGinibre,
        TransitionKind::GinibreToGse,
        TransitionKind::GoeToGinibre,
    ];

    /// The `(a1, a2, a3)` realization of this family at parameter `alpha`.
    pub fn alpha_vec(self, alpha: Alpha) -> AlphaVec {
        let a = alpha.get();
        match self {
            TransitionKind::GueToGinibre => AlphaVec { a1: 1.0, a2: a, a3: 0.0 },
            TransitionKind::GinibreToGse => AlphaVec { a1: 1.0, a2: 1.0, a3: a },
            TransitionKind::GoeToGinibre => AlphaVec { a1: a, a2: a, a3: 0.0 },
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TransitionKind::GueToGinibre => "gue-ginibre",
            TransitionKind::GinibreToGse => "ginibre-gse",
            TransitionKind::GoeToGinibre => "goe-ginibre",
        }
    }
}

impl std::fmt::Display for TransitionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TransitionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gue-ginibre" => Ok(TransitionKind::GueToGinibre),
            "ginibre-gse" => Ok(TransitionKind::GinibreToGse),
            "goe-ginibre" => Ok(TransitionKind::GoeToGinibre),
            _ => Err(Error::Usage(format!(
                "unknown transition '{s}' (expected gue-ginibre, ginibre-gse or goe-ginibre)"
            ))),
        }
    }
}

/// Abscissa scale of an evaluated density table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scale {
    /// Raw spacing `s`.
    #[serde(rename = "raw-s")]
    RawS,
    /// Unit-mean spacing `r = s / <s>`.
    #[serde(rename = "unit-mean")]
    UnitMeanR,
}

impl Scale {
    pub fn as_str(self) -> &'static str {
        match self {
            Scale::RawS => "raw-s",
            Scale::UnitMeanR => "unit-mean",
        }
    }
}

impl std::fmt::Display for Scale {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw-s" | "raw" => Ok(Scale::RawS),
            "unit-mean" | "unit-mean-r" => Ok(Scale::UnitMeanR),
            _ => Err(Error::Usage(format!(
                "unknown scale '{s}' (expected raw-s or unit-mean)"
            ))),
        }
    }
}

/// How the `GOE -> Ginibre` angular kernel is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZMode {
    /// Adaptive quadrature of the defining kernel integral. Exact up to
    /// quadrature tolerance; the correctness-critical default.
    #[serde(rename = "exact")]
    ExactQuadrature,
    /// The built-in Chebyshev surrogate. Fast, for bulk table generation;
    /// accuracy is whatever `chebfit::validate_fit` reports for the
    /// adopted coefficient set.
    #[serde(rename = "cheb")]
    ChebApprox,
}

impl ZMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ZMode::ExactQuadrature => "exact",
            ZMode::ChebApprox => "cheb",
        }
    }
}

impl std::fmt::Display for ZMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ZMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact-quadrature" => Ok(ZMode::ExactQuadrature),
            "cheb" | "cheb-approx" => Ok(ZMode::ChebApprox),
            _ => Err(Error::Usage(format!(
                "unknown z mode '{s}' (expected exact or cheb)"
            ))),
        }
    }
}

/// A uniform evaluation grid `start, start + step, ..., <= stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let g = GridSpec { start, stop, step };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.stop.is_finite() || !self.step.is_finite() {
            return Err(Error::Usage("grid bounds must be finite".into()));
        }
        if self.start < 0.0 {
            return Err(Error::Usage(format!(
                "grid start must be >= 0, got {}",
                self.start
            )));
        }
        if self.start >= self.stop {
            return Err(Error::Usage(format!(
                "grid start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.step <= 0.0 {
            return Err(Error::Usage(format!(
                "grid step must be positive, got {}",
                self.step
            )));
        }
        Ok(())
    }

    /// Grid points, inclusive of `stop` up to a half-step tolerance.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 0.5).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

impl std::str::FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Usage(format!(
                "grid must be start:stop:step, got '{s}'"
            )));
        }
        let parse = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Usage(format!("invalid grid component '{p}'")))
        };
        GridSpec::new(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_rejects_out_of_range() {
        assert!(Alpha::new(-0.1).is_err());
        assert!(Alpha::new(1.1).is_err());
        assert!(Alpha::new(f64::NAN).is_err());
        assert_eq!(Alpha::new(0.5).unwrap().get(), 0.5);
    }

    #[test]
    fn alpha_vec_dimension_counts_nonzero() {
        assert_eq!(AlphaVec::new(0.0, 0.0, 0.0).unwrap().dimension(), 2);
        assert_eq!(AlphaVec::new(1.0, 0.0, 0.0).unwrap().dimension(), 3);
        assert_eq!(AlphaVec::new(1.0, 0.5, 0.0).unwrap().dimension(), 4);
        assert_eq!(AlphaVec::new(1.0, 1.0, 1.0).unwrap().dimension(), 5);
    }

    #[test]
    fn transition_realizations() {
        let a = Alpha::new(0.3).unwrap();
        assert_eq!(
            TransitionKind::GueToGinibre.alpha_vec(a),
            AlphaVec { a1: 1.0, a2: 0.3, a3: 0.0 }
        );
        assert_eq!(
            TransitionKind::GinibreToGse.alpha_vec(a),
            AlphaVec { a1: 1.0, a2: 1.0, a3: 0.3 }
        );
        assert_eq!(
            TransitionKind::GoeToGinibre.alpha_vec(a),
            AlphaVec { a1: 0.3, a2: 0.3, a3: 0.0 }
        );
    }

    #[test]
    fn grid_spec_points_include_endpoint() {
        let g = GridSpec::new(0.0, 5.0, 0.01).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 501);
        assert!((pts[500] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn grid_spec_rejects_bad_steps() {
        assert!(GridSpec::new(0.0, 5.0, 0.0).is_err());
        assert!(GridSpec::new(0.0, 5.0, -0.1).is_err());
        assert!(GridSpec::new(3.0, 3.0, 0.1).is_err());
        assert!("0:5:0.01".parse::<GridSpec>().is_ok());
        assert!("0:5".parse::<GridSpec>().is_err());
    }
}
