//! The potential family, parameter validation and the Pekeris-type
//! centrifugal approximants.
//!
//! The full interaction is
//!
//! ```text
//! V(r) = -v1/r + (B/r - v2 cosh(alpha) / r^2) exp(-alpha r)
//! ```
//!
//! with named special cases obtained by zeroing couplings. The library is
//! unit-agnostic; the table conventions are hbar = mu = 1.

use crate::error::{Error, Result, Violation};
use std::fmt;
use std::str::FromStr;

/// Which member of the potential family a parameter set describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    /// Full four-coupling form.
    Cpsehp,
    /// v2 = 0: Coulomb plus screened Coulomb.
    Hellmann,
    /// v1 = v2 = 0: bare screened Coulomb.
    Yukawa,
    /// B = v1 = 0: screened inverse-square only.
    ScreenedHyperbolic,
    /// alpha = v1 = v2 = 0: V = B/r.
    Coulomb,
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PotentialKind::Cpsehp => "cpsehp",
            PotentialKind::Hellmann => "hellmann",
            PotentialKind::Yukawa => "yukawa",
            PotentialKind::ScreenedHyperbolic => "screened-hyperbolic",
            PotentialKind::Coulomb => "coulomb",
        };
        f.write_str(s)
    }
}

impl FromStr for PotentialKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "cpsehp" => Ok(PotentialKind::Cpsehp),
            "hellmann" => Ok(PotentialKind::Hellmann),
            "yukawa" => Ok(PotentialKind::Yukawa),
            "screened-hyperbolic" | "screened_hyperbolic" => Ok(PotentialKind::ScreenedHyperbolic),
            "coulomb" => Ok(PotentialKind::Coulomb),
            other => Err(format!(
                "unknown potential kind '{other}' (expected cpsehp, hellmann, yukawa, screened-hyperbolic or coulomb)"
            )),
        }
    }
}

/// Raw physical inputs before validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    /// Coulomb depth (energy * length).
    pub v1: f64,
    /// Inverse-square depth (energy * length^2).
    pub v2: f64,
    /// Screened-Coulomb strength (energy * length).
    pub b: f64,
    /// Screening parameter (1/length), >= 0.
    pub alpha: f64,
    /// Reduced mass, > 0.
    pub mu: f64,
    /// Reduced Planck constant, > 0.
    pub hbar: f64,
    pub kind: PotentialKind,
}

impl PotentialParams {
    /// Full family with hbar = mu = 1.
    pub fn cpsehp(v1: f64, v2: f64, b: f64, alpha: f64) -> Self {
        PotentialParams {
            v1,
            v2,
            b,
            alpha,
            mu: 1.0,
            hbar: 1.0,
            kind: PotentialKind::Cpsehp,
        }
    }

    pub fn hellmann(v1: f64, b: f64, alpha: f64) -> Self {
        PotentialParams {
            v1,
            v2: 0.0,
            b,
            alpha,
            mu: 1.0,
            hbar: 1.0,
            kind: PotentialKind::Hellmann,
        }
    }

    pub fn yukawa(b: f64, alpha: f64) -> Self {
        PotentialParams {
            v1: 0.0,
            v2: 0.0,
            b,
            alpha,
            mu: 1.0,
            hbar: 1.0,
            kind: PotentialKind::Yukawa,
        }
    }

    pub fn screened_hyperbolic(v2: f64, alpha: f64) -> Self {
        PotentialParams {
            v1: 0.0,
            v2,
            b: 0.0,
            alpha,
            mu: 1.0,
            hbar: 1.0,
            kind: PotentialKind::ScreenedHyperbolic,
        }
    }

    pub fn coulomb(b: f64) -> Self {
        PotentialParams {
            v1: 0.0,
            v2: 0.0,
            b,
            alpha: 0.0,
            mu: 1.0,
            hbar: 1.0,
            kind: PotentialKind::Coulomb,
        }
    }
}

/// Supercriticality check for one angular momentum channel.
///
/// The level formulas contain sqrt((l+1/2)^2 - 2 v2 mu cosh(alpha)/hbar^2);
/// a negative radicand means the attractive inverse-square coupling exceeds
/// the centrifugal barrier and no real bound-state formula exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalityReport {
    pub l: u32,
    pub discriminant: f64,
    pub supercritical: bool,
}

/// Parameter set that passed [`validate`]. Field access goes through
/// accessors so the invariants cannot be broken after the fact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidatedParams(PotentialParams);

/// Check every invariant, reporting all violations at once.
///
/// Supercritical v2 is deliberately not rejected here: whether the
/// inverse-square coupling is too strong depends on l (see
/// [`ValidatedParams::criticality`]).
pub fn validate(params: PotentialParams) -> Result<ValidatedParams> {
    let mut violations = Vec::new();
    let mut check_finite = |field: &'static str, value: f64| {
        if !value.is_finite() {
            violations.push(Violation {
                field,
                message: format!("must be finite, got {value}"),
            });
        }
    };
    check_finite("v1", params.v1);
    check_finite("v2", params.v2);
    check_finite("B", params.b);
    check_finite("alpha", params.alpha);
    check_finite("mu", params.mu);
    check_finite("hbar", params.hbar);

    if !(params.mu > 0.0) {
        violations.push(Violation {
            field: "mu",
            message: format!("reduced mass must be > 0, got {}", params.mu),
        });
    }
    if !(params.hbar > 0.0) {
        violations.push(Violation {
            field: "hbar",
            message: format!("hbar must be > 0, got {}", params.hbar),
        });
    }
    if params.alpha < 0.0 {
        violations.push(Violation {
            field: "alpha",
            message: format!("screening parameter must be >= 0, got {}", params.alpha),
        });
    }
    if params.kind != PotentialKind::Coulomb && params.alpha == 0.0 {
        violations.push(Violation {
            field: "alpha",
            message: format!("alpha > 0 required for kind {}", params.kind),
        });
    }

    let mut require_zero = |field: &'static str, value: f64| {
        if value != 0.0 {
            violations.push(Violation {
                field,
                message: format!("must be 0 for kind {}, got {value}", params.kind),
            });
        }
    };
    match params.kind {
        PotentialKind::Cpsehp => {}
        PotentialKind::Hellmann => require_zero("v2", params.v2),
        PotentialKind::Yukawa => {
            require_zero("v1", params.v1);
            require_zero("v2", params.v2);
        }
        PotentialKind::ScreenedHyperbolic => {
            require_zero("B", params.b);
            require_zero("v1", params.v1);
        }
        PotentialKind::Coulomb => {
            require_zero("alpha", params.alpha);
            require_zero("v1", params.v1);
            require_zero("v2", params.v2);
        }
    }

    if violations.is_empty() {
        Ok(ValidatedParams(params))
    } else {
        Err(Error::Validation(violations))
    }
}

impl ValidatedParams {
    pub fn v1(&self) -> f64 {
        self.0.v1
    }
    pub fn v2(&self) -> f64 {
        self.0.v2
    }
    pub fn b(&self) -> f64 {
        self.0.b
    }
    pub fn alpha(&self) -> f64 {
        self.0.alpha
    }
    pub fn mu(&self) -> f64 {
        self.0.mu
    }
    pub fn hbar(&self) -> f64 {
        self.0.hbar
    }
    pub fn kind(&self) -> PotentialKind {
        self.0.kind
    }
    pub fn raw(&self) -> PotentialParams {
        self.0
    }

    /// 2 mu v2 cosh(alpha) / hbar^2, the dimensionless inverse-square
    /// coupling. cosh(alpha) is evaluated exactly, never approximated.
    pub fn chi2(&self) -> f64 {
        2.0 * self.0.mu * self.0.v2 * self.0.alpha.cosh() / (self.0.hbar * self.0.hbar)
    }

    pub(crate) fn discriminant(&self, l: f64) -> f64 {
        (l + 0.5) * (l + 0.5) - self.chi2()
    }

    /// Supercriticality report for channel l.
    pub fn criticality(&self, l: u32) -> CriticalityReport {
        let discriminant = self.discriminant(l as f64);
        CriticalityReport {
            l,
            discriminant,
            supercritical: discriminant < 0.0,
        }
    }

    /// V(r) for the validated kind (kind constraints already zero the
    /// absent couplings, so the full expression specializes itself).
    pub fn potential_exact(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("potential requires r > 0, got {r}")));
        }
        let p = &self.0;
        Ok(-p.v1 / r + (p.b / r - p.v2 * p.alpha.cosh() / (r * r)) * (-p.alpha * r).exp())
    }

    /// The effective potential actually solved in closed form: every 1/r
    /// and 1/r^2 replaced by the screened approximants, centrifugal term
    /// included.
    pub fn potential_approximated(&self, l: u32, r: f64) -> Result<f64> {
        let p = &self.0;
        let a1 = pekeris_inverse_r(p.alpha, r)?;
        let a2 = pekeris_inverse_r2(p.alpha, r)?;
        let screen = (-p.alpha * r).exp();
        let l = l as f64;
        Ok(-p.v1 * a1 + p.b * a1 * screen - p.v2 * p.alpha.cosh() * a2 * screen
            + p.hbar * p.hbar * l * (l + 1.0) * a2 / (2.0 * p.mu))
    }
}

/// alpha / (1 - exp(-alpha r)), the screened stand-in for 1/r.
///
/// Below alpha*r = 1e-8 the Taylor limit 1/r is returned to dodge the
/// 1 - exp(-x) cancellation.
pub fn pekeris_inverse_r(alpha: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) || !(alpha > 0.0) {
        return Err(Error::Domain(format!(
            "pekeris approximant requires alpha > 0 and r > 0, got alpha = {alpha}, r = {r}"
        )));
    }
    let x = alpha * r;
    if x < 1e-8 {
        Ok(1.0 / r)
    } else {
        Ok(alpha / (-(-x).exp_m1()))
    }
}

/// Squared variant, the stand-in for 1/r^2.
pub fn pekeris_inverse_r2(alpha: f64, r: f64) -> Result<f64> {
    let a1 = pekeris_inverse_r(alpha, r)?;
    Ok(a1 * a1)
}
