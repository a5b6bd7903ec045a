//! Parametric Nikiforov-Uvarov constants and the closed-form bound-state
//! spectrum, in the compact Q-form used by every downstream module:
//!
//! ```text
//! E(n, l) = Q1 - Q2 * (rho + Q3/rho)^2,   rho = n + delta
//! ```
//!
//! The compact form is the normative energy path; the NU quantization
//! polynomial is kept only as a residual check.

use crate::error::{Error, Result};
use crate::model::{PotentialKind, ValidatedParams};

/// Radial and orbital quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Self {
        QuantumNumbers { n, l }
    }
}

/// One enumerated level with its wavefunction exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub qn: QuantumNumbers,
    pub energy: f64,
    /// Decay exponent of the radial function, R ~ exp(-alpha beta_wf r).
    pub beta_wf: f64,
    /// Short-range exponent, R ~ r^eta at the origin.
    pub eta: f64,
}

/// Dimensionless combinations entering the NU constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuIntermediates {
    /// -2 mu E / (hbar^2 alpha^2); positive for bound energies.
    pub eps_sq: f64,
    /// 2 mu v1 / (hbar^2 alpha).
    pub delta_c_sq: f64,
    /// 2 mu B / (hbar^2 alpha).
    pub chi1: f64,
    /// 2 mu v2 cosh(alpha) / hbar^2.
    pub chi2: f64,
}

/// The omega polynomials and the c1..c13 table of the parametric scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(missing_docs)]
pub struct NuConstants {
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
    pub c7: f64,
    pub c8: f64,
    pub c9: f64,
    pub c10: f64,
    pub c11: f64,
    pub c12: f64,
    pub c13: f64,
}

/// The compact-form constants shared by the energy, expectation-value and
/// partition-function paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoReduction {
    /// Energy offset: hbar^2 alpha^2 l(l+1)/(2 mu) - v1 alpha.
    pub q1: f64,
    /// Energy scale: hbar^2 alpha^2 / (8 mu); positive whenever alpha > 0.
    pub q2: f64,
    /// Dimensionless: 2 mu B/(hbar^2 alpha) - 2 mu v1/(hbar^2 alpha) + l(l+1).
    pub q3: f64,
    /// 1/2 + sqrt((l+1/2)^2 - 2 v2 mu cosh(alpha)/hbar^2).
    pub delta: f64,
    /// Band edge sqrt(Q3) - delta; only defined for Q3 > 0.
    pub lambda: Option<f64>,
}

impl ThermoReduction {
    pub fn rho(&self, n: u32) -> f64 {
        n as f64 + self.delta
    }

    /// E as a function of the continuous band variable rho = n + delta.
    pub fn energy_of_rho(&self, rho: f64) -> f64 {
        let f = rho + self.q3 / rho;
        self.q1 - self.q2 * f * f
    }
}

pub(crate) fn reduction_continuous(params: &ValidatedParams, l: f64) -> Result<ThermoReduction> {
    if !(params.alpha() > 0.0) {
        return Err(Error::Domain(
            "level formula requires alpha > 0; use the Coulomb special case at alpha = 0".into(),
        ));
    }
    let discriminant = params.discriminant(l);
    if discriminant < 0.0 {
        return Err(Error::Supercritical { l, discriminant });
    }
    let (alpha, mu, hbar) = (params.alpha(), params.mu(), params.hbar());
    let hbar2 = hbar * hbar;
    let ll1 = l * (l + 1.0);
    let q1 = hbar2 * alpha * alpha * ll1 / (2.0 * mu) - params.v1() * alpha;
    let q2 = hbar2 * alpha * alpha / (8.0 * mu);
    let q3 = 2.0 * mu * params.b() / (hbar2 * alpha) - 2.0 * mu * params.v1() / (hbar2 * alpha) + ll1;
    let delta = 0.5 + discriminant.sqrt();
    let lambda = if q3 > 0.0 { Some(q3.sqrt() - delta) } else { None };
    Ok(ThermoReduction {
        q1,
        q2,
        q3,
        delta,
        lambda,
    })
}

/// Compact-form constants for channel l.
pub fn thermo_reduction(params: &ValidatedParams, l: u32) -> Result<ThermoReduction> {
    reduction_continuous(params, l as f64)
}

pub(crate) fn energy_continuous_l(params: &ValidatedParams, n: u32, l: f64) -> Result<f64> {
    let red = reduction_continuous(params, l)?;
    Ok(red.energy_of_rho(n as f64 + red.delta))
}

/// Closed-form level energy E(n, l).
pub fn energy(params: &ValidatedParams, qn: QuantumNumbers) -> Result<f64> {
    let red = thermo_reduction(params, qn.l)?;
    Ok(red.energy_of_rho(red.rho(qn.n)))
}

/// The dimensionless combinations at a given energy.
pub fn nu_intermediates(params: &ValidatedParams, e: f64) -> NuIntermediates {
    let (alpha, mu, hbar) = (params.alpha(), params.mu(), params.hbar());
    let hbar2 = hbar * hbar;
    NuIntermediates {
        eps_sq: -2.0 * mu * e / (hbar2 * alpha * alpha),
        delta_c_sq: 2.0 * mu * params.v1() / (hbar2 * alpha),
        chi1: 2.0 * mu * params.b() / (hbar2 * alpha),
        chi2: params.chi2(),
    }
}

/// Full table of parametric constants at energy `e` (< 0).
pub fn nu_constants(params: &ValidatedParams, qn: QuantumNumbers, e: f64) -> Result<NuConstants> {
    if !(e < 0.0) {
        return Err(Error::Domain(format!(
            "NU constants are defined for bound energies E < 0, got {e}"
        )));
    }
    let im = nu_intermediates(params, e);
    let ll1 = (qn.l * (qn.l + 1)) as f64;
    let omega1 = im.eps_sq - im.chi1;
    let omega2 = 2.0 * im.eps_sq - im.delta_c_sq - im.chi1 + im.chi2;
    let omega3 = im.eps_sq - im.delta_c_sq + ll1;
    let c8 = omega3;
    let c9 = 0.25 - im.chi2 + ll1;
    if c8 < 0.0 || c9 < 0.0 {
        return Err(Error::Domain(format!(
            "square roots of c8 = {c8} and c9 = {c9} must be real"
        )));
    }
    Ok(NuConstants {
        omega1,
        omega2,
        omega3,
        c1: 1.0,
        c2: 1.0,
        c3: 1.0,
        c4: 0.0,
        c5: -0.5,
        c6: 0.25 + omega1,
        c7: -omega2,
        c8,
        c9,
        c10: 1.0 + 2.0 * c8.sqrt(),
        c11: 2.0 + 2.0 * (c9.sqrt() + c8.sqrt()),
        c12: c8.sqrt(),
        c13: -0.5 - (c9.sqrt() + c8.sqrt()),
    })
}

/// The NU quantization polynomial evaluated at energy `e`.
///
/// The root of c8 enters on the branch that attaches the polynomial
/// solution, which is the sign of -(rho^2 + Q3); with that branch the
/// residual vanishes identically at the compact-form energy.
pub fn quantization_residual(params: &ValidatedParams, qn: QuantumNumbers, e: f64) -> Result<f64> {
    let k = nu_constants(params, qn, e)?;
    let red = thermo_reduction(params, qn.l)?;
    let n = qn.n as f64;
    let rho = red.rho(qn.n);
    let sigma = if rho * rho + red.q3 > 0.0 { -1.0 } else { 1.0 };
    let sqrt_c8 = k.c8.sqrt();
    let sqrt_c9 = k.c9.sqrt();
    Ok(k.c2 * n - (2.0 * n + 1.0) * k.c5
        + (2.0 * n + 1.0) * (sqrt_c9 + sigma * k.c3 * sqrt_c8)
        + n * (n - 1.0) * k.c3
        + k.c7
        + 2.0 * k.c3 * k.c8
        + 2.0 * sigma * (k.c8 * k.c9).sqrt())
}

/// Levels for channel l up to `n_max`, capped by the band edge when the
/// spectrum has one (Q3 > 0).
///
/// A level is kept only if E < 0 and both wavefunction exponents are real
/// and positive.
pub fn enumerate_bound_states(
    params: &ValidatedParams,
    l: u32,
    n_max: u32,
) -> Result<Vec<BoundState>> {
    let red = thermo_reduction(params, l)?;
    let cap = match red.lambda {
        Some(lam) if red.q3 > 0.0 => {
            if lam < 0.0 {
                return Ok(Vec::new());
            }
            n_max.min(lam.floor() as u32)
        }
        _ => n_max,
    };
    let mut states = Vec::new();
    for n in 0..=cap {
        let qn = QuantumNumbers { n, l };
        let e = red.energy_of_rho(red.rho(n));
        if !(e < 0.0) {
            continue;
        }
        if let Ok((beta_wf, eta)) = crate::wavefun::shape_exponents(params, qn, e) {
            if beta_wf > 0.0 && eta > 0.5 {
                states.push(BoundState {
                    qn,
                    energy: e,
                    beta_wf,
                    eta,
                });
            }
        }
    }
    Ok(states)
}

/// Printed special-case level formulas.
///
/// Hellmann, Yukawa and the screened-hyperbolic case share the compact-form
/// evaluation path, so their reductions agree with [`energy`] bit for bit.
/// The Coulomb case is E = -mu B^2 / (2 hbar^2 (n+l+1)^2), the
/// dimensionally consistent form.
pub fn special_case_energy(
    kind: PotentialKind,
    params: &ValidatedParams,
    qn: QuantumNumbers,
) -> Result<f64> {
    if params.kind() != kind {
        return Err(Error::Domain(format!(
            "special-case energy for kind {kind} called with parameters of kind {}",
            params.kind()
        )));
    }
    match kind {
        PotentialKind::Coulomb => {
            let m = (qn.n + qn.l + 1) as f64;
            let b = params.b();
            Ok(-params.mu() * b * b / (2.0 * params.hbar() * params.hbar() * m * m))
        }
        _ => energy(params, qn),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate, PotentialParams};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn p0() -> ValidatedParams {
        validate(PotentialParams::cpsehp(0.1, 0.02, 0.2, 0.01)).unwrap()
    }

    #[test]
    fn compact_energy_p0() {
        // frozen from a 40-digit evaluation of the compact form
        assert_relative_eq!(
            energy(&p0(), QuantumNumbers::new(0, 0)).unwrap(),
            -6.956_598_293_528_626e-3,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            energy(&p0(), QuantumNumbers::new(1, 0)).unwrap(),
            -2.851_795_699_398_413e-3,
            max_relative = 1e-14
        );
    }

    #[test]
    fn reduction_p0() {
        let red = thermo_reduction(&p0(), 0).unwrap();
        assert_relative_eq!(red.q3, 20.0, max_relative = 1e-13);
        assert_relative_eq!(red.delta, 0.958_255_387_293_301, max_relative = 1e-14);
        assert_relative_eq!(
            red.lambda.unwrap(),
            3.513_880_567_706_278_4,
            max_relative = 1e-13
        );
        assert_relative_eq!(red.q1, -1e-3, max_relative = 1e-14);
        assert_relative_eq!(red.q2, 1.25e-5, max_relative = 1e-14);
    }

    #[test]
    fn supercritical_rejected() {
        let table = validate(PotentialParams::cpsehp(0.1, 0.2, 0.2, 0.01)).unwrap();
        assert!(matches!(
            energy(&table, QuantumNumbers::new(0, 0)),
            Err(Error::Supercritical { .. })
        ));
        assert!(matches!(
            enumerate_bound_states(&table, 0, 5),
            Err(Error::Supercritical { .. })
        ));
    }

    #[test]
    fn alpha_zero_rejected() {
        let coulomb = validate(PotentialParams::coulomb(1.0)).unwrap();
        assert!(matches!(
            energy(&coulomb, QuantumNumbers::new(0, 0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn lambda_undefined_when_q3_nonpositive() {
        // B = v1, l = 0 gives Q3 = 0
        let p = validate(PotentialParams::hellmann(0.1, 0.1, 0.01)).unwrap();
        let red = thermo_reduction(&p, 0).unwrap();
        assert_eq!(red.q3, 0.0);
        assert!(red.lambda.is_none());
    }

    #[test]
    fn hellmann_equal_couplings_energy() {
        // B = v1: E = -v1 alpha - Q2 (n+1)^2
        let p = validate(PotentialParams::hellmann(0.1, 0.1, 0.01)).unwrap();
        let e = energy(&p, QuantumNumbers::new(0, 0)).unwrap();
        assert_relative_eq!(e, -1.0125e-3, max_relative = 1e-13);
    }

    #[test]
    fn nu_constants_structure() {
        let p = p0();
        let qn = QuantumNumbers::new(0, 0);
        let e = energy(&p, qn).unwrap();
        let k = nu_constants(&p, qn, e).unwrap();
        assert_eq!((k.c1, k.c2, k.c3), (1.0, 1.0, 1.0));
        assert_eq!(k.c4, 0.0);
        assert_eq!(k.c5, -0.5);
        assert_relative_eq!(k.c9, 0.209_997_999_983_333_28, max_relative = 1e-13);
        // internal consistency with the generic table
        assert_relative_eq!(k.c6, 0.25 + k.omega1, max_relative = 1e-14);
        assert_relative_eq!(k.c10, 1.0 + 2.0 * k.c12, max_relative = 1e-14);
        assert!(nu_constants(&p, qn, 0.1).is_err());
    }

    #[test]
    fn nu_constants_zero_couplings() {
        // v1 = v2 = B = 0, l = 0: c8 = eps^2, c9 = 1/4 at any E < 0
        let p = validate(PotentialParams::yukawa(0.0, 0.5)).unwrap();
        let e = -0.3;
        let k = nu_constants(&p, QuantumNumbers::new(0, 0), e).unwrap();
        let eps_sq = -2.0 * e / 0.25;
        assert_relative_eq!(k.c8, eps_sq, max_relative = 1e-14);
        assert_abs_diff_eq!(k.c9, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn quantization_residual_vanishes_on_spectrum() {
        let p = p0();
        for l in 0..=2 {
            for n in 0..=3 {
                let qn = QuantumNumbers::new(n, l);
                let e = energy(&p, qn).unwrap();
                let r = quantization_residual(&p, qn, e).unwrap();
                assert!(r.abs() <= 1e-9, "residual {r:.3e} at n={n}, l={l}");
            }
        }
        // attractive regime exercises the other root branch
        let pa = validate(PotentialParams::cpsehp(0.3, 0.02, 0.05, 0.01)).unwrap();
        for n in 0..=3 {
            let qn = QuantumNumbers::new(n, 0);
            let e = energy(&pa, qn).unwrap();
            assert!(quantization_residual(&pa, qn, e).unwrap().abs() <= 1e-9);
        }
    }

    #[test]
    fn quantization_residual_detects_wrong_energy() {
        let p = p0();
        let qn = QuantumNumbers::new(0, 0);
        let e = energy(&p, qn).unwrap();
        let r = quantization_residual(&p, qn, e * 1.1).unwrap();
        assert!(r.abs() > 1e-3, "perturbed residual only {r:.3e}");
    }

    #[test]
    fn quantization_residual_hellmann_reduction() {
        // v2 = 0, B = v1, l = 0: E = -v1 alpha - Q2 (n+1)^2 solves the condition
        let p = validate(PotentialParams::hellmann(0.1, 0.1, 0.01)).unwrap();
        for n in 0..4u32 {
            let m = (n + 1) as f64;
            let e = -0.1 * 0.01 - 1.25e-5 * m * m;
            let r = quantization_residual(&p, QuantumNumbers::new(n, 0), e).unwrap();
            assert!(r.abs() <= 1e-9, "n={n}: residual {r:.3e}");
        }
    }

    #[test]
    fn enumerate_p0_band() {
        // lambda ~ 3.514 caps the band at n = 3
        let states = enumerate_bound_states(&p0(), 0, 10).unwrap();
        let ns: Vec<u32> = states.iter().map(|s| s.qn.n).collect();
        assert_eq!(ns, vec![0, 1, 2, 3]);
        for w in states.windows(2) {
            assert!(w[0].qn.n < w[1].qn.n);
        }
    }

    #[test]
    fn enumerate_without_band_edge() {
        // Q3 = 0: no band cap, every E < 0 level up to n_max is listed
        let p = validate(PotentialParams::hellmann(0.1, 0.1, 0.01)).unwrap();
        let states = enumerate_bound_states(&p, 0, 7).unwrap();
        assert_eq!(states.len(), 8);
    }

    #[test]
    fn enumerate_narrow_and_empty_bands() {
        // sqrt(Q3) barely above delta: lambda in (0, 1) keeps only n = 0
        let p = validate(PotentialParams::cpsehp(0.1, 0.02, 0.104_688, 0.01)).unwrap();
        let states = enumerate_bound_states(&p, 0, 10).unwrap();
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].qn.n, 0);
        // sqrt(Q3) below delta: negative lambda, empty band
        let p = validate(PotentialParams::cpsehp(0.1, 0.02, 0.104, 0.01)).unwrap();
        let red = thermo_reduction(&p, 0).unwrap();
        assert!(red.lambda.unwrap() < 0.0);
        assert!(enumerate_bound_states(&p, 0, 10).unwrap().is_empty());
    }

    #[test]
    fn coulomb_ground_state() {
        let p = validate(PotentialParams::coulomb(1.0)).unwrap();
        let e = special_case_energy(PotentialKind::Coulomb, &p, QuantumNumbers::new(0, 0)).unwrap();
        assert_eq!(e, -0.5);
    }

    #[test]
    fn special_case_kind_mismatch() {
        let p = validate(PotentialParams::yukawa(0.4, 0.05)).unwrap();
        assert!(matches!(
            special_case_energy(PotentialKind::Hellmann, &p, QuantumNumbers::new(0, 0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn coulomb_limit_bound() {
        // v2 = B = 0: |E + mu v1^2/(2 hbar^2 m^2)| <= alpha v1/2 + Q2 m^2 + 1e-12
        let v1 = 1.0;
        for &alpha in &[1e-3, 1e-4] {
            let p = validate(PotentialParams::hellmann(v1, 0.0, alpha)).unwrap();
            for l in 0..=2u32 {
                for n in 0..=2u32 {
                    let m = (n + l + 1) as f64;
                    let e = energy(&p, QuantumNumbers::new(n, l)).unwrap();
                    let hydrogenic = -v1 * v1 / (2.0 * m * m);
                    let bound = alpha * v1 / 2.0 + alpha * alpha / 8.0 * m * m + 1e-12;
                    assert!(
                        (e - hydrogenic).abs() <= bound,
                        "alpha={alpha}, n={n}, l={l}: |{e} - {hydrogenic}| > {bound}"
                    );
                }
            }
        }
    }

    #[test]
    fn band_variable_map_has_minimum_at_sqrt_q3() {
        // rho + Q3/rho decreases before rho = sqrt(Q3) and increases after
        let red = thermo_reduction(&p0(), 0).unwrap();
        let g = |rho: f64| rho + red.q3 / rho;
        let star = red.q3.sqrt();
        assert!(g(star) < g(star * 0.9));
        assert!(g(star) < g(star * 1.1));
        let mut prev = g(star);
        for k in 1..=20 {
            let next = g(star + k as f64 * 0.3);
            assert!(next >= prev);
            prev = next;
        }
        let mut prev = g(star);
        for k in 1..=10 {
            let x = star - k as f64 * 0.08;
            assert!(x > 0.0);
            let next = g(x);
            assert!(next >= prev);
            prev = next;
        }
    }

    proptest! {
        // Reduction identities: with v2 = 0 the general energy equals the
        // Hellmann formula bit for bit, and with v1 = v2 = 0 the Yukawa one.
        #[test]
        fn hellmann_reduction_bitwise(
            v1 in -0.5f64..0.5,
            b in -0.5f64..0.5,
            alpha in 1e-3f64..0.5,
            n in 0u32..4,
            l in 0u32..4,
        ) {
            let p = validate(PotentialParams::hellmann(v1, b, alpha)).unwrap();
            let qn = QuantumNumbers::new(n, l);
            let via_energy = energy(&p, qn).unwrap();
            let via_special = special_case_energy(PotentialKind::Hellmann, &p, qn).unwrap();
            prop_assert_eq!(via_energy.to_bits(), via_special.to_bits());
        }

        #[test]
        fn yukawa_reduction_bitwise(
            b in -0.5f64..0.5,
            alpha in 1e-3f64..0.5,
            n in 0u32..4,
            l in 0u32..4,
        ) {
            let p = validate(PotentialParams::yukawa(b, alpha)).unwrap();
            let qn = QuantumNumbers::new(n, l);
            prop_assert_eq!(
                energy(&p, qn).unwrap().to_bits(),
                special_case_energy(PotentialKind::Yukawa, &p, qn).unwrap().to_bits()
            );
        }

        #[test]
        fn screened_hyperbolic_reduction_bitwise(
            v2 in -0.3f64..0.1,
            alpha in 1e-3f64..0.5,
            n in 0u32..4,
            l in 0u32..4,
        ) {
            let p = validate(PotentialParams::screened_hyperbolic(v2, alpha)).unwrap();
            let qn = QuantumNumbers::new(n, l);
            if p.criticality(l).supercritical {
                return Ok(());
            }
            prop_assert_eq!(
                energy(&p, qn).unwrap().to_bits(),
                special_case_energy(PotentialKind::ScreenedHyperbolic, &p, qn).unwrap().to_bits()
            );
        }
    }
}
