//! Exact two-component solutions of the Weyl equation and a finite-difference
//! residual that checks them against a 4-potential.
//!
//! Positive helicity:
//! `ψ = (cos(θ/2), e^{iφ} sin(θ/2))·e^{ih}`, solving `iσ^μ∂_μψ + b_μσ^μψ = 0`.
//!
//! Negative helicity:
//! `ψ' = (−sin(θ/2), e^{iφ} cos(θ/2))·e^{ih}`, solving the same equation with
//! the primed set `σ'⁰ = σ⁰`, `σ'ⁱ = −σⁱ`.
//!
//! The residual differentiates `ψ` numerically so it is independent of the
//! analytic potentials it is used to check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exprkit::{AngleLaw, AngleState, ScalarField};
use crate::potentials::FourPotentialField;
pub use crate::vector::Event;

/// Alias used for the phase `h(r, t)`.
pub type PhaseField = ScalarField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Helicity {
    Positive,
    Negative,
}

impl Helicity {
    /// `+1` for positive helicity, `−1` for negative.
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Positive => 1.0,
            Helicity::Negative => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Helicity::Positive => "positive",
            Helicity::Negative => "negative",
        }
    }
}

impl std::str::FromStr for Helicity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "positive" | "+" | "+1" | "right" => Ok(Helicity::Positive),
            "negative" | "-" | "-1" | "left" => Ok(Helicity::Negative),
            other => Err(format!("unknown helicity `{other}`")),
        }
    }
}

/// 2×2 complex matrix, row-major.
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// The Pauli matrices `σ⁰..σ³` and the primed set used for negative helicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliSet {
    pub sigma: [Mat2; 4],
    pub primed: [Mat2; 4],
}

impl PauliSet {
    pub const STANDARD: PauliSet = {
        let s0 = [[ONE, ZERO], [ZERO, ONE]];
        let s1 = [[ZERO, ONE], [ONE, ZERO]];
        let s2 = [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]];
        let s3 = [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]];
        let m1 = Complex64::new(-1.0, 0.0);
        let p1 = [[ZERO, m1], [m1, ZERO]];
        let p2 = [[ZERO, I], [Complex64::new(0.0, -1.0), ZERO]];
        let p3 = [[m1, ZERO], [ZERO, ONE]];
        PauliSet {
            sigma: [s0, s1, s2, s3],
            primed: [s0, p1, p2, p3],
        }
    };

    /// `σ^μ` for positive helicity, `σ'^μ` for negative.
    pub fn for_helicity(&self, hel: Helicity) -> &[Mat2; 4] {
        match hel {
            Helicity::Positive => &self.sigma,
            Helicity::Negative => &self.primed,
        }
    }
}

pub fn mat_vec(m: &Mat2, v: [Complex64; 2]) -> [Complex64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Spinor amplitudes at one event.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spinor {
    pub c1: Complex64,
    pub c2: Complex64,
    pub helicity: Helicity,
}

impl Spinor {
    pub fn components(&self) -> [Complex64; 2] {
        [self.c1, self.c2]
    }

    /// `ψ†ψ`.
    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }

    /// `ψ†Mψ`.
    pub fn expectation(&self, m: &Mat2) -> Complex64 {
        let mv = mat_vec(m, self.components());
        self.c1.conj() * mv[0] + self.c2.conj() * mv[1]
    }

    /// Amplitudes for given angles and phase value.
    pub fn from_angles(theta: f64, phi: f64, phase: f64, helicity: Helicity) -> Spinor {
        let (s, c) = (theta / 2.0).sin_cos();
        let global = Complex64::from_polar(1.0, phase);
        let rot = Complex64::from_polar(1.0, phi);
        let (c1, c2) = match helicity {
            Helicity::Positive => (Complex64::new(c, 0.0), rot * s),
            Helicity::Negative => (Complex64::new(-s, 0.0), rot * c),
        };
        Spinor {
            c1: c1 * global,
            c2: c2 * global,
            helicity,
        }
    }
}

/// Builds `ψ` (positive) or `ψ'` (negative) at `ev`.
pub fn build_spinor(law: &AngleLaw, h: &PhaseField, hel: Helicity, ev: &Event) -> Result<Spinor> {
    let angles = law.state_at(ev.t)?;
    spinor_at(&angles, h, hel, ev)
}

fn spinor_at(angles: &AngleState, h: &PhaseField, hel: Helicity, ev: &Event) -> Result<Spinor> {
    let phase = h.value(ev, angles)?;
    Ok(Spinor::from_angles(angles.theta, angles.phi, phase, hel))
}

pub(crate) fn check_step(step: f64) -> Result<()> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidStep(step))
    }
}

/// Residual vector of the Weyl operator applied to the built spinor, with
/// `∂_μψ` taken by central differences of width `2·step`.
pub fn weyl_residual_vector(
    law: &AngleLaw,
    h: &PhaseField,
    pot: &FourPotentialField,
    hel: Helicity,
    ev: &Event,
    step: f64,
) -> Result<[Complex64; 2]> {
    check_step(step)?;
    let sigma = PauliSet::STANDARD.for_helicity(hel);
    let psi = build_spinor(law, h, hel, ev)?.components();
    let b = pot.at(ev)?;
    let mut r = [ZERO; 2];
    for (mu, sig) in sigma.iter().enumerate() {
        let plus = build_spinor(law, h, hel, &ev.shifted(mu, step))?.components();
        let minus = build_spinor(law, h, hel, &ev.shifted(mu, -step))?.components();
        let dpsi = [
            (plus[0] - minus[0]) / (2.0 * step),
            (plus[1] - minus[1]) / (2.0 * step),
        ];
        let d = mat_vec(sig, dpsi);
        let a = mat_vec(sig, psi);
        for k in 0..2 {
            r[k] += I * d[k] + b.0[mu] * a[k];
        }
    }
    Ok(r)
}

/// Euclidean norm of [`weyl_residual_vector`]. `O(step²)` for an exact
/// solution/potential pair.
pub fn weyl_residual(
    law: &AngleLaw,
    h: &PhaseField,
    pot: &FourPotentialField,
    hel: Helicity,
    ev: &Event,
    step: f64,
) -> Result<f64> {
    let r = weyl_residual_vector(law, h, pot, hel, ev, step)?;
    Ok((r[0].norm_sqr() + r[1].norm_sqr()).sqrt())
}

/// Observed order `log₂(r(step)/r(step/2))` of a residual that decays like a
/// power of the step.
pub fn convergence_order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn approx(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn pauli_algebra() {
        let p = PauliSet::STANDARD;
        let id = p.sigma[0];
        for i in 1..4 {
            let s = p.sigma[i];
            // Hermitian and traceless
            for r in 0..2 {
                for c in 0..2 {
                    assert_eq!(s[r][c], s[c][r].conj());
                }
            }
            assert_eq!(s[0][0] + s[1][1], ZERO);
            assert_eq!(mat_mul(&s, &s), id);
            for r in 0..2 {
                for c in 0..2 {
                    assert_eq!(p.primed[i][r][c], -s[r][c]);
                }
            }
        }
        assert_eq!(p.primed[0], id);
    }

    #[test]
    fn basis_spinors() {
        let up = Spinor::from_angles(0.0, 0.0, 0.0, Helicity::Positive);
        assert!(approx(up.c1, ONE) && approx(up.c2, ZERO));
        let down = Spinor::from_angles(PI, 0.0, 0.0, Helicity::Positive);
        assert!(up.c1.norm() - 1.0 < 1e-15);
        assert!(down.c1.norm() < 1e-15 && (down.c2.norm() - 1.0).abs() < 1e-15);
        let neg = Spinor::from_angles(PI / 2.0, PI / 2.0, 0.0, Helicity::Negative);
        assert!(approx(neg.c1, Complex64::new(-FRAC_1_SQRT_2, 0.0)));
        assert!(approx(neg.c2, Complex64::new(0.0, FRAC_1_SQRT_2)));
    }

    #[test]
    fn build_from_law_and_phase() {
        let law = AngleLaw::constant(0.0, 0.0);
        let psi = build_spinor(&law, &PhaseField::zero(), Helicity::Positive, &Event::default()).unwrap();
        assert_eq!(psi.components(), [ONE, ZERO]);
        let h = PhaseField::parse("x + sqrt(t)").unwrap();
        assert!(build_spinor(&law, &h, Helicity::Positive, &Event::at_time(-1.0)).is_err());
    }

    #[test]
    fn spin_expectation_points_along_angles() {
        // ψ†σψ = ±(sinθcosφ, sinθsinφ, cosθ)
        let (theta, phi): (f64, f64) = (0.9, -2.1);
        let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        for hel in [Helicity::Positive, Helicity::Negative] {
            let psi = Spinor::from_angles(theta, phi, 0.4, hel);
            for i in 0..3 {
                let e = psi.expectation(&PauliSet::STANDARD.sigma[i + 1]);
                assert!((e.re - hel.sign() * n[i]).abs() < 1e-15);
                assert!(e.im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_bad_step() {
        let law = AngleLaw::constant(0.0, 0.0);
        let pot = FourPotentialField::base(law.clone(), PhaseField::zero(), Helicity::Positive);
        for step in [0.0, -1e-5, f64::NAN] {
            assert!(matches!(
                weyl_residual(&law, &PhaseField::zero(), &pot, Helicity::Positive, &Event::default(), step),
                Err(Error::InvalidStep(_))
            ));
        }
    }
}
