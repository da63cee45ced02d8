//! Kinematic observables of the spinor family: velocity, kinetic 4-momentum,
//! the localization parameter `k` and the relations between them.
//!
//! `k = ½·√(sin²θ·φ̇² + θ̇²)` has the dimension of a mass. It is the magnitude
//! of the imaginary mass `m* = i·k` implied by `E₀² − |p|² = −k²`.

use crate::error::{Error, Result};
use crate::exprkit::{AngleLaw, AngleState};
use crate::potentials::GaugeScalar;
use crate::spinor::Helicity;
use crate::vector::{Event, Vec3};

/// Speed of light in m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Unit velocity in units of `c`.
pub type Velocity3 = Vec3;

/// `(sinθ cosφ, sinθ sinφ, cosθ)`. Identical for both helicities.
pub fn velocity(law: &AngleLaw, _hel: Helicity, t: f64) -> Result<Velocity3> {
    Ok(velocity_of(&law.state_at(t)?))
}

pub fn velocity_of(a: &AngleState) -> Velocity3 {
    let (st, ct) = a.theta.sin_cos();
    let (sp, cp) = a.phi.sin_cos();
    Vec3::new(st * cp, st * sp, ct)
}

/// Gauge-invariant `π_μ = ψ†(−i∂_μ − b_μ)ψ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KineticMomentum {
    pub pi_t: f64,
    pub pi_x: f64,
    pub pi_y: f64,
    pub pi_z: f64,
}

impl KineticMomentum {
    /// `E₀ = π_t`.
    pub fn energy(&self) -> f64 {
        self.pi_t
    }

    /// `p = −(π_x, π_y, π_z)`.
    pub fn momentum(&self) -> Vec3 {
        -Vec3::new(self.pi_x, self.pi_y, self.pi_z)
    }
}

pub fn kinetic_momentum(law: &AngleLaw, s: &GaugeScalar, hel: Helicity, t: f64) -> Result<KineticMomentum> {
    let (a, s, _) = gauge_in_time(law, s, t)?;
    Ok(kinetic_momentum_of(&a, s, hel))
}

pub fn kinetic_momentum_of(a: &AngleState, s: f64, hel: Helicity) -> KineticMomentum {
    let h = hel.sign() * 0.5;
    let (st, ct) = a.theta.sin_cos();
    let (sp, cp) = a.phi.sin_cos();
    KineticMomentum {
        pi_t: -h * ct * a.phi_rate - s,
        pi_x: -h * sp * a.theta_rate + s * st * cp,
        pi_y: h * cp * a.theta_rate + s * st * sp,
        pi_z: h * a.phi_rate + s * ct,
    }
}

/// Angle state, `s(t)` and `ds/dt`, rejecting a spatially varying `s`.
fn gauge_in_time(law: &AngleLaw, s: &GaugeScalar, t: f64) -> Result<(AngleState, f64, f64)> {
    if !s.is_time_only() {
        return Err(Error::SpatialGauge);
    }
    let a = law.state_at(t)?;
    let ev = Event::at_time(t);
    Ok((a, s.value(&ev, &a)?, s.gradient(&ev, &a)?[0]))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalizationSample {
    pub k: f64,
    /// `|m*|`; the mass itself is imaginary.
    pub m_star_magnitude: f64,
}

pub fn localization_k(law: &AngleLaw, t: f64) -> Result<LocalizationSample> {
    let k = localization_of(&law.state_at(t)?);
    Ok(LocalizationSample {
        k,
        m_star_magnitude: k,
    })
}

pub fn localization_of(a: &AngleState) -> f64 {
    0.5 * (a.theta.sin().powi(2) * a.phi_rate.powi(2) + a.theta_rate.powi(2)).sqrt()
}

/// `dE₀/dt` of either helicity.
pub fn energy_rate(law: &AngleLaw, s: &GaugeScalar, hel: Helicity, t: f64) -> Result<f64> {
    let (a, _, ds_dt) = gauge_in_time(law, s, t)?;
    Ok(energy_rate_of(&a, ds_dt, hel))
}

pub fn energy_rate_of(a: &AngleState, ds_dt: f64, hel: Helicity) -> f64 {
    let h = hel.sign() * 0.5;
    h * a.theta.sin() * a.theta_rate * a.phi_rate - h * a.theta.cos() * a.phi_accel - ds_dt
}

/// `E₀² − |p|²`; equal to `−k²` for every `s`.
pub fn mass_shell_defect(law: &AngleLaw, s: &GaugeScalar, hel: Helicity, t: f64) -> Result<f64> {
    let pi = kinetic_momentum(law, s, hel, t)?;
    Ok(pi.energy().powi(2) - pi.momentum().norm_sqr())
}

/// `|p × v|`; equal to `k`.
pub fn momentum_noncollinearity(law: &AngleLaw, s: &GaugeScalar, hel: Helicity, t: f64) -> Result<f64> {
    let pi = kinetic_momentum(law, s, hel, t)?;
    let v = velocity(law, hel, t)?;
    Ok(pi.momentum().cross(v).norm())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UncertaintySample {
    pub p0d: f64,
    pub d_delta_p: f64,
}

impl UncertaintySample {
    /// `2·p₀d·(dΔp) + (dΔp)² − 1`.
    pub fn residual(&self) -> f64 {
        2.0 * self.p0d * self.d_delta_p + self.d_delta_p * self.d_delta_p - 1.0
    }
}

/// Positive root `dΔp = −p₀d + √(1 + (p₀d)²)`, computed in the
/// cancellation-free form `1/(p₀d + √(1 + (p₀d)²))`.
pub fn uncertainty_relation(p0d: f64) -> Result<UncertaintySample> {
    if !(p0d >= 0.0) {
        return Err(Error::Negative {
            name: "p0·d",
            value: p0d,
        });
    }
    let d_delta_p = 1.0 / (p0d + p0d.hypot(1.0));
    Ok(UncertaintySample { p0d, d_delta_p })
}

/// Diameter `2/|ω₁|` of the circle traced at constant polar rate.
pub fn localization_diameter(omega1: f64) -> f64 {
    2.0 / omega1.abs()
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[allow(non_snake_case)]
pub struct SiRates {
    pub eV_per_meter: f64,
    pub eV_per_second: f64,
}

/// Energy (or `k`) change rate for a particle of charge `q·e` in a field of
/// `|E|` V/m.
pub fn si_rates(e_field_v_per_m: f64, q_in_electron_charges: f64) -> SiRates {
    let per_meter = q_in_electron_charges * e_field_v_per_m.abs();
    SiRates {
        eV_per_meter: per_meter,
        eV_per_second: per_meter * SPEED_OF_LIGHT,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn s_const(c: f64) -> GaugeScalar {
        GaugeScalar::constant(c)
    }

    #[test]
    fn velocity_examples() {
        let v = velocity(&AngleLaw::constant(FRAC_PI_2, 0.0), Helicity::Positive, 0.0).unwrap();
        assert!(v.max_abs_diff(Vec3::new(1.0, 0.0, 0.0)) < 1e-16);
        let v = velocity(&AngleLaw::constant(0.0, 1.3), Helicity::Negative, 5.0).unwrap();
        assert_eq!(v, Vec3::new(0.0, 0.0, 1.0));
        let law = AngleLaw::linear(FRAC_PI_2, 0.0, 0.0, 10.0);
        let v = velocity(&law, Helicity::Positive, PI / 20.0).unwrap();
        assert!(v.max_abs_diff(Vec3::new(0.0, 1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn kinetic_momentum_examples() {
        let still = AngleLaw::constant(FRAC_PI_2, 0.0);
        let pi = kinetic_momentum(&still, &s_const(-3.0), Helicity::Positive, 0.0).unwrap();
        assert_eq!(pi.energy(), 3.0);
        assert!(pi.momentum().max_abs_diff(Vec3::new(3.0, 0.0, 0.0)) < 1e-15);

        let spin = AngleLaw::linear(FRAC_PI_2, 0.0, 0.0, 10.0);
        let pi = kinetic_momentum(&spin, &s_const(-3.0), Helicity::Positive, 0.0).unwrap();
        assert!(pi.momentum().max_abs_diff(Vec3::new(3.0, 0.0, -5.0)) < 1e-15);

        let pi = kinetic_momentum(&still, &GaugeScalar::zero(), Helicity::Negative, 0.0).unwrap();
        assert_eq!([pi.pi_t, pi.pi_x, pi.pi_y, pi.pi_z].map(f64::abs), [0.0; 4]);
    }

    #[test]
    fn spatial_gauge_rejected() {
        let law = AngleLaw::constant(0.0, 0.0);
        let s = GaugeScalar::parse("x*t").unwrap();
        assert!(matches!(
            kinetic_momentum(&law, &s, Helicity::Positive, 0.0),
            Err(Error::SpatialGauge)
        ));
    }

    #[test]
    fn localization_examples() {
        assert_eq!(localization_k(&AngleLaw::constant(1.0, 2.0), 0.0).unwrap().k, 0.0);
        let law = AngleLaw::linear(FRAC_PI_2, 3f64.sqrt(), 0.0, 5f64.sqrt());
        let s = localization_k(&law, 0.0).unwrap();
        assert!((s.k - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.m_star_magnitude, s.k);
        // θ = π/2 + √3·t hits π at t = π/(2√3)
        let t = PI / (2.0 * 3f64.sqrt());
        let k = localization_k(&law, t).unwrap().k;
        assert!((k - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn energy_rate_examples() {
        let still = AngleLaw::constant(0.7, 0.1);
        let s = GaugeScalar::parse("-2*t").unwrap();
        assert_eq!(energy_rate(&still, &s, Helicity::Positive, 1.0).unwrap(), 2.0);
        assert_eq!(energy_rate(&still, &s_const(4.0), Helicity::Negative, 1.0).unwrap(), 0.0);
        let law = AngleLaw::linear(FRAC_PI_4, 1.0, 0.0, 1.0);
        let r = energy_rate(&law, &GaugeScalar::zero(), Helicity::Positive, 0.0).unwrap();
        assert!((r - 2f64.sqrt() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn mass_shell_examples() {
        let d = mass_shell_defect(&AngleLaw::constant(0.4, 0.2), &s_const(1.7), Helicity::Positive, 0.0).unwrap();
        assert!(d.abs() < 1e-15);
        let d = mass_shell_defect(&AngleLaw::linear(0.3, 2.0, 0.1, 0.0), &s_const(-0.6), Helicity::Negative, 0.8)
            .unwrap();
        assert!((d + 1.0).abs() < 1e-14);
        let law = AngleLaw::linear(FRAC_PI_2, 0.0, 0.0, 10.0);
        let d = mass_shell_defect(&law, &s_const(-3.0), Helicity::Positive, 0.0).unwrap();
        assert!((d + 25.0).abs() < 1e-12);
    }

    #[test]
    fn noncollinearity_examples() {
        let n = momentum_noncollinearity(&AngleLaw::constant(1.0, 1.0), &s_const(2.0), Helicity::Positive, 0.0)
            .unwrap();
        assert!(n < 1e-15);
        let law = AngleLaw::linear(FRAC_PI_2, 0.0, 0.0, 10.0);
        let n = momentum_noncollinearity(&law, &s_const(-3.0), Helicity::Positive, 0.0).unwrap();
        assert!((n - 5.0).abs() < 1e-14);
        let law = AngleLaw::linear(0.2, 3f64.sqrt(), 0.9, 0.0);
        let n = momentum_noncollinearity(&law, &s_const(0.35), Helicity::Negative, 1.7).unwrap();
        assert!((n - 3f64.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn uncertainty_examples() {
        assert_eq!(uncertainty_relation(0.0).unwrap().d_delta_p, 1.0);
        let u = uncertainty_relation(0.75).unwrap();
        assert!((u.d_delta_p - 0.5).abs() < 1e-15);
        assert!(u.residual().abs() < 1e-15);
        assert!(uncertainty_relation(1e6).unwrap().d_delta_p < 1e-6);
        assert!(matches!(uncertainty_relation(-1.0), Err(Error::Negative { .. })));
        assert!(uncertainty_relation(f64::NAN).is_err());
    }

    #[test]
    fn diameter_matches_shell_defect() {
        // −1/d² = −ω₁²/4
        let w = 2.5;
        let d = localization_diameter(w);
        assert!((1.0 / (d * d) - w * w / 4.0).abs() < 1e-15);
    }

    #[test]
    fn si_examples() {
        let r = si_rates(1.0, 1.0);
        assert_eq!(r.eV_per_meter, 1.0);
        assert_eq!(r.eV_per_second, 2.99792458e8);
        assert_eq!(si_rates(0.0, 1.0), SiRates { eV_per_meter: 0.0, eV_per_second: 0.0 });
    }
}
