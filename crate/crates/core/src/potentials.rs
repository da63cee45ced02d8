//! 4-potentials for which the spinor family is exact, and the electric and
//! magnetic fields they carry.
//!
//! Conventions: `b_μ = q·A_μ` in natural units, with scalar potential
//! `U = b₀/q` and vector potential `A = −(b₁, b₂, b₃)/q`, so
//! `E = −∇U − ∂A/∂t` and `B = ∇×A`.

use crate::error::{Error, Result};
use crate::exprkit::{AngleLaw, AngleState, Bindings, ScalarField, Var};
use crate::spinor::{check_step, Helicity, PhaseField};
use crate::vector::{Event, Vec3};

/// Alias used for the gauge scalar `s(r, t)`.
pub type GaugeScalar = ScalarField;

/// `(b₀, b₁, b₂, b₃)` at one event.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FourPotential(pub [f64; 4]);

impl FourPotential {
    pub fn max_abs_diff(&self, other: &FourPotential) -> f64 {
        self.0
            .iter()
            .zip(other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Which family a potential field belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    BasePositive,
    BaseNegative,
    Degenerate,
    Custom,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::BasePositive => "base_positive",
            Provenance::BaseNegative => "base_negative",
            Provenance::Degenerate => "degenerate",
            Provenance::Custom => "custom",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Source {
    Zero,
    Base {
        law: AngleLaw,
        phase: PhaseField,
        helicity: Helicity,
    },
    Degenerate {
        base: Box<FourPotentialField>,
        law: AngleLaw,
        gauge: GaugeScalar,
    },
    Components(Box<[ScalarField; 4]>),
    Shifted {
        base: Box<FourPotentialField>,
        delta: [f64; 4],
    },
}

/// A 4-potential as a function of the event.
#[derive(Clone, Debug, PartialEq)]
pub struct FourPotentialField {
    source: Source,
}

impl FourPotentialField {
    pub fn zero() -> Self {
        Self {
            source: Source::Zero,
        }
    }

    /// The potential for which the spinor of `(law, phase, helicity)` solves
    /// the Weyl equation.
    pub fn base(law: AngleLaw, phase: PhaseField, helicity: Helicity) -> Self {
        Self {
            source: Source::Base {
                law,
                phase,
                helicity,
            },
        }
    }

    /// Arbitrary components; expressions may use `x, y, z, t` only.
    pub fn custom(components: [ScalarField; 4]) -> Self {
        Self {
            source: Source::Components(Box::new(components)),
        }
    }

    /// `self + delta` at every event.
    pub fn shifted(self, delta: [f64; 4]) -> Self {
        Self {
            source: Source::Shifted {
                base: Box::new(self),
                delta,
            },
        }
    }

    /// `κ_μ·s` alone. Divided by `q` this is `(U, A) = (1, v)·s/q`.
    pub fn gauge_only(law: AngleLaw, gauge: GaugeScalar) -> Self {
        degenerate_potential(Self::zero(), law, gauge)
    }

    pub fn provenance(&self) -> Provenance {
        match &self.source {
            Source::Base {
                helicity: Helicity::Positive,
                ..
            } => Provenance::BasePositive,
            Source::Base {
                helicity: Helicity::Negative,
                ..
            } => Provenance::BaseNegative,
            Source::Degenerate { .. } => Provenance::Degenerate,
            Source::Zero | Source::Components(_) | Source::Shifted { .. } => Provenance::Custom,
        }
    }

    pub fn at(&self, ev: &Event) -> Result<FourPotential> {
        match &self.source {
            Source::Zero => Ok(FourPotential::default()),
            Source::Base {
                law,
                phase,
                helicity,
            } => base_potential(law, phase, *helicity, ev),
            Source::Degenerate { base, law, gauge } => {
                let mut b = base.at(ev)?;
                let angles = law.state_at(ev.t)?;
                let s = gauge.value(ev, &angles)?;
                let kappa = kappa_of(&angles);
                for (bm, km) in b.0.iter_mut().zip(kappa.0) {
                    *bm += km * s;
                }
                Ok(b)
            }
            Source::Components(c) => {
                let bind = Bindings::new()
                    .with(Var::X, ev.x)
                    .with(Var::Y, ev.y)
                    .with(Var::Z, ev.z)
                    .with(Var::T, ev.t);
                let mut out = [0.0; 4];
                for (o, f) in out.iter_mut().zip(c.iter()) {
                    *o = f.expr().eval(&bind)?;
                }
                Ok(FourPotential(out))
            }
            Source::Shifted { base, delta } => {
                let mut b = base.at(ev)?;
                for (bm, d) in b.0.iter_mut().zip(delta) {
                    *bm += d;
                }
                Ok(b)
            }
        }
    }
}

/// Base potential of one helicity (upper signs positive, lower negative):
///
/// `(∂_t h + ½φ̇, ∂_x h ± ½ sinφ θ̇, ∂_y h ∓ ½ cosφ θ̇, ∂_z h ∓ ½φ̇)`.
pub fn base_potential(law: &AngleLaw, h: &PhaseField, hel: Helicity, ev: &Event) -> Result<FourPotential> {
    let angles = law.state_at(ev.t)?;
    let grad = h.gradient(ev, &angles)?;
    let sign = hel.sign();
    let (sin_phi, cos_phi) = angles.phi.sin_cos();
    Ok(FourPotential([
        grad[0] + 0.5 * angles.phi_rate,
        grad[1] + sign * 0.5 * sin_phi * angles.theta_rate,
        grad[2] - sign * 0.5 * cos_phi * angles.theta_rate,
        grad[3] - sign * 0.5 * angles.phi_rate,
    ]))
}

/// `(1, −sinθ cosφ, −sinθ sinφ, −cosθ)`, shared by both helicities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KappaVector(pub [f64; 4]);

impl KappaVector {
    pub fn spatial(&self) -> Vec3 {
        Vec3::new(self.0[1], self.0[2], self.0[3])
    }
}

pub fn kappa_vector(law: &AngleLaw, t: f64) -> Result<KappaVector> {
    Ok(kappa_of(&law.state_at(t)?))
}

pub(crate) fn kappa_of(angles: &AngleState) -> KappaVector {
    let (st, ct) = angles.theta.sin_cos();
    let (sp, cp) = angles.phi.sin_cos();
    KappaVector([1.0, -st * cp, -st * sp, -ct])
}

/// `b_μ = base_μ + κ_μ·s`.
pub fn degenerate_potential(base: FourPotentialField, law: AngleLaw, s: GaugeScalar) -> FourPotentialField {
    FourPotentialField {
        source: Source::Degenerate {
            base: Box::new(base),
            law,
            gauge: s,
        },
    }
}

/// Particle charge in natural units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChargeSpec {
    pub q: f64,
}

impl ChargeSpec {
    pub fn new(q: f64) -> Self {
        Self { q }
    }

    /// `1/q`, failing for `q = 0`.
    pub fn inverse(&self) -> Result<f64> {
        if self.q == 0.0 || !self.q.is_finite() {
            Err(Error::ZeroCharge)
        } else {
            Ok(1.0 / self.q)
        }
    }
}

impl From<f64> for ChargeSpec {
    fn from(q: f64) -> Self {
        Self::new(q)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EMField {
    pub e: Vec3,
    pub b: Vec3,
}

impl EMField {
    pub fn electric(e: Vec3) -> Self {
        Self { e, b: Vec3::ZERO }
    }

    pub fn max_abs_diff(&self, other: &EMField) -> f64 {
        self.e
            .max_abs_diff(other.e)
            .max(self.b.max_abs_diff(other.b))
    }
}

impl std::ops::Add for EMField {
    type Output = EMField;
    fn add(self, o: EMField) -> EMField {
        EMField {
            e: self.e + o.e,
            b: self.b + o.b,
        }
    }
}

/// `E` and `B` from central differences of the potential components.
pub fn field_from_potential_numeric(
    pot: &FourPotentialField,
    q: ChargeSpec,
    ev: &Event,
    step: f64,
) -> Result<EMField> {
    let inv_q = q.inverse()?;
    check_step(step)?;
    // d[mu][nu] = ∂_mu b_nu
    let mut d = [[0.0; 4]; 4];
    for (mu, row) in d.iter_mut().enumerate() {
        let plus = pot.at(&ev.shifted(mu, step))?;
        let minus = pot.at(&ev.shifted(mu, -step))?;
        for nu in 0..4 {
            row[nu] = (plus.0[nu] - minus.0[nu]) / (2.0 * step);
        }
    }
    let e = Vec3::new(
        -d[1][0] + d[0][1],
        -d[2][0] + d[0][2],
        -d[3][0] + d[0][3],
    ) * inv_q;
    let curl = Vec3::new(
        d[2][3] - d[3][2],
        d[3][1] - d[1][3],
        d[1][2] - d[2][1],
    );
    Ok(EMField { e, b: curl * -inv_q })
}

/// Closed-form field of the base potential; purely electric.
pub fn drive_field_closed_form(law: &AngleLaw, hel: Helicity, q: ChargeSpec, t: f64) -> Result<EMField> {
    drive_field_of(&law.state_at(t)?, hel, q)
}

pub(crate) fn drive_field_of(a: &AngleState, hel: Helicity, q: ChargeSpec) -> Result<EMField> {
    let scale = hel.sign() * 0.5 * q.inverse()?;
    let (sp, cp) = a.phi.sin_cos();
    let cross = a.theta_rate * a.phi_rate;
    let e = Vec3::new(
        cp * cross + sp * a.theta_accel,
        sp * cross - cp * a.theta_accel,
        -a.phi_accel,
    ) * scale;
    Ok(EMField::electric(e))
}

/// Field of the pure-gauge potential `κ_μ s`; adding it to a drive field
/// leaves the spinor unchanged.
pub fn gauge_family_field(law: &AngleLaw, s: &GaugeScalar, q: ChargeSpec, ev: &Event) -> Result<EMField> {
    let angles = law.state_at(ev.t)?;
    let value = s.value(ev, &angles)?;
    let grad = s.gradient(ev, &angles)?;
    gauge_family_field_of(&angles, value, grad, q)
}

pub(crate) fn gauge_family_field_of(
    a: &AngleState,
    s: f64,
    grad: [f64; 4],
    q: ChargeSpec,
) -> Result<EMField> {
    let inv_q = q.inverse()?;
    let [ds_t, ds_x, ds_y, ds_z] = grad;
    let (st, ct) = a.theta.sin_cos();
    let (sp, cp) = a.phi.sin_cos();
    let e = Vec3::new(
        st * cp * ds_t + ds_x + s * (ct * cp * a.theta_rate - st * sp * a.phi_rate),
        st * sp * ds_t + ds_y + s * (ct * sp * a.theta_rate + st * cp * a.phi_rate),
        ct * ds_t + ds_z - st * a.theta_rate * s,
    ) * -inv_q;
    let b = Vec3::new(
        -st * sp * ds_z + ct * ds_y,
        st * cp * ds_z - ct * ds_x,
        st * (-cp * ds_y + sp * ds_x),
    ) * inv_q;
    Ok(EMField { e, b })
}

/// Field that changes the energy at rate `dE/dt` while the angles satisfy
/// the zero-drive condition: `E = (dE/dt / q)·v̂`.
pub fn energy_control_field(de_dt: f64, law: &AngleLaw, q: ChargeSpec, t: f64) -> Result<EMField> {
    let inv_q = q.inverse()?;
    let v = crate::observables::velocity_of(&law.state_at(t)?);
    Ok(EMField::electric(v * (de_dt * inv_q)))
}

/// Geometry of a localization-control field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ControlMode {
    /// `θ = θ₀` held fixed, `φ` driven.
    Azimuthal { theta0: f64 },
    /// `φ = φ₀` held fixed, `θ` driven.
    Polar { phi0: f64 },
}

/// Field that changes the localization parameter at rate `dk/dt`.
///
/// Azimuthal: `E = −dk/dt / (q sinθ₀)·ẑ`, with `θ₀ ∈ (0, π)`.
/// Polar: `E = dk/dt / q·(sinφ₀, −cosφ₀, 0)`.
/// Negative helicity reverses the field.
pub fn k_control_field(dk_dt: f64, mode: ControlMode, hel: Helicity, q: ChargeSpec) -> Result<EMField> {
    let inv_q = q.inverse()?;
    let e = match mode {
        ControlMode::Azimuthal { theta0 } => {
            if !(theta0 > 0.0 && theta0 < std::f64::consts::PI) {
                return Err(Error::PolarAxis(theta0));
            }
            let sin = theta0.sin();
            Vec3::new(0.0, 0.0, -dk_dt * inv_q / sin)
        }
        ControlMode::Polar { phi0 } => Vec3::new(phi0.sin(), -phi0.cos(), 0.0) * (dk_dt * inv_q),
    };
    Ok(EMField::electric(e * hel.sign()))
}
