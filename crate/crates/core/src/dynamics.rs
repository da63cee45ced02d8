//! Angle evolution under applied electric fields and the classical
//! trajectories that follow the spinor velocity.
//!
//! Inverting the drive-field relation for the angles gives
//!
//! ```text
//! θ̈ = 2q(E_x sinφ − E_y cosφ)
//! φ̈ = −2q·E_z
//! θ̇φ̇ = 2q(E_x cosφ + E_y sinφ)      (constraint)
//! ```
//!
//! with `E → −E` for negative helicity. The third line is not an equation of
//! motion; a field that violates it cannot keep the particle inside the
//! spinor family, and integration stops.

use crate::cli::{FieldSpec, Scenario};
use crate::error::{Error, Result};
use crate::exprkit::{AngleLaw, AngleState, Bindings, Expr};
use crate::observables::{kinetic_momentum_of, localization_of, velocity_of};
use crate::potentials::{drive_field_of, ChargeSpec, GaugeScalar};
use crate::spinor::Helicity;
use crate::vector::{Event, Vec3};

/// Default absolute tolerance on the constraint residual.
pub const DEFAULT_CONSTRAINT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticleState {
    pub position: Vec3,
    pub theta: f64,
    pub phi: f64,
    pub theta_rate: f64,
    pub phi_rate: f64,
    pub helicity: Helicity,
    pub charge: ChargeSpec,
}

impl ParticleState {
    /// State at `t` of a particle following `law`, placed at `position`.
    pub fn from_law(law: &AngleLaw, t: f64, position: Vec3, helicity: Helicity, charge: ChargeSpec) -> Result<Self> {
        let a = law.state_at(t)?;
        Ok(Self {
            position,
            theta: a.theta,
            phi: a.phi,
            theta_rate: a.theta_rate,
            phi_rate: a.phi_rate,
            helicity,
            charge,
        })
    }

    pub fn angles(&self) -> AngleState {
        AngleState {
            theta: self.theta,
            phi: self.phi,
            theta_rate: self.theta_rate,
            phi_rate: self.phi_rate,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Acceleration {
    pub theta_accel: f64,
    pub phi_accel: f64,
    pub constraint_residual: f64,
}

/// Angular accelerations demanded by the field `e` and the residual of the
/// constraint equation.
pub fn accel_from_field(state: &ParticleState, e: Vec3) -> Result<Acceleration> {
    let q = state.charge.q;
    state.charge.inverse()?;
    Ok(accel_raw(
        state.theta_rate,
        state.phi,
        state.phi_rate,
        e * state.helicity.sign(),
        q,
    ))
}

fn accel_raw(theta_rate: f64, phi: f64, phi_rate: f64, e: Vec3, q: f64) -> Acceleration {
    let (sp, cp) = phi.sin_cos();
    Acceleration {
        theta_accel: 2.0 * q * (e.x * sp - e.y * cp),
        phi_accel: -2.0 * q * e.z,
        constraint_residual: (theta_rate * phi_rate - 2.0 * q * (e.x * cp + e.y * sp)).abs(),
    }
}

/// Time profile of the applied electric field.
#[derive(Clone, Debug, PartialEq)]
pub enum ElectricProgram {
    Zero,
    Constant(Vec3),
    /// `(t_start, E)` pieces sorted by start time; the field before the
    /// first start is zero.
    Piecewise(Vec<(f64, Vec3)>),
    /// Components as expressions in `t`.
    Expressions(Box<[Expr; 3]>),
    /// The closed-form drive field of an angle law, so that the law itself
    /// is reproduced.
    Drive {
        law: AngleLaw,
        helicity: Helicity,
        charge: ChargeSpec,
    },
}

/// Applied fields. Only electric programs drive the angles; a non-zero
/// magnetic part is rejected by the integrator.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldProgram {
    pub electric: ElectricProgram,
    pub magnetic: Vec3,
}

impl FieldProgram {
    pub fn new(electric: ElectricProgram) -> Self {
        Self {
            electric,
            magnetic: Vec3::ZERO,
        }
    }

    pub fn zero() -> Self {
        Self::new(ElectricProgram::Zero)
    }

    pub fn constant(e: Vec3) -> Self {
        Self::new(ElectricProgram::Constant(e))
    }

    pub fn drive(law: AngleLaw, helicity: Helicity, charge: ChargeSpec) -> Self {
        Self::new(ElectricProgram::Drive {
            law,
            helicity,
            charge,
        })
    }

    pub fn with_magnetic(mut self, b: Vec3) -> Self {
        self.magnetic = b;
        self
    }

    pub fn electric_at(&self, t: f64) -> Result<Vec3> {
        match &self.electric {
            ElectricProgram::Zero => Ok(Vec3::ZERO),
            ElectricProgram::Constant(e) => Ok(*e),
            ElectricProgram::Piecewise(pieces) => Ok(pieces
                .iter()
                .take_while(|(start, _)| *start <= t)
                .last()
                .map_or(Vec3::ZERO, |(_, e)| *e)),
            ElectricProgram::Expressions(c) => {
                let b = Bindings::time(t);
                Ok(Vec3::new(c[0].eval(&b)?, c[1].eval(&b)?, c[2].eval(&b)?))
            }
            ElectricProgram::Drive {
                law,
                helicity,
                charge,
            } => Ok(drive_field_of(&law.state_at(t)?, *helicity, *charge)?.e),
        }
    }
}

/// One row of a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub position: Vec3,
    pub velocity: Vec3,
    pub theta: f64,
    pub phi: f64,
    pub theta_rate: f64,
    pub phi_rate: f64,
    pub k: f64,
    pub energy: f64,
    pub momentum: Vec3,
    pub field: Vec3,
    pub constraint_residual: f64,
}

impl Sample {
    pub fn angles(&self) -> AngleState {
        AngleState {
            theta: self.theta,
            phi: self.phi,
            theta_rate: self.theta_rate,
            phi_rate: self.phi_rate,
            ..Default::default()
        }
    }
}

/// Samples on a uniform time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub helicity: Helicity,
    pub charge: ChargeSpec,
    pub dt: f64,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> Option<&Sample> {
        self.samples.first()
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    /// `(min k, max k)` over the samples.
    pub fn k_range(&self) -> (f64, f64) {
        self.samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s.k), hi.max(s.k)))
    }

    /// `(min k, max k)` with interior extrema refined by the vertex of the
    /// parabola through the three samples around them, so a smooth extremum
    /// between grid points is found to `O(dt⁴)`.
    pub fn k_extrema(&self) -> (f64, f64) {
        let (mut lo, mut hi) = self.k_range();
        for w in self.samples.windows(3) {
            let (a, b, c) = (w[0].k, w[1].k, w[2].k);
            let curvature = a - 2.0 * b + c;
            let is_min = b <= a && b <= c;
            let is_max = b >= a && b >= c;
            if curvature == 0.0 || !(is_min || is_max) {
                continue;
            }
            let vertex = (b - (a - c) * (a - c) / (8.0 * curvature)).max(0.0);
            if is_min {
                lo = lo.min(vertex);
            } else {
                hi = hi.max(vertex);
            }
        }
        (lo, hi)
    }

    pub fn max_distance_from_start(&self) -> f64 {
        let Some(start) = self.first().map(|s| s.position) else {
            return 0.0;
        };
        self.samples
            .iter()
            .map(|s| (s.position - start).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `||v| − 1|` over the samples.
    pub fn max_speed_drift(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| (s.velocity.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Sample nearest to time `t`.
    pub fn sample_at(&self, t: f64) -> Option<&Sample> {
        if self.samples.is_empty() || self.dt <= 0.0 {
            return None;
        }
        let t0 = self.samples[0].t;
        let i = ((t - t0) / self.dt).round();
        if i < 0.0 {
            return None;
        }
        self.samples.get(i as usize)
    }
}

/// Knobs for [`integrate_with`].
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrationOptions {
    pub constraint_tolerance: f64,
    /// Time-only gauge scalar used for the energy and momentum columns.
    pub gauge: GaugeScalar,
    pub start_time: f64,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        Self {
            constraint_tolerance: DEFAULT_CONSTRAINT_TOLERANCE,
            gauge: GaugeScalar::zero(),
            start_time: 0.0,
        }
    }
}

/// Integrates with [`IntegrationOptions::default`].
pub fn integrate_trajectory(initial: &ParticleState, program: &FieldProgram, t_end: f64, dt: f64) -> Result<Trajectory> {
    integrate_with(initial, program, t_end, dt, &IntegrationOptions::default())
}

// y = [x, y, z, θ, φ, θ̇, φ̇]
type StateVec = [f64; 7];

fn derivative(y: &StateVec, e: Vec3, q: f64, hel: Helicity) -> StateVec {
    let (st, ct) = y[3].sin_cos();
    let (sp, cp) = y[4].sin_cos();
    let acc = accel_raw(y[5], y[4], y[6], e * hel.sign(), q);
    [st * cp, st * sp, ct, y[5], y[6], acc.theta_accel, acc.phi_accel]
}

fn axpy(y: &StateVec, k: &StateVec, h: f64) -> StateVec {
    std::array::from_fn(|i| y[i] + h * k[i])
}

/// Classic fourth-order Runge–Kutta on position and angles over
/// `[start, start + t_end]`.
///
/// The grid has `n = round(t_end/dt)` equal steps, so the step actually used
/// is `t_end/n`. Every grid point is sampled.
pub fn integrate_with(
    initial: &ParticleState,
    program: &FieldProgram,
    t_end: f64,
    dt: f64,
    opts: &IntegrationOptions,
) -> Result<Trajectory> {
    if !(dt > 0.0 && t_end > 0.0 && dt.is_finite() && t_end.is_finite()) {
        return Err(Error::InvalidGrid { dt, t_end });
    }
    let steps = (t_end / dt).round().max(1.0);
    let h = t_end / steps;
    let t0 = opts.start_time;
    if t0 + h == t0 || steps > 1e9 {
        return Err(Error::InvalidGrid { dt, t_end });
    }
    let steps = steps as usize;
    let b = program.magnetic.norm();
    if b != 0.0 {
        return Err(Error::MagneticDrive(b));
    }
    initial.charge.inverse()?;
    let (q, hel) = (initial.charge.q, initial.helicity);

    let mut traj = Trajectory {
        helicity: hel,
        charge: initial.charge,
        dt: h,
        samples: Vec::with_capacity(steps + 1),
    };
    let mut y: StateVec = [
        initial.position.x,
        initial.position.y,
        initial.position.z,
        initial.theta,
        initial.phi,
        initial.theta_rate,
        initial.phi_rate,
    ];

    for i in 0..=steps {
        let t = t0 + i as f64 * h;
        let e = program.electric_at(t)?;
        let sample = make_sample(&y, t, e, q, hel, &opts.gauge)?;
        let residual = sample.constraint_residual;
        traj.samples.push(sample);
        if !(residual <= opts.constraint_tolerance) {
            return Err(Error::ConstraintViolation {
                t,
                residual,
                tolerance: opts.constraint_tolerance,
                partial: Box::new(traj),
            });
        }
        if i == steps {
            break;
        }
        let e_mid = program.electric_at(t + 0.5 * h)?;
        let e_end = program.electric_at(t0 + (i + 1) as f64 * h)?;
        let k1 = derivative(&y, e, q, hel);
        let k2 = derivative(&axpy(&y, &k1, 0.5 * h), e_mid, q, hel);
        let k3 = derivative(&axpy(&y, &k2, 0.5 * h), e_mid, q, hel);
        let k4 = derivative(&axpy(&y, &k3, h), e_end, q, hel);
        for j in 0..7 {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(t + h));
        }
    }
    Ok(traj)
}

fn make_sample(y: &StateVec, t: f64, e: Vec3, q: f64, hel: Helicity, gauge: &GaugeScalar) -> Result<Sample> {
    let angles = AngleState {
        theta: y[3],
        phi: y[4],
        theta_rate: y[5],
        phi_rate: y[6],
        ..Default::default()
    };
    let acc = accel_raw(y[5], y[4], y[6], e * hel.sign(), q);
    let s = gauge.value(&Event::at_time(t), &angles)?;
    let pi = kinetic_momentum_of(&angles, s, hel);
    Ok(Sample {
        t,
        position: Vec3::new(y[0], y[1], y[2]),
        velocity: velocity_of(&angles),
        theta: y[3],
        phi: y[4],
        theta_rate: y[5],
        phi_rate: y[6],
        k: localization_of(&angles),
        energy: pi.energy(),
        momentum: pi.momentum(),
        field: e,
        constraint_residual: acc.constraint_residual,
    })
}

/// Largest deviation of the sampled momentum and energy rates from the force
/// laws `dp/dt = qE` and `dE₀/dt = qE·v`, using central differences of the
/// samples. `E` is the applied field plus the field of the gauge scalar.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ForceLawErrors {
    pub momentum: f64,
    pub energy: f64,
}

pub fn force_law_errors(traj: &Trajectory, gauge: &GaugeScalar) -> Result<ForceLawErrors> {
    let mut out = ForceLawErrors {
        momentum: 0.0,
        energy: 0.0,
    };
    let q = traj.charge.q;
    for w in traj.samples.windows(3) {
        let (prev, mid, next) = (&w[0], &w[1], &w[2]);
        let span = next.t - prev.t;
        let dp = (next.momentum - prev.momentum) * (1.0 / span);
        let de = (next.energy - prev.energy) / span;
        let angles = mid.angles();
        let ev = Event::at_time(mid.t);
        let s = gauge.value(&ev, &angles)?;
        let grad = gauge.gradient(&ev, &angles)?;
        let gauge_e = crate::potentials::gauge_family_field_of(&angles, s, grad, traj.charge)?.e;
        let force = (mid.field + gauge_e) * q;
        out.momentum = out.momentum.max(dp.max_abs_diff(force));
        out.energy = out.energy.max((de - force.dot(mid.velocity)).abs());
    }
    Ok(out)
}

/// Headline numbers of a scenario run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScenarioSummary {
    pub k_min: f64,
    pub k_max: f64,
    pub endpoint: Vec3,
    pub max_distance_from_start: f64,
    pub max_speed_drift: f64,
    pub max_constraint_residual: f64,
    /// Sample time of the smallest `k`, when it reaches zero.
    pub k_zero_time: Option<f64>,
    /// First time after the zero at which `k` is back to its initial value.
    pub recovery_time: Option<f64>,
}

const K_ZERO: f64 = 1e-6;

impl ScenarioSummary {
    pub fn of(traj: &Trajectory) -> Self {
        let (k_min, k_max) = traj.k_extrema();
        let zero = traj
            .samples
            .iter()
            .enumerate()
            .filter(|(_, s)| s.k <= K_ZERO)
            .min_by(|a, b| a.1.k.total_cmp(&b.1.k))
            .map(|(i, _)| i);
        let recovery = zero.and_then(|i| {
            let k0 = traj.first()?.k;
            traj.samples[i..].iter().find(|s| s.k >= k0 - K_ZERO).map(|s| s.t)
        });
        Self {
            k_min,
            k_max,
            endpoint: traj.last().map_or(Vec3::ZERO, |s| s.position),
            max_distance_from_start: traj.max_distance_from_start(),
            max_speed_drift: traj.max_speed_drift(),
            max_constraint_residual: traj
                .samples
                .iter()
                .map(|s| s.constraint_residual)
                .fold(0.0, f64::max),
            k_zero_time: zero.map(|i| traj.samples[i].t),
            recovery_time: recovery,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioRun {
    pub trajectory: Trajectory,
    pub summary: ScenarioSummary,
}

/// The applied field program a scenario asks for.
pub fn field_program(scenario: &Scenario) -> Result<FieldProgram> {
    let electric = match &scenario.field {
        FieldSpec::Zero => ElectricProgram::Zero,
        FieldSpec::Drive => ElectricProgram::Drive {
            law: scenario.law.clone(),
            helicity: scenario.helicity,
            charge: scenario.charge,
        },
        FieldSpec::AxialControl { strength } => {
            let ez = scenario.helicity.sign() * strength * scenario.charge.inverse()?;
            ElectricProgram::Constant(Vec3::new(0.0, 0.0, ez))
        }
        FieldSpec::Components(c) => match (c[0].as_const(), c[1].as_const(), c[2].as_const()) {
            (Some(x), Some(y), Some(z)) => ElectricProgram::Constant(Vec3::new(x, y, z)),
            _ => ElectricProgram::Expressions(c.clone()),
        },
    };
    Ok(FieldProgram::new(electric).with_magnetic(scenario.magnetic))
}

/// Integrates a scenario from `t = 0` to `t_end`.
///
/// The gauge scalar enters the energy and momentum columns, so it must not
/// vary in space.
pub fn run_scenario(scenario: &Scenario) -> Result<ScenarioRun> {
    if !scenario.gauge.is_time_only() {
        return Err(Error::SpatialGauge);
    }
    let initial = ParticleState::from_law(&scenario.law, 0.0, scenario.start, scenario.helicity, scenario.charge)?;
    let opts = IntegrationOptions {
        constraint_tolerance: scenario.constraint_tolerance,
        gauge: scenario.gauge.clone(),
        start_time: 0.0,
    };
    let trajectory = integrate_with(&initial, &field_program(scenario)?, scenario.t_end, scenario.dt, &opts)?;
    let summary = ScenarioSummary::of(&trajectory);
    Ok(ScenarioRun { trajectory, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn state(theta: f64, phi: f64, theta_rate: f64, phi_rate: f64) -> ParticleState {
        ParticleState {
            position: Vec3::ZERO,
            theta,
            phi,
            theta_rate,
            phi_rate,
            helicity: Helicity::Positive,
            charge: ChargeSpec::new(1.0),
        }
    }

    #[test]
    fn free_and_uniform_rotation_need_no_field() {
        for s in [state(0.3, 0.2, 0.0, 0.0), state(0.3, 0.2, 2.0, 0.0), state(0.3, 0.2, 0.0, 3.0)] {
            let a = accel_from_field(&s, Vec3::ZERO).unwrap();
            assert_eq!(a, Acceleration { theta_accel: 0.0, phi_accel: 0.0, constraint_residual: 0.0 });
        }
    }

    #[test]
    fn axial_field_drives_phi() {
        let a = accel_from_field(&state(1.0, 0.4, 0.0, 2.0), Vec3::new(0.0, 0.0, 0.75)).unwrap();
        assert_eq!(a.phi_accel, -1.5);
        assert_eq!(a.theta_accel, 0.0);
        assert_eq!(a.constraint_residual, 0.0);
        // plug back into the drive field
        let law_state = AngleState {
            theta: 1.0,
            phi: 0.4,
            theta_rate: 0.0,
            phi_rate: 2.0,
            theta_accel: a.theta_accel,
            phi_accel: a.phi_accel,
        };
        let e = drive_field_of(&law_state, Helicity::Positive, ChargeSpec::new(1.0)).unwrap().e;
        assert!(e.max_abs_diff(Vec3::new(0.0, 0.0, 0.75)) < 1e-15);
    }

    #[test]
    fn incompatible_field_reports_residual() {
        let a = accel_from_field(&state(1.0, 0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(a.constraint_residual, 2.0);
    }

    #[test]
    fn negative_helicity_flips_field() {
        let mut s = state(1.0, 0.4, 0.0, 2.0);
        s.helicity = Helicity::Negative;
        let a = accel_from_field(&s, Vec3::new(0.0, 0.0, 0.75)).unwrap();
        assert_eq!(a.phi_accel, 1.5);
    }

    #[test]
    fn zero_charge_rejected() {
        let mut s = state(1.0, 0.4, 0.0, 2.0);
        s.charge = ChargeSpec::new(0.0);
        assert!(matches!(accel_from_field(&s, Vec3::ZERO), Err(Error::ZeroCharge)));
    }

    #[test]
    fn straight_line() {
        let traj = integrate_trajectory(&state(0.0, 0.0, 0.0, 0.0), &FieldProgram::zero(), 2.0, 0.01).unwrap();
        for s in &traj.samples {
            assert!((s.position.z - s.t).abs() < 1e-12);
            assert_eq!(s.position.x, 0.0);
        }
        assert_eq!(traj.len(), 201);
    }

    #[test]
    fn circle_closes() {
        let traj = integrate_trajectory(&state(0.0, 0.0, 2.0, 0.0), &FieldProgram::zero(), PI, 1e-3).unwrap();
        let end = traj.last().unwrap().position;
        assert!(end.norm() < 1e-6, "{end:?}");
    }

    #[test]
    fn helix_geometry() {
        let (theta0, w) = (FRAC_PI_4, 2.0);
        let period = 2.0 * PI / w;
        let traj = integrate_trajectory(&state(theta0, 0.0, 0.0, w), &FieldProgram::zero(), period, 1e-3).unwrap();
        let end = traj.last().unwrap().position;
        let pitch = theta0.cos() * period;
        assert!((end.z - pitch).abs() < 1e-5);
        assert!(end.x.abs() < 1e-6 && end.y.abs() < 1e-6);
    }

    #[test]
    fn rejects_magnetic_and_bad_grid() {
        let s = state(0.0, 0.0, 0.0, 0.0);
        let prog = FieldProgram::zero().with_magnetic(Vec3::new(0.0, 0.0, 1.0));
        assert!(matches!(integrate_trajectory(&s, &prog, 1.0, 0.1), Err(Error::MagneticDrive(_))));
        for (t_end, dt) in [(1.0, 0.0), (0.0, 0.1), (1.0, -0.1), (f64::NAN, 0.1)] {
            assert!(matches!(
                integrate_trajectory(&s, &FieldProgram::zero(), t_end, dt),
                Err(Error::InvalidGrid { .. })
            ));
        }
    }

    #[test]
    fn incompatible_program_aborts_with_partial() {
        let s = state(FRAC_PI_2, 0.0, 0.0, 1.0);
        let prog = FieldProgram::new(ElectricProgram::Piecewise(vec![(0.5, Vec3::new(1.0, 0.0, 0.0))]));
        match integrate_trajectory(&s, &prog, 1.0, 0.01) {
            Err(Error::ConstraintViolation { t, partial, .. }) => {
                assert!((t - 0.5).abs() < 1e-12);
                assert_eq!(partial.len(), 51);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn drive_program_reproduces_law() {
        let law = AngleLaw::linear(FRAC_PI_2, 3f64.sqrt(), 0.0, 5f64.sqrt());
        let q = ChargeSpec::new(1.0);
        let init = ParticleState::from_law(&law, 0.0, Vec3::ZERO, Helicity::Positive, q).unwrap();
        let traj = integrate_trajectory(&init, &FieldProgram::drive(law.clone(), Helicity::Positive, q), 5.0, 1e-3)
            .unwrap();
        let last = traj.last().unwrap();
        let want = law.state_at(5.0).unwrap();
        assert!((last.theta - want.theta).abs() < 1e-9);
        assert!((last.phi - want.phi).abs() < 1e-9);
    }

    #[test]
    fn expression_program() {
        let prog = FieldProgram::new(ElectricProgram::Expressions(Box::new([
            Expr::Const(0.0),
            crate::exprkit::parse_expr("t").unwrap(),
            Expr::Const(2.0),
        ])));
        assert_eq!(prog.electric_at(3.0).unwrap(), Vec3::new(0.0, 3.0, 2.0));
    }
}
