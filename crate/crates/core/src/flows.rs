//! Orbit integration for the right U-, D- and B-actions, divergence probes
//! and boundary limit experiments.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::groups::{GroupError, ProductElement, TransversePoint};
use crate::models::{
    sol3_b_embed, sol3_mul, CoordSpec, Lift, LiftKind, Model, ModelError, ModelId, QuotientPoint,
};
use crate::moebius::{BoundaryPoint, HalfPlanePoint, MoebiusElement, MoebiusError};

/// Largest accepted orbit length.
pub const MAX_STEPS: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("invalid step size: {0}")]
    InvalidStep(String),
    #[error("{steps} steps exceeds the limit of {MAX_STEPS}")]
    TooManySteps { steps: u64 },
    #[error("flow {flow} is not available on model {model} with {lift:?} lifts")]
    Unsupported {
        flow: &'static str,
        model: ModelId,
        lift: LiftKind,
    },
    #[error("reduction failed at step {step}: {source}")]
    Step { step: u64, source: ModelError },
    #[error("{which} did not converge within {n_max} terms")]
    NoConvergence { which: &'static str, n_max: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FlowKind {
    HorocycleU { dt: f64 },
    /// Time-`dt` map is right multiplication by `geodesic(dt)`.
    GeodesicD { dt: f64 },
    BorelB { d_alpha: f64, d_beta: f64 },
    /// Right Sol³ multiplication by the image of `borel(1, dβ)`; T³_A only.
    Sol3U { d_beta: f64 },
}

impl FlowKind {
    pub fn name(&self) -> &'static str {
        match self {
            FlowKind::HorocycleU { .. } => "u",
            FlowKind::GeodesicD { .. } => "d",
            FlowKind::BorelB { .. } => "b",
            FlowKind::Sol3U { .. } => "sol3u",
        }
    }

    pub fn validate(&self) -> Result<(), FlowError> {
        let ok = |x: f64| x.is_finite() && x != 0.0;
        let valid = match *self {
            FlowKind::HorocycleU { dt } | FlowKind::GeodesicD { dt } => ok(dt),
            FlowKind::Sol3U { d_beta } => ok(d_beta),
            FlowKind::BorelB { d_alpha, d_beta } => {
                d_alpha.is_finite() && d_alpha > 0.0 && d_beta.is_finite() && (d_alpha != 1.0 || d_beta != 0.0)
            }
        };
        if valid {
            Ok(())
        } else {
            Err(FlowError::InvalidStep(self.to_string()))
        }
    }

    /// Time elapsed per step; B steps count as unit time.
    pub fn step_time(&self) -> f64 {
        match *self {
            FlowKind::HorocycleU { dt } | FlowKind::GeodesicD { dt } => dt.abs(),
            FlowKind::Sol3U { d_beta } => d_beta.abs(),
            FlowKind::BorelB { .. } => 1.0,
        }
    }

    /// The step as an element of the Borel subgroup `z ↦ αz + β`.
    fn borel_step(&self) -> (f64, f64) {
        match *self {
            FlowKind::HorocycleU { dt } => (1.0, dt),
            FlowKind::GeodesicD { dt } => (dt.exp(), 0.0),
            FlowKind::BorelB { d_alpha, d_beta } => (d_alpha, d_beta),
            FlowKind::Sol3U { d_beta } => (1.0, d_beta),
        }
    }

    fn moebius_step(&self) -> MoebiusElement {
        match *self {
            FlowKind::HorocycleU { dt } => MoebiusElement::unipotent(dt),
            FlowKind::GeodesicD { dt } => MoebiusElement::geodesic(dt),
            FlowKind::Sol3U { d_beta } => MoebiusElement::unipotent(d_beta),
            FlowKind::BorelB { d_alpha, d_beta } => {
                MoebiusElement::borel(d_alpha, d_beta).expect("validated")
            }
        }
    }
}

impl fmt::Display for FlowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FlowKind::HorocycleU { dt } => write!(f, "u(dt={dt})"),
            FlowKind::GeodesicD { dt } => write!(f, "d(dt={dt})"),
            FlowKind::BorelB { d_alpha, d_beta } => write!(f, "b(alpha={d_alpha}, beta={d_beta})"),
            FlowKind::Sol3U { d_beta } => write!(f, "sol3u(dbeta={d_beta})"),
        }
    }
}

/// One right-action step, precomputed for a model and lift kind.
#[derive(Clone, Copy, Debug)]
enum Stepper {
    Sol([f64; 3]),
    Frame(MoebiusElement),
}

impl Stepper {
    fn new(model: &Model, kind: LiftKind, flow: FlowKind) -> Result<Self, FlowError> {
        flow.validate()?;
        let unsupported = || FlowError::Unsupported {
            flow: flow.name(),
            model: model.id(),
            lift: kind,
        };
        match (model, kind) {
            (Model::T3A(t), LiftKind::Sol) => {
                let (alpha, beta) = flow.borel_step();
                Ok(Stepper::Sol(sol3_b_embed(alpha, beta, t.lambda())?))
            }
            (Model::Surface(_), LiftKind::Sol) => Err(unsupported()),
            (Model::Surface(_), LiftKind::Frame) if matches!(flow, FlowKind::Sol3U { .. }) => {
                Err(unsupported())
            }
            (_, LiftKind::Frame) => Ok(Stepper::Frame(flow.moebius_step())),
        }
    }

    fn apply(&self, lift: &Lift, lambda: f64) -> Lift {
        match (self, lift) {
            (Stepper::Sol(s), Lift::Sol(p)) => Lift::Sol(sol3_mul(*p, *s, lambda)),
            (Stepper::Frame(s), Lift::Frame { frame, fiber }) => Lift::frame(frame.compose(s), *fiber),
            _ => unreachable!("stepper built for this lift kind"),
        }
    }
}

fn model_lambda(model: &Model) -> f64 {
    match model {
        Model::T3A(t) => t.lambda(),
        Model::Surface(_) => 1.0,
    }
}

/// Lazily integrated orbit: each item is `(time, reduced point)`.
pub struct OrbitIter<'a> {
    model: &'a Model,
    stepper: Stepper,
    lambda: f64,
    step_time: f64,
    current: Option<QuotientPoint>,
    index: u64,
    steps: u64,
}

impl<'a> OrbitIter<'a> {
    pub fn new(model: &'a Model, start: &Lift, flow: FlowKind, steps: u64) -> Result<Self, FlowError> {
        if steps > MAX_STEPS {
            return Err(FlowError::TooManySteps { steps });
        }
        let stepper = Stepper::new(model, start.kind(), flow)?;
        let current = if steps == 0 {
            None
        } else {
            Some(model.reduce(start).map_err(|source| FlowError::Step { step: 0, source })?)
        };
        Ok(Self {
            model,
            stepper,
            lambda: model_lambda(model),
            step_time: flow.step_time(),
            current,
            index: 0,
            steps,
        })
    }
}

impl Iterator for OrbitIter<'_> {
    type Item = Result<(f64, QuotientPoint), FlowError>;

    fn next(&mut self) -> Option<Self::Item> {
        let point = self.current.take()?;
        let time = self.index as f64 * self.step_time;
        if self.index < self.steps {
            let moved = self.stepper.apply(&point.lift, self.lambda);
            match self.model.reduce(&moved) {
                Ok(q) => self.current = Some(q),
                Err(source) => {
                    let step = self.index + 1;
                    self.index = self.steps;
                    self.current = None;
                    return Some(Err(FlowError::Step { step, source }));
                }
            }
        }
        self.index += 1;
        Some(Ok((time, point)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSegment {
    pub model: ModelId,
    pub flow: FlowKind,
    pub samples: Vec<(f64, QuotientPoint)>,
    pub seed: u64,
    pub steps: u64,
    pub legend: Vec<CoordSpec>,
}

impl OrbitSegment {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = &[f64]> {
        self.samples.iter().map(|(_, q)| q.coords.as_slice())
    }
}

/// Integrates `steps` right-action steps from `start`, reducing after every step.
///
/// A segment of `n > 0` steps holds `n + 1` samples at times `0, h, .., nh`;
/// `n = 0` gives an empty segment.
pub fn integrate_orbit(
    model: &Model,
    start: &Lift,
    flow: FlowKind,
    steps: u64,
    seed: u64,
) -> Result<OrbitSegment, FlowError> {
    let samples = OrbitIter::new(model, start, flow, steps)?.collect::<Result<Vec<_>, _>>()?;
    Ok(OrbitSegment {
        model: model.id(),
        flow,
        samples,
        seed,
        steps,
        legend: model.legend(start.kind()),
    })
}

/// Seed for the `index`-th orbit of a sweep (splitmix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Integrates `count` orbits from random frame lifts in parallel; orbit `k`
/// starts from a point drawn with `derive_seed(seed, k)`. Output order is by `k`.
pub fn sweep(
    model: &Model,
    count: usize,
    flow: FlowKind,
    steps: u64,
    seed: u64,
) -> Vec<Result<OrbitSegment, FlowError>> {
    (0..count as u64)
        .into_par_iter()
        .map(|k| {
            let s = derive_seed(seed, k);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let start = model.random_frame(&mut rng);
            integrate_orbit(model, &start, flow, steps, s)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Divergence

#[derive(Clone, Debug, PartialEq)]
pub enum DivergenceProbe {
    /// Escape functional of the model along a flow orbit.
    Flow { start: Lift, flow: FlowKind },
    /// Iterates of a deck element on `∂H × fiber`; escape is the inverse
    /// product-chordal distance to `target`.
    BoundaryIteration {
        element: ProductElement,
        start: (BoundaryPoint, TransversePoint),
        target: (BoundaryPoint, TransversePoint),
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceReport {
    pub diverged: bool,
    /// Flow time (or iteration count) at which the threshold was first exceeded.
    pub first_passage: Option<f64>,
    pub max_escape: f64,
}

/// Chordal distance on the fiber, with real coordinates viewed on `∂H`.
fn fiber_chordal(a: &TransversePoint, b: &TransversePoint) -> f64 {
    match (a, b) {
        (TransversePoint::Real(x), TransversePoint::Real(y)) => {
            BoundaryPoint::from_real(*x).chordal(&BoundaryPoint::from_real(*y))
        }
        _ => a.distance(b),
    }
}

/// Runs a probe for `horizon` steps and reports whether the escape functional
/// exceeded `threshold`.
pub fn detect_divergence(
    model: &Model,
    probe: &DivergenceProbe,
    horizon: u64,
    threshold: f64,
) -> Result<DivergenceReport, FlowError> {
    let mut report = DivergenceReport {
        diverged: false,
        first_passage: None,
        max_escape: 0.0,
    };
    let mut record = |time: f64, escape: f64| -> bool {
        report.max_escape = report.max_escape.max(escape);
        if escape > threshold {
            report.diverged = true;
            report.first_passage = Some(time);
            return true;
        }
        false
    };
    match probe {
        DivergenceProbe::Flow { start, flow } => {
            for sample in OrbitIter::new(model, start, *flow, horizon)? {
                let (time, q) = sample?;
                if record(time, model.escape(&q)) {
                    break;
                }
            }
        }
        DivergenceProbe::BoundaryIteration {
            element,
            start,
            target,
        } => {
            let (mut xi, mut y) = *start;
            for n in 0..=horizon {
                let d = xi.chordal(&target.0).max(fiber_chordal(&y, &target.1));
                if record(n as f64, d.recip()) {
                    break;
                }
                (xi, y) = element.apply_dual(xi, &y)?;
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Boundary limits of sequences

#[derive(Clone, Debug, PartialEq)]
pub enum KeyLemmaSequence {
    /// `fₙ = gⁿ`.
    Powers(MoebiusElement),
    /// `fₙ` given explicitly for `n = 1, 2, ..`.
    Explicit(Vec<MoebiusElement>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KeyLemmaConfig {
    pub z0: HalfPlanePoint,
    pub grid: usize,
    pub exclusion: f64,
    pub n_max: usize,
    /// Cauchy tolerance for the limits `ξ±` in the closed-disk metric.
    pub cauchy_tol: f64,
    /// Residual below which a grid point counts as converged.
    pub tol: f64,
}

impl Default for KeyLemmaConfig {
    fn default() -> Self {
        Self {
            z0: HalfPlanePoint::I,
            grid: 64,
            exclusion: 0.01,
            n_max: 200,
            cauchy_tol: 1e-10,
            tol: 1e-4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KeyLemmaReport {
    pub xi_plus: BoundaryPoint,
    pub xi_minus: BoundaryPoint,
    /// `max` over the admissible grid of `chordal(f_{n_max}(ξ), ξ⁺)`.
    pub max_residual: f64,
    pub worst_xi: Option<BoundaryPoint>,
    /// Grid maximum of the residual after each term, `n = 1..=n_max`.
    pub residual_curve: Vec<f64>,
    /// Largest first-passage index below `tol`, if every admissible point got there.
    pub first_passage: Option<usize>,
    pub admissible: usize,
}

/// Closed-disk image `w = −(z − i)/(z + i)` as `(re, im, 1 − |w|)`; the
/// boundary angle `θ` goes to `e^{iθ}`.
fn disk_image(z: HalfPlanePoint) -> (f64, f64, f64) {
    let (x, y) = (z.re(), z.im());
    let den = x * x + (y + 1.0) * (y + 1.0);
    let re = (1.0 - x * x - y * y) / den;
    let im = 2.0 * x / den;
    let one_minus_sq = 4.0 * y / den;
    let modulus = re.hypot(im);
    (re, im, one_minus_sq / (1.0 + modulus))
}

/// Limit of `z₀, f₁(z₀), f₂(z₀), ..` on the closed disk.
fn boundary_limit(
    points: impl Iterator<Item = HalfPlanePoint>,
    cfg: &KeyLemmaConfig,
    which: &'static str,
) -> Result<BoundaryPoint, FlowError> {
    let mut prev: Option<(f64, f64)> = None;
    for z in points.take(cfg.n_max + 1) {
        let (re, im, gap) = disk_image(z);
        if !re.is_finite() || !im.is_finite() {
            break;
        }
        if let Some((pr, pi)) = prev {
            if (re - pr).hypot(im - pi) < cfg.cauchy_tol && gap < cfg.cauchy_tol {
                return Ok(BoundaryPoint::from_angle(im.atan2(re)));
            }
        }
        prev = Some((re, im));
    }
    Err(FlowError::NoConvergence {
        which,
        n_max: cfg.n_max,
    })
}

/// Estimates `ξ± = lim fₙ^{±1}(z₀)` and measures how uniformly `fₙ` pushes the
/// boundary (minus a neighbourhood of `ξ⁻`) onto `ξ⁺`.
pub fn keylemma_converge(
    sequence: &KeyLemmaSequence,
    cfg: &KeyLemmaConfig,
) -> Result<KeyLemmaReport, FlowError> {
    let z0 = cfg.z0;
    let (xi_plus, xi_minus) = match sequence {
        KeyLemmaSequence::Powers(g) => {
            let gi = g.inverse();
            let fwd = std::iter::successors(Some(z0), |z| Some(g.apply(*z)));
            let bwd = std::iter::successors(Some(z0), |z| Some(gi.apply(*z)));
            (
                boundary_limit(fwd, cfg, "forward limit")?,
                boundary_limit(bwd, cfg, "backward limit")?,
            )
        }
        KeyLemmaSequence::Explicit(fs) => {
            let fwd = std::iter::once(z0).chain(fs.iter().map(|f| f.apply(z0)));
            let bwd = std::iter::once(z0).chain(fs.iter().map(|f| f.inverse().apply(z0)));
            (
                boundary_limit(fwd, cfg, "forward limit")?,
                boundary_limit(bwd, cfg, "backward limit")?,
            )
        }
    };

    let grid: Vec<BoundaryPoint> = (0..cfg.grid)
        .map(|k| BoundaryPoint::from_angle(-std::f64::consts::PI + std::f64::consts::TAU * (k as f64 + 0.5) / cfg.grid as f64))
        .filter(|xi| xi.chordal(&xi_minus) >= cfg.exclusion)
        .collect();

    let n_max = match sequence {
        KeyLemmaSequence::Powers(_) => cfg.n_max,
        KeyLemmaSequence::Explicit(fs) => cfg.n_max.min(fs.len()),
    };
    let mut current = grid.clone();
    let mut first = vec![None; grid.len()];
    let mut residual_curve = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        for (k, xi) in current.iter_mut().enumerate() {
            *xi = match sequence {
                KeyLemmaSequence::Powers(g) => g.apply_boundary(*xi),
                KeyLemmaSequence::Explicit(fs) => fs[n - 1].apply_boundary(grid[k]),
            };
        }
        let mut worst: f64 = 0.0;
        for (k, xi) in current.iter().enumerate() {
            let r = xi.chordal(&xi_plus);
            worst = worst.max(r);
            if first[k].is_none() && r < cfg.tol {
                first[k] = Some(n);
            }
        }
        residual_curve.push(worst);
    }

    let (worst_xi, max_residual) = grid
        .iter()
        .zip(current.iter())
        .map(|(xi, image)| (*xi, image.chordal(&xi_plus)))
        .fold((None, 0.0), |(wx, wr), (xi, r)| if r > wr { (Some(xi), r) } else { (wx, wr) });
    let first_passage = first
        .iter()
        .try_fold(0, |acc, f| f.map(|n| acc.max(n)));

    Ok(KeyLemmaReport {
        xi_plus,
        xi_minus,
        max_residual,
        worst_xi,
        residual_curve,
        first_passage,
        admissible: grid.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{ProductModel, T3AModel};
    use approx::assert_abs_diff_eq;

    fn modular() -> Model {
        Model::Surface(ProductModel::modular())
    }

    fn id_frame() -> Lift {
        Lift::frame(MoebiusElement::IDENTITY, TransversePoint::Trivial)
    }

    #[test]
    fn modular_horocycle_is_one_periodic() {
        let seg = integrate_orbit(&modular(), &id_frame(), FlowKind::HorocycleU { dt: 0.01 }, 100, 0).unwrap();
        assert_eq!(seg.len(), 101);
        let (t, q) = &seg.samples[100];
        assert_abs_diff_eq!(*t, 1.0, epsilon = 1e-12);
        let q0 = &seg.samples[0].1;
        for (a, b) in q.coords.iter().zip(q0.coords.iter()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn sol3u_keeps_t_fixed() {
        let model = Model::T3A(T3AModel::new([[2, 1], [1, 1]]).unwrap());
        let start = Lift::Sol([0.1, 0.2, 0.3]);
        let seg = integrate_orbit(&model, &start, FlowKind::Sol3U { d_beta: 0.037 }, 2000, 0).unwrap();
        let t0 = seg.samples[0].1.coords[2];
        assert!(seg.coords().all(|c| c[2] == t0));
        assert!(seg.samples.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn octagon_geodesic_stays_in_domain() {
        let model = Model::Surface(ProductModel::octagon());
        let seg = integrate_orbit(&model, &id_frame(), FlowKind::GeodesicD { dt: 0.05 }, 1000, 0).unwrap();
        assert!(seg.samples.iter().all(|(_, q)| model.contains(q)));
    }

    #[test]
    fn zero_steps_is_empty() {
        let seg = integrate_orbit(&modular(), &id_frame(), FlowKind::HorocycleU { dt: 0.1 }, 0, 0).unwrap();
        assert!(seg.is_empty());
    }

    #[test]
    fn invalid_flows_are_rejected() {
        let m = modular();
        assert!(matches!(
            integrate_orbit(&m, &id_frame(), FlowKind::HorocycleU { dt: 0.0 }, 1, 0),
            Err(FlowError::InvalidStep(_))
        ));
        assert!(matches!(
            integrate_orbit(&m, &id_frame(), FlowKind::Sol3U { d_beta: 0.1 }, 1, 0),
            Err(FlowError::Unsupported { .. })
        ));
        assert!(matches!(
            integrate_orbit(&m, &id_frame(), FlowKind::HorocycleU { dt: 0.1 }, MAX_STEPS + 1, 0),
            Err(FlowError::TooManySteps { .. })
        ));
    }

    #[test]
    fn modular_geodesic_diverges() {
        let probe = DivergenceProbe::Flow {
            start: id_frame(),
            flow: FlowKind::GeodesicD { dt: 0.01 },
        };
        let r = detect_divergence(&modular(), &probe, 600, 100.0).unwrap();
        assert!(r.diverged);
        // oracle: Im = e^t on the vertical geodesic, already reduced
        assert_abs_diff_eq!(r.first_passage.unwrap(), 100f64.ln(), epsilon = 0.011);
    }

    #[test]
    fn compact_models_never_diverge() {
        let model = Model::Surface(ProductModel::octagon());
        let probe = DivergenceProbe::Flow {
            start: id_frame(),
            flow: FlowKind::HorocycleU { dt: 0.1 },
        };
        let r = detect_divergence(&model, &probe, 500, 1.0).unwrap();
        assert!(!r.diverged);
        assert_eq!(r.max_escape, 0.0);
    }

    #[test]
    fn h_a_funnels_to_infinity_zero() {
        let t = T3AModel::new([[2, 1], [1, 1]]).unwrap();
        let model = Model::T3A(t.clone());
        let probe = DivergenceProbe::BoundaryIteration {
            element: t.deck_element(crate::models::DeckGenerator::HA),
            start: (BoundaryPoint::from_real(1.0), TransversePoint::Real(1.0)),
            target: (BoundaryPoint::INFINITY, TransversePoint::Real(0.0)),
        };
        let r = detect_divergence(&model, &probe, 60, 1e3).unwrap();
        assert!(r.diverged);
        assert!(r.first_passage.unwrap() <= 60.0);
    }

    #[test]
    fn keylemma_geodesic() {
        let cfg = KeyLemmaConfig {
            n_max: 30,
            ..KeyLemmaConfig::default()
        };
        let g = MoebiusElement::geodesic(2f64.ln() * 2.0);
        let r = keylemma_converge(&KeyLemmaSequence::Powers(g), &cfg).unwrap();
        assert!(r.xi_plus.is_infinity());
        assert!(r.xi_minus.chordal(&BoundaryPoint::ZERO) < 1e-9);
        // oracle: fₙ(1) = 4ⁿ, chordal(4ⁿ, ∞) = 2/√(1 + 16ⁿ)
        let one = g.pow(30).apply_boundary(BoundaryPoint::from_real(1.0));
        assert!(one.chordal(&BoundaryPoint::INFINITY) < 1e-6);
        assert!(r.first_passage.is_some());
        assert!(r.max_residual < 1e-4);
    }

    #[test]
    fn keylemma_parabolic() {
        let cfg = KeyLemmaConfig {
            n_max: 20_000,
            cauchy_tol: 1e-8,
            ..KeyLemmaConfig::default()
        };
        let r = keylemma_converge(&KeyLemmaSequence::Powers(MoebiusElement::unipotent(1.0)), &cfg).unwrap();
        assert!(r.xi_plus.chordal(&BoundaryPoint::INFINITY) < 1e-3);
        assert!(r.xi_minus.chordal(&BoundaryPoint::INFINITY) < 1e-3);
        let zero = MoebiusElement::unipotent(1e4).apply_boundary(BoundaryPoint::ZERO);
        assert!(zero.chordal(&r.xi_plus) < 1e-3);
    }

    #[test]
    fn keylemma_cat_map() {
        let g = MoebiusElement::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let r = keylemma_converge(&KeyLemmaSequence::Powers(g), &KeyLemmaConfig::default()).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(r.xi_plus.chordal(&BoundaryPoint::from_real(phi)) < 1e-8);
        assert!(r.xi_minus.chordal(&BoundaryPoint::from_real(1.0 - phi)) < 1e-8);
        let zero = g.pow(40).apply_boundary(BoundaryPoint::ZERO);
        assert!(zero.chordal(&r.xi_plus) < 1e-9);
        assert!(r.first_passage.unwrap() <= 200);
    }

    #[test]
    fn keylemma_elliptic_does_not_converge() {
        let r = keylemma_converge(
            &KeyLemmaSequence::Powers(MoebiusElement::rotation(1.0)),
            &KeyLemmaConfig::default(),
        );
        assert!(matches!(r, Err(FlowError::NoConvergence { .. })));
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: Vec<u64> = (0..100).map(|k| derive_seed(7, k)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
    }

    #[test]
    fn sweep_is_deterministic() {
        let model = Model::Surface(ProductModel::octagon_so3(3));
        let a = sweep(&model, 4, FlowKind::HorocycleU { dt: 0.1 }, 50, 9);
        let b = sweep(&model, 4, FlowKind::HorocycleU { dt: 0.1 }, 50, 9);
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.is_ok()));
    }
}
