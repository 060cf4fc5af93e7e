//! Coverage, fiber-constancy, minimal-set residuals and duality projections.

use std::f64::consts::TAU;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::flows::OrbitSegment;
use crate::groups::{word_ball, GroupError, TransversePoint};
use crate::models::{random_frame, Lift, Model, ModelError, OctagonModel, SurfaceBase};
use crate::moebius::{BoundaryPoint, EPoint, HalfPlanePoint, MoebiusElement};

/// Probe lattice (per axis) used to decide whether a cell meets the domain.
pub const MASK_PROBES: usize = 21;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagnosticsError {
    #[error("binning has no cells")]
    EmptyBinning,
    #[error("axis {axis}: invalid range [{lo}, {hi}) or zero cells")]
    BadAxis { axis: usize, lo: f64, hi: f64 },
    #[error("mask has {got} entries for {expected} cells")]
    MaskSize { expected: usize, got: usize },
    #[error("binning needs {expected} axes, got {got}")]
    AxisCount { expected: usize, got: usize },
    #[error("coordinate index {index} out of range ({len} coordinates)")]
    CoordinateIndex { index: usize, len: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Axis {
    /// Index into the canonical coordinates.
    pub coord: usize,
    pub lo: f64,
    pub hi: f64,
    pub cells: usize,
}

impl Axis {
    pub fn new(coord: usize, lo: f64, hi: f64, cells: usize) -> Self {
        Self { coord, lo, hi, cells }
    }

    fn cell(&self, x: f64) -> Option<usize> {
        if !(x >= self.lo && x <= self.hi) {
            return None;
        }
        let k = ((x - self.lo) / (self.hi - self.lo) * self.cells as f64) as usize;
        Some(k.min(self.cells - 1))
    }
}

/// Product grid over selected coordinates, optionally restricted to the
/// cells flagged admissible.
#[derive(Clone, Debug, PartialEq)]
pub struct Binning {
    axes: Vec<Axis>,
    mask: Option<Vec<bool>>,
}

impl Binning {
    pub fn new(axes: Vec<Axis>) -> Result<Self, DiagnosticsError> {
        if axes.is_empty() {
            return Err(DiagnosticsError::EmptyBinning);
        }
        for (i, a) in axes.iter().enumerate() {
            if a.cells == 0 || !(a.lo < a.hi) || !a.lo.is_finite() || !a.hi.is_finite() {
                return Err(DiagnosticsError::BadAxis {
                    axis: i,
                    lo: a.lo,
                    hi: a.hi,
                });
            }
        }
        Ok(Self { axes, mask: None })
    }

    pub fn with_mask(mut self, mask: Vec<bool>) -> Result<Self, DiagnosticsError> {
        let expected = self.cell_count();
        if mask.len() != expected {
            return Err(DiagnosticsError::MaskSize {
                expected,
                got: mask.len(),
            });
        }
        self.mask = Some(mask);
        Ok(self)
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn bins(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.cells).collect()
    }

    fn cell_count(&self) -> usize {
        self.axes.iter().map(|a| a.cells).product()
    }

    /// Number of admissible cells.
    pub fn total(&self) -> usize {
        match &self.mask {
            Some(m) => m.iter().filter(|b| **b).count(),
            None => self.cell_count(),
        }
    }

    /// Flat (row-major) index of the cell holding `coords`, if admissible.
    pub fn cell(&self, coords: &[f64]) -> Option<usize> {
        let mut idx = 0;
        for a in &self.axes {
            idx = idx * a.cells + a.cell(*coords.get(a.coord)?)?;
        }
        match &self.mask {
            Some(m) if !m[idx] => None,
            _ => Some(idx),
        }
    }

    /// Unit-square grid on the torus coordinates `(x, y)` of T³_A.
    pub fn t3a_fiber(cells: usize) -> Result<Self, DiagnosticsError> {
        Self::new(vec![Axis::new(0, 0.0, 1.0, cells), Axis::new(1, 0.0, 1.0, cells)])
    }

    /// `(Re, Im, angle)` grid over the octagon's bounding box; only cells whose
    /// `(Re, Im)` footprint meets the fundamental domain count.
    pub fn octagon(octagon: &OctagonModel, re_cells: usize, im_cells: usize, angle_cells: usize) -> Result<Self, DiagnosticsError> {
        let [x0, x1, y0, y1] = octagon.bounding_box();
        let binning = Self::new(vec![
            Axis::new(0, x0, x1, re_cells),
            Axis::new(1, y0, y1, im_cells),
            Axis::new(2, 0.0, TAU, angle_cells),
        ])?;
        let (dx, dy) = ((x1 - x0) / re_cells as f64, (y1 - y0) / im_cells as f64);
        let step = 1.0 / (MASK_PROBES - 1) as f64;
        let mut mask = Vec::with_capacity(binning.cell_count());
        for i in 0..re_cells {
            for j in 0..im_cells {
                let meets = (0..MASK_PROBES).any(|p| {
                    (0..MASK_PROBES).any(|q| {
                        let re = x0 + dx * (i as f64 + p as f64 * step);
                        let im = y0 + dy * (j as f64 + q as f64 * step);
                        HalfPlanePoint::new(re, im).is_ok_and(|z| octagon.contains(z))
                    })
                });
                mask.extend(std::iter::repeat_n(meets, angle_cells));
            }
        }
        binning.with_mask(mask)
    }
}

/// Flat JSON record of a coverage measurement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub model: String,
    pub flow: String,
    pub steps: u64,
    pub seed: u64,
    pub bins: Vec<usize>,
    pub visited: usize,
    pub total: usize,
    pub fraction: f64,
}

/// Counts admissible cells hit by a stream of coordinate vectors.
#[derive(Clone, Debug)]
pub struct CoverageCounter<'a> {
    binning: &'a Binning,
    hit: Vec<bool>,
    visited: usize,
}

impl<'a> CoverageCounter<'a> {
    pub fn new(binning: &'a Binning) -> Self {
        Self {
            binning,
            hit: vec![false; binning.cell_count()],
            visited: 0,
        }
    }

    pub fn add(&mut self, coords: &[f64]) {
        if let Some(k) = self.binning.cell(coords) {
            if !self.hit[k] {
                self.hit[k] = true;
                self.visited += 1;
            }
        }
    }

    pub fn visited(&self) -> usize {
        self.visited
    }

    pub fn fraction(&self) -> f64 {
        let total = self.binning.total();
        if total == 0 {
            0.0
        } else {
            self.visited as f64 / total as f64
        }
    }
}

pub fn coverage(orbit: &OrbitSegment, binning: &Binning) -> DensityReport {
    let mut counter = CoverageCounter::new(binning);
    for c in orbit.coords() {
        counter.add(c);
    }
    DensityReport {
        model: orbit.model.to_string(),
        flow: orbit.flow.name().to_string(),
        steps: orbit.steps,
        seed: orbit.seed,
        bins: binning.bins(),
        visited: counter.visited(),
        total: binning.total(),
        fraction: counter.fraction(),
    }
}

/// Largest deviation of one coordinate from its initial value along the orbit.
pub fn fiber_variation(orbit: &OrbitSegment, index: usize) -> Result<f64, DiagnosticsError> {
    let spec = orbit.legend.get(index).ok_or(DiagnosticsError::CoordinateIndex {
        index,
        len: orbit.legend.len(),
    })?;
    let Some(first) = orbit.samples.first() else {
        return Ok(0.0);
    };
    let x0 = first.1.coords[index];
    Ok(orbit
        .coords()
        .map(|c| match spec.period {
            Some(p) => {
                let d = (c[index] - x0).rem_euclid(p);
                d.min(p - d)
            }
            None => (c[index] - x0).abs(),
        })
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinimalSetConfig {
    pub samples: usize,
    pub radius: usize,
    pub gammas: usize,
    pub b_grid: usize,
    pub seed: u64,
}

impl Default for MinimalSetConfig {
    fn default() -> Self {
        Self {
            samples: 200,
            radius: 3,
            gammas: 50,
            b_grid: 50,
            seed: 0,
        }
    }
}

/// `count` Borel elements `z ↦ αz + β` on a grid, `α ∈ [0.1, 10]` log-spaced
/// (10 values) and `β ∈ [−5, 5]`.
pub fn borel_grid(count: usize) -> Vec<MoebiusElement> {
    let rows = count.div_ceil(10).max(1);
    (0..count)
        .map(|k| {
            let alpha = 10f64.powf(-1.0 + 2.0 * (k % 10) as f64 / 9.0);
            let beta = if rows == 1 {
                0.0
            } else {
                -5.0 + 10.0 * (k / 10) as f64 / (rows - 1) as f64
            };
            MoebiusElement::borel(alpha, beta).expect("alpha > 0")
        })
        .collect()
}

/// Random point of the model's distinguished minimal set.
fn minimal_set_point<R: Rng + ?Sized>(model: &Model, rng: &mut R) -> Lift {
    match model {
        Model::T3A(_) => {
            let f = MoebiusElement::borel(rng.random_range(-3.0f64..3.0).exp(), rng.random_range(-5.0..5.0))
                .expect("alpha > 0");
            Lift::frame(f, TransversePoint::Real(rng.random_range(-5.0..5.0)))
        }
        Model::Surface(_) => {
            let f = random_frame(rng, 3.0);
            Lift::frame(f, TransversePoint::Boundary(f.apply_boundary(BoundaryPoint::INFINITY)))
        }
    }
}

/// `max minimal_set_distance(γ·x·b)` over random `x` in the minimal set,
/// random `γ` from the word ball, and a grid of `b ∈ B`.
pub fn minimal_set_residual(model: &Model, cfg: &MinimalSetConfig) -> Result<f64, DiagnosticsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ball = word_ball(&model.group(), cfg.radius)?;
    let gammas: Vec<_> = (0..cfg.gammas)
        .map(|_| ball.entries.choose(&mut rng).expect("ball contains the identity").element)
        .collect();
    let grid = borel_grid(cfg.b_grid);
    let mut worst: f64 = 0.0;
    for _ in 0..cfg.samples {
        let x = minimal_set_point(model, &mut rng);
        worst = worst.max(model.minimal_set_distance(&x)?);
        for g in &gammas {
            let gx = model.act(g, &x)?;
            let Lift::Frame { frame, fiber } = gx else {
                unreachable!("frame lifts stay frame lifts")
            };
            for b in &grid {
                let moved = Lift::frame(frame.compose(b), fiber);
                worst = worst.max(model.minimal_set_distance(&moved)?);
            }
        }
    }
    Ok(worst)
}

/// Subgroup used for the duality `PSL(2,R)/F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualSubgroup {
    /// `PSL/U ≅ E`, the projection `f ↦ f·e₁`.
    U,
    /// `PSL/B ≅ ∂H`, the projection `f ↦ f(∞)`.
    B,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DualCoordinate {
    Vector(EPoint),
    Boundary(BoundaryPoint),
}

pub fn duality_project(
    frame: &MoebiusElement,
    fiber: &TransversePoint,
    subgroup: DualSubgroup,
) -> (DualCoordinate, TransversePoint) {
    let dual = match subgroup {
        DualSubgroup::U => DualCoordinate::Vector(frame.apply_e(EPoint::E1)),
        DualSubgroup::B => DualCoordinate::Boundary(frame.apply_boundary(BoundaryPoint::INFINITY)),
    };
    (dual, *fiber)
}

/// Sine of the angle between `v` and the line of `ξ`; `(ξ, 1)`, or `(1, 0)` at `ξ = ∞`.
pub fn kset_sine(v: EPoint, xi: BoundaryPoint) -> f64 {
    let (p, q) = xi.homogeneous();
    (v.p() * q - v.q() * p).abs() / v.norm()
}

/// Distance of a diagonal-model point to the set `K ⊂ E × ∂H` after projecting by U.
pub fn kset_distance(frame: &MoebiusElement, xi: BoundaryPoint) -> f64 {
    kset_sine(frame.apply_e(EPoint::E1), xi)
}

/// Default coverage binning for a model's canonical coordinates, optionally
/// with custom cell counts per axis.
pub fn default_binning(model: &Model, cells: Option<&[usize]>) -> Result<Binning, DiagnosticsError> {
    let defaults: &[usize] = match model {
        Model::T3A(_) => &[50, 50],
        Model::Surface(_) => &[10, 10, 8],
    };
    let cells = cells.unwrap_or(defaults);
    if cells.len() != defaults.len() {
        return Err(DiagnosticsError::AxisCount {
            expected: defaults.len(),
            got: cells.len(),
        });
    }
    match model {
        Model::T3A(_) => Binning::new(vec![Axis::new(0, 0.0, 1.0, cells[0]), Axis::new(1, 0.0, 1.0, cells[1])]),
        Model::Surface(p) => match p.base() {
            SurfaceBase::Octagon(o) => Binning::octagon(o, cells[0], cells[1], cells[2]),
            SurfaceBase::Modular => Binning::new(vec![
                Axis::new(0, -0.5, 0.5, cells[0]),
                Axis::new(1, 3f64.sqrt() / 2.0, 5.0, cells[1]),
                Axis::new(2, 0.0, TAU, cells[2]),
            ]),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::{integrate_orbit, FlowKind};
    use crate::models::{ProductModel, QuotientPoint, T3AModel};
    use approx::assert_abs_diff_eq;

    fn synthetic(coords: Vec<Vec<f64>>, legend_model: &Model) -> OrbitSegment {
        OrbitSegment {
            model: legend_model.id(),
            flow: FlowKind::HorocycleU { dt: 1.0 },
            samples: coords
                .into_iter()
                .enumerate()
                .map(|(k, c)| {
                    (
                        k as f64,
                        QuotientPoint {
                            model: legend_model.id(),
                            lift: Lift::Sol([0.0; 3]),
                            coords: c,
                        },
                    )
                })
                .collect(),
            seed: 0,
            steps: 0,
            legend: legend_model.legend(crate::models::LiftKind::Sol),
        }
    }

    fn t3a() -> Model {
        Model::T3A(T3AModel::new([[2, 1], [1, 1]]).unwrap())
    }

    #[test]
    fn empty_orbit_has_zero_coverage() {
        let b = Binning::t3a_fiber(10).unwrap();
        let r = coverage(&synthetic(vec![], &t3a()), &b);
        assert_eq!((r.visited, r.total, r.fraction), (0, 100, 0.0));
    }

    #[test]
    fn cell_centres_give_full_coverage() {
        let b = Binning::t3a_fiber(7).unwrap();
        let pts = (0..49)
            .map(|k| vec![((k % 7) as f64 + 0.5) / 7.0, ((k / 7) as f64 + 0.5) / 7.0, 0.0])
            .collect();
        let r = coverage(&synthetic(pts, &t3a()), &b);
        assert_eq!(r.fraction, 1.0);
    }

    #[test]
    fn binning_validation() {
        assert_eq!(Binning::new(vec![]), Err(DiagnosticsError::EmptyBinning));
        assert!(Binning::new(vec![Axis::new(0, 1.0, 0.0, 3)]).is_err());
        assert!(Binning::new(vec![Axis::new(0, 0.0, 1.0, 0)]).is_err());
        let b = Binning::t3a_fiber(2).unwrap();
        assert!(b.clone().with_mask(vec![true; 3]).is_err());
        let masked = b.with_mask(vec![true, false, false, false]).unwrap();
        assert_eq!(masked.total(), 1);
        assert_eq!(masked.cell(&[0.1, 0.1]), Some(0));
        assert_eq!(masked.cell(&[0.9, 0.9]), None);
        assert_eq!(masked.cell(&[1.5, 0.1]), None);
    }

    #[test]
    fn octagon_mask_counts_domain_cells() {
        let b = Binning::octagon(&OctagonModel::new(), 10, 10, 8).unwrap();
        let total = b.total();
        assert_eq!(total % 8, 0);
        // the domain is a proper subset of its bounding box
        assert!(total < 800 && total > 400);
        assert!(b.cell(&[0.0, 1.0, 1.0]).is_some());
    }

    #[test]
    fn fiber_variation_examples() {
        let model = t3a();
        let sol = integrate_orbit(&model, &Lift::Sol([0.0; 3]), FlowKind::Sol3U { d_beta: 0.037 }, 500, 0).unwrap();
        assert_eq!(fiber_variation(&sol, 2).unwrap(), 0.0);
        let flat = synthetic(vec![vec![0.2, 0.3, 0.4]; 5], &model);
        assert_eq!(fiber_variation(&flat, 0).unwrap(), 0.0);
        let frame = Lift::frame(MoebiusElement::IDENTITY, TransversePoint::Real(0.0));
        let geo = integrate_orbit(&model, &frame, FlowKind::GeodesicD { dt: 0.01 }, 1000, 0).unwrap();
        assert!(fiber_variation(&geo, 2).unwrap() > 0.1);
        assert!(fiber_variation(&geo, 9).is_err());
    }

    #[test]
    fn duality_examples() {
        let (d, _) = duality_project(&MoebiusElement::IDENTITY, &TransversePoint::Trivial, DualSubgroup::B);
        assert_eq!(d, DualCoordinate::Boundary(BoundaryPoint::INFINITY));
        let (d, _) = duality_project(&MoebiusElement::IDENTITY, &TransversePoint::Trivial, DualSubgroup::U);
        assert_eq!(d, DualCoordinate::Vector(EPoint::E1));
        let f = MoebiusElement::new(2.0, 1.0, 1.0, 1.0).unwrap();
        match duality_project(&f, &TransversePoint::Trivial, DualSubgroup::B).0 {
            DualCoordinate::Boundary(xi) => assert!(xi.chordal(&BoundaryPoint::from_real(2.0)) < 1e-15),
            _ => unreachable!(),
        }
        match duality_project(&f, &TransversePoint::Trivial, DualSubgroup::U).0 {
            DualCoordinate::Vector(v) => assert_eq!((v.p(), v.q()), (2.0, 1.0)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn kset_examples() {
        assert!(kset_sine(EPoint::new(2.0, 1.0).unwrap(), BoundaryPoint::from_real(2.0)) < 1e-15);
        assert_eq!(kset_sine(EPoint::E1, BoundaryPoint::INFINITY), 0.0);
        // (0,1) is the line of ξ = 0 and perpendicular to the line of ∞
        assert!(kset_sine(EPoint::new(0.0, 1.0).unwrap(), BoundaryPoint::ZERO) < 1e-15);
        assert_abs_diff_eq!(kset_sine(EPoint::new(0.0, 1.0).unwrap(), BoundaryPoint::INFINITY), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn minimal_set_residuals() {
        let cfg = MinimalSetConfig {
            samples: 10,
            gammas: 10,
            b_grid: 20,
            ..MinimalSetConfig::default()
        };
        let diag = Model::Surface(ProductModel::octagon_boundary());
        assert!(minimal_set_residual(&diag, &cfg).unwrap() <= 1e-8);
        assert!(minimal_set_residual(&t3a(), &cfg).unwrap() <= 1e-8);
        let plain = Model::Surface(ProductModel::octagon());
        assert!(minimal_set_residual(&plain, &cfg).is_err());
    }

    #[test]
    fn default_binnings() {
        assert_eq!(default_binning(&t3a(), None).unwrap().total(), 2500);
        assert_eq!(default_binning(&t3a(), Some(&[4, 5])).unwrap().total(), 20);
        assert!(default_binning(&t3a(), Some(&[4])).is_err());
        let modular = Model::Surface(ProductModel::modular());
        assert_eq!(default_binning(&modular, None).unwrap().total(), 800);
    }

    #[test]
    fn borel_grid_spans_range() {
        let g = borel_grid(50);
        assert_eq!(g.len(), 50);
        assert!(g.iter().all(|b| b.c() == 0.0));
    }
}
