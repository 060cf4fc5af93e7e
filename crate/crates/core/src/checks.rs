//! Acceptance criteria as executable checks, shared by the `check` subcommand
//! and the acceptance test target.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagnostics::{
    coverage, fiber_variation, minimal_set_residual, Binning, MinimalSetConfig,
};
use crate::flows::{
    detect_divergence, integrate_orbit, keylemma_converge, DivergenceProbe, FlowKind, KeyLemmaConfig,
    KeyLemmaSequence,
};
use crate::groups::{word_ball, TransversePoint};
use crate::models::{
    random_frame, sol3_b_embed, sol3_mul, DeckGenerator, Lift, LiftKind, Model, OctagonModel,
    ProductModel, T3AModel,
};
use crate::moebius::{BoundaryPoint, MoebiusElement};

pub const GOLDEN: [[i64; 2]; 2] = [[2, 1], [1, 1]];

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    /// Measured quantity met its tolerance.
    pub within_tolerance: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.within_tolerance && self.elapsed <= self.limit
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<10} {} elapsed={:.3}s limit={}s {}",
            self.id,
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Outcome = Result<(bool, String), String>;

fn timed(id: u8, name: &'static str, limit_secs: u64, body: impl FnOnce() -> Outcome) -> CriterionResult {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (within_tolerance, detail) = match outcome {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name,
        within_tolerance,
        detail,
        elapsed,
        limit: Duration::from_secs(limit_secs),
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Random hyperbolic element with `trace ∈ (2.1, 4.7]` and random axis.
pub fn random_hyperbolic<R: Rng + ?Sized>(rng: &mut R) -> MoebiusElement {
    let trace: f64 = rng.random_range(2.1..=4.7);
    let trace = if trace == 2.1 { 4.7 } else { trace };
    let length = 2.0 * (trace / 2.0).acosh();
    let h = random_frame(rng, 2.0);
    MoebiusElement::geodesic(length).conjugate_by(&h)
}

pub fn keylemma() -> CriterionResult {
    timed(1, "keylemma", 1, || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = KeyLemmaConfig::default();
        let mut worst_passage = 0;
        for _ in 0..20 {
            let g = random_hyperbolic(&mut rng);
            let report = keylemma_converge(&KeyLemmaSequence::Powers(g), &cfg).map_err(err)?;
            match report.first_passage {
                Some(n) => worst_passage = worst_passage.max(n),
                None => {
                    return Ok((
                        false,
                        format!("g={g}: residual {:.3e} at n={}", report.max_residual, cfg.n_max),
                    ))
                }
            }
        }
        Ok((true, format!("max first passage n={worst_passage} (<= {})", cfg.n_max)))
    })
}

pub fn steering() -> CriterionResult {
    timed(2, "steering", 1, || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut worst: f64 = 0.0;
        let mut count = 0;
        while count < 1000 {
            let f = random_frame(&mut rng, 4.0);
            if f.c().abs() <= 1e-3 {
                continue;
            }
            count += 1;
            let alpha = rng.random_range(0.1..=10.0);
            let (left, right) = f.steer_to_diagonal(alpha).map_err(err)?;
            let target = MoebiusElement::new(alpha, 0.0, f.c(), alpha.recip()).map_err(err)?;
            worst = worst.max(left.compose(&f).compose(&right).max_entry_diff(&target));
        }
        Ok((worst < 1e-9, format!("max entry error {worst:.3e} (< 1e-9)")))
    })
}

pub fn toroidal_fibre() -> CriterionResult {
    timed(3, "fibre", 10, || {
        let model = Model::T3A(T3AModel::new(GOLDEN).map_err(err)?);
        let orbit = integrate_orbit(&model, &Lift::Sol([0.0; 3]), FlowKind::Sol3U { d_beta: 0.037 }, 100_000, 0)
            .map_err(err)?;
        let variation = fiber_variation(&orbit, 2).map_err(err)?;
        let report = coverage(&orbit, &Binning::t3a_fiber(50).map_err(err)?);
        Ok((
            variation == 0.0 && report.fraction >= 0.99,
            format!("t variation {variation:e} (== 0), coverage {:.4} (>= 0.99)", report.fraction),
        ))
    })
}

pub fn funneling() -> CriterionResult {
    timed(4, "funneling", 1, || {
        let t = T3AModel::new(GOLDEN).map_err(err)?;
        let element = t.deck_element(DeckGenerator::HA);
        let model = Model::T3A(t);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut worst: f64 = 0.0;
        let mut count = 0;
        while count < 100 {
            let xi = BoundaryPoint::from_angle(rng.random_range(-std::f64::consts::PI..std::f64::consts::PI));
            let y: f64 = rng.random_range(-10.0..10.0);
            if xi.chordal(&BoundaryPoint::ZERO) <= 0.01 {
                continue;
            }
            count += 1;
            let probe = DivergenceProbe::BoundaryIteration {
                element,
                start: (xi, TransversePoint::Real(y)),
                target: (BoundaryPoint::INFINITY, TransversePoint::Real(0.0)),
            };
            let r = detect_divergence(&model, &probe, 60, 1e3).map_err(err)?;
            match r.first_passage {
                Some(n) => worst = worst.max(n),
                None => return Ok((false, format!("(xi={:.6}, y'={y:.6}) not within 1e-3 by n=60", xi.angle()))),
            }
        }
        Ok((true, format!("max n to reach 1e-3 of (inf,0): {worst} (<= 60)")))
    })
}

pub fn graph_minimal_set() -> CriterionResult {
    timed(5, "graph", 5, || {
        let model = Model::Surface(ProductModel::octagon_boundary());
        let cfg = MinimalSetConfig {
            seed: 5,
            ..MinimalSetConfig::default()
        };
        let r = minimal_set_residual(&model, &cfg).map_err(err)?;
        Ok((r <= 1e-8, format!("max residual {r:.3e} (<= 1e-8)")))
    })
}

pub fn cocompact() -> CriterionResult {
    timed(6, "cocompact", 30, || {
        let octagon = OctagonModel::new();
        let relator = octagon.relator_product().distance_to_identity();
        let ball = word_ball(&ProductModel::octagon().group(), 4).map_err(err)?;
        let gap = ball
            .nontrivial()
            .map(|e| (e.element.base.trace() - 2.0).abs())
            .fold(f64::INFINITY, f64::min);
        Ok((
            gap > 0.1 && relator <= 1e-6,
            format!(
                "ball(4) size {}, min ||tr|-2| {gap:.4} (> 0.1), relator error {relator:.3e} (<= 1e-6)",
                ball.len()
            ),
        ))
    })
}

pub fn contrast() -> CriterionResult {
    timed(7, "contrast", 1, || {
        let model = Model::Surface(ProductModel::modular());
        let start = Lift::frame(MoebiusElement::IDENTITY, TransversePoint::Trivial);
        let orbit = integrate_orbit(&model, &start, FlowKind::HorocycleU { dt: 0.01 }, 100, 0).map_err(err)?;
        let period = model
            .quotient_distance(&orbit.samples[0].1, &orbit.samples[100].1)
            .map_err(err)?;
        let probe = DivergenceProbe::Flow {
            start,
            flow: FlowKind::GeodesicD { dt: 0.01 },
        };
        let r = detect_divergence(&model, &probe, 600, 100.0).map_err(err)?;
        let passage = r.first_passage.unwrap_or(f64::INFINITY);
        Ok((
            period <= 1e-9 && passage <= 6.0,
            format!("period error {period:.3e} (<= 1e-9), Im > 100 at t={passage:.2} (<= 6)"),
        ))
    })
}

pub fn hedlund() -> CriterionResult {
    timed(8, "hedlund", 60, || {
        let octagon = OctagonModel::new();
        let binning = Binning::octagon(&octagon, 10, 10, 8).map_err(err)?;
        let model = Model::Surface(ProductModel::octagon());
        let start = Lift::frame(MoebiusElement::IDENTITY, TransversePoint::Trivial);
        let orbit = integrate_orbit(&model, &start, FlowKind::HorocycleU { dt: 0.05 }, 199_999, 0).map_err(err)?;
        let r = coverage(&orbit, &binning);
        Ok((
            r.fraction >= 0.9,
            format!(
                "{} samples, visited {}/{} admissible cells, coverage {:.4} (>= 0.9)",
                orbit.len(),
                r.visited,
                r.total,
                r.fraction
            ),
        ))
    })
}

/// Worst idempotence and invariance errors of `model`'s reduction over
/// `pairs` random `(point, γ ∈ ball(2))`.
pub fn reduction_errors(model: &Model, kind: LiftKind, pairs: usize, seed: u64) -> Result<(f64, f64), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ball = word_ball(&model.group(), 2).map_err(err)?;
    let (mut idem, mut inv): (f64, f64) = (0.0, 0.0);
    for k in 0..pairs {
        let x = match (model, kind) {
            (Model::T3A(_), LiftKind::Sol) => Lift::Sol([
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            ]),
            _ => model.random_frame(&mut rng),
        };
        let gamma = ball.entries[k % ball.len()].element;
        let q = model.reduce(&x).map_err(err)?;
        let qq = model.reduce(&q.lift).map_err(err)?;
        idem = idem.max(model.quotient_distance(&q, &qq).map_err(err)?);
        let moved = model.act(&gamma, &x).map_err(err)?;
        let qg = model.reduce(&moved).map_err(err)?;
        inv = inv.max(model.quotient_distance(&q, &qg).map_err(err)?);
    }
    Ok((idem, inv))
}

pub fn reduction() -> CriterionResult {
    timed(9, "reduction", 5, || {
        let t3a = Model::T3A(T3AModel::new(GOLDEN).map_err(err)?);
        let cases = [
            ("t3a/sol", t3a.clone(), LiftKind::Sol),
            ("t3a/frame", t3a, LiftKind::Frame),
            ("octagon", Model::Surface(ProductModel::octagon()), LiftKind::Frame),
            ("octagon_so3", Model::Surface(ProductModel::octagon_so3(7)), LiftKind::Frame),
            ("octagon_boundary", Model::Surface(ProductModel::octagon_boundary()), LiftKind::Frame),
            ("modular", Model::Surface(ProductModel::modular()), LiftKind::Frame),
        ];
        let mut ok = true;
        let mut parts = Vec::new();
        for (k, (name, model, kind)) in cases.iter().enumerate() {
            let (idem, inv) = reduction_errors(model, *kind, 1000, 90 + k as u64)?;
            ok &= idem <= 1e-9 && inv <= 1e-9;
            parts.push(format!("{name} {:.1e}/{:.1e}", idem, inv));
        }
        Ok((ok, format!("idempotence/invariance (<= 1e-9): {}", parts.join(", "))))
    })
}

/// Random `A ∈ SL(2,Z)` with `3 ≤ trace ≤ 50`.
pub fn random_hyperbolic_matrix<R: Rng + ?Sized>(rng: &mut R) -> [[i64; 2]; 2] {
    let trace: i64 = rng.random_range(3..=50);
    let a: i64 = rng.random_range(-10..=trace + 10);
    let d = trace - a;
    // bc = ad − 1 is nonzero since |trace| > 2 rules out triangular matrices
    let n = a * d - 1;
    let divisors: Vec<i64> = (1..=n.abs()).filter(|k| n % k == 0).collect();
    let mut b = divisors[rng.random_range(0..divisors.len())];
    if rng.random_bool(0.5) {
        b = -b;
    }
    [[a, b], [n / b, d]]
}

pub fn structure() -> CriterionResult {
    timed(10, "structure", 5, || {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut det_err: f64 = 0.0;
        for _ in 0..50 {
            let t = T3AModel::new(random_hyperbolic_matrix(&mut rng)).map_err(err)?;
            let [a, b, c, d] = t.primed_entries();
            det_err = det_err.max((b * c - a * d - 1.0).abs());
        }

        let t = T3AModel::new(GOLDEN).map_err(err)?;
        let mut frame_err: f64 = 0.0;
        for _ in 0..1000 {
            let p = [
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            ];
            let pp = t.sol_from_unprimed(p);
            for g in DeckGenerator::ALL {
                let via_unprimed = t.sol_from_unprimed(t.deck_unprimed(g, p));
                let via_primed = t.deck_primed(g, pp);
                let (z, y) = t.to_half_plane(pp).map_err(err)?;
                let e = t.deck_element(g);
                let TransversePoint::Real(ye) = e.fiber.apply(&TransversePoint::Real(y)).map_err(err)? else {
                    return Err("affine fiber expected".into());
                };
                let via_model = t.from_half_plane(e.base.apply(z), ye);
                for k in 0..3 {
                    frame_err = frame_err
                        .max((via_unprimed[k] - via_primed[k]).abs())
                        .max((via_model[k] - via_primed[k]).abs());
                }
            }
        }

        let lambda = t.lambda();
        let mut hom_err: f64 = 0.0;
        for _ in 0..1000 {
            let (a1, b1) = (rng.random_range(-2.0f64..2.0).exp(), rng.random_range(-3.0..3.0));
            let (a2, b2) = (rng.random_range(-2.0f64..2.0).exp(), rng.random_range(-3.0..3.0));
            let prod = MoebiusElement::borel(a1, b1)
                .map_err(err)?
                .compose(&MoebiusElement::borel(a2, b2).map_err(err)?);
            let (alpha, beta) = (prod.a() * prod.a(), prod.a() * prod.b());
            let lhs = sol3_mul(
                sol3_b_embed(a1, b1, lambda).map_err(err)?,
                sol3_b_embed(a2, b2, lambda).map_err(err)?,
                lambda,
            );
            let rhs = sol3_b_embed(alpha, beta, lambda).map_err(err)?;
            for k in 0..3 {
                hom_err = hom_err.max((lhs[k] - rhs[k]).abs());
            }
        }
        Ok((
            det_err <= 1e-12 && frame_err <= 1e-9 && hom_err <= 1e-9,
            format!(
                "det error {det_err:.1e} (<= 1e-12), frame change {frame_err:.1e} (<= 1e-9), embedding {hom_err:.1e} (<= 1e-9)"
            ),
        ))
    })
}

/// Named suites of the `check` subcommand.
pub const SUITES: [(&str, &[u8]); 11] = [
    ("keylemma", &[1]),
    ("steering", &[2]),
    ("t3a", &[3, 4]),
    ("graph", &[5]),
    ("cocompact", &[6]),
    ("contrast", &[7]),
    ("hedlund", &[8]),
    ("reduction", &[9]),
    ("structure", &[10]),
    ("quick", &[1, 2, 3, 4, 5, 7, 9, 10]),
    ("all", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]),
];

pub fn suite(name: &str) -> Option<&'static [u8]> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, ids)| *ids)
}

pub fn run_criterion(id: u8) -> Option<CriterionResult> {
    Some(match id {
        1 => keylemma(),
        2 => steering(),
        3 => toroidal_fibre(),
        4 => funneling(),
        5 => graph_minimal_set(),
        6 => cocompact(),
        7 => contrast(),
        8 => hedlund(),
        9 => reduction(),
        10 => structure(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::check_irrational_slope;

    #[test]
    fn random_matrices_are_hyperbolic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let [[a, b], [c, d]] = random_hyperbolic_matrix(&mut rng);
            assert_eq!(a * d - b * c, 1);
            assert!((3..=50).contains(&(a + d)));
            assert!(check_irrational_slope([[a, b], [c, d]], 5));
        }
    }

    #[test]
    fn random_hyperbolic_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let tr = random_hyperbolic(&mut rng).trace();
            assert!(tr > 2.1 && tr <= 4.7 + 1e-9);
        }
    }

    #[test]
    fn suites_are_known() {
        assert_eq!(suite("t3a"), Some(&[3u8, 4][..]));
        assert!(suite("unknown").is_none());
        assert!(run_criterion(11).is_none());
    }
}
