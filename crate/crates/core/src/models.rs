//! Concrete quotient models and their reduction maps.
//!
//! * `t3a`: the mapping torus `T³_A` of a hyperbolic `A ∈ SL(2,Z)`, either as
//!   the Sol³ manifold or through its unit tangent bundle.
//! * `octagon`: the genus-2 surface group of the regular octagon with angles `π/4`.
//! * `modular`: `PSL(2,Z)`, the non-compact contrast.
//! * product models over the octagon or modular group with transverse holonomy.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::groups::{
    GeneratedGroup, GroupError, ProductElement, TransverseElement, TransverseKind, TransversePoint,
};
use crate::moebius::{
    hyp_dist, BoundaryPoint, HalfPlanePoint, MoebiusElement, MoebiusError,
};

/// Largest `|⌊t⌋|` accepted by the T³_A reduction.
pub const T3A_MAX_WINDING: i64 = 64;

/// Iteration cap for the surface reductions.
pub const REDUCTION_ITERATION_CAP: usize = 10_000;

/// Strict-decrease margin for the Dirichlet descent.
pub const DESCENT_HYSTERESIS: f64 = 1e-12;

/// Slack in fundamental-domain membership tests.
pub const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("matrix {0:?} is not in SL(2,Z)")]
    NotSl2z([[i64; 2]; 2]),
    #[error("trace {0} is not > 2; A is not hyperbolic")]
    NotHyperbolic(i64),
    #[error("|floor(t)| = {0} exceeds the reduction guard of {T3A_MAX_WINDING}")]
    WindingGuard(i64),
    #[error("non-finite coordinates")]
    NonFinite,
    #[error("reduction did not terminate within {0} iterations")]
    IterationCap(usize),
    #[error("holonomy has {got} entries, base group has {expected} generators")]
    Arity { expected: usize, got: usize },
    #[error("holonomy kind {got:?} does not match transverse space {expected:?}")]
    HolonomyKind {
        expected: TransverseKind,
        got: TransverseKind,
    },
    #[error("operation not supported by model {model}: {what}")]
    Unsupported { model: ModelId, what: &'static str },
    #[error("lift does not belong to model {0}")]
    LiftMismatch(ModelId),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelId {
    T3A,
    Octagon,
    OctagonSo3,
    OctagonBoundary,
    Modular,
    /// A product model assembled from explicit holonomy.
    Product,
}

impl ModelId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelId::T3A => "t3a",
            ModelId::Octagon => "octagon",
            ModelId::OctagonSo3 => "octagon_so3",
            ModelId::OctagonBoundary => "octagon_boundary",
            ModelId::Modular => "modular",
            ModelId::Product => "product",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "t3a" => ModelId::T3A,
            "octagon" => ModelId::Octagon,
            "octagon_so3" => ModelId::OctagonSo3,
            "octagon_boundary" => ModelId::OctagonBoundary,
            "modular" => ModelId::Modular,
            other => return Err(ModelError::UnknownModel(other.to_string())),
        })
    }
}

fn mod1(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

// ---------------------------------------------------------------------------
// T³_A

/// The solvmanifold `T³_A` and the eigen-frame data of `A`.
///
/// `u = (d′, −b′)` and `v = (c′, −a′)` satisfy `Au = λu`, `Av = λ⁻¹v` and
/// `b′c′ − a′d′ = 1`. Primed coordinates are `(x′, y′) = (a′x + c′y, b′x + d′y)`,
/// in which the deck group reads `T₁ = +(a′, b′)`, `T₂ = +(c′, d′)` and
/// `h_A = (λx′, λ⁻¹y′, t′ + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct T3AModel {
    matrix: [[i64; 2]; 2],
    lambda: f64,
    log_lambda: f64,
    u: [f64; 2],
    v: [f64; 2],
    a_p: f64,
    b_p: f64,
    c_p: f64,
    d_p: f64,
}

impl T3AModel {
    pub fn new(matrix: [[i64; 2]; 2]) -> Result<Self, ModelError> {
        let [[a, b], [c, d]] = matrix;
        if a * d - b * c != 1 {
            return Err(ModelError::NotSl2z(matrix));
        }
        let trace = a + d;
        if trace <= 2 {
            return Err(ModelError::NotHyperbolic(trace));
        }
        let (af, bf, df) = (a as f64, b as f64, d as f64);
        let root = ((trace * trace - 4) as f64).sqrt();
        let lambda = 0.5 * (trace as f64 + root);
        // λ − a and λ⁻¹ − a via the half-difference of the diagonal; b ≠ 0 since A is not triangular
        let lambda_minus_a = 0.5 * (df - af + root);
        let mu_minus_a = 0.5 * (df - af - root);
        let u = [1.0, lambda_minus_a / bf];
        // v = s·(1, (λ⁻¹ − a)/b) with s chosen so det(u|v) = 1; λ⁻¹ − λ = −root
        let v = [-bf / root, -mu_minus_a / root];
        Ok(Self {
            matrix,
            lambda,
            log_lambda: lambda.ln(),
            u,
            v,
            a_p: -v[1],
            b_p: -u[1],
            c_p: v[0],
            d_p: u[0],
        })
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn expanding(&self) -> [f64; 2] {
        self.u
    }

    pub fn contracting(&self) -> [f64; 2] {
        self.v
    }

    /// `(a′, b′, c′, d′)`.
    pub fn primed_entries(&self) -> [f64; 4] {
        [self.a_p, self.b_p, self.c_p, self.d_p]
    }

    pub fn to_primed(&self, x: f64, y: f64) -> (f64, f64) {
        (self.a_p * x + self.c_p * y, self.b_p * x + self.d_p * y)
    }

    pub fn to_unprimed(&self, xp: f64, yp: f64) -> (f64, f64) {
        (-self.d_p * xp + self.c_p * yp, self.b_p * xp - self.a_p * yp)
    }

    /// Primed Sol³ coordinates to the `H × R` model: `(x′ + iλ^{t′}, y′)`.
    pub fn to_half_plane(&self, p: [f64; 3]) -> Result<(HalfPlanePoint, f64), ModelError> {
        let z = HalfPlanePoint::new(p[0], (p[2] * self.log_lambda).exp())?;
        Ok((z, p[1]))
    }

    pub fn from_half_plane(&self, z: HalfPlanePoint, yp: f64) -> [f64; 3] {
        [z.re(), yp, z.im().ln() / self.log_lambda]
    }

    /// `(x, y, t) ↦ (x′, y′, t′)`.
    pub fn sol_from_unprimed(&self, p: [f64; 3]) -> [f64; 3] {
        let (xp, yp) = self.to_primed(p[0], p[1]);
        [xp, yp, p[2]]
    }

    pub fn sol_to_unprimed(&self, p: [f64; 3]) -> [f64; 3] {
        let (x, y) = self.to_unprimed(p[0], p[1]);
        [x, y, p[2]]
    }

    /// Deck transformations on `R³` in the standard frame: `T₁, T₂, h_A`.
    pub fn deck_unprimed(&self, which: DeckGenerator, p: [f64; 3]) -> [f64; 3] {
        let [[a, b], [c, d]] = self.matrix.map(|r| r.map(|e| e as f64));
        match which {
            DeckGenerator::T1 => [p[0] + 1.0, p[1], p[2]],
            DeckGenerator::T2 => [p[0], p[1] + 1.0, p[2]],
            DeckGenerator::HA => [a * p[0] + b * p[1], c * p[0] + d * p[1], p[2] + 1.0],
        }
    }

    /// Deck transformations in the eigen-frame.
    pub fn deck_primed(&self, which: DeckGenerator, p: [f64; 3]) -> [f64; 3] {
        match which {
            DeckGenerator::T1 => [p[0] + self.a_p, p[1] + self.b_p, p[2]],
            DeckGenerator::T2 => [p[0] + self.c_p, p[1] + self.d_p, p[2]],
            DeckGenerator::HA => [self.lambda * p[0], p[1] / self.lambda, p[2] + 1.0],
        }
    }

    /// Deck transformations as elements of PSL(2,R) × Aff₊(R) acting on `H × R`.
    pub fn deck_element(&self, which: DeckGenerator) -> ProductElement {
        match which {
            DeckGenerator::T1 => ProductElement::new(
                MoebiusElement::unipotent(self.a_p),
                TransverseElement::Affine {
                    scale: 1.0,
                    shift: self.b_p,
                },
            ),
            DeckGenerator::T2 => ProductElement::new(
                MoebiusElement::unipotent(self.c_p),
                TransverseElement::Affine {
                    scale: 1.0,
                    shift: self.d_p,
                },
            ),
            DeckGenerator::HA => ProductElement::new(
                MoebiusElement::diagonal(self.lambda.sqrt()).expect("lambda > 1"),
                TransverseElement::Affine {
                    scale: self.lambda.recip(),
                    shift: 0.0,
                },
            ),
        }
    }

    pub fn group(&self) -> GeneratedGroup {
        GeneratedGroup::new(
            DeckGenerator::ALL
                .iter()
                .map(|g| (g.name().to_string(), self.deck_element(*g)))
                .collect(),
        )
        .expect("deck generators are nontrivial")
    }

    /// Canonical representative in `[0,1)³` of a point of `R³` (standard frame).
    ///
    /// Applies `h_A^{−⌊t⌋}` one integer step at a time, reducing modulo `Z²`
    /// in between; `A^{±1}` preserves `Z²`, so this equals the exact power.
    pub fn reduce_unprimed(&self, p: [f64; 3]) -> Result<[f64; 3], ModelError> {
        if !p.iter().all(|x| x.is_finite()) {
            return Err(ModelError::NonFinite);
        }
        let n = p[2].floor();
        if n.abs() > T3A_MAX_WINDING as f64 {
            return Err(ModelError::WindingGuard(n as i64));
        }
        let n = n as i64;
        let [[a, b], [c, d]] = self.matrix.map(|r| r.map(|e| e as f64));
        let (mut x, mut y) = (mod1(p[0]), mod1(p[1]));
        for _ in 0..n.unsigned_abs() {
            let (nx, ny) = if n > 0 {
                (d * x - b * y, -c * x + a * y)
            } else {
                (a * x + b * y, c * x + d * y)
            };
            x = mod1(nx);
            y = mod1(ny);
        }
        Ok([x, y, mod1(p[2] - n as f64)])
    }

    fn reduce_sol(&self, p: [f64; 3]) -> Result<([f64; 3], Vec<f64>), ModelError> {
        let reduced = self.reduce_unprimed(self.sol_to_unprimed(p))?;
        Ok((self.sol_from_unprimed(reduced), reduced.to_vec()))
    }

    fn reduce_frame(
        &self,
        frame: MoebiusElement,
        fiber: f64,
    ) -> Result<(MoebiusElement, f64, Vec<f64>), ModelError> {
        let (mut f, mut y) = (frame, fiber);
        for _ in 0..3 {
            let z = f.apply(HalfPlanePoint::I);
            let n = (z.im().ln() / self.log_lambda).floor();
            if !n.is_finite() {
                return Err(ModelError::NonFinite);
            }
            if n == 0.0 {
                break;
            }
            f = MoebiusElement::geodesic(-n * self.log_lambda).compose(&f);
            y *= (n * self.log_lambda).exp();
        }
        let z = f.apply(HalfPlanePoint::I);
        let (x, yy) = self.to_unprimed(z.re(), y);
        let (s, r) = (x.floor(), yy.floor());
        f = MoebiusElement::unipotent(-(s * self.a_p + r * self.c_p)).compose(&f);
        y -= s * self.b_p + r * self.d_p;
        let frame = f.frame();
        let (x, yy) = self.to_unprimed(frame.base.re(), y);
        let t = frame.base.im().ln() / self.log_lambda;
        let coords = vec![mod1(x), mod1(yy), mod1(t), frame.direction];
        Ok((f, y, coords))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeckGenerator {
    T1,
    T2,
    HA,
}

impl DeckGenerator {
    pub const ALL: [DeckGenerator; 3] = [DeckGenerator::T1, DeckGenerator::T2, DeckGenerator::HA];

    pub fn name(&self) -> &'static str {
        match self {
            DeckGenerator::T1 => "T1",
            DeckGenerator::T2 => "T2",
            DeckGenerator::HA => "hA",
        }
    }
}

/// Sol³ group law `(x′,y′,t′)(x″,y″,t″) = (x′ + λ^{t′}x″, y′ + λ^{−t′}y″, t′ + t″)`.
pub fn sol3_mul(p: [f64; 3], q: [f64; 3], lambda: f64) -> [f64; 3] {
    let s = lambda.powf(p[2]);
    [p[0] + s * q[0], p[1] + q[1] / s, p[2] + q[2]]
}

/// Inclusion of `B` into Sol³: `borel(α, β) ↦ (β, 0, log α / log λ)`.
pub fn sol3_b_embed(alpha: f64, beta: f64, lambda: f64) -> Result<[f64; 3], ModelError> {
    if !(alpha > 0.0) {
        return Err(MoebiusError::NonPositive {
            name: "alpha",
            value: alpha,
        }
        .into());
    }
    Ok([beta, 0.0, alpha.ln() / lambda.ln()])
}

/// True when no nonzero integer vector with entries in `[−N, N]` satisfies
/// `Aw = ±w`, i.e. neither eigenline of `A` has rational slope of height `≤ N`.
pub fn check_irrational_slope(matrix: [[i64; 2]; 2], height: i64) -> bool {
    let [[a, b], [c, d]] = matrix;
    for p in -height..=height {
        for q in -height..=height {
            if p == 0 && q == 0 {
                continue;
            }
            let (ap, aq) = (a * p + b * q, c * p + d * q);
            if (ap == p && aq == q) || (ap == -p && aq == -q) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Octagon surface group

/// Side-pairing group of the regular hyperbolic octagon centred at `i` with
/// interior angles `π/4`. `g_k` translates along the geodesic leaving `i` in
/// direction "up rotated by `kπ/4`"; `g_{k+4} = g_k⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct OctagonModel {
    generators: [MoebiusElement; 8],
    /// `g_k(i)`, the centres of the neighbouring tiles.
    neighbours: [HalfPlanePoint; 8],
    translation_length: f64,
    bounding_box: [f64; 4],
}

impl OctagonModel {
    pub fn new() -> Self {
        // cosh(ℓ/2) = cot(π/8) = 1 + √2
        let half = (1.0 + 2f64.sqrt()).acosh();
        let translation_length = 2.0 * half;
        let translate = MoebiusElement::geodesic(translation_length);
        let generators: [MoebiusElement; 8] = std::array::from_fn(|k| {
            let r = MoebiusElement::rotation(k as f64 * FRAC_PI_8);
            r.compose(&translate).compose(&r.inverse())
        });
        let neighbours = generators.map(|g| g.apply(HalfPlanePoint::I));
        let bounding_box = Self::trace_bounding_box(half);
        Self {
            generators,
            neighbours,
            translation_length,
            bounding_box,
        }
    }

    /// Samples the eight sides: side `k` is the bisector of `i` and `g_k(i)`,
    /// a geodesic segment of half-length `ℓ/2` centred on the midpoint.
    fn trace_bounding_box(half: f64) -> [f64; 4] {
        let mut bbox = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
        let turn = MoebiusElement::rotation(FRAC_PI_4);
        let samples = 512;
        for k in 0..8 {
            let to_mid = MoebiusElement::rotation(k as f64 * FRAC_PI_8)
                .compose(&MoebiusElement::geodesic(half))
                .compose(&turn);
            for j in 0..=samples {
                let s = -half + 2.0 * half * j as f64 / samples as f64;
                let z = to_mid.compose(&MoebiusElement::geodesic(s)).apply(HalfPlanePoint::I);
                bbox[0] = bbox[0].min(z.re());
                bbox[1] = bbox[1].max(z.re());
                bbox[2] = bbox[2].min(z.im());
                bbox[3] = bbox[3].max(z.im());
            }
        }
        bbox
    }

    pub fn generators(&self) -> &[MoebiusElement; 8] {
        &self.generators
    }

    pub fn translation_length(&self) -> f64 {
        self.translation_length
    }

    /// `[re_min, re_max, im_min, im_max]` of the fundamental domain.
    pub fn bounding_box(&self) -> [f64; 4] {
        self.bounding_box
    }

    /// `g₀ g₁⁻¹ g₂ g₃⁻¹ g₀⁻¹ g₁ g₂⁻¹ g₃`, which is the identity in the group.
    pub fn relator_product(&self) -> MoebiusElement {
        [0usize, 5, 2, 7, 4, 1, 6, 3]
            .iter()
            .fold(MoebiusElement::IDENTITY, |acc, &k| acc.compose(&self.generators[k]))
    }

    /// Dirichlet-domain membership: `z` is no farther from `i` than from any `g_k(i)`.
    pub fn contains(&self, z: HalfPlanePoint) -> bool {
        let d0 = hyp_dist(z, HalfPlanePoint::I);
        self.neighbours
            .iter()
            .all(|p| d0 <= hyp_dist(z, *p) + DOMAIN_SLACK)
    }

    /// Greedy descent. Returns the reduced frame and the index sequence of
    /// generators applied (left multiplications, in order).
    pub fn descend(&self, frame: MoebiusElement) -> Result<(MoebiusElement, Vec<usize>), ModelError> {
        let mut f = frame;
        let mut applied = Vec::new();
        for _ in 0..REDUCTION_ITERATION_CAP {
            let z = f.apply(HalfPlanePoint::I);
            let d0 = hyp_dist(z, HalfPlanePoint::I);
            // d(g_k z, i) = d(z, g_k⁻¹ i) = d(z, g_{k+4} i)
            let step = (0..8).find(|&k| hyp_dist(z, self.neighbours[(k + 4) % 8]) < d0 - DESCENT_HYSTERESIS);
            match step {
                Some(k) => {
                    f = self.generators[k].compose(&f);
                    applied.push(k);
                }
                None => return Ok((f, applied)),
            }
        }
        Err(ModelError::IterationCap(REDUCTION_ITERATION_CAP))
    }
}

impl Default for OctagonModel {
    fn default() -> Self {
        Self::new()
    }
}

// ---------------------------------------------------------------------------
// Modular group

pub fn modular_t() -> MoebiusElement {
    MoebiusElement::unipotent(1.0)
}

pub fn modular_s() -> MoebiusElement {
    MoebiusElement::new(0.0, -1.0, 1.0, 0.0).expect("det 1")
}

/// Standard reduction into `|Re z| ≤ 1/2, |z| ≥ 1`. Returns the reduced
/// frame and the sequence of moves (`Translate(n)` is `T^n`, `Invert` is `S`).
pub fn modular_descend(frame: MoebiusElement) -> Result<(MoebiusElement, Vec<ModularMove>), ModelError> {
    let mut f = frame;
    let mut moves = Vec::new();
    let s = modular_s();
    for _ in 0..REDUCTION_ITERATION_CAP {
        let z = f.apply(HalfPlanePoint::I);
        let n = (z.re() + 0.5).floor();
        if n != 0.0 {
            f = MoebiusElement::unipotent(-n).compose(&f);
            moves.push(ModularMove::Translate(-n as i64));
        }
        let z = f.apply(HalfPlanePoint::I);
        if z.re() * z.re() + z.im() * z.im() < 1.0 - DOMAIN_SLACK {
            f = s.compose(&f);
            moves.push(ModularMove::Invert);
        } else {
            return Ok((f, moves));
        }
    }
    Err(ModelError::IterationCap(REDUCTION_ITERATION_CAP))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModularMove {
    Translate(i64),
    Invert,
}

/// Reduces a point of the half-plane to the standard modular domain.
pub fn modular_reduce(z: HalfPlanePoint) -> Result<HalfPlanePoint, ModelError> {
    let frame = MoebiusElement::borel(z.im(), z.re())?;
    let (f, _) = modular_descend(frame)?;
    Ok(f.apply(HalfPlanePoint::I))
}

pub fn modular_contains(z: HalfPlanePoint) -> bool {
    z.re().abs() <= 0.5 + DOMAIN_SLACK && z.re().hypot(z.im()) >= 1.0 - DOMAIN_SLACK
}

// ---------------------------------------------------------------------------
// Product models

#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceBase {
    Octagon(OctagonModel),
    Modular,
}

impl SurfaceBase {
    /// Generators carrying holonomy: `g₀..g₃` for the octagon, `T, S` for the modular group.
    pub fn generators(&self) -> Vec<(String, MoebiusElement)> {
        match self {
            SurfaceBase::Octagon(o) => (0..4).map(|k| (format!("g{k}"), o.generators[k])).collect(),
            SurfaceBase::Modular => vec![("T".into(), modular_t()), ("S".into(), modular_s())],
        }
    }

    pub fn contains(&self, z: HalfPlanePoint) -> bool {
        match self {
            SurfaceBase::Octagon(o) => o.contains(z),
            SurfaceBase::Modular => modular_contains(z),
        }
    }
}

/// `Γ\(PSL(2,R) × G)` where `Γ = {(γ, hol(γ))}` over a surface group.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductModel {
    id: ModelId,
    base: SurfaceBase,
    transverse: TransverseKind,
    holonomy: Vec<TransverseElement>,
}

impl ProductModel {
    pub fn new(
        id: ModelId,
        base: SurfaceBase,
        transverse: TransverseKind,
        holonomy: Vec<TransverseElement>,
    ) -> Result<Self, ModelError> {
        let expected = base.generators().len();
        if holonomy.len() != expected {
            return Err(ModelError::Arity {
                expected,
                got: holonomy.len(),
            });
        }
        if let Some(bad) = holonomy.iter().find(|h| h.kind() != transverse) {
            return Err(ModelError::HolonomyKind {
                expected: transverse,
                got: bad.kind(),
            });
        }
        Ok(Self {
            id,
            base,
            transverse,
            holonomy,
        })
    }

    pub fn octagon() -> Self {
        Self::trivial(ModelId::Octagon, SurfaceBase::Octagon(OctagonModel::new()))
    }

    pub fn modular() -> Self {
        Self::trivial(ModelId::Modular, SurfaceBase::Modular)
    }

    fn trivial(id: ModelId, base: SurfaceBase) -> Self {
        let n = base.generators().len();
        Self::new(id, base, TransverseKind::Trivial, vec![TransverseElement::Trivial; n])
            .expect("trivial holonomy is well formed")
    }

    /// Diagonal action `γ(f, ξ) = (γf, γξ)` on `PSL(2,R) × ∂H`.
    pub fn octagon_boundary() -> Self {
        let octagon = OctagonModel::new();
        let holonomy = (0..4)
            .map(|k| TransverseElement::Circle(octagon.generators[k]))
            .collect();
        Self::new(
            ModelId::OctagonBoundary,
            SurfaceBase::Octagon(octagon),
            TransverseKind::BoundaryCircle,
            holonomy,
        )
        .expect("well formed")
    }

    /// Seeded SO(3) holonomy `(P, Q, Q, P)` on `(g₀, g₁, g₂, g₃)`.
    ///
    /// The pattern satisfies the surface relator for any `P, Q`, and two
    /// Haar-random rotations generate a dense subgroup of SO(3) almost surely.
    pub fn octagon_so3(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_rotation(&mut rng);
        let q = random_rotation(&mut rng);
        Self::new(
            ModelId::OctagonSo3,
            SurfaceBase::Octagon(OctagonModel::new()),
            TransverseKind::Rotations3,
            vec![p, q, q, p],
        )
        .expect("well formed")
    }

    pub fn id(&self) -> ModelId {
        self.id
    }

    pub fn base(&self) -> &SurfaceBase {
        &self.base
    }

    pub fn transverse(&self) -> TransverseKind {
        self.transverse
    }

    pub fn holonomy(&self) -> &[TransverseElement] {
        &self.holonomy
    }

    pub fn group(&self) -> GeneratedGroup {
        let gens = self
            .base
            .generators()
            .into_iter()
            .zip(self.holonomy.iter())
            .map(|((name, g), h)| (name, ProductElement::new(g, *h)))
            .collect();
        GeneratedGroup::new(gens).expect("surface generators are nontrivial")
    }

    /// Whether every holonomy element is the generator's own boundary action.
    pub fn is_diagonal(&self) -> bool {
        self.transverse == TransverseKind::BoundaryCircle
            && self
                .base
                .generators()
                .iter()
                .zip(self.holonomy.iter())
                .all(|((_, g), h)| matches!(h, TransverseElement::Circle(m) if m.approx_eq(g, 1e-12)))
    }

    fn octagon_holonomy(&self, k: usize) -> TransverseElement {
        if k < 4 {
            self.holonomy[k]
        } else {
            self.holonomy[k - 4].inverse()
        }
    }

    fn reduce_frame(
        &self,
        frame: MoebiusElement,
        fiber: TransversePoint,
    ) -> Result<(MoebiusElement, TransversePoint), ModelError> {
        match &self.base {
            SurfaceBase::Octagon(o) => {
                let (f, applied) = o.descend(frame)?;
                let mut y = fiber;
                if self.transverse != TransverseKind::Trivial {
                    for k in applied {
                        y = self.octagon_holonomy(k).apply(&y)?;
                    }
                }
                Ok((f, y))
            }
            SurfaceBase::Modular => {
                let (f, moves) = modular_descend(frame)?;
                let mut y = fiber;
                if self.transverse != TransverseKind::Trivial {
                    for m in moves {
                        y = match m {
                            ModularMove::Translate(n) => self.holonomy[0].pow(n).apply(&y)?,
                            ModularMove::Invert => self.holonomy[1].apply(&y)?,
                        };
                    }
                }
                Ok((f, y))
            }
        }
    }
}

/// Haar-random rotation (Shoemake's subgroup algorithm).
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> TransverseElement {
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let (s2, c2) = (TAU * u2).sin_cos();
    let (s3, c3) = (TAU * u3).sin_cos();
    TransverseElement::rotation(b * c3, a * s2, a * c2, b * s3)
}

// ---------------------------------------------------------------------------
// Lifts and quotient points

/// A point of the universal cover of a model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lift {
    /// Primed Sol³ coordinates `(x′, y′, t′)` of `T³_A`.
    Sol([f64; 3]),
    /// A frame of `T¹H` together with a transverse coordinate.
    Frame {
        frame: MoebiusElement,
        fiber: TransversePoint,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftKind {
    Sol,
    Frame,
}

impl Lift {
    pub fn kind(&self) -> LiftKind {
        match self {
            Lift::Sol(_) => LiftKind::Sol,
            Lift::Frame { .. } => LiftKind::Frame,
        }
    }

    pub fn frame(frame: MoebiusElement, fiber: TransversePoint) -> Self {
        Lift::Frame { frame, fiber }
    }
}

/// A reduced point: canonical lift plus its canonical coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientPoint {
    pub model: ModelId,
    pub lift: Lift,
    pub coords: Vec<f64>,
}

/// Name and period of one canonical coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoordSpec {
    pub name: &'static str,
    pub description: &'static str,
    pub period: Option<f64>,
}

const fn spec(name: &'static str, description: &'static str, period: Option<f64>) -> CoordSpec {
    CoordSpec {
        name,
        description,
        period,
    }
}

/// Distance between coordinate vectors, circular on periodic axes.
pub fn coord_distance(legend: &[CoordSpec], a: &[f64], b: &[f64]) -> f64 {
    legend
        .iter()
        .zip(a.iter().zip(b.iter()))
        .map(|(s, (x, y))| match s.period {
            Some(p) => {
                let d = (x - y).rem_euclid(p);
                d.min(p - d)
            }
            None => (x - y).abs(),
        })
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Models

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    T3A(T3AModel),
    Surface(ProductModel),
}

/// Parsed `model = ...` descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelDescriptor {
    pub id: ModelId,
    pub matrix: Option<[[i64; 2]; 2]>,
    pub seed: u64,
}

impl Model {
    pub fn build(desc: &ModelDescriptor) -> Result<Self, ModelError> {
        Ok(match desc.id {
            ModelId::T3A => Model::T3A(T3AModel::new(desc.matrix.unwrap_or([[2, 1], [1, 1]]))?),
            ModelId::Octagon => Model::Surface(ProductModel::octagon()),
            ModelId::OctagonSo3 => Model::Surface(ProductModel::octagon_so3(desc.seed)),
            ModelId::OctagonBoundary => Model::Surface(ProductModel::octagon_boundary()),
            ModelId::Modular => Model::Surface(ProductModel::modular()),
            ModelId::Product => {
                return Err(ModelError::Unsupported {
                    model: ModelId::Product,
                    what: "descriptor construction",
                })
            }
        })
    }

    pub fn id(&self) -> ModelId {
        match self {
            Model::T3A(_) => ModelId::T3A,
            Model::Surface(p) => p.id(),
        }
    }

    pub fn group(&self) -> GeneratedGroup {
        match self {
            Model::T3A(t) => t.group(),
            Model::Surface(p) => p.group(),
        }
    }

    pub fn transverse(&self) -> TransverseKind {
        match self {
            Model::T3A(_) => TransverseKind::RealAffine,
            Model::Surface(p) => p.transverse(),
        }
    }

    /// The base frame `Id` with the fiber origin (Sol³ origin for `LiftKind::Sol`).
    pub fn origin(&self, kind: LiftKind) -> Result<Lift, ModelError> {
        match (self, kind) {
            (Model::T3A(_), LiftKind::Sol) => Ok(Lift::Sol([0.0; 3])),
            (_, LiftKind::Frame) => Ok(Lift::frame(
                MoebiusElement::IDENTITY,
                TransversePoint::origin(self.transverse()),
            )),
            (Model::Surface(_), LiftKind::Sol) => Err(ModelError::Unsupported {
                model: self.id(),
                what: "Sol³ lifts",
            }),
        }
    }

    pub fn legend(&self, kind: LiftKind) -> Vec<CoordSpec> {
        match (self, kind) {
            (Model::T3A(_), LiftKind::Sol) => vec![
                spec("x", "torus coordinate along e1", Some(1.0)),
                spec("y", "torus coordinate along e2", Some(1.0)),
                spec("t", "base circle coordinate", Some(1.0)),
            ],
            (Model::T3A(_), LiftKind::Frame) => vec![
                spec("x", "torus coordinate along e1", Some(1.0)),
                spec("y", "torus coordinate along e2", Some(1.0)),
                spec("t", "base circle coordinate", Some(1.0)),
                spec("angle", "frame direction", Some(TAU)),
            ],
            (Model::Surface(p), _) => {
                let mut v = vec![
                    spec("re", "Re of the base point", None),
                    spec("im", "Im of the base point", None),
                    spec("angle", "frame direction", Some(TAU)),
                ];
                match p.transverse() {
                    TransverseKind::Trivial => {}
                    TransverseKind::RealAffine => v.push(spec("y", "transverse real coordinate", None)),
                    TransverseKind::BoundaryCircle => {
                        v.push(spec("theta", "transverse boundary angle", Some(TAU)))
                    }
                    TransverseKind::Rotations3 => {
                        v.push(spec("rx", "transverse rotation vector x", None));
                        v.push(spec("ry", "transverse rotation vector y", None));
                        v.push(spec("rz", "transverse rotation vector z", None));
                    }
                }
                v
            }
        }
    }

    /// Canonical representative of the class of `lift`.
    pub fn reduce(&self, lift: &Lift) -> Result<QuotientPoint, ModelError> {
        let id = self.id();
        match (self, lift) {
            (Model::T3A(t), Lift::Sol(p)) => {
                let (p, coords) = t.reduce_sol(*p)?;
                Ok(QuotientPoint {
                    model: id,
                    lift: Lift::Sol(p),
                    coords,
                })
            }
            (Model::T3A(t), Lift::Frame { frame, fiber: TransversePoint::Real(y) }) => {
                let (f, y, coords) = t.reduce_frame(*frame, *y)?;
                Ok(QuotientPoint {
                    model: id,
                    lift: Lift::frame(f, TransversePoint::Real(y)),
                    coords,
                })
            }
            (Model::Surface(p), Lift::Frame { frame, fiber }) if fiber.kind() == p.transverse() => {
                let (f, y) = p.reduce_frame(*frame, *fiber)?;
                let fr = f.frame();
                let mut coords = vec![fr.base.re(), fr.base.im(), fr.direction];
                coords.extend(y.coordinates());
                Ok(QuotientPoint {
                    model: id,
                    lift: Lift::frame(f, y),
                    coords,
                })
            }
            _ => Err(ModelError::LiftMismatch(id)),
        }
    }

    /// Left action of a deck element on a lift.
    pub fn act(&self, gamma: &ProductElement, lift: &Lift) -> Result<Lift, ModelError> {
        match (self, lift) {
            (Model::T3A(t), Lift::Sol(p)) => {
                let (z, y) = t.to_half_plane(*p)?;
                let z = gamma.base.apply(z);
                let y = match gamma.fiber.apply(&TransversePoint::Real(y))? {
                    TransversePoint::Real(y) => y,
                    _ => unreachable!("affine maps act on reals"),
                };
                Ok(Lift::Sol(t.from_half_plane(z, y)))
            }
            (_, Lift::Frame { frame, fiber }) => Ok(Lift::frame(
                gamma.base.compose(frame),
                gamma.fiber.apply(fiber)?,
            )),
            _ => Err(ModelError::LiftMismatch(self.id())),
        }
    }

    /// Fundamental-domain membership of a reduced point.
    pub fn contains(&self, q: &QuotientPoint) -> bool {
        match (self, &q.lift) {
            (Model::T3A(_), _) => q.coords[..3].iter().all(|c| (0.0..1.0).contains(c)),
            (Model::Surface(p), Lift::Frame { frame, .. }) => {
                p.base().contains(frame.apply(HalfPlanePoint::I))
            }
            _ => false,
        }
    }

    /// Distance between reduced points: periodic coordinate distance, or
    /// (for representatives on the domain boundary) the lift distance after
    /// one deck generator.
    pub fn quotient_distance(&self, p: &QuotientPoint, q: &QuotientPoint) -> Result<f64, ModelError> {
        let legend = self.legend(p.lift.kind());
        let mut best = coord_distance(&legend, &p.coords, &q.coords);
        let group = self.group();
        for letter in group.letters() {
            let moved = self.act(&group.letter_element(letter), &q.lift)?;
            best = best.min(lift_distance(&p.lift, &moved));
        }
        Ok(best)
    }

    /// Escape functional for divergence detection: `Im` of the reduced base
    /// point on the modular surface, zero on compact quotients.
    pub fn escape(&self, q: &QuotientPoint) -> f64 {
        match (self, &q.lift) {
            (Model::Surface(p), Lift::Frame { frame, .. }) if matches!(p.base(), SurfaceBase::Modular) => {
                frame.apply(HalfPlanePoint::I).im()
            }
            _ => 0.0,
        }
    }

    /// Distance to the distinguished B-minimal set: the graph `{(f, f(∞))}`
    /// for the diagonal model, the frames with `f(∞) = ∞` for `T³_A`.
    pub fn minimal_set_distance(&self, lift: &Lift) -> Result<f64, ModelError> {
        match (self, lift) {
            (Model::Surface(p), Lift::Frame { frame, fiber: TransversePoint::Boundary(xi) })
                if p.is_diagonal() =>
            {
                Ok(xi.chordal(&frame.apply_boundary(BoundaryPoint::INFINITY)))
            }
            (Model::T3A(_), Lift::Frame { frame, .. }) => Ok(frame
                .apply_boundary(BoundaryPoint::INFINITY)
                .chordal(&BoundaryPoint::INFINITY)),
            _ => Err(ModelError::Unsupported {
                model: self.id(),
                what: "minimal-set distance",
            }),
        }
    }

    /// A random frame lift (random base point within hyperbolic distance 3 of
    /// `i`, random direction, random fiber point).
    pub fn random_frame<R: Rng + ?Sized>(&self, rng: &mut R) -> Lift {
        let frame = random_frame(rng, 3.0);
        let fiber = match self.transverse() {
            TransverseKind::Trivial => TransversePoint::Trivial,
            TransverseKind::RealAffine => TransversePoint::Real(rng.random_range(-1.0..1.0)),
            TransverseKind::BoundaryCircle => {
                TransversePoint::Boundary(BoundaryPoint::from_angle(rng.random_range(-PI..PI)))
            }
            TransverseKind::Rotations3 => match random_rotation(rng) {
                TransverseElement::Rotation(q) => TransversePoint::Rotation(q),
                _ => unreachable!(),
            },
        };
        Lift::frame(frame, fiber)
    }
}

/// Random frame `rotation(θ₁) · geodesic(r) · rotation(θ₂)` with `r ≤ max_radius`.
pub fn random_frame<R: Rng + ?Sized>(rng: &mut R, max_radius: f64) -> MoebiusElement {
    MoebiusElement::rotation(rng.random_range(0.0..PI))
        .compose(&MoebiusElement::geodesic(rng.random_range(0.0..max_radius)))
        .compose(&MoebiusElement::rotation(rng.random_range(0.0..PI)))
}

fn lift_distance(a: &Lift, b: &Lift) -> f64 {
    match (a, b) {
        (Lift::Sol(p), Lift::Sol(q)) => p
            .iter()
            .zip(q.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max),
        (
            Lift::Frame {
                frame: f,
                fiber: y,
            },
            Lift::Frame {
                frame: g,
                fiber: z,
            },
        ) => f.max_entry_diff(g).max(y.distance(z)),
        _ => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn golden() -> T3AModel {
        T3AModel::new([[2, 1], [1, 1]]).unwrap()
    }

    #[test]
    fn golden_eigendata() {
        let t = golden();
        // oracle: root of λ² − 3λ + 1
        let lambda = (3.0 + 5f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(t.lambda(), lambda, epsilon = 1e-15);
        assert_abs_diff_eq!(t.lambda(), 2.6180340, epsilon = 1e-7);
        let [a, b, c, d] = t.primed_entries();
        assert_abs_diff_eq!(a, -0.723607, epsilon = 1e-6);
        assert_abs_diff_eq!(b, -0.618034, epsilon = 1e-6);
        assert_abs_diff_eq!(c, -0.447214, epsilon = 1e-6);
        assert_abs_diff_eq!(d, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b * c - a * d, 1.0, epsilon = 1e-12);
        let u = t.expanding();
        assert_abs_diff_eq!(u[1], lambda - 2.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_non_hyperbolic() {
        assert_eq!(
            T3AModel::new([[1, 1], [0, 1]]),
            Err(ModelError::NotHyperbolic(2))
        );
        assert!(matches!(T3AModel::new([[2, 1], [1, 2]]), Err(ModelError::NotSl2z(_))));
        assert!(T3AModel::new([[-2, 1], [-1, 0]]).is_err());
    }

    #[test]
    fn irrational_slope_examples() {
        assert!(check_irrational_slope([[2, 1], [1, 1]], 50));
        assert!(!check_irrational_slope([[1, 1], [0, 1]], 5));
        assert!(check_irrational_slope([[3, 2], [1, 1]], 50));
    }

    #[test]
    fn t3a_reduce_examples() {
        let t = golden();
        let r = t.reduce_unprimed([0.5, 0.5, 1.0]).unwrap();
        assert_abs_diff_eq!(r[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r[1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r[2], 0.0, epsilon = 1e-15);
        let p = [0.25, 0.75, 0.5];
        assert_eq!(t.reduce_unprimed(p).unwrap(), p);
        assert!(matches!(
            t.reduce_unprimed([0.0, 0.0, 65.5]),
            Err(ModelError::WindingGuard(65))
        ));
        assert_eq!(t.reduce_unprimed([f64::NAN, 0.0, 0.0]), Err(ModelError::NonFinite));
    }

    #[test]
    fn half_plane_coordinates() {
        let t = golden();
        let p = t.from_half_plane(HalfPlanePoint::I, 0.3);
        assert_eq!(p, [0.0, 0.3, 0.0]);
        let p = t.from_half_plane(HalfPlanePoint::new(0.0, t.lambda()).unwrap(), 0.0);
        assert_abs_diff_eq!(p[2], 1.0, epsilon = 1e-15);
        let q = [0.3, -1.2, 0.77];
        let (z, y) = t.to_half_plane(q).unwrap();
        let back = t.from_half_plane(z, y);
        for k in 0..3 {
            assert_abs_diff_eq!(back[k], q[k], epsilon = 1e-12);
        }
    }

    #[test]
    fn sol3_examples() {
        let lambda = golden().lambda();
        assert_eq!(sol3_mul([0.0; 3], [1.0, 2.0, 3.0], lambda), [1.0, 2.0, 3.0]);
        let p = sol3_mul([1.0, 0.0, 1.0], [1.0, 0.0, 0.0], lambda);
        assert_abs_diff_eq!(p[0], 1.0 + lambda, epsilon = 1e-15);
        assert_eq!((p[1], p[2]), (0.0, 1.0));
        let e = sol3_b_embed(lambda, 0.0, lambda).unwrap();
        assert_abs_diff_eq!(e[2], 1.0, epsilon = 1e-15);
        assert!(sol3_b_embed(0.0, 1.0, lambda).is_err());
    }

    #[test]
    fn octagon_construction() {
        let o = OctagonModel::new();
        // oracle: ℓ = 2 arccosh(1 + √2), trace = 2 cosh(ℓ/2)
        assert_abs_diff_eq!(o.translation_length(), 3.0571, epsilon = 1e-4);
        for g in o.generators() {
            assert_abs_diff_eq!(g.trace(), 2.0 * (1.0 + 2f64.sqrt()), epsilon = 1e-12);
            assert_abs_diff_eq!(g.trace(), 4.8284, epsilon = 1e-4);
        }
        for k in 0..4 {
            assert!(o.generators()[k + 4].approx_eq(&o.generators()[k].inverse(), 1e-12));
        }
        assert!(o.relator_product().is_identity(1e-6));
        for j in 0..8 {
            for k in (j + 1)..8 {
                if (k + 8 - j) % 8 == 4 {
                    continue;
                }
                let (a, b) = (o.generators()[j], o.generators()[k]);
                assert!(!(a * b).approx_eq(&(b * a), 1e-6), "g{j} and g{k} commute");
            }
        }
        let [x0, x1, y0, y1] = o.bounding_box();
        assert!(x0 < 0.0 && x1 > 0.0 && y0 < 1.0 && y1 > 1.0);
        assert!(o.contains(HalfPlanePoint::I));
    }

    #[test]
    fn octagon_reduction_examples() {
        let m = Model::Surface(ProductModel::octagon());
        let id = Lift::frame(MoebiusElement::IDENTITY, TransversePoint::Trivial);
        let q = m.reduce(&id).unwrap();
        assert_eq!(q.lift, id);
        let g1 = OctagonModel::new().generators()[1];
        let q = m.reduce(&Lift::frame(g1, TransversePoint::Trivial)).unwrap();
        match q.lift {
            Lift::Frame { frame, .. } => assert!(frame.is_identity(1e-12)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn modular_reduce_examples() {
        let z = modular_reduce(HalfPlanePoint::new(2.0, 2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(z.re(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(z.im(), 2.0, epsilon = 1e-12);
        let z = modular_reduce(HalfPlanePoint::I).unwrap();
        assert_abs_diff_eq!(z.re(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(z.im(), 1.0, epsilon = 1e-15);
        // oracle: −1/z for z = 0.4 + 0.9i is (−0.4 + 0.9i)/0.97
        let z = modular_reduce(HalfPlanePoint::new(0.4, 0.9).unwrap()).unwrap();
        assert_abs_diff_eq!(z.re(), -0.4 / 0.97, epsilon = 1e-12);
        assert_abs_diff_eq!(z.im(), 0.9 / 0.97, epsilon = 1e-12);
        assert_abs_diff_eq!(z.re(), -0.4124, epsilon = 1e-4);
        assert_abs_diff_eq!(z.im(), 0.9278, epsilon = 1e-4);
    }

    #[test]
    fn product_models() {
        let diag = ProductModel::octagon_boundary();
        assert!(diag.is_diagonal());
        let so3 = ProductModel::octagon_so3(7);
        for h in so3.holonomy() {
            match h {
                TransverseElement::Rotation(q) => assert_abs_diff_eq!(q.norm(), 1.0, epsilon = 1e-12),
                _ => panic!("expected rotations"),
            }
        }
        assert_eq!(so3, ProductModel::octagon_so3(7));
        assert_ne!(so3, ProductModel::octagon_so3(8));
        let err = ProductModel::new(
            ModelId::Product,
            SurfaceBase::Modular,
            TransverseKind::Trivial,
            vec![TransverseElement::Trivial],
        );
        assert_eq!(err, Err(ModelError::Arity { expected: 2, got: 1 }));
    }

    #[test]
    fn seeded_holonomy_respects_relator() {
        let so3 = ProductModel::octagon_so3(11);
        let h = so3.holonomy();
        let inv = |k: usize| h[k].inverse();
        let word = [h[0], inv(1), h[2], inv(3), inv(0), h[1], inv(2), h[3]];
        let prod = word
            .iter()
            .fold(TransverseKind::Rotations3.identity(), |acc, x| acc.compose(x).unwrap());
        assert!(prod.distance_to_identity() < 1e-12);
    }

    #[test]
    fn minimal_set_distance_examples() {
        let m = Model::Surface(ProductModel::octagon_boundary());
        let f = MoebiusElement::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let on_graph = Lift::frame(f, TransversePoint::Boundary(BoundaryPoint::from_real(2.0)));
        assert!(m.minimal_set_distance(&on_graph).unwrap() < 1e-12);
        let id_inf = Lift::frame(MoebiusElement::IDENTITY, TransversePoint::Boundary(BoundaryPoint::INFINITY));
        assert_eq!(m.minimal_set_distance(&id_inf).unwrap(), 0.0);
        let id_zero = Lift::frame(MoebiusElement::IDENTITY, TransversePoint::Boundary(BoundaryPoint::ZERO));
        assert_abs_diff_eq!(m.minimal_set_distance(&id_zero).unwrap(), 2.0, epsilon = 1e-15);
        let plain = Model::Surface(ProductModel::octagon());
        assert!(plain
            .minimal_set_distance(&Lift::frame(MoebiusElement::IDENTITY, TransversePoint::Trivial))
            .is_err());
    }

    #[test]
    fn descriptor_parsing() {
        assert_eq!("octagon_so3".parse::<ModelId>().unwrap(), ModelId::OctagonSo3);
        assert!("torus".parse::<ModelId>().is_err());
    }
}
