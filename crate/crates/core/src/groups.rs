//! Transverse factors `G`, elements of `PSL(2,R) × G`, and finitely generated
//! subgroups explored through word balls.

use std::collections::HashMap;
use std::fmt;

use nalgebra::{Quaternion, UnitQuaternion, Vector3};
use thiserror::Error;

use crate::moebius::{
    hyp_dist, BoundaryPoint, ElementClass, FixedPoints, HalfPlanePoint, MoebiusElement,
    MoebiusError,
};

/// Grid used to quantize entries when deduplicating ball elements.
pub const KEY_QUANTUM: f64 = 1e-9;

/// Default largest word length accepted by [`word_ball`].
pub const DEFAULT_MAX_RADIUS: usize = 6;

/// Default discreteness-gap threshold for [`classify_psl_projection`].
pub const DEFAULT_GAP_TOL: f64 = 0.05;

/// Tolerance for deciding that generators share a fixed point.
pub const COMMON_FIXED_POINT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("transverse kinds differ: {0:?} vs {1:?}")]
    KindMismatch(TransverseKind, TransverseKind),
    #[error("affine scale must be positive, got {0}")]
    AffineScale(f64),
    #[error("a generated group needs at least one generator")]
    NoGenerators,
    #[error("generator `{0}` is the identity")]
    IdentityGenerator(String),
    #[error("radius {radius} exceeds the configured cap {cap}")]
    RadiusCap { radius: usize, cap: usize },
    #[error("word ball exceeds the element budget of {0}")]
    MemoryBudget(usize),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

/// Which transverse group `G` a product element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransverseKind {
    Trivial,
    /// `y ↦ my + k` with `m > 0`, acting on `R`.
    RealAffine,
    /// SO(3) as unit quaternions modulo sign, acting on itself by left multiplication.
    Rotations3,
    /// PSL(2,R) acting on the boundary circle.
    BoundaryCircle,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TransverseElement {
    Trivial,
    Affine { scale: f64, shift: f64 },
    Rotation(UnitQuaternion<f64>),
    Circle(MoebiusElement),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TransversePoint {
    Trivial,
    Real(f64),
    Rotation(UnitQuaternion<f64>),
    Boundary(BoundaryPoint),
}

fn canonical_quaternion(q: UnitQuaternion<f64>) -> UnitQuaternion<f64> {
    let mut q = q;
    if (q.norm() - 1.0).abs() > 1e-12 {
        q = UnitQuaternion::new_normalize(q.into_inner());
    }
    let c = q.coords; // (i, j, k, w)
    let first = [c[3], c[0], c[1], c[2]]
        .into_iter()
        .find(|x| *x != 0.0)
        .unwrap_or(1.0);
    if first < 0.0 {
        UnitQuaternion::new_unchecked(-q.into_inner())
    } else {
        q
    }
}

fn quaternion_diff(p: &UnitQuaternion<f64>, q: &UnitQuaternion<f64>) -> f64 {
    let a = p.coords;
    let b = q.coords;
    let same = (a - b).amax();
    let flipped = (a + b).amax();
    same.min(flipped)
}

impl TransverseKind {
    pub fn identity(self) -> TransverseElement {
        match self {
            TransverseKind::Trivial => TransverseElement::Trivial,
            TransverseKind::RealAffine => TransverseElement::Affine {
                scale: 1.0,
                shift: 0.0,
            },
            TransverseKind::Rotations3 => TransverseElement::Rotation(UnitQuaternion::identity()),
            TransverseKind::BoundaryCircle => TransverseElement::Circle(MoebiusElement::IDENTITY),
        }
    }
}

impl TransverseElement {
    pub fn affine(scale: f64, shift: f64) -> Result<Self, GroupError> {
        if !(scale > 0.0) || !scale.is_finite() || !shift.is_finite() {
            return Err(GroupError::AffineScale(scale));
        }
        Ok(Self::Affine { scale, shift })
    }

    /// Rotation from quaternion components `(w, x, y, z)`, normalized.
    pub fn rotation(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self::Rotation(canonical_quaternion(UnitQuaternion::new_normalize(
            Quaternion::new(w, x, y, z),
        )))
    }

    pub fn from_unit_quaternion(q: UnitQuaternion<f64>) -> Self {
        Self::Rotation(canonical_quaternion(q))
    }

    pub fn kind(&self) -> TransverseKind {
        match self {
            Self::Trivial => TransverseKind::Trivial,
            Self::Affine { .. } => TransverseKind::RealAffine,
            Self::Rotation(_) => TransverseKind::Rotations3,
            Self::Circle(_) => TransverseKind::BoundaryCircle,
        }
    }

    /// `self ∘ other`; affine maps compose as `(m₁,k₁)∘(m₂,k₂) = (m₁m₂, m₁k₂ + k₁)`.
    pub fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        Ok(match (self, other) {
            (Self::Trivial, Self::Trivial) => Self::Trivial,
            (
                Self::Affine {
                    scale: m1,
                    shift: k1,
                },
                Self::Affine {
                    scale: m2,
                    shift: k2,
                },
            ) => Self::Affine {
                scale: m1 * m2,
                shift: m1 * k2 + k1,
            },
            (Self::Rotation(p), Self::Rotation(q)) => Self::Rotation(canonical_quaternion(p * q)),
            (Self::Circle(f), Self::Circle(g)) => Self::Circle(f.compose(g)),
            _ => return Err(GroupError::KindMismatch(self.kind(), other.kind())),
        })
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = self.kind().identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same kind");
            }
            base = base.compose(&base).expect("same kind");
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::Trivial => Self::Trivial,
            Self::Affine { scale, shift } => Self::Affine {
                scale: scale.recip(),
                shift: -shift / scale,
            },
            Self::Rotation(q) => Self::Rotation(canonical_quaternion(q.inverse())),
            Self::Circle(f) => Self::Circle(f.inverse()),
        }
    }

    pub fn apply(&self, point: &TransversePoint) -> Result<TransversePoint, GroupError> {
        Ok(match (self, point) {
            (Self::Trivial, TransversePoint::Trivial) => TransversePoint::Trivial,
            (Self::Affine { scale, shift }, TransversePoint::Real(y)) => {
                TransversePoint::Real(scale * y + shift)
            }
            (Self::Rotation(q), TransversePoint::Rotation(p)) => {
                TransversePoint::Rotation(canonical_quaternion(q * p))
            }
            (Self::Circle(f), TransversePoint::Boundary(xi)) => {
                TransversePoint::Boundary(f.apply_boundary(*xi))
            }
            _ => return Err(GroupError::KindMismatch(self.kind(), point.kind())),
        })
    }

    /// Distance to the identity: `√((ln m)² + k²)` for affine maps, the
    /// rotation angle for SO(3), Frobenius distance for PSL(2,R).
    pub fn distance_to_identity(&self) -> f64 {
        match self {
            Self::Trivial => 0.0,
            Self::Affine { scale, shift } => scale.ln().hypot(*shift),
            Self::Rotation(q) => q.angle(),
            Self::Circle(f) => f.distance_to_identity(),
        }
    }

    /// Largest coordinate difference; infinite across kinds.
    pub fn max_diff(&self, other: &Self) -> f64 {
        match (self, other) {
            (Self::Trivial, Self::Trivial) => 0.0,
            (
                Self::Affine {
                    scale: m1,
                    shift: k1,
                },
                Self::Affine {
                    scale: m2,
                    shift: k2,
                },
            ) => (m1 - m2).abs().max((k1 - k2).abs()),
            (Self::Rotation(p), Self::Rotation(q)) => quaternion_diff(p, q),
            (Self::Circle(f), Self::Circle(g)) => f.max_entry_diff(g),
            _ => f64::INFINITY,
        }
    }

    fn push_key(&self, key: &mut Vec<i64>) {
        let mut push = |x: f64| key.push((x / KEY_QUANTUM).round() as i64);
        match self {
            Self::Trivial => {}
            Self::Affine { scale, shift } => {
                push(*scale);
                push(*shift);
            }
            Self::Rotation(q) => {
                let c = q.coords;
                for x in [c[3], c[0], c[1], c[2]] {
                    push(x);
                }
            }
            Self::Circle(f) => f.entries().into_iter().for_each(push),
        }
    }
}

impl TransversePoint {
    pub fn kind(&self) -> TransverseKind {
        match self {
            Self::Trivial => TransverseKind::Trivial,
            Self::Real(_) => TransverseKind::RealAffine,
            Self::Rotation(_) => TransverseKind::Rotations3,
            Self::Boundary(_) => TransverseKind::BoundaryCircle,
        }
    }

    /// Base point of the fiber for each kind.
    pub fn origin(kind: TransverseKind) -> Self {
        match kind {
            TransverseKind::Trivial => Self::Trivial,
            TransverseKind::RealAffine => Self::Real(0.0),
            TransverseKind::Rotations3 => Self::Rotation(UnitQuaternion::identity()),
            TransverseKind::BoundaryCircle => Self::Boundary(BoundaryPoint::INFINITY),
        }
    }

    /// Distance between fiber points (chordal on the circle, rotation angle on SO(3)).
    pub fn distance(&self, other: &Self) -> f64 {
        match (self, other) {
            (Self::Trivial, Self::Trivial) => 0.0,
            (Self::Real(a), Self::Real(b)) => (a - b).abs(),
            (Self::Rotation(p), Self::Rotation(q)) => p.angle_to(q),
            (Self::Boundary(a), Self::Boundary(b)) => a.chordal(b),
            _ => f64::INFINITY,
        }
    }

    /// Coordinates written to orbit files; SO(3) uses the rotation vector.
    pub fn coordinates(&self) -> Vec<f64> {
        match self {
            Self::Trivial => vec![],
            Self::Real(y) => vec![*y],
            Self::Rotation(q) => {
                let v: Vector3<f64> = q.scaled_axis();
                vec![v[0], v[1], v[2]]
            }
            Self::Boundary(xi) => vec![xi.angle()],
        }
    }
}

/// An element `γ = (f, g)` of `PSL(2,R) × G`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductElement {
    pub base: MoebiusElement,
    pub fiber: TransverseElement,
}

impl ProductElement {
    pub fn new(base: MoebiusElement, fiber: TransverseElement) -> Self {
        Self { base, fiber }
    }

    pub fn identity(kind: TransverseKind) -> Self {
        Self {
            base: MoebiusElement::IDENTITY,
            fiber: kind.identity(),
        }
    }

    pub fn kind(&self) -> TransverseKind {
        self.fiber.kind()
    }

    pub fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        Ok(Self {
            base: self.base.compose(&other.base),
            fiber: self.fiber.compose(&other.fiber)?,
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            base: self.base.inverse(),
            fiber: self.fiber.inverse(),
        }
    }

    pub fn conjugate_by(&self, g: &Self) -> Result<Self, GroupError> {
        g.compose(self)?.compose(&g.inverse())
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.base.is_identity(tol) && self.fiber.distance_to_identity() <= tol
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.base
            .max_entry_diff(&other.base)
            .max(self.fiber.max_diff(&other.fiber))
    }

    /// Quantized canonical entries used to collapse equal elements.
    pub fn canonical_key(&self) -> Vec<i64> {
        let mut key: Vec<i64> = self
            .base
            .entries()
            .iter()
            .map(|x| (x / KEY_QUANTUM).round() as i64)
            .collect();
        self.fiber.push_key(&mut key);
        key
    }

    /// Action on `∂H × fiber`, the space dual to the right B-action.
    pub fn apply_dual(
        &self,
        xi: BoundaryPoint,
        y: &TransversePoint,
    ) -> Result<(BoundaryPoint, TransversePoint), GroupError> {
        Ok((self.base.apply_boundary(xi), self.fiber.apply(y)?))
    }
}

/// A letter of a word: a generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

pub type Word = Vec<Letter>;

/// Subgroup of `PSL(2,R) × G` given by named generators; inverses are implicit.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    generators: Vec<(String, ProductElement)>,
    kind: TransverseKind,
}

impl GeneratedGroup {
    pub fn new(generators: Vec<(String, ProductElement)>) -> Result<Self, GroupError> {
        let Some((_, first)) = generators.first() else {
            return Err(GroupError::NoGenerators);
        };
        let kind = first.kind();
        for (name, g) in &generators {
            if g.kind() != kind {
                return Err(GroupError::KindMismatch(kind, g.kind()));
            }
            if g.canonical_key() == ProductElement::identity(kind).canonical_key() {
                return Err(GroupError::IdentityGenerator(name.clone()));
            }
        }
        Ok(Self { generators, kind })
    }

    /// Group with trivial transverse factor.
    pub fn from_moebius<S: Into<String>>(
        generators: impl IntoIterator<Item = (S, MoebiusElement)>,
    ) -> Result<Self, GroupError> {
        Self::new(
            generators
                .into_iter()
                .map(|(n, m)| (n.into(), ProductElement::new(m, TransverseElement::Trivial)))
                .collect(),
        )
    }

    pub fn generators(&self) -> &[(String, ProductElement)] {
        &self.generators
    }

    pub fn kind(&self) -> TransverseKind {
        self.kind
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.generators.len()).flat_map(|generator| {
            [false, true].into_iter().map(move |inverse| Letter { generator, inverse })
        })
    }

    pub fn letter_element(&self, letter: Letter) -> ProductElement {
        let g = self.generators[letter.generator].1;
        if letter.inverse {
            g.inverse()
        } else {
            g
        }
    }

    pub fn evaluate(&self, word: &[Letter]) -> Result<ProductElement, GroupError> {
        word.iter()
            .try_fold(ProductElement::identity(self.kind), |acc, l| {
                acc.compose(&self.letter_element(*l))
            })
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter()
            .map(|l| {
                let name = &self.generators[l.generator].0;
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Same group with every generator conjugated by `g`.
    pub fn conjugated(&self, g: &ProductElement) -> Result<Self, GroupError> {
        let generators = self
            .generators
            .iter()
            .map(|(n, x)| Ok((n.clone(), x.conjugate_by(g)?)))
            .collect::<Result<Vec<_>, GroupError>>()?;
        Self::new(generators)
    }
}

#[derive(Clone, Debug)]
pub struct BallEntry {
    pub word: Word,
    pub element: ProductElement,
}

/// All products of at most `radius` generators and inverses, one entry per
/// distinct element (shortest word, first in enumeration order).
#[derive(Clone, Debug)]
pub struct WordBall {
    pub radius: usize,
    pub entries: Vec<BallEntry>,
}

impl WordBall {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries other than the identity.
    pub fn nontrivial(&self) -> impl Iterator<Item = &BallEntry> {
        self.entries.iter().skip(1)
    }

    pub fn contains(&self, element: &ProductElement) -> bool {
        let key = element.canonical_key();
        self.entries.iter().any(|e| e.element.canonical_key() == key)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BallLimits {
    pub max_radius: usize,
    pub max_elements: usize,
}

impl Default for BallLimits {
    fn default() -> Self {
        Self {
            max_radius: DEFAULT_MAX_RADIUS,
            max_elements: 4_000_000,
        }
    }
}

pub fn word_ball(group: &GeneratedGroup, radius: usize) -> Result<WordBall, GroupError> {
    word_ball_with(group, radius, BallLimits::default())
}

/// Breadth-first enumeration by reduced words. Only elements first reached at
/// the previous length are extended, which is enough because every element of
/// length `n` has a geodesic word whose prefix has length `n - 1`.
pub fn word_ball_with(
    group: &GeneratedGroup,
    radius: usize,
    limits: BallLimits,
) -> Result<WordBall, GroupError> {
    if radius > limits.max_radius {
        return Err(GroupError::RadiusCap {
            radius,
            cap: limits.max_radius,
        });
    }
    let letters: Vec<(Letter, ProductElement)> = group
        .letters()
        .map(|l| (l, group.letter_element(l)))
        .collect();
    let identity = ProductElement::identity(group.kind());
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    seen.insert(identity.canonical_key(), 0);
    let mut entries = vec![BallEntry {
        word: Vec::new(),
        element: identity,
    }];
    let mut frontier = 0..1;
    for _ in 0..radius {
        let start = entries.len();
        for idx in frontier.clone() {
            let prefix = entries[idx].word.clone();
            let prefix_element = entries[idx].element;
            for (letter, g) in &letters {
                if prefix.last().is_some_and(|last| last.cancels(letter)) {
                    continue;
                }
                let element = prefix_element.compose(g)?;
                let key = element.canonical_key();
                if seen.contains_key(&key) {
                    continue;
                }
                if entries.len() >= limits.max_elements {
                    return Err(GroupError::MemoryBudget(limits.max_elements));
                }
                let mut word = prefix.clone();
                word.push(*letter);
                seen.insert(key, entries.len());
                entries.push(BallEntry { word, element });
            }
        }
        frontier = start..entries.len();
    }
    Ok(WordBall { radius, entries })
}

/// Ball elements whose PSL(2,R) part is parabolic.
pub fn detect_semi_parabolic(
    group: &GeneratedGroup,
    radius: usize,
) -> Result<Vec<BallEntry>, GroupError> {
    Ok(word_ball(group, radius)?
        .entries
        .into_iter()
        .filter(|e| e.element.base.classify() == ElementClass::Parabolic)
        .collect())
}

/// Heuristic label for the projection `p₁(Γ)` to PSL(2,R).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProjectionClass {
    /// No nontrivial ball element came within `gap` of `±Id`.
    DiscreteCandidate { gap: f64 },
    /// All generators fix this boundary point.
    FixesBoundaryPoint(BoundaryPoint),
    /// All generators fix this interior point.
    RotationLike(HalfPlanePoint),
    DenseCandidate { gap: f64 },
}

impl fmt::Display for ProjectionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DiscreteCandidate { gap } => write!(f, "DiscreteCandidate(gap = {gap:.6})"),
            Self::FixesBoundaryPoint(xi) => match xi.to_real() {
                None => write!(f, "FixesBoundaryPoint(inf)"),
                Some(x) => write!(f, "FixesBoundaryPoint({x:.9})"),
            },
            Self::RotationLike(z) => write!(f, "RotationLike({:.9} + {:.9}i)", z.re(), z.im()),
            Self::DenseCandidate { gap } => write!(f, "DenseCandidate(gap = {gap:.6})"),
        }
    }
}

fn boundary_fixed_points(f: &MoebiusElement) -> Vec<BoundaryPoint> {
    match f.fixed_points() {
        FixedPoints::Boundary(p) => vec![p],
        FixedPoints::Pair {
            repelling,
            attracting,
        } => vec![repelling, attracting],
        FixedPoints::All | FixedPoints::Interior(_) => vec![],
    }
}

fn common_boundary_fixed_point(bases: &[MoebiusElement]) -> Option<BoundaryPoint> {
    let mut candidates: Vec<BoundaryPoint> = boundary_fixed_points(&bases[0])
        .into_iter()
        .filter(|xi| {
            bases
                .iter()
                .all(|g| g.apply_boundary(*xi).chordal(xi) <= COMMON_FIXED_POINT_TOL)
        })
        .collect();
    candidates.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
    candidates.first().copied()
}

fn common_interior_fixed_point(bases: &[MoebiusElement]) -> Option<HalfPlanePoint> {
    let FixedPoints::Interior(z) = bases[0].fixed_points() else {
        return None;
    };
    bases
        .iter()
        .all(|g| hyp_dist(g.apply(z), z) <= COMMON_FIXED_POINT_TOL)
        .then_some(z)
}

/// Decision procedure, in order: common boundary fixed point, common interior
/// fixed point, then the discreteness gap over `ball(radius)`.
pub fn classify_psl_projection(
    group: &GeneratedGroup,
    radius: usize,
    tol: f64,
) -> Result<ProjectionClass, GroupError> {
    let bases: Vec<MoebiusElement> = group.generators().iter().map(|(_, g)| g.base).collect();
    if let Some(xi) = common_boundary_fixed_point(&bases) {
        return Ok(ProjectionClass::FixesBoundaryPoint(xi));
    }
    if let Some(z) = common_interior_fixed_point(&bases) {
        return Ok(ProjectionClass::RotationLike(z));
    }
    let gap = discreteness_gap(&word_ball(group, radius)?);
    Ok(if gap > tol {
        ProjectionClass::DiscreteCandidate { gap }
    } else {
        ProjectionClass::DenseCandidate { gap }
    })
}

/// Smallest Frobenius distance from a nontrivial ball element's PSL part to `±Id`.
pub fn discreteness_gap(ball: &WordBall) -> f64 {
    ball.nontrivial()
        .map(|e| e.element.base.distance_to_identity())
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modular() -> GeneratedGroup {
        GeneratedGroup::from_moebius([
            ("T", MoebiusElement::unipotent(1.0)),
            ("S", MoebiusElement::new(0.0, -1.0, 1.0, 0.0).unwrap()),
        ])
        .unwrap()
    }

    #[test]
    fn radius_zero_is_identity() {
        let ball = word_ball(&modular(), 0).unwrap();
        assert_eq!(ball.len(), 1);
        assert!(ball.entries[0].element.is_identity(0.0));
    }

    #[test]
    fn free_pair_ball_count() {
        let g = GeneratedGroup::from_moebius([
            ("u", MoebiusElement::unipotent(1.0)),
            ("d", MoebiusElement::diagonal(2.0).unwrap()),
        ])
        .unwrap();
        // 1 + 4 + 4·3 reduced words, checked against naive enumeration of all reduced words
        let ball = word_ball(&g, 2).unwrap();
        assert_eq!(ball.len(), 17);
        let letters: Vec<Letter> = g.letters().collect();
        let mut naive = vec![vec![]];
        for a in &letters {
            naive.push(vec![*a]);
            for b in &letters {
                if !a.cancels(b) {
                    naive.push(vec![*a, *b]);
                }
            }
        }
        let mut keys: Vec<_> = naive.iter().map(|w| g.evaluate(w).unwrap().canonical_key()).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 17);
    }

    #[test]
    fn modular_ball_collapses() {
        let ball = word_ball(&modular(), 2).unwrap();
        assert!(ball.len() < 17);
        // S² = Id in PSL, so S and S⁻¹ collapse already at length one
        assert_eq!(word_ball(&modular(), 1).unwrap().len(), 4);
    }

    #[test]
    fn radius_cap_enforced() {
        assert!(matches!(
            word_ball(&modular(), 7),
            Err(GroupError::RadiusCap { radius: 7, cap: 6 })
        ));
        let tight = BallLimits {
            max_radius: 6,
            max_elements: 10,
        };
        assert!(matches!(
            word_ball_with(&modular(), 4, tight),
            Err(GroupError::MemoryBudget(10))
        ));
    }

    #[test]
    fn modular_has_semi_parabolics() {
        let found = detect_semi_parabolic(&modular(), 1).unwrap();
        assert!(found
            .iter()
            .any(|e| e.element.base.approx_eq(&MoebiusElement::unipotent(1.0), 1e-12)));
    }

    #[test]
    fn classifier_examples() {
        match classify_psl_projection(&modular(), 6, DEFAULT_GAP_TOL).unwrap() {
            ProjectionClass::DiscreteCandidate { gap } => assert!(gap >= 1.0 - 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        let rot = GeneratedGroup::from_moebius([
            ("r1", MoebiusElement::rotation(1.0)),
            ("r2", MoebiusElement::rotation(2f64.sqrt())),
        ])
        .unwrap();
        match classify_psl_projection(&rot, 3, DEFAULT_GAP_TOL).unwrap() {
            ProjectionClass::RotationLike(z) => assert!(hyp_dist(z, HalfPlanePoint::I) < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        let lambda = (3.0 + 5f64.sqrt()) / 2.0;
        let affine = GeneratedGroup::from_moebius([
            ("t1", MoebiusElement::unipotent(-0.723607)),
            ("t2", MoebiusElement::unipotent(-0.447214)),
            ("h", MoebiusElement::diagonal(lambda.sqrt()).unwrap()),
        ])
        .unwrap();
        assert_eq!(
            classify_psl_projection(&affine, 3, DEFAULT_GAP_TOL).unwrap(),
            ProjectionClass::FixesBoundaryPoint(BoundaryPoint::INFINITY)
        );
    }

    #[test]
    fn product_dual_action() {
        let (a, b) = (-0.723607, -0.618034);
        let t1 = ProductElement::new(
            MoebiusElement::unipotent(a),
            TransverseElement::affine(1.0, b).unwrap(),
        );
        let (xi, y) = t1
            .apply_dual(BoundaryPoint::from_real(0.3), &TransversePoint::Real(2.0))
            .unwrap();
        assert!((xi.to_real().unwrap() - (0.3 + a)).abs() < 1e-12);
        assert_eq!(y, TransversePoint::Real(2.0 + b));
        let id = ProductElement::identity(TransverseKind::RealAffine);
        let (xi, y) = id
            .apply_dual(BoundaryPoint::from_real(0.3), &TransversePoint::Real(2.0))
            .unwrap();
        assert!((xi.to_real().unwrap() - 0.3).abs() < 1e-15);
        assert_eq!(y, TransversePoint::Real(2.0));
        assert!(matches!(
            t1.apply_dual(BoundaryPoint::ZERO, &TransversePoint::Trivial),
            Err(GroupError::KindMismatch(..))
        ));
    }

    #[test]
    fn affine_composition_order() {
        let f = TransverseElement::affine(2.0, 1.0).unwrap();
        let g = TransverseElement::affine(3.0, 5.0).unwrap();
        let fg = f.compose(&g).unwrap();
        let y = TransversePoint::Real(0.5);
        let direct = f.apply(&g.apply(&y).unwrap()).unwrap();
        assert_eq!(fg.apply(&y).unwrap(), direct);
        assert!(f.compose(&f.inverse()).unwrap().distance_to_identity() < 1e-15);
    }

    #[test]
    fn quaternion_sign_canonical() {
        let a = TransverseElement::rotation(-0.5, 0.5, 0.5, 0.5);
        let b = TransverseElement::rotation(0.5, -0.5, -0.5, -0.5);
        assert_eq!(a.max_diff(&b), 0.0);
        let mut key_a = vec![];
        let mut key_b = vec![];
        a.push_key(&mut key_a);
        b.push_key(&mut key_b);
        assert_eq!(key_a, key_b);
    }

    #[test]
    fn group_validation() {
        assert!(matches!(GeneratedGroup::new(vec![]), Err(GroupError::NoGenerators)));
        assert!(matches!(
            GeneratedGroup::from_moebius([("e", MoebiusElement::IDENTITY)]),
            Err(GroupError::IdentityGenerator(_))
        ));
        let mixed = GeneratedGroup::new(vec![
            (
                "a".into(),
                ProductElement::new(MoebiusElement::unipotent(1.0), TransverseElement::Trivial),
            ),
            (
                "b".into(),
                ProductElement::new(
                    MoebiusElement::unipotent(1.0),
                    TransverseElement::affine(1.0, 1.0).unwrap(),
                ),
            ),
        ]);
        assert!(matches!(mixed, Err(GroupError::KindMismatch(..))));
    }
}
