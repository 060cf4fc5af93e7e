//! Arithmetic and geometry of PSL(2,R).
//!
//! Elements are stored as unit-determinant real 2x2 matrices with a fixed
//! sign representative of the class `±M`, so equality and hashing of group
//! elements are meaningful. Three actions are provided: on the upper
//! half-plane by Möbius maps, on its boundary circle `R ∪ {∞}`, and linearly
//! on `E = (R² \ {0}) / ±`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// Determinant drift that triggers renormalization.
pub const DET_DRIFT: f64 = 1e-12;

/// Tolerance on `|trace| - 2` separating parabolic elements from the rest.
pub const PARABOLIC_TOL: f64 = 1e-9;

/// Below this magnitude the lower-left entry counts as zero.
pub const LOWER_LEFT_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoebiusError {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("determinant must be positive, got {0}")]
    Determinant(f64),
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("point is not in the upper half-plane (im = {0})")]
    NotInHalfPlane(f64),
    #[error("element in B (c = {0}): no unipotent steering to diagonal form")]
    ElementInB(f64),
    #[error("vector in E must be nonzero")]
    ZeroVector,
}

/// Conjugacy type of an element, read off from `|trace|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Fixed-point set of an element acting on the closed half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedPoints {
    /// The identity fixes everything.
    All,
    Interior(HalfPlanePoint),
    Boundary(BoundaryPoint),
    Pair {
        repelling: BoundaryPoint,
        attracting: BoundaryPoint,
    },
}

/// An element of PSL(2,R).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusElement {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Default for MoebiusElement {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl MoebiusElement {
    pub const IDENTITY: Self = Self {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds an element from any real matrix with positive determinant,
    /// rescaling it to determinant one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, MoebiusError> {
        if ![a, b, c, d].iter().all(|x| x.is_finite()) {
            return Err(MoebiusError::NonFinite);
        }
        let det = a * d - b * c;
        if !(det > 0.0) {
            return Err(MoebiusError::Determinant(det));
        }
        Ok(Self { a, b, c, d }.renormalized().canonical())
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// `|a + d|`, well defined on PSL classes.
    pub fn trace(&self) -> f64 {
        (self.a + self.d).abs()
    }

    /// `u(t) = (1, t; 0, 1)`, the horocycle subgroup U.
    pub fn unipotent(t: f64) -> Self {
        Self {
            a: 1.0,
            b: t,
            c: 0.0,
            d: 1.0,
        }
    }

    /// `(λ, 0; 0, 1/λ)`, the diagonal subgroup D. Acts on the half-plane as `z ↦ λ²z`.
    pub fn diagonal(lambda: f64) -> Result<Self, MoebiusError> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(MoebiusError::NonPositive {
                name: "lambda",
                value: lambda,
            });
        }
        Ok(Self {
            a: lambda,
            b: 0.0,
            c: 0.0,
            d: lambda.recip(),
        })
    }

    /// Time-`t` map of the geodesic flow, `diagonal(e^{t/2})`; moves `i` to `e^t i`
    /// so the base point travels at unit hyperbolic speed.
    pub fn geodesic(t: f64) -> Self {
        let lambda = (0.5 * t).exp();
        Self {
            a: lambda,
            b: 0.0,
            c: 0.0,
            d: lambda.recip(),
        }
    }

    /// The element of the Borel subgroup B acting as `z ↦ αz + β`.
    pub fn borel(alpha: f64, beta: f64) -> Result<Self, MoebiusError> {
        if !(alpha > 0.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(MoebiusError::NonPositive {
                name: "alpha",
                value: alpha,
            });
        }
        let s = alpha.sqrt();
        Ok(Self {
            a: s,
            b: beta / s,
            c: 0.0,
            d: s.recip(),
        })
    }

    /// `(cos θ, sin θ; -sin θ, cos θ)` in PSO(2,R). Fixes `i` and turns tangent
    /// vectors there by `2θ`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            a: c,
            b: s,
            c: -s,
            d: c,
        }
        .canonical()
    }

    /// Inverse of [`MoebiusElement::frame`]: the unique element carrying the
    /// upward unit vector at `i` to `frame`.
    pub fn from_frame(frame: TangentFrame) -> Self {
        let base = frame.base;
        let borel = Self::borel(base.im, base.re).expect("im > 0 by invariant");
        borel.compose(&Self::rotation(0.5 * (frame.direction - FRAC_PI_2)))
    }

    pub fn compose(&self, other: &Self) -> Self {
        let m = Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        };
        m.renormalized().canonical()
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
        .canonical()
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    fn renormalized(self) -> Self {
        let det = self.det();
        if (det - 1.0).abs() > DET_DRIFT && det > 0.0 {
            let s = det.sqrt().recip();
            Self {
                a: self.a * s,
                b: self.b * s,
                c: self.c * s,
                d: self.d * s,
            }
        } else {
            self
        }
    }

    fn canonical(self) -> Self {
        let flip = if self.c.abs() > LOWER_LEFT_EPS {
            self.c < 0.0
        } else {
            self.a < 0.0
        };
        if flip {
            Self {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            self
        }
    }

    /// Frobenius distance to the nearer of `Id` and `-Id`.
    pub fn distance_to_identity(&self) -> f64 {
        let plus = (self.a - 1.0).powi(2) + self.b.powi(2) + self.c.powi(2) + (self.d - 1.0).powi(2);
        let minus = (self.a + 1.0).powi(2) + self.b.powi(2) + self.c.powi(2) + (self.d + 1.0).powi(2);
        plus.min(minus).sqrt()
    }

    /// Largest entrywise difference between the two classes, minimized over signs.
    pub fn max_entry_diff(&self, other: &Self) -> f64 {
        let x = self.entries();
        let y = other.entries();
        let same = x.iter().zip(y.iter()).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        let flipped = x.iter().zip(y.iter()).map(|(p, q)| (p + q).abs()).fold(0.0, f64::max);
        same.min(flipped)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_entry_diff(other) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.distance_to_identity() <= tol
    }

    /// `(az + b) / (cz + d)`.
    pub fn apply(&self, z: HalfPlanePoint) -> HalfPlanePoint {
        let (x, y) = (z.re, z.im);
        let den_re = self.c * x + self.d;
        let den_im = self.c * y;
        let den2 = den_re * den_re + den_im * den_im;
        let num_re = self.a * x + self.b;
        let num_im = self.a * y;
        let re = (num_re * den_re + num_im * den_im) / den2;
        // det = 1 makes Im f(z) = Im z / |cz + d|^2, which stays positive.
        let im = y / den2;
        HalfPlanePoint { re, im }
    }

    pub fn apply_boundary(&self, xi: BoundaryPoint) -> BoundaryPoint {
        let (p, q) = xi.homogeneous();
        BoundaryPoint::from_homogeneous(self.a * p + self.b * q, self.c * p + self.d * q)
    }

    pub fn apply_e(&self, v: EPoint) -> EPoint {
        EPoint::canonical(self.a * v.p + self.b * v.q, self.c * v.p + self.d * v.q)
    }

    /// Base point `f(i)` and the image of the upward unit vector at `i`.
    pub fn frame(&self) -> TangentFrame {
        let base = self.apply(HalfPlanePoint::I);
        // f'(i) = (ci + d)^{-2}
        let arg = self.c.atan2(self.d);
        TangentFrame::new(base, FRAC_PI_2 - 2.0 * arg)
    }

    pub fn classify(&self) -> ElementClass {
        let tr = self.trace();
        if (tr - 2.0).abs() <= PARABOLIC_TOL {
            if self.is_identity(PARABOLIC_TOL) {
                ElementClass::Identity
            } else {
                ElementClass::Parabolic
            }
        } else if tr < 2.0 {
            ElementClass::Elliptic
        } else {
            ElementClass::Hyperbolic
        }
    }

    /// Roots of `cz² + (d − a)z − b`. For hyperbolic elements the attracting
    /// point is the one where the derivative has modulus below one.
    pub fn fixed_points(&self) -> FixedPoints {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let lower_zero = c.abs() <= LOWER_LEFT_EPS;
        match self.classify() {
            ElementClass::Identity => FixedPoints::All,
            ElementClass::Elliptic => {
                let tr = a + d;
                let im = (4.0 - tr * tr).sqrt() / (2.0 * c.abs());
                FixedPoints::Interior(HalfPlanePoint {
                    re: (a - d) / (2.0 * c),
                    im,
                })
            }
            ElementClass::Parabolic => {
                if lower_zero {
                    FixedPoints::Boundary(BoundaryPoint::INFINITY)
                } else {
                    FixedPoints::Boundary(BoundaryPoint::from_real((a - d) / (2.0 * c)))
                }
            }
            ElementClass::Hyperbolic => {
                if lower_zero {
                    let finite = BoundaryPoint::from_real(b / (d - a));
                    if a.abs() > d.abs() {
                        FixedPoints::Pair {
                            repelling: finite,
                            attracting: BoundaryPoint::INFINITY,
                        }
                    } else {
                        FixedPoints::Pair {
                            repelling: BoundaryPoint::INFINITY,
                            attracting: finite,
                        }
                    }
                } else {
                    let tr = a + d;
                    let root = (tr * tr - 4.0).sqrt();
                    let x1 = (a - d + root) / (2.0 * c);
                    let x2 = (a - d - root) / (2.0 * c);
                    let (attracting, repelling) = if (c * x1 + d).abs() > (c * x2 + d).abs() {
                        (x1, x2)
                    } else {
                        (x2, x1)
                    };
                    FixedPoints::Pair {
                        repelling: BoundaryPoint::from_real(repelling),
                        attracting: BoundaryPoint::from_real(attracting),
                    }
                }
            }
        }
    }

    /// Unipotent `u′, u″` with `u′ ∘ self ∘ u″ = (α, 0; c, 1/α)`.
    pub fn steer_to_diagonal(&self, alpha: f64) -> Result<(Self, Self), MoebiusError> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(MoebiusError::NonPositive {
                name: "alpha",
                value: alpha,
            });
        }
        if self.c.abs() <= LOWER_LEFT_EPS {
            return Err(MoebiusError::ElementInB(self.c));
        }
        let left = (alpha - self.a) / self.c;
        let right = -(self.b + self.d * left) / alpha;
        Ok((Self::unipotent(left), Self::unipotent(right)))
    }
}

impl Mul for MoebiusElement {
    type Output = MoebiusElement;

    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

impl fmt::Display for MoebiusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// A point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlanePoint {
    re: f64,
    im: f64,
}

impl HalfPlanePoint {
    pub const I: Self = Self { re: 0.0, im: 1.0 };

    pub fn new(re: f64, im: f64) -> Result<Self, MoebiusError> {
        if !re.is_finite() || !im.is_finite() {
            return Err(MoebiusError::NonFinite);
        }
        if !(im > 0.0) {
            return Err(MoebiusError::NotInHalfPlane(im));
        }
        Ok(Self { re, im })
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    /// Hyperbolic distance, `cosh d = 1 + |z − w|² / (2 Im z Im w)`.
    pub fn distance(&self, other: &Self) -> f64 {
        hyp_dist(*self, *other)
    }
}

/// Hyperbolic distance between two points of the half-plane.
///
/// Evaluated as `2 asinh(|z − w| / (2 √(Im z Im w)))`, which equals the
/// arccosh form but keeps full precision for nearby points.
pub fn hyp_dist(z: HalfPlanePoint, w: HalfPlanePoint) -> f64 {
    let dx = z.re - w.re;
    let dy = z.im - w.im;
    let chord = (dx * dx + dy * dy).sqrt();
    2.0 * (chord / (2.0 * (z.im * w.im).sqrt())).asinh()
}

/// A point of `∂H = R ∪ {∞}`, stored as an angle `θ ∈ (−π, π]` with
/// `x = tan(θ/2)` and `∞ ↔ π`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    theta: f64,
}

impl BoundaryPoint {
    pub const INFINITY: Self = Self { theta: PI };
    pub const ZERO: Self = Self { theta: 0.0 };

    pub fn from_real(x: f64) -> Self {
        if x.is_infinite() {
            return Self::INFINITY;
        }
        Self::from_angle(2.0 * x.atan())
    }

    pub fn from_angle(theta: f64) -> Self {
        let mut t = theta.rem_euclid(TAU);
        if t > PI {
            t -= TAU;
        }
        if t <= -PI {
            t += TAU;
        }
        Self { theta: t }
    }

    pub fn angle(&self) -> f64 {
        self.theta
    }

    pub fn is_infinity(&self) -> bool {
        self.theta == PI
    }

    /// The real coordinate, `None` at `∞`.
    pub fn to_real(&self) -> Option<f64> {
        if self.is_infinity() {
            None
        } else {
            Some((0.5 * self.theta).tan())
        }
    }

    /// Chordal metric `|2 sin((θ₁ − θ₂)/2)|`.
    pub fn chordal(&self, other: &Self) -> f64 {
        (2.0 * (0.5 * (self.theta - other.theta)).sin()).abs()
    }

    /// Unit homogeneous coordinates `(p, q)` with `x = p / q`.
    pub fn homogeneous(&self) -> (f64, f64) {
        if self.is_infinity() {
            (1.0, 0.0)
        } else {
            (0.5 * self.theta).sin_cos()
        }
    }

    pub fn from_homogeneous(p: f64, q: f64) -> Self {
        let (p, q) = if q < 0.0 || (q == 0.0 && p < 0.0) {
            (-p, -q)
        } else {
            (p, q)
        };
        if q == 0.0 {
            return Self::INFINITY;
        }
        Self::from_angle(2.0 * p.atan2(q))
    }
}

/// A vector of `E = (R² \ {0}) / ±`. Magnitude is meaningful.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EPoint {
    p: f64,
    q: f64,
}

impl EPoint {
    pub const E1: Self = Self { p: 1.0, q: 0.0 };

    pub fn new(p: f64, q: f64) -> Result<Self, MoebiusError> {
        if !p.is_finite() || !q.is_finite() {
            return Err(MoebiusError::NonFinite);
        }
        if p == 0.0 && q == 0.0 {
            return Err(MoebiusError::ZeroVector);
        }
        Ok(Self::canonical(p, q))
    }

    fn canonical(p: f64, q: f64) -> Self {
        if q < 0.0 || (q == 0.0 && p < 0.0) {
            Self { p: -p, q: -q }
        } else {
            Self { p, q }
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn norm(&self) -> f64 {
        self.p.hypot(self.q)
    }

    /// Euclidean distance between the classes, minimized over the sign.
    pub fn distance(&self, other: &Self) -> f64 {
        let same = (self.p - other.p).hypot(self.q - other.q);
        let flipped = (self.p + other.p).hypot(self.q + other.q);
        same.min(flipped)
    }
}

/// A unit tangent vector of the half-plane. `direction` is the Euclidean
/// angle of the vector, in `[0, 2π)`; "up" is `π/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentFrame {
    pub base: HalfPlanePoint,
    pub direction: f64,
}

impl TangentFrame {
    pub fn new(base: HalfPlanePoint, direction: f64) -> Self {
        let mut dir = direction.rem_euclid(TAU);
        if dir >= TAU {
            dir = 0.0;
        }
        Self {
            base,
            direction: dir,
        }
    }
}

/// Circular distance between two angles.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}
