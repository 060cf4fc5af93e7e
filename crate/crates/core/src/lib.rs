//! Horocycle, geodesic and Borel actions on quotients `Γ\(PSL(2,R) × G)`.
//!
//! * [`moebius`]: PSL(2,R) elements and their actions on `H`, `∂H` and `E`.
//! * [`groups`]: transverse factors, product elements and word balls.
//! * [`models`]: T³_A, the octagon and modular groups, product models.
//! * [`flows`]: orbit integration, divergence probes, boundary limits.
//! * [`diagnostics`]: coverage and invariance certificates.
//! * [`checks`]: the acceptance criteria.

pub mod checks;
pub mod diagnostics;
pub mod flows;
pub mod groups;
pub mod models;
pub mod moebius;

pub use diagnostics::{Binning, DensityReport};
pub use flows::{integrate_orbit, FlowError, FlowKind, OrbitSegment};
pub use groups::{GeneratedGroup, ProductElement, TransverseElement, TransverseKind, TransversePoint};
pub use models::{Lift, LiftKind, Model, ModelDescriptor, ModelError, ModelId, QuotientPoint};
pub use moebius::{BoundaryPoint, EPoint, HalfPlanePoint, MoebiusElement, MoebiusError, TangentFrame};
