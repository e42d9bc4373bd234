//! GIT data: presentations, Weyl actions, effective cones and degree lifts.

mod cone;
mod lifts;
pub mod linalg;
mod presentation;
mod schema;
mod validate;
mod weyl;

pub use cone::{enumerate_fiber, ConeProvenance, EffectiveCone};
pub use lifts::{enumerate_lifts, orbit_of, DegreeClass, DegreeLift};
pub use presentation::{GitPresentation, PresentationParts, SignConvention, Weight};
pub use schema::{GitInput, WeylInput, SCHEMA_VERSION};
pub use validate::{fano_index, validate, Check, CheckStatus, ValidationReport};
pub use weyl::{WeylAction, DEFAULT_CLOSURE_CAP};
