pub mod character;
pub mod error;
pub mod kostant;
pub mod lattice;
pub mod linalg;
pub mod pairing;
pub mod rep;
pub mod verify;
pub mod weyl;
pub mod zoo;

pub use character::CharElement;
pub use error::{Error, Result};
pub use kostant::{GradedHomology, PositiveSystem};
pub use lattice::{RootSystem, Series, Weight};
pub use pairing::{PairContext, PairingKind, PairingValue};
pub use verify::{RunConfig, RunReport, Suite, VerificationReport};
pub use weyl::{WeylElement, WeylSubgroup};
pub use zoo::{Catalog, HomologySource, VirtualModule};
