//! Alexander polynomials of plumbed fibered links, Salem-Boyd sequences and
//! the root statistics (spectral radius, outside count, Mahler measure) of
//! both.

pub mod bridges;
pub mod error;
pub mod io;
pub mod par;
pub mod plumbing;
pub mod polyring;
pub mod rootscope;
pub mod salemboyd;
pub mod sign;

pub use error::{Error, Result};
pub use par::Execution;
pub use plumbing::{alexander, AlexanderResult, PlumbingTree, SeifertMatrix};
pub use polyring::IntPoly;
pub use rootscope::{classify, find_roots, root_profile, RootProfile};
pub use salemboyd::SalemBoydFamily;
pub use sign::Sign;
