//! Numerical roots: spectral radius, outside count, Mahler measure,
//! classification, and the behaviour of Salem-Boyd roots as `n` grows.

mod aberth;
mod argwalk;
mod classify;
mod profile;

pub use aberth::{find_roots, DEFAULT_TOL, MAX_ITER};
pub use argwalk::{
    arg_walk, circular_sd, convergence_probe, outside_roots, refine_offset, track_root, ArgPoint,
    ArgWalk, ProbeRow, Tracked,
};
pub use classify::{classify, Classification, Kind};
pub use profile::{core_roots, root_profile, CoreRoots, RootEntry, RootProfile, CIRCLE_BAND};
