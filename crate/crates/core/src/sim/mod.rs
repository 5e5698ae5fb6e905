//! The simulating rewrite system, the translation into it, and replays of
//! simulated derivations.

pub mod replay;
pub mod system;
pub mod translate;

pub use replay::{simulate_size, simulate_start, simulate_step, SimDerivation, SimStep};
pub use system::{generate_rsim, generate_with, sim_constants, SimConstants, SimSymbols, SimSystem};
pub use translate::{approx_equiv, Translator};
