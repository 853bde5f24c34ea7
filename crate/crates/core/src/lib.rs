//! Exact computations in the arithmetic invariant theory of the split odd
//! special orthogonal group `SO(2n+1)` acting on its standard
//! representation `W`, on skew self-adjoint operators (`∧²W`) and on
//! self-adjoint operators (`Sym²W`).

pub mod error;
pub mod exact;

pub mod census;
pub mod descent;
pub mod etale;
pub mod lattice;
pub mod orbit;
pub mod quad;

pub use error::{Error, Result};
pub use etale::{EtaleAlgebra, EtaleElement, SquareResult};
pub use exact::{ExactInt, ExactRat, FpPoly, Matrix, Poly};
pub use orbit::{OrbitRepresentative, RepTag};
pub use quad::{Place, QuadSpace};

/// Seed for randomized searches, from `ORBITFORGE_SEED` when set.
pub fn seed() -> u64 {
    std::env::var("ORBITFORGE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x0b17_f0e5)
}
