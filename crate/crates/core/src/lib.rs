//! Spectral analysis of the random-transpositions and star-transpositions
//! card shuffles on the symmetric group.
//!
//! * [`partitions`]: Young diagrams, hooks, and dimensions `d_λ`.
//! * [`spectra`]: closed-form eigenvalues and multiplicities of both chains.
//! * [`exact_chain`]: brute-force transition matrices over `S_n` for small `n`.
//! * [`profile`]: Poisson limit profiles and log-space comparison bounds.
//! * [`cli`]: the `shuffle-profile` command-line front end.

pub mod cli;
pub mod error;
pub mod exact_chain;
pub mod format;
pub mod partitions;
pub mod profile;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::{BigDim, Corner, Partition};
pub use spectra::Chain;
