//! Discrete Fourier transforms over finite fields.
//!
//! * [`cyclic`]: the root-of-unity DFT over `F_q` and the Chinese-remainder
//!   transform on `F_p[x]/(x^N - 1)`, which also covers `p | N`.
//! * [`symmetric`]: permutations, partitions, Specht representations and the
//!   semisimple Fourier transform of `S_n`.
//! * [`sga`]: the modular group algebra `F_p[S_n]`, its central primitive
//!   idempotents and the block change-of-basis matrix.
//! * [`unitary`]: unitary transforms of `S_n` over floating point and the exact
//!   tower field `Q(sqrt 2, sqrt 3)`.
//! * [`fixtures`]: stored change-of-basis matrices for `F_2[S_3]` and `F_3[S_4]`.

pub mod cyclic;
pub mod error;
pub mod fields;
pub mod fixtures;
pub mod linalg;
pub mod numtheory;
pub mod poly;
pub mod sga;
pub mod symmetric;
pub mod unitary;

pub use error::{Error, Result};
