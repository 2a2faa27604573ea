//! Weighted constraint satisfaction over min-plus costs, specialised to the
//! maximum-density still-life problem.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`cost`] and [`costs`]: the cost algebra (saturating costs with an
//!   absorbing top element, extensional tables, sum / eliminate / instantiate /
//!   cluster / super-bucket / mini-bucket operators and generic bucket
//!   elimination with solution counting).
//! * [`life`] and [`scan`]: Game-of-Life semantics, row encodings and a
//!   column-wise enumerator of locally stable row triples.
//! * [`be`], [`ssl`], [`mb`] and [`hyb`]: the still-life solvers (plain bucket
//!   elimination, the mirror-symmetric upper bound, mini-bucket look-ahead
//!   tables and the hybrid search / elimination algorithm).
//! * [`generic`]: branch and bound with on-the-fly elimination of low-degree
//!   variables for arbitrary instances, plus the Max-SAT encoding.
//! * [`oracle`]: slow exhaustive references used by the test suites.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod be;
pub mod cost;
pub mod costs;
pub mod error;
pub mod generic;
pub mod hyb;
pub mod life;
pub mod mb;
pub mod oracle;
pub mod scan;
pub mod ssl;

pub use cost::Cost;
pub use error::{Error, Result};
pub use life::Pattern;

/// Default memory budget for the dense still-life tables (2 GiB).
pub const DEFAULT_MEMORY_BUDGET: u64 = 2 << 30;
