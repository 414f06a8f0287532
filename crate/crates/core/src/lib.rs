//! Closed forms for sums of floors, ceilings, fractional parts and sawtooth
//! values of `(n + j b^k) / b^(k+1)`, expressed through the base-b digits of
//! `n`, together with brute-force oracles for each of them.
//!
//! ```
//! use floorsum::{identities, oracle, Natural};
//!
//! let (n, b, j) = (Natural::from(1024u32), Natural::from(3u32), Natural::from(1u32));
//! let closed = identities::floor_sum(&n, &b, &j).unwrap();
//! assert_eq!(closed, oracle::floor_sum_direct(&n, &b, &j).unwrap());
//! assert_eq!(closed, Natural::from(510u32));
//! ```

pub mod bigmath;
pub mod error;
pub mod family;
pub mod identities;
pub mod oracle;
pub mod radix;
pub mod verify;

pub use bigmath::{Integer, Natural, Rational};
pub use error::{Error, Result};
pub use family::{Argument, Family, Scope, SumSpec};
pub use radix::{ConjugateProfile, DigitExpansion, Partition};
