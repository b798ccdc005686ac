//! Generalized quaternion algebras over `Z_p` and the classification of
//! Fibonacci quaternions and generalized Fibonacci-Lucas quaternions as
//! units or zero divisors.
//!
//! The crate is layered bottom-up:
//!
//! - [`modarith`]: residues, modular inverse, Legendre symbol, sums of two
//!   squares.
//! - [`fibseq`]: Fibonacci and Lucas numbers mod `m`, Pisano periods, entry
//!   points and the Sun congruence.
//! - [`quatring`]: the algebra `H_{Z_m}(α, β)`, norms, classification, the
//!   split 2×2 matrix representation and the zero-divisor census.
//! - [`fibquat`] and [`genfibquat`]: closed-form zero-divisor conditions for
//!   the two quaternion families.
//! - [`oracle`]: brute-force recomputation that every closed form is checked
//!   against.
//!
//! With the default `parallel` feature the enumeration-heavy paths run on
//! rayon; without it they run sequentially and produce identical results.

pub mod error;
pub mod fibquat;
pub mod fibseq;
pub mod genfibquat;
pub mod modarith;
pub mod oracle;
pub mod par;
pub mod quatring;

pub use error::{Error, Result};
pub use fibquat::{FibQuatReport, FibRule, IndexClasses, PeriodEnumeration};
pub use fibseq::{PeriodInfo, PeriodRelation};
pub use genfibquat::{GflCondition, GflParams, GflReport, GflRule, IndexSet};
pub use modarith::Residue;
pub use oracle::{Discrepancy, KnownErratum, VerificationReport};
pub use quatring::{CensusMode, Classification, Mat2, QuatAlgebra, Quaternion, SplitRep, Verdict};
