//! Exact computations in rational and integral group rings of finite groups.
//!
//! The pipeline runs from a concrete finite group (Cayley table, permutation
//! generators or a named presentation from [`catalog`]) to
//!
//! * a complete irredundant set of strong Shoda pairs for normally monomial
//!   groups ([`shoda`]),
//! * the primitive central idempotents of `Q[G]` and the Wedderburn
//!   components they cut out ([`group_ring`], [`wedderburn`]),
//! * generalized Bass units, their minimal exponents and the virtual basis of
//!   the central units of `Z[G]` ([`bass`]),
//! * the explicit upper bound on the index of that virtual basis ([`bound`]).
//!
//! Arithmetic is exact throughout. Group-ring and cyclotomic arithmetic is
//! generic over the coefficient type (see [`scalar::Scalar`]); the concrete
//! aliases below fix the coefficients used by the pipeline.

pub mod bass;
pub mod bound;
pub mod catalog;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod group_ring;
pub mod known;
pub mod numtheory;
pub mod scalar;
pub mod shoda;
pub mod wedderburn;

pub use error::{Error, Result};
pub use group::{FiniteGroup, QuotientMap, Subgroup};
pub use shoda::{ShodaPairRecord, SspFamily};

/// Arbitrary precision integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary precision rational.
pub type Rational = num_rational::BigRational;

/// Element of the rational group algebra `Q[G]`.
pub type QGElement = group_ring::GroupRingElement<Rational>;
/// Element of the integral group ring `Z[G]`.
pub type ZGElement = group_ring::GroupRingElement<Integer>;
/// Element of `Q(zeta_n)` in the power basis.
pub type CyclotomicNumber = cyclotomic::Cyclotomic<Rational>;
/// Element of `Q[C_n]`, the rational group algebra of a cyclic group.
pub type CyclicQ = cyclotomic::CyclicRing<Rational>;
