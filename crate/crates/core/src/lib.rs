//! Exact computer algebra for restricted Lie algebras over fields of prime
//! characteristic and for their restricted enveloping algebras.
//!
//! The scalar tower is `F_p` and rational function fields `F_p(t_1, ..., t_m)`
//! with fully normalized fraction arithmetic, so every comparison in the
//! library is exact. On top of that sit:
//!
//! * [`liealg`] — restricted Lie algebras given by structure constants and a
//!   p-map on basis elements, with axiom validation, restricted closures,
//!   p-nilpotency certificates, tori, the p-radical, and quotients;
//! * [`envalg`] — the restricted enveloping algebra u(L) with its monomial
//!   basis, straightening multiplication, Hopf structure, inverses, and
//!   free-module decompositions over restricted subalgebras;
//! * [`radical`] — nilpotent-ideal certificates, Jacobson radicals for the
//!   supported algebra classes, idempotent lifting, and Hopf integrals;
//! * [`verify`] — end-to-end verification scenarios with machine-readable
//!   reports, also exposed through the `resenv` command-line binary.

pub mod envalg;
pub mod liealg;
pub mod linalg;
pub mod radical;
pub mod scalars;
pub mod verify;
