//! Exact computation of locally trivial first cohomology for subgroups of
//! Cartan normalizers in GL2(Z/p^n), together with the imaginary-quadratic
//! bookkeeping (splitting behavior, class numbers, minimal counterexample
//! degrees) that consumes it.
//!
//! The crate is organized as a stack:
//!
//! * [`modarith`] — canonical linear algebra over Z/p^n (Howell forms,
//!   solvers, elementary divisors of quotients);
//! * [`matgroup`] — finite subgroups of GL2(Z/p^n): Cartan subgroups and
//!   their normalizers, closures, reductions, subgroup enumeration;
//! * [`cohomology`] — Z^1, B^1, H^1 and the locally trivial subgroup H^1_*,
//!   plus the explicit witness cocycles in the inert and ramified cases;
//! * [`verify`] — executable checks of the vanishing/non-vanishing lemmas
//!   and the closed-form solution identities, as machine-readable reports;
//! * [`cm`] — imaginary quadratic orders, class numbers, and the minimal
//!   degree d(p) at which the divisibility principle admits a CM
//!   counterexample.

pub mod cm;
pub mod cohomology;
pub mod matgroup;
pub mod modarith;
pub mod par;
pub mod verify;

pub use cm::{DegreeWitness, QuadOrder, SplitCase};
pub use cohomology::{Cocycle, GModule, H1Summary};
pub use matgroup::{CartanParams, Mat2, MatGroup};
pub use modarith::{Matrix, PrimePower, Residue, RowSpan, Vector2};
pub use verify::VerificationReport;
