//! Observability of linear vector fields on the 3-dimensional Heisenberg group.
//!
//! A linear pair is a linear vector field, given by a derivation `D` of the
//! Lie algebra, together with the projection onto `H/K` where `K` is the
//! kernel of a homomorphism onto one of the closed simply connected
//! subgroups `H1`–`H9`. The crate
//!
//! * evaluates the flow in closed form ([`flow`]) and by RK4,
//! * classifies fixed points and builds homomorphisms and kernels
//!   ([`observability::fixed_points`], [`catalog`]),
//! * decides observability by a rank computation and, separately, by the
//!   published sufficient conditions, reporting every disagreement
//!   ([`observability`]).
//!
//! ```
//! use heisobs::catalog::{build_homomorphism, SubgroupId};
//! use heisobs::flow::Derivation;
//! use heisobs::observability::{decide_oracle, Status};
//!
//! let deriv = Derivation::new(1.0, 0.0, 0.0, 1.0, 1.0, 0.0);
//! let h = build_homomorphism(SubgroupId::H1, &[1.0, 0.0, 0.0, 1.0]).unwrap();
//! assert_eq!(decide_oracle(&deriv, &h).status, Status::Observable);
//! ```

pub mod catalog;
pub mod cli;
pub mod flow;
pub mod group;
pub mod linalg;
pub mod observability;
pub mod oracle;
pub mod sampling;

pub use catalog::{build_homomorphism, Homomorphism, SubgroupId};
pub use flow::Derivation;
pub use group::GroupElement;
pub use linalg::Subspace;
