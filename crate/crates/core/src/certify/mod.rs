//! Negative evidence: forced coefficient signs, empty walls, propagation,
//! and the pipeline that combines them with witness search.

pub mod decide;
pub mod forced;
pub mod monomials;
pub mod propagate;
pub mod verdict;
pub mod walls;

pub use decide::{DecideConfig, Decider, PatternDecision};
pub use forced::{forced_sign, soundness_violations, verify_certificate, ForcedSignCertificate, Strictness};
pub use monomials::{coefficient_monomials, SignedMonomial, TiedOrder};
pub use propagate::{boundary_reduction, propagate, BoundaryTrace, PropagationTrace, WallCache};
pub use verdict::{Evidence, Status, Verdict};
pub use walls::{factor_constraints, pair_infeasibility_check, wall_certificate, PairInfeasibility, WallCertificate};
