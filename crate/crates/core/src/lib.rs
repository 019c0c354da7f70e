//! Coupled coincidence points of Banach-type g-couplings on metric spaces.
//!
//! Given subsets `A`, `B` of a metric space, a coupled map `F: X × X → X`
//! and a self-map `g` with `g(A) ⊆ A`, `g(B) ⊆ B`, the [`solver`] runs the
//! iteration `g(x_{n+1}) = F(x_n, y_n)`, `g(y_{n+1}) = F(y_n, x_n)` to a pair
//! `(a, b)` with `F(a, b) = g(a)` and `F(b, a) = g(b)`, and checks the
//! geometric error bounds along the way. [`mappings`] holds sampled checkers
//! for the hypotheses, [`oracle`] exact enumeration on finite spaces, and
//! [`problems`] built-in and file-based problem instances.

pub mod cli;
pub mod mappings;
pub mod metric;
pub mod oracle;
pub mod point;
pub mod problems;
pub mod sampling;
pub mod solver;

pub use mappings::{CheckError, CheckReport, CoupledMap, SelfMap, Verdict, Witness};
pub use metric::{MetricSpace, SubsetPair, Which};
pub use sampling::Sampling;
pub use solver::{ProblemInstance, SolveResult, SolverConfig};
