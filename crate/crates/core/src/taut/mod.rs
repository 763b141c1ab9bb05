//! The graded free commutative algebra on tautological generators.

pub mod boundary;
pub mod expr;
pub mod generator;
pub mod render;
pub mod spec;

pub use boundary::{delta_atoms, enumerate_boundary, expand_concrete, fold_delta, psi_total, BoundaryDivisor};
pub use expr::{Monomial, TautExpr};
pub use generator::Generator;
pub use render::{
    parse_json, render, render_json, render_latex, render_text, to_json, Format, JsonExpr, JsonGen, JsonTerm,
};
pub use spec::{Mode, ModuliSpec};
