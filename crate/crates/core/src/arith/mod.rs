//! Exact arithmetic in ℤ[ω] and ℚ(ω).

mod chi;
mod eisenstein;
mod field;
mod unit;
mod valuation;

pub use chi::ChiFraction;
pub use eisenstein::EisensteinInteger;
pub use field::FieldElement;
pub use unit::Unit;
pub use valuation::Valuation;
