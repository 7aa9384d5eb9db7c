//! Numeric tolerances for the floating-point layer.

/// Single generator applied to order-one data.
pub const SINGLE_OP: f64 = 1e-12;

/// Coordinates a generator must leave untouched.
pub const UNTOUCHED: f64 = 1e-13;

/// Reconstructing a 2×2 or 4×4 result as an element of V₂ or Γ(V₂), relative to its scale.
pub const MEMBERSHIP: f64 = 1e-12;

/// Isometry drift of a word of up to 32 generators.
pub const WORD_DRIFT: f64 = 1e-9;

/// Central-difference step for Lie algebra generators.
pub const DERIVATIVE_STEP: f64 = 1e-6;

/// Singular values below this fraction of the largest count as zero.
pub const RANK_RELATIVE: f64 = 1e-8;

/// Commutators of generators must lie in their span to this residual.
pub const CLOSURE: f64 = 1e-6;

/// Largest boost rapidity accepted by the command-line front end.
pub const MAX_RAPIDITY: f64 = 50.0;
