use thiserror::Error;

use crate::composition_algebra::Parent;
use crate::spin_action::Method;
use crate::tensor_algebra::PairId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra mismatch: {left:?} vs {right:?}")]
    AlgebraMismatch { left: Parent, right: Parent },

    #[error("pair mismatch: {left} vs {right}")]
    PairMismatch { left: PairId, right: PairId },

    #[error("element has zero norm and is not invertible")]
    NotInvertible,

    #[error("coefficient at basis slot {slot} lies outside the {algebra} subalgebra")]
    OutsideSubalgebra { algebra: String, slot: usize },

    #[error("coordinate vector has length {found}, expected {expected}")]
    CoordLength { expected: usize, found: usize },

    #[error("invalid plane ({p}, {q}) for dimension {n}")]
    InvalidPlane { p: usize, q: usize, n: usize },

    #[error("generator requires the {required:?} method but the plane uses {actual:?}")]
    MethodDispatch { required: Method, actual: Method },

    #[error("matrix is not in the image of V2 (residual {residual:e})")]
    NotInGammaImage { residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
