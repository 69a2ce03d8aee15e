//! Shifted-Chebyshev interpolations of Γ, 1/Γ, lnΓ, ψ and the polygamma
//! functions on `z ∈ [1, ∞)`, together with the Chebyshev series algebra and
//! the Stirling-series machinery used to generate the coefficient tables.

pub mod chebcore;
pub mod error;
pub mod gammafam;
pub mod mp;
pub mod reference;
pub mod scan;
pub mod stirling;
pub mod tablefile;

pub use chebcore::{ArgMap, ChebSeries, PrecisionContext};
pub use error::{Error, Result};
pub use gammafam::{FunctionKind, FunctionTable, HarmonicResult};
pub use mp::Real;
