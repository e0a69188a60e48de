//! The half algebra f, its shuffle realisation, and its specializations.

pub mod dims;
pub mod free;
pub mod generic;
pub mod ring;
pub mod shuffle;
pub mod special;
pub mod words;

pub use generic::{generic_dim, reduces_to_zero, weight_basis, GenericError, GenericF, WeightBasis};
pub use dims::{small_generators, specialized_span_dims, specialized_spans, v_lambda_dims, DimError, DimTable};
pub use special::{GradedElement, SpecError, SpecF, SpecSpace};
pub use free::{higher_serre_element, serre_element, FreeElement, SerreError};
pub use words::{DividedMonomial, Weight};

#[cfg(test)]
mod tests;
