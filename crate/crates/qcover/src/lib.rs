//! Exact computations with quantum covering groups at roots of unity.

pub mod scalars;
pub mod qpicalc;
pub mod datum;
pub mod frobenius;
pub mod halfalg;
pub mod modifiedu;
pub mod smallu;
pub mod criteria;
