//! High-precision reals and the dense solver used by the interior point code.

pub mod linalg;
mod real;

pub use linalg::{dot, inf_norm, solve, DenseMatrix};
pub use real::{ceil_log2, ceil_rational, decimal_digits, Real};

/// Default mantissa length for an instance with parameter `r` evaluated at
/// `t`: `max(256, ceil((r + 4) log2 t) + 128)`.
pub fn default_precision_bits(r: usize, log2_t: f64) -> usize {
    let need = ((r as f64 + 4.0) * log2_t).ceil() as usize + 128;
    need.max(256)
}
