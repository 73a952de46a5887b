//! Exact univariate integer polynomial algebra.

mod cyclotomic;
mod gcd;
mod poly;
mod reciprocal;
mod sturm;

pub use cyclotomic::{cyclotomic_poly, is_cyclotomic, totient};
pub use gcd::{gcd, squarefree_decomposition, squarefree_part};
pub(crate) use gcd::isqrt_ceil;
pub use poly::{IntPoly, PolyDisplay, RationalInterval};
pub use reciprocal::{reciprocal_type, trace_transform, untransform, ReciprocalType};
pub use sturm::{count_real_roots, descartes_bound, sturm_count, RootRange, SturmChain};
