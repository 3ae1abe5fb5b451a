//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.

mod element;
mod galois;
pub mod phi;
mod ratpoly;

pub use element::CyclotomicElement;
pub use galois::GaloisMap;
#[allow(unused_imports)]
pub(crate) use galois::{mul_mod, pow_mod};
pub use phi::{cyclotomic_polynomial, euler_phi, CyclotomicTable};
