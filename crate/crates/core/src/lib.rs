//! Exact computation of first integrals of planar polynomial vector fields.
//!
//! Given `ẋ = A(x, y)`, `ẏ = B(x, y)` with rational coefficients and a degree
//! bound `N`, the engine searches for a rational, k-Darbouxian, Liouvillian
//! or Riccati first integral of degree at most `N`, returning its canonical
//! defining equation, a certificate that none exists, or "unknown" when the
//! chosen base point is unlucky.
//!
//! The pipeline is: [`flow`] (series solution of the prolonged flow about a
//! base point) → [`extactic`] (minimal kernel element of the specialized
//! extactic system) → [`builders`] (turn the kernel element into an
//! equation) → [`driver`] (point selection and orchestration).

pub mod algebra;
pub mod builders;
pub mod driver;
pub mod extactic;
pub mod factor;
pub mod flow;

pub use algebra::{BiPoly, Rat, RatFunc, VectorField};
