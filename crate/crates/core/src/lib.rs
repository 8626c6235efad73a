//! Graph products, unique factorization of connected graphs, and the
//! semiring of power series over `[Y] * <X>` that graph families embed in.
//!
//! The pipeline for a product `op`:
//!
//! 1. [`products`] builds products of graphs;
//! 2. [`factor::PrimeRegistry`] lists the primes of `op` as monoid letters
//!    and factors connected graphs into [`monomial::Monomial`]s;
//! 3. [`engine::encode`] turns a graph family into a [`series::Series`],
//!    where products become Cauchy products;
//! 4. roots and cancellation are solved on series and decoded back.

pub mod canon;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod factor;
pub mod family;
pub mod graph;
pub mod grf;
pub mod laws;
pub mod monomial;
pub mod products;
pub mod series;

pub use canon::{canonical_form, is_isomorphic, CanonicalKey};
pub use engine::{decode, encode, family_for, graph_cancel, graph_nth_root};
pub use error::{Error, Result};
pub use factor::{factor_connected, PrimeRegistry, DEFAULT_REGISTRY_BOUND};
pub use family::GraphFamily;
pub use graph::Graph;
pub use monomial::{Kind, Letter, Monomial, RegistryId};
pub use products::Product;
pub use series::{Cardinal, IntSeries, NatSeries, Series, Side};
