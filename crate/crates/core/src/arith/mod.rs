//! Exact integer and rational arithmetic.

pub mod factor;
pub mod poly;
pub mod primes;
pub mod rational;
pub mod residue;
pub mod valuation;

pub use factor::{factorize, FactorBudget, Factorization, PrimePower};
pub use poly::Poly;
pub use primes::{is_prime, is_prime_u64};
pub use rational::{is_square, Rational};
pub use residue::{kronecker_symbol, mod_inverse, sqrt_mod_prime};
pub use valuation::{val_p, Valuation};
