//! The Legendre and Neumann–Setzer families and their fibres.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::model::{SurfaceModel, Transform, Weierstrass, WeierstrassModel};
use crate::arith::rational::{big, int, serde_rational};
use crate::arith::{Poly, Rational};
use crate::error::{Error, Result};

/// A fibre with its integral model and the transform from `y^2 = x(x+1)(x+b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreModel {
    #[serde(with = "serde_rational")]
    pub parameter: Rational,
    pub model: WeierstrassModel,
    pub transform: Transform,
}

/// `y^2 = x(x+1)(x+b)` exactly as written.
pub fn legendre_fibre_raw(b: &Rational) -> Result<WeierstrassModel> {
    Weierstrass::new([int(0), int(1) + b, int(0), b.clone(), int(0)])
        .map_err(|_| Error::SingularFibre(b.clone()))
}

/// For `b = m/n` the model `Y^2 = X(X+n^2)(X+mn)` via `x = X/n^2`, `y = Y/n^3`.
pub fn fibre_model_legendre(b: &Rational) -> Result<FibreModel> {
    if b.is_zero() || b.is_one() {
        return Err(Error::SingularFibre(b.clone()));
    }
    let (m, n) = (b.numer().clone(), b.denom().clone());
    let nn = &n * &n;
    let model = Weierstrass::new([
        int(0),
        big(&nn + &m * &n),
        int(0),
        big(&nn * &n * &m),
        int(0),
    ])?;
    let transform = Transform::scaling(Rational::new(BigInt::one(), n))?;
    Ok(FibreModel { parameter: b.clone(), model, transform })
}

/// `y^2 = x^3 + b x^2 - 16 x`.
pub fn fibre_model_neumann_setzer(b: &BigInt) -> WeierstrassModel {
    Weierstrass::new([int(0), big(b.clone()), int(0), int(-16), int(0)])
        .expect("discriminant 4096 (b^2 + 64) is nonzero")
}

/// The Mersenne fibre `y^2 = x(x+1)(x+2^q)`.
pub fn mersenne_fibre(q: u32) -> WeierstrassModel {
    fibre_model_legendre(&big(BigInt::one() << q)).expect("2^q is not 0 or 1").model
}

/// `y^2 = x(x+1)(x+t)` over Q[t].
pub fn legendre_surface() -> SurfaceModel {
    let t = Poly::var();
    Weierstrass::new([Poly::zero(), &t + &Poly::one(), Poly::zero(), t, Poly::zero()])
        .expect("generic fibre is smooth")
}

/// `y^2 = x^3 + t x^2 - 16 x` over Q[t].
pub fn neumann_setzer_surface() -> SurfaceModel {
    Weierstrass::new([
        Poly::zero(),
        Poly::var(),
        Poly::zero(),
        Poly::constant(int(-16)),
        Poly::zero(),
    ])
    .expect("generic fibre is smooth")
}
