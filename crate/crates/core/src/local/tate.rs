//! Tate's algorithm over any [`LocalRing`].

use super::kodaira::{Kodaira, ReductionClass};
use super::ring::LocalRing;
use crate::arith::Valuation;
use crate::curve::model::{Coeff, Weierstrass};
use crate::error::{Error, Result};

/// Output of Tate's algorithm at one place.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalReduction<E> {
    pub kodaira: Kodaira,
    pub class: ReductionClass,
    /// Valuation of the minimal discriminant.
    pub disc_valuation: u32,
    pub minimal: Weierstrass<E>,
    /// `k` with the minimal model obtained by scaling with `u = pi^k`.
    pub scaling: i64,
}

fn k<E: Coeff>(n: i64) -> E {
    E::from_i64(n)
}

fn finite(v: Valuation) -> Result<i64> {
    v.finite().ok_or(Error::Singular)
}

struct Ctx<'a, L: LocalRing> {
    ring: &'a L,
    p: u64,
}

impl<L: LocalRing> Ctx<'_, L> {
    fn lt(&self, x: &L::E, n: i64) -> bool {
        self.ring.valuation(x) < Valuation::Finite(n)
    }
    fn div(&self, x: &L::E, n: u32) -> Result<L::E> {
        self.ring.div_pi_pow(x, n)
    }
    fn pi_pow(&self, n: u32) -> L::E {
        let pi = self.ring.uniformizer();
        (0..n).fold(k::<L::E>(1), |acc, _| acc * pi.clone())
    }
    fn half(&self) -> Result<L::E> {
        self.ring.residue_inverse(&k(2))
    }
}

/// Scales by a power of `pi` until every coefficient is integral.
fn make_integral<L: LocalRing>(ring: &L, w: &Weierstrass<L::E>) -> Result<(Weierstrass<L::E>, i64)> {
    const W: [i64; 5] = [1, 2, 3, 4, 6];
    let mut e = 0i64;
    for (a, wt) in w.coeffs().iter().zip(W) {
        if let Valuation::Finite(v) = ring.valuation(a) {
            if v < 0 {
                e = e.max((-v + wt - 1) / wt);
            }
        }
    }
    if e == 0 {
        return Ok((w.clone(), 0));
    }
    let pi = ring.uniformizer();
    let scaled = w.map_weighted(|wt, a| {
        (0..(e as u32 * wt)).fold(a.clone(), |acc, _| acc * pi.clone())
    });
    Ok((scaled, -e))
}

/// Translates so that the singular point of the reduction is at the origin,
/// i.e. `pi` divides `a3`, `a4` and `a6`. Requires `pi | disc`.
pub(crate) fn singular_point_to_origin<L: LocalRing>(
    ring: &L,
    w: &Weierstrass<L::E>,
) -> Result<Weierstrass<L::E>> {
    let p = ring.residue_characteristic();
    let [a1, a2, a3, a4, a6] = w.coeffs().clone();
    let [b2, b4, b6, _] = w.b_invariants();
    let (c4, c6) = w.c_invariants();
    let zero = k::<L::E>(0);
    let (r, t) = if p == 2 {
        if ring.divides(&b2) {
            let r = ring.residue_root(&a4)?;
            let t = ring.residue_root(&(((r.clone() + a2) * r.clone() + a4) * r.clone() + a6))?;
            (r, t)
        } else {
            let inv = ring.residue_inverse(&a1)?;
            let r = inv.clone() * a3;
            let t = inv * (a4 + r.clone() * r.clone());
            (r, t)
        }
    } else if p == 3 {
        let r = if ring.divides(&b2) {
            ring.residue_root(&(zero.clone() - b6))?
        } else {
            zero.clone() - ring.residue_inverse(&b2)? * b4
        };
        let t = a1 * r.clone() + a3;
        (r, t)
    } else {
        let r = if ring.divides(&c4) {
            zero.clone() - ring.residue_inverse(&k(12))? * b2
        } else {
            zero.clone() - ring.residue_inverse(&(k::<L::E>(12) * c4.clone()))? * (c6 + b2 * c4)
        };
        let t = zero.clone() - ring.residue_inverse(&k(2))? * (a1 * r.clone() + a3);
        (r, t)
    };
    let (r, t) = (ring.reduce(&r)?, ring.reduce(&t)?);
    Ok(w.rst(&r, &zero, &t))
}

/// Runs Tate's algorithm, returning the Kodaira type and a minimal model.
pub fn tate<L: LocalRing>(ring: &L, w: &Weierstrass<L::E>) -> Result<LocalReduction<L::E>> {
    let cx = Ctx { ring, p: ring.residue_characteristic() };
    let p = cx.p;
    let zero = k::<L::E>(0);
    let one = k::<L::E>(1);
    let (mut cur, mut scaling) = make_integral(ring, w)?;
    loop {
        let vd = finite(ring.valuation(&cur.discriminant()))?;
        let done = |kodaira, class, minimal: Weierstrass<L::E>, dv: i64| LocalReduction {
            kodaira,
            class,
            disc_valuation: dv as u32,
            minimal,
            scaling,
        };
        if vd == 0 {
            return Ok(done(Kodaira::I(0), ReductionClass::Good, cur, 0));
        }
        cur = singular_point_to_origin(ring, &cur)?;
        let (c4, _) = cur.c_invariants();
        if !ring.divides(&c4) {
            let split = ring.quadratic_has_root(&one, cur.a1(), &(zero.clone() - cur.a2().clone()))?;
            let class = if split {
                ReductionClass::SplitMultiplicative
            } else {
                ReductionClass::NonsplitMultiplicative
            };
            return Ok(done(Kodaira::I(vd as u32), class, cur, vd));
        }
        let [_, _, b6, b8] = cur.b_invariants();
        if cx.lt(cur.a6(), 2) {
            return Ok(done(Kodaira::II, ReductionClass::Additive, cur, vd));
        }
        if cx.lt(&b8, 3) {
            return Ok(done(Kodaira::III, ReductionClass::Additive, cur, vd));
        }
        if cx.lt(&b6, 3) {
            return Ok(done(Kodaira::IV, ReductionClass::Additive, cur, vd));
        }

        let (s, t) = if p == 2 {
            let s = ring.residue_root(cur.a2())?;
            let t = cx.pi_pow(1) * ring.residue_root(&cx.div(cur.a6(), 2)?)?;
            (s, t)
        } else if p == 3 {
            (cur.a1().clone(), cur.a3().clone())
        } else {
            let h = cx.half()?;
            (
                zero.clone() - cur.a1().clone() * h.clone(),
                zero.clone() - cur.a3().clone() * h,
            )
        };
        cur = cur.rst(&zero, &s, &t);

        let b = cx.div(cur.a2(), 1)?;
        let c = cx.div(cur.a4(), 2)?;
        let d = cx.div(cur.a6(), 3)?;
        let w3 = k::<L::E>(27) * d.clone() * d.clone() - b.clone() * b.clone() * c.clone() * c.clone()
            + k::<L::E>(4) * b.clone() * b.clone() * b.clone() * d.clone()
            - k::<L::E>(18) * b.clone() * c.clone() * d.clone()
            + k::<L::E>(4) * c.clone() * c.clone() * c.clone();
        let x3 = k::<L::E>(3) * c.clone() - b.clone() * b.clone();

        if !ring.divides(&w3) {
            return Ok(done(Kodaira::IStar(0), ReductionClass::Additive, cur, vd));
        }

        if !ring.divides(&x3) {
            // Double root: move it to T = 0 and run the I_n* subprocedure.
            let r = if p == 2 {
                ring.residue_root(&c)?
            } else if p == 3 {
                c.clone() * ring.residue_inverse(&b)?
            } else {
                (b.clone() * c.clone() - k::<L::E>(9) * d.clone())
                    * ring.residue_inverse(&(k::<L::E>(2) * x3.clone()))?
            };
            let r = cx.pi_pow(1) * ring.reduce(&r)?;
            cur = cur.rst(&r, &zero, &zero);
            let (mut ix, mut iy) = (3u32, 3u32);
            loop {
                let (mx, my) = (ix - 1, iy - 1);
                let a3t = cx.div(cur.a3(), my)?;
                let a6t = cx.div(cur.a6(), mx + my)?;
                if !ring.divides(&(a3t.clone() * a3t.clone() + k::<L::E>(4) * a6t.clone())) {
                    break;
                }
                let t = if p == 2 {
                    cx.pi_pow(my) * ring.residue_root(&a6t)?
                } else {
                    cx.pi_pow(my) * ring.reduce(&(zero.clone() - a3t * cx.half()?))?
                };
                cur = cur.rst(&zero, &zero, &t);
                iy += 1;
                let my = iy - 1;
                let a2t = cx.div(cur.a2(), 1)?;
                let a4t = cx.div(cur.a4(), 1 + mx)?;
                let a6t = cx.div(cur.a6(), mx + my)?;
                if !ring.divides(&(a4t.clone() * a4t.clone() - k::<L::E>(4) * a6t.clone() * a2t.clone())) {
                    break;
                }
                let r = if p == 2 {
                    cx.pi_pow(mx) * ring.residue_root(&(a6t * ring.residue_inverse(&a2t)?))?
                } else {
                    cx.pi_pow(mx)
                        * ring.reduce(&(zero.clone() - a4t * ring.residue_inverse(&(k::<L::E>(2) * a2t))?))?
                };
                cur = cur.rst(&r, &zero, &zero);
                ix += 1;
            }
            return Ok(done(Kodaira::IStar(ix + iy - 5), ReductionClass::Additive, cur, vd));
        }

        // Triple root.
        let r = if p == 2 {
            b.clone()
        } else if p == 3 {
            ring.residue_root(&(zero.clone() - d.clone()))?
        } else {
            zero.clone() - b.clone() * ring.residue_inverse(&k(3))?
        };
        let r = cx.pi_pow(1) * ring.reduce(&r)?;
        cur = cur.rst(&r, &zero, &zero);
        let a3t = cx.div(cur.a3(), 2)?;
        let a6t = cx.div(cur.a6(), 4)?;
        if !ring.divides(&(a3t.clone() * a3t.clone() + k::<L::E>(4) * a6t.clone())) {
            return Ok(done(Kodaira::IVStar, ReductionClass::Additive, cur, vd));
        }
        let t = if p == 2 {
            zero.clone() - cx.pi_pow(2) * ring.residue_root(&a6t)?
        } else {
            cx.pi_pow(2) * ring.reduce(&(zero.clone() - a3t * cx.half()?))?
        };
        cur = cur.rst(&zero, &zero, &t);
        if cx.lt(cur.a4(), 4) {
            return Ok(done(Kodaira::IIIStar, ReductionClass::Additive, cur, vd));
        }
        if cx.lt(cur.a6(), 6) {
            return Ok(done(Kodaira::IIStar, ReductionClass::Additive, cur, vd));
        }
        // Not minimal: divide through by pi and start again.
        let mut divided = Vec::with_capacity(5);
        for (a, wt) in cur.coeffs().iter().zip([1u32, 2, 3, 4, 6]) {
            divided.push(cx.div(a, wt)?);
        }
        let a: [L::E; 5] = divided.try_into().map_err(|_| Error::Singular)?;
        cur = Weierstrass::new_unchecked(a);
        scaling += 1;
    }
}
