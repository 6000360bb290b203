//! Singular fibres of elliptic surfaces over Q(t).

use serde::{Deserialize, Serialize};

use super::kodaira::{Kodaira, ReductionClass};
use super::place::Place;
use super::ring::PolyPlaceRing;
use super::tate::tate;
use crate::arith::{FactorBudget, Poly};
use crate::curve::{legendre_surface, neumann_setzer_surface, SurfaceModel};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Legendre,
    NeumannSetzer,
}

impl Family {
    pub fn surface(self) -> SurfaceModel {
        match self {
            Family::Legendre => legendre_surface(),
            Family::NeumannSetzer => neumann_setzer_surface(),
        }
    }

    /// Singular fibres as printed in the literature, where one is cited.
    pub fn cited_singular_locus(self) -> Option<Vec<String>> {
        match self {
            Family::Legendre => Some(vec!["0".into(), "-1".into(), "inf".into()]),
            Family::NeumannSetzer => None,
        }
    }

    /// The `x`-coordinates of the rational 2-torsion sections.
    pub fn two_torsion_sections(self) -> Vec<Poly> {
        match self {
            Family::Legendre => vec![Poly::zero(), Poly::from_ints(&[-1]), Poly::from_ints(&[0, -1])],
            Family::NeumannSetzer => vec![Poly::zero()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreType {
    pub place: Place,
    pub kodaira: Kodaira,
    pub class: ReductionClass,
    pub disc_valuation: u32,
    /// Residue degree times the Euler number of the fibre.
    pub euler_contribution: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFibreReport {
    pub family: Family,
    pub discriminant: String,
    pub fibres: Vec<FibreType>,
    pub euler_sum: u32,
    /// Parameter values of the singular fibres; non-rational places are given by their polynomial.
    pub computed_singular_locus: Vec<String>,
    pub cited_singular_locus: Option<Vec<String>>,
    pub locus_discrepancy: bool,
    pub two_torsion_sections: Vec<String>,
}

/// The model at `t = infinity`: `s^{6k} a_i(1/s)` weighted, as a model over Q[s].
pub fn model_at_infinity(w: &SurfaceModel) -> SurfaceModel {
    const W: [usize; 5] = [1, 2, 3, 4, 6];
    let k = w
        .coeffs()
        .iter()
        .zip(W)
        .filter_map(|(a, wt)| a.degree().map(|d| d.div_ceil(wt)))
        .max()
        .unwrap_or(0);
    let mut i = 0;
    w.map_weighted(|_, a| {
        let out = if a.is_zero() { Poly::zero() } else { a.reversed(k * W[i]) };
        i += 1;
        out
    })
}

/// Tate's algorithm at a place of Q(t).
pub fn tate_reduce_surface(w: &SurfaceModel, place: &Place) -> Result<FibreType> {
    let (model, ring) = match place {
        Place::Poly(pi) => (w.clone(), PolyPlaceRing::new(pi.clone(), place.clone())),
        Place::Infinity => (model_at_infinity(w), PolyPlaceRing::new(Poly::var(), Place::Infinity)),
        Place::Prime(_) => return Err(Error::UnsupportedPlace(format!("{place} over Q(t)"))),
    };
    let local = tate(&ring, &model)?;
    Ok(FibreType {
        place: place.clone(),
        kodaira: local.kodaira,
        class: local.class,
        disc_valuation: local.disc_valuation,
        euler_contribution: place.degree() * local.kodaira.euler_number(),
    })
}

/// Monic irreducible factors of `f`, supported up to cubic non-linear parts.
fn irreducible_factors(f: &Poly) -> Result<Vec<Poly>> {
    let sf = f.squarefree();
    let mut out = Vec::new();
    let mut rest = sf.clone();
    for r in sf.rational_roots(&FactorBudget::default())? {
        let lin = Poly::linear_root(&r);
        rest = rest.div_rem(&lin).0;
        out.push(lin);
    }
    match rest.degree() {
        Some(0) => {}
        Some(2 | 3) => out.push(rest.monic()),
        _ => return Err(Error::UnsupportedPlace(format!("factoring {rest}"))),
    }
    Ok(out)
}

/// All singular fibres of `w` with the Euler-number sum.
pub fn singular_fibres(w: &SurfaceModel) -> Result<Vec<FibreType>> {
    let disc = w.discriminant();
    let mut fibres = Vec::new();
    for f in irreducible_factors(&disc)? {
        fibres.push(tate_reduce_surface(w, &Place::poly(f)?)?);
    }
    let inf = tate_reduce_surface(w, &Place::Infinity)?;
    if !inf.kodaira.is_good() {
        fibres.push(inf);
    }
    Ok(fibres)
}

fn locus_label(place: &Place) -> String {
    match place {
        Place::Poly(f) if f.degree() == Some(1) => (-f.coeff(0)).to_string(),
        other => other.to_string(),
    }
}

/// Singular fibres of a named family; fails if the Euler numbers do not sum to 12.
pub fn surface_fibre_types(family: Family) -> Result<SurfaceFibreReport> {
    let w = family.surface();
    let fibres = singular_fibres(&w)?;
    let euler_sum = fibres.iter().map(|f| f.euler_contribution).sum();
    if euler_sum != 12 {
        return Err(Error::AssertionFailed(format!(
            "Euler numbers of {family:?} sum to {euler_sum}, not 12"
        )));
    }
    let computed: Vec<String> = fibres.iter().map(|f| locus_label(&f.place)).collect();
    let cited = family.cited_singular_locus();
    let locus_discrepancy = cited.as_ref().is_some_and(|c| {
        let (mut a, mut b) = (c.clone(), computed.clone());
        a.sort();
        b.sort();
        a != b
    });
    let mut sections = Vec::new();
    for x in family.two_torsion_sections() {
        let rhs = &(&(&(&x * &x) * &x) + &(&(w.a2() * &x) * &x)) + &(&(w.a4() * &x) + w.a6());
        if !rhs.is_zero() || !w.a1().is_zero() || !w.a3().is_zero() {
            return Err(Error::AssertionFailed(format!("({x}, 0) is not a section")));
        }
        sections.push(format!("({}, 0)", x.fmt_in("t")));
    }
    Ok(SurfaceFibreReport {
        family,
        discriminant: w.discriminant().to_string(),
        fibres,
        euler_sum,
        computed_singular_locus: computed,
        cited_singular_locus: cited,
        locus_discrepancy,
        two_torsion_sections: sections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_fibres() {
        let r = surface_fibre_types(Family::Legendre).unwrap();
        let got: Vec<(String, String)> =
            r.fibres.iter().map(|f| (f.place.to_string(), f.kodaira.to_string())).collect();
        assert_eq!(
            got,
            vec![
                ("t".to_string(), "I2".to_string()),
                ("t - 1".to_string(), "I2".to_string()),
                ("inf".to_string(), "I2*".to_string()),
            ]
        );
        assert_eq!(r.euler_sum, 12);
        assert_eq!(r.computed_singular_locus, vec!["0", "1", "inf"]);
        assert!(r.locus_discrepancy);
        assert_eq!(r.two_torsion_sections, vec!["(0, 0)", "(-1, 0)", "(-t, 0)"]);
    }

    #[test]
    fn neumann_setzer_fibres() {
        let r = surface_fibre_types(Family::NeumannSetzer).unwrap();
        let got: Vec<(String, String, u32)> = r
            .fibres
            .iter()
            .map(|f| (f.place.to_string(), f.kodaira.to_string(), f.euler_contribution))
            .collect();
        assert_eq!(
            got,
            vec![("t^2 + 64".to_string(), "I1".to_string(), 2), ("inf".to_string(), "I4*".to_string(), 10)]
        );
        assert!(!r.locus_discrepancy);
    }

    #[test]
    fn infinity_model() {
        let w = model_at_infinity(&legendre_surface());
        assert_eq!(w.a2(), &Poly::from_ints(&[0, 1, 1]));
        assert_eq!(w.a4(), &Poly::from_ints(&[0, 0, 0, 1]));
    }

    #[test]
    fn rejects_prime_place() {
        assert!(tate_reduce_surface(&legendre_surface(), &Place::prime(2).unwrap()).is_err());
    }
}
