//! The zeta engine.
//!
//! For a degeneration whose strata are all tori, each orbit of cells of
//! codimension `r` contributes `(L-1)^(2-r)·(L-1)^r = (L-1)^2` times the
//! generating function of interior lattice points in the cone over its dual
//! polytope. That generating function is read off any unimodular triangulation
//! of the dual: an interior simplex of dimension `d` contributes `u^(d+1)`.
//! The resolved double points add `m·L·u`.

use serde::{Deserialize, Serialize};

use crate::complex::{validate, CellOrbit, DegenerationComplex};
use crate::error::{Error, Result};
use crate::lattice::LatticePolytope;
use crate::series::{motivic_volume, to_sv_form, LPolynomial, SvForm, UBasisSeries};
use crate::triangulation::simplex_profile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaResult {
    pub series: UBasisSeries,
    pub sv: SvForm,
    /// Triangle count, when the series has the canonical K3 shape.
    pub t: Option<u64>,
    pub volume: LPolynomial,
}

impl ZetaResult {
    pub fn from_series(series: UBasisSeries) -> Self {
        let sv = to_sv_form(&series);
        let t = sv.valid.then_some(sv.t);
        let volume = motivic_volume(&series);
        Self {
            series,
            sv,
            t,
            volume,
        }
    }
}

fn as_i64(v: u64) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("zeta coefficient"))
}

/// `mult·(c0·u + c1·u^2 + c2·u^3)` for the orbit's interior-simplex profile.
pub fn orbit_contribution(o: &CellOrbit) -> Result<UBasisSeries> {
    let p = simplex_profile(&o.dual)?;
    let m = as_i64(o.multiplicity)?;
    let counts = [p.c0, p.c1, p.c2]
        .into_iter()
        .map(|c| {
            as_i64(c).and_then(|c| {
                c.checked_mul(m)
                    .ok_or(Error::Overflow("orbit contribution"))
            })
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(UBasisSeries::from_integers(&counts))
}

/// The zeta function summed orbit by orbit.
pub fn zeta(c: &DegenerationComplex) -> Result<ZetaResult> {
    let report = validate(c);
    if !report.ok {
        return Err(Error::InvalidComplex(Box::new(report)));
    }
    let mut body = UBasisSeries::zero();
    for o in &c.orbits {
        body = &body + &orbit_contribution(o)?;
    }
    let series = &body.mul_poly(&LPolynomial::torus(2)) + &odp_term(c.odp_count)?;
    debug_assert_eq!(
        series,
        zeta_aggregate(c)?,
        "per-orbit and aggregate routes disagree"
    );
    Ok(ZetaResult::from_series(series))
}

fn odp_term(m: u64) -> Result<UBasisSeries> {
    Ok(UBasisSeries::monomial(
        1,
        LPolynomial::l().scale(as_i64(m)?),
    ))
}

/// The same series from the aggregate counts `(F, E, V)` of the refined dual
/// complex: `m·L·u + (L-1)^2·(V·u + E·u^2 + F·u^3)`.
pub fn zeta_aggregate(c: &DegenerationComplex) -> Result<UBasisSeries> {
    let r = validate(c);
    let body = UBasisSeries::from_integers(&[as_i64(r.v)?, as_i64(r.e)?, as_i64(r.f)?]);
    Ok(&body.mul_poly(&LPolynomial::torus(2)) + &odp_term(c.odp_count)?)
}

/// Number of triangles in a unimodular triangulation of the dual complex.
pub fn t_invariant(c: &DegenerationComplex) -> Result<u64> {
    let mut t = 0u64;
    for o in c.orbits.iter().filter(|o| o.dim == 0) {
        let area = o.dual.normalized_area()?;
        t = area
            .checked_mul(o.multiplicity)
            .and_then(|x| x.checked_add(t))
            .ok_or(Error::Overflow("triangle count"))?;
    }
    Ok(t)
}

pub const ORACLE_MAX_ORDER: usize = 50;

/// `l(n)` for `n = 1..N`: interior lattice points of the cone over `p` at
/// height `n`, by direct enumeration.
pub fn l_series_oracle(p: &LatticePolytope, n_max: usize) -> Result<Vec<u64>> {
    if n_max > ORACLE_MAX_ORDER {
        return Err(Error::Guard(format!(
            "oracle order {n_max} exceeds {ORACLE_MAX_ORDER}"
        )));
    }
    (1..=n_max as u64)
        .map(|n| p.enumerate_dilate(n, true).map(|pts| pts.len() as u64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin;
    use crate::series::expand;

    #[test]
    fn contributions() {
        let face = CellOrbit::face("c", 64);
        assert_eq!(
            orbit_contribution(&face).unwrap(),
            UBasisSeries::from_integers(&[64])
        );
        let edge = CellOrbit::edge("b1", 12, 3).unwrap();
        assert_eq!(
            orbit_contribution(&edge).unwrap(),
            UBasisSeries::from_integers(&[24, 36])
        );
        let q = builtin("quartic").unwrap();
        let a3 = q.orbit("a3").unwrap();
        assert_eq!(
            orbit_contribution(a3).unwrap(),
            UBasisSeries::from_integers(&[18, 96, 84])
        );
    }

    #[test]
    fn builtin_zetas() {
        let q = zeta(&builtin("quartic").unwrap()).unwrap();
        assert!(q.sv.valid, "{}", q.sv.residual_report);
        assert_eq!(q.t, Some(280));
        assert_eq!(q.volume, LPolynomial::new(vec![2, 20, 2]));
        let m = zeta(&builtin("quartic-mirror").unwrap()).unwrap();
        assert_eq!(m.t, Some(64));
        assert_eq!(m.volume, LPolynomial::new(vec![2, 20, 2]));
    }

    #[test]
    fn invalid_complex_is_refused() {
        let mut q = builtin("quartic").unwrap();
        q.orbit_mut("c").unwrap().multiplicity = 63;
        assert!(matches!(zeta(&q), Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn odp_count_other_than_24_is_not_canonical() {
        let mut q = builtin("quartic-mirror").unwrap();
        q.odp_count = 20;
        let z = zeta(&q).unwrap();
        assert!(!z.sv.valid);
        assert_eq!(z.t, None);
    }

    #[test]
    fn oracle_examples() {
        let tri = LatticePolytope::polygon_from_xy(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(l_series_oracle(&tri, 5).unwrap(), vec![0, 0, 1, 3, 6]);
        let seg = LatticePolytope::segment_of_length(3).unwrap();
        assert_eq!(l_series_oracle(&seg, 4).unwrap(), vec![2, 5, 8, 11]);
        assert_eq!(
            l_series_oracle(&LatticePolytope::origin(0), 3).unwrap(),
            vec![1, 1, 1]
        );
        assert!(matches!(l_series_oracle(&tri, 51), Err(Error::Guard(_))));
    }

    #[test]
    fn builtin_duals_match_oracle() {
        for name in ["quartic", "quartic-mirror"] {
            for o in builtin(name).unwrap().orbits {
                let p = simplex_profile(&o.dual).unwrap();
                let gf = UBasisSeries::from_integers(&[p.c0 as i64, p.c1 as i64, p.c2 as i64]);
                let lhs: Vec<u64> = expand(&gf, 8)
                    .iter()
                    .map(|c| c.as_constant().unwrap() as u64)
                    .collect();
                assert_eq!(
                    lhs,
                    l_series_oracle(&o.dual, 8).unwrap(),
                    "{name}/{}",
                    o.label
                );
            }
        }
    }

    #[test]
    fn t_values() {
        assert_eq!(t_invariant(&builtin("quartic").unwrap()).unwrap(), 280);
        assert_eq!(
            t_invariant(&builtin("quartic-mirror").unwrap()).unwrap(),
            64
        );
    }
}
