#![allow(dead_code)]

use mzt_core::complex::{validate, CellOrbit, DegenerationComplex};
use mzt_core::series::expand;
use mzt_core::{simplex_profile, LatticePoint, LatticePolytope, UBasisSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hull of 3 to 8 points in a box, retried until it is two-dimensional.
pub fn random_polygon(rng: &mut ChaCha8Rng, radius: i64) -> LatticePolytope {
    loop {
        let k = rng.gen_range(3..=8);
        let pts: Vec<LatticePoint> = (0..k)
            .map(|_| {
                LatticePoint::xy(
                    rng.gen_range(-radius..=radius),
                    rng.gen_range(-radius..=radius),
                )
            })
            .collect();
        if let Ok(p) = LatticePolytope::hull_of(&pts) {
            if p.dim() == 2 {
                return p;
            }
        }
    }
}

pub fn poly(v: &[(i64, i64)]) -> LatticePolytope {
    LatticePolytope::polygon_from_xy(v).unwrap()
}

/// `l(1..=n)` read off the simplex profile.
pub fn profile_series(p: &LatticePolytope, n: usize) -> Vec<u64> {
    let s = simplex_profile(p).unwrap();
    let gf = UBasisSeries::from_integers(&[s.c0 as i64, s.c1 as i64, s.c2 as i64]);
    expand(&gf, n)
        .iter()
        .map(|c| c.as_constant().unwrap_or(0) as u64)
        .collect()
}

/// A sphere-shaped complex built around the given vertex duals: length-one
/// edges and faces are added until `E = 3F/2` and `V - E + F = 2`.
pub fn sphere_around(duals: &[(LatticePolytope, u64)]) -> DegenerationComplex {
    let mut mult: Vec<u64> = duals.iter().map(|d| d.1).collect();
    let area = |mult: &[u64]| -> u64 {
        duals
            .iter()
            .zip(mult)
            .map(|((p, _), m)| p.normalized_area().unwrap() * m)
            .sum()
    };
    if area(&mult) % 2 == 1 {
        mult.iter_mut().for_each(|m| *m *= 2);
    }
    let f = area(&mult);
    let mut orbits: Vec<CellOrbit> = duals
        .iter()
        .zip(&mult)
        .enumerate()
        .map(|(i, ((p, _), &m))| CellOrbit::vertex(&format!("v{i}"), m, p.clone()))
        .collect();
    let (mut e0, mut v0) = (0u64, 0u64);
    for ((p, _), m) in duals.iter().zip(&mult) {
        let s = simplex_profile(p).unwrap();
        e0 += s.c1 * m;
        v0 += s.c0 * m;
    }
    orbits.push(CellOrbit::edge("e", 3 * f / 2 - e0, 1).unwrap());
    orbits.push(CellOrbit::face("f", 2 + f / 2 - v0));
    let c = DegenerationComplex {
        name: "sphere".into(),
        orbits,
        odp_count: 24,
        notes: String::new(),
    };
    assert!(validate(&c).ok, "{}", validate(&c));
    c
}
