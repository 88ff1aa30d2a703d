//! Unimodular triangulations, interior-simplex profiles, regular
//! subdivisions from height functions, and Newton polytopes of convex
//! piecewise linear functions on complete planar fans.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lattice::{checked_cross, convex_hull_indices, turn, LatticePoint, LatticePolytope};

/// Order in which lattice points are pulled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PullingOrder {
    /// Lexicographic order, starting at the smallest lattice point.
    Forward,
    /// Reverse lexicographic order.
    Reverse,
}

/// A triangulation of a lattice polytope on all of its lattice points.
///
/// For a segment, `triangles` is empty and `edges` are the unit segments;
/// for a point, both are empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub dim: usize,
    pub points: Vec<LatticePoint>,
    pub triangles: Vec<[usize; 3]>,
    pub edges: Vec<[usize; 2]>,
}

/// Counts of vertices, edges and triangles of a unimodular triangulation
/// that are not contained in the boundary of the polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimplexProfile {
    pub c0: u64,
    pub c1: u64,
    pub c2: u64,
}

pub fn unimodular_triangulate(p: &LatticePolytope) -> Result<Triangulation> {
    triangulate_with(p, PullingOrder::Forward)
}

/// Pulling triangulation that uses every lattice point of `p`.
///
/// Every lattice point becomes a vertex, so each triangle is an empty lattice
/// triangle and therefore unimodular.
pub fn triangulate_with(p: &LatticePolytope, order: PullingOrder) -> Result<Triangulation> {
    let mut points = p.lattice_points()?;
    points.sort();
    match p.dim() {
        0 => Ok(Triangulation {
            dim: 0,
            points,
            triangles: vec![],
            edges: vec![],
        }),
        1 => {
            // lattice points of a segment come out sorted along it
            let edges = (0..points.len() - 1).map(|i| [i, i + 1]).collect();
            Ok(Triangulation {
                dim: 1,
                points,
                triangles: vec![],
                edges,
            })
        }
        2 => {
            let index: BTreeMap<&LatticePoint, usize> =
                points.iter().enumerate().map(|(i, q)| (q, i)).collect();
            let mut cells: Vec<Vec<LatticePoint>> = vec![p.vertices().to_vec()];
            let pull_order: Vec<&LatticePoint> = match order {
                PullingOrder::Forward => points.iter().collect(),
                PullingOrder::Reverse => points.iter().rev().collect(),
            };
            for q in pull_order {
                let mut next = Vec::with_capacity(cells.len() + 4);
                for cell in cells {
                    pull(cell, q, &mut next)?;
                }
                cells = next;
            }
            let mut triangles = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() != 3 {
                    return Err(Error::InvalidConfiguration(
                        "pulling left a non-triangular cell".into(),
                    ));
                }
                let det = turn(&cell[0], &cell[1], &cell[2])?;
                if det != 1 {
                    return Err(Error::InvalidConfiguration(format!(
                        "pulling produced a triangle of normalized area {det}"
                    )));
                }
                let mut t = [index[&cell[0]], index[&cell[1]], index[&cell[2]]];
                // rotate so the smallest index comes first, keeping orientation
                let m = (0..3).min_by_key(|&i| t[i]).unwrap_or(0);
                t.rotate_left(m);
                triangles.push(t);
            }
            triangles.sort();
            let edges = derive_edges(&triangles);
            Ok(Triangulation {
                dim: 2,
                points,
                triangles,
                edges,
            })
        }
        d => Err(Error::WrongDimension {
            expected: 2,
            got: d,
        }),
    }
}

enum Location {
    Outside,
    Corner(usize),
    OnEdge(usize),
    Inside,
}

fn locate(cell: &[LatticePoint], q: &LatticePoint) -> Result<Location> {
    let n = cell.len();
    if let Some(i) = cell.iter().position(|c| c == q) {
        return Ok(Location::Corner(i));
    }
    let mut on_edge = None;
    for i in 0..n {
        let t = turn(&cell[i], &cell[(i + 1) % n], q)?;
        if t < 0 {
            return Ok(Location::Outside);
        }
        if t == 0 {
            on_edge = Some(i);
        }
    }
    Ok(match on_edge {
        Some(i) => Location::OnEdge(i),
        None => Location::Inside,
    })
}

/// Replace `cell` by the cone from `q` over the edges of `cell` not containing `q`.
fn pull(cell: Vec<LatticePoint>, q: &LatticePoint, out: &mut Vec<Vec<LatticePoint>>) -> Result<()> {
    let n = cell.len();
    let skip: Vec<usize> = match locate(&cell, q)? {
        Location::Outside => {
            out.push(cell);
            return Ok(());
        }
        Location::Corner(i) => vec![i, (i + n - 1) % n],
        Location::OnEdge(i) => vec![i],
        Location::Inside => vec![],
    };
    if n == 3 && skip.len() == 2 {
        // pulling a corner of a triangle leaves it unchanged
        out.push(cell);
        return Ok(());
    }
    for i in 0..n {
        if !skip.contains(&i) {
            out.push(vec![cell[i].clone(), cell[(i + 1) % n].clone(), q.clone()]);
        }
    }
    Ok(())
}

fn derive_edges(triangles: &[[usize; 3]]) -> Vec<[usize; 2]> {
    let mut set = BTreeSet::new();
    for t in triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            set.insert([a.min(b), a.max(b)]);
        }
    }
    set.into_iter().collect()
}

impl Triangulation {
    /// Count simplices not contained in the boundary of `p`, the polytope this
    /// triangulation was built from.
    pub fn interior_profile(&self, p: &LatticePolytope) -> Result<SimplexProfile> {
        match self.dim {
            0 => Ok(SimplexProfile {
                c0: 1,
                c1: 0,
                c2: 0,
            }),
            1 => {
                let ends = p.vertices();
                let c0 = self.points.iter().filter(|q| !ends.contains(q)).count() as u64;
                Ok(SimplexProfile {
                    c0,
                    c1: self.edges.len() as u64,
                    c2: 0,
                })
            }
            _ => {
                let verts = p.vertices();
                let n = verts.len();
                let on_boundary = |q: &LatticePoint| -> Result<bool> {
                    for i in 0..n {
                        if turn(&verts[i], &verts[(i + 1) % n], q)? == 0 {
                            return Ok(true);
                        }
                    }
                    Ok(false)
                };
                let mut boundary = Vec::with_capacity(self.points.len());
                for q in &self.points {
                    boundary.push(on_boundary(q)?);
                }
                let c0 = boundary.iter().filter(|b| !**b).count() as u64;
                let mut c1 = 0u64;
                for &[a, b] in &self.edges {
                    // a unit edge lies in the boundary iff both ends lie on a common edge
                    let shared = boundary[a]
                        && boundary[b]
                        && (0..n).any(|i| {
                            let (s, e) = (&verts[i], &verts[(i + 1) % n]);
                            turn(s, e, &self.points[a]).map(|t| t == 0).unwrap_or(false)
                                && turn(s, e, &self.points[b]).map(|t| t == 0).unwrap_or(false)
                        });
                    if !shared {
                        c1 += 1;
                    }
                }
                Ok(SimplexProfile {
                    c0,
                    c1,
                    c2: self.triangles.len() as u64,
                })
            }
        }
    }
}

/// Closed-form interior-simplex counts. Debug builds cross-check against an
/// explicit pulling triangulation.
pub fn simplex_profile(p: &LatticePolytope) -> Result<SimplexProfile> {
    let profile = match p.dim() {
        0 => SimplexProfile {
            c0: 1,
            c1: 0,
            c2: 0,
        },
        1 => {
            let l = p.lattice_length()?;
            SimplexProfile {
                c0: l - 1,
                c1: l,
                c2: 0,
            }
        }
        _ => {
            let f = p.normalized_area()?;
            let b = p.boundary_lattice_count()?;
            let i = p.interior_lattice_count()?;
            let c1 = f.checked_mul(3).ok_or(Error::Overflow("simplex profile"))? - b;
            SimplexProfile {
                c0: i,
                c1: c1 / 2,
                c2: f,
            }
        }
    };
    #[cfg(debug_assertions)]
    {
        let explicit = unimodular_triangulate(p)?.interior_profile(p)?;
        debug_assert_eq!(
            explicit, profile,
            "closed-form profile disagrees with triangulation of {p}"
        );
    }
    Ok(profile)
}

/// One cell of a regular subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCell {
    /// Indices of the cell's corners, counter-clockwise.
    pub vertices: Vec<usize>,
    /// Every input point whose lift lies on the cell's supporting plane.
    pub on_face: Vec<usize>,
    /// Supporting plane `a·x + b·y + c·h = d` with `c > 0`; all lifted
    /// points satisfy `≥ d`.
    pub plane: [i64; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSubdivision {
    pub cells: Vec<SubdivisionCell>,
    /// True iff every cell is a triangle of normalized area one.
    pub all_unimodular: bool,
    /// Input points that are not corners of any cell.
    pub unused: Vec<usize>,
}

impl RegularSubdivision {
    pub fn triangle_count(&self) -> usize {
        self.cells.iter().filter(|c| c.vertices.len() == 3).count()
    }
}

/// Project the lower faces of the lifted configuration `{(p, h(p))}`.
///
/// Non-triangular cells produced by non-generic heights are returned as they
/// are and flagged through `all_unimodular`.
pub fn regular_subdivision(points: &[LatticePoint], heights: &[i64]) -> Result<RegularSubdivision> {
    if points.len() != heights.len() {
        return Err(Error::InvalidConfiguration(format!(
            "{} points but {} heights",
            points.len(),
            heights.len()
        )));
    }
    if points.iter().any(|p| p.rank() != 2) {
        return Err(Error::InvalidConfiguration("points must lie in Z^2".into()));
    }
    let mut seen = BTreeSet::new();
    for p in points {
        if !seen.insert(p) {
            return Err(Error::InvalidConfiguration(format!("duplicate point {p}")));
        }
    }
    if convex_hull_indices(points)?.len() < 3 {
        return Err(Error::InvalidConfiguration(
            "points do not span the plane".into(),
        ));
    }

    let lift = |i: usize| -> [i128; 3] {
        [
            points[i].x() as i128,
            points[i].y() as i128,
            heights[i] as i128,
        ]
    };
    let n = points.len();
    let mut faces: BTreeMap<Vec<usize>, [i128; 4]> = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (pa, pb, pc) = (lift(a), lift(b), lift(c));
                let u = [pb[0] - pa[0], pb[1] - pa[1], pb[2] - pa[2]];
                let v = [pc[0] - pa[0], pc[1] - pa[1], pc[2] - pa[2]];
                let mut nrm = [
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                if nrm[2] == 0 {
                    continue;
                }
                if nrm[2] < 0 {
                    nrm = [-nrm[0], -nrm[1], -nrm[2]];
                }
                let d = nrm[0] * pa[0] + nrm[1] * pa[1] + nrm[2] * pa[2];
                let mut on = Vec::new();
                let mut lower = true;
                for i in 0..n {
                    let q = lift(i);
                    let s = nrm[0] * q[0] + nrm[1] * q[1] + nrm[2] * q[2] - d;
                    if s < 0 {
                        lower = false;
                        break;
                    }
                    if s == 0 {
                        on.push(i);
                    }
                }
                if lower {
                    faces.entry(on).or_insert([nrm[0], nrm[1], nrm[2], d]);
                }
            }
        }
    }

    let mut cells = Vec::with_capacity(faces.len());
    let mut used = BTreeSet::new();
    let mut all_unimodular = true;
    for (on_face, plane) in faces {
        let sub: Vec<LatticePoint> = on_face.iter().map(|&i| points[i].clone()).collect();
        let hull: Vec<usize> = convex_hull_indices(&sub)?
            .into_iter()
            .map(|k| on_face[k])
            .collect();
        if hull.len() != 3 || turn(&points[hull[0]], &points[hull[1]], &points[hull[2]])? != 1 {
            all_unimodular = false;
        }
        used.extend(hull.iter().copied());
        let mut narrow = [0i64; 4];
        for (dst, src) in narrow.iter_mut().zip(plane) {
            *dst = i64::try_from(src).map_err(|_| Error::Overflow("lifted plane"))?;
        }
        let plane = narrow;
        cells.push(SubdivisionCell {
            vertices: hull,
            on_face,
            plane,
        });
    }
    cells.sort_by(|a, b| {
        a.vertices
            .iter()
            .min()
            .cmp(&b.vertices.iter().min())
            .then(a.vertices.cmp(&b.vertices))
    });
    let unused: Vec<usize> = (0..n).filter(|i| !used.contains(i)).collect();
    if !unused.is_empty() {
        all_unimodular = false;
    }
    Ok(RegularSubdivision {
        cells,
        all_unimodular,
        unused,
    })
}

/// A piecewise linear function on a complete fan in the plane.
///
/// `linear_parts[i]` is the covector on the cone spanned by `rays[i]` and
/// `rays[i + 1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanPL {
    rays: Vec<[i64; 2]>,
    linear_parts: Vec<[i64; 2]>,
}

fn dot(a: [i64; 2], b: [i64; 2]) -> Result<i64> {
    let l = a[0].checked_mul(b[0]).ok_or(Error::Overflow("pairing"))?;
    let r = a[1].checked_mul(b[1]).ok_or(Error::Overflow("pairing"))?;
    l.checked_add(r).ok_or(Error::Overflow("pairing"))
}

fn half_plane(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

impl FanPL {
    pub fn new(rays: Vec<[i64; 2]>, linear_parts: Vec<[i64; 2]>) -> Result<Self> {
        check_complete_fan(&rays)?;
        if linear_parts.len() != rays.len() {
            return Err(Error::InvalidFan(format!(
                "{} rays but {} linear parts",
                rays.len(),
                linear_parts.len()
            )));
        }
        let n = rays.len();
        for i in 0..n {
            let shared = rays[(i + 1) % n];
            let next = (i + 1) % n;
            if dot(linear_parts[i], shared)? != dot(linear_parts[next], shared)? {
                return Err(Error::InvalidFan(format!(
                    "linear parts of cones {i} and {next} disagree on their shared ray {shared:?}"
                )));
            }
        }
        Ok(Self { rays, linear_parts })
    }

    /// The function determined by its values on the rays. Every cone must be
    /// unimodular so that the linear parts are integral.
    pub fn from_ray_values(rays: Vec<[i64; 2]>, values: Vec<i64>) -> Result<Self> {
        check_complete_fan(&rays)?;
        if values.len() != rays.len() {
            return Err(Error::InvalidFan(format!(
                "{} rays but {} values",
                rays.len(),
                values.len()
            )));
        }
        let n = rays.len();
        let mut parts = Vec::with_capacity(n);
        for i in 0..n {
            let (r, s) = (rays[i], rays[(i + 1) % n]);
            let det = checked_cross((r[0], r[1]), (s[0], s[1]))?;
            if det != 1 {
                return Err(Error::InvalidFan(format!(
                    "cone {i} spanned by {r:?} and {s:?} is not unimodular"
                )));
            }
            // solve m·r = a, m·s = b with [r s] of determinant one
            let (a, b) = (values[i], values[(i + 1) % n]);
            let m0 = a
                .checked_mul(s[1])
                .zip(b.checked_mul(r[1]))
                .and_then(|(x, y)| x.checked_sub(y))
                .ok_or(Error::Overflow("linear part"))?;
            let m1 = b
                .checked_mul(r[0])
                .zip(a.checked_mul(s[0]))
                .and_then(|(x, y)| x.checked_sub(y))
                .ok_or(Error::Overflow("linear part"))?;
            parts.push([m0, m1]);
        }
        Self::new(rays, parts)
    }

    pub fn zero(rays: Vec<[i64; 2]>) -> Result<Self> {
        let n = rays.len();
        Self::new(rays, vec![[0, 0]; n])
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    pub fn linear_parts(&self) -> &[[i64; 2]] {
        &self.linear_parts
    }

    /// Value at a ray.
    pub fn value_at_ray(&self, i: usize) -> Result<i64> {
        dot(self.linear_parts[i], self.rays[i])
    }

    /// `Ok` if convex, otherwise the first adjacent cone pair where it bends
    /// the wrong way.
    pub fn check_convex(&self) -> std::result::Result<(), (usize, usize)> {
        let n = self.rays.len();
        for i in 0..n {
            let j = (i + 1) % n;
            let far = self.rays[(i + 2) % n];
            let here = dot(self.linear_parts[i], far).map_err(|_| (i, j))?;
            let there = dot(self.linear_parts[j], far).map_err(|_| (i, j))?;
            if here > there {
                return Err((i, j));
            }
        }
        Ok(())
    }
}

fn check_complete_fan(rays: &[[i64; 2]]) -> Result<()> {
    let n = rays.len();
    if n < 3 {
        return Err(Error::InvalidFan(format!(
            "a complete fan needs at least 3 rays, got {n}"
        )));
    }
    for r in rays {
        if crate::lattice::content(r) != 1 {
            return Err(Error::InvalidFan(format!("ray {r:?} is not primitive")));
        }
    }
    let mut wraps = 0;
    for i in 0..n {
        let (r, s) = (rays[i], rays[(i + 1) % n]);
        if checked_cross((r[0], r[1]), (s[0], s[1]))? <= 0 {
            return Err(Error::InvalidFan(format!(
                "rays {r:?} and {s:?} are not in strictly counter-clockwise order within a half-plane"
            )));
        }
        if half_plane(r) == 1 && half_plane(s) == 0 {
            wraps += 1;
        }
    }
    if wraps != 1 {
        return Err(Error::InvalidFan(
            "rays wind around the origin more than once".into(),
        ));
    }
    Ok(())
}

/// Convex hull of the linear parts, translated so its lexicographically
/// smallest vertex is the origin.
pub fn newton_polytope_of_pl(f: &FanPL) -> Result<LatticePolytope> {
    if let Err((i, j)) = f.check_convex() {
        return Err(Error::NonConvex(i, j));
    }
    let pts: Vec<LatticePoint> = f
        .linear_parts
        .iter()
        .map(|m| LatticePoint::xy(m[0], m[1]))
        .collect();
    LatticePolytope::hull_of(&pts)?.normalized_translation()
}

/// The piecewise linear function induced by `heights` on the star of an
/// interior vertex of a triangulated regular subdivision, modulo the value
/// at that vertex. Rays point from the vertex to its neighbours.
pub fn star_fan(
    points: &[LatticePoint],
    heights: &[i64],
    subdivision: &RegularSubdivision,
    vertex: usize,
) -> Result<FanPL> {
    let mut neighbours = BTreeSet::new();
    for cell in subdivision
        .cells
        .iter()
        .filter(|c| c.vertices.contains(&vertex))
    {
        if cell.vertices.len() != 3 {
            return Err(Error::InvalidConfiguration(format!(
                "cell around point {} is not a triangle",
                points[vertex]
            )));
        }
        neighbours.extend(cell.vertices.iter().copied().filter(|&k| k != vertex));
    }
    if neighbours.len() < 3 {
        return Err(Error::InvalidConfiguration(format!(
            "point {} is not an interior vertex",
            points[vertex]
        )));
    }
    let v = &points[vertex];
    let mut rays: Vec<([i64; 2], i64)> = Vec::with_capacity(neighbours.len());
    for k in neighbours {
        let d = points[k].checked_sub(v)?;
        let h = heights[k]
            .checked_sub(heights[vertex])
            .ok_or(Error::Overflow("height difference"))?;
        rays.push(([d.x(), d.y()], h));
    }
    rays.sort_by(|(a, _), (b, _)| {
        half_plane(*a).cmp(&half_plane(*b)).then_with(|| {
            0.cmp(&((a[0] as i128) * (b[1] as i128) - (a[1] as i128) * (b[0] as i128)))
        })
    });
    let (r, h): (Vec<_>, Vec<_>) = rays.into_iter().unzip();
    FanPL::from_ray_values(r, h)
}

/// Heights on the lattice points of `conv{(0,0),(4,0),(0,4)}` that induce
/// the subdivision of a facet of the quartic degeneration: 10 at corners,
/// 7 on edges next to a corner, 6 at edge midpoints and 5 inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightTable {
    pub points: Vec<LatticePoint>,
    pub heights: Vec<i64>,
}

impl HeightTable {
    pub fn facet() -> Self {
        let mut points = Vec::with_capacity(15);
        let mut heights = Vec::with_capacity(15);
        for x in 0..=4i64 {
            for y in 0..=4 - x {
                let z = 4 - x - y;
                let on_edge = x == 0 || y == 0 || z == 0;
                let h = match (on_edge, x.max(y).max(z)) {
                    (false, _) => 5,
                    (true, 4) => 10,
                    (true, 3) => 7,
                    _ => 6,
                };
                points.push(LatticePoint::xy(x, y));
                heights.push(h);
            }
        }
        Self { points, heights }
    }

    pub fn with_uniform_height(mut self, h: i64) -> Self {
        self.heights.iter_mut().for_each(|x| *x = h);
        self
    }

    /// Overwrite the height of the points interior to the facet.
    pub fn with_interior_height(mut self, h: i64) -> Self {
        for (p, x) in self.points.iter().zip(self.heights.iter_mut()) {
            let (a, b) = (p.x(), p.y());
            if a > 0 && b > 0 && a + b < 4 {
                *x = h;
            }
        }
        self
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn subdivide(&self) -> Result<RegularSubdivision> {
        regular_subdivision(&self.points, &self.heights)
    }

    /// Star fan of the induced function around `vertex`.
    pub fn star_fan_at(&self, vertex: &LatticePoint) -> Result<FanPL> {
        let i = self.index_of(vertex).ok_or_else(|| {
            Error::InvalidArgument(format!("{vertex} is not a point of the table"))
        })?;
        star_fan(&self.points, &self.heights, &self.subdivide()?, i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[(i64, i64)]) -> LatticePolytope {
        LatticePolytope::polygon_from_xy(v).unwrap()
    }

    fn a2() -> LatticePolytope {
        poly(&[(0, 0), (-1, 1), (-1, 2), (0, 3), (1, 3), (1, 0)])
    }
    fn a3() -> LatticePolytope {
        poly(&[(0, 0), (-1, 0), (-1, 3), (0, 4), (1, 4), (1, 1)])
    }
    fn a4() -> LatticePolytope {
        poly(&[(0, 0), (-1, 0), (-1, 1), (0, 2), (1, 2), (1, 1)])
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(
            unimodular_triangulate(&poly(&[(0, 0), (1, 0), (0, 1)]))
                .unwrap()
                .triangles
                .len(),
            1
        );
        assert_eq!(unimodular_triangulate(&a4()).unwrap().triangles.len(), 6);
        assert_eq!(unimodular_triangulate(&a3()).unwrap().triangles.len(), 14);
        assert_eq!(unimodular_triangulate(&a2()).unwrap().triangles.len(), 10);
    }

    #[test]
    fn triangulations_are_unimodular_and_cover() {
        for p in [a2(), a3(), a4(), poly(&[(0, 0), (4, 0), (0, 4)])] {
            for order in [PullingOrder::Forward, PullingOrder::Reverse] {
                let t = triangulate_with(&p, order).unwrap();
                assert_eq!(t.points.len(), p.lattice_points().unwrap().len());
                for tri in &t.triangles {
                    let d = turn(&t.points[tri[0]], &t.points[tri[1]], &t.points[tri[2]]).unwrap();
                    assert_eq!(d, 1);
                }
                assert_eq!(t.triangles.len() as u64, p.normalized_area().unwrap());
                let used: BTreeSet<usize> = t.triangles.iter().flatten().copied().collect();
                assert_eq!(used.len(), t.points.len());
                // each interior edge is shared by exactly two triangles
                for e in &t.edges {
                    let k = t
                        .triangles
                        .iter()
                        .filter(|tr| tr.contains(&e[0]) && tr.contains(&e[1]))
                        .count();
                    assert!(k == 1 || k == 2);
                }
            }
        }
    }

    #[test]
    fn profiles() {
        assert_eq!(
            simplex_profile(&LatticePolytope::origin(0)).unwrap(),
            SimplexProfile {
                c0: 1,
                c1: 0,
                c2: 0
            }
        );
        let seg = LatticePolytope::segment_of_length(3).unwrap();
        assert_eq!(
            simplex_profile(&seg).unwrap(),
            SimplexProfile {
                c0: 2,
                c1: 3,
                c2: 0
            }
        );
        assert_eq!(
            simplex_profile(&a2()).unwrap(),
            SimplexProfile {
                c0: 2,
                c1: 11,
                c2: 10
            }
        );
        assert_eq!(
            simplex_profile(&a3()).unwrap(),
            SimplexProfile {
                c0: 3,
                c1: 16,
                c2: 14
            }
        );
        assert_eq!(
            simplex_profile(&a4()).unwrap(),
            SimplexProfile {
                c0: 1,
                c1: 6,
                c2: 6
            }
        );
    }

    #[test]
    fn explicit_profile_matches_for_segments() {
        let seg = LatticePolytope::segment(LatticePoint::xy(0, 0), LatticePoint::xy(2, 4)).unwrap();
        let t = unimodular_triangulate(&seg).unwrap();
        assert_eq!(
            t.interior_profile(&seg).unwrap(),
            SimplexProfile {
                c0: 1,
                c1: 2,
                c2: 0
            }
        );
    }

    #[test]
    fn square_with_one_lifted_corner() {
        let pts: Vec<LatticePoint> = [(0, 0), (1, 0), (0, 1), (1, 1)]
            .iter()
            .copied()
            .map(Into::into)
            .collect();
        let sub = regular_subdivision(&pts, &[0, 0, 0, 1]).unwrap();
        assert_eq!(sub.cells.len(), 2);
        assert!(sub.all_unimodular);
        // the diagonal (1,0)-(0,1) separates the lifted corner
        for c in &sub.cells {
            assert!(c.vertices.contains(&1) && c.vertices.contains(&2));
        }
    }

    #[test]
    fn equal_heights_give_one_cell() {
        let pts = poly(&[(0, 0), (4, 0), (0, 4)]).lattice_points().unwrap();
        let sub = regular_subdivision(&pts, &vec![3; pts.len()]).unwrap();
        assert_eq!(sub.cells.len(), 1);
        assert_eq!(sub.cells[0].vertices.len(), 3);
        assert!(!sub.all_unimodular);
    }

    #[test]
    fn subdivision_input_errors() {
        let pts: Vec<LatticePoint> = [(0, 0), (1, 0), (0, 1), (1, 0)]
            .iter()
            .copied()
            .map(Into::into)
            .collect();
        assert!(regular_subdivision(&pts, &[0, 0, 0, 0]).is_err());
        let line: Vec<LatticePoint> = [(0, 0), (1, 0), (2, 0)]
            .iter()
            .copied()
            .map(Into::into)
            .collect();
        assert!(regular_subdivision(&line, &[0, 1, 0]).is_err());
        assert!(regular_subdivision(&line[..2], &[0]).is_err());
    }

    #[test]
    fn projective_plane_fan() {
        let rays = vec![[1, 0], [0, 1], [-1, -1]];
        let f = FanPL::from_ray_values(rays.clone(), vec![0, 0, 1]).unwrap();
        let p = newton_polytope_of_pl(&f).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.normalized_area().unwrap(), 1);
        let zero = FanPL::zero(rays).unwrap();
        assert_eq!(newton_polytope_of_pl(&zero).unwrap().dim(), 0);
    }

    #[test]
    fn non_convex_function_is_named() {
        let rays = vec![[1, 0], [0, 1], [-1, 0], [0, -1]];
        let f = FanPL::from_ray_values(rays, vec![0, -1, 0, 0]).unwrap();
        assert_eq!(newton_polytope_of_pl(&f), Err(Error::NonConvex(1, 2)));
    }

    #[test]
    fn fan_validation() {
        assert!(FanPL::zero(vec![[1, 0], [0, 1]]).is_err());
        assert!(FanPL::zero(vec![[1, 0], [-1, 0], [0, 1]]).is_err());
        assert!(FanPL::zero(vec![[2, 0], [0, 1], [-1, -1]]).is_err());
        // two full turns
        assert!(FanPL::zero(vec![
            [1, 0],
            [0, 1],
            [-1, 0],
            [0, -1],
            [1, 0],
            [0, 1],
            [-1, 0],
            [0, -1]
        ])
        .is_err());
        assert!(FanPL::new(vec![[1, 0], [0, 1], [-1, -1]], vec![[0, 0], [1, 0], [0, 0]]).is_err());
        assert!(FanPL::from_ray_values(vec![[1, 0], [1, 2], [-1, -1]], vec![0, 0, 0]).is_err());
    }

    #[test]
    fn facet_table_gives_sixteen_unimodular_triangles() {
        let t = HeightTable::facet();
        assert_eq!(t.points.len(), 15);
        let sub = t.subdivide().unwrap();
        assert_eq!(sub.cells.len(), 16);
        assert!(sub.all_unimodular);
        let flat = HeightTable::facet()
            .with_uniform_height(0)
            .subdivide()
            .unwrap();
        assert_eq!(flat.cells.len(), 1);
        let raised = HeightTable::facet()
            .with_interior_height(20)
            .subdivide()
            .unwrap();
        assert!(!raised.all_unimodular);
        assert_eq!(raised.unused.len(), 3);
    }

    #[test]
    fn interior_vertex_newton_polytope() {
        let t = HeightTable::facet();
        let f = t.star_fan_at(&LatticePoint::xy(1, 1)).unwrap();
        assert_eq!(f.rays().len(), 6);
        let p = newton_polytope_of_pl(&f).unwrap();
        assert_eq!(p.normalized_area().unwrap(), 6);
        assert!(p.equal_up_to_translation(&a4()).unwrap());
        assert!(t.star_fan_at(&LatticePoint::xy(9, 9)).is_err());
    }
}
