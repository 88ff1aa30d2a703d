//! Integer lattice geometry in rank at most two.
//!
//! A [`LatticePolytope`] is a point, a segment or a strictly convex polygon
//! with integer vertices. Polygons are stored counter-clockwise starting at
//! their lexicographically smallest vertex, so structural equality is
//! equality of polytopes. All arithmetic is checked; overflow surfaces as
//! [`Error::Overflow`].

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    coords: Vec<i64>,
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn xy(x: i64, y: i64) -> Self {
        Self { coords: vec![x, y] }
    }

    /// The origin of `Z^rank`. Rank 0 is the marker used for the dual of a
    /// top-dimensional cell.
    pub fn origin(rank: usize) -> Self {
        Self {
            coords: vec![0; rank],
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub(crate) fn x(&self) -> i64 {
        self.coords[0]
    }

    pub(crate) fn y(&self) -> i64 {
        self.coords[1]
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.checked_sub(b))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.checked_add(b))
    }

    pub fn checked_scale(&self, n: i64) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|&c| c.checked_mul(n).ok_or(Error::Overflow("point scaling")))
            .collect::<Result<_>>()?;
        Ok(Self { coords })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::InvalidArgument(format!(
                "rank mismatch: {} vs {}",
                self.rank(),
                other.rank()
            )));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow("point arithmetic")))
            .collect::<Result<_>>()?;
        Ok(Self { coords })
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self::xy(x, y)
    }
}

/// Gcd of the absolute values of the entries; zero only for the zero vector.
pub fn content(v: &[i64]) -> u64 {
    v.iter().fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()))
}

pub(crate) fn checked_cross(a: (i64, i64), b: (i64, i64)) -> Result<i64> {
    let l =
        a.0.checked_mul(b.1)
            .ok_or(Error::Overflow("cross product"))?;
    let r =
        a.1.checked_mul(b.0)
            .ok_or(Error::Overflow("cross product"))?;
    l.checked_sub(r).ok_or(Error::Overflow("cross product"))
}

/// Orientation of the triple `(o, a, b)`: positive for a left turn.
pub(crate) fn turn(o: &LatticePoint, a: &LatticePoint, b: &LatticePoint) -> Result<i64> {
    let da = (
        a.x().checked_sub(o.x()).ok_or(Error::Overflow("turn"))?,
        a.y().checked_sub(o.y()).ok_or(Error::Overflow("turn"))?,
    );
    let db = (
        b.x().checked_sub(o.x()).ok_or(Error::Overflow("turn"))?,
        b.y().checked_sub(o.y()).ok_or(Error::Overflow("turn"))?,
    );
    checked_cross(da, db)
}

/// Indices of the vertices of the convex hull of a planar point set,
/// counter-clockwise from the lexicographically smallest point. Points in the
/// relative interior of hull edges are not reported. Collinear input yields
/// the two extreme points; a single distinct point yields one index.
pub fn convex_hull_indices(points: &[LatticePoint]) -> Result<Vec<usize>> {
    if points.iter().any(|p| p.rank() != 2) {
        return Err(Error::InvalidArgument(
            "convex hull needs rank-2 points".into(),
        ));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    order.dedup_by(|a, b| points[*a] == points[*b]);
    if order.len() <= 2 {
        return Ok(order);
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2
            && turn(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            )? <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2
            && turn(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            )? <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && points[lower[0]] == points[lower[1]] {
        lower.pop();
    }
    Ok(lower)
}

/// A lattice point, segment or polygon.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
}

impl LatticePolytope {
    pub fn point(p: LatticePoint) -> Self {
        Self {
            dim: 0,
            vertices: vec![p],
        }
    }

    pub fn origin(rank: usize) -> Self {
        Self::point(LatticePoint::origin(rank))
    }

    pub fn segment(a: LatticePoint, b: LatticePoint) -> Result<Self> {
        if a.rank() != b.rank() || !(1..=2).contains(&a.rank()) {
            return Err(Error::InvalidPolytope(format!(
                "segment endpoints {a} and {b} must share rank 1 or 2"
            )));
        }
        if a == b {
            return Err(Error::InvalidPolytope(format!(
                "segment endpoints coincide at {a}"
            )));
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(Self {
            dim: 1,
            vertices: vec![a, b],
        })
    }

    /// The segment `[0, length]` in `Z^1`.
    pub fn segment_of_length(length: u64) -> Result<Self> {
        let l = i64::try_from(length).map_err(|_| Error::Overflow("segment length"))?;
        Self::segment(LatticePoint::new(vec![0]), LatticePoint::new(vec![l]))
    }

    /// A strictly convex polygon. Either orientation is accepted and
    /// normalized to counter-clockwise; collinear consecutive vertices,
    /// repeated vertices and non-convex vertex sequences are rejected.
    pub fn polygon(vertices: Vec<LatticePoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolytope(format!(
                "polygon needs at least 3 vertices, got {n}"
            )));
        }
        if let Some(p) = vertices.iter().find(|p| p.rank() != 2) {
            return Err(Error::InvalidPolytope(format!(
                "polygon vertex {p} is not in Z^2"
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i] == vertices[j] {
                    return Err(Error::InvalidPolytope(format!(
                        "repeated vertex {}",
                        vertices[i]
                    )));
                }
            }
        }
        let mut vertices = vertices;
        if signed_double_area(&vertices)? < 0 {
            vertices.reverse();
        }
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            for (j, c) in vertices.iter().enumerate() {
                if j == i || j == (i + 1) % n {
                    continue;
                }
                let t = turn(a, b, c)?;
                if t == 0 && (j == (i + 2) % n || (j + 1) % n == i) {
                    return Err(Error::InvalidPolytope(format!(
                        "collinear consecutive vertices around {a}-{b}"
                    )));
                }
                if t <= 0 {
                    return Err(Error::InvalidPolytope(format!(
                        "vertex {c} is not strictly left of edge {a}-{b}; polygon is not strictly convex"
                    )));
                }
            }
        }
        let start = (0..n)
            .min_by(|&i, &j| vertices[i].cmp(&vertices[j]))
            .unwrap_or(0);
        vertices.rotate_left(start);
        Ok(Self { dim: 2, vertices })
    }

    pub fn polygon_from_xy(vertices: &[(i64, i64)]) -> Result<Self> {
        Self::polygon(vertices.iter().copied().map(LatticePoint::from).collect())
    }

    /// The convex hull of a planar point set, as a point, segment or polygon.
    pub fn hull_of(points: &[LatticePoint]) -> Result<Self> {
        let hull = convex_hull_indices(points)?;
        match hull.len() {
            0 => Err(Error::InvalidPolytope("hull of an empty point set".into())),
            1 => Ok(Self::point(points[hull[0]].clone())),
            2 => Self::segment(points[hull[0]].clone(), points[hull[1]].clone()),
            _ => Self::polygon(hull.into_iter().map(|i| points[i].clone()).collect()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rank of the ambient lattice.
    pub fn rank(&self) -> usize {
        self.vertices[0].rank()
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    fn require_dim(&self, expected: usize) -> Result<()> {
        if self.dim != expected {
            return Err(Error::WrongDimension {
                expected,
                got: self.dim,
            });
        }
        Ok(())
    }

    /// Twice the Euclidean area: the number of triangles in any unimodular
    /// triangulation.
    pub fn normalized_area(&self) -> Result<u64> {
        self.require_dim(2)?;
        let a = signed_double_area(&self.vertices)?;
        Ok(a.unsigned_abs())
    }

    pub fn boundary_lattice_count(&self) -> Result<u64> {
        self.require_dim(2)?;
        let n = self.vertices.len();
        let mut total = 0u64;
        for i in 0..n {
            let e = self.vertices[(i + 1) % n].checked_sub(&self.vertices[i])?;
            total = total
                .checked_add(content(e.coords()))
                .ok_or(Error::Overflow("boundary count"))?;
        }
        Ok(total)
    }

    /// Interior lattice points, from Pick's theorem.
    pub fn interior_lattice_count(&self) -> Result<u64> {
        let f = self.normalized_area()?;
        let b = self.boundary_lattice_count()?;
        Ok((f + 2 - b) / 2)
    }

    /// Lattice length of a segment.
    pub fn lattice_length(&self) -> Result<u64> {
        self.require_dim(1)?;
        Ok(content(
            self.vertices[1].checked_sub(&self.vertices[0])?.coords(),
        ))
    }

    /// Lattice points of `n·P`, or of its relative interior. The relative
    /// interior of a point is the point itself.
    pub fn enumerate_dilate(&self, n: u64, interior_only: bool) -> Result<Vec<LatticePoint>> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "dilation factor must be positive".into(),
            ));
        }
        let n = i64::try_from(n).map_err(|_| Error::Overflow("dilation factor"))?;
        match self.dim {
            0 => Ok(vec![self.vertices[0].checked_scale(n)?]),
            1 => {
                let a = self.vertices[0].checked_scale(n)?;
                let edge = self.vertices[1].checked_sub(&self.vertices[0])?;
                let len = content(edge.coords()) as i64;
                let step = LatticePoint::new(edge.coords().iter().map(|c| c / len).collect());
                let steps = len
                    .checked_mul(n)
                    .ok_or(Error::Overflow("segment dilation"))?;
                let range = if interior_only {
                    1..steps
                } else {
                    0..steps + 1
                };
                range
                    .map(|k| step.checked_scale(k).and_then(|s| a.checked_add(&s)))
                    .collect()
            }
            _ => {
                let scaled: Vec<LatticePoint> = self
                    .vertices
                    .iter()
                    .map(|v| v.checked_scale(n))
                    .collect::<Result<_>>()?;
                let xmin = scaled.iter().map(|p| p.x()).min().unwrap_or(0);
                let xmax = scaled.iter().map(|p| p.x()).max().unwrap_or(0);
                let ymin = scaled.iter().map(|p| p.y()).min().unwrap_or(0);
                let ymax = scaled.iter().map(|p| p.y()).max().unwrap_or(0);
                let mut out = Vec::new();
                for x in xmin..=xmax {
                    for y in ymin..=ymax {
                        let q = LatticePoint::xy(x, y);
                        if polygon_contains(&scaled, &q, interior_only)? {
                            out.push(q);
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn lattice_points(&self) -> Result<Vec<LatticePoint>> {
        self.enumerate_dilate(1, false)
    }

    pub fn translated(&self, offset: &LatticePoint) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.checked_add(offset))
            .collect::<Result<_>>()?;
        Ok(Self {
            dim: self.dim,
            vertices,
        })
    }

    /// Translate so that the lexicographically smallest vertex is the origin.
    pub fn normalized_translation(&self) -> Result<Self> {
        let min = self
            .vertices
            .iter()
            .min()
            .cloned()
            .unwrap_or_else(|| LatticePoint::origin(0));
        let neg = LatticePoint::origin(min.rank()).checked_sub(&min)?;
        self.translated(&neg)
    }

    pub fn equal_up_to_translation(&self, other: &Self) -> Result<bool> {
        if self.dim != other.dim || self.rank() != other.rank() {
            return Ok(false);
        }
        Ok(self.normalized_translation()? == other.normalized_translation()?)
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn signed_double_area(vertices: &[LatticePoint]) -> Result<i64> {
    let n = vertices.len();
    let mut acc = 0i64;
    for i in 0..n {
        let a = &vertices[i];
        let b = &vertices[(i + 1) % n];
        let c = checked_cross((a.x(), a.y()), (b.x(), b.y()))?;
        acc = acc.checked_add(c).ok_or(Error::Overflow("shoelace"))?;
    }
    Ok(acc)
}

/// Containment test against a counter-clockwise convex polygon.
pub(crate) fn polygon_contains(
    ccw: &[LatticePoint],
    q: &LatticePoint,
    strict: bool,
) -> Result<bool> {
    let n = ccw.len();
    for i in 0..n {
        let t = turn(&ccw[i], &ccw[(i + 1) % n], q)?;
        if t < 0 || (strict && t == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}
