//! Target surfaces, divisor classes and their Newton polygons.
//!
//! Coefficient conventions:
//! - `Plane`: `(d)` for `dL`.
//! - `BlownPlane(k)`: `(d; d_1, ..., d_k)` for `dL - d_1 E_1 - ... - d_k E_k`.
//! - `Hirzebruch(s)`: `(a; b)` for `aF + bE`, with `F^2 = 0`, `E^2 = -s`, `F.E = 1`.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("class has {got} coefficients, surface basis has {expected}")]
    BasisMismatch { expected: usize, got: usize },
    #[error("{0} point conditions; need at least one")]
    NoPointConditions(i64),
    #[error("cremona reduction needs k >= 3 blown-up points")]
    CremonaNeedsThreePoints,
    #[error("cremona reduction needs d > 0 and every d_i > 0")]
    NonPositiveCoefficients,
    #[error("cremona step produced degree {0}")]
    CremonaDegenerate(i64),
    #[error("surface is not toric")]
    NotToric,
    #[error("negative multiplicity {0}")]
    NegativeMultiplicity(i64),
    #[error("non-positive degree {0}")]
    NonPositiveDegree(i64),
    #[error("chops at E_{i} and E_{j} overlap")]
    OverlappingChops { i: usize, j: usize },
    #[error("need a >= s*b >= 0, got a = {a}, b = {b}, s = {s}")]
    NotNef { a: i64, b: i64, s: u32 },
    #[error("polygon needs at least three non-collinear vertices")]
    Degenerate,
    #[error("vertices are not a strictly convex counterclockwise cycle")]
    NotConvex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    Plane,
    BlownPlane { k: u32 },
    Hirzebruch { s: u32 },
}

impl Surface {
    pub fn basis_len(&self) -> usize {
        match *self {
            Surface::Plane => 1,
            Surface::BlownPlane { k } => 1 + k as usize,
            Surface::Hirzebruch { .. } => 2,
        }
    }

    /// Toric targets have a Newton polygon for every nef class.
    pub fn is_toric(&self) -> bool {
        match *self {
            Surface::Plane | Surface::Hirzebruch { .. } => true,
            Surface::BlownPlane { k } => k <= 3,
        }
    }

    /// Toric Del Pezzo: lattice-path totals are certified curve counts here.
    pub fn is_toric_del_pezzo(&self) -> bool {
        match *self {
            Surface::Plane => true,
            Surface::BlownPlane { k } => k <= 3,
            Surface::Hirzebruch { s } => s <= 1,
        }
    }

    fn check(&self, d: &DivisorClass) -> Result<(), GeometryError> {
        if d.0.len() == self.basis_len() {
            Ok(())
        } else {
            Err(GeometryError::BasisMismatch { expected: self.basis_len(), got: d.0.len() })
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Plane => write!(f, "plane"),
            Surface::BlownPlane { k } => write!(f, "blown_plane:{k}"),
            Surface::Hirzebruch { s } => write!(f, "hirzebruch:{s}"),
        }
    }
}

/// Integer coefficients of a class in the surface basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn new(coeffs: impl Into<Vec<i64>>) -> Self {
        DivisorClass(coeffs.into())
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn scaled(&self, n: i64) -> DivisorClass {
        DivisorClass(self.0.iter().map(|c| c * n).collect())
    }
}

pub fn intersect(d1: &DivisorClass, d2: &DivisorClass, s: &Surface) -> Result<i64, GeometryError> {
    s.check(d1)?;
    s.check(d2)?;
    let (a, b) = (d1.coeffs(), d2.coeffs());
    Ok(match *s {
        Surface::Plane => a[0] * b[0],
        Surface::BlownPlane { .. } => a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>(),
        Surface::Hirzebruch { s } => a[0] * b[1] + a[1] * b[0] - s as i64 * a[1] * b[1],
    })
}

/// `D . c1(S)`.
pub fn c1_pairing(d: &DivisorClass, s: &Surface) -> Result<i64, GeometryError> {
    s.check(d)?;
    let c = d.coeffs();
    Ok(match *s {
        Surface::Plane => 3 * c[0],
        Surface::BlownPlane { .. } => 3 * c[0] - c[1..].iter().sum::<i64>(),
        Surface::Hirzebruch { s } => 2 * c[0] + (2 - s as i64) * c[1],
    })
}

/// Number of generic points a genus-zero curve in `nD` is required to pass through.
pub fn point_conditions(d: &DivisorClass, s: &Surface, n: i64) -> Result<i64, GeometryError> {
    let points = n * c1_pairing(d, s)? - 1;
    if points <= 0 {
        return Err(GeometryError::NoPointConditions(points));
    }
    Ok(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    /// `D.c1 > 2`.
    StrictlyAdmissible,
    /// `D.c1 = 2` and `D^2 > 0`.
    BoundaryAdmissible,
    /// `D.c1 = 1` and `D^2 > 0`; the growth law additionally needs `GW_D > 1`.
    RemarkCase,
    Inadmissible,
}

/// Numeric part of the growth-law hypotheses. Non-vanishing of `GW_D` is not
/// decided here and has to come from an actual count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibilityVerdict {
    pub kind: Admissibility,
    pub c1: i64,
    pub self_intersection: i64,
}

impl AdmissibilityVerdict {
    pub const NOTE: &'static str = "GW_D != 0 is not decided by this predicate; establish it by counting";
}

pub fn admissible(d: &DivisorClass, s: &Surface) -> Result<AdmissibilityVerdict, GeometryError> {
    let c1 = c1_pairing(d, s)?;
    let sq = intersect(d, d, s)?;
    let kind = match c1 {
        c if c > 2 => Admissibility::StrictlyAdmissible,
        2 if sq > 0 => Admissibility::BoundaryAdmissible,
        1 if sq > 0 => Admissibility::RemarkCase,
        _ => Admissibility::Inadmissible,
    };
    Ok(AdmissibilityVerdict { kind, c1, self_intersection: sq })
}

/// Indices of the three largest multiplicities, ties to the smallest index.
fn top_three(mults: &[i64]) -> [usize; 3] {
    let mut idx: Vec<usize> = (0..mults.len()).collect();
    idx.sort_by_key(|&i| (core::cmp::Reverse(mults[i]), i));
    [idx[0], idx[1], idx[2]]
}

/// Applies quadratic transformations on the three largest multiplicities until
/// `d >= d_i + d_j + d_l` for every triple.
pub fn cremona_reduce(d: &DivisorClass, s: &Surface) -> Result<DivisorClass, GeometryError> {
    let Surface::BlownPlane { k } = *s else {
        return Err(GeometryError::CremonaNeedsThreePoints);
    };
    if k < 3 {
        return Err(GeometryError::CremonaNeedsThreePoints);
    }
    s.check(d)?;
    let mut c = d.0.clone();
    if c.iter().any(|&x| x <= 0) {
        return Err(GeometryError::NonPositiveCoefficients);
    }
    loop {
        let [i, j, l] = top_three(&c[1..]);
        let (mi, mj, ml) = (c[1 + i], c[1 + j], c[1 + l]);
        let deg = c[0];
        if deg >= mi + mj + ml {
            return Ok(DivisorClass(c));
        }
        let next = 2 * deg - mi - mj - ml;
        if next <= 0 {
            return Err(GeometryError::CremonaDegenerate(next));
        }
        c[0] = next;
        c[1 + i] = deg - mj - ml;
        c[1 + j] = deg - mi - ml;
        c[1 + l] = deg - mi - mj;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl core::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl core::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `(b - a) x (c - b)`: positive for a left turn at `b`.
pub fn turn(a: Point, b: Point, c: Point) -> i64 {
    let (u, v) = (b - a, c - b);
    u.x * v.y - u.y * v.x
}

/// Convex lattice polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

impl LatticePolygon {
    /// Validates a strictly convex counterclockwise vertex cycle.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::Degenerate);
        }
        for i in 0..n {
            if turn(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) <= 0 {
                return Err(GeometryError::NotConvex);
            }
        }
        let poly = LatticePolygon { vertices };
        // A star-shaped winding around twice also has only left turns.
        if poly.total_turning_is_one() {
            Ok(poly)
        } else {
            Err(GeometryError::NotConvex)
        }
    }

    /// Builds a polygon from a cycle that may repeat points or contain
    /// collinear runs, dropping both.
    pub fn from_cycle(points: &[Point]) -> Result<Self, GeometryError> {
        let mut v: Vec<Point> = Vec::with_capacity(points.len());
        for &p in points {
            if v.last() != Some(&p) {
                v.push(p);
            }
        }
        while v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        let mut changed = true;
        while changed && v.len() >= 3 {
            changed = false;
            let n = v.len();
            for i in 0..n {
                if turn(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) == 0 {
                    v.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        Self::new(v)
    }

    fn total_turning_is_one(&self) -> bool {
        // Edge directions of a simple convex polygon are sorted by angle once
        // around; count how often consecutive edges cross the positive x-axis.
        let n = self.vertices.len();
        let mut wraps = 0;
        for i in 0..n {
            let e1 = self.vertices[(i + 1) % n] - self.vertices[i];
            let e2 = self.vertices[(i + 2) % n] - self.vertices[(i + 1) % n];
            if half_plane(e1) > half_plane(e2) || (half_plane(e1) == half_plane(e2) && e1.x * e2.y - e1.y * e2.x < 0) {
                wraps += 1;
            }
        }
        wraps == 1
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Twice the Euclidean area.
    pub fn twice_area(&self) -> i64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.x * b.y - b.x * a.y
            })
            .sum()
    }

    /// Primitive edge directions and lattice lengths, one per edge, in vertex order.
    pub fn edges(&self) -> Vec<(Point, i64)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let e = self.vertices[(i + 1) % n] - self.vertices[i];
                let g = e.x.gcd(&e.y);
                (Point::new(e.x / g, e.y / g), g)
            })
            .collect()
    }

    pub fn boundary_lattice_count(&self) -> i64 {
        self.edges().iter().map(|&(_, l)| l).sum()
    }

    /// Boundary lattice points, counterclockwise from the first vertex.
    pub fn boundary_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for (i, (dir, len)) in self.edges().into_iter().enumerate() {
            let start = self.vertices[i];
            for t in 0..len {
                out.push(Point::new(start.x + t * dir.x, start.y + t * dir.y));
            }
        }
        out
    }

    pub fn contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| turn(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0)
    }

    fn bounding_box(&self) -> (Point, Point) {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        (
            Point::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            Point::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// All lattice points of the closed polygon, sorted by `(x, y)`.
    pub fn lattice_points(&self) -> Vec<Point> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                let p = Point::new(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Interior lattice points, counted directly rather than via Pick.
    pub fn interior_lattice_count(&self) -> i64 {
        self.lattice_points().len() as i64 - self.boundary_lattice_count()
    }

    pub fn translate(&self, by: Point) -> LatticePolygon {
        LatticePolygon { vertices: self.vertices.iter().map(|&p| p + by).collect() }
    }

    /// Image under `p -> m p + t` for `m` in `GL_2(Z)`; reorders to stay counterclockwise.
    pub fn transform(&self, m: [[i64; 2]; 2], t: Point) -> Result<LatticePolygon, GeometryError> {
        let mut v: Vec<Point> = self
            .vertices
            .iter()
            .map(|p| Point::new(m[0][0] * p.x + m[0][1] * p.y + t.x, m[1][0] * p.x + m[1][1] * p.y + t.y))
            .collect();
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] < 0 {
            v.reverse();
        }
        LatticePolygon::new(v)
    }
}

fn half_plane(p: Point) -> u8 {
    if p.y > 0 || (p.y == 0 && p.x > 0) {
        0
    } else {
        1
    }
}

/// Newton polygon of `D` on a toric surface.
pub fn polygon_of(d: &DivisorClass, s: &Surface) -> Result<LatticePolygon, GeometryError> {
    if !s.is_toric() {
        return Err(GeometryError::NotToric);
    }
    s.check(d)?;
    let c = d.coeffs();
    let p = Point::new;
    match *s {
        Surface::Plane => {
            let deg = c[0];
            if deg <= 0 {
                return Err(GeometryError::NonPositiveDegree(deg));
            }
            LatticePolygon::new(alloc::vec![p(0, 0), p(deg, 0), p(0, deg)])
        }
        Surface::BlownPlane { .. } => {
            let deg = c[0];
            if deg <= 0 {
                return Err(GeometryError::NonPositiveDegree(deg));
            }
            let mut m = [0i64; 3];
            for (slot, &mi) in m.iter_mut().zip(&c[1..]) {
                if mi < 0 {
                    return Err(GeometryError::NegativeMultiplicity(mi));
                }
                *slot = mi;
            }
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                if m[i] + m[j] > deg {
                    return Err(GeometryError::OverlappingChops { i: i + 1, j: j + 1 });
                }
            }
            // E_1 chops (0,0), E_2 chops (d,0), E_3 chops (0,d).
            let cycle =
                [p(m[0], 0), p(deg - m[1], 0), p(deg - m[1], m[1]), p(m[2], deg - m[2]), p(0, deg - m[2]), p(0, m[0])];
            LatticePolygon::from_cycle(&cycle)
        }
        Surface::Hirzebruch { s } => {
            let (a, b) = (c[0], c[1]);
            if b < 0 || a < s as i64 * b {
                return Err(GeometryError::NotNef { a, b, s });
            }
            let cycle = [p(0, 0), p(a, 0), p(a - s as i64 * b, b), p(0, b)];
            LatticePolygon::from_cycle(&cycle)
        }
    }
}
