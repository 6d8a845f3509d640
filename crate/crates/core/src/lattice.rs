//! Integral convex polygons, their normal fans, and intersection numbers of
//! torus-invariant divisors on the associated smooth toric surface.
//!
//! Everything here is exact integer arithmetic.
//!
//! Conventions: a [`Fan`] lists its rays counterclockwise starting from the
//! ray of smallest polar angle in `[0, 2pi)`. A [`DivisorData`] stores
//! `D = sum a_i V(rho_i)`, so the support function takes the value
//! `h(n(rho_i)) = -a_i` on the rays.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: i64 },
    #[error("polytope needs at least three vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polytope is degenerate (zero area)")]
    Degenerate,
    #[error("vertices are not in strictly convex position at vertex {0}")]
    NotConvex(usize),
    #[error("ray ({0}, {1}) is not primitive")]
    NotPrimitive(i64, i64),
    #[error("duplicate ray ({0}, {1})")]
    DuplicateRay(i64, i64),
    #[error("rays do not form a complete fan: consecutive rays {0} and {1} do not span a strongly convex cone")]
    NotComplete(usize, usize),
    #[error("fan is not smooth at cone ({0}, {1}): |det| = {2}")]
    NotSmooth(usize, usize, i64),
    #[error("fan does not refine the normal fan of the polytope: missing ray ({0}, {1})")]
    NotRefinement(i64, i64),
    #[error("divisors live on different fans")]
    FanMismatch,
    #[error("divisor has {found} coefficients, fan has {expected} rays")]
    LengthMismatch { expected: usize, found: usize },
    #[error("ray index {index} out of range for {len} rays")]
    RayIndex { index: usize, len: usize },
    #[error("no integral linear function matches the support function at ray {0}")]
    NonCartier(usize),
}

/// A point of the character lattice M = Z^2. Serializes as `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticePoint {
    pub a: i64,
    pub b: i64,
}

impl LatticePoint {
    pub const fn new(a: i64, b: i64) -> Self {
        LatticePoint { a, b }
    }

    /// The pairing with a vector of N.
    #[inline]
    pub fn dot(self, n: Ray) -> i64 {
        self.a * n.x + self.b * n.y
    }

    pub fn translate(self, v: LatticePoint) -> Self {
        LatticePoint::new(self.a + v.a, self.b + v.b)
    }
}

impl From<[i64; 2]> for LatticePoint {
    fn from([a, b]: [i64; 2]) -> Self {
        LatticePoint { a, b }
    }
}

impl From<LatticePoint> for [i64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.a, p.b]
    }
}

/// A primitive vector of N = Z^2. Serializes as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct Ray {
    x: i64,
    y: i64,
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[inline]
fn det(u: (i64, i64), v: (i64, i64)) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

impl Ray {
    pub fn new(x: i64, y: i64) -> Result<Ray, GeometryError> {
        if gcd(x, y) != 1 {
            return Err(GeometryError::NotPrimitive(x, y));
        }
        Ok(Ray { x, y })
    }

    /// The primitive vector pointing along `(x, y) != 0`.
    pub fn primitive(x: i64, y: i64) -> Ray {
        let g = gcd(x, y);
        assert!(g != 0, "zero vector has no direction");
        Ray { x: x / g, y: y / g }
    }

    pub fn x(self) -> i64 {
        self.x
    }

    pub fn y(self) -> i64 {
        self.y
    }

    fn pair(self) -> (i64, i64) {
        (self.x, self.y)
    }

    pub fn det(self, other: Ray) -> i64 {
        det(self.pair(), other.pair())
    }

    fn half(self) -> u8 {
        if self.y > 0 || (self.y == 0 && self.x > 0) {
            0
        } else {
            1
        }
    }

    /// Polar-angle order on `[0, 2pi)`.
    pub fn angle_cmp(self, other: Ray) -> Ordering {
        self.half()
            .cmp(&other.half())
            .then_with(|| 0.cmp(&self.det(other)))
    }
}

impl TryFrom<[i64; 2]> for Ray {
    type Error = GeometryError;
    fn try_from([x, y]: [i64; 2]) -> Result<Self, Self::Error> {
        Ray::new(x, y)
    }
}

impl From<Ray> for [i64; 2] {
    fn from(r: Ray) -> Self {
        [r.x, r.y]
    }
}

/// A 2-dimensional integral convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolytopeJson", into = "PolytopeJson")]
pub struct LatticePolytope {
    vertices: Vec<LatticePoint>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    vertices: Vec<LatticePoint>,
}

impl TryFrom<PolytopeJson> for LatticePolytope {
    type Error = GeometryError;
    fn try_from(j: PolytopeJson) -> Result<Self, Self::Error> {
        LatticePolytope::new(j.vertices)
    }
}

impl From<LatticePolytope> for PolytopeJson {
    fn from(p: LatticePolytope) -> Self {
        PolytopeJson {
            vertices: p.vertices,
        }
    }
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    (a.a - o.a) * (b.b - o.b) - (a.b - o.b) * (b.a - o.a)
}

impl LatticePolytope {
    /// Validate a vertex cycle. Clockwise input is reversed; degenerate,
    /// non-convex and collinear-consecutive inputs are rejected.
    pub fn new(mut vertices: Vec<LatticePoint>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        let signed = shoelace(&vertices);
        if signed == 0 {
            return Err(GeometryError::Degenerate);
        }
        if signed < 0 {
            vertices.reverse();
        }
        let k = vertices.len();
        for i in 0..k {
            let prev = vertices[(i + k - 1) % k];
            let next = vertices[(i + 1) % k];
            if cross(prev, vertices[i], next) <= 0 {
                return Err(GeometryError::NotConvex(i));
            }
        }
        Ok(LatticePolytope { vertices })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn translate(&self, v: LatticePoint) -> Self {
        LatticePolytope {
            vertices: self.vertices.iter().map(|p| p.translate(v)).collect(),
        }
    }

    /// The dilation `k * P`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k > 0);
        LatticePolytope {
            vertices: self
                .vertices
                .iter()
                .map(|p| LatticePoint::new(k * p.a, k * p.b))
                .collect(),
        }
    }

    pub fn contains(&self, m: LatticePoint) -> bool {
        let k = self.vertices.len();
        (0..k).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % k], m) >= 0)
    }

    /// Support function `h(n) = min over vertices of <m, n>`.
    pub fn support_value(&self, n: Ray) -> i64 {
        self.vertices.iter().map(|m| m.dot(n)).min().unwrap()
    }

    /// All lattice points, boundary included, sorted by `(a, b)`.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let (amin, amax) = minmax(self.vertices.iter().map(|v| v.a));
        let (bmin, bmax) = minmax(self.vertices.iter().map(|v| v.b));
        let mut out = Vec::new();
        for a in amin..=amax {
            for b in bmin..=bmax {
                let m = LatticePoint::new(a, b);
                if self.contains(m) {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Twice the Euclidean area.
    pub fn area2(&self) -> i64 {
        shoelace(&self.vertices)
    }

    /// Primitive inner edge normals, ordered counterclockwise.
    pub fn normal_fan(&self) -> Fan {
        let k = self.vertices.len();
        let rays = (0..k)
            .map(|i| {
                let (u, v) = (self.vertices[i], self.vertices[(i + 1) % k]);
                Ray::primitive(-(v.b - u.b), v.a - u.a)
            })
            .collect();
        Fan::new(rays).expect("normal fan of a convex polygon is complete")
    }

    /// The Hirzebruch (d, e, r) trapezoid with vertices
    /// `(0,0), (d,0), (d,e+rd), (0,e)`.
    pub fn hirzebruch(d: i64, e: i64, r: i64) -> Result<Self, GeometryError> {
        for (name, value) in [("d", d), ("e", e), ("r", r)] {
            if value < 1 {
                return Err(GeometryError::NonPositiveParameter { name, value });
            }
        }
        LatticePolytope::new(vec![
            LatticePoint::new(0, 0),
            LatticePoint::new(d, 0),
            LatticePoint::new(d, e + r * d),
            LatticePoint::new(0, e),
        ])
    }

    /// Recover `(d, e, r)` if this is a Hirzebruch trapezoid.
    pub fn as_hirzebruch(&self) -> Option<(i64, i64, i64)> {
        if self.vertices.len() != 4 {
            return None;
        }
        let set: BTreeSet<_> = self.vertices.iter().copied().collect();
        if !set.contains(&LatticePoint::new(0, 0)) {
            return None;
        }
        let d = self.vertices.iter().map(|v| v.a).max()?;
        let e = self
            .vertices
            .iter()
            .filter(|v| v.a == 0)
            .map(|v| v.b)
            .max()?;
        let top = self
            .vertices
            .iter()
            .filter(|v| v.a == d)
            .map(|v| v.b)
            .max()?;
        if d < 1 || e < 1 || (top - e) % d != 0 || top - e < d {
            return None;
        }
        let r = (top - e) / d;
        let candidate = LatticePolytope::hirzebruch(d, e, r).ok()?;
        let cset: BTreeSet<_> = candidate.vertices.iter().copied().collect();
        (cset == set).then_some((d, e, r))
    }
}

fn minmax(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

fn shoelace(v: &[LatticePoint]) -> i64 {
    let k = v.len();
    (0..k)
        .map(|i| {
            let (p, q) = (v[i], v[(i + 1) % k]);
            p.a * q.b - p.b * q.a
        })
        .sum()
}

/// A complete 2-dimensional fan given by its rays in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FanJson", into = "FanJson")]
pub struct Fan {
    rays: Vec<Ray>,
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    rays: Vec<Ray>,
}

impl TryFrom<FanJson> for Fan {
    type Error = GeometryError;
    fn try_from(j: FanJson) -> Result<Self, Self::Error> {
        Fan::new(j.rays)
    }
}

impl From<Fan> for FanJson {
    fn from(f: Fan) -> Self {
        FanJson { rays: f.rays }
    }
}

impl Fan {
    /// Sort rays by polar angle and check that consecutive rays span
    /// strongly convex cones covering the plane.
    pub fn new(mut rays: Vec<Ray>) -> Result<Fan, GeometryError> {
        rays.sort_by(|a, b| a.angle_cmp(*b));
        for w in rays.windows(2) {
            if w[0] == w[1] {
                return Err(GeometryError::DuplicateRay(w[0].x, w[0].y));
            }
        }
        let k = rays.len();
        if k < 3 {
            return Err(GeometryError::NotComplete(0, k.saturating_sub(1)));
        }
        for i in 0..k {
            let j = (i + 1) % k;
            if rays[i].det(rays[j]) <= 0 {
                return Err(GeometryError::NotComplete(i, j));
            }
        }
        Ok(Fan { rays })
    }

    /// The fan of the Hirzebruch surface with twist `r`:
    /// `(1,0), (0,1), (-1,0), (r,-1)`.
    pub fn hirzebruch(r: i64) -> Fan {
        Fan::new(vec![
            Ray::primitive(1, 0),
            Ray::primitive(0, 1),
            Ray::primitive(-1, 0),
            Ray::primitive(r, -1),
        ])
        .expect("Hirzebruch fan is complete")
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn index_of(&self, ray: Ray) -> Option<usize> {
        self.rays.iter().position(|&r| r == ray)
    }

    fn next(&self, i: usize) -> usize {
        (i + 1) % self.rays.len()
    }

    fn prev(&self, i: usize) -> usize {
        (i + self.rays.len() - 1) % self.rays.len()
    }

    fn check_index(&self, i: usize) -> Result<(), GeometryError> {
        if i < self.rays.len() {
            Ok(())
        } else {
            Err(GeometryError::RayIndex {
                index: i,
                len: self.rays.len(),
            })
        }
    }

    /// First cone whose generators fail to form a lattice basis.
    fn singular_cone(&self) -> Option<(usize, usize, i64)> {
        (0..self.rays.len()).find_map(|i| {
            let j = self.next(i);
            let d = self.rays[i].det(self.rays[j]);
            (d != 1).then_some((i, j, d))
        })
    }

    pub fn is_smooth(&self) -> bool {
        self.singular_cone().is_none()
    }

    fn require_smooth(&self) -> Result<(), GeometryError> {
        match self.singular_cone() {
            None => Ok(()),
            Some((i, j, d)) => Err(GeometryError::NotSmooth(i, j, d)),
        }
    }

    /// Minimal smooth refinement.
    ///
    /// Each cone `(u, v)` with `det(u, v) > 1` is resolved by repeatedly
    /// inserting the ray `w` with `det(u, w) = 1` closest to `v` inside the
    /// cone, i.e. the next boundary point of the convex hull of the nonzero
    /// lattice points of the cone.
    pub fn refine(&self) -> Fan {
        let mut out = Vec::with_capacity(self.rays.len());
        for i in 0..self.rays.len() {
            let mut u = self.rays[i];
            let v = self.rays[self.next(i)];
            out.push(u);
            while u.det(v) > 1 {
                let w = next_resolution_ray(u, v);
                out.push(w);
                u = w;
            }
        }
        Fan::new(out).expect("refinement keeps the fan complete")
    }

    /// Whether every ray of `other` is a ray of `self`.
    pub fn refines(&self, other: &Fan) -> bool {
        other.rays.iter().all(|r| self.rays.contains(r))
    }

    /// The integer `a` with `n' + n'' + a n(rho) = 0` for the neighbours
    /// `n', n''` of ray `i`; this is the self-intersection of `V(rho_i)`.
    pub fn ray_self_intersection(&self, i: usize) -> Result<i64, GeometryError> {
        self.check_index(i)?;
        self.require_smooth()?;
        let n = self.rays[i];
        let (p, q) = (self.rays[self.prev(i)], self.rays[self.next(i)]);
        let (sx, sy) = (p.x + q.x, p.y + q.y);
        // In a smooth fan the neighbour sum is an integer multiple of n.
        let b = if n.x != 0 { sx / n.x } else { sy / n.y };
        debug_assert_eq!((b * n.x, b * n.y), (sx, sy));
        Ok(-b)
    }
}

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn next_resolution_ray(u: Ray, v: Ray) -> Ray {
    let k = u.det(v);
    // w0 with det(u, w0) = u.x * w0.y - u.y * w0.x = 1.
    let (g, s, t) = extended_gcd(u.x, -u.y);
    debug_assert_eq!(g, 1);
    let w0 = (t, s);
    debug_assert_eq!(det(u.pair(), w0), 1);
    // w = w0 + t u has det(w, v) = det(w0, v) + t k; pick the smallest
    // non-negative value.
    let d0 = det(w0, v.pair());
    let shift = (-d0).div_euclid(k) + if (-d0).rem_euclid(k) == 0 { 0 } else { 1 };
    Ray::primitive(w0.0 + shift * u.x, w0.1 + shift * u.y)
}

/// A torus-invariant divisor `sum a_i V(rho_i)` on a fan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DivisorJson", into = "DivisorJson")]
pub struct DivisorData {
    fan: Fan,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct DivisorJson {
    rays: Vec<Ray>,
    coeffs: Vec<i64>,
}

impl TryFrom<DivisorJson> for DivisorData {
    type Error = GeometryError;
    fn try_from(j: DivisorJson) -> Result<Self, Self::Error> {
        // Keep the pairing of coefficients to rays through the canonical sort.
        if j.rays.len() != j.coeffs.len() {
            return Err(GeometryError::LengthMismatch {
                expected: j.rays.len(),
                found: j.coeffs.len(),
            });
        }
        let mut pairs: Vec<(Ray, i64)> = j.rays.into_iter().zip(j.coeffs).collect();
        pairs.sort_by(|a, b| a.0.angle_cmp(b.0));
        let fan = Fan::new(pairs.iter().map(|p| p.0).collect())?;
        DivisorData::new(fan, pairs.into_iter().map(|p| p.1).collect())
    }
}

impl From<DivisorData> for DivisorJson {
    fn from(d: DivisorData) -> Self {
        DivisorJson {
            rays: d.fan.rays,
            coeffs: d.coeffs,
        }
    }
}

impl DivisorData {
    pub fn new(fan: Fan, coeffs: Vec<i64>) -> Result<Self, GeometryError> {
        if coeffs.len() != fan.len() {
            return Err(GeometryError::LengthMismatch {
                expected: fan.len(),
                found: coeffs.len(),
            });
        }
        Ok(DivisorData { fan, coeffs })
    }

    pub fn zero(fan: &Fan) -> Self {
        DivisorData {
            fan: fan.clone(),
            coeffs: vec![0; fan.len()],
        }
    }

    /// The prime divisor `V(rho_i)`.
    pub fn prime(fan: &Fan, i: usize) -> Result<Self, GeometryError> {
        fan.check_index(i)?;
        let mut coeffs = vec![0; fan.len()];
        coeffs[i] = 1;
        Ok(DivisorData {
            fan: fan.clone(),
            coeffs,
        })
    }

    /// `D_P = -sum h_P(n(rho)) V(rho)` for a fan refining the normal fan of `P`.
    pub fn of_polytope(polytope: &LatticePolytope, fan: &Fan) -> Result<Self, GeometryError> {
        let normal = polytope.normal_fan();
        if let Some(r) = normal.rays.iter().find(|r| !fan.rays.contains(r)) {
            return Err(GeometryError::NotRefinement(r.x, r.y));
        }
        let coeffs = fan
            .rays
            .iter()
            .map(|&n| -polytope.support_value(n))
            .collect();
        Ok(DivisorData {
            fan: fan.clone(),
            coeffs,
        })
    }

    /// Divisor of zeros of the character `e(m)`: `sum max(<m, n(rho)>, 0) V(rho)`.
    pub fn zeros_of_character(fan: &Fan, m: LatticePoint) -> Self {
        let coeffs = fan.rays.iter().map(|&n| m.dot(n).max(0)).collect();
        DivisorData {
            fan: fan.clone(),
            coeffs,
        }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn same_fan(&self, other: &DivisorData) -> Result<(), GeometryError> {
        if self.fan == other.fan {
            Ok(())
        } else {
            Err(GeometryError::FanMismatch)
        }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &DivisorData, k: i64) -> Result<Self, GeometryError> {
        self.same_fan(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + k * b)
            .collect();
        Ok(DivisorData {
            fan: self.fan.clone(),
            coeffs,
        })
    }

    /// Support function value on ray `i`.
    fn h(&self, i: usize) -> i64 {
        -self.coeffs[i]
    }

    /// `(D; V(rho_i)) = -(hbar(n') + hbar(n''))` where `hbar = h - l` and
    /// `l` is linear, agreeing with `h` on the cone spanned by ray `i` and its
    /// successor.
    pub fn intersection_ray(&self, i: usize) -> Result<i64, GeometryError> {
        self.fan.check_index(i)?;
        self.fan.require_smooth()?;
        let j = self.fan.next(i);
        let prev = self.fan.prev(i);
        let (n, nn) = (self.fan.rays[i], self.fan.rays[j]);
        let det = n.det(nn);
        let (hi, hj) = (self.h(i), self.h(j));
        // Solve <l, n> = hi, <l, nn> = hj.
        let la = hi * nn.y - hj * n.y;
        let lb = n.x * hj - nn.x * hi;
        if la % det != 0 || lb % det != 0 {
            return Err(GeometryError::NonCartier(i));
        }
        let l = LatticePoint::new(la / det, lb / det);
        let hbar = |k: usize| self.h(k) - l.dot(self.fan.rays[k]);
        Ok(-(hbar(prev) + hbar(j)))
    }

    /// Intersection pairing `(self; other)`.
    pub fn pair(&self, other: &DivisorData) -> Result<i64, GeometryError> {
        self.same_fan(other)?;
        let mut total = 0;
        for (i, &c) in other.coeffs.iter().enumerate() {
            if c != 0 {
                total += c * self.intersection_ray(i)?;
            }
        }
        Ok(total)
    }

    /// Nakai check on a smooth complete toric surface: positive
    /// self-intersection and positive degree on every invariant curve.
    pub fn is_ample(&self) -> Result<bool, GeometryError> {
        for i in 0..self.fan.len() {
            if self.intersection_ray(i)? <= 0 {
                return Ok(false);
            }
        }
        Ok(self.pair(self)? > 0)
    }

    /// Lattice points of `{m : <m, n(rho)> >= -a_rho}`, the exponents of the
    /// global sections of `O(D)`, sorted by `(a, b)`.
    pub fn sections(&self) -> Vec<LatticePoint> {
        let rays = &self.fan.rays;
        let k = rays.len();
        let (mut amin, mut amax, mut bmin, mut bmax) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
        // Every vertex of the region is the intersection of two boundary lines.
        for i in 0..k {
            for j in i + 1..k {
                let (n, nn) = (rays[i], rays[j]);
                let det = n.det(nn);
                if det == 0 {
                    continue;
                }
                let (hi, hj) = (self.h(i), self.h(j));
                let na = hi * nn.y - hj * n.y;
                let nb = n.x * hj - nn.x * hi;
                amin = amin.min(floor_div(na, det));
                amax = amax.max(ceil_div(na, det));
                bmin = bmin.min(floor_div(nb, det));
                bmax = bmax.max(ceil_div(nb, det));
            }
        }
        let mut out = Vec::new();
        if amin > amax || bmin > bmax {
            return out;
        }
        for a in amin..=amax {
            for b in bmin..=bmax {
                let m = LatticePoint::new(a, b);
                if rays.iter().enumerate().all(|(i, &n)| m.dot(n) >= self.h(i)) {
                    out.push(m);
                }
            }
        }
        out
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -floor_div(-a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: i64, b: i64) -> LatticePoint {
        LatticePoint::new(a, b)
    }

    fn ray(x: i64, y: i64) -> Ray {
        Ray::new(x, y).unwrap()
    }

    fn unit_square() -> LatticePolytope {
        LatticePolytope::new(vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]).unwrap()
    }

    fn triangle() -> LatticePolytope {
        LatticePolytope::new(vec![pt(0, 0), pt(1, 0), pt(0, 1)]).unwrap()
    }

    #[test]
    fn hirzebruch_vertices() {
        let p = LatticePolytope::hirzebruch(1, 1, 1).unwrap();
        assert_eq!(p.vertices(), &[pt(0, 0), pt(1, 0), pt(1, 2), pt(0, 1)]);
        let p = LatticePolytope::hirzebruch(1, 1, 2).unwrap();
        assert_eq!(p.vertices(), &[pt(0, 0), pt(1, 0), pt(1, 3), pt(0, 1)]);
        let p = LatticePolytope::hirzebruch(2, 1, 1).unwrap();
        assert_eq!(p.vertices(), &[pt(0, 0), pt(2, 0), pt(2, 3), pt(0, 1)]);
        assert_eq!(p.as_hirzebruch(), Some((2, 1, 1)));
        assert_eq!(unit_square().as_hirzebruch(), None);
        assert!(matches!(
            LatticePolytope::hirzebruch(0, 1, 1),
            Err(GeometryError::NonPositiveParameter { name: "d", .. })
        ));
    }

    #[test]
    fn polytope_validation() {
        assert_eq!(
            LatticePolytope::new(vec![pt(0, 0), pt(1, 1)]).unwrap_err(),
            GeometryError::TooFewVertices(2)
        );
        assert_eq!(
            LatticePolytope::new(vec![pt(0, 0), pt(1, 1), pt(2, 2)]).unwrap_err(),
            GeometryError::Degenerate
        );
        assert!(matches!(
            LatticePolytope::new(vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(0, 1)]),
            Err(GeometryError::NotConvex(_))
        ));
        let cw = LatticePolytope::new(vec![pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)]).unwrap();
        assert_eq!(cw.area2(), 2);
    }

    #[test]
    fn lattice_point_listing() {
        let p = LatticePolytope::hirzebruch(1, 1, 1).unwrap();
        assert_eq!(
            p.lattice_points(),
            vec![pt(0, 0), pt(0, 1), pt(1, 0), pt(1, 1), pt(1, 2)]
        );
        assert_eq!(unit_square().lattice_points().len(), 4);
        assert_eq!(
            LatticePolytope::hirzebruch(2, 1, 1)
                .unwrap()
                .lattice_points()
                .len(),
            9
        );
    }

    #[test]
    fn areas() {
        assert_eq!(unit_square().area2(), 2);
        assert_eq!(LatticePolytope::hirzebruch(1, 1, 1).unwrap().area2(), 3);
    }

    #[test]
    fn normal_fans() {
        assert_eq!(
            unit_square().normal_fan().rays(),
            &[ray(1, 0), ray(0, 1), ray(-1, 0), ray(0, -1)]
        );
        assert_eq!(
            LatticePolytope::hirzebruch(1, 1, 3)
                .unwrap()
                .normal_fan()
                .rays(),
            &[ray(1, 0), ray(0, 1), ray(-1, 0), ray(3, -1)]
        );
        assert_eq!(
            triangle().normal_fan().rays(),
            &[ray(1, 0), ray(0, 1), ray(-1, -1)]
        );
    }

    #[test]
    fn refinement_examples() {
        let h = Fan::hirzebruch(2);
        assert!(h.is_smooth());
        assert_eq!(h.refine(), h);
        let sq = unit_square().normal_fan();
        assert_eq!(sq.refine(), sq);

        let wps = Fan::new(vec![ray(1, 0), ray(0, 1), ray(-1, -2)]).unwrap();
        assert!(!wps.is_smooth());
        let refined = wps.refine();
        assert_eq!(
            refined.rays(),
            &[ray(1, 0), ray(0, 1), ray(-1, -2), ray(0, -1)]
        );
        assert!(refined.is_smooth());

        // det 3 cones on both sides of (1,3).
        let f = Fan::new(vec![ray(1, 0), ray(1, 3), ray(-1, 0), ray(0, -1)]).unwrap();
        assert_eq!(
            f.refine().rays(),
            &[
                ray(1, 0),
                ray(1, 1),
                ray(1, 2),
                ray(1, 3),
                ray(0, 1),
                ray(-1, 0),
                ray(0, -1)
            ]
        );
    }

    #[test]
    fn fan_validation() {
        assert!(matches!(
            Fan::new(vec![ray(1, 0), ray(0, 1), ray(-1, 1)]),
            Err(GeometryError::NotComplete(..))
        ));
        assert!(matches!(
            Fan::new(vec![ray(1, 0), ray(1, 0), ray(-1, 1), ray(0, -1)]),
            Err(GeometryError::DuplicateRay(1, 0))
        ));
        assert_eq!(
            Ray::new(2, 4).unwrap_err(),
            GeometryError::NotPrimitive(2, 4)
        );
    }

    #[test]
    fn self_intersections() {
        for r in 1..=3 {
            let f = Fan::hirzebruch(r);
            assert_eq!(f.ray_self_intersection(0).unwrap(), -r);
            assert_eq!(f.ray_self_intersection(1).unwrap(), 0);
            assert_eq!(f.ray_self_intersection(2).unwrap(), r);
            assert_eq!(f.ray_self_intersection(3).unwrap(), 0);
        }
        let sq = unit_square().normal_fan();
        assert!((0..4).all(|i| sq.ray_self_intersection(i).unwrap() == 0));
        let wps = Fan::new(vec![ray(1, 0), ray(0, 1), ray(-1, -2)]).unwrap();
        assert!(matches!(
            wps.ray_self_intersection(0),
            Err(GeometryError::NotSmooth(..))
        ));
        assert!(matches!(
            sq.ray_self_intersection(4),
            Err(GeometryError::RayIndex { .. })
        ));
    }

    #[test]
    fn polytope_divisors() {
        let sq = unit_square();
        let d = DivisorData::of_polytope(&sq, &sq.normal_fan()).unwrap();
        assert_eq!(d.coeffs(), &[0, 0, 1, 1]);

        let h = LatticePolytope::hirzebruch(1, 1, 1).unwrap();
        let d = DivisorData::of_polytope(&h, &Fan::hirzebruch(1)).unwrap();
        // h(1,-1) = min{0, 1, -1, -1} = -1.
        assert_eq!(d.coeffs(), &[0, 0, 1, 1]);

        let shifted = h.translate(pt(2, -3));
        let ds = DivisorData::of_polytope(&shifted, &Fan::hirzebruch(1)).unwrap();
        for (i, n) in Fan::hirzebruch(1).rays().iter().enumerate() {
            assert_eq!(ds.coeffs()[i], d.coeffs()[i] - pt(2, -3).dot(*n));
        }
        assert_eq!(ds.pair(&ds).unwrap(), d.pair(&d).unwrap());

        assert!(matches!(
            DivisorData::of_polytope(&triangle(), &sq.normal_fan()),
            Err(GeometryError::NotRefinement(-1, -1))
        ));
    }

    #[test]
    fn pairing_zero_and_square() {
        let f = Fan::hirzebruch(1);
        let z = DivisorData::zero(&f);
        for i in 0..4 {
            assert_eq!(z.intersection_ray(i).unwrap(), 0);
        }
        let h = LatticePolytope::hirzebruch(1, 1, 1).unwrap();
        let d = DivisorData::of_polytope(&h, &f).unwrap();
        assert_eq!(d.pair(&z).unwrap(), 0);
        assert_eq!(d.pair(&d).unwrap(), 3);
        assert!((0..4).all(|i| d.intersection_ray(i).unwrap() >= 1));
        assert!(d.is_ample().unwrap());
        assert!(!z.is_ample().unwrap());
        assert_eq!(
            d.pair(&DivisorData::zero(&Fan::hirzebruch(2))),
            Err(GeometryError::FanMismatch)
        );
    }

    #[test]
    fn sections_match_polytope_points() {
        let h = LatticePolytope::hirzebruch(2, 1, 2).unwrap();
        let f = h.normal_fan();
        let d = DivisorData::of_polytope(&h, &f).unwrap();
        assert_eq!(d.sections(), h.lattice_points());
        let z = DivisorData::zeros_of_character(&f, pt(1, 0));
        assert_eq!(z.coeffs(), &[1, 0, 0, 2]);
        let e = d.add_scaled(&z, -3).unwrap();
        assert!(e.sections().is_empty());
    }

    #[test]
    fn json_shapes() {
        let p = LatticePolytope::hirzebruch(1, 1, 1).unwrap();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"vertices":[[0,0],[1,0],[1,2],[0,1]]}"#
        );
        let f = Fan::hirzebruch(3);
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"rays":[[1,0],[0,1],[-1,0],[3,-1]]}"#
        );
        let d = DivisorData::of_polytope(&p, &Fan::hirzebruch(1)).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"rays":[[1,0],[0,1],[-1,0],[1,-1]],"coeffs":[0,0,1,1]}"#
        );
        let back: DivisorData = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<Fan>(r#"{"rays":[[2,0],[0,1],[-1,-1]]}"#).is_err());
    }
}
