//! Lattice polygons: Newton polygons, superior envelopes, good edges,
//! lattice-point counts and Minkowski sums.
//!
//! Counts always refer to the closed region: `N` is the number of lattice
//! points of the polygon including its boundary, `N_X` (resp. `N_Y`) the
//! number of those on the `X`-axis (resp. `Y`-axis).

mod render;
mod sparse;

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::BivariatePolynomial;

pub use render::{render_ascii, render_svg};
pub use sparse::{basis_e_n, build_matrix_sr, build_matrix_sr_on, kerdef_witnesses, KerdefWitness};

pub type Point = (i64, i64);

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// A convex lattice polygon in the first quadrant, vertices counter-clockwise
/// from the lexicographically smallest one, with no collinear vertices.
/// Points and segments are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
    n_total: u64,
    n_x: u64,
    n_y: u64,
}

/// An edge with a non-negative primitive outward normal `(a, b)` whose
/// level `a x + b y = c` strictly dominates the rest of the polygon.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GoodEdge {
    pub start: Point,
    pub end: Point,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub n_e: u64,
}

impl fmt::Display for GoodEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}-{:?} ({}x + {}y = {})",
            self.start, self.end, self.a, self.b, self.c
        )
    }
}

impl LatticePolygon {
    /// Convex hull (Andrew's monotone chain). Panics on an empty input.
    pub fn from_points(points: &[Point]) -> Self {
        assert!(!points.is_empty(), "hull of no points");
        assert!(
            points.iter().all(|p| p.0 >= 0 && p.1 >= 0),
            "points must lie in the first quadrant"
        );
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let vertices = if pts.len() <= 2 {
            pts
        } else {
            let mut lower: Vec<Point> = Vec::new();
            for &p in &pts {
                while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                    lower.pop();
                }
                lower.push(p);
            }
            let mut upper: Vec<Point> = Vec::new();
            for &p in pts.iter().rev() {
                while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                    upper.pop();
                }
                upper.push(p);
            }
            lower.pop();
            upper.pop();
            lower.extend(upper);
            lower
        };
        let mut poly = LatticePolygon {
            vertices,
            n_total: 0,
            n_x: 0,
            n_y: 0,
        };
        poly.n_total = poly.count_pick();
        poly.n_x = poly.axis_count(|t| (t, 0), poly.max_x());
        poly.n_y = poly.axis_count(|t| (0, t), poly.max_y());
        poly
    }

    /// The triangle `N((1 + X + Y)^d)`.
    pub fn dense_triangle(d: i64) -> Self {
        Self::from_points(&[(0, 0), (d, 0), (0, d)])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn n_total(&self) -> u64 {
        self.n_total
    }

    pub fn n_x(&self) -> u64 {
        self.n_x
    }

    pub fn n_y(&self) -> u64 {
        self.n_y
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn max_x(&self) -> i64 {
        self.vertices.iter().map(|p| p.0).max().expect("nonempty")
    }

    pub fn max_y(&self) -> i64 {
        self.vertices.iter().map(|p| p.1).max().expect("nonempty")
    }

    /// Largest total degree `x + y` over the polygon.
    pub fn max_total_degree(&self) -> i64 {
        self.vertices.iter().map(|p| p.0 + p.1).max().expect("nonempty")
    }

    /// Edges as (start, end) in counter-clockwise order. A segment yields
    /// its two directed copies, a point none.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let n = self.vertices.len();
        match n {
            1 => vec![],
            _ => (0..n).map(|i| (self.vertices[i], self.vertices[(i + 1) % n])).collect(),
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match self.vertices.len() {
            1 => self.vertices[0] == p,
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                cross(a, b, p) == 0
                    && p.0 >= a.0.min(b.0)
                    && p.0 <= a.0.max(b.0)
                    && p.1 >= a.1.min(b.1)
                    && p.1 <= a.1.max(b.1)
            }
            _ => self.edges().iter().all(|&(a, b)| cross(a, b, p) >= 0),
        }
    }

    pub fn contains_polygon(&self, other: &LatticePolygon) -> bool {
        other.vertices.iter().all(|&v| self.contains(v))
    }

    /// Lattice points of the closed region, sorted by `(x, y)`.
    pub fn lattice_points(&self) -> Vec<Point> {
        let (x0, x1) = (self.vertices.iter().map(|p| p.0).min().unwrap(), self.max_x());
        let (y0, y1) = (self.vertices.iter().map(|p| p.1).min().unwrap(), self.max_y());
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                if self.contains((x, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Pick's theorem `N = A + B/2 + 1` on the closed region.
    fn count_pick(&self) -> u64 {
        let n = self.vertices.len();
        if n == 1 {
            return 1;
        }
        let boundary: i64 = self
            .edges()
            .iter()
            .map(|&(a, b)| (b.0 - a.0).abs().gcd(&(b.1 - a.1).abs()))
            .sum();
        if n == 2 {
            return (boundary / 2 + 1) as u64;
        }
        let twice_area: i64 = self.edges().iter().map(|&(a, b)| a.0 * b.1 - a.1 * b.0).sum();
        ((twice_area + boundary) / 2 + 1) as u64
    }

    fn axis_count(&self, point: impl Fn(i64) -> Point, max: i64) -> u64 {
        (0..=max).filter(|&t| self.contains(point(t))).count() as u64
    }

    /// Good edges in boundary order.
    pub fn good_edges(&self) -> Vec<GoodEdge> {
        if self.is_degenerate() {
            return vec![];
        }
        let points = self.lattice_points();
        let mut out = Vec::new();
        for (s, e) in self.edges() {
            let (dx, dy) = (e.0 - s.0, e.1 - s.1);
            let g = dx.abs().gcd(&dy.abs());
            let (a, b) = (dy / g, -dx / g);
            if a < 0 || b < 0 {
                continue;
            }
            let c = a * s.0 + b * s.1;
            let dominated = points.iter().all(|p| {
                let v = a * p.0 + b * p.1;
                (v == c && cross(s, e, *p) == 0) || (0..c).contains(&v)
            });
            if dominated {
                out.push(GoodEdge {
                    start: s,
                    end: e,
                    a,
                    b,
                    c,
                    n_e: g as u64 + 1,
                });
            }
        }
        out
    }

    /// The good edge with the most lattice points, ties broken by the
    /// lexicographically smallest normal `(a, b)`.
    pub fn preferred_good_edge(&self) -> Option<GoodEdge> {
        self.good_edges()
            .into_iter()
            .min_by(|x, y| y.n_e.cmp(&x.n_e).then_with(|| (x.a, x.b).cmp(&(y.a, y.b))))
    }

    /// `2N - N_X - N_Y - N_E` for an optional good edge.
    pub fn sparse_dimension(&self, edge: Option<&GoodEdge>) -> i64 {
        2 * self.n_total as i64 - self.n_x as i64 - self.n_y as i64 - edge.map_or(0, |e| e.n_e as i64)
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|(x, y)| format!("({x},{y})")).collect();
        write!(f, "[{}]", vs.join(", "))
    }
}

/// `N(f)`, the convex hull of the support.
pub fn newton_polygon(f: &BivariatePolynomial) -> Result<LatticePolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts: Vec<Point> = f.support().map(|e| (e[0] as i64, e[1] as i64)).collect();
    Ok(LatticePolygon::from_points(&pts))
}

/// `conv(supp f ∪ supp g)`.
pub fn joint_newton_polygon(f: &BivariatePolynomial, g: &BivariatePolynomial) -> Result<LatticePolygon> {
    let pts: Vec<Point> = f
        .support()
        .chain(g.support())
        .map(|e| (e[0] as i64, e[1] as i64))
        .collect();
    if pts.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(LatticePolygon::from_points(&pts))
}

/// `N⁺(P)`: the hull of `P` together with `(0,0)`, `(x_max, 0)` and
/// `(0, y_max)`. Every boundary edge off the axes is checked to have
/// non-positive slope.
pub fn superior_envelope(p: &LatticePolygon) -> Result<LatticePolygon> {
    let mut pts = p.vertices.clone();
    pts.extend([(0, 0), (p.max_x(), 0), (0, p.max_y())]);
    let env = LatticePolygon::from_points(&pts);
    for (a, b) in env.edges() {
        let on_axis = (a.1 == 0 && b.1 == 0) || (a.0 == 0 && b.0 == 0);
        if !on_axis && (b.0 - a.0) * (b.1 - a.1) > 0 {
            return Err(Error::EnvelopeAssertionFailed);
        }
    }
    Ok(env)
}

/// All good edges of `p`.
pub fn find_good_edges(p: &LatticePolygon) -> Vec<GoodEdge> {
    p.good_edges()
}

fn half(v: Point) -> u8 {
    if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
        0
    } else {
        1
    }
}

fn angle_cmp(u: Point, v: Point) -> Ordering {
    half(u).cmp(&half(v)).then_with(|| 0.cmp(&(u.0 * v.1 - u.1 * v.0)))
}

/// Boundary edge vectors starting from the lowest (then leftmost) vertex.
fn edge_cycle(p: &LatticePolygon) -> (Point, Vec<Point>) {
    let n = p.vertices.len();
    let start = (0..n).min_by_key(|&i| (p.vertices[i].1, p.vertices[i].0)).unwrap();
    let edges = if n == 1 {
        vec![]
    } else {
        (0..n)
            .map(|k| {
                let a = p.vertices[(start + k) % n];
                let b = p.vertices[(start + k + 1) % n];
                (b.0 - a.0, b.1 - a.1)
            })
            .collect()
    };
    (p.vertices[start], edges)
}

/// Minkowski sum by merging the edge sequences by angle.
pub fn minkowski_sum(p: &LatticePolygon, q: &LatticePolygon) -> LatticePolygon {
    let (sp, ep) = edge_cycle(p);
    let (sq, eq) = edge_cycle(q);
    let mut cur = (sp.0 + sq.0, sp.1 + sq.1);
    let mut pts = vec![cur];
    let (mut i, mut j) = (0, 0);
    while i < ep.len() || j < eq.len() {
        let take_p = match (ep.get(i), eq.get(j)) {
            (Some(&u), Some(&v)) => angle_cmp(u, v) != Ordering::Greater,
            (Some(_), None) => true,
            _ => false,
        };
        let step = if take_p {
            i += 1;
            ep[i - 1]
        } else {
            j += 1;
            eq[j - 1]
        };
        cur = (cur.0 + step.0, cur.1 + step.1);
        pts.push(cur);
    }
    LatticePolygon::from_points(&pts)
}
