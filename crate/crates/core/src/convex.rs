//! Convex hulls of finite rational point sets ordered by inclusion, the
//! parabola construction embedding interval sets, and convex piecewise-linear
//! functions compared pointwise.

use crate::error::{Error, Result};
use crate::intervals::IntervalSet;
use crate::poset::Comparator;
use crate::rational::{format_rational, int, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

/// A point with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of the triangle `a b c`; positive for a left turn.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// A convex polygon given by its vertices in counterclockwise order, starting
/// at the lexicographically smallest vertex. One vertex is a point and two
/// vertices are a segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    scaled: Scaled,
}

/// The vertices multiplied by the least common denominator `den`, as integers.
/// `small` repeats them in machine integers when every value is below 2^30.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Scaled {
    den: BigInt,
    points: Vec<(BigInt, BigInt)>,
    small: Option<(i128, Vec<(i128, i128)>)>,
}

const SMALL_LIMIT: i64 = 1 << 30;

impl Scaled {
    fn of(vertices: &[Point]) -> Self {
        let den = vertices.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.x.denom()).lcm(p.y.denom()));
        let scale = |r: &Rational| r.numer() * (&den / r.denom());
        let points: Vec<(BigInt, BigInt)> = vertices.iter().map(|p| (scale(&p.x), scale(&p.y))).collect();
        let fits = |v: &BigInt| v.to_i64().filter(|x| x.abs() < SMALL_LIMIT).map(i128::from);
        let small = fits(&den).and_then(|d| {
            let pts: Option<Vec<(i128, i128)>> = points.iter().map(|(x, y)| Some((fits(x)?, fits(y)?))).collect();
            pts.map(|pts| (d, pts))
        });
        Scaled { den, points, small }
    }
}

impl ConvexPolygon {
    fn from_vertices(vertices: Vec<Point>) -> Self {
        let scaled = Scaled::of(&vertices);
        ConvexPolygon { vertices, scaled }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// True when `p` lies inside or on the boundary.
    pub fn contains_point(&self, p: &Point) -> bool {
        let v = &self.vertices;
        match v.len() {
            1 => &v[0] == p,
            2 => {
                orientation(&v[0], &v[1], p).is_zero()
                    && v[0].x.clone().min(v[1].x.clone()) <= p.x
                    && p.x <= v[0].x.clone().max(v[1].x.clone())
                    && v[0].y.clone().min(v[1].y.clone()) <= p.y
                    && p.y <= v[0].y.clone().max(v[1].y.clone())
            }
            n => (0..n).all(|i| orientation(&v[i], &v[(i + 1) % n], p) >= Rational::zero()),
        }
    }

    /// JSON form: list of `["p/q", "p/q"]` vertices.
    pub fn to_json(&self) -> String {
        let pts: Vec<[String; 2]> = self.vertices.iter().map(|p| [format_rational(&p.x), format_rational(&p.y)]).collect();
        serde_json::to_string(&pts).expect("strings serialize")
    }
}

/// Minimal counterclockwise vertex list of the hull (monotone chain with exact predicates).
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(ConvexPolygon::from_vertices(pts));
    }
    let lower = half_hull(pts.iter());
    let upper = half_hull(pts.iter().rev());
    let mut vertices: Vec<Point> = lower[..lower.len() - 1].to_vec();
    vertices.extend_from_slice(&upper[..upper.len() - 1]);
    Ok(ConvexPolygon::from_vertices(vertices))
}

fn half_hull<'a, I: Iterator<Item = &'a Point>>(points: I) -> Vec<Point> {
    let mut chain: Vec<Point> = Vec::new();
    for p in points {
        while chain.len() >= 2 && orientation(&chain[chain.len() - 2], &chain[chain.len() - 1], p) <= Rational::zero() {
            chain.pop();
        }
        chain.push(p.clone());
    }
    chain
}

/// `inner ⊆ outer`, tested on the vertices of `inner`.
pub fn contains(inner: &ConvexPolygon, outer: &ConvexPolygon) -> bool {
    if outer.vertices.len() < 3 {
        return inner.vertices.iter().all(|p| outer.contains_point(p));
    }
    // With inner points P/Li and outer vertices A/Lo, the orientation of
    // (A, B, P) has the sign of (B - A) x (P·Lo - A·Li).
    let n = outer.vertices.len();
    if let (Some((li, ps)), Some((lo, vs))) = (&inner.scaled.small, &outer.scaled.small) {
        return ps.iter().all(|&(px, py)| {
            (0..n).all(|i| {
                let (ax, ay) = vs[i];
                let (bx, by) = vs[(i + 1) % n];
                (bx - ax) * (py * lo - ay * li) - (by - ay) * (px * lo - ax * li) >= 0
            })
        });
    }
    let (li, lo) = (&inner.scaled.den, &outer.scaled.den);
    let vs = &outer.scaled.points;
    inner.scaled.points.iter().all(|(px, py)| {
        (0..n).all(|i| {
            let (ax, ay) = &vs[i];
            let (bx, by) = &vs[(i + 1) % n];
            (bx - ax) * (py * lo - ay * li) - (by - ay) * (px * lo - ax * li) >= BigInt::zero()
        })
    })
}

/// Inclusion order on hulls.
pub fn convex_leq(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    contains(a, b)
}

/// [`Comparator`] for [`convex_leq`].
pub struct ConvexOrder;

impl Comparator<ConvexPolygon> for ConvexOrder {
    fn leq(&self, x: &ConvexPolygon, y: &ConvexPolygon) -> bool {
        convex_leq(x, y)
    }
    fn eq(&self, x: &ConvexPolygon, y: &ConvexPolygon) -> bool {
        x == y
    }
}

/// The points `(a, a²)`, `((a+b)/2, ab)`, `(b, b²)` of every interval.
pub fn construction_points(a: &IntervalSet) -> Vec<Point> {
    let two = int(2);
    a.intervals()
        .iter()
        .flat_map(|iv| {
            let (lo, hi) = (&iv.lo, &iv.hi);
            [
                Point::new(lo.clone(), lo * lo),
                Point::new((lo + hi) / &two, lo * hi),
                Point::new(hi.clone(), hi * hi),
            ]
        })
        .collect()
}

/// Hull of the construction points of a nonempty interval set.
pub fn embed_intervals(a: &IntervalSet) -> Result<ConvexPolygon> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    convex_hull(&construction_points(a))
}

/// A convex piecewise-linear function given by its breakpoints, first and last
/// breakpoint marking the domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLFunction {
    points: Vec<(Rational, Rational)>,
}

impl PLFunction {
    /// Validates strictly increasing abscissae and nondecreasing slopes.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Format("breakpoints must have increasing abscissae".into()));
        }
        let f = PLFunction { points };
        if !f.is_convex() {
            return Err(Error::Format("slopes must be nondecreasing".into()));
        }
        Ok(f)
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    /// Domain `[first, last]`.
    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.points[0].0, &self.points[self.points.len() - 1].0)
    }

    /// True when consecutive slopes never decrease.
    pub fn is_convex(&self) -> bool {
        let slopes: Vec<Rational> = self.points.windows(2).map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0)).collect();
        slopes.windows(2).all(|s| s[0] <= s[1])
    }

    /// Value at `x`, which must lie in the domain.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return None;
        }
        let k = self.points.partition_point(|(px, _)| px < x);
        if k < self.points.len() && &self.points[k].0 == x {
            return Some(self.points[k].1.clone());
        }
        let (x0, y0) = &self.points[k - 1];
        let (x1, y1) = &self.points[k];
        Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }

    /// The same function shifted up by `c`.
    pub fn shifted(&self, c: &Rational) -> PLFunction {
        PLFunction { points: self.points.iter().map(|(x, y)| (x.clone(), y + c)).collect() }
    }
}

/// Left anchor abscissa of [`pl_lower_chain`].
pub fn anchor_left() -> Rational {
    int(-1)
}

/// Right anchor abscissa of [`pl_lower_chain`].
pub fn anchor_right() -> Rational {
    int(2)
}

/// The lower boundary of the hull of the construction points together with the
/// parabola points at `t = -1` and `t = 2`, as a convex function on `[-1, 2]`.
///
/// Both anchors sit outside `[0, 1]`, so every such hull has the same upper
/// chord and inclusion of hulls is equivalent to the reversed pointwise order
/// of lower chains: `A <= B` iff `chain(B) <= chain(A)` everywhere.
pub fn pl_lower_chain(a: &IntervalSet) -> Result<PLFunction> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (l, r) = (anchor_left(), anchor_right());
    let mut pts = construction_points(a);
    pts.push(Point::new(l.clone(), &l * &l));
    pts.push(Point::new(r.clone(), &r * &r));
    pts.sort();
    pts.dedup();
    let chain = half_hull(pts.iter());
    PLFunction::new(chain.into_iter().map(|p| (p.x, p.y)).collect())
}

/// `f <= g` at every breakpoint of either function.
pub fn pointwise_leq(f: &PLFunction, g: &PLFunction) -> Result<bool> {
    if f.domain() != g.domain() {
        return Err(Error::DomainMismatch);
    }
    let xs = f.points.iter().chain(g.points.iter()).map(|(x, _)| x);
    for x in xs {
        if f.eval(x).expect("in domain") > g.eval(x).expect("in domain") {
            return Ok(false);
        }
    }
    Ok(true)
}

/// SVG drawing of nested polygons over the unit square, one outline per polygon.
pub fn polygons_svg(polygons: &[ConvexPolygon]) -> String {
    const SIZE: f64 = 400.0;
    let to_px = |p: &Point| {
        let x = p.x.to_f64().unwrap_or(0.0) * SIZE;
        let y = (1.0 - p.y.to_f64().unwrap_or(0.0)) * SIZE;
        format!("{x:.3},{y:.3}")
    };
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"-10 -10 {w} {w}\">\n",
        s = SIZE as u32 + 20,
        w = SIZE as u32 + 20
    );
    out.push_str("  <rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"none\" stroke=\"#cccccc\"/>\n");
    for (i, poly) in polygons.iter().enumerate() {
        let pts: Vec<String> = poly.vertices.iter().map(to_px).collect();
        out.push_str(&format!(
            "  <polygon id=\"p{}\" points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
            i + 1,
            pts.join(" ")
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::Interval;
    use crate::rational::rat;

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
        Point::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    fn set(ivs: &[((i64, i64), (i64, i64))]) -> IntervalSet {
        IntervalSet::new(ivs.iter().map(|&(a, b)| Interval::new(rat(a.0, a.1), rat(b.0, b.1))).collect()).unwrap()
    }

    #[test]
    fn hull_basics() {
        let tri = convex_hull(&[pt((0, 1), (0, 1)), pt((1, 1), (0, 1)), pt((0, 1), (1, 1))]).unwrap();
        assert_eq!(tri.vertices().len(), 3);
        let seg = convex_hull(&[pt((0, 1), (0, 1)), pt((1, 1), (1, 1)), pt((2, 1), (2, 1))]).unwrap();
        assert_eq!(seg.vertices(), &[pt((0, 1), (0, 1)), pt((2, 1), (2, 1))]);
        assert_eq!(convex_hull(tri.vertices()).unwrap(), tri);
        assert_eq!(convex_hull(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn unit_interval_triangle() {
        let c = embed_intervals(&set(&[((0, 1), (1, 1))])).unwrap();
        let expected = convex_hull(&[pt((0, 1), (0, 1)), pt((1, 2), (0, 1)), pt((1, 1), (1, 1))]).unwrap();
        assert_eq!(c, expected);
        let half = embed_intervals(&set(&[((0, 1), (1, 2))])).unwrap();
        assert!(contains(&half, &c) && !contains(&c, &half));
    }

    #[test]
    fn chain_of_unit_interval() {
        let f = pl_lower_chain(&set(&[((0, 1), (1, 1))])).unwrap();
        assert!(f.is_convex());
        assert_eq!(f.domain(), (&int(-1), &int(2)));
        assert_eq!(f.breakpoints()[0], (int(-1), int(1)));
        assert_eq!(f.breakpoints()[f.breakpoints().len() - 1], (int(2), int(4)));
        assert!(pointwise_leq(&f, &f).unwrap());
        assert!(pointwise_leq(&f, &f.shifted(&int(1))).unwrap());
        assert!(!pointwise_leq(&f.shifted(&int(1)), &f).unwrap());
    }

    #[test]
    fn crossing_functions() {
        let f = PLFunction::new(vec![(int(0), int(0)), (int(1), int(1))]).unwrap();
        let g = PLFunction::new(vec![(int(0), int(1)), (int(1), int(0))]).unwrap();
        assert!(!pointwise_leq(&f, &g).unwrap() && !pointwise_leq(&g, &f).unwrap());
        let h = PLFunction::new(vec![(int(0), int(1)), (int(2), int(0))]).unwrap();
        assert_eq!(pointwise_leq(&f, &h), Err(Error::DomainMismatch));
    }
}
