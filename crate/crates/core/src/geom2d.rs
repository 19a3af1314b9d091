//! Exact planar geometry over quadratic-field coordinates.
//!
//! Points in the τ basis use a scaled ordinate: `y` is the Q(τ) coefficient of
//! `s = sin(2π/5)`, so every vertex of a pentagonal window has both
//! coordinates in Q(τ). The scaling is linear, so orientation signs, clipping
//! and area ratios are unchanged; only [`ExactPoint2::to_f64`] and
//! [`ExactPoint2::norm_sq`] need to know about it.

use std::cmp::Ordering;

use crate::error::{Result, ShellError};
use crate::exactnum::{rat, Basis, QuadVal};

/// sin(2π/5), the ordinate unit of τ-basis points.
pub fn pentagon_unit_f64() -> f64 {
    (2.0 * std::f64::consts::PI / 5.0).sin()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactPoint2 {
    pub x: QuadVal,
    pub y: QuadVal,
}

impl ExactPoint2 {
    pub fn new(x: QuadVal, y: QuadVal) -> Result<Self> {
        if x.basis() != y.basis() {
            return Err(ShellError::BasisMismatch(x.basis(), y.basis()));
        }
        Ok(ExactPoint2 { x, y })
    }

    pub fn zero(basis: Basis) -> Self {
        ExactPoint2 {
            x: QuadVal::zero(basis),
            y: QuadVal::zero(basis),
        }
    }

    pub fn basis(&self) -> Basis {
        self.x.basis()
    }

    pub fn try_add(&self, o: &ExactPoint2) -> Result<ExactPoint2> {
        Ok(ExactPoint2 {
            x: self.x.try_add(&o.x)?,
            y: self.y.try_add(&o.y)?,
        })
    }

    pub fn try_sub(&self, o: &ExactPoint2) -> Result<ExactPoint2> {
        Ok(ExactPoint2 {
            x: self.x.try_sub(&o.x)?,
            y: self.y.try_sub(&o.y)?,
        })
    }

    pub fn scale(&self, k: &QuadVal) -> Result<ExactPoint2> {
        Ok(ExactPoint2 {
            x: self.x.try_mul(k)?,
            y: self.y.try_mul(k)?,
        })
    }

    pub fn neg(&self) -> ExactPoint2 {
        ExactPoint2 {
            x: -&self.x,
            y: -&self.y,
        }
    }

    /// z-component of the cross product, in stored (scaled) coordinates.
    pub fn cross(&self, o: &ExactPoint2) -> Result<QuadVal> {
        self.x.try_mul(&o.y)?.try_sub(&self.y.try_mul(&o.x)?)
    }

    /// Squared Euclidean length in true coordinates.
    pub fn norm_sq(&self) -> QuadVal {
        let xx = &self.x * &self.x;
        let yy = &self.y * &self.y;
        match self.basis() {
            Basis::Sqrt2 => xx + yy,
            // s² = (2 + τ)/4
            Basis::GoldenTau => {
                let s2 = QuadVal::new(rat(1, 2), rat(1, 4), Basis::GoldenTau);
                xx + yy * s2
            }
        }
    }

    /// True Cartesian coordinates.
    pub fn to_f64(&self) -> (f64, f64) {
        let y = self.y.to_f64();
        match self.basis() {
            Basis::Sqrt2 => (self.x.to_f64(), y),
            Basis::GoldenTau => (self.x.to_f64(), y * pentagon_unit_f64()),
        }
    }

    fn lex_cmp(&self, o: &ExactPoint2) -> Ordering {
        self.x
            .exact_cmp(&o.x)
            .unwrap_or(Ordering::Equal)
            .then_with(|| self.y.exact_cmp(&o.y).unwrap_or(Ordering::Equal))
    }
}

/// A point of a one- or two-dimensional embedding space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EmbeddedPoint {
    Line(QuadVal),
    Plane(ExactPoint2),
}

impl EmbeddedPoint {
    pub fn basis(&self) -> Basis {
        match self {
            EmbeddedPoint::Line(v) => v.basis(),
            EmbeddedPoint::Plane(p) => p.basis(),
        }
    }

    pub fn norm_sq(&self) -> QuadVal {
        match self {
            EmbeddedPoint::Line(v) => v * v,
            EmbeddedPoint::Plane(p) => p.norm_sq(),
        }
    }

    pub fn neg(&self) -> EmbeddedPoint {
        match self {
            EmbeddedPoint::Line(v) => EmbeddedPoint::Line(-v),
            EmbeddedPoint::Plane(p) => EmbeddedPoint::Plane(p.neg()),
        }
    }

    pub fn scale(&self, k: &QuadVal) -> Result<EmbeddedPoint> {
        Ok(match self {
            EmbeddedPoint::Line(v) => EmbeddedPoint::Line(v.try_mul(k)?),
            EmbeddedPoint::Plane(p) => EmbeddedPoint::Plane(p.scale(k)?),
        })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            EmbeddedPoint::Line(v) => vec![v.to_f64()],
            EmbeddedPoint::Plane(p) => {
                let (x, y) = p.to_f64();
                vec![x, y]
            }
        }
    }
}

/// Sign of the turn a → b → c (positive = counterclockwise).
pub fn orient(a: &ExactPoint2, b: &ExactPoint2, c: &ExactPoint2) -> Result<i32> {
    Ok(orient_value(a, b, c)?.sign())
}

fn orient_value(a: &ExactPoint2, b: &ExactPoint2, c: &ExactPoint2) -> Result<QuadVal> {
    b.try_sub(a)?.cross(&c.try_sub(a)?)
}

/// Twice the signed shoelace area.
pub fn area2(vertices: &[ExactPoint2]) -> Result<QuadVal> {
    if vertices.len() < 3 {
        return Err(ShellError::DegeneratePolygon(vertices.len()));
    }
    let mut acc = QuadVal::zero(vertices[0].basis());
    for (i, p) in vertices.iter().enumerate() {
        let q = &vertices[(i + 1) % vertices.len()];
        acc = acc.try_add(&p.cross(q)?)?;
    }
    Ok(acc)
}

/// Strictly convex hull in counterclockwise order (Andrew's monotone chain).
pub fn convex_hull(points: &[ExactPoint2]) -> Result<Vec<ExactPoint2>> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() < 3 {
        return Ok(pts);
    }
    let mut lower: Vec<ExactPoint2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p)? <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<ExactPoint2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p)? <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}

fn clip_halfplane(poly: &[ExactPoint2], a: &ExactPoint2, b: &ExactPoint2) -> Result<Vec<ExactPoint2>> {
    let vals = poly
        .iter()
        .map(|p| orient_value(a, b, p))
        .collect::<Result<Vec<_>>>()?;
    let signs: Vec<i32> = vals.iter().map(QuadVal::sign).collect();
    if signs.iter().all(|&s| s >= 0) {
        return Ok(poly.to_vec());
    }
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        if signs[i] >= 0 {
            out.push(poly[i].clone());
        }
        if signs[i] * signs[j] < 0 {
            let t = vals[i].try_div(&vals[i].try_sub(&vals[j])?)?;
            let step = poly[j].try_sub(&poly[i])?.scale(&t)?;
            out.push(poly[i].try_add(&step)?);
        }
    }
    Ok(out)
}

/// Drops repeated and collinear vertices; `None` when nothing with area is left.
fn normalize(mut poly: Vec<ExactPoint2>) -> Result<Option<Vec<ExactPoint2>>> {
    poly.dedup();
    while poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    let mut changed = true;
    while changed && poly.len() >= 3 {
        changed = false;
        let n = poly.len();
        for i in 0..n {
            let prev = &poly[(i + n - 1) % n];
            let next = &poly[(i + 1) % n];
            if orient(prev, &poly[i], next)? == 0 {
                poly.remove(i);
                changed = true;
                break;
            }
        }
    }
    if poly.len() < 3 {
        Ok(None)
    } else {
        Ok(Some(poly))
    }
}

/// Convex window in internal space: a closed interval or a convex polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexWindow {
    Interval { lo: QuadVal, hi: QuadVal },
    /// Strictly convex, counterclockwise, no repeated vertices.
    Polygon(Vec<ExactPoint2>),
}

impl ConvexWindow {
    pub fn interval(lo: QuadVal, hi: QuadVal) -> Result<Self> {
        if hi.exact_cmp(&lo)? != Ordering::Greater {
            return Err(ShellError::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(ConvexWindow::Interval { lo, hi })
    }

    /// Checks strict convexity and counterclockwise order.
    pub fn polygon(vertices: Vec<ExactPoint2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(ShellError::DegeneratePolygon(n));
        }
        for i in 0..n {
            if orient(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n])? <= 0 {
                return Err(ShellError::InvalidArgument(
                    "polygon is not strictly convex and counterclockwise".into(),
                ));
            }
        }
        Ok(ConvexWindow::Polygon(vertices))
    }

    pub fn hull_of(points: &[ExactPoint2]) -> Result<Self> {
        ConvexWindow::polygon(convex_hull(points)?)
    }

    pub fn basis(&self) -> Basis {
        match self {
            ConvexWindow::Interval { lo, .. } => lo.basis(),
            ConvexWindow::Polygon(v) => v[0].basis(),
        }
    }

    pub fn vertices(&self) -> Option<&[ExactPoint2]> {
        match self {
            ConvexWindow::Polygon(v) => Some(v),
            ConvexWindow::Interval { .. } => None,
        }
    }

    /// Twice the polygon area. For τ-basis polygons this is the coefficient of
    /// sin(2π/5); only ratios of these values are meaningful across bases.
    pub fn area2(&self) -> Result<QuadVal> {
        match self {
            ConvexWindow::Polygon(v) => area2(v),
            ConvexWindow::Interval { .. } => Err(ShellError::DegeneratePolygon(2)),
        }
    }

    /// Length of an interval, `area2` of a polygon.
    pub fn measure(&self) -> Result<QuadVal> {
        match self {
            ConvexWindow::Interval { lo, hi } => hi.try_sub(lo),
            ConvexWindow::Polygon(v) => area2(v),
        }
    }

    pub fn translate(&self, t: &EmbeddedPoint) -> Result<ConvexWindow> {
        match (self, t) {
            (ConvexWindow::Interval { lo, hi }, EmbeddedPoint::Line(d)) => Ok(ConvexWindow::Interval {
                lo: lo.try_add(d)?,
                hi: hi.try_add(d)?,
            }),
            (ConvexWindow::Polygon(v), EmbeddedPoint::Plane(d)) => Ok(ConvexWindow::Polygon(
                v.iter().map(|p| p.try_add(d)).collect::<Result<_>>()?,
            )),
            _ => Err(ShellError::DimensionMismatch),
        }
    }

    /// Exact intersection; zero-measure contact is reported as `None`.
    pub fn intersect(&self, other: &ConvexWindow) -> Result<Option<ConvexWindow>> {
        match (self, other) {
            (ConvexWindow::Interval { lo: a, hi: b }, ConvexWindow::Interval { lo: c, hi: d }) => {
                let lo = if a.exact_cmp(c)? == Ordering::Less { c } else { a };
                let hi = if b.exact_cmp(d)? == Ordering::Less { b } else { d };
                if hi.exact_cmp(lo)? == Ordering::Greater {
                    Ok(Some(ConvexWindow::Interval {
                        lo: lo.clone(),
                        hi: hi.clone(),
                    }))
                } else {
                    Ok(None)
                }
            }
            (ConvexWindow::Polygon(p), ConvexWindow::Polygon(q)) => {
                if p[0].basis() != q[0].basis() {
                    return Err(ShellError::BasisMismatch(p[0].basis(), q[0].basis()));
                }
                let mut cur = p.clone();
                for i in 0..q.len() {
                    cur = clip_halfplane(&cur, &q[i], &q[(i + 1) % q.len()])?;
                    if cur.len() < 3 {
                        return Ok(None);
                    }
                }
                Ok(normalize(cur)?.map(ConvexWindow::Polygon))
            }
            _ => Err(ShellError::DimensionMismatch),
        }
    }

    /// Strict interior test.
    pub fn contains_open(&self, p: &EmbeddedPoint) -> Result<bool> {
        match (self, p) {
            (ConvexWindow::Interval { lo, hi }, EmbeddedPoint::Line(x)) => {
                Ok(x.exact_cmp(lo)? == Ordering::Greater && x.exact_cmp(hi)? == Ordering::Less)
            }
            (ConvexWindow::Polygon(v), EmbeddedPoint::Plane(x)) => {
                for i in 0..v.len() {
                    if orient(&v[i], &v[(i + 1) % v.len()], x)? <= 0 {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Err(ShellError::DimensionMismatch),
        }
    }

    /// Minkowski difference `self − other = {a − b}`.
    pub fn minkowski_difference(&self, other: &ConvexWindow) -> Result<ConvexWindow> {
        match (self, other) {
            (ConvexWindow::Interval { lo: a, hi: b }, ConvexWindow::Interval { lo: c, hi: d }) => {
                ConvexWindow::interval(a.try_sub(d)?, b.try_sub(c)?)
            }
            (ConvexWindow::Polygon(p), ConvexWindow::Polygon(q)) => {
                let mut diffs = Vec::with_capacity(p.len() * q.len());
                for a in p {
                    for b in q {
                        diffs.push(a.try_sub(b)?);
                    }
                }
                ConvexWindow::hull_of(&diffs)
            }
            _ => Err(ShellError::DimensionMismatch),
        }
    }

    /// Measure of `self ∩ (other − t)`, zero when the overlap is degenerate.
    pub fn overlap_measure(&self, other: &ConvexWindow, t: &EmbeddedPoint) -> Result<QuadVal> {
        let shifted = other.translate(&t.neg())?;
        match self.intersect(&shifted)? {
            Some(w) => w.measure(),
            None => Ok(QuadVal::zero(self.basis())),
        }
    }

    /// `vol(Ω ∩ (Ω − t)) / vol(Ω)`, exact.
    pub fn overlap_fraction(&self, t: &EmbeddedPoint) -> Result<QuadVal> {
        self.overlap_measure(self, t)?.try_div(&self.measure()?)
    }

    /// Largest distance of a window point from the origin, as a float bound.
    pub fn circumradius_f64(&self) -> f64 {
        match self {
            ConvexWindow::Interval { lo, hi } => lo.to_f64().abs().max(hi.to_f64().abs()),
            ConvexWindow::Polygon(v) => v
                .iter()
                .map(|p| {
                    let (x, y) = p.to_f64();
                    x.hypot(y)
                })
                .fold(0.0, f64::max),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> ExactPoint2 {
        ExactPoint2::new(QuadVal::from_ints(x, 0, Basis::Sqrt2), QuadVal::from_ints(y, 0, Basis::Sqrt2)).unwrap()
    }

    fn square() -> ConvexWindow {
        ConvexWindow::polygon(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap()
    }

    fn half() -> QuadVal {
        QuadVal::new(rat(1, 2), rat(0, 1), Basis::Sqrt2)
    }

    /// Regular octagon of side 1 with two horizontal edges, centred at the origin.
    fn octagon() -> ConvexWindow {
        let h = QuadVal::new(rat(1, 2), rat(0, 1), Basis::Sqrt2);
        let r = QuadVal::new(rat(1, 2), rat(1, 2), Basis::Sqrt2); // (1+√2)/2
        let pts = vec![
            (h.clone(), -&r),
            (r.clone(), -&h),
            (r.clone(), h.clone()),
            (h.clone(), r.clone()),
            (-&h, r.clone()),
            (-&r, h.clone()),
            (-&r, -&h),
            (-&h, -&r),
        ];
        ConvexWindow::polygon(pts.into_iter().map(|(x, y)| ExactPoint2::new(x, y).unwrap()).collect()).unwrap()
    }

    #[test]
    fn square_area() {
        assert_eq!(square().area2().unwrap(), QuadVal::from_ints(2, 0, Basis::Sqrt2));
    }

    #[test]
    fn octagon_area_matches_triangulation() {
        // fan triangulation from the centre as an independent route
        let w = octagon();
        let v = w.vertices().unwrap();
        let origin = ExactPoint2::zero(Basis::Sqrt2);
        let mut fan = QuadVal::zero(Basis::Sqrt2);
        for i in 0..v.len() {
            fan = fan + orient_value(&origin, &v[i], &v[(i + 1) % v.len()]).unwrap();
        }
        assert_eq!(fan, QuadVal::from_ints(4, 4, Basis::Sqrt2));
        assert_eq!(w.area2().unwrap(), QuadVal::from_ints(4, 4, Basis::Sqrt2));
    }

    #[test]
    fn mirror_has_equal_area() {
        let w = octagon();
        let mirrored: Vec<_> = w
            .vertices()
            .unwrap()
            .iter()
            .rev()
            .map(|q| ExactPoint2::new(-&q.x, q.y.clone()).unwrap())
            .collect();
        let m = ConvexWindow::polygon(mirrored).unwrap();
        assert_eq!(m.area2().unwrap(), w.area2().unwrap());
    }

    #[test]
    fn too_few_vertices() {
        assert_eq!(area2(&[p(0, 0), p(1, 0)]), Err(ShellError::DegeneratePolygon(2)));
        assert!(ConvexWindow::polygon(vec![p(0, 0), p(1, 0)]).is_err());
    }

    #[test]
    fn intersections() {
        let s = square();
        assert_eq!(s.intersect(&s).unwrap().unwrap().area2().unwrap(), s.area2().unwrap());
        let far = s.translate(&EmbeddedPoint::Plane(p(2, 0))).unwrap();
        assert!(s.intersect(&far).unwrap().is_none());
        let touching = s.translate(&EmbeddedPoint::Plane(p(1, 0))).unwrap();
        assert!(s.intersect(&touching).unwrap().is_none());
        let shift = ExactPoint2::new(half(), QuadVal::zero(Basis::Sqrt2)).unwrap();
        let moved = s.translate(&EmbeddedPoint::Plane(shift)).unwrap();
        let i = s.intersect(&moved).unwrap().unwrap();
        assert_eq!(i.area2().unwrap(), QuadVal::from_ints(1, 0, Basis::Sqrt2));
    }

    #[test]
    fn overlap_fraction_edge_cases() {
        let w = octagon();
        let zero = EmbeddedPoint::Plane(ExactPoint2::zero(Basis::Sqrt2));
        assert_eq!(w.overlap_fraction(&zero).unwrap(), QuadVal::one(Basis::Sqrt2));
        assert!(w.overlap_fraction(&EmbeddedPoint::Plane(p(3, 0))).unwrap().is_zero());

        let h = QuadVal::new(rat(0, 1), rat(1, 2), Basis::Sqrt2);
        let chain = ConvexWindow::interval(-&h, h.clone()).unwrap();
        let f = chain.overlap_fraction(&EmbeddedPoint::Line(QuadVal::one(Basis::Sqrt2))).unwrap();
        assert_eq!(f, QuadVal::new(rat(1, 1), rat(-1, 2), Basis::Sqrt2));
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let pts = vec![p(0, 0), p(1, 0), p(2, 0), p(2, 2), p(0, 2), p(1, 1), p(0, 1)];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h, vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)]);
    }

    #[test]
    fn minkowski_difference_of_octagon_doubles_it() {
        let w = octagon();
        let d = w.minkowski_difference(&w).unwrap();
        let two = QuadVal::from_ints(2, 0, Basis::Sqrt2);
        let doubled: Vec<_> = w.vertices().unwrap().iter().map(|v| v.scale(&two).unwrap()).collect();
        assert_eq!(d.area2().unwrap(), area2(&doubled).unwrap());
        assert_eq!(d.vertices().unwrap().len(), 8);
    }

    #[test]
    fn open_containment() {
        let s = square();
        let inside = ExactPoint2::new(half(), half()).unwrap();
        assert!(s.contains_open(&EmbeddedPoint::Plane(inside)).unwrap());
        assert!(!s.contains_open(&EmbeddedPoint::Plane(p(1, 0))).unwrap());
        assert_eq!(
            s.contains_open(&EmbeddedPoint::Line(half())),
            Err(ShellError::DimensionMismatch)
        );
    }
}
