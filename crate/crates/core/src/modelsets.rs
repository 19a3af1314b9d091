//! Cut-and-project data for the square lattice, the silver mean chain, the
//! Ammann–Beenker vertex set and the rhombic Penrose vertex set.
//!
//! Lattice points are integer coefficient vectors:
//!
//! * silver mean: `(a, b)` for `a + b√2`, star map `a − b√2`;
//! * Ammann–Beenker: `n ∈ Z⁴`, physical `Σ n_k ζ^k`, internal `Σ n_k ζ^{3k}`, ζ = e^{iπ/4};
//! * Penrose: `n ∈ Z⁵`, physical `Σ n_k ξ^k`, internal `Σ n_k ξ^{2k}`, ξ = e^{2πi/5}.
//!
//! Penrose vectors differing by `(1,1,1,1,1)` are the same point, since the
//! fifth roots of unity sum to zero; they are stored with `n₄ = 0`. The
//! translation class `Σ n_k mod 5` is well defined on that quotient.
//!
//! Windows are open (boundary points excluded).

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Result, ShellError};
use crate::exactnum::{rat, Basis, QuadVal};
use crate::geom2d::{ConvexWindow, EmbeddedPoint, ExactPoint2};

/// Relative slack applied to float radius cutoffs.
pub const CUTOFF_SLACK: f64 = 1e-9;

/// True when `r2 ≤ rmax²` up to [`CUTOFF_SLACK`].
pub fn within_cutoff(r2: &QuadVal, rmax: f64) -> bool {
    r2.to_f64() <= rmax * rmax * (1.0 + CUTOFF_SLACK)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointSetKind {
    SquareLattice,
    SilverMean,
    AmmannBeenker,
    Penrose,
}

impl PointSetKind {
    pub fn name(self) -> &'static str {
        match self {
            PointSetKind::SquareLattice => "square",
            PointSetKind::SilverMean => "silver-mean",
            PointSetKind::AmmannBeenker => "ammann-beenker",
            PointSetKind::Penrose => "penrose",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            PointSetKind::SquareLattice,
            PointSetKind::SilverMean,
            PointSetKind::AmmannBeenker,
            PointSetKind::Penrose,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }

    /// Number of integer coefficients of a lattice point.
    pub fn rank(self) -> usize {
        match self {
            PointSetKind::SquareLattice | PointSetKind::SilverMean => 2,
            PointSetKind::AmmannBeenker => 4,
            PointSetKind::Penrose => 5,
        }
    }

    /// Field of squared radii; `None` for the square lattice (plain integers).
    pub fn basis(self) -> Option<Basis> {
        match self {
            PointSetKind::SquareLattice => None,
            PointSetKind::SilverMean | PointSetKind::AmmannBeenker => Some(Basis::Sqrt2),
            PointSetKind::Penrose => Some(Basis::GoldenTau),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub coeffs: Vec<i64>,
}

impl LatticePoint {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LatticePoint { coeffs }
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &LatticePoint) -> LatticePoint {
        LatticePoint::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    /// Penrose translation class, `Σ n_k mod 5`.
    pub fn class5(&self) -> u8 {
        self.coeffs.iter().sum::<i64>().rem_euclid(5) as u8
    }
}

/// An element of Λ − Λ with its exact squared length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffVector {
    pub point: LatticePoint,
    pub r2: QuadVal,
    /// Penrose class difference (0 for single-window sets).
    pub class_shift: u8,
}

fn q2(a: i64, b: i64) -> QuadVal {
    QuadVal::from_ints(a, b, Basis::Sqrt2)
}

fn qh(a: (i64, i64), b: (i64, i64), basis: Basis) -> QuadVal {
    QuadVal::new(rat(a.0, a.1), rat(b.0, b.1), basis)
}

fn pt(x: QuadVal, y: QuadVal) -> ExactPoint2 {
    ExactPoint2 { x, y }
}

/// ζ^k for k = 0..3 in Q(√2)².
fn octagonal_roots() -> [ExactPoint2; 8] {
    let h = qh((0, 1), (1, 2), Basis::Sqrt2);
    let z = q2(0, 0);
    let one = q2(1, 0);
    [
        pt(one.clone(), z.clone()),
        pt(h.clone(), h.clone()),
        pt(z.clone(), one.clone()),
        pt(-&h, h.clone()),
        pt(-&one, z.clone()),
        pt(-&h, -&h),
        pt(z.clone(), -&one),
        pt(h.clone(), -&h),
    ]
}

/// ξ^k for k = 0..4, ordinate in units of sin(2π/5).
fn pentagonal_roots() -> [ExactPoint2; 5] {
    let t = Basis::GoldenTau;
    let c1 = qh((-1, 2), (1, 2), t); // cos 72° = (τ − 1)/2
    let c2 = qh((0, 1), (-1, 2), t); // cos 144° = −τ/2
    let s2 = QuadVal::from_ints(-1, 1, t); // sin 144° / sin 72° = τ − 1
    [
        pt(QuadVal::one(t), QuadVal::zero(t)),
        pt(c1.clone(), QuadVal::one(t)),
        pt(c2.clone(), s2.clone()),
        pt(c2, -&s2),
        pt(c1, -QuadVal::one(t)),
    ]
}

fn combine(coeffs: &[i64], basis_vectors: &[ExactPoint2]) -> ExactPoint2 {
    let b = basis_vectors[0].basis();
    let mut x = QuadVal::zero(b);
    let mut y = QuadVal::zero(b);
    for (c, v) in coeffs.iter().zip(basis_vectors) {
        if *c == 0 {
            continue;
        }
        let k = QuadVal::from_ints(*c, 0, b);
        x = x + &v.x * &k;
        y = y + &v.y * &k;
    }
    pt(x, y)
}

/// Exact `|phys(n)|²` from integer formulas.
pub fn squared_length(kind: PointSetKind, c: &[i64]) -> Result<QuadVal> {
    if c.len() != kind.rank() {
        return Err(ShellError::CoefficientCount {
            expected: kind.rank(),
            got: c.len(),
        });
    }
    Ok(match kind {
        PointSetKind::SquareLattice => q2(c[0] * c[0] + c[1] * c[1], 0),
        PointSetKind::SilverMean => q2(c[0] * c[0] + 2 * c[1] * c[1], 2 * c[0] * c[1]),
        PointSetKind::AmmannBeenker => q2(
            c.iter().map(|x| x * x).sum(),
            c[0] * c[1] + c[1] * c[2] + c[2] * c[3] - c[0] * c[3],
        ),
        PointSetKind::Penrose => {
            let s0: i64 = c.iter().map(|x| x * x).sum();
            let c1: i64 = (0..5).map(|k| c[k] * c[(k + 1) % 5]).sum();
            let c2: i64 = (0..5).map(|k| c[k] * c[(k + 2) % 5]).sum();
            QuadVal::from_ints(s0 - c1, c1 - c2, Basis::GoldenTau)
        }
    })
}

/// Float approximations of the physical and internal basis vectors.
struct FloatFrame {
    phys: Vec<[f64; 2]>,
    star: Vec<[f64; 2]>,
}

impl FloatFrame {
    fn new(kind: PointSetKind) -> Self {
        let angle = |k: usize, n: usize, step: usize| {
            let a = 2.0 * std::f64::consts::PI * ((k * step) % n) as f64 / n as f64;
            [a.cos(), a.sin()]
        };
        match kind {
            PointSetKind::AmmannBeenker => FloatFrame {
                phys: (0..4).map(|k| angle(k, 8, 1)).collect(),
                star: (0..4).map(|k| angle(k, 8, 3)).collect(),
            },
            PointSetKind::Penrose => FloatFrame {
                phys: (0..5).map(|k| angle(k, 5, 1)).collect(),
                star: (0..5).map(|k| angle(k, 5, 2)).collect(),
            },
            _ => FloatFrame {
                phys: vec![],
                star: vec![],
            },
        }
    }

    fn apply(v: &[[f64; 2]], c: &[i64]) -> (f64, f64) {
        c.iter()
            .zip(v)
            .fold((0.0, 0.0), |(x, y), (n, e)| (x + *n as f64 * e[0], y + *n as f64 * e[1]))
    }
}

/// A point set together with its windows.
#[derive(Clone, Debug)]
pub struct ModelSet {
    kind: PointSetKind,
    /// One window per class; Penrose `windows[j - 1]` is the window of class `j`.
    windows: Vec<ConvexWindow>,
    /// Difference windows indexed by class shift: pairs `(class i, W_{i+c} − W_i)`.
    diff_windows: Vec<Vec<(u8, ConvexWindow)>>,
}

impl ModelSet {
    pub fn new(kind: PointSetKind) -> Result<Self> {
        match kind {
            PointSetKind::SquareLattice => Ok(ModelSet {
                kind,
                windows: vec![],
                diff_windows: vec![],
            }),
            PointSetKind::SilverMean => Self::silver_mean(),
            PointSetKind::AmmannBeenker => Self::ammann_beenker(),
            PointSetKind::Penrose => Self::penrose(),
        }
    }

    /// Window `[−√2/2, √2/2]`.
    pub fn silver_mean() -> Result<Self> {
        let h = qh((0, 1), (1, 2), Basis::Sqrt2);
        let w = ConvexWindow::interval(-&h, h)?;
        Self::single(PointSetKind::SilverMean, w)
    }

    /// Window: internal projection of the centred unit 4-cube, a regular
    /// octagon of side 1 with two horizontal edges.
    pub fn ammann_beenker() -> Result<Self> {
        let roots = octagonal_roots();
        let star: Vec<ExactPoint2> = (0..4).map(|k| roots[(3 * k) % 8].clone()).collect();
        let half = QuadVal::new(rat(1, 2), rat(0, 1), Basis::Sqrt2);
        let mut corners = Vec::with_capacity(16);
        for mask in 0..16u32 {
            let mut p = ExactPoint2::zero(Basis::Sqrt2);
            for (k, e) in star.iter().enumerate() {
                let s = if mask >> k & 1 == 1 { half.clone() } else { -&half };
                p = p.try_add(&e.scale(&s)?)?;
            }
            corners.push(p);
        }
        Self::single(PointSetKind::AmmannBeenker, ConvexWindow::hull_of(&corners)?)
    }

    /// Windows `P_j`, the hulls of the internal images of 0/1 vectors of
    /// coordinate sum `j`, for the four classes `j = 1..4`.
    pub fn penrose() -> Result<Self> {
        let roots = pentagonal_roots();
        let star: Vec<ExactPoint2> = (0..5).map(|k| roots[(2 * k) % 5].clone()).collect();
        let mut windows = Vec::with_capacity(4);
        for j in 1..=4u32 {
            let pts: Vec<ExactPoint2> = (0..32u32)
                .filter(|m| m.count_ones() == j)
                .map(|m| {
                    let c: Vec<i64> = (0..5).map(|k| (m >> k & 1) as i64).collect();
                    combine(&c, &star)
                })
                .collect();
            windows.push(ConvexWindow::hull_of(&pts)?);
        }
        let mut diff_windows = Vec::with_capacity(5);
        for shift in 0..5u8 {
            let mut row = Vec::new();
            for i in 1..=4u8 {
                let j = (i + shift) % 5;
                if j == 0 {
                    continue;
                }
                let d = windows[j as usize - 1].minkowski_difference(&windows[i as usize - 1])?;
                row.push((i, d));
            }
            diff_windows.push(row);
        }
        Ok(ModelSet {
            kind: PointSetKind::Penrose,
            windows,
            diff_windows,
        })
    }

    fn single(kind: PointSetKind, w: ConvexWindow) -> Result<Self> {
        let d = w.minkowski_difference(&w)?;
        Ok(ModelSet {
            kind,
            windows: vec![w],
            diff_windows: vec![vec![(0, d)]],
        })
    }

    pub fn kind(&self) -> PointSetKind {
        self.kind
    }

    pub fn windows(&self) -> &[ConvexWindow] {
        &self.windows
    }

    /// Window of a Penrose class (1..=4) or the single window.
    pub fn window_for_class(&self, class: u8) -> Option<&ConvexWindow> {
        match self.kind {
            PointSetKind::Penrose => match class {
                1..=4 => self.windows.get(class as usize - 1),
                _ => None,
            },
            _ => self.windows.first(),
        }
    }

    /// `(i, W_{i+c} − W_i)` for a class shift `c`.
    pub fn difference_windows(&self, class_shift: u8) -> &[(u8, ConvexWindow)] {
        let idx = if self.kind == PointSetKind::Penrose { class_shift as usize % 5 } else { 0 };
        self.diff_windows.get(idx).map(Vec::as_slice).unwrap_or(&[])
    }

    fn check(&self, p: &LatticePoint) -> Result<()> {
        if self.kind == PointSetKind::SquareLattice {
            return Err(ShellError::Unsupported("the square lattice has no internal space"));
        }
        if p.coeffs.len() != self.kind.rank() {
            return Err(ShellError::CoefficientCount {
                expected: self.kind.rank(),
                got: p.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn phys(&self, p: &LatticePoint) -> Result<EmbeddedPoint> {
        self.check(p)?;
        let c = &p.coeffs;
        Ok(match self.kind {
            PointSetKind::SilverMean => EmbeddedPoint::Line(q2(c[0], c[1])),
            PointSetKind::AmmannBeenker => EmbeddedPoint::Plane(combine(c, &octagonal_roots()[..4])),
            PointSetKind::Penrose => EmbeddedPoint::Plane(combine(c, &pentagonal_roots())),
            PointSetKind::SquareLattice => unreachable!(),
        })
    }

    pub fn int_star(&self, p: &LatticePoint) -> Result<EmbeddedPoint> {
        self.check(p)?;
        let c = &p.coeffs;
        Ok(match self.kind {
            PointSetKind::SilverMean => EmbeddedPoint::Line(q2(c[0], -c[1])),
            PointSetKind::AmmannBeenker => {
                let r = octagonal_roots();
                let star: Vec<_> = (0..4).map(|k| r[(3 * k) % 8].clone()).collect();
                EmbeddedPoint::Plane(combine(c, &star))
            }
            PointSetKind::Penrose => {
                let r = pentagonal_roots();
                let star: Vec<_> = (0..5).map(|k| r[(2 * k) % 5].clone()).collect();
                EmbeddedPoint::Plane(combine(c, &star))
            }
            PointSetKind::SquareLattice => unreachable!(),
        })
    }

    /// Float physical coordinates (one entry in 1D).
    pub fn phys_f64(&self, p: &LatticePoint) -> Vec<f64> {
        let c = &p.coeffs;
        match self.kind {
            PointSetKind::SquareLattice => vec![c[0] as f64, c[1] as f64],
            PointSetKind::SilverMean => vec![c[0] as f64 + c[1] as f64 * std::f64::consts::SQRT_2],
            _ => {
                let (x, y) = FloatFrame::apply(&FloatFrame::new(self.kind).phys, c);
                vec![x, y]
            }
        }
    }

    pub fn membership(&self, p: &LatticePoint) -> Result<bool> {
        self.check(p)?;
        let class = if self.kind == PointSetKind::Penrose { p.class5() } else { 0 };
        match self.window_for_class(class) {
            Some(w) => w.contains_open(&self.int_star(p)?),
            None => Ok(false),
        }
    }

    /// Candidate coefficient vectors with `|phys| ≤ rmax` and `|star| ≤ internal`
    /// (both in floats with a margin), enumerated inside the ellipsoid given by
    /// the norm identity.
    fn candidates(&self, rmax: f64, internal: f64) -> Vec<Vec<i64>> {
        let eps = 1e-7;
        let phys_lim = rmax * (1.0 + CUTOFF_SLACK) + eps;
        let star_lim = internal + eps;
        let r_outer = rmax + 1.0;
        match self.kind {
            PointSetKind::SilverMean => {
                // y² + y'² = 2a² + 4b²
                let bound = r_outer * r_outer + star_lim * star_lim;
                let bmax = (bound / 4.0).sqrt().floor() as i64;
                let s = std::f64::consts::SQRT_2;
                let mut out = Vec::new();
                for b in -bmax..=bmax {
                    let rest = bound - 4.0 * (b * b) as f64;
                    let amax = (rest / 2.0).max(0.0).sqrt().floor() as i64;
                    for a in -amax..=amax {
                        let y = a as f64 + b as f64 * s;
                        let yc = a as f64 - b as f64 * s;
                        if y.abs() <= phys_lim && yc.abs() <= star_lim {
                            out.push(vec![a, b]);
                        }
                    }
                }
                out
            }
            PointSetKind::AmmannBeenker => {
                // |phys|² + |star|² = 2 Σ n²
                let bound = (r_outer * r_outer + star_lim * star_lim) / 2.0;
                let m = bound.sqrt().floor() as i64;
                let frame = FloatFrame::new(self.kind);
                (-m..=m)
                    .into_par_iter()
                    .flat_map_iter(|n0| {
                        let mut out = Vec::new();
                        let r0 = bound - (n0 * n0) as f64;
                        let m1 = r0.max(0.0).sqrt().floor() as i64;
                        for n1 in -m1..=m1 {
                            let r1 = r0 - (n1 * n1) as f64;
                            let m2 = r1.max(0.0).sqrt().floor() as i64;
                            for n2 in -m2..=m2 {
                                let r2 = r1 - (n2 * n2) as f64;
                                let m3 = r2.max(0.0).sqrt().floor() as i64;
                                for n3 in -m3..=m3 {
                                    let c = [n0, n1, n2, n3];
                                    let (px, py) = FloatFrame::apply(&frame.phys, &c);
                                    if px.hypot(py) > phys_lim {
                                        continue;
                                    }
                                    let (sx, sy) = FloatFrame::apply(&frame.star, &c);
                                    if sx.hypot(sy) <= star_lim {
                                        out.push(c.to_vec());
                                    }
                                }
                            }
                        }
                        out
                    })
                    .collect()
            }
            PointSetKind::Penrose => {
                // 2|phys|² + 2|star|² = 5 Σ n² − (Σ n)², positive definite once n₄ = 0;
                // the inverse form has diagonal 2/5, bounding each coordinate.
                let bound = 2.0 * (r_outer * r_outer + star_lim * star_lim);
                let m = (2.0 * bound / 5.0).sqrt().floor() as i64;
                let frame = FloatFrame::new(self.kind);
                (-m..=m)
                    .into_par_iter()
                    .flat_map_iter(|n0| {
                        let mut out = Vec::new();
                        for n1 in -m..=m {
                            for n2 in -m..=m {
                                for n3 in -m..=m {
                                    let c = [n0, n1, n2, n3, 0];
                                    let sq: i64 = c.iter().map(|x| x * x).sum();
                                    let s: i64 = c.iter().sum();
                                    if (5 * sq - s * s) as f64 > bound {
                                        continue;
                                    }
                                    let (px, py) = FloatFrame::apply(&frame.phys, &c);
                                    if px.hypot(py) > phys_lim {
                                        continue;
                                    }
                                    let (sx, sy) = FloatFrame::apply(&frame.star, &c);
                                    if sx.hypot(sy) <= star_lim {
                                        out.push(c.to_vec());
                                    }
                                }
                            }
                        }
                        out
                    })
                    .collect()
            }
            PointSetKind::SquareLattice => {
                let m = rmax.floor() as i64;
                let mut out = Vec::new();
                for a in -m..=m {
                    for b in -m..=m {
                        if ((a * a + b * b) as f64) <= rmax * rmax * (1.0 + CUTOFF_SLACK) {
                            out.push(vec![a, b]);
                        }
                    }
                }
                out
            }
        }
    }

    fn sort_by_length(&self, items: &mut [(QuadVal, LatticePoint)]) {
        items.sort_by(|(r1, p1), (r2, p2)| {
            r1.exact_cmp(r2)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| p1.coeffs.cmp(&p2.coeffs))
        });
    }

    /// All points of Λ with `|phys| ≤ rmax`, sorted by exact length then coefficients.
    pub fn enumerate_points(&self, rmax: f64) -> Result<Vec<LatticePoint>> {
        if !(rmax > 0.0) {
            return Err(ShellError::InvalidArgument(format!("rmax must be positive, got {rmax}")));
        }
        let internal = self.windows.iter().map(ConvexWindow::circumradius_f64).fold(0.0, f64::max);
        let cands = self.candidates(rmax, internal);
        let mut kept = cands
            .into_par_iter()
            .map(|c| -> Result<Option<(QuadVal, LatticePoint)>> {
                let p = LatticePoint::new(c);
                let r2 = squared_length(self.kind, &p.coeffs)?;
                if !within_cutoff(&r2, rmax) {
                    return Ok(None);
                }
                if self.kind != PointSetKind::SquareLattice && !self.membership(&p)? {
                    return Ok(None);
                }
                Ok(Some((r2, p)))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect::<Vec<_>>();
        self.sort_by_length(&mut kept);
        Ok(kept.into_iter().map(|(_, p)| p).collect())
    }

    /// Nonzero `y ∈ Λ − Λ` with `|y| ≤ rmax` whose internal image lies in the
    /// open difference window, i.e. whose autocorrelation support is nonempty.
    pub fn enumerate_differences(&self, rmax: f64) -> Result<Vec<DiffVector>> {
        if !(rmax > 0.0) {
            return Err(ShellError::InvalidArgument(format!("rmax must be positive, got {rmax}")));
        }
        if self.kind == PointSetKind::SquareLattice {
            return Err(ShellError::Unsupported("difference windows of the square lattice"));
        }
        let internal = self
            .diff_windows
            .iter()
            .flatten()
            .map(|(_, w)| w.circumradius_f64())
            .fold(0.0, f64::max);
        let cands = self.candidates(rmax, internal);
        let mut kept = cands
            .into_par_iter()
            .map(|c| -> Result<Option<(QuadVal, LatticePoint)>> {
                if c.iter().all(|&x| x == 0) {
                    return Ok(None);
                }
                let p = LatticePoint::new(c);
                let r2 = squared_length(self.kind, &p.coeffs)?;
                if !within_cutoff(&r2, rmax) {
                    return Ok(None);
                }
                let star = self.int_star(&p)?;
                let shift = if self.kind == PointSetKind::Penrose { p.class5() } else { 0 };
                for (_, w) in self.difference_windows(shift) {
                    if w.contains_open(&star)? {
                        return Ok(Some((r2, p)));
                    }
                }
                Ok(None)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect::<Vec<_>>();
        self.sort_by_length(&mut kept);
        Ok(kept
            .into_iter()
            .map(|(r2, point)| {
                let class_shift = if self.kind == PointSetKind::Penrose { point.class5() } else { 0 };
                DiffVector { point, r2, class_shift }
            })
            .collect())
    }
}

/// Point dump: coefficients, then float physical coordinates, one point per line.
pub fn dump_points(ms: &ModelSet, points: &[LatticePoint]) -> String {
    let mut out = String::new();
    for p in points {
        let coeffs: Vec<String> = p.coeffs.iter().map(i64::to_string).collect();
        let phys: Vec<String> = ms.phys_f64(p).iter().map(f64::to_string).collect();
        let _ = writeln!(out, "{} {}", coeffs.join(" "), phys.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn silver_mean_embeddings() {
        let ms = ModelSet::silver_mean().unwrap();
        let p = LatticePoint::new(vec![1, 1]);
        assert_eq!(ms.phys(&p).unwrap(), EmbeddedPoint::Line(q2(1, 1)));
        assert_eq!(ms.int_star(&p).unwrap(), EmbeddedPoint::Line(q2(1, -1)));
        assert!(ms.membership(&LatticePoint::new(vec![0, 0])).unwrap());
        assert!(!ms.membership(&LatticePoint::new(vec![0, 1])).unwrap());
    }

    #[test]
    fn coefficient_count_checked() {
        let ms = ModelSet::ammann_beenker().unwrap();
        assert_eq!(
            ms.phys(&LatticePoint::new(vec![1, 0])),
            Err(ShellError::CoefficientCount { expected: 4, got: 2 })
        );
    }

    #[test]
    fn ammann_beenker_unit_edge() {
        let ms = ModelSet::ammann_beenker().unwrap();
        let e0 = LatticePoint::new(vec![1, 0, 0, 0]);
        assert_eq!(ms.phys(&e0).unwrap().norm_sq(), q2(1, 0));
        assert!(ms.membership(&e0).unwrap());
        let w = &ms.windows()[0];
        assert_eq!(w.vertices().unwrap().len(), 8);
        // side 1 octagon: area 2(1+√2), area2 = 4 + 4√2
        assert_eq!(w.area2().unwrap(), q2(4, 4));
    }

    #[test]
    fn penrose_windows_scale_by_tau() {
        let ms = ModelSet::penrose().unwrap();
        let a: Vec<QuadVal> = ms.windows().iter().map(|w| w.area2().unwrap()).collect();
        let tau2 = QuadVal::from_ints(1, 1, Basis::GoldenTau);
        assert_eq!(a[1], &a[0] * &tau2);
        assert_eq!(a[2], a[1]);
        assert_eq!(a[3], a[0]);
        for w in ms.windows() {
            assert_eq!(w.vertices().unwrap().len(), 5);
        }
    }

    #[test]
    fn penrose_shortest_difference() {
        // |1 + ξ²|² = 2 − τ
        let r2 = squared_length(PointSetKind::Penrose, &[1, 0, 1, 0, 0]).unwrap();
        assert_eq!(r2, QuadVal::from_ints(2, -1, Basis::GoldenTau));
        let ms = ModelSet::penrose().unwrap();
        let d = ms.enumerate_differences(0.7).unwrap();
        assert!(!d.is_empty());
        assert!(d.iter().all(|v| v.r2 == QuadVal::from_ints(2, -1, Basis::GoldenTau)));
    }

    #[test]
    fn silver_mean_points_near_origin() {
        let ms = ModelSet::silver_mean().unwrap();
        // neighbours of the window centre sit at ±(1 + √2)
        let pts = ms.enumerate_points(2.5).unwrap();
        let mut vals: Vec<Vec<i64>> = pts.iter().map(|p| p.coeffs.clone()).collect();
        vals.sort();
        assert_eq!(vals, vec![vec![-1, -1], vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn ammann_beenker_first_differences() {
        let ms = ModelSet::ammann_beenker().unwrap();
        let d = ms.enumerate_differences(1.0).unwrap();
        let short = d.iter().filter(|v| v.r2 == q2(2, -1)).count();
        let unit = d.iter().filter(|v| v.r2 == q2(1, 0)).count();
        assert_eq!((short, unit, d.len()), (8, 8, 16));
    }

    #[test]
    fn nonpositive_radius_rejected() {
        let ms = ModelSet::silver_mean().unwrap();
        assert!(ms.enumerate_points(0.0).is_err());
        assert!(ms.enumerate_differences(-1.0).is_err());
    }

    #[test]
    fn dump_format() {
        let ms = ModelSet::silver_mean().unwrap();
        let s = dump_points(&ms, &[LatticePoint::new(vec![1, 0])]);
        assert_eq!(s, "1 0 1\n");
    }
}
