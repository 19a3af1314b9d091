//! Square periodic approximants of the Ammann–Beenker tiling.
//!
//! The internal map `n ↦ Σ n_k ζ^{3k}` is deformed by replacing √2 with a
//! convergent `p/q`. Its kernel is the rank-2 lattice
//! `K = span{(p, q, 0, −q), (0, q, p, q)}`, which becomes the period lattice;
//! in physical space (true √2) both generators have length `p + q√2` and are
//! orthogonal. A vertex is a class of `Z⁴/K` whose deformed internal image
//! lies in the deformed, slightly shifted octagon.
//!
//! Internal coordinates are scaled by `60q` so that everything, including the
//! window shift, is an integer.

use std::collections::HashMap;

use crate::error::{Result, ShellError};
use crate::exactnum::{Basis, QuadVal};

pub type Vertex4 = [i64; 4];

/// Convergents of √2 used for orders 1..=8.
pub const PELL_CONVERGENTS: [(i64, i64); 8] = [
    (1, 1),
    (3, 2),
    (7, 5),
    (17, 12),
    (41, 29),
    (99, 70),
    (239, 169),
    (577, 408),
];

/// Direction pairs in tile-type order.
pub const DIRECTION_PAIRS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn pair_index(i: u8, j: u8) -> usize {
    DIRECTION_PAIRS
        .iter()
        .position(|&(a, b)| (a, b) == (i.min(j), i.max(j)))
        .expect("distinct directions")
}

/// Rhombus spanned by `e_i`, `e_j` (i < j). Corner order: base, base + e_i,
/// base + e_j, base + e_i + e_j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tile {
    pub dirs: (u8, u8),
    pub corners: [u32; 4],
}

pub fn unit(k: usize) -> Vertex4 {
    let mut e = [0; 4];
    e[k] = 1;
    e
}

pub fn add4(a: &Vertex4, b: &Vertex4) -> Vertex4 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// Period lattice and canonical representatives of `Z⁴/K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Period {
    pub p: i64,
    pub q: i64,
}

impl Period {
    pub fn generators(&self) -> [Vertex4; 2] {
        [[self.p, self.q, 0, -self.q], [0, self.q, self.p, self.q]]
    }

    /// Representative with `n₀, n₂ ∈ [0, p)`.
    pub fn canonical(&self, n: &Vertex4) -> Vertex4 {
        let [k1, k2] = self.generators();
        let a = n[0].div_euclid(self.p);
        let b = n[2].div_euclid(self.p);
        [
            n[0] - a * k1[0] - b * k2[0],
            n[1] - a * k1[1] - b * k2[1],
            n[2] - a * k1[2] - b * k2[2],
            n[3] - a * k1[3] - b * k2[3],
        ]
    }

    /// Physical side length `p + q√2` of the square cell.
    pub fn side(&self) -> f64 {
        self.p as f64 + self.q as f64 * std::f64::consts::SQRT_2
    }

    /// Tile count per direction pair: absolute Plücker coordinates of `K`.
    pub fn expected_tile_counts(&self) -> [usize; 6] {
        let [k1, k2] = self.generators();
        let mut out = [0; 6];
        for (slot, &(i, j)) in DIRECTION_PAIRS.iter().enumerate() {
            let (i, j) = (i as usize, j as usize);
            out[slot] = (k1[i] * k2[j] - k1[j] * k2[i]).unsigned_abs() as usize;
        }
        out
    }

    pub fn expected_vertex_count(&self) -> usize {
        self.expected_tile_counts().iter().sum()
    }
}

/// Physical position of a lattice vector, true √2.
pub fn phys_f64(n: &Vertex4) -> (f64, f64) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    (
        n[0] as f64 + h * (n[1] - n[3]) as f64,
        n[2] as f64 + h * (n[1] + n[3]) as f64,
    )
}

/// Exact squared physical length `|Σ n_k ζ^k|²` as integer coefficients of 1 and √2.
pub fn squared_length_key(d: &Vertex4) -> (i64, i64) {
    (
        d.iter().map(|x| x * x).sum(),
        d[0] * d[1] + d[1] * d[2] + d[2] * d[3] - d[0] * d[3],
    )
}

#[derive(Clone, Debug)]
pub struct Approximant {
    pub order: u32,
    pub period: Period,
    pub vertices: Vec<Vertex4>,
    pub tiles: Vec<Tile>,
}

fn cross(o: (i128, i128), a: (i128, i128), b: (i128, i128)) -> i128 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn hull_i128(mut pts: Vec<(i128, i128)>) -> Vec<(i128, i128)> {
    pts.sort();
    pts.dedup();
    let mut lower: Vec<(i128, i128)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i128, i128)> = Vec::new();
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
}

/// Rebuilds the rhombi as 2-faces whose four corners are all vertices, then
/// checks the per-type counts against the period lattice.
pub fn reconstruct_tiles(period: Period, vertices: &[Vertex4]) -> Result<Vec<Tile>> {
    let index: HashMap<Vertex4, u32> = vertices.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
    if index.len() != vertices.len() {
        return Err(ShellError::Inconsistent("duplicate vertices".into()));
    }
    let mut tiles = Vec::with_capacity(vertices.len());
    for (id, v) in vertices.iter().enumerate() {
        for &(i, j) in &DIRECTION_PAIRS {
            let ei = unit(i as usize);
            let ej = unit(j as usize);
            let look = |n: Vertex4| index.get(&period.canonical(&n)).copied();
            if let (Some(a), Some(b), Some(c)) = (look(add4(v, &ei)), look(add4(v, &ej)), look(add4(&add4(v, &ei), &ej))) {
                tiles.push(Tile {
                    dirs: (i, j),
                    corners: [id as u32, a, b, c],
                });
            }
        }
    }
    let mut counts = [0usize; 6];
    for t in &tiles {
        counts[pair_index(t.dirs.0, t.dirs.1)] += 1;
    }
    if counts != period.expected_tile_counts() {
        return Err(ShellError::Inconsistent(format!(
            "tile counts {counts:?}, expected {:?}",
            period.expected_tile_counts()
        )));
    }
    // squares (pairs 02, 13) have area 1, the others √2/2; total must be (p + q√2)²
    let squares = (counts[1] + counts[4]) as i64;
    let rhombi = (counts[0] + counts[2] + counts[3] + counts[5]) as i64;
    let area2 = QuadVal::from_ints(2 * squares, rhombi, Basis::Sqrt2);
    let (p, q) = (period.p, period.q);
    let cell2 = QuadVal::from_ints(2 * (p * p + 2 * q * q), 4 * p * q, Basis::Sqrt2);
    if area2 != cell2 {
        return Err(ShellError::Inconsistent("tile area does not fill the cell".into()));
    }
    Ok(tiles)
}

/// Builds the approximant of the given order (1..=8); order 5 has 8119 and
/// order 6 has 47321 vertices per cell.
pub fn build_approximant(order: u32) -> Result<Approximant> {
    if !(1..=8).contains(&order) {
        return Err(ShellError::OrderOutOfRange(order));
    }
    let (p, q) = PELL_CONVERGENTS[order as usize - 1];
    let period = Period { p, q };
    let (pw, qw) = (p as i128, q as i128);
    let internal = |n: &Vertex4| -> (i128, i128) {
        let n: [i128; 4] = [n[0] as i128, n[1] as i128, n[2] as i128, n[3] as i128];
        (60 * qw * n[0] + 30 * pw * (n[3] - n[1]), -60 * qw * n[2] + 30 * pw * (n[1] + n[3]))
    };
    // shift (1/(12q), 1/(20q)) in unscaled units
    let shift = (5i128, 3i128);
    let corners: Vec<(i128, i128)> = (0..16u32)
        .map(|mask| {
            let eps: [i128; 4] = std::array::from_fn(|k| if mask >> k & 1 == 1 { 1 } else { -1 });
            // 60q·M(ε/2)
            (
                30 * qw * eps[0] + 15 * pw * (eps[3] - eps[1]) + shift.0,
                -30 * qw * eps[2] + 15 * pw * (eps[1] + eps[3]) + shift.1,
            )
        })
        .collect();
    let window = hull_i128(corners);
    if window.len() != 8 {
        return Err(ShellError::Degenerate(format!("window has {} vertices", window.len())));
    }
    let (xmin, xmax) = window.iter().fold((i128::MAX, i128::MIN), |(a, b), v| (a.min(v.0), b.max(v.0)));
    let (ymin, ymax) = window.iter().fold((i128::MAX, i128::MIN), |(a, b), v| (a.min(v.1), b.max(v.1)));
    let inside = |pt: (i128, i128)| -> Result<bool> {
        let mut strictly = true;
        for i in 0..window.len() {
            let c = cross(window[i], window[(i + 1) % window.len()], pt);
            if c < 0 {
                return Ok(false);
            }
            if c == 0 {
                strictly = false;
            }
        }
        if !strictly {
            return Err(ShellError::Degenerate(format!("lattice point {pt:?} on the window boundary")));
        }
        Ok(true)
    };

    let step = 30 * pw;
    let mut vertices = Vec::with_capacity(period.expected_vertex_count());
    for n0 in 0..p {
        for n2 in 0..p {
            let bx = 60 * qw * n0 as i128;
            let by = -60 * qw * n2 as i128;
            let ulo = (xmin - bx).div_euclid(step);
            let uhi = (xmax - bx).div_euclid(step) + 1;
            let wlo = (ymin - by).div_euclid(step);
            let whi = (ymax - by).div_euclid(step) + 1;
            for u in ulo..=uhi {
                for w in wlo..=whi {
                    if (u + w).rem_euclid(2) != 0 {
                        continue;
                    }
                    let n1 = ((w - u) / 2) as i64;
                    let n3 = ((w + u) / 2) as i64;
                    let n = [n0, n1, n2, n3];
                    debug_assert_eq!(internal(&n), (bx + step * u, by + step * w));
                    if inside((bx + step * u, by + step * w))? {
                        vertices.push(period.canonical(&n));
                    }
                }
            }
        }
    }
    if vertices.len() != period.expected_vertex_count() {
        return Err(ShellError::Inconsistent(format!(
            "{} vertices, expected {}",
            vertices.len(),
            period.expected_vertex_count()
        )));
    }
    vertices.sort();
    let tiles = reconstruct_tiles(period, &vertices)?;
    Ok(Approximant {
        order,
        period,
        vertices,
        tiles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_counts_follow_recurrence() {
        let counts: Vec<usize> = (1..=6).map(|k| build_approximant(k).unwrap().vertices.len()).collect();
        assert_eq!(counts, vec![7, 41, 239, 1393, 8119, 47321]);
        for w in counts.windows(3) {
            assert_eq!(w[2], 6 * w[1] - w[0]);
        }
    }

    #[test]
    fn corners_are_vertices() {
        let a = build_approximant(3).unwrap();
        assert_eq!(a.tiles.len(), a.vertices.len());
        let mut covered = vec![false; a.vertices.len()];
        for t in &a.tiles {
            let base = a.vertices[t.corners[0] as usize];
            let ei = unit(t.dirs.0 as usize);
            let ej = unit(t.dirs.1 as usize);
            let expect = [base, add4(&base, &ei), add4(&base, &ej), add4(&add4(&base, &ei), &ej)];
            for (c, e) in t.corners.iter().zip(expect) {
                assert_eq!(a.vertices[*c as usize], a.period.canonical(&e));
                covered[*c as usize] = true;
            }
        }
        assert!(covered.iter().all(|&c| c));
    }

    #[test]
    fn order_range_checked() {
        assert_eq!(build_approximant(0).unwrap_err(), ShellError::OrderOutOfRange(0));
        assert_eq!(build_approximant(9).unwrap_err(), ShellError::OrderOutOfRange(9));
    }

    #[test]
    fn canonical_is_idempotent_and_period_invariant() {
        let per = Period { p: 17, q: 12 };
        let [k1, k2] = per.generators();
        let n = [40, -3, -25, 7];
        let c = per.canonical(&n);
        assert_eq!(per.canonical(&c), c);
        let shifted = add4(&add4(&n, &k1), &[-2 * k2[0], -2 * k2[1], -2 * k2[2], -2 * k2[3]]);
        assert_eq!(per.canonical(&shifted), c);
        let (x, y) = phys_f64(&k1);
        assert!((x - per.side()).abs() < 1e-9 && y.abs() < 1e-9);
    }
}
