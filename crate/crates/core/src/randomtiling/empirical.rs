//! Shelling measured directly on a periodic vertex set.

use std::collections::HashMap;

use rayon::prelude::*;

use super::approximant::{phys_f64, squared_length_key, Period, Vertex4};
use super::state::TilingState;
use crate::error::{Result, ShellError};
use crate::exactnum::{Basis, QuadVal};
use crate::modelsets::{within_cutoff, PointSetKind};
use crate::shelling::ShellRecord;

fn shell_counts(period: Period, positions: &[Vertex4], rmax: f64) -> Result<HashMap<(i64, i64), u64>> {
    let side = period.side();
    if !(rmax > 0.0) {
        return Err(ShellError::InvalidArgument(format!("rmax must be positive, got {rmax}")));
    }
    if rmax >= side / 2.0 {
        return Err(ShellError::CutoffTooLarge {
            r: rmax,
            half_period: side / 2.0,
        });
    }
    let [k1, k2] = period.generators();
    let phys: Vec<(f64, f64)> = positions
        .iter()
        .map(|n| {
            let (x, y) = phys_f64(n);
            (x.rem_euclid(side), y.rem_euclid(side))
        })
        .collect();

    let ncell = (side / rmax).floor() as usize;
    let use_cells = ncell >= 3;
    let ncell = if use_cells { ncell } else { 1 };
    let cell_of = |x: f64| ((x / side * ncell as f64) as usize).min(ncell - 1);
    let mut cells: Vec<Vec<u32>> = vec![Vec::new(); ncell * ncell];
    for (i, &(x, y)) in phys.iter().enumerate() {
        cells[cell_of(x) * ncell + cell_of(y)].push(i as u32);
    }
    let offsets: Vec<isize> = if use_cells { vec![-1, 0, 1] } else { vec![0] };

    let counts = (0..positions.len())
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<(i64, i64), u64>, i| {
            let (xi, yi) = phys[i];
            let (cx, cy) = (cell_of(xi) as isize, cell_of(yi) as isize);
            for &ox in &offsets {
                for &oy in &offsets {
                    let c = (cx + ox).rem_euclid(ncell as isize) as usize * ncell
                        + (cy + oy).rem_euclid(ncell as isize) as usize;
                    for &j in &cells[c] {
                        let j = j as usize;
                        if j == i {
                            continue;
                        }
                        let (rx, ry) = (phys[j].0 - xi, phys[j].1 - yi);
                        let dx = rx - side * (rx / side).round();
                        let dy = ry - side * (ry / side).round();
                        if dx * dx + dy * dy > rmax * rmax * (1.0 + 1e-6) {
                            continue;
                        }
                        let (pi, pj) = (&positions[i], &positions[j]);
                        let (ri, rj) = (phys_f64(pi), phys_f64(pj));
                        let a = ((dx - (rj.0 - ri.0)) / side).round() as i64;
                        let b = ((dy - (rj.1 - ri.1)) / side).round() as i64;
                        let d: Vertex4 = std::array::from_fn(|k| pj[k] - pi[k] + a * k1[k] + b * k2[k]);
                        *acc.entry(squared_length_key(&d)).or_insert(0) += 1;
                    }
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(counts)
}

fn to_records(sums: HashMap<(i64, i64), f64>, rmax: f64) -> Vec<ShellRecord> {
    let mut shells: Vec<(QuadVal, f64)> = sums
        .into_iter()
        .map(|((a, b), s)| (QuadVal::from_ints(a, b, Basis::Sqrt2), s))
        .filter(|(r2, _)| within_cutoff(r2, rmax))
        .collect();
    shells.sort_by(|a, b| a.0.exact_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let kind = PointSetKind::AmmannBeenker;
    let mut out = vec![ShellRecord::empirical(kind, QuadVal::zero(Basis::Sqrt2), 1.0)];
    out.extend(shells.into_iter().map(|(r2, s)| ShellRecord::empirical(kind, r2, s)));
    out
}

/// Average number of vertices at each distance `0 < r ≤ rmax` from a
/// vertex of the periodic set, using minimum-image distances. Requires
/// `rmax` below half the period.
pub fn empirical_shelling(period: Period, positions: &[Vertex4], rmax: f64) -> Result<Vec<ShellRecord>> {
    let counts = shell_counts(period, positions, rmax)?;
    let v = positions.len() as f64;
    Ok(to_records(counts.into_iter().map(|(k, c)| (k, c as f64 / v)).collect(), rmax))
}

impl TilingState {
    pub fn shelling(&self, rmax: f64) -> Result<Vec<ShellRecord>> {
        empirical_shelling(self.period(), self.positions(), rmax)
    }
}

/// Averages the shelling of independently thermalized replicas; replica `i`
/// uses seed `seed + i`. Shells missing from a replica count as zero.
pub fn replica_shelling(
    order: u32,
    flips_per_vertex: f64,
    seed: u64,
    replicas: usize,
    rmax: f64,
) -> Result<Vec<ShellRecord>> {
    if replicas == 0 {
        return Err(ShellError::InvalidArgument("at least one replica is needed".into()));
    }
    let base = super::approximant::build_approximant(order)?;
    let runs = (0..replicas)
        .into_par_iter()
        .map(|i| {
            let mut st = TilingState::new(base.clone(), seed.wrapping_add(i as u64))?;
            st.thermalize(flips_per_vertex)?;
            let counts = shell_counts(st.period(), st.positions(), rmax)?;
            Ok((counts, st.vertex_count()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sums: HashMap<(i64, i64), f64> = HashMap::new();
    for (counts, v) in runs {
        for (k, c) in counts {
            *sums.entry(k).or_insert(0.0) += c as f64 / v as f64 / replicas as f64;
        }
    }
    Ok(to_records(sums, rmax))
}

#[cfg(test)]
mod tests {
    use super::super::approximant::build_approximant;
    use super::*;

    #[test]
    fn unit_shells_of_small_approximant() {
        let a = build_approximant(4).unwrap();
        let s = empirical_shelling(a.period, &a.vertices, 1.01).unwrap();
        assert_eq!(s[0].sigma_float, 1.0);
        assert_eq!(s[1].r2, QuadVal::from_ints(2, -1, Basis::Sqrt2));
        assert_eq!(s[2].r2, QuadVal::from_ints(1, 0, Basis::Sqrt2));
        // every vertex has one edge per tile corner, each edge counted twice
        let tiles = a.tiles.len() as f64;
        assert!((s[2].sigma_float - 4.0 * tiles / a.vertices.len() as f64).abs() < 1e-12);
    }

    #[test]
    fn cutoff_checked() {
        let a = build_approximant(2).unwrap();
        assert!(matches!(
            empirical_shelling(a.period, &a.vertices, 100.0),
            Err(ShellError::CutoffTooLarge { .. })
        ));
        assert!(empirical_shelling(a.period, &a.vertices, -1.0).is_err());
    }

    #[test]
    fn cell_list_agrees_with_brute_force() {
        let a = build_approximant(3).unwrap();
        let side = a.period.side();
        let r = 2.3;
        let fast = shell_counts(a.period, &a.vertices, r).unwrap();
        let mut slow: HashMap<(i64, i64), u64> = HashMap::new();
        let [k1, k2] = a.period.generators();
        for (i, pi) in a.vertices.iter().enumerate() {
            for (j, pj) in a.vertices.iter().enumerate() {
                for u in -1..=1i64 {
                    for w in -1..=1i64 {
                        if i == j && u == 0 && w == 0 {
                            continue;
                        }
                        let d: Vertex4 = std::array::from_fn(|k| pj[k] - pi[k] + u * k1[k] + w * k2[k]);
                        let (x, y) = phys_f64(&d);
                        if x * x + y * y <= r * r * (1.0 + 1e-6) && x.abs() < side / 2.0 && y.abs() < side / 2.0 {
                            *slow.entry(squared_length_key(&d)).or_insert(0) += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(fast, slow);
    }
}
