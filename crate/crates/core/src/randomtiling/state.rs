//! Mutable tiling on the torus with simpleton flips.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::approximant::{add4, pair_index, unit, Approximant, Period, Tile, Vertex4};
use crate::error::{Result, ShellError};

const NO_SLOT: u32 = u32::MAX;
/// A vertex of a four-direction rhombus tiling has at most eight edges.
const MAX_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
struct Incidence {
    tiles: [u32; MAX_DEGREE],
    len: u8,
}

impl Incidence {
    fn as_slice(&self) -> &[u32] {
        &self.tiles[..self.len as usize]
    }

    fn push(&mut self, t: u32) -> Result<()> {
        if self.len as usize == MAX_DEGREE {
            return Err(ShellError::Inconsistent("vertex with more than 8 tiles".into()));
        }
        self.tiles[self.len as usize] = t;
        self.len += 1;
        Ok(())
    }

    fn remove(&mut self, t: u32) {
        if let Some(i) = self.as_slice().iter().position(|&x| x == t) {
            self.tiles[i] = self.tiles[self.len as usize - 1];
            self.len -= 1;
        }
    }
}

/// Periodic rhombus tiling plus the index of flippable vertices and the RNG
/// driving thermalization (ChaCha8 seeded with `seed_from_u64`).
#[derive(Clone, Debug)]
pub struct TilingState {
    order: u32,
    period: Period,
    positions: Vec<Vertex4>,
    tiles: Vec<Tile>,
    incidence: Vec<Incidence>,
    flippable: Vec<u32>,
    slot: Vec<u32>,
    seed: u64,
    accepted_flips: u64,
    rng: ChaCha8Rng,
}

/// Geometry of the hexagon around a degree-3 vertex.
struct Hexagon {
    tiles: [u32; 3],
    /// Direction not used by each tile.
    missing: [usize; 3],
    signs: [i64; 4],
    /// Neighbours `v + s_d e_d`, indexed by direction.
    inner: [u32; 4],
    /// Far corners, indexed like `tiles`.
    outer: [u32; 3],
}

impl TilingState {
    pub fn new(approx: Approximant, seed: u64) -> Result<Self> {
        Self::from_parts(approx.order, approx.period, approx.vertices, approx.tiles, seed, 0)
    }

    pub(crate) fn from_parts(
        order: u32,
        period: Period,
        positions: Vec<Vertex4>,
        tiles: Vec<Tile>,
        seed: u64,
        accepted_flips: u64,
    ) -> Result<Self> {
        let mut incidence = vec![Incidence::default(); positions.len()];
        for (id, t) in tiles.iter().enumerate() {
            for &c in &t.corners {
                incidence[c as usize].push(id as u32)?;
            }
        }
        // resumed runs continue on a stream derived from the flip count
        let stream = seed ^ accepted_flips.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut state = TilingState {
            order,
            period,
            slot: vec![NO_SLOT; positions.len()],
            positions,
            tiles,
            incidence,
            flippable: Vec::new(),
            seed,
            accepted_flips,
            rng: ChaCha8Rng::seed_from_u64(stream),
        };
        for v in 0..state.positions.len() {
            state.refresh(v as u32);
        }
        Ok(state)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn period(&self) -> Period {
        self.period
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn accepted_flips(&self) -> u64 {
        self.accepted_flips
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[Vertex4] {
        &self.positions
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len as usize
    }

    pub fn is_flippable(&self, v: usize) -> bool {
        v < self.positions.len() && self.slot[v] != NO_SLOT
    }

    /// Vertices with exactly three incident tiles, ascending.
    pub fn flippable_sites(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.flippable.iter().map(|&v| v as usize).collect();
        out.sort_unstable();
        out
    }

    pub fn flippable_count(&self) -> usize {
        self.flippable.len()
    }

    /// Tiles per direction pair, in [`super::DIRECTION_PAIRS`] order.
    pub fn tile_counts(&self) -> [usize; 6] {
        let mut out = [0; 6];
        for t in &self.tiles {
            out[pair_index(t.dirs.0, t.dirs.1)] += 1;
        }
        out
    }

    /// Hash of vertex positions and tile corners; equal configurations hash equal.
    pub fn digest(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.positions.hash(&mut h);
        self.tiles.hash(&mut h);
        h.finish()
    }

    fn refresh(&mut self, v: u32) {
        let want = self.incidence[v as usize].len == 3;
        let has = self.slot[v as usize] != NO_SLOT;
        if want && !has {
            self.slot[v as usize] = self.flippable.len() as u32;
            self.flippable.push(v);
        } else if !want && has {
            let i = self.slot[v as usize] as usize;
            let last = *self.flippable.last().expect("nonempty");
            self.flippable.swap_remove(i);
            if last != v {
                self.slot[last as usize] = i as u32;
            }
            self.slot[v as usize] = NO_SLOT;
        }
    }

    fn hexagon(&self, v: usize) -> Result<Hexagon> {
        let inc = self.incidence[v].as_slice();
        if inc.len() != 3 {
            return Err(ShellError::NotFlippable(v));
        }
        let mut signs = [0i64; 4];
        let mut inner = [NO_SLOT; 4];
        let mut outer = [0u32; 3];
        let mut missing = [0usize; 3];
        let mut used = [0u8; 4];
        for (slot, &tid) in inc.iter().enumerate() {
            let t = &self.tiles[tid as usize];
            let m = t
                .corners
                .iter()
                .position(|&c| c as usize == v)
                .ok_or_else(|| ShellError::Inconsistent("incidence out of sync".into()))?;
            for (bit, d) in [(1usize, t.dirs.0 as usize), (2usize, t.dirs.1 as usize)] {
                let s = if m & bit == 0 { 1 } else { -1 };
                if signs[d] != 0 && signs[d] != s {
                    return Err(ShellError::Inconsistent(format!("vertex {v}: edge sign clash")));
                }
                signs[d] = s;
                inner[d] = t.corners[m ^ bit];
                used[d] += 1;
            }
            outer[slot] = t.corners[m ^ 3];
        }
        // each of three directions must be shared by exactly two tiles
        let dirs: Vec<usize> = (0..4).filter(|&d| used[d] > 0).collect();
        if dirs.len() != 3 || dirs.iter().any(|&d| used[d] != 2) {
            return Err(ShellError::Inconsistent(format!("vertex {v}: not a hexagon centre")));
        }
        for (slot, &tid) in inc.iter().enumerate() {
            let t = &self.tiles[tid as usize];
            missing[slot] = *dirs
                .iter()
                .find(|&&d| d != t.dirs.0 as usize && d != t.dirs.1 as usize)
                .expect("three directions");
        }
        let mut ids: Vec<u32> = dirs.iter().map(|&d| inner[d]).chain(outer).chain([v as u32]).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != 7 {
            return Err(ShellError::Inconsistent(format!("vertex {v}: hexagon wraps the torus")));
        }
        Ok(Hexagon {
            tiles: [inc[0], inc[1], inc[2]],
            missing,
            signs,
            inner,
            outer,
        })
    }

    /// Moves `v` across its hexagon: each of the three tiles is translated by
    /// `s_k e_k`, `k` being the direction it does not use. The vertex keeps
    /// its id, so flipping it again restores the previous state.
    pub fn flip(&mut self, v: usize) -> Result<()> {
        if !self.is_flippable(v) {
            return Err(ShellError::NotFlippable(v));
        }
        let hex = self.hexagon(v)?;
        let far_corner = |dirs: (u8, u8), hex: &Hexagon, tiles: &[Tile]| -> u32 {
            let slot = hex
                .tiles
                .iter()
                .position(|&t| tiles[t as usize].dirs == (dirs.0.min(dirs.1), dirs.0.max(dirs.1)))
                .expect("hexagon tile");
            hex.outer[slot]
        };

        let mut new_corners = [[0u32; 4]; 3];
        for (slot, &tid) in hex.tiles.iter().enumerate() {
            let t = self.tiles[tid as usize];
            let k = hex.missing[slot] as u8;
            let m = t.corners.iter().position(|&c| c as usize == v).expect("corner");
            let mut c = t.corners;
            c[m] = hex.inner[k as usize];
            c[m ^ 1] = far_corner((t.dirs.0, k), &hex, &self.tiles);
            c[m ^ 2] = far_corner((t.dirs.1, k), &hex, &self.tiles);
            c[m ^ 3] = v as u32;
            new_corners[slot] = c;
        }

        let mut touched: Vec<u32> = hex.outer.to_vec();
        touched.extend(hex.inner.iter().copied().filter(|&x| x != NO_SLOT));
        touched.push(v as u32);
        for &x in &touched {
            for &tid in &hex.tiles {
                self.incidence[x as usize].remove(tid);
            }
        }
        for (slot, &tid) in hex.tiles.iter().enumerate() {
            self.tiles[tid as usize].corners = new_corners[slot];
            for &c in &new_corners[slot] {
                self.incidence[c as usize].push(tid)?;
            }
        }
        let mut moved = self.positions[v];
        for d in 0..4 {
            if hex.signs[d] != 0 {
                let e = unit(d);
                moved = add4(&moved, &[hex.signs[d] * e[0], hex.signs[d] * e[1], hex.signs[d] * e[2], hex.signs[d] * e[3]]);
            }
        }
        self.positions[v] = self.period.canonical(&moved);
        for &x in &touched {
            self.refresh(x);
        }
        Ok(())
    }

    /// Random simpleton flips until `round(flips_per_vertex · V)` have been
    /// accepted. Sites are drawn uniformly from the flippable set; a move
    /// that grows the set from `F` to `F'` is accepted with probability
    /// `F/F'`, which makes the chain sample all tilings with equal weight.
    pub fn thermalize(&mut self, flips_per_vertex: f64) -> Result<u64> {
        if !(flips_per_vertex >= 0.0) {
            return Err(ShellError::InvalidArgument(format!(
                "flips per vertex must be nonnegative, got {flips_per_vertex}"
            )));
        }
        let target = (flips_per_vertex * self.positions.len() as f64).round() as u64;
        let mut accepted = 0u64;
        while accepted < target {
            let before = self.flippable.len();
            if before == 0 {
                return Err(ShellError::Inconsistent("no flippable vertex left".into()));
            }
            let v = self.flippable[self.rng.random_range(0..before)] as usize;
            self.flip(v)?;
            let after = self.flippable.len();
            if after > before && self.rng.random::<f64>() * after as f64 >= before as f64 {
                self.flip(v)?;
                continue;
            }
            accepted += 1;
        }
        self.accepted_flips += accepted;
        Ok(accepted)
    }

    /// Cross-checks incidence, the flippable index and the per-type tile counts.
    pub fn validate(&self) -> Result<()> {
        let mut inc = vec![Vec::new(); self.positions.len()];
        for (id, t) in self.tiles.iter().enumerate() {
            let base = self.positions[t.corners[0] as usize];
            let ei = unit(t.dirs.0 as usize);
            let ej = unit(t.dirs.1 as usize);
            let expect = [base, add4(&base, &ei), add4(&base, &ej), add4(&add4(&base, &ei), &ej)];
            for (c, e) in t.corners.iter().zip(expect) {
                if self.positions[*c as usize] != self.period.canonical(&e) {
                    return Err(ShellError::Inconsistent(format!("tile {id} corner mismatch")));
                }
                inc[*c as usize].push(id as u32);
            }
        }
        for (v, list) in inc.iter_mut().enumerate() {
            list.sort_unstable();
            let mut have = self.incidence[v].as_slice().to_vec();
            have.sort_unstable();
            if *list != have {
                return Err(ShellError::Inconsistent(format!("vertex {v} incidence mismatch")));
            }
            if (list.len() == 3) != self.is_flippable(v) {
                return Err(ShellError::Inconsistent(format!("vertex {v} flippable index stale")));
            }
            if list.len() < 3 {
                return Err(ShellError::Inconsistent(format!("vertex {v} has degree {}", list.len())));
            }
        }
        if self.tile_counts() != self.period.expected_tile_counts() {
            return Err(ShellError::Inconsistent("tile counts changed".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::approximant::build_approximant;
    use super::*;

    fn state(order: u32, seed: u64) -> TilingState {
        TilingState::new(build_approximant(order).unwrap(), seed).unwrap()
    }

    #[test]
    fn perfect_tiling_has_flippable_sites() {
        let s = state(3, 1);
        s.validate().unwrap();
        assert!(!s.flippable_sites().is_empty());
        for v in 0..s.vertex_count() {
            if s.degree(v) >= 4 {
                assert!(!s.flippable_sites().contains(&v));
            }
        }
    }

    #[test]
    fn flip_twice_restores() {
        let mut s = state(3, 1);
        let before = s.digest();
        let counts = s.tile_counts();
        let v = s.flippable_sites()[0];
        s.flip(v).unwrap();
        assert_ne!(s.digest(), before);
        assert!(s.is_flippable(v));
        assert_eq!(s.tile_counts(), counts);
        s.validate().unwrap();
        s.flip(v).unwrap();
        assert_eq!(s.digest(), before);
    }

    #[test]
    fn non_flippable_rejected() {
        let mut s = state(3, 1);
        let v = (0..s.vertex_count()).find(|&v| s.degree(v) > 3).unwrap();
        assert_eq!(s.flip(v), Err(ShellError::NotFlippable(v)));
    }

    #[test]
    fn zero_flips_is_identity_and_seed_is_deterministic() {
        let mut s = state(3, 9);
        let d = s.digest();
        assert_eq!(s.thermalize(0.0).unwrap(), 0);
        assert_eq!(s.digest(), d);

        let mut a = state(3, 42);
        let mut b = state(3, 42);
        a.thermalize(5.0).unwrap();
        b.thermalize(5.0).unwrap();
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.digest(), d);
        a.validate().unwrap();
    }
}
