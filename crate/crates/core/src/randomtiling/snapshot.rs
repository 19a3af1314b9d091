//! Plain-text snapshots of a tiling state.
//!
//! ```text
//! order 5
//! pell 41/29
//! seed 7
//! flips 8119000
//! vertices 8119
//! n0 n1 n2 n3
//! ...
//! ```

use std::fmt::Write as _;

use super::approximant::{reconstruct_tiles, Period, PELL_CONVERGENTS};
use super::state::TilingState;
use crate::error::{Result, ShellError};

pub fn save_snapshot(state: &TilingState) -> String {
    let period = state.period();
    let mut out = String::new();
    writeln!(out, "order {}", state.order()).unwrap();
    writeln!(out, "pell {}/{}", period.p, period.q).unwrap();
    writeln!(out, "seed {}", state.seed()).unwrap();
    writeln!(out, "flips {}", state.accepted_flips()).unwrap();
    writeln!(out, "vertices {}", state.vertex_count()).unwrap();
    for n in state.positions() {
        writeln!(out, "{} {} {} {}", n[0], n[1], n[2], n[3]).unwrap();
    }
    out
}

fn header<'a>(lines: &mut impl Iterator<Item = &'a str>, key: &str) -> Result<&'a str> {
    let line = lines
        .next()
        .ok_or_else(|| ShellError::Snapshot(format!("missing `{key}` line")))?;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| ShellError::Snapshot(format!("expected `{key}`, got `{line}`")))
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| ShellError::Snapshot(format!("bad {what}: `{s}`")))
}

/// Restores a state written by [`save_snapshot`]. Tiles are rebuilt from the
/// vertex set; the RNG continues on a stream fixed by seed and flip count.
pub fn load_snapshot(text: &str) -> Result<TilingState> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let order: u32 = number(header(&mut lines, "order")?, "order")?;
    if !(1..=PELL_CONVERGENTS.len() as u32).contains(&order) {
        return Err(ShellError::OrderOutOfRange(order));
    }
    let pell = header(&mut lines, "pell")?;
    let (p, q) = pell
        .split_once('/')
        .ok_or_else(|| ShellError::Snapshot(format!("bad pell `{pell}`")))?;
    let period = Period {
        p: number(p, "pell")?,
        q: number(q, "pell")?,
    };
    let (ep, eq) = PELL_CONVERGENTS[order as usize - 1];
    if (period.p, period.q) != (ep, eq) {
        return Err(ShellError::Snapshot(format!("order {order} does not use {}/{}", period.p, period.q)));
    }
    let seed: u64 = number(header(&mut lines, "seed")?, "seed")?;
    let flips: u64 = number(header(&mut lines, "flips")?, "flips")?;
    let count: usize = number(header(&mut lines, "vertices")?, "vertex count")?;
    let mut vertices = Vec::with_capacity(count);
    for line in lines {
        let parts: Vec<i64> = line
            .split_whitespace()
            .map(|t| number(t, "coordinate"))
            .collect::<Result<_>>()?;
        let n: [i64; 4] = parts
            .try_into()
            .map_err(|_| ShellError::Snapshot(format!("vertex line `{line}` needs 4 integers")))?;
        if period.canonical(&n) != n {
            return Err(ShellError::Snapshot(format!("vertex `{line}` is not canonical")));
        }
        vertices.push(n);
    }
    if vertices.len() != count {
        return Err(ShellError::Snapshot(format!("{} vertices listed, header says {count}", vertices.len())));
    }
    let tiles = reconstruct_tiles(period, &vertices)?;
    let state = TilingState::from_parts(order, period, vertices, tiles, seed, flips)?;
    state.validate()?;
    Ok(state)
}
