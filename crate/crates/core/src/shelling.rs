//! Averaged shelling from window autocorrelation, plus the two closed forms:
//! the silver mean chain and the central shelling of the square lattice.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Result, ShellError};
use crate::exactnum::{rat, Basis, QuadVal};
use crate::modelsets::{DiffVector, ModelSet, PointSetKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Exact,
    Empirical,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Exact => "exact",
            Source::Empirical => "empirical",
        }
    }
}

/// One shell: squared radius and the averaged number of points on it.
#[derive(Clone, Debug, PartialEq)]
pub struct ShellRecord {
    pub kind: PointSetKind,
    pub r2: QuadVal,
    pub r: f64,
    /// Length of the internal-space counterpart, `sqrt(conj(r2))`.
    pub r_int: f64,
    pub sigma_exact: Option<QuadVal>,
    pub sigma_float: f64,
    pub source: Source,
}

impl ShellRecord {
    pub fn exact(kind: PointSetKind, r2: QuadVal, sigma: QuadVal) -> Self {
        let sigma_float = sigma.to_f64();
        ShellRecord {
            kind,
            r: r2.to_f64().sqrt(),
            r_int: r2.conj().to_f64().sqrt(),
            r2,
            sigma_exact: Some(sigma),
            sigma_float,
            source: Source::Exact,
        }
    }

    pub fn empirical(kind: PointSetKind, r2: QuadVal, sigma: f64) -> Self {
        ShellRecord {
            kind,
            r: r2.to_f64().sqrt(),
            r_int: r2.conj().to_f64().sqrt(),
            r2,
            sigma_exact: None,
            sigma_float: sigma,
            source: Source::Empirical,
        }
    }
}

/// Autocorrelation coefficient per point: the fraction of points `x` with
/// `x + y` also in the set, as a normalized window overlap.
///
/// For the Penrose set the four class windows enter with their relative
/// frequencies: `Σ_i vol(P_i ∩ (P_{i+c} − y*)) / Σ_i vol(P_i)`.
pub fn nu(ms: &ModelSet, y: &DiffVector) -> Result<QuadVal> {
    let star = ms.int_star(&y.point)?;
    match ms.kind() {
        PointSetKind::Penrose => {
            let windows = ms.windows();
            let total = windows
                .iter()
                .try_fold(QuadVal::zero(Basis::GoldenTau), |acc, w| acc.try_add(&w.measure()?))?;
            let mut overlap = QuadVal::zero(Basis::GoldenTau);
            for i in 1..=4u8 {
                let j = (i + y.class_shift) % 5;
                if j == 0 {
                    continue;
                }
                let m = windows[i as usize - 1].overlap_measure(&windows[j as usize - 1], &star)?;
                overlap = overlap.try_add(&m)?;
            }
            overlap.try_div(&total)
        }
        PointSetKind::SquareLattice => Err(ShellError::Unsupported("window overlap of the square lattice")),
        _ => ms.windows()[0].overlap_fraction(&star),
    }
}

/// Shells with `0 ≤ r ≤ rmax`, sorted by exact `r²`, starting with `σ(0) = 1`.
pub fn averaged_shelling(ms: &ModelSet, rmax: f64) -> Result<Vec<ShellRecord>> {
    if !(rmax > 0.0) {
        return Err(ShellError::InvalidArgument(format!("rmax must be positive, got {rmax}")));
    }
    let kind = ms.kind();
    if kind == PointSetKind::SquareLattice {
        // lattices: averaged and central shelling coincide
        let mmax = (rmax * rmax * (1.0 + crate::modelsets::CUTOFF_SLACK)).floor() as u64;
        let mut out = vec![ShellRecord::exact(kind, QuadVal::zero(Basis::Sqrt2), QuadVal::one(Basis::Sqrt2))];
        out.extend(central_square_shells(mmax)?);
        return Ok(out);
    }
    let basis = kind.basis().expect("model sets carry a basis");
    let diffs = ms.enumerate_differences(rmax)?;
    let nus = diffs
        .par_iter()
        .map(|d| nu(ms, d))
        .collect::<Result<Vec<_>>>()?;

    let mut groups: HashMap<QuadVal, QuadVal> = HashMap::new();
    for (d, v) in diffs.iter().zip(nus) {
        let slot = groups.entry(d.r2.clone()).or_insert_with(|| QuadVal::zero(basis));
        *slot = slot.try_add(&v)?;
    }
    let mut shells: Vec<(QuadVal, QuadVal)> = groups.into_iter().filter(|(_, s)| s.sign() > 0).collect();
    shells.sort_by(|a, b| a.0.exact_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));

    let mut out = Vec::with_capacity(shells.len() + 1);
    out.push(ShellRecord::exact(kind, QuadVal::zero(basis), QuadVal::one(basis)));
    out.extend(shells.into_iter().map(|(r2, s)| ShellRecord::exact(kind, r2, s)));
    Ok(out)
}

/// `σ(y) = 2·max(0, 1 − |y'|/√2)` for `y > 0`, `σ(0) = 1`.
pub fn silver_mean_sigma_closed_form(y: &QuadVal) -> Result<QuadVal> {
    if y.basis() != Basis::Sqrt2 || !y.is_integral() {
        return Err(ShellError::NotIntegral(y.to_string()));
    }
    if y.sign() < 0 {
        return Err(ShellError::InvalidArgument(format!("negative radius {y}")));
    }
    if y.is_zero() {
        return Ok(QuadVal::one(Basis::Sqrt2));
    }
    let half_sqrt2 = QuadVal::new(rat(0, 1), rat(1, 2), Basis::Sqrt2);
    let f = QuadVal::one(Basis::Sqrt2) - y.conj().abs() * half_sqrt2;
    if f.sign() <= 0 {
        return Ok(QuadVal::zero(Basis::Sqrt2));
    }
    Ok(&f + &f)
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Number of points of Z² on the circle `m² + n² = M`: `4·a(M)` with `a`
/// multiplicative and `a(p^ℓ)` fixed by `p mod 4`.
pub fn central_square_lattice(m: u64) -> Result<u64> {
    if m < 1 {
        return Err(ShellError::InvalidArgument("M must be at least 1".into()));
    }
    let mut a = 1u64;
    for (p, l) in factorize(m) {
        a *= match (p, p % 4) {
            (2, _) => 1,
            (_, 1) => l as u64 + 1,
            _ if l % 2 == 1 => 0,
            _ => 1,
        };
    }
    Ok(4 * a)
}

/// Square-lattice shells `1 ≤ M ≤ mmax` that are occupied.
pub fn central_square_shells(mmax: u64) -> Result<Vec<ShellRecord>> {
    let mut out = Vec::new();
    for m in 1..=mmax {
        let s = central_square_lattice(m)?;
        if s > 0 {
            out.push(ShellRecord::exact(
                PointSetKind::SquareLattice,
                QuadVal::from_ints(m as i64, 0, Basis::Sqrt2),
                QuadVal::from_ints(s as i64, 0, Basis::Sqrt2),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modelsets::LatticePoint;

    fn q2(a: i64, b: i64) -> QuadVal {
        QuadVal::from_ints(a, b, Basis::Sqrt2)
    }

    #[test]
    fn fig1_values() {
        let ms = [1, 2, 4, 5, 8, 9, 10, 13, 16];
        let got: Vec<u64> = ms.iter().map(|&m| central_square_lattice(m).unwrap()).collect();
        assert_eq!(got, vec![4, 4, 4, 8, 4, 4, 8, 8, 4]);
        assert_eq!(central_square_lattice(3).unwrap(), 0);
        assert_eq!(central_square_lattice(25).unwrap(), 12);
        assert!(central_square_lattice(0).is_err());
    }

    #[test]
    fn central_matches_brute_force_small() {
        for m in 1..=500u64 {
            let r = (m as f64).sqrt() as i64 + 1;
            let mut count = 0;
            for a in -r..=r {
                for b in -r..=r {
                    if (a * a + b * b) as u64 == m {
                        count += 1;
                    }
                }
            }
            assert_eq!(central_square_lattice(m).unwrap(), count, "M = {m}");
        }
    }

    #[test]
    fn nu_at_zero_is_one() {
        for ms in [ModelSet::silver_mean().unwrap(), ModelSet::ammann_beenker().unwrap(), ModelSet::penrose().unwrap()] {
            let rank = ms.kind().rank();
            let b = ms.kind().basis().unwrap();
            let y = DiffVector {
                point: LatticePoint::new(vec![0; rank]),
                r2: QuadVal::zero(b),
                class_shift: 0,
            };
            assert_eq!(nu(&ms, &y).unwrap(), QuadVal::one(b));
        }
    }

    #[test]
    fn silver_mean_unit_step() {
        let ms = ModelSet::silver_mean().unwrap();
        let y = DiffVector {
            point: LatticePoint::new(vec![1, 0]),
            r2: q2(1, 0),
            class_shift: 0,
        };
        assert_eq!(nu(&ms, &y).unwrap(), QuadVal::new(rat(1, 1), rat(-1, 2), Basis::Sqrt2));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(silver_mean_sigma_closed_form(&q2(0, 0)).unwrap(), q2(1, 0));
        assert_eq!(silver_mean_sigma_closed_form(&q2(1, 0)).unwrap(), q2(2, -1));
        // y' = 3 − 2√2, σ = 2 − √2(3 − 2√2) = 6 − 3√2
        assert_eq!(silver_mean_sigma_closed_form(&q2(3, 2)).unwrap(), q2(6, -3));
        assert!(silver_mean_sigma_closed_form(&q2(0, 5)).unwrap().is_zero());
        let half = QuadVal::new(rat(1, 2), rat(0, 1), Basis::Sqrt2);
        assert!(matches!(silver_mean_sigma_closed_form(&half), Err(ShellError::NotIntegral(_))));
        let t = QuadVal::from_ints(1, 0, Basis::GoldenTau);
        assert!(silver_mean_sigma_closed_form(&t).is_err());
    }

    #[test]
    fn ammann_beenker_first_shells() {
        let ms = ModelSet::ammann_beenker().unwrap();
        let shells = averaged_shelling(&ms, 1.5).unwrap();
        assert_eq!(shells[0].sigma_exact, Some(q2(1, 0)));
        assert_eq!(shells[1].r2, q2(2, -1));
        assert_eq!(shells[1].sigma_exact, Some(q2(4, -2)));
        assert_eq!(shells[2].r2, q2(1, 0));
        assert_eq!(shells[2].sigma_exact, Some(q2(4, 0)));
        assert!((shells[1].sigma_float - 1.17157).abs() < 1e-5);
    }

    #[test]
    fn square_lattice_averaged_is_central() {
        let ms = ModelSet::new(PointSetKind::SquareLattice).unwrap();
        let shells = averaged_shelling(&ms, 4.0).unwrap();
        let m: Vec<i64> = shells.iter().map(|s| s.r2.to_f64() as i64).collect();
        assert_eq!(m, vec![0, 1, 2, 4, 5, 8, 9, 10, 13, 16]);
    }
}
