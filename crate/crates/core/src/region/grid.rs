use std::collections::HashSet;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

use super::scan::tpar;

pub const DEFAULT_MAX_SWEEPS: usize = 10_000;

/// Rasterised region family on the square `[-1, 1]^2` of the `t` plane.
#[derive(Clone, Debug, Serialize)]
pub struct GridSet {
    pub lambda: usize,
    pub q: Complex64,
    /// Cells per axis.
    pub resolution: usize,
    /// `(re_min, re_max, im_min, im_max)`.
    pub bbox: (f64, f64, f64, f64),
    /// One raster per level `1..Lambda-1`, row-major with the imaginary part as row.
    #[serde(skip)]
    pub levels: Vec<Vec<bool>>,
    pub escaped: bool,
    /// First computed point with `|t| >= 1`, if any.
    pub escape_point: Option<Complex64>,
    pub sweeps: usize,
}

impl GridSet {
    fn cell_size(&self) -> f64 {
        2.0 / self.resolution as f64
    }

    /// Cell containing `t` (nearest cell centre), if inside the box.
    pub fn cell_of(&self, t: Complex64) -> Option<usize> {
        cell_index(t, self.resolution)
    }

    pub fn centre(&self, cell: usize) -> Complex64 {
        centre(cell, self.resolution)
    }

    pub fn contains(&self, level: usize, t: Complex64) -> bool {
        level >= 1 && level <= self.levels.len() && self.cell_of(t).is_some_and(|c| self.levels[level - 1][c])
    }

    pub fn count(&self, level: usize) -> usize {
        self.levels[level - 1].iter().filter(|b| **b).count()
    }

    /// Cell centres of one level, in raster order.
    pub fn points(&self, level: usize) -> Vec<Complex64> {
        self.levels[level - 1].iter().enumerate().filter(|(_, b)| **b).map(|(c, _)| self.centre(c)).collect()
    }

    /// Half-diagonal of a cell: the largest distance from a point to its cell centre.
    pub fn rounding_radius(&self) -> f64 {
        self.cell_size() * std::f64::consts::SQRT_2 / 2.0
    }
}

fn cell_index(t: Complex64, n: usize) -> Option<usize> {
    if !t.is_finite() {
        return None;
    }
    let h = 2.0 / n as f64;
    let i = ((t.re + 1.0) / h).floor();
    let j = ((t.im + 1.0) / h).floor();
    if i < 0.0 || j < 0.0 || i >= n as f64 || j >= n as f64 {
        return None;
    }
    Some(j as usize * n + i as usize)
}

fn centre(cell: usize, n: usize) -> Complex64 {
    let h = 2.0 / n as f64;
    let (i, j) = (cell % n, cell / n);
    Complex64::new(-1.0 + (i as f64 + 0.5) * h, -1.0 + (j as f64 + 0.5) * h)
}

pub fn grid_closure(q: Complex64, lambda: usize, resolution: usize) -> Result<GridSet> {
    grid_closure_with(q, lambda, resolution, DEFAULT_MAX_SWEEPS)
}

/// Closure of `{1/(1-q)}` under the rules `S_k subset S_{k+1}`,
/// `S_k S_l subset S_min(k,l)` and `S_k || S_l subset S_{k+l}`, with every
/// new point rounded to its cell. Stops as soon as a sweep produces a point
/// with `|t| >= 1`.
///
/// Cells are represented by their centres, except the cell of `t_0`, which
/// keeps the exact value so that `t_0 || t = t_0` is not smeared.
pub fn grid_closure_with(q: Complex64, lambda: usize, resolution: usize, max_sweeps: usize) -> Result<GridSet> {
    if !(3..=4).contains(&lambda) {
        return Err(Error::limit(format!("grid closure supports Lambda in {{3, 4}}, got {lambda}")));
    }
    if !resolution.is_power_of_two() || !(2..=2048).contains(&resolution) {
        return Err(Error::domain(format!("resolution {resolution} must be a power of two in [2, 2048]")));
    }
    if q == Complex64::new(0.0, 0.0) || q == Complex64::new(1.0, 0.0) || !q.is_finite() {
        return Err(Error::domain("q must be finite and different from 0 and 1"));
    }
    let n = resolution;
    let levels_n = lambda - 1;
    let t0 = 1.0 / (1.0 - q);
    let mut set = GridSet {
        lambda,
        q,
        resolution,
        bbox: (-1.0, 1.0, -1.0, 1.0),
        levels: vec![vec![false; n * n]; levels_n],
        escaped: false,
        escape_point: None,
        sweeps: 0,
    };
    if t0.norm() >= 1.0 {
        set.escaped = true;
        set.escape_point = Some(t0);
        return Ok(set);
    }
    let c0 = cell_index(t0, n).expect("inside the unit disc");
    let rep = |c: usize| if c == c0 { t0 } else { centre(c, n) };

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); levels_n];
    let mut frontier: Vec<(usize, usize)> = vec![(0, c0)];
    set.levels[0][c0] = true;
    members[0].push(c0);

    while !frontier.is_empty() {
        if set.sweeps >= max_sweeps {
            return Err(Error::NonConvergence(format!("grid closure did not settle in {max_sweeps} sweeps")));
        }
        set.sweeps += 1;
        // new cells per frontier entry, or the first escaping value
        let levels = &set.levels;
        let members_ref = &members;
        let produced: Vec<std::result::Result<Vec<(usize, usize)>, Complex64>> = frontier
            .par_iter()
            .map(|&(k, a)| {
                let ta = rep(a);
                let mut seen = HashSet::new();
                let mut keep = |level: usize, t: Complex64| -> std::result::Result<(), Complex64> {
                    if !t.is_finite() || t.norm() >= 1.0 {
                        return Err(t);
                    }
                    if let Some(c) = cell_index(t, n) {
                        if !levels[level][c] {
                            seen.insert((level, c));
                        }
                    }
                    Ok(())
                };
                if k + 1 < levels_n {
                    keep(k + 1, ta)?;
                }
                for (l, ms) in members_ref.iter().enumerate() {
                    for &b in ms {
                        let tb = rep(b);
                        keep(k.min(l), ta * tb)?;
                        // levels are 0-based: (k+1) + (l+1) <= Lambda - 1
                        if k + l + 2 < lambda {
                            keep(k + l + 1, tpar(ta, tb, q))?;
                        }
                    }
                }
                let mut out: Vec<_> = seen.into_iter().collect();
                out.sort_unstable();
                Ok(out)
            })
            .collect();
        let mut next = Vec::new();
        for item in produced {
            match item {
                Err(t) => {
                    set.escaped = true;
                    set.escape_point = Some(t);
                    return Ok(set);
                }
                Ok(cells) => {
                    for (level, c) in cells {
                        if !set.levels[level][c] {
                            set.levels[level][c] = true;
                            next.push((level, c));
                        }
                    }
                }
            }
        }
        for &(level, c) in &next {
            members[level].push(c);
        }
        frontier = next;
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn far_q_stays_bounded() {
        let q = 1.0 + Complex64::from_polar(2.2, PI / 6.0);
        let g = grid_closure(q, 3, 64).unwrap();
        assert!(!g.escaped);
        let t0 = 1.0 / (1.0 - q);
        assert!(g.contains(1, t0) && g.contains(1, t0 * t0));
        assert!(g.count(2) >= g.count(1));
    }

    #[test]
    fn near_one_escapes() {
        let g = grid_closure(Complex64::new(1.1, 0.0), 3, 64).unwrap();
        assert!(g.escaped);
    }

    #[test]
    fn guards() {
        let q = Complex64::new(4.0, 0.0);
        assert!(grid_closure(q, 5, 64).is_err());
        assert!(grid_closure(q, 3, 100).is_err());
        assert!(grid_closure(q, 3, 4096).is_err());
    }

    #[test]
    fn deterministic() {
        let q = 1.0 + Complex64::from_polar(2.4, PI / 3.0);
        let a = grid_closure(q, 3, 64).unwrap();
        let b = grid_closure(q, 3, 64).unwrap();
        assert_eq!(a.levels, b.levels);
    }
}
