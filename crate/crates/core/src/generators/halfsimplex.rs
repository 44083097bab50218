use crate::error::{structural, Result};
use crate::hypergraph::Hypergraph3;
use crate::rational::{fmt_rational, in_unit, int, one, Rational};

/// `x + y + z >= 1`, exactly.
pub fn halfsimplex_edge(x: &Rational, y: &Rational, z: &Rational) -> Result<bool> {
    for v in [x, y, z] {
        if !in_unit(v) {
            return Err(structural(format!("value {v} outside [0,1]")));
        }
    }
    Ok(x + y + z >= one())
}

/// `m` equally spaced points `i/(m-1)` of `[0,1]` (`{0}` when `m = 1`).
pub fn grid_points(m: usize) -> Vec<Rational> {
    if m <= 1 {
        return vec![int(0); m];
    }
    (0..m).map(|i| int(i as i64) / int(m as i64 - 1)).collect()
}

/// Induced half-simplex on three finite point sets, labeled by value.
pub fn gen_halfsimplex_grid(points: [&[Rational]; 3]) -> Result<Hypergraph3> {
    for p in points {
        if let Some(v) = p.iter().find(|v| !in_unit(v)) {
            return Err(structural(format!("value {v} outside [0,1]")));
        }
    }
    let labels = points.map(|p| p.iter().map(fmt_rational).collect());
    Ok(Hypergraph3::from_fn(labels, |x, y, z| {
        &points[0][x] + &points[1][y] + &points[2][z] >= one()
    }))
}
