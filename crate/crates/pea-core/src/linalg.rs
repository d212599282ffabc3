//! Dense exact-rational linear algebra: reduced row echelon form, affine
//! solution spaces, ranks, and small matrix inverses.

use crate::Rat;
use num_traits::{One, Zero};

/// Reduce `rows` in place to reduced row echelon form.
///
/// Returns the pivot column of each nonzero row, in order.
pub fn rref(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for c2 in 0..ncols {
                    let sub = &f * &rows[r][c2];
                    rows[i][c2] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    rref(&mut m).len()
}

/// Solution of a consistent affine system, parametrized as
/// `x = particular + span(basis)`.
pub struct AffineSolution {
    pub particular: Vec<Rat>,
    /// Basis of the homogeneous solution space, one vector per free column.
    pub basis: Vec<Vec<Rat>>,
}

/// Solve `A x = b` exactly, where each row of `system` is `[a_1..a_n, b]`.
///
/// Returns `None` when the system is inconsistent.
pub fn solve_affine(system: &[Vec<Rat>], nvars: usize) -> Option<AffineSolution> {
    let mut m: Vec<Vec<Rat>> = system.to_vec();
    for row in &m {
        assert_eq!(row.len(), nvars + 1);
    }
    let pivots = rref(&mut m);
    // A pivot in the augmented column marks an inconsistency.
    if pivots.contains(&nvars) {
        return None;
    }
    let mut is_pivot = vec![false; nvars];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut particular = vec![Rat::zero(); nvars];
    for (ri, &c) in pivots.iter().enumerate() {
        particular[c] = m[ri][nvars].clone();
    }
    let mut basis = Vec::new();
    for free in (0..nvars).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); nvars];
        v[free] = Rat::one();
        for (ri, &c) in pivots.iter().enumerate() {
            v[c] = -m[ri][free].clone();
        }
        basis.push(v);
    }
    Some(AffineSolution { particular, basis })
}

/// Invert a square matrix; `None` when singular.
pub fn invert(rows: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Dimension of the affine hull of a point set; `-1` for the empty set.
pub fn affine_rank(points: &[Vec<Rat>]) -> i64 {
    match points.first() {
        None => -1,
        Some(base) => {
            let diffs: Vec<Vec<Rat>> = points[1..]
                .iter()
                .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            rank(&diffs) as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn rv(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn solve_unique() {
        // x + y = 3, x - y = 1  =>  x = 2, y = 1
        let sys = vec![rv(&[1, 1, 3]), rv(&[1, -1, 1])];
        let sol = solve_affine(&sys, 2).unwrap();
        assert_eq!(sol.particular, rv(&[2, 1]));
        assert!(sol.basis.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        // x + y + z = 1
        let sys = vec![rv(&[1, 1, 1, 1])];
        let sol = solve_affine(&sys, 3).unwrap();
        assert_eq!(sol.basis.len(), 2);
        for b in &sol.basis {
            let s: Rat = b.iter().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_inconsistent() {
        let sys = vec![rv(&[1, 1, 0]), rv(&[1, 1, 1])];
        assert!(solve_affine(&sys, 2).is_none());
    }

    #[test]
    fn invert_and_rank() {
        let m = vec![rv(&[2, 0]), rv(&[1, 1])];
        let inv = invert(&m).unwrap();
        assert_eq!(inv[0], vec![ratio(1, 2), rat(0)]);
        assert_eq!(inv[1], vec![ratio(-1, 2), rat(1)]);
        assert!(invert(&[rv(&[1, 2]), rv(&[2, 4])]).is_none());
        assert_eq!(rank(&[rv(&[1, 2]), rv(&[2, 4])]), 1);
    }

    #[test]
    fn affine_rank_of_points() {
        assert_eq!(affine_rank(&[]), -1);
        assert_eq!(affine_rank(&[rv(&[5, 5])]), 0);
        assert_eq!(affine_rank(&[rv(&[0, 0]), rv(&[1, 1]), rv(&[2, 2])]), 1);
        assert_eq!(affine_rank(&[rv(&[0, 0]), rv(&[0, 1]), rv(&[1, 0])]), 2);
    }
}
