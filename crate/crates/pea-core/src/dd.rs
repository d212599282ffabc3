//! Double description method: exact vertex enumeration for bounded
//! H-polytopes.
//!
//! The polytope `{ x : A x ≥ b }` is homogenized to the cone
//! `{ (x, t) : A x − b t ≥ 0, t ≥ 0 }` in one extra dimension. The cone is
//! pointed whenever `A` has full column rank, which callers must ensure;
//! its extreme rays are maintained incrementally as the inequality rows are
//! inserted one at a time in input order. Adjacency of rays is decided
//! combinatorially from their zero sets. Rays with a positive last
//! coordinate normalize to the polytope's vertices.
//!
//! All arithmetic is over big integers (rays are kept content-free), so
//! the output is exact and, with the fixed insertion order, bit-stable.

use crate::bitset::BitSet;
use crate::linalg;
use crate::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum DdError {
    #[error("constraint matrix does not have full column rank; the cone is not pointed")]
    NotPointed,
    #[error("the polytope is unbounded")]
    Unbounded,
}

#[derive(Clone)]
struct Ray {
    coords: Vec<BigInt>,
    /// Indices of processed rows this ray is incident to.
    zero_set: BitSet,
}

/// Enumerate the vertices of `{ x : rows_i · x ≥ rhs_i }`.
///
/// Requires the stacked coefficient matrix to have full column rank (the
/// polytope contains no line) and the polytope to be bounded; an empty
/// polytope yields an empty vertex list.
pub fn polytope_vertices(rows: &[Vec<Rat>], rhs: &[Rat]) -> Result<Vec<Vec<Rat>>, DdError> {
    assert_eq!(rows.len(), rhs.len());
    let dim = rows.first().map_or(0, Vec::len);
    let hdim = dim + 1;

    // Homogenized rows (A_i, -b_i) plus the closing row t ≥ 0, cleared to
    // integers.
    let mut hrows: Vec<Vec<BigInt>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut h: Vec<Rat> = row.to_vec();
            h.push(-b.clone());
            clear_denominators(&h)
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); hdim];
    t_row[dim] = BigInt::one();
    hrows.push(t_row);
    let nrows = hrows.len();

    // Initial simplicial cone from a maximal independent subset of rows.
    let basis_rows = independent_subset(&hrows, hdim);
    if basis_rows.len() < hdim {
        return Err(DdError::NotPointed);
    }
    let basis_matrix: Vec<Vec<Rat>> = basis_rows
        .iter()
        .map(|&i| hrows[i].iter().map(big_to_rat).collect())
        .collect();
    let inverse = linalg::invert(&basis_matrix).expect("independent rows are invertible");
    let mut rays: Vec<Ray> = (0..hdim)
        .map(|j| {
            let column: Vec<Rat> = inverse.iter().map(|r| r[j].clone()).collect();
            let coords = clear_denominators(&column);
            let mut zero_set = BitSet::new(nrows);
            for (k, &ri) in basis_rows.iter().enumerate() {
                if k != j {
                    zero_set.insert(ri);
                }
            }
            Ray { coords, zero_set }
        })
        .collect();

    // Insert the remaining rows in input order.
    for ri in 0..nrows {
        if basis_rows.contains(&ri) {
            continue;
        }
        let value = |r: &Ray| -> BigInt {
            hrows[ri]
                .iter()
                .zip(&r.coords)
                .map(|(a, x)| a * x)
                .sum()
        };
        let vals: Vec<BigInt> = rays.iter().map(value).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, v) in rays.iter().zip(&vals) {
            if !v.is_negative() {
                let mut kept = r.clone();
                if v.is_zero() {
                    kept.zero_set.insert(ri);
                }
                next.push(kept);
            }
        }
        for (pi, p) in rays.iter().enumerate() {
            if !vals[pi].is_positive() {
                continue;
            }
            for (ni, n) in rays.iter().enumerate() {
                if !vals[ni].is_negative() {
                    continue;
                }
                let common = p.zero_set.intersection(&n.zero_set);
                let adjacent = rays.iter().enumerate().all(|(oi, o)| {
                    oi == pi || oi == ni || !common.is_subset_of(&o.zero_set)
                });
                if !adjacent {
                    continue;
                }
                // Positive combination landing on the new hyperplane.
                let coords: Vec<BigInt> = p
                    .coords
                    .iter()
                    .zip(&n.coords)
                    .map(|(pc, nc)| &vals[pi] * nc - &vals[ni] * pc)
                    .collect();
                let coords = reduce_content(coords);
                let mut zero_set = common;
                zero_set.insert(ri);
                next.push(Ray { coords, zero_set });
            }
        }
        rays = next;
    }

    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    let mut recession = false;
    for r in &rays {
        let t = &r.coords[dim];
        if t.is_positive() {
            let tq = Rat::from_integer(t.clone());
            vertices.push(
                r.coords[..dim]
                    .iter()
                    .map(|c| Rat::from_integer(c.clone()) / &tq)
                    .collect(),
            );
        } else {
            recession = true;
        }
    }
    if recession && !vertices.is_empty() {
        return Err(DdError::Unbounded);
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}

/// Greedily pick row indices forming a maximal linearly independent set.
fn independent_subset(rows: &[Vec<BigInt>], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut staged: Vec<Vec<Rat>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if chosen.len() == dim {
            break;
        }
        let mut candidate = staged.clone();
        candidate.push(row.iter().map(big_to_rat).collect());
        if linalg::rank(&candidate) > staged.len() {
            staged = candidate;
            chosen.push(i);
        }
    }
    chosen
}

fn big_to_rat(b: &BigInt) -> Rat {
    Rat::from_integer(b.clone())
}

/// Scale a rational vector to integers with content 1.
fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    reduce_content(v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
}

fn reduce_content(v: Vec<BigInt>) -> Vec<BigInt> {
    let gcd = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() || gcd.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &gcd).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn rv(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    fn vertices_of(rows: &[Vec<Rat>], rhs: &[Rat]) -> Vec<Vec<Rat>> {
        polytope_vertices(rows, rhs).unwrap()
    }

    #[test]
    fn unit_square() {
        // x ≥ 0, y ≥ 0, -x ≥ -1, -y ≥ -1
        let rows = vec![rv(&[1, 0]), rv(&[0, 1]), rv(&[-1, 0]), rv(&[0, -1])];
        let rhs = vec![rat(0), rat(0), rat(-1), rat(-1)];
        let vs = vertices_of(&rows, &rhs);
        assert_eq!(
            vs,
            vec![rv(&[0, 0]), rv(&[0, 1]), rv(&[1, 0]), rv(&[1, 1])]
        );
    }

    #[test]
    fn triangle_with_fractional_vertex() {
        // x ≥ 0, y ≥ 0, -2x - y ≥ -1
        let rows = vec![rv(&[1, 0]), rv(&[0, 1]), rv(&[-2, -1])];
        let rhs = vec![rat(0), rat(0), rat(-1)];
        let vs = vertices_of(&rows, &rhs);
        assert_eq!(
            vs,
            vec![rv(&[0, 0]), vec![rat(0), rat(1)], vec![ratio(1, 2), rat(0)]]
        );
    }

    #[test]
    fn single_point_and_empty() {
        // x ≥ 1, -x ≥ -1 pins x = 1.
        let rows = vec![rv(&[1]), rv(&[-1])];
        let rhs = vec![rat(1), rat(-1)];
        assert_eq!(vertices_of(&rows, &rhs), vec![rv(&[1])]);

        // x ≥ 2, -x ≥ -1 is empty.
        let rhs = vec![rat(2), rat(-1)];
        assert_eq!(vertices_of(&rows, &rhs), Vec::<Vec<Rat>>::new());
    }

    #[test]
    fn unbounded_is_detected() {
        let rows = vec![rv(&[1, 0]), rv(&[0, 1])];
        let rhs = vec![rat(0), rat(0)];
        assert_eq!(polytope_vertices(&rows, &rhs), Err(DdError::Unbounded));
    }

    #[test]
    fn rank_deficient_is_rejected() {
        // Only constraints on x+y: lineality along x-y.
        let rows = vec![rv(&[1, 1]), rv(&[-1, -1])];
        let rhs = vec![rat(0), rat(-1)];
        assert_eq!(polytope_vertices(&rows, &rhs), Err(DdError::NotPointed));
    }

    #[test]
    fn simplex_in_three_dimensions() {
        // x, y, z ≥ 0, -(x+y+z) ≥ -1
        let rows = vec![
            rv(&[1, 0, 0]),
            rv(&[0, 1, 0]),
            rv(&[0, 0, 1]),
            rv(&[-1, -1, -1]),
        ];
        let rhs = vec![rat(0), rat(0), rat(0), rat(-1)];
        let vs = vertices_of(&rows, &rhs);
        assert_eq!(vs.len(), 4);
        assert!(vs.contains(&rv(&[0, 0, 0])));
        assert!(vs.contains(&rv(&[1, 0, 0])));
        assert!(vs.contains(&rv(&[0, 1, 0])));
        assert!(vs.contains(&rv(&[0, 0, 1])));
    }

    /// Brute-force oracle: vertices are feasible intersections of `dim`
    /// independent active constraints.
    fn brute_force_vertices(rows: &[Vec<Rat>], rhs: &[Rat], dim: usize) -> Vec<Vec<Rat>> {
        let m = rows.len();
        let mut out: Vec<Vec<Rat>> = Vec::new();
        let mut combo: Vec<usize> = (0..dim).collect();
        loop {
            let system: Vec<Vec<Rat>> = combo
                .iter()
                .map(|&i| {
                    let mut r = rows[i].clone();
                    r.push(rhs[i].clone());
                    r
                })
                .collect();
            if let Some(sol) = linalg::solve_affine(&system, dim) {
                if sol.basis.is_empty() {
                    let x = sol.particular;
                    let feasible = rows.iter().zip(rhs).all(|(row, b)| {
                        row.iter().zip(&x).map(|(a, v)| a * v).sum::<Rat>() >= *b
                    });
                    if feasible && !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
            // Next combination in lexicographic order.
            let mut i = dim;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if combo[i] + (dim - i) < m {
                    combo[i] += 1;
                    for j in i + 1..dim {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_seeded_polytopes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let dim = rng.random_range(2..=3);
            // Random slab constraints around the box [0, 3]^dim keep the
            // polytope bounded and full column rank.
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            let mut rhs: Vec<Rat> = Vec::new();
            for d in 0..dim {
                let mut e = vec![rat(0); dim];
                e[d] = rat(1);
                rows.push(e.clone());
                rhs.push(rat(0));
                rows.push(e.iter().map(|v| -v).collect());
                rhs.push(rat(-3));
            }
            for _ in 0..rng.random_range(1..=3) {
                let coeffs: Vec<Rat> =
                    (0..dim).map(|_| rat(rng.random_range(-2..=2))).collect();
                rows.push(coeffs);
                rhs.push(rat(rng.random_range(-4..=1)));
            }
            let dd = polytope_vertices(&rows, &rhs).unwrap();
            let brute = brute_force_vertices(&rows, &rhs, dim);
            assert_eq!(dd, brute);
        }
    }
}
