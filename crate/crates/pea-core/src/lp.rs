//! Exact rational simplex method.
//!
//! Dense two-phase tableau over `BigRational` with Bland's anticycling
//! rule: the entering column is the lowest-index improving column and ratio
//! ties leave the lowest-index basic variable, so the method terminates and
//! the pivot sequence is deterministic for a fixed row and column order.

use crate::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One constraint `coeffs · x (≤ | = | ≥) rhs`.
#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

impl Row {
    pub fn new(coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> Self {
        Row { coeffs, relation, rhs }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LpResult {
    /// Maximizer over `{ x ≥ 0 : rows }` with its objective value.
    Optimal { solution: Vec<Rat>, objective: Rat },
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn optimal(self) -> Option<(Vec<Rat>, Rat)> {
        match self {
            LpResult::Optimal { solution, objective } => Some((solution, objective)),
            _ => None,
        }
    }
}

struct Tableau {
    nvars: usize,
    ncols: usize,
    art_start: usize,
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
}

/// Maximize `objective · x` subject to `rows` and `x ≥ 0`.
pub fn maximize(objective: &[Rat], rows: &[Row]) -> LpResult {
    let nvars = objective.len();
    for r in rows {
        assert_eq!(r.coeffs.len(), nvars, "row width must match variable count");
    }

    // Orient every row so its right-hand side is nonnegative.
    let oriented: Vec<Row> = rows
        .iter()
        .map(|r| {
            if r.rhs.is_negative() {
                Row {
                    coeffs: r.coeffs.iter().map(|c| -c).collect(),
                    relation: match r.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Eq => Relation::Eq,
                        Relation::Ge => Relation::Le,
                    },
                    rhs: -r.rhs.clone(),
                }
            } else {
                r.clone()
            }
        })
        .collect();

    let m = oriented.len();
    let n_slack = oriented
        .iter()
        .filter(|r| r.relation != Relation::Eq)
        .count();
    let n_art = oriented
        .iter()
        .filter(|r| r.relation != Relation::Le)
        .count();
    let art_start = nvars + n_slack;
    let ncols = art_start + n_art;

    let mut t = Tableau {
        nvars,
        ncols,
        art_start,
        rows: Vec::with_capacity(m),
        rhs: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
    };
    let mut next_slack = nvars;
    let mut next_art = art_start;
    for r in &oriented {
        let mut row = vec![Rat::zero(); ncols];
        row[..nvars].clone_from_slice(&r.coeffs);
        let basic = match r.relation {
            Relation::Le => {
                row[next_slack] = Rat::one();
                next_slack += 1;
                next_slack - 1
            }
            Relation::Ge => {
                row[next_slack] = -Rat::one();
                next_slack += 1;
                row[next_art] = Rat::one();
                next_art += 1;
                next_art - 1
            }
            Relation::Eq => {
                row[next_art] = Rat::one();
                next_art += 1;
                next_art - 1
            }
        };
        t.rows.push(row);
        t.rhs.push(r.rhs.clone());
        t.basis.push(basic);
    }

    if n_art > 0 {
        // Phase 1: maximize -(sum of artificials); feasible iff optimum 0.
        let mut cost = vec![Rat::zero(); ncols];
        for c in cost.iter_mut().skip(art_start) {
            *c = -Rat::one();
        }
        if t.run(&cost, ncols) == Outcome::Unbounded {
            unreachable!("phase 1 objective is bounded above by 0");
        }
        let value: Rat = t
            .basis
            .iter()
            .zip(&t.rhs)
            .filter(|(b, _)| **b >= art_start)
            .map(|(_, v)| v.clone())
            .sum();
        if !value.is_zero() {
            return LpResult::Infeasible;
        }
        t.evict_artificials();
    }

    // Phase 2 over the structural and slack columns only.
    let mut cost = vec![Rat::zero(); ncols];
    cost[..nvars].clone_from_slice(objective);
    match t.run(&cost, art_start) {
        Outcome::Unbounded => LpResult::Unbounded,
        Outcome::Optimal => {
            let mut solution = vec![Rat::zero(); t.nvars];
            for (i, &b) in t.basis.iter().enumerate() {
                if b < t.nvars {
                    solution[b] = t.rhs[i].clone();
                }
            }
            let objective = solution.iter().zip(objective).map(|(x, c)| x * c).sum();
            LpResult::Optimal { solution, objective }
        }
    }
}

/// Decide whether `{ x ≥ 0 : rows }` is nonempty.
pub fn feasible(nvars: usize, rows: &[Row]) -> bool {
    let zero_obj = vec![Rat::zero(); nvars];
    !matches!(maximize(&zero_obj, rows), LpResult::Infeasible)
}

#[derive(PartialEq, Eq)]
enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    /// Bland-rule simplex restricted to columns `< col_limit`.
    fn run(&mut self, cost: &[Rat], col_limit: usize) -> Outcome {
        loop {
            // Fresh reduced costs: r_j = c_j - c_B · column_j.
            let entering = (0..col_limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rj = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() && !cost[self.basis[i]].is_zero() {
                        rj -= &cost[self.basis[i]] * &row[j];
                    }
                }
                rj.is_positive()
            });
            let Some(j) = entering else {
                return Outcome::Optimal;
            };

            let mut leaving: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &self.rhs[i] / &row[j];
                    let better = match &leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leaving else {
                return Outcome::Unbounded;
            };
            self.pivot(r, j);
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let inv = self.rows[r][j].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for c in 0..self.ncols {
                let sub = &f * &self.rows[r][c];
                self.rows[i][c] -= sub;
            }
            let sub = &f * &self.rhs[r];
            self.rhs[i] -= sub;
        }
        self.basis[r] = j;
    }

    /// After a zero-value phase 1, pivot basic artificials out or drop
    /// their rows as redundant.
    fn evict_artificials(&mut self) {
        let mut drop_rows = Vec::new();
        for i in 0..self.rows.len() {
            if self.basis[i] < self.art_start {
                continue;
            }
            match (0..self.art_start).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => self.pivot(i, j),
                None => drop_rows.push(i),
            }
        }
        for &i in drop_rows.iter().rev() {
            self.rows.remove(i);
            self.rhs.remove(i);
            self.basis.remove(i);
        }
        // Zero the artificial columns so stale entries cannot re-enter.
        for row in &mut self.rows {
            for c in row.iter_mut().skip(self.art_start) {
                *c = Rat::zero();
            }
        }
    }
}
