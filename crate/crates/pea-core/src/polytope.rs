//! The state polytope: exact vertex enumeration of
//! `{ s : s(0) = 0, s(1) = 1, s additive, s ≥ 0 }`.
//!
//! The additivity and normalization equalities are eliminated exactly,
//! parametrizing the affine solution space; the positivity inequalities
//! are then handed to the double description method in the reduced
//! coordinates. The empty polytope is a first-class answer. Constraint
//! rows are processed in element order and the vertex list is sorted by
//! value vector, so the output is bit-stable.

use crate::algebra::PseudoEffectAlgebra;
use crate::dd;
use crate::linalg::{self, AffineSolution};
use crate::measure::{Measure, MeasureError, SignedMeasure, State};
use crate::{lp, Rat};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Affine parametrization of all additive normalized functionals:
/// `s = particular + basis · λ`.
pub struct StateSystem {
    pub particular: Vec<Rat>,
    pub basis: Vec<Vec<Rat>>,
}

/// Eliminate the equality system; `None` when it is inconsistent (then
/// the state space is empty).
pub fn state_system(e: &PseudoEffectAlgebra) -> Option<StateSystem> {
    let n = e.n();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(e.triples().len() + 2);
    let mut unit_row = vec![Rat::zero(); n + 1];
    unit_row[e.zero().idx()] = Rat::one();
    rows.push(unit_row);
    let mut unit_row = vec![Rat::zero(); n + 1];
    unit_row[e.one().idx()] = Rat::one();
    unit_row[n] = Rat::one();
    rows.push(unit_row);
    for &(a, b, c) in e.triples() {
        let mut row = vec![Rat::zero(); n + 1];
        row[a.idx()] += Rat::one();
        row[b.idx()] += Rat::one();
        row[c.idx()] -= Rat::one();
        rows.push(row);
    }
    let AffineSolution { particular, basis } = linalg::solve_affine(&rows, n)?;
    Some(StateSystem { particular, basis })
}

/// H- and V-representation of the state space.
#[derive(Clone, Debug)]
pub struct StatePolytope {
    algebra: String,
    extreme: Vec<State>,
    affine_dim: i64,
}

impl StatePolytope {
    pub fn algebra_hash(&self) -> &str {
        &self.algebra
    }

    /// Extreme states, sorted by value vector.
    pub fn extreme_states(&self) -> &[State] {
        &self.extreme
    }

    pub fn is_empty(&self) -> bool {
        self.extreme.is_empty()
    }

    /// Dimension of the polytope's affine hull; `-1` when empty.
    pub fn affine_dim(&self) -> i64 {
        self.affine_dim
    }
}

/// Enumerate every extreme state exactly. An empty result is a valid
/// answer, not an error.
pub fn state_space(e: &PseudoEffectAlgebra) -> StatePolytope {
    let empty = StatePolytope {
        algebra: e.content_hash().to_string(),
        extreme: Vec::new(),
        affine_dim: -1,
    };
    let Some(system) = state_system(e) else {
        return empty;
    };
    let dim = system.basis.len();

    let vertices: Vec<Vec<Rat>> = if dim == 0 {
        if system.particular.iter().all(|v| !v.is_negative()) {
            vec![system.particular.clone()]
        } else {
            Vec::new()
        }
    } else {
        // Positivity per element, in the reduced coordinates:
        // basis_row(x) · λ ≥ -particular(x).
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();
        for x in 0..e.n() {
            let row: Vec<Rat> = system.basis.iter().map(|b| b[x].clone()).collect();
            if row.iter().all(Rat::is_zero) {
                if system.particular[x].is_negative() {
                    return empty;
                }
                continue;
            }
            rows.push(row);
            rhs.push(-system.particular[x].clone());
        }
        let reduced = dd::polytope_vertices(&rows, &rhs)
            .expect("state polytopes are bounded and their reduced system is pointed");
        reduced
            .into_iter()
            .map(|lambda| {
                (0..e.n())
                    .map(|x| {
                        let mut v = system.particular[x].clone();
                        for (b, l) in system.basis.iter().zip(&lambda) {
                            v += &b[x] * l;
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    };

    let mut extreme: Vec<State> = vertices
        .into_iter()
        .map(|values| {
            State::validate(e, values).expect("enumerated vertices satisfy the state system")
        })
        .collect();
    extreme.sort_by(|a, b| a.values().cmp(b.values()));
    let affine_dim = linalg::affine_rank(
        &extreme.iter().map(|s| s.values().to_vec()).collect::<Vec<_>>(),
    );
    StatePolytope { algebra: e.content_hash().to_string(), extreme, affine_dim }
}

/// A finite-dimensional Choquet simplex is a classical simplex: the
/// extreme states must be affinely independent. Empty and single-point
/// polytopes count as simplices.
pub fn is_simplex(p: &StatePolytope) -> bool {
    p.affine_dim == p.extreme.len() as i64 - 1
}

/// Exact convex-hull membership test against the polytope's vertices.
pub fn in_hull(p: &StatePolytope, point: &[Rat]) -> bool {
    let k = p.extreme.len();
    if k == 0 {
        return false;
    }
    let n = point.len();
    let mut rows: Vec<lp::Row> = Vec::with_capacity(n + 1);
    for x in 0..n {
        let coeffs: Vec<Rat> = p.extreme.iter().map(|s| s.values()[x].clone()).collect();
        rows.push(lp::Row::new(coeffs, lp::Relation::Eq, point[x].clone()));
    }
    rows.push(lp::Row::new(vec![Rat::one(); k], lp::Relation::Eq, Rat::one()));
    lp::feasible(k, &rows)
}

/// A deterministic-by-seed nonnegative rational combination of extreme
/// states. Coefficients are bounded by `scale_bound`.
pub fn sample_measure(
    e: &PseudoEffectAlgebra,
    p: &StatePolytope,
    seed: u64,
    scale_bound: u32,
) -> Result<Measure, MeasureError> {
    if p.is_empty() {
        return Err(MeasureError::EmptyStateSpace);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = SignedMeasure::zero(e);
    for s in &p.extreme {
        let num = rng.random_range(0..=u64::from(scale_bound));
        let den = rng.random_range(1..=6u64);
        let coeff = Rat::new(num.into(), den.into());
        acc = acc.add(&s.scale(&coeff))?;
    }
    Measure::new(e, acc)
}

/// A deterministic-by-seed state: a normalized positive combination of
/// extreme states.
pub fn sample_state(
    e: &PseudoEffectAlgebra,
    p: &StatePolytope,
    seed: u64,
) -> Result<State, MeasureError> {
    if p.is_empty() {
        return Err(MeasureError::EmptyStateSpace);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = SignedMeasure::zero(e);
    let mut total = Rat::zero();
    for s in &p.extreme {
        let num = rng.random_range(1..=12u64);
        let den = rng.random_range(1..=6u64);
        let coeff = Rat::new(num.into(), den.into());
        total += &coeff;
        acc = acc.add(&s.scale(&coeff))?;
    }
    State::new(e, Measure::new(e, acc.scale(&total.recip()))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::kernel;
    use crate::zoo;
    use crate::{rat, ratio};

    #[test]
    fn chain_has_the_forced_state() {
        for n in 1..=6u32 {
            let e = zoo::chain(n).unwrap();
            let p = state_space(&e);
            assert_eq!(p.extreme_states().len(), 1);
            let s = &p.extreme_states()[0];
            for k in 0..=n {
                assert_eq!(s.values()[k as usize], ratio(k as i64, n as i64));
            }
            assert!(is_simplex(&p));
            assert_eq!(p.affine_dim(), 0);
        }
    }

    #[test]
    fn boolean_extreme_states_are_atom_indicators() {
        for n in 1..=4u32 {
            let e = zoo::boolean(n).unwrap();
            let p = state_space(&e);
            assert_eq!(p.extreme_states().len(), n as usize);
            // Independent oracle: the n Boolean homomorphisms onto {0, 1}.
            for atom in 0..n {
                let values: Vec<Rat> = (0..e.n())
                    .map(|mask| {
                        if mask & (1 << atom) != 0 {
                            rat(1)
                        } else {
                            rat(0)
                        }
                    })
                    .collect();
                let indicator = State::validate(&e, values).unwrap();
                assert!(p.extreme_states().contains(&indicator));
            }
            assert!(is_simplex(&p));
            assert_eq!(p.affine_dim(), n as i64 - 1);
        }
    }

    #[test]
    fn diamond_is_a_square_not_a_simplex() {
        let e = zoo::diamond().unwrap();
        let p = state_space(&e);
        assert_eq!(p.extreme_states().len(), 4);
        assert_eq!(p.affine_dim(), 2);
        assert!(!is_simplex(&p));
        // Oracle: s(a), s(b) range over {0,1}² at the corners.
        let a = e.elem("a").unwrap();
        let b = e.elem("b").unwrap();
        let mut corners: Vec<(Rat, Rat)> = p
            .extreme_states()
            .iter()
            .map(|s| (s.value(a).clone(), s.value(b).clone()))
            .collect();
        corners.sort();
        assert_eq!(
            corners,
            vec![
                (rat(0), rat(0)),
                (rat(0), rat(1)),
                (rat(1), rat(0)),
                (rat(1), rat(1))
            ]
        );
    }

    #[test]
    fn trivial_algebra_has_empty_state_space() {
        let e = zoo::boolean(0).unwrap();
        let p = state_space(&e);
        assert!(p.is_empty());
        assert_eq!(p.affine_dim(), -1);
        assert!(is_simplex(&p));
        assert!(matches!(
            sample_measure(&e, &p, 1, 4),
            Err(MeasureError::EmptyStateSpace)
        ));
    }

    #[test]
    fn horizontal_sum_of_chains_has_one_state() {
        let c = zoo::chain(2).unwrap();
        let e = zoo::horizontal_sum(&c, &c).unwrap();
        let p = state_space(&e);
        assert_eq!(p.extreme_states().len(), 1);
        let s = &p.extreme_states()[0];
        assert_eq!(s.value(e.elem("l.1").unwrap()), &ratio(1, 2));
        assert_eq!(s.value(e.elem("r.1").unwrap()), &ratio(1, 2));
    }

    #[test]
    fn interval_2_1_is_a_segment() {
        let spec = zoo::PoGroupSpec {
            order: zoo::GroupOrder::Coordinatewise,
            unit: vec![2, 1],
        };
        let e = zoo::interval_algebra(&spec).unwrap();
        let p = state_space(&e);
        assert_eq!(p.extreme_states().len(), 2);
        assert!(is_simplex(&p));
        // Oracle: s((i,j)) = i·x + j·y with 2x + y = 1, x, y ≥ 0; the two
        // vertices sit at (x, y) = (1/2, 0) and (0, 1).
        let mut expected = Vec::new();
        for (x, y) in [(ratio(1, 2), rat(0)), (rat(0), rat(1))] {
            let values: Vec<Rat> = (0..e.n())
                .map(|i| {
                    let label = e.labels()[i].clone();
                    let inner = label.trim_matches(|c| c == '(' || c == ')').to_string();
                    let parts: Vec<i64> =
                        inner.split(',').map(|t| t.parse().unwrap()).collect();
                    &x * rat(parts[0]) + &y * rat(parts[1])
                })
                .collect();
            expected.push(State::validate(&e, values).unwrap());
        }
        for s in expected {
            assert!(p.extreme_states().contains(&s));
        }
    }

    #[test]
    fn sampled_measures_validate_and_depend_on_seed() {
        let e = zoo::boolean(2).unwrap();
        let p = state_space(&e);
        let m1 = sample_measure(&e, &p, 1, 8).unwrap();
        let m1_again = sample_measure(&e, &p, 1, 8).unwrap();
        let m2 = sample_measure(&e, &p, 2, 8).unwrap();
        assert_eq!(m1, m1_again);
        assert_ne!(m1, m2);
        let s = sample_state(&e, &p, 5).unwrap();
        assert_eq!(s.total(&e), &rat(1));
        assert_eq!(kernel(&e, &s).elements.len(), 1);
    }

    #[test]
    fn hull_membership() {
        let e = zoo::boolean(2).unwrap();
        let p = state_space(&e);
        // Midpoint of the two vertices is inside.
        let mid: Vec<Rat> = (0..e.n())
            .map(|x| {
                (&p.extreme_states()[0].values()[x] + &p.extreme_states()[1].values()[x])
                    / rat(2)
            })
            .collect();
        assert!(in_hull(&p, &mid));
        // Stepping past a vertex leaves the hull.
        let outside: Vec<Rat> = (0..e.n())
            .map(|x| {
                &p.extreme_states()[0].values()[x] * ratio(3, 2)
                    - &p.extreme_states()[1].values()[x] * ratio(1, 2)
            })
            .collect();
        assert!(!in_hull(&p, &outside));
    }
}
