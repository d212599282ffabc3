//! Ideals, faces of the state simplex, and the cone decomposition engine.
//!
//! For a face `F` of the state simplex, `V(F)` is the cone of nonnegative
//! multiples of states in `F` — equivalently, the nonnegative span of `F`'s
//! vertices. Over a finite simplex every such cone is closed under bounded
//! chain suprema (chains of cone elements are finite), so the unique
//! splitting
//!
//! ```text
//! m = m₁ + m₂,   m₁ ∈ V(F),   m₂ V(F)-singular
//! ```
//!
//! exists for every measure `m`. The engine computes `m₁` as the maximum
//! of `{ t ∈ V(F) : t ≤⁺ m }` by an exact LP: parametrize `t = Σ λᵢ sᵢ`
//! over the face's vertices, constrain `t(x) ≤ m(x)` for every element,
//! and maximize the total mass `t(1)`. The set is directed, so its
//! maximum exists and is the unique maximizer of total mass: any other
//! optimum `t'` satisfies `t' ≤⁺ t*` with `(t* − t')(1) = 0`, forcing
//! `t' = t*` by monotonicity. Certificates record the LP optimum, the
//! singularity re-check (the same LP against `m₂` must report 0), and a
//! re-solve under reversed constraint and variable order that must
//! reproduce the components exactly.

use crate::algebra::{Elem, PseudoEffectAlgebra};
use crate::jordan::{self, JordanError};
use crate::lp;
use crate::measure::{Measure, MeasureError, SignedMeasure, State};
use crate::polytope::{is_simplex, StatePolytope};
use crate::{rat_serde, Rat};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum FaceError {
    #[error("the state space is not a simplex; complementary-face theory needs one")]
    NotASimplex,
    #[error("a face family must contain at least one face")]
    EmptyFamily,
    #[error("face vertex index {0} is out of range")]
    BadVertexIndex(usize),
    #[error(transparent)]
    Jordan(#[from] JordanError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// A subset of the carrier closed downwards and under defined sums.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    pub members: BTreeSet<Elem>,
    pub is_ideal: bool,
    pub is_normal: bool,
}

/// Ideal and normality predicates for an arbitrary subset.
///
/// Normal means `a + I = I + a` setwise for every `a`.
pub fn ideal_flags(e: &PseudoEffectAlgebra, set: &BTreeSet<Elem>) -> (bool, bool) {
    let is_ideal = set.contains(&e.zero())
        && set.iter().all(|&a| {
            set.iter().all(|&b| match e.sum(a, b) {
                Some(c) => set.contains(&c),
                None => true,
            })
        })
        && set
            .iter()
            .all(|&b| e.below(b).iter().all(|i| set.contains(&Elem(i as u32))));
    let is_normal = e.elements().all(|a| {
        let right: BTreeSet<Elem> = set.iter().filter_map(|&b| e.sum(a, b)).collect();
        let left: BTreeSet<Elem> = set.iter().filter_map(|&b| e.sum(b, a)).collect();
        right == left
    });
    (is_ideal, is_normal)
}

/// Least ideal containing `seed`: the fixpoint of downward closure and
/// closure under defined sums. May be the whole carrier.
pub fn ideal_closure(e: &PseudoEffectAlgebra, seed: &BTreeSet<Elem>) -> Ideal {
    let mut members: BTreeSet<Elem> = seed.clone();
    members.insert(e.zero());
    loop {
        let mut grown = members.clone();
        for &b in &members {
            for i in e.below(b).iter() {
                grown.insert(Elem(i as u32));
            }
        }
        for &a in &members {
            for &b in &members {
                if let Some(c) = e.sum(a, b) {
                    grown.insert(c);
                }
            }
        }
        if grown == members {
            break;
        }
        members = grown;
    }
    let (is_ideal, is_normal) = ideal_flags(e, &members);
    debug_assert!(is_ideal);
    Ideal { members, is_ideal, is_normal }
}

/// A face of the state polytope, as a set of extreme-state indices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Face {
    pub vertices: BTreeSet<usize>,
    /// When the face arose as `{ s : X ⊆ Ker(s) }`, the defining set `X`.
    pub defining_kernel: Option<BTreeSet<Elem>>,
}

impl Face {
    pub fn from_vertices(
        p: &StatePolytope,
        vertices: BTreeSet<usize>,
    ) -> Result<Face, FaceError> {
        if let Some(&bad) = vertices.iter().find(|&&v| v >= p.extreme_states().len()) {
            return Err(FaceError::BadVertexIndex(bad));
        }
        Ok(Face { vertices, defining_kernel: None })
    }

    pub fn whole(p: &StatePolytope) -> Face {
        Face {
            vertices: (0..p.extreme_states().len()).collect(),
            defining_kernel: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// The closed face `{ s : X ⊆ Ker(s) }`, spanned by the extreme states
/// vanishing on `X`. A convex combination vanishes on `X` exactly when
/// every participating vertex does, so the vertex scan is complete.
pub fn kernel_face(
    e: &PseudoEffectAlgebra,
    p: &StatePolytope,
    x: &BTreeSet<Elem>,
) -> Face {
    let vertices: BTreeSet<usize> = p
        .extreme_states()
        .iter()
        .enumerate()
        .filter(|(_, s)| x.iter().all(|&el| s.value(el).is_zero()))
        .map(|(i, _)| i)
        .collect();
    let _ = e;
    Face { vertices, defining_kernel: Some(x.clone()) }
}

/// The complementary face `F' = largest face disjoint from F`: on a
/// simplex, the span of the remaining vertices.
///
/// Cross-validated pointwise: every vertex of `F'` meets every vertex of
/// `F` in 0, and (for nonempty `F`) no vertex of `F` is disjoint from all
/// of `F`.
pub fn complementary_face(
    e: &PseudoEffectAlgebra,
    p: &StatePolytope,
    f: &Face,
) -> Result<Face, FaceError> {
    if !is_simplex(p) {
        return Err(FaceError::NotASimplex);
    }
    let vertices: BTreeSet<usize> = (0..p.extreme_states().len())
        .filter(|i| !f.vertices.contains(i))
        .collect();
    for &i in &vertices {
        for &j in &f.vertices {
            let disjoint = jordan::is_disjoint(
                e,
                p.extreme_states()[i].as_measure(),
                p.extreme_states()[j].as_measure(),
            )?;
            if !disjoint {
                return Err(FaceError::Internal(format!(
                    "complement vertex {i} is not disjoint from face vertex {j}"
                )));
            }
        }
    }
    for &j in &f.vertices {
        let mut disjoint_from_all = true;
        for &j2 in &f.vertices {
            if !jordan::is_disjoint(
                e,
                p.extreme_states()[j].as_measure(),
                p.extreme_states()[j2].as_measure(),
            )? {
                disjoint_from_all = false;
                break;
            }
        }
        if disjoint_from_all {
            return Err(FaceError::Internal(format!(
                "face vertex {j} is disjoint from the whole face"
            )));
        }
    }
    Ok(Face { vertices, defining_kernel: None })
}

/// Law check: `(⋂ᵢ Fᵢ)' = span(⋃ᵢ Fᵢ')` on vertex sets.
pub fn face_intersection_complement_law(
    e: &PseudoEffectAlgebra,
    p: &StatePolytope,
    faces: &[Face],
) -> Result<bool, FaceError> {
    if faces.is_empty() {
        return Err(FaceError::EmptyFamily);
    }
    let mut intersection = faces[0].vertices.clone();
    for f in &faces[1..] {
        intersection = intersection.intersection(&f.vertices).copied().collect();
    }
    let lhs = complementary_face(
        e,
        p,
        &Face { vertices: intersection, defining_kernel: None },
    )?;
    let mut union: BTreeSet<usize> = BTreeSet::new();
    for f in faces {
        let fc = complementary_face(e, p, f)?;
        union.extend(fc.vertices);
    }
    Ok(lhs.vertices == union)
}

/// Machine-checkable evidence for one face decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCertificate {
    pub face_vertex_count: usize,
    /// Total mass of the face component: the LP optimum.
    #[serde(with = "rat_serde")]
    pub lp_optimum: Rat,
    /// Cone coefficients of the face component over the face vertices.
    #[serde(with = "rat_serde::vec")]
    pub coefficients: Vec<Rat>,
    /// Optimum of the same LP run against the remainder; 0 certifies
    /// V(F)-singularity.
    #[serde(with = "rat_serde")]
    pub singularity_optimum: Rat,
    pub component_in_cone: bool,
    pub remainder_nonnegative: bool,
    pub sum_recovers_input: bool,
    /// Re-solving with reversed constraint and variable order reproduced
    /// identical components (the maximum of a directed set is unique).
    pub permuted_resolve_identical: bool,
}

/// The unique splitting of `m` along a face.
#[derive(Clone, Debug)]
pub struct FaceDecomposition {
    /// `m₁ ∈ V(F)`.
    pub component: Measure,
    /// `m₂ = m − m₁`, V(F)-singular.
    pub singular: Measure,
    pub certificate: DecompositionCertificate,
}

/// Maximize `t(1)` over `{ t = Σ λᵢ sᵢ : λ ≥ 0, t ≤⁺ m }`.
///
/// Returns the coefficient vector; `reversed` solves the row- and
/// column-reversed program for the uniqueness re-check.
fn cone_lp(
    e: &PseudoEffectAlgebra,
    face_states: &[&State],
    m: &SignedMeasure,
    reversed: bool,
) -> Result<(Vec<Rat>, Rat), FaceError> {
    let k = face_states.len();
    if k == 0 {
        return Ok((Vec::new(), Rat::zero()));
    }
    let col = |j: usize| if reversed { k - 1 - j } else { j };
    let mut rows: Vec<lp::Row> = Vec::new();
    for x in e.elements() {
        if x == e.zero() {
            continue;
        }
        let mut coeffs = vec![Rat::zero(); k];
        for j in 0..k {
            coeffs[col(j)] = face_states[j].value(x).clone();
        }
        rows.push(lp::Row::new(coeffs, lp::Relation::Le, m.value(x).clone()));
    }
    if reversed {
        rows.reverse();
    }
    let objective = vec![Rat::one(); k];
    match lp::maximize(&objective, &rows) {
        lp::LpResult::Optimal { solution, objective } => {
            let mut coeffs = vec![Rat::zero(); k];
            for j in 0..k {
                coeffs[j] = solution[col(j)].clone();
            }
            Ok((coeffs, objective))
        }
        lp::LpResult::Infeasible => Err(FaceError::Internal(
            "cone LP infeasible although t = 0 is feasible".into(),
        )),
        lp::LpResult::Unbounded => Err(FaceError::Internal(
            "cone LP unbounded although t(1) ≤ m(1)".into(),
        )),
    }
}

fn combine(
    e: &PseudoEffectAlgebra,
    face_states: &[&State],
    coeffs: &[Rat],
) -> Result<SignedMeasure, MeasureError> {
    let mut acc = SignedMeasure::zero(e);
    for (s, c) in face_states.iter().zip(coeffs) {
        acc = acc.add(&s.scale(c))?;
    }
    Ok(acc)
}

/// Split `m` uniquely along `F`: the face component is the maximum of
/// `{ t ∈ V(F) : t ≤⁺ m }`, the remainder is V(F)-singular.
///
/// An empty face yields `(0, m)`; the whole simplex yields `(m, 0)`.
pub fn face_decompose(
    e: &PseudoEffectAlgebra,
    p: &StatePolytope,
    f: &Face,
    m: &Measure,
) -> Result<FaceDecomposition, FaceError> {
    if !is_simplex(p) {
        return Err(FaceError::NotASimplex);
    }
    let face_states: Vec<&State> = f
        .vertices
        .iter()
        .map(|&i| {
            p.extreme_states()
                .get(i)
                .ok_or(FaceError::BadVertexIndex(i))
        })
        .collect::<Result<_, _>>()?;

    let (coeffs, optimum) = cone_lp(e, &face_states, m.as_signed(), false)?;
    let component_signed = combine(e, &face_states, &coeffs)?;
    let singular_signed = m.sub(&component_signed)?;

    let component = Measure::new(e, component_signed)
        .map_err(|err| FaceError::Internal(format!("face component not a measure: {err}")))?;
    let singular = Measure::new(e, singular_signed)
        .map_err(|err| FaceError::Internal(format!("remainder not a measure: {err}")))?;

    let (_, singularity_optimum) = cone_lp(e, &face_states, singular.as_signed(), false)?;
    if !singularity_optimum.is_zero() {
        return Err(FaceError::Internal(format!(
            "remainder admits a nonzero cone minorant of mass {singularity_optimum}"
        )));
    }

    let (coeffs_rev, optimum_rev) = cone_lp(e, &face_states, m.as_signed(), true)?;
    let permuted_resolve_identical = coeffs_rev == coeffs && optimum_rev == optimum;
    if !permuted_resolve_identical {
        return Err(FaceError::Internal(
            "permuted re-solve produced a different optimizer; uniqueness is violated".into(),
        ));
    }

    let sum_recovers_input = component.add(&singular).map(|s| &s == m).unwrap_or(false);
    let certificate = DecompositionCertificate {
        face_vertex_count: face_states.len(),
        lp_optimum: optimum,
        coefficients: coeffs,
        singularity_optimum,
        component_in_cone: true,
        remainder_nonnegative: true,
        sum_recovers_input,
        permuted_resolve_identical,
    };
    if !certificate.sum_recovers_input {
        return Err(FaceError::Internal("components do not sum to the input".into()));
    }
    Ok(FaceDecomposition { component, singular, certificate })
}

/// A state split `s = λ₁ s₁ + λ₂ s₂` with `s₁ ∈ F` and `s₂ ∈ F'`.
///
/// A component with zero weight is omitted.
#[derive(Clone, Debug)]
pub struct StateSplit {
    pub lambda_face: Rat,
    pub in_face: Option<State>,
    pub lambda_complement: Rat,
    pub in_complement: Option<State>,
    pub certificate: DecompositionCertificate,
}

/// Normalize the face decomposition of a state into a convex combination.
pub fn convex_state_decompose(
    e: &PseudoEffectAlgebra,
    p: &StatePolytope,
    f: &Face,
    s: &State,
) -> Result<StateSplit, FaceError> {
    let decomposition = face_decompose(e, p, f, s.as_measure())?;
    let lambda_face = decomposition.component.total(e).clone();
    let lambda_complement = decomposition.singular.total(e).clone();
    if &lambda_face + &lambda_complement != Rat::one() {
        return Err(FaceError::Internal("state weights do not sum to 1".into()));
    }
    let normalize = |m: &Measure, weight: &Rat| -> Result<Option<State>, FaceError> {
        if weight.is_zero() {
            return Ok(None);
        }
        let scaled = m.scale_nonneg(&weight.recip());
        Ok(Some(State::new(e, scaled).map_err(|err| {
            FaceError::Internal(format!("normalized component not a state: {err}"))
        })?))
    };
    let in_face = normalize(&decomposition.component, &lambda_face)?;
    let in_complement = normalize(&decomposition.singular, &lambda_complement)?;
    Ok(StateSplit {
        lambda_face,
        in_face,
        lambda_complement,
        in_complement,
        certificate: decomposition.certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::state_space;
    use crate::zoo;
    use crate::{rat, ratio};

    fn set(elems: &[Elem]) -> BTreeSet<Elem> {
        elems.iter().copied().collect()
    }

    #[test]
    fn ideal_closures() {
        let e = zoo::boolean(2).unwrap();
        let a1 = e.elem("a1").unwrap();
        let principal = ideal_closure(&e, &set(&[a1]));
        assert_eq!(principal.members, set(&[e.zero(), a1]));
        assert!(principal.is_ideal && principal.is_normal);

        let everything = ideal_closure(&e, &set(&[e.one()]));
        assert_eq!(everything.members.len(), e.n());

        // In {0, m, 1}, the sum closure forces m + m = 1 in.
        let c = zoo::chain(2).unwrap();
        let m = c.elem("1").unwrap();
        let closure = ideal_closure(&c, &set(&[m]));
        assert_eq!(closure.members.len(), 3);
    }

    #[test]
    fn kernel_faces() {
        let e = zoo::boolean(2).unwrap();
        let p = state_space(&e);
        let a1 = e.elem("a1").unwrap();

        // Only the other atom's indicator kills a1.
        let f = kernel_face(&e, &p, &set(&[a1]));
        assert_eq!(f.vertices.len(), 1);
        let v = *f.vertices.iter().next().unwrap();
        assert!(p.extreme_states()[v].value(a1).is_zero());

        // The empty set defines the whole space.
        let whole = kernel_face(&e, &p, &set(&[]));
        assert_eq!(whole.vertices.len(), p.extreme_states().len());

        // No state vanishes at interior elements of a chain.
        let c = zoo::chain(3).unwrap();
        let pc = state_space(&c);
        let one_step = c.elem("1").unwrap();
        assert!(kernel_face(&c, &pc, &set(&[one_step])).is_empty());
    }

    #[test]
    fn complementary_faces_on_booleans() {
        let e = zoo::boolean(3).unwrap();
        let p = state_space(&e);
        let f = Face::from_vertices(&p, BTreeSet::from([0, 1])).unwrap();
        let fc = complementary_face(&e, &p, &f).unwrap();
        assert_eq!(fc.vertices, BTreeSet::from([2]));

        let whole = Face::whole(&p);
        let none = complementary_face(&e, &p, &whole).unwrap();
        assert!(none.is_empty());

        // The diamond square is not a simplex.
        let d = zoo::diamond().unwrap();
        let pd = state_space(&d);
        assert!(matches!(
            complementary_face(&d, &pd, &Face::whole(&pd)),
            Err(FaceError::NotASimplex)
        ));
    }

    #[test]
    fn intersection_complement_law() {
        let e = zoo::boolean(3).unwrap();
        let p = state_space(&e);
        let f1 = Face::from_vertices(&p, BTreeSet::from([0])).unwrap();
        let f2 = Face::from_vertices(&p, BTreeSet::from([1])).unwrap();
        assert!(face_intersection_complement_law(&e, &p, &[f1.clone(), f2]).unwrap());
        assert!(face_intersection_complement_law(&e, &p, &[f1]).unwrap());
        assert!(matches!(
            face_intersection_complement_law(&e, &p, &[]),
            Err(FaceError::EmptyFamily)
        ));
    }

    #[test]
    fn worked_boolean2_decomposition() {
        // F = {δ_a2}, m = (a1 ↦ 1/2, a2 ↦ 1/2, 1 ↦ 1): the one-variable LP
        // maximizes λ with λ ≤ 1/2, so m₁ = (0, 1/2) and m₂ = (1/2, 0).
        let e = zoo::boolean(2).unwrap();
        let p = state_space(&e);
        let a1 = e.elem("a1").unwrap();
        let a2 = e.elem("a2").unwrap();
        let f = kernel_face(&e, &p, &set(&[a1]));
        let m = Measure::validate(&e, vec![rat(0), ratio(1, 2), ratio(1, 2), rat(1)]).unwrap();
        let d = face_decompose(&e, &p, &f, &m).unwrap();
        assert_eq!(d.certificate.lp_optimum, ratio(1, 2));
        assert_eq!(d.component.value(a1), &rat(0));
        assert_eq!(d.component.value(a2), &ratio(1, 2));
        assert_eq!(d.singular.value(a1), &ratio(1, 2));
        assert_eq!(d.singular.value(a2), &rat(0));
        assert!(d.certificate.singularity_optimum.is_zero());
        assert!(d.certificate.permuted_resolve_identical);

        // Idempotence: each component decomposes trivially.
        let again = face_decompose(&e, &p, &f, &d.component).unwrap();
        assert_eq!(&again.component, &d.component);
        assert!(again.singular.is_zero());
        let other = face_decompose(&e, &p, &f, &d.singular).unwrap();
        assert!(other.component.is_zero());
        assert_eq!(&other.singular, &d.singular);
    }

    #[test]
    fn whole_face_and_empty_face_are_trivial() {
        let e = zoo::boolean(2).unwrap();
        let p = state_space(&e);
        let m = Measure::validate(&e, vec![rat(0), ratio(1, 3), ratio(3, 4), ratio(13, 12)])
            .unwrap();
        let whole = face_decompose(&e, &p, &Face::whole(&p), &m).unwrap();
        assert_eq!(&whole.component, &m);
        assert!(whole.singular.is_zero());

        let empty = Face { vertices: BTreeSet::new(), defining_kernel: None };
        let d = face_decompose(&e, &p, &empty, &m).unwrap();
        assert!(d.component.is_zero());
        assert_eq!(&d.singular, &m);
        assert!(d.certificate.lp_optimum.is_zero());

        let zero = Measure::zero(&e);
        let z = face_decompose(&e, &p, &Face::whole(&p), &zero).unwrap();
        assert!(z.component.is_zero() && z.singular.is_zero());
    }

    #[test]
    fn state_split_normalizes() {
        let e = zoo::boolean(2).unwrap();
        let p = state_space(&e);
        let a1 = e.elem("a1").unwrap();
        let f = kernel_face(&e, &p, &set(&[a1]));
        let s = State::validate(&e, vec![rat(0), ratio(1, 2), ratio(1, 2), rat(1)]).unwrap();
        let split = convex_state_decompose(&e, &p, &f, &s).unwrap();
        assert_eq!(split.lambda_face, ratio(1, 2));
        assert_eq!(split.lambda_complement, ratio(1, 2));
        let s1 = split.in_face.unwrap();
        assert!(s1.value(a1).is_zero());

        // A state already in F splits as (1, s).
        let vertex = p.extreme_states()[*f.vertices.iter().next().unwrap()].clone();
        let split = convex_state_decompose(&e, &p, &f, &vertex).unwrap();
        assert_eq!(split.lambda_face, rat(1));
        assert!(split.in_complement.is_none());
        assert_eq!(split.in_face.unwrap(), vertex);

        // An extreme state outside F lands entirely in F'.
        let fc = complementary_face(&e, &p, &f).unwrap();
        let outside = p.extreme_states()[*fc.vertices.iter().next().unwrap()].clone();
        let split = convex_state_decompose(&e, &p, &f, &outside).unwrap();
        assert!(split.lambda_face.is_zero());
        assert_eq!(split.in_complement.unwrap(), outside);
    }
}
