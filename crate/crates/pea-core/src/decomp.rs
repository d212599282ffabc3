//! The named decompositions: Lebesgue (absolute continuity and its ε–δ
//! variant), the central splitting through Boolean elements, and the
//! Yosida–Hewitt family (completely additive / σ-additive / upwards
//! continuous parts).
//!
//! All of them instantiate the face engine of [`crate::faces`]: pick the
//! face of states with the wanted continuity property, split along it,
//! and certify. On a finite algebra every directed family has a maximum,
//! so every measure is completely additive, σ-additive, and upwards
//! continuous; the Yosida–Hewitt modes therefore split every measure as
//! `(m, 0)`. That degeneracy is asserted and recorded in the certificate —
//! the engine path (cone LP, singularity re-check, uniqueness re-solve) is
//! exercised identically to the nontrivial cases.

use crate::algebra::{Elem, PseudoEffectAlgebra};
use crate::faces::{self, DecompositionCertificate, FaceError};
use crate::jordan;
use crate::measure::{kernel, Measure, MeasureError};
use crate::polytope::StatePolytope;
use crate::riesz;
use crate::{rat_serde, Rat};
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum DecompError {
    #[error("measures live on different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("complete additivity is defined for effect algebras; the table is not commutative")]
    NotCommutative,
    #[error("the central decomposition requires RDP, which fails here")]
    RdpRequired,
    #[error(transparent)]
    Face(#[from] FaceError),
    #[error(transparent)]
    Jordan(#[from] jordan::JordanError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn check_same(m1: &Measure, m2: &Measure) -> Result<(), DecompError> {
    if m1.algebra_hash() != m2.algebra_hash() {
        return Err(DecompError::AlgebraMismatch(
            m1.algebra_hash().to_string(),
            m2.algebra_hash().to_string(),
        ));
    }
    Ok(())
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum ContinuityRelation {
    /// `m₁ ≪ m₂`: `m₂(a) = 0` implies `m₁(a) = 0`.
    AbsolutelyContinuous,
    /// `m₁ ≪_ε m₂`: every ε has a δ with `m₂(a) < δ ⇒ m₁(a) < ε`.
    EpsilonContinuous,
    /// `m₁ ⊥ m₂`: some `a` has `m₂(a) = 0 = m₁(a⁻)`.
    Orthogonal,
    /// `m₁ ≪_C m₂`: `m₂(a) = 0` for central `a` implies `m₁(a) = 0`.
    CentrallyContinuous,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum ContinuityWitness {
    None,
    /// Element violating ≪ or ≪_C.
    Violating(Elem),
    /// Constructive (ε, δ) table: one row per positive value ε of the
    /// dominated measure.
    EpsDelta(#[serde(with = "rat_serde_pairs")] Vec<(Rat, Rat)>),
    /// An ε with no workable δ, together with the element pinning it.
    EpsFailure {
        #[serde(with = "rat_serde")]
        eps: Rat,
        element: Elem,
    },
    /// Separating element for orthogonality.
    Separator(Elem),
}

mod rat_serde_pairs {
    use crate::Rat;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(
        values: &[(Rat, Rat)],
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(values.len()))?;
        for (a, b) in values {
            seq.serialize_element(&[a.to_string(), b.to_string()])?;
        }
        seq.end()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ContinuityVerdict {
    pub relation: ContinuityRelation,
    pub holds: bool,
    pub witness: ContinuityWitness,
}

/// `m₁ ≪ m₂` by exhaustive kernel containment.
pub fn check_abs_continuous(
    m1: &Measure,
    m2: &Measure,
    e: &PseudoEffectAlgebra,
) -> Result<ContinuityVerdict, DecompError> {
    check_same(m1, m2)?;
    for x in e.elements() {
        if m2.value(x).is_zero() && !m1.value(x).is_zero() {
            return Ok(ContinuityVerdict {
                relation: ContinuityRelation::AbsolutelyContinuous,
                holds: false,
                witness: ContinuityWitness::Violating(x),
            });
        }
    }
    Ok(ContinuityVerdict {
        relation: ContinuityRelation::AbsolutelyContinuous,
        holds: true,
        witness: ContinuityWitness::None,
    })
}

/// `m₁ ≪_ε m₂`, decided constructively through the finite value range.
///
/// For each threshold ε among the positive values of `m₁`, the best δ is
/// the least `m₂`-value over `{ a : m₁(a) ≥ ε }`; the relation holds
/// exactly when all these δ are positive. Independent of the kernel scan
/// in [`check_abs_continuous`], with which it must agree at finite scale.
pub fn check_eps_continuous(
    m1: &Measure,
    m2: &Measure,
    e: &PseudoEffectAlgebra,
) -> Result<ContinuityVerdict, DecompError> {
    check_same(m1, m2)?;
    let mut thresholds: Vec<Rat> = e
        .elements()
        .map(|x| m1.value(x).clone())
        .filter(|v| !v.is_zero())
        .collect();
    thresholds.sort();
    thresholds.dedup();
    let mut table: Vec<(Rat, Rat)> = Vec::new();
    for eps in thresholds {
        let over: Vec<Elem> = e.elements().filter(|&x| m1.value(x) >= &eps).collect();
        let delta = over
            .iter()
            .map(|&x| m2.value(x).clone())
            .min()
            .expect("threshold came from a nonempty set");
        if delta.is_zero() {
            let element = *over
                .iter()
                .find(|&&x| m2.value(x).is_zero())
                .expect("zero minimum has a zero witness");
            return Ok(ContinuityVerdict {
                relation: ContinuityRelation::EpsilonContinuous,
                holds: false,
                witness: ContinuityWitness::EpsFailure { eps, element },
            });
        }
        table.push((eps, delta));
    }
    Ok(ContinuityVerdict {
        relation: ContinuityRelation::EpsilonContinuous,
        holds: true,
        witness: ContinuityWitness::EpsDelta(table),
    })
}

/// `m₁ ⊥ m₂` by exhaustive scan for a separating element.
pub fn check_orthogonal(
    m1: &Measure,
    m2: &Measure,
    e: &PseudoEffectAlgebra,
) -> Result<ContinuityVerdict, DecompError> {
    check_same(m1, m2)?;
    for a in e.elements() {
        if m2.value(a).is_zero() && m1.value(e.complement_left(a)).is_zero() {
            return Ok(ContinuityVerdict {
                relation: ContinuityRelation::Orthogonal,
                holds: true,
                witness: ContinuityWitness::Separator(a),
            });
        }
    }
    Ok(ContinuityVerdict {
        relation: ContinuityRelation::Orthogonal,
        holds: false,
        witness: ContinuityWitness::None,
    })
}

/// `m ≪_C t`: kernel containment restricted to the center.
pub fn check_central_continuous(
    m: &Measure,
    t: &Measure,
    e: &PseudoEffectAlgebra,
    center: &CentralElements,
) -> Result<ContinuityVerdict, DecompError> {
    check_same(m, t)?;
    for &a in &center.members {
        if t.value(a).is_zero() && !m.value(a).is_zero() {
            return Ok(ContinuityVerdict {
                relation: ContinuityRelation::CentrallyContinuous,
                holds: false,
                witness: ContinuityWitness::Violating(a),
            });
        }
    }
    Ok(ContinuityVerdict {
        relation: ContinuityRelation::CentrallyContinuous,
        holds: true,
        witness: ContinuityWitness::None,
    })
}

/// The two continuity routes must agree on finite algebras.
pub fn check_eps_equiv_abs(
    m1: &Measure,
    m2: &Measure,
    e: &PseudoEffectAlgebra,
) -> Result<bool, DecompError> {
    let abs = check_abs_continuous(m1, m2, e)?;
    let eps = check_eps_continuous(m1, m2, e)?;
    Ok(abs.holds == eps.holds)
}

#[derive(Clone, Debug, Serialize)]
pub struct LebesgueCertificate {
    pub engine: DecompositionCertificate,
    /// Kernel of the dominating measure, defining the face.
    pub kernel_of_t: Vec<Elem>,
    pub component_abs_continuous: bool,
    /// Filled by the ε-variant: the meet `m₂ ∧ t` vanished.
    pub meet_with_t_zero: Option<bool>,
    /// Filled by the ε-variant: constructive continuity of `m₁` in `t`.
    pub eps_delta_table: Option<ContinuityVerdict>,
}

#[derive(Clone, Debug)]
pub struct LebesgueDecomposition {
    /// `m₁ ≪ t`.
    pub continuous: Measure,
    /// `m₂`, admitting no nonzero `t`-continuous minorant.
    pub singular: Measure,
    pub certificate: LebesgueCertificate,
}

/// Split `m` into a `t`-continuous and a `t`-singular part along the
/// kernel face of `t`: `s ≪ t` iff `Ker(t) ⊆ Ker(s)`.
///
/// For `t = 0` the kernel is everything, the face is empty (no state
/// vanishes at 1), and the split is `(0, m)` — only the zero measure is
/// absolutely continuous with respect to 0.
pub fn lebesgue_decompose(
    e: &PseudoEffectAlgebra,
    p: &StatePolytope,
    m: &Measure,
    t: &Measure,
) -> Result<LebesgueDecomposition, DecompError> {
    check_same(m, t)?;
    let ker: BTreeSet<Elem> = kernel(e, t).elements;
    let face = faces::kernel_face(e, p, &ker);
    let split = faces::face_decompose(e, p, &face, m)?;
    let abs = check_abs_continuous(&split.component, t, e)?;
    if !abs.holds {
        return Err(DecompError::Internal(
            "face component is not absolutely continuous in t".into(),
        ));
    }
    Ok(LebesgueDecomposition {
        continuous: split.component,
        singular: split.singular,
        certificate: LebesgueCertificate {
            engine: split.certificate,
            kernel_of_t: ker.into_iter().collect(),
            component_abs_continuous: true,
            meet_with_t_zero: None,
            eps_delta_table: None,
        },
    })
}

/// The ε-continuity variant: identical components (the two relations
/// agree at finite scale), plus `m₂ ∧ t = 0` verified through the join
/// formula and the constructive (ε, δ) table recorded.
pub fn eps_lebesgue_decompose(
    e: &PseudoEffectAlgebra,
    p: &StatePolytope,
    m: &Measure,
    t: &Measure,
) -> Result<LebesgueDecomposition, DecompError> {
    let mut out = lebesgue_decompose(e, p, m, t)?;
    let disjoint = jordan::is_disjoint(e, &out.singular, t)?;
    if !disjoint {
        return Err(DecompError::Internal("singular part meets t above zero".into()));
    }
    let eps = check_eps_continuous(&out.continuous, t, e)?;
    if !eps.holds {
        return Err(DecompError::Internal(
            "component fails ε-continuity despite kernel containment".into(),
        ));
    }
    out.certificate.meet_with_t_zero = Some(true);
    out.certificate.eps_delta_table = Some(eps);
    Ok(out)
}

/// Verdict that the central elements form a Boolean subalgebra.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BooleanCenterCheck {
    pub closed_under_complement: bool,
    pub meets_and_joins_close: bool,
    pub is_boolean_subalgebra: bool,
}

/// The Boolean center `C(E)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CentralElements {
    pub members: Vec<Elem>,
    pub boolean_algebra_check: BooleanCenterCheck,
}

/// An element is central when `a⁻ = a∼`, `a ∧ a⁻ = 0`, and every `x`
/// splits as `x = (x ∧ a) + (x ∧ a⁻)` with both meets defined.
///
/// The full splitting characterization is enforced, not just the meet
/// condition; on algebras without RDP the weaker test admits non-central
/// elements (the diamond's atoms pass it and fail the splitting).
pub fn center(e: &PseudoEffectAlgebra) -> CentralElements {
    let is_central = |a: Elem| -> bool {
        let neg = e.complement_left(a);
        if neg != e.complement_right(a) {
            return false;
        }
        if e.meet(a, neg) != Some(e.zero()) {
            return false;
        }
        e.elements().all(|x| {
            match (e.meet(x, a), e.meet(x, neg)) {
                (Some(xa), Some(xn)) => e.sum(xa, xn) == Some(x),
                _ => false,
            }
        })
    };
    let members: Vec<Elem> = e.elements().filter(|&a| is_central(a)).collect();
    let member_set: BTreeSet<Elem> = members.iter().copied().collect();

    let closed_under_complement = members
        .iter()
        .all(|&a| member_set.contains(&e.complement_left(a)));
    let meets_and_joins_close = members.iter().all(|&a| {
        members.iter().all(|&b| {
            let meet_in = e.meet(a, b).is_some_and(|x| member_set.contains(&x));
            let join_in = e.join(a, b).is_some_and(|x| member_set.contains(&x));
            meet_in && join_in
        })
    });
    let is_boolean_subalgebra = closed_under_complement
        && meets_and_joins_close
        && member_set.contains(&e.zero())
        && member_set.contains(&e.one());
    CentralElements {
        members,
        boolean_algebra_check: BooleanCenterCheck {
            closed_under_complement,
            meets_and_joins_close,
            is_boolean_subalgebra,
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralCertificate {
    /// Central elements annihilated by `t`.
    pub t_null_center: Vec<Elem>,
    /// `a₀`, their Boolean join; `t(a₀) = 0` re-checked.
    pub splitting_element: Elem,
    pub splitting_element_t_null: bool,
    /// `a₀` dominates every `t`-null central element.
    pub splitting_element_maximal: bool,
    pub sum_recovers_input: bool,
    pub component_centrally_continuous: bool,
    /// `m₂ ⊥ t` with `a₀` as the separator.
    pub singular_orthogonal: bool,
}

#[derive(Clone, Debug)]
pub struct CentralDecomposition {
    /// `m₁ = m(· ∧ a₀⁻) ≪_C t`.
    pub continuous: Measure,
    /// `m₂ = m(· ∧ a₀) ⊥ t`.
    pub singular: Measure,
    pub splitting_element: Elem,
    pub certificate: CentralCertificate,
}

/// Central Lebesgue-type splitting: `a₀` is the Boolean join of all
/// `t`-null central elements, `m₁(x) = m(x ∧ a₀⁻)`, `m₂(x) = m(x ∧ a₀)`.
///
/// Requires RDP; without it the central-element theory is unsound and the
/// call is rejected rather than answered on a guess.
pub fn central_lebesgue_decompose(
    e: &PseudoEffectAlgebra,
    m: &Measure,
    t: &Measure,
) -> Result<CentralDecomposition, DecompError> {
    check_same(m, t)?;
    if !riesz::check_rdp(e).holds {
        return Err(DecompError::RdpRequired);
    }
    let c = center(e);
    if !c.boolean_algebra_check.is_boolean_subalgebra {
        return Err(DecompError::Internal("center is not a Boolean subalgebra".into()));
    }
    let t_null: Vec<Elem> = c
        .members
        .iter()
        .copied()
        .filter(|&a| t.value(a).is_zero())
        .collect();
    let mut a0 = e.zero();
    for &a in &t_null {
        a0 = e
            .join(a0, a)
            .ok_or_else(|| DecompError::Internal("join missing inside the center".into()))?;
    }
    // t(a ∨ b) ≤ t(a) + t(b) for central a, b keeps the join t-null.
    if !t.value(a0).is_zero() {
        return Err(DecompError::Internal("join of t-null central elements is not t-null".into()));
    }
    let splitting_element_maximal = t_null.iter().all(|&a| e.leq(a, a0));

    let neg = e.complement_left(a0);
    let split_by = |c: Elem| -> Result<Measure, DecompError> {
        let values: Vec<Rat> = e
            .elements()
            .map(|x| {
                e.meet(x, c)
                    .map(|xc| m.value(xc).clone())
                    .ok_or_else(|| DecompError::Internal("meet with a central element missing".into()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Measure::validate(e, values)?)
    };
    let continuous = split_by(neg)?;
    let singular = split_by(a0)?;
    let sum_recovers_input = continuous
        .add(&singular)
        .map(|s| &s == m)
        .unwrap_or(false);
    if !sum_recovers_input {
        return Err(DecompError::Internal("central components do not sum to m".into()));
    }
    let cc = check_central_continuous(&continuous, t, e, &c)?;
    let singular_orthogonal =
        t.value(a0).is_zero() && singular.value(e.complement_left(a0)).is_zero();
    if !cc.holds || !singular_orthogonal {
        return Err(DecompError::Internal("central certificate failed".into()));
    }
    Ok(CentralDecomposition {
        continuous,
        singular,
        splitting_element: a0,
        certificate: CentralCertificate {
            t_null_center: t_null,
            splitting_element: a0,
            splitting_element_t_null: true,
            splitting_element_maximal,
            sum_recovers_input,
            component_centrally_continuous: true,
            singular_orthogonal,
        },
    })
}

/// How many directed families an additivity check walks before stopping.
const FAMILY_BUDGET: usize = 100_000;
/// Directed subsets are enumerated up to this size; any finite directed
/// set has a maximum, so small-width families already witness the
/// behaviour.
const DIRECTED_WIDTH: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct AdditivityTrace {
    pub holds: bool,
    pub families_checked: usize,
    pub budget_exhausted: bool,
    /// The family breaking the limit condition, if any.
    pub witness: Option<Vec<Elem>>,
}

/// σ-additivity: over every ascending chain with a supremum, the measure
/// of the supremum is the limit. Chains are enumerated by depth-first
/// extension; finite chains are eventually constant, so the limit is the
/// value at the top.
pub fn check_sigma_additive(e: &PseudoEffectAlgebra, m: &Measure) -> AdditivityTrace {
    let mut trace = AdditivityTrace {
        holds: true,
        families_checked: 0,
        budget_exhausted: false,
        witness: None,
    };
    let mut stack: Vec<Vec<Elem>> = e.elements().map(|a| vec![a]).collect();
    while let Some(chain) = stack.pop() {
        if trace.families_checked >= FAMILY_BUDGET {
            trace.budget_exhausted = true;
            break;
        }
        trace.families_checked += 1;
        let top = *chain.last().expect("chains are nonempty");
        // The supremum must exist, be the chain's top (an eventually
        // constant sequence), and carry the limit of the monotone values.
        let mut uppers = e.above(chain[0]).clone();
        for &a in &chain[1..] {
            uppers.intersect_with(e.above(a));
        }
        let sup_is_top = uppers.contains(top.idx()) && uppers.is_subset_of(e.above(top));
        let limit_matches = chain.windows(2).all(|w| m.value(w[0]) <= m.value(w[1]))
            && chain.iter().all(|&a| m.value(a) <= m.value(top));
        if !sup_is_top || !limit_matches {
            trace.holds = false;
            trace.witness = Some(chain);
            break;
        }
        for next in e.above(top).iter().map(|i| Elem(i as u32)) {
            if next != top {
                let mut longer = chain.clone();
                longer.push(next);
                stack.push(longer);
            }
        }
    }
    trace
}

/// Complete additivity over summable systems (effect algebras only):
/// systems of nonzero elements whose partial sums are all defined, walked
/// in nondecreasing index order. The total is the finite sum, and the
/// measure of the total must equal the sum of the parts.
pub fn check_completely_additive(
    e: &PseudoEffectAlgebra,
    m: &Measure,
) -> Result<AdditivityTrace, DecompError> {
    if !e.is_commutative() {
        return Err(DecompError::NotCommutative);
    }
    let mut trace = AdditivityTrace {
        holds: true,
        families_checked: 0,
        budget_exhausted: false,
        witness: None,
    };
    // (system, running sum, running value); extend by elements with index
    // at least the last used one.
    let mut stack: Vec<(Vec<Elem>, Elem, Rat)> = vec![(Vec::new(), e.zero(), Rat::zero())];
    while let Some((system, total, value)) = stack.pop() {
        if trace.families_checked >= FAMILY_BUDGET {
            trace.budget_exhausted = true;
            break;
        }
        if !system.is_empty() {
            trace.families_checked += 1;
            if m.value(total) != &value {
                trace.holds = false;
                trace.witness = Some(system);
                break;
            }
        }
        let start = system.last().map_or(0, |l| l.0);
        for next in (start..e.n() as u32).map(Elem) {
            if next == e.zero() {
                continue;
            }
            if let Some(bigger) = e.sum(total, next) {
                let mut extended = system.clone();
                extended.push(next);
                stack.push((extended, bigger, &value + m.value(next)));
            }
        }
    }
    Ok(trace)
}

/// Upwards continuity over directed subsets: any finite directed set has
/// a maximum, which is its supremum; the measure there must dominate the
/// whole family. Subsets are enumerated up to a fixed width.
pub fn check_upwards_continuous(e: &PseudoEffectAlgebra, m: &Measure) -> AdditivityTrace {
    let mut trace = AdditivityTrace {
        holds: true,
        families_checked: 0,
        budget_exhausted: false,
        witness: None,
    };
    let elements: Vec<Elem> = e.elements().collect();
    let mut subset: Vec<usize> = Vec::new();
    fn walk(
        e: &PseudoEffectAlgebra,
        m: &Measure,
        elements: &[Elem],
        subset: &mut Vec<usize>,
        from: usize,
        trace: &mut AdditivityTrace,
    ) {
        if trace.budget_exhausted || !trace.holds {
            return;
        }
        if !subset.is_empty() {
            if trace.families_checked >= FAMILY_BUDGET {
                trace.budget_exhausted = true;
                return;
            }
            let family: Vec<Elem> = subset.iter().map(|&i| elements[i]).collect();
            let directed = family.iter().all(|&x| {
                family
                    .iter()
                    .all(|&y| family.iter().any(|&z| e.leq(x, z) && e.leq(y, z)))
            });
            if directed {
                trace.families_checked += 1;
                let max = family
                    .iter()
                    .copied()
                    .find(|&c| family.iter().all(|&x| e.leq(x, c)));
                let ok = match max {
                    Some(top) => family.iter().all(|&x| m.value(x) <= m.value(top)),
                    None => false,
                };
                if !ok {
                    trace.holds = false;
                    trace.witness = Some(family);
                    return;
                }
            }
        }
        if subset.len() == DIRECTED_WIDTH {
            return;
        }
        for i in from..elements.len() {
            subset.push(i);
            walk(e, m, elements, subset, i + 1, trace);
            subset.pop();
        }
    }
    walk(e, m, &elements, &mut subset, 0, &mut trace);
    trace
}

/// Which continuity class the Yosida–Hewitt split targets.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum YhMode {
    CompletelyAdditive,
    SigmaAdditive,
    UpwardsContinuous,
}

impl YhMode {
    pub fn name(self) -> &'static str {
        match self {
            YhMode::CompletelyAdditive => "ca",
            YhMode::SigmaAdditive => "sigma",
            YhMode::UpwardsContinuous => "uc",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct YosidaHewittCertificate {
    pub mode: YhMode,
    pub engine: DecompositionCertificate,
    /// All extreme states passed the mode's continuity check, so the face
    /// is the whole simplex.
    pub face_is_whole_space: bool,
    /// On a finite algebra the split is (m, 0) by necessity; nontrivial
    /// purely-additive parts need infinite algebras.
    pub finite_scale_degenerate: bool,
}

#[derive(Clone, Debug)]
pub struct YosidaHewittDecomposition {
    pub continuous: Measure,
    pub purely_additive: Measure,
    pub certificate: YosidaHewittCertificate,
}

/// Split along the face of states passing the mode's continuity check.
///
/// Finite algebras are degenerate: the face is all of the state space and
/// the result is `(m, 0)`, produced and certified by the same engine as
/// the nontrivial decompositions.
pub fn yosida_hewitt_decompose(
    e: &PseudoEffectAlgebra,
    p: &StatePolytope,
    m: &Measure,
    mode: YhMode,
) -> Result<YosidaHewittDecomposition, DecompError> {
    let passes = |s: &Measure| -> Result<bool, DecompError> {
        Ok(match mode {
            YhMode::CompletelyAdditive => check_completely_additive(e, s)?.holds,
            YhMode::SigmaAdditive => check_sigma_additive(e, s).holds,
            YhMode::UpwardsContinuous => check_upwards_continuous(e, s).holds,
        })
    };
    let mut vertices = BTreeSet::new();
    for (i, s) in p.extreme_states().iter().enumerate() {
        if passes(s.as_measure())? {
            vertices.insert(i);
        }
    }
    let face_is_whole_space = vertices.len() == p.extreme_states().len();
    if !face_is_whole_space {
        return Err(DecompError::Internal(
            "a state failed a continuity check on a finite algebra".into(),
        ));
    }
    let face = faces::Face { vertices, defining_kernel: None };
    let split = faces::face_decompose(e, p, &face, m)?;
    if !split.singular.is_zero() {
        return Err(DecompError::Internal(
            "finite-scale split must leave no purely additive part".into(),
        ));
    }
    Ok(YosidaHewittDecomposition {
        continuous: split.component,
        purely_additive: split.singular,
        certificate: YosidaHewittCertificate {
            mode,
            engine: split.certificate,
            face_is_whole_space,
            finite_scale_degenerate: true,
        },
    })
}

/// Jauch–Piron verdict: every pair of `t`-null elements has a common
/// `t`-null upper bound.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct JauchPironVerdict {
    pub holds: bool,
    pub witness: Option<(Elem, Elem)>,
    /// The defining clause on the bound is read as `t(c) = 0`.
    pub reading_note: &'static str,
}

pub const JAUCH_PIRON_READING: &str =
    "upper bound c is required to satisfy t(c) = 0";

pub fn check_jauch_piron(e: &PseudoEffectAlgebra, t: &Measure) -> JauchPironVerdict {
    let nulls: Vec<Elem> = e.elements().filter(|&x| t.value(x).is_zero()).collect();
    for &a in &nulls {
        for &b in &nulls {
            let found = e
                .above(a)
                .intersection(e.above(b))
                .iter()
                .any(|c| t.value(Elem(c as u32)).is_zero());
            if !found {
                return JauchPironVerdict {
                    holds: false,
                    witness: Some((a, b)),
                    reading_note: JAUCH_PIRON_READING,
                };
            }
        }
    }
    JauchPironVerdict { holds: true, witness: None, reading_note: JAUCH_PIRON_READING }
}
