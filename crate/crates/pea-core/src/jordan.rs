//! The lattice structure on Jordan signed measures.
//!
//! On an algebra with RDP the Jordan signed measures form an Abelian
//! Dedekind complete ℓ-group whose joins are computed by the
//! decomposition-supremum formula
//!
//! ```text
//! (m₁ ∨ … ∨ mₙ)(x) = max { m₁(x₁) + … + mₙ(xₙ) : x = x₁ + … + xₙ }
//! ```
//!
//! and dually for meets. Decompositions are enumerated through
//! left-associated prefix sums (associativity makes the bracketing
//! irrelevant), giving a dynamic program over the sum table: one pass per
//! input measure. Parts may be 0, so every element always has at least
//! one decomposition.
//!
//! The formula's output is only guaranteed additive under RDP; the result
//! is re-validated and a failure is reported as [`JordanError::NotAdditive`]
//! with the offending triple rather than returned silently.

use crate::algebra::PseudoEffectAlgebra;
use crate::measure::{Measure, MeasureError, SignedMeasure};
use crate::Rat;
use num_traits::Zero;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum JordanError {
    #[error("join/meet output is not additive at ({a}, {b}, {c}): {lhs} ≠ {rhs}; the algebra lacks RDP or the inputs are inconsistent")]
    NotAdditive { a: String, b: String, c: String, lhs: Rat, rhs: Rat },
    #[error("the signed measure is not a difference of measures: {0}")]
    NotJordan(String),
    #[error("inputs are not a ≤⁺-chain: entries {i} and {j} are incomparable")]
    NotAChain { i: usize, j: usize },
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// A signed measure carrying a witness pair of measures `m = pos − neg`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JordanMeasure {
    signed: SignedMeasure,
    pos: Measure,
    neg: Measure,
}

impl JordanMeasure {
    /// Difference of two measures; always a Jordan signed measure.
    pub fn from_parts(pos: Measure, neg: Measure) -> Result<Self, MeasureError> {
        let signed = pos.sub(&neg)?;
        Ok(JordanMeasure { signed, pos, neg })
    }

    pub fn from_measure(m: Measure) -> Self {
        let signed = m.as_signed().clone();
        let neg = Measure::trusted(SignedMeasure::from_values_unchecked(
            m.algebra_hash().to_string(),
            vec![Rat::zero(); m.values().len()],
        ));
        JordanMeasure { signed, pos: m, neg }
    }

    /// Witness a raw signed measure by computing its Jordan decomposition.
    pub fn from_signed(
        e: &PseudoEffectAlgebra,
        m: &SignedMeasure,
    ) -> Result<Self, JordanError> {
        let (pos, neg) = jordan_decompose(e, m)?;
        Ok(JordanMeasure { signed: m.clone(), pos, neg })
    }

    pub fn signed(&self) -> &SignedMeasure {
        &self.signed
    }

    pub fn witness(&self) -> (&Measure, &Measure) {
        (&self.pos, &self.neg)
    }
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Extremum {
    Max,
    Min,
}

/// The decomposition-supremum formula for raw signed measures.
///
/// Returns the pointwise table re-validated for additivity.
fn extremal_sum(
    e: &PseudoEffectAlgebra,
    inputs: &[&SignedMeasure],
    which: Extremum,
) -> Result<SignedMeasure, JordanError> {
    assert!(!inputs.is_empty(), "join/meet of an empty family");
    for m in inputs {
        if m.algebra_hash() != e.content_hash() {
            return Err(MeasureError::AlgebraMismatch {
                expected: e.content_hash().to_string(),
                got: m.algebra_hash().to_string(),
            }
            .into());
        }
    }
    // best[y] after step k = extremum of m₁(x₁)+…+mₖ(xₖ) over
    // decompositions y = x₁+…+xₖ (left-associated prefixes).
    let mut best: Vec<Rat> = inputs[0].values().to_vec();
    for m in &inputs[1..] {
        let mut next: Vec<Option<Rat>> = vec![None; e.n()];
        for &(z, w, y) in e.triples() {
            let candidate = &best[z.idx()] + m.value(w);
            let slot = &mut next[y.idx()];
            let replace = match slot {
                None => true,
                Some(cur) => match which {
                    Extremum::Max => candidate > *cur,
                    Extremum::Min => candidate < *cur,
                },
            };
            if replace {
                *slot = Some(candidate);
            }
        }
        best = next
            .into_iter()
            .map(|v| v.expect("y = y + 0 decomposes every element"))
            .collect();
    }

    let result = SignedMeasure::validate(e, best).map_err(|err| match err {
        MeasureError::Additivity(violations) => {
            let v = &violations[0];
            JordanError::NotAdditive {
                a: e.label(v.a).to_string(),
                b: e.label(v.b).to_string(),
                c: e.label(v.c).to_string(),
                lhs: v.lhs.clone(),
                rhs: v.rhs.clone(),
            }
        }
        other => other.into(),
    })?;
    Ok(result)
}

/// Pointwise-order supremum of raw signed measures by the formula;
/// additivity of the output is verified, not assumed.
pub fn join_signed(
    e: &PseudoEffectAlgebra,
    inputs: &[&SignedMeasure],
) -> Result<SignedMeasure, JordanError> {
    extremal_sum(e, inputs, Extremum::Max)
}

pub fn meet_signed(
    e: &PseudoEffectAlgebra,
    inputs: &[&SignedMeasure],
) -> Result<SignedMeasure, JordanError> {
    extremal_sum(e, inputs, Extremum::Min)
}

fn sum_of<'a>(
    e: &PseudoEffectAlgebra,
    measures: impl Iterator<Item = &'a Measure>,
) -> Result<SignedMeasure, MeasureError> {
    let mut acc = SignedMeasure::zero(e);
    for m in measures {
        acc = acc.add(m.as_signed())?;
    }
    Ok(acc)
}

/// Join of Jordan measures, with a fresh witness pair for the result.
pub fn join(
    e: &PseudoEffectAlgebra,
    inputs: &[JordanMeasure],
) -> Result<JordanMeasure, JordanError> {
    let raw: Vec<&SignedMeasure> = inputs.iter().map(JordanMeasure::signed).collect();
    let signed = join_signed(e, &raw)?;
    // The join is dominated pointwise by the sum of the positive parts,
    // so (Σpᵢ, Σpᵢ − join) witnesses it.
    let pos_sum = sum_of(e, inputs.iter().map(|m| &m.pos))?;
    let neg = Measure::new(e, pos_sum.sub(&signed)?)
        .map_err(|err| JordanError::Internal(format!("join exceeds the positive-part sum: {err}")))?;
    let pos = Measure::trusted(pos_sum);
    Ok(JordanMeasure { signed, pos, neg })
}

/// Meet of Jordan measures, with a fresh witness pair for the result.
pub fn meet(
    e: &PseudoEffectAlgebra,
    inputs: &[JordanMeasure],
) -> Result<JordanMeasure, JordanError> {
    let raw: Vec<&SignedMeasure> = inputs.iter().map(JordanMeasure::signed).collect();
    let signed = meet_signed(e, &raw)?;
    // Dually, the meet dominates −Σqᵢ, so (meet + Σqᵢ, Σqᵢ) witnesses it.
    let neg_sum = sum_of(e, inputs.iter().map(|m| &m.neg))?;
    let pos = Measure::new(e, signed.add(&neg_sum)?)
        .map_err(|err| JordanError::Internal(format!("meet undercuts the negative-part sum: {err}")))?;
    let neg = Measure::trusted(neg_sum);
    Ok(JordanMeasure { signed, pos, neg })
}

/// Positive and negative parts: `m⁺ = m ∨ 0`, `m⁻ = m⁺ − m`.
///
/// Fails with [`JordanError::NotJordan`] when `m ∨ 0` is not additive,
/// which on an RDP algebra certifies that `m` is no difference of
/// measures.
pub fn jordan_decompose(
    e: &PseudoEffectAlgebra,
    m: &SignedMeasure,
) -> Result<(Measure, Measure), JordanError> {
    let zero = SignedMeasure::zero(e);
    let plus = match join_signed(e, &[m, &zero]) {
        Ok(j) => j,
        Err(JordanError::NotAdditive { a, b, c, lhs, rhs }) => {
            return Err(JordanError::NotJordan(format!(
                "m ∨ 0 fails additivity at ({a}, {b}, {c}): {lhs} ≠ {rhs}"
            )))
        }
        Err(other) => return Err(other),
    };
    // x = 0 + x gives m⁺ ≥ 0, and x = x + 0 gives m⁺ ≥ m, both by the
    // formula itself; Measure::new re-checks.
    let minus = Measure::new(e, plus.sub(m)?)?;
    let plus = Measure::new(e, plus)?;
    Ok((plus, minus))
}

/// Pointwise supremum of a ≤⁺-chain of measures.
///
/// For a finite chain this is its top element; the result is also checked
/// against the join formula, which must agree.
pub fn chain_sup(
    e: &PseudoEffectAlgebra,
    chain: &[Measure],
) -> Result<Measure, JordanError> {
    assert!(!chain.is_empty(), "supremum of an empty chain");
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            if !chain[i].leq_pointwise(&chain[j]) && !chain[j].leq_pointwise(&chain[i]) {
                return Err(JordanError::NotAChain { i, j });
            }
        }
    }
    let top = chain
        .iter()
        .reduce(|a, b| if a.leq_pointwise(b) { b } else { a })
        .expect("chain is nonempty");
    let raw: Vec<&SignedMeasure> = chain.iter().map(|m| m.as_signed()).collect();
    let joined = join_signed(e, &raw)?;
    if &joined != top.as_signed() {
        return Err(JordanError::Internal(
            "pointwise supremum of a chain disagrees with the join formula".into(),
        ));
    }
    Ok(top.clone())
}

/// `m₁ ∧ m₂ = 0` for measures.
pub fn is_disjoint(
    e: &PseudoEffectAlgebra,
    m1: &Measure,
    m2: &Measure,
) -> Result<bool, JordanError> {
    let met = meet_signed(e, &[m1.as_signed(), m2.as_signed()])?;
    Ok(met.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use crate::{rat, ratio, Rat};

    fn atom_indicator(e: &PseudoEffectAlgebra, atom: u32) -> Measure {
        let values: Vec<Rat> = (0..e.n())
            .map(|mask| if mask & (1 << atom) != 0 { rat(1) } else { rat(0) })
            .collect();
        Measure::validate(e, values).unwrap()
    }

    /// Oracle: enumerate every left-associated n-part decomposition
    /// recursively and take the extremum directly.
    fn oracle_extremum(
        e: &PseudoEffectAlgebra,
        inputs: &[&SignedMeasure],
        x: crate::algebra::Elem,
        max: bool,
    ) -> Rat {
        fn go(
            e: &PseudoEffectAlgebra,
            inputs: &[&SignedMeasure],
            k: usize,
            prefix: crate::algebra::Elem,
            acc: Rat,
            best: &mut Option<Rat>,
            target: crate::algebra::Elem,
            max: bool,
        ) {
            if k == inputs.len() {
                if prefix == target {
                    let better = match best {
                        None => true,
                        Some(b) => if max { acc > *b } else { acc < *b },
                    };
                    if better {
                        *best = Some(acc);
                    }
                }
                return;
            }
            for part in e.elements() {
                if let Some(next) = e.sum(prefix, part) {
                    // Only prefixes below the target can still reach it.
                    if e.leq(next, target) {
                        go(
                            e,
                            inputs,
                            k + 1,
                            next,
                            &acc + inputs[k].value(part),
                            best,
                            target,
                            max,
                        );
                    }
                }
            }
        }
        let mut best = None;
        go(e, inputs, 0, e.zero(), Rat::zero(), &mut best, x, max);
        best.expect("x = x + 0 + … + 0 always reaches the target")
    }

    #[test]
    fn boolean2_join_and_meet_match_the_enumeration_oracle() {
        let e = zoo::boolean(2).unwrap();
        let da = atom_indicator(&e, 0);
        let db = atom_indicator(&e, 1);
        let j = join_signed(&e, &[da.as_signed(), db.as_signed()]).unwrap();
        let m = meet_signed(&e, &[da.as_signed(), db.as_signed()]).unwrap();
        for x in e.elements() {
            assert_eq!(
                j.value(x),
                &oracle_extremum(&e, &[da.as_signed(), db.as_signed()], x, true)
            );
            assert_eq!(
                m.value(x),
                &oracle_extremum(&e, &[da.as_signed(), db.as_signed()], x, false)
            );
        }
        // The worked values: join is 2 at the unit, meet is the zero
        // measure.
        assert_eq!(j.value(e.one()), &rat(2));
        assert!(m.is_zero());
        assert!(is_disjoint(&e, &da, &db).unwrap());
    }

    #[test]
    fn join_is_idempotent_and_bounds_inputs() {
        let e = zoo::chain(3).unwrap();
        let m = Measure::validate(&e, vec![rat(0), ratio(1, 2), rat(1), ratio(3, 2)]).unwrap();
        let jm = JordanMeasure::from_measure(m.clone());
        let j = join(&e, &[jm.clone(), jm]).unwrap();
        assert_eq!(j.signed(), m.as_signed());
    }

    #[test]
    fn jordan_decompose_atom_difference() {
        let e = zoo::boolean(2).unwrap();
        let da = atom_indicator(&e, 0);
        let db = atom_indicator(&e, 1);
        let m = da.sub(&db).unwrap();
        let (plus, minus) = jordan_decompose(&e, &m).unwrap();
        assert_eq!(plus, da);
        assert_eq!(minus, db);
        // m⁺ ∧ m⁻ = 0.
        assert!(is_disjoint(&e, &plus, &minus).unwrap());

        // A measure decomposes as (m, 0); zero as (0, 0).
        let (p, n) = jordan_decompose(&e, da.as_signed()).unwrap();
        assert_eq!(p, da);
        assert!(n.is_zero());
        let (p, n) = jordan_decompose(&e, &SignedMeasure::zero(&e)).unwrap();
        assert!(p.is_zero() && n.is_zero());
    }

    #[test]
    fn chain_sup_returns_the_top() {
        let e = zoo::boolean(2).unwrap();
        let da = atom_indicator(&e, 0);
        let db = atom_indicator(&e, 1);
        let bigger = Measure::new(&e, da.add(&db.scale_nonneg(&ratio(1, 2))).unwrap().into_signed()).unwrap();
        let sup = chain_sup(&e, &[da.clone(), bigger.clone()]).unwrap();
        assert_eq!(sup, bigger);
        let single = chain_sup(&e, &[da.clone()]).unwrap();
        assert_eq!(single, da);
        // Scalar multiples of one state form a chain topped by the largest.
        let s = da.scale_nonneg(&ratio(1, 2));
        let t = da.scale_nonneg(&rat(2));
        assert_eq!(chain_sup(&e, &[s, da.clone(), t.clone()]).unwrap(), t);
        // Incomparable measures are rejected.
        assert!(matches!(
            chain_sup(&e, &[da, db]),
            Err(JordanError::NotAChain { .. })
        ));
    }

    #[test]
    fn diamond_join_fails_additivity() {
        // Without RDP the formula can produce a non-additive table; this
        // input pair is a frozen regression: u is the (1,0) corner state,
        // w the (1/2, 1) edge state, and the join breaks at a + a' = 1.
        let e = zoo::diamond().unwrap();
        let idx = |l: &str| e.elem(l).unwrap();
        let mut u = vec![rat(0); 6];
        u[idx("a").idx()] = rat(1);
        u[idx("b'").idx()] = rat(1);
        u[idx("1").idx()] = rat(1);
        let u = Measure::validate(&e, u).unwrap();
        let mut w = vec![rat(0); 6];
        w[idx("a").idx()] = ratio(1, 2);
        w[idx("a'").idx()] = ratio(1, 2);
        w[idx("b").idx()] = rat(1);
        w[idx("1").idx()] = rat(1);
        let w = Measure::validate(&e, w).unwrap();
        let err = join_signed(&e, &[u.as_signed(), w.as_signed()]).unwrap_err();
        assert!(matches!(err, JordanError::NotAdditive { .. }), "{err}");
    }

    #[test]
    fn meet_with_zero_and_scalar_chain() {
        let e = zoo::chain(2).unwrap();
        let s = Measure::validate(&e, vec![rat(0), ratio(1, 2), rat(1)]).unwrap();
        let half = s.scale_nonneg(&ratio(1, 2));
        // meet(s, s/2) = s/2, so s and s/2 are not disjoint.
        let met = meet_signed(&e, &[s.as_signed(), half.as_signed()]).unwrap();
        assert_eq!(&met, half.as_signed());
        assert!(!is_disjoint(&e, &s, &half).unwrap());
        // Anything is disjoint from the zero measure.
        assert!(is_disjoint(&e, &s, &Measure::zero(&e)).unwrap());
    }
}
