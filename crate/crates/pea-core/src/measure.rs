//! Signed measures, measures, and states on a pseudo effect algebra,
//! with exact rational values.
//!
//! A signed measure assigns a rational to every element so that
//! `m(a+b) = m(a) + m(b)` for every defined sum. Measures are the
//! nonnegative ones (hence monotone), states the measures normalized to
//! `m(1) = 1`. The refinements are separate types so that an API taking a
//! [`State`] cannot receive an unvalidated vector.

use crate::algebra::{Elem, PseudoEffectAlgebra};
use crate::faces;
use crate::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::ops::Deref;
use thiserror::Error;

/// One failed additivity instance: `m(a) + m(b) ≠ m(c)` for a defined
/// sum `a + b = c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdditivityViolation {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub lhs: Rat,
    pub rhs: Rat,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum MeasureError {
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("value at 0 must be 0, got {0}")]
    ZeroNotZero(Rat),
    #[error("{} additivity violations, first at elements ({}, {}, {}): {} ≠ {}",
        .0.len(), .0[0].a.0, .0[0].b.0, .0[0].c.0, .0[0].lhs, .0[0].rhs)]
    Additivity(Vec<AdditivityViolation>),
    #[error("negative value {value} at element {element:?}")]
    Negative { element: Elem, value: Rat },
    #[error("not monotone: elements {a:?} ≤ {b:?} but values decrease")]
    NotMonotone { a: Elem, b: Elem },
    #[error("value at 1 must be 1, got {0}")]
    NotNormalized(Rat),
    #[error("algebra mismatch: measure belongs to {got}, expected {expected}")]
    AlgebraMismatch { expected: String, got: String },
    #[error("the state space is empty")]
    EmptyStateSpace,
}

/// An additive rational function on the algebra's elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedMeasure {
    algebra: String,
    values: Vec<Rat>,
}

impl SignedMeasure {
    /// Check `values` exactly against every defined sum.
    ///
    /// All violations are collected, not just the first.
    pub fn validate(e: &PseudoEffectAlgebra, values: Vec<Rat>) -> Result<Self, MeasureError> {
        if values.len() != e.n() {
            return Err(MeasureError::WrongLength { expected: e.n(), got: values.len() });
        }
        if !values[e.zero().idx()].is_zero() {
            return Err(MeasureError::ZeroNotZero(values[e.zero().idx()].clone()));
        }
        let violations: Vec<AdditivityViolation> = e
            .triples()
            .iter()
            .filter_map(|&(a, b, c)| {
                let lhs = &values[a.idx()] + &values[b.idx()];
                let rhs = values[c.idx()].clone();
                (lhs != rhs).then_some(AdditivityViolation { a, b, c, lhs, rhs })
            })
            .collect();
        if !violations.is_empty() {
            return Err(MeasureError::Additivity(violations));
        }
        Ok(SignedMeasure { algebra: e.content_hash().to_string(), values })
    }

    pub fn zero(e: &PseudoEffectAlgebra) -> Self {
        SignedMeasure {
            algebra: e.content_hash().to_string(),
            values: vec![Rat::zero(); e.n()],
        }
    }

    pub fn algebra_hash(&self) -> &str {
        &self.algebra
    }

    pub fn value(&self, x: Elem) -> &Rat {
        &self.values[x.idx()]
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn total(&self, e: &PseudoEffectAlgebra) -> &Rat {
        &self.values[e.one().idx()]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rat::is_zero)
    }

    /// Pointwise order `self ≤⁺ other`.
    pub fn leq_pointwise(&self, other: &SignedMeasure) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    fn check_same(&self, other: &SignedMeasure) -> Result<(), MeasureError> {
        if self.algebra != other.algebra {
            return Err(MeasureError::AlgebraMismatch {
                expected: self.algebra.clone(),
                got: other.algebra.clone(),
            });
        }
        Ok(())
    }

    /// Pointwise sum; additivity is preserved by linearity.
    pub fn add(&self, other: &SignedMeasure) -> Result<SignedMeasure, MeasureError> {
        self.check_same(other)?;
        Ok(SignedMeasure {
            algebra: self.algebra.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &SignedMeasure) -> Result<SignedMeasure, MeasureError> {
        self.check_same(other)?;
        Ok(SignedMeasure {
            algebra: self.algebra.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> SignedMeasure {
        SignedMeasure {
            algebra: self.algebra.clone(),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> SignedMeasure {
        SignedMeasure {
            algebra: self.algebra.clone(),
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    pub(crate) fn from_values_unchecked(algebra: String, values: Vec<Rat>) -> SignedMeasure {
        SignedMeasure { algebra, values }
    }
}

/// A nonnegative signed measure; monotone along the order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Measure(SignedMeasure);

impl Measure {
    /// Refine a signed measure, checking nonnegativity everywhere and
    /// monotonicity over every comparable pair.
    pub fn new(e: &PseudoEffectAlgebra, m: SignedMeasure) -> Result<Self, MeasureError> {
        for x in e.elements() {
            if m.value(x).is_negative() {
                return Err(MeasureError::Negative { element: x, value: m.value(x).clone() });
            }
        }
        for a in e.elements() {
            for b in e.above(a).iter().map(|i| Elem(i as u32)) {
                if m.value(a) > m.value(b) {
                    return Err(MeasureError::NotMonotone { a, b });
                }
            }
        }
        Ok(Measure(m))
    }

    pub fn validate(e: &PseudoEffectAlgebra, values: Vec<Rat>) -> Result<Self, MeasureError> {
        Measure::new(e, SignedMeasure::validate(e, values)?)
    }

    pub fn zero(e: &PseudoEffectAlgebra) -> Self {
        Measure(SignedMeasure::zero(e))
    }

    /// Wrap a signed measure whose nonnegativity is already established
    /// by the caller's construction.
    pub(crate) fn trusted(m: SignedMeasure) -> Measure {
        debug_assert!(m.values().iter().all(|v| !v.is_negative()));
        Measure(m)
    }

    pub fn into_signed(self) -> SignedMeasure {
        self.0
    }

    pub fn as_signed(&self) -> &SignedMeasure {
        &self.0
    }

    pub fn add(&self, other: &Measure) -> Result<Measure, MeasureError> {
        Ok(Measure(self.0.add(&other.0)?))
    }

    pub fn scale_nonneg(&self, k: &Rat) -> Measure {
        assert!(!k.is_negative());
        Measure(self.0.scale(k))
    }
}

impl Deref for Measure {
    type Target = SignedMeasure;
    fn deref(&self) -> &SignedMeasure {
        &self.0
    }
}

/// A measure normalized to 1 at the unit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct State(Measure);

impl State {
    pub fn new(e: &PseudoEffectAlgebra, m: Measure) -> Result<Self, MeasureError> {
        if !m.total(e).is_one() {
            return Err(MeasureError::NotNormalized(m.total(e).clone()));
        }
        Ok(State(m))
    }

    pub fn validate(e: &PseudoEffectAlgebra, values: Vec<Rat>) -> Result<Self, MeasureError> {
        State::new(e, Measure::validate(e, values)?)
    }

    pub fn into_measure(self) -> Measure {
        self.0
    }

    pub fn as_measure(&self) -> &Measure {
        &self.0
    }
}

impl Deref for State {
    type Target = Measure;
    fn deref(&self) -> &Measure {
        &self.0
    }
}

/// The kernel `{ x : m(x) = 0 }` with its ideal and normality verdicts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KernelInfo {
    pub elements: BTreeSet<Elem>,
    pub is_ideal: bool,
    pub is_normal: bool,
}

/// Zero set of a measure; ideal and normality flags are checked, not
/// assumed.
pub fn kernel(e: &PseudoEffectAlgebra, m: &Measure) -> KernelInfo {
    let elements: BTreeSet<Elem> = e.elements().filter(|&x| m.value(x).is_zero()).collect();
    let (is_ideal, is_normal) = faces::ideal_flags(e, &elements);
    KernelInfo { elements, is_ideal, is_normal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use crate::{rat, ratio};

    #[test]
    fn chain_state_forced_by_additivity() {
        let e = zoo::chain(3).unwrap();
        let s = State::validate(&e, vec![rat(0), ratio(1, 3), ratio(2, 3), rat(1)]).unwrap();
        assert_eq!(s.value(e.elem("1").unwrap()), &ratio(1, 3));

        // 1 + 1 = 2 forces m(2) = 2/3; 1/2 violates it.
        let err = SignedMeasure::validate(&e, vec![rat(0), ratio(1, 3), ratio(1, 2), rat(1)])
            .unwrap_err();
        let MeasureError::Additivity(violations) = err else {
            panic!("expected additivity violations");
        };
        let one_elem = e.elem("1").unwrap();
        assert!(violations
            .iter()
            .any(|v| v.a == one_elem && v.b == one_elem && v.lhs == ratio(2, 3)));
    }

    #[test]
    fn boolean_violation_at_the_unit() {
        let e = zoo::boolean(2).unwrap();
        let mut values = vec![rat(0); 4];
        values[e.one().idx()] = rat(1);
        values[e.elem("a1").unwrap().idx()] = ratio(1, 2);
        values[e.elem("a2").unwrap().idx()] = ratio(1, 4);
        assert!(matches!(
            SignedMeasure::validate(&e, values),
            Err(MeasureError::Additivity(_))
        ));
    }

    #[test]
    fn complement_values_agree() {
        // m(a⁻) = m(a∼) for every validated signed measure.
        let e = zoo::diamond().unwrap();
        let a = e.elem("a").unwrap();
        let b = e.elem("b").unwrap();
        let mut values = vec![rat(0); 6];
        values[a.idx()] = ratio(2, 5);
        values[e.elem("a'").unwrap().idx()] = ratio(-7, 5);
        values[b.idx()] = ratio(1, 5);
        values[e.elem("b'").unwrap().idx()] = ratio(-6, 5);
        values[e.one().idx()] = rat(-1);
        let m = SignedMeasure::validate(&e, values).unwrap();
        for x in e.elements() {
            assert_eq!(
                m.value(e.complement_left(x)),
                m.value(e.complement_right(x))
            );
        }
    }

    #[test]
    fn measure_rejects_negative_and_states_need_normalization() {
        let e = zoo::chain(2).unwrap();
        let sm = SignedMeasure::validate(&e, vec![rat(0), ratio(-1, 2), rat(-1)]).unwrap();
        assert!(matches!(
            Measure::new(&e, sm),
            Err(MeasureError::Negative { .. })
        ));
        let m = Measure::validate(&e, vec![rat(0), rat(1), rat(2)]).unwrap();
        assert!(matches!(
            State::new(&e, m),
            Err(MeasureError::NotNormalized(_))
        ));
    }

    #[test]
    fn kernels_of_simple_measures() {
        let e = zoo::boolean(2).unwrap();
        let a1 = e.elem("a1").unwrap();
        let a2 = e.elem("a2").unwrap();
        // Atom indicator on a1 vanishes exactly on {0, a2}.
        let mut values = vec![rat(0); 4];
        values[a1.idx()] = rat(1);
        values[e.one().idx()] = rat(1);
        let m = Measure::validate(&e, values).unwrap();
        let k = kernel(&e, &m);
        assert_eq!(k.elements, BTreeSet::from([e.zero(), a2]));
        assert!(k.is_ideal && k.is_normal);

        let half = Measure::validate(
            &e,
            vec![rat(0), ratio(1, 2), ratio(1, 2), rat(1)],
        )
        .unwrap();
        assert_eq!(kernel(&e, &half).elements, BTreeSet::from([e.zero()]));

        let chain = zoo::chain(4).unwrap();
        let s = State::validate(
            &chain,
            (0..=4).map(|k| ratio(k, 4)).collect(),
        )
        .unwrap();
        assert_eq!(kernel(&chain, &s).elements, BTreeSet::from([chain.zero()]));
    }
}
