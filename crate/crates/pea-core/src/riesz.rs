//! Riesz-type property checkers: com, RIP, RDP₀, RDP, RDP₁, RDP₂.
//!
//! Each check is exhaustive and returns either a success verdict or a
//! witness falsifying the property; witnesses and certificates both
//! re-verify against the raw definitions. Refinement searches enumerate
//! the equalities `a₁+a₂ = b₁+b₂` by grouping the sum table by value
//! rather than scanning all element quadruples; by cancellativity the
//! refinement matrix is determined by its top-left entry, so one scan over
//! `d₁` is exhaustive.

use crate::algebra::{Elem, PseudoEffectAlgebra};
use crate::bitset::BitSet;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum RieszProperty {
    Com,
    Rip,
    Rdp0,
    Rdp,
    Rdp1,
    Rdp2,
}

impl fmt::Display for RieszProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RieszProperty::Com => "com",
            RieszProperty::Rip => "RIP",
            RieszProperty::Rdp0 => "RDP0",
            RieszProperty::Rdp => "RDP",
            RieszProperty::Rdp1 => "RDP1",
            RieszProperty::Rdp2 => "RDP2",
        })
    }
}

/// Elements falsifying a property; the meaning of the tuple follows the
/// property's hypothesis.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum RieszWitness {
    /// `a₁ ≤ a`, `b₁ ≤ b` whose sums disagree or exist asymmetrically.
    Com { a: Elem, b: Elem, a1: Elem, b1: Elem },
    /// `a₁, a₂ ≤ b₁, b₂` with no interpolant.
    Rip { a1: Elem, a2: Elem, b1: Elem, b2: Elem },
    /// `a ≤ b₁ + b₂` with no splitting of `a`.
    Rdp0 { a: Elem, b1: Elem, b2: Elem },
    /// `a₁ + a₂ = b₁ + b₂` with no refinement (with the variant's side
    /// condition).
    Refinement { a1: Elem, a2: Elem, b1: Elem, b2: Elem },
}

/// Elements realizing a property instance.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum RieszCertificate {
    Interpolant(Elem),
    Split(Elem, Elem),
    Refinement([Elem; 4]),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PropertyVerdict {
    pub property: RieszProperty,
    pub holds: bool,
    pub witness: Option<RieszWitness>,
    pub certificate: Option<RieszCertificate>,
}

impl PropertyVerdict {
    fn holds(property: RieszProperty) -> Self {
        PropertyVerdict { property, holds: true, witness: None, certificate: None }
    }

    fn fails(property: RieszProperty, witness: RieszWitness) -> Self {
        PropertyVerdict { property, holds: false, witness: Some(witness), certificate: None }
    }
}

#[derive(Error, Debug)]
pub enum RieszError {
    #[error("internal inconsistency: computed verdicts violate the implication chain {0}")]
    ImplicationChainBroken(String),
}

/// Pairwise commutation data, precomputed once per algebra.
///
/// `bad_pairs[u]` is `{ v : u+v, v+u exist asymmetrically or differ }`;
/// `com_fails[x]` is `{ y : not (x com y) }`, i.e. some `u ≤ x`, `v ≤ y`
/// fail to commute.
pub struct ComTables {
    bad_pairs: Vec<BitSet>,
    com_fails: Vec<BitSet>,
}

impl ComTables {
    pub fn new(e: &PseudoEffectAlgebra) -> Self {
        let n = e.n();
        let mut bad_pairs = vec![BitSet::new(n); n];
        if !e.is_commutative() {
            for u in e.elements() {
                for v in e.elements() {
                    if e.sum(u, v) != e.sum(v, u) {
                        bad_pairs[u.idx()].insert(v.idx());
                    }
                }
            }
        }
        // bad_up[u] = { y : some v ≤ y has (u, v) bad }.
        let mut bad_up = vec![BitSet::new(n); n];
        for u in 0..n {
            for v in bad_pairs[u].iter() {
                bad_up[u].union_with(e.above(Elem(v as u32)));
            }
        }
        let mut com_fails = vec![BitSet::new(n); n];
        for x in e.elements() {
            for u in e.below(x).iter() {
                com_fails[x.idx()].union_with(&bad_up[u]);
            }
        }
        ComTables { bad_pairs, com_fails }
    }

    pub fn com(&self, a: Elem, b: Elem) -> bool {
        !self.com_fails[a.idx()].contains(b.idx())
    }
}

/// `a com b`: all `a₁ ≤ a` and `b₁ ≤ b` commute.
pub fn check_com(e: &PseudoEffectAlgebra, a: Elem, b: Elem) -> PropertyVerdict {
    check_com_with(e, &ComTables::new(e), a, b)
}

pub fn check_com_with(
    e: &PseudoEffectAlgebra,
    tables: &ComTables,
    a: Elem,
    b: Elem,
) -> PropertyVerdict {
    if tables.com(a, b) {
        return PropertyVerdict::holds(RieszProperty::Com);
    }
    for a1 in e.below(a).iter().map(|i| Elem(i as u32)) {
        for b1 in tables.bad_pairs[a1.idx()].intersection(e.below(b)).iter() {
            return PropertyVerdict::fails(
                RieszProperty::Com,
                RieszWitness::Com { a, b, a1, b1: Elem(b1 as u32) },
            );
        }
    }
    unreachable!("com_fails tables disagree with the pair scan")
}

/// Aggregated commutation over every element pair.
pub fn check_com_all(e: &PseudoEffectAlgebra) -> PropertyVerdict {
    let tables = ComTables::new(e);
    for a in e.elements() {
        for b in e.elements() {
            if !tables.com(a, b) {
                return check_com_with(e, &tables, a, b);
            }
        }
    }
    PropertyVerdict::holds(RieszProperty::Com)
}

/// Interpolant for a single RIP instance, if one exists.
pub fn rip_instance(
    e: &PseudoEffectAlgebra,
    a1: Elem,
    a2: Elem,
    b1: Elem,
    b2: Elem,
) -> Option<Elem> {
    let mut between = e.above(a1).intersection(e.above(a2));
    between.intersect_with(e.below(b1));
    between.intersect_with(e.below(b2));
    let first = between.iter().next();
    first.map(|i| Elem(i as u32))
}

/// Riesz Interpolation Property over all quadruples `a₁, a₂ ≤ b₁, b₂`.
pub fn check_rip(e: &PseudoEffectAlgebra) -> PropertyVerdict {
    for a1 in e.elements() {
        for a2 in e.elements().filter(|a2| a2.0 >= a1.0) {
            let uppers = e.above(a1).intersection(e.above(a2));
            for b1 in uppers.iter().map(|i| Elem(i as u32)) {
                for b2 in uppers.iter().map(|i| Elem(i as u32)).filter(|b2| b2.0 >= b1.0) {
                    if rip_instance(e, a1, a2, b1, b2).is_none() {
                        return PropertyVerdict::fails(
                            RieszProperty::Rip,
                            RieszWitness::Rip { a1, a2, b1, b2 },
                        );
                    }
                }
            }
        }
    }
    PropertyVerdict::holds(RieszProperty::Rip)
}

/// A splitting `a = d₁ + d₂` with `d₁ ≤ b₁`, `d₂ ≤ b₂`, if one exists.
pub fn rdp0_instance(
    e: &PseudoEffectAlgebra,
    a: Elem,
    b1: Elem,
    b2: Elem,
) -> Option<(Elem, Elem)> {
    let candidates = e.below(b1).intersection(e.below(a));
    for d1 in candidates.iter().map(|i| Elem(i as u32)) {
        let d2 = e.right_diff(d1, a).expect("d1 ≤ a has a right difference");
        if e.leq(d2, b2) {
            return Some((d1, d2));
        }
    }
    None
}

/// Weak Riesz Decomposition Property: every `a ≤ b₁ + b₂` splits.
pub fn check_rdp0(e: &PseudoEffectAlgebra) -> PropertyVerdict {
    for &(b1, b2, c) in e.triples() {
        for a in e.below(c).iter().map(|i| Elem(i as u32)) {
            if rdp0_instance(e, a, b1, b2).is_none() {
                return PropertyVerdict::fails(
                    RieszProperty::Rdp0,
                    RieszWitness::Rdp0 { a, b1, b2 },
                );
            }
        }
    }
    PropertyVerdict::holds(RieszProperty::Rdp0)
}

/// Which side condition a refinement must additionally satisfy.
#[derive(Copy, Clone, PartialEq, Eq)]
enum RefinementKind {
    Plain,
    Commuting,
    Disjoint,
}

/// `d₂ ∧ d₃ = 0` read as: no nonzero common lower bound. Equivalent to the
/// meet condition when the meet exists, conservative when it does not.
fn disjoint(e: &PseudoEffectAlgebra, x: Elem, y: Elem) -> bool {
    let common = e.below(x).intersection(e.below(y));
    common.count() == 1
}

fn refinement_instance(
    e: &PseudoEffectAlgebra,
    tables: Option<&ComTables>,
    kind: RefinementKind,
    a1: Elem,
    a2: Elem,
    b1: Elem,
    b2: Elem,
) -> Option<[Elem; 4]> {
    let candidates = e.below(a1).intersection(e.below(b1));
    for d1 in candidates.iter().map(|i| Elem(i as u32)) {
        let d2 = e.right_diff(d1, a1).expect("d1 ≤ a1");
        let d3 = e.right_diff(d1, b1).expect("d1 ≤ b1");
        if !e.leq(d3, a2) {
            continue;
        }
        let d4 = e.right_diff(d3, a2).expect("d3 ≤ a2");
        if e.sum(d2, d4) != Some(b2) {
            continue;
        }
        let side_ok = match kind {
            RefinementKind::Plain => true,
            RefinementKind::Commuting => tables.expect("tables required").com(d2, d3),
            RefinementKind::Disjoint => disjoint(e, d2, d3),
        };
        if side_ok {
            return Some([d1, d2, d3, d4]);
        }
    }
    None
}

/// Refinement for one RDP instance.
pub fn rdp_instance(
    e: &PseudoEffectAlgebra,
    a1: Elem,
    a2: Elem,
    b1: Elem,
    b2: Elem,
) -> Option<[Elem; 4]> {
    refinement_instance(e, None, RefinementKind::Plain, a1, a2, b1, b2)
}

fn check_refinement(
    e: &PseudoEffectAlgebra,
    property: RieszProperty,
    kind: RefinementKind,
) -> PropertyVerdict {
    let tables = match kind {
        RefinementKind::Commuting => Some(ComTables::new(e)),
        _ => None,
    };
    // Group the defined sums by their value.
    let mut by_sum: Vec<Vec<(Elem, Elem)>> = vec![Vec::new(); e.n()];
    for &(a, b, c) in e.triples() {
        by_sum[c.idx()].push((a, b));
    }
    for pairs in &by_sum {
        for &(a1, a2) in pairs {
            for &(b1, b2) in pairs {
                if refinement_instance(e, tables.as_ref(), kind, a1, a2, b1, b2).is_none() {
                    return PropertyVerdict::fails(
                        property,
                        RieszWitness::Refinement { a1, a2, b1, b2 },
                    );
                }
            }
        }
    }
    PropertyVerdict::holds(property)
}

/// Riesz Decomposition Property: every pair of 2-term sums with equal
/// value has a common refinement.
pub fn check_rdp(e: &PseudoEffectAlgebra) -> PropertyVerdict {
    check_refinement(e, RieszProperty::Rdp, RefinementKind::Plain)
}

/// RDP with commuting cross terms `d₂ com d₃`.
pub fn check_rdp1(e: &PseudoEffectAlgebra) -> PropertyVerdict {
    check_refinement(e, RieszProperty::Rdp1, RefinementKind::Commuting)
}

/// RDP with disjoint cross terms `d₂ ∧ d₃ = 0`.
pub fn check_rdp2(e: &PseudoEffectAlgebra) -> PropertyVerdict {
    check_refinement(e, RieszProperty::Rdp2, RefinementKind::Disjoint)
}

/// The six verdicts in hierarchy order, with the implication chain
/// `RDP₂ ⇒ RDP₁ ⇒ RDP ⇒ RDP₀ ⇒ RIP` asserted on the computed values.
#[derive(Clone, Debug, Serialize)]
pub struct RdpProfile {
    pub com: PropertyVerdict,
    pub rip: PropertyVerdict,
    pub rdp0: PropertyVerdict,
    pub rdp: PropertyVerdict,
    pub rdp1: PropertyVerdict,
    pub rdp2: PropertyVerdict,
}

impl RdpProfile {
    pub fn verdicts(&self) -> [&PropertyVerdict; 6] {
        [&self.com, &self.rip, &self.rdp0, &self.rdp, &self.rdp1, &self.rdp2]
    }
}

pub fn rdp_profile(e: &PseudoEffectAlgebra) -> Result<RdpProfile, RieszError> {
    let profile = RdpProfile {
        com: check_com_all(e),
        rip: check_rip(e),
        rdp0: check_rdp0(e),
        rdp: check_rdp(e),
        rdp1: check_rdp1(e),
        rdp2: check_rdp2(e),
    };
    let chain = [
        (&profile.rdp2, &profile.rdp1),
        (&profile.rdp1, &profile.rdp),
        (&profile.rdp, &profile.rdp0),
        (&profile.rdp0, &profile.rip),
    ];
    for (stronger, weaker) in chain {
        if stronger.holds && !weaker.holds {
            return Err(RieszError::ImplicationChainBroken(format!(
                "{} holds but {} fails",
                stronger.property, weaker.property
            )));
        }
    }
    Ok(profile)
}
