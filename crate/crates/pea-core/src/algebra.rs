//! Finite pseudo effect algebras as validated partial-addition tables.
//!
//! A pseudo effect algebra is a partial algebra `(E; +, 0, 1)` satisfying,
//! for all `a, b, c`:
//!
//! 1. `a+b` and `(a+b)+c` exist iff `b+c` and `a+(b+c)` exist, and then
//!    `(a+b)+c = a+(b+c)`;
//! 2. for each `a` there is exactly one `d` and exactly one `e` with
//!    `a+d = e+a = 1`;
//! 3. if `a+b` exists there are `d, e` with `a+b = d+a = b+e`;
//! 4. if `1+a` or `a+1` exists then `a = 0`.
//!
//! [`PseudoEffectAlgebra::build`] checks all four axioms exhaustively over
//! the table and precomputes the induced order `a ≤ b ⟺ ∃c: a+c = b`,
//! the left/right differences, and the two complements. Addition is *not*
//! assumed commutative anywhere; `a+b` and `b+a` are independent table
//! entries.
//!
//! Algebras are immutable after validation and all operations here are
//! pure, so shared read access is safe.

use crate::bitset::BitSet;
use crate::format;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

const NONE: u32 = u32::MAX;

/// Elements above this count make the `O(|E|^3)` exhaustive validation and
/// the decomposition scans impractical.
pub const MAX_ELEMENTS: usize = 4096;

/// Index of an element in its algebra's carrier.
#[derive(
    Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, serde::Serialize, serde::Deserialize,
)]
pub struct Elem(pub u32);

impl Elem {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// The four defining axioms.
#[derive(Copy, Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub enum Axiom {
    Associativity,
    UniqueComplements,
    SumConjugates,
    UnitMaximality,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Associativity => "(i)",
            Axiom::UniqueComplements => "(ii)",
            Axiom::SumConjugates => "(iii)",
            Axiom::UnitMaximality => "(iv)",
        };
        f.write_str(s)
    }
}

/// One failed axiom instance, with the elements witnessing the failure.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
    pub detail: String,
}

/// Every violated axiom instance found during an exhaustive check.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "axiom {}: {} [{}]", v.axiom, v.detail, v.witness.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Error, Debug)]
pub enum AlgebraError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid label `{0}`: labels are non-empty, whitespace-free, and not `+`, `=`, or `#...`")]
    InvalidLabel(String),
    #[error("conflicting triples: {a} + {b} = {c1} and {a} + {b} = {c2}")]
    ConflictingTriple { a: String, b: String, c1: String, c2: String },
    #[error("axiom violations:\n{0}")]
    Axioms(ValidationReport),
    #[error("size limit exceeded: {got} elements, limit {limit}")]
    SizeLimitExceeded { got: usize, limit: usize },
    #[error("the po-group interval [0, u] is infinite")]
    IntervalInfinite,
    #[error("unit {0} is not a strong unit for the chosen order")]
    UnitNotStrong(String),
    #[error("unknown zoo name `{0}`")]
    UnknownZooName(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// A finite pseudo effect algebra, validated and with derived structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PseudoEffectAlgebra {
    labels: Vec<String>,
    index: BTreeMap<String, Elem>,
    zero: Elem,
    one: Elem,
    sum: Vec<u32>,
    triples: Vec<(Elem, Elem, Elem)>,
    below: Vec<BitSet>,
    above: Vec<BitSet>,
    right_diff: Vec<u32>,
    left_diff: Vec<u32>,
    compl_left: Vec<Elem>,
    compl_right: Vec<Elem>,
    commutative: bool,
    hash: String,
}

impl PseudoEffectAlgebra {
    /// Validate a labelled table and derive the order structure.
    ///
    /// On axiom failure the error carries a report listing every violated
    /// axiom instance together with its witnessing elements.
    pub fn build(
        labels: Vec<String>,
        zero: &str,
        one: &str,
        triples: &[(String, String, String)],
    ) -> Result<Self, AlgebraError> {
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) || l == "+" || l == "=" || l.starts_with('#') {
                return Err(AlgebraError::InvalidLabel(l.clone()));
            }
            if index.insert(l.clone(), Elem(i as u32)).is_some() {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        let resolve = |l: &str| -> Result<Elem, AlgebraError> {
            index.get(l).copied().ok_or_else(|| AlgebraError::UnknownLabel(l.to_string()))
        };
        let zero = resolve(zero)?;
        let one = resolve(one)?;
        let idx_triples: Vec<(Elem, Elem, Elem)> = triples
            .iter()
            .map(|(a, b, c)| Ok((resolve(a)?, resolve(b)?, resolve(c)?)))
            .collect::<Result<_, AlgebraError>>()?;
        Self::build_indexed(labels, zero, one, idx_triples)
    }

    /// Validate a table given by element indices. Used by the zoo
    /// constructions; runs the same exhaustive checks as [`Self::build`].
    pub fn build_indexed(
        labels: Vec<String>,
        zero: Elem,
        one: Elem,
        idx_triples: Vec<(Elem, Elem, Elem)>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(AlgebraError::SizeLimitExceeded { got: n, limit: MAX_ELEMENTS });
        }
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            index.insert(l.clone(), Elem(i as u32));
        }

        let mut sum = vec![NONE; n * n];
        for &(a, b, c) in &idx_triples {
            let slot = &mut sum[a.idx() * n + b.idx()];
            if *slot != NONE && *slot != c.0 {
                return Err(AlgebraError::ConflictingTriple {
                    a: labels[a.idx()].clone(),
                    b: labels[b.idx()].clone(),
                    c1: labels[*slot as usize].clone(),
                    c2: labels[c.idx()].clone(),
                });
            }
            *slot = c.0;
        }
        let mut triples: Vec<(Elem, Elem, Elem)> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = sum[a * n + b];
                if c != NONE {
                    triples.push((Elem(a as u32), Elem(b as u32), Elem(c)));
                }
            }
        }

        let report = check_axioms(n, &sum, &triples, zero, one, &labels);
        if !report.is_valid() {
            return Err(AlgebraError::Axioms(report));
        }

        // Derived order: a ≤ b via a right-addition witness a + c = b.
        // With axiom (iii) verified, the left-addition characterization
        // d + a = b yields the same relation; both are computed and must
        // agree exactly.
        let mut below_r = vec![BitSet::new(n); n];
        let mut below_l = vec![BitSet::new(n); n];
        let mut above = vec![BitSet::new(n); n];
        for &(a, b, c) in &triples {
            below_r[c.idx()].insert(a.idx());
            below_l[c.idx()].insert(b.idx());
        }
        if below_r != below_l {
            return Err(AlgebraError::Internal(
                "order characterizations disagree despite valid axioms".into(),
            ));
        }
        let below = below_r;
        for b in 0..n {
            for a in below[b].iter() {
                above[a].insert(b);
            }
        }

        // ≤ is a partial order with 0 ≤ a ≤ 1; consequences of the axioms,
        // re-checked so that any internal slip surfaces loudly.
        for a in 0..n {
            if !below[a].contains(a) || !below[a].contains(zero.idx()) || !above[a].contains(one.idx()) {
                return Err(AlgebraError::Internal(format!(
                    "order is not reflexive/bounded at `{}`",
                    labels[a]
                )));
            }
            for b in above[a].iter() {
                if a != b && below[a].contains(b) {
                    return Err(AlgebraError::Internal(format!(
                        "order is not antisymmetric on `{}`, `{}`",
                        labels[a], labels[b]
                    )));
                }
                if !above[b].is_subset_of(&above[a]) {
                    return Err(AlgebraError::Internal(format!(
                        "order is not transitive above `{}`, `{}`",
                        labels[a], labels[b]
                    )));
                }
            }
        }

        // Differences: a + (a ∖ᵣ b) = b and (b ∖ₗ a) + a = b for a ≤ b.
        // Uniqueness is cancellativity, a consequence of the axioms.
        let mut right_diff = vec![NONE; n * n];
        let mut left_diff = vec![NONE; n * n];
        for &(a, b, c) in &triples {
            let r = &mut right_diff[a.idx() * n + c.idx()];
            if *r != NONE && *r != b.0 {
                return Err(AlgebraError::Internal(format!(
                    "cancellativity fails: {} + x = {} has two solutions",
                    labels[a.idx()],
                    labels[c.idx()]
                )));
            }
            *r = b.0;
            let l = &mut left_diff[b.idx() * n + c.idx()];
            if *l != NONE && *l != a.0 {
                return Err(AlgebraError::Internal(format!(
                    "cancellativity fails: x + {} = {} has two solutions",
                    labels[b.idx()],
                    labels[c.idx()]
                )));
            }
            *l = a.0;
        }

        let mut compl_left = Vec::with_capacity(n);
        let mut compl_right = Vec::with_capacity(n);
        for a in 0..n {
            let l = left_diff[a * n + one.idx()];
            let r = right_diff[a * n + one.idx()];
            if l == NONE || r == NONE {
                return Err(AlgebraError::Internal(format!(
                    "missing complement for `{}` despite axiom (ii)",
                    labels[a]
                )));
            }
            compl_left.push(Elem(l));
            compl_right.push(Elem(r));
        }

        let commutative = (0..n).all(|a| (0..n).all(|b| sum[a * n + b] == sum[b * n + a]));

        let hash = format::content_hash(&format::canonical_text(
            &labels,
            &labels[zero.idx()],
            &labels[one.idx()],
            &triples
                .iter()
                .map(|&(a, b, c)| {
                    (
                        labels[a.idx()].clone(),
                        labels[b.idx()].clone(),
                        labels[c.idx()].clone(),
                    )
                })
                .collect::<Vec<_>>(),
        ));

        Ok(PseudoEffectAlgebra {
            labels,
            index,
            zero,
            one,
            sum,
            triples,
            below,
            above,
            right_diff,
            left_diff,
            compl_left,
            compl_right,
            commutative,
            hash,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.labels.len() as u32).map(Elem)
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.idx()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.index.get(label).copied()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    /// The partial sum `a + b`, if defined.
    pub fn sum(&self, a: Elem, b: Elem) -> Option<Elem> {
        let v = self.sum[a.idx() * self.n() + b.idx()];
        (v != NONE).then_some(Elem(v))
    }

    /// All defined sums `(a, b, a+b)`, sorted by `(a, b)` index.
    pub fn triples(&self) -> &[(Elem, Elem, Elem)] {
        &self.triples
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.below[b.idx()].contains(a.idx())
    }

    /// `{ x : x ≤ a }` as a bit set over element indices.
    pub fn below(&self, a: Elem) -> &BitSet {
        &self.below[a.idx()]
    }

    /// `{ x : a ≤ x }` as a bit set over element indices.
    pub fn above(&self, a: Elem) -> &BitSet {
        &self.above[a.idx()]
    }

    /// `a ∖ᵣ b`: the unique `c` with `a + c = b`, defined when `a ≤ b`.
    pub fn right_diff(&self, a: Elem, b: Elem) -> Option<Elem> {
        let v = self.right_diff[a.idx() * self.n() + b.idx()];
        (v != NONE).then_some(Elem(v))
    }

    /// `b ∖ₗ a`: the unique `d` with `d + a = b`, defined when `a ≤ b`.
    pub fn left_diff(&self, a: Elem, b: Elem) -> Option<Elem> {
        let v = self.left_diff[a.idx() * self.n() + b.idx()];
        (v != NONE).then_some(Elem(v))
    }

    /// `a⁻`, the unique element with `a⁻ + a = 1`.
    pub fn complement_left(&self, a: Elem) -> Elem {
        self.compl_left[a.idx()]
    }

    /// `a∼`, the unique element with `a + a∼ = 1`.
    pub fn complement_right(&self, a: Elem) -> Elem {
        self.compl_right[a.idx()]
    }

    /// Greatest lower bound in `(E, ≤)` when it exists.
    ///
    /// No lattice structure is assumed: the set of common lower bounds is
    /// scanned exhaustively for a maximum.
    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        let bounds = self.below[a.idx()].intersection(&self.below[b.idx()]);
        for m in bounds.iter() {
            if bounds.is_subset_of(&self.below[m]) {
                return Some(Elem(m as u32));
            }
        }
        None
    }

    /// Least upper bound in `(E, ≤)` when it exists.
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        let bounds = self.above[a.idx()].intersection(&self.above[b.idx()]);
        for m in bounds.iter() {
            if bounds.is_subset_of(&self.above[m]) {
                return Some(Elem(m as u32));
            }
        }
        None
    }

    /// Whether the table is symmetric, i.e. the algebra is an effect algebra.
    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// SHA-256 of the canonical export; identifies the algebra in measure
    /// files and reports.
    pub fn content_hash(&self) -> &str {
        &self.hash
    }
}

fn check_axioms(
    n: usize,
    sum: &[u32],
    triples: &[(Elem, Elem, Elem)],
    zero: Elem,
    one: Elem,
    labels: &[String],
) -> ValidationReport {
    let at = |a: usize, b: usize| -> Option<usize> {
        let v = sum[a * n + b];
        (v != NONE).then_some(v as usize)
    };
    let mut report = ValidationReport::default();
    let mut violation = |axiom: Axiom, witness: &[usize], detail: String| {
        report.violations.push(AxiomViolation {
            axiom,
            witness: witness.iter().map(|&i| labels[i].clone()).collect(),
            detail,
        });
    };

    // (i), both directions, all |E|^3 triples.
    for a in 0..n {
        for b in 0..n {
            let ab = at(a, b);
            for c in 0..n {
                let bc = at(b, c);
                let left = ab.and_then(|ab| at(ab, c));
                let right = bc.and_then(|bc| at(a, bc));
                match (left, right) {
                    (Some(l), Some(r)) => {
                        if l != r {
                            violation(
                                Axiom::Associativity,
                                &[a, b, c],
                                format!("(a+b)+c = {} but a+(b+c) = {}", labels[l], labels[r]),
                            );
                        }
                    }
                    (Some(_), None) => violation(
                        Axiom::Associativity,
                        &[a, b, c],
                        "(a+b)+c exists but a+(b+c) does not".into(),
                    ),
                    (None, Some(_)) => violation(
                        Axiom::Associativity,
                        &[a, b, c],
                        "a+(b+c) exists but (a+b)+c does not".into(),
                    ),
                    (None, None) => {}
                }
            }
        }
    }

    // (ii): exactly one right and one left complement.
    for a in 0..n {
        let rights = (0..n).filter(|&d| at(a, d) == Some(one.idx())).count();
        let lefts = (0..n).filter(|&e| at(e, a) == Some(one.idx())).count();
        if rights != 1 {
            violation(
                Axiom::UniqueComplements,
                &[a],
                format!("{rights} elements d satisfy a+d = 1 (need exactly 1)"),
            );
        }
        if lefts != 1 {
            violation(
                Axiom::UniqueComplements,
                &[a],
                format!("{lefts} elements e satisfy e+a = 1 (need exactly 1)"),
            );
        }
    }

    // (iii): every defined sum a+b equals d+a and b+e for some d, e.
    for &(a, b, v) in triples {
        let has_d = (0..n).any(|d| at(d, a.idx()) == Some(v.idx()));
        let has_e = (0..n).any(|e| at(b.idx(), e) == Some(v.idx()));
        if !has_d || !has_e {
            violation(
                Axiom::SumConjugates,
                &[a.idx(), b.idx()],
                format!(
                    "a+b = {} but {}",
                    labels[v.idx()],
                    match (has_d, has_e) {
                        (false, false) => "no d with d+a = a+b and no e with b+e = a+b",
                        (false, true) => "no d with d+a = a+b",
                        _ => "no e with b+e = a+b",
                    }
                ),
            );
        }
    }

    // (iv): 1+a or a+1 defined forces a = 0.
    for a in 0..n {
        if a != zero.idx() && (at(one.idx(), a).is_some() || at(a, one.idx()).is_some()) {
            violation(Axiom::UnitMaximality, &[a], "1+a or a+1 is defined for a ≠ 0".into());
        }
    }

    report
}
