//! Standard examples: Boolean algebras, chains, po-group intervals, the
//! diamond, horizontal sums, and products.
//!
//! Every construction returns a table that has passed the full exhaustive
//! validation of [`PseudoEffectAlgebra::build_indexed`]; nothing here is
//! trusted by construction.

use crate::algebra::{AlgebraError, Elem, PseudoEffectAlgebra, MAX_ELEMENTS};
use std::fmt;
use std::str::FromStr;

/// Order on the ambient group `ℤᵏ`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum GroupOrder {
    Coordinatewise,
    Lexicographic,
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupOrder::Coordinatewise => "coordinatewise",
            GroupOrder::Lexicographic => "lexicographic",
        })
    }
}

/// A unital po-group `(ℤᵏ, u)` from which the interval `[0, u]` is cut.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoGroupSpec {
    pub order: GroupOrder,
    pub unit: Vec<i64>,
}

impl PoGroupSpec {
    pub fn rank(&self) -> usize {
        self.unit.len()
    }

    fn positive(&self, v: &[i64]) -> bool {
        match self.order {
            GroupOrder::Coordinatewise => v.iter().all(|&x| x >= 0),
            GroupOrder::Lexicographic => match v.iter().find(|&&x| x != 0) {
                None => true,
                Some(&x) => x > 0,
            },
        }
    }

    /// `u` must be positive, nonzero, and a strong unit; the interval must
    /// be finite. For the lexicographic order a strong unit needs a
    /// positive leading coordinate, which makes `[0, u]` infinite as soon
    /// as the rank exceeds 1.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let u = &self.unit;
        let fmt_u = || format!("({})", u.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
        if u.is_empty() || !self.positive(u) || u.iter().all(|&x| x == 0) {
            return Err(AlgebraError::UnitNotStrong(fmt_u()));
        }
        match self.order {
            GroupOrder::Coordinatewise => {
                if u.iter().any(|&x| x < 1) {
                    return Err(AlgebraError::UnitNotStrong(fmt_u()));
                }
            }
            GroupOrder::Lexicographic => {
                if u[0] < 1 {
                    return Err(AlgebraError::UnitNotStrong(fmt_u()));
                }
                if u.len() > 1 {
                    return Err(AlgebraError::IntervalInfinite);
                }
            }
        }
        Ok(())
    }
}

/// A zoo entry, possibly nested (sums and products take sub-specs).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ZooSpec {
    Boolean(u32),
    Chain(u32),
    Diamond,
    Interval(PoGroupSpec),
    HorizontalSum(Box<ZooSpec>, Box<ZooSpec>),
    Product(Box<ZooSpec>, Box<ZooSpec>),
}

impl fmt::Display for ZooSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooSpec::Boolean(n) => write!(f, "boolean({n})"),
            ZooSpec::Chain(n) => write!(f, "chain({n})"),
            ZooSpec::Diamond => write!(f, "diamond"),
            ZooSpec::Interval(s) => write!(
                f,
                "interval({};{})",
                s.order,
                s.unit.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
            ),
            ZooSpec::HorizontalSum(a, b) => write!(f, "horizontal_sum({a},{b})"),
            ZooSpec::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

impl FromStr for ZooSpec {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, AlgebraError> {
        let s = s.trim();
        let unknown = || AlgebraError::UnknownZooName(s.to_string());
        if s == "diamond" {
            return Ok(ZooSpec::Diamond);
        }
        let open = s.find('(').ok_or_else(unknown)?;
        if !s.ends_with(')') {
            return Err(unknown());
        }
        let name = &s[..open];
        let args = &s[open + 1..s.len() - 1];
        match name {
            "boolean" | "chain" => {
                let n: u32 = args.trim().parse().map_err(|_| unknown())?;
                Ok(if name == "boolean" { ZooSpec::Boolean(n) } else { ZooSpec::Chain(n) })
            }
            "interval" => {
                let (order, unit) = args.split_once(';').ok_or_else(unknown)?;
                let order = match order.trim() {
                    "coordinatewise" => GroupOrder::Coordinatewise,
                    "lexicographic" => GroupOrder::Lexicographic,
                    _ => return Err(unknown()),
                };
                let unit: Vec<i64> = unit
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| unknown()))
                    .collect::<Result<_, _>>()?;
                Ok(ZooSpec::Interval(PoGroupSpec { order, unit }))
            }
            "horizontal_sum" | "product" => {
                let (left, right) = split_top_level(args).ok_or_else(unknown)?;
                let l = Box::new(left.parse()?);
                let r = Box::new(right.parse()?);
                Ok(if name == "product" {
                    ZooSpec::Product(l, r)
                } else {
                    ZooSpec::HorizontalSum(l, r)
                })
            }
            _ => Err(unknown()),
        }
    }
}

/// Split `a,b` at the comma not nested inside parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Build the algebra named by a zoo spec.
pub fn build(spec: &ZooSpec) -> Result<PseudoEffectAlgebra, AlgebraError> {
    match spec {
        ZooSpec::Boolean(n) => boolean(*n),
        ZooSpec::Chain(n) => chain(*n),
        ZooSpec::Diamond => diamond(),
        ZooSpec::Interval(s) => interval_algebra(s),
        ZooSpec::HorizontalSum(a, b) => {
            let (a, b) = (build(a)?, build(b)?);
            horizontal_sum(&a, &b)
        }
        ZooSpec::Product(a, b) => {
            let (a, b) = (build(a)?, build(b)?);
            product(&a, &b)
        }
    }
}

fn guard(size: usize) -> Result<(), AlgebraError> {
    if size > MAX_ELEMENTS {
        return Err(AlgebraError::SizeLimitExceeded { got: size, limit: MAX_ELEMENTS });
    }
    Ok(())
}

/// Power set of `n` atoms; `a + b` defined iff the subsets are disjoint.
pub fn boolean(n: u32) -> Result<PseudoEffectAlgebra, AlgebraError> {
    if n > 12 {
        return Err(AlgebraError::SizeLimitExceeded { got: 1usize << n, limit: MAX_ELEMENTS });
    }
    let count = 1usize << n;
    guard(count)?;
    let full = count - 1;
    let label = |mask: usize| -> String {
        if mask == 0 {
            "0".to_string()
        } else if mask == full {
            "1".to_string()
        } else {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| format!("a{}", i + 1))
                .collect()
        }
    };
    let labels: Vec<String> = (0..count).map(label).collect();
    let mut triples = Vec::new();
    for s in 0..count {
        for t in 0..count {
            if s & t == 0 {
                triples.push((Elem(s as u32), Elem(t as u32), Elem((s | t) as u32)));
            }
        }
    }
    PseudoEffectAlgebra::build_indexed(labels, Elem(0), Elem(full as u32), triples)
}

/// `{0, 1, …, n}` with `i + j` defined iff `i + j ≤ n`.
pub fn chain(n: u32) -> Result<PseudoEffectAlgebra, AlgebraError> {
    guard(n as usize + 1)?;
    let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut triples = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            triples.push((Elem(i), Elem(j), Elem(i + j)));
        }
    }
    PseudoEffectAlgebra::build_indexed(labels, Elem(0), Elem(n), triples)
}

/// `{0, a, a', b, b', 1}` with `a + a' = a' + a = 1`, `b + b' = b' + b = 1`.
pub fn diamond() -> Result<PseudoEffectAlgebra, AlgebraError> {
    let labels: Vec<String> = ["0", "a", "a'", "b", "b'", "1"].map(String::from).to_vec();
    let mut triples = Vec::new();
    for i in 0..6u32 {
        triples.push((Elem(0), Elem(i), Elem(i)));
        if i != 0 {
            triples.push((Elem(i), Elem(0), Elem(i)));
        }
    }
    for (x, y) in [(1u32, 2u32), (2, 1), (3, 4), (4, 3)] {
        triples.push((Elem(x), Elem(y), Elem(5)));
    }
    PseudoEffectAlgebra::build_indexed(labels, Elem(0), Elem(5), triples)
}

/// Lattice points of `[0, u]` in `ℤᵏ` with the restricted group addition:
/// `x + y` is defined iff `x ≤ u − y` in the chosen order.
pub fn interval_algebra(spec: &PoGroupSpec) -> Result<PseudoEffectAlgebra, AlgebraError> {
    spec.validate()?;
    let u = &spec.unit;
    let size: usize = u
        .iter()
        .try_fold(1usize, |acc, &c| acc.checked_mul(c as usize + 1))
        .ok_or(AlgebraError::SizeLimitExceeded { got: usize::MAX, limit: MAX_ELEMENTS })?;
    guard(size)?;

    let mut points: Vec<Vec<i64>> = vec![Vec::new()];
    for &c in u {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=c).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let label = |p: &[i64]| -> String {
        if p.len() == 1 {
            p[0].to_string()
        } else {
            format!("({})", p.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        }
    };
    let labels: Vec<String> = points.iter().map(|p| label(p)).collect();
    let index_of = |p: &[i64]| -> Option<usize> { points.iter().position(|q| q == p) };

    let mut triples = Vec::new();
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            let slack: Vec<i64> = u.iter().zip(&sum).map(|(a, b)| a - b).collect();
            if spec.positive(&slack) {
                let k = index_of(&sum).ok_or_else(|| {
                    AlgebraError::Internal("interval sum left the carrier".into())
                })?;
                triples.push((Elem(i as u32), Elem(j as u32), Elem(k as u32)));
            }
        }
    }
    let zero = index_of(&vec![0; u.len()]).expect("origin is in [0, u]");
    let one = index_of(u).expect("u is in [0, u]");
    PseudoEffectAlgebra::build_indexed(labels, Elem(zero as u32), Elem(one as u32), triples)
}

/// Glue two algebras at `{0, 1}`; no sums across the two summands.
pub fn horizontal_sum(
    a: &PseudoEffectAlgebra,
    b: &PseudoEffectAlgebra,
) -> Result<PseudoEffectAlgebra, AlgebraError> {
    if a.zero() == a.one() || b.zero() == b.one() {
        return Err(AlgebraError::Internal(
            "horizontal sum requires 0 ≠ 1 in both summands".into(),
        ));
    }
    let size = 2 + (a.n() - 2) + (b.n() - 2);
    guard(size)?;

    let mut labels = vec!["0".to_string(), "1".to_string()];
    // Maps from summand elements to glued indices.
    let build_map = |e: &PseudoEffectAlgebra, prefix: &str, labels: &mut Vec<String>| {
        let mut map = vec![0u32; e.n()];
        for x in e.elements() {
            map[x.idx()] = if x == e.zero() {
                0
            } else if x == e.one() {
                1
            } else {
                labels.push(format!("{prefix}{}", e.label(x)));
                (labels.len() - 1) as u32
            };
        }
        map
    };
    let map_a = build_map(a, "l.", &mut labels);
    let map_b = build_map(b, "r.", &mut labels);

    let mut triples = Vec::new();
    for (e, map) in [(a, &map_a), (b, &map_b)] {
        for &(x, y, z) in e.triples() {
            triples.push((
                Elem(map[x.idx()]),
                Elem(map[y.idx()]),
                Elem(map[z.idx()]),
            ));
        }
    }
    triples.sort();
    triples.dedup();
    PseudoEffectAlgebra::build_indexed(labels, Elem(0), Elem(1), triples)
}

/// Coordinatewise product; `(a₁,b₁) + (a₂,b₂)` defined iff both components
/// are.
pub fn product(
    a: &PseudoEffectAlgebra,
    b: &PseudoEffectAlgebra,
) -> Result<PseudoEffectAlgebra, AlgebraError> {
    let size = a.n() * b.n();
    guard(size)?;
    let index = |x: Elem, y: Elem| Elem((x.idx() * b.n() + y.idx()) as u32);
    let mut labels = Vec::with_capacity(size);
    for x in a.elements() {
        for y in b.elements() {
            labels.push(format!("({},{})", a.label(x), b.label(y)));
        }
    }
    let mut triples = Vec::new();
    for &(xa, ya, za) in a.triples() {
        for &(xb, yb, zb) in b.triples() {
            triples.push((index(xa, xb), index(ya, yb), index(za, zb)));
        }
    }
    PseudoEffectAlgebra::build_indexed(
        labels,
        index(a.zero(), b.zero()),
        index(a.one(), b.one()),
        triples,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format;

    /// Brute-force isomorphism search fixing 0 ↦ 0 and 1 ↦ 1.
    fn isomorphic(x: &PseudoEffectAlgebra, y: &PseudoEffectAlgebra) -> bool {
        if x.n() != y.n() {
            return false;
        }
        let n = x.n();
        let mut perm: Vec<Option<Elem>> = vec![None; n];
        let mut used = vec![false; n];
        perm[x.zero().idx()] = Some(y.zero());
        used[y.zero().idx()] = true;
        if x.one() != x.zero() {
            perm[x.one().idx()] = Some(y.one());
            used[y.one().idx()] = true;
        }
        fn extend(
            x: &PseudoEffectAlgebra,
            y: &PseudoEffectAlgebra,
            perm: &mut Vec<Option<Elem>>,
            used: &mut Vec<bool>,
        ) -> bool {
            let Some(next) = perm.iter().position(Option::is_none) else {
                // Complete assignment: check the whole table both ways.
                return x.elements().all(|a| {
                    x.elements().all(|b| {
                        let mapped = x.sum(a, b).map(|c| perm[c.idx()].unwrap());
                        mapped == y.sum(perm[a.idx()].unwrap(), perm[b.idx()].unwrap())
                    })
                });
            };
            for cand in 0..perm.len() {
                if used[cand] {
                    continue;
                }
                perm[next] = Some(Elem(cand as u32));
                used[cand] = true;
                if extend(x, y, perm, used) {
                    return true;
                }
                perm[next] = None;
                used[cand] = false;
            }
            false
        }
        extend(x, y, &mut perm, &mut used)
    }

    #[test]
    fn boolean_sizes_and_validity() {
        for n in 0..=5u32 {
            let e = boolean(n).unwrap();
            assert_eq!(e.n(), 1 << n);
            assert!(e.is_commutative());
        }
        assert!(matches!(
            boolean(13),
            Err(AlgebraError::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn interval_of_z_equals_chain_exactly() {
        for n in 1..=6 {
            let spec = PoGroupSpec { order: GroupOrder::Coordinatewise, unit: vec![n] };
            let i = interval_algebra(&spec).unwrap();
            let c = chain(n as u32).unwrap();
            assert_eq!(format::export_algebra(&i), format::export_algebra(&c));
        }
    }

    #[test]
    fn interval_all_ones_is_boolean() {
        for n in 2..=3usize {
            let spec = PoGroupSpec { order: GroupOrder::Coordinatewise, unit: vec![1; n] };
            let i = interval_algebra(&spec).unwrap();
            let b = boolean(n as u32).unwrap();
            assert!(isomorphic(&i, &b));
        }
    }

    #[test]
    fn interval_2_1_has_six_elements() {
        let spec = PoGroupSpec { order: GroupOrder::Coordinatewise, unit: vec![2, 1] };
        let e = interval_algebra(&spec).unwrap();
        assert_eq!(e.n(), 6);
        assert!(isomorphic(&e, &product(&chain(2).unwrap(), &chain(1).unwrap()).unwrap()));
    }

    #[test]
    fn lexicographic_is_rank_one_only() {
        let ok = PoGroupSpec { order: GroupOrder::Lexicographic, unit: vec![3] };
        let e = interval_algebra(&ok).unwrap();
        assert_eq!(format::export_algebra(&e), format::export_algebra(&chain(3).unwrap()));

        let infinite = PoGroupSpec { order: GroupOrder::Lexicographic, unit: vec![1, 2] };
        assert!(matches!(
            interval_algebra(&infinite),
            Err(AlgebraError::IntervalInfinite)
        ));
        let weak = PoGroupSpec { order: GroupOrder::Lexicographic, unit: vec![0, 2] };
        assert!(matches!(
            interval_algebra(&weak),
            Err(AlgebraError::UnitNotStrong(_))
        ));
        let not_unit = PoGroupSpec { order: GroupOrder::Coordinatewise, unit: vec![2, 0] };
        assert!(matches!(
            interval_algebra(&not_unit),
            Err(AlgebraError::UnitNotStrong(_))
        ));
    }

    #[test]
    fn horizontal_sum_of_two_chains() {
        let c = chain(2).unwrap();
        let e = horizontal_sum(&c, &c).unwrap();
        assert_eq!(e.n(), 4);
        let l = e.elem("l.1").unwrap();
        let r = e.elem("r.1").unwrap();
        assert_eq!(e.sum(l, l), Some(e.one()));
        assert_eq!(e.sum(r, r), Some(e.one()));
        assert_eq!(e.sum(l, r), None);
    }

    #[test]
    fn diamond_is_horizontal_sum_of_squares() {
        let sq = boolean(2).unwrap();
        let hs = horizontal_sum(&sq, &sq).unwrap();
        assert!(isomorphic(&hs, &diamond().unwrap()));

        let trivial = boolean(0).unwrap();
        assert!(horizontal_sum(&trivial, &sq).is_err());
    }

    #[test]
    fn product_sizes() {
        let c = chain(2).unwrap();
        let p = product(&c, &c).unwrap();
        assert_eq!(p.n(), 9);
        assert!(p.is_commutative());
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "boolean(3)",
            "chain(12)",
            "diamond",
            "interval(coordinatewise;2,1)",
            "product(chain(2),boolean(2))",
            "horizontal_sum(chain(2),product(chain(2),chain(2)))",
        ] {
            let spec: ZooSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            build(&spec).unwrap();
        }
        assert!(matches!(
            "moebius(3)".parse::<ZooSpec>(),
            Err(AlgebraError::UnknownZooName(_))
        ));
    }

    #[test]
    fn rebuild_from_export_is_identical() {
        for spec in ["boolean(3)", "chain(5)", "diamond", "horizontal_sum(chain(2),chain(2))"] {
            let e = build(&spec.parse().unwrap()).unwrap();
            let text = format::export_algebra(&e);
            let rebuilt = format::parse_algebra(&text).unwrap();
            assert_eq!(e, rebuilt);
        }
    }
}
