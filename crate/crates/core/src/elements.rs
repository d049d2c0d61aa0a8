//! Rational odd-order semisimple elements of `SL_n`, `Sp_2n` and
//! `Spin_{2n+1}`, identified by their diagonal Jordan form on the natural
//! module.
//!
//! A rational element of odd order decomposes into full Galois orbits: each
//! [`OrbitBlock`] contributes the complete set `Φ(m)` of primitive `m`-th
//! roots (with a multiplicity), and the remaining diagonal entries are 1.
//! This normal form is canonical for the conjugacy class, so elements are
//! stored as orbit multisets rather than raw diagonals; raw diagonals are
//! accepted only by the rationality/realness predicates.
//!
//! For the symplectic family over the field of two elements the module also
//! computes the decomposition into minimal nondegenerate invariant blocks
//! and the singular-index count used by the characteristic-2 criterion.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{gcd, lcm, mult_order, phi, pow_mod, CycloError, RootExp};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElementError {
    #[error("natural module dimension mismatch: entries fill {got} of {expected}")]
    DimensionMismatch { expected: u32, got: u32 },
    #[error("eigenvalue-1 multiplicity {trivial} has the wrong parity for family {family}")]
    ParityViolation { family: Family, trivial: u32 },
    #[error("orbit order {0} is even; only odd-order elements are supported")]
    EvenOrder(u64),
    #[error("orbit order {0} must be at least 3")]
    OrbitTooSmall(u64),
    #[error("orbit multiplicity must be at least 1")]
    EmptyOrbit,
    #[error("dimension parameter {n} too small for family {family}")]
    BadRank { family: Family, n: u32 },
    #[error("operation requires a symplectic (family C) element")]
    NotSymplectic,
    #[error("cannot parse element syntax: {0}")]
    Parse(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Classical family. `A` is `SL_n` (natural dimension `n`), `B` is
/// `Spin_{2n+1}` (natural dimension `2n+1`), `C` is `Sp_2n` (natural
/// dimension `2n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
        }
    }
}

/// A family together with its dimension parameter `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupTag {
    family: Family,
    n: u32,
}

impl GroupTag {
    pub fn new(family: Family, n: u32) -> Result<Self, ElementError> {
        let min = match family {
            Family::A | Family::C => 2,
            Family::B => 3,
        };
        if n < min {
            return Err(ElementError::BadRank { family, n });
        }
        Ok(GroupTag { family, n })
    }

    pub fn family(self) -> Family {
        self.family
    }

    /// The dimension parameter: matrix size for `A`, rank for `B` and `C`.
    pub fn param(self) -> u32 {
        self.n
    }

    pub fn rank(self) -> u32 {
        match self.family {
            Family::A => self.n - 1,
            Family::B | Family::C => self.n,
        }
    }

    pub fn natural_dim(self) -> u32 {
        match self.family {
            Family::A => self.n,
            Family::B => 2 * self.n + 1,
            Family::C => 2 * self.n,
        }
    }
}

/// A full Galois orbit `Φ(m)` occurring `count` times on the diagonal,
/// contributing `count·φ(m)` entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitBlock {
    pub m: u64,
    pub count: u32,
}

impl OrbitBlock {
    pub fn new(m: u64, count: u32) -> Self {
        OrbitBlock { m, count }
    }

    pub fn dim(&self) -> u32 {
        self.count * phi(self.m) as u32
    }
}

/// A rational odd-order semisimple element: a multiset of orbit blocks plus
/// the multiplicity of the eigenvalue 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemisimpleElement {
    group: GroupTag,
    blocks: Vec<OrbitBlock>,
    trivial: u32,
}

impl SemisimpleElement {
    /// Validates and normalizes: blocks sorted by ascending `m`, repeated
    /// orders merged, dimension and parity invariants enforced.
    pub fn new(
        group: GroupTag,
        blocks: impl IntoIterator<Item = OrbitBlock>,
        trivial: u32,
    ) -> Result<Self, ElementError> {
        let mut merged: BTreeMap<u64, u32> = BTreeMap::new();
        for b in blocks {
            if b.count == 0 {
                return Err(ElementError::EmptyOrbit);
            }
            if b.m % 2 == 0 {
                return Err(ElementError::EvenOrder(b.m));
            }
            if b.m < 3 {
                return Err(ElementError::OrbitTooSmall(b.m));
            }
            *merged.entry(b.m).or_insert(0) += b.count;
        }
        let blocks: Vec<OrbitBlock> =
            merged.into_iter().map(|(m, count)| OrbitBlock { m, count }).collect();

        match group.family() {
            Family::C if trivial % 2 == 1 => {
                return Err(ElementError::ParityViolation { family: Family::C, trivial })
            }
            Family::B if trivial % 2 == 0 => {
                return Err(ElementError::ParityViolation { family: Family::B, trivial })
            }
            _ => {}
        }
        let expected = group.natural_dim();
        let got: u32 = blocks.iter().map(OrbitBlock::dim).sum::<u32>() + trivial;
        if got != expected {
            return Err(ElementError::DimensionMismatch { expected, got });
        }
        let g = SemisimpleElement { group, blocks, trivial };
        // Determinant-1 invariant for SL_n: full odd orbits have exponent
        // sum 0 mod the element order.
        debug_assert!(g.group.family() != Family::A || g.diagonal_exponent_sum() == 0);
        Ok(g)
    }

    pub fn group(&self) -> GroupTag {
        self.group
    }

    pub fn blocks(&self) -> &[OrbitBlock] {
        &self.blocks
    }

    pub fn trivial_count(&self) -> u32 {
        self.trivial
    }

    /// `|g|`: the least common multiple of the block orders, 1 for the
    /// identity.
    pub fn order(&self) -> u64 {
        self.blocks
            .iter()
            .fold(1u64, |acc, b| lcm(acc, b.m).expect("orders stay below the modulus limit"))
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The full diagonal on the natural module, as exponents at modulus
    /// `|g|`. Length equals the natural dimension.
    pub fn expanded_exponents(&self) -> Vec<u64> {
        let order = self.order();
        let mut out = Vec::with_capacity(self.group.natural_dim() as usize);
        for b in &self.blocks {
            let k = order / b.m;
            for _ in 0..b.count {
                for e in 1..b.m {
                    if gcd(e, b.m) == 1 {
                        out.push(e * k);
                    }
                }
            }
        }
        out.extend(std::iter::repeat_n(0, self.trivial as usize));
        out
    }

    /// The diagonal as roots of unity at modulus `|g|`.
    pub fn expanded_diagonal(&self) -> Vec<RootExp> {
        let order = self.order();
        self.expanded_exponents()
            .into_iter()
            .map(|e| RootExp::new(order, e as i64).expect("valid order"))
            .collect()
    }

    /// One representative exponent per inverse pair per block copy, at
    /// modulus `|g|`; the nonzero half of the diagonal of a `B`/`C` element.
    pub fn pair_representatives(&self) -> Vec<u64> {
        let order = self.order();
        let mut out = Vec::new();
        for b in &self.blocks {
            let k = order / b.m;
            for _ in 0..b.count {
                for e in 1..b.m {
                    if gcd(e, b.m) == 1 && e < b.m - e {
                        out.push(e * k);
                    }
                }
            }
        }
        out
    }

    fn diagonal_exponent_sum(&self) -> u64 {
        let order = self.order();
        self.expanded_exponents().into_iter().fold(0, |acc, e| (acc + e) % order)
    }

    /// Serializable record used by the verification reports.
    pub fn record(&self) -> ElementRecord {
        ElementRecord {
            family: self.group.family(),
            n: self.group.param(),
            blocks: self.blocks.iter().map(|b| (b.m, b.count)).collect(),
            trivial_count: self.trivial,
            order: self.order(),
        }
    }

    /// The minimal nondegenerate invariant blocks of a symplectic element
    /// over the field of two elements.
    ///
    /// An orbit `Φ(m)` splits according to the subgroup generated by 2 in
    /// `(Z/m)^×`: with `e = ord_m(2)`, the orbit yields `φ(m)/e` irreducible
    /// blocks of dimension `e` when `2^{e/2} ≡ −1 (mod m)`, and `φ(m)/(2e)`
    /// dual pairs of dimension `2e` otherwise. Trivial eigenvalues contribute
    /// no block.
    pub fn f2_blocks(&self) -> Result<Vec<F2Block>, ElementError> {
        if self.group.family() != Family::C {
            return Err(ElementError::NotSymplectic);
        }
        let mut out = Vec::new();
        for b in &self.blocks {
            let e = mult_order(2, b.m);
            let k = phi(b.m);
            let (kind, d, copies) = if e % 2 == 0 && pow_mod(2, e / 2, b.m) == b.m - 1 {
                (F2Kind::Irreducible, e / 2, k / e)
            } else {
                (F2Kind::SplitPair, e, k / (2 * e))
            };
            for _ in 0..copies * b.count as u64 {
                out.push(F2Block { d: d as u32, m: b.m, kind });
            }
        }
        Ok(out)
    }

    /// The singular blocks: irreducible blocks with `m = 2^d + 1` whose
    /// order is coprime to every other block's order. A repeated order
    /// disqualifies all its copies.
    pub fn singular_blocks(&self) -> Result<Vec<F2Block>, ElementError> {
        let blocks = self.f2_blocks()?;
        Ok(blocks
            .iter()
            .enumerate()
            .filter(|(i, b)| {
                b.kind == F2Kind::Irreducible
                    && (1u64 << b.d) + 1 == b.m
                    && blocks
                        .iter()
                        .enumerate()
                        .all(|(j, other)| j == *i || gcd(b.m, other.m) == 1)
            })
            .map(|(_, b)| *b)
            .collect())
    }

    /// `Si(g)`: the number of singular blocks.
    pub fn singular_count(&self) -> Result<usize, ElementError> {
        Ok(self.singular_blocks()?.len())
    }
}

/// Element syntax: `<family>:<natural dim>:<terms>`, where a term is
/// `phi(m)` or `phi(m)*count` for an orbit block and `1` or `1*k` for
/// trivial eigenvalues. Example: `b:11:phi(5)+phi(9)+1`.
impl FromStr for SemisimpleElement {
    type Err = ElementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| ElementError::Parse(format!("{msg} in {s:?}"));
        let mut parts = s.splitn(3, ':');
        let family = match parts.next().map(str::trim) {
            Some("a") | Some("A") => Family::A,
            Some("b") | Some("B") => Family::B,
            Some("c") | Some("C") => Family::C,
            _ => return Err(bad("expected family a, b or c")),
        };
        let dim: u32 = parts
            .next()
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| bad("expected the natural module dimension"))?;
        let n = match family {
            Family::A => dim,
            Family::B => {
                if dim % 2 == 0 || dim < 7 {
                    return Err(bad("family b needs an odd dimension 2n+1 with n >= 3"));
                }
                (dim - 1) / 2
            }
            Family::C => {
                if dim % 2 == 1 {
                    return Err(bad("family c needs an even dimension 2n"));
                }
                dim / 2
            }
        };
        let group = GroupTag::new(family, n)?;

        let body = parts.next().ok_or_else(|| bad("expected eigenvalue terms"))?;
        let mut blocks = Vec::new();
        let mut trivial = 0u32;
        for term in body.split('+') {
            let term = term.trim();
            let (head, count) = match term.split_once('*') {
                Some((h, c)) => {
                    let c: u32 =
                        c.trim().parse().map_err(|_| bad("expected a multiplicity after *"))?;
                    (h.trim(), c)
                }
                None => (term, 1),
            };
            if head == "1" {
                trivial += count;
            } else if let Some(inner) = head.strip_prefix("phi(").and_then(|t| t.strip_suffix(')')) {
                let m: u64 =
                    inner.trim().parse().map_err(|_| bad("expected an integer inside phi(...)"))?;
                blocks.push(OrbitBlock::new(m, count));
            } else {
                return Err(bad("expected a term of the form phi(m), phi(m)*c, 1 or 1*k"));
            }
        }
        SemisimpleElement::new(group, blocks, trivial)
    }
}

impl fmt::Display for SemisimpleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.group.family() {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
        };
        write!(f, "{fam}:{}:", self.group.natural_dim())?;
        let mut first = true;
        for b in &self.blocks {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "phi({})", b.m)?;
            if b.count > 1 {
                write!(f, "*{}", b.count)?;
            }
            first = false;
        }
        if self.trivial > 0 || first {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "1")?;
            if self.trivial > 1 {
                write!(f, "*{}", self.trivial)?;
            }
        }
        Ok(())
    }
}

/// Structured element record for reports.
#[derive(Debug, Clone, Serialize)]
pub struct ElementRecord {
    pub family: Family,
    pub n: u32,
    pub blocks: Vec<(u64, u32)>,
    pub trivial_count: u32,
    pub order: u64,
}

/// Kind of a minimal nondegenerate invariant block over the field of two
/// elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum F2Kind {
    /// Irreducible of dimension `2d` with `m | 2^d + 1`.
    Irreducible,
    /// A module paired with its dual, dimension `2d` with `m | 2^d − 1`.
    SplitPair,
}

/// A minimal nondegenerate invariant block: half-dimension `d` and the
/// element order `m` on the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct F2Block {
    pub d: u32,
    pub m: u64,
    pub kind: F2Kind,
}

/// Whether a raw diagonal is the diagonal of a rational element: every
/// Galois orbit that meets it is contained in it with uniform multiplicity.
pub fn is_rational(diagonal: &[RootExp]) -> bool {
    let mut counts: BTreeMap<(u64, u64), u32> = BTreeMap::new();
    for r in diagonal {
        let r = r.reduced();
        *counts.entry((r.modulus(), r.exponent())).or_insert(0) += 1;
    }
    let orders: Vec<u64> = counts.keys().map(|&(m, _)| m).collect();
    for m in orders {
        let per_orbit: Vec<u32> = (0..m)
            .filter(|&e| m == 1 || gcd(e, m) == 1)
            .map(|e| counts.get(&(m, e)).copied().unwrap_or(0))
            .collect();
        if per_orbit.iter().any(|&c| c != per_orbit[0]) {
            return false;
        }
    }
    true
}

/// Whether a raw diagonal equals its inverse diagonal as a multiset.
pub fn is_real(diagonal: &[RootExp]) -> bool {
    let mut counts: BTreeMap<(u64, u64), i64> = BTreeMap::new();
    for r in diagonal {
        let r = r.reduced();
        *counts.entry((r.modulus(), r.exponent())).or_insert(0) += 1;
        let inv = r.inverse();
        *counts.entry((inv.modulus(), inv.exponent())).or_insert(0) -= 1;
    }
    counts.values().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(s: &str) -> SemisimpleElement {
        s.parse().unwrap()
    }

    #[test]
    fn build_validates_dimensions_and_parity() {
        let a = SemisimpleElement::new(
            GroupTag::new(Family::A, 6).unwrap(),
            [OrbitBlock::new(9, 1)],
            0,
        )
        .unwrap();
        assert_eq!(a.order(), 9);

        let b = SemisimpleElement::new(
            GroupTag::new(Family::B, 5).unwrap(),
            [OrbitBlock::new(5, 1), OrbitBlock::new(9, 1)],
            1,
        )
        .unwrap();
        assert_eq!(b.order(), 45);

        // The trivial multiplicity is odd on a symplectic space (and 4 + 1
        // entries would not fill Sp_6 either).
        let c = SemisimpleElement::new(
            GroupTag::new(Family::C, 3).unwrap(),
            [OrbitBlock::new(5, 1)],
            1,
        );
        assert!(matches!(c, Err(ElementError::ParityViolation { family: Family::C, trivial: 1 })));

        let even = SemisimpleElement::new(
            GroupTag::new(Family::A, 2).unwrap(),
            [OrbitBlock::new(4, 1)],
            0,
        );
        assert!(matches!(even, Err(ElementError::EvenOrder(4))));
    }

    #[test]
    fn parity_violations() {
        // k even on an odd orthogonal space:
        let bad = SemisimpleElement::new(
            GroupTag::new(Family::B, 3).unwrap(),
            [OrbitBlock::new(5, 1)],
            2,
        );
        assert!(matches!(bad, Err(ElementError::ParityViolation { family: Family::B, trivial: 2 })));
        // k odd:
        let b = SemisimpleElement::new(
            GroupTag::new(Family::B, 3).unwrap(),
            [OrbitBlock::new(5, 1)],
            3,
        )
        .unwrap();
        assert_eq!(b.trivial_count(), 3);
        let bad = SemisimpleElement::new(
            GroupTag::new(Family::B, 3).unwrap(),
            [OrbitBlock::new(5, 1), OrbitBlock::new(3, 1)],
            1,
        )
        .unwrap();
        assert_eq!(bad.order(), 15);
    }

    #[test]
    fn order_examples() {
        assert_eq!(elem("a:10:phi(5)+phi(9)").order(), 45);
        assert_eq!(elem("a:6:phi(5)+phi(3)").order(), 15);
        assert_eq!(elem("a:4:1*4").order(), 1);
    }

    #[test]
    fn syntax_round_trip() {
        for s in ["a:8:phi(3)*2+phi(5)", "b:11:phi(5)+phi(9)+1", "c:10:phi(5)+phi(9)", "a:3:phi(3)+1"] {
            assert_eq!(elem(s).to_string(), s);
        }
        // Terms in any order normalize to ascending block order.
        assert_eq!(elem("a:8:phi(5)+phi(3)*2").to_string(), "a:8:phi(3)*2+phi(5)");
        assert_eq!(elem("a:8:phi(3)+phi(5)+phi(3)").to_string(), "a:8:phi(3)*2+phi(5)");
        assert!("a:6:phi(5)".parse::<SemisimpleElement>().is_err());
        assert!("d:6:phi(7)".parse::<SemisimpleElement>().is_err());
    }

    #[test]
    fn rationality_predicate() {
        let z9: Vec<RootExp> =
            (1..9).filter(|e| gcd(*e, 9) == 1).map(|e| RootExp::new(9, e as i64).unwrap()).collect();
        assert!(is_rational(&z9));

        let partial = vec![
            RootExp::new(3, 1).unwrap(),
            RootExp::new(1, 0).unwrap(),
            RootExp::new(1, 0).unwrap(),
        ];
        assert!(!is_rational(&partial));

        let doubled: Vec<RootExp> = (1..5)
            .chain(1..5)
            .map(|e| RootExp::new(5, e as i64).unwrap())
            .collect();
        assert!(is_rational(&doubled));
    }

    #[test]
    fn realness_predicate() {
        let orbit = elem("a:6:phi(9)").expanded_diagonal();
        assert!(is_real(&orbit));
        let skew = vec![RootExp::new(9, 1).unwrap(), RootExp::new(9, 2).unwrap()];
        assert!(!is_real(&skew));
        let ones = vec![RootExp::one(); 4];
        assert!(is_real(&ones));
    }

    #[test]
    fn f2_block_shapes() {
        let b5 = elem("c:4:phi(5)").f2_blocks().unwrap();
        assert_eq!(b5, vec![F2Block { d: 2, m: 5, kind: F2Kind::Irreducible }]);

        let b9 = elem("c:6:phi(9)").f2_blocks().unwrap();
        assert_eq!(b9, vec![F2Block { d: 3, m: 9, kind: F2Kind::Irreducible }]);

        // ord_7(2) = 3 is odd, so Φ(7) pairs with its dual: one split block.
        let b7 = elem("c:6:phi(7)").f2_blocks().unwrap();
        assert_eq!(b7, vec![F2Block { d: 3, m: 7, kind: F2Kind::SplitPair }]);

        assert!(elem("a:6:phi(9)").f2_blocks().is_err());
    }

    #[test]
    fn f2_dimensions_sum_to_nontrivial_part() {
        for s in ["c:10:phi(5)+phi(9)", "c:12:phi(7)+phi(5)+1*2", "c:16:phi(15)+phi(3)*3+1*2"] {
            let g = elem(s);
            let total: u32 = g.f2_blocks().unwrap().iter().map(|b| 2 * b.d).sum();
            assert_eq!(total, g.group().natural_dim() - g.trivial_count());
        }
    }

    #[test]
    fn singular_counting() {
        let g = elem("c:10:phi(5)+phi(9)");
        assert_eq!(g.singular_count().unwrap(), 2);

        let g = elem("c:4:phi(3)*2");
        assert_eq!(g.singular_count().unwrap(), 0);

        let g = elem("c:10:phi(5)+phi(7)");
        let sing = g.singular_blocks().unwrap();
        assert_eq!(sing.len(), 1);
        assert_eq!(sing[0].m, 5);
    }
}
