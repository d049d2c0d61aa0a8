//! Roots of unity as exponents modulo `m`, and set algebra on subsets of the
//! `M`-th roots.
//!
//! A root is the pair `(m, e)` standing for `ζ_m^e`; multiplying roots adds
//! exponents, inverting negates them. A [`RootSet`] is a membership bitmap
//! over residues `0..M`. Binary operations on sets with different moduli
//! silently rescale both operands to the least common multiple, mirroring how
//! the sets `R(m)` and `Φ(m)` are freely mixed across moduli.

use std::fmt;

use thiserror::Error;

/// Largest supported modulus. Keeps bitmaps dense; every verification in this
/// crate uses moduli far below it.
pub const MAX_MODULUS: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("invalid modulus {0}: must be between 1 and {MAX_MODULUS}")]
    InvalidModulus(u64),
    #[error("modulus {0} exceeds the supported limit {MAX_MODULUS}")]
    ModulusOverflow(u64),
    #[error("cannot rescale modulus {old} to {new}: not a multiple")]
    BadRescale { old: u64, new: u64 },
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple, checked against [`MAX_MODULUS`].
pub fn lcm(a: u64, b: u64) -> Result<u64, CycloError> {
    debug_assert!(a > 0 && b > 0);
    let l = a / gcd(a, b) * b;
    if l > MAX_MODULUS {
        return Err(CycloError::ModulusOverflow(l));
    }
    Ok(l)
}

/// Euler's totient: the number of residues in `[1, m]` coprime to `m`.
pub fn phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `base^exp mod m`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut b = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `m`; requires `gcd(a, m) = 1`.
pub fn mult_order(a: u64, m: u64) -> u64 {
    assert_eq!(gcd(a % m, m), 1, "order undefined: {a} not a unit mod {m}");
    let mut k = 1;
    let mut x = a % m;
    while x != 1 % m {
        x = x * (a % m) % m;
        k += 1;
    }
    k
}

/// A root of unity `ζ_m^e` stored as the exponent `e` reduced into `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootExp {
    modulus: u64,
    exponent: u64,
}

impl RootExp {
    pub fn new(modulus: u64, exponent: i64) -> Result<Self, CycloError> {
        if modulus == 0 || modulus > MAX_MODULUS {
            return Err(CycloError::InvalidModulus(modulus));
        }
        let m = modulus as i64;
        let e = exponent.rem_euclid(m) as u64;
        Ok(RootExp { modulus, exponent: e })
    }

    /// The trivial root `1` at modulus 1.
    pub fn one() -> Self {
        RootExp { modulus: 1, exponent: 0 }
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn exponent(self) -> u64 {
        self.exponent
    }

    /// Multiplicative order: `m / gcd(e, m)`.
    pub fn order(self) -> u64 {
        self.modulus / gcd(self.exponent, self.modulus)
    }

    /// `ζ_m^{-e}`.
    pub fn inverse(self) -> Self {
        let e = if self.exponent == 0 { 0 } else { self.modulus - self.exponent };
        RootExp { modulus: self.modulus, exponent: e }
    }

    /// Canonical form with minimal modulus: `ζ_m^e = ζ_{m/g}^{e/g}` for
    /// `g = gcd(e, m)`. After reduction the exponent is a unit mod the
    /// modulus (or the root is `ζ_1^0 = 1`).
    pub fn reduced(self) -> Self {
        let g = gcd(self.exponent, self.modulus);
        if g <= 1 {
            return self;
        }
        RootExp { modulus: self.modulus / g, exponent: self.exponent / g }
    }

    /// The same root expressed at a larger modulus `kM`.
    pub fn rescaled(self, new_modulus: u64) -> Result<Self, CycloError> {
        if new_modulus == 0 || new_modulus > MAX_MODULUS {
            return Err(CycloError::InvalidModulus(new_modulus));
        }
        if new_modulus % self.modulus != 0 {
            return Err(CycloError::BadRescale { old: self.modulus, new: new_modulus });
        }
        let k = new_modulus / self.modulus;
        Ok(RootExp { modulus: new_modulus, exponent: self.exponent * k })
    }

    /// The Galois orbit `{ζ^i : gcd(i, m) = 1}` as a subset of the ambient
    /// modulus. Equals `Φ(order)` rescaled.
    pub fn galois_orbit(self) -> RootSet {
        let mut out = RootSet::empty_unchecked(self.modulus);
        for i in 1..=self.modulus {
            if gcd(i, self.modulus) == 1 {
                out.insert(self.exponent * i % self.modulus);
            }
        }
        out
    }
}

impl fmt::Display for RootExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.modulus == 1 {
            write!(f, "1")
        } else {
            write!(f, "ζ_{}^{}", r.modulus, r.exponent)
        }
    }
}

/// A subset of the `M`-th roots of unity, stored as a bitmap over `Z/M`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootSet {
    modulus: u64,
    bits: Vec<u64>,
}

impl RootSet {
    fn empty_unchecked(modulus: u64) -> Self {
        let words = (modulus as usize).div_ceil(64);
        RootSet { modulus, bits: vec![0; words] }
    }

    pub fn empty(modulus: u64) -> Result<Self, CycloError> {
        if modulus == 0 || modulus > MAX_MODULUS {
            return Err(CycloError::InvalidModulus(modulus));
        }
        Ok(Self::empty_unchecked(modulus))
    }

    /// `R(m)`: all `m`-th roots of unity.
    pub fn all_roots(m: u64) -> Result<Self, CycloError> {
        let mut s = Self::empty(m)?;
        for e in 0..m {
            s.insert(e);
        }
        Ok(s)
    }

    /// `Φ(m)`: the primitive `m`-th roots, i.e. residues coprime to `m`.
    /// `Φ(1) = {1}`.
    pub fn primitive_roots(m: u64) -> Result<Self, CycloError> {
        let mut s = Self::empty(m)?;
        if m == 1 {
            s.insert(0);
            return Ok(s);
        }
        for e in 1..m {
            if gcd(e, m) == 1 {
                s.insert(e);
            }
        }
        Ok(s)
    }

    /// `{1}` at the given modulus.
    pub fn unit(modulus: u64) -> Result<Self, CycloError> {
        let mut s = Self::empty(modulus)?;
        s.insert(0);
        Ok(s)
    }

    pub fn singleton(r: RootExp) -> Self {
        let mut s = Self::empty_unchecked(r.modulus());
        s.insert(r.exponent());
        s
    }

    pub fn from_exponents(m: u64, exps: impl IntoIterator<Item = u64>) -> Result<Self, CycloError> {
        let mut s = Self::empty(m)?;
        for e in exps {
            s.insert(e % m);
        }
        Ok(s)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, exp: u64) -> bool {
        let e = exp % self.modulus;
        self.bits[(e / 64) as usize] >> (e % 64) & 1 == 1
    }

    pub(crate) fn insert(&mut self, exp: u64) {
        debug_assert!(exp < self.modulus);
        self.bits[(exp / 64) as usize] |= 1 << (exp % 64);
    }

    /// Exponents in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.modulus).filter(|&e| self.contains(e))
    }

    /// Whether the set is all of `R(M)`.
    pub fn is_all(&self) -> bool {
        self.len() as u64 == self.modulus
    }

    /// Whether the set contains the root `1` (exponent 0).
    pub fn contains_unit(&self) -> bool {
        self.contains(0)
    }

    /// The set with the root `1` removed.
    pub fn without_unit(&self) -> Self {
        let mut s = self.clone();
        s.bits[0] &= !1;
        s
    }

    /// The same subset viewed inside `R(kM)`: residue `e` maps to `k·e`.
    pub fn rescaled(&self, new_modulus: u64) -> Result<Self, CycloError> {
        if new_modulus == 0 || new_modulus > MAX_MODULUS {
            return Err(CycloError::InvalidModulus(new_modulus));
        }
        if new_modulus % self.modulus != 0 {
            return Err(CycloError::BadRescale { old: self.modulus, new: new_modulus });
        }
        let k = new_modulus / self.modulus;
        let mut s = Self::empty_unchecked(new_modulus);
        for e in self.iter() {
            s.insert(e * k);
        }
        Ok(s)
    }

    fn common(&self, other: &Self) -> Result<(Self, Self), CycloError> {
        let m = lcm(self.modulus, other.modulus)?;
        Ok((self.rescaled(m)?, other.rescaled(m)?))
    }

    pub fn union(&self, other: &Self) -> Result<Self, CycloError> {
        let (mut a, b) = self.common(other)?;
        for (wa, wb) in a.bits.iter_mut().zip(&b.bits) {
            *wa |= wb;
        }
        Ok(a)
    }

    /// In-place union with a set at the same modulus.
    pub(crate) fn merge(&mut self, other: &Self) {
        assert_eq!(self.modulus, other.modulus);
        for (wa, wb) in self.bits.iter_mut().zip(&other.bits) {
            *wa |= wb;
        }
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, CycloError> {
        let (mut a, b) = self.common(other)?;
        for (wa, wb) in a.bits.iter_mut().zip(&b.bits) {
            *wa &= wb;
        }
        Ok(a)
    }

    /// Set difference `self ∖ other` at the common modulus.
    pub fn difference(&self, other: &Self) -> Result<Self, CycloError> {
        let (mut a, b) = self.common(other)?;
        for (wa, wb) in a.bits.iter_mut().zip(&b.bits) {
            *wa &= !wb;
        }
        Ok(a)
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, CycloError> {
        let (a, b) = self.common(other)?;
        Ok(a.bits.iter().zip(&b.bits).all(|(wa, wb)| wa & !wb == 0))
    }

    /// The product set `{xy : x ∈ self, y ∈ other}`; in exponent space the
    /// sumset modulo the common modulus.
    pub fn product(&self, other: &Self) -> Result<Self, CycloError> {
        let (a, b) = self.common(other)?;
        let m = a.modulus;
        let mut out = Self::empty_unchecked(m);
        for x in a.iter() {
            for y in b.iter() {
                out.insert((x + y) % m);
            }
        }
        Ok(out)
    }

    /// `{x^{-1} : x ∈ self}`, i.e. exponent negation.
    pub fn inverse(&self) -> Self {
        let mut out = Self::empty_unchecked(self.modulus);
        for e in self.iter() {
            out.insert(if e == 0 { 0 } else { self.modulus - e });
        }
        out
    }

    /// The set shifted by a fixed exponent: `{x·ζ^d : x ∈ self}`.
    pub fn shifted(&self, d: u64) -> Self {
        let mut out = Self::empty_unchecked(self.modulus);
        let d = d % self.modulus;
        for e in self.iter() {
            out.insert((e + d) % self.modulus);
        }
        out
    }

    /// Whether the set is stable under every Galois substitution
    /// `e ↦ i·e` with `gcd(i, M) = 1`.
    pub fn is_galois_closed(&self) -> bool {
        self.iter().all(|e| {
            RootExp { modulus: self.modulus, exponent: e }
                .galois_orbit()
                .iter()
                .all(|x| self.contains(x))
        })
    }
}

impl fmt::Display for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mod {}: {{", self.modulus)?;
        let mut first = true;
        for e in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSet({self})")
    }
}

/// `R(m)` for a valid modulus; shorthand used throughout the crate.
pub fn all_roots(m: u64) -> Result<RootSet, CycloError> {
    RootSet::all_roots(m)
}

/// `Φ(m)` for a valid modulus.
pub fn primitive_roots(m: u64) -> Result<RootSet, CycloError> {
    RootSet::primitive_roots(m)
}

/// `{xy : x ∈ a, y ∈ b}` after rescaling to the common modulus.
pub fn product_set(a: &RootSet, b: &RootSet) -> Result<RootSet, CycloError> {
    a.product(b)
}

/// `{x^{-1} : x ∈ a}`.
pub fn inverse_set(a: &RootSet) -> RootSet {
    a.inverse()
}

/// The Galois orbit of a single root inside its own modulus.
pub fn galois_orbit(r: RootExp) -> RootSet {
    r.galois_orbit()
}
