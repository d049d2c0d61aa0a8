//! Eigenvalue sets `E(ρ_ω(g))` for the supported highest-weight shapes.
//!
//! Every spectrum is a [`RootSet`] at modulus `|g|`; multiplicities are
//! deliberately discarded. The supported shapes are the ones appearing in
//! the encoded classification tables:
//!
//! - fundamental weights of `SL_n` (exterior powers of the diagonal);
//! - fundamental weights of `Sp_2n`, computed through the `SL_2n`
//!   restriction, which is exact except for the top weight in
//!   characteristic 2;
//! - the spin weight of `Spin_{2n+1}`, with brute-force sign enumeration as
//!   ground truth and the `Δ`-product closed form next to it;
//! - the handful of two-term sums that the tables need.
//!
//! For the top symplectic weight in characteristic 2 no exact spectrum is
//! available; only the boolean eigenvalue-1 criterion `δ(ν) < Si(g)` is
//! provided.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{CycloError, RootSet};
use crate::elements::{ElementError, Family, SemisimpleElement};
use crate::lambda::{delta_closed, LambdaError};

/// Largest rank accepted by the spin sign enumeration (`2^n` sign vectors).
pub const MAX_SPIN_RANK: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("weight {weight} is not supported for family {family}")]
    UnsupportedShape { family: Family, weight: String },
    #[error("arity {arity} out of range 1..={max}")]
    ArityOutOfRange { arity: u32, max: u32 },
    #[error(
        "the top fundamental weight of Sp_2n has no exact spectrum in characteristic 2; \
         use the si-delta criterion"
    )]
    CharTwoTopWeight,
    #[error("family B spectra are only available in characteristic 0 or odd")]
    CharTwoFamilyB,
    #[error("spin enumeration limit exceeded: rank {0} > {MAX_SPIN_RANK}")]
    EnumerationLimit(u32),
    #[error("expected a family {expected} element")]
    WrongFamily { expected: Family },
    #[error("the coefficient of the top fundamental weight must be nonzero")]
    ZeroTopCoefficient,
    #[error("weight coefficients must cover fundamental indices 1..=rank")]
    BadCoefficientLength,
    #[error("cannot parse weight syntax: {0}")]
    Parse(String),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Lambda(#[from] LambdaError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// The eigenvalue set of `ρ_ω(g)`, always at modulus `|g|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    values: RootSet,
}

impl Spectrum {
    fn new(values: RootSet) -> Self {
        Spectrum { values }
    }

    pub fn modulus(&self) -> u64 {
        self.values.modulus()
    }

    pub fn values(&self) -> &RootSet {
        &self.values
    }

    /// Whether the root `1` is an eigenvalue.
    pub fn has_one(&self) -> bool {
        self.values.contains_unit()
    }

    /// Whether the spectrum is all of `R(|g|)`.
    pub fn is_full(&self) -> bool {
        self.values.is_all()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.values.fmt(f)
    }
}

/// Whether `1` is an eigenvalue.
pub fn has_eigenvalue_one(s: &Spectrum) -> bool {
    s.has_one()
}

/// A dominant weight as nonzero coefficients on fundamental weights,
/// `ω = Σ cᵢ ωᵢ`, stored sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coeffs: Vec<(u32, u32)>,
}

impl Weight {
    pub fn fundamental(i: u32) -> Self {
        Weight { coeffs: vec![(i, 1)] }
    }

    /// `ωᵢ + ωⱼ`; `i = j` yields the coefficient-2 weight.
    pub fn sum_two(i: u32, j: u32) -> Self {
        if i == j {
            return Weight { coeffs: vec![(i, 2)] };
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Weight { coeffs: vec![(a, 1), (b, 1)] }
    }

    pub fn coeffs(&self) -> &[(u32, u32)] {
        &self.coeffs
    }

    /// `Some(i)` when the weight is a single fundamental `ωᵢ`.
    pub fn single(&self) -> Option<u32> {
        match self.coeffs.as_slice() {
            [(i, 1)] => Some(*i),
            _ => None,
        }
    }

    /// `Some((i, j))` when the weight is a sum of exactly two fundamentals
    /// counted with multiplicity.
    pub fn pair(&self) -> Option<(u32, u32)> {
        match self.coeffs.as_slice() {
            [(i, 2)] => Some((*i, *i)),
            [(i, 1), (j, 1)] => Some((*i, *j)),
            _ => None,
        }
    }

    /// Dense coefficient vector `a_1..a_rank`.
    pub fn coeff_vector(&self, rank: u32) -> Result<Vec<u32>, SpectrumError> {
        let mut v = vec![0u32; rank as usize];
        for &(i, c) in &self.coeffs {
            if i == 0 || i > rank {
                return Err(SpectrumError::BadCoefficientLength);
            }
            v[(i - 1) as usize] = c;
        }
        Ok(v)
    }

    /// Weight syntax: terms joined by `+`, each `fund:<i>`, `<c>*fund:<i>`
    /// or `spin` (the top fundamental weight, family B).
    pub fn parse(s: &str, group: crate::elements::GroupTag) -> Result<Self, SpectrumError> {
        let rank = group.rank();
        let mut coeffs = std::collections::BTreeMap::new();
        for term in s.split('+') {
            let term = term.trim();
            let (count, rest) = match term.split_once('*') {
                Some((c, rest)) => {
                    let c: u32 = c
                        .trim()
                        .parse()
                        .map_err(|_| SpectrumError::Parse(format!("bad multiplier in {term:?}")))?;
                    (c, rest.trim())
                }
                None => (1, term),
            };
            let index = if rest == "spin" {
                if group.family() != Family::B {
                    return Err(SpectrumError::Parse(
                        "the spin weight exists only for family b".into(),
                    ));
                }
                rank
            } else if let Some(i) = rest.strip_prefix("fund:") {
                i.trim()
                    .parse()
                    .map_err(|_| SpectrumError::Parse(format!("bad fundamental index in {term:?}")))?
            } else {
                return Err(SpectrumError::Parse(format!(
                    "expected fund:<i>, <c>*fund:<i> or spin, got {term:?}"
                )));
            };
            if index == 0 || index > rank {
                return Err(SpectrumError::Parse(format!(
                    "fundamental index {index} out of range 1..={rank}"
                )));
            }
            if count == 0 {
                return Err(SpectrumError::Parse("zero coefficient".into()));
            }
            *coeffs.entry(index).or_insert(0u32) += count;
        }
        if coeffs.is_empty() {
            return Err(SpectrumError::Parse("empty weight".into()));
        }
        Ok(Weight { coeffs: coeffs.into_iter().collect() })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(i, c) in &self.coeffs {
            if !first {
                write!(f, "+")?;
            }
            if c > 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "fund:{i}")?;
            first = false;
        }
        Ok(())
    }
}

fn expect_family(g: &SemisimpleElement, family: Family) -> Result<(), SpectrumError> {
    if g.group().family() != family {
        return Err(SpectrumError::WrongFamily { expected: family });
    }
    Ok(())
}

/// Achievable exponent sums over all `arity`-element position subsets of a
/// diagonal, as a subset-sum table over `Z/m` indexed by pick count.
fn arity_sums(entries: &[u64], m: u64, arity: usize) -> Result<RootSet, SpectrumError> {
    let mut counts = std::collections::BTreeMap::<u64, u32>::new();
    for &e in entries {
        *counts.entry(e % m).or_insert(0) += 1;
    }
    let mut dp: Vec<RootSet> = (0..=arity).map(|_| RootSet::empty(m)).collect::<Result<_, _>>()?;
    dp[0] = RootSet::unit(m)?;
    for (&r, &c) in &counts {
        let snapshot = dp.clone();
        for t in 0..arity {
            if snapshot[t].is_empty() {
                continue;
            }
            for take in 1..=c as usize {
                if t + take > arity {
                    break;
                }
                let shift = (r * take as u64) % m;
                dp[t + take].merge(&snapshot[t].shifted(shift));
            }
        }
    }
    Ok(dp.swap_remove(arity))
}

/// `E(ρ_{ω_1}(g))`: the orbit union, plus `1` when the eigenvalue 1 occurs.
pub fn spectrum_natural(g: &SemisimpleElement) -> Result<Spectrum, SpectrumError> {
    let m = g.order();
    let mut out = RootSet::empty(m)?;
    for b in g.blocks() {
        out.merge(&RootSet::primitive_roots(b.m)?.rescaled(m)?);
    }
    if g.trivial_count() > 0 {
        out.merge(&RootSet::unit(m)?);
    }
    Ok(Spectrum::new(out))
}

/// `E(ρ_{ω_i}(g))` for `SL_n`: exponent sums over `i` distinct diagonal
/// positions.
pub fn spectrum_exterior(g: &SemisimpleElement, arity: u32) -> Result<Spectrum, SpectrumError> {
    expect_family(g, Family::A)?;
    let n = g.group().natural_dim();
    if arity == 0 || arity > n - 1 {
        return Err(SpectrumError::ArityOutOfRange { arity, max: n - 1 });
    }
    let m = g.order();
    Ok(Spectrum::new(arity_sums(&g.expanded_exponents(), m, arity as usize)?))
}

/// `E(ρ_{ω_i}(g))` for `Sp_2n`, through the restriction from `SL_2n`; exact
/// unless `(i, p) = (n, 2)`.
pub fn spectrum_sp_fund(
    g: &SemisimpleElement,
    arity: u32,
    p: u32,
) -> Result<Spectrum, SpectrumError> {
    expect_family(g, Family::C)?;
    let n = g.group().param();
    if arity == 0 || arity > n {
        return Err(SpectrumError::ArityOutOfRange { arity, max: n });
    }
    if arity == n && p == 2 {
        return Err(SpectrumError::CharTwoTopWeight);
    }
    let m = g.order();
    Ok(Spectrum::new(arity_sums(&g.expanded_exponents(), m, arity as usize)?))
}

/// Brute-force spin spectrum for `Spin_{2n+1}`: all `2^n` sign vectors over
/// the nonzero half of the diagonal. The half-weight evaluation is replaced
/// by the full sign sum, which has the same value set for rational elements
/// of odd order.
pub fn spectrum_spin_brute(g: &SemisimpleElement) -> Result<Spectrum, SpectrumError> {
    expect_family(g, Family::B)?;
    if g.group().param() > MAX_SPIN_RANK {
        return Err(SpectrumError::EnumerationLimit(g.group().param()));
    }
    let m = g.order();
    let reps = g.pair_representatives();
    let mut out = RootSet::empty(m)?;
    for mask in 0u64..1 << reps.len() {
        let mut sum = 0u64;
        for (j, &r) in reps.iter().enumerate() {
            sum += if mask >> j & 1 == 1 { (m - r) % m } else { r };
        }
        out.insert(sum % m);
    }
    Ok(Spectrum::new(out))
}

/// Closed-form spin spectrum: the product of `Δ(m)` over the orbit blocks.
pub fn spectrum_spin_closed(g: &SemisimpleElement) -> Result<Spectrum, SpectrumError> {
    expect_family(g, Family::B)?;
    let m = g.order();
    let mut acc = RootSet::unit(m)?;
    for b in g.blocks() {
        let delta = delta_closed(b.m)?.rescaled(m)?;
        for _ in 0..b.count {
            acc = acc.product(&delta)?;
        }
    }
    Ok(Spectrum::new(acc))
}

/// Shape of the spin spectrum of a rational odd-order element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinCase {
    /// `E = R(|g|)`.
    Full,
    /// `E = (R(m) ∖ 1)·R(|g|/m) = R(|g|) ∖ R(|g|/m)`, `m ∈ {3, 5, 9}`.
    Case2(u64),
    /// `E = (R(m) ∖ 1)·Φ(5)·R(|g|/5m)`, `m ∈ {3, 9}`: the roots whose
    /// orders are multiples of 15.
    Case3(u64),
}

impl fmt::Display for SpinCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinCase::Full => write!(f, "Full"),
            SpinCase::Case2(m) => write!(f, "Case2({m})"),
            SpinCase::Case3(m) => write!(f, "Case3({m})"),
        }
    }
}

/// A deficient orbit is one with `m ∈ {3, 5, 9}` (where `Δ(m)` misses the
/// root 1) whose order is coprime to every other block, counted with
/// multiplicity. At most one such orbit can survive on the 3-side
/// (`m ∈ {3, 9}`) and at most one on the 5-side; everything else collapses
/// to a full set in the `Δ`-product.
fn surviving_deficient_orbits(g: &SemisimpleElement) -> (Option<u64>, bool) {
    let mut orders = Vec::new();
    for b in g.blocks() {
        for _ in 0..b.count {
            orders.push(b.m);
        }
    }
    let three_divisible: Vec<u64> = orders.iter().copied().filter(|m| m % 3 == 0).collect();
    let five_divisible: Vec<u64> = orders.iter().copied().filter(|m| m % 5 == 0).collect();
    let three = match three_divisible.as_slice() {
        [m] if matches!(m, 3 | 9) => Some(*m),
        _ => None,
    };
    let five = matches!(five_divisible.as_slice(), [5]);
    (three, five)
}

/// The case label of the spin spectrum.
pub fn spin_case(g: &SemisimpleElement) -> Result<SpinCase, SpectrumError> {
    expect_family(g, Family::B)?;
    Ok(match surviving_deficient_orbits(g) {
        (None, false) => SpinCase::Full,
        (Some(m), false) => SpinCase::Case2(m),
        (None, true) => SpinCase::Case2(5),
        (Some(m), true) => SpinCase::Case3(m),
    })
}

/// The set each case label stands for, realized directly from its formula.
pub fn spin_case_spectrum(g: &SemisimpleElement, case: SpinCase) -> Result<Spectrum, SpectrumError> {
    let order = g.order();
    let all = RootSet::all_roots(order)?;
    let set = match case {
        SpinCase::Full => all,
        SpinCase::Case2(m) => all.difference(&RootSet::all_roots(order / m)?.rescaled(order)?)?,
        SpinCase::Case3(m) => RootSet::all_roots(m)?
            .without_unit()
            .product(&RootSet::primitive_roots(5)?)?
            .product(&RootSet::all_roots(order / (5 * m))?)?
            .rescaled(order)?,
    };
    Ok(Spectrum::new(set))
}

/// Lower bound for the second fundamental spectrum of `Spin_{2n+1}`:
/// `{±d_a ± d_b : a < b} ∪ {1}` over the top half of the diagonal. Sound
/// only for certifying that 1 is an eigenvalue.
pub fn spectrum_b_omega2_lower(g: &SemisimpleElement) -> Result<Spectrum, SpectrumError> {
    expect_family(g, Family::B)?;
    let m = g.order();
    let mut top = g.pair_representatives();
    top.extend(std::iter::repeat_n(0, ((g.trivial_count() - 1) / 2) as usize));
    let mut out = RootSet::unit(m)?;
    for (a, &x) in top.iter().enumerate() {
        for &y in &top[a + 1..] {
            for (sx, sy) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let ex = if sx == 0 { x } else { (m - x) % m };
                let ey = if sy == 0 { y } else { (m - y) % m };
                out.insert((ex + ey) % m);
            }
        }
    }
    Ok(Spectrum::new(out))
}

/// Spectra of the supported two-term sums `ω_i + ω_j`.
pub fn spectrum_sum_two(
    g: &SemisimpleElement,
    i: u32,
    j: u32,
    p: u32,
) -> Result<Spectrum, SpectrumError> {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    let unsupported = || SpectrumError::UnsupportedShape {
        family: g.group().family(),
        weight: Weight::sum_two(i, j).to_string(),
    };
    let m = g.order();
    match g.group().family() {
        Family::A => {
            let n = g.group().natural_dim();
            let d = g.expanded_exponents();
            let mut out = RootSet::empty(m)?;
            if (i, j) == (1, 2) && n >= 3 {
                // 2ε_a + ε_b over distinct positions.
                for (a, &x) in d.iter().enumerate() {
                    for (b, &y) in d.iter().enumerate() {
                        if a != b {
                            out.insert((2 * x + y) % m);
                        }
                    }
                }
            } else if (i, j) == (1, 4) && n >= 5 {
                // 2ε_a + ε_b + ε_c + ε_e over distinct positions.
                for (a, &x) in d.iter().enumerate() {
                    for (b, &y) in d.iter().enumerate() {
                        if b == a {
                            continue;
                        }
                        for (c, &z) in d.iter().enumerate().skip(b + 1) {
                            if c == a {
                                continue;
                            }
                            for (e, &w) in d.iter().enumerate().skip(c + 1) {
                                if e == a {
                                    continue;
                                }
                                out.insert((2 * x + y + z + w) % m);
                            }
                        }
                    }
                }
            } else if i == 1 && j == n - 1 {
                // ε_a − ε_b over distinct positions.
                for (a, &x) in d.iter().enumerate() {
                    for (b, &y) in d.iter().enumerate() {
                        if a != b {
                            out.insert((x + (m - y) % m) % m);
                        }
                    }
                }
            } else if i == 2 && j == n - 1 && n >= 4 {
                // ε_a + ε_b − ε_c over distinct positions.
                for (a, &x) in d.iter().enumerate() {
                    for (b, &y) in d.iter().enumerate().skip(a + 1) {
                        for (c, &z) in d.iter().enumerate() {
                            if c != a && c != b {
                                out.insert((x + y + (m - z) % m) % m);
                            }
                        }
                    }
                }
            } else {
                return Err(unsupported());
            }
            Ok(Spectrum::new(out))
        }
        Family::B => {
            if p == 2 {
                return Err(SpectrumError::CharTwoFamilyB);
            }
            let n = g.group().param();
            if (i, j) == (1, n) {
                let prod =
                    spectrum_natural(g)?.values.product(spectrum_spin_closed(g)?.values())?;
                Ok(Spectrum::new(prod))
            } else if (i, j) == (2, n) && n > 2 {
                let prod =
                    spectrum_b_omega2_lower(g)?.values.product(spectrum_spin_closed(g)?.values())?;
                Ok(Spectrum::new(prod))
            } else {
                Err(unsupported())
            }
        }
        Family::C => {
            let n = g.group().param();
            if (i, j) == (1, 1) {
                if p == 2 {
                    return Err(unsupported());
                }
                let nat = spectrum_natural(g)?;
                Ok(Spectrum::new(nat.values.product(&nat.values)?))
            } else if (i, j) == (1, n) {
                let top = spectrum_sp_fund(g, n, p)?;
                Ok(Spectrum::new(spectrum_natural(g)?.values.product(top.values())?))
            } else {
                Err(unsupported())
            }
        }
    }
}

/// Spectrum of a Frobenius-twisted product `ω = Σ p^{k_t} μ_t`: twists are
/// dropped (spectra of rational elements are twist-invariant) and the
/// component spectra are multiplied.
pub fn twisted_product_spectrum(
    g: &SemisimpleElement,
    weights: &[Weight],
    p: u32,
) -> Result<Spectrum, SpectrumError> {
    let mut acc = RootSet::unit(g.order())?;
    for w in weights {
        acc = acc.product(spectrum(g, w, p)?.values())?;
    }
    Ok(Spectrum::new(acc))
}

/// Dispatcher over the supported weight shapes.
pub fn spectrum(g: &SemisimpleElement, w: &Weight, p: u32) -> Result<Spectrum, SpectrumError> {
    let family = g.group().family();
    let unsupported = || SpectrumError::UnsupportedShape { family, weight: w.to_string() };
    if let Some(i) = w.single() {
        return match family {
            Family::A => spectrum_exterior(g, i),
            Family::B => {
                if p == 2 {
                    return Err(SpectrumError::CharTwoFamilyB);
                }
                if i == 1 {
                    spectrum_natural(g)
                } else if i == g.group().rank() {
                    spectrum_spin_closed(g)
                } else {
                    Err(unsupported())
                }
            }
            Family::C => spectrum_sp_fund(g, i, p),
        };
    }
    if let Some((i, j)) = w.pair() {
        return spectrum_sum_two(g, i, j, p);
    }
    Err(unsupported())
}

/// `δ(ν)` for `ω' = Σ aⱼωⱼ`: write each coefficient in base 2, sum the
/// 2-restricted digit weights into `ν = Σ bⱼωⱼ` and return `Σ bⱼ·j`.
pub fn delta_nu(coeffs: &[u32]) -> u64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(idx, &a)| u64::from(a.count_ones()) * (idx as u64 + 1))
        .sum()
}

/// Eigenvalue-1 criterion for `Sp_2n` in characteristic 2 with
/// `ω = a_1ω_1 + ⋯ + a_nω_n`, `a_n ≠ 0`: the eigenvalue 1 is absent exactly
/// when `δ(ν) < Si(g)`.
pub fn sp2_eig1_absent(g: &SemisimpleElement, coeffs: &[u32]) -> Result<bool, SpectrumError> {
    expect_family(g, Family::C)?;
    let n = g.group().param() as usize;
    if coeffs.len() != n {
        return Err(SpectrumError::BadCoefficientLength);
    }
    if coeffs[n - 1] == 0 {
        return Err(SpectrumError::ZeroTopCoefficient);
    }
    let delta = delta_nu(&coeffs[..n - 1]);
    let si = g.singular_count()? as u64;
    Ok(delta < si)
}

/// Outcome of the characteristic-2 symplectic eigenvalue-1 criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub report_version: u32,
    pub element: String,
    pub weight: String,
    pub si: u64,
    pub delta: u64,
    pub eig1_absent: bool,
}

/// Evaluates the `δ(ν) < Si(g)` criterion and packages it for reporting.
pub fn criterion_report(
    g: &SemisimpleElement,
    w: &Weight,
) -> Result<CriterionReport, SpectrumError> {
    let coeffs = w.coeff_vector(g.group().rank())?;
    let eig1_absent = sp2_eig1_absent(g, &coeffs)?;
    Ok(CriterionReport {
        report_version: 1,
        element: g.to_string(),
        weight: w.to_string(),
        si: g.singular_count()? as u64,
        delta: delta_nu(&coeffs[..coeffs.len() - 1]),
        eig1_absent,
    })
}

/// Everything the `spectrum` subcommand prints.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub report_version: u32,
    pub element: String,
    pub weight: String,
    pub characteristic: u32,
    pub modulus: u64,
    pub residues: Vec<u64>,
    pub has_one: bool,
    pub is_full: bool,
    pub spin_case: Option<String>,
}

/// Computes a spectrum and packages it for reporting; the spin case label is
/// attached for the top weight of family B.
pub fn spectrum_report(
    g: &SemisimpleElement,
    w: &Weight,
    p: u32,
) -> Result<SpectrumReport, SpectrumError> {
    let s = spectrum(g, w, p)?;
    let is_spin = g.group().family() == Family::B && w.single() == Some(g.group().rank());
    Ok(SpectrumReport {
        report_version: 1,
        element: g.to_string(),
        weight: w.to_string(),
        characteristic: p,
        modulus: s.modulus(),
        residues: s.values().iter().collect(),
        has_one: s.has_one(),
        is_full: s.is_full(),
        spin_case: if is_spin { Some(spin_case(g)?.to_string()) } else { None },
    })
}
