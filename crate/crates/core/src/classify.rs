//! Exhaustive verification of the eigenvalue-1 classification tables.
//!
//! For each supported theorem id the module enumerates every rational
//! odd-order element within rank and block-order bounds, computes the
//! relevant spectrum (or the characteristic-2 criterion), compares the
//! computed eigenvalue-1 status against the encoded exception table, and
//! aggregates the outcome into a [`VerificationReport`]. Mismatches are
//! data, never errors: a nonempty mismatch list means the table and the
//! computation disagree somewhere.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{gcd, phi};
use crate::elements::{ElementError, Family, GroupTag, OrbitBlock, SemisimpleElement};
use crate::spectra::{
    spectrum_exterior, spectrum_natural, spectrum_sp_fund, spectrum_spin_brute,
    spectrum_spin_closed, spin_case, spin_case_spectrum, sp2_eig1_absent, SpectrumError, SpinCase,
    Weight,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("rank range {lo}..={hi} is invalid for theorem {theorem}")]
    BadRanks { theorem: String, lo: u32, hi: u32 },
    #[error("max order must be odd and at least 3, got {0}")]
    BadMaxOrder(u64),
    #[error("theorem {theorem} is not defined in characteristic {got}")]
    BadCharacteristic { theorem: String, got: u32 },
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Cyclo(#[from] crate::cyclo::CycloError),
}

/// The verifiable statements, each binding a family, a weight shape and a
/// characteristic regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// `SL_n`, all fundamental weights.
    Th1,
    /// `SL_n`, natural-spectrum containment for all fundamental weights.
    Tt9,
    /// `SL_n`, third fundamental weight.
    Ts1,
    /// `SL_n`, middle fundamental weights `5..=n-5`.
    Om12,
    /// `Sp_2n` in characteristic ≠ 2, all fundamental weights.
    Th2Odd,
    /// `Sp_2n` in characteristic 2, top fundamental weight.
    Th2Char2Spin,
    /// `Sp_2n` in characteristic 2, `ω_1 + ω_n`.
    Th2Char2Mixed,
    /// `Spin_{2n+1}`, spin weight.
    Th3Spin,
    /// `Spin_{2n+1}`, `ω_1 + ω_n`.
    Th3Mixed,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::Th1,
        TheoremId::Tt9,
        TheoremId::Ts1,
        TheoremId::Om12,
        TheoremId::Th2Odd,
        TheoremId::Th2Char2Spin,
        TheoremId::Th2Char2Mixed,
        TheoremId::Th3Spin,
        TheoremId::Th3Mixed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Th1 => "th1",
            TheoremId::Tt9 => "tt9",
            TheoremId::Ts1 => "ts1",
            TheoremId::Om12 => "om12",
            TheoremId::Th2Odd => "th2-odd",
            TheoremId::Th2Char2Spin => "th2-char2-spin",
            TheoremId::Th2Char2Mixed => "th2-char2-mixed",
            TheoremId::Th3Spin => "th3-spin",
            TheoremId::Th3Mixed => "th3-mixed",
        }
    }

    pub fn parse(s: &str) -> Result<Self, ClassifyError> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| ClassifyError::UnknownTheorem(s.to_string()))
    }

    pub fn family(self) -> Family {
        match self {
            TheoremId::Th1 | TheoremId::Tt9 | TheoremId::Ts1 | TheoremId::Om12 => Family::A,
            TheoremId::Th2Odd | TheoremId::Th2Char2Spin | TheoremId::Th2Char2Mixed => Family::C,
            TheoremId::Th3Spin | TheoremId::Th3Mixed => Family::B,
        }
    }

    /// Default rank window: wide enough to witness every table entry.
    pub fn default_ranks(self) -> (u32, u32) {
        match self {
            TheoremId::Th1 | TheoremId::Tt9 => (2, 14),
            TheoremId::Ts1 => (5, 14),
            TheoremId::Om12 => (10, 14),
            TheoremId::Th2Odd | TheoremId::Th2Char2Spin | TheoremId::Th2Char2Mixed => (2, 8),
            TheoremId::Th3Spin | TheoremId::Th3Mixed => (3, 12),
        }
    }

    pub fn default_characteristic(self) -> u32 {
        match self {
            TheoremId::Th2Char2Spin | TheoremId::Th2Char2Mixed => 2,
            _ => 0,
        }
    }

    pub fn default_bounds(self) -> Bounds {
        let (rank_lo, rank_hi) = self.default_ranks();
        Bounds { rank_lo, rank_hi, max_order: 45, characteristic: self.default_characteristic() }
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Bounds {
    pub rank_lo: u32,
    pub rank_hi: u32,
    pub max_order: u64,
    pub characteristic: u32,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mismatch {
    pub element: String,
    pub weight: String,
    pub kind: String,
    pub predicted: bool,
    pub computed: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExceptionCase {
    pub element: String,
    pub weight: String,
    pub rule: String,
    pub order: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub report_version: u32,
    pub theorem: String,
    pub bounds: Bounds,
    pub elements_checked: u64,
    pub cases_checked: u64,
    pub exceptions: Vec<ExceptionCase>,
    pub mismatches: Vec<Mismatch>,
    pub rule_counts: BTreeMap<String, u64>,
    pub expected_rules: Vec<String>,
    pub missing_rules: Vec<String>,
    pub ok: bool,
}

/// All rational odd-order elements of the group with every block order odd
/// and at most `max_order`: every multiset of orbit blocks fitting the
/// natural dimension, the remainder filled with trivial eigenvalues.
/// Deterministic order, no duplicates.
pub fn enumerate_rational(
    group: GroupTag,
    max_order: u64,
) -> Result<Vec<SemisimpleElement>, ClassifyError> {
    if max_order % 2 == 0 || max_order < 3 {
        return Err(ClassifyError::BadMaxOrder(max_order));
    }
    let dim = group.natural_dim();
    let parts: Vec<(u64, u32)> = (3..=max_order)
        .step_by(2)
        .filter_map(|m| {
            let ph = phi(m) as u32;
            (ph <= dim).then_some((m, ph))
        })
        .collect();

    fn rec(
        group: GroupTag,
        parts: &[(u64, u32)],
        idx: usize,
        remaining: u32,
        stack: &mut Vec<OrbitBlock>,
        out: &mut Vec<SemisimpleElement>,
    ) {
        if idx == parts.len() {
            let g = SemisimpleElement::new(group, stack.iter().copied(), remaining)
                .expect("enumerated blocks are always valid");
            out.push(g);
            return;
        }
        let (m, ph) = parts[idx];
        rec(group, parts, idx + 1, remaining, stack, out);
        for count in 1..=remaining / ph {
            stack.push(OrbitBlock::new(m, count));
            rec(group, parts, idx + 1, remaining - count * ph, stack, out);
            stack.pop();
        }
    }

    let mut out = Vec::new();
    rec(group, &parts, 0, dim, &mut Vec::new(), &mut out);
    out.sort_by_key(|g| g.to_string());
    Ok(out)
}

/// Independent count of the enumeration by a generating-function pass:
/// the number of orbit multisets per occupied dimension, summed over the
/// trivial multiplicities the family parity admits.
pub fn count_rational(group: GroupTag, max_order: u64) -> Result<u64, ClassifyError> {
    if max_order % 2 == 0 || max_order < 3 {
        return Err(ClassifyError::BadMaxOrder(max_order));
    }
    let dim = group.natural_dim() as usize;
    let mut dp = vec![0u64; dim + 1];
    dp[0] = 1;
    for m in (3..=max_order).step_by(2) {
        let ph = phi(m) as usize;
        if ph > dim {
            continue;
        }
        for d in ph..=dim {
            dp[d] += dp[d - ph];
        }
    }
    let valid = |trivial: usize| match group.family() {
        Family::A => true,
        Family::B => trivial % 2 == 1,
        Family::C => trivial % 2 == 0,
    };
    Ok((0..=dim).filter(|&d| valid(dim - d)).map(|d| dp[d]).sum())
}

fn blocks_are(g: &SemisimpleElement, pattern: &[(u64, u32)]) -> bool {
    g.trivial_count() == 0
        && g.blocks().iter().map(|b| (b.m, b.count)).eq(pattern.iter().copied())
}

/// Orbit orders `m ∈ {3, 5, 9}` occurring exactly once and coprime to every
/// other block; sorted. These are the orbits whose deficiency survives in
/// product formulas, and exactly the orders of the singular blocks of a
/// characteristic-2 symplectic element.
fn deficient_candidates(g: &SemisimpleElement) -> Vec<u64> {
    let mut orders = Vec::new();
    for b in g.blocks() {
        for _ in 0..b.count {
            orders.push(b.m);
        }
    }
    let mut out: Vec<u64> = orders
        .iter()
        .enumerate()
        .filter(|(i, &m)| {
            matches!(m, 3 | 5 | 9)
                && orders.iter().enumerate().all(|(j, &o)| j == *i || gcd(m, o) == 1)
        })
        .map(|(_, &m)| m)
        .collect();
    out.sort_unstable();
    out
}

/// Exactly two diagonal entries of order divisible by 3: a single `Φ(3)`
/// orbit and no other block order divisible by 3.
fn exactly_two_order3_entries(g: &SemisimpleElement) -> bool {
    let entries: u32 = g
        .blocks()
        .iter()
        .filter(|b| b.m % 3 == 0)
        .map(|b| b.count * phi(b.m) as u32)
        .sum();
    entries == 2
}

fn th1_rule(g: &SemisimpleElement, i: u32) -> Option<String> {
    let n = g.group().param();
    if g.trivial_count() == 0 && (i == 1 || i == n - 1) {
        return Some("th1(1)".into());
    }
    let hit = |pattern: &[(u64, u32)], ws: &[u32]| blocks_are(g, pattern) && ws.contains(&i);
    if n == 6 && hit(&[(9, 1)], &[3]) {
        Some("th1(2)".into())
    } else if n == 6 && hit(&[(3, 1), (5, 1)], &[3]) {
        Some("th1(3)".into())
    } else if n == 8 && hit(&[(15, 1)], &[3, 5]) {
        Some("th1(4)".into())
    } else if n == 8 && hit(&[(3, 2), (5, 1)], &[3, 5]) {
        Some("th1(5)".into())
    } else if n == 10 && hit(&[(5, 1), (9, 1)], &[3, 5, 7]) {
        Some("th1(6)".into())
    } else if n == 14 && hit(&[(9, 1), (15, 1)], &[3, 11]) {
        Some("th1(7)".into())
    } else {
        None
    }
}

fn ts1_rule(g: &SemisimpleElement) -> Option<String> {
    let n = g.group().param();
    match n {
        6 if blocks_are(g, &[(9, 1)]) => Some("ts1(1)".into()),
        6 if blocks_are(g, &[(3, 1), (5, 1)]) => Some("ts1(2)".into()),
        8 if blocks_are(g, &[(15, 1)]) => Some("ts1(3)".into()),
        8 if blocks_are(g, &[(3, 2), (5, 1)]) => Some("ts1(4)".into()),
        10 if blocks_are(g, &[(5, 1), (9, 1)]) => Some("ts1(5)".into()),
        14 if blocks_are(g, &[(9, 1), (15, 1)]) => Some("ts1(6)".into()),
        _ => None,
    }
}

fn om12_rule(g: &SemisimpleElement, i: u32) -> Option<String> {
    (g.group().param() == 10 && blocks_are(g, &[(5, 1), (9, 1)]) && i == 5)
        .then(|| "om12".to_string())
}

fn th2_odd_rule(g: &SemisimpleElement, i: u32) -> Option<String> {
    let n = g.group().param();
    if i == 1 && g.trivial_count() == 0 {
        return Some("th2(A)".into());
    }
    if i == 3 {
        let item = match n {
            3 if blocks_are(g, &[(9, 1)]) => Some(1),
            3 if blocks_are(g, &[(3, 1), (5, 1)]) => Some(2),
            4 if blocks_are(g, &[(15, 1)]) => Some(3),
            4 if blocks_are(g, &[(3, 2), (5, 1)]) => Some(4),
            5 if blocks_are(g, &[(5, 1), (9, 1)]) => Some(5),
            7 if blocks_are(g, &[(9, 1), (15, 1)]) => Some(6),
            _ => None,
        };
        if let Some(k) = item {
            return Some(format!("th2(B)({k})"));
        }
    }
    if i == 5 && n == 5 && blocks_are(g, &[(5, 1), (9, 1)]) {
        return Some("th2(C)".into());
    }
    None
}

fn th2_d_rule(g: &SemisimpleElement) -> Option<String> {
    match deficient_candidates(g).as_slice() {
        [m] => Some(format!("th2(D)(1) m={m}")),
        [3, 5] => Some("th2(D)(2) m=3,5".into()),
        [5, 9] => Some("th2(D)(2) m=5,9".into()),
        _ => None,
    }
}

fn th2_e_rule(g: &SemisimpleElement) -> Option<String> {
    match deficient_candidates(g).as_slice() {
        [3, 5] => Some("th2(E)(1)".into()),
        [5, 9] => Some("th2(E)(2)".into()),
        _ => None,
    }
}

fn th3_spin_rule(case: SpinCase) -> Option<String> {
    match case {
        SpinCase::Full => None,
        SpinCase::Case2(m) => Some(format!("th3(A)(1) m={m}")),
        SpinCase::Case3(m) => Some(format!("th3(A)(2) m={m}")),
    }
}

fn th3_mixed_rule(case: SpinCase) -> Option<String> {
    match case {
        SpinCase::Case3(m) => Some(format!("th3(B) m={m}")),
        _ => None,
    }
}

/// The table rules instantiable inside the given bounds; used for the
/// completeness half of a verification.
pub fn expected_rules(theorem: TheoremId, bounds: &Bounds) -> Vec<String> {
    // (rule, smallest witnessing rank, rank fixed?, rank parity constraint
    // for padded rules, largest block order needed)
    struct Row {
        rule: &'static str,
        n: u32,
        fixed: bool,
        even_only: bool,
        max_m: u64,
    }
    let row = |rule, n, fixed, even_only, max_m| Row { rule, n, fixed, even_only, max_m };
    let rows: Vec<Row> = match theorem {
        TheoremId::Th1 => vec![
            row("th1(1)", 2, false, true, 3),
            row("th1(2)", 6, true, false, 9),
            row("th1(3)", 6, true, false, 5),
            row("th1(4)", 8, true, false, 15),
            row("th1(5)", 8, true, false, 5),
            row("th1(6)", 10, true, false, 9),
            row("th1(7)", 14, true, false, 15),
        ],
        TheoremId::Ts1 => vec![
            row("ts1(1)", 6, true, false, 9),
            row("ts1(2)", 6, true, false, 5),
            row("ts1(3)", 8, true, false, 15),
            row("ts1(4)", 8, true, false, 5),
            row("ts1(5)", 10, true, false, 9),
            row("ts1(6)", 14, true, false, 15),
        ],
        TheoremId::Om12 => vec![row("om12", 10, true, false, 9)],
        TheoremId::Tt9 => vec![],
        TheoremId::Th2Odd => vec![
            row("th2(A)", 2, false, false, 3),
            row("th2(B)(1)", 3, true, false, 9),
            row("th2(B)(2)", 3, true, false, 5),
            row("th2(B)(3)", 4, true, false, 15),
            row("th2(B)(4)", 4, true, false, 5),
            row("th2(B)(5)", 5, true, false, 9),
            row("th2(B)(6)", 7, true, false, 15),
            row("th2(C)", 5, true, false, 9),
        ],
        TheoremId::Th2Char2Spin => vec![
            row("th2(D)(1) m=3", 2, false, false, 3),
            row("th2(D)(1) m=5", 2, false, false, 5),
            row("th2(D)(1) m=9", 3, false, false, 9),
            row("th2(D)(2) m=3,5", 3, false, false, 5),
            row("th2(D)(2) m=5,9", 5, false, false, 9),
        ],
        TheoremId::Th2Char2Mixed => vec![
            row("th2(E)(1)", 3, false, false, 5),
            row("th2(E)(2)", 5, false, false, 9),
        ],
        TheoremId::Th3Spin => vec![
            row("th3(A)(1) m=3", 3, false, false, 3),
            row("th3(A)(1) m=5", 3, false, false, 5),
            row("th3(A)(1) m=9", 3, false, false, 9),
            row("th3(A)(2) m=3", 3, false, false, 5),
            row("th3(A)(2) m=9", 5, false, false, 9),
        ],
        TheoremId::Th3Mixed => vec![
            row("th3(B) m=3", 3, false, false, 5),
            row("th3(B) m=9", 5, false, false, 9),
        ],
    };
    rows.into_iter()
        .filter(|r| r.max_m <= bounds.max_order)
        .filter(|r| {
            if r.fixed {
                bounds.rank_lo <= r.n && r.n <= bounds.rank_hi
            } else if r.even_only {
                // Smallest even rank at or above the row minimum.
                let lo = bounds.rank_lo.max(r.n);
                let lo = if lo % 2 == 0 { lo } else { lo + 1 };
                lo <= bounds.rank_hi
            } else {
                bounds.rank_lo.max(r.n) <= bounds.rank_hi
            }
        })
        .map(|r| r.rule.to_string())
        .collect()
}

struct Outcome {
    cases: u64,
    exceptions: Vec<ExceptionCase>,
    mismatches: Vec<Mismatch>,
}

fn record(
    out: &mut Outcome,
    g: &SemisimpleElement,
    weight: String,
    rule: Option<String>,
    computed: bool,
) {
    out.cases += 1;
    let predicted = rule.is_some();
    if predicted != computed {
        out.mismatches.push(Mismatch {
            element: g.to_string(),
            weight,
            kind: "eig1".into(),
            predicted,
            computed,
        });
        return;
    }
    if let Some(rule) = rule {
        out.exceptions.push(ExceptionCase {
            element: g.to_string(),
            weight,
            rule,
            order: g.order(),
        });
    }
}

fn structural_mismatch(out: &mut Outcome, g: &SemisimpleElement, weight: &str, kind: &str) {
    out.mismatches.push(Mismatch {
        element: g.to_string(),
        weight: weight.to_string(),
        kind: kind.to_string(),
        predicted: true,
        computed: false,
    });
}

fn process_element(
    theorem: TheoremId,
    g: &SemisimpleElement,
    p: u32,
) -> Result<Outcome, ClassifyError> {
    let mut out = Outcome { cases: 0, exceptions: Vec::new(), mismatches: Vec::new() };
    let n = g.group().param();
    match theorem {
        TheoremId::Th1 => {
            for i in 1..n {
                let computed = !spectrum_exterior(g, i)?.has_one();
                record(&mut out, g, Weight::fundamental(i).to_string(), th1_rule(g, i), computed);
            }
        }
        TheoremId::Ts1 => {
            let s3 = spectrum_exterior(g, 3)?;
            record(&mut out, g, Weight::fundamental(3).to_string(), ts1_rule(g), !s3.has_one());
            // Every primitive eigenvalue of the natural module reappears.
            out.cases += 1;
            if !spectrum_natural(g)?.values().is_subset(s3.values())? {
                structural_mismatch(&mut out, g, "fund:3", "containment");
            }
        }
        TheoremId::Om12 => {
            for i in 5..=n.saturating_sub(5) {
                let computed = !spectrum_exterior(g, i)?.has_one();
                record(&mut out, g, Weight::fundamental(i).to_string(), om12_rule(g, i), computed);
            }
        }
        TheoremId::Tt9 => {
            let natural = spectrum_natural(g)?;
            for i in 1..n {
                out.cases += 1;
                let contained = natural.values().is_subset(spectrum_exterior(g, i)?.values())?;
                if contained {
                    continue;
                }
                let in_shape = n % 2 == 0 && i % 2 == 0 && exactly_two_order3_entries(g);
                if in_shape {
                    out.exceptions.push(ExceptionCase {
                        element: g.to_string(),
                        weight: Weight::fundamental(i).to_string(),
                        rule: "tt9".into(),
                        order: g.order(),
                    });
                } else {
                    out.mismatches.push(Mismatch {
                        element: g.to_string(),
                        weight: Weight::fundamental(i).to_string(),
                        kind: "containment".into(),
                        predicted: false,
                        computed: true,
                    });
                }
            }
        }
        TheoremId::Th2Odd => {
            for i in 1..=n {
                let computed = !spectrum_sp_fund(g, i, p)?.has_one();
                record(&mut out, g, Weight::fundamental(i).to_string(), th2_odd_rule(g, i), computed);
            }
        }
        TheoremId::Th2Char2Spin => {
            let weight = Weight::fundamental(n).to_string();
            let si = g.singular_count()? as u64;
            // Si(g) ≤ 2, singular blocks only of shape (1,3), (2,5), (3,9),
            // and a pair of singular orders always contains 5.
            let singular = g.singular_blocks()?;
            if si > 2 {
                structural_mismatch(&mut out, g, &weight, "si-bound");
            }
            if !singular.iter().all(|b| matches!((b.d, b.m), (1, 3) | (2, 5) | (3, 9))) {
                structural_mismatch(&mut out, g, &weight, "si-shape");
            }
            if si == 2 && !singular.iter().any(|b| b.m == 5) {
                structural_mismatch(&mut out, g, &weight, "si-pair");
            }
            let cands = deficient_candidates(g);
            if cands.len() as u64 != si {
                structural_mismatch(&mut out, g, &weight, "si-structure");
            }
            // ω = ω_n has δ(ν) = 0, so the eigenvalue 1 is absent iff Si ≥ 1.
            let mut coeffs = vec![0u32; n as usize];
            coeffs[n as usize - 1] = 1;
            let computed = sp2_eig1_absent(g, &coeffs)?;
            record(&mut out, g, weight, th2_d_rule(g), computed);
        }
        TheoremId::Th2Char2Mixed => {
            let weight = Weight::sum_two(1, n).to_string();
            let mut coeffs = vec![0u32; n as usize];
            coeffs[0] = 1;
            coeffs[n as usize - 1] += 1;
            let computed = sp2_eig1_absent(g, &coeffs)?;
            record(&mut out, g, weight, th2_e_rule(g), computed);
        }
        TheoremId::Th3Spin => {
            let weight = Weight::fundamental(n).to_string();
            let brute = spectrum_spin_brute(g)?;
            let case = spin_case(g)?;
            if spectrum_spin_closed(g)? != brute {
                structural_mismatch(&mut out, g, &weight, "spin-closed");
            }
            if spin_case_spectrum(g, case)? != brute {
                structural_mismatch(&mut out, g, &weight, "spin-case");
            }
            record(&mut out, g, weight, th3_spin_rule(case), !brute.has_one());
        }
        TheoremId::Th3Mixed => {
            let weight = Weight::sum_two(1, n).to_string();
            let brute = spectrum_spin_brute(g)?;
            let product = spectrum_natural(g)?.values().product(brute.values())?;
            let case = spin_case(g)?;
            // ω_1 + ω_n yields the full set except on surviving-pair
            // elements, where exactly the roots of order dividing
            // |g|/(5m) are missing.
            let expect = match case {
                SpinCase::Case3(m) => {
                    let order = g.order();
                    crate::cyclo::RootSet::all_roots(order)?.difference(
                        &crate::cyclo::RootSet::all_roots(order / (5 * m))?.rescaled(order)?,
                    )?
                }
                _ => crate::cyclo::RootSet::all_roots(g.order())?,
            };
            if product != expect {
                structural_mismatch(&mut out, g, &weight, "product-set");
            }
            record(&mut out, g, weight, th3_mixed_rule(case), !product.contains_unit());
        }
    }
    Ok(out)
}

fn validate(theorem: TheoremId, bounds: &Bounds) -> Result<(), ClassifyError> {
    let min_rank = match theorem.family() {
        Family::A | Family::C => 2,
        Family::B => 3,
    };
    if bounds.rank_lo < min_rank || bounds.rank_lo > bounds.rank_hi {
        return Err(ClassifyError::BadRanks {
            theorem: theorem.as_str().into(),
            lo: bounds.rank_lo,
            hi: bounds.rank_hi,
        });
    }
    if bounds.max_order % 2 == 0 || bounds.max_order < 3 {
        return Err(ClassifyError::BadMaxOrder(bounds.max_order));
    }
    let p = bounds.characteristic;
    let bad = match theorem {
        TheoremId::Th2Char2Spin | TheoremId::Th2Char2Mixed => p != 2,
        TheoremId::Th2Odd | TheoremId::Th3Spin | TheoremId::Th3Mixed => p == 2,
        TheoremId::Th1 | TheoremId::Tt9 | TheoremId::Ts1 | TheoremId::Om12 => false,
    };
    if bad {
        return Err(ClassifyError::BadCharacteristic { theorem: theorem.as_str().into(), got: p });
    }
    Ok(())
}

/// Runs a full verification: enumerate, compute, compare, aggregate.
///
/// `jobs` splits the element list across that many threads; the merged
/// report is identical for every job count.
pub fn verify(
    theorem: TheoremId,
    bounds: Bounds,
    jobs: usize,
) -> Result<VerificationReport, ClassifyError> {
    validate(theorem, &bounds)?;
    let jobs = jobs.max(1);
    let p = bounds.characteristic;

    let mut elements = Vec::new();
    for n in bounds.rank_lo..=bounds.rank_hi {
        let group = GroupTag::new(theorem.family(), n)?;
        elements.extend(enumerate_rational(group, bounds.max_order)?);
    }

    let results: Vec<Result<Vec<Outcome>, ClassifyError>> = if jobs == 1 {
        vec![elements.iter().map(|g| process_element(theorem, g, p)).collect()]
    } else {
        let chunk = elements.len().div_ceil(jobs).max(1);
        std::thread::scope(|scope| {
            let handles: Vec<_> = elements
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter().map(|g| process_element(theorem, g, p)).collect()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("verification worker panicked")).collect()
        })
    };

    let mut cases = 0u64;
    let mut exceptions = Vec::new();
    let mut mismatches = Vec::new();
    for outcome in results {
        for o in outcome? {
            cases += o.cases;
            exceptions.extend(o.exceptions);
            mismatches.extend(o.mismatches);
        }
    }
    exceptions.sort();
    mismatches.sort();

    let mut rule_counts = BTreeMap::new();
    for e in &exceptions {
        *rule_counts.entry(e.rule.clone()).or_insert(0u64) += 1;
    }
    let expected = expected_rules(theorem, &bounds);
    let missing: Vec<String> =
        expected.iter().filter(|r| !rule_counts.contains_key(*r)).cloned().collect();
    let ok = mismatches.is_empty() && missing.is_empty();

    Ok(VerificationReport {
        report_version: 1,
        theorem: theorem.as_str().into(),
        bounds,
        elements_checked: elements.len() as u64,
        cases_checked: cases,
        exceptions,
        mismatches,
        rule_counts,
        expected_rules: expected,
        missing_rules: missing,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(s: &str) -> SemisimpleElement {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_small_cases() {
        let group = GroupTag::new(Family::A, 2).unwrap();
        let got = enumerate_rational(group, 45).unwrap();
        let syntaxes: Vec<String> = got.iter().map(|g| g.to_string()).collect();
        // Only the identity and the single Φ(3) element fit in dimension 2.
        assert_eq!(syntaxes, vec!["a:2:1*2", "a:2:phi(3)"]);

        let group = GroupTag::new(Family::A, 6).unwrap();
        let got = enumerate_rational(group, 9).unwrap();
        let syntaxes: Vec<String> = got.iter().map(|g| g.to_string()).collect();
        assert!(syntaxes.contains(&"a:6:phi(9)".to_string()));
        assert!(syntaxes.contains(&"a:6:phi(3)*3".to_string()));
        assert!(syntaxes.contains(&"a:6:phi(3)*2+1*2".to_string()));
        assert_eq!(got.len() as u64, count_rational(group, 9).unwrap());
    }

    #[test]
    fn enumeration_b3_lists_all_odd_fillings() {
        // Dimension 7 leaves room for one orbit of size up to 6 or up to
        // three Φ(3) orbits; the trivial multiplicity is always odd.
        let group = GroupTag::new(Family::B, 3).unwrap();
        let got: Vec<String> =
            enumerate_rational(group, 9).unwrap().iter().map(|g| g.to_string()).collect();
        assert_eq!(
            got,
            vec![
                "b:7:1*7",
                "b:7:phi(3)*2+1*3",
                "b:7:phi(3)*3+1",
                "b:7:phi(3)+1*5",
                "b:7:phi(3)+phi(5)+1",
                "b:7:phi(5)+1*3",
                "b:7:phi(7)+1",
                "b:7:phi(9)+1",
            ]
        );
        assert!(got.iter().all(|s| s.parse::<SemisimpleElement>().is_ok()));
    }

    #[test]
    fn tables_are_stable_under_a_larger_order_bound() {
        // Every odd m > 45 has φ(m) > 14, so raising the order bound adds
        // no elements at these ranks: the default bound already covers every
        // rational odd-order element of the enumerated groups.
        let tight = Bounds { rank_lo: 5, rank_hi: 8, max_order: 45, characteristic: 0 };
        let loose = Bounds { rank_lo: 5, rank_hi: 8, max_order: 99, characteristic: 0 };
        let a = verify(TheoremId::Ts1, tight, 2).unwrap();
        let b = verify(TheoremId::Ts1, loose, 2).unwrap();
        assert!(b.ok);
        assert_eq!(a.exceptions, b.exceptions);
        assert_eq!(a.elements_checked, b.elements_checked);
        for m in (47..=99u64).step_by(2) {
            assert!(phi(m) > 14, "m={m}");
        }
    }

    #[test]
    fn th2_odd_is_characteristic_independent_away_from_two() {
        // Exterior weight sets do not depend on the characteristic, so the
        // whole verification agrees at p = 0, 3, 5.
        let base = Bounds { rank_lo: 2, rank_hi: 5, max_order: 45, characteristic: 0 };
        let r0 = verify(TheoremId::Th2Odd, base, 2).unwrap();
        for p in [3, 5] {
            let bounds = Bounds { characteristic: p, ..base };
            let rp = verify(TheoremId::Th2Odd, bounds, 2).unwrap();
            assert!(rp.ok);
            assert_eq!(rp.exceptions, r0.exceptions);
        }
    }

    #[test]
    fn enumeration_matches_generating_function_count() {
        for (family, n) in [(Family::A, 9), (Family::B, 4), (Family::C, 5)] {
            let group = GroupTag::new(family, n).unwrap();
            let listed = enumerate_rational(group, 45).unwrap();
            assert_eq!(listed.len() as u64, count_rational(group, 45).unwrap(), "{family} n={n}");
            // No duplicates.
            let mut syntaxes: Vec<String> = listed.iter().map(|g| g.to_string()).collect();
            syntaxes.dedup();
            assert_eq!(syntaxes.len(), listed.len());
        }
    }

    #[test]
    fn predicted_rules_th1() {
        let g = elem("a:8:phi(15)");
        assert_eq!(th1_rule(&g, 5).as_deref(), Some("th1(4)"));
        assert_eq!(th1_rule(&g, 4), None);
        assert_eq!(th1_rule(&g, 7).as_deref(), Some("th1(1)"));

        let g = elem("a:14:phi(15)+phi(9)");
        assert_eq!(th1_rule(&g, 11).as_deref(), Some("th1(7)"));
        assert_eq!(th1_rule(&g, 5), None);
    }

    #[test]
    fn predicted_rules_th2() {
        let g = elem("c:14:phi(15)+phi(9)");
        assert_eq!(th2_odd_rule(&g, 3).as_deref(), Some("th2(B)(6)"));
        // Without trivial eigenvalues the natural weight is itself
        // exceptional, and any other middle weight is not.
        assert_eq!(th2_odd_rule(&g, 1).as_deref(), Some("th2(A)"));
        assert_eq!(th2_odd_rule(&g, 2), None);
        assert_eq!(th2_odd_rule(&elem("c:14:phi(15)+phi(9)+1*0"), 4), None);

        let g = elem("c:10:phi(5)+phi(7)");
        assert_eq!(th2_d_rule(&g).as_deref(), Some("th2(D)(1) m=5"));

        let g = elem("c:16:phi(5)+phi(9)+phi(7)");
        assert_eq!(th2_e_rule(&g).as_deref(), Some("th2(E)(2)"));

        let g = elem("c:8:phi(3)+phi(9)");
        assert_eq!(th2_d_rule(&g), None);
        assert_eq!(deficient_candidates(&g), Vec::<u64>::new());
    }

    #[test]
    fn verify_th1_narrow_window() {
        let bounds = Bounds { rank_lo: 5, rank_hi: 6, max_order: 9, characteristic: 0 };
        let report = verify(TheoremId::Th1, bounds, 1).unwrap();
        assert!(report.mismatches.is_empty(), "mismatches: {:?}", report.mismatches);
        assert!(report.rule_counts.contains_key("th1(2)"));
        assert_eq!(report.missing_rules, Vec::<String>::new());
    }

    #[test]
    fn verify_is_job_count_invariant() {
        let bounds = Bounds { rank_lo: 3, rank_hi: 6, max_order: 15, characteristic: 0 };
        let one = verify(TheoremId::Th1, bounds, 1).unwrap();
        let four = verify(TheoremId::Th1, bounds, 4).unwrap();
        assert_eq!(crate::canonical_json(&one), crate::canonical_json(&four));
    }

    #[test]
    fn verify_rejects_bad_bounds() {
        let bounds = Bounds { rank_lo: 5, rank_hi: 4, max_order: 45, characteristic: 0 };
        assert!(matches!(
            verify(TheoremId::Th1, bounds, 1),
            Err(ClassifyError::BadRanks { .. })
        ));
        let bounds = Bounds { rank_lo: 2, rank_hi: 4, max_order: 44, characteristic: 0 };
        assert!(matches!(verify(TheoremId::Th1, bounds, 1), Err(ClassifyError::BadMaxOrder(44))));
        let bounds = Bounds { rank_lo: 2, rank_hi: 4, max_order: 45, characteristic: 2 };
        assert!(matches!(
            verify(TheoremId::Th2Odd, bounds, 1),
            Err(ClassifyError::BadCharacteristic { .. })
        ));
    }

    #[test]
    fn expected_rules_follow_the_window() {
        let bounds = Bounds { rank_lo: 2, rank_hi: 6, max_order: 45, characteristic: 0 };
        let rules = expected_rules(TheoremId::Th1, &bounds);
        assert_eq!(rules, vec!["th1(1)", "th1(2)", "th1(3)"]);

        let bounds = Bounds { rank_lo: 3, rank_hi: 3, max_order: 45, characteristic: 0 };
        assert_eq!(expected_rules(TheoremId::Th1, &bounds), Vec::<String>::new());

        // Order bound filters out the 15-orbit families.
        let bounds = Bounds { rank_lo: 2, rank_hi: 14, max_order: 9, characteristic: 0 };
        let rules = expected_rules(TheoremId::Th1, &bounds);
        assert!(!rules.contains(&"th1(4)".to_string()));
        assert!(rules.contains(&"th1(6)".to_string()));
    }

    #[test]
    fn char2_spin_examples() {
        // One singular block of order 5 next to a split Φ(7) block.
        let g = elem("c:10:phi(5)+phi(7)");
        assert_eq!(g.singular_count().unwrap(), 1);
        assert_eq!(th2_d_rule(&g).as_deref(), Some("th2(D)(1) m=5"));

        // Orders 3 and 9 are not coprime, so nothing is singular.
        let g = elem("c:8:phi(3)+phi(9)");
        assert_eq!(g.singular_count().unwrap(), 0);
    }
}
