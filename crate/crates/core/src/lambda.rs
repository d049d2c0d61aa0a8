//! Derived subsets of `R(m)` built from the primitive roots `Φ(m)`.
//!
//! Three families, each with a brute-force construction and a closed form:
//!
//! - `Λ_i(Φ(m))`: products of `i` distinct primitive `m`-th roots. Closed
//!   form: `Φ(m)` at the boundary arities `1` and `φ(m)-1`, `{1}` at arity
//!   `φ(m)`, and `R(m)` in between, except `R(m) ∖ {1}` when the arity is
//!   odd and `m ∈ {5, 9, 15}`.
//! - `Λ*_3(Φ(m))`: products `η₁η₂η₃⁻¹` of distinct primitive roots, always
//!   all of `R(m)` for odd `m > 3`.
//! - `Δ(m)`: products of `φ(m)/2` primitive roots chosen one from each
//!   inverse pair. Closed form: `R(m)` unless `m ∈ {3, 5, 9}`, where the
//!   root `1` is unreachable.
//!
//! The brute-force constructions are the ground truth; the closed forms are
//! the artifact under test. Disagreements are reported by the identity
//! suite, never patched over.

use thiserror::Error;

use crate::cyclo::{gcd, phi, CycloError, RootExp, RootSet};

/// Largest totient accepted: keeps the `2^{φ(m)/2}` sign enumeration behind
/// `Δ(m)` within `2^22` choices. Odd moduli up to 45 stay within it.
pub const MAX_TOTIENT: u64 = 44;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LambdaError {
    #[error("modulus {0} must be odd")]
    NotOdd(u64),
    #[error("modulus {0} is below the smallest supported value {1}")]
    TooSmall(u64, u64),
    #[error("arity {arity} out of range 1..={max} for modulus {m}")]
    ArityOutOfRange { m: u64, arity: u64, max: u64 },
    #[error("totient {0} exceeds the enumeration limit {MAX_TOTIENT}")]
    EnumerationLimit(u64),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

fn check_odd(m: u64, min: u64) -> Result<(), LambdaError> {
    if m % 2 == 0 {
        return Err(LambdaError::NotOdd(m));
    }
    if m < min {
        return Err(LambdaError::TooSmall(m, min));
    }
    if phi(m) > MAX_TOTIENT {
        return Err(LambdaError::EnumerationLimit(phi(m)));
    }
    Ok(())
}

fn primitive_exponents(m: u64) -> Vec<u64> {
    (1..m).filter(|&e| gcd(e, m) == 1).collect()
}

/// Exponent sums over all `arity`-element subsets of `exps`: an exhaustive
/// subset-sum table over `Z/m` indexed by pick count, each element offered
/// once in turn. Equivalent to walking every combination, but the reachable
/// (count, sum) states are shared, so prime totients up to 42 stay cheap.
fn subset_sums(exps: &[u64], m: u64, arity: usize) -> RootSet {
    let mut table: Vec<RootSet> =
        (0..=arity).map(|_| RootSet::empty(m).expect("validated modulus")).collect();
    table[0] = RootSet::unit(m).expect("validated modulus");
    for &e in exps {
        for count in (0..arity).rev() {
            if !table[count].is_empty() {
                let shifted = table[count].shifted(e);
                table[count + 1].merge(&shifted);
            }
        }
    }
    table.swap_remove(arity)
}

/// `Λ_i(Φ(m))` by exhaustive subset-sum enumeration over `Φ(m)`.
pub fn lambda_brute(m: u64, arity: u64) -> Result<RootSet, LambdaError> {
    check_odd(m, 3)?;
    let k = phi(m);
    if arity == 0 || arity > k {
        return Err(LambdaError::ArityOutOfRange { m, arity, max: k });
    }
    Ok(subset_sums(&primitive_exponents(m), m, arity as usize))
}

/// `Λ_i(Φ(m))` by closed form.
///
/// The middle arities `2..=φ(m)-2` follow the product identity; the boundary
/// arities are fixed by the inversion symmetry `Λ_i = Λ_{φ(m)-i}⁻¹` and the
/// zero total exponent sum of `Φ(m)`. The modulus 3 has no middle arities
/// and is routed to brute force.
pub fn lambda_closed(m: u64, arity: u64) -> Result<RootSet, LambdaError> {
    check_odd(m, 3)?;
    let k = phi(m);
    if arity == 0 || arity > k {
        return Err(LambdaError::ArityOutOfRange { m, arity, max: k });
    }
    if m == 3 {
        return lambda_brute(m, arity);
    }
    if arity == k {
        return Ok(RootSet::unit(m)?);
    }
    if arity == 1 || arity == k - 1 {
        return Ok(RootSet::primitive_roots(m)?);
    }
    let all = RootSet::all_roots(m)?;
    if arity % 2 == 1 && matches!(m, 5 | 9 | 15) {
        Ok(all.without_unit())
    } else {
        Ok(all)
    }
}

/// `Λ*_3(Φ(m)) = {η₁η₂η₃⁻¹ : η₁, η₂, η₃ ∈ Φ(m) distinct}`.
pub fn lambda3_star(m: u64) -> Result<RootSet, LambdaError> {
    check_odd(m, 5)?;
    let exps = primitive_exponents(m);
    let mut out = RootSet::empty(m)?;
    for (a, &x) in exps.iter().enumerate() {
        for (b, &y) in exps.iter().enumerate() {
            if b == a {
                continue;
            }
            for (c, &z) in exps.iter().enumerate() {
                if c == a || c == b {
                    continue;
                }
                out.insert((x + y + (m - z)) % m);
            }
        }
    }
    Ok(out)
}

/// The `φ(m)/2` inverse pairs `{η, η⁻¹}` partitioning `Φ(m)`, ordered by
/// ascending smaller exponent.
pub fn inverse_pairs(m: u64) -> Result<Vec<(RootExp, RootExp)>, LambdaError> {
    check_odd(m, 3)?;
    let mut pairs = Vec::new();
    for e in 1..m {
        if gcd(e, m) == 1 && e < m - e {
            pairs.push((
                RootExp::new(m, e as i64).expect("valid modulus"),
                RootExp::new(m, (m - e) as i64).expect("valid modulus"),
            ));
        }
    }
    debug_assert_eq!(pairs.len() as u64, phi(m) / 2);
    Ok(pairs)
}

/// `Δ(m)` by brute force: one representative from each inverse pair,
/// `2^{φ(m)/2}` sign choices in total.
pub fn delta_brute(m: u64) -> Result<RootSet, LambdaError> {
    let pairs = inverse_pairs(m)?;
    let h = pairs.len();
    let mut out = RootSet::empty(m)?;
    for mask in 0u64..1 << h {
        let mut sum = 0u64;
        for (j, (a, b)) in pairs.iter().enumerate() {
            sum += if mask >> j & 1 == 1 { b.exponent() } else { a.exponent() };
        }
        out.insert(sum % m);
    }
    Ok(out)
}

/// `Δ(m)` by closed form: `R(m)` unless `m ∈ {3, 5, 9}`, where it is
/// `R(m) ∖ {1}`.
pub fn delta_closed(m: u64) -> Result<RootSet, LambdaError> {
    check_odd(m, 3)?;
    let all = RootSet::all_roots(m)?;
    if matches!(m, 3 | 5 | 9) {
        Ok(all.without_unit())
    } else {
        Ok(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{all_roots, primitive_roots};

    #[test]
    fn lambda_brute_examples() {
        assert_eq!(lambda_brute(5, 2).unwrap(), all_roots(5).unwrap());
        assert_eq!(lambda_brute(5, 3).unwrap(), all_roots(5).unwrap().without_unit());
        assert_eq!(lambda_brute(9, 1).unwrap(), primitive_roots(9).unwrap());
        assert!(matches!(lambda_brute(9, 7), Err(LambdaError::ArityOutOfRange { .. })));
        assert!(matches!(lambda_brute(6, 2), Err(LambdaError::NotOdd(6))));
    }

    #[test]
    fn lambda_closed_examples() {
        assert_eq!(lambda_closed(15, 3).unwrap(), all_roots(15).unwrap().without_unit());
        assert_eq!(lambda_closed(7, 4).unwrap(), all_roots(7).unwrap());
        assert_eq!(lambda_closed(9, 6).unwrap(), RootSet::unit(9).unwrap());
    }

    #[test]
    fn lambda_closed_routes_modulus_three_to_brute() {
        for i in 1..=2 {
            assert_eq!(lambda_closed(3, i).unwrap(), lambda_brute(3, i).unwrap());
        }
        assert_eq!(lambda_closed(3, 2).unwrap(), RootSet::unit(3).unwrap());
    }

    #[test]
    fn lambda3_star_examples() {
        assert_eq!(lambda3_star(5).unwrap(), all_roots(5).unwrap());
        assert_eq!(lambda3_star(9).unwrap(), all_roots(9).unwrap());
        // Enumerated over all ordered distinct triples of Φ(7).
        assert_eq!(lambda3_star(7).unwrap(), all_roots(7).unwrap());
    }

    #[test]
    fn inverse_pair_examples() {
        let show = |m: u64| {
            inverse_pairs(m)
                .unwrap()
                .into_iter()
                .map(|(a, b)| (a.exponent(), b.exponent()))
                .collect::<Vec<_>>()
        };
        assert_eq!(show(3), vec![(1, 2)]);
        assert_eq!(show(9), vec![(1, 8), (2, 7), (4, 5)]);
        assert_eq!(show(5), vec![(1, 4), (2, 3)]);
    }

    #[test]
    fn delta_examples() {
        // 2^3 = 8 sign choices at m = 9.
        assert_eq!(delta_brute(9).unwrap(), all_roots(9).unwrap().without_unit());
        assert_eq!(delta_brute(15).unwrap(), all_roots(15).unwrap());
        assert_eq!(delta_brute(3).unwrap(), all_roots(3).unwrap().without_unit());

        assert_eq!(delta_closed(45).unwrap(), all_roots(45).unwrap());
        assert_eq!(delta_closed(5).unwrap(), all_roots(5).unwrap().without_unit());
        assert_eq!(delta_closed(25).unwrap(), all_roots(25).unwrap());
    }

    #[test]
    fn delta_rejects_unit_modulus() {
        assert!(matches!(delta_brute(1), Err(LambdaError::TooSmall(1, 3))));
    }

    #[test]
    fn brute_equals_closed_for_all_arities() {
        for m in (3..=45u64).step_by(2) {
            for i in 1..=crate::cyclo::phi(m) {
                assert_eq!(
                    lambda_brute(m, i).unwrap(),
                    lambda_closed(m, i).unwrap(),
                    "m={m} i={i}"
                );
            }
        }
    }

    #[test]
    fn subset_sum_table_matches_combination_walk() {
        // Independent oracle on moduli small enough to walk every
        // combination explicitly.
        fn walk(exps: &[u64], m: u64, need: usize, start: usize, sum: u64, out: &mut RootSet) {
            if need == 0 {
                out.insert(sum % m);
                return;
            }
            for idx in start..=exps.len() - need {
                walk(exps, m, need - 1, idx + 1, sum + exps[idx], out);
            }
        }
        for m in [3u64, 5, 7, 9, 15, 21, 25] {
            let exps = primitive_exponents(m);
            for i in 1..=exps.len() {
                let mut expect = RootSet::empty(m).unwrap();
                walk(&exps, m, i, 0, 0, &mut expect);
                assert_eq!(lambda_brute(m, i as u64).unwrap(), expect, "m={m} i={i}");
            }
        }
    }

    #[test]
    fn delta_is_galois_closed() {
        for m in [3u64, 5, 9, 15, 21, 25, 27, 33, 45] {
            assert!(delta_brute(m).unwrap().is_galois_closed(), "m={m}");
        }
    }
}
