//! The root-of-unity identity suite: every closed form in [`crate::lambda`]
//! checked against its brute-force construction, plus the product identities
//! on `R(m)` and `Φ(m)`, over all odd moduli up to a bound.
//!
//! Each identity family carries a short rule id (`t11`, `rr1a`, `c55`, ...)
//! that the CLI and the verification reports use as a stable label.

use serde::Serialize;

use crate::cyclo::{all_roots, gcd, phi, primitive_roots};
use crate::lambda::{
    delta_brute, delta_closed, lambda3_star, lambda_brute, lambda_closed, LambdaError,
};

/// Outcome of one identity instance.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub rule: String,
    pub subject: String,
    pub ok: bool,
}

/// Everything the `lemmas` subcommand reports.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaSuiteReport {
    pub report_version: u32,
    pub max_m: u64,
    pub checks: Vec<IdentityCheck>,
    pub failures: u64,
    pub ok: bool,
}

fn push(checks: &mut Vec<IdentityCheck>, rule: &str, subject: String, ok: bool) {
    checks.push(IdentityCheck { rule: rule.to_string(), subject, ok });
}

/// `Φ(m)·Φ(m) = R(m)`.
pub fn check_t11(m: u64) -> Result<bool, LambdaError> {
    let p = primitive_roots(m)?;
    Ok(p.product(&p)? == all_roots(m)?)
}

/// `(R(m₁) ∖ 1)·(R(m₂) ∖ 1) = R(lcm)` whenever `gcd(m₁, m₂) > 1`.
pub fn check_t2p(m1: u64, m2: u64) -> Result<bool, LambdaError> {
    let a = all_roots(m1)?.without_unit();
    let b = all_roots(m2)?.without_unit();
    let l = m1 / gcd(m1, m2) * m2;
    Ok(a.product(&b)? == all_roots(l)?)
}

/// For every `ζ ∈ R(m)` some `η ∈ Φ(m)` has `ζη ∈ Φ(m)`, with `η ≠ ζ`
/// whenever `m > 3`.
pub fn check_b33(m: u64) -> Result<bool, LambdaError> {
    let prim = primitive_roots(m)?;
    Ok(all_roots(m)?.iter().all(|z| {
        prim.iter().any(|h| prim.contains((z + h) % m) && (m <= 3 || h != z))
    }))
}

/// `Λ₂(Φ(m)) = R(m)` for odd `m > 3`.
pub fn check_33a(m: u64) -> Result<bool, LambdaError> {
    Ok(lambda_brute(m, 2)? == all_roots(m)?)
}

/// Six distinct roots `η₁^{±1}, η₂^{±1}, η₃^{±1} ∈ Φ(m)` with
/// `η₁η₂η₃ = 1`, for odd `m ∉ {1, 3, 5, 9, 15}`.
pub fn check_333(m: u64) -> Result<bool, LambdaError> {
    let exps: Vec<u64> = primitive_roots(m)?.iter().collect();
    for (i, &a) in exps.iter().enumerate() {
        for &b in &exps[i + 1..] {
            let c = (2 * m - a - b) % m;
            if gcd(c, m) != 1 {
                continue;
            }
            let mut six = vec![a, m - a, b, m - b, c, m - c];
            six.sort_unstable();
            six.dedup();
            if six.len() == 6 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `Λ₃(Φ(m))` equals `R(m)`, or `R(m) ∖ 1` exactly for `m ∈ {5, 9, 15}`.
pub fn check_rr1a(m: u64) -> Result<bool, LambdaError> {
    let got = lambda_brute(m, 3)?;
    let expect = if matches!(m, 5 | 9 | 15) {
        all_roots(m)?.without_unit()
    } else {
        all_roots(m)?
    };
    Ok(got == expect)
}

/// `Λ*₃(Φ(m)) = R(m)` for odd `m > 3`.
pub fn check_rr1b(m: u64) -> Result<bool, LambdaError> {
    Ok(lambda3_star(m)? == all_roots(m)?)
}

/// `Λ₃(Φ(m)) ⊆ Λ_i(Φ(m))` for `3 < i ≤ φ(m) − 3` when `φ(m) > 6`.
pub fn check_222(m: u64) -> Result<bool, LambdaError> {
    let k = phi(m);
    let base = lambda_brute(m, 3)?;
    for i in 4..=k - 3 {
        if !base.is_subset(&lambda_brute(m, i)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `2 ≤ i ≤ φ(m) − 2`: `R(m) ∖ 1 ⊆ Λ_i(Φ(m))` and the closed form of
/// `Λ_i` is exact.
pub fn check_112(m: u64) -> Result<bool, LambdaError> {
    let punctured = all_roots(m)?.without_unit();
    for i in 2..=phi(m) - 2 {
        let brute = lambda_brute(m, i)?;
        if !punctured.is_subset(&brute)? || brute != lambda_closed(m, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `1 ∈ Δ(m)` for odd `m ∉ {1, 3, 5, 9}`.
pub fn check_ni5(m: u64) -> Result<bool, LambdaError> {
    Ok(delta_brute(m)?.contains_unit())
}

/// `Φ(m) ⊆ Δ(m)` for odd `m > 1`.
pub fn check_bt4(m: u64) -> Result<bool, LambdaError> {
    primitive_roots(m)?.is_subset(&delta_brute(m)?).map_err(Into::into)
}

/// `R(m) ∖ 1 ⊆ Δ(m)` for odd `m > 1`.
pub fn check_n66(m: u64) -> Result<bool, LambdaError> {
    Ok(all_roots(m)?.without_unit().is_subset(&delta_brute(m)?)?)
}

/// `Δ(m)` matches its closed form.
pub fn check_c55(m: u64) -> Result<bool, LambdaError> {
    Ok(delta_brute(m)? == delta_closed(m)?)
}

fn odd_moduli(max_m: u64) -> impl Iterator<Item = u64> {
    (3..=max_m).step_by(2)
}

/// Runs every identity family for all odd moduli `3 ≤ m ≤ max_m`.
pub fn run_suite(max_m: u64) -> Result<LemmaSuiteReport, LambdaError> {
    if max_m % 2 == 0 {
        return Err(LambdaError::NotOdd(max_m));
    }
    if max_m < 3 {
        return Err(LambdaError::TooSmall(max_m, 3));
    }

    let mut checks = Vec::new();
    for m in odd_moduli(max_m) {
        let subject = format!("m={m}");
        push(&mut checks, "t11", subject.clone(), check_t11(m)?);
        push(&mut checks, "b33", subject.clone(), check_b33(m)?);
        if m > 3 {
            push(&mut checks, "33a", subject.clone(), check_33a(m)?);
            push(&mut checks, "rr1a", subject.clone(), check_rr1a(m)?);
            push(&mut checks, "rr1b", subject.clone(), check_rr1b(m)?);
            push(&mut checks, "112", subject.clone(), check_112(m)?);
        }
        if !matches!(m, 3 | 5 | 9 | 15) {
            push(&mut checks, "333", subject.clone(), check_333(m)?);
        }
        if phi(m) > 6 {
            push(&mut checks, "222", subject.clone(), check_222(m)?);
        }
        if !matches!(m, 3 | 5 | 9) {
            push(&mut checks, "ni5", subject.clone(), check_ni5(m)?);
        }
        push(&mut checks, "bt4", subject.clone(), check_bt4(m)?);
        push(&mut checks, "n66", subject.clone(), check_n66(m)?);
        push(&mut checks, "c55", subject, check_c55(m)?);
    }
    for m1 in odd_moduli(max_m) {
        for m2 in odd_moduli(max_m).filter(|&m2| m2 >= m1) {
            if gcd(m1, m2) > 1 {
                push(&mut checks, "t2p", format!("m1={m1},m2={m2}"), check_t2p(m1, m2)?);
            }
        }
    }

    let failures = checks.iter().filter(|c| !c.ok).count() as u64;
    Ok(LemmaSuiteReport { report_version: 1, max_m, failures, ok: failures == 0, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_holds_up_to_15() {
        let report = run_suite(15).unwrap();
        assert!(report.ok, "failures: {:?}", report.checks.iter().filter(|c| !c.ok).collect::<Vec<_>>());
        assert!(report.checks.iter().any(|c| c.rule == "t2p" && c.subject == "m1=3,m2=9"));
    }

    #[test]
    fn suite_rejects_even_bound() {
        assert!(matches!(run_suite(4), Err(LambdaError::NotOdd(4))));
    }

    #[test]
    fn rule_333_fails_on_excluded_moduli() {
        // The six-distinct-roots product is genuinely impossible at m = 15.
        assert!(!check_333(15).unwrap());
        assert!(check_333(21).unwrap());
    }
}
