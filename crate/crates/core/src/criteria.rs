//! Necessary-condition checkers for hyponormality and quasinormality of
//! `T_φ` with two-term symbols `φ = a z^p z̄^n + b z^s z̄^t` (`p ≥ n`, `t ≥ s`),
//! and for the one-parameter family `φ = z^n + C|z|^{2s}`.
//!
//! Every checker evaluates its inequality or identity exactly at an integer
//! probe `k` and carries the matching value of the quadratic-form engine as
//! a cross-check.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fock::{hyponormality_form, quasinormality_defect, AnalyticPoly, FockParams, MixedSymbol, MixedTerm};
use crate::scalar::{factorial_int, rational_from_big, rational_from_int, rational_str, GaussianRational, PiScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("probe k = {k} too small: the checker needs k > {bound} ({rule})")]
    ProbeTooSmall { k: u32, bound: u32, rule: &'static str },
    #[error("empty probe range")]
    EmptyRange,
    #[error("symbol is not of the form a z^p zb^n + b z^s zb^t: {0}")]
    NotTwoTerm(String),
    #[error("internal error: factorial of negative argument {0}")]
    NegativeFactorial(i64),
}

type Result<T> = std::result::Result<T, CriteriaError>;

/// `n!` for a signed argument; a negative argument is an internal error.
fn fact(n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(CriteriaError::NegativeFactorial(n));
    }
    Ok(factorial_int(n as u64))
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

/// Coefficients and exponents of `a z^p z̄^n + b z^s z̄^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermSymbolParams {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub p: u32,
    pub n: u32,
    pub s: u32,
    pub t: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HypoCase {
    /// `t > s+1`, `p = n+1`
    H1,
    /// `t > s+1`, `p > n+1`
    H2,
    /// `t = s+1`, `p > n+1`
    H3,
    OutOfScope,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuasiCase {
    /// `p ≠ n`, `s ≠ t`
    Qa,
    /// `p = n`, `s ≠ t`
    Qb,
    /// `p ≠ n`, `s = t`
    Qc,
    /// `p = n`, `s = t`
    Qd,
}

impl fmt::Display for HypoCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for QuasiCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl TwoTermSymbolParams {
    pub fn new(a: GaussianRational, b: GaussianRational, p: u32, n: u32, s: u32, t: u32) -> Result<Self> {
        if p < n {
            return Err(CriteriaError::Hypothesis(format!("p >= n (got p = {p}, n = {n})")));
        }
        if t < s {
            return Err(CriteriaError::Hypothesis(format!("t >= s (got s = {s}, t = {t})")));
        }
        Ok(Self { a, b, p, n, s, t })
    }

    pub fn with_ints(a: i64, b: i64, p: u32, n: u32, s: u32, t: u32) -> Result<Self> {
        Self::new(a.into(), b.into(), p, n, s, t)
    }

    pub fn symbol(&self) -> MixedSymbol {
        MixedSymbol::from_terms([
            MixedTerm::new(self.a.clone(), self.p, self.n),
            MixedTerm::new(self.b.clone(), self.s, self.t),
        ])
    }

    /// Reads a parsed symbol of at most two terms. The term with `p ≥ n`
    /// fills the `a` slot and the term with `n ≥ p` the `b` slot; a radial
    /// term takes whichever slot is left. A single term gets `b = 0`, `s = t = 0`.
    pub fn from_symbol(phi: &MixedSymbol) -> Result<Self> {
        let terms: Vec<MixedTerm> = phi.terms().collect();
        let zero = || MixedTerm::new(GaussianRational::zero(), 0, 0);
        let (a_term, b_term) = match terms.as_slice() {
            [] => (zero(), zero()),
            [only] if only.p >= only.n => (only.clone(), zero()),
            [only] => (zero(), only.clone()),
            [x, y] => {
                if x.p >= x.n && y.n >= y.p {
                    (x.clone(), y.clone())
                } else if y.p >= y.n && x.n >= x.p {
                    (y.clone(), x.clone())
                } else {
                    return Err(CriteriaError::NotTwoTerm(format!(
                        "both terms have more z than zb ({phi}); need one with p >= n and one with t >= s"
                    )));
                }
            }
            _ => {
                return Err(CriteriaError::NotTwoTerm(format!(
                    "{} terms in {phi}",
                    terms.len()
                )))
            }
        };
        Self::new(a_term.coeff, b_term.coeff, a_term.p, a_term.n, b_term.p, b_term.n)
    }

    pub fn hypo_case(&self) -> HypoCase {
        let (p, n, s, t) = (self.p, self.n, self.s, self.t);
        if t > s + 1 && p == n + 1 {
            HypoCase::H1
        } else if t > s + 1 && p > n + 1 {
            HypoCase::H2
        } else if t == s + 1 && p > n + 1 {
            HypoCase::H3
        } else {
            HypoCase::OutOfScope
        }
    }

    pub fn quasi_case(&self) -> QuasiCase {
        match (self.p == self.n, self.s == self.t) {
            (false, false) => QuasiCase::Qa,
            (true, false) => QuasiCase::Qb,
            (false, true) => QuasiCase::Qc,
            (true, true) => QuasiCase::Qd,
        }
    }

    /// `|p − n| ≠ |t − s|`, needed only when both terms are present.
    fn check_distinct_shifts(&self) -> Result<()> {
        if !self.a.is_zero() && !self.b.is_zero() && self.p - self.n == self.t - self.s {
            return Err(CriteriaError::Hypothesis(format!(
                "|p - n| != |t - s| (both equal {})",
                self.p - self.n
            )));
        }
        Ok(())
    }

    fn check_hypo_probe(&self, k: u32) -> Result<()> {
        let bound = self.p.max(self.t);
        if k <= bound {
            return Err(CriteriaError::ProbeTooSmall { k, bound, rule: "k > p, t" });
        }
        Ok(())
    }
}

/// Exact report of one inequality at one probe. `holds ⇔ lhs ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub theorem: String,
    pub case: String,
    pub k: u32,
    #[serde(with = "rational_str")]
    pub lhs: Rational,
    #[serde(with = "rational_str")]
    pub rhs: Rational,
    pub holds: bool,
    /// `π⁻¹ · ⟨[T*, T] z^k, z^k⟩` from the form engine.
    #[serde(with = "rational_str")]
    pub cross_check: Rational,
}

impl CriterionReport {
    fn new(theorem: &str, case: String, k: u32, lhs: Rational, rhs: Rational, cross_check: Rational) -> Self {
        let holds = lhs >= rhs;
        Self {
            theorem: theorem.to_string(),
            case,
            k,
            lhs,
            rhs,
            holds,
            cross_check,
        }
    }
}

fn hypo_cross_check(params: &TwoTermSymbolParams, m: u32, k: u32) -> Rational {
    let value = hyponormality_form(&params.symbol(), &AnalyticPoly::z_pow(k), FockParams::new(m));
    debug_assert!(value.is_real());
    value.coeff.re
}

/// `|a|²((p+k+m)!²/(p+k+m−n)! − (n+k+m)!²/(n+k+m−p)!)`.
fn master_a_part(params: &TwoTermSymbolParams, m: u32, k: u32) -> Result<Rational> {
    let (p, n, k, m) = (params.p as i64, params.n as i64, k as i64, m as i64);
    let first = ratio(fact(p + k + m)?.pow(2), fact(p + k + m - n)?);
    let second = ratio(fact(n + k + m)?.pow(2), fact(n + k + m - p)?);
    Ok(params.a.abs_sq() * (first - second))
}

/// `|b|²((t+k+m)!²/(t+k+m−s)! − (s+k+m)!²/(s+k+m−t)!)`, the right-hand side of items 1 and 2.
fn master_b_rhs(params: &TwoTermSymbolParams, m: u32, k: u32) -> Result<Rational> {
    let (s, t, k, m) = (params.s as i64, params.t as i64, k as i64, m as i64);
    let first = ratio(fact(t + k + m)?.pow(2), fact(t + k + m - s)?);
    let second = ratio(fact(s + k + m)?.pow(2), fact(s + k + m - t)?);
    Ok(params.b.abs_sq() * (first - second))
}

/// The bracket of the master inequality: `π⁻¹(‖T z^k‖² − ‖T* z^k‖²)` in closed form.
pub fn master_bracket(params: &TwoTermSymbolParams, m: u32, k: u32) -> Result<Rational> {
    params.check_distinct_shifts()?;
    params.check_hypo_probe(k)?;
    Ok(master_a_part(params, m, k)? - master_b_rhs(params, m, k)?)
}

/// The case-appropriate hyponormality inequality at the probe `z^k`.
///
/// H1 and H2 print the two-coefficient inequalities, for which `lhs − rhs`
/// equals [`master_bracket`]. H3 prints the coefficient-free factorial
/// inequality; its coefficient-carrying form is [`thm21_master`]. Parameter
/// sets outside H1–H3 fall back to the master inequality.
pub fn thm21_inequality(params: &TwoTermSymbolParams, m: u32, k: u32) -> Result<CriterionReport> {
    params.check_distinct_shifts()?;
    params.check_hypo_probe(k)?;
    let case = params.hypo_case();
    let (lhs, rhs) = match case {
        HypoCase::H1 => {
            let (p, k_, m_) = (params.p as i64, k as i64, m as i64);
            let first = ratio(fact(p + k_ + m_)?.pow(2), fact(k_ + m_ + 1)?);
            let second = ratio(fact(p + k_ + m_ - 1)?.pow(2), fact(k_ + m_ - 1)?);
            (params.a.abs_sq() * (first - second), master_b_rhs(params, m, k)?)
        }
        HypoCase::H2 | HypoCase::OutOfScope => {
            (master_a_part(params, m, k)?, master_b_rhs(params, m, k)?)
        }
        HypoCase::H3 => {
            let (p, s, k_, m_) = (params.p as i64, params.s as i64, k as i64, m as i64);
            let pk = BigInt::from(p + k_ + m_);
            let lhs = fact(p + k_ + m_ - 1)?.pow(2) * (&pk * &pk - 1);
            let sk1 = BigInt::from(s + k_ + m_ + 1);
            let rhs = fact(s + k_ + m_)?.pow(2) * (&sk1 * &sk1 - BigInt::from((k_ + m_ + 1) * (k_ + m_)));
            (rational_from_big(lhs), rational_from_big(rhs))
        }
    };
    Ok(CriterionReport::new(
        "thm21",
        case.to_string(),
        k,
        lhs,
        rhs,
        hypo_cross_check(params, m, k),
    ))
}

/// The master inequality `a-part ≥ b-part` with both coefficients kept, for any case.
pub fn thm21_master(params: &TwoTermSymbolParams, m: u32, k: u32) -> Result<CriterionReport> {
    params.check_distinct_shifts()?;
    params.check_hypo_probe(k)?;
    Ok(CriterionReport::new(
        "thm21-master",
        params.hypo_case().to_string(),
        k,
        master_a_part(params, m, k)?,
        master_b_rhs(params, m, k)?,
        hypo_cross_check(params, m, k),
    ))
}

/// `p − n = 1 = t − s` at the probe `z`:
/// `|a|²(p+m)!²((1+p+m)² − (1+m)(2+m)) ≥ |b|²(t+m)!²((1+t+m)² − (1+m)(2+m))`.
///
/// Both sides equal `(m+2)!` times the corresponding parts of the master bracket at `k = 1`.
pub fn remark24_check(params: &TwoTermSymbolParams, m: u32) -> Result<CriterionReport> {
    if params.p != params.n + 1 || params.t != params.s + 1 {
        return Err(CriteriaError::Hypothesis(format!(
            "p - n = 1 = t - s (got p - n = {}, t - s = {})",
            params.p - params.n,
            params.t - params.s
        )));
    }
    let m_ = i64::from(m);
    let base = BigInt::from((1 + m_) * (2 + m_));
    let side = |c: &GaussianRational, e: u32| -> Result<Rational> {
        let e = i64::from(e);
        let sq = BigInt::from(1 + e + m_).pow(2);
        Ok(c.abs_sq() * rational_from_big(fact(e + m_)?.pow(2) * (sq - &base)))
    };
    let lhs = side(&params.a, params.p)?;
    let rhs = side(&params.b, params.t)?;
    Ok(CriterionReport::new(
        "remark24",
        "p-n=1=t-s".to_string(),
        1,
        lhs,
        rhs,
        hypo_cross_check(params, m, 1),
    ))
}

/// Values of the self-commutator form of `T_{z^n + C|z|^{2s}}` at `f = Σ a_k z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZnCReport {
    /// Every term, including `Σ_{k<n} |a_k|²(k+n+m)!`.
    pub full: PiScalar,
    /// Without the `k < n` diagonal block.
    pub reduced: PiScalar,
    pub full_holds: bool,
    pub reduced_holds: bool,
}

/// Closed-form evaluation of
///
/// ```text
/// π( Σ_{k<n} |a_k|²(k+n+m)! + Σ_{k=n}^{N} |a_k|²((k+n+m)! − (k+m)!²/(k+m−n)!)
///    + 2 Σ_{k=0}^{N} Re(C a_{k+n} ā_k) ((k+m+n+s)!(k+m)! − (k+m+n)!(k+m+s)!)/(k+m)! )
/// ```
///
/// with `a_{k+n} = 0` beyond `N = deg f`.
pub fn zn_c_form(n: u32, s: u32, c: &GaussianRational, m: u32, coeffs: &AnalyticPoly) -> Result<ZnCReport> {
    if n == 0 {
        return Err(CriteriaError::Hypothesis("n >= 1".into()));
    }
    if s == 0 {
        return Err(CriteriaError::Hypothesis("s >= 1".into()));
    }
    let top = coeffs.degree().unwrap_or(0) as i64;
    let (n, s, m) = (i64::from(n), i64::from(s), i64::from(m));
    let a = |k: i64| coeffs.coeff(k as u32);

    let mut head = Rational::zero();
    for k in 0..n.min(top + 1) {
        head += a(k).abs_sq() * rational_from_big(fact(k + n + m)?);
    }
    let mut tail = Rational::zero();
    for k in n..=top {
        let diag = rational_from_big(fact(k + n + m)?) - ratio(fact(k + m)?.pow(2), fact(k + m - n)?);
        tail += a(k).abs_sq() * diag;
    }
    let mut cross = Rational::zero();
    for k in 0..=top {
        if k + n > top {
            break;
        }
        let re = (&(c * &a(k + n)) * &a(k).conj()).re;
        if re.is_zero() {
            continue;
        }
        let num = fact(k + m + n + s)? * fact(k + m)? - fact(k + m + n)? * fact(k + m + s)?;
        cross += re * ratio(num, fact(k + m)?);
    }
    let cross = cross * rational_from_int(2);
    let full = PiScalar::new((head + &tail + &cross).into());
    let reduced = PiScalar::new((tail + cross).into());
    Ok(ZnCReport {
        full_holds: full.is_nonnegative(),
        reduced_holds: reduced.is_nonnegative(),
        full,
        reduced,
    })
}

/// `(1+m)!² / (s² (m+s)!²)`, the discriminant bound on `|C|²`.
pub fn remark27_bound(m: u32, s: u32) -> Result<Rational> {
    if s == 0 {
        return Err(CriteriaError::Hypothesis("s >= 1".into()));
    }
    let (m, s) = (i64::from(m), i64::from(s));
    let den = BigInt::from(s * s) * fact(m + s)?.pow(2);
    Ok(ratio(fact(1 + m)?.pow(2), den))
}

/// Which printing of the quasinormality identities to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Thm31Variant {
    /// The identities as derived from the composed actions.
    #[default]
    Derived,
    /// The identities as printed in the theorem statement.
    AsStated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Thm31Outcome {
    /// The diagonal defect vanishes identically (cases Qa, Qd).
    AutoQuasinormal { case: QuasiCase },
    /// Qb/Qc: the defect at `z^k` is `π · factor · (rhs − lhs)`; quasinormality needs `lhs = rhs`.
    IdentityRequired {
        case: QuasiCase,
        lhs: Rational,
        rhs: Rational,
        holds: bool,
        /// `a|b|²` (Qb) or `|a|²b` (Qc).
        factor: GaussianRational,
    },
    /// Qb/Qc with a vanishing coefficient factor: the identity is vacuous.
    Degenerate { case: QuasiCase },
}

impl Thm31Outcome {
    pub fn case(&self) -> QuasiCase {
        match self {
            Thm31Outcome::AutoQuasinormal { case }
            | Thm31Outcome::IdentityRequired { case, .. }
            | Thm31Outcome::Degenerate { case } => *case,
        }
    }

    /// The diagonal defect `⟨(T*T² − TT*T) z^k, z^k⟩` this outcome predicts.
    pub fn predicted_defect(&self) -> PiScalar {
        match self {
            Thm31Outcome::IdentityRequired { lhs, rhs, factor, .. } => {
                PiScalar::new(factor.scale(&(rhs - lhs)))
            }
            _ => PiScalar::zero(),
        }
    }
}

/// Report form of [`thm31_classify`] for JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm31Report {
    pub theorem: String,
    pub case: QuasiCase,
    pub k: u32,
    pub verdict: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub holds: bool,
    /// `π⁻¹ · ⟨(T*T² − TT*T) z^k, z^k⟩` from the form engine.
    pub cross_check: GaussianRational,
}

/// Classifies `(p, n, s, t)` and, for Qb/Qc, evaluates the required identity at `z^k`.
pub fn thm31_classify(params: &TwoTermSymbolParams, m: u32, k: u32, variant: Thm31Variant) -> Result<Thm31Outcome> {
    let bound = 2 * params.p.max(params.t);
    if k <= bound {
        return Err(CriteriaError::ProbeTooSmall { k, bound, rule: "k > 2p, 2t" });
    }
    let case = params.quasi_case();
    let (p, n, s, t, k, m) = (
        i64::from(params.p),
        i64::from(params.n),
        i64::from(params.s),
        i64::from(params.t),
        i64::from(k),
        i64::from(m),
    );
    let (lhs, rhs, factor) = match case {
        QuasiCase::Qa | QuasiCase::Qd => return Ok(Thm31Outcome::AutoQuasinormal { case }),
        QuasiCase::Qb => {
            let factor = &params.a * &GaussianRational::real(params.b.abs_sq());
            let (lhs, rhs) = match variant {
                Thm31Variant::Derived => (
                    ratio(
                        fact(p + k + m)? * fact(t + k + m)?.pow(2),
                        fact(k + m)? * fact(t + k + m - s)?,
                    ),
                    ratio(
                        fact(s + k + m)?.pow(2) * fact(s + k + m + p - t)?,
                        fact(s + k + m - t)?.pow(2),
                    ),
                ),
                Thm31Variant::AsStated => (
                    ratio(
                        fact(p + k + m)? * fact(t + k + m)?.pow(2),
                        fact(k + m)? * fact(t + k + m + s)?,
                    ),
                    ratio(
                        fact(s + k + m)?.pow(2) * fact(s + k + m - p - t)?,
                        fact(s + k + m - t)?.pow(2),
                    ),
                ),
            };
            (lhs, rhs, factor)
        }
        QuasiCase::Qc => {
            let factor = &GaussianRational::real(params.a.abs_sq()) * &params.b;
            // The printed statement and the derivation agree for this case.
            let lhs = ratio(
                fact(s + k + m)? * fact(k + m + n)?.pow(2),
                fact(k + m)? * fact(k + n + m - p)?,
            );
            let rhs = ratio(
                fact(p + k + m)?.pow(2) * fact(p + k + m + s - n)?,
                fact(p + k + m - n)?.pow(2),
            );
            (lhs, rhs, factor)
        }
    };
    if factor.is_zero() {
        return Ok(Thm31Outcome::Degenerate { case });
    }
    Ok(Thm31Outcome::IdentityRequired {
        case,
        holds: lhs == rhs,
        lhs,
        rhs,
        factor,
    })
}

/// [`thm31_classify`] plus the form-engine defect at `z^k`, as a serializable report.
pub fn thm31_report(params: &TwoTermSymbolParams, m: u32, k: u32, variant: Thm31Variant) -> Result<Thm31Report> {
    let outcome = thm31_classify(params, m, k, variant)?;
    let zk = AnalyticPoly::z_pow(k);
    let defect = quasinormality_defect(&params.symbol(), &zk, &zk, FockParams::new(m));
    let theorem = match variant {
        Thm31Variant::Derived => "thm31",
        Thm31Variant::AsStated => "thm31-as-stated",
    };
    let (verdict, lhs, rhs, holds) = match &outcome {
        Thm31Outcome::AutoQuasinormal { .. } => ("auto-quasinormal", None, None, true),
        Thm31Outcome::Degenerate { .. } => ("degenerate", None, None, true),
        Thm31Outcome::IdentityRequired { lhs, rhs, holds, .. } => (
            "identity-required",
            Some(lhs.to_string()),
            Some(rhs.to_string()),
            *holds,
        ),
    };
    Ok(Thm31Report {
        theorem: theorem.to_string(),
        case: outcome.case(),
        k,
        verdict: verdict.to_string(),
        lhs,
        rhs,
        holds,
        cross_check: defect.coeff,
    })
}

/// Per-probe results of [`thm21_inequality`] over a range of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub reports: Vec<CriterionReport>,
    pub first_failing_k: Option<u32>,
}

pub fn necessary_sweep(params: &TwoTermSymbolParams, m: u32, k_range: RangeInclusive<u32>) -> Result<SweepReport> {
    if k_range.is_empty() {
        return Err(CriteriaError::EmptyRange);
    }
    let reports = k_range
        .into_par_iter()
        .map(|k| thm21_inequality(params, m, k))
        .collect::<Result<Vec<_>>>()?;
    let first_failing_k = reports.iter().find(|r| !r.holds).map(|r| r.k);
    Ok(SweepReport {
        reports,
        first_failing_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::sum_decomposition;
    use num_traits::One;

    fn unit() -> GaussianRational {
        GaussianRational::one()
    }

    fn r(v: i64) -> Rational {
        rational_from_int(v)
    }

    #[test]
    fn thm21_item1_example() {
        let params = TwoTermSymbolParams::with_ints(1, 1, 2, 1, 1, 3).unwrap();
        let rep = thm21_inequality(&params, 1, 4).unwrap();
        assert_eq!(rep.case, "H1");
        // 5040²/720 − 720²/24 and 40320²/5040 − 720²/6
        assert_eq!(rep.lhs, r(5040 * 5040 / 720 - 720 * 720 / 24));
        assert_eq!(rep.lhs, r(13680));
        assert_eq!(rep.rhs, r(40320 * 40320 / 5040 - 720 * 720 / 6));
        assert_eq!(rep.rhs, r(236160));
        assert!(!rep.holds);
        assert_eq!(rep.cross_check, &rep.lhs - &rep.rhs);
    }

    #[test]
    fn thm21_analytic_single_term_holds() {
        let params = TwoTermSymbolParams::with_ints(1, 0, 2, 0, 0, 0).unwrap();
        for m in 0..3 {
            for k in 3..12 {
                let rep = thm21_inequality(&params, m, k).unwrap();
                assert_eq!(rep.rhs, Rational::zero());
                assert!(rep.lhs > Rational::zero());
                assert!(rep.holds);
            }
        }
    }

    #[test]
    fn thm21_item2_matches_bigint_oracle() {
        let params = TwoTermSymbolParams::with_ints(1, 1, 3, 1, 1, 4).unwrap();
        let rep = thm21_inequality(&params, 1, 5).unwrap();
        assert_eq!(rep.case, "H2");
        // Independent evaluation with u128 factorials.
        let f = |n: u32| (1..=n as u128).product::<u128>();
        let lhs = f(9) * f(9) / f(8) - f(7) * f(7) / f(4);
        let rhs = f(10) * f(10) / f(9) - f(7) * f(7) / f(3);
        assert_eq!(rep.lhs, Rational::from_integer(lhs.into()));
        assert_eq!(rep.rhs, Rational::from_integer(rhs.into()));
        assert_eq!(rep.holds, lhs >= rhs);
        assert_eq!(rep.cross_check, &rep.lhs - &rep.rhs);
    }

    #[test]
    fn thm21_item3_printed_form() {
        let params = TwoTermSymbolParams::with_ints(1, 1, 3, 1, 1, 2).unwrap();
        let rep = thm21_inequality(&params, 1, 4).unwrap();
        assert_eq!(rep.case, "H3");
        let f = |n: u32| (1..=n as u128).product::<u128>();
        // (p+k+m−1)!²((p+k+m)²−1) vs (s+k+m)!²((s+k+m+1)² − (k+m+1)(k+m))
        assert_eq!(rep.lhs, Rational::from_integer((f(7) * f(7) * (64 - 1)).into()));
        assert_eq!(rep.rhs, Rational::from_integer((f(6) * f(6) * (49 - 30)).into()));
        let master = thm21_master(&params, 1, 4).unwrap();
        assert_eq!(master.cross_check, &master.lhs - &master.rhs);
    }

    #[test]
    fn thm21_preconditions() {
        let params = TwoTermSymbolParams::with_ints(1, 1, 2, 1, 1, 3).unwrap();
        assert!(matches!(
            thm21_inequality(&params, 1, 3),
            Err(CriteriaError::ProbeTooSmall { bound: 3, .. })
        ));
        let equal_shift = TwoTermSymbolParams::with_ints(1, 1, 2, 1, 1, 2).unwrap();
        assert!(matches!(
            thm21_inequality(&equal_shift, 1, 5),
            Err(CriteriaError::Hypothesis(_))
        ));
        assert!(TwoTermSymbolParams::with_ints(1, 1, 1, 2, 1, 3).is_err());
        assert!(TwoTermSymbolParams::with_ints(1, 1, 2, 1, 3, 1).is_err());
    }

    #[test]
    fn radial_single_term_holds_with_equality() {
        let params = TwoTermSymbolParams::with_ints(3, 0, 2, 2, 0, 0).unwrap();
        let sweep = necessary_sweep(&params, 1, 3..=10).unwrap();
        assert_eq!(sweep.first_failing_k, None);
        for rep in &sweep.reports {
            assert_eq!(rep.lhs, Rational::zero());
            assert_eq!(rep.rhs, Rational::zero());
            assert!(rep.holds);
        }
    }

    #[test]
    fn sweep_examples() {
        let ex22 = TwoTermSymbolParams::with_ints(1, 1, 2, 1, 1, 3).unwrap();
        let sweep = necessary_sweep(&ex22, 1, 4..=10).unwrap();
        assert_eq!(sweep.first_failing_k, Some(4));
        assert_eq!(sweep.reports.len(), 7);
        assert!(sweep.reports.windows(2).all(|w| w[0].k + 1 == w[1].k));

        let analytic = TwoTermSymbolParams::with_ints(2, 0, 3, 0, 0, 0).unwrap();
        assert_eq!(necessary_sweep(&analytic, 2, 4..=15).unwrap().first_failing_k, None);
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 5..=4;
        assert_eq!(necessary_sweep(&ex22, 1, empty), Err(CriteriaError::EmptyRange));
    }

    #[test]
    fn remark24_examples() {
        let sym = TwoTermSymbolParams::with_ints(1, 1, 3, 2, 2, 3).unwrap();
        let rep = remark24_check(&sym, 1).unwrap();
        assert_eq!(rep.lhs, rep.rhs);
        assert!(rep.holds);

        let no_b = TwoTermSymbolParams::with_ints(1, 0, 2, 1, 0, 1).unwrap();
        assert!(remark24_check(&no_b, 2).unwrap().holds);

        let p = TwoTermSymbolParams::with_ints(1, 2, 1, 0, 2, 3).unwrap();
        let rep = remark24_check(&p, 1).unwrap();
        assert_eq!(rep.lhs, r(2 * 2 * (9 - 6)));
        assert_eq!(rep.lhs, r(12));
        assert_eq!(rep.rhs, r(4 * 24 * 24 * (25 - 6)));
        assert_eq!(rep.rhs, r(43776));
        assert!(!rep.holds);
        // both sides are (m+2)! times the master parts at k = 1
        assert_eq!(&rep.lhs - &rep.rhs, rep.cross_check * r(6));

        let bad = TwoTermSymbolParams::with_ints(1, 1, 2, 0, 1, 2).unwrap();
        assert!(remark24_check(&bad, 1).is_err());
    }

    #[test]
    fn zn_c_examples() {
        let f = AnalyticPoly::from_int_terms(&[(0, 1), (1, 1)]);
        let rep = zn_c_form(1, 1, &GaussianRational::from_int(1), 1, &f).unwrap();
        assert_eq!(rep.full, PiScalar::from_int(8));
        assert!(rep.full_holds);
        let rep = zn_c_form(1, 1, &GaussianRational::from_int(-2), 1, &f).unwrap();
        assert_eq!(rep.full, PiScalar::from_int(-4));
        assert!(!rep.full_holds);

        let rep = zn_c_form(3, 2, &GaussianRational::from_ints(1, 1), 1, &f).unwrap();
        assert!(rep.reduced.is_zero());
        assert!(rep.reduced_holds);

        assert!(zn_c_form(0, 1, &unit(), 1, &f).is_err());
        assert!(zn_c_form(1, 0, &unit(), 1, &f).is_err());
    }

    #[test]
    fn zn_c_matches_decomposition() {
        let p = FockParams::new(1);
        let f = AnalyticPoly::from_terms([
            (0, GaussianRational::from_ints(1, -2)),
            (1, GaussianRational::from_ratio(3, 4)),
            (2, GaussianRational::from_ints(0, 5)),
            (4, GaussianRational::from_ints(-1, 1)),
        ]);
        let c = GaussianRational::from_ints(2, 3);
        for n in 1..=3 {
            for s in 1..=3 {
                let rep = zn_c_form(n, s, &c, 1, &f).unwrap();
                let t_sym = MixedSymbol::term(unit(), n, 0);
                let s_sym = MixedSymbol::term(c.clone(), s, s);
                assert_eq!(rep.full, sum_decomposition(&t_sym, &s_sym, &f, p));
            }
        }
    }

    #[test]
    fn remark26_reduction() {
        let f = AnalyticPoly::from_terms([
            (0, GaussianRational::from_ints(2, 1)),
            (1, GaussianRational::from_ints(-1, 3)),
        ]);
        for n in 2..6u32 {
            for m in 0..3u32 {
                let rep = zn_c_form(n, 2, &GaussianRational::from_int(7), m, &f).unwrap();
                let expected = f.coeff(0).abs_sq() * rational_from_big(factorial_int(u64::from(n + m)))
                    + f.coeff(1).abs_sq() * rational_from_big(factorial_int(u64::from(1 + n + m)));
                assert_eq!(rep.full, PiScalar::new(expected.into()));
            }
        }
    }

    #[test]
    fn remark27_examples() {
        assert_eq!(remark27_bound(1, 1).unwrap(), r(1));
        assert_eq!(remark27_bound(1, 2).unwrap(), Rational::new(1.into(), 36.into()));
        assert_eq!(remark27_bound(0, 1).unwrap(), r(1));
        assert!(remark27_bound(3, 0).is_err());
    }

    #[test]
    fn thm31_examples() {
        let qb = TwoTermSymbolParams::with_ints(1, 1, 1, 1, 1, 3).unwrap();
        match thm31_classify(&qb, 1, 7, Thm31Variant::Derived).unwrap() {
            Thm31Outcome::IdentityRequired { case, .. } => assert_eq!(case, QuasiCase::Qb),
            other => panic!("unexpected {other:?}"),
        }
        let qa = TwoTermSymbolParams::with_ints(1, 1, 2, 1, 1, 3).unwrap();
        assert_eq!(
            thm31_classify(&qa, 1, 7, Thm31Variant::Derived).unwrap(),
            Thm31Outcome::AutoQuasinormal { case: QuasiCase::Qa }
        );
        let qd = TwoTermSymbolParams::with_ints(1, 1, 1, 1, 2, 2).unwrap();
        assert_eq!(
            thm31_classify(&qd, 1, 5, Thm31Variant::Derived).unwrap(),
            Thm31Outcome::AutoQuasinormal { case: QuasiCase::Qd }
        );
        let no_b = TwoTermSymbolParams::with_ints(1, 0, 1, 1, 1, 3).unwrap();
        assert_eq!(
            thm31_classify(&no_b, 1, 7, Thm31Variant::Derived).unwrap(),
            Thm31Outcome::Degenerate { case: QuasiCase::Qb }
        );
        assert!(matches!(
            thm31_classify(&qb, 1, 6, Thm31Variant::Derived),
            Err(CriteriaError::ProbeTooSmall { bound: 6, .. })
        ));
    }

    #[test]
    fn thm31_case_b_values() {
        // 6!·8!²/(5!·7!) and 6!²·4!/3!²; the probe k = 4 is below the k > 2t guard,
        // so evaluate the displayed identity directly.
        let f = |n: u128| (1..=n).product::<u128>();
        assert_eq!(f(6) * f(8) * f(8) / (f(5) * f(7)), 1_935_360);
        assert_eq!(f(6) * f(6) * f(4) / (f(3) * f(3)), 345_600);
        let qb = TwoTermSymbolParams::with_ints(1, 1, 1, 1, 1, 3).unwrap();
        let k = 7u32;
        let m = 1u128;
        let kk = k as u128;
        let (p, s, t) = (1u128, 1u128, 3u128);
        let lhs = f(p + kk + m) * f(t + kk + m) * f(t + kk + m) / (f(kk + m) * f(t + kk + m - s));
        let rhs = f(s + kk + m) * f(s + kk + m) * f(s + kk + m + p - t) / (f(s + kk + m - t) * f(s + kk + m - t));
        match thm31_classify(&qb, 1, k, Thm31Variant::Derived).unwrap() {
            Thm31Outcome::IdentityRequired { lhs: l, rhs: r_, holds, .. } => {
                assert_eq!(l, Rational::from_integer(lhs.into()));
                assert_eq!(r_, Rational::from_integer(rhs.into()));
                assert!(!holds);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn thm31_predicts_diagonal_defect() {
        let p = FockParams::new(1);
        for params in [
            TwoTermSymbolParams::with_ints(2, 3, 1, 1, 1, 3).unwrap(),
            TwoTermSymbolParams::new(GaussianRational::from_ints(1, 2), GaussianRational::from_ints(-1, 1), 3, 1, 2, 2).unwrap(),
        ] {
            for k in (2 * params.p.max(params.t) + 1)..12 {
                let outcome = thm31_classify(&params, 1, k, Thm31Variant::Derived).unwrap();
                let zk = AnalyticPoly::z_pow(k);
                assert_eq!(
                    outcome.predicted_defect(),
                    quasinormality_defect(&params.symbol(), &zk, &zk, p)
                );
            }
        }
    }

    #[test]
    fn thm31_as_stated_differs_for_case_b() {
        let qb = TwoTermSymbolParams::with_ints(1, 1, 1, 1, 1, 3).unwrap();
        let derived = thm31_classify(&qb, 1, 7, Thm31Variant::Derived).unwrap();
        let stated = thm31_classify(&qb, 1, 7, Thm31Variant::AsStated).unwrap();
        assert_ne!(derived, stated);
        let qc = TwoTermSymbolParams::with_ints(1, 1, 3, 1, 2, 2).unwrap();
        assert_eq!(
            thm31_classify(&qc, 1, 7, Thm31Variant::Derived).unwrap(),
            thm31_classify(&qc, 1, 7, Thm31Variant::AsStated).unwrap()
        );
    }

    #[test]
    fn from_symbol_assigns_slots() {
        let ex22 = MixedSymbol::from_int_terms(&[(1, 1, 3), (1, 2, 1)]);
        let params = TwoTermSymbolParams::from_symbol(&ex22).unwrap();
        assert_eq!((params.p, params.n, params.s, params.t), (2, 1, 1, 3));
        let single = MixedSymbol::from_int_terms(&[(5, 2, 0)]);
        let params = TwoTermSymbolParams::from_symbol(&single).unwrap();
        assert_eq!((params.p, params.n, params.s, params.t), (2, 0, 0, 0));
        assert!(params.b.is_zero());
        let both_up = MixedSymbol::from_int_terms(&[(1, 2, 0), (1, 3, 1)]);
        assert!(TwoTermSymbolParams::from_symbol(&both_up).is_err());
        let three = MixedSymbol::from_int_terms(&[(1, 2, 0), (1, 0, 1), (1, 1, 1)]);
        assert!(TwoTermSymbolParams::from_symbol(&three).is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let params = TwoTermSymbolParams::with_ints(1, 1, 2, 1, 1, 3).unwrap();
        let rep = thm21_inequality(&params, 1, 4).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["lhs"], "13680");
        assert_eq!(json["holds"], false);
        let back: CriterionReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, rep);
    }
}
