//! Closed-form calculus on the polynomial core `S` of the Fock–Sobolev space
//! `F^{2,m}(ℂ)`.
//!
//! The inner product is `⟨f, g⟩ = ∫ f ḡ |z|^{2m} e^{-|z|²} dA`, so monomials
//! are orthogonal with `⟨z^s, z^s⟩ = π (s+m)!`. The projection of a mixed
//! monomial is
//!
//! ```text
//! P(z̄^t z^s) = (s+m)!/(s+m-t)! · z^{s-t}   if s ≥ t,   0 otherwise,
//! ```
//!
//! and every Toeplitz operator with a finite mixed-monomial symbol is the
//! bilinear extension of that rule. All results are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{factorial, falling_ratio, rational_from_int, GaussianRational, PiScalar, Rational};

/// Sobolev order `m` of the space `F^{2,m}`; `m = 0` is the classical Fock space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct FockParams {
    pub m: u32,
}

impl FockParams {
    pub fn new(m: u32) -> Self {
        Self { m }
    }

    /// `⟨z^s, z^s⟩ / π = (s+m)!`.
    pub fn monomial_norm_sq(&self, s: u32) -> GaussianRational {
        factorial(u64::from(s) + u64::from(self.m)).into()
    }
}

/// Polynomial `Σ a_k z^k` with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AnalyticPoly {
    terms: BTreeMap<u32, GaussianRational>,
}

impl AnalyticPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: u32, coeff: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(k, coeff);
        p
    }

    /// `z^k`.
    pub fn z_pow(k: u32) -> Self {
        Self::monomial(k, GaussianRational::one())
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, GaussianRational)>,
    {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Integer coefficients, convenient for literals in tests.
    pub fn from_int_terms(terms: &[(u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(k, c)| (k, GaussianRational::from_int(c))))
    }

    /// Adds `coeff · z^k`, dropping the entry if it cancels.
    pub fn add_term(&mut self, k: u32, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, k: u32) -> GaussianRational {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    /// Terms in ascending degree.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &GaussianRational)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.iter().map(|(k, a)| (k, a * c)))
    }

    /// Coefficient-wise conjugate.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.iter().map(|(k, a)| (k, a.conj())))
    }
}

impl Add for &AnalyticPoly {
    type Output = AnalyticPoly;
    fn add(self, rhs: &AnalyticPoly) -> AnalyticPoly {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &AnalyticPoly {
    type Output = AnalyticPoly;
    fn sub(self, rhs: &AnalyticPoly) -> AnalyticPoly {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k, -c);
        }
        out
    }
}

impl Neg for &AnalyticPoly {
    type Output = AnalyticPoly;
    fn neg(self) -> AnalyticPoly {
        AnalyticPoly::from_terms(self.iter().map(|(k, c)| (k, -c)))
    }
}

impl Mul for &AnalyticPoly {
    type Output = AnalyticPoly;
    fn mul(self, rhs: &AnalyticPoly) -> AnalyticPoly {
        let mut out = AnalyticPoly::zero();
        for (j, a) in self.iter() {
            for (k, b) in rhs.iter() {
                out.add_term(j + k, a * b);
            }
        }
        out
    }
}

fn write_coeff_factor(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &GaussianRational,
    has_factor: bool,
) -> fmt::Result {
    let negative_real = coeff.is_real() && coeff.re < Rational::zero();
    let (sign, mag) = if negative_real {
        ("-", -coeff)
    } else {
        ("+", coeff.clone())
    };
    if first {
        if sign == "-" {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {sign} ")?;
    }
    if mag.is_one() && has_factor {
        return Ok(());
    }
    if mag.is_real() {
        write!(f, "{mag}")?;
    } else {
        write!(f, "({mag})")?;
    }
    if has_factor {
        write!(f, "*")?;
    }
    Ok(())
}

fn write_powers(f: &mut fmt::Formatter<'_>, p: u32, n: u32) -> fmt::Result {
    let mut parts = Vec::new();
    match p {
        0 => {}
        1 => parts.push("z".to_string()),
        _ => parts.push(format!("z^{p}")),
    }
    match n {
        0 => {}
        1 => parts.push("zb".to_string()),
        _ => parts.push(format!("zb^{n}")),
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for AnalyticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.iter().enumerate() {
            write_coeff_factor(f, idx == 0, c, k > 0)?;
            write_powers(f, k, 0)?;
        }
        Ok(())
    }
}

/// One term `coeff · z^p · z̄^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedTerm {
    pub coeff: GaussianRational,
    pub p: u32,
    pub n: u32,
}

impl MixedTerm {
    pub fn new(coeff: GaussianRational, p: u32, n: u32) -> Self {
        Self { coeff, p, n }
    }
}

/// Finite sum of mixed monomials, keyed by `(p, n)` with zero terms dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MixedSymbol {
    terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl MixedSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(coeff: GaussianRational, p: u32, n: u32) -> Self {
        let mut s = Self::zero();
        s.add_term(coeff, p, n);
        s
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = MixedTerm>,
    {
        let mut s = Self::zero();
        for t in terms {
            s.add_term(t.coeff, t.p, t.n);
        }
        s
    }

    /// `(coeff, p, n)` triples with integer coefficients.
    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|&(c, p, n)| MixedTerm::new(GaussianRational::from_int(c), p, n)),
        )
    }

    /// An analytic polynomial viewed as a symbol.
    pub fn from_analytic(f: &AnalyticPoly) -> Self {
        Self::from_terms(f.iter().map(|(k, c)| MixedTerm::new(c.clone(), k, 0)))
    }

    pub fn add_term(&mut self, coeff: GaussianRational, p: u32, n: u32) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((p, n)).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&(p, n));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = MixedTerm> + '_ {
        self.terms
            .iter()
            .map(|(&(p, n), c)| MixedTerm::new(c.clone(), p, n))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: u32, n: u32) -> GaussianRational {
        self.terms.get(&(p, n)).cloned().unwrap_or_default()
    }

    pub fn is_analytic(&self) -> bool {
        self.terms.keys().all(|&(_, n)| n == 0)
    }

    /// Back to an analytic polynomial, if no term carries a `z̄` power.
    pub fn to_analytic(&self) -> Option<AnalyticPoly> {
        self.is_analytic()
            .then(|| AnalyticPoly::from_terms(self.terms().map(|t| (t.p, t.coeff))))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.terms().map(|t| MixedTerm::new(&t.coeff * c, t.p, t.n)))
    }
}

impl Add for &MixedSymbol {
    type Output = MixedSymbol;
    fn add(self, rhs: &MixedSymbol) -> MixedSymbol {
        let mut out = self.clone();
        for t in rhs.terms() {
            out.add_term(t.coeff, t.p, t.n);
        }
        out
    }
}

impl fmt::Display for MixedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (idx, t) in self.terms().enumerate() {
            write_coeff_factor(f, idx == 0, &t.coeff, t.p + t.n > 0)?;
            write_powers(f, t.p, t.n)?;
        }
        Ok(())
    }
}

/// `⟨f, g⟩ = Σ_k f_k conj(g_k) π (k+m)!`.
pub fn inner_product(f: &AnalyticPoly, g: &AnalyticPoly, params: FockParams) -> PiScalar {
    let mut acc = GaussianRational::zero();
    for (k, a) in f.iter() {
        let b = g.coeff(k);
        if b.is_zero() {
            continue;
        }
        acc += &(&(a * &b.conj()) * &params.monomial_norm_sq(k));
    }
    PiScalar::new(acc)
}

/// `‖f‖² = ⟨f, f⟩`.
pub fn norm_sq(f: &AnalyticPoly, params: FockParams) -> PiScalar {
    inner_product(f, f, params)
}

/// Falling-product coefficient of `P(z̄^t z^s)`, `None` when `s < t`.
fn projection_coeff(t_bar: u32, s: u32, params: FockParams) -> Option<GaussianRational> {
    if s < t_bar {
        return None;
    }
    let top = u64::from(s) + u64::from(params.m);
    let ratio = falling_ratio(top, u64::from(t_bar)).expect("t_bar <= s <= s + m");
    Some(ratio.into())
}

/// `P(z̄^{t_bar} z^s)`.
pub fn project_mixed(t_bar: u32, s: u32, params: FockParams) -> AnalyticPoly {
    match projection_coeff(t_bar, s, params) {
        Some(c) => AnalyticPoly::monomial(s - t_bar, c),
        None => AnalyticPoly::zero(),
    }
}

/// Conjugates every coefficient and swaps the `z` / `z̄` powers: the symbol of `T_φ*`.
pub fn adjoint_symbol(phi: &MixedSymbol) -> MixedSymbol {
    MixedSymbol::from_terms(phi.terms().map(|t| MixedTerm::new(t.coeff.conj(), t.n, t.p)))
}

/// `T_φ f = P(φ f)`.
pub fn toeplitz_apply(phi: &MixedSymbol, f: &AnalyticPoly, params: FockParams) -> AnalyticPoly {
    let mut out = AnalyticPoly::zero();
    for term in phi.terms() {
        for (k, a) in f.iter() {
            if let Some(r) = projection_coeff(term.n, term.p + k, params) {
                out.add_term(term.p + k - term.n, &(&term.coeff * a) * &r);
            }
        }
    }
    out
}

/// `T_φ* f = T_{φ̄} f`.
pub fn toeplitz_adjoint_apply(
    phi: &MixedSymbol,
    f: &AnalyticPoly,
    params: FockParams,
) -> AnalyticPoly {
    toeplitz_apply(&adjoint_symbol(phi), f, params)
}

/// `⟨[T*, T] f, f⟩ = ‖T f‖² − ‖T* f‖²`.
pub fn hyponormality_form(phi: &MixedSymbol, f: &AnalyticPoly, params: FockParams) -> PiScalar {
    let tf = toeplitz_apply(phi, f, params);
    let tsf = toeplitz_adjoint_apply(phi, f, params);
    norm_sq(&tf, params) - norm_sq(&tsf, params)
}

/// The vector `(T*T² − T T* T) f`.
pub fn quasinormality_defect_vector(
    phi: &MixedSymbol,
    f: &AnalyticPoly,
    params: FockParams,
) -> AnalyticPoly {
    let tf = toeplitz_apply(phi, f, params);
    let t2f = toeplitz_apply(phi, &tf, params);
    let ts_t2f = toeplitz_adjoint_apply(phi, &t2f, params);
    let ts_tf = toeplitz_adjoint_apply(phi, &tf, params);
    let t_ts_tf = toeplitz_apply(phi, &ts_tf, params);
    &ts_t2f - &t_ts_tf
}

/// `⟨(T*T² − T T* T) f, g⟩`.
pub fn quasinormality_defect(
    phi: &MixedSymbol,
    f: &AnalyticPoly,
    g: &AnalyticPoly,
    params: FockParams,
) -> PiScalar {
    inner_product(&quasinormality_defect_vector(phi, f, params), g, params)
}

/// Splits the self-commutator form of `T + S` into its `T`, `S` and cross parts:
/// `⟨Tu,Tu⟩ − ⟨T*u,T*u⟩ + 2 Re(⟨Tu,Su⟩ − ⟨T*u,S*u⟩) + ⟨Su,Su⟩ − ⟨S*u,S*u⟩`.
pub fn sum_decomposition(
    t_sym: &MixedSymbol,
    s_sym: &MixedSymbol,
    u: &AnalyticPoly,
    params: FockParams,
) -> PiScalar {
    let tu = toeplitz_apply(t_sym, u, params);
    let tsu = toeplitz_adjoint_apply(t_sym, u, params);
    let su = toeplitz_apply(s_sym, u, params);
    let ssu = toeplitz_adjoint_apply(s_sym, u, params);
    let cross = &inner_product(&tu, &su, params) - &inner_product(&tsu, &ssu, params);
    let two_re_cross = PiScalar::new(GaussianRational::real(cross.coeff.re * rational_from_int(2)));
    let t_part = norm_sq(&tu, params) - norm_sq(&tsu, params);
    let s_part = norm_sq(&su, params) - norm_sq(&ssu, params);
    &(&t_part + &two_re_cross) + &s_part
}

#[cfg(test)]
mod tests {
    use super::*;

    const M1: FockParams = FockParams { m: 1 };

    fn z_minus_z4() -> AnalyticPoly {
        AnalyticPoly::from_int_terms(&[(1, 1), (4, -1)])
    }

    fn pi(v: i64) -> PiScalar {
        PiScalar::from_int(v)
    }

    #[test]
    fn inner_product_examples() {
        let z2 = AnalyticPoly::z_pow(2);
        assert_eq!(inner_product(&z2, &z2, M1), pi(6));
        assert_eq!(
            inner_product(&AnalyticPoly::z_pow(3), &AnalyticPoly::z_pow(5), FockParams::new(2)),
            PiScalar::zero()
        );
        let g = AnalyticPoly::from_int_terms(&[(2, -116), (5, -7)]);
        assert_eq!(inner_product(&g, &g, M1), pi(116016));
    }

    #[test]
    fn inner_product_is_conjugate_symmetric_and_linear() {
        let f = AnalyticPoly::from_terms([
            (0, GaussianRational::from_ints(1, 2)),
            (3, GaussianRational::from_ints(-4, 1)),
        ]);
        let g = AnalyticPoly::from_terms([
            (0, GaussianRational::from_ints(3, -1)),
            (3, GaussianRational::from_ints(0, 5)),
        ]);
        let p = FockParams::new(2);
        assert_eq!(inner_product(&f, &g, p), inner_product(&g, &f, p).conj());
        let c = GaussianRational::from_ints(2, -3);
        assert_eq!(
            inner_product(&f.scale(&c), &g, p),
            inner_product(&f, &g, p).scale(&c)
        );
    }

    #[test]
    fn monomial_norm_convention() {
        for m in 0..4 {
            for s in 0..10 {
                let p = FockParams::new(m);
                let zs = AnalyticPoly::z_pow(s);
                let expected = PiScalar::new(factorial(u64::from(s + m)).into());
                assert_eq!(norm_sq(&zs, p), expected);
            }
        }
    }

    #[test]
    fn projection_examples() {
        assert!(project_mixed(3, 1, M1).is_zero());
        assert_eq!(project_mixed(3, 4, M1), AnalyticPoly::from_int_terms(&[(1, 60)]));
        assert_eq!(project_mixed(1, 4, M1), AnalyticPoly::from_int_terms(&[(3, 5)]));
        assert_eq!(project_mixed(0, 5, FockParams::new(0)), AnalyticPoly::z_pow(5));
    }

    #[test]
    fn adjoint_symbol_examples() {
        let phi = MixedSymbol::from_int_terms(&[(1, 1, 3), (1, 2, 1)]);
        assert_eq!(
            adjoint_symbol(&phi),
            MixedSymbol::from_int_terms(&[(1, 3, 1), (1, 1, 2)])
        );
        let radial = MixedSymbol::from_int_terms(&[(5, 2, 2)]);
        assert_eq!(adjoint_symbol(&radial), radial);
        let c = MixedSymbol::term(GaussianRational::from_ints(2, 1), 5, 0);
        assert_eq!(
            adjoint_symbol(&c),
            MixedSymbol::term(GaussianRational::from_ints(2, -1), 0, 5)
        );
        assert_eq!(adjoint_symbol(&adjoint_symbol(&c)), c);
    }

    #[test]
    fn toeplitz_apply_examples() {
        let f = z_minus_z4();
        let ex22 = MixedSymbol::from_int_terms(&[(1, 1, 3), (1, 2, 1)]);
        assert_eq!(
            toeplitz_apply(&ex22, &f, M1),
            AnalyticPoly::from_int_terms(&[(2, -116), (5, -7)])
        );
        let ex23 = MixedSymbol::from_int_terms(&[(4, 3, 1), (6, 1, 4)]);
        assert_eq!(
            toeplitz_apply(&ex23, &f, M1),
            AnalyticPoly::from_int_terms(&[(1, -2160), (3, 20), (6, -32)])
        );
        let ex24 = MixedSymbol::from_int_terms(&[(4, 3, 1), (6, 2, 3)]);
        assert_eq!(
            toeplitz_apply(&ex24, &f, M1),
            AnalyticPoly::from_int_terms(&[(0, 144), (3, -1240), (6, -32)])
        );
        let one = MixedSymbol::constant(GaussianRational::one());
        for m in 0..3 {
            assert_eq!(toeplitz_apply(&one, &f, FockParams::new(m)), f);
        }
        assert!(toeplitz_apply(&ex22, &AnalyticPoly::zero(), M1).is_zero());
    }

    #[test]
    fn toeplitz_adjoint_examples() {
        let ex22 = MixedSymbol::from_int_terms(&[(1, 1, 3), (1, 2, 1)]);
        assert_eq!(
            toeplitz_adjoint_apply(&ex22, &z_minus_z4(), M1),
            AnalyticPoly::from_int_terms(&[(0, 6), (3, -25), (6, -8)])
        );
        let ex34 = MixedSymbol::from_int_terms(&[(2, 3, 0), (2, 3, 1), (1, 0, 3), (3, 1, 3)]);
        assert_eq!(
            toeplitz_adjoint_apply(&ex34, &AnalyticPoly::z_pow(1), M1),
            AnalyticPoly::from_int_terms(&[(4, 1), (3, 15)])
        );
        let z = MixedSymbol::from_int_terms(&[(1, 1, 0)]);
        assert!(toeplitz_adjoint_apply(&z, &AnalyticPoly::z_pow(0), M1).is_zero());
    }

    #[test]
    fn hyponormality_examples() {
        let f = z_minus_z4();
        let ex22 = MixedSymbol::from_int_terms(&[(1, 1, 3), (1, 2, 1)]);
        assert_eq!(hyponormality_form(&ex22, &f, M1), pi(-221580));
        let ex23 = MixedSymbol::from_int_terms(&[(4, 3, 1), (6, 1, 4)]);
        assert_eq!(hyponormality_form(&ex23, &f, M1), pi(-104609280));
        let ex34 = MixedSymbol::from_int_terms(&[(2, 3, 0), (2, 3, 1), (1, 0, 3), (3, 1, 3)]);
        assert_eq!(hyponormality_form(&ex34, &AnalyticPoly::z_pow(1), M1), pi(-2640));
        assert!(hyponormality_form(&ex22, &AnalyticPoly::zero(), M1).is_zero());
    }

    #[test]
    fn hyponormality_of_shift() {
        // ‖z^{k+1}‖² − (k+m)²‖z^{k-1}‖² = π(k+m)! for k ≥ 1; P(z̄) = 0 gives π(1+m)! at k = 0.
        let z = MixedSymbol::from_int_terms(&[(1, 1, 0)]);
        for m in 0..4u32 {
            let p = FockParams::new(m);
            for k in 1..10u32 {
                let expected = PiScalar::new(factorial(u64::from(k + m)).into());
                assert_eq!(hyponormality_form(&z, &AnalyticPoly::z_pow(k), p), expected);
            }
            let at_one = PiScalar::new(factorial(u64::from(1 + m)).into());
            assert_eq!(hyponormality_form(&z, &AnalyticPoly::z_pow(0), p), at_one);
        }
    }

    #[test]
    fn quasinormality_examples() {
        let ex34 = MixedSymbol::from_int_terms(&[(2, 3, 0), (2, 3, 1), (1, 0, 3), (3, 1, 3)]);
        let z = AnalyticPoly::z_pow(1);
        assert!(quasinormality_defect(&ex34, &z, &z, M1).is_zero());
        let c = MixedSymbol::constant(GaussianRational::from_ints(3, -2));
        let f = AnalyticPoly::from_int_terms(&[(0, 1), (2, -5)]);
        assert!(quasinormality_defect(&c, &f, &z_minus_z4(), M1).is_zero());
    }

    #[test]
    fn example_32_defect_vanishes_at_z_minus_z4() {
        // Both shifts of 4z²z̄³ + 6z³z̄ are ≡ 2 (mod 3), so T²f and Tf live in
        // disjoint residue classes when f = z − z⁴.
        let phi = MixedSymbol::from_int_terms(&[(4, 2, 3), (6, 3, 1)]);
        let f = z_minus_z4();
        let tf = toeplitz_apply(&phi, &f, M1);
        let t2f = toeplitz_apply(&phi, &tf, M1);
        assert_eq!(
            t2f,
            AnalyticPoly::from_int_terms(&[(2, -386496), (5, -130788), (8, -2880)])
        );
        assert!(quasinormality_defect(&phi, &f, &f, M1).is_zero());
    }

    #[test]
    fn sum_decomposition_examples() {
        let f = z_minus_z4();
        let t = MixedSymbol::from_int_terms(&[(1, 1, 3)]);
        let s = MixedSymbol::from_int_terms(&[(1, 2, 1)]);
        assert_eq!(sum_decomposition(&t, &s, &f, M1), pi(-221580));
        let ex22 = &t + &s;
        assert_eq!(
            sum_decomposition(&ex22, &MixedSymbol::zero(), &f, M1),
            hyponormality_form(&ex22, &f, M1)
        );
    }

    #[test]
    fn analytic_symbol_multiplies() {
        let phi = MixedSymbol::from_int_terms(&[(2, 0, 0), (-1, 3, 0)]);
        let f = AnalyticPoly::from_int_terms(&[(0, 4), (2, 1), (5, -3)]);
        let product = &phi.to_analytic().unwrap() * &f;
        assert_eq!(toeplitz_apply(&phi, &f, FockParams::new(2)), product);
    }

    #[test]
    fn display_forms() {
        assert_eq!(
            AnalyticPoly::from_int_terms(&[(2, -116), (5, -7)]).to_string(),
            "-116*z^2 - 7*z^5"
        );
        assert_eq!(AnalyticPoly::z_pow(7).to_string(), "z^7");
        assert_eq!(AnalyticPoly::from_int_terms(&[(0, 6), (1, -1)]).to_string(), "6 - z");
        assert_eq!(
            MixedSymbol::from_int_terms(&[(1, 1, 3), (1, 2, 1)]).to_string(),
            "z*zb^3 + z^2*zb"
        );
        let c = AnalyticPoly::monomial(1, GaussianRational::new(rational_from_int(1), rational_from_int(-2)));
        assert_eq!(c.to_string(), "(1-2*i)*z");
    }
}
