use fockcalc_core::dsl::{parse_poly, parse_symbol};
use fockcalc_core::fock::{
    adjoint_symbol, hyponormality_form, inner_product, quasinormality_defect, toeplitz_adjoint_apply,
    toeplitz_apply,
};
use fockcalc_core::forms::{commutator_gram, psd_test, quasi_defect_matrix, quasi_zero_test, QuasiVerdict};
use fockcalc_core::{AnalyticPoly, FockParams, GaussianRational, MixedSymbol, MixedTerm, PiScalar};
use num_bigint::BigInt;
use proptest::prelude::*;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

fn gr(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

fn poly_strategy(max_deg: u32) -> impl Strategy<Value = AnalyticPoly> {
    prop::collection::vec((0..=max_deg, -4i64..=4, -4i64..=4), 0..4)
        .prop_map(|terms| AnalyticPoly::from_terms(terms.into_iter().map(|(k, re, im)| (k, gr(re, im)))))
}

fn symbol_strategy() -> impl Strategy<Value = MixedSymbol> {
    prop::collection::vec((0u32..=3, 0u32..=3, -3i64..=3, -3i64..=3), 1..4).prop_map(|terms| {
        MixedSymbol::from_terms(terms.into_iter().map(|(p, n, re, im)| MixedTerm::new(gr(re, im), p, n)))
    })
}

// Direct sum over coefficients with locally computed factorial weights.
fn oracle_inner(f: &AnalyticPoly, g: &AnalyticPoly, m: u32) -> PiScalar {
    let mut acc = GaussianRational::from_int(0);
    for (k, a) in f.iter() {
        let w = GaussianRational::from(factorial(k + m));
        acc += &(&(a * &g.coeff(k).conj()) * &w);
    }
    PiScalar::new(acc)
}

// Term-by-term application of P(c z^p z̄^n · a z^s) = c a (s+p+m)!/(s+p+m-n)! z^{s+p-n}.
fn oracle_apply(phi: &MixedSymbol, f: &AnalyticPoly, m: u32) -> AnalyticPoly {
    let mut out = AnalyticPoly::zero();
    for t in phi.terms() {
        for (s, a) in f.iter() {
            let top = s + t.p;
            if top < t.n {
                continue;
            }
            let ratio = GaussianRational::from(factorial(top + m) / factorial(top + m - t.n));
            out.add_term(top - t.n, &(&t.coeff * a) * &ratio);
        }
    }
    out
}

#[test]
fn worked_hyponormality_value() {
    let phi = parse_symbol("z zb^3 + z^2 zb").unwrap();
    let f = parse_poly("z - z^4").unwrap();
    let p = FockParams::new(1);
    assert_eq!(hyponormality_form(&phi, &f, p), PiScalar::from_int(-221580));
    assert_eq!(toeplitz_apply(&phi, &f, p), AnalyticPoly::from_int_terms(&[(2, -116), (5, -7)]));
}

#[test]
fn gram_psd_agrees_with_analytic_symbols() {
    // Analytic symbols give subnormal operators, so the commutator form is nonnegative.
    for text in ["z", "z^2 + 3", "(1+i)*z^3 - z", "5"] {
        let phi = parse_symbol(text).unwrap();
        for m in 0..3 {
            let gram = commutator_gram(&phi, FockParams::new(m), 5);
            assert!(psd_test(&gram).is_psd(), "{text} m={m}");
        }
    }
}

#[test]
fn constant_symbols_have_zero_defect() {
    let phi = parse_symbol("3 - 2*i").unwrap();
    let q = quasi_defect_matrix(&phi, FockParams::new(2), 4);
    assert_eq!(quasi_zero_test(&q), QuasiVerdict::Zero);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn inner_product_matches_direct_sum(f in poly_strategy(6), g in poly_strategy(6), m in 0u32..4) {
        prop_assert_eq!(inner_product(&f, &g, FockParams::new(m)), oracle_inner(&f, &g, m));
    }

    #[test]
    fn apply_matches_termwise_projection(phi in symbol_strategy(), f in poly_strategy(5), m in 0u32..4) {
        prop_assert_eq!(toeplitz_apply(&phi, &f, FockParams::new(m)), oracle_apply(&phi, &f, m));
    }

    #[test]
    fn adjoint_duality(phi in symbol_strategy(), f in poly_strategy(5), g in poly_strategy(5), m in 0u32..3) {
        let p = FockParams::new(m);
        let lhs = inner_product(&toeplitz_apply(&phi, &f, p), &g, p);
        let rhs = inner_product(&f, &toeplitz_adjoint_apply(&phi, &g, p), p);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(
            toeplitz_adjoint_apply(&phi, &g, p),
            toeplitz_apply(&adjoint_symbol(&phi), &g, p)
        );
    }

    #[test]
    fn apply_is_linear(
        phi in symbol_strategy(),
        psi in symbol_strategy(),
        f in poly_strategy(4),
        g in poly_strategy(4),
        re in -3i64..=3,
        im in -3i64..=3,
    ) {
        let p = FockParams::new(1);
        let c = gr(re, im);
        let sum = toeplitz_apply(&(&phi + &psi), &f, p);
        prop_assert_eq!(sum, &toeplitz_apply(&phi, &f, p) + &toeplitz_apply(&psi, &f, p));
        let combo = &f.scale(&c) + &g;
        let lhs = toeplitz_apply(&phi, &combo, p);
        let rhs = &toeplitz_apply(&phi, &f, p).scale(&c) + &toeplitz_apply(&phi, &g, p);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hyponormality_form_is_real_and_matches_gram(phi in symbol_strategy(), f in poly_strategy(4), m in 0u32..3) {
        let p = FockParams::new(m);
        let direct = hyponormality_form(&phi, &f, p);
        prop_assert!(direct.is_real());
        let tf = toeplitz_apply(&phi, &f, p);
        let tsf = toeplitz_adjoint_apply(&phi, &f, p);
        prop_assert_eq!(&direct, &(&inner_product(&tf, &tf, p) - &inner_product(&tsf, &tsf, p)));
        let gram = commutator_gram(&phi, p, 4);
        prop_assert_eq!(gram.form_at(&f).unwrap(), direct);
    }

    #[test]
    fn psd_witness_is_negative(phi in symbol_strategy(), m in 0u32..3) {
        let p = FockParams::new(m);
        let verdict = psd_test(&commutator_gram(&phi, p, 4));
        if let Some(w) = verdict.witness {
            let value = hyponormality_form(&phi, &w, p);
            prop_assert!(value.is_negative());
            prop_assert_eq!(Some(value), verdict.witness_value);
        }
    }

    #[test]
    fn defect_matrix_entries_match_bilinear_defect(phi in symbol_strategy(), j in 0usize..4, k in 0usize..4) {
        let p = FockParams::new(1);
        let q = quasi_defect_matrix(&phi, p, 3);
        let zk = AnalyticPoly::z_pow(k as u32);
        let zj = AnalyticPoly::z_pow(j as u32);
        prop_assert_eq!(q.get(j, k), &quasinormality_defect(&phi, &zk, &zj, p));
    }

    #[test]
    fn dsl_round_trip(phi in symbol_strategy(), f in poly_strategy(6)) {
        prop_assert_eq!(parse_symbol(&phi.to_string()).unwrap(), phi);
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }
}
