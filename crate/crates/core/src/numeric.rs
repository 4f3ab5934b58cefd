//! Floating-point quadrature oracle for the exact engine.
//!
//! Integrals over `ℂ` against `e^{−|w|²} dA(w)` are taken in polar form with
//! `u = r²`: Gauss–Laguerre in `u` and a uniform rule in `θ`. Every integrand
//! met here is a polynomial in `u` times `e^{ijθ}`, so both rules are exact
//! once the node counts cover the degrees involved, and the node counts are
//! derived from those degrees.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fock::{toeplitz_apply, AnalyticPoly, FockParams, MixedSymbol};
use crate::scalar::{GaussianRational, PiScalar};

/// Relative tolerance used by [`compare_exact_numeric`] to set `pass`.
pub const COMPARE_TOLERANCE: f64 = 1e-8;

/// Guard terms added to the kernel truncation beyond the needed degree.
pub const KERNEL_GUARD: u32 = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error(
        "insufficient exactness: {nodes} radial nodes integrate u-degree <= {exact}, need {needed}"
    )]
    Radial { nodes: usize, exact: u32, needed: u32 },
    #[error(
        "insufficient exactness: {nodes} angular nodes resolve frequencies <= {exact}, need {needed}"
    )]
    Angular { nodes: usize, exact: u32, needed: u32 },
    #[error("insufficient kernel truncation: M = {truncation}, need at least {needed}")]
    Truncation { truncation: u32, needed: u32 },
    #[error("{got} evaluation points cannot determine {needed} coefficients")]
    TooFewPoints { got: usize, needed: usize },
    #[error("invalid quadrature rule: {0}")]
    InvalidRule(String),
}

type Result<T> = std::result::Result<T, NumericError>;

/// Gauss–Laguerre nodes and weights for `∫_0^∞ g(u) e^{−u} du`.
///
/// Newton iteration on `L_n` from the usual asymptotic starting guesses.
fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let nf = n as f64;
    let mut z = 0.0_f64;
    for i in 0..n {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut derivative = 0.0;
        let mut previous = 0.0;
        for _ in 0..100 {
            // L_n(z) and L_{n−1}(z) by the three-term recurrence
            let (mut p1, mut p2) = (1.0_f64, 0.0_f64);
            for j in 1..=n {
                let jf = j as f64;
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * jf - 1.0 - z) * p2 - (jf - 1.0) * p3) / jf;
            }
            derivative = nf * (p1 - p2) / z;
            previous = p2;
            let step = p1 / derivative;
            z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes.push(z);
        weights.push(-1.0 / (derivative * nf * previous));
    }
    (nodes, weights)
}

/// Product rule on `ℂ`: `R` Gauss–Laguerre nodes in `u = |w|²` and `A`
/// equispaced angles.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    radii: Vec<f64>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    angles: Vec<Complex64>,
}

impl QuadratureRule {
    pub fn new(radial: usize, angular: usize) -> Result<Self> {
        if radial == 0 || angular == 0 {
            return Err(NumericError::InvalidRule(format!(
                "need R >= 1 and A >= 1 (got R = {radial}, A = {angular})"
            )));
        }
        let (nodes, weights) = gauss_laguerre(radial);
        let radii = nodes.iter().map(|u| u.sqrt()).collect();
        let angles = (0..angular)
            .map(|l| Complex64::from_polar(1.0, 2.0 * PI * l as f64 / angular as f64))
            .collect();
        Ok(Self {
            radii,
            nodes,
            weights,
            angles,
        })
    }

    /// The smallest rule exact for `u`-degree `u_degree` and frequencies up to `bandwidth`.
    pub fn for_exactness(u_degree: u32, bandwidth: u32) -> Self {
        Self::new(u_degree as usize / 2 + 1, bandwidth as usize + 1).expect("counts are positive")
    }

    pub fn doubled(&self) -> Self {
        Self::new(2 * self.radial_nodes(), 2 * self.angular_nodes()).expect("counts are positive")
    }

    pub fn radial_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn angular_nodes(&self) -> usize {
        self.angles.len()
    }

    pub fn radial_nodes_and_weights(&self) -> (&[f64], &[f64]) {
        (&self.nodes, &self.weights)
    }

    /// `2R − 1`
    pub fn radial_exactness(&self) -> u32 {
        2 * self.radial_nodes() as u32 - 1
    }

    /// `A − 1`
    pub fn angular_exactness(&self) -> u32 {
        self.angular_nodes() as u32 - 1
    }

    pub fn check(&self, u_degree: u32, bandwidth: u32) -> Result<()> {
        if self.radial_exactness() < u_degree {
            return Err(NumericError::Radial {
                nodes: self.radial_nodes(),
                exact: self.radial_exactness(),
                needed: u_degree,
            });
        }
        if self.angular_exactness() < bandwidth {
            return Err(NumericError::Angular {
                nodes: self.angular_nodes(),
                exact: self.angular_exactness(),
                needed: bandwidth,
            });
        }
        Ok(())
    }

    /// `∫_ℂ F(w) e^{−|w|²} dA(w)`, summed in a fixed order.
    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, integrand: F) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for ((r, _), w) in self.radii.iter().zip(&self.nodes).zip(&self.weights) {
            let ring: Complex64 = self.angles.iter().map(|e| integrand(e * r)).sum();
            total += ring * *w;
        }
        total * (PI / self.angular_nodes() as f64)
    }
}

/// Truncated reproducing-kernel series `K_m(z, w) ≈ Σ_{j ≤ M} m!/(j+m)! (z w̄)^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelEvaluator {
    m: u32,
    truncation: u32,
    coeffs: Vec<f64>,
}

impl KernelEvaluator {
    pub fn new(m: u32, truncation: u32) -> Self {
        let mut coeffs = Vec::with_capacity(truncation as usize + 2);
        let mut c = 1.0;
        for j in 0..=truncation + 1 {
            if j > 0 {
                c /= f64::from(j + m);
            }
            coeffs.push(c);
        }
        Self { m, truncation, coeffs }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// `Σ_{j ≤ M} m!/(j+m)! x^j` with `x = z w̄`.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs[..=self.truncation as usize]
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    pub fn eval_at(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.eval(z * w.conj())
    }

    /// Bound on the dropped tail `Σ_{j > M} m!/(j+m)! |x|^j`, or `None` when
    /// the terms are not yet decreasing at `j = M+1`.
    pub fn tail_bound(&self, abs_x: f64) -> Option<f64> {
        let next = self.truncation + 1;
        let ratio = abs_x / f64::from(next + 1 + self.m);
        if ratio >= 1.0 {
            return None;
        }
        Some(self.coeffs[next as usize] * abs_x.powi(next as i32) / (1.0 - ratio))
    }
}

pub fn to_complex(c: &GaussianRational) -> Complex64 {
    Complex64::new(
        c.re.to_f64().unwrap_or(f64::NAN),
        c.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// `π · coeff` as a double.
pub fn pi_to_complex(x: &PiScalar) -> Complex64 {
    to_complex(&x.coeff) * PI
}

fn poly_terms(f: &AnalyticPoly) -> Vec<(u32, Complex64)> {
    f.iter().map(|(k, c)| (k, to_complex(c))).collect()
}

fn eval_poly(terms: &[(u32, Complex64)], z: Complex64) -> Complex64 {
    terms.iter().map(|(k, c)| c * z.powu(*k)).sum()
}

/// `(z^a z̄^b, c)` terms of the product `φ · f`.
fn symbol_times_poly(phi: &MixedSymbol, f: &AnalyticPoly) -> Vec<(u32, u32, Complex64)> {
    let f_terms = poly_terms(f);
    let mut out = Vec::new();
    for term in phi.terms() {
        let c = to_complex(&term.coeff);
        for (k, a) in &f_terms {
            out.push((term.p + k, term.n, c * a));
        }
    }
    out
}

/// `⟨f, g⟩ = ∫ f ḡ |w|^{2m} e^{−|w|²} dA` by quadrature.
pub fn numeric_inner_product(f: &AnalyticPoly, g: &AnalyticPoly, m: u32, rule: &QuadratureRule) -> Result<Complex64> {
    let mut u_degree = 0;
    let mut bandwidth = 0;
    for (a, _) in f.iter() {
        for (b, _) in g.iter() {
            bandwidth = bandwidth.max(a.abs_diff(b));
            if a == b {
                u_degree = u_degree.max(a + m);
            }
        }
    }
    rule.check(u_degree, bandwidth)?;
    let (ft, gt) = (poly_terms(f), poly_terms(g));
    Ok(rule.integrate(|w| eval_poly(&ft, w) * eval_poly(&gt, w).conj() * w.norm_sqr().powi(m as i32)))
}

/// Degrees the rule must cover to integrate `φ f K_M(z, ·)` exactly:
/// `(u-degree, bandwidth, output degree)`.
fn toeplitz_requirements(terms: &[(u32, u32, Complex64)], truncation: u32, m: u32) -> (u32, u32, u32) {
    let mut u_degree = 0;
    let mut bandwidth = 0;
    let mut out_degree = 0;
    for (a, b, _) in terms {
        let shift = i64::from(*a) - i64::from(*b);
        if shift >= 0 {
            out_degree = out_degree.max(shift as u32);
            u_degree = u_degree.max(a + m);
        }
        let low = shift - i64::from(truncation);
        bandwidth = bandwidth.max(shift.unsigned_abs().max(low.unsigned_abs()) as u32);
    }
    (u_degree, bandwidth, out_degree)
}

/// Values of `(T_φ f)(z) = 1/(π m!) ∫ φ(w) f(w) K_m(z, w) |w|^{2m} e^{−|w|²} dA(w)`
/// at each point, with the kernel truncated at `M`.
pub fn evaluate_toeplitz(
    phi: &MixedSymbol,
    f: &AnalyticPoly,
    rule: &QuadratureRule,
    kernel: &KernelEvaluator,
    points: &[Complex64],
) -> Result<Vec<Complex64>> {
    let m = kernel.m();
    let terms = symbol_times_poly(phi, f);
    let (u_degree, bandwidth, out_degree) = toeplitz_requirements(&terms, kernel.truncation(), m);
    if kernel.truncation() < out_degree {
        return Err(NumericError::Truncation {
            truncation: kernel.truncation(),
            needed: out_degree,
        });
    }
    rule.check(u_degree, bandwidth)?;
    let m_fact: f64 = (1..=m).map(f64::from).product();
    let prefactor = 1.0 / (PI * m_fact);
    let integrand_at = |w: Complex64| -> Complex64 {
        let wb = w.conj();
        let sym: Complex64 = terms.iter().map(|(a, b, c)| c * w.powu(*a) * wb.powu(*b)).sum();
        sym * w.norm_sqr().powi(m as i32)
    };
    Ok(points
        .par_iter()
        .map(|z| prefactor * rule.integrate(|w| integrand_at(w) * kernel.eval_at(*z, w)))
        .collect())
}

/// `count` equispaced points on the unit circle.
pub fn circle_points(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|l| Complex64::from_polar(1.0, 2.0 * PI * l as f64 / count as f64))
        .collect()
}

/// Least-squares coefficients `c_0..c_degree` of `Σ c_j z^j` through `(points, values)`.
pub fn fit_polynomial(points: &[Complex64], values: &[Complex64], degree: u32) -> Result<Vec<Complex64>> {
    let cols = degree as usize + 1;
    if points.len() < cols {
        return Err(NumericError::TooFewPoints {
            got: points.len(),
            needed: cols,
        });
    }
    let vandermonde = DMatrix::from_fn(points.len(), cols, |i, j| points[i].powu(j as u32));
    let rhs = DVector::from_column_slice(values);
    let solution = vandermonde
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .expect("both singular bases were computed");
    Ok(solution.iter().copied().collect())
}

/// Coefficients `0..=M` of `P(z̄^{t_bar} z^s)` recovered from kernel-integral
/// evaluations at `eval_points`.
pub fn numeric_project(
    s: u32,
    t_bar: u32,
    rule: &QuadratureRule,
    kernel: &KernelEvaluator,
    eval_points: &[Complex64],
) -> Result<Vec<Complex64>> {
    if kernel.truncation() < s {
        return Err(NumericError::Truncation {
            truncation: kernel.truncation(),
            needed: s,
        });
    }
    let phi = MixedSymbol::term(GaussianRational::from_int(1), 0, t_bar);
    let values = evaluate_toeplitz(&phi, &AnalyticPoly::z_pow(s), rule, kernel, eval_points)?;
    fit_polynomial(eval_points, &values, kernel.truncation())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub max_rel_err: f64,
    pub nodes_radial: usize,
    pub nodes_angular: usize,
    pub kernel_truncation: u32,
    pub pass: bool,
}

/// Largest componentwise discrepancy, relative to each exact coefficient
/// and to the largest exact magnitude where the exact coefficient is zero.
pub fn max_relative_error(exact: &[Complex64], approx: &[Complex64]) -> f64 {
    let scale = exact.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    exact
        .iter()
        .zip(approx)
        .map(|(e, a)| {
            let diff = (e - a).norm();
            if e.norm() > 0.0 {
                diff / e.norm()
            } else {
                diff / scale
            }
        })
        .fold(0.0, f64::max)
}

/// Compares `toeplitz_apply` with the quadrature evaluation of the `T_φ`
/// integral. With `rule = None` the smallest exact rule is used.
pub fn compare_exact_numeric(
    phi: &MixedSymbol,
    f: &AnalyticPoly,
    m: u32,
    rule: Option<&QuadratureRule>,
) -> Result<ComparisonReport> {
    let terms = symbol_times_poly(phi, f);
    let (_, _, out_degree) = toeplitz_requirements(&terms, 0, m);
    let truncation = out_degree + KERNEL_GUARD;
    let kernel = KernelEvaluator::new(m, truncation);
    let (u_degree, bandwidth, _) = toeplitz_requirements(&terms, truncation, m);
    let owned;
    let rule = match rule {
        Some(r) => r,
        None => {
            owned = QuadratureRule::for_exactness(u_degree, bandwidth);
            &owned
        }
    };
    let points = circle_points(truncation as usize + 2);
    let values = evaluate_toeplitz(phi, f, rule, &kernel, &points)?;
    let approx = fit_polynomial(&points, &values, truncation)?;
    let exact_poly = toeplitz_apply(phi, f, FockParams::new(m));
    let exact: Vec<Complex64> = (0..=truncation).map(|j| to_complex(&exact_poly.coeff(j))).collect();
    let max_rel_err = max_relative_error(&exact, &approx);
    Ok(ComparisonReport {
        max_rel_err,
        nodes_radial: rule.radial_nodes(),
        nodes_angular: rule.angular_nodes(),
        kernel_truncation: truncation,
        pass: max_rel_err <= COMPARE_TOLERANCE,
    })
}
