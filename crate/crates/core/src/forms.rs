//! Exact matrices of the self-commutator and quasinormality-defect forms on
//! the truncated subspace `S_N = span{1, z, …, z^N}`, and an exact positive
//! semidefiniteness test.
//!
//! Toeplitz operators with mixed-monomial symbols send monomials to
//! monomials, so the entries here carry no truncation error: the form of `f`
//! with `deg f ≤ N` is exactly `Σ_{j,k} c̄_j G[j][k] c_k`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fock::{
    inner_product, quasinormality_defect_vector, toeplitz_adjoint_apply, toeplitz_apply,
    AnalyticPoly, FockParams, MixedSymbol,
};
use crate::scalar::{GaussianRational, PiScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error("coefficient vector has length {got}, matrix dimension is {dim}")]
    DimensionMismatch { got: usize, dim: usize },
    #[error("matrix JSON must carry \"unit\": \"pi\", got {0:?}")]
    BadUnit(String),
}

/// Square matrix of `PiScalar` entries indexed by monomial degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMatrix {
    entries: Vec<Vec<PiScalar>>,
}

impl PiMatrix {
    pub fn new(entries: Vec<Vec<PiScalar>>) -> Result<Self, FormError> {
        let dim = entries.len();
        for (row, r) in entries.iter().enumerate() {
            if r.len() != dim {
                return Err(FormError::NotSquare {
                    row,
                    len: r.len(),
                    dim,
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![vec![PiScalar::zero(); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &PiScalar {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<PiScalar>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        self.first_non_hermitian().is_none()
    }

    fn first_non_hermitian(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|j| (j..n).map(move |k| (j, k)))
            .find(|&(j, k)| self.entries[j][k] != self.entries[k][j].conj())
    }

    /// `Σ_{j,k} conj(c_j) M[j][k] c_k`.
    pub fn sesquilinear(&self, left: &[GaussianRational], right: &[GaussianRational]) -> Result<PiScalar, FormError> {
        let dim = self.dim();
        for v in [left, right] {
            if v.len() != dim {
                return Err(FormError::DimensionMismatch { got: v.len(), dim });
            }
        }
        let mut acc = GaussianRational::zero();
        for (j, row) in self.entries.iter().enumerate() {
            if left[j].is_zero() {
                continue;
            }
            let lj = left[j].conj();
            for (k, entry) in row.iter().enumerate() {
                if right[k].is_zero() || entry.is_zero() {
                    continue;
                }
                acc += &(&(&lj * &entry.coeff) * &right[k]);
            }
        }
        Ok(PiScalar::new(acc))
    }

    /// The form evaluated at the polynomial `f` (coefficients of degree > N must vanish).
    pub fn form_at(&self, f: &AnalyticPoly) -> Result<PiScalar, FormError> {
        let c = coefficient_vector(f, self.dim())?;
        self.sesquilinear(&c, &c)
    }

    pub fn to_json_value(&self) -> MatrixJson {
        MatrixJson {
            unit: "pi".to_string(),
            dim: self.dim(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|e| e.coeff.clone()).collect())
                .collect(),
        }
    }

    pub fn from_json_value(json: MatrixJson) -> Result<Self, FormError> {
        if json.unit != "pi" {
            return Err(FormError::BadUnit(json.unit));
        }
        let m = Self::new(
            json.entries
                .into_iter()
                .map(|r| r.into_iter().map(PiScalar::new).collect())
                .collect(),
        )?;
        if m.dim() != json.dim {
            return Err(FormError::DimensionMismatch {
                got: m.dim(),
                dim: json.dim,
            });
        }
        Ok(m)
    }
}

/// Coefficients `c_0..c_{dim-1}` of `f`; errors if `deg f ≥ dim`.
pub fn coefficient_vector(f: &AnalyticPoly, dim: usize) -> Result<Vec<GaussianRational>, FormError> {
    if let Some(d) = f.degree() {
        if d as usize >= dim {
            return Err(FormError::DimensionMismatch {
                got: d as usize + 1,
                dim,
            });
        }
    }
    Ok((0..dim as u32).map(|k| f.coeff(k)).collect())
}

/// JSON export: entries are coefficients of π, written as canonical Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub unit: String,
    pub dim: usize,
    pub entries: Vec<Vec<GaussianRational>>,
}

/// A Hermitian `PiMatrix`; the invariant is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermForm(PiMatrix);

impl HermForm {
    pub fn new(matrix: PiMatrix) -> Result<Self, FormError> {
        match matrix.first_non_hermitian() {
            Some((row, col)) => Err(FormError::NotHermitian { row, col }),
            None => Ok(Self(matrix)),
        }
    }

    pub fn matrix(&self) -> &PiMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn form_at(&self, f: &AnalyticPoly) -> Result<PiScalar, FormError> {
        self.0.form_at(f)
    }
}

impl TryFrom<PiMatrix> for HermForm {
    type Error = FormError;
    fn try_from(m: PiMatrix) -> Result<Self, FormError> {
        Self::new(m)
    }
}

/// `G[j][k] = ⟨T z^k, T z^j⟩ − ⟨T* z^k, T* z^j⟩` for `j, k ≤ N`.
pub fn commutator_gram(phi: &MixedSymbol, params: FockParams, n_max: u32) -> HermForm {
    let images: Vec<(AnalyticPoly, AnalyticPoly)> = (0..=n_max)
        .into_par_iter()
        .map(|k| {
            let zk = AnalyticPoly::z_pow(k);
            (
                toeplitz_apply(phi, &zk, params),
                toeplitz_adjoint_apply(phi, &zk, params),
            )
        })
        .collect();
    let entries: Vec<Vec<PiScalar>> = images
        .par_iter()
        .map(|(tj, tsj)| {
            images
                .iter()
                .map(|(tk, tsk)| inner_product(tk, tj, params) - inner_product(tsk, tsj, params))
                .collect()
        })
        .collect();
    HermForm::new(PiMatrix { entries }).expect("Gram matrix of a sesquilinear form is Hermitian")
}

/// `Q[j][k] = ⟨(T*T² − T T* T) z^k, z^j⟩`, reported raw: the defect operator is not self-adjoint.
pub fn quasi_defect_matrix(phi: &MixedSymbol, params: FockParams, n_max: u32) -> PiMatrix {
    let columns: Vec<AnalyticPoly> = (0..=n_max)
        .into_par_iter()
        .map(|k| quasinormality_defect_vector(phi, &AnalyticPoly::z_pow(k), params))
        .collect();
    let entries = (0..=n_max)
        .map(|j| {
            columns
                .iter()
                .map(|col| PiScalar::new(&col.coeff(j) * &params.monomial_norm_sq(j)))
                .collect()
        })
        .collect();
    PiMatrix { entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsdStatus {
    Psd,
    NotPsd,
}

/// Outcome of [`psd_test`]. A `NotPsd` verdict always carries a witness
/// polynomial whose form value is strictly negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdVerdict {
    pub status: PsdStatus,
    pub witness: Option<AnalyticPoly>,
    pub witness_value: Option<PiScalar>,
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        self.status == PsdStatus::Psd
    }
}

/// Exact PSD decision by symmetric Schur-complement elimination over the
/// Gaussian rationals (π factors out of every entry).
///
/// Each step first looks for a negative diagonal entry (NotPSD), then pivots
/// on the smallest-index positive diagonal. With no positive pivot left, a
/// nonzero off-diagonal entry `b` at `(i, j)` gives the witness
/// `v_i − conj(b) v_j` with value `−2|b|²`. Witnesses are tracked in the
/// original monomial basis and normalized so their first nonzero coefficient is 1.
pub fn psd_test(form: &HermForm) -> PsdVerdict {
    let dim = form.dim();
    let mut work: Vec<Vec<GaussianRational>> = form
        .matrix()
        .rows()
        .iter()
        .map(|r| r.iter().map(|e| e.coeff.clone()).collect())
        .collect();
    // basis[i] is the current i-th reduced direction in monomial coordinates
    let mut basis: Vec<Vec<GaussianRational>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() })
                .collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..dim).collect();

    loop {
        if let Some(&i) = active.iter().find(|&&i| work[i][i].re < Rational::zero()) {
            return not_psd(form, &basis[i]);
        }
        let pivot = active
            .iter()
            .position(|&i| work[i][i].re > Rational::zero());
        let Some(pos) = pivot else {
            for (a, &i) in active.iter().enumerate() {
                for &j in &active[a + 1..] {
                    let b = &work[i][j];
                    if !b.is_zero() {
                        let y = -b.conj();
                        let v: Vec<GaussianRational> = basis[i]
                            .iter()
                            .zip(&basis[j])
                            .map(|(x, w)| x + &(&y * w))
                            .collect();
                        return not_psd(form, &v);
                    }
                }
            }
            return PsdVerdict {
                status: PsdStatus::Psd,
                witness: None,
                witness_value: None,
            };
        };
        let r = active.remove(pos);
        let d = work[r][r].re.clone();
        for &i in &active {
            let alpha = work[r][i].scale(&d.recip());
            if alpha.is_zero() {
                continue;
            }
            let pivot_row = basis[r].clone();
            for (target, b) in basis[i].iter_mut().zip(&pivot_row) {
                *target -= &(&alpha * b);
            }
        }
        for &i in &active {
            for &j in &active {
                let delta = (&work[i][r] * &work[r][j]).scale(&d.recip());
                work[i][j] -= &delta;
            }
        }
        for &i in &active {
            work[i][r] = GaussianRational::zero();
            work[r][i] = GaussianRational::zero();
        }
    }
}

fn not_psd(form: &HermForm, direction: &[GaussianRational]) -> PsdVerdict {
    let lead = direction
        .iter()
        .find(|c| !c.is_zero())
        .expect("elimination directions are never zero");
    let inv = lead.inv().expect("nonzero lead");
    let witness = AnalyticPoly::from_terms(
        direction
            .iter()
            .enumerate()
            .map(|(k, c)| (k as u32, c * &inv)),
    );
    let value = form.form_at(&witness).expect("witness lives in S_N");
    assert!(value.is_negative(), "elimination witness must give a negative form value");
    PsdVerdict {
        status: PsdStatus::NotPsd,
        witness: Some(witness),
        witness_value: Some(value),
    }
}

/// Result of scanning a defect matrix for a nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiVerdict {
    Zero,
    /// First nonzero entry in row-major order: `value = ⟨D z^k, z^j⟩`.
    NonZero { j: usize, k: usize, value: PiScalar },
}

pub fn quasi_zero_test(q: &PiMatrix) -> QuasiVerdict {
    for (j, row) in q.rows().iter().enumerate() {
        if let Some((k, v)) = row.iter().enumerate().find(|(_, v)| !v.is_zero()) {
            return QuasiVerdict::NonZero {
                j,
                k,
                value: v.clone(),
            };
        }
    }
    QuasiVerdict::Zero
}
