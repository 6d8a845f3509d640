//! Linear codes over GF(q).
//!
//! A [`LinearCode`] always keeps its generator matrix in reduced row echelon
//! form with zero rows dropped, so two codes are equal exactly when their
//! row spaces are equal.

mod matrix;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Fe, Field, FieldError, FieldSpec};

pub use matrix::Matrix;
pub use search::{DependentColumns, SearchConfig, DEFAULT_MAX_ENUM};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("code length must be positive")]
    EmptyLength,
    #[error("minimum distance of the zero code is undefined")]
    ZeroDimension,
    #[error("enumeration of {needed} words exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("restriction set is empty")]
    EmptyRestriction,
    #[error("coordinate {index} out of range for length {n}")]
    CoordinateOutOfRange { index: usize, n: usize },
    #[error("the smaller code is not contained in the larger one")]
    NotContained,
    #[error("difference of a code with itself is empty")]
    EmptyDifference,
}

/// A linear code given by a generator matrix in RREF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix,
}

/// Coordinatewise weights for the inner product `sum w_i x_i y_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub field: Field,
    pub w: Vec<Fe>,
}

impl WeightVector {
    pub fn ones(field: &Field, n: usize) -> Self {
        WeightVector {
            field: field.clone(),
            w: vec![Fe::ONE; n],
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    field: FieldSpec,
    n: usize,
    k: usize,
    gen: Vec<Vec<u32>>,
}

impl Serialize for LinearCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CodeJson {
            field: self.field().spec().clone(),
            n: self.n(),
            k: self.k(),
            gen: self.gen.to_ints(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = CodeJson::deserialize(d)?;
        let field = Field::from_spec(&j.field).map_err(D::Error::custom)?;
        let m = Matrix::from_ints(&field, j.n, &j.gen).map_err(D::Error::custom)?;
        let code = LinearCode::from_matrix(m).map_err(D::Error::custom)?;
        if code.k() != j.k {
            return Err(D::Error::custom(format!(
                "declared dimension {} but generator has rank {}",
                j.k,
                code.k()
            )));
        }
        Ok(code)
    }
}

impl LinearCode {
    /// The row space of `m`.
    pub fn from_matrix(mut m: Matrix) -> Result<Self, CodeError> {
        if m.ncols() == 0 {
            return Err(CodeError::EmptyLength);
        }
        m.rref();
        m.drop_zero_rows();
        Ok(LinearCode { gen: m })
    }

    pub fn from_rows(field: &Field, n: usize, rows: Vec<Vec<Fe>>) -> Result<Self, CodeError> {
        LinearCode::from_matrix(Matrix::from_rows(field, n, rows)?)
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        LinearCode {
            gen: Matrix::zeros(field, 0, n),
        }
    }

    pub fn full(field: &Field, n: usize) -> Self {
        LinearCode {
            gen: Matrix::identity(field, n),
        }
    }

    pub fn repetition(field: &Field, n: usize) -> Self {
        LinearCode::from_rows(field, n, vec![vec![Fe::ONE; n]]).expect("n > 0")
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.ncols()
    }

    pub fn k(&self) -> usize {
        self.gen.nrows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    fn same_shape(&self, other: &LinearCode) -> Result<(), CodeError> {
        self.field().same_field(other.field())?;
        if self.n() != other.n() {
            return Err(CodeError::Shape {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// `x G` for a message `x` of length `k`.
    pub fn encode(&self, message: &[Fe]) -> Vec<Fe> {
        assert_eq!(message.len(), self.k());
        let f = self.field();
        let mut out = vec![Fe::ZERO; self.n()];
        for (&c, row) in message.iter().zip(self.gen.rows()) {
            if c.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(c, g));
            }
        }
        out
    }

    /// Membership test by reduction against the RREF pivots.
    pub fn contains_word(&self, word: &[Fe]) -> bool {
        assert_eq!(word.len(), self.n());
        let f = self.field();
        let mut v = word.to_vec();
        for (row, p) in self.gen.rows().zip(self.gen.pivots()) {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            let neg = f.neg(c);
            for (x, &g) in v.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(neg, g));
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    /// `C^perp`, of dimension `n - k`.
    pub fn dual(&self) -> LinearCode {
        LinearCode::from_matrix(self.gen.nullspace()).expect("n > 0")
    }

    /// `{x : sum w_i x_i y_i = 0 for all y in C}`.
    pub fn weighted_dual(&self, w: &WeightVector) -> Result<LinearCode, CodeError> {
        self.field().same_field(&w.field)?;
        if w.w.len() != self.n() {
            return Err(CodeError::Shape {
                expected: self.n(),
                found: w.w.len(),
            });
        }
        for &x in &w.w {
            self.field().check(x)?;
        }
        Ok(LinearCode::from_matrix(self.gen.scale_columns(&w.w).nullspace()).expect("n > 0"))
    }

    /// Span of all coordinatewise products of pairs of basis rows.
    pub fn schur_square(&self) -> LinearCode {
        let f = self.field();
        let k = self.k();
        let mut m = Matrix::zeros(f, 0, self.n());
        for i in 0..k {
            for j in i..k {
                let prod: Vec<Fe> = self
                    .gen
                    .row(i)
                    .iter()
                    .zip(self.gen.row(j))
                    .map(|(&a, &b)| f.mul(a, b))
                    .collect();
                m.push_row(&prod);
            }
        }
        LinearCode::from_matrix(m).expect("n > 0")
    }

    /// Restriction to the coordinates in `keep` (sorted, deduplicated).
    /// The dimension may drop.
    pub fn puncture(&self, keep: &[usize]) -> Result<LinearCode, CodeError> {
        let mut cols = keep.to_vec();
        cols.sort_unstable();
        cols.dedup();
        if cols.is_empty() {
            return Err(CodeError::EmptyRestriction);
        }
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.n()) {
            return Err(CodeError::CoordinateOutOfRange {
                index: bad,
                n: self.n(),
            });
        }
        LinearCode::from_matrix(self.gen.select_columns(&cols))
    }

    /// Whether `inner` is a subcode of `self`.
    pub fn contains(&self, inner: &LinearCode) -> Result<bool, CodeError> {
        self.same_shape(inner)?;
        Ok(inner.gen.rows().all(|r| self.contains_word(r)))
    }

    /// Exact minimum Hamming weight of a nonzero codeword.
    pub fn min_distance(&self) -> Result<usize, CodeError> {
        self.min_distance_with(&SearchConfig::default())
    }

    pub fn min_distance_with(&self, cfg: &SearchConfig) -> Result<usize, CodeError> {
        if self.k() == 0 {
            return Err(CodeError::ZeroDimension);
        }
        let rows: Vec<&[Fe]> = self.gen.rows().collect();
        search::min_weight_outside(self.field(), self.n(), &[], &rows, cfg)
    }

    /// Minimum weight over `self \ inner`, where `inner` is a subcode.
    pub fn min_weight_in_difference(
        &self,
        inner: &LinearCode,
        cfg: &SearchConfig,
    ) -> Result<usize, CodeError> {
        if !self.contains(inner)? {
            return Err(CodeError::NotContained);
        }
        if inner.k() == self.k() {
            return Err(CodeError::EmptyDifference);
        }
        // Basis of self = basis of inner followed by a complement.
        let mut basis = inner.gen.clone();
        let mut complement: Vec<&[Fe]> = Vec::new();
        for r in self.gen.rows() {
            let mut trial = basis.clone();
            trial.push_row(r);
            if trial.rank() > basis.nrows() {
                basis.push_row(r);
                complement.push(r);
            }
        }
        let inner_rows: Vec<&[Fe]> = inner.gen.rows().collect();
        search::min_weight_outside(self.field(), self.n(), &inner_rows, &complement, cfg)
    }

    /// Minimum distance of the dual code, computed from the generator of
    /// `self` as the size of the smallest linearly dependent column set.
    /// See [`search::DependentColumns`].
    pub fn dual_distance_by_columns<P>(
        &self,
        cfg: &SearchConfig,
        prefer: P,
    ) -> Result<Option<DependentColumns>, CodeError>
    where
        P: Fn(&[Fe]) -> bool,
    {
        search::smallest_dependent_columns(&self.gen, cfg, prefer)
    }

    /// `G diag(w) G^T`.
    pub fn weighted_gram(&self, w: &[Fe]) -> Matrix {
        let scaled = self.gen.scale_columns(w);
        scaled.mul(&self.gen.transpose()).expect("shapes agree")
    }
}
