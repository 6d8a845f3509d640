//! Dualizing weights, w-dual containment, the characteristic-2 rescaling to
//! a self-orthogonal code, and the CSS construction.
//!
//! The residues of a dualizing differential are realized as a vector `w`
//! orthogonal to every coordinatewise product `f g` of code functions, that
//! is, a vector of the dual of the Schur square. Its support is the
//! restricted support `R`.

use serde::Serialize;
use thiserror::Error;

use crate::codes::{CodeError, LinearCode, Matrix, SearchConfig};
use crate::gf::{Fe, Field, FieldError};
use crate::lattice::{DivisorData, Fan, LatticePoint, LatticePolytope};
use crate::toric::{build_code, hirzebruch_params, SupportSet, ToricCodeSpec, ToricError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuantumError {
    #[error("no dualizing weights: the Schur square is the full space (polytope too large for this field)")]
    NoDualizingWeights,
    #[error("odd characteristic unsupported for rescaling (p = {0})")]
    OddCharacteristic(u32),
    #[error("code is not contained in its w-dual")]
    ContainmentFailed,
    #[error("code is not self-orthogonal")]
    NotSelfOrthogonal,
    #[error("weights have length {found}, code has length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Weights `w` over the full support; `R` lists the nonzero coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualizingWeights {
    pub field: Field,
    pub w: Vec<Fe>,
    pub restricted: Vec<usize>,
    pub sum_zero: bool,
    /// Dimension of the Schur square the weights annihilate.
    pub schur_rank: usize,
    pub nullity: usize,
}

impl DualizingWeights {
    fn from_vector(field: &Field, w: Vec<Fe>, schur_rank: usize) -> Self {
        let restricted = w
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect();
        let sum = w.iter().fold(Fe::ZERO, |acc, &x| field.add(acc, x));
        let nullity = w.len() - schur_rank;
        DualizingWeights {
            field: field.clone(),
            w,
            restricted,
            sum_zero: sum.is_zero(),
            schur_rank,
            nullity,
        }
    }

    /// Weights restricted to `R`.
    pub fn restricted_weights(&self) -> Vec<Fe> {
        self.restricted.iter().map(|&i| self.w[i]).collect()
    }
}

fn support_size(v: &[Fe]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// A vector of the dual of the Schur square of `code`, chosen with large
/// support. Two candidates are built from the RREF nullspace basis: a single
/// greedy pass keeping each basis vector (coefficient 1) whose addition
/// increases the support size, and the sum of all basis vectors, whose
/// support covers every free column. The larger support wins; ties go to the
/// lexicographically smaller vector.
pub fn find_dualizing_weights(code: &LinearCode) -> Result<DualizingWeights, QuantumError> {
    let field = code.field();
    let square = code.schur_square();
    let basis = square.generator().nullspace();
    if basis.nrows() == 0 {
        return Err(QuantumError::NoDualizingWeights);
    }
    let add = |a: &[Fe], b: &[Fe]| -> Vec<Fe> {
        a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
    };
    let mut greedy = vec![Fe::ZERO; code.n()];
    let mut size = 0;
    for b in basis.rows() {
        let trial = add(&greedy, b);
        let s = support_size(&trial);
        if s > size {
            greedy = trial;
            size = s;
        }
    }
    let total = basis
        .rows()
        .fold(vec![Fe::ZERO; code.n()], |acc, b| add(&acc, b));
    let key = |v: &Vec<Fe>| (std::cmp::Reverse(support_size(v)), v.clone());
    let w = if key(&total) < key(&greedy) {
        total
    } else {
        greedy
    };
    Ok(DualizingWeights::from_vector(field, w, square.k()))
}

/// `G_R diag(w_R) G_R^T = 0` for the code punctured to `R`.
pub fn verify_containment(
    code: &LinearCode,
    weights: &DualizingWeights,
) -> Result<bool, QuantumError> {
    if weights.w.len() != code.n() {
        return Err(QuantumError::LengthMismatch {
            expected: code.n(),
            found: weights.w.len(),
        });
    }
    if weights.restricted.is_empty() {
        return Ok(true);
    }
    let punctured = code.puncture(&weights.restricted)?;
    if punctured.k() == 0 {
        return Ok(true);
    }
    Ok(punctured
        .weighted_gram(&weights.restricted_weights())
        .is_zero())
}

/// Puncture to `R` and scale column `i` by `sqrt(w_i)`; the result is
/// self-orthogonal under the standard inner product.
pub fn rescale_char2(
    code: &LinearCode,
    weights: &DualizingWeights,
) -> Result<LinearCode, QuantumError> {
    let field = code.field();
    if field.p() != 2 {
        return Err(QuantumError::OddCharacteristic(field.p()));
    }
    if !verify_containment(code, weights)? {
        return Err(QuantumError::ContainmentFailed);
    }
    let punctured = code.puncture(&weights.restricted)?;
    let roots: Vec<Fe> = weights
        .restricted_weights()
        .iter()
        .map(|&x| field.sqrt_char2(x))
        .collect::<Result<_, _>>()?;
    let scaled = LinearCode::from_matrix(punctured.generator().scale_columns(&roots))?;
    if scaled.k() > 0 && !scaled.weighted_gram(&vec![Fe::ONE; scaled.n()]).is_zero() {
        return Err(QuantumError::NotSelfOrthogonal);
    }
    Ok(scaled)
}

/// CSS code with both check matrices equal to the generator of a
/// self-orthogonal code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    pub n: usize,
    pub k: usize,
    pub hx: Matrix,
    pub hz: Matrix,
    /// `None` when `k = 0`.
    pub d: Option<usize>,
    /// Whether `d` is the exact distance rather than a lower bound.
    pub d_exact: bool,
}

impl CssCode {
    pub fn commutes(&self) -> bool {
        self.hx
            .mul(&self.hz.transpose())
            .map(|m| m.is_zero())
            .unwrap_or(false)
    }
}

/// Quantum distance is the minimum weight of `C^perp \ C`. When `C^perp` is
/// too large to enumerate, the minimum distance of `C^perp` is found from the
/// smallest dependent column sets of `C`; it is exact if some minimum-weight
/// word lies outside `C`, and a lower bound otherwise.
pub fn css_construct(ctilde: &LinearCode, cfg: &SearchConfig) -> Result<CssCode, QuantumError> {
    let n = ctilde.n();
    let kt = ctilde.k();
    if kt > 0 && !ctilde.weighted_gram(&vec![Fe::ONE; n]).is_zero() {
        return Err(QuantumError::NotSelfOrthogonal);
    }
    let dual = ctilde.dual();
    let k = n - 2 * kt;
    let hx = ctilde.generator().clone();
    let hz = hx.clone();
    if k == 0 {
        return Ok(CssCode {
            n,
            k,
            hx,
            hz,
            d: None,
            d_exact: true,
        });
    }
    let enum_count = (ctilde.field().q() as u128)
        .checked_pow(dual.k() as u32)
        .unwrap_or(u128::MAX);
    let (d, d_exact) = if cfg.check_budget(enum_count).is_ok() {
        (dual.min_weight_in_difference(ctilde, cfg)?, true)
    } else {
        let found = ctilde
            .dual_distance_by_columns(cfg, |word| !ctilde.contains_word(word))?
            .expect("k > 0 means the dual is strictly larger than the code");
        (found.weight, found.preferred)
    };
    Ok(CssCode {
        n,
        k,
        hx,
        hz,
        d: Some(d),
        d_exact,
    })
}

/// Pipeline stage tags for error reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Input,
    BuildCode,
    Weights,
    Containment,
    Rescale,
    Css,
    Divisors,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stage::Input => "input",
            Stage::BuildCode => "build_code",
            Stage::Weights => "weights",
            Stage::Containment => "containment",
            Stage::Rescale => "rescale",
            Stage::Css => "css",
            Stage::Divisors => "divisors",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("stage {stage}: {message}")]
pub struct PipelineError {
    pub stage: Stage,
    pub message: String,
    pub budget_exceeded: bool,
}

impl PipelineError {
    fn new(stage: Stage, e: impl std::fmt::Display) -> Self {
        let message = e.to_string();
        let budget_exceeded = message.contains("exceeds the budget");
        PipelineError {
            stage,
            message,
            budget_exceeded,
        }
    }
}

trait StageExt<T> {
    fn stage(self, stage: Stage) -> Result<T, PipelineError>;
}

impl<T, E: std::fmt::Display> StageExt<T> for Result<T, E> {
    fn stage(self, stage: Stage) -> Result<T, PipelineError> {
        self.map_err(|e| PipelineError::new(stage, e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalReport {
    pub n: usize,
    pub k: usize,
    pub lattice_points: usize,
    pub d_formula: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_exhaustive: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightsReport {
    pub w: Vec<u32>,
    #[serde(rename = "R")]
    pub restricted: Vec<usize>,
    pub sum_zero: bool,
    pub schur_rank: usize,
    pub nullity: usize,
    pub punctured_rank: usize,
    pub rank_drop: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantumReport {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub d_exact: bool,
    pub hx: Vec<Vec<u32>>,
    pub hz: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivisorReport {
    #[serde(rename = "D1_ample")]
    pub d1_ample: bool,
    #[serde(rename = "D2_ample")]
    pub d2_ample: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub classical: ClassicalReport,
    pub weights: WeightsReport,
    pub quantum: QuantumReport,
    pub divisors: DivisorReport,
}

/// The two ample divisors cutting out the support in the Hirzebruch example:
/// `D1 ~ (q-2)(V1 + r V4) + V2` and `D2 ~ (V1 + r V4) + (q-2) V2`, on the
/// fan `(1,0), (0,1), (-1,0), (r,-1)`.
pub fn example_divisors(q: u32, r: i64) -> (DivisorData, DivisorData) {
    let fan = Fan::hirzebruch(r);
    let q2 = q as i64 - 2;
    let h = DivisorData::zeros_of_character(&fan, LatticePoint::new(1, 0));
    let v2 = DivisorData::zeros_of_character(&fan, LatticePoint::new(0, 1));
    let d1 = DivisorData::zero(&fan)
        .add_scaled(&h, q2)
        .and_then(|d| d.add_scaled(&v2, 1))
        .expect("same fan");
    let d2 = h.add_scaled(&v2, q2).expect("same fan");
    (d1, d2)
}

/// The Hirzebruch support `(F_q^* \ {1})^2`.
pub fn punctured_torus_support(field: &Field) -> Result<SupportSet, ToricError> {
    let no_one: Vec<Fe> = field
        .units()
        .into_iter()
        .filter(|&x| x != Fe::ONE)
        .collect();
    SupportSet::from_sets(field, &no_one, &[], &[], &no_one)
}

/// build code -> weights -> containment -> rescale -> CSS, plus the
/// ampleness check of the example divisors.
pub fn pipeline(
    field: &Field,
    d: i64,
    e: i64,
    r: i64,
    support: &SupportSet,
    cfg: &SearchConfig,
) -> Result<PipelineReport, PipelineError> {
    field.same_field(support.field()).stage(Stage::Input)?;
    let polytope = LatticePolytope::hirzebruch(d, e, r).stage(Stage::Input)?;
    let spec = ToricCodeSpec::new(polytope, support.clone());
    let built = build_code(&spec).stage(Stage::BuildCode)?;
    let code = &built.code;

    let d_formula = if support.is_full() {
        Some(hirzebruch_params(field, d, e, r).stage(Stage::BuildCode)?.d)
    } else {
        None
    };
    let words = (field.q() as u128)
        .checked_pow(code.k() as u32)
        .unwrap_or(u128::MAX);
    let d_exhaustive = if code.k() > 0 && cfg.check_budget(words).is_ok() {
        Some(code.min_distance_with(cfg).stage(Stage::BuildCode)?)
    } else {
        None
    };
    let classical = ClassicalReport {
        n: code.n(),
        k: code.k(),
        lattice_points: built.exponents.len(),
        d_formula,
        d_exhaustive,
    };

    let weights = find_dualizing_weights(code).stage(Stage::Weights)?;
    if !verify_containment(code, &weights).stage(Stage::Containment)? {
        return Err(PipelineError::new(
            Stage::Containment,
            QuantumError::ContainmentFailed,
        ));
    }
    let punctured_rank = code
        .puncture(&weights.restricted)
        .stage(Stage::Containment)?
        .k();
    let ctilde = rescale_char2(code, &weights).stage(Stage::Rescale)?;
    let css = css_construct(&ctilde, cfg).stage(Stage::Css)?;

    let (d1, d2) = example_divisors(field.q(), r);
    let divisors = DivisorReport {
        d1_ample: d1.is_ample().stage(Stage::Divisors)?,
        d2_ample: d2.is_ample().stage(Stage::Divisors)?,
    };

    Ok(PipelineReport {
        classical,
        weights: WeightsReport {
            w: weights.w.iter().map(|x| x.0).collect(),
            restricted: weights.restricted.clone(),
            sum_zero: weights.sum_zero,
            schur_rank: weights.schur_rank,
            nullity: weights.nullity,
            punctured_rank,
            rank_drop: punctured_rank < code.k(),
        },
        quantum: QuantumReport {
            n: css.n,
            k: css.k,
            d: css.d,
            d_exact: css.d_exact,
            hx: css.hx.to_ints(),
            hz: css.hz.to_ints(),
        },
        divisors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::SupportSet;

    fn field(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    fn hirz_code(q: u64, d: i64, e: i64, r: i64) -> LinearCode {
        let f = field(q);
        let spec = ToricCodeSpec::new(
            LatticePolytope::hirzebruch(d, e, r).unwrap(),
            SupportSet::full(&f).unwrap(),
        );
        build_code(&spec).unwrap().code
    }

    #[test]
    fn gf8_weights() {
        let code = hirz_code(8, 1, 1, 1);
        let w = find_dualizing_weights(&code).unwrap();
        assert_eq!(w.schur_rank, 12);
        assert_eq!(w.nullity, 37);
        assert!(w.restricted.len() >= w.nullity);
        eprintln!("R = {}", w.restricted.len());
        assert!(w.sum_zero);
        assert!(verify_containment(&code, &w).unwrap());
        let ct = rescale_char2(&code, &w).unwrap();
        let css = css_construct(&ct, &SearchConfig::default()).unwrap();
        assert!(css.commutes());
        assert_eq!(css.k, w.restricted.len() - 2 * ct.k());
    }

    #[test]
    fn full_space_has_no_weights() {
        let f = field(4);
        assert_eq!(
            find_dualizing_weights(&LinearCode::full(&f, 5)).unwrap_err(),
            QuantumError::NoDualizingWeights
        );
        assert_eq!(
            find_dualizing_weights(&hirz_code(4, 1, 1, 1)).unwrap_err(),
            QuantumError::NoDualizingWeights
        );
    }

    #[test]
    fn containment_fails_for_plain_ones() {
        let f = field(2);
        let code = LinearCode::from_rows(&f, 3, vec![vec![Fe(1), Fe(0), Fe(0)]]).unwrap();
        let ones = DualizingWeights::from_vector(&f, vec![Fe::ONE; 3], 0);
        assert!(!verify_containment(&code, &ones).unwrap());
        assert_eq!(
            rescale_char2(&code, &ones).unwrap_err(),
            QuantumError::ContainmentFailed
        );
    }

    #[test]
    fn ones_weights_keep_self_orthogonal_code() {
        let f = field(2);
        let code = LinearCode::from_rows(&f, 4, vec![vec![Fe(1); 4]]).unwrap();
        let ones = DualizingWeights::from_vector(&f, vec![Fe::ONE; 4], 0);
        assert_eq!(rescale_char2(&code, &ones).unwrap(), code);
    }

    #[test]
    fn zero_punctured_code_is_vacuous() {
        let f = field(2);
        let code = LinearCode::from_rows(&f, 3, vec![vec![Fe(1), Fe(1), Fe(0)]]).unwrap();
        let w = DualizingWeights::from_vector(&f, vec![Fe(0), Fe(0), Fe(1)], 0);
        assert!(verify_containment(&code, &w).unwrap());
    }

    #[test]
    fn odd_characteristic_rescale_rejected() {
        let code = hirz_code(5, 1, 1, 1);
        let w = find_dualizing_weights(&code).unwrap();
        assert!(verify_containment(&code, &w).unwrap());
        assert_eq!(
            rescale_char2(&code, &w).unwrap_err(),
            QuantumError::OddCharacteristic(5)
        );
    }

    #[test]
    fn trivial_css() {
        let f = field(2);
        let css = css_construct(&LinearCode::zero(&f, 3), &SearchConfig::default()).unwrap();
        assert_eq!((css.n, css.k, css.d), (3, 3, Some(1)));
        assert_eq!(css.hx.nrows(), 0);
        assert!(css.commutes());
    }

    #[test]
    fn example_divisors_ample() {
        for r in 1..=3 {
            let (d1, d2) = example_divisors(8, r);
            assert_eq!(d1.coeffs(), &[6, 1, 0, 6 * r]);
            assert_eq!(d2.coeffs(), &[1, 6, 0, r]);
            assert!(d1.is_ample().unwrap());
            assert!(d2.is_ample().unwrap());
        }
    }

    #[test]
    fn pipeline_stage_errors() {
        let f5 = field(5);
        let err = pipeline(
            &f5,
            1,
            1,
            1,
            &SupportSet::full(&f5).unwrap(),
            &SearchConfig::default(),
        )
        .unwrap_err();
        assert_eq!(err.stage, Stage::Rescale);
        assert!(err.message.contains("odd characteristic"));

        let f8 = field(8);
        let err = pipeline(
            &f8,
            3,
            3,
            1,
            &SupportSet::full(&f8).unwrap(),
            &SearchConfig::default(),
        )
        .unwrap_err();
        assert_eq!(err.stage, Stage::Weights);
        assert!(err.message.contains("no dualizing weights"));
    }
}
