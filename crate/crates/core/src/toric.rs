//! Toric evaluation codes: monomials of a lattice polygon evaluated on a set
//! of torus points `S ⊆ (F_q^*)^2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{CodeError, LinearCode, Matrix};
use crate::gf::{Fe, Field, FieldError, FieldSpec};
use crate::lattice::{DivisorData, GeometryError, LatticePoint, LatticePolytope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("the full torus support needs q >= 3, got q = {0}")]
    FieldTooSmall(u32),
    #[error("support sets may only contain nonzero elements")]
    ZeroCoordinate,
    #[error("support is empty")]
    EmptySupport,
    #[error("hypothesis violated: requires {0}")]
    Hypothesis(&'static str),
    #[error("strata bound needs a Hirzebruch polytope on the full torus")]
    Unsupported,
}

/// How a support set was specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Full,
    Pieces {
        i1: Vec<Fe>,
        j1: Vec<Fe>,
        i2: Vec<Fe>,
        j2: Vec<Fe>,
    },
}

/// Ordered, deduplicated torus points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    field: Field,
    points: Vec<(Fe, Fe)>,
    provenance: Provenance,
    overlap: bool,
}

impl SupportSet {
    /// All `(q-1)^2` points of the torus.
    pub fn full(field: &Field) -> Result<Self, ToricError> {
        if field.q() < 3 {
            return Err(ToricError::FieldTooSmall(field.q()));
        }
        let units = field.units();
        let points = units
            .iter()
            .flat_map(|&a| units.iter().map(move |&b| (a, b)))
            .collect();
        Ok(SupportSet {
            field: field.clone(),
            points,
            provenance: Provenance::Full,
            overlap: false,
        })
    }

    /// `S = I1 x J2 ∪ I2 x J1`. The overlap flag records when
    /// `|S| != |I1||J2| + |I2||J1|`.
    pub fn from_sets(
        field: &Field,
        i1: &[Fe],
        j1: &[Fe],
        i2: &[Fe],
        j2: &[Fe],
    ) -> Result<Self, ToricError> {
        let clean = |s: &[Fe]| -> Result<Vec<Fe>, ToricError> {
            let mut v = Vec::with_capacity(s.len());
            for &x in s {
                field.check(x)?;
                if x.is_zero() {
                    return Err(ToricError::ZeroCoordinate);
                }
                v.push(x);
            }
            v.sort_unstable();
            v.dedup();
            Ok(v)
        };
        let (i1, j1, i2, j2) = (clean(i1)?, clean(j1)?, clean(i2)?, clean(j2)?);
        let mut points: Vec<(Fe, Fe)> = i1
            .iter()
            .flat_map(|&a| j2.iter().map(move |&b| (a, b)))
            .chain(i2.iter().flat_map(|&a| j1.iter().map(move |&b| (a, b))))
            .collect();
        points.sort_unstable();
        points.dedup();
        let overlap = points.len() != i1.len() * j2.len() + i2.len() * j1.len();
        Ok(SupportSet {
            field: field.clone(),
            points,
            provenance: Provenance::Pieces { i1, j1, i2, j2 },
            overlap,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[(Fe, Fe)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_full(&self) -> bool {
        self.provenance == Provenance::Full
    }

    pub fn overlap(&self) -> bool {
        self.overlap
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SupportJson {
    Full,
    Pieces {
        #[serde(rename = "I1")]
        i1: Vec<u32>,
        #[serde(rename = "J1")]
        j1: Vec<u32>,
        #[serde(rename = "I2")]
        i2: Vec<u32>,
        #[serde(rename = "J2")]
        j2: Vec<u32>,
    },
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    field: FieldSpec,
    polytope: LatticePolytope,
    support: SupportJson,
}

/// A polygon, a field and a support set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricCodeSpec {
    pub polytope: LatticePolytope,
    pub support: SupportSet,
}

impl ToricCodeSpec {
    pub fn new(polytope: LatticePolytope, support: SupportSet) -> Self {
        ToricCodeSpec { polytope, support }
    }

    pub fn field(&self) -> &Field {
        self.support.field()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ints = |v: &[Fe]| v.iter().map(|x| x.0).collect::<Vec<_>>();
        let support = match self.support.provenance() {
            Provenance::Full => SupportJson::Full,
            Provenance::Pieces { i1, j1, i2, j2 } => SupportJson::Pieces {
                i1: ints(i1),
                j1: ints(j1),
                i2: ints(i2),
                j2: ints(j2),
            },
        };
        serde_json::to_value(SpecJson {
            field: self.field().spec().clone(),
            polytope: self.polytope.clone(),
            support,
        })
        .expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        let j: SpecJson = serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
        let field = Field::from_spec(&j.field).map_err(|e| e.to_string())?;
        let fes = |v: &[u32]| v.iter().map(|&x| Fe(x)).collect::<Vec<_>>();
        let support = match j.support {
            SupportJson::Full => SupportSet::full(&field),
            SupportJson::Pieces { i1, j1, i2, j2 } => {
                SupportSet::from_sets(&field, &fes(&i1), &fes(&j1), &fes(&i2), &fes(&j2))
            }
        }
        .map_err(|e| e.to_string())?;
        Ok(ToricCodeSpec {
            polytope: j.polytope,
            support,
        })
    }
}

/// `e(m)(t) = t1^a t2^b`; negative exponents go through inverses.
pub fn evaluate_monomial(field: &Field, m: LatticePoint, t: (Fe, Fe)) -> Fe {
    let x = field
        .pow_signed(t.0, m.a)
        .expect("torus coordinates are nonzero");
    let y = field
        .pow_signed(t.1, m.b)
        .expect("torus coordinates are nonzero");
    field.mul(x, y)
}

/// A built toric code with its raw evaluation matrix.
#[derive(Debug, Clone)]
pub struct ToricCode {
    /// Lattice points of the polygon, one per raw row.
    pub exponents: Vec<LatticePoint>,
    /// Rows indexed by `exponents`, columns by the support points.
    pub raw: Matrix,
    pub code: LinearCode,
}

impl ToricCode {
    pub fn raw_rank(&self) -> usize {
        self.code.k()
    }
}

pub fn build_code(spec: &ToricCodeSpec) -> Result<ToricCode, ToricError> {
    let field = spec.field();
    let points = spec.support.points();
    if points.is_empty() {
        return Err(ToricError::EmptySupport);
    }
    let exponents = spec.polytope.lattice_points();
    let rows: Vec<Vec<Fe>> = exponents
        .par_iter()
        .map(|&m| {
            points
                .iter()
                .map(|&t| evaluate_monomial(field, m, t))
                .collect()
        })
        .collect();
    let raw = Matrix::from_rows(field, points.len(), rows)?;
    let code = LinearCode::from_matrix(raw.clone())?;
    Ok(ToricCode {
        exponents,
        raw,
        code,
    })
}

/// Length, dimension and minimum distance of the full-torus Hirzebruch code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HirzebruchParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

pub fn hirzebruch_params(
    field: &Field,
    d: i64,
    e: i64,
    r: i64,
) -> Result<HirzebruchParams, ToricError> {
    LatticePolytope::hirzebruch(d, e, r)?;
    let qm1 = field.q() as i64 - 1;
    if d >= qm1 {
        return Err(ToricError::Hypothesis("d<q-1"));
    }
    if e >= qm1 {
        return Err(ToricError::Hypothesis("e<q-1"));
    }
    if e + r * d >= qm1 {
        return Err(ToricError::Hypothesis("e+rd<q-1"));
    }
    let n = qm1 * qm1;
    let k = (d + 1) * (e + 1) + r * d * (d + 1) / 2;
    let dist = ((qm1 - d) * (qm1 - e)).min(qm1 * (qm1 - e - r * d));
    Ok(HirzebruchParams {
        n: n as usize,
        k: k as usize,
        d: dist as usize,
    })
}

/// Lower bound on the minimum distance from the vanishing-on-strata count.
///
/// The strata are the `q-1` lines `t1 = psi`. A section vanishing on `a` of
/// them lies in `H^0(D - aH)` with `H = (e(m1))_0`; on each remaining line it
/// has at most `(D - aH; H)` zeros.
pub fn strata_distance_bound(spec: &ToricCodeSpec) -> Result<usize, ToricError> {
    if !spec.support.is_full() || spec.polytope.as_hirzebruch().is_none() {
        return Err(ToricError::Unsupported);
    }
    let qm1 = spec.field().q() as i64 - 1;
    let n = qm1 * qm1;
    let fan = spec.polytope.normal_fan().refine();
    let divisor = DivisorData::of_polytope(&spec.polytope, &fan)?;
    let h = DivisorData::zeros_of_character(&fan, LatticePoint::new(1, 0));
    let mut best = i64::MAX;
    for a in 0..=qm1 {
        let rest = divisor.add_scaled(&h, -a)?;
        if rest.sections().is_empty() {
            break;
        }
        let per_stratum = rest.pair(&h)?.clamp(0, qm1);
        let zeros = a * qm1 + (qm1 - a) * per_stratum;
        best = best.min(n - zeros);
    }
    Ok(best.max(0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hirz_full(q: u64, d: i64, e: i64, r: i64) -> ToricCodeSpec {
        let f = Field::with_order(q).unwrap();
        ToricCodeSpec::new(
            LatticePolytope::hirzebruch(d, e, r).unwrap(),
            SupportSet::full(&f).unwrap(),
        )
    }

    #[test]
    fn full_supports() {
        for (q, n) in [(5, 16), (4, 9), (3, 4)] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(SupportSet::full(&f).unwrap().len(), n);
        }
        let f2 = Field::with_order(2).unwrap();
        assert_eq!(
            SupportSet::full(&f2).unwrap_err(),
            ToricError::FieldTooSmall(2)
        );
    }

    #[test]
    fn piecewise_supports() {
        let f = Field::with_order(8).unwrap();
        let all = f.units();
        let s = SupportSet::from_sets(&f, &all, &[], &[], &all).unwrap();
        assert_eq!(s.points(), SupportSet::full(&f).unwrap().points());
        assert!(!s.overlap());

        let no_one: Vec<Fe> = all.iter().copied().filter(|&x| x != Fe::ONE).collect();
        let s = SupportSet::from_sets(&f, &no_one, &[], &[], &no_one).unwrap();
        assert_eq!(s.len(), 36);

        let s = SupportSet::from_sets(&f, &[Fe(3)], &[], &[], &[Fe(5)]).unwrap();
        assert_eq!(s.points(), &[(Fe(3), Fe(5))]);

        // The two pieces share (2, 2).
        let s = SupportSet::from_sets(&f, &[Fe(2)], &[Fe(2)], &[Fe(2)], &[Fe(2)]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.overlap());

        assert_eq!(
            SupportSet::from_sets(&f, &[Fe(0)], &[], &[], &[Fe(1)]).unwrap_err(),
            ToricError::ZeroCoordinate
        );
    }

    #[test]
    fn monomial_values() {
        let f = Field::with_order(5).unwrap();
        assert_eq!(
            evaluate_monomial(&f, LatticePoint::new(0, 0), (Fe(3), Fe(4))),
            Fe::ONE
        );
        assert_eq!(
            evaluate_monomial(&f, LatticePoint::new(1, 2), (Fe(2), Fe(3))),
            Fe(3)
        );
        assert_eq!(
            evaluate_monomial(&f, LatticePoint::new(-1, 0), (Fe(2), Fe(1))),
            Fe(3)
        );
    }

    #[test]
    fn built_dimensions() {
        let c = build_code(&hirz_full(5, 1, 1, 1)).unwrap();
        assert_eq!((c.code.n(), c.code.k()), (16, 5));
        assert_eq!(c.raw.nrows(), 5);
        let c = build_code(&hirz_full(5, 1, 2, 1)).unwrap();
        assert_eq!((c.code.n(), c.code.k()), (16, 7));

        let f = Field::with_order(7).unwrap();
        let single = SupportSet::from_sets(&f, &[Fe(3)], &[], &[], &[Fe(2)]).unwrap();
        let tri = LatticePolytope::new(vec![
            LatticePoint::new(0, 0),
            LatticePoint::new(1, 0),
            LatticePoint::new(0, 1),
        ])
        .unwrap();
        let c = build_code(&ToricCodeSpec::new(tri.clone(), single)).unwrap();
        assert_eq!(c.code.k(), 1);
        assert_eq!(c.code.generator().to_ints(), vec![vec![1]]);

        let empty = SupportSet::from_sets(&f, &[], &[], &[], &[]).unwrap();
        assert_eq!(
            build_code(&ToricCodeSpec::new(tri, empty)).unwrap_err(),
            ToricError::EmptySupport
        );
    }

    #[test]
    fn closed_form_parameters() {
        let f5 = Field::with_order(5).unwrap();
        let f8 = Field::with_order(8).unwrap();
        assert_eq!(
            hirzebruch_params(&f5, 1, 1, 1).unwrap(),
            HirzebruchParams { n: 16, k: 5, d: 8 }
        );
        assert_eq!(
            hirzebruch_params(&f8, 1, 1, 1).unwrap(),
            HirzebruchParams { n: 49, k: 5, d: 35 }
        );
        assert_eq!(
            hirzebruch_params(&f5, 1, 2, 1).unwrap(),
            HirzebruchParams { n: 16, k: 7, d: 4 }
        );
        assert_eq!(
            hirzebruch_params(&f5, 3, 1, 1).unwrap_err(),
            ToricError::Hypothesis("e+rd<q-1")
        );
        assert_eq!(
            hirzebruch_params(&f5, 4, 1, 1).unwrap_err(),
            ToricError::Hypothesis("d<q-1")
        );
        assert_eq!(
            hirzebruch_params(&f5, 1, 4, 1).unwrap_err(),
            ToricError::Hypothesis("e<q-1")
        );
        assert!(matches!(
            hirzebruch_params(&f5, 1, 1, 0),
            Err(ToricError::Geometry(_))
        ));
    }

    #[test]
    fn strata_bounds() {
        assert_eq!(strata_distance_bound(&hirz_full(5, 1, 1, 1)).unwrap(), 8);
        assert_eq!(strata_distance_bound(&hirz_full(8, 1, 1, 1)).unwrap(), 35);
        assert_eq!(strata_distance_bound(&hirz_full(7, 2, 1, 1)).unwrap(), 18);
        let f = Field::with_order(7).unwrap();
        let sq = LatticePolytope::new(vec![
            LatticePoint::new(0, 0),
            LatticePoint::new(1, 0),
            LatticePoint::new(1, 1),
            LatticePoint::new(0, 1),
        ])
        .unwrap();
        let spec = ToricCodeSpec::new(sq, SupportSet::full(&f).unwrap());
        assert_eq!(
            strata_distance_bound(&spec).unwrap_err(),
            ToricError::Unsupported
        );
    }

    #[test]
    fn spec_json_roundtrip() {
        let f = Field::with_order(8).unwrap();
        let s = SupportSet::from_sets(&f, &[Fe(2), Fe(3)], &[], &[], &[Fe(4)]).unwrap();
        let spec = ToricCodeSpec::new(LatticePolytope::hirzebruch(1, 1, 1).unwrap(), s);
        let j = spec.to_json();
        assert_eq!(
            j.to_string(),
            r#"{"field":{"m":3,"modulus":[1,1,0,1],"p":2},"polytope":{"vertices":[[0,0],[1,0],[1,2],[0,1]]},"support":{"I1":[2,3],"I2":[],"J1":[],"J2":[4],"kind":"pieces"}}"#
        );
        assert_eq!(ToricCodeSpec::from_json(&j).unwrap(), spec);
        let full = hirz_full(5, 1, 1, 1);
        assert_eq!(ToricCodeSpec::from_json(&full.to_json()).unwrap(), full);
    }
}
