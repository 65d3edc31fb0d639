//! Closed-form predictions for the normal bundle of a general rational curve
//! of degree d in Gr(a, a+b).
//!
//! This module evaluates the restricted tangent type, the slope, the
//! characteristic-2 type formula, the degeneracy-range direct-sum
//! decomposition, and the balancedness classifier with its three exception
//! families. A report distinguishes what is proven unbalanced (the exception
//! families, under the hypotheses that actually force summands) from what is
//! conjectured balanced.

use crate::field::is_prime;
use crate::rational::ExactRational;
use crate::splitting::{balanced_type, parity_two_balanced_type, SplittingType};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredictorError {
    #[error("Gr(1,2) is a projective line; there is no normal bundle to predict")]
    DegenerateGrassmannian,
    #[error("d = {d} is not in a degeneracy range for (a,b) = ({a},{b})")]
    NotDegenerateRange { a: i64, b: i64, d: i64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Normalized parameters: a <= b is enforced by the duality swap
/// Gr(a, V) = Gr(b, V*), and the swap is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrassmannianParams {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub swapped: bool,
}

impl GrassmannianParams {
    pub fn new(a: i64, b: i64, d: i64, characteristic: u64) -> Result<Self, PredictorError> {
        if a < 1 || b < 1 {
            return Err(PredictorError::InvalidParams(format!(
                "need a, b >= 1, got ({a},{b})"
            )));
        }
        if d < 1 {
            return Err(PredictorError::InvalidParams(format!("need d >= 1, got {d}")));
        }
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(PredictorError::InvalidParams(format!(
                "characteristic {characteristic} is neither 0 nor prime"
            )));
        }
        let (a, b, swapped) = if a <= b { (a, b, false) } else { (b, a, true) };
        if b < 2 {
            return Err(PredictorError::DegenerateGrassmannian);
        }
        Ok(Self {
            a,
            b,
            d,
            characteristic,
            swapped,
        })
    }
}

/// d = a q1 + r1 and d = b q2 + r2 with 0 <= r1 < a, 0 <= r2 < b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TangentDivision {
    pub q1: i64,
    pub r1: i64,
    pub q2: i64,
    pub r2: i64,
}

impl TangentDivision {
    pub fn new(a: i64, b: i64, d: i64) -> Self {
        Self {
            q1: d.div_euclid(a),
            r1: d.rem_euclid(a),
            q2: d.div_euclid(b),
            r2: d.rem_euclid(b),
        }
    }
}

/// Splitting type of the restricted tangent bundle T_Gr|_C:
/// O(q1+q2+2)^(r1 r2) + O(q1+q2+1)^(r1(b-r2)+r2(a-r1)) + O(q1+q2)^((a-r1)(b-r2)).
pub fn tangent_restriction_type(a: i64, b: i64, d: i64) -> SplittingType {
    assert!(a >= 1 && b >= 1 && d >= 0);
    let TangentDivision { q1, r1, q2, r2 } = TangentDivision::new(a, b, d);
    let base = q1 + q2;
    let mut entries = Vec::with_capacity((a * b) as usize);
    entries.extend(std::iter::repeat(base + 2).take((r1 * r2) as usize));
    entries.extend(std::iter::repeat(base + 1).take((r1 * (b - r2) + r2 * (a - r1)) as usize));
    entries.extend(std::iter::repeat(base).take(((a - r1) * (b - r2)) as usize));
    SplittingType::new(entries)
}

/// Slope of the n-times lower-modified normal bundle:
/// ((a+b)d - 2 + an) / (ab - 1).
pub fn normal_slope(a: i64, b: i64, d: i64, n: i64) -> Result<ExactRational, PredictorError> {
    if a * b <= 1 {
        return Err(PredictorError::DegenerateGrassmannian);
    }
    let num = (a + b) as i128 * d as i128 - 2 + a as i128 * n as i128;
    Ok(ExactRational::new(num, (a * b - 1) as i128).expect("nonzero denominator"))
}

/// Characteristic-2 type of the normal bundle of a general degree-d rational
/// curve in P^b: write d - 1 = (b-1)q + r, then the type is
/// O(d+2q+2)^r + O(d+2q)^(b-1-r).
pub fn char2_projective_type(b: i64, d: i64) -> SplittingType {
    assert!(b >= 2 && d >= 1);
    let q = (d - 1).div_euclid(b - 1);
    let r = (d - 1).rem_euclid(b - 1) as usize;
    let mut entries = vec![d + 2 * q + 2; r];
    entries.extend(std::iter::repeat(d + 2 * q).take((b - 1) as usize - r));
    let ty = SplittingType::new(entries);
    debug_assert_eq!(ty.rank() as i64, b - 1);
    debug_assert_eq!(ty.degree(), (b + 1) * d - 2);
    debug_assert_eq!(
        ty,
        parity_two_balanced_type((b - 1) as usize, (b + 1) * d - 2, (d.rem_euclid(2)) as u8)
            .expect("parity type exists")
    );
    ty
}

/// The structure behind the degeneracy exceptions: for d inside (1,a) or
/// (a,b) the normal bundle splits off trivial pointing factors, and the
/// remaining part is the normal bundle in a smaller Grassmannian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegeneracyDecomposition {
    /// Full predicted type, trivial factors merged with the inner part.
    pub full: SplittingType,
    /// Parameters (a', b', d) of the inner normal bundle.
    pub inner_params: (i64, i64, i64),
    /// Inner normal type, assumed balanced (a conjecture input, recorded).
    pub inner_type: SplittingType,
    pub inner_assumed_balanced: bool,
    /// Type of one trivial factor (Q|_C or S^dual restricted).
    pub factor_type: SplittingType,
    pub factor_copies: i64,
}

/// Decomposes N for a <= b and d strictly inside (1,a) or (a,b).
pub fn degeneracy_decomposition(
    a: i64,
    b: i64,
    d: i64,
) -> Result<DegeneracyDecomposition, PredictorError> {
    assert!(a >= 1 && a <= b);
    let (inner_params, factor_type, factor_copies) = if 1 < d && d < a {
        // N = N_{Gr(d, d+b)} + Q|_C^(a-d); Q|_C has rank b, degree d
        ((d, b, d), balanced_type(b as usize, d), a - d)
    } else if a < d && d < b {
        // N = N_{Gr(a, a+d)} + (S^dual|_C)^(b-d); S^dual has rank a, degree d
        ((a, d, d), balanced_type(a as usize, d), b - d)
    } else {
        return Err(PredictorError::NotDegenerateRange { a, b, d });
    };
    let (ia, ib, id) = inner_params;
    let inner_type = balanced_type((ia * ib - 1) as usize, (ia + ib) * id - 2);
    let mu_inner = inner_type.slope();
    let mu_factor = factor_type.slope();
    // slope gaps that make the sum unbalanced, from the exception argument
    if d < a {
        let one = ExactRational::from_int(1);
        assert!(mu_factor.try_lt(&one).unwrap() && one.try_lt(&mu_inner).unwrap());
    } else {
        let gap = mu_inner
            .checked_sub(ExactRational::from_int(1))
            .expect("small numbers");
        assert!(mu_factor.try_lt(&gap).unwrap());
    }
    let mut full = inner_type.clone();
    for _ in 0..factor_copies {
        full = full.direct_sum(&factor_type);
    }
    assert_eq!(full.rank() as i64, a * b - 1);
    assert_eq!(full.degree(), (a + b) * d - 2);
    assert!(!full.is_balanced(), "degeneracy decomposition is never balanced");
    Ok(DegeneracyDecomposition {
        full,
        inner_params,
        inner_type,
        inner_assumed_balanced: true,
        factor_type,
        factor_copies,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Balanced,
    Degeneracy,
    Char2,
    TangentException,
}

/// Evaluates the three exception families after duality normalization.
/// Every applicable exception is recorded, in the order they are listed;
/// an empty exception set is reported as `[Balanced]`.
pub fn classify_conjecture(a: i64, b: i64, d: i64, characteristic: u64) -> Vec<Classification> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    assert!(b >= 2, "classification needs b >= 2 after normalization");
    let mut labels = Vec::new();
    if d < b && d != 1 && d != a {
        labels.push(Classification::Degeneracy);
    }
    if characteristic == 2 && a == 1 && (d - 1).rem_euclid(b - 1) != 0 {
        labels.push(Classification::Char2);
    }
    let TangentDivision { q1, r1, q2, r2 } = TangentDivision::new(a, b, d);
    if r1 * r2 != 0 && q1 + q2 <= (a - r1) * (b - r2) {
        labels.push(Classification::TangentException);
    }
    if labels.is_empty() {
        labels.push(Classification::Balanced);
    }
    labels
}

/// Summand degrees forced by the restricted tangent type.
///
/// `at_most` is present when q1+q2-1 < (a-r1)(b-r2): comparing h^1 against
/// the twisted tangent sequence forces a summand of degree at most q1+q2
/// (and exactly q1+q2 once the two-balancedness theorem pins it from below).
/// `at_least` is present when the h^0 comparison genuinely forces a summand
/// of degree at least q1+q2+2, which needs the tangent sections to survive
/// modulo those coming from T_C: r1 r2 >= 1 together with q1+q2 >= 1, or
/// r1 r2 >= 2. For d = 1 (where q1+q2 = 0 and r1 r2 = 1) the high summand is
/// not forced, and indeed the normal bundle of a line is balanced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ForcedSummands {
    pub at_most: Option<i64>,
    pub at_least: Option<i64>,
}

pub fn forced_summands(a: i64, b: i64, d: i64) -> ForcedSummands {
    let TangentDivision { q1, r1, q2, r2 } = TangentDivision::new(a, b, d);
    let low = q1 + q2 - 1 < (a - r1) * (b - r2);
    let high = r1 * r2 != 0 && (q1 + q2 >= 1 || r1 * r2 >= 2);
    ForcedSummands {
        at_most: low.then_some(q1 + q2),
        at_least: high.then_some(q1 + q2 + 2),
    }
}

/// Full per-cell prediction bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictionReport {
    pub params: GrassmannianParams,
    pub mu: ExactRational,
    pub tangent_type: SplittingType,
    pub classification: Vec<Classification>,
    pub predicted_type: Option<SplittingType>,
    pub forced_summands: Option<ForcedSummands>,
    pub theorem_guarantee: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<DegeneracyDecomposition>,
}

impl PredictionReport {
    pub fn primary(&self) -> Classification {
        self.classification[0]
    }

    /// True when one of the exception arguments actually proves the general
    /// normal bundle unbalanced (as opposed to the conjecture merely listing
    /// the cell as an exception).
    pub fn proven_unbalanced(&self) -> bool {
        self.classification.iter().any(|c| match c {
            Classification::Degeneracy | Classification::Char2 => true,
            Classification::TangentException => self
                .forced_summands
                .map(|f| f.at_most.is_some() && f.at_least.is_some())
                .unwrap_or(false),
            Classification::Balanced => false,
        })
    }
}

pub fn predict_report(
    a: i64,
    b: i64,
    d: i64,
    characteristic: u64,
) -> Result<PredictionReport, PredictorError> {
    let params = GrassmannianParams::new(a, b, d, characteristic)?;
    let (a, b, d) = (params.a, params.b, params.d);
    let mu = normal_slope(a, b, d, 0)?;
    let tangent_type = tangent_restriction_type(a, b, d);
    let classification = classify_conjecture(a, b, d, characteristic);
    let forced = forced_summands(a, b, d);
    let forced = (forced.at_most.is_some() || forced.at_least.is_some()).then_some(forced);
    let mut degeneracy = None;
    let predicted_type = match classification[0] {
        Classification::Balanced => Some(balanced_type((a * b - 1) as usize, (a + b) * d - 2)),
        Classification::Degeneracy => {
            let dec = degeneracy_decomposition(a, b, d)?;
            let full = dec.full.clone();
            degeneracy = Some(dec);
            Some(full)
        }
        Classification::Char2 => Some(char2_projective_type(b, d)),
        Classification::TangentException => None,
    };
    if let Some(ty) = &predicted_type {
        debug_assert_eq!(ty.rank() as i64, a * b - 1);
        debug_assert_eq!(ty.degree(), (a + b) * d - 2);
    }
    Ok(PredictionReport {
        params,
        mu,
        tangent_type,
        classification,
        predicted_type,
        forced_summands: forced,
        theorem_guarantee: "2-balanced",
        degeneracy,
    })
}
