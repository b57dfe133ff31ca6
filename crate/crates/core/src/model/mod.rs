//! The `P^3 x P^3` model of the Jacobian: points `(l(D), l(D + D_1))`, the
//! fifteen defining forms, and the `A`/`J` matrix group law.

pub mod forms;
pub mod lift;
pub mod symmetry;
pub mod twist;

use crate::divisor::MumfordDivisor;
use crate::error::{Error, Result};
use crate::family::{universality_report, CurveParams};
use crate::field::Fe;
use crate::kummer::{self, LPoint};
use crate::proj;

pub use forms::Consts;
pub use lift::lift_from_kummer;
pub use symmetry::Symmetry;

/// A point `(u, y)` of the model, each factor scaled so that its first
/// nonzero coordinate is 1. Equality is therefore projective equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModelPoint {
    u: LPoint,
    y: LPoint,
}

impl ModelPoint {
    /// Normalizes both factors; fails if either is the zero tuple.
    pub fn new(u: LPoint, y: LPoint) -> Result<Self> {
        if proj::is_zero_vec(&u) || proj::is_zero_vec(&y) {
            return Err(Error::InvalidPoint("zero factor".into()));
        }
        let p = u[0].modulus();
        if u.iter().chain(y.iter()).any(|x| x.modulus() != p) {
            return Err(Error::FieldMismatch);
        }
        Ok(ModelPoint {
            u: proj::normalize(u),
            y: proj::normalize(y),
        })
    }

    pub fn u(&self) -> &LPoint {
        &self.u
    }

    pub fn y(&self) -> &LPoint {
        &self.y
    }

    fn parts(&self) -> (&LPoint, &LPoint) {
        (&self.u, &self.y)
    }
}

/// Column selection for [`add`]. Column indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddStrategy {
    /// First nonzero column, chosen separately for `A` and `J`.
    FirstNonzeroColumn,
    /// Column `j` of `A` and column `j'` of `J`.
    Columns(usize, usize),
    /// `sum c_j A_{*j}` and `sum c'_j J_{*j}`.
    LinearComb([Fe; 4], [Fe; 4]),
    /// `c col_1 - delta col_3` for both matrices.
    Universal,
}

/// `Universal` when the parameters allow it, else `FirstNonzeroColumn`.
pub fn default_strategy(params: &CurveParams) -> AddStrategy {
    if params.delta.is_some() && universality_report(params).universal() {
        AddStrategy::Universal
    } else {
        AddStrategy::FirstNonzeroColumn
    }
}

/// The image of the identity, `([1, 1, -1, -1], [b, 1, 0, 0])`.
pub fn identity_point(params: &CurveParams) -> ModelPoint {
    let k = params.field;
    let (o, z) = (k.one(), k.zero());
    ModelPoint::new([o, o, -o, -o], [params.b, o, z, z]).expect("nonzero")
}

/// `(l(D), l(D + D_1))`.
pub fn embed(params: &CurveParams, d: &MumfordDivisor) -> Result<ModelPoint> {
    let d1 = kummer::make_d1(params)?;
    let curve = params.jacobian_curve();
    let shifted = curve.add(d, &d1)?;
    ModelPoint::new(kummer::l_of(params, d), kummer::l_of(params, &shifted))
}

pub fn r_quadrics(params: &CurveParams, u: &LPoint) -> [Fe; 6] {
    forms::r_quadrics(&Consts::of(params), u)
}

/// The `s_i`: the same quadrics applied to `y`.
pub fn s_quadrics(params: &CurveParams, y: &LPoint) -> [Fe; 6] {
    forms::r_quadrics(&Consts::of(params), y)
}

pub fn defining_residuals(params: &CurveParams, p: &ModelPoint) -> [Fe; 15] {
    forms::defining_residuals(&Consts::of(params), &p.u, &p.y)
}

pub fn is_member(params: &CurveParams, p: &ModelPoint) -> bool {
    defining_residuals(params, p).iter().all(|r| r.is_zero())
}

/// `A(P, Q)` with `A_ij = l_i(D + E) l_j(D - E + D_1)`.
pub fn a_matrix(params: &CurveParams, p: &ModelPoint, q: &ModelPoint) -> [[Fe; 4]; 4] {
    forms::a_matrix(&Consts::of(params), p.parts(), q.parts())
}

/// `J(P, Q)` with `J_ij = l_i(D + E + D_1) l_j(D - E)`.
pub fn j_matrix(params: &CurveParams, p: &ModelPoint, q: &ModelPoint) -> [[Fe; 4]; 4] {
    forms::j_matrix(&Consts::of(params), p.parts(), q.parts())
}

fn combine(coeffs: &[Fe; 4], mut col: impl FnMut(usize) -> [Fe; 4]) -> Result<[Fe; 4]> {
    let mut acc: Option<[Fe; 4]> = None;
    for (j, &cj) in coeffs.iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        let v = col(j);
        acc = Some(match acc {
            None => v.map(|x| x * cj),
            Some(a) => std::array::from_fn(|i| a[i] + v[i] * cj),
        });
    }
    match acc {
        Some(v) if !proj::is_zero_vec(&v) => Ok(v),
        _ => Err(Error::DegenerateColumn),
    }
}

fn first_nonzero(mut col: impl FnMut(usize) -> [Fe; 4]) -> Result<[Fe; 4]> {
    (0..4)
        .map(&mut col)
        .find(|v| !proj::is_zero_vec(v))
        .ok_or(Error::DegenerateColumn)
}

fn column_index(j: usize) -> Result<usize> {
    if (1..=4).contains(&j) {
        Ok(j - 1)
    } else {
        Err(Error::InvalidPoint(format!(
            "column index {j} outside 1..4"
        )))
    }
}

/// `P + Q` by the matrix law. Only the columns the strategy needs are
/// evaluated.
pub fn add(
    params: &CurveParams,
    p: &ModelPoint,
    q: &ModelPoint,
    strategy: AddStrategy,
) -> Result<ModelPoint> {
    let k = Consts::of(params);
    let (pp, qq) = (p.parts(), q.parts());
    let a_col = |j: usize| forms::a_column(&k, pp, qq, j);
    let j_col = |j: usize| forms::j_column(&k, pp, qq, j);
    let (u, y) = match strategy {
        AddStrategy::FirstNonzeroColumn => (first_nonzero(a_col)?, first_nonzero(j_col)?),
        AddStrategy::Columns(ja, jj) => {
            let (ja, jj) = (column_index(ja)?, column_index(jj)?);
            let (u, y) = (a_col(ja), j_col(jj));
            if proj::is_zero_vec(&u) || proj::is_zero_vec(&y) {
                return Err(Error::DegenerateColumn);
            }
            (u, y)
        }
        AddStrategy::LinearComb(ca, cj) => (combine(&ca, a_col)?, combine(&cj, j_col)?),
        AddStrategy::Universal => {
            let delta = params.delta()?;
            if !universality_report(params).universal() {
                return Err(Error::UniversalLawUnavailable);
            }
            let z = params.field.zero();
            let w = [params.c, z, -delta, z];
            (combine(&w, a_col)?, combine(&w, j_col)?)
        }
    };
    ModelPoint::new(u, y)
}

/// `2P`: column 2 of `A` (since `l_2(D_1) = 1`) and column 1 of `J`
/// (since `l(E_0)` has no zero coordinate).
pub fn double(params: &CurveParams, p: &ModelPoint) -> Result<ModelPoint> {
    add(params, p, p, AddStrategy::Columns(2, 1))
}

pub fn neg(p: &ModelPoint) -> ModelPoint {
    symmetry::apply(p, Symmetry::Neg)
}

pub fn sub(
    params: &CurveParams,
    p: &ModelPoint,
    q: &ModelPoint,
    strategy: AddStrategy,
) -> Result<ModelPoint> {
    add(params, p, &neg(q), strategy)
}

/// `n P` by double-and-add with the given strategy for the additions.
pub fn scalar_mul(
    params: &CurveParams,
    n: i64,
    p: &ModelPoint,
    strategy: AddStrategy,
) -> Result<ModelPoint> {
    let base = if n < 0 { neg(p) } else { *p };
    let m = n.unsigned_abs();
    let mut acc = identity_point(params);
    for bit in (0..64 - m.leading_zeros()).rev() {
        acc = double(params, &acc)?;
        if (m >> bit) & 1 == 1 {
            acc = add(params, &acc, &base, strategy)?;
        }
    }
    Ok(acc)
}

/// `a d u1 - b^2 c e u2 - d e u3 + b^2 f u4`.
pub fn near_miss_functional(params: &CurveParams, u: &LPoint) -> Fe {
    let CurveParams {
        a, b, c, d, e, f, ..
    } = *params;
    let b2 = b.square();
    a * d * u[0] - b2 * c * e * u[1] - d * e * u[2] + b2 * f * u[3]
}

/// `c u1 - delta u3`.
pub fn universal_functional(params: &CurveParams, u: &LPoint) -> Result<Fe> {
    Ok(params.c * u[0] - params.delta()? * u[2])
}
