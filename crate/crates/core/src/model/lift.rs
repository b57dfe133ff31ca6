//! Recovering `y` from `u`: with the second point fixed at `D_1` the law
//! gives `M = [M11, M12, M22, M33, M34, M44]` (the `r_i(u)`), projectively
//! equal to `N = [y1^2, y1 y2, y2^2, -y3^2, -y3 y4, -y4^2]`.

use super::{forms, neg, Consts, ModelPoint};
use crate::error::{Error, Result};
use crate::family::CurveParams;
use crate::field::Ring;
use crate::kummer::{self, LPoint};
use crate::proj;

/// Outcome of [`solve_n_pattern`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NSolution<T> {
    /// One solution; the other is `y` with `y3, y4` negated.
    Found([T; 4]),
    /// Every entry of `M` vanishes.
    ZeroM,
    /// The needed square root does not exist.
    NoRoot,
}

/// Solves `N(y) ~ m` for `y`, using `sqrt` for the one square root that may
/// be needed.
pub fn solve_n_pattern<T: Ring>(m: &[T; 6], sqrt: impl Fn(T) -> Option<T>) -> NSolution<T> {
    let [m11, m12, m22, m33, m34, m44] = *m;
    let zero = m11.zero_like();
    let (pivot, y1, y2) = if !m11.is_zero() {
        (m11, m11, m12)
    } else if !m22.is_zero() {
        (m22, m12, m22)
    } else if !m33.is_zero() {
        return NSolution::Found([zero, zero, m33, m34]);
    } else if !m44.is_zero() {
        return NSolution::Found([zero, zero, m34, m44]);
    } else {
        return NSolution::ZeroM;
    };
    // y3^2 = -pivot M33, y3 y4 = -pivot M34, y4^2 = -pivot M44
    let t3 = -(pivot * m33);
    if !t3.is_zero() {
        return match sqrt(t3) {
            Some(r) => NSolution::Found([y1 * r, y2 * r, t3, -(pivot * m34)]),
            None => NSolution::NoRoot,
        };
    }
    let t4 = -(pivot * m44);
    if !t4.is_zero() {
        return match sqrt(t4) {
            Some(r) => NSolution::Found([y1 * r, y2 * r, zero, t4]),
            None => NSolution::NoRoot,
        };
    }
    NSolution::Found([y1, y2, zero, zero])
}

/// The two model points `{P, -P}` over a point `u` of the `l`-quartic.
pub fn lift_from_kummer(params: &CurveParams, u: &LPoint) -> Result<(ModelPoint, ModelPoint)> {
    if proj::is_zero_vec(u) || !kummer::l_quartic_eval(params, u).is_zero() {
        return Err(Error::NotOnSurface);
    }
    let m = forms::r_quadrics(&Consts::of(params), u);
    let p = match solve_n_pattern(&m, |t| t.sqrt().ok()) {
        NSolution::Found(y) => ModelPoint::new(*u, y)?,
        NSolution::ZeroM => lift_through_divisor(params, u)?,
        NSolution::NoRoot => return Err(Error::NonRationalLift),
    };
    if !super::is_member(params, &p) {
        return Err(Error::InconsistentM);
    }
    Ok((p, neg(&p)))
}

/// Fallback for the points where every `M` entry vanishes.
fn lift_through_divisor(params: &CurveParams, u: &LPoint) -> Result<ModelPoint> {
    let k = kummer::from_l(params, u);
    let (d, _) = kummer::mumford_from_kummer(params, &k).map_err(|e| match e {
        Error::NonRationalPreimage => Error::NonRationalLift,
        e => e,
    })?;
    let p = super::embed(params, &d)?;
    if !proj::proj_eq(p.u(), u) {
        return Err(Error::InconsistentM);
    }
    Ok(p)
}
