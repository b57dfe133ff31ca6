//! Twisted surfaces `J^(k1, k2, k3)`: the defining forms after
//! `u -> (u1, √k3 u2, √k2 u3, √k2 √k3 u4)` and
//! `y -> (y1, √k3 y2, √k1 y3, √k1 √k3 y4)`.
//!
//! Each form is homogeneous for the three sign changes `√k_i -> -√k_i`, so
//! after the substitution it equals `∏ √k_i^{e_i}` times a form over `K`.
//! The parity vector `e` is detected once per parameter set; residuals are
//! evaluated over `K(√n)` and multiplied by `∏ √k_i^{e_i}`, which lands
//! them back in `K`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::forms::{self, Consts};
use crate::error::{Error, Result};
use crate::family::CurveParams;
use crate::field::{Fe, Fp2, QuadExtField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistParams {
    kappa: [Fe; 3],
    parity: [[bool; 3]; 15],
}

impl TwistParams {
    /// Requires each `k_i` to be a nonsquare.
    pub fn new(params: &CurveParams, kappa: [Fe; 3]) -> Result<Self> {
        for (i, k) in kappa.iter().enumerate() {
            params.field.ensure(*k)?;
            if k.legendre() != -1 {
                return Err(Error::InvalidTwist(i + 1));
            }
        }
        Ok(Self::new_unchecked(params, kappa))
    }

    /// Skips the nonsquare check; with square `k_i` the twist is trivial.
    pub fn new_unchecked(params: &CurveParams, kappa: [Fe; 3]) -> Self {
        TwistParams {
            kappa,
            parity: detect_parity(params),
        }
    }

    pub fn kappa(&self) -> [Fe; 3] {
        self.kappa
    }

    /// `parity[m][i]` is the exponent of `√k_{i+1}` (mod 2) in form `m`.
    pub fn parity(&self) -> &[[bool; 3]; 15] {
        &self.parity
    }
}

/// Coordinate signs flipped by `√k_i -> -√k_i`, for `i = 1, 2, 3`.
const FLIPS: [([bool; 4], [bool; 4]); 3] = [
    ([false, false, false, false], [false, false, true, true]),
    ([false, false, true, true], [false, false, false, false]),
    ([false, true, false, true], [false, true, false, true]),
];

fn flip(v: &[Fe; 4], s: &[bool; 4]) -> [Fe; 4] {
    std::array::from_fn(|i| if s[i] { -v[i] } else { v[i] })
}

fn detect_parity(params: &CurveParams) -> [[bool; 3]; 15] {
    let k = Consts::of(params);
    let field = params.field;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7715);
    let mut parity = [[false; 3]; 15];
    let mut done = [false; 15];
    for _ in 0..64 {
        let u: [Fe; 4] = std::array::from_fn(|_| field.random(&mut rng));
        let y: [Fe; 4] = std::array::from_fn(|_| field.random(&mut rng));
        let base = forms::defining_residuals(&k, &u, &y);
        for (i, (su, sy)) in FLIPS.iter().enumerate() {
            let flipped = forms::defining_residuals(&k, &flip(&u, su), &flip(&y, sy));
            for m in 0..15 {
                if done[m] || base[m].is_zero() {
                    continue;
                }
                if flipped[m] == -base[m] {
                    parity[m][i] = true;
                } else {
                    assert_eq!(
                        flipped[m], base[m],
                        "form {m} is not homogeneous under the twist"
                    );
                }
            }
        }
        for m in 0..15 {
            done[m] |= !base[m].is_zero();
        }
        if done.iter().all(|&d| d) {
            return parity;
        }
    }
    panic!("could not find a point where every form is nonzero");
}

/// Square roots of the `k_i` in `K(√n)`.
pub fn kappa_roots(ext: &QuadExtField, tw: &TwistParams) -> [Fp2; 3] {
    tw.kappa.map(|k| ext.sqrt_of_base(k))
}

/// The scaling taking twisted coordinates to coordinates on `J`.
pub fn scaling(ext: &QuadExtField, tw: &TwistParams) -> ([Fp2; 4], [Fp2; 4]) {
    let [s1, s2, s3] = kappa_roots(ext, tw);
    let one = ext.embed(ext.base().one());
    ([one, s3, s2, s2 * s3], [one, s3, s1, s1 * s3])
}

/// Twisted residuals at a point with coordinates in `K(√n)`.
pub fn twist_residuals_ext(
    params: &CurveParams,
    tw: &TwistParams,
    ext: &QuadExtField,
    u: &[Fp2; 4],
    y: &[Fp2; 4],
) -> [Fp2; 15] {
    let k = Consts::of(params).map(|x| ext.embed(x));
    let (su, sy) = scaling(ext, tw);
    let us: [Fp2; 4] = std::array::from_fn(|i| u[i] * su[i]);
    let ys: [Fp2; 4] = std::array::from_fn(|i| y[i] * sy[i]);
    let roots = kappa_roots(ext, tw);
    let raw = forms::defining_residuals(&k, &us, &ys);
    std::array::from_fn(|m| {
        let mut r = raw[m];
        for (root, &odd) in roots.iter().zip(&tw.parity[m]) {
            if odd {
                r = r * *root;
            }
        }
        r
    })
}

/// Twisted residuals at a `K`-rational point; each lies in `K`.
pub fn twist_residuals(
    params: &CurveParams,
    tw: &TwistParams,
    u: &[Fe; 4],
    y: &[Fe; 4],
) -> [Fe; 15] {
    let ext = QuadExtField::standard(params.field);
    let r = twist_residuals_ext(
        params,
        tw,
        &ext,
        &u.map(|x| ext.embed(x)),
        &y.map(|x| ext.embed(x)),
    );
    r.map(|x| {
        x.base_value()
            .expect("odd power of a square root left after clearing")
    })
}

pub fn is_twisted_member(params: &CurveParams, tw: &TwistParams, u: &[Fe; 4], y: &[Fe; 4]) -> bool {
    twist_residuals(params, tw, u, y)
        .iter()
        .all(|r| r.is_zero())
}
