//! Divisor-class arithmetic on a genus-2 curve `y^2 = h(x)`.
//!
//! A class is stored as `E - D_inf`, where `E` is effective of degree 2 and
//! `D_inf` is the divisor at infinity (`inf+ + inf-`, or `2 inf` when `h` has
//! degree 5). `E` is given by a Mumford pair `(u, v)` for its affine part
//! together with its multiplicities at the points at infinity. Outside the
//! identity this representation is unique; the identity is stored as
//! `u = 1, v = 0` with one copy of each point at infinity (`2 inf` when
//! ramified).
//!
//! Addition composes the affine parts (Cantor), cancels fibres, and reduces a
//! remaining degree-4 divisor with the cubic `y = c(x)` through it.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField, QuadExtField, Ring};
use crate::linalg;
use crate::poly::Poly;

/// Behaviour of the curve above `x = infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Infinity {
    /// `h6 = s^2`: two rational points `inf+` and `inf-`, with `y ~ +-s x^3`.
    Split { s: Fe },
    /// `h6` a nonsquare: the two points at infinity are conjugate.
    Inert,
    /// `deg h = 5`: a single rational Weierstrass point at infinity.
    Ramified,
}

/// A divisor class in Mumford form with multiplicities at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MumfordDivisor {
    pub u: Poly,
    pub v: Poly,
    /// Multiplicities of `inf+` and `inf-` in `E` (first entry only when
    /// ramified).
    pub inf: [u8; 2],
}

impl MumfordDivisor {
    /// Degree of `u`.
    pub fn weight(&self) -> usize {
        self.u.deg().max(0) as usize
    }

    pub fn field(&self) -> PrimeField {
        self.u.field()
    }
}

impl std::fmt::Debug for MumfordDivisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(u={:?}, v={:?}, inf={:?})", self.u, self.v, self.inf)
    }
}

/// The curve `y^2 = h(x)` with `deg h` in `{5, 6}` and `h` squarefree.
#[derive(Clone, Debug)]
pub struct HyperCurve {
    field: PrimeField,
    h: Poly,
    inf: Infinity,
    // Laurent coefficients of sqrt(h) at inf+: s x^3 + t2 x^2 + t1 x + t0 + ...
    t: [Fe; 3],
}

impl HyperCurve {
    pub fn new(coeffs: [Fe; 7]) -> Result<HyperCurve> {
        let field = coeffs[0].field();
        let h = Poly::new(field, coeffs.to_vec());
        if h.deg() < 5 || !Poly::gcd(&h, &h.deriv()).deg().eq(&0) {
            return Err(Error::SingularCurve);
        }
        let zero = field.zero();
        let (inf, t) = if coeffs[6].is_zero() {
            (Infinity::Ramified, [zero; 3])
        } else if let Ok(s) = coeffs[6].sqrt() {
            let two_s = s.double();
            let t2 = coeffs[5] / two_s;
            let t1 = (coeffs[4] - t2.square()) / two_s;
            let t0 = (coeffs[3] - (t2 * t1).double()) / two_s;
            (Infinity::Split { s }, [t2, t1, t0])
        } else {
            (Infinity::Inert, [zero; 3])
        };
        Ok(HyperCurve { field, h, inf, t })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.h.coeff(i)
    }

    pub fn infinity(&self) -> Infinity {
        self.inf
    }

    pub fn identity(&self) -> MumfordDivisor {
        let inf = if self.inf == Infinity::Ramified {
            [2, 0]
        } else {
            [1, 1]
        };
        MumfordDivisor {
            u: Poly::one(self.field),
            v: Poly::zero(self.field),
            inf,
        }
    }

    pub fn is_identity(&self, d: &MumfordDivisor) -> bool {
        *d == self.identity()
    }

    /// Checks that `d` is a canonical representative of a class on this
    /// curve.
    pub fn validate(&self, d: &MumfordDivisor) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidDivisor(m.to_string()));
        if d.field() != self.field || d.v.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if !d.u.is_monic() {
            return bad("u is not monic");
        }
        let w = d.weight();
        if w > 2 {
            return bad("u has degree above 2");
        }
        if d.v.deg() >= d.u.deg().max(0) && !(w == 0 && d.v.is_zero()) {
            return bad("deg v >= deg u");
        }
        if !d.v.square().sub(&self.h).rem(&d.u)?.is_zero() {
            return bad("v^2 != h mod u");
        }
        let [np, nm] = d.inf;
        if w + np as usize + nm as usize != 2 {
            return bad("degree of E is not 2");
        }
        match self.inf {
            Infinity::Ramified if nm != 0 => {
                return bad("ramified curve has one point at infinity")
            }
            Infinity::Inert if np != nm => return bad("points at infinity are not rational"),
            _ => {}
        }
        if self.inf != Infinity::Ramified && np > 0 && nm > 0 && w != 0 {
            return bad("non-canonical fibre at infinity");
        }
        Ok(())
    }

    /// Class of `P + Q - D_inf` for affine points `P, Q` with distinct x.
    pub fn from_points(&self, p: (Fe, Fe), q: (Fe, Fe)) -> Result<MumfordDivisor> {
        let ((x1, y1), (x2, y2)) = (p, q);
        for (x, y) in [p, q] {
            if y.square() != self.h.eval(x) {
                return Err(Error::InvalidDivisor("point is not on the curve".into()));
            }
        }
        let slope = (y2 - y1).checked_div(x2 - x1)?;
        let u = Poly::x_minus(x1).mul(&Poly::x_minus(x2));
        let v = Poly::new(self.field, vec![y1 - slope * x1, slope]);
        Ok(MumfordDivisor { u, v, inf: [0, 0] })
    }

    /// Class of `P - inf` (ramified) or `P + inf(sign) - D_inf` (split).
    pub fn point_at_infinity_pair(&self, p: (Fe, Fe), plus: bool) -> Result<MumfordDivisor> {
        let (x, y) = p;
        if y.square() != self.h.eval(x) {
            return Err(Error::InvalidDivisor("point is not on the curve".into()));
        }
        let inf = match self.inf {
            Infinity::Ramified => [1, 0],
            Infinity::Split { .. } => {
                if plus {
                    [1, 0]
                } else {
                    [0, 1]
                }
            }
            Infinity::Inert => {
                return Err(Error::InvalidDivisor(
                    "no rational point at infinity".into(),
                ))
            }
        };
        Ok(MumfordDivisor {
            u: Poly::x_minus(x),
            v: Poly::constant(y),
            inf,
        })
    }

    pub fn neg(&self, d: &MumfordDivisor) -> MumfordDivisor {
        let inf = if self.inf == Infinity::Ramified {
            d.inf
        } else {
            [d.inf[1], d.inf[0]]
        };
        MumfordDivisor {
            u: d.u.clone(),
            v: d.v.neg(),
            inf,
        }
    }

    // Cantor composition of two semi-reduced affine parts. Returns the
    // composed pair and the number of vertical fibres removed.
    fn compose(&self, u1: &Poly, v1: &Poly, u2: &Poly, v2: &Poly) -> Result<(Poly, Poly, usize)> {
        let (d0, e1, e2) = Poly::xgcd(u1, u2);
        let (d, c1, c2) = Poly::xgcd(&d0, &v1.add(v2));
        let s1 = c1.mul(&e1);
        let s2 = c1.mul(&e2);
        let u = u1.mul(u2).div_exact(&d.square())?;
        let num = s1
            .mul(u1)
            .mul(v2)
            .add(&s2.mul(u2).mul(v1))
            .add(&c2.mul(&v1.mul(v2).add(&self.h)));
        let v = num.div_exact(&d)?;
        let v = if u.deg() > 0 {
            v.rem(&u)?
        } else {
            Poly::zero(self.field)
        };
        Ok((u, v, d.deg() as usize))
    }

    pub fn add(&self, d: &MumfordDivisor, e: &MumfordDivisor) -> Result<MumfordDivisor> {
        let (u, v, mut removed) = self.compose(&d.u, &d.v, &e.u, &e.v)?;
        let mut np = d.inf[0] + e.inf[0];
        let mut nm = d.inf[1] + e.inf[1];
        if self.inf == Infinity::Ramified {
            removed += (np / 2) as usize;
            np %= 2;
        } else {
            let k = np.min(nm);
            removed += k as usize;
            np -= k;
            nm -= k;
        }
        let out = match removed {
            0 => self.reduce(&u, &v, np, nm)?,
            1 => MumfordDivisor {
                u,
                v,
                inf: [np, nm],
            },
            _ => self.identity(),
        };
        debug_assert!(self.validate(&out).is_ok(), "invalid sum {out:?}");
        Ok(out)
    }

    // Reduces E' - 2 D_inf with deg E' = 4 to a canonical class, using the
    // function y - c(x) that vanishes on E'.
    fn reduce(&self, u: &Poly, v: &Poly, np: u8, nm: u8) -> Result<MumfordDivisor> {
        let f = self.field;
        let zero = f.zero();
        let n_aff = u.deg().max(0) as usize;
        let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(4);
        let mut rhs = Vec::with_capacity(4);
        if n_aff > 0 {
            let pows: Vec<Poly> = (0..4)
                .map(|i| {
                    let mut c = vec![zero; i + 1];
                    c[i] = f.one();
                    Poly::new(f, c).rem(u)
                })
                .collect::<Result<_>>()?;
            for j in 0..n_aff {
                rows.push(pows.iter().map(|p| p.coeff(j)).collect());
                rhs.push(v.coeff(j));
            }
        }
        let (n_side, sign) = if np > 0 {
            (np as usize, f.one())
        } else {
            (nm as usize, -f.one())
        };
        match self.inf {
            Infinity::Split { s } => {
                let lead = [s, self.t[0], self.t[1], self.t[2]];
                for (k, &val) in lead.iter().enumerate().take(n_side) {
                    let mut row = vec![zero; 4];
                    row[3 - k] = f.one();
                    rows.push(row);
                    rhs.push(sign * val);
                }
            }
            Infinity::Ramified => {
                if n_side == 1 {
                    rows.push(vec![zero, zero, zero, f.one()]);
                    rhs.push(zero);
                }
            }
            Infinity::Inert => {}
        }
        if rows.len() != 4 {
            return Err(Error::UnsupportedDegenerateConfiguration(
                "reduction input is not of degree 4".into(),
            ));
        }
        let c = linalg::solve(&rows, &rhs).ok_or_else(|| {
            Error::UnsupportedDegenerateConfiguration("interpolating cubic is not unique".into())
        })?;
        let cp = Poly::new(f, c);
        let p = cp.square().sub(&self.h);
        let z = 6 - p.deg() as usize;
        let u3 = p.div_exact(u)?.monic()?;
        let v3 = if u3.deg() > 0 {
            cp.rem(&u3)?
        } else {
            Poly::zero(f)
        };
        let (mut e_p, mut e_m) = (0u8, 0u8);
        if z > 0 {
            let extra = (z - n_side) as u8;
            match self.inf {
                Infinity::Split { s } => {
                    if cp.coeff(3) == s {
                        e_p = z as u8 - np;
                    } else if cp.coeff(3) == -s {
                        e_m = z as u8 - nm;
                    } else {
                        return Err(Error::UnsupportedDegenerateConfiguration(
                            "zero at infinity off both branches".into(),
                        ));
                    }
                }
                Infinity::Ramified => e_p = extra,
                Infinity::Inert => {
                    return Err(Error::UnsupportedDegenerateConfiguration(
                        "zero at inert infinity".into(),
                    ))
                }
            }
        }
        // result is the image of E3 under the hyperelliptic involution
        let out = if self.inf == Infinity::Ramified {
            MumfordDivisor {
                u: u3,
                v: v3.neg(),
                inf: [e_p, 0],
            }
        } else {
            MumfordDivisor {
                u: u3,
                v: v3.neg(),
                inf: [e_m, e_p],
            }
        };
        if out.weight() + out.inf[0] as usize + out.inf[1] as usize != 2 {
            return Err(Error::UnsupportedDegenerateConfiguration(
                "residual divisor has wrong degree".into(),
            ));
        }
        Ok(out)
    }

    pub fn double(&self, d: &MumfordDivisor) -> Result<MumfordDivisor> {
        self.add(d, d)
    }

    pub fn sub(&self, d: &MumfordDivisor, e: &MumfordDivisor) -> Result<MumfordDivisor> {
        self.add(d, &self.neg(e))
    }

    /// `k * d` by double-and-add; negative `k` multiplies the negation.
    pub fn scalar_mul(&self, k: i64, d: &MumfordDivisor) -> Result<MumfordDivisor> {
        let base = if k < 0 { self.neg(d) } else { d.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = self.identity();
        let mut q = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &q)?;
            }
            n >>= 1;
            if n > 0 {
                q = self.double(&q)?;
            }
        }
        Ok(acc)
    }

    /// Uniform random affine point with the given x, if one exists.
    fn point_at<R: Rng + ?Sized>(&self, x: Fe, rng: &mut R) -> Option<(Fe, Fe)> {
        let y = self.h.eval(x).sqrt().ok()?;
        Some((x, if rng.gen_bool(0.5) { -y } else { y }))
    }

    /// `P + Q - D_inf` for two random affine points with distinct x.
    pub fn random_divisor<R: Rng + ?Sized>(&self, rng: &mut R) -> MumfordDivisor {
        loop {
            let Some(p) = self.point_at(self.field.random(rng), rng) else {
                continue;
            };
            let Some(q) = self.point_at(self.field.random(rng), rng) else {
                continue;
            };
            if p.0 != q.0 {
                return self.from_points(p, q).expect("distinct x");
            }
        }
    }

    /// Sum of two random divisors; reaches classes whose support is not
    /// rational pointwise.
    pub fn random_class<R: Rng + ?Sized>(&self, rng: &mut R) -> MumfordDivisor {
        let a = self.random_divisor(rng);
        let b = self.random_divisor(rng);
        self.add(&a, &b).expect("reduction is total")
    }

    /// Number of points over `F_p` and `F_{p^2}`, points at infinity included.
    pub fn point_counts(&self) -> (u64, u64) {
        let p = self.field.modulus();
        let inf = match self.inf {
            Infinity::Split { .. } => 2,
            Infinity::Inert => 0,
            Infinity::Ramified => 1,
        };
        let n1 = self
            .field
            .elements()
            .map(|x| (1 + self.h.eval(x).legendre() as i64) as u64)
            .sum::<u64>()
            + inf;
        let ext = QuadExtField::standard(self.field);
        let coeffs: Vec<_> = self.h.coeffs().iter().map(|&c| ext.embed(c)).collect();
        let mut n2 = if self.inf == Infinity::Ramified { 1 } else { 2 };
        for a in 0..p {
            for b in 0..p {
                let x = ext.new_elem(self.field.elem(a), self.field.elem(b));
                let hx = coeffs
                    .iter()
                    .rev()
                    .fold(x.zero_like(), |acc, &c| acc * x + c);
                n2 += (1 + hx.legendre() as i64) as u64;
            }
        }
        (n1, n2)
    }

    /// `#J(F_p) = (N1^2 + N2)/2 - p`.
    pub fn jacobian_order(&self) -> u64 {
        let (n1, n2) = self.point_counts();
        ((n1 as u128 * n1 as u128 + n2 as u128) / 2 - self.field.modulus() as u128) as u64
    }
}
