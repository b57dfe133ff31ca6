//! Dense univariate polynomials over a prime field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, PrimeField};

/// Polynomial with coefficients stored low-to-high and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    c: Vec<Fe>,
}

impl Poly {
    pub fn new(field: PrimeField, mut c: Vec<Fe>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { field, c }
    }

    pub fn zero(field: PrimeField) -> Poly {
        Poly {
            field,
            c: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Poly {
        Poly {
            field,
            c: vec![field.one()],
        }
    }

    pub fn constant(x: Fe) -> Poly {
        Poly::new(x.field(), vec![x])
    }

    /// The linear polynomial `x - r`.
    pub fn x_minus(r: Fe) -> Poly {
        Poly::new(r.field(), vec![-r, r.one_like()])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lead(&self) -> Fe {
        self.c.last().copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn eval(&self, x: Fe) -> Fe {
        self.c
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, &a| acc * x + a)
    }

    pub fn deriv(&self) -> Poly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| a.lift(i as i64) * a)
            .collect();
        Poly::new(self.field, c)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            self.field,
            (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            self.field,
            (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            c: self.c.iter().map(|&a| -a).collect(),
        }
    }

    pub fn scale(&self, k: Fe) -> Poly {
        Poly::new(self.field, self.c.iter().map(|&a| a * k).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut r = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Poly::new(self.field, r)
    }

    pub fn square(&self) -> Poly {
        self.mul(self)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let il = d.lead().inv()?;
        let mut r = self.c.clone();
        let dn = d.c.len();
        if r.len() < dn {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dn + 1];
        for k in (0..q.len()).rev() {
            let t = r[k + dn - 1] * il;
            q[k] = t;
            if !t.is_zero() {
                for (i, &b) in d.c.iter().enumerate() {
                    r[k + i] -= t * b;
                }
            }
        }
        r.truncate(dn - 1);
        Ok((Poly::new(self.field, q), Poly::new(self.field, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient when `d` divides `self`; errors otherwise.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidDivisor("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Result<Poly> {
        Ok(self.scale(self.lead().inv()?))
    }

    /// Extended gcd: `(g, s, t)` with `s*a + t*b = g` and `g` monic
    /// (or zero when both inputs vanish).
    pub fn xgcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let f = a.field;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let il = r0.lead().inv().expect("nonzero leading coefficient");
        (r0.scale(il), s0.scale(il), t0.scale(il))
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        Poly::xgcd(a, b).0
    }

    pub fn to_hex(&self) -> Vec<String> {
        self.c.iter().map(|x| x.to_hex()).collect()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}
