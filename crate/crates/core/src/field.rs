//! Prime fields of odd characteristic and their quadratic extensions.
//!
//! Elements are small `Copy` values that carry their modulus, so formulas
//! can be written with ordinary operators. Mixing elements of different
//! fields is a programming error and panics with [`Error::FieldMismatch`].
//! Moduli are limited to 64-bit primes; products are formed in `u128`.

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use crate::error::{Error, Result};

thread_local! {
    static MUL_COUNT: Cell<u64> = const { Cell::new(0) };
}

/// Number of base-field multiplications performed on this thread.
pub fn mul_count() -> u64 {
    MUL_COUNT.with(|c| c.get())
}

/// Resets the per-thread multiplication counter.
pub fn reset_mul_count() {
    MUL_COUNT.with(|c| c.set(0));
}

#[inline]
fn bump() {
    MUL_COUNT.with(|c| c.set(c.get().wrapping_add(1)));
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Description of a prime field `F_p` with `p` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime_u64(p) {
            return Err(Error::NotAnOddPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn elem(&self, v: u64) -> Fe {
        Fe {
            v: v % self.p,
            p: self.p,
        }
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        self.one().lift(v)
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe { v: 0, p: self.p }
    }

    #[inline]
    pub fn one(&self) -> Fe {
        Fe { v: 1, p: self.p }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        self.elem(rng.gen_range(0..self.p))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        self.elem(rng.gen_range(1..self.p))
    }

    /// Smallest quadratic nonresidue.
    pub fn nonresidue(&self) -> Fe {
        (2..self.p)
            .map(|v| self.elem(v))
            .find(|x| x.legendre() == -1)
            .expect("every odd prime field has a nonresidue")
    }

    /// All elements in ascending order of representative.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.p).map(move |v| self.elem(v))
    }

    pub fn parse_hex(&self, s: &str) -> Result<Fe> {
        let t = s.trim();
        let t = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        let v =
            u64::from_str_radix(t, 16).map_err(|_| Error::Parse(format!("bad hex value {s:?}")))?;
        if v >= self.p {
            return Err(Error::Parse(format!("value {s:?} not reduced modulo p")));
        }
        Ok(self.elem(v))
    }

    pub fn ensure(&self, x: Fe) -> Result<Fe> {
        if x.p == self.p {
            Ok(x)
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

/// Element of a prime field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fe {
    v: u64,
    p: u64,
}

impl Fe {
    #[inline]
    pub fn value(&self) -> u64 {
        self.v
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.v == 1
    }

    #[inline]
    pub fn zero_like(&self) -> Fe {
        Fe { v: 0, p: self.p }
    }

    #[inline]
    pub fn one_like(&self) -> Fe {
        Fe { v: 1, p: self.p }
    }

    /// Embeds a small signed integer into the same field.
    #[inline]
    pub fn lift(&self, n: i64) -> Fe {
        Fe {
            v: (n as i128).rem_euclid(self.p as i128) as u64,
            p: self.p,
        }
    }

    #[inline]
    pub fn square(self) -> Fe {
        self * self
    }

    #[inline]
    pub fn double(self) -> Fe {
        self + self
    }

    pub fn pow(self, exp: u64) -> Fe {
        self.pow_limbs(&[exp])
    }

    /// Exponentiation by an arbitrary-precision exponent given as
    /// little-endian 64-bit limbs.
    pub fn pow_limbs(self, exp: &[u64]) -> Fe {
        let mut acc = self.one_like();
        for &limb in exp.iter().rev() {
            for bit in (0..64).rev() {
                acc = acc.square();
                if (limb >> bit) & 1 == 1 {
                    acc *= self;
                }
            }
        }
        acc
    }

    pub fn inv(self) -> Result<Fe> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on the representatives
        let (mut r0, mut r1) = (self.p as i128, self.v as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        bump();
        Ok(Fe {
            v: t0.rem_euclid(self.p as i128) as u64,
            p: self.p,
        })
    }

    pub fn checked_div(self, rhs: Fe) -> Result<Fe> {
        Ok(self * rhs.inv()?)
    }

    /// Legendre symbol via Euler's criterion.
    pub fn legendre(&self) -> i8 {
        if self.v == 0 {
            return 0;
        }
        let r = pow_mod(self.v, (self.p - 1) / 2, self.p);
        if r == 1 {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self) -> bool {
        self.legendre() >= 0
    }

    /// True when the representative lies in `[0, (p-1)/2]`.
    pub fn is_canonical(&self) -> bool {
        self.v <= (self.p - 1) / 2
    }

    /// Square root with the lesser representative. Uses the `(p+1)/4`
    /// exponent when `p = 3 mod 4` and Tonelli-Shanks otherwise.
    pub fn sqrt(&self) -> Result<Fe> {
        match self.legendre() {
            0 => return Ok(*self),
            -1 => return Err(Error::NotASquare),
            _ => {}
        }
        let p = self.p;
        let root = if p % 4 == 3 {
            Fe {
                v: pow_mod(self.v, (p + 1) / 4, p),
                p,
            }
        } else {
            let mut q = p - 1;
            let mut s = 0u32;
            while q.is_multiple_of(2) {
                q /= 2;
                s += 1;
            }
            let z = self.field().nonresidue();
            let mut m = s;
            let mut c = z.pow(q);
            let mut t = self.pow(q);
            let mut r = self.pow(q.div_ceil(2));
            while !t.is_one() {
                let mut i = 0;
                let mut t2 = t;
                while !t2.is_one() {
                    t2 = t2.square();
                    i += 1;
                }
                let mut b = c;
                for _ in 0..(m - i - 1) {
                    b = b.square();
                }
                m = i;
                c = b.square();
                t *= c;
                r *= b;
            }
            r
        };
        debug_assert_eq!(root.square(), *self);
        Ok(if root.is_canonical() { root } else { -root })
    }

    pub fn to_hex(&self) -> String {
        format!("{:x}", self.v)
    }

    #[inline]
    fn check(&self, other: &Fe) {
        if self.p != other.p {
            panic!("{}", Error::FieldMismatch);
        }
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fe {
    type Output = Fe;
    #[inline]
    fn add(self, rhs: Fe) -> Fe {
        self.check(&rhs);
        let (s, carry) = self.v.overflowing_add(rhs.v);
        let s = if carry || s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        };
        Fe { v: s, p: self.p }
    }
}

impl Sub for Fe {
    type Output = Fe;
    #[inline]
    fn sub(self, rhs: Fe) -> Fe {
        self.check(&rhs);
        let v = if self.v >= rhs.v {
            self.v - rhs.v
        } else {
            self.p - (rhs.v - self.v)
        };
        Fe { v, p: self.p }
    }
}

impl Mul for Fe {
    type Output = Fe;
    #[inline]
    fn mul(self, rhs: Fe) -> Fe {
        self.check(&rhs);
        bump();
        Fe {
            v: mul_mod(self.v, rhs.v, self.p),
            p: self.p,
        }
    }
}

impl Div for Fe {
    type Output = Fe;
    /// Panics on division by zero; use [`Fe::checked_div`] where the
    /// divisor may vanish.
    fn div(self, rhs: Fe) -> Fe {
        match self.checked_div(rhs) {
            Ok(x) => x,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Neg for Fe {
    type Output = Fe;
    #[inline]
    fn neg(self) -> Fe {
        Fe {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
}

impl AddAssign for Fe {
    fn add_assign(&mut self, rhs: Fe) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fe {
    fn sub_assign(&mut self, rhs: Fe) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fe {
    fn mul_assign(&mut self, rhs: Fe) {
        *self = *self * rhs;
    }
}

/// Commutative ring operations shared by [`Fe`] and [`Fp2`], so the
/// surface formulas can be evaluated over the base field or over the
/// quadratic extension.
pub trait Ring:
    Copy + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl Ring for Fe {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn zero_like(&self) -> Self {
        Fe::zero_like(self)
    }
    fn one_like(&self) -> Self {
        Fe::one_like(self)
    }
}

/// The quadratic extension `F_p(sqrt(n))` for a verified nonsquare `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadExtField {
    base: PrimeField,
    n: Fe,
}

impl QuadExtField {
    pub fn new(base: PrimeField, n: Fe) -> Result<Self> {
        base.ensure(n)?;
        if n.legendre() != -1 {
            return Err(Error::NotANonsquare);
        }
        Ok(QuadExtField { base, n })
    }

    /// Extension by the smallest nonresidue.
    pub fn standard(base: PrimeField) -> Self {
        QuadExtField {
            base,
            n: base.nonresidue(),
        }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn nonresidue(&self) -> Fe {
        self.n
    }

    pub fn embed(&self, x: Fe) -> Fp2 {
        Fp2 {
            c0: x,
            c1: x.zero_like(),
            n: self.n,
        }
    }

    pub fn new_elem(&self, c0: Fe, c1: Fe) -> Fp2 {
        Fp2 { c0, c1, n: self.n }
    }

    /// `sqrt(n)` itself.
    pub fn gen(&self) -> Fp2 {
        self.new_elem(self.base.zero(), self.base.one())
    }

    /// A square root of a base-field element; exists for every `x`.
    pub fn sqrt_of_base(&self, x: Fe) -> Fp2 {
        match x.sqrt() {
            Ok(r) => self.embed(r),
            Err(_) => {
                let r = (x / self.n).sqrt().expect("x/n is a square when x is not");
                self.new_elem(x.zero_like(), r)
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fp2 {
        self.new_elem(self.base.random(rng), self.base.random(rng))
    }
}

/// Element `c0 + c1 * sqrt(n)` of a quadratic extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp2 {
    pub c0: Fe,
    pub c1: Fe,
    n: Fe,
}

impl Fp2 {
    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn conj(&self) -> Fp2 {
        Fp2 {
            c0: self.c0,
            c1: -self.c1,
            n: self.n,
        }
    }

    pub fn norm(&self) -> Fe {
        self.c0 * self.c0 - self.n * self.c1 * self.c1
    }

    /// True iff the element is fixed by conjugation.
    pub fn is_base(&self) -> bool {
        self.c1.is_zero()
    }

    pub fn base_value(&self) -> Option<Fe> {
        self.is_base().then_some(self.c0)
    }

    pub fn inv(&self) -> Result<Fp2> {
        let nm = self.norm().inv()?;
        let c = self.conj();
        Ok(Fp2 {
            c0: c.c0 * nm,
            c1: c.c1 * nm,
            n: self.n,
        })
    }

    /// Quadratic character on `F_{p^2}`, computed through the norm.
    pub fn legendre(&self) -> i8 {
        self.norm().legendre()
    }

    pub fn pow(self, mut exp: u128) -> Fp2 {
        let mut acc = self.one_like();
        let mut base = self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Some square root, by Tonelli-Shanks on the group of order `p^2 - 1`.
    pub fn sqrt(&self) -> Result<Fp2> {
        match self.legendre() {
            0 if self.is_zero() => return Ok(*self),
            -1 => return Err(Error::NotASquare),
            _ => {}
        }
        let p = self.c0.modulus() as u128;
        let mut q = p * p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let one = self.c0.one_like();
        let mut z = Fp2 {
            c0: self.c0.zero_like(),
            c1: one,
            n: self.n,
        };
        while z.legendre() != -1 {
            z.c0 += one;
        }
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow(q.div_ceil(2));
        let unit = self.one_like();
        while t != unit {
            let mut i = 0;
            let mut t2 = t;
            while t2 != unit {
                t2 = t2 * t2;
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = b * b;
            }
            m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
        debug_assert_eq!(r * r, *self);
        Ok(r)
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            c0: self.c0 + rhs.c0,
            c1: self.c1 + rhs.c1,
            n: self.n,
        }
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            c0: self.c0 - rhs.c0,
            c1: self.c1 - rhs.c1,
            n: self.n,
        }
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        Fp2 {
            c0: self.c0 * rhs.c0 + self.n * self.c1 * rhs.c1,
            c1: self.c0 * rhs.c1 + self.c1 * rhs.c0,
            n: self.n,
        }
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        Fp2 {
            c0: -self.c0,
            c1: -self.c1,
            n: self.n,
        }
    }
}

impl Ring for Fp2 {
    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }
    fn zero_like(&self) -> Self {
        Fp2 {
            c0: self.c0.zero_like(),
            c1: self.c0.zero_like(),
            n: self.n,
        }
    }
    fn one_like(&self) -> Self {
        Fp2 {
            c0: self.c0.one_like(),
            c1: self.c0.zero_like(),
            n: self.n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn small_arithmetic() {
        let k = f(13);
        assert_eq!(k.elem(5).inv().unwrap(), k.elem(8));
        assert_eq!(k.elem(5) * k.elem(8), k.one());
        let k = f(1201);
        assert_eq!(k.elem(7) * k.elem(7), k.elem(49));
        assert_eq!(k.elem(3) - k.elem(5), k.elem(1199));
        assert_eq!(-k.zero(), k.zero());
    }

    #[test]
    fn fermat() {
        for p in [
            13u64,
            17,
            101,
            1201,
            1_000_000_007,
            18_446_744_073_709_551_557,
        ] {
            let k = f(p);
            for v in [1u64, 2, 3, p - 1] {
                assert!(k.elem(v).pow(p - 1).is_one(), "p={p} v={v}");
            }
        }
    }

    #[test]
    fn division_by_zero() {
        let k = f(13);
        assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(k.one().checked_div(k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_moduli() {
        for p in [0u64, 1, 2, 4, 9, 15, 1200, 561] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
    }

    #[test]
    fn legendre_values_from_worked_example() {
        let k = f(1201);
        assert_eq!(k.elem(11).legendre(), -1);
        assert_eq!(k.elem(1015).legendre(), -1);
        assert_eq!(k.elem(202).legendre(), -1);
        assert_eq!(k.one().legendre(), 1);
        assert_eq!(k.zero().legendre(), 0);
    }

    #[test]
    fn sqrt_small_fields() {
        let k13 = f(13);
        assert_eq!(k13.elem(4).sqrt().unwrap(), k13.elem(2));
        assert_eq!(k13.elem(5).sqrt(), Err(Error::NotASquare));
        // squares mod 13 are {0,1,3,4,9,10,12}
        let squares: Vec<u64> = (0..13).map(|x| x * x % 13).collect();
        for v in 0..13 {
            assert_eq!(k13.elem(v).sqrt().is_ok(), squares.contains(&v));
        }
        let k17 = f(17);
        assert_eq!(k17.elem(2).sqrt().unwrap(), k17.elem(6));
    }

    #[test]
    fn pow_big_exponent() {
        let k = f(101);
        let x = k.elem(7);
        // 2^64 + 3 = (2^64 mod 100) + 3 in the exponent group of order 100
        let direct = x.pow_limbs(&[3, 1]);
        let reduced = x.pow(((1u128 << 64) % 100) as u64 + 3);
        assert_eq!(direct, reduced);
    }

    #[test]
    fn quad_ext_basics() {
        let k = f(101);
        assert!(QuadExtField::new(k, k.elem(4)).is_err());
        let ext = QuadExtField::standard(k);
        let g = ext.gen();
        assert_eq!((g * g).base_value(), Some(ext.nonresidue()));
        let x = ext.new_elem(k.elem(3), k.elem(5));
        assert!(x.conj().conj() == x);
        assert!((x * x.conj()).is_base());
        assert_eq!((x * x.inv().unwrap()), ext.embed(k.one()));
        for v in 1..101 {
            let r = ext.sqrt_of_base(k.elem(v));
            assert_eq!((r * r).base_value(), Some(k.elem(v)));
        }
    }

    proptest! {
        #[test]
        fn inverse_and_multiplicativity(a in 1u64..1201, b in 0u64..1201) {
            let k = f(1201);
            let (x, y) = (k.elem(a), k.elem(b));
            prop_assert!((x.inv().unwrap() * x).is_one());
            prop_assert_eq!((x * y).legendre(), x.legendre() * y.legendre());
        }

        #[test]
        fn sqrt_squares_back(a in 0u64..1_000_000_007u64) {
            let k = f(1_000_000_007);
            let x = k.elem(a);
            match x.sqrt() {
                Ok(r) => { prop_assert_eq!(r * r, x); prop_assert!(r.is_canonical()); }
                Err(_) => prop_assert_eq!(x.legendre(), -1),
            }
        }

        #[test]
        fn sqrt_tonelli_branch(a in 0u64..7681) {
            // 7681 = 15 * 2^9 + 1 exercises Tonelli-Shanks
            let k = f(7681);
            let x = k.elem(a);
            if let Ok(r) = x.sqrt() { prop_assert_eq!(r * r, x); }
        }

        #[test]
        fn norm_is_multiplicative(a0 in 0u64..101, a1 in 0u64..101, b0 in 0u64..101, b1 in 0u64..101) {
            let ext = QuadExtField::standard(f(101));
            let k = ext.base();
            let x = ext.new_elem(k.elem(a0), k.elem(a1));
            let y = ext.new_elem(k.elem(b0), k.elem(b1));
            prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
            prop_assert_eq!((x * x.conj()).c1, k.zero());
        }

        #[test]
        fn ext_sqrt(a0 in 0u64..97, a1 in 0u64..97) {
            // 97 - 1 = 3 * 2^5, so p^2 - 1 has a long 2-part
            let ext = QuadExtField::standard(f(97));
            let k = ext.base();
            let x = ext.new_elem(k.elem(a0), k.elem(a1));
            match x.sqrt() {
                Ok(r) => prop_assert_eq!(r * r, x),
                Err(_) => prop_assert_eq!(x.legendre(), -1),
            }
            // every base element is a square upstairs
            prop_assert!(ext.embed(k.elem(a0)).sqrt().is_ok());
        }
    }
}
