//! The polynomial forms of the model, generic over [`Ring`] so they can be
//! evaluated over the ground field or over a quadratic extension.

use crate::family::CurveParams;
use crate::field::{Fe, Ring};

/// The constants `a..g` of a family member, in some ring.
#[derive(Clone, Copy, Debug)]
pub struct Consts<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub f: T,
    pub g: T,
}

impl Consts<Fe> {
    pub fn of(p: &CurveParams) -> Self {
        Consts {
            a: p.a,
            b: p.b,
            c: p.c,
            d: p.d,
            e: p.e,
            f: p.f,
            g: p.g,
        }
    }
}

impl<T: Ring> Consts<T> {
    pub fn map<S: Ring>(&self, m: impl Fn(T) -> S) -> Consts<S> {
        Consts {
            a: m(self.a),
            b: m(self.b),
            c: m(self.c),
            d: m(self.d),
            e: m(self.e),
            f: m(self.f),
            g: m(self.g),
        }
    }
}

/// The six quadrics `[r1, .., r6]` at `u`; applied to `y` they give the `s_i`.
/// They are also the entries `[M11, M12, M22, M33, M34, M44]` obtained by
/// fixing the second point at `D_1`.
pub fn r_quadrics<T: Ring>(k: &Consts<T>, u: &[T; 4]) -> [T; 6] {
    let Consts {
        a,
        b,
        c,
        d,
        e,
        f,
        g,
    } = *k;
    let [u1, u2, u3, u4] = *u;
    let (s1, s2, s3, s4) = (u1 * u1, u2 * u2, u3 * u3, u4 * u4);
    let b2 = b * b;
    let ac = a * c;
    [
        b2 * (ac * (e * s2 - f * s1) - c * e * f * s3 + a * f * s4),
        -b * g * (ac * u1 * u2 - f * u3 * u4),
        f * (a * d * s3 + b2 * c * s4) - ac * (d * s1 + b2 * f * s2),
        a * b2 * c * (c * s1 + a * s2 - f * s3 - s4),
        ac * b * g * (u1 * u2 - u3 * u4),
        ac * (a * d * s1 - b2 * c * e * s2 + d * e * s3 - b2 * f * s4),
    ]
}

/// Bidegree `(deg u, deg y)` of each defining form, in listed order.
pub const BIDEGREES: [(u8, u8); 15] = [
    (4, 0),
    (0, 4),
    (1, 2),
    (1, 2),
    (1, 2),
    (1, 2),
    (2, 1),
    (2, 1),
    (2, 1),
    (2, 1),
    (2, 2),
    (2, 2),
    (2, 2),
    (2, 2),
    (2, 2),
];

/// The fifteen defining forms at `(u, y)`.
pub fn defining_residuals<T: Ring>(k: &Consts<T>, u: &[T; 4], y: &[T; 4]) -> [T; 15] {
    let Consts { a, b, c, e, f, .. } = *k;
    let [r1, r2, r3, r4, r5, r6] = r_quadrics(k, u);
    let [s1, s2, s3, s4, s5, s6] = r_quadrics(k, y);
    let [u1, u2, u3, u4] = *u;
    let [y1, y2, y3, y4] = *y;
    [
        r2 * r2 - r1 * r3,
        s2 * s2 - s1 * s3,
        u2 * s1 - u1 * s2,
        u2 * s2 - u1 * s3,
        u4 * s4 - u3 * s5,
        u4 * s5 - u3 * s6,
        y2 * r1 - y1 * r2,
        y2 * r2 - y1 * r3,
        y4 * r4 - y3 * r5,
        y4 * r5 - y3 * r6,
        r1 * y3 * y3 + r4 * y1 * y1,
        r1 * y4 * y4 + r6 * y1 * y1,
        r2 * y3 * y4 + r5 * y1 * y2,
        a * (b * u2 * y1 - u1 * y2) * (b * u4 * y3 - u3 * y4)
            - (e * u3 * y2 + b * u4 * y1) * (b * u2 * y3 - u1 * y4),
        c * (e * u3 * y3 + b * u4 * y4) * (b * u2 * y2 - u1 * y1)
            - f * (b * u2 * y4 - u1 * y3) * (b * u4 * y2 - u3 * y1),
    ]
}

/// Upper-triangle entry `A_ij` (`i <= j`, 0-based) at `P = (u, y)`,
/// `Q = (v, z)`.
fn a_upper<T: Ring>(
    k: &Consts<T>,
    u: &[T; 4],
    y: &[T; 4],
    v: &[T; 4],
    z: &[T; 4],
    i: usize,
    j: usize,
) -> T {
    let Consts {
        a, b, c, d, e, f, ..
    } = *k;
    let [u1, u2, u3, u4] = *u;
    let [y1, y2, y3, y4] = *y;
    let [v1, v2, v3, v4] = *v;
    let [z1, z2, z3, z4] = *z;
    let b2 = b * b;
    match (i, j) {
        (0, 0) => {
            -(a * b * c)
                * (u1 * y1 * (d * v1 * z1 + b * e * v2 * z2)
                    + b * e * u2 * y2 * (v1 * z1 - b * v2 * z2))
                - b * f
                    * (e * u3 * y3 * (d * v3 * z3 - b * v4 * z4)
                        - b * u4 * y4 * (e * v3 * z3 + b * v4 * z4))
        }
        (0, 1) => {
            a * b2 * c * f * (u1 * y2 * (v1 * z2 - b * v2 * z1) - u2 * y1 * (b * v1 * z2 - v2 * z1))
                + b2 * f
                    * f
                    * (u4 * y3 * (b * v3 * z4 - v4 * z3) - u3 * y4 * (v3 * z4 - b * v4 * z3))
        }
        (0, 2) => {
            a * b
                * f
                * (u1 * y3 * (d * v3 * z1 - b * v4 * z2) - u3 * y1 * (d * v1 * z3 - b * v2 * z4))
                + a * b2
                    * f
                    * (u4 * y2 * (v1 * z3 - b * v2 * z4) - u2 * y4 * (v3 * z1 - b * v4 * z2))
        }
        (0, 3) => {
            b2 * c
                * f
                * (u1 * y4 * (b * v4 * z1 + e * v3 * z2) - u4 * y1 * (b * v1 * z4 + e * v2 * z3))
                + b2 * c
                    * e
                    * f
                    * (u2 * y3 * (v4 * z1 - b * v3 * z2) - u3 * y2 * (v1 * z4 - b * v2 * z3))
        }
        (1, 1) => {
            a * c
                * (d * u1 * y1 * (v1 * z1 - b * v2 * z2)
                    - b * u2 * y2 * (d * v1 * z1 + b * e * v2 * z2))
                + f * (d * u3 * y3 * (e * v3 * z3 + b * v4 * z4)
                    + b * u4 * y4 * (d * v3 * z3 - b * v4 * z4))
        }
        (1, 2) => {
            b2 * c * f * (u4 * y1 * (v1 * z4 - b * v2 * z3) - u1 * y4 * (v4 * z1 - b * v3 * z2))
                + b2 * c
                    * f
                    * (u2 * y3 * (b * v4 * z1 + e * v3 * z2)
                        - u3 * y2 * (b * v1 * z4 + e * v2 * z3))
        }
        (1, 3) => {
            a * d * f * (u3 * y1 * (v1 * z3 - b * v2 * z4) - u1 * y3 * (v3 * z1 - b * v4 * z2))
                + a * b
                    * f
                    * (u2 * y4 * (d * v3 * z1 - b * v4 * z2)
                        - u4 * y2 * (d * v1 * z3 - b * v2 * z4))
        }
        (2, 2) => {
            a * b
                * c
                * (u1 * y1 * (d * v3 * z3 - b * v4 * z4)
                    + b * u2 * y2 * (e * v3 * z3 + b * v4 * z4))
                - a * b
                    * c
                    * (u3 * y3 * (d * v1 * z1 + b * e * v2 * z2)
                        - b * u4 * y4 * (v1 * z1 - b * v2 * z2))
        }
        (2, 3) => {
            a * b2 * c * f * (u2 * y1 * (b * v3 * z4 - v4 * z3) - u1 * y2 * (v3 * z4 - b * v4 * z3))
                + a * b2
                    * c
                    * f
                    * (u3 * y4 * (v1 * z2 - b * v2 * z1) - u4 * y3 * (b * v1 * z2 - v2 * z1))
        }
        (3, 3) => {
            a * c
                * (d * u1 * y1 * (e * v3 * z3 + b * v4 * z4)
                    - b * e * u2 * y2 * (d * v3 * z3 - b * v4 * z4))
                - a * c
                    * (d * e * u3 * y3 * (v1 * z1 - b * v2 * z2)
                        + b * u4 * y4 * (d * v1 * z1 + b * e * v2 * z2))
        }
        _ => unreachable!("a_upper needs i <= j < 4"),
    }
}

/// Entry `A_ij` (0-based); below the diagonal the roles of `u` and `y` in
/// the first point are exchanged.
pub fn a_entry<T: Ring>(
    k: &Consts<T>,
    p: (&[T; 4], &[T; 4]),
    q: (&[T; 4], &[T; 4]),
    i: usize,
    j: usize,
) -> T {
    let (u, y) = p;
    let (v, z) = q;
    if i <= j {
        a_upper(k, u, y, v, z, i, j)
    } else {
        a_upper(k, y, u, v, z, j, i)
    }
}

/// Column `j` (0-based) of `A(P, Q)`.
pub fn a_column<T: Ring>(
    k: &Consts<T>,
    p: (&[T; 4], &[T; 4]),
    q: (&[T; 4], &[T; 4]),
    j: usize,
) -> [T; 4] {
    std::array::from_fn(|i| a_entry(k, p, q, i, j))
}

/// `z` with its last two coordinates negated, as used by `J`.
fn flip_z<T: Ring>(z: &[T; 4]) -> [T; 4] {
    [z[0], z[1], -z[2], -z[3]]
}

/// Column `j` (0-based) of `J(P, Q)`, where `J_ij(P, Q) = A_ji(P, (v, z'))`.
pub fn j_column<T: Ring>(
    k: &Consts<T>,
    p: (&[T; 4], &[T; 4]),
    q: (&[T; 4], &[T; 4]),
    j: usize,
) -> [T; 4] {
    let z = flip_z(q.1);
    std::array::from_fn(|i| a_entry(k, p, (q.0, &z), j, i))
}

pub fn a_matrix<T: Ring>(
    k: &Consts<T>,
    p: (&[T; 4], &[T; 4]),
    q: (&[T; 4], &[T; 4]),
) -> [[T; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| a_entry(k, p, q, i, j)))
}

pub fn j_matrix<T: Ring>(
    k: &Consts<T>,
    p: (&[T; 4], &[T; 4]),
    q: (&[T; 4], &[T; 4]),
) -> [[T; 4]; 4] {
    let z = flip_z(q.1);
    std::array::from_fn(|i| std::array::from_fn(|j| a_entry(k, p, (q.0, &z), j, i)))
}
