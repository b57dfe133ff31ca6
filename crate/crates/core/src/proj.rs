//! Projective tuples: equality by cross-determinants and normalization.

use crate::field::Ring;

pub fn is_zero_vec<T: Ring>(v: &[T]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Two nonzero tuples are projectively equal iff every 2x2
/// cross-determinant vanishes.
pub fn proj_eq<T: Ring>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() || is_zero_vec(a) || is_zero_vec(b) {
        return false;
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if !(a[i] * b[j] - a[j] * b[i]).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Scales so that the first nonzero coordinate is 1; the zero tuple is
/// returned unchanged.
pub fn normalize<const N: usize>(v: [crate::field::Fe; N]) -> [crate::field::Fe; N] {
    match v.iter().find(|x| !x.is_zero()) {
        Some(&lead) => {
            let inv = lead.inv().expect("nonzero");
            v.map(|x| x * inv)
        }
        None => v,
    }
}

/// True when every 2x2 minor of the square matrix vanishes.
pub fn rank_at_most_one<T: Ring, const N: usize>(m: &[[T; N]; N]) -> bool {
    for i in 0..N {
        for k in i + 1..N {
            for j in 0..N {
                for l in j + 1..N {
                    if !(m[i][j] * m[k][l] - m[i][l] * m[k][j]).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn column<T: Copy, const N: usize>(m: &[[T; N]; N], j: usize) -> [T; N] {
    std::array::from_fn(|i| m[i][j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn equality_and_normalization() {
        let k = PrimeField::new(13).unwrap();
        let a = [k.elem(2), k.elem(4), k.elem(0)];
        let b = [k.elem(3), k.elem(6), k.elem(0)];
        assert!(proj_eq(&a, &b));
        assert!(!proj_eq(&a, &[k.elem(3), k.elem(5), k.elem(0)]));
        assert!(!proj_eq(&a, &[k.zero(); 3]));
        assert_eq!(normalize(a), [k.one(), k.elem(2), k.zero()]);
        assert_eq!(normalize(a), normalize(b));
    }
}
