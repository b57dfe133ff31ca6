//! Gaussian elimination over a prime field.

use crate::field::Fe;

/// Row-reduces `m` in place and returns the pivot columns.
fn reduce(m: &mut [Vec<Fe>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("pivot is nonzero");
        for x in m[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let k = m[r][col];
                let (src, dst) = if r < row {
                    let (a, b) = m.split_at_mut(row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[row], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= k * *s;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Fe>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let n = first.len();
    let mut m = rows.to_vec();
    reduce(&mut m, n).len()
}

/// Unique solution of the square system `a x = b`, or `None` when `a` is
/// singular.
pub fn solve(a: &[Vec<Fe>], b: &[Fe]) -> Option<Vec<Fe>> {
    let n = a.len();
    let mut m: Vec<Vec<Fe>> = a
        .iter()
        .zip(b)
        .map(|(r, &v)| r.iter().copied().chain([v]).collect())
        .collect();
    if reduce(&mut m, n).len() < n {
        return None;
    }
    Some(m.iter().map(|r| r[n]).collect())
}

pub fn inverse4(a: &[[Fe; 4]; 4]) -> Option<[[Fe; 4]; 4]> {
    let zero = a[0][0].zero_like();
    let one = a[0][0].one_like();
    let mut m: Vec<Vec<Fe>> = (0..4)
        .map(|i| {
            a[i].iter()
                .copied()
                .chain((0..4).map(|j| if i == j { one } else { zero }))
                .collect()
        })
        .collect();
    if reduce(&mut m, 4).len() < 4 {
        return None;
    }
    let mut out = [[zero; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[i][4 + j];
        }
    }
    Some(out)
}

pub fn mat_vec4(a: &[[Fe; 4]; 4], v: &[Fe; 4]) -> [Fe; 4] {
    std::array::from_fn(|i| a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2] + a[i][3] * v[3])
}
