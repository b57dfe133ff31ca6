//! Linear symmetries of the model: negation, translation by the torsion
//! points `E_1, E_2, E_3, ±D_1`, and the swap `(u; y) -> (y; u)`.

use std::collections::{BTreeMap, HashSet, VecDeque};

use super::ModelPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Neg,
    PlusE1,
    PlusE2,
    PlusE3,
    PlusD1,
    MinusD1,
    Swap,
}

impl Symmetry {
    pub const ALL: [Symmetry; 7] = [
        Symmetry::Neg,
        Symmetry::PlusE1,
        Symmetry::PlusE2,
        Symmetry::PlusE3,
        Symmetry::PlusD1,
        Symmetry::MinusD1,
        Symmetry::Swap,
    ];

    /// The generators whose closure is the full symmetry group.
    pub const GENERATORS: [Symmetry; 5] = [
        Symmetry::Neg,
        Symmetry::PlusE1,
        Symmetry::PlusE2,
        Symmetry::PlusE3,
        Symmetry::PlusD1,
    ];

    pub fn signed_perm(self) -> SignedPerm {
        const U: [u8; 4] = [0, 1, 2, 3];
        const Y: [u8; 4] = [4, 5, 6, 7];
        const E0: [bool; 4] = [false; 4];
        const E1: [bool; 4] = [false, false, true, true];
        const E2: [bool; 4] = [false, true, false, true];
        const E3: [bool; 4] = [false, true, true, false];
        let (bu, su, by, sy) = match self {
            Symmetry::Neg => (U, E0, Y, E1),
            Symmetry::PlusE1 => (U, E1, Y, E1),
            Symmetry::PlusE2 => (U, E2, Y, E2),
            Symmetry::PlusE3 => (U, E3, Y, E3),
            Symmetry::PlusD1 => (Y, E0, U, E1),
            Symmetry::MinusD1 => (Y, E1, U, E0),
            Symmetry::Swap => (Y, E0, U, E0),
        };
        let mut src = [0u8; 8];
        let mut neg = [false; 8];
        src[..4].copy_from_slice(&bu);
        src[4..].copy_from_slice(&by);
        neg[..4].copy_from_slice(&su);
        neg[4..].copy_from_slice(&sy);
        SignedPerm { src, neg }.canonical()
    }
}

/// A map `out[i] = ±in[src[i]]` on the eight coordinates `(u; y)`, taken up
/// to independent rescaling of each output factor by `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    src: [u8; 8],
    neg: [bool; 8],
}

impl SignedPerm {
    pub fn identity() -> Self {
        SignedPerm {
            src: [0, 1, 2, 3, 4, 5, 6, 7],
            neg: [false; 8],
        }
    }

    /// Representative whose first coordinate in each factor has sign `+`.
    fn canonical(mut self) -> Self {
        for block in [0, 4] {
            if self.neg[block] {
                for i in block..block + 4 {
                    self.neg[i] = !self.neg[i];
                }
            }
        }
        self
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let mut src = [0u8; 8];
        let mut neg = [false; 8];
        for i in 0..8 {
            let s = self.src[i] as usize;
            src[i] = other.src[s];
            neg[i] = self.neg[i] ^ other.neg[s];
        }
        SignedPerm { src, neg }.canonical()
    }

    pub fn apply(&self, p: &ModelPoint) -> ModelPoint {
        let x: [_; 8] = std::array::from_fn(|i| if i < 4 { p.u[i] } else { p.y[i - 4] });
        let out: [_; 8] = std::array::from_fn(|i| {
            let v = x[self.src[i] as usize];
            if self.neg[i] {
                -v
            } else {
                v
            }
        });
        ModelPoint::new(
            [out[0], out[1], out[2], out[3]],
            [out[4], out[5], out[6], out[7]],
        )
        .expect("signed permutation of a point is a point")
    }

    pub fn order(&self) -> usize {
        let id = SignedPerm::identity();
        let mut g = *self;
        let mut n = 1;
        while g != id {
            g = g.compose(self);
            n += 1;
        }
        n
    }
}

pub fn apply(p: &ModelPoint, s: Symmetry) -> ModelPoint {
    s.signed_perm().apply(p)
}

/// The group generated by `gens`, in breadth-first order from the identity.
pub fn closure(gens: &[SignedPerm]) -> Vec<SignedPerm> {
    let id = SignedPerm::identity();
    let mut seen = HashSet::from([id]);
    let mut out = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let x = h.compose(&g);
            if seen.insert(x) {
                out.push(x);
                queue.push_back(x);
            }
        }
    }
    out
}

/// Number of elements of each order.
pub fn order_profile(group: &[SignedPerm]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for g in group {
        *m.entry(g.order()).or_insert(0) += 1;
    }
    m
}

/// Elements commuting with everything in `group`.
pub fn center(group: &[SignedPerm]) -> Vec<SignedPerm> {
    group
        .iter()
        .copied()
        .filter(|g| group.iter().all(|h| g.compose(h) == h.compose(g)))
        .collect()
}

/// The full symmetry group: closure of [`Symmetry::GENERATORS`].
pub fn symmetry_group() -> Vec<SignedPerm> {
    let gens: Vec<_> = Symmetry::GENERATORS
        .iter()
        .map(|s| s.signed_perm())
        .collect();
    closure(&gens)
}
