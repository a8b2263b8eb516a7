//! Block operators on a bigraded space.
//!
//! A [`GradedOp`] stores, for each source bidegree, the target bidegree and
//! the dense matrix of the block. Missing blocks are zero. All operators in
//! the crate are homogeneous, so one target per source is enough.

use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::scalar::Field;

/// `(p, q)`.
pub type Bidegree = (usize, usize);

#[derive(Clone, Debug, PartialEq)]
pub struct GradedOp<F> {
    blocks: BTreeMap<Bidegree, (Bidegree, Matrix<F>)>,
}

impl<F> Default for GradedOp<F> {
    fn default() -> Self {
        GradedOp {
            blocks: BTreeMap::new(),
        }
    }
}

impl<F: Field> GradedOp<F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics if the shape of `m` is inconsistent with an existing block.
    pub fn insert(&mut self, source: Bidegree, target: Bidegree, m: Matrix<F>) {
        self.blocks.insert(source, (target, m));
    }

    pub fn block(&self, source: Bidegree) -> Option<(Bidegree, &Matrix<F>)> {
        self.blocks.get(&source).map(|(t, m)| (*t, m))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Bidegree, Bidegree, &Matrix<F>)> {
        self.blocks.iter().map(|(s, (t, m))| (*s, *t, m))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (s, (mid, b)) in &other.blocks {
            if let Some((t, a)) = self.blocks.get(mid) {
                out.insert(*s, *t, a.mul(b));
            }
        }
        out
    }

    fn combine(&self, other: &Self, f: impl Fn(&Matrix<F>, &Matrix<F>) -> Matrix<F>) -> Self {
        let mut out = self.clone();
        for (s, (t, b)) in &other.blocks {
            match out.blocks.get_mut(s) {
                Some((t0, a)) => {
                    assert_eq!(t0, t, "operators of different bidegree shift at {s:?}");
                    *a = f(a, b);
                }
                None => {
                    let zero = Matrix::zeros(b.rows(), b.cols());
                    out.insert(*s, *t, f(&zero, b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, Matrix::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, Matrix::sub)
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|m| m.scale(c))
    }

    pub fn map(&self, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        GradedOp {
            blocks: self
                .blocks
                .iter()
                .map(|(s, (t, m))| (*s, (*t, f(m))))
                .collect(),
        }
    }

    /// Changes scalar type blockwise.
    pub fn convert<G: Field>(&self, f: impl Fn(&F) -> G) -> GradedOp<G> {
        GradedOp {
            blocks: self
                .blocks
                .iter()
                .map(|(s, (t, m))| (*s, (*t, m.map(&f))))
                .collect(),
        }
    }

    /// Adjoint for the sesquilinear form `h(u, v) = uᵀ G v̄` given per
    /// bidegree by `gram` and `gram_inv`: `M* = conj(G_s⁻¹ Mᵀ G_t)`.
    pub fn adjoint(
        &self,
        gram: &BTreeMap<Bidegree, Matrix<F>>,
        gram_inv: &BTreeMap<Bidegree, Matrix<F>>,
    ) -> Self {
        let mut out = Self::new();
        for (s, (t, m)) in &self.blocks {
            let adj = gram_inv[s].mul(&m.transpose()).mul(&gram[t]).conj();
            out.insert(*t, *s, adj);
        }
        out
    }

    /// Sum of traces of the diagonal blocks accepted by `keep`.
    pub fn trace_where(&self, keep: impl Fn(Bidegree) -> bool) -> F {
        let mut acc = F::zero();
        for (s, (t, m)) in &self.blocks {
            if s == t && keep(*s) {
                acc = acc + &m.trace();
            }
        }
        acc
    }

    pub fn trace(&self) -> F {
        self.trace_where(|_| true)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|(_, m)| m.is_zero())
    }

    pub fn max_magnitude(&self) -> f64 {
        self.blocks
            .values()
            .map(|(_, m)| m.max_magnitude())
            .fold(0.0, f64::max)
    }

    /// True when every nonzero block moves `(p, q)` to `(p + dp, q + dq)`.
    pub fn has_shift(&self, dp: isize, dq: isize) -> bool {
        self.blocks.iter().all(|(s, (t, m))| {
            m.is_zero() || (t.0 as isize - s.0 as isize == dp && t.1 as isize - s.1 as isize == dq)
        })
    }

    /// Bidegree `(s, t)` of the block with the largest difference, and the
    /// difference itself.
    pub fn worst_block_diff(&self, other: &Self) -> (Option<Bidegree>, f64) {
        let diff = self.sub(other);
        diff.blocks
            .iter()
            .map(|(s, (_, m))| (Some(*s), m.max_magnitude()))
            .fold((None, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational;

    fn q(n: i64) -> GaussRational {
        GaussRational::from_i64(n)
    }

    #[test]
    fn composition_follows_targets() {
        let mut a = GradedOp::new();
        a.insert((0, 0), (1, 1), Matrix::from_rows(vec![vec![q(2)]]));
        let mut b = GradedOp::new();
        b.insert((1, 1), (0, 0), Matrix::from_rows(vec![vec![q(3)]]));
        let ba = b.compose(&a);
        assert_eq!(ba.block((0, 0)).unwrap().1[(0, 0)], q(6));
        assert!(ba.block((1, 1)).is_none());
        let c = a.commutator(&b);
        assert_eq!(c.block((1, 1)).unwrap().1[(0, 0)], q(6));
        assert_eq!(c.block((0, 0)).unwrap().1[(0, 0)], q(-6));
        assert!(a.has_shift(1, 1));
        assert!(!a.has_shift(-1, -1));
    }

    #[test]
    fn adjoint_against_diagonal_form() {
        let mut a = GradedOp::new();
        a.insert((0, 0), (1, 1), Matrix::from_rows(vec![vec![q(1)]]));
        let gram: BTreeMap<_, _> = [
            ((0, 0), Matrix::from_rows(vec![vec![q(4)]])),
            ((1, 1), Matrix::from_rows(vec![vec![q(2)]])),
        ]
        .into_iter()
        .collect();
        let inv = gram
            .iter()
            .map(|(k, m)| (*k, m.inverse().unwrap()))
            .collect();
        let adj = a.adjoint(&gram, &inv);
        assert_eq!(
            adj.block((1, 1)).unwrap().1[(0, 0)],
            GaussRational::from_ratio(1, 2)
        );
    }
}
