//! Finite-dimensional bigraded commutative algebras.
//!
//! A [`GradedAlgebra`] is the fibre `⊕ H^{p,q}` together with its cup
//! product, complex conjugation, the integration functional on `H^{n,n}` and
//! a basis `e_1..e_N` of real (1,1)-classes used as cone coordinates. All
//! structure constants are Gaussian rationals. Construction validates every
//! invariant and rejects the input with the name of the first one that fails.

mod fixtures;
mod loader;

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{HodgeError, Result};
use crate::linalg::Matrix;
use crate::operator::{Bidegree, GradedOp};
use crate::scalar::{Field, GaussRational};

pub use fixtures::{
    builtin_fixture_names, fixture, product_of_projective_spaces, projective_space, torus,
};
pub use loader::{export_json, load_algebra, load_algebra_str, AlgebraFile};

/// Unvalidated description of an algebra.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub name: String,
    pub n: usize,
    /// Basis labels grouped by bidegree; the concatenation order defines the
    /// global basis indices.
    pub blocks: Vec<(Bidegree, Vec<String>)>,
    /// `(i, j, k, c)`: the coefficient of `b_k` in `b_i · b_j`.
    pub cup: Vec<(usize, usize, usize, GaussRational)>,
    /// Per source bidegree `(p, q)`: column `i` holds the coordinates of
    /// `conj(b_i)` in the basis of `H^{q,p}`.
    pub conj: BTreeMap<Bidegree, Matrix<GaussRational>>,
    /// Values of the integral on the `H^{n,n}` basis.
    pub integral: Vec<GaussRational>,
    /// Coordinates of each `e_j` in the `H^{1,1}` basis.
    pub e_basis: Vec<Vec<BigRational>>,
    pub sample_point: Vec<BigRational>,
}

type Product = Vec<(usize, GaussRational)>;
type Sparse = BTreeMap<usize, GaussRational>;

#[derive(Debug)]
pub struct GradedAlgebra {
    data: AlgebraData,
    dims: BTreeMap<Bidegree, usize>,
    offsets: BTreeMap<Bidegree, usize>,
    bidegree_of: Vec<Bidegree>,
    table: Vec<Vec<Product>>,
    e_classes: Vec<Vec<GaussRational>>,
}

fn bad(name: &str, detail: impl Into<String>) -> HodgeError {
    HodgeError::invariant(name, detail)
}

impl GradedAlgebra {
    /// Validates `data` and builds the algebra.
    pub fn new(data: AlgebraData) -> Result<Self> {
        let n = data.n;
        if n == 0 {
            return Err(HodgeError::InvalidParameter(
                "complex dimension must be at least 1".into(),
            ));
        }
        let mut dims = BTreeMap::new();
        let mut offsets = BTreeMap::new();
        let mut bidegree_of = Vec::new();
        for (bd, labels) in &data.blocks {
            if bd.0 > n || bd.1 > n {
                return Err(bad(
                    "bidegree range",
                    format!("H^{{{},{}}} outside 0..={n}", bd.0, bd.1),
                ));
            }
            if dims.insert(*bd, labels.len()).is_some() {
                return Err(bad(
                    "bidegree range",
                    format!("H^{{{},{}}} listed twice", bd.0, bd.1),
                ));
            }
            offsets.insert(*bd, bidegree_of.len());
            bidegree_of.extend(std::iter::repeat_n(*bd, labels.len()));
        }
        for p in 0..=n {
            for q in 0..=n {
                dims.entry((p, q)).or_insert(0);
                offsets.entry((p, q)).or_insert(bidegree_of.len());
            }
        }
        let rank = bidegree_of.len();

        if dims[&(n, n)] != 1 {
            return Err(bad(
                "top degree not one-dimensional",
                format!("h^{{n,n}} = {}", dims[&(n, n)]),
            ));
        }
        if dims[&(0, 0)] != 1 {
            return Err(bad("unit", format!("h^{{0,0}} = {}", dims[&(0, 0)])));
        }
        if data.integral.len() != 1 {
            return Err(bad(
                "integral",
                "integral must have exactly one coefficient on H^{n,n}",
            ));
        }
        if Field::is_zero(&data.integral[0]) {
            return Err(bad(
                "integral vanishes on top class",
                "integral of the H^{n,n} generator is 0",
            ));
        }

        let mut table = vec![vec![Product::new(); rank]; rank];
        for (i, j, k, c) in &data.cup {
            let (i, j, k) = (*i, *j, *k);
            if i >= rank || j >= rank || k >= rank {
                return Err(bad(
                    "cup index",
                    format!("entry ({i},{j},{k}) out of range 0..{rank}"),
                ));
            }
            let (a, b, t) = (bidegree_of[i], bidegree_of[j], bidegree_of[k]);
            if (a.0 + b.0, a.1 + b.1) != t {
                return Err(bad(
                    "cup bidegree additivity",
                    format!("b{i}·b{j} has a component on b{k} of bidegree {t:?}"),
                ));
            }
            if Field::is_zero(c) {
                continue;
            }
            let entry = &mut table[i][j];
            match entry.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, v)) => *v = v.clone() + c,
                None => entry.push((k, c.clone())),
            }
        }
        for row in &mut table {
            for prod in row {
                prod.retain(|(_, c)| !Field::is_zero(c));
                prod.sort_by_key(|(k, _)| *k);
            }
        }

        for (bd, m) in &data.conj {
            let (src, dst) = (
                dims.get(bd).copied().unwrap_or(0),
                dims.get(&(bd.1, bd.0)).copied().unwrap_or(0),
            );
            if m.rows() != dst || m.cols() != src {
                return Err(bad(
                    "conjugation swaps bidegrees",
                    format!(
                        "conj block for {bd:?} is {}x{}, expected {dst}x{src}",
                        m.rows(),
                        m.cols()
                    ),
                ));
            }
        }
        for (bd, d) in &dims {
            if *d > 0 && !data.conj.contains_key(bd) {
                return Err(bad(
                    "conjugation swaps bidegrees",
                    format!("missing conj block for {bd:?}"),
                ));
            }
        }

        let h11 = dims[&(1, 1)];
        if data.e_basis.len() != h11 {
            return Err(bad(
                "e_basis spans H^{1,1}",
                format!("N = {} classes but h^{{1,1}} = {h11}", data.e_basis.len()),
            ));
        }
        if data.sample_point.len() != data.e_basis.len() {
            return Err(bad(
                "sample_point length",
                format!(
                    "{} coordinates for N = {}",
                    data.sample_point.len(),
                    data.e_basis.len()
                ),
            ));
        }
        let off11 = offsets[&(1, 1)];
        let mut e_classes = Vec::new();
        for (j, e) in data.e_basis.iter().enumerate() {
            if e.len() != h11 {
                return Err(bad(
                    "e_basis spans H^{1,1}",
                    format!("e_{} has {} coordinates", j + 1, e.len()),
                ));
            }
            let mut full = vec![GaussRational::zero(); rank];
            for (i, c) in e.iter().enumerate() {
                full[off11 + i] = GaussRational::real(c.clone());
            }
            e_classes.push(full);
        }

        let alg = GradedAlgebra {
            data,
            dims,
            offsets,
            bidegree_of,
            table,
            e_classes,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn sparse_basis(i: usize) -> Sparse {
        Sparse::from([(i, GaussRational::one())])
    }

    fn sparse_mul(&self, u: &Sparse, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (i, a) in u {
            for (j, b) in v {
                for (k, c) in &self.table[*i][*j] {
                    let term = a.clone() * b * c;
                    let e = out.entry(*k).or_default();
                    *e = e.clone() + &term;
                }
            }
        }
        out.retain(|_, c| !Field::is_zero(c));
        out
    }

    fn sparse_conj(&self, u: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (i, a) in u {
            let bd = self.bidegree_of[*i];
            let m = &self.data.conj[&bd];
            let col = i - self.offsets[&bd];
            let dst = self.range((bd.1, bd.0));
            for (row, k) in dst.enumerate() {
                let c = &m[(row, col)];
                if !Field::is_zero(c) {
                    let e = out.entry(k).or_default();
                    *e = e.clone() + &(a.conj() * c);
                }
            }
        }
        out.retain(|_, c| !Field::is_zero(c));
        out
    }

    fn validate(&self) -> Result<()> {
        let rank = self.rank();
        let unit = Self::sparse_basis(self.offsets[&(0, 0)]);
        let basis = |i: usize| {
            let mut v = vec![GaussRational::zero(); rank];
            v[i] = GaussRational::one();
            v
        };

        for i in 0..rank {
            if self.sparse_mul(&unit, &Self::sparse_basis(i)) != Self::sparse_basis(i) {
                return Err(bad(
                    "unit",
                    format!("generator of H^{{0,0}} does not fix b{i}"),
                ));
            }
        }

        for i in 0..rank {
            for j in 0..rank {
                let (a, b) = (self.bidegree_of[i], self.bidegree_of[j]);
                let odd = ((a.0 + a.1) * (b.0 + b.1)) % 2 == 1;
                let lhs = self.sparse_mul(&Self::sparse_basis(i), &Self::sparse_basis(j));
                let mut rhs = self.sparse_mul(&Self::sparse_basis(j), &Self::sparse_basis(i));
                if odd {
                    rhs.values_mut().for_each(|c| *c = -c.clone());
                }
                if lhs != rhs {
                    return Err(bad(
                        "graded commutativity",
                        format!("b{i}·b{j} ≠ (−1)^{{deg·deg}} b{j}·b{i}"),
                    ));
                }
            }
        }

        let products: Vec<Vec<Sparse>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| self.sparse_mul(&Self::sparse_basis(i), &Self::sparse_basis(j)))
                    .collect()
            })
            .collect();
        for i in 0..rank {
            for j in 0..rank {
                if products[i][j].is_empty() {
                    continue;
                }
                for k in 0..rank {
                    let left = self.sparse_mul(&products[i][j], &Self::sparse_basis(k));
                    let right = self.sparse_mul(&Self::sparse_basis(i), &products[j][k]);
                    if left != right {
                        return Err(bad(
                            "associativity",
                            format!("(b{i}·b{j})·b{k} ≠ b{i}·(b{j}·b{k}) for triple ({i},{j},{k})"),
                        ));
                    }
                }
            }
        }
        // Triples with b_i·b_j = 0 still need b_i·(b_j·b_k) = 0.
        for i in 0..rank {
            for j in 0..rank {
                if !products[i][j].is_empty() {
                    continue;
                }
                for k in 0..rank {
                    if !self
                        .sparse_mul(&Self::sparse_basis(i), &products[j][k])
                        .is_empty()
                    {
                        return Err(bad(
                            "associativity",
                            format!("(b{i}·b{j})·b{k} ≠ b{i}·(b{j}·b{k}) for triple ({i},{j},{k})"),
                        ));
                    }
                }
            }
        }

        let conjs: Vec<Sparse> = (0..rank)
            .map(|i| self.sparse_conj(&Self::sparse_basis(i)))
            .collect();
        for (i, c) in conjs.iter().enumerate() {
            if self.sparse_conj(c) != Self::sparse_basis(i) {
                return Err(bad(
                    "conjugation is an involution",
                    format!("conj(conj(b{i})) ≠ b{i}"),
                ));
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                let lhs = self.sparse_conj(&products[i][j]);
                let rhs = self.sparse_mul(&conjs[i], &conjs[j]);
                if lhs != rhs {
                    return Err(bad(
                        "conjugation is multiplicative",
                        format!("conj(b{i}·b{j}) ≠ conj(b{i})·conj(b{j})"),
                    ));
                }
            }
        }

        let n = self.n();
        let top = self.offsets[&(n, n)];
        if self.conjugate(&basis(top)) != basis(top) || !self.data.integral[0].is_real() {
            return Err(bad(
                "real top class",
                "the H^{n,n} generator and its integral must be real",
            ));
        }

        for (bd, d) in &self.dims {
            if *d == 0 {
                continue;
            }
            let dual = (n - bd.0, n - bd.1);
            let pair = self.pairing_matrix(*bd);
            if pair.cols() != *d || pair.rank() != *d {
                return Err(bad(
                    "Poincaré pairing nondegenerate",
                    format!(
                        "pairing H^{{{},{}}} × H^{{{},{}}} has rank {} < {d}",
                        bd.0,
                        bd.1,
                        dual.0,
                        dual.1,
                        pair.rank()
                    ),
                ));
            }
        }

        for (j, e) in self.e_classes.iter().enumerate() {
            if &self.conjugate(e) != e {
                return Err(bad("e_j real", format!("conj(e_{}) ≠ e_{}", j + 1, j + 1)));
            }
        }
        if !self.e_classes.is_empty() {
            let m = Matrix::from_columns(rank, &self.e_classes);
            if m.rank() != self.e_classes.len() {
                return Err(bad(
                    "e_basis spans H^{1,1}",
                    "the classes e_j are linearly dependent",
                ));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    /// Complex dimension.
    pub fn n(&self) -> usize {
        self.data.n
    }

    /// Total rank of `⊕ H^{p,q}`.
    pub fn rank(&self) -> usize {
        self.bidegree_of.len()
    }

    /// Number of cone coordinates.
    pub fn num_coords(&self) -> usize {
        self.e_classes.len()
    }

    pub fn dim(&self, bd: Bidegree) -> usize {
        self.dims.get(&bd).copied().unwrap_or(0)
    }

    /// Bidegrees of nonzero blocks, in `(p, q)` order.
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        self.dims
            .iter()
            .filter(|(_, d)| **d > 0)
            .map(|(bd, _)| *bd)
            .collect()
    }

    pub fn range(&self, bd: Bidegree) -> Range<usize> {
        let o = self.offsets.get(&bd).copied().unwrap_or(0);
        o..o + self.dim(bd)
    }

    pub fn bidegree_of(&self, i: usize) -> Bidegree {
        self.bidegree_of[i]
    }

    pub fn labels(&self) -> Vec<&str> {
        self.data
            .blocks
            .iter()
            .flat_map(|(_, l)| l.iter().map(String::as_str))
            .collect()
    }

    pub fn data(&self) -> &AlgebraData {
        &self.data
    }

    pub fn sample_point(&self) -> &[BigRational] {
        &self.data.sample_point
    }

    /// Full coordinates of `e_j` (zero-based `j`).
    pub fn e_class(&self, j: usize) -> &[GaussRational] {
        &self.e_classes[j]
    }

    pub fn unit_index(&self) -> usize {
        self.offsets[&(0, 0)]
    }

    pub fn top_index(&self) -> usize {
        self.offsets[&(self.n(), self.n())]
    }

    /// Product of coordinate vectors over any field.
    pub fn mul<F: Field>(&self, u: &[F], v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.rank()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.clone() * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] = out[*k].clone() + &(ab.clone() * &F::from_gauss(c));
                }
            }
        }
        out
    }

    pub fn integrate<F: Field>(&self, u: &[F]) -> F {
        u[self.top_index()].clone() * &F::from_gauss(&self.data.integral[0])
    }

    pub fn conjugate<F: Field>(&self, u: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.rank()];
        for (bd, m) in &self.data.conj {
            let src = self.range(*bd);
            let dst = self.range((bd.1, bd.0));
            for (ci, i) in src.enumerate() {
                if u[i].is_zero() {
                    continue;
                }
                let c = u[i].conj();
                for (ck, k) in dst.clone().enumerate() {
                    let m_ki = &m[(ck, ci)];
                    if !Field::is_zero(m_ki) {
                        out[k] = out[k].clone() + &(c.clone() * &F::from_gauss(m_ki));
                    }
                }
            }
        }
        out
    }

    /// Conjugation block `H^{p,q} → H^{q,p}` in coordinates: `conj(u) = C·ū`.
    pub fn conj_matrix(&self, bd: Bidegree) -> &Matrix<GaussRational> {
        &self.data.conj[&bd]
    }

    /// `Pair[i][j] = ∫ b_i · b'_j` for `b_i ∈ H^{p,q}`, `b'_j ∈ H^{n−p,n−q}`.
    pub fn pairing_matrix(&self, bd: Bidegree) -> Matrix<GaussRational> {
        let n = self.n();
        let dual = (n - bd.0, n - bd.1);
        let (r1, r2) = (self.range(bd), self.range(dual));
        let top = self.top_index();
        let w = &self.data.integral[0];
        Matrix::from_fn(r1.len(), r2.len(), |a, b| {
            self.table[r1.start + a][r2.start + b]
                .iter()
                .find(|(k, _)| *k == top)
                .map_or(GaussRational::zero(), |(_, c)| c.clone() * w)
        })
    }

    /// Matrix of `x ↦ class · x` on the block `source`, for a class of pure
    /// bidegree `deg`. `None` if the target is out of range.
    pub fn cup_block(
        &self,
        class: &[GaussRational],
        deg: Bidegree,
        source: Bidegree,
    ) -> Option<(Bidegree, Matrix<GaussRational>)> {
        let target = (source.0 + deg.0, source.1 + deg.1);
        if target.0 > self.n()
            || target.1 > self.n()
            || self.dim(source) == 0
            || self.dim(target) == 0
        {
            return None;
        }
        let (rs, rt) = (self.range(source), self.range(target));
        let mut m: Matrix<GaussRational> = Matrix::zeros(rt.len(), rs.len());
        for (a, c) in class.iter().enumerate() {
            if Field::is_zero(c) {
                continue;
            }
            for (col, i) in rs.clone().enumerate() {
                for (k, v) in &self.table[a][i] {
                    let row = k - rt.start;
                    let cur = m[(row, col)].clone() + &(c.clone() * v);
                    m[(row, col)] = cur;
                }
            }
        }
        Some((target, m))
    }

    /// Cup product with a class of pure bidegree as a block operator.
    pub fn cup_operator(&self, class: &[GaussRational]) -> Result<GradedOp<GaussRational>> {
        let deg = self.pure_bidegree(class)?;
        let mut op = GradedOp::new();
        if let Some(deg) = deg {
            for s in self.bidegrees() {
                if let Some((t, m)) = self.cup_block(class, deg, s) {
                    op.insert(s, t, m);
                }
            }
        }
        Ok(op)
    }

    /// `Some(bd)` for a nonzero homogeneous class, `None` for zero.
    pub fn pure_bidegree<F: Field>(&self, u: &[F]) -> Result<Option<Bidegree>> {
        let mut found: Option<Bidegree> = None;
        for (i, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let bd = self.bidegree_of[i];
            match found {
                None => found = Some(bd),
                Some(f) if f != bd => {
                    return Err(HodgeError::WrongBidegree {
                        expected: "a homogeneous class".into(),
                        got: format!("components in {f:?} and {bd:?}"),
                    })
                }
                _ => {}
            }
        }
        Ok(found)
    }

    /// `Σ t_j e_j` as a coordinate vector over `F`.
    pub fn class_from_coords<F: Field>(&self, t: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.rank()];
        for (tj, e) in t.iter().zip(&self.e_classes) {
            for (i, c) in e.iter().enumerate() {
                if !Field::is_zero(c) {
                    out[i] = out[i].clone() + &(tj.clone() * &F::from_gauss(c));
                }
            }
        }
        out
    }
}

/// An element of `⊕ H^{p,q}` tied to its algebra.
#[derive(Clone, Debug)]
pub struct CohomClass<F = GaussRational> {
    alg: Arc<GradedAlgebra>,
    coeffs: Vec<F>,
}

impl<F: Field + PartialEq> PartialEq for CohomClass<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.coeffs == other.coeffs
    }
}

impl<F: Field> CohomClass<F> {
    pub fn new(alg: &Arc<GradedAlgebra>, coeffs: Vec<F>) -> Result<Self> {
        if coeffs.len() != alg.rank() {
            return Err(HodgeError::DimensionMismatch(format!(
                "{} coefficients for an algebra of rank {}",
                coeffs.len(),
                alg.rank()
            )));
        }
        Ok(CohomClass {
            alg: Arc::clone(alg),
            coeffs,
        })
    }

    pub fn zero(alg: &Arc<GradedAlgebra>) -> Self {
        CohomClass {
            alg: Arc::clone(alg),
            coeffs: vec![F::zero(); alg.rank()],
        }
    }

    pub fn basis(alg: &Arc<GradedAlgebra>, i: usize) -> Self {
        let mut c = Self::zero(alg);
        c.coeffs[i] = F::one();
        c
    }

    /// Looks a basis element up by label.
    pub fn by_label(alg: &Arc<GradedAlgebra>, label: &str) -> Result<Self> {
        let i = alg
            .labels()
            .iter()
            .position(|l| *l == label)
            .ok_or_else(|| {
                HodgeError::InvalidParameter(format!("no basis element labelled {label:?}"))
            })?;
        Ok(Self::basis(alg, i))
    }

    /// `e_j` for zero-based `j`.
    pub fn e(alg: &Arc<GradedAlgebra>, j: usize) -> Self {
        let coeffs = alg.e_class(j).iter().map(F::from_gauss).collect();
        CohomClass {
            alg: Arc::clone(alg),
            coeffs,
        }
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn bidegree(&self) -> Result<Option<Bidegree>> {
        self.alg.pure_bidegree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(HodgeError::MismatchedAlgebras)
        }
    }

    pub fn cup(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(CohomClass {
            alg: Arc::clone(&self.alg),
            coeffs: self.alg.mul(&self.coeffs, &other.coeffs),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b)
            .collect();
        Ok(CohomClass {
            alg: Arc::clone(&self.alg),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b)
            .collect();
        Ok(CohomClass {
            alg: Arc::clone(&self.alg),
            coeffs,
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        CohomClass {
            alg: Arc::clone(&self.alg),
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    /// Integral over the fundamental class; the class must lie in `H^{n,n}`.
    pub fn integrate(&self) -> Result<F> {
        let n = self.alg.n();
        match self.bidegree()? {
            None => Ok(F::zero()),
            Some(bd) if bd == (n, n) => Ok(self.alg.integrate(&self.coeffs)),
            Some(bd) => Err(HodgeError::WrongBidegree {
                expected: format!("({n},{n})"),
                got: format!("{bd:?}"),
            }),
        }
    }

    pub fn conjugate(&self) -> Self {
        CohomClass {
            alg: Arc::clone(&self.alg),
            coeffs: self.alg.conjugate(&self.coeffs),
        }
    }

    /// Coordinates of the `bd` component.
    pub fn component(&self, bd: Bidegree) -> Vec<F> {
        self.coeffs[self.alg.range(bd)].to_vec()
    }
}
