//! Built-in test algebras: projective spaces, their products and complex tori.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraData, GradedAlgebra};
use crate::error::{HodgeError, Result};
use crate::linalg::Matrix;
use crate::operator::Bidegree;
use crate::scalar::{Field, GaussRational};

/// Names accepted by [`fixture`] that are listed by the CLI.
pub fn builtin_fixture_names() -> &'static [&'static str] {
    &[
        "p1", "p2", "p3", "p1xp1", "p1xp2", "p1xp1xp1", "torus1", "torus2", "torus3",
    ]
}

/// Resolves a fixture name: `p<n>`, `p<a>xp<b>x…`, `torus<n>`, or the long
/// forms `projective_space(n)`, `product(a,b,…)`, `torus(n)`.
pub fn fixture(name: &str) -> Result<GradedAlgebra> {
    let s = name.trim().to_ascii_lowercase();
    let invalid = || HodgeError::InvalidParameter(format!("unknown fixture {name:?}"));
    let int = |x: &str| x.trim().parse::<usize>().map_err(|_| invalid());
    let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));

    if let Some(arg) = inner("projective_space(") {
        return projective_space(int(arg)?);
    }
    if let Some(arg) = inner("torus(") {
        return torus(int(arg)?);
    }
    if let Some(args) = inner("product_of_projective_spaces(").or_else(|| inner("product(")) {
        let dims = args.split(',').map(int).collect::<Result<Vec<_>>>()?;
        return product_of_projective_spaces(&dims);
    }
    if let Some(arg) = s.strip_prefix("torus") {
        return torus(int(arg)?);
    }
    if s.starts_with('p') {
        let dims = s
            .split('x')
            .map(|f| f.strip_prefix('p').ok_or_else(invalid).and_then(int))
            .collect::<Result<Vec<_>>>()?;
        return if dims.len() == 1 {
            projective_space(dims[0])
        } else {
            product_of_projective_spaces(&dims)
        };
    }
    Err(invalid())
}

fn one() -> GaussRational {
    GaussRational::one()
}

fn identity_conj(blocks: &[(Bidegree, Vec<String>)]) -> BTreeMap<Bidegree, Matrix<GaussRational>> {
    blocks
        .iter()
        .map(|(bd, l)| (*bd, Matrix::identity(l.len())))
        .collect()
}

fn hyperplane_label(i: usize, e: usize, single: bool) -> String {
    let base = if single {
        "h".to_string()
    } else {
        format!("h{}", i + 1)
    };
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

/// `ℂ[h]/(h^{n+1})` with `∫hⁿ = 1`.
pub fn projective_space(n: usize) -> Result<GradedAlgebra> {
    if n == 0 {
        return Err(HodgeError::InvalidParameter(
            "projective_space needs n ≥ 1".into(),
        ));
    }
    let mut data = monomial_ring(&[n])?;
    data.name = format!("p{n}");
    GradedAlgebra::new(data)
}

/// Tensor product of the rings of `ℙ^{n_1}, …, ℙ^{n_m}`.
pub fn product_of_projective_spaces(dims: &[usize]) -> Result<GradedAlgebra> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(HodgeError::InvalidParameter(
            "product needs at least one factor, each of dimension ≥ 1".into(),
        ));
    }
    let mut data = monomial_ring(dims)?;
    data.name = dims
        .iter()
        .map(|d| format!("p{d}"))
        .collect::<Vec<_>>()
        .join("x");
    GradedAlgebra::new(data)
}

fn monomial_ring(dims: &[usize]) -> Result<AlgebraData> {
    let n: usize = dims.iter().sum();
    let single = dims.len() == 1;
    let mut exps: Vec<Vec<usize>> = vec![vec![]];
    for &d in dims {
        exps = exps
            .into_iter()
            .flat_map(|e| (0..=d).map(move |a| [e.clone(), vec![a]].concat()))
            .collect();
    }
    // Degree first, then descending lexicographic so that h1 precedes h2.
    exps.sort_by(|a, b| {
        a.iter()
            .sum::<usize>()
            .cmp(&b.iter().sum())
            .then_with(|| b.cmp(a))
    });

    let label = |e: &[usize]| {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, a)| **a > 0)
            .map(|(i, a)| hyperplane_label(i, *a, single))
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    };
    let mut blocks: Vec<(Bidegree, Vec<String>)> = Vec::new();
    for e in &exps {
        let d: usize = e.iter().sum();
        match blocks.last_mut() {
            Some((bd, l)) if bd.0 == d => l.push(label(e)),
            _ => blocks.push(((d, d), vec![label(e)])),
        }
    }
    let index: BTreeMap<&Vec<usize>, usize> =
        exps.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut cup = Vec::new();
    for (i, a) in exps.iter().enumerate() {
        for (j, b) in exps.iter().enumerate() {
            let c: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if c.iter().zip(dims).all(|(x, d)| x <= d) {
                cup.push((i, j, index[&c], one()));
            }
        }
    }
    let e_basis = (0..dims.len())
        .map(|i| {
            (0..dims.len())
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok(AlgebraData {
        name: String::new(),
        n,
        conj: identity_conj(&blocks),
        blocks,
        cup,
        integral: vec![one()],
        e_basis,
        sample_point: vec![BigRational::one(); dims.len()],
    })
}

/// Bigraded exterior algebra `Λ(a_1..a_n) ⊗ Λ(b_1..b_n)` with `a_j` of
/// bidegree (1,0) and `b_j = conj(a_j)`.
///
/// `H^{1,1}` uses the real basis `i·a_j b_j`, `c(a_j b_k − a_k b_j)` and
/// `c·i(a_j b_k + a_k b_j)` for `j < k` with `c = 1/(2n)`; these are the
/// classes `e_j`, so the all-ones point is the positive form
/// `i Σ H_{jk} a_j b_k` with `H = I + c·(off-diagonal of modulus √2)`.
/// The top class is `i^n (−1)^{n(n−1)/2} a_1⋯a_n b_1⋯b_n` with integral 1.
pub fn torus(n: usize) -> Result<GradedAlgebra> {
    if n == 0 || n > 6 {
        return Err(HodgeError::InvalidParameter(
            "torus dimension must be in 1..=6".into(),
        ));
    }
    let mut monomials_by_bd: BTreeMap<Bidegree, Vec<u32>> = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let mut list = Vec::new();
            for i_set in subsets(n, p) {
                for j_set in subsets(n, q) {
                    list.push(i_set | (j_set << n));
                }
            }
            monomials_by_bd.insert((p, q), list);
        }
    }
    let mono_label = |m: u32| {
        let mut s = String::new();
        for g in 0..2 * n {
            if m & (1 << g) != 0 {
                if g < n {
                    s += &format!("a{}", g + 1);
                } else {
                    s += &format!("b{}", g - n + 1);
                }
            }
        }
        if s.is_empty() {
            "1".to_string()
        } else {
            s
        }
    };

    let i = GaussRational::i();
    let c = GaussRational::from_ratio(1, 2 * n as i64);
    // Per bidegree: basis vectors as sparse combinations of monomials.
    let mut basis: BTreeMap<Bidegree, Vec<(String, Vec<(u32, GaussRational)>)>> = BTreeMap::new();
    for (bd, monos) in &monomials_by_bd {
        let vectors = if *bd == (n, n) {
            let sign = if (n * (n - 1) / 2).is_multiple_of(2) {
                one()
            } else {
                -one()
            };
            let coef = (0..n).fold(sign, |acc, _| acc * &i);
            vec![("vol".to_string(), vec![(monos[0], coef)])]
        } else if *bd == (1, 1) {
            let ab = |j: usize, k: usize| (1u32 << j) | (1u32 << (n + k));
            let mut v = Vec::new();
            for j in 0..n {
                v.push((format!("i*a{0}b{0}", j + 1), vec![(ab(j, j), i.clone())]));
            }
            for j in 0..n {
                for k in j + 1..n {
                    let (jl, kl) = (j + 1, k + 1);
                    v.push((
                        format!("c*(a{jl}b{kl}-a{kl}b{jl})"),
                        vec![(ab(j, k), c.clone()), (ab(k, j), -c.clone())],
                    ));
                    let ic = c.clone() * &i;
                    v.push((
                        format!("c*i*(a{jl}b{kl}+a{kl}b{jl})"),
                        vec![(ab(j, k), ic.clone()), (ab(k, j), ic)],
                    ));
                }
            }
            v
        } else {
            monos
                .iter()
                .map(|&m| (mono_label(m), vec![(m, one())]))
                .collect()
        };
        basis.insert(*bd, vectors);
    }

    // Change of basis: coordinates in the monomial basis of each block.
    let mono_pos: BTreeMap<u32, usize> = monomials_by_bd
        .values()
        .flat_map(|l| l.iter().enumerate().map(|(k, m)| (*m, k)))
        .collect();
    let bd_of = |m: u32| {
        let lo = (m & ((1 << n) - 1)).count_ones() as usize;
        let hi = (m >> n).count_ones() as usize;
        (lo, hi)
    };
    let mut to_basis: BTreeMap<Bidegree, Matrix<GaussRational>> = BTreeMap::new();
    for (bd, vectors) in &basis {
        let d = monomials_by_bd[bd].len();
        let mut p = Matrix::zeros(d, vectors.len());
        for (col, (_, v)) in vectors.iter().enumerate() {
            for (m, coef) in v {
                p[(mono_pos[m], col)] = coef.clone();
            }
        }
        to_basis.insert(*bd, p.inverse().expect("torus basis change is invertible"));
    }
    let express = |bd: Bidegree, mono_coords: &[GaussRational]| to_basis[&bd].mul_vec(mono_coords);

    let order: Vec<Bidegree> = basis.keys().copied().collect();
    let mut offset = BTreeMap::new();
    let mut total = 0;
    for bd in &order {
        offset.insert(*bd, total);
        total += basis[bd].len();
    }

    let mut cup = Vec::new();
    let flat: Vec<(Bidegree, &Vec<(u32, GaussRational)>)> = order
        .iter()
        .flat_map(|bd| basis[bd].iter().map(move |(_, v)| (*bd, v)))
        .collect();
    for (gi, (bi, vi)) in flat.iter().enumerate() {
        for (gj, (bj, vj)) in flat.iter().enumerate() {
            let target = (bi.0 + bj.0, bi.1 + bj.1);
            if target.0 > n || target.1 > n {
                continue;
            }
            let mut coords = vec![GaussRational::zero(); monomials_by_bd[&target].len()];
            for (m1, c1) in vi.iter() {
                for (m2, c2) in vj.iter() {
                    if m1 & m2 != 0 {
                        continue;
                    }
                    let s = GaussRational::from_i64(wedge_sign(*m1, *m2));
                    let pos = mono_pos[&(m1 | m2)];
                    coords[pos] = coords[pos].clone() + &(c1.clone() * c2 * &s);
                }
            }
            for (k, val) in express(target, &coords).into_iter().enumerate() {
                if !Field::is_zero(&val) {
                    cup.push((gi, gj, offset[&target] + k, val));
                }
            }
        }
    }

    let mut conj = BTreeMap::new();
    for bd in &order {
        let target = (bd.1, bd.0);
        let cols: Vec<Vec<GaussRational>> = basis[bd]
            .iter()
            .map(|(_, v)| {
                let mut coords = vec![GaussRational::zero(); monomials_by_bd[&target].len()];
                for (m, coef) in v {
                    let (img, sign) = conj_monomial(*m, n);
                    debug_assert_eq!(bd_of(img), target);
                    let pos = mono_pos[&img];
                    coords[pos] =
                        coords[pos].clone() + &(coef.conj() * &GaussRational::from_i64(sign));
                }
                express(target, &coords)
            })
            .collect();
        conj.insert(*bd, Matrix::from_columns(basis[&target].len(), &cols));
    }

    let h11 = basis[&(1, 1)].len();
    let e_basis = (0..h11)
        .map(|a| {
            (0..h11)
                .map(|b| {
                    if a == b {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let blocks = order
        .iter()
        .map(|bd| (*bd, basis[bd].iter().map(|(l, _)| l.clone()).collect()))
        .collect();
    GradedAlgebra::new(AlgebraData {
        name: format!("torus{n}"),
        n,
        blocks,
        cup,
        conj,
        integral: vec![one()],
        e_basis,
        sample_point: vec![BigRational::from_integer(BigInt::one()); h11],
    })
}

/// Bitmasks of the `k`-element subsets of `{0..n}` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect();
    out.sort_by_key(|m| (0..n).filter(|b| m & (1 << b) != 0).collect::<Vec<_>>());
    out
}

/// Sign of `m1 ∧ m2` relative to the sorted monomial `m1 | m2`.
fn wedge_sign(m1: u32, m2: u32) -> i64 {
    let mut inversions = 0;
    for u in 0..32 {
        if m1 & (1 << u) != 0 {
            inversions += (m2 & ((1u32 << u) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `conj(a_I b_J) = b_I a_J = (−1)^{|I||J|} a_J b_I`.
fn conj_monomial(m: u32, n: usize) -> (u32, i64) {
    let lo = m & ((1 << n) - 1);
    let hi = m >> n;
    let sign = if (lo.count_ones() * hi.count_ones()).is_multiple_of(2) {
        1
    } else {
        -1
    };
    (hi | (lo << n), sign)
}
