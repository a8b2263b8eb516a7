//! Convex bodies with exact rational volumes: axis-parallel boxes in any
//! dimension and convex polygons in the plane.
//!
//! `mixed_volume(A₁, …, A_n)` is the coefficient of `t₁⋯t_n` in
//! `p(t) = |t₁A₁ + ⋯ + t_nA_n|`, so `mixed_volume(A, …, A) = n!·|A|`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{HodgeError, Result};
use crate::report::Outcome;
use crate::scalar::{format_rational, parse_rational, ratio_to_f64};

type Q = BigRational;
type Point = (Q, Q);

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexBody {
    /// Side lengths of `[0, a₁] × ⋯ × [0, a_n]`.
    Box(Vec<Q>),
    /// Counter-clockwise vertices in strictly convex position, starting at
    /// the lowest (then leftmost) vertex. One vertex is a point, two a
    /// segment.
    Polygon(Vec<Point>),
}

fn cross(o: &Point, a: &Point, b: &Point) -> Q {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Andrew's monotone chain without collinear points, counter-clockwise.
fn hull(mut pts: Vec<Point>) -> Vec<Point> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = vec![];
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = vec![];
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn start_lowest(mut vs: Vec<Point>) -> Vec<Point> {
    if let Some(i) = (0..vs.len()).min_by(|&a, &b| (&vs[a].1, &vs[a].0).cmp(&(&vs[b].1, &vs[b].0)))
    {
        vs.rotate_left(i);
    }
    vs
}

/// Half-plane index then cross product: a total order on edge directions by
/// polar angle in `[0, 2π)`.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |v: &Point| {
        if v.1.is_positive() || (v.1.is_zero() && v.0.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = &a.0 * &b.1 - &a.1 * &b.0;
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

impl ConvexBody {
    pub fn new_box(sides: Vec<Q>) -> Result<Self> {
        if sides.is_empty() || sides.iter().any(Signed::is_negative) {
            return Err(HodgeError::InvalidParameter(
                "box sides must be nonnegative and nonempty".into(),
            ));
        }
        Ok(ConvexBody::Box(sides))
    }

    pub fn box_from_ints(sides: &[i64]) -> Self {
        ConvexBody::Box(sides.iter().map(|&s| q(s)).collect())
    }

    /// Accepts either orientation; rejects vertex lists that are not in
    /// convex position.
    pub fn new_polygon(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(HodgeError::InvalidParameter(
                "polygon needs at least one vertex".into(),
            ));
        }
        let h = hull(vertices.clone());
        let mut distinct = vertices.clone();
        distinct.dedup();
        if distinct.len() > 1 && distinct.first() == distinct.last() {
            distinct.pop();
        }
        let on_hull = distinct.iter().filter(|v| h.contains(v)).count();
        let collinear = distinct.len() - on_hull;
        let in_order = {
            let mut idx: Vec<usize> = distinct
                .iter()
                .filter_map(|v| h.iter().position(|w| w == v))
                .collect();
            let n = idx.len();
            if n > 2 {
                let k = (0..n).min_by_key(|&i| idx[i]).unwrap();
                idx.rotate_left(k);
                idx.windows(2).all(|w| w[0] < w[1]) || {
                    idx[1..].reverse();
                    idx.windows(2).all(|w| w[0] < w[1])
                }
            } else {
                true
            }
        };
        // every input vertex is a hull vertex or lies on a hull edge, in cyclic order
        let on_boundary = distinct.iter().all(|v| {
            h.contains(v)
                || (0..h.len()).any(|i| {
                    let a = &h[i];
                    let b = &h[(i + 1) % h.len()];
                    cross(a, b, v).is_zero()
                        && v.0 >= a.0.clone().min(b.0.clone())
                        && v.0 <= a.0.clone().max(b.0.clone())
                        && v.1 >= a.1.clone().min(b.1.clone())
                        && v.1 <= a.1.clone().max(b.1.clone())
                })
        });
        if !on_boundary || !in_order || (h.len() >= 3 && on_hull != h.len()) {
            return Err(HodgeError::InvalidParameter(format!(
                "vertices are not in convex position ({collinear} collinear, hull has {})",
                h.len()
            )));
        }
        Ok(ConvexBody::Polygon(start_lowest(h)))
    }

    /// Convex hull of arbitrary points.
    pub fn hull_of(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(HodgeError::InvalidParameter(
                "polygon needs at least one vertex".into(),
            ));
        }
        Ok(ConvexBody::Polygon(start_lowest(hull(points))))
    }

    pub fn polygon_from_ints(vertices: &[(i64, i64)]) -> Result<Self> {
        Self::new_polygon(vertices.iter().map(|&(x, y)| (q(x), q(y))).collect())
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Box(s) => s.len(),
            ConvexBody::Polygon(_) => 2,
        }
    }

    pub fn volume(&self) -> Q {
        match self {
            ConvexBody::Box(s) => s.iter().fold(Q::one(), |acc, x| acc * x),
            ConvexBody::Polygon(v) => {
                let n = v.len();
                let twice = (0..n).fold(Q::zero(), |acc, i| {
                    let (a, b) = (&v[i], &v[(i + 1) % n]);
                    acc + &a.0 * &b.1 - &b.0 * &a.1
                });
                twice / q(2)
            }
        }
    }

    /// `c·A` for `c ≥ 0`.
    pub fn scale(&self, c: &Q) -> Self {
        match self {
            ConvexBody::Box(s) => ConvexBody::Box(s.iter().map(|x| x * c).collect()),
            ConvexBody::Polygon(v) if c.is_zero() => {
                ConvexBody::Polygon(vec![(Q::zero(), Q::zero()); 1.min(v.len())])
            }
            ConvexBody::Polygon(v) => {
                ConvexBody::Polygon(v.iter().map(|(x, y)| (x * c, y * c)).collect())
            }
        }
    }

    /// True when the body has nonempty interior.
    pub fn is_full_dimensional(&self) -> bool {
        self.volume().is_positive()
    }

    pub fn describe(&self) -> String {
        match self {
            ConvexBody::Box(s) => format!(
                "box({})",
                s.iter().map(format_rational).collect::<Vec<_>>().join(",")
            ),
            ConvexBody::Polygon(v) => format!(
                "polygon({})",
                v.iter()
                    .map(|(x, y)| format!("{} {}", format_rational(x), format_rational(y)))
                    .collect::<Vec<_>>()
                    .join("; ")
            ),
        }
    }
}

/// `P + Q`. Boxes add side-wise; polygons merge their edge sequences by
/// polar angle.
pub fn minkowski_sum(p: &ConvexBody, other: &ConvexBody) -> Result<ConvexBody> {
    match (p, other) {
        (ConvexBody::Box(a), ConvexBody::Box(b)) => {
            if a.len() != b.len() {
                return Err(HodgeError::DimensionMismatch(format!(
                    "boxes of dimension {} and {}",
                    a.len(),
                    b.len()
                )));
            }
            Ok(ConvexBody::Box(
                a.iter().zip(b).map(|(x, y)| x + y).collect(),
            ))
        }
        (ConvexBody::Polygon(a), ConvexBody::Polygon(b)) => {
            Ok(ConvexBody::Polygon(merge_polygons(a, b)))
        }
        _ => Err(HodgeError::InvalidParameter(
            "Minkowski sum of a box and a polygon".into(),
        )),
    }
}

fn edges(v: &[Point]) -> Vec<Point> {
    if v.len() < 2 {
        return vec![];
    }
    (0..v.len())
        .map(|i| {
            let (a, b) = (&v[i], &v[(i + 1) % v.len()]);
            (&b.0 - &a.0, &b.1 - &a.1)
        })
        .collect()
}

fn merge_polygons(a: &[Point], b: &[Point]) -> Vec<Point> {
    let (ea, eb) = (edges(a), edges(b));
    let mut cur = (&a[0].0 + &b[0].0, &a[0].1 + &b[0].1);
    let mut out = vec![cur.clone()];
    let (mut i, mut j) = (0, 0);
    while i < ea.len() || j < eb.len() {
        let step =
            if j >= eb.len() || (i < ea.len() && angle_cmp(&ea[i], &eb[j]) != Ordering::Greater) {
                i += 1;
                ea[i - 1].clone()
            } else {
                j += 1;
                eb[j - 1].clone()
            };
        cur = (&cur.0 + &step.0, &cur.1 + &step.1);
        out.push(cur.clone());
    }
    out.pop();
    start_lowest(hull(out))
}

/// `|Σ t_i A_i|`.
pub fn combination_volume(bodies: &[ConvexBody], t: &[Q]) -> Result<Q> {
    let mut acc = bodies[0].scale(&t[0]);
    for (b, ti) in bodies.iter().zip(t).skip(1) {
        acc = minkowski_sum(&acc, &b.scale(ti))?;
    }
    Ok(acc.volume())
}

/// Coefficient of `x` in the Lagrange basis polynomials on nodes `1..=m`.
fn linear_coefficients(m: usize) -> Vec<Q> {
    let nodes: Vec<Q> = (1..=m as i64).map(q).collect();
    (0..m)
        .map(|k| {
            // ∏_{l≠k} (x − x_l)/(x_k − x_l); coefficient of x¹
            let mut poly = vec![Q::one()];
            let mut denom = Q::one();
            for (l, xl) in nodes.iter().enumerate() {
                if l == k {
                    continue;
                }
                let mut next = vec![Q::zero(); poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * xl;
                }
                poly = next;
                denom *= &nodes[k] - xl;
            }
            poly[1].clone() / denom
        })
        .collect()
}

/// The `t₁⋯t_n` coefficient of `|t₁A₁ + ⋯ + t_nA_n|`, by exact tensor
/// Lagrange interpolation on `{1, …, n+1}^n`.
pub fn mixed_volume(bodies: &[ConvexBody]) -> Result<Q> {
    let n = bodies.first().map(ConvexBody::dim).unwrap_or(0);
    if n == 0 || bodies.len() != n || bodies.iter().any(|b| b.dim() != n) {
        return Err(HodgeError::DimensionMismatch(format!(
            "mixed volume needs n bodies of dimension n (got {})",
            bodies.len()
        )));
    }
    let m = n + 1;
    let lin = linear_coefficients(m);
    let total = m.pow(n as u32);
    let terms: Vec<Q> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut t = Vec::with_capacity(n);
            let mut w = Q::one();
            for _ in 0..n {
                let k = idx % m;
                idx /= m;
                t.push(q(k as i64 + 1));
                w *= &lin[k];
            }
            Ok(combination_volume(bodies, &t)? * w)
        })
        .collect::<Result<_>>()?;
    Ok(terms.into_iter().fold(Q::zero(), |a, b| a + b))
}

/// Closed form for boxes: the permanent of the side matrix.
pub fn box_mixed_volume_closed_form(sides: &[Vec<Q>]) -> Q {
    let n = sides.len();
    fn perm(sides: &[Vec<Q>], row: usize, used: &mut Vec<bool>) -> Q {
        if row == sides.len() {
            return Q::one();
        }
        let mut acc = Q::zero();
        for c in 0..sides.len() {
            if !used[c] {
                used[c] = true;
                acc += &sides[row][c] * perm(sides, row + 1, used);
                used[c] = false;
            }
        }
        acc
    }
    perm(sides, 0, &mut vec![false; n])
}

/// Largest integer `r` with `r^n ≤ x` for `x ≥ 0`.
fn int_root_floor(x: &BigInt, n: u32) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let mut r = x.nth_root(n);
    while num_traits::pow(r.clone() + 1, n as usize) <= *x {
        r += 1;
    }
    while num_traits::pow(r.clone(), n as usize) > *x {
        r -= 1;
    }
    r
}

/// `x^{1/n}` when it is rational.
pub fn rational_root(x: &Q, n: u32) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (a, b) = (x.numer(), x.denom());
    let (ra, rb) = (int_root_floor(a, n), int_root_floor(b, n));
    (num_traits::pow(ra.clone(), n as usize) == *a && num_traits::pow(rb.clone(), n as usize) == *b)
        .then(|| Q::new(ra, rb))
}

/// Rational bounds `lo ≤ x^{1/n} ≤ hi` with `hi − lo ≤ 2^{-bits}`.
fn root_bounds(x: &Q, n: u32, bits: u32) -> (Q, Q) {
    let mut lo = Q::zero();
    let mut hi = x.clone().max(Q::one());
    let eps = Q::new(BigInt::one(), BigInt::one() << bits);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / q(2);
        if num_traits::pow(mid.clone(), n as usize) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Sign of `x^{1/n} − a^{1/n} − b^{1/n}` for `x, a, b ≥ 0`.
pub fn root_sum_sign(x: &Q, a: &Q, b: &Q, n: u32) -> Ordering {
    if let (Some(s), Some(ra), Some(rb)) = (
        rational_root(x, n),
        rational_root(a, n),
        rational_root(b, n),
    ) {
        return s.cmp(&(ra + rb));
    }
    if n == 2 {
        // √x ≥ √a + √b ⇔ x − a − b ≥ 0 and (x − a − b)² ≥ 4ab
        let d = x - a - b;
        if d.is_negative() {
            return Ordering::Less;
        }
        return (&d * &d).cmp(&(q(4) * a * b));
    }
    let mut bits = 64;
    loop {
        let (xl, xh) = root_bounds(x, n, bits);
        let (al, ah) = root_bounds(a, n, bits);
        let (bl, bh) = root_bounds(b, n, bits);
        if xl > &ah + &bh {
            return Ordering::Greater;
        }
        if xh < al + bl {
            return Ordering::Less;
        }
        if bits >= 1024 {
            return Ordering::Equal;
        }
        bits *= 2;
    }
}

/// Brunn–Minkowski values.
#[derive(Clone, Debug, PartialEq)]
pub struct BmValues {
    pub sum_volume: Q,
    pub volume0: Q,
    pub volume1: Q,
    /// Sign of `|A₀+A₁|^{1/n} − |A₀|^{1/n} − |A₁|^{1/n}`.
    pub sign: Ordering,
    /// The same difference in floating point.
    pub margin: f64,
}

pub fn bm_values(a0: &ConvexBody, a1: &ConvexBody) -> Result<BmValues> {
    let n = a0.dim() as u32;
    let sum_volume = minkowski_sum(a0, a1)?.volume();
    let (volume0, volume1) = (a0.volume(), a1.volume());
    let sign = root_sum_sign(&sum_volume, &volume0, &volume1, n);
    let root = |x: &Q| ratio_to_f64(x).powf(1.0 / n as f64);
    let margin = root(&sum_volume) - root(&volume0) - root(&volume1);
    Ok(BmValues {
        sum_volume,
        volume0,
        volume1,
        sign,
        margin,
    })
}

pub fn bm_check(a0: &ConvexBody, a1: &ConvexBody) -> Result<Vec<Outcome>> {
    let v = bm_values(a0, a1)?;
    let detail = format!(
        "|A0+A1|={} |A0|={} |A1|={} margin={:.6}",
        format_rational(&v.sum_volume),
        format_rational(&v.volume0),
        format_rational(&v.volume1),
        v.margin
    );
    Ok(vec![Outcome::new(
        "brunn_minkowski",
        detail,
        (-v.margin).max(0.0),
        v.sign != Ordering::Less,
    )])
}

/// `(V(A₁, A₂, …)², V(A₁, A₁, …)·V(A₂, A₂, …))`.
pub fn af_values(bodies: &[ConvexBody]) -> Result<(Q, Q)> {
    if bodies.len() < 2 {
        return Err(HodgeError::InvalidParameter(
            "Alexandrov–Fenchel needs at least two bodies".into(),
        ));
    }
    let with = |x: &ConvexBody, y: &ConvexBody| {
        let mut v = vec![x.clone(), y.clone()];
        v.extend(bodies[2..].iter().cloned());
        mixed_volume(&v)
    };
    let v12 = with(&bodies[0], &bodies[1])?;
    let v11 = with(&bodies[0], &bodies[0])?;
    let v22 = with(&bodies[1], &bodies[1])?;
    Ok((&v12 * &v12, v11 * v22))
}

pub fn af_check(bodies: &[ConvexBody]) -> Result<Vec<Outcome>> {
    let (lhs, rhs) = af_values(bodies)?;
    let margin = &lhs - &rhs;
    let detail = format!(
        "V12^2={} V11*V22={}",
        format_rational(&lhs),
        format_rational(&rhs)
    );
    Ok(vec![Outcome::new(
        "alexandrov_fenchel",
        detail,
        (-ratio_to_f64(&margin)).max(0.0),
        !margin.is_negative(),
    )])
}

/// `(−log|A_s|)''` at `s = i/steps` along `A_s = sA₁ + (1−s)A₀`, using the
/// exact degree-`n` polynomial `s ↦ |A_s|`.
pub fn log_concavity_grid(a0: &ConvexBody, a1: &ConvexBody, steps: usize) -> Result<Vec<(Q, Q)>> {
    let n = a0.dim();
    let samples: Vec<Q> = (0..=n as i64)
        .map(|k| combination_volume(&[a0.clone(), a1.clone()], &[q(n as i64 + 1 - k), q(k)]))
        .collect::<Result<_>>()?;
    // Interpolate P(u) = |(n+1−u)A₀ + uA₁| and rescale: |A_s| = P((n+1)s)/(n+1)^n
    let coeffs = interpolate(&samples);
    let scale = q(n as i64 + 1);
    let mut out = vec![];
    if steps == 0 {
        return Ok(out);
    }
    for i in 0..=steps {
        let s = Q::new((i as i64).into(), (steps as i64).into());
        let u = &s * &scale;
        let (p, d1, d2) = eval_with_derivatives(&coeffs, &u);
        // d/ds = (n+1)·d/du
        let val = (&d1 * &d1 - &p * &d2) / (&p * &p);
        out.push((s, val * &scale * &scale));
    }
    Ok(out)
}

/// Monomial coefficients of the polynomial through `(k, y_k)`, `k = 0..m`.
fn interpolate(y: &[Q]) -> Vec<Q> {
    let m = y.len();
    let mut coeffs = vec![Q::zero(); m];
    for (k, yk) in y.iter().enumerate() {
        let mut poly = vec![Q::one()];
        let mut denom = Q::one();
        for l in 0..m {
            if l == k {
                continue;
            }
            let mut next = vec![Q::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * q(l as i64);
            }
            poly = next;
            denom *= q(k as i64 - l as i64);
        }
        for (c, p) in coeffs.iter_mut().zip(poly) {
            *c += p * yk / &denom;
        }
    }
    coeffs
}

fn eval_with_derivatives(c: &[Q], x: &Q) -> (Q, Q, Q) {
    let (mut p, mut d1, mut d2) = (Q::zero(), Q::zero(), Q::zero());
    for a in c.iter().rev() {
        d2 = &d2 * x + &d1 * q(2);
        d1 = &d1 * x + &p;
        p = &p * x + a;
    }
    (p, d1, d2)
}

pub fn log_concavity_check(a0: &ConvexBody, a1: &ConvexBody, steps: usize) -> Result<Vec<Outcome>> {
    let rows = log_concavity_grid(a0, a1, steps)?;
    let worst = rows
        .iter()
        .map(|(_, v)| ratio_to_f64(v))
        .fold(f64::INFINITY, f64::min);
    let ok = rows.iter().all(|(_, v)| !v.is_negative());
    Ok(vec![Outcome::new(
        "convex_log_convexity",
        format!("steps={steps} min={worst:.6}"),
        (-worst).max(0.0),
        ok,
    )])
}

/// `V(ω₁, …, ω_n)` on `(ℙ¹)^n` for `ω_i = Σ_k a_i^k e_k` against the mixed
/// volume of the boxes with sides `a_i`.
pub fn bridge_values(sides: &[Vec<Q>]) -> Result<(Q, Q)> {
    use crate::algebra::product_of_projective_spaces;
    use crate::inequality::mixed_intersection_coords;
    use crate::scalar::GaussRational;
    let n = sides.len();
    let alg = product_of_projective_spaces(&vec![1; n])?;
    let coords: Vec<Vec<GaussRational>> = sides
        .iter()
        .map(|s| s.iter().map(|x| GaussRational::real(x.clone())).collect())
        .collect();
    let v = mixed_intersection_coords(&alg, &coords)?;
    let boxes: Vec<ConvexBody> = sides.iter().map(|s| ConvexBody::Box(s.clone())).collect();
    Ok((v.re, mixed_volume(&boxes)?))
}

/// Parses `"x y"` lines (rationals as `p/q`); `#` starts a comment.
pub fn parse_polygon(text: &str) -> Result<ConvexBody> {
    let mut pts = vec![];
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if parts.len() != 2 {
            return Err(HodgeError::Parse(format!(
                "line {}: expected two coordinates",
                i + 1
            )));
        }
        pts.push((parse_rational(parts[0])?, parse_rational(parts[1])?));
    }
    ConvexBody::new_polygon(pts)
}

/// Parses `"a,b,c"` box sides.
pub fn parse_box(text: &str) -> Result<ConvexBody> {
    let sides: Vec<Q> = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<_>>()?;
    ConvexBody::new_box(sides)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn square() -> ConvexBody {
        ConvexBody::polygon_from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    fn triangle() -> ConvexBody {
        ConvexBody::polygon_from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap()
    }

    #[test]
    fn volumes() {
        assert_eq!(square().volume(), q(1));
        assert_eq!(triangle().volume(), r(1, 2));
        assert_eq!(ConvexBody::box_from_ints(&[2, 3]).volume(), q(6));
        let cw = ConvexBody::polygon_from_ints(&[(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(cw.volume(), r(1, 2));
    }

    #[test]
    fn rejects_non_convex() {
        assert!(ConvexBody::polygon_from_ints(&[(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)]).is_err());
        // bow-tie order
        assert!(ConvexBody::polygon_from_ints(&[(0, 0), (1, 1), (1, 0), (0, 1)]).is_err());
        assert!(ConvexBody::new_box(vec![q(-1)]).is_err());
    }

    #[test]
    fn minkowski_examples() {
        let s2 = minkowski_sum(&square(), &square()).unwrap();
        assert_eq!(s2, square().scale(&q(2)));
        let ts = minkowski_sum(&triangle(), &square()).unwrap();
        assert_eq!(ts.volume(), r(7, 2));
        if let ConvexBody::Polygon(v) = &ts {
            assert_eq!(v.len(), 5);
        }
        let origin = ConvexBody::polygon_from_ints(&[(0, 0)]).unwrap();
        assert_eq!(minkowski_sum(&triangle(), &origin).unwrap(), triangle());
        assert!(minkowski_sum(&square(), &ConvexBody::box_from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn mixed_volume_examples() {
        assert_eq!(mixed_volume(&[square(), square()]).unwrap(), q(2));
        let a = ConvexBody::box_from_ints(&[2, 3]);
        let b = ConvexBody::box_from_ints(&[5, 7]);
        assert_eq!(mixed_volume(&[a, b]).unwrap(), q(2 * 7 + 3 * 5));
        // |P + Q| = |P| + |Q| + mixed_volume(P, Q) in the plane
        let m = mixed_volume(&[triangle(), square()]).unwrap();
        assert_eq!(m, q(2));
        assert_eq!(
            minkowski_sum(&triangle(), &square()).unwrap().volume(),
            r(1, 2) + q(1) + m
        );
        let c = ConvexBody::box_from_ints(&[1, 2, 3]);
        assert_eq!(
            mixed_volume(&[c.clone(), c.clone(), c.clone()]).unwrap(),
            q(6) * c.volume()
        );
    }

    #[test]
    fn box_closed_form() {
        let sides = vec![
            vec![q(1), q(1), q(1)],
            vec![q(1), q(2), q(1)],
            vec![q(2), q(1), q(1)],
        ];
        let boxes: Vec<ConvexBody> = sides.iter().map(|s| ConvexBody::Box(s.clone())).collect();
        assert_eq!(
            mixed_volume(&boxes).unwrap(),
            box_mixed_volume_closed_form(&sides)
        );
    }

    #[test]
    fn brunn_minkowski() {
        let v = bm_values(&square(), &square().scale(&r(3, 2))).unwrap();
        assert_eq!(v.sign, Ordering::Equal);
        let v = bm_values(&triangle(), &square()).unwrap();
        assert_eq!(v.sum_volume, r(7, 2));
        assert_eq!(v.sign, Ordering::Greater);
        let b = ConvexBody::box_from_ints(&[1, 2, 3]);
        assert_eq!(
            bm_values(&b, &b.scale(&q(2))).unwrap().sign,
            Ordering::Equal
        );
        assert_eq!(
            bm_values(&b, &ConvexBody::box_from_ints(&[3, 1, 1]))
                .unwrap()
                .sign,
            Ordering::Greater
        );
    }

    #[test]
    fn root_sign_cases() {
        assert_eq!(root_sum_sign(&q(9), &q(1), &q(4), 2), Ordering::Equal);
        assert_eq!(root_sum_sign(&q(8), &q(2), &q(2), 2), Ordering::Equal);
        assert_eq!(root_sum_sign(&q(7), &q(2), &q(2), 2), Ordering::Less);
        assert_eq!(root_sum_sign(&q(17), &q(2), &q(2), 3), Ordering::Greater);
        assert_eq!(root_sum_sign(&q(16), &q(2), &q(2), 3), Ordering::Equal);
        assert_eq!(rational_root(&r(8, 27), 3), Some(r(2, 3)));
        assert_eq!(rational_root(&q(2), 2), None);
    }

    #[test]
    fn alexandrov_fenchel_boxes() {
        let bodies = [
            ConvexBody::box_from_ints(&[1, 1, 1]),
            ConvexBody::box_from_ints(&[1, 2, 1]),
            ConvexBody::box_from_ints(&[2, 1, 1]),
        ];
        let (l, rr) = af_values(&bodies).unwrap();
        assert!(l >= rr);
        assert!(af_check(&bodies).unwrap()[0].pass);
    }

    #[test]
    fn log_concavity() {
        let rows = log_concavity_grid(&square(), &square().scale(&q(3)), 4).unwrap();
        // |A_s| = (1+2s)²: (−log)'' = 8/(1+2s)²
        for (s, v) in rows {
            let d = q(1) + q(2) * s;
            assert_eq!(v, q(8) / (&d * &d));
        }
        assert!(log_concavity_check(&triangle(), &square(), 10).unwrap()[0].pass);
        assert!(log_concavity_grid(&triangle(), &square(), 0)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn bridge() {
        let (v, m) = bridge_values(&[vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap();
        assert_eq!((v, m), (q(1), q(1)));
        let (v, m) = bridge_values(&[vec![q(1), q(1)], vec![q(1), q(1)]]).unwrap();
        assert_eq!((v, m), (q(2), q(2)));
        let (v, m) = bridge_values(&[
            vec![q(1), q(2), q(3)],
            vec![q(2), q(1), q(1)],
            vec![r(1, 2), q(1), q(4)],
        ])
        .unwrap();
        assert_eq!(v, m);
    }

    #[test]
    fn parsing() {
        let p = parse_polygon("# triangle\n0 0\n1 0\n0 1\n").unwrap();
        assert_eq!(p, triangle());
        assert_eq!(
            parse_box("1/2, 3").unwrap(),
            ConvexBody::Box(vec![r(1, 2), q(3)])
        );
        assert!(parse_polygon("0 0 0").is_err());
    }
}
