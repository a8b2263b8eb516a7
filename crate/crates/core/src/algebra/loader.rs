//! JSON structure-constant files.
//!
//! ```json
//! {
//!   "name": "p2",
//!   "n": 2,
//!   "dims": [[0, 0, 1], [1, 1, 1], [2, 2, 1]],
//!   "basis": [["1"], ["h"], ["h^2"]],
//!   "cup": [[0, 0, 0, 1, 1, 0, 1], [0, 1, 1, 1, 1, 0, 1], ...],
//!   "conj": [{"from": [0, 0], "matrix": [["1"]]}, ...],
//!   "integral": ["1"],
//!   "e_basis": [["1"]],
//!   "sample_point": ["1"]
//! }
//! ```
//!
//! * `dims` and `basis` are parallel: `basis[i]` lists the labels of the
//!   bidegree `dims[i]`, and the concatenation order fixes basis indices.
//! * `cup` entries `[i, j, k, re_num, re_den, im_num, im_den]` say that the
//!   coefficient of `b_k` in `b_i·b_j` is `re_num/re_den + i·im_num/im_den`.
//!   Omitted entries are zero. All six integers must be JSON integers.
//! * `conj` gives, per source bidegree `(p,q)`, the matrix whose column `c`
//!   holds the coordinates of `conj(b_c)` in `H^{q,p}`. Entries are rationals
//!   (`"p/q"`, `"p"` or an integer) or `[re, im]` pairs of rationals.
//! * `integral` is the value on the `H^{n,n}` generator, `e_basis` the
//!   coordinates of each `e_j` in the `H^{1,1}` basis, `sample_point` a
//!   point `t` with `ω(t) = Σ t_j e_j` polarized.
//!
//! JSON floats are rejected everywhere: every coefficient must be rational.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{AlgebraData, GradedAlgebra};
use crate::error::{HodgeError, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_rational, parse_rational, GaussRational};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjBlock {
    pub from: [usize; 2],
    pub matrix: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub dims: Vec<[usize; 3]>,
    pub basis: Vec<Vec<String>>,
    pub cup: Vec<Vec<Value>>,
    pub conj: Vec<ConjBlock>,
    pub integral: Vec<Value>,
    pub e_basis: Vec<Vec<Value>>,
    pub sample_point: Vec<Value>,
}

fn parse_err(msg: impl Into<String>) -> HodgeError {
    HodgeError::Parse(msg.into())
}

fn integer(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(num) if num.is_i64() || num.is_u64() => Ok(BigInt::from(
            num.as_i64()
                .map_or_else(|| i128::from(num.as_u64().unwrap_or_default()), i128::from),
        )),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("{what}: not an integer: {s:?}"))),
        Value::Number(_) => Err(parse_err(format!(
            "{what}: non-rational coefficient {v} (floats are not accepted)"
        ))),
        _ => Err(parse_err(format!("{what}: expected an integer, got {v}"))),
    }
}

fn rational(v: &Value, what: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(format!("{what}: {e}"))),
        _ => integer(v, what).map(BigRational::from_integer),
    }
}

fn gauss(v: &Value, what: &str) -> Result<GaussRational> {
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(GaussRational::new(
            rational(&pair[0], what)?,
            rational(&pair[1], what)?,
        )),
        _ => rational(v, what).map(GaussRational::real),
    }
}

fn rational_value(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

fn int_value(x: &BigInt) -> Value {
    x.to_i64()
        .map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn gauss_value(g: &GaussRational) -> Value {
    if g.is_real() {
        rational_value(&g.re)
    } else {
        Value::Array(vec![rational_value(&g.re), rational_value(&g.im)])
    }
}

impl AlgebraFile {
    pub fn into_data(self) -> Result<AlgebraData> {
        if self.dims.len() != self.basis.len() {
            return Err(parse_err(format!(
                "dims has {} entries but basis has {} groups",
                self.dims.len(),
                self.basis.len()
            )));
        }
        let mut blocks = Vec::new();
        for ([p, q, d], labels) in self.dims.iter().zip(self.basis) {
            if labels.len() != *d {
                return Err(parse_err(format!(
                    "bidegree ({p},{q}) declares dim {d} but lists {} labels",
                    labels.len()
                )));
            }
            blocks.push(((*p, *q), labels));
        }

        let mut cup = Vec::new();
        for (row, entry) in self.cup.iter().enumerate() {
            let what = format!("cup[{row}]");
            if entry.len() != 7 {
                return Err(parse_err(format!(
                    "{what}: expected 7 integers, got {}",
                    entry.len()
                )));
            }
            let idx = |x: &Value| -> Result<usize> {
                integer(x, &what)?
                    .try_into()
                    .map_err(|_| parse_err(format!("{what}: bad index {x}")))
            };
            let (i, j, k) = (idx(&entry[0])?, idx(&entry[1])?, idx(&entry[2])?);
            let frac = |n: &Value, d: &Value| -> Result<BigRational> {
                let d = integer(d, &what)?;
                if d.is_zero() {
                    return Err(parse_err(format!("{what}: zero denominator")));
                }
                Ok(BigRational::new(integer(n, &what)?, d))
            };
            let c = GaussRational::new(frac(&entry[3], &entry[4])?, frac(&entry[5], &entry[6])?);
            cup.push((i, j, k, c));
        }

        let mut conj = BTreeMap::new();
        for block in &self.conj {
            let what = format!("conj from ({},{})", block.from[0], block.from[1]);
            let rows = block
                .matrix
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| gauss(v, &what))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let width = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != width) {
                return Err(parse_err(format!("{what}: ragged matrix")));
            }
            let m = if rows.is_empty() {
                Matrix::zeros(0, 0)
            } else {
                Matrix::from_rows(rows)
            };
            if conj.insert((block.from[0], block.from[1]), m).is_some() {
                return Err(parse_err(format!("{what}: listed twice")));
            }
        }
        let integral = self
            .integral
            .iter()
            .map(|v| gauss(v, "integral"))
            .collect::<Result<Vec<_>>>()?;
        let e_basis = self
            .e_basis
            .iter()
            .enumerate()
            .map(|(j, e)| {
                e.iter()
                    .map(|v| rational(v, &format!("e_basis[{j}]")))
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        let sample_point = self
            .sample_point
            .iter()
            .map(|v| rational(v, "sample_point"))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraData {
            name: self.name.unwrap_or_else(|| "custom".into()),
            n: self.n,
            blocks,
            cup,
            conj,
            integral,
            e_basis,
            sample_point,
        })
    }

    pub fn from_algebra(alg: &GradedAlgebra) -> Self {
        let data = alg.data();
        let dims = data
            .blocks
            .iter()
            .map(|((p, q), l)| [*p, *q, l.len()])
            .collect();
        let basis = data.blocks.iter().map(|(_, l)| l.clone()).collect();
        let mut cup = Vec::new();
        let rank = alg.rank();
        for i in 0..rank {
            for j in 0..rank {
                let mut u = vec![GaussRational::default(); rank];
                let mut v = u.clone();
                u[i] = GaussRational::from_i64(1);
                v[j] = GaussRational::from_i64(1);
                for (k, c) in alg.mul(&u, &v).iter().enumerate() {
                    if c.re.is_zero() && c.im.is_zero() {
                        continue;
                    }
                    cup.push(vec![
                        i.into(),
                        j.into(),
                        k.into(),
                        int_value(c.re.numer()),
                        int_value(c.re.denom()),
                        int_value(c.im.numer()),
                        int_value(c.im.denom()),
                    ]);
                }
            }
        }
        let conj = data
            .conj
            .iter()
            .filter(|(_, m)| m.cols() > 0)
            .map(|(bd, m)| ConjBlock {
                from: [bd.0, bd.1],
                matrix: (0..m.rows())
                    .map(|r| (0..m.cols()).map(|c| gauss_value(&m[(r, c)])).collect())
                    .collect(),
            })
            .collect();
        AlgebraFile {
            name: Some(data.name.clone()),
            n: data.n,
            dims,
            basis,
            cup,
            conj,
            integral: data.integral.iter().map(gauss_value).collect(),
            e_basis: data
                .e_basis
                .iter()
                .map(|e| e.iter().map(rational_value).collect())
                .collect(),
            sample_point: data.sample_point.iter().map(rational_value).collect(),
        }
    }
}

pub fn load_algebra_str(text: &str) -> Result<GradedAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    GradedAlgebra::new(file.into_data()?)
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<GradedAlgebra> {
    let text = std::fs::read_to_string(path)?;
    load_algebra_str(&text)
}

/// Pretty-printed JSON in the documented schema.
pub fn export_json(alg: &GradedAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(alg)).expect("algebra file serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{fixture, projective_space};

    const P2: &str = r#"{
        "n": 2,
        "dims": [[0,0,1],[1,1,1],[2,2,1]],
        "basis": [["1"],["H"],["H2"]],
        "cup": [[0,0,0,1,1,0,1],[0,1,1,1,1,0,1],[1,0,1,1,1,0,1],[0,2,2,1,1,0,1],
                [2,0,2,1,1,0,1],[1,1,2,1,1,0,1]],
        "conj": [{"from":[0,0],"matrix":[["1"]]},{"from":[1,1],"matrix":[["1"]]},
                 {"from":[2,2],"matrix":[["1"]]}],
        "integral": ["1"],
        "e_basis": [["1"]],
        "sample_point": ["1"]
    }"#;

    #[test]
    fn hand_written_p2_matches_fixture() {
        let loaded = load_algebra_str(P2).unwrap();
        let fixed = projective_space(2).unwrap();
        assert_eq!(loaded.rank(), fixed.rank());
        let rank = loaded.rank();
        for i in 0..rank {
            for j in 0..rank {
                let mut u = vec![GaussRational::default(); rank];
                let mut v = u.clone();
                u[i] = GaussRational::from_i64(1);
                v[j] = GaussRational::from_i64(1);
                assert_eq!(loaded.mul(&u, &v), fixed.mul(&u, &v));
            }
        }
    }

    #[test]
    fn export_round_trips() {
        for name in ["p2", "p1xp1", "torus2"] {
            let alg = fixture(name).unwrap();
            let again = load_algebra_str(&export_json(&alg)).unwrap();
            assert_eq!(again.labels(), alg.labels());
            assert_eq!(export_json(&again), export_json(&alg));
        }
    }

    #[test]
    fn floats_rejected() {
        let text = P2.replace(r#""integral": ["1"]"#, r#""integral": [0.5]"#);
        let err = load_algebra_str(&text).unwrap_err().to_string();
        assert!(err.contains("non-rational"), "{err}");
    }

    #[test]
    fn non_associative_file_rejected() {
        let alg = fixture("p1xp1xp1").unwrap();
        let labels = alg.labels();
        let idx = |l: &str| labels.iter().position(|x| *x == l).unwrap() as i64;
        let (h1, h23) = (idx("h1"), idx("h2*h3"));
        let mut file = AlgebraFile::from_algebra(&alg);
        for e in &mut file.cup {
            let (i, j) = (e[0].as_i64().unwrap(), e[1].as_i64().unwrap());
            if (i, j) == (h1, h23) || (i, j) == (h23, h1) {
                e[3] = Value::from(2);
            }
        }
        let text = serde_json::to_string(&file).unwrap();
        let err = load_algebra_str(&text).unwrap_err().to_string();
        assert!(
            err.contains("associativity") && err.contains("triple"),
            "{err}"
        );
    }

    #[test]
    fn top_degree_two_rejected() {
        let text = P2
            .replace("[2,2,1]]", "[2,2,2]]")
            .replace(r#"["H2"]"#, r#"["H2","X"]"#);
        let err = load_algebra_str(&text).unwrap_err().to_string();
        assert!(err.contains("top degree not one-dimensional"), "{err}");
    }
}
