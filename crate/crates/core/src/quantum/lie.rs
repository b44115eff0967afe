//! Lie algebras with a representation: structure constants and matrices.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::expr::parse_scalar;
use crate::forms::Signature;
use crate::scalar::{ParamTable, Scalar};

/// Structure constants `c^k_ij` and representation matrices `A^β_iα`.
#[derive(Clone, Debug)]
pub struct LieData {
    pub name: String,
    pub dim: usize,
    pub repdim: usize,
    c: Vec<Scalar>,
    a: Vec<Scalar>,
    /// Parity of each basis vector `f_α` of the representation.
    pub parities: Vec<bool>,
}

pub type Matrix = Vec<Vec<BigRational>>;

impl LieData {
    /// `c[i][j][k] = c^k_ij`, `a[i][α][β] = A^β_iα`; validated eagerly.
    pub fn new(
        name: &str,
        c: Vec<Vec<Vec<Scalar>>>,
        a: Vec<Vec<Vec<Scalar>>>,
        parities: Vec<bool>,
    ) -> Result<LieData> {
        let dim = c.len();
        let repdim = parities.len();
        let bad = |m: String| Error::InvalidLieData(format!("{}: {}", name, m));
        if a.len() != dim {
            return Err(bad("one matrix per basis element expected".into()));
        }
        if c.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(bad("structure constants must be dim x dim x dim".into()));
        }
        if a.iter().any(|m| m.len() != repdim || m.iter().any(|r| r.len() != repdim)) {
            return Err(bad("matrices must be repdim x repdim".into()));
        }
        let data = LieData {
            name: name.to_owned(),
            dim,
            repdim,
            c: c.into_iter().flatten().flatten().collect(),
            a: a.into_iter().flatten().flatten().collect(),
            parities,
        };
        data.validate().map_err(bad)?;
        Ok(data)
    }

    /// `c^k_ij`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// `A^β_iα`.
    pub fn a(&self, i: usize, alpha: usize, beta: usize) -> &Scalar {
        &self.a[(i * self.repdim + alpha) * self.repdim + beta]
    }

    pub fn is_graded(&self) -> bool {
        self.parities.iter().any(|&p| p)
    }

    /// The same data with another grading of the representation space.
    pub fn with_parities(&self, parities: Vec<bool>) -> Result<LieData> {
        let mut d = self.clone();
        if parities.len() != d.repdim {
            return Err(Error::InvalidLieData("one parity per representation index expected".into()));
        }
        d.parities = parities;
        d.validate().map_err(Error::InvalidLieData)?;
        Ok(d)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        let (n, r) = (self.dim, self.repdim);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !(self.c(i, j, k) + self.c(j, i, k)).is_zero() {
                        return Err(format!("c^{}_{}{} is not antisymmetric", k + 1, i + 1, j + 1));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for k in 0..n {
                        let mut lhs = Scalar::zero();
                        let mut rhs = Scalar::zero();
                        for s in 0..n {
                            lhs += &(self.c(i, s, k) * self.c(j, l, s));
                            lhs += &-(self.c(j, s, k) * self.c(i, l, s));
                            rhs += &(self.c(i, j, s) * self.c(s, l, k));
                        }
                        if lhs != rhs {
                            return Err(format!("Jacobi identity fails at ({},{},{},{})", i + 1, j + 1, k + 1, l + 1));
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for al in 0..r {
                for be in 0..r {
                    if self.parities[al] != self.parities[be] && !self.a(i, al, be).is_zero() {
                        return Err(format!("matrix {} is not even", i + 1));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for al in 0..r {
                    for ga in 0..r {
                        let mut lhs = Scalar::zero();
                        for k in 0..n {
                            lhs += &(self.c(i, j, k) * self.a(k, al, ga));
                        }
                        let mut rhs = Scalar::zero();
                        for be in 0..r {
                            rhs += &(self.a(i, be, ga) * self.a(j, al, be));
                            rhs += &-(self.a(j, be, ga) * self.a(i, al, be));
                        }
                        if lhs != rhs {
                            return Err(format!("representation condition fails at ({},{})", i + 1, j + 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A matrix Lie algebra: `A^β_iα = E_i[β][α]`, constants solved from commutators.
    pub fn from_matrices(name: &str, basis: &[Matrix], parities: Vec<bool>) -> Result<LieData> {
        let n = basis.len();
        let r = parities.len();
        let flat = |m: &Matrix| -> Vec<BigRational> { m.iter().flatten().cloned().collect() };
        let cols: Vec<Vec<BigRational>> = basis.iter().map(flat).collect();
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let comm = sub(&matmul(&basis[i], &basis[j]), &matmul(&basis[j], &basis[i]));
                let coeffs = solve(&cols, &flat(&comm))
                    .ok_or_else(|| Error::InvalidLieData(format!("{}: basis is not closed under brackets", name)))?;
                for (k, v) in coeffs.into_iter().enumerate() {
                    c[i][j][k] = Scalar::from_rational(v);
                }
            }
        }
        let a = basis
            .iter()
            .map(|m| (0..r).map(|al| (0..r).map(|be| Scalar::from_rational(m[be][al].clone())).collect()).collect())
            .collect();
        LieData::new(name, c, a, parities)
    }

    pub fn aff1() -> LieData {
        LieData::from_matrices("aff1", &[unit(2, 0, 0), unit(2, 0, 1)], vec![false; 2]).unwrap()
    }

    /// Basis `e, f, h` on the fundamental representation.
    pub fn sl2() -> LieData {
        LieData::from_matrices("sl2", &sl2_basis(), vec![false; 2]).unwrap()
    }

    /// Matrix units `E_iα` in row-major order.
    pub fn gl(n: usize) -> LieData {
        let basis: Vec<Matrix> = (0..n).flat_map(|i| (0..n).map(move |a| unit(n, i, a))).collect();
        LieData::from_matrices(&format!("gl{}", n), &basis, vec![false; n]).unwrap()
    }

    /// `E_ij − E_ji` for `i < j`.
    pub fn so(n: usize) -> LieData {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                basis.push(sub(&unit(n, i, j), &unit(n, j, i)));
            }
        }
        LieData::from_matrices(&format!("so{}", n), &basis, vec![false; n]).unwrap()
    }

    /// gl(2) acting on two fermionic modes.
    pub fn gl2_fermionic() -> LieData {
        LieData::gl(2).with_parities(vec![true, true]).unwrap()
    }

    /// sl(2) on a bosonic plus a fermionic copy of the fundamental representation.
    pub fn sl2_boson_fermion() -> LieData {
        let basis: Vec<Matrix> = sl2_basis().iter().map(|m| block_diag(m, m)).collect();
        LieData::from_matrices("sl2bf", &basis, vec![false, false, true, true]).unwrap()
    }

    pub fn preset(name: &str) -> Result<LieData> {
        Ok(match name {
            "aff1" => LieData::aff1(),
            "sl2" => LieData::sl2(),
            "gl2" => LieData::gl(2),
            "gl3" => LieData::gl(3),
            "so3" => LieData::so(3),
            "gl2f" => LieData::gl2_fermionic(),
            "sl2bf" => LieData::sl2_boson_fermion(),
            _ => return Err(Error::Invalid(format!("unknown Lie data preset `{}`", name))),
        })
    }

    pub const PRESETS: [&'static str; 7] = ["aff1", "sl2", "gl2", "gl3", "so3", "gl2f", "sl2bf"];

    /// `{dim, repdim, c: [[i,j,k,v]], A: [[i,α,β,v]], parities?}` with 1-based
    /// indices; `A` entries give `A^β_iα`. Missing `c_ji` entries are filled by
    /// antisymmetry.
    pub fn from_json(text: &str) -> Result<LieData> {
        let spec: LieSpec = serde_json::from_str(text)?;
        let sig = Signature::new(ParamTable::standard());
        let value = |v: &serde_json::Value| -> Result<Scalar> {
            match v {
                serde_json::Value::String(s) => parse_scalar(s, &sig),
                other => parse_scalar(&other.to_string(), &sig),
            }
        };
        let (n, r) = (spec.dim, spec.repdim);
        let range = |x: usize, m: usize| {
            if x == 0 || x > m {
                Err(Error::InvalidLieData(format!("index {} out of range 1..={}", x, m)))
            } else {
                Ok(x - 1)
            }
        };
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        let mut given = vec![vec![false; n]; n];
        for (i, j, k, v) in &spec.c {
            let (i, j, k) = (range(*i, n)?, range(*j, n)?, range(*k, n)?);
            c[i][j][k] = value(v)?;
            given[i][j] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if given[i][j] && !given[j][i] {
                    for k in 0..n {
                        c[j][i][k] = -&c[i][j][k];
                    }
                }
            }
        }
        let mut a = vec![vec![vec![Scalar::zero(); r]; r]; n];
        for (i, al, be, v) in &spec.a {
            a[range(*i, n)?][range(*al, r)?][range(*be, r)?] = value(v)?;
        }
        let parities = match spec.parities {
            Some(p) if p.len() == r => p.iter().map(|&x| x % 2 == 1).collect(),
            Some(_) => return Err(Error::InvalidLieData("one parity per representation index expected".into())),
            None => vec![false; r],
        };
        LieData::new(spec.name.as_deref().unwrap_or("custom"), c, a, parities)
    }
}

#[derive(Deserialize)]
struct LieSpec {
    name: Option<String>,
    dim: usize,
    repdim: usize,
    #[serde(default)]
    c: Vec<(usize, usize, usize, serde_json::Value)>,
    #[serde(default, rename = "A")]
    a: Vec<(usize, usize, usize, serde_json::Value)>,
    parities: Option<Vec<u8>>,
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = vec![vec![BigRational::zero(); n]; n];
    m[i][j] = BigRational::one();
    m
}

fn sl2_basis() -> Vec<Matrix> {
    vec![unit(2, 0, 1), unit(2, 1, 0), sub(&unit(2, 0, 0), &unit(2, 1, 1))]
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let (p, q) = (a.len(), b.len());
    let mut m = vec![vec![BigRational::zero(); p + q]; p + q];
    for i in 0..p {
        for j in 0..p {
            m[i][j] = a[i][j].clone();
        }
    }
    for i in 0..q {
        for j in 0..q {
            m[p + i][p + j] = b[i][j].clone();
        }
    }
    m
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                m[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    m
}

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

/// Solve `Σ_k x_k cols[k] = target` exactly; `None` if inconsistent.
fn solve(cols: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = cols.len();
    let rows = target.len();
    let mut m: Vec<Vec<BigRational>> =
        (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).chain([target[r].clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=n {
                    let v = &m[row][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    Some(x)
}
