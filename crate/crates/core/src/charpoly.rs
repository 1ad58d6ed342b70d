//! Parametric matrices and the exact characteristic polynomial
//! `p(v, lambda) = det(lambda*Id - H(v))`.
//!
//! The determinant is computed by the Faddeev-LeVerrier recurrence over the
//! exact polynomial ring. The only divisions are by the integers `1..n`,
//! which are exact over Gaussian rationals, and the cost is O(n^4)
//! polynomial multiplications: comfortable at the matrix sizes used here
//! (n <= 16).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{BiPoly, PolyError, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must be square and non-empty: got {rows} rows, row {row} has {cols} entries")]
    NotSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },
    #[error("matrix entry ({row}, {col}) failed to parse: {source}")]
    Entry {
        row: usize,
        col: usize,
        source: PolyError,
    },
}

/// Square matrix whose entries are exact polynomials in the perturbation
/// `v`; every Hamiltonian in this crate is one of these. `lambda` never
/// appears inside entries, it is introduced only by [`char_poly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricMatrix {
    n: usize,
    entries: Vec<UniPoly>,
}

impl ParametricMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        Self {
            n,
            entries: vec![UniPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, UniPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<UniPoly>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::NotSquare {
                rows: 0,
                row: 0,
                cols: 0,
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquare {
                    rows: n,
                    row: r,
                    cols: row.len(),
                });
            }
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &UniPoly {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: UniPoly) {
        self.entries[row * self.n + col] = value;
    }

    pub fn trace(&self) -> UniPoly {
        let mut t = UniPoly::zero();
        for i in 0..self.n {
            t = t.add(self.get(i, i));
        }
        t
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = UniPoly::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(rhs.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Entry-wise evaluation at a complex point.
    pub fn eval(&self, nu: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            n: self.n,
            entries: self.entries.iter().map(|p| p.eval(nu)).collect(),
        }
    }

    /// Serialize to the matrix exchange JSON.
    pub fn to_json(&self) -> String {
        let file = MatrixFile {
            n: self.n,
            entries: (0..self.n)
                .map(|r| (0..self.n).map(|c| self.get(r, c).to_string()).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("matrix serialization cannot fail")
    }

    /// Parse the matrix exchange JSON `{"n": int, "entries": [[poly,..],..]}`.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if file.entries.len() != file.n {
            return Err(format!(
                "expected {} rows, got {}",
                file.n,
                file.entries.len()
            ));
        }
        let mut rows = Vec::with_capacity(file.n);
        for (r, row) in file.entries.iter().enumerate() {
            if row.len() != file.n {
                return Err(format!(
                    "row {} has {} entries, expected {}",
                    r,
                    row.len(),
                    file.n
                ));
            }
            let mut parsed = Vec::with_capacity(file.n);
            for (c, entry) in row.iter().enumerate() {
                parsed.push(UniPoly::parse(entry).map_err(|e| format!("entry ({r}, {c}): {e}"))?);
            }
            rows.push(parsed);
        }
        Self::from_rows(rows).map_err(|e| e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<Vec<String>>,
}

/// Dense complex matrix, the numeric image of a [`ParametricMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            n,
            entries: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_entries(n: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.n + col] = value;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Exact characteristic polynomial `det(lambda*Id - M)`, monic of lambda
/// degree `n`, by Faddeev-LeVerrier over the exact ring.
pub fn char_poly(m: &ParametricMatrix) -> BiPoly {
    let n = m.dim();
    // coefficients c[k] of lambda^(n-k); c[0] = 1
    let mut coeffs: Vec<UniPoly> = Vec::with_capacity(n + 1);
    coeffs.push(UniPoly::one());
    let mut aux = ParametricMatrix::identity(n); // M_1
    for k in 1..=n {
        let am = m.matmul(&aux);
        let c_k = am.trace().div_int(k as i64).neg();
        if k < n {
            aux = am;
            for i in 0..n {
                aux.set(i, i, aux.get(i, i).add(&c_k));
            }
        }
        coeffs.push(c_k);
    }
    // assemble: lambda^n + c_1 lambda^(n-1) + ... + c_n
    let mut by_power: Vec<UniPoly> = vec![UniPoly::zero(); n + 1];
    for (k, c) in coeffs.into_iter().enumerate() {
        by_power[n - k] = c;
    }
    BiPoly::from_lambda_coefficients(&by_power)
}

/// Entry-wise numeric evaluation of a parametric matrix.
pub fn eval_matrix(m: &ParametricMatrix, nu: Complex64) -> ComplexMatrix {
    m.eval(nu)
}
