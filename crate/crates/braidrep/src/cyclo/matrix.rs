//! Dense matrices over cyclotomic numbers.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::num::CycNum;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    /// Row-major, length `rows * cols`.
    entries: Vec<CycNum>,
}

impl CycMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<CycNum>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        let mut m = CycMatrix { rows, cols, entries };
        m.unify_conductor();
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycNum) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        let mut m = CycMatrix { rows, cols, entries };
        m.unify_conductor();
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            entries: vec![CycNum::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                CycNum::one()
            } else {
                CycNum::zero()
            }
        })
    }

    pub fn diagonal(diag: &[CycNum]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                CycNum::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.entries[i * self.cols + j] = v;
        self.unify_conductor();
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    /// Lcm of the nonzero entries' conductors (zeros are canonical at
    /// conductor 1 and don't count); all nonzero entries share it after
    /// `unify_conductor`.
    pub fn conductor(&self) -> u64 {
        use num::Integer;
        let mut m: u64 = 1;
        for e in &self.entries {
            if !e.is_zero() {
                m = m.lcm(&e.conductor());
            }
        }
        m
    }

    /// Lift every nonzero entry to the lcm of all entry conductors.
    fn unify_conductor(&mut self) {
        let m = self.conductor();
        for e in &mut self.entries {
            if !e.is_zero() && e.conductor() != m {
                *e = e.lift(m);
            }
        }
    }

    /// Rewrite all entries at conductor `m` (a multiple of the current one).
    pub fn lift(&self, m: u64) -> CycMatrix {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.lift(m)).collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn add(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "add: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        CycMatrix::new(self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.add(&other.scale(&CycNum::from_int(-1)))
    }

    pub fn scale(&self, s: &CycNum) -> CycMatrix {
        let mut m = CycMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        };
        m.unify_conductor();
        m
    }

    pub fn mul(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = vec![CycNum::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    entries[idx] = entries[idx].add(&a.mul(b));
                }
            }
        }
        CycMatrix::new(self.rows, other.cols, entries)
    }

    /// `self^k` for nonnegative `k` by repeated squaring. Requires square.
    pub fn pow(&self, k: u64) -> Result<CycMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("pow of a non-square matrix".into()));
        }
        let mut acc = CycMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Kronecker product; the left factor is the most significant index:
    /// `(A kron B)[i1*rB + i2, j1*cB + j2] = A[i1,j1] * B[i2,j2]`.
    pub fn kron(&self, other: &CycMatrix) -> CycMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![CycNum::zero(); rows * cols];
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        entries[(i1 * other.rows + i2) * cols + (j1 * other.cols + j2)] =
                            a.mul(b);
                    }
                }
            }
        }
        let mut m = CycMatrix { rows, cols, entries };
        m.unify_conductor();
        m
    }

    pub fn transpose(&self) -> CycMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CycMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Exact inverse by Gaussian elimination.
    pub fn inverse(&self) -> Result<CycMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<CycNum>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<CycNum>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { CycNum::one() } else { CycNum::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::NotInvertible)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inverse().map_err(|_| Error::NotInvertible)?;
            for j in 0..n {
                a[col][j] = a[col][j].mul(&p);
                inv[col][j] = inv[col][j].mul(&p);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                    inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                }
            }
        }
        let entries = inv.into_iter().flatten().collect();
        CycMatrix::new(n, n, entries)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    /// Monomial decomposition: if every column has exactly one nonzero entry
    /// (and so does every row), returns `(perm, phases)` with
    /// `self[perm[c], c] = phases[c]` and all other entries zero.
    pub fn monomial_parts(&self) -> Option<(Vec<usize>, Vec<CycNum>)> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut perm = vec![usize::MAX; n];
        let mut phases = vec![CycNum::zero(); n];
        let mut row_used = vec![false; n];
        for c in 0..n {
            let mut hit = None;
            for r in 0..n {
                if !self.get(r, c).is_zero() {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some(r);
                }
            }
            let r = hit?;
            if row_used[r] {
                return None;
            }
            row_used[r] = true;
            perm[c] = r;
            phases[c] = self.get(r, c).clone();
        }
        Some((perm, phases))
    }

    /// Canonical byte encoding; only meaningful among matrices sharing one
    /// conductor (all entries are kept at a common conductor internally).
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.entries.len() * 8);
        out.extend_from_slice(&(self.rows as u64).to_le_bytes());
        out.extend_from_slice(&(self.cols as u64).to_le_bytes());
        out.extend_from_slice(&self.conductor().to_le_bytes());
        for e in &self.entries {
            e.encode_into(&mut out);
        }
        out
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

// JSON form: {"rows": r, "cols": c, "entries": [...]}.
impl<'de> Deserialize<'de> for CycMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<CycNum>,
        }
        let raw = Raw::deserialize(deserializer)?;
        CycMatrix::new(raw.rows, raw.cols, raw.entries)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}
