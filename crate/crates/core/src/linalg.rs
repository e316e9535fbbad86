//! Exact dense linear algebra.
//!
//! Integer matrices (boundary and Čech differentials) have their rank taken
//! either over `Q` by fraction-free Bareiss elimination or over `GF(p)` by
//! modular elimination. The generic [`DenseMatrix`] routines work over any
//! [`Field`] and back the induced-map computations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::{Field, FieldSpec, PrimeField};

/// A dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn to_field<F: Field>(&self, f: &F) -> DenseMatrix<F::Elem> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f.from_i64(v)).collect(),
        }
    }
}

/// Rank over the given field. Never touches floating point.
pub fn exact_rank(m: &IntMatrix, field: FieldSpec) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    match field {
        FieldSpec::Rationals => bareiss_rank_i128(m).unwrap_or_else(|| bareiss_rank_big(m)),
        FieldSpec::PrimeField(p) => modular_rank(m, p),
    }
}

/// Fraction-free elimination in `i128`; `None` if an intermediate overflows.
fn bareiss_rank_i128(m: &IntMatrix) -> Option<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<i128> = m.data.iter().map(|&v| v as i128).collect();
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + c];
        for r in rank + 1..rows {
            let lead = a[r * cols + c];
            for j in c + 1..cols {
                let x = pivot.checked_mul(a[r * cols + j])?;
                let y = lead.checked_mul(a[rank * cols + j])?;
                let num = x.checked_sub(y)?;
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                a[r * cols + j] = num / prev;
            }
            a[r * cols + c] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigInt> = m.data.iter().map(|&v| BigInt::from(v)).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for r in rank + 1..rows {
            let lead = a[r * cols + c].clone();
            for j in c + 1..cols {
                let num = &pivot * &a[r * cols + j] - &lead * &a[rank * cols + j];
                a[r * cols + j] = num / &prev;
            }
            a[r * cols + c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn modular_rank(m: &IntMatrix, p: u64) -> usize {
    let f = PrimeField::new(p);
    m.to_field(&f).rank(&f)
}

/// A dense row-major matrix over a generic field.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> DenseMatrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let mut m = DenseMatrix::filled(rows, columns.len(), zero);
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v.clone();
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        let cols = self.cols;
        self.data[r * cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
}

impl<E: Clone + PartialEq> DenseMatrix<E> {
    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place<F: Field<Elem = E>>(&mut self, f: &F) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..cols {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.clone().rref_in_place(f).len()
    }

    /// A basis of the right null space `{x : A x = 0}`.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(f.zero(), |acc, c| f.add(&acc, &f.mul(self.get(r, c), &v[c])))
            })
            .collect()
    }

    pub fn mul_mat<F: Field<Elem = E>>(&self, f: &F, other: &DenseMatrix<E>) -> DenseMatrix<E> {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = DenseMatrix::filled(self.rows, other.cols, f.zero());
        for i in 0..self.rows {
            for k in 0..self.cols {
                if f.is_zero(self.get(i, k)) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(self.get(i, k), other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }
}

/// Coefficients `x` with `sum_k x_k columns[k] = target`, if any.
pub fn solve_in_span<F: Field>(
    f: &F,
    dim: usize,
    columns: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let k = columns.len();
    let mut aug = DenseMatrix::filled(dim, k + 1, f.zero());
    for (c, col) in columns.iter().enumerate() {
        for r in 0..dim {
            aug.set(r, c, col[r].clone());
        }
    }
    for r in 0..dim {
        aug.set(r, k, target[r].clone());
    }
    let pivots = aug.rref_in_place(f);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![f.zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(row, k).clone();
    }
    Some(x)
}

/// Indices of those `candidates` that extend the span of `base`, chosen greedily in order.
pub fn extend_basis<F: Field>(
    f: &F,
    dim: usize,
    base: &[Vec<F::Elem>],
    candidates: &[Vec<F::Elem>],
) -> Vec<usize> {
    let mut current: Vec<Vec<F::Elem>> = base.to_vec();
    let mut rank = DenseMatrix::from_columns(dim, &current, f.zero()).rank(f);
    let mut chosen = Vec::new();
    for (idx, cand) in candidates.iter().enumerate() {
        current.push(cand.clone());
        let r = DenseMatrix::from_columns(dim, &current, f.zero()).rank(f);
        if r > rank {
            rank = r;
            chosen.push(idx);
        } else {
            current.pop();
        }
    }
    chosen
}
