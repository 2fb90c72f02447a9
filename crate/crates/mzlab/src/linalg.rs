//! Exact linear algebra over the scalar field.
//!
//! Two tools live here: a dense matrix with Gauss-Jordan elimination,
//! and a sparse echelonized span keyed by monomial exponent vectors,
//! which tracks how each echelon row decomposes over the inserted
//! generators so that action matrices can be read off exactly.

use std::collections::BTreeMap;

use crate::rings::{FieldChar, MultiIndex, Scalar};

/// Dense row-major matrix over exact scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    n_rows: usize,
    n_cols: usize,
    ch: FieldChar,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(n_rows: usize, n_cols: usize, ch: FieldChar) -> Self {
        Mat {
            n_rows,
            n_cols,
            ch,
            data: vec![Scalar::zero(ch); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize, ch: FieldChar) -> Self {
        let mut m = Self::zero(n, n, ch);
        for i in 0..n {
            m.set(i, i, Scalar::one(ch));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, ch: FieldChar) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            assert_eq!(r.len(), n_cols, "ragged rows");
            for s in &r {
                assert_eq!(s.characteristic(), ch, "entry characteristic mismatch");
            }
            data.extend(r);
        }
        Mat {
            n_rows,
            n_cols,
            ch,
            data,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn characteristic(&self) -> FieldChar {
        self.ch
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.n_cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.sub(b);
        }
        out
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(s);
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.n_cols, other.n_rows, "dimension mismatch");
        let mut out = Mat::zero(self.n_rows, other.n_cols, self.ch);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.n_cols {
                    let v = out.get(i, j).add(&a.mul(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.n_cols, v.len());
        (0..self.n_rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.ch);
                for (j, vj) in v.iter().enumerate() {
                    acc = acc.add(&self.get(i, j).mul(vj));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.n_rows, self.ch);
        let mut sq = self.clone();
        let mut n = e;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            n >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut acc = Scalar::zero(self.ch);
        for i in 0..self.n_rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// Gauss-Jordan inverse; None if singular.
    pub fn invert(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.n_rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n, self.ch);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.get(pivot, j).clone();
                    a.set(pivot, j, a.get(col, j).clone());
                    a.set(col, j, tmp);
                    let tmp = inv.get(pivot, j).clone();
                    inv.set(pivot, j, inv.get(col, j).clone());
                    inv.set(col, j, tmp);
                }
            }
            let scale = a.get(col, col).inv().expect("pivot nonzero");
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&scale));
                inv.set(col, j, inv.get(col, j).mul(&scale));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j).sub(&factor.mul(a.get(col, j)));
                    a.set(r, j, v);
                    let v = inv.get(r, j).sub(&factor.mul(inv.get(col, j)));
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.n_cols {
            if row == a.n_rows {
                break;
            }
            let Some(p) = (row..a.n_rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..a.n_cols {
                    let tmp = a.get(p, j).clone();
                    a.set(p, j, a.get(row, j).clone());
                    a.set(row, j, tmp);
                }
            }
            let scale = a.get(row, col).inv().expect("pivot nonzero");
            for j in 0..a.n_cols {
                a.set(row, j, a.get(row, j).mul(&scale));
            }
            for r in 0..a.n_rows {
                if r == row || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..a.n_cols {
                    let v = a.get(r, j).sub(&factor.mul(a.get(row, j)));
                    a.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Echelonized kernel basis (each vector has a 1 in its free column).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.n_cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(self.ch); self.n_cols];
            v[free] = Scalar::one(self.ch);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = r.get(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of Ax = b with free variables set to zero;
    /// None if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.n_rows);
        let mut aug = Mat::zero(self.n_rows, self.n_cols + 1, self.ch);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.n_cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.n_cols, bi.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.n_cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Scalar::zero(self.ch); self.n_cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.n_cols).clone();
        }
        Some(x)
    }
}

/// Inverse of a square matrix given as rows; None if singular.
pub fn invert(rows: &[Vec<Scalar>], ch: FieldChar) -> Option<Vec<Vec<Scalar>>> {
    let m = Mat::from_rows(rows.to_vec(), ch);
    let inv = m.invert()?;
    Some(
        (0..inv.n_rows())
            .map(|i| (0..inv.n_cols()).map(|j| inv.get(i, j).clone()).collect())
            .collect(),
    )
}

pub type SparseVec = BTreeMap<MultiIndex, Scalar>;

fn axpy(target: &mut SparseVec, factor: &Scalar, source: &SparseVec, ch: FieldChar) {
    for (k, v) in source {
        let delta = factor.mul(v);
        let entry = target.entry(k.clone()).or_insert_with(|| Scalar::zero(ch));
        *entry = entry.add(&delta);
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// An echelonized span of sparse monomial-indexed vectors.
///
/// Every accepted generator is remembered; each echelon row carries its
/// expansion over the accepted generators, so `express` returns exact
/// coordinates with respect to the generators themselves.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    ch: FieldChar,
    rows: Vec<SparseVec>,
    pivot_map: BTreeMap<MultiIndex, usize>,
    combos: Vec<Vec<Scalar>>,
    n_gens: usize,
}

impl SpanBasis {
    pub fn new(ch: FieldChar) -> Self {
        SpanBasis {
            ch,
            rows: Vec::new(),
            pivot_map: BTreeMap::new(),
            combos: Vec::new(),
            n_gens: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v against the echelon rows. Returns the residual and the
    /// multiplier applied to each row.
    fn reduce(&self, v: &SparseVec) -> (SparseVec, Vec<Scalar>) {
        let mut residual = v.clone();
        let mut used = vec![Scalar::zero(self.ch); self.rows.len()];
        loop {
            let hit = residual
                .keys()
                .find_map(|k| self.pivot_map.get(k).map(|&r| (k.clone(), r)));
            match hit {
                Some((key, r)) => {
                    let c = residual[&key].clone();
                    used[r] = used[r].add(&c);
                    axpy(&mut residual, &c.neg(), &self.rows[r], self.ch);
                }
                None => break,
            }
        }
        (residual, used)
    }

    /// Tries to adjoin v as a new generator. Returns true when v was
    /// independent of the current span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let (residual, used) = self.reduce(v);
        let Some(pivot) = residual.keys().next().cloned() else {
            return false;
        };
        // residual = v - sum used[r] * rows[r]; normalize to pivot 1
        let scale = residual[&pivot].inv().expect("pivot nonzero");
        let mut row = residual;
        for val in row.values_mut() {
            *val = val.mul(&scale);
        }
        let mut combo = vec![Scalar::zero(self.ch); self.n_gens + 1];
        combo[self.n_gens] = scale.clone();
        for (r, c) in used.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let factor = scale.mul(c).neg();
            for (j, old) in self.combos[r].iter().enumerate() {
                combo[j] = combo[j].add(&factor.mul(old));
            }
        }
        for c in self.combos.iter_mut() {
            c.push(Scalar::zero(self.ch));
        }
        self.pivot_map.insert(pivot, self.rows.len());
        self.rows.push(row);
        self.combos.push(combo);
        self.n_gens += 1;
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coordinates of v over the accepted generators, or None if v is
    /// outside the span.
    pub fn express(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let (residual, used) = self.reduce(v);
        if !residual.is_empty() {
            return None;
        }
        let mut coords = vec![Scalar::zero(self.ch); self.n_gens];
        for (r, c) in used.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, entry) in self.combos[r].iter().enumerate() {
                coords[j] = coords[j].add(&c.mul(entry));
            }
        }
        Some(coords)
    }
}
