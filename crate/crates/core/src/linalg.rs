//! Exact linear algebra over the scalar fields: dense matrices, reduced
//! row-echelon form, solving, nullspaces, and echelonized subspaces.
//!
//! Everything here is deterministic — pivots are chosen by first-nonzero
//! scan and subspace bases are kept in reduced row-echelon form — so two
//! runs over the same inputs produce identical bases and identical reports.

use crate::scalars::{Field, Scalar};
use std::fmt;

/// A dense matrix over a [`Field`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
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
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    if !self.get(i, j).is_zero() && !v[j].is_zero() {
                        acc = &acc + &(self.get(i, j) * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row-echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = self.get(row, col).inverse().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &(&factor * self.get(row, c));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// A canonical basis of the right nullspace `{x : Mx = 0}`: one vector
    /// per free column, with 1 at the free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `Mx = b`, if consistent, with free variables set to 0.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// The inverse matrix, when it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of coordinate space `K^ambient`, stored as a reduced
/// row-echelon basis. The representation is canonical: two subspaces are
/// equal as sets iff their `Subspace` values are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    /// RREF rows with strictly increasing pivot columns.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![field.zero(); ambient];
            v[i] = field.one();
            s.insert(&v);
        }
        s
    }

    pub fn from_vectors(field: &Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The canonical representative of `v` modulo this subspace: `v` with
    /// every pivot coordinate eliminated.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if out[pc].is_zero() {
                continue;
            }
            let factor = out[pc].clone();
            for c in 0..self.ambient {
                if !row[c].is_zero() {
                    out[c] = &out[c] - &(&factor * &row[c]);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Insert a vector, keeping the basis in RREF; returns true when the
    /// dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inverse().expect("leading entry nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // Eliminate the new pivot column from existing rows.
        for row in self.rows.iter_mut() {
            if !row[pc].is_zero() {
                let factor = row[pc].clone();
                for c in 0..v.len() {
                    if !v[c].is_zero() {
                        row[c] = &row[c] - &(&factor * &v[c]);
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of `v` in this RREF basis, if `v` lies in the subspace.
    /// For RREF rows the coordinate at row k is just `v[pivot_k]`.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }

    /// Indices of non-pivot coordinates: the lexicographically first set of
    /// standard basis vectors completing this subspace to the full space.
    pub fn complement_indices(&self) -> Vec<usize> {
        let pivot_set: std::collections::BTreeSet<usize> = self.pivots.iter().copied().collect();
        (0..self.ambient).filter(|i| !pivot_set.contains(i)).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r);
        }
        out
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Zassenhaus-free route: x in both iff x = A^T a = B^T b; solve the
        // stacked system [A^T | -B^T] and read off the A-part images.
        let f = &self.field;
        let n = self.ambient;
        let da = self.dim();
        let db = other.dim();
        let mut m = Matrix::zeros(f, n, da + db);
        for (j, row) in self.rows.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, row[i].clone());
            }
        }
        for (j, row) in other.rows.iter().enumerate() {
            for i in 0..n {
                m.set(i, da + j, -&row[i]);
            }
        }
        let mut out = Subspace::zero(f, n);
        for sol in m.nullspace() {
            let mut v = vec![f.zero(); n];
            for (j, row) in self.rows.iter().enumerate() {
                if !sol[j].is_zero() {
                    for i in 0..n {
                        v[i] = &v[i] + &(&sol[j] * &row[i]);
                    }
                }
            }
            out.insert(&v);
        }
        out
    }
}

/// Solutions `λ` of the semilinear system `Σ_k λ_k^(p^r) · columns[k] = 0`.
///
/// Each coordinate row is first multiplied through by the lcm of its
/// denominators (same solution set), making every coefficient polynomial.
/// Writing those polynomials in the module basis `{t^e : e_i < p^r}` over
/// the subfield of p^r-th powers turns each basis component into a plain
/// linear condition on the `λ_k` themselves, because
/// `Σ_k λ_k^(p^r) c_k^(p^r) = (Σ_k λ_k c_k)^(p^r)` and the power map is
/// injective. The union of those conditions is solved exactly.
pub fn semilinear_nullspace(field: &Field, columns: &[Vec<Scalar>], r: u32) -> Subspace {
    assert!(r >= 1, "semilinear systems need r >= 1");
    let ncols = columns.len();
    if ncols == 0 {
        return Subspace::zero(field, 0);
    }
    let height = columns[0].len();
    assert!(columns.iter().all(|c| c.len() == height));
    let mut rows = Vec::new();
    for j in 0..height {
        let coord_row: Vec<Scalar> = columns.iter().map(|c| c[j].clone()).collect();
        if coord_row.iter().all(Scalar::is_zero) {
            continue;
        }
        let cleared = crate::scalars::clear_denominators(field, &coord_row);
        let maps: Vec<_> = cleared
            .iter()
            .map(|s| {
                s.subfield_coords(r)
                    .expect("cleared coefficients are polynomial")
            })
            .collect();
        let mut keys = std::collections::BTreeSet::new();
        for m in &maps {
            keys.extend(m.keys().cloned());
        }
        for e in keys {
            rows.push(
                maps.iter()
                    .map(|m| m.get(&e).cloned().unwrap_or_else(|| field.zero()))
                    .collect::<Vec<_>>(),
            );
        }
    }
    if rows.is_empty() {
        return Subspace::full(field, ncols);
    }
    let m = Matrix::from_rows(field, rows);
    Subspace::from_vectors(field, ncols, &m.nullspace())
}
