//! Exact integer linear algebra: Smith and Hermite forms, kernels,
//! saturation, lattice indices and components of finite-index subgroups
//! of the torus.

mod sparse;

pub use sparse::SparseMatrix;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    Shape { rows: usize, cols: usize, got: usize },
    #[error("ragged rows: row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("generator {0} of the sublattice is not in the ambient lattice")]
    NotASubgroup(usize),
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LatticeError> {
        if entries.len() != rows * cols {
            return Err(LatticeError::Shape { rows, cols, got: entries.len() });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is used when there are no rows.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self, LatticeError> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(LatticeError::Ragged { row: i, len: r.len(), expected: cols });
            }
            entries.extend(r);
        }
        Ok(IntMatrix { rows: nrows, cols, entries })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(data, cols).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.cols != other.rows {
            return Err(LatticeError::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.rows, cols: cols.len(), entries }
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend_from_slice(self.row(i));
        }
        IntMatrix { rows: rows.len(), cols: self.cols, entries }
    }

    /// Determinant by fraction-free elimination; `None` for non-square input.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let mut a = self.to_rows();
        let (rank, det) = bareiss(&mut a, self.cols);
        Some(if rank == self.rows { det } else { BigInt::zero() })
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        bareiss(&mut a, self.cols).0
    }
}

/// Fraction-free Gaussian elimination in place. Returns the rank and, for a
/// full-rank square input, the determinant.
pub(crate) fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> (usize, BigInt) {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..m {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if sign < 0 { -prev } else { prev };
    (r, det)
}

/// U·A·V = diag(divisors) with U, V unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub divisors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn nonzero_divisors(&self) -> &[BigInt] {
        &self.divisors[..self.rank()]
    }
}

struct SmithWork {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl SmithWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_target -= q * row_src
    fn sub_row(&mut self, target: usize, src: usize, q: &BigInt) {
        let (t, s) = pair_mut(&mut self.a, target, src);
        for (x, y) in t.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
        if let Some(u) = &mut self.u {
            let (t, s) = pair_mut(u, target, src);
            for (x, y) in t.iter_mut().zip(s.iter()) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        }
    }

    /// col_target -= q * col_src
    fn sub_col(&mut self, target: usize, src: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[src].is_zero() {
                let d = q * &row[src];
                row[target] -= d;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v {
                if !row[src].is_zero() {
                    let d = q * &row[src];
                    row[target] -= d;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }
}

fn pair_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn smith_core(a: Vec<Vec<BigInt>>, cols: usize, track: bool) -> SmithWork {
    let m = a.len();
    let n = cols;
    let mut w = SmithWork {
        a,
        u: track.then(|| identity_rows(m)),
        v: track.then(|| identity_rows(n)),
    };
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &w.a[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return w;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.sub_row(i, t, &q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.sub_col(j, t, &q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let pivot = w.a[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => w.sub_row(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    w
}

fn rows_to_matrix(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
    IntMatrix::from_rows(rows, cols).expect("rectangular by construction")
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let w = smith_core(a.to_rows(), a.cols, true);
    let divisors = (0..a.rows.min(a.cols)).map(|i| w.a[i][i].clone()).collect();
    SmithDecomposition {
        u: rows_to_matrix(w.u.unwrap(), a.rows),
        v: rows_to_matrix(w.v.unwrap(), a.cols),
        divisors,
    }
}

/// Nonzero invariant factors only, without transformation matrices.
pub fn smith_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let w = smith_core(a.to_rows(), a.cols, false);
    (0..a.rows.min(a.cols))
        .map(|i| w.a[i][i].clone())
        .filter(|d| !d.is_zero())
        .collect()
}

/// Row-style Hermite normal form; zero rows are dropped.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = best else {
                break;
            };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if !rows[i][c].is_zero() {
                    let q = rows[i][c].div_floor(&rows[r][c]);
                    let (t, s) = pair_mut(&mut rows, i, r);
                    for (x, y) in t.iter_mut().zip(s.iter()) {
                        *x -= &q * y;
                    }
                    done &= rows[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in &mut rows[r] {
                *x = -std::mem::take(x);
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                let (t, s) = pair_mut(&mut rows, i, r);
                for (x, y) in t.iter_mut().zip(s.iter()) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// A subgroup of ℤ^n, stored by its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ambient_dim: usize,
    generators: Vec<Vec<BigInt>>,
}

/// Index of a sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            LatticeIndex::Finite(n) => Some(n),
            LatticeIndex::Infinite => None,
        }
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

impl LatticeBasis {
    /// The subgroup generated by `generators` (any generating set).
    pub fn span(ambient_dim: usize, generators: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        for (i, g) in generators.iter().enumerate() {
            if g.len() != ambient_dim {
                return Err(LatticeError::Ragged { row: i, len: g.len(), expected: ambient_dim });
            }
        }
        Ok(LatticeBasis { ambient_dim, generators: hermite_rows(generators, ambient_dim) })
    }

    pub fn span_i64(ambient_dim: usize, generators: &[&[i64]]) -> Result<Self, LatticeError> {
        let g = generators
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::span(ambient_dim, g)
    }

    pub fn full(ambient_dim: usize) -> Self {
        LatticeBasis { ambient_dim, generators: identity_rows(ambient_dim) }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        LatticeBasis { ambient_dim, generators: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Generators as the rows of a matrix.
    pub fn as_matrix(&self) -> IntMatrix {
        rows_to_matrix(self.generators.clone(), self.ambient_dim)
    }

    /// Integer coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let c = g.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            let (q, r) = residual[c].div_rem(&g[c]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, y) in residual.iter_mut().zip(g) {
                    *x -= &q * y;
                }
            }
            coords.push(q);
        }
        residual.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }
}

pub fn kernel_lattice(a: &IntMatrix) -> LatticeBasis {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let gens = (r..a.cols).map(|j| snf.v.column(j)).collect();
    LatticeBasis::span(a.cols, gens).expect("kernel generators have ambient length")
}

pub fn saturate(l: &LatticeBasis) -> LatticeBasis {
    let orth = kernel_lattice(&l.as_matrix());
    kernel_lattice(&orth.as_matrix())
}

/// Product of the nonzero invariant factors: |Tors(ℤ^rows / colspan A)|.
pub fn torsion_order(a: &IntMatrix) -> BigInt {
    smith_divisors(a).into_iter().product()
}

pub fn lattice_index(sub: &LatticeBasis, ambient: &LatticeBasis) -> Result<LatticeIndex, LatticeError> {
    if sub.ambient_dim != ambient.ambient_dim {
        return Err(LatticeError::DimensionMismatch { left: sub.ambient_dim, right: ambient.ambient_dim });
    }
    let mut coords = Vec::with_capacity(sub.rank());
    for (i, g) in sub.generators.iter().enumerate() {
        coords.push(ambient.coordinates(g).ok_or(LatticeError::NotASubgroup(i))?);
    }
    if sub.rank() != ambient.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    let m = rows_to_matrix(coords, ambient.rank());
    let det = m.determinant().expect("square coordinate matrix");
    Ok(LatticeIndex::Finite(det.abs()))
}

/// Reduces a rational number into [0, 1).
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Labels the connected components of {x ∈ (ℝ/ℤ)^d : a·x ∈ ℤ for every row a of A}.
#[derive(Clone, Debug)]
pub struct ComponentIndexer {
    a: IntMatrix,
    u_top: Vec<Vec<BigInt>>,
    divisors: Vec<BigInt>,
    v: IntMatrix,
}

impl ComponentIndexer {
    pub fn new(a: &IntMatrix) -> Self {
        let snf = smith_normal_form(a);
        let r = snf.rank();
        ComponentIndexer {
            a: a.clone(),
            u_top: (0..r).map(|i| snf.u.row(i).to_vec()).collect(),
            divisors: snf.divisors[..r].to_vec(),
            v: snf.v,
        }
    }

    pub fn count(&self) -> BigInt {
        self.divisors.iter().product()
    }

    /// Component label of a point, or `None` if the point is not in the subgroup.
    pub fn key(&self, x: &[BigRational]) -> Option<Vec<BigInt>> {
        let d = self.a.cols();
        assert_eq!(x.len(), d, "point dimension mismatch");
        let mut ax = Vec::with_capacity(self.a.rows());
        for i in 0..self.a.rows() {
            let s: BigRational = self.a.row(i).iter().zip(x).map(|(c, y)| y * c).sum();
            if !s.is_integer() {
                return None;
            }
            ax.push(s.to_integer());
        }
        Some(
            self.u_top
                .iter()
                .zip(&self.divisors)
                .map(|(u, dv)| {
                    let s: BigInt = u.iter().zip(&ax).map(|(a, b)| a * b).sum();
                    s.mod_floor(dv)
                })
                .collect(),
        )
    }

    /// One point per component, reduced into [0,1)^d and sorted.
    pub fn representatives(&self) -> Vec<Vec<BigRational>> {
        let d = self.a.cols();
        let r = self.divisors.len();
        let mut out = Vec::new();
        let mut digits = vec![BigInt::zero(); r];
        loop {
            let x: Vec<BigRational> = (0..d)
                .map(|i| {
                    let s: BigRational = (0..r)
                        .map(|k| {
                            BigRational::new(self.v.get(i, k) * &digits[k], self.divisors[k].clone())
                        })
                        .sum();
                    frac(&s)
                })
                .collect();
            out.push(x);
            let mut k = r;
            loop {
                if k == 0 {
                    out.sort();
                    return out;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < self.divisors[k] {
                    break;
                }
                digits[k] = BigInt::zero();
            }
        }
    }
}

pub fn component_representatives(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    ComponentIndexer::new(a).representatives()
}

/// Formats a rational vector as "(a,b/c,...)".
pub fn format_point(x: &[BigRational]) -> String {
    let parts: Vec<String> = x.iter().map(|q| q.to_string()).collect();
    format!("({})", parts.join(","))
}
