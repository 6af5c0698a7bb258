use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{bareiss, smith_core, IntMatrix};

/// Sparse integer matrix with small entries, used for boundary maps and
/// ideal pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

type Row = Vec<(u32, i64)>;

struct Overflow;

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    /// Appends a row; entries are sorted, duplicates summed, zeros dropped.
    pub fn push_row(&mut self, mut entries: Vec<(u32, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut row: Row = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!((c as usize) < self.ncols, "column {c} out of range");
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|e| e.1 != 0);
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(u32, i64)] {
        &self.rows[i]
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                m.set(i, c as usize, BigInt::from(v));
            }
        }
        m
    }

    /// Product self · other as a sparse matrix.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows(), "dimension mismatch");
        let mut out = SparseMatrix::new(other.ncols);
        for row in &self.rows {
            let mut acc: Vec<(u32, i64)> = Vec::new();
            for &(k, a) in row {
                for &(j, b) in &other.rows[k as usize] {
                    acc.push((j, a * b));
                }
            }
            out.push_row(acc);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Nonzero invariant factors, in divisibility order.
    pub fn smith_divisors(&self) -> Vec<BigInt> {
        match Eliminator::new(self, false).run() {
            Ok((units, residual)) => {
                let mut out = vec![BigInt::one(); units];
                if !residual.is_empty() {
                    let cols = residual[0].len();
                    let w = smith_core(residual, cols, false);
                    let k = w.a.len().min(cols);
                    out.extend((0..k).map(|i| w.a[i][i].clone()).filter(|d| !d.is_zero()));
                }
                out
            }
            Err(Overflow) => super::smith_divisors(&self.to_dense()),
        }
    }

    /// Rank over the rationals.
    pub fn rank_rational(&self) -> usize {
        match Eliminator::new(self, true).run() {
            Ok((units, mut residual)) => {
                let cols = residual.first().map_or(0, |r| r.len());
                units + bareiss(&mut residual, cols).0
            }
            Err(Overflow) => self.to_dense().rank(),
        }
    }

    /// Rank over the field with `p` elements (`p` prime, below 2^31).
    pub fn rank_mod(&self, p: u64) -> usize {
        assert!((2..(1 << 31)).contains(&p), "modulus out of range");
        let mut pivots: std::collections::HashMap<u32, Vec<(u32, u64)>> = Default::default();
        let mut rank = 0;
        for row in &self.rows {
            let mut r: Vec<(u32, u64)> = row
                .iter()
                .map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64))
                .filter(|e| e.1 != 0)
                .collect();
            while let Some(&(lead, val)) = r.first() {
                match pivots.get(&lead) {
                    Some(prow) => {
                        r = axpy_mod(&r, prow, p - val, p);
                    }
                    None => {
                        let inv = inv_mod(val, p);
                        for e in &mut r {
                            e.1 = e.1 * inv % p;
                        }
                        pivots.insert(lead, r);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// Rank over ℚ (`characteristic` 0) or over 𝔽_p.
    pub fn rank(&self, characteristic: u64) -> usize {
        if characteristic == 0 {
            self.rank_rational()
        } else {
            self.rank_mod(characteristic)
        }
    }
}

fn axpy_mod(a: &[(u32, u64)], b: &[(u32, u64)], k: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        let (c, v) = if ca < cb {
            i += 1;
            (ca, a[i - 1].1)
        } else if cb < ca {
            j += 1;
            (cb, k * b[j - 1].1 % p)
        } else {
            i += 1;
            j += 1;
            (ca, (a[i - 1].1 + k * b[j - 1].1) % p)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Integral elimination on unit pivots; what cannot be eliminated is
/// returned densely.
struct Eliminator {
    rows: Vec<Row>,
    alive: Vec<bool>,
    col_rows: Vec<Vec<u32>>,
    col_count: Vec<u32>,
    normalize: bool,
}

impl Eliminator {
    fn new(m: &SparseMatrix, normalize: bool) -> Self {
        let mut col_rows = vec![Vec::new(); m.ncols];
        let mut col_count = vec![0u32; m.ncols];
        let mut rows = m.rows.clone();
        if normalize {
            for r in &mut rows {
                divide_content(r);
            }
        }
        for (i, r) in rows.iter().enumerate() {
            for &(c, _) in r {
                col_rows[c as usize].push(i as u32);
                col_count[c as usize] += 1;
            }
        }
        let alive = rows.iter().map(|r| !r.is_empty()).collect();
        Eliminator { rows, alive, col_rows, col_count, normalize }
    }

    fn run(mut self) -> Result<(usize, Vec<Vec<BigInt>>), Overflow> {
        let mut units = 0;
        loop {
            let mut order: Vec<usize> = (0..self.rows.len()).filter(|&i| self.alive[i]).collect();
            order.sort_by_key(|&i| self.rows[i].len());
            let mut progress = false;
            for r in order {
                if !self.alive[r] {
                    continue;
                }
                let pivot = self.rows[r]
                    .iter()
                    .filter(|e| e.1 == 1 || e.1 == -1)
                    .min_by_key(|e| self.col_count[e.0 as usize])
                    .copied();
                if let Some((c, s)) = pivot {
                    self.eliminate(r, c, s)?;
                    units += 1;
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        let mut used: Vec<u32> = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            if self.alive[i] {
                used.extend(r.iter().map(|e| e.0));
            }
        }
        used.sort_unstable();
        used.dedup();
        let residual = (0..self.rows.len())
            .filter(|&i| self.alive[i])
            .map(|i| {
                let mut dense = vec![BigInt::zero(); used.len()];
                for &(c, v) in &self.rows[i] {
                    let k = used.binary_search(&c).unwrap();
                    dense[k] = BigInt::from(v);
                }
                dense
            })
            .collect();
        Ok((units, residual))
    }

    fn set_row(&mut self, i: usize, new: Row) {
        for &(c, _) in &self.rows[i] {
            self.col_count[c as usize] -= 1;
        }
        for &(c, _) in &new {
            self.col_count[c as usize] += 1;
        }
        let old = std::mem::replace(&mut self.rows[i], new);
        let mut k = 0;
        for &(c, _) in &self.rows[i] {
            while k < old.len() && old[k].0 < c {
                k += 1;
            }
            if k >= old.len() || old[k].0 != c {
                self.col_rows[c as usize].push(i as u32);
            }
        }
        if self.rows[i].is_empty() {
            self.alive[i] = false;
        }
    }

    fn eliminate(&mut self, r: usize, c: u32, s: i64) -> Result<(), Overflow> {
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for &(cc, _) in &pivot_row {
            self.col_count[cc as usize] -= 1;
        }
        self.alive[r] = false;
        let mut targets = std::mem::take(&mut self.col_rows[c as usize]);
        targets.sort_unstable();
        targets.dedup();
        for t in targets {
            let t = t as usize;
            if !self.alive[t] {
                continue;
            }
            let Ok(k) = self.rows[t].binary_search_by_key(&c, |e| e.0) else {
                continue;
            };
            let factor = self.rows[t][k].1 * s;
            let mut new = sub_scaled(&self.rows[t], &pivot_row, factor).ok_or(Overflow)?;
            if self.normalize {
                divide_content(&mut new);
            }
            self.set_row(t, new);
        }
        Ok(())
    }
}

/// a − k·b
fn sub_scaled(a: &[(u32, i64)], b: &[(u32, i64)], k: i64) -> Option<Row> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        let (c, v) = if ca < cb {
            i += 1;
            (ca, a[i - 1].1)
        } else {
            let kb = b[j].1.checked_mul(k)?;
            j += 1;
            if cb < ca {
                (cb, kb.checked_neg()?)
            } else {
                i += 1;
                (ca, a[i - 1].1.checked_sub(kb)?)
            }
        };
        if v != 0 {
            if v.unsigned_abs() > (1u64 << 40) {
                return None;
            }
            out.push((c, v));
        }
    }
    Some(out)
}

fn divide_content(r: &mut Row) {
    let g = r.iter().fold(0i64, |g, e| g.gcd(&e.1));
    if g > 1 {
        for e in r {
            e.1 /= g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::new(rows[0].len());
        for r in rows {
            m.push_row(r.iter().enumerate().map(|(j, &v)| (j as u32, v)).collect());
        }
        m
    }

    #[test]
    fn divisors_match_dense() {
        let rows: &[&[i64]] = &[&[1, 1, 1, 3], &[0, 5, 0, 5], &[0, 0, 5, 5]];
        let m = from_dense(rows);
        let want: Vec<BigInt> = [1, 5, 5].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(m.smith_divisors(), want);
        assert_eq!(m.rank_rational(), 3);
        assert_eq!(m.rank_mod(5), 1);
        assert_eq!(m.rank_mod(2), 3);
    }

    #[test]
    fn rank_deficient() {
        let m = from_dense(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 0], &[3, 1, 0]]);
        assert_eq!(m.rank_rational(), 2);
        assert_eq!(m.rank_mod(2), 2);
        let d = m.smith_divisors();
        assert_eq!(d, vec![BigInt::one(), BigInt::one()]);
    }
}
