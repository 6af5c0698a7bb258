//! Finite posets, their rank and Möbius functions, order complexes and the
//! f/h/χ polynomials of simplicial posets.

mod complex;

pub(crate) use complex::is_subset;

pub use complex::{ComplexError, ComplexJson, SimplicialComplexData};

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Polynomial1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("cover relation contains a cycle through {0:?}")]
    CycleDetected(String),
    #[error("cover {0:?} < {1:?} is implied by transitivity")]
    RedundantCover(String, String),
    #[error("{0:?} and {1:?} are not comparable")]
    NotComparable(String, String),
    #[error("poset is not simplicial (witness {0:?})")]
    NotSimplicial(String),
    #[error("poset is not graded")]
    NotGraded,
    #[error("poset has no bottom element")]
    NotBoundedBelow,
}

/// Poset JSON: `{"elements": [...], "covers": [[x, y], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub elements: usize,
    pub bottom: Option<String>,
    pub top: Option<String>,
    pub graded: bool,
    pub length: isize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub reduced_euler_lower: i64,
    pub chi_at_one: BigInt,
    pub lower_holds: bool,
    pub reduced_euler_proper: Option<i64>,
    pub chi_at_zero: Option<BigInt>,
    pub upper_holds: Option<bool>,
}

impl EulerReport {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds.unwrap_or(true)
    }
}

/// A finite poset given by its Hasse diagram. Elements are addressed by
/// index; names are opaque strings.
#[derive(Debug)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    order: Vec<usize>,
    position: Vec<usize>,
    height: Vec<usize>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    bottom: Option<usize>,
    top: Option<usize>,
    mobius_rows: Vec<OnceLock<Vec<(usize, i64)>>>,
}

impl Clone for FinitePoset {
    fn clone(&self) -> Self {
        let covers = self.covers();
        FinitePoset::from_indexed(self.names.clone(), covers).expect("valid poset")
    }
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.covers() == other.covers()
    }
}

impl FinitePoset {
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self, PosetError> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(n.clone()));
            }
        }
        let mut idx_covers = Vec::with_capacity(covers.len());
        for (x, y) in covers {
            let lookup = |s: &S| {
                index
                    .get(s.as_ref())
                    .copied()
                    .ok_or_else(|| PosetError::UnknownElement(s.as_ref().to_string()))
            };
            idx_covers.push((lookup(x)?, lookup(y)?));
        }
        Self::from_indexed(names, idx_covers)
    }

    pub fn from_json(json: &PosetJson) -> Result<Self, PosetError> {
        Self::new(&json.elements, &json.covers)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.names.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(x, y)| (self.names[x].clone(), self.names[y].clone()))
                .collect(),
        }
    }

    /// Builds the poset from a cover list over indexed elements.
    pub fn from_indexed(names: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Self, PosetError> {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (i, s) in names.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(s.clone()));
            }
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(x, y) in &covers {
            if x == y {
                return Err(PosetError::CycleDetected(names[x].clone()));
            }
            if up[x].contains(&y) {
                return Err(PosetError::RedundantCover(names[x].clone(), names[y].clone()));
            }
            up[x].push(y);
            down[y].push(x);
        }
        for l in up.iter_mut().chain(down.iter_mut()) {
            l.sort_unstable();
        }
        let mut indeg: Vec<usize> = down.iter().map(|d| d.len()).collect();
        let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in up[x].iter().rev() {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if order.len() < n {
            let bad = (0..n).find(|&i| indeg[i] > 0).unwrap();
            return Err(PosetError::CycleDetected(names[bad].clone()));
        }
        let mut position = vec![0; n];
        for (k, &x) in order.iter().enumerate() {
            position[x] = k;
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        let mut height = vec![0usize; n];
        for &x in &order {
            let mut b = FixedBitSet::with_capacity(n);
            b.insert(x);
            for &z in &down[x] {
                b.union_with(&below[z]);
                height[x] = height[x].max(height[z] + 1);
            }
            below[x] = b;
        }
        for y in 0..n {
            for &x in &down[y] {
                if down[y].iter().any(|&z| z != x && below[z].contains(x)) {
                    return Err(PosetError::RedundantCover(names[x].clone(), names[y].clone()));
                }
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut a = FixedBitSet::with_capacity(n);
            a.insert(x);
            for &z in &up[x] {
                a.union_with(&above[z]);
            }
            above[x] = a;
        }
        let minimal: Vec<usize> = (0..n).filter(|&i| down[i].is_empty()).collect();
        let maximal: Vec<usize> = (0..n).filter(|&i| up[i].is_empty()).collect();
        let bottom = (minimal.len() == 1).then(|| minimal[0]);
        let top = (maximal.len() == 1).then(|| maximal[0]);
        let p = FinitePoset {
            names,
            index,
            up,
            down,
            order,
            position,
            height,
            below,
            above,
            bottom,
            top,
            mobius_rows: (0..n).map(|_| OnceLock::new()).collect(),
        };
        if let Some(b) = bottom {
            p.mobius_row(b);
        }
        Ok(p)
    }

    /// Builds a poset from an order predicate by transitive reduction.
    pub fn from_order(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        let n = names.len();
        let mut lt = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in 0..n {
                if x != y && leq(x, y) {
                    if leq(y, x) {
                        return Err(PosetError::CycleDetected(names[x].clone()));
                    }
                    lt[x].insert(y);
                }
            }
        }
        let mut covers = Vec::new();
        for x in 0..n {
            for y in lt[x].ones() {
                let between = lt[x].ones().any(|z| z != y && lt[z].contains(y));
                if !between {
                    covers.push((x, y));
                }
            }
        }
        Self::from_indexed(names, covers)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn lookup(&self, name: &str) -> Result<usize, PosetError> {
        self.index_of(name).ok_or_else(|| PosetError::UnknownElement(name.to_string()))
    }

    /// Cover pairs sorted by (lower, upper) index.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|x| self.up[x].iter().map(move |&y| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// A linear extension.
    pub fn linear_extension(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// {y : y ≤ x}
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.below[x]
    }

    /// {y : y ≥ x}
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.above[x]
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    /// ℓ(P_{≤x})
    pub fn rank(&self, x: usize) -> usize {
        self.height[x]
    }

    /// ℓ(P); −1 for the empty poset.
    pub fn length(&self) -> isize {
        self.height.iter().max().map_or(-1, |&h| h as isize)
    }

    /// Every cover raises the rank by one.
    pub fn is_graded(&self) -> bool {
        (0..self.len()).all(|y| self.down[y].iter().all(|&x| self.height[x] + 1 == self.height[y]))
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            elements: self.len(),
            bottom: self.bottom.map(|b| self.names[b].clone()),
            top: self.top.map(|t| self.names[t].clone()),
            graded: self.is_graded(),
            length: self.length(),
        }
    }

    /// True if x and y have a common upper bound.
    pub fn bounded_above_pair(&self, x: usize, y: usize) -> bool {
        !self.above[x].is_disjoint(&self.above[y])
    }

    /// Checks that every lower interval is Boolean; returns a failing element.
    pub fn simplicial_witness(&self) -> Option<usize> {
        let Some(b) = self.bottom else {
            return self.minimal_elements().get(1).copied().or(Some(0)).filter(|_| !self.is_empty());
        };
        self.order.iter().find(|&&p| !self.lower_interval_is_boolean(b, p)).copied()
    }

    pub fn is_simplicial(&self) -> bool {
        !self.is_empty() && self.simplicial_witness().is_none()
    }

    fn lower_interval_is_boolean(&self, bottom: usize, p: usize) -> bool {
        let elems: Vec<usize> = self.below[p].ones().collect();
        let atoms: Vec<usize> = elems
            .iter()
            .copied()
            .filter(|&z| self.down[z].len() == 1 && self.down[z][0] == bottom)
            .collect();
        let r = atoms.len();
        if r >= 32 || elems.len() != 1usize << r || self.height[p] != r {
            return false;
        }
        let mut seen = std::collections::HashSet::with_capacity(elems.len());
        let mut masks = HashMap::with_capacity(elems.len());
        for &z in &elems {
            let mut m = 0u32;
            for (k, &a) in atoms.iter().enumerate() {
                if self.leq(a, z) {
                    m |= 1 << k;
                }
            }
            if m.count_ones() as usize != self.height[z] || !seen.insert(m) {
                return false;
            }
            masks.insert(z, m);
        }
        for &z in &elems {
            for &w in &self.up[z] {
                if !self.leq(w, p) {
                    continue;
                }
                let (mz, mw) = (masks[&z], masks[&w]);
                if mz & !mw != 0 {
                    return false;
                }
            }
        }
        true
    }

    fn mobius_row(&self, x: usize) -> &Vec<(usize, i64)> {
        self.mobius_rows[x].get_or_init(|| {
            let mut mu: HashMap<usize, i64> = HashMap::new();
            let mut ups: Vec<usize> = self.above[x].ones().collect();
            ups.sort_unstable_by_key(|&z| self.position[z]);
            for &z in &ups {
                let v = if z == x {
                    1
                } else {
                    -self.below[z]
                        .ones()
                        .filter(|&w| w != z)
                        .map(|w| mu.get(&w).copied().unwrap_or(0))
                        .sum::<i64>()
                };
                mu.insert(z, v);
            }
            let mut row: Vec<(usize, i64)> = mu.into_iter().collect();
            row.sort_unstable();
            row
        })
    }

    pub fn mobius_index(&self, x: usize, y: usize) -> Option<i64> {
        if !self.leq(x, y) {
            return None;
        }
        let row = self.mobius_row(x);
        row.binary_search_by_key(&y, |e| e.0).ok().map(|k| row[k].1)
    }

    pub fn mobius(&self, x: &str, y: &str) -> Result<i64, PosetError> {
        let (xi, yi) = (self.lookup(x)?, self.lookup(y)?);
        self.mobius_index(xi, yi)
            .ok_or_else(|| PosetError::NotComparable(x.to_string(), y.to_string()))
    }

    /// f_{-1}, f_0, …, f_{d-1}
    pub fn f_vector(&self) -> Result<Vec<u64>, PosetError> {
        if let Some(w) = self.simplicial_witness() {
            return Err(PosetError::NotSimplicial(self.names[w].clone()));
        }
        Ok(self.rank_counts())
    }

    /// Number of elements of each rank.
    pub fn rank_counts(&self) -> Vec<u64> {
        let d = self.length().max(0) as usize;
        let mut f = vec![0u64; d + 1];
        for &h in &self.height {
            f[h] += 1;
        }
        f
    }

    pub fn h_polynomial(&self) -> Result<Polynomial1, PosetError> {
        let f = self.f_vector()?;
        Ok(h_from_f(&f))
    }

    pub fn characteristic_polynomial(&self) -> Result<Polynomial1, PosetError> {
        let b = self.bottom.ok_or(PosetError::NotBoundedBelow)?;
        if !self.is_graded() {
            return Err(PosetError::NotGraded);
        }
        let d = self.length() as usize;
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for &(x, mu) in self.mobius_row(b) {
            coeffs[d - self.height[x]] += mu;
        }
        Ok(Polynomial1::new(coeffs))
    }

    /// All nonempty chains, each listed bottom-up.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for &x in &self.order {
            stack.push(x);
            self.extend_chains(&mut stack, &mut out);
            stack.pop();
        }
        out
    }

    fn extend_chains(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(stack.clone());
        let last = *stack.last().unwrap();
        for y in self.above[last].ones() {
            if y != last {
                stack.push(y);
                self.extend_chains(stack, out);
                stack.pop();
            }
        }
    }

    /// Number of chains of each size 1, 2, ….
    pub fn chain_counts(&self) -> Vec<u64> {
        let n = self.len();
        let mut counts = vec![0u64; self.length().max(0) as usize + 1];
        let mut ending: Vec<Vec<u64>> = vec![Vec::new(); n];
        for &x in &self.order {
            let mut c = vec![0u64; self.height[x] + 1];
            c[0] = 1;
            for z in self.below[x].ones() {
                if z != x {
                    for (k, &v) in ending[z].iter().enumerate() {
                        c[k + 1] += v;
                    }
                }
            }
            for (k, &v) in c.iter().enumerate() {
                counts[k] += v;
            }
            ending[x] = c;
        }
        if n == 0 {
            counts.clear();
        }
        counts
    }

    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for x in self.minimal_elements() {
            stack.push(x);
            self.walk_maximal(&mut stack, &mut out);
            stack.pop();
        }
        out
    }

    fn walk_maximal(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *stack.last().unwrap();
        if self.up[last].is_empty() {
            out.push(stack.clone());
            return;
        }
        for &y in &self.up[last] {
            stack.push(y);
            self.walk_maximal(stack, out);
            stack.pop();
        }
    }

    pub fn order_complex(&self) -> SimplicialComplexData {
        let facets = self
            .maximal_chains()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.names[i].clone()).collect())
            .collect();
        SimplicialComplexData::new(self.names.clone(), facets).expect("chains are valid faces")
    }

    /// Reduced Euler characteristic of the order complex.
    pub fn reduced_euler(&self) -> i64 {
        let mut e = -1i64;
        for (k, &c) in self.chain_counts().iter().enumerate() {
            if k % 2 == 0 {
                e += c as i64;
            } else {
                e -= c as i64;
            }
        }
        e
    }

    pub fn euler_identities_check(&self) -> Result<EulerReport, PosetError> {
        let b = self.bottom.ok_or(PosetError::NotBoundedBelow)?;
        let chi = self.characteristic_polynomial()?;
        let lower = self.without(&[b]).reduced_euler();
        let chi1 = chi.eval(&BigInt::one());
        let mut report = EulerReport {
            reduced_euler_lower: lower,
            lower_holds: BigInt::from(lower) == -chi1.clone(),
            chi_at_one: chi1,
            reduced_euler_proper: None,
            chi_at_zero: None,
            upper_holds: None,
        };
        if let Some(t) = self.top.filter(|&t| t != b) {
            let proper = self.without(&[b, t]).reduced_euler();
            let chi0 = chi.eval(&BigInt::zero());
            report.upper_holds = Some(BigInt::from(proper) == chi0);
            report.reduced_euler_proper = Some(proper);
            report.chi_at_zero = Some(chi0);
        }
        Ok(report)
    }

    /// Induced subposet on a convex subset, listed in the given order.
    pub fn induced_convex(&self, subset: &[usize]) -> FinitePoset {
        let mut local = vec![usize::MAX; self.len()];
        for (k, &x) in subset.iter().enumerate() {
            local[x] = k;
        }
        let mut covers = Vec::new();
        for &x in subset {
            for &y in &self.up[x] {
                if local[y] != usize::MAX {
                    covers.push((local[x], local[y]));
                }
            }
        }
        let names = subset.iter().map(|&x| self.names[x].clone()).collect();
        FinitePoset::from_indexed(names, covers).expect("induced subposet")
    }

    /// Induced subposet on an arbitrary subset.
    pub fn induced(&self, subset: &[usize]) -> FinitePoset {
        let mut mask = FixedBitSet::with_capacity(self.len());
        for &x in subset {
            mask.insert(x);
        }
        let mut local = vec![usize::MAX; self.len()];
        for (k, &x) in subset.iter().enumerate() {
            local[x] = k;
        }
        let mut covers = Vec::new();
        for &x in subset {
            let mut strict_up = self.above[x].clone();
            strict_up.set(x, false);
            strict_up.intersect_with(&mask);
            for y in strict_up.ones() {
                let mut between = strict_up.clone();
                between.intersect_with(&self.below[y]);
                between.set(y, false);
                if between.is_clear() {
                    covers.push((local[x], local[y]));
                }
            }
        }
        let names = subset.iter().map(|&x| self.names[x].clone()).collect();
        FinitePoset::from_indexed(names, covers).expect("induced subposet")
    }

    /// The poset with the listed elements removed.
    pub fn without(&self, removed: &[usize]) -> FinitePoset {
        let keep: Vec<usize> = (0..self.len()).filter(|x| !removed.contains(x)).collect();
        if removed.iter().all(|&r| Some(r) == self.bottom || Some(r) == self.top) {
            self.induced_convex(&keep)
        } else {
            self.induced(&keep)
        }
    }

    /// P̌: the poset without its bottom element.
    pub fn without_bottom(&self) -> Result<FinitePoset, PosetError> {
        let b = self.bottom.ok_or(PosetError::NotBoundedBelow)?;
        Ok(self.without(&[b]))
    }

    /// P with bottom, and top if present, removed.
    pub fn proper_part(&self) -> Result<FinitePoset, PosetError> {
        let b = self.bottom.ok_or(PosetError::NotBoundedBelow)?;
        let mut removed = vec![b];
        if let Some(t) = self.top.filter(|&t| t != b) {
            removed.push(t);
        }
        Ok(self.without(&removed))
    }

    /// Elements z with x ≤ z ≤ y (or strictly between when `open`), in index order.
    pub fn interval_elements(&self, x: usize, y: usize, open: bool) -> Vec<usize> {
        let mut s = self.above[x].clone();
        s.intersect_with(&self.below[y]);
        if open {
            s.set(x, false);
            s.set(y, false);
        }
        s.ones().collect()
    }

    pub fn interval(&self, x: &str, y: &str) -> Result<FinitePoset, PosetError> {
        let (xi, yi) = (self.lookup(x)?, self.lookup(y)?);
        if !self.leq(xi, yi) {
            return Err(PosetError::NotComparable(x.to_string(), y.to_string()));
        }
        Ok(self.induced_convex(&self.interval_elements(xi, yi, false)))
    }

    pub fn open_interval(&self, x: &str, y: &str) -> Result<FinitePoset, PosetError> {
        let (xi, yi) = (self.lookup(x)?, self.lookup(y)?);
        if !self.leq(xi, yi) {
            return Err(PosetError::NotComparable(x.to_string(), y.to_string()));
        }
        Ok(self.induced_convex(&self.interval_elements(xi, yi, true)))
    }

    /// P_{>x}
    pub fn strict_upper_set(&self, x: usize) -> FinitePoset {
        let elems: Vec<usize> = self.above[x].ones().filter(|&z| z != x).collect();
        self.induced_convex(&elems)
    }

    /// P_{<x}
    pub fn strict_lower_set(&self, x: usize) -> FinitePoset {
        let elems: Vec<usize> = self.below[x].ones().filter(|&z| z != x).collect();
        self.induced_convex(&elems)
    }

    /// P with a new maximum element.
    pub fn adjoin_top(&self, name: &str) -> Result<FinitePoset, PosetError> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        let t = self.len();
        let mut covers = self.covers();
        covers.extend(self.maximal_elements().into_iter().map(|m| (m, t)));
        FinitePoset::from_indexed(names, covers)
    }

    /// P with a new minimum element, listed first.
    pub fn adjoin_bottom(&self, name: &str) -> Result<FinitePoset, PosetError> {
        let mut names = vec![name.to_string()];
        names.extend(self.names.iter().cloned());
        let mut covers: Vec<(usize, usize)> = self.covers().into_iter().map(|(x, y)| (x + 1, y + 1)).collect();
        covers.extend(self.minimal_elements().into_iter().map(|m| (0, m + 1)));
        FinitePoset::from_indexed(names, covers)
    }

    /// Greatest common lower bound of x and y, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut common = self.below[x].clone();
        common.intersect_with(&self.below[y]);
        common.ones().find(|&m| common.is_subset(&self.below[m]))
    }

    /// Minimal elements among the common upper bounds of x and y inside `within`.
    pub fn minimal_upper_bounds(&self, x: usize, y: usize, within: &FixedBitSet) -> Vec<usize> {
        let mut common = self.above[x].clone();
        common.intersect_with(&self.above[y]);
        common.intersect_with(within);
        common
            .ones()
            .filter(|&z| common.ones().all(|w| w == z || !self.leq(w, z)))
            .collect()
    }
}

/// h(t) = Σ f_{i−1} t^i (1−t)^{d−i}
pub fn h_from_f(f: &[u64]) -> Polynomial1 {
    let d = f.len().saturating_sub(1);
    let one_minus_t = Polynomial1::from_i64(&[1, -1]);
    let mut h = Polynomial1::zero();
    for (i, &fi) in f.iter().enumerate() {
        let term = &Polynomial1::monomial(BigInt::from(fi), i) * &one_minus_t.pow(d - i);
        h = &h + &term;
    }
    h
}

/// Boolean lattice on subsets of {1..n}, named "{}", "{1}", "{1,2}", ….
pub fn boolean_lattice(n: usize) -> FinitePoset {
    let name = |m: usize| {
        let parts: Vec<String> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    };
    let names = (0..1usize << n).map(name).collect();
    let mut covers = Vec::new();
    for m in 0..1usize << n {
        for i in 0..n {
            if m >> i & 1 == 0 {
                covers.push((m, m | 1 << i));
            }
        }
    }
    FinitePoset::from_indexed(names, covers).expect("Boolean lattice")
}

/// A simplicial poset that is not a complex: three atoms, four
/// rank-two elements (two of them over the same pair of atoms) and two
/// rank-three elements over the same triple.
pub fn doubled_triangle() -> FinitePoset {
    let elements = ["0", "a", "b", "c", "l1", "l2", "l3", "l4", "T1", "T2"];
    let covers = [
        ("0", "a"),
        ("0", "b"),
        ("0", "c"),
        ("a", "l1"),
        ("b", "l1"),
        ("b", "l2"),
        ("c", "l2"),
        ("a", "l3"),
        ("c", "l3"),
        ("b", "l4"),
        ("c", "l4"),
        ("l1", "T1"),
        ("l2", "T1"),
        ("l3", "T1"),
        ("l1", "T2"),
        ("l2", "T2"),
        ("l3", "T2"),
    ];
    FinitePoset::new(&elements, &covers).expect("doubled-triangle poset")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_three() {
        let b3 = boolean_lattice(3);
        let v = b3.validate();
        assert!(v.graded);
        assert_eq!(v.length, 3);
        assert!(v.bottom.is_some() && v.top.is_some());
        assert_eq!(b3.mobius("{}", "{1,2,3}").unwrap(), -1);
        assert_eq!(b3.mobius("{}", "{1,2}").unwrap(), 1);
        assert!(b3.is_simplicial());
        assert_eq!(b3.characteristic_polynomial().unwrap(), Polynomial1::from_i64(&[-1, 3, -3, 1]));
    }

    #[test]
    fn doubled_triangle_invariants() {
        let p = doubled_triangle();
        let v = p.validate();
        assert!(v.graded);
        assert_eq!(v.length, 3);
        assert_eq!(v.bottom.as_deref(), Some("0"));
        assert_eq!(v.top, None);
        assert!(p.is_simplicial());
        assert_eq!(p.f_vector().unwrap(), vec![1, 3, 4, 2]);
        assert_eq!(p.h_polynomial().unwrap(), Polynomial1::from_i64(&[1, 0, 1]));
        assert_eq!(p.characteristic_polynomial().unwrap(), Polynomial1::from_i64(&[-2, 4, -3, 1]));
        let e = p.euler_identities_check().unwrap();
        assert_eq!(e.reduced_euler_lower, 0);
        assert!(e.holds());
    }

    #[test]
    fn antichain_with_bottom() {
        let p = FinitePoset::new(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap();
        let v = p.validate();
        assert!(v.graded);
        assert_eq!(v.length, 1);
        let hat = p.adjoin_top("1").unwrap();
        assert_eq!(hat.len(), 4);
        assert_eq!(hat.top(), hat.index_of("1"));
    }

    #[test]
    fn construction_errors() {
        let e = FinitePoset::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(e, PosetError::CycleDetected(_)));
        let e = FinitePoset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap_err();
        assert_eq!(e, PosetError::RedundantCover("a".into(), "c".into()));
        let e = FinitePoset::new(&["a", "a"], &[]).unwrap_err();
        assert!(matches!(e, PosetError::DuplicateElement(_)));
        let e = FinitePoset::new(&["a"], &[("a", "z")]).unwrap_err();
        assert!(matches!(e, PosetError::UnknownElement(_)));
        let p = FinitePoset::new(&["a", "b"], &[]).unwrap();
        assert!(matches!(p.mobius("a", "b"), Err(PosetError::NotComparable(..))));
    }

    #[test]
    fn non_boolean_lower_interval() {
        // a rank-two element over a single atom chain: 0 < a < x and 0 < b < x with an extra atom c < x
        let p = FinitePoset::new(
            &["0", "a", "b", "c", "x"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "x"), ("b", "x"), ("c", "x")],
        )
        .unwrap();
        assert_eq!(p.simplicial_witness(), p.index_of("x"));
        let chain = FinitePoset::new(&["0", "a", "b"], &[("0", "a"), ("a", "b")]).unwrap();
        assert_eq!(chain.simplicial_witness(), chain.index_of("b"));
        assert!(matches!(chain.f_vector(), Err(PosetError::NotSimplicial(_))));
    }

    #[test]
    fn order_complexes() {
        let chain = FinitePoset::new(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(chain.order_complex().facets().len(), 1);
        let anti = FinitePoset::new(&["a", "b"], &[]).unwrap();
        assert_eq!(anti.order_complex().facets().len(), 2);
        let hexagon = boolean_lattice(3).proper_part().unwrap();
        assert_eq!(hexagon.len(), 6);
        assert_eq!(hexagon.chain_counts(), vec![6, 6]);
        assert_eq!(hexagon.reduced_euler(), -1);
        assert_eq!(hexagon.chains().len(), 12);
    }

    #[test]
    fn euler_small_cases() {
        let b2 = boolean_lattice(2);
        let e = b2.euler_identities_check().unwrap();
        assert_eq!(e.reduced_euler_lower, 0);
        assert_eq!(e.reduced_euler_proper, Some(1));
        assert!(e.holds());
        let point = FinitePoset::new(&["0"], &[] as &[(&str, &str)]).unwrap();
        let e = point.euler_identities_check().unwrap();
        assert_eq!(e.reduced_euler_lower, -1);
        assert!(e.holds());
    }

    #[test]
    fn intervals_and_meets() {
        let b3 = boolean_lattice(3);
        let iv = b3.interval("{1}", "{1,2,3}").unwrap();
        assert_eq!(iv.len(), 4);
        let trunc = b3.without(&[b3.top().unwrap()]);
        assert_eq!(trunc.length(), 2);
        let x = b3.index_of("{1,2}").unwrap();
        let y = b3.index_of("{2,3}").unwrap();
        assert_eq!(b3.meet(x, y), b3.index_of("{2}"));
    }

    #[test]
    fn from_order_reduces() {
        let names: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        let p = FinitePoset::from_order(names, |x, y| x <= y).unwrap();
        assert_eq!(p.covers(), vec![(0, 1), (1, 2), (2, 3)]);
    }
}
