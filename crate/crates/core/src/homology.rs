//! Reduced simplicial homology over ℤ, ℚ and 𝔽_p, and Cohen-Macaulay tests
//! for posets and complexes.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::intlat::{IntMatrix, SparseMatrix};
use crate::poset::{FinitePoset, SimplicialComplexData};

/// Faces grouped by size (index 0 holds the empty face) with boundary maps.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    faces: Vec<Vec<Vec<u32>>>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplexData {
    /// `faces[k]` lists the faces with k vertices, each sorted ascending in
    /// a fixed global vertex order; every face of a listed face must be listed.
    pub fn from_faces(mut faces: Vec<Vec<Vec<u32>>>) -> Self {
        if faces.is_empty() {
            faces.push(vec![Vec::new()]);
        }
        let mut boundaries = vec![SparseMatrix::new(0)];
        for k in 1..faces.len() {
            let index: HashMap<&[u32], u32> =
                faces[k - 1].iter().enumerate().map(|(i, f)| (f.as_slice(), i as u32)).collect();
            let mut m = SparseMatrix::new(faces[k - 1].len());
            let mut sub = Vec::with_capacity(k);
            for f in &faces[k] {
                let mut row = Vec::with_capacity(k);
                for drop in 0..k {
                    sub.clear();
                    sub.extend(f.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v));
                    let j = *index.get(sub.as_slice()).expect("faces closed under subsets");
                    row.push((j, if drop % 2 == 0 { 1 } else { -1 }));
                }
                m.push_row(row);
            }
            boundaries.push(m);
        }
        let c = ChainComplexData { faces, boundaries };
        for k in 2..c.boundaries.len() {
            assert!(c.boundaries[k].mul(&c.boundaries[k - 1]).is_zero(), "boundary of boundary is nonzero");
        }
        c
    }

    /// Top dimension; −1 for {∅}.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// Faces of dimension k.
    pub fn faces_of_dim(&self, k: isize) -> &[Vec<u32>] {
        let s = k + 1;
        if s < 0 || s as usize >= self.faces.len() {
            return &[];
        }
        &self.faces[s as usize]
    }

    /// ∂_k : C_k → C_{k−1} with rows indexed by (k−1)-faces and columns by k-faces.
    pub fn boundary_matrix(&self, k: isize) -> IntMatrix {
        let s = (k + 1) as usize;
        if k < 0 || s >= self.boundaries.len() {
            let rows = self.faces_of_dim(k - 1).len();
            let cols = self.faces_of_dim(k).len();
            return IntMatrix::zeros(rows, cols);
        }
        self.boundaries[s].to_dense().transpose()
    }

    fn rank_profile(&self, integral: bool) -> (Vec<usize>, Vec<Vec<BigInt>>) {
        let mut ranks = vec![0usize; self.faces.len() + 1];
        let mut divisors = vec![Vec::new(); self.faces.len() + 1];
        for s in 1..self.faces.len() {
            if integral {
                let d = self.boundaries[s].smith_divisors();
                ranks[s] = d.len();
                divisors[s] = d;
            } else {
                ranks[s] = self.boundaries[s].rank_rational();
            }
        }
        (ranks, divisors)
    }

    pub fn homology_integral(&self) -> HomologyResult {
        let (ranks, divisors) = self.rank_profile(true);
        let groups = (0..self.faces.len())
            .map(|s| HomologyGroup {
                rank: self.faces[s].len() - ranks[s] - ranks[s + 1],
                torsion: divisors[s + 1].iter().filter(|d| !d.is_one()).cloned().collect(),
            })
            .collect();
        HomologyResult { characteristic: None, groups }
    }

    pub fn homology_rational(&self) -> HomologyResult {
        let (ranks, _) = self.rank_profile(false);
        let groups = (0..self.faces.len())
            .map(|s| HomologyGroup { rank: self.faces[s].len() - ranks[s] - ranks[s + 1], torsion: Vec::new() })
            .collect();
        HomologyResult { characteristic: Some(0), groups }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Reduced homology, `groups[0]` being degree −1. `characteristic` is `None`
/// for integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub characteristic: Option<u64>,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn degree(&self, i: isize) -> HomologyGroup {
        let s = i + 1;
        if s < 0 {
            return HomologyGroup { rank: 0, torsion: Vec::new() };
        }
        self.groups
            .get(s as usize)
            .cloned()
            .unwrap_or(HomologyGroup { rank: 0, torsion: Vec::new() })
    }

    pub fn max_degree(&self) -> isize {
        self.groups.len() as isize - 2
    }

    /// Field ranks by universal coefficients; requires integral data unless
    /// the characteristic already matches.
    pub fn betti(&self, characteristic: u64) -> Vec<usize> {
        match self.characteristic {
            Some(c) => {
                assert_eq!(c, characteristic, "homology computed over a different field");
                self.groups.iter().map(|g| g.rank).collect()
            }
            None => {
                let divisible = |g: &HomologyGroup| {
                    if characteristic == 0 {
                        0
                    } else {
                        let p = BigInt::from(characteristic);
                        g.torsion.iter().filter(|t| t.is_multiple_of(&p)).count()
                    }
                };
                (0..self.groups.len())
                    .map(|s| {
                        let prev = if s > 0 { divisible(&self.groups[s - 1]) } else { 0 };
                        self.groups[s].rank + divisible(&self.groups[s]) + prev
                    })
                    .collect()
            }
        }
    }

    /// H̃_i vanishes for every i ≤ t.
    pub fn acyclic_through(&self, t: isize, characteristic: u64) -> bool {
        let b = self.betti(characteristic);
        (-1..=t).all(|i| b.get((i + 1) as usize).is_none_or(|&r| r == 0))
    }

    pub fn euler(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(s, g)| if s % 2 == 1 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }
}

pub fn chain_complex(complex: &SimplicialComplexData) -> ChainComplexData {
    ChainComplexData::from_faces(complex.faces())
}

pub fn homology_integral(complex: &SimplicialComplexData) -> HomologyResult {
    chain_complex(complex).homology_integral()
}

/// Reduced Betti numbers over a field of the given characteristic.
pub fn betti(complex: &SimplicialComplexData, characteristic: u64) -> Vec<usize> {
    homology_integral(complex).betti(characteristic)
}

/// Faces of the order complex of the elements in `mask`, vertices labelled
/// by their position in a linear extension.
pub fn chain_faces(p: &FinitePoset, mask: Option<&FixedBitSet>) -> Vec<Vec<Vec<u32>>> {
    let mut faces: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
    let allowed = |x: usize| mask.is_none_or(|m| m.contains(x));
    let mut stack: Vec<usize> = Vec::new();
    fn walk(
        p: &FinitePoset,
        allowed: &dyn Fn(usize) -> bool,
        stack: &mut Vec<usize>,
        faces: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if faces.len() <= stack.len() {
            faces.push(Vec::new());
        }
        faces[stack.len()].push(stack.iter().map(|&x| p.position(x) as u32).collect());
        let last = *stack.last().unwrap();
        for y in p.up_set(last).ones() {
            if y != last && allowed(y) {
                stack.push(y);
                walk(p, allowed, stack, faces);
                stack.pop();
            }
        }
    }
    for &x in p.linear_extension() {
        if allowed(x) {
            stack.push(x);
            walk(p, &allowed, &mut stack, &mut faces);
            stack.pop();
        }
    }
    for l in &mut faces {
        l.sort_unstable();
    }
    faces
}

/// Integral homology of the order complex Δ(P).
pub fn poset_homology(p: &FinitePoset) -> HomologyResult {
    ChainComplexData::from_faces(chain_faces(p, None)).homology_integral()
}

/// Rational homology of Δ(P).
pub fn poset_homology_rational(p: &FinitePoset) -> HomologyResult {
    ChainComplexData::from_faces(chain_faces(p, None)).homology_rational()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmReport {
    pub characteristic: u64,
    pub cm: bool,
    pub witness: Option<Vec<String>>,
}

/// Name used for the adjoined bottom in interval witnesses.
pub const HAT_ZERO: &str = "0̂";
/// Name used for the adjoined top in interval witnesses.
pub const HAT_ONE: &str = "1̂";

pub fn is_cm_poset(p: &FinitePoset, characteristic: u64) -> CmReport {
    cm_poset_reports(p, &[characteristic]).remove(0)
}

/// Checks every open interval of P̂ once and answers for each characteristic.
pub fn cm_poset_reports(p: &FinitePoset, characteristics: &[u64]) -> Vec<CmReport> {
    let n = p.len();
    let integral = characteristics.iter().any(|&c| c != 0);
    let mut by_name: Vec<usize> = (0..n).collect();
    by_name.sort_by(|&a, &b| p.name(a).cmp(p.name(b)));
    let mut lows: Vec<Option<usize>> = vec![None];
    lows.extend(by_name.iter().map(|&x| Some(x)));
    let mut highs: Vec<Option<usize>> = by_name.iter().map(|&x| Some(x)).collect();
    highs.push(None);
    let mut reports: Vec<CmReport> = characteristics
        .iter()
        .map(|&c| CmReport { characteristic: c, cm: true, witness: None })
        .collect();
    let name = |x: Option<usize>, hat: &str| x.map_or(hat.to_string(), |i| p.name(i).to_string());
    for &x in &lows {
        for &y in &highs {
            if reports.iter().all(|r| !r.cm) {
                return reports;
            }
            let mut mask = FixedBitSet::with_capacity(n);
            match (x, y) {
                (Some(a), Some(b)) => {
                    if a == b || !p.leq(a, b) {
                        continue;
                    }
                    mask.union_with(p.up_set(a));
                    mask.intersect_with(p.down_set(b));
                    mask.set(a, false);
                    mask.set(b, false);
                }
                (Some(a), None) => {
                    mask.union_with(p.up_set(a));
                    mask.set(a, false);
                }
                (None, Some(b)) => {
                    mask.union_with(p.down_set(b));
                    mask.set(b, false);
                }
                (None, None) => mask.insert_range(..),
            }
            if mask.is_clear() {
                continue;
            }
            let faces = chain_faces(p, Some(&mask));
            let length = faces.len() as isize - 2;
            let cc = ChainComplexData::from_faces(faces);
            let h = if integral { cc.homology_integral() } else { cc.homology_rational() };
            for r in reports.iter_mut().filter(|r| r.cm) {
                if !h.acyclic_through(length - 1, r.characteristic) {
                    r.cm = false;
                    r.witness = Some(vec![name(x, HAT_ZERO), name(y, HAT_ONE)]);
                }
            }
        }
    }
    reports
}

pub fn is_cm_complex(complex: &SimplicialComplexData, characteristic: u64) -> CmReport {
    cm_complex_reports(complex, &[characteristic]).remove(0)
}

/// Reisner-type check on every link, faces visited by size then lexicographically.
pub fn cm_complex_reports(complex: &SimplicialComplexData, characteristics: &[u64]) -> Vec<CmReport> {
    let mut reports: Vec<CmReport> = characteristics
        .iter()
        .map(|&c| CmReport { characteristic: c, cm: true, witness: None })
        .collect();
    for face in complex.faces().into_iter().flatten() {
        if reports.iter().all(|r| !r.cm) {
            break;
        }
        let lk = complex.link(&face);
        let d = lk.dim();
        if d <= 0 {
            continue;
        }
        let h = homology_integral(&lk);
        for r in reports.iter_mut().filter(|r| r.cm) {
            if !h.acyclic_through(d - 1, r.characteristic) {
                r.cm = false;
                r.witness = Some(complex.face_names(&face));
            }
        }
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::boolean_lattice;

    fn hollow_triangle() -> SimplicialComplexData {
        SimplicialComplexData::from_facet_names(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]])
    }

    #[test]
    fn boundary_matrices() {
        let cc = chain_complex(&hollow_triangle());
        let d1 = cc.boundary_matrix(1);
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        assert_eq!(d1.rank(), 2);
        let full = SimplicialComplexData::from_facet_names(&[vec!["a", "b", "c"]]);
        let cc = chain_complex(&full);
        assert!(cc.boundary_matrix(1).mul(&cc.boundary_matrix(2)).unwrap().is_zero());
        let point = SimplicialComplexData::from_facet_names(&[vec!["a"]]);
        let cc = chain_complex(&point);
        assert_eq!(cc.boundary_matrix(1).cols(), 0);
    }

    #[test]
    fn triangle_homology() {
        let h = homology_integral(&hollow_triangle());
        assert_eq!(h.degree(0).rank, 0);
        assert_eq!(h.degree(1).rank, 1);
        assert!(h.degree(1).torsion.is_empty());
        assert_eq!(h.euler(), -1);
    }

    #[test]
    fn empty_complex_has_degree_minus_one() {
        let empty = SimplicialComplexData::new(vec![], vec![]).unwrap();
        let h = homology_integral(&empty);
        assert_eq!(h.degree(-1).rank, 1);
        assert!(!h.acyclic_through(-1, 0));
    }

    #[test]
    fn real_projective_plane_torsion() {
        let facets: Vec<Vec<&str>> = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
            [2, 3, 5], [2, 4, 5], [2, 4, 6], [3, 4, 6], [3, 5, 6],
        ]
        .iter()
        .map(|f| f.iter().map(|&v| ["", "1", "2", "3", "4", "5", "6"][v]).collect())
        .collect();
        let rp2 = SimplicialComplexData::from_facet_names(&facets);
        let h = homology_integral(&rp2);
        assert_eq!(h.degree(1).torsion, vec![BigInt::from(2)]);
        assert_eq!(h.degree(2).rank, 0);
        assert_eq!(h.betti(2), vec![0, 0, 1, 1]);
        assert_eq!(h.betti(3), vec![0, 0, 0, 0]);
        assert!(is_cm_complex(&rp2, 3).cm);
        assert!(!is_cm_complex(&rp2, 2).cm);
    }

    #[test]
    fn cm_examples() {
        let b3 = boolean_lattice(3);
        for c in [0, 2, 3] {
            assert!(is_cm_poset(&b3, c).cm);
        }
        let disjoint = SimplicialComplexData::from_facet_names(&[vec!["a", "b"], vec!["c"]]);
        let faces = disjoint.face_poset();
        let nonempty = faces.without_bottom().unwrap();
        let r = is_cm_poset(&nonempty, 0);
        assert!(!r.cm);
        assert_eq!(r.witness, Some(vec![HAT_ZERO.to_string(), HAT_ONE.to_string()]));
        assert!(!is_cm_complex(&disjoint, 0).cm);
        assert!(is_cm_complex(&hollow_triangle(), 0).cm);
        let full = SimplicialComplexData::from_facet_names(&[vec!["a", "b", "c"]]);
        assert!(is_cm_complex(&full, 0).cm);
        let bowtie = SimplicialComplexData::from_facet_names(&[vec!["a", "b", "x"], vec!["c", "d", "x"]]);
        let r = is_cm_complex(&bowtie, 0);
        assert!(!r.cm);
        assert_eq!(r.witness, Some(vec!["x".to_string()]));
    }
}
