//! Finite quotient data of a translative G-semimatroid: ground set, central
//! sets with multiplicity and rank. Tutte polynomial, the derived h- and
//! characteristic polynomials, the index δ and Betti predictions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{mask_of, set_of, ArrangementSpec};
use crate::intlat::{kernel_lattice, lattice_index, smith_normal_form, IntMatrix, LatticeBasis, LatticeIndex};
use crate::poly::{binomial, Polynomial1, Polynomial2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GsemiError {
    #[error("arrangement is not essential")]
    NotEssential,
    #[error("refinement exponent 0: the index is trivially 1")]
    NotRefined,
    #[error("support {0:?} is not independent")]
    NotIndependent(Vec<usize>),
    #[error("support must be nonempty")]
    EmptySupport,
    #[error("invalid central family: {0}")]
    InvalidFamily(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct CentralSet {
    mask: usize,
    multiplicity: BigInt,
    rank: usize,
}

/// (E, central sets, m, ρ, d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSemimatroid {
    ground: Vec<String>,
    central: Vec<CentralSet>,
    d: usize,
}

impl QuotientSemimatroid {
    /// `central` lists (subset, multiplicity, rank) triples over indices into `ground`.
    pub fn new(ground: Vec<String>, central: Vec<(Vec<usize>, BigInt, usize)>) -> Result<Self, GsemiError> {
        let n = ground.len();
        if n > 20 {
            return Err(GsemiError::InvalidFamily(format!("{n} ground elements is too many")));
        }
        let mut sets: Vec<CentralSet> = central
            .into_iter()
            .map(|(s, m, r)| CentralSet { mask: mask_of(&s), multiplicity: m, rank: r })
            .collect();
        sets.sort_by_key(|c| c.mask);
        let find = |mask: usize| sets.binary_search_by_key(&mask, |c| c.mask).ok().map(|k| &sets[k]);
        let empty = find(0).ok_or_else(|| GsemiError::InvalidFamily("empty set missing".into()))?;
        if empty.rank != 0 {
            return Err(GsemiError::InvalidFamily("rank of the empty set is nonzero".into()));
        }
        for c in &sets {
            if c.multiplicity < BigInt::one() {
                return Err(GsemiError::InvalidFamily(format!("multiplicity of {:?} below 1", set_of(c.mask, n))));
            }
            for e in set_of(c.mask, n) {
                let sub = find(c.mask & !(1 << e))
                    .ok_or_else(|| GsemiError::InvalidFamily("family is not downward closed".into()))?;
                if sub.rank > c.rank || sub.rank + 1 < c.rank {
                    return Err(GsemiError::InvalidFamily("rank is not unit-increasing".into()));
                }
            }
        }
        let d = sets.iter().map(|c| c.rank).max().unwrap_or(0);
        Ok(QuotientSemimatroid { ground, central: sets, d })
    }

    pub fn from_arrangement(spec: &ArrangementSpec) -> Self {
        let n = spec.n();
        let central = (0..1usize << n)
            .map(|m| (set_of(m, n), spec.multiplicity_mask(m), spec.rank_mask(m)))
            .collect();
        let ground = (1..=n).map(|i| i.to_string()).collect();
        Self::new(ground, central).expect("arrangement data is a semimatroid")
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn multiplicity(&self, set: &[usize]) -> Option<&BigInt> {
        let m = mask_of(set);
        self.central.iter().find(|c| c.mask == m).map(|c| &c.multiplicity)
    }

    pub fn rank(&self, set: &[usize]) -> Option<usize> {
        let m = mask_of(set);
        self.central.iter().find(|c| c.mask == m).map(|c| c.rank)
    }

    /// T(x,y) = Σ_A m(A) (x−1)^{d−ρ(A)} (y−1)^{|A|−ρ(A)}
    pub fn tutte(&self) -> Polynomial2 {
        let mut t = Polynomial2::zero();
        for c in &self.central {
            let a = (self.d - c.rank) as u64;
            let b = (c.mask.count_ones() as usize - c.rank) as u64;
            for i in 0..=a {
                let ci = binomial(a, i) * sign(a - i);
                for j in 0..=b {
                    let cj = binomial(b, j) * sign(b - j);
                    t.add_term(i as u32, j as u32, &c.multiplicity * &ci * cj);
                }
            }
        }
        t
    }

    /// t^d · T(1/t, 1)
    pub fn h_poly_independence(&self) -> Polynomial1 {
        let t = self.tutte();
        let mut coeffs = vec![BigInt::zero(); self.d + 1];
        for ((i, _), c) in t.terms() {
            coeffs[self.d - i as usize] += c;
        }
        Polynomial1::new(coeffs)
    }

    /// (−1)^d · T(1−t, 0)
    pub fn char_poly_layers(&self) -> Polynomial1 {
        let one_minus_t = Polynomial1::from_i64(&[1, -1]);
        let p = self.tutte().substitute(&one_minus_t, &Polynomial1::zero());
        p.scale(&sign(self.d as u64))
    }

    /// (−1)^d · T(1−t, 1)
    pub fn char_poly_independence(&self) -> Polynomial1 {
        let one_minus_t = Polynomial1::from_i64(&[1, -1]);
        let p = self.tutte().substitute(&one_minus_t, &Polynomial1::one());
        p.scale(&sign(self.d as u64))
    }

    /// Σ over bases of m(B).
    pub fn weighted_basis_count(&self) -> BigInt {
        self.central
            .iter()
            .filter(|c| c.rank == self.d && c.mask.count_ones() as usize == self.d)
            .map(|c| c.multiplicity.clone())
            .sum()
    }

    /// Whether the poset of layers has a maximum (the top flat is a single layer).
    /// Whether all top-rank intersections are a single common point.
    pub fn layers_bounded_above(&self) -> bool {
        self.central.iter().filter(|c| c.rank == self.d).all(|c| c.multiplicity.is_one())
    }

    pub fn betti_predictions(&self) -> BettiPredictions {
        let t = self.tutte();
        let (zero, one) = (BigInt::zero(), BigInt::one());
        BettiPredictions {
            d: self.d,
            layers_top: t.eval(&zero, &zero),
            proper_part_top: self.layers_bounded_above().then(|| t.eval(&one, &zero)),
            independence_top: t.eval(&zero, &one),
        }
    }
}

fn sign(k: u64) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Predicted reduced rational Betti numbers. All groups vanish except:
/// β̃_{d−1}(𝒫̌) = T(0,0); β̃_{d−2}(proper part of 𝒫) = T(1,0) when 𝒫 has a
/// maximum; β̃_{d−1}(ℐ̌) = T(0,1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiPredictions {
    pub d: usize,
    pub layers_top: BigInt,
    pub proper_part_top: Option<BigInt>,
    pub independence_top: BigInt,
}

impl BettiPredictions {
    /// Vector indexed from degree −1 with `value` in degree `top`.
    pub fn concentrated(top: isize, len: usize, value: &BigInt) -> Vec<BigInt> {
        (0..len)
            .map(|s| if s as isize - 1 == top { value.clone() } else { BigInt::zero() })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaRow {
    /// 0-based column indices.
    pub basis: Vec<usize>,
    pub w: Vec<Vec<i64>>,
    pub delta: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub p: u32,
    pub rows: Vec<DeltaRow>,
    pub delta: u64,
}

/// Primitive generator of the integer kernel of the characters in `rows`
/// (expected to have rank d−1).
fn kernel_generator(spec: &ArrangementSpec, rows: &[usize]) -> Vec<BigInt> {
    let k = kernel_lattice(&spec.character_rows(rows));
    assert_eq!(k.rank(), 1, "kernel of a codimension-one subset has rank one");
    k.generators()[0].clone()
}

/// Lattice in ℤ^{p·d} spanned by p copies of each vector, one per block.
fn block_lattice(vectors: &[Vec<BigInt>], d: usize, p: usize) -> LatticeBasis {
    let mut gens = Vec::with_capacity(vectors.len() * p);
    for v in vectors {
        for b in 0..p {
            let mut g = vec![BigInt::zero(); p * d];
            g[b * d..(b + 1) * d].clone_from_slice(v);
            gens.push(g);
        }
    }
    LatticeBasis::span(p * d, gens).expect("block generators")
}

fn to_u64(x: &BigInt) -> u64 {
    u64::try_from(x).expect("index fits in 64 bits")
}

fn finite(i: LatticeIndex) -> BigInt {
    i.finite().cloned().expect("full-rank sublattice")
}

pub fn delta(spec: &ArrangementSpec) -> Result<DeltaReport, GsemiError> {
    if spec.p() == 0 {
        return Err(GsemiError::NotRefined);
    }
    if !spec.is_essential() {
        return Err(GsemiError::NotEssential);
    }
    let d = spec.d();
    let p = spec.p() as usize;
    let mut rows = Vec::new();
    let mut total = BigInt::one();
    for b in spec.bases() {
        let w: Vec<Vec<BigInt>> = (0..b.len())
            .map(|j| {
                let rest: Vec<usize> = b.iter().copied().filter(|&x| x != b[j]).collect();
                kernel_generator(spec, &rest)
            })
            .collect();
        let index = finite(
            lattice_index(&block_lattice(&w, d, p), &LatticeBasis::full(p * d)).expect("sublattice of the full lattice"),
        );
        let det = IntMatrix::from_rows(w.clone(), d).expect("square").determinant().unwrap();
        assert_eq!(index, Pow::pow(det.abs(), spec.p()), "block index disagrees with |det|^p");
        total = total.lcm(&index);
        rows.push(DeltaRow {
            basis: b,
            w: w.iter().map(|v| v.iter().map(|x| i64::try_from(x).expect("small")).collect()).collect(),
            delta: to_u64(&index),
        });
    }
    Ok(DeltaReport { p: spec.p(), rows, delta: to_u64(&total) })
}

/// [G/stab(X) : ⊕_i stab(X∖x_i)] for G = ℤ^{p·d}, computed in SNF
/// coordinates of the quotient.
pub fn delta_of_support(spec: &ArrangementSpec, support: &[usize]) -> Result<BigInt, GsemiError> {
    if support.is_empty() {
        return Err(GsemiError::EmptySupport);
    }
    if !spec.is_independent(support) {
        return Err(GsemiError::NotIndependent(support.to_vec()));
    }
    let d = spec.d();
    let p = spec.p().max(1) as usize;
    let stab = block_lattice(kernel_lattice(&spec.character_rows(support)).generators(), d, p);
    let r = stab.rank();
    let snf = smith_normal_form(&stab.as_matrix().transpose());
    assert!(snf.nonzero_divisors().iter().all(|x| x.is_one()), "stabilizer is saturated");
    let project = |v: &[BigInt]| -> Vec<BigInt> {
        (r..p * d).map(|i| snf.u.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    };
    let mut gens = Vec::new();
    for &x in support {
        let rest: Vec<usize> = support.iter().copied().filter(|&y| y != x).collect();
        let ki = block_lattice(kernel_lattice(&spec.character_rows(&rest)).generators(), d, p);
        gens.extend(ki.generators().iter().map(|g| project(g)));
    }
    let quotient_dim = p * d - r;
    let h = LatticeBasis::span(quotient_dim, gens).expect("projected generators");
    let index = finite(lattice_index(&h, &LatticeBasis::full(quotient_dim)).expect("sublattice"));
    Ok(if spec.p() == 0 { BigInt::one() } else { index })
}

/// [ℤ^d : Σ_i ker(X∖x_i)]^p, the same index computed without passing to the quotient.
pub fn delta_of_support_direct(spec: &ArrangementSpec, support: &[usize]) -> Result<BigInt, GsemiError> {
    if support.is_empty() {
        return Err(GsemiError::EmptySupport);
    }
    if !spec.is_independent(support) {
        return Err(GsemiError::NotIndependent(support.to_vec()));
    }
    let d = spec.d();
    let mut gens = Vec::new();
    for &x in support {
        let rest: Vec<usize> = support.iter().copied().filter(|&y| y != x).collect();
        gens.extend(kernel_lattice(&spec.character_rows(&rest)).generators().iter().cloned());
    }
    let sum = LatticeBasis::span(d, gens).expect("kernel generators");
    let index = finite(lattice_index(&sum, &LatticeBasis::full(d)).expect("sublattice"));
    Ok(if spec.p() == 0 { BigInt::one() } else { Pow::pow(index, spec.p()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_torsion(p: u32) -> ArrangementSpec {
        ArrangementSpec::from_i64(&[&[1, 1, 1, 3], &[0, 5, 0, 5], &[0, 0, 5, 5]], p).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn coloop_and_five() {
        let coloop = QuotientSemimatroid::from_arrangement(&ArrangementSpec::from_i64(&[&[1]], 0).unwrap());
        assert_eq!(coloop.tutte().pretty(), "x");
        assert_eq!(coloop.h_poly_independence(), Polynomial1::one());
        assert_eq!(coloop.char_poly_layers(), Polynomial1::from_i64(&[-1, 1]));
        let five = QuotientSemimatroid::from_arrangement(&ArrangementSpec::from_i64(&[&[5]], 1).unwrap());
        assert_eq!(five.tutte().pretty(), "x + 4");
        assert_eq!(five.h_poly_independence(), Polynomial1::from_i64(&[1, 4]));
        assert_eq!(five.char_poly_layers(), Polynomial1::from_i64(&[-5, 1]));
        let b = five.betti_predictions();
        assert_eq!(b.layers_top, big(4));
        assert_eq!(b.independence_top, big(4));
    }

    #[test]
    fn bounded_above() {
        let parallel = ArrangementSpec::from_i64(&[&[3, -1]], 1).unwrap();
        assert!(!QuotientSemimatroid::from_arrangement(&parallel).layers_bounded_above());
        let unimodular = ArrangementSpec::from_i64(&[&[1, 0, 1], &[0, 1, 1]], 1).unwrap();
        let q = QuotientSemimatroid::from_arrangement(&unimodular);
        assert!(q.layers_bounded_above());
        assert_eq!(q.betti_predictions().proper_part_top, Some(big(2)));
        assert!(!QuotientSemimatroid::from_arrangement(&five_torsion(1)).layers_bounded_above());
        assert!(QuotientSemimatroid::from_arrangement(&five_torsion(0)).layers_bounded_above());
    }

    #[test]
    fn empty_arrangement() {
        let spec = ArrangementSpec::new(IntMatrix::zeros(0, 0), 1, 0).unwrap();
        let q = QuotientSemimatroid::from_arrangement(&spec);
        assert_eq!(q.tutte().pretty(), "1");
        assert!(q.ground().is_empty());
    }

    #[test]
    fn five_torsion_data() {
        let q = QuotientSemimatroid::from_arrangement(&five_torsion(1));
        assert_eq!(q.d(), 3);
        assert_eq!(q.multiplicity(&[0, 1]), Some(&big(5)));
        let t = q.tutte();
        assert_eq!(t.eval(&big(1), &big(1)), big(100));
        assert_eq!(q.weighted_basis_count(), big(100));
        let q0 = QuotientSemimatroid::from_arrangement(&five_torsion(0));
        assert_eq!(q0.multiplicity(&[0, 1, 2, 3]), Some(&big(1)));
    }

    #[test]
    fn delta_table() {
        let r = delta(&five_torsion(1)).unwrap();
        assert_eq!(r.delta, 5);
        assert!(r.rows.iter().all(|row| row.delta == 5));
        assert_eq!(r.rows[0].w, vec![vec![5, -1, -1], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(delta(&five_torsion(2)).unwrap().delta, 25);
        let id = ArrangementSpec::new(IntMatrix::identity(3), 1, 0).unwrap();
        assert_eq!(delta(&id).unwrap().delta, 1);
        assert_eq!(delta(&five_torsion(0)), Err(GsemiError::NotRefined));
        let flat = ArrangementSpec::from_i64(&[&[1], &[0]], 1).unwrap();
        assert_eq!(delta(&flat), Err(GsemiError::NotEssential));
    }

    #[test]
    fn delta_of_supports() {
        let a = five_torsion(1);
        assert_eq!(delta_of_support(&a, &[0, 1, 2]).unwrap(), big(5));
        assert_eq!(delta_of_support(&a, &[0]).unwrap(), big(1));
        for s in a.independent_sets().into_iter().filter(|s| !s.is_empty()) {
            assert_eq!(delta_of_support(&a, &s).unwrap(), delta_of_support_direct(&a, &s).unwrap());
        }
        assert_eq!(delta_of_support(&five_torsion(2), &[1, 2, 3]).unwrap(), big(25));
        assert!(matches!(delta_of_support(&a, &[]), Err(GsemiError::EmptySupport)));
    }

    #[test]
    fn family_validation() {
        let bad = QuotientSemimatroid::new(vec!["a".into()], vec![(vec![0], big(1), 1)]);
        assert!(matches!(bad, Err(GsemiError::InvalidFamily(_))));
        let ok = QuotientSemimatroid::new(
            vec!["a".into()],
            vec![(vec![], big(1), 0), (vec![0], big(3), 1)],
        )
        .unwrap();
        assert_eq!(ok.tutte().pretty(), "x + 2");
    }
}
