//! Central toric and (p,q)-arrangements given by an integer character
//! matrix: flats, multiplicities, and the posets of layers and of
//! independent layers.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intlat::{format_point, torsion_order, ComponentIndexer, IntMatrix, LatticeError};
use crate::poset::FinitePoset;

/// Largest supported number of characters.
pub const MAX_CHARACTERS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("{0} characters exceed the supported maximum of {MAX_CHARACTERS}")]
    TooManyCharacters(usize),
    #[error("matrix has {rows} rows, expected d = {d}")]
    RowCount { rows: usize, d: usize },
    #[error("arrangement is not essential (rank {rank} < {d})")]
    NotEssential { rank: usize, d: usize },
    #[error("support {0:?} is not contained in {1:?}")]
    NotSubset(Vec<usize>, Vec<usize>),
    #[error("layer component does not lie on its support")]
    NotOnSupport,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Arrangement JSON: `{"d": .., "p": .., "q": .., "matrix": [[..], ..]}` with d rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementJson {
    pub d: usize,
    pub p: u32,
    #[serde(default)]
    pub q: u32,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecReport {
    pub d: usize,
    pub n: usize,
    pub p: u32,
    pub rank: usize,
    pub essential: bool,
    pub refined: bool,
}

/// A central arrangement: the columns of a d×n integer matrix are the
/// characters, `p` the refinement exponent and `q` carried along unused.
#[derive(Debug)]
pub struct ArrangementSpec {
    d: usize,
    p: u32,
    q: u32,
    matrix: IntMatrix,
    ranks: Vec<u8>,
    torsion: OnceLock<Vec<BigInt>>,
}

impl Clone for ArrangementSpec {
    fn clone(&self) -> Self {
        ArrangementSpec::new(self.matrix.clone(), self.p, self.q).expect("valid arrangement")
    }
}

/// A flat of the column matroid, as a sorted list of 0-based column indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    pub rank: usize,
    pub elements: Vec<usize>,
}

/// A layer: a support set together with one point per factor of (ℝ/ℤ)^{d·p},
/// representing a connected component of the corresponding intersection.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layer {
    pub support: Vec<usize>,
    pub component: Vec<Vec<BigRational>>,
}

impl Layer {
    /// "{1,2}@(0,1/5,0)" with 1-based character labels; factors separated by ";".
    pub fn name(&self) -> String {
        let s = support_name(&self.support);
        if self.component.is_empty() {
            s
        } else {
            let parts: Vec<String> = self.component.iter().map(|c| format_point(c)).collect();
            format!("{s}@{}", parts.join(";"))
        }
    }
}

/// "{1,3}" for the 0-based support [0, 2].
pub fn support_name(support: &[usize]) -> String {
    let parts: Vec<String> = support.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub(crate) fn mask_of(set: &[usize]) -> usize {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

pub(crate) fn set_of(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// A poset whose elements carry layer data.
#[derive(Clone, Debug)]
pub struct LayerPoset {
    pub poset: FinitePoset,
    pub layers: Vec<Layer>,
}

/// Component key per factor.
type ComponentKey = Vec<Vec<BigInt>>;

impl ArrangementSpec {
    pub fn new(matrix: IntMatrix, p: u32, q: u32) -> Result<Self, ArrangementError> {
        let n = matrix.cols();
        if n > MAX_CHARACTERS {
            return Err(ArrangementError::TooManyCharacters(n));
        }
        if let Some(j) = (0..n).find(|&j| matrix.column(j).iter().all(|x| x.is_zero())) {
            return Err(ArrangementError::ZeroColumn(j));
        }
        let ranks = (0..1usize << n)
            .map(|mask| matrix.select_columns(&set_of(mask, n)).rank() as u8)
            .collect();
        Ok(ArrangementSpec { d: matrix.rows(), p, q, matrix, ranks, torsion: OnceLock::new() })
    }

    pub fn from_i64(rows: &[&[i64]], p: u32) -> Result<Self, ArrangementError> {
        Self::new(IntMatrix::from_i64(rows), p, 0)
    }

    pub fn from_json(json: &ArrangementJson) -> Result<Self, ArrangementError> {
        if json.matrix.len() != json.d {
            return Err(ArrangementError::RowCount { rows: json.matrix.len(), d: json.d });
        }
        let n = json.matrix.first().map_or(0, |r| r.len());
        let rows = json.matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::new(IntMatrix::from_rows(rows, n)?, json.p, json.q)
    }

    pub fn to_json(&self) -> ArrangementJson {
        ArrangementJson {
            d: self.d,
            p: self.p,
            q: self.q,
            matrix: (0..self.d)
                .map(|i| self.matrix.row(i).iter().map(|x| i64::try_from(x).expect("small entries")).collect())
                .collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Characters of `set` as the rows of a matrix.
    pub fn character_rows(&self, set: &[usize]) -> IntMatrix {
        self.matrix.select_columns(set).transpose()
    }

    /// ℚ-rank of the columns in `set`.
    pub fn rank(&self, set: &[usize]) -> usize {
        self.ranks[mask_of(set)] as usize
    }

    pub(crate) fn rank_mask(&self, mask: usize) -> usize {
        self.ranks[mask] as usize
    }

    pub fn total_rank(&self) -> usize {
        self.rank_mask((1 << self.n()) - 1)
    }

    pub fn is_essential(&self) -> bool {
        self.total_rank() == self.d
    }

    pub fn validate(&self) -> SpecReport {
        let essential = self.is_essential();
        SpecReport {
            d: self.d,
            n: self.n(),
            p: self.p,
            rank: self.total_rank(),
            essential,
            refined: self.p == 0 || essential,
        }
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.rank(set) == set.len()
    }

    fn torsion_table(&self) -> &Vec<BigInt> {
        self.torsion.get_or_init(|| {
            (0..1usize << self.n())
                .map(|mask| torsion_order(&self.matrix.select_columns(&set_of(mask, self.n()))))
                .collect()
        })
    }

    /// Number of connected components of ⋂_{i∈X} over (ℝ/ℤ)^{dp}.
    pub fn multiplicity(&self, set: &[usize]) -> BigInt {
        self.multiplicity_mask(mask_of(set))
    }

    pub(crate) fn multiplicity_mask(&self, mask: usize) -> BigInt {
        if self.p == 0 {
            return BigInt::one();
        }
        Pow::pow(&self.torsion_table()[mask], self.p)
    }

    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        let m = mask_of(set);
        let r = self.rank_mask(m);
        (0..self.n()).filter(|&i| self.rank_mask(m | 1 << i) == r).collect()
    }

    /// All flats, ordered by rank and then lexicographically.
    pub fn flats(&self) -> Vec<Flat> {
        let n = self.n();
        let mut seen = vec![false; 1 << n];
        let mut out = Vec::new();
        for mask in 0..1usize << n {
            let c = mask_of(&self.closure(&set_of(mask, n)));
            if !seen[c] {
                seen[c] = true;
                out.push(Flat { rank: self.rank_mask(c), elements: set_of(c, n) });
            }
        }
        out.sort();
        out
    }

    /// Independent subsets, ordered by size and then lexicographically.
    pub fn independent_sets(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut out: Vec<Vec<usize>> = (0..1usize << n)
            .filter(|&m| self.rank_mask(m) == m.count_ones() as usize)
            .map(|m| set_of(m, n))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    pub fn bases(&self) -> Vec<Vec<usize>> {
        let r = self.total_rank();
        self.independent_sets().into_iter().filter(|s| s.len() == r).collect()
    }

    /// Component tuples of the intersection over `support`, in lexicographic order.
    pub fn components(&self, support: &[usize]) -> Vec<Vec<Vec<BigRational>>> {
        let reps = ComponentIndexer::new(&self.character_rows(support)).representatives();
        let mut tuples: Vec<Vec<Vec<BigRational>>> = vec![Vec::new()];
        for _ in 0..self.p {
            let mut next = Vec::with_capacity(tuples.len() * reps.len());
            for t in &tuples {
                for r in &reps {
                    let mut t = t.clone();
                    t.push(r.clone());
                    next.push(t);
                }
            }
            tuples = next;
        }
        tuples
    }

    /// Whether the component of `big` lies in the component of `small`.
    pub fn component_contains(&self, small: &Layer, big: &Layer) -> Result<bool, ArrangementError> {
        if mask_of(&small.support) & !mask_of(&big.support) != 0 {
            return Err(ArrangementError::NotSubset(small.support.clone(), big.support.clone()));
        }
        let idx = ComponentIndexer::new(&self.character_rows(&small.support));
        for (a, b) in small.component.iter().zip(&big.component) {
            let ka = idx.key(a).ok_or(ArrangementError::NotOnSupport)?;
            let kb = idx.key(b).ok_or(ArrangementError::NotOnSupport)?;
            if ka != kb {
                return Ok(false);
            }
        }
        Ok(true)
    }

/// Whether some character outside `support` vanishes on the whole component.
    fn support_grows(&self, support: &[usize], component: &[Vec<BigRational>]) -> bool {
        let m = mask_of(support);
        let r = self.rank_mask(m);
        (0..self.n()).filter(|&j| m >> j & 1 == 0 && self.rank_mask(m | 1 << j) == r).any(|j| {
            let row = self.character_rows(&[j]);
            component
                .iter()
                .all(|x| row.row(0).iter().zip(x).map(|(c, y)| y * c).sum::<BigRational>().is_integer())
        })
    }

    /// Builds a layer poset over the given supports, covering pairs differing
    /// in rank by one. With `exact`, a component is kept only under its full support.
    fn layer_poset(
        &self,
        supports: &[Vec<usize>],
        exact: bool,
        covers_of: impl Fn(&[usize], &[usize]) -> bool,
    ) -> LayerPoset {
        let mut layers = Vec::new();
        let mut blocks: Vec<(usize, HashMap<ComponentKey, usize>)> = Vec::with_capacity(supports.len());
        let mut indexers = Vec::with_capacity(supports.len());
        for s in supports {
            let idx = ComponentIndexer::new(&self.character_rows(s));
            let start = layers.len();
            let mut keys = HashMap::new();
            for c in self.components(s) {
                if exact && self.support_grows(s, &c) {
                    continue;
                }
                let key: ComponentKey = c.iter().map(|v| idx.key(v).expect("on support")).collect();
                keys.insert(key, layers.len());
                layers.push(Layer { support: s.clone(), component: c });
            }
            blocks.push((start, keys));
            indexers.push(idx);
        }
        let mut covers = Vec::new();
        for (j, big) in supports.iter().enumerate() {
            let rb = self.rank(big);
            for (i, small) in supports.iter().enumerate() {
                if self.rank(small) + 1 != rb || !covers_of(small, big) {
                    continue;
                }
                let (start, len) = (blocks[j].0, blocks[j].1.len());
                for b in start..start + len {
                    let key: ComponentKey =
                        layers[b].component.iter().map(|v| indexers[i].key(v).expect("subset support")).collect();
                    if let Some(&a) = blocks[i].1.get(&key) {
                        covers.push((a, b));
                    }
                }
            }
        }
        let names = layers.iter().map(|l| l.name()).collect();
        let poset = FinitePoset::from_indexed(names, covers).expect("layer poset");
        LayerPoset { poset, layers }
    }

    /// Poset of layers: connected components of intersections, each named by
    /// the full set of characters vanishing on it.
    pub fn layers_poset(&self) -> LayerPoset {
        let n = self.n();
        let mut supports: Vec<Vec<usize>> = (0..1usize << n).map(|m| set_of(m, n)).collect();
        supports.sort_by(|a, b| self.rank(a).cmp(&self.rank(b)).then(a.cmp(b)));
        self.layer_poset(&supports, true, |a, b| mask_of(a) & !mask_of(b) == 0)
    }

    /// Poset of independent layers: independent sets paired with components.
    pub fn independence_poset(&self) -> LayerPoset {
        let supports = self.independent_sets();
        self.layer_poset(&supports, false, |a, b| mask_of(a) & !mask_of(b) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn five_torsion(p: u32) -> ArrangementSpec {
        ArrangementSpec::from_i64(&[&[1, 1, 1, 3], &[0, 5, 0, 5], &[0, 0, 5, 5]], p).unwrap()
    }

    #[test]
    fn validation() {
        let r = five_torsion(1).validate();
        assert!(r.essential);
        assert_eq!(r.rank, 3);
        let line = ArrangementSpec::from_i64(&[&[1], &[0]], 1).unwrap();
        assert!(!line.validate().essential);
        assert_eq!(
            ArrangementSpec::from_i64(&[&[1, 0], &[0, 0]], 1).unwrap_err(),
            ArrangementError::ZeroColumn(1)
        );
    }

    #[test]
    fn multiplicities() {
        let a = five_torsion(1);
        assert_eq!(a.multiplicity(&[]), BigInt::one());
        assert_eq!(a.multiplicity(&[0, 1]), BigInt::from(5));
        assert_eq!(a.multiplicity(&[0, 1, 2, 3]), BigInt::from(25));
        assert_eq!(five_torsion(2).multiplicity(&[0, 1]), BigInt::from(25));
        assert_eq!(five_torsion(0).multiplicity(&[0, 1]), BigInt::one());
    }

    #[test]
    fn flats_of_five_torsion() {
        let a = five_torsion(1);
        let flats = a.flats();
        let by_rank = |r| flats.iter().filter(|f| f.rank == r).count();
        assert_eq!((by_rank(0), by_rank(1), by_rank(2), by_rank(3)), (1, 4, 6, 1));
        assert!(a.closure(&[]).is_empty());
        assert_eq!(a.closure(&[0, 1]), vec![0, 1]);
    }

    #[test]
    fn layer_counts() {
        let a = five_torsion(1);
        let lp = a.layers_poset();
        assert_eq!(lp.poset.len(), 60);
        assert_eq!(lp.poset.rank_counts(), vec![1, 4, 30, 25]);
        assert_eq!(lp.poset.name(0), "{}@(0,0,0)");
        let ip = a.independence_poset();
        assert!(ip.poset.is_simplicial());
        assert_eq!(ip.poset.f_vector().unwrap(), vec![1, 4, 30, 100]);
    }

    #[test]
    fn small_layer_posets() {
        let two = ArrangementSpec::from_i64(&[&[2]], 1).unwrap();
        assert_eq!(two.layers_poset().poset.len(), 3);
        let one = ArrangementSpec::from_i64(&[&[1]], 1).unwrap();
        let lp = one.layers_poset();
        assert_eq!(lp.poset.len(), 2);
        assert_eq!(lp.poset.covers().len(), 1);
        let five = ArrangementSpec::from_i64(&[&[5]], 1).unwrap();
        assert_eq!(five.independence_poset().poset.rank_counts(), vec![1, 5]);
        let empty = ArrangementSpec::new(IntMatrix::zeros(0, 0), 1, 0).unwrap();
        assert_eq!(empty.independence_poset().poset.len(), 1);
    }

    #[test]
    fn parallel_characters_keep_their_own_points() {
        let a = ArrangementSpec::from_i64(&[&[3, -1]], 1).unwrap();
        let lp = a.layers_poset();
        assert_eq!(lp.poset.rank_counts(), vec![1, 3]);
        let names: Vec<&str> = (0..lp.poset.len()).map(|i| lp.poset.name(i)).collect();
        assert!(names.iter().any(|n| n.starts_with("{1,2}@")));
        assert_eq!(names.iter().filter(|n| n.starts_with("{1}@")).count(), 2);
    }

    #[test]
    fn linear_case_is_intersection_lattice() {
        let a = five_torsion(0);
        let lp = a.layers_poset();
        assert_eq!(lp.poset.len(), 12);
        assert_eq!(lp.poset.name(5), "{1,2}");
        assert!(lp.poset.top().is_some());
    }

    #[test]
    fn containment() {
        let five = ArrangementSpec::from_i64(&[&[5]], 1).unwrap();
        let zero = Layer { support: vec![0], component: vec![vec![BigRational::zero()]] };
        let fifth = Layer {
            support: vec![0],
            component: vec![vec![BigRational::new(BigInt::one(), BigInt::from(5))]],
        };
        assert!(five.component_contains(&zero, &zero).unwrap());
        assert!(!five.component_contains(&zero, &fifth).unwrap());
        let a = five_torsion(1);
        let lp = a.layers_poset();
        let small = lp.layers.iter().find(|l| l.support == vec![1, 2]).unwrap().clone();
        let mut shifted = small.clone();
        shifted.component[0][0] = &shifted.component[0][0] + BigRational::one();
        assert!(a.component_contains(&small, &shifted).unwrap());
    }
}
