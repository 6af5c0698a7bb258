//! Stanley's face ring of a finite simplicial poset, presented by the ideals
//! I_𝔞 of order ideals 𝔞, with graded pieces computed by exact rank.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{ActionError, PosetAction};
use crate::intlat::SparseMatrix;
use crate::poly::binomial;
use crate::poset::FinitePoset;

pub const MAX_DEGREE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceRingError {
    #[error("poset is not simplicial at {0:?}")]
    NotSimplicial(String),
    #[error("not an order ideal: {0:?} lies below an element of it")]
    NotOrderIdeal(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("degree bound {0} exceeds {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("action is not translative at {0:?}")]
    NotTranslative(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Sorted variable indices, with repetition.
pub type Monomial = Vec<u32>;

/// A polynomial as sorted (monomial, coefficient) pairs.
pub type Generator = Vec<(Monomial, i64)>;

/// Dehomogenized presentation S/I: one variable per element of P∖0̂ graded
/// by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    variables: Vec<String>,
    degrees: Vec<u32>,
    generators: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableJson {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: i64,
    pub monomial: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub variables: Vec<VariableJson>,
    pub generators: Vec<Vec<TermJson>>,
}

fn normalize(mut terms: Vec<(Monomial, i64)>) -> Generator {
    for t in &mut terms {
        t.0.sort_unstable();
    }
    let mut map: BTreeMap<Monomial, i64> = BTreeMap::new();
    for (m, c) in terms {
        *map.entry(m).or_insert(0) += c;
    }
    map.into_iter().filter(|t| t.1 != 0).collect()
}

impl GradedPresentation {
    pub fn new(variables: Vec<String>, degrees: Vec<u32>, generators: Vec<Generator>) -> Self {
        assert_eq!(variables.len(), degrees.len());
        let generators = generators.into_iter().map(normalize).collect();
        GradedPresentation { variables, degrees, generators }
    }

    /// Polynomial ring on `n` variables of degree one.
    pub fn polynomial_ring(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("x{i}")).collect(), vec![1; n], Vec::new())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn monomial_degree(&self, m: &[u32]) -> usize {
        m.iter().map(|&v| self.degrees[v as usize] as usize).sum()
    }

    /// Degree of the leading monomial, or None for the zero polynomial.
    pub fn generator_degree(&self, g: &Generator) -> Option<usize> {
        g.iter().map(|t| self.monomial_degree(&t.0)).max()
    }

    /// Every generator has all its monomials in one degree.
    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| {
            let d = self.generator_degree(g);
            g.iter().all(|t| Some(self.monomial_degree(&t.0)) == d)
        })
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            variables: self
                .variables
                .iter()
                .zip(&self.degrees)
                .map(|(n, &d)| VariableJson { name: n.clone(), degree: d })
                .collect(),
            generators: self
                .generators
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|(m, c)| TermJson {
                            coef: *c,
                            monomial: m.iter().map(|&v| self.variables[v as usize].clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PresentationJson) -> Result<Self, FaceRingError> {
        let variables: Vec<String> = json.variables.iter().map(|v| v.name.clone()).collect();
        let index: HashMap<&str, u32> = variables.iter().enumerate().map(|(i, v)| (v.as_str(), i as u32)).collect();
        let mut generators = Vec::new();
        for g in &json.generators {
            let mut terms = Vec::new();
            for t in g {
                let m = t
                    .monomial
                    .iter()
                    .map(|v| index.get(v.as_str()).copied().ok_or_else(|| FaceRingError::UnknownElement(v.clone())))
                    .collect::<Result<Vec<_>, _>>()?;
                terms.push((m, t.coef));
            }
            generators.push(terms);
        }
        let degrees = json.variables.iter().map(|v| v.degree).collect();
        Ok(Self::new(variables, degrees, generators))
    }
}

/// Monomials of each degree, in lexicographic order on sorted index lists.
#[derive(Clone, Debug)]
struct MonomialBasis {
    by_degree: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, u32>>,
}

impl MonomialBasis {
    fn new(degrees: &[u32], max: usize) -> Self {
        let mut by_degree = vec![Vec::new(); max + 1];
        let mut current = Vec::new();
        fn rec(degrees: &[u32], start: usize, left: usize, max: usize, cur: &mut Vec<u32>, out: &mut [Vec<Monomial>]) {
            out[max - left].push(cur.clone());
            for v in start..degrees.len() {
                let d = degrees[v] as usize;
                if d == 0 || d > left {
                    continue;
                }
                cur.push(v as u32);
                rec(degrees, v, left - d, max, cur, out);
                cur.pop();
            }
        }
        rec(degrees, 0, max, max, &mut current, &mut by_degree);
        for l in &mut by_degree {
            l.sort();
        }
        let index = by_degree
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect())
            .collect();
        MonomialBasis { by_degree, index }
    }

    fn count(&self, k: usize) -> usize {
        self.by_degree[k].len()
    }
}

fn multiply(m: &[u32], g: &Generator) -> Vec<(Monomial, i64)> {
    g.iter()
        .map(|(t, c)| {
            let mut p: Vec<u32> = m.iter().chain(t).copied().collect();
            p.sort_unstable();
            (p, *c)
        })
        .collect()
}

/// Rows m·g spanning the degree-k piece of the ideal, over monomial columns.
fn ideal_rows(pres: &GradedPresentation, basis: &MonomialBasis, k: usize) -> Vec<Vec<(u32, i64)>> {
    let mut rows = Vec::new();
    for g in &pres.generators {
        let Some(e) = pres.generator_degree(g) else { continue };
        if e > k {
            continue;
        }
        for m in &basis.by_degree[k - e] {
            rows.push(multiply(m, g).into_iter().map(|(p, c)| (basis.index[k][&p], c)).collect());
        }
    }
    rows
}

fn rank_of(ncols: usize, rows: &[&[Vec<(u32, i64)>]], characteristic: u64) -> usize {
    let mut m = SparseMatrix::new(ncols);
    for block in rows {
        for r in block.iter() {
            m.push_row(r.clone());
        }
    }
    m.rank(characteristic)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    pub characteristic: u64,
    pub degree: usize,
    pub values: Vec<u64>,
}

fn check_degree(d: usize) -> Result<(), FaceRingError> {
    if d > MAX_DEGREE {
        Err(FaceRingError::DegreeTooLarge(d))
    } else {
        Ok(())
    }
}

/// h_k = #monomials of degree k − rank of the degree-k piece of the ideal.
pub fn hilbert_function(pres: &GradedPresentation, d: usize, characteristic: u64) -> Result<HilbertTable, FaceRingError> {
    check_degree(d)?;
    let basis = MonomialBasis::new(&pres.degrees, d);
    let values = (0..=d)
        .map(|k| {
            let rows = ideal_rows(pres, &basis, k);
            (basis.count(k) - rank_of(basis.count(k), &[&rows], characteristic)) as u64
        })
        .collect();
    Ok(HilbertTable { characteristic, degree: d, values })
}

/// Coefficients of Σ_i f_{i−1} t^i / (1−t)^i up to degree d.
pub fn hilbert_from_f(p: &FinitePoset, d: usize) -> Result<HilbertTable, FaceRingError> {
    check_degree(d)?;
    let f = simplicial_f_vector(p)?;
    let values = (0..=d)
        .map(|k| {
            if k == 0 {
                return 1;
            }
            (1..f.len().min(k + 1))
                .map(|i| f[i] * u64::try_from(binomial(k as u64 - 1, i as u64 - 1)).unwrap())
                .sum()
        })
        .collect();
    Ok(HilbertTable { characteristic: 0, degree: d, values })
}

fn simplicial_f_vector(p: &FinitePoset) -> Result<Vec<u64>, FaceRingError> {
    if !p.is_simplicial() {
        let w = p.simplicial_witness().map(|x| p.name(x).to_string()).unwrap_or_default();
        return Err(FaceRingError::NotSimplicial(w));
    }
    Ok(p.f_vector().expect("simplicial posets are graded"))
}

/// Checks that `ideal` is closed downward and returns its membership mask.
fn ideal_mask(p: &FinitePoset, ideal: &[usize]) -> Result<Vec<bool>, FaceRingError> {
    let mut mask = vec![false; p.len()];
    for &x in ideal {
        mask[x] = true;
    }
    for &x in ideal {
        if let Some(y) = p.down_set(x).ones().find(|&y| !mask[y]) {
            return Err(FaceRingError::NotOrderIdeal(p.name(y).to_string()));
        }
    }
    Ok(mask)
}

/// Variables x_p for p ≠ 0̂, sorted by name, and the element behind each.
fn poset_variables(p: &FinitePoset) -> (Vec<String>, Vec<u32>, Vec<usize>) {
    let bottom = p.bottom().expect("simplicial posets have a bottom");
    let mut elems: Vec<usize> = (0..p.len()).filter(|&x| x != bottom).collect();
    elems.sort_by(|&a, &b| p.name(a).cmp(p.name(b)));
    let names = elems.iter().map(|&x| p.name(x).to_string()).collect();
    let degrees = elems.iter().map(|&x| p.rank(x) as u32).collect();
    (names, degrees, elems)
}

/// Generators x_p (p ∉ 𝔞) and x_p x_q − x_{p∧q} Σ_{z ∈ u_𝔞(p,q)} x_z for
/// incomparable p, q ∈ 𝔞, with x_{0̂} = 1.
pub fn stanley_ideal(p: &FinitePoset, ideal: &[usize]) -> Result<GradedPresentation, FaceRingError> {
    simplicial_f_vector(p)?;
    let mask = ideal_mask(p, ideal)?;
    let bottom = p.bottom().unwrap();
    let (names, degrees, elems) = poset_variables(p);
    let mut var = vec![u32::MAX; p.len()];
    for (i, &x) in elems.iter().enumerate() {
        var[x] = i as u32;
    }
    let x = |e: usize| -> Monomial {
        if e == bottom {
            Vec::new()
        } else {
            vec![var[e]]
        }
    };
    let mut within = fixedbitset::FixedBitSet::with_capacity(p.len());
    for (e, &m) in mask.iter().enumerate() {
        within.set(e, m);
    }
    let mut gens: Vec<Generator> = Vec::new();
    for e in 0..p.len() {
        if !mask[e] {
            gens.push(vec![(x(e), 1)]);
        }
    }
    for &a in &elems {
        for &b in &elems {
            if a >= b || !mask[a] || !mask[b] || p.leq(a, b) || p.leq(b, a) {
                continue;
            }
            let mut g = vec![(vec![var[a], var[b]], 1)];
            let mubs = p.minimal_upper_bounds(a, b, &within);
            if !mubs.is_empty() {
                let meet = p.meet(a, b).ok_or_else(|| FaceRingError::NotSimplicial(p.name(a).to_string()))?;
                for z in mubs {
                    let mut m = x(meet);
                    m.push(var[z]);
                    g.push((m, -1));
                }
            }
            gens.push(g);
        }
    }
    Ok(GradedPresentation::new(names, degrees, gens))
}

/// I_P^P, presenting the face ring A_P.
pub fn face_ring(p: &FinitePoset) -> Result<GradedPresentation, FaceRingError> {
    stanley_ideal(p, &(0..p.len()).collect::<Vec<_>>())
}

/// All order ideals of P, the empty one first, each as sorted indices.
pub fn order_ideals(p: &FinitePoset) -> Vec<Vec<usize>> {
    let order = p.linear_extension().to_vec();
    let mut out = Vec::new();
    fn rec(p: &FinitePoset, order: &[usize], i: usize, chosen: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if i == order.len() {
            out.push((0..chosen.len()).filter(|&x| chosen[x]).collect());
            return;
        }
        let x = order[i];
        rec(p, order, i + 1, chosen, out);
        if p.lower_covers(x).iter().all(|&y| chosen[y]) {
            chosen[x] = true;
            rec(p, order, i + 1, chosen, out);
            chosen[x] = false;
        }
    }
    let mut chosen = vec![false; p.len()];
    rec(p, &order, 0, &mut chosen, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealLatticeDegree {
    pub degree: usize,
    pub sum: bool,
    pub intersection: bool,
    pub decomposition: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealLatticeReport {
    pub degrees: Vec<IdealLatticeDegree>,
    pub holds: bool,
}

/// Sparse spanning rows of an ideal, one list per degree.
type Spans = std::rc::Rc<Vec<Vec<Vec<(u32, i64)>>>>;

/// Degreewise spans of the ideals I_𝔞 of one poset, cached per order ideal.
pub struct IdealLattice<'a> {
    poset: &'a FinitePoset,
    degree: usize,
    characteristic: u64,
    basis: MonomialBasis,
    elems: Vec<usize>,
    spans: RefCell<HashMap<Vec<usize>, Spans>>,
    decompositions: RefCell<HashMap<Vec<usize>, std::rc::Rc<Vec<bool>>>>,
}

impl<'a> IdealLattice<'a> {
    pub fn new(poset: &'a FinitePoset, degree: usize, characteristic: u64) -> Result<Self, FaceRingError> {
        check_degree(degree)?;
        simplicial_f_vector(poset)?;
        let (_, degrees, elems) = poset_variables(poset);
        Ok(IdealLattice {
            poset,
            degree,
            characteristic,
            basis: MonomialBasis::new(&degrees, degree),
            elems,
            spans: RefCell::default(),
            decompositions: RefCell::default(),
        })
    }

    fn spans(&self, ideal: &[usize]) -> Result<Spans, FaceRingError> {
        if let Some(s) = self.spans.borrow().get(ideal) {
            return Ok(s.clone());
        }
        let pres = stanley_ideal(self.poset, ideal)?;
        let rows: Vec<_> = (0..=self.degree).map(|k| ideal_rows(&pres, &self.basis, k)).collect();
        let rc = std::rc::Rc::new(rows);
        self.spans.borrow_mut().insert(ideal.to_vec(), rc.clone());
        Ok(rc)
    }

    fn rank(&self, k: usize, blocks: &[&[Vec<(u32, i64)>]]) -> usize {
        rank_of(self.basis.count(k), blocks, self.characteristic)
    }

    /// Degree-k piece of I_𝔟 lies in that of I_𝔞, for every k ≤ D.
    pub fn contains(&self, a: &[usize], b: &[usize]) -> Result<bool, FaceRingError> {
        let (sa, sb) = (self.spans(a)?, self.spans(b)?);
        Ok((0..=self.degree).all(|k| self.rank(k, &[&sa[k], &sb[k]]) == self.rank(k, &[&sa[k]])))
    }

    /// Image of a monomial under φ_q: x_p ↦ ∏_{atoms v ≤ p} x_v if p ≤ q, else 0.
    fn phi(&self, q: usize, m: &[u32]) -> Option<Monomial> {
        let p = self.poset;
        let mut out = Vec::new();
        for &v in m {
            let e = self.elems[v as usize];
            if !p.leq(e, q) {
                return None;
            }
            out.extend(p.down_set(e).ones().filter(|&a| p.rank(a) == 1).map(|a| a as u32));
        }
        out.sort_unstable();
        Some(out)
    }

    /// Degreewise kernel of ⊕_{q ∈ 𝔞} φ_q, as (dimension, whether `rows` lie in it).
    fn kernel_check(&self, qs: &[usize], k: usize, rows: &[Vec<(u32, i64)>]) -> (usize, bool) {
        let monos = &self.basis.by_degree[k];
        let mut targets: HashMap<(usize, Monomial), u32> = HashMap::new();
        let images: Vec<Vec<(u32, i64)>> = monos
            .iter()
            .map(|m| {
                qs.iter()
                    .filter_map(|&q| self.phi(q, m).map(|t| (q, t)))
                    .map(|key| {
                        let next = targets.len() as u32;
                        (*targets.entry(key).or_insert(next), 1)
                    })
                    .collect()
            })
            .collect();
        let mut phi = SparseMatrix::new(targets.len());
        for r in &images {
            phi.push_row(r.clone());
        }
        let kernel_dim = monos.len() - phi.rank(self.characteristic);
        let inside = rows.iter().all(|r| {
            let mut acc: HashMap<u32, i64> = HashMap::new();
            for &(c, v) in r {
                for &(t, w) in &images[c as usize] {
                    *acc.entry(t).or_insert(0) += v * w;
                }
            }
            acc.values().all(|&x| x == 0)
        });
        (kernel_dim, inside)
    }

    /// I_𝔞 = ⋂_{q ∈ 𝔞} I_{(q)} per degree, with each I_{(q)} identified with
    /// ker φ_q per degree.
    fn decomposition(&self, a: &[usize]) -> Result<std::rc::Rc<Vec<bool>>, FaceRingError> {
        if let Some(d) = self.decompositions.borrow().get(a) {
            return Ok(d.clone());
        }
        let sa = self.spans(a)?;
        let mut ok = vec![true; self.degree + 1];
        for &q in a {
            let principal: Vec<usize> = self.poset.down_set(q).ones().collect();
            let sq = self.spans(&principal)?;
            for (k, flag) in ok.iter_mut().enumerate() {
                let (dim, inside) = self.kernel_check(&[q], k, &sq[k]);
                *flag &= inside && dim == self.rank(k, &[&sq[k]]);
            }
        }
        for (k, flag) in ok.iter_mut().enumerate() {
            let (dim, inside) = self.kernel_check(a, k, &sa[k]);
            *flag &= inside && dim == self.rank(k, &[&sa[k]]);
        }
        let rc = std::rc::Rc::new(ok);
        self.decompositions.borrow_mut().insert(a.to_vec(), rc.clone());
        Ok(rc)
    }

    pub fn check(&self, a: &[usize], b: &[usize]) -> Result<IdealLatticeReport, FaceRingError> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        ideal_mask(self.poset, &a)?;
        ideal_mask(self.poset, &b)?;
        let meet: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
        let mut join: Vec<usize> = a.iter().chain(&b).copied().collect();
        join.sort_unstable();
        join.dedup();
        let (sa, sb, sm, sj) = (self.spans(&a)?, self.spans(&b)?, self.spans(&meet)?, self.spans(&join)?);
        let (da, db) = (self.decomposition(&a)?, self.decomposition(&b)?);
        let degrees: Vec<IdealLatticeDegree> = (0..=self.degree)
            .map(|k| {
                let ra = self.rank(k, &[&sa[k]]);
                let rb = self.rank(k, &[&sb[k]]);
                let rab = self.rank(k, &[&sa[k], &sb[k]]);
                let rm = self.rank(k, &[&sm[k]]);
                let rj = self.rank(k, &[&sj[k]]);
                let sum = rab == rm && self.rank(k, &[&sa[k], &sb[k], &sm[k]]) == rm;
                let intersection = rj == ra + rb - rab
                    && self.rank(k, &[&sa[k], &sj[k]]) == ra
                    && self.rank(k, &[&sb[k], &sj[k]]) == rb;
                IdealLatticeDegree { degree: k, sum, intersection, decomposition: da[k] && db[k] }
            })
            .collect();
        let holds = degrees.iter().all(|d| d.sum && d.intersection && d.decomposition);
        Ok(IdealLatticeReport { degrees, holds })
    }
}

pub fn ideal_lattice_check(
    p: &FinitePoset,
    a: &[usize],
    b: &[usize],
    d: usize,
    characteristic: u64,
) -> Result<IdealLatticeReport, FaceRingError> {
    IdealLattice::new(p, d, characteristic)?.check(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub degree: usize,
    pub invariant: Vec<u64>,
    pub quotient: Vec<u64>,
    pub holds: bool,
}

/// Dimensions of the G-fixed parts of the graded pieces of A_P against the
/// Hilbert function of A_{P/G}, in characteristic 0.
pub fn invariant_hilbert_check(action: &PosetAction, d: usize) -> Result<InvariantReport, FaceRingError> {
    check_degree(d)?;
    if let Some(w) = action.translativity_witness() {
        return Err(FaceRingError::NotTranslative(w.element));
    }
    let p = action.poset();
    let pres = face_ring(p)?;
    let (_, _, elems) = poset_variables(p);
    let mut var = vec![u32::MAX; p.len()];
    for (i, &x) in elems.iter().enumerate() {
        var[x] = i as u32;
    }
    let var_perms: Vec<Vec<u32>> = action
        .group()
        .elements()
        .iter()
        .map(|g| elems.iter().map(|&x| var[g[x] as usize]).collect())
        .collect();
    let basis = MonomialBasis::new(&pres.degrees, d);
    let mut invariant = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let monos = &basis.by_degree[k];
        let mut orbit_of: HashMap<Monomial, u32> = HashMap::new();
        let columns: Vec<u32> = monos
            .iter()
            .map(|m| {
                let canon = var_perms
                    .iter()
                    .map(|g| {
                        let mut i: Vec<u32> = m.iter().map(|&v| g[v as usize]).collect();
                        i.sort_unstable();
                        i
                    })
                    .min()
                    .unwrap();
                let next = orbit_of.len() as u32;
                *orbit_of.entry(canon).or_insert(next)
            })
            .collect();
        let mut averaged = SparseMatrix::new(orbit_of.len());
        for r in ideal_rows(&pres, &basis, k) {
            averaged.push_row(r.into_iter().map(|(c, v)| (columns[c as usize], v)).collect());
        }
        invariant.push((orbit_of.len() - averaged.rank_rational()) as u64);
    }
    let quotient = hilbert_function(&face_ring(&action.quotient_poset()?)?, d, 0)?.values;
    Ok(InvariantReport { degree: d, holds: invariant == quotient, invariant, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{doubled_triangle, SimplicialComplexData};

    fn simplex(n: usize) -> FinitePoset {
        let f: Vec<Vec<String>> = vec![(0..n).map(|i| format!("v{i}")).collect()];
        SimplicialComplexData::from_facet_names(&f).face_poset()
    }

    #[test]
    fn polynomial_rings() {
        let t = hilbert_function(&GradedPresentation::polynomial_ring(3), 3, 0).unwrap();
        assert_eq!(t.values, vec![1, 3, 6, 10]);
        let abc = GradedPresentation::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![1, 1, 1],
            vec![vec![(vec![0, 1, 2], 1)]],
        );
        assert_eq!(hilbert_function(&abc, 3, 0).unwrap().values, vec![1, 3, 6, 9]);
        assert_eq!(hilbert_function(&abc, 13, 0), Err(FaceRingError::DegreeTooLarge(13)));
    }

    #[test]
    fn full_simplex_is_polynomial() {
        let p = simplex(3);
        let pres = face_ring(&p).unwrap();
        assert!(pres.is_homogeneous());
        assert_eq!(hilbert_function(&pres, 4, 0).unwrap().values, vec![1, 3, 6, 10, 15]);
        assert_eq!(hilbert_from_f(&p, 4).unwrap().values, vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn doubled_triangle_tables() {
        let p = doubled_triangle();
        let pres = face_ring(&p).unwrap();
        assert!(pres.is_homogeneous());
        assert_eq!(hilbert_from_f(&p, 3).unwrap().values, vec![1, 3, 7, 13]);
        assert_eq!(hilbert_function(&pres, 3, 0).unwrap().values, vec![1, 3, 7, 13]);
        assert_eq!(hilbert_function(&pres, 3, 2).unwrap().values, vec![1, 3, 7, 13]);
        let json = pres.to_json();
        let l1l2 = json
            .generators
            .iter()
            .find(|g| g.iter().any(|t| t.monomial == ["l1", "l2"]))
            .expect("l1 l2 relation");
        assert_eq!(l1l2.len(), 3);
        assert_eq!(GradedPresentation::from_json(&json).unwrap(), pres);
    }

    #[test]
    fn bottom_ideal_is_the_field() {
        let p = doubled_triangle();
        let b = p.bottom().unwrap();
        let pres = stanley_ideal(&p, &[b]).unwrap();
        assert_eq!(pres.generators().len(), p.len() - 1);
        assert_eq!(hilbert_function(&pres, 3, 0).unwrap().values, vec![1, 0, 0, 0]);
        let empty = stanley_ideal(&p, &[]).unwrap();
        assert_eq!(hilbert_function(&empty, 2, 0).unwrap().values, vec![0, 0, 0]);
        let a = p.index_of("a").unwrap();
        assert!(matches!(stanley_ideal(&p, &[a]), Err(FaceRingError::NotOrderIdeal(_))));
    }

    #[test]
    fn singleton_and_edge() {
        let b1 = simplex(1);
        assert_eq!(hilbert_from_f(&b1, 4).unwrap().values, vec![1, 1, 1, 1, 1]);
        let pt = FinitePoset::new(&["0"], &[]).unwrap();
        assert_eq!(hilbert_from_f(&pt, 3).unwrap().values, vec![1, 0, 0, 0]);
        assert_eq!(hilbert_function(&face_ring(&pt).unwrap(), 3, 0).unwrap().values, vec![1, 0, 0, 0]);
    }

    #[test]
    fn doubled_triangle_lattice() {
        let p = doubled_triangle();
        let down = |x: &str| -> Vec<usize> { p.down_set(p.index_of(x).unwrap()).ones().collect() };
        let r = ideal_lattice_check(&p, &down("T1"), &down("T2"), 4, 0).unwrap();
        assert!(r.holds, "{r:?}");
        let lattice = IdealLattice::new(&p, 3, 0).unwrap();
        assert!(lattice.contains(&down("l1"), &down("T1")).unwrap());
        assert!(!lattice.contains(&down("T1"), &down("l1")).unwrap());
        assert_eq!(order_ideals(&p)[0], Vec::<usize>::new());
    }

    #[test]
    fn order_ideal_count() {
        assert_eq!(order_ideals(&crate::poset::boolean_lattice(2)).len(), 6);
    }

    #[test]
    fn invariants_of_trivial_action() {
        let act = PosetAction::trivial(doubled_triangle());
        let r = invariant_hilbert_check(&act, 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.invariant, vec![1, 3, 7, 13]);
    }

    #[test]
    fn swap_is_rejected() {
        let c = SimplicialComplexData::from_facet_names(&[vec!["a", "b"]]);
        let act = crate::action::ComplexAction::new(c, vec![vec![1, 0]], None).unwrap().face_action();
        assert!(matches!(invariant_hilbert_check(&act, 2), Err(FaceRingError::NotTranslative(_))));
    }
}
