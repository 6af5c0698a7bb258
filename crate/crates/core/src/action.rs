//! Finite permutation groups acting on simplicial posets and complexes:
//! translativity, quotient posets, decoupled actions and shellings of orbit
//! complexes.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{is_cm_complex, is_cm_poset, CmReport};
use crate::poset::{is_subset, ComplexError, FinitePoset, PosetError, PosetJson, SimplicialComplexData};

pub const DEFAULT_GROUP_LIMIT: usize = 100_000;

/// A permutation of `0..n` in image form: `x ↦ perm[x]`.
pub type Perm = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("generator {0} is not a permutation")]
    NotPermutation(usize),
    #[error("generator {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("group order exceeds {0}")]
    GroupTooLarge(usize),
    #[error("no decomposition supplied")]
    NoDecompositionSupplied,
    #[error("decomposition element is not in the group")]
    NotInGroup,
    #[error("complex is not pure")]
    NotPure,
    #[error("action is not decoupled: {0}")]
    NotDecoupled(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("order does not list every facet exactly once: {0}")]
    OrderIncomplete(String),
    #[error("preconditions failed: {0}")]
    PreconditionsFailed(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// x ↦ a(b(x))
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| (x as usize) < p.len() && !std::mem::replace(&mut seen[x as usize], true))
}

/// A finite permutation group enumerated by closure, identity first.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: &[Perm], limit: usize) -> Result<Self, ActionError> {
        let id = identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let h = compose(g, &elements[i]);
                if !index.contains_key(&h) {
                    if elements.len() == limit {
                        return Err(ActionError::GroupTooLarge(limit));
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        Ok(PermGroup { degree, elements, index })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &[u32]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .enumerate()
            .all(|(i, a)| self.elements[..i].iter().all(|b| compose(a, b) == compose(b, a)))
    }

    /// Subgroup generated by `generators`, as indices in enumeration order.
    pub fn subgroup(&self, generators: &[Perm]) -> Result<Vec<usize>, ActionError> {
        if generators.iter().any(|g| self.index_of(g).is_none()) {
            return Err(ActionError::NotInGroup);
        }
        let sub = PermGroup::generate(self.degree, generators, self.order())?;
        Ok(sub.elements.iter().map(|p| self.index[p]).collect())
    }
}

/// Action JSON: `{"poset": …, "generators": [{element: image}, …]}`;
/// unlisted elements are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub poset: PosetJson,
    pub generators: Vec<BTreeMap<String, String>>,
}

fn perm_from_map(
    map: &BTreeMap<String, String>,
    n: usize,
    lookup: impl Fn(&str) -> Option<usize>,
) -> Result<Perm, ActionError> {
    let mut p = identity(n);
    for (k, v) in map {
        let x = lookup(k).ok_or_else(|| ActionError::UnknownElement(k.clone()))?;
        let y = lookup(v).ok_or_else(|| ActionError::UnknownElement(v.clone()))?;
        p[x] = y as u32;
    }
    Ok(p)
}

fn perm_to_map(p: &[u32], name: impl Fn(usize) -> String) -> BTreeMap<String, String> {
    p.iter()
        .enumerate()
        .filter(|&(x, &y)| x != y as usize)
        .map(|(x, &y)| (name(x), name(y as usize)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslativityWitness {
    pub element: String,
    pub image: String,
    pub upper_bound: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslativityReport {
    pub translative: bool,
    pub witness: Option<TranslativityWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialQuotientReport {
    pub translative: bool,
    pub quotient_simplicial: bool,
    pub holds: bool,
}

/// A finite group acting on a finite poset by automorphisms.
#[derive(Clone, Debug)]
pub struct PosetAction {
    poset: FinitePoset,
    generators: Vec<Perm>,
    group: PermGroup,
}

impl PosetAction {
    pub fn new(poset: FinitePoset, generators: Vec<Perm>) -> Result<Self, ActionError> {
        Self::with_limit(poset, generators, DEFAULT_GROUP_LIMIT)
    }

    pub fn with_limit(poset: FinitePoset, generators: Vec<Perm>, limit: usize) -> Result<Self, ActionError> {
        let n = poset.len();
        let covers: HashSet<(usize, usize)> = poset.covers().into_iter().collect();
        for (k, g) in generators.iter().enumerate() {
            if g.len() != n || !is_permutation(g) {
                return Err(ActionError::NotPermutation(k));
            }
            if covers.iter().any(|&(x, y)| !covers.contains(&(g[x] as usize, g[y] as usize))) {
                return Err(ActionError::NotAutomorphism(k));
            }
        }
        let group = PermGroup::generate(n, &generators, limit)?;
        Ok(PosetAction { poset, generators, group })
    }

    pub fn trivial(poset: FinitePoset) -> Self {
        Self::new(poset, Vec::new()).expect("trivial action")
    }

    pub fn from_json(json: &ActionJson) -> Result<Self, ActionError> {
        let poset = FinitePoset::from_json(&json.poset)?;
        let n = poset.len();
        let gens = json
            .generators
            .iter()
            .map(|m| perm_from_map(m, n, |s| poset.index_of(s)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(poset, gens)
    }

    pub fn to_json(&self) -> ActionJson {
        ActionJson {
            poset: self.poset.to_json(),
            generators: self.generators.iter().map(|g| perm_to_map(g, |i| self.poset.name(i).to_string())).collect(),
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.group.elements().iter().map(|g| g[x] as usize).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Orbits ordered by their smallest element index.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.poset.len()];
        let mut out = Vec::new();
        for x in 0..self.poset.len() {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.group.element(g)[x] as usize == x).collect()
    }

    /// First (p, gp) with gp ≠ p and {p, gp} bounded above.
    pub fn translativity_witness(&self) -> Option<TranslativityWitness> {
        for p in 0..self.poset.len() {
            for q in self.orbit(p) {
                if q == p {
                    continue;
                }
                let mut common = self.poset.up_set(p).clone();
                common.intersect_with(self.poset.up_set(q));
                if let Some(u) = common.ones().next() {
                    return Some(TranslativityWitness {
                        element: self.poset.name(p).to_string(),
                        image: self.poset.name(q).to_string(),
                        upper_bound: self.poset.name(u).to_string(),
                    });
                }
            }
        }
        None
    }

    pub fn is_translative(&self) -> TranslativityReport {
        let witness = self.translativity_witness();
        TranslativityReport { translative: witness.is_none(), witness }
    }

    /// Element index ↦ orbit index, orbits as in [`PosetAction::orbits`].
    pub fn quotient_map(&self) -> Vec<usize> {
        let mut map = vec![0; self.poset.len()];
        for (k, o) in self.orbits().iter().enumerate() {
            for &x in o {
                map[x] = k;
            }
        }
        map
    }

    /// Orbits ordered by Gp ≤ Gq iff gp ≤ q for some g, each named after its
    /// lexicographically smallest member.
    pub fn quotient_poset(&self) -> Result<FinitePoset, ActionError> {
        let orbits = self.orbits();
        let names = orbits
            .iter()
            .map(|o| o.iter().map(|&x| self.poset.name(x)).min().unwrap().to_string())
            .collect();
        let leq = |a: usize, b: usize| {
            let q = orbits[b][0];
            orbits[a].iter().any(|&p| self.poset.leq(p, q))
        };
        Ok(FinitePoset::from_order(names, leq)?)
    }

    pub fn simplicial_quotient_check(&self) -> Result<SimplicialQuotientReport, ActionError> {
        let translative = self.translativity_witness().is_none();
        let quotient_simplicial = self.quotient_poset()?.is_simplicial();
        Ok(SimplicialQuotientReport { translative, quotient_simplicial, holds: translative == quotient_simplicial })
    }
}

/// Complex action JSON: vertex maps as generators and an optional
/// decomposition given as generator lists of the summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexActionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    pub facets: Vec<Vec<String>>,
    pub generators: Vec<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<Vec<BTreeMap<String, String>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecoupledReport {
    pub decoupled: bool,
    pub failure: Option<String>,
    pub witness: Option<Vec<String>>,
}

impl DecoupledReport {
    fn fail(failure: &str, witness: Option<Vec<String>>) -> Self {
        DecoupledReport { decoupled: false, failure: Some(failure.to_string()), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingReport {
    pub shelling: bool,
    pub witness: Option<(Vec<String>, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HcmReport {
    pub quotient_elements: usize,
    pub quotient: CmReport,
}

/// A finite group acting on a simplicial complex through vertex permutations.
#[derive(Clone, Debug)]
pub struct ComplexAction {
    complex: SimplicialComplexData,
    generators: Vec<Perm>,
    group: PermGroup,
    decomposition: Option<Vec<Vec<usize>>>,
}

impl ComplexAction {
    pub fn new(
        complex: SimplicialComplexData,
        generators: Vec<Perm>,
        decomposition: Option<Vec<Vec<Perm>>>,
    ) -> Result<Self, ActionError> {
        let n = complex.vertices().len();
        let facets: HashSet<&Vec<u32>> = complex.facets().iter().collect();
        for (k, g) in generators.iter().enumerate() {
            if g.len() != n || !is_permutation(g) {
                return Err(ActionError::NotPermutation(k));
            }
            if complex.facets().iter().any(|f| !facets.contains(&apply(g, f))) {
                return Err(ActionError::NotAutomorphism(k));
            }
        }
        let group = PermGroup::generate(n, &generators, DEFAULT_GROUP_LIMIT)?;
        let decomposition = decomposition
            .map(|parts| parts.iter().map(|gens| group.subgroup(gens)).collect::<Result<Vec<_>, _>>())
            .transpose()?;
        Ok(ComplexAction { complex, generators, group, decomposition })
    }

    pub fn from_json(json: &ComplexActionJson) -> Result<Self, ActionError> {
        let complex = match &json.vertices {
            Some(v) => SimplicialComplexData::new(v.clone(), json.facets.clone())?,
            None => SimplicialComplexData::from_facet_names(&json.facets),
        };
        let n = complex.vertices().len();
        let lookup = |s: &str| complex.vertex_index(s).map(|i| i as usize);
        let perms = |maps: &[BTreeMap<String, String>]| {
            maps.iter().map(|m| perm_from_map(m, n, lookup)).collect::<Result<Vec<_>, _>>()
        };
        let gens = perms(&json.generators)?;
        let dec = json.decomposition.as_ref().map(|d| d.iter().map(|g| perms(g)).collect::<Result<Vec<_>, _>>()).transpose()?;
        Self::new(complex, gens, dec)
    }

    pub fn to_json(&self) -> ComplexActionJson {
        let name = |i: usize| self.complex.vertices()[i].clone();
        ComplexActionJson {
            vertices: Some(self.complex.vertices().to_vec()),
            facets: self.complex.facet_names(),
            generators: self.generators.iter().map(|g| perm_to_map(g, name)).collect(),
            decomposition: self.decomposition.as_ref().map(|d| {
                d.iter()
                    .map(|h| h.iter().skip(1).map(|&g| perm_to_map(self.group.element(g), name)).collect())
                    .collect()
            }),
        }
    }

    pub fn complex(&self) -> &SimplicialComplexData {
        &self.complex
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Summands as group-element indices in enumeration order, identity first.
    pub fn decomposition(&self) -> Option<&[Vec<usize>]> {
        self.decomposition.as_deref()
    }

    pub fn stabilizer(&self, face: &[u32]) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| apply(self.group.element(g), face) == face).collect()
    }

    /// The induced action on the face poset (including the empty face).
    pub fn face_action(&self) -> PosetAction {
        let poset = self.complex.face_poset();
        let faces: Vec<Vec<u32>> = self.complex.faces().into_iter().flatten().collect();
        let position = |f: &[u32]| poset.index_of(&self.complex.face_label(f)).expect("face");
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut p = identity(poset.len());
                for f in &faces {
                    p[position(f)] = position(&apply(g, f)) as u32;
                }
                p
            })
            .collect();
        PosetAction::new(poset, gens).expect("vertex maps induce face automorphisms")
    }

    /// Facet ordering x_0..x_d with stab(β∖x_i) = H_i, as positions in `facet`.
    fn facet_labelling(&self, facet: &[u32], parts: &[Vec<usize>]) -> Option<Vec<usize>> {
        let sorted = |v: &[usize]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v
        };
        let targets: Vec<Vec<usize>> = parts.iter().map(|h| sorted(h)).collect();
        let mut used = vec![false; facet.len()];
        let mut labels = Vec::with_capacity(parts.len());
        for t in &targets {
            let pos = (0..facet.len()).find(|&k| {
                if used[k] {
                    return false;
                }
                let rest: Vec<u32> = facet.iter().copied().filter(|&v| v != facet[k]).collect();
                self.stabilizer(&rest) == *t
            })?;
            used[pos] = true;
            labels.push(pos);
        }
        Some(labels)
    }

    fn is_direct_sum(&self, parts: &[Vec<usize>]) -> bool {
        let g = &self.group;
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[..i] {
                for &x in a {
                    for &y in b {
                        let (x, y) = (g.element(x), g.element(y));
                        if compose(x, y) != compose(y, x) {
                            return false;
                        }
                    }
                }
            }
        }
        let mut products: HashSet<Perm> = HashSet::from([identity(g.degree())]);
        for h in parts {
            products = products.iter().flat_map(|p| h.iter().map(move |&x| compose(g.element(x), p))).collect();
        }
        let expected: usize = parts.iter().map(|h| h.len()).product();
        products.len() == expected && expected == g.order()
    }

    pub fn is_decoupled(&self) -> Result<DecoupledReport, ActionError> {
        let parts = self.decomposition.as_ref().ok_or(ActionError::NoDecompositionSupplied)?;
        if !self.complex.is_pure() {
            return Err(ActionError::NotPure);
        }
        if let Some(w) = self.face_action().translativity_witness() {
            return Ok(DecoupledReport::fail("not translative", Some(vec![w.element, w.image])));
        }
        let d = self.complex.dim();
        if parts.len() as isize != d + 1 {
            return Ok(DecoupledReport::fail("number of summands differs from d+1", None));
        }
        if parts.iter().any(|h| h.len() < 2) {
            return Ok(DecoupledReport::fail("trivial summand", None));
        }
        if !self.is_direct_sum(parts) {
            return Ok(DecoupledReport::fail("not a direct sum", None));
        }
        for facet in self.complex.facets() {
            if self.facet_labelling(facet, parts).is_none() {
                return Ok(DecoupledReport::fail("facet stabilizers do not match", Some(self.complex.face_names(facet))));
            }
        }
        if d == 0 {
            for f in self.complex.facets() {
                if self.stabilizer(f).len() > 1 {
                    return Ok(DecoupledReport::fail("nontrivial vertex stabilizer", Some(self.complex.face_names(f))));
                }
            }
        }
        Ok(DecoupledReport { decoupled: true, failure: None, witness: None })
    }

    /// Σ|_{Gσ}: all faces contained in some gσ.
    pub fn orbit_complex(&self, sigma: &[u32]) -> SimplicialComplexData {
        let faces = self.group.elements().iter().map(|g| apply(g, sigma)).collect();
        self.complex.generated_by(faces)
    }

    /// Facets of the orbit complex of σ, listed by the lexicographic product
    /// of the summands L_x = stab(β∖x), x ∈ σ, each enumerated identity first.
    pub fn shelling_order(&self, sigma: &[u32]) -> Result<Vec<Vec<u32>>, ActionError> {
        let report = self.is_decoupled()?;
        if !report.decoupled {
            return Err(ActionError::NotDecoupled(report.failure.unwrap_or_default()));
        }
        if !self.group.is_abelian() {
            return Err(ActionError::NotAbelian);
        }
        let parts = self.decomposition.as_ref().unwrap();
        let beta = self
            .complex
            .facets()
            .iter()
            .find(|f| is_subset(sigma, f))
            .ok_or_else(|| ActionError::NotDecoupled("σ is not a face".into()))?;
        let labels = self.facet_labelling(beta, parts).expect("decoupled");
        let summands: Vec<&Vec<usize>> = sigma
            .iter()
            .map(|v| {
                let pos = beta.iter().position(|w| w == v).unwrap();
                &parts[labels.iter().position(|&l| l == pos).unwrap()]
            })
            .collect();
        let mut order = Vec::new();
        let mut digits = vec![0usize; summands.len()];
        loop {
            let mut g = identity(self.group.degree());
            for (h, &k) in summands.iter().zip(&digits) {
                g = compose(self.group.element(h[k]), &g);
            }
            order.push(apply(&g, sigma));
            let mut i = summands.len();
            loop {
                if i == 0 {
                    return Ok(order);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < summands[i].len() {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    pub fn quotient_hcm_check(&self) -> Result<HcmReport, ActionError> {
        let report = self.is_decoupled()?;
        if !report.decoupled {
            return Err(ActionError::PreconditionsFailed(format!(
                "not decoupled: {}",
                report.failure.unwrap_or_default()
            )));
        }
        if !self.group.is_abelian() {
            return Err(ActionError::PreconditionsFailed("group is not abelian".into()));
        }
        if !is_cm_complex(&self.complex, 0).cm {
            return Err(ActionError::PreconditionsFailed("complex is not Cohen-Macaulay over ℚ".into()));
        }
        let quotient = self.face_action().quotient_poset()?.without_bottom()?;
        Ok(HcmReport { quotient_elements: quotient.len(), quotient: is_cm_poset(&quotient, 0) })
    }
}

/// Image of a face under a vertex permutation, sorted.
pub fn apply(g: &[u32], face: &[u32]) -> Vec<u32> {
    let mut f: Vec<u32> = face.iter().map(|&v| g[v as usize]).collect();
    f.sort_unstable();
    f
}

/// Pairwise criterion: for m_1 ≺ m_2 some m_3 ≺ m_2 and x ∈ m_2 satisfy
/// m_1 ∩ m_2 ⊆ m_3 ∩ m_2 = m_2 ∖ {x}.
pub fn verify_shelling(complex: &SimplicialComplexData, order: &[Vec<u32>]) -> Result<ShellingReport, ActionError> {
    if !complex.is_pure() {
        return Err(ActionError::NotPure);
    }
    let mut sorted: Vec<Vec<u32>> = order.to_vec();
    sorted.sort();
    let before = sorted.len();
    sorted.dedup();
    if sorted.len() != before {
        return Err(ActionError::OrderIncomplete("repeated facet".into()));
    }
    if sorted != complex.facets() {
        return Err(ActionError::OrderIncomplete("facet set differs".into()));
    }
    for (j, m2) in order.iter().enumerate() {
        let missing: Vec<u32> = order[..j]
            .iter()
            .filter_map(|m3| {
                let outside: Vec<u32> = m2.iter().copied().filter(|v| !m3.contains(v)).collect();
                (outside.len() == 1).then(|| outside[0])
            })
            .collect();
        for m1 in &order[..j] {
            if !missing.iter().any(|x| !m1.contains(x)) {
                return Ok(ShellingReport {
                    shelling: false,
                    witness: Some((complex.face_names(m1), complex.face_names(m2))),
                });
            }
        }
    }
    Ok(ShellingReport { shelling: true, witness: None })
}

/// K_{3,3} on a0..a2, b0..b2 with ℤ/3 × ℤ/3 cycling each side, H_0 on the
/// a-side and H_1 on the b-side.
pub fn k33_action() -> ComplexAction {
    let facets: Vec<Vec<String>> =
        (0..3).flat_map(|i| (0..3).map(move |j| vec![format!("a{i}"), format!("b{j}")])).collect();
    let complex = SimplicialComplexData::from_facet_names(&facets);
    let ra: Perm = vec![1, 2, 0, 3, 4, 5];
    let rb: Perm = vec![0, 1, 2, 4, 5, 3];
    ComplexAction::new(complex, vec![ra.clone(), rb.clone()], Some(vec![vec![ra], vec![rb]])).expect("K33 action")
}
