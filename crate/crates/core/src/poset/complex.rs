use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("facet uses unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("facet repeats vertex {0:?}")]
    RepeatedVertex(String),
}

/// Complex JSON: `{"vertices": [...], "facets": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

/// A finite simplicial complex given by its facets. Vertices are stored in
/// lexicographic order and faces as sorted index lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplexData {
    vertices: Vec<String>,
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplexData {
    /// Non-maximal facets are discarded. No facets means the complex {∅}.
    pub fn new(mut vertices: Vec<String>, facets: Vec<Vec<String>>) -> Result<Self, ComplexError> {
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::DuplicateVertex(w[0].clone()));
            }
        }
        let index: HashMap<&str, u32> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i as u32)).collect();
        let mut idx = Vec::with_capacity(facets.len());
        for f in &facets {
            let mut face = Vec::with_capacity(f.len());
            for v in f {
                face.push(*index.get(v.as_str()).ok_or_else(|| ComplexError::UnknownVertex(v.clone()))?);
            }
            face.sort_unstable();
            if let Some(w) = face.windows(2).find(|w| w[0] == w[1]) {
                return Err(ComplexError::RepeatedVertex(vertices[w[0] as usize].clone()));
            }
            idx.push(face);
        }
        Ok(Self::from_indexed(vertices, idx))
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self, ComplexError> {
        Self::new(json.vertices.clone(), json.facets.clone())
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson { vertices: self.vertices.clone(), facets: self.facet_names() }
    }

    /// `vertices` must already be sorted; facets are sorted index lists.
    pub(crate) fn from_indexed(vertices: Vec<String>, facets: Vec<Vec<u32>>) -> Self {
        let mut facets: Vec<Vec<u32>> = facets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        facets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let mut kept: Vec<Vec<u32>> = Vec::new();
        for f in facets {
            if !kept.iter().any(|g| is_subset(&f, g)) {
                kept.push(f);
            }
        }
        kept.retain(|f| !f.is_empty());
        if kept.is_empty() {
            kept.push(Vec::new());
        }
        kept.sort();
        SimplicialComplexData { vertices, facets: kept }
    }

    /// Builds a complex from facets over arbitrary vertex names.
    pub fn from_facet_names<S: AsRef<str>>(facets: &[Vec<S>]) -> Self {
        let mut verts: BTreeSet<String> = BTreeSet::new();
        for f in facets {
            verts.extend(f.iter().map(|v| v.as_ref().to_string()));
        }
        let facets = facets
            .iter()
            .map(|f| f.iter().map(|v| v.as_ref().to_string()).collect())
            .collect();
        Self::new(verts.into_iter().collect(), facets).expect("well-formed facets")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<u32> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok().map(|i| i as u32)
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| self.face_names(f)).collect()
    }

    pub fn face_names(&self, face: &[u32]) -> Vec<String> {
        face.iter().map(|&v| self.vertices[v as usize].clone()).collect()
    }

    pub fn face_label(&self, face: &[u32]) -> String {
        format!("{{{}}}", self.face_names(face).join(","))
    }

    /// −1 for {∅}.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.len() as isize - 1 == d)
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// Faces grouped by size: `faces()[k]` lists the faces with k vertices.
    pub fn faces(&self) -> Vec<Vec<Vec<u32>>> {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for f in &self.facets {
            let n = f.len();
            for mask in 0u64..1 << n {
                let face: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                seen.insert(face);
            }
        }
        let mut by_size = vec![Vec::new(); (self.dim() + 2) as usize];
        for face in seen {
            by_size[face.len()].push(face);
        }
        for l in &mut by_size {
            l.sort();
        }
        by_size
    }

    /// lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ Σ}, on the same vertex set.
    pub fn link(&self, face: &[u32]) -> SimplicialComplexData {
        let facets = self
            .facets
            .iter()
            .filter(|f| is_subset(face, f))
            .map(|f| f.iter().copied().filter(|v| !face.contains(v)).collect())
            .collect();
        Self::from_indexed(self.vertices.clone(), facets)
    }

    /// The subcomplex of all faces of the given faces.
    pub fn generated_by(&self, faces: Vec<Vec<u32>>) -> SimplicialComplexData {
        Self::from_indexed(self.vertices.clone(), faces)
    }

    /// Face poset including the empty face, faces named "{a,b}".
    pub fn face_poset(&self) -> FinitePoset {
        let faces: Vec<Vec<u32>> = self.faces().into_iter().flatten().collect();
        let index: HashMap<&Vec<u32>, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut covers = Vec::new();
        for (i, f) in faces.iter().enumerate() {
            for k in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(k);
                covers.push((index[&sub], i));
            }
        }
        let names = faces.iter().map(|f| self.face_label(f)).collect();
        FinitePoset::from_indexed(names, covers).expect("face poset")
    }
}

pub(crate) fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_facets() {
        let c = SimplicialComplexData::from_facet_names(&[vec!["b", "a"], vec!["a"], vec!["c"]]);
        assert_eq!(c.vertices(), &["a", "b", "c"]);
        assert_eq!(c.facets(), &[vec![0, 1], vec![2]]);
        assert_eq!(c.dim(), 1);
        assert!(!c.is_pure());
        assert_eq!(c.faces().iter().map(|l| l.len()).collect::<Vec<_>>(), vec![1, 3, 1]);
    }

    #[test]
    fn void_and_empty() {
        let c = SimplicialComplexData::new(vec![], vec![]).unwrap();
        assert_eq!(c.dim(), -1);
        assert_eq!(c.faces(), vec![vec![Vec::<u32>::new()]]);
        assert_eq!(c.face_poset().len(), 1);
    }

    #[test]
    fn links() {
        let bowtie = SimplicialComplexData::from_facet_names(&[vec!["a", "b", "x"], vec!["c", "d", "x"]]);
        let x = bowtie.vertex_index("x").unwrap();
        let lk = bowtie.link(&[x]);
        assert_eq!(lk.facets().len(), 2);
        assert_eq!(lk.dim(), 1);
        let fp = bowtie.face_poset();
        assert!(fp.is_simplicial());
        assert_eq!(fp.f_vector().unwrap(), vec![1, 5, 6, 2]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            SimplicialComplexData::new(vec!["a".into()], vec![vec!["b".into()]]),
            Err(ComplexError::UnknownVertex(_))
        ));
        assert!(matches!(
            SimplicialComplexData::new(vec!["a".into(), "a".into()], vec![]),
            Err(ComplexError::DuplicateVertex(_))
        ));
    }
}
