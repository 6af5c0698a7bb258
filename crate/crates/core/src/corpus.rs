//! Seeded generators and fixtures for property checks: arrangements, graded
//! posets, small complexes and finite group actions.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{compose, ComplexAction, Perm, PermGroup, PosetAction};
use crate::arrangement::ArrangementSpec;
use crate::intlat::IntMatrix;
use crate::poset::{FinitePoset, SimplicialComplexData};

/// The 3 × 4 arrangement with characters (1,0,0), (1,5,0), (1,0,5), (3,5,5).
pub fn five_torsion(p: u32) -> ArrangementSpec {
    ArrangementSpec::from_i64(&[&[1, 1, 1, 3], &[0, 5, 0, 5], &[0, 0, 5, 5]], p).expect("fixture")
}

/// Bounds for [`random_arrangements`].
#[derive(Clone, Copy, Debug)]
pub struct ArrangementBounds {
    pub max_d: usize,
    pub max_n: usize,
    pub max_entry: i64,
    pub p_values: &'static [u32],
    /// Largest admissible number of layers.
    pub max_layers: u64,
    /// Largest admissible number of independent layers.
    pub max_independent: u64,
}

impl Default for ArrangementBounds {
    fn default() -> Self {
        ArrangementBounds { max_d: 3, max_n: 5, max_entry: 3, p_values: &[1, 2], max_layers: 300, max_independent: 800 }
    }
}

/// Essential arrangements without zero columns, drawn uniformly from the
/// bounded entry box and kept when their layer counts fit the budget.
pub fn random_arrangements(seed: u64, count: usize, bounds: ArrangementBounds) -> Vec<ArrangementSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = rng.gen_range(1..=bounds.max_d);
        let n = rng.gen_range(d..=bounds.max_n.max(d));
        let p = *bounds.p_values.choose(&mut rng).expect("p values");
        let rows: Vec<Vec<BigInt>> = (0..d)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-bounds.max_entry..=bounds.max_entry))).collect())
            .collect();
        let Ok(matrix) = IntMatrix::from_rows(rows, n) else { continue };
        let Ok(spec) = ArrangementSpec::new(matrix, p, 0) else { continue };
        if !spec.is_essential() {
            continue;
        }
        let independent: BigInt = spec.independent_sets().iter().map(|s| spec.multiplicity(s)).sum();
        if independent > BigInt::from(bounds.max_independent) {
            continue;
        }
        if spec.layers_poset().poset.len() as u64 <= bounds.max_layers {
            out.push(spec);
        }
    }
    out
}

/// Graded posets with a bottom element, length at most `max_length`, about
/// half of them with a top element.
pub fn random_graded_posets(seed: u64, count: usize, max_length: usize) -> Vec<FinitePoset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let with_top = rng.gen_bool(0.5) && max_length >= 2;
            let levels = rng.gen_range(1..=if with_top { max_length - 1 } else { max_length });
            let sizes: Vec<usize> = (0..=levels).map(|r| if r == 0 { 1 } else { rng.gen_range(1..=4) }).collect();
            let mut names = Vec::new();
            let mut level_ids: Vec<Vec<usize>> = Vec::new();
            for (r, &s) in sizes.iter().enumerate() {
                let ids = (0..s)
                    .map(|i| {
                        names.push(if r == 0 { "0".to_string() } else { format!("r{r}_{i}") });
                        names.len() - 1
                    })
                    .collect();
                level_ids.push(ids);
            }
            let mut covers = BTreeSet::new();
            for r in 1..=levels {
                for &y in &level_ids[r] {
                    let below = &level_ids[r - 1];
                    covers.insert((*below.choose(&mut rng).unwrap(), y));
                    for &x in below {
                        if rng.gen_bool(0.35) {
                            covers.insert((x, y));
                        }
                    }
                }
                for &x in &level_ids[r - 1] {
                    if !covers.iter().any(|&(a, _)| a == x) {
                        covers.insert((x, *level_ids[r].choose(&mut rng).unwrap()));
                    }
                }
            }
            if with_top {
                names.push("1".to_string());
                let t = names.len() - 1;
                for &x in &level_ids[levels] {
                    covers.insert((x, t));
                }
            }
            FinitePoset::from_indexed(names, covers.into_iter().collect()).expect("graded poset")
        })
        .collect()
}

/// One simplicial complex per isomorphism class on at most `max_vertices`
/// vertices, named "1", "2", …; the complex {∅} is included.
pub fn complexes_up_to_iso(max_vertices: usize) -> Vec<SimplicialComplexData> {
    assert!(max_vertices <= 6, "vertex bound too large for exhaustive enumeration");
    let n = max_vertices;
    let mut masks: Vec<u32> = (1..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let perms = permutations(n);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    fn rec(
        masks: &[u32],
        i: usize,
        chosen: &mut Vec<u32>,
        perms: &[Vec<usize>],
        seen: &mut HashSet<Vec<u32>>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == masks.len() {
            let canon = perms
                .iter()
                .map(|p| {
                    let mut img: Vec<u32> = chosen.iter().map(|&m| permute_mask(m, p)).collect();
                    img.sort_unstable();
                    img
                })
                .min()
                .unwrap_or_default();
            if seen.insert(canon.clone()) {
                out.push(canon);
            }
            return;
        }
        rec(masks, i + 1, chosen, perms, seen, out);
        let m = masks[i];
        let closed = (0..32).filter(|b| m >> b & 1 == 1).all(|b| {
            let sub = m & !(1 << b);
            sub == 0 || chosen.contains(&sub)
        });
        if closed {
            chosen.push(m);
            rec(masks, i + 1, chosen, perms, seen, out);
            chosen.pop();
        }
    }
    let mut families = Vec::new();
    rec(&masks, 0, &mut chosen, &perms, &mut seen, &mut families);
    families.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    for fam in families {
        let used: u32 = fam.iter().fold(0, |a, &m| a | m);
        let vertices: Vec<String> = (0..n).filter(|b| used >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
        let facets: Vec<Vec<String>> = fam
            .iter()
            .map(|&m| (0..n).filter(|b| m >> b & 1 == 1).map(|b| (b + 1).to_string()).collect())
            .collect();
        out.push(SimplicialComplexData::new(vertices, facets).expect("enumerated complex"));
    }
    out
}

fn permute_mask(m: u32, p: &[usize]) -> u32 {
    (0..p.len()).filter(|&b| m >> b & 1 == 1).fold(0, |a, b| a | 1 << p[b])
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Small groups by generators on a few points.
fn group_library() -> Vec<(usize, Vec<Perm>)> {
    let cyc = |n: u32| -> Vec<Perm> { vec![(0..n).map(|i| (i + 1) % n).collect()] };
    vec![
        (2, cyc(2)),
        (3, cyc(3)),
        (4, cyc(4)),
        (4, vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]]),
        (5, cyc(5)),
        (6, cyc(6)),
        (6, vec![vec![1, 2, 0], vec![1, 0, 2]]),
        (7, cyc(7)),
        (8, cyc(8)),
        (8, vec![vec![1, 2, 3, 0], vec![3, 2, 1, 0]]),
        (8, vec![vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 4, 5, 2]]),
        (8, vec![vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 2, 4, 5], vec![0, 1, 2, 3, 5, 4]]),
        (9, vec![vec![1, 2, 0, 3, 4, 5], vec![0, 1, 2, 4, 5, 3]]),
        (10, cyc(10)),
        (12, vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]]),
        (12, vec![vec![1, 2, 3, 4, 5, 0], vec![5, 4, 3, 2, 1, 0]]),
    ]
}

/// Regular representation of the group generated by `gens`: element i maps
/// j to the index of g_i ∘ g_j.
fn regular(gens: &[Perm]) -> (PermGroup, Vec<Perm>) {
    let degree = gens[0].len();
    let g = PermGroup::generate(degree, gens, 1000).expect("small group");
    let reg: Vec<Perm> = g
        .elements()
        .iter()
        .map(|a| g.elements().iter().map(|b| g.index_of(&compose(a, b)).unwrap() as u32).collect())
        .collect();
    (g, reg)
}

/// Left cosets of the subgroup generated by `sub` (indices into the
/// regular representation), with the induced action of each group element.
fn coset_action(reg: &[Perm], sub: &[usize]) -> Vec<Perm> {
    let n = reg.len();
    let k = PermGroup::generate(n, &sub.iter().map(|&s| reg[s].clone()).collect::<Vec<_>>(), n + 1).expect("subgroup");
    let k_members: Vec<usize> = k.elements().iter().map(|p| p[0] as usize).collect();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets = 0;
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        for &h in &k_members {
            coset_of[reg[g][h] as usize] = cosets;
        }
        cosets += 1;
    }
    reg.iter()
        .map(|r| {
            let mut p = vec![0u32; cosets];
            for g in 0..n {
                p[coset_of[g]] = coset_of[r[g] as usize] as u32;
            }
            p
        })
        .collect()
}

fn face_poset_action(complex: &SimplicialComplexData, vertex_gens: &[Perm], duplicate: bool, swap: bool) -> Option<PosetAction> {
    let faces: Vec<Vec<u32>> = complex.faces().into_iter().flatten().collect();
    let facets: HashSet<Vec<u32>> = complex.facets().iter().filter(|f| !f.is_empty()).cloned().collect();
    let mut elems: Vec<(Vec<u32>, u32)> = Vec::new();
    for f in &faces {
        elems.push((f.clone(), 0));
        if duplicate && facets.contains(f) {
            elems.push((f.clone(), 1));
        }
    }
    let index = |f: &Vec<u32>, c: u32| elems.iter().position(|e| e.0 == *f && e.1 == c).unwrap();
    let names: Vec<String> = elems
        .iter()
        .map(|(f, c)| if *c == 0 { complex.face_label(f) } else { format!("{}#{c}", complex.face_label(f)) })
        .collect();
    let mut covers = Vec::new();
    for (i, (f, _)) in elems.iter().enumerate() {
        for k in 0..f.len() {
            let mut sub = f.clone();
            sub.remove(k);
            covers.push((index(&sub, 0), i));
        }
    }
    let poset = FinitePoset::from_indexed(names, covers).ok()?;
    let mut gens: Vec<Perm> = vertex_gens
        .iter()
        .map(|g| elems.iter().map(|(f, c)| index(&crate::action::apply(g, f), *c) as u32).collect())
        .collect();
    if duplicate && swap {
        gens.push(elems.iter().map(|(f, c)| if facets.contains(f) { index(f, 1 - c) as u32 } else { index(f, *c) as u32 }).collect());
    }
    PosetAction::new(poset, gens).ok()
}

/// Bounds for [`random_actions`].
#[derive(Clone, Copy, Debug)]
pub struct ActionBounds {
    pub max_elements: usize,
    pub max_group: usize,
}

/// Finite actions on simplicial posets: face posets of complexes built as
/// unions of orbits of random faces, sometimes with doubled facets (which
/// gives simplicial posets that are not face posets).
pub fn random_actions(seed: u64, count: usize, bounds: ActionBounds) -> Vec<PosetAction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let library: Vec<(usize, Vec<Perm>)> =
        group_library().into_iter().filter(|(o, _)| *o <= bounds.max_group).collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (order, gens) = library.choose(&mut rng).unwrap().clone();
        let (abstract_group, reg) = regular(&gens);
        debug_assert_eq!(reg.len(), order);
        let mut blocks: Vec<Vec<Perm>> = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let sub: Vec<usize> = (0..rng.gen_range(0..=1)).map(|_| rng.gen_range(0..order)).collect();
            blocks.push(coset_action(&reg, &sub));
        }
        let sizes: Vec<usize> = blocks.iter().map(|b| b[0].len()).collect();
        let nv: usize = sizes.iter().sum();
        if nv > 8 {
            continue;
        }
        let elements: Vec<Perm> = (0..order)
            .map(|g| {
                let mut p = Vec::with_capacity(nv);
                let mut off = 0u32;
                for b in &blocks {
                    p.extend(b[g].iter().map(|&x| x + off));
                    off += b[g].len() as u32;
                }
                p
            })
            .collect();
        let mut faces = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let size = rng.gen_range(1..=3.min(nv));
            let mut verts: Vec<u32> = (0..nv as u32).collect();
            verts.shuffle(&mut rng);
            let mut f: Vec<u32> = verts[..size].to_vec();
            f.sort_unstable();
            for g in &elements {
                faces.push(crate::action::apply(g, &f));
            }
        }
        let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
        let complex = SimplicialComplexData::new(
            vertices.clone(),
            faces.iter().map(|f| f.iter().map(|&v| vertices[v as usize].clone()).collect()).collect(),
        )
        .expect("orbit complex");
        let gens: Vec<Perm> = gens.iter().map(|g| elements[abstract_group.index_of(g).unwrap()].clone()).collect();
        let duplicate = rng.gen_bool(0.3);
        let swap = duplicate && rng.gen_bool(0.5) && order * 2 <= bounds.max_group;
        let Some(action) = face_poset_action(&complex, &gens, duplicate, swap) else { continue };
        if action.poset().len() <= bounds.max_elements && action.group().order() <= bounds.max_group {
            out.push(action);
        }
    }
    out
}

/// Translative actions drawn from [`random_actions`].
pub fn translative_actions(seed: u64, count: usize, bounds: ActionBounds) -> Vec<PosetAction> {
    let mut out = Vec::with_capacity(count);
    let mut s = seed;
    while out.len() < count {
        for a in random_actions(s, 16, bounds) {
            if out.len() < count && a.translativity_witness().is_none() && a.group().order() > 1 {
                out.push(a);
            }
        }
        s = s.wrapping_add(0x9e37_79b9);
    }
    out
}

/// Rotation of the 9-cycle by three steps.
pub fn nine_cycle_action() -> ComplexAction {
    let facets: Vec<Vec<String>> = (0..9).map(|i| vec![format!("v{i}"), format!("v{}", (i + 1) % 9)]).collect();
    let complex = SimplicialComplexData::from_facet_names(&facets);
    let rot: Perm = complex
        .vertices()
        .iter()
        .map(|name| {
            let i: usize = name[1..].parse().unwrap();
            complex.vertex_index(&format!("v{}", (i + 3) % 9)).unwrap()
        })
        .collect();
    ComplexAction::new(complex, vec![rot], None).expect("rotation")
}

/// Decoupled actions of H = ⊕ H_i on pure complexes: vertex block i carries
/// free H_i-orbits, facets pick one vertex per block, and the complex is a
/// union of facet orbits. Each entry comes with a face σ.
pub fn decoupled_actions(seed: u64, count: usize) -> Vec<(ComplexAction, Vec<u32>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let summands: Vec<Vec<Perm>> = vec![
        vec![vec![1, 0]],
        vec![vec![1, 2, 0]],
        vec![vec![1, 2, 3, 0]],
        vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]],
    ];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = rng.gen_range(0..=2);
        let parts: Vec<&Vec<Perm>> = (0..=d).map(|_| summands.choose(&mut rng).unwrap()).collect();
        let orbits: Vec<usize> = (0..=d).map(|_| rng.gen_range(1..=2)).collect();
        // Vertex (i, o, h) with h a point of the regular action of H_i.
        let mut names = Vec::new();
        let mut offset = Vec::new();
        for i in 0..=d {
            offset.push(names.len());
            let size = parts[i][0].len();
            for o in 0..orbits[i] {
                for h in 0..size {
                    names.push(format!("x{i}_{o}_{h}"));
                }
            }
        }
        let nv = names.len();
        let embed = |i: usize, g: &Perm| -> Perm {
            let mut p: Perm = (0..nv as u32).collect();
            let size = g.len();
            for o in 0..orbits[i] {
                for h in 0..size {
                    let v = offset[i] + o * size + h;
                    p[v] = (offset[i] + o * size + g[h] as usize) as u32;
                }
            }
            p
        };
        let decomposition: Vec<Vec<Perm>> = (0..=d).map(|i| parts[i].iter().map(|g| embed(i, g)).collect()).collect();
        let generators: Vec<Perm> = decomposition.iter().flatten().cloned().collect();
        let group = PermGroup::generate(nv, &generators, 10_000).expect("small group");
        let mut facets = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let f: Vec<u32> = (0..=d)
                .map(|i| {
                    let size = parts[i][0].len();
                    (offset[i] + rng.gen_range(0..orbits[i]) * size + rng.gen_range(0..size)) as u32
                })
                .collect();
            for g in group.elements() {
                facets.push(crate::action::apply(g, &f));
            }
        }
        let mut sorted_names = names.clone();
        sorted_names.sort();
        let complex = SimplicialComplexData::new(
            sorted_names,
            facets.iter().map(|f| f.iter().map(|&v| names[v as usize].clone()).collect()).collect(),
        )
        .expect("join-type complex");
        let relabel: Vec<u32> = names.iter().map(|n| complex.vertex_index(n).unwrap()).collect();
        let conj = |g: &Perm| -> Perm {
            let mut p = vec![0u32; nv];
            for v in 0..nv {
                p[relabel[v] as usize] = relabel[g[v] as usize];
            }
            p
        };
        let generators: Vec<Perm> = generators.iter().map(conj).collect();
        let decomposition: Vec<Vec<Perm>> = decomposition.iter().map(|h| h.iter().map(conj).collect()).collect();
        let action = ComplexAction::new(complex, generators, Some(decomposition)).expect("decoupled action");
        let facet = action.complex().facets().choose(&mut rng).unwrap().clone();
        let keep = rng.gen_range(1..=facet.len());
        let mut sigma: Vec<u32> = facet.choose_multiple(&mut rng, keep).copied().collect();
        sigma.sort_unstable();
        out.push((action, sigma));
    }
    out
}
