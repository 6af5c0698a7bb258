use gsemi_core::action::{verify_shelling, ComplexAction, PosetAction};
use gsemi_core::arrangement::ArrangementSpec;
use gsemi_core::corpus::{self, ActionBounds, ArrangementBounds};
use gsemi_core::facering::{self, MAX_DEGREE};
use gsemi_core::gsemimatroid::{self, QuotientSemimatroid};
use gsemi_core::homology::{self, HomologyResult};
use gsemi_core::poly::coef_json;
use gsemi_core::poset::{FinitePoset, SimplicialComplexData};
use serde_json::{json, Value};

use crate::input::{CliError, Input};

/// JSON report plus whether the check it carries succeeded.
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, ok: true }
    }

    fn check(report: Value, ok: bool) -> Self {
        Outcome { report, ok }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn wrong_kind(expected: &str, input: &Input) -> CliError {
    CliError::Schema(format!("expected {expected} input, got {}", input.kind()))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

pub fn check_degree(d: usize) -> Result<(), CliError> {
    if d > MAX_DEGREE {
        return Err(CliError::Guardrail(format!("degree {d} exceeds the maximum of {MAX_DEGREE}")));
    }
    Ok(())
}

pub fn check_characteristics(chars: &[u64]) -> Result<(), CliError> {
    for &c in chars {
        if c != 0 && !is_prime(c) {
            return Err(CliError::Invalid(format!("characteristic {c} is neither 0 nor prime")));
        }
    }
    Ok(())
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn arrangement(input: &Input, essential_required: bool) -> Result<&ArrangementSpec, CliError> {
    let Input::Arrangement(spec) = input else {
        return Err(wrong_kind("arrangement", input));
    };
    if essential_required && !spec.is_essential() {
        return Err(CliError::Guardrail(format!(
            "arrangement is not essential (rank {} < {})",
            spec.validate().rank,
            spec.d()
        )));
    }
    Ok(spec)
}

fn poset_action(input: Input) -> Result<PosetAction, CliError> {
    match input {
        Input::PosetAction(a) => Ok(a),
        Input::ComplexAction(a) => Ok(a.face_action()),
        other => Err(wrong_kind("poset action or complex action", &other)),
    }
}

fn homology_json(h: &HomologyResult) -> Value {
    let groups: Vec<Value> = (-1..=h.max_degree())
        .map(|i| {
            let g = h.degree(i);
            json!({
                "degree": i,
                "rank": g.rank,
                "torsion": g.torsion.iter().map(coef_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "groups": groups })
}

fn layered(spec: &ArrangementSpec, lp: gsemi_core::arrangement::LayerPoset) -> Value {
    json!({
        "spec": to_value(&spec.validate()),
        "rank_counts": lp.poset.rank_counts(),
        "poset": to_value(&lp.poset.to_json()),
    })
}

pub fn layers(input: &Input, essential_required: bool) -> Result<Outcome, CliError> {
    let spec = arrangement(input, essential_required)?;
    Ok(Outcome::ok(layered(spec, spec.layers_poset())))
}

pub fn independence(input: &Input, essential_required: bool) -> Result<Outcome, CliError> {
    let spec = arrangement(input, essential_required)?;
    Ok(Outcome::ok(layered(spec, spec.independence_poset())))
}

pub fn tutte(input: &Input, essential_required: bool) -> Result<Outcome, CliError> {
    let spec = arrangement(input, essential_required)?;
    let t = QuotientSemimatroid::from_arrangement(spec).tutte();
    Ok(Outcome::ok(json!({ "tutte": to_value(&t.to_json()) })))
}

pub fn delta(input: &Input, essential_required: bool) -> Result<Outcome, CliError> {
    let spec = arrangement(input, essential_required)?;
    let report = gsemimatroid::delta(spec).map_err(invalid)?;
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "basis": r.basis.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "w": r.w,
                "delta": r.delta,
            })
        })
        .collect();
    Ok(Outcome::ok(json!({ "p": report.p, "rows": rows, "delta": report.delta })))
}

pub fn polys(input: &Input, essential_required: bool) -> Result<Outcome, CliError> {
    match input {
        Input::Arrangement(_) => {
            let spec = arrangement(input, essential_required)?;
            let s = QuotientSemimatroid::from_arrangement(spec);
            let layers = spec.layers_poset().poset;
            let ind = spec.independence_poset().poset;
            let h = ind.h_polynomial().map_err(invalid)?;
            let chi_layers = layers.characteristic_polynomial().map_err(invalid)?;
            let chi_ind = ind.characteristic_polynomial().map_err(invalid)?;
            let (h_t, chi_layers_t, chi_ind_t) =
                (s.h_poly_independence(), s.char_poly_layers(), s.char_poly_independence());
            let agree = h == h_t && chi_layers == chi_layers_t && chi_ind == chi_ind_t;
            Ok(Outcome::check(
                json!({
                    "tutte": to_value(&s.tutte().to_json()),
                    "h": to_value(&h.to_json("t")),
                    "chi_layers": to_value(&chi_layers.to_json("t")),
                    "chi_independence": to_value(&chi_ind.to_json("t")),
                    "from_tutte": {
                        "h": to_value(&h_t.to_json("t")),
                        "chi_layers": to_value(&chi_layers_t.to_json("t")),
                        "chi_independence": to_value(&chi_ind_t.to_json("t")),
                    },
                    "agree": agree,
                }),
                agree,
            ))
        }
        Input::Poset(p) => poset_polys(p),
        Input::Complex(c) => poset_polys(&c.face_poset()),
        other => Err(wrong_kind("arrangement, poset or complex", other)),
    }
}

fn poset_polys(p: &FinitePoset) -> Result<Outcome, CliError> {
    let h = p.h_polynomial().ok().map(|h| to_value(&h.to_json("t")));
    let chi = p.characteristic_polynomial().ok().map(|c| to_value(&c.to_json("t")));
    if h.is_none() && chi.is_none() {
        return Err(CliError::Invalid("poset is neither simplicial nor graded with a bottom".into()));
    }
    Ok(Outcome::ok(json!({ "h": h, "chi": chi })))
}

/// The poset whose order complex a homological command inspects.
fn homological_poset(input: &Input, essential_required: bool) -> Result<Option<FinitePoset>, CliError> {
    match input {
        Input::Arrangement(_) => {
            let spec = arrangement(input, essential_required)?;
            spec.layers_poset().poset.without_bottom().map(Some).map_err(invalid)
        }
        Input::Poset(p) => Ok(Some(p.clone())),
        Input::Complex(_) => Ok(None),
        other => Err(wrong_kind("arrangement, poset or complex", other)),
    }
}

pub fn homology(input: &Input, essential_required: bool) -> Result<Outcome, CliError> {
    let h = match homological_poset(input, essential_required)? {
        Some(p) => homology::poset_homology(&p),
        None => {
            let Input::Complex(c) = input else { unreachable!() };
            homology::homology_integral(c)
        }
    };
    Ok(Outcome::ok(homology_json(&h)))
}

pub fn cm_check(input: &Input, chars: Option<Vec<u64>>, essential_required: bool) -> Result<Outcome, CliError> {
    let chars = match chars {
        Some(c) => c,
        None => default_characteristics(input),
    };
    check_characteristics(&chars)?;
    let reports = match homological_poset(input, essential_required)? {
        Some(p) => homology::cm_poset_reports(&p, &chars),
        None => {
            let Input::Complex(c) = input else { unreachable!() };
            homology::cm_complex_reports(c, &chars)
        }
    };
    let ok = reports.iter().all(|r| r.cm);
    Ok(Outcome::check(json!({ "reports": to_value(&reports) }), ok))
}

/// {0} together with the primes dividing δ for arrangement input.
fn default_characteristics(input: &Input) -> Vec<u64> {
    let mut chars = vec![0];
    if let Input::Arrangement(spec) = input {
        if let Ok(report) = gsemimatroid::delta(spec) {
            chars.extend(prime_factors(report.delta));
        }
    }
    chars
}

fn simplicial_poset(input: &Input) -> Result<FinitePoset, CliError> {
    match input {
        Input::Poset(p) => Ok(p.clone()),
        Input::Complex(c) => Ok(c.face_poset()),
        Input::Arrangement(spec) => Ok(spec.independence_poset().poset),
        other => Err(wrong_kind("poset, complex or arrangement", other)),
    }
}

pub fn face_ring(input: &Input, degree: usize) -> Result<Outcome, CliError> {
    check_degree(degree)?;
    let p = simplicial_poset(input)?;
    let pres = facering::face_ring(&p).map_err(invalid)?;
    let algebraic = facering::hilbert_function(&pres, degree, 0).map_err(invalid)?;
    let combinatorial = facering::hilbert_from_f(&p, degree).map_err(invalid)?;
    let agree = algebraic.values == combinatorial.values;
    Ok(Outcome::check(
        json!({
            "degree": degree,
            "presentation": to_value(&pres.to_json()),
            "hilbert": algebraic.values,
            "hilbert_from_f": combinatorial.values,
            "agree": agree,
        }),
        agree,
    ))
}

pub fn quotient(input: Input) -> Result<Outcome, CliError> {
    let action = poset_action(input)?;
    let report = action.simplicial_quotient_check().map_err(invalid)?;
    let quotient = action.quotient_poset().map_err(invalid)?;
    Ok(Outcome::check(
        json!({
            "group_order": action.group().order(),
            "translativity": to_value(&action.is_translative()),
            "quotient": to_value(&quotient.to_json()),
            "check": to_value(&report),
        }),
        report.holds,
    ))
}

pub fn invariants_check(input: Input, degree: usize) -> Result<Outcome, CliError> {
    check_degree(degree)?;
    let action = poset_action(input)?;
    let report = facering::invariant_hilbert_check(&action, degree).map_err(invalid)?;
    let ok = report.holds;
    Ok(Outcome::check(to_value(&report), ok))
}

fn complex_action(input: &Input) -> Result<&ComplexAction, CliError> {
    match input {
        Input::ComplexAction(a) => Ok(a),
        other => Err(wrong_kind("complex action", other)),
    }
}

fn face_of(complex: &SimplicialComplexData, names: &[String]) -> Result<Vec<u32>, CliError> {
    let mut face: Vec<u32> = names
        .iter()
        .map(|n| complex.vertex_index(n).ok_or_else(|| CliError::Invalid(format!("unknown vertex {n:?}"))))
        .collect::<Result<_, _>>()?;
    face.sort_unstable();
    face.dedup();
    if !complex.contains_face(&face) {
        return Err(CliError::Invalid(format!("{names:?} is not a face")));
    }
    Ok(face)
}

pub fn shelling(input: &Input, face: Option<Vec<String>>) -> Result<Outcome, CliError> {
    let action = complex_action(input)?;
    let complex = action.complex();
    let sigma = match face {
        Some(names) => face_of(complex, &names)?,
        None => complex.facets().first().cloned().unwrap_or_default(),
    };
    let decoupled = action.is_decoupled().map_err(invalid)?;
    if !decoupled.decoupled {
        return Ok(Outcome::check(json!({ "decoupled": to_value(&decoupled) }), false));
    }
    let order = action.shelling_order(&sigma).map_err(invalid)?;
    let orbit = action.orbit_complex(&sigma);
    let verified = verify_shelling(&orbit, &order).map_err(invalid)?;
    let betti = homology::betti(&orbit, 0);
    let ok = verified.shelling;
    Ok(Outcome::check(
        json!({
            "decoupled": to_value(&decoupled),
            "face": complex.face_names(&sigma),
            "order": order.iter().map(|f| complex.face_names(f)).collect::<Vec<_>>(),
            "verification": to_value(&verified),
            "rational_betti": betti,
        }),
        ok,
    ))
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum CorpusKind {
    Arrangements,
    Posets,
    Actions,
}

pub fn corpus(kind: CorpusKind, seed: u64, count: usize) -> Outcome {
    let items: Vec<Value> = match kind {
        CorpusKind::Arrangements => corpus::random_arrangements(seed, count, ArrangementBounds::default())
            .iter()
            .map(|a| to_value(&a.to_json()))
            .collect(),
        CorpusKind::Posets => {
            corpus::random_graded_posets(seed, count, 4).iter().map(|p| to_value(&p.to_json())).collect()
        }
        CorpusKind::Actions => corpus::random_actions(seed, count, ActionBounds { max_elements: 20, max_group: 8 })
            .iter()
            .map(|a| to_value(&a.to_json()))
            .collect(),
    };
    Outcome::ok(json!({ "seed": seed, "items": items }))
}
