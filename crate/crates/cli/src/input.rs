use std::fs;
use std::path::Path;

use gsemi_core::action::{ActionJson, ComplexAction, ComplexActionJson, PosetAction};
use gsemi_core::arrangement::{ArrangementJson, ArrangementSpec};
use gsemi_core::poset::{ComplexJson, FinitePoset, PosetJson, SimplicialComplexData};
use serde::de::DeserializeOwned;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Malformed(serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("guardrail: {0}")]
    Guardrail(String),
}

/// Parsed input document, classified by its keys.
pub enum Input {
    Arrangement(ArrangementSpec),
    Poset(FinitePoset),
    Complex(SimplicialComplexData),
    PosetAction(PosetAction),
    ComplexAction(ComplexAction),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Arrangement(_) => "arrangement",
            Input::Poset(_) => "poset",
            Input::Complex(_) => "complex",
            Input::PosetAction(_) => "poset action",
            Input::ComplexAction(_) => "complex action",
        }
    }
}

fn typed<T: DeserializeOwned>(value: Value, what: &str) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::Schema(format!("{what}: {e}")))
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

pub fn parse(text: &str) -> Result<Input, CliError> {
    let value: Value = serde_json::from_str(text).map_err(CliError::Malformed)?;
    let obj = value.as_object().ok_or_else(|| CliError::Schema("top level must be an object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    if has("matrix") {
        let json: ArrangementJson = typed(value, "arrangement")?;
        return ArrangementSpec::from_json(&json).map(Input::Arrangement).map_err(invalid);
    }
    if has("poset") && has("generators") {
        let json: ActionJson = typed(value, "poset action")?;
        return PosetAction::from_json(&json).map(Input::PosetAction).map_err(invalid);
    }
    if has("poset") {
        let json: PosetJson = typed(value["poset"].clone(), "poset")?;
        return FinitePoset::from_json(&json).map(Input::Poset).map_err(invalid);
    }
    if has("facets") && has("generators") {
        let json: ComplexActionJson = typed(value, "complex action")?;
        return ComplexAction::from_json(&json).map(Input::ComplexAction).map_err(invalid);
    }
    if has("facets") {
        let json: ComplexJson = typed(value, "complex")?;
        return SimplicialComplexData::from_json(&json).map(Input::Complex).map_err(invalid);
    }
    if has("elements") {
        let json: PosetJson = typed(value, "poset")?;
        return FinitePoset::from_json(&json).map(Input::Poset).map_err(invalid);
    }
    Err(CliError::Schema(
        "expected an arrangement, poset, complex, poset action or complex action document".into(),
    ))
}

pub fn load(path: &Path) -> Result<Input, CliError> {
    let text =
        fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
    parse(&text)
}
