//! Loading the algebra named on the command line.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use silting_core::catalog::{self, AnyAlgebra};
use silting_core::quiver::parse_quiver_spec;
use silting_core::{build_path_algebra, Algebra, AlgebraSpec, Error, FieldSpec, PrimeField, QuiverSpec, Rationals};

use crate::CliError;

#[derive(Deserialize)]
#[serde(untagged)]
enum QuiverInput {
    Text(String),
    Spec(QuiverSpec),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    field: FieldSpec,
    quiver: QuiverInput,
    #[serde(default)]
    analyses: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    algebra: AlgebraSpec,
    #[serde(default)]
    analyses: Vec<String>,
}

pub struct Loaded {
    pub algebra: AnyAlgebra,
    /// `catalog:<name>` or the file path as given.
    pub source: String,
    pub sha256: String,
    pub analyses: Vec<String>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn from_spec(spec: &AlgebraSpec, checked: bool) -> Result<AnyAlgebra, Error> {
    spec.field.validate()?;
    Ok(match spec.field {
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p)?;
            let a = if checked { Algebra::from_spec(&f, spec)? } else { Algebra::from_spec_unchecked(&f, spec)? };
            AnyAlgebra::Prime(Arc::new(a))
        }
        FieldSpec::Rational(_) => {
            let a = if checked {
                Algebra::from_spec(&Rationals, spec)?
            } else {
                Algebra::from_spec_unchecked(&Rationals, spec)?
            };
            AnyAlgebra::Rational(Arc::new(a))
        }
    })
}

fn from_quiver(field: FieldSpec, q: QuiverInput) -> Result<AnyAlgebra, Error> {
    field.validate()?;
    let spec = match q {
        QuiverInput::Text(t) => parse_quiver_spec(&t)?,
        QuiverInput::Spec(s) => {
            s.validate()?;
            s
        }
    };
    Ok(match field {
        FieldSpec::Prime(p) => AnyAlgebra::Prime(Arc::new(build_path_algebra(&spec, &PrimeField::new(p)?)?)),
        FieldSpec::Rational(_) => AnyAlgebra::Rational(Arc::new(build_path_algebra(&spec, &Rationals)?)),
    })
}

/// Parses an input document: a bare algebra spec, `{"algebra": spec}`, or
/// `{"field": .., "quiver": text-or-object}`. Unchecked loading keeps
/// algebras that fail the axioms so they can be reported on.
pub fn parse_document(text: &str, checked: bool) -> Result<(AnyAlgebra, Vec<String>), Error> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| Error::Parse("input must be a JSON object".into()))?;
    if obj.contains_key("structure_constants") {
        let spec = AlgebraSpec::parse(text)?;
        return Ok((from_spec(&spec, checked)?, Vec::new()));
    }
    if obj.contains_key("algebra") {
        let doc: AlgebraDoc = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok((from_spec(&doc.algebra, checked)?, doc.analyses));
    }
    if obj.contains_key("quiver") {
        let doc: QuiverDoc = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok((from_quiver(doc.field, doc.quiver)?, doc.analyses));
    }
    Err(Error::Parse("expected an algebra spec, an \"algebra\" object or a \"quiver\" document".into()))
}

pub fn load(input: Option<&Path>, catalog_name: Option<&str>, checked: bool) -> Result<Loaded, CliError> {
    match (input, catalog_name) {
        (Some(_), Some(_)) => Err(CliError::input("give either --input or --catalog, not both")),
        (None, None) => Err(CliError::input("an algebra is required: pass --input FILE or --catalog NAME")),
        (None, Some(name)) => {
            let entry = catalog::entry(name).ok_or_else(|| {
                CliError::input(format!("unknown catalog entry `{name}`; run `silting catalog` for the list"))
            })?;
            let algebra = entry.build().map_err(CliError::from_core)?;
            Ok(Loaded {
                algebra,
                source: format!("catalog:{name}"),
                sha256: sha256_hex(format!("catalog:{name}").as_bytes()),
                analyses: Vec::new(),
            })
        }
        (Some(path), None) => {
            let bytes = std::fs::read(path)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
            let text = String::from_utf8(bytes.clone())
                .map_err(|_| CliError::input(format!("{} is not UTF-8", path.display())))?;
            let (algebra, analyses) = parse_document(&text, checked).map_err(CliError::from_core)?;
            Ok(Loaded { algebra, source: path.display().to_string(), sha256: sha256_hex(&bytes), analyses })
        }
    }
}
