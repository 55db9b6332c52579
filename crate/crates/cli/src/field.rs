//! Vector-field specifications: `"A=...; B=..."` text, files and corpus ids.

use std::fmt;

use first_integrals::algebra::{parse_poly, AlgebraError, ParseError};
use first_integrals::{BiPoly, VectorField};
use thiserror::Error;

/// Where a field came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Inline,
    File(String),
    Corpus(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Inline => write!(f, "inline"),
            Provenance::File(p) => write!(f, "file:{p}"),
            Provenance::Corpus(id) => write!(f, "corpus:{id}"),
        }
    }
}

/// A parsed vector field together with its source text.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    pub a_src: String,
    pub b_src: String,
    pub vf: VectorField,
    pub provenance: Provenance,
}

/// Errors of [`FieldSpec::parse`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field must have the form \"A=...; B=...\" ({0})")]
    Shape(String),
    #[error("in component {component}: {source}")]
    Parse { component: char, source: ParseError },
    #[error("invalid vector field: {0}")]
    Invalid(#[from] AlgebraError),
}

fn component(component: char, src: &str) -> Result<BiPoly, FieldError> {
    parse_poly(src).map_err(|source| FieldError::Parse { component, source })
}

impl FieldSpec {
    /// Parses `"A=<poly>; B=<poly>"` (either order; `;` or newlines separate).
    pub fn parse(text: &str, provenance: Provenance) -> Result<Self, FieldError> {
        let (mut a, mut b) = (None, None);
        for part in text.split([';', '\n']).map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = part.split_once('=').ok_or_else(|| FieldError::Shape(format!("missing '=' in {part:?}")))?;
            let slot = match name.trim() {
                "A" | "a" => &mut a,
                "B" | "b" => &mut b,
                other => return Err(FieldError::Shape(format!("unknown component {other:?}"))),
            };
            if slot.is_some() {
                return Err(FieldError::Shape(format!("component {} given twice", name.trim())));
            }
            *slot = Some(value.trim().to_string());
        }
        let a_src = a.ok_or_else(|| FieldError::Shape("missing A".into()))?;
        let b_src = b.ok_or_else(|| FieldError::Shape("missing B".into()))?;
        Self::from_components(&a_src, &b_src, provenance)
    }

    /// Builds the field from the two component expressions.
    pub fn from_components(a_src: &str, b_src: &str, provenance: Provenance) -> Result<Self, FieldError> {
        let vf = VectorField::new(component('A', a_src)?, component('B', b_src)?)?;
        Ok(FieldSpec { a_src: a_src.to_string(), b_src: b_src.to_string(), vf, provenance })
    }

    /// The field printed in the input grammar; parsing it gives the same field.
    pub fn canonical_text(&self) -> String {
        format!("A={}; B={}", self.vf.a(), self.vf.b())
    }
}
