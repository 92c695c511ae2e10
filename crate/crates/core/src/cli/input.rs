//! The JSON collection document.
//!
//! ```json
//! {"field": "rational", "num_vars": 3,
//!  "forms": [{"coeffs": [1, 0, 0], "multiplicity": 2, "label": "x"},
//!            {"coeffs": [1, "1/2", -1]}]}
//! ```
//!
//! `field` is `"rational"` or `{"prime": p}`; it defaults to `"rational"`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{rational_into, Field, Rational, Scalar};
use crate::sigma::{build_collection, FormCollection, RawForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollectionSpec {
    #[serde(default)]
    pub field: FieldSpec,
    pub num_vars: usize,
    pub forms: Vec<FormSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime { prime: u64 },
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Named("rational".into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub coeffs: Vec<Coefficient>,
    #[serde(default = "one")]
    pub multiplicity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn one() -> usize {
    1
}

/// An integer, or a string holding `"n"` or `"n/d"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    pub fn to_rational(&self) -> Result<Rational, String> {
        match self {
            Coefficient::Int(v) => Ok(Rational::from_integer(*v)),
            Coefficient::Text(s) => s.parse::<Rational>().map_err(|e| e.to_string()),
        }
    }
}

/// Where in the document something went wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl InputError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError { path: path.into(), line: None, column: None, message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path = if self.path.is_empty() || self.path == "." { "document" } else { &self.path };
        write!(f, "at {path}")?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, " (line {l}, column {c})")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for InputError {}

/// Parses the document, reporting the field path and position of any error.
pub fn parse_spec(text: &str) -> Result<CollectionSpec, InputError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let spec: CollectionSpec = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        InputError { path, line: Some(inner.line()), column: Some(inner.column()), message: inner.to_string() }
    })?;
    de.end().map_err(|e| InputError {
        path: String::new(),
        line: Some(e.line()),
        column: Some(e.column()),
        message: e.to_string(),
    })?;
    Ok(spec)
}

/// `"rational"`, `"prime:p"`, or a bare prime `"p"`.
pub fn parse_field(s: &str) -> Result<Field, InputError> {
    let t = s.trim();
    if let Ok(p) = t.parse::<u64>() {
        return Field::prime(p).map_err(|e| InputError::at("field", e.to_string()));
    }
    t.parse::<Field>().map_err(|e| InputError::at("field", e.to_string()))
}

impl CollectionSpec {
    /// The document's field, unless `override_field` replaces it.
    pub fn field(&self, override_field: Option<Field>) -> Result<Field, InputError> {
        if let Some(f) = override_field {
            return Ok(f);
        }
        match &self.field {
            FieldSpec::Named(s) if s == "rational" => Ok(Field::Rational),
            FieldSpec::Named(s) => Err(InputError::at("field", format!("unknown field `{s}`"))),
            FieldSpec::Prime { prime } => {
                Field::prime(*prime).map_err(|e| InputError::at("field.prime", e.to_string()))
            }
        }
    }

    /// Validates every entry and builds the collection over `field`.
    pub fn build<F: Scalar>(&self, field: Field) -> Result<FormCollection<F>, InputError> {
        if self.num_vars == 0 {
            return Err(InputError::at("num_vars", "need at least one variable"));
        }
        if self.forms.is_empty() {
            return Err(InputError::at("forms", "need at least one form"));
        }
        let mut raw = Vec::with_capacity(self.forms.len());
        for (i, form) in self.forms.iter().enumerate() {
            if form.coeffs.len() != self.num_vars {
                return Err(InputError::at(
                    format!("forms[{i}].coeffs"),
                    format!("expected {} coefficients, found {}", self.num_vars, form.coeffs.len()),
                ));
            }
            if form.multiplicity == 0 {
                return Err(InputError::at(format!("forms[{i}].multiplicity"), "multiplicity must be at least 1"));
            }
            let mut coeffs = Vec::with_capacity(self.num_vars);
            for (j, c) in form.coeffs.iter().enumerate() {
                let path = format!("forms[{i}].coeffs[{j}]");
                let q = c.to_rational().map_err(|m| InputError::at(path.clone(), m))?;
                coeffs.push(rational_into::<F>(field, &q).map_err(|e| InputError::at(path, e.to_string()))?);
            }
            if coeffs.iter().all(|c| c.is_zero()) {
                return Err(InputError::at(format!("forms[{i}]"), "linear form is zero"));
            }
            raw.push(RawForm { coeffs, multiplicity: form.multiplicity, label: form.label.clone() });
        }
        build_collection(field, self.num_vars, raw).map_err(|e| InputError::at("forms", e.to_string()))
    }
}
