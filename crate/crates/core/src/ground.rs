//! Finite duplicate-free scalar sets and the plain-text ground-set format.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, FieldSpec, Scalar};

/// A finite, sorted, duplicate-free set of scalars from one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    field: FieldSpec,
    elements: Vec<Scalar>,
}

impl GroundSet {
    /// Sorts and deduplicates `values`. Every value must already live in
    /// `field`.
    pub fn new(values: impl IntoIterator<Item = Scalar>, field: FieldSpec) -> Result<Self> {
        let mut elements: Vec<Scalar> = values.into_iter().collect();
        if let Some(bad) = elements.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: bad.field().to_string(),
            });
        }
        elements.sort();
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(GroundSet { field, elements })
    }

    /// Rational integers, in any order, duplicates allowed.
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        GroundSet::new(values.iter().map(|&v| Scalar::int(v)), FieldSpec::Rationals)
    }

    /// Integers reduced into `field`.
    pub fn from_ints_in(values: &[i64], field: FieldSpec) -> Result<Self> {
        GroundSet::new(values.iter().map(|&v| Scalar::from_i64(v, field)), field)
    }

    /// Parses the ground-set text format: one scalar per line, `#` comments
    /// and blank lines ignored.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self> {
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| parse_scalar(l, field))
            .collect::<Result<Vec<_>>>()?;
        GroundSet::new(values, field)
    }

    pub fn read(path: impl AsRef<Path>, field: FieldSpec) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        GroundSet::parse(&text, field)
    }

    /// The set in file format, one element per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn elements(&self) -> &[Scalar] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        self.elements.binary_search(s).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.elements.iter()
    }

    /// `{c x : x in X}` for nonzero `c`.
    pub fn scale(&self, c: &Scalar) -> Result<GroundSet> {
        if c.is_zero() {
            return Err(Error::ZeroScalar);
        }
        GroundSet::new(self.elements.iter().map(|x| c * x), self.field)
    }

    /// `{-x : x in X}`.
    pub fn negate(&self) -> GroundSet {
        GroundSet::new(self.elements.iter().map(|x| -x), self.field).expect("negation preserves a nonempty set")
    }

    /// Union of several sets over the same field.
    pub fn union<'a>(sets: impl IntoIterator<Item = &'a GroundSet>) -> Result<GroundSet> {
        let mut field = None;
        let mut all = Vec::new();
        for s in sets {
            field.get_or_insert(s.field);
            all.extend(s.elements.iter().cloned());
        }
        GroundSet::new(all, field.ok_or(Error::EmptySet)?)
    }
}

/// Free-function forms of the set constructors.
pub fn make_ground_set(values: impl IntoIterator<Item = Scalar>, field: FieldSpec) -> Result<GroundSet> {
    GroundSet::new(values, field)
}

pub fn scale_set(x: &GroundSet, c: &Scalar) -> Result<GroundSet> {
    x.scale(c)
}

pub fn negate_set(x: &GroundSet) -> GroundSet {
    x.negate()
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl<'a> IntoIterator for &'a GroundSet {
    type Item = &'a Scalar;
    type IntoIter = std::slice::Iter<'a, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}
