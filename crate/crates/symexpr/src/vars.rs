use std::sync::Arc;

use crate::poly::MAX_VARS;
use crate::Error;

/// Ordered variable names: coordinates first, then parameters.
///
/// Variable `i` of every polynomial built over this table is `names()[i]`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    ncoords: usize,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    pub fn new<S: AsRef<str>>(coords: &[S], params: &[S]) -> Result<Arc<VarTable>, Error> {
        let names: Vec<String> = coords
            .iter()
            .chain(params.iter())
            .map(|s| s.as_ref().to_string())
            .collect();
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVars(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_ident(n) {
                return Err(Error::InvalidName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        Ok(Arc::new(VarTable {
            names,
            ncoords: coords.len(),
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coords(&self) -> &[String] {
        &self.names[..self.ncoords]
    }

    pub fn params(&self) -> &[String] {
        &self.names[self.ncoords..]
    }

    pub fn ncoords(&self) -> usize {
        self.ncoords
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_coord(&self, i: usize) -> bool {
        i < self.ncoords
    }

    /// Index of a coordinate, rejecting parameters and unknown names.
    pub fn coord_index(&self, name: &str) -> Result<usize, Error> {
        match self.index(name) {
            Some(i) if self.is_coord(i) => Ok(i),
            _ => Err(Error::NotCoordinate(name.to_string())),
        }
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
}
