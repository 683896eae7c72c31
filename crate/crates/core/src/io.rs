//! JSON file formats.
//!
//! All rationals are strings in `p/q` form. Parse failures report the JSON
//! path of the offending field together with the line and column.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::composite::{compose, Composite, Mode};
use crate::duality::Functional;
use crate::error::Error;
use crate::linalg::RVec;
use crate::lp::HRep;
use crate::space::StateSpace;

#[derive(Debug)]
pub struct InputError {
    pub source_name: String,
    pub path: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "{}: {}", self.source_name, self.message)
        } else {
            write!(
                f,
                "{}: field `{}`: {}",
                self.source_name, self.path, self.message
            )
        }
    }
}

impl std::error::Error for InputError {}

impl InputError {
    fn new(source_name: &str, path: &str, message: impl Into<String>) -> InputError {
        InputError {
            source_name: source_name.to_string(),
            path: path.to_string(),
            message: message.into(),
        }
    }
}

/// Parses `text` into `T`, tracking the JSON path for diagnostics.
pub fn parse_json<T: DeserializeOwned>(source_name: &str, text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        InputError::new(source_name, &path, inner.to_string())
    })
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError::new(&path.display().to_string(), "", e.to_string()))
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    parse_json(&path.display().to_string(), &read(path)?)
}

/// Pretty JSON with a trailing newline; the byte layout every writer uses.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// A party given inline or as a path to a state-space file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PartyRef {
    Inline(StateSpace),
    File(String),
}

/// Composite file. Only `mode` and `parties` are read back; the other
/// fields record the realization that was computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeFile {
    pub mode: Mode,
    pub parties: Vec<PartyRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_effect: Option<RVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<RVec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hrep: Option<HRep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<RVec>>,
}

impl CompositeFile {
    /// Describes `c` with parties inline. The maximal composite carries
    /// vertices only if they have already been enumerated.
    pub fn describe(c: &Composite) -> Result<CompositeFile, Error> {
        let mut file = CompositeFile {
            mode: c.mode(),
            parties: c.parties().iter().cloned().map(PartyRef::Inline).collect(),
            ambient_dim: Some(c.ambient_dim()),
            unit_effect: Some(c.unit_effect()),
            generators: None,
            hrep: None,
            vertices: None,
        };
        match c.hrep() {
            Some(h) => {
                file.hrep = Some(h.clone());
                if c.has_vrep() {
                    file.vertices = Some(c.generators()?.to_vec());
                }
            }
            None => file.generators = Some(c.generators()?.to_vec()),
        }
        Ok(file)
    }

    /// Resolves the party list; file references are relative to `base`.
    pub fn resolve_parties(&self, base: &Path) -> Result<Vec<StateSpace>, InputError> {
        self.parties
            .iter()
            .map(|p| match p {
                PartyRef::Inline(s) => Ok(s.clone()),
                PartyRef::File(f) => load::<StateSpace>(&base.join(f)),
            })
            .collect()
    }

    pub fn load_composite(path: &Path) -> Result<(CompositeFile, Vec<StateSpace>), InputError> {
        let file: CompositeFile = load(path)?;
        let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let parties = file.resolve_parties(&base)?;
        Ok((file, parties))
    }

    pub fn build(&self, parties: Vec<StateSpace>) -> Result<Composite, Error> {
        compose(self.mode, parties)
    }
}

/// A composite (or party) state: `{"state": ["p/q", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateFile {
    pub state: RVec,
}

/// A witness file holds either a bare functional or an entangled verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessFile {
    Functional(Functional),
    Verdict { witness: Functional },
}

impl WitnessFile {
    pub fn functional(&self) -> &Functional {
        match self {
            WitnessFile::Functional(f) => f,
            WitnessFile::Verdict { witness } => witness,
        }
    }
}
