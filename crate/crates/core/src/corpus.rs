//! Knot and link tables in JSON form, and the built-in corpus.
//!
//! An entry holds PD quadruples (1-based labels, as in published tables),
//! optional explicit crossing signs, a count of crossingless components,
//! and flags asserted by the table author.

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::DiagramError;

const BUILTIN: &str = include_str!("../data/corpus.json");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    #[serde(default)]
    pub alternating: bool,
    #[serde(default)]
    pub reduced: bool,
    #[serde(default)]
    pub prime: bool,
    #[serde(default)]
    pub rational: bool,
    #[serde(default)]
    pub algebraic: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub name: String,
    pub pd: Vec<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i32>>,
    #[serde(default)]
    pub loops: usize,
    #[serde(default)]
    pub flags: Flags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<i64>,
    #[serde(default)]
    pub expected: Expected,
}

impl TableEntry {
    pub fn diagram(&self) -> Result<Diagram, DiagramError> {
        let signs: Option<Vec<Option<i32>>> =
            self.signs.as_ref().map(|s| s.iter().map(|&x| Some(x)).collect());
        if signs.as_ref().is_some_and(|s| s.len() != self.pd.len()) {
            return Err(DiagramError::Invalid(format!(
                "{}: {} signs for {} crossings",
                self.name,
                signs.unwrap().len(),
                self.pd.len()
            )));
        }
        Ok(Diagram::from_pd(&self.pd, signs.as_deref(), self.loops)?.with_name(&self.name))
    }

    /// Flags that disagree with what the diagram itself shows.
    pub fn flag_mismatches(&self, d: &Diagram) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.flags.alternating != d.is_alternating() {
            out.push("alternating");
        }
        if self.flags.reduced != d.is_reduced() {
            out.push("reduced");
        }
        out
    }

    pub fn crossing_count(&self) -> usize {
        self.pd.len()
    }
}

/// Parses a table file: a JSON array of entries.
pub fn parse_table(text: &str) -> Result<Vec<TableEntry>, DiagramError> {
    serde_json::from_str(text).map_err(|e| DiagramError::Parse { line: e.line(), msg: e.to_string() })
}

/// The built-in corpus.
pub fn builtin() -> Vec<TableEntry> {
    parse_table(BUILTIN).expect("built-in corpus is valid JSON")
}

pub fn builtin_text() -> &'static str {
    BUILTIN
}

/// Looks up a built-in entry by name.
pub fn entry(name: &str) -> Option<TableEntry> {
    builtin().into_iter().find(|e| e.name == name)
}

/// Diagram of a built-in entry; panics on unknown names.
pub fn diagram(name: &str) -> Diagram {
    entry(name)
        .unwrap_or_else(|| panic!("no corpus entry {name}"))
        .diagram()
        .expect("built-in entries are valid")
}
