//! Executable checks of identities, inequalities and congruences between the
//! polynomials, each producing a structured [`Report`].
//!
//! Checks never abort a batch. Resource exhaustion turns into a skipped
//! report with a machine-readable reason, so a run over a whole table always
//! finishes with one report per (entry, check).

mod checks;

pub use checks::kappa_reading;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Flags, TableEntry};
use crate::diagram::Diagram;
use crate::error::{DiagramError, EngineError};
use crate::kauffman::KauffmanEvaluator;
use crate::poly::Degree;
use crate::rudolph::RudolphEvaluator;
use crate::skein::{SkeinEvaluator, DEFAULT_SUBLINK_BOUND};
use crate::store::SharedStore;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    InternalError,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub entry: String,
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    /// Degrees and counts; `null` stands for the degree of zero.
    #[serde(default)]
    pub degrees: BTreeMap<String, Option<i64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, bool>,
    /// `(lhs − rhs) mod 2` for congruences.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Report>,
    /// `code: detail`, where `code` is one of `resource_limit`,
    /// `not_applicable`, `degenerate`, `hypothesis_failed`,
    /// `inconsistent_parts`, `zero_polynomial`, `invalid_input`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Report {
    pub fn new(entry: &str, check: &str) -> Self {
        Report {
            entry: entry.to_string(),
            check: check.to_string(),
            status: Status::Pass,
            lhs: None,
            rhs: None,
            degrees: BTreeMap::new(),
            facts: BTreeMap::new(),
            residue: None,
            parts: Vec::new(),
            reason: None,
        }
    }

    pub fn skipped(entry: &str, check: &str, code: &str, detail: impl fmt::Display) -> Self {
        let mut r = Report::new(entry, check);
        r.status = Status::Skipped;
        r.reason = Some(format!("{code}: {detail}"));
        r
    }

    /// The code part of `reason`.
    pub fn reason_code(&self) -> Option<&str> {
        self.reason.as_deref().map(|r| r.split(':').next().unwrap_or(r))
    }

    pub(crate) fn degree(&mut self, key: &str, d: Degree) {
        self.degrees.insert(key.to_string(), d.finite().map(i64::from));
    }

    pub(crate) fn count(&mut self, key: &str, n: i64) {
        self.degrees.insert(key.to_string(), Some(n));
    }

    pub(crate) fn fact(&mut self, key: &str, b: bool) {
        self.facts.insert(key.to_string(), b);
    }

    pub(crate) fn sides(&mut self, lhs: impl fmt::Display, rhs: impl fmt::Display) {
        self.lhs = Some(lhs.to_string());
        self.rhs = Some(rhs.to_string());
    }

    pub(crate) fn pass_if(&mut self, ok: bool) {
        self.status = if ok { Status::Pass } else { Status::Fail };
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Congruence,
    Morton,
    Kidwell,
    Conjecture2,
    Whitehead,
    Jones,
    Doubling,
    XLeading,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Congruence,
        Check::Morton,
        Check::Kidwell,
        Check::Conjecture2,
        Check::Whitehead,
        Check::Jones,
        Check::Doubling,
        Check::XLeading,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Congruence => "congruence",
            Check::Morton => "morton",
            Check::Kidwell => "kidwell",
            Check::Conjecture2 => "conjecture2",
            Check::Whitehead => "whitehead",
            Check::Jones => "jones",
            Check::Doubling => "doubling",
            Check::XLeading => "xleading",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

/// A diagram together with its table metadata.
#[derive(Clone, Debug)]
pub struct Subject {
    pub name: String,
    pub diagram: Diagram,
    pub flags: Flags,
    pub kappa: Option<i64>,
}

impl Subject {
    pub fn new(name: &str, diagram: Diagram) -> Self {
        Subject { name: name.to_string(), diagram, flags: Flags::default(), kappa: None }
    }

    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn from_entry(e: &TableEntry) -> Result<Self, DiagramError> {
        Ok(Subject { name: e.name.clone(), diagram: e.diagram()?, flags: e.flags, kappa: e.kappa })
    }
}

/// Crossing-count ceilings above which a batch skips a check. Single checks
/// called directly ignore them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub whitehead: usize,
    pub jones: usize,
    pub congruence: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { whitehead: 6, jones: 8, congruence: 8 }
    }
}

/// Twist parameters used for Whitehead doubles in a batch.
pub const WHITEHEAD_TWISTS: [i64; 3] = [-1, 0, 1];

/// Runs checks with shared evaluator caches.
#[derive(Clone)]
pub struct Verifier {
    pub(crate) skein: SkeinEvaluator,
    pub(crate) kauffman: KauffmanEvaluator,
    pub(crate) rudolph: RudolphEvaluator,
    pub limits: Limits,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier::new(crate::engine::DEFAULT_BUDGET, None)
    }
}

fn resource(e: &EngineError) -> bool {
    matches!(
        e,
        EngineError::Budget { .. }
            | EngineError::TooManyCrossings { .. }
            | EngineError::TooManyComponents { .. }
    )
}

impl Verifier {
    pub fn new(budget: u64, store: Option<SharedStore>) -> Self {
        let mut skein = SkeinEvaluator::new(budget);
        let mut kauffman = KauffmanEvaluator::new(budget);
        if let Some(s) = store {
            skein = skein.with_store(s.clone());
            kauffman = kauffman.with_store(s);
        }
        let rudolph = RudolphEvaluator::new(skein.clone(), DEFAULT_SUBLINK_BOUND);
        Verifier { skein, kauffman, rudolph, limits: Limits::default() }
    }

    fn guard(&self, s: &Subject, check: &str, r: Result<Report, EngineError>) -> Report {
        match r {
            Ok(r) => r,
            Err(e) if resource(&e) => Report::skipped(&s.name, check, "resource_limit", e),
            Err(e) => Report::skipped(&s.name, check, "invalid_input", e),
        }
    }

    /// Runs one check on one subject under the batch limits; Whitehead
    /// checks yield one report per twist parameter.
    pub fn run(&self, check: Check, s: &Subject) -> Vec<Report> {
        let c = s.diagram.crossing_count();
        let name = check.name();
        let over = |limit: usize| {
            Report::skipped(&s.name, name, "resource_limit", format!("{c} crossings exceed {limit}"))
        };
        let one = |r: Result<Report, EngineError>| vec![self.guard(s, name, r)];
        match check {
            Check::Congruence if c > self.limits.congruence => vec![over(self.limits.congruence)],
            Check::Congruence => one(self.congruence(s)),
            Check::Morton => one(self.morton(s)),
            Check::Kidwell => one(self.kidwell(s)),
            Check::Conjecture2 => one(self.conjecture2(s)),
            Check::Jones if c > self.limits.jones => vec![over(self.limits.jones)],
            Check::Jones => one(self.jones(s, &s.diagram.blackboard_framing())),
            Check::Doubling => one(self.doubling(s)),
            Check::XLeading => one(self.x_leading(s)),
            Check::Whitehead => {
                if s.diagram.component_count() != 1 {
                    return vec![Report::skipped(&s.name, name, "not_applicable", "not a knot")];
                }
                if c > self.limits.whitehead {
                    return vec![over(self.limits.whitehead)];
                }
                WHITEHEAD_TWISTS
                    .iter()
                    .map(|&n| {
                        let label = whitehead_label(n);
                        let r = self.whitehead(s, n, true).map(|mut r| {
                            r.check = label.clone();
                            r
                        });
                        self.guard(s, &label, r)
                    })
                    .collect()
            }
        }
    }

    /// Runs `checks` over `subjects`; reports are ordered by entry name, then
    /// check name, independent of evaluation order.
    pub fn run_batch(&self, checks: &[Check], subjects: &[Subject]) -> Vec<Report> {
        let mut out: Vec<Report> = subjects
            .iter()
            .flat_map(|s| checks.iter().flat_map(move |&c| self.run(c, s)))
            .collect();
        sort_reports(&mut out);
        out
    }
}

pub fn whitehead_label(n: i64) -> String {
    format!("whitehead[n={n}]")
}

pub fn sort_reports(reports: &mut [Report]) {
    reports.sort_by(|a, b| (&a.entry, &a.check).cmp(&(&b.entry, &b.check)));
}

/// True when no report failed; skipped reports are allowed.
pub fn all_ok(reports: &[Report]) -> bool {
    reports.iter().all(|r| matches!(r.status, Status::Pass | Status::Skipped))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_order_and_serialization() {
        let subjects: Vec<Subject> = ["3_1", "hopf", "unknot"]
            .iter()
            .map(|n| Subject::from_entry(&crate::corpus::entry(n).unwrap()).unwrap())
            .collect();
        let v = Verifier::default();
        let mut reversed = subjects.clone();
        reversed.reverse();
        let a = v.run_batch(&[Check::Morton, Check::Whitehead], &subjects);
        let b = Verifier::default().run_batch(&[Check::Whitehead, Check::Morton], &reversed);
        assert_eq!(a, b);
        assert!(all_ok(&a));
        let names: Vec<_> = a.iter().map(|r| (r.entry.as_str(), r.check.as_str())).collect();
        assert_eq!(names[0], ("3_1", "morton"));
        assert_eq!(names[1], ("3_1", "whitehead[n=-1]"));
        let text = serde_json::to_string(&a).unwrap();
        let back: Vec<Report> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert!(text.contains("\"status\":\"skipped\""));
    }

    #[test]
    fn budget_exhaustion_is_a_skip() {
        let v = Verifier::new(1, None);
        let s = Subject::from_entry(&crate::corpus::entry("4_1").unwrap()).unwrap();
        let r = v.run(Check::Morton, &s);
        assert_eq!(r[0].reason_code(), Some("resource_limit"));
        assert_eq!("kidwell".parse::<Check>(), Ok(Check::Kidwell));
        assert!("nope".parse::<Check>().is_err());
    }
}
