//! Law identifiers, verification reports and the crate error type.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Every law the engine can check. The serialized names are stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    // categories
    CatIdentityTyping,
    CatCompositeTyping,
    CatLeftUnit,
    CatRightUnit,
    CatAssociativity,
    // functors, transformations
    FunctorTyping,
    FunctorIdentity,
    FunctorComposition,
    NatTransTyping,
    Naturality,
    // fibrations
    LiftTyping,
    LiftExistence,
    LiftUniqueness,
    ColiftTyping,
    ColiftExistence,
    ColiftUniqueness,
    NormalCleavage,
    Gaunt,
    Discrete,
    CartesianFunctor,
    // monoids, monoidal categories, comonads, monads
    MonoidUnit,
    MonoidAssociativity,
    MonoidalStructureIso,
    MonoidalNaturality,
    MonoidalTriangle,
    MonoidalPentagon,
    ComonadLeftCounit,
    ComonadRightCounit,
    ComonadCoassociativity,
    MonadLeftUnit,
    MonadRightUnit,
    MonadAssociativity,
    // display maps and adequate triples
    DisplayContainsIsos,
    DisplayClosure,
    DisplayPullback,
    TripleIdentities,
    TripleClosure,
    TriplePullback,
    // contextads
    CtxEpsilonNatural,
    CtxDeltaNatural,
    CtxLambdaNatural,
    CtxRhoNatural,
    CtxAlphaNatural,
    CtxKappaUnit,
    CtxKappaTensor,
    CtxStructureIso,
    CtxLambdaTriangle,
    CtxRightUnit,
    CtxAssociativity,
    CtxUnitCoherence,
    CtxPentagonCoherence,
    // contentads (dual vocabulary)
    CntEtaNatural,
    CntMuNatural,
    CntLambdaNatural,
    CntRhoNatural,
    CntAlphaNatural,
    CntKappaUnit,
    CntKappaTensor,
    CntStructureIso,
    CntLambdaTriangle,
    CntLeftUnit,
    CntAssociativity,
    CntUnitCoherence,
    CntPentagonCoherence,
    // morphisms of contextads
    MorCartesian,
    MorLineatorNatural,
    MorStructureIso,
    MorUnitLaw,
    MorAssociativityLaw,
    // double categories
    DblStackUnit,
    DblStackAssociativity,
    DblLooseIdentitySquares,
    DblPasteIdentity,
    DblInterchange,
    DblUnitorNatural,
    DblAssociatorNatural,
    DblStructureIso,
    DblTriangle,
    DblPentagon,
    Strict,
    CompanionVertical,
    CompanionHorizontal,
    CompanionHorizontalRaw,
    ConjointVertical,
    ConjointHorizontal,
    ConjointHorizontalRaw,
    DblIsoBijection,
    DblIsoOperations,
    DblIsoStructure,
    FunctorSquares,
    FunctorComparisonTyped,
    FunctorComparisonIso,
    LooseProductTyped,
    InterchangeSquareTyped,
    InterchangeSquareIso,
    ColaxMonoidal,
    // containers
    PolyRightUnitSeq,
    PolyRightUnitSplit,
    PolyLeftUnitSeq,
    PolyLeftUnitSplit,
    PolySeqAssociativity,
    PolySplitAssociativity,
    TransposeBijection,
    TransposeIdentity,
    TransposeComposition,
    DepLeftCounit,
    DepRightCounit,
    DepCoassociativity,
    DepLambda,
    DepRho,
    DepAlpha,
    // misc
    Duality,
    Equivalence,
}

impl Law {
    /// Stable identifier, identical to the serialized form.
    pub fn id(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
    }

    /// The dual-vocabulary name of a contextad law, used when a contentad is
    /// checked through its dual contextad.
    pub fn co(self) -> Law {
        use Law::*;
        match self {
            CtxEpsilonNatural => CntEtaNatural,
            CtxDeltaNatural => CntMuNatural,
            CtxLambdaNatural => CntLambdaNatural,
            CtxRhoNatural => CntRhoNatural,
            CtxAlphaNatural => CntAlphaNatural,
            CtxKappaUnit => CntKappaUnit,
            CtxKappaTensor => CntKappaTensor,
            CtxStructureIso => CntStructureIso,
            CtxLambdaTriangle => CntLambdaTriangle,
            CtxRightUnit => CntLeftUnit,
            CtxAssociativity => CntAssociativity,
            CtxUnitCoherence => CntUnitCoherence,
            CtxPentagonCoherence => CntPentagonCoherence,
            LiftTyping => ColiftTyping,
            LiftExistence => ColiftExistence,
            LiftUniqueness => ColiftUniqueness,
            ComonadLeftCounit => MonadLeftUnit,
            ComonadRightCounit => MonadRightUnit,
            ComonadCoassociativity => MonadAssociativity,
            other => other,
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// A labelled tuple of names pinpointing where a law fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness(pub Vec<(String, String)>);

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.0.push((key.to_owned(), value.to_string()));
        self
    }

    pub fn with_all(mut self, other: Witness) -> Self {
        self.0.extend(other.0);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// `witness!{"P" => p, "Q" => q}`
#[macro_export]
macro_rules! witness {
    ($($k:expr => $v:expr),* $(,)?) => {
        $crate::report::Witness::new()$(.with($k, $v))*
    };
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawResult {
    pub law: Law,
    /// Number of instances examined.
    pub checked: usize,
    /// Informational results are reported but never affect the verdict.
    #[serde(default)]
    pub informational: bool,
    pub witness: Option<Witness>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Accumulates the instances of one law, keeping the first counterexample.
#[derive(Debug)]
pub struct Tally {
    law: Law,
    checked: usize,
    witness: Option<Witness>,
}

impl Tally {
    pub fn new(law: Law) -> Self {
        Tally { law, checked: 0, witness: None }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn finish(self) -> LawResult {
        LawResult { law: self.law, checked: self.checked, informational: false, witness: self.witness }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub results: Vec<LawResult>,
    #[serde(default)]
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), results: Vec::new(), elapsed_ms: 0 }
    }

    pub fn push(&mut self, r: LawResult) {
        self.results.push(r);
    }

    pub fn tally(&mut self, t: Tally) {
        self.results.push(t.finish());
    }

    pub fn note(&mut self, t: Tally) {
        let mut r = t.finish();
        r.informational = true;
        self.results.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.results.extend(other.results);
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.informational || r.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.results.iter().filter(|r| !r.informational && !r.passed())
    }

    pub fn failed_laws(&self) -> Vec<Law> {
        let mut laws: Vec<Law> = self.failures().map(|r| r.law).collect();
        laws.dedup();
        laws
    }

    pub fn get(&self, law: Law) -> Option<&LawResult> {
        self.results.iter().find(|r| r.law == law)
    }

    /// True when some result for `law` exists and every such result passed.
    pub fn holds(&self, law: Law) -> bool {
        let mut any = false;
        for r in self.results.iter().filter(|r| r.law == law) {
            any = true;
            if !r.passed() {
                return false;
            }
        }
        any
    }

    pub fn relabel(mut self, f: impl Fn(Law) -> Law) -> Self {
        for r in &mut self.results {
            r.law = f(r.law);
        }
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis();
        self
    }

    /// Promote a failing report into an error, keep a passing one.
    pub fn into_result(self) -> Result<Report, Error> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::Law(Box::new(self)))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.subject, if self.passed() { "PASS" } else { "FAIL" })?;
        for r in &self.results {
            let status = match (r.passed(), r.informational) {
                (true, _) => "ok  ",
                (false, true) => "note",
                (false, false) => "FAIL",
            };
            write!(f, "  {status} {:<28} ({} checked)", r.law.id(), r.checked)?;
            if let Some(w) = &r.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown {kind} `{name}`")]
    Dangling { kind: &'static str, name: String },
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("missing {table} entry for {key}")]
    Missing { table: &'static str, key: String },
    #[error("ill-typed {what}: {detail}")]
    IllTyped { what: String, detail: String },
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("{what} has {size} morphisms, over the cap of {cap} (raise it with --max-morphisms)")]
    SizeCap { what: String, size: usize, cap: usize },
    #[error("{what} needs {size} instances, over the cap of {cap}")]
    SampleCap { what: String, size: u128, cap: u128 },
    #[error("{} failed: {}", .0.subject, .0.failed_laws().iter().map(|l| l.id()).collect::<Vec<_>>().join(", "))]
    Law(Box<Report>),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn ill_typed(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::IllTyped { what: what.into(), detail: detail.into() }
    }

    /// Exit code contract: 1 for law failures, 2 for everything structural.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Law(_) => 1,
            _ => 2,
        }
    }

    pub fn is_structural(&self) -> bool {
        !matches!(self, Error::Law(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
