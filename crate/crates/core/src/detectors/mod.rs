//! Bug-pattern detectors over the extracted models.
//!
//! Each detector is a pure function of a [`Context`] and returns its
//! diagnostics. Values the models cannot pin down statically disable a check
//! instead of producing a warning.

mod calls;
mod circuit;
mod commands;
mod deprecation;
mod gates;
mod initial_state;
mod measurement;
mod parameters;
mod qasm;

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::extraction::{resolve_origin, CallRecord, Extraction, QPAttributeEntry};
use crate::frontend::{Expr, ExprKind, SourceFile, SourceSpan};
use crate::knowledge_base::KnowledgeBase;

pub use circuit::{build_circuit_model, Bit, CircuitModel, CircuitModels, Register};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DetectorId {
    IG,
    MI,
    IS,
    PE,
    CM,
    CE,
    QE,
    DO,
}

impl DetectorId {
    pub const ALL: [DetectorId; 8] = [
        DetectorId::IG,
        DetectorId::MI,
        DetectorId::IS,
        DetectorId::PE,
        DetectorId::CM,
        DetectorId::CE,
        DetectorId::QE,
        DetectorId::DO,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DetectorId::IG => "IG",
            DetectorId::MI => "MI",
            DetectorId::IS => "IS",
            DetectorId::PE => "PE",
            DetectorId::CM => "CM",
            DetectorId::CE => "CE",
            DetectorId::QE => "QE",
            DetectorId::DO => "DO",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            DetectorId::IG => "incorrect uses of quantum gates",
            DetectorId::MI => "measurement related issue",
            DetectorId::IS => "incorrect initial state",
            DetectorId::PE => "parameter error",
            DetectorId::CM => "command misuse",
            DetectorId::CE => "call error",
            DetectorId::QE => "QASM error",
            DetectorId::DO => "discarded orders",
        }
    }

    fn run(self, ctx: &Context<'_>) -> Vec<Diagnostic> {
        match self {
            DetectorId::IG => detect_ig(ctx),
            DetectorId::MI => detect_mi(ctx),
            DetectorId::IS => detect_is(ctx),
            DetectorId::PE => detect_pe(ctx),
            DetectorId::CM => detect_cm(ctx),
            DetectorId::CE => detect_ce(ctx),
            DetectorId::QE => detect_qe(ctx),
            DetectorId::DO => detect_do(ctx),
        }
    }
}

impl fmt::Display for DetectorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl serde::Serialize for DetectorId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown detector '{0}' (expected one of IG, MI, IS, PE, CM, CE, QE, DO)")]
pub struct UnknownDetector(pub String);

impl FromStr for DetectorId {
    type Err = UnknownDetector;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DetectorId::ALL
            .into_iter()
            .find(|d| d.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownDetector(s.to_string()))
    }
}

pub struct PatternInfo {
    pub detector: DetectorId,
    pub code: &'static str,
    pub description: &'static str,
}

/// Every pattern code a diagnostic may carry.
pub const CATALOG: &[PatternInfo] = &[
    PatternInfo {
        detector: DetectorId::IG,
        code: "IG.unknown-gate",
        description: "method called on a circuit is neither a known gate nor a circuit method",
    },
    PatternInfo {
        detector: DetectorId::IG,
        code: "IG.undefined-custom-gate",
        description: "appended custom gate is never defined or imported",
    },
    PatternInfo {
        detector: DetectorId::IG,
        code: "IG.custom-gate-arity",
        description: "custom gate appended to a different number of qubits than it was built on",
    },
    PatternInfo {
        detector: DetectorId::IG,
        code: "IG.not-in-basis",
        description: "gate absent from the basis_gates given to transpile",
    },
    PatternInfo {
        detector: DetectorId::MI,
        code: "MI.measured-control",
        description: "measured qubit later used as a control qubit",
    },
    PatternInfo {
        detector: DetectorId::IS,
        code: "IS.register-overflow",
        description: "qubit or clbit index beyond the declared registers",
    },
    PatternInfo {
        detector: DetectorId::IS,
        code: "IS.insufficient-qubits",
        description: "circuit is larger than the backend supports for measurement",
    },
    PatternInfo {
        detector: DetectorId::IS,
        code: "IS.short-classical-register",
        description: "fewer classical bits than measured qubits",
    },
    PatternInfo {
        detector: DetectorId::PE,
        code: "PE.incorrect-gate-parameters",
        description: "gate called with the wrong number or type of arguments",
    },
    PatternInfo {
        detector: DetectorId::PE,
        code: "PE.classical-bit-entanglement",
        description: "classical bit passed where a qubit is required",
    },
    PatternInfo {
        detector: DetectorId::PE,
        code: "PE.same-physical-qubit",
        description: "layout maps two virtual qubits to one physical qubit",
    },
    PatternInfo {
        detector: DetectorId::PE,
        code: "PE.coupling-map-not-list",
        description: "coupling_map given as something other than a list",
    },
    PatternInfo {
        detector: DetectorId::CM,
        code: "CM.unrecognized-attribute",
        description: "member is not part of the module's API",
    },
    PatternInfo {
        detector: DetectorId::CM,
        code: "CM.circuit-interaction",
        description:
            "circuit appended to another circuit without to_gate, to_instruction or decompose",
    },
    PatternInfo {
        detector: DetectorId::CM,
        code: "CM.redundant-classical-register",
        description: "classical register created but never used",
    },
    PatternInfo {
        detector: DetectorId::CE,
        code: "CE.import-error",
        description: "imported name does not exist in the package",
    },
    PatternInfo {
        detector: DetectorId::CE,
        code: "CE.backend-error",
        description: "backend name unknown to its provider",
    },
    PatternInfo {
        detector: DetectorId::CE,
        code: "CE.object-call-error",
        description: "PauliMeasurementBasis() passed as preparation_basis",
    },
    PatternInfo {
        detector: DetectorId::QE,
        code: "QE.missing-qasm-header",
        description: "from_qasm_str source lacks an OPENQASM version header",
    },
    PatternInfo {
        detector: DetectorId::QE,
        code: "QE.unsupported-on-qasm-simulator",
        description: "result accessor not available from a qasm_simulator run",
    },
    PatternInfo {
        detector: DetectorId::DO,
        code: "DO.deprecated-method",
        description: "call to a deprecated or removed method",
    },
];

pub fn pattern_info(code: &str) -> Option<&'static PatternInfo> {
    CATALOG.iter().find(|p| p.code == code)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub file: PathBuf,
    pub detector: DetectorId,
    pub pattern_code: &'static str,
    pub span: SourceSpan,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Everything a detector may consult for one file.
pub struct Context<'a> {
    pub file: &'a SourceFile,
    pub extraction: &'a Extraction,
    pub kb: &'a KnowledgeBase,
    pub circuits: CircuitModels,
}

impl<'a> Context<'a> {
    pub fn new(file: &'a SourceFile, extraction: &'a Extraction, kb: &'a KnowledgeBase) -> Self {
        let circuits = build_circuit_model(extraction, kb);
        Context {
            file,
            extraction,
            kb,
            circuits,
        }
    }

    pub fn records(&self) -> &'a [CallRecord] {
        &self.extraction.operations.records
    }

    fn diagnostic(
        &self,
        detector: DetectorId,
        pattern_code: &'static str,
        span: SourceSpan,
        message: String,
    ) -> Diagnostic {
        debug_assert!(pattern_info(pattern_code).is_some_and(|p| p.detector == detector));
        let pos = self.file.line_col(span.start);
        Diagnostic {
            file: self.file.path().to_path_buf(),
            detector,
            pattern_code,
            span,
            line: pos.line,
            column: pos.column,
            message,
        }
    }

    /// Binding a name's value comes from, as seen from `horizon`.
    fn origin_entry(&self, name: &str, horizon: usize) -> Option<&'a QPAttributeEntry> {
        let attrs = &self.extraction.attributes;
        let origin = resolve_origin(name, attrs, horizon).ok()?;
        if origin.cycle {
            return None;
        }
        attrs.get(origin.binding?)
    }

    /// The expression a value comes from: a bare name is replaced by its
    /// origin binding's value. Returns the horizon to resolve names inside
    /// the returned expression.
    fn value_of<'e>(&self, expr: &'e Expr, horizon: usize) -> (&'e Expr, usize)
    where
        'a: 'e,
    {
        match expr.as_name().and_then(|n| self.origin_entry(n, horizon)) {
            Some(entry) => (&entry.value, entry.binding_index),
            None => (expr, horizon),
        }
    }

    /// Circuit binding a record's receiver refers to.
    fn circuit_of(&self, record: &CallRecord) -> Option<&CircuitModel> {
        let name = record.receiver_name()?;
        self.circuit_named(name, record.horizon)
    }

    fn circuit_named(&self, name: &str, horizon: usize) -> Option<&CircuitModel> {
        let entry = self.origin_entry(name, horizon)?;
        self.circuits.circuits.get(&entry.binding_index)
    }

    /// Circuit an argument expression denotes.
    fn circuit_arg(&self, expr: &Expr, horizon: usize) -> Option<&CircuitModel> {
        self.circuit_named(expr.as_name()?, horizon)
    }

    /// Record whose span is exactly `span`.
    fn record_at(&self, span: SourceSpan) -> Option<&'a CallRecord> {
        self.records().iter().find(|r| r.span == span)
    }

    /// Callee path with its root name replaced by the imported module path
    /// when the root came from an import.
    fn qualified_path(&self, record: &CallRecord) -> String {
        let path = &record.callee_path;
        let (root, rest) = match path.find('.') {
            Some(i) => (&path[..i], &path[i..]),
            None => (path.as_str(), ""),
        };
        if !is_identifier(root) {
            return path.clone();
        }
        match self.extraction.import_target(root) {
            Some(target) => format!("{target}{rest}"),
            None => path.clone(),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

/// Last dotted segment of a call's callee, such as `QuantumRegister` for
/// `qk.QuantumRegister(7)`.
fn callee_name(expr: &Expr) -> Option<&str> {
    match &expr.kind {
        ExprKind::Call { func, .. } => match &func.kind {
            ExprKind::Name(n) => Some(n),
            ExprKind::Attribute { attr, .. } => Some(&attr.name),
            _ => None,
        },
        _ => None,
    }
}

pub fn detect_ig(ctx: &Context<'_>) -> Vec<Diagnostic> {
    gates::detect(ctx)
}

pub fn detect_mi(ctx: &Context<'_>) -> Vec<Diagnostic> {
    measurement::detect(ctx)
}

pub fn detect_is(ctx: &Context<'_>) -> Vec<Diagnostic> {
    initial_state::detect(ctx)
}

pub fn detect_pe(ctx: &Context<'_>) -> Vec<Diagnostic> {
    parameters::detect(ctx)
}

pub fn detect_cm(ctx: &Context<'_>) -> Vec<Diagnostic> {
    commands::detect(ctx)
}

pub fn detect_ce(ctx: &Context<'_>) -> Vec<Diagnostic> {
    calls::detect(ctx)
}

pub fn detect_qe(ctx: &Context<'_>) -> Vec<Diagnostic> {
    qasm::detect(ctx)
}

pub fn detect_do(ctx: &Context<'_>) -> Vec<Diagnostic> {
    deprecation::detect(ctx)
}

/// Union of the enabled detectors' diagnostics, sorted by position and then
/// detector.
pub fn run_detectors(ctx: &Context<'_>, enabled: &BTreeSet<DetectorId>) -> Vec<Diagnostic> {
    let mut out: Vec<Diagnostic> = enabled.iter().flat_map(|d| d.run(ctx)).collect();
    out.sort_by(|a, b| {
        (
            &a.file,
            a.line,
            a.column,
            a.detector,
            a.pattern_code,
            &a.message,
        )
            .cmp(&(
                &b.file,
                b.line,
                b.column,
                b.detector,
                b.pattern_code,
                &b.message,
            ))
    });
    out
}
