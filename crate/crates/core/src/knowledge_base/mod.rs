//! Declarative facts about quantum-framework APIs.
//!
//! The on-disk format is line oriented. Blank lines and text after `#` are
//! ignored. An optional `version 1` line may precede the first section.
//! Each `[section]` header switches the record syntax for the lines that
//! follow; fields are separated by whitespace:
//!
//! ```text
//! [gates]             NAME QUBITS PARAMS CLBITS CONTROLS
//!                     QUBITS is a count or `*` (variadic); CONTROLS is a
//!                     comma list of qubit-slot positions or `-`
//! [circuit_methods]   NAME...
//! [backend_limits]    MAX_QUBITS PATTERN        (PATTERN is the rest of the line)
//! [backends]          PROVIDER NAME...
//! [deprecated]        PATH REPLACEMENT NOTE     (REPLACEMENT `-` for none; NOTE is the rest)
//! [modules]           MODULE_PATH MEMBER...
//! [imports]           PACKAGE SYMBOL...
//! [qasm_unsupported]  NAME...
//! ```
//!
//! Lines in `[backends]`, `[modules]` and `[imports]` that repeat a key
//! extend that key's member set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::Path;

pub const DEFAULT_KB: &str = include_str!("../../data/default.kb");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitArity {
    Fixed(usize),
    Variadic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSpec {
    pub method_name: String,
    pub qubit_arity: QubitArity,
    pub angle_param_arity: usize,
    pub clbit_arity: usize,
    /// Positions among the qubit arguments (after angle parameters).
    pub control_positions: Vec<usize>,
}

impl GateSpec {
    /// Number of positional arguments a full call takes, when fixed.
    pub fn expected_args(&self) -> Option<usize> {
        match self.qubit_arity {
            QubitArity::Fixed(n) => Some(self.angle_param_arity + n + self.clbit_arity),
            QubitArity::Variadic => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackendLimit {
    pub backend_expr_pattern: String,
    pub max_qubits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeprecationEntry {
    pub callee_path: String,
    pub replacement: Option<String>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleApi {
    pub module_path: String,
    pub attributes: BTreeSet<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub gates: BTreeMap<String, GateSpec>,
    pub circuit_methods: BTreeSet<String>,
    pub limits: Vec<BackendLimit>,
    /// Provider name to the backend names its `get_backend` accepts.
    pub backends: BTreeMap<String, BTreeSet<String>>,
    pub deprecations: Vec<DeprecationEntry>,
    pub modules: Vec<ModuleApi>,
    pub known_imports: BTreeMap<String, BTreeSet<String>>,
    pub qasm_unsupported: BTreeSet<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum KbError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: duplicate {what} '{key}'")]
    Duplicate {
        line: usize,
        what: &'static str,
        key: String,
    },
    #[error("cannot read knowledge base: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Gates,
    CircuitMethods,
    BackendLimits,
    Backends,
    Deprecated,
    Modules,
    Imports,
    QasmUnsupported,
}

impl Section {
    fn parse(name: &str) -> Option<Section> {
        Some(match name {
            "gates" => Section::Gates,
            "circuit_methods" => Section::CircuitMethods,
            "backend_limits" => Section::BackendLimits,
            "backends" => Section::Backends,
            "deprecated" => Section::Deprecated,
            "modules" => Section::Modules,
            "imports" => Section::Imports,
            "qasm_unsupported" => Section::QasmUnsupported,
            _ => return None,
        })
    }
}

pub fn load_kb(path: &Path) -> Result<KnowledgeBase, KbError> {
    let text = std::fs::read_to_string(path)?;
    KnowledgeBase::parse(&text)
}

impl KnowledgeBase {
    pub fn bundled() -> KnowledgeBase {
        KnowledgeBase::parse(DEFAULT_KB).expect("bundled knowledge base is well formed")
    }

    pub fn parse(text: &str) -> Result<KnowledgeBase, KbError> {
        let mut kb = KnowledgeBase::default();
        let mut section = None;
        let mut seen_content = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let format_err = |message: String| KbError::Format { line, message };
            if let Some(name) = content.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| format_err(format!("malformed section header '{content}'")))?;
                section = Some(
                    Section::parse(name.trim())
                        .ok_or_else(|| format_err(format!("unknown section '{name}'")))?,
                );
                seen_content = true;
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let Some(section) = section else {
                if fields[0] == "version" && !seen_content {
                    if fields.len() != 2 || fields[1] != "1" {
                        return Err(format_err(format!("unsupported version '{content}'")));
                    }
                    seen_content = true;
                    continue;
                }
                return Err(format_err("record outside of any section".to_string()));
            };
            kb.add_record(section, &fields, content, line)?;
        }
        Ok(kb)
    }

    fn add_record(
        &mut self,
        section: Section,
        fields: &[&str],
        content: &str,
        line: usize,
    ) -> Result<(), KbError> {
        let format_err = |message: String| KbError::Format { line, message };
        let count = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|_| format_err(format!("{what} must be a count, found '{s}'")))
        };
        match section {
            Section::Gates => {
                let [name, qubits, params, clbits, controls] = fields else {
                    return Err(format_err(format!(
                        "gate record needs 5 fields, found {}",
                        fields.len()
                    )));
                };
                let qubit_arity = if *qubits == "*" {
                    QubitArity::Variadic
                } else {
                    let n = count(qubits, "qubit arity")?;
                    if n == 0 {
                        return Err(format_err(format!("gate '{name}' must act on a qubit")));
                    }
                    QubitArity::Fixed(n)
                };
                let control_positions = if *controls == "-" {
                    Vec::new()
                } else {
                    controls
                        .split(',')
                        .map(|c| count(c, "control position"))
                        .collect::<Result<Vec<_>, _>>()?
                };
                if let QubitArity::Fixed(n) = qubit_arity {
                    if let Some(bad) = control_positions.iter().find(|&&c| c >= n) {
                        return Err(format_err(format!(
                            "control position {bad} out of range for '{name}'"
                        )));
                    }
                }
                let spec = GateSpec {
                    method_name: name.to_string(),
                    qubit_arity,
                    angle_param_arity: count(params, "parameter arity")?,
                    clbit_arity: count(clbits, "clbit arity")?,
                    control_positions,
                };
                if self.gates.insert(name.to_string(), spec).is_some() {
                    return Err(duplicate(line, "gate", name));
                }
            }
            Section::CircuitMethods | Section::QasmUnsupported => {
                let set = if section == Section::CircuitMethods {
                    &mut self.circuit_methods
                } else {
                    &mut self.qasm_unsupported
                };
                for name in fields {
                    if !set.insert(name.to_string()) {
                        return Err(duplicate(line, "method", name));
                    }
                }
            }
            Section::BackendLimits => {
                let max_qubits = count(fields[0], "qubit limit")?;
                if max_qubits == 0 {
                    return Err(format_err("qubit limit must be at least 1".to_string()));
                }
                let pattern = content[fields[0].len()..].trim();
                if pattern.is_empty() {
                    return Err(format_err("backend limit needs a pattern".to_string()));
                }
                if self
                    .limits
                    .iter()
                    .any(|l| l.backend_expr_pattern == pattern)
                {
                    return Err(duplicate(line, "backend pattern", pattern));
                }
                self.limits.push(BackendLimit {
                    backend_expr_pattern: pattern.to_string(),
                    max_qubits,
                });
            }
            Section::Backends | Section::Modules | Section::Imports => {
                if fields.len() < 2 {
                    return Err(format_err(format!("'{}' lists no members", fields[0])));
                }
                let map = match section {
                    Section::Backends => &mut self.backends,
                    Section::Imports => &mut self.known_imports,
                    _ => {
                        let pos = match self.modules.iter().position(|m| m.module_path == fields[0])
                        {
                            Some(pos) => pos,
                            None => {
                                self.modules.push(ModuleApi {
                                    module_path: fields[0].to_string(),
                                    attributes: BTreeSet::new(),
                                });
                                self.modules.len() - 1
                            }
                        };
                        for member in &fields[1..] {
                            if !self.modules[pos].attributes.insert(member.to_string()) {
                                return Err(duplicate(line, "member", member));
                            }
                        }
                        return Ok(());
                    }
                };
                let set = map.entry(fields[0].to_string()).or_default();
                for member in &fields[1..] {
                    if !set.insert(member.to_string()) {
                        return Err(duplicate(line, "member", member));
                    }
                }
            }
            Section::Deprecated => {
                if fields.len() < 2 {
                    return Err(format_err(
                        "deprecation needs a path and a replacement".to_string(),
                    ));
                }
                let path = fields[0];
                if self.deprecations.iter().any(|d| d.callee_path == path) {
                    return Err(duplicate(line, "deprecated path", path));
                }
                let rest = content[path.len()..].trim_start();
                let note = rest[fields[1].len()..].trim();
                self.deprecations.push(DeprecationEntry {
                    callee_path: path.to_string(),
                    replacement: (fields[1] != "-").then(|| fields[1].to_string()),
                    note: note.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn gate(&self, name: &str) -> Option<&GateSpec> {
        self.gates.get(name)
    }

    pub fn module(&self, path: &str) -> Option<&ModuleApi> {
        self.modules.iter().find(|m| m.module_path == path)
    }

    /// Limit whose pattern equals `origin` or is a dotted suffix of it.
    pub fn limit_for(&self, origin: &str) -> Option<&BackendLimit> {
        self.limits
            .iter()
            .find(|l| path_suffix_matches(origin, &l.backend_expr_pattern))
    }

    pub fn deprecation_for(&self, callee_path: &str) -> Option<&DeprecationEntry> {
        self.deprecations
            .iter()
            .find(|d| path_suffix_matches(callee_path, &d.callee_path))
    }
}

/// `full == pattern`, or `full` ends with `.pattern`.
pub fn path_suffix_matches(full: &str, pattern: &str) -> bool {
    full == pattern
        || full
            .strip_suffix(pattern)
            .is_some_and(|head| head.ends_with('.'))
}

fn duplicate(line: usize, what: &'static str, key: &str) -> KbError {
    KbError::Duplicate {
        line,
        what,
        key: key.to_string(),
    }
}

impl fmt::Display for KnowledgeBase {
    /// Canonical serialization; parsing it yields an equal knowledge base.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "version 1")?;
        writeln!(f, "[gates]")?;
        for g in self.gates.values() {
            let qubits = match g.qubit_arity {
                QubitArity::Fixed(n) => n.to_string(),
                QubitArity::Variadic => "*".to_string(),
            };
            let controls = if g.control_positions.is_empty() {
                "-".to_string()
            } else {
                let mut s = String::new();
                for (i, c) in g.control_positions.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    let _ = write!(s, "{c}");
                }
                s
            };
            writeln!(
                f,
                "{} {} {} {} {}",
                g.method_name, qubits, g.angle_param_arity, g.clbit_arity, controls
            )?;
        }
        write_names(f, "circuit_methods", &self.circuit_methods)?;
        writeln!(f, "[backend_limits]")?;
        for l in &self.limits {
            writeln!(f, "{} {}", l.max_qubits, l.backend_expr_pattern)?;
        }
        write_map(f, "backends", &self.backends)?;
        writeln!(f, "[deprecated]")?;
        for d in &self.deprecations {
            let replacement = d.replacement.as_deref().unwrap_or("-");
            writeln!(f, "{} {} {}", d.callee_path, replacement, d.note)?;
        }
        writeln!(f, "[modules]")?;
        for m in &self.modules {
            write_members(f, &m.module_path, &m.attributes)?;
        }
        write_map(f, "imports", &self.known_imports)?;
        write_names(f, "qasm_unsupported", &self.qasm_unsupported)
    }
}

fn write_names(f: &mut fmt::Formatter<'_>, section: &str, names: &BTreeSet<String>) -> fmt::Result {
    writeln!(f, "[{section}]")?;
    for name in names {
        writeln!(f, "{name}")?;
    }
    Ok(())
}

fn write_map(
    f: &mut fmt::Formatter<'_>,
    section: &str,
    map: &BTreeMap<String, BTreeSet<String>>,
) -> fmt::Result {
    writeln!(f, "[{section}]")?;
    for (key, members) in map {
        write_members(f, key, members)?;
    }
    Ok(())
}

fn write_members(f: &mut fmt::Formatter<'_>, key: &str, members: &BTreeSet<String>) -> fmt::Result {
    write!(f, "{key}")?;
    for m in members {
        write!(f, " {m}")?;
    }
    writeln!(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_an_empty_kb() {
        assert_eq!(KnowledgeBase::parse("").unwrap(), KnowledgeBase::default());
        assert_eq!(
            KnowledgeBase::parse("# nothing\nversion 1\n").unwrap(),
            KnowledgeBase::default()
        );
    }

    #[test]
    fn records_parse() {
        let kb = KnowledgeBase::parse(
            "version 1\n[gates]\ncx 2 0 0 0\nmcx * 0 0 0 # variadic\n\
             [backend_limits]\n30 Aer.get_backend(\"qasm_simulator\")\n\
             [deprecated]\nu1 p use the phase gate\niden - \n\
             [modules]\nqiskit.pulse play\nqiskit.pulse delay\n",
        )
        .unwrap();
        assert_eq!(kb.gate("cx").unwrap().expected_args(), Some(2));
        assert_eq!(kb.gate("mcx").unwrap().qubit_arity, QubitArity::Variadic);
        assert_eq!(kb.limits[0].max_qubits, 30);
        assert_eq!(kb.deprecations[0].note, "use the phase gate");
        assert_eq!(kb.deprecations[1].replacement, None);
        assert_eq!(kb.module("qiskit.pulse").unwrap().attributes.len(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("[gates]\ncx 2 0 0\n", 2),
            ("[gates]\ncx 2 0 0 0\ncx 2 0 0 0\n", 3),
            ("[gates]\ncx 2 0 0 5\n", 2),
            ("\n[nope]\n", 2),
            ("h 1 0 0 -\n", 1),
            ("version 2\n", 1),
            ("[backend_limits]\n0 x\n", 2),
            ("[backend_limits]\n3 x\n4 x\n", 3),
            ("[modules]\nqiskit.pulse\n", 2),
        ];
        for (text, line) in cases {
            let err = KnowledgeBase::parse(text).unwrap_err();
            let got = match err {
                KbError::Format { line, .. } | KbError::Duplicate { line, .. } => line,
                KbError::Io(_) => unreachable!(),
            };
            assert_eq!(got, line, "{text:?}");
        }
    }

    #[test]
    fn suffix_matching_respects_segments() {
        assert!(path_suffix_matches("qc.u1", "u1"));
        assert!(path_suffix_matches("u1", "u1"));
        assert!(!path_suffix_matches("qc.mu1", "u1"));
        assert!(path_suffix_matches(
            "qiskit.Aer.get_backend(\"qasm_simulator\")",
            "Aer.get_backend(\"qasm_simulator\")"
        ));
    }
}
