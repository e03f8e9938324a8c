//! Register and circuit declarations, and the bits that call arguments name.

use std::collections::{BTreeMap, BTreeSet};

use super::{callee_name, Context};
use crate::extraction::{resolve_origin, Extraction, QPAttributeEntry};
use crate::frontend::{Arg, Expr, ExprKind};
use crate::knowledge_base::{GateSpec, KnowledgeBase, QubitArity};

/// Upper bound on the bits enumerated from one `range(...)` argument.
const MAX_RANGE: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub binding: usize,
    pub classical: bool,
    pub size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitModel {
    pub name: String,
    /// Binding index of the `QuantumCircuit(...)` assignment.
    pub binding: usize,
    pub declared_qubits: Option<usize>,
    pub declared_clbits: Option<usize>,
    /// Quantum registers as (register binding, offset of its first qubit).
    pub qregs: Vec<(usize, usize)>,
    pub cregs: Vec<(usize, usize)>,
    /// Measured qubit index to the ordinal of the first record measuring it.
    pub measured_qubits: BTreeMap<usize, usize>,
    pub used_qubit_indices: BTreeSet<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CircuitModels {
    pub registers: BTreeMap<usize, Register>,
    pub circuits: BTreeMap<usize, CircuitModel>,
}

impl CircuitModels {
    pub fn by_name<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CircuitModel> {
        self.circuits.values().filter(move |c| c.name == name)
    }
}

/// A bit named by a call argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bit {
    /// Integer index into the circuit's flat qubit or clbit space.
    Flat(usize),
    /// Element of a register, by register binding.
    Reg {
        reg: usize,
        index: usize,
    },
    Unknown,
}

/// Integer value of a literal, or of a name whose origin is one.
pub fn int_of(extraction: &Extraction, expr: &Expr, at: usize) -> Option<i64> {
    if let Some(v) = expr.as_int() {
        return Some(v);
    }
    let attrs = &extraction.attributes;
    let origin = resolve_origin(expr.as_name()?, attrs, at).ok()?;
    attrs.get(origin.binding?)?.value.as_int()
}

fn size_arg(extraction: &Extraction, entry: &QPAttributeEntry) -> Option<usize> {
    let ExprKind::Call { args, .. } = &entry.value.kind else {
        return None;
    };
    let expr = args.iter().find_map(|a| match a {
        Arg::Positional(e) => Some(e),
        Arg::Keyword { name, value } if name.name == "size" => Some(value),
        _ => None,
    })?;
    int_of(extraction, expr, entry.binding_index).and_then(|v| usize::try_from(v).ok())
}

pub fn build_circuit_model(extraction: &Extraction, kb: &KnowledgeBase) -> CircuitModels {
    let attrs = &extraction.attributes;
    let entries = attrs.entries();
    let mut models = CircuitModels::default();
    for entry in entries {
        let classical = match callee_name(&entry.value) {
            Some("QuantumRegister" | "AncillaRegister") => false,
            Some("ClassicalRegister") => true,
            _ => continue,
        };
        models.registers.insert(
            entry.binding_index,
            Register {
                name: entry.name.clone(),
                binding: entry.binding_index,
                classical,
                size: size_arg(extraction, entry),
            },
        );
    }
    for entry in entries {
        if callee_name(&entry.value) != Some("QuantumCircuit") {
            continue;
        }
        let ExprKind::Call { args, .. } = &entry.value.kind else {
            continue;
        };
        let mut ints = Vec::new();
        let mut qregs = Vec::new();
        let mut cregs = Vec::new();
        let mut known = !args.is_empty();
        let (mut nq, mut nc) = (Some(0usize), Some(0usize));
        for arg in args {
            let expr = match arg {
                Arg::Positional(e) => e,
                Arg::Keyword { .. } => continue,
                Arg::Starred(_) | Arg::DoubleStarred(_) => {
                    known = false;
                    continue;
                }
            };
            if let Some(v) = int_of(extraction, expr, entry.binding_index) {
                ints.push(v);
                continue;
            }
            let reg = expr
                .as_name()
                .and_then(|n| resolve_origin(n, attrs, entry.binding_index).ok())
                .and_then(|o| o.binding)
                .and_then(|b| models.registers.get(&b));
            match reg {
                Some(r) if r.classical => {
                    cregs.push((r.binding, nc.unwrap_or(0)));
                    nc = nc.zip(r.size).map(|(a, b)| a + b);
                }
                Some(r) => {
                    qregs.push((r.binding, nq.unwrap_or(0)));
                    nq = nq.zip(r.size).map(|(a, b)| a + b);
                }
                None => known = false,
            }
        }
        let (declared_qubits, declared_clbits) = if !known {
            (None, None)
        } else if !ints.is_empty() {
            let q = usize::try_from(ints[0]).ok();
            let c = ints.get(1).map_or(Some(0), |&v| usize::try_from(v).ok());
            (q, c)
        } else {
            (nq, nc)
        };
        models.circuits.insert(
            entry.binding_index,
            CircuitModel {
                name: entry.name.clone(),
                binding: entry.binding_index,
                declared_qubits,
                declared_clbits,
                qregs,
                cregs,
                measured_qubits: BTreeMap::new(),
                used_qubit_indices: BTreeSet::new(),
            },
        );
    }
    fill_usage(extraction, kb, &mut models);
    models
}

/// Records which qubits each circuit's calls touch and measure. Circuits
/// that grow registers after construction lose their declared sizes.
fn fill_usage(extraction: &Extraction, kb: &KnowledgeBase, models: &mut CircuitModels) {
    let attrs = &extraction.attributes;
    for (ordinal, record) in extraction.operations.records.iter().enumerate() {
        let Some(binding) = record
            .receiver_name()
            .and_then(|n| resolve_origin(n, attrs, record.horizon).ok())
            .and_then(|o| (!o.cycle).then_some(o.binding).flatten())
        else {
            continue;
        };
        if !models.circuits.contains_key(&binding) {
            continue;
        }
        if matches!(record.method.as_str(), "add_register" | "add_bits") {
            let c = models.circuits.get_mut(&binding).unwrap();
            c.declared_qubits = None;
            c.declared_clbits = None;
            continue;
        }
        let Some(spec) = kb.gate(&record.method) else {
            continue;
        };
        let slots = gate_slots(spec, &record.positional_args);
        let bits: Vec<Bit> = slots
            .qubits
            .iter()
            .flat_map(|a| resolve_bits(extraction, models, &a.expr, record.horizon))
            .collect();
        let circuit = &models.circuits[&binding];
        let flat: Vec<usize> = bits
            .iter()
            .filter_map(|b| qubit_index(models, circuit, *b))
            .collect();
        let circuit = models.circuits.get_mut(&binding).unwrap();
        circuit.used_qubit_indices.extend(flat.iter().copied());
        if record.method == "measure" {
            for q in flat {
                circuit.measured_qubits.entry(q).or_insert(ordinal);
            }
        }
    }
}

/// Flat qubit index of a bit within `circuit`, when it denotes one of the
/// circuit's qubits.
pub fn qubit_index(models: &CircuitModels, circuit: &CircuitModel, bit: Bit) -> Option<usize> {
    match bit {
        Bit::Flat(i) => Some(i),
        Bit::Reg { reg, index } => circuit
            .qregs
            .iter()
            .find(|(b, _)| *b == reg)
            .filter(|_| models.registers.get(&reg).is_some_and(|r| !r.classical))
            .map(|(_, offset)| offset + index),
        Bit::Unknown => None,
    }
}

/// Flat clbit index of a bit within `circuit`.
pub fn clbit_index(circuit: &CircuitModel, bit: Bit) -> Option<usize> {
    match bit {
        Bit::Flat(i) => Some(i),
        Bit::Reg { reg, index } => circuit
            .cregs
            .iter()
            .find(|(b, _)| *b == reg)
            .map(|(_, offset)| offset + index),
        Bit::Unknown => None,
    }
}

/// Bits an argument expression names, flattening lists, ranges and whole
/// registers.
pub fn resolve_bits(
    extraction: &Extraction,
    models: &CircuitModels,
    expr: &Expr,
    horizon: usize,
) -> Vec<Bit> {
    let mut out = Vec::new();
    collect_bits(extraction, models, expr, horizon, 0, &mut out);
    out
}

fn collect_bits(
    extraction: &Extraction,
    models: &CircuitModels,
    expr: &Expr,
    horizon: usize,
    depth: usize,
    out: &mut Vec<Bit>,
) {
    if depth > 8 {
        out.push(Bit::Unknown);
        return;
    }
    let attrs = &extraction.attributes;
    match &expr.kind {
        ExprKind::Constant(_) | ExprKind::UnaryOp { .. } => match expr.as_int() {
            Some(v) if v >= 0 => out.push(Bit::Flat(v as usize)),
            _ => out.push(Bit::Unknown),
        },
        ExprKind::List(elts) | ExprKind::Tuple { elts, .. } => {
            for e in elts {
                collect_bits(extraction, models, e, horizon, depth + 1, out);
            }
        }
        ExprKind::Name(n) => {
            let origin = resolve_origin(n, attrs, horizon).ok();
            let Some(binding) = origin.filter(|o| !o.cycle).and_then(|o| o.binding) else {
                out.push(Bit::Unknown);
                return;
            };
            if let Some(reg) = models.registers.get(&binding) {
                match reg.size {
                    Some(size) => out.extend((0..size).map(|index| Bit::Reg {
                        reg: binding,
                        index,
                    })),
                    None => out.push(Bit::Unknown),
                }
                return;
            }
            let entry = &attrs.entries()[binding];
            match &entry.value.kind {
                ExprKind::Constant(_)
                | ExprKind::UnaryOp { .. }
                | ExprKind::List(_)
                | ExprKind::Tuple { .. } => {
                    collect_bits(extraction, models, &entry.value, binding, depth + 1, out)
                }
                _ => out.push(Bit::Unknown),
            }
        }
        ExprKind::Subscript { value, index } => {
            let reg = value
                .as_name()
                .and_then(|n| resolve_origin(n, attrs, horizon).ok())
                .filter(|o| !o.cycle)
                .and_then(|o| o.binding)
                .filter(|b| models.registers.contains_key(b));
            let idx = int_of(extraction, index, horizon);
            match (reg, idx) {
                (Some(reg), Some(i)) if i >= 0 => out.push(Bit::Reg {
                    reg,
                    index: i as usize,
                }),
                _ => out.push(Bit::Unknown),
            }
        }
        ExprKind::Call { func, args } if func.as_name() == Some("range") => {
            let ints: Option<Vec<i64>> = args
                .iter()
                .map(|a| match a {
                    Arg::Positional(e) => int_of(extraction, e, horizon),
                    _ => None,
                })
                .collect();
            let (start, stop, step) = match ints.as_deref() {
                Some([stop]) => (0, *stop, 1),
                Some([start, stop]) => (*start, *stop, 1),
                Some([start, stop, step]) if *step > 0 => (*start, *stop, *step),
                _ => {
                    out.push(Bit::Unknown);
                    return;
                }
            };
            if start < 0 || stop - start > MAX_RANGE {
                out.push(Bit::Unknown);
                return;
            }
            out.extend(
                (start..stop)
                    .step_by(step as usize)
                    .map(|v| Bit::Flat(v as usize)),
            );
        }
        _ => out.push(Bit::Unknown),
    }
}

/// Positional argument slots of a gate call.
pub struct GateSlots<'r> {
    pub params: &'r [crate::extraction::ArgRecord],
    pub qubits: &'r [crate::extraction::ArgRecord],
    pub clbits: &'r [crate::extraction::ArgRecord],
}

pub fn gate_slots<'r>(spec: &GateSpec, args: &'r [crate::extraction::ArgRecord]) -> GateSlots<'r> {
    let p = spec.angle_param_arity.min(args.len());
    let rest = &args[p..];
    let q = match spec.qubit_arity {
        QubitArity::Fixed(n) => n.min(rest.len()),
        QubitArity::Variadic => rest.len().saturating_sub(spec.clbit_arity),
    };
    GateSlots {
        params: &args[..p],
        qubits: &rest[..q],
        clbits: &rest[q..],
    }
}

impl Context<'_> {
    pub(super) fn bits(&self, expr: &Expr, horizon: usize) -> Vec<Bit> {
        resolve_bits(self.extraction, &self.circuits, expr, horizon)
    }
}
