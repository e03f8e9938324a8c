//! Static bug-pattern analysis for Python-syntax quantum programs.

pub mod analysis;
pub mod detectors;
pub mod evaluation;
pub mod extraction;
pub mod frontend;
pub mod knowledge_base;
pub mod report;
