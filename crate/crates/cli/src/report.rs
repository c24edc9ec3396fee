//! JSON report shapes. Field elements are written as strings (`"2"`,
//! `"-1/3"`) so rationals survive without loss.

use mspace_core::classify::Decomposition;
use mspace_core::spectrum::SpectrumReport;
use mspace_core::{FieldDesc, Matrix, Vector};
use serde::Serialize;

pub fn field_name(field: FieldDesc) -> String {
    match field {
        FieldDesc::Prime(p) => p.to_string(),
        FieldDesc::Rational => "Q".into(),
    }
}

pub fn matrix_cells(m: &Matrix) -> Vec<Vec<String>> {
    m.to_scalar_rows().iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

fn vector_cells(v: &Vector) -> Vec<String> {
    v.to_scalars().iter().map(|s| s.to_string()).collect()
}

#[derive(Serialize)]
pub struct BlockReport {
    pub size: usize,
    pub gram: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub field: String,
    pub n: usize,
    pub blocks: Vec<BlockReport>,
    pub basis_change: Vec<Vec<String>>,
    pub verified: bool,
}

impl ClassifyReport {
    pub fn new(field: FieldDesc, n: usize, d: &Decomposition) -> Self {
        ClassifyReport {
            field: field_name(field),
            n,
            blocks: d.blocks.iter().map(|b| BlockReport { size: b.size(), gram: matrix_cells(b.gram()) }).collect(),
            basis_change: matrix_cells(&d.basis_change),
            verified: d.verified,
        }
    }
}

#[derive(Serialize)]
pub struct WitnessReport {
    pub vector: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub field: String,
    pub n: usize,
    pub dim: usize,
    pub trivial_spectrum: bool,
    pub witness: Option<WitnessReport>,
    pub totally_intransitive: bool,
    pub maximal: bool,
    pub irreducible: Option<bool>,
}

impl CheckReport {
    pub fn new(field: FieldDesc, n: usize, dim: usize, r: &SpectrumReport) -> Self {
        CheckReport {
            field: field_name(field),
            n,
            dim,
            trivial_spectrum: r.trivial_spectrum,
            witness: r
                .witness
                .as_ref()
                .map(|w| WitnessReport { vector: vector_cells(&w.vector), matrix: matrix_cells(&w.matrix) }),
            totally_intransitive: r.totally_intransitive,
            maximal: r.maximal,
            irreducible: r.irreducible,
        }
    }
}

#[derive(Serialize)]
pub struct DecisionReport {
    pub field: String,
    pub n: usize,
    pub decision: &'static str,
    pub result: bool,
}
