//! Shared rendering helpers: exact values as text and the JSON schema.
//!
//! Every big integer is emitted as a decimal string so downstream consumers
//! never round through floats, and rationals are split into numerator and
//! denominator strings.  Serialization goes through fixed structs, which
//! keeps field order and therefore output bytes stable across runs.

use altbounds::bounds::{BoundEntry, BoundValue, EquivalenceFlags, Perfectness, Scope};
use altbounds::spectra::{IntersectionArray, SpectrumTable};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

#[derive(Serialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl RationalJson {
    pub fn from_rational(r: &BigRational) -> RationalJson {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

/// One bound cell in JSON form.  Applicable cells always carry "value",
/// the integer cardinality cap; LP cells add the exact rational and
/// dimension bounds add the dimension.
#[derive(Serialize)]
#[serde(untagged)]
pub enum CellJson {
    Na {
        na: String,
    },
    Count {
        value: String,
        #[serde(skip_serializing_if = "std::ops::Not::not")]
        clamped: bool,
    },
    Lp {
        value: String,
        exact: RationalJson,
        #[serde(skip_serializing_if = "std::ops::Not::not")]
        clamped: bool,
    },
    Dimension {
        value: String,
        dim: u64,
    },
}

impl CellJson {
    pub fn from_entry(e: &BoundEntry) -> CellJson {
        match &e.value {
            BoundValue::Count(v) => CellJson::Count {
                value: v.to_string(),
                clamped: e.clamped,
            },
            BoundValue::Lp { exact, floored } => CellJson::Lp {
                value: floored.to_string(),
                exact: RationalJson::from_rational(exact),
                clamped: e.clamped,
            },
            BoundValue::Dimension { dim, cardinality } => CellJson::Dimension {
                value: cardinality.to_string(),
                dim: *dim,
            },
            BoundValue::NotApplicable(reason) => CellJson::Na {
                na: (*reason).to_string(),
            },
        }
    }
}

#[derive(Serialize)]
pub struct NamedCellJson {
    pub name: &'static str,
    #[serde(flatten)]
    pub cell: CellJson,
}

#[derive(Serialize)]
pub struct FlagsJson {
    pub hoffman_equals_singleton: Option<bool>,
    pub ratio_k2_equals_singleton: Option<bool>,
    pub ratio_k3_equals_singleton: Option<bool>,
    pub minor_lp_equals_delsarte: Option<bool>,
}

impl FlagsJson {
    pub fn from_flags(f: &EquivalenceFlags) -> FlagsJson {
        FlagsJson {
            hoffman_equals_singleton: f.hoffman_equals_singleton,
            ratio_k2_equals_singleton: f.ratio_k2_equals_singleton,
            ratio_k3_equals_singleton: f.ratio_k3_equals_singleton,
            minor_lp_equals_delsarte: f.minor_lp_equals_delsarte,
        }
    }
}

#[derive(Serialize)]
pub struct SpectrumJson {
    pub q: u64,
    pub n: usize,
    pub diameter: usize,
    pub num_vertices: String,
    pub degree: String,
    pub theta: Vec<String>,
    pub mult: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub a: Vec<String>,
    pub k: Vec<String>,
}

impl SpectrumJson {
    pub fn build(st: &SpectrumTable, ia: &IntersectionArray, num_vertices: &BigUint) -> SpectrumJson {
        let strings = |v: &[BigUint]| v.iter().map(|x| x.to_string()).collect();
        SpectrumJson {
            q: st.q,
            n: st.n,
            diameter: st.theta.len() - 1,
            num_vertices: num_vertices.to_string(),
            degree: st.theta[0].to_string(),
            theta: st.theta.iter().map(|t| t.to_string()).collect(),
            mult: strings(&st.mult),
            b: strings(&ia.b),
            c: strings(&ia.c),
            a: strings(&ia.a),
            k: strings(&ia.k),
        }
    }
}

/// Cell text for CSV and for the aligned bounds table: the integer cap in
/// decimal, or "NA:<reason>" when the bound does not constrain the cell.
pub fn cell_text(value: &BoundValue) -> String {
    match value {
        BoundValue::Count(v) => v.to_string(),
        BoundValue::Lp { floored, .. } => floored.to_string(),
        BoundValue::Dimension { cardinality, .. } => cardinality.to_string(),
        BoundValue::NotApplicable(reason) => format!("NA:{reason}"),
    }
}

/// Side notes for the human-readable bounds listing: exact rationals that
/// are not integers, dimensions behind cardinalities, scope and clamping.
pub fn entry_notes(e: &BoundEntry) -> Vec<String> {
    let mut notes = Vec::new();
    match &e.value {
        BoundValue::NotApplicable(_) => return notes,
        BoundValue::Lp { exact, .. } if !exact.denom().is_one() => {
            notes.push(format!("exact {}/{}", exact.numer(), exact.denom()));
        }
        BoundValue::Dimension { dim, .. } => {
            notes.push(format!("dimension {dim}"));
        }
        _ => {}
    }
    if e.scope == Scope::LinearOnly {
        notes.push("linear codes only".to_string());
    }
    if e.clamped {
        notes.push("clamped to the space size".to_string());
    }
    notes
}

pub fn flag_text(flag: Option<bool>) -> &'static str {
    match flag {
        Some(true) => "yes",
        Some(false) => "no",
        None => "",
    }
}

pub fn perfectness_text(p: Perfectness) -> &'static str {
    match p {
        Perfectness::PerfectImpossibleEvenD => "perfect codes impossible, d is even",
        Perfectness::NotTight => "sphere packing not tight, no perfect code here",
        Perfectness::Tight => "sphere packing tight, perfect-code parameters",
    }
}
