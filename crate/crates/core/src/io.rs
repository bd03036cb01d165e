//! JSON state documents, teleportation transcripts and scan CSV.

use serde::{Deserialize, Serialize};

use crate::analysis::PartitionScan;
use crate::error::{Error, Result};
use crate::protocols::ProtocolTranscript;
use crate::qstate::{QuditRegister, StateVector, C64};

/// Documents whose norm is off by more than this are rejected.
pub const READ_NORM_TOL: f64 = 1e-6;

/// `{"dims": [...], "amplitudes": [[re, im], ...]}`, big-endian order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<[f64; 2]>,
}

impl From<&StateVector> for StateDocument {
    fn from(s: &StateVector) -> Self {
        Self {
            dims: s.dims().to_vec(),
            amplitudes: s.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl StateDocument {
    /// Validates length and norm, then renormalizes.
    pub fn to_state(&self) -> Result<StateVector> {
        let register = QuditRegister::new(self.dims.clone())?;
        if self.amplitudes.len() != register.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: register.total_dim(),
                found: self.amplitudes.len(),
            });
        }
        let amps: Vec<C64> = self
            .amplitudes
            .iter()
            .map(|[re, im]| C64::new(*re, *im))
            .collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > READ_NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        StateVector::normalized(register, amps)
    }
}

pub fn state_from_json(text: &str) -> Result<StateVector> {
    serde_json::from_str::<StateDocument>(text)?.to_state()
}

pub fn state_to_json(state: &StateVector) -> String {
    let doc = StateDocument::from(state);
    let amps: Vec<String> = doc
        .amplitudes
        .iter()
        .map(|[re, im]| format!("[{}, {}]", sig15(*re), sig15(*im)))
        .collect();
    let dims: Vec<String> = doc.dims.iter().map(|d| d.to_string()).collect();
    format!(
        "{{\"dims\": [{}], \"amplitudes\": [{}]}}",
        dims.join(", "),
        amps.join(", ")
    )
}

/// `x` rendered with 15 significant digits, trailing zeros trimmed.
pub fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            format!("{x}")
        };
    }
    let s = format!("{:.14e}", x);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_zeros(&fixed)
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, Serialize)]
struct OutcomeJson {
    index: usize,
    probability: f64,
    fidelity: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
struct TranscriptJson<'a> {
    protocol: &'a str,
    outcomes: Vec<OutcomeJson>,
    worst_fidelity: f64,
    bits: f64,
}

/// `x` rounded to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    sig15(x).parse().unwrap_or(x)
}

/// `{"protocol", "outcomes": [{"index", "probability", "fidelity"}], "worst_fidelity", "bits"}`.
/// Unrealized outcomes carry `"fidelity": null`.
pub fn transcript_to_json(t: &ProtocolTranscript) -> Result<String> {
    let doc = TranscriptJson {
        protocol: &t.protocol,
        outcomes: t
            .outcomes
            .iter()
            .map(|o| OutcomeJson {
                index: o.index,
                probability: round15(o.probability),
                fidelity: o.fidelity.map(round15),
            })
            .collect(),
        worst_fidelity: round15(t.worst_fidelity),
        bits: round15(t.bits),
    };
    Ok(serde_json::to_string(&doc)?)
}

/// `n_wires,subset,size,entanglement_ebits`, one line per row.
pub fn scan_to_csv(scan: &PartitionScan) -> String {
    let mut out = String::from("n_wires,subset,size,entanglement_ebits\n");
    for row in &scan.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            scan.n_wires,
            row.subset_label(),
            row.size,
            sig15(row.entanglement)
        ));
    }
    out
}
