use crate::error::{Error, Result};
use crate::qstate::{
    check_orthonormal, projective_measure, tensor_product, StateVector, UnitaryOp, EIGEN_CUTOFF,
};

/// Teleportation: the payload on wires `a` is joined with the shared
/// `resource`; Alice measures `a ∪ alice_wires` in `measurement_states`, and
/// on outcome `x` Bob applies `corrections[x]†`.
///
/// `measurement_states` live on the payload wires followed by `alice_wires`
/// in the listed order. Corrections are stored on `bob_wires` (ascending),
/// indexed in the resource's wire numbering.
#[derive(Clone, Debug)]
pub struct TeleportationProtocol {
    name: String,
    resource: StateVector,
    alice_wires: Vec<usize>,
    bob_wires: Vec<usize>,
    input_dims: Vec<usize>,
    measurement_states: Vec<StateVector>,
    corrections: Vec<UnitaryOp>,
}

#[derive(Clone, Debug)]
pub struct OutcomeRecord {
    pub index: usize,
    pub probability: f64,
    pub pre_correction: Option<StateVector>,
    pub post_correction: Option<StateVector>,
    /// `|<input|post>|²`, present for realized outcomes only.
    pub fidelity: Option<f64>,
}

impl OutcomeRecord {
    pub fn realized(&self) -> bool {
        self.fidelity.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct ProtocolTranscript {
    pub protocol: String,
    pub outcomes: Vec<OutcomeRecord>,
    pub worst_fidelity: f64,
    pub total_probability: f64,
    pub bits: f64,
}

impl ProtocolTranscript {
    pub fn realized(&self) -> impl Iterator<Item = &OutcomeRecord> {
        self.outcomes.iter().filter(|o| o.realized())
    }
}

impl TeleportationProtocol {
    pub fn new(
        name: impl Into<String>,
        resource: StateVector,
        alice_wires: Vec<usize>,
        bob_wires: Vec<usize>,
        input_dims: Vec<usize>,
        measurement_states: Vec<StateVector>,
        corrections: Vec<UnitaryOp>,
    ) -> Result<Self> {
        let register = resource.register().clone();
        let mut all: Vec<usize> = alice_wires.iter().chain(&bob_wires).copied().collect();
        register.check_wires(&all)?;
        all.sort_unstable();
        if all.len() != register.num_wires() || alice_wires.is_empty() || bob_wires.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "alice {alice_wires:?} and bob {bob_wires:?} must split all {} wires",
                register.num_wires()
            )));
        }
        let mut bob_wires = bob_wires;
        bob_wires.sort_unstable();
        let bob_dims = register.dims_of(&bob_wires);
        if input_dims != bob_dims {
            return Err(Error::ShapeMismatch(input_dims, bob_dims));
        }
        let measured_dims: Vec<usize> = input_dims
            .iter()
            .copied()
            .chain(register.dims_of(&alice_wires))
            .collect();
        for s in &measurement_states {
            if s.dims() != measured_dims.as_slice() {
                return Err(Error::ShapeMismatch(measured_dims, s.dims().to_vec()));
            }
        }
        check_orthonormal(&measurement_states)?;
        if measurement_states.len() != corrections.len() || corrections.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "{} measurement states but {} corrections",
                measurement_states.len(),
                corrections.len()
            )));
        }
        let corrections = corrections
            .iter()
            .map(|u| u.expand_to(&bob_wires, &bob_dims))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name: name.into(),
            resource,
            alice_wires,
            bob_wires,
            input_dims,
            measurement_states,
            corrections,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn resource(&self) -> &StateVector {
        &self.resource
    }

    pub fn alice_wires(&self) -> &[usize] {
        &self.alice_wires
    }

    pub fn bob_wires(&self) -> &[usize] {
        &self.bob_wires
    }

    pub fn input_dims(&self) -> &[usize] {
        &self.input_dims
    }

    pub fn measurement_states(&self) -> &[StateVector] {
        &self.measurement_states
    }

    pub fn corrections(&self) -> &[UnitaryOp] {
        &self.corrections
    }

    /// Number of measurement outcomes `D`.
    pub fn num_outcomes(&self) -> usize {
        self.measurement_states.len()
    }

    /// Classical bits Alice sends: `log2 D`.
    pub fn classical_bits(&self) -> f64 {
        (self.num_outcomes() as f64).log2()
    }
}

pub fn run_teleportation(
    p: &TeleportationProtocol,
    input: &StateVector,
) -> Result<ProtocolTranscript> {
    if input.dims() != p.input_dims.as_slice() {
        return Err(Error::ShapeMismatch(
            p.input_dims.clone(),
            input.dims().to_vec(),
        ));
    }
    let k = p.input_dims.len();
    let joint = tensor_product(input, &p.resource);
    let measured: Vec<usize> = (0..k).chain(p.alice_wires.iter().map(|w| w + k)).collect();
    let outcomes = projective_measure(&joint, &measured, &p.measurement_states)?;
    let total_probability: f64 = outcomes.iter().map(|o| o.probability).sum();
    if total_probability < 1.0 - 1e-9 {
        return Err(Error::IncompleteBasis(total_probability));
    }

    // The residual register holds Bob's wires in ascending order.
    let local_wires: Vec<usize> = (0..p.bob_wires.len()).collect();
    let mut records = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        let record = match outcome.post_state {
            Some(residual) if outcome.probability > EIGEN_CUTOFF => {
                let undo = p.corrections[outcome.index]
                    .dagger()
                    .on_wires(local_wires.clone())?;
                let corrected = residual.apply(&undo)?;
                let fidelity = input.fidelity(&corrected)?;
                OutcomeRecord {
                    index: outcome.index,
                    probability: outcome.probability,
                    pre_correction: Some(residual),
                    post_correction: Some(corrected),
                    fidelity: Some(fidelity),
                }
            }
            _ => OutcomeRecord {
                index: outcome.index,
                probability: outcome.probability,
                pre_correction: None,
                post_correction: None,
                fidelity: None,
            },
        };
        records.push(record);
    }
    let worst_fidelity = records
        .iter()
        .filter_map(|r| r.fidelity)
        .fold(f64::INFINITY, f64::min);
    Ok(ProtocolTranscript {
        protocol: p.name.clone(),
        outcomes: records,
        worst_fidelity,
        total_probability,
        bits: p.classical_bits(),
    })
}

/// Resource `(u ⊗ I_B)|φ>`; measurement states mapped by `I_a ⊗ u`.
pub fn transform_teleport_sender(
    p: &TeleportationProtocol,
    u: &UnitaryOp,
) -> Result<TeleportationProtocol> {
    let k = p.input_dims.len();
    let shifted = u
        .wires()
        .iter()
        .map(|w| {
            p.alice_wires
                .iter()
                .position(|a| a == w)
                .map(|pos| pos + k)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "sender transform wire {w} not among alice wires {:?}",
                        p.alice_wires
                    ))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let local = u.on_wires(shifted)?;
    let states = p
        .measurement_states
        .iter()
        .map(|s| s.apply(&local))
        .collect::<Result<Vec<_>>>()?;
    TeleportationProtocol::new(
        format!("{}+sender", p.name),
        p.resource.apply(u)?,
        p.alice_wires.clone(),
        p.bob_wires.clone(),
        p.input_dims.clone(),
        states,
        p.corrections.clone(),
    )
}

/// Resource `(I ⊗ v)|φ>`; corrections become `v U_x`, so Bob applies `U_x† v†`.
pub fn transform_teleport_receiver(
    p: &TeleportationProtocol,
    v: &UnitaryOp,
) -> Result<TeleportationProtocol> {
    if !v.wires().iter().all(|w| p.bob_wires.contains(w)) {
        return Err(Error::InvalidParameter(format!(
            "receiver transform on wires {:?} outside bob wires {:?}",
            v.wires(),
            p.bob_wires
        )));
    }
    let bob_dims = p.resource.register().dims_of(&p.bob_wires);
    let v_wide = v.expand_to(&p.bob_wires, &bob_dims)?;
    let corrections = p
        .corrections
        .iter()
        .map(|u| v_wide.compose(u))
        .collect::<Result<Vec<_>>>()?;
    TeleportationProtocol::new(
        format!("{}+receiver", p.name),
        p.resource.apply(v)?,
        p.alice_wires.clone(),
        p.bob_wires.clone(),
        p.input_dims.clone(),
        p.measurement_states.clone(),
        corrections,
    )
}
