use crate::error::{Error, Result};
use crate::qstate::{check_orthonormal, StateVector, UnitaryOp};

/// Two decode overlaps closer than this make a decode ambiguous.
pub const AMBIGUITY_TOL: f64 = 1e-6;

/// Superdense coding: the sender applies `encoders[m]` to her wires of the
/// shared `resource` and ships them; the receiver measures the whole register.
#[derive(Clone, Debug)]
pub struct DenseCodingProtocol {
    name: String,
    resource: StateVector,
    sender_wires: Vec<usize>,
    encoders: Vec<UnitaryOp>,
    decoder_basis: Option<Vec<StateVector>>,
    encoded: Vec<StateVector>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecodeOutcome {
    pub message: usize,
    pub decoded: usize,
    pub overlap: f64,
    pub runner_up: f64,
}

impl DecodeOutcome {
    pub fn is_correct(&self) -> bool {
        self.message == self.decoded
    }
}

impl DenseCodingProtocol {
    /// Validates that the encoders act on `sender_wires` and that the encoded
    /// states (and an explicit decoder basis, if any) are orthonormal.
    pub fn new(
        name: impl Into<String>,
        resource: StateVector,
        sender_wires: Vec<usize>,
        encoders: Vec<UnitaryOp>,
        decoder_basis: Option<Vec<StateVector>>,
    ) -> Result<Self> {
        let register = resource.register().clone();
        register.check_wires(&sender_wires)?;
        if sender_wires.is_empty() || sender_wires.len() == register.num_wires() {
            return Err(Error::InvalidParameter(
                "sender wires must be a non-empty proper subset of the register".into(),
            ));
        }
        if encoders.is_empty() {
            return Err(Error::InvalidParameter("protocol has no encoders".into()));
        }
        let sender_dims = register.dims_of(&sender_wires);
        let encoders = encoders
            .iter()
            .map(|e| {
                if !e.wires().iter().all(|w| sender_wires.contains(w)) {
                    return Err(Error::InvalidParameter(format!(
                        "encoder on wires {:?} outside sender wires {sender_wires:?}",
                        e.wires()
                    )));
                }
                e.expand_to(&sender_wires, &sender_dims)
            })
            .collect::<Result<Vec<_>>>()?;
        let encoded = encoders
            .iter()
            .map(|e| resource.apply(e))
            .collect::<Result<Vec<_>>>()?;
        check_orthonormal(&encoded)?;
        if let Some(basis) = &decoder_basis {
            for b in basis {
                if b.register() != &register {
                    return Err(Error::ShapeMismatch(
                        register.dims().to_vec(),
                        b.dims().to_vec(),
                    ));
                }
            }
            check_orthonormal(basis)?;
        }
        Ok(Self {
            name: name.into(),
            resource,
            sender_wires,
            encoders,
            decoder_basis,
            encoded,
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

    pub fn sender_wires(&self) -> &[usize] {
        &self.sender_wires
    }

    pub fn receiver_wires(&self) -> Vec<usize> {
        self.resource.register().complement(&self.sender_wires)
    }

    pub fn encoders(&self) -> &[UnitaryOp] {
        &self.encoders
    }

    pub fn num_messages(&self) -> usize {
        self.encoders.len()
    }

    /// `(U^x ⊗ I)|φ>` for every message `x`.
    pub fn encoded_states(&self) -> &[StateVector] {
        &self.encoded
    }

    /// Explicit projectors if present, otherwise the encoded states.
    pub fn decoder_basis(&self) -> &[StateVector] {
        self.decoder_basis.as_deref().unwrap_or(&self.encoded)
    }

    pub fn has_explicit_decoder(&self) -> bool {
        self.decoder_basis.is_some()
    }

    pub fn encode(&self, message: usize) -> Result<StateVector> {
        let encoder = self.encoders.get(message).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "message {message} out of range for {} encoders",
                self.encoders.len()
            ))
        })?;
        self.resource.apply(encoder)
    }

    /// Maximum-overlap decode against the decoder basis.
    pub fn decode(&self, received: &StateVector) -> Result<(usize, f64, f64)> {
        let mut best = (0, f64::NEG_INFINITY);
        let mut runner_up = 0.0f64;
        for (k, b) in self.decoder_basis().iter().enumerate() {
            let overlap = b.fidelity(received)?;
            if overlap > best.1 {
                runner_up = runner_up.max(best.1);
                best = (k, overlap);
            } else {
                runner_up = runner_up.max(overlap);
            }
        }
        if best.1 - runner_up < AMBIGUITY_TOL {
            return Err(Error::AmbiguousDecode {
                best: best.1,
                runner_up,
            });
        }
        Ok((best.0, best.1, runner_up))
    }

    /// Bits per use: `log2(#encoders)`.
    pub fn capacity_bits(&self) -> f64 {
        (self.encoders.len() as f64).log2()
    }
}

pub fn run_dense_coding(p: &DenseCodingProtocol, message: usize) -> Result<DecodeOutcome> {
    let received = p.encode(message)?;
    let (decoded, overlap, runner_up) = p.decode(&received)?;
    Ok(DecodeOutcome {
        message,
        decoded,
        overlap,
        runner_up,
    })
}

/// Runs every message once.
pub fn run_all_messages(p: &DenseCodingProtocol) -> Result<Vec<DecodeOutcome>> {
    (0..p.num_messages())
        .map(|m| run_dense_coding(p, m))
        .collect()
}

pub fn capacity_bits(p: &DenseCodingProtocol) -> f64 {
    p.capacity_bits()
}

/// Resource `(u ⊗ I)|φ>`, encoders `U^x u†`. The encoded state set is unchanged.
pub fn transform_dense_sender(
    p: &DenseCodingProtocol,
    u: &UnitaryOp,
) -> Result<DenseCodingProtocol> {
    let register = p.resource.register();
    if !u.wires().iter().all(|w| p.sender_wires.contains(w)) {
        return Err(Error::InvalidParameter(format!(
            "sender transform on wires {:?} outside sender wires {:?}",
            u.wires(),
            p.sender_wires
        )));
    }
    let u_wide = u.expand_to(&p.sender_wires, &register.dims_of(&p.sender_wires))?;
    let u_dagger = u_wide.dagger();
    let encoders = p
        .encoders
        .iter()
        .map(|e| e.compose(&u_dagger))
        .collect::<Result<Vec<_>>>()?;
    DenseCodingProtocol::new(
        format!("{}+sender", p.name),
        p.resource.apply(u)?,
        p.sender_wires.clone(),
        encoders,
        p.decoder_basis.clone(),
    )
}

/// Resource `(I ⊗ v)|φ>`, decoder basis `(I ⊗ v)|Φ_x>`, encoders unchanged.
pub fn transform_dense_receiver(
    p: &DenseCodingProtocol,
    v: &UnitaryOp,
) -> Result<DenseCodingProtocol> {
    if v.wires().iter().any(|w| p.sender_wires.contains(w)) {
        return Err(Error::InvalidParameter(format!(
            "receiver transform on wires {:?} overlaps sender wires {:?}",
            v.wires(),
            p.sender_wires
        )));
    }
    let decoder = p
        .decoder_basis()
        .iter()
        .map(|b| b.apply(v))
        .collect::<Result<Vec<_>>>()?;
    DenseCodingProtocol::new(
        format!("{}+receiver", p.name),
        p.resource.apply(v)?,
        p.sender_wires.clone(),
        p.encoders.clone(),
        Some(decoder),
    )
}

/// Largest distance between matched encoded states of two protocols.
pub fn encoded_state_distance(a: &DenseCodingProtocol, b: &DenseCodingProtocol) -> Result<f64> {
    if a.num_messages() != b.num_messages() {
        return Ok(f64::INFINITY);
    }
    a.encoded
        .iter()
        .zip(&b.encoded)
        .try_fold(0.0f64, |acc, (x, y)| Ok(acc.max(x.max_abs_diff(y)?)))
}
