//! Superdense coding and teleportation: protocol data, execution engines,
//! the four resource transformations, and builders for concrete protocols.

mod builders;
mod dense;
mod soundness;
mod teleport;

pub use builders::{
    epr_dense2, epr_teleport, ghz_dense2, ghz_dense3, ghz_teleport, omega_dense, w123_dense3,
    w_n_qubit_dense2, w_n_qubit_teleport, wn_teleport_via_transform, wtilde4_pair_teleport,
};
pub use dense::{
    capacity_bits, encoded_state_distance, run_all_messages, run_dense_coding,
    transform_dense_receiver, transform_dense_sender, DecodeOutcome, DenseCodingProtocol,
    AMBIGUITY_TOL,
};
pub use soundness::{
    check_dense_soundness, pair_input, random_inputs, random_pair_input, teleport_soundness,
    PairFamily, TeleportSoundness, FIDELITY_TOL,
};
pub use teleport::{
    run_teleportation, transform_teleport_receiver, transform_teleport_sender, OutcomeRecord,
    ProtocolTranscript, TeleportationProtocol,
};
