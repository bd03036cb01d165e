//! Concrete protocols over EPR, GHZ, W and Ω resources.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;

use super::dense::{transform_dense_sender, DenseCodingProtocol};
use super::teleport::{transform_teleport_sender, TeleportationProtocol};
use crate::catalog::{
    eight_state_basis, generalized_pauli, make_ghz, make_omega, make_phi, make_u12, make_v12,
    make_w_state_n, make_w_tilde_n, pauli_encoders, three_bit_encoders,
};
use crate::error::{Error, Result};
use crate::qstate::{c, tensor_product, StateVector, UnitaryOp, C64};

/// `(a + sign·b)/√2` for orthogonal unit vectors `a`, `b`.
fn pm(a: &StateVector, b: &StateVector, sign: f64) -> Result<StateVector> {
    let amps = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x + y * sign) * FRAC_1_SQRT_2)
        .collect();
    StateVector::new(a.register().clone(), amps)
}

fn ket(bits: &str) -> StateVector {
    StateVector::ket(bits).expect("valid ket label")
}

/// `Σ_k |image_k><source_k|` over an orthonormal source basis.
fn outer_sum(wires: Vec<usize>, pairs: &[(StateVector, StateVector)]) -> Result<UnitaryOp> {
    let dim = pairs[0].0.amplitudes().len();
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for (image, source) in pairs {
        for (r, x) in image.amplitudes().iter().enumerate() {
            for (col, y) in source.amplitudes().iter().enumerate() {
                m[(r, col)] += x * y.conj();
            }
        }
    }
    UnitaryOp::new(wires, m)
}

/// Bob's corrections `{I, σ3, σ1, -iσ2}` on one wire.
fn qubit_corrections(wire: usize) -> Vec<UnitaryOp> {
    let [i, x, y, z]: [UnitaryOp; 4] = pauli_encoders(wire).try_into().expect("four encoders");
    vec![i, z, x, y]
}

fn bell_phi_plus() -> StateVector {
    pm(&ket("00"), &ket("11"), 1.0).expect("closed form")
}

/// `(|00> + |11>)/√2` with encoders `{I, σ1, -iσ2, σ3}` on wire 0.
pub fn epr_dense2() -> DenseCodingProtocol {
    DenseCodingProtocol::new("epr", bell_phi_plus(), vec![0], pauli_encoders(0), None)
        .expect("valid protocol")
}

/// Standard one-qubit teleportation through `(|00> + |11>)/√2`, Bell-basis measurement.
pub fn epr_teleport() -> TeleportationProtocol {
    let states = vec![
        bell_phi_plus(),
        pm(&ket("00"), &ket("11"), -1.0).unwrap(),
        pm(&ket("01"), &ket("10"), 1.0).unwrap(),
        pm(&ket("01"), &ket("10"), -1.0).unwrap(),
    ];
    TeleportationProtocol::new(
        "epr",
        bell_phi_plus(),
        vec![0],
        vec![1],
        vec![2],
        states,
        qubit_corrections(1),
    )
    .expect("valid protocol")
}

/// Two bits through `|GHZ>`: Alice holds wire 2.
pub fn ghz_dense2() -> DenseCodingProtocol {
    DenseCodingProtocol::new("ghz", make_ghz(), vec![2], pauli_encoders(2), None)
        .expect("valid protocol")
}

/// Three bits through `|GHZ>`: Alice holds wires 0, 1 and uses the eight
/// local encoders.
pub fn ghz_dense3() -> DenseCodingProtocol {
    DenseCodingProtocol::new(
        "ghz-3bit",
        make_ghz(),
        vec![0, 1],
        three_bit_encoders(),
        None,
    )
    .expect("valid protocol")
}

/// Teleportation through `|GHZ>`: Alice holds wires 0, 1 and measures
/// `ψ1±, ψ2±` on the payload plus her wires; Bob holds wire 2.
pub fn ghz_teleport() -> TeleportationProtocol {
    let states = eight_state_basis().into_iter().take(4).collect();
    TeleportationProtocol::new(
        "ghz",
        make_ghz(),
        vec![0, 1],
        vec![2],
        vec![2],
        states,
        qubit_corrections(2),
    )
    .expect("valid protocol")
}

/// Three bits through `|W>_123`, obtained by moving the GHZ protocol through
/// `U12`: encoders `U · U12†`.
pub fn w123_dense3() -> DenseCodingProtocol {
    transform_dense_sender(&ghz_dense3(), &make_u12())
        .expect("valid protocol")
        .with_name("w123-3bit")
}

/// Teleportation through the three-qubit W family, obtained from the GHZ
/// protocol by Alice's `V12(n, γ, δ)`.
pub fn wn_teleport_via_transform(n: f64, gamma: f64, delta: f64) -> Result<TeleportationProtocol> {
    Ok(
        transform_teleport_sender(&ghz_teleport(), &make_v12(n, gamma, delta)?)?
            .with_name("w-n-family"),
    )
}

/// `|W̃^k>`, with `|W̃^1> = |1>`.
fn w_tilde_or_single(k: usize) -> Result<StateVector> {
    if k == 1 {
        Ok(ket("1"))
    } else {
        make_w_tilde_n(k)
    }
}

/// Teleportation through `|W^N>`: Alice holds wires `0..N-1`, Bob wire `N-1`.
/// Measurement states `η±, ξ±`, corrections `{I, σ3, σ1, -iσ2}`.
pub fn w_n_qubit_teleport(n_qubits: usize) -> Result<TeleportationProtocol> {
    let resource = make_w_state_n(n_qubits)?;
    let w = w_tilde_or_single(n_qubits - 1)?;
    let zeros = StateVector::basis(w.register().clone(), 0)?;
    let (k0, k1) = (ket("0"), ket("1"));
    let zero_w = tensor_product(&k0, &w);
    let one_zeros = tensor_product(&k1, &zeros);
    let one_w = tensor_product(&k1, &w);
    let zero_zeros = tensor_product(&k0, &zeros);
    let states = vec![
        pm(&zero_w, &one_zeros, 1.0)?,
        pm(&zero_w, &one_zeros, -1.0)?,
        pm(&one_w, &zero_zeros, 1.0)?,
        pm(&one_w, &zero_zeros, -1.0)?,
    ];
    TeleportationProtocol::new(
        "w-n-qubit",
        resource,
        (0..n_qubits - 1).collect(),
        vec![n_qubits - 1],
        vec![2],
        states,
        qubit_corrections(n_qubits - 1),
    )
}

/// Two bits through `|W^N>`: Alice holds the last wire.
pub fn w_n_qubit_dense2(n_qubits: usize) -> Result<DenseCodingProtocol> {
    DenseCodingProtocol::new(
        "w-n-qubit",
        make_w_state_n(n_qubits)?,
        vec![n_qubits - 1],
        pauli_encoders(n_qubits - 1),
        None,
    )
}

/// `2 log2 d` bits through `|Ω^N>`: Alice holds the last wire and applies
/// `U(m, n)`; message index `m·d + n`.
pub fn omega_dense(n_wires: usize, d: usize) -> Result<DenseCodingProtocol> {
    let alice = n_wires
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidParameter("N must be >= 2".into()))?;
    let resource = make_omega(n_wires, d)?;
    let encoders = (0..d)
        .flat_map(|m| (0..d).map(move |n| (m, n)))
        .map(|(m, n)| generalized_pauli(m, n, d, alice))
        .collect::<Result<Vec<_>>>()?;
    DenseCodingProtocol::new("omega", resource, vec![alice], encoders, None)
}

/// Entangled-pair teleportation through `|W̃^4>`.
///
/// The payload `ab` is `α|00> + β|11>` or `α|01> + β|10>`. Alice holds
/// wires 0, 1 of the resource, Bob and Charlie wires 2, 3. The eight
/// measurement states are `μ±, ω±, π±, ϖ±` on `a b 1 2`; each outcome has a
/// joint recovery unitary on wires 2, 3.
pub fn wtilde4_pair_teleport() -> TeleportationProtocol {
    let phi_p = make_phi(1.0);
    let phi_m = make_phi(-1.0);
    let zz = ket("00");
    let t = |a: &str, b: &StateVector| tensor_product(&ket(a), b);

    let mu = |s| pm(&t("00", &phi_p), &t("11", &zz), s).unwrap();
    let omega = |s| pm(&t("00", &zz), &t("11", &phi_p), s).unwrap();
    let pi = |s| pm(&t("01", &phi_p), &t("10", &zz), s).unwrap();
    let varpi = |s| pm(&t("01", &zz), &t("10", &phi_p), s).unwrap();
    let states = vec![
        mu(1.0),
        mu(-1.0),
        omega(1.0),
        omega(-1.0),
        pi(1.0),
        pi(-1.0),
        varpi(1.0),
        varpi(-1.0),
    ];

    // Branch after outcome x is U_x|ψ>. The payload's two basis kets go to
    // (|00>, ±|φ+>) or (|φ+>, ±|00>); the orthocomplement goes to (|11>, |φ->).
    // For μ+ this is exactly |00><00| + |φ+><11| + |11><φ+| + |φ-><φ-|.
    let neg = |s: &StateVector| s.scaled(c(-1.0));
    let correction = |sources: &[StateVector; 4], first: &StateVector, second: StateVector| {
        let pairs = [
            (first.clone(), sources[0].clone()),
            (second, sources[1].clone()),
            (ket("11"), sources[2].clone()),
            (phi_m.clone(), sources[3].clone()),
        ];
        outer_sum(vec![2, 3], &pairs).unwrap()
    };
    let even = [ket("00"), ket("11"), phi_p.clone(), phi_m.clone()];
    let odd = [ket("01"), ket("10"), ket("00"), ket("11")];
    let corrections = [even, odd]
        .iter()
        .flat_map(|src| {
            [
                correction(src, &zz, phi_p.clone()),
                correction(src, &zz, neg(&phi_p)),
                correction(src, &phi_p, zz.clone()),
                correction(src, &phi_p, neg(&zz)),
            ]
        })
        .collect();

    TeleportationProtocol::new(
        "wtilde4-pair",
        make_w_tilde_n(4).expect("closed form"),
        vec![0, 1],
        vec![2, 3],
        vec![2, 2],
        states,
        corrections,
    )
    .expect("valid protocol")
}
