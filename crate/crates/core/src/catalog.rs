//! Closed-form constructors for the named states and operators.
//!
//! Wire 0 is particle `1` of the usual three-particle labelling, so
//! `|100>` has its excitation on wire 0.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::qstate::{c, QuditRegister, StateVector, UnitaryOp, C64};

fn qubit_state(n: usize, entries: &[(usize, C64)]) -> Result<StateVector> {
    let register = QuditRegister::qubits(n)?;
    let mut amps = vec![C64::new(0.0, 0.0); register.total_dim()];
    for &(i, a) in entries {
        amps[i] += a;
    }
    StateVector::new(register, amps)
}

/// `(|000> + |111>)/√2`
pub fn make_ghz() -> StateVector {
    qubit_state(3, &[(0b000, c(FRAC_1_SQRT_2)), (0b111, c(FRAC_1_SQRT_2))]).expect("closed form")
}

/// `(√2|000> + |111>)/√3`
pub fn make_ghz_tilde() -> StateVector {
    qubit_state(
        3,
        &[
            (0b000, c((2.0f64 / 3.0).sqrt())),
            (0b111, c((1.0f64 / 3.0).sqrt())),
        ],
    )
    .expect("closed form")
}

/// `(|100> + |010> + √2|001>)/2`
pub fn make_w123() -> StateVector {
    qubit_state(
        3,
        &[(0b100, c(0.5)), (0b010, c(0.5)), (0b001, c(FRAC_1_SQRT_2))],
    )
    .expect("closed form")
}

/// `(|100> + |010> + |001>)/√3`
pub fn make_w_tilde123() -> StateVector {
    make_w_tilde_n(3).expect("closed form")
}

/// The three-qubit family `(|100> + √n e^{iγ}|010> + √(n+1) e^{iδ}|001>)/√(2+2n)`.
pub fn make_w_n(n: f64, gamma: f64, delta: f64) -> Result<StateVector> {
    if !n.is_finite() || n < 0.0 {
        return Err(Error::InvalidParameter(format!("n must be >= 0, got {n}")));
    }
    let scale = 1.0 / (2.0 + 2.0 * n).sqrt();
    qubit_state(
        3,
        &[
            (0b100, c(scale)),
            (0b010, C64::from_polar(n.sqrt() * scale, gamma)),
            (0b001, C64::from_polar((n + 1.0).sqrt() * scale, delta)),
        ],
    )
}

/// Equal superposition of the `N` single-excitation kets.
pub fn make_w_tilde_n(n_qubits: usize) -> Result<StateVector> {
    if n_qubits < 2 {
        return Err(Error::InvalidParameter(format!(
            "N must be >= 2, got {n_qubits}"
        )));
    }
    excitation_state(n_qubits, 1, 2)
}

/// `(|10..0> + .. + |0..10> + √(N-1)|0..01>)/√(2(N-1))`
pub fn make_w_state_n(n_qubits: usize) -> Result<StateVector> {
    if n_qubits < 2 {
        return Err(Error::InvalidParameter(format!(
            "N must be >= 2, got {n_qubits}"
        )));
    }
    let k = (n_qubits - 1) as f64;
    let scale = 1.0 / (2.0 * k).sqrt();
    let mut entries: Vec<(usize, C64)> = (0..n_qubits - 1)
        .map(|w| (1usize << (n_qubits - 1 - w), c(scale)))
        .collect();
    entries.push((1, c(k.sqrt() * scale)));
    qubit_state(n_qubits, &entries)
}

/// `(1/√N) Σ_w |0..i..0>` with the level-`i` excitation on wire `w`; `N` wires of dimension `d`.
pub fn make_xi(n_wires: usize, level: usize, d: usize) -> Result<StateVector> {
    if n_wires < 2 {
        return Err(Error::InvalidParameter(format!(
            "N must be >= 2, got {n_wires}"
        )));
    }
    excitation_state(n_wires, level, d)
}

fn excitation_state(n_wires: usize, level: usize, d: usize) -> Result<StateVector> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d must be >= 2, got {d}")));
    }
    if level == 0 || level >= d {
        return Err(Error::InvalidParameter(format!(
            "level must lie in 1..={}, got {level}",
            d - 1
        )));
    }
    let register = QuditRegister::uniform(n_wires, d)?;
    let strides = register.strides();
    let amp = c(1.0 / (n_wires as f64).sqrt());
    let mut amps = vec![C64::new(0.0, 0.0); register.total_dim()];
    for stride in strides {
        amps[level * stride] = amp;
    }
    StateVector::new(register, amps)
}

/// `(1/√d)[Σ_{i=1}^{d-1} |ξ^{N-1}_(i)>|i-1> + |0..0>|d-1>]` on `N` wires of dimension `d`.
pub fn make_omega(n_wires: usize, d: usize) -> Result<StateVector> {
    if n_wires < 2 || d < 2 {
        return Err(Error::InvalidParameter(format!(
            "need N >= 2 and d >= 2, got N = {n_wires}, d = {d}"
        )));
    }
    let register = QuditRegister::uniform(n_wires, d)?;
    let mut amps = vec![C64::new(0.0, 0.0); register.total_dim()];
    let scale = 1.0 / (d as f64).sqrt();
    for level in 1..d {
        let xi = excitation_state(n_wires - 1, level, d)?;
        for (k, a) in xi.amplitudes().iter().enumerate() {
            amps[k * d + (level - 1)] += a * scale;
        }
    }
    amps[d - 1] += c(scale);
    StateVector::new(register, amps)
}

/// `(|01> + |10>)/√2`
pub fn make_epr() -> StateVector {
    qubit_state(2, &[(0b01, c(FRAC_1_SQRT_2)), (0b10, c(FRAC_1_SQRT_2))]).expect("closed form")
}

/// `|φ±> = (|10> ± |01>)/√2`
pub fn make_phi(sign: f64) -> StateVector {
    qubit_state(
        2,
        &[
            (0b10, c(FRAC_1_SQRT_2)),
            (0b01, c(sign.signum() * FRAC_1_SQRT_2)),
        ],
    )
    .expect("closed form")
}

/// All-zero product state on `n` qubits.
pub fn make_zero(n_qubits: usize) -> Result<StateVector> {
    StateVector::basis(QuditRegister::qubits(n_qubits)?, 0)
}

fn matrix2(entries: [[C64; 2]; 2]) -> DMatrix<C64> {
    DMatrix::from_fn(2, 2, |r, col| entries[r][col])
}

/// Pauli matrix `σ_k` on `wire` (`k = 0` is the identity).
pub fn pauli(k: usize, wire: usize) -> Result<UnitaryOp> {
    let (o, l, i) = (c(0.0), c(1.0), C64::new(0.0, 1.0));
    let m = match k {
        0 => matrix2([[l, o], [o, l]]),
        1 => matrix2([[o, l], [l, o]]),
        2 => matrix2([[o, -i], [i, o]]),
        3 => matrix2([[l, o], [o, -l]]),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "Pauli index {k} not in 0..=3"
            )))
        }
    };
    UnitaryOp::new(vec![wire], m)
}

/// `-iσ_2 = |1><0| - |0><1|`.
pub fn minus_i_sigma2(wire: usize) -> UnitaryOp {
    pauli(2, wire)
        .and_then(|p| p.scaled(C64::new(0.0, -1.0)))
        .expect("closed form")
}

/// The encoders `{I, σ1, -iσ2, σ3}` on a single qubit.
pub fn pauli_encoders(wire: usize) -> Vec<UnitaryOp> {
    vec![
        pauli(0, wire).expect("closed form"),
        pauli(1, wire).expect("closed form"),
        minus_i_sigma2(wire),
        pauli(3, wire).expect("closed form"),
    ]
}

/// `U(m, n) = Σ_k e^{2πikm/d} |k><k ⊕ n|`, addition modulo `d`.
pub fn generalized_pauli(m: usize, n: usize, d: usize, wire: usize) -> Result<UnitaryOp> {
    if d < 2 || m >= d || n >= d {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= m, n < d and d >= 2, got m = {m}, n = {n}, d = {d}"
        )));
    }
    let mut matrix = DMatrix::zeros(d, d);
    for k in 0..d {
        let angle = 2.0 * PI * (k * m) as f64 / d as f64;
        matrix[(k, (k + n) % d)] = C64::from_polar(1.0, angle);
    }
    UnitaryOp::new(vec![wire], matrix)
}

/// `U12 = |φ+><00| + |11><01| + |φ-><10| + |00><11|` on wires 0, 1.
pub fn make_u12() -> UnitaryOp {
    UnitaryOp::from_columns(
        vec![0, 1],
        &[
            make_phi(1.0),
            StateVector::ket("11").unwrap(),
            make_phi(-1.0),
            StateVector::ket("00").unwrap(),
        ],
    )
    .expect("closed form")
}

/// `V12 = |φ><00| + |11><01| + |φ⊥><10| + e^{iδ}|00><11|` on wires 0, 1, with
/// `|φ> = (|10> + √n e^{iγ}|01>)/√(1+n)` and `|φ⊥> = (√n e^{-iγ}|10> - |01>)/√(1+n)`.
pub fn make_v12(n: f64, gamma: f64, delta: f64) -> Result<UnitaryOp> {
    if !n.is_finite() || n < 0.0 {
        return Err(Error::InvalidParameter(format!("n must be >= 0, got {n}")));
    }
    let scale = 1.0 / (1.0 + n).sqrt();
    let phi = qubit_state(
        2,
        &[
            (0b10, c(scale)),
            (0b01, C64::from_polar(n.sqrt() * scale, gamma)),
        ],
    )?;
    let phi_perp = qubit_state(
        2,
        &[
            (0b10, C64::from_polar(n.sqrt() * scale, -gamma)),
            (0b01, c(-scale)),
        ],
    )?;
    let phased_00 = StateVector::ket("00")?.scaled(C64::from_polar(1.0, delta));
    UnitaryOp::from_columns(
        vec![0, 1],
        &[phi, StateVector::ket("11")?, phi_perp, phased_00],
    )
}

/// `ψ1± … ψ4±` in the order `ψ1+, ψ1-, ψ2+, ψ2-, ψ3+, ψ3-, ψ4+, ψ4-`.
pub fn eight_state_basis() -> Vec<StateVector> {
    let pairs = [
        (0b000, 0b111),
        (0b100, 0b011),
        (0b010, 0b101),
        (0b110, 0b001),
    ];
    pairs
        .iter()
        .flat_map(|&(a, b)| {
            [1.0, -1.0].map(move |s| {
                qubit_state(3, &[(a, c(FRAC_1_SQRT_2)), (b, c(s * FRAC_1_SQRT_2))])
                    .expect("closed form")
            })
        })
        .collect()
}

/// The eight two-qubit encoders on wires 0, 1:
/// `I⊗I, σ1⊗I, (-iσ2)⊗I, σ3⊗I, I⊗σ1, I⊗(-iσ2), σ1⊗σ1, σ1⊗(-iσ2)`.
pub fn three_bit_encoders() -> Vec<UnitaryOp> {
    let local = |k: usize, wire: usize| match k {
        2 => minus_i_sigma2(wire),
        _ => pauli(k, wire).expect("closed form"),
    };
    [
        (0, 0),
        (1, 0),
        (2, 0),
        (3, 0),
        (0, 1),
        (0, 2),
        (1, 1),
        (1, 2),
    ]
    .iter()
    .map(|&(a, b)| local(a, 0).kron(&local(b, 1)).expect("disjoint wires"))
    .collect()
}

/// Parameters shared by the named-state constructors.
#[derive(Clone, Debug, PartialEq)]
pub struct StateParams {
    pub n_qubits: usize,
    pub n_param: f64,
    pub gamma: f64,
    pub delta: f64,
    pub d: usize,
    pub level: usize,
}

impl Default for StateParams {
    fn default() -> Self {
        Self {
            n_qubits: 3,
            n_param: 1.0,
            gamma: 0.0,
            delta: 0.0,
            d: 2,
            level: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateName {
    Ghz,
    GhzTilde,
    W123,
    WTilde123,
    WTildeN,
    WStateN,
    WSubclassN,
    Xi,
    Omega,
    EprPsiPlus,
    PhiPlus,
    PhiMinus,
    Zero,
}

impl StateName {
    pub const ALL: [StateName; 13] = [
        StateName::Ghz,
        StateName::GhzTilde,
        StateName::W123,
        StateName::WTilde123,
        StateName::WTildeN,
        StateName::WStateN,
        StateName::WSubclassN,
        StateName::Xi,
        StateName::Omega,
        StateName::EprPsiPlus,
        StateName::PhiPlus,
        StateName::PhiMinus,
        StateName::Zero,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            StateName::Ghz => "ghz",
            StateName::GhzTilde => "ghz-tilde",
            StateName::W123 => "w123",
            StateName::WTilde123 => "w-tilde123",
            StateName::WTildeN => "w-tilde-n",
            StateName::WStateN => "w-state-n",
            StateName::WSubclassN => "w-n-family",
            StateName::Xi => "xi",
            StateName::Omega => "omega",
            StateName::EprPsiPlus => "epr",
            StateName::PhiPlus => "phi-plus",
            StateName::PhiMinus => "phi-minus",
            StateName::Zero => "zero",
        }
    }

    pub fn build(&self, p: &StateParams) -> Result<StateVector> {
        match self {
            StateName::Ghz => Ok(make_ghz()),
            StateName::GhzTilde => Ok(make_ghz_tilde()),
            StateName::W123 => Ok(make_w123()),
            StateName::WTilde123 => Ok(make_w_tilde123()),
            StateName::WTildeN => make_w_tilde_n(p.n_qubits),
            StateName::WStateN => make_w_state_n(p.n_qubits),
            StateName::WSubclassN => make_w_n(p.n_param, p.gamma, p.delta),
            StateName::Xi => make_xi(p.n_qubits, p.level, p.d),
            StateName::Omega => make_omega(p.n_qubits, p.d),
            StateName::EprPsiPlus => Ok(make_epr()),
            StateName::PhiPlus => Ok(make_phi(1.0)),
            StateName::PhiMinus => Ok(make_phi(-1.0)),
            StateName::Zero => make_zero(p.n_qubits),
        }
    }
}

impl fmt::Display for StateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StateName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StateName::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown state name {s:?}")))
    }
}
