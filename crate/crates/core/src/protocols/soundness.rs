use rand::Rng;
use rand_distr::StandardNormal;

use super::dense::{run_all_messages, DecodeOutcome, DenseCodingProtocol, AMBIGUITY_TOL};
use super::teleport::{run_teleportation, TeleportationProtocol};
use crate::error::{Error, Result};
use crate::qstate::{random_state_with, QuditRegister, StateVector, C64, STRUCT_TOL};

/// Teleported states must reach fidelity `1 - FIDELITY_TOL`.
pub const FIDELITY_TOL: f64 = 1e-9;

/// Runs every message and fails unless each decodes to itself with overlap
/// `>= 1 - 1e-10` and every other overlap `<= 1e-6`.
pub fn check_dense_soundness(p: &DenseCodingProtocol) -> Result<Vec<DecodeOutcome>> {
    let outcomes = run_all_messages(p)?;
    for o in &outcomes {
        if !o.is_correct() || o.overlap < 1.0 - STRUCT_TOL || o.runner_up > AMBIGUITY_TOL {
            return Err(Error::ProtocolFailure(format!(
                "{}: message {} decoded as {} (overlap {}, runner-up {})",
                p.name(),
                o.message,
                o.decoded,
                o.overlap,
                o.runner_up
            )));
        }
    }
    Ok(outcomes)
}

/// Aggregate over many teleportation runs.
#[derive(Clone, Debug)]
pub struct TeleportSoundness {
    pub trials: usize,
    pub worst_fidelity: f64,
    /// Largest spread between realized outcome probabilities within one run.
    pub within_spread: f64,
    /// Largest change of any outcome's probability across inputs.
    pub across_spread: f64,
    pub realized_min: usize,
    pub realized_max: usize,
}

impl TeleportSoundness {
    pub fn is_sound(&self) -> bool {
        self.worst_fidelity >= 1.0 - FIDELITY_TOL
            && self.within_spread <= FIDELITY_TOL
            && self.across_spread <= FIDELITY_TOL
    }
}

pub fn teleport_soundness(
    p: &TeleportationProtocol,
    inputs: &[StateVector],
) -> Result<TeleportSoundness> {
    let d = p.num_outcomes();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    let mut report = TeleportSoundness {
        trials: inputs.len(),
        worst_fidelity: f64::INFINITY,
        within_spread: 0.0,
        across_spread: 0.0,
        realized_min: usize::MAX,
        realized_max: 0,
    };
    for input in inputs {
        let t = run_teleportation(p, input)?;
        report.worst_fidelity = report.worst_fidelity.min(t.worst_fidelity);
        let realized: Vec<f64> = t.realized().map(|o| o.probability).collect();
        let (min, max) = realized
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
                (a.min(x), b.max(x))
            });
        report.within_spread = report.within_spread.max(max - min);
        report.realized_min = report.realized_min.min(realized.len());
        report.realized_max = report.realized_max.max(realized.len());
        for o in &t.outcomes {
            lo[o.index] = lo[o.index].min(o.probability);
            hi[o.index] = hi[o.index].max(o.probability);
        }
    }
    report.across_spread = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| b - a)
        .filter(|x| x.is_finite())
        .fold(0.0, f64::max);
    Ok(report)
}

/// `count` Haar-random payloads of shape `dims`.
pub fn random_inputs<R: Rng + ?Sized>(
    dims: &[usize],
    count: usize,
    rng: &mut R,
) -> Result<Vec<StateVector>> {
    let register = QuditRegister::new(dims.to_vec())?;
    Ok((0..count)
        .map(|_| random_state_with(&register, rng))
        .collect())
}

/// The two entangled-pair payload families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairFamily {
    /// `α|00> + β|11>`
    Even,
    /// `α|01> + β|10>`
    Odd,
}

pub fn pair_input(family: PairFamily, alpha: C64, beta: C64) -> Result<StateVector> {
    let (a, b) = match family {
        PairFamily::Even => ("00", "11"),
        PairFamily::Odd => ("01", "10"),
    };
    StateVector::superpose(&[(alpha, a), (beta, b)])
}

/// Random `(α, β)` payload of the given family.
pub fn random_pair_input<R: Rng + ?Sized>(family: PairFamily, rng: &mut R) -> Result<StateVector> {
    let mut g = || C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let (alpha, beta) = (g(), g());
    pair_input(family, alpha, beta)
}
