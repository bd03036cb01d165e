use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::register::QuditRegister;
use super::state::StateVector;
use super::unitary::UnitaryOp;
use super::C64;
use crate::error::Result;

/// Seeded generator used across the crate and the CLI.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state: normalized complex Gaussian vector.
pub fn random_state(register: &QuditRegister, seed: u64) -> StateVector {
    random_state_with(register, &mut seeded_rng(seed))
}

pub fn random_state_with<R: Rng + ?Sized>(register: &QuditRegister, rng: &mut R) -> StateVector {
    loop {
        let amps: Vec<C64> = (0..register.total_dim()).map(|_| gaussian(rng)).collect();
        // A zero draw has probability zero; retry rather than fail.
        if let Ok(state) = StateVector::normalized(register.clone(), amps) {
            return state;
        }
    }
}

/// Haar-random unitary on `wires` (QR of a Ginibre matrix with the phases of
/// `R`'s diagonal folded back into `Q`).
pub fn random_unitary<R: Rng + ?Sized>(
    wires: Vec<usize>,
    dims: &[usize],
    rng: &mut R,
) -> Result<UnitaryOp> {
    let dim: usize = dims.iter().product();
    let ginibre = DMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let qr = ginibre.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, k)] *= phase;
        }
    }
    UnitaryOp::new(wires, q)
}
