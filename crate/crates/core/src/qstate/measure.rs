use super::register::QuditRegister;
use super::state::{permute_wires, StateVector};
use super::{C64, EIGEN_CUTOFF, STRUCT_TOL};
use crate::error::{Error, Result};

/// One branch of a projective measurement.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    pub index: usize,
    pub probability: f64,
    /// Renormalized state of the unmeasured wires (ascending order). `None`
    /// when the branch has probability below `1e-12` or no wires remain.
    pub post_state: Option<StateVector>,
}

/// Largest deviation of the Gram matrix of `states` from the identity.
pub fn orthonormality_deviation(states: &[StateVector]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (i, a) in states.iter().enumerate() {
        worst = worst.max((a.norm() - 1.0).abs());
        for b in &states[i + 1..] {
            worst = worst.max(a.inner(b)?.norm());
        }
    }
    Ok(worst)
}

pub fn check_orthonormal(states: &[StateVector]) -> Result<()> {
    let deviation = orthonormality_deviation(states)?;
    if deviation > STRUCT_TOL {
        return Err(Error::NotOrthonormal(deviation));
    }
    Ok(())
}

/// Measures `wires` of `state` in the orthonormal set `basis`. Basis states
/// live on `wires` in the listed order; measured wires are removed from the
/// post-measurement state.
pub fn projective_measure(
    state: &StateVector,
    wires: &[usize],
    basis: &[StateVector],
) -> Result<Vec<MeasurementOutcome>> {
    let register = state.register();
    register.check_wires(wires)?;
    if wires.is_empty() {
        return Err(Error::InvalidParameter("no wires to measure".into()));
    }
    let measured_dims = register.dims_of(wires);
    for b in basis {
        if b.dims() != measured_dims.as_slice() {
            return Err(Error::ShapeMismatch(measured_dims, b.dims().to_vec()));
        }
    }
    check_orthonormal(basis)?;

    let rest = register.complement(wires);
    let order: Vec<usize> = wires.iter().chain(&rest).copied().collect();
    let permuted = permute_wires(state, &order)?;
    let rest_register = if rest.is_empty() {
        None
    } else {
        Some(register.select(&rest)?)
    };
    let measured_dim: usize = measured_dims.iter().product();
    let rest_dim = register.total_dim() / measured_dim;
    let amps = permuted.amplitudes();

    basis
        .iter()
        .enumerate()
        .map(|(index, b)| {
            // residual_r = Σ_m conj(b_m) ψ_{m,r}
            let mut residual = vec![C64::new(0.0, 0.0); rest_dim];
            for (m, bm) in b.amplitudes().iter().enumerate() {
                if bm.norm_sqr() == 0.0 {
                    continue;
                }
                let row = &amps[m * rest_dim..(m + 1) * rest_dim];
                let bc = bm.conj();
                for (acc, a) in residual.iter_mut().zip(row) {
                    *acc += bc * a;
                }
            }
            let probability: f64 = residual.iter().map(|z| z.norm_sqr()).sum();
            let post_state = match &rest_register {
                Some(reg) if probability > EIGEN_CUTOFF => {
                    Some(StateVector::normalized(reg.clone(), residual)?)
                }
                _ => None,
            };
            Ok(MeasurementOutcome {
                index,
                probability,
                post_state,
            })
        })
        .collect()
}

/// Extends an orthonormal set to a full basis of `register` by Gram–Schmidt
/// over the computational basis in index order.
pub fn complete_basis(
    states: &[StateVector],
    register: &QuditRegister,
) -> Result<Vec<StateVector>> {
    for s in states {
        if s.register() != register {
            return Err(Error::ShapeMismatch(
                register.dims().to_vec(),
                s.dims().to_vec(),
            ));
        }
    }
    check_orthonormal(states)?;
    let dim = register.total_dim();
    let mut basis: Vec<Vec<C64>> = states.iter().map(|s| s.amplitudes().to_vec()).collect();
    for k in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[k] = C64::new(1.0, 0.0);
        // Two passes of modified Gram–Schmidt.
        for _ in 0..2 {
            for e in &basis {
                let proj: C64 = e.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, ei) in v.iter_mut().zip(e) {
                    *vi -= proj * ei;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            v.iter_mut().for_each(|z| *z /= norm);
            basis.push(v);
        }
    }
    basis
        .into_iter()
        .map(|amps| StateVector::normalized(register.clone(), amps))
        .collect()
}
