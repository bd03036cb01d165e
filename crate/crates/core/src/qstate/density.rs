use nalgebra::DMatrix;

use super::register::QuditRegister;
use super::state::StateVector;
use super::{C64, EIGEN_CUTOFF, STRUCT_TOL};
use crate::error::{Error, Result};

/// Reduced state of a subsystem.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    register: QuditRegister,
    matrix: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (all within `1e-10`).
    pub fn new(register: QuditRegister, matrix: DMatrix<C64>) -> Result<Self> {
        let dim = register.total_dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.nrows(),
            });
        }
        let herm = (&matrix - matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm > STRUCT_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix not Hermitian (deviation {herm:e})"
            )));
        }
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > STRUCT_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace {trace} != 1"
            )));
        }
        let rho = Self { register, matrix };
        if let Some(min) = rho.eigenvalues().first() {
            if *min < -STRUCT_TOL {
                return Err(Error::InvalidParameter(format!(
                    "density matrix has negative eigenvalue {min:e}"
                )));
            }
        }
        Ok(rho)
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self
            .matrix
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        values.sort_by(f64::total_cmp);
        values
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

/// `ρ_keep = Tr_rest |ψ><ψ|`. The retained wires are taken in ascending order;
/// keeping every wire yields the pure projector.
pub fn partial_trace(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::InvalidBipartition("keep-set is empty".into()));
    }
    state.register().check_wires(keep)?;
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    let m = state.bipartite_matrix(&keep)?;
    let rho = &m * m.adjoint();
    DensityMatrix::new(state.register().select(&keep)?, rho)
}

/// `S(ρ) = -Σ λ log2 λ`, in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues())
}

/// Shannon entropy (bits) of a probability spectrum; entries below `1e-12`
/// count as zero.
pub fn entropy_of_spectrum(spectrum: &[f64]) -> f64 {
    let s: f64 = spectrum
        .iter()
        .filter(|&&p| p > EIGEN_CUTOFF)
        .map(|&p| -p * p.log2())
        .sum();
    s.max(0.0)
}

/// Binary entropy `H(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_of_spectrum(&[p, 1.0 - p])
}

/// A cut of the register into `side_a` and its complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(side_a: &[usize], num_wires: usize) -> Result<Self> {
        let mut side_a = side_a.to_vec();
        side_a.sort_unstable();
        if side_a.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidBipartition(format!(
                "duplicate wire in {side_a:?}"
            )));
        }
        if let Some(&w) = side_a.iter().find(|&&w| w >= num_wires) {
            return Err(Error::WireOutOfRange { wire: w, num_wires });
        }
        if side_a.is_empty() || side_a.len() == num_wires {
            return Err(Error::InvalidBipartition(format!(
                "side {side_a:?} must be a non-empty proper subset of {num_wires} wires"
            )));
        }
        let side_b = (0..num_wires).filter(|w| !side_a.contains(w)).collect();
        Ok(Self { side_a, side_b })
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }

    pub fn num_wires(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }

    pub fn swapped(&self) -> Self {
        Self {
            side_a: self.side_b.clone(),
            side_b: self.side_a.clone(),
        }
    }

    /// Renders as e.g. `01|2`.
    pub fn label(&self) -> String {
        let join = |ws: &[usize]| ws.iter().map(|w| w.to_string()).collect::<String>();
        format!("{}|{}", join(&self.side_a), join(&self.side_b))
    }
}

/// Entanglement entropy across `cut`, in ebits.
pub fn bipartition_entanglement(state: &StateVector, cut: &Bipartition) -> Result<f64> {
    if cut.num_wires() != state.num_wires() {
        return Err(Error::InvalidBipartition(format!(
            "cut over {} wires applied to a {}-wire state",
            cut.num_wires(),
            state.num_wires()
        )));
    }
    // Either side gives the same entropy; trace down to the smaller one.
    let reg = state.register();
    let dim_a: usize = reg.dims_of(cut.side_a()).iter().product();
    let dim_b: usize = reg.dims_of(cut.side_b()).iter().product();
    let side = if dim_a <= dim_b {
        cut.side_a()
    } else {
        cut.side_b()
    };
    // Same spectrum as `partial_trace`, without its validation pass.
    let m = state.bipartite_matrix(side)?;
    let spectrum = (&m * m.adjoint()).symmetric_eigenvalues();
    Ok(entropy_of_spectrum(spectrum.as_slice()))
}
