use nalgebra::DMatrix;

use super::register::QuditRegister;
use super::state::StateVector;
use super::{C64, STRUCT_TOL};
use crate::error::{Error, Result};

/// Unitary matrix acting on an ordered list of wires.
///
/// Row/column indices follow the big-endian convention over `wires` in the
/// listed order.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryOp {
    wires: Vec<usize>,
    matrix: DMatrix<C64>,
}

impl UnitaryOp {
    pub fn new(wires: Vec<usize>, matrix: DMatrix<C64>) -> Result<Self> {
        check_distinct(&wires)?;
        if wires.is_empty() {
            return Err(Error::InvalidParameter("operator acts on no wires".into()));
        }
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let deviation = unitarity_deviation(&matrix);
        if deviation > STRUCT_TOL {
            return Err(Error::NotUnitary(deviation));
        }
        Ok(Self { wires, matrix })
    }

    pub fn identity(wires: Vec<usize>, dims: &[usize]) -> Result<Self> {
        if wires.len() != dims.len() {
            return Err(Error::DimensionMismatch {
                expected: wires.len(),
                found: dims.len(),
            });
        }
        let dim = dims.iter().product();
        Self::new(wires, DMatrix::identity(dim, dim))
    }

    /// Operator whose `k`-th column is `columns[k]`, i.e. `sum_k |columns[k]><k|`.
    pub fn from_columns(wires: Vec<usize>, columns: &[StateVector]) -> Result<Self> {
        let dim = columns.len();
        let mut matrix = DMatrix::zeros(dim, dim);
        for (k, col) in columns.iter().enumerate() {
            if col.amplitudes().len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: col.amplitudes().len(),
                });
            }
            for (r, a) in col.amplitudes().iter().enumerate() {
                matrix[(r, k)] = *a;
            }
        }
        Self::new(wires, matrix)
    }

    pub fn wires(&self) -> &[usize] {
        &self.wires
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn dagger(&self) -> Self {
        Self {
            wires: self.wires.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// `self · other`; both must act on the same wires.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.wires != other.wires {
            return Err(Error::InvalidParameter(format!(
                "cannot compose operators on wires {:?} and {:?}",
                self.wires, other.wires
            )));
        }
        Ok(Self {
            wires: self.wires.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// `self ⊗ other` acting on the concatenated wire list.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let wires: Vec<usize> = self.wires.iter().chain(&other.wires).copied().collect();
        check_distinct(&wires)?;
        Ok(Self {
            wires,
            matrix: self.matrix.kronecker(&other.matrix),
        })
    }

    /// Same matrix, relabelled onto other wires.
    pub fn on_wires(&self, wires: Vec<usize>) -> Result<Self> {
        if wires.len() != self.wires.len() {
            return Err(Error::DimensionMismatch {
                expected: self.wires.len(),
                found: wires.len(),
            });
        }
        check_distinct(&wires)?;
        Ok(Self {
            wires,
            matrix: self.matrix.clone(),
        })
    }

    /// The same operator written on the ordered wire list `wires` (dimensions
    /// `dims`), acting as identity on wires it does not touch.
    pub fn expand_to(&self, wires: &[usize], dims: &[usize]) -> Result<Self> {
        if wires.len() != dims.len() {
            return Err(Error::DimensionMismatch {
                expected: wires.len(),
                found: dims.len(),
            });
        }
        check_distinct(wires)?;
        let positions = self
            .wires
            .iter()
            .map(|w| {
                wires.iter().position(|x| x == w).ok_or_else(|| {
                    Error::InvalidParameter(format!("operator wire {w} not among {wires:?}"))
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        let local = self.on_wires(positions)?;
        let register = QuditRegister::new(dims.to_vec())?;
        let columns = (0..register.total_dim())
            .map(|j| StateVector::basis(register.clone(), j)?.apply(&local))
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(wires.to_vec(), &columns)
    }

    pub fn scaled(&self, factor: C64) -> Result<Self> {
        Self::new(self.wires.clone(), self.matrix.map(|z| z * factor))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.matrix.shape() != other.matrix.shape() {
            return f64::INFINITY;
        }
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `max |(U†U - I)_ij|`.
pub fn unitarity_deviation(matrix: &DMatrix<C64>) -> f64 {
    let product = matrix.adjoint() * matrix;
    let n = product.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((product[(i, j)] - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

fn check_distinct(wires: &[usize]) -> Result<()> {
    for (i, w) in wires.iter().enumerate() {
        if wires[..i].contains(w) {
            return Err(Error::DuplicateWire(*w));
        }
    }
    Ok(())
}
