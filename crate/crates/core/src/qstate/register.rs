use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Per-wire dimensions of a qudit register.
///
/// Wire 0 is the leftmost symbol in a ket, and basis indices are big-endian:
/// `index(|d0 d1 .. d_{N-1}>) = sum_w d_w * prod_{w' > w} dims[w']`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuditRegister {
    dims: Vec<usize>,
}

impl QuditRegister {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidRegister("register has no wires".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidRegister(format!("wire dimension {d} < 2")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidRegister("total dimension overflows".into()))?;
        Ok(Self { dims })
    }

    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_wires(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    /// Index stride of each wire under the big-endian convention.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for w in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[w] = strides[w + 1] * self.dims[w + 1];
        }
        strides
    }

    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.dims.len() {
            return Err(Error::DimensionMismatch {
                expected: self.dims.len(),
                found: digits.len(),
            });
        }
        let mut index = 0;
        for (&digit, &dim) in digits.iter().zip(&self.dims) {
            if digit >= dim {
                return Err(Error::InvalidParameter(format!(
                    "level {digit} out of range for dimension {dim}"
                )));
            }
            index = index * dim + digit;
        }
        Ok(index)
    }

    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for (slot, &dim) in digits.iter_mut().zip(&self.dims).rev() {
            *slot = index % dim;
            index /= dim;
        }
        digits
    }

    /// Checks that `wires` are in range and pairwise distinct.
    pub fn check_wires(&self, wires: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.dims.len()];
        for &w in wires {
            if w >= self.dims.len() {
                return Err(Error::WireOutOfRange {
                    wire: w,
                    num_wires: self.dims.len(),
                });
            }
            if seen[w] {
                return Err(Error::DuplicateWire(w));
            }
            seen[w] = true;
        }
        Ok(())
    }

    /// Wires not in `wires`, ascending.
    pub fn complement(&self, wires: &[usize]) -> Vec<usize> {
        (0..self.dims.len())
            .filter(|w| !wires.contains(w))
            .collect()
    }

    /// Dimensions of the listed wires, in the listed order.
    pub fn dims_of(&self, wires: &[usize]) -> Vec<usize> {
        wires.iter().map(|&w| self.dims[w]).collect()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { dims }
    }

    /// Register made of the listed wires, in the listed order.
    pub fn select(&self, wires: &[usize]) -> Result<Self> {
        self.check_wires(wires)?;
        Self::new(self.dims_of(wires))
    }
}
