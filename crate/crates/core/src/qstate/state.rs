use nalgebra::DMatrix;
use num_complex::Complex64;

use super::register::QuditRegister;
use super::unitary::UnitaryOp;
use super::{C64, NORM_TOL, PHASE_TOL};
use crate::error::{Error, Result};

/// Normalized pure state over a qudit register.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    register: QuditRegister,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Builds a state, requiring unit norm within `1e-12`.
    pub fn new(register: QuditRegister, amplitudes: Vec<C64>) -> Result<Self> {
        check_len(&register, amplitudes.len())?;
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            register,
            amplitudes,
        })
    }

    /// Builds a state from an unnormalized (nonzero) amplitude array.
    pub fn normalized(register: QuditRegister, mut amplitudes: Vec<C64>) -> Result<Self> {
        check_len(&register, amplitudes.len())?;
        let norm = norm(&amplitudes);
        if norm <= f64::EPSILON || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self {
            register,
            amplitudes,
        })
    }

    pub fn basis(register: QuditRegister, index: usize) -> Result<Self> {
        let dim = register.total_dim();
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self {
            register,
            amplitudes,
        })
    }

    /// Qubit computational basis state from a bit string such as `"010"`.
    pub fn ket(bits: &str) -> Result<Self> {
        let digits = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidParameter(format!("bad ket label {bits:?}"))),
            })
            .collect::<Result<Vec<usize>>>()?;
        let register = QuditRegister::qubits(digits.len())?;
        let index = register.index_of(&digits)?;
        Self::basis(register, index)
    }

    /// Normalized superposition of weighted qubit kets, e.g. `[(1, "01"), (1, "10")]`.
    pub fn superpose(terms: &[(C64, &str)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty superposition".into()))?;
        let register = QuditRegister::qubits(first.1.len())?;
        let mut amplitudes = vec![C64::new(0.0, 0.0); register.total_dim()];
        for (coeff, bits) in terms {
            let ket = Self::ket(bits)?;
            if ket.register != register {
                return Err(Error::ShapeMismatch(
                    register.dims().to_vec(),
                    ket.register.dims().to_vec(),
                ));
            }
            for (a, k) in amplitudes.iter_mut().zip(&ket.amplitudes) {
                *a += coeff * k;
            }
        }
        Self::normalized(register, amplitudes)
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn dims(&self) -> &[usize] {
        self.register.dims()
    }

    pub fn num_wires(&self) -> usize {
        self.register.num_wires()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.check_same_shape(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            register: self.register.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub(crate) fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.register != other.register {
            return Err(Error::ShapeMismatch(
                self.dims().to_vec(),
                other.dims().to_vec(),
            ));
        }
        Ok(())
    }

    /// Amplitudes reshaped to a `dim(side_a) x dim(rest)` matrix, with `side_a`
    /// wires in the listed order and the remaining wires ascending.
    pub(crate) fn bipartite_matrix(&self, side_a: &[usize]) -> Result<DMatrix<C64>> {
        self.register.check_wires(side_a)?;
        let rest = self.register.complement(side_a);
        let order: Vec<usize> = side_a.iter().copied().chain(rest.iter().copied()).collect();
        let permuted = permute_wires(self, &order)?;
        let rows: usize = self.register.dims_of(side_a).iter().product();
        let cols = self.register.total_dim() / rows;
        Ok(DMatrix::from_row_slice(rows, cols, &permuted.amplitudes))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        tensor_product(self, other)
    }

    pub fn apply(&self, op: &UnitaryOp) -> Result<Self> {
        apply_unitary(self, op)
    }

    pub fn permute(&self, permutation: &[usize]) -> Result<Self> {
        permute_wires(self, permutation)
    }
}

fn norm(amplitudes: &[C64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn check_len(register: &QuditRegister, len: usize) -> Result<()> {
    if register.total_dim() != len {
        return Err(Error::DimensionMismatch {
            expected: register.total_dim(),
            found: len,
        });
    }
    Ok(())
}

/// `a ⊗ b`; wires of `b` follow those of `a`.
pub fn tensor_product(a: &StateVector, b: &StateVector) -> StateVector {
    let amplitudes = a
        .amplitudes
        .iter()
        .flat_map(|x| b.amplitudes.iter().map(move |y| x * y))
        .collect();
    StateVector {
        register: a.register.concat(&b.register),
        amplitudes,
    }
}

/// Applies `op` to its listed wires, identity elsewhere.
pub fn apply_unitary(state: &StateVector, op: &UnitaryOp) -> Result<StateVector> {
    let register = &state.register;
    register.check_wires(op.wires())?;
    let target_dims = register.dims_of(op.wires());
    let target_dim: usize = target_dims.iter().product();
    if target_dim != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: target_dim,
            found: op.dim(),
        });
    }

    let strides = register.strides();
    // Offset of each target sub-index (big-endian over op.wires) from a base index.
    let mut offsets = vec![0usize; target_dim];
    for (j, slot) in offsets.iter_mut().enumerate() {
        let mut rem = j;
        for (k, &w) in op.wires().iter().enumerate().rev() {
            let d = target_dims[k];
            *slot += (rem % d) * strides[w];
            rem /= d;
        }
    }

    let matrix = op.matrix();
    let mut out = vec![C64::new(0.0, 0.0); state.amplitudes.len()];
    let mut local = vec![C64::new(0.0, 0.0); target_dim];
    for base in 0..state.amplitudes.len() {
        let on_base = op
            .wires()
            .iter()
            .all(|&w| (base / strides[w]).is_multiple_of(register.dims()[w]));
        if !on_base {
            continue;
        }
        for (slot, &off) in local.iter_mut().zip(&offsets) {
            *slot = state.amplitudes[base + off];
        }
        for (row, &off) in offsets.iter().enumerate() {
            out[base + off] = (0..target_dim)
                .map(|col| matrix[(row, col)] * local[col])
                .sum();
        }
    }
    Ok(StateVector {
        register: register.clone(),
        amplitudes: out,
    })
}

/// Reorders wires: output wire `i` is input wire `permutation[i]`.
pub fn permute_wires(state: &StateVector, permutation: &[usize]) -> Result<StateVector> {
    let n = state.num_wires();
    let mut seen = vec![false; n];
    if permutation.len() != n
        || permutation
            .iter()
            .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::InvalidPermutation(permutation.to_vec()));
    }
    if permutation.iter().enumerate().all(|(i, &p)| i == p) {
        return Ok(state.clone());
    }
    let new_register = state.register.select(permutation)?;
    let old_strides = state.register.strides();
    let new_dims = new_register.dims();
    let mut amplitudes = Vec::with_capacity(state.amplitudes.len());
    let mut digits = vec![0usize; n];
    for _ in 0..state.amplitudes.len() {
        let src: usize = digits
            .iter()
            .zip(permutation)
            .map(|(&d, &p)| d * old_strides[p])
            .sum();
        amplitudes.push(state.amplitudes[src]);
        // Big-endian odometer increment.
        for w in (0..n).rev() {
            digits[w] += 1;
            if digits[w] < new_dims[w] {
                break;
            }
            digits[w] = 0;
        }
    }
    Ok(StateVector {
        register: new_register,
        amplitudes,
    })
}

/// True iff `|<a|b>| >= 1 - 1e-10`.
pub fn equal_up_to_global_phase(a: &StateVector, b: &StateVector) -> Result<bool> {
    Ok(a.inner(b)?.norm() >= 1.0 - PHASE_TOL)
}

/// Convenience for real-valued amplitudes.
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::unitary::UnitaryOp;

    fn approx_eq(a: &StateVector, b: &StateVector) -> bool {
        a.max_abs_diff(b).unwrap() < 1e-12
    }

    #[test]
    fn tensor_of_basis_kets() {
        let s = tensor_product(
            &StateVector::ket("0").unwrap(),
            &StateVector::ket("1").unwrap(),
        );
        assert_eq!(s.dims(), &[2, 2]);
        let expected = [0.0, 1.0, 0.0, 0.0];
        for (a, e) in s.amplitudes().iter().zip(expected) {
            assert_eq!(*a, c(e));
        }
    }

    #[test]
    fn tensor_input_with_ghz() {
        let (alpha, beta) = (C64::new(0.6, 0.0), C64::new(0.0, 0.8));
        let psi = StateVector::new(QuditRegister::qubits(1).unwrap(), vec![alpha, beta]).unwrap();
        let ghz = StateVector::superpose(&[(c(1.0), "000"), (c(1.0), "111")]).unwrap();
        let joint = psi.tensor(&ghz);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut expected = vec![C64::new(0.0, 0.0); 16];
        expected[0b0000] = alpha * h;
        expected[0b0111] = alpha * h;
        expected[0b1000] = beta * h;
        expected[0b1111] = beta * h;
        let expected = StateVector::new(QuditRegister::qubits(4).unwrap(), expected).unwrap();
        assert!(approx_eq(&joint, &expected));
    }

    #[test]
    fn identity_is_noop() {
        let s = StateVector::superpose(&[(c(1.0), "010"), (C64::new(0.0, 2.0), "111")]).unwrap();
        let id = UnitaryOp::identity(vec![0, 2], &[2, 2]).unwrap();
        assert!(approx_eq(&s.apply(&id).unwrap(), &s));
    }

    #[test]
    fn apply_respects_wire_order() {
        // CNOT-like permutation with control on wire 2, target on wire 0.
        let mut m = DMatrix::<C64>::zeros(4, 4);
        m[(0, 0)] = c(1.0);
        m[(1, 1)] = c(1.0);
        m[(3, 2)] = c(1.0);
        m[(2, 3)] = c(1.0);
        let cnot = UnitaryOp::new(vec![2, 0], m).unwrap();
        let out = StateVector::ket("001").unwrap().apply(&cnot).unwrap();
        assert!(approx_eq(&out, &StateVector::ket("101").unwrap()));
        let out = StateVector::ket("100").unwrap().apply(&cnot).unwrap();
        assert!(approx_eq(&out, &StateVector::ket("100").unwrap()));
    }

    #[test]
    fn apply_errors() {
        let s = StateVector::ket("00").unwrap();
        let id = UnitaryOp::identity(vec![2], &[2]).unwrap();
        assert!(matches!(s.apply(&id), Err(Error::WireOutOfRange { .. })));
        let id3 = UnitaryOp::identity(vec![0], &[3]).unwrap();
        assert!(matches!(
            s.apply(&id3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn swap_relabels_basis() {
        let s = StateVector::ket("011").unwrap();
        let swapped = s.permute(&[2, 1, 0]).unwrap();
        assert!(approx_eq(&swapped, &StateVector::ket("110").unwrap()));
    }

    #[test]
    fn permutation_mixed_dims() {
        let reg = QuditRegister::new(vec![2, 3]).unwrap();
        let s = StateVector::basis(reg.clone(), reg.index_of(&[1, 2]).unwrap()).unwrap();
        let p = s.permute(&[1, 0]).unwrap();
        assert_eq!(p.dims(), &[3, 2]);
        let idx = p.register().index_of(&[2, 1]).unwrap();
        assert_eq!(p.amplitudes()[idx], c(1.0));
    }

    #[test]
    fn invalid_permutations() {
        let s = StateVector::ket("01").unwrap();
        assert!(s.permute(&[0, 0]).is_err());
        assert!(s.permute(&[0]).is_err());
        assert!(s.permute(&[0, 2]).is_err());
    }

    #[test]
    fn global_phase_equality() {
        let zero = StateVector::ket("0").unwrap();
        let phase = num_complex::Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        assert!(equal_up_to_global_phase(&zero, &zero.scaled(phase)).unwrap());
        assert!(!equal_up_to_global_phase(&zero, &StateVector::ket("1").unwrap()).unwrap());
        assert!(equal_up_to_global_phase(&zero, &StateVector::ket("00").unwrap()).is_err());
    }

    #[test]
    fn new_rejects_unnormalized_and_bad_length() {
        let reg = QuditRegister::qubits(1).unwrap();
        assert!(matches!(
            StateVector::new(reg.clone(), vec![c(1.0), c(1.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            StateVector::new(reg, vec![c(1.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
