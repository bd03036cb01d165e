use super::density::{entropy_of_spectrum, Bipartition};
use super::state::{tensor_product, StateVector};
use super::{C64, EIGEN_CUTOFF};
use crate::error::{Error, Result};

/// `|ψ> = Σ_k c_k |a_k>|b_k>` across a cut.
///
/// Coefficients are descending. Each side-A vector has its first nonzero
/// component real and positive; the compensating phase lives on side B.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    pub cut: Bipartition,
    pub coefficients: Vec<f64>,
    pub vectors_a: Vec<StateVector>,
    pub vectors_b: Vec<StateVector>,
}

impl SchmidtDecomposition {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    /// `-Σ c_k² log2 c_k²`.
    pub fn entropy(&self) -> f64 {
        let spectrum: Vec<f64> = self.coefficients.iter().map(|c| c * c).collect();
        entropy_of_spectrum(&spectrum)
    }

    /// Reassembles the state with wires in the original order.
    pub fn reconstruct(&self) -> Result<StateVector> {
        let n = self.cut.num_wires();
        let order: Vec<usize> = self
            .cut
            .side_a()
            .iter()
            .chain(self.cut.side_b())
            .copied()
            .collect();
        // `order[i]` is the original wire sitting at position i of |a>|b>.
        let mut inverse = vec![0; n];
        for (pos, &w) in order.iter().enumerate() {
            inverse[w] = pos;
        }
        let first = tensor_product(&self.vectors_a[0], &self.vectors_b[0]);
        let mut amplitudes = vec![C64::new(0.0, 0.0); first.amplitudes().len()];
        for ((c, a), b) in self
            .coefficients
            .iter()
            .zip(&self.vectors_a)
            .zip(&self.vectors_b)
        {
            let term = tensor_product(a, b);
            for (acc, t) in amplitudes.iter_mut().zip(term.amplitudes()) {
                *acc += t * *c;
            }
        }
        StateVector::normalized(first.register().clone(), amplitudes)?.permute(&inverse)
    }
}

pub fn schmidt_decompose(state: &StateVector, cut: &Bipartition) -> Result<SchmidtDecomposition> {
    if cut.num_wires() != state.num_wires() {
        return Err(Error::InvalidBipartition(format!(
            "cut over {} wires applied to a {}-wire state",
            cut.num_wires(),
            state.num_wires()
        )));
    }
    let reg = state.register();
    let reg_a = reg.select(cut.side_a())?;
    let reg_b = reg.select(cut.side_b())?;
    let m = state.bipartite_matrix(cut.side_a())?;
    let svd = m.svd(true, true);
    let (u, v_t) = match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => unreachable!("SVD requested with both factors"),
    };

    let mut order: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] >= EIGEN_CUTOFF)
        .collect();
    // Stable sort keeps the SVD's own order inside degenerate blocks.
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));

    let mut coefficients = Vec::with_capacity(order.len());
    let mut vectors_a = Vec::with_capacity(order.len());
    let mut vectors_b = Vec::with_capacity(order.len());
    for k in order {
        let mut a: Vec<C64> = u.column(k).iter().copied().collect();
        let mut b: Vec<C64> = v_t.row(k).iter().copied().collect();
        if let Some(lead) = a.iter().find(|z| z.norm() > 1e-10) {
            let phase = lead / lead.norm();
            a.iter_mut().for_each(|z| *z /= phase);
            b.iter_mut().for_each(|z| *z *= phase);
        }
        coefficients.push(svd.singular_values[k]);
        vectors_a.push(StateVector::normalized(reg_a.clone(), a)?);
        vectors_b.push(StateVector::normalized(reg_b.clone(), b)?);
    }
    Ok(SchmidtDecomposition {
        cut: cut.clone(),
        coefficients,
        vectors_a,
        vectors_b,
    })
}
