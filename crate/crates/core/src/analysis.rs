//! Entanglement scans, the optimal cut of `|W̃^N>`, the three-qubit
//! suitability classifier and W-class membership.

use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::make_ghz;
use crate::error::{Error, Result};
use crate::protocols::{
    ghz_dense2, ghz_teleport, transform_dense_receiver, transform_dense_sender,
    transform_teleport_receiver, transform_teleport_sender, DenseCodingProtocol,
    TeleportationProtocol,
};
use crate::qstate::{
    binary_entropy, bipartition_entanglement, complete_basis, schmidt_decompose, Bipartition,
    StateVector, UnitaryOp, C64, ENTROPY_TOL,
};

/// Largest register the exhaustive scan accepts.
pub const MAX_SCAN_WIRES: usize = 20;

/// Schmidt coefficients within this of `1/√2` count as maximally entangled.
pub const SUITABILITY_TOL: f64 = 1e-6;

/// Tangle below this is treated as zero.
pub const TANGLE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub subset: Vec<usize>,
    pub size: usize,
    pub entanglement: f64,
}

impl ScanRow {
    /// `0-2-3`
    pub fn subset_label(&self) -> String {
        self.subset
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionScan {
    pub source: String,
    pub n_wires: usize,
    pub rows: Vec<ScanRow>,
}

impl PartitionScan {
    /// First row with the largest entanglement.
    pub fn maximum(&self) -> Option<&ScanRow> {
        self.rows
            .iter()
            .fold(None, |best: Option<&ScanRow>, r| match best {
                Some(b) if b.entanglement >= r.entanglement - ENTROPY_TOL => Some(b),
                _ => Some(r),
            })
    }
}

/// Subsets of size `1..=N/2`, one per complementary pair: at exactly half
/// size only subsets containing wire 0 are kept. Rows are sorted
/// lexicographically by subset.
pub fn canonical_subsets(n_wires: usize, sizes: Option<&[usize]>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n_wires) {
        let size = mask.count_ones() as usize;
        if 2 * size > n_wires || (2 * size == n_wires && mask & 1 == 0) {
            continue;
        }
        if sizes.is_some_and(|s| !s.contains(&size)) {
            continue;
        }
        out.push((0..n_wires).filter(|w| mask >> w & 1 == 1).collect());
    }
    out.sort();
    out
}

pub fn check_scan_size(n_wires: usize) -> Result<()> {
    if n_wires > MAX_SCAN_WIRES {
        return Err(Error::TooLarge(n_wires));
    }
    Ok(())
}

pub fn scan_bipartitions(state: &StateVector, sizes: Option<&[usize]>) -> Result<PartitionScan> {
    let n = state.num_wires();
    if n < 2 {
        return Err(Error::InvalidRegister(
            "scan needs at least two wires".into(),
        ));
    }
    check_scan_size(n)?;
    let rows = canonical_subsets(n, sizes)
        .into_par_iter()
        .map(|subset| {
            let cut = Bipartition::new(&subset, n)?;
            Ok(ScanRow {
                size: subset.len(),
                entanglement: bipartition_entanglement(state, &cut)?,
                subset,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PartitionScan {
        source: String::new(),
        n_wires: n,
        rows,
    })
}

/// `H(x/N)`: entanglement of `|W̃^N>` across any cut with `x` wires on one side.
pub fn wtilde_partition_entanglement(n_qubits: usize, x: usize) -> Result<f64> {
    if n_qubits < 2 || x == 0 || x >= n_qubits {
        return Err(Error::InvalidParameter(format!(
            "need N >= 2 and 1 <= x < N, got N = {n_qubits}, x = {x}"
        )));
    }
    Ok(binary_entropy(x as f64 / n_qubits as f64))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimalPartition {
    pub size: usize,
    /// The other maximizer when `N` is odd.
    pub tie: Option<usize>,
    pub entanglement: f64,
}

/// Exhaustive maximization of `H(x/N)` over `x = 1..N-1`.
pub fn optimal_wtilde_partition(n_qubits: usize) -> Result<OptimalPartition> {
    let values = (1..n_qubits)
        .map(|x| wtilde_partition_entanglement(n_qubits, x).map(|e| (x, e)))
        .collect::<Result<Vec<_>>>()?;
    let best = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let mut maximizers = values.iter().filter(|v| best - v.1 <= 1e-12).map(|v| v.0);
    let size = maximizers.next().expect("at least one size");
    Ok(OptimalPartition {
        size,
        tie: maximizers.next(),
        entanglement: if n_qubits.is_multiple_of(2) {
            1.0
        } else {
            best
        },
    })
}

fn check_three_qubits(state: &StateVector) -> Result<()> {
    if state.num_wires() != 3 || !state.register().is_qubits() {
        return Err(Error::InvalidRegister(format!(
            "expected three qubits, got dims {:?}",
            state.dims()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct CutReport {
    pub cut: Bipartition,
    pub coefficients: Vec<f64>,
    pub entanglement: f64,
}

impl CutReport {
    pub fn singleton(&self) -> usize {
        self.cut.side_b()[0]
    }

    pub fn coefficient_criterion(&self) -> bool {
        self.coefficients.len() == 2
            && self
                .coefficients
                .iter()
                .all(|c| (c - FRAC_1_SQRT_2).abs() <= SUITABILITY_TOL)
    }

    pub fn entropy_criterion(&self) -> bool {
        (self.entanglement - 1.0).abs() <= ENTROPY_TOL
    }
}

#[derive(Clone, Debug)]
pub struct SuitabilityVerdict {
    pub suitable: bool,
    /// Whether some cut carries one ebit by the entropy test alone.
    pub entropy_suitable: bool,
    pub witness_cut: Option<Bipartition>,
    pub witness_v12: Option<UnitaryOp>,
    pub witness_v3: Option<UnitaryOp>,
    /// `[p0, p1, s]`: output wire `i` of the aligned state is input wire `perm[i]`.
    pub witness_permutation: Option<Vec<usize>>,
    pub max_single_cut_entanglement: f64,
    /// Pair|singleton cuts with singleton 2, 1, 0.
    pub cuts: Vec<CutReport>,
}

impl SuitabilityVerdict {
    /// `(V12 ⊗ V3)|GHZ>`, wires in aligned order.
    pub fn witness_state(&self) -> Option<StateVector> {
        let (v12, v3) = (self.witness_v12.as_ref()?, self.witness_v3.as_ref()?);
        make_ghz().apply(v12).and_then(|s| s.apply(v3)).ok()
    }
}

/// Pair|singleton Schmidt data for each singleton `2, 1, 0`.
pub fn single_qubit_cuts(state: &StateVector) -> Result<Vec<CutReport>> {
    check_three_qubits(state)?;
    [2usize, 1, 0]
        .iter()
        .map(|&s| {
            let pair: Vec<usize> = (0..3).filter(|&w| w != s).collect();
            let cut = Bipartition::new(&pair, 3)?;
            let decomposition = schmidt_decompose(state, &cut)?;
            Ok(CutReport {
                entanglement: decomposition.entropy(),
                coefficients: decomposition.coefficients,
                cut,
            })
        })
        .collect()
}

pub fn classify_suitability(state: &StateVector) -> Result<SuitabilityVerdict> {
    let cuts = single_qubit_cuts(state)?;
    let max_single_cut_entanglement = cuts.iter().map(|c| c.entanglement).fold(0.0, f64::max);
    let entropy_suitable = cuts.iter().any(CutReport::entropy_criterion);
    let mut verdict = SuitabilityVerdict {
        suitable: false,
        entropy_suitable,
        witness_cut: None,
        witness_v12: None,
        witness_v3: None,
        witness_permutation: None,
        max_single_cut_entanglement,
        cuts,
    };
    let Some(hit) = verdict.cuts.iter().find(|c| c.coefficient_criterion()) else {
        return Ok(verdict);
    };
    let cut = hit.cut.clone();
    let d = schmidt_decompose(state, &cut)?;
    let completed = complete_basis(&d.vectors_a, d.vectors_a[0].register())?;
    let columns = [
        completed[0].clone(),
        completed[2].clone(),
        completed[3].clone(),
        completed[1].clone(),
    ];
    verdict.witness_v12 = Some(UnitaryOp::from_columns(vec![0, 1], &columns)?);
    verdict.witness_v3 = Some(UnitaryOp::from_columns(vec![2], &d.vectors_b)?);
    verdict.witness_permutation = Some(cut.side_a().iter().chain(cut.side_b()).copied().collect());
    verdict.witness_cut = Some(cut);
    verdict.suitable = true;
    Ok(verdict)
}

/// Largest amplitude deviation between the witness state and the aligned
/// input, after removing the global phase.
pub fn witness_error(state: &StateVector, verdict: &SuitabilityVerdict) -> Result<Option<f64>> {
    let (Some(witness), Some(perm)) = (
        verdict.witness_state(),
        verdict.witness_permutation.as_ref(),
    ) else {
        return Ok(None);
    };
    let aligned = state.permute(perm)?;
    let overlap = witness.inner(&aligned)?;
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    Ok(Some(witness.scaled(phase).max_abs_diff(&aligned)?))
}

/// GHZ teleportation moved onto the aligned state through the witness.
pub fn witness_teleport_protocol(
    verdict: &SuitabilityVerdict,
) -> Result<Option<TeleportationProtocol>> {
    let (Some(v12), Some(v3)) = (&verdict.witness_v12, &verdict.witness_v3) else {
        return Ok(None);
    };
    let p = transform_teleport_sender(&ghz_teleport(), v12)?;
    Ok(Some(transform_teleport_receiver(&p, v3)?))
}

/// Two-bit GHZ dense coding moved onto the aligned state: the sender holds
/// the singleton.
pub fn witness_dense_protocol(verdict: &SuitabilityVerdict) -> Result<Option<DenseCodingProtocol>> {
    let (Some(v12), Some(v3)) = (&verdict.witness_v12, &verdict.witness_v3) else {
        return Ok(None);
    };
    let p = transform_dense_sender(&ghz_dense2(), v3)?;
    Ok(Some(transform_dense_receiver(&p, v12)?))
}

/// Three-tangle `4 |d1 - 2 d2 + 4 d3|` from Cayley's hyperdeterminant.
pub fn three_tangle(state: &StateVector) -> Result<f64> {
    check_three_qubits(state)?;
    let a = |bits: usize| state.amplitudes()[bits];
    let d1 = a(0b000).powi(2) * a(0b111).powi(2)
        + a(0b001).powi(2) * a(0b110).powi(2)
        + a(0b010).powi(2) * a(0b101).powi(2)
        + a(0b100).powi(2) * a(0b011).powi(2);
    let d2 = a(0b000) * a(0b111) * a(0b011) * a(0b100)
        + a(0b000) * a(0b111) * a(0b101) * a(0b010)
        + a(0b000) * a(0b111) * a(0b110) * a(0b001)
        + a(0b011) * a(0b100) * a(0b101) * a(0b010)
        + a(0b011) * a(0b100) * a(0b110) * a(0b001)
        + a(0b101) * a(0b010) * a(0b110) * a(0b001);
    let d3 = a(0b000) * a(0b110) * a(0b101) * a(0b011) + a(0b111) * a(0b001) * a(0b010) * a(0b100);
    Ok(4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm())
}

/// Zero tangle with every single-qubit cut entangled.
pub fn w_class_membership(state: &StateVector) -> Result<bool> {
    let tangle = three_tangle(state)?;
    let cuts = single_qubit_cuts(state)?;
    Ok(tangle <= TANGLE_TOL && cuts.iter().all(|c| c.entanglement > ENTROPY_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_ghz_tilde, make_w123, make_w_tilde123};

    #[test]
    fn subsets_cover_each_cut_once() {
        let subsets = canonical_subsets(4, None);
        assert_eq!(subsets.len(), 7);
        assert_eq!(subsets[0], vec![0]);
        assert_eq!(subsets[1], vec![0, 1]);
        assert!(!subsets.contains(&vec![2, 3]));
        assert_eq!(canonical_subsets(5, Some(&[2])).len(), 10);
    }

    #[test]
    fn w123_scan() {
        let scan = scan_bipartitions(&make_w123(), None).unwrap();
        let by = |w: usize| {
            scan.rows
                .iter()
                .find(|r| r.subset == [w])
                .unwrap()
                .entanglement
        };
        assert!((by(2) - 1.0).abs() < 1e-9);
        assert!((by(0) - 0.811278124459133).abs() < 1e-9);
        assert_eq!(scan.maximum().unwrap().subset, vec![2]);
    }

    #[test]
    fn optimal_partition_examples() {
        assert_eq!(optimal_wtilde_partition(4).unwrap().size, 2);
        let seven = optimal_wtilde_partition(7).unwrap();
        assert_eq!((seven.size, seven.tie), (3, Some(4)));
        assert!((seven.entanglement - 0.985228136034251).abs() < 1e-9);
        assert!(wtilde_partition_entanglement(3, 3).is_err());
    }

    #[test]
    fn classifier_examples() {
        let w = classify_suitability(&make_w123()).unwrap();
        assert!(w.suitable && w.entropy_suitable);
        assert_eq!(w.witness_cut.as_ref().unwrap().label(), "01|2");
        assert!(witness_error(&make_w123(), &w).unwrap().unwrap() < 1e-9);
        for s in [make_w_tilde123(), make_ghz_tilde()] {
            let v = classify_suitability(&s).unwrap();
            assert!(!v.suitable && v.witness_v12.is_none());
        }
        let ghz = classify_suitability(&make_ghz()).unwrap();
        assert!(ghz.suitable);
        assert!(!w_class_membership(&make_ghz()).unwrap());
        assert!(w_class_membership(&make_w_tilde123()).unwrap());
    }

    #[test]
    fn rejects_non_three_qubit() {
        let s = StateVector::ket("01").unwrap();
        assert!(matches!(
            classify_suitability(&s),
            Err(Error::InvalidRegister(_))
        ));
        assert!(three_tangle(&s).is_err());
    }
}
