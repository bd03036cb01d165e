use wclass::analysis::*;
use wclass::catalog::{
    make_ghz, make_ghz_tilde, make_w_n, make_w_tilde123, make_w_tilde_n, make_zero,
};
use wclass::protocols::{check_dense_soundness, random_inputs, teleport_soundness};
use wclass::qstate::{random_state, random_unitary, seeded_rng, QuditRegister, StateVector};

#[test]
fn closed_form_matches_dense_scan() {
    for n in 2..=10 {
        let scan = scan_bipartitions(&make_w_tilde_n(n).unwrap(), None).unwrap();
        for row in &scan.rows {
            let closed = wtilde_partition_entanglement(n, row.size).unwrap();
            assert!(
                (row.entanglement - closed).abs() < 1e-9,
                "N={n} {:?}",
                row.subset
            );
        }
    }
}

#[test]
fn wtilde_entanglement_is_unimodal() {
    for n in 2..=64 {
        let values: Vec<f64> = (1..n)
            .map(|x| wtilde_partition_entanglement(n, x).unwrap())
            .collect();
        let peak = n / 2 - 1;
        for x in 0..values.len() - 1 {
            if x < peak {
                assert!(values[x] < values[x + 1]);
            } else if x > peak {
                assert!(values[x] > values[x + 1]);
            }
        }
        let best = optimal_wtilde_partition(n).unwrap();
        assert_eq!(best.size, n / 2);
        assert_eq!(best.tie.is_some(), n % 2 == 1);
    }
}

#[test]
fn scan_rows_are_ordered_and_bounded() {
    let reg = QuditRegister::new(vec![2, 3, 2, 2, 3]).unwrap();
    let s = random_state(&reg, 4);
    let scan = scan_bipartitions(&s, None).unwrap();
    let mut sorted = scan.rows.clone();
    sorted.sort_by(|a, b| a.subset.cmp(&b.subset));
    assert_eq!(sorted, scan.rows);
    for row in &scan.rows {
        let dim_a: usize = row.subset.iter().map(|&w| reg.dims()[w]).product();
        let dim = (dim_a.min(reg.total_dim() / dim_a)) as f64;
        assert!(row.entanglement >= 0.0 && row.entanglement <= dim.log2() + 1e-9);
    }
    let zero = scan_bipartitions(&make_zero(5).unwrap(), Some(&[2])).unwrap();
    assert_eq!(zero.rows.len(), 10);
    assert!(zero.rows.iter().all(|r| r.entanglement.abs() < 1e-12));
}

#[test]
fn scan_refuses_huge_registers() {
    assert!(check_scan_size(20).is_ok());
    assert!(matches!(
        check_scan_size(21),
        Err(wclass::Error::TooLarge(21))
    ));
    assert!(scan_bipartitions(&make_zero(1).unwrap(), None).is_err());
}

#[test]
fn wtilde123_rows_equal() {
    let scan = scan_bipartitions(&make_w_tilde123(), None).unwrap();
    assert_eq!(scan.rows.len(), 3);
    for r in &scan.rows {
        assert!((r.entanglement - 0.918295834054490).abs() < 1e-9);
    }
}

#[test]
fn suitable_states_yield_working_protocols() {
    let mut rng = seeded_rng(31);
    let mut states: Vec<StateVector> = (0..10)
        .map(|_| {
            let v = random_unitary(vec![0, 1], &[2, 2], &mut rng).unwrap();
            let w = random_unitary(vec![2], &[2], &mut rng).unwrap();
            let s = make_ghz().apply(&v).unwrap().apply(&w).unwrap();
            // move the singleton to a random position
            let perms = [[0, 1, 2], [0, 2, 1], [2, 0, 1]];
            s.permute(&perms[rand::Rng::random_range(&mut rng, 0..3)])
                .unwrap()
        })
        .collect();
    states.push(make_w_n(0.7, 1.0, 2.0).unwrap());
    for s in &states {
        let verdict = classify_suitability(s).unwrap();
        assert!(verdict.suitable);
        assert!(witness_error(s, &verdict).unwrap().unwrap() < 1e-9);
        let tele = witness_teleport_protocol(&verdict).unwrap().unwrap();
        let inputs = random_inputs(&[2], 20, &mut rng).unwrap();
        assert!(teleport_soundness(&tele, &inputs).unwrap().is_sound());
        check_dense_soundness(&witness_dense_protocol(&verdict).unwrap().unwrap()).unwrap();
    }
}

#[test]
fn unsuitable_states_have_no_full_ebit() {
    let reg = QuditRegister::qubits(3).unwrap();
    let mut states = vec![make_w_tilde123(), make_ghz_tilde()];
    states.extend((0..20).map(|k| random_state(&reg, 300 + k)));
    for s in &states {
        let v = classify_suitability(s).unwrap();
        assert!(!v.suitable);
        assert!(v.cuts.iter().all(|c| c.entanglement < 1.0 - 1e-6));
        assert!(witness_teleport_protocol(&v).unwrap().is_none());
    }
    let tilde = classify_suitability(&make_w_tilde123()).unwrap();
    assert!((tilde.max_single_cut_entanglement - 0.918295834054490).abs() < 1e-9);
}
