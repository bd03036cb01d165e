use nalgebra::DMatrix;
use wclass::analysis::{three_tangle, w_class_membership};
use wclass::catalog::*;
use wclass::qstate::*;

/// Concurrence of the two-qubit reduced state on `pair` of a pure three-qubit
/// state: with branches `v_c` (third qubit fixed to `c`), the Wootters values
/// are the singular values of `τ_ij = v_iᵀ (σy⊗σy) v_j`.
fn concurrence(s: &StateVector, pair: [usize; 2]) -> f64 {
    let third = 3 - pair[0] - pair[1];
    let branch = |c: usize| -> Vec<C64> {
        (0..4)
            .map(|ab| {
                let mut bits = [0usize; 3];
                bits[pair[0]] = ab >> 1;
                bits[pair[1]] = ab & 1;
                bits[third] = c;
                s.amplitudes()[bits[0] * 4 + bits[1] * 2 + bits[2]]
            })
            .collect()
    };
    let v = [branch(0), branch(1)];
    // σy⊗σy maps |ab> to -(-1)^(a+b) |ā b̄>
    let yy = |x: &[C64]| -> Vec<C64> {
        (0..4)
            .map(|k| {
                let sign = if k == 0 || k == 3 { -1.0 } else { 1.0 };
                x[3 - k] * sign
            })
            .collect()
    };
    let tau = DMatrix::from_fn(2, 2, |i, j| {
        v[i].iter().zip(yy(&v[j])).map(|(a, b)| a * b).sum::<C64>()
    });
    let sv = tau.singular_values();
    (sv.max() - sv.min()).abs()
}

/// `C²_{0(12)} - C²_{01} - C²_{02}`.
fn tangle_oracle(s: &StateVector) -> f64 {
    let rho_a = partial_trace(s, &[0]).unwrap();
    let m = rho_a.matrix();
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let c01 = concurrence(s, [0, 1]);
    let c02 = concurrence(s, [0, 2]);
    4.0 * det - c01 * c01 - c02 * c02
}

#[test]
fn tangle_matches_concurrence_oracle() {
    let reg = QuditRegister::qubits(3).unwrap();
    let mut states = vec![
        make_ghz(),
        make_ghz_tilde(),
        make_w123(),
        make_w_tilde123(),
        make_zero(3).unwrap(),
    ];
    states.extend((0..30).map(|k| random_state(&reg, 900 + k)));
    for s in &states {
        let t = three_tangle(s).unwrap();
        assert!((0.0..=1.0 + 1e-12).contains(&t));
        assert!(
            (t - tangle_oracle(s)).abs() < 1e-10,
            "{t} vs {}",
            tangle_oracle(s)
        );
    }
    assert!((three_tangle(&make_ghz()).unwrap() - 1.0).abs() < 1e-12);
    assert!(three_tangle(&make_zero(3).unwrap()).unwrap() < 1e-12);
    for s in [
        make_w123(),
        make_w_tilde123(),
        make_w_n(2.3, 0.4, 1.9).unwrap(),
    ] {
        assert!(three_tangle(&s).unwrap() < 1e-9);
        assert!(w_class_membership(&s).unwrap());
    }
    let biseparable = tensor_product(&make_epr(), &StateVector::ket("0").unwrap());
    assert!(!w_class_membership(&biseparable).unwrap());
}

#[test]
fn generalized_pauli_trace_orthogonality() {
    let d = 3;
    let ops: Vec<(usize, usize, UnitaryOp)> = (0..d)
        .flat_map(|m| (0..d).map(move |n| (m, n)))
        .map(|(m, n)| (m, n, generalized_pauli(m, n, d, 0).unwrap()))
        .collect();
    let mut pairs = 0;
    for (m, n, u) in &ops {
        for (m2, n2, v) in &ops {
            let tr: C64 = (u.matrix().adjoint() * v.matrix()).trace();
            let expected = if (m, n) == (m2, n2) { d as f64 } else { 0.0 };
            assert!((tr - C64::new(expected, 0.0)).norm() < 1e-12);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 81);
}

#[test]
fn generalized_pauli_entries() {
    // U(m, n) = Σ_k e^{2πikm/d} |k><k⊕n|
    let d = 4;
    for m in 0..d {
        for n in 0..d {
            let u = generalized_pauli(m, n, d, 0).unwrap();
            for k in 0..d {
                for j in 0..d {
                    let phase = 2.0 * std::f64::consts::PI * (k * m) as f64 / d as f64;
                    let want = if j == (k + n) % d {
                        C64::from_polar(1.0, phase)
                    } else {
                        C64::new(0.0, 0.0)
                    };
                    assert!((u.matrix()[(k, j)] - want).norm() < 1e-12);
                }
            }
        }
    }
    assert!(
        generalized_pauli(0, 0, 2, 0)
            .unwrap()
            .max_abs_diff(&pauli(0, 0).unwrap())
            < 1e-15
    );
    assert!(
        generalized_pauli(1, 0, 2, 0)
            .unwrap()
            .max_abs_diff(&pauli(3, 0).unwrap())
            < 1e-15
    );
    assert!(
        generalized_pauli(0, 1, 2, 0)
            .unwrap()
            .max_abs_diff(&pauli(1, 0).unwrap())
            < 1e-15
    );
}

/// Mean entanglement entropy of a Haar state on `m × n`, `m <= n`, in bits.
fn page_average(m: usize, n: usize) -> f64 {
    let harmonic: f64 = (n + 1..=m * n).map(|k| 1.0 / k as f64).sum();
    (harmonic - (m as f64 - 1.0) / (2.0 * n as f64)) / std::f64::consts::LN_2
}

#[test]
fn haar_average_entropy() {
    let oracle = page_average(2, 2);
    assert!((oracle - 0.480898346962988).abs() < 1e-12);
    let reg = QuditRegister::qubits(2).unwrap();
    let mut rng = seeded_rng(2024);
    let cut = Bipartition::new(&[0], 2).unwrap();
    let mean: f64 = (0..1000)
        .map(|_| bipartition_entanglement(&random_state_with(&reg, &mut rng), &cut).unwrap())
        .sum::<f64>()
        / 1000.0;
    assert!((mean - 0.48).abs() < 0.05);
    assert!((mean - oracle).abs() < 0.05);
}

#[test]
fn random_state_is_reproducible() {
    let reg = QuditRegister::new(vec![2, 3, 2]).unwrap();
    let a = random_state(&reg, 77);
    assert_eq!(a, random_state(&reg, 77));
    assert!((a.norm() - 1.0).abs() < 1e-12);
    assert!(a.max_abs_diff(&random_state(&reg, 78)).unwrap() > 1e-3);
}

#[test]
fn tensor_with_ghz_by_hand() {
    let (alpha, beta) = (C64::new(0.6, 0.0), C64::new(0.0, 0.8));
    let psi = StateVector::new(QuditRegister::qubits(1).unwrap(), vec![alpha, beta]).unwrap();
    let joint = tensor_product(&psi, &make_ghz());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for (k, z) in joint.amplitudes().iter().enumerate() {
        let want = match k {
            0b0000 | 0b0111 => alpha * h,
            0b1000 | 0b1111 => beta * h,
            _ => C64::new(0.0, 0.0),
        };
        assert!((z - want).norm() < 1e-15);
    }
}

#[test]
fn w_tilde_single_cut_is_binary_entropy() {
    let mut last = f64::INFINITY;
    for n in 2..=12 {
        let w = make_w_tilde_n(n).unwrap();
        let e = bipartition_entanglement(&w, &Bipartition::new(&[n / 2], n).unwrap()).unwrap();
        let p = 1.0 / n as f64;
        let h = -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
        assert!((e - h).abs() < 1e-9);
        assert!(e < last || n == 2);
        last = e;
    }
}

#[test]
fn omega_reductions() {
    for n in 2..=6 {
        let o = make_omega(n, 2).unwrap();
        assert!(o.max_abs_diff(&make_w_state_n(n).unwrap()).unwrap() < 1e-12);
    }
    let o = make_omega(3, 3).unwrap();
    let e = bipartition_entanglement(&o, &Bipartition::new(&[0, 1], 3).unwrap()).unwrap();
    assert!((e - 3f64.log2()).abs() < 1e-9);
}
