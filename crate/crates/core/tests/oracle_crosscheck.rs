//! Constructive solvers against exhaustive search on instances small enough
//! for the oracle, including ones below the degree thresholds.

use rainbow_core::oracle::{oracle_cycle_of_length_with, oracle_hamiltonian_cycle_with, oracle_hamiltonian_path_with};
use rainbow_core::pancyclic::{find_cycle_of_length, pancyclic_threshold};
use rainbow_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// 200 random instances plus infeasible extremal ones: unbalanced
/// bipartite systems and complete systems with two empty colors.
fn instances() -> impl Iterator<Item = (u64, GraphSystem)> {
    let random = (0..200u64).map(|seed| {
        let n = 4 + (seed as usize % 6);
        let min_deg = 1 + (seed as usize / 6) % (n - 1);
        let sys = generators::gen_random_min_degree_with(n, min_deg, seed, 0.05, Exec::Sequential).unwrap();
        (seed, sys)
    });
    let extremal = [6, 8].into_iter().map(|n| gen_unbalanced_bipartite(n).unwrap()).chain((5..=8).map(|n| {
        let edges = gen_complete(n).unwrap().edges().into_iter().filter(|&(c, _, _)| c >= 2);
        GraphSystem::build(n, edges).unwrap()
    }));
    random.chain(extremal.enumerate().map(|(i, sys)| (1000 + i as u64, sys)))
}

#[test]
fn hamiltonian_path_agrees_with_oracle() {
    let (mut feasible, mut infeasible) = (0, 0);
    for (seed, sys) in instances() {
        let oracle = oracle_hamiltonian_path(&sys).unwrap();
        match find_rainbow_hamiltonian_path(&sys) {
            Ok(p) => {
                assert!(verify_rainbow_path(&sys, &p).is_ok());
                assert!(oracle.is_some(), "seed {seed}: constructed a path the oracle missed");
            }
            Err(_) => assert!(
                oracle.is_some() || !ham_path::meets_path_threshold(&sys),
                "seed {seed}: failed under the hypothesis"
            ),
        }
        if let Some(p) = &oracle {
            assert!(verify_rainbow_path(&sys, p).is_ok());
            feasible += 1;
        } else {
            infeasible += 1;
        }
    }
    assert!(feasible > 0 && infeasible > 0, "{feasible} feasible, {infeasible} infeasible");
}

#[test]
fn pancyclic_lengths_agree_with_oracle() {
    for (seed, sys) in instances() {
        let n = sys.n();
        if sys.min_degree().unwrap() >= pancyclic_threshold(n) {
            let report = rainbow_pancyclic(&sys).unwrap();
            for (&len, c) in &report.cycles {
                assert!(verify_rainbow_cycle(&sys, c).is_ok());
                assert!(oracle_cycle_of_length(&sys, len).unwrap().is_some(), "seed {seed} len {len}");
            }
        }
        // Chord patterns around any base cycle never beat the oracle.
        if n >= 5 {
            if let Some(base) = oracle_cycle_of_length(&sys, n - 2).unwrap() {
                for len in 3..n - 1 {
                    let oracle = oracle_cycle_of_length(&sys, len).unwrap();
                    match find_cycle_of_length(&sys, &base, len) {
                        Ok(found) => {
                            assert!(verify_rainbow_cycle(&sys, &found.cycle).is_ok());
                            assert_eq!(found.cycle.len(), len);
                            assert!(oracle.is_some(), "seed {seed} len {len}");
                        }
                        Err(_) => assert!(oracle.is_none(), "seed {seed} len {len}: fallback missed a cycle"),
                    }
                }
            }
        }
    }
}

#[test]
fn absorption_never_contradicts_oracle_at_small_n() {
    for (seed, sys) in instances() {
        let n = sys.n();
        let oracle = oracle_hamiltonian_cycle(&sys).unwrap();
        let params = AbsorptionParams { ell: 3, build_retries: 5, sample_retries: 50 * n, disjoint_sampling: false };
        match find_rainbow_hamiltonian_cycle(&sys, &params, &mut ChaCha8Rng::seed_from_u64(seed)) {
            Ok(c) => {
                assert!(verify_rainbow_cycle(&sys, &c).is_ok());
                assert!(oracle.is_some());
            }
            Err(e) => assert!(matches!(e, AbsorptionError::NoRoom { .. }), "n = {n}: {e}"),
        }
    }
    // n = 10 is the smallest order with room for an absorbing cycle.
    for seed in 0..30u64 {
        let sys = gen_random_min_degree(10, 8, seed).unwrap();
        let oracle = oracle_hamiltonian_cycle(&sys).unwrap();
        let params = AbsorptionParams::default_for(10).unwrap();
        if let Ok(c) = find_rainbow_hamiltonian_cycle(&sys, &params, &mut ChaCha8Rng::seed_from_u64(seed)) {
            assert!(verify_rainbow_cycle(&sys, &c).is_ok());
            assert!(oracle.is_some());
        }
    }
}

#[test]
fn pruning_on_and_off_agree() {
    let off = OracleOptions { cap: None, symmetry_pruning: false };
    for (_, sys) in instances().filter(|(_, s)| s.n() <= 8).take(60) {
        let on_c = oracle_hamiltonian_cycle(&sys).unwrap();
        let off_c = oracle_hamiltonian_cycle_with(&sys, off).unwrap();
        assert_eq!(on_c.is_some(), off_c.is_some());
        let on_p = oracle_hamiltonian_path(&sys).unwrap();
        let off_p = oracle_hamiltonian_path_with(&sys, off).unwrap();
        assert_eq!(on_p.is_some(), off_p.is_some());
        for len in 3..=sys.n() {
            let a = oracle_cycle_of_length(&sys, len).unwrap();
            let b = oracle_cycle_of_length_with(&sys, len, off).unwrap();
            assert_eq!(a.is_some(), b.is_some());
        }
    }
}

#[test]
fn complete_systems_are_feasible_everywhere() {
    for n in 3..=9 {
        let sys = gen_complete(n).unwrap();
        assert!(oracle_hamiltonian_cycle(&sys).unwrap().is_some());
        for len in 3..=n {
            let c = oracle_cycle_of_length(&sys, len).unwrap().unwrap();
            assert!(verify_rainbow_cycle(&sys, &c).is_ok());
        }
    }
}
