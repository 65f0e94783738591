use proptest::prelude::*;
use rainbow_core::absorption::max_ell;
use rainbow_core::generators::gen_random_min_degree_with;
use rainbow_core::ham_path::find_rainbow_hamiltonian_path_observed;
use rainbow_core::pancyclic::{one_outside_cycle, pancyclic_threshold, PartitionWitness};
use rainbow_core::rotation::closure_degree_sum;
use rainbow_core::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn edge_list(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize, usize)>)> {
    (3..=max_n).prop_flat_map(|n| {
        let edge = (0..n, 0..n, 0..n).prop_filter("no loops", |(_, u, v)| u != v);
        (Just(n), proptest::collection::vec(edge, 0..4 * n * n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjacency_is_symmetric_and_consistent((n, edges) in edge_list(12)) {
        let sys = GraphSystem::build(n, edges.clone()).unwrap();
        for &(c, u, v) in &edges {
            prop_assert!(sys.adjacent(c, u, v) && sys.adjacent(c, v, u));
        }
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(sys.adjacent(0, u, v), sys.adjacent(0, v, u));
                if u != v {
                    let direct = sys.colors_between(u, v).unwrap();
                    let via_neighbors: Vec<usize> = (0..n).filter(|&c| sys.neighbors(c, u).any(|w| w == v)).collect();
                    prop_assert_eq!(direct, via_neighbors);
                }
            }
        }
        let rebuilt = GraphSystem::build(n, sys.edges()).unwrap();
        prop_assert_eq!(rebuilt, sys);
    }

    #[test]
    fn lifted_certificates_verify(n in 8usize..14, seed in 0u64..500, drop in 1usize..4) {
        let sys = gen_random_min_degree(n, n / 2 + 1, seed).unwrap();
        let keep: Vec<usize> = (drop..n).collect();
        let colors: Vec<usize> = (0..n - drop).map(|c| (c + seed as usize) % n).collect();
        let sub = sys.induced_subsystem(&keep, &colors).unwrap();
        if let Ok(p) = find_rainbow_hamiltonian_path(&sub.system) {
            prop_assert!(verify_rainbow_path(&sub.system, &p).is_ok());
            prop_assert!(verify_rainbow_path(&sys, &sub.lift_path(&p)).is_ok());
        }
        if let Ok(Some(c)) = oracle_hamiltonian_cycle(&sub.system) {
            prop_assert!(verify_rainbow_cycle(&sys, &sub.lift_cycle(&c)).is_ok());
        }
    }

    #[test]
    fn closing_keeps_vertices_and_respects_guard(n in 5usize..11, seed in 0u64..2000, d in 1usize..10) {
        let sys = gen_random_min_degree_with(n, d.min(n - 1), seed, 0.2, Exec::Sequential).unwrap();
        // Grow a rainbow path greedily, then try every spare color pair.
        let mut path = RainbowPath::single(seed as usize % n);
        while path.len() < n - 1 {
            match extend_path(&sys, &path).unwrap() {
                Some(next) => path = next,
                None => break,
            }
        }
        prop_assume!(path.len() >= 3);
        let spare: Vec<usize> = (0..n).filter(|c| !path.colors.contains(c)).collect();
        for &c in &spare {
            for &c_prime in spare.iter().filter(|&&x| x != c) {
                let result = close_rainbow_cycle(&sys, &path, c, c_prime).unwrap();
                if closure_degree_sum(&sys, &path, c, c_prime) >= path.len() {
                    prop_assert!(result.is_some());
                }
                if let Some(cycle) = result {
                    prop_assert!(verify_rainbow_cycle(&sys, &cycle).is_ok());
                    prop_assert_eq!(cycle.len(), path.len());
                    prop_assert_eq!(cycle.vertex_set(n), path.vertex_set(n));
                }
            }
        }
    }

    #[test]
    fn hamiltonian_path_under_threshold(n in 3usize..30, seed in 0u64..10_000) {
        let sys = gen_random_min_degree(n, (n - 1).div_ceil(2), seed).unwrap();
        let mut lengths = Vec::new();
        let p = find_rainbow_hamiltonian_path_observed(&sys, |l| lengths.push(l)).unwrap();
        prop_assert!(verify_rainbow_path(&sys, &p).is_ok());
        prop_assert_eq!(p.len(), n);
        prop_assert_eq!(p.color_set(n).len(), n - 1);
        prop_assert!(lengths.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn pancyclic_under_threshold(n in 4usize..26, seed in 0u64..10_000) {
        let sys = gen_random_min_degree(n, pancyclic_threshold(n), seed).unwrap();
        let report = rainbow_pancyclic(&sys).unwrap();
        prop_assert_eq!(report.cycles.len(), n - 3);
        for (&len, c) in &report.cycles {
            prop_assert_eq!(c.len(), len);
            prop_assert!(verify_rainbow_cycle(&sys, c).is_ok());
        }
    }

    #[test]
    fn witnesses_are_partitions_when_the_search_fails(n in 8usize..16, seed in 0u64..5000, d in 3usize..9) {
        let sys = gen_random_min_degree_with(n, d.min(n - 1), seed, 0.05, Exec::Sequential).unwrap();
        let Ok(Some(base)) = oracle_cycle_of_length(&sys, (n - 3).min(12)) else { return Ok(()) };
        let p = base.len();
        let on = base.vertex_set(n);
        let used = base.color_set(n);
        let spare: Vec<usize> = (0..n).filter(|&c| !used.contains(c)).collect();
        for x in (0..n).filter(|&x| !on.contains(x)) {
            for &c in &spare {
                for &c_prime in spare.iter().filter(|&&y| y != c) {
                    for len in 3..=p {
                        if one_outside_cycle(&sys, &base, x, c, c_prime, len).is_some() {
                            continue;
                        }
                        let w = PartitionWitness::compute(&sys, &base, x, c, c_prime, len);
                        prop_assert!(w.is_disjoint());
                        if w.degree_sum() >= p {
                            prop_assert!(w.is_partition_of(&base));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generators_meet_their_degree(n in 2usize..40, frac in 0.0f64..1.0, seed in 0u64..1000) {
        let d = ((n - 1) as f64 * frac) as usize;
        let a = gen_random_min_degree(n, d, seed).unwrap();
        prop_assert!((0..n).all(|c| a.min_color_degree(c) >= d));
        prop_assert_eq!(&a, &gen_random_min_degree(n, d, seed).unwrap());
    }

    #[test]
    fn absorb_set_equalities_and_locality(seed in 0u64..200, len in 1usize..6) {
        let n = 40 + (seed as usize % 11);
        let sys = gen_random_min_degree(n, (3 * n).div_ceil(4), seed).unwrap();
        let params = AbsorptionParams { ell: max_ell(n), build_retries: 20, sample_retries: 50 * n, disjoint_sampling: true };
        let ac = build_absorbing_cycle(&sys, &params, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(ac.check_invariants(&sys).is_ok());

        // A rainbow path outside the cycle in free colors, grown greedily.
        let on = ac.cycle.vertex_set(n);
        let free = ac.free_colors(n);
        let start = (0..n).find(|&v| !on.contains(v)).unwrap();
        let mut p = RainbowPath::single(start);
        'grow: while p.len() < len {
            for &c in free.iter().filter(|c| !p.colors.contains(c)) {
                if let Some(y) = sys.neighbors(c, p.last()).find(|&y| !on.contains(y) && !p.vertices.contains(&y)) {
                    p.vertices.push(y);
                    p.colors.push(c);
                    continue 'grow;
                }
            }
            break;
        }
        let s = *free.iter().rev().find(|c| !p.colors.contains(c)).unwrap();
        let a = absorb_at(&sys, &ac, &p, s).unwrap();
        prop_assert!(verify_rainbow_cycle(&sys, &a.cycle).is_ok());

        let mut vs = ac.cycle.vertex_set(n);
        p.vertices.iter().for_each(|&v| { vs.insert(v); });
        let mut cs = ac.cycle.color_set(n);
        p.colors.iter().chain([&s]).for_each(|&c| { cs.insert(c); });
        prop_assert_eq!(a.cycle.vertex_set(n), vs);
        prop_assert_eq!(a.cycle.color_set(n), cs);

        // The old cycle minus the replaced edge leads the output unchanged.
        let k = ac.cycle.len();
        for j in 0..k {
            prop_assert_eq!(a.cycle.vertices[j], ac.cycle.at(a.edge + 1 + j));
        }
        for j in 0..k - 1 {
            prop_assert_eq!(a.cycle.colors[j], ac.cycle.colors[(a.edge + 1 + j) % k]);
        }
    }
}

#[test]
fn bipartite_patterns_never_return_odd_cycles() {
    for n in [6, 8, 10] {
        let sys = gen_balanced_bipartite(n).unwrap();
        let base = oracle_cycle_of_length(&sys, n - 2).unwrap().unwrap();
        for len in 3..n {
            match pancyclic::find_cycle_of_length(&sys, &base, len) {
                Ok(found) => {
                    assert_eq!(len % 2, 0, "odd cycle {found:?}");
                    assert!(verify_rainbow_cycle(&sys, &found.cycle).is_ok());
                }
                Err(e) => assert!(len % 2 == 1, "even length {len} missing: {e}"),
            }
        }
    }
}
