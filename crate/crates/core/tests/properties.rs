//! Randomised cross-checks between independent computations.

use graphtopo_core::embedding::{build_matrix, EmbedderKind, EmbedderSpec, InfinitySubstitute};
use graphtopo_core::filtration::{degree_filtration, filtration_steps, make_injective, sublevel_graph};
use graphtopo_core::grad::{build_routing, routing_is_exact, InfinityRouting};
use graphtopo_core::graph::betti_graph;
use graphtopo_core::persistence::{diagram_multiset, diagrams_equal, multiset, ph_graph};
use graphtopo_core::simplicial::{
    betti_numbers, boundary_matrix, clique_complex, multiplicity, reduce_persistence, SimplicialComplex,
};
use graphtopo_core::wl::{wl_distinguish, wl_filtration, InitialLabels};
use graphtopo_core::{Graph, VertexFiltration};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, p: f64) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

fn injective_values(rng: &mut ChaCha8Rng, n: usize) -> VertexFiltration {
    let mut vals: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    vals.shuffle(rng);
    VertexFiltration::new(vals).unwrap()
}

/// Small integer values, so ties are common.
fn tied_values(rng: &mut ChaCha8Rng, n: usize) -> VertexFiltration {
    VertexFiltration::new((0..n).map(|_| rng.gen_range(0..4) as f64).collect()).unwrap()
}

fn permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn permuted_values(f: &VertexFiltration, perm: &[usize]) -> VertexFiltration {
    let mut vals = vec![0.0; f.len()];
    for (v, &p) in perm.iter().enumerate() {
        vals[p] = f.value(v);
    }
    VertexFiltration::new(vals).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn union_find_matches_matrix_reduction(seed in any::<u64>(), tied in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 12, 0.3);
        let f = if tied { tied_values(&mut rng, g.n_vertices()) } else { injective_values(&mut rng, g.n_vertices()) };
        let fast = ph_graph(&g, &f).unwrap();
        let slow = reduce_persistence(&clique_complex(&g, &f, 1).unwrap()).unwrap();
        prop_assert_eq!(diagram_multiset(&fast, 0), slow.multiset(0));
        prop_assert_eq!(diagram_multiset(&fast, 1), slow.multiset(1));
    }

    #[test]
    fn diagrams_ignore_relabelling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 12, 0.3);
        let f = tied_values(&mut rng, g.n_vertices());
        let perm = permutation(&mut rng, g.n_vertices());
        let h = g.permuted(&perm).unwrap();
        prop_assert_eq!(betti_graph(&g), betti_graph(&h));
        let a = ph_graph(&g, &f).unwrap();
        let b = ph_graph(&h, &permuted_values(&f, &perm)).unwrap();
        prop_assert!(diagrams_equal(&a, &b));
    }

    #[test]
    fn boundary_of_boundary_vanishes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 9, 0.6);
        let k = clique_complex(&g, &tied_values(&mut rng, g.n_vertices()), 3).unwrap();
        for d in 1..3 {
            let lower = boundary_matrix(&k, d).unwrap();
            let upper = boundary_matrix(&k, d + 1).unwrap();
            prop_assert!(lower.mul(&upper).unwrap().is_zero());
        }
    }

    #[test]
    fn essential_counts_are_betti_numbers(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 10, 0.5);
        let k = clique_complex(&g, &tied_values(&mut rng, g.n_vertices()), 3).unwrap();
        let diag = reduce_persistence(&k).unwrap();
        let betti = betti_numbers(&k, 3);
        for (d, &b) in betti.iter().enumerate() {
            prop_assert_eq!(diag.essential_count(d), b);
        }
        // Graph-level Betti numbers agree with the Z₂ ranks of the 1-skeleton.
        let b = betti_graph(&g);
        let one = betti_numbers(&clique_complex(&g, &degree_filtration(&g), 1).unwrap(), 1);
        prop_assert_eq!((b.b0, b.b1), (one[0], one[1]));
        prop_assert_eq!(b.b1 + g.n_vertices(), g.n_edges() + b.b0);
    }

    #[test]
    fn sublevel_betti_counts_live_pairs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 12, 0.3);
        let f = tied_values(&mut rng, g.n_vertices());
        let d = ph_graph(&g, &f).unwrap();
        for t in filtration_steps(&f) {
            let (sub, _) = sublevel_graph(&g, &f, t).unwrap();
            let alive0 = d.d0.iter().filter(|p| p.birth <= t && p.death > t).count();
            let alive1 = d.d1().filter(|p| p.birth <= t && p.death > t).count();
            prop_assert_eq!(betti_graph(&sub).b0, alive0);
            prop_assert_eq!(betti_graph(&sub).b1, alive1);
        }
    }

    #[test]
    fn routing_points_at_the_right_vertices(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 12, 0.3);
        let f = injective_values(&mut rng, g.n_vertices());
        let d = ph_graph(&g, &f).unwrap();
        let r = build_routing(&g, &f, &d, InfinityRouting::ArgMax).unwrap();
        prop_assert!(routing_is_exact(&g, &f, &d, &r));
    }

    #[test]
    fn make_injective_keeps_strict_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..30);
        let f = tied_values(&mut rng, n);
        let eps = 1e-3;
        let h = make_injective(&f, eps).unwrap();
        prop_assert!(h.is_injective());
        for u in 0..n {
            prop_assert!((h.value(u) - f.value(u)).abs() < eps);
            for v in 0..n {
                if f.value(u) < f.value(v) {
                    prop_assert!(h.value(u) < h.value(v));
                }
            }
        }
    }

    #[test]
    fn wl_ignores_relabelling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 12, 0.3);
        let h = g.permuted(&permutation(&mut rng, g.n_vertices())).unwrap();
        prop_assert_eq!(wl_distinguish(&g, &h, 10, InitialLabels::Uniform), None);
        prop_assert_eq!(wl_distinguish(&g, &h, 10, InitialLabels::Degree), None);
    }

    #[test]
    fn wl_divergence_is_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 8, 0.4);
        let h = random_graph(&mut rng, 8, 0.4);
        if let Some(t) = wl_distinguish(&g, &h, 10, InitialLabels::Uniform) {
            for m in 0..=10 {
                let expected = if m >= t { Some(t) } else { None };
                prop_assert_eq!(wl_distinguish(&g, &h, m, InitialLabels::Uniform), expected);
            }
        }
    }

    #[test]
    fn local_embedders_are_row_local(seed in any::<u64>(), kind_idx in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 10, 0.4);
        let f = injective_values(&mut rng, g.n_vertices());
        let spec = EmbedderSpec::random(EmbedderKind::ALL[kind_idx], 1, 3, 2, (0.0, 10.0), seed);
        let m = build_matrix(&[ph_graph(&g, &f).unwrap()], 0, InfinitySubstitute::MaxFiltration).unwrap();
        let before = spec.embed(&m).unwrap();
        let target = rng.gen_range(0..m.rows());
        let mut changed = m.clone();
        for r in 0..m.rows() {
            if r != target {
                changed.row_mut(r).copy_from_slice(&[rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)]);
            }
        }
        prop_assert_eq!(&spec.embed(&changed).unwrap()[target], &before[target]);
    }
}

/// Random filtered complex on `n` vertices: a random clique complex whose
/// simplices enter at random (monotone) integer steps.
fn random_filtered_complex(rng: &mut ChaCha8Rng, n: usize) -> SimplicialComplex {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::new(n, edges).unwrap();
    let base = clique_complex(&g, &VertexFiltration::constant(n, 0.0).unwrap(), 2).unwrap();
    // Each simplex enters at its largest face value plus a random delay.
    let mut values: Vec<(Vec<usize>, f64)> = Vec::new();
    for s in base.simplices() {
        let faces_max = s
            .facets()
            .map(|f| values.iter().find(|(v, _)| *v == f).map(|x| x.1).unwrap())
            .fold(0.0, f64::max);
        let delay = if s.dim() == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..2) };
        values.push((s.vertices.clone(), faces_max + delay as f64));
    }
    SimplicialComplex::new(values).unwrap()
}

#[test]
fn multiplicities_match_diagram_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let k = random_filtered_complex(&mut rng, 8);
        let diag = reduce_persistence(&k).unwrap();
        let mut steps: Vec<f64> = k.simplices().iter().map(|s| s.value).collect();
        steps.sort_by(f64::total_cmp);
        steps.dedup();
        for d in 0..2 {
            for i in 1..=steps.len() {
                for j in i + 1..=steps.len() {
                    let count = diag.dim(d).iter().filter(|p| p.birth == steps[i - 1] && p.death == steps[j - 1]).count();
                    assert_eq!(multiplicity(&k, d, i, Some(j)).unwrap(), count, "d={d} i={i} j={j}");
                }
                let essential = diag.dim(d).iter().filter(|p| p.birth == steps[i - 1] && p.death.is_infinite()).count();
                assert_eq!(multiplicity(&k, d, i, None).unwrap(), essential);
            }
        }
    }
}

#[test]
fn wl_separation_carries_over_to_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    while checked < 60 {
        let g = random_graph(&mut rng, 9, 0.35);
        let h = random_graph(&mut rng, 9, 0.35);
        let Some(t) = wl_distinguish(&g, &h, 4, InitialLabels::Uniform) else { continue };
        let (fg, fh) = wl_filtration(&g, &h, t, 1e-3, InitialLabels::Uniform).unwrap();
        assert!(!diagrams_equal(&ph_graph(&g, &fg).unwrap(), &ph_graph(&h, &fh).unwrap()));
        checked += 1;
    }
}

#[test]
fn relabelled_simplices_keep_their_diagram() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let g = random_graph(&mut rng, 9, 0.5);
        let f = tied_values(&mut rng, g.n_vertices());
        let perm = permutation(&mut rng, g.n_vertices());
        let a = reduce_persistence(&clique_complex(&g, &f, 3).unwrap()).unwrap();
        let h = g.permuted(&perm).unwrap();
        let b = reduce_persistence(&clique_complex(&h, &permuted_values(&f, &perm), 3).unwrap()).unwrap();
        for d in 0..=3 {
            assert_eq!(a.multiset(d), b.multiset(d));
        }
        assert_eq!(multiset(ph_graph(&g, &f).unwrap().d1()), multiset(ph_graph(&h, &permuted_values(&f, &perm)).unwrap().d1()));
    }
}
