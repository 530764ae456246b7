//! Property suites: layout parity and spacing, telescoping detunings, MIS
//! oracle equivalence and drawing round trips.

use num_traits::One;
use proptest::prelude::*;
use rydberg_mis::compile::{compile, leg_detunings_corner, leg_detunings_junction, Targets};
use rydberg_mis::embed::{grid_embed, ingest_drawing, validate_drawing, GridDrawing};
use rydberg_mis::graph::{check_mis_correspondence, mis_exact, mis_exhaustive, Graph, MisOptions, PlanarGraph};
use rydberg_mis::layout::{arrange_atoms, LayoutParams};
use rydberg_mis::series;

/// Random subgraph of a w×h grid with degree at most 3; always planar.
fn grid_subgraph(max_cells: usize) -> impl Strategy<Value = PlanarGraph> {
    (1usize..=4, 1usize..=4)
        .prop_filter("cell budget", move |(w, h)| w * h <= max_cells)
        .prop_flat_map(|(w, h)| {
            let mut cand = Vec::new();
            for y in 0..h {
                for x in 0..w {
                    let v = y * w + x;
                    if x + 1 < w {
                        cand.push((v, v + 1));
                    }
                    if y + 1 < h {
                        cand.push((v, v + w));
                    }
                }
            }
            let m = cand.len();
            (Just(w * h), Just(cand), proptest::collection::vec(any::<bool>(), m))
        })
        .prop_map(|(n, cand, keep)| {
            let mut deg = vec![0; n];
            let mut edges = Vec::new();
            for (&(u, v), k) in cand.iter().zip(keep) {
                if k && deg[u] < 3 && deg[v] < 3 {
                    deg[u] += 1;
                    deg[v] += 1;
                    edges.push((u, v));
                }
            }
            PlanarGraph::from_edges(n, &edges).expect("grid subgraph is planar with degree <= 3")
        })
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0usize..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        (Just(n), Just(pairs), proptest::collection::vec(0u8..100, m), 5u8..60).prop_map(|(n, pairs, r, p)| {
            let edges: Vec<_> = pairs.into_iter().zip(r).filter(|(_, x)| *x < p).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).expect("simple graph")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mis_matches_exhaustive_oracle(g in any_graph(20)) {
        let bb = mis_exact(&g, &MisOptions::default()).unwrap();
        let ex = mis_exhaustive(&g).unwrap();
        prop_assert_eq!(bb.size, ex.size);
        prop_assert_eq!(bb.witness.len(), bb.size);
        prop_assert!(g.check_independent(&bb.witness).is_ok());
    }

    #[test]
    fn drawing_round_trips(g in grid_subgraph(8)) {
        let d = grid_embed(&g).unwrap();
        let report = validate_drawing(&d, g.graph());
        prop_assert!(report.is_valid(), "{:?}", report.violations);
        let text = d.to_json();
        prop_assert_eq!(&GridDrawing::from_json(&text).unwrap(), &d);
        let (d2, g2, _) = ingest_drawing(&text).unwrap();
        prop_assert_eq!(d2, d);
        prop_assert_eq!(g2.graph().edges(), g.graph().edges());
    }

    #[test]
    fn layout_parity_and_spacing(g in grid_subgraph(6), k in 2u32..=10, phi in 1u32..=3) {
        let d = grid_embed(&g).unwrap();
        let l = arrange_atoms(&d, &g, LayoutParams::new(k, phi).unwrap()).unwrap();
        for e in &l.edges {
            prop_assert_eq!(e.ancillas() % 2, 0);
            for w in e.chain.windows(2) {
                prop_assert!(l.dist2(w[0], w[1]) >= One::one());
            }
        }
        for a in 0..l.len() {
            for b in a + 1..l.len() {
                prop_assert!(l.dist2(a, b) >= One::one(), "atoms {} and {} closer than the lattice spacing", a, b);
            }
        }
        let ud = l.unit_disk_graph();
        for e in &l.edges {
            for w in e.chain.windows(2) {
                prop_assert!(ud.has_edge(w[0], w[1]));
            }
        }
        let r = check_mis_correspondence(g.graph(), &ud, &l.k_uv(), &MisOptions::with_budget(100_000)).unwrap();
        prop_assert!(r.holds, "{:?}", r);
        let back = rydberg_mis::layout::AtomLayout::from_json(&l.to_json()).unwrap();
        prop_assert_eq!(back.points(), l.points());
    }

    #[test]
    fn telescoping_identities(q in 1u64..=6) {
        let leg = leg_detunings_corner(q);
        prop_assert_eq!(leg.len(), 2 * q as usize);
        for p in 1..=q {
            let i = 2 * p as usize - 2;
            prop_assert!((leg[i] - leg[i + 1] - series::f0(p, 1e-14).value).abs() < 1e-12);
            if p < q {
                prop_assert!((leg[i + 1] - leg[i + 2] - series::f1(p, 1e-14).value).abs() < 1e-12);
            }
        }
        let [x, y, z] = leg_detunings_junction(q);
        prop_assert_eq!(&x, &z);
        for (a, b) in x.iter().zip(&y) {
            prop_assert!((2.0 * a - b).abs() < 1e-15);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn compiled_windows_are_homogeneous(g in grid_subgraph(4)) {
        let d = grid_embed(&g).unwrap();
        let l = arrange_atoms(&d, &g, LayoutParams::new(8, 7).unwrap()).unwrap();
        let c = compile(&l, Targets::default(), 1.0, false).unwrap();
        prop_assert!(c.report.feasible());
        prop_assert!(c.model.delta_eff_spread() <= 1e-9);
    }
}
