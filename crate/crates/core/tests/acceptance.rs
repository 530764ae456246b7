//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rydberg_mis::compile::{compile, leg_detunings_corner, leg_detunings_junction, smallest_feasible_phi, Targets};
use rydberg_mis::embed::{grid_embed, ingest_drawing, validate_drawing, EdgePath, GridDrawing};
use rydberg_mis::energy::{ground_state, region_energies, QuadraticModel, SampleOptions, Strategy, ToyParams};
use rydberg_mis::graph::{check_mis_correspondence, mis_exact, mis_exhaustive, named, Graph, MisOptions, PlanarGraph};
use rydberg_mis::layout::{arrange_atoms, AtomLayout, LayoutParams, SpecialKind, WallPolicy};
use rydberg_mis::series::{self, structure_constants};
use rydberg_mis::structures::{isolated_structure, lattice_structures, toy_detunings, toy_instance, IsolatedKind};
use rydberg_mis::verify::{verify_instance, VerifyOptions};
use std::time::{Duration, Instant};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn layout(g: &PlanarGraph, k: u32, phi: u32) -> AtomLayout {
    arrange_atoms(&grid_embed(g).expect("corpus graphs embed"), g, LayoutParams::new(k, phi).expect("valid parameters")).expect("layout builds")
}

fn within(t: Instant, limit: Duration, lines: &mut Vec<String>) -> bool {
    let e = t.elapsed();
    lines.push(format!("runtime {:.2}s (limit {}s)", e.as_secs_f64(), limit.as_secs()));
    e < limit
}

fn constants_suite() -> Outcome {
    let t = Instant::now();
    let table = structure_constants(None, None, series::DEFAULT_TOL);
    let mut lines = Vec::new();
    let mut pass = true;
    for e in table.entries.iter().filter(|e| e.printed.is_some() && e.name != "u_eff_coefficient") {
        let ok = e.matches == Some(true);
        pass &= ok;
        lines.push(format!("{:<26} {:.9} vs {:.7} {}", e.name, e.computed.value, e.printed.unwrap(), if ok { "ok" } else { "MISMATCH" }));
    }
    // explicit-configuration oracle for the segment interaction coefficient
    let t16 = Targets::default();
    let l = layout(&named::k2(), 16, 7);
    let c = compile(&l, t16, 1.0, false).expect("k2 compiles");
    let oracle = t16.delta_b - c.model.u_eff_min();
    let ue = table.get("u_eff_coefficient").expect("table row");
    let printed = ue.printed.unwrap();
    let computed = ue.computed.value;
    let agree = (oracle - computed).abs() <= 1e-4;
    pass &= agree;
    lines.push(format!(
        "u_eff coefficient: printed {printed} {}, series {computed:.7}, configuration oracle {oracle:.7} (series and oracle {})",
        if (printed - oracle).abs() <= 1e-5 { "match" } else { "mismatch" },
        if agree { "agree" } else { "DISAGREE" }
    ));
    pass &= within(t, Duration::from_secs(10), &mut lines);
    Outcome { pass, detail: lines.join("\n    ") }
}

fn unit_disk_correspondence() -> Outcome {
    let t = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    let mut checked = 0;
    for k in [2u32, 3, 8] {
        for (name, g) in named::corpus().into_iter().filter(|(_, g)| g.graph().vertex_count() <= 8) {
            let l = layout(&g, k, 1);
            let r = check_mis_correspondence(g.graph(), &l.unit_disk_graph(), &l.k_uv(), &MisOptions::with_budget(100_000)).expect("mis within budget");
            checked += 1;
            if !r.holds {
                pass = false;
                lines.push(format!("k={k} {name}: {} != {} + {}", r.mis_unit_disk, r.mis_original, r.ancilla_pairs));
            }
        }
    }
    lines.push(format!("{checked} graph/k pairs, all |MIS(UD)| = |MIS(G)| + sum k_uv: {pass}"));
    pass &= within(t, Duration::from_secs(300), &mut lines);
    Outcome { pass, detail: lines.join("\n    ") }
}

fn toy_model() -> Outcome {
    let t = Instant::now();
    let inst = toy_instance();
    let p = ToyParams::default();
    let a = mis_exact(&inst.graph, &MisOptions::default()).expect("small graph").size;
    let n = inst.points.len();
    let is_mis = |c: &[bool]| {
        let set: Vec<usize> = (0..n).filter(|&i| c[i]).collect();
        inst.graph.check_independent(&set).is_ok() && set.len() == a
    };
    let solve = |d: &[f64]| {
        let m = QuadraticModel::toy(&inst.points, d, &p);
        ground_state(&m, &inst.graph, Strategy::Full, None, SampleOptions::default()).expect("exhaustive search")
    };
    let uniform = solve(&vec![p.delta; n]);
    let tuned = solve(&toy_detunings(&inst, &p));
    let (j, c) = lattice_structures(&inst);
    let mut lines = vec![
        format!("{n} atoms, {} junction, {} corners, MIS size {a}, W={} eps={}", j.len(), c.len(), p.w, p.eps),
        format!("uniform detunings: ground state {} is MIS: {}", fmt_cfg(&uniform.config), is_mis(&uniform.config)),
        format!("structure detunings: ground state {} is MIS: {}", fmt_cfg(&tuned.config), is_mis(&tuned.config)),
    ];
    let mut pass = n <= 24 && uniform.certificate.exact && tuned.certificate.exact && !is_mis(&uniform.config) && is_mis(&tuned.config);
    pass &= within(t, Duration::from_secs(60), &mut lines);
    Outcome { pass, detail: lines.join("\n    ") }
}

fn fmt_cfg(c: &[bool]) -> String {
    c.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn structure_ordering() -> Outcome {
    let t = Targets::default();
    let mut lines = Vec::new();
    let mut pass = true;
    for q in [1u64, 2] {
        let phi = smallest_feasible_phi(&t, q).expect("window opens");
        for kind in [IsolatedKind::Corner, IsolatedKind::Junction] {
            let st = isolated_structure(kind, q, &t, phi as u64);
            let m = st.model();
            let gs = ground_state(&m, &st.graph, Strategy::Full, None, SampleOptions::default()).expect("small structure");
            let (s0, s1) = (st.ordered(false), st.ordered(true));
            let ordered = gs.config == s0 || gs.config == s1;
            let diff = m.energy(&s1) - m.energy(&s0);
            let err = (diff - st.oracle_difference()).abs();
            let ok = ordered && err <= 1e-9;
            pass &= ok;
            lines.push(format!(
                "{kind:?} q={q}: {} atoms, ground state ordered: {ordered}, E1-E0 {diff:.12} vs oracle {:.12} (|err| {err:.1e})",
                st.points.len(),
                st.oracle_difference()
            ));
        }
    }
    Outcome { pass, detail: lines.join("\n    ") }
}

fn end_to_end() -> Outcome {
    let t = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, g, want) in [("K2", named::k2(), Strategy::Full), ("P3", named::path(3), Strategy::Is), ("K_{1,3}", named::star3(), Strategy::Is)] {
        match verify_instance(&g, &VerifyOptions::default()) {
            Ok((v, _)) => {
                let mis = mis_exact(g.graph(), &MisOptions::default()).expect("small graph");
                let same_size = v.decoded_witness.len() == mis.size;
                let ok = v.pass && same_size && v.certificate.strategy == want && v.certificate.exact;
                pass &= ok;
                lines.push(format!(
                    "{name}: {} atoms, phi={}, {:?} ({} nodes), witness {:?} vs oracle {:?}, E={:.9} thresholds ({:.6}, {:.6}], |E-pred|={:.1e} <= eta={:.1e}: {}",
                    v.atoms,
                    v.phi,
                    v.certificate.strategy,
                    v.certificate.visited,
                    v.decoded_witness,
                    mis.witness,
                    v.ground_energy,
                    v.threshold_a_plus_1,
                    v.threshold_a,
                    v.prediction_gap,
                    v.eta,
                    if ok { "ok" } else { "FAIL" }
                ));
            }
            Err(e) => {
                pass = false;
                lines.push(format!("{name}: error {e}"));
            }
        }
    }
    pass &= within(t, Duration::from_secs(600), &mut lines);
    Outcome { pass, detail: lines.join("\n    ") }
}

struct LargeK {
    lines: Vec<String>,
    feasible: bool,
    homogeneous: bool,
    model_ok: bool,
    decomposition_ok: bool,
    not_falsified: bool,
}

/// Substitute properties on one graph at k=16.
fn large_k_checks(name: &str, g: &PlanarGraph, samples: u64) -> LargeK {
    let t = Targets::default();
    let phi = smallest_feasible_phi(&t, 2).expect("window opens");
    let l = layout(g, 16, phi);
    let c = compile(&l, t, 1.0, true).expect("layout compiles");
    let em = &c.model;
    let m = c.instance.model();
    let ns = l.specials.len();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let assignments: Vec<Vec<bool>> = if ns <= 14 {
        (0..1u32 << ns).map(|b| (0..ns).map(|i| b >> i & 1 == 1).collect()).collect()
    } else {
        (0..4096).map(|_| (0..ns).map(|_| rng.gen()).collect()).collect()
    };
    let mut worst_model = 0.0f64;
    let mut worst_regions = 0.0f64;
    let mut worst_bb = 0.0f64;
    let b_sets: Vec<Vec<usize>> = (0..l.links.len()).map(|i| l.region_b(i)).collect();
    for s in &assignments {
        let cfg = l.pseudo_config(s, WallPolicy::Centered);
        let e = m.energy(&cfg);
        worst_model = worst_model.max((e - em.energy(s)).abs());
        let r = region_energies(&l, &m, &cfg);
        worst_regions = worst_regions.max((r.total - r.decomposition).abs());
        let mut bb = 0.0;
        for i in 0..b_sets.len() {
            for j in i + 1..b_sets.len() {
                bb += m.cross_energy(&cfg, &b_sets[i], &b_sets[j]);
            }
        }
        worst_bb = worst_bb.max(bb);
    }
    let mis = mis_exact(g.graph(), &MisOptions::default()).expect("small graph");
    let hint = l.encode_reference_config(&mis.witness, WallPolicy::Centered).expect("reference config");
    let ud = l.unit_disk_graph();
    let sample = ground_state(&m, &ud, Strategy::Sample, Some(&hint), SampleOptions { samples, seed: 16 }).expect("sampling runs");
    let predicted = em.predicted_energy(mis.size);
    let falsified = sample.energy < predicted - em.eta;
    let mut census: Vec<String> = l.census().into_iter().map(|(k, n)| format!("{n} {k}")).collect();
    census.sort();
    LargeK {
        lines: vec![
            format!("{name} at k=16, phi={phi}: {} atoms, specials {}, windows feasible: {}", l.len(), census.join(", "), c.report.feasible()),
            format!("  Delta_eff spread {:.1e} (limit 1e-9)", em.delta_eff_spread()),
            format!("  {} pseudo-spin assignments: max |E - effective model| {worst_model:.2e}, max |E - region decomposition| {worst_regions:.2e}, eta {:.2e}", assignments.len(), em.eta),
            format!("  largest interaction between distinct segments {worst_bb:.2e} (not part of the decomposition)"),
            format!("  {} samples: lowest {:.9} vs predicted {:.9}, below prediction by more than eta: {falsified}", sample.certificate.visited, sample.energy, predicted),
        ],
        feasible: c.report.feasible(),
        homogeneous: em.delta_eff_spread() <= 1e-9,
        model_ok: worst_model <= em.eta,
        decomposition_ok: worst_regions <= em.eta,
        not_falsified: !falsified,
    }
}

fn large_k_properties() -> Outcome {
    let mut lines = vec!["asymptotic-k fidelity (k of 40 and more, hundreds of atoms) is beyond exact solution; checking substitute properties".to_string()];
    let star = large_k_checks("K_{1,3}", &named::star3(), 1_000_000);
    lines.extend(star.lines.iter().cloned());
    let pass = star.feasible && star.homogeneous && star.model_ok && star.decomposition_ok && star.not_falsified;
    if !star.decomposition_ok {
        lines.push("  decomposition identity exceeds eta: segments meeting at the junction interact across its legs, a term outside |V| E_dist(k)".into());
        let p3 = large_k_checks("P3 (context, no junction)", &named::path(3), 100_000);
        lines.extend(p3.lines);
    }
    Outcome { pass, detail: lines.join("\n    ") }
}

/// Every subgraph of a w×h grid with degree at most 3.
fn grid_subgraphs(w: usize, h: usize) -> Vec<PlanarGraph> {
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
    let mut out = Vec::new();
    for mask in 0u32..1 << cand.len() {
        let edges: Vec<_> = (0..cand.len()).filter(|&i| mask >> i & 1 == 1).map(|i| cand[i]).collect();
        if let Ok(g) = PlanarGraph::from_edges(w * h, &edges) {
            out.push(g);
        }
    }
    out
}

fn property_sweeps() -> Outcome {
    let mut lines = Vec::new();
    let graphs = grid_subgraphs(2, 3);

    let mut parity_ok = true;
    let mut parity_cases = 0;
    for (i, g) in graphs.iter().enumerate().step_by(5) {
        for (k, phi) in [(2u32, 1u32), (3, 1), (5, 2), (8, 1)] {
            let l = layout(g, k, phi);
            parity_cases += 1;
            let spaced = (0..l.len()).all(|a| (a + 1..l.len()).all(|b| l.dist2(a, b) >= One::one()));
            let even = l.edges.iter().all(|e| e.ancillas() % 2 == 0);
            if !(spaced && even) {
                parity_ok = false;
                lines.push(format!("graph {i} k={k} phi={phi}: spacing {spaced}, even chains {even}"));
            }
        }
    }
    lines.push(format!("layout parity/spacing: {parity_cases} cases, {}", if parity_ok { "ok" } else { "FAIL" }));

    let mut tele_ok = true;
    for q in 1..=6u64 {
        let leg = leg_detunings_corner(q);
        for p in 1..=q {
            let i = 2 * p as usize - 2;
            tele_ok &= (leg[i] - leg[i + 1] - series::f0(p, 1e-14).value).abs() < 1e-12;
            if p < q {
                tele_ok &= (leg[i + 1] - leg[i + 2] - series::f1(p, 1e-14).value).abs() < 1e-12;
            }
        }
        let [x, y, z] = leg_detunings_junction(q);
        tele_ok &= x == z && x.iter().zip(&y).all(|(a, b)| (2.0 * a - b).abs() < 1e-15);
    }
    lines.push(format!("telescoping identities q=1..6: {}", if tele_ok { "ok" } else { "FAIL" }));

    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut oracle_ok = true;
    for _ in 0..200 {
        let n = rng.gen_range(0..=20);
        let p: f64 = rng.gen_range(0.05..0.6);
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::from_edges(n, &edges).expect("simple graph");
        let a = mis_exact(&g, &MisOptions::default()).expect("within budget");
        let b = mis_exhaustive(&g).expect("n <= 20");
        oracle_ok &= a.size == b.size && g.check_independent(&a.witness).is_ok() && a.witness.len() == a.size;
    }
    lines.push(format!("MIS oracle equivalence, 200 seeded graphs up to 20 vertices: {}", if oracle_ok { "ok" } else { "FAIL" }));

    let mut draw_ok = true;
    for g in &graphs {
        let d = grid_embed(g).expect("grid subgraphs embed");
        let text = d.to_json();
        let valid = validate_drawing(&d, g.graph()).is_valid();
        let round = GridDrawing::from_json(&text).map(|x| x == d).unwrap_or(false);
        let ingest = ingest_drawing(&text).map(|(x, h, _)| x == d && h.graph().edges() == g.graph().edges()).unwrap_or(false);
        draw_ok &= valid && round && ingest;
    }
    lines.push(format!("drawing validator round trips on {} grid subgraphs: {}", graphs.len(), if draw_ok { "ok" } else { "FAIL" }));
    lines.push("randomized versions of these suites: tests/properties.rs".into());
    Outcome { pass: parity_ok && tele_ok && oracle_ok && draw_ok, detail: lines.join("\n    ") }
}

/// The mixed-structures drawing at k=7, φ=1: four corners, three junctions,
/// one open end and six straight or irregular specials.
fn mixed_structures_census() -> Outcome {
    let pts = vec![(0, 0), (1, 0), (0, 1), (-1, 0), (1, 1), (2, 1)];
    let e = |u, v, path: Vec<(i64, i64)>| EdgePath { u, v, path };
    let d = GridDrawing::new(
        pts,
        vec![
            e(0, 1, vec![(0, 0), (1, 0)]),
            e(0, 2, vec![(0, 0), (0, 1)]),
            e(0, 3, vec![(0, 0), (-1, 0)]),
            e(1, 4, vec![(1, 0), (1, 1)]),
            e(2, 4, vec![(0, 1), (1, 1)]),
            e(1, 5, vec![(1, 0), (2, 0), (2, 1)]),
            e(2, 5, vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (2, 2), (2, 1)]),
        ],
    );
    let (d, g, _) = ingest_drawing(&d.to_json()).expect("drawing is valid");
    let l = arrange_atoms(&d, &g, LayoutParams::new(7, 1).expect("valid")).expect("layout builds");
    let census = l.census();
    let get = |k| census.get(&k).copied().unwrap_or(0);
    let (c, j, o, s, i) = (get(SpecialKind::Corner), get(SpecialKind::Junction), get(SpecialKind::OpenEnd), get(SpecialKind::Straight), get(SpecialKind::Irregular));
    Outcome {
        pass: c == 4 && j == 3 && o == 1 && s + i == 6,
        detail: format!("corners {c}, junctions {j}, open ends {o}, straight {s} + irregular {i}"),
    }
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 constants suite", constants_suite),
        ("2 unit-disk MIS correspondence", unit_disk_correspondence),
        ("3 finite-range toy instance", toy_model),
        ("4 isolated structure ordering", structure_ordering),
        ("5 end-to-end verification", end_to_end),
        ("6 k=16 substitute properties", large_k_properties),
        ("7 headless property sweeps", property_sweeps),
    ];
    let mut all = true;
    for (name, f) in criteria {
        let t = Instant::now();
        let o = f();
        all &= o.pass;
        println!("{} criterion {name} ({:.2}s)\n    {}", if o.pass { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64(), o.detail);
    }
    let census = mixed_structures_census();
    all &= census.pass;
    println!("{} mixed-structures census: {}", if census.pass { "PASS" } else { "FAIL" }, census.detail);
    if !all {
        std::process::exit(1);
    }
}
