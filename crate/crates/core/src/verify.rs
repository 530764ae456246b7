//! End-to-end check: embed, arrange, compile, solve exactly, decode, compare.

use crate::compile::{compile, smallest_feasible_phi, Compiled, FeasibilityReport, Targets};
use crate::embed::{grid_embed, GridDrawing};
use crate::energy::{decode, ground_state, Certificate, Diagnostic, SampleOptions, Strategy};
use crate::error::{Error, Result};
use crate::graph::{mis_exact, MisOptions, PlanarGraph, RawGraph};
use crate::layout::{arrange_atoms, LayoutParams, WallPolicy};
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub k: u32,
    /// None picks the smallest φ with open windows.
    pub phi: Option<u32>,
    pub targets: Targets,
    pub c: f64,
    pub strategy: Strategy,
    pub sample: SampleOptions,
    pub mis: MisOptions,
    /// Use this drawing instead of computing one.
    pub drawing: Option<GridDrawing>,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            k: 8,
            phi: None,
            targets: Targets::default(),
            c: 1.0,
            strategy: Strategy::Auto,
            sample: SampleOptions::default(),
            mis: MisOptions::default(),
            drawing: None,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub graph: RawGraph,
    pub k: u32,
    pub phi: u32,
    pub atoms: usize,
    pub specials: usize,
    pub sum_kappa: usize,
    pub mis_size: usize,
    pub mis_witness: Vec<usize>,
    pub decoded_witness: Vec<usize>,
    /// Decoded witness is independent in the input graph and of maximum size.
    pub witness_ok: bool,
    pub ground_energy: f64,
    pub ground_config: String,
    pub threshold_a: f64,
    pub threshold_a_plus_1: f64,
    /// E ≤ threshold(a) and E > threshold(a+1).
    pub threshold_ok: bool,
    pub predicted_energy: f64,
    pub prediction_gap: f64,
    pub eta: f64,
    pub prediction_ok: bool,
    pub delta_eff: f64,
    pub xi: f64,
    pub certificate: Certificate,
    pub diagnostics: Vec<Diagnostic>,
    pub feasibility: FeasibilityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage_seconds: Option<Vec<(String, f64)>>,
}

struct Clock {
    on: bool,
    t: Instant,
    out: Vec<(String, f64)>,
}

impl Clock {
    fn lap(&mut self, stage: &str) {
        if self.on {
            self.out.push((stage.to_string(), self.t.elapsed().as_secs_f64()));
            self.t = Instant::now();
        }
    }
}

/// Runs the whole pipeline and compares the decoded ground state with the exact MIS.
pub fn verify_instance(g: &PlanarGraph, opts: &VerifyOptions) -> Result<(Verdict, Compiled)> {
    let mut clock = Clock { on: opts.timings, t: Instant::now(), out: Vec::new() };
    let drawing = match &opts.drawing {
        Some(d) => d.clone(),
        None => grid_embed(g).map_err(|e| e.at_stage("embed"))?,
    };
    clock.lap("embed");
    let q = (opts.k / 8) as u64;
    let phi = match opts.phi {
        Some(p) => p,
        None => smallest_feasible_phi(&opts.targets, q)
            .ok_or_else(|| Error::Infeasible { binding: "no phi ≤ 64 opens the window".into(), remedy: "lower delta_inf".into() }.at_stage("compile"))?,
    };
    let params = LayoutParams::new(opts.k, phi).map_err(|e| e.at_stage("arrange"))?;
    let layout = arrange_atoms(&drawing, g, params).map_err(|e| e.at_stage("arrange"))?;
    clock.lap("arrange");
    let compiled = compile(&layout, opts.targets, opts.c, false).map_err(|e| e.at_stage("compile"))?;
    clock.lap("compile");

    let mis = mis_exact(g.graph(), &opts.mis).map_err(|e| e.at_stage("mis"))?;
    let reference = layout.encode_reference_config(&mis.witness, WallPolicy::Centered).map_err(|e| e.at_stage("solve"))?;
    let m = compiled.instance.model();
    let ud = layout.unit_disk_graph();
    let gs = ground_state(&m, &ud, opts.strategy, Some(&reference), opts.sample).map_err(|e| e.at_stage("solve"))?;
    clock.lap("solve");
    let dec = decode(&gs.config, &layout);
    clock.lap("decode");

    let a = mis.size;
    let model = &compiled.model;
    let independent = g.graph().check_independent(&dec.witness).is_ok();
    let witness_ok = independent && dec.witness.len() == a;
    let threshold_a = model.threshold(a);
    let threshold_a_plus_1 = model.threshold(a + 1);
    let threshold_ok = gs.energy <= threshold_a && gs.energy > threshold_a_plus_1;
    let predicted_energy = model.predicted_energy(a);
    let prediction_gap = (gs.energy - predicted_energy).abs();
    let prediction_ok = prediction_gap <= model.eta;
    let pass = witness_ok && threshold_ok && prediction_ok && gs.certificate.exact;
    let verdict = Verdict {
        pass,
        graph: g.graph().to_raw(),
        k: opts.k,
        phi,
        atoms: layout.len(),
        specials: layout.specials.len(),
        sum_kappa: model.sum_kappa,
        mis_size: a,
        mis_witness: mis.witness,
        decoded_witness: dec.witness,
        witness_ok,
        ground_energy: gs.energy,
        ground_config: crate::energy::SpinConfig(gs.config.clone()).to_string(),
        threshold_a,
        threshold_a_plus_1,
        threshold_ok,
        predicted_energy,
        prediction_gap,
        eta: model.eta,
        prediction_ok,
        delta_eff: model.delta_eff_mean(),
        xi: model.xi,
        certificate: gs.certificate,
        diagnostics: dec.diagnostics,
        feasibility: compiled.report.clone(),
        stage_seconds: opts.timings.then_some(clock.out),
    };
    Ok((verdict, compiled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn k2_passes() {
        let (v, _) = verify_instance(&named::k2(), &VerifyOptions::default()).unwrap();
        assert_eq!(v.atoms, 18);
        assert!(v.pass, "{v:#?}");
        assert_eq!(v.certificate.strategy, Strategy::Full);
    }
}
