//! Detuning assignment and the effective pseudo-spin model.

use crate::energy::{region_energies, QuadraticModel};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{AtomLayout, LegLabel, Region, Role, SpecialKind, WallPolicy};
use crate::series::{self, DEFAULT_TOL};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Target values in units of C/d⁶.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Targets {
    pub delta_eff: f64,
    pub delta_b: f64,
    pub delta_inf: f64,
}

impl Default for Targets {
    fn default() -> Self {
        Targets { delta_eff: 0.2, delta_b: 0.52, delta_inf: 0.53 }
    }
}

/// Detuning increments above Δ∞ along a corner leg, x = 1..=2q.
/// Δ_{2p−1} − Δ_{2p} = F0(p) and Δ_{2p} − Δ_{2p+1} = F1(p).
pub fn leg_detunings_corner(q: u64) -> Vec<f64> {
    series::leg_profile(q, DEFAULT_TOL)
}

/// Increments for junction legs (X, Y, Z): Y doubles the corner profile, Z equals X.
pub fn leg_detunings_junction(q: u64) -> [Vec<f64>; 3] {
    let x = leg_detunings_corner(q);
    let y = x.iter().map(|v| 2.0 * v).collect();
    [x.clone(), y, x]
}

/// Special-vertex detunings per kind before the exact per-atom correction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialDetunings {
    pub corner: f64,
    pub junction: f64,
    pub open_end: f64,
    pub straight: f64,
    pub irregular: f64,
    pub isolated: f64,
}

impl SpecialDetunings {
    pub fn of(&self, kind: SpecialKind) -> f64 {
        match kind {
            SpecialKind::Corner => self.corner,
            SpecialKind::Junction => self.junction,
            SpecialKind::OpenEnd => self.open_end,
            SpecialKind::Straight => self.straight,
            SpecialKind::Irregular => self.irregular,
            SpecialKind::Isolated => self.isolated,
        }
    }
}

/// Finite-q structure differences plus one B-segment correction per leg.
pub fn special_vertex_detunings(delta_eff: f64, q: u64, phi: u64) -> SpecialDetunings {
    let b = series::b_segment(DEFAULT_TOL).value;
    let f0q = series::sum_f0_partial(q, DEFAULT_TOL).value;
    SpecialDetunings {
        corner: delta_eff + 2.0 * f0q - series::corner_interaction_finite(q) + 2.0 * b,
        junction: delta_eff + 4.0 * f0q - series::junction_interaction_finite(q) + 3.0 * b,
        open_end: delta_eff + series::open_end_finite(q) + b,
        straight: delta_eff + series::straight_finite(q) + 2.0 * b,
        irregular: delta_eff + series::irregular_finite(q, phi) + 2.0 * b,
        isolated: delta_eff,
    }
}

/// Largest detuning allowed by the irregular spacing D: C/D⁶.
pub fn delta_max(phi: u32, c: f64) -> f64 {
    let d = 1.0 + 1.0 / (4.0 * phi as f64);
    c / d.powi(6)
}

pub fn delta_min() -> f64 {
    series::domain_wall_merge_bound(DEFAULT_TOL).value
}

/// Smallest φ for which the largest junction leg detuning and the junction
/// special detuning sit below C/D⁶.
pub fn smallest_feasible_phi(t: &Targets, q: u64) -> Option<u32> {
    let leg_max = t.delta_inf + 2.0 * leg_detunings_corner(q.max(1)).first().copied().unwrap_or(0.0);
    (1..=64).find(|&phi| {
        let s = special_vertex_detunings(t.delta_eff, q.max(1), phi as u64);
        let top = leg_max.max(s.junction).max(s.corner);
        top < delta_max(phi, 1.0)
    })
}

/// Estimated atom count for |𝒱| vertices at degree 3 with unit-length edges.
pub fn estimated_atoms(vertices: usize, k: u64) -> f64 {
    vertices as f64 * (1.0 + 3.0 * k as f64)
}

/// Smallest k ≥ 8 with N(k)·E_dist(k) ≤ Δeff/(2·safety).
pub fn recommend_k(vertices: usize, delta_eff: f64, safety: f64) -> u64 {
    let budget = delta_eff / (2.0 * safety);
    (8..).find(|&k| estimated_atoms(vertices, k) * series::e_dist_closed(k) <= budget).expect("E_dist decays")
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetunedInstance {
    pub layout: AtomLayout,
    pub c: f64,
    pub detunings: Vec<f64>,
    pub targets: Targets,
}

impl DetunedInstance {
    pub fn model(&self) -> QuadraticModel {
        QuadraticModel::rydberg(&self.layout, &self.detunings, self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectiveModel {
    /// Pseudo-spin links (special indices).
    pub links: Vec<(usize, usize)>,
    pub delta_eff: Vec<f64>,
    pub u_eff: Vec<f64>,
    pub xi: f64,
    /// ξ with every domain wall moved by one atom.
    pub xi_shifted: f64,
    pub eta: f64,
    pub kappa: Vec<usize>,
    pub sum_kappa: usize,
    /// Same quantities by the region decomposition.
    pub region_delta_eff: Vec<f64>,
    pub region_u_eff: Vec<f64>,
}

impl EffectiveModel {
    pub fn graph(&self, specials: usize) -> Graph {
        Graph::from_edges(specials, &self.links).expect("links are simple")
    }

    pub fn delta_eff_mean(&self) -> f64 {
        if self.delta_eff.is_empty() {
            return 0.0;
        }
        self.delta_eff.iter().sum::<f64>() / self.delta_eff.len() as f64
    }

    pub fn delta_eff_spread(&self) -> f64 {
        let max = self.delta_eff.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = self.delta_eff.iter().copied().fold(f64::INFINITY, f64::min);
        if self.delta_eff.is_empty() { 0.0 } else { max - min }
    }

    pub fn u_eff_min(&self) -> f64 {
        self.u_eff.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// a′ = a + Σκ.
    pub fn a_prime(&self, a: usize) -> usize {
        a + self.sum_kappa
    }

    /// −(a′ − ½)Δeff + ξ.
    pub fn threshold(&self, a: usize) -> f64 {
        -(self.a_prime(a) as f64 - 0.5) * self.delta_eff_mean() + self.xi
    }

    /// ξ − a′Δeff.
    pub fn predicted_energy(&self, a: usize) -> f64 {
        self.xi - self.a_prime(a) as f64 * self.delta_eff_mean()
    }

    /// Pseudo-spin energy ξ − Σ Δeff_i s_i + Σ U_ij s_i s_j.
    pub fn energy(&self, s: &[bool]) -> f64 {
        let lin: f64 = self.delta_eff.iter().zip(s).filter(|(_, &b)| b).map(|(d, _)| d).sum();
        let pair: f64 = self.links.iter().zip(&self.u_eff).filter(|(&(a, b), _)| s[a] && s[b]).map(|(_, u)| u).sum();
        self.xi - lin + pair
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowCheck {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub holds: bool,
    pub remedy: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub checks: Vec<WindowCheck>,
    pub delta_min: f64,
    pub delta_max: f64,
    pub maximality_bound: f64,
    pub e_dist: f64,
    /// 2φ < 2q ≤ k/4; reported, not enforced.
    pub footnote_constraint: bool,
    /// Largest |kind-table start − corrected| special detuning.
    pub correction_max: f64,
    /// Largest |region route − full route| effective detuning.
    pub region_route_gap: f64,
}

impl FeasibilityReport {
    pub fn feasible(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&WindowCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Compiled {
    pub instance: DetunedInstance,
    pub model: EffectiveModel,
    pub report: FeasibilityReport,
}

fn check(name: &str, value: f64, limit: f64, holds: bool, remedy: &str) -> WindowCheck {
    WindowCheck { name: name.into(), value, limit, holds, remedy: remedy.into() }
}

/// Assigns detunings, computes the effective model and audits every window.
/// Fails with the first violated window unless `allow_infeasible` is set.
pub fn compile(layout: &AtomLayout, t: Targets, c: f64, allow_infeasible: bool) -> Result<Compiled> {
    build(layout, t, c, None, allow_infeasible)
}

/// Effective model and window audit for given detunings, without correction.
pub fn evaluate(layout: &AtomLayout, t: Targets, c: f64, detunings: &[f64]) -> Result<Compiled> {
    if detunings.len() != layout.len() {
        return Err(Error::LayoutCorruption(format!("{} detunings for {} atoms", detunings.len(), layout.len())));
    }
    build(layout, t, c, Some(detunings), true)
}

fn build(layout: &AtomLayout, t: Targets, c: f64, fixed: Option<&[f64]>, allow_infeasible: bool) -> Result<Compiled> {
    let q = layout.params.q() as u64;
    if q < 1 {
        return Err(Error::ParameterWindow(format!("compilation needs k ≥ 8 (q ≥ 1), got k = {}", layout.params.k)));
    }
    if !layout.regions_valid() {
        return Err(Error::ParameterWindow(format!("layout regions unusable: {}", layout.region_problems.join("; "))));
    }
    let phi = layout.params.phi as u64;
    let n = layout.len();
    let corner_leg = leg_detunings_corner(q);
    let kinds = special_vertex_detunings(t.delta_eff, q, phi);
    let mut det = vec![t.delta_b; n];
    for (i, slot) in layout.leg_slot.iter().enumerate() {
        let Some(s) = slot else { continue };
        det[i] = match (layout.specials[s.special].kind, s.label) {
            (SpecialKind::Corner, _) | (SpecialKind::Junction, LegLabel::X | LegLabel::Z) => t.delta_inf + c * corner_leg[s.x - 1],
            (SpecialKind::Junction, _) => t.delta_inf + 2.0 * c * corner_leg[s.x - 1],
            _ => t.delta_b,
        };
    }
    for s in &layout.specials {
        det[s.atom] = c * (kinds.of(s.kind) - t.delta_eff) + t.delta_eff;
    }
    let start: Vec<f64> = layout.specials.iter().map(|s| det[s.atom]).collect();

    let ns = layout.specials.len();
    let zeros = vec![false; ns];
    let unit = |i: usize| {
        let mut s = zeros.clone();
        s[i] = true;
        s
    };
    let cfg0 = layout.pseudo_config(&zeros, WallPolicy::Centered);
    let cfg_i: Vec<Vec<bool>> = (0..ns).map(|i| layout.pseudo_config(&unit(i), WallPolicy::Centered)).collect();

    if let Some(f) = fixed {
        det = f.to_vec();
    } else {
        // Δeff_i is linear in Δ_i with unit slope, so one correction is exact
        let m = QuadraticModel::rydberg(layout, &det, c);
        let e0 = m.energy(&cfg0);
        for (i, s) in layout.specials.iter().enumerate() {
            let deff = e0 - m.energy(&cfg_i[i]);
            det[s.atom] += t.delta_eff - deff;
        }
    }
    let m = QuadraticModel::rydberg(layout, &det, c);
    let e0 = m.energy(&cfg0);
    let e_i: Vec<f64> = cfg_i.iter().map(|x| m.energy(x)).collect();
    let delta_eff: Vec<f64> = e_i.iter().map(|e| e0 - e).collect();
    let links: Vec<(usize, usize)> = layout.links.iter().map(|l| (l.a.min(l.b), l.a.max(l.b))).collect();
    let u_eff: Vec<f64> = links
        .iter()
        .map(|&(a, b)| {
            let mut s = zeros.clone();
            s[a] = true;
            s[b] = true;
            m.energy(&layout.pseudo_config(&s, WallPolicy::Centered)) - e_i[a] - e_i[b] + e0
        })
        .collect();
    let xi_shifted = m.energy(&layout.pseudo_config(&zeros, WallPolicy::Shifted(1)));

    // region route
    let r0 = region_energies(layout, &m, &cfg0);
    let region_delta_eff: Vec<f64> = (0..ns)
        .map(|i| {
            let ri = region_energies(layout, &m, &cfg_i[i]);
            let mut v = r0.a[i] - ri.a[i];
            for (li, l) in layout.links.iter().enumerate() {
                if l.a == i || l.b == i {
                    v -= ri.b[li] - r0.b[li];
                }
            }
            v
        })
        .collect();
    let region_u_eff: Vec<f64> = layout
        .links
        .iter()
        .enumerate()
        .map(|(li, l)| {
            let mut s = zeros.clone();
            s[l.a] = true;
            s[l.b] = true;
            let r11 = region_energies(layout, &m, &layout.pseudo_config(&s, WallPolicy::Centered));
            let r10 = region_energies(layout, &m, &cfg_i[l.a]);
            let r01 = region_energies(layout, &m, &cfg_i[l.b]);
            r11.b[li] - r10.b[li] - r01.b[li] + r0.b[li]
        })
        .collect();

    let kappa = layout.kappa();
    let e_dist = series::e_dist_closed(layout.params.k as u64);
    let model = EffectiveModel {
        links,
        delta_eff,
        u_eff,
        xi: e0,
        xi_shifted,
        eta: n as f64 * e_dist * c,
        sum_kappa: kappa.iter().sum(),
        kappa,
        region_delta_eff,
        region_u_eff,
    };

    // windows
    let dmin = delta_min() * c;
    let dmax = delta_max(layout.params.phi, c);
    let maxb = series::maximality_bound(DEFAULT_TOL).value * c;
    let has_junction = layout.specials.iter().any(|s| s.kind == SpecialKind::Junction);
    let mut checks = vec![
        check("delta_b > delta_min", t.delta_b, dmin, t.delta_b > dmin, "raise delta_b"),
        if has_junction {
            check("delta_inf > delta_b", t.delta_inf, t.delta_b, t.delta_inf > t.delta_b, "raise delta_inf")
        } else {
            check("delta_inf >= delta_b", t.delta_inf, t.delta_b, t.delta_inf >= t.delta_b, "raise delta_inf")
        },
    ];
    let chain_atoms = (0..n).filter(|&i| !layout.atoms[i].role.is_special());
    let (low_atom, low) = chain_atoms.map(|i| (i, det[i])).min_by(|a, b| a.1.total_cmp(&b.1)).unwrap_or((0, f64::INFINITY));
    checks.push(check(&format!("segment and leg detunings >= delta_min (atom {low_atom})"), low, dmin, low >= dmin, "raise delta_b"));
    let (high_atom, high) = (0..n).map(|i| (i, det[i])).max_by(|a, b| a.1.total_cmp(&b.1)).unwrap_or((0, 0.0));
    checks.push(check(&format!("detunings < C/D^6 (atom {high_atom})"), high, dmax, high < dmax, "larger phi, or lower delta_inf"));
    let ud = layout.unit_disk_graph();
    let mut worst = (0usize, f64::INFINITY, 0.0);
    for (v, &dv) in det.iter().enumerate() {
        let nb = ud.neighbors(v);
        let local: f64 = (0..n).filter(|&w| w != v && !nb.contains(&w)).map(|w| m.v(v, w)).sum();
        let limit = local.min(maxb + e_dist * c);
        if dv - limit < worst.1 {
            worst = (v, dv - limit, limit);
        }
    }
    checks.push(check(&format!("maximality (atom {})", worst.0), det[worst.0], worst.2, worst.1 >= 0.0, "raise delta_eff"));
    let mean = model.delta_eff_mean();
    checks.push(check("delta_eff > 0", mean, 0.0, mean > 0.0, "raise delta_eff"));
    let umin = model.u_eff_min();
    if !model.u_eff.is_empty() {
        checks.push(check("delta_eff < u_eff", mean, umin, mean < umin, "lower delta_eff or raise delta_b"));
    }
    checks.push(check("eta < delta_eff/2", model.eta, mean / 2.0, model.eta < mean / 2.0, "larger k"));
    let spread = model.delta_eff_spread();
    checks.push(check("delta_eff homogeneity", spread, 1e-9 * c, spread <= 1e-9 * c, "internal: correction failed"));
    let xi_gap = (model.xi - model.xi_shifted).abs();
    checks.push(check("xi independent of wall position", xi_gap, model.eta, xi_gap <= model.eta, "larger k"));

    let correction_max = layout
        .specials
        .iter()
        .enumerate()
        .map(|(i, s)| (det[s.atom] - start[i]).abs())
        .fold(0.0, f64::max);
    let region_route_gap = model
        .delta_eff
        .iter()
        .zip(&model.region_delta_eff)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let report = FeasibilityReport {
        checks,
        delta_min: dmin,
        delta_max: dmax,
        maximality_bound: maxb,
        e_dist,
        footnote_constraint: layout.params.footnote_constraint_holds(),
        correction_max,
        region_route_gap,
    };
    if !allow_infeasible {
        if let Some(f) = report.first_failure() {
            return Err(Error::Infeasible {
                binding: format!("{}: value {:.9} vs limit {:.9}", f.name, f.value, f.limit),
                remedy: f.remedy.clone(),
            });
        }
    }
    Ok(Compiled { instance: DetunedInstance { layout: layout.clone(), c, detunings: det, targets: t }, model, report })
}

#[derive(Serialize, Deserialize)]
struct InstanceAtom {
    x: String,
    y: String,
    detuning: f64,
    role: Role,
    region: String,
}

#[derive(Serialize, Deserialize)]
struct EffectiveFile {
    delta_eff: f64,
    u_eff: f64,
    xi: f64,
    eta: f64,
    kappa: Vec<usize>,
    delta_eff_per_special: Vec<f64>,
    u_eff_per_link: Vec<f64>,
    xi_shifted: f64,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    #[serde(rename = "C")]
    c: f64,
    atoms: Vec<InstanceAtom>,
    effective: EffectiveFile,
    params: InstanceParams,
    layout: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct InstanceParams {
    k: u32,
    phi: u32,
    q: u32,
    delta_b: f64,
    delta_inf: f64,
    delta_eff_target: f64,
}

impl Compiled {
    pub fn to_json(&self) -> String {
        let inst = &self.instance;
        let l = &inst.layout;
        let f = InstanceFile {
            c: inst.c,
            atoms: l
                .atoms
                .iter()
                .enumerate()
                .map(|(i, a)| InstanceAtom {
                    x: a.x.to_string(),
                    y: a.y.to_string(),
                    detuning: inst.detunings[i],
                    role: a.role,
                    region: l.region_of[i].to_string(),
                })
                .collect(),
            effective: EffectiveFile {
                delta_eff: self.model.delta_eff_mean(),
                u_eff: self.model.u_eff_min(),
                xi: self.model.xi,
                eta: self.model.eta,
                kappa: self.model.kappa.clone(),
                delta_eff_per_special: self.model.delta_eff.clone(),
                u_eff_per_link: self.model.u_eff.clone(),
                xi_shifted: self.model.xi_shifted,
            },
            params: InstanceParams {
                k: l.params.k,
                phi: l.params.phi,
                q: l.params.q(),
                delta_b: inst.targets.delta_b,
                delta_inf: inst.targets.delta_inf,
                delta_eff_target: inst.targets.delta_eff,
            },
            layout: l.to_value(),
        };
        serde_json::to_string(&f).expect("instance serializes")
    }

    /// Reads an instance and recomputes its effective model from the stored detunings.
    pub fn from_json(text: &str) -> Result<Compiled> {
        let f: InstanceFile = serde_json::from_str(text)?;
        let layout = AtomLayout::from_value(f.layout)?;
        if f.atoms.len() != layout.len() {
            return Err(Error::LayoutCorruption(format!("{} detuned atoms for a layout of {}", f.atoms.len(), layout.len())));
        }
        let t = Targets { delta_eff: f.params.delta_eff_target, delta_b: f.params.delta_b, delta_inf: f.params.delta_inf };
        let stored: Vec<f64> = f.atoms.iter().map(|a| a.detuning).collect();
        evaluate(&layout, t, f.c, &stored)
    }
}

/// Region sizes for reporting: (|A_i| per special, |B| per link).
pub fn region_sizes(layout: &AtomLayout) -> (Vec<usize>, Vec<usize>) {
    let mut a = vec![0; layout.specials.len()];
    let mut b = vec![0; layout.links.len()];
    for r in &layout.region_of {
        match *r {
            Region::A(i) => a[i] += 1,
            Region::B(i) => b[i] += 1,
        }
    }
    (a, b)
}

/// Exact squared distance helper for window audits in f64.
pub fn min_spacing(layout: &AtomLayout) -> f64 {
    layout
        .edges
        .iter()
        .flat_map(|e| e.chain.windows(2).map(|w| layout.dist2(w[0], w[1])))
        .min()
        .map_or(1.0, |d| d.to_f64().expect("finite").sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::grid_embed;
    use crate::graph::named;
    use crate::layout::{arrange_atoms, LayoutParams};

    fn k2_layout(k: u32, phi: u32) -> AtomLayout {
        let g = named::k2();
        arrange_atoms(&grid_embed(&g).unwrap(), &g, LayoutParams::new(k, phi).unwrap()).unwrap()
    }

    #[test]
    fn telescoping_profile() {
        let leg = leg_detunings_corner(3);
        for p in 1..=3u64 {
            let i = 2 * p as usize - 2;
            assert!((leg[i] - leg[i + 1] - series::f0(p, 1e-13).value).abs() < 1e-12);
        }
        let [x, y, z] = leg_detunings_junction(2);
        assert_eq!(x, z);
        assert!(x.iter().zip(&y).all(|(a, b)| (2.0 * a - b).abs() < 1e-15));
    }

    #[test]
    fn single_edge_compiles() {
        let c = compile(&k2_layout(8, 8), Targets::default(), 1.0, false).unwrap();
        assert!(c.report.feasible());
        assert!(c.model.delta_eff_spread() < 1e-12);
        assert_eq!(c.model.sum_kappa, 0);
        let back = Compiled::from_json(&c.to_json()).unwrap();
        assert_eq!(back.instance.detunings, c.instance.detunings);
    }

    #[test]
    fn phi_one_is_infeasible() {
        let r = compile(&k2_layout(8, 1), Targets::default(), 1.0, false);
        assert!(matches!(r, Err(Error::Infeasible { .. })), "{r:?}");
        assert!(delta_max(1, 1.0) < delta_min());
    }

    #[test]
    fn threshold_steps() {
        let c = compile(&k2_layout(8, 8), Targets::default(), 1.0, false).unwrap();
        let m = &c.model;
        assert!((m.threshold(1) - m.threshold(0) + m.delta_eff_mean()).abs() < 1e-12);
        assert!((m.threshold(0) - (m.xi + m.delta_eff_mean() / 2.0)).abs() < 1e-12);
    }
}
