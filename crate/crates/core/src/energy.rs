//! Classical energies of atom configurations and exact ground-state search.
//!
//! Every Hamiltonian handled here is quadratic in the occupation numbers:
//! E(n) = Σ_v lin_v n_v + Σ_{v<w} V_vw n_v n_w with V ≥ 0.

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};
use crate::layout::{AtomLayout, Region};
use crate::series::Compensated;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

pub const FULL_ENUMERATION_LIMIT: usize = 34;
pub const AUTO_FULL_LIMIT: usize = 20;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Occupation numbers in atom-index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinConfig(pub Vec<bool>);

impl fmt::Display for SpinConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for SpinConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse { line: 1, column: i + 1, message: format!("expected 0 or 1, found {c:?}") }),
            })
            .collect::<Result<Vec<bool>>>()
            .map(SpinConfig)
    }
}

/// Absolute tolerance used for energy comparisons: 1e-10 · N².
pub fn energy_tolerance(n: usize) -> f64 {
    1e-10 * ((n * n).max(1)) as f64
}

/// Lexicographic order of configurations read as 0/1 strings.
pub fn lex_cmp(a: &[bool], b: &[bool]) -> Ordering {
    a.iter().map(|&x| x as u8).cmp(b.iter().map(|&x| x as u8))
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticModel {
    pub lin: Vec<f64>,
    /// Dense symmetric pair matrix with zero diagonal.
    pub pair: Vec<f64>,
}

impl QuadraticModel {
    pub fn len(&self) -> usize {
        self.lin.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lin.is_empty()
    }

    #[inline]
    pub fn v(&self, a: usize, b: usize) -> f64 {
        self.pair[a * self.lin.len() + b]
    }

    fn row(&self, a: usize) -> &[f64] {
        let n = self.lin.len();
        &self.pair[a * n..(a + 1) * n]
    }

    fn from_pairs(lin: Vec<f64>, f: impl Fn(usize, usize) -> f64 + Sync) -> Self {
        let n = lin.len();
        let pair: Vec<f64> = (0..n * n)
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                if i == j { 0.0 } else { f(i.min(j), i.max(j)) }
            })
            .collect();
        QuadraticModel { lin, pair }
    }

    pub fn unit_disk(g: &Graph, delta: f64, u: f64) -> Self {
        let mut m = QuadraticModel { lin: vec![-delta; g.vertex_count()], pair: vec![0.0; g.vertex_count().pow(2)] };
        let n = g.vertex_count();
        for &(a, b) in g.edges() {
            m.pair[a * n + b] = u;
            m.pair[b * n + a] = u;
        }
        m
    }

    pub fn toy(points: &[[f64; 2]], detunings: &[f64], toy: &ToyParams) -> Self {
        let toy = *toy;
        QuadraticModel::from_pairs(detunings.iter().map(|d| -d).collect(), |i, j| {
            toy.interaction(dist(points[i], points[j]))
        })
    }

    /// C/x⁶ interactions from exact layout coordinates.
    pub fn rydberg(layout: &AtomLayout, detunings: &[f64], c: f64) -> Self {
        QuadraticModel::from_pairs(detunings.iter().map(|d| -d).collect(), |i, j| {
            let d2 = layout.dist2(i, j).to_f64().expect("finite");
            c / (d2 * d2 * d2)
        })
    }

    pub fn rydberg_points(points: &[[f64; 2]], detunings: &[f64], c: f64) -> Self {
        QuadraticModel::from_pairs(detunings.iter().map(|d| -d).collect(), |i, j| {
            let (dx, dy) = (points[i][0] - points[j][0], points[i][1] - points[j][1]);
            let d2 = dx * dx + dy * dy;
            c / (d2 * d2 * d2)
        })
    }

    pub fn energy(&self, cfg: &[bool]) -> f64 {
        assert_eq!(cfg.len(), self.len(), "configuration length");
        let on: Vec<usize> = (0..cfg.len()).filter(|&i| cfg[i]).collect();
        let mut acc = Compensated::new();
        for (a, &i) in on.iter().enumerate() {
            acc.add(self.lin[i]);
            for &j in &on[a + 1..] {
                acc.add(self.v(i, j));
            }
        }
        acc.value()
    }

    /// Energy of the atoms in `x` only.
    pub fn energy_of(&self, cfg: &[bool], x: &[usize]) -> f64 {
        let on: Vec<usize> = x.iter().copied().filter(|&i| cfg[i]).collect();
        let mut acc = Compensated::new();
        for (a, &i) in on.iter().enumerate() {
            acc.add(self.lin[i]);
            for &j in &on[a + 1..] {
                acc.add(self.v(i, j));
            }
        }
        acc.value()
    }

    /// Interaction between the excited atoms of `x` and of `y`.
    pub fn cross_energy(&self, cfg: &[bool], x: &[usize], y: &[usize]) -> f64 {
        let mut acc = Compensated::new();
        for &i in x.iter().filter(|&&i| cfg[i]) {
            for &j in y.iter().filter(|&&j| cfg[j]) {
                acc.add(self.v(i, j));
            }
        }
        acc.value()
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Σ −Δ n_v + Σ_{edges} U n_v n_w.
pub fn energy_ud(cfg: &[bool], g: &Graph, delta: f64, u: f64) -> f64 {
    let n = cfg.iter().filter(|&&b| b).count() as f64;
    let pairs = g.edges().iter().filter(|&&(a, b)| cfg[a] && cfg[b]).count() as f64;
    -delta * n + u * pairs
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToyParams {
    pub u: f64,
    pub w: f64,
    pub r: f64,
    pub big_r: f64,
    pub delta: f64,
    pub eps: f64,
}

impl Default for ToyParams {
    fn default() -> Self {
        ToyParams { u: 1.0, w: 0.2, r: 1.0, big_r: 1.5, delta: 0.5, eps: 0.05 }
    }
}

impl ToyParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.w < self.u
            && self.r < self.big_r
            && 2f64.sqrt() * self.r < self.big_r
            && self.big_r < 2.0 * self.r
            && self.eps > 0.0
            && self.delta + self.w + 3.0 * self.eps < self.u;
        if ok {
            Ok(())
        } else {
            Err(Error::ParameterWindow(format!("toy parameters out of range: {self:?}")))
        }
    }

    /// U within r, W within R, else 0 (closed disks, 1e-9 guard).
    pub fn interaction(&self, x: f64) -> f64 {
        if x <= self.r * (1.0 + 1e-9) {
            self.u
        } else if x <= self.big_r * (1.0 + 1e-9) {
            self.w
        } else {
            0.0
        }
    }
}

pub fn energy_toy(cfg: &[bool], points: &[[f64; 2]], detunings: &[f64], toy: &ToyParams) -> f64 {
    QuadraticModel::toy(points, detunings, toy).energy(cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Full enumeration when small, otherwise the restricted search.
    Auto,
    Full,
    /// Branch and bound over maximal independent sets of the blockade graph.
    Is,
    /// Plain enumeration of all independent sets.
    IsEnum,
    Sample,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "full" => Ok(Strategy::Full),
            "is" => Ok(Strategy::Is),
            "is-enum" => Ok(Strategy::IsEnum),
            "sample" => Ok(Strategy::Sample),
            _ => Err(Error::Parse { line: 0, column: 0, message: format!("unknown strategy {s:?}") }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleOptions {
    pub samples: u64,
    pub seed: u64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { samples: DEFAULT_SAMPLES, seed: DEFAULT_SEED }
    }
}

/// Why excluding configurations with adjacent excitations (and non-maximal
/// sets) cannot lose the ground state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestrictionCheck {
    /// Every atom's detuning is below its weakest blockade-edge interaction.
    pub blockade_justified: bool,
    /// Smallest value of (min blockade interaction − detuning) over atoms with neighbours.
    pub blockade_margin: f64,
    /// Atoms for which maximality is certified (detuning exceeds all possible
    /// non-neighbour interaction).
    pub maximal_atoms: usize,
    pub atoms: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub strategy: Strategy,
    /// True when the minimum is certified over the whole configuration space.
    pub exact: bool,
    pub visited: u64,
    pub restriction: Option<RestrictionCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundState {
    pub config: Vec<bool>,
    pub energy: f64,
    pub certificate: Certificate,
}

/// Running minimum with a deterministic tie-break.
#[derive(Clone)]
struct Best {
    energy: f64,
    config: Vec<bool>,
    tol: f64,
}

impl Best {
    fn new(n: usize, tol: f64) -> Self {
        Best { energy: f64::INFINITY, config: vec![true; n], tol }
    }

    fn offer(&mut self, e: f64, cfg: &[bool]) {
        if e < self.energy - self.tol || (e <= self.energy + self.tol && lex_cmp(cfg, &self.config) == Ordering::Less) {
            self.energy = e;
            self.config = cfg.to_vec();
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.offer(other.energy, &other.config);
        self
    }
}

/// Checks the two window conditions that justify the restricted searches.
pub fn restriction_check(m: &QuadraticModel, blockade: &Graph) -> RestrictionCheck {
    let n = m.len();
    let mut margin = f64::INFINITY;
    let mut maximal = 0;
    for v in 0..n {
        let delta = -m.lin[v];
        let nb = blockade.neighbors(v);
        if let Some(weakest) = nb.iter().map(|&w| m.v(v, w)).reduce(f64::min) {
            margin = margin.min(weakest - delta);
        }
        let far: f64 = (0..n).filter(|&w| w != v && !nb.contains(&w)).map(|w| m.v(v, w)).sum();
        if delta > far {
            maximal += 1;
        }
    }
    RestrictionCheck { blockade_justified: margin > 0.0, blockade_margin: margin, maximal_atoms: maximal, atoms: n }
}

/// Exact (or, for `Sample`, sampled) minimum of a quadratic model.
/// `blockade` is the nearest-neighbour graph used by the restricted strategies;
/// `hint` seeds the search with a known configuration.
pub fn ground_state(m: &QuadraticModel, blockade: &Graph, strategy: Strategy, hint: Option<&[bool]>, sample: SampleOptions) -> Result<GroundState> {
    let n = m.len();
    let strategy = match strategy {
        Strategy::Auto if n <= AUTO_FULL_LIMIT => Strategy::Full,
        Strategy::Auto => Strategy::Is,
        s => s,
    };
    match strategy {
        Strategy::Full => {
            if n > FULL_ENUMERATION_LIMIT {
                return Err(Error::TooLarge { what: "full enumeration", size: n, budget: FULL_ENUMERATION_LIMIT });
            }
            let (best, visited) = full_enumeration(m);
            Ok(GroundState { config: best.config, energy: best.energy, certificate: Certificate { strategy, exact: true, visited, restriction: None } })
        }
        Strategy::Is | Strategy::IsEnum => {
            let check = restriction_check(m, blockade);
            if !check.blockade_justified {
                let (atom, limit) = (0..n)
                    .filter(|&v| !blockade.neighbors(v).is_empty())
                    .map(|v| (v, blockade.neighbors(v).iter().map(|&w| m.v(v, w)).fold(f64::INFINITY, f64::min)))
                    .min_by(|a, b| (a.1 + m.lin[a.0]).total_cmp(&(b.1 + m.lin[b.0])))
                    .expect("some atom has a neighbour");
                return Err(Error::RestrictionUnjustified { atom, detuning: -m.lin[atom], limit });
            }
            let mut search = IsSearch::new(m, blockade, strategy == Strategy::Is);
            if let Some(h) = hint {
                search.best.offer(m.energy(h), h);
            }
            search.run();
            let energy = m.energy(&search.best.config);
            Ok(GroundState {
                config: search.best.config,
                energy,
                certificate: Certificate { strategy, exact: true, visited: search.visited, restriction: Some(check) },
            })
        }
        Strategy::Sample => {
            let start = hint.map(<[bool]>::to_vec).unwrap_or_else(|| vec![false; n]);
            let (best, visited) = sample_search(m, &start, sample);
            Ok(GroundState { config: best.config, energy: best.energy, certificate: Certificate { strategy, exact: false, visited, restriction: None } })
        }
        Strategy::Auto => unreachable!("resolved above"),
    }
}

fn full_enumeration(m: &QuadraticModel) -> (Best, u64) {
    let n = m.len();
    let tol = energy_tolerance(n);
    if n == 0 {
        return (Best { energy: 0.0, config: vec![], tol }, 1);
    }
    // the top bits are fixed per parallel block
    let high = if n > 12 { 8 } else { 0 };
    let low = n - high;
    let best = (0u64..1 << high)
        .into_par_iter()
        .map(|top| {
            let mut cfg = vec![false; n];
            for b in 0..high {
                cfg[low + b] = top >> b & 1 == 1;
            }
            let mut field = vec![0.0; n];
            for j in (low..n).filter(|&j| cfg[j]) {
                for (i, f) in field.iter_mut().enumerate() {
                    *f += m.v(i, j);
                }
            }
            let mut e = m.energy(&cfg);
            let mut best = Best::new(n, tol);
            best.offer(e, &cfg);
            for t in 1u64..1 << low {
                let i = t.trailing_zeros() as usize;
                let row = m.row(i);
                if cfg[i] {
                    cfg[i] = false;
                    for (f, v) in field.iter_mut().zip(row) {
                        *f -= v;
                    }
                    e -= m.lin[i] + field[i];
                } else {
                    e += m.lin[i] + field[i];
                    cfg[i] = true;
                    for (f, v) in field.iter_mut().zip(row) {
                        *f += v;
                    }
                }
                if e <= best.energy + tol {
                    best.offer(e, &cfg);
                }
            }
            best.energy = m.energy(&best.config);
            best
        })
        .reduce(|| Best::new(n, tol), Best::merge);
    (best, 1u64 << n)
}

struct IsSearch<'a> {
    m: &'a QuadraticModel,
    g: &'a Graph,
    order: Vec<usize>,
    rank: Vec<usize>,
    maximal_ok: Vec<bool>,
    prune: bool,
    best: Best,
    visited: u64,
}

impl<'a> IsSearch<'a> {
    fn new(m: &'a QuadraticModel, g: &'a Graph, prune: bool) -> Self {
        let n = m.len();
        // breadth-first order keeps chains contiguous
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let maximal_ok = (0..n)
            .map(|v| {
                let nb = g.neighbors(v);
                let far: f64 = (0..n).filter(|&w| w != v && !nb.contains(&w)).map(|w| m.v(v, w)).sum();
                -m.lin[v] > far
            })
            .collect();
        IsSearch { m, g, order, rank, maximal_ok, prune, best: Best::new(n, energy_tolerance(n)), visited: 0 }
    }

    fn run(&mut self) {
        let n = self.m.len();
        let mut state = IsState { cfg: vec![false; n], field: vec![0.0; n], energy: 0.0, candidate: Bits::full(n) };
        self.dfs(&mut state, 0);
    }

    /// Lower bound on the energy reachable from this state: remaining
    /// candidates are paired along blockade edges, at most one per pair.
    fn bound(&self, s: &IsState, from: usize) -> f64 {
        let mut b = s.energy;
        let mut paired: Vec<usize> = Vec::new();
        for &v in &self.order[from..] {
            if !s.candidate.contains(v) || paired.contains(&v) {
                continue;
            }
            let gain = |u: usize| (self.m.lin[u] + s.field[u]).min(0.0);
            let mate = self.g.neighbors(v).iter().copied().find(|&w| self.rank[w] > self.rank[v] && s.candidate.contains(w) && !paired.contains(&w));
            match mate {
                Some(w) => {
                    paired.push(w);
                    b += gain(v).min(gain(w));
                }
                None => b += gain(v),
            }
            if paired.len() > 8 {
                paired.drain(..paired.len() - 8);
            }
        }
        b
    }

    /// Some excluded, unblocked atom can no longer be blocked.
    fn orphaned(&self, s: &IsState, v: usize) -> bool {
        let stuck = |u: usize| {
            self.maximal_ok[u]
                && !s.cfg[u]
                && !s.candidate.contains(u)
                && self.g.neighbors(u).iter().all(|&w| !s.cfg[w] && !s.candidate.contains(w))
        };
        stuck(v) || self.g.neighbors(v).iter().any(|&w| stuck(w))
    }

    fn dfs(&mut self, s: &mut IsState, from: usize) {
        self.visited += 1;
        let next = self.order[from..].iter().position(|&v| s.candidate.contains(v)).map(|p| from + p);
        let Some(pos) = next else {
            self.best.offer(s.energy, &s.cfg);
            return;
        };
        if self.prune && self.bound(s, pos) > self.best.energy + self.best.tol {
            return;
        }
        let v = self.order[pos];
        // include v
        {
            let mut t = s.clone();
            t.energy += self.m.lin[v] + t.field[v];
            t.cfg[v] = true;
            for (f, x) in t.field.iter_mut().zip(self.m.row(v)) {
                *f += x;
            }
            t.candidate.remove(v);
            for &w in self.g.neighbors(v) {
                t.candidate.remove(w);
            }
            let dead = self.prune && self.g.neighbors(v).iter().any(|&w| self.orphaned(&t, w));
            if !dead {
                self.dfs(&mut t, pos + 1);
            }
        }
        // exclude v
        s.candidate.remove(v);
        if !(self.prune && self.orphaned(s, v)) {
            self.dfs(s, pos + 1);
        }
    }
}

#[derive(Clone)]
struct IsState {
    cfg: Vec<bool>,
    field: Vec<f64>,
    energy: f64,
    candidate: Bits,
}

/// Seeded perturbations of a start configuration: random flips of single
/// atoms, of small random sets, and of contiguous index runs.
fn sample_search(m: &QuadraticModel, start: &[bool], opts: SampleOptions) -> (Best, u64) {
    let n = m.len();
    let tol = energy_tolerance(n);
    let e0 = m.energy(start);
    let field0: Vec<f64> = (0..n).map(|i| (0..n).filter(|&j| start[j]).map(|j| m.v(i, j)).sum()).collect();
    let mut seed_best = Best::new(n, tol);
    seed_best.offer(e0, start);
    if n == 0 {
        return (seed_best, 0);
    }
    const CHUNK: u64 = 1 << 14;
    let chunks = opts.samples.div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(c);
            let mut best = Best::new(n, tol);
            let count = CHUNK.min(opts.samples - c * CHUNK);
            let mut flips: Vec<usize> = Vec::new();
            for _ in 0..count {
                flips.clear();
                match rng.gen_range(0..3) {
                    0 => flips.push(rng.gen_range(0..n)),
                    1 => {
                        let k = rng.gen_range(2..=6.min(n.max(2)));
                        for _ in 0..k {
                            let i = rng.gen_range(0..n);
                            if !flips.contains(&i) {
                                flips.push(i);
                            }
                        }
                    }
                    _ => {
                        let a = rng.gen_range(0..n);
                        let len = rng.gen_range(1..=24.min(n - a));
                        flips.extend(a..a + len);
                    }
                }
                let mut de = 0.0;
                for (x, &i) in flips.iter().enumerate() {
                    let si = if start[i] { -1.0 } else { 1.0 };
                    de += si * (m.lin[i] + field0[i]);
                    for &j in &flips[..x] {
                        let sj = if start[j] { -1.0 } else { 1.0 };
                        de += si * sj * m.v(i, j);
                    }
                }
                let e = e0 + de;
                if e <= best.energy + tol {
                    let mut cfg = start.to_vec();
                    for &i in &flips {
                        cfg[i] = !cfg[i];
                    }
                    best.offer(e, &cfg);
                }
            }
            best
        })
        .reduce(|| seed_best.clone(), Best::merge);
    let mut best = best;
    best.energy = m.energy(&best.config);
    (best, opts.samples)
}

/// Energies of regions in one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionEnergies {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// Interaction between A_i and B of each link, per link end (a side, b side).
    pub ab: Vec<(f64, f64)>,
    /// Σ E_A + Σ (E_{A,B} + ½ E_B) style decomposition value.
    pub decomposition: f64,
    pub total: f64,
}

/// Restricted sums over the A/B regions of a layout for one configuration.
/// The decomposition counts each B segment's internal energy once and its
/// interaction with both adjacent A regions.
pub fn region_energies(layout: &AtomLayout, m: &QuadraticModel, cfg: &[bool]) -> RegionEnergies {
    let a_sets: Vec<Vec<usize>> = (0..layout.specials.len()).map(|i| layout.region_a(i)).collect();
    let b_sets: Vec<Vec<usize>> = (0..layout.links.len()).map(|i| layout.region_b(i)).collect();
    let a: Vec<f64> = a_sets.iter().map(|x| m.energy_of(cfg, x)).collect();
    let b: Vec<f64> = b_sets.iter().map(|x| m.energy_of(cfg, x)).collect();
    let ab: Vec<(f64, f64)> = layout
        .links
        .iter()
        .enumerate()
        .map(|(li, l)| (m.cross_energy(cfg, &a_sets[l.a], &b_sets[li]), m.cross_energy(cfg, &a_sets[l.b], &b_sets[li])))
        .collect();
    let mut acc = Compensated::new();
    for &x in a.iter().chain(&b) {
        acc.add(x);
    }
    for &(x, y) in &ab {
        acc.add(x);
        acc.add(y);
    }
    RegionEnergies { decomposition: acc.value(), total: m.energy(cfg), a, b, ab }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Diagnostic {
    /// Two excited atoms closer than the blockade radius.
    BlockadeViolation { a: usize, b: usize },
    /// A leg atom out of order with its special atom.
    DisorderedRegion { special: usize, atom: usize },
    /// More than one domain wall between two specials.
    ExtraDomainWalls { link: usize, walls: usize },
    /// An excitable atom with no excited neighbour.
    NotMaximal { atom: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decoded {
    pub pseudo_spins: Vec<bool>,
    pub witness: Vec<usize>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Reads pseudo-spins from special atoms and the witness from original vertices.
pub fn decode(cfg: &[bool], layout: &AtomLayout) -> Decoded {
    let pseudo_spins: Vec<bool> = layout.specials.iter().map(|s| cfg[s.atom]).collect();
    let witness: Vec<usize> = (0..layout.graph.vertex_count()).filter(|&v| cfg[v]).collect();
    let mut diagnostics = Vec::new();
    let ud = layout.unit_disk_graph();
    for &(a, b) in ud.edges() {
        if cfg[a] && cfg[b] {
            diagnostics.push(Diagnostic::BlockadeViolation { a, b });
        }
    }
    for v in 0..cfg.len() {
        if !cfg[v] && ud.neighbors(v).iter().all(|&w| !cfg[w]) {
            diagnostics.push(Diagnostic::NotMaximal { atom: v });
        }
    }
    for (i, slot) in layout.leg_slot.iter().enumerate() {
        if let Some(s) = slot {
            if cfg[i] != ((s.x % 2 == 0) == pseudo_spins[s.special]) {
                diagnostics.push(Diagnostic::DisorderedRegion { special: s.special, atom: i });
            }
        }
    }
    for (li, l) in layout.links.iter().enumerate() {
        let mut seq = vec![cfg[layout.specials[l.a].atom]];
        seq.extend(l.atoms.iter().map(|&a| cfg[a]));
        seq.push(cfg[layout.specials[l.b].atom]);
        let walls = seq.windows(2).filter(|w| !w[0] && !w[1]).count();
        if walls > 1 {
            diagnostics.push(Diagnostic::ExtraDomainWalls { link: li, walls });
        }
    }
    debug_assert!(layout.region_of.iter().all(|r| matches!(r, Region::A(_) | Region::B(_))));
    Decoded { pseudo_spins, witness, diagnostics }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn unit_disk_energy() {
        let g = named::k2();
        assert_eq!(energy_ud(&[false, false], g.graph(), 0.5, 1.0), 0.0);
        assert_eq!(energy_ud(&[true, true], g.graph(), 0.5, 1.0), 0.0);
        assert_eq!(energy_ud(&[true, false], g.graph(), 0.5, 1.0), -0.5);
    }

    #[test]
    fn toy_pair() {
        let t = ToyParams::default();
        t.validate().unwrap();
        let e = energy_toy(&[true, true], &[[0.0, 0.0], [1.4, 0.0]], &[0.3, 0.4], &t);
        assert!((e - (-0.7 + 0.2)).abs() < 1e-15);
    }

    #[test]
    fn single_atom_ground_state() {
        let m = QuadraticModel { lin: vec![-0.3], pair: vec![0.0] };
        let gs = ground_state(&m, &Graph::empty(1), Strategy::Full, None, SampleOptions::default()).unwrap();
        assert_eq!((gs.config, gs.energy), (vec![true], -0.3));
    }

    #[test]
    fn strategies_agree_on_a_chain() {
        let pts: Vec<[f64; 2]> = (0..14).map(|i| [i as f64, 0.0]).collect();
        let det: Vec<f64> = (0..14).map(|i| 0.5 + 0.01 * (i % 3) as f64).collect();
        let m = QuadraticModel::rydberg_points(&pts, &det, 1.0);
        let g = named::path(14);
        let full = ground_state(&m, g.graph(), Strategy::Full, None, SampleOptions::default()).unwrap();
        let is = ground_state(&m, g.graph(), Strategy::Is, None, SampleOptions::default()).unwrap();
        let en = ground_state(&m, g.graph(), Strategy::IsEnum, None, SampleOptions::default()).unwrap();
        assert_eq!(full.config, is.config);
        assert_eq!(full.config, en.config);
        assert!((full.energy - is.energy).abs() < 1e-12);
    }

    #[test]
    fn restriction_refused() {
        let m = QuadraticModel::rydberg_points(&[[0.0, 0.0], [1.0, 0.0]], &[1.5, 0.5], 1.0);
        let r = ground_state(&m, named::k2().graph(), Strategy::Is, None, SampleOptions::default());
        assert!(matches!(r, Err(Error::RestrictionUnjustified { atom: 0, .. })));
    }

    #[test]
    fn config_strings() {
        let c: SpinConfig = "0110".parse().unwrap();
        assert_eq!(c.to_string(), "0110");
        assert!("01x".parse::<SpinConfig>().is_err());
    }
}
