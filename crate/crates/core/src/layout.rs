//! Atom arrangement along drawn edges, special-vertex classification and the
//! A/B region decomposition.
//!
//! Positions are exact rationals in units of the minimal spacing d. A grid
//! point (X, Y) of the drawing sits at ((2k+1)X, (2k+1)Y).

use crate::embed::{GridDrawing, Point};
use crate::error::{Error, Result};
use crate::graph::{Graph, PlanarGraph};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

pub type Q = Ratio<i64>;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutParams {
    pub k: u32,
    pub phi: u32,
}

impl LayoutParams {
    pub fn new(k: u32, phi: u32) -> Result<Self> {
        let p = LayoutParams { k, phi };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::ParameterWindow(format!("k = {} is below the minimum of 2", self.k)));
        }
        if self.phi < 1 {
            return Err(Error::ParameterWindow("phi must be at least 1".into()));
        }
        Ok(())
    }

    /// Leg pairs per A region: ⌊k/8⌋.
    pub fn q(&self) -> u32 {
        self.k / 8
    }

    /// Grid unit in units of d.
    pub fn grid(&self) -> i64 {
        2 * self.k as i64 + 1
    }

    /// Irregular spacing 1 + 1/(4φ).
    pub fn irregular_spacing(&self) -> Q {
        q(1) + Q::new(1, 4 * self.phi as i64)
    }

    /// Whether the standard 4φ+2 → 4φ+1 block fits inside one segment with
    /// even-length halves.
    pub fn block_fits(&self) -> bool {
        let need = 4 * self.phi + if self.k.is_multiple_of(2) { 4 } else { 2 };
        need <= 2 * self.k
    }

    /// 2φ < 2q ≤ k/4.
    pub fn footnote_constraint_holds(&self) -> bool {
        let q = self.q();
        2 * self.phi < 2 * q && 8 * q <= self.k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    OriginalVertex,
    GridAncilla,
    LegAncilla,
    IrregularVertex,
    SegmentAncilla,
}

impl Role {
    pub fn is_special(self) -> bool {
        matches!(self, Role::OriginalVertex | Role::GridAncilla | Role::IrregularVertex)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialKind {
    Corner,
    Junction,
    OpenEnd,
    Straight,
    Irregular,
    Isolated,
}

impl fmt::Display for SpecialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpecialKind::Corner => "corner",
            SpecialKind::Junction => "junction",
            SpecialKind::OpenEnd => "open-end",
            SpecialKind::Straight => "straight",
            SpecialKind::Irregular => "irregular",
            SpecialKind::Isolated => "isolated",
        };
        f.write_str(s)
    }
}

/// Region an atom belongs to: A_i (special index) or B (link index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    A(usize),
    B(usize),
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::A(i) => write!(f, "A{i}"),
            Region::B(i) => write!(f, "B{i}"),
        }
    }
}

/// Leg label for junction legs: X and Z are collinear, Y is perpendicular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LegLabel {
    X,
    Y,
    Z,
    Plain,
}

/// Position of a leg atom inside its A region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegSlot {
    pub special: usize,
    pub label: LegLabel,
    /// Distance index 1..=2q from the special atom.
    pub x: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub x: Q,
    pub y: Q,
    pub role: Role,
}

impl Atom {
    pub fn xy_f64(&self) -> [f64; 2] {
        [self.x.to_f64().expect("finite"), self.y.to_f64().expect("finite")]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IrregularMode {
    /// 4φ+1 atoms at spacing 1 + 1/(4φ) replace 4φ+2 regular atoms.
    Block,
    /// The whole segment holds 2k−1 atoms at spacing 1 + 1/(2k).
    Stretched,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrregularInfo {
    /// Segment index along the edge path (0-based from u).
    pub segment: usize,
    pub mode: IrregularMode,
    /// Number of stretched gaps.
    pub gaps: usize,
    /// Stretched spacing as "p/q".
    pub spacing: String,
}

/// Atoms along one edge of the input graph, from u to v inclusive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeChain {
    pub u: usize,
    pub v: usize,
    pub grid_length: usize,
    pub chain: Vec<usize>,
    pub irregular: Option<IrregularInfo>,
}

impl EdgeChain {
    /// 2k_uv: number of atoms strictly between the endpoints.
    pub fn ancillas(&self) -> usize {
        self.chain.len() - 2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Leg {
    pub link: usize,
    /// Unit direction from the special toward its first leg atom.
    pub dir: (i64, i64),
    pub label: LegLabel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Special {
    pub atom: usize,
    pub kind: SpecialKind,
    pub legs: Vec<Leg>,
}

impl Special {
    pub fn degree(&self) -> usize {
        self.legs.len()
    }
}

/// Atoms strictly between two consecutive specials along an edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub a: usize,
    pub b: usize,
    pub edge: usize,
    pub atoms: Vec<usize>,
}

/// Where to put the single domain wall of a segment whose ends are both 0 or both 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallPolicy {
    #[default]
    Centered,
    /// Moved by the given number of atom pairs from the center.
    Shifted(i64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomLayout {
    pub params: LayoutParams,
    pub graph: Graph,
    pub atoms: Vec<Atom>,
    pub edges: Vec<EdgeChain>,
    pub specials: Vec<Special>,
    pub links: Vec<Link>,
    pub region_of: Vec<Region>,
    pub leg_slot: Vec<Option<LegSlot>>,
    /// Special index of each special atom.
    pub special_of_atom: Vec<Option<usize>>,
    /// Reasons the A/B decomposition is not usable for detuning compilation.
    pub region_problems: Vec<String>,
    /// Squared unit-disk radius: the largest nearest-neighbour spacing.
    pub radius2: Q,
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Positions along one unit segment, in units of d from its start, excluding both grid points.
fn segment_offsets(p: &LayoutParams, irregular: Option<IrregularMode>) -> (Vec<Q>, Option<usize>) {
    let k = p.k as i64;
    match irregular {
        None => ((1..=2 * k).map(q).collect(), None),
        Some(IrregularMode::Block) => {
            let phi = p.phi as i64;
            let s = if k % 2 == 1 { k - 2 * phi } else { k - 2 * phi - 1 };
            let dd = p.irregular_spacing();
            let mut out: Vec<Q> = (1..s).map(q).collect();
            let center = out.len() + 2 * phi as usize;
            out.extend((0..=4 * phi).map(|j| q(s) + dd * q(j)));
            out.extend((s + 4 * phi + 2..=2 * k).map(q));
            (out, Some(center))
        }
        Some(IrregularMode::Stretched) => {
            let step = Q::new(2 * k + 1, 2 * k);
            ((1..2 * k).map(|j| step * q(j)).collect(), Some(k as usize - 1))
        }
    }
}

/// Places atoms along every drawn edge and derives specials and regions.
pub fn arrange_atoms(d: &GridDrawing, g: &PlanarGraph, p: LayoutParams) -> Result<AtomLayout> {
    p.validate()?;
    let report = crate::embed::validate_drawing(d, g.graph());
    if !report.is_valid() {
        let msg: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidDrawing(msg.join("; ")));
    }
    let gu = p.grid();
    let mut atoms: Vec<Atom> = d
        .vertices
        .iter()
        .map(|&(x, y)| Atom { x: q(x * gu), y: q(y * gu), role: Role::OriginalVertex })
        .collect();
    let mut edges = Vec::new();
    for e in &d.edges {
        let path = GridDrawing::unit_path(&e.path).expect("validated path");
        let len = path.len() - 1;
        let irregular = if len.is_multiple_of(2) {
            let mode = if p.block_fits() { IrregularMode::Block } else { IrregularMode::Stretched };
            Some((len / 2 - 1, mode))
        } else {
            None
        };
        let mut chain = vec![e.u];
        let mut info = None;
        for s in 0..len {
            let (a, b): (Point, Point) = (path[s], path[s + 1]);
            let dir = (b.0 - a.0, b.1 - a.1);
            let mode = irregular.filter(|&(seg, _)| seg == s).map(|(_, m)| m);
            let (offs, center) = segment_offsets(&p, mode);
            let base = (q(a.0 * gu), q(a.1 * gu));
            for (i, t) in offs.iter().enumerate() {
                let role = if Some(i) == center { Role::IrregularVertex } else { Role::SegmentAncilla };
                chain.push(atoms.len());
                atoms.push(Atom { x: base.0 + *t * q(dir.0), y: base.1 + *t * q(dir.1), role });
            }
            if let Some(m) = mode {
                let (gaps, spacing) = match m {
                    IrregularMode::Block => (4 * p.phi as usize, p.irregular_spacing()),
                    IrregularMode::Stretched => (2 * p.k as usize, Q::new(gu, 2 * p.k as i64)),
                };
                info = Some(IrregularInfo { segment: s, mode: m, gaps, spacing: spacing.to_string() });
            }
            if s + 1 < len {
                chain.push(atoms.len());
                atoms.push(Atom { x: q(b.0 * gu), y: q(b.1 * gu), role: Role::GridAncilla });
            }
        }
        chain.push(e.v);
        edges.push(EdgeChain { u: e.u, v: e.v, grid_length: len, chain, irregular: info });
    }
    AtomLayout::from_parts(p, g.graph().clone(), atoms, edges)
}

impl AtomLayout {
    /// Derives specials, links and regions from atoms and edge chains.
    pub fn from_parts(params: LayoutParams, graph: Graph, mut atoms: Vec<Atom>, edges: Vec<EdgeChain>) -> Result<Self> {
        let n = atoms.len();
        let mut special_of_atom = vec![None; n];
        let mut specials: Vec<Special> = Vec::new();
        for (i, a) in atoms.iter().enumerate() {
            if a.role.is_special() {
                special_of_atom[i] = Some(specials.len());
                specials.push(Special { atom: i, kind: SpecialKind::Isolated, legs: Vec::new() });
            }
        }
        let mut links = Vec::new();
        for (ei, e) in edges.iter().enumerate() {
            let mut last = 0usize;
            for (pos, &atom) in e.chain.iter().enumerate().skip(1) {
                if special_of_atom[atom].is_none() {
                    continue;
                }
                let a = special_of_atom[e.chain[last]].ok_or_else(|| Error::LayoutCorruption("chain does not start at a special".into()))?;
                let b = special_of_atom[atom].expect("checked");
                let between: Vec<usize> = e.chain[last + 1..pos].to_vec();
                let li = links.len();
                let toward = |from: usize, to: usize| -> (i64, i64) {
                    let (dx, dy) = (atoms[to].x - atoms[from].x, atoms[to].y - atoms[from].y);
                    (dx.signum().to_integer(), dy.signum().to_integer())
                };
                let next_from_a = between.first().copied().unwrap_or(atom);
                let next_from_b = between.last().copied().unwrap_or(e.chain[last]);
                specials[a].legs.push(Leg { link: li, dir: toward(e.chain[last], next_from_a), label: LegLabel::Plain });
                specials[b].legs.push(Leg { link: li, dir: toward(atom, next_from_b), label: LegLabel::Plain });
                links.push(Link { a, b, edge: ei, atoms: between });
                last = pos;
            }
        }
        for s in specials.iter_mut() {
            let dirs: Vec<(i64, i64)> = s.legs.iter().map(|l| l.dir).collect();
            if dirs.iter().any(|d| (d.0 != 0) == (d.1 != 0)) {
                return Err(Error::LayoutCorruption(format!("atom {} has a non-axis leg", s.atom)));
            }
            s.kind = match (atoms[s.atom].role, dirs.len()) {
                (Role::IrregularVertex, 2) => SpecialKind::Irregular,
                (_, 0) => SpecialKind::Isolated,
                (_, 1) => SpecialKind::OpenEnd,
                (_, 2) if cross(dirs[0], dirs[1]) == 0 => SpecialKind::Straight,
                (_, 2) => SpecialKind::Corner,
                (_, 3) => SpecialKind::Junction,
                (_, m) => return Err(Error::LayoutCorruption(format!("atom {} has {m} legs", s.atom))),
            };
            if s.kind == SpecialKind::Junction {
                let y = (0..3)
                    .find(|&i| !dirs.contains(&(-dirs[i].0, -dirs[i].1)))
                    .ok_or_else(|| Error::LayoutCorruption(format!("junction at atom {} has no perpendicular leg", s.atom)))?;
                let mut others = (0..3).filter(|&i| i != y);
                let x = others.next().expect("three legs");
                let z = others.next().expect("three legs");
                s.legs[y].label = LegLabel::Y;
                s.legs[x].label = LegLabel::X;
                s.legs[z].label = LegLabel::Z;
            }
        }

        let qn = params.q() as usize;
        let mut region_of: Vec<Option<Region>> = vec![None; n];
        let mut leg_slot = vec![None; n];
        let mut problems = Vec::new();
        for (si, s) in specials.iter().enumerate() {
            region_of[s.atom] = Some(Region::A(si));
        }
        for (li, l) in links.iter().enumerate() {
            let len = l.atoms.len();
            if len < 4 * qn {
                problems.push(format!("link {li} has {len} atoms, fewer than 4q = {}", 4 * qn));
            }
            let take = (2 * qn).min(len / 2);
            let label_of = |si: usize| specials[si].legs.iter().find(|g| g.link == li).map_or(LegLabel::Plain, |g| g.label);
            for x in 0..take {
                let from_a = l.atoms[x];
                let from_b = l.atoms[len - 1 - x];
                region_of[from_a] = Some(Region::A(l.a));
                leg_slot[from_a] = Some(LegSlot { special: l.a, label: label_of(l.a), x: x + 1 });
                region_of[from_b] = Some(Region::A(l.b));
                leg_slot[from_b] = Some(LegSlot { special: l.b, label: label_of(l.b), x: x + 1 });
            }
            let b = len.saturating_sub(2 * take);
            if b % 2 == 1 {
                problems.push(format!("segment B{li} has odd length {b}"));
            }
            for &a in &l.atoms[take..len - take] {
                region_of[a] = Some(Region::B(li));
            }
        }
        let region_of: Vec<Region> = region_of
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| Error::LayoutCorruption(format!("atom {i} lies on no edge"))))
            .collect::<Result<_>>()?;
        for (i, atom) in atoms.iter_mut().enumerate() {
            if !atom.role.is_special() {
                atom.role = if matches!(region_of[i], Region::A(_)) { Role::LegAncilla } else { Role::SegmentAncilla };
            }
        }
        for e in &edges {
            if let Some(info) = &e.irregular {
                if info.mode == IrregularMode::Stretched {
                    problems.push(format!("edge ({},{}) uses a stretched irregular segment", e.u, e.v));
                }
            }
        }

        let mut radius2 = q(1);
        for e in &edges {
            for w in e.chain.windows(2) {
                let d2 = dist2(&atoms[w[0]], &atoms[w[1]]);
                if d2 > radius2 {
                    radius2 = d2;
                }
            }
        }

        Ok(AtomLayout {
            params,
            graph,
            atoms,
            edges,
            specials,
            links,
            region_of,
            leg_slot,
            special_of_atom,
            region_problems: problems,
            radius2,
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn regions_valid(&self) -> bool {
        self.region_problems.is_empty()
    }

    pub fn radius(&self) -> f64 {
        self.radius2.to_f64().expect("finite").sqrt()
    }

    pub fn points(&self) -> Vec<[f64; 2]> {
        self.atoms.iter().map(Atom::xy_f64).collect()
    }

    /// Exact squared distance between two atoms.
    pub fn dist2(&self, a: usize, b: usize) -> Q {
        dist2(&self.atoms[a], &self.atoms[b])
    }

    /// Per-edge ancilla half counts k_uv.
    pub fn k_uv(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.ancillas() / 2).collect()
    }

    /// Per-edge half counts κ_uv of interior special vertices.
    pub fn kappa(&self) -> Vec<usize> {
        self.edges
            .iter()
            .map(|e| e.chain[1..e.chain.len() - 1].iter().filter(|&&a| self.special_of_atom[a].is_some()).count() / 2)
            .collect()
    }

    pub fn sum_kappa(&self) -> usize {
        self.kappa().iter().sum()
    }

    /// Unit-disk graph with radius equal to the largest nearest-neighbour spacing,
    /// decided in exact arithmetic.
    pub fn unit_disk_graph(&self) -> Graph {
        let pts = self.points();
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&a, &b| pts[a][0].total_cmp(&pts[b][0]));
        let reach = self.radius() + 1e-6;
        let mut edges = Vec::new();
        for (i, &a) in order.iter().enumerate() {
            for &b in &order[i + 1..] {
                if pts[b][0] - pts[a][0] > reach {
                    break;
                }
                if (pts[b][1] - pts[a][1]).abs() > reach {
                    continue;
                }
                if self.dist2(a, b) <= self.radius2 {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        Graph::from_edges(self.atoms.len(), &edges).expect("distinct atom pairs")
    }

    /// Atoms of region A_i: the special plus its leg atoms.
    pub fn region_a(&self, special: usize) -> Vec<usize> {
        (0..self.atoms.len()).filter(|&i| self.region_of[i] == Region::A(special)).collect()
    }

    /// Atoms of segment B for a link, ordered from its `a` end to its `b` end.
    pub fn region_b(&self, link: usize) -> Vec<usize> {
        self.links[link].atoms.iter().copied().filter(|&i| self.region_of[i] == Region::B(link)).collect()
    }

    /// Census of special kinds.
    pub fn census(&self) -> HashMap<SpecialKind, usize> {
        let mut m = HashMap::new();
        for s in &self.specials {
            *m.entry(s.kind).or_insert(0) += 1;
        }
        m
    }

    /// Pseudo-spin graph: specials joined along links.
    pub fn effective_graph(&self) -> EffectiveGraph {
        let kappa = self.kappa();
        let a_map: Vec<usize> = (0..self.graph.vertex_count()).map(|v| self.special_of_atom[v].expect("vertex atoms are special")).collect();
        EffectiveGraph {
            specials: self.specials.len(),
            links: self.links.iter().map(|l| (l.a, l.b)).collect(),
            sum_kappa: kappa.iter().sum(),
            kappa,
            vertex_special: a_map,
        }
    }

    /// Configuration with every A region ordered according to `s` and every
    /// B segment filled alternately with at most one domain wall.
    pub fn pseudo_config(&self, s: &[bool], policy: WallPolicy) -> Vec<bool> {
        assert_eq!(s.len(), self.specials.len());
        let mut cfg = vec![false; self.atoms.len()];
        for (si, sp) in self.specials.iter().enumerate() {
            cfg[sp.atom] = s[si];
        }
        for (c, slot) in cfg.iter_mut().zip(&self.leg_slot) {
            if let Some(slot) = slot {
                *c = (slot.x % 2 == 0) == s[slot.special];
            }
        }
        for (li, l) in self.links.iter().enumerate() {
            let b = self.region_b(li);
            let fill = fill_chain(b.len(), s[l.a], s[l.b], policy);
            for (i, &a) in b.iter().enumerate() {
                cfg[a] = fill[i];
            }
        }
        cfg
    }

    /// Maximum independent set of the unit-disk graph built from an MIS of the
    /// input graph: each edge is ordered, with one domain wall when both
    /// endpoints are excluded.
    pub fn encode_reference_config(&self, mis: &[usize], policy: WallPolicy) -> Result<Vec<bool>> {
        self.graph.check_independent(mis)?;
        let mut in_set = vec![false; self.graph.vertex_count()];
        for &v in mis {
            in_set[v] = true;
        }
        if self.regions_valid() {
            let s = self.pseudo_spins_for(&in_set);
            return Ok(self.pseudo_config(&s, policy));
        }
        let mut cfg = vec![false; self.atoms.len()];
        for e in &self.edges {
            cfg[e.u] = in_set[e.u];
            cfg[e.v] = in_set[e.v];
            let inner = &e.chain[1..e.chain.len() - 1];
            let fill = fill_chain(inner.len(), in_set[e.u], in_set[e.v], policy);
            for (i, &a) in inner.iter().enumerate() {
                cfg[a] = fill[i];
            }
        }
        let nv = self.graph.vertex_count();
        cfg[..nv].copy_from_slice(&in_set[..nv]);
        Ok(cfg)
    }

    /// Pseudo-spin values induced by a vertex subset: interior specials of each
    /// edge alternate, with one wall on a regular link near the middle when needed.
    pub fn pseudo_spins_for(&self, in_set: &[bool]) -> Vec<bool> {
        let mut s = vec![false; self.specials.len()];
        for v in 0..self.graph.vertex_count() {
            s[self.special_of_atom[v].expect("vertex special")] = in_set[v];
        }
        for (ei, e) in self.edges.iter().enumerate() {
            let inner: Vec<usize> = e.chain[1..e.chain.len() - 1]
                .iter()
                .filter_map(|&a| self.special_of_atom[a])
                .collect();
            let (l, r) = (in_set[e.u], in_set[e.v]);
            // candidate wall positions w: gap between pseudo position w-1 and w
            let links: Vec<usize> = self.links.iter().enumerate().filter(|(_, lk)| lk.edge == ei).map(|(i, _)| i).collect();
            let regular = |w: usize| {
                let lk = &self.links[links[w]];
                self.specials[lk.a].kind != SpecialKind::Irregular && self.specials[lk.b].kind != SpecialKind::Irregular
            };
            let m = inner.len();
            let best = (0..=m)
                .filter(|&w| chain_ok(&fill_at(m, l, r, w), l, r))
                .min_by_key(|&w| (walls(&fill_at(m, l, r, w), l, r), !regular(w), (2 * w as i64 - m as i64).abs(), w))
                .unwrap_or(0);
            for (i, &sp) in inner.iter().enumerate() {
                s[sp] = fill_at(m, l, r, best)[i];
            }
        }
        s
    }
}

fn dist2(a: &Atom, b: &Atom) -> Q {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Left part follows the alternation from the left boundary, right part from
/// the right boundary, switching at gap `w`.
fn fill_at(len: usize, left: bool, right: bool, w: usize) -> Vec<bool> {
    (0..len)
        .map(|i| if i < w { left ^ (i % 2 == 0) } else { right ^ (len - 1 - i).is_multiple_of(2) })
        .collect()
}

fn chain_ok(x: &[bool], left: bool, right: bool) -> bool {
    let mut prev = left;
    for &b in x.iter().chain(std::iter::once(&right)) {
        if prev && b {
            return false;
        }
        prev = b;
    }
    true
}

fn walls(x: &[bool], left: bool, right: bool) -> usize {
    let mut prev = left;
    let mut n = 0;
    for &b in x.iter().chain(std::iter::once(&right)) {
        if !prev && !b {
            n += 1;
        }
        prev = b;
    }
    n
}

/// Alternating fill of `len` atoms between boundary states with the fewest
/// domain walls, the wall placed per policy.
pub fn fill_chain(len: usize, left: bool, right: bool, policy: WallPolicy) -> Vec<bool> {
    let shift = match policy {
        WallPolicy::Centered => 0,
        WallPolicy::Shifted(s) => 4 * s,
    };
    let center = len as i64 + shift;
    let best = (0..=len)
        .filter(|&w| chain_ok(&fill_at(len, left, right, w), left, right))
        .min_by_key(|&w| (walls(&fill_at(len, left, right, w), left, right), (2 * w as i64 - center).abs(), w))
        .unwrap_or(0);
    fill_at(len, left, right, best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectiveGraph {
    pub specials: usize,
    pub links: Vec<(usize, usize)>,
    pub kappa: Vec<usize>,
    pub sum_kappa: usize,
    /// Special index of each original vertex.
    pub vertex_special: Vec<usize>,
}

impl EffectiveGraph {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.specials, &self.links).expect("links join distinct specials once")
    }

    /// a′ = a + Σκ.
    pub fn a_prime(&self, a: usize) -> usize {
        a + self.sum_kappa
    }
}

#[derive(Serialize, Deserialize)]
struct AtomFile {
    x: String,
    y: String,
    role: Role,
    region: String,
}

#[derive(Serialize, Deserialize)]
struct ParamsFile {
    k: u32,
    phi: u32,
    q: u32,
}

#[derive(Serialize, Deserialize)]
struct SpecialFile {
    atom: usize,
    kind: SpecialKind,
    degree: usize,
}

#[derive(Serialize, Deserialize)]
struct RegionsFile {
    a: Vec<Vec<usize>>,
    b: Vec<Vec<usize>>,
    problems: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct LayoutFile {
    params: ParamsFile,
    graph: crate::graph::RawGraph,
    atoms: Vec<AtomFile>,
    edges: Vec<EdgeChain>,
    specials: Vec<SpecialFile>,
    regions: RegionsFile,
    kappa: Vec<usize>,
}

fn parse_q(s: &str) -> Result<Q> {
    s.trim().parse::<Q>().map_err(|e| Error::Parse { line: 0, column: 0, message: format!("bad rational {s:?}: {e}") })
}

impl AtomLayout {
    pub(crate) fn to_value(&self) -> serde_json::Value {
        let f = LayoutFile {
            params: ParamsFile { k: self.params.k, phi: self.params.phi, q: self.params.q() },
            graph: self.graph.to_raw(),
            atoms: self
                .atoms
                .iter()
                .enumerate()
                .map(|(i, a)| AtomFile { x: a.x.to_string(), y: a.y.to_string(), role: a.role, region: self.region_of[i].to_string() })
                .collect(),
            edges: self.edges.clone(),
            specials: self.specials.iter().map(|s| SpecialFile { atom: s.atom, kind: s.kind, degree: s.degree() }).collect(),
            regions: RegionsFile {
                a: (0..self.specials.len()).map(|i| self.region_a(i)).collect(),
                b: (0..self.links.len()).map(|i| self.region_b(i)).collect(),
                problems: self.region_problems.clone(),
            },
            kappa: self.kappa(),
        };
        serde_json::to_value(&f).expect("layout serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("layout serializes")
    }

    pub(crate) fn from_value(v: serde_json::Value) -> Result<Self> {
        let f: LayoutFile = serde_json::from_value(v)?;
        let params = LayoutParams::new(f.params.k, f.params.phi)?;
        let edges: Vec<(usize, usize)> = f.graph.edges.iter().map(|e| (e[0], e[1])).collect();
        let graph = Graph::from_edges(f.graph.n, &edges)?;
        let atoms = f
            .atoms
            .iter()
            .map(|a| Ok(Atom { x: parse_q(&a.x)?, y: parse_q(&a.y)?, role: a.role }))
            .collect::<Result<Vec<_>>>()?;
        let layout = AtomLayout::from_parts(params, graph, atoms, f.edges)?;
        for (i, a) in f.atoms.iter().enumerate() {
            if layout.region_of[i].to_string() != a.region {
                return Err(Error::LayoutCorruption(format!("atom {i} region {} disagrees with derived {}", a.region, layout.region_of[i])));
            }
        }
        Ok(layout)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_value(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::grid_embed;
    use crate::graph::named;

    fn layout(g: &PlanarGraph, k: u32, phi: u32) -> AtomLayout {
        let d = grid_embed(g).unwrap();
        arrange_atoms(&d, g, LayoutParams::new(k, phi).unwrap()).unwrap()
    }

    #[test]
    fn single_edge_counts() {
        let l = layout(&named::k2(), 8, 8);
        assert_eq!(l.len(), 18);
        assert_eq!(l.k_uv(), vec![8]);
        assert_eq!(l.kappa(), vec![0]);
        let c = l.census();
        assert_eq!(c[&SpecialKind::OpenEnd], 2);
        assert!(l.regions_valid());
        assert_eq!(l.region_a(0).len(), 3);
        assert_eq!(l.region_b(0).len(), 12);
    }

    #[test]
    fn straight_even_edge_block() {
        let g = named::k2();
        let d = GridDrawing::new(vec![(0, 0), (2, 0)], vec![crate::embed::EdgePath { u: 0, v: 1, path: vec![(0, 0), (2, 0)] }]);
        let l = arrange_atoms(&d, &g, LayoutParams::new(9, 2).unwrap()).unwrap();
        // ℓ = 2: (ℓ−1) + 2kℓ − 1 = 1 + 36 − 1 ancillas
        assert_eq!(l.edges[0].ancillas(), 36);
        let info = l.edges[0].irregular.as_ref().unwrap();
        assert_eq!((info.mode, info.gaps), (IrregularMode::Block, 8));
        let chain = &l.edges[0].chain;
        let gaps: Vec<Q> = chain.windows(2).map(|w| l.dist2(w[0], w[1])).collect();
        let dd = l.params.irregular_spacing();
        assert_eq!(gaps.iter().filter(|&&g| g == dd * dd).count(), 8);
        assert_eq!(gaps.iter().filter(|&&g| g == q(1)).count(), gaps.len() - 8);
        assert_eq!(l.census()[&SpecialKind::Irregular], 1);
        assert_eq!(l.kappa(), vec![1]);
    }

    #[test]
    fn wall_fill_rules() {
        assert_eq!(fill_chain(4, true, false, WallPolicy::Centered), vec![false, true, false, true]);
        let f = fill_chain(12, false, false, WallPolicy::Centered);
        assert_eq!(f.iter().filter(|&&b| b).count(), 6);
        assert_eq!(walls(&f, false, false), 1);
        let f = fill_chain(12, true, true, WallPolicy::Centered);
        assert_eq!(f.iter().filter(|&&b| b).count(), 5);
        assert!(chain_ok(&f, true, true));
    }

    #[test]
    fn json_round_trip() {
        let l = layout(&named::star3(), 8, 3);
        let back = AtomLayout::from_json(&l.to_json()).unwrap();
        assert_eq!(back, l);
    }
}
