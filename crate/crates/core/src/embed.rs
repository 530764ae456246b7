//! Orthogonal grid drawings: vertices on integer points, edges as axis-parallel
//! polylines along grid lines.

use crate::error::{Error, Result};
use crate::graph::{Graph, PlanarGraph, RawGraph};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::fmt;

pub type Point = (i64, i64);

/// Area per vertex observed over the test corpus stays below this constant.
pub const AREA_CONSTANT: f64 = 12.0;

/// Port directions in preference order: +x, +y, −x, −y.
pub const DIRS: [Point; 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

fn dir_index(d: Point) -> Option<usize> {
    DIRS.iter().position(|&x| x == d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePath {
    pub u: usize,
    pub v: usize,
    pub path: Vec<Point>,
}

/// Vertex coordinates and one path per edge, canonically ordered: each path
/// starts at its lower-indexed endpoint and edges are sorted by (u, v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDrawing {
    pub vertices: Vec<Point>,
    pub edges: Vec<EdgePath>,
}

#[derive(Serialize, Deserialize)]
struct DrawingFile {
    vertices: BTreeMap<usize, [i64; 2]>,
    edges: Vec<EdgeFile>,
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    u: usize,
    v: usize,
    path: Vec<[i64; 2]>,
}

impl GridDrawing {
    /// Canonicalizes path orientation and edge order.
    pub fn new(vertices: Vec<Point>, edges: Vec<EdgePath>) -> Self {
        let mut edges: Vec<EdgePath> = edges
            .into_iter()
            .map(|mut e| {
                if e.u > e.v {
                    std::mem::swap(&mut e.u, &mut e.v);
                    e.path.reverse();
                }
                e
            })
            .collect();
        edges.sort_by_key(|e| (e.u, e.v));
        GridDrawing { vertices, edges }
    }

    pub fn to_json(&self) -> String {
        let f = DrawingFile {
            vertices: self.vertices.iter().enumerate().map(|(i, p)| (i, [p.0, p.1])).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeFile { u: e.u, v: e.v, path: e.path.iter().map(|p| [p.0, p.1]).collect() })
                .collect(),
        };
        serde_json::to_string(&f).expect("drawing serializes")
    }

    /// Parses the JSON form without geometric validation.
    pub fn from_json(text: &str) -> Result<Self> {
        let f: DrawingFile = serde_json::from_str(text)?;
        let n = f.vertices.len();
        if let Some((&k, _)) = f.vertices.iter().find(|(&k, _)| k >= n) {
            return Err(Error::InvalidDrawing(format!("vertex keys must be 0..{n}, found {k}")));
        }
        let vertices = f.vertices.values().map(|p| (p[0], p[1])).collect();
        let edges = f
            .edges
            .into_iter()
            .map(|e| EdgePath { u: e.u, v: e.v, path: e.path.into_iter().map(|p| (p[0], p[1])).collect() })
            .collect();
        Ok(GridDrawing::new(vertices, edges))
    }

    /// The graph drawn, with the identity labeling.
    pub fn drawn_graph(&self) -> RawGraph {
        RawGraph { n: self.vertices.len(), edges: self.edges.iter().map(|e| [e.u, e.v]).collect() }
    }

    /// Unit-step expansion of an edge path.
    pub fn unit_path(path: &[Point]) -> std::result::Result<Vec<Point>, (Point, Point)> {
        let mut out = Vec::new();
        if let Some(&p) = path.first() {
            out.push(p);
        }
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            if (dx != 0) == (dy != 0) {
                return Err((a, b));
            }
            let steps = dx.abs().max(dy.abs());
            let (sx, sy) = (dx.signum(), dy.signum());
            for s in 1..=steps {
                out.push((a.0 + sx * s, a.1 + sy * s));
            }
        }
        Ok(out)
    }

    /// Number of unit grid segments along each edge, in edge order.
    pub fn edge_lengths(&self) -> Vec<usize> {
        self.edges
            .iter()
            .map(|e| Self::unit_path(&e.path).map(|p| p.len() - 1).unwrap_or(0))
            .collect()
    }

    pub fn bends(&self) -> usize {
        self.edges
            .iter()
            .map(|e| {
                let p = Self::unit_path(&e.path).unwrap_or_default();
                p.windows(3)
                    .filter(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1) != (w[2].0 - w[1].0, w[2].1 - w[1].1))
                    .count()
            })
            .sum()
    }

    /// Bounding box measured in grid points: (width+1)·(height+1).
    pub fn area(&self) -> i64 {
        let pts = self.vertices.iter().copied().chain(self.edges.iter().flat_map(|e| e.path.iter().copied()));
        let mut bb: Option<(i64, i64, i64, i64)> = None;
        for (x, y) in pts {
            bb = Some(match bb {
                None => (x, x, y, y),
                Some((a, b, c, d)) => (a.min(x), b.max(x), c.min(y), d.max(y)),
            });
        }
        bb.map_or(0, |(a, b, c, d)| (b - a + 1) * (d - c + 1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DrawingViolation {
    VertexCount { expected: usize, found: usize },
    DuplicateVertexCoordinate { a: usize, b: usize, at: Point },
    MissingEdge { u: usize, v: usize },
    UnexpectedEdge { u: usize, v: usize },
    RepeatedEdge { u: usize, v: usize },
    EndpointMismatch { u: usize, v: usize },
    NonOrthogonalStep { u: usize, v: usize, from: Point, to: Point },
    SelfIntersection { u: usize, v: usize, at: Point },
    PassesThroughVertex { u: usize, v: usize, vertex: usize, at: Point },
    SharedGridPoint { first: (usize, usize), second: (usize, usize), at: Point },
    PortConflict { vertex: usize, direction: Point },
}

impl fmt::Display for DrawingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DrawingViolation::*;
        match self {
            VertexCount { expected, found } => write!(f, "expected {expected} vertices, found {found}"),
            DuplicateVertexCoordinate { a, b, at } => write!(f, "vertices {a} and {b} share coordinate {at:?}"),
            MissingEdge { u, v } => write!(f, "edge ({u},{v}) has no path"),
            UnexpectedEdge { u, v } => write!(f, "path for ({u},{v}) which is not an edge"),
            RepeatedEdge { u, v } => write!(f, "edge ({u},{v}) drawn twice"),
            EndpointMismatch { u, v } => write!(f, "path of ({u},{v}) does not join its endpoints"),
            NonOrthogonalStep { u, v, from, to } => write!(f, "path of ({u},{v}) has non-orthogonal step {from:?} -> {to:?}"),
            SelfIntersection { u, v, at } => write!(f, "path of ({u},{v}) revisits {at:?}"),
            PassesThroughVertex { u, v, vertex, at } => write!(f, "path of ({u},{v}) passes through vertex {vertex} at {at:?}"),
            SharedGridPoint { first, second, at } => write!(f, "paths {first:?} and {second:?} share grid point {at:?}"),
            PortConflict { vertex, direction } => write!(f, "two paths leave vertex {vertex} in direction {direction:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawingReport {
    pub violations: Vec<DrawingViolation>,
    pub area: i64,
    pub area_per_vertex: f64,
    pub area_constant: f64,
    pub bends: usize,
}

impl DrawingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every drawing invariant and isomorphism with `g` under the identity labeling.
pub fn validate_drawing(d: &GridDrawing, g: &Graph) -> DrawingReport {
    use DrawingViolation::*;
    let mut out = Vec::new();
    if d.vertices.len() != g.vertex_count() {
        out.push(VertexCount { expected: g.vertex_count(), found: d.vertices.len() });
    }
    let mut at_vertex: HashMap<Point, usize> = HashMap::new();
    for (i, &p) in d.vertices.iter().enumerate() {
        if let Some(&j) = at_vertex.get(&p) {
            out.push(DuplicateVertexCoordinate { a: j, b: i, at: p });
        } else {
            at_vertex.insert(p, i);
        }
    }
    let mut drawn: HashSet<(usize, usize)> = HashSet::new();
    let mut owner: HashMap<Point, (usize, usize)> = HashMap::new();
    let mut ports: HashSet<(usize, Point)> = HashSet::new();
    for e in &d.edges {
        let key = (e.u.min(e.v), e.u.max(e.v));
        if !drawn.insert(key) {
            out.push(RepeatedEdge { u: key.0, v: key.1 });
            continue;
        }
        if e.u >= g.vertex_count() || e.v >= g.vertex_count() || !g.has_edge(e.u, e.v) {
            out.push(UnexpectedEdge { u: key.0, v: key.1 });
        }
        let path = match GridDrawing::unit_path(&e.path) {
            Ok(p) => p,
            Err((from, to)) => {
                out.push(NonOrthogonalStep { u: e.u, v: e.v, from, to });
                continue;
            }
        };
        let ends_ok = path.len() >= 2
            && d.vertices.get(e.u) == path.first()
            && d.vertices.get(e.v) == path.last();
        if !ends_ok {
            out.push(EndpointMismatch { u: e.u, v: e.v });
            continue;
        }
        let mut seen = HashSet::new();
        for &p in &path {
            if !seen.insert(p) {
                out.push(SelfIntersection { u: e.u, v: e.v, at: p });
            }
        }
        for &p in &path[1..path.len() - 1] {
            if let Some(&w) = at_vertex.get(&p) {
                out.push(PassesThroughVertex { u: e.u, v: e.v, vertex: w, at: p });
            }
            match owner.get(&p) {
                Some(&o) if o != key => out.push(SharedGridPoint { first: o, second: key, at: p }),
                _ => {
                    owner.insert(p, key);
                }
            }
        }
        let n = path.len();
        let out_dir = (path[1].0 - path[0].0, path[1].1 - path[0].1);
        let in_dir = (path[n - 2].0 - path[n - 1].0, path[n - 2].1 - path[n - 1].1);
        for (vtx, dir) in [(e.u, out_dir), (e.v, in_dir)] {
            if !ports.insert((vtx, dir)) {
                out.push(PortConflict { vertex: vtx, direction: dir });
            }
        }
    }
    for &(u, v) in g.edges() {
        if !drawn.contains(&(u, v)) {
            out.push(MissingEdge { u, v });
        }
    }
    let area = d.area();
    let nv = d.vertices.len().max(1);
    DrawingReport {
        violations: out,
        area,
        area_per_vertex: area as f64 / nv as f64,
        area_constant: AREA_CONSTANT,
        bends: d.bends(),
    }
}

/// Reads a drawing file, validates it against its own drawn graph and
/// returns both. Invalid geometry is an error carrying the report.
pub fn ingest_drawing(text: &str) -> Result<(GridDrawing, PlanarGraph, DrawingReport)> {
    let d = GridDrawing::from_json(text)?;
    let raw = d.drawn_graph();
    let simple: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
    let g = Graph::from_edges(raw.n, &simple).map_err(|e| Error::InvalidDrawing(e.to_string()))?;
    let report = validate_drawing(&d, &g);
    if !report.is_valid() {
        let msg: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidDrawing(msg.join("; ")));
    }
    let pg = PlanarGraph::new(&raw).map_err(|e| Error::InvalidDrawing(e.to_string()))?;
    Ok((d, pg, report))
}

#[derive(Clone, Copy)]
struct SearchParams {
    radius: i64,
    max_candidates: usize,
    node_limit: u64,
    margin: i64,
}

struct Embedder<'a> {
    g: &'a Graph,
    params: SearchParams,
    pos: Vec<Option<Point>>,
    occupied: HashMap<Point, usize>,
    used_ports: Vec<[bool; 4]>,
    routed: Vec<usize>,
    paths: BTreeMap<(usize, usize), Vec<Point>>,
    nodes: u64,
}

impl<'a> Embedder<'a> {
    fn new(g: &'a Graph, params: SearchParams) -> Self {
        let n = g.vertex_count();
        Embedder {
            g,
            params,
            pos: vec![None; n],
            occupied: HashMap::new(),
            used_ports: vec![[false; 4]; n],
            routed: vec![0; n],
            paths: BTreeMap::new(),
            nodes: 0,
        }
    }

    fn bbox(&self) -> (i64, i64, i64, i64) {
        let mut it = self.occupied.keys();
        let first = it.next().copied().unwrap_or((0, 0));
        self.occupied.keys().fold((first.0, first.0, first.1, first.1), |(a, b, c, d), &(x, y)| {
            (a.min(x), b.max(x), c.min(y), d.max(y))
        })
    }

    /// Shortest orthogonal route from `from` (leaving through a free port of
    /// `src`) to `to` (entering through a free port of `dst`), avoiding occupied
    /// points. Ties favour fewer bends, then the fixed direction order.
    fn route(&self, src: usize, from: Point, dst: usize, to: Point, lo: Point, hi: Point) -> Option<Vec<Point>> {
        // state: (point, incoming direction index)
        let mut dist: HashMap<(Point, usize), (i64, i64)> = HashMap::new();
        let mut prev: HashMap<(Point, usize), (Point, usize)> = HashMap::new();
        let mut heap = BinaryHeap::new();
        let mut seq = 0u64;
        for (di, &d) in DIRS.iter().enumerate() {
            if self.used_ports[src][di] {
                continue;
            }
            let p = (from.0 + d.0, from.1 + d.1);
            let cost = (1, 0);
            if p == to {
                let back = dir_index((-d.0, -d.1)).expect("axis direction");
                if !self.used_ports[dst][back] {
                    return Some(vec![from, to]);
                }
                continue;
            }
            if self.occupied.contains_key(&p) {
                continue;
            }
            dist.insert((p, di), cost);
            heap.push(Reverse((cost, seq, p, di)));
            seq += 1;
        }
        while let Some(Reverse((cost, _, p, di))) = heap.pop() {
            if dist.get(&(p, di)).is_some_and(|&c| c < cost) {
                continue;
            }
            for (dj, &d) in DIRS.iter().enumerate() {
                if dj == (di + 2) % 4 {
                    continue;
                }
                let q = (p.0 + d.0, p.1 + d.1);
                let nc = (cost.0 + 1, cost.1 + i64::from(dj != di));
                if q == to {
                    let back = (dj + 2) % 4;
                    if self.used_ports[dst][back] {
                        continue;
                    }
                    let mut path = vec![to, p];
                    let mut cur = (p, di);
                    while let Some(&pr) = prev.get(&cur) {
                        path.push(pr.0);
                        cur = pr;
                    }
                    path.push(from);
                    path.reverse();
                    return Some(path);
                }
                if q.0 < lo.0 || q.0 > hi.0 || q.1 < lo.1 || q.1 > hi.1 || self.occupied.contains_key(&q) {
                    continue;
                }
                if dist.get(&(q, dj)).is_none_or(|&c| nc < c) {
                    dist.insert((q, dj), nc);
                    prev.insert((q, dj), (p, di));
                    heap.push(Reverse((nc, seq, q, dj)));
                    seq += 1;
                }
            }
        }
        None
    }

    fn commit_path(&mut self, u: usize, v: usize, path: &[Point]) {
        let n = path.len();
        let d0 = dir_index((path[1].0 - path[0].0, path[1].1 - path[0].1)).expect("unit step");
        let d1 = dir_index((path[n - 2].0 - path[n - 1].0, path[n - 2].1 - path[n - 1].1)).expect("unit step");
        self.used_ports[u][d0] = true;
        self.used_ports[v][d1] = true;
        self.routed[u] += 1;
        self.routed[v] += 1;
        for &p in &path[1..n - 1] {
            self.occupied.insert(p, usize::MAX);
        }
        self.paths.insert((u.min(v), u.max(v)), path.to_vec());
    }

    fn undo_path(&mut self, u: usize, v: usize) {
        let path = self.paths.remove(&(u.min(v), u.max(v))).expect("path exists");
        let n = path.len();
        let d0 = dir_index((path[1].0 - path[0].0, path[1].1 - path[0].1)).expect("unit step");
        let d1 = dir_index((path[n - 2].0 - path[n - 1].0, path[n - 2].1 - path[n - 1].1)).expect("unit step");
        self.used_ports[u][d0] = false;
        self.used_ports[v][d1] = false;
        self.routed[u] -= 1;
        self.routed[v] -= 1;
        for &p in &path[1..n - 1] {
            self.occupied.remove(&p);
        }
    }

    /// Every placed vertex still has enough open ports for its unrouted edges.
    fn ports_sufficient(&self) -> bool {
        (0..self.g.vertex_count()).all(|w| {
            let Some(p) = self.pos[w] else { return true };
            let need = self.g.degree(w) - self.routed[w];
            let open = DIRS
                .iter()
                .enumerate()
                .filter(|&(i, d)| !self.used_ports[w][i] && !self.occupied.contains_key(&(p.0 + d.0, p.1 + d.1)))
                .count();
            open >= need
        })
    }

    fn candidates(&self, anchor: Point, placed: &[usize]) -> Vec<Point> {
        let r = self.params.radius;
        let mut c = Vec::new();
        for dx in -r..=r {
            for dy in -r..=r {
                if dx.abs() + dy.abs() > r || (dx, dy) == (0, 0) {
                    continue;
                }
                let p = (anchor.0 + dx, anchor.1 + dy);
                if !self.occupied.contains_key(&p) {
                    c.push(p);
                }
            }
        }
        let rank = |p: Point| {
            let (dx, dy) = (p.0 - anchor.0, p.1 - anchor.1);
            let score: i64 = placed
                .iter()
                .map(|&w| {
                    let q = self.pos[w].expect("placed");
                    (p.0 - q.0).abs() + (p.1 - q.1).abs()
                })
                .sum();
            let axis = match (dx.signum(), dy.signum()) {
                (1, 0) => 0,
                (0, 1) => 1,
                (-1, 0) => 2,
                (0, -1) => 3,
                _ => 4,
            };
            (score, dx.abs() + dy.abs(), axis, -dy, dx)
        };
        c.sort_by_key(|&p| rank(p));
        c.truncate(self.params.max_candidates);
        c
    }

    fn place(&mut self, order: &[usize], idx: usize) -> bool {
        if idx == order.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.params.node_limit {
            return false;
        }
        let v = order[idx];
        let placed: Vec<usize> = self.g.neighbors(v).iter().copied().filter(|&w| self.pos[w].is_some()).collect();
        let cands = if placed.is_empty() {
            vec![(0, 0)]
        } else {
            self.candidates(self.pos[placed[0]].expect("placed"), &placed)
        };
        for c in cands {
            self.pos[v] = Some(c);
            self.occupied.insert(c, v);
            let (x0, x1, y0, y1) = self.bbox();
            let m = self.params.margin;
            let (lo, hi) = ((x0 - m, y0 - m), (x1 + m, y1 + m));
            let mut done = Vec::new();
            let mut ok = true;
            for &w in &placed {
                let to = self.pos[w].expect("placed");
                match self.route(v, c, w, to, lo, hi) {
                    Some(path) => {
                        self.commit_path(v, w, &path);
                        done.push(w);
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.ports_sufficient() && self.place(order, idx + 1) {
                return true;
            }
            for &w in done.iter().rev() {
                self.undo_path(v, w);
            }
            self.occupied.remove(&c);
            self.pos[v] = None;
            if self.nodes > self.params.node_limit {
                return false;
            }
        }
        false
    }
}

fn bfs_order(g: &Graph, comp: &[usize]) -> Vec<usize> {
    let mut order = vec![comp[0]];
    let mut seen: HashSet<usize> = order.iter().copied().collect();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in g.neighbors(v) {
            if seen.insert(w) {
                order.push(w);
            }
        }
    }
    order
}

/// Vertex positions and routed edge paths of one component.
type ComponentDrawing = (HashMap<usize, Point>, BTreeMap<(usize, usize), Vec<Point>>);

fn embed_component(g: &Graph, comp: &[usize]) -> Option<ComponentDrawing> {
    let order = bfs_order(g, comp);
    let attempts = [
        SearchParams { radius: 3, max_candidates: 12, node_limit: 20_000, margin: 2 },
        SearchParams { radius: 6, max_candidates: usize::MAX, node_limit: 2_000_000, margin: 3 },
    ];
    for (i, params) in attempts.iter().enumerate() {
        if i == 1 && comp.len() > 8 {
            break;
        }
        let mut e = Embedder::new(g, *params);
        if e.place(&order, 0) {
            let pos = comp.iter().map(|&v| (v, e.pos[v].expect("placed"))).collect();
            return Some((pos, e.paths));
        }
    }
    None
}

/// Orthogonal grid drawing of a planar graph with maximum degree 3.
/// Components are drawn separately and laid out left to right.
pub fn grid_embed(g: &PlanarGraph) -> Result<GridDrawing> {
    let n = g.vertex_count();
    let mut vertices = vec![(0, 0); n];
    let mut edges = Vec::new();
    let mut next_x = 0i64;
    for comp in g.components() {
        let (pos, paths) = embed_component(g, &comp)
            .ok_or_else(|| Error::EmbeddingFailure(format!("no drawing found for component containing vertex {}", comp[0])))?;
        let pts = pos.values().copied().chain(paths.values().flatten().copied());
        let (mut minx, mut maxx, mut miny) = (i64::MAX, i64::MIN, i64::MAX);
        for (x, y) in pts {
            minx = minx.min(x);
            maxx = maxx.max(x);
            miny = miny.min(y);
        }
        let _ = miny;
        let shift = next_x - minx;
        for (&v, &(x, y)) in &pos {
            vertices[v] = (x + shift, y);
        }
        for (&(u, v), path) in &paths {
            let mut p: Vec<Point> = path.iter().map(|&(x, y)| (x + shift, y)).collect();
            let (a, b) = if p[0] == vertices[u] { (u, v) } else { (v, u) };
            if a > b {
                p.reverse();
            }
            edges.push(EdgePath { u, v, path: p });
        }
        next_x = maxx + shift + 2;
    }
    Ok(GridDrawing::new(vertices, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn k2_canonical() {
        let d = grid_embed(&named::k2()).unwrap();
        assert_eq!(d.vertices, vec![(0, 0), (1, 0)]);
        assert_eq!(d.edges, vec![EdgePath { u: 0, v: 1, path: vec![(0, 0), (1, 0)] }]);
        assert!(validate_drawing(&d, named::k2().graph()).is_valid());
    }

    #[test]
    fn p3_straight_and_star_junction() {
        let d = grid_embed(&named::path(3)).unwrap();
        assert_eq!(d.vertices, vec![(0, 0), (1, 0), (2, 0)]);
        let d = grid_embed(&named::star3()).unwrap();
        assert_eq!(d.vertices, vec![(1, 0), (2, 0), (1, 1), (0, 0)]);
    }

    #[test]
    fn k4_needs_bends() {
        let g = named::k4();
        let d = grid_embed(&g).unwrap();
        let rep = validate_drawing(&d, g.graph());
        assert!(rep.is_valid(), "{:?}", rep.violations);
        assert!(rep.bends >= 1);
    }

    #[test]
    fn constructed_violations() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let crossing = GridDrawing::new(
            vec![(0, 1), (2, 1), (1, 0), (1, 2)],
            vec![
                EdgePath { u: 0, v: 1, path: vec![(0, 1), (2, 1)] },
                EdgePath { u: 2, v: 3, path: vec![(1, 0), (1, 2)] },
            ],
        );
        let rep = validate_drawing(&crossing, &g);
        assert!(rep.violations.iter().any(|v| matches!(v, DrawingViolation::SharedGridPoint { at: (1, 1), .. })));

        let k2 = named::k2();
        let diagonal = GridDrawing::new(vec![(0, 0), (1, 1)], vec![EdgePath { u: 0, v: 1, path: vec![(0, 0), (1, 1)] }]);
        let rep = validate_drawing(&diagonal, k2.graph());
        assert!(rep.violations.iter().any(|v| matches!(v, DrawingViolation::NonOrthogonalStep { .. })));
    }

    #[test]
    fn ingest_round_trip_and_duplicates() {
        let d = grid_embed(&named::k2()).unwrap();
        let (back, _, _) = ingest_drawing(&d.to_json()).unwrap();
        assert_eq!(back, d);
        let dup = r#"{"vertices":{"0":[0,0],"1":[0,0]},"edges":[]}"#;
        assert!(ingest_drawing(dup).is_err());
    }

    #[test]
    fn reversed_paths_are_canonicalized() {
        let text = r#"{"vertices":{"0":[0,0],"1":[2,0]},"edges":[{"u":1,"v":0,"path":[[2,0],[0,0]]}]}"#;
        let (d, _, _) = ingest_drawing(text).unwrap();
        assert_eq!(d.edges[0].u, 0);
        assert_eq!(d.edges[0].path, vec![(0, 0), (2, 0)]);
    }
}
