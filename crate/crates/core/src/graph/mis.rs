//! Exact maximum independent set: branch and bound with a clique-cover bound,
//! plus an exhaustive subset enumeration used as a second opinion.

use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const DEFAULT_VERTEX_BUDGET: usize = 64;
const EXHAUSTIVE_LIMIT: usize = 20;

/// Fixed-width bit set over vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut b = Bits::new(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn and_not(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn and(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection_len(&self, other: &Bits) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisOptions {
    pub vertex_budget: usize,
    /// Count all optimal sets (exhaustively up to 20 vertices, else by search).
    pub count: bool,
    /// Search-node cap for counting above the exhaustive limit.
    pub count_node_limit: u64,
}

impl Default for MisOptions {
    fn default() -> Self {
        MisOptions { vertex_budget: DEFAULT_VERTEX_BUDGET, count: false, count_node_limit: 10_000_000 }
    }
}

impl MisOptions {
    pub fn with_budget(vertex_budget: usize) -> Self {
        MisOptions { vertex_budget, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisResult {
    pub size: usize,
    /// Lexicographically smallest maximum independent set, sorted.
    pub witness: Vec<usize>,
    /// Number of maximum independent sets, when requested and within the node limit.
    pub optimal_count: Option<u64>,
}

struct Solver<'a> {
    g: &'a Graph,
    nbr: Vec<Bits>,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        let nbr = (0..n)
            .map(|v| {
                let mut b = Bits::new(n);
                for &w in g.neighbors(v) {
                    b.insert(w);
                }
                b
            })
            .collect();
        Solver { g, nbr }
    }

    fn closed(&self, v: usize) -> Bits {
        let mut b = self.nbr[v].clone();
        b.insert(v);
        b
    }

    fn deg_in(&self, v: usize, p: &Bits) -> usize {
        self.nbr[v].intersection_len(p)
    }

    /// Greedy clique cover of G[p]; its size bounds α(G[p]) from above.
    fn clique_cover(&self, p: &Bits) -> usize {
        let mut commons: Vec<Bits> = Vec::new();
        'outer: for v in p.iter() {
            for c in commons.iter_mut() {
                if c.contains(v) {
                    c.and(&self.nbr[v]);
                    continue 'outer;
                }
            }
            let mut c = self.nbr[v].clone();
            c.and(p);
            commons.push(c);
        }
        commons.len()
    }

    /// Minimum-degree greedy independent set size (a lower bound).
    fn greedy(&self, p: &Bits) -> usize {
        let mut p = p.clone();
        let mut size = 0;
        while !p.is_empty() {
            let v = p.iter().min_by_key(|&v| self.deg_in(v, &p)).expect("nonempty");
            size += 1;
            p.and_not(&self.closed(v));
        }
        size
    }

    fn component(&self, p: &Bits, start: usize) -> Bits {
        let mut comp = Bits::new(self.g.vertex_count());
        comp.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in self.g.neighbors(v) {
                if p.contains(w) && !comp.contains(w) {
                    comp.insert(w);
                    stack.push(w);
                }
            }
        }
        comp
    }

    /// α(G[p]).
    fn alpha(&self, p: &Bits) -> usize {
        let mut p = p.clone();
        let mut size = 0;
        // vertices of degree ≤ 1 always belong to some maximum independent set
        loop {
            let pick = p.iter().find(|&v| self.deg_in(v, &p) <= 1);
            match pick {
                Some(v) => {
                    size += 1;
                    p.and_not(&self.closed(v));
                }
                None => break,
            }
        }
        let Some(first) = p.first() else { return size };
        let comp = self.component(&p, first);
        if comp.len() < p.len() {
            let mut rest = p.clone();
            rest.and_not(&comp);
            return size + self.alpha_connected(&comp) + self.alpha(&rest);
        }
        size + self.alpha_connected(&p)
    }

    fn alpha_connected(&self, p: &Bits) -> usize {
        let (v, dv) = p.iter().map(|v| (v, self.deg_in(v, p))).fold((usize::MAX, 0), |acc, (v, d)| {
            if d > acc.1 || acc.0 == usize::MAX {
                (v, d)
            } else {
                acc
            }
        });
        if dv <= 2 {
            // connected, all degrees 2: a cycle
            return p.len() / 2;
        }
        let mut best = self.greedy(p);
        let mut inc = p.clone();
        inc.and_not(&self.closed(v));
        if self.clique_cover(&inc) + 1 > best {
            best = best.max(1 + self.alpha(&inc));
        }
        let mut exc = p.clone();
        exc.remove(v);
        if self.clique_cover(&exc) > best {
            best = best.max(self.alpha(&exc));
        }
        best
    }

    fn witness(&self, total: usize) -> Vec<usize> {
        let n = self.g.vertex_count();
        let mut p = Bits::full(n);
        let mut target = total;
        let mut out = Vec::with_capacity(total);
        for v in 0..n {
            if target == 0 {
                break;
            }
            if !p.contains(v) {
                continue;
            }
            let mut inc = p.clone();
            inc.and_not(&self.closed(v));
            if 1 + self.alpha(&inc) == target {
                out.push(v);
                target -= 1;
                p = inc;
            } else {
                p.remove(v);
            }
        }
        out
    }

    /// Number of independent sets of size `target` inside p, or None past the node limit.
    fn count(&self, p: &Bits, target: usize, nodes: &mut u64, limit: u64) -> Option<u64> {
        *nodes += 1;
        if *nodes > limit {
            return None;
        }
        if target == 0 {
            return Some(1);
        }
        if p.len() < target || self.clique_cover(p) < target {
            return Some(0);
        }
        let v = p.first().expect("nonempty");
        let mut inc = p.clone();
        inc.and_not(&self.closed(v));
        let mut exc = p.clone();
        exc.remove(v);
        Some(self.count(&inc, target - 1, nodes, limit)? + self.count(&exc, target, nodes, limit)?)
    }
}

fn check_budget(g: &Graph, budget: usize) -> Result<()> {
    if g.vertex_count() > budget {
        return Err(Error::TooLarge { what: "MIS instance", size: g.vertex_count(), budget });
    }
    Ok(())
}

/// Size of a maximum independent set.
pub fn mis_size(g: &Graph, opts: &MisOptions) -> Result<usize> {
    check_budget(g, opts.vertex_budget)?;
    let s = Solver::new(g);
    Ok(s.alpha(&Bits::full(g.vertex_count())))
}

/// Exact maximum independent set with the lexicographically smallest witness.
pub fn mis_exact(g: &Graph, opts: &MisOptions) -> Result<MisResult> {
    check_budget(g, opts.vertex_budget)?;
    let s = Solver::new(g);
    let size = s.alpha(&Bits::full(g.vertex_count()));
    let witness = s.witness(size);
    let optimal_count = if !opts.count {
        None
    } else if g.vertex_count() <= EXHAUSTIVE_LIMIT {
        mis_exhaustive(g)?.optimal_count
    } else {
        let mut nodes = 0;
        s.count(&Bits::full(g.vertex_count()), size, &mut nodes, opts.count_node_limit)
    };
    Ok(MisResult { size, witness, optimal_count })
}

/// Enumerates all 2^n subsets (n ≤ 20).
pub fn mis_exhaustive(g: &Graph) -> Result<MisResult> {
    let n = g.vertex_count();
    check_budget(g, EXHAUSTIVE_LIMIT)?;
    let masks: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let mut best = 0usize;
    let mut count = 0u64;
    let mut best_set: Vec<usize> = Vec::new();
    for s in 0u32..(1u32 << n) {
        let independent = (0..n).all(|v| s >> v & 1 == 0 || masks[v] & s == 0);
        if !independent {
            continue;
        }
        let size = s.count_ones() as usize;
        let members: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        if size > best {
            best = size;
            count = 1;
            best_set = members;
        } else if size == best {
            count += 1;
            if members < best_set {
                best_set = members;
            }
        }
    }
    Ok(MisResult { size: best, witness: best_set, optimal_count: Some(count) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn small_examples() {
        let r = mis_exact(&Graph::empty(0), &MisOptions::default()).unwrap();
        assert_eq!(r.size, 0);
        let r = mis_exact(named::star3().graph(), &MisOptions::default()).unwrap();
        assert_eq!((r.size, r.witness.clone()), (3, vec![1, 2, 3]));
        let r = mis_exact(named::cycle(5).graph(), &MisOptions { count: true, ..Default::default() }).unwrap();
        assert_eq!((r.size, r.optimal_count), (2, Some(5)));
        assert_eq!(r.witness, vec![0, 2]);
    }

    #[test]
    fn budget_enforced() {
        let g = named::path(70);
        assert!(matches!(mis_exact(g.graph(), &MisOptions::default()), Err(Error::TooLarge { .. })));
        assert_eq!(mis_exact(g.graph(), &MisOptions::with_budget(100)).unwrap().size, 35);
    }

    #[test]
    fn counting_by_search_matches_exhaustive() {
        let g = named::cycle(20);
        let ex = mis_exhaustive(g.graph()).unwrap();
        let s = Solver::new(g.graph());
        let mut nodes = 0;
        let c = s.count(&Bits::full(20), ex.size, &mut nodes, u64::MAX);
        assert_eq!(c, ex.optimal_count);
    }
}
