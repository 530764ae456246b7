use super::Graph;
use petgraph::graph::UnGraph;

/// Planarity test: Euler edge bound, then the left-right planarity algorithm.
pub fn is_planar(g: &Graph) -> bool {
    for comp in g.components() {
        let nv = comp.len();
        let ne: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if nv >= 3 && ne > 3 * nv - 6 {
            return false;
        }
    }
    let mut pg: UnGraph<(), ()> = UnGraph::with_capacity(g.vertex_count(), g.edge_count());
    let nodes: Vec<_> = (0..g.vertex_count()).map(|_| pg.add_node(())).collect();
    for &(u, v) in g.edges() {
        pg.add_edge(nodes[u], nodes[v], ());
    }
    rustworkx_core::planar::is_planar(&pg)
}

/// Exhaustive planarity check by enumerating rotation systems and counting
/// faces (V − E + F = 2 per connected component). Returns `None` when the graph
/// has more than 12 vertices or too many rotation systems to enumerate.
pub fn is_planar_by_rotations(g: &Graph) -> Option<bool> {
    if g.vertex_count() > 12 {
        return None;
    }
    for comp in g.components() {
        let ne: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if ne == 0 {
            continue;
        }
        if !component_planar(g, &comp)? {
            return Some(false);
        }
    }
    Some(true)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn component_planar(g: &Graph, comp: &[usize]) -> Option<bool> {
    // cyclic orders of each neighbourhood with the first neighbour fixed
    let choices: Vec<Vec<Vec<usize>>> = comp
        .iter()
        .map(|&v| {
            let nb = g.neighbors(v);
            if nb.len() <= 2 {
                return vec![nb.to_vec()];
            }
            permutations(&nb[1..])
                .into_iter()
                .map(|mut p| {
                    p.insert(0, nb[0]);
                    p
                })
                .collect()
        })
        .collect();
    let total: f64 = choices.iter().map(|c| c.len() as f64).product();
    if total > (1u64 << 22) as f64 {
        return None;
    }
    let nv = comp.len() as i64;
    let ne = (comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2) as i64;
    let pos: std::collections::HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut idx = vec![0usize; comp.len()];
    loop {
        let rot: Vec<&Vec<usize>> = idx.iter().enumerate().map(|(i, &c)| &choices[i][c]).collect();
        if nv - ne + count_faces(comp, &pos, &rot) == 2 {
            return Some(true);
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Some(false);
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn count_faces(comp: &[usize], pos: &std::collections::HashMap<usize, usize>, rot: &[&Vec<usize>]) -> i64 {
    use std::collections::HashSet;
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut faces = 0;
    for &u in comp {
        for &v in rot[pos[&u]] {
            if used.contains(&(u, v)) {
                continue;
            }
            faces += 1;
            let (mut a, mut b) = (u, v);
            while used.insert((a, b)) {
                // next dart leaves b after a in b's rotation
                let r = rot[pos[&b]];
                let i = r.iter().position(|&x| x == a).expect("rotation contains neighbour");
                let c = r[(i + 1) % r.len()];
                a = b;
                b = c;
            }
        }
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn textbook_cases() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        let k33 = Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert!(!is_planar(&k33));
        assert_eq!(is_planar_by_rotations(&k33), Some(false));
        assert_eq!(is_planar_by_rotations(&complete(4)), Some(true));
        assert_eq!(is_planar_by_rotations(&complete(5)), Some(false));
    }

    #[test]
    fn petersen_is_nonplanar() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = Graph::from_edges(10, &e).unwrap();
        assert!(!is_planar(&g));
        assert_eq!(is_planar_by_rotations(&g), Some(false));
    }
}
