use super::{mis_size, Graph, MisOptions};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative guard band on squared distances for the closed-disk test.
pub const GUARD_BAND: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitDiskGraph {
    pub points: Vec<[f64; 2]>,
    pub radius: f64,
    pub graph: Graph,
}

/// Connects every pair with |x_u − x_v| ≤ radius (within the guard band).
pub fn unit_disk_graph(points: &[[f64; 2]], radius: f64) -> Result<UnitDiskGraph> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidGraph(format!("radius must be positive, got {radius}")));
    }
    if let Some(i) = points.iter().position(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(Error::InvalidGraph(format!("point {i} is not finite")));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]).then(points[a][1].total_cmp(&points[b][1])));
    let r2 = radius * radius * (1.0 + GUARD_BAND);
    let reach = radius * (1.0 + GUARD_BAND);
    let mut edges = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            let dx = points[b][0] - points[a][0];
            if dx > reach {
                break;
            }
            let dy = points[b][1] - points[a][1];
            let d2 = dx * dx + dy * dy;
            if d2 == 0.0 {
                return Err(Error::DuplicatePoint(a.min(b), a.max(b)));
            }
            if d2 <= r2 {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    let graph = Graph::from_edges(points.len(), &edges)?;
    Ok(UnitDiskGraph { points: points.to_vec(), radius, graph })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub mis_original: usize,
    pub mis_unit_disk: usize,
    pub ancilla_pairs: usize,
    pub holds: bool,
}

/// Checks |MIS(G)| = |MIS(𝒢)| + Σ k_uv.
pub fn check_mis_correspondence(original: &Graph, ud: &Graph, k_uv: &[usize], opts: &MisOptions) -> Result<CorrespondenceReport> {
    let mis_original = mis_size(original, opts)?;
    let mis_unit_disk = mis_size(ud, opts)?;
    let ancilla_pairs: usize = k_uv.iter().sum();
    Ok(CorrespondenceReport {
        mis_original,
        mis_unit_disk,
        ancilla_pairs,
        holds: mis_unit_disk == mis_original + ancilla_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_examples() {
        let g = unit_disk_graph(&[[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]], 1.0).unwrap();
        assert_eq!(g.graph.edges(), &[(0, 1)]);
        let chain: Vec<[f64; 2]> = (0..6).map(|i| [i as f64, 0.0]).collect();
        let g = unit_disk_graph(&chain, 1.25).unwrap();
        assert_eq!(g.graph.edges(), &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(unit_disk_graph(&[[0.0, 0.0], [0.0, 0.0]], 1.0), Err(Error::DuplicatePoint(0, 1))));
    }
}
