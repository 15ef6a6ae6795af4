//! Small lattice graphs the models are built on.

use crate::error::{Error, Result};

/// Undirected simple graph on `n_sites` sites; edges carry the
/// nearest-neighbor interaction and hopping terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeGraph {
    n_sites: usize,
    edges: Vec<(usize, usize)>,
}

impl LatticeGraph {
    pub fn new(n_sites: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::GraphMismatch("graph needs at least one site".into()));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n_sites || b >= n_sites {
                return Err(Error::GraphMismatch(format!(
                    "edge ({a},{b}) out of range for {n_sites} sites"
                )));
            }
            if a == b {
                return Err(Error::GraphMismatch(format!("self-loop at site {a}")));
            }
            let e = (a.min(b), a.max(b));
            if normalized.contains(&e) {
                return Err(Error::GraphMismatch(format!("duplicate edge ({},{})", e.0, e.1)));
            }
            normalized.push(e);
        }
        Ok(Self { n_sites, edges: normalized })
    }

    /// The double well: two sites, one bond.
    pub fn two_site() -> Self {
        Self::new(2, &[(0, 1)]).expect("static graph")
    }

    /// Four sites on a square ring.
    pub fn plaquette_ring() -> Self {
        Self::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).expect("static graph")
    }

    /// One four-site cell of a corner-sharing-triangle lattice: the square
    /// ring plus one diagonal, i.e. two triangles sharing an edge.
    pub fn kagome_cell() -> Self {
        Self::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).expect("static graph")
    }

    /// Rectangular grid with open boundaries, sites numbered row-major.
    pub fn grid(rows: usize, cols: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let site = r * cols + c;
                if c + 1 < cols {
                    edges.push((site, site + 1));
                }
                if r + 1 < rows {
                    edges.push((site, site + cols));
                }
            }
        }
        Self::new(rows * cols, &edges)
    }

    /// The 4x4 open-boundary cluster.
    pub fn grid_4x4() -> Self {
        Self::grid(4, 4).expect("static graph")
    }

    /// Looks up the graphs exposed through configuration by name.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "two-site" => Some(Self::two_site()),
            "plaquette-ring" => Some(Self::plaquette_ring()),
            "kagome-cell" => Some(Self::kagome_cell()),
            "grid-4x4" => Some(Self::grid_4x4()),
            _ => None,
        }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }
}
