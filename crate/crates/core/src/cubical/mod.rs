//! Lower-star cubical filtrations of depth patches and their persistence.
//!
//! A size-S patch induces a cubical complex with (S+1)^2 vertices,
//! 2*S*(S+1) edges and S^2 squares. Squares carry the pixel depths; every
//! lower-dimensional cell takes the minimum over its incident squares, so
//! the sublevel sets f^-1((-inf, r]) form closed subcomplexes. Cells are
//! totally ordered by (value, dimension, row-major cell index).
//!
//! Two pixels that touch only diagonally share a vertex and therefore
//! connect; there is no separate connectivity switch.

mod oracle;
mod reduction;

pub use oracle::oracle_persistence_h0;
pub use reduction::{compute_persistence, compute_persistence_deferred, naive_persistence};

use crate::grid_io::Patch;

/// How the single surviving component (and any other never-dying class) is
/// resolved into a finite interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EssentialPolicy {
    /// Death at the maximum cell value (the complex is complete there).
    CapAtMaxValue,
    /// Death at the given diagram limit.
    CapAtLimit(f64),
    /// Remove essential classes entirely.
    Drop,
}

/// One birth-death interval. `essential` marks classes that never die in
/// the filtration; their `death` is either resolved by a policy or +inf
/// while resolution is deferred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistenceInterval {
    pub birth: f64,
    pub death: f64,
    pub degree: u8,
    pub essential: bool,
}

impl PersistenceInterval {
    pub fn length(&self) -> f64 {
        self.death - self.birth
    }
}

/// A multiset of persistence intervals plus the axis limits used downstream.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    pub intervals: Vec<PersistenceInterval>,
    /// `[min, max]` axis bounds; `None` until a consumer fixes them.
    pub limits: Option<[f64; 2]>,
    /// The policy that was applied, or `None` while essential classes are
    /// still marked with infinite death.
    pub essential_policy: Option<EssentialPolicy>,
}

impl PersistenceDiagram {
    pub fn with_limits(mut self, limits: [f64; 2]) -> Self {
        assert!(limits[1] > limits[0], "diagram limits must satisfy max > min");
        self.limits = Some(limits);
        self
    }

    /// Keep only intervals whose degree is listed.
    pub fn filter_degrees(&self, degrees: &[u8]) -> PersistenceDiagram {
        PersistenceDiagram {
            intervals: self
                .intervals
                .iter()
                .filter(|iv| degrees.contains(&iv.degree))
                .cloned()
                .collect(),
            limits: self.limits,
            essential_policy: self.essential_policy,
        }
    }

    /// Resolve deferred essential classes; drops intervals that become
    /// zero-length.
    pub fn apply_essential_policy(mut self, policy: EssentialPolicy, max_value: f64) -> Self {
        self.intervals = self
            .intervals
            .into_iter()
            .filter_map(|mut iv| {
                if iv.essential && iv.death.is_infinite() {
                    match policy {
                        EssentialPolicy::CapAtMaxValue => iv.death = max_value,
                        EssentialPolicy::CapAtLimit(lim) => iv.death = lim,
                        EssentialPolicy::Drop => return None,
                    }
                }
                (iv.death != iv.birth).then_some(iv)
            })
            .collect();
        self.essential_policy = Some(policy);
        self
    }

    /// Debug/test dump: one `degree birth death` line per interval in a
    /// canonical order, `inf` for unresolved essential deaths.
    pub fn dump(&self) -> String {
        let mut sorted = self.intervals.clone();
        sorted.sort_by(|a, b| {
            (a.degree, a.birth, a.death)
                .partial_cmp(&(b.degree, b.birth, b.death))
                .unwrap()
        });
        let mut out = String::new();
        for iv in &sorted {
            if iv.death.is_infinite() {
                out.push_str(&format!("{} {} inf\n", iv.degree, iv.birth));
            } else {
                out.push_str(&format!("{} {} {}\n", iv.degree, iv.birth, iv.death));
            }
        }
        out
    }
}

/// Betti numbers (β0, β1) of the sublevel complex at threshold `r`: a
/// degree-k interval counts when birth <= r < death, essential classes
/// whenever birth <= r.
pub fn betti_at(diagram: &PersistenceDiagram, r: f64) -> (usize, usize) {
    let mut betti = [0usize; 2];
    for iv in &diagram.intervals {
        let alive = if iv.essential {
            iv.birth <= r
        } else {
            iv.birth <= r && r < iv.death
        };
        if alive {
            betti[iv.degree as usize] += 1;
        }
    }
    (betti[0], betti[1])
}

/// The filtered cubical complex of one patch.
///
/// Cells live on a (2S+1)x(2S+1) grid: both coordinates odd = square (pixel),
/// both even = vertex, mixed = edge. The cell id is the row-major index on
/// that grid.
#[derive(Debug, Clone)]
pub struct CubicalFiltration {
    size: usize,
    grid: usize,
    values: Vec<f64>,
    order: Vec<u32>,
    position: Vec<u32>,
    max_value: f64,
}

impl CubicalFiltration {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn cell_count(&self) -> usize {
        self.values.len()
    }

    pub fn vertex_count(&self) -> usize {
        (self.size + 1) * (self.size + 1)
    }

    pub fn edge_count(&self) -> usize {
        2 * self.size * (self.size + 1)
    }

    pub fn square_count(&self) -> usize {
        self.size * self.size
    }

    /// Maximum cell value (equals the patch maximum).
    pub fn max_value(&self) -> f64 {
        self.max_value
    }

    #[inline]
    pub fn value(&self, cell: u32) -> f64 {
        self.values[cell as usize]
    }

    #[inline]
    pub fn dim(&self, cell: u32) -> u8 {
        let i = cell as usize / self.grid;
        let j = cell as usize % self.grid;
        ((i & 1) + (j & 1)) as u8
    }

    /// Cells in filtration order; `order()[k]` is the cell entering k-th.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Position of a cell in the filtration order.
    #[inline]
    pub fn position(&self, cell: u32) -> u32 {
        self.position[cell as usize]
    }

    /// Codimension-1 faces of a cell, written into `out`; returns the count.
    #[inline]
    pub fn faces(&self, cell: u32, out: &mut [u32; 4]) -> usize {
        let g = self.grid as u32;
        let i = cell / g;
        let j = cell % g;
        match (i & 1, j & 1) {
            (1, 1) => {
                out[0] = cell - g;
                out[1] = cell + g;
                out[2] = cell - 1;
                out[3] = cell + 1;
                4
            }
            (1, 0) => {
                out[0] = cell - g;
                out[1] = cell + g;
                2
            }
            (0, 1) => {
                out[0] = cell - 1;
                out[1] = cell + 1;
                2
            }
            _ => 0,
        }
    }
}

/// Build the lower-star filtration of a patch: squares take pixel depths,
/// lower cells the minimum over incident squares, and the total order is
/// (value, dimension, cell index).
pub fn build_filtration(patch: &Patch) -> CubicalFiltration {
    let s = patch.size();
    let grid = 2 * s + 1;
    let n = grid * grid;
    let mut values = vec![0.0f64; n];
    let mut max_value = f64::NEG_INFINITY;

    for i in 0..grid {
        for j in 0..grid {
            // incident pixel rows/cols: cells with odd coordinate k sit on
            // pixel k/2; even coordinates border pixels k/2-1 and k/2.
            let (r_lo, r_hi) = if i & 1 == 1 {
                (i / 2, i / 2)
            } else {
                ((i / 2).saturating_sub(1), (i / 2).min(s - 1))
            };
            let (c_lo, c_hi) = if j & 1 == 1 {
                (j / 2, j / 2)
            } else {
                ((j / 2).saturating_sub(1), (j / 2).min(s - 1))
            };
            let r_lo = if i & 1 == 0 && i == 0 { 0 } else { r_lo };
            let c_lo = if j & 1 == 0 && j == 0 { 0 } else { c_lo };
            let mut v = f64::INFINITY;
            for r in r_lo..=r_hi.min(s - 1) {
                for c in c_lo..=c_hi.min(s - 1) {
                    v = v.min(patch.get(r, c));
                }
            }
            values[i * grid + j] = v;
            max_value = max_value.max(v);
        }
    }

    let mut order: Vec<u32> = (0..n as u32).collect();
    let dim_of = |cell: u32| {
        let i = cell as usize / grid;
        let j = cell as usize % grid;
        ((i & 1) + (j & 1)) as u8
    };
    order.sort_unstable_by(|&a, &b| {
        values[a as usize]
            .total_cmp(&values[b as usize])
            .then(dim_of(a).cmp(&dim_of(b)))
            .then(a.cmp(&b))
    });
    let mut position = vec![0u32; n];
    for (p, &cell) in order.iter().enumerate() {
        position[cell as usize] = p as u32;
    }

    CubicalFiltration {
        size: s,
        grid,
        values,
        order,
        position,
        max_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_io::Patch;

    #[test]
    fn cell_counts_2x2() {
        let p = Patch::from_values(2, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let f = build_filtration(&p);
        assert_eq!(f.vertex_count(), 9);
        assert_eq!(f.edge_count(), 12);
        assert_eq!(f.square_count(), 4);
        assert_eq!(f.cell_count(), 25);
    }

    #[test]
    fn constant_patch_all_cells_constant() {
        let p = Patch::from_values(3, vec![4.25; 9]).unwrap();
        let f = build_filtration(&p);
        assert!((0..f.cell_count() as u32).all(|c| f.value(c) == 4.25));
    }

    #[test]
    fn min_rule_on_corner() {
        // patch [[0,5],[5,5]]: exactly the 4 vertices and 4 edges incident
        // to pixel (0,0) take value 0, everything else 5
        let p = Patch::from_values(2, vec![0.0, 5.0, 5.0, 5.0]).unwrap();
        let f = build_filtration(&p);
        let grid = 5;
        let mut zeros = Vec::new();
        for i in 0..grid {
            for j in 0..grid {
                if f.value((i * grid + j) as u32) == 0.0 {
                    zeros.push((i, j));
                } else {
                    assert_eq!(f.value((i * grid + j) as u32), 5.0);
                }
            }
        }
        // pixel (0,0) is cell (1,1); its closure is the 3x3 block at (0,0)
        let expect: Vec<(usize, usize)> =
            (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        assert_eq!(zeros, expect);
    }

    #[test]
    fn min_rule_every_cell_leq_cofaces() {
        let vals: Vec<f64> = (0..16).map(|i| ((i * 7) % 11) as f64).collect();
        let p = Patch::from_values(4, vals).unwrap();
        let f = build_filtration(&p);
        let mut faces = [0u32; 4];
        for cell in 0..f.cell_count() as u32 {
            let k = f.faces(cell, &mut faces);
            for &face in &faces[..k] {
                assert!(f.value(face) <= f.value(cell));
            }
        }
    }

    #[test]
    fn order_is_by_value_dim_index() {
        let p = Patch::from_values(2, vec![3.0, 1.0, 2.0, 1.0]).unwrap();
        let f = build_filtration(&p);
        let o = f.order();
        for w in o.windows(2) {
            let (a, b) = (w[0], w[1]);
            let ka = (f.value(a), f.dim(a), a);
            let kb = (f.value(b), f.dim(b), b);
            assert!(ka.0 < kb.0 || (ka.0 == kb.0 && (ka.1, ka.2) < (kb.1, kb.2)));
        }
    }
}
