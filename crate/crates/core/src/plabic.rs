//! Plabic graphs: construction from Le-diagrams, trips, perfect orientations,
//! and the network parametrization of a cell.
//!
//! Graphs carry an explicit rotation system. Edge `e` owns half-edges `2e`
//! (at `edges[e].0`) and `2e + 1` (at `edges[e].1`); each vertex lists its
//! half-edges counterclockwise. Boundary vertices are labeled clockwise.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::Neg;

use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lediagram::LeDiagram;
use crate::linalg::{det_i128, Matrix};
use crate::perm::DecoratedPermutation;
use crate::scalar::Scalar;
use crate::subsets::{k_subsets, mask_of};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Vertex {
    Boundary { label: usize },
    Black,
    White,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlabicGraph {
    n: usize,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<usize>>,
    #[serde(skip)]
    boundary: Vec<usize>,
    #[serde(skip)]
    position: Vec<usize>,
    #[serde(skip)]
    diagram: Option<LeDiagram>,
}

/// One perfect orientation: `forward[e]` is true when edge `e` points from
/// `edges[e].0` to `edges[e].1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectOrientation {
    pub forward: Vec<bool>,
    pub sources: u32,
}

/// The k×n matrix of boundary measurements of a Le-network, rows indexed by
/// the source labels.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkMatrix<S> {
    pub sources: Vec<usize>,
    pub matrix: Matrix<S>,
}

impl PlabicGraph {
    /// Builds a graph from explicit rotations (counterclockwise half-edge
    /// lists). Checks boundary labels, degrees and that the rotation system,
    /// closed up by the boundary circle, embeds in the sphere.
    pub fn new(
        n: usize,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let bad = |s: String| Err(Error::InvalidArgument(s));
        if n > 32 {
            return bad(format!("n = {n} exceeds 32 boundary vertices"));
        }
        if rotation.len() != vertices.len() {
            return bad("one rotation list per vertex required".into());
        }
        let mut boundary = vec![usize::MAX; n];
        for (v, kind) in vertices.iter().enumerate() {
            if let Vertex::Boundary { label } = *kind {
                if label == 0 || label > n || boundary[label - 1] != usize::MAX {
                    return bad(format!("boundary label {label} is out of range or repeated"));
                }
                if rotation[v].len() != 1 {
                    return bad(format!("boundary vertex {label} must have degree 1"));
                }
                boundary[label - 1] = v;
            }
        }
        if boundary.contains(&usize::MAX) {
            return bad("every label 1..n needs a boundary vertex".into());
        }
        let mut position = vec![usize::MAX; 2 * edges.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                let owner = if h % 2 == 0 { edges.get(h / 2).map(|e| e.0) } else { edges.get(h / 2).map(|e| e.1) };
                if owner != Some(v) || position[h] != usize::MAX {
                    return bad(format!("half-edge {h} misplaced in rotation of vertex {v}"));
                }
                position[h] = i;
            }
        }
        if position.contains(&usize::MAX) {
            return bad("some half-edge is missing from the rotation system".into());
        }
        let g = PlabicGraph { n, vertices, edges, rotation, boundary, position, diagram: None };
        if !g.embeds_in_disk() {
            return bad("rotation system is not a disk embedding".into());
        }
        Ok(g)
    }

    /// Builds a graph whose rotations come from the angle (any monotone
    /// encoding, counterclockwise) at which each half-edge leaves its vertex.
    pub fn from_angles(
        n: usize,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        angles: &[(f64, f64)],
    ) -> Result<Self> {
        let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(Error::InvalidArgument(format!("edge {e} has an unknown endpoint")));
            }
            rotation[a].push(2 * e);
            rotation[b].push(2 * e + 1);
        }
        let angle = |h: usize| if h % 2 == 0 { angles[h / 2].0 } else { angles[h / 2].1 };
        for rot in &mut rotation {
            rot.sort_by(|&x, &y| angle(x).total_cmp(&angle(y)));
        }
        Self::new(n, vertices, edges, rotation)
    }

    /// The graph G(D) of a Le-diagram: hooks east and south from each plus,
    /// trivalent vertices at T-junctions, a black–white pair at crossings of
    /// two hooks, and lollipops at fixed points.
    pub fn from_lediagram(d: &LeDiagram) -> Self {
        const E: f64 = 0.0;
        const NE: f64 = 45.0;
        const N: f64 = 90.0;
        const W: f64 = 180.0;
        const SW: f64 = 225.0;
        const S: f64 = 270.0;

        let n = d.n();
        let k = d.k();
        let mut vertices: Vec<Vertex> = (1..=n).map(|label| Vertex::Boundary { label }).collect();
        let mut edges = Vec::new();
        let mut angles = Vec::new();
        let mut connect = |a: (usize, f64), b: (usize, f64), edges: &mut Vec<(usize, usize)>| {
            edges.push((a.0, b.0));
            angles.push((a.1, b.1));
        };

        // Ports of each plus in directions E, N, W, S; None marks a bend.
        let width = d.width();
        let mut ports: Vec<Vec<Option<[(usize, f64); 4]>>> = vec![vec![None; width]; k];
        let mut internal_edges = Vec::new();
        for r in 0..k {
            for c in 0..d.row_len(r) {
                if !d.plus(r, c) {
                    continue;
                }
                let west = (0..c).any(|cc| d.plus(r, cc));
                let north = (0..r).any(|rr| d.plus(rr, c));
                ports[r][c] = match (west, north) {
                    (false, false) => None,
                    (true, false) => {
                        let v = vertices.len();
                        vertices.push(Vertex::White);
                        Some([(v, E), (usize::MAX, N), (v, W), (v, S)])
                    }
                    (false, true) => {
                        let v = vertices.len();
                        vertices.push(Vertex::Black);
                        Some([(v, E), (v, N), (usize::MAX, W), (v, S)])
                    }
                    (true, true) => {
                        let b = vertices.len();
                        vertices.push(Vertex::Black);
                        vertices.push(Vertex::White);
                        internal_edges.push(((b, SW), (b + 1, NE)));
                        Some([(b, E), (b, N), (b + 1, W), (b + 1, S)])
                    }
                };
            }
        }
        for (a, b) in internal_edges {
            connect(a, b, &mut edges);
        }

        let row_labels = d.row_labels();
        let col_labels = d.column_labels();
        let boundary_port = |label: usize| (label - 1, 0.0);
        // A bend joins its east neighbour directly to its south neighbour.
        let mut bend_east: Vec<Vec<Option<(usize, f64)>>> = vec![vec![None; width]; k];
        for r in 0..k {
            let pluses: Vec<usize> = (0..d.row_len(r)).filter(|&c| d.plus(r, c)).collect();
            if pluses.is_empty() {
                let v = vertices.len();
                vertices.push(Vertex::White);
                connect(boundary_port(row_labels[r]), (v, 0.0), &mut edges);
                continue;
            }
            for (i, &c) in pluses.iter().enumerate() {
                let east = match pluses.get(i + 1) {
                    Some(&c2) => ports[r][c2].expect("east plus has a west edge")[2],
                    None => boundary_port(row_labels[r]),
                };
                match ports[r][c] {
                    Some(p) => connect(p[0], east, &mut edges),
                    None => bend_east[r][c] = Some(east),
                }
            }
        }
        for c in 0..width {
            let pluses: Vec<usize> = (0..k).filter(|&r| d.plus(r, c)).collect();
            if pluses.is_empty() {
                let v = vertices.len();
                vertices.push(Vertex::Black);
                connect(boundary_port(col_labels[c]), (v, 0.0), &mut edges);
                continue;
            }
            for (i, &r) in pluses.iter().enumerate() {
                let south = match pluses.get(i + 1) {
                    Some(&r2) => ports[r2][c].expect("lower plus has a north edge")[1],
                    None => boundary_port(col_labels[c]),
                };
                let top = match ports[r][c] {
                    Some(p) => p[3],
                    None => bend_east[r][c].expect("bend has an east neighbour"),
                };
                connect(top, south, &mut edges);
            }
        }
        let mut g = Self::from_angles(n, vertices, edges, &angles)
            .expect("Le-diagram graphs are planar by construction");
        g.diagram = Some(d.clone());
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// The diagram this graph was built from, if any.
    pub fn diagram(&self) -> Option<&LeDiagram> {
        self.diagram.as_ref()
    }

    fn half_edge_vertex(&self, h: usize) -> usize {
        let (a, b) = self.edges[h / 2];
        if h % 2 == 0 {
            a
        } else {
            b
        }
    }

    fn embeds_in_disk(&self) -> bool {
        // Close the boundary up into a circle and check Euler's formula.
        let nv = self.vertices.len();
        let ne = self.edges.len() + self.n;
        let mut rot = self.rotation.clone();
        let mut ends: Vec<usize> = (0..2 * self.edges.len()).map(|h| self.half_edge_vertex(h)).collect();
        for i in 0..self.n {
            ends.push(self.boundary[i]);
            ends.push(self.boundary[(i + 1) % self.n]);
        }
        // Counterclockwise at a boundary vertex: next, previous, interior.
        for i in 0..self.n {
            let v = self.boundary[i];
            let next = 2 * self.edges.len() + 2 * i;
            let prev = 2 * self.edges.len() + 2 * ((i + self.n - 1) % self.n) + 1;
            rot[v] = vec![next, prev, self.rotation[v][0]];
        }
        let mut pos = vec![0; ends.len()];
        for r in &rot {
            for (i, &h) in r.iter().enumerate() {
                pos[h] = i;
            }
        }
        let mut seen = vec![false; ends.len()];
        let mut faces = 0usize;
        for start in 0..ends.len() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                let t = h ^ 1;
                let v = ends[t];
                let r = &rot[v];
                h = r[(pos[t] + 1) % r.len()];
            }
        }
        let mut uf = UnionFind::new(nv);
        for h in (0..ends.len()).step_by(2) {
            uf.union(ends[h], ends[h + 1]);
        }
        let comps = uf.count();
        nv as isize - ne as isize + faces as isize == 2 * comps as isize
    }

    /// Follows the trip from boundary vertex `i`: maximal right turn at black
    /// vertices, maximal left turn at white ones.
    fn trip_end(&self, i: usize) -> usize {
        let mut h = self.rotation[self.boundary[i - 1]][0];
        loop {
            let t = h ^ 1;
            let v = self.half_edge_vertex(t);
            let rot = &self.rotation[v];
            let deg = rot.len();
            let p = self.position[t];
            h = match self.vertices[v] {
                Vertex::Boundary { label } => return label,
                Vertex::Black => rot[(p + 1) % deg],
                Vertex::White => rot[(p + deg - 1) % deg],
            };
        }
    }

    /// The decorated trip permutation; a fixed point takes the color of the
    /// vertex its boundary edge runs into (black = loop, white = coloop).
    pub fn trip_permutation(&self) -> DecoratedPermutation {
        let window: Vec<usize> = (1..=self.n).map(|i| self.trip_end(i)).collect();
        let coloops: Vec<usize> = (1..=self.n)
            .filter(|&i| {
                let h = self.rotation[self.boundary[i - 1]][0];
                window[i - 1] == i && self.vertices[self.half_edge_vertex(h ^ 1)] == Vertex::White
            })
            .collect();
        DecoratedPermutation::new(window, &coloops).expect("trips form a permutation")
    }

    /// #edges − #black − Σ_white (deg − 1).
    pub fn k_statistic(&self) -> i64 {
        let mut k = self.edges.len() as i64;
        for (v, kind) in self.vertices.iter().enumerate() {
            match kind {
                Vertex::Black => k -= 1,
                Vertex::White => k -= self.rotation[v].len() as i64 - 1,
                Vertex::Boundary { .. } => {}
            }
        }
        k
    }

    /// Number of connected components; each lollipop is its own component.
    pub fn connected_components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.count()
    }

    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.connected_components() == self.vertices.len()
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.connected_components() == 1
    }

    /// All perfect orientations, found by backtracking over the internal
    /// vertices. Exponential in general; intended for small graphs.
    pub fn perfect_orientations(&self) -> Vec<PerfectOrientation> {
        let internal: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| !matches!(self.vertices[v], Vertex::Boundary { .. }))
            .collect();
        let mut choice: Vec<Option<usize>> = vec![None; self.vertices.len()];
        let mut out = Vec::new();
        self.orient_from(&internal, 0, &mut choice, &mut out);
        out
    }

    /// Whether edge half `h` leaves its vertex under the chosen special edge.
    fn leaves(&self, h: usize, choice: &[Option<usize>]) -> Option<bool> {
        let v = self.half_edge_vertex(h);
        let c = choice[v]?;
        match self.vertices[v] {
            Vertex::Black => Some(h == c),
            Vertex::White => Some(h != c),
            Vertex::Boundary { .. } => None,
        }
    }

    fn orient_from(
        &self,
        internal: &[usize],
        idx: usize,
        choice: &mut Vec<Option<usize>>,
        out: &mut Vec<PerfectOrientation>,
    ) {
        if idx == internal.len() {
            self.emit_orientations(choice, out);
            return;
        }
        let v = internal[idx];
        for &c in &self.rotation[v] {
            choice[v] = Some(c);
            let consistent = self.rotation[v].iter().all(|&h| {
                match (self.leaves(h, choice), self.leaves(h ^ 1, choice)) {
                    (Some(a), Some(b)) => a != b,
                    _ => true,
                }
            });
            if consistent {
                self.orient_from(internal, idx + 1, choice, out);
            }
        }
        choice[v] = None;
    }

    fn emit_orientations(&self, choice: &[Option<usize>], out: &mut Vec<PerfectOrientation>) {
        let mut forward = vec![false; self.edges.len()];
        let mut free = Vec::new();
        for e in 0..self.edges.len() {
            match (self.leaves(2 * e, choice), self.leaves(2 * e + 1, choice)) {
                (Some(a), _) => forward[e] = a,
                (None, Some(b)) => forward[e] = !b,
                (None, None) => free.push(e),
            }
        }
        for bits in 0..1u64 << free.len() {
            for (j, &e) in free.iter().enumerate() {
                forward[e] = bits >> j & 1 == 1;
            }
            let mut sources = 0u32;
            for i in 0..self.n {
                let h = self.rotation[self.boundary[i]][0];
                let leaves_boundary = if h % 2 == 0 { forward[h / 2] } else { !forward[h / 2] };
                if leaves_boundary {
                    sources |= 1 << i;
                }
            }
            out.push(PerfectOrientation { forward: forward.clone(), sources });
        }
    }

    /// Source sets of all perfect orientations, sorted.
    pub fn orientation_bases(&self) -> Result<Vec<u32>> {
        let set: BTreeSet<u32> = self.perfect_orientations().into_iter().map(|o| o.sources).collect();
        if set.is_empty() {
            return Err(Error::NotOrientable);
        }
        Ok(set.into_iter().collect())
    }

    /// Bases of the positroid of the graph. Graphs built from a Le-diagram use
    /// exact minors of the network matrix; others enumerate orientations.
    pub fn bases(&self) -> Result<Vec<u32>> {
        match &self.diagram {
            Some(d) => Ok(minor_bases(d)),
            None => self.orientation_bases(),
        }
    }

    /// Graphviz rendering: boundary vertices as labeled boxes, black and
    /// white vertices as filled and empty circles.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph plabic {\n  node [shape=circle, label=\"\", width=0.2];\n");
        for (v, kind) in self.vertices.iter().enumerate() {
            let attrs = match kind {
                Vertex::Boundary { label } => format!("shape=box, label=\"{label}\""),
                Vertex::Black => "style=filled, fillcolor=black".to_string(),
                Vertex::White => "style=filled, fillcolor=white".to_string(),
            };
            let _ = writeln!(s, "  v{v} [{attrs}];");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  v{a} -- v{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serializes")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Weight slot of each plus: rows top to bottom, pluses east to west. The
/// slot belongs to the horizontal edge entering the plus from the east.
pub fn weight_slots(d: &LeDiagram) -> Vec<Vec<Option<usize>>> {
    let mut next = 0;
    let mut slots = Vec::with_capacity(d.k());
    for r in 0..d.k() {
        let mut row = vec![None; d.row_len(r)];
        for c in (0..d.row_len(r)).rev() {
            if d.plus(r, c) {
                row[c] = Some(next);
                next += 1;
            }
        }
        slots.push(row);
    }
    slots
}

/// Signed path sums of the Le-network, one row per source, generic over any
/// commutative ring.
pub fn boundary_measurements<T>(d: &LeDiagram, weights: &[T]) -> Vec<Vec<T>>
where
    T: Clone + Num + Neg<Output = T>,
{
    let k = d.k();
    let n = d.n();
    let width = d.width();
    let slots = weight_slots(d);
    let sources = d.row_labels();
    let cols = d.column_labels();
    let mut out = Vec::with_capacity(k);
    for r0 in 0..k {
        let mut f: Vec<Vec<T>> = (0..k).map(|r| vec![T::zero(); d.row_len(r)]).collect();
        for r in r0..k {
            let mut east: Option<T> = if r == r0 { Some(T::one()) } else { None };
            for c in (0..d.row_len(r)).rev() {
                if !d.plus(r, c) {
                    continue;
                }
                let a = weights[slots[r][c].expect("plus has a slot")].clone();
                let mut v = match &east {
                    Some(x) => x.clone() * a,
                    None => T::zero(),
                };
                if let Some(rr) = (r0..r).rev().find(|&rr| d.plus(rr, c)) {
                    v = v + f[rr][c].clone();
                }
                f[r][c] = v.clone();
                east = Some(v);
            }
        }
        let mut row = vec![T::zero(); n];
        row[sources[r0] - 1] = T::one();
        for c in 0..width {
            let Some(low) = (r0..k).rev().find(|&r| d.plus(r, c)) else { continue };
            let j = cols[c];
            let between = sources.iter().filter(|&&s| sources[r0] < s && s < j).count();
            let v = f[low][c].clone();
            row[j - 1] = if between % 2 == 0 { v } else { -v };
        }
        out.push(row);
    }
    out
}

/// The network matrix at positive edge weights, one per plus in the order of
/// [`weight_slots`].
pub fn network_matrix<S: Scalar>(d: &LeDiagram, weights: &[S]) -> Result<NetworkMatrix<S>> {
    if weights.len() != d.dimension() {
        return Err(Error::InvalidArgument(format!(
            "expected {} edge weights, got {}",
            d.dimension(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| w.sign() <= 0) {
        return Err(Error::InvalidArgument("edge weights must be positive".into()));
    }
    let rows = boundary_measurements(d, weights);
    Ok(NetworkMatrix { sources: d.row_labels(), matrix: Matrix::from_rows_with_cols(rows, d.n()) })
}

/// Integer network matrix with every weight equal to one.
pub fn unit_network_matrix(d: &LeDiagram) -> Vec<Vec<i128>> {
    boundary_measurements(d, &vec![1i128; d.dimension()])
}

/// k-subsets whose minor of the unit network matrix is nonzero, sorted.
pub fn minor_bases(d: &LeDiagram) -> Vec<u32> {
    let m = unit_network_matrix(d);
    let mut out: Vec<u32> = k_subsets(d.n(), d.k())
        .into_iter()
        .filter(|&mask| {
            let cols: Vec<usize> = (0..d.n()).filter(|&j| mask >> j & 1 == 1).collect();
            let sub: Vec<Vec<i128>> = m.iter().map(|row| cols.iter().map(|&j| row[j]).collect()).collect();
            det_i128(sub) != 0
        })
        .collect();
    out.sort_unstable();
    out
}

/// Bases of the cell labeled by `p`.
pub fn cell_bases(p: &DecoratedPermutation) -> Vec<u32> {
    minor_bases(&LeDiagram::from_permutation(p))
}

/// Source labels as a bitmask, for comparing with orientation source sets.
pub fn source_mask(d: &LeDiagram) -> u32 {
    mask_of(&d.row_labels())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn figure_diagram() -> LeDiagram {
        LeDiagram::from_strings(4, 10, &["0+0+0", "+++++", "000", "++"]).unwrap()
    }

    fn diagrams_in_box(k: usize, n: usize) -> Vec<LeDiagram> {
        LeDiagram::all(k, n)
    }

    #[test]
    fn figure_graph_trip_and_k() {
        let g = PlabicGraph::from_lediagram(&figure_diagram());
        assert_eq!(g.trip_permutation().to_string(), "(1_,5,4,9,7,6~,2,10,3,8)");
        assert_eq!(g.edges().len(), 21);
        let blacks = g.vertices().iter().filter(|v| **v == Vertex::Black).count();
        assert_eq!(blacks, 5);
        assert_eq!(g.k_statistic(), 4);
    }

    #[test]
    fn figure_graph_has_orientation_with_listed_sources() {
        let g = PlabicGraph::from_lediagram(&figure_diagram());
        let bases = g.orientation_bases().unwrap();
        assert!(bases.contains(&mask_of(&[2, 3, 6, 8])));
        assert_eq!(bases, minor_bases(&figure_diagram()));
    }

    #[test]
    fn empty_diagram_gives_lollipops() {
        let d = LeDiagram::empty(2, 5, &[3, 1]).unwrap();
        let g = PlabicGraph::from_lediagram(&d);
        assert_eq!(g.edges().len(), 5);
        assert_eq!(g.connected_components(), 5);
        let p = g.trip_permutation();
        assert!((1..=5).all(|i| p.at(i) == i));
        assert_eq!(p.coloop_mask(), mask_of(&d.row_labels()));
        assert_eq!(g.orientation_bases().unwrap(), vec![p.coloop_mask()]);
    }

    #[test]
    fn black_lollipops_have_k_zero() {
        let d = LeDiagram::empty(0, 4, &[]).unwrap();
        let g = PlabicGraph::from_lediagram(&d);
        assert_eq!(g.k_statistic(), 0);
        assert!(g.trip_permutation().is_coloopless());
    }

    #[test]
    fn full_two_by_two() {
        let d = LeDiagram::from_strings(2, 4, &["++", "++"]).unwrap();
        let g = PlabicGraph::from_lediagram(&d);
        let internal = g.vertices().iter().filter(|v| !matches!(v, Vertex::Boundary { .. })).count();
        assert_eq!(internal, 4);
        assert_eq!(g.trip_permutation().window(), &[3, 4, 1, 2]);
        assert_eq!(g.bases().unwrap().len(), 6);
    }

    #[test]
    fn single_box_is_a_chord() {
        let d = LeDiagram::from_strings(1, 2, &["+"]).unwrap();
        let g = PlabicGraph::from_lediagram(&d);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.trip_permutation().window(), &[2, 1]);
        assert_eq!(g.k_statistic(), 1);
        assert_eq!(g.orientation_bases().unwrap(), vec![0b01, 0b10]);
    }

    #[test]
    fn trip_matches_pipe_dream_in_four_by_four_box() {
        for n in 1..=8 {
            for k in 0..=n {
                if k > 4 || n - k > 4 {
                    continue;
                }
                for d in diagrams_in_box(k, n) {
                    let g = PlabicGraph::from_lediagram(&d);
                    assert_eq!(g.trip_permutation(), d.to_permutation(), "{d}");
                    assert_eq!(g.k_statistic(), k as i64);
                }
            }
        }
    }

    #[test]
    fn bases_by_orientations_match_minors() {
        for n in 1..=6 {
            for k in 0..=n {
                for d in diagrams_in_box(k, n) {
                    let g = PlabicGraph::from_lediagram(&d);
                    let by_orientation = g.orientation_bases().unwrap();
                    assert_eq!(by_orientation, minor_bases(&d), "{d}");
                    assert!(by_orientation.contains(&source_mask(&d)));
                    for o in g.perfect_orientations() {
                        assert_eq!(o.sources.count_ones() as usize, k);
                    }
                }
            }
        }
    }

    #[test]
    fn components_match_interval_components() {
        for n in 1..=6 {
            for k in 0..=n {
                for d in diagrams_in_box(k, n) {
                    let g = PlabicGraph::from_lediagram(&d);
                    let p = d.to_permutation();
                    assert_eq!(g.connected_components(), p.cyclic_interval_components(), "{p}");
                    let tree_expected = d.dimension() == n - 1 && g.connected_components() == 1;
                    assert_eq!(g.is_tree(), tree_expected, "{p}");
                }
            }
        }
    }

    #[test]
    fn two_component_example() {
        let p: DecoratedPermutation = "(5,3,4,2,6,7,1)".parse().unwrap();
        let g = PlabicGraph::from_lediagram(&LeDiagram::from_permutation(&p));
        assert_eq!(g.connected_components(), 2);
        assert!(g.is_forest());
    }

    fn square(colors: [Vertex; 4]) -> PlabicGraph {
        // Boundary 1..4 at N, E, S, W; square vertices just inside.
        let mut vertices: Vec<Vertex> = (1..=4).map(|label| Vertex::Boundary { label }).collect();
        vertices.extend(colors);
        let dir = [90.0, 0.0, 270.0, 180.0];
        let mut edges = Vec::new();
        let mut angles = Vec::new();
        for j in 0..4 {
            edges.push((j, 4 + j));
            angles.push((0.0, dir[j]));
        }
        for j in 0..4 {
            let a = 4 + j;
            let b = 4 + (j + 1) % 4;
            // Chord to the clockwise neighbour, seen from both ends.
            edges.push((a, b));
            angles.push((dir[j] - 135.0 + 360.0, dir[(j + 1) % 4] + 135.0));
        }
        let angles: Vec<(f64, f64)> = angles.into_iter().map(|(a, b): (f64, f64)| (a.rem_euclid(360.0), b.rem_euclid(360.0))).collect();
        PlabicGraph::from_angles(4, vertices, edges, &angles).unwrap()
    }

    #[test]
    fn square_move_preserves_trip() {
        use Vertex::{Black as B, White as W};
        let g1 = square([B, W, B, W]);
        let g2 = square([W, B, W, B]);
        assert_eq!(g1.trip_permutation().window(), &[3, 4, 1, 2]);
        assert_eq!(g1.trip_permutation(), g2.trip_permutation());
        assert_eq!(g1.orientation_bases().unwrap(), g2.orientation_bases().unwrap());
        assert_eq!(g1.k_statistic(), 2);
    }

    /// Splits internal vertex v into two same-colored vertices joined by an
    /// edge, the first keeping rotation slots [0, at).
    fn split(g: &PlabicGraph, v: usize, at: usize) -> PlabicGraph {
        let mut vertices = g.vertices().to_vec();
        let mut edges = g.edges().to_vec();
        let mut rotation = g.rotation().to_vec();
        let w = vertices.len();
        vertices.push(vertices[v]);
        let moved: Vec<usize> = rotation[v].split_off(at);
        for &h in &moved {
            let e = &mut edges[h / 2];
            if h % 2 == 0 {
                e.0 = w;
            } else {
                e.1 = w;
            }
        }
        let ne = edges.len();
        edges.push((v, w));
        rotation[v].push(2 * ne);
        let mut rw = vec![2 * ne + 1];
        rw.extend(moved);
        rotation.push(rw);
        PlabicGraph::new(g.n(), vertices, edges, rotation).unwrap()
    }

    #[test]
    fn contraction_move_preserves_trip() {
        let d = figure_diagram();
        let g = PlabicGraph::from_lediagram(&d);
        let mut checked = 0;
        for v in 0..g.vertices().len() {
            if matches!(g.vertices()[v], Vertex::Boundary { .. }) || g.rotation()[v].len() < 3 {
                continue;
            }
            for at in 2..g.rotation()[v].len() {
                let h = split(&g, v, at);
                assert_eq!(h.trip_permutation(), g.trip_permutation());
                assert_eq!(h.k_statistic(), g.k_statistic());
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn rejects_twisted_rotation() {
        let g = PlabicGraph::from_lediagram(&LeDiagram::from_strings(2, 4, &["++", "++"]).unwrap());
        let mut rotation = g.rotation().to_vec();
        let v = (0..rotation.len()).find(|&v| rotation[v].len() == 3).unwrap();
        rotation[v].swap(0, 1);
        assert!(PlabicGraph::new(4, g.vertices().to_vec(), g.edges().to_vec(), rotation).is_err());
    }

    fn figure_entries(a: &[Rat]) -> [(usize, usize, Rat); 3] {
        let p = |i: usize| a[i - 1].clone();
        [
            (2, 7, p(1) * p(5)),
            (3, 10, p(3) * p(4) * p(5) * p(6) * (p(7) + p(9))),
            (2, 10, -(p(1) * (p(2) + p(5) * p(6)) * (p(7) + p(9)))),
        ]
    }

    #[test]
    fn figure_network_entries() {
        let d = figure_diagram();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let a: Vec<Rat> = (0..9).map(|_| Rat::new(rng.gen_range(1..50).into(), rng.gen_range(1..20).into())).collect();
            let nm = network_matrix(&d, &a).unwrap();
            assert_eq!(nm.sources, vec![2, 3, 6, 8]);
            for (s, j, want) in figure_entries(&a) {
                let row = nm.sources.iter().position(|&x| x == s).unwrap();
                assert_eq!(nm.matrix[(row, j - 1)], want);
            }
            let row8 = nm.matrix.row(3).to_vec();
            assert_eq!(row8[9], a[7].clone() * a[8].clone());
        }
    }

    #[test]
    fn empty_diagram_network_is_coordinate_rows() {
        let d = LeDiagram::empty(2, 5, &[2, 0]).unwrap();
        let nm = network_matrix::<Rat>(&d, &[]).unwrap();
        for (r, &s) in nm.sources.iter().enumerate() {
            for j in 1..=5 {
                let want = if j == s { 1 } else { 0 };
                assert_eq!(nm.matrix[(r, j - 1)], Rat::from_integer(want.into()));
            }
        }
    }

    #[test]
    fn basis_minors_are_positive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for d in LeDiagram::all(3, 6) {
            let a: Vec<Rat> = (0..d.dimension()).map(|_| Rat::from_integer(rng.gen_range(1..9).into())).collect();
            let nm = network_matrix(&d, &a).unwrap();
            for mask in minor_bases(&d) {
                let cols: Vec<usize> = (0..6).filter(|&j| mask >> j & 1 == 1).collect();
                assert!(nm.matrix.maximal_minor(&cols) > Rat::from_integer(0.into()), "{d}");
            }
        }
    }

    #[test]
    fn json_and_dot_exports() {
        let g = PlabicGraph::from_lediagram(&figure_diagram());
        let j = g.to_json();
        assert_eq!(j["n"], 10);
        assert_eq!(j["edges"].as_array().unwrap().len(), 21);
        assert!(g.to_dot().contains("label=\"10\""));
    }

    proptest! {
        #[test]
        fn random_cells_round_trip_through_graph(seed in any::<u64>(), n in 1usize..9) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let p = DecoratedPermutation::random(n, &mut rng);
            let g = PlabicGraph::from_lediagram(&LeDiagram::from_permutation(&p));
            prop_assert_eq!(g.trip_permutation(), p.clone());
            prop_assert_eq!(g.k_statistic(), p.k() as i64);
        }
    }
}
