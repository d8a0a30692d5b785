//! Tropical Plücker vectors on k-subsets, their regular subdivisions of the
//! hypersimplex, and secondary cones.
//!
//! Conventions: minimum, lower faces. Heights P_I that differ by
//! I ↦ Σ_{i∈I} c_i (an n-dimensional lineality space) induce the same
//! subdivision; dimensions of cones are reported modulo that space.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::dissect::{Ambient, Dissection, Provenance};
use crate::error::{Error, Result};
use crate::hull::cone_extreme_rays;
use crate::lediagram::LeDiagram;
use crate::linalg::Matrix;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::perm::DecoratedPermutation;
use crate::plabic::weight_slots;
use crate::polytope::{affine_dimension, normalized_volume};
use crate::positroid::{basis_squares, is_matroid_by_exchange, square_is_face, Positroid};
use crate::scalar::Scalar;
use crate::subsets::{binomial, colex_rank, elements, k_subsets};
use crate::Rat;

/// Which three-term relations a vector satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TropClass {
    /// Some relation has a unique minimum.
    None,
    /// Every relation attains its minimum at least twice.
    Tropical,
    /// Every relation has P_{Sac} + P_{Sbd} = min(P_{Sab} + P_{Scd}, P_{Sad} + P_{Sbc}).
    Positive,
}

/// A rational height for every k-subset of [n], stored in colex order.
#[derive(Clone, Debug)]
pub struct TropPluckerVector {
    k: usize,
    n: usize,
    values: Vec<Rat>,
    class: OnceLock<TropClass>,
}

impl PartialEq for TropPluckerVector {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.values == other.values
    }
}

impl Eq for TropPluckerVector {}

/// A three-term relation (S; a < b < c < d) as the six subsets
/// [Sac, Sbd, Sab, Scd, Sad, Sbc].
fn three_term_relations(k: usize, n: usize) -> Vec<[u32; 6]> {
    if k < 2 || n < 4 || k + 2 > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in k_subsets(n, k - 2) {
        let free: Vec<u32> = (0..n as u32).filter(|&i| s >> i & 1 == 0).map(|i| 1 << i).collect();
        for quad in k_subsets(free.len(), 4) {
            let q: Vec<u32> = (0..free.len()).filter(|&i| quad >> i & 1 == 1).map(|i| free[i]).collect();
            let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
            out.push([s | a | c, s | b | d, s | a | b, s | c | d, s | a | d, s | b | c]);
        }
    }
    out
}

/// Argmin pattern of one relation: bit 0 for the Sac+Sbd sum, bit 1 for
/// Sab+Scd, bit 2 for Sad+Sbc.
fn relation_pattern(sums: [Rat; 3]) -> u8 {
    let min = sums.iter().min().expect("three sums").clone();
    (0..3).filter(|&i| sums[i] == min).fold(0, |m, i| m | 1 << i)
}

impl TropPluckerVector {
    /// Heights in colex order of k-subsets.
    pub fn new(k: usize, n: usize, values: Vec<Rat>) -> Result<Self> {
        if k == 0 || k >= n || n > 31 {
            return Err(Error::InvalidArgument(format!("need 1 ≤ k ≤ n−1 and n ≤ 31, got k = {k}, n = {n}")));
        }
        let expected = binomial(n, k) as usize;
        if values.len() != expected {
            return Err(Error::InvalidArgument(format!("expected {expected} values, got {}", values.len())));
        }
        Ok(TropPluckerVector { k, n, values, class: OnceLock::new() })
    }

    pub fn zero(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, vec![Rat::zero(); binomial(n, k) as usize])
    }

    /// Heights given as a function of the subset mask.
    pub fn from_fn(k: usize, n: usize, f: impl Fn(u32) -> Rat) -> Result<Self> {
        Self::new(k, n, k_subsets(n, k).into_iter().map(f).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Height of the subset with bitmask `mask`.
    pub fn get(&self, mask: u32) -> &Rat {
        &self.values[colex_rank(mask)]
    }

    /// Argmin pattern of every three-term relation, in a fixed order.
    pub fn pattern(&self) -> Vec<u8> {
        three_term_relations(self.k, self.n)
            .into_iter()
            .map(|r| {
                let h = |i: usize| self.get(r[i]).clone();
                relation_pattern([h(0) + h(1), h(2) + h(3), h(4) + h(5)])
            })
            .collect()
    }

    pub fn classify(&self) -> TropClass {
        *self.class.get_or_init(|| {
            let mut class = TropClass::Positive;
            for p in self.pattern() {
                if p.count_ones() < 2 {
                    return TropClass::None;
                }
                if p & 1 == 0 {
                    class = TropClass::Tropical;
                }
            }
            class
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.k, self.n, self.values.iter().map(|v| v * c).collect()).expect("same shape")
    }

    /// P_I + Σ_{i∈I} c_i, a move along the lineality space.
    pub fn translate(&self, c: &[Rat]) -> Self {
        let values = k_subsets(self.n, self.k)
            .into_iter()
            .zip(&self.values)
            .map(|(s, v)| elements(s).iter().fold(v.clone(), |acc, &i| acc + &c[i - 1]))
            .collect();
        Self::new(self.k, self.n, values).expect("same shape")
    }

    /// Heights after relabeling the ground set by `sigma` (0-based images).
    pub fn relabel(&self, sigma: &[usize]) -> Self {
        Self::from_fn(self.k, self.n, |s| {
            let pre = (0..self.n).filter(|&i| s >> sigma[i] & 1 == 1).fold(0u32, |m, i| m | 1 << i);
            self.get(pre).clone()
        })
        .expect("same shape")
    }

    /// One line per subset: 1-based elements then the height as p/q.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, v) in k_subsets(self.n, self.k).into_iter().zip(&self.values) {
            let els: Vec<String> = elements(s).iter().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "{}  {}", els.join(" "), v);
        }
        out
    }

    /// Parses the line format of [`to_text`](Self::to_text); lines may come
    /// in any order, blank lines and `#` comments are ignored.
    pub fn from_text(k: usize, n: usize, text: &str) -> Result<Self> {
        let mut values: Vec<Option<Rat>> = vec![None; binomial(n, k) as usize];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != k + 1 {
                return Err(Error::Parse(format!("line {}: expected {} subset elements and a value", lineno + 1, k)));
            }
            let mut mask = 0u32;
            for t in &toks[..k] {
                let e: usize = t.parse().map_err(|_| Error::Parse(format!("line {}: bad element {t}", lineno + 1)))?;
                if e == 0 || e > n || mask >> (e - 1) & 1 == 1 {
                    return Err(Error::Parse(format!("line {}: element {e} out of range or repeated", lineno + 1)));
                }
                mask |= 1 << (e - 1);
            }
            let v: Rat = toks[k].parse().map_err(|_| Error::Parse(format!("line {}: bad value {}", lineno + 1, toks[k])))?;
            let slot = &mut values[colex_rank(mask)];
            if slot.is_some() {
                return Err(Error::Parse(format!("line {}: subset repeated", lineno + 1)));
            }
            *slot = Some(v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Parse(format!("missing value for subset #{i} in colex order"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, n, values)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "n": self.n,
            "values": k_subsets(self.n, self.k)
                .into_iter()
                .zip(&self.values)
                .map(|(s, v)| serde_json::json!({"subset": elements(s), "value": v.to_string()}))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("tropical vector JSON: {m}"));
        let k = v["k"].as_u64().ok_or_else(|| bad("missing k"))? as usize;
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let mut text = String::new();
        for e in v["values"].as_array().ok_or_else(|| bad("missing values"))? {
            let subset = e["subset"].as_array().ok_or_else(|| bad("missing subset"))?;
            for x in subset {
                let _ = write!(text, "{} ", x.as_u64().ok_or_else(|| bad("bad element"))?);
            }
            let _ = writeln!(text, "{}", e["value"].as_str().ok_or_else(|| bad("value must be a string p/q"))?);
        }
        Self::from_text(k, n, &text)
    }
}

/// Min-cost flow on a small directed graph with unit capacities.
struct FlowGraph {
    // (to, capacity, cost, reverse index)
    adj: Vec<Vec<(usize, i32, Rat, usize)>>,
}

impl FlowGraph {
    fn new(nodes: usize) -> Self {
        FlowGraph { adj: vec![Vec::new(); nodes] }
    }

    fn add_edge(&mut self, u: usize, v: usize, cost: Rat) {
        let ru = self.adj[v].len();
        let rv = self.adj[u].len();
        self.adj[u].push((v, 1, cost.clone(), ru));
        self.adj[v].push((u, 0, -cost, rv));
    }

    /// Cost of the cheapest flow of `amount` units from `s` to `t`, by
    /// successive Bellman–Ford shortest paths; None when infeasible.
    fn min_cost(&mut self, s: usize, t: usize, amount: usize) -> Option<Rat> {
        let m = self.adj.len();
        let mut total = Rat::zero();
        for _ in 0..amount {
            let mut dist: Vec<Option<Rat>> = vec![None; m];
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; m];
            dist[s] = Some(Rat::zero());
            for _ in 0..m {
                let mut changed = false;
                for u in 0..m {
                    let Some(du) = dist[u].clone() else { continue };
                    for (ei, (v, cap, cost, _)) in self.adj[u].iter().enumerate() {
                        if *cap > 0 {
                            let nd = &du + cost;
                            if dist[*v].as_ref().map_or(true, |dv| nd < *dv) {
                                dist[*v] = Some(nd);
                                prev[*v] = Some((u, ei));
                                changed = true;
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            let d = dist[t].clone()?;
            total += d;
            let mut v = t;
            while let Some((u, ei)) = prev[v] {
                let rev = self.adj[u][ei].3;
                self.adj[u][ei].1 -= 1;
                self.adj[v][rev].1 += 1;
                v = u;
            }
        }
        Some(total)
    }
}

/// Tropicalized Plücker coordinates of the Le-network of `d` with edge
/// weights `w` (one per plus, in slot order): for each k-subset I, the least
/// total weight of a vertex-disjoint path family from the sources to I, or
/// None when no such family exists.
pub fn min_plus_minors(d: &LeDiagram, w: &[Rat]) -> Vec<Option<Rat>> {
    let k = d.k();
    let n = d.n();
    let slots = weight_slots(d);
    let sources = d.row_labels();
    let cols = d.column_labels();
    let width = d.width();
    // Nodes: 0 = super source, 1 = super sink, sources, sinks, plus in/out.
    let plus_index: Vec<Vec<Option<usize>>> = {
        let mut next = 0;
        (0..k)
            .map(|r| {
                (0..d.row_len(r))
                    .map(|c| {
                        d.plus(r, c).then(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let n_plus = d.dimension();
    let src = |r: usize| 2 + r;
    let sink = |j: usize| 2 + k + (j - 1);
    let pin = |p: usize| 2 + k + n + 2 * p;
    let pout = |p: usize| 2 + k + n + 2 * p + 1;
    let nodes = 2 + k + n + 2 * n_plus;
    let mut base = FlowGraph::new(nodes);
    for r in 0..k {
        base.add_edge(0, src(r), Rat::zero());
        base.add_edge(src(r), sink(sources[r]), Rat::zero());
        let mut prev: Option<usize> = None;
        for c in (0..d.row_len(r)).rev() {
            let Some(p) = plus_index[r][c] else { continue };
            let cost = w[slots[r][c].expect("plus has a slot")].clone();
            match prev {
                None => base.add_edge(src(r), pin(p), cost),
                Some(q) => base.add_edge(pout(q), pin(p), cost),
            }
            base.add_edge(pin(p), pout(p), Rat::zero());
            prev = Some(p);
        }
    }
    for c in 0..width {
        let column: Vec<usize> = (0..k).filter_map(|r| (c < d.row_len(r)).then(|| plus_index[r][c]).flatten()).collect();
        for pair in column.windows(2) {
            base.add_edge(pout(pair[0]), pin(pair[1]), Rat::zero());
        }
        if let Some(&low) = column.last() {
            base.add_edge(pout(low), sink(cols[c]), Rat::zero());
        }
    }
    k_subsets(n, k)
        .into_iter()
        .map(|s| {
            let mut g = FlowGraph { adj: base.adj.clone() };
            for j in elements(s) {
                g.add_edge(sink(j), 1, Rat::zero());
            }
            g.min_cost(0, 1, k)
        })
        .collect()
}

/// Bound on numerators and denominators of sampled weights.
pub const SAMPLE_BOUND: i64 = 10_000;

/// A positive tropical Plücker vector: min-plus minors of the top-cell
/// network at random rational edge weights.
pub fn sample_positive(k: usize, n: usize, seed: u64) -> Result<TropPluckerVector> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let d = LeDiagram::from_permutation(&DecoratedPermutation::top_cell(k, n));
    let w: Vec<Rat> = (0..d.dimension())
        .map(|_| Rat::new(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND).into(), rng.gen_range(1..=SAMPLE_BOUND).into()))
        .collect();
    positive_from_weights(k, n, &w)
}

/// The positive vector of the top-cell network at the given edge weights.
pub fn positive_from_weights(k: usize, n: usize, w: &[Rat]) -> Result<TropPluckerVector> {
    let d = LeDiagram::from_permutation(&DecoratedPermutation::top_cell(k, n));
    if w.len() != d.dimension() {
        return Err(Error::InvalidArgument(format!("expected {} weights, got {}", d.dimension(), w.len())));
    }
    let values = min_plus_minors(&d, w)
        .into_iter()
        .map(|v| v.ok_or_else(|| Error::InvalidArgument("top cell has every subset as a basis".into())))
        .collect::<Result<Vec<_>>>()?;
    TropPluckerVector::new(k, n, values)
}

/// A regular subdivision of Δ_{k,n}: maximal cells as sorted basis lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub k: usize,
    pub n: usize,
    pub cells: Vec<Vec<u32>>,
}

/// Lifted coordinates (x_1, …, x_{n−1}, P_I) of every vertex of Δ_{k,n}.
fn lifted_points(p: &TropPluckerVector) -> (Vec<u32>, Vec<Vec<Rat>>) {
    let subsets = k_subsets(p.n, p.k);
    let pts = subsets
        .iter()
        .zip(&p.values)
        .map(|(&s, v)| {
            let mut x: Vec<Rat> = (0..p.n - 1).map(|i| Rat::int((s >> i & 1) as i64)).collect();
            x.push(v.clone());
            x
        })
        .collect();
    (subsets, pts)
}

/// Lower faces of conv{(e_I, P_I)}, projected back to Δ_{k,n}.
pub fn subdivision(p: &TropPluckerVector) -> Result<Subdivision> {
    let (subsets, pts) = lifted_points(p);
    let n = p.n;
    let lifted_dim = Matrix::from_rows(pts.iter().map(|x| x.iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect::<Vec<Vec<Rat>>>()).rank();
    if lifted_dim < n {
        return Ok(Subdivision { k: p.k, n, cells: vec![subsets] });
    }
    // Facet normals (a, β) with a·v ≤ β on all lifted points and a pointing
    // down in the height coordinate.
    let mut rows: Vec<Vec<Rat>> = pts
        .iter()
        .map(|x| {
            let mut r = x.clone();
            r.push(-Rat::one());
            r
        })
        .collect();
    let mut up = vec![Rat::zero(); n + 1];
    up[n - 1] = Rat::one();
    rows.push(up);
    let rays = cone_extreme_rays(&rows)?;
    let mut cells: Vec<Vec<u32>> = rays
        .into_iter()
        .filter(|ray| ray[n - 1].is_negative())
        .map(|ray| {
            let mut cell: Vec<u32> = pts
                .iter()
                .zip(&subsets)
                .filter(|(x, _)| {
                    let v: Rat = x.iter().zip(&ray[..n]).map(|(a, b)| a * b).sum();
                    v == ray[n]
                })
                .map(|(_, &s)| s)
                .collect();
            cell.sort_unstable();
            cell
        })
        .collect();
    cells.sort();
    cells.dedup();
    Ok(Subdivision { k: p.k, n, cells })
}

/// What the certifiers found on a subdivision.
#[derive(Clone, Debug, Serialize)]
pub struct SubdivisionReport {
    pub cells: usize,
    pub volume_conserved: bool,
    /// Every maximal cell and every pairwise intersection of maximal cells
    /// is a matroid polytope.
    pub matroidal: bool,
    pub positroidal: bool,
    /// A face that is not a positroid polytope, with a forbidden square
    /// {Sab, Sad, Sbc, Scd} that is a 2-face of it.
    pub non_positroid_face: Option<(Vec<u32>, [u32; 4])>,
    /// Every codimension-one interior face is labeled by a loopless cell.
    pub interior_facets_loopless: bool,
}

impl Subdivision {
    /// Cells as a dissection when every cell is a positroid.
    pub fn to_dissection(&self) -> Result<Dissection> {
        let labels = self
            .cells
            .iter()
            .map(|c| Positroid::from_bases(self.n, c.clone())?.label_of())
            .collect::<Result<Vec<_>>>()?;
        Dissection::new(Ambient::Hypersimplex { k1: self.k, n: self.n }, labels, Provenance::Tropical)
    }

    /// Maximal cells and the pairwise intersections of maximal cells that
    /// have at least two vertices.
    pub fn faces(&self) -> Vec<Vec<u32>> {
        let mut faces: BTreeSet<Vec<u32>> = self.cells.iter().cloned().collect();
        for (i, a) in self.cells.iter().enumerate() {
            for b in &self.cells[i + 1..] {
                let common: Vec<u32> = a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect();
                if common.len() > 1 {
                    faces.insert(common);
                }
            }
        }
        faces.into_iter().collect()
    }

    pub fn certify(&self) -> SubdivisionReport {
        let n = self.n;
        let volume: u64 = self.cells.iter().map(|c| normalized_volume(n, c)).sum();
        let volume_conserved = volume == crate::polytope::hypersimplex_volume(self.k, n);
        let mut matroidal = true;
        let mut positroidal = true;
        let mut non_positroid_face = None;
        for f in self.faces() {
            if !is_matroid_by_exchange(&f) {
                matroidal = false;
                positroidal = false;
                continue;
            }
            if Positroid::from_bases(n, f.clone()).and_then(|m| m.label_of()).is_err() {
                positroidal = false;
                if non_positroid_face.is_none() {
                    if let Some(sq) = basis_squares(n, &f).into_iter().find(|&sq| square_is_face(n, &f, sq)) {
                        non_positroid_face = Some((f.clone(), sq));
                    }
                }
            }
        }
        let mut interior_facets_loopless = true;
        for (i, a) in self.cells.iter().enumerate() {
            for b in &self.cells[i + 1..] {
                let common: Vec<u32> = a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect();
                if common.len() >= n - 1 && affine_dimension(n, &common) + 2 == n {
                    let loopless = Positroid::from_bases(n, common)
                        .and_then(|m| m.label_of())
                        .map(|l| l.is_loopless())
                        .unwrap_or(false);
                    interior_facets_loopless &= loopless;
                }
            }
        }
        SubdivisionReport {
            cells: self.cells.len(),
            volume_conserved,
            matroidal,
            positroidal,
            non_positroid_face,
            interior_facets_loopless,
        }
    }
}

/// Secondary cone of a subdivision of Δ_{k,n} given by its maximal cells:
/// heights that are affine on every cell and strictly above each cell's
/// affine function off the cell.
#[derive(Clone, Debug)]
pub struct SecondaryCone {
    pub k: usize,
    pub n: usize,
    /// Basis of the linear span of the cone, as height vectors in colex order.
    pub span: Vec<Vec<Rat>>,
    /// Dimension of the span minus the n-dimensional lineality space.
    pub dimension: usize,
    /// A height vector in the relative interior; None when the subdivision
    /// is not regular.
    pub interior_point: Option<TropPluckerVector>,
}

impl SecondaryCone {
    pub fn is_regular(&self) -> bool {
        self.interior_point.is_some()
    }
}

/// Linear space of heights affine on every cell, with the matching affine
/// functions: rows are (h, a_1, …, a_m) in the nullspace.
fn affine_on_cells(k: usize, n: usize, cells: &[Vec<u32>]) -> Vec<Vec<Rat>> {
    let subsets = k_subsets(n, k);
    let nh = subsets.len();
    let nv = nh + n * cells.len();
    let mut rows = Vec::new();
    for (c, cell) in cells.iter().enumerate() {
        for &b in cell {
            let mut r = vec![Rat::zero(); nv];
            r[colex_rank(b)] = Rat::one();
            for i in 0..n {
                if b >> i & 1 == 1 {
                    r[nh + c * n + i] = -Rat::one();
                }
            }
            rows.push(r);
        }
    }
    if rows.is_empty() {
        return Matrix::<Rat>::identity(nv).to_rows();
    }
    Matrix::from_rows_with_cols(rows, nv).nullspace()
}

/// Dimension of the space of heights affine on every cell, modulo lineality.
pub fn secondary_cone_dimension(k: usize, n: usize, cells: &[Vec<u32>]) -> usize {
    let null = affine_on_cells(k, n, cells);
    let nh = binomial(n, k) as usize;
    let span = Matrix::from_rows_with_cols(null.iter().map(|v| v[..nh].to_vec()).collect(), nh).rank();
    span.saturating_sub(n)
}

/// The secondary cone with a regularity certificate.
pub fn secondary_cone(k: usize, n: usize, cells: &[Vec<u32>]) -> Result<SecondaryCone> {
    let nh = binomial(n, k) as usize;
    let subsets = k_subsets(n, k);
    let null = affine_on_cells(k, n, cells);
    let hspan = Matrix::from_rows_with_cols(null.iter().map(|v| v[..nh].to_vec()).collect(), nh);
    let (rref, pivots) = hspan.rref();
    let span: Vec<Vec<Rat>> = (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect();
    let dimension = span.len().saturating_sub(n);
    // Maximize t subject to h_B − a_c(B) ≥ t off each cell, t ≤ 1, over
    // combinations of the nullspace basis.
    let d = null.len();
    let mut lp = LinearProgram::<Rat>::new(d + 1);
    lp.set_all_free();
    lp.set_upper(d, Rat::one());
    let mut objective = vec![Rat::zero(); d + 1];
    objective[d] = Rat::one();
    lp.set_objective(objective);
    let mut any_row = false;
    for (c, cell) in cells.iter().enumerate() {
        for &b in &subsets {
            if cell.binary_search(&b).is_ok() {
                continue;
            }
            let mut row: Vec<Rat> = null
                .iter()
                .map(|v| {
                    let a: Rat = (0..n).filter(|&i| b >> i & 1 == 1).map(|i| v[nh + c * n + i].clone()).sum();
                    v[colex_rank(b)].clone() - a
                })
                .collect();
            row.push(-Rat::one());
            lp.add_row(row, Relation::Ge, Rat::zero());
            any_row = true;
        }
    }
    let interior_point = if !any_row {
        Some(TropPluckerVector::zero(k, n)?)
    } else {
        match lp.maximize() {
            LpOutcome::Optimal { value, point } if value.is_positive() => {
                let mut h = vec![Rat::zero(); nh];
                for (coef, v) in point[..d].iter().zip(&null) {
                    for (hi, vi) in h.iter_mut().zip(v) {
                        *hi += coef * vi;
                    }
                }
                Some(TropPluckerVector::new(k, n, h)?)
            }
            _ => None,
        }
    };
    Ok(SecondaryCone { k, n, span, dimension, interior_point })
}

/// Whether two vectors have the same argmin pattern on every three-term relation.
pub fn same_cone(p: &TropPluckerVector, q: &TropPluckerVector) -> bool {
    p.k == q.k && p.n == q.n && p.pattern() == q.pattern()
}

/// Secondary cone of a dissection of a hypersimplex.
pub fn dissection_cone(d: &Dissection) -> Result<SecondaryCone> {
    let Ambient::Hypersimplex { k1, n } = d.ambient else {
        return Err(Error::InvalidArgument("secondary cones are taken on the hypersimplex side".into()));
    };
    let cells: Vec<Vec<u32>> = d.cells.iter().map(crate::plabic::cell_bases).collect();
    secondary_cone(k1, n, &cells)
}

/// The dual-polytope f-vector read off from counts of good dissections by
/// cone dimension: a leading 1, then counts from the top dimension down to 0.
pub fn f_vector(top: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![1];
    for d in (0..=top).rev() {
        out.push(dims.iter().filter(|&&x| x == d).count());
    }
    out
}
