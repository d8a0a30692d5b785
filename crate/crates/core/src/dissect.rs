//! Dissections and triangulations of the hypersimplex, their T-dual images in
//! the m = 2 amplituhedron, generalized triangles and polygon collections.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::f64::consts::PI;
use std::time::Instant;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lediagram::{i_inc, i_pre, iota_inc, iota_pre, LeDiagram};
use crate::perm::DecoratedPermutation;
use crate::plabic::{cell_bases, PlabicGraph, Vertex};
use crate::polytope::{affine_dimension, full_dimensional_overlap, hypersimplex_volume, normalized_volume};
use crate::positroid::Positroid;
use crate::subsets::{binomial, elements0, k_subsets};

/// The object a dissection lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Ambient {
    /// Δ_{k1,n}, cells in Gr⁺_{k1,n}.
    Hypersimplex { k1: usize, n: usize },
    /// A_{n,k,2}, cells in Gr⁺_{k,n}.
    Amplituhedron { n: usize, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Recursive,
    Clique,
    Tropical,
    User,
}

/// A collection of cells, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dissection {
    pub ambient: Ambient,
    pub cells: Vec<DecoratedPermutation>,
    pub provenance: Provenance,
}

impl Dissection {
    pub fn new(ambient: Ambient, mut cells: Vec<DecoratedPermutation>, provenance: Provenance) -> Result<Self> {
        cells.sort();
        cells.dedup();
        let (n, k, loopless) = match ambient {
            Ambient::Hypersimplex { k1, n } => (n, k1, true),
            Ambient::Amplituhedron { n, k } => (n, k, false),
        };
        for c in &cells {
            let ok = c.n() == n && c.k() == k && if loopless { c.is_loopless() } else { c.is_coloopless() };
            if !ok {
                return Err(Error::InvalidArgument(format!("cell {c} does not belong to {ambient:?}")));
            }
        }
        Ok(Dissection { ambient, cells, provenance })
    }

    pub fn n(&self) -> usize {
        match self.ambient {
            Ambient::Hypersimplex { n, .. } | Ambient::Amplituhedron { n, .. } => n,
        }
    }

    /// The image under T-duality (hypersimplex to amplituhedron).
    pub fn t_dual(&self) -> Result<Self> {
        let Ambient::Hypersimplex { k1, n } = self.ambient else {
            return Err(Error::InvalidArgument("t_dual applies to hypersimplex dissections".into()));
        };
        let cells = self.cells.iter().map(|c| c.t_dual()).collect::<Result<Vec<_>>>()?;
        Dissection::new(Ambient::Amplituhedron { n, k: k1 - 1 }, cells, self.provenance)
    }

    /// The preimage under T-duality (amplituhedron to hypersimplex).
    pub fn t_dual_inverse(&self) -> Result<Self> {
        let Ambient::Amplituhedron { n, k } = self.ambient else {
            return Err(Error::InvalidArgument("t_dual_inverse applies to amplituhedron dissections".into()));
        };
        let cells = self.cells.iter().map(|c| c.t_dual_inverse()).collect::<Result<Vec<_>>>()?;
        Dissection::new(Ambient::Hypersimplex { k1: k + 1, n }, cells, self.provenance)
    }

    /// Every cell shifted by `t`.
    pub fn cyclic_shift(&self, t: i64) -> Self {
        let cells = self.cells.iter().map(|c| c.cyclic_shift(t)).collect();
        Dissection::new(self.ambient, cells, self.provenance).expect("shifts preserve the ambient")
    }

    /// Cells replaced by their inverses: Δ_{k1,n} goes to Δ_{n−k1,n}.
    pub fn inverse(&self) -> Result<Self> {
        let Ambient::Hypersimplex { k1, n } = self.ambient else {
            return Err(Error::InvalidArgument("inverse applies to hypersimplex dissections".into()));
        };
        let cells = self.cells.iter().map(|c| c.inverse()).collect();
        Dissection::new(Ambient::Hypersimplex { k1: n - k1, n }, cells, self.provenance)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ambient": self.ambient,
            "provenance": self.provenance,
            "cells": self.cells.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// How the recursion chooses among sub-dissections and cyclic shifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    /// Every combination and every shift at every level.
    All,
    /// The first choice and no shift.
    First,
    /// One random choice and shift per level, from this seed.
    Random(u64),
}

/// Dissections of Δ_{k1,n} built by splitting along x_{n−1} + x_n = 1.
pub fn recursive_dissections_hyp(k1: usize, n: usize, selector: Selector) -> Result<Vec<Dissection>> {
    if k1 == 0 || k1 >= n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k1 ≤ n−1, got k1 = {k1}, n = {n}")));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed_of(selector));
    let families = recurse(k1, n, selector, &mut rng, &Side::Hyp)?;
    families
        .into_iter()
        .map(|cells| Dissection::new(Ambient::Hypersimplex { k1, n }, cells, Provenance::Recursive))
        .collect()
}

/// Dissections of A_{n,k,2} built by the amplituhedron recursion.
pub fn recursive_dissections_amp(n: usize, k: usize, selector: Selector) -> Result<Vec<Dissection>> {
    if k + 2 > n {
        return Err(Error::InvalidArgument(format!("need 0 ≤ k ≤ n−2, got k = {k}, n = {n}")));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed_of(selector));
    let families = recurse(k + 1, n, selector, &mut rng, &Side::Amp)?;
    families
        .into_iter()
        .map(|cells| Dissection::new(Ambient::Amplituhedron { n, k }, cells, Provenance::Recursive))
        .collect()
}

fn seed_of(selector: Selector) -> u64 {
    match selector {
        Selector::Random(s) => s,
        _ => 0,
    }
}

enum Side {
    Hyp,
    Amp,
}

/// Both recursions indexed by the hypersimplex parameters (k1, n); the
/// amplituhedron side has k = k1 − 1.
fn recurse(
    k1: usize,
    n: usize,
    selector: Selector,
    rng: &mut rand_chacha::ChaCha8Rng,
    side: &Side,
) -> Result<Vec<Vec<DecoratedPermutation>>> {
    if k1 == 1 || k1 + 1 == n {
        let cell = match side {
            Side::Hyp => DecoratedPermutation::top_cell(k1, n),
            Side::Amp if k1 == 1 => DecoratedPermutation::identity_loops(n),
            Side::Amp => DecoratedPermutation::top_cell(k1 - 1, n),
        };
        return Ok(vec![vec![cell]]);
    }
    let low = recurse(k1, n - 1, selector, rng, side)?;
    let high = recurse(k1 - 1, n - 1, selector, rng, side)?;
    let (pre, inc): (fn(&DecoratedPermutation) -> Result<DecoratedPermutation>, fn(&DecoratedPermutation) -> Result<DecoratedPermutation>) =
        match side {
            Side::Hyp => (i_pre, i_inc),
            Side::Amp => (|p| Ok(iota_pre(p)), iota_inc),
        };
    let combine = |a: &[DecoratedPermutation], b: &[DecoratedPermutation], shift: i64| -> Result<Vec<DecoratedPermutation>> {
        let mut cells = Vec::with_capacity(a.len() + b.len());
        for p in a {
            cells.push(pre(p)?.cyclic_shift(shift));
        }
        for p in b {
            cells.push(inc(p)?.cyclic_shift(shift));
        }
        cells.sort();
        Ok(cells)
    };
    match selector {
        Selector::All => {
            let mut out = BTreeSet::new();
            for a in &low {
                for b in &high {
                    for shift in 0..n as i64 {
                        out.insert(combine(a, b, shift)?);
                    }
                }
            }
            Ok(out.into_iter().collect())
        }
        Selector::First => Ok(vec![combine(&low[0], &high[0], 0)?]),
        Selector::Random(_) => {
            let a = &low[rng.gen_range(0..low.len())];
            let b = &high[rng.gen_range(0..high.len())];
            let shift = rng.gen_range(0..n as i64);
            Ok(vec![combine(a, b, shift)?])
        }
    }
}

/// Outcome of checking a collection against the dissection axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Invalid { reason: String },
    Dissection,
    Triangulation,
}

impl Verdict {
    pub fn is_dissection(&self) -> bool {
        !matches!(self, Verdict::Invalid { .. })
    }
}

/// Precomputed data for one cell of Δ_{k1,n}.
#[derive(Clone, Debug)]
pub struct CellData {
    pub label: DecoratedPermutation,
    pub bases: Vec<u32>,
    pub volume: u64,
    pub polytope_dimension: usize,
    pub cell_dimension: usize,
}

impl CellData {
    pub fn new(label: &DecoratedPermutation) -> Self {
        let bases = cell_bases(label);
        let n = label.n();
        let polytope_dimension = n - label.cyclic_interval_components();
        let volume = if polytope_dimension + 1 == n { normalized_volume(n, &bases) } else { 0 };
        CellData {
            label: label.clone(),
            bases,
            volume,
            polytope_dimension,
            cell_dimension: LeDiagram::from_permutation(label).dimension(),
        }
    }

    /// A generalized triangle: (n−1)-dimensional cell with connected positroid.
    pub fn is_tree_cell(&self) -> bool {
        let n = self.label.n();
        self.cell_dimension + 1 == n && self.polytope_dimension + 1 == n
    }
}

fn ambient_hyp(d: &Dissection) -> Result<(usize, usize)> {
    match d.ambient {
        Ambient::Hypersimplex { k1, n } => Ok((k1, n)),
        Ambient::Amplituhedron { .. } => Err(Error::InvalidArgument("expected a hypersimplex dissection".into())),
    }
}

/// Checks full dimension, disjoint interiors and total volume, then whether
/// every cell is a generalized triangle.
pub fn check_dissection(d: &Dissection) -> Result<Verdict> {
    let (k1, n) = ambient_hyp(d)?;
    let data: Vec<CellData> = d.cells.iter().map(CellData::new).collect();
    Ok(check_cells(k1, n, &data))
}

/// [`check_dissection`] over many dissections, computing each distinct
/// cell and each distinct pair of cells once.
pub fn check_dissections(ds: &[Dissection]) -> Result<Vec<Verdict>> {
    let mut index: HashMap<&DecoratedPermutation, usize> = HashMap::new();
    let mut labels: Vec<&DecoratedPermutation> = Vec::new();
    for d in ds {
        ambient_hyp(d)?;
        for c in &d.cells {
            index.entry(c).or_insert_with(|| {
                labels.push(c);
                labels.len() - 1
            });
        }
    }
    let data: Vec<CellData> = labels.par_iter().map(|c| CellData::new(c)).collect();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for d in ds {
        let ids: Vec<usize> = d.cells.iter().map(|c| index[c]).collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    let overlaps: HashMap<(usize, usize), bool> = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let n = data[a].label.n();
            ((a, b), data[a].polytope_dimension + 1 == n
                && data[b].polytope_dimension + 1 == n
                && full_dimensional_overlap(n, &data[a].bases, &data[b].bases))
        })
        .collect();
    Ok(ds
        .par_iter()
        .map(|d| {
            let (k1, n) = ambient_hyp(d).expect("checked above");
            let ids: Vec<usize> = d.cells.iter().map(|c| index[c]).collect();
            let cells: Vec<&CellData> = ids.iter().map(|&i| &data[i]).collect();
            verdict_of(k1, n, &cells, |i, j| overlaps[&(ids[i].min(ids[j]), ids[i].max(ids[j]))])
        })
        .collect())
}

fn check_cells(k1: usize, n: usize, data: &[CellData]) -> Verdict {
    let cells: Vec<&CellData> = data.iter().collect();
    verdict_of(k1, n, &cells, |i, j| full_dimensional_overlap(n, &data[i].bases, &data[j].bases))
}

fn verdict_of(k1: usize, n: usize, data: &[&CellData], overlap: impl Fn(usize, usize) -> bool) -> Verdict {
    for c in data {
        if c.polytope_dimension + 1 != n {
            return Verdict::Invalid {
                reason: format!("cell {} has polytope dimension {} < {}", c.label, c.polytope_dimension, n - 1),
            };
        }
    }
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            if overlap(i, j) {
                return Verdict::Invalid { reason: format!("interiors of {} and {} meet", data[i].label, data[j].label) };
            }
        }
    }
    let total: u64 = data.iter().map(|c| c.volume).sum();
    let target = hypersimplex_volume(k1, n);
    if total != target {
        return Verdict::Invalid { reason: format!("volumes sum to {total}, hypersimplex has {target}") };
    }
    if data.iter().all(|c| c.is_tree_cell()) {
        Verdict::Triangulation
    } else {
        Verdict::Dissection
    }
}

/// Goodness of one pair of full-dimensional cells with disjoint interiors:
/// when they meet in codimension one, the intersection must be the whole
/// face cut from each cell by the separating hyperplane, and a positroid.
///
/// Positroid polytopes are cut out by cyclic-interval inequalities, which
/// become difference constraints in partial sums, so an intersection is
/// the hull of the common bases.
pub fn facet_compatible(n: usize, a: &[u32], b: &[u32]) -> bool {
    let common: Vec<u32> = a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect();
    if common.len() < n - 1 || affine_dimension(n, &common) + 2 != n {
        return true;
    }
    let mut probe = common.clone();
    let on_hyperplane = |v: u32, probe: &mut Vec<u32>| {
        probe.push(v);
        let d = affine_dimension(n, probe);
        probe.pop();
        d + 2 == n
    };
    let extra = a.iter().chain(b).any(|&v| common.binary_search(&v).is_err() && on_hyperplane(v, &mut probe));
    !extra && Positroid::from_bases(n, common).and_then(|p| p.label_of()).is_ok()
}

/// Verdict plus goodness; the witness is the first pair with a bad facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodVerdict {
    pub verdict: Verdict,
    pub good: bool,
    pub witness: Option<(String, String)>,
}

pub fn check_good_dissection(d: &Dissection) -> Result<GoodVerdict> {
    let (k1, n) = ambient_hyp(d)?;
    let data: Vec<CellData> = d.cells.iter().map(CellData::new).collect();
    let verdict = check_cells(k1, n, &data);
    if !verdict.is_dissection() {
        return Ok(GoodVerdict { verdict, good: false, witness: None });
    }
    for (i, a) in data.iter().enumerate() {
        for b in &data[i + 1..] {
            if !facet_compatible(n, &a.bases, &b.bases) {
                return Ok(GoodVerdict {
                    verdict,
                    good: false,
                    witness: Some((a.label.to_string(), b.label.to_string())),
                });
            }
        }
    }
    Ok(GoodVerdict { verdict, good: true, witness: None })
}

/// Convex polygons inscribed in an n-gon (vertex masks over 0..n), pairwise
/// meeting in at most a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TriangleCollection {
    pub n: usize,
    pub polygons: Vec<u32>,
}

/// Whether chords {a,b} and {c,d} of a convex polygon cross in their interiors.
fn chords_cross(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let inside = |x: usize| a < x && x < b;
    let shared = a == c || a == d || b == c || b == d;
    !shared && inside(c) != inside(d)
}

/// Polygons with vertex sets `p` and `q` have disjoint interiors and share at
/// most one vertex.
fn polygons_compatible(n: usize, p: u32, q: u32) -> bool {
    if (p & q).count_ones() > 1 {
        return false;
    }
    let pe = polygon_edges(n, p);
    let qe = polygon_edges(n, q);
    if pe.iter().any(|&(a, b)| qe.iter().any(|&(c, d)| chords_cross(a, b, c, d))) {
        return false;
    }
    // With no crossing edges, one polygon could still contain the other;
    // that needs shared area, ruled out when some vertex of each lies
    // outside the other's vertex arc span.
    let arc_of = |outer: u32, inner: u32| {
        let v = elements0(outer);
        (0..v.len()).any(|t| {
            let (s, e) = (v[t], v[(t + 1) % v.len()]);
            elements0(inner & !outer).iter().all(|&x| cyclic_between(n, s, e, x))
        })
    };
    arc_of(p, q) && arc_of(q, p)
}

fn cyclic_between(n: usize, s: usize, e: usize, x: usize) -> bool {
    let d = |a: usize, b: usize| (b + n - a) % n;
    let span = if s == e { n } else { d(s, e) };
    d(s, x) > 0 && d(s, x) < span
}

fn polygon_edges(n: usize, p: u32) -> Vec<(usize, usize)> {
    let v = elements0(p);
    let _ = n;
    (0..v.len()).map(|t| (v[t], v[(t + 1) % v.len()])).collect()
}

/// All collections with Σ(|P| − 2) = k in the n-gon.
pub fn triangle_collections(n: usize, k: usize) -> Vec<TriangleCollection> {
    let polygons: Vec<u32> = (3..=n.min(k + 2)).flat_map(|s| k_subsets(n, s)).collect();
    let mut polygons = polygons;
    polygons.sort_unstable();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    collect_polygons(n, k, &polygons, 0, &mut chosen, &mut out);
    out
}

fn collect_polygons(n: usize, left: usize, polys: &[u32], from: usize, chosen: &mut Vec<u32>, out: &mut Vec<TriangleCollection>) {
    if left == 0 {
        out.push(TriangleCollection { n, polygons: chosen.clone() });
        return;
    }
    for i in from..polys.len() {
        let p = polys[i];
        let weight = p.count_ones() as usize - 2;
        if weight > left || !chosen.iter().all(|&q| polygons_compatible(n, p, q)) {
            continue;
        }
        chosen.push(p);
        collect_polygons(n, left - weight, polys, i + 1, chosen, out);
        chosen.pop();
    }
}

/// The n−2 triangles of a triangulation of the n-gon that refines every
/// polygon of the collection, each flagged black when it lies in a polygon.
fn colored_triangulation(c: &TriangleCollection) -> Vec<([usize; 3], bool)> {
    let n = c.n;
    let mut chords: Vec<(usize, usize)> = Vec::new();
    let is_side = |a: usize, b: usize| (a + 1) % n == b || (b + 1) % n == a;
    for &p in &c.polygons {
        let v = elements0(p);
        for t in 0..v.len() {
            let (a, b) = (v[t], v[(t + 1) % v.len()]);
            if !is_side(a, b) {
                chords.push((a.min(b), a.max(b)));
            }
        }
        for &w in &v[2..v.len() - 1] {
            chords.push((v[0], w));
        }
    }
    for a in 0..n {
        for b in a + 2..n {
            if is_side(a, b) || chords.contains(&(a, b)) {
                continue;
            }
            if chords.iter().all(|&(c1, d1)| !chords_cross(a, b, c1, d1)) {
                chords.push((a, b));
            }
        }
    }
    let adjacent = |a: usize, b: usize| is_side(a, b) || chords.contains(&(a.min(b), a.max(b)));
    let mut out = Vec::with_capacity(n - 2);
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                if adjacent(a, b) && adjacent(b, d) && adjacent(a, d) {
                    let mask = 1u32 << a | 1 << b | 1 << d;
                    let black = c.polygons.iter().any(|&p| p & mask == mask);
                    out.push(([a, b, d], black));
                }
            }
        }
    }
    debug_assert_eq!(out.len(), n - 2);
    out
}

/// Planar tree dual to a colored triangulation of the n-gon: one vertex per
/// triangle (black or white), one boundary leaf per side. Polygon vertex j
/// sits at angle −2πj/n; the side from vertex i−1 to vertex i carries
/// boundary label i.
pub fn dual_tree(n: usize, triangles: &[([usize; 3], bool)]) -> Result<PlabicGraph> {
    let mut vertices: Vec<Vertex> = (1..=n).map(|label| Vertex::Boundary { label }).collect();
    let corner = |j: usize| {
        let t = -2.0 * PI * j as f64 / n as f64;
        (t.cos(), t.sin())
    };
    let mut pos: Vec<(f64, f64)> = (1..=n)
        .map(|label| {
            let (a, b) = (corner((label + n - 1) % n), corner(label % n));
            ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
        })
        .collect();
    for (tri, black) in triangles {
        vertices.push(if *black { Vertex::Black } else { Vertex::White });
        let c: Vec<(f64, f64)> = tri.iter().map(|&j| corner(j)).collect();
        pos.push(((c[0].0 + c[1].0 + c[2].0) / 3.0, (c[0].1 + c[1].1 + c[2].1) / 3.0));
    }
    let mut owner: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (t, (tri, _)) in triangles.iter().enumerate() {
        for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])] {
            owner.entry((a, b)).or_default().push(n + t);
        }
    }
    let mut edges = Vec::new();
    for label in 1..=n {
        let (a, b) = ((label + n - 1) % n, label % n);
        let t = owner[&(a.min(b), a.max(b))][0];
        edges.push((label - 1, t));
    }
    let mut inner: Vec<(usize, usize)> = owner.values().filter(|v| v.len() == 2).map(|v| (v[0], v[1])).collect();
    inner.sort_unstable();
    edges.extend(inner);
    let angles: Vec<(f64, f64)> = edges
        .iter()
        .map(|&(a, b)| {
            let (dx, dy) = (pos[b].0 - pos[a].0, pos[b].1 - pos[a].1);
            (dy.atan2(dx), (-dy).atan2(-dx))
        })
        .collect();
    PlabicGraph::from_angles(n, vertices, edges, &angles)
}

impl TriangleCollection {
    /// Number of triangles needed to triangulate all polygons.
    pub fn k(&self) -> usize {
        self.polygons.iter().map(|p| p.count_ones() as usize - 2).sum()
    }

    /// The tree plabic graph of the collection; its cell is a generalized
    /// triangle of Δ_{k+1,n}.
    pub fn tree_graph(&self) -> Result<PlabicGraph> {
        dual_tree(self.n, &colored_triangulation(self))
    }

    /// Label of the generalized triangle in Gr⁺_{k+1,n}.
    pub fn hypersimplex_label(&self) -> Result<DecoratedPermutation> {
        Ok(self.tree_graph()?.trip_permutation())
    }

    /// Bases of the k×n matrix with one generic row per black triangle,
    /// supported on its vertices.
    pub fn row_matroid_bases(&self) -> Vec<u32> {
        let rows: Vec<u32> = colored_triangulation(self)
            .into_iter()
            .filter(|(_, black)| *black)
            .map(|(t, _)| t.iter().fold(0u32, |m, &j| m | 1 << j))
            .collect();
        // A k-set is a basis of a generic matrix with this support pattern
        // exactly when rows can be matched to distinct columns in their supports.
        let mut out: Vec<u32> = k_subsets(self.n, rows.len()).into_iter().filter(|&s| has_matching(&rows, s)).collect();
        out.sort_unstable();
        out
    }
}

fn has_matching(rows: &[u32], cols: u32) -> bool {
    fn go(rows: &[u32], i: usize, free: u32) -> bool {
        if i == rows.len() {
            return true;
        }
        let mut opts = rows[i] & free;
        while opts != 0 {
            let c = opts & opts.wrapping_neg();
            if go(rows, i + 1, free & !c) {
                return true;
            }
            opts &= !c;
        }
        false
    }
    go(rows, 0, cols)
}

/// Generalized triangles of Δ_{k1,n} from collections of k1 − 1 triangles.
pub fn enumerate_generalized_triangles(k1: usize, n: usize) -> Result<Vec<DecoratedPermutation>> {
    if k1 == 0 || k1 >= n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k1 ≤ n−1, got k1 = {k1}, n = {n}")));
    }
    let mut out: Vec<DecoratedPermutation> = triangle_collections(n, k1 - 1)
        .par_iter()
        .map(TriangleCollection::hypersimplex_label)
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Triangulations of the n-gon as triangle lists.
pub fn polygon_triangulations(n: usize) -> Vec<Vec<[usize; 3]>> {
    fn tri(lo: usize, hi: usize) -> Vec<Vec<[usize; 3]>> {
        if hi < lo + 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for m in lo + 1..hi {
            for left in tri(lo, m) {
                for right in tri(m, hi) {
                    let mut t = left.clone();
                    t.extend(right.iter().copied());
                    t.push([lo, m, hi]);
                    out.push(t);
                }
            }
        }
        out
    }
    if n < 3 {
        return vec![Vec::new()];
    }
    tri(0, n - 1)
}

/// For each planar trivalent tree with n leaves, the C(n−2, k) cells of
/// Gr⁺_{k+1,n} obtained by coloring exactly k internal vertices black.
pub fn tnk_family(n: usize, k: usize) -> Result<Vec<Dissection>> {
    if n < 3 || k + 2 > n {
        return Err(Error::InvalidArgument(format!("need n ≥ 3 and k ≤ n−2, got n = {n}, k = {k}")));
    }
    polygon_triangulations(n)
        .par_iter()
        .map(|tris| {
            let cells = (0u32..1 << (n - 2))
                .filter(|s| s.count_ones() as usize == k)
                .map(|s| {
                    let colored: Vec<([usize; 3], bool)> =
                        tris.iter().enumerate().map(|(i, &t)| (t, s >> i & 1 == 1)).collect();
                    Ok(dual_tree(n, &colored)?.trip_permutation())
                })
                .collect::<Result<Vec<_>>>()?;
            Dissection::new(Ambient::Hypersimplex { k1: k + 1, n }, cells, Provenance::Recursive)
        })
        .collect()
}

/// Plane-partition count in an a×b×c box.
pub fn narayana_count(a: usize, b: usize, c: usize) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=a {
        for j in 1..=b {
            for l in 1..=c {
                num *= (i + j + l - 1) as u128;
                den *= (i + j + l - 2) as u128;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
        }
    }
    num / den
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Budget for an enumeration.
#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub max_results: Option<usize>,
    pub deadline: Option<Instant>,
}

/// Enumeration output; `complete` is false when a limit stopped the search.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub items: Vec<Dissection>,
    pub complete: bool,
}

impl Enumeration {
    pub fn count(&self) -> usize {
        self.items.len()
    }
}

/// Cells plus the compatibility graph used by the clique searches.
struct CliqueProblem {
    n: usize,
    k1: usize,
    cells: Vec<CellData>,
    adjacent: Vec<FixedBitSet>,
    target: u64,
}

impl CliqueProblem {
    fn new(k1: usize, n: usize, labels: Vec<DecoratedPermutation>, good_only: bool) -> Self {
        let cells: Vec<CellData> = labels.par_iter().map(CellData::new).collect();
        let m = cells.len();
        let adjacent: Vec<FixedBitSet> = (0..m)
            .into_par_iter()
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(m);
                for j in 0..m {
                    if i != j
                        && !full_dimensional_overlap(n, &cells[i].bases, &cells[j].bases)
                        && (!good_only || facet_compatible(n, &cells[i].bases, &cells[j].bases))
                    {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        CliqueProblem { n, k1, cells, adjacent, target: hypersimplex_volume(k1, n) }
    }

    /// Cliques whose volumes add up to the hypersimplex (each is maximal).
    fn solve(&self, provenance: Provenance, limits: Limits) -> Enumeration {
        let m = self.cells.len();
        let stop = std::sync::atomic::AtomicBool::new(false);
        let found = std::sync::atomic::AtomicUsize::new(0);
        let roots: Vec<Vec<Vec<usize>>> = (0..m)
            .into_par_iter()
            .map(|v| {
                let mut p = self.adjacent[v].clone();
                let mut x = self.adjacent[v].clone();
                for u in 0..m {
                    if u < v {
                        p.set(u, false);
                    } else {
                        x.set(u, false);
                    }
                }
                let mut out = Vec::new();
                let mut search = Search { problem: self, limits, stop: &stop, found: &found, out: &mut out };
                search.expand(&mut vec![v], self.cells[v].volume, p, x);
                out
            })
            .collect();
        let mut items: Vec<Dissection> = roots
            .into_iter()
            .flatten()
            .map(|clique| {
                let cells = clique.iter().map(|&i| self.cells[i].label.clone()).collect();
                Dissection::new(Ambient::Hypersimplex { k1: self.k1, n: self.n }, cells, provenance).expect("cells are valid")
            })
            .collect();
        items.sort();
        let complete = !stop.load(std::sync::atomic::Ordering::Relaxed);
        if let Some(cap) = limits.max_results {
            items.truncate(cap);
        }
        Enumeration { items, complete }
    }
}

struct Search<'a> {
    problem: &'a CliqueProblem,
    limits: Limits,
    stop: &'a std::sync::atomic::AtomicBool,
    found: &'a std::sync::atomic::AtomicUsize,
    out: &'a mut Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Bron–Kerbosch with pivoting, pruned by the volume target.
    fn expand(&mut self, r: &mut Vec<usize>, volume: u64, mut p: FixedBitSet, mut x: FixedBitSet) {
        use std::sync::atomic::Ordering::Relaxed;
        if self.stop.load(Relaxed) {
            return;
        }
        let cells = &self.problem.cells;
        if volume == self.problem.target {
            let mut c = r.clone();
            c.sort_unstable();
            self.out.push(c);
            let total = self.found.fetch_add(1, Relaxed) + 1;
            if self.limits.max_results.is_some_and(|cap| total >= cap) {
                self.stop.store(true, Relaxed);
            }
            return;
        }
        if self.limits.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stop.store(true, Relaxed);
            return;
        }
        let need = self.problem.target - volume;
        let available: u64 = p.ones().map(|i| cells[i].volume).filter(|&v| v <= need).sum();
        if available < need {
            return;
        }
        let pivot = p.union(&x).max_by_key(|&u| self.problem.adjacent[u].intersection(&p).count());
        let candidates: Vec<usize> = match pivot {
            Some(u) => p.difference(&self.problem.adjacent[u]).collect(),
            None => return,
        };
        for v in candidates {
            if cells[v].volume <= need {
                let mut p2 = p.clone();
                p2.intersect_with(&self.problem.adjacent[v]);
                let mut x2 = x.clone();
                x2.intersect_with(&self.problem.adjacent[v]);
                r.push(v);
                self.expand(r, volume + cells[v].volume, p2, x2);
                r.pop();
            }
            p.set(v, false);
            x.insert(v);
        }
    }
}

/// All triangulations of Δ_{k1,n} into generalized triangles.
pub fn enumerate_triangulations(k1: usize, n: usize, limits: Limits) -> Result<Enumeration> {
    let labels = enumerate_generalized_triangles(k1, n)?;
    Ok(CliqueProblem::new(k1, n, labels, false).solve(Provenance::Clique, limits))
}

/// Connected positroids of rank k1 on [n], i.e. cells whose polytope is
/// full-dimensional.
pub fn full_dimensional_cells(k1: usize, n: usize) -> Vec<DecoratedPermutation> {
    let mut out: Vec<DecoratedPermutation> = DecoratedPermutation::all_with_k(n, k1)
        .into_iter()
        .filter(|p| p.cyclic_interval_components() == 1)
        .collect();
    out.sort();
    out
}

/// All dissections of Δ_{k1,n} into positroid polytopes.
pub fn enumerate_dissections(k1: usize, n: usize, limits: Limits) -> Result<Enumeration> {
    if k1 == 0 || k1 >= n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k1 ≤ n−1, got k1 = {k1}, n = {n}")));
    }
    Ok(CliqueProblem::new(k1, n, full_dimensional_cells(k1, n), false).solve(Provenance::Clique, limits))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoodMode {
    Triangulations,
    Dissections,
}

/// Good triangulations or good dissections, with the count per stratum.
#[derive(Clone, Debug)]
pub struct GoodEnumeration {
    pub items: Vec<Dissection>,
    /// Secondary-cone dimension (modulo lineality) of each item.
    pub cone_dimensions: Vec<usize>,
    /// Counts by cone dimension, highest first, framed by a leading 1 (the
    /// empty face) as in the f-vector of the dual polytope; for
    /// triangulations only the top stratum is populated.
    pub strata: Vec<usize>,
    pub complete: bool,
}

pub fn enumerate_good(k1: usize, n: usize, mode: GoodMode, limits: Limits) -> Result<GoodEnumeration> {
    let labels = match mode {
        GoodMode::Triangulations => enumerate_generalized_triangles(k1, n)?,
        GoodMode::Dissections => {
            if k1 == 0 || k1 >= n {
                return Err(Error::InvalidArgument(format!("need 1 ≤ k1 ≤ n−1, got k1 = {k1}, n = {n}")));
            }
            full_dimensional_cells(k1, n)
        }
    };
    let problem = CliqueProblem::new(k1, n, labels, true);
    let e = problem.solve(Provenance::Clique, limits);
    let cone_dimensions: Vec<usize> = e
        .items
        .par_iter()
        .map(|d| {
            let cells: Vec<Vec<u32>> = d.cells.iter().map(cell_bases).collect();
            crate::tropical::secondary_cone_dimension(k1, n, &cells)
        })
        .collect();
    let top = (k1 - 1) * (n - k1 - 1);
    let mut by_dim: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &cone_dimensions {
        *by_dim.entry(c).or_default() += 1;
    }
    let mut strata = vec![1];
    strata.extend((0..=top.max(by_dim.keys().copied().max().unwrap_or(0))).rev().map(|d| by_dim.get(&d).copied().unwrap_or(0)));
    Ok(GoodEnumeration { items: e.items, cone_dimensions, strata, complete: e.complete })
}

/// Number of cells in a finest positroidal subdivision of Δ_{k1,n}.
pub fn finest_cell_count(k1: usize, n: usize) -> u64 {
    binomial(n - 2, k1 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::z_image_dimension;
    use crate::maps::random_positive_z;
    use proptest::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn perm(s: &str) -> DecoratedPermutation {
        s.parse().unwrap()
    }

    fn perms(list: &[&str]) -> Vec<DecoratedPermutation> {
        let mut v: Vec<DecoratedPermutation> = list.iter().map(|s| perm(s)).collect();
        v.sort();
        v
    }

    fn c1() -> Dissection {
        let cells = perms(&["(1_,2_,5,6,3,4)", "(1_,3,6,5,2,4)", "(1_,4,6,2,5_,3)", "(2,6,3_,5,1,4)", "(2,6,4,1,5_,3)", "(3,6,1,4,5_,2)"]);
        Dissection::new(Ambient::Amplituhedron { n: 6, k: 2 }, cells, Provenance::User).unwrap()
    }

    fn c2() -> Dissection {
        let cells = perms(&["(1_,2_,5,6,3,4)", "(1,4,6,5,2,3)", "(2,6,4,5,1,3)", "(3,6,1,4,5_,2)"]);
        Dissection::new(Ambient::Amplituhedron { n: 6, k: 2 }, cells, Provenance::User).unwrap()
    }

    #[test]
    fn hypersimplex_recursion_example() {
        let first = recursive_dissections_hyp(3, 5, Selector::First).unwrap();
        assert_eq!(first[0].cells, perms(&["(4,1,2,5,3)", "(2,5,1,3,4)", "(3,1,5,2,4)"]));
        assert_eq!(check_dissection(&first[0]).unwrap(), Verdict::Triangulation);
    }

    #[test]
    fn amplituhedron_recursion_example() {
        let first = recursive_dissections_amp(5, 2, Selector::First).unwrap();
        assert_eq!(first[0].cells, perms(&["(3,4,1,2,5_)", "(4,2_,5,1,3)", "(4,3,1,5,2)"]));
        let hyp = recursive_dissections_hyp(3, 5, Selector::First).unwrap();
        assert_eq!(hyp[0].t_dual().unwrap().cells, first[0].cells);
    }

    #[test]
    fn base_cases_are_single_cells() {
        for n in 3..8 {
            let d = recursive_dissections_hyp(1, n, Selector::All).unwrap();
            assert_eq!(d.len(), 1);
            assert_eq!(d[0].cells, vec![DecoratedPermutation::top_cell(1, n)]);
            let a = recursive_dissections_amp(n, 0, Selector::All).unwrap();
            assert_eq!(a[0].cells, vec![DecoratedPermutation::identity_loops(n)]);
        }
    }

    #[test]
    fn recursions_commute_with_t_duality() {
        for n in 4..=6 {
            for k1 in 1..n {
                let hyp = recursive_dissections_hyp(k1, n, Selector::All).unwrap();
                let amp = recursive_dissections_amp(n, k1 - 1, Selector::All).unwrap();
                let mut duals: Vec<Vec<DecoratedPermutation>> = hyp.iter().map(|d| d.t_dual().unwrap().cells).collect();
                duals.sort();
                let mut amps: Vec<Vec<DecoratedPermutation>> = amp.into_iter().map(|d| d.cells).collect();
                amps.sort();
                assert_eq!(duals, amps, "k1={k1} n={n}");
                for d in &hyp {
                    assert_eq!(check_dissection(d).unwrap(), Verdict::Triangulation, "{:?}", d.cells);
                }
            }
        }
    }

    #[test]
    fn random_selector_is_reproducible_and_valid() {
        let a = recursive_dissections_hyp(4, 8, Selector::Random(11)).unwrap();
        let b = recursive_dissections_hyp(4, 8, Selector::Random(11)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].cells.len() as u64, finest_cell_count(4, 8));
        assert!(check_dissection(&a[0]).unwrap().is_dissection());
    }

    #[test]
    fn recursive_amplituhedron_cells_have_full_image() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = recursive_dissections_amp(6, 2, Selector::First).unwrap();
        let z = random_positive_z(4, 6, &mut rng).unwrap();
        for c in &d[0].cells {
            assert_eq!(z_image_dimension(c, &z, 2, &mut rng).unwrap(), 4, "{c}");
        }
    }

    #[test]
    fn missing_cell_is_a_volume_deficit() {
        let mut d = recursive_dissections_hyp(3, 5, Selector::First).unwrap().remove(0);
        d.cells.pop();
        match check_dissection(&d).unwrap() {
            Verdict::Invalid { reason } => assert!(reason.contains("hypersimplex has 11"), "{reason}"),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn batch_check_matches_single_check() {
        let mut ds = recursive_dissections_hyp(3, 6, Selector::All).unwrap();
        let mut short = ds[0].clone();
        short.cells.pop();
        ds.push(short);
        ds.push(Dissection::new(Ambient::Hypersimplex { k1: 2, n: 4 }, perms(&["(3,4,1,2)", "(2,4,1,3)"]), Provenance::User).unwrap());
        let batch = check_dissections(&ds).unwrap();
        for (d, v) in ds.iter().zip(&batch) {
            assert_eq!(&check_dissection(d).unwrap(), v, "{:?}", d.cells);
        }
        assert!(!batch[batch.len() - 1].is_dissection() && !batch[batch.len() - 2].is_dissection());
    }

    #[test]
    fn overlapping_cells_are_rejected() {
        let d = Dissection::new(
            Ambient::Hypersimplex { k1: 2, n: 4 },
            perms(&["(3,4,1,2)", "(2,4,1,3)"]),
            Provenance::User,
        )
        .unwrap();
        assert!(matches!(check_dissection(&d).unwrap(), Verdict::Invalid { .. }));
    }

    #[test]
    fn good_and_bad_examples() {
        let t1 = c1().t_dual_inverse().unwrap();
        let t2 = c2().t_dual_inverse().unwrap();
        assert_eq!(check_dissection(&t1).unwrap(), Verdict::Triangulation);
        assert_eq!(check_dissection(&t2).unwrap(), Verdict::Dissection);
        assert!(check_good_dissection(&t2).unwrap().good);
        // The six listed cells form a regular triangulation, hence a good one.
        assert!(check_good_dissection(&t1).unwrap().good);
        assert!(crate::tropical::dissection_cone(&t1).unwrap().is_regular());
        // Splitting the two halves of C2 along different diagonals is not good.
        let mixed = perms(&["(1_,2_,5,6,3,4)", "(1_,3,6,5,2,4)", "(1_,4,6,2,5_,3)", "(2,6,4,5,3,1)", "(2,6,5,4_,1,3)", "(3,6,1,4_,5_,2)"]);
        let mixed = Dissection::new(Ambient::Amplituhedron { n: 6, k: 2 }, mixed, Provenance::User).unwrap().t_dual_inverse().unwrap();
        assert_eq!(check_dissection(&mixed).unwrap(), Verdict::Triangulation);
        let g = check_good_dissection(&mixed).unwrap();
        assert!(!g.good && g.witness.is_some());
        assert!(!crate::tropical::dissection_cone(&mixed).unwrap().is_regular());
    }

    #[test]
    fn codimension_one_boundaries_of_the_coarse_example() {
        use crate::polytope::{intersection_face, PositroidPolytope};
        let t2 = c2().t_dual_inverse().unwrap();
        let mut labels = Vec::new();
        for (i, a) in t2.cells.iter().enumerate() {
            for b in &t2.cells[i + 1..] {
                let f = intersection_face(&PositroidPolytope::from_cell(a), &PositroidPolytope::from_cell(b)).unwrap();
                if f.dimension == 4 {
                    labels.push(f.loopless_label.unwrap().t_dual().unwrap());
                }
            }
        }
        labels.sort();
        assert_eq!(labels, perms(&["(1_,2_,6,5,3,4)", "(1_,6,4,5,2,3)", "(2,6,1,4_,5_,3)"]));
    }

    #[test]
    fn generalized_triangle_counts_and_properties() {
        // Oracle: all cells with Le-dimension n − 1 and a connected positroid.
        for n in 4..=7 {
            for k1 in 1..n {
                let got = enumerate_generalized_triangles(k1, n).unwrap();
                let oracle: Vec<DecoratedPermutation> = full_dimensional_cells(k1, n)
                    .into_iter()
                    .filter(|p| LeDiagram::from_permutation(p).dimension() + 1 == n)
                    .collect();
                assert_eq!(got, oracle, "k1={k1} n={n}");
                assert_eq!(got.len(), triangle_collections(n, k1 - 1).len());
            }
        }
        assert_eq!(enumerate_generalized_triangles(2, 4).unwrap().len(), 4);
    }

    #[test]
    fn figure_instance() {
        let all = enumerate_generalized_triangles(4, 7).unwrap();
        let check = perm("(7,1,6,5,3,2,4)");
        assert!(all.contains(&check));
        assert_eq!(check.t_dual().unwrap(), perm("(4,7,1,6,5_,3,2)"));
    }

    #[test]
    fn trees_dualize_to_black_triangle_matrices() {
        for n in 4..=7 {
            for k in 0..=n - 2 {
                for c in triangle_collections(n, k) {
                    let p = c.hypersimplex_label().unwrap();
                    assert!(c.tree_graph().unwrap().is_tree());
                    assert_eq!(cell_bases(&p.t_dual().unwrap()), c.row_matroid_bases(), "{c:?}");
                }
            }
        }
    }

    #[test]
    fn tnk_families_are_triangulations() {
        for n in 4..=7 {
            for k in 0..=n - 2 {
                let fam = tnk_family(n, k).unwrap();
                assert_eq!(fam.len() as u64, crate::subsets::catalan(n - 2));
                for d in &fam {
                    assert_eq!(d.cells.len() as u64, binomial(n - 2, k));
                    assert_eq!(check_dissection(d).unwrap(), Verdict::Triangulation);
                }
            }
        }
        assert_eq!(tnk_family(5, 2).unwrap().len(), 5);
    }

    #[test]
    fn tnk_families_are_regular() {
        for k in 1..=3 {
            for d in tnk_family(6, k).unwrap() {
                let cone = crate::tropical::dissection_cone(&d).unwrap();
                let p = cone.interior_point.expect("regular");
                let sub = crate::tropical::subdivision(&p).unwrap();
                assert_eq!(sub.to_dissection().unwrap().cells, d.cells);
            }
        }
    }

    #[test]
    fn narayana_values() {
        assert_eq!(narayana_count(1, 1, 1), 2);
        assert_eq!(narayana_count(2, 2, 2), 20);
        for n in 2..=12 {
            for k in 0..=n - 2 {
                assert_eq!(narayana_count(k, n - k - 2, 1), binomial(n - 2, k) as u128);
            }
        }
    }

    #[test]
    fn triangulation_counts() {
        let none = Limits::default();
        assert_eq!(enumerate_triangulations(3, 5, none).unwrap().count(), 5);
        for n in 4..=8 {
            assert_eq!(enumerate_triangulations(2, n, none).unwrap().count() as u64, crate::subsets::catalan(n - 2));
        }
        let t36 = enumerate_triangulations(3, 6, none).unwrap();
        assert!(t36.complete);
        assert_eq!(t36.count(), 120);
        for d in &t36.items {
            assert_eq!(d.cells.len() as u64, finest_cell_count(3, 6));
            assert_eq!(check_dissection(&d.cyclic_shift(1)).unwrap(), Verdict::Triangulation);
            assert!(check_dissection(&d.inverse().unwrap()).unwrap().is_dissection());
        }
        assert_eq!(enumerate_triangulations(4, 6, none).unwrap().count(), 14);
    }

    #[test]
    fn result_limit_stops_early() {
        let e = enumerate_triangulations(3, 6, Limits { max_results: Some(10), deadline: None }).unwrap();
        assert!(!e.complete);
        assert_eq!(e.count(), 10);
    }

    #[test]
    fn good_triangulations_of_small_hypersimplices() {
        let g = enumerate_good(3, 6, GoodMode::Triangulations, Limits::default()).unwrap();
        assert_eq!(g.items.len(), 48);
        assert!(g.cone_dimensions.iter().all(|&d| d == 4));
        for d in &g.items {
            assert!(check_good_dissection(d).unwrap().good);
        }
    }

    #[test]
    fn polygon_dissections_are_little_schroeder_numbers() {
        let expected = [1, 3, 11, 45, 197];
        for (n, &e) in (3..=7).zip(&expected) {
            assert_eq!(enumerate_dissections(2, n, Limits::default()).unwrap().count(), e);
        }
    }

    #[test]
    fn good_dissection_strata() {
        let g = enumerate_good(3, 6, GoodMode::Dissections, Limits::default()).unwrap();
        assert_eq!(g.strata, vec![1, 48, 98, 66, 16, 1]);
        assert_eq!(g.strata.iter().sum::<usize>(), 230);
        assert!(g.items.iter().all(|d| check_good_dissection(d).unwrap().good));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn shifted_random_recursions_dissect(seed in 0u64..1000, t in 0i64..8) {
            let d = recursive_dissections_hyp(3, 7, Selector::Random(seed)).unwrap().remove(0);
            prop_assert_eq!(check_dissection(&d.cyclic_shift(t)).unwrap(), Verdict::Triangulation);
            prop_assert!(check_dissection(&d.inverse().unwrap()).unwrap().is_dissection());
        }
    }
}
