//! Positroid polytopes in exact arithmetic: H- and V-descriptions,
//! membership, normalized volume, relative-interior disjointness,
//! intersections, and the moment map.
//!
//! Points live in R^n on the hyperplane Σx = k. Bases are u32 masks.

use serde_json::json;

use crate::error::{Error, Result};
use crate::hull::{affine_coordinates, facets_of_points, polytope_vertices};
use crate::linalg::{affine_dim_i128, det_i128, Matrix};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::perm::DecoratedPermutation;
use crate::positroid::{is_matroid_by_exchange, is_positroid_by_envelope, Positroid};
use crate::scalar::Scalar;
use crate::subsets::{binomial, cyclic_interval, k_subsets};
use crate::Rat;

/// Closed membership or relative-interior membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    Boundary,
    Interior,
}

/// One inequality a·x ≤ b with 0/±1 coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub support: u32,
    pub negated: bool,
    pub bound: i64,
}

impl Inequality {
    fn lhs(&self, x: &[Rat]) -> Rat {
        let s = x
            .iter()
            .enumerate()
            .filter(|(i, _)| self.support >> i & 1 == 1)
            .fold(Rat::int(0), |acc, (_, v)| acc + v);
        if self.negated {
            -s
        } else {
            s
        }
    }

    fn on_mask(&self, b: u32) -> i64 {
        let s = (b & self.support).count_ones() as i64;
        if self.negated {
            -s
        } else {
            s
        }
    }

    fn row(&self, n: usize) -> Vec<Rat> {
        let c = if self.negated { -1 } else { 1 };
        (0..n).map(|i| Rat::int(if self.support >> i & 1 == 1 { c } else { 0 })).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositroidPolytope {
    n: usize,
    k: usize,
    vertices: Vec<u32>,
    /// x_i ≥ 0, and Σ_{[i,j]} x ≤ r_ij over all proper cyclic intervals
    /// (singletons give x_i ≤ r_ii ≤ 1).
    inequalities: Vec<Inequality>,
}

impl PositroidPolytope {
    pub fn new(m: &Positroid) -> Self {
        let n = m.n();
        let mut inequalities: Vec<Inequality> =
            (0..n).map(|i| Inequality { support: 1 << i, negated: true, bound: 0 }).collect();
        for i in 1..=n {
            for len in 1..n {
                let iv = cyclic_interval(n, i, len);
                inequalities.push(Inequality { support: iv, negated: false, bound: m.rank(iv) as i64 });
            }
        }
        PositroidPolytope { n, k: m.k(), vertices: m.bases().to_vec(), inequalities }
    }

    pub fn from_cell(p: &DecoratedPermutation) -> Self {
        Self::new(&Positroid::from_cell(p))
    }

    /// The hypersimplex Δ_{k,n}.
    pub fn hypersimplex(k: usize, n: usize) -> Self {
        Self::new(&Positroid::uniform(k, n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Vertex set {e_B : B a basis}, as masks.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    /// H-description as rows (a, b) for a·x ≤ b, plus the equality Σx = k.
    pub fn h_description(&self) -> (Vec<(Vec<Rat>, Rat)>, (Vec<Rat>, Rat)) {
        let ineqs = self.inequalities.iter().map(|q| (q.row(self.n), Rat::int(q.bound))).collect();
        (ineqs, (vec![Rat::int(1); self.n], Rat::int(self.k as i64)))
    }

    /// Affine dimension of the polytope.
    pub fn dimension(&self) -> usize {
        affine_dimension(self.n, &self.vertices)
    }

    /// Inequalities not tight on every vertex; strict satisfaction of these
    /// (and the equality) characterizes the relative interior.
    fn proper_inequalities(&self) -> impl Iterator<Item = &Inequality> {
        self.inequalities.iter().filter(|q| self.vertices.iter().any(|&b| q.on_mask(b) < q.bound))
    }

    fn implicit_equalities(&self) -> impl Iterator<Item = &Inequality> {
        self.inequalities.iter().filter(|q| self.vertices.iter().all(|&b| q.on_mask(b) == q.bound))
    }

    pub fn contains(&self, x: &[Rat], mode: Strictness) -> bool {
        if x.len() != self.n {
            return false;
        }
        let total = x.iter().fold(Rat::int(0), |a, v| a + v);
        if total != Rat::int(self.k as i64) {
            return false;
        }
        if !self.inequalities.iter().all(|q| q.lhs(x) <= Rat::int(q.bound)) {
            return false;
        }
        match mode {
            Strictness::Boundary => true,
            Strictness::Interior => self.proper_inequalities().all(|q| q.lhs(x) < Rat::int(q.bound)),
        }
    }

    /// Barycenter of the vertex set.
    pub fn barycenter(&self) -> Vec<Rat> {
        let m = self.vertices.len() as i64;
        (0..self.n)
            .map(|i| Rat::ratio(self.vertices.iter().filter(|&&b| b >> i & 1 == 1).count() as i64, m))
            .collect()
    }

    /// Exact vertex enumeration of the H-description.
    pub fn vertices_from_h(&self) -> Result<Vec<Vec<Rat>>> {
        let (ineqs, eq) = self.h_description();
        polytope_vertices(&ineqs, &[eq], self.n)
    }

    pub fn normalized_volume(&self) -> u64 {
        normalized_volume(self.n, &self.vertices)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "k": self.k,
            "dimension": self.dimension(),
            "vertices": self.vertices.iter().map(|&b| crate::subsets::elements(b)).collect::<Vec<_>>(),
        })
    }
}

fn indicator(n: usize, b: u32) -> Vec<i128> {
    (0..n).map(|i| (b >> i & 1) as i128).collect()
}

/// Affine dimension of the 0/1 points with the given bitmasks.
pub fn affine_dimension(n: usize, masks: &[u32]) -> usize {
    if masks.is_empty() {
        return 0;
    }
    let pts: Vec<Vec<i128>> = masks.iter().map(|&b| indicator(n, b)).collect();
    affine_dim_i128(&pts).max(0) as usize
}

/// Simplices (index lists) of the pulling triangulation of conv(points),
/// pulling the first point of every face.
pub fn pulling_triangulation(points: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..points.len()).collect();
    let mut out = Vec::new();
    pull(points, &idx, &mut Vec::new(), &mut out);
    out
}

fn pull(points: &[Vec<Rat>], idx: &[usize], apexes: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let sub: Vec<Vec<Rat>> = idx.iter().map(|&i| points[i].clone()).collect();
    let (coords, d) = affine_coordinates(&sub);
    if idx.len() == d + 1 {
        let mut s = apexes.clone();
        s.extend_from_slice(idx);
        out.push(s);
        return;
    }
    let facets = facets_of_points(&coords).expect("point sets are bounded");
    apexes.push(idx[0]);
    for f in facets {
        if f.points.contains(&0) {
            continue;
        }
        let face: Vec<usize> = f.points.iter().map(|&j| idx[j]).collect();
        pull(points, &face, apexes, out);
    }
    apexes.pop();
}

/// Normalized volume of conv{e_B} inside Σx = k, in units of the smallest
/// lattice simplex; zero when the hull is not (n−1)-dimensional.
pub fn normalized_volume(n: usize, masks: &[u32]) -> u64 {
    if n <= 1 || affine_dimension(n, masks) < n - 1 {
        return if n == 1 && !masks.is_empty() { 1 } else { 0 };
    }
    // Dropping the last coordinate is a lattice isomorphism of the hyperplane.
    let proj: Vec<Vec<i128>> = masks.iter().map(|&b| indicator(n - 1, b)).collect();
    let pts: Vec<Vec<Rat>> = proj.iter().map(|p| p.iter().map(|&v| Rat::int(v as i64)).collect()).collect();
    let mut total: u64 = 0;
    for s in pulling_triangulation(&pts) {
        let base = &proj[s[0]];
        let m: Vec<Vec<i128>> =
            s[1..].iter().map(|&j| proj[j].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        total += det_i128(m).unsigned_abs() as u64;
    }
    total
}

/// Normalized volume of Δ_{k,n}: the Eulerian number A(n−1, k−1).
pub fn hypersimplex_volume(k: usize, n: usize) -> u64 {
    if k == 0 || k >= n {
        return u64::from(n == 1);
    }
    let m = n - 1;
    let j = k - 1;
    let mut s: i128 = 0;
    for i in 0..=j {
        let term = binomial(m + 1, i) as i128 * ((j + 1 - i) as i128).pow(m as u32);
        s += if i % 2 == 0 { term } else { -term };
    }
    s as u64
}

/// Whether the relative interiors are disjoint: maximize a common slack t
/// over points strictly inside both (t ≤ 1); disjoint iff the optimum is ≤ 0.
pub fn interiors_disjoint(p: &PositroidPolytope, q: &PositroidPolytope) -> bool {
    assert_eq!(p.n, q.n, "polytopes in different ambient spaces");
    if p.k != q.k {
        return true;
    }
    let n = p.n;
    let mut lp = LinearProgram::<Rat>::new(n + 1);
    lp.set_all_free();
    lp.set_upper(n, Rat::int(1));
    let mut obj = vec![Rat::int(0); n + 1];
    obj[n] = Rat::int(1);
    lp.set_objective(obj);
    let mut sum = vec![Rat::int(1); n + 1];
    sum[n] = Rat::int(0);
    lp.add_row(sum, Relation::Eq, Rat::int(p.k as i64));
    for poly in [p, q] {
        for eq in poly.implicit_equalities() {
            let mut row = eq.row(n);
            row.push(Rat::int(0));
            lp.add_row(row, Relation::Eq, Rat::int(eq.bound));
        }
        for ineq in poly.proper_inequalities() {
            let mut row = ineq.row(n);
            row.push(Rat::int(1));
            lp.add_row(row, Relation::Le, Rat::int(ineq.bound));
        }
    }
    match lp.maximize() {
        LpOutcome::Optimal { value, .. } => value <= Rat::int(0),
        LpOutcome::Infeasible => true,
        LpOutcome::Unbounded => unreachable!("slack is bounded above"),
    }
}

/// For two full-dimensional positroid polytopes: interiors meet iff the
/// common bases span dimension n − 1 (their intersection is the hull of the
/// common bases, being cut out by a totally unimodular difference system).
pub fn full_dimensional_overlap(n: usize, a: &[u32], b: &[u32]) -> bool {
    let common = common_bases(a, b);
    common.len() >= n && affine_dimension(n, &common) == n - 1
}

fn common_bases(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// The intersection P ∩ Q computed from the joint H-description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionFace {
    /// Affine dimension; −1 for an empty intersection.
    pub dimension: isize,
    pub vertices: Vec<u32>,
    /// For codimension-one intersections: whether the vertex set is the
    /// basis family of a positroid, and its label when that label is loopless.
    pub positroid: Option<bool>,
    pub loopless_label: Option<DecoratedPermutation>,
}

pub fn intersection_face(p: &PositroidPolytope, q: &PositroidPolytope) -> Result<IntersectionFace> {
    assert_eq!(p.n, q.n, "polytopes in different ambient spaces");
    let n = p.n;
    let (mut ineqs, eq) = p.h_description();
    let (more, eq2) = q.h_description();
    ineqs.extend(more);
    let points = polytope_vertices(&ineqs, &[eq, eq2], n)?;
    let mut vertices = Vec::with_capacity(points.len());
    for x in &points {
        let mut mask = 0u32;
        for (i, v) in x.iter().enumerate() {
            if *v == Rat::int(1) {
                mask |= 1 << i;
            } else if *v != Rat::int(0) {
                return Err(Error::NonIntegralVertex);
            }
        }
        vertices.push(mask);
    }
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.is_empty() {
        return Ok(IntersectionFace { dimension: -1, vertices, positroid: None, loopless_label: None });
    }
    let dimension = affine_dimension(n, &vertices) as isize;
    let mut face = IntersectionFace { dimension, vertices, positroid: None, loopless_label: None };
    if dimension == n as isize - 2 && is_matroid_by_exchange(&face.vertices) {
        let is_pos = is_positroid_by_envelope(n, &face.vertices)?;
        face.positroid = Some(is_pos);
        if is_pos {
            let label = Positroid::from_bases(n, face.vertices.clone())?.label_of()?;
            if label.is_loopless() {
                face.loopless_label = Some(label);
            }
        }
    } else if dimension == n as isize - 2 {
        face.positroid = Some(false);
    }
    Ok(face)
}

/// μ(A) = Σ p_I² e_I / Σ p_I² over the maximal minors of a full-rank A.
pub fn moment_map<S: Scalar>(a: &Matrix<S>) -> Result<Vec<S>> {
    let (k, n) = (a.nrows(), a.ncols());
    let mut num = vec![S::zero(); n];
    let mut den = S::zero();
    for mask in k_subsets(n, k) {
        let cols: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
        let p = a.maximal_minor(&cols);
        if p.is_zero() {
            continue;
        }
        let w = p.clone() * p;
        for &j in &cols {
            num[j] = num[j].clone() + w.clone();
        }
        den = den + w;
    }
    if den.is_zero() {
        return Err(Error::InvalidArgument("matrix is not of full rank".into()));
    }
    Ok(num.into_iter().map(|v| v / den.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plabic::network_matrix;
    use crate::subsets::{full, mask_of};
    use crate::LeDiagram;
    use rand::{Rng, SeedableRng};

    fn perm(s: &str) -> DecoratedPermutation {
        s.parse().unwrap()
    }

    fn rand_weights(rng: &mut impl Rng, m: usize) -> Vec<Rat> {
        (0..m).map(|_| Rat::ratio(rng.gen_range(1..=100), rng.gen_range(1..=20))).collect()
    }

    #[test]
    fn barycenter_inside_hypersimplex() {
        let d = PositroidPolytope::hypersimplex(2, 5);
        assert!(d.contains(&d.barycenter(), Strictness::Interior));
        for &b in d.vertices() {
            let x: Vec<Rat> = (0..5).map(|i| Rat::int((b >> i & 1) as i64)).collect();
            assert!(d.contains(&x, Strictness::Boundary));
            assert!(!d.contains(&x, Strictness::Interior));
        }
    }

    #[test]
    fn volumes() {
        for n in 2..=6 {
            assert_eq!(normalized_volume(n, &k_subsets(n, 1)), 1);
            for k in 1..n {
                assert_eq!(PositroidPolytope::hypersimplex(k, n).normalized_volume(), hypersimplex_volume(k, n));
            }
        }
        assert_eq!(hypersimplex_volume(2, 4), 4);
        assert_eq!(hypersimplex_volume(3, 6), 66);
        // Brute-force check on Δ_{2,4}: the octahedron splits into four
        // unimodular simplices around the diagonal e_13 − e_24.
        let d = PositroidPolytope::hypersimplex(2, 4);
        let pts: Vec<Vec<Rat>> = d.vertices().iter().map(|&b| (0..3).map(|i| Rat::int((b >> i & 1) as i64)).collect()).collect();
        assert_eq!(pulling_triangulation(&pts).len(), 4);
    }

    #[test]
    fn example_cells_fill_the_hypersimplex() {
        let cells = ["(4,1,2,5,3)", "(2,5,1,3,4)", "(3,1,5,2,4)"];
        let total: u64 = cells.iter().map(|c| PositroidPolytope::from_cell(&perm(c)).normalized_volume()).sum();
        assert_eq!(total, hypersimplex_volume(3, 5));
        for i in 0..3 {
            for j in i + 1..3 {
                let a = PositroidPolytope::from_cell(&perm(cells[i]));
                let b = PositroidPolytope::from_cell(&perm(cells[j]));
                assert!(interiors_disjoint(&a, &b));
                let f = intersection_face(&a, &b).unwrap();
                if f.dimension == 3 {
                    assert_eq!(f.positroid, Some(true));
                    assert!(f.loopless_label.is_some());
                }
            }
        }
    }

    #[test]
    fn self_overlap_and_split() {
        let d = PositroidPolytope::hypersimplex(2, 5);
        assert!(!interiors_disjoint(&d, &d));
        // x4 + x5 ≤ 1 versus x4 + x5 ≥ 1 inside Δ_{2,5}.
        let low: Vec<u32> = d.vertices().iter().copied().filter(|b| (b & 0b11000).count_ones() <= 1).collect();
        let high: Vec<u32> = d.vertices().iter().copied().filter(|b| (b & 0b11000).count_ones() >= 1).collect();
        let pl = PositroidPolytope::new(&Positroid::from_bases(5, low.clone()).unwrap());
        let ph = PositroidPolytope::new(&Positroid::from_bases(5, high.clone()).unwrap());
        assert!(interiors_disjoint(&pl, &ph));
        assert!(!full_dimensional_overlap(5, &low, &high));
        let f = intersection_face(&pl, &ph).unwrap();
        assert_eq!(f.dimension, 3);
        assert_eq!(f.positroid, Some(true));
        let same = intersection_face(&d, &d).unwrap();
        assert_eq!(same.vertices, d.vertices());
    }

    #[test]
    fn h_and_v_descriptions_agree() {
        for n in 1..=5 {
            for p in DecoratedPermutation::all(n) {
                let poly = PositroidPolytope::from_cell(&p);
                let mut got: Vec<u32> = poly
                    .vertices_from_h()
                    .unwrap()
                    .iter()
                    .map(|x| mask_of(&(1..=n).filter(|&i| x[i - 1] == Rat::int(1)).collect::<Vec<_>>()))
                    .collect();
                got.sort_unstable();
                assert_eq!(got, poly.vertices(), "{p}");
            }
        }
    }

    #[test]
    fn lp_and_lattice_overlap_tests_agree() {
        let cells: Vec<PositroidPolytope> = DecoratedPermutation::all_with_k(5, 2)
            .iter()
            .map(PositroidPolytope::from_cell)
            .filter(|c| c.dimension() == 4)
            .collect();
        let mut disjoint = 0;
        for a in &cells {
            for b in &cells {
                let lp = interiors_disjoint(a, b);
                assert_eq!(lp, !full_dimensional_overlap(5, a.vertices(), b.vertices()));
                disjoint += lp as usize;
            }
        }
        assert!(disjoint > 0);
    }

    #[test]
    fn symmetries_of_polytopes() {
        for n in 2..=6 {
            for p in DecoratedPermutation::all(n) {
                let m = Positroid::from_cell(&p);
                let rot: Vec<u32> = {
                    let mut v: Vec<u32> = m.bases().iter().map(|&b| rotate_down(n, b)).collect();
                    v.sort_unstable();
                    v
                };
                let shifted = Positroid::from_cell(&p.cyclic_shift(1));
                assert_eq!(shifted.bases(), &rot[..], "{p}");
                let flipped: Vec<u32> = {
                    let mut v: Vec<u32> = m.bases().iter().map(|b| !b & full(n)).collect();
                    v.sort_unstable();
                    v
                };
                let inv = Positroid::from_cell(&p.inverse());
                assert_eq!(inv.bases(), &flipped[..]);
                if n <= 5 && m.polytope_dimension() == n - 1 {
                    let v = normalized_volume(n, m.bases());
                    assert_eq!(normalized_volume(n, shifted.bases()), v);
                    assert_eq!(normalized_volume(n, inv.bases()), v);
                }
            }
        }
    }

    /// Relabels i ↦ i − 1 (mod n).
    fn rotate_down(n: usize, b: u32) -> u32 {
        ((b >> 1) | ((b & 1) << (n - 1))) & full(n)
    }

    #[test]
    fn moment_map_examples() {
        let a = Matrix::from_rows(vec![
            vec![Rat::int(1), Rat::int(0), Rat::int(5)],
            vec![Rat::int(0), Rat::int(1), Rat::int(0)],
        ]);
        let id = Matrix::from_rows_with_cols(vec![vec![Rat::int(1), Rat::int(0), Rat::int(0)], vec![Rat::int(0), Rat::int(1), Rat::int(0)]], 3);
        assert_eq!(moment_map(&id).unwrap(), vec![Rat::int(1), Rat::int(1), Rat::int(0)]);
        let mu = moment_map(&a).unwrap();
        assert_eq!(mu.iter().fold(Rat::int(0), |s, v| s + v), Rat::int(2));
        let ones = Matrix::from_rows(vec![vec![Rat::int(1); 4]]);
        assert_eq!(moment_map(&ones).unwrap(), vec![Rat::ratio(1, 4); 4]);
    }

    #[test]
    fn moment_images_of_cells_are_interior() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(2..=6);
            let p = DecoratedPermutation::random(n, &mut rng);
            let d = LeDiagram::from_permutation(&p);
            let w = rand_weights(&mut rng, d.dimension());
            let a = network_matrix(&d, &w).unwrap().matrix;
            let poly = PositroidPolytope::from_cell(&p);
            let mu = moment_map(&a).unwrap();
            assert!(poly.contains(&mu, Strictness::Interior), "{p}");
        }
    }
}
