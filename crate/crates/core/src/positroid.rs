//! Positroids as basis families: ranks, connectivity, duality, matroid and
//! positroid recognition, and recovery of the cell label.

use std::collections::{BTreeMap, HashSet};

use serde_json::json;

use crate::error::{Error, Result};
use crate::hull::vertex_edges;
use crate::linalg::affine_dim_i128;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::perm::DecoratedPermutation;
use crate::plabic::cell_bases;
use crate::scalar::Scalar;
use crate::subsets::{cyclic_interval, elements, full, k_subsets};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Positroid {
    n: usize,
    k: usize,
    /// Sorted bitmasks, bit i−1 for element i.
    bases: Vec<u32>,
    label: Option<DecoratedPermutation>,
}

impl Positroid {
    /// The positroid of a cell, from the nonzero minors of its network matrix.
    pub fn from_cell(p: &DecoratedPermutation) -> Self {
        Positroid { n: p.n(), k: p.k(), bases: cell_bases(p), label: Some(p.clone()) }
    }

    /// A basis family with no positroid check (use for candidate matroids).
    pub fn from_bases(n: usize, mut bases: Vec<u32>) -> Result<Self> {
        if n > 32 {
            return Err(Error::InvalidArgument(format!("n = {n} exceeds 32")));
        }
        bases.sort_unstable();
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(Error::InvalidArgument("a basis family must be nonempty".into()));
        };
        let k = first.count_ones() as usize;
        if bases.iter().any(|b| b.count_ones() as usize != k || *b & !full(n) != 0) {
            return Err(Error::InvalidArgument("bases must be k-subsets of [n] of one size".into()));
        }
        Ok(Positroid { n, k, bases, label: None })
    }

    /// The uniform matroid of rank k on [n].
    pub fn uniform(k: usize, n: usize) -> Self {
        Self::from_bases(n, k_subsets(n, k)).expect("k ≤ n")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    pub fn label(&self) -> Option<&DecoratedPermutation> {
        self.label.as_ref()
    }

    pub fn is_basis(&self, b: u32) -> bool {
        self.bases.binary_search(&b).is_ok()
    }

    /// rank(S) = max over bases of |B ∩ S|.
    pub fn rank(&self, s: u32) -> usize {
        self.bases.iter().map(|b| (b & s).count_ones() as usize).max().unwrap_or(0)
    }

    /// Ranks of all cyclic intervals [i, j], keyed by their endpoints.
    pub fn cyclic_interval_ranks(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for i in 1..=self.n {
            for len in 1..=self.n {
                let j = (i + len - 2) % self.n + 1;
                out.insert((i, j), self.rank(cyclic_interval(self.n, i, len)));
            }
        }
        out
    }

    /// Connected components via the relation a ∼ b when some basis B has
    /// a ∈ B, b ∉ B and B − a + b a basis. Loops and coloops are singletons.
    pub fn connected_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &b in &self.bases {
            for a in 0..self.n {
                if b >> a & 1 == 0 {
                    continue;
                }
                for c in 0..self.n {
                    if b >> c & 1 == 1 {
                        continue;
                    }
                    if self.is_basis(b & !(1 << a) | 1 << c) {
                        let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
                        parent[ra] = rc;
                    }
                }
            }
        }
        (0..self.n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Dimension of the matroid polytope: n minus the number of components.
    pub fn polytope_dimension(&self) -> usize {
        self.n - self.connected_components()
    }

    /// Affine dimension of {e_B}, computed directly.
    pub fn polytope_dimension_by_hull(&self) -> usize {
        let pts: Vec<Vec<i128>> = self.bases.iter().map(|&b| indicator(self.n, b)).collect();
        affine_dim_i128(&pts) as usize
    }

    /// Dual matroid: complemented bases, labeled by the inverse permutation.
    pub fn dual(&self) -> Self {
        let mut bases: Vec<u32> = self.bases.iter().map(|b| !b & full(self.n)).collect();
        bases.sort_unstable();
        Positroid { n: self.n, k: self.n - self.k, bases, label: self.label.as_ref().map(|p| p.inverse()) }
    }

    /// The basis first in the greedy order i < i+1 < … < i−1.
    pub fn gale_minimal_basis(&self, i: usize) -> u32 {
        let mut s = 0u32;
        for t in 0..self.n {
            let x = (i - 1 + t) % self.n;
            let trial = s | 1 << x;
            if self.bases.iter().any(|b| b & trial == trial) {
                s = trial;
            }
        }
        s
    }

    /// The cell label, recovered from the chain of greedy bases and checked
    /// by recomputing the bases of that cell.
    pub fn label_of(&self) -> Result<DecoratedPermutation> {
        let n = self.n;
        let necklace: Vec<u32> = (1..=n).map(|i| self.gale_minimal_basis(i)).collect();
        let mut window = vec![0usize; n];
        let mut coloops = Vec::new();
        for i in 1..=n {
            let cur = necklace[i - 1];
            let next = necklace[i % n];
            let bit = 1u32 << (i - 1);
            if cur & bit == 0 {
                if cur != next {
                    return Err(Error::NotAPositroid);
                }
                window[i - 1] = i;
                continue;
            }
            let added = next & !(cur & !bit);
            if next & bit != 0 && (cur & !bit) | bit == next {
                window[i - 1] = i;
                coloops.push(i);
            } else if added.count_ones() == 1 && (cur & !bit) & next == cur & !bit {
                window[i - 1] = added.trailing_zeros() as usize + 1;
            } else {
                return Err(Error::NotAPositroid);
            }
        }
        let p = DecoratedPermutation::new(window, &coloops).map_err(|_| Error::NotAPositroid)?;
        if cell_bases(&p) != self.bases {
            return Err(Error::NotAPositroid);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut lists: Vec<Vec<usize>> = self.bases.iter().map(|&b| elements(b)).collect();
        lists.sort();
        json!({ "n": self.n, "k": self.k, "bases": lists })
    }
}

fn indicator(n: usize, b: u32) -> Vec<i128> {
    (0..n).map(|i| (b >> i & 1) as i128).collect()
}

fn basis_set(bases: &[u32]) -> HashSet<u32> {
    bases.iter().copied().collect()
}

/// Basis-exchange axiom: for B1, B2 and x ∈ B1∖B2 some y ∈ B2∖B1 has
/// B1 − x + y a basis.
pub fn is_matroid_by_exchange(bases: &[u32]) -> bool {
    if bases.is_empty() {
        return false;
    }
    let set = basis_set(bases);
    for &b1 in bases {
        for &b2 in bases {
            let mut xs = b1 & !b2;
            while xs != 0 {
                let x = xs & xs.wrapping_neg();
                xs &= xs - 1;
                let mut ys = b2 & !b1;
                let mut ok = false;
                while ys != 0 {
                    let y = ys & ys.wrapping_neg();
                    ys &= ys - 1;
                    if set.contains(&(b1 & !x | y)) {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Edge criterion: every edge of conv{e_B} is parallel to some e_i − e_j.
pub fn is_matroid_by_edges(n: usize, bases: &[u32]) -> bool {
    if bases.is_empty() || bases.iter().any(|b| b.count_ones() != bases[0].count_ones()) {
        return false;
    }
    let pts: Vec<Vec<Rat>> =
        bases.iter().map(|&b| (0..n).map(|i| Rat::int((b >> i & 1) as i64)).collect()).collect();
    let edges = vertex_edges(&pts).expect("0/1 polytopes are bounded");
    edges.iter().all(|&(u, v)| (bases[u] ^ bases[v]).count_ones() == 2)
}

/// Whether {Sab, Sad, Sbc, Scd} spans a 2-face of conv{e_B}: some linear
/// functional is maximal exactly on those four vertices (unit slack).
pub fn square_is_face(n: usize, bases: &[u32], square: [u32; 4]) -> bool {
    let nv = n + 1;
    let mut lp = LinearProgram::<Rat>::new(nv);
    lp.set_all_free();
    lp.set_objective(vec![Rat::int(0); nv]);
    let row = |b: u32| {
        let mut r: Vec<Rat> = (0..n).map(|i| Rat::int((b >> i & 1) as i64)).collect();
        r.push(Rat::int(-1));
        r
    };
    for &b in bases {
        if square.contains(&b) {
            lp.add_row(row(b), Relation::Eq, Rat::int(0));
        } else {
            lp.add_row(row(b), Relation::Le, Rat::int(-1));
        }
    }
    matches!(lp.maximize(), LpOutcome::Optimal { .. })
}

/// All squares {Sab, Sad, Sbc, Scd} with a < b < c < d whose four members
/// are bases.
pub fn basis_squares(n: usize, bases: &[u32]) -> Vec<[u32; 4]> {
    let set = basis_set(bases);
    let Some(&first) = bases.first() else { return Vec::new() };
    let k = first.count_ones() as usize;
    if k < 2 || n < 4 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in k_subsets(n, k - 2) {
        let free: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 0).collect();
        for quad in k_subsets(free.len(), 4) {
            let idx: Vec<usize> = (0..free.len()).filter(|&i| quad >> i & 1 == 1).collect();
            let [a, b, c, d] = [0, 1, 2, 3].map(|t| 1u32 << free[idx[t]]);
            let sq = [s | a | b, s | a | d, s | b | c, s | c | d];
            if sq.iter().all(|x| set.contains(x)) {
                out.push(sq);
            }
        }
    }
    out
}

/// Positroid test by 2-faces: no square {Sab, Sad, Sbc, Scd} is a face.
pub fn is_positroid_by_faces(n: usize, bases: &[u32]) -> Result<bool> {
    if !is_matroid_by_exchange(bases) {
        return Err(Error::NotAMatroid);
    }
    Ok(!basis_squares(n, bases).into_iter().any(|sq| square_is_face(n, bases, sq)))
}

/// Positroid test by the cyclic-interval envelope: the bases are exactly
/// the k-sets meeting every cyclic interval [i, j] in at most r_ij elements.
pub fn is_positroid_by_envelope(n: usize, bases: &[u32]) -> Result<bool> {
    if !is_matroid_by_exchange(bases) {
        return Err(Error::NotAMatroid);
    }
    let m = Positroid::from_bases(n, bases.to_vec())?;
    let ranks: Vec<(u32, usize)> = (1..=n)
        .flat_map(|i| (1..n).map(move |len| (i, len)))
        .map(|(i, len)| {
            let iv = cyclic_interval(n, i, len);
            (iv, m.rank(iv))
        })
        .collect();
    let envelope: Vec<u32> = k_subsets(n, m.k)
        .into_iter()
        .filter(|&b| ranks.iter().all(|&(iv, r)| (b & iv).count_ones() as usize <= r))
        .collect();
    let mut sorted = envelope;
    sorted.sort_unstable();
    Ok(sorted == m.bases)
}
