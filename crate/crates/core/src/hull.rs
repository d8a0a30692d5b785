//! Double description method: extreme rays of pointed cones, vertices of
//! bounded polyhedra and facets of point sets.

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::scalar::Scalar;

/// Growable bitset over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn with_capacity(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn and(&self, other: &Self) -> Self {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.0.iter().enumerate().all(|(i, w)| self.0.get(i).copied().unwrap_or(0) & w == *w)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }
}

/// Extreme rays of the pointed cone {y : a_i·y ≤ 0 for all i}.
pub fn cone_extreme_rays<S: Scalar>(a: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
    let Some(d) = a.first().map(|r| r.len()) else { return Err(Error::Unbounded) };
    if d == 0 {
        return Ok(Vec::new());
    }
    // Pick d independent rows greedily.
    let mut basis_rows: Vec<usize> = Vec::new();
    for i in 0..a.len() {
        let mut trial: Vec<Vec<S>> = basis_rows.iter().map(|&j| a[j].clone()).collect();
        trial.push(a[i].clone());
        if Matrix::from_rows(trial).rank() == basis_rows.len() + 1 {
            basis_rows.push(i);
            if basis_rows.len() == d {
                break;
            }
        }
    }
    if basis_rows.len() < d {
        return Err(Error::Unbounded);
    }
    let r = Matrix::from_rows(basis_rows.iter().map(|&j| a[j].clone()).collect());
    let inv = r.inverse().ok_or(Error::Unbounded)?;
    let m = a.len();
    let mut rays: Vec<(Vec<S>, Bits)> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v: Vec<S> = (0..d).map(|i| -inv[(i, j)].clone()).collect();
        S::normalize_ray(&mut v);
        let mut z = Bits::with_capacity(m);
        for (jj, &row) in basis_rows.iter().enumerate() {
            if jj != j {
                z.insert(row);
            }
        }
        rays.push((v, z));
    }
    let mut processed: Vec<bool> = vec![false; m];
    for &row in &basis_rows {
        processed[row] = true;
    }
    for i in 0..m {
        if processed[i] {
            continue;
        }
        processed[i] = true;
        let vals: Vec<S> = rays.iter().map(|(v, _)| dot(&a[i], v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].sign() > 0).collect();
        if pos.is_empty() {
            for (j, (_, z)) in rays.iter_mut().enumerate() {
                if vals[j].sign() == 0 {
                    z.insert(i);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].sign() < 0).collect();
        let mut fresh: Vec<(Vec<S>, Bits)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == q || !rays[r].1.is_superset(&common));
                if !adjacent {
                    continue;
                }
                let vp = vals[p].clone();
                let vq = vals[q].clone();
                let mut v: Vec<S> = rays[q]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(x, y)| vp.clone() * x.clone() - vq.clone() * y.clone())
                    .collect();
                S::normalize_ray(&mut v);
                let mut z = common;
                z.insert(i);
                fresh.push((v, z));
            }
        }
        let mut next: Vec<(Vec<S>, Bits)> = Vec::with_capacity(rays.len() + fresh.len());
        for (j, (v, mut z)) in rays.into_iter().enumerate() {
            match vals[j].sign() {
                1 => {}
                0 => {
                    z.insert(i);
                    next.push((v, z));
                }
                _ => next.push((v, z)),
            }
        }
        next.extend(fresh);
        rays = next;
    }
    Ok(rays.into_iter().map(|(v, _)| v).collect())
}

/// Vertices of the bounded polyhedron {x : A x ≤ b, E x = f} in R^dim.
/// Returns an empty list when the polyhedron is empty.
pub fn polytope_vertices<S: Scalar>(
    ineqs: &[(Vec<S>, S)],
    eqs: &[(Vec<S>, S)],
    dim: usize,
) -> Result<Vec<Vec<S>>> {
    let e = Matrix::from_rows_with_cols(eqs.iter().map(|(a, _)| a.clone()).collect(), dim);
    let f: Vec<S> = eqs.iter().map(|(_, b)| b.clone()).collect();
    let x0 = if eqs.is_empty() { vec![S::zero(); dim] } else {
        match e.solve(&f) {
            Some(x) => x,
            None => return Ok(Vec::new()),
        }
    };
    let null = if eqs.is_empty() {
        Matrix::<S>::identity(dim).to_rows()
    } else {
        e.nullspace()
    };
    let dp = null.len();
    if dp == 0 {
        let ok = ineqs.iter().all(|(a, b)| dot(a, &x0) <= *b || (dot(a, &x0) - b.clone()).is_negligible());
        return Ok(if ok { vec![x0] } else { Vec::new() });
    }
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(ineqs.len() + 1);
    for (a, b) in ineqs {
        let mut row: Vec<S> = null.iter().map(|nv| dot(a, nv)).collect();
        row.push(-(b.clone() - dot(a, &x0)));
        rows.push(row);
    }
    let mut hom = vec![S::zero(); dp + 1];
    hom[dp] = -S::one();
    rows.push(hom);
    let rays = cone_extreme_rays(&rows)?;
    let mut out = Vec::new();
    for ray in rays {
        let s = ray[dp].clone();
        match s.sign() {
            1 => {
                let mut x = x0.clone();
                for (j, nv) in null.iter().enumerate() {
                    let c = ray[j].clone() / s.clone();
                    if c.is_zero() {
                        continue;
                    }
                    for (xi, ni) in x.iter_mut().zip(nv) {
                        *xi = xi.clone() + c.clone() * ni.clone();
                    }
                }
                out.push(x);
            }
            0 => {
                if ray.iter().any(|v| !v.is_negligible()) {
                    return Err(Error::Unbounded);
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

/// A facet inequality a·x ≤ b with the indices of the input points it contains.
#[derive(Clone, Debug)]
pub struct Facet<S> {
    pub normal: Vec<S>,
    pub offset: S,
    pub points: Vec<usize>,
}

/// Facets of conv(points), which must be full-dimensional in R^d (d ≥ 1).
pub fn facets_of_points<S: Scalar>(points: &[Vec<S>]) -> Result<Vec<Facet<S>>> {
    let d = points.first().map_or(0, |p| p.len());
    // Polar cone: (a, β) with a·v − β ≤ 0.
    let rows: Vec<Vec<S>> = points
        .iter()
        .map(|p| {
            let mut r = p.clone();
            r.push(-S::one());
            r
        })
        .collect();
    let rays = cone_extreme_rays(&rows)?;
    let mut out = Vec::new();
    for ray in rays {
        if ray[..d].iter().all(|x| x.is_negligible()) {
            continue;
        }
        let normal = ray[..d].to_vec();
        let offset = ray[d].clone();
        let pts: Vec<usize> = (0..points.len())
            .filter(|&i| (dot(&normal, &points[i]) - offset.clone()).is_negligible())
            .collect();
        out.push(Facet { normal, offset, points: pts });
    }
    Ok(out)
}

/// Coordinates of the points inside their affine hull (injective projection
/// onto pivot coordinates of the difference vectors), and the hull dimension.
pub fn affine_coordinates<S: Scalar>(points: &[Vec<S>]) -> (Vec<Vec<S>>, usize) {
    let Some(p0) = points.first() else { return (Vec::new(), 0) };
    let diffs: Vec<Vec<S>> = points
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    let (_, pivots) = Matrix::from_rows(diffs.clone()).rref();
    let coords = diffs.iter().map(|d| pivots.iter().map(|&c| d[c].clone()).collect()).collect();
    (coords, pivots.len())
}

/// Edges of conv(points) as index pairs; every point must be a vertex.
pub fn vertex_edges<S: Scalar>(points: &[Vec<S>]) -> Result<Vec<(usize, usize)>> {
    let np = points.len();
    let (coords, dim) = affine_coordinates(points);
    if dim == 0 {
        return Ok(Vec::new());
    }
    let facets = facets_of_points(&coords)?;
    let mut incidence: Vec<Bits> = vec![Bits::with_capacity(facets.len()); np];
    for (f, facet) in facets.iter().enumerate() {
        for &p in &facet.points {
            incidence[p].insert(f);
        }
    }
    let mut edges = Vec::new();
    for u in 0..np {
        for v in u + 1..np {
            let common = incidence[u].and(&incidence[v]);
            let face: Vec<usize> = (0..np).filter(|&w| incidence[w].is_superset(&common)).collect();
            if face.len() == 2 {
                edges.push((u, v));
            }
        }
    }
    Ok(edges)
}
