//! Jacobian dimensions of the moment map and the amplituhedron map, positive
//! Z matrices, and the matrix realization of T-duality.

use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::lediagram::LeDiagram;
use crate::linalg::Matrix;
use crate::perm::DecoratedPermutation;
use crate::plabic::boundary_measurements;
use crate::subsets::k_subsets;
use crate::Rat;

/// Largest numerator and denominator of a random weight.
pub const WEIGHT_BOUND: i64 = 10_000;

/// A rational value together with its gradient in a fixed set of variables.
/// An empty gradient stands for a constant.
#[derive(Clone, Debug)]
pub struct Jet {
    pub value: Rat,
    pub grad: Vec<Rat>,
}

impl Jet {
    pub fn constant(value: Rat) -> Self {
        Jet { value, grad: Vec::new() }
    }

    /// The `index`-th of `vars` independent variables, at `value`.
    pub fn variable(value: Rat, index: usize, vars: usize) -> Self {
        let mut grad = vec![Rat::zero(); vars];
        grad[index] = Rat::one();
        Jet { value, grad }
    }

    fn zip(a: &[Rat], b: &[Rat], f: impl Fn(&Rat, &Rat) -> Rat) -> Vec<Rat> {
        let zero = Rat::zero();
        (0..a.len().max(b.len()))
            .map(|i| f(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect()
    }

    fn scaled(grad: &[Rat], c: &Rat) -> Vec<Rat> {
        grad.iter().map(|g| g * c).collect()
    }
}

impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && Jet::zip(&self.grad, &other.grad, |a, b| a - b).iter().all(Zero::is_zero)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { value: self.value + o.value, grad: Jet::zip(&self.grad, &o.grad, |a, b| a + b) }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { value: self.value - o.value, grad: Jet::zip(&self.grad, &o.grad, |a, b| a - b) }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let grad = Jet::zip(&Jet::scaled(&self.grad, &o.value), &Jet::scaled(&o.grad, &self.value), |a, b| a + b);
        Jet { value: self.value * o.value, grad }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let sq = &o.value * &o.value;
        let grad = Jet::zip(&Jet::scaled(&self.grad, &o.value), &Jet::scaled(&o.grad, &self.value), |a, b| (a - b) / &sq);
        Jet { value: self.value / o.value, grad }
    }
}

impl Rem for Jet {
    type Output = Jet;
    fn rem(self, o: Jet) -> Jet {
        let q = (&self.value / &o.value).floor();
        let grad = Jet::zip(&self.grad, &Jet::scaled(&o.grad, &q), |a, b| a - b);
        Jet { value: self.value - o.value * q, grad }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { value: -self.value, grad: self.grad.into_iter().map(|g| -g).collect() }
    }
}

impl Zero for Jet {
    fn zero() -> Self {
        Jet::constant(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.grad.iter().all(Zero::is_zero)
    }
}

impl One for Jet {
    fn one() -> Self {
        Jet::constant(Rat::one())
    }
}

impl Num for Jet {
    type FromStrRadixErr = <Rat as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        Rat::from_str_radix(s, radix).map(Jet::constant)
    }
}

/// Every maximal minor of a k×n matrix, indexed by column mask, computed by
/// Laplace expansion over column subsets. Division free, so it works over any
/// commutative ring. Masks of other sizes hold zero.
pub fn maximal_minors<T>(rows: &[Vec<T>], n: usize) -> Vec<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    let k = rows.len();
    let mut d = vec![T::zero(); 1usize << n];
    d[0] = T::one();
    for r in 1..=k {
        for mask in k_subsets(n, r) {
            let mut acc = T::zero();
            for j in 0..n {
                if mask >> j & 1 == 0 {
                    continue;
                }
                let rest = (mask & !(1 << j)) as usize;
                if d[rest].is_zero() || rows[r - 1][j].is_zero() {
                    continue;
                }
                let term = rows[r - 1][j].clone() * d[rest].clone();
                let above = (mask >> (j + 1)).count_ones();
                acc = if above % 2 == 0 { acc + term } else { acc - term };
            }
            d[mask as usize] = acc;
        }
    }
    for (mask, v) in d.iter_mut().enumerate() {
        if mask.count_ones() as usize != k {
            *v = T::zero();
        }
    }
    d
}

/// A positive rational drawn with numerator and denominator in 1..=10⁴.
pub fn random_weight<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(BigInt::from(rng.gen_range(1..=WEIGHT_BOUND)), BigInt::from(rng.gen_range(1..=WEIGHT_BOUND)))
}

fn random_weights<R: Rng>(count: usize, rng: &mut R) -> Vec<Rat> {
    (0..count).map(|_| random_weight(rng)).collect()
}

fn jet_network(d: &LeDiagram, weights: &[Rat]) -> Vec<Vec<Jet>> {
    let vars = weights.len();
    let jets: Vec<Jet> = weights.iter().enumerate().map(|(i, w)| Jet::variable(w.clone(), i, vars)).collect();
    boundary_measurements(d, &jets)
}

fn jacobian_rank(outputs: &[Jet], vars: usize) -> usize {
    let rows: Vec<Vec<Rat>> = outputs
        .iter()
        .map(|o| (0..vars).map(|i| o.grad.get(i).cloned().unwrap_or_else(Rat::zero)).collect())
        .collect();
    if rows.is_empty() || vars == 0 {
        return 0;
    }
    Matrix::from_rows_with_cols(rows, vars).rank()
}

/// The moment map of the network parametrization at `weights`, with its
/// gradient in the edge weights.
pub fn moment_jets(d: &LeDiagram, weights: &[Rat]) -> Vec<Jet> {
    let n = d.n();
    let minors = maximal_minors(&jet_network(d, weights), n);
    let mut num = vec![Jet::zero(); n];
    let mut den = Jet::zero();
    for mask in k_subsets(n, d.k()) {
        let p = &minors[mask as usize];
        if p.value.is_zero() && p.is_zero() {
            continue;
        }
        let w = p.clone() * p.clone();
        for (j, slot) in num.iter_mut().enumerate() {
            if mask >> j & 1 == 1 {
                *slot = slot.clone() + w.clone();
            }
        }
        den = den + w;
    }
    num.into_iter().map(|v| v / den.clone()).collect()
}

fn stable_rank<R: Rng>(rng: &mut R, mut sample: impl FnMut(&mut R) -> usize) -> Result<usize> {
    let (a, b) = (sample(rng), sample(rng));
    if a == b {
        return Ok(a);
    }
    let (c, d) = (sample(rng), sample(rng));
    if c == d {
        Ok(c)
    } else {
        Err(Error::RankInstability(c, d))
    }
}

/// Rank of the Jacobian of the moment map composed with the network
/// parametrization of the cell, at random positive rational points.
pub fn moment_image_dimension<R: Rng>(p: &DecoratedPermutation, rng: &mut R) -> Result<usize> {
    let d = LeDiagram::from_permutation(p);
    let vars = d.dimension();
    stable_rank(rng, |rng| {
        let w = random_weights(vars, rng);
        jacobian_rank(&moment_jets(&d, &w), vars)
    })
}

/// A (k+m)×n matrix whose maximal minors are all positive.
#[derive(Clone, Debug)]
pub struct PositiveMatrixZ {
    matrix: Matrix<Rat>,
}

impl PositiveMatrixZ {
    /// Certifies every maximal minor exactly.
    pub fn new(matrix: Matrix<Rat>) -> Result<Self> {
        let (rows, n) = (matrix.nrows(), matrix.ncols());
        if rows > n || n > 30 {
            return Err(Error::InvalidArgument(format!("Z must have at most n rows and n ≤ 30, got {rows}×{n}")));
        }
        let minors = maximal_minors(&matrix.to_rows(), n);
        if let Some(mask) = k_subsets(n, rows).into_iter().find(|&m| !minors[m as usize].is_positive()) {
            return Err(Error::InvalidArgument(format!("Z has a non-positive minor on columns {mask:#b}")));
        }
        Ok(PositiveMatrixZ { matrix })
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n(&self) -> usize {
        self.matrix.ncols()
    }
}

/// Vandermonde matrix Z_{ij} = x_j^{i−1} at the nodes 1, …, n.
#[allow(non_snake_case)]
pub fn vandermonde_Z(rows: usize, n: usize) -> Result<PositiveMatrixZ> {
    let nodes: Vec<Rat> = (1..=n).map(|x| Rat::from_integer(BigInt::from(x))).collect();
    vandermonde_Z_at(rows, &nodes)
}

/// Vandermonde matrix at increasing positive nodes.
#[allow(non_snake_case)]
pub fn vandermonde_Z_at(rows: usize, nodes: &[Rat]) -> Result<PositiveMatrixZ> {
    if nodes.iter().any(|x| !x.is_positive()) || nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("nodes must be positive and increasing".into()));
    }
    let m = (0..rows)
        .map(|i| {
            let mut row = Vec::with_capacity(nodes.len());
            for x in nodes {
                row.push(num_traits::pow(x.clone(), i));
            }
            row
        })
        .collect();
    PositiveMatrixZ::new(Matrix::from_rows_with_cols(m, nodes.len()))
}

/// Vandermonde matrix at random increasing positive rational nodes.
pub fn random_positive_z<R: Rng>(rows: usize, n: usize, rng: &mut R) -> Result<PositiveMatrixZ> {
    let mut nodes = Vec::with_capacity(n);
    let mut x = Rat::zero();
    for _ in 0..n {
        x += random_weight(rng);
        nodes.push(x.clone());
    }
    vandermonde_Z_at(rows, &nodes)
}

/// Chart coordinates p_J / p_P of the row span of `m` (k × c), where P is the
/// lexicographically first column set with nonzero minor value.
fn chart_coordinates(m: &[Vec<Jet>], cols: usize) -> Vec<Jet> {
    let k = m.len();
    let minors = maximal_minors(m, cols);
    let mut subsets = k_subsets(cols, k);
    subsets.sort_by_key(|&s| (0..cols).filter(|&j| s >> j & 1 == 1).collect::<Vec<_>>());
    let Some(&pivot) = subsets.iter().find(|&&s| !minors[s as usize].value.is_zero()) else {
        return Vec::new();
    };
    let base = minors[pivot as usize].clone();
    subsets
        .into_iter()
        .filter(|&s| s != pivot && (s & pivot).count_ones() as usize + 1 == k)
        .map(|s| minors[s as usize].clone() / base.clone())
        .collect()
}

/// Rank of the Jacobian of chart coordinates of C ↦ C·Zᵀ composed with the
/// network parametrization, at random positive rational points. Requires
/// Z with k+m rows.
pub fn z_image_dimension<R: Rng>(p: &DecoratedPermutation, z: &PositiveMatrixZ, m: usize, rng: &mut R) -> Result<usize> {
    let d = LeDiagram::from_permutation(p);
    let k = d.k();
    if m % 2 != 0 || z.rows() != k + m || z.n() != p.n() {
        return Err(Error::InvalidArgument(format!(
            "Z must be {}×{} with m even, got {}×{} and m = {m}",
            k + m,
            p.n(),
            z.rows(),
            z.n()
        )));
    }
    let vars = d.dimension();
    if k == 0 {
        return Ok(0);
    }
    let zt: Vec<Vec<Jet>> = z.matrix().to_rows().into_iter().map(|r| r.into_iter().map(Jet::constant).collect()).collect();
    stable_rank(rng, |rng| {
        let w = random_weights(vars, rng);
        let c = jet_network(&d, &w);
        let image: Vec<Vec<Jet>> = c
            .iter()
            .map(|row| {
                zt.iter()
                    .map(|zr| row.iter().zip(zr).fold(Jet::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
                    .collect()
            })
            .collect();
        jacobian_rank(&chart_coordinates(&image, k + m), vars)
    })
}

/// The n×n matrix realizing T-duality, built from the (m/2)×n matrix λ.
#[derive(Clone, Debug)]
pub struct QMatrix {
    half_m: usize,
    matrix: Matrix<Rat>,
}

impl QMatrix {
    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.matrix
    }

    pub fn m(&self) -> usize {
        2 * self.half_m
    }
}

/// Q_{ab} = Σ_i (−1)^i [a = b−m/2+i] · p_{b−m/2,…,(b−m/2+i omitted),…,b}(λ),
/// indices cyclic, minors taken with columns in the listed order. λ must
/// have every cyclically consecutive m/2-minor nonzero.
pub fn q_matrix(lambda: &Matrix<Rat>, m: usize) -> Result<QMatrix> {
    let (h, n) = (lambda.nrows(), lambda.ncols());
    if m == 0 || m % 2 != 0 || h != m / 2 || n <= h {
        return Err(Error::InvalidArgument(format!("λ must have m/2 rows and fewer than n, got {h}×{n} with m = {m}")));
    }
    let window_minor = |cols: &[usize]| lambda.select_columns(cols).det();
    for b in 0..n {
        let cols: Vec<usize> = (0..h).map(|t| (b + t) % n).collect();
        if window_minor(&cols).is_zero() {
            return Err(Error::NonGenericLambda);
        }
    }
    let mut q: Matrix<Rat> = Matrix::zeros(n, n);
    for b in 0..n {
        let window: Vec<usize> = (0..=h).map(|t| (b + n - h + t) % n).collect();
        for i in 0..=h {
            let cols: Vec<usize> = window.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &c)| c).collect();
            let v = window_minor(&cols);
            let a = window[i];
            q[(a, b)] = if i % 2 == 0 { q[(a, b)].clone() + v } else { q[(a, b)].clone() - v };
        }
    }
    Ok(QMatrix { half_m: h, matrix: q })
}

/// The m = 2 case from a single row λ.
pub fn q_matrix_m2(lambda: &[Rat]) -> Result<QMatrix> {
    q_matrix(&Matrix::from_rows(vec![lambda.to_vec()]), 2)
}

/// Image of a point under T-duality. `c` spans a point containing the row
/// span of λ; it is rewritten with λ on top, multiplied by Q, and the
/// remaining bottom rows are returned.
pub fn t_dual_point(c: &Matrix<Rat>, lambda: &Matrix<Rat>) -> Result<Matrix<Rat>> {
    let (rows, n) = (c.nrows(), c.ncols());
    let h = lambda.nrows();
    if lambda.ncols() != n || h > rows {
        return Err(Error::InvalidArgument("λ and C have incompatible shapes".into()));
    }
    if c.rank() != rows {
        return Err(Error::InvalidArgument("C must have full row rank".into()));
    }
    let mut basis = lambda.to_rows();
    if Matrix::from_rows_with_cols(basis.clone(), n).rank() != h {
        return Err(Error::NonGenericLambda);
    }
    let mut stacked = basis.clone();
    stacked.extend(c.to_rows());
    if Matrix::from_rows_with_cols(stacked, n).rank() != rows {
        return Err(Error::LambdaNotInRowSpan);
    }
    for row in c.to_rows() {
        let mut trial = basis.clone();
        trial.push(row);
        if Matrix::from_rows_with_cols(trial.clone(), n).rank() == trial.len() {
            basis = trial;
        }
    }
    let q = q_matrix(lambda, 2 * h)?;
    let full = Matrix::from_rows_with_cols(basis, n).mul(q.matrix());
    debug_assert!((0..h).all(|r| full.row(r).iter().all(Zero::is_zero)));
    Ok(full.select_rows(&(h..rows).collect::<Vec<_>>()))
}

/// Row span of C with λ moved to the top, as used by [`t_dual_point`].
pub fn lambda_on_top(c: &Matrix<Rat>, lambda: &Matrix<Rat>) -> Matrix<Rat> {
    let n = c.ncols();
    let mut basis = lambda.to_rows();
    for row in c.to_rows() {
        let mut trial = basis.clone();
        trial.push(row);
        if Matrix::from_rows_with_cols(trial.clone(), n).rank() == trial.len() {
            basis = trial;
        }
    }
    Matrix::from_rows_with_cols(basis, n)
}

/// Network matrix of a cell at random positive rational weights.
pub fn random_cell_point<R: Rng>(p: &DecoratedPermutation, rng: &mut R) -> Matrix<Rat> {
    let d = LeDiagram::from_permutation(p);
    let w = random_weights(d.dimension(), rng);
    Matrix::from_rows_with_cols(boundary_measurements(&d, &w), p.n())
}

/// Random combinations with positive coefficients of the rows of `c`, one per
/// output row.
pub fn random_row_combination<R: Rng>(c: &Matrix<Rat>, count: usize, rng: &mut R) -> Matrix<Rat> {
    let rows = (0..count)
        .map(|_| {
            let coeffs = random_weights(c.nrows(), rng);
            (0..c.ncols())
                .map(|j| (0..c.nrows()).fold(Rat::zero(), |acc, i| acc + &coeffs[i] * &c[(i, j)]))
                .collect()
        })
        .collect();
    Matrix::from_rows_with_cols(rows, c.ncols())
}
