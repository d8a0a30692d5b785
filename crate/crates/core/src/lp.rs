//! Dense two-phase simplex with Bland's rule, generic over [`Scalar`].
//!
//! With `BigRational` the method is exact and terminates on degenerate input.

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<S> {
    Optimal { value: S, point: Vec<S> },
    Infeasible,
    Unbounded,
}

impl<S> LpOutcome<S> {
    pub fn value(&self) -> Option<&S> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// maximize c·x subject to rows, with per-variable sign freedom.
#[derive(Clone, Debug)]
pub struct LinearProgram<S> {
    n_vars: usize,
    objective: Vec<S>,
    rows: Vec<(Vec<S>, Relation, S)>,
    free: Vec<bool>,
    upper: Vec<Option<S>>,
}

impl<S: Scalar> LinearProgram<S> {
    /// All variables start nonnegative.
    pub fn new(n_vars: usize) -> Self {
        LinearProgram {
            n_vars,
            objective: vec![S::zero(); n_vars],
            rows: Vec::new(),
            free: vec![false; n_vars],
            upper: vec![None; n_vars],
        }
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn set_all_free(&mut self) {
        self.free.iter_mut().for_each(|f| *f = true);
    }

    pub fn set_upper(&mut self, var: usize, bound: S) {
        self.upper[var] = Some(bound);
    }

    pub fn set_objective(&mut self, c: Vec<S>) {
        assert_eq!(c.len(), self.n_vars);
        self.objective = c;
    }

    pub fn add_row(&mut self, coeffs: Vec<S>, rel: Relation, rhs: S) {
        assert_eq!(coeffs.len(), self.n_vars);
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn maximize(&self) -> LpOutcome<S> {
        // Standard form columns: x_j = pos_j - neg_j for free j.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.n_vars);
        let mut ncols = 0;
        for j in 0..self.n_vars {
            if self.free[j] {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                col_of.push((ncols, None));
                ncols += 1;
            }
        }
        let expand = |coeffs: &[S]| {
            let mut v = vec![S::zero(); ncols];
            for (j, c) in coeffs.iter().enumerate() {
                let (p, q) = col_of[j];
                v[p] = c.clone();
                if let Some(q) = q {
                    v[q] = -c.clone();
                }
            }
            v
        };
        let mut a: Vec<Vec<S>> = Vec::new();
        let mut b: Vec<S> = Vec::new();
        for (coeffs, rel, rhs) in &self.rows {
            let row = expand(coeffs);
            match rel {
                Relation::Le => {
                    a.push(row);
                    b.push(rhs.clone());
                }
                Relation::Ge => {
                    a.push(row.into_iter().map(|x| -x).collect());
                    b.push(-rhs.clone());
                }
                Relation::Eq => {
                    a.push(row.iter().map(|x| -x.clone()).collect());
                    b.push(-rhs.clone());
                    a.push(row);
                    b.push(rhs.clone());
                }
            }
        }
        for (j, u) in self.upper.iter().enumerate() {
            if let Some(u) = u {
                let mut e = vec![S::zero(); self.n_vars];
                e[j] = S::one();
                a.push(expand(&e));
                b.push(u.clone());
            }
        }
        let c = expand(&self.objective);
        match simplex_standard(&a, &b, &c) {
            LpOutcome::Optimal { value, point } => {
                let x = (0..self.n_vars)
                    .map(|j| {
                        let (p, q) = col_of[j];
                        match q {
                            Some(q) => point[p].clone() - point[q].clone(),
                            None => point[p].clone(),
                        }
                    })
                    .collect();
                LpOutcome::Optimal { value, point: x }
            }
            LpOutcome::Infeasible => LpOutcome::Infeasible,
            LpOutcome::Unbounded => LpOutcome::Unbounded,
        }
    }
}

/// Tableau in dictionary form: basic variable of each row, coefficients over
/// all variables, and the right-hand side.
struct Tableau<S> {
    m: usize,
    nv: usize,
    t: Vec<Vec<S>>,
    rhs: Vec<S>,
    obj: Vec<S>,
    obj_val: S,
    basis: Vec<usize>,
}

impl<S: Scalar> Tableau<S> {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = S::one() / self.t[row][col].clone();
        for x in self.t[row].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        self.rhs[row] = self.rhs[row].clone() * inv;
        let prow = self.t[row].clone();
        let prhs = self.rhs[row].clone();
        for i in 0..self.m {
            if i == row || self.t[i][col].is_negligible() {
                continue;
            }
            let f = self.t[i][col].clone();
            for (j, pv) in prow.iter().enumerate() {
                if !pv.is_zero() {
                    self.t[i][j] = self.t[i][j].clone() - f.clone() * pv.clone();
                }
            }
            self.t[i][col] = S::zero();
            self.rhs[i] = self.rhs[i].clone() - f * prhs.clone();
        }
        if !self.obj[col].is_negligible() {
            let f = self.obj[col].clone();
            for (j, pv) in prow.iter().enumerate() {
                if !pv.is_zero() {
                    self.obj[j] = self.obj[j].clone() - f.clone() * pv.clone();
                }
            }
            self.obj[col] = S::zero();
            self.obj_val = self.obj_val.clone() + f * prhs;
        }
        self.basis[row] = col;
    }

    /// Run Bland's rule to optimality over columns `0..limit`.
    /// Returns false if unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        loop {
            let Some(col) = (0..limit).find(|&j| self.obj[j].sign() > 0) else { return true };
            let mut best: Option<(usize, S)> = None;
            for i in 0..self.m {
                if self.t[i][col].sign() > 0 {
                    let ratio = self.rhs[i].clone() / self.t[i][col].clone();
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (!(ratio > *br) && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((row, _)) => self.pivot(row, col),
            }
        }
    }
}

/// maximize c·x s.t. A x ≤ b, x ≥ 0.
pub fn simplex_standard<S: Scalar>(a: &[Vec<S>], b: &[S], c: &[S]) -> LpOutcome<S> {
    let m = a.len();
    let n = c.len();
    // Columns: originals 0..n, slacks n..n+m, auxiliary n+m.
    let nv = n + m + 1;
    let aux = n + m;
    let mut t: Vec<Vec<S>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let mut r = row.clone();
        r.resize(nv, S::zero());
        r[n + i] = S::one();
        r[aux] = -S::one();
        t.push(r);
    }
    let mut tab = Tableau {
        m,
        nv,
        t,
        rhs: b.to_vec(),
        obj: vec![S::zero(); nv],
        obj_val: S::zero(),
        basis: (n..n + m).collect(),
    };
    let most_negative = (0..m)
        .filter(|&i| tab.rhs[i].sign() < 0)
        .min_by(|&x, &y| tab.rhs[x].partial_cmp(&tab.rhs[y]).unwrap_or(std::cmp::Ordering::Equal));
    if let Some(row) = most_negative {
        // Phase one: maximize -aux.
        tab.obj[aux] = -S::one();
        tab.pivot(row, aux);
        tab.optimize(nv);
        if tab.obj_val.sign() != 0 {
            return LpOutcome::Infeasible;
        }
        if let Some(row) = tab.basis.iter().position(|&v| v == aux) {
            if let Some(col) = (0..aux).find(|&j| !tab.t[row][j].is_negligible()) {
                tab.pivot(row, col);
            }
        }
    }
    // Drop the auxiliary column from consideration and install the objective.
    for r in tab.t.iter_mut() {
        r[aux] = S::zero();
    }
    tab.obj = vec![S::zero(); tab.nv];
    tab.obj_val = S::zero();
    for j in 0..n {
        tab.obj[j] = c[j].clone();
    }
    for i in 0..m {
        let bv = tab.basis[i];
        if bv < tab.nv && !tab.obj[bv].is_negligible() {
            let f = tab.obj[bv].clone();
            for j in 0..tab.nv {
                if !tab.t[i][j].is_zero() {
                    tab.obj[j] = tab.obj[j].clone() - f.clone() * tab.t[i][j].clone();
                }
            }
            tab.obj_val = tab.obj_val.clone() + f * tab.rhs[i].clone();
        }
    }
    if !tab.optimize(aux) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![S::zero(); n];
    for i in 0..m {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.rhs[i].clone();
        }
    }
    LpOutcome::Optimal { value: tab.obj_val.clone(), point: x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn r(x: i64) -> Rat {
        Rat::int(x)
    }

    #[test]
    fn textbook_example() {
        // max 3x + 2y, x + y ≤ 4, x + 3y ≤ 6, x ≤ 3
        let mut lp = LinearProgram::<Rat>::new(2);
        lp.set_objective(vec![r(3), r(2)]);
        lp.add_row(vec![r(1), r(1)], Relation::Le, r(4));
        lp.add_row(vec![r(1), r(3)], Relation::Le, r(6));
        lp.add_row(vec![r(1), r(0)], Relation::Le, r(3));
        assert_eq!(lp.maximize().value(), Some(&r(11)));
    }

    #[test]
    fn phase_one_detects_infeasibility() {
        let mut lp = LinearProgram::<Rat>::new(2);
        lp.add_row(vec![r(1), r(1)], Relation::Ge, r(5));
        lp.add_row(vec![r(1), r(0)], Relation::Le, r(1));
        lp.add_row(vec![r(0), r(1)], Relation::Le, r(1));
        assert_eq!(lp.maximize(), LpOutcome::Infeasible);
    }

    #[test]
    fn free_variables_and_equalities() {
        // max -x subject to x = y - 3, y ≥ 1, y ≤ 2, x free
        let mut lp = LinearProgram::<Rat>::new(2);
        lp.set_free(0);
        lp.set_objective(vec![r(-1), r(0)]);
        lp.add_row(vec![r(1), r(-1)], Relation::Eq, r(-3));
        lp.add_row(vec![r(0), r(1)], Relation::Ge, r(1));
        lp.add_row(vec![r(0), r(1)], Relation::Le, r(2));
        match lp.maximize() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, r(2));
                assert_eq!(point, vec![r(-2), r(1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_is_reported() {
        let mut lp = LinearProgram::<Rat>::new(2);
        lp.set_objective(vec![r(1), r(1)]);
        lp.add_row(vec![r(1), r(-1)], Relation::Le, r(1));
        assert_eq!(lp.maximize(), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the largest-coefficient rule.
        let q = |n, d| Rat::ratio(n, d);
        let mut lp = LinearProgram::<Rat>::new(4);
        lp.set_objective(vec![q(3, 4), q(-150, 1), q(1, 50), q(-6, 1)]);
        lp.add_row(vec![q(1, 4), q(-60, 1), q(-1, 25), q(9, 1)], Relation::Le, r(0));
        lp.add_row(vec![q(1, 2), q(-90, 1), q(-1, 50), q(3, 1)], Relation::Le, r(0));
        lp.add_row(vec![r(0), r(0), r(1), r(0)], Relation::Le, r(1));
        assert_eq!(lp.maximize().value(), Some(&q(1, 20)));
    }

    #[test]
    fn float_instantiation_solves_same_program() {
        let mut lp = LinearProgram::<f64>::new(2);
        lp.set_objective(vec![3.0, 2.0]);
        lp.add_row(vec![1.0, 1.0], Relation::Le, 4.0);
        lp.add_row(vec![1.0, 3.0], Relation::Le, 6.0);
        lp.add_row(vec![1.0, 0.0], Relation::Le, 3.0);
        let v = *lp.maximize().value().unwrap();
        assert!((v - 11.0).abs() < 1e-9);
    }
}
