//! Le-diagrams, the pipe-dream bijection with decorated permutations and the
//! recursion maps on cell labels.
//!
//! A diagram sits in a k×(n−k) box. Its boundary is the lattice path from the
//! north-east to the south-west corner; step i is labeled i, vertical steps
//! label rows and horizontal steps label columns. Rows are indexed from the
//! top, columns from the left.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Color, DecoratedPermutation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeDiagram {
    k: usize,
    n: usize,
    /// rows[r][c] is true for a plus.
    rows: Vec<Vec<bool>>,
}

impl LeDiagram {
    /// Validates shape and the Le-condition.
    pub fn new(k: usize, n: usize, rows: Vec<Vec<bool>>) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidDiagram(format!("k = {k} exceeds n = {n}")));
        }
        if rows.len() != k {
            return Err(Error::InvalidDiagram(format!("expected {k} rows, got {}", rows.len())));
        }
        for r in 0..k {
            if rows[r].len() > n - k {
                return Err(Error::InvalidDiagram(format!("row {r} longer than n − k")));
            }
            if r > 0 && rows[r].len() > rows[r - 1].len() {
                return Err(Error::InvalidDiagram("row lengths must weakly decrease".into()));
            }
        }
        let d = LeDiagram { k, n, rows };
        if let Some((r, c)) = d.le_violation() {
            return Err(Error::InvalidDiagram(format!("Le-condition fails at row {r}, column {c}")));
        }
        Ok(d)
    }

    /// Parse rows of `0`/`+` characters.
    pub fn from_strings(k: usize, n: usize, rows: &[&str]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let mut v = Vec::new();
            for ch in row.chars() {
                match ch {
                    '+' => v.push(true),
                    '0' => v.push(false),
                    c => return Err(Error::Parse(format!("unexpected {c:?} in diagram row"))),
                }
            }
            out.push(v);
        }
        Self::new(k, n, out)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn row_len(&self, r: usize) -> usize {
        self.rows[r].len()
    }

    pub fn plus(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c).copied().unwrap_or(false)
    }

    pub fn has_box(&self, r: usize, c: usize) -> bool {
        r < self.k && c < self.rows[r].len()
    }

    /// Number of columns of the box.
    pub fn width(&self) -> usize {
        self.n - self.k
    }

    /// Boundary label of row r (a vertical step).
    pub fn row_label(&self, r: usize) -> usize {
        self.n - self.k - self.rows[r].len() + r + 1
    }

    /// Vertical steps of the boundary path, increasing.
    pub fn row_labels(&self) -> Vec<usize> {
        (0..self.k).map(|r| self.row_label(r)).collect()
    }

    /// Horizontal steps of the boundary path, indexed by column from the left.
    pub fn column_labels(&self) -> Vec<usize> {
        let rows = self.row_labels();
        let mut h: Vec<usize> = (1..=self.n).filter(|i| !rows.contains(i)).collect();
        h.reverse();
        h
    }

    /// Number of boxes in column c.
    pub fn column_len(&self, c: usize) -> usize {
        (0..self.k).filter(|&r| c < self.rows[r].len()).count()
    }

    /// Cell dimension: the number of pluses.
    pub fn dimension(&self) -> usize {
        self.rows.iter().map(|r| r.iter().filter(|&&x| x).count()).sum()
    }

    fn le_violation(&self) -> Option<(usize, usize)> {
        for r in 0..self.k {
            for c in 0..self.rows[r].len() {
                if self.rows[r][c] {
                    continue;
                }
                let left = (0..c).any(|cc| self.rows[r][cc]);
                let above = (0..r).any(|rr| self.rows[rr][c]);
                if left && above {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// Follow the pipe entering the diagram at boundary label `start`.
    /// Pluses are elbows, zeros are crossings.
    fn trace(&self, start: usize) -> usize {
        let rows = self.row_labels();
        let cols = self.column_labels();
        // (row, col, moving_west)
        let (mut r, mut c, mut west) = if let Some(r) = rows.iter().position(|&s| s == start) {
            if self.rows[r].is_empty() {
                return start;
            }
            (r as isize, self.rows[r].len() as isize - 1, true)
        } else {
            let c = cols.iter().position(|&h| h == start).expect("label on boundary");
            let len = self.column_len(c);
            if len == 0 {
                return start;
            }
            (len as isize - 1, c as isize, false)
        };
        loop {
            if self.rows[r as usize][c as usize] {
                west = !west;
            }
            if west {
                c -= 1;
                if c < 0 {
                    return rows[r as usize];
                }
            } else {
                r -= 1;
                if r < 0 {
                    return cols[c as usize];
                }
            }
        }
    }

    /// The decorated permutation read off the pipe dream. A pipe returning to
    /// its own horizontal step is a loop; to its own vertical step, a coloop.
    pub fn to_permutation(&self) -> DecoratedPermutation {
        let rows = self.row_labels();
        let window: Vec<usize> = (1..=self.n).map(|i| self.trace(i)).collect();
        DecoratedPermutation::with_colors(window, |i| if rows.contains(&i) { Color::Coloop } else { Color::Loop })
            .expect("pipe dreams give bijections")
    }

    /// The unique Le-diagram of a decorated permutation.
    pub fn from_permutation(p: &DecoratedPermutation) -> Self {
        let n = p.n();
        let sources = p.source_set();
        let k = sources.len();
        let lens: Vec<usize> =
            (0..k).map(|r| (n - sources[r]) - (k - 1 - r)).collect();
        let mut rows: Vec<Vec<bool>> = lens.iter().map(|&l| vec![false; l]).collect();
        let shape = LeDiagram { k, n, rows: rows.clone() };
        let cols = shape.column_labels();
        let up: Vec<usize> = cols.clone();
        let forced = vec![false; n - k];
        let found = search_rows(p, &sources, &cols, k as isize - 1, up, forced, &mut rows);
        assert!(found, "every decorated permutation has a Le-diagram");
        let d = LeDiagram { k, n, rows };
        debug_assert_eq!(&d.to_permutation(), p);
        d
    }

    /// The diagram of the zero-dimensional cell with the given vertical steps.
    pub fn empty(k: usize, n: usize, row_lengths: &[usize]) -> Result<Self> {
        Self::new(k, n, row_lengths.iter().map(|&l| vec![false; l]).collect())
    }

    /// Add a column on the left, of full height, whose only plus is at the
    /// bottom. Fails when the result violates the Le-condition.
    pub fn i_pre_diagram(&self) -> Result<Self> {
        if self.k == 0 {
            return Err(Error::BlackFixedPointAtPenultimate);
        }
        let mut rows: Vec<Vec<bool>> = self.rows.iter().map(|r| {
            let mut v = vec![false];
            v.extend_from_slice(r);
            v
        }).collect();
        rows[self.k - 1][0] = true;
        Self::new(self.k, self.n + 1, rows)
    }

    /// Add a bottom row made of a single plus.
    pub fn i_inc_diagram(&self) -> Result<Self> {
        if self.n == self.k || self.column_labels()[0] != self.n {
            return Err(Error::WhiteFixedPointAtPenultimate);
        }
        let mut rows = self.rows.clone();
        rows.push(vec![true]);
        Self::new(self.k + 1, self.n + 1, rows)
    }

    /// Add an all-zero column of full height on the left.
    pub fn iota_pre_diagram(&self) -> Self {
        let rows = self.rows.iter().map(|r| {
            let mut v = vec![false];
            v.extend_from_slice(r);
            v
        }).collect();
        LeDiagram { k: self.k, n: self.n + 1, rows }
    }

    /// Every Le-diagram in the k×(n−k) box, in canonical order.
    pub fn all(k: usize, n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut shapes = Vec::new();
        partitions_in_box(k, n - k, n - k, &mut Vec::new(), &mut shapes);
        for shape in shapes {
            let cells: Vec<(usize, usize)> =
                (0..k).flat_map(|r| (0..shape[r]).map(move |c| (r, c))).collect();
            for mask in 0u64..(1u64 << cells.len()) {
                let mut rows: Vec<Vec<bool>> = shape.iter().map(|&l| vec![false; l]).collect();
                for (b, &(r, c)) in cells.iter().enumerate() {
                    rows[r][c] = mask >> b & 1 == 1;
                }
                let d = LeDiagram { k, n, rows };
                if d.le_violation().is_none() {
                    out.push(d);
                }
            }
        }
        out.sort();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<String> = self.rows.iter().map(|r| row_string(r)).collect();
        serde_json::json!({ "k": self.k, "n": self.n, "rows": rows })
    }
}

fn row_string(r: &[bool]) -> String {
    r.iter().map(|&x| if x { '+' } else { '0' }).collect()
}

fn partitions_in_box(rows: usize, width: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == rows {
        out.push(cur.clone());
        return;
    }
    for l in 0..=max.min(width) {
        cur.push(l);
        partitions_in_box(rows, width, l, cur, out);
        cur.pop();
    }
}

/// Fill rows from the bottom up. `up[c]` is the pipe entering column c from
/// below the current row; `forced[c]` marks columns whose remaining boxes
/// must be zero.
fn search_rows(
    p: &DecoratedPermutation,
    sources: &[usize],
    cols: &[usize],
    r: isize,
    up: Vec<usize>,
    forced: Vec<bool>,
    rows: &mut Vec<Vec<bool>>,
) -> bool {
    if r < 0 {
        return cols.iter().enumerate().all(|(c, &h)| p.at(up[c]) == h && (up[c] != h || p.is_loop(h)));
    }
    let r = r as usize;
    let len = rows[r].len();
    let s = sources[r];
    let target = p.inverse_at(s);
    let lead: Option<usize> = if target == s {
        if !p.is_coloop(s) {
            return false;
        }
        None
    } else {
        match (0..len).find(|&c| up[c] == target) {
            Some(c) if !forced[c] => Some(c),
            _ => return false,
        }
    };
    // Columns right of the leading plus that are free to choose.
    let free: Vec<usize> = match lead {
        Some(c0) => (c0 + 1..len).filter(|&c| !forced[c]).collect(),
        None => Vec::new(),
    };
    for mask in 0u64..(1u64 << free.len()) {
        let mut row = vec![false; len];
        if let Some(c0) = lead {
            row[c0] = true;
        }
        for (b, &c) in free.iter().enumerate() {
            row[c] = mask >> b & 1 == 1;
        }
        // Propagate pipes through the row from east to west.
        let mut next_up = up.clone();
        let mut next_forced = forced.clone();
        let mut carried = s;
        let mut ok = true;
        for c in (0..len).rev() {
            if row[c] {
                next_up[c] = carried;
                carried = up[c];
            } else if lead.is_some_and(|c0| c > c0) {
                // A zero with a plus to its left: everything above is zero.
                next_forced[c] = true;
                if p.at(up[c]) != cols[c] {
                    ok = false;
                    break;
                }
            }
        }
        if !ok || carried != target {
            continue;
        }
        rows[r] = row;
        if search_rows(p, sources, cols, r as isize - 1, next_up, next_forced, rows) {
            return true;
        }
    }
    rows[r] = vec![false; len];
    false
}

impl fmt::Display for LeDiagram {
    /// Header "k n", then one line of `0`/`+` per row (empty rows are empty lines).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.k, self.n)?;
        for r in &self.rows {
            writeln!(f, "{}", row_string(r))?;
        }
        Ok(())
    }
}

impl FromStr for LeDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.split('\n');
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        if nums.len() != 2 {
            return Err(Error::Parse(format!("header must be \"k n\", got {header:?}")));
        }
        let (k, n) = (nums[0], nums[1]);
        let rows: Vec<&str> = (0..k).map(|_| lines.next().unwrap_or("").trim_end_matches('\r')).collect();
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("more rows than k".into()));
        }
        Self::from_strings(k, n, &rows)
    }
}

/// i_pre(π) = (a₁,…,a_{n−2}, n, a_{n−1}) on [n] from π on [n−1].
pub fn i_pre(p: &DecoratedPermutation) -> Result<DecoratedPermutation> {
    let m = p.n();
    if p.is_loop(m) {
        return Err(Error::BlackFixedPointAtPenultimate);
    }
    let n = m + 1;
    let mut w: Vec<usize> = p.window()[..m - 1].to_vec();
    w.push(n);
    w.push(p.at(m));
    let coloops: Vec<usize> = (1..m).filter(|&i| p.is_coloop(i)).collect();
    DecoratedPermutation::new(w, &coloops)
}

/// i_inc(π) = (a₁,…,a_{j−1}, n, a_{j+1},…,a_{n−1}, n−1) with j = π⁻¹(n−1).
pub fn i_inc(p: &DecoratedPermutation) -> Result<DecoratedPermutation> {
    let m = p.n();
    if p.is_coloop(m) {
        return Err(Error::WhiteFixedPointAtPenultimate);
    }
    let n = m + 1;
    let j = p.inverse_at(m);
    let mut w: Vec<usize> = p.window().to_vec();
    w[j - 1] = n;
    w.push(m);
    let coloops: Vec<usize> = (1..=m).filter(|&i| i != j && p.is_coloop(i)).collect();
    DecoratedPermutation::new(w, &coloops)
}

/// ι_pre(π): append n as a loop.
pub fn iota_pre(p: &DecoratedPermutation) -> DecoratedPermutation {
    let n = p.n() + 1;
    let mut w = p.window().to_vec();
    w.push(n);
    DecoratedPermutation::new(w, &p.coloops()).expect("valid")
}

/// ι_inc(π): 1 ↦ n−1, h ↦ n, n ↦ a₁, j ↦ a_j otherwise, where h = π⁻¹(n−1).
pub fn iota_inc(p: &DecoratedPermutation) -> Result<DecoratedPermutation> {
    let m = p.n();
    if p.is_coloop(1) {
        return Err(Error::WhiteFixedPointBlocks(1));
    }
    if p.is_coloop(m) {
        return Err(Error::WhiteFixedPointBlocks(m));
    }
    let h = p.inverse_at(m);
    if h == 1 {
        return Err(Error::PreconditionViolated {
            index: 1,
            reason: "π(1) = n−1 leaves the image of 1 ambiguous".into(),
        });
    }
    let n = m + 1;
    let mut w = vec![0; n];
    for j in 1..=m {
        w[j - 1] = p.at(j);
    }
    w[0] = m;
    w[h - 1] = n;
    w[n - 1] = p.at(1);
    let coloops: Vec<usize> = (2..=m).filter(|&i| i != h && p.is_coloop(i)).collect();
    DecoratedPermutation::new(w, &coloops)
}
