//! Decorated and bounded affine permutations and the duality maps between
//! cell labels.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Color of a fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    /// Black fixed point; the element lies in no basis.
    Loop,
    /// White fixed point; the element lies in every basis.
    Coloop,
}

/// A permutation of [n] whose fixed points carry a [`Color`].
///
/// Values are 1-based. The derived order compares windows first, then the
/// coloop mask, which gives a canonical order for sorted output.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedPermutation {
    window: Vec<usize>,
    coloops: u32,
}

fn wrap(i: i64, n: usize) -> usize {
    ((i - 1).rem_euclid(n as i64) + 1) as usize
}

impl DecoratedPermutation {
    /// Build from a window; fixed points listed in `coloops` are coloops and
    /// all other fixed points are loops.
    pub fn new(window: Vec<usize>, coloops: &[usize]) -> Result<Self> {
        let n = window.len();
        if n == 0 || n > 31 {
            return Err(Error::InvalidPermutation(format!("size {n} out of range 1..=31")));
        }
        let mut seen = vec![false; n + 1];
        for &v in &window {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{window:?} is not a bijection of [{n}]")));
            }
            seen[v] = true;
        }
        let mut mask = 0u32;
        for &c in coloops {
            if c == 0 || c > n || window[c - 1] != c {
                return Err(Error::InvalidPermutation(format!("coloop {c} is not a fixed point")));
            }
            mask |= 1 << (c - 1);
        }
        Ok(DecoratedPermutation { window, coloops: mask })
    }

    /// Build from a window with an explicit color for every fixed point.
    pub fn with_colors(window: Vec<usize>, color: impl Fn(usize) -> Color) -> Result<Self> {
        let coloops: Vec<usize> = (1..=window.len())
            .filter(|&i| window[i - 1] == i && color(i) == Color::Coloop)
            .collect();
        Self::new(window, &coloops)
    }

    /// All fixed points are loops (the zero-dimensional cell with k = 0).
    pub fn identity_loops(n: usize) -> Self {
        DecoratedPermutation { window: (1..=n).collect(), coloops: 0 }
    }

    /// All fixed points are coloops (the zero-dimensional cell with k = n).
    pub fn identity_coloops(n: usize) -> Self {
        DecoratedPermutation { window: (1..=n).collect(), coloops: crate::subsets::full(n) }
    }

    /// The cycle i ↦ i + k mod n: the top cell of the nonnegative part of Gr(k, n).
    pub fn top_cell(k: usize, n: usize) -> Self {
        if k == 0 {
            return Self::identity_loops(n);
        }
        if k == n {
            return Self::identity_coloops(n);
        }
        DecoratedPermutation { window: (1..=n).map(|i| wrap((i + k) as i64, n)).collect(), coloops: 0 }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[usize] {
        &self.window
    }

    /// π(i) for 1-based i.
    pub fn at(&self, i: usize) -> usize {
        self.window[i - 1]
    }

    /// π(i) with i taken mod n.
    pub fn at_mod(&self, i: i64) -> usize {
        self.window[wrap(i, self.n()) - 1]
    }

    pub fn inverse_at(&self, v: usize) -> usize {
        self.window.iter().position(|&x| x == v).expect("bijection") + 1
    }

    pub fn coloop_mask(&self) -> u32 {
        self.coloops
    }

    pub fn loop_mask(&self) -> u32 {
        (1..=self.n()).filter(|&i| self.is_loop(i)).fold(0, |m, i| m | 1 << (i - 1))
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.window[i - 1] == i
    }

    pub fn color(&self, i: usize) -> Option<Color> {
        if !self.is_fixed(i) {
            None
        } else if self.coloops >> (i - 1) & 1 == 1 {
            Some(Color::Coloop)
        } else {
            Some(Color::Loop)
        }
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.color(i) == Some(Color::Loop)
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        self.color(i) == Some(Color::Coloop)
    }

    pub fn loops(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.is_loop(i)).collect()
    }

    pub fn coloops(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.is_coloop(i)).collect()
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    pub fn is_coloopless(&self) -> bool {
        self.coloops == 0
    }

    /// Positions i with π(i) < i, together with the coloops.
    pub fn anti_excedances(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.at(i) < i || self.is_coloop(i)).collect()
    }

    /// Number of anti-excedances; the k of the Grassmannian Gr(k, n).
    pub fn k(&self) -> usize {
        self.anti_excedances().len()
    }

    /// Values i with π⁻¹(i) > i, together with the coloops. This is the
    /// Gale-minimal basis of the positroid, the set of vertical steps of the
    /// Le-diagram boundary and the source set of the network.
    pub fn source_set(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.inverse_at(i) > i || self.is_coloop(i)).collect()
    }

    /// Inverse permutation with loops and coloops swapped.
    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut w = vec![0; n];
        for i in 1..=n {
            w[self.at(i) - 1] = i;
        }
        let coloops = self.loop_mask();
        DecoratedPermutation { window: w, coloops }
    }

    /// σ^t π (i) = π(i + t) − t, indices mod n; fixed points keep their color.
    pub fn cyclic_shift(&self, t: i64) -> Self {
        let n = self.n();
        let mut w = vec![0; n];
        let mut coloops = 0u32;
        for i in 1..=n {
            let src = wrap(i as i64 + t, n);
            w[i - 1] = wrap(self.at(src) as i64 - t, n);
            if self.is_coloop(src) {
                coloops |= 1 << (i - 1);
            }
        }
        DecoratedPermutation { window: w, coloops }
    }

    /// π̂(i) = π(i − 1); created fixed points are loops.
    pub fn t_dual(&self) -> Result<Self> {
        if !self.is_loopless() {
            return Err(Error::LooplessRequired);
        }
        let n = self.n();
        let w: Vec<usize> = (1..=n).map(|i| self.at_mod(i as i64 - 1)).collect();
        Ok(DecoratedPermutation { window: w, coloops: 0 })
    }

    /// π̌(i) = π(i + 1); created fixed points are coloops.
    pub fn t_dual_inverse(&self) -> Result<Self> {
        if !self.is_coloopless() {
            return Err(Error::ColooplessRequired);
        }
        let n = self.n();
        let w: Vec<usize> = (1..=n).map(|i| self.at_mod(i as i64 + 1)).collect();
        let coloops = (1..=n).filter(|&i| w[i - 1] == i).fold(0, |m, i| m | 1 << (i - 1));
        Ok(DecoratedPermutation { window: w, coloops })
    }

    fn check_parity_input(&self, k: usize) -> Result<()> {
        if !self.is_coloopless() {
            return Err(Error::ColooplessRequired);
        }
        if self.k() != k {
            return Err(Error::InvalidArgument(format!("expected {k} anti-excedances, found {}", self.k())));
        }
        if k + 2 > self.n() {
            return Err(Error::InvalidArgument(format!("k = {k} too large for n = {}", self.n())));
        }
        // π(i) = i − 1 means the T-dual preimage has a coloop; there the
        // anti-excedance count is not sent to n − k − 2.
        if let Some(i) = (1..=self.n()).find(|&i| self.at(i) == wrap(i as i64 - 1, self.n())) {
            return Err(Error::PreconditionViolated { index: i, reason: format!("π({i}) = {i} − 1") });
        }
        Ok(())
    }

    /// Ũ π (i) = π⁻¹(i − 1) − 1; created fixed points are loops.
    pub fn parity_dual(&self, k: usize) -> Result<Self> {
        self.check_parity_input(k)?;
        let n = self.n();
        let inv = self.inverse();
        let w: Vec<usize> =
            (1..=n).map(|i| wrap(inv.at_mod(i as i64 - 1) as i64 - 1, n)).collect();
        Ok(DecoratedPermutation { window: w, coloops: 0 })
    }

    /// U π (i) = π⁻¹(i + k) + (n − k − 2); created fixed points are loops.
    pub fn parity_dual_gl(&self, k: usize) -> Result<Self> {
        self.check_parity_input(k)?;
        let n = self.n();
        let inv = self.inverse();
        let w: Vec<usize> = (1..=n)
            .map(|i| wrap(inv.at_mod((i + k) as i64) as i64 + (n - k - 2) as i64, n))
            .collect();
        Ok(DecoratedPermutation { window: w, coloops: 0 })
    }

    /// Bounded affine permutation: loops map to i, coloops to i + n and
    /// values below i are lifted by n.
    pub fn to_affine(&self) -> AffinePermutation {
        let n = self.n();
        let w = (1..=n)
            .map(|i| {
                let v = self.at(i) as i64;
                let i = i as i64;
                if self.is_coloop(i as usize) || v < i {
                    v + n as i64
                } else {
                    v
                }
            })
            .collect();
        AffinePermutation { window: w }
    }

    /// Blocks of the coarsest non-crossing partition refining nothing finer
    /// than the cycles of π; their number is the number of connected
    /// components of the positroid.
    pub fn component_blocks(&self) -> Vec<u32> {
        let n = self.n();
        let mut block = vec![0usize; n + 1];
        let mut next = 0;
        let mut seen = vec![false; n + 1];
        for i in 1..=n {
            if seen[i] {
                continue;
            }
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                block[j] = next;
                j = self.at(j);
            }
            next += 1;
        }
        let mut masks: Vec<u32> = vec![0; next];
        for i in 1..=n {
            masks[block[i]] |= 1 << (i - 1);
        }
        loop {
            let mut merged = false;
            'outer: for a in 0..masks.len() {
                for b in a + 1..masks.len() {
                    if crosses(masks[a], masks[b], n) {
                        masks[a] |= masks[b];
                        masks.remove(b);
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                break;
            }
        }
        masks.sort();
        masks
    }

    /// Number of connected components (blocks of the non-crossing closure of
    /// the cycle partition).
    pub fn cyclic_interval_components(&self) -> usize {
        self.component_blocks().len()
    }

    /// True iff π stabilizes no proper cyclic interval.
    pub fn is_sif(&self) -> bool {
        let n = self.n();
        for len in 1..n {
            for start in 1..=n {
                let iv = crate::subsets::cyclic_interval(n, start, len);
                let img = crate::subsets::elements(iv).iter().fold(0u32, |m, &i| m | 1 << (self.at(i) - 1));
                if img == iv {
                    return false;
                }
            }
        }
        true
    }

    /// Every decorated permutation of [n], in canonical order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for w in permutations(n) {
            let fixed: Vec<usize> = (1..=n).filter(|&i| w[i - 1] == i).collect();
            for m in 0u32..(1 << fixed.len()) {
                let coloops: Vec<usize> =
                    fixed.iter().enumerate().filter(|(j, _)| m >> j & 1 == 1).map(|(_, &i)| i).collect();
                out.push(Self::new(w.clone(), &coloops).expect("valid"));
            }
        }
        out.sort();
        out
    }

    /// Decorated permutations of [n] with exactly k anti-excedances.
    pub fn all_with_k(n: usize, k: usize) -> Vec<Self> {
        Self::all(n).into_iter().filter(|p| p.k() == k).collect()
    }

    /// A uniformly random window with independently colored fixed points.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut w: Vec<usize> = (1..=n).collect();
        w.shuffle(rng);
        let coloops: Vec<usize> = (1..=n).filter(|&i| w[i - 1] == i && rng.gen_bool(0.5)).collect();
        Self::new(w, &coloops).expect("valid")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n(),
            "window": self.window,
            "loops": self.loops(),
            "coloops": self.coloops(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let wire: PermWire = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        wire.try_into()
    }
}

fn crosses(a: u32, b: u32, n: usize) -> bool {
    // a and b cross iff there are x1 < y1 < x2 < y2 alternating between them.
    let mut seq = Vec::new();
    for i in 0..n {
        if a >> i & 1 == 1 {
            seq.push(0u8);
        } else if b >> i & 1 == 1 {
            seq.push(1u8);
        }
    }
    seq.dedup();
    if seq.len() > 1 && seq.first() == seq.last() {
        seq.pop();
    }
    seq.len() >= 4
}

/// All permutations of [n] in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[derive(Serialize, Deserialize)]
struct PermWire {
    n: usize,
    window: Vec<usize>,
    #[serde(default)]
    loops: Vec<usize>,
    #[serde(default)]
    coloops: Vec<usize>,
}

impl TryFrom<PermWire> for DecoratedPermutation {
    type Error = Error;
    fn try_from(w: PermWire) -> Result<Self> {
        if w.window.len() != w.n {
            return Err(Error::Parse(format!("window length {} differs from n = {}", w.window.len(), w.n)));
        }
        let p = DecoratedPermutation::new(w.window, &w.coloops)?;
        for &l in &w.loops {
            if l == 0 || l > p.n() || !p.is_loop(l) {
                return Err(Error::Parse(format!("{l} is not a loop fixed point")));
            }
        }
        let fixed = (1..=p.n()).filter(|&i| p.is_fixed(i)).count();
        if w.loops.len() + w.coloops.len() != fixed {
            return Err(Error::Parse("every fixed point needs exactly one color".into()));
        }
        Ok(p)
    }
}

impl Serialize for DecoratedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermWire { n: self.n(), window: self.window.clone(), loops: self.loops(), coloops: self.coloops() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DecoratedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PermWire::deserialize(d)?;
        w.try_into().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for DecoratedPermutation {
    /// "(1_,5,4,9,7,6~,2,10,3,8)": `_` marks a loop, `~` a coloop.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (1..=self.n())
            .map(|i| match self.color(i) {
                Some(Color::Loop) => format!("{i}_"),
                Some(Color::Coloop) => format!("{i}~"),
                None => self.at(i).to_string(),
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DecoratedPermutation {
    type Err = Error;

    /// Accepts `_`/`~` before or after a value, and the combining low line
    /// (loop) or combining overline/macron (coloop) after it. Unmarked fixed
    /// points are loops.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .or_else(|| t.strip_prefix('{').and_then(|x| x.strip_suffix('}')))
            .unwrap_or(t);
        let mut window = Vec::new();
        let mut coloops = Vec::new();
        let mut loops = Vec::new();
        for (pos, tok) in inner.split(',').enumerate() {
            let tok = tok.trim();
            let mut digits = String::new();
            let mut mark: Option<Color> = None;
            for ch in tok.chars() {
                match ch {
                    '0'..='9' => digits.push(ch),
                    '_' | '\u{332}' => mark = Some(Color::Loop),
                    '~' | '\u{304}' | '\u{305}' => mark = Some(Color::Coloop),
                    c if c.is_whitespace() => {}
                    c => return Err(Error::Parse(format!("unexpected character {c:?} in {tok:?}"))),
                }
            }
            let v: usize = digits.parse().map_err(|_| Error::Parse(format!("bad entry {tok:?}")))?;
            match mark {
                Some(Color::Coloop) => coloops.push(pos + 1),
                Some(Color::Loop) => loops.push(pos + 1),
                None => {}
            }
            window.push(v);
        }
        for &i in loops.iter().chain(&coloops) {
            if window.get(i - 1) != Some(&i) {
                return Err(Error::Parse(format!("marked entry at position {i} is not a fixed point")));
            }
        }
        DecoratedPermutation::new(window, &coloops)
    }
}

/// A bounded affine permutation, stored by its window f(1..n), with
/// f(i + n) = f(i) + n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        let mut seen = vec![false; n as usize];
        for (idx, &v) in window.iter().enumerate() {
            let i = idx as i64 + 1;
            if v < i || v > i + n {
                return Err(Error::InvalidPermutation(format!("value {v} at {i} violates i ≤ f(i) ≤ i+n")));
            }
            let r = (v - 1).rem_euclid(n) as usize;
            if seen[r] {
                return Err(Error::InvalidPermutation("residues are not a bijection".into()));
            }
            seen[r] = true;
        }
        Ok(AffinePermutation { window })
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// f(i) for any integer i.
    pub fn at(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let r = (i - 1).rem_euclid(n);
        let q = (i - 1 - r) / n;
        self.window[r as usize] + q * n
    }

    /// (Σ f(i) − i) / n.
    pub fn k(&self) -> usize {
        let n = self.n() as i64;
        let s: i64 = self.window.iter().enumerate().map(|(i, &v)| v - (i as i64 + 1)).sum();
        (s / n) as usize
    }

    pub fn to_decorated(&self) -> DecoratedPermutation {
        let n = self.n();
        let mut w = Vec::with_capacity(n);
        let mut coloops = Vec::new();
        for (idx, &v) in self.window.iter().enumerate() {
            let i = idx as i64 + 1;
            w.push(wrap(v, n));
            if v == i + n as i64 {
                coloops.push(i as usize);
            }
        }
        DecoratedPermutation::new(w, &coloops).expect("bounded affine permutation")
    }

    /// f̂(i) = f(i − m/2); requires f(i) ≥ i + m/2 for every i.
    pub fn t_dual_general_m(&self, m: usize) -> Result<Self> {
        if m % 2 != 0 {
            return Err(Error::InvalidArgument(format!("m = {m} must be even")));
        }
        let h = (m / 2) as i64;
        for (idx, &v) in self.window.iter().enumerate() {
            let i = idx as i64 + 1;
            if v < i + h {
                return Err(Error::PreconditionViolated {
                    index: i as usize,
                    reason: format!("f({i}) = {v} < {i} + {h}"),
                });
            }
        }
        let w = (1..=self.n() as i64).map(|i| self.at(i - h)).collect();
        AffinePermutation::new(w)
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
