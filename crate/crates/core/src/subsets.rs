//! k-subsets of [n] stored as bitmasks (bit i-1 for element i).

/// All k-subsets of [n] in colex order.
pub fn k_subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let mut s: u64 = (1u64 << k) - 1;
    let limit: u64 = 1u64 << n;
    while s < limit {
        out.push(s as u32);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

/// Colex rank of a subset among all subsets of the same size.
pub fn colex_rank(mask: u32) -> usize {
    let mut rank = 0usize;
    for (i, e) in elements0(mask).into_iter().enumerate() {
        rank += binomial(e, i + 1) as usize;
    }
    rank
}

/// 0-based element indices.
pub fn elements0(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// 1-based elements.
pub fn elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Mask from 1-based elements.
pub fn mask_of(elems: &[usize]) -> u32 {
    elems.iter().fold(0, |m, &e| m | 1 << (e - 1))
}

pub fn full(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Cyclic interval [i, i+len-1] of [n], 1-based start.
pub fn cyclic_interval(n: usize, start: usize, len: usize) -> u32 {
    (0..len).fold(0, |m, t| m | 1 << ((start - 1 + t) % n))
}

/// All proper nonempty cyclic intervals, deduplicated.
pub fn proper_cyclic_intervals(n: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for len in 1..n {
        for start in 1..=n {
            let m = cyclic_interval(n, start, len);
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

pub fn catalan(n: usize) -> u64 {
    binomial(2 * n, n) / (n as u64 + 1)
}

/// "{1,2,5}" style rendering.
pub fn format_set(mask: u32) -> String {
    let e: Vec<String> = elements(mask).iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", e.join(","))
}
