//! Brute-force reference implementations used as oracles by the integration
//! tests. Deliberately naive and independent of the library.
#![allow(dead_code)]

use std::collections::BTreeMap;

/// Calls `f` on every permutation of `1..=n` in lexicographic order.
pub fn for_each_perm(n: usize, mut f: impl FnMut(&[u32])) {
    let mut w: Vec<u32> = (1..=n as u32).collect();
    loop {
        f(&w);
        let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
            return;
        };
        let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).unwrap();
        w.swap(i - 1, j);
        w[i..].reverse();
    }
}

/// Involutions of `1..=n`; fixed-point-free ones only when `fpf`.
pub fn involutions(n: usize, fpf: bool) -> Vec<Vec<u32>> {
    fn go(w: &mut Vec<u32>, fpf: bool, out: &mut Vec<Vec<u32>>) {
        let Some(i) = w.iter().position(|&x| x == 0) else {
            out.push(w.clone());
            return;
        };
        if !fpf {
            w[i] = i as u32 + 1;
            go(w, fpf, out);
            w[i] = 0;
        }
        for j in i + 1..w.len() {
            if w[j] == 0 {
                w[i] = j as u32 + 1;
                w[j] = i as u32 + 1;
                go(w, fpf, out);
                w[i] = 0;
                w[j] = 0;
            }
        }
    }
    let mut out = vec![];
    go(&mut vec![0; n], fpf, &mut out);
    out
}

pub fn des(w: &[u32]) -> u32 {
    w.windows(2).filter(|p| p[0] > p[1]).count() as u32
}

pub fn maj(w: &[u32]) -> u32 {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).map(|i| i as u32).sum()
}

pub fn descent_set(w: &[u32]) -> Vec<u32> {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).map(|i| i as u32).collect()
}

/// Double descents `w(i-1) > w(i) > w(i+1)` with `w(0) = w(n+1) = ∞`.
pub fn dd(w: &[u32]) -> u32 {
    let n = w.len();
    let at = |i: usize| if i == 0 || i == n + 1 { u32::MAX } else { w[i - 1] };
    (1..=n).filter(|&i| at(i - 1) > at(i) && at(i) > at(i + 1)).count() as u32
}

/// Classical containment by trying every subsequence.
pub fn contains(w: &[u32], p: &[u32]) -> bool {
    fn go(w: &[u32], p: &[u32], start: usize, picked: &mut Vec<u32>) -> bool {
        if picked.len() == p.len() {
            return (0..p.len()).all(|a| (0..p.len()).all(|b| (p[a] < p[b]) == (picked[a] < picked[b])));
        }
        let need = p.len() - picked.len();
        for i in start..=w.len() - need {
            picked.push(w[i]);
            if go(w, p, i + 1, picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
    p.len() <= w.len() && go(w, p, 0, &mut vec![])
}

pub fn avoids_all(w: &[u32], patterns: &[&[u32]]) -> bool {
    patterns.iter().all(|p| !contains(w, p))
}

pub fn word(s: &str) -> Vec<u32> {
    s.chars().map(|c| c.to_digit(10).unwrap()).collect()
}

/// Coefficient list of `Σ t^des` over `words`.
pub fn descent_counts<'a>(words: impl IntoIterator<Item = &'a Vec<u32>>) -> Vec<i128> {
    let mut c = vec![];
    for w in words {
        let d = des(w) as usize;
        if c.len() <= d {
            c.resize(d + 1, 0);
        }
        c[d] += 1;
    }
    c
}

fn binom(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `γ_k` with `Σ c_d t^d = Σ γ_k t^k (1+t)^{center2-2k}` by peeling the low
/// coefficients; `None` when the polynomial has no such expansion.
pub fn gamma(coeffs: &[i128], center2: u32) -> Option<Vec<i128>> {
    let mut g: Vec<i128> = vec![];
    for k in 0..=center2 / 2 {
        let c = coeffs.get(k as usize).copied().unwrap_or(0);
        let rest: i128 = g
            .iter()
            .enumerate()
            .map(|(j, gj)| gj * binom(center2 - 2 * j as u32, k - j as u32))
            .sum();
        g.push(c - rest);
    }
    let mut back = vec![0i128; center2 as usize + 1];
    for (k, gk) in g.iter().enumerate() {
        for i in 0..=center2 - 2 * k as u32 {
            back[k + i as usize] += gk * binom(center2 - 2 * k as u32, i);
        }
    }
    let mut given = coeffs.to_vec();
    given.resize(back.len().max(given.len()), 0);
    back.resize(given.len(), 0);
    (back == given).then_some(g)
}

/// Per-class statistics gathered in one pass over `S_n`.
#[derive(Default, Debug, PartialEq, Eq)]
pub struct Census {
    pub size: u64,
    pub des_dd: BTreeMap<(u32, u32), u64>,
    pub des_sets: BTreeMap<Vec<u32>, u64>,
    pub dd_free_by_des: BTreeMap<u32, u64>,
}

impl Census {
    pub fn add(&mut self, w: &[u32]) {
        let (d, x) = (des(w), dd(w));
        self.size += 1;
        *self.des_dd.entry((d, x)).or_default() += 1;
        *self.des_sets.entry(descent_set(w)).or_default() += 1;
        if x == 0 {
            *self.dd_free_by_des.entry(d).or_default() += 1;
        }
    }

    pub fn descent_counts(&self) -> BTreeMap<u32, u64> {
        let mut m = BTreeMap::new();
        for (&(d, _), &c) in &self.des_dd {
            *m.entry(d).or_default() += c;
        }
        m
    }

    pub fn descent_vec(&self) -> Vec<i128> {
        let m = self.descent_counts();
        let top = m.keys().max().copied().unwrap_or(0);
        (0..=top).map(|d| m.get(&d).copied().unwrap_or(0) as i128).collect()
    }

    pub fn dd_free_vec(&self) -> Vec<i128> {
        let top = self.dd_free_by_des.keys().max().copied().unwrap_or(0);
        (0..=top)
            .map(|d| self.dd_free_by_des.get(&d).copied().unwrap_or(0) as i128)
            .collect()
    }
}

/// Censuses of `S_n`, `S_n(2413,3142)` and `S_n(3412,3421)`.
pub fn censuses(n: usize) -> [Census; 3] {
    let (sep, other) = ([word("2413"), word("3142")], [word("3412"), word("3421")]);
    let sep: Vec<&[u32]> = sep.iter().map(|v| v.as_slice()).collect();
    let other: Vec<&[u32]> = other.iter().map(|v| v.as_slice()).collect();
    let mut out: [Census; 3] = Default::default();
    for_each_perm(n, |w| {
        out[0].add(w);
        if avoids_all(w, &sep) {
            out[1].add(w);
        }
        if avoids_all(w, &other) {
            out[2].add(w);
        }
    });
    out
}

/// `(2n-1)!!`
pub fn double_factorial_odd(n: u32) -> u64 {
    (1..=n as u64).map(|i| 2 * i - 1).product()
}
