//! Modified Foata–Strehl valley hopping with `π(0) = π(n+1) = ∞`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::perm::{descent_polynomial, enumerate_class, ClassSpec, EnumLimits, Permutation, Statistic};
use crate::poly::{GammaVector, IntPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Peak,
    Valley,
    DoubleAscent,
    DoubleDescent,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Peak => "peak",
            Role::Valley => "valley",
            Role::DoubleAscent => "double-ascent",
            Role::DoubleDescent => "double-descent",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LetterRole {
    pub value: u32,
    pub role: Role,
}

/// Boundary convention used by every function in this module.
pub const BOUNDARY: &str = "pi(0) = pi(n+1) = infinity";

fn role_at(w: &[u32], i: usize) -> Role {
    let x = w[i];
    let left_larger = i == 0 || w[i - 1] > x;
    let right_larger = i + 1 == w.len() || w[i + 1] > x;
    match (left_larger, right_larger) {
        (false, false) => Role::Peak,
        (true, true) => Role::Valley,
        (false, true) => Role::DoubleAscent,
        (true, false) => Role::DoubleDescent,
    }
}

/// Role of every letter, in positional order.
pub fn classify(p: &Permutation) -> Vec<LetterRole> {
    let w = p.word();
    (0..w.len())
        .map(|i| LetterRole {
            value: w[i],
            role: role_at(w, i),
        })
        .collect()
}

/// True when every letter is a peak or a valley.
pub fn only_peaks_and_valleys(p: &Permutation) -> bool {
    classify(p).iter().all(|r| matches!(r.role, Role::Peak | Role::Valley))
}

fn hop_word(w: &[u32], x: u32) -> Vec<u32> {
    let i = w.iter().position(|&v| v == x).expect("letter of the permutation");
    let mut out = w.to_vec();
    match role_at(w, i) {
        Role::Peak | Role::Valley => {}
        Role::DoubleDescent => {
            out.remove(i);
            let j = (i..out.len()).find(|&j| out[j] > x).unwrap_or(out.len());
            out.insert(j, x);
        }
        Role::DoubleAscent => {
            out.remove(i);
            let j = (0..i).rev().find(|&j| out[j] > x).map_or(0, |j| j + 1);
            out.insert(j, x);
        }
    }
    out
}

/// Moves `x` across its nearest larger neighbors; peaks and valleys stay put.
///
/// # Panics
/// If `x` is not a letter of `p`.
pub fn hop(p: &Permutation, x: u32) -> Permutation {
    Permutation::new(hop_word(p.word(), x)).expect("hop permutes letters")
}

fn orbit_words(w: &[u32]) -> BTreeSet<Vec<u32>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for x in 1..=cur.len() as u32 {
            let next = hop_word(&cur, x);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Closure of `p` under all hops, in lexicographic order.
pub fn orbit(p: &Permutation) -> Vec<Permutation> {
    orbit_words(p.word())
        .into_iter()
        .map(|w| Permutation::new(w).expect("hop permutes letters"))
        .collect()
}

/// An orbit with a member outside the class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EscapeWitness {
    pub member: String,
    pub outside: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub n: usize,
    pub class: String,
    pub boundary: &'static str,
    pub class_size: u64,
    pub orbits: u64,
    /// (i) the class is a union of orbits.
    pub invariant: bool,
    pub escape: Option<EscapeWitness>,
    /// (ii) every orbit through the class has exactly one dd-free member.
    pub unique_dd_free: bool,
    pub bad_representative: Option<String>,
    /// (iii) each orbit's descent polynomial is `t^k (1+t)^{n-1-2k}`.
    pub orbit_polys_ok: bool,
    /// (iv) γ-expansion of the class descent polynomial equals the dd-free census.
    pub gamma: Option<GammaVector>,
    pub census: Vec<u64>,
    pub gamma_matches_census: bool,
}

impl OrbitReport {
    /// All four properties hold.
    pub fn passed(&self) -> bool {
        self.invariant && self.unique_dd_free && self.orbit_polys_ok && self.gamma_matches_census
    }
}

struct OrbitStats {
    size: u64,
    dd_free: u64,
    poly_ok: bool,
    escape: Option<Vec<u32>>,
}

/// Checks orbit structure of `class` at size `n`.
pub fn orbit_gamma_check(n: usize, class: &ClassSpec, limits: &EnumLimits) -> Result<OrbitReport> {
    let members = enumerate_class(n, class, limits)?;
    let words: HashSet<&[u32]> = members.iter().map(Permutation::word).collect();
    let reps: Vec<&Permutation> = members.iter().filter(|p| Statistic::Dd.eval(p.word()) == 0).collect();

    let mut census = vec![0u64; n.div_ceil(2).max(1)];
    for p in &reps {
        census[Statistic::Des.eval(p.word()) as usize] += 1;
    }

    let stats: Vec<OrbitStats> = reps
        .par_iter()
        .map(|p| {
            let orb = orbit_words(p.word());
            let k = Statistic::Des.eval(p.word());
            let mut poly = IntPoly::zero();
            for w in &orb {
                poly.add_term(Statistic::Des.eval(w), BigInt::from(1));
            }
            let expected = IntPoly::one_plus_t_pow((n as u32 - 1).saturating_sub(2 * k)).shift(k);
            OrbitStats {
                size: orb.len() as u64,
                dd_free: orb.iter().filter(|w| Statistic::Dd.eval(w) == 0).count() as u64,
                poly_ok: poly == expected,
                escape: orb.iter().find(|w| !words.contains(w.as_slice())).cloned(),
            }
        })
        .collect();

    let covered: u64 = stats.iter().map(|s| s.size).sum();
    let escape = reps.iter().zip(&stats).find_map(|(p, s)| {
        s.escape.as_ref().map(|w| EscapeWitness {
            member: p.to_string(),
            outside: Permutation::new(w.clone()).expect("permutation").to_string(),
        })
    });
    let bad_rep = reps
        .iter()
        .zip(&stats)
        .find(|(_, s)| s.dd_free != 1)
        .map(|(p, _)| p.to_string());
    let invariant = escape.is_none();
    // Orbits with one dd-free member each are disjoint, so full coverage
    // leaves no member in an orbit without one.
    let unique_dd_free = bad_rep.is_none() && (!invariant || covered == members.len() as u64);

    let desc = descent_polynomial(n, class, limits)?;
    let gamma = if desc.is_zero() {
        None
    } else {
        Some(desc.gamma_expand()?)
    };
    let gamma_matches_census = match &gamma {
        None => census.iter().all(|&c| c == 0),
        Some(g) => {
            census
                .iter()
                .enumerate()
                .all(|(k, &c)| g.get(k as u32) == BigInt::from(c))
                && g.gammas.len() <= census.len()
        }
    };

    Ok(OrbitReport {
        n,
        class: class.to_string(),
        boundary: BOUNDARY,
        class_size: members.len() as u64,
        orbits: reps.len() as u64,
        invariant,
        escape,
        unique_dd_free,
        bad_representative: bad_rep,
        orbit_polys_ok: stats.iter().all(|s| s.poly_ok),
        gamma,
        census,
        gamma_matches_census,
    })
}
