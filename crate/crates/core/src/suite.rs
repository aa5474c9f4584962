//! One runnable check per claim, each producing a [`CheckReport`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::mfs::{only_peaks_and_valleys, orbit_gamma_check};
use crate::perm::{
    class_size, dd_free_census, descent_polynomial, descent_set_distribution, enumerate_class, joint_distribution,
    mask_to_positions, verify_star_identities, ClassSpec, EnumLimits, Permutation, Statistic,
};
use crate::poly::{dilks_expand, GammaVector, IntPoly};
use crate::recurrences::{sweep, Family, Hypotheses, RecurrenceTable};
use crate::series::{cross_check, second_class, separable_class, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Advisory,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Advisory => "ADVISORY",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: Value,
    pub verdict: Verdict,
    pub summary: String,
    /// Counterexamples on failure, confirming values otherwise.
    pub witnesses: Vec<Value>,
    pub runtime_secs: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<8} {:<22} {}", self.verdict, self.check_id, compact(&self.params))?;
        write!(f, "  {} ({:.2}s)", self.summary, self.runtime_secs)
    }
}

fn compact(params: &Value) -> String {
    match params {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                _ => format!("{k}={v}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

struct Outcome {
    verdict: Verdict,
    summary: String,
    witnesses: Vec<Value>,
}

impl Outcome {
    fn new(ok: bool, summary: impl Into<String>, witnesses: Vec<Value>) -> Self {
        Self {
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            summary: summary.into(),
            witnesses,
        }
    }
}

fn run_check(id: &str, params: Value, f: impl FnOnce() -> Result<Outcome>) -> CheckReport {
    let start = Instant::now();
    let mut out = match f() {
        Ok(o) => o,
        Err(e @ Error::LimitExceeded { .. }) => Outcome {
            verdict: Verdict::Advisory,
            summary: "not run at this size".into(),
            witnesses: vec![json!({ "error": e.to_string() })],
        },
        Err(e) => Outcome::new(false, "error", vec![json!({ "error": e.to_string() })]),
    };
    if out.verdict == Verdict::Fail && out.witnesses.is_empty() {
        out.witnesses.push(json!({ "summary": out.summary }));
    }
    CheckReport {
        check_id: id.to_string(),
        params,
        verdict: out.verdict,
        summary: out.summary,
        witnesses: out.witnesses,
        runtime_secs: start.elapsed().as_secs_f64(),
    }
}

/// First `k` where the γ-vector and the dd-free census disagree.
fn gamma_census_mismatch(gamma: &GammaVector, census: &IntPoly) -> Option<Value> {
    let top = census.degree().unwrap_or(0).max(gamma.low + gamma.gammas.len() as u32);
    (0..=top).find_map(|k| {
        let (g, c) = (gamma.get(k), census.coeff(k));
        (g != c).then(|| json!({ "k": k, "gamma": g.to_string(), "census": c.to_string() }))
    })
}

fn gamma_vs_census(n: usize, class: &ClassSpec, limits: &EnumLimits) -> Result<Outcome> {
    let desc = descent_polynomial(n, class, limits)?;
    let gamma = desc.gamma_expand()?;
    let census = dd_free_census(n, class, limits)?;
    Ok(match gamma_census_mismatch(&gamma, &census) {
        None => Outcome::new(
            true,
            format!("gamma = ({gamma})"),
            vec![json!({ "gamma": gamma.to_string(), "descent_polynomial": desc.to_string() })],
        ),
        Some(w) => Outcome::new(false, "gamma differs from dd-free census", vec![w]),
    })
}

/// γ-vector of the Eulerian polynomial equals the dd-free census of `S_n`.
pub fn check_foata_schutz(n: usize, limits: &EnumLimits) -> CheckReport {
    run_check("foata-schutz", json!({ "n": n }), || {
        gamma_vs_census(n, &ClassSpec::All, limits)
    })
}

/// Same for the separable permutations.
pub fn check_fu_lin_zeng(n: usize, limits: &EnumLimits) -> CheckReport {
    run_check("fu-lin-zeng", json!({ "n": n }), || {
        let class = separable_class();
        let mut out = gamma_vs_census(n, &class, limits)?;
        let size = class_size(n, &class, limits)?;
        out.summary = format!("{} over {size} separables", out.summary);
        out.witnesses.push(json!({ "class_size": size }));
        Ok(out)
    })
}

/// Joint `(des, dd)` distributions of the two classes agree at `n`, and
/// agree with `[z^n]` of the solved series when given.
pub fn check_dddes(n: usize, limits: &EnumLimits, series: Option<(&TruncSeries, &TruncSeries)>) -> CheckReport {
    run_check("dddes", json!({ "n": n }), || {
        let stats = [Statistic::Des, Statistic::Dd];
        let (p1, p2) = rayon::join(
            || joint_distribution(n, &separable_class(), &stats, limits),
            || joint_distribution(n, &second_class(), &stats, limits),
        );
        let (p1, p2) = (p1?, p2?);
        let mut witnesses = vec![];
        let mut ok = p1 == p2;
        if !ok {
            witnesses.push(json!({ "separable": p1.to_string(), "avoiding_3412_3421": p2.to_string() }));
        }
        if let Some((s1, s2)) = series.filter(|(s1, _)| n <= s1.order()) {
            if s1.coeff(n) != p1 || s2.coeff(n) != p2 {
                ok = false;
                witnesses.push(json!({ "series_s1": s1.coeff(n).to_string(), "series_s2": s2.coeff(n).to_string() }));
            }
        }
        if ok {
            witnesses.push(json!({ "distribution": p1.to_string() }));
        }
        Ok(Outcome::new(ok, format!("sum x^des y^dd = {p1}"), witnesses))
    })
}

/// Both systems solved, all residuals zero, and `S1 = S2` to `order`.
pub fn check_dddes_series(order: usize) -> CheckReport {
    run_check("dddes-series", json!({ "order": order, "t2_weighting": "z^n" }), || {
        let (r, _, _) = cross_check(order)?;
        let ok = r.passed();
        let summary = if ok {
            format!("S1 = S2 to z^{order}; five equations and two rational relations have zero residual")
        } else {
            "series disagree".to_string()
        };
        Ok(Outcome::new(ok, summary, vec![serde_json::to_value(&r)?]))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WilfMode {
    /// Descent polynomials.
    Des,
    /// Multisets of descent sets.
    DesSet,
}

impl fmt::Display for WilfMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WilfMode::Des => "des",
            WilfMode::DesSet => "DES",
        })
    }
}

/// First descent set (lowest bitmask) whose multiplicities differ.
pub fn des_set_difference(
    n: usize,
    c1: &ClassSpec,
    c2: &ClassSpec,
    limits: &EnumLimits,
) -> Result<Option<(Vec<u32>, u64, u64)>> {
    let d1 = descent_set_distribution(n, c1, limits)?;
    let d2 = descent_set_distribution(n, c2, limits)?;
    let masks: BTreeSet<u64> = d1.keys().chain(d2.keys()).copied().collect();
    Ok(masks.into_iter().find_map(|m| {
        let (a, b) = (d1.get(&m).copied().unwrap_or(0), d2.get(&m).copied().unwrap_or(0));
        (a != b).then(|| (mask_to_positions(m), a, b))
    }))
}

/// Passes iff the two classes are equidistributed in the given sense at `n`.
pub fn check_wilf(n: usize, c1: &ClassSpec, c2: &ClassSpec, mode: WilfMode, limits: &EnumLimits) -> CheckReport {
    let params = json!({ "n": n, "left": c1.to_string(), "right": c2.to_string(), "mode": mode.to_string() });
    run_check("wilf", params, || match mode {
        WilfMode::Des => {
            let (p1, p2) = (descent_polynomial(n, c1, limits)?, descent_polynomial(n, c2, limits)?);
            let ok = p1 == p2;
            let w = json!({ "left": p1.to_string(), "right": p2.to_string() });
            Ok(Outcome::new(
                ok,
                format!("descent polynomials {}", if ok { "agree" } else { "differ" }),
                vec![w],
            ))
        }
        WilfMode::DesSet => Ok(match des_set_difference(n, c1, c2, limits)? {
            None => Outcome::new(true, "descent-set multisets agree", vec![]),
            Some((set, a, b)) => Outcome::new(
                false,
                format!("descent set {set:?} occurs {a} vs {b} times"),
                vec![json!({ "descent_set": set, "left": a, "right": b })],
            ),
        }),
    })
}

/// The two classes share descent polynomials for `n <= max_n` but not
/// descent-set multisets; reports the smallest `n` where those differ.
pub fn check_wilf_remark(max_n: usize, limits: &EnumLimits) -> CheckReport {
    run_check("wilf-remark", json!({ "max_n": max_n }), || {
        let (c1, c2) = (second_class(), separable_class());
        for n in 1..=max_n {
            if descent_polynomial(n, &c1, limits)? != descent_polynomial(n, &c2, limits)? {
                return Ok(Outcome::new(
                    false,
                    format!("descent polynomials differ at n = {n}"),
                    vec![json!({ "n": n })],
                ));
            }
        }
        for n in 1..=max_n {
            if let Some((set, a, b)) = des_set_difference(n, &c1, &c2, limits)? {
                return Ok(Outcome::new(
                    true,
                    format!("des-Wilf through n = {max_n}; descent sets first differ at n = {n}: {set:?} occurs {a} vs {b} times"),
                    vec![json!({ "n": n, "descent_set": set, "avoiding_3412_3421": a, "separable": b })],
                ));
            }
        }
        Ok(Outcome::new(
            false,
            format!("descent sets agree through n = {max_n}"),
            vec![],
        ))
    })
}

/// `Σ_{I_n} t^des q^maj` expands with coefficients in `N[q]`.
pub fn check_dilks(n: usize, limits: &EnumLimits) -> CheckReport {
    run_check("dilks", json!({ "n": n }), || {
        let p = joint_distribution(n, &ClassSpec::Involutions, &[Statistic::Des, Statistic::Maj], limits)?;
        match dilks_expand(&p, n as u32) {
            Ok(e) => {
                let gammas: Vec<String> = e.gammas.iter().map(|g| g.to_string()).collect();
                let bad: Vec<Value> = e
                    .gammas
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| !g.has_nonnegative_coeffs())
                    .map(|(k, g)| json!({ "k": k, "gamma": g.to_string() }))
                    .collect();
                let ok = e.nonnegative;
                let w = if ok { vec![json!({ "gammas": gammas })] } else { bad };
                Ok(Outcome::new(ok, format!("gamma_k(q) = [{}]", gammas.join("; ")), w))
            }
            Err(Error::NotDilksExpandable { k, reason }) => Ok(Outcome::new(
                false,
                format!("not expandable at k = {k}"),
                vec![json!({ "k": k, "reason": reason })],
            )),
            Err(e) => Err(e),
        }
    })
}

/// Whether the class descent polynomial is the γ-contraction of its own
/// dd-free census at center `n-1`. An empty class passes vacuously.
pub fn gamma_self(patterns: &[Permutation], n: usize, limits: &EnumLimits) -> Result<(bool, GammaVector)> {
    let class = ClassSpec::Avoiding(patterns.to_vec());
    let desc = descent_polynomial(n, &class, limits)?;
    let census = dd_free_census(n, &class, limits)?;
    let top = census.degree().unwrap_or(0);
    let g = GammaVector::new(
        n.saturating_sub(1) as u32,
        0,
        (0..=top).map(|k| census.coeff(k)).collect(),
    );
    Ok((g.contract() == desc, g))
}

pub fn check_gamma_self(patterns: &[Permutation], n: usize, limits: &EnumLimits) -> CheckReport {
    let names: Vec<String> = patterns.iter().map(|p| p.to_string()).collect();
    run_check("gamma-self", json!({ "patterns": names, "n": n }), || {
        let (ok, g) = gamma_self(patterns, n, limits)?;
        Ok(Outcome::new(
            ok,
            format!("census gamma = ({g})"),
            vec![json!({ "census_gamma": g.to_string() })],
        ))
    })
}

/// Patterns `σ` of length `len` with `gamma_self({σ, σ^r}, n)` for every
/// `n` in `ns`, in lexicographic order.
pub fn search_patterns(len: usize, ns: &[usize], limits: &EnumLimits) -> Result<Vec<Permutation>> {
    let all = enumerate_class(len, &ClassSpec::All, limits)?;
    let keep: Vec<Result<bool>> = all
        .par_iter()
        .map(|s| {
            let pair = [s.clone(), s.reverse()];
            for &n in ns {
                if !gamma_self(&pair, n, limits)?.0 {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect();
    let mut out = vec![];
    for (s, k) in all.into_iter().zip(keep) {
        if k? {
            out.push(s);
        }
    }
    Ok(out)
}

pub const LENGTH4_LIST: [&str; 4] = ["2413", "3142", "1342", "2431"];
pub const LENGTH5_LIST: [&str; 5] = ["13254", "15243", "15342", "23154", "25143"];

/// The listed patterns closed under reversal, sorted.
pub fn with_reverses(list: &[&str]) -> BTreeSet<String> {
    list.iter()
        .flat_map(|s| {
            let p = Permutation::parse(s).expect("listed pattern");
            [p.to_string(), p.reverse().to_string()]
        })
        .collect()
}

fn check_pattern_search(id: &str, len: usize, ns: &[usize], list: &[&str], limits: &EnumLimits) -> CheckReport {
    run_check(id, json!({ "length": len, "n": ns }), || {
        let found: BTreeSet<String> = search_patterns(len, ns, limits)?
            .iter()
            .map(|p| p.to_string())
            .collect();
        let want = with_reverses(list);
        let ok = found == want;
        let w = json!({
            "found": found,
            "missing": want.difference(&found).collect::<Vec<_>>(),
            "unexpected": found.difference(&want).collect::<Vec<_>>(),
        });
        Ok(Outcome::new(ok, format!("{} patterns found", found.len()), vec![w]))
    })
}

pub fn check_length5(ns: &[usize], limits: &EnumLimits) -> CheckReport {
    check_pattern_search("length5", 5, ns, &LENGTH5_LIST, limits)
}

pub fn check_length4_list(ns: &[usize], limits: &EnumLimits) -> CheckReport {
    check_pattern_search("length4", 4, ns, &LENGTH4_LIST, limits)
}

/// Every letter of each listed length-5 pattern (and reverse) is a peak or a
/// valley under `∞/∞` boundaries.
pub fn check_length5_roles() -> CheckReport {
    run_check("length5-roles", json!({ "boundary": crate::mfs::BOUNDARY }), || {
        let bad: Vec<Value> = with_reverses(&LENGTH5_LIST)
            .iter()
            .filter(|s| !only_peaks_and_valleys(&Permutation::parse(s).expect("pattern")))
            .map(|s| json!(s))
            .collect();
        Ok(Outcome::new(bad.is_empty(), "each letter is a peak or a valley", bad))
    })
}

/// Rebuilding a row's polynomial is cubic in `n`; beyond this the check is
/// minutes per family.
pub const PALINDROMIC_ROWS: u32 = 200;

/// Palindromicity and unimodality of `I_n` (family `a`) or `J_{2n}` (family
/// `b`) for rows `1..=min(max_n, PALINDROMIC_ROWS)` of a table.
pub fn check_palindromic_unimodal(table: &RecurrenceTable, max_n: u32) -> CheckReport {
    let rows = max_n.min(PALINDROMIC_ROWS);
    let params = json!({ "family": table.family.as_str(), "max_n": rows });
    run_check("palindromic-unimodal", params, || {
        let mut bad = vec![];
        let mut checked = 0;
        for n in 1..=rows {
            let Some(p) = table.reconstruct_poly(n) else { break };
            checked += 1;
            let center = p.is_palindromic();
            if center.is_err() || !p.is_unimodal() {
                bad.push(json!({ "n": n, "palindromic": center.is_ok(), "unimodal": p.is_unimodal() }));
            }
        }
        Ok(Outcome::new(
            bad.is_empty(),
            format!("{checked} polynomials checked"),
            bad,
        ))
    })
}

/// Table rows against brute-force descent polynomials of `I_n` / `J_{2n}`,
/// including the γ-vectors (and so every negative entry).
pub fn check_table_oracle(table: &RecurrenceTable, max_n: u32, limits: &EnumLimits) -> CheckReport {
    let params = json!({ "family": table.family.as_str(), "max_n": max_n });
    run_check("table-oracle", params, || {
        let mut bad = vec![];
        let mut counts = vec![];
        for n in 1..=max_n {
            let (size, class) = match table.family {
                Family::A => (n as usize, ClassSpec::Involutions),
                Family::B => (2 * n as usize, ClassSpec::FpfInvolutions),
            };
            let brute = descent_polynomial(size, &class, limits)?;
            let rebuilt = table
                .reconstruct_poly(n)
                .ok_or_else(|| Error::InvalidArgument(format!("row {n} missing")))?;
            let table_gamma = table.gamma_vector(n).expect("row present");
            let brute_gamma = brute.gamma_expand()?;
            if brute != rebuilt || brute_gamma.contract() != table_gamma.contract() {
                bad.push(json!({ "n": n, "brute": brute.to_string(), "table": rebuilt.to_string() }));
            }
            counts.push(brute.eval_at_one().to_string());
        }
        let mut w = bad.clone();
        if bad.is_empty() {
            w.push(json!({ "class_sizes": counts }));
        }
        Ok(Outcome::new(bad.is_empty(), "table rows match enumeration", w))
    })
}

/// Nonnegativity, auxiliary inequalities and proof chains over rows
/// `1..=max_n`, streamed.
pub fn check_recurrence(family: Family, max_n: u32, hyp: Hypotheses) -> CheckReport {
    let params = json!({ "family": family.as_str(), "max_n": max_n, "hypotheses": hyp });
    let id = match family {
        Family::A => "recurrence-a",
        Family::B => "recurrence-b",
    };
    run_check(id, params, || {
        let v = sweep(family, max_n, hyp)?;
        let ok = v.passed();
        let mut w = vec![];
        if !v.nonneg.violations.is_empty() {
            w.push(json!({ "negative_entries": v.nonneg.violations }));
        }
        if !v.aux.violations.is_empty() {
            w.push(json!({ "aux_violations": v.aux.violations }));
        }
        for (step, s) in &v.chains.steps {
            if !s.violations.is_empty() {
                w.push(json!({ "step": step, "violations": s.violations }));
            }
        }
        w.push(json!({
            "expected_negatives": v.nonneg.expected_negatives,
            "aux_advisory_failures": v.aux.advisory_failures,
            "chains": v.chains,
        }));
        let in_hyp: u64 = v.chains.steps.values().map(|s| s.in_hypothesis).sum();
        let summary = format!(
            "{} rows; {} negative entries outside the claimed range; {} in-hypothesis chain evaluations",
            v.nonneg.rows_checked,
            v.nonneg.expected_negatives.len(),
            in_hyp
        );
        Ok(Outcome::new(ok, summary, w))
    })
}

/// Orbit structure. `expect_invariant = false` passes when the class is not
/// a union of orbits and an escaping orbit is exhibited.
pub fn check_mfs(n: usize, class: &ClassSpec, expect_invariant: bool, limits: &EnumLimits) -> CheckReport {
    let params = json!({ "n": n, "class": class.to_string(), "expect_invariant": expect_invariant });
    run_check("mfs", params, || {
        let r = orbit_gamma_check(n, class, limits)?;
        let ok = if expect_invariant {
            r.passed()
        } else {
            !r.invariant && r.escape.is_some() && r.gamma_matches_census
        };
        let summary = format!(
            "{} orbits over {} members; invariant = {}",
            r.orbits, r.class_size, r.invariant
        );
        Ok(Outcome::new(ok, summary, vec![serde_json::to_value(&r)?]))
    })
}

/// The ⋆ statistic identities with their exceptions, over all pairs.
pub fn check_star(n: usize, limits: &EnumLimits) -> CheckReport {
    run_check("star", json!({ "n": n }), || {
        let r = verify_star_identities(n, limits)?;
        Ok(Outcome::new(
            r.passed(),
            format!("{} pairs", r.pairs),
            vec![serde_json::to_value(&r)?],
        ))
    })
}

/// Sizes used by [`run_suite`].
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub max_n_enum: usize,
    pub max_n_table: u32,
    pub series_order: usize,
    pub limits: EnumLimits,
    pub hypotheses: Hypotheses,
}

pub const CHECK_IDS: [&str; 18] = [
    "foata-schutz",
    "fu-lin-zeng",
    "dddes",
    "dddes-series",
    "wilf",
    "wilf-remark",
    "dilks",
    "gamma-self",
    "length4",
    "length5",
    "length5-roles",
    "palindromic-unimodal",
    "table-oracle",
    "recurrence-a",
    "recurrence-b",
    "mfs",
    "star",
    "separable-sizes",
];

type Job<'a> = Box<dyn Fn() -> Vec<CheckReport> + Send + Sync + 'a>;

/// Runs every check (or those named in `only`) in parallel.
pub fn run_suite(cfg: &SuiteConfig, only: Option<&[String]>) -> Result<Vec<CheckReport>> {
    if let Some(ids) = only {
        if let Some(bad) = ids.iter().find(|i| !CHECK_IDS.contains(&i.as_str())) {
            return Err(Error::InvalidArgument(format!("unknown check `{bad}`")));
        }
    }
    let wanted = |id: &str| only.is_none_or(|ids| ids.iter().any(|i| i == id));
    let e = cfg.max_n_enum;
    let lim = &cfg.limits;
    let range = |lo: usize, hi: usize| (lo..=hi).collect::<Vec<_>>();
    let mut jobs: Vec<(&str, Job)> = vec![];

    jobs.push((
        "foata-schutz",
        Box::new(move || {
            range(1, e.min(8))
                .into_par_iter()
                .map(|n| check_foata_schutz(n, lim))
                .collect()
        }),
    ));
    jobs.push((
        "fu-lin-zeng",
        Box::new(move || range(1, e).into_par_iter().map(|n| check_fu_lin_zeng(n, lim)).collect()),
    ));
    jobs.push((
        "dddes",
        Box::new(move || {
            let series = cross_check(cfg.series_order.max(e)).ok();
            range(1, e)
                .into_par_iter()
                .map(|n| check_dddes(n, lim, series.as_ref().map(|(_, a, b)| (&a.s1, &b.s2))))
                .collect()
        }),
    ));
    jobs.push((
        "dddes-series",
        Box::new(move || vec![check_dddes_series(cfg.series_order)]),
    ));
    jobs.push((
        "wilf",
        Box::new(move || {
            let (c1, c2) = (second_class(), separable_class());
            let mut v: Vec<CheckReport> = range(1, e)
                .into_par_iter()
                .map(|n| check_wilf(n, &c1, &c2, WilfMode::Des, lim))
                .collect();
            v.push(check_wilf(e, &c1, &c1, WilfMode::DesSet, lim));
            v
        }),
    ));
    jobs.push(("wilf-remark", Box::new(move || vec![check_wilf_remark(e, lim)])));
    jobs.push((
        "dilks",
        Box::new(move || {
            range(1, (e + 1).min(10))
                .into_par_iter()
                .map(|n| check_dilks(n, lim))
                .collect()
        }),
    ));
    jobs.push((
        "gamma-self",
        Box::new(move || {
            let sep = [Permutation::parse("2413").unwrap(), Permutation::parse("3142").unwrap()];
            range(1, e)
                .into_par_iter()
                .map(|n| check_gamma_self(&sep, n, lim))
                .collect()
        }),
    ));
    // Both lists are only singled out once n = 7 is in the sweep.
    jobs.push((
        "length4",
        Box::new(move || {
            vec![if e < SEARCH_MIN_N {
                too_small("length4", e)
            } else {
                check_length4_list(&range(1, e.min(8)), lim)
            }]
        }),
    ));
    jobs.push((
        "length5",
        Box::new(move || {
            vec![if e < SEARCH_MIN_N {
                too_small("length5", e)
            } else {
                check_length5(&range(5, e.min(7)), lim)
            }]
        }),
    ));
    jobs.push(("length5-roles", Box::new(|| vec![check_length5_roles()])));
    jobs.push((
        "palindromic-unimodal",
        Box::new(move || {
            let mut v = vec![];
            for fam in [Family::A, Family::B] {
                match RecurrenceTable::compute(fam, cfg.max_n_table.min(PALINDROMIC_ROWS)) {
                    Ok(t) => v.push(check_palindromic_unimodal(&t, cfg.max_n_table)),
                    Err(err) => v.push(run_check(
                        "palindromic-unimodal",
                        json!({ "family": fam.as_str() }),
                        || Err(err),
                    )),
                }
            }
            v
        }),
    ));
    jobs.push((
        "table-oracle",
        Box::new(move || {
            let mut v = vec![];
            for (fam, m) in [
                (Family::A, (e + 1).min(10) as u32),
                (Family::B, e.div_ceil(2).min(7) as u32),
            ] {
                match RecurrenceTable::compute(fam, m) {
                    Ok(t) => v.push(check_table_oracle(&t, m, lim)),
                    Err(err) => v.push(run_check("table-oracle", json!({ "family": fam.as_str() }), || {
                        Err(err)
                    })),
                }
            }
            v
        }),
    ));
    jobs.push((
        "recurrence-a",
        Box::new(move || vec![check_recurrence(Family::A, cfg.max_n_table, cfg.hypotheses)]),
    ));
    jobs.push((
        "recurrence-b",
        Box::new(move || vec![check_recurrence(Family::B, cfg.max_n_table, cfg.hypotheses)]),
    ));
    jobs.push((
        "mfs",
        Box::new(move || {
            let mut cases: Vec<(usize, ClassSpec, bool)> = vec![];
            for n in 1..=e.min(8) {
                cases.push((n, ClassSpec::All, true));
                cases.push((n, second_class(), true));
            }
            // The separables are closed under hops below length 4.
            for n in 4..=e.min(7) {
                cases.push((n, separable_class(), false));
            }
            cases
                .into_par_iter()
                .map(|(n, c, inv)| check_mfs(n, &c, inv, lim))
                .collect()
        }),
    ));
    jobs.push((
        "star",
        Box::new(move || range(2, e).into_par_iter().map(|n| check_star(n, lim)).collect()),
    ));
    jobs.push((
        "separable-sizes",
        Box::new(move || vec![check_separable_sizes(e.min(9), lim)]),
    ));

    let reports: Vec<Vec<CheckReport>> = jobs
        .into_par_iter()
        .filter(|(id, _)| wanted(id))
        .map(|(_, job)| job())
        .collect();
    Ok(reports.into_iter().flatten().collect())
}

const SEARCH_MIN_N: usize = 7;

fn too_small(id: &str, e: usize) -> CheckReport {
    run_check(id, json!({ "max_n_enum": e }), || {
        Ok(Outcome {
            verdict: Verdict::Advisory,
            summary: format!("pattern search needs max_n_enum >= {SEARCH_MIN_N}"),
            witnesses: vec![],
        })
    })
}

/// Separable class sizes are the large Schröder numbers.
pub fn check_separable_sizes(max_n: usize, limits: &EnumLimits) -> CheckReport {
    run_check("separable-sizes", json!({ "max_n": max_n }), || {
        let schroeder = large_schroeder(max_n);
        let class = separable_class();
        let mut sizes = vec![];
        for n in 1..=max_n {
            sizes.push(class_size(n, &class, limits)?);
        }
        let ok = sizes[..] == schroeder[..];
        Ok(Outcome::new(
            ok,
            format!("sizes {sizes:?}"),
            vec![json!({ "sizes": sizes, "schroeder": schroeder })],
        ))
    })
}

/// `r_0, …` shifted so entry `n-1` counts separables of length `n`:
/// `1, 2, 6, 22, 90, …`.
pub fn large_schroeder(count: usize) -> Vec<u64> {
    // (n+1) r_n = 3(2n-1) r_{n-1} - (n-2) r_{n-2}
    let mut r: Vec<u64> = vec![1, 2];
    for n in 2..count as u64 {
        let next = (3 * (2 * n - 1) * r[n as usize - 1] - (n - 2) * r[n as usize - 2]) / (n + 1);
        r.push(next);
    }
    r.truncate(count);
    r
}

/// Unique check ids present, with their worst verdict.
pub fn verdict_table(reports: &[CheckReport]) -> BTreeMap<String, Verdict> {
    let mut out: BTreeMap<String, Verdict> = BTreeMap::new();
    for r in reports {
        let e = out.entry(r.check_id.clone()).or_insert(Verdict::Pass);
        *e = match (*e, r.verdict) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Advisory, _) | (_, Verdict::Advisory) => Verdict::Advisory,
            _ => Verdict::Pass,
        };
    }
    out
}
