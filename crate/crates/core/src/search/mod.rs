//! Exhaustive oracles over code multisets.
//!
//! These answer the extremal questions directly by enumeration: the smallest
//! palette admitting an acceptable multiset of a given size, the largest
//! acceptable multiset over a palette, and the same restricted to a color
//! subset. Every search estimates its raw enumeration size first and refuses
//! to start above the configured budget.

mod engine;
mod multiset;
mod rooks;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, ColorCode};
use crate::error::{Error, Result};
use engine::{Engine, MaxGoal, Progress};

pub use multiset::{canonical_form, is_acceptable, CodeMultiset, CANONICAL_MAX_K};
pub use rooks::{is_isolated, max_isolated_rooks, RookPlacement, MAX_ROOK_BOARD};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Refuse any search whose raw candidate count exceeds this.
    pub budget: u64,
    /// Worker threads; results do not depend on it.
    pub jobs: usize,
    /// Stream a progress line to stderr every million candidates.
    pub progress: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, jobs: 1, progress: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome<T> {
    pub result: T,
    /// Candidate extensions generated, counted as a sequential run would.
    pub candidates_examined: u64,
}

/// The JSON record emitted for one search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub op: String,
    pub params: serde_json::Value,
    pub result: serde_json::Value,
    pub candidates_examined: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Raw count of code collections of size `1..=cap` over `alphabet` codes.
fn raw_count(alphabet: u128, cap: u128, distinct: bool) -> u128 {
    if distinct {
        (1..=cap).map(|j| binomial(alphabet, j)).fold(0, u128::saturating_add)
    } else {
        // sum_{j<=cap} C(n+j-1, j) = C(n+cap, cap) - 1
        binomial(alphabet + cap, cap).saturating_sub(1)
    }
}

fn check_budget(estimate: u128, opts: &SearchOptions) -> Result<()> {
    if estimate > u128::from(opts.budget) {
        return Err(Error::BudgetExceeded { estimate, budget: opts.budget });
    }
    Ok(())
}

fn check_palette(k: Color) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("palette must hold at least one color"));
    }
    if k > CANONICAL_MAX_K {
        return Err(Error::Unsupported(format!("searches over more than {CANONICAL_MAX_K} colors")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxAcceptable {
    /// Largest acceptable size found (at most `t_cap`).
    pub size: usize,
    /// True when `size == t_cap`, so larger sizes were not ruled out.
    pub reached_cap: bool,
    /// First maximum-size multiset in enumeration order, sorted.
    pub example: Vec<ColorCode>,
}

/// Size of the largest acceptable multiset (or set, with `distinct_only`) of
/// at most `t_cap` codes over `1..=k`.
pub fn max_acceptable(
    k: Color,
    distinct_only: bool,
    t_cap: usize,
    opts: &SearchOptions,
) -> Result<SearchOutcome<MaxAcceptable>> {
    check_palette(k)?;
    if t_cap == 0 {
        return Err(Error::invalid("t_cap must be at least 1"));
    }
    let alphabet = u128::from(k) * u128::from(k);
    check_budget(raw_count(alphabet, t_cap as u128, distinct_only), opts)?;

    let palette: Vec<Color> = (1..=k).collect();
    let progress = Progress::new("maxset", opts.progress);
    let goal = MaxGoal { cap: t_cap, dims: 1, score: &|codes| vec![codes.len()] };
    let mut out = Engine::new(&palette, distinct_only, true, &progress).max(&goal, opts.jobs)?;
    Ok(SearchOutcome {
        result: MaxAcceptable {
            size: out.best.scores[0],
            reached_cap: out.reached_cap,
            example: out.best.examples.swap_remove(0),
        },
        candidates_examined: out.candidates,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rx3Search {
    /// Smallest palette size admitting a 3-rainbow coloring of K_{2,t}.
    Found(Color),
    /// No palette of size up to `k_max` works.
    ExceedsKMax,
}

/// `rx3(K_{2,t})` by exhaustive search over palettes `1..=k_max`.
pub fn brute_force_rx3(t: usize, k_max: Color, opts: &SearchOptions) -> Result<SearchOutcome<Rx3Search>> {
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    check_palette(k_max)?;
    let estimate = (1..=u128::from(k_max))
        .map(|k| binomial(k * k + t as u128 - 1, t as u128))
        .fold(0, u128::saturating_add);
    check_budget(estimate, opts)?;

    let progress = Progress::new("oracle", opts.progress);
    let mut candidates = 0;
    for k in 1..=k_max {
        let palette: Vec<Color> = (1..=k).collect();
        let out = Engine::new(&palette, false, true, &progress).reach(t, opts.jobs)?;
        candidates += out.candidates;
        if out.example.is_some() {
            return Ok(SearchOutcome { result: Rx3Search::Found(k), candidates_examined: candidates });
        }
    }
    Ok(SearchOutcome { result: Rx3Search::ExceedsKMax, candidates_examined: candidates })
}

pub const BETA_MAX_B: usize = 3;

/// Largest number of codes drawn only from a fixed `b`-subset B of the
/// palette that can appear together in an acceptable multiset over
/// `1..=k_ambient`.
///
/// Codes outside B may be present, so trees can use colors outside B through
/// them. With `k_ambient == b` nothing outside B exists and this is the
/// maximum size of an acceptable B-limited multiset on its own.
///
/// Each B is maximized separately over every multiset (no relabeling
/// reduction), and all must agree.
pub fn beta(b: usize, k_ambient: Color, opts: &SearchOptions) -> Result<SearchOutcome<usize>> {
    if !(1..=BETA_MAX_B).contains(&b) {
        return Err(Error::Unsupported(format!("beta for |B| = {b} (exhaustive only for 1..={BETA_MAX_B})")));
    }
    if (k_ambient as usize) < b {
        return Err(Error::invalid(format!("ambient palette {k_ambient} is smaller than |B| = {b}")));
    }
    check_palette(k_ambient)?;
    // One more than the k(k-1) off-diagonal codes; reaching it is reported as
    // an error rather than mistaken for a maximum.
    let cap = (k_ambient * (k_ambient - 1) + 1) as usize;
    let alphabet = u128::from(k_ambient) * u128::from(k_ambient);
    check_budget(raw_count(alphabet, cap as u128, false), opts)?;

    let subsets = subsets_of(k_ambient, b);
    let score = |codes: &[ColorCode]| -> Vec<usize> {
        subsets
            .iter()
            .map(|set| codes.iter().filter(|c| set.contains(&c.a1) && set.contains(&c.a2)).count())
            .collect()
    };
    let goal = MaxGoal { cap, dims: subsets.len(), score: &score };
    let palette: Vec<Color> = (1..=k_ambient).collect();
    let progress = Progress::new("beta", opts.progress);
    let out = Engine::new(&palette, false, false, &progress).max(&goal, opts.jobs)?;
    if out.reached_cap {
        return Err(Error::Unsupported(format!("beta search hit its cap of {cap} codes")));
    }
    let value = out.best.scores[0];
    if let Some((i, v)) = out.best.scores.iter().enumerate().find(|(_, &v)| v != value) {
        return Err(Error::invalid(format!(
            "color subsets disagree: {value} for {:?} vs {v} for {:?}",
            subsets[0], subsets[i]
        )));
    }
    Ok(SearchOutcome { result: value, candidates_examined: out.candidates })
}

fn subsets_of(k: Color, b: usize) -> Vec<Vec<Color>> {
    fn go(next: Color, k: Color, b: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == b {
            out.push(cur.clone());
            return;
        }
        for c in next..=k {
            cur.push(c);
            go(c + 1, k, b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, k, b, &mut Vec::new(), &mut out);
    out
}
