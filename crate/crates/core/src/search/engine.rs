//! Orderly enumeration of code multisets.
//!
//! Candidates are nondecreasing (or, for sets, increasing) sequences of code
//! indices, grown one code at a time. Two prunings keep the tree small:
//!
//! * Canonicity. If some relabeling sorts a prefix below itself, the same
//!   relabeling sorts every extension below itself too (merging in more codes
//!   can only lower each sorted position). So non-canonical prefixes are cut.
//! * Potential satisfiability. Acceptability is not hereditary: a triple's
//!   tree may borrow a bridging W-vertex that only arrives later. A triple is
//!   therefore only rejected outright when no tree shape could work even with
//!   a hypothetical bridge carrying two unused colors. Triples that still
//!   depend on such a bridge are kept pending and re-checked exactly.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::coloring::{Color, ColorCode, TripleKind};
use crate::error::{Error, Result};
use crate::search::multiset::permutations;
use crate::verifier::{catalog_search, fast_check, ExtraPick, ExtraSource, TripleShape};

/// Depth at which the search tree is cut into independent tasks. With several
/// workers the cut moves deeper, up to `MAX_SPLIT_DEPTH`, until each worker
/// has about `TASKS_PER_JOB` tasks. Where the cut falls changes neither the
/// results nor the candidate count.
const SPLIT_DEPTH: usize = 3;
const MAX_SPLIT_DEPTH: usize = 6;
const TASKS_PER_JOB: usize = 32;
const PROGRESS_EVERY: u64 = 1_000_000;

pub(crate) struct Progress {
    label: &'static str,
    enabled: bool,
    seen: AtomicU64,
}

impl Progress {
    pub fn new(label: &'static str, enabled: bool) -> Self {
        Progress { label, enabled, seen: AtomicU64::new(0) }
    }

    #[inline]
    pub fn tick(&self) {
        if self.enabled {
            let n = self.seen.fetch_add(1, Ordering::Relaxed) + 1;
            if n.is_multiple_of(PROGRESS_EVERY) {
                eprintln!("[{}] {n} candidates examined", self.label);
            }
        }
    }
}

pub(crate) struct Engine<'p> {
    palette_len: usize,
    alphabet: Vec<ColorCode>,
    /// Non-identity relabelings, each as a map on code indices.
    relabelings: Vec<Vec<u8>>,
    distinct: bool,
    canonical: bool,
    progress: &'p Progress,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TripleState {
    Settled,
    Pending,
    Impossible,
}

struct State {
    seq: Vec<u8>,
    codes: Vec<ColorCode>,
    pending: Vec<TripleShape>,
    marks: Vec<usize>,
}

impl State {
    fn new() -> Self {
        State { seq: Vec::new(), codes: Vec::new(), pending: Vec::new(), marks: Vec::new() }
    }

    fn len(&self) -> usize {
        self.seq.len()
    }

    fn pop(&mut self) {
        let mark = self.marks.pop().expect("pop on empty state");
        self.pending.truncate(mark);
        self.seq.pop();
        self.codes.pop();
    }

    /// Every triple holds now, using only vertices already present.
    fn exact(&self) -> bool {
        self.pending.iter().all(|t| catalog_search(&self.codes, t, ExtraSource::Scan).is_some())
    }
}

/// Per-component best scores, each with the first multiset (in enumeration
/// order) attaining it.
#[derive(Debug, Clone)]
pub(crate) struct Best {
    pub scores: Vec<usize>,
    pub examples: Vec<Vec<ColorCode>>,
}

impl Best {
    fn new(dims: usize) -> Self {
        Best { scores: vec![0; dims], examples: vec![Vec::new(); dims] }
    }

    /// Scores the node, running the exact check only if it could improve
    /// something. Returns whether the node is acceptable, as far as checked.
    fn visit(&mut self, st: &State, goal: &MaxGoal<'_>) -> bool {
        if st.len() == 0 {
            return false;
        }
        let scores = (goal.score)(&st.codes);
        if scores.iter().zip(&self.scores).all(|(new, old)| new <= old) && st.len() < goal.cap {
            return false;
        }
        if !st.exact() {
            return false;
        }
        for (i, &s) in scores.iter().enumerate() {
            if s > self.scores[i] {
                self.scores[i] = s;
                self.examples[i] = st.codes.clone();
            }
        }
        true
    }

    /// Keeps the earlier example on ties, so merging in task order matches a
    /// sequential run.
    fn merge(&mut self, later: Best) {
        for (i, (s, ex)) in later.scores.into_iter().zip(later.examples).enumerate() {
            if s > self.scores[i] {
                self.scores[i] = s;
                self.examples[i] = ex;
            }
        }
    }
}

#[derive(Debug)]
pub(crate) struct ReachOutcome {
    pub example: Option<Vec<ColorCode>>,
    pub candidates: u64,
}

#[derive(Debug)]
pub(crate) struct MaxOutcome {
    pub best: Best,
    pub reached_cap: bool,
    pub candidates: u64,
}

impl<'p> Engine<'p> {
    /// `palette` must be sorted and hold at most 8 colors. Without
    /// `canonical`, every relabeling of every multiset is visited.
    pub fn new(palette: &[Color], distinct: bool, canonical: bool, progress: &'p Progress) -> Self {
        let p = palette.len();
        debug_assert!(palette.windows(2).all(|w| w[0] < w[1]));
        let alphabet: Vec<ColorCode> =
            palette.iter().flat_map(|&a| palette.iter().map(move |&b| ColorCode::new(a, b))).collect();
        let relabelings = permutations(p)
            .into_iter()
            .skip(1)
            .map(|perm| (0..p * p).map(|idx| (perm[idx / p] * p + perm[idx % p]) as u8).collect())
            .collect();
        Engine { palette_len: p, alphabet, relabelings, distinct, canonical, progress }
    }

    fn child_start(&self, st: &State) -> usize {
        match st.seq.last() {
            None => 0,
            Some(&last) => usize::from(last) + usize::from(self.distinct),
        }
    }

    fn is_canonical(&self, seq: &[u8], scratch: &mut Vec<u8>) -> bool {
        for map in &self.relabelings {
            scratch.clear();
            scratch.extend(seq.iter().map(|&i| map[usize::from(i)]));
            scratch.sort_unstable();
            if scratch.as_slice() < seq {
                return false;
            }
        }
        true
    }

    fn classify(&self, codes: &[ColorCode], triple: &TripleShape) -> TripleState {
        match fast_check(codes, self.palette_len as Color, triple) {
            Some(true) => return TripleState::Settled,
            Some(false) => return TripleState::Impossible,
            None => {}
        }
        match catalog_search(codes, triple, ExtraSource::Hypothetical(self.palette_len)) {
            None => TripleState::Impossible,
            Some((_, ExtraPick::Hypothetical)) => {
                if catalog_search(codes, triple, ExtraSource::Scan).is_some() {
                    TripleState::Settled
                } else {
                    TripleState::Pending
                }
            }
            Some(_) => TripleState::Settled,
        }
    }

    /// Appends code `idx` if every new triple is still satisfiable.
    fn push(&self, st: &mut State, idx: u8, scratch: &mut Vec<u8>) -> bool {
        st.seq.push(idx);
        if self.canonical && !self.is_canonical(&st.seq, scratch) {
            st.seq.pop();
            return false;
        }
        st.codes.push(self.alphabet[usize::from(idx)]);
        let mark = st.pending.len();
        st.marks.push(mark);
        let j = st.codes.len();
        let mut triples =
            std::iter::once(TripleShape { kind: TripleKind::OneW, side: 1, members: [j, 0, 0] })
                .chain((1..j).flat_map(|x| {
                    [1, 2].map(|side| TripleShape { kind: TripleKind::TwoW, side, members: [x, j, 0] })
                }))
                .chain((1..j).flat_map(|x| {
                    (x + 1..j).map(move |y| TripleShape {
                        kind: TripleKind::ThreeW,
                        side: 1,
                        members: [x, y, j],
                    })
                }));
        let ok = triples.try_for_each(|t| match self.classify(&st.codes, &t) {
            TripleState::Settled => Ok(()),
            TripleState::Pending => {
                st.pending.push(t);
                Ok(())
            }
            TripleState::Impossible => Err(()),
        });
        if ok.is_err() {
            st.pop();
            return false;
        }
        true
    }

    fn restore(&self, seq: &[u8]) -> State {
        let mut st = State::new();
        let mut scratch = Vec::new();
        for &idx in seq {
            let ok = self.push(&mut st, idx, &mut scratch);
            debug_assert!(ok, "frontier prefix must replay");
        }
        st
    }

    /// Collects the surviving prefixes of length `depth`. Shallower nodes are
    /// passed to `visit` in DFS order, interleaved with `None` wherever a
    /// task is cut off.
    fn frontier(&self, depth: usize, visit: &mut dyn FnMut(Option<&State>)) -> Frontier {
        self.walk_frontier(depth, true, visit)
    }

    fn walk_frontier(&self, depth: usize, tick: bool, visit: &mut dyn FnMut(Option<&State>)) -> Frontier {
        struct Walk<'e, 'p, 'v> {
            engine: &'e Engine<'p>,
            depth: usize,
            tick: bool,
            out: Frontier,
            visit: &'v mut dyn FnMut(Option<&State>),
            scratch: Vec<u8>,
        }
        impl Walk<'_, '_, '_> {
            fn go(&mut self, st: &mut State) {
                if st.len() == self.depth {
                    self.out.tasks.push(st.seq.clone());
                    self.out.counted_before.push(self.out.count);
                    (self.visit)(None);
                    return;
                }
                (self.visit)(Some(st));
                for idx in self.engine.child_start(st)..self.engine.alphabet.len() {
                    self.out.count += 1;
                    if self.tick {
                        self.engine.progress.tick();
                    }
                    if self.engine.push(st, idx as u8, &mut self.scratch) {
                        self.go(st);
                        st.pop();
                    }
                }
            }
        }
        let out = Frontier { tasks: Vec::new(), counted_before: Vec::new(), count: 0 };
        let mut w = Walk { engine: self, depth, tick, out, visit, scratch: Vec::new() };
        w.go(&mut State::new());
        w.out
    }

    fn split_depth(&self, limit: usize, jobs: usize) -> usize {
        let mut depth = SPLIT_DEPTH.min(limit);
        if jobs > 1 {
            while depth < limit.min(MAX_SPLIT_DEPTH)
                && self.walk_frontier(depth, false, &mut |_| {}).tasks.len() < TASKS_PER_JOB * jobs
            {
                depth += 1;
            }
        }
        depth
    }

    fn reach_from(&self, st: &mut State, target: usize, count: &mut u64, scratch: &mut Vec<u8>) -> bool {
        for idx in self.child_start(st)..self.alphabet.len() {
            *count += 1;
            self.progress.tick();
            if !self.push(st, idx as u8, scratch) {
                continue;
            }
            let found =
                if st.len() == target { st.exact() } else { self.reach_from(st, target, count, scratch) };
            if found {
                return true;
            }
            st.pop();
        }
        false
    }

    /// Looks for an acceptable multiset of exactly `target` codes.
    pub fn reach(&self, target: usize, jobs: usize) -> Result<ReachOutcome> {
        let split = self.split_depth(target - 1, jobs);
        let front = self.frontier(split, &mut |_| {});
        let run = |seq: &Vec<u8>| {
            let mut st = self.restore(seq);
            let mut count = 0;
            let found = self.reach_from(&mut st, target, &mut count, &mut Vec::new());
            (found.then(|| st.codes.clone()), count)
        };
        let results = run_tasks(&front.tasks, jobs, run, |r| r.0.is_some())?;
        let mut candidates = results.iter().map(|r| r.1).sum::<u64>();
        let mut example = None;
        match results.iter().position(|r| r.0.is_some()) {
            Some(i) => {
                candidates += front.counted_before[i];
                example = results[i].0.clone();
            }
            None => candidates += front.count,
        }
        Ok(ReachOutcome { example, candidates })
    }

    fn max_from(
        &self,
        st: &mut State,
        goal: &MaxGoal<'_>,
        best: &mut Best,
        count: &mut u64,
        scratch: &mut Vec<u8>,
    ) -> bool {
        let d = st.len();
        if best.visit(st, goal) && d == goal.cap {
            return true;
        }
        if d == goal.cap {
            return false;
        }
        for idx in self.child_start(st)..self.alphabet.len() {
            *count += 1;
            self.progress.tick();
            if !self.push(st, idx as u8, scratch) {
                continue;
            }
            let done = self.max_from(st, goal, best, count, scratch);
            st.pop();
            if done {
                return true;
            }
        }
        false
    }

    /// Maximizes each component of `goal.score` over acceptable multisets of
    /// at most `goal.cap` codes. Stops early once an acceptable multiset of
    /// exactly `cap` codes turns up.
    pub fn max(&self, goal: &MaxGoal<'_>, jobs: usize) -> Result<MaxOutcome> {
        let split = self.split_depth(goal.cap, jobs);
        // seeds[i] is the best over the shallow nodes that precede task i.
        let mut shallow_best = Best::new(goal.dims);
        let mut seeds = Vec::new();
        let front = self.frontier(split, &mut |node| match node {
            Some(st) => {
                let reached = shallow_best.visit(st, goal) && st.len() == goal.cap;
                debug_assert!(!reached, "frontier stops short of the cap");
            }
            None => seeds.push(shallow_best.clone()),
        });
        let run = |(seq, seed): &(Vec<u8>, Best)| {
            let mut st = self.restore(seq);
            let mut best = seed.clone();
            let mut count = 0;
            let reached = self.max_from(&mut st, goal, &mut best, &mut count, &mut Vec::new());
            (best, reached, count)
        };
        let tasks: Vec<(Vec<u8>, Best)> = front.tasks.into_iter().zip(seeds).collect();
        let results = run_tasks(&tasks, jobs, run, |r| r.1)?;
        let mut out = MaxOutcome { best: Best::new(goal.dims), reached_cap: false, candidates: 0 };
        for (i, (best, reached, count)) in results.into_iter().enumerate() {
            out.candidates += count;
            out.best.merge(best);
            if reached {
                out.reached_cap = true;
                out.candidates += front.counted_before[i];
                return Ok(out);
            }
        }
        out.best.merge(shallow_best);
        out.candidates += front.count;
        Ok(out)
    }
}

/// The cut of the search tree: tasks in DFS order, the candidates generated
/// above the cut before each task, and in total.
struct Frontier {
    tasks: Vec<Vec<u8>>,
    counted_before: Vec<u64>,
    count: u64,
}

/// What [`Engine::max`] maximizes: a score vector per acceptable multiset.
pub(crate) struct MaxGoal<'a> {
    pub cap: usize,
    pub dims: usize,
    pub score: &'a (dyn Fn(&[ColorCode]) -> Vec<usize> + Sync),
}

/// Runs `run` over `tasks` and returns results in task order, truncated just
/// after the first result satisfying `stop`. Which tasks were skipped depends
/// on scheduling, but the returned prefix does not.
fn run_tasks<T, R, F, S>(tasks: &[T], jobs: usize, run: F, stop: S) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
    S: Fn(&R) -> bool + Sync,
{
    if jobs <= 1 {
        let mut out = Vec::new();
        for task in tasks {
            let r = run(task);
            let halt = stop(&r);
            out.push(r);
            if halt {
                break;
            }
        }
        return Ok(out);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let first_stop = AtomicUsize::new(usize::MAX);
    let results: Vec<Option<R>> = pool.install(|| {
        tasks
            .par_iter()
            .enumerate()
            .map(|(i, task)| {
                if i > first_stop.load(Ordering::Relaxed) {
                    return None;
                }
                let r = run(task);
                if stop(&r) {
                    first_stop.fetch_min(i, Ordering::Relaxed);
                }
                Some(r)
            })
            .collect()
    });
    let cut = first_stop.into_inner();
    Ok(results
        .into_iter()
        .take(cut.saturating_add(1))
        .map(|r| r.expect("tasks before the first stop always run"))
        .collect())
}
