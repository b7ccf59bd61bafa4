//! Exact search for minimum good placements.
//!
//! The decision procedure is a cover-driven depth-first search on 128-bit
//! boards. At every node it picks the uncovered empty square with the fewest
//! ways of being resolved (a queen on the square itself, or queens completing
//! one of its four lines) and branches over those candidate squares. Branches
//! are made disjoint by forbidding every earlier candidate in later siblings,
//! so each placement is reached at most once. Line counts never exceed two:
//! a square on a full line is blocked and can no longer take a queen.
//!
//! Pruning uses a packing bound: uncovered squares with pairwise disjoint
//! candidate sets need disjoint queens, so their requirements add up.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{Dihedral, Placement, Slope, Square};

/// Largest board the bitboard search handles (`n * n <= 128`).
pub const MAX_N: usize = 11;

/// Known values of the minimum good placement size for n = 1..=27.
pub const KNOWN_M3: [usize; 27] = [
    1, 4, 4, 4, 6, 6, 8, 9, 10, 10, 12, 12, 14, 15, 16, 17, 18, 18, 20, 21, 22, 23, 24, 25, 26, 26, 28,
];

pub fn known_m3(n: usize) -> Option<usize> {
    n.checked_sub(1).and_then(|i| KNOWN_M3.get(i)).copied()
}

/// Lower bound on `m3(n)` from the published theorems: `n`, except `n - 1`
/// for `n = 3 (mod 4)`, and `n + 1` for `n = 1 (mod 4)` with `n >= 5`.
pub fn theorem_lower_bound(n: usize) -> usize {
    match n % 4 {
        3 => n - 1,
        1 if n >= 5 => n + 1,
        _ => n.max(1),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("board size {0} is outside the supported range 1..={MAX_N}")]
    UnsupportedSize(usize),
    #[error("queen count {q} is outside 1..={max} for n = {n}")]
    BadQueenCount { n: usize, q: usize, max: usize },
    #[error("Case 2 enumeration needs n = 1 (mod 4) with 5 <= n <= 9, got {0}")]
    UnsupportedCase2(usize),
    #[error("lower bound hint must be at least 1")]
    BadHint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    /// Largest queen count tried; defaults to `n * n`.
    pub max_size: usize,
    pub use_symmetry: bool,
    /// First queen count tried.
    pub lower_bound_hint: usize,
    pub time_budget: Option<Duration>,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            max_size: n * n,
            use_symmetry: true,
            lower_bound_hint: 1,
            time_budget: None,
            threads: None,
        }
    }

    /// Starts at [`theorem_lower_bound`] instead of 1.
    pub fn with_theorem_bound(mut self) -> Self {
        self.lower_bound_hint = theorem_lower_bound(self.n);
        self
    }
}

/// Outcome of a single decision query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Found(Placement),
    /// Search space exhausted: no good placement of that size exists.
    Infeasible,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    /// Least size with a good placement, if one was found.
    pub m3: Option<usize>,
    pub witness: Option<Placement>,
    pub nodes_expanded: u64,
    pub elapsed: Duration,
    /// Every size from `lower_bound_hint` up to the answer (or `max_size`)
    /// was decided; false when the budget ran out first.
    pub exhausted: bool,
    pub lower_bound_hint: usize,
    /// Sizes proven infeasible, in increasing order.
    pub refuted: Vec<usize>,
}

/// Precomputed masks for one board size.
struct Geometry {
    n: usize,
    board: u128,
    line_masks: Vec<u128>,
    square_lines: Vec<[usize; 4]>,
}

impl Geometry {
    fn new(n: usize) -> Self {
        let cells = n * n;
        let board = if cells == 128 { u128::MAX } else { (1u128 << cells) - 1 };
        let mut line_masks = vec![0u128; 6 * n - 2];
        let mut square_lines = Vec::with_capacity(cells);
        for i in 0..cells {
            let (c, r) = (i % n, i / n);
            let ids = [c, n + r, 2 * n + (c + n - 1 - r), 2 * n + (2 * n - 1) + (c + r)];
            for &id in &ids {
                line_masks[id] |= 1u128 << i;
            }
            square_lines.push(ids);
        }
        Geometry { n, board, line_masks, square_lines }
    }

    fn placement(&self, occ: u128) -> Placement {
        Placement::new(self.n, bits(occ).map(|i| Square::from_index(i, self.n))).expect("bitboard squares are on the board")
    }
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

struct Limits<'a> {
    deadline: Option<Instant>,
    expired: &'a AtomicBool,
}

struct Search<'a> {
    geo: &'a Geometry,
    counts: Vec<u8>,
    occ: u128,
    blocked: u128,
    forbid: u128,
    nodes: u64,
    limits: &'a Limits<'a>,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(geo: &'a Geometry, limits: &'a Limits<'a>) -> Self {
        Search {
            geo,
            counts: vec![0; geo.line_masks.len()],
            occ: 0,
            blocked: 0,
            forbid: 0,
            nodes: 0,
            limits,
            aborted: false,
        }
    }

    fn place(&mut self, t: usize) -> u128 {
        let saved = self.blocked;
        self.occ |= 1u128 << t;
        for &l in &self.geo.square_lines[t] {
            self.counts[l] += 1;
            debug_assert!(self.counts[l] <= 2);
            if self.counts[l] == 2 {
                self.blocked |= self.geo.line_masks[l];
            }
        }
        saved
    }

    fn unplace(&mut self, t: usize, saved_blocked: u128) {
        self.occ &= !(1u128 << t);
        for &l in &self.geo.square_lines[t] {
            self.counts[l] -= 1;
        }
        self.blocked = saved_blocked;
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes & 0x3ff == 0 {
            if self.limits.expired.load(AtomicOrdering::Relaxed) {
                self.aborted = true;
            } else if let Some(deadline) = self.limits.deadline {
                if Instant::now() >= deadline {
                    self.limits.expired.store(true, AtomicOrdering::Relaxed);
                    self.aborted = true;
                }
            }
        }
        !self.aborted
    }

    /// Candidate squares resolving `s`, and the fewest queens any one
    /// resolution needs. `None` when `s` cannot be resolved with `remaining`.
    fn candidates(&self, s: usize, allowed: u128, remaining: usize) -> Option<(u128, usize)> {
        let sbit = 1u128 << s;
        let mut cand = sbit & allowed;
        let mut need = if cand != 0 { 1 } else { usize::MAX };
        for &l in &self.geo.square_lines[s] {
            let req = 2 - self.counts[l] as usize;
            if req > remaining {
                continue;
            }
            let avail = self.geo.line_masks[l] & allowed & !sbit;
            if avail.count_ones() as usize >= req {
                cand |= avail;
                need = need.min(req);
            }
        }
        (cand != 0).then_some((cand, need))
    }

    /// `None` on prune, else the candidate set to branch on.
    fn analyse(&self, uncovered: u128, allowed: u128, remaining: usize) -> Option<u128> {
        let mut sets: [(u128, usize); 128] = [(0, 0); 128];
        let mut len = 0;
        let mut best = (u32::MAX, 0u128, 0usize);
        for s in bits(uncovered) {
            let (cand, need) = self.candidates(s, allowed, remaining)?;
            if need > remaining {
                return None;
            }
            let size = cand.count_ones();
            if size < best.0 {
                best = (size, cand, len);
            }
            sets[len] = (cand, need);
            len += 1;
        }
        // packing bound; start from the tightest square
        let (_, best_cand, best_idx) = best;
        let mut used = best_cand;
        let mut lb = sets[best_idx].1;
        for (i, &(cand, need)) in sets[..len].iter().enumerate() {
            if i != best_idx && cand & used == 0 {
                used |= cand;
                lb += need;
                if lb > remaining {
                    return None;
                }
            }
        }
        if lb > remaining {
            return None;
        }
        Some(best_cand)
    }

    fn dfs(&mut self, remaining: usize) -> bool {
        if !self.tick() {
            return false;
        }
        let uncovered = self.geo.board & !self.occ & !self.blocked;
        if remaining == 0 || uncovered == 0 {
            return remaining == 0 && uncovered == 0;
        }
        let allowed = uncovered & !self.forbid;
        if (allowed.count_ones() as usize) < remaining {
            return false;
        }
        let Some(cand) = self.analyse(uncovered, allowed, remaining) else {
            return false;
        };
        let saved_forbid = self.forbid;
        for t in bits(cand) {
            let saved = self.place(t);
            if self.dfs(remaining - 1) {
                return true;
            }
            self.unplace(t, saved);
            if self.aborted {
                break;
            }
            self.forbid |= 1u128 << t;
        }
        self.forbid = saved_forbid;
        false
    }
}

/// A root branch: first queen `first`, with `forbid` excluded.
#[derive(Clone, Copy, Debug)]
struct RootTask {
    first: usize,
    forbid: u128,
}

/// Root branches. With symmetry, the empty board is invariant under the
/// stabilizer of the root square, so only one candidate per stabilizer orbit
/// is branched on; orbits are processed as contiguous blocks, and a branch
/// forbids every candidate of earlier orbits.
fn root_tasks(geo: &Geometry, q: usize, use_symmetry: bool) -> Vec<RootTask> {
    let n = geo.n;
    let limits_flag = AtomicBool::new(false);
    let limits = Limits { deadline: None, expired: &limits_flag };
    let probe = Search::new(geo, &limits);
    let cand_of = |s: usize| probe.candidates(s, geo.board, q).map(|(c, _)| c).unwrap_or(0);

    if !use_symmetry {
        let best = (0..n * n).min_by_key(|&s| (cand_of(s).count_ones(), s)).unwrap();
        let mut forbid = 0;
        let mut tasks = Vec::new();
        for t in bits(cand_of(best)) {
            tasks.push(RootTask { first: t, forbid });
            forbid |= 1u128 << t;
        }
        return tasks;
    }

    let orbits_of = |s: usize| -> Vec<Vec<usize>> {
        let sq = Square::from_index(s, n);
        let stab: Vec<Dihedral> = Dihedral::ALL.iter().copied().filter(|g| g.apply(sq, n) == sq).collect();
        let cand = cand_of(s);
        let mut seen = 0u128;
        let mut orbits = Vec::new();
        for t in bits(cand) {
            if seen & (1u128 << t) != 0 {
                continue;
            }
            let ts = Square::from_index(t, n);
            let mut orbit: Vec<usize> = stab.iter().map(|g| g.apply(ts, n).index(n)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &u in &orbit {
                seen |= 1u128 << u;
            }
            orbits.push(orbit);
        }
        orbits
    };
    let best = (0..n * n).min_by_key(|&s| (orbits_of(s).len(), cand_of(s).count_ones(), s)).unwrap();
    let mut forbid = 0;
    let mut tasks = Vec::new();
    for orbit in orbits_of(best) {
        tasks.push(RootTask { first: orbit[0], forbid });
        for u in orbit {
            forbid |= 1u128 << u;
        }
    }
    tasks
}

enum TaskOutcome {
    Found(u128),
    Aborted,
}

fn decide(n: usize, q: usize, use_symmetry: bool, deadline: Option<Instant>, nodes: &AtomicU64) -> Decision {
    let geo = Geometry::new(n);
    let expired = AtomicBool::new(false);
    let limits = Limits { deadline, expired: &expired };
    let tasks = root_tasks(&geo, q, use_symmetry);
    let first = tasks.par_iter().find_map_first(|task| {
        let mut search = Search::new(&geo, &limits);
        search.forbid = task.forbid;
        search.place(task.first);
        let found = search.dfs(q - 1);
        nodes.fetch_add(search.nodes, AtomicOrdering::Relaxed);
        if found {
            Some(TaskOutcome::Found(search.occ))
        } else if search.aborted {
            Some(TaskOutcome::Aborted)
        } else {
            None
        }
    });
    match first {
        Some(TaskOutcome::Found(occ)) => Decision::Found(geo.placement(occ)),
        Some(TaskOutcome::Aborted) => Decision::BudgetExceeded,
        None => Decision::Infeasible,
    }
}

fn check_size(n: usize) -> Result<(), SolverError> {
    if n == 0 || n > MAX_N {
        Err(SolverError::UnsupportedSize(n))
    } else {
        Ok(())
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Decides whether a good placement with exactly `q` queens exists.
pub fn exists_good_of_size(n: usize, q: usize, use_symmetry: bool, budget: Option<Duration>) -> Result<Decision, SolverError> {
    check_size(n)?;
    if q == 0 || q > n * n {
        return Err(SolverError::BadQueenCount { n, q, max: n * n });
    }
    let nodes = AtomicU64::new(0);
    Ok(decide(n, q, use_symmetry, budget.map(|b| Instant::now() + b), &nodes))
}

/// Tries sizes from `lower_bound_hint` upward and returns the first one with
/// a good placement.
pub fn find_min_good(cfg: &SearchConfig) -> Result<SearchResult, SolverError> {
    check_size(cfg.n)?;
    if cfg.lower_bound_hint == 0 {
        return Err(SolverError::BadHint);
    }
    let max_size = cfg.max_size.min(cfg.n * cfg.n);
    let start = Instant::now();
    let deadline = cfg.time_budget.map(|b| start + b);
    let nodes = AtomicU64::new(0);
    with_threads(cfg.threads, || {
        let mut result = SearchResult {
            n: cfg.n,
            m3: None,
            witness: None,
            nodes_expanded: 0,
            elapsed: Duration::ZERO,
            exhausted: true,
            lower_bound_hint: cfg.lower_bound_hint,
            refuted: Vec::new(),
        };
        for q in cfg.lower_bound_hint..=max_size {
            match decide(cfg.n, q, cfg.use_symmetry, deadline, &nodes) {
                Decision::Found(p) => {
                    result.m3 = Some(q);
                    result.witness = Some(p);
                    break;
                }
                Decision::Infeasible => result.refuted.push(q),
                Decision::BudgetExceeded => {
                    result.exhausted = false;
                    break;
                }
            }
        }
        result.nodes_expanded = nodes.load(AtomicOrdering::Relaxed);
        result.elapsed = start.elapsed();
        Ok(result)
    })
}

/// Why a placement fails the Case 2 shape.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Case2Violation {
    #[error("board size {0} is not 1 (mod 4) with n >= 5")]
    BoardSize(usize),
    #[error("placement has {q} queens, Case 2 needs exactly {n}")]
    Size { q: usize, n: usize },
    #[error("placement has three queens on a line")]
    ThreeInLine,
    #[error("placement has {0} lonely queens, Case 2 needs exactly one")]
    LonelyCount(usize),
    #[error("queen {queen} is on no defined line of slope {slope}")]
    MissingLine { queen: Square, slope: Slope },
}

/// Checks the Case 2 shape: `n = 4k+1` queens on the `n`-board, no three in a
/// line, one lonely queen, and every other queen on a defined line of each
/// slope. Goodness is not required.
pub fn case2_violation(p: &Placement) -> Option<Case2Violation> {
    let n = p.n();
    if n < 5 || n % 4 != 1 {
        return Some(Case2Violation::BoardSize(n));
    }
    if p.len() != n {
        return Some(Case2Violation::Size { q: p.len(), n });
    }
    if p.has_three_in_line() {
        return Some(Case2Violation::ThreeInLine);
    }
    let lonely = p.lonely_queens();
    if lonely.len() != 1 {
        return Some(Case2Violation::LonelyCount(lonely.len()));
    }
    let defined = p.defined_lines();
    for &queen in p.queens() {
        if lonely.contains(&queen) {
            continue;
        }
        for slope in Slope::ALL {
            if !defined.contains(&crate::board::Line::through(slope, queen)) {
                return Some(Case2Violation::MissingLine { queen, slope });
            }
        }
    }
    None
}

pub fn is_case2_candidate(p: &Placement) -> bool {
    case2_violation(p).is_none()
}

/// All Case 2 placements on the `n`-board (`n = 5` or `9`), row-major order
/// of their sorted queen lists. With `symmetry_reduced`, only the canonical
/// member of each dihedral orbit is kept.
pub fn enumerate_case2_candidates(n: usize, symmetry_reduced: bool) -> Result<Vec<Placement>, SolverError> {
    if !(5..=9).contains(&n) || n % 4 != 1 {
        return Err(SolverError::UnsupportedCase2(n));
    }
    let geo = Geometry::new(n);
    let cells = n * n;
    // lines whose last square (row-major) is i
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); cells];
    for (l, &mask) in geo.line_masks.iter().enumerate() {
        if mask != 0 {
            closing[127 - mask.leading_zeros() as usize].push(l);
        }
    }
    let family = |l: usize| -> usize {
        match l {
            l if l < n => 0,
            l if l < 2 * n => 1,
            l if l < 2 * n + 2 * n - 1 => 2,
            _ => 3,
        }
    };
    let families: Vec<usize> = (0..geo.line_masks.len()).map(family).collect();

    struct Pairing<'g> {
        geo: &'g Geometry,
        closing: Vec<Vec<usize>>,
        families: Vec<usize>,
        per_slope: usize,
        target: usize,
        counts: Vec<u8>,
        used_per_family: [usize; 4],
        occ: u128,
        out: Vec<u128>,
    }

    impl Pairing<'_> {
        fn go(&mut self, i: usize, placed: usize) {
            let cells = self.geo.n * self.geo.n;
            if placed == self.target {
                // all remaining lines must be untouched-or-full; counts of 1 fail
                if self.counts.iter().all(|&c| c != 1) {
                    self.out.push(self.occ);
                }
                return;
            }
            if i == cells || cells - i < self.target - placed {
                return;
            }
            // take square i
            let lines = self.geo.square_lines[i];
            if lines.iter().all(|&l| self.counts[l] < 2) {
                let mut ok = true;
                for &l in &lines {
                    if self.counts[l] == 0 {
                        let f = self.families[l];
                        self.used_per_family[f] += 1;
                        if self.used_per_family[f] > self.per_slope {
                            ok = false;
                        }
                    }
                    self.counts[l] += 1;
                }
                self.occ |= 1u128 << i;
                if ok && self.closing[i].iter().all(|&l| self.counts[l] != 1) {
                    self.go(i + 1, placed + 1);
                }
                self.occ &= !(1u128 << i);
                for &l in &lines {
                    self.counts[l] -= 1;
                    if self.counts[l] == 0 {
                        self.used_per_family[self.families[l]] -= 1;
                    }
                }
            }
            // skip square i
            if self.closing[i].iter().all(|&l| self.counts[l] != 1) {
                self.go(i + 1, placed);
            }
        }
    }

    let k = (n - 1) / 4;
    let mut pairing = Pairing {
        geo: &geo,
        closing,
        families,
        per_slope: 2 * k,
        target: 4 * k,
        counts: vec![0; geo.line_masks.len()],
        used_per_family: [0; 4],
        occ: 0,
        out: Vec::new(),
    };
    pairing.go(0, 0);

    let mut result = Vec::new();
    for paired in pairing.out {
        let mut covered = 0u128;
        for (l, &mask) in geo.line_masks.iter().enumerate() {
            if mask & paired != 0 {
                let _ = l;
                covered |= mask;
            }
        }
        for lonely in bits(geo.board & !covered) {
            let p = geo.placement(paired | (1u128 << lonely));
            debug_assert!(is_case2_candidate(&p));
            if !symmetry_reduced || p.canonical() == p {
                result.push(p);
            }
        }
    }
    result.sort_by(|a, b| a.queens().iter().cmp(b.queens().iter()));
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn known_table_lookup() {
        assert_eq!(known_m3(1), Some(1));
        assert_eq!(known_m3(9), Some(10));
        assert_eq!(known_m3(27), Some(28));
        assert_eq!(known_m3(0), None);
        assert_eq!(known_m3(28), None);
        assert_eq!(theorem_lower_bound(7), 6);
        assert_eq!(theorem_lower_bound(9), 10);
        assert_eq!(theorem_lower_bound(1), 1);
        assert_eq!(theorem_lower_bound(8), 8);
    }

    #[test]
    fn trivial_boards() {
        let r = find_min_good(&SearchConfig::new(1)).unwrap();
        assert_eq!(r.m3, Some(1));
        assert_eq!(r.witness.unwrap().queens().len(), 1);
        let two = exists_good_of_size(2, 4, true, None).unwrap();
        match two {
            Decision::Found(p) => assert_eq!(p.len(), 4),
            other => panic!("{other:?}"),
        }
        assert_eq!(exists_good_of_size(2, 3, true, None).unwrap(), Decision::Infeasible);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(exists_good_of_size(0, 1, true, None), Err(SolverError::UnsupportedSize(0)));
        assert_eq!(exists_good_of_size(12, 12, true, None), Err(SolverError::UnsupportedSize(12)));
        assert!(matches!(exists_good_of_size(3, 10, true, None), Err(SolverError::BadQueenCount { .. })));
        let mut cfg = SearchConfig::new(3);
        cfg.lower_bound_hint = 0;
        assert_eq!(find_min_good(&cfg), Err(SolverError::BadHint));
    }

    #[test]
    fn small_values() {
        for (n, expected) in [(3, 4), (4, 4), (5, 6), (6, 6), (7, 8)] {
            let r = find_min_good(&SearchConfig::new(n)).unwrap();
            assert_eq!(r.m3, Some(expected), "n = {n}");
            assert!(r.exhausted);
            let w = r.witness.unwrap();
            assert!(w.is_good());
            assert_eq!(w.len(), expected);
            assert_eq!(r.refuted, (1..expected).collect::<Vec<_>>());
        }
    }

    #[test]
    fn symmetry_changes_work_not_answers() {
        for n in 3..=6 {
            let mut on = SearchConfig::new(n);
            on.use_symmetry = true;
            let mut off = on.clone();
            off.use_symmetry = false;
            let a = find_min_good(&on).unwrap();
            let b = find_min_good(&off).unwrap();
            assert_eq!(a.m3, b.m3);
        }
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let mut cfg = SearchConfig::new(6);
        cfg.threads = Some(1);
        let one = find_min_good(&cfg).unwrap();
        cfg.threads = Some(4);
        let four = find_min_good(&cfg).unwrap();
        assert_eq!(one.witness, four.witness);
    }

    #[test]
    fn zero_budget_is_not_a_proof() {
        let mut cfg = SearchConfig::new(8);
        cfg.time_budget = Some(Duration::ZERO);
        cfg.lower_bound_hint = 8;
        let r = find_min_good(&cfg).unwrap();
        assert!(!r.exhausted);
        assert_eq!(r.m3, None);
        assert!(r.witness.is_none());
    }

    #[test]
    fn case2_shapes() {
        assert!(is_case2_candidate(&fixtures::figure3()));
        assert_eq!(case2_violation(&fixtures::figure1()), Some(Case2Violation::Size { q: 10, n: 9 }));
        assert_eq!(case2_violation(&fixtures::figure2()), Some(Case2Violation::Size { q: 9, n: 5 }));
        assert_eq!(enumerate_case2_candidates(6, false), Err(SolverError::UnsupportedCase2(6)));
        assert_eq!(enumerate_case2_candidates(13, false), Err(SolverError::UnsupportedCase2(13)));
        assert!(enumerate_case2_candidates(5, false).unwrap().is_empty());
    }

    #[test]
    fn case2_nine_contains_octagon() {
        let all = enumerate_case2_candidates(9, false).unwrap();
        assert!(all.contains(&fixtures::figure3()));
        assert!(all.iter().all(is_case2_candidate));
        let reduced = enumerate_case2_candidates(9, true).unwrap();
        assert!(reduced.len() < all.len());
        assert!(reduced.contains(&fixtures::figure3().canonical()));
    }
}
