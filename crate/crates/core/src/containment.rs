//! Containment up to a resynchronizer, checked on all inputs up to a length.
//!
//! Convention: the resynchronizer moves origins of a graph `σ` of `T2` (the
//! source, track `x`) to those of a graph `σ'` of `T1` (the target, track
//! `y`). `T1 ⊆ R(T2)` holds on a sweep when every `σ'` of `T1` has some
//! `σ` of `T2` over the same words with `(σ, σ') ∈ ⟦R⟧`.
//!
//! Inputs are visited by length, then lexicographically; the first failing
//! graph in that order is reported whatever the number of worker threads.

use rustc_hash::FxHashSet as HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::resync::{make_rk, pair_in_resync, ResyncWitness, Resynchronizer};
use crate::transducer::{
    run_origin_graphs, Input, Kind, OriginGraph, PartnerSearch, RunCaps, Transducer,
};
use crate::traversal::traversal_report;

/// Cap on partner graphs listed when no direct search applies.
pub const PARTNER_LIMIT: usize = 1 << 16;

const PROFILE_CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    HoldsOnSweep,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Graph of `T1` without a suitable source.
    pub target: OriginGraph,
    /// Number of same-words graphs of `T2` (0: no classical match).
    pub num_partners: usize,
    /// The first few of them, in lexicographic order of origins.
    pub partners: Vec<OriginGraph>,
}

const SHOWN_PARTNERS: usize = 8;

pub(crate) fn counterexample(target: OriginGraph, partners: Vec<Vec<usize>>) -> Counterexample {
    Counterexample {
        num_partners: partners.len(),
        partners: partners
            .into_iter()
            .take(SHOWN_PARTNERS)
            .map(|o| graph(&target.input, &target.output, o))
            .collect(),
        target,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    pub max_input_len: usize,
    pub caps: RunCaps,
    /// Some enumeration hit a cap, so the sweep may have missed graphs.
    pub pruned: bool,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == Status::HoldsOnSweep
    }
}

/// One checked pair with the parameters that justify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub source: OriginGraph,
    pub target: OriginGraph,
    pub witness: ResyncWitness,
}

fn check_inputs(t1: &Transducer, t2: &Transducer, r: Option<&Resynchronizer>) -> Result<()> {
    t1.check_alphabets(t2)?;
    if let Some(r) = r {
        if r.base() != t1.input_alphabet() {
            return Err(Error::AlphabetMismatch(format!(
                "resynchronizer over {} vs input {}",
                r.base(),
                t1.input_alphabet()
            )));
        }
    }
    Ok(())
}

fn graph(u: &[Symbol], v: &[Symbol], orig: Vec<usize>) -> OriginGraph {
    OriginGraph {
        input: u.to_vec(),
        output: v.to_vec(),
        orig,
    }
}

/// Result of checking all graphs of `T1` on one input.
enum InputOutcome {
    Ok {
        pruned: bool,
        evidence: Vec<Evidence>,
    },
    Fail(Counterexample),
}

fn check_input(
    t1: &Transducer,
    t2: &Transducer,
    r: &Resynchronizer,
    u: &[Symbol],
    caps: RunCaps,
    keep: bool,
) -> Result<InputOutcome> {
    let targets = run_origin_graphs(t1, u, caps)?;
    let mut pruned = targets.pruned;
    let mut evidence = Vec::new();
    // Without parameters `γ` only depends on (x, y): tabulate it once.
    let allowed = (r.m() == 0).then(|| r.table(u, &[]));
    for target in targets.graphs {
        let search = PartnerSearch::new(t2, u, &target.output);
        if let Some(allowed) = &allowed {
            let found = search.find(|x, j| allowed[x][target.orig[j]]);
            match found {
                Some(orig) => {
                    if keep {
                        evidence.push(Evidence {
                            source: graph(u, &target.output, orig),
                            target,
                            witness: ResyncWitness::default(),
                        });
                    }
                }
                None => {
                    let (partners, _) = search.enumerate(PARTNER_LIMIT);
                    return Ok(InputOutcome::Fail(counterexample(target, partners)));
                }
            }
            continue;
        }
        let (partners, complete) = search.enumerate(PARTNER_LIMIT);
        pruned |= !complete;
        let mut hit = None;
        for orig in &partners {
            let source = graph(u, &target.output, orig.clone());
            if let Some(w) = pair_in_resync(r, &source, &target)? {
                hit = Some((source, w));
                break;
            }
        }
        match hit {
            Some((source, witness)) => {
                if keep {
                    evidence.push(Evidence {
                        source,
                        target,
                        witness,
                    });
                }
            }
            None => return Ok(InputOutcome::Fail(counterexample(target, partners))),
        }
    }
    Ok(InputOutcome::Ok { pruned, evidence })
}

fn sweep(
    t1: &Transducer,
    t2: &Transducer,
    r: &Resynchronizer,
    max_input_len: usize,
    caps: RunCaps,
    keep: bool,
) -> Result<(Verdict, Vec<Evidence>)> {
    check_inputs(t1, t2, Some(r))?;
    let mut pruned = false;
    let mut evidence = Vec::new();
    for len in 1..=max_input_len {
        let words: Vec<Vec<Symbol>> = t1.input_alphabet().words_of_len(len).collect();
        let outcomes: Vec<Result<InputOutcome>> = words
            .par_iter()
            .map(|u| check_input(t1, t2, r, u, caps, keep))
            .collect();
        for outcome in outcomes {
            match outcome? {
                InputOutcome::Ok {
                    pruned: p,
                    evidence: e,
                } => {
                    pruned |= p;
                    evidence.extend(e);
                }
                InputOutcome::Fail(cex) => {
                    let verdict = Verdict {
                        status: Status::Fails,
                        counterexample: Some(cex),
                        max_input_len,
                        caps,
                        pruned,
                    };
                    return Ok((verdict, evidence));
                }
            }
        }
    }
    let verdict = Verdict {
        status: Status::HoldsOnSweep,
        counterexample: None,
        max_input_len,
        caps,
        pruned,
    };
    Ok((verdict, evidence))
}

/// Checks `T1 ⊆ R(T2)` on every input of length at most `max_input_len`.
pub fn contains_upto(
    t1: &Transducer,
    t2: &Transducer,
    r: &Resynchronizer,
    max_input_len: usize,
    caps: RunCaps,
) -> Result<Verdict> {
    Ok(sweep(t1, t2, r, max_input_len, caps, false)?.0)
}

/// Like [`contains_upto`], also returning every pair used to justify a
/// holding verdict (the source chosen for each target graph).
pub fn contains_upto_with_evidence(
    t1: &Transducer,
    t2: &Transducer,
    r: &Resynchronizer,
    max_input_len: usize,
    caps: RunCaps,
) -> Result<(Verdict, Vec<Evidence>)> {
    sweep(t1, t2, r, max_input_len, caps, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub len: usize,
    /// `None` stands for ∞: some target graph has no same-words source.
    pub value: Option<usize>,
    /// First target graph (in sweep order) attaining the value, with its
    /// best source when there is one.
    pub target: Option<OriginGraph>,
    pub source: Option<OriginGraph>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraversalProfile {
    pub entries: Vec<ProfileEntry>,
    pub pruned: bool,
    /// Values strictly increase over at least 4 consecutive lengths. A
    /// heuristic hint of unboundedness, not a proof.
    pub growth_evidence: bool,
}

impl TraversalProfile {
    pub fn value(&self, len: usize) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.len == len)
            .and_then(|e| e.value)
    }

    pub fn is_infinite(&self, len: usize) -> bool {
        self.entries
            .iter()
            .any(|e| e.len == len && e.value.is_none())
    }

    /// Largest value over the sweep, `None` if some entry is ∞.
    pub fn max(&self) -> Option<usize> {
        self.entries
            .iter()
            .try_fold(0, |acc, e| e.value.map(|v| acc.max(v)))
    }

    /// Values on lengths `from..=to` are finite and strictly increasing.
    pub fn strictly_increasing(&self, from: usize, to: usize) -> bool {
        let vals: Vec<Option<usize>> = (from..=to).map(|n| self.value(n)).collect();
        vals.iter().all(Option::is_some) && vals.windows(2).all(|w| w[0] < w[1])
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            match e.value {
                Some(v) => {
                    let _ = writeln!(s, "profile({}) = {}", e.len, v);
                }
                None => {
                    let _ = writeln!(s, "profile({}) = inf", e.len);
                }
            }
        }
        if self.growth_evidence {
            s.push_str("unbounded-growth evidence\n");
        }
        if self.pruned {
            s.push_str("approximate: caps were hit\n");
        }
        s
    }
}

fn growth(entries: &[ProfileEntry]) -> bool {
    let mut run = 1;
    for w in entries.windows(2) {
        match (w[0].value, w[1].value) {
            (Some(a), Some(b)) if a < b => {
                run += 1;
                if run >= 4 {
                    return true;
                }
            }
            _ => run = 1,
        }
    }
    false
}

/// Threshold search over runs of a one-way transducer: is there a run
/// producing `target.output` whose graph has per-direction traversal at
/// most `bound` against `target`?
///
/// Origins of a one-way run never decrease, so the outputs of one source
/// form a block. When a block closes only its extreme target origins
/// matter: the right reaches still pending and, for the left direction, the
/// suffix maxima of the counts on positions already passed (later sources
/// always cover a suffix of them).
struct Threshold<'a> {
    t: &'a Transducer,
    u: &'a [Symbol],
    v: &'a [Symbol],
    tgt: &'a [usize],
    bound: usize,
    seen: HashSet<Key>,
    path: Vec<usize>,
}

type Key = (
    usize,
    usize,
    usize,
    Option<(usize, usize)>,
    Vec<usize>,
    Vec<u8>,
);

#[derive(Clone)]
struct Counts {
    /// Right reaches greater than the current source.
    pending: Vec<usize>,
    /// `g[s - 1]`: largest right-to-left count over positions `s..=x`.
    g: Vec<u8>,
}

impl Threshold<'_> {
    /// Closes the block of source `x`; false when the bound breaks.
    fn close(&self, x: usize, block: Option<(usize, usize)>, c: &mut Counts) -> bool {
        if let Some((lo, hi)) = block {
            if hi > x {
                c.pending.push(hi);
                c.pending.sort_unstable();
                if c.pending.len() > self.bound {
                    return false;
                }
            }
            if lo < x {
                let top = c.g[lo] + 1;
                if top as usize > self.bound {
                    return false;
                }
                for s in lo + 1..=x {
                    c.g[s - 1] += 1;
                }
                for s in 1..=lo {
                    c.g[s - 1] = c.g[s - 1].max(top);
                }
            }
        }
        true
    }

    fn extend(
        &self,
        block: Option<(usize, usize)>,
        from: usize,
        len: usize,
    ) -> Option<(usize, usize)> {
        self.tgt[from..from + len]
            .iter()
            .fold(block, |b, &y| match b {
                None => Some((y, y)),
                Some((lo, hi)) => Some((lo.min(y), hi.max(y))),
            })
    }

    /// Whether the open block of `x` can still close within the bound.
    fn viable(&self, x: usize, block: Option<(usize, usize)>, c: &Counts) -> bool {
        match block {
            None => true,
            Some((lo, hi)) => {
                (hi <= x || c.pending.len() < self.bound)
                    && (lo >= x || (c.g[lo] as usize) < self.bound)
            }
        }
    }

    fn emit(
        &mut self,
        q: usize,
        i: usize,
        j: usize,
        block: Option<(usize, usize)>,
        c: &Counts,
    ) -> bool {
        let n = self.u.len();
        let x = (i + 1).min(n);
        let (t, v) = (self.t, self.v);
        for tr in t.matching(q, Input::Eps, &v[j..]) {
            let len = tr.output.len();
            let b = self.extend(block, j, len);
            if !self.viable(x, b, c) {
                continue;
            }
            self.path.extend(std::iter::repeat_n(x, len));
            if self.dfs(tr.to, i, j + len, b, c) {
                return true;
            }
            self.path.truncate(j);
        }
        false
    }

    fn advance(
        &mut self,
        q: usize,
        i: usize,
        j: usize,
        block: Option<(usize, usize)>,
        c: &Counts,
    ) -> bool {
        let n = self.u.len();
        if i == n {
            return false;
        }
        let (t, u, v) = (self.t, self.u, self.v);
        for tr in t.matching(q, Input::Letter(u[i]), &v[j..]) {
            let len = tr.output.len();
            let b = self.extend(block, j, len);
            if !self.viable(i + 1, b, c) {
                continue;
            }
            self.path.extend(std::iter::repeat_n(i + 1, len));
            let ok = if i + 1 < n {
                let mut next = c.clone();
                self.close(i + 1, b, &mut next) && {
                    next.pending.retain(|&r| r > i + 2);
                    next.g.push(0);
                    self.dfs(tr.to, i + 1, j + len, None, &next)
                }
            } else {
                self.dfs(tr.to, n, j + len, b, c)
            };
            if ok {
                return true;
            }
            self.path.truncate(j);
        }
        false
    }

    fn dfs(
        &mut self,
        q: usize,
        i: usize,
        j: usize,
        block: Option<(usize, usize)>,
        c: &Counts,
    ) -> bool {
        let n = self.u.len();
        if i == n && j == self.v.len() && self.t.is_final(q) {
            let mut last = c.clone();
            if self.close(n, block, &mut last) {
                return true;
            }
        }
        if !self
            .seen
            .insert((q, i, j, block, c.pending.clone(), c.g.clone()))
        {
            return false;
        }
        // Try first the moves that keep the next output on its target origin.
        // The branches differ in order only.
        let x = (i + 1).min(n);
        #[allow(clippy::if_same_then_else)]
        if j < self.v.len() && self.tgt[j] <= x {
            self.emit(q, i, j, block, c) || self.advance(q, i, j, block, c)
        } else {
            self.advance(q, i, j, block, c) || self.emit(q, i, j, block, c)
        }
    }
}

/// Origins of a run of the one-way `t` whose graph has traversal at most
/// `bound` against `target`, if any.
fn one_way_within(t: &Transducer, target: &OriginGraph, bound: usize) -> Option<Vec<usize>> {
    let mut s = Threshold {
        t,
        u: &target.input,
        v: &target.output,
        tgt: &target.orig,
        bound,
        seen: HashSet::default(),
        path: Vec::new(),
    };
    let start = Counts {
        pending: Vec::new(),
        g: vec![0],
    };
    for &q in t.initial() {
        if s.dfs(q, 0, 0, None, &start) {
            return Some(s.path);
        }
    }
    None
}

/// Least traversal of a same-words source of `t2` against `target`, at
/// least `floor`, with that source; `None` when there is no source. Only
/// answers `floor` exactly when the true minimum is below it. The flag
/// reports a truncated enumeration.
pub fn min_traversal(
    t2: &Transducer,
    target: &OriginGraph,
    floor: usize,
) -> Result<(Option<(usize, OriginGraph)>, bool)> {
    let (u, v) = (&target.input, &target.output);
    let search = PartnerSearch::new(t2, u, v);
    if t2.kind() == Kind::OneWay {
        if let Some(orig) = one_way_within(t2, target, floor) {
            return Ok((Some((floor, graph(u, v, orig))), false));
        }
        if !search.exists() {
            return Ok((None, false));
        }
        for bound in floor + 1..=u.len() {
            if let Some(orig) = one_way_within(t2, target, bound) {
                return Ok((Some((bound, graph(u, v, orig))), false));
            }
        }
        unreachable!("traversal never exceeds the input length");
    }
    let (partners, complete) = search.enumerate(PARTNER_LIMIT);
    let mut best: Option<(usize, OriginGraph)> = None;
    for orig in partners {
        let source = graph(u, v, orig);
        let k = traversal_report(&source, target)?.max_count.max(floor);
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, source));
        }
    }
    Ok((best, !complete))
}

/// Exact min-max profile: for each input length, the largest over target
/// graphs of `T1` of the least traversal of a same-words source of `T2`.
pub fn traversal_profile(
    t1: &Transducer,
    t2: &Transducer,
    max_input_len: usize,
    caps: RunCaps,
) -> Result<TraversalProfile> {
    check_inputs(t1, t2, None)?;
    let mut entries = Vec::new();
    let mut pruned = false;
    for len in 1..=max_input_len {
        // Inputs are handled in fixed chunks merged in sweep order; each chunk
        // searches above the best value of the previous ones, so results
        // above that floor are exact and the first target reporting the
        // final value attains it first, whatever the thread count.
        let mut best = 0;
        let mut infinite = false;
        let mut target = None;
        let mut source = None;
        let mut words = t1.input_alphabet().words_of_len(len).peekable();
        while words.peek().is_some() && !infinite {
            let chunk: Vec<Vec<Symbol>> = words.by_ref().take(PROFILE_CHUNK).collect();
            let floor = best;
            let results = chunk
                .par_iter()
                .map(|u| {
                    let set = run_origin_graphs(t1, u, caps)?;
                    let mins = set
                        .graphs
                        .iter()
                        .map(|t| min_traversal(t2, t, floor))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((set, mins))
                })
                .collect::<Result<Vec<_>>>()?;
            'merge: for (set, mins) in results {
                pruned |= set.pruned;
                for (t, (res, trunc)) in set.graphs.into_iter().zip(mins) {
                    pruned |= trunc;
                    match res {
                        None => {
                            infinite = true;
                            target = Some(t);
                            source = None;
                            break 'merge;
                        }
                        Some((k, s)) if k > best || target.is_none() => {
                            best = k;
                            target = Some(t);
                            source = Some(s);
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let value = best;
        entries.push(ProfileEntry {
            len,
            value: (!infinite).then_some(value),
            target,
            source,
        });
    }
    let growth_evidence = growth(&entries);
    Ok(TraversalProfile {
        entries,
        pruned,
        growth_evidence,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found {
        k: usize,
        verdict: Verdict,
        evidence: Vec<Evidence>,
    },
    NotFound {
        profile: TraversalProfile,
    },
}

/// Least `k ≤ k_max` with `T1 ⊆ R_k(T2)` on the sweep.
///
/// The profile is computed first: a target whose every source has
/// traversal above `k` rules out `R_k`, so only `k` from the profile's
/// maximum upward is tried with [`contains_upto`]. A found `k` is evidence
/// on the sweep, never a proof.
pub fn resync_search(
    t1: &Transducer,
    t2: &Transducer,
    k_max: usize,
    max_input_len: usize,
    caps: RunCaps,
) -> Result<SearchOutcome> {
    let profile = traversal_profile(t1, t2, max_input_len, caps)?;
    let Some(low) = profile.max() else {
        return Ok(SearchOutcome::NotFound { profile });
    };
    for k in low..=k_max {
        let r = make_rk(t1.input_alphabet(), k);
        let (verdict, evidence) = contains_upto_with_evidence(t1, t2, &r, max_input_len, caps)?;
        if verdict.holds() {
            return Ok(SearchOutcome::Found {
                k,
                verdict,
                evidence,
            });
        }
    }
    Ok(SearchOutcome::NotFound { profile })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::resync::{make_1st_to_last, make_first, make_identity, make_pm1};

    fn caps() -> RunCaps {
        RunCaps::new(12, 60).unwrap()
    }

    #[test]
    fn first_and_last() {
        let (first, last) = (t_first(), t_last());
        let r = make_1st_to_last(first.input_alphabet());
        assert!(
            contains_upto(&last, &first, &r, 4, RunCaps::new(4, 20).unwrap())
                .unwrap()
                .holds()
        );
    }

    #[test]
    fn slow_into_fast() {
        let (slow, fast) = (t_slow(), t_fast());
        let r = make_first(slow.input_alphabet());
        assert!(contains_upto(&slow, &fast, &r, 4, caps()).unwrap().holds());
    }

    #[test]
    fn id_not_in_shifted_rev() {
        let (id, rev) = (t_id(), t_rev());
        // Exact shifts cannot keep the single origin of a^1.
        let v = contains_upto(&id, &rev, &make_pm1(id.input_alphabet()), 4, caps()).unwrap();
        assert_eq!(v.counterexample.unwrap().target.input.len(), 1);
        // Moving by at most one fails first on a^3.
        let near = Resynchronizer::from_text(
            id.input_alphabet(),
            &[] as &[&str],
            "!(x + 1 < y) & !(y + 1 < x)",
        )
        .unwrap();
        let v = contains_upto(&id, &rev, &near, 4, caps()).unwrap();
        assert_eq!(v.status, Status::Fails);
        let cex = v.counterexample.unwrap();
        assert_eq!(cex.target.input.len(), 3);
        assert_eq!(cex.num_partners, 1);
    }

    #[test]
    fn reflexive() {
        for (_, t) in transducers() {
            let r = make_identity(t.input_alphabet());
            assert!(contains_upto(&t, &t, &r, 3, RunCaps::new(6, 30).unwrap())
                .unwrap()
                .holds());
        }
    }

    #[test]
    fn id_rev_profile() {
        let p = traversal_profile(&t_id(), &t_rev(), 10, RunCaps::new(10, 40).unwrap()).unwrap();
        for n in 1..=10 {
            assert_eq!(p.value(n), Some(n / 2), "n = {n}");
        }
        assert!(!p.growth_evidence);
    }

    #[test]
    fn fast_slow_profile() {
        let p = traversal_profile(&t_fast(), &t_slow(), 6, caps()).unwrap();
        for n in 1..=6 {
            assert_eq!(p.value(n), Some(n - 1), "n = {n}");
        }
    }

    #[test]
    fn one_way_threshold_matches_enumeration() {
        let (one, two) = (t_one_two(), t_two_one());
        for n in 1..=6 {
            for target in run_origin_graphs(&one, &vec![0; n], caps()).unwrap().graphs {
                let (partners, _) =
                    PartnerSearch::new(&two, &target.input, &target.output).enumerate(100);
                let brute = partners
                    .into_iter()
                    .map(|o| {
                        traversal_report(&graph(&target.input, &target.output, o), &target)
                            .unwrap()
                            .max_count
                    })
                    .min();
                let fast = min_traversal(&two, &target, 0).unwrap().0.map(|r| r.0);
                assert_eq!(brute, fast);
            }
        }
    }

    #[test]
    fn search_finds_zero_for_self() {
        let t = t_one_two();
        match resync_search(&t, &t, 2, 4, caps()).unwrap() {
            SearchOutcome::Found { k, .. } => assert_eq!(k, 0),
            other => panic!("{other:?}"),
        }
    }
}
