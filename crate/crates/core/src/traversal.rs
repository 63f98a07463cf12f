//! Traversals between two origin graphs over the same words.
//!
//! With `σ` the old and `σ'` the new graph, a source `x` traverses `z` from
//! left to right when some output position `t` has `orig(t) = x ≤ z <
//! orig'(t)`, and from right to left when `orig'(t) < z ≤ x = orig(t)`.
//! Traversals are counted per direction: a pair has k-traversal when no
//! position is traversed by more than `k` distinct sources in one direction,
//! which is exactly what the labels `Right_i`/`Left_i` of `R_k` can express.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::transducer::OriginGraph;

fn check_pair(old: &OriginGraph, new: &OriginGraph) -> Result<()> {
    old.validate()?;
    new.validate()?;
    if !old.same_words(new) {
        return Err(Error::WordMismatch);
    }
    Ok(())
}

/// Does `x` traverse `z` (1-based input positions)?
pub fn traverses(old: &OriginGraph, new: &OriginGraph, x: usize, z: usize) -> Result<bool> {
    check_pair(old, new)?;
    let n = old.input.len();
    for p in [x, z] {
        if p == 0 || p > n {
            return Err(Error::PositionOutOfRange(p));
        }
    }
    Ok(old
        .orig
        .iter()
        .zip(&new.orig)
        .any(|(&o, &o2)| o == x && ((x <= z && o2 > z) || (x >= z && o2 < z))))
}

/// For every source, the farthest new origin to its right (`reach_right`)
/// and to its left (`reach_left`), 0 when there is none.
struct Reach {
    right: Vec<usize>,
    left: Vec<usize>,
}

impl Reach {
    fn new(old: &OriginGraph, new: &OriginGraph) -> Self {
        let n = old.input.len();
        let mut right = vec![0; n + 1];
        let mut left = vec![0; n + 1];
        for (&x, &y) in old.orig.iter().zip(&new.orig) {
            if y > x {
                right[x] = right[x].max(y);
            } else if y < x && (left[x] == 0 || y < left[x]) {
                left[x] = y;
            }
        }
        Reach { right, left }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraversalReport {
    /// `left_to_right[z - 1]`: sources traversing `z` from left to right.
    pub left_to_right: Vec<Vec<usize>>,
    pub right_to_left: Vec<Vec<usize>>,
    /// Largest per-direction count.
    pub max_count: usize,
    /// Smallest position attaining `max_count` (None when it is 0).
    pub argmax: Option<usize>,
}

impl TraversalReport {
    pub fn has_k_traversal(&self, k: usize) -> bool {
        self.max_count <= k
    }

    /// Larger of the two directional counts at `z`.
    pub fn count(&self, z: usize) -> usize {
        self.left_to_right[z - 1]
            .len()
            .max(self.right_to_left[z - 1].len())
    }

    /// One line per position: `z: count_lr count_rl [sources...]`.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        for (i, (lr, rl)) in self
            .left_to_right
            .iter()
            .zip(&self.right_to_left)
            .enumerate()
        {
            let mut all: Vec<usize> = lr.iter().chain(rl).copied().collect();
            all.sort_unstable();
            all.dedup();
            let _ = writeln!(s, "{}: {} {} {:?}", i + 1, lr.len(), rl.len(), all);
        }
        let _ = writeln!(s, "max: {}", self.max_count);
        s
    }
}

pub fn traversal_report(old: &OriginGraph, new: &OriginGraph) -> Result<TraversalReport> {
    check_pair(old, new)?;
    let n = old.input.len();
    let reach = Reach::new(old, new);
    let mut lr = vec![Vec::new(); n];
    let mut rl = vec![Vec::new(); n];
    for x in 1..=n {
        for z in x..reach.right[x] {
            lr[z - 1].push(x);
        }
        if reach.left[x] > 0 {
            for z in reach.left[x] + 1..=x {
                rl[z - 1].push(x);
            }
        }
    }
    let mut max_count = 0;
    let mut argmax = None;
    for z in 1..=n {
        let c = lr[z - 1].len().max(rl[z - 1].len());
        if c > max_count {
            max_count = c;
            argmax = Some(z);
        }
    }
    Ok(TraversalReport {
        left_to_right: lr,
        right_to_left: rl,
        max_count,
        argmax,
    })
}

/// Parameter sets `Right_i` and `Left_i`, `i < k`, of `R_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LabelAssignment {
    pub right: Vec<BTreeSet<usize>>,
    pub left: Vec<BTreeSet<usize>>,
}

impl LabelAssignment {
    fn empty(k: usize) -> Self {
        LabelAssignment {
            right: vec![BTreeSet::new(); k],
            left: vec![BTreeSet::new(); k],
        }
    }

    /// Every position carries at most one right and one left label.
    pub fn is_exclusive(&self) -> bool {
        let unique = |sets: &[BTreeSet<usize>]| {
            let total: usize = sets.iter().map(BTreeSet::len).sum();
            let mut all: BTreeSet<usize> = BTreeSet::new();
            sets.iter().for_each(|s| all.extend(s));
            all.len() == total
        };
        unique(&self.right) && unique(&self.left)
    }

    /// Bit columns in parameter order `Right_0..Right_{k-1}, Left_0..Left_{k-1}`.
    pub fn to_params(&self, n: usize) -> Vec<Vec<bool>> {
        self.right
            .iter()
            .chain(&self.left)
            .map(|set| (1..=n).map(|p| set.contains(&p)).collect())
            .collect()
    }
}

/// Greedy labelling: sources redirected to the right are scanned left to
/// right and get the least index whose members do not traverse them; the
/// symmetric pass handles the left. Each index remembers the farthest
/// target of its members, which is all the test needs.
pub fn greedy_label(old: &OriginGraph, new: &OriginGraph, k: usize) -> Result<LabelAssignment> {
    check_pair(old, new)?;
    let n = old.input.len();
    let reach = Reach::new(old, new);
    let mut out = LabelAssignment::empty(k);
    let mut far = vec![0usize; k];
    for x in 1..=n {
        if reach.right[x] == 0 {
            continue;
        }
        let i = (0..k)
            .find(|&i| far[i] <= x)
            .ok_or(Error::TraversalExceeded {
                k,
                position: x,
                direction: "right",
            })?;
        out.right[i].insert(x);
        far[i] = reach.right[x];
    }
    let mut far = vec![usize::MAX; k];
    for x in (1..=n).rev() {
        if reach.left[x] == 0 {
            continue;
        }
        let i = (0..k)
            .find(|&i| far[i] >= x)
            .ok_or(Error::TraversalExceeded {
                k,
                position: x,
                direction: "left",
            })?;
        out.left[i].insert(x);
        far[i] = reach.left[x];
    }
    Ok(out)
}

/// Same labelling, recomputing the blocked indexes from the members at
/// every step. Kept as a cross-check of [`greedy_label`].
pub fn greedy_label_recompute(
    old: &OriginGraph,
    new: &OriginGraph,
    k: usize,
) -> Result<LabelAssignment> {
    check_pair(old, new)?;
    let n = old.input.len();
    let mut out = LabelAssignment::empty(k);
    let redirected = |x: usize, right: bool| {
        old.orig
            .iter()
            .zip(&new.orig)
            .any(|(&o, &o2)| o == x && if right { o2 > x } else { o2 < x })
    };
    for x in 1..=n {
        if !redirected(x, true) {
            continue;
        }
        let mut free = None;
        for i in 0..k {
            let mut blocked = false;
            for &x2 in &out.right[i] {
                blocked |= traverses(old, new, x2, x)? && x2 < x;
            }
            if !blocked {
                free = Some(i);
                break;
            }
        }
        let i = free.ok_or(Error::TraversalExceeded {
            k,
            position: x,
            direction: "right",
        })?;
        out.right[i].insert(x);
    }
    for x in (1..=n).rev() {
        if !redirected(x, false) {
            continue;
        }
        let mut free = None;
        for i in 0..k {
            let mut blocked = false;
            for &x2 in &out.left[i] {
                blocked |= traverses(old, new, x2, x)? && x2 > x;
            }
            if !blocked {
                free = Some(i);
                break;
            }
        }
        let i = free.ok_or(Error::TraversalExceeded {
            k,
            position: x,
            direction: "left",
        })?;
        out.left[i].insert(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, orig: &[usize]) -> OriginGraph {
        OriginGraph::new(vec![0; n], vec![0; orig.len()], orig.to_vec()).unwrap()
    }

    #[test]
    fn definition_examples() {
        let old = g(5, &[2]);
        let new = g(5, &[4]);
        assert!(traverses(&old, &new, 2, 3).unwrap());
        assert!(traverses(&old, &new, 2, 2).unwrap());
        assert!(!traverses(&old, &new, 2, 4).unwrap());
        assert!(!traverses(&old, &new, 3, 3).unwrap());
        assert!(traverses(&old, &new, 9, 3).is_err());
    }

    #[test]
    fn id_against_rev() {
        let id: Vec<usize> = (1..=10).collect();
        let rev: Vec<usize> = (1..=10).rev().collect();
        let r = traversal_report(&g(10, &id), &g(10, &rev)).unwrap();
        assert_eq!(r.max_count, 5);
        assert!(greedy_label(&g(10, &id), &g(10, &rev), 4).is_err());
        let l = greedy_label(&g(10, &id), &g(10, &rev), 5).unwrap();
        assert!(l.is_exclusive());
        assert_eq!(
            l,
            greedy_label_recompute(&g(10, &id), &g(10, &rev), 5).unwrap()
        );
    }

    #[test]
    fn identical_graphs() {
        let a = g(4, &[1, 3, 3, 2]);
        let r = traversal_report(&a, &a).unwrap();
        assert_eq!((r.max_count, r.argmax), (0, None));
        let l = greedy_label(&a, &a, 0).unwrap();
        assert!(l.right.is_empty() && l.left.is_empty());
    }

    #[test]
    fn mismatched_words() {
        let a = g(4, &[1]);
        let b = g(3, &[1]);
        assert!(matches!(traversal_report(&a, &b), Err(Error::WordMismatch)));
    }
}
