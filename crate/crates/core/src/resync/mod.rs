//! Regular resynchronizers.
//!
//! A resynchronizer with `m` parameters is an automaton `γ` over the input
//! alphabet extended with tracks `I_1..I_m, x, y`. It relates two origin
//! graphs on the same words when some choice of parameters makes `γ` accept
//! `(u, Ī, orig(t), orig'(t))` for every output position `t`: the old origin
//! `x` may be redirected to the new origin `y`.

mod bounded;
mod extended;
mod format;
mod solve;

pub use bounded::{bounded_by, is_bounded, source_guessing_nfa, BoundCheck, Boundedness};
pub use extended::{
    extended_pair_in_resync, simplify_extended, ExtendedResynchronizer, OutputType,
};
pub use format::{parse_extended, parse_resynchronizer, write_resynchronizer};

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol};
use crate::automata::{Dfa, StructuredAlphabet};
use crate::error::{Error, Result};
use crate::mso::{mso_compile_dfa, parse_formula, Formula, Var};
use crate::transducer::OriginGraph;

use solve::{solve, Constraint};

/// Track names of the source and target positions.
pub const X: &str = "x";
pub const Y: &str = "y";

#[derive(Clone, Debug)]
pub struct Resynchronizer {
    params: Vec<String>,
    /// Over `Σ × B^(m+2)`, tracks `params ++ [x, y]`.
    gamma: Dfa,
    formula: Option<Formula>,
}

/// Parameter values: `params[j][p]` tells whether position `p + 1` is in
/// the j-th input parameter; `out_params` likewise over output positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResyncWitness {
    pub params: Vec<Vec<bool>>,
    pub out_params: Vec<Vec<bool>>,
}

impl ResyncWitness {
    pub(crate) fn from_columns(columns: &[u32], m: usize) -> Vec<Vec<bool>> {
        (0..m)
            .map(|j| columns.iter().map(|c| c >> j & 1 == 1).collect())
            .collect()
    }

    pub(crate) fn columns(params: &[Vec<bool>], n: usize) -> Vec<u32> {
        (0..n)
            .map(|p| {
                params
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, col)| acc | (col[p] as u32) << j)
            })
            .collect()
    }
}

fn signature(params: &[String]) -> Vec<Var> {
    params
        .iter()
        .map(Var::second)
        .chain([Var::first(X), Var::first(Y)])
        .collect()
}

impl Resynchronizer {
    /// Compiles `γ(Ī, x, y)` over `base`.
    pub fn from_formula<S: AsRef<str>>(
        base: &Alphabet,
        params: &[S],
        formula: Formula,
    ) -> Result<Self> {
        let params: Vec<String> = params.iter().map(|p| p.as_ref().to_string()).collect();
        let gamma = mso_compile_dfa(&formula, base, &signature(&params))?.minimize();
        Ok(Resynchronizer {
            params,
            gamma,
            formula: Some(formula),
        })
    }

    /// Parses and compiles `γ`.
    pub fn from_text<S: AsRef<str>>(base: &Alphabet, params: &[S], gamma: &str) -> Result<Self> {
        Resynchronizer::from_formula(base, params, parse_formula(gamma)?)
    }

    /// Takes `γ` as an automaton whose last two tracks are `x` and `y`.
    pub fn from_dfa(gamma: Dfa) -> Result<Self> {
        let tracks = gamma.alphabet().tracks();
        let m = tracks
            .len()
            .checked_sub(2)
            .ok_or_else(|| Error::AlphabetMismatch("γ needs the tracks x and y".into()))?;
        if tracks[m] != X || tracks[m + 1] != Y {
            return Err(Error::AlphabetMismatch(format!(
                "the last two tracks of γ must be `{X}` and `{Y}`, got {:?}",
                &tracks[m..]
            )));
        }
        Ok(Resynchronizer {
            params: tracks[..m].to_vec(),
            gamma: gamma.minimize(),
            formula: None,
        })
    }

    pub fn m(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn base(&self) -> &Alphabet {
        self.gamma.alphabet().base()
    }

    pub fn gamma(&self) -> &Dfa {
        &self.gamma
    }

    pub fn formula(&self) -> Option<&Formula> {
        self.formula.as_ref()
    }

    /// `(u, Ī, x, y) ⊨ γ`.
    pub fn holds(&self, u: &[Symbol], params: &[Vec<bool>], x: usize, y: usize) -> bool {
        let sa = self.gamma.alphabet();
        let cols = ResyncWitness::columns(params, u.len());
        let m = self.m();
        let word: Vec<_> = (0..u.len())
            .map(|p| {
                let extra = ((p + 1 == x) as u32) << m | ((p + 1 == y) as u32) << (m + 1);
                sa.letter(u[p], cols[p] | extra)
            })
            .collect();
        self.gamma.accepts(&word)
    }

    /// `table[x][y]` tells whether `(u, Ī, x, y) ⊨ γ`; row and column 0
    /// are unused.
    pub fn table(&self, u: &[Symbol], params: &[Vec<bool>]) -> Vec<Vec<bool>> {
        let (n, m) = (u.len(), self.m());
        let sa = self.gamma.alphabet();
        let cols = ResyncWitness::columns(params, n);
        let letter = |p: usize, x: usize, y: usize| {
            let extra = ((p + 1 == x) as u32) << m | ((p + 1 == y) as u32) << (m + 1);
            sa.letter(u[p], cols[p] | extra)
        };
        let mut out = vec![vec![false; n + 1]; n + 1];
        for x in 1..=n {
            let mut pre = vec![self.gamma.initial()];
            for p in 0..n {
                pre.push(self.gamma.next(pre[p], letter(p, x, 0)));
            }
            for y in 1..=n {
                let mut s = pre[y - 1];
                for p in y - 1..n {
                    s = self.gamma.next(s, letter(p, x, y));
                }
                out[x][y] = self.gamma.is_final(s);
            }
        }
        out
    }

    /// Language equality of the two `γ`s (same base and tracks).
    pub fn equivalent(&self, other: &Resynchronizer) -> Result<bool> {
        self.gamma.equivalent(&other.gamma)
    }

    fn check_graphs(&self, old: &OriginGraph, new: &OriginGraph) -> Result<()> {
        old.validate()?;
        new.validate()?;
        if !old.same_words(new) {
            return Err(Error::WordMismatch);
        }
        if let Some(&a) = old.input.iter().find(|&&a| a >= self.base().len()) {
            return Err(Error::UnknownSymbol(format!("input letter #{a}")));
        }
        Ok(())
    }
}

/// Is `(old, new)` in the relation of `r`? On success returns the
/// lexicographically least parameter valuation (columns compared position
/// by position).
pub fn pair_in_resync(
    r: &Resynchronizer,
    old: &OriginGraph,
    new: &OriginGraph,
) -> Result<Option<ResyncWitness>> {
    r.check_graphs(old, new)?;
    let mut pairs: Vec<(usize, usize)> = old
        .orig
        .iter()
        .copied()
        .zip(new.orig.iter().copied())
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let cons: Vec<Constraint> = pairs
        .iter()
        .map(|&(x, y)| Constraint {
            dfa: &r.gamma,
            x: Some(x),
            y: Some(y),
        })
        .collect();
    Ok(solve(&old.input, r.m(), &cons).map(|cols| ResyncWitness {
        params: ResyncWitness::from_columns(&cols, r.m()),
        out_params: Vec::new(),
    }))
}

/// Re-checks every output position against `γ` with the given parameters.
pub fn verify_witness(
    r: &Resynchronizer,
    old: &OriginGraph,
    new: &OriginGraph,
    w: &ResyncWitness,
) -> Result<bool> {
    r.check_graphs(old, new)?;
    if w.params.len() != r.m() || w.params.iter().any(|c| c.len() != old.input.len()) {
        return Ok(false);
    }
    Ok(old
        .orig
        .iter()
        .zip(&new.orig)
        .all(|(&x, &y)| r.holds(&old.input, &w.params, x, y)))
}

fn build(base: &Alphabet, params: &[String], gamma: &str) -> Resynchronizer {
    Resynchronizer::from_text(base, params, gamma).expect("builder formulas are well-formed")
}

/// `γ = (x = y)`.
pub fn make_identity(base: &Alphabet) -> Resynchronizer {
    build(base, &[], "x = y")
}

/// `γ = ⊤`.
pub fn make_universal(base: &Alphabet) -> Resynchronizer {
    build(base, &[], "true")
}

/// Every origin moves by exactly one position.
pub fn make_pm1(base: &Alphabet) -> Resynchronizer {
    build(base, &[], "x = y + 1 | y = x + 1")
}

/// Origins move left by at most `k`: `y ≤ x ≤ y + k`. The upper bound is
/// written `!(y + k < x)` so that it also holds when `y + k` is past the end.
pub fn make_shift(base: &Alphabet, k: usize) -> Resynchronizer {
    build(base, &[], &format!("y <= x & !(y + {k} < x)"))
}

/// One parameter `I`; a single position (the one in `I`) may move anywhere.
pub fn make_param_example(base: &Alphabet) -> Resynchronizer {
    let f = "(x in I & forall z. (z in I -> z = x)) | x = y";
    build(base, &["I".to_string()], f)
}

/// Origins on the first position may move anywhere: `γ = (x = first)`.
pub fn make_first(base: &Alphabet) -> Resynchronizer {
    build(base, &[], "x = first")
}

/// `γ = (x = first) ∧ (y = last)`.
pub fn make_1st_to_last(base: &Alphabet) -> Resynchronizer {
    build(base, &[], "x = first & y = last")
}

/// Over a base containing `a`: the first letter of an `a`-block moves to the
/// last letter of the block; other letters that are not `a` stay.
pub fn make_block(base: &Alphabet) -> Result<Resynchronizer> {
    base.symbol("a")?;
    let others: Vec<String> = base
        .names()
        .iter()
        .filter(|n| n.as_str() != "a")
        .map(|n| format!("{n}(x)"))
        .collect();
    let stay = if others.is_empty() {
        "false".to_string()
    } else {
        format!("(({}) & x = y)", others.join(" | "))
    };
    let f = format!(
        "(x <= y & (forall z. (x <= z & z <= y) -> a(z)) & (forall w. w + 1 = x -> !a(w)) & !a(y + 1)) | {stay}"
    );
    Resynchronizer::from_text(base, &[] as &[String], &f)
}

/// Names of the `R_k` parameters: `Right_0..Right_{k-1}, Left_0..Left_{k-1}`.
pub fn rk_params(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| format!("Right_{i}"))
        .chain((0..k).map(|i| format!("Left_{i}")))
        .collect()
}

/// The formula of `R_k`. A source labelled `Right_i` may move right to `y`
/// when no position strictly between them carries `Right_i`; symmetrically
/// for `Left_i`.
pub fn rk_formula(k: usize) -> Formula {
    let mut disj = vec![parse_formula("x = y").expect("static")];
    for i in 0..k {
        disj.push(
            parse_formula(&format!(
                "x in Right_{i} & x < y & forall z. (x < z & z < y) -> !(z in Right_{i})"
            ))
            .expect("static"),
        );
    }
    for i in 0..k {
        disj.push(
            parse_formula(&format!(
                "x in Left_{i} & y < x & forall z. (y < z & z < x) -> !(z in Left_{i})"
            ))
            .expect("static"),
        );
    }
    Formula::any(disj)
}

pub fn make_rk(base: &Alphabet, k: usize) -> Resynchronizer {
    Resynchronizer::from_formula(base, &rk_params(k), rk_formula(k)).expect("R_k compiles")
}

/// Composition: `γ(Ī, x3, x1) = ∃x2. γ1(Ī1, x2, x1) ∧ γ2(Ī2, x3, x2)`.
/// If `(σ2, σ1) ∈ r1` and `(σ3, σ2) ∈ r2` then `(σ3, σ1)` is in the result.
/// Parameters of `r1` come first; clashing names get a `1.`/`2.` prefix.
pub fn compose(r1: &Resynchronizer, r2: &Resynchronizer) -> Result<Resynchronizer> {
    if r1.base() != r2.base() {
        return Err(Error::AlphabetMismatch(format!(
            "{} vs {}",
            r1.base(),
            r2.base()
        )));
    }
    let clash = r1.params.iter().any(|p| r2.params.contains(p));
    let name = |tag: &str, p: &String| {
        if clash {
            format!("{tag}.{p}")
        } else {
            p.clone()
        }
    };
    let p1: Vec<String> = r1.params.iter().map(|p| name("1", p)).collect();
    let p2: Vec<String> = r2.params.iter().map(|p| name("2", p)).collect();
    const MID: &str = "#x2";
    let base = r1.base().clone();
    let relabel = |d: &Dfa, tracks: Vec<String>| -> Result<Dfa> {
        Ok(d.clone()
            .with_alphabet(StructuredAlphabet::new(base.clone(), tracks)?))
    };
    let g1 = relabel(
        &r1.gamma,
        p1.iter().cloned().chain([MID.into(), Y.into()]).collect(),
    )?;
    let g2 = relabel(
        &r2.gamma,
        p2.iter().cloned().chain([X.into(), MID.into()]).collect(),
    )?;
    let all: Vec<String> = p1
        .iter()
        .chain(&p2)
        .cloned()
        .chain([X.into(), Y.into(), MID.into()])
        .collect();
    let target = StructuredAlphabet::new(base.clone(), all)?;
    let both = g1
        .cylindrify(&target)?
        .intersect(&g2.cylindrify(&target)?)?;
    let mid = target.track_index(MID)?;
    Resynchronizer::from_dfa(both.project_index(mid))
}
