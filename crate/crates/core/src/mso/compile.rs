use std::collections::HashSet;

use super::ast::{Cmp, Formula, Sort, Term, Var};
use crate::alphabet::Alphabet;
use crate::automata::{Dfa, Letter, StructuredAlphabet, StructuredNfa};
use crate::error::{Error, Result};

/// Compiles `formula` to an automaton over `base × B^signature`.
///
/// First-order tracks are only accepted when they carry exactly one 1-bit.
pub fn mso_compile(formula: &Formula, base: &Alphabet, signature: &[Var]) -> Result<StructuredNfa> {
    Ok(mso_compile_dfa(formula, base, signature)?.to_nfa())
}

/// Same as [`mso_compile`], returning the minimal complete DFA.
pub fn mso_compile_dfa(formula: &Formula, base: &Alphabet, signature: &[Var]) -> Result<Dfa> {
    let mut names = HashSet::new();
    for v in signature {
        if !names.insert(v.name.as_str()) {
            return Err(Error::AlphabetMismatch(format!(
                "duplicate variable `{}` in signature",
                v.name
            )));
        }
    }
    for (name, sort) in formula.free_vars()? {
        match signature.iter().find(|v| v.name == name) {
            None => return Err(Error::UnboundVariable(name)),
            Some(v) if v.sort != sort => {
                return Err(Error::SortMismatch {
                    name,
                    used: describe(sort),
                    declared: describe(v.sort),
                })
            }
            Some(_) => {}
        }
    }
    let mut cx = Compiler {
        base: base.clone(),
        scope: signature.iter().map(|v| (v.name.clone(), v.sort)).collect(),
    };
    let mut dfa = cx.compile(formula)?;
    for (t, v) in signature.iter().enumerate() {
        if v.sort == Sort::First {
            dfa = dfa
                .intersect(&singleton(dfa.alphabet().clone(), t))?
                .minimize();
        }
    }
    let alphabet = StructuredAlphabet::new(base.clone(), signature.iter().map(|v| v.name.clone()))?;
    Ok(dfa.with_alphabet(alphabet))
}

fn describe(s: Sort) -> &'static str {
    match s {
        Sort::First => "first-order",
        Sort::Second => "second-order",
    }
}

struct Compiler {
    base: Alphabet,
    /// Variables in scope; track `i` of the current alphabet is `scope[i]`.
    scope: Vec<(String, Sort)>,
}

impl Compiler {
    fn alphabet(&self) -> StructuredAlphabet {
        // internal track names are positional so that shadowing is harmless
        StructuredAlphabet::new(
            self.base.clone(),
            (0..self.scope.len()).map(|i| format!("#{i}")),
        )
        .expect("non-empty base")
    }

    fn track(&self, name: &str, sort: Sort) -> Result<usize> {
        match self.scope.iter().rposition(|(n, _)| n == name) {
            None => Err(Error::UnboundVariable(name.to_string())),
            Some(i) if self.scope[i].1 != sort => Err(Error::SortMismatch {
                name: name.to_string(),
                used: describe(sort),
                declared: describe(self.scope[i].1),
            }),
            Some(i) => Ok(i),
        }
    }

    fn compile(&mut self, f: &Formula) -> Result<Dfa> {
        let sa = self.alphabet();
        Ok(match f {
            Formula::True => Dfa::universal(sa),
            Formula::False => Dfa::universal(sa).complement(),
            Formula::Letter(a, t) => {
                let a = self.base.symbol(a)?;
                let tx = self.track(&t.var, Sort::First)?;
                let s2 = sa.clone();
                probe(sa, tx, t.offset, move |l| s2.base_of(l) == a)
            }
            Formula::In(t, set) => {
                let tx = self.track(&t.var, Sort::First)?;
                let ts = self.track(set, Sort::Second)?;
                probe(sa, tx, t.offset, move |l| l >> ts & 1 == 1)
            }
            Formula::First(t) => {
                let tx = self.track(&t.var, Sort::First)?;
                if t.offset > 0 {
                    Dfa::universal(sa).complement()
                } else {
                    first(sa, tx)
                }
            }
            Formula::Last(t) => {
                let tx = self.track(&t.var, Sort::First)?;
                last(sa, tx, t.offset)
            }
            Formula::Compare(op, a, b) => {
                let ta = self.track(&a.var, Sort::First)?;
                let tb = self.track(&b.var, Sort::First)?;
                compare(sa, *op, (ta, a), (tb, b))
            }
            Formula::Not(g) => self.compile(g)?.complement(),
            Formula::And(a, b) => self.compile(a)?.intersect(&self.compile(b)?)?.minimize(),
            Formula::Or(a, b) => self.compile(a)?.union(&self.compile(b)?)?.minimize(),
            Formula::Implies(a, b) => self
                .compile(a)?
                .complement()
                .union(&self.compile(b)?)?
                .minimize(),
            Formula::Exists(x, g) => self.exists(x, Sort::First, g)?,
            Formula::Exists2(x, g) => self.exists(x, Sort::Second, g)?,
            Formula::Forall(x, g) => self.forall(x, Sort::First, g)?,
            Formula::Forall2(x, g) => self.forall(x, Sort::Second, g)?,
        })
    }

    fn exists(&mut self, x: &str, sort: Sort, body: &Formula) -> Result<Dfa> {
        self.scope.push((x.to_string(), sort));
        let inner = self.compile(body);
        let t = self.scope.len() - 1;
        let sa = self.alphabet();
        self.scope.pop();
        let mut inner = inner?;
        if sort == Sort::First {
            inner = inner.intersect(&singleton(sa, t))?;
        }
        Ok(inner.project_index(t))
    }

    fn forall(&mut self, x: &str, sort: Sort, body: &Formula) -> Result<Dfa> {
        let neg = Formula::not(body.clone());
        Ok(self.exists(x, sort, &neg)?.complement())
    }
}

/// Words whose track `t` carries exactly one 1-bit.
pub(crate) fn singleton(sa: StructuredAlphabet, t: usize) -> Dfa {
    Dfa::from_fn(sa, 3, 0, &[1], |s, l| {
        let bit = (l >> t & 1) as usize;
        (s + bit).min(2)
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Probe {
    seen: bool,
    dead: bool,
    count: usize,
    ok: bool,
}

/// `pred` holds at position `x + offset`, which exists.
fn probe(sa: StructuredAlphabet, tx: usize, offset: usize, pred: impl Fn(Letter) -> bool) -> Dfa {
    let init = Probe {
        seen: false,
        dead: false,
        count: 0,
        ok: false,
    };
    let d = Dfa::explore(
        sa,
        init,
        |s, l| {
            let mut s = s.clone();
            if s.dead {
                return s;
            }
            let bit = l >> tx & 1 == 1;
            if bit && s.seen {
                s.dead = true;
                return s;
            }
            if bit {
                s.seen = true;
                s.count = 0;
            } else if s.seen {
                s.count = (s.count + 1).min(offset + 1);
            } else {
                return s;
            }
            if s.count == offset && (bit || offset > 0) {
                s.ok = pred(l);
            }
            s
        },
        |s| s.seen && !s.dead && s.count >= offset && s.ok,
    );
    d.minimize()
}

fn first(sa: StructuredAlphabet, tx: usize) -> Dfa {
    // 0 start, 1 x at position 1, 2 reject
    Dfa::from_fn(sa, 3, 0, &[1], |s, l| {
        let bit = l >> tx & 1 == 1;
        match (s, bit) {
            (0, true) => 1,
            (1, false) => 1,
            _ => 2,
        }
    })
}

fn last(sa: StructuredAlphabet, tx: usize, offset: usize) -> Dfa {
    // (seen, count since x capped at offset + 1, dead)
    Dfa::explore(
        sa,
        (false, 0usize, false),
        |&(seen, count, dead), l| {
            let bit = l >> tx & 1 == 1;
            if dead || (seen && bit) {
                (seen, count, true)
            } else if bit {
                (true, 0, false)
            } else if seen {
                (true, (count + 1).min(offset + 1), false)
            } else {
                (false, 0, false)
            }
        },
        |&(seen, count, dead)| seen && !dead && count == offset,
    )
    .minimize()
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Pair {
    cx: Option<i64>,
    cy: Option<i64>,
    diff: Option<i64>,
    dead: bool,
}

fn holds(op: Cmp, a: i64, b: i64) -> bool {
    match op {
        Cmp::Lt => a < b,
        Cmp::Le => a <= b,
        Cmp::Eq => a == b,
    }
}

/// `x + i  op  y + j`, with both terms inside the word.
fn compare(
    sa: StructuredAlphabet,
    op: Cmp,
    (tx, a): (usize, &Term),
    (ty, b): (usize, &Term),
) -> Dfa {
    let (i, j) = (a.offset as i64, b.offset as i64);
    if tx == ty {
        // x + i op x + j: a static comparison plus range checks
        if !holds(op, i, j) {
            return Dfa::universal(sa).complement();
        }
        return last_at_least(sa, tx, i.max(j) as usize);
    }
    let span = (i - j).abs() + 1;
    let cap = i.max(j).max(span) + 1;
    Dfa::explore(
        sa,
        Pair {
            cx: None,
            cy: None,
            diff: None,
            dead: false,
        },
        |s, l| {
            let mut s = s.clone();
            if s.dead {
                return s;
            }
            let (bx, by) = (l >> tx & 1 == 1, l >> ty & 1 == 1);
            if (bx && s.cx.is_some()) || (by && s.cy.is_some()) {
                s.dead = true;
                return s;
            }
            s.cx = s.cx.map(|c| (c + 1).min(cap));
            s.cy = s.cy.map(|c| (c + 1).min(cap));
            if bx {
                s.cx = Some(0);
            }
            if by {
                s.cy = Some(0);
            }
            if s.diff.is_none() {
                if let (Some(cx), Some(cy)) = (s.cx, s.cy) {
                    // py - px = cx - cy
                    s.diff = Some((cx - cy).clamp(-span, span));
                }
            }
            s
        },
        |s| match (s.cx, s.cy, s.diff) {
            (Some(cx), Some(cy), Some(d)) if !s.dead => cx >= i && cy >= j && holds(op, i - j, d),
            _ => false,
        },
    )
    .minimize()
}

/// x occurs once and at least `k` positions follow it.
fn last_at_least(sa: StructuredAlphabet, tx: usize, k: usize) -> Dfa {
    Dfa::explore(
        sa,
        (false, 0usize, false),
        |&(seen, count, dead), l| {
            let bit = l >> tx & 1 == 1;
            if dead || (seen && bit) {
                (seen, count, true)
            } else if bit {
                (true, 0, false)
            } else if seen {
                (true, (count + 1).min(k), false)
            } else {
                (false, 0, false)
            }
        },
        |&(seen, count, dead)| seen && !dead && count >= k,
    )
    .minimize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::parse_formula;

    fn compile(src: &str, base: &[&str], sig: &[Var]) -> StructuredNfa {
        mso_compile(
            &parse_formula(src).unwrap(),
            &Alphabet::new(base.iter().copied()),
            sig,
        )
        .unwrap()
    }

    #[test]
    fn pm1_example() {
        let n = compile(
            "x = y + 1 | y = x + 1",
            &["a"],
            &[Var::first("x"), Var::first("y")],
        );
        let sa = n.alphabet();
        let good = sa.word_with_positions(&[0, 0, 0], &[&[2], &[3]]);
        let bad = sa.word_with_positions(&[0, 0, 0], &[&[1], &[3]]);
        assert!(n.accepts(&good));
        assert!(!n.accepts(&bad));
    }

    #[test]
    fn tautology_accepts_all_nonempty() {
        let n = compile("true", &["a", "b"], &[]);
        for len in 1..5 {
            for w in n.alphabet().base().words_of_len(len) {
                let w: Vec<Letter> = w.iter().map(|&s| s as Letter).collect();
                assert!(n.accepts(&w));
            }
        }
    }

    #[test]
    fn set_membership_example() {
        let n = compile("exists x. x in X & a(x)", &["a", "b"], &[Var::second("X")]);
        let sa = n.alphabet();
        assert!(n.accepts(&sa.word_with_positions(&[0, 1, 0], &[&[2, 3]])));
        assert!(!n.accepts(&sa.word_with_positions(&[0, 1, 0], &[&[2]])));
    }

    #[test]
    fn first_and_last_witness() {
        let n = compile("first(x) & last(x)", &["a"], &[Var::first("x")]);
        let w = n.find_witness().unwrap();
        assert_eq!(w, vec![n.alphabet().letter(0, 1)]);
    }

    #[test]
    fn signature_errors() {
        let f = parse_formula("x < y").unwrap();
        let base = Alphabet::new(["a"]);
        assert!(matches!(
            mso_compile(&f, &base, &[Var::first("x")]),
            Err(Error::UnboundVariable(_))
        ));
        assert!(matches!(
            mso_compile(&f, &base, &[Var::first("x"), Var::second("y")]),
            Err(Error::SortMismatch { .. })
        ));
    }

    #[test]
    fn shadowing_is_scoped() {
        let n = compile("a(x) & exists x. b(x)", &["a", "b"], &[Var::first("x")]);
        let sa = n.alphabet();
        assert!(n.accepts(&sa.word_with_positions(&[0, 1], &[&[1]])));
        assert!(!n.accepts(&sa.word_with_positions(&[0, 0], &[&[1]])));
    }
}
