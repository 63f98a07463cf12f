use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sort {
    /// A single position.
    First,
    /// A set of positions.
    Second,
}

impl Sort {
    fn describe(self) -> &'static str {
        match self {
            Sort::First => "first-order",
            Sort::Second => "second-order",
        }
    }
}

/// A free variable of a formula's signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Var {
    pub name: String,
    pub sort: Sort,
}

impl Var {
    pub fn first(name: impl Into<String>) -> Self {
        Var {
            name: name.into(),
            sort: Sort::First,
        }
    }

    pub fn second(name: impl Into<String>) -> Self {
        Var {
            name: name.into(),
            sort: Sort::Second,
        }
    }
}

/// A position term `x + offset`. Terms pointing past the last position make
/// the enclosing atom false.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub var: String,
    pub offset: usize,
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term {
            var: name.into(),
            offset: 0,
        }
    }

    pub fn plus(name: impl Into<String>, offset: usize) -> Self {
        Term {
            var: name.into(),
            offset,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cmp {
    Lt,
    Le,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Letter(String, Term),
    Compare(Cmp, Term, Term),
    In(Term, String),
    First(Term),
    Last(Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists2(String, Box<Formula>),
    Forall2(String, Box<Formula>),
}

// Constructors kept terse: builders assemble large formulas from them.
impl Formula {
    pub fn letter(a: &str, t: Term) -> Self {
        Formula::Letter(a.to_string(), t)
    }
    pub fn lt(a: Term, b: Term) -> Self {
        Formula::Compare(Cmp::Lt, a, b)
    }
    pub fn le(a: Term, b: Term) -> Self {
        Formula::Compare(Cmp::Le, a, b)
    }
    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Compare(Cmp::Eq, a, b)
    }
    pub fn member(t: Term, set: &str) -> Self {
        Formula::In(t, set.to_string())
    }
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn exists(x: &str, f: Formula) -> Self {
        Formula::Exists(x.to_string(), Box::new(f))
    }
    pub fn forall(x: &str, f: Formula) -> Self {
        Formula::Forall(x.to_string(), Box::new(f))
    }
    pub fn exists2(x: &str, f: Formula) -> Self {
        Formula::Exists2(x.to_string(), Box::new(f))
    }
    pub fn forall2(x: &str, f: Formula) -> Self {
        Formula::Forall2(x.to_string(), Box::new(f))
    }

    /// Disjunction of all items; `False` when empty.
    pub fn any(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    /// Conjunction of all items; `True` when empty.
    pub fn all(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Free variables with their inferred sorts, sorted by name.
    pub fn free_vars(&self) -> Result<BTreeMap<String, Sort>> {
        let mut free = BTreeMap::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut free)?;
        Ok(free)
    }

    fn collect_free(
        &self,
        bound: &mut Vec<(String, Sort)>,
        free: &mut BTreeMap<String, Sort>,
    ) -> Result<()> {
        let mut note = |name: &str, sort: Sort, bound: &Vec<(String, Sort)>| -> Result<()> {
            let declared = bound
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|&(_, s)| s)
                .or_else(|| free.get(name).copied());
            match declared {
                Some(s) if s != sort => Err(Error::SortMismatch {
                    name: name.to_string(),
                    used: sort.describe(),
                    declared: s.describe(),
                }),
                Some(_) => Ok(()),
                None => {
                    free.insert(name.to_string(), sort);
                    Ok(())
                }
            }
        };
        match self {
            Formula::True | Formula::False => Ok(()),
            Formula::Letter(_, t) | Formula::First(t) | Formula::Last(t) => {
                note(&t.var, Sort::First, bound)
            }
            Formula::Compare(_, a, b) => {
                note(&a.var, Sort::First, bound)?;
                note(&b.var, Sort::First, bound)
            }
            Formula::In(t, set) => {
                note(&t.var, Sort::First, bound)?;
                note(set, Sort::Second, bound)
            }
            Formula::Not(f) => f.collect_free(bound, free),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, free)?;
                b.collect_free(bound, free)
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push((x.clone(), Sort::First));
                let r = f.collect_free(bound, free);
                bound.pop();
                r
            }
            Formula::Exists2(x, f) | Formula::Forall2(x, f) => {
                bound.push((x.clone(), Sort::Second));
                let r = f.collect_free(bound, free);
                bound.pop();
                r
            }
        }
    }

    /// A signature listing the free variables in name order.
    pub fn inferred_signature(&self) -> Result<Vec<Var>> {
        Ok(self
            .free_vars()?
            .into_iter()
            .map(|(name, sort)| Var { name, sort })
            .collect())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset == 0 {
            write!(f, "{}", self.var)
        } else {
            write!(f, "{} + {}", self.var, self.offset)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Letter(a, t) => write!(f, "{a}({t})"),
            Formula::Compare(c, a, b) => {
                let op = match c {
                    Cmp::Lt => "<",
                    Cmp::Le => "<=",
                    Cmp::Eq => "=",
                };
                write!(f, "{a} {op} {b}")
            }
            Formula::In(t, s) => write!(f, "{t} in {s}"),
            Formula::First(t) => write!(f, "first({t})"),
            Formula::Last(t) => write!(f, "last({t})"),
            Formula::Not(g) => write!(f, "!({g})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Exists(x, g) => write!(f, "(exists {x}. {g})"),
            Formula::Forall(x, g) => write!(f, "(forall {x}. {g})"),
            Formula::Exists2(x, g) => write!(f, "(exists2 {x}. {g})"),
            Formula::Forall2(x, g) => write!(f, "(forall2 {x}. {g})"),
        }
    }
}
