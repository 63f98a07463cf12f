//! Resynchronizers with output parameters and the four components
//! `(α, β, γ, δ)`.
//!
//! `α(Ī)` constrains the input parameters, `β(Ō)` the output parameters,
//! `γ(τ)(Ī, x, y)` the redirection of an output position of type `τ` and
//! `δ(τ1, τ2)(Ī, x, y)` the new origins `x`, `y` of two consecutive output
//! positions. The output-types are `Γ × B^n`.

use serde::Serialize;

use super::solve::{solve, Constraint};
use super::{signature, ResyncWitness, Resynchronizer};
use crate::alphabet::{Alphabet, Symbol};
use crate::automata::{Dfa, StructuredAlphabet};
use crate::error::{Error, Result};
use crate::mso::{mso_compile_dfa, Formula, Var};
use crate::transducer::OriginGraph;

/// An output letter together with the output parameters at that position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OutputType {
    pub letter: Symbol,
    pub bits: u32,
}

#[derive(Clone, Debug)]
pub struct ExtendedResynchronizer {
    input: Alphabet,
    output: Alphabet,
    in_params: Vec<String>,
    out_params: Vec<String>,
    alpha: Dfa,
    beta: Dfa,
    gamma: Vec<Dfa>,
    delta: Vec<Dfa>,
}

/// Largest number of output-parameter bits searched exhaustively.
const MAX_OUT_BITS: usize = 20;

impl ExtendedResynchronizer {
    /// `α = β = δ = ⊤` and the same `γ` for every output-type.
    pub fn new<S: AsRef<str>>(
        input: &Alphabet,
        output: &Alphabet,
        in_params: &[S],
        out_params: &[S],
        gamma: &Formula,
    ) -> Result<Self> {
        let in_params: Vec<String> = in_params.iter().map(|s| s.as_ref().to_string()).collect();
        let out_params: Vec<String> = out_params.iter().map(|s| s.as_ref().to_string()).collect();
        let sig_in: Vec<Var> = in_params.iter().map(Var::second).collect();
        let sig_out: Vec<Var> = out_params.iter().map(Var::second).collect();
        let alpha = mso_compile_dfa(&Formula::True, input, &sig_in)?;
        let beta = mso_compile_dfa(&Formula::True, output, &sig_out)?;
        let g = mso_compile_dfa(gamma, input, &signature(&in_params))?.minimize();
        let top = mso_compile_dfa(&Formula::True, input, &signature(&in_params))?;
        let types = output.len() << out_params.len();
        Ok(ExtendedResynchronizer {
            input: input.clone(),
            output: output.clone(),
            in_params,
            out_params,
            alpha,
            beta,
            gamma: vec![g; types],
            delta: vec![top; types * types],
        })
    }

    /// The degenerate extension of a simplified resynchronizer.
    pub fn from_simple(r: &Resynchronizer, output: &Alphabet) -> Result<Self> {
        let mut e = ExtendedResynchronizer::new(r.base(), output, r.params(), &[], &Formula::True)?;
        for g in &mut e.gamma {
            *g = r.gamma().clone();
        }
        Ok(e)
    }

    pub fn in_params(&self) -> &[String] {
        &self.in_params
    }

    pub fn out_params(&self) -> &[String] {
        &self.out_params
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn num_types(&self) -> usize {
        self.output.len() << self.out_params.len()
    }

    pub fn types(&self) -> impl Iterator<Item = OutputType> + '_ {
        (0..self.num_types()).map(|i| self.type_at(i))
    }

    fn type_at(&self, i: usize) -> OutputType {
        let n = self.out_params.len();
        OutputType {
            letter: i >> n,
            bits: (i & ((1 << n) - 1)) as u32,
        }
    }

    fn index(&self, t: OutputType) -> Result<usize> {
        let n = self.out_params.len();
        if t.letter >= self.output.len() || (t.bits >> n) != 0 {
            return Err(Error::UnknownSymbol(format!("output-type {t:?}")));
        }
        Ok(t.letter << n | t.bits as usize)
    }

    fn compile_xy(&self, f: &Formula) -> Result<Dfa> {
        Ok(mso_compile_dfa(f, &self.input, &signature(&self.in_params))?.minimize())
    }

    pub fn set_alpha(&mut self, f: &Formula) -> Result<()> {
        let sig: Vec<Var> = self.in_params.iter().map(Var::second).collect();
        self.alpha = mso_compile_dfa(f, &self.input, &sig)?;
        Ok(())
    }

    pub fn set_beta(&mut self, f: &Formula) -> Result<()> {
        let sig: Vec<Var> = self.out_params.iter().map(Var::second).collect();
        self.beta = mso_compile_dfa(f, &self.output, &sig)?;
        Ok(())
    }

    pub fn set_gamma(&mut self, t: OutputType, f: &Formula) -> Result<()> {
        let i = self.index(t)?;
        self.gamma[i] = self.compile_xy(f)?;
        Ok(())
    }

    pub fn set_gamma_all(&mut self, f: &Formula) -> Result<()> {
        let d = self.compile_xy(f)?;
        self.gamma.iter_mut().for_each(|g| *g = d.clone());
        Ok(())
    }

    /// `δ(τ1, τ2)`; in the formula `x` and `y` are the new origins of the
    /// first and second position.
    pub fn set_delta(&mut self, t1: OutputType, t2: OutputType, f: &Formula) -> Result<()> {
        let i = self.index(t1)? * self.num_types() + self.index(t2)?;
        self.delta[i] = self.compile_xy(f)?;
        Ok(())
    }

    pub fn set_delta_all(&mut self, f: &Formula) -> Result<()> {
        let d = self.compile_xy(f)?;
        self.delta.iter_mut().for_each(|g| *g = d.clone());
        Ok(())
    }

    pub fn gamma(&self, t: OutputType) -> Result<&Dfa> {
        Ok(&self.gamma[self.index(t)?])
    }
}

/// Membership for extended resynchronizers. Output parameters are
/// enumerated exhaustively (exponential in `n · |v|`); for each valuation
/// accepted by `β` the input parameters are searched as in the simplified
/// case.
pub fn extended_pair_in_resync(
    r: &ExtendedResynchronizer,
    old: &OriginGraph,
    new: &OriginGraph,
) -> Result<Option<ResyncWitness>> {
    old.validate()?;
    new.validate()?;
    if !old.same_words(new) {
        return Err(Error::WordMismatch);
    }
    if old.input.iter().any(|&a| a >= r.input.len())
        || old.output.iter().any(|&b| b >= r.output.len())
    {
        return Err(Error::AlphabetMismatch(
            "graph letters outside the resynchronizer alphabets".into(),
        ));
    }
    let n = r.out_params.len();
    let len = old.output.len();
    if n * len > MAX_OUT_BITS {
        return Err(Error::CapsInsufficient(format!(
            "{} output-parameter bits exceed the exhaustive limit {MAX_OUT_BITS}",
            n * len
        )));
    }
    let m = r.in_params.len();
    let beta_sa: &StructuredAlphabet = r.beta.alphabet();
    for o in 0u64..1 << (n * len) {
        let cols: Vec<u32> = (0..len)
            .map(|t| ((o >> (t * n)) & ((1 << n) - 1)) as u32)
            .collect();
        let bword: Vec<_> = (0..len)
            .map(|t| beta_sa.letter(old.output[t], cols[t]))
            .collect();
        if !r.beta.accepts(&bword) {
            continue;
        }
        let types: Vec<usize> = (0..len)
            .map(|t| old.output[t] << n | cols[t] as usize)
            .collect();
        let mut keys: Vec<(usize, bool, usize, usize)> = Vec::new();
        for t in 0..len {
            keys.push((types[t], false, old.orig[t], new.orig[t]));
            if t + 1 < len {
                keys.push((
                    types[t] * r.num_types() + types[t + 1],
                    true,
                    new.orig[t],
                    new.orig[t + 1],
                ));
            }
        }
        keys.sort_unstable();
        keys.dedup();
        let mut cons = vec![Constraint {
            dfa: &r.alpha,
            x: None,
            y: None,
        }];
        for &(i, is_delta, x, y) in &keys {
            cons.push(Constraint {
                dfa: if is_delta { &r.delta[i] } else { &r.gamma[i] },
                x: Some(x),
                y: Some(y),
            });
        }
        if let Some(icols) = solve(&old.input, m, &cons) {
            return Ok(Some(ResyncWitness {
                params: ResyncWitness::from_columns(&icols, m),
                out_params: ResyncWitness::from_columns(&cols, n),
            }));
        }
    }
    Ok(None)
}

/// The simplified resynchronizer with `γ' = ⋃_τ γ(τ)`; it relates every
/// pair `r` relates, and a bound `k` of `r` becomes at most `k` times the
/// number of output-types.
pub fn simplify_extended(r: &ExtendedResynchronizer) -> Result<Resynchronizer> {
    let mut acc = r.gamma[0].clone();
    for g in &r.gamma[1..] {
        acc = acc.union(g)?.minimize();
    }
    Resynchronizer::from_dfa(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::parse_formula;
    use crate::resync::{make_1st_to_last, make_pm1, pair_in_resync};

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"])
    }
    fn cd() -> Alphabet {
        Alphabet::new(["c", "d"])
    }

    #[test]
    fn degenerate_pm1() {
        let r = make_pm1(&ab());
        let e = ExtendedResynchronizer::from_simple(&r, &cd()).unwrap();
        let old = OriginGraph::new(vec![0; 6], vec![1; 6], vec![1, 2, 3, 4, 5, 6]).unwrap();
        let new = OriginGraph::new(vec![0; 6], vec![1; 6], vec![2, 3, 4, 5, 4, 5]).unwrap();
        assert!(extended_pair_in_resync(&e, &old, &new).unwrap().is_some());
        assert!(pair_in_resync(&r, &old, &new).unwrap().is_some());
        assert!(simplify_extended(&e).unwrap().equivalent(&r).unwrap());
    }

    #[test]
    fn first_to_last() {
        let r = make_1st_to_last(&ab());
        let e = ExtendedResynchronizer::from_simple(&r, &cd()).unwrap();
        let u = ab().parse_compact("abbaba").unwrap();
        let v = cd().parse_compact("cdddcc").unwrap();
        let old = OriginGraph::new(u.clone(), v.clone(), vec![1; 6]).unwrap();
        let new = OriginGraph::new(u, v, vec![6; 6]).unwrap();
        assert!(extended_pair_in_resync(&e, &old, &new).unwrap().is_some());
    }

    #[test]
    fn delta_forbids_decreasing_new_origins() {
        let mut e =
            ExtendedResynchronizer::new(&ab(), &cd(), &[] as &[&str], &[], &Formula::True).unwrap();
        e.set_delta_all(&parse_formula("x < y").unwrap()).unwrap();
        let u = vec![0, 0, 0];
        let old = OriginGraph::new(u.clone(), vec![0, 0], vec![1, 1]).unwrap();
        let up = OriginGraph::new(u.clone(), vec![0, 0], vec![1, 2]).unwrap();
        let down = OriginGraph::new(u, vec![0, 0], vec![2, 1]).unwrap();
        assert!(extended_pair_in_resync(&e, &old, &up).unwrap().is_some());
        assert!(extended_pair_in_resync(&e, &old, &down).unwrap().is_none());
    }

    #[test]
    fn two_types_union() {
        let mut e =
            ExtendedResynchronizer::new(&ab(), &cd(), &[] as &[&str], &[], &Formula::True).unwrap();
        let c = OutputType { letter: 0, bits: 0 };
        let d = OutputType { letter: 1, bits: 0 };
        e.set_gamma(c, &parse_formula("x = y").unwrap()).unwrap();
        e.set_gamma(d, &parse_formula("y = x + 1").unwrap())
            .unwrap();
        let s = simplify_extended(&e).unwrap();
        let direct = Resynchronizer::from_text(&ab(), &[] as &[&str], "x = y | y = x + 1").unwrap();
        assert!(s.equivalent(&direct).unwrap());
    }

    #[test]
    fn output_parameters_are_found() {
        // O marks the outputs that stay; β: exactly the first output is marked.
        let mut e =
            ExtendedResynchronizer::new(&ab(), &cd(), &[] as &[&str], &["O"], &Formula::True)
                .unwrap();
        e.set_beta(
            &parse_formula("forall t. (t in O -> first(t)) & (first(t) -> t in O)").unwrap(),
        )
        .unwrap();
        for letter in 0..2 {
            e.set_gamma(
                OutputType { letter, bits: 1 },
                &parse_formula("x = y").unwrap(),
            )
            .unwrap();
            e.set_gamma(
                OutputType { letter, bits: 0 },
                &parse_formula("y = x + 1").unwrap(),
            )
            .unwrap();
        }
        let u = vec![0, 0, 0];
        let old = OriginGraph::new(u.clone(), vec![0, 1], vec![1, 1]).unwrap();
        let new = OriginGraph::new(u.clone(), vec![0, 1], vec![1, 2]).unwrap();
        let w = extended_pair_in_resync(&e, &old, &new).unwrap().unwrap();
        assert_eq!(w.out_params, vec![vec![true, false]]);
        let swapped = OriginGraph::new(u, vec![0, 1], vec![2, 1]).unwrap();
        assert!(extended_pair_in_resync(&e, &old, &swapped)
            .unwrap()
            .is_none());
    }
}
