//! Textual resynchronizers.
//!
//! ```text
//! params: I
//! gamma: (x in I & forall z. (z in I -> z = x)) | x = y
//! ```
//!
//! `gamma-automaton: path` reads `γ` from an automaton file whose last two
//! tracks are `x` and `y`. The extended form adds `out-params:`, `alpha:`,
//! `beta:`, `gamma(c[1]):` per output-type, `delta:` and
//! `delta(c[1], d[0]):`. A line that does not start with a key continues
//! the previous value.

use std::path::Path;

use super::extended::{ExtendedResynchronizer, OutputType};
use super::Resynchronizer;
use crate::alphabet::Alphabet;
use crate::automata::text::strip_comment;
use crate::automata::{parse_automaton, StructuredAlphabet};
use crate::error::{Error, Result};
use crate::mso::{parse_formula, Formula};

struct Entry {
    line: usize,
    key: String,
    value: String,
}

fn is_key(k: &str) -> bool {
    let head = k.split('(').next().unwrap_or("");
    matches!(
        head.trim(),
        "params" | "out-params" | "gamma" | "gamma-automaton" | "alpha" | "beta" | "delta"
    )
}

fn entries(text: &str) -> Result<Vec<Entry>> {
    let mut out: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        // Keys may contain `:` only as their terminator; types use brackets.
        let split = line.find("):").map(|p| p + 1).or_else(|| line.find(':'));
        match split {
            Some(p) if is_key(&line[..p]) => out.push(Entry {
                line: i + 1,
                key: line[..p].trim().to_string(),
                value: line[p + 1..].trim().to_string(),
            }),
            _ => match out.last_mut() {
                Some(e) => {
                    e.value.push(' ');
                    e.value.push_str(line);
                }
                None => return Err(Error::parse(i + 1, 1, "expected `key: value`")),
            },
        }
    }
    Ok(out)
}

fn formula(e: &Entry) -> Result<Formula> {
    parse_formula(&e.value).map_err(|err| match err {
        Error::Parse {
            line,
            column,
            message,
        } => Error::parse(e.line + line - 1, column, message),
        other => other,
    })
}

/// Parses a simplified resynchronizer over `base`; automaton paths are
/// resolved against `dir`.
pub fn parse_resynchronizer(text: &str, base: &Alphabet, dir: &Path) -> Result<Resynchronizer> {
    let mut params: Vec<String> = Vec::new();
    let mut result = None;
    for e in entries(text)? {
        match e.key.as_str() {
            "params" => params = e.value.split_whitespace().map(String::from).collect(),
            "gamma" => result = Some(Resynchronizer::from_formula(base, &params, formula(&e)?)?),
            "gamma-automaton" => {
                let path = dir.join(&e.value);
                let nfa = parse_automaton(&std::fs::read_to_string(&path)?)?;
                let r = Resynchronizer::from_dfa(nfa.determinize())?;
                if r.params() != params.as_slice() {
                    return Err(Error::parse(
                        e.line,
                        1,
                        "automaton tracks do not match `params:`",
                    ));
                }
                result = Some(r);
            }
            other => return Err(Error::parse(e.line, 1, format!("unexpected key `{other}`"))),
        }
    }
    result.ok_or_else(|| Error::parse(1, 1, "missing `gamma:` or `gamma-automaton:`"))
}

/// The inverse of [`parse_resynchronizer`] for formula-defined `γ`.
pub fn write_resynchronizer(r: &Resynchronizer) -> Result<String> {
    let f = r.formula().ok_or_else(|| {
        Error::Unsupported("γ has no formula; write its automaton instead".into())
    })?;
    Ok(format!("params: {}\ngamma: {f}\n", r.params().join(" ")))
}

fn output_type(sa: &StructuredAlphabet, text: &str, line: usize) -> Result<OutputType> {
    let l = sa
        .parse_letter(text)
        .map_err(|e| Error::parse(line, 1, format!("bad output-type `{text}`: {e}")))?;
    Ok(OutputType {
        letter: sa.base_of(l),
        bits: sa.bits_of(l),
    })
}

fn type_args(key: &str) -> Vec<String> {
    let open = key.find('(').map_or(key.len(), |p| p + 1);
    let close = key.rfind(')').unwrap_or(key.len());
    key[open..close.max(open)]
        .split(',')
        .map(|s| s.trim().to_string())
        .collect()
}

pub fn parse_extended(
    text: &str,
    input: &Alphabet,
    output: &Alphabet,
) -> Result<ExtendedResynchronizer> {
    let es = entries(text)?;
    let list = |k: &str| -> Vec<String> {
        es.iter()
            .filter(|e| e.key == k)
            .flat_map(|e| e.value.split_whitespace().map(String::from))
            .collect()
    };
    let params = list("params");
    let out_params = list("out-params");
    let mut r = ExtendedResynchronizer::new(input, output, &params, &out_params, &Formula::True)?;
    let types = StructuredAlphabet::new(output.clone(), out_params.clone())?;
    // Defaults first so that per-type entries override them.
    for e in es.iter().filter(|e| e.key == "gamma") {
        r.set_gamma_all(&formula(e)?)?;
    }
    for e in es.iter().filter(|e| e.key == "delta") {
        r.set_delta_all(&formula(e)?)?;
    }
    for e in &es {
        match e.key.as_str() {
            "params" | "out-params" | "gamma" | "delta" => {}
            "alpha" => r.set_alpha(&formula(e)?)?,
            "beta" => r.set_beta(&formula(e)?)?,
            k if k.starts_with("gamma(") => {
                let args = type_args(k);
                if args.len() != 1 {
                    return Err(Error::parse(e.line, 1, "gamma(...) takes one output-type"));
                }
                r.set_gamma(output_type(&types, &args[0], e.line)?, &formula(e)?)?;
            }
            k if k.starts_with("delta(") => {
                let args = type_args(k);
                if args.len() != 2 {
                    return Err(Error::parse(e.line, 1, "delta(...) takes two output-types"));
                }
                let t1 = output_type(&types, &args[0], e.line)?;
                let t2 = output_type(&types, &args[1], e.line)?;
                r.set_delta(t1, t2, &formula(e)?)?;
            }
            other => return Err(Error::parse(e.line, 1, format!("unexpected key `{other}`"))),
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resync::make_param_example;

    #[test]
    fn round_trip() {
        let ab = Alphabet::new(["a", "b"]);
        let r = make_param_example(&ab);
        let text = write_resynchronizer(&r).unwrap();
        let back = parse_resynchronizer(&text, &ab, Path::new(".")).unwrap();
        assert!(back.equivalent(&r).unwrap());
    }

    #[test]
    fn continuation_and_errors() {
        let ab = Alphabet::new(["a", "b"]);
        let r = parse_resynchronizer(
            "gamma: x = y\n  | y = x + 1 // comment\n",
            &ab,
            Path::new("."),
        )
        .unwrap();
        assert!(r.holds(&[0, 0], &[], 1, 2));
        let err = parse_resynchronizer("params:\ngamma: x <=\n", &ab, Path::new(".")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn extended_types() {
        let ab = Alphabet::new(["a", "b"]);
        let cd = Alphabet::new(["c", "d"]);
        let text =
            "out-params: O\ngamma: x = y\ngamma(c[1]): y = x + 1\ndelta(c[1], d[0]): x < y\n";
        let r = parse_extended(text, &ab, &cd).unwrap();
        let g = r.gamma(OutputType { letter: 0, bits: 1 }).unwrap();
        assert!(!g.is_empty());
        assert_eq!(r.num_types(), 4);
    }
}
