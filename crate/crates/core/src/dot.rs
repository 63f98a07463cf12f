//! Graphviz export.
//!
//! Origin graphs are drawn with the input word on the top row and the
//! output word below it. In a pair, solid arrows are the origins of the
//! source graph and dashed arrows those of the target.

use std::fmt::Write as _;

use crate::alphabet::Alphabet;
use crate::automata::StructuredNfa;
use crate::error::{Error, Result};
use crate::transducer::{label, OriginGraph, Transducer};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn rows(s: &mut String, g: &OriginGraph, sigma: &Alphabet, gamma: &Alphabet) {
    let _ = writeln!(s, "  {{ rank=same;");
    for (i, &a) in g.input.iter().enumerate() {
        let _ = writeln!(
            s,
            "    i{} [label=\"{}\", shape=box];",
            i + 1,
            escape(sigma.name(a))
        );
    }
    let _ = writeln!(s, "  }}");
    let _ = writeln!(s, "  {{ rank=same;");
    for (j, &b) in g.output.iter().enumerate() {
        let _ = writeln!(
            s,
            "    o{} [label=\"{}\", shape=circle];",
            j + 1,
            escape(gamma.name(b))
        );
    }
    let _ = writeln!(s, "  }}");
    // Invisible chains keep both words in reading order.
    for i in 1..g.input.len() {
        let _ = writeln!(s, "  i{} -> i{} [style=invis];", i, i + 1);
    }
    for j in 1..g.output.len() {
        let _ = writeln!(s, "  o{} -> o{} [style=invis];", j, j + 1);
    }
}

pub fn graph_to_dot(g: &OriginGraph, sigma: &Alphabet, gamma: &Alphabet) -> String {
    let mut s = String::from("digraph origin {\n  rankdir=TB;\n");
    rows(&mut s, g, sigma, gamma);
    for (j, &o) in g.orig.iter().enumerate() {
        let _ = writeln!(s, "  o{} -> i{};", j + 1, o);
    }
    s.push_str("}\n");
    s
}

/// Both graphs must share their words.
pub fn pair_to_dot(
    source: &OriginGraph,
    target: &OriginGraph,
    sigma: &Alphabet,
    gamma: &Alphabet,
) -> Result<String> {
    if !source.same_words(target) {
        return Err(Error::WordMismatch);
    }
    let mut s = String::from("digraph resync {\n  rankdir=TB;\n");
    rows(&mut s, source, sigma, gamma);
    for (j, (&x, &y)) in source.orig.iter().zip(&target.orig).enumerate() {
        let _ = writeln!(s, "  o{} -> i{};", j + 1, x);
        let _ = writeln!(s, "  o{} -> i{} [style=dashed];", j + 1, y);
    }
    s.push_str("}\n");
    Ok(s)
}

pub fn transducer_to_dot(t: &Transducer) -> String {
    let mut s = String::from("digraph transducer {\n  rankdir=LR;\n");
    for q in 0..t.num_states() {
        let shape = if t.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            s,
            "  q{q} [label=\"{}\", shape={shape}];",
            escape(t.state_name(q))
        );
    }
    for &q in t.initial() {
        let _ = writeln!(s, "  start{q} [shape=point];\n  start{q} -> q{q};");
    }
    for tr in t.transitions() {
        let _ = writeln!(
            s,
            "  q{} -> q{} [label=\"{}\"];",
            tr.from,
            tr.to,
            escape(&label(t, tr))
        );
    }
    s.push_str("}\n");
    s
}

pub fn automaton_to_dot(nfa: &StructuredNfa) -> String {
    let sa = nfa.alphabet();
    let mut s = String::from("digraph automaton {\n  rankdir=LR;\n");
    for q in 0..nfa.num_states() {
        let shape = if nfa.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(s, "  q{q} [label=\"{q}\", shape={shape}];");
    }
    for &q in nfa.initial() {
        let _ = writeln!(s, "  start{q} [shape=point];\n  start{q} -> q{q};");
    }
    for q in 0..nfa.num_states() {
        for &(l, to) in nfa.transitions(q) {
            let _ = writeln!(
                s,
                "  q{q} -> q{to} [label=\"{}\"];",
                escape(&sa.render_letter(l))
            );
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_uses_dashes_for_target() {
        let sigma = Alphabet::new(["a"]);
        let g1 = OriginGraph::new(vec![0, 0], vec![0], vec![1]).unwrap();
        let g2 = OriginGraph::new(vec![0, 0], vec![0], vec![2]).unwrap();
        let d = pair_to_dot(&g1, &g2, &sigma, &sigma).unwrap();
        assert!(d.contains("o1 -> i1;"));
        assert!(d.contains("o1 -> i2 [style=dashed];"));
        let other = OriginGraph::new(vec![0], vec![], vec![]).unwrap();
        assert!(pair_to_dot(&g1, &other, &sigma, &sigma).is_err());
    }

    #[test]
    fn transducer_marks_finals() {
        let d = transducer_to_dot(&crate::corpus::t_id());
        assert!(d.contains("doublecircle"));
        assert!(d.starts_with("digraph transducer"));
    }
}
