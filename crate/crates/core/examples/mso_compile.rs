//! Compiles an MSO formula to a minimal DFA and tests a few encoded words.

use origami::mso::{mso_compile_dfa, parse_formula, Var};
use origami::Alphabet;

fn main() -> origami::Result<()> {
    let base = Alphabet::new(["a", "b"]);
    // The successor of x carries a b. Positions are 1-based.
    let f = parse_formula("b(x + 1)")?;
    let sig = [Var::first("x")];
    let dfa = mso_compile_dfa(&f, &base, &sig)?;
    println!("{} states", dfa.num_states());
    let al = dfa.alphabet();
    for (word, x) in [("ab", 1), ("aa", 1), ("ba", 2)] {
        let w = al.word_with_positions(&base.parse_compact(word)?, &[&[x]]);
        println!("{word} with x = {x}: {}", dfa.accepts(&w));
    }
    Ok(())
}
