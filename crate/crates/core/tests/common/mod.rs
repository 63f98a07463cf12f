//! Brute-force oracles shared by the integration tests and the acceptance
//! runner. Nothing here calls into the automata or the solvers.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use origami::mso::{Cmp, Formula, Term};
use origami::transducer::OriginGraph;
use origami::{Alphabet, Symbol};
use rand::Rng;

/// Values of free variables: a position (0-based) or a set of positions.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub first: BTreeMap<String, usize>,
    pub second: BTreeMap<String, Vec<bool>>,
}

fn term(t: &Term, env: &Env, n: usize) -> Option<usize> {
    let p = env.first[&t.var] + t.offset;
    (p < n).then_some(p)
}

/// Direct evaluation of `f` on `word` by quantifier expansion.
pub fn eval(f: &Formula, base: &Alphabet, word: &[Symbol], env: &mut Env) -> bool {
    let n = word.len();
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Letter(a, t) => match term(t, env, n) {
            Some(p) => base.name(word[p]) == a,
            None => false,
        },
        Formula::Compare(c, s, t) => match (term(s, env, n), term(t, env, n)) {
            (Some(p), Some(q)) => match c {
                Cmp::Lt => p < q,
                Cmp::Le => p <= q,
                Cmp::Eq => p == q,
            },
            _ => false,
        },
        Formula::In(t, set) => term(t, env, n).is_some_and(|p| env.second[set][p]),
        Formula::First(t) => term(t, env, n) == Some(0),
        Formula::Last(t) => n > 0 && term(t, env, n) == Some(n - 1),
        Formula::Not(g) => !eval(g, base, word, env),
        Formula::And(a, b) => eval(a, base, word, env) && eval(b, base, word, env),
        Formula::Or(a, b) => eval(a, base, word, env) || eval(b, base, word, env),
        Formula::Implies(a, b) => !eval(a, base, word, env) || eval(b, base, word, env),
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let want = matches!(f, Formula::Exists(..));
            let saved = env.first.get(x).copied();
            let mut result = !want;
            for p in 0..n {
                env.first.insert(x.clone(), p);
                if eval(g, base, word, env) == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(p) => env.first.insert(x.clone(), p),
                None => env.first.remove(x),
            };
            result
        }
        Formula::Exists2(x, g) | Formula::Forall2(x, g) => {
            let want = matches!(f, Formula::Exists2(..));
            let saved = env.second.get(x).cloned();
            let mut result = !want;
            for mask in 0u32..1 << n {
                env.second
                    .insert(x.clone(), (0..n).map(|i| mask >> i & 1 == 1).collect());
                if eval(g, base, word, env) == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(s) => env.second.insert(x.clone(), s),
                None => env.second.remove(x),
            };
            result
        }
    }
}

/// Per-direction traversal count straight from the definition: the
/// largest number of distinct sources crossing one position in one
/// direction.
pub fn naive_max_traversal(old: &OriginGraph, new: &OriginGraph) -> usize {
    let n = old.input.len();
    let mut best = 0;
    for z in 1..=n {
        let mut lr = BTreeSet::new();
        let mut rl = BTreeSet::new();
        for (&x, &y) in old.orig.iter().zip(&new.orig) {
            if x <= z && y > z {
                lr.insert(x);
            }
            if x >= z && y < z {
                rl.insert(x);
            }
        }
        best = best.max(lr.len()).max(rl.len());
    }
    best
}

pub fn random_word(rng: &mut impl Rng, size: usize, len: usize) -> Vec<Symbol> {
    (0..len).map(|_| rng.gen_range(0..size)).collect()
}

/// Two graphs on shared random words with unconstrained origins.
pub fn random_pair(
    rng: &mut impl Rng,
    max_in: usize,
    max_out: usize,
) -> (OriginGraph, OriginGraph) {
    let n = rng.gen_range(1..=max_in);
    let m = rng.gen_range(0..=max_out);
    let u = random_word(rng, 2, n);
    let v = random_word(rng, 2, m);
    let o1 = (0..m).map(|_| rng.gen_range(1..=n)).collect();
    let o2 = (0..m).map(|_| rng.gen_range(1..=n)).collect();
    (
        OriginGraph::new(u.clone(), v.clone(), o1).unwrap(),
        OriginGraph::new(u, v, o2).unwrap(),
    )
}

/// A graph with non-decreasing origins, as produced by one-way runs.
pub fn random_monotone(
    rng: &mut impl Rng,
    sigma: usize,
    gamma: usize,
    max_in: usize,
    max_out: usize,
) -> OriginGraph {
    let n = rng.gen_range(1..=max_in);
    let m = rng.gen_range(0..=max_out);
    let mut orig: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=n)).collect();
    orig.sort_unstable();
    OriginGraph::new(random_word(rng, sigma, n), random_word(rng, gamma, m), orig).unwrap()
}

/// Graphs of the block shape over `a b` / `c d`: each maximal `a`-block
/// emits one `c`, each `b` one `d`. `at_end` puts the `c` on the last
/// letter of its block instead of the first.
pub fn block_graph(input: &[Symbol], at_end: bool) -> Option<OriginGraph> {
    let (a, b, c, d) = (0, 1, 0, 1);
    let mut out = Vec::new();
    let mut orig = Vec::new();
    let mut i = 0;
    while i < input.len() {
        if input[i] == b {
            out.push(d);
            orig.push(i + 1);
            i += 1;
            continue;
        }
        let start = i;
        while i < input.len() && input[i] == a {
            i += 1;
        }
        out.push(c);
        orig.push(if at_end { i } else { start + 1 });
    }
    if !input.contains(&a) {
        return None;
    }
    OriginGraph::new(input.to_vec(), out, orig).ok()
}

/// Is `(source, target)` a block pair: both of block shape on the same
/// input, `c` moving from the first to the last letter of its block.
pub fn is_block_pair(source: &OriginGraph, target: &OriginGraph) -> bool {
    match (
        block_graph(&source.input, false),
        block_graph(&source.input, true),
    ) {
        (Some(s), Some(t)) => &s == source && &t == target,
        _ => false,
    }
}

/// The twelve formulas of the compiler oracle, with their base alphabet.
pub fn formula_corpus() -> Vec<(&'static str, String)> {
    vec![
        ("pm1-right", "x = y + 1".into()),
        ("pm1-left", "y = x + 1".into()),
        ("rk2", format!("{}", origami::resync::rk_formula(2))),
        ("param", "(x in I & forall z. (z in I -> z = x)) | x = y".into()),
        (
            "block",
            "(x <= y & (forall z. (x <= z & z <= y) -> a(z)) & (forall w. w + 1 = x -> !a(w)) & !a(y + 1)) \
             | ((b(x)) & x = y)"
                .into(),
        ),
        ("first-to-last", "x = first & y = last".into()),
        ("shift3", "y <= x & !(y + 3 < x)".into()),
        ("between-b", "exists z. (x < z & z < y & b(z))".into()),
        (
            "even-gap",
            "exists2 X. (x in X & y in X & forall z. forall w. (w = z + 1 -> ((z in X -> !(w in X)) & (!(z in X) -> w in X))))"
                .into(),
        ),
        ("distinct-as", "a(x) & a(y) & x != y".into()),
        ("sentence", "exists x. (a(x) & forall y. (y < x -> b(y)))".into()),
        ("set-closure", "forall2 Y. ((x in Y & forall z. (z in Y -> (last(z) | z + 1 in Y))) -> y in Y) & x <= y".into()),
    ]
}

#[derive(Debug, Default)]
pub struct OracleStats {
    pub checked: usize,
    pub discrepancies: Vec<String>,
}

/// Compares the compiled automaton of `text` with [`eval`] on every word
/// up to `max_len` over `a b`, every placement of the first-order
/// variables, and every set valuation while there are at most 2^12 of
/// them (a seeded sample of 256 beyond). Encodings whose first-order
/// tracks are not singletons must be rejected.
pub fn mso_oracle(text: &str, max_len: usize, rng: &mut impl Rng) -> OracleStats {
    use origami::mso::{mso_compile_dfa, parse_formula, Sort};
    let base = Alphabet::new(["a", "b"]);
    let f = parse_formula(text).expect("corpus formula parses");
    let sig = f.inferred_signature().expect("signature");
    let dfa = mso_compile_dfa(&f, &base, &sig).expect("compiles");
    let sa = dfa.alphabet().clone();
    let firsts: Vec<usize> = (0..sig.len())
        .filter(|&i| sig[i].sort == Sort::First)
        .collect();
    let seconds: Vec<usize> = (0..sig.len())
        .filter(|&i| sig[i].sort == Sort::Second)
        .collect();
    let mut stats = OracleStats::default();
    for n in 0..=max_len {
        for word in base.words_of_len(n) {
            // Placements of the first-order variables.
            let mut placements: Vec<Vec<usize>> = vec![Vec::new()];
            for _ in &firsts {
                placements = placements
                    .into_iter()
                    .flat_map(|p| (0..n).map(move |q| [p.clone(), vec![q]].concat()))
                    .collect();
            }
            let bits = seconds.len() * n;
            let masks: Vec<u64> = if bits <= 12 {
                (0..1u64 << bits).collect()
            } else {
                (0..256)
                    .map(|_| rng.gen::<u64>() & ((1 << bits) - 1))
                    .collect()
            };
            for place in &placements {
                for &mask in &masks {
                    let mut columns = vec![vec![false; n]; sig.len()];
                    let mut env = Env::default();
                    for (k, &t) in firsts.iter().enumerate() {
                        columns[t][place[k]] = true;
                        env.first.insert(sig[t].name.clone(), place[k]);
                    }
                    for (k, &t) in seconds.iter().enumerate() {
                        for p in 0..n {
                            columns[t][p] = mask >> (k * n + p) & 1 == 1;
                        }
                        env.second.insert(sig[t].name.clone(), columns[t].clone());
                    }
                    let cols: Vec<&[bool]> = columns.iter().map(Vec::as_slice).collect();
                    let got = dfa.accepts(&sa.word(&word, &cols));
                    let want = eval(&f, &base, &word, &mut env);
                    stats.checked += 1;
                    if got != want && stats.discrepancies.len() < 5 {
                        stats.discrepancies.push(format!(
                            "{text} on {} with {columns:?}: automaton {got}",
                            base.render(&word)
                        ));
                    }
                }
            }
            // Malformed first-order tracks.
            for &t in &firsts {
                for _ in 0..4 {
                    let mut columns: Vec<Vec<bool>> = (0..sig.len())
                        .map(|_| (0..n).map(|_| rng.gen()).collect())
                        .collect();
                    if columns[t].iter().filter(|&&b| b).count() == 1 {
                        columns[t] = vec![false; n];
                    }
                    let cols: Vec<&[bool]> = columns.iter().map(Vec::as_slice).collect();
                    stats.checked += 1;
                    if dfa.accepts(&sa.word(&word, &cols)) && stats.discrepancies.len() < 5 {
                        stats
                            .discrepancies
                            .push(format!("{text}: malformed track {t} accepted"));
                    }
                }
            }
        }
    }
    stats
}

/// The block pair of the interleaved words `acaabdacabd`/`aaacbdaacbd`.
pub fn canonical_block_pair() -> (OriginGraph, OriginGraph) {
    let input = vec![0, 0, 0, 1, 0, 0, 1];
    let output = vec![0, 1, 0, 1];
    (
        OriginGraph::new(input.clone(), output.clone(), vec![1, 4, 5, 7]).unwrap(),
        OriginGraph::new(input, output, vec![3, 4, 6, 7]).unwrap(),
    )
}

fn monotone(g: &OriginGraph) -> bool {
    g.orig.windows(2).all(|w| w[0] <= w[1])
}

/// Seeded single-step mutations of the block pair: a moved origin on
/// either side, a flipped input or output letter, or swapped sides. Only
/// interleavable pairs different from the original are kept.
pub fn block_mutations(rng: &mut impl Rng, count: usize) -> Vec<(OriginGraph, OriginGraph)> {
    let original = canonical_block_pair();
    let mut out = Vec::new();
    while out.len() < count {
        let (mut s, mut t) = original.clone();
        let n = s.input.len();
        let m = s.output.len();
        match rng.gen_range(0..5) {
            0 => t.orig[rng.gen_range(0..m)] = rng.gen_range(1..=n),
            1 => s.orig[rng.gen_range(0..m)] = rng.gen_range(1..=n),
            2 => {
                let p = rng.gen_range(0..n);
                s.input[p] ^= 1;
                t.input[p] ^= 1;
            }
            3 => {
                let p = rng.gen_range(0..m);
                s.output[p] ^= 1;
                t.output[p] ^= 1;
            }
            _ => std::mem::swap(&mut s, &mut t),
        }
        if (s.clone(), t.clone()) != original
            && monotone(&s)
            && monotone(&t)
            && !out.contains(&(s.clone(), t.clone()))
        {
            out.push((s, t));
        }
    }
    out
}

/// The builders of the boundedness suite over `a b` with their exact
/// source bound, `None` when unbounded.
pub fn bound_table() -> Vec<(&'static str, origami::resync::Resynchronizer, Option<usize>)> {
    use origami::resync::*;
    let ab = Alphabet::new(["a", "b"]);
    vec![
        ("identity", make_identity(&ab), Some(1)),
        ("pm1", make_pm1(&ab), Some(2)),
        ("shift3", make_shift(&ab, 3), Some(4)),
        ("R_2", make_rk(&ab, 2), Some(5)),
        ("param", make_param_example(&ab), Some(2)),
        ("1st-to-last", make_1st_to_last(&ab), Some(1)),
        ("block", make_block(&ab).unwrap(), Some(1)),
        ("x=first", make_first(&ab), Some(1)),
        ("universal", make_universal(&ab), None),
    ]
}
