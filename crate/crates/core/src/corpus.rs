//! The example transducers and machines used throughout the crate.
//!
//! All transducers over `a` read and write the single letter `a`.
//! `t_first`/`t_last` compute the full relation `{a,b}* × {c,d}*` and put
//! every origin on the first (resp. last) input position.

use crate::alphabet::Alphabet;
use crate::reduction::TuringMachine;
use crate::transducer::{Input, Kind, Move, Transducer};

fn unary() -> Alphabet {
    Alphabet::new(["a"])
}

fn build(
    kind: Kind,
    sigma: Alphabet,
    gamma: Alphabet,
    f: impl FnOnce(&mut Transducer),
) -> Transducer {
    let mut t = Transducer::new(kind, sigma, gamma);
    f(&mut t);
    t
}

/// Two-way identity: copy left to right, then accept on ⊣.
pub fn t_id() -> Transducer {
    build(Kind::TwoWay, unary(), unary(), |t| {
        t.set_initial("p0");
        t.set_final("p1");
        t.add("p0", Input::Letter(0), &[0], Some(Move::Right), "p0")
            .unwrap();
        t.add("p0", Input::End, &[], Some(Move::Left), "p1")
            .unwrap();
    })
}

/// Two-way reversal: walk to ⊣ silently, copy right to left, accept on ⊢.
pub fn t_rev() -> Transducer {
    build(Kind::TwoWay, unary(), unary(), |t| {
        t.set_initial("q0");
        t.state("q1");
        t.set_final("q2");
        t.add("q0", Input::Letter(0), &[], Some(Move::Right), "q0")
            .unwrap();
        t.add("q0", Input::End, &[], Some(Move::Left), "q1")
            .unwrap();
        t.add("q1", Input::Letter(0), &[0], Some(Move::Left), "q1")
            .unwrap();
        t.add("q1", Input::Begin, &[], Some(Move::Right), "q2")
            .unwrap();
    })
}

fn split(first: &[usize], second: &[usize]) -> Transducer {
    build(Kind::OneWay, unary(), unary(), |t| {
        t.set_initial("p0");
        t.set_final("p1");
        t.add("p0", Input::Letter(0), first, None, "p0").unwrap();
        t.add("p0", Input::Eps, &[], None, "p1").unwrap();
        t.add("p1", Input::Letter(0), second, None, "p1").unwrap();
    })
}

/// Copies a prefix once and the remaining suffix twice.
pub fn t_one_two() -> Transducer {
    split(&[0], &[0, 0])
}

/// Copies a prefix twice and the remaining suffix once.
pub fn t_two_one() -> Transducer {
    split(&[0, 0], &[0])
}

fn full(outputs_first: bool) -> Transducer {
    let sigma = Alphabet::new(["a", "b"]);
    let gamma = Alphabet::new(["c", "d"]);
    build(Kind::OneWay, sigma, gamma, |t| {
        t.set_initial("p0");
        t.set_final("p1");
        let (write, read) = if outputs_first {
            ("p0", "p1")
        } else {
            ("p1", "p0")
        };
        for g in 0..2 {
            t.add(write, Input::Eps, &[g], None, write).unwrap();
        }
        for a in 0..2 {
            t.add(read, Input::Letter(a), &[], None, read).unwrap();
        }
        t.add("p0", Input::Eps, &[], None, "p1").unwrap();
    })
}

/// Full relation, all output emitted before reading: origins on position 1.
pub fn t_first() -> Transducer {
    full(true)
}

/// Full relation, all output emitted after reading: origins on the last position.
pub fn t_last() -> Transducer {
    full(false)
}

/// All pairs `(a^n, a^m)`, every output produced before reading.
pub fn t_fast() -> Transducer {
    build(Kind::OneWay, unary(), unary(), |t| {
        t.set_initial("p0");
        t.set_final("p1");
        t.add("p0", Input::Eps, &[0], None, "p0").unwrap();
        t.add("p0", Input::Eps, &[], None, "p1").unwrap();
        t.add("p1", Input::Letter(0), &[], None, "p1").unwrap();
    })
}

/// All pairs `(a^n, a^m)`, outputs produced in step with the input.
///
/// `q0` is accepting so that `m = n` is produced as well.
pub fn t_slow() -> Transducer {
    build(Kind::OneWay, unary(), unary(), |t| {
        t.set_initial("q0");
        t.set_final("q0");
        t.set_final("q1");
        t.set_final("q2");
        t.add("q0", Input::Letter(0), &[0], None, "q0").unwrap();
        t.add("q0", Input::Letter(0), &[], None, "q1").unwrap();
        t.add("q1", Input::Letter(0), &[], None, "q1").unwrap();
        t.add("q0", Input::Eps, &[0], None, "q2").unwrap();
        t.add("q2", Input::Eps, &[0], None, "q2").unwrap();
    })
}

/// Every corpus transducer with its conventional name.
pub fn transducers() -> Vec<(&'static str, Transducer)> {
    vec![
        ("T_id", t_id()),
        ("T_rev", t_rev()),
        ("T_one-two", t_one_two()),
        ("T_two-one", t_two_one()),
        ("T_first", t_first()),
        ("T_last", t_last()),
        ("T_fast", t_fast()),
        ("T_slow", t_slow()),
    ]
}

/// Writes `a`, then `b` one cell to the left, and halts in `q2`: the tape
/// ends as `ab` after two steps.
pub fn halt2() -> TuringMachine {
    TuringMachine::parse(
        "states: q0 q1 q2\nalphabet: B a b\ninitial: q0\nfinal: q2\nq0,B -> q1,a,R\nq1,B -> q2,b,L\n",
    )
    .expect("well-formed machine")
}

/// Writes `a` and moves right forever.
pub fn grow() -> TuringMachine {
    TuringMachine::parse("states: q0 qf\nalphabet: B a\ninitial: q0\nfinal: qf\nq0,B -> q0,a,R\n")
        .expect("well-formed machine")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transducer::{run_origin_graphs, RunCaps};

    #[test]
    fn id_and_rev_on_a6() {
        let caps = RunCaps::new(10, 50).unwrap();
        let u = vec![0; 6];
        let id = run_origin_graphs(&t_id(), &u, caps).unwrap();
        assert_eq!(id.graphs.len(), 1);
        assert_eq!(id.graphs[0].orig, vec![1, 2, 3, 4, 5, 6]);
        let rev = run_origin_graphs(&t_rev(), &u, caps).unwrap();
        assert_eq!(rev.graphs.len(), 1);
        assert_eq!(rev.graphs[0].orig, vec![6, 5, 4, 3, 2, 1]);
        assert!(t_id().is_deterministic() && t_rev().is_deterministic());
    }

    #[test]
    fn one_two_on_a2() {
        let caps = RunCaps::new(10, 50).unwrap();
        let gs = run_origin_graphs(&t_one_two(), &[0, 0], caps).unwrap();
        let mut origs: Vec<Vec<usize>> = gs.graphs.iter().map(|g| g.orig.clone()).collect();
        origs.sort();
        assert_eq!(origs, vec![vec![1, 1, 2, 2], vec![1, 2], vec![1, 2, 2]]);
    }

    #[test]
    fn slow_produces_every_length() {
        let caps = RunCaps::new(6, 20).unwrap();
        let gs = run_origin_graphs(&t_slow(), &[0, 0, 0], caps).unwrap();
        let lens: Vec<usize> = gs.graphs.iter().map(|g| g.output.len()).collect();
        assert_eq!(lens, vec![0, 1, 2, 3, 4, 5, 6]);
        assert!(gs.pruned);
    }
}
