//! Checks whether a pair of origin graphs is related by `R_1` and prints the
//! parameter witness.

use origami::resync::{make_rk, pair_in_resync};
use origami::transducer::OriginGraph;
use origami::Alphabet;

fn main() -> origami::Result<()> {
    let ab = Alphabet::new(["a", "b"]);
    let u = ab.parse_compact("aba")?;
    let v = ab.parse_compact("aba")?;
    let old = OriginGraph::new(u.clone(), v.clone(), vec![1, 2, 3])?;
    let new = OriginGraph::new(u, v, vec![3, 2, 1])?;
    for k in 0..=2 {
        match pair_in_resync(&make_rk(&ab, k), &old, &new)? {
            Some(w) => println!("R_{k}: related, params {:?}", w.params),
            None => println!("R_{k}: not related"),
        }
    }
    Ok(())
}
