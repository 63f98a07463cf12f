//! Min-max traversal profile and the least `R_k` found by the search.

use origami::containment::{resync_search, traversal_profile, SearchOutcome};
use origami::corpus::{t_one_two, t_two_one};
use origami::transducer::RunCaps;

fn main() -> origami::Result<()> {
    let (t1, t2) = (t_one_two(), t_two_one());
    let caps = RunCaps::new(16, 64)?;
    print!("{}", traversal_profile(&t1, &t2, 6, caps)?.to_text());
    match resync_search(&t1, &t2, 4, 6, caps)? {
        SearchOutcome::Found { k, .. } => println!("contained up to R_{k} on the sweep"),
        SearchOutcome::NotFound { .. } => println!("no R_k with k ≤ 4"),
    }
    Ok(())
}
