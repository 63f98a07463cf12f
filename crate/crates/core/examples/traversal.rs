//! Traversal counts between two origin graphs and the greedy labelling
//! that places the pair in `R_k`.

use origami::resync::{make_rk, verify_witness, ResyncWitness};
use origami::transducer::OriginGraph;
use origami::traversal::{greedy_label, traversal_report};
use origami::Alphabet;

fn main() -> origami::Result<()> {
    let ab = Alphabet::new(["a", "b"]);
    let u = ab.parse_compact("aaaa")?;
    let old = OriginGraph::new(u.clone(), u.clone(), vec![1, 2, 3, 4])?;
    let new = OriginGraph::new(u.clone(), u, vec![4, 3, 2, 1])?;
    let report = traversal_report(&old, &new)?;
    print!("{}", report.to_table());
    let k = report.max_count;
    let labels = greedy_label(&old, &new, k)?;
    println!("right labels {:?}", labels.right);
    println!("left labels  {:?}", labels.left);
    let w = ResyncWitness {
        params: labels.to_params(4),
        out_params: Vec::new(),
    };
    println!(
        "accepted by R_{k}: {}",
        verify_witness(&make_rk(&ab, k), &old, &new, &w)?
    );
    Ok(())
}
