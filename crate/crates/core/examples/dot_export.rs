//! Graphviz output for a transducer and an origin-graph pair.

use origami::corpus::t_rev;
use origami::dot::{pair_to_dot, transducer_to_dot};
use origami::transducer::OriginGraph;

fn main() -> origami::Result<()> {
    let t = t_rev();
    print!("{}", transducer_to_dot(&t));
    let (sigma, gamma) = (t.input_alphabet(), t.output_alphabet());
    let u = sigma.parse_compact("aa")?;
    let v = gamma.parse_compact("aa")?;
    let source = OriginGraph::new(u.clone(), v.clone(), vec![2, 1])?;
    let target = OriginGraph::new(u, v, vec![1, 2])?;
    print!("{}", pair_to_dot(&source, &target, sigma, gamma)?);
    Ok(())
}
