//! The rational block resynchronizer on its canonical pair.

use origami::rational::{interleave, make_rational_block, rational_pair_accepts};
use origami::transducer::OriginGraph;

fn main() -> origami::Result<()> {
    let r = make_rational_block()?;
    let (sigma, gamma) = (r.sigma(), r.gamma());
    let input = sigma.parse_compact("aaabaab")?;
    let output = gamma.parse_compact("cdcd")?;
    let source = OriginGraph::new(input.clone(), output.clone(), vec![1, 4, 5, 7])?;
    let target = OriginGraph::new(input, output, vec![3, 4, 6, 7])?;
    println!("source {}", interleave(&source)?.render(sigma, gamma));
    println!("target {}", interleave(&target)?.render(sigma, gamma));
    println!("accepted: {}", rational_pair_accepts(&r, &source, &target)?);
    Ok(())
}
