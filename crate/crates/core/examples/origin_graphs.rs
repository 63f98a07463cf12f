//! Origin graphs of the identity and reverse transducers on a short word.

use origami::corpus::{t_id, t_rev};
use origami::transducer::{run_origin_graphs, RunCaps};

fn main() -> origami::Result<()> {
    let caps = RunCaps::new(16, 64)?;
    for t in [t_id(), t_rev()] {
        let (sigma, gamma) = (t.input_alphabet(), t.output_alphabet());
        let u = sigma.parse_compact("aaa")?;
        for g in run_origin_graphs(&t, &u, caps)?.graphs {
            println!("{}", g.render(sigma, gamma));
            print!("{}", g.to_text(sigma, gamma));
        }
    }
    Ok(())
}
