//! Containment up to a resynchronizer, with a counterexample when it fails.

use origami::containment::contains_upto;
use origami::corpus::{t_first, t_last};
use origami::resync::make_1st_to_last;
use origami::transducer::RunCaps;

fn main() -> origami::Result<()> {
    let (first, last) = (t_first(), t_last());
    let (sigma, gamma) = (first.input_alphabet(), first.output_alphabet());
    let r = make_1st_to_last(sigma);
    let caps = RunCaps::new(4, 20)?;
    for (name, t1, t2) in [
        ("last ⊆ R(first)", &last, &first),
        ("first ⊆ R(last)", &first, &last),
    ] {
        let v = contains_upto(t1, t2, &r, 4, caps)?;
        println!(
            "{name}: {}",
            if v.holds() {
                "holds up to length 4"
            } else {
                "fails"
            }
        );
        if let Some(c) = v.counterexample {
            println!(
                "  target {} has {} partner(s)",
                c.target.render(sigma, gamma),
                c.num_partners
            );
        }
    }
    Ok(())
}
