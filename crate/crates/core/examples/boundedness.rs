//! Decides boundedness for the canned resynchronizers and confirms each
//! answer with a sweep.

use origami::resync::{
    bounded_by, is_bounded, make_identity, make_pm1, make_shift, make_universal,
};
use origami::Alphabet;

fn main() -> origami::Result<()> {
    let ab = Alphabet::new(["a", "b"]);
    let rs = [
        ("identity", make_identity(&ab), 1),
        ("pm1", make_pm1(&ab), 2),
        ("shift3", make_shift(&ab, 3), 4),
        ("universal", make_universal(&ab), 3),
    ];
    for (name, r, k) in rs {
        let decided = is_bounded(&r);
        let sweep = bounded_by(&r, k, 5)?;
        println!(
            "{name}: bounded = {}, at most {k} sources up to length 5: {}",
            decided.is_bounded(),
            sweep.holds()
        );
    }
    Ok(())
}
