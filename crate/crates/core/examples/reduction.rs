//! Builds the tiles and transducers of the reduction for a small machine
//! and sweeps the domino property.

use origami::corpus::grow;
use origami::reduction::{build_tdown, build_tiles, build_tup, domino_sweep};

fn main() -> origami::Result<()> {
    let tiles = build_tiles(&grow());
    print!("{}", tiles.table());
    let (up, down) = (build_tup(&tiles)?, build_tdown(&tiles)?);
    println!(
        "T_up: {} states, T_down: {} states",
        up.num_states(),
        down.num_states()
    );
    let sweep = domino_sweep(&tiles, 6)?;
    println!(
        "{} non-vacuous tile words up to length 6, violation: {:?}",
        sweep.non_vacuous, sweep.violation
    );
    Ok(())
}
