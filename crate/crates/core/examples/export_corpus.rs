//! Writes the canned transducers, machines, resynchronizers and graphs as
//! text files, in the formats the `origami` binary reads.
//!
//! ```text
//! cargo run --example export_corpus -- crates/core/examples/data
//! ```

use std::path::PathBuf;

use origami::corpus;
use origami::rational::{deinterleave, make_rational_block, InterleavedWord};
use origami::resync::{
    make_1st_to_last, make_first, make_identity, make_param_example, make_pm1, make_rk, make_shift,
    make_universal, write_resynchronizer, Resynchronizer,
};
use origami::transducer::{write_transducer, Kind};
use origami::Alphabet;

fn main() -> origami::Result<()> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "examples/data".into()),
    );
    std::fs::create_dir_all(&dir)?;
    let write = |name: &str, body: String| -> origami::Result<()> {
        std::fs::write(dir.join(name), body)?;
        println!("{}", dir.join(name).display());
        Ok(())
    };

    for (name, t) in corpus::transducers() {
        let ext = if t.kind() == Kind::OneWay {
            "1nt"
        } else {
            "2nt"
        };
        let stem = name.trim_start_matches("T_").to_lowercase();
        write(&format!("{stem}.{ext}"), write_transducer(&t))?;
    }
    write("halt2.tm", corpus::halt2().to_text())?;
    write("grow.tm", corpus::grow().to_text())?;

    let ab = Alphabet::new(["a", "b"]);
    let unary = Alphabet::new(["a"]);
    let resyncs: [(&str, Resynchronizer); 9] = [
        ("identity.rsync", make_identity(&ab)),
        ("univ.rsync", make_universal(&ab)),
        ("pm1.rsync", make_pm1(&ab)),
        ("shift3.rsync", make_shift(&ab, 3)),
        ("param.rsync", make_param_example(&ab)),
        ("first.rsync", make_first(&ab)),
        ("1st-to-last.rsync", make_1st_to_last(&ab)),
        ("r2.rsync", make_rk(&ab, 2)),
        ("r1-unary.rsync", make_rk(&unary, 1)),
    ];
    for (name, r) in resyncs {
        write(name, write_resynchronizer(&r)?)?;
    }

    let block = make_rational_block()?;
    write("block.rrat", block.to_text())?;
    let (s, g) = (block.sigma(), block.gamma());
    for (name, w) in [
        ("block-source.graph", "acaabdacabd"),
        ("block-target.graph", "aaacbdaacbd"),
    ] {
        let graph = deinterleave(&InterleavedWord::parse(w, s, g)?)?;
        write(name, graph.to_text(s, g))?;
    }
    Ok(())
}
