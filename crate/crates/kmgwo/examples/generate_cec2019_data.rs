//! Writes a seeded stand-in CEC2019 data set (shift vectors and orthonormal
//! rotation matrices for F4-F10) in the suite's file format.
//!
//! Usage: cargo run -p kmgwo --example generate_cec2019_data -- <DIR> [SEED]

use std::path::PathBuf;

use kmgwo::problems::cec2019;

fn main() {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "data/cec2019".to_string()));
    let seed: u64 = args
        .next()
        .map(|s| s.parse().expect("seed must be a u64"))
        .unwrap_or(2019);
    let data = cec2019::generate_stand_in_data(seed);
    cec2019::write_data(&data, &dir).expect("writing data files");
    println!(
        "wrote shift/rotation files for F4-F10 to {} (seed {seed})",
        dir.display()
    );
}
