//! Prints h*-vectors of wheel matching polytopes.
//!
//! `cargo run --release --example wheel_table -- 4 7`

use std::time::Instant;

use matchpoly::ehrhart::{hstar_with, EhrhartOptions};
use matchpoly::graph::{make_family, Family};
use matchpoly::polytope::MatchingPolytope;
use matchpoly::Budget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (lo, hi) = match args.as_slice() {
        [] => (4, 6),
        [n] => (*n, *n),
        [lo, hi, ..] => (*lo, *hi),
    };
    for n in lo..=hi {
        let g = make_family(&Family::Wheel(n))?;
        let p = MatchingPolytope::new(&g)?;
        let started = Instant::now();
        let options = EhrhartOptions {
            budget: Budget::unlimited(),
            ..EhrhartOptions::standard()
        };
        let h = hstar_with(&p, &options)?;
        println!("W{n}: {h}  ({:.2?})", started.elapsed());
    }
    Ok(())
}
