// Compare the two redundancy lower bounds over a few parameter sets and
// check which constructed families sit on the Levenshtein bound.
//
//     cargo run --example bounds

use dss::verify::levenshtein_min_redundancy;
use dss::{levenshtein_bound, paley_dss, sextic_pair, verify, wang_bound};

fn main() {
    println!("{:>5} {:>2} {:>4} {:>11} {:>5}", "v", "q", "rho", "levenshtein", "wang");
    for (v, q, rho) in [(17, 2, 2), (25, 2, 3), (77, 15, 2), (109, 2, 6), (500, 8, 20)] {
        println!(
            "{v:>5} {q:>2} {rho:>4} {:>11.3} {:>5}",
            levenshtein_bound(v, q, rho).unwrap(),
            wang_bound(v, q, rho).unwrap()
        );
    }

    for d in [paley_dss(19, 3).unwrap(), paley_dss(23, 11).unwrap(), sextic_pair(1).unwrap()] {
        let r = verify(&d).unwrap();
        println!(
            "{}: redundancy {} vs minimum {} -> optimal: {}",
            d.provenance(),
            r.redundancy,
            levenshtein_min_redundancy(r.v, r.q as u64, r.index).unwrap(),
            r.meets_levenshtein_equality
        );
    }
}
