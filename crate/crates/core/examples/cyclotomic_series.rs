// Build the three cyclotomic series for small n, check them against the
// Levenshtein bound, and print the full parameter table as CSV.
//
//     cargo run --release --example cyclotomic_series

use dss::tables::{table1, to_csv};
use dss::{cyclotomic_classes, scan_prime_forms, verify, PrimeForm};

fn main() {
    for form in PrimeForm::ALL {
        let ns = scan_prime_forms(form, 10);
        println!("{form}: prime for n in {ns:?}");
    }

    let d = PrimeForm::Quartic.construct(1).unwrap();
    let t = cyclotomic_classes(17, 4).unwrap();
    println!("mod 17, generator {}: C_0 = {:?}, C_2 = {:?}", t.generator(), t.class(0), t.class(2));
    let r = verify(&d).unwrap();
    println!(
        "{}: index {}, Levenshtein bound {:.3}, equality {}",
        d.provenance(),
        r.index,
        r.levenshtein_bound.unwrap(),
        r.meets_levenshtein_equality
    );

    print!("{}", to_csv(&table1().unwrap()));
}
