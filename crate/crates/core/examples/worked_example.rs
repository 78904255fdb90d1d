// Verify the two-set family over Z_25 and print the marker pattern it
// induces on a block of 25 binary symbols.
//
//     cargo run --example worked_example

use dss::{layout_from_dss, outer_spectrum, verify, Dss};

fn main() {
    let d = Dss::new(25, vec![vec![1, 2, 3, 4, 6, 15], vec![5, 9, 10, 14, 17, 24]])
        .expect("valid family");
    let report = verify(&d).expect("within budget");
    println!(
        "v={} q={} redundancy={} rate={} index={} perfect={} regular={}",
        report.v, report.q, report.redundancy, report.rate, report.index, report.is_perfect, report.is_regular
    );
    println!("outer spectrum: {:?}", &outer_spectrum(&d).unwrap().counts[1..]);

    let layout = layout_from_dss(&d, 2).unwrap();
    println!("pattern:   {}", layout.pattern());
    println!("tolerates: {} substitution(s) per window", layout.tolerance());

    let payload = vec![1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0];
    let word = layout.encode(&payload).unwrap();
    let shown: String = word.symbols().iter().map(|s| char::from(b'0' + *s as u8)).collect();
    println!("codeword:  {shown}");
    assert_eq!(layout.decode(&word).unwrap(), payload);
}
