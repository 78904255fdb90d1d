// Combine two Paley-type families over coprime moduli through the CRT and
// compare the measured spectrum with the per-class prediction.
//
//     cargo run --example direct_product

use dss::{
    crt_map, direct_product, outer_spectrum, paley_dss, predict_hyperplane_product, predict_paley_product,
};

fn main() {
    let a = paley_dss(7, 3).unwrap();
    let b = paley_dss(11, 5).unwrap();
    let product = direct_product(&a, &b).unwrap();
    let d = &product.dss;
    println!(
        "{}: v={} q={} rate={} index={} (predicted {})",
        d.provenance(),
        d.v(),
        d.q(),
        d.rate(),
        product.report.index,
        product.predicted_index
    );

    let crt = crt_map(7, 11).unwrap();
    let spectrum = outer_spectrum(d).unwrap();
    let mut by_class = std::collections::BTreeMap::new();
    for (x, &count) in spectrum.counts.iter().enumerate().skip(1) {
        let (u, w) = crt.split(x as u64);
        let class = match (u, w) {
            (0, _) => "(0, b)",
            (_, 0) => "(a, 0)",
            _ => "(a, b)",
        };
        by_class.entry(class).or_insert_with(std::collections::BTreeSet::new).insert(count);
    }
    for (class, counts) in by_class {
        println!("  differences {class}: counts {counts:?}");
    }

    let p = predict_paley_product(19, 3, 23, 11).unwrap();
    println!(
        "paley 19x23 predicted: v={} m={} q={} index={} (branch minimum {})",
        p.v, p.m, p.q, p.index, p.min_index
    );
    let h = predict_hyperplane_product(2, 2, 3, 2).unwrap();
    println!("hyperplane (2,2)x(3,2) predicted: v={} m={} q={} index={}", h.v, h.m, h.q, h.index);
}
