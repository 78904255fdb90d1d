// Lift a frequency hopping sequence over Z_7 by the Fano difference set to a
// 21-element family over Z_49, then repeat with a cyclotomic sequence.
//
//     cargo run --example fhs_embedding

use dss::{cyclotomic_fhs, fhs_ds_product, fhs_embedding_product, identity_fhs, paley_dss, Dss};

fn main() {
    let fano = Dss::new(7, vec![vec![1, 2, 4]]).unwrap();
    let x = identity_fhs(7).unwrap();
    let lifted = fhs_ds_product(&x, &fano).unwrap();
    let d = &lifted.dss;
    println!(
        "fano lift: v={} q={} redundancy={} rate={} index={} (guaranteed >= {})",
        d.v(),
        d.q(),
        d.redundancy(),
        d.rate(),
        lifted.report.index,
        lifted.predicted_index
    );

    let x = cyclotomic_fhs(5, 2).unwrap();
    println!("cyclotomic sequence mod 5: {:?}", x.symbols());
    let lifted = fhs_embedding_product(&x, &paley_dss(7, 3).unwrap()).unwrap();
    println!(
        "embedded over Z_{}: {} sets, rate {}, index {} (guaranteed >= {})",
        lifted.dss.v(),
        lifted.dss.q(),
        lifted.dss.rate(),
        lifted.report.index,
        lifted.predicted_index
    );
}
