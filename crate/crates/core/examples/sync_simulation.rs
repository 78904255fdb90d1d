// Stream random codewords through a noisy channel and count how often the
// marker detector accepts misaligned windows or rejects aligned ones.
//
//     cargo run --release --example sync_simulation

use dss::{comma_free_index, layout_from_dss, simulate_stream, Budget, CodeWindow, Dss, NoiseModel};

fn main() {
    let d = Dss::new(25, vec![vec![1, 2, 3, 4, 6, 15], vec![5, 9, 10, 14, 17, 24]]).unwrap();
    let layout = layout_from_dss(&d, 2).unwrap();

    for noise in ["exact-0", "exact-1", "exact-2", "iid-0.02", "iid-0.1"] {
        let noise: NoiseModel = noise.parse().unwrap();
        let stats = simulate_stream(&layout, 2000, noise, 7).unwrap();
        println!("{}", stats.to_json());
    }

    // every payload word of weight one
    let code: Vec<CodeWindow> = (0..13)
        .map(|i| {
            let mut p = vec![0; 13];
            p[i] = 1;
            layout.encode(&p).unwrap()
        })
        .collect();
    println!(
        "comma-free index of a {}-word subcode: {}",
        code.len(),
        comma_free_index(&code, &Budget::default()).unwrap()
    );
}
