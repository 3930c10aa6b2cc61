use chainring::presentation::certify::{certify, CertifyBounds};
use chainring::presentation::ring::ChainRing;
use chainring::sweep::{enumerate_presentations, SweepParams};

fn main() {
    let params = SweepParams {
        ps: vec![2],
        ds: vec![2],
        max_s: 3,
        max_r: 4,
        order_cap: 4096,
    };
    let all = enumerate_presentations(&params);
    eprintln!("{} presentations", all.len());
    for pres in all {
        let tag = serde_json::to_string(&pres).unwrap();
        let result = std::panic::catch_unwind(|| {
            let ring = ChainRing::new(pres.clone()).unwrap();
            certify(&ring, &CertifyBounds::sweep());
        });
        if result.is_err() {
            println!("PANIC at {tag}");
            return;
        }
    }
    println!("no panic in certify; trying table builds");
}
