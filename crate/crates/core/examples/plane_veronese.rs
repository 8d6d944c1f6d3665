//! Prints the gap vectors of the plane Veronese embeddings of degree 2 to 5.

use gapvec_core::variety::veronese;
use gapvec_core::{gap_vector, RankConfig};

fn main() -> gapvec_core::Result<()> {
    let cfg = RankConfig::default();
    for d in 2..=5 {
        let r = gap_vector(&veronese(2, d)?, &cfg)?;
        println!("{}: epsilon = {}, gap = {:?}", r.variety, r.epsilon, r.gap);
    }
    Ok(())
}
