//! Strict Hadwiger configurations and unit balls packed in a ball of
//! radius 5.

use besicover::search::{
    construct_strict_hadwiger, pack_unit_balls_radius5, search_strict_hadwiger, verify_radius5_packing,
    verify_strict_hadwiger, SearchConfig,
};
use besicover::Result;

fn main() -> Result<()> {
    for dim in 1..=3 {
        let f = construct_strict_hadwiger(dim)?;
        println!("H*({dim}) >= {} ({:?})", f.len(), verify_strict_hadwiger(&f));
    }
    let h4 = search_strict_hadwiger(4, &SearchConfig::with_seed(0).with_budget(200_000))?;
    println!("H*(4) >= {} from an annealed code (feasible {})", h4.score, h4.feasible);

    for dim in 1..=3 {
        let p = pack_unit_balls_radius5(dim, &SearchConfig::default())?;
        println!("beta({dim}) >= {} ({:?})", p.score, verify_radius5_packing(&p.best));
    }
    Ok(())
}
