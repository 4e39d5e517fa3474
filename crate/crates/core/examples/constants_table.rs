//! Known values of the covering constants next to achieved lower bounds.
//!
//! `cargo run --release --example constants_table -- 10000000` raises the
//! search budget.

use besicover::search::{check_chain, constants_markdown, constants_report, SearchConfig};
use besicover::Result;

fn main() -> Result<()> {
    let budget = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let rows = constants_report(&[1, 2, 3, 4], &SearchConfig::default().with_budget(budget))?;
    print!("{}", constants_markdown(&rows));
    for c in check_chain(&rows) {
        println!("n = {}: known chain {}, achieved chain {}", c.dim, c.paper, c.achieved);
    }
    Ok(())
}
