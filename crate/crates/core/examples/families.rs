//! The one-type WDR families for a range of orders, with canonical forms.
//!
//! cargo run --example families -- 24

use circulant_wdr::constructions::expected_one_type_family;

fn main() -> circulant_wdr::Result<()> {
    let n_max: u32 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(16);
    for n in 3..=n_max {
        for m in expected_one_type_family(n)? {
            println!("{n:>3}  {:<22} {}", m.tag.to_string(), m.circulant);
        }
    }
    Ok(())
}
