//! Two-way distances of a circulant and the partition they induce.
//!
//! cargo run --example two_way_partition -- 12:1,5,9

use circulant_wdr::circulant::{arc_type_set, distances_from_zero, two_way_partition, Circulant};

fn main() -> circulant_wdr::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "12:1,5,9".into());
    let c: Circulant = arg.parse()?;
    let table = distances_from_zero(&c)?;
    println!(
        "{c}: out-degree {}, diameter {}",
        c.out_degree(),
        table.diameter()
    );
    for v in 0..c.n() {
        let (a, b) = table.two_way(v);
        println!("  ∂̃(0,{v:>2}) = ({a},{b})");
    }
    println!("partition: {}", two_way_partition(&c)?);
    println!("arc types T = {:?}", arc_type_set(&c)?);
    Ok(())
}
