//! The distance module of a WDR circulant as an S-ring: A-subgroups, radical,
//! multiplier group and the tensor decomposition of the quotient by the radical.
//!
//! cargo run --example schur_ring -- 12:1,7,10

use circulant_wdr::sring::{decompose, is_schur_partition, orbit_sring, quotient, summary};
use circulant_wdr::wdr::is_wdr;

fn main() -> circulant_wdr::Result<()> {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "12:1,7,10".into());
    let cert = match is_wdr(&arg.parse()?)?.certificate() {
        Some(c) => c,
        None => {
            println!("{arg} is not weakly distance-regular");
            return Ok(());
        }
    };
    let s = is_schur_partition(&cert.partition).expect("a scheme partition is a Schur partition");
    print!("{}", summary(&s));
    if let Ok(dec) = decompose(&s) {
        for (i, f) in dec.factors.iter().enumerate() {
            println!("  factor {i}: Z_{} {}", f.order, f.sring);
        }
        let q = quotient(&s, &dec.radical)?;
        println!(
            "  tensor product reproduces A/rad(A): {}",
            dec.reconstruct()?.same_classes(q.partition())
        );
    }

    let orbit = orbit_sring(13, &[3])?;
    println!("orbit S-ring O(<3>, Z_13): {orbit}");
    Ok(())
}
