//! Multiplier equivalence versus isomorphism, and canonical certificates.

use circulant_wdr::canon::{canonical_form, is_isomorphic, multiplier_equivalence};
use circulant_wdr::circulant::Circulant;

fn main() -> circulant_wdr::Result<()> {
    let pairs = [
        ("13:1,3,9", "13:2,5,6"),
        ("12:1,7,10", "12:5,11,2"),
        ("8:1,2", "8:1,3"),
    ];
    for (a, b) in pairs {
        let (a, b): (Circulant, Circulant) = (a.parse()?, b.parse()?);
        println!(
            "{a} vs {b}: multiplier {:?}, isomorphic {}",
            multiplier_equivalence(&a, &b),
            is_isomorphic(&a, &b)
        );
    }
    let c: Circulant = "7:1,2,4".parse()?;
    println!("canon({c}) = {}", canonical_form(&c));
    Ok(())
}
