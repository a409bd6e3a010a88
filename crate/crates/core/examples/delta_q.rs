//! F_q and Δ_q for the two arc types of (C_3 × K_4)[C_4] on Z_48.

use circulant_wdr::circulant::{direct_product, lex_product};
use circulant_wdr::constructions::{complete, cycle};
use circulant_wdr::wdr::{check_prop_q3, check_prop_q_gt_3, closed_fq, delta_q, girth, is_wdr};

fn main() -> circulant_wdr::Result<()> {
    let c3k4 = direct_product(&cycle(3)?, &complete(4)?)?;
    let gamma = lex_product(&c3k4, &cycle(4)?)?;
    let cert = is_wdr(&gamma)?.certificate().expect("WDR");
    println!("{gamma}: T = {:?}", cert.types);
    for &q in &cert.types {
        let (_, f0) = closed_fq(&cert, q)?;
        let d = delta_q(&cert, q)?;
        println!("q = {q}: F_q(0) = {f0}, Δ_q = {d}, girth {}", girth(&d)?);
    }
    let r3 = check_prop_q3(&cert)?;
    println!("Δ_3 matches {:?}", r3.matched.map(|t| t.to_string()));
    println!("{:?}", check_prop_q_gt_3(&cert, 4)?);
    Ok(())
}
