//! The attached scheme of Cay(Z_13, {1,3,9}): a skew-symmetric pseudocyclic
//! scheme of class 4 satisfying the characterisation conditions for R_1 = (1,2).

use circulant_wdr::circulant::ClassLabel;
use circulant_wdr::scheme::{characterization_conditions, skew_fission_p11_2star};
use circulant_wdr::wdr::is_wdr;

fn main() -> circulant_wdr::Result<()> {
    let c = "13:1,3,9".parse()?;
    let cert = is_wdr(&c)?
        .certificate()
        .expect("13:1,3,9 is weakly distance-regular");
    let s = &cert.scheme;
    print!("{}", s.report());

    let spec = s.spectrum()?;
    println!("multiplicities: {:?}", spec.multiplicities);
    println!("pseudocyclic: {}", s.is_pseudocyclic()?);

    let r1 = s
        .index_of_label(ClassLabel::Distance(1, 2))
        .expect("arc class");
    let rep = characterization_conditions(s, r1)?;
    for a in &rep.assignments {
        println!(
            "R_2 = {}: I = {:?}, J = {:?}, conditions (a,b,c) = ({}, {}, {}), p_11^2* = {}",
            s.label(a.r2),
            a.i_symbols,
            a.j_symbols,
            a.cond_a,
            a.cond_b,
            a.cond_c,
            s.p(r1, r1, a.r2_star)
        );
    }
    for sign in [-1, 1] {
        println!(
            "(|X| + 1 + 2u {} 8v)/16 with (u, v) = (-3, 1): {:?}",
            if sign < 0 { "-" } else { "+" },
            skew_fission_p11_2star(13, -3, 1, sign)
        );
    }
    Ok(())
}
