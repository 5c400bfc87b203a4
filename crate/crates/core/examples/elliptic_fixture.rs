//! The rational elliptic surface fixture: twelve alternating twists and
//! its frozen pair of parabolic cocycles.

use nf_pairing::cohomology::{cocycle_basis, cup_pairing_oracle};
use nf_pairing::io::Instance;
use nf_pairing::poincare_degree::degree_of_pair;
use nf_pairing::symplectic::Ring;

fn main() -> nf_pairing::Result<()> {
    let inst = Instance::builtin_elliptic12();
    let p = &inst.pencil;
    println!("genus {}, {} punctures, lefschetz {}", p.genus(), p.punctures(), p.is_lefschetz());
    if let Some(cycles) = p.vanishing_cycles() {
        let list: Vec<String> = cycles.iter().map(|d| d.to_string()).collect();
        println!("vanishing cycles: {}", list.join(" "));
    }
    println!("dim Z^1 = {}", cocycle_basis(p, Ring::Rationals).len());

    let pairs: Vec<_> = inst
        .cocycles
        .iter()
        .map(|e| (e.cocycle.clone(), e.potentials.clone().expect("fixture has potentials")))
        .collect();
    for (i, (c1, a1)) in pairs.iter().enumerate() {
        for (j, (c2, a2)) in pairs.iter().enumerate() {
            println!(
                "<{i},{j}>  cup = {:>3}   degree = {:>3}",
                cup_pairing_oracle(c1, a1, c2, a2)?,
                degree_of_pair(c1, a1, c2, a2)?
            );
        }
    }
    Ok(())
}
