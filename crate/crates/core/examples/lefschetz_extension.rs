//! Extension over nodal fibers on a Lefschetz pencil: parabolic cocycles
//! extend at every puncture, generic ones do not.

use std::sync::Arc;

use nf_pairing::cohomology::{non_parabolic_punctures, random_cocycle, random_parabolic};
use nf_pairing::normal_function::{build_extended_section, build_section, Fiber};
use nf_pairing::pencil::PencilModel;
use nf_pairing::random::Rng;
use nf_pairing::symplectic::Ring;

fn main() -> nf_pairing::Result<()> {
    let p = Arc::new(PencilModel::random_lefschetz(2, 5)?);
    println!("genus {} with {} nodal fibers", p.genus(), p.punctures());
    for i in 0..3 {
        let f = Fiber::nodal(i, p.monodromy(i));
        println!("fiber {i}: rank {} corank {}", f.rank(), f.corank());
    }

    let mut rng = Rng::from_seed(9);
    let (c, a) = random_parabolic(&p, Ring::Integers, &mut rng);
    let s = build_extended_section(&c, &a)?;
    println!("parabolic cocycle extends everywhere: {}", s.is_fully_extended());

    let generic = random_cocycle(&p, Ring::Integers, &mut rng);
    let bad = non_parabolic_punctures(&generic, Ring::Integers);
    println!("generic cocycle fails to extend at {} punctures", bad.len());
    if let Some(&i) = bad.first() {
        let s = build_section(&generic)?;
        println!("extend at {i}: {}", s.extend_at_puncture(i, None).unwrap_err());
    }
    Ok(())
}
