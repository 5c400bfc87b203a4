//! Generates a random pencil with two parabolic cocycles and compares the
//! cup product with the degree, printing the report.
//!
//! cargo run --example verify_theorem -- [genus] [seed]

use std::sync::Arc;

use nf_pairing::cohomology::random_parabolic;
use nf_pairing::pencil::PencilModel;
use nf_pairing::poincare_degree::verify_theorem;
use nf_pairing::random::Rng;
use nf_pairing::symplectic::Ring;

fn main() -> nf_pairing::Result<()> {
    let mut args = std::env::args().skip(1);
    let genus: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let mut rng = Rng::from_seed(seed);
    let p = Arc::new(PencilModel::random_instance(genus, 2 * genus as usize + 1, rng.next_u64())?);
    let (c1, a1) = random_parabolic(&p, Ring::Integers, &mut rng);
    let (c2, a2) = random_parabolic(&p, Ring::Integers, &mut rng);
    let report = verify_theorem(&c1, &a1, &c2, &a2, 4, Some(seed))?;
    print!("{}", report.to_json());
    Ok(())
}
