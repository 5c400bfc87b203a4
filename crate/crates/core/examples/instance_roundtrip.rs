//! Writes an instance document to disk and reads it back.

use std::sync::Arc;

use nf_pairing::cohomology::random_parabolic;
use nf_pairing::io::Instance;
use nf_pairing::pencil::PencilModel;
use nf_pairing::random::Rng;
use nf_pairing::symplectic::Ring;

fn main() -> nf_pairing::Result<()> {
    let mut rng = Rng::from_seed(42);
    let p = Arc::new(PencilModel::random_instance(1, 3, rng.next_u64())?);
    let mut inst = Instance::new(p.clone(), Some(42));
    let (c, a) = random_parabolic(&p, Ring::Rationals, &mut rng);
    inst.push(c, Some(a));

    let path = std::env::temp_dir().join("nf-pairing-roundtrip.json");
    inst.write(&path)?;
    let back = Instance::read(&path)?;
    println!("{}", std::fs::read_to_string(&path).map_err(|e| nf_pairing::Error::Io(e.to_string()))?);
    println!("round trip equal: {}", back == inst);
    Ok(())
}
