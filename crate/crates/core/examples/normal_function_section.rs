//! Builds the piecewise-linear section of a cocycle on the fundamental
//! polygon, evaluates it, and checks the edge gluing maps.

use nf_pairing::io::Instance;
use nf_pairing::linalg::Rat;
use nf_pairing::normal_function::{build_extended_section, PolygonPoint};

fn main() -> nf_pairing::Result<()> {
    let inst = Instance::builtin_elliptic12();
    let entry = &inst.cocycles[0];
    let a = entry.potentials.as_ref().expect("fixture has potentials");
    let s = build_extended_section(&entry.cocycle, a)?;

    println!("corner values:");
    for (k, v) in s.corner_values().iter().enumerate() {
        println!("  S_{k} = {v}");
    }
    println!("puncture values:");
    for i in 0..s.pencil().punctures() {
        println!("  P_{} = {}  (fiber value {:?})", i + 1, s.puncture_value(i), s.extend_at_puncture(i, Some(a))?);
    }

    let half = Rat::new(1.into(), 2.into());
    let p = PolygonPoint::on_spoke(1, half)?;
    println!("value halfway to corner 1: {}", s.value_at(&p)?);

    for i in 0..3 {
        let g = s.edge_identification(i)?;
        let image = g.apply(s.puncture_value(i));
        println!("edge {i}: puncture value fixed by its gluing map: {}", &image == s.puncture_value(i));
    }

    let fine = s.at_level(2);
    println!("level 2 refinement: {} triangles", fine.polygon().triangles().len());
    Ok(())
}
