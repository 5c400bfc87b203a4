//! Gram matrix of the pairing on the integral parabolic classes of the
//! elliptic fixture.

use std::sync::Arc;

use nf_pairing::cohomology::parabolic_basis;
use nf_pairing::pencil::PencilModel;
use nf_pairing::poincare_degree::degree_of_pair;

fn main() -> nf_pairing::Result<()> {
    let p = Arc::new(PencilModel::builtin_elliptic12());
    let basis = parabolic_basis(&p);
    println!("{} basis cocycles", basis.len());
    for (c1, a1) in &basis {
        let row = basis
            .iter()
            .map(|(c2, a2)| degree_of_pair(c1, a1, c2, a2).map(|d| format!("{d:>3}")))
            .collect::<nf_pairing::Result<Vec<_>>>()?;
        println!("{}", row.join(" "));
    }
    Ok(())
}
