//! Transvections, the pairing, and the invariant lattice of a Dehn twist.

use nf_pairing::symplectic::{invariant_sublattice, pair, standard_form, transvection, LatticeVector};

fn main() -> nf_pairing::Result<()> {
    let j = standard_form(2)?;
    println!("J for genus 2:\n{j}");

    let delta = LatticeVector::from_i64(&[1, 0, 1, -1])?;
    let t = transvection(&delta)?;
    println!("T_delta for delta = {delta}:\n{t}");
    println!("det T_delta = {}", t.determinant());

    let x = LatticeVector::from_i64(&[0, 1, 2, 0])?;
    let y = t.apply(&x);
    println!("T(x) = {y}, pair(x, delta) = {}", pair(&x, &delta)?);
    println!("pair(Tx, Ty) = pair(x, y): {}", pair(&t.apply(&x), &t.apply(&delta))? == pair(&x, &delta)?);

    let fixed = invariant_sublattice(&t);
    println!("invariant sublattice has rank {}", fixed.len());
    for v in fixed {
        println!("  {v}");
    }
    Ok(())
}
