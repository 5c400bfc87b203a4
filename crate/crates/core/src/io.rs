//! Instance documents: a pencil plus cocycles, as JSON with exact scalars
//! written as strings (`"3"`, `"-1/2"`). Matrices and cycles are plain
//! integer arrays.

use std::path::Path;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cohomology::{ParabolicData, TwistedCocycle};
use crate::error::{Error, Result};
use crate::linalg::{Int, Matrix, Rat};
use crate::pencil::PencilModel;
use crate::symplectic::{is_symplectic, LatticeVector, RatVector, Ring, SymplecticMatrix, Vector};

/// Version tag of the conventions (sign of `J`, transvections, polygon
/// orientation, global sign) embedded in every document.
pub const CONVENTION: &str = "conventions-v1";

/// Coefficients `λ_i` of the two fixture cocycles on the elliptic pencil.
pub const ELLIPTIC12_FIXTURE: [[i64; 12]; 2] = [
    [1, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub convention: String,
    pub genus: i64,
    pub punctures: usize,
    pub lefschetz: bool,
    pub monodromies: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vanishing_cycles: Option<Vec<Vec<i64>>>,
    pub cocycles: Vec<CocycleDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDocument {
    pub ring: Ring,
    pub values: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potentials: Option<Vec<Vec<String>>>,
}

/// Pencil data that determines the hash of a pencil.
#[derive(Serialize)]
struct PencilKey<'a> {
    genus: i64,
    monodromies: &'a [Vec<Vec<i64>>],
    vanishing_cycles: &'a Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceCocycle {
    pub cocycle: TwistedCocycle,
    pub potentials: Option<ParabolicData>,
}

/// A validated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub pencil: Arc<PencilModel>,
    pub cocycles: Vec<InstanceCocycle>,
    pub seed: Option<u64>,
}

fn int_to_i64(x: &Int) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InvalidParameter(format!("integer {x} does not fit in 64 bits")))
}

fn matrix_to_rows(m: &SymplecticMatrix) -> Result<Vec<Vec<i64>>> {
    m.matrix()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(int_to_i64).collect())
        .collect()
}

fn lattice_to_row(v: &LatticeVector) -> Result<Vec<i64>> {
    v.coords().iter().map(int_to_i64).collect()
}

fn vector_to_strings(v: &RatVector) -> Vec<String> {
    v.coords().iter().map(Rat::to_string).collect()
}

fn parse_rat(s: &str) -> Result<Rat> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

fn parse_vector(v: &[String]) -> Result<RatVector> {
    Vector::new(v.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?)
}

fn parse_vectors(vs: &[Vec<String>]) -> Result<Vec<RatVector>> {
    vs.iter().map(|v| parse_vector(v)).collect()
}

impl CocycleDocument {
    pub fn from_cocycle(c: &TwistedCocycle, a: Option<&ParabolicData>) -> Self {
        CocycleDocument {
            ring: c.ring(),
            values: c.values().iter().map(vector_to_strings).collect(),
            potentials: a.map(|a| a.potentials().iter().map(vector_to_strings).collect()),
        }
    }

    /// SHA-256 of the compact JSON form.
    pub fn hash(&self) -> String {
        sha256_hex(&serde_json::to_string(self).expect("serializable"))
    }
}

fn sha256_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl InstanceDocument {
    pub fn from_instance(instance: &Instance) -> Result<Self> {
        let p = &instance.pencil;
        Ok(InstanceDocument {
            convention: CONVENTION.to_string(),
            genus: p.genus() as i64,
            punctures: p.punctures(),
            lefschetz: p.is_lefschetz(),
            monodromies: p.monodromies().iter().map(matrix_to_rows).collect::<Result<_>>()?,
            vanishing_cycles: p
                .vanishing_cycles()
                .map(|cs| cs.iter().map(lattice_to_row).collect::<Result<Vec<_>>>())
                .transpose()?,
            cocycles: instance
                .cocycles
                .iter()
                .map(|c| CocycleDocument::from_cocycle(&c.cocycle, c.potentials.as_ref()))
                .collect(),
            seed: instance.seed,
        })
    }

    /// SHA-256 of the pencil part (genus, monodromies, cycles).
    pub fn pencil_hash(&self) -> String {
        let key = PencilKey {
            genus: self.genus,
            monodromies: &self.monodromies,
            vanishing_cycles: &self.vanishing_cycles,
        };
        sha256_hex(&serde_json::to_string(&key).expect("serializable"))
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.convention != CONVENTION {
            return Err(Error::Parse(format!(
                "unsupported convention {:?} (expected {CONVENTION:?})",
                self.convention
            )));
        }
        if self.punctures != self.monodromies.len() {
            return Err(Error::Dimension {
                expected: self.punctures,
                found: self.monodromies.len(),
            });
        }
        if self.genus < 1 {
            return Err(Error::InvalidGenus(self.genus));
        }
        let n = 2 * self.genus as usize;
        let mut monodromies = Vec::with_capacity(self.punctures);
        for (index, rows) in self.monodromies.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Dimension {
                    expected: n,
                    found: rows.iter().map(Vec::len).find(|&l| l != n).unwrap_or(rows.len()),
                });
            }
            let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
                .ok_or_else(|| Error::Parse("ragged matrix".into()))?;
            if !is_symplectic(&m)? {
                return Err(Error::SymplecticViolation { index });
            }
            monodromies.push(SymplecticMatrix::new(m)?);
        }
        let pencil = match &self.vanishing_cycles {
            Some(cycles) => {
                let cycles = cycles.iter().map(|c| LatticeVector::from_i64(c)).collect::<Result<Vec<_>>>()?;
                PencilModel::with_vanishing_cycles(self.genus, monodromies, cycles)?
            }
            None => PencilModel::new(self.genus, monodromies)?,
        };
        if pencil.is_lefschetz() != self.lefschetz {
            return Err(Error::Parse(format!(
                "lefschetz flag is {} but the monodromies say {}",
                self.lefschetz,
                pencil.is_lefschetz()
            )));
        }
        let pencil = Arc::new(pencil);
        let cocycles = self
            .cocycles
            .iter()
            .map(|doc| {
                let cocycle = TwistedCocycle::new(pencil.clone(), doc.ring, parse_vectors(&doc.values)?)?;
                let potentials = doc
                    .potentials
                    .as_ref()
                    .map(|a| ParabolicData::new(&cocycle, parse_vectors(a)?))
                    .transpose()?;
                Ok(InstanceCocycle { cocycle, potentials })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            pencil,
            cocycles,
            seed: self.seed,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Instance {
    pub fn new(pencil: Arc<PencilModel>, seed: Option<u64>) -> Self {
        Instance {
            pencil,
            cocycles: Vec::new(),
            seed,
        }
    }

    /// The rational elliptic surface with its frozen pair of integral
    /// parabolic cocycles `c_i = λ_i δ_i`.
    pub fn builtin_elliptic12() -> Self {
        let p = Arc::new(PencilModel::builtin_elliptic12());
        let mut inst = Instance::new(p.clone(), None);
        for lambda in ELLIPTIC12_FIXTURE {
            let v = |x: &[i64]| RatVector::from_i64(x).expect("even length");
            let values = lambda
                .iter()
                .enumerate()
                .map(|(i, &l)| if i % 2 == 0 { v(&[l, 0]) } else { v(&[0, l]) })
                .collect();
            // T_{(1,0)} - I sends (0, -λ) to (λ, 0); T_{(0,1)} - I sends (λ, 0) to (0, λ)
            let potentials = lambda
                .iter()
                .enumerate()
                .map(|(i, &l)| if i % 2 == 0 { v(&[0, -l]) } else { v(&[l, 0]) })
                .collect();
            let c = TwistedCocycle::new(p.clone(), Ring::Integers, values).expect("fixture is a cocycle");
            let a = ParabolicData::new(&c, potentials).expect("fixture potentials");
            inst.push(c, Some(a));
        }
        inst
    }

    pub fn push(&mut self, cocycle: TwistedCocycle, potentials: Option<ParabolicData>) {
        self.cocycles.push(InstanceCocycle { cocycle, potentials });
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(InstanceDocument::from_instance(self)?.to_json())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        InstanceDocument::from_json(s)?.to_instance()
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_json()?)
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// SHA-256 of a pencil's canonical form.
pub fn pencil_hash(p: &PencilModel) -> Result<String> {
    let doc = InstanceDocument::from_instance(&Instance::new(Arc::new(p.clone()), None))?;
    Ok(doc.pencil_hash())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::random_parabolic;
    use crate::random::Rng;

    fn sample() -> Instance {
        let p = Arc::new(PencilModel::random_instance(2, 3, 5).unwrap());
        let mut rng = Rng::from_seed(5);
        let mut inst = Instance::new(p.clone(), Some(5));
        let (c, a) = random_parabolic(&p, Ring::Rationals, &mut rng);
        inst.push(c, Some(a));
        let (c, _) = random_parabolic(&p, Ring::Integers, &mut rng);
        inst.push(c, None);
        inst
    }

    #[test]
    fn instance_survives_serialization() {
        let inst = sample();
        let text = inst.to_json().unwrap();
        let back = Instance::from_json(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(Instance::from_json(""), Err(Error::Parse(_))));
        assert!(matches!(Instance::from_json("{}"), Err(Error::Parse(_))));
        let mut doc = InstanceDocument::from_instance(&sample()).unwrap();
        doc.monodromies[1][0][0] += 1;
        assert!(matches!(doc.to_instance(), Err(Error::SymplecticViolation { index: 1 })));

        let mut doc = InstanceDocument::from_instance(&sample()).unwrap();
        doc.monodromies.swap(0, 1);
        assert!(matches!(doc.to_instance(), Err(Error::RelationViolation { .. })));

        let mut doc = InstanceDocument::from_instance(&sample()).unwrap();
        doc.cocycles[0].values[0][0] = "1/0".into();
        assert!(matches!(doc.to_instance(), Err(Error::Parse(_))));

        let mut doc = InstanceDocument::from_instance(&sample()).unwrap();
        doc.convention = "conventions-v0".into();
        assert!(matches!(doc.to_instance(), Err(Error::Parse(_))));
    }

    #[test]
    fn fixture_is_parabolic() {
        let inst = Instance::builtin_elliptic12();
        assert_eq!(inst.cocycles.len(), 2);
        assert!(inst.cocycles.iter().all(|c| c.potentials.as_ref().is_some_and(|a| a.ring() == Ring::Integers)));
        assert_eq!(Instance::from_json(&inst.to_json().unwrap()).unwrap(), inst);
    }

    #[test]
    fn hashes_are_stable_and_sensitive() {
        let p = PencilModel::builtin_elliptic12();
        let h = pencil_hash(&p).unwrap();
        assert_eq!(h.len(), 64);
        assert_eq!(h, pencil_hash(&PencilModel::builtin_elliptic12()).unwrap());
        assert_ne!(h, pencil_hash(&p.rotate_marking().0).unwrap());
    }
}
