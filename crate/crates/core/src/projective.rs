//! Points of the projective plane PG(2, q) and the orthogonality relation
//! used to build polarity graphs.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::gf::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error("the zero vector does not represent a projective point")]
    ZeroVector,
}

/// Canonical representative of a one-dimensional subspace of GF(q)^3: the
/// first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    /// Sort key: base-p indices of the three coordinates.
    pub fn key(&self, spec: &FieldSpec) -> [u32; 3] {
        [
            spec.index_of(&self.coords[0]),
            spec.index_of(&self.coords[1]),
            spec.index_of(&self.coords[2]),
        ]
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "({x},{y},{z})")
    }
}

/// Scales `v` so that its first nonzero coordinate becomes 1.
pub fn normalize(spec: &FieldSpec, v: [FieldElement; 3]) -> Result<ProjPoint, ProjError> {
    let lead = v
        .iter()
        .find(|c| !c.is_zero())
        .ok_or(ProjError::ZeroVector)?;
    let scale = spec.inv(lead).expect("nonzero lead coordinate");
    let coords = v.map(|c| spec.mul(&c, &scale));
    Ok(ProjPoint { coords })
}

/// All `q^2 + q + 1` canonical points, sorted lexicographically by
/// coordinate index. Positions in this list are vertex IDs downstream.
pub fn enumerate_points(spec: &FieldSpec) -> Vec<ProjPoint> {
    let q = spec.q();
    let mut keys: Vec<[u32; 3]> = Vec::with_capacity((q * q + q + 1) as usize);
    keys.push([0, 0, 1]);
    keys.extend((0..q).map(|z| [0, 1, z]));
    for y in 0..q {
        keys.extend((0..q).map(|z| [1, y, z]));
    }
    keys.sort_unstable();
    keys.into_iter()
        .map(|k| ProjPoint {
            coords: k.map(|i| spec.from_index(i)),
        })
        .collect()
}

fn dot(spec: &FieldSpec, x: &[FieldElement; 3], y: &[FieldElement; 3]) -> FieldElement {
    let mut acc = spec.zero();
    for (a, b) in x.iter().zip(y) {
        acc = spec.add(&acc, &spec.mul(a, b));
    }
    acc
}

/// `x · y^T = 0`.
pub fn incidence(spec: &FieldSpec, x: &ProjPoint, y: &ProjPoint) -> bool {
    dot(spec, &x.coords, &y.coords).is_zero()
}

/// `x · x^T = 0`.
pub fn is_quadric(spec: &FieldSpec, x: &ProjPoint) -> bool {
    incidence(spec, x, x)
}

/// Total order matching [`enumerate_points`].
pub fn compare(spec: &FieldSpec, a: &ProjPoint, b: &ProjPoint) -> Ordering {
    a.key(spec).cmp(&b.key(spec))
}
