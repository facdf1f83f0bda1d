//! Serialization of complex vectors as lists of `[re, im]` pairs.

use serde::ser::{SerializeSeq, Serializer};

use crate::rep::{CMatrix, CVector};

pub fn complex_vector<S: Serializer>(v: &CVector, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v.iter() {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

pub fn complex_vectors<S: Serializer>(vs: &[CVector], s: S) -> Result<S::Ok, S::Error> {
    struct One<'a>(&'a CVector);
    impl serde::Serialize for One<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            complex_vector(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for v in vs {
        seq.serialize_element(&One(v))?;
    }
    seq.end()
}

/// Row-major nested lists of `[re, im]`.
pub fn complex_matrix<S: Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<CVector> = (0..m.nrows()).map(|i| m.row(i).transpose()).collect();
    complex_vectors(&rows, s)
}
