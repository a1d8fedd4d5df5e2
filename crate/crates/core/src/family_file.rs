//! On-disk family format: TOML with integers only for the algebraic data.
//!
//! ```toml
//! format_version = 1
//! construction = "recursive"
//! p = 3
//! k = 1
//! n = 2
//! poly = [0]
//! nonresidue = [2]
//!
//! [[members]]
//! label = "C[1,0]"
//! kind = "matrix_algebra"
//! generators = [[1, 0, 0, 1], [0, 1, 2, 0]]
//! ```

use serde::{Deserialize, Serialize};

use crate::constructions::{Construction, ConstructionParams, Member, MemberKind, SpreadFamily};
use crate::error::{Error, Result};
use crate::phase_space::{PhasePoint, Subspace};
use crate::report::VerificationReport;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberRecord {
    pub label: String,
    pub kind: MemberKind,
    pub generators: Vec<Vec<u32>>,
}

/// Outcome of a `verify` run, stored alongside the members.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationSummary {
    pub mode: String,
    pub passed: bool,
    pub reports: Vec<VerificationReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub format_version: u32,
    pub construction: Construction,
    pub p: u32,
    pub k: usize,
    pub n: usize,
    /// Lower coefficients `c_0..c_{k−1}` of the monic field polynomial.
    pub poly: Vec<u32>,
    /// Power-basis coordinates of the non-square `D`.
    pub nonresidue: Vec<u32>,
    pub members: Vec<MemberRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSummary>,
}

impl FamilyFile {
    pub fn from_family(family: &SpreadFamily) -> Self {
        let params = &family.params;
        FamilyFile {
            format_version: FORMAT_VERSION,
            construction: family.construction,
            p: params.p(),
            k: params.k(),
            n: params.n,
            poly: params.field.poly().to_vec(),
            nonresidue: params.nonresidue.coords().to_vec(),
            members: family
                .members
                .iter()
                .map(|m| MemberRecord {
                    label: m.label.clone(),
                    kind: m.kind,
                    generators: m
                        .subspace
                        .generators()
                        .iter()
                        .map(|g| g.coords().to_vec())
                        .collect(),
                })
                .collect(),
            verification: None,
        }
    }

    /// Rebuilds the family, validating parameters and every coordinate.
    pub fn to_family(&self) -> Result<SpreadFamily> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        let params = ConstructionParams::with_overrides(
            self.p,
            self.k,
            self.n,
            Some(self.poly.clone()),
            Some(self.nonresidue.clone()),
        )?;
        let width = 2 * params.factors();
        let members = self
            .members
            .iter()
            .map(|rec| {
                let points = rec
                    .generators
                    .iter()
                    .map(|row| {
                        if row.len() != width {
                            return Err(Error::Format(format!(
                                "member {}: generator row of length {}, expected {width}",
                                rec.label,
                                row.len()
                            )));
                        }
                        if let Some(bad) = row.iter().find(|&&c| c >= self.p) {
                            return Err(Error::Format(format!(
                                "member {}: coordinate {bad} outside [0, {}]",
                                rec.label,
                                self.p - 1
                            )));
                        }
                        PhasePoint::new(self.p, row.clone())
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Member {
                    label: rec.label.clone(),
                    kind: rec.kind,
                    subspace: Subspace::new(self.p, params.factors(), points)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SpreadFamily {
            params,
            construction: self.construction,
            members,
        })
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Format(e.message().to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_recursive;

    #[test]
    fn round_trip_spread() {
        let fam = build_recursive(&ConstructionParams::standard(3, 1, 2).unwrap()).unwrap();
        let file = FamilyFile::from_family(&fam);
        let text = file.to_toml().unwrap();
        assert!(text.starts_with("format_version = 1\n"));
        let back = FamilyFile::from_toml(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_family().unwrap(), fam);
    }

    #[test]
    fn rejects_bad_rows() {
        let fam = build_recursive(&ConstructionParams::standard(3, 1, 2).unwrap()).unwrap();
        let mut file = FamilyFile::from_family(&fam);
        file.members[0].generators[0][1] = 3;
        assert!(matches!(file.to_family(), Err(Error::Format(_))));
        file.members[0].generators[0] = vec![1, 0];
        assert!(matches!(file.to_family(), Err(Error::Format(_))));
    }

    #[test]
    fn truncated_text_is_a_format_error() {
        let fam = build_recursive(&ConstructionParams::standard(3, 1, 2).unwrap()).unwrap();
        let text = FamilyFile::from_family(&fam).to_toml().unwrap();
        let cut = &text[..text.len() / 2];
        assert!(matches!(FamilyFile::from_toml(cut), Err(Error::Format(_))));
    }
}
