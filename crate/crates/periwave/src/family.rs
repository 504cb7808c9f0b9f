use periwave_core::families::FamilyId;
use serde::{Deserialize, Serialize};

/// Serializable family selector: the tag plus the parameters the family carries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    KdvCnoidal,
    MkdvDnoidal,
    MkdvDnsn,
    GardnerDn { a: f64, b: f64 },
    GardnerDnsn { a: f64, b: f64 },
    Ilw { delta: f64 },
    Schamel,
    MbbmDnsn,
    RegSchamel,
}

pub const TAGS: [&str; 9] = [
    "kdv_cnoidal",
    "mkdv_dnoidal",
    "mkdv_dnsn",
    "gardner_dn",
    "gardner_dnsn",
    "ilw",
    "schamel",
    "mbbm_dnsn",
    "reg_schamel",
];

impl FamilySpec {
    /// Builds a selector from a tag and optional parameters. Gardner families default
    /// to `a = b = 1`, ILW to `δ = 1`; parameters a family does not take are rejected.
    pub fn from_parts(tag: &str, a: Option<f64>, b: Option<f64>, delta: Option<f64>) -> Result<Self, String> {
        let gardner = matches!(tag, "gardner_dn" | "gardner_dnsn");
        if !gardner && (a.is_some() || b.is_some()) {
            return Err(format!("family {tag} takes no Gardner coefficients"));
        }
        if tag != "ilw" && delta.is_some() {
            return Err(format!("family {tag} takes no depth parameter"));
        }
        let (a, b, delta) = (a.unwrap_or(1.0), b.unwrap_or(1.0), delta.unwrap_or(1.0));
        Ok(match tag {
            "kdv_cnoidal" => FamilySpec::KdvCnoidal,
            "mkdv_dnoidal" => FamilySpec::MkdvDnoidal,
            "mkdv_dnsn" => FamilySpec::MkdvDnsn,
            "gardner_dn" => FamilySpec::GardnerDn { a, b },
            "gardner_dnsn" => FamilySpec::GardnerDnsn { a, b },
            "ilw" => FamilySpec::Ilw { delta },
            "schamel" => FamilySpec::Schamel,
            "mbbm_dnsn" => FamilySpec::MbbmDnsn,
            "reg_schamel" => FamilySpec::RegSchamel,
            _ => return Err(format!("unknown family {tag:?}; expected one of {}", TAGS.join(", "))),
        })
    }
}

impl From<FamilySpec> for FamilyId {
    fn from(s: FamilySpec) -> Self {
        match s {
            FamilySpec::KdvCnoidal => FamilyId::KdvCnoidal,
            FamilySpec::MkdvDnoidal => FamilyId::MkdvDnoidal,
            FamilySpec::MkdvDnsn => FamilyId::MkdvDnsn,
            FamilySpec::GardnerDn { a, b } => FamilyId::GardnerDn { a, b },
            FamilySpec::GardnerDnsn { a, b } => FamilyId::GardnerDnsn { a, b },
            FamilySpec::Ilw { delta } => FamilyId::Ilw { delta },
            FamilySpec::Schamel => FamilyId::Schamel,
            FamilySpec::MbbmDnsn => FamilyId::MbbmDnsn,
            FamilySpec::RegSchamel => FamilyId::RegSchamel,
        }
    }
}

impl From<FamilyId> for FamilySpec {
    fn from(f: FamilyId) -> Self {
        match f {
            FamilyId::KdvCnoidal => FamilySpec::KdvCnoidal,
            FamilyId::MkdvDnoidal => FamilySpec::MkdvDnoidal,
            FamilyId::MkdvDnsn => FamilySpec::MkdvDnsn,
            FamilyId::GardnerDn { a, b } => FamilySpec::GardnerDn { a, b },
            FamilyId::GardnerDnsn { a, b } => FamilySpec::GardnerDnsn { a, b },
            FamilyId::Ilw { delta } => FamilySpec::Ilw { delta },
            FamilyId::Schamel => FamilySpec::Schamel,
            FamilyId::MbbmDnsn => FamilySpec::MbbmDnsn,
            FamilyId::RegSchamel => FamilySpec::RegSchamel,
        }
    }
}
