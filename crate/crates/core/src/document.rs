//! Versioned JSON serialization of [`StrataAtlas`] and the custom datum
//! file format.
//!
//! Rationals are serialized as normalized `p/q` strings with `q > 0` and
//! `gcd(p, q) = 1`; lattice integers as decimal strings. Parsing an
//! emitted document reconstructs a structurally equal atlas.

use serde::{Deserialize, Serialize};

use crate::atlas::{EOStratumReport, NewtonClassReport, StrataAtlas};
use crate::error::{Error, Result};
use crate::linalg::{rat_from_str, rat_to_string, IMat, Int, Rat};
use crate::root_datum::{IVec, RVec, RootDatum};

pub const FORMAT_VERSION: u32 = 1;

fn ints_to_strings(v: &[Int]) -> Vec<String> {
    v.iter().map(Int::to_string).collect()
}

fn ints_from_strings(v: &[String]) -> Result<IVec> {
    v.iter()
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        })
        .collect()
}

fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

fn rats_from_strings(v: &[String]) -> Result<RVec> {
    v.iter().map(|s| rat_from_str(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub descriptor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub translation: Vec<String>,
    pub finite_word: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonClassDocument {
    pub label: String,
    pub nu: Vec<String>,
    pub kappa: Vec<String>,
    pub defect: String,
    pub dim: String,
    pub leaf_dim: String,
    pub defect_raw: String,
    pub dim_raw: String,
    pub basic: bool,
    pub mu_ordinary: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EOStratumDocument {
    pub label: String,
    pub word: Vec<u8>,
    pub length: usize,
    pub sigma_straight: bool,
    pub zip_orbit_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub newton_class: Option<usize>,
}

/// The versioned on-disk form of a [`StrataAtlas`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasDocument {
    pub format_version: u32,
    pub provenance: Provenance,
    pub mu: Vec<String>,
    pub mu_bar: Vec<String>,
    pub shimura_dim: String,
    pub split: bool,
    pub fully_hn: bool,
    pub coxeter_preset: bool,
    pub incidence_total: bool,
    pub newton: Vec<NewtonClassDocument>,
    pub newton_covers: Vec<(usize, usize)>,
    pub eo: Vec<EOStratumDocument>,
    pub eo_covers: Vec<(usize, usize)>,
    pub warnings: Vec<String>,
}

impl AtlasDocument {
    pub fn from_atlas(atlas: &StrataAtlas) -> Self {
        AtlasDocument {
            format_version: FORMAT_VERSION,
            provenance: Provenance {
                tool: "strata-atlas".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                descriptor: atlas.descriptor.clone(),
            },
            mu: ints_to_strings(&atlas.mu),
            mu_bar: rats_to_strings(&atlas.mu_bar),
            shimura_dim: rat_to_string(&atlas.shimura_dim),
            split: atlas.split,
            fully_hn: atlas.fully_hn,
            coxeter_preset: atlas.coxeter_preset,
            incidence_total: atlas.incidence_total,
            newton: atlas
                .newton
                .iter()
                .map(|c| NewtonClassDocument {
                    label: c.label.clone(),
                    nu: rats_to_strings(&c.nu),
                    kappa: ints_to_strings(&c.kappa),
                    defect: rat_to_string(&c.defect),
                    dim: rat_to_string(&c.dim),
                    leaf_dim: rat_to_string(&c.leaf_dim),
                    defect_raw: rat_to_string(&c.defect_raw),
                    dim_raw: rat_to_string(&c.dim_raw),
                    basic: c.is_basic,
                    mu_ordinary: c.is_mu_ordinary,
                    witness: c.witness.as_ref().map(|(lambda, word)| WitnessDocument {
                        translation: ints_to_strings(lambda),
                        finite_word: word.clone(),
                    }),
                })
                .collect(),
            newton_covers: atlas.newton_covers.clone(),
            eo: atlas
                .eo
                .iter()
                .map(|s| EOStratumDocument {
                    label: s.label.clone(),
                    word: s.word.clone(),
                    length: s.length,
                    sigma_straight: s.sigma_straight,
                    zip_orbit_dim: s.zip_orbit_dim,
                    newton_class: s.newton_index,
                })
                .collect(),
            eo_covers: atlas.eo_covers.clone(),
            warnings: atlas.warnings.clone(),
        }
    }

    pub fn to_atlas(&self) -> Result<StrataAtlas> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        Ok(StrataAtlas {
            descriptor: self.provenance.descriptor.clone(),
            mu: ints_from_strings(&self.mu)?,
            mu_bar: rats_from_strings(&self.mu_bar)?,
            shimura_dim: rat_from_str(&self.shimura_dim)?,
            split: self.split,
            fully_hn: self.fully_hn,
            coxeter_preset: self.coxeter_preset,
            incidence_total: self.incidence_total,
            newton: self
                .newton
                .iter()
                .map(|c| {
                    Ok(NewtonClassReport {
                        label: c.label.clone(),
                        nu: rats_from_strings(&c.nu)?,
                        kappa: ints_from_strings(&c.kappa)?,
                        defect: rat_from_str(&c.defect)?,
                        dim: rat_from_str(&c.dim)?,
                        leaf_dim: rat_from_str(&c.leaf_dim)?,
                        defect_raw: rat_from_str(&c.defect_raw)?,
                        dim_raw: rat_from_str(&c.dim_raw)?,
                        is_basic: c.basic,
                        is_mu_ordinary: c.mu_ordinary,
                        witness: c
                            .witness
                            .as_ref()
                            .map(|w| {
                                Ok::<_, Error>((
                                    ints_from_strings(&w.translation)?,
                                    w.finite_word.clone(),
                                ))
                            })
                            .transpose()?,
                    })
                })
                .collect::<Result<_>>()?,
            newton_covers: self.newton_covers.clone(),
            eo: self
                .eo
                .iter()
                .map(|s| EOStratumReport {
                    label: s.label.clone(),
                    word: s.word.clone(),
                    length: s.length,
                    sigma_straight: s.sigma_straight,
                    zip_orbit_dim: s.zip_orbit_dim,
                    newton_index: s.newton_class,
                })
                .collect(),
            eo_covers: self.eo_covers.clone(),
            warnings: self.warnings.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad atlas document: {e}")))
    }
}

/// Custom datum file: defining matrices plus the cocharacter, rationals
/// as `p/q` strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumFile {
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub sigma: Vec<Vec<i64>>,
    pub mu: Vec<String>,
}

impl DatumFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad datum file: {e}")))
    }

    /// Validates and instantiates the datum; μ must be integral.
    pub fn instantiate(&self) -> Result<(RootDatum, IVec)> {
        let to_ivecs = |rows: &[Vec<i64>]| -> Vec<IVec> {
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect()
        };
        let sigma_rows = to_ivecs(&self.sigma);
        if sigma_rows.len() != self.rank || sigma_rows.iter().any(|r| r.len() != self.rank) {
            return Err(Error::datum("sigma matrix must be rank × rank"));
        }
        let datum = RootDatum::new(
            self.rank,
            to_ivecs(&self.simple_roots),
            to_ivecs(&self.simple_coroots),
            IMat::from_rows(sigma_rows),
        )?;
        if self.mu.len() != self.rank {
            return Err(Error::datum("mu has wrong length"));
        }
        let mu_rat = rats_from_strings(&self.mu)?;
        let mut mu = Vec::with_capacity(self.rank);
        for x in &mu_rat {
            if !num_traits::One::is_one(x.denom()) {
                return Err(Error::datum("mu must be an integral cocharacter"));
            }
            mu.push(x.numer().clone());
        }
        Ok((datum, mu))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{build_atlas, AtlasConfig};
    use crate::preset;
    use crate::Caps;

    #[test]
    fn round_trip_equality() {
        let p = preset::orthogonal(5, preset::OrthogonalForm::Split).unwrap();
        let atlas = p.build(&Caps::default()).unwrap();
        let doc = AtlasDocument::from_atlas(&atlas);
        let json = doc.to_json();
        let parsed = AtlasDocument::from_json(&json).unwrap();
        assert_eq!(doc, parsed);
        assert_eq!(parsed.to_atlas().unwrap(), atlas);
    }

    #[test]
    fn deterministic_serialization() {
        let p = preset::quaternionic(&[(2, 2)]).unwrap();
        let a1 = p.build(&Caps::default()).unwrap();
        let a2 = p.build(&Caps::default()).unwrap();
        assert_eq!(
            AtlasDocument::from_atlas(&a1).to_json(),
            AtlasDocument::from_atlas(&a2).to_json()
        );
    }

    #[test]
    fn datum_file_gl2() {
        let json = r#"{
            "rank": 2,
            "simple_roots": [[1, -1]],
            "simple_coroots": [[1, -1]],
            "sigma": [[1, 0], [0, 1]],
            "mu": ["1/1", "0/1"]
        }"#;
        let file = DatumFile::from_json(json).unwrap();
        let (datum, mu) = file.instantiate().unwrap();
        let atlas = build_atlas(&datum, &mu, &AtlasConfig::default(), &Caps::default()).unwrap();
        assert_eq!(atlas.newton.len(), 2);
        // fractional μ rejected
        let bad = DatumFile {
            mu: vec!["1/2".into(), "0".into()],
            ..file
        };
        assert!(bad.instantiate().is_err());
    }
}
