//! Preset configurations: quaternionic, orthogonal and Siegel data with
//! their cocharacters and, for the orthogonal family, the spin-similitude
//! avatars used for dimension arithmetic.

use crate::atlas::{build_atlas, AtlasConfig, StrataAtlas};
use crate::error::{Error, Result};
use crate::kottwitz::Avatar;
use crate::linalg::Int;
use crate::root_datum::{build_datum, ClassicalDatum, IVec, RootDatum};
use crate::Caps;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrthogonalForm {
    Split,
    Nonsplit,
}

/// A named configuration: group datum, cocharacter, optional avatar, tags.
#[derive(Clone, Debug)]
pub struct PresetData {
    pub datum: RootDatum,
    pub mu: IVec,
    pub avatar: Option<Avatar>,
    pub descriptor: String,
    pub coxeter_preset: bool,
}

/// Quaternionic configuration: one `(degree, split-embedding count)` pair
/// per place over p. The datum is the product of the restrictions of
/// scalars of `GL(2)`, with μ nontrivial on the first `a_i` embeddings of
/// each place.
pub fn quaternionic(places: &[(usize, usize)]) -> Result<PresetData> {
    if places.is_empty() {
        return Err(Error::datum("quaternionic preset needs at least one place"));
    }
    for &(n, a) in places {
        if n == 0 {
            return Err(Error::datum("quaternionic place needs degree n ≥ 1"));
        }
        if a > n {
            return Err(Error::datum(format!(
                "quaternionic place has a = {a} split embeddings but degree only {n}"
            )));
        }
    }
    if places.iter().all(|&(_, a)| a == 0) {
        return Err(Error::datum(
            "quaternionic preset needs some split embedding (a_i > 0)",
        ));
    }
    let gl2 = build_datum(&ClassicalDatum::Gl { n: 2 })?;
    let factors: Vec<RootDatum> = places
        .iter()
        .map(|&(n, _)| gl2.restriction_of_scalars(n))
        .collect::<Result<_>>()?;
    let refs: Vec<&RootDatum> = factors.iter().collect();
    let datum = RootDatum::product(&refs)?;
    let mut mu = vec![Int::from(0); datum.rank()];
    let mut off = 0;
    for &(n, a) in places {
        for k in 0..a {
            mu[off + 2 * k] = Int::from(1);
        }
        off += 2 * n;
    }
    let desc = places
        .iter()
        .map(|&(n, a)| format!("{n}:{a}"))
        .collect::<Vec<_>>()
        .join(",");
    Ok(PresetData {
        datum,
        mu,
        avatar: None,
        descriptor: format!("quaternionic[{desc}]"),
        coxeter_preset: false,
    })
}

/// Orthogonal configuration for a quadratic space of dimension `n + 2`:
/// the special orthogonal datum with μ of minuscule first-coordinate type,
/// dimensioned through the corresponding spin-similitude avatar. The
/// non-split form exists only for even `n` (for odd `n` both forms are
/// isomorphic, so only `split` is accepted).
pub fn orthogonal(n: usize, form: OrthogonalForm) -> Result<PresetData> {
    if n == 0 {
        return Err(Error::datum("orthogonal preset needs n ≥ 1"));
    }
    if n % 2 == 1 && form == OrthogonalForm::Nonsplit {
        return Err(Error::datum(
            "odd orthogonal groups with good reduction are split; use --form split",
        ));
    }
    let (datum, avatar_datum, m) = if n % 2 == 1 {
        let m = (n + 1) / 2;
        (
            build_datum(&ClassicalDatum::SoOdd { m })?,
            build_datum(&ClassicalDatum::GSpinOdd { m })?,
            m,
        )
    } else {
        let m = (n + 2) / 2;
        match form {
            OrthogonalForm::Split => (
                build_datum(&ClassicalDatum::SoEvenSplit { m })?,
                build_datum(&ClassicalDatum::GSpinEvenSplit { m })?,
                m,
            ),
            OrthogonalForm::Nonsplit => (
                build_datum(&ClassicalDatum::SoEvenNonsplit { m })?,
                build_datum(&ClassicalDatum::GSpinEvenNonsplit { m })?,
                m,
            ),
        }
    };
    let mut mu = vec![Int::from(0); datum.rank()];
    mu[0] = Int::from(1);
    let mut avatar_mu = vec![Int::from(0); m + 1];
    avatar_mu[0] = Int::from(1);
    let form_name = match form {
        OrthogonalForm::Split => "split",
        OrthogonalForm::Nonsplit => "nonsplit",
    };
    Ok(PresetData {
        datum,
        mu,
        avatar: Some(Avatar {
            datum: avatar_datum,
            mu: avatar_mu,
        }),
        descriptor: format!("orthogonal[n={n},{form_name}]"),
        // Coxeter type for every n except 2 (where the group is not
        // absolutely quasi-simple)
        coxeter_preset: n != 2,
    })
}

/// Siegel configuration: the symplectic similitude group of genus `g` with
/// its standard minuscule cocharacter.
pub fn siegel(g: usize) -> Result<PresetData> {
    if g == 0 {
        return Err(Error::datum("siegel preset needs g ≥ 1"));
    }
    let datum = build_datum(&ClassicalDatum::GSp { g })?;
    let mu = vec![Int::from(1); g + 1];
    Ok(PresetData {
        datum,
        mu,
        avatar: None,
        descriptor: format!("siegel[g={g}]"),
        coxeter_preset: false,
    })
}

impl PresetData {
    pub fn build(&self, caps: &Caps) -> Result<StrataAtlas> {
        let config = AtlasConfig {
            descriptor: self.descriptor.clone(),
            avatar: self.avatar.clone(),
            coxeter_preset: self.coxeter_preset,
        };
        build_atlas(&self.datum, &self.mu, &config, caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ivec, rat};

    #[test]
    fn quaternionic_shapes() {
        let p = quaternionic(&[(3, 3)]).unwrap();
        assert_eq!(p.datum.rank(), 6);
        assert_eq!(p.datum.sigma_order(), 3);
        assert_eq!(p.mu, ivec(&[1, 0, 1, 0, 1, 0]));
        let p = quaternionic(&[(2, 1), (1, 1)]).unwrap();
        assert_eq!(p.datum.rank(), 6);
        assert_eq!(p.mu, ivec(&[1, 0, 0, 0, 1, 0]));
        assert!(quaternionic(&[(1, 2)]).is_err());
        assert!(quaternionic(&[(2, 0)]).is_err());
        assert!(quaternionic(&[]).is_err());
    }

    #[test]
    fn orthogonal_shapes() {
        let p = orthogonal(7, OrthogonalForm::Split).unwrap();
        assert_eq!(p.datum.rank(), 4);
        assert!(p.coxeter_preset);
        assert!(p.avatar.is_some());
        assert!(orthogonal(7, OrthogonalForm::Nonsplit).is_err());
        let p = orthogonal(6, OrthogonalForm::Nonsplit).unwrap();
        assert_eq!(p.datum.sigma_order(), 2);
        let p2 = orthogonal(2, OrthogonalForm::Split).unwrap();
        assert!(!p2.coxeter_preset);
        assert!(orthogonal(0, OrthogonalForm::Split).is_err());
    }

    #[test]
    fn siegel_g2_atlas() {
        let p = siegel(2).unwrap();
        let atlas = p.build(&Caps::default()).unwrap();
        assert_eq!(atlas.newton.len(), 3);
        let dims: Vec<_> = atlas.newton.iter().map(|c| c.dim.clone()).collect();
        assert_eq!(dims, vec![rat(3, 1), rat(2, 1), rat(1, 1)]);
        assert!(atlas.fully_hn);
        assert_eq!(atlas.eo.len(), 4);
    }

    #[test]
    fn orthogonal_n1_minimal_case() {
        let p = orthogonal(1, OrthogonalForm::Split).unwrap();
        let atlas = p.build(&Caps::default()).unwrap();
        assert_eq!(atlas.newton.len(), 2);
        assert_eq!(atlas.eo.len(), 2);
        let dims: Vec<_> = atlas.newton.iter().map(|c| c.dim.clone()).collect();
        assert_eq!(dims, vec![rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn orthogonal_n2_products() {
        // SO(4): not absolutely quasi-simple, still fully decomposable
        for form in [OrthogonalForm::Split, OrthogonalForm::Nonsplit] {
            let p = orthogonal(2, form).unwrap();
            let atlas = p.build(&Caps::default()).unwrap();
            assert!(atlas.fully_hn);
            assert_eq!(atlas.eo.len(), 4);
            let mut lengths: Vec<_> = atlas.eo.iter().map(|s| s.length).collect();
            lengths.sort_unstable();
            assert_eq!(lengths, vec![0, 1, 1, 2]);
        }
    }
}
