//! Hodge-Newton decomposability, the stratum-to-class incidence map, and
//! assembly of the full stratification atlas.
//!
//! [`build_atlas`] orchestrates every module, runs the cross-validations
//! (route equivalence, cardinalities, order transport, purity, incidence
//! coherence) and produces an immutable plain-data [`StrataAtlas`]. Any
//! violated invariant aborts with a diagnostic naming it.

use num_traits::{One, Signed, Zero};

use crate::affine::AffineWeyl;
use crate::eo::{identify_eo, minimal_eo, EOSide};
use crate::error::{Error, Result};
use crate::kottwitz::{newton_side, Avatar, NewtonSide};
use crate::linalg::{ivec_to_rvec, Int, Rat};
use crate::root_datum::{IVec, RVec, RootDatum};
use crate::weyl::WeylGroup;
use crate::Caps;

/// All proper σ-stable subsets of the simple-root index set (the standard
/// Levi types available for Hodge-Newton decomposition).
pub fn sigma_stable_levis(datum: &RootDatum) -> Vec<Vec<usize>> {
    let orbits = datum.sigma_orbits();
    let n_orbits = orbits.len();
    let mut out = Vec::new();
    for mask in 0..(1u64 << n_orbits) {
        if n_orbits > 0 && mask == (1u64 << n_orbits) - 1 {
            continue;
        }
        let mut j = Vec::new();
        for (k, orbit) in orbits.iter().enumerate() {
            if mask & (1 << k) != 0 {
                j.extend_from_slice(orbit);
            }
        }
        j.sort_unstable();
        out.push(j);
    }
    out.sort();
    out
}

/// Whether a class is Hodge-Newton decomposable with respect to the
/// σ-stable standard Levi given by `j0`: the centralizer of ν must sit
/// inside the Levi and `μ̄ − ν` must be a nonnegative combination of the
/// Levi's simple coroots.
pub fn is_hn_decomposable(datum: &RootDatum, mu: &[Int], nu: &[Rat], j0: &[usize]) -> Result<bool> {
    // {α simple : ⟨ν, α⟩ = 0} ⊆ J₀
    for (i, alpha) in datum.simple_roots().iter().enumerate() {
        let pairing = crate::linalg::dot_ri(nu, alpha);
        if pairing.is_zero() && !j0.contains(&i) {
            return Ok(false);
        }
    }
    let mu_bar = datum.galois_average(&ivec_to_rvec(mu));
    let diff: RVec = mu_bar.iter().zip(nu).map(|(a, b)| a - b).collect();
    let coeffs = datum
        .coroot_coefficients(&diff)
        .ok_or_else(|| Error::invariant("μ̄ − ν not in the coroot span"))?;
    Ok(coeffs
        .iter()
        .enumerate()
        .all(|(i, c)| (!c.is_negative()) && (c.is_zero() || j0.contains(&i))))
}

/// Whether every non-basic class of `B(G,μ)` decomposes along some proper
/// σ-stable standard Levi.
pub fn is_fully_hn(datum: &RootDatum, mu: &[Int], newton: &NewtonSide) -> Result<bool> {
    let levis = sigma_stable_levis(datum);
    for class in &newton.classes {
        if class.is_basic {
            continue;
        }
        let mut decomposable = false;
        for j0 in &levis {
            if is_hn_decomposable(datum, mu, &class.nu, j0)? {
                decomposable = true;
                break;
            }
        }
        if !decomposable {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One Newton class in the assembled report.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonClassReport {
    pub label: String,
    pub nu: RVec,
    pub kappa: IVec,
    pub defect: Rat,
    pub dim: Rat,
    pub leaf_dim: Rat,
    pub defect_raw: Rat,
    pub dim_raw: Rat,
    pub is_basic: bool,
    pub is_mu_ordinary: bool,
    /// a σ-straight witness `t^λ w`, as (λ, reduced word of w)
    pub witness: Option<(IVec, Vec<u8>)>,
}

/// One Ekedahl-Oort stratum in the assembled report.
#[derive(Clone, Debug, PartialEq)]
pub struct EOStratumReport {
    pub label: String,
    pub word: Vec<u8>,
    pub length: usize,
    pub sigma_straight: bool,
    pub zip_orbit_dim: usize,
    /// index into the Newton class list; `None` outside the labeled part
    /// of a partial incidence map
    pub newton_index: Option<usize>,
}

/// The assembled combinatorial stratification report. A plain value:
/// no group tables, fully serializable, structurally comparable.
#[derive(Clone, Debug, PartialEq)]
pub struct StrataAtlas {
    pub descriptor: String,
    pub mu: IVec,
    pub mu_bar: RVec,
    pub shimura_dim: Rat,
    pub split: bool,
    pub fully_hn: bool,
    pub coxeter_preset: bool,
    pub incidence_total: bool,
    pub newton: Vec<NewtonClassReport>,
    pub newton_covers: Vec<(usize, usize)>,
    pub eo: Vec<EOStratumReport>,
    pub eo_covers: Vec<(usize, usize)>,
    pub warnings: Vec<String>,
}

impl StrataAtlas {
    pub fn basic_index(&self) -> usize {
        self.newton
            .iter()
            .position(|c| c.is_basic)
            .expect("basic class")
    }

    pub fn mu_ordinary_index(&self) -> usize {
        self.newton
            .iter()
            .position(|c| c.is_mu_ordinary)
            .expect("μ-ordinary class")
    }
}

/// Inputs to [`build_atlas`] beyond the datum: the cocharacter, an
/// optional connected-center avatar for dimension arithmetic, a
/// presentation descriptor and the Coxeter-preset tag.
#[derive(Clone, Debug, Default)]
pub struct AtlasConfig {
    pub descriptor: String,
    pub avatar: Option<Avatar>,
    pub coxeter_preset: bool,
}

/// Runs the full pipeline on a datum and minuscule dominant μ.
pub fn build_atlas(
    datum: &RootDatum,
    mu: &[Int],
    config: &AtlasConfig,
    caps: &Caps,
) -> Result<StrataAtlas> {
    if !datum.is_dominant_int(mu) {
        return Err(Error::datum("μ must be dominant"));
    }
    if !datum.is_minuscule(mu) {
        return Err(Error::datum(
            "μ must be minuscule (all root pairings 0 or 1)",
        ));
    }
    let weyl = WeylGroup::generate(datum, caps.weyl)?;
    let aff = AffineWeyl::new(weyl)?;
    let newton = newton_side(&aff, mu, config.avatar.as_ref(), caps.enumeration)?;
    let eo = identify_eo(&aff, mu, caps.enumeration)?;
    let minimal = minimal_eo(&aff, &eo, &newton)?;
    let fully_hn = is_fully_hn(datum, mu, &newton)?;
    let split = datum.sigma_order() == 1;

    // the zero-dimensionality criterion: every non-basic class coincides
    // with its central leaves. For (absolutely) quasi-simple data this is
    // equivalent to decomposability; on products a positive-dimensional
    // basic factor can break the equivalence while each factor, and hence
    // the product, still has Newton strata that are unions of zip strata.
    // The straightness-based incidence is only total in the agreeing case.
    let zero_dim = newton
        .classes
        .iter()
        .all(|c| c.is_basic || c.stratum_dim == c.leaf_dim);
    let incidence_total = fully_hn && zero_dim;

    let mut warnings = newton.warnings.clone();
    if fully_hn != zero_dim {
        warnings.push(
            "decomposability and the zero-dimensionality criterion disagree (a product \
             with a positive-dimensional basic factor); stratum-to-class incidence is \
             left partial"
                .into(),
        );
    }
    validate(
        datum,
        mu,
        &newton,
        &eo,
        &minimal,
        incidence_total,
        &mut warnings,
    )?;

    let incidence = eo_newton_incidence(&newton, &eo, &minimal, incidence_total)?;

    let mu_bar = datum.galois_average(&ivec_to_rvec(mu));
    let shimura_dim = datum.pair_two_rho(&ivec_to_rvec(mu));

    let newton_reports: Vec<NewtonClassReport> = newton
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| NewtonClassReport {
            label: format!("b{i}"),
            nu: c.nu.clone(),
            kappa: c.kappa.coords.clone(),
            defect: c.defect.clone(),
            dim: c.stratum_dim.clone(),
            leaf_dim: c.leaf_dim.clone(),
            defect_raw: c.defect_raw.clone(),
            dim_raw: c.stratum_dim_raw.clone(),
            is_basic: c.is_basic,
            is_mu_ordinary: c.is_mu_ordinary,
            witness: c
                .straight_witness
                .as_ref()
                .map(|e| (e.lambda.clone(), aff.weyl().word(e.w).to_vec())),
        })
        .collect();
    let eo_reports: Vec<EOStratumReport> = eo
        .strata
        .iter()
        .enumerate()
        .map(|(i, s)| EOStratumReport {
            label: format!("w{i}"),
            word: aff.weyl().word(s.w).to_vec(),
            length: s.length,
            sigma_straight: s.sigma_straight,
            zip_orbit_dim: s.zip_orbit_dim,
            newton_index: incidence[i],
        })
        .collect();

    Ok(StrataAtlas {
        descriptor: config.descriptor.clone(),
        mu: mu.to_vec(),
        mu_bar,
        shimura_dim,
        split,
        fully_hn,
        coxeter_preset: config.coxeter_preset,
        incidence_total,
        newton: newton_reports,
        newton_covers: newton.covers.clone(),
        eo: eo_reports,
        eo_covers: eo.covers.clone(),
        warnings,
    })
}

/// The stratum → class incidence map. Total in the fully decomposable
/// case (σ-straight strata label their own class, the rest fall into the
/// basic one); otherwise defined on σ-straight strata only (which always
/// include the ordinary and superspecial strata).
pub fn eo_newton_incidence(
    newton: &NewtonSide,
    eo: &EOSide,
    minimal: &[(usize, usize)],
    total: bool,
) -> Result<Vec<Option<usize>>> {
    let mut out = vec![None; eo.strata.len()];
    for &(i, c) in minimal {
        out[i] = Some(c);
    }
    let basic = newton.basic_index();
    for (i, s) in eo.strata.iter().enumerate() {
        if out[i].is_some() {
            continue;
        }
        if total {
            // a non-straight stratum in a fully decomposable pair must
            // have basic Newton invariants
            if newton.find(&s.newton_nu, &s.newton_kappa) != Some(basic) {
                return Err(Error::invariant(
                    "non-straight stratum with non-basic Newton point in a fully \
                     Hodge-Newton decomposable pair",
                ));
            }
            out[i] = Some(basic);
        }
    }
    Ok(out)
}

fn validate(
    datum: &RootDatum,
    mu: &[Int],
    newton: &NewtonSide,
    eo: &EOSide,
    minimal: &[(usize, usize)],
    total_incidence: bool,
    warnings: &mut Vec<String>,
) -> Result<()> {
    let two = Rat::from(Int::from(2));
    // integrality of official dimension data (raw values may legitimately
    // be fractional on data without integral weight lifts; they are
    // reported, flagged, never rounded)
    for (i, c) in newton.classes.iter().enumerate() {
        for (name, v) in [
            ("defect", &c.defect),
            ("dimension", &c.stratum_dim),
            ("leaf dimension", &c.leaf_dim),
        ] {
            if !v.denom().is_one() {
                return Err(Error::invariant(format!(
                    "class {i} has non-integral {name} {v}; datum/lattice misconfiguration"
                )));
            }
        }
        if c.stratum_dim.is_negative() {
            return Err(Error::invariant(format!(
                "class {i} has negative dimension"
            )));
        }
        if c.defect_raw != c.defect || c.stratum_dim_raw != c.stratum_dim {
            warnings.push(format!(
                "class {i}: raw formula gives defect {} and dimension {}; avatar values \
                 defect {} and dimension {} are authoritative",
                c.defect_raw, c.stratum_dim_raw, c.defect, c.stratum_dim
            ));
        }
        // leaf ≤ stratum, equality at the μ-ordinary class
        if c.leaf_dim > c.stratum_dim {
            return Err(Error::invariant(format!(
                "class {i}: leaf dimension exceeds stratum dimension"
            )));
        }
        if c.is_mu_ordinary && c.leaf_dim != c.stratum_dim {
            return Err(Error::invariant("μ-ordinary stratum is not a single leaf"));
        }
    }
    // purity shadow: every non-minimal class has a lower neighbour exactly
    // one dimension down
    for (i, c) in newton.classes.iter().enumerate() {
        let below: Vec<usize> = (0..newton.classes.len())
            .filter(|&j| j != i && newton.leq[j][i])
            .collect();
        if below.is_empty() {
            continue;
        }
        let max_below = below
            .iter()
            .map(|&j| newton.classes[j].stratum_dim.clone())
            .max()
            .unwrap();
        if c.stratum_dim.clone() - max_below != Rat::one() {
            return Err(Error::invariant(format!(
                "purity violated at class {i}: no lower neighbour of dimension one less"
            )));
        }
    }
    // the μ-ordinary invariants
    let ord = &newton.classes[newton.mu_ordinary_index()];
    let total_dim = datum.pair_two_rho(&ivec_to_rvec(mu));
    if ord.stratum_dim != total_dim || ord.leaf_dim != total_dim {
        return Err(Error::invariant(
            "μ-ordinary dimension differs from ⟨2ρ, μ⟩",
        ));
    }
    let ordinary_len = Rat::from(Int::from(eo.strata[eo.ordinary_index()].length as i64));
    if ordinary_len != total_dim {
        return Err(Error::invariant(
            "ordinary stratum length differs from ⟨2ρ, μ⟩",
        ));
    }
    // ordinary stratum must be minimal and label the μ-ordinary class;
    // identity stratum must label the basic class
    let ord_idx = eo.ordinary_index();
    match minimal.iter().find(|&&(i, _)| i == ord_idx) {
        Some(&(_, c)) if newton.classes[c].is_mu_ordinary => {}
        _ => {
            return Err(Error::invariant(
                "ordinary stratum does not label the μ-ordinary class",
            ))
        }
    }
    let ss_idx = eo.superspecial_index();
    match minimal.iter().find(|&&(i, _)| i == ss_idx) {
        Some(&(_, c)) if newton.classes[c].is_basic => {}
        _ => {
            return Err(Error::invariant(
                "superspecial stratum does not label the basic class",
            ))
        }
    }
    // in the total-incidence regime every stratum with non-basic Newton
    // invariants is σ-straight
    let basic = newton.basic_index();
    if total_incidence {
        for s in &eo.strata {
            if !s.sigma_straight && newton.find(&s.newton_nu, &s.newton_kappa) != Some(basic) {
                return Err(Error::invariant(
                    "non-straight stratum with non-basic Newton point in a fully \
                     Hodge-Newton decomposable pair",
                ));
            }
        }
    }
    if total_incidence {
        // non-basic classes: the incidence fiber consists exactly of the
        // class's minimal strata, each of leaf dimension
        for &(i, c) in minimal {
            if c != basic {
                let class = &newton.classes[c];
                let l = Rat::from(Int::from(eo.strata[i].length as i64));
                if l != class.leaf_dim {
                    return Err(Error::invariant(
                        "minimal stratum length differs from central-leaf dimension",
                    ));
                }
                if l > class.stratum_dim {
                    return Err(Error::invariant(
                        "stratum exceeds its Newton class dimension",
                    ));
                }
            }
        }
    }
    // exactness bookkeeping: 2·dim + def must be integral however the
    // avatar was configured
    for c in &newton.classes {
        let lhs = (c.stratum_dim.clone() * two.clone()) + c.defect.clone();
        if !lhs.denom().is_one() {
            return Err(Error::invariant("dimension/defect parity broken"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ivec, rat, rvec};
    use crate::root_datum::{build_datum, ClassicalDatum};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn sigma_stable_levi_enumeration() {
        // A₁ split: only ∅ is proper
        let a1 = build_datum(&ClassicalDatum::Gl { n: 2 }).unwrap();
        assert_eq!(sigma_stable_levis(&a1), vec![Vec::<usize>::new()]);
        // A₁×A₁ with σ swapping the factors: only ∅
        let res2 = a1.restriction_of_scalars(2).unwrap();
        assert_eq!(sigma_stable_levis(&res2), vec![Vec::<usize>::new()]);
        // B₂ split: ∅, {0}, {1}
        let b2 = build_datum(&ClassicalDatum::SoOdd { m: 2 }).unwrap();
        assert_eq!(sigma_stable_levis(&b2), vec![vec![], vec![0], vec![1]]);
    }

    #[test]
    fn hn_decomposability_examples() {
        let gl2 = build_datum(&ClassicalDatum::Gl { n: 2 }).unwrap();
        let mu = ivec(&[1, 0]);
        // basic class with central ν: never decomposable
        let basic = rvec(&[(1, 2), (1, 2)]);
        for j0 in sigma_stable_levis(&gl2) {
            assert!(!is_hn_decomposable(&gl2, &mu, &basic, &j0).unwrap());
        }
        // μ-ordinary with J₀ = ∅: μ̄ − ν = 0 and ν is regular
        let ord = rvec(&[(1, 1), (0, 1)]);
        assert!(is_hn_decomposable(&gl2, &mu, &ord, &[]).unwrap());
    }

    #[test]
    fn quaternionic_middle_class_is_indecomposable() {
        // one place of degree 3 with all embeddings split: the middle
        // class needs every factor, but the only proper σ-stable Levi is ∅
        let d = build_datum(&ClassicalDatum::Gl { n: 2 })
            .unwrap()
            .restriction_of_scalars(3)
            .unwrap();
        let mu = ivec(&[1, 0, 1, 0, 1, 0]);
        let middle = rvec(&[(2, 3), (1, 3), (2, 3), (1, 3), (2, 3), (1, 3)]);
        for j0 in sigma_stable_levis(&d) {
            assert!(!is_hn_decomposable(&d, &mu, &middle, &j0).unwrap());
        }
    }

    #[test]
    fn atlas_smallest_quaternionic() {
        let d = build_datum(&ClassicalDatum::Gl { n: 2 }).unwrap();
        let atlas = build_atlas(&d, &ivec(&[1, 0]), &AtlasConfig::default(), &caps()).unwrap();
        assert_eq!(atlas.newton.len(), 2);
        assert_eq!(atlas.eo.len(), 2);
        assert!(atlas.fully_hn);
        assert!(atlas.incidence_total);
        assert_eq!(atlas.shimura_dim, rat(1, 1));
        assert!(atlas.eo.iter().all(|s| s.newton_index.is_some()));
    }

    #[test]
    fn atlas_mu_zero_degenerate() {
        let d = build_datum(&ClassicalDatum::Gl { n: 2 }).unwrap();
        let atlas = build_atlas(&d, &ivec(&[0, 0]), &AtlasConfig::default(), &caps()).unwrap();
        assert_eq!(atlas.newton.len(), 1);
        assert_eq!(atlas.eo.len(), 1);
        assert!(
            atlas.fully_hn,
            "no non-basic classes: vacuously decomposable"
        );
        assert_eq!(atlas.newton[0].dim, rat(0, 1));
    }

    #[test]
    fn non_minuscule_mu_rejected() {
        let d = build_datum(&ClassicalDatum::Gl { n: 2 }).unwrap();
        let e = build_atlas(&d, &ivec(&[2, 0]), &AtlasConfig::default(), &caps());
        assert!(matches!(e, Err(crate::Error::Datum(_))));
        let d = build_datum(&ClassicalDatum::SoOdd { m: 4 }).unwrap();
        let e = build_atlas(&d, &ivec(&[1, 1, 0, 0]), &AtlasConfig::default(), &caps());
        assert!(matches!(e, Err(crate::Error::Datum(_))));
    }

    #[test]
    fn mixed_product_keeps_partial_incidence() {
        // a degree-2 place with both embeddings split times an elliptic
        // place: decomposability holds factorwise, but the first factor's
        // basic class has positive-dimensional admissible fibers, so
        // straightness cannot complete the incidence map
        let p = crate::preset::quaternionic(&[(2, 2), (1, 1)]).unwrap();
        let atlas = p.build(&Caps::default()).unwrap();
        assert!(atlas.fully_hn);
        assert!(!atlas.incidence_total);
        assert!(atlas
            .warnings
            .iter()
            .any(|w| w.contains("zero-dimensionality")));
        // σ-straight strata still label every class...
        for c in 0..atlas.newton.len() {
            assert!(atlas.eo.iter().any(|s| s.newton_index == Some(c)));
        }
        // ...and the non-straight ones stay honestly unlabeled
        assert!(atlas.eo.iter().any(|s| s.newton_index.is_none()));
    }

    #[test]
    fn so8_split_parity_matching() {
        // D₄, m = 4 even: the class ¼(e1+e2+e3+e4) lands on the primed
        // middle stratum (the one whose word ends with the fork generator)
        let d = build_datum(&ClassicalDatum::SoEvenSplit { m: 4 }).unwrap();
        let avatar = Avatar {
            datum: build_datum(&ClassicalDatum::GSpinEvenSplit { m: 4 }).unwrap(),
            mu: ivec(&[1, 0, 0, 0, 0]),
        };
        let config = AtlasConfig {
            descriptor: "so8-split".into(),
            avatar: Some(avatar),
            coxeter_preset: true,
        };
        let atlas = build_atlas(&d, &ivec(&[1, 0, 0, 0]), &config, &caps()).unwrap();
        assert!(atlas.fully_hn);
        let b4 = atlas
            .newton
            .iter()
            .position(|c| c.nu == rvec(&[(1, 4), (1, 4), (1, 4), (1, 4)]))
            .unwrap();
        let b4p = atlas
            .newton
            .iter()
            .position(|c| c.nu == rvec(&[(1, 4), (1, 4), (1, 4), (-1, 4)]))
            .unwrap();
        let fiber_of = |c: usize| -> Vec<&EOStratumReport> {
            atlas
                .eo
                .iter()
                .filter(|s| s.newton_index == Some(c))
                .collect()
        };
        let f4 = fiber_of(b4);
        let f4p = fiber_of(b4p);
        assert_eq!(f4.len(), 1);
        assert_eq!(f4p.len(), 1);
        assert_eq!(f4[0].length, 3);
        assert_eq!(f4p[0].length, 3);
        // m even: b₄ pairs with the primed stratum w'₃ = s₁s₂s₄ (word ends
        // in the fork generator, index 3), b'₄ with w₃ = s₁s₂s₃
        assert_eq!(f4[0].word, vec![0, 1, 3]);
        assert_eq!(f4p[0].word, vec![0, 1, 2]);
    }
}
