//! The Ekedahl-Oort side: the parabolic quotient `ᴶW` with the zip
//! closure order `⪯`, its identification with the admissible-set avatar
//! `EO(μ) ⊂ W̃`, stratum dimensions, zip-orbit dimensions, and detection
//! of the σ-straight (minimal) strata.
//!
//! The identification sends `w ∈ ᴶW` to `t^μ · x_μ · w` where
//! `x_μ = w₀ w_{0,μ}` and `t^μ x_μ` is the length-zero representative of
//! the μ-coset. (Composing the usual `υ = σ(μ)` labeling with the inverse
//! Frobenius relabeling of classes lands on μ itself; υ is recorded for
//! reference.) The map is validated to be a bijection onto `EO(μ)` that
//! transports lengths and the partial orders; any mismatch is a hard
//! failure, never patched up.

use num_traits::Zero;

use crate::affine::{AffineElt, AffineWeyl};
use crate::error::{Error, Result};
use crate::exec;
use crate::kottwitz::NewtonSide;
use crate::linalg::{ivec_to_rvec, solve_in_span, Int};
use crate::root_datum::{IVec, Pi1Class, RVec};
use crate::weyl::WeylElt;

/// One Ekedahl-Oort stratum: an element of `ᴶW` with its affine avatar and
/// invariants. The stratum dimension is the Coxeter length.
#[derive(Clone, Debug)]
pub struct EOStratum {
    pub w: WeylElt,
    pub length: usize,
    pub affine: AffineElt,
    pub sigma_straight: bool,
    /// Newton invariants of the affine avatar; labels a class of `B(G,μ)`
    /// exactly when the stratum is σ-straight
    pub newton_nu: RVec,
    pub newton_kappa: Pi1Class,
    pub zip_orbit_dim: usize,
}

/// `ᴶW` with the order `⪯`, identified with `EO(μ)`.
#[derive(Clone, Debug)]
pub struct EOSide {
    pub j: Vec<usize>,
    pub x: WeylElt,
    /// the labeling cocharacter σ(μ) from the zip normalization
    pub upsilon: IVec,
    pub strata: Vec<EOStratum>,
    pub leq: Vec<Vec<bool>>,
    pub covers: Vec<(usize, usize)>,
}

impl EOSide {
    pub fn superspecial_index(&self) -> usize {
        self.strata
            .iter()
            .position(|s| s.length == 0)
            .expect("identity stratum")
    }

    pub fn ordinary_index(&self) -> usize {
        let n = self.strata.len();
        (0..n)
            .find(|&i| (0..n).all(|j| self.leq[j][i]))
            .expect("unique maximal stratum")
    }
}

/// Number of positive roots lying in the standard parabolic subsystem
/// generated by `j`.
fn parabolic_positive_roots(aff: &AffineWeyl, j: &[usize]) -> usize {
    let datum = aff.datum();
    let cols: Vec<RVec> = datum
        .simple_roots()
        .iter()
        .map(|r| ivec_to_rvec(r))
        .collect();
    datum
        .positive_roots()
        .iter()
        .filter(|r| {
            let exp = solve_in_span(&cols, &ivec_to_rvec(r))
                .expect("positive root expands over simple roots");
            exp.iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || j.contains(&i))
        })
        .count()
}

/// Builds the EO side for a dominant minuscule μ and cross-validates the
/// finite and affine pictures.
pub fn identify_eo(aff: &AffineWeyl, mu: &[Int], cap: usize) -> Result<EOSide> {
    let datum = aff.datum();
    let weyl = aff.weyl();
    if !datum.is_dominant_int(mu) {
        return Err(Error::datum("EO side needs a dominant cocharacter"));
    }
    let j = weyl.parabolic_type_of(mu);
    let x = weyl.x_element(&j)?;
    let jw = weyl.jw_set(&j);

    // length-zero representative τ = t^μ · x_μ with x_μ = w₀ w_{0,μ}
    let w0m = weyl.longest_in_parabolic(&j);
    let x_mu = weyl.mul(weyl.longest(), w0m);
    let tau = AffineElt {
        lambda: mu.to_vec(),
        w: x_mu,
    };
    if !aff.length(&tau).is_zero() {
        return Err(Error::invariant("τ = t^μ x_μ does not have length zero"));
    }

    // affine avatars τ·w, which must enumerate EO(μ)
    let avatars: Vec<AffineElt> = jw
        .iter()
        .map(|&w| {
            aff.mul(
                &tau,
                &AffineElt {
                    lambda: vec![Int::zero(); datum.rank()],
                    w,
                },
            )
        })
        .collect();
    for (&w, a) in jw.iter().zip(&avatars) {
        let la = aff.length_usize(a);
        if la != weyl.length(w) {
            return Err(Error::invariant(format!(
                "length not transported: l(w) = {}, l(τw) = {la}",
                weyl.length(w)
            )));
        }
    }
    let eo_set = aff.eo_set(mu, cap)?;
    {
        let mut got: Vec<&AffineElt> = avatars.iter().collect();
        let mut want: Vec<&AffineElt> = eo_set.iter().collect();
        let key = |e: &&AffineElt| (e.lambda.clone(), e.w.0);
        got.sort_by_key(key);
        want.sort_by_key(key);
        if got != want {
            return Err(Error::invariant("τ·ᴶW does not enumerate EO(μ)"));
        }
    }

    // the finite order ⪯ and its affine counterpart must agree
    let n = jw.len();
    let leq: Vec<Vec<bool>> = exec::map_range(n, |a| {
        (0..n)
            .map(|b| weyl.eo_preceq(&j, x, jw[a], jw[b]))
            .collect()
    });
    let affine_leq: Vec<Vec<bool>> = exec::map_range(n, |a| {
        (0..n)
            .map(|b| {
                weyl.elements().any(|y| {
                    let y_aff = AffineElt {
                        lambda: vec![Int::zero(); datum.rank()],
                        w: y,
                    };
                    let conj = aff.mul(&aff.mul(&y_aff, &avatars[a]), &aff.inv(&aff.sigma(&y_aff)));
                    aff.bruhat_leq(&conj, &avatars[b])
                })
            })
            .collect()
    });
    if leq != affine_leq {
        return Err(Error::invariant(
            "⪯ on ᴶW and on EO(μ) are not identified: convention bug",
        ));
    }
    // partial order sanity: antisymmetry with length monotonicity
    for a in 0..n {
        for b in 0..n {
            if leq[a][b] {
                let (la, lb) = (weyl.length(jw[a]), weyl.length(jw[b]));
                if la > lb || (la == lb && a != b) {
                    return Err(Error::invariant("⪯ violates length monotonicity"));
                }
            }
        }
    }
    // unique minimum (the identity) and unique maximum
    let minima: Vec<usize> = (0..n).filter(|&i| (0..n).all(|k| leq[i][k])).collect();
    let maxima: Vec<usize> = (0..n).filter(|&i| (0..n).all(|k| leq[k][i])).collect();
    if minima.len() != 1 || jw[minima[0]] != weyl.identity() {
        return Err(Error::invariant(
            "⪯ does not have the identity as unique minimum",
        ));
    }
    if maxima.len() != 1 {
        return Err(Error::invariant("⪯ does not have a unique maximum"));
    }

    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a][b] {
                let direct = !(0..n).any(|k| k != a && k != b && leq[a][k] && leq[k][b]);
                if direct {
                    covers.push((a, b));
                }
            }
        }
    }
    covers.sort_unstable();

    let dim_p = datum.rank() + datum.positive_roots().len() + parabolic_positive_roots(aff, &j);
    let straight_flags = exec::map_slice(&avatars, |a| {
        (
            aff.is_sigma_straight(a),
            aff.newton_point(a),
            aff.kottwitz_point(a),
        )
    });
    let strata: Vec<EOStratum> = jw
        .iter()
        .zip(avatars)
        .zip(straight_flags)
        .map(
            |((&w, affine), (sigma_straight, newton_nu, newton_kappa))| EOStratum {
                w,
                length: weyl.length(w),
                affine,
                sigma_straight,
                newton_nu,
                newton_kappa,
                zip_orbit_dim: dim_p + weyl.length(w),
            },
        )
        .collect();

    Ok(EOSide {
        j,
        x,
        upsilon: datum.apply_sigma(mu),
        strata,
        leq,
        covers,
    })
}

/// Indices of the σ-straight (minimal) strata, each labeled with the index
/// of its Newton class. Checks surjectivity onto `B(G,μ)`, and injectivity
/// when the datum is split.
pub fn minimal_eo(
    aff: &AffineWeyl,
    eo: &EOSide,
    newton: &NewtonSide,
) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for (i, s) in eo.strata.iter().enumerate() {
        if s.sigma_straight {
            let idx = newton.find(&s.newton_nu, &s.newton_kappa).ok_or_else(|| {
                Error::invariant("σ-straight stratum labels a class outside B(G,μ)")
            })?;
            out.push((i, idx));
        }
    }
    let mut hit = vec![false; newton.classes.len()];
    for &(_, c) in &out {
        hit[c] = true;
    }
    if hit.iter().any(|h| !h) {
        return Err(Error::invariant(
            "minimal strata do not surject onto B(G,μ)",
        ));
    }
    if aff.datum().sigma_order() == 1 {
        let mut seen = vec![false; newton.classes.len()];
        for &(_, c) in &out {
            if seen[c] {
                return Err(Error::invariant(
                    "split datum carries two minimal strata in one Newton class",
                ));
            }
            seen[c] = true;
        }
    }
    Ok(out)
}
