//! The finite set `B(G,μ)` of neutral-acceptable σ-conjugacy classes, with
//! its dominance order, defects, stratum dimensions and leaf dimensions.
//!
//! Two independent routes compute the underlying `(ν, κ)`-set:
//!
//! * enumeration of σ-straight elements of the μ-admissible set, mapped to
//!   their Newton and Kottwitz points (always the canonical route);
//! * direct enumeration of dominant σ-invariant rational points `ν ≤ μ̄`
//!   with bounded denominator, filtered by the integrality criterion
//!   `⟨μ̄ - ν, w̃_α⟩ ∈ ℕ` at every relative simple root not vanishing on ν.
//!
//! The assembled computation runs both and insists they agree.
//!
//! Dimension bookkeeping distinguishes the raw formula values on the given
//! datum from values computed on a connected-center avatar when one is
//! supplied; the raw fractional-part defect formula is known to undercount
//! on basic classes of data whose fundamental weights have no integral
//! lifts, so both numbers are carried.

use num_traits::{One, Signed, Zero};

use crate::affine::{AffineElt, AffineWeyl};
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{denom_lcm, dot_ii, dot_rr, frac, ivec_to_rvec, Int, Rat};
use crate::root_datum::{IVec, Pi1Class, RVec, RootDatum};

/// Connected-center avatar of a datum (a z-extension), used for defect and
/// dimension arithmetic. The simple coroots must correspond index-by-index
/// to those of the main datum under forgetting the extra central
/// coordinates.
#[derive(Clone, Debug)]
pub struct Avatar {
    pub datum: RootDatum,
    pub mu: IVec,
}

impl Avatar {
    /// Transfers a Newton point of the main datum to the avatar lattice:
    /// `ν_av = μ̄_av + Σ c_i α_i^∨(av)` where the `c_i` expand `ν − μ̄`
    /// over the simple coroots of the main datum.
    pub fn lift(&self, main: &RootDatum, main_mu: &[Int], nu: &[Rat]) -> Result<RVec> {
        let mu_bar = main.galois_average(&ivec_to_rvec(main_mu));
        let diff: RVec = nu.iter().zip(&mu_bar).map(|(a, b)| a - b).collect();
        let coeffs = main
            .coroot_coefficients(&diff)
            .ok_or_else(|| Error::invariant("Newton point does not lie under μ̄"))?;
        let av_mu_bar = self.datum.galois_average(&ivec_to_rvec(&self.mu));
        let mut out = av_mu_bar;
        for (c, coroot) in coeffs.iter().zip(self.datum.simple_coroots()) {
            for (o, x) in out.iter_mut().zip(coroot) {
                *o += c * Rat::from(x.clone());
            }
        }
        if !self.datum.is_dominant(&out) {
            return Err(Error::invariant(
                "avatar lift of Newton point is not dominant",
            ));
        }
        if self.datum.apply_sigma_rat(&out) != out {
            return Err(Error::invariant(
                "avatar lift of Newton point is not σ-invariant",
            ));
        }
        Ok(out)
    }
}

/// A point of `B(G,μ)` with its invariants. Dimensions are exact
/// rationals; integrality is validated at assembly time rather than
/// enforced by rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonClass {
    pub nu: RVec,
    pub kappa: Pi1Class,
    pub straight_witness: Option<AffineElt>,
    pub defect: Rat,
    pub stratum_dim: Rat,
    pub leaf_dim: Rat,
    /// raw formula values on the main datum (equal to the official ones
    /// when no avatar is configured)
    pub defect_raw: Rat,
    pub stratum_dim_raw: Rat,
    pub is_basic: bool,
    pub is_mu_ordinary: bool,
}

/// `B(G,μ)` with its dominance order.
#[derive(Clone, Debug)]
pub struct NewtonSide {
    pub classes: Vec<NewtonClass>,
    /// `leq[i][j]` ⟺ class i ≤ class j
    pub leq: Vec<Vec<bool>>,
    /// cover relations (i, j): i covered by j
    pub covers: Vec<(usize, usize)>,
    /// degraded cross-checks and raw/avatar discrepancies
    pub warnings: Vec<String>,
}

impl NewtonSide {
    pub fn basic_index(&self) -> usize {
        self.classes
            .iter()
            .position(|c| c.is_basic)
            .expect("basic class exists")
    }

    pub fn mu_ordinary_index(&self) -> usize {
        self.classes
            .iter()
            .position(|c| c.is_mu_ordinary)
            .expect("μ-ordinary class exists")
    }

    pub fn find(&self, nu: &[Rat], kappa: &Pi1Class) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.nu == nu && &c.kappa == kappa)
    }
}

/// Raw defect formula: `2 Σ_i { ⟨ν, w̃_i⟩ }` over the σ-orbit sums of the
/// fundamental weights.
pub fn defect_raw(datum: &RootDatum, nu: &[Rat]) -> Rat {
    let mut total = Rat::zero();
    for orbit in datum.weight_orbit_sums() {
        total += frac(&dot_rr(nu, &orbit.vec));
    }
    total * Rat::from(Int::from(2))
}

/// `⟨ρ, μ + ν⟩ − def/2`.
pub fn stratum_dim(datum: &RootDatum, mu: &[Int], nu: &[Rat], defect: &Rat) -> Rat {
    let rho = datum.rho();
    let mu_r = ivec_to_rvec(mu);
    dot_rr(&rho, &mu_r) + dot_rr(&rho, nu) - defect / Rat::from(Int::from(2))
}

/// `⟨2ρ, ν⟩`.
pub fn leaf_dim(datum: &RootDatum, nu: &[Rat]) -> Rat {
    datum.pair_two_rho(nu)
}

/// Straight-element route: σ-straight members of the admissible set,
/// deduplicated by `(ν, κ)`. Returns classes sorted by ν and a canonical
/// minimal witness each.
pub fn b_set_via_straight(
    aff: &AffineWeyl,
    mu: &[Int],
    cap: usize,
) -> Result<Vec<(RVec, Pi1Class, AffineElt)>> {
    if !aff.datum().is_dominant_int(mu) {
        return Err(Error::datum("b_set needs a dominant cocharacter"));
    }
    if !aff.datum().is_minuscule(mu) {
        return Err(Error::datum(
            "straight-element route needs a minuscule cocharacter",
        ));
    }
    let adm = aff.admissible_set(mu, cap)?;
    let scanned = exec::map_slice(&adm, |e| {
        if aff.is_sigma_straight(e) {
            Some((aff.newton_point(e), aff.kottwitz_point(e), e.clone()))
        } else {
            None
        }
    });
    let mut out: Vec<(RVec, Pi1Class, AffineElt)> = Vec::new();
    for item in scanned.into_iter().flatten() {
        match out
            .iter()
            .position(|(nu, k, _)| *nu == item.0 && *k == item.1)
        {
            // admissible sets are sorted by length, so the first witness
            // found is the minimal one
            Some(_) => {}
            None => out.push(item),
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Polytope route: dominant σ-invariant `ν ≤ μ̄` with denominator dividing
/// `denominator_bound`, subject to the relative-weight integrality
/// condition. Returns the ν-set sorted.
pub fn b_set_via_polytope(
    datum: &RootDatum,
    mu: &[Int],
    denominator_bound: &Int,
    cap: usize,
) -> Result<Vec<RVec>> {
    let mu_bar = datum.galois_average(&ivec_to_rvec(mu));
    let k = datum.num_simple();
    if k == 0 {
        return Ok(vec![mu_bar]);
    }
    let rootspan = datum.fundamental_weights_rootspan();
    // grid denominator for the coroot coefficients
    let d_omega = rootspan
        .iter()
        .map(|w| denom_lcm(w))
        .fold(Int::one(), num_integer::lcm);
    // coefficients pair a denominator-L vector against the root-span
    // weights, so their denominators divide L·d_omega
    let l: Int = num_integer::lcm(denominator_bound.clone(), denom_lcm(&mu_bar));
    let q: Int = &l * &d_omega;
    // all arithmetic at scale M = q: ν_scaled = q·ν ∈ ℤ^rank
    let mu_bar_scaled: IVec = mu_bar
        .iter()
        .map(|x| (x * Rat::from(q.clone())).to_integer())
        .collect();
    // per-axis bounds: 0 ≤ q·c_i ≤ q·⟨μ̄, ω_i^der⟩
    let mut limits = Vec::with_capacity(k);
    let mut grid_size = 1usize;
    for w in rootspan {
        let hi = dot_rr(&mu_bar, w) * Rat::from(q.clone());
        if hi.is_negative() {
            return Err(Error::invariant(
                "negative fundamental-weight pairing with μ̄",
            ));
        }
        let hi = hi.to_integer();
        use num_traits::ToPrimitive;
        let steps = (&hi + Int::one()).to_usize().unwrap_or(usize::MAX);
        grid_size = grid_size.saturating_mul(steps);
        limits.push(hi);
    }
    if grid_size > cap {
        return Err(Error::CapExceeded(format!(
            "polytope grid of {grid_size} points exceeds cap {cap}"
        )));
    }

    // scaled orbit-sum characters for the integrality condition
    let orbit_sums = datum.weight_orbit_sums();
    let os_scale = orbit_sums
        .iter()
        .map(|o| denom_lcm(&o.vec))
        .fold(Int::one(), num_integer::lcm);
    let orbit_scaled: Vec<(usize, IVec)> = orbit_sums
        .iter()
        .map(|o| {
            let v = o
                .vec
                .iter()
                .map(|x| (x * Rat::from(os_scale.clone())).to_integer())
                .collect();
            (o.indices[0], v)
        })
        .collect();

    let q_over_d = &q / denominator_bound;
    let coroots = datum.simple_coroots();

    // walk the first axis in parallel, the rest by recursion
    use num_traits::ToPrimitive;
    let first_steps = (&limits[0] + Int::one()).to_usize().unwrap();
    let chunks = exec::map_range(first_steps, |c0| {
        let mut found: Vec<RVec> = Vec::new();
        let mut coeffs: Vec<Int> = vec![Int::zero(); k];
        coeffs[0] = Int::from(c0 as i64);
        enumerate_axis(
            datum,
            1,
            &mut coeffs,
            &limits,
            &mu_bar_scaled,
            coroots,
            &q,
            &q_over_d,
            &orbit_scaled,
            &os_scale,
            &mut found,
        );
        found
    });
    let mut out: Vec<RVec> = chunks.into_iter().flatten().collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_axis(
    datum: &RootDatum,
    axis: usize,
    coeffs: &mut Vec<Int>,
    limits: &[Int],
    mu_bar_scaled: &[Int],
    coroots: &[IVec],
    q: &Int,
    q_over_d: &Int,
    orbit_scaled: &[(usize, IVec)],
    os_scale: &Int,
    found: &mut Vec<RVec>,
) {
    if axis == limits.len() {
        check_candidate(
            datum,
            coeffs,
            mu_bar_scaled,
            coroots,
            q,
            q_over_d,
            orbit_scaled,
            os_scale,
            found,
        );
        return;
    }
    let mut c = Int::zero();
    while c <= limits[axis] {
        coeffs[axis] = c.clone();
        enumerate_axis(
            datum,
            axis + 1,
            coeffs,
            limits,
            mu_bar_scaled,
            coroots,
            q,
            q_over_d,
            orbit_scaled,
            os_scale,
            found,
        );
        c += Int::one();
    }
}

#[allow(clippy::too_many_arguments)]
fn check_candidate(
    datum: &RootDatum,
    coeffs: &[Int],
    mu_bar_scaled: &[Int],
    coroots: &[IVec],
    q: &Int,
    q_over_d: &Int,
    orbit_scaled: &[(usize, IVec)],
    os_scale: &Int,
    found: &mut Vec<RVec>,
) {
    // ν_scaled = q·μ̄ − Σ c_i · coroot_i
    let rank = mu_bar_scaled.len();
    let mut nu_scaled: IVec = mu_bar_scaled.to_vec();
    for (c, coroot) in coeffs.iter().zip(coroots) {
        for (x, y) in nu_scaled.iter_mut().zip(coroot) {
            *x -= c * y;
        }
    }
    // denominator of ν divides the bound: q·ν ≡ 0 mod q/D
    if !q_over_d.is_one() && nu_scaled.iter().any(|x| !(x % q_over_d).is_zero()) {
        return;
    }
    // dominant
    if datum
        .simple_roots()
        .iter()
        .any(|a| dot_ii(&nu_scaled, a).is_negative())
    {
        return;
    }
    // σ-invariant
    if datum.sigma().mul_vec(&nu_scaled) != nu_scaled {
        return;
    }
    // integrality condition at relative simple roots with ⟨ν, α⟩ ≠ 0:
    // ⟨μ̄ − ν, w̃_α⟩ ∈ ℕ
    let diff_scaled: IVec = mu_bar_scaled
        .iter()
        .zip(&nu_scaled)
        .map(|(a, b)| a - b)
        .collect();
    for (rep, ws) in orbit_scaled {
        if dot_ii(&nu_scaled, &datum.simple_roots()[*rep]).is_zero() {
            continue;
        }
        let num = dot_ii(&diff_scaled, ws);
        let den = q * os_scale;
        if num.is_negative() || !(&num % &den).is_zero() {
            return;
        }
    }
    let qr = Rat::from(q.clone());
    let nu: RVec = (0..rank)
        .map(|i| Rat::from(nu_scaled[i].clone()) / &qr)
        .collect();
    found.push(nu);
}

/// Pairwise dominance order and its cover relations.
pub fn order_matrix(datum: &RootDatum, nus: &[RVec]) -> (Vec<Vec<bool>>, Vec<(usize, usize)>) {
    let n = nus.len();
    let leq: Vec<Vec<bool>> = exec::map_range(n, |i| {
        (0..n)
            .map(|j| datum.dominance_leq(&nus[i], &nus[j]))
            .collect()
    });
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] {
                let direct = !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]);
                if direct {
                    covers.push((i, j));
                }
            }
        }
    }
    covers.sort();
    (leq, covers)
}

/// Runs both routes, cross-checks them, and assembles the ordered Newton
/// side with all dimension data.
pub fn newton_side(
    aff: &AffineWeyl,
    mu: &[Int],
    avatar: Option<&Avatar>,
    cap: usize,
) -> Result<NewtonSide> {
    let datum = aff.datum();
    let straight = b_set_via_straight(aff, mu, cap)?;
    if straight.is_empty() {
        return Err(Error::invariant("no σ-straight classes found"));
    }
    let mut warnings = Vec::new();
    // route equivalence: denominator bound harvested from the straight route
    let mut denom = Int::one();
    for (nu, _, _) in &straight {
        denom = num_integer::lcm(denom, denom_lcm(nu));
    }
    let straight_nus: Vec<RVec> = straight.iter().map(|(nu, _, _)| nu.clone()).collect();
    match b_set_via_polytope(datum, mu, &denom, cap) {
        Ok(poly) => {
            if straight_nus != poly {
                return Err(Error::invariant(format!(
                    "route equivalence violated: straight route found {} classes, \
                     polytope route {}",
                    straight_nus.len(),
                    poly.len()
                )));
            }
        }
        // the straight route is canonical; an oversized cross-check grid
        // degrades to a warning rather than sinking the computation
        Err(Error::CapExceeded(msg)) => {
            warnings.push(format!("polytope cross-check skipped: {msg}"));
        }
        Err(e) => return Err(e),
    }
    // κ is constant, equal to μ_*
    let mu_star = datum.kottwitz_point(mu);
    for (_, kappa, _) in &straight {
        if kappa != &mu_star {
            return Err(Error::invariant(
                "Kottwitz point differs from μ_* inside B(G,μ)",
            ));
        }
    }

    let mu_bar = datum.galois_average(&ivec_to_rvec(mu));
    let (leq_unsorted, _) = order_matrix(datum, &straight_nus);
    let n = straight.len();
    // unique maximum μ̄ and unique minimum
    let maxima: Vec<usize> = (0..n)
        .filter(|&i| (0..n).all(|j| leq_unsorted[j][i]))
        .collect();
    let minima: Vec<usize> = (0..n)
        .filter(|&i| (0..n).all(|j| leq_unsorted[i][j]))
        .collect();
    if maxima.len() != 1 || straight_nus[maxima[0]] != mu_bar {
        return Err(Error::invariant(
            "μ-ordinary class is not the unique maximum",
        ));
    }
    if minima.len() != 1 {
        return Err(Error::invariant("basic class is not the unique minimum"));
    }

    let mut classes = Vec::with_capacity(n);
    for (idx, (nu, kappa, witness)) in straight.iter().enumerate() {
        let def_raw = defect_raw(datum, nu);
        let dim_raw = stratum_dim(datum, mu, nu, &def_raw);
        let (def, dim) = match avatar {
            Some(av) => {
                let lifted = av.lift(datum, mu, nu)?;
                let d = defect_raw(&av.datum, &lifted);
                let s = stratum_dim(&av.datum, &av.mu, &lifted, &d);
                (d, s)
            }
            None => (def_raw.clone(), dim_raw.clone()),
        };
        classes.push(NewtonClass {
            nu: nu.clone(),
            kappa: kappa.clone(),
            straight_witness: Some(witness.clone()),
            defect: def,
            stratum_dim: dim,
            leaf_dim: leaf_dim(datum, nu),
            defect_raw: def_raw,
            stratum_dim_raw: dim_raw,
            is_basic: idx == minima[0],
            is_mu_ordinary: idx == maxima[0],
        });
    }
    // canonical presentation order: descending dimension, then ν
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        classes[b]
            .stratum_dim
            .cmp(&classes[a].stratum_dim)
            .then_with(|| classes[a].nu.cmp(&classes[b].nu))
    });
    let classes: Vec<NewtonClass> = order.iter().map(|&i| classes[i].clone()).collect();
    let nus: Vec<RVec> = classes.iter().map(|c| c.nu.clone()).collect();
    let (leq, covers) = order_matrix(datum, &nus);
    Ok(NewtonSide {
        classes,
        leq,
        covers,
        warnings,
    })
}
