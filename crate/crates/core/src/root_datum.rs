//! Based root data with a Frobenius action.
//!
//! A [`RootDatum`] stores a based root datum `(X^*, Δ, X_*, Δ^∨)` for an
//! unramified reductive group together with the lattice automorphism
//! induced by Frobenius. Cocharacters are integer vectors in `X_* ≅ ℤ^rank`,
//! characters are integer vectors in the dual lattice, and the pairing is
//! the dot product. All derived data (positive roots, half-sums,
//! fundamental weights, the fundamental-group quotients) is computed
//! exactly and cached at construction time.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    self, denom_lcm, dot_ii, dot_ri, ivec_to_rvec, rational_inverse, smith_normal_form,
    solve_in_span, sub_r, zeros_i, zeros_r, IMat, Int, Rat,
};

pub type IVec = Vec<Int>;
pub type RVec = Vec<Rat>;

/// Element of a finitely generated abelian quotient `ℤ^rank / ⟨relations⟩`,
/// in the canonical coordinates produced by [`LatticeQuotient::reduce`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pi1Class {
    pub coords: IVec,
}

/// Quotient of `ℤ^rank` by the column span of a relation matrix, presented
/// through Smith normal form. Used for `π₁(G) = X_*/Q^∨` and for the
/// Galois coinvariants `π₁(G)_Γ = X_*/(Q^∨ + (σ-1)X_*)`.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    rank: usize,
    u: IMat,
    /// invariant factor for each row of `u·λ`; 0 means a free ℤ summand
    moduli: IVec,
}

impl LatticeQuotient {
    pub fn new(rank: usize, relation_cols: &[IVec]) -> Self {
        let m = if relation_cols.is_empty() {
            IMat::from_rows(vec![vec![]; rank])
        } else {
            IMat::from_rows(
                (0..rank)
                    .map(|i| relation_cols.iter().map(|c| c[i].clone()).collect())
                    .collect(),
            )
        };
        let (u, d, _v) = smith_normal_form(&m);
        let moduli = (0..rank)
            .map(|i| {
                if i < d.ncols {
                    d.rows[i][i].clone()
                } else {
                    Int::zero()
                }
            })
            .collect();
        LatticeQuotient { rank, u, moduli }
    }

    pub fn reduce(&self, lambda: &[Int]) -> Pi1Class {
        assert_eq!(lambda.len(), self.rank);
        let y = self.u.mul_vec(lambda);
        let coords = y
            .iter()
            .zip(&self.moduli)
            .map(|(yi, m)| {
                if m.is_zero() {
                    yi.clone()
                } else {
                    yi.mod_floor(m)
                }
            })
            .collect();
        Pi1Class { coords }
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    /// Rank of the free part of the quotient.
    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|m| m.is_zero()).count()
    }

    pub fn is_trivial_class(&self, c: &Pi1Class) -> bool {
        c.coords.iter().all(Zero::is_zero)
    }
}

trait ModFloor {
    fn mod_floor(&self, m: &Int) -> Int;
}

impl ModFloor for Int {
    fn mod_floor(&self, m: &Int) -> Int {
        num_integer::Integer::mod_floor(self, m)
    }
}

/// A fundamental weight for one simple coroot, as a rational character.
/// `integral` records whether an integral lift inside `X^*` was found
/// (always the case when the derived group is simply connected); otherwise
/// the unique lift in the span of the simple roots is used.
#[derive(Clone, Debug)]
pub struct FundamentalWeight {
    pub vec: RVec,
    pub integral: bool,
}

/// Sum of the fundamental weights over one σ-orbit of simple reflections.
#[derive(Clone, Debug)]
pub struct WeightOrbitSum {
    pub indices: Vec<usize>,
    pub vec: RVec,
    pub integral: bool,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<IVec>,
    simple_coroots: Vec<IVec>,
    positive_roots: Vec<IVec>,
    positive_coroots: Vec<IVec>,
    sigma: IMat,
    sigma_char: IMat,
    sigma_order: usize,
    sigma_perm: Vec<usize>,
    components: Vec<Vec<usize>>,
    two_rho: IVec,
    pi1: LatticeQuotient,
    pi1_galois: LatticeQuotient,
    fundamental_weights: Vec<FundamentalWeight>,
    fundamental_weights_rootspan: Vec<RVec>,
    orbit_sums: Vec<WeightOrbitSum>,
}

impl RootDatum {
    /// Builds and validates a datum from its defining data. `sigma` acts on
    /// `X_*`; the induced action on `X^*` is transpose-inverse.
    pub fn new(
        rank: usize,
        simple_roots: Vec<IVec>,
        simple_coroots: Vec<IVec>,
        sigma: IMat,
    ) -> Result<Self> {
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::datum("roots and coroots differ in number"));
        }
        for v in simple_roots.iter().chain(&simple_coroots) {
            if v.len() != rank {
                return Err(Error::datum("rank mismatch in simple root data"));
            }
        }
        if sigma.nrows != rank || sigma.ncols != rank {
            return Err(Error::datum("sigma has wrong shape"));
        }
        let n = simple_roots.len();
        // Cartan condition, on the datum and on its dual
        for i in 0..n {
            for j in 0..n {
                let c = dot_ii(&simple_coroots[i], &simple_roots[j]);
                if i == j && c != Int::from(2) {
                    return Err(Error::datum(format!("⟨α{i}∨, α{i}⟩ = {c} ≠ 2")));
                }
                if i != j && c > Int::zero() {
                    return Err(Error::datum(format!("⟨α{i}∨, α{j}⟩ = {c} > 0")));
                }
                let cd = dot_ii(&simple_roots[i], &simple_coroots[j]);
                if i != j && cd > Int::zero() {
                    return Err(Error::datum("dual datum violates the Cartan condition"));
                }
            }
        }
        let sigma_order = sigma
            .finite_order(1024)
            .map_err(|_| Error::datum("sigma does not have finite order"))?;
        let sigma_char = sigma
            .inverse_unimodular()
            .map_err(|_| Error::datum("sigma is not invertible over ℤ"))?
            .transpose();
        // sigma must permute the simple coroots, inducing the same
        // permutation on the simple roots through the character action
        let mut sigma_perm = Vec::with_capacity(n);
        for i in 0..n {
            let img = sigma.mul_vec(&simple_coroots[i]);
            let j = simple_coroots
                .iter()
                .position(|c| *c == img)
                .ok_or_else(|| {
                    Error::datum(format!("sigma does not permute simple coroots (index {i})"))
                })?;
            if sigma_char.mul_vec(&simple_roots[i]) != simple_roots[j] {
                return Err(Error::datum("sigma acts incompatibly on roots and coroots"));
            }
            sigma_perm.push(j);
        }
        let (positive_roots, positive_coroots) =
            close_positive_roots(&simple_roots, &simple_coroots)?;
        let mut two_rho = zeros_i(rank);
        for r in &positive_roots {
            two_rho = linalg::add_i(&two_rho, r);
        }
        let components = component_partition(&simple_roots, &simple_coroots);
        let pi1 = LatticeQuotient::new(rank, &simple_coroots);
        let mut galois_rels: Vec<IVec> = simple_coroots.clone();
        let id = IMat::identity(rank);
        for k in 0..rank {
            let e: IVec = (0..rank).map(|i| id.rows[i][k].clone()).collect();
            let col = linalg::sub_i(&sigma.mul_vec(&e), &e);
            if col.iter().any(|x| !x.is_zero()) {
                galois_rels.push(col);
            }
        }
        let pi1_galois = LatticeQuotient::new(rank, &galois_rels);

        let mut datum = RootDatum {
            rank,
            simple_roots,
            simple_coroots,
            positive_roots,
            positive_coroots,
            sigma,
            sigma_char,
            sigma_order,
            sigma_perm,
            components,
            two_rho,
            pi1,
            pi1_galois,
            fundamental_weights: Vec::new(),
            fundamental_weights_rootspan: Vec::new(),
            orbit_sums: Vec::new(),
        };
        datum.fundamental_weights_rootspan = datum.solve_rootspan_weights()?;
        datum.fundamental_weights = datum.solve_fundamental_weights()?;
        datum.orbit_sums = datum.solve_orbit_sums()?;
        Ok(datum)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> &[IVec] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[IVec] {
        &self.simple_coroots
    }

    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn positive_roots(&self) -> &[IVec] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[IVec] {
        &self.positive_coroots
    }

    pub fn sigma(&self) -> &IMat {
        &self.sigma
    }

    pub fn sigma_char(&self) -> &IMat {
        &self.sigma_char
    }

    pub fn sigma_order(&self) -> usize {
        self.sigma_order
    }

    /// Permutation induced by sigma on the simple-root index set.
    pub fn sigma_perm(&self) -> &[usize] {
        &self.sigma_perm
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn two_rho(&self) -> &[Int] {
        &self.two_rho
    }

    /// Half-sum of the positive roots, as a rational character.
    pub fn rho(&self) -> RVec {
        self.two_rho
            .iter()
            .map(|x| Rat::new(x.clone(), Int::from(2)))
            .collect()
    }

    /// `⟨v, 2ρ⟩` for a rational cocharacter `v`.
    pub fn pair_two_rho(&self, v: &[Rat]) -> Rat {
        dot_ri(v, &self.two_rho)
    }

    pub fn pi1(&self) -> &LatticeQuotient {
        &self.pi1
    }

    pub fn pi1_galois(&self) -> &LatticeQuotient {
        &self.pi1_galois
    }

    /// Image of an integral cocharacter in `π₁(G)_Γ`.
    pub fn kottwitz_point(&self, lambda: &[Int]) -> Pi1Class {
        self.pi1_galois.reduce(lambda)
    }

    pub fn apply_sigma(&self, v: &[Int]) -> IVec {
        self.sigma.mul_vec(v)
    }

    pub fn apply_sigma_rat(&self, v: &[Rat]) -> RVec {
        self.sigma.mul_vec_rat(v)
    }

    pub fn apply_sigma_char_rat(&self, v: &[Rat]) -> RVec {
        self.sigma_char.mul_vec_rat(v)
    }

    /// Simple reflection `s_i` on a rational cocharacter.
    pub fn reflect_cochar(&self, i: usize, v: &[Rat]) -> RVec {
        let c = dot_ri(v, &self.simple_roots[i]);
        let coroot = ivec_to_rvec(&self.simple_coroots[i]);
        sub_r(v, &linalg::scale_r(&c, &coroot))
    }

    /// Simple reflection `s_i` on an integral cocharacter.
    pub fn reflect_cochar_int(&self, i: usize, v: &[Int]) -> IVec {
        let c = dot_ii(v, &self.simple_roots[i]);
        let coroot = &self.simple_coroots[i];
        v.iter().zip(coroot).map(|(x, y)| x - &c * y).collect()
    }

    /// Simple reflection `s_i` on a rational character.
    pub fn reflect_char(&self, i: usize, v: &[Rat]) -> RVec {
        let c = dot_ri(v, &self.simple_coroots[i]);
        let root = ivec_to_rvec(&self.simple_roots[i]);
        sub_r(v, &linalg::scale_r(&c, &root))
    }

    pub fn is_dominant(&self, v: &[Rat]) -> bool {
        self.simple_roots
            .iter()
            .all(|a| !dot_ri(v, a).is_negative())
    }

    pub fn is_dominant_int(&self, v: &[Int]) -> bool {
        self.simple_roots
            .iter()
            .all(|a| !dot_ii(v, a).is_negative())
    }

    /// `⟨μ, α⟩ ∈ {0, 1}` for all positive roots `α` (dominant μ assumed).
    pub fn is_minuscule(&self, mu: &[Int]) -> bool {
        self.positive_roots.iter().all(|a| {
            let p = dot_ii(mu, a);
            p.is_zero() || p.is_one()
        })
    }

    /// Dominant representative of the Weyl orbit of `v`, together with a
    /// word `[i_1, ..., i_k]` such that `s_{i_1}···s_{i_k}·v` is dominant
    /// (letters act right-to-left; the word is reduced for the minimal
    /// such element but we only rely on correctness, not minimality).
    pub fn dominant_representative(&self, v: &[Rat]) -> (RVec, Vec<usize>) {
        let mut cur = v.to_vec();
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..self.num_simple() {
                if dot_ri(&cur, &self.simple_roots[i]).is_negative() {
                    cur = self.reflect_cochar(i, &cur);
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        (cur, word)
    }

    /// Average of the σ-orbit of a dominant rational cocharacter.
    pub fn galois_average(&self, mu: &[Rat]) -> RVec {
        let mut sum = zeros_r(self.rank);
        let mut cur = mu.to_vec();
        for _ in 0..self.sigma_order {
            let (dom, _) = self.dominant_representative(&cur);
            sum = linalg::add_r(&sum, &dom);
            cur = self.apply_sigma_rat(&cur);
        }
        let n = Rat::new(Int::one(), Int::from(self.sigma_order as i64));
        linalg::scale_r(&n, &sum)
    }

    /// Whether `b - a` is a nonnegative rational combination of the simple
    /// coroots (`a`, `b` dominant). This is the dominance order used on
    /// Newton points.
    pub fn dominance_leq(&self, a: &[Rat], b: &[Rat]) -> bool {
        let diff = sub_r(b, a);
        if linalg::is_zero_r(&diff) {
            return true;
        }
        let cols: Vec<RVec> = self
            .simple_coroots
            .iter()
            .map(|c| ivec_to_rvec(c))
            .collect();
        match solve_in_span(&cols, &diff) {
            Some(coeffs) => coeffs.iter().all(|c| !c.is_negative()),
            None => false,
        }
    }

    /// Coefficients of `v` over the simple coroots, when `v` lies in their
    /// rational span.
    pub fn coroot_coefficients(&self, v: &[Rat]) -> Option<RVec> {
        let cols: Vec<RVec> = self
            .simple_coroots
            .iter()
            .map(|c| ivec_to_rvec(c))
            .collect();
        solve_in_span(&cols, v)
    }

    pub fn fundamental_weights(&self) -> &[FundamentalWeight] {
        &self.fundamental_weights
    }

    /// Fundamental weights lifted into the rational span of the simple
    /// roots (the classical weights of the derived group).
    pub fn fundamental_weights_rootspan(&self) -> &[RVec] {
        &self.fundamental_weights_rootspan
    }

    /// One vector per σ-orbit of fundamental weights: the sum over the
    /// orbit, σ-invariant by construction.
    pub fn weight_orbit_sums(&self) -> &[WeightOrbitSum] {
        &self.orbit_sums
    }

    /// σ-orbits of the simple-root index set, each sorted, ordered by
    /// smallest member.
    pub fn sigma_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.num_simple();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                orbit.push(j);
                j = self.sigma_perm[j];
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Highest root of each irreducible component (needed for the affine
    /// simple reflections), with its coroot.
    pub fn highest_roots(&self) -> Vec<(IVec, IVec)> {
        let cols: Vec<RVec> = self.simple_roots.iter().map(|c| ivec_to_rvec(c)).collect();
        let expansions: Vec<RVec> = self
            .positive_roots
            .iter()
            .map(|r| {
                solve_in_span(&cols, &ivec_to_rvec(r))
                    .expect("positive root expands over simple roots")
            })
            .collect();
        self.components
            .iter()
            .map(|comp| {
                let mut best: Option<(usize, Rat)> = None;
                for (k, exp) in expansions.iter().enumerate() {
                    let supported = exp
                        .iter()
                        .enumerate()
                        .all(|(i, c)| c.is_zero() || comp.contains(&i));
                    if supported {
                        let height: Rat = exp.iter().cloned().sum();
                        if best.as_ref().map(|(_, h)| height > *h).unwrap_or(true) {
                            best = Some((k, height));
                        }
                    }
                }
                let k = best.expect("component has roots").0;
                (
                    self.positive_roots[k].clone(),
                    self.positive_coroots[k].clone(),
                )
            })
            .collect()
    }

    /// A rational point interior to the base alcove: all pairings with
    /// positive roots lie strictly between 0 and 1.
    pub fn alcove_point(&self) -> RVec {
        // half-sum of positive coroots, scaled per component below the
        // wall ⟨x, θ⟩ = 1
        let mut v = zeros_r(self.rank);
        for c in &self.positive_coroots {
            v = linalg::add_r(&v, &ivec_to_rvec(c));
        }
        let mut max_pair = Rat::one();
        for a in &self.positive_roots {
            let p = dot_ri(&v, a);
            if p > max_pair {
                max_pair = p;
            }
        }
        let scale = Rat::new(Int::one(), max_pair.ceil().numer() + Int::one());
        linalg::scale_r(&scale, &v)
    }

    /// f-fold restriction of scalars: the product of `f` copies with sigma
    /// cycling the copies and applying this datum's sigma on wrap-around.
    pub fn restriction_of_scalars(&self, f: usize) -> Result<RootDatum> {
        if f == 0 {
            return Err(Error::datum("restriction of scalars needs f >= 1"));
        }
        let r = self.rank;
        let nr = r * f;
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        for k in 0..f {
            for (a, av) in self.simple_roots.iter().zip(&self.simple_coroots) {
                let mut ra = zeros_i(nr);
                let mut rc = zeros_i(nr);
                ra[k * r..(k + 1) * r].clone_from_slice(a);
                rc[k * r..(k + 1) * r].clone_from_slice(av);
                roots.push(ra);
                coroots.push(rc);
            }
        }
        // block (k, k-1) = identity for k > 0; block (0, f-1) = sigma
        let mut srows = vec![zeros_i(nr); nr];
        for k in 1..f {
            for i in 0..r {
                srows[k * r + i][(k - 1) * r + i] = Int::one();
            }
        }
        for i in 0..r {
            for j in 0..r {
                srows[i][(f - 1) * r + j] = self.sigma.rows[i][j].clone();
            }
        }
        RootDatum::new(nr, roots, coroots, IMat::from_rows(srows))
    }

    /// Direct product of data; sigma acts blockwise.
    pub fn product(data: &[&RootDatum]) -> Result<RootDatum> {
        let nr: usize = data.iter().map(|d| d.rank).sum();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut srows = vec![zeros_i(nr); nr];
        let mut off = 0;
        for d in data {
            for (a, av) in d.simple_roots.iter().zip(&d.simple_coroots) {
                let mut ra = zeros_i(nr);
                let mut rc = zeros_i(nr);
                ra[off..off + d.rank].clone_from_slice(a);
                rc[off..off + d.rank].clone_from_slice(av);
                roots.push(ra);
                coroots.push(rc);
            }
            for i in 0..d.rank {
                for j in 0..d.rank {
                    srows[off + i][off + j] = d.sigma.rows[i][j].clone();
                }
            }
            off += d.rank;
        }
        RootDatum::new(nr, roots, coroots, IMat::from_rows(srows))
    }

    fn solve_rootspan_weights(&self) -> Result<Vec<RVec>> {
        let n = self.num_simple();
        let mut out = Vec::with_capacity(n);
        // Cartan matrix A[i][k] = ⟨α_i^∨, α_k⟩; ω_j = Σ c_k α_k with A c = e_j
        let cartan = IMat::from_rows(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|k| dot_ii(&self.simple_coroots[i], &self.simple_roots[k]))
                        .collect()
                })
                .collect(),
        );
        let inv = rational_inverse(&cartan).map_err(|_| {
            Error::datum("singular Cartan block: cannot solve for fundamental weights")
        })?;
        for j in 0..n {
            let mut w = zeros_r(self.rank);
            for k in 0..n {
                let c = inv[k][j].clone();
                let root = ivec_to_rvec(&self.simple_roots[k]);
                w = linalg::add_r(&w, &linalg::scale_r(&c, &root));
            }
            out.push(w);
        }
        Ok(out)
    }

    fn solve_fundamental_weights(&self) -> Result<Vec<FundamentalWeight>> {
        let n = self.num_simple();
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut target = zeros_i(n);
            target[j] = Int::one();
            match integral_solve(&self.coroot_constraint_matrix(), &target) {
                Some(x) => out.push(FundamentalWeight {
                    vec: ivec_to_rvec(&x),
                    integral: true,
                }),
                None => out.push(FundamentalWeight {
                    vec: self.fundamental_weights_rootspan[j].clone(),
                    integral: false,
                }),
            }
        }
        Ok(out)
    }

    /// Rows = simple coroots, viewed as linear constraints on `X^*`.
    fn coroot_constraint_matrix(&self) -> IMat {
        IMat::from_rows(self.simple_coroots.clone())
    }

    fn solve_orbit_sums(&self) -> Result<Vec<WeightOrbitSum>> {
        let mut out = Vec::new();
        for orbit in self.sigma_orbits() {
            // Solve ⟨α_i^∨, w⟩ = [i ∈ orbit] subject to (σ*-1)w = 0,
            // integrally if possible.
            let n = self.num_simple();
            let coroot_rows = self.coroot_constraint_matrix();
            let mut rows = coroot_rows.rows.clone();
            let mut target = zeros_i(n);
            for &i in &orbit {
                target[i] = Int::one();
            }
            let id = IMat::identity(self.rank);
            for i in 0..self.rank {
                let row: IVec = (0..self.rank)
                    .map(|k| &self.sigma_char.rows[i][k] - &id.rows[i][k])
                    .collect();
                rows.push(row);
                target.push(Int::zero());
            }
            let (vec, integral) = match integral_solve(&IMat::from_rows(rows), &target) {
                Some(x) => (ivec_to_rvec(&x), true),
                None => {
                    // fall back to the root-span lifts, whose orbit sum is
                    // σ-invariant because they are unique in that span
                    let mut s = zeros_r(self.rank);
                    for &i in &orbit {
                        s = linalg::add_r(&s, &self.fundamental_weights_rootspan[i]);
                    }
                    (s, false)
                }
            };
            let back = self.apply_sigma_char_rat(&vec);
            if back != vec {
                return Err(Error::invariant(format!(
                    "weight orbit sum for {orbit:?} is not sigma-invariant"
                )));
            }
            out.push(WeightOrbitSum {
                indices: orbit,
                vec,
                integral,
            });
        }
        Ok(out)
    }

    /// Scales a rational cocharacter into the integer lattice, returning
    /// `(vector, denominator)`.
    pub fn clear_denominators(v: &[Rat]) -> (IVec, Int) {
        let d = denom_lcm(v);
        let ints = v
            .iter()
            .map(|x| (x * Rat::from(d.clone())).to_integer())
            .collect();
        (ints, d)
    }
}

/// Solves `M x = b` over ℤ via Smith normal form; `None` when no integral
/// solution exists. Free coordinates are set to zero, which makes the
/// output deterministic.
fn integral_solve(m: &IMat, b: &[Int]) -> Option<IVec> {
    let (u, d, v) = smith_normal_form(m);
    let ub = u.mul_vec(b);
    let r = d.nrows.min(d.ncols);
    let mut y = zeros_i(d.ncols);
    for i in 0..d.nrows {
        let di = if i < r {
            d.rows[i][i].clone()
        } else {
            Int::zero()
        };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            if !(&ub[i] % &di).is_zero() {
                return None;
            }
            y[i] = &ub[i] / &di;
        }
    }
    Some(v.mul_vec(&y))
}

/// Generates all roots as the Weyl orbit of the simple ones and returns the
/// positive subsystem (nonnegative expansion over the simple roots),
/// coroots kept in step.
fn close_positive_roots(
    simple_roots: &[IVec],
    simple_coroots: &[IVec],
) -> Result<(Vec<IVec>, Vec<IVec>)> {
    let n = simple_roots.len();
    // (root, coroot, expansion over simple roots)
    let mut seen: HashSet<IVec> = HashSet::new();
    let mut queue: Vec<(IVec, IVec, IVec)> = Vec::new();
    for i in 0..n {
        let mut exp = zeros_i(n);
        exp[i] = Int::one();
        if seen.insert(simple_roots[i].clone()) {
            queue.push((simple_roots[i].clone(), simple_coroots[i].clone(), exp));
        }
    }
    let mut all: Vec<(IVec, IVec, IVec)> = queue.clone();
    let cap = 100_000usize;
    let mut head = 0;
    while head < queue.len() {
        let (root, coroot, exp) = queue[head].clone();
        head += 1;
        for i in 0..n {
            let c = dot_ii(simple_coroots[i].as_slice(), &root);
            let new_root: IVec = root
                .iter()
                .zip(&simple_roots[i])
                .map(|(x, a)| x - &c * a)
                .collect();
            let cc = dot_ii(&coroot, simple_roots[i].as_slice());
            let new_coroot: IVec = coroot
                .iter()
                .zip(&simple_coroots[i])
                .map(|(x, a)| x - &cc * a)
                .collect();
            let mut new_exp = exp.clone();
            new_exp[i] -= &c;
            if seen.insert(new_root.clone()) {
                queue.push((new_root.clone(), new_coroot.clone(), new_exp.clone()));
                all.push((new_root, new_coroot, new_exp));
                if all.len() > cap {
                    return Err(Error::datum("root system closure does not terminate"));
                }
            }
        }
    }
    let mut pos: Vec<(IVec, IVec)> = all
        .into_iter()
        .filter(|(_, _, exp)| exp.iter().all(|c| !c.is_negative()))
        .map(|(r, c, _)| (r, c))
        .collect();
    pos.sort();
    Ok(pos.into_iter().unzip())
}

/// Connected components of the Coxeter graph on the simple-root index set.
fn component_partition(simple_roots: &[IVec], simple_coroots: &[IVec]) -> Vec<Vec<usize>> {
    let n = simple_roots.len();
    let mut comp_id = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp_id[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp_id[start] = id;
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..n {
                if comp_id[j] == usize::MAX
                    && (!dot_ii(&simple_coroots[i], &simple_roots[j]).is_zero()
                        || !dot_ii(&simple_coroots[j], &simple_roots[i]).is_zero())
                {
                    comp_id[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

/// Descriptors for the classical group data used by the presets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicalDatum {
    /// `GL(n)`: diagonal torus, rank `n`.
    Gl { n: usize },
    /// Symplectic similitude group `GSp(2g)`, rank `g + 1`; the last
    /// coordinate is the similitude cocharacter.
    GSp { g: usize },
    /// Split `SO(2m+1)`, type `B_m`.
    SoOdd { m: usize },
    /// Split `SO(2m)`, type `D_m`.
    SoEvenSplit { m: usize },
    /// Quasi-split non-split `SO(2m)`, type `²D_m`: sigma flips the fork.
    SoEvenNonsplit { m: usize },
    /// `GSpin(2m+1)`: z-extension of `SO(2m+1)` with connected center,
    /// rank `m + 1` (spin-similitude coordinate last).
    GSpinOdd { m: usize },
    /// `GSpin(2m)`, split form.
    GSpinEvenSplit { m: usize },
    /// `GSpin(2m)`, quasi-split non-split form.
    GSpinEvenNonsplit { m: usize },
}

/// Instantiates a classical datum.
pub fn build_datum(kind: &ClassicalDatum) -> Result<RootDatum> {
    use ClassicalDatum::*;
    fn e(rank: usize, i: usize) -> IVec {
        let mut v = zeros_i(rank);
        v[i] = Int::one();
        v
    }
    fn diff(rank: usize, i: usize, j: usize) -> IVec {
        let mut v = zeros_i(rank);
        v[i] = Int::one();
        v[j] = -Int::one();
        v
    }
    fn sum2(rank: usize, i: usize, j: usize) -> IVec {
        let mut v = zeros_i(rank);
        v[i] = Int::one();
        v[j] = Int::one();
        v
    }
    match *kind {
        Gl { n } => {
            if n == 0 {
                return Err(Error::datum("GL(0) is not a group datum"));
            }
            let roots: Vec<IVec> = (0..n.saturating_sub(1))
                .map(|i| diff(n, i, i + 1))
                .collect();
            RootDatum::new(n, roots.clone(), roots, IMat::identity(n))
        }
        GSp { g } => {
            if g == 0 {
                return Err(Error::datum("GSp needs g >= 1"));
            }
            let rank = g + 1;
            let mut roots = Vec::new();
            let mut coroots = Vec::new();
            for i in 0..g - 1 {
                roots.push(diff(rank, i, i + 1));
                coroots.push(diff(rank, i, i + 1));
            }
            // long root 2ε_g − ε_0 with coroot f_g
            let mut long = zeros_i(rank);
            long[g - 1] = Int::from(2);
            long[g] = -Int::one();
            roots.push(long);
            coroots.push(e(rank, g - 1));
            RootDatum::new(rank, roots, coroots, IMat::identity(rank))
        }
        SoOdd { m } => {
            if m == 0 {
                return Err(Error::datum("SO(odd) needs m >= 1"));
            }
            let mut roots = Vec::new();
            let mut coroots = Vec::new();
            for i in 0..m - 1 {
                roots.push(diff(m, i, i + 1));
                coroots.push(diff(m, i, i + 1));
            }
            let mut short_coroot = zeros_i(m);
            short_coroot[m - 1] = Int::from(2);
            roots.push(e(m, m - 1));
            coroots.push(short_coroot);
            RootDatum::new(m, roots, coroots, IMat::identity(m))
        }
        SoEvenSplit { m } | SoEvenNonsplit { m } => {
            if m < 2 {
                return Err(Error::datum("SO(even) needs m >= 2"));
            }
            let mut roots = Vec::new();
            let mut coroots = Vec::new();
            for i in 0..m - 1 {
                roots.push(diff(m, i, i + 1));
                coroots.push(diff(m, i, i + 1));
            }
            roots.push(sum2(m, m - 2, m - 1));
            coroots.push(sum2(m, m - 2, m - 1));
            let sigma = if matches!(kind, SoEvenSplit { .. }) {
                IMat::identity(m)
            } else {
                // e_m ↦ −e_m
                let mut s = IMat::identity(m);
                s.rows[m - 1][m - 1] = -Int::one();
                s
            };
            RootDatum::new(m, roots, coroots, sigma)
        }
        GSpinOdd { m } => {
            if m == 0 {
                return Err(Error::datum("GSpin(odd) needs m >= 1"));
            }
            let rank = m + 1;
            let mut roots = Vec::new();
            let mut coroots = Vec::new();
            for i in 0..m - 1 {
                roots.push(diff(rank, i, i + 1));
                coroots.push(diff(rank, i, i + 1));
            }
            // short root e_m, coroot 2f_m + f_0
            let mut cr = zeros_i(rank);
            cr[m - 1] = Int::from(2);
            cr[m] = Int::one();
            roots.push(e(rank, m - 1));
            coroots.push(cr);
            RootDatum::new(rank, roots, coroots, IMat::identity(rank))
        }
        GSpinEvenSplit { m } | GSpinEvenNonsplit { m } => {
            if m < 2 {
                return Err(Error::datum("GSpin(even) needs m >= 2"));
            }
            let rank = m + 1;
            let mut roots = Vec::new();
            let mut coroots = Vec::new();
            for i in 0..m - 1 {
                roots.push(diff(rank, i, i + 1));
                coroots.push(diff(rank, i, i + 1));
            }
            let mut cr = sum2(rank, m - 2, m - 1);
            cr[m] = Int::one();
            roots.push(sum2(rank, m - 2, m - 1));
            coroots.push(cr);
            let sigma = if matches!(kind, GSpinEvenSplit { .. }) {
                IMat::identity(rank)
            } else {
                // f_m ↦ −f_m − f_0, fixing the other basis cocharacters
                let mut s = IMat::identity(rank);
                s.rows[m - 1][m - 1] = -Int::one();
                s.rows[m][m - 1] = -Int::one();
                s
            };
            RootDatum::new(rank, roots, coroots, sigma)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ivec, rat, rvec};

    fn gl2() -> RootDatum {
        build_datum(&ClassicalDatum::Gl { n: 2 }).unwrap()
    }

    fn so5() -> RootDatum {
        build_datum(&ClassicalDatum::SoOdd { m: 2 }).unwrap()
    }

    #[test]
    fn gl2_basics() {
        let d = gl2();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.simple_roots(), &[ivec(&[1, -1])]);
        assert_eq!(d.simple_coroots(), &[ivec(&[1, -1])]);
        assert_eq!(d.positive_roots().len(), 1);
        assert_eq!(d.rho(), rvec(&[(1, 2), (-1, 2)]));
    }

    #[test]
    fn so5_positive_roots() {
        // closure recursion from {e1-e2, e2} gives 4 positive roots
        let d = so5();
        assert_eq!(d.positive_roots().len(), 4);
        let mut roots = d.positive_roots().to_vec();
        roots.sort();
        let mut expected = vec![ivec(&[1, -1]), ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[1, 1])];
        expected.sort();
        assert_eq!(roots, expected);
        assert_eq!(d.rho(), rvec(&[(3, 2), (1, 2)]));
    }

    #[test]
    fn so8_nonsplit_sigma() {
        let d = build_datum(&ClassicalDatum::SoEvenNonsplit { m: 4 }).unwrap();
        assert_eq!(d.sigma_order(), 2);
        // sigma swaps the two fork nodes (indices 2 and 3) and fixes the rest
        assert_eq!(d.sigma_perm(), &[0, 1, 3, 2]);
    }

    #[test]
    fn restriction_of_scalars_shapes() {
        let d = gl2();
        let r1 = d.restriction_of_scalars(1).unwrap();
        assert_eq!(r1.rank(), 2);
        assert_eq!(r1.sigma_order(), 1);
        let r3 = d.restriction_of_scalars(3).unwrap();
        assert_eq!(r3.rank(), 6);
        assert_eq!(r3.sigma_order(), 3);
        assert_eq!(r3.num_simple(), 3);
    }

    #[test]
    fn res_gl2_galois_average() {
        let r2 = gl2().restriction_of_scalars(2).unwrap();
        let mu = rvec(&[(1, 1), (0, 1), (0, 1), (0, 1)]);
        let avg = r2.galois_average(&mu);
        assert_eq!(avg, rvec(&[(1, 2), (0, 1), (1, 2), (0, 1)]));
        // idempotent
        assert_eq!(r2.galois_average(&avg), avg);
    }

    #[test]
    fn nonsplit_d4_fixes_first_minuscule() {
        let d = build_datum(&ClassicalDatum::SoEvenNonsplit { m: 4 }).unwrap();
        let mu = rvec(&[(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(d.apply_sigma_rat(&mu), mu);
        assert_eq!(d.galois_average(&mu), mu);
    }

    #[test]
    fn dominant_representative_examples() {
        let d = gl2();
        let (dom, word) = d.dominant_representative(&rvec(&[(0, 1), (1, 1)]));
        assert_eq!(dom, rvec(&[(1, 1), (0, 1)]));
        assert_eq!(word, vec![0]);
        let v = rvec(&[(2, 1), (1, 1)]);
        let (dom, word) = d.dominant_representative(&v);
        assert_eq!(dom, v);
        assert!(word.is_empty());
    }

    #[test]
    fn dominant_representative_brute_force_b2() {
        // brute force over the 8-element orbit of (-1, 2)
        let d = so5();
        let v = rvec(&[(-1, 1), (2, 1)]);
        let mut orbit = vec![v.clone()];
        let mut frontier = vec![v.clone()];
        while let Some(x) = frontier.pop() {
            for i in 0..2 {
                let y = d.reflect_cochar(i, &x);
                if !orbit.contains(&y) {
                    orbit.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        assert_eq!(orbit.len(), 8);
        let dominants: Vec<_> = orbit.iter().filter(|x| d.is_dominant(x)).collect();
        assert_eq!(dominants.len(), 1);
        let (dom, _) = d.dominant_representative(&v);
        assert_eq!(&dom, dominants[0]);
    }

    #[test]
    fn rho_product_and_sigma_invariance() {
        let r3 = gl2().restriction_of_scalars(3).unwrap();
        let rho = r3.rho();
        let expected = rvec(&[(1, 2), (-1, 2), (1, 2), (-1, 2), (1, 2), (-1, 2)]);
        assert_eq!(rho, expected);
        assert_eq!(r3.apply_sigma_char_rat(&rho), rho);
        let d4n = build_datum(&ClassicalDatum::SoEvenNonsplit { m: 4 }).unwrap();
        let rho = d4n.rho();
        assert_eq!(d4n.apply_sigma_char_rat(&rho), rho);
    }

    #[test]
    fn weight_orbit_sums_examples() {
        let d = gl2();
        let sums = d.weight_orbit_sums();
        assert_eq!(sums.len(), 1);
        assert_eq!(sums[0].vec, rvec(&[(1, 1), (0, 1)]));
        assert!(sums[0].integral);

        let r2 = d.restriction_of_scalars(2).unwrap();
        let sums = r2.weight_orbit_sums();
        assert_eq!(sums.len(), 1);
        assert_eq!(sums[0].vec, rvec(&[(1, 1), (0, 1), (1, 1), (0, 1)]));

        let b2 = so5();
        let sums = b2.weight_orbit_sums();
        assert_eq!(sums.len(), 2);
        assert_eq!(sums[0].vec, rvec(&[(1, 1), (0, 1)]));
        assert_eq!(sums[1].vec, rvec(&[(1, 2), (1, 2)]));
        assert!(
            !sums[1].integral,
            "SO(5) has no integral lift of the spin weight"
        );
    }

    #[test]
    fn kottwitz_point_examples() {
        let d = gl2();
        // π₁(GL₂) ≅ ℤ by total degree
        let k1 = d.kottwitz_point(&ivec(&[1, 0]));
        let k0 = d.kottwitz_point(&ivec(&[1, -1]));
        assert!(d.pi1_galois().is_trivial_class(&k0));
        assert!(!d.pi1_galois().is_trivial_class(&k1));
        assert_eq!(d.pi1_galois().free_rank(), 1);

        let b2 = so5();
        // π₁(SO(5)) ≅ ℤ/2, e1 is the nonzero class
        assert_eq!(b2.pi1_galois().free_rank(), 0);
        assert_eq!(
            b2.pi1_galois()
                .moduli()
                .iter()
                .filter(|m| **m == Int::from(2))
                .count(),
            1
        );
        let k = b2.kottwitz_point(&ivec(&[1, 0]));
        assert!(!b2.pi1_galois().is_trivial_class(&k));
        for c in b2.positive_coroots() {
            let kc = b2.kottwitz_point(c);
            assert!(b2.pi1_galois().is_trivial_class(&kc));
        }
    }

    #[test]
    fn kottwitz_additive_mod_coroots() {
        let d = so5();
        let lam = ivec(&[1, 0]);
        for c in d.positive_coroots() {
            let shifted: Vec<Int> = lam.iter().zip(c).map(|(a, b)| a + b).collect();
            assert_eq!(d.kottwitz_point(&lam), d.kottwitz_point(&shifted));
        }
    }

    #[test]
    fn dominance_examples() {
        let d = gl2();
        let a = rvec(&[(1, 2), (1, 2)]);
        let b = rvec(&[(1, 1), (0, 1)]);
        assert!(d.dominance_leq(&a, &b));
        assert!(!d.dominance_leq(&b, &a));
        assert!(d.dominance_leq(&a, &a));

        let b2 = so5();
        // 0 ≤ ½(α₁^∨ + α₂^∨): solve the 2x2 system, coefficients (1/2, 1/2)
        let half_sum = rvec(&[(1, 2), (1, 2)]);
        let zero = rvec(&[(0, 1), (0, 1)]);
        assert!(b2.dominance_leq(&zero, &half_sum));
    }

    #[test]
    fn gspin_odd_shape() {
        let d = build_datum(&ClassicalDatum::GSpinOdd { m: 4 }).unwrap();
        assert_eq!(d.rank(), 5);
        assert_eq!(d.num_simple(), 4);
        assert_eq!(d.positive_roots().len(), 16);
        // π₁(GSpin) ≅ ℤ, torsion-free
        assert_eq!(d.pi1().free_rank(), 1);
        assert!(d.pi1().moduli().iter().all(|m| m.is_zero() || m.is_one()));
        // all fundamental weights admit integral lifts
        assert!(d.fundamental_weights().iter().all(|w| w.integral));
    }

    #[test]
    fn gspin_even_nonsplit_orbit_sums() {
        let d = build_datum(&ClassicalDatum::GSpinEvenNonsplit { m: 4 }).unwrap();
        assert_eq!(d.sigma_order(), 2);
        assert_eq!(d.sigma_perm(), &[0, 1, 3, 2]);
        let sums = d.weight_orbit_sums();
        assert_eq!(sums.len(), 3);
        let fork = sums.iter().find(|s| s.indices == vec![2, 3]).unwrap();
        assert_eq!(fork.vec, rvec(&[(1, 1), (1, 1), (1, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn rejects_bad_data() {
        // non-Cartan: diagonal entry ≠ 2
        let r = RootDatum::new(1, vec![ivec(&[1])], vec![ivec(&[1])], IMat::identity(1));
        assert!(r.is_err());
        // sigma not permuting the simple roots
        let mut s = IMat::identity(2);
        s.rows[0][1] = Int::one();
        let r = RootDatum::new(2, vec![ivec(&[1, -1])], vec![ivec(&[1, -1])], s);
        assert!(r.is_err());
        // rank mismatch
        let r = RootDatum::new(
            3,
            vec![ivec(&[1, -1])],
            vec![ivec(&[1, -1])],
            IMat::identity(3),
        );
        assert!(r.is_err());
    }

    #[test]
    fn minuscule_checks() {
        let b4 = build_datum(&ClassicalDatum::SoOdd { m: 4 }).unwrap();
        assert!(b4.is_minuscule(&ivec(&[1, 0, 0, 0])));
        assert!(!b4.is_minuscule(&ivec(&[2, 0, 0, 0])));
        assert!(!b4.is_minuscule(&ivec(&[1, 1, 0, 0])));
    }

    #[test]
    fn alcove_point_is_interior() {
        for kind in [
            ClassicalDatum::Gl { n: 3 },
            ClassicalDatum::SoOdd { m: 4 },
            ClassicalDatum::GSp { g: 2 },
            ClassicalDatum::SoEvenSplit { m: 4 },
        ] {
            let d = build_datum(&kind).unwrap();
            let p = d.alcove_point();
            for a in d.positive_roots() {
                let v = dot_ri(&p, a);
                assert!(v > rat(0, 1) && v < rat(1, 1), "pairing {v} out of (0,1)");
            }
        }
    }
}
