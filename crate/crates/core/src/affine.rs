//! Extended affine Weyl group `W̃ = W ⋉ X_*(T)`.
//!
//! Elements are stored as `t^λ · w` with the multiplication law
//! `(t^λ u)(t^ν v) = t^{λ + uν} uv`. Lengths follow the Iwahori-Matsumoto
//! convention for the dominant base alcove:
//!
//! `l(t^λ u) = Σ_{α>0, u⁻¹α>0} |⟨λ,α⟩| + Σ_{α>0, u⁻¹α<0} |⟨λ,α⟩ − 1|`
//!
//! which gives `l(t^λ) = ⟨λ_dom, 2ρ⟩` and length zero exactly on the
//! stabilizer Ω of the base alcove. The affine simple reflections are the
//! finite ones plus `t^{θ^∨} s_θ` for the highest root θ of each
//! irreducible component.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot_ii, ivec_to_rvec, Int, Rat};
use crate::root_datum::{IVec, Pi1Class, RVec, RootDatum};
use crate::weyl::{WeylElt, WeylGroup};

/// `t^λ · w` in the extended affine Weyl group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineElt {
    pub lambda: IVec,
    pub w: WeylElt,
}

impl AffineElt {
    pub fn translation(lambda: IVec) -> Self {
        AffineElt {
            lambda,
            w: WeylElt(0),
        }
    }
}

pub struct AffineWeyl {
    weyl: WeylGroup,
    /// the affine simple reflections, finite ones first, then one
    /// `t^{θ^∨} s_θ` per irreducible component
    simple: Vec<AffineElt>,
}

impl AffineWeyl {
    pub fn new(weyl: WeylGroup) -> Result<Self> {
        let datum = weyl.datum().clone();
        let mut simple: Vec<AffineElt> = (0..datum.num_simple())
            .map(|i| AffineElt {
                lambda: vec![Int::zero(); datum.rank()],
                w: weyl.gen(i),
            })
            .collect();
        for (theta, theta_cov) in datum.highest_roots() {
            // reflection at θ as a lattice matrix
            let rank = datum.rank();
            let rows = (0..rank)
                .map(|r| {
                    (0..rank)
                        .map(|c| {
                            let mut x = if r == c { Int::one() } else { Int::zero() };
                            x -= &theta[c] * &theta_cov[r];
                            x
                        })
                        .collect()
                })
                .collect();
            let m = crate::linalg::IMat::from_rows(rows);
            let s_theta = weyl
                .lookup_matrix(&m)
                .ok_or_else(|| Error::invariant("highest-root reflection not in Weyl group"))?;
            simple.push(AffineElt {
                lambda: theta_cov,
                w: s_theta,
            });
        }
        Ok(AffineWeyl { weyl, simple })
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn datum(&self) -> &RootDatum {
        self.weyl.datum()
    }

    pub fn identity(&self) -> AffineElt {
        AffineElt {
            lambda: vec![Int::zero(); self.datum().rank()],
            w: WeylElt(0),
        }
    }

    /// Number of affine simple reflections (|S| finite + one per component).
    pub fn num_affine_simple(&self) -> usize {
        self.simple.len()
    }

    pub fn affine_simple(&self, i: usize) -> &AffineElt {
        &self.simple[i]
    }

    pub fn mul(&self, a: &AffineElt, b: &AffineElt) -> AffineElt {
        let shifted = self.weyl.act_cochar_int(a.w, &b.lambda);
        let lambda = a.lambda.iter().zip(&shifted).map(|(x, y)| x + y).collect();
        AffineElt {
            lambda,
            w: self.weyl.mul(a.w, b.w),
        }
    }

    pub fn inv(&self, a: &AffineElt) -> AffineElt {
        let winv = self.weyl.inverse(a.w);
        let neg: IVec = a.lambda.iter().map(|x| -x).collect();
        AffineElt {
            lambda: self.weyl.act_cochar_int(winv, &neg),
            w: winv,
        }
    }

    /// Frobenius action `σ(t^λ u) = t^{σλ} (σ u σ⁻¹)`.
    pub fn sigma(&self, a: &AffineElt) -> AffineElt {
        AffineElt {
            lambda: self.datum().apply_sigma(&a.lambda),
            w: self.weyl.sigma_twist(a.w),
        }
    }

    /// Iwahori-Matsumoto length.
    pub fn length(&self, a: &AffineElt) -> Int {
        let datum = self.datum();
        // u⁻¹ acts on characters by (M_u)ᵀ
        let ut = self.weyl.matrix(a.w).transpose();
        let dom = self.dominance_vector();
        let mut total = Int::zero();
        for alpha in datum.positive_roots() {
            let pre = ut.mul_vec(alpha);
            let pairing = dot_ii(&a.lambda, alpha);
            if dot_ii(&dom, &pre).is_positive() {
                total += pairing.abs();
            } else {
                total += (pairing - Int::one()).abs();
            }
        }
        total
    }

    pub fn length_usize(&self, a: &AffineElt) -> usize {
        use num_traits::ToPrimitive;
        self.length(a).to_usize().expect("length fits in usize")
    }

    fn dominance_vector(&self) -> IVec {
        let mut v = vec![Int::zero(); self.datum().rank()];
        for c in self.datum().positive_coroots() {
            for (x, y) in v.iter_mut().zip(c) {
                *x += y;
            }
        }
        v
    }

    /// Index of the first affine simple reflection `s` with
    /// `l(s·a) < l(a)`, or `None` when `l(a) = 0`.
    pub fn left_descent(&self, a: &AffineElt) -> Option<usize> {
        let la = self.length(a);
        (0..self.simple.len()).find(|&i| self.length(&self.mul(&self.simple[i], a)) < la)
    }

    /// Greedy reduced word: `a = s_{i_1} ··· s_{i_k} · ω` with `l(ω) = 0`.
    /// Returns the letters and the length-zero tail.
    pub fn reduced_word(&self, a: &AffineElt) -> (Vec<usize>, AffineElt) {
        let mut letters = Vec::new();
        let mut cur = a.clone();
        while let Some(i) = self.left_descent(&cur) {
            letters.push(i);
            cur = self.mul(&self.simple[i], &cur);
        }
        debug_assert!(self.length(&cur).is_zero());
        (letters, cur)
    }

    /// Decomposition `a = a_W · ω` with `a_W` in the affine Weyl group and
    /// `ω` of length zero.
    pub fn omega_decompose(&self, a: &AffineElt) -> (AffineElt, AffineElt) {
        let (letters, omega) = self.reduced_word(a);
        let mut wa = self.identity();
        for &i in &letters {
            wa = self.mul(&wa, &self.simple[i]);
        }
        debug_assert_eq!(self.mul(&wa, &omega), *a);
        (wa, omega)
    }

    /// Whether two elements lie in the same `W_a`-coset (equivalently,
    /// their translation parts agree in `π₁(G) = X_*/Q^∨`).
    pub fn same_omega_coset(&self, a: &AffineElt, b: &AffineElt) -> bool {
        self.datum().pi1().reduce(&a.lambda) == self.datum().pi1().reduce(&b.lambda)
    }

    /// Bruhat order on `W̃`: comparable only inside a common `W_a`-coset,
    /// where the standard descent recursion applies.
    pub fn bruhat_leq(&self, u: &AffineElt, v: &AffineElt) -> bool {
        if !self.same_omega_coset(u, v) {
            return false;
        }
        let mut u = u.clone();
        let mut v = v.clone();
        loop {
            let lu = self.length(&u);
            let lv = self.length(&v);
            if lu > lv {
                return false;
            }
            if lv.is_zero() {
                return u == v;
            }
            let s = self
                .left_descent(&v)
                .expect("positive length has a descent");
            let sv = self.mul(&self.simple[s], &v);
            let su = self.mul(&self.simple[s], &u);
            if self.length(&su) < lu {
                u = su;
            }
            v = sv;
        }
    }

    /// The μ-admissible set: all `w ≤ t^{xμ}` for some finite `x`, computed
    /// by breadth-first cover descent (single-letter deletions of reduced
    /// words).
    pub fn admissible_set(&self, mu: &[Int], cap: usize) -> Result<Vec<AffineElt>> {
        if !self.datum().is_dominant_int(mu) {
            return Err(Error::datum("admissible set needs a dominant cocharacter"));
        }
        let mut visited: HashSet<AffineElt> = HashSet::new();
        let mut queue: Vec<AffineElt> = Vec::new();
        for x in self.weyl.elements() {
            let t = AffineElt::translation(self.weyl.act_cochar_int(x, mu));
            if visited.insert(t.clone()) {
                queue.push(t);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head].clone();
            head += 1;
            let le = self.length(&e);
            let (letters, omega) = self.reduced_word(&e);
            for skip in 0..letters.len() {
                let mut cand = self.identity();
                for (j, &i) in letters.iter().enumerate() {
                    if j != skip {
                        cand = self.mul(&cand, &self.simple[i]);
                    }
                }
                cand = self.mul(&cand, &omega);
                if self.length(&cand) == &le - Int::one() && visited.insert(cand.clone()) {
                    queue.push(cand);
                    if visited.len() > cap {
                        return Err(Error::CapExceeded(format!(
                            "admissible-set enumeration exceeds cap {cap}"
                        )));
                    }
                }
            }
        }
        let mut out: Vec<AffineElt> = visited.into_iter().collect();
        out.sort_by(|a, b| {
            (self.length(a), &a.lambda, a.w.0).cmp(&(self.length(b), &b.lambda, b.w.0))
        });
        Ok(out)
    }

    /// `EO(μ)`: elements of the admissible set of minimal length in their
    /// left `W_S`-coset. The cardinality is checked against `|ᴶW|` for the
    /// parabolic type cut out by μ.
    pub fn eo_set(&self, mu: &[Int], cap: usize) -> Result<Vec<AffineElt>> {
        let adm = self.admissible_set(mu, cap)?;
        let out: Vec<AffineElt> = adm
            .into_iter()
            .filter(|e| {
                let le = self.length(e);
                (0..self.datum().num_simple())
                    .all(|i| self.length(&self.mul(&self.simple[i], e)) > le)
            })
            .collect();
        let j = self.weyl.parabolic_type_of(mu);
        let expected = self.weyl.jw_set(&j).len();
        if out.len() != expected {
            return Err(Error::invariant(format!(
                "|EO(μ)| = {} but |ᴶW| = {expected}: convention mismatch",
                out.len()
            )));
        }
        Ok(out)
    }

    /// Newton point: the dominant representative of `λ/n` where
    /// `(aσ)^n = t^λ`.
    pub fn newton_point(&self, a: &AffineElt) -> RVec {
        let bound = self.weyl.order() * self.datum().sigma_order() + 1;
        let mut cur = a.clone();
        let mut n = 1usize;
        loop {
            if cur.w == WeylElt(0) && n.is_multiple_of(self.datum().sigma_order()) {
                break;
            }
            assert!(n <= bound, "Newton point iteration exceeded |W|·ord(σ)");
            // (aσ)^{n+1} = a · σ(x_n) · σ^{n+1}
            cur = self.mul(a, &self.sigma(&cur));
            n += 1;
        }
        let frac = Rat::new(Int::one(), Int::from(n as i64));
        let v: RVec = ivec_to_rvec(&cur.lambda)
            .iter()
            .map(|x| x * &frac)
            .collect();
        self.datum().dominant_representative(&v).0
    }

    /// σ-straightness: `l(a) = ⟨ν_a, 2ρ⟩`.
    pub fn is_sigma_straight(&self, a: &AffineElt) -> bool {
        let nu = self.newton_point(a);
        let pairing = self.datum().pair_two_rho(&nu);
        Rat::from(self.length(a)) == pairing
    }

    /// Kottwitz point of the translation class of `a` in `π₁(G)_Γ`.
    pub fn kottwitz_point(&self, a: &AffineElt) -> Pi1Class {
        self.datum().kottwitz_point(&a.lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ivec, rat, rvec};
    use crate::root_datum::{build_datum, ClassicalDatum, RootDatum};
    use num_traits::ToPrimitive;

    fn engine(d: &RootDatum) -> AffineWeyl {
        AffineWeyl::new(WeylGroup::generate(d, 1 << 20).unwrap()).unwrap()
    }

    fn gl2() -> AffineWeyl {
        engine(&build_datum(&ClassicalDatum::Gl { n: 2 }).unwrap())
    }

    /// Independent length oracle: the number of affine root hyperplanes
    /// separating the base alcove from its image.
    fn alcove_length(aw: &AffineWeyl, e: &AffineElt) -> usize {
        let datum = aw.datum();
        let p = datum.alcove_point();
        // image of p under the affine action x ↦ w(x) + λ
        let wp = aw.weyl().act_cochar(e.w, &p);
        let img: Vec<Rat> = wp
            .iter()
            .zip(&e.lambda)
            .map(|(x, l)| x + Rat::from(l.clone()))
            .collect();
        let mut count = 0usize;
        for alpha in datum.positive_roots() {
            let a = crate::linalg::dot_ri(&p, alpha);
            let b = crate::linalg::dot_ri(&img, alpha);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            // integers strictly between lo and hi
            let lo_c = lo.ceil().to_integer();
            let hi_f = hi.floor().to_integer();
            let mut k = lo_c;
            while k <= hi_f {
                if Rat::from(k.clone()) > lo && Rat::from(k.clone()) < hi {
                    count += 1;
                }
                k += Int::one();
            }
        }
        count
    }

    #[test]
    fn lengths_match_alcove_oracle() {
        // random-ish ball in several groups: every product of ≤ 5 affine
        // simple reflections times an Ω element
        for kind in [
            ClassicalDatum::Gl { n: 2 },
            ClassicalDatum::SoOdd { m: 2 },
            ClassicalDatum::GSp { g: 2 },
        ] {
            let aw = engine(&build_datum(&kind).unwrap());
            let mut ball = vec![aw.identity()];
            for _ in 0..5 {
                let mut next = ball.clone();
                for e in &ball {
                    for i in 0..aw.num_affine_simple() {
                        next.push(aw.mul(e, aw.affine_simple(i)));
                    }
                }
                next.sort_by(|a, b| (&a.lambda, a.w.0).cmp(&(&b.lambda, b.w.0)));
                next.dedup();
                ball = next;
            }
            for e in &ball {
                assert_eq!(
                    aw.length(e).to_usize().unwrap(),
                    alcove_length(&aw, e),
                    "length mismatch at {e:?} in {kind:?}"
                );
            }
        }
    }

    #[test]
    fn translation_lengths() {
        let aw = gl2();
        assert!(aw.length(&aw.identity()).is_zero());
        let t10 = AffineElt::translation(ivec(&[1, 0]));
        assert_eq!(aw.length(&t10), Int::one());
        // dominant translations: l(t^λ) = ⟨λ, 2ρ⟩
        let b4 = engine(&build_datum(&ClassicalDatum::SoOdd { m: 4 }).unwrap());
        let lam = ivec(&[3, 2, 1, 0]);
        let expect = dot_ii(&lam, b4.datum().two_rho());
        assert_eq!(b4.length(&AffineElt::translation(lam)), expect);
    }

    #[test]
    fn multiplication_law_associates() {
        let aw = engine(&build_datum(&ClassicalDatum::SoOdd { m: 2 }).unwrap());
        let mut elts = Vec::new();
        for (i, lam) in [[1, 0], [0, -1], [2, 1]].iter().enumerate() {
            let w = WeylElt((i % aw.weyl().order()) as u32);
            elts.push(AffineElt {
                lambda: ivec(lam),
                w,
            });
        }
        for a in &elts {
            for b in &elts {
                for c in &elts {
                    let ab_c = aw.mul(&aw.mul(a, b), c);
                    let a_bc = aw.mul(a, &aw.mul(b, c));
                    assert_eq!(ab_c, a_bc);
                }
                let ab = aw.mul(a, b);
                assert_eq!(aw.mul(&ab, &aw.inv(b)), *a);
            }
        }
    }

    #[test]
    fn omega_decomposition_gl2() {
        let aw = gl2();
        // t^{(1,0)} has a nontrivial Ω part since π₁(GL₂) = ℤ
        let t = AffineElt::translation(ivec(&[1, 0]));
        let (wa, omega) = aw.omega_decompose(&t);
        assert!(aw.length(&omega).is_zero());
        assert_ne!(omega, aw.identity());
        assert_eq!(aw.mul(&wa, &omega), t);
        // elements of W_a decompose trivially
        let s = aw.affine_simple(0).clone();
        let (wa, omega) = aw.omega_decompose(&s);
        assert_eq!(omega, aw.identity());
        assert_eq!(wa, s);
    }

    #[test]
    fn omega_of_rank_one_data() {
        // simply connected A₁ (root [2], coroot [1]): X_* is the coroot
        // lattice, so Ω is trivial
        let sc = RootDatum::new(
            1,
            vec![ivec(&[2])],
            vec![ivec(&[1])],
            crate::linalg::IMat::identity(1),
        )
        .unwrap();
        let aw = engine(&sc);
        let (_, omega) = aw.omega_decompose(&AffineElt::translation(ivec(&[1])));
        assert_eq!(omega, aw.identity());

        // adjoint A₁ (root [1], coroot [2]): the cocharacter lattice is the
        // full coweight lattice and Ω ≅ ℤ/2
        let ad = RootDatum::new(
            1,
            vec![ivec(&[1])],
            vec![ivec(&[2])],
            crate::linalg::IMat::identity(1),
        )
        .unwrap();
        let aw = engine(&ad);
        let t = AffineElt::translation(ivec(&[1]));
        let (_, omega) = aw.omega_decompose(&t);
        assert!(aw.length(&omega).is_zero());
        assert_ne!(omega, aw.identity());
        let sq = aw.mul(&omega, &omega);
        let (_, omega_sq) = aw.omega_decompose(&sq);
        assert_eq!(omega_sq, aw.identity(), "Ω element squares into W_a");
    }

    #[test]
    fn bruhat_affine_examples() {
        let aw = gl2();
        let t10 = AffineElt::translation(ivec(&[1, 0]));
        assert!(aw.bruhat_leq(&t10, &t10));
        // independent subword oracle: the down-set of t^{(1,0)} consists of
        // all products of subwords of its reduced word (times Ω part)
        let (letters, omega) = aw.reduced_word(&t10);
        assert_eq!(letters.len(), 1);
        let mut downset = Vec::new();
        for mask in 0..(1u32 << letters.len()) {
            let mut e = aw.identity();
            for (j, &i) in letters.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    e = aw.mul(&e, aw.affine_simple(i));
                }
            }
            downset.push(aw.mul(&e, &omega));
        }
        downset.sort_by(|a, b| (&a.lambda, a.w.0).cmp(&(&b.lambda, b.w.0)));
        downset.dedup();
        assert_eq!(downset.len(), 2);
        for e in &downset {
            assert!(aw.bruhat_leq(e, &t10));
        }
        // the only elements ≤ t^{(1,0)} are itself and its Ω part
        let t01 = AffineElt::translation(ivec(&[0, 1]));
        assert!(!aw.bruhat_leq(&t01, &t10));
        assert!(aw.bruhat_leq(&omega, &t10));
    }

    #[test]
    fn admissible_sets() {
        let aw = gl2();
        // μ = 0
        let adm = aw.admissible_set(&ivec(&[0, 0]), 1 << 20).unwrap();
        assert_eq!(adm.len(), 1);
        assert_eq!(adm[0], aw.identity());
        // GL(2), μ = (1,0): three elements
        let adm = aw.admissible_set(&ivec(&[1, 0]), 1 << 20).unwrap();
        assert_eq!(adm.len(), 3);
        // downward closed within each Ω-coset
        for e in &adm {
            for f in &adm {
                if aw.same_omega_coset(e, f) && aw.bruhat_leq(e, f) {
                    assert!(adm.contains(e));
                }
            }
        }
    }

    #[test]
    fn admissible_matches_subword_oracle_gsp4() {
        let aw = engine(&build_datum(&ClassicalDatum::GSp { g: 2 }).unwrap());
        let mu = ivec(&[1, 1, 1]);
        let adm = aw.admissible_set(&mu, 1 << 20).unwrap();
        // oracle: generate the down-sets of all t^{xμ} by subword products
        let mut expected: Vec<AffineElt> = Vec::new();
        for x in aw.weyl().elements() {
            let t = AffineElt::translation(aw.weyl().act_cochar_int(x, &mu));
            let (letters, omega) = aw.reduced_word(&t);
            for mask in 0..(1u32 << letters.len()) {
                let mut e = aw.identity();
                for (j, &i) in letters.iter().enumerate() {
                    if mask & (1 << j) != 0 {
                        e = aw.mul(&e, aw.affine_simple(i));
                    }
                }
                expected.push(aw.mul(&e, &omega));
            }
        }
        expected.sort_by(|a, b| (&a.lambda, a.w.0).cmp(&(&b.lambda, b.w.0)));
        expected.dedup();
        let mut got = adm.clone();
        got.sort_by(|a, b| (&a.lambda, a.w.0).cmp(&(&b.lambda, b.w.0)));
        assert_eq!(got, expected);
    }

    #[test]
    fn newton_points() {
        let aw = gl2();
        // translations with σ = id: dominant representative
        let t = AffineElt::translation(ivec(&[0, 2]));
        assert_eq!(aw.newton_point(&t), rvec(&[(2, 1), (0, 1)]));
        // the Ω element of the μ = (1,0) coset squares to t^{(1,1)}
        let (_, omega) = aw.omega_decompose(&AffineElt::translation(ivec(&[1, 0])));
        assert_eq!(aw.newton_point(&omega), rvec(&[(1, 2), (1, 2)]));
        assert!(aw.is_sigma_straight(&omega));
        // Res(GL₂, 2): an ordinary translation has ν = μ̄
        let res2 = build_datum(&ClassicalDatum::Gl { n: 2 })
            .unwrap()
            .restriction_of_scalars(2)
            .unwrap();
        let aw2 = engine(&res2);
        let mu = ivec(&[1, 0, 0, 0]);
        let t = AffineElt::translation(mu.clone());
        let nu = aw2.newton_point(&t);
        assert_eq!(nu, res2.galois_average(&ivec_to_rvec(&mu)));
    }

    #[test]
    fn translations_are_sigma_straight() {
        // split data: every translation (ν is the dominant representative)
        for kind in [ClassicalDatum::Gl { n: 3 }, ClassicalDatum::SoOdd { m: 3 }] {
            let aw = engine(&build_datum(&kind).unwrap());
            for lam in [[1i64, 0, 0], [0, 1, 2], [-1, 1, 0]] {
                let lam = &lam[..aw.datum().rank()];
                let t = AffineElt::translation(ivec(lam));
                assert!(
                    aw.is_sigma_straight(&t),
                    "t^{lam:?} not straight in {kind:?}"
                );
            }
        }
        // twisted data: dominant translations (σ preserves dominance, so
        // the Newton point is the σ-average and pairs equally with 2ρ)
        let aw = engine(&build_datum(&ClassicalDatum::SoEvenNonsplit { m: 4 }).unwrap());
        for lam in [[1i64, 0, 0, 0], [2, 1, 1, 0], [3, 2, 1, 1]] {
            let t = AffineElt::translation(ivec(&lam));
            assert!(aw.datum().is_dominant_int(&t.lambda));
            assert!(aw.is_sigma_straight(&t), "dominant t^{lam:?} not straight");
        }
        // a non-dominant translation of a twisted datum need not be
        // straight: the orbit average can pair strictly below λ_dom
        let t = AffineElt::translation(ivec(&[-1, 1, 0, 1]));
        assert!(!aw.is_sigma_straight(&t));
    }

    #[test]
    fn eo_set_sizes() {
        let aw = gl2();
        let eo = aw.eo_set(&ivec(&[1, 0]), 1 << 20).unwrap();
        assert_eq!(eo.len(), 2);
        let eo0 = aw.eo_set(&ivec(&[0, 0]), 1 << 20).unwrap();
        assert_eq!(eo0.len(), 1);
        // SO(9): 2m = 8 EO elements
        let b4 = engine(&build_datum(&ClassicalDatum::SoOdd { m: 4 }).unwrap());
        let eo = b4.eo_set(&ivec(&[1, 0, 0, 0]), 1 << 20).unwrap();
        assert_eq!(eo.len(), 8);
    }

    #[test]
    fn length_subadditive_and_reduced_words() {
        let aw = engine(&build_datum(&ClassicalDatum::SoOdd { m: 2 }).unwrap());
        let a = AffineElt {
            lambda: ivec(&[1, 0]),
            w: WeylElt(3),
        };
        let b = AffineElt {
            lambda: ivec(&[0, -1]),
            w: WeylElt(5),
        };
        let ab = aw.mul(&a, &b);
        assert!(aw.length(&ab) <= aw.length(&a) + aw.length(&b));
        let (letters, omega) = aw.reduced_word(&a);
        assert_eq!(letters.len(), aw.length_usize(&a));
        let mut rebuilt = aw.identity();
        for &i in &letters {
            rebuilt = aw.mul(&rebuilt, aw.affine_simple(i));
        }
        assert_eq!(aw.mul(&rebuilt, &omega), a);
    }

    #[test]
    fn straight_class_invariant_under_length_preserving_conjugation() {
        let aw = engine(&build_datum(&ClassicalDatum::SoOdd { m: 2 }).unwrap());
        let mu = ivec(&[1, 0]);
        let adm = aw.admissible_set(&mu, 1 << 20).unwrap();
        for e in adm.iter().filter(|e| aw.is_sigma_straight(e)) {
            let nu = aw.newton_point(e);
            let kappa = aw.kottwitz_point(e);
            for i in 0..aw.datum().num_simple() {
                let s = aw.affine_simple(i);
                let conj = aw.mul(&aw.mul(s, e), &aw.inv(&aw.sigma(s)));
                if aw.length(&conj) == aw.length(e) {
                    assert_eq!(aw.newton_point(&conj), nu);
                    assert_eq!(aw.kottwitz_point(&conj), kappa);
                }
            }
        }
    }

    #[test]
    fn non_dominant_mu_rejected() {
        let aw = gl2();
        assert!(aw.admissible_set(&ivec(&[0, 1]), 1 << 20).is_err());
    }

    #[test]
    fn omega_elements_are_straight_with_central_newton_point() {
        let aw = gl2();
        let (_, omega) = aw.omega_decompose(&AffineElt::translation(ivec(&[1, 0])));
        assert!(aw.is_sigma_straight(&omega));
        let nu = aw.newton_point(&omega);
        assert_eq!(aw.datum().pair_two_rho(&nu), rat(0, 1));
    }
}
