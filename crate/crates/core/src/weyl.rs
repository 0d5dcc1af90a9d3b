//! Finite Weyl group engine.
//!
//! The group is generated once by breadth-first search over the simple
//! reflections acting on the cocharacter lattice; elements are then `u32`
//! indices into immutable tables (lengths, generator multiplication,
//! inverses, one cached reduced word each). All queries after generation
//! are pure lookups, so a generated [`WeylGroup`] is safe to share across
//! threads.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot_ii, IMat, Int, Rat};
use crate::root_datum::{IVec, RVec, RootDatum};

/// Index of a Weyl group element inside its generated [`WeylGroup`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct WeylElt(pub u32);

pub struct WeylGroup {
    datum: RootDatum,
    /// matrix action on X_* per element
    mats: Vec<IMat>,
    index: HashMap<IMat, u32>,
    /// right_mul[w][i] = w · s_i
    right_mul: Vec<Vec<u32>>,
    /// left_mul[w][i] = s_i · w
    left_mul: Vec<Vec<u32>>,
    length: Vec<u32>,
    inverse: Vec<u32>,
    /// lexicographically chosen reduced word per element
    word: Vec<Vec<u8>>,
    longest: u32,
    /// sigma-twist φ(w) = σ w σ⁻¹ per element
    twist: Vec<u32>,
}

impl WeylGroup {
    /// Generates the full group. Fails if the order exceeds `cap`.
    pub fn generate(datum: &RootDatum, cap: usize) -> Result<WeylGroup> {
        let rank = datum.rank();
        let n = datum.num_simple();
        // matrices of the simple reflections on X_*
        let gens: Vec<IMat> = (0..n)
            .map(|i| {
                let rows = (0..rank)
                    .map(|r| {
                        (0..rank)
                            .map(|c| {
                                let mut x = if r == c { Int::from(1) } else { Int::from(0) };
                                // e_c ↦ e_c − ⟨e_c, α_i⟩ α_i^∨
                                x -= &datum.simple_roots()[i][c] * &datum.simple_coroots()[i][r];
                                x
                            })
                            .collect()
                    })
                    .collect();
                IMat::from_rows(rows)
            })
            .collect();

        let id = IMat::identity(rank);
        let mut mats = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut right_mul: Vec<Vec<u32>> = vec![vec![u32::MAX; n]];
        let mut length = vec![0u32];
        let mut word: Vec<Vec<u8>> = vec![Vec::new()];
        let mut head = 0usize;
        while head < mats.len() {
            for i in 0..n {
                if right_mul[head][i] != u32::MAX {
                    continue;
                }
                let m = mats[head].mul(&gens[i]);
                let idx = match index.get(&m) {
                    Some(&idx) => idx,
                    None => {
                        let idx = mats.len() as u32;
                        if mats.len() >= cap {
                            return Err(Error::CapExceeded(format!(
                                "Weyl group order exceeds cap {cap}"
                            )));
                        }
                        index.insert(m.clone(), idx);
                        mats.push(m);
                        right_mul.push(vec![u32::MAX; n]);
                        length.push(length[head] + 1);
                        let mut w = word[head].clone();
                        w.push(i as u8);
                        word.push(w);
                        idx
                    }
                };
                right_mul[head][i] = idx;
            }
            head += 1;
        }
        let order = mats.len();
        // left multiplication via words: s_i · w
        let mut left_mul = vec![vec![0u32; n]; order];
        for w in 0..order {
            for i in 0..n {
                let m = gens[i].mul(&mats[w]);
                left_mul[w][i] = index[&m];
            }
        }
        let mut inverse = vec![0u32; order];
        for w in 0..order {
            let inv = mats[w]
                .inverse_unimodular()
                .expect("Weyl matrices are unimodular");
            inverse[w] = index[&inv];
        }
        let longest = (0..order).max_by_key(|&w| length[w]).unwrap() as u32;
        // sigma-twist
        let sig = datum.sigma().clone();
        let sig_inv = sig.inverse_unimodular().expect("sigma unimodular");
        let mut twist = vec![0u32; order];
        for w in 0..order {
            let m = sig.mul(&mats[w]).mul(&sig_inv);
            twist[w] = *index
                .get(&m)
                .ok_or_else(|| Error::invariant("sigma does not normalize the Weyl group"))?;
        }
        Ok(WeylGroup {
            datum: datum.clone(),
            mats,
            index,
            right_mul,
            left_mul,
            length,
            inverse,
            word,
            longest,
            twist,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt(0)
    }

    pub fn longest(&self) -> WeylElt {
        WeylElt(self.longest)
    }

    pub fn length(&self, w: WeylElt) -> usize {
        self.length[w.0 as usize] as usize
    }

    pub fn word(&self, w: WeylElt) -> &[u8] {
        &self.word[w.0 as usize]
    }

    pub fn inverse(&self, w: WeylElt) -> WeylElt {
        WeylElt(self.inverse[w.0 as usize])
    }

    pub fn gen(&self, i: usize) -> WeylElt {
        WeylElt(self.right_mul[0][i])
    }

    pub fn right_mul_gen(&self, w: WeylElt, i: usize) -> WeylElt {
        WeylElt(self.right_mul[w.0 as usize][i])
    }

    pub fn left_mul_gen(&self, w: WeylElt, i: usize) -> WeylElt {
        WeylElt(self.left_mul[w.0 as usize][i])
    }

    /// Product `u · v`, folding `v`'s reduced word.
    pub fn mul(&self, u: WeylElt, v: WeylElt) -> WeylElt {
        let mut cur = u;
        for &i in self.word(v).iter() {
            cur = self.right_mul_gen(cur, i as usize);
        }
        cur
    }

    /// σ w σ⁻¹, the Coxeter-system automorphism induced by Frobenius.
    pub fn sigma_twist(&self, w: WeylElt) -> WeylElt {
        WeylElt(self.twist[w.0 as usize])
    }

    pub fn matrix(&self, w: WeylElt) -> &IMat {
        &self.mats[w.0 as usize]
    }

    /// Looks up an element by its lattice matrix.
    pub fn lookup_matrix(&self, m: &IMat) -> Option<WeylElt> {
        self.index.get(m).copied().map(WeylElt)
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElt {
        let mut cur = self.identity();
        for &i in word {
            cur = self.right_mul_gen(cur, i);
        }
        cur
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElt> + '_ {
        (0..self.order() as u32).map(WeylElt)
    }

    /// Action on a rational cocharacter.
    pub fn act_cochar(&self, w: WeylElt, v: &[Rat]) -> RVec {
        self.mats[w.0 as usize].mul_vec_rat(v)
    }

    pub fn act_cochar_int(&self, w: WeylElt, v: &[Int]) -> IVec {
        self.mats[w.0 as usize].mul_vec(v)
    }

    /// Number of positive roots sent negative by `w` (equals the length).
    pub fn inversions(&self, w: WeylElt) -> usize {
        // w acts on characters by (w⁻¹)ᵀ, i.e. ⟨v, w(α)⟩ = ⟨w⁻¹(v), α⟩;
        // test the sign of w(α) through the coroot-side matrix of w⁻¹.
        let winv = &self.mats[self.inverse[w.0 as usize] as usize];
        self.datum
            .positive_roots()
            .iter()
            .filter(|alpha| {
                let img: Vec<Int> = winv.transpose().mul_vec(alpha);
                // negative iff expansion over simple roots is nonpositive;
                // roots are ±(positive root), so test any nonzero coord of
                // the positive-root expansion: use pairing with a strictly
                // dominant coweight
                let p = dot_ii(&self.strictly_dominant_coweight(), &img);
                p.is_negative()
            })
            .count()
    }

    fn strictly_dominant_coweight(&self) -> IVec {
        // sum of positive coroots pairs > 0 with every positive root
        let mut v = vec![Int::from(0); self.datum.rank()];
        for c in self.datum.positive_coroots() {
            for (x, y) in v.iter_mut().zip(c) {
                *x += y;
            }
        }
        v
    }

    /// Bruhat order via the standard descent recursion.
    pub fn bruhat_leq(&self, u: WeylElt, v: WeylElt) -> bool {
        let mut u = u;
        let mut v = v;
        loop {
            if u == self.identity() {
                return true;
            }
            if self.length(u) > self.length(v) {
                return false;
            }
            // first letter of v's reduced word is a left descent
            let s = self.word(v)[0] as usize;
            let su = self.left_mul_gen(u, s);
            let sv = self.left_mul_gen(v, s);
            if self.length(su) < self.length(u) {
                u = su;
            }
            v = sv;
        }
    }

    /// All reflections, as (element, positive root index) pairs.
    pub fn reflections(&self) -> Vec<(WeylElt, usize)> {
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for w in self.elements() {
            for i in 0..self.datum.num_simple() {
                let t = self.mul(self.mul(w, self.gen(i)), self.inverse(w));
                if seen.insert(t) {
                    out.push((t, i));
                }
            }
        }
        out.retain(|(t, _)| self.length(*t) % 2 == 1 && *t != self.identity());
        out
    }

    /// Minimal-length representatives of `W_J \ W`, sorted by
    /// (length, reduced word).
    pub fn jw_set(&self, j: &[usize]) -> Vec<WeylElt> {
        let mut out: Vec<WeylElt> = self
            .elements()
            .filter(|&w| {
                j.iter()
                    .all(|&i| self.length(self.left_mul_gen(w, i)) > self.length(w))
            })
            .collect();
        out.sort_by(|&a, &b| (self.length(a), self.word(a)).cmp(&(self.length(b), self.word(b))));
        out
    }

    /// Elements of the standard parabolic subgroup `W_J`.
    pub fn parabolic_subgroup(&self, j: &[usize]) -> Vec<WeylElt> {
        // closure of J under multiplication
        let mut seen = std::collections::HashSet::new();
        let mut queue = vec![self.identity()];
        seen.insert(self.identity());
        let mut head = 0;
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            for &i in j {
                let x = self.right_mul_gen(w, i);
                if seen.insert(x) {
                    queue.push(x);
                }
            }
        }
        let mut out: Vec<WeylElt> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Longest element of `W_J`.
    pub fn longest_in_parabolic(&self, j: &[usize]) -> WeylElt {
        *self
            .parabolic_subgroup(j)
            .iter()
            .max_by_key(|&&w| self.length(w))
            .expect("parabolic subgroup nonempty")
    }

    /// The parabolic type cut out by a dominant cocharacter:
    /// `J = { i : ⟨μ, α_i⟩ = 0 }`.
    pub fn parabolic_type_of(&self, mu: &[Int]) -> Vec<usize> {
        (0..self.datum.num_simple())
            .filter(|&i| dot_ii(mu, &self.datum.simple_roots()[i]).is_zero())
            .collect()
    }

    /// Image of `J` under the diagram map induced by sigma.
    pub fn twist_subset(&self, j: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = j.iter().map(|&i| self.datum.sigma_perm()[i]).collect();
        out.sort_unstable();
        out
    }

    /// `K = w₀ · φ(J) · w₀`: conjugating a simple reflection by the longest
    /// element yields another simple reflection; returns the index set.
    pub fn conjugate_subset_by_longest(&self, j: &[usize]) -> Vec<usize> {
        let w0 = self.longest();
        let mut out = Vec::with_capacity(j.len());
        for &i in j {
            let t = self.mul(self.mul(w0, self.gen(i)), self.inverse(w0));
            let idx = (0..self.datum.num_simple())
                .find(|&k| self.gen(k) == t)
                .expect("w0 conjugation permutes the simple reflections");
            out.push(idx);
        }
        out.sort_unstable();
        out
    }

    /// The x-element of a parabolic type `J`: the minimal-length element of
    /// the double coset `W_K w₀ W_{φ(J)}` with `K = w₀ φ(J) w₀`, verified to
    /// be the unique maximal-length element of `ᴷW^{φ(J)}`.
    pub fn x_element(&self, j: &[usize]) -> Result<WeylElt> {
        let phi_j = self.twist_subset(j);
        let k = self.conjugate_subset_by_longest(&phi_j);
        let wk = self.parabolic_subgroup(&k);
        let wj = self.parabolic_subgroup(&phi_j);
        let w0 = self.longest();
        let mut best: Option<WeylElt> = None;
        for &a in &wk {
            let aw0 = self.mul(a, w0);
            for &b in &wj {
                let x = self.mul(aw0, b);
                if best
                    .map(|c| self.length(x) < self.length(c))
                    .unwrap_or(true)
                {
                    best = Some(x);
                }
            }
        }
        let x = best.ok_or_else(|| Error::invariant("empty double coset"))?;
        // cross-check: x is the maximal-length element of ᴷW^{φ(J)}
        let kw: Vec<WeylElt> = self
            .jw_set(&k)
            .into_iter()
            .filter(|&w| {
                phi_j
                    .iter()
                    .all(|&i| self.length(self.right_mul_gen(w, i)) > self.length(w))
            })
            .collect();
        let max = kw.iter().copied().max_by_key(|&w| self.length(w)).unwrap();
        if max != x {
            return Err(Error::invariant(
                "x-element mismatch: double-coset minimum is not the maximum of ᴷW^{φ(J)}",
            ));
        }
        Ok(x)
    }

    /// The partial order on `ᴶW` that encodes closure of zip strata:
    /// `w1 ⪯ w2` iff `y · w1 · x · φ(y)⁻¹ · x⁻¹ ≤ w2` for some `y ∈ W_J`.
    pub fn eo_preceq(&self, j: &[usize], x: WeylElt, w1: WeylElt, w2: WeylElt) -> bool {
        let xinv = self.inverse(x);
        self.parabolic_subgroup(j).iter().any(|&y| {
            let phi_y_inv = self.inverse(self.sigma_twist(y));
            let cand = self.mul(self.mul(self.mul(self.mul(y, w1), x), phi_y_inv), xinv);
            self.bruhat_leq(cand, w2)
        })
    }
}
