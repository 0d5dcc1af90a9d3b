//! Exact integer and rational linear algebra over `BigInt` / `BigRational`.
//!
//! Everything in the crate routes its arithmetic through here: lattice
//! vectors are `Vec<BigInt>`, rational vectors are `Vec<BigRational>`, and
//! matrices are dense row-major. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn ivec(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn rvec(xs: &[(i64, i64)]) -> Vec<Rat> {
    xs.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn ivec_to_rvec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from(x.clone())).collect()
}

/// Formats a rational as `p/q` with `q > 0` and `gcd(p, q) = 1`.
/// `BigRational` keeps itself reduced, so this is just printing.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` (or a bare integer `p`, read as `p/1`).
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: Int = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

pub fn dot_ii(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_ri(a: &[Rat], b: &[Int]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * Rat::from(y.clone())).sum()
}

pub fn dot_rr(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_i(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_i(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_i(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

pub fn add_r(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_r(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_r(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

pub fn zeros_i(n: usize) -> Vec<Int> {
    vec![Int::zero(); n]
}

pub fn zeros_r(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn is_zero_r(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Least common multiple of the denominators of `v` (always positive).
pub fn denom_lcm(v: &[Rat]) -> Int {
    let mut l = Int::one();
    for x in v {
        l = num_integer::lcm(l, x.denom().clone());
    }
    l
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

/// Dense row-major integer matrix. `rows[i][j]` is the entry in row `i`,
/// column `j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IMat {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<Int>>,
}

impl IMat {
    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols));
        IMat { nrows, ncols, rows }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = zeros_i(n);
                r[i] = Int::one();
                r
            })
            .collect();
        IMat::from_rows(rows)
    }

    pub fn is_identity(&self) -> bool {
        self == &IMat::identity(self.nrows)
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.ncols, v.len());
        self.rows.iter().map(|r| dot_ii(r, v)).collect()
    }

    pub fn mul_vec_rat(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.ncols, v.len());
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, x)| Rat::from(a.clone()) * x).sum())
            .collect()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.ncols, other.nrows);
        let rows = (0..self.nrows)
            .map(|i| {
                (0..other.ncols)
                    .map(|j| {
                        (0..self.ncols)
                            .map(|k| &self.rows[i][k] * &other.rows[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        IMat::from_rows(rows)
    }

    pub fn transpose(&self) -> IMat {
        let rows = (0..self.ncols)
            .map(|j| (0..self.nrows).map(|i| self.rows[i][j].clone()).collect())
            .collect();
        IMat::from_rows(rows)
    }

    /// Inverse of a unimodular (determinant ±1) integer matrix.
    pub fn inverse_unimodular(&self) -> Result<IMat> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let inv_rat = rational_inverse(self)?;
        let mut rows = Vec::with_capacity(n);
        for r in &inv_rat {
            let mut row = Vec::with_capacity(n);
            for x in r {
                if !x.denom().is_one() {
                    return Err(Error::Datum("matrix is not unimodular".into()));
                }
                row.push(x.numer().clone());
            }
            rows.push(row);
        }
        Ok(IMat::from_rows(rows))
    }

    /// Multiplicative order of a square integer matrix, capped.
    pub fn finite_order(&self, cap: usize) -> Result<usize> {
        assert_eq!(self.nrows, self.ncols);
        let id = IMat::identity(self.nrows);
        let mut pow = self.clone();
        for k in 1..=cap {
            if pow == id {
                return Ok(k);
            }
            pow = pow.mul(self);
        }
        Err(Error::Datum(format!("matrix has no order <= {cap}")))
    }
}

/// Inverse of a square integer matrix over the rationals.
pub fn rational_inverse(m: &IMat) -> Result<Vec<Vec<Rat>>> {
    let n = m.nrows;
    assert_eq!(n, m.ncols);
    let mut a: Vec<Vec<Rat>> = m
        .rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from(x.clone())).collect())
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut r = zeros_r(n);
            r[i] = Rat::one();
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .ok_or_else(|| Error::Datum("singular matrix".into()))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[i][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    Ok(inv)
}

/// Solves `A x = b` exactly over the rationals, where the columns of `A`
/// are `cols` (each of length `dim`). Returns the coefficient vector when
/// the system is solvable with a *unique* solution (columns must be
/// linearly independent), `None` when inconsistent.
pub fn solve_in_span(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let k = cols.len();
    let dim = b.len();
    // augmented matrix [A | b], Gauss-Jordan
    let mut m: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..dim).find(|&i| !m[i][col].is_zero()) else {
            // dependent column: unique-solution contract violated
            return None;
        };
        m.swap(row, p);
        let pv = m[row][col].clone();
        for j in col..=k {
            m[row][j] /= &pv;
        }
        for i in 0..dim {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=k {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // consistency: remaining rows must have zero RHS
    for i in row..dim {
        if !m[i][k].is_zero() {
            return None;
        }
    }
    Some((0..k).map(|c| m[pivot_rows[c]][k].clone()).collect())
}

/// Smith normal form: returns `(u, d, v)` with `u * m * v = d`, `u`, `v`
/// unimodular and `d` diagonal with `d[i] | d[i+1]`.
pub fn smith_normal_form(m: &IMat) -> (IMat, IMat, IMat) {
    let mut d = m.clone();
    let mut u = IMat::identity(m.nrows);
    let mut v = IMat::identity(m.ncols);
    let (nr, nc) = (m.nrows, m.ncols);

    fn swap_rows(d: &mut IMat, u: &mut IMat, a: usize, b: usize) {
        d.rows.swap(a, b);
        u.rows.swap(a, b);
    }
    fn swap_cols(d: &mut IMat, v: &mut IMat, a: usize, b: usize) {
        for r in &mut d.rows {
            r.swap(a, b);
        }
        for r in &mut v.rows {
            r.swap(a, b);
        }
    }
    fn add_row(d: &mut IMat, u: &mut IMat, src: usize, dst: usize, f: &Int) {
        for j in 0..d.ncols {
            let t = f * &d.rows[src][j];
            d.rows[dst][j] += t;
        }
        for j in 0..u.ncols {
            let t = f * &u.rows[src][j];
            u.rows[dst][j] += t;
        }
    }
    fn add_col(d: &mut IMat, v: &mut IMat, src: usize, dst: usize, f: &Int) {
        for r in &mut d.rows {
            let t = f * &r[src];
            r[dst] += t;
        }
        for r in &mut v.rows {
            let t = f * &r[src];
            r[dst] += t;
        }
    }

    let mut t = 0;
    while t < nr.min(nc) {
        // find a nonzero pivot in the remaining block, smallest |entry|
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !d.rows[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| d.rows[i][j].abs() < d.rows[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);
        // clear row and column t
        loop {
            let mut clean = true;
            for i in t + 1..nr {
                if !d.rows[i][t].is_zero() {
                    let q = -(&d.rows[i][t] / &d.rows[t][t]);
                    add_row(&mut d, &mut u, t, i, &q);
                    if !d.rows[i][t].is_zero() {
                        swap_rows(&mut d, &mut u, t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..nc {
                if !d.rows[t][j].is_zero() {
                    let q = -(&d.rows[t][j] / &d.rows[t][t]);
                    add_col(&mut d, &mut v, t, j, &q);
                    if !d.rows[t][j].is_zero() {
                        swap_cols(&mut d, &mut v, t, j);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        // divisibility: d[t][t] must divide the rest of the block
        let mut redo = false;
        'outer: for i in t + 1..nr {
            for j in t + 1..nc {
                if !(&d.rows[i][j] % &d.rows[t][t]).is_zero() {
                    add_row(&mut d, &mut u, i, t, &Int::one());
                    redo = true;
                    break 'outer;
                }
            }
        }
        if redo {
            continue;
        }
        if d.rows[t][t].is_negative() {
            for j in 0..nc {
                let x = -d.rows[t][j].clone();
                d.rows[t][j] = x;
            }
            for j in 0..u.ncols {
                let x = -u.rows[t][j].clone();
                u.rows[t][j] = x;
            }
        }
        t += 1;
    }
    (u, d, v)
}
