//! Exact integer linear algebra on `Z^d` and Reidemeister numbers of
//! finitely generated free abelian groups.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::ExtNat;
use crate::poly::{Poly, QPoly};
use crate::{Error, Rat, Result};

pub type IPoly = Poly<BigInt>;

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    dim: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn new(dim: usize, data: Vec<BigInt>) -> Result<IMat> {
        if dim == 0 {
            return Err(Error::OutOfRange("matrix dimension must be positive"));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(dim * dim, data.len()));
        }
        Ok(IMat { dim, data })
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<IMat> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(dim, r.len()));
            }
            data.extend(r.iter().cloned());
        }
        IMat::new(dim, data)
    }

    /// Convenience constructor; panics on ragged input.
    pub fn from_i64<const D: usize>(rows: [[i64; D]; D]) -> IMat {
        IMat {
            dim: D,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn identity(dim: usize) -> IMat {
        IMat::scalar(dim, BigInt::one())
    }

    pub fn scalar(dim: usize, c: BigInt) -> IMat {
        let mut m = IMat::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c.clone();
        }
        m
    }

    pub fn zero(dim: usize) -> IMat {
        IMat {
            dim,
            data: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn diag(entries: &[BigInt]) -> IMat {
        let dim = entries.len();
        let mut m = IMat::zero(dim);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * dim + i] = e.clone();
        }
        m
    }

    /// Block-diagonal `diag(a, b)`.
    pub fn block_diag(a: &IMat, b: &IMat) -> IMat {
        let dim = a.dim + b.dim;
        let mut m = IMat::zero(dim);
        for i in 0..a.dim {
            for j in 0..a.dim {
                m.data[i * dim + j] = a.get(i, j).clone();
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                m.data[(a.dim + i) * dim + a.dim + j] = b.get(i, j).clone();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.dim + j]
    }

    #[inline]
    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.dim)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    fn check_dim(&self, other: &IMat) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        }
    }

    pub fn mul(&self, other: &IMat) -> Result<IMat> {
        self.check_dim(other)?;
        let d = self.dim;
        let mut out = IMat::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    *out.get_mut(i, j) += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &IMat) -> Result<IMat> {
        self.check_dim(other)?;
        Ok(IMat {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn add(&self, other: &IMat) -> Result<IMat> {
        self.check_dim(other)?;
        Ok(IMat {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &BigInt) -> IMat {
        IMat {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut n: u64) -> IMat {
        let mut acc = IMat::identity(self.dim);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same dimension");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        acc
    }

    pub fn transpose(&self) -> IMat {
        let d = self.dim;
        let mut out = IMat::zero(d);
        for i in 0..d {
            for j in 0..d {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        let k = rows.len();
        if k == 0 {
            return BigInt::one();
        }
        let data = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        det(&IMat { dim: k, data })
    }

    /// Adjugate matrix, `adj(M) M = det(M) I`.
    pub fn adjugate(&self) -> IMat {
        let d = self.dim;
        if d == 1 {
            return IMat::identity(1);
        }
        let mut out = IMat::zero(d);
        for i in 0..d {
            for j in 0..d {
                let rows: Vec<usize> = (0..d).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..d).filter(|&c| c != i).collect();
                let m = self.minor(&rows, &cols);
                *out.get_mut(i, j) = if (i + j) % 2 == 0 { m } else { -m };
            }
        }
        out
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IMat) -> BigInt {
    let n = m.dim;
    let mut a = m.data.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &pivot * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = pivot;
    }
    sign * &a[n * n - 1]
}

/// Monic characteristic polynomial `det(X I - M)`, lowest coefficient first,
/// via the Faddeev-LeVerrier recursion (all divisions are exact).
pub fn charpoly(m: &IMat) -> IPoly {
    let d = m.dim;
    let mut coeffs = vec![BigInt::zero(); d + 1];
    coeffs[d] = BigInt::one();
    let mut mk = IMat::zero(d);
    for k in 1..=d {
        // M_k = A M_{k-1} + c_{d-k+1} I
        let mut next = m.mul(&mk).expect("same dimension");
        for i in 0..d {
            *next.get_mut(i, i) += &coeffs[d - k + 1];
        }
        mk = next;
        let tr = m.mul(&mk).expect("same dimension").trace();
        coeffs[d - k] = -(tr / BigInt::from(k));
    }
    Poly::new(coeffs)
}

fn swap_rows(m: &mut IMat, a: usize, b: usize) {
    if a != b {
        for c in 0..m.dim {
            m.data.swap(a * m.dim + c, b * m.dim + c);
        }
    }
}

fn swap_cols(m: &mut IMat, a: usize, b: usize) {
    if a != b {
        for r in 0..m.dim {
            m.data.swap(r * m.dim + a, r * m.dim + b);
        }
    }
}

/// `row[dst] -= q * row[src]`.
fn row_axpy(m: &mut IMat, dst: usize, src: usize, q: &BigInt) {
    for c in 0..m.dim {
        let v = q * m.get(src, c);
        *m.get_mut(dst, c) -= v;
    }
}

/// `col[dst] -= q * col[src]`.
fn col_axpy(m: &mut IMat, dst: usize, src: usize, q: &BigInt) {
    for r in 0..m.dim {
        let v = q * m.get(r, src);
        *m.get_mut(r, dst) -= v;
    }
}

fn negate_row(m: &mut IMat, r: usize) {
    for c in 0..m.dim {
        let v = -m.get(r, c).clone();
        *m.get_mut(r, c) = v;
    }
}

/// Smith normal form: `(U, D, V)` with `U`, `V` unimodular and
/// `D = U M V = diag(d_1, .., d_n)`, `d_i >= 0`, `d_1 | d_2 | ...`.
///
/// The pivot at each stage is the entry of least nonzero absolute value in
/// the remaining block, ties broken by row-major position.
pub fn smith_normal_form(m: &IMat) -> (IMat, IMat, IMat) {
    let n = m.dim;
    let mut d = m.clone();
    let mut u = IMat::identity(n);
    let mut v = IMat::identity(n);

    for t in 0..n {
        loop {
            // least nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    let e = d.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_snf(u, d, v);
            };
            swap_rows(&mut d, t, pi);
            swap_rows(&mut u, t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let pivot = d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..n {
                let q = d.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                }
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = d.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold a offending row into row t and retry
            let offending = (t + 1..n).find(|&i| {
                (t + 1..n).any(|j| !d.get(i, j).mod_floor(&pivot).is_zero())
            });
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
    }
    finish_snf(u, d, v)
}

fn finish_snf(mut u: IMat, mut d: IMat, v: IMat) -> (IMat, IMat, IMat) {
    for i in 0..d.dim {
        if d.get(i, i).is_negative() {
            negate_row(&mut d, i);
            negate_row(&mut u, i);
        }
    }
    (u, d, v)
}

/// `|Z^d / M Z^d|`: `|det M|`, or infinity for singular `M`.
pub fn coker_order(m: &IMat) -> ExtNat {
    ExtNat::coker_from_det(&det(m))
}

/// Cokernel order read off the Smith diagonal; agrees with [`coker_order`].
pub fn coker_order_snf(m: &IMat) -> ExtNat {
    let (_, d, _) = smith_normal_form(m);
    let prod: BigInt = (0..d.dim).map(|i| d.get(i, i).clone()).product();
    ExtNat::coker_from_det(&prod)
}

/// Coincidence Reidemeister number `R(phi^n, psi^n) = |Coker(A^n - B^n)|`.
pub fn coincidence_r(a: &IMat, b: &IMat, n: u64) -> Result<ExtNat> {
    a.check_dim(b)?;
    Ok(coker_order(&a.pow(n).sub(&b.pow(n))?))
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `k`-th exterior power: the matrix of `k x k` minors, rows and columns
/// indexed by sorted `k`-subsets in lexicographic order.
pub fn exterior_power(m: &IMat, k: usize) -> Result<IMat> {
    if k > m.dim {
        return Err(Error::OutOfRange("exterior power degree exceeds dimension"));
    }
    let subsets = k_subsets(m.dim, k);
    let n = subsets.len();
    let mut data = Vec::with_capacity(n * n);
    for rows in &subsets {
        for cols in &subsets {
            data.push(m.minor(rows, cols));
        }
    }
    IMat::new(n, data)
}

fn sturm_chain(f: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Distinct real roots of a square-free `f` in `(-inf, -1)` and `(1, inf)`.
fn count_outside_unit(f: &QPoly) -> (usize, usize) {
    let mut g = f.clone();
    for root in [-1i64, 1] {
        let lin = QPoly::from_i64(&[-root, 1]);
        if g.sign_at(&Rat::from_integer(root.into())) == 0 {
            g = g.exact_div(&lin).expect("root divides");
        }
    }
    if g.degree().unwrap_or(0) == 0 {
        return (0, 0);
    }
    let chain = sturm_chain(&g);
    let at = |x: i64| variations(chain.iter().map(|s| s.sign_at(&Rat::from_integer(x.into()))));
    let neg_inf = variations(chain.iter().map(|s| s.sign_at_infinity(false)));
    let pos_inf = variations(chain.iter().map(|s| s.sign_at_infinity(true)));
    (neg_inf - at(-1), at(1) - pos_inf)
}

/// `(p, r)`: the number of real roots `< -1`, and the number of real roots
/// of absolute value `> 1`, both counted with multiplicity.
///
/// Each square-free part of `q` is handled by a Sturm chain; roots at `±1`
/// are excluded (they make the instance non-tame and are reported upstream).
pub fn count_real_eigs(q: &IPoly) -> Result<(usize, usize)> {
    if q.degree().is_none() {
        return Err(Error::ZeroValue);
    }
    let mut below = 0;
    let mut outside = 0;
    for (factor, mult) in q.to_rat().squarefree_decomposition() {
        let (neg, pos) = count_outside_unit(&factor);
        below += neg * mult;
        outside += (neg + pos) * mult;
    }
    Ok((below, outside))
}

/// Orders `m` of the roots of unity that are roots of `q`; empty when none.
pub fn root_of_unity_orders(q: &QPoly) -> Vec<u64> {
    let d = q.degree().unwrap_or(0) as u64;
    let mut out = Vec::new();
    // phi(m) >= sqrt(m/2), so phi(m) <= d forces m <= 2 d^2
    for m in 1..=(2 * d * d + 2) {
        if crate::arith::euler_phi(m) > d {
            continue;
        }
        let cyc = crate::poly::cyclotomic(m).to_rat();
        if q.gcd(&cyc).degree().unwrap_or(0) > 0 {
            out.push(m);
        }
    }
    out
}
