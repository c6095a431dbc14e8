//! Independent oracles. Nothing here calls into the library's arithmetic;
//! each value is recomputed by the most direct method available.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// `v_p(x)` by repeated division; `None` for zero.
pub fn vp_int(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut y = x.abs();
    let mut v = 0;
    while (&y % &p).is_zero() {
        y /= &p;
        v += 1;
    }
    Some(v)
}

/// Determinant by cofactor expansion; fine for the small sizes used here.
pub fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    let d = m.len();
    if d == 0 {
        return BigInt::one();
    }
    if d == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..d {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det_cofactor(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn big_rows(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn adjugate_i64(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = m.len();
    if d == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i64; d]; d];
    for i in 0..d {
        for j in 0..d {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let c = i64::try_from(det_cofactor(&big_rows(&minor))).unwrap();
            adj[j][i] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

/// `|Z^d / M Z^d|` by counting integer points of the half-open
/// fundamental parallelepiped `M [0,1)^d`. `None` when `M` is singular.
pub fn lattice_point_count(m: &[Vec<i64>]) -> Option<u64> {
    let d = m.len();
    let det = i64::try_from(det_cofactor(&big_rows(m))).unwrap();
    if det == 0 {
        return None;
    }
    let adj = adjugate_i64(m);
    // bounding box of the parallelepiped spanned by the columns
    let lo: Vec<i64> = (0..d).map(|i| m[i].iter().filter(|&&x| x < 0).sum()).collect();
    let hi: Vec<i64> = (0..d).map(|i| m[i].iter().filter(|&&x| x > 0).sum()).collect();
    let mut x = lo.clone();
    let mut count = 0u64;
    loop {
        // x = M y with y = adj x / det in [0,1)^d
        let inside = (0..d).all(|i| {
            let s: i64 = (0..d).map(|j| adj[i][j] * x[j]).sum();
            if det > 0 {
                0 <= s && s < det
            } else {
                det < s && s <= 0
            }
        });
        if inside {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == d {
                return Some(count);
            }
            x[k] += 1;
            if x[k] <= hi[k] {
                break;
            }
            x[k] = lo[k];
            k += 1;
        }
    }
}

/// Twisted classes of `x -> a^n x` on `Z/p^k`: orbits of
/// `beta ~ beta + (1 - a^n) g`, found by union-find.
pub fn twisted_classes_zpk(a: u64, n: u32, p: u64, k: u32) -> u64 {
    let m = p.pow(k);
    let an = (0..n).fold(1u128, |acc, _| acc * a as u128 % m as u128) as u64;
    let step = (1 + m - an % m) % m;
    let mut parent: Vec<u64> = (0..m).collect();
    fn find(parent: &mut [u64], x: u64) -> u64 {
        let mut r = x;
        while parent[r as usize] != r {
            r = parent[r as usize];
        }
        let mut y = x;
        while parent[y as usize] != r {
            let next = parent[y as usize];
            parent[y as usize] = r;
            y = next;
        }
        r
    }
    for beta in 0..m {
        let other = (beta + step) % m;
        let (ra, rb) = (find(&mut parent, beta), find(&mut parent, other));
        if ra != rb {
            parent[ra as usize] = rb;
        }
    }
    (0..m).filter(|&x| find(&mut parent, x) == x).count() as u64
}

/// `p^(j - p^(v_p(j)))`, the closed form for the two-place example.
pub fn two_place_closed_form(p: u64, j: u64) -> BigInt {
    let mut v = 0;
    let mut jj = j;
    while jj % p == 0 {
        jj /= p;
        v += 1;
    }
    BigInt::from(p).pow((j - p.pow(v)) as u32)
}

/// Polynomials over `F_p` as low-first `Vec<u64>`, trimmed.
pub fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = fp_trim(a.to_vec());
    let b = fp_trim(b.to_vec());
    let lead_inv = (1..p).find(|x| x * b[b.len() - 1] % p == 1).unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

/// Every monic polynomial of degree `d` over `F_p`.
pub fn monic_polys(p: u64, d: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let count = p.pow(d as u32);
    for idx in 0..count {
        let mut c = Vec::with_capacity(d + 1);
        let mut x = idx;
        for _ in 0..d {
            c.push(x % p);
            x /= p;
        }
        c.push(1);
        out.push(c);
    }
    out
}

/// Irreducibility by trial division by every monic polynomial of degree
/// at most half.
pub fn irreducible_naive(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        for g in monic_polys(p, k) {
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    d >= 1
}

/// Order of `t` modulo `w` by stepping through its powers.
pub fn order_of_t_naive(w: &[u64], p: u64) -> u64 {
    let mut x = fp_rem(&[0, 1], w, p);
    let mut k = 1;
    while x != [1] {
        let mut shifted = vec![0];
        shifted.extend_from_slice(&x);
        x = fp_rem(&shifted, w, p);
        k += 1;
    }
    k
}

/// Random unimodular integer matrix: a product of elementary operations.
pub fn random_unimodular(rng: &mut impl Rng, d: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
    for _ in 0..(2 * d) {
        if d < 2 {
            break;
        }
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d);
        while j == i {
            j = rng.gen_range(0..d);
        }
        let c = rng.gen_range(-1..=1);
        for k in 0..d {
            m[i][k] += c * m[j][k];
        }
    }
    m
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| (0..d).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

/// `S (N + p E) S^-1 / u`: `N` strictly upper triangular, `S` unimodular and
/// `u` a unit at `p`. Every eigenvalue has positive valuation, so the
/// characteristic polynomial is `X^d mod p`.
pub fn random_nilpotent_mod_p(rng: &mut impl Rng, p: u64, d: usize) -> Vec<Vec<Rat>> {
    let mut core = vec![vec![BigInt::zero(); d]; d];
    for (i, row) in core.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let e = BigInt::from(rng.gen_range(-3i64..=3) * p as i64);
            *x = if j > i { e + rng.gen_range(-4i64..=4) } else { e };
        }
    }
    let s = random_unimodular(rng, d);
    let s_big = big_rows(&s);
    let det_s = det_cofactor(&s_big);
    let adj = big_rows(&adjugate_i64(&s));
    let s_inv: Vec<Vec<BigInt>> = adj.iter().map(|r| r.iter().map(|x| x * &det_s).collect()).collect();
    let m = mat_mul(&mat_mul(&s_big, &core), &s_inv);
    let u = loop {
        let u = rng.gen_range(1i64..=7);
        if u as u64 % p != 0 {
            break u;
        }
    };
    m.into_iter()
        .map(|r| r.into_iter().map(|x| Rat::new(x, BigInt::from(u))).collect())
        .collect()
}

pub fn random_matrix(rng: &mut impl Rng, d: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..d).map(|_| (0..d).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}

/// `det(F^n - I) != 0` for every `n` with `euler_phi(n) <= d`: no
/// eigenvalue is a root of unity.
pub fn is_tame_naive(f: &[Vec<i64>]) -> bool {
    let d = f.len();
    let fb = big_rows(f);
    let mut power = fb.clone();
    for _n in 1..=(2 * d * d + 2) {
        let mut shifted = power.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= 1;
        }
        if det_cofactor(&shifted).is_zero() {
            return false;
        }
        power = mat_mul(&power, &fb);
    }
    true
}

pub fn is_positive(x: &Rat) -> bool {
    x.is_positive()
}

/// Number of irreducible factors of `t^n - 1` over `F_p`, counted with
/// multiplicity: `p^k sum_{m | n'} phi(m) / ord_m(p)` where `n = n' p^k`.
pub fn irreducible_factor_count(n: u64, p: u64) -> u64 {
    let mut core = n;
    let mut mult = 1;
    while core % p == 0 {
        core /= p;
        mult *= p;
    }
    let phi = |m: u64| (1..=m).filter(|&k| num_integer::gcd(k, m) == 1).count() as u64;
    let ord = |m: u64| {
        let mut x = p % m;
        let mut k = 1;
        while x != 1 % m {
            x = x * p % m;
            k += 1;
        }
        k
    };
    let total: u64 = (1..=core).filter(|m| core % m == 0).map(|m| phi(m) / ord(m)).sum();
    total * mult
}
