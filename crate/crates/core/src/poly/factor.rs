//! Factorization of univariate polynomials over the rationals.
//!
//! The resolver needs this for the residual polynomials on exceptional lines:
//! squarefree structure decides which points are transverse crossings, and
//! the degrees of the irreducible parts give the sizes of conjugate point
//! clusters. Degrees are small in practice and capped (`FactorDegreeExceeded`)
//! so this never turns into open-ended work.
//!
//! Pipeline: Yun's algorithm for the squarefree decomposition, then a
//! textbook Zassenhaus round (Berlekamp mod p, Hensel lifting, subset
//! recombination) on each squarefree part.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::uni::UniPoly;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One squarefree layer of the input together with its splitting into
/// irreducible factors over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreePart {
    /// Primitive squarefree factor (product of the irreducibles below).
    pub factor: UniPoly,
    /// Multiplicity of this layer in the input.
    pub multiplicity: u32,
    /// Irreducible-over-Q factors, primitive with positive leading
    /// coefficient, sorted by degree then coefficients.
    pub irreducibles: Vec<UniPoly>,
}

impl SquarefreePart {
    pub fn irreducible_degrees(&self) -> Vec<u32> {
        self.irreducibles
            .iter()
            .map(|p| p.degree().unwrap_or(0) as u32)
            .collect()
    }
}

/// Squarefree decomposition with irreducible refinement.
///
/// Returns layers `(factor, multiplicity)` whose product with multiplicities
/// reassembles the input up to a nonzero rational scalar; the factors are
/// pairwise coprime and squarefree. Errors on the zero polynomial and when a
/// squarefree part has degree above `degree_cap`.
pub fn squarefree_split(q: &UniPoly, degree_cap: u32) -> Result<Vec<SquarefreePart>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut parts = Vec::new();
    for (factor, multiplicity) in yun_squarefree(q) {
        let deg = factor.degree().unwrap_or(0) as u32;
        if deg > degree_cap {
            return Err(Error::FactorDegreeExceeded {
                degree: deg,
                cap: degree_cap,
            });
        }
        let irreducibles = irreducible_factors_squarefree(&factor);
        parts.push(SquarefreePart {
            factor,
            multiplicity,
            irreducibles,
        });
    }
    Ok(parts)
}

/// The rational roots of `q`, each with its multiplicity, sorted ascending.
pub fn rational_roots(q: &UniPoly, degree_cap: u32) -> Result<Vec<(Rational, u32)>> {
    let parts = squarefree_split(q, degree_cap)?;
    let mut roots = Vec::new();
    for part in &parts {
        for irr in &part.irreducibles {
            if irr.degree() == Some(1) {
                // a t + b = 0  =>  t = -b / a
                let root = -(irr.coeff(0) / irr.coeff(1));
                roots.push((root, part.multiplicity));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

/// Yun's squarefree decomposition over Q. Returns `(part, multiplicity)`
/// pairs with primitive parts; degree-0 layers are dropped.
pub fn yun_squarefree(q: &UniPoly) -> Vec<(UniPoly, u32)> {
    let f = q.primitive_associate();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    let a = f.gcd(&df);
    let mut b = f.exact_div(&a).expect("gcd divides");
    let mut c = df.exact_div(&a).expect("gcd divides derivative");
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1u32;
    while b.degree().unwrap_or(0) > 0 {
        let h = b.gcd(&d);
        if h.degree().unwrap_or(0) > 0 {
            out.push((h.primitive_associate(), i));
        }
        b = b.exact_div(&h).expect("gcd divides");
        c = d.exact_div(&h).expect("gcd divides");
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Irreducible factors of a squarefree polynomial; callers must have applied
/// the degree cap already. Factors come back primitive, positive leading
/// coefficient, sorted.
fn irreducible_factors_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let prim = f.primitive_integer();
    let n = prim.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![UniPoly::from_integer_coeffs(&prim)];
    }
    // Reduce to the monic case: for f with leading coefficient L, the monic
    // polynomial F(t) = L^(n-1) f(t/L) has integer coefficients, and the
    // factors of f are the primitive parts of G(L t) for monic factors G of F.
    let lc = prim[n].clone();
    let mut monic_coeffs = vec![BigInt::zero(); n + 1];
    monic_coeffs[n] = BigInt::one();
    let mut scale = BigInt::one(); // lc^(n-1-k), starting at k = n-1
    for k in (0..n).rev() {
        monic_coeffs[k] = &prim[k] * &scale;
        scale *= &lc;
    }
    let monic_factors = factor_monic_squarefree(&monic_coeffs);
    let mut out: Vec<UniPoly> = monic_factors
        .iter()
        .map(|g| {
            // substitute t -> L t and take the primitive part
            let mut coeffs = Vec::with_capacity(g.len());
            let mut pw = BigInt::one();
            for c in g.iter() {
                coeffs.push(c * &pw);
                pw *= &lc;
            }
            UniPoly::from_integer_coeffs(&coeffs).primitive_associate()
        })
        .collect();
    out.sort_by(compare_factor);
    out
}

fn compare_factor(a: &UniPoly, b: &UniPoly) -> core::cmp::Ordering {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().unwrap_or(0);
    da.cmp(&db).then_with(|| {
        for i in (0..=da).rev() {
            let c = a.coeff(i).cmp(&b.coeff(i));
            if c != core::cmp::Ordering::Equal {
                return c;
            }
        }
        core::cmp::Ordering::Equal
    })
}

// ---------------------------------------------------------------------------
// Zassenhaus on monic squarefree integer polynomials.
// ---------------------------------------------------------------------------

/// `coeffs[k]` is the coefficient of `t^k`; input monic and squarefree.
/// Returns monic irreducible factors over Z.
fn factor_monic_squarefree(coeffs: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = coeffs.len() - 1;
    if n <= 1 {
        return vec![coeffs.to_vec()];
    }
    let p = choose_prime(coeffs);
    let fp: Vec<u64> = coeffs.iter().map(|c| mod_p(c, p)).collect();
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![coeffs.to_vec()];
    }
    // Lift the factorization until the modulus exceeds twice the
    // Landau–Mignotte style bound on factor coefficients.
    let bound = factor_coeff_bound(coeffs);
    let target = &bound * BigInt::from(2) + BigInt::one();
    let mut modulus = BigInt::from(p);
    while modulus < target {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_lift_tree(coeffs, &modular, p, &target);
    recombine(coeffs, lifted, &modulus)
}

/// Smallest odd prime for which the input stays squarefree mod p.
fn choose_prime(coeffs: &[BigInt]) -> u64 {
    'next: for p in small_primes() {
        let fp: Vec<u64> = coeffs.iter().map(|c| mod_p(c, p)).collect();
        if *fp.last().unwrap() == 0 {
            continue; // cannot happen for monic input, kept for safety
        }
        let dfp = derive_mod(&fp, p);
        if poly_mod_gcd(&fp, &dfp, p).len() != 1 {
            continue 'next;
        }
        return p;
    }
    unreachable!("a squarefree integer polynomial is squarefree mod almost every prime")
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..100_000).filter(|&n| {
        if n % 2 == 0 {
            return false;
        }
        let mut d = 3;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        true
    })
}

fn mod_p(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

/// sqrt(n+1) · 2^n · height(f), rounded up — a safe bound on the absolute
/// value of any coefficient of any monic factor of a monic `f`.
fn factor_coeff_bound(coeffs: &[BigInt]) -> BigInt {
    let n = coeffs.len() - 1;
    let height = coeffs
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::one);
    (BigInt::from(n as u64 + 1)) * (BigInt::one() << n) * height
}

// --- arithmetic in F_p[t], coefficients as u64 with p < 2^31 ----------------

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn derive_mod(f: &[u64], p: u64) -> Vec<u64> {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (i, &c) in f.iter().enumerate().skip(1) {
        out.push((c * (i as u64 % p)) % p);
    }
    trim_mod(&mut out);
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: p prime.
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn poly_mod_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    trim_mod(&mut r);
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let q = r[dr] * inv % p;
        if q != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let idx = dr - db + j;
                let sub = q * bc % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        trim_mod(&mut r);
    }
    r
}

fn poly_mod_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x: Vec<u64> = a.to_vec();
    let mut y: Vec<u64> = b.to_vec();
    trim_mod(&mut x);
    trim_mod(&mut y);
    while !y.is_empty() {
        let r = poly_mod_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return x;
    }
    // make monic
    let inv = inv_mod(*x.last().unwrap(), p);
    for c in x.iter_mut() {
        *c = *c * inv % p;
    }
    x
}

fn poly_mod_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ac) in a.iter().enumerate() {
        if ac == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ac * bc) % p;
        }
    }
    trim_mod(&mut out);
    out
}

fn poly_mod_mulrem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_mod_rem(&poly_mod_mul(a, b, p), m, p)
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
fn berlekamp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    // x^p mod f, then rows x^(p i) mod f.
    let x = [0u64, 1u64];
    let xp = poly_pow_mod(&x, p, f, p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut dense = vec![0u64; n];
        for (i, &c) in cur.iter().enumerate() {
            dense[i] = c;
        }
        rows.push(dense);
        cur = poly_mod_mulrem(&cur, &xp, f, p);
    }
    // kernel of (Q - I)^T, i.e. vectors v with v Q = v.
    let mut mat = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            mat[j][i] = c; // transpose
        }
    }
    for i in 0..n {
        mat[i][i] = (mat[i][i] + p - 1) % p;
    }
    let kernel = nullspace_mod(mat, p);
    let r = kernel.len();
    let mut factors: Vec<Vec<u64>> = vec![f.to_vec()];
    for v in &kernel {
        if factors.len() == r {
            break;
        }
        let mut vpoly: Vec<u64> = v.clone();
        trim_mod(&mut vpoly);
        if vpoly.len() <= 1 {
            continue; // constant kernel vector
        }
        let mut next: Vec<Vec<u64>> = Vec::new();
        for g in factors.drain(..) {
            if g.len() - 1 == 1 {
                next.push(g);
                continue;
            }
            let mut pieces: Vec<Vec<u64>> = Vec::new();
            let mut rest = g.clone();
            for s in 0..p {
                if rest.len() <= 1 {
                    break;
                }
                let mut shifted = vpoly.clone();
                shifted[0] = (shifted[0] + p - s) % p;
                trim_mod(&mut shifted);
                if shifted.is_empty() {
                    continue;
                }
                let d = poly_mod_gcd(&rest, &shifted, p);
                if d.len() > 1 && d.len() < rest.len() {
                    rest = poly_mod_divexact(&rest, &d, p);
                    pieces.push(d);
                } else if d.len() == rest.len() {
                    // whole remainder captured at this shift
                    rest = vec![1u64];
                    pieces.push(d);
                }
            }
            if rest.len() > 1 {
                pieces.push(rest);
            }
            next.extend(pieces);
        }
        factors = next;
    }
    factors.sort();
    factors
}

fn poly_mod_divexact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // long division, remainder known to vanish
    let mut r: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * inv % p;
        q[dr - db] = c;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let idx = dr - db + j;
                let sub = c * bc % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        trim_mod(&mut r);
    }
    trim_mod(&mut q);
    q
}

fn poly_pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut b = poly_mod_rem(base, m, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mod_mulrem(&acc, &b, m, p);
        }
        b = poly_mod_mulrem(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn nullspace_mod(mut mat: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let mut pivot = None;
        for r in row..n {
            if mat[r][col] != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        mat.swap(row, pr);
        let inv = inv_mod(mat[row][col], p);
        for c in 0..n {
            mat[row][c] = mat[row][c] * inv % p;
        }
        for r in 0..n {
            if r != row && mat[r][col] != 0 {
                let factor = mat[r][col];
                for c in 0..n {
                    let sub = factor * mat[row][c] % p;
                    mat[r][c] = (mat[r][c] + p - sub) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            let val = mat[r][free];
            if val != 0 {
                v[pc] = (p - val) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// --- Hensel lifting ---------------------------------------------------------

/// Lift `f ≡ ∏ factors (mod p)` to a factorization modulo the first square
/// tower power of `p` at or above `target`; everything stays monic. The same
/// tower height is reached on every branch, so the result is a factorization
/// modulo one common modulus.
fn hensel_lift_tree(
    f: &[BigInt],
    factors: &[Vec<u64>],
    p: u64,
    target: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        // leaf: f itself is the lift of the single modular factor
        return vec![f.to_vec()];
    }
    let half = factors.len() / 2;
    let (left, right) = factors.split_at(half);
    let g0 = product_mod(left, p);
    let h0 = product_mod(right, p);
    let (s0, t0) = bezout_mod(&g0, &h0, p);

    let mut modulus = BigInt::from(p);
    let mut g: Vec<BigInt> = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: Vec<BigInt> = h0.iter().map(|&c| BigInt::from(c)).collect();
    let mut s: Vec<BigInt> = s0.iter().map(|&c| BigInt::from(c)).collect();
    let mut t: Vec<BigInt> = t0.iter().map(|&c| BigInt::from(c)).collect();

    while &modulus < target {
        let m2 = &modulus * &modulus;
        // e = f - g h  (mod m2)
        let gh = poly_big_mul(&g, &h);
        let e = poly_big_mod(&poly_big_sub(f, &gh), &m2);
        // q, r = divmod(s e, h); g' = g + t e + q g; h' = h + r
        let se = poly_big_mod(&poly_big_mul(&s, &e), &m2);
        let (q, r) = poly_big_divmod_monic(&se, &h, &m2);
        let mut g_new = poly_big_add(&g, &poly_big_mod(&poly_big_mul(&t, &e), &m2));
        g_new = poly_big_add(&g_new, &poly_big_mod(&poly_big_mul(&q, &g), &m2));
        let g_new = poly_big_mod(&g_new, &m2);
        let h_new = poly_big_mod(&poly_big_add(&h, &r), &m2);
        // b = s g' + t h' - 1; c, d = divmod(s b, h'); s' = s - d; t' = t - t b - c g'
        let mut b = poly_big_add(
            &poly_big_mul(&s, &g_new),
            &poly_big_mul(&t, &h_new),
        );
        if b.is_empty() {
            b = vec![BigInt::from(-1)];
        } else {
            b[0] -= BigInt::one();
        }
        let b = poly_big_mod(&b, &m2);
        let sb = poly_big_mod(&poly_big_mul(&s, &b), &m2);
        let (c, d) = poly_big_divmod_monic(&sb, &h_new, &m2);
        let s_new = poly_big_mod(&poly_big_sub(&s, &d), &m2);
        let tb = poly_big_mul(&t, &b);
        let cg = poly_big_mul(&c, &g_new);
        let t_new = poly_big_mod(&poly_big_sub(&poly_big_sub(&t, &tb), &cg), &m2);

        g = g_new;
        h = h_new;
        s = s_new;
        t = t_new;
        modulus = m2;
    }

    let mut out = hensel_lift_tree(&g, left, p, target);
    out.extend(hensel_lift_tree(&h, right, p, target));
    out
}

fn product_mod(factors: &[Vec<u64>], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    for f in factors {
        acc = poly_mod_mul(&acc, f, p);
    }
    acc
}

/// Extended Euclid in F_p[t] for coprime monic g, h: s g + t h = 1.
fn bezout_mod(g: &[u64], h: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    // iterative extended euclid
    let mut r0: Vec<u64> = g.to_vec();
    let mut r1: Vec<u64> = h.to_vec();
    let mut s0 = vec![1u64];
    let mut s1: Vec<u64> = Vec::new();
    let mut t0: Vec<u64> = Vec::new();
    let mut t1 = vec![1u64];
    while !r1.is_empty() {
        let (q, r) = poly_mod_divmod(&r0, &r1, p);
        let s2 = poly_mod_sub(&s0, &poly_mod_mul(&q, &s1, p), p);
        let t2 = poly_mod_sub(&t0, &poly_mod_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    // r0 is a nonzero constant; normalize to 1
    let inv = inv_mod(r0[0], p);
    let scale = |v: &[u64]| -> Vec<u64> { v.iter().map(|&c| c * inv % p).collect() };
    (scale(&s0), scale(&t0))
}

fn poly_mod_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let av = a.get(i).copied().unwrap_or(0);
        let bv = b.get(i).copied().unwrap_or(0);
        out[i] = (av + p - bv) % p;
    }
    trim_mod(&mut out);
    out
}

fn poly_mod_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r: Vec<u64> = a.to_vec();
    trim_mod(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * inv % p;
        q[dr - db] = c;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let idx = dr - db + j;
                let sub = c * bc % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        trim_mod(&mut r);
    }
    trim_mod(&mut q);
    (q, r)
}

// --- big-integer polynomial helpers (dense, little-endian) ------------------

fn poly_big_trim(v: &mut Vec<BigInt>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn poly_big_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let av = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let bv = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(av + bv);
    }
    poly_big_trim(&mut out);
    out
}

fn poly_big_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let av = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let bv = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out.push(av - bv);
    }
    poly_big_trim(&mut out);
    out
}

fn poly_big_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ac) in a.iter().enumerate() {
        if ac.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            out[i + j] += ac * bc;
        }
    }
    poly_big_trim(&mut out);
    out
}

fn poly_big_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    poly_big_trim(&mut out);
    out
}

/// Division by a monic polynomial, coefficients reduced mod m.
fn poly_big_divmod_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r: Vec<BigInt> = a.to_vec();
    poly_big_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].mod_floor(m);
        q[dr - db] = c.clone();
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                let idx = dr - db + j;
                let delta = (&c * bc).mod_floor(m);
                r[idx] = (&r[idx] - delta).mod_floor(m);
            }
        }
        r.pop();
        poly_big_trim(&mut r);
    }
    poly_big_trim(&mut q);
    (q, r)
}

/// Symmetric representative in (-m/2, m/2].
fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * BigInt::from(2) > *m {
        r - m
    } else {
        r
    }
}

/// Subset recombination of lifted modular factors into true integer factors.
fn recombine(f: &[BigInt], lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current: Vec<BigInt> = f.to_vec();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut found = None;
        'subsets: for combo in combinations(remaining.len(), size) {
            let mut prod = vec![BigInt::one()];
            for &i in &combo {
                prod = poly_big_mod(&poly_big_mul(&prod, &remaining[i]), modulus);
            }
            let candidate: Vec<BigInt> = prod.iter().map(|c| symmetric(c, modulus)).collect();
            if let Some(quot) = exact_div_int(&current, &candidate) {
                found = Some((combo, candidate, quot));
                break 'subsets;
            }
        }
        match found {
            Some((combo, candidate, quot)) => {
                out.push(candidate);
                current = quot;
                let keep: Vec<Vec<BigInt>> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                remaining = keep;
            }
            None => {
                size += 1;
            }
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    out
}

/// All k-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    'outer: loop {
        out.push(c.clone());
        let mut i = k - 1;
        loop {
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                continue 'outer;
            }
            if i == 0 {
                break 'outer;
            }
            i -= 1;
        }
    }
    out
}

/// Exact division in Z[t] of monic polynomials; None if not a divisor.
fn exact_div_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.is_empty() || a.len() < b.len() {
        return None;
    }
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        if (&r[dr] % b[db].clone()) != BigInt::zero() {
            return None;
        }
        let c = &r[dr] / &b[db];
        q[dr - db] = c.clone();
        for (j, bc) in b.iter().enumerate() {
            let idx = dr - db + j;
            let delta = &c * bc;
            r[idx] -= delta;
        }
        r.pop();
        poly_big_trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn uni(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_i64(coeffs)
    }

    #[test]
    fn perfect_square() {
        // v^2 - 2v + 1 = (v - 1)^2
        let parts = squarefree_split(&uni(&[1, -2, 1]), 16).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].factor, uni(&[-1, 1]));
        assert_eq!(parts[0].multiplicity, 2);
        assert_eq!(parts[0].irreducible_degrees(), alloc::vec![1]);
    }

    #[test]
    fn cube_plus_one() {
        // v^3 + 1 = (v + 1)(v^2 - v + 1), squarefree
        let parts = squarefree_split(&uni(&[1, 0, 0, 1]), 16).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].multiplicity, 1);
        assert_eq!(parts[0].irreducible_degrees(), alloc::vec![1, 2]);
        assert_eq!(parts[0].irreducibles[0], uni(&[1, 1]));
        assert_eq!(parts[0].irreducibles[1], uni(&[1, -1, 1]));
        // reassembly up to scalar
        let prod = parts[0].irreducibles[0].mul(&parts[0].irreducibles[1]);
        assert_eq!(prod, uni(&[1, 0, 0, 1]));
    }

    #[test]
    fn plain_variable() {
        let parts = squarefree_split(&UniPoly::var(), 16).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].factor, UniPoly::var());
        assert_eq!(parts[0].multiplicity, 1);
    }

    #[test]
    fn rational_root_examples() {
        // v^2 - v -> {0, 1}
        let roots = rational_roots(&uni(&[0, -1, 1]), 16).unwrap();
        assert_eq!(roots, alloc::vec![(int(0), 1), (int(1), 1)]);
        // v^2 - v + 1 -> {} (discriminant -3)
        assert!(rational_roots(&uni(&[1, -1, 1]), 16).unwrap().is_empty());
        // 2v - 3 -> {3/2}
        let roots = rational_roots(&uni(&[-3, 2]), 16).unwrap();
        assert_eq!(roots, alloc::vec![(rat(3, 2), 1)]);
    }

    #[test]
    fn mixed_multiplicities() {
        // (v-1)^2 (v+2)^3 (v^2+1)
        let p = uni(&[-1, 1])
            .pow(2)
            .mul(&uni(&[2, 1]).pow(3))
            .mul(&uni(&[1, 0, 1]));
        let parts = squarefree_split(&p, 16).unwrap();
        let mults: Vec<u32> = parts.iter().map(|p| p.multiplicity).collect();
        assert_eq!(mults, alloc::vec![1, 2, 3]);
        assert_eq!(parts[0].factor, uni(&[1, 0, 1]));
        assert_eq!(parts[1].factor, uni(&[-1, 1]));
        assert_eq!(parts[2].factor, uni(&[2, 1]));
        let roots = rational_roots(&p, 16).unwrap();
        assert_eq!(roots, alloc::vec![(int(-2), 3), (int(1), 2)]);
    }

    #[test]
    fn non_monic_factors() {
        // (2v - 3)(3v + 1)(v^2 + v + 1)
        let p = uni(&[-3, 2]).mul(&uni(&[1, 3])).mul(&uni(&[1, 1, 1]));
        let parts = squarefree_split(&p, 16).unwrap();
        assert_eq!(parts.len(), 1);
        let degs = parts[0].irreducible_degrees();
        assert_eq!(degs, alloc::vec![1, 1, 2]);
        let roots = rational_roots(&p, 16).unwrap();
        assert_eq!(roots, alloc::vec![(rat(-1, 3), 1), (rat(3, 2), 1)]);
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        // v^4 + 1 is irreducible over Q
        let parts = squarefree_split(&uni(&[1, 0, 0, 0, 1]), 16).unwrap();
        assert_eq!(parts[0].irreducible_degrees(), alloc::vec![4]);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let mut coeffs = alloc::vec![0i64; 18];
        coeffs[0] = 1;
        coeffs[17] = 1;
        let e = squarefree_split(&uni(&coeffs), 16).unwrap_err();
        assert!(matches!(e, Error::FactorDegreeExceeded { degree: 17, cap: 16 }));
    }

    #[test]
    fn zero_is_an_error() {
        assert_eq!(
            squarefree_split(&UniPoly::zero(), 16).unwrap_err(),
            Error::ZeroPolynomial
        );
    }
}
