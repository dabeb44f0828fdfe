//! Bivariate gcd and squarefree decomposition.
//!
//! The resolver needs the squarefree layers of the input germ so that a
//! non-reduced divisor can be tracked as (squarefree factor, multiplicity)
//! pairs. Everything works in `(Q[x])[y]` with a primitive pseudo-remainder
//! sequence for the gcd; sizes stay small at the scale this crate targets.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bivar::SparsePoly2;
use super::uni::UniPoly;
use crate::rational::Rational;

/// Dense-in-`y` view: `coeffs[j]` is the coefficient of `y^j` in `Q[x]`.
fn to_dense(p: &SparsePoly2) -> Vec<UniPoly> {
    let dy = match p.degree_y() {
        None => return Vec::new(),
        Some(d) => d,
    };
    (0..=dy).map(|j| p.coeff_of_second(j)).collect()
}

fn from_dense(coeffs: &[UniPoly]) -> SparsePoly2 {
    SparsePoly2::from_second_dense(coeffs)
}

fn dense_trim(v: &mut Vec<UniPoly>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Content in `Q[x]`: gcd of the `y`-coefficients (primitive associate).
fn content(p: &SparsePoly2) -> UniPoly {
    let mut acc = UniPoly::zero();
    for c in to_dense(p) {
        acc = acc.gcd(&c);
        if acc.degree() == Some(0) {
            break;
        }
    }
    acc
}

/// Divide every `y`-coefficient by a common `Q[x]` divisor.
fn divide_content(p: &SparsePoly2, c: &UniPoly) -> SparsePoly2 {
    let dense: Vec<UniPoly> = to_dense(p)
        .iter()
        .map(|q| q.exact_div(c).expect("content divides"))
        .collect();
    from_dense(&dense)
}

fn primitive_part(p: &SparsePoly2) -> SparsePoly2 {
    if p.is_zero() {
        return SparsePoly2::zero();
    }
    let c = content(p);
    divide_content(p, &c)
}

/// Pseudo-remainder of `a` by `b` in `(Q[x])[y]`, `deg_y a >= deg_y b`.
fn pseudo_rem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let mut r: Vec<UniPoly> = a.to_vec();
    dense_trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        // r = lb * r - lead * y^(dr-db) * b
        for coeff in r.iter_mut() {
            *coeff = coeff.mul(lb);
        }
        for (j, bc) in b.iter().enumerate() {
            let idx = dr - db + j;
            let sub = lead.mul(bc);
            r[idx] = r[idx].sub(&sub);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        dense_trim(&mut r);
    }
    r
}

/// Exact division in `Q[x][y]`; `None` when it does not divide.
pub fn exact_div2(a: &SparsePoly2, b: &SparsePoly2) -> Option<SparsePoly2> {
    if a.is_zero() {
        return Some(SparsePoly2::zero());
    }
    if b.is_zero() {
        return None;
    }
    let da = to_dense(a);
    let db = to_dense(b);
    let degb = db.len() - 1;
    if da.len() < db.len() {
        return None;
    }
    let mut r = da;
    let mut q = alloc::vec![UniPoly::zero(); r.len() - degb];
    let lb = &db[degb];
    while r.len() > degb {
        let dr = r.len() - 1;
        let qc = r[dr].exact_div(lb)?;
        q[dr - degb] = qc.clone();
        for (j, bc) in db.iter().enumerate() {
            let idx = dr - degb + j;
            let sub = qc.mul(bc);
            r[idx] = r[idx].sub(&sub);
        }
        r.pop();
        dense_trim(&mut r);
    }
    if r.is_empty() {
        Some(from_dense(&q))
    } else {
        None
    }
}

/// Greatest common divisor in `Q[x, y]`, primitive in both senses.
pub fn gcd2(a: &SparsePoly2, b: &SparsePoly2) -> SparsePoly2 {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let ca = content(a);
    let cb = content(b);
    let c = ca.gcd(&cb);
    let pa = divide_content(a, &ca);
    let pb = divide_content(b, &cb);
    let mut x = to_dense(&pa);
    let mut y = to_dense(&pb);
    if x.len() < y.len() {
        core::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            // remainder is a nonzero element of Q[x]; the primitive parts
            // share no factor of positive y-degree, and their contents are 1
            x = alloc::vec![UniPoly::one()];
            break;
        }
        let mut r = pseudo_rem(&x, &y);
        if !r.is_empty() {
            let rp = primitive_part(&from_dense(&r));
            r = to_dense(&rp);
        }
        x = y;
        y = r;
    }
    // x holds the primitive gcd of the primitive parts
    let gp = primitive_part(&from_dense(&x));
    let lift = SparsePoly2::from_second_dense(&[c]);
    normalize(&gp.mul(&lift))
}

/// Canonical associate: integer coefficients with content 1 and positive
/// coefficient on the leading term.
fn normalize(p: &SparsePoly2) -> SparsePoly2 {
    if p.is_zero() {
        return SparsePoly2::zero();
    }
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let mut num_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd(&(c.numer() * (&den / c.denom())));
    }
    if num_gcd.is_zero() {
        num_gcd = BigInt::one();
    }
    let scale = Rational::new(den, num_gcd);
    let prim = p.scale(&scale);
    let lead_negative = prim
        .terms()
        .last()
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false);
    if lead_negative {
        prim.neg()
    } else {
        prim
    }
}

/// Squarefree decomposition `f ~ unit · ∏ part^multiplicity` over `Q[x, y]`,
/// parts pairwise coprime and squarefree, sorted by multiplicity.
pub fn squarefree_decomposition2(f: &SparsePoly2) -> Vec<(SparsePoly2, u32)> {
    assert!(!f.is_zero(), "zero polynomial has no squarefree decomposition");
    let mut parts: Vec<(SparsePoly2, u32)> = Vec::new();

    // split off the Q[x] content and decompose it with the univariate routine
    let c = content(f);
    let pp = divide_content(f, &c);
    for (u, m) in super::factor::yun_squarefree(&c) {
        push_part(&mut parts, SparsePoly2::from_second_dense(&[u]), m);
    }

    // Yun's algorithm in y on the primitive part
    if pp.degree_y().unwrap_or(0) > 0 {
        let fp = normalize(&pp);
        let df = fp.derivative_y();
        let a = gcd2(&fp, &df);
        let mut b = exact_div2(&fp, &a).expect("gcd divides");
        let mut cc = exact_div2(&df, &a).expect("gcd divides derivative");
        let mut d = cc.sub(&b.derivative_y());
        let mut i = 1u32;
        while b.degree_y().unwrap_or(0) > 0 {
            let h = gcd2(&b, &d);
            if h.total_degree().unwrap_or(0) > 0 {
                push_part(&mut parts, normalize(&h), i);
            }
            b = exact_div2(&b, &h).expect("gcd divides");
            cc = exact_div2(&d, &h).expect("gcd divides");
            d = cc.sub(&b.derivative_y());
            i += 1;
        }
    }

    parts.sort_by_key(|(_, m)| *m);
    parts
}

fn push_part(parts: &mut Vec<(SparsePoly2, u32)>, p: SparsePoly2, m: u32) {
    if p.total_degree().unwrap_or(0) == 0 {
        return;
    }
    for (q, mult) in parts.iter_mut() {
        if *mult == m {
            *q = q.mul(&p);
            return;
        }
    }
    parts.push((p, m));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::bivar::poly;

    #[test]
    fn gcd_of_coprime_is_constant() {
        let g = gcd2(&poly("x^2 + y^3"), &poly("x*y"));
        assert_eq!(g.total_degree(), Some(0));
    }

    #[test]
    fn gcd_picks_common_factor() {
        let a = poly("x + y").mul(&poly("x^2 + y^3"));
        let b = poly("x + y").mul(&poly("y^2 - x"));
        assert_eq!(gcd2(&a, &b), poly("x + y"));
    }

    #[test]
    fn gcd_with_content() {
        let a = poly("x^2*y + x^2"); // x^2 (y + 1)
        let b = poly("x^3*y^2 - x^3"); // x^3 (y-1)(y+1)
        assert_eq!(gcd2(&a, &b), poly("x^2*y + x^2"));
    }

    #[test]
    fn squarefree_simple_square() {
        let f = poly("y").pow(2);
        let parts = squarefree_decomposition2(&f);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0], (poly("y"), 2));
    }

    #[test]
    fn squarefree_mixed() {
        // (y - x^2)^2 * (x^2 + y^3) * x^3
        let f = poly("y - x^2")
            .pow(2)
            .mul(&poly("x^2 + y^3"))
            .mul(&poly("x").pow(3));
        let parts = squarefree_decomposition2(&f);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], (poly("x^2 + y^3"), 1));
        // canonical associate: positive coefficient on the leading term
        assert_eq!(parts[1], (poly("x^2 - y"), 2));
        assert_eq!(parts[2], (poly("x"), 3));
    }

    #[test]
    fn squarefree_reassembles() {
        let f = poly("x*y").mul(&poly("x + y")).pow(2).mul(&poly("y^2 - x^3"));
        let parts = squarefree_decomposition2(&f);
        let mut prod = SparsePoly2::one();
        for (p, m) in &parts {
            prod = prod.mul(&p.pow(*m));
        }
        // equal up to a nonzero rational scalar
        let q = exact_div2(&f, &prod).expect("decomposition divides input");
        assert_eq!(q.total_degree(), Some(0));
    }
}
