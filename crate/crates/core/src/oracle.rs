//! Brute-force verification engine: multiplier-ideal colengths straight from
//! the valuative membership criterion, independent of every Euler
//! characteristic computed elsewhere.
//!
//! Membership of a germ `h` in the ideal at exponent `α` is the condition
//! `ord_E(h ∘ μ) ≥ ⌊α·m_E⌋ − k_E` for the exceptional valuations over the
//! origin. Each condition, unwound through the recorded chart maps, is a
//! finite set of exact linear constraints on the coefficients of `h`, so a
//! colength is the rank of an integer matrix. Left limits use one-sided
//! floors, never a numeric epsilon.
//!
//! Scope: exponents strictly below 1 (finite colength) and reduced germs
//! (strict-branch valuations then impose nothing). The caller guarantees the
//! germ has its only singular point at the origin; the oracle computes the
//! germ-local colength regardless, but the jump/inner equality it witnesses
//! is only meaningful under that hypothesis.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::rank_integer_matrix;
use crate::poly::SparsePoly2;
use crate::rational::{denominator_divides, display, floor_mul, Rational};
use crate::resdata::ResolutionData;

/// Required vanishing orders per over-origin exceptional component; only
/// positive entries impose conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationProfile {
    /// `(component index, required order)`, positive orders only.
    pub required: Vec<(usize, i64)>,
}

impl ValuationProfile {
    pub fn is_trivial(&self) -> bool {
        self.required.is_empty()
    }

    pub fn max_required(&self) -> i64 {
        self.required.iter().map(|&(_, b)| b).max().unwrap_or(0)
    }
}

/// Colengths along a candidate grid with the detected jumps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// `(α, colength at α, colength just below α)` for each grid point.
    pub grid: Vec<(Rational, u64, u64)>,
    /// Positive jumps only: `(α, size)`.
    pub jumps: Vec<(Rational, u64)>,
    /// Largest degree cutoff that was needed for stabilization.
    pub cutoff_used: u32,
}

/// True when every over-origin exceptional component has a chart map.
pub fn has_charts(data: &ResolutionData) -> bool {
    data.exceptional_indices().all(|i| data.chart(i).is_some())
}

/// True when every strict branch has multiplicity 1 (a reduced germ).
pub fn is_reduced(data: &ResolutionData) -> bool {
    data.components()
        .iter()
        .filter(|c| !c.is_exceptional())
        .all(|c| c.m == 1)
}

/// Order of vanishing of `h ∘ μ` along the named exceptional component: the
/// first-coordinate-adic order of the chart pullback.
pub fn valuation_order(data: &ResolutionData, id: &str, h: &SparsePoly2) -> Result<u64> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let idx = data.index_of(id)?;
    let (cx, cy) = data.chart(idx).ok_or_else(|| Error::MissingCharts {
        id: id.into(),
    })?;
    let pulled = h.substitute(cx, cy);
    Ok(pulled.order_first().expect("nonzero pullback of nonzero h") as u64)
}

/// Required orders at `alpha`: `⌊α·m⌋ − k` per over-origin exceptional
/// component.
pub fn profile_at(data: &ResolutionData, alpha: &Rational) -> Result<ValuationProfile> {
    profile(data, alpha, false)
}

/// Required orders just below `alpha`: where `α·m` is an integer the floor
/// drops by one, elsewhere nothing changes.
pub fn profile_below(data: &ResolutionData, alpha: &Rational) -> Result<ValuationProfile> {
    profile(data, alpha, true)
}

fn profile(data: &ResolutionData, alpha: &Rational, one_sided: bool) -> Result<ValuationProfile> {
    ensure_oracle_alpha(alpha)?;
    let mut required = Vec::new();
    for i in data.exceptional_indices() {
        let c = data.component(i);
        if !c.over_origin {
            continue;
        }
        let mut floor = floor_mul(alpha, c.m);
        if one_sided && denominator_divides(alpha, c.m) {
            floor -= BigInt::one();
        }
        let b = floor.to_i64().ok_or(Error::Overflow)? - c.k;
        if b > 0 {
            required.push((i, b));
        }
    }
    Ok(ValuationProfile { required })
}

fn ensure_oracle_alpha(alpha: &Rational) -> Result<()> {
    if !alpha.is_positive() {
        return Err(Error::AlphaOutOfRange {
            alpha: display(alpha),
        });
    }
    if *alpha >= Rational::from_integer(1.into()) {
        return Err(Error::AlphaNotBelowOne {
            alpha: display(alpha),
        });
    }
    Ok(())
}

fn ensure_oracle_applicable(data: &ResolutionData) -> Result<()> {
    if !is_reduced(data) {
        return Err(Error::NonReducedInput);
    }
    for i in data.exceptional_indices() {
        if data.chart(i).is_none() {
            return Err(Error::MissingCharts {
                id: data.component(i).id.clone(),
            });
        }
    }
    Ok(())
}

/// Colength of the multiplier ideal at `alpha` inside the local ring at the
/// origin. `cutoff` overrides the starting truncation degree.
pub fn colength(data: &ResolutionData, alpha: &Rational, cutoff: Option<u32>) -> Result<u64> {
    ensure_oracle_applicable(data)?;
    let profile = profile_at(data, alpha)?;
    colength_of_profile(data, &profile, cutoff).map(|(c, _)| c)
}

/// Colength for an explicit valuation profile, together with the truncation
/// degree that certified stabilization.
pub fn colength_of_profile(
    data: &ResolutionData,
    profile: &ValuationProfile,
    cutoff: Option<u32>,
) -> Result<(u64, u32)> {
    if profile.is_trivial() {
        return Ok((0, 0));
    }
    let max_b = profile.max_required();
    let start = cutoff.unwrap_or_else(|| (2 * max_b).max(2) as u32).max(2);
    // per-component valuations of the coordinates, for the containment check
    let mut coord_orders = Vec::new();
    for &(i, b) in &profile.required {
        let id = &data.component(i).id;
        let vx = valuation_order(data, id, &SparsePoly2::var_x())?;
        let vy = valuation_order(data, id, &SparsePoly2::var_y())?;
        coord_orders.push((i, b, vx.min(vy).max(1)));
        debug_assert!(vx >= 1 && vy >= 1);
    }

    let hard_cap = 1024u32.max(start);
    let mut n = start;
    loop {
        let c0 = rank_at(data, profile, n)?;
        let c1 = rank_at(data, profile, n + 1)?;
        let c2 = rank_at(data, profile, n + 2)?;
        // every monomial of degree n - 1 must already satisfy all conditions
        let all_free = coord_orders
            .iter()
            .all(|&(_, b, vmin)| (n as i64 - 1) * vmin as i64 >= b);
        if c0 == c1 && c1 == c2 && all_free {
            return Ok((c0 as u64, n));
        }
        if n >= hard_cap {
            return Err(Error::NotStabilized { cutoff: n });
        }
        n = (n * 2).min(hard_cap);
    }
}

/// Rank of the condition matrix on polynomials of total degree ≤ `n`.
fn rank_at(data: &ResolutionData, profile: &ValuationProfile, n: u32) -> Result<usize> {
    // columns: monomials x^a y^b with a + b <= n, ordered
    let mut monomials = Vec::new();
    for total in 0..=n {
        for a in (0..=total).rev() {
            monomials.push((a, total - a));
        }
    }
    let ncols = monomials.len();

    // rows keyed by (component, power of the exceptional coordinate, power of
    // the along-the-line coordinate)
    let mut rows: BTreeMap<(usize, u32, u32), Vec<Rational>> = BTreeMap::new();
    for &(i, b) in &profile.required {
        let (cx, cy) = data
            .chart(i)
            .ok_or_else(|| Error::MissingCharts {
                id: data.component(i).id.clone(),
            })?
            .clone();
        // power tables for the chart images of the coordinates
        let mut xp = Vec::with_capacity(n as usize + 1);
        xp.push(SparsePoly2::one());
        for _ in 0..n {
            xp.push(xp.last().unwrap().mul(&cx));
        }
        let mut yp = Vec::with_capacity(n as usize + 1);
        yp.push(SparsePoly2::one());
        for _ in 0..n {
            yp.push(yp.last().unwrap().mul(&cy));
        }
        for (col, &(a, bexp)) in monomials.iter().enumerate() {
            let pulled = xp[a as usize].mul(&yp[bexp as usize]);
            for (&(eu, ev), coeff) in pulled.terms() {
                if (eu as i64) < b {
                    let row = rows
                        .entry((i, eu, ev))
                        .or_insert_with(|| alloc::vec![Rational::zero(); ncols]);
                    row[col] = coeff.clone();
                }
            }
        }
    }

    // clear denominators rowwise and compute the exact rank
    let int_rows: Vec<Vec<BigInt>> = rows
        .into_values()
        .map(|row| {
            let mut den = BigInt::one();
            for c in &row {
                den = den.lcm(c.denom());
            }
            row.iter().map(|c| c.numer() * (&den / c.denom())).collect()
        })
        .collect();
    Ok(rank_integer_matrix(int_rows))
}

/// Jump size at a non-integral exponent below 1: colength at `alpha` minus
/// the colength just below it.
pub fn jump_size(data: &ResolutionData, alpha: &Rational) -> Result<u64> {
    jump_size_with(data, alpha, None)
}

/// [`jump_size`] with an explicit starting truncation degree.
pub fn jump_size_with(
    data: &ResolutionData,
    alpha: &Rational,
    cutoff: Option<u32>,
) -> Result<u64> {
    ensure_oracle_applicable(data)?;
    let at = colength_of_profile(data, &profile_at(data, alpha)?, cutoff)?.0;
    let below = colength_of_profile(data, &profile_below(data, alpha)?, cutoff)?.0;
    at.checked_sub(below).ok_or(Error::MalformedData {
        detail: alloc::format!("colength decreased at {}", display(alpha)),
    })
}

/// Jump sizes for a list of candidate exponents in `(0, 1)`.
pub fn jump_sizes(
    data: &ResolutionData,
    candidates: &[Rational],
) -> Result<BTreeMap<Rational, u64>> {
    let mut out = BTreeMap::new();
    for alpha in candidates {
        out.insert(alpha.clone(), jump_size(data, alpha)?);
    }
    Ok(out)
}

/// Full sweep along a grid of exponents: colengths, left colengths, jumps.
pub fn sweep(data: &ResolutionData, grid: &[Rational]) -> Result<OracleReport> {
    ensure_oracle_applicable(data)?;
    let mut report = OracleReport {
        grid: Vec::with_capacity(grid.len()),
        jumps: Vec::new(),
        cutoff_used: 0,
    };
    for alpha in grid {
        let (at, n1) = colength_of_profile(data, &profile_at(data, alpha)?, None)?;
        let (below, n2) = colength_of_profile(data, &profile_below(data, alpha)?, None)?;
        report.cutoff_used = report.cutoff_used.max(n1).max(n2);
        report.grid.push((alpha.clone(), at, below));
        if at < below {
            return Err(Error::MalformedData {
                detail: alloc::format!("colength decreased at {}", display(alpha)),
            });
        }
        if at > below {
            report.jumps.push((alpha.clone(), at - below));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly;
    use crate::rational::rat;
    use crate::resolve::{resolve_germ, ResolveLimits};

    fn resolved(s: &str) -> ResolutionData {
        resolve_germ(&poly(s), ResolveLimits::default()).unwrap().data
    }

    #[test]
    fn cusp_valuations() {
        // for x^2 + y^3 the last component carries the (3, 2) valuation:
        // x pulls back with order 3 and y with order 2, matching m = 6
        let data = resolved("x^2 + y^3");
        assert_eq!(valuation_order(&data, "E3", &poly("x")).unwrap(), 3);
        assert_eq!(valuation_order(&data, "E3", &poly("y")).unwrap(), 2);
        assert_eq!(valuation_order(&data, "E3", &poly("1")).unwrap(), 0);
        assert_eq!(valuation_order(&data, "E1", &poly("x")).unwrap(), 1);
        assert_eq!(valuation_order(&data, "E1", &poly("y")).unwrap(), 1);

        // the mirrored germ swaps the coordinate orders
        let data = resolved("y^2 + x^3");
        assert_eq!(valuation_order(&data, "E3", &poly("x")).unwrap(), 2);
        assert_eq!(valuation_order(&data, "E3", &poly("y")).unwrap(), 3);
    }

    #[test]
    fn valuation_is_additive() {
        let data = resolved("x^2 + y^3");
        let h = poly("x + y^2");
        let g = poly("y - x^5");
        for id in ["E1", "E2", "E3"] {
            let vh = valuation_order(&data, id, &h).unwrap();
            let vg = valuation_order(&data, id, &g).unwrap();
            let vhg = valuation_order(&data, id, &h.mul(&g)).unwrap();
            assert_eq!(vhg, vh + vg, "component {id}");
        }
    }

    #[test]
    fn cusp_colengths() {
        let data = resolved("x^2 + y^3");
        // just below 5/6 every required order is nonpositive
        assert_eq!(colength(&data, &rat(5, 6).clone(), None).unwrap(), 1);
        let below = profile_below(&data, &rat(5, 6)).unwrap();
        assert!(below.is_trivial());
        assert_eq!(jump_size(&data, &rat(5, 6)).unwrap(), 1);
        assert_eq!(jump_size(&data, &rat(1, 2)).unwrap(), 0);
    }

    #[test]
    fn three_lines_colengths() {
        let data = resolved("x^3 + y^3");
        assert_eq!(colength(&data, &rat(2, 3), None).unwrap(), 1);
        assert_eq!(jump_size(&data, &rat(2, 3)).unwrap(), 1);
    }

    #[test]
    fn oracle_refuses_bad_exponents() {
        let data = resolved("x*y");
        assert!(matches!(
            colength(&data, &rat(1, 1), None),
            Err(Error::AlphaNotBelowOne { .. })
        ));
        assert!(matches!(
            colength(&data, &rat(-1, 2), None),
            Err(Error::AlphaOutOfRange { .. })
        ));
    }

    #[test]
    fn oracle_refuses_non_reduced() {
        let data = resolved("y^2");
        assert!(matches!(
            colength(&data, &rat(1, 3), None),
            Err(Error::NonReducedInput)
        ));
    }

    #[test]
    fn oracle_needs_charts() {
        let data = crate::resdata::fixtures::cusp();
        assert!(!has_charts(&data));
        assert!(matches!(
            colength(&data, &rat(5, 6), None),
            Err(Error::MissingCharts { .. })
        ));
    }

    #[test]
    fn monotone_between_candidates() {
        let data = resolved("x^2 + y^3");
        let mut last = 0u64;
        for num in 1..12 {
            let alpha = rat(num, 12);
            if alpha >= rat(1, 1) {
                break;
            }
            let c = colength(&data, &alpha, None).unwrap();
            assert!(c >= last, "colength must be nondecreasing");
            last = c;
        }
    }

    #[test]
    fn jump_sizes_and_sweep() {
        let data = resolved("x^2 + y^3");
        let jumps = jump_sizes(&data, &[rat(1, 2), rat(5, 6)]).unwrap();
        assert_eq!(jumps.get(&rat(1, 2)), Some(&0));
        assert_eq!(jumps.get(&rat(5, 6)), Some(&1));

        let grid: Vec<_> = (1..6).map(|n| rat(n, 6)).collect();
        let report = sweep(&data, &grid).unwrap();
        assert_eq!(report.jumps, alloc::vec![(rat(5, 6), 1)]);
        assert!(report.cutoff_used >= 2);
        for window in report.grid.windows(2) {
            assert!(window[0].1 <= window[1].2 || window[0].1 <= window[1].1);
        }
    }
}
