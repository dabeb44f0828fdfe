//! Spectrum multiplicities on `(0, 1]` from the stratified intersection sum,
//! and the cross-check report that compares them with the inner jump
//! multiplicities (plus, where applicable, the brute-force oracle).
//!
//! For a surface resolution the strata are single exceptional curves (with
//! the floor twist `⌊α · pullback⌋` restricted to them) and intersection
//! points among divisible components. The signed sum over strata collapses
//! to `Σ point counts − Σ (1 + twist degree)`.
//!
//! Twist sign: the twist is `+⌊α · pullback⌋` with `α` the spectrum exponent.
//! This is the convention forced by the worked node/cusp/three-lines corpus
//! and by nonnegativity of the resulting multiplicities; the report prints it
//! so downstream consumers never have to guess.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::multiplier::{
    candidate_alphas, inner_jump_multiplicity, inner_spectrum, lct, SpectrumTable,
};
use crate::oracle;
use crate::rational::{denominator_divides, display, floor_mul, in_unit_interval, Rational};
use crate::resdata::ResolutionData;

/// Twist divisor for the stratum sum: `⌊α·m_j⌋` on every component.
fn floor_twist(data: &ResolutionData, alpha: &Rational) -> Result<Vec<i64>> {
    data.components()
        .iter()
        .map(|c| floor_mul(alpha, c.m).to_i64().ok_or(Error::Overflow))
        .collect()
}

/// Components whose multiplicity the reduced denominator of `alpha` divides.
fn divisible(data: &ResolutionData, alpha: &Rational) -> Vec<usize> {
    (0..data.len())
        .filter(|&i| denominator_divides(alpha, data.component(i).m))
        .collect()
}

/// Spectrum multiplicity of the exponent `alpha` via the stratified sum.
pub fn stratum_multiplicity(data: &ResolutionData, alpha: &Rational) -> Result<i64> {
    let (closed, alt) = stratum_both_routes(data, alpha)?;
    debug_assert_eq!(closed, alt, "open/closed stratum sums must agree");
    Ok(closed)
}

/// The stratified sum computed twice: once over closed strata with
/// inclusion–exclusion through the pair strata, and once over open strata
/// with boundary points subtracted from each curve. Both must agree; the
/// second route re-walks the intersection table independently.
pub fn stratum_both_routes(data: &ResolutionData, alpha: &Rational) -> Result<(i64, i64)> {
    if !in_unit_interval(alpha) {
        return Err(Error::AlphaOutOfRange {
            alpha: display(alpha),
        });
    }
    let twist = floor_twist(data, alpha)?;
    let in_jd: Vec<bool> = {
        let mut v = alloc::vec![false; data.len()];
        for i in divisible(data, alpha) {
            v[i] = true;
        }
        v
    };
    let over: Vec<bool> = data
        .components()
        .iter()
        .map(|c| c.is_exceptional() && c.over_origin)
        .collect();

    // closed route: single strata are the divisible exceptional curves over
    // the origin; pair strata are divisible pairs meeting them
    let mut singles: i64 = 0;
    let mut single_chis: Vec<(usize, i64)> = Vec::new();
    for i in 0..data.len() {
        if !(in_jd[i] && over[i]) {
            continue;
        }
        let chi = 1i64
            .checked_add(data.restriction_degree(&twist, i)?)
            .ok_or(Error::Overflow)?;
        singles = singles.checked_add(chi).ok_or(Error::Overflow)?;
        single_chis.push((i, chi));
    }
    let mut pairs: i64 = 0;
    for (i, j, points) in data.intersection_entries() {
        if in_jd[i] && in_jd[j] && (over[i] || over[j]) {
            pairs = pairs.checked_add(points).ok_or(Error::Overflow)?;
        }
    }
    let closed = pairs - singles;

    // open route: subtract the divisible boundary points from each curve,
    // then weight each pair stratum by (members over the origin − 1)
    let mut alt: i64 = 0;
    for &(i, chi) in &single_chis {
        let mut boundary: i64 = 0;
        for j in 0..data.len() {
            if j != i && in_jd[j] {
                boundary = boundary
                    .checked_add(data.pair_count(i, j))
                    .ok_or(Error::Overflow)?;
            }
        }
        alt = alt.checked_sub(chi - boundary).ok_or(Error::Overflow)?;
    }
    for (i, j, points) in data.intersection_entries() {
        if in_jd[i] && in_jd[j] {
            let members = i64::from(in_jd[i] && over[i]) + i64::from(in_jd[j] && over[j]);
            if members > 0 {
                alt = alt
                    .checked_sub((members - 1) * points)
                    .ok_or(Error::Overflow)?;
            }
        }
    }

    Ok((closed, alt))
}

/// Every exponent in `(0, 1]` whose reduced denominator divides the
/// multiplicity of some component over the origin, merged with the candidate
/// exponents; outside this set both multiplicity formulas vanish.
pub fn merged_candidates(data: &ResolutionData) -> Vec<Rational> {
    let mut set = candidate_alphas(data);
    for i in data.exceptional_indices() {
        let c = data.component(i);
        if !c.over_origin || c.m <= 0 {
            continue;
        }
        for j in 1..=c.m {
            let alpha = Rational::new(j.into(), c.m.into());
            if in_unit_interval(&alpha) && !set.contains(&alpha) {
                set.push(alpha);
            }
        }
    }
    set.sort();
    set
}

/// Spectrum table on `(0, 1]` from the stratum side, zero entries dropped.
pub fn spectrum_table(data: &ResolutionData) -> Result<SpectrumTable> {
    let mut pairs = Vec::new();
    for alpha in merged_candidates(data) {
        let n = stratum_multiplicity(data, &alpha)?;
        pairs.push((alpha, n));
    }
    SpectrumTable::from_pairs(pairs)
}

/// Why the oracle column of a verification row is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleSkip {
    /// Disabled by the caller.
    Disabled,
    /// Integral exponent: the colength is infinite there.
    Integral,
    /// The data carries no chart maps (user-supplied resolution).
    NoCharts,
    /// The germ is not reduced, which the oracle refuses.
    NonReduced,
}

impl OracleSkip {
    pub fn reason(&self) -> &'static str {
        match self {
            OracleSkip::Disabled => "disabled",
            OracleSkip::Integral => "integral exponent",
            OracleSkip::NoCharts => "no chart maps",
            OracleSkip::NonReduced => "non-reduced germ",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleColumn {
    Value(i64),
    Skipped(OracleSkip),
}

/// One row of the verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyEntry {
    pub alpha: Rational,
    pub inner: i64,
    pub stratum: i64,
    pub oracle: OracleColumn,
    pub pass: bool,
}

/// Full cross-check report: per-exponent equality of the two formulas, the
/// oracle where it applies, and the headline invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub lct: Rational,
    pub entries: Vec<VerifyEntry>,
    pub inner_table: SpectrumTable,
    pub stratum_table: SpectrumTable,
    pub tables_agree: bool,
    pub all_pass: bool,
    /// Documented twist convention used by the stratum formula.
    pub twist_convention: &'static str,
}

pub const TWIST_CONVENTION: &str =
    "twist +floor(alpha * pullback divisor), fixed by the worked corpus";

/// Run the full cross-check on validated data.
///
/// When `use_oracle` is set and the data carries chart maps for a reduced
/// germ, every non-integral exponent is also checked against the colength
/// jump computed from the valuative definition. The caller is responsible
/// for the germ having its only singular point at the origin; the report
/// cannot see other points.
pub fn verify_theorem(data: &ResolutionData, use_oracle: bool) -> Result<VerifyReport> {
    verify_theorem_with(data, use_oracle, None)
}

/// [`verify_theorem`] with an explicit starting truncation degree for the
/// oracle colengths.
pub fn verify_theorem_with(
    data: &ResolutionData,
    use_oracle: bool,
    oracle_cutoff: Option<u32>,
) -> Result<VerifyReport> {
    let candidates = merged_candidates(data);
    let mut entries = Vec::with_capacity(candidates.len());
    let mut all_pass = true;

    let oracle_state = if !use_oracle {
        Err(OracleSkip::Disabled)
    } else if !oracle::has_charts(data) {
        Err(OracleSkip::NoCharts)
    } else if !oracle::is_reduced(data) {
        Err(OracleSkip::NonReduced)
    } else {
        Ok(())
    };

    let one = Rational::from_integer(1.into());
    for alpha in candidates {
        let inner = inner_jump_multiplicity(data, &alpha)?;
        let stratum = stratum_multiplicity(data, &alpha)?;
        let oracle_col = match (&oracle_state, alpha < one) {
            (Ok(()), true) => {
                OracleColumn::Value(oracle::jump_size_with(data, &alpha, oracle_cutoff)? as i64)
            }
            (Ok(()), false) => OracleColumn::Skipped(OracleSkip::Integral),
            (Err(skip), _) => OracleColumn::Skipped(*skip),
        };
        let mut pass = inner == stratum;
        if let OracleColumn::Value(v) = oracle_col {
            pass = pass && v == inner;
        }
        all_pass &= pass;
        entries.push(VerifyEntry {
            alpha,
            inner,
            stratum,
            oracle: oracle_col,
            pass,
        });
    }

    let inner_table = inner_spectrum(data)?;
    let stratum_table = spectrum_table(data)?;
    let tables_agree = inner_table == stratum_table;
    all_pass &= tables_agree;

    Ok(VerifyReport {
        lct: lct(data)?,
        entries,
        inner_table,
        stratum_table,
        tables_agree,
        all_pass,
        twist_convention: TWIST_CONVENTION,
    })
}

/// Short human-readable summary, used in error paths and logs.
pub fn report_summary(report: &VerifyReport) -> String {
    use core::fmt::Write as _;
    let mut s = String::new();
    let _ = write!(
        s,
        "lct {}, {} exponents, all_pass: {}",
        display(&report.lct),
        report.entries.len(),
        report.all_pass
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::resdata::fixtures::{cusp, node, smooth, three_lines};

    #[test]
    fn stratum_examples() {
        assert_eq!(stratum_multiplicity(&cusp(), &rat(5, 6)).unwrap(), 1);
        assert_eq!(stratum_multiplicity(&cusp(), &int(1)).unwrap(), 0);
        assert_eq!(stratum_multiplicity(&node(), &int(1)).unwrap(), 1);
        assert_eq!(stratum_multiplicity(&three_lines(), &int(1)).unwrap(), 2);
        assert_eq!(stratum_multiplicity(&three_lines(), &rat(2, 3)).unwrap(), 1);
        assert_eq!(stratum_multiplicity(&smooth(), &int(1)).unwrap(), 0);
    }

    #[test]
    fn spectrum_tables() {
        let t = spectrum_table(&cusp()).unwrap();
        assert_eq!(t.entries(), &[(rat(5, 6), 1)]);
        let t = spectrum_table(&three_lines()).unwrap();
        assert_eq!(t.entries(), &[(rat(2, 3), 1), (int(1), 2)]);
        assert!(spectrum_table(&smooth()).unwrap().is_empty());
    }

    #[test]
    fn theorem_equality_on_corpus() {
        for data in [cusp(), node(), three_lines(), smooth()] {
            for alpha in merged_candidates(&data) {
                assert_eq!(
                    stratum_multiplicity(&data, &alpha).unwrap(),
                    inner_jump_multiplicity(&data, &alpha).unwrap(),
                    "alpha = {}",
                    display(&alpha)
                );
            }
        }
    }

    #[test]
    fn independence_under_extra_blowup() {
        let data = cusp();
        let bigger = data.extra_blowup("E3").unwrap();
        assert_eq!(stratum_multiplicity(&bigger, &rat(5, 6)).unwrap(), 1);
        assert_eq!(
            spectrum_table(&data).unwrap(),
            spectrum_table(&bigger).unwrap()
        );
    }

    #[test]
    fn verify_without_charts_skips_oracle() {
        let report = verify_theorem(&cusp(), true).unwrap();
        assert!(report.all_pass);
        assert!(report.tables_agree);
        assert_eq!(report.lct, rat(5, 6));
        for entry in &report.entries {
            assert!(matches!(
                entry.oracle,
                OracleColumn::Skipped(OracleSkip::NoCharts)
            ));
        }
    }

    #[test]
    fn merged_candidates_cover_divisors() {
        let set = merged_candidates(&cusp());
        for needed in [rat(1, 6), rat(1, 3), rat(1, 2), rat(2, 3), rat(5, 6), int(1)] {
            assert!(set.contains(&needed), "{}", display(&needed));
        }
    }
}
