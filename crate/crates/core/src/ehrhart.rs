//! Ehrhart counts `L(t) = |t P_M(G) ∩ Z^E|` and the h*-vector.
//!
//! The polytope is full-dimensional of dimension `d = |E|`, so
//! `sum_t L(t) z^t = h*(z) / (1 - z)^(d+1)` with
//! `h*_i = sum_{j <= i} (-1)^j C(d+1, j) L(i - j)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::polytope::MatchingPolytope;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HStarVector {
    /// `h*_0, ..., h*_s` with trailing zeros trimmed. Serialized as JSON
    /// numbers when they fit in 64 bits, otherwise as decimal strings.
    #[serde(serialize_with = "serialize_big_list")]
    pub coefficients: Vec<BigUint>,
    /// `d = |E(G)|`.
    pub dimension: usize,
}

fn serialize_big_list<S: Serializer>(list: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(list.len()))?;
    for c in list {
        match c.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

impl HStarVector {
    /// Applies the h* transform to `L(0), ..., L(d)`.
    pub fn from_counts(counts: &[BigUint], dimension: usize) -> Result<Self> {
        if counts.len() != dimension + 1 {
            return Err(Error::input(format!(
                "need {} counts for dimension {dimension}, got {}",
                dimension + 1,
                counts.len()
            )));
        }
        let binom = binomial_row(dimension + 1);
        let mut coefficients = Vec::with_capacity(dimension + 1);
        for i in 0..=dimension {
            let mut h = BigInt::zero();
            for j in 0..=i {
                let term = BigInt::from(binom[j].clone()) * BigInt::from(counts[i - j].clone());
                if j % 2 == 0 {
                    h += term;
                } else {
                    h -= term;
                }
            }
            if h.is_negative() {
                return Err(Error::internal(format!(
                    "h*_{i} = {h} is negative; the lattice-point counts {counts:?} are inconsistent"
                )));
            }
            coefficients.push(h.to_biguint().expect("nonnegative"));
        }
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        if !coefficients[0].is_one() {
            return Err(Error::internal(format!("h*_0 = {} but must be 1", coefficients[0])));
        }
        Ok(HStarVector {
            coefficients,
            dimension,
        })
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.coefficients)
    }

    pub fn is_palindromic(&self) -> bool {
        is_palindromic(&self.coefficients)
    }

    /// `L(t)` recovered from the series: `sum_i h*_i C(t - i + d, d)`.
    pub fn lattice_count(&self, t: u64) -> BigUint {
        let d = self.dimension as u64;
        self.coefficients
            .iter()
            .enumerate()
            .filter(|&(i, _)| i as u64 <= t)
            .map(|(i, h)| h * binomial(t - i as u64 + d, d))
            .sum()
    }

    /// Normalized volume `d! vol(P)`.
    pub fn normalized_volume(&self) -> BigUint {
        self.coefficients.iter().sum()
    }
}

impl fmt::Display for HStarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Weakly increasing, then weakly decreasing.
pub fn is_unimodal<T: PartialOrd>(coefficients: &[T]) -> bool {
    let mut i = 1;
    while i < coefficients.len() && coefficients[i - 1] <= coefficients[i] {
        i += 1;
    }
    while i < coefficients.len() && coefficients[i - 1] >= coefficients[i] {
        i += 1;
    }
    i >= coefficients.len()
}

pub fn is_palindromic<T: PartialEq>(coefficients: &[T]) -> bool {
    coefficients.iter().eq(coefficients.iter().rev())
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn binomial_row(n: usize) -> Vec<BigUint> {
    (0..=n as u64).map(|k| binomial(n as u64, k)).collect()
}

/// How `L(0), ..., L(d)` are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountingMethod {
    /// Count `L(t)` directly for every `t` in `0..=d`.
    Direct,
    /// Count `L(t)` for small `t` and interior points `L°(t)` for the rest,
    /// then use `L(-t) = (-1)^d L°(t)` to fix the degree-`d` polynomial from
    /// `d + 1` consecutive values. Each step extends whichever side had the
    /// smaller last count, since search effort tracks the count.
    #[default]
    Reciprocity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EhrhartOptions {
    pub method: CountingMethod,
    pub budget: Budget,
}

impl EhrhartOptions {
    /// The default: reciprocity counting with a ten-minute clock.
    pub fn standard() -> Self {
        EhrhartOptions {
            method: CountingMethod::Reciprocity,
            budget: Budget::seconds(600),
        }
    }
}

/// `L(t)` by direct counting.
pub fn count_points(g: &Graph, t: u32, budget: &Budget) -> Result<BigUint> {
    Ok(BigUint::from(MatchingPolytope::new(g)?.count(t, budget)?))
}

/// `L(0), ..., L(d)`.
pub fn ehrhart_values(p: &MatchingPolytope, options: &EhrhartOptions) -> Result<Vec<BigUint>> {
    let d = p.dimension();
    let meter = options.budget.start("Ehrhart counting");
    match options.method {
        CountingMethod::Direct => (0..=d as u32)
            .map(|t| p.count_metered(t, false, &meter).map(BigUint::from))
            .collect(),
        CountingMethod::Reciprocity => reciprocity_values(p, d, &meter),
    }
}

fn reciprocity_values(p: &MatchingPolytope, d: usize, meter: &Meter) -> Result<Vec<BigUint>> {
    let mut direct: Vec<u64> = vec![1];
    let mut interior: Vec<u64> = Vec::new();
    while direct.len() + interior.len() < d + 1 {
        let last_direct = *direct.last().expect("L(0) is present");
        let last_interior = interior.last().copied().unwrap_or(0);
        if last_interior < last_direct {
            let t = interior.len() as u32 + 1;
            interior.push(p.count_metered(t, true, meter)?);
        } else {
            let t = direct.len() as u32;
            direct.push(p.count_metered(t, false, meter)?);
        }
    }
    // values at t = -b, ..., a
    let b = interior.len();
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    let mut values: Vec<BigInt> = interior.iter().rev().map(|&c| BigInt::from(c) * sign).collect();
    values.extend(direct.iter().map(|&c| BigInt::from(c)));
    let diffs = forward_differences(values);
    (0..=d)
        .map(|s| {
            let u = (s + b) as u64;
            let mut acc = BigInt::zero();
            for (k, delta) in diffs.iter().enumerate() {
                acc += BigInt::from(binomial(u, k as u64)) * delta;
            }
            acc.to_biguint()
                .ok_or_else(|| Error::internal(format!("interpolated L({s}) = {acc} is negative")))
        })
        .collect()
}

/// `Δ^0 y_0, Δ^1 y_0, ..., Δ^n y_0`.
fn forward_differences(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(row.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

pub fn hstar(g: &Graph) -> Result<HStarVector> {
    hstar_with(&MatchingPolytope::new(g)?, &EhrhartOptions::standard())
}

pub fn hstar_with(p: &MatchingPolytope, options: &EhrhartOptions) -> Result<HStarVector> {
    let counts = ehrhart_values(p, options)?;
    HStarVector::from_counts(&counts, p.dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};

    fn fam(f: Family) -> Graph {
        make_family(&f).unwrap()
    }

    fn coeffs(h: &HStarVector) -> Vec<u64> {
        h.coefficients.iter().map(|c| c.to_u64().unwrap()).collect()
    }

    #[test]
    fn segment_and_triangle_counts() {
        let k2 = fam(Family::Path(2));
        for t in 0..6 {
            assert_eq!(
                count_points(&k2, t, &Budget::unlimited()).unwrap(),
                BigUint::from(t + 1)
            );
        }
        let k3 = fam(Family::Cycle(3));
        for t in 0..6u32 {
            let expected = (t + 1) * (t + 2) * (t + 3) / 6;
            assert_eq!(
                count_points(&k3, t, &Budget::unlimited()).unwrap(),
                BigUint::from(expected)
            );
        }
    }

    #[test]
    fn small_hstars() {
        assert_eq!(coeffs(&hstar(&fam(Family::Path(2))).unwrap()), vec![1]);
        assert_eq!(coeffs(&hstar(&fam(Family::Wheel(4))).unwrap()), vec![1, 3, 3, 1]);
    }

    #[test]
    fn methods_agree() {
        for f in [
            Family::Wheel(4),
            Family::Wheel(5),
            Family::Cycle(5),
            Family::Cycle(6),
            Family::ChortlingC5,
            Family::ChordedC5,
            Family::Path(4),
        ] {
            let p = MatchingPolytope::new(&fam(f.clone())).unwrap();
            let direct = ehrhart_values(
                &p,
                &EhrhartOptions {
                    method: CountingMethod::Direct,
                    budget: Budget::unlimited(),
                },
            )
            .unwrap();
            let recip = ehrhart_values(&p, &EhrhartOptions::default()).unwrap();
            assert_eq!(direct, recip, "{f}");
        }
    }

    #[test]
    fn series_reproduces_counts() {
        for f in [Family::Wheel(4), Family::Cycle(5), Family::ChordedC5] {
            let p = MatchingPolytope::new(&fam(f.clone())).unwrap();
            let h = hstar_with(&p, &EhrhartOptions::default()).unwrap();
            for t in 0..=(p.dimension() as u32 + 3) {
                assert_eq!(
                    h.lattice_count(t as u64),
                    BigUint::from(p.count(t, &Budget::unlimited()).unwrap()),
                    "{f} t={t}"
                );
            }
        }
    }

    #[test]
    fn volume_is_top_difference() {
        let p = MatchingPolytope::new(&fam(Family::Wheel(5))).unwrap();
        let counts = ehrhart_values(&p, &EhrhartOptions::default()).unwrap();
        let h = HStarVector::from_counts(&counts, p.dimension()).unwrap();
        let top = forward_differences(counts.iter().map(|c| BigInt::from(c.clone())).collect());
        assert_eq!(BigInt::from(h.normalized_volume()), top[p.dimension()]);
    }

    #[test]
    fn negative_coefficient_aborts() {
        let bogus: Vec<BigUint> = [1u32, 1, 1].iter().map(|&v| BigUint::from(v)).collect();
        assert!(matches!(HStarVector::from_counts(&bogus, 2), Err(Error::Internal(_))));
    }

    #[test]
    fn shape_predicates() {
        assert!(is_unimodal(&[1, 3, 3, 1]));
        assert!(!is_unimodal(&[1, 2, 1, 2]));
        assert!(is_unimodal(&[1]));
        assert!(is_palindromic(&[1, 3, 3, 1]));
        assert!(!is_palindromic(&[1, 10, 29, 26, 5]));
        assert!(is_palindromic(&[1]));
    }

    #[test]
    fn display_matches_table_format() {
        let h = hstar(&fam(Family::Wheel(4))).unwrap();
        assert_eq!(h.to_string(), "[1, 3, 3, 1]");
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"coefficients":[1,3,3,1],"dimension":6}"#
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let p = MatchingPolytope::new(&fam(Family::Wheel(6))).unwrap();
        let options = EhrhartOptions {
            method: CountingMethod::Direct,
            budget: Budget::nodes(1000),
        };
        assert!(matches!(hstar_with(&p, &options), Err(Error::Resource(_))));
    }
}
