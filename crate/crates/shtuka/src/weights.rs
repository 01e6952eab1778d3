//! Weight multiplicities of the irreducible representation of highest
//! weight `mu` of the Langlands dual group.
//!
//! A cocharacter of `G` is a weight of the dual group, whose roots are the
//! coroots of `G`; for `GL(n)` the datum is self-dual and these are the
//! familiar multiplicities of `GL(n)`-irreducibles.  The main computation
//! is Freudenthal's recursion over dominant weights; Kostant's alternating
//! sum with an exhaustively enumerated partition function serves as an
//! independent oracle, and the Weyl dimension formula as a checksum.

use crate::error::Error;
use crate::linalg::dot_i64;
use crate::rootdata::{Cochar, RootDatum};
use crate::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Multiplicities of the dominant weights of the highest-weight-`mu`
/// irreducible, with Weyl orbit sizes for dimension bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiplicityTable {
    pub mu: Cochar,
    pub entries: BTreeMap<Cochar, WeightEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub multiplicity: u64,
    pub orbit_size: u64,
}

impl WeightMultiplicityTable {
    /// Multiplicity of an arbitrary (not necessarily dominant) weight.
    pub fn multiplicity(&self, datum: &RootDatum, lambda: &Cochar) -> u64 {
        let dom = datum.dominant_sort(lambda);
        self.entries.get(&dom).map(|e| e.multiplicity).unwrap_or(0)
    }

    /// Sum of orbit-size-weighted multiplicities: the dimension.
    pub fn dimension(&self) -> BigInt {
        self.entries
            .values()
            .fold(BigInt::zero(), |acc, e| {
                acc + BigInt::from(e.multiplicity) * BigInt::from(e.orbit_size)
            })
    }
}

/// The dominant weights `lambda <= mu` (same pi1 image), i.e. the dominant
/// weights of the irreducible with highest weight `mu`.
fn dominant_weights_below(datum: &RootDatum, mu: &Cochar) -> Result<Vec<Cochar>> {
    let simple_coroots: Vec<Vec<i64>> = datum
        .simple_root_indices()
        .iter()
        .map(|&i| datum.positive_coroots()[i].clone())
        .collect();
    let k = simple_coroots.len();
    // lowest weight w0(mu): negate and dominant-sort the negation
    let lowest = {
        let neg = Cochar(mu.0.iter().map(|x| -x).collect());
        let dom = datum.dominant_sort(&neg);
        Cochar(dom.0.iter().map(|x| -x).collect())
    };
    // bounds: mu - lambda = sum c_i alpha_i_vee with 0 <= c_i <= C_i where
    // C_i are the coefficients of mu - w0(mu)
    let span: Vec<i64> = mu.0.iter().zip(&lowest.0).map(|(a, b)| a - b).collect();
    let bounds = expand_over_simple_coroots(&span, &simple_coroots).ok_or_else(|| {
        Error::Invalid("mu - w0(mu) is not in the coroot lattice".into())
    })?;
    if bounds.iter().any(|&c| c < 0) {
        return Err(Error::Invalid("negative expansion of mu - w0(mu)".into()));
    }
    let mut out = Vec::new();
    let mut counters = vec![0i64; k];
    'outer: loop {
        let mut lambda: Vec<i64> = mu.0.clone();
        for (c, coroot) in counters.iter().zip(&simple_coroots) {
            for (x, &y) in lambda.iter_mut().zip(coroot) {
                *x -= c * y;
            }
        }
        let lam = Cochar(lambda);
        if datum.is_dominant_integral(&lam)? {
            out.push(lam);
        }
        let mut idx = 0;
        loop {
            if idx == k {
                break 'outer;
            }
            counters[idx] += 1;
            if counters[idx] <= bounds[idx] {
                break;
            }
            counters[idx] = 0;
            idx += 1;
        }
    }
    Ok(out)
}

/// Integer expansion of `v` over the simple coroots, if one exists.
fn expand_over_simple_coroots(v: &[i64], simple_coroots: &[Vec<i64>]) -> Option<Vec<i64>> {
    use num_rational::BigRational;
    let cols: Vec<Vec<BigRational>> = simple_coroots
        .iter()
        .map(|c| c.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
        .collect();
    let target: Vec<BigRational> = v
        .iter()
        .map(|&x| BigRational::from(BigInt::from(x)))
        .collect();
    let coeffs = crate::linalg::solve_columns(&cols, &target)?;
    coeffs
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                c.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

/// Height of `mu - lambda`: the sum of its coefficients over the simple
/// coroots.
fn height_above(datum: &RootDatum, mu: &Cochar, lambda: &Cochar) -> Option<i64> {
    let simple_coroots: Vec<Vec<i64>> = datum
        .simple_root_indices()
        .iter()
        .map(|&i| datum.positive_coroots()[i].clone())
        .collect();
    let diff: Vec<i64> = mu.0.iter().zip(&lambda.0).map(|(a, b)| a - b).collect();
    expand_over_simple_coroots(&diff, &simple_coroots).map(|c| c.iter().sum())
}

/// Complete table of dominant weight multiplicities by Freudenthal's
/// recursion, processed in decreasing height with exact integer arithmetic
/// (every division is checked to be exact).
pub fn freudenthal(datum: &RootDatum, mu: &Cochar) -> Result<WeightMultiplicityTable> {
    if mu.rank() != datum.rank {
        return Err(Error::RankMismatch {
            expected: datum.rank,
            got: mu.rank(),
        });
    }
    if !datum.is_dominant_integral(mu)? {
        return Err(Error::NonDominant(mu.to_string()));
    }
    let two_rho_dual = datum.two_rho_dual();
    let dominants = dominant_weights_below(datum, mu)?;
    // order by increasing height of mu - lambda, ties lexicographic
    let mut order: Vec<(i64, Cochar)> = dominants
        .into_iter()
        .map(|lam| {
            let h = height_above(datum, mu, &lam).expect("weights lie below mu");
            (h, lam)
        })
        .collect();
    order.sort();

    let mut mults: BTreeMap<Cochar, u64> = BTreeMap::new();
    for (h, lam) in &order {
        if *h == 0 {
            mults.insert(lam.clone(), 1);
            continue;
        }
        // denominator |mu+rho|^2 - |lambda+rho|^2 = (mu-lambda, mu+lambda+2rho)
        let diff: Vec<i64> = mu.0.iter().zip(&lam.0).map(|(a, b)| a - b).collect();
        let sum: Vec<i64> = mu
            .0
            .iter()
            .zip(&lam.0)
            .zip(&two_rho_dual)
            .map(|((a, b), r)| a + b + r)
            .collect();
        let denom = dot_i64(&diff, &sum);
        if denom <= 0 {
            return Err(Error::NonIntegral(format!(
                "Freudenthal denominator {denom} for lambda = {lam}"
            )));
        }
        // numerator 2 sum_{alpha_vee > 0} sum_{k >= 1} m(lambda + k alpha_vee)
        //                                  * (lambda + k alpha_vee, alpha_vee)
        let mut numer: i64 = 0;
        for coroot in datum.positive_coroots() {
            let mut k = 1i64;
            loop {
                let shifted: Vec<i64> = lam
                    .0
                    .iter()
                    .zip(coroot)
                    .map(|(x, &c)| x + k * c)
                    .collect();
                let shifted = Cochar(shifted);
                let dom = datum.dominant_sort(&shifted);
                let Some(&m) = mults.get(&dom) else {
                    break;
                };
                if m == 0 {
                    break;
                }
                numer += 2 * (m as i64) * dot_i64(&shifted.0, coroot);
                k += 1;
            }
        }
        if numer % denom != 0 {
            return Err(Error::NonIntegral(format!(
                "Freudenthal division {numer}/{denom} at lambda = {lam}"
            )));
        }
        let m = numer / denom;
        if m > 0 {
            mults.insert(lam.clone(), m as u64);
        }
    }

    let entries = mults
        .into_iter()
        .map(|(lam, m)| {
            let orbit = datum.weyl_orbit(&lam).len() as u64;
            (
                lam,
                WeightEntry {
                    multiplicity: m,
                    orbit_size: orbit,
                },
            )
        })
        .collect();
    Ok(WeightMultiplicityTable {
        mu: mu.clone(),
        entries,
    })
}

/// Guard limits for the exhaustive Kostant oracle.
const KOSTANT_MAX_RANK: usize = 4;
const KOSTANT_MAX_HEIGHT: i64 = 12;

/// Weight multiplicity by Kostant's formula,
/// `sum_w (-1)^{l(w)} P(w(mu + rho) - (lambda + rho))`,
/// with the partition function `P` computed by exhaustive enumeration over
/// positive coroots.  Deliberately independent of [`freudenthal`].
pub fn kostant_multiplicity(datum: &RootDatum, mu: &Cochar, lambda: &Cochar) -> Result<u64> {
    if datum.rank > KOSTANT_MAX_RANK {
        return Err(Error::GuardExceeded(format!(
            "Kostant oracle limited to rank {KOSTANT_MAX_RANK}"
        )));
    }
    if !datum.is_dominant_integral(mu)? {
        return Err(Error::NonDominant(mu.to_string()));
    }
    match height_above(datum, mu, lambda) {
        Some(h) if h.abs() > KOSTANT_MAX_HEIGHT => {
            return Err(Error::GuardExceeded(format!(
                "height {h} exceeds Kostant guard {KOSTANT_MAX_HEIGHT}"
            )));
        }
        Some(_) => {}
        None => return Ok(0),
    }
    let two_rho_dual = datum.two_rho_dual();
    // functional that is >= 2 on every positive coroot, for termination
    let two_rho = datum.two_rho();
    // work with doubled weights so rho stays integral
    let doubled = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| 2 * x).collect() };
    let mu2_rho: Vec<i64> = doubled(&mu.0)
        .iter()
        .zip(&two_rho_dual)
        .map(|(a, b)| a + b)
        .collect();
    let lam2_rho: Vec<i64> = doubled(&lambda.0)
        .iter()
        .zip(&two_rho_dual)
        .map(|(a, b)| a + b)
        .collect();
    let positive_coroots = datum.positive_coroots();
    let mut total: i64 = 0;
    for w in datum.weyl_elements()? {
        let image = w.apply(&mu2_rho);
        let target: Vec<i64> = image
            .iter()
            .zip(&lam2_rho)
            .map(|(a, b)| (a - b) / 2)
            .collect();
        // the difference of doubled vectors is always even coordinate-wise
        // only when w(mu+rho) - (lambda+rho) is integral, which it is; guard
        // anyway
        let rem: Vec<i64> = image
            .iter()
            .zip(&lam2_rho)
            .map(|(a, b)| (a - b).rem_euclid(2))
            .collect();
        if rem.iter().any(|&r| r != 0) {
            continue;
        }
        let count = kostant_partition_count(&target, &two_rho, positive_coroots);
        total += w.sign() * (count as i64);
    }
    if total < 0 {
        return Err(Error::NonIntegral(format!(
            "negative Kostant multiplicity {total}"
        )));
    }
    Ok(total as u64)
}

/// Number of ways to write `v` as a nonnegative integer combination of the
/// positive coroots, by depth-first enumeration.
///
/// Every positive coroot pairs to at least 2 against `2 rho`, so that
/// pairing is a strictly decreasing height and bounds the recursion.
fn kostant_partition_count(v: &[i64], two_rho: &[i64], positive_coroots: &[Vec<i64>]) -> u64 {
    fn count_from(v: Vec<i64>, two_rho: &[i64], roots: &[Vec<i64>]) -> u64 {
        if dot_i64(two_rho, &v) < 0 {
            return 0;
        }
        if v.iter().all(|&x| x == 0) {
            return 1;
        }
        let Some((first, rest)) = roots.split_first() else {
            return 0;
        };
        let mut total = 0u64;
        let mut current = v;
        loop {
            total += count_from(current.clone(), two_rho, rest);
            for (x, &c) in current.iter_mut().zip(first) {
                *x -= c;
            }
            if dot_i64(two_rho, &current) < 0 {
                break;
            }
        }
        total
    }
    count_from(v.to_vec(), two_rho, positive_coroots)
}

/// Dimension of the highest-weight-`mu` irreducible of the dual group via
/// the Weyl dimension formula, as an exact integer.
pub fn weyl_dimension(datum: &RootDatum, mu: &Cochar) -> Result<BigInt> {
    if !datum.is_dominant_integral(mu)? {
        return Err(Error::NonDominant(mu.to_string()));
    }
    let two_rho_dual = datum.two_rho_dual();
    // <mu + rho_dual, -> against every positive root of G, which is a
    // coroot of the dual group; doubled weights keep everything integral
    let doubled_weight: Vec<i64> = mu
        .0
        .iter()
        .zip(&two_rho_dual)
        .map(|(m, r)| 2 * m + r)
        .collect();
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for root in datum.positive_roots() {
        let a = dot_i64(&doubled_weight, root);
        let b = dot_i64(&two_rho_dual, root);
        if b == 0 {
            return Err(Error::NonIntegral("rho pairs to zero with a root".into()));
        }
        numer *= BigInt::from(a);
        denom *= BigInt::from(b);
    }
    let (q, r) = numer.div_rem(&denom);
    if !r.is_zero() || q.is_negative() {
        return Err(Error::NonIntegral(format!(
            "Weyl dimension formula gave {numer}/{denom}"
        )));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(n: usize) -> RootDatum {
        RootDatum::gl(n).unwrap()
    }

    #[test]
    fn minuscule_gl2() {
        let datum = gl(2);
        let table = freudenthal(&datum, &Cochar(vec![1, 0])).unwrap();
        assert_eq!(table.entries.len(), 1);
        let entry = &table.entries[&Cochar(vec![1, 0])];
        assert_eq!(entry.multiplicity, 1);
        assert_eq!(entry.orbit_size, 2);
        // both (1,0) and (0,1) are weights of multiplicity 1
        assert_eq!(table.multiplicity(&datum, &Cochar(vec![0, 1])), 1);
        assert_eq!(table.multiplicity(&datum, &Cochar(vec![1, 0])), 1);
        assert_eq!(table.multiplicity(&datum, &Cochar(vec![2, -1])), 0);
    }

    #[test]
    fn adjoint_gl3_zero_weight() {
        let datum = gl(3);
        let mu = Cochar(vec![1, 0, -1]);
        let table = freudenthal(&datum, &mu).unwrap();
        assert_eq!(table.multiplicity(&datum, &Cochar(vec![0, 0, 0])), 2);
        assert_eq!(table.multiplicity(&datum, &mu), 1);
        assert_eq!(table.dimension(), BigInt::from(8));
    }

    #[test]
    fn symmetric_square_gl2() {
        let datum = gl(2);
        let mu = Cochar(vec![2, 0]);
        let table = freudenthal(&datum, &mu).unwrap();
        assert_eq!(table.multiplicity(&datum, &Cochar(vec![1, 1])), 1);
        assert_eq!(table.dimension(), BigInt::from(3));
        // hand enumeration oracle: weights of Sym^2(std) are the degree-2
        // monomials e_i + e_j with i <= j
        let mut weights = Vec::new();
        for i in 0..2 {
            for j in i..2 {
                let mut w = vec![0i64; 2];
                w[i] += 1;
                w[j] += 1;
                weights.push(Cochar(w));
            }
        }
        for w in &weights {
            assert_eq!(table.multiplicity(&datum, w), 1, "weight {w}");
        }
        assert_eq!(weights.len(), 3);
    }

    #[test]
    fn kostant_examples() {
        let datum = gl(3);
        let mu = Cochar(vec![1, 0, -1]);
        // highest weight always has multiplicity 1
        assert_eq!(kostant_multiplicity(&datum, &mu, &mu).unwrap(), 1);
        // zero weight of the adjoint
        assert_eq!(
            kostant_multiplicity(&datum, &mu, &Cochar(vec![0, 0, 0])).unwrap(),
            2
        );
        let gl2 = gl(2);
        // Weyl-orbit image of the highest weight
        assert_eq!(
            kostant_multiplicity(&gl2, &Cochar(vec![2, 0]), &Cochar(vec![0, 2])).unwrap(),
            1
        );
    }

    #[test]
    fn kostant_guards() {
        let gl2 = gl(2);
        assert!(matches!(
            kostant_multiplicity(&gl2, &Cochar(vec![20, 0]), &Cochar(vec![0, 20])),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(
            weyl_dimension(&gl(2), &Cochar(vec![1, 0])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            weyl_dimension(&gl(3), &Cochar(vec![1, 0, -1])).unwrap(),
            BigInt::from(8)
        );
        assert_eq!(
            weyl_dimension(&gl(2), &Cochar(vec![2, 0])).unwrap(),
            BigInt::from(3)
        );
    }

    #[test]
    fn non_dominant_rejected() {
        assert!(matches!(
            freudenthal(&gl(2), &Cochar(vec![0, 1])),
            Err(Error::NonDominant(_))
        ));
    }

    #[test]
    fn freudenthal_matches_kostant_small() {
        for (n, mu) in [
            (2usize, vec![2, 0]),
            (2, vec![3, 1]),
            (3, vec![1, 0, -1]),
            (3, vec![2, 1, 0]),
            (4, vec![1, 1, 0, 0]),
        ] {
            let datum = gl(n);
            let mu = Cochar(mu);
            let table = freudenthal(&datum, &mu).unwrap();
            for (lam, entry) in &table.entries {
                let k = kostant_multiplicity(&datum, &mu, lam).unwrap();
                assert_eq!(entry.multiplicity, k, "GL{n} mu={mu} lambda={lam}");
            }
            assert_eq!(table.dimension(), weyl_dimension(&datum, &mu).unwrap());
        }
    }

    #[test]
    fn weyl_invariance_of_multiplicity() {
        let datum = gl(3);
        let mu = Cochar(vec![2, 0, -1]);
        let table = freudenthal(&datum, &mu).unwrap();
        for (lam, entry) in &table.entries {
            for w in datum.weyl_orbit(lam) {
                assert_eq!(table.multiplicity(&datum, &w), entry.multiplicity);
            }
        }
    }
}
