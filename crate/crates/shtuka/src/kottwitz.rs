//! The Kottwitz set of a split group: points are pairs (Newton point,
//! kappa invariant), enumeration of `B(G, mu)`, basic elements, the
//! specialization order among strata, and slope-block descriptions of the
//! automorphism groups `G_b(F)`.
//!
//! For `GL(n)` the Newton point is the slope vector of a Newton polygon
//! with integer breakpoints: each slope `a/q` in lowest terms occurs with
//! multiplicity divisible by `q`.  Enumeration of `B(G, mu)` walks polygons
//! from `(0,0)` to `(n, deg mu)` lying on or below the polygon of `mu`.

use crate::error::Error;
use crate::rootdata::{Cochar, GroupKind, RationalCochar, RootDatum};
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// An element of `B(G)` for split `G`: a dominant rational Newton point
/// and the kappa invariant in `pi1(G)` (for `GL(n)`, the total degree).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KottwitzPoint {
    pub nu: RationalCochar,
    pub kappa: Vec<i64>,
}

impl KottwitzPoint {
    /// Build a point from its Newton point, validating dominance, the
    /// integrality of breakpoints (GL only), and kappa compatibility.
    pub fn from_newton(datum: &RootDatum, nu: RationalCochar) -> Result<Self> {
        if nu.rank() != datum.rank {
            return Err(Error::RankMismatch {
                expected: datum.rank,
                got: nu.rank(),
            });
        }
        if !datum.is_dominant(&nu)? {
            return Err(Error::NonDominant(nu.to_string()));
        }
        let kappa = match datum.kind {
            GroupKind::GeneralLinear => {
                if !gl_integer_breakpoints(&nu) {
                    return Err(Error::Invalid(format!(
                        "{nu} violates integrality: slope a/q must occur with multiplicity divisible by q"
                    )));
                }
                let total = nu.sum();
                if !total.is_integer() {
                    return Err(Error::Invalid(format!("{nu} has non-integral degree")));
                }
                vec![total.to_integer().to_i64().ok_or_else(|| {
                    Error::GuardExceeded("degree overflows i64".into())
                })?]
            }
            _ => {
                // kappa is only determined up to torsion by a rational Newton
                // point; callers for non-GL groups attach it explicitly via
                // with_kappa
                Vec::new()
            }
        };
        Ok(KottwitzPoint { nu, kappa })
    }

    pub fn with_kappa(mut self, kappa: Vec<i64>) -> Self {
        self.kappa = kappa;
        self
    }

    /// Total degree for `GL(n)` points.
    pub fn degree(&self) -> i64 {
        self.kappa.first().copied().unwrap_or(0)
    }

    /// Whether the Newton point is central (pairs to zero with all roots).
    pub fn is_basic(&self, datum: &RootDatum) -> Result<bool> {
        for root in datum.positive_roots() {
            if !datum.pairing_rational(root, &self.nu)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Slope blocks of the Newton point in descending slope order.
    pub fn levi(&self) -> LeviDescription {
        let mut blocks: Vec<SlopeBlock> = Vec::new();
        for s in &self.nu.0 {
            match blocks.last_mut() {
                Some(b) if &b.slope == s => b.multiplicity += 1,
                _ => blocks.push(SlopeBlock {
                    slope: s.clone(),
                    multiplicity: 1,
                }),
            }
        }
        LeviDescription { blocks }
    }
}

impl std::fmt::Display for KottwitzPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "nu={} kappa={:?}", self.nu, self.kappa)
    }
}

/// A maximal run of equal slopes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeBlock {
    #[serde(with = "crate::ratjson")]
    pub slope: BigRational,
    pub multiplicity: usize,
}

impl SlopeBlock {
    /// A block is split exactly when its slope is an integer; otherwise the
    /// block contributes units of a division algebra.
    pub fn is_split(&self) -> bool {
        self.slope.is_integer()
    }

    /// Denominator q of the slope in lowest terms: the degree of the
    /// division algebra carried by the block.
    pub fn denominator(&self) -> usize {
        self.slope.denom().to_usize().unwrap_or(usize::MAX)
    }

    fn describe(&self) -> String {
        let q = self.denominator();
        if q == 1 {
            format!("GL{}(F)", self.multiplicity)
        } else {
            format!("GL{}(D[{}])", self.multiplicity / q, self.slope)
        }
    }
}

/// Multiset of slope blocks, descending slope; `G_b(F)` is the product of
/// the groups of units the blocks describe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviDescription {
    pub blocks: Vec<SlopeBlock>,
}

impl LeviDescription {
    pub fn describe(&self) -> String {
        self.blocks
            .iter()
            .map(SlopeBlock::describe)
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

impl std::fmt::Display for LeviDescription {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn gl_integer_breakpoints(nu: &RationalCochar) -> bool {
    let mut i = 0;
    let slopes = &nu.0;
    while i < slopes.len() {
        let mut j = i;
        while j < slopes.len() && slopes[j] == slopes[i] {
            j += 1;
        }
        let mult = j - i;
        let q = slopes[i].denom();
        let q = match q.to_usize() {
            Some(q) => q,
            None => return false,
        };
        if mult % q != 0 {
            return false;
        }
        i = j;
    }
    true
}

/// All of `B(G, mu)`: points `b` with `kappa(b) = kappa(mu)` and
/// `nu_b <= mu` in the dominance order, satisfying the slope integrality
/// constraint.  Sorted ascending in the dominance-compatible lexicographic
/// order, so the basic element comes first and `mu` itself last.
pub fn enumerate_bgmu(datum: &RootDatum, mu: &Cochar) -> Result<Vec<KottwitzPoint>> {
    if mu.rank() != datum.rank {
        return Err(Error::RankMismatch {
            expected: datum.rank,
            got: mu.rank(),
        });
    }
    let mu_rat = mu.to_rational();
    if !datum.is_dominant(&mu_rat)? {
        return Err(Error::NonDominant(mu.to_string()));
    }
    match datum.kind {
        GroupKind::GeneralLinear => {
            let mut points = Vec::new();
            for nu in gl_newton_points_below(&mu_rat, datum, None)? {
                points.push(KottwitzPoint::from_newton(datum, nu)?);
            }
            points.sort();
            Ok(points)
        }
        _ => enumerate_bgmu_candidates(datum, mu, &|_| true),
    }
}

/// Newton slope vectors with integer breakpoints, dominant, summing to
/// `deg(bound)`, lying on or below `bound` in dominance.  `bound` may be
/// rational (used internally for closure computations).
fn gl_newton_points_below(
    bound: &RationalCochar,
    datum: &RootDatum,
    denominator_cap: Option<i64>,
) -> Result<Vec<RationalCochar>> {
    let n = bound.rank();
    let total = bound.sum();
    let lo = bound.0.last().cloned().unwrap_or_else(BigRational::zero);
    let hi = bound.0.first().cloned().unwrap_or_else(BigRational::zero);
    let mut found = Vec::new();
    let mut prefix: Vec<BigRational> = Vec::new();
    walk_blocks(
        n,
        &total,
        &lo,
        &hi,
        None,
        &mut prefix,
        &mut found,
        denominator_cap,
    );
    let mut out = Vec::new();
    for slopes in found {
        let nu = RationalCochar(slopes);
        if datum.dominance_leq(&nu, bound)? {
            out.push(nu);
        }
    }
    Ok(out)
}

/// Recursively choose maximal blocks (multiplicity m, integer rise d) with
/// strictly decreasing slopes d/m.
#[allow(clippy::too_many_arguments)]
fn walk_blocks(
    remaining: usize,
    remaining_sum: &BigRational,
    lo: &BigRational,
    hi: &BigRational,
    prev_slope: Option<&BigRational>,
    prefix: &mut Vec<BigRational>,
    found: &mut Vec<Vec<BigRational>>,
    denominator_cap: Option<i64>,
) {
    if remaining == 0 {
        if remaining_sum.is_zero() {
            found.push(prefix.clone());
        }
        return;
    }
    for m in 1..=remaining {
        let m_big = BigRational::from(BigInt::from(m));
        // integer rise d with lo <= d/m <= min(hi, prev_slope - epsilon)
        let d_min = (lo * &m_big).ceil().to_integer();
        let mut d_max = (hi * &m_big).floor().to_integer();
        if let Some(prev) = prev_slope {
            let strict = prev * &m_big;
            let cap = if strict.is_integer() {
                strict.to_integer() - BigInt::one()
            } else {
                strict.floor().to_integer()
            };
            if cap < d_max {
                d_max = cap;
            }
        }
        // the remaining sum after this block must be achievable: at most
        // (remaining - m) * slope below, at least (remaining - m) * lo
        if d_min > d_max {
            continue;
        }
        let mut d = d_min.clone();
        while d <= d_max {
            let slope = BigRational::new(d.clone(), BigInt::from(m));
            if let Some(cap) = denominator_cap {
                if slope.denom() > &BigInt::from(cap) {
                    d += BigInt::one();
                    continue;
                }
            }
            let rest = remaining_sum - &slope * &m_big;
            // feasibility: future slopes lie in [lo, slope), so the rest of
            // the sum must lie in [(remaining-m)*lo, (remaining-m)*slope)
            let k = BigRational::from(BigInt::from(remaining - m));
            let feasible = if remaining == m {
                rest.is_zero()
            } else {
                rest >= &k * lo && rest < &k * &slope
            };
            if feasible {
                for _ in 0..m {
                    prefix.push(slope.clone());
                }
                walk_blocks(
                    remaining - m,
                    &rest,
                    lo,
                    hi,
                    Some(&slope),
                    prefix,
                    found,
                    denominator_cap,
                );
                for _ in 0..m {
                    prefix.pop();
                }
            }
            d += BigInt::one();
        }
    }
}

/// Candidate enumeration for non-GL split groups: dominant rational
/// cocharacters `mu - sum c_i alpha_i_vee` with denominators dividing the
/// pi1-torsion order times the Coxeter number.  This is a conservative
/// over-approximation validated only by kappa compatibility; `post_filter`
/// lets callers refine it.
pub fn enumerate_bgmu_candidates(
    datum: &RootDatum,
    mu: &Cochar,
    post_filter: &dyn Fn(&KottwitzPoint) -> bool,
) -> Result<Vec<KottwitzPoint>> {
    let mu_rat = mu.to_rational();
    if !datum.is_dominant(&mu_rat)? {
        return Err(Error::NonDominant(mu.to_string()));
    }
    let torsion_order: i64 = datum.pi1.torsion.iter().product::<i64>().max(1);
    let coxeter = (2 * datum.positive_roots().len() / datum.rank.max(1)) as i64;
    let denom = torsion_order * coxeter.max(1);
    let simple_coroots: Vec<Vec<i64>> = datum
        .simple_root_indices()
        .iter()
        .map(|&i| datum.positive_coroots()[i].clone())
        .collect();
    // bound each coefficient: c_i enters nu = mu - sum c_i alpha_i_vee and
    // dominance of nu against mu forces c_i in [0, C] with C bounded by the
    // dual-Coxeter-weighted height of mu; use a generous cap and a guard.
    let height: i64 = mu.0.iter().map(|x| x.abs()).sum::<i64>().max(1);
    let cap = denom * height * 2;
    let k = simple_coroots.len();
    let mut total: u64 = 1;
    for _ in 0..k {
        total = total.saturating_mul((cap + 1) as u64);
        if total > 2_000_000 {
            return Err(Error::GuardExceeded(format!(
                "candidate grid for {} too large; supply a tighter post filter",
                datum.name
            )));
        }
    }
    let kappa_mu = datum.pi1.kappa(mu);
    let mut out = Vec::new();
    let mut counters = vec![0i64; k];
    loop {
        // nu = mu - sum (counters_i / denom) coroot_i
        let mut nu: Vec<BigRational> = mu
            .0
            .iter()
            .map(|&x| BigRational::from(BigInt::from(x)))
            .collect();
        for (c, coroot) in counters.iter().zip(&simple_coroots) {
            let coeff = BigRational::new(BigInt::from(*c), BigInt::from(denom));
            for (x, &y) in nu.iter_mut().zip(coroot) {
                *x = &*x - &coeff * BigRational::from(BigInt::from(y));
            }
        }
        let nu = RationalCochar(nu);
        if datum.is_dominant(&nu)? {
            let point = KottwitzPoint {
                nu,
                kappa: kappa_mu.clone(),
            };
            if post_filter(&point) {
                out.push(point);
            }
        }
        // odometer
        let mut idx = 0;
        loop {
            if idx == k {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            counters[idx] += 1;
            if counters[idx] <= cap {
                break;
            }
            counters[idx] = 0;
            idx += 1;
        }
    }
}

/// The basic element of the kappa-fiber: the unique point with central
/// Newton point.
pub fn basic_element(datum: &RootDatum, kappa: &[i64]) -> Result<KottwitzPoint> {
    match datum.kind {
        GroupKind::GeneralLinear => {
            let deg = kappa
                .first()
                .copied()
                .ok_or_else(|| Error::Invalid("GL kappa must be a single degree".into()))?;
            let n = datum.rank;
            let slope = BigRational::new(BigInt::from(deg), BigInt::from(n));
            Ok(KottwitzPoint {
                nu: RationalCochar(vec![slope; n]),
                kappa: kappa.to_vec(),
            })
        }
        _ => {
            // central cocharacters pair to zero with every root; with
            // trivial or torsion pi1 the Q-image of kappa is 0, so the basic
            // Newton point is 0
            if datum.pi1.free_rank == 0 {
                Ok(KottwitzPoint {
                    nu: RationalCochar(vec![BigRational::zero(); datum.rank]),
                    kappa: kappa.to_vec(),
                })
            } else {
                Err(Error::UnsupportedGroup(format!(
                    "basic element for {} with free pi1 is not modeled",
                    datum.name
                )))
            }
        }
    }
}

/// Direction convention for the closure order among strata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpecializationDirection {
    /// `b2` is a specialization of `b` iff `nu_{b2} >= nu_b` at equal
    /// kappa: the closure of the `b`-stratum consists of the less
    /// semistable strata (the semistable locus is open).
    #[default]
    ClosureContains,
    /// The reversed reading, queryable for comparison purposes.
    Reversed,
}

/// Elements of `within` that are specializations of `b` (under the chosen
/// direction), optionally excluding `b` itself.
pub fn specializations(
    datum: &RootDatum,
    b: &KottwitzPoint,
    within: &[KottwitzPoint],
    proper: bool,
    direction: SpecializationDirection,
) -> Result<Vec<KottwitzPoint>> {
    let mut out = Vec::new();
    for other in within {
        if other.kappa != b.kappa {
            return Err(Error::MixedKappa);
        }
        if proper && other.nu == b.nu {
            continue;
        }
        let related = match direction {
            SpecializationDirection::ClosureContains => datum.dominance_leq(&b.nu, &other.nu)?,
            SpecializationDirection::Reversed => datum.dominance_leq(&other.nu, &b.nu)?,
        };
        if related {
            out.push(other.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// All points of `B(GL_n)` with the same degree lying strictly below `b`
/// in the specialization order (the strata whose closures contain the
/// `b`-stratum).
pub fn strata_below(datum: &RootDatum, b: &KottwitzPoint) -> Result<Vec<KottwitzPoint>> {
    if datum.kind != GroupKind::GeneralLinear {
        return Err(Error::UnsupportedGroup(
            "closure enumeration is GL-specific".into(),
        ));
    }
    let mut out = Vec::new();
    for nu in gl_newton_points_below(&b.nu, datum, None)? {
        if nu != b.nu {
            out.push(KottwitzPoint::from_newton(datum, nu)?);
        }
    }
    out.sort();
    Ok(out)
}

/// DOT rendering of the Hasse diagram of the specialization order.
pub fn hasse_dot(datum: &RootDatum, points: &[KottwitzPoint]) -> Result<String> {
    let n = points.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                leq[i][j] = datum.dominance_leq(&points[i].nu, &points[j].nu)?;
            }
        }
    }
    let mut s = String::from("digraph bgmu {\n  rankdir=BT;\n");
    for (i, p) in points.iter().enumerate() {
        s.push_str(&format!(
            "  n{} [label=\"{} : {}\"];\n",
            i,
            p.nu,
            p.levi().describe()
        ));
    }
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] {
                // covering relation: no k strictly between
                let covered = (0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]);
                if !covered {
                    s.push_str(&format!("  n{i} -> n{j};\n"));
                }
            }
        }
    }
    s.push_str("}\n");
    Ok(s)
}

/// Brute-force oracle used by the test suites: enumerate every descending
/// rational sequence with denominators at most `n`, integer breakpoints,
/// the right degree, and `nu <= mu`.  Independent of the polygon walk; the
/// search is cut only by exact consequences of the defining conditions
/// (a violated partial-sum bound or an unreachable total can never be
/// repaired by later, smaller entries).
pub fn brute_force_bgmu(datum: &RootDatum, mu: &Cochar) -> Result<Vec<KottwitzPoint>> {
    let n = datum.rank;
    let mu_rat = mu.to_rational();
    let lo = mu.0.iter().min().copied().unwrap_or(0);
    let hi = mu.0.iter().max().copied().unwrap_or(0);
    // all rationals in [lo, hi] with denominator <= n, descending
    let mut values: Vec<BigRational> = Vec::new();
    for den in 1..=(n as i64) {
        for num in (lo * den)..=(hi * den) {
            let r = BigRational::new(BigInt::from(num), BigInt::from(den));
            if !values.contains(&r) {
                values.push(r);
            }
        }
    }
    values.sort();
    values.reverse();
    let target = BigRational::from(BigInt::from(mu.sum()));
    let v_min = BigRational::from(BigInt::from(lo));
    let mu_partials: Vec<BigRational> = mu
        .0
        .iter()
        .scan(BigRational::zero(), |acc, &x| {
            *acc = &*acc + BigRational::from(BigInt::from(x));
            Some(acc.clone())
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<BigRational> = Vec::new();
    descend(
        &values,
        0,
        n,
        &BigRational::zero(),
        &target,
        &v_min,
        &mu_partials,
        &mut stack,
        &mut |seq: &[BigRational]| {
            let sum = seq.iter().fold(BigRational::zero(), |a, x| a + x);
            if sum != target {
                return Ok(());
            }
            let nu = RationalCochar(seq.to_vec());
            if !gl_integer_breakpoints(&nu) {
                return Ok(());
            }
            if datum.dominance_leq(&nu, &mu_rat)? {
                out.push(KottwitzPoint::from_newton(datum, nu)?);
            }
            Ok(())
        },
    )?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    values: &[BigRational],
    start: usize,
    remaining: usize,
    partial: &BigRational,
    target: &BigRational,
    v_min: &BigRational,
    mu_partials: &[BigRational],
    stack: &mut Vec<BigRational>,
    emit: &mut dyn FnMut(&[BigRational]) -> Result<()>,
) -> Result<()> {
    if remaining == 0 {
        return emit(stack);
    }
    let depth = stack.len();
    for i in start..values.len() {
        let v = &values[i];
        let new_partial = partial + v;
        // dominance requires every partial sum of nu to stay at or below
        // the corresponding partial sum of mu
        if new_partial > mu_partials[depth] {
            continue;
        }
        // the remaining entries lie in [v_min, v]
        let rem = BigRational::from(BigInt::from(remaining - 1));
        if &new_partial + &rem * v < *target || &new_partial + &rem * v_min > *target {
            continue;
        }
        stack.push(v.clone());
        descend(
            values,
            i,
            remaining - 1,
            &new_partial,
            target,
            v_min,
            mu_partials,
            stack,
            emit,
        )?;
        stack.pop();
    }
    Ok(())
}

/// Kappa invariant of a dominant integral cocharacter.
pub fn kappa_of_mu(datum: &RootDatum, mu: &Cochar) -> Vec<i64> {
    datum.pi1.kappa(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(n: usize) -> RootDatum {
        RootDatum::gl(n).unwrap()
    }

    fn rci(v: &[i64]) -> RationalCochar {
        RationalCochar(v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
    }

    fn rcq(v: &[(i64, i64)]) -> RationalCochar {
        RationalCochar(
            v.iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    #[test]
    fn gl2_minuscule_two_elements() {
        let datum = gl(2);
        let points = enumerate_bgmu(&datum, &Cochar(vec![1, 0])).unwrap();
        assert_eq!(points.len(), 2);
        assert_eq!(points[0].nu, rcq(&[(1, 2), (1, 2)]));
        assert_eq!(points[1].nu, rci(&[1, 0]));
        for p in &points {
            assert_eq!(p.kappa, vec![1]);
        }
    }

    #[test]
    fn mu_zero_degenerate() {
        for n in 1..=5 {
            let datum = gl(n);
            let points = enumerate_bgmu(&datum, &Cochar(vec![0; n])).unwrap();
            assert_eq!(points.len(), 1);
            assert_eq!(points[0].nu, rci(&vec![0; n]));
        }
    }

    #[test]
    fn gl4_minuscule_four_elements() {
        let datum = gl(4);
        let points = enumerate_bgmu(&datum, &Cochar(vec![1, 0, 0, 0])).unwrap();
        let expected = vec![
            rcq(&[(1, 4), (1, 4), (1, 4), (1, 4)]),
            rcq(&[(1, 3), (1, 3), (1, 3), (0, 1)]),
            rcq(&[(1, 2), (1, 2), (0, 1), (0, 1)]),
            rci(&[1, 0, 0, 0]),
        ];
        let got: Vec<RationalCochar> = points.into_iter().map(|p| p.nu).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn non_dominant_mu_rejected() {
        let datum = gl(2);
        assert!(matches!(
            enumerate_bgmu(&datum, &Cochar(vec![0, 1])),
            Err(Error::NonDominant(_))
        ));
    }

    #[test]
    fn basic_elements() {
        let datum = gl(2);
        assert_eq!(
            basic_element(&datum, &[1]).unwrap().nu,
            rcq(&[(1, 2), (1, 2)])
        );
        assert_eq!(basic_element(&datum, &[0]).unwrap().nu, rci(&[0, 0]));
        let gl3 = gl(3);
        assert_eq!(
            basic_element(&gl3, &[2]).unwrap().nu,
            rcq(&[(2, 3), (2, 3), (2, 3)])
        );
    }

    #[test]
    fn basic_is_minimum() {
        let datum = gl(4);
        let mu = Cochar(vec![1, 0, 0, 0]);
        let points = enumerate_bgmu(&datum, &mu).unwrap();
        let basic = basic_element(&datum, &[1]).unwrap();
        for p in &points {
            assert!(datum.dominance_leq(&basic.nu, &p.nu).unwrap());
        }
    }

    #[test]
    fn specialization_examples() {
        let datum = gl(2);
        let mu = Cochar(vec![1, 0]);
        let points = enumerate_bgmu(&datum, &mu).unwrap();
        let basic = basic_element(&datum, &[1]).unwrap();
        let specs = specializations(
            &datum,
            &basic,
            &points,
            true,
            SpecializationDirection::ClosureContains,
        )
        .unwrap();
        assert_eq!(specs.len(), 1);
        assert_eq!(specs[0].nu, rci(&[1, 0]));

        // maximal element has no proper specializations
        let max = KottwitzPoint::from_newton(&datum, rci(&[1, 0])).unwrap();
        let specs = specializations(
            &datum,
            &max,
            &points,
            true,
            SpecializationDirection::ClosureContains,
        )
        .unwrap();
        assert!(specs.is_empty());
    }

    #[test]
    fn specialization_gl4() {
        let datum = gl(4);
        let mu = Cochar(vec![1, 0, 0, 0]);
        let points = enumerate_bgmu(&datum, &mu).unwrap();
        let b = KottwitzPoint::from_newton(&datum, rcq(&[(1, 2), (1, 2), (0, 1), (0, 1)])).unwrap();
        let specs = specializations(
            &datum,
            &b,
            &points,
            true,
            SpecializationDirection::ClosureContains,
        )
        .unwrap();
        assert_eq!(specs.len(), 1);
        assert_eq!(specs[0].nu, rci(&[1, 0, 0, 0]));
    }

    #[test]
    fn mixed_kappa_rejected() {
        let datum = gl(2);
        let a = KottwitzPoint::from_newton(&datum, rci(&[1, 0])).unwrap();
        let b = KottwitzPoint::from_newton(&datum, rci(&[1, 1])).unwrap();
        assert!(matches!(
            specializations(
                &datum,
                &a,
                &[b],
                false,
                SpecializationDirection::ClosureContains
            ),
            Err(Error::MixedKappa)
        ));
    }

    #[test]
    fn levi_descriptions() {
        let datum = gl(2);
        let b = KottwitzPoint::from_newton(&datum, rci(&[1, 0])).unwrap();
        assert_eq!(b.levi().describe(), "GL1(F) x GL1(F)");
        let basic = basic_element(&datum, &[1]).unwrap();
        let levi = basic.levi();
        assert_eq!(levi.blocks.len(), 1);
        assert!(!levi.blocks[0].is_split());
        assert_eq!(levi.describe(), "GL1(D[1/2])");
        let gl3 = gl(3);
        let b3 = KottwitzPoint::from_newton(&gl3, rci(&[1, 0, 0])).unwrap();
        assert_eq!(b3.levi().describe(), "GL1(F) x GL2(F)");
    }

    #[test]
    fn invalid_newton_points_rejected() {
        let datum = gl(2);
        // slope 1/2 with multiplicity 1
        assert!(KottwitzPoint::from_newton(&datum, rcq(&[(1, 2), (0, 1)])).is_err());
        // non-dominant
        assert!(KottwitzPoint::from_newton(&datum, rci(&[0, 1])).is_err());
    }

    #[test]
    fn strata_below_gl2() {
        let datum = gl(2);
        let b = KottwitzPoint::from_newton(&datum, rci(&[1, 0])).unwrap();
        let below = strata_below(&datum, &b).unwrap();
        assert_eq!(below.len(), 1);
        assert_eq!(below[0].nu, rcq(&[(1, 2), (1, 2)]));
    }

    #[test]
    fn brute_force_agrees_small() {
        for (n, mu) in [
            (2, vec![1, 0]),
            (3, vec![1, 0, 0]),
            (3, vec![1, 1, 0]),
            (4, vec![1, 0, 0, -1]),
        ] {
            let datum = gl(n);
            let mu = Cochar(mu);
            let fast = enumerate_bgmu(&datum, &mu).unwrap();
            let slow = brute_force_bgmu(&datum, &mu).unwrap();
            assert_eq!(fast, slow, "mismatch for GL{n} mu={mu}");
        }
    }

    #[test]
    fn hasse_dot_renders() {
        let datum = gl(2);
        let points = enumerate_bgmu(&datum, &Cochar(vec![1, 0])).unwrap();
        let dot = hasse_dot(&datum, &points).unwrap();
        assert!(dot.contains("digraph"));
        assert!(dot.contains("->"));
    }

    #[test]
    fn non_gl_candidates_contain_extremes() {
        // Sp4 in the simply connected realization: cocharacters are written
        // in the simple-coroot basis, where (1,1) is dominant
        let sp4 = RootDatum::sp(4).unwrap();
        let mu = Cochar(vec![1, 1]);
        assert!(sp4.is_dominant_integral(&mu).unwrap());
        let candidates = enumerate_bgmu_candidates(&sp4, &mu, &|_| true).unwrap();
        assert!(candidates.iter().any(|p| p.nu == mu.to_rational()));
        // the zero Newton point (basic, since pi1 has no free part)
        assert!(candidates
            .iter()
            .any(|p| p.nu.0.iter().all(|x| x.is_zero())));
    }
}
