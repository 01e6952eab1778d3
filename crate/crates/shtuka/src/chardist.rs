//! Harish-Chandra character values as exact functions of eigenvalue data,
//! and the two assembly routes for the trace character of the cohomology
//! attached to `(b, mu, rho)`:
//!
//! * the theorem route: a signed sum over relevant triples of weight
//!   multiplicities, character values of `rho`, and inverted norm factors
//!   over the roots positive against the Newton point of `b`;
//! * the characteristic-class route: the same signed sum taken over every
//!   stratum in the closure of `b`, with per-stratum transfer components
//!   (the own-stratum component weighted by `|D_b^-|`, depth-one strata by
//!   the closed two-product formula) divided by the Weyl-integration
//!   factor.
//!
//! Root characters are always evaluated on the transferred element through
//! the slope-block identification; products over Galois-stable root sets
//! are normed once at the end so quadratic eigenvalue pairs stay exact.

use crate::error::Error;
use crate::exactnum::{FieldElement, FieldParams};
use crate::kottwitz::{
    basic_element, enumerate_bgmu, specializations, strata_below, KottwitzPoint,
    SpecializationDirection,
};
use crate::rootdata::{Cochar, ParabolicSign, RootDatum};
use crate::stconj::{build_rel, stable_transfers, SRElement, Transfer};
use crate::weights::freudenthal;
use crate::Result;
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A realized element of `G_b(F)`: eigenvalues attached to the slope
/// blocks of `b`, in ascending slope order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbElement {
    pub blocks: Vec<GbBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbBlock {
    #[serde(with = "crate::ratjson")]
    pub slope: BigRational,
    pub eigenvalues: Vec<FieldElement>,
}

impl GbElement {
    pub fn new(blocks: Vec<(BigRational, Vec<FieldElement>)>) -> Result<Self> {
        let mut prev: Option<&BigRational> = None;
        for (slope, evs) in &blocks {
            if evs.is_empty() {
                return Err(Error::Invalid("empty slope block".into()));
            }
            if evs.iter().any(FieldElement::is_zero) {
                return Err(Error::ZeroEigenvalue);
            }
            if let Some(p) = prev {
                if p >= slope {
                    return Err(Error::Invalid("blocks must have ascending slopes".into()));
                }
            }
            prev = Some(slope);
        }
        Ok(GbElement {
            blocks: blocks
                .into_iter()
                .map(|(slope, eigenvalues)| GbBlock { slope, eigenvalues })
                .collect(),
        })
    }

    pub fn from_transfer(g: &SRElement, transfer: &Transfer) -> Result<Self> {
        Self::new(transfer.realize(g))
    }

    /// Whether this element matches the slope blocks of `b`.
    pub fn matches(&self, b: &KottwitzPoint) -> bool {
        let mut expected: Vec<(BigRational, usize)> = Vec::new();
        for s in b.nu.0.iter().rev() {
            match expected.last_mut() {
                Some((slope, mult)) if slope == s => *mult += 1,
                _ => expected.push((s.clone(), 1)),
            }
        }
        self.blocks.len() == expected.len()
            && self
                .blocks
                .iter()
                .zip(&expected)
                .all(|(blk, (slope, mult))| &blk.slope == slope && blk.eigenvalues.len() == *mult)
    }

    /// Eigenvalues arranged in the coordinate slots of `G`: slot `i`
    /// carries the block of slope `nu_i` (Newton points are descending, so
    /// this reverses the ascending block order), input order within each
    /// block.
    pub fn slot_values(&self) -> Vec<FieldElement> {
        self.blocks
            .iter()
            .rev()
            .flat_map(|b| b.eigenvalues.iter().cloned())
            .collect()
    }

    /// Total rank.
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.eigenvalues.len()).sum()
    }
}

/// Evaluate a root character at slot values: the product of
/// `slots[i]^root[i]`.
fn root_value(root: &[i64], slots: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::one();
    for (&c, x) in root.iter().zip(slots) {
        match c.cmp(&0) {
            std::cmp::Ordering::Equal => {}
            std::cmp::Ordering::Greater => {
                for _ in 0..c {
                    acc = acc.mul(x);
                }
            }
            std::cmp::Ordering::Less => {
                let inv = x.inv();
                for _ in 0..(-c) {
                    acc = acc.mul(&inv);
                }
            }
        }
    }
    acc
}

/// Exact product of `(1 - alpha(t))` over a set of roots, as a field
/// element.  Errors when some factor vanishes (the element is not regular
/// against this configuration).
fn one_minus_product(roots: &[Vec<i64>], slots: &[FieldElement]) -> Result<FieldElement> {
    let mut acc = FieldElement::one();
    for root in roots {
        let factor = root_value(root, slots).one_minus();
        if factor.is_zero() {
            return Err(Error::NotRegular(format!(
                "1 - alpha(t) = 0 for root {root:?}"
            )));
        }
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// `D_b^-(t)`: the determinant of `1 - Ad(t)` on the negative nilradical
/// attached to `b`, as the exact product of `(1 - alpha(t))` over the
/// roots pairing negatively with the Newton point.
pub fn d_b_minus(datum: &RootDatum, b: &KottwitzPoint, t: &GbElement) -> Result<FieldElement> {
    if !t.matches(b) {
        return Err(Error::IncompatiblePair(
            "element does not match the slope blocks of b".into(),
        ));
    }
    let roots = datum.parabolic_roots(&b.nu, ParabolicSign::Negative)?;
    one_minus_product(&roots, &t.slot_values())
}

/// Norm of the product of `(1 - alpha(t))` over a Galois-stable root set;
/// a single norm of the exact product, so conjugate eigenvalue pairs
/// always produce a rational value.
fn norm_of_one_minus_product(
    roots: &[Vec<i64>],
    slots: &[FieldElement],
    params: &FieldParams,
) -> Result<BigRational> {
    one_minus_product(roots, slots)?.norm(params)
}

/// One graded piece of a slope-decomposed object: a nonzero slope with the
/// eigenvalue of the acting automorphism, or a torsion piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsocPiece {
    Slope {
        #[serde(with = "crate::ratjson")]
        slope: BigRational,
        eigenvalue: FieldElement,
    },
    Torsion,
}

/// Determinant of an automorphism acting on slope-graded pieces: the
/// eigenvalue on positive slopes, its inverse on negative slopes, and 1 on
/// torsion.  Slope zero is outside the domain of the construction.
pub fn det_isocrystal(pieces: &[IsocPiece]) -> Result<FieldElement> {
    let mut det = FieldElement::one();
    for piece in pieces {
        match piece {
            IsocPiece::Torsion => {}
            IsocPiece::Slope { slope, eigenvalue } => {
                if eigenvalue.is_zero() {
                    return Err(Error::ZeroEigenvalue);
                }
                match slope.cmp(&BigRational::zero()) {
                    std::cmp::Ordering::Greater => det = det.mul(eigenvalue),
                    std::cmp::Ordering::Less => det = det.mul(&eigenvalue.inv()),
                    std::cmp::Ordering::Equal => {
                        return Err(Error::Invalid(
                            "slope-zero pieces have no determinant convention".into(),
                        ))
                    }
                }
            }
        }
    }
    Ok(det)
}

/// The scalar by which the automorphism acts on compactly supported
/// cohomology: `|det|^{-1}`.
pub fn bc_action_factor(pieces: &[IsocPiece], params: &FieldParams) -> Result<BigRational> {
    let det = det_isocrystal(pieces)?;
    let n = det.norm(params)?;
    if n.is_zero() {
        return Err(Error::ZeroEigenvalue);
    }
    Ok(n.recip())
}

/// An unramified character of `F^x`: `x -> z^{val(x)}` with exact nonzero
/// `z`, in the normalization `val(p) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnramChar {
    #[serde(with = "crate::ratjson")]
    pub z: BigRational,
}

impl UnramChar {
    pub fn new(z: BigRational) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::Invalid("character value must be nonzero".into()));
        }
        Ok(UnramChar { z })
    }

    pub fn eval(&self, x: &BigRational, params: &FieldParams) -> Result<BigRational> {
        if x.is_zero() {
            return Err(Error::ZeroEigenvalue);
        }
        let v = crate::exactnum::rational_val_p(x, params.p);
        let exp = i32::try_from(v)
            .map_err(|_| Error::GuardExceeded("valuation overflows i32".into()))?;
        Ok(self.z.clone().pow(exp))
    }
}

/// Character of the full (unnormalized) principal series of `GL(m)` with
/// unramified inducing characters, on a split regular class: the sum over
/// arrangements of the eigenvalues into the character slots of the
/// character value times inverted norms `|1 - a_i/a_j|^{-1}` over `i < j`.
fn vandijk_gl(
    chars: &[UnramChar],
    eigenvalues: &[BigRational],
    params: &FieldParams,
) -> Result<BigRational> {
    let m = chars.len();
    assert_eq!(m, eigenvalues.len());
    let mut total = BigRational::zero();
    for perm in (0..m).permutations(m) {
        let arrangement: Vec<&BigRational> = perm.iter().map(|&i| &eigenvalues[i]).collect();
        let mut term = BigRational::one();
        for (chi, a) in chars.iter().zip(&arrangement) {
            term *= chi.eval(a, params)?;
        }
        for i in 0..m {
            for j in (i + 1)..m {
                let ratio = arrangement[i] / arrangement[j];
                let factor = FieldElement::from_rational(BigRational::one() - ratio);
                if factor.is_zero() {
                    return Err(Error::NotRegular("coincident eigenvalues".into()));
                }
                term *= factor.norm(params)?.recip();
            }
        }
        total += term;
    }
    Ok(total)
}

/// Character of the unnormalized principal series of the full diagonal
/// torus at a strongly regular class: zero off split classes.
pub fn vandijk_character(
    datum: &RootDatum,
    chars: &[UnramChar],
    g: &SRElement,
    params: &FieldParams,
) -> Result<BigRational> {
    if chars.len() != datum.rank {
        return Err(Error::RankMismatch {
            expected: datum.rank,
            got: chars.len(),
        });
    }
    match g.rational_eigenvalues() {
        Some(evs) => vandijk_gl(chars, &evs, params),
        None => Ok(BigRational::zero()),
    }
}

/// Specification of the representation `rho` of `G_b(F)` whose character
/// feeds the assembly.
#[derive(Clone)]
pub enum RepSpec {
    Trivial,
    /// Unramified principal series; one character per eigenvalue slot,
    /// grouped by the ascending slope blocks of `b`.  Defined only when
    /// every block is split.
    UnramifiedPrincipalSeries(Vec<UnramChar>),
    /// The virtual difference of the Steinberg and trivial representations
    /// of `GL(2, F)`; requires `G_b = GL(2, F)` (one split block of
    /// size 2).
    SteinbergMinusTrivial,
    UserTable(CharacterTable),
}

impl std::fmt::Debug for RepSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RepSpec::Trivial => write!(f, "Trivial"),
            RepSpec::UnramifiedPrincipalSeries(chars) => {
                write!(f, "UnramifiedPrincipalSeries({} chars)", chars.len())
            }
            RepSpec::SteinbergMinusTrivial => write!(f, "SteinbergMinusTrivial"),
            RepSpec::UserTable(t) => write!(f, "UserTable(at {})", t.at),
        }
    }
}

/// Harish-Chandra character of `rho` at a realized element of `G_b(F)`.
pub fn rep_character(rep: &RepSpec, gp: &GbElement, params: &FieldParams) -> Result<BigRational> {
    match rep {
        RepSpec::Trivial => Ok(BigRational::one()),
        RepSpec::UnramifiedPrincipalSeries(chars) => {
            if chars.len() != gp.rank() {
                return Err(Error::RankMismatch {
                    expected: gp.rank(),
                    got: chars.len(),
                });
            }
            let mut value = BigRational::one();
            let mut offset = 0;
            for block in &gp.blocks {
                if !block.slope.is_integer() {
                    return Err(Error::UnsupportedTorus(
                        "principal series of a division-algebra block is not modeled".into(),
                    ));
                }
                let block_chars = &chars[offset..offset + block.eigenvalues.len()];
                offset += block.eigenvalues.len();
                let rationals: Option<Vec<BigRational>> = block
                    .eigenvalues
                    .iter()
                    .map(|e| match e {
                        FieldElement::Rat(r) => Some(r.clone()),
                        FieldElement::Quad { .. } => None,
                    })
                    .collect();
                match rationals {
                    Some(evs) => value *= vandijk_gl(block_chars, &evs, params)?,
                    // induced characters vanish on classes not meeting the
                    // inducing torus
                    None => return Ok(BigRational::zero()),
                }
            }
            Ok(value)
        }
        RepSpec::SteinbergMinusTrivial => {
            if gp.blocks.len() != 1
                || gp.blocks[0].eigenvalues.len() != 2
                || !gp.blocks[0].slope.is_integer()
            {
                return Err(Error::UnsupportedTorus(
                    "Steinberg - trivial lives on GL(2, F)".into(),
                ));
            }
            let evs = &gp.blocks[0].eigenvalues;
            match (&evs[0], &evs[1]) {
                (FieldElement::Rat(x), FieldElement::Rat(y)) => {
                    let a = FieldElement::from_rational(BigRational::one() - x / y).norm(params)?;
                    let b = FieldElement::from_rational(BigRational::one() - y / x).norm(params)?;
                    if a.is_zero() || b.is_zero() {
                        return Err(Error::NotRegular("coincident eigenvalues".into()));
                    }
                    Ok(BigRational::from(BigInt::from(-2)) + a.recip() + b.recip())
                }
                _ => Ok(BigRational::from(BigInt::from(-2))),
            }
        }
        RepSpec::UserTable(table) => table.eval(gp),
    }
}

/// A conjugation-invariant exact function on the strongly regular classes
/// of some `G_b(F)`: the carrier for Harish-Chandra characters and for
/// strongly-regular characteristic-class components.
#[derive(Clone)]
pub struct CharacterTable {
    /// The stratum whose group the function lives on.
    pub at: KottwitzPoint,
    eval: Arc<dyn Fn(&GbElement) -> Result<BigRational> + Send + Sync>,
}

impl std::fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CharacterTable(at {})", self.at)
    }
}

impl CharacterTable {
    pub fn from_fn<F>(at: KottwitzPoint, f: F) -> Self
    where
        F: Fn(&GbElement) -> Result<BigRational> + Send + Sync + 'static,
    {
        CharacterTable {
            at,
            eval: Arc::new(f),
        }
    }

    pub fn constant(at: KottwitzPoint, value: BigRational) -> Self {
        Self::from_fn(at, move |_| Ok(value.clone()))
    }

    pub fn eval(&self, gp: &GbElement) -> Result<BigRational> {
        (self.eval)(gp)
    }

    /// Own-stratum characteristic-class component of `rho` pushed in from
    /// `b`: the character of `rho` weighted by `|D_b^-|`.
    pub fn own_stratum(
        datum: &RootDatum,
        b: &KottwitzPoint,
        rho: &RepSpec,
        params: &FieldParams,
    ) -> Self {
        let datum = datum.clone();
        let b_cl = b.clone();
        let rho = rho.clone();
        let params = *params;
        Self::from_fn(b.clone(), move |gp| {
            let d = d_b_minus(&datum, &b_cl, gp)?.norm(&params)?;
            Ok(d * rep_character(&rho, gp, &params)?)
        })
    }

    /// Depth-one component: the closed two-product formula, backed by
    /// [`cc_nonbasic_component`].
    pub fn depth_one(
        datum: &RootDatum,
        b_basic: &KottwitzPoint,
        b_prime: &KottwitzPoint,
        params: &FieldParams,
    ) -> Self {
        let datum = datum.clone();
        let b_basic = b_basic.clone();
        let bp = b_prime.clone();
        let params = *params;
        Self::from_fn(b_prime.clone(), move |gp| {
            cc_nonbasic_component(&datum, &b_basic, &bp, gp, &params)
        })
    }
}

/// The strongly regular characteristic-class component on a depth-one
/// stratum `b'` over a basic `b`:
/// `prod_{a in Phi+ u Phi-} |1 - a(t)|  -  prod_{a in Phi-} |1 - a(t)|`,
/// with both root sets taken relative to the Newton point of `b'`.
///
/// Valid only when the unique stratum strictly below `b'` is `b`; other
/// configurations have no established closed form and are rejected.
pub fn cc_nonbasic_component(
    datum: &RootDatum,
    b_basic: &KottwitzPoint,
    b_prime: &KottwitzPoint,
    t: &GbElement,
    params: &FieldParams,
) -> Result<BigRational> {
    if !b_basic.is_basic(datum)? {
        return Err(Error::FormulaNotEstablished(format!(
            "{b_basic} is not basic"
        )));
    }
    if b_basic.kappa != b_prime.kappa {
        return Err(Error::MixedKappa);
    }
    let below = strata_below(datum, b_prime)?;
    if below.len() != 1 || below[0] != *b_basic {
        return Err(Error::FormulaNotEstablished(format!(
            "strata below {b_prime} are not exactly the basic one"
        )));
    }
    if !t.matches(b_prime) {
        return Err(Error::IncompatiblePair(
            "element does not match the slope blocks of b'".into(),
        ));
    }
    let slots = t.slot_values();
    // |D^-| * (prod over Phi^+ of |1 - a(t)| - 1), which expands to the
    // two-product formula; computed this way the subtracted term is
    // literally the |D^-| weight of the closed stratum
    let neg = datum.parabolic_roots(&b_prime.nu, ParabolicSign::Negative)?;
    let pos = datum.parabolic_roots(&b_prime.nu, ParabolicSign::Positive)?;
    let d_minus = norm_of_one_minus_product(&neg, &slots, params)?;
    let pos_product = norm_of_one_minus_product(&pos, &slots, params)?;
    Ok(d_minus * (pos_product - BigRational::one()))
}

/// Outcome of the hypothesis check for the theorem route.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub holds: bool,
    /// A proper specialization of `b` admitting a stable transfer of `g`,
    /// when one exists.
    pub witness: Option<KottwitzPoint>,
}

/// True iff no proper specialization of `b` inside `B(G, mu)` admits a
/// stable transfer of `g`; returns the offending stratum otherwise.
pub fn check_hypothesis(
    datum: &RootDatum,
    b: &KottwitzPoint,
    mu: &Cochar,
    g: &SRElement,
) -> Result<HypothesisCheck> {
    let all = enumerate_bgmu(datum, mu)?;
    let proper = specializations(datum, b, &all, true, SpecializationDirection::ClosureContains)?;
    for stratum in proper {
        if !stable_transfers(g, &stratum)?.is_empty() {
            return Ok(HypothesisCheck {
                holds: false,
                witness: Some(stratum),
            });
        }
    }
    Ok(HypothesisCheck {
        holds: true,
        witness: None,
    })
}

/// One term of an assembled character value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaTerm {
    pub stratum: KottwitzPoint,
    pub lambda: Cochar,
    pub multiplicity: u64,
    #[serde(with = "crate::ratjson")]
    pub character_value: BigRational,
    /// Theorem route: the norms `|1 - alpha(g')|` over the positive
    /// parabolic roots (inverted in the product); empty for basic `b`.
    #[serde(with = "crate::ratjson::vec")]
    pub norm_factors: Vec<BigRational>,
    /// Characteristic-class route: the Weyl-integration denominator.
    pub weyl_denominator: Option<WeylDenominator>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeylDenominator(#[serde(with = "crate::ratjson")] pub BigRational);

/// An assembled character value with its term breakdown.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaValue {
    #[serde(with = "crate::ratjson")]
    pub value: BigRational,
    /// `<mu, 2 rho_G>`; the overall sign is `(-1)` to this power.
    pub sign_exponent: i64,
    pub terms: Vec<ThetaTerm>,
}

fn sign_of(exponent: i64) -> BigRational {
    if exponent.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn validate_b_in_bgmu(datum: &RootDatum, b: &KottwitzPoint, mu: &Cochar) -> Result<()> {
    let kappa_mu = datum.pi1.kappa(mu);
    if b.kappa != kappa_mu {
        return Err(Error::Invalid(format!(
            "kappa of b {:?} differs from kappa of mu {:?}",
            b.kappa, kappa_mu
        )));
    }
    if !datum.dominance_leq(&b.nu, &mu.to_rational())? {
        return Err(Error::Invalid(format!("{} is not bounded by mu={mu}", b.nu)));
    }
    Ok(())
}

/// The trace character at `g` by the theorem route:
/// `(-1)^{<mu, 2 rho_G>}` times the sum over relevant triples of
/// `dim r_mu[lambda] * Theta_rho(g') * prod_{alpha in Phi^+} |1 - alpha(g')|^{-1}`,
/// where `Phi^+` is the positive parabolic root set of `b`'s Newton point
/// and root characters are evaluated at the transferred element.
///
/// Requires the hypothesis that no proper specialization of `b` in
/// `B(G, mu)` receives a stable transfer of `g`; otherwise the error names
/// the offending stratum and the characteristic-class route applies.
pub fn theta_from_theorem(
    datum: &RootDatum,
    b: &KottwitzPoint,
    mu: &Cochar,
    rho: &RepSpec,
    g: &SRElement,
    params: &FieldParams,
) -> Result<ThetaValue> {
    validate_b_in_bgmu(datum, b, mu)?;
    let check = check_hypothesis(datum, b, mu, g)?;
    if !check.holds {
        return Err(Error::HypothesisViolated {
            witness: check.witness.map(|w| w.to_string()).unwrap_or_default(),
        });
    }
    let table = freudenthal(datum, mu)?;
    let sign_exponent = datum.pairing(&datum.two_rho(), mu)?;
    let pos_roots = datum.parabolic_roots(&b.nu, ParabolicSign::Positive)?;
    let mut terms = Vec::new();
    let mut sum = BigRational::zero();
    for triple in build_rel(datum, g, b, mu)? {
        let multiplicity = table.multiplicity(datum, &triple.lambda);
        if multiplicity == 0 {
            continue;
        }
        let gp = GbElement::from_transfer(g, &triple.transfer)?;
        let character_value = rep_character(rho, &gp, params)?;
        let slots = gp.slot_values();
        let mut norm_factors = Vec::new();
        let mut product_inverse = BigRational::one();
        for root in &pos_roots {
            let factor = root_value(root, &slots).one_minus();
            if factor.is_zero() {
                return Err(Error::NotRegular(format!(
                    "1 - alpha(g') = 0 for root {root:?}"
                )));
            }
            let n = factor.norm(params)?;
            product_inverse *= n.recip();
            norm_factors.push(n);
        }
        sum += BigRational::from(BigInt::from(multiplicity)) * &character_value * &product_inverse;
        terms.push(ThetaTerm {
            stratum: b.clone(),
            lambda: triple.lambda,
            multiplicity,
            character_value,
            norm_factors,
            weyl_denominator: None,
        });
    }
    Ok(ThetaValue {
        value: sign_of(sign_exponent) * sum,
        sign_exponent,
        terms,
    })
}

/// The trace character at `g` by the characteristic-class route: the sum
/// over every stratum `b'` in the closure of `b` within `B(G, mu)` of the
/// signed, weight-multiplicity-weighted component values at the transfers
/// of `g`, divided by the Weyl-integration factor
/// `prod_{alpha in Phi^+ u Phi^-(b')} |1 - alpha(g')|`.
///
/// `components` maps strata to their strongly-regular component tables;
/// the own-stratum component of `b` is filled in from `rho` when absent.
pub fn theta_via_cc(
    datum: &RootDatum,
    b: &KottwitzPoint,
    mu: &Cochar,
    rho: &RepSpec,
    g: &SRElement,
    components: &BTreeMap<KottwitzPoint, CharacterTable>,
    params: &FieldParams,
) -> Result<ThetaValue> {
    validate_b_in_bgmu(datum, b, mu)?;
    let all = enumerate_bgmu(datum, mu)?;
    let closure = specializations(datum, b, &all, false, SpecializationDirection::ClosureContains)?;
    let table = freudenthal(datum, mu)?;
    let sign_exponent = datum.pairing(&datum.two_rho(), mu)?;
    let mut terms = Vec::new();
    let mut sum = BigRational::zero();
    for stratum in &closure {
        let own_table;
        let component = match components.get(stratum) {
            Some(t) => t,
            None if stratum == b => {
                own_table = CharacterTable::own_stratum(datum, b, rho, params);
                &own_table
            }
            None => return Err(Error::MissingComponent(stratum.to_string())),
        };
        let pos = datum.parabolic_roots(&stratum.nu, ParabolicSign::Positive)?;
        let neg = datum.parabolic_roots(&stratum.nu, ParabolicSign::Negative)?;
        let both: Vec<Vec<i64>> = pos.into_iter().chain(neg).collect();
        for triple in build_rel(datum, g, stratum, mu)? {
            let multiplicity = table.multiplicity(datum, &triple.lambda);
            if multiplicity == 0 {
                continue;
            }
            let gp = GbElement::from_transfer(g, &triple.transfer)?;
            let character_value = component.eval(&gp)?;
            let weyl = norm_of_one_minus_product(&both, &gp.slot_values(), params)?;
            if weyl.is_zero() {
                return Err(Error::NotRegular("vanishing Weyl factor".into()));
            }
            sum += BigRational::from(BigInt::from(multiplicity)) * &character_value / &weyl;
            terms.push(ThetaTerm {
                stratum: stratum.clone(),
                lambda: triple.lambda,
                multiplicity,
                character_value,
                norm_factors: Vec::new(),
                weyl_denominator: Some(WeylDenominator(weyl)),
            });
        }
    }
    Ok(ThetaValue {
        value: sign_of(sign_exponent) * sum,
        sign_exponent,
        terms,
    })
}

/// The standard component map for a basic `b`: nothing for `b` itself (the
/// own-stratum table is derived from `rho` inside [`theta_via_cc`]) and
/// the depth-one two-product table for every stratum of `B(G, mu)` whose
/// only lower neighbour is `b`.
pub fn standard_components(
    datum: &RootDatum,
    b: &KottwitzPoint,
    mu: &Cochar,
    params: &FieldParams,
) -> Result<BTreeMap<KottwitzPoint, CharacterTable>> {
    let all = enumerate_bgmu(datum, mu)?;
    let mut map = BTreeMap::new();
    for stratum in &all {
        if stratum == b {
            continue;
        }
        let below = strata_below(datum, stratum)?;
        if below.len() == 1 && below[0] == *b {
            map.insert(
                stratum.clone(),
                CharacterTable::depth_one(datum, b, stratum, params),
            );
        }
    }
    Ok(map)
}

/// The basic point with the same kappa invariant as `mu`.
pub fn basic_for_mu(datum: &RootDatum, mu: &Cochar) -> Result<KottwitzPoint> {
    basic_element(datum, &datum.pi1.kappa(mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::rootdata::RationalCochar;

    fn gl(n: usize) -> RootDatum {
        RootDatum::gl(n).unwrap()
    }

    fn qp(p: u64) -> FieldParams {
        FieldParams::new(p, 1, 1).unwrap()
    }

    fn rci(v: &[i64]) -> RationalCochar {
        RationalCochar(
            v.iter()
                .map(|&x| BigRational::from(BigInt::from(x)))
                .collect(),
        )
    }

    fn split_g(datum: &RootDatum, evs: &[(i64, i64)]) -> SRElement {
        SRElement::split(
            datum,
            evs.iter()
                .map(|&(n, d)| FieldElement::from_rational(rat(n, d)))
                .collect(),
        )
        .unwrap()
    }

    fn gb(blocks: Vec<(BigRational, Vec<FieldElement>)>) -> GbElement {
        GbElement::new(blocks).unwrap()
    }

    #[test]
    fn d_b_minus_gl2() {
        let gl2 = gl(2);
        let b = KottwitzPoint::from_newton(&gl2, rci(&[1, 0])).unwrap();
        // ascending blocks: t1 on slope 0, t2 on slope 1; the single
        // negative root gives 1 - t1/t2
        let t = gb(vec![
            (int(0), vec![FieldElement::from_int(3)]),
            (int(1), vec![FieldElement::from_int(5)]),
        ]);
        let d = d_b_minus(&gl2, &b, &t).unwrap();
        assert_eq!(d, FieldElement::from_rational(rat(2, 5)));

        // basic b: empty product
        let basic = basic_element(&gl2, &[1]).unwrap();
        let tq = gb(vec![(
            rat(1, 2),
            vec![
                FieldElement::quadratic(int(1), int(1), int(2)).unwrap(),
                FieldElement::quadratic(int(1), int(-1), int(2)).unwrap(),
            ],
        )]);
        assert!(d_b_minus(&gl2, &basic, &tq).unwrap().is_one());
    }

    #[test]
    fn d_b_minus_gl3() {
        let gl3 = gl(3);
        let b = KottwitzPoint::from_newton(&gl3, rci(&[1, 0, 0])).unwrap();
        let t = gb(vec![
            (
                int(0),
                vec![FieldElement::from_int(2), FieldElement::from_int(3)],
            ),
            (int(1), vec![FieldElement::from_int(7)]),
        ]);
        // slots (descending nu): (7, 2, 3); negative roots e2-e1, e3-e1
        // give (1 - 2/7)(1 - 3/7) = (5/7)(4/7) = 20/49
        let d = d_b_minus(&gl3, &b, &t).unwrap();
        assert_eq!(d, FieldElement::from_rational(rat(20, 49)));
    }

    #[test]
    fn det_and_bc_factor() {
        let p5 = qp(5);
        // single positive-slope line
        let pieces = vec![IsocPiece::Slope {
            slope: int(1),
            eigenvalue: FieldElement::from_int(7),
        }];
        assert_eq!(det_isocrystal(&pieces).unwrap(), FieldElement::from_int(7));
        // negative slope inverts
        let pieces = vec![IsocPiece::Slope {
            slope: int(-1),
            eigenvalue: FieldElement::from_int(7),
        }];
        assert_eq!(
            det_isocrystal(&pieces).unwrap(),
            FieldElement::from_rational(rat(1, 7))
        );
        // torsion contributes 1
        assert!(det_isocrystal(&[IsocPiece::Torsion]).unwrap().is_one());
        // |det|^{-1}: positive line with eigenvalue p gives p
        let pieces = vec![IsocPiece::Slope {
            slope: int(1),
            eigenvalue: FieldElement::from_int(5),
        }];
        assert_eq!(bc_action_factor(&pieces, &p5).unwrap(), int(5));
        // identity acts trivially
        let pieces = vec![IsocPiece::Slope {
            slope: int(1),
            eigenvalue: FieldElement::one(),
        }];
        assert_eq!(bc_action_factor(&pieces, &p5).unwrap(), int(1));
    }

    #[test]
    fn bc_factor_multiplicative() {
        let p3 = qp(3);
        let piece = |ev: BigRational| {
            vec![IsocPiece::Slope {
                slope: int(2),
                eigenvalue: FieldElement::from_rational(ev),
            }]
        };
        let f = |ev: BigRational| bc_action_factor(&piece(ev), &p3).unwrap();
        let x = rat(9, 2);
        let y = rat(5, 3);
        assert_eq!(f(&x * &y), f(x) * f(y));
    }

    #[test]
    fn vandijk_examples() {
        let gl2 = gl(2);
        let p5 = qp(5);
        let trivial = vec![
            UnramChar::new(int(1)).unwrap(),
            UnramChar::new(int(1)).unwrap(),
        ];
        // lambda1 = p, lambda2 = 1: |1-p|^{-1} + |1-1/p|^{-1} = 1 + 1/p
        let g = split_g(&gl2, &[(5, 1), (1, 1)]);
        assert_eq!(
            vandijk_character(&gl2, &trivial, &g, &p5).unwrap(),
            rat(6, 5)
        );
        // quadratic class: zero
        let gq = SRElement::quadratic(&gl2, int(1), int(1), int(2)).unwrap();
        assert_eq!(vandijk_character(&gl2, &trivial, &gq, &p5).unwrap(), int(0));
    }

    #[test]
    fn cc_component_examples() {
        let gl2 = gl(2);
        let p5 = qp(5);
        let basic = basic_element(&gl2, &[1]).unwrap();
        let bp = KottwitzPoint::from_newton(&gl2, rci(&[1, 0])).unwrap();
        // t = (p, 1): |1-p| |1-1/p| - |1-p| = 1*p - 1 = p - 1
        let t = gb(vec![
            (int(0), vec![FieldElement::from_int(5)]),
            (int(1), vec![FieldElement::from_int(1)]),
        ]);
        assert_eq!(
            cc_nonbasic_component(&gl2, &basic, &bp, &t, &p5).unwrap(),
            int(4)
        );
        // units in general position: 1*1 - 1 = 0
        let t = gb(vec![
            (int(0), vec![FieldElement::from_int(2)]),
            (int(1), vec![FieldElement::from_int(3)]),
        ]);
        assert_eq!(
            cc_nonbasic_component(&gl2, &basic, &bp, &t, &p5).unwrap(),
            int(0)
        );
    }

    #[test]
    fn cc_component_rejects_bad_configurations() {
        let gl2 = gl(2);
        let p5 = qp(5);
        let basic = basic_element(&gl2, &[1]).unwrap();
        let bp = KottwitzPoint::from_newton(&gl2, rci(&[1, 0])).unwrap();
        let t = gb(vec![
            (int(0), vec![FieldElement::from_int(5)]),
            (int(1), vec![FieldElement::from_int(1)]),
        ]);
        // swapped roles
        assert!(matches!(
            cc_nonbasic_component(&gl2, &bp, &basic, &t, &p5),
            Err(Error::FormulaNotEstablished(_))
        ));
        // GL3 stratum two steps above the basic point
        let gl3 = gl(3);
        let basic3 = basic_element(&gl3, &[1]).unwrap();
        let top = KottwitzPoint::from_newton(&gl3, rci(&[1, 0, 0])).unwrap();
        let t3 = gb(vec![
            (
                int(0),
                vec![FieldElement::from_int(2), FieldElement::from_int(3)],
            ),
            (int(1), vec![FieldElement::from_int(7)]),
        ]);
        assert!(matches!(
            cc_nonbasic_component(&gl3, &basic3, &top, &t3, &p5),
            Err(Error::FormulaNotEstablished(_))
        ));
    }

    #[test]
    fn hypothesis_examples() {
        let gl2 = gl(2);
        let mu = Cochar(vec![1, 0]);
        let basic = basic_element(&gl2, &[1]).unwrap();
        // quadratic g: holds
        let gq = SRElement::quadratic(&gl2, int(1), int(1), int(2)).unwrap();
        assert!(check_hypothesis(&gl2, &basic, &mu, &gq).unwrap().holds);
        // split g: fails with witness (1,0)
        let gs = split_g(&gl2, &[(3, 1), (5, 1)]);
        let check = check_hypothesis(&gl2, &basic, &mu, &gs).unwrap();
        assert!(!check.holds);
        assert_eq!(check.witness.unwrap().nu, rci(&[1, 0]));
        // maximal b: always holds
        let max = KottwitzPoint::from_newton(&gl2, rci(&[1, 0])).unwrap();
        assert!(check_hypothesis(&gl2, &max, &mu, &gs).unwrap().holds);
    }

    #[test]
    fn theorem_route_drinfeld_quadratic() {
        let gl2 = gl(2);
        let mu = Cochar(vec![1, 0]);
        let basic = basic_element(&gl2, &[1]).unwrap();
        let g = SRElement::quadratic(&gl2, int(1), int(1), int(2)).unwrap();
        for p in [2u64, 3, 5] {
            let theta =
                theta_from_theorem(&gl2, &basic, &mu, &RepSpec::Trivial, &g, &qp(p)).unwrap();
            assert_eq!(theta.value, int(-2));
            assert_eq!(theta.sign_exponent, 1);
            assert_eq!(theta.terms.len(), 2);
            for term in &theta.terms {
                assert!(term.norm_factors.is_empty());
            }
        }
    }

    #[test]
    fn theorem_route_rejects_split_at_basic() {
        let gl2 = gl(2);
        let mu = Cochar(vec![1, 0]);
        let basic = basic_element(&gl2, &[1]).unwrap();
        let g = split_g(&gl2, &[(3, 1), (5, 1)]);
        assert!(matches!(
            theta_from_theorem(&gl2, &basic, &mu, &RepSpec::Trivial, &g, &qp(5)),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn cc_route_drinfeld_values() {
        let gl2 = gl(2);
        let mu = Cochar(vec![1, 0]);
        let basic = basic_element(&gl2, &[1]).unwrap();
        let p5 = qp(5);
        let components = standard_components(&gl2, &basic, &mu, &p5).unwrap();
        assert_eq!(components.len(), 1);

        // split g = (3, 5): -2 + |1-3/5|^{-1} + |1-5/3|^{-1} = -2 + 1/5 + 1
        let g = split_g(&gl2, &[(3, 1), (5, 1)]);
        let theta =
            theta_via_cc(&gl2, &basic, &mu, &RepSpec::Trivial, &g, &components, &p5).unwrap();
        assert_eq!(theta.value, rat(-4, 5));

        // quadratic g: -2
        let gq = SRElement::quadratic(&gl2, int(1), int(1), int(2)).unwrap();
        let theta =
            theta_via_cc(&gl2, &basic, &mu, &RepSpec::Trivial, &gq, &components, &p5).unwrap();
        assert_eq!(theta.value, int(-2));
    }

    #[test]
    fn cc_route_zero_components_give_zero() {
        let gl2 = gl(2);
        let mu = Cochar(vec![1, 0]);
        let basic = basic_element(&gl2, &[1]).unwrap();
        let p5 = qp(5);
        let all = enumerate_bgmu(&gl2, &mu).unwrap();
        let mut components = BTreeMap::new();
        for stratum in all {
            components.insert(
                stratum.clone(),
                CharacterTable::constant(stratum, BigRational::zero()),
            );
        }
        let g = split_g(&gl2, &[(3, 1), (5, 1)]);
        let theta =
            theta_via_cc(&gl2, &basic, &mu, &RepSpec::Trivial, &g, &components, &p5).unwrap();
        assert!(theta.value.is_zero());
    }

    #[test]
    fn cc_route_missing_component_errors() {
        let gl2 = gl(2);
        let mu = Cochar(vec![1, 0]);
        let basic = basic_element(&gl2, &[1]).unwrap();
        let g = split_g(&gl2, &[(3, 1), (5, 1)]);
        assert!(matches!(
            theta_via_cc(
                &gl2,
                &basic,
                &mu,
                &RepSpec::Trivial,
                &g,
                &BTreeMap::new(),
                &qp(5)
            ),
            Err(Error::MissingComponent(_))
        ));
    }

    #[test]
    fn theorem_route_matches_vandijk_up_to_sign_gl2() {
        let gl2 = gl(2);
        let mu = Cochar(vec![1, 0]);
        let b = KottwitzPoint::from_newton(&gl2, rci(&[1, 0])).unwrap();
        let p5 = qp(5);
        // rho: characters z1 on the slope-0 block, z2 on the slope-1 block
        let z1 = rat(2, 1);
        let z2 = rat(3, 1);
        let rho = RepSpec::UnramifiedPrincipalSeries(vec![
            UnramChar::new(z1.clone()).unwrap(),
            UnramChar::new(z2.clone()).unwrap(),
        ]);
        let g = split_g(&gl2, &[(5, 1), (2, 1)]);
        let theta = theta_from_theorem(&gl2, &b, &mu, &rho, &g, &p5).unwrap();
        // slot order is descending slope: the slope-1 character comes first
        let vd_chars = vec![UnramChar::new(z2).unwrap(), UnramChar::new(z1).unwrap()];
        let vd = vandijk_character(&gl2, &vd_chars, &g, &p5).unwrap();
        assert_eq!(theta.value, -vd);
    }

    #[test]
    fn steinberg_minus_trivial_character() {
        let p5 = qp(5);
        let gp = gb(vec![(
            int(0),
            vec![FieldElement::from_int(5), FieldElement::from_int(1)],
        )]);
        // -2 + |1-5|^{-1} + |1-1/5|^{-1} = -2 + 1 + 1/5
        assert_eq!(
            rep_character(&RepSpec::SteinbergMinusTrivial, &gp, &p5).unwrap(),
            rat(-4, 5)
        );
        let gq = gb(vec![(
            int(0),
            vec![
                FieldElement::quadratic(int(1), int(1), int(2)).unwrap(),
                FieldElement::quadratic(int(1), int(-1), int(2)).unwrap(),
            ],
        )]);
        assert_eq!(
            rep_character(&RepSpec::SteinbergMinusTrivial, &gq, &p5).unwrap(),
            int(-2)
        );
    }

    #[test]
    fn conjugation_invariance_within_blocks() {
        let gl3 = gl(3);
        let p5 = qp(5);
        let basic3 = basic_element(&gl3, &[1]).unwrap();
        let bp = KottwitzPoint::from_newton(
            &gl3,
            RationalCochar(vec![rat(1, 2), rat(1, 2), int(0)]),
        )
        .unwrap();
        let quad_pair = vec![
            FieldElement::quadratic(int(2), int(1), int(3)).unwrap(),
            FieldElement::quadratic(int(2), int(-1), int(3)).unwrap(),
        ];
        let t1 = gb(vec![
            (int(0), vec![FieldElement::from_int(7)]),
            (rat(1, 2), quad_pair.clone()),
        ]);
        let mut swapped = quad_pair;
        swapped.swap(0, 1);
        let t2 = gb(vec![
            (int(0), vec![FieldElement::from_int(7)]),
            (rat(1, 2), swapped),
        ]);
        let v1 = cc_nonbasic_component(&gl3, &basic3, &bp, &t1, &p5).unwrap();
        let v2 = cc_nonbasic_component(&gl3, &basic3, &bp, &t2, &p5).unwrap();
        assert_eq!(v1, v2);
    }

    #[test]
    fn depth_one_gl3_quadratic_block_is_rational() {
        let gl3 = gl(3);
        let p5 = qp(5);
        let basic3 = basic_element(&gl3, &[1]).unwrap();
        let bp = KottwitzPoint::from_newton(
            &gl3,
            RationalCochar(vec![rat(1, 2), rat(1, 2), int(0)]),
        )
        .unwrap();
        // the quaternionic block carries a conjugate pair with
        // half-integral valuation; individual norm factors would be
        // irrational but the Galois-stable products are not
        let t = gb(vec![
            (int(0), vec![FieldElement::from_int(3)]),
            (
                rat(1, 2),
                vec![
                    FieldElement::quadratic(int(0), int(1), int(5)).unwrap(),
                    FieldElement::quadratic(int(0), int(-1), int(5)).unwrap(),
                ],
            ),
        ]);
        let v = cc_nonbasic_component(&gl3, &basic3, &bp, &t, &p5).unwrap();
        // the literal two-product expression, computed independently here
        let slots = t.slot_values();
        let pos = gl3.parabolic_roots(&bp.nu, ParabolicSign::Positive).unwrap();
        let neg = gl3.parabolic_roots(&bp.nu, ParabolicSign::Negative).unwrap();
        let all: Vec<Vec<i64>> = pos.iter().cloned().chain(neg.iter().cloned()).collect();
        let full = one_minus_product(&all, &slots).unwrap().norm(&p5).unwrap();
        let neg_only = one_minus_product(&neg, &slots).unwrap().norm(&p5).unwrap();
        assert_eq!(v, full - neg_only);
    }
}
