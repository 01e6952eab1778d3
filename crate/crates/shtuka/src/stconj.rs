//! Strongly regular classes of `GL(n)` as eigenvalue data, their stable
//! transfers to the groups `G_b(F)`, the torus-bundle invariant of a
//! transfer, and the sets of relevant triples `(g, g', lambda)` bounded by
//! a cocharacter `mu`.
//!
//! A strongly regular element of `GL(n)` is one with pairwise distinct
//! nonzero eigenvalues (its centralizer is then a maximal torus).  Two
//! torus shapes are supported: the split torus (all eigenvalues in F) and,
//! for `GL(2)`, the quadratic torus with a Galois-conjugate eigenvalue
//! pair `a +/- b sqrt(d)`.
//!
//! Conventions.  Slope blocks of `G_b` are listed in ascending slope order;
//! for the split torus the invariant of a transfer is the integer vector
//! whose i-th entry is the degree (= slope) of the line carrying the i-th
//! eigenvalue of `g`.

use crate::error::Error;
use crate::exactnum::FieldElement;
use crate::kottwitz::KottwitzPoint;
use crate::rootdata::{Cochar, GroupKind, RootDatum};
use crate::weights::WeightMultiplicityTable;
use crate::Result;
use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Torus shape of a strongly regular class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorusKind {
    Split,
    Quadratic {
        #[serde(with = "crate::ratjson")]
        d: BigRational,
    },
}

/// A strongly regular conjugacy class, given by its eigenvalue list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SRElement {
    pub rank: usize,
    pub eigenvalues: Vec<FieldElement>,
    pub kind: TorusKind,
}

impl SRElement {
    /// A split class: all eigenvalues in F, pairwise distinct and nonzero.
    pub fn split(datum: &RootDatum, eigenvalues: Vec<FieldElement>) -> Result<Self> {
        if datum.kind != GroupKind::GeneralLinear {
            return Err(Error::UnsupportedGroup(
                "strongly regular classes are modeled for GL(n) only".into(),
            ));
        }
        if eigenvalues.len() != datum.rank {
            return Err(Error::RankMismatch {
                expected: datum.rank,
                got: eigenvalues.len(),
            });
        }
        for ev in &eigenvalues {
            if ev.is_zero() {
                return Err(Error::ZeroEigenvalue);
            }
            if !matches!(ev, FieldElement::Rat(_)) {
                return Err(Error::Invalid(
                    "split classes must have rational eigenvalues".into(),
                ));
            }
        }
        for (i, a) in eigenvalues.iter().enumerate() {
            for b in eigenvalues.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::NotRegular(format!("repeated eigenvalue {a}")));
                }
            }
        }
        Ok(SRElement {
            rank: datum.rank,
            eigenvalues,
            kind: TorusKind::Split,
        })
    }

    /// The elliptic class of `GL(2)` with eigenvalues `a +/- b sqrt(d)`,
    /// `b != 0` and `d` a rational non-square.
    ///
    /// Whether `F(sqrt(d))` is genuinely a field (rather than split) cannot
    /// always be decided from the numerical invariants of F alone; the
    /// caller asserts ellipticity by choosing this constructor.
    pub fn quadratic(
        datum: &RootDatum,
        a: BigRational,
        b: BigRational,
        d: BigRational,
    ) -> Result<Self> {
        if datum.kind != GroupKind::GeneralLinear || datum.rank != 2 {
            return Err(Error::UnsupportedTorus(
                "quadratic tori are modeled for GL(2) only".into(),
            ));
        }
        if b.is_zero() {
            return Err(Error::NotRegular(
                "b = 0: the class is split, not quadratic".into(),
            ));
        }
        let ev = FieldElement::quadratic(a.clone(), b.clone(), d.clone())?;
        let conj = ev.conjugate();
        if ev.is_zero() || conj.is_zero() || ev.galois_norm().is_zero() {
            return Err(Error::ZeroEigenvalue);
        }
        Ok(SRElement {
            rank: 2,
            eigenvalues: vec![ev, conj],
            kind: TorusKind::Quadratic { d },
        })
    }

    pub fn is_split(&self) -> bool {
        matches!(self.kind, TorusKind::Split)
    }

    /// Eigenvalues as rationals, when the class is split.
    pub fn rational_eigenvalues(&self) -> Option<Vec<BigRational>> {
        self.eigenvalues
            .iter()
            .map(|ev| match ev {
                FieldElement::Rat(r) => Some(r.clone()),
                FieldElement::Quad { .. } => None,
            })
            .collect()
    }
}

/// Class in the Galois coinvariants `X_*(T)_Gamma` of the centralizer
/// torus: the lattice itself for split T, and its quotient `Z` (by the
/// coordinate swap) for the quadratic torus of `GL(2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorusClass {
    Split(Vec<i64>),
    Quadratic(i64),
}

/// The map `beta_T : X_*(T) -> X_*(T)_Gamma`, identifying `B(T)` with the
/// coinvariants: the identity for split T, the coordinate sum for the
/// quadratic torus of `GL(2)`.
pub fn beta_t(lambda: &Cochar, kind: &TorusKind) -> Result<TorusClass> {
    match kind {
        TorusKind::Split => Ok(TorusClass::Split(lambda.0.clone())),
        TorusKind::Quadratic { .. } => {
            if lambda.rank() != 2 {
                return Err(Error::UnsupportedTorus(format!(
                    "quadratic torus has rank 2, got rank {}",
                    lambda.rank()
                )));
            }
            Ok(TorusClass::Quadratic(lambda.sum()))
        }
    }
}

/// One slope block of a transferred element: the block slope and the
/// indices (into `g.eigenvalues`) of the eigenvalues it carries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AssignedBlock {
    #[serde(with = "crate::ratjson")]
    pub slope: BigRational,
    pub eigenvalue_indices: Vec<usize>,
}

/// A stable transfer of `g` to `G_b(F)`: an assignment of the eigenvalues
/// to the slope blocks of `b`, one representative per `G_b(F)`-conjugacy
/// class (indices within a block are kept in input order).  Blocks are in
/// ascending slope order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transfer {
    pub blocks: Vec<AssignedBlock>,
}

impl Transfer {
    /// Realized eigenvalue lists per block, ascending slope.
    pub fn realize(&self, g: &SRElement) -> Vec<(BigRational, Vec<FieldElement>)> {
        self.blocks
            .iter()
            .map(|b| {
                (
                    b.slope.clone(),
                    b.eigenvalue_indices
                        .iter()
                        .map(|&i| g.eigenvalues[i].clone())
                        .collect(),
                )
            })
            .collect()
    }
}

/// Slope blocks of `b` in ascending order as (slope, multiplicity) pairs.
fn ascending_blocks(b: &KottwitzPoint) -> Vec<(BigRational, usize)> {
    let mut blocks: Vec<(BigRational, usize)> = Vec::new();
    for s in b.nu.0.iter().rev() {
        match blocks.last_mut() {
            Some((slope, mult)) if slope == s => *mult += 1,
            _ => blocks.push((s.clone(), 1)),
        }
    }
    blocks
}

/// All stable transfers of `g` into `G_b(F)`, up to conjugacy in
/// `G_b(F)`.  Empty when the centralizer torus does not embed: a split
/// torus never meets a block of non-integral slope, and the quadratic
/// torus of `GL(2)` embeds only when `b` has a single block of size 2.
pub fn stable_transfers(g: &SRElement, b: &KottwitzPoint) -> Result<Vec<Transfer>> {
    if b.nu.rank() != g.rank {
        return Err(Error::RankMismatch {
            expected: g.rank,
            got: b.nu.rank(),
        });
    }
    let blocks = ascending_blocks(b);
    match &g.kind {
        TorusKind::Split => {
            if blocks.iter().any(|(slope, _)| !slope.is_integer()) {
                return Ok(Vec::new());
            }
            // distribute eigenvalue indices among blocks, sizes fixed
            let mut transfers = Vec::new();
            let indices: Vec<usize> = (0..g.rank).collect();
            distribute(&indices, &blocks, &mut Vec::new(), &mut transfers);
            transfers.sort();
            Ok(transfers)
        }
        TorusKind::Quadratic { .. } => {
            if blocks.len() == 1 && blocks[0].1 == 2 {
                Ok(vec![Transfer {
                    blocks: vec![AssignedBlock {
                        slope: blocks[0].0.clone(),
                        eigenvalue_indices: vec![0, 1],
                    }],
                }])
            } else {
                Ok(Vec::new())
            }
        }
    }
}

fn distribute(
    remaining: &[usize],
    blocks: &[(BigRational, usize)],
    chosen: &mut Vec<AssignedBlock>,
    out: &mut Vec<Transfer>,
) {
    let Some(((slope, mult), rest)) = blocks.split_first() else {
        if remaining.is_empty() {
            out.push(Transfer {
                blocks: chosen.clone(),
            });
        }
        return;
    };
    for combo in remaining.iter().copied().combinations(*mult) {
        let left: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|i| !combo.contains(i))
            .collect();
        chosen.push(AssignedBlock {
            slope: slope.clone(),
            eigenvalue_indices: combo,
        });
        distribute(&left, rest, chosen, out);
        chosen.pop();
    }
}

/// The isomorphism class of the `T`-bundle attached to a transfer: for
/// split `T` the vector of line degrees indexed by `g`'s eigenvalue order;
/// for the quadratic torus the total degree in `X_*(T)_Gamma = Z`.
pub fn inv_b(g: &SRElement, transfer: &Transfer, b: &KottwitzPoint) -> Result<TorusClass> {
    match &g.kind {
        TorusKind::Split => {
            let mut degrees = vec![None; g.rank];
            for block in &transfer.blocks {
                if !block.slope.is_integer() {
                    return Err(Error::IncompatiblePair(
                        "split transfer into a non-integral slope block".into(),
                    ));
                }
                let deg = block.slope.to_integer().to_i64().ok_or_else(|| {
                    Error::GuardExceeded("slope overflows i64".into())
                })?;
                for &i in &block.eigenvalue_indices {
                    degrees[i] = Some(deg);
                }
            }
            let degrees: Option<Vec<i64>> = degrees.into_iter().collect();
            degrees
                .map(TorusClass::Split)
                .ok_or_else(|| Error::IncompatiblePair("transfer misses an eigenvalue".into()))
        }
        TorusKind::Quadratic { .. } => Ok(TorusClass::Quadratic(b.degree())),
    }
}

/// A relevant triple: a transfer `g'` of `g` to `G_b(F)` together with a
/// cocharacter `lambda` whose class in `X_*(T)_Gamma` equals the
/// torus-bundle invariant of the pair, and whose dominant representative
/// is bounded by `mu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelTriple {
    pub transfer: Transfer,
    pub lambda: Cochar,
    pub inv: TorusClass,
}

/// Build all relevant triples for `(g, b)` bounded by `mu`.
pub fn build_rel(
    datum: &RootDatum,
    g: &SRElement,
    b: &KottwitzPoint,
    mu: &Cochar,
) -> Result<Vec<RelTriple>> {
    if !datum.is_dominant_integral(mu)? {
        return Err(Error::NonDominant(mu.to_string()));
    }
    let mu_rat = mu.to_rational();
    // lambda <= mu fails structurally (not an error) when the pi1 images
    // differ: Rel is then simply empty for this b
    let bounded = |lambda: &Cochar| -> Result<bool> {
        let dom = datum.dominant_sort(lambda).to_rational();
        match datum.dominance_leq(&dom, &mu_rat) {
            Ok(v) => Ok(v),
            Err(Error::IncomparableComponents) => Ok(false),
            Err(e) => Err(e),
        }
    };
    let mut triples = Vec::new();
    for transfer in stable_transfers(g, b)? {
        let inv = inv_b(g, &transfer, b)?;
        match &inv {
            TorusClass::Split(vec) => {
                // beta_T is the identity: lambda = inv, kept iff its
                // dominant representative is bounded by mu
                let lambda = Cochar(vec.clone());
                if bounded(&lambda)? {
                    triples.push(RelTriple {
                        transfer,
                        lambda,
                        inv,
                    });
                }
            }
            TorusClass::Quadratic(total) => {
                // preimages of the total degree under the sum map Z^2 -> Z,
                // bounded by mu after dominant sorting
                let total = *total;
                let mu1 = mu.0[0];
                let lo = if total % 2 == 0 { total / 2 } else { (total + 1) / 2 };
                for hi in lo..=mu1 {
                    let pair = (hi, total - hi);
                    let mut lambdas = vec![Cochar(vec![pair.0, pair.1])];
                    if pair.0 != pair.1 {
                        lambdas.push(Cochar(vec![pair.1, pair.0]));
                    }
                    for lambda in lambdas {
                        if bounded(&lambda)? {
                            triples.push(RelTriple {
                                transfer: transfer.clone(),
                                lambda,
                                inv: inv.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    // canonical deterministic order
    triples.sort_by(|a, b| (&a.transfer, &a.lambda).cmp(&(&b.transfer, &b.lambda)));
    Ok(triples)
}

/// Weight multiplicity attached to a triple's lambda.
pub fn triple_weight_multiplicity(
    datum: &RootDatum,
    table: &WeightMultiplicityTable,
    triple: &RelTriple,
) -> u64 {
    table.multiplicity(datum, &triple.lambda)
}
