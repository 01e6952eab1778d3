//! Based root data of split reductive groups, with Weyl groups, the
//! canonical pairing, the dominance order, and the parabolic root sets cut
//! out by a rational cocharacter.
//!
//! `GL(n)` is realized in standard coordinates (cocharacters are integer
//! vectors indexed by eigenvalue slots) and is the group with full support
//! downstream.  `SL(n)`, `Sp(2n)` and `SO(n)` are available as data: their
//! root systems, Weyl groups, pairings, and dominance order all work, but
//! the stable-conjugacy layer is GL-specific.

use crate::error::Error;
use crate::linalg;
use crate::ratjson;
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// An integral cocharacter in the coordinates of the ambient datum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cochar(pub Vec<i64>);

impl Cochar {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn to_rational(&self) -> RationalCochar {
        RationalCochar(self.0.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl std::fmt::Display for Cochar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A rational cocharacter; Newton points live here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalCochar(#[serde(with = "ratjson::vec")] pub Vec<BigRational>);

impl RationalCochar {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |a, x| a + x)
    }

    pub fn as_integral(&self) -> Option<Cochar> {
        self.0
            .iter()
            .map(|x| {
                if x.is_integer() {
                    i64::try_from(x.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<i64>>>()
            .map(Cochar)
    }
}

impl std::fmt::Display for RationalCochar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Finitely generated abelian group `pi1(G) = X_*(T) / (coroot lattice)`,
/// together with the map sending a cocharacter to its class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1 {
    pub free_rank: usize,
    /// Nontrivial invariant factors of the torsion part.
    pub torsion: Vec<i64>,
    map: KappaMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum KappaMap {
    /// GL(n): total degree.
    CoordinateSum,
    /// SO(n) in standard coordinates: coordinate sum mod 2.
    SumMod2,
    /// Simply connected groups: trivial quotient.
    Trivial,
}

impl Pi1 {
    /// Class of a cocharacter, as coordinates in the presentation
    /// `Z^free_rank (+) Z/d_1 (+) ...` (free coordinates first).
    pub fn kappa(&self, lambda: &Cochar) -> Vec<i64> {
        match self.map {
            KappaMap::CoordinateSum => vec![lambda.sum()],
            KappaMap::SumMod2 => vec![lambda.sum().rem_euclid(2)],
            KappaMap::Trivial => Vec::new(),
        }
    }

    /// Image of a rational cocharacter in `pi1 (x) Q` (torsion coordinates
    /// are dropped).
    pub fn kappa_rational(&self, nu: &RationalCochar) -> Vec<BigRational> {
        match self.map {
            KappaMap::CoordinateSum => vec![nu.sum()],
            KappaMap::SumMod2 | KappaMap::Trivial => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    GeneralLinear,
    SpecialLinear,
    Symplectic,
    Orthogonal,
}

/// Based root datum of a split reductive group.
///
/// Roots are character vectors, coroots cocharacter vectors, in dual bases
/// so the canonical pairing is the dot product.  Only the positive half is
/// stored; negatives are the negated lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub name: String,
    pub kind: GroupKind,
    pub rank: usize,
    positive_roots: Vec<Vec<i64>>,
    positive_coroots: Vec<Vec<i64>>,
    simple_indices: Vec<usize>,
    pub pi1: Pi1,
}

/// Which half of the root set a rational cocharacter selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParabolicSign {
    Positive,
    Negative,
}

impl RootDatum {
    /// `GL(n)` in standard coordinates: roots `e_i - e_j`, `pi1 = Z` via
    /// the coordinate sum.
    pub fn gl(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("GL(0) has no torus".into()));
        }
        let mut positive_roots = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v[j] = -1;
                positive_roots.push(v);
            }
        }
        let positive_coroots = positive_roots.clone();
        let simple_indices = (0..n.saturating_sub(1))
            .map(|i| {
                positive_roots
                    .iter()
                    .position(|r| {
                        r.iter().enumerate().all(|(k, &x)| {
                            x == i64::from(k == i) - i64::from(k == i + 1)
                        })
                    })
                    .unwrap()
            })
            .collect();
        let datum = RootDatum {
            name: format!("GL{n}"),
            kind: GroupKind::GeneralLinear,
            rank: n,
            positive_roots,
            positive_coroots,
            simple_indices,
            pi1: Pi1 {
                free_rank: 1,
                torsion: Vec::new(),
                map: KappaMap::CoordinateSum,
            },
        };
        datum.validate()?;
        Ok(datum)
    }

    /// `SL(n)` in the simply connected realization: cocharacter lattice has
    /// the simple coroots as standard basis, roots are the rows of the
    /// Cartan matrix.  `pi1` is trivial.
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("SL(n) needs n >= 2".into()));
        }
        let rank = n - 1;
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let simple_coroots: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::from_simples(format!("SL{n}"), GroupKind::SpecialLinear, cartan, simple_coroots)
    }

    /// `Sp(2n)` (type C_n), simply connected realization.
    pub fn sp(two_n: usize) -> Result<Self> {
        if two_n < 2 || two_n % 2 != 0 {
            return Err(Error::Invalid("Sp(2n) needs even rank >= 2".into()));
        }
        let n = two_n / 2;
        // root vectors over the coroot basis: entry [i][j] = <alpha_i, alpha_j_vee>;
        // the long simple root alpha_n of C_n pairs to -2 against alpha_{n-1}_vee
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i == n - 1 && j + 2 == n {
                            -2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let simple_coroots: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::from_simples(format!("Sp{two_n}"), GroupKind::Symplectic, cartan, simple_coroots)
    }

    /// Split `SO(n)` in standard coordinates (types B and D); `pi1 = Z/2`.
    pub fn so(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid("SO(n) needs n >= 3".into()));
        }
        let m = n / 2;
        let mut simple_roots: Vec<Vec<i64>> = Vec::new();
        for i in 0..m.saturating_sub(1) {
            let mut v = vec![0i64; m];
            v[i] = 1;
            v[i + 1] = -1;
            simple_roots.push(v);
        }
        if n % 2 == 1 {
            // B_m: short simple root e_m, coroot 2 e_m
            let mut v = vec![0i64; m];
            v[m - 1] = 1;
            simple_roots.push(v);
        } else {
            // D_m: simple root e_{m-1} + e_m
            if m < 2 {
                return Err(Error::Invalid("SO(2) is a torus, not supported".into()));
            }
            let mut v = vec![0i64; m];
            v[m - 2] = 1;
            v[m - 1] = 1;
            simple_roots.push(v);
        }
        let simple_coroots: Vec<Vec<i64>> = simple_roots
            .iter()
            .enumerate()
            .map(|(i, r)| {
                if n % 2 == 1 && i == m - 1 {
                    r.iter().map(|&x| 2 * x).collect()
                } else {
                    r.clone()
                }
            })
            .collect();
        let mut datum = Self::from_simples_raw(
            format!("SO{n}"),
            GroupKind::Orthogonal,
            simple_roots,
            simple_coroots,
        )?;
        datum.pi1 = Pi1 {
            free_rank: 0,
            torsion: vec![2],
            map: KappaMap::SumMod2,
        };
        datum.validate()?;
        Ok(datum)
    }

    /// Parse a name like "GL4", "SL3", "Sp4", "SO5".
    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let digits: String = lower.chars().filter(|c| c.is_ascii_digit()).collect();
        let n: usize = digits
            .parse()
            .map_err(|_| Error::UnsupportedGroup(name.into()))?;
        if lower.starts_with("gl") {
            Self::gl(n)
        } else if lower.starts_with("sl") {
            Self::sl(n)
        } else if lower.starts_with("sp") {
            Self::sp(n)
        } else if lower.starts_with("so") {
            Self::so(n)
        } else {
            Err(Error::UnsupportedGroup(name.into()))
        }
    }

    fn from_simples(
        name: String,
        kind: GroupKind,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let datum = Self::from_simples_raw(name, kind, simple_roots, simple_coroots)?;
        datum.validate()?;
        Ok(datum)
    }

    /// Generate all positive roots from the simple ones by reflections.
    fn from_simples_raw(
        name: String,
        kind: GroupKind,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let rank = simple_roots
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::Invalid("no simple roots".into()))?;
        let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = simple_roots
            .iter()
            .cloned()
            .zip(simple_coroots.iter().cloned())
            .collect();
        while let Some((root, coroot)) = queue.pop_front() {
            if pairs.iter().any(|(r, _)| *r == root) || pairs.iter().any(|(r, _)| {
                r.iter().zip(&root).all(|(a, b)| *a == -b)
            }) {
                continue;
            }
            pairs.push((root.clone(), coroot.clone()));
            for (sr, sc) in simple_roots.iter().zip(&simple_coroots) {
                // s_i(root) = root - <root, alpha_i^vee> alpha_i
                let n1 = linalg::dot_i64(&root, sc);
                let new_root: Vec<i64> =
                    root.iter().zip(sr).map(|(&x, &a)| x - n1 * a).collect();
                let n2 = linalg::dot_i64(sr, &coroot);
                let new_coroot: Vec<i64> =
                    coroot.iter().zip(sc).map(|(&x, &a)| x - n2 * a).collect();
                queue.push_back((new_root, new_coroot));
            }
            if pairs.len() > 10_000 {
                return Err(Error::GuardExceeded("root system too large".into()));
            }
        }
        // keep the positive half: positive means the first nonzero
        // coefficient over the simple basis is positive; since every root is
        // +/- a positive root, select the representative whose first nonzero
        // coordinate in the simple-root expansion is positive.  For the
        // realizations used here it is equivalent and simpler to pick the
        // member of each +/- pair that appears as a nonnegative combination
        // of simple roots.
        let mut positive_roots = Vec::new();
        let mut positive_coroots = Vec::new();
        for (root, coroot) in &pairs {
            if Self::is_nonneg_combination(root, &simple_roots) {
                positive_roots.push(root.clone());
                positive_coroots.push(coroot.clone());
            } else {
                positive_roots.push(root.iter().map(|x| -x).collect());
                positive_coroots.push(coroot.iter().map(|x| -x).collect());
            }
        }
        // dedupe while keeping root/coroot alignment
        let mut seen: Vec<Vec<i64>> = Vec::new();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        for (r, c) in positive_roots.into_iter().zip(positive_coroots) {
            if !seen.contains(&r) {
                seen.push(r.clone());
                roots.push(r);
                coroots.push(c);
            }
        }
        let simple_indices = simple_roots
            .iter()
            .map(|s| roots.iter().position(|r| r == s).expect("simple root present"))
            .collect();
        Ok(RootDatum {
            name,
            kind,
            rank,
            positive_roots: roots,
            positive_coroots: coroots,
            simple_indices,
            pi1: Pi1 {
                free_rank: 0,
                torsion: Vec::new(),
                map: KappaMap::Trivial,
            },
        })
    }

    fn is_nonneg_combination(v: &[i64], simple_roots: &[Vec<i64>]) -> bool {
        let cols: Vec<Vec<BigRational>> = simple_roots
            .iter()
            .map(|s| s.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
            .collect();
        let target: Vec<BigRational> =
            v.iter().map(|&x| BigRational::from(BigInt::from(x))).collect();
        match linalg::solve_columns(&cols, &target) {
            Some(coeffs) => coeffs.iter().all(|c| !c.is_negative()),
            None => false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.positive_roots.len() != self.positive_coroots.len() {
            return Err(Error::Invalid("root/coroot lists differ in length".into()));
        }
        for (r, c) in self.positive_roots.iter().zip(&self.positive_coroots) {
            if r.len() != self.rank || c.len() != self.rank {
                return Err(Error::Invalid("root vector of wrong rank".into()));
            }
        }
        for &i in &self.simple_indices {
            let pairing = linalg::dot_i64(&self.positive_roots[i], &self.positive_coroots[i]);
            if pairing != 2 {
                return Err(Error::Invalid(format!(
                    "<alpha, alpha_vee> = {pairing} != 2 for simple root {i}"
                )));
            }
        }
        // verify the declared pi1 against the Smith invariants of the
        // simple-coroot lattice
        let matrix: Vec<Vec<i64>> = (0..self.rank)
            .map(|row| {
                self.simple_indices
                    .iter()
                    .map(|&i| self.positive_coroots[i][row])
                    .collect()
            })
            .collect();
        let inv = linalg::smith_invariants(matrix);
        let free = inv.iter().filter(|&&d| d == 0).count();
        let torsion: Vec<i64> = inv.iter().copied().filter(|&d| d > 1).collect();
        if free != self.pi1.free_rank || torsion != self.pi1.torsion {
            return Err(Error::Invalid(format!(
                "declared pi1 (free {}, torsion {:?}) does not match lattice invariants (free {free}, torsion {torsion:?})",
                self.pi1.free_rank, self.pi1.torsion
            )));
        }
        Ok(())
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn simple_root_indices(&self) -> &[usize] {
        &self.simple_indices
    }

    /// All roots, positives then negatives, with matching coroots.
    pub fn all_roots(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        let mut out: Vec<(Vec<i64>, Vec<i64>)> = self
            .positive_roots
            .iter()
            .cloned()
            .zip(self.positive_coroots.iter().cloned())
            .collect();
        let negs: Vec<(Vec<i64>, Vec<i64>)> = out
            .iter()
            .map(|(r, c)| {
                (
                    r.iter().map(|x| -x).collect(),
                    c.iter().map(|x| -x).collect(),
                )
            })
            .collect();
        out.extend(negs);
        out
    }

    /// Sum of the positive roots, `2 rho_G`.
    pub fn two_rho(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for r in &self.positive_roots {
            for (x, y) in v.iter_mut().zip(r) {
                *x += y;
            }
        }
        v
    }

    /// Sum of the positive coroots (twice the Weyl vector of the dual
    /// group, which is what weight-multiplicity computations need).
    pub fn two_rho_dual(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for c in &self.positive_coroots {
            for (x, y) in v.iter_mut().zip(c) {
                *x += y;
            }
        }
        v
    }

    /// Canonical pairing of a character vector with a cocharacter.
    pub fn pairing(&self, chi: &[i64], lambda: &Cochar) -> Result<i64> {
        if chi.len() != lambda.rank() {
            return Err(Error::RankMismatch {
                expected: chi.len(),
                got: lambda.rank(),
            });
        }
        Ok(linalg::dot_i64(chi, &lambda.0))
    }

    pub fn pairing_rational(&self, chi: &[i64], nu: &RationalCochar) -> Result<BigRational> {
        if chi.len() != nu.rank() {
            return Err(Error::RankMismatch {
                expected: chi.len(),
                got: nu.rank(),
            });
        }
        Ok(chi
            .iter()
            .zip(&nu.0)
            .fold(BigRational::zero(), |acc, (&c, x)| {
                acc + BigRational::from(BigInt::from(c)) * x
            }))
    }

    /// Whether a rational cocharacter pairs nonnegatively with every simple
    /// root.
    pub fn is_dominant(&self, nu: &RationalCochar) -> Result<bool> {
        for &i in &self.simple_indices {
            if self
                .pairing_rational(&self.positive_roots[i], nu)?
                .is_negative()
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_dominant_integral(&self, lambda: &Cochar) -> Result<bool> {
        self.is_dominant(&lambda.to_rational())
    }

    /// The unique dominant representative of the Weyl orbit, by repeated
    /// simple reflections.  For `GL(n)` this is the descending sort.
    pub fn dominant_sort(&self, lambda: &Cochar) -> Cochar {
        let mut v = lambda.0.clone();
        loop {
            let mut moved = false;
            for &i in &self.simple_indices {
                let n = linalg::dot_i64(&self.positive_roots[i], &v);
                if n < 0 {
                    let coroot = &self.positive_coroots[i];
                    for (x, &c) in v.iter_mut().zip(coroot) {
                        *x -= n * c;
                    }
                    moved = true;
                }
            }
            if !moved {
                return Cochar(v);
            }
        }
    }

    pub fn dominant_sort_rational(&self, nu: &RationalCochar) -> RationalCochar {
        let mut v = nu.0.clone();
        loop {
            let mut moved = false;
            for &i in &self.simple_indices {
                let root = &self.positive_roots[i];
                let n = root
                    .iter()
                    .zip(&v)
                    .fold(BigRational::zero(), |acc, (&c, x)| {
                        acc + BigRational::from(BigInt::from(c)) * x
                    });
                if n.is_negative() {
                    let coroot = &self.positive_coroots[i];
                    for (x, &c) in v.iter_mut().zip(coroot) {
                        *x = &*x - &n * BigRational::from(BigInt::from(c));
                    }
                    moved = true;
                }
            }
            if !moved {
                return RationalCochar(v);
            }
        }
    }

    /// Dominance order on dominant rational cocharacters with equal image
    /// in `pi1 (x) Q`: `a <= b` iff `b - a` is a nonnegative rational
    /// combination of simple coroots.  For `GL(n)` this is the partial-sums
    /// test.
    pub fn dominance_leq(&self, a: &RationalCochar, b: &RationalCochar) -> Result<bool> {
        if a.rank() != self.rank || b.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: a.rank().max(b.rank()),
            });
        }
        if !self.is_dominant(a)? || !self.is_dominant(b)? {
            return Err(Error::NonDominant(format!("{a} or {b}")));
        }
        if self.pi1.kappa_rational(a) != self.pi1.kappa_rational(b) {
            return Err(Error::IncomparableComponents);
        }
        let diff: Vec<BigRational> = b.0.iter().zip(&a.0).map(|(x, y)| x - y).collect();
        let cols: Vec<Vec<BigRational>> = self
            .simple_indices
            .iter()
            .map(|&i| {
                self.positive_coroots[i]
                    .iter()
                    .map(|&x| BigRational::from(BigInt::from(x)))
                    .collect()
            })
            .collect();
        match linalg::solve_columns(&cols, &diff) {
            Some(coeffs) => Ok(coeffs.iter().all(|c| !c.is_negative())),
            None => Err(Error::IncomparableComponents),
        }
    }

    /// Roots pairing strictly positively (or negatively) against a rational
    /// cocharacter: the root sets of the pair of opposite parabolics
    /// attached to a Newton point.
    pub fn parabolic_roots(
        &self,
        nu: &RationalCochar,
        sign: ParabolicSign,
    ) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        for (root, _) in self.all_roots() {
            let v = self.pairing_rational(&root, nu)?;
            let keep = match sign {
                ParabolicSign::Positive => v.is_positive(),
                ParabolicSign::Negative => v.is_negative(),
            };
            if keep {
                out.push(root);
            }
        }
        Ok(out)
    }

    /// The Weyl group as matrices acting on the cocharacter lattice
    /// (column-vector convention), each with the parity of its length.
    pub fn weyl_elements(&self) -> Result<Vec<WeylElement>> {
        let rank = self.rank;
        let identity: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        let gens: Vec<Vec<Vec<i64>>> = self
            .simple_indices
            .iter()
            .map(|&i| {
                let root = &self.positive_roots[i];
                let coroot = &self.positive_coroots[i];
                // s(lambda) = lambda - <root, lambda> coroot
                (0..rank)
                    .map(|r| {
                        (0..rank)
                            .map(|c| i64::from(r == c) - coroot[r] * root[c])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut elements = vec![WeylElement {
            matrix: identity.clone(),
            odd: false,
        }];
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(0);
        while let Some(idx) = queue.pop_front() {
            let current = elements[idx].clone();
            for g in &gens {
                let m = mat_mul(g, &current.matrix);
                if !elements.iter().any(|e| e.matrix == m) {
                    elements.push(WeylElement {
                        matrix: m,
                        odd: !current.odd,
                    });
                    queue.push_back(elements.len() - 1);
                    if elements.len() > 50_000 {
                        return Err(Error::GuardExceeded("Weyl group too large".into()));
                    }
                }
            }
        }
        Ok(elements)
    }

    /// Orbit of a cocharacter under the Weyl group.
    pub fn weyl_orbit(&self, lambda: &Cochar) -> Vec<Cochar> {
        let mut orbit = vec![lambda.0.clone()];
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        queue.push_back(lambda.0.clone());
        while let Some(v) = queue.pop_front() {
            for &i in &self.simple_indices {
                let n = linalg::dot_i64(&self.positive_roots[i], &v);
                let mut w = v.clone();
                for (x, &c) in w.iter_mut().zip(&self.positive_coroots[i]) {
                    *x -= n * c;
                }
                if !orbit.contains(&w) {
                    orbit.push(w.clone());
                    queue.push_back(w);
                }
            }
        }
        orbit.sort_unstable();
        orbit.into_iter().map(Cochar).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    /// Parity of the length: true for odd, i.e. sign -1.
    pub odd: bool,
}

impl WeylElement {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| linalg::dot_i64(row, v))
            .collect()
    }

    pub fn sign(&self) -> i64 {
        if self.odd {
            -1
        } else {
            1
        }
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}
