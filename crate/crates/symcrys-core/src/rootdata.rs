//! Root data: index sets with a symmetric pairing and a fixed-point-free
//! involution, weights, and theta-invariant dominant weights.
//!
//! Infinite index sets are handled through finite windows; a window is always
//! closed under the involution, and enlarging it does not change anything
//! computed at smaller depth (the crystal tests recheck this).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDatumError {
    #[error("window radius must be a positive odd integer, got {0}")]
    EvenRadius(i64),
    #[error("involution fixes index {0}")]
    ThetaFixedPoint(i64),
    #[error("affine cycle length must be >= 2, got {0}")]
    CycleTooShort(i64),
    #[error("parameter relation p0^2 = p1^{exp} is not supported: {reason}")]
    BadRelation { exp: i64, reason: String },
    #[error("unknown index {0}")]
    UnknownIndex(i64),
    #[error("dominant weight is not theta-invariant at index {0}")]
    LambdaNotSymmetric(i64),
    #[error("dominant weight has negative pairing {value} at index {index}")]
    LambdaNegative { index: i64, value: i64 },
}

/// An element of the root lattice, as a finitely supported map
/// `index -> coefficient` in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct Weight(BTreeMap<i64, i64>);

impl Weight {
    pub fn zero() -> Self {
        Weight(BTreeMap::new())
    }

    /// The simple root `alpha_i`.
    pub fn alpha(i: i64) -> Self {
        let mut m = BTreeMap::new();
        m.insert(i, 1);
        Weight(m)
    }

    pub fn from_coords<I: IntoIterator<Item = (i64, i64)>>(coords: I) -> Self {
        let mut m: BTreeMap<i64, i64> = BTreeMap::new();
        for (i, c) in coords {
            if c != 0 {
                let e = m.entry(i).or_insert(0);
                *e += c;
                if *e == 0 {
                    m.remove(&i);
                }
            }
        }
        Weight(m)
    }

    pub fn coeff(&self, i: i64) -> i64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn coords(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of absolute coefficients (the height of the weight).
    pub fn height(&self) -> i64 {
        self.0.values().map(|c| c.abs()).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (i, c) in &other.0 {
            let e = m.entry(*i).or_insert(0);
            *e += c;
            if *e == 0 {
                m.remove(i);
            }
        }
        Weight(m)
    }

    pub fn neg(&self) -> Self {
        Weight(self.0.iter().map(|(i, c)| (*i, -c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Weight(self.0.iter().map(|(i, c)| (*i, c * k)).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in &self.0 {
            if first {
                first = false;
            } else {
                write!(f, "+")?;
            }
            write!(f, "{c}*a[{i}]")?;
        }
        Ok(())
    }
}

/// The theta-symmetrization `beta + theta(beta)` of a weight; invariant
/// under theta by construction. This is the grading seen by the `T_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct SymWeight(pub Weight);

impl fmt::Display for SymWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How a root datum was constructed (echoed into outputs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootKind {
    /// A finite path (type A) on explicit labels, theta = reversal.
    FiniteAPath,
    /// Odd integers in `[-radius, radius]`, edges between labels at
    /// distance 2, theta = negation.
    OddWindow { radius: i64 },
    /// Cycle of even length `ell`, realized on odd residues modulo `2 ell`.
    AffineCycle { ell: i64 },
    /// Two chains or cycles swapped by theta; `merged` records a declared
    /// relation `p0^2 = p1^{2m}` that collapses them into one component.
    DoubledOrbit {
        ell: Option<i64>,
        window: i64,
        merged: Option<i64>,
    },
}

/// A multiplicative-orbit description for [`RootDatum::from_multiplicative_orbit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    /// Odd powers of the Hecke parameter: a chain or a cycle.
    ZOrbitOddPowers,
    /// Both families `p0 p1^{2n}` and `p0^{-1} p1^{2n}`; `relation`
    /// declares `p0^2 = p1^e` when the parameters are multiplicatively
    /// dependent.
    DoubledOrbit { relation: Option<i64> },
}

/// Index set `I`, symmetric pairing `(alpha_i, alpha_j)`, and involution
/// `theta` with no fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    indices: Vec<i64>,
    pairing: BTreeMap<(i64, i64), i64>,
    theta: BTreeMap<i64, i64>,
    kind: RootKind,
    /// Labels carrying the pairing 1 in the doubled-orbit dominant weight.
    lambda_support: Option<(i64, i64)>,
}

impl RootDatum {
    fn build(
        mut indices: Vec<i64>,
        pairing: BTreeMap<(i64, i64), i64>,
        theta: BTreeMap<i64, i64>,
        kind: RootKind,
        lambda_support: Option<(i64, i64)>,
    ) -> Result<Self, RootDatumError> {
        indices.sort_unstable();
        indices.dedup();
        let rd = RootDatum {
            indices,
            pairing,
            theta,
            kind,
            lambda_support,
        };
        rd.validate()?;
        Ok(rd)
    }

    fn validate(&self) -> Result<(), RootDatumError> {
        for &i in &self.indices {
            let ti = self.theta(i);
            if ti == i {
                return Err(RootDatumError::ThetaFixedPoint(i));
            }
            if !self.indices.contains(&ti) || self.theta(ti) != i {
                return Err(RootDatumError::UnknownIndex(ti));
            }
            let d = self.pairing(i, i);
            assert!(
                d > 0 && d % 2 == 0,
                "(a_i, a_i)/2 must be a positive integer"
            );
            for &j in &self.indices {
                assert_eq!(
                    self.pairing(i, j),
                    self.pairing(j, i),
                    "pairing must be symmetric"
                );
                assert_eq!(
                    self.pairing(self.theta(i), self.theta(j)),
                    self.pairing(i, j),
                    "theta must be an isometry"
                );
                if i != j {
                    let num = 2 * self.pairing(i, j);
                    assert!(
                        num <= 0 && num % d == 0,
                        "(a_i^v, a_j) must be a nonpositive integer"
                    );
                }
            }
        }
        Ok(())
    }

    /// The odd-integer window `{-radius, ..., -1, 1, ..., radius}` with
    /// `(alpha_i, alpha_j) = 2, -1 (|i-j| = 2), 0` and `theta(i) = -i`.
    pub fn odd_window(radius: i64) -> Result<Self, RootDatumError> {
        if radius < 1 || radius % 2 == 0 {
            return Err(RootDatumError::EvenRadius(radius));
        }
        let indices: Vec<i64> = (-radius..=radius).filter(|k| k % 2 != 0).collect();
        let mut pairing = BTreeMap::new();
        for &i in &indices {
            for &j in &indices {
                let v = if i == j {
                    2
                } else if (i - j).abs() == 2 {
                    -1
                } else {
                    0
                };
                if v != 0 {
                    pairing.insert((i, j), v);
                }
            }
        }
        let theta = indices.iter().map(|&i| (i, -i)).collect();
        Self::build(
            indices,
            pairing,
            theta,
            RootKind::OddWindow { radius },
            None,
        )
    }

    /// A finite type-A path on the given labels (in path order), with theta
    /// reversing the path. The label count must be even, otherwise the
    /// reversal fixes the middle vertex.
    pub fn finite_a_path(labels: &[i64]) -> Result<Self, RootDatumError> {
        if labels.len() % 2 != 0 {
            return Err(RootDatumError::ThetaFixedPoint(labels[labels.len() / 2]));
        }
        let mut pairing = BTreeMap::new();
        for (k, &i) in labels.iter().enumerate() {
            pairing.insert((i, i), 2);
            if k + 1 < labels.len() {
                let j = labels[k + 1];
                pairing.insert((i, j), -1);
                pairing.insert((j, i), -1);
            }
        }
        let n = labels.len();
        let theta = (0..n).map(|k| (labels[k], labels[n - 1 - k])).collect();
        Self::build(labels.to_vec(), pairing, theta, RootKind::FiniteAPath, None)
    }

    /// Cycle of length `ell` on odd residues modulo `2 ell`, theta = negation.
    /// Only even `ell` admits a fixed-point-free involution: any involutive
    /// automorphism of an odd cycle fixes a vertex.
    pub fn affine_cycle(ell: i64) -> Result<Self, RootDatumError> {
        Self::affine_cycle_with_support(ell, None)
    }

    fn affine_cycle_with_support(
        ell: i64,
        lambda_support: Option<(i64, i64)>,
    ) -> Result<Self, RootDatumError> {
        if ell < 2 {
            return Err(RootDatumError::CycleTooShort(ell));
        }
        if ell % 2 != 0 {
            // theta(ell) = -ell = ell mod 2*ell
            return Err(RootDatumError::ThetaFixedPoint(ell));
        }
        let m = 2 * ell;
        let indices: Vec<i64> = (0..m).filter(|k| k % 2 != 0).collect();
        let mut pairing = BTreeMap::new();
        for &i in &indices {
            for &j in &indices {
                let mut v = if i == j { 2 } else { 0 };
                if (i + 2).rem_euclid(m) == j {
                    v -= 1;
                }
                if (j + 2).rem_euclid(m) == i {
                    v -= 1;
                }
                if v != 0 {
                    pairing.insert((i, j), v);
                }
            }
        }
        let theta = indices.iter().map(|&i| (i, (-i).rem_euclid(m))).collect();
        Self::build(
            indices,
            pairing,
            theta,
            RootKind::AffineCycle { ell },
            lambda_support,
        )
    }

    /// Builds a datum from a multiplicative orbit description: the Z-orbit
    /// of odd parameter powers (a chain, truncated by `window`, or a cycle
    /// of length `ell`), or the doubled orbit with an optional declared
    /// relation `p0^2 = p1^e`.
    pub fn from_multiplicative_orbit(
        kind: OrbitKind,
        ell: Option<i64>,
        window: i64,
    ) -> Result<Self, RootDatumError> {
        match kind {
            OrbitKind::ZOrbitOddPowers => match ell {
                None => Self::odd_window(window),
                Some(l) => Self::affine_cycle(l),
            },
            OrbitKind::DoubledOrbit { relation } => Self::doubled_orbit(ell, window, relation),
        }
    }

    /// The doubled multiplicative orbit `{p0 p1^{2n}} U {p0^{-1} p1^{2n}}`,
    /// on abstract integer labels.
    ///
    /// * `relation = None`: the two families are disjoint; they form two
    ///   chains (`ell = None`, truncated to `|n| <= window`) or two cycles of
    ///   length `ell`, swapped by theta.
    /// * `relation = Some(e)` declares `p0^2 = p1^e`. An exponent divisible
    ///   by 4 is rejected (theta would fix a vertex); `e = 2m` with `m` odd
    ///   merges the families into a single chain or cycle.
    pub fn doubled_orbit(
        ell: Option<i64>,
        window: i64,
        relation: Option<i64>,
    ) -> Result<Self, RootDatumError> {
        match relation {
            None => Self::doubled_orbit_generic(ell, window),
            Some(e) if e % 2 != 0 => Err(RootDatumError::BadRelation {
                exp: e,
                reason: "p0 would be a half-integer power of p1".into(),
            }),
            Some(e) if (e / 2) % 2 == 0 => Err(RootDatumError::BadRelation {
                exp: e,
                reason: format!("p0^2 = p1^{e} makes theta fix the vertex p0*p1^-{}", e / 2),
            }),
            Some(e) => {
                let m = e / 2; // odd
                match ell {
                    None => {
                        // Single chain; odd labels 2n + m, theta = negation.
                        let radius = 2 * window.max(0) + m.abs();
                        let rd = Self::odd_window(radius)?;
                        Ok(RootDatum {
                            kind: RootKind::DoubledOrbit {
                                ell: None,
                                window,
                                merged: Some(m),
                            },
                            lambda_support: Some((m, -m)),
                            ..rd
                        })
                    }
                    Some(l) => {
                        let p0_label = m.rem_euclid(2 * l);
                        let p0_inv_label = (-m).rem_euclid(2 * l);
                        let rd =
                            Self::affine_cycle_with_support(l, Some((p0_label, p0_inv_label)))?;
                        Ok(RootDatum {
                            kind: RootKind::DoubledOrbit {
                                ell: Some(l),
                                window,
                                merged: Some(m),
                            },
                            ..rd
                        })
                    }
                }
            }
        }
    }

    fn doubled_orbit_generic(ell: Option<i64>, window: i64) -> Result<Self, RootDatumError> {
        // Family A (p0 p1^{2n}) on even labels 2n, family B (p0^{-1} p1^{2n})
        // on odd labels 2n + 1; theta(A_n) = B_{-n}.
        let ns: Vec<i64> = match ell {
            None => (-window..=window).collect(),
            Some(l) => {
                if l < 2 {
                    return Err(RootDatumError::CycleTooShort(l));
                }
                (0..l).collect()
            }
        };
        let a = |n: i64| 2 * n;
        let b = |n: i64| 2 * n + 1;
        let mut indices: Vec<i64> = Vec::new();
        for &n in &ns {
            indices.push(a(n));
            indices.push(b(n));
        }
        let bond = |n1: i64, n2: i64| -> i64 {
            match ell {
                None => {
                    if (n1 - n2).abs() == 1 {
                        -1
                    } else {
                        0
                    }
                }
                Some(l) => {
                    let mut v = 0;
                    if (n1 + 1).rem_euclid(l) == n2.rem_euclid(l) {
                        v -= 1;
                    }
                    if (n2 + 1).rem_euclid(l) == n1.rem_euclid(l) {
                        v -= 1;
                    }
                    v
                }
            }
        };
        let mut pairing = BTreeMap::new();
        for &n1 in &ns {
            for &n2 in &ns {
                let v = if n1 == n2 { 2 } else { bond(n1, n2) };
                if v != 0 {
                    pairing.insert((a(n1), a(n2)), v);
                    pairing.insert((b(n1), b(n2)), v);
                }
            }
        }
        let reduce = |n: i64| match ell {
            None => n,
            Some(l) => n.rem_euclid(l),
        };
        let mut theta = BTreeMap::new();
        for &n in &ns {
            let tn = reduce(-n);
            theta.insert(a(n), b(tn));
            theta.insert(b(n), a(tn));
        }
        let kind = RootKind::DoubledOrbit {
            ell,
            window,
            merged: None,
        };
        Self::build(indices, pairing, theta, kind, Some((0, 1)))
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn kind(&self) -> &RootKind {
        &self.kind
    }

    pub fn contains(&self, i: i64) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// `(alpha_i, alpha_j)`.
    pub fn pairing(&self, i: i64, j: i64) -> i64 {
        self.pairing.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `d_i = (alpha_i, alpha_i) / 2`.
    pub fn d(&self, i: i64) -> i64 {
        self.pairing(i, i) / 2
    }

    pub fn theta(&self, i: i64) -> i64 {
        self.theta.get(&i).copied().unwrap_or(i)
    }

    /// Labels of `p0` and `p0^{-1}` for the doubled-orbit dominant weight.
    pub fn lambda_support(&self) -> Option<(i64, i64)> {
        self.lambda_support
    }

    /// Applies theta to a weight.
    pub fn theta_weight(&self, w: &Weight) -> Weight {
        Weight::from_coords(w.coords().map(|(i, c)| (self.theta(*i), *c)))
    }

    /// `beta + theta(beta)`, the canonical theta-invariant symmetrization.
    pub fn symmetrize(&self, w: &Weight) -> SymWeight {
        SymWeight(w.add(&self.theta_weight(w)))
    }

    /// Pairing of two weights.
    pub fn weight_pairing(&self, v: &Weight, w: &Weight) -> i64 {
        let mut acc = 0;
        for (i, c1) in v.coords() {
            for (j, c2) in w.coords() {
                acc += c1 * c2 * self.pairing(*i, *j);
            }
        }
        acc
    }

    /// `(w, alpha_i)`.
    pub fn pairing_with_alpha(&self, w: &Weight, i: i64) -> i64 {
        w.coords().map(|(j, c)| c * self.pairing(*j, i)).sum()
    }
}

/// A theta-invariant dominant integral weight, stored through the pairings
/// `(alpha_i, lambda)` (all any formula ever uses).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantWeight {
    pairings: BTreeMap<i64, i64>,
}

impl DominantWeight {
    pub fn zero() -> Self {
        DominantWeight {
            pairings: BTreeMap::new(),
        }
    }

    /// Validates nonnegativity and theta-invariance against the datum.
    pub fn new<I: IntoIterator<Item = (i64, i64)>>(
        pairs: I,
        rd: &RootDatum,
    ) -> Result<Self, RootDatumError> {
        let mut pairings = BTreeMap::new();
        for (i, v) in pairs {
            if !rd.contains(i) {
                return Err(RootDatumError::UnknownIndex(i));
            }
            if v < 0 {
                return Err(RootDatumError::LambdaNegative { index: i, value: v });
            }
            if v != 0 {
                pairings.insert(i, v);
            }
        }
        for (&i, &v) in &pairings {
            if pairings.get(&rd.theta(i)).copied().unwrap_or(0) != v {
                return Err(RootDatumError::LambdaNotSymmetric(i));
            }
        }
        Ok(DominantWeight { pairings })
    }

    /// The doubled-orbit preset: pairing 1 exactly at the labels of `p0`
    /// and `p0^{-1}`.
    pub fn doubled_orbit_preset(rd: &RootDatum) -> Result<Self, RootDatumError> {
        let (i, j) = rd
            .lambda_support()
            .ok_or(RootDatumError::UnknownIndex(i64::MIN))?;
        Self::new([(i, 1), (j, 1)], rd)
    }

    /// `(alpha_i, lambda)`.
    pub fn alpha_pairing(&self, i: i64) -> i64 {
        self.pairings.get(&i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.pairings.is_empty()
    }

    pub fn pairings(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.pairings.iter()
    }
}
