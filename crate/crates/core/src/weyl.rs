//! Classical Weyl groups acting on a maximal torus.
//!
//! Weyl groups are realized concretely as signed permutations of torus
//! coordinates: a permutation moves coordinates around and a sign of `-1`
//! inverts the moved coordinate. Torus points carry exact coordinates
//! ([`CoordValue`]): a root of unity times a monomial in formal generic
//! generators, so both permutation and inversion keep equality decidable.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 6;
pub const DEFAULT_ORDER_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    /// A torus `(ℂ*)^n` viewed as a reductive group: no roots, trivial Weyl group.
    Torus,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::Torus => "T",
        };
        f.write_str(s)
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "T" => Ok(Series::Torus),
            other => Err(Error::invalid(format!(
                "unknown series `{other}` (expected A, B, C, D or T)"
            ))),
        }
    }
}

/// Realization of series A: `SL_{n+1}` on `n` coordinates or `GL_{n+1}` on
/// `n + 1` permuted coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Realization {
    Sl,
    Gl,
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realization::Sl => "SL",
            Realization::Gl => "GL",
        })
    }
}

impl FromStr for Realization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SL" | "sl" => Ok(Realization::Sl),
            "GL" | "gl" => Ok(Realization::Gl),
            other => Err(Error::invalid(format!(
                "unknown realization `{other}` (expected SL or GL)"
            ))),
        }
    }
}

/// Element of `(ℂ*)` with exact coordinates: `exp(2πi·torsion) · ∏ g_j^{e_j}`.
///
/// The exponent vector never has trailing zeros and the torsion always lies
/// in `[0, 1)`, so derived equality is exact equality of group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoordValue {
    torsion: Ratio<i64>,
    exponents: Vec<i64>,
}

impl CoordValue {
    pub fn identity() -> Self {
        CoordValue {
            torsion: Ratio::zero(),
            exponents: Vec::new(),
        }
    }

    /// The formal generic generator `g_index` (1-based).
    pub fn generic(index: usize) -> Self {
        assert!(index >= 1, "generic generators are numbered from 1");
        let mut exponents = vec![0; index];
        exponents[index - 1] = 1;
        CoordValue {
            torsion: Ratio::zero(),
            exponents,
        }
    }

    /// `exp(2πi·numer/denom)`.
    pub fn root_of_unity(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::invalid("root of unity with zero denominator"));
        }
        Ok(CoordValue::from_parts(Ratio::new(numer, denom), Vec::new()))
    }

    pub fn from_parts(torsion: Ratio<i64>, exponents: Vec<i64>) -> Self {
        let mut v = CoordValue { torsion, exponents };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        self.torsion = self.torsion - self.torsion.floor();
        while self.exponents.last() == Some(&0) {
            self.exponents.pop();
        }
    }

    pub fn torsion(&self) -> Ratio<i64> {
        self.torsion
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.torsion.is_zero() && self.exponents.is_empty()
    }

    pub fn mul(&self, other: &CoordValue) -> CoordValue {
        let len = self.exponents.len().max(other.exponents.len());
        let exponents = (0..len)
            .map(|i| {
                self.exponents.get(i).copied().unwrap_or(0)
                    + other.exponents.get(i).copied().unwrap_or(0)
            })
            .collect();
        CoordValue::from_parts(self.torsion + other.torsion, exponents)
    }

    pub fn inv(&self) -> CoordValue {
        CoordValue::from_parts(-self.torsion, self.exponents.iter().map(|e| -e).collect())
    }

    pub fn pow(&self, k: i64) -> CoordValue {
        CoordValue::from_parts(
            self.torsion * Ratio::from_integer(k),
            self.exponents.iter().map(|e| e * k).collect(),
        )
    }
}

impl fmt::Display for CoordValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut factors = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("g{}", i + 1)),
                _ => factors.push(format!("g{}^{}", i + 1, e)),
            }
        }
        if !self.torsion.is_zero() {
            factors.push(format!(
                "w:{}/{}",
                self.torsion.numer(),
                self.torsion.denom()
            ));
        }
        f.write_str(&factors.join("*"))
    }
}

impl FromStr for CoordValue {
    type Err = Error;

    /// Grammar: factors joined by `*`; a factor is `1`, `gN`, `gN^k`,
    /// `w:p/q` (or `w:p`), optionally followed by `^k`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty coordinate expression"));
        }
        let mut value = CoordValue::identity();
        for factor in s.split('*') {
            let factor = factor.trim();
            let (base, power) = match factor.split_once('^') {
                Some((b, p)) => {
                    let k: i64 = p
                        .trim()
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad exponent `{p}` in `{factor}`")))?;
                    (b.trim(), k)
                }
                None => (factor, 1),
            };
            let base_value = if base == "1" {
                CoordValue::identity()
            } else if let Some(idx) = base.strip_prefix('g') {
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad generator `{base}`")))?;
                if idx == 0 {
                    return Err(Error::invalid("generators are numbered from g1"));
                }
                CoordValue::generic(idx)
            } else if let Some(frac) = base.strip_prefix("w:") {
                let (p, q) = match frac.split_once('/') {
                    Some((p, q)) => (p.trim(), q.trim()),
                    None => (frac.trim(), "1"),
                };
                let p: i64 = p
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad torsion `{frac}`")))?;
                let q: i64 = q
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad torsion `{frac}`")))?;
                CoordValue::root_of_unity(p, q)?
            } else {
                return Err(Error::invalid(format!("unrecognized factor `{factor}`")));
            };
            value = value.mul(&base_value.pow(power));
        }
        Ok(value)
    }
}

/// A point of the maximal torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusPoint(Vec<CoordValue>);

impl TorusPoint {
    pub fn new(coords: Vec<CoordValue>) -> Self {
        TorusPoint(coords)
    }

    pub fn identity(n: usize) -> Self {
        TorusPoint(vec![CoordValue::identity(); n])
    }

    pub fn coords(&self) -> &[CoordValue] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(CoordValue::is_identity)
    }

    pub fn mul(&self, other: &TorusPoint) -> Result<TorusPoint> {
        if self.len() != other.len() {
            return Err(Error::invalid(format!(
                "torus points of different lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(TorusPoint(
            self.0.iter().zip(&other.0).map(|(a, b)| a.mul(b)).collect(),
        ))
    }

    pub fn inv(&self) -> TorusPoint {
        TorusPoint(self.0.iter().map(CoordValue::inv).collect())
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for TorusPoint {
    type Err = Error;

    /// Comma-separated list of [`CoordValue`] expressions.
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(TorusPoint)
    }
}

/// Signed permutation of torus coordinates.
///
/// `perm[j]` is the position coordinate `j` moves to; `inverts[i]` says whether
/// the coordinate landing at position `i` is inverted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    inverts: Vec<bool>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            perm: (0..n).collect(),
            inverts: vec![false; n],
        }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::invalid(
                "permutation and sign vector differ in length",
            ));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid(format!("{perm:?} is not a permutation")));
            }
        }
        let inverts = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(false),
                -1 => Ok(true),
                other => Err(Error::invalid(format!("sign {other} is not ±1"))),
            })
            .collect::<Result<_>>()?;
        Ok(WeylElement { perm, inverts })
    }

    fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut w = WeylElement::identity(n);
        w.perm.swap(i, j);
        w
    }

    fn sign_flip(n: usize, i: usize) -> Self {
        let mut w = WeylElement::identity(n);
        w.inverts[i] = true;
        w
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> Vec<i8> {
        self.inverts
            .iter()
            .map(|&b| if b { -1 } else { 1 })
            .collect()
    }

    pub fn negative_sign_count(&self) -> usize {
        self.inverts.iter().filter(|&&b| b).count()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && !self.inverts.iter().any(|&b| b)
    }

    /// `self ∘ other`: act by `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.len();
        assert_eq!(n, other.len(), "composing elements of different degree");
        let perm: Vec<usize> = other.perm.iter().map(|&j| self.perm[j]).collect();
        // Output position i = self.perm[k] with k = other.perm[j].
        let mut inverts = vec![false; n];
        for k in 0..n {
            let i = self.perm[k];
            inverts[i] = self.inverts[i] ^ other.inverts[k];
        }
        WeylElement { perm, inverts }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut inverts = vec![false; n];
        for j in 0..n {
            let i = self.perm[j];
            perm[i] = j;
            inverts[j] = self.inverts[i];
        }
        WeylElement { perm, inverts }
    }

    /// Coordinate `perm(j)` of the result is coordinate `j` of `t`, inverted
    /// when the sign at `perm(j)` is `-1`.
    pub fn act(&self, t: &TorusPoint) -> Result<TorusPoint> {
        if t.len() != self.len() {
            return Err(Error::invalid(format!(
                "torus point has {} coordinates, group acts on {}",
                t.len(),
                self.len()
            )));
        }
        let mut out = vec![CoordValue::identity(); t.len()];
        for (j, c) in t.coords().iter().enumerate() {
            let i = self.perm[j];
            out[i] = if self.inverts[i] { c.inv() } else { c.clone() };
        }
        Ok(TorusPoint(out))
    }
}

/// A classical root system together with its simple reflections, realized as
/// signed permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    series: Series,
    rank: usize,
    realization: Option<Realization>,
    coordinate_count: usize,
    generators: Vec<WeylElement>,
    order_cap: usize,
}

impl RootSystem {
    pub fn build(series: Series, rank: usize, realization: Option<Realization>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::invalid(format!(
                "rank must lie in 1..={MAX_RANK}, got {rank}"
            )));
        }
        let realization = match series {
            Series::A => Some(
                realization
                    .ok_or_else(|| Error::invalid("series A needs a realization (SL or GL)"))?,
            ),
            _ => None,
        };
        let (coordinate_count, generators) = match (series, realization) {
            (Series::A, Some(Realization::Gl)) => {
                let n = rank + 1;
                let gens = (0..rank)
                    .map(|i| WeylElement::transposition(n, i, i + 1))
                    .collect();
                (n, gens)
            }
            (Series::A, _) => {
                // Only the rank-1 SL torus is a signed-permutation model: x ↦ x⁻¹.
                if rank != 1 {
                    return Err(Error::invalid(
                        "SL-type realization of series A is available for rank 1 only; use GL",
                    ));
                }
                (1, vec![WeylElement::sign_flip(1, 0)])
            }
            (Series::B | Series::C, _) => {
                let n = rank;
                let mut gens: Vec<_> = (0..n - 1)
                    .map(|i| WeylElement::transposition(n, i, i + 1))
                    .collect();
                gens.push(WeylElement::sign_flip(n, n - 1));
                (n, gens)
            }
            (Series::D, _) => {
                if rank < 2 {
                    return Err(Error::invalid("series D requires rank >= 2"));
                }
                let n = rank;
                let mut gens: Vec<_> = (0..n - 1)
                    .map(|i| WeylElement::transposition(n, i, i + 1))
                    .collect();
                let mut last = WeylElement::transposition(n, n - 2, n - 1);
                last.inverts[n - 2] = true;
                last.inverts[n - 1] = true;
                gens.push(last);
                (n, gens)
            }
            (Series::Torus, _) => (rank, Vec::new()),
        };
        Ok(RootSystem {
            series,
            rank,
            realization,
            coordinate_count,
            generators,
            order_cap: DEFAULT_ORDER_CAP,
        })
    }

    pub fn with_order_cap(mut self, cap: usize) -> Self {
        self.order_cap = cap;
        self
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn realization(&self) -> Option<Realization> {
        self.realization
    }

    pub fn coordinate_count(&self) -> usize {
        self.coordinate_count
    }

    /// Dimension of the maximal torus.
    pub fn torus_dim(&self) -> usize {
        self.coordinate_count
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    /// Complex dimension of the group.
    pub fn group_dim(&self) -> usize {
        let n = self.rank;
        match (self.series, self.realization) {
            (Series::A, Some(Realization::Gl)) => (n + 1) * (n + 1),
            (Series::A, _) => (n + 1) * (n + 1) - 1,
            (Series::B | Series::C, _) => n * (2 * n + 1),
            (Series::D, _) => n * (2 * n - 1),
            (Series::Torus, _) => n,
        }
    }

    /// Order of the Weyl group from the closed formula.
    pub fn classical_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u64 << n) * fact(n),
            Series::D => (1u64 << (n - 1)) * fact(n),
            Series::Torus => 1,
        }
    }

    /// All elements of the Weyl group, in breadth-first order from the
    /// identity over the simple reflections.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        let id = WeylElement::identity(self.coordinate_count);
        let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id.clone()]);
        let mut elements = vec![id];
        while let Some(w) = queue.pop_front() {
            for s in &self.generators {
                let next = w.compose(s);
                if seen.insert(next.clone()) {
                    if elements.len() >= self.order_cap {
                        return Err(Error::ResourceLimit {
                            cap: self.order_cap,
                        });
                    }
                    elements.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(elements)
    }

    fn check_point(&self, t: &TorusPoint) -> Result<()> {
        if t.len() != self.coordinate_count {
            return Err(Error::invalid(format!(
                "torus point has {} coordinates, {}{} acts on {}",
                t.len(),
                self.series,
                self.rank,
                self.coordinate_count
            )));
        }
        Ok(())
    }

    /// The Weyl orbit of `t`, deduplicated, in order of first appearance.
    pub fn orbit(&self, t: &TorusPoint) -> Result<Vec<TorusPoint>> {
        self.check_point(t)?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for w in self.weyl_group()? {
            let image = w.act(t)?;
            if seen.insert(image.clone()) {
                out.push(image);
            }
        }
        Ok(out)
    }

    pub fn stabilizer_order(&self, t: &TorusPoint) -> Result<usize> {
        self.check_point(t)?;
        let mut count = 0;
        for w in self.weyl_group()? {
            if &w.act(t)? == t {
                count += 1;
            }
        }
        Ok(count)
    }

    /// `χ(O_t) = |W| / |Stab t|` for the adjoint orbit of a semisimple `t`.
    pub fn orbit_euler_characteristic(&self, t: &TorusPoint) -> Result<u64> {
        Ok(self.orbit_summary(t)?.euler_characteristic())
    }

    /// Group order, orbit size and stabilizer order from one pass over `W`.
    pub fn orbit_summary(&self, t: &TorusPoint) -> Result<OrbitSummary> {
        self.check_point(t)?;
        let group = self.weyl_group()?;
        let mut seen = HashSet::new();
        let mut stabilizer = 0;
        for w in &group {
            let image = w.act(t)?;
            if &image == t {
                stabilizer += 1;
            }
            seen.insert(image);
        }
        let summary = OrbitSummary {
            group_order: group.len() as u64,
            orbit_size: seen.len() as u64,
            stabilizer_order: stabilizer,
        };
        debug_assert!(summary.group_order.is_multiple_of(summary.stabilizer_order));
        Ok(summary)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitSummary {
    pub group_order: u64,
    pub orbit_size: u64,
    pub stabilizer_order: u64,
}

impl OrbitSummary {
    pub fn euler_characteristic(&self) -> u64 {
        self.group_order / self.stabilizer_order
    }
}

impl From<Vec<CoordValue>> for TorusPoint {
    fn from(coords: Vec<CoordValue>) -> Self {
        TorusPoint(coords)
    }
}
