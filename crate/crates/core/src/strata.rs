//! Admissible stratifications, constructible functions and characteristic cycles.
//!
//! A stratification is recorded only through its combinatorial shadow: the
//! strata with their dimensions and compactly supported Euler characteristics,
//! the closure order, and the Euler characteristics `e(α, β)` of complex links.
//! Sheaves enter as constructible functions, one integer per stratum.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::gdeg::LatticePolytope;
use crate::scalar::{self, ExactInt};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumId(String);

impl StratumId {
    pub fn new(id: impl Into<String>) -> Self {
        StratumId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StratumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for StratumId {
    fn from(s: &str) -> Self {
        StratumId(s.to_owned())
    }
}

/// How the intersection of a semisimple stratum with the maximal torus looks,
/// as far as its Gaussian degree is concerned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusModel {
    /// Finitely many points.
    Finite { count: u64 },
    /// Open dense in the torus.
    FullDimensional,
    /// Open dense in a subtorus of the given dimension.
    Subtorus { dim: usize },
    /// Open dense in a generic hypersurface with this Newton polytope.
    Hypersurface { polytope: LatticePolytope<i64> },
    /// Gaussian degree supplied by the user and trusted as-is.
    Declared { gdeg: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StratumKind {
    Semisimple {
        /// Dimension of the centralizer of any element of the stratum.
        rank: usize,
        dim_in_torus: usize,
        torus_model: TorusModel,
    },
    Nonsemisimple,
}

impl StratumKind {
    pub fn is_semisimple(&self) -> bool {
        matches!(self, StratumKind::Semisimple { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub id: StratumId,
    pub dim: usize,
    pub kind: StratumKind,
    pub chi_c: i64,
}

impl Stratum {
    pub fn semisimple(
        id: &str,
        dim: usize,
        rank: usize,
        dim_in_torus: usize,
        torus_model: TorusModel,
        chi_c: i64,
    ) -> Self {
        Stratum {
            id: id.into(),
            dim,
            kind: StratumKind::Semisimple {
                rank,
                dim_in_torus,
                torus_model,
            },
            chi_c,
        }
    }

    pub fn nonsemisimple(id: &str, dim: usize, chi_c: i64) -> Self {
        Stratum {
            id: id.into(),
            dim,
            kind: StratumKind::Nonsemisimple,
            chi_c,
        }
    }

    pub fn is_semisimple(&self) -> bool {
        self.kind.is_semisimple()
    }
}

/// Strata with their closure order.
///
/// The closure relation is stored as given and as its transitive closure;
/// `α < β` means `X_α ⊂ closure(X_β)` with `α ≠ β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratPoset {
    strata: Vec<Stratum>,
    index: HashMap<StratumId, usize>,
    relations: Vec<(StratumId, StratumId)>,
    below: Vec<Vec<bool>>,
    ambient_dim: usize,
    torus_dim: usize,
}

impl StratPoset {
    /// Fails on duplicate ids or relations naming unknown strata; every other
    /// defect is left to [`validate`].
    pub fn new(
        strata: Vec<Stratum>,
        relations: Vec<(StratumId, StratumId)>,
        ambient_dim: usize,
        torus_dim: usize,
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, s) in strata.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate stratum id `{}`", s.id)));
            }
        }
        let n = strata.len();
        let mut below = vec![vec![false; n]; n];
        for (a, b) in &relations {
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::invalid(format!("closure names unknown stratum `{a}`")))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::invalid(format!("closure names unknown stratum `{b}`")))?;
            below[ia][ib] = true;
        }
        // Warshall.
        for k in 0..n {
            for i in 0..n {
                if below[i][k] {
                    for j in 0..n {
                        if below[k][j] {
                            below[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(StratPoset {
            strata,
            index,
            relations,
            below,
            ambient_dim,
            torus_dim,
        })
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn relations(&self) -> &[(StratumId, StratumId)] {
        &self.relations
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn torus_dim(&self) -> usize {
        self.torus_dim
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn position(&self, id: &StratumId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn get(&self, id: &StratumId) -> Option<&Stratum> {
        self.position(id).map(|i| &self.strata[i])
    }

    /// `a < b` in the transitive closure order.
    pub fn lt(&self, a: &StratumId, b: &StratumId) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(i), Some(j)) => self.below[i][j],
            _ => false,
        }
    }

    pub fn le(&self, a: &StratumId, b: &StratumId) -> bool {
        a == b && self.index.contains_key(a) || self.lt(a, b)
    }

    /// Strata `β` with `α < β`, in input order.
    pub fn strictly_above(&self, id: &StratumId) -> Vec<&Stratum> {
        match self.position(id) {
            Some(i) => (0..self.len())
                .filter(|&j| self.below[i][j])
                .map(|j| &self.strata[j])
                .collect(),
            None => Vec::new(),
        }
    }

    /// The closure of a stratum: itself followed by its down-set, in input order.
    pub fn closure_of(&self, id: &StratumId) -> Vec<&Stratum> {
        match self.position(id) {
            Some(j) => (0..self.len())
                .filter(|&i| i == j || self.below[i][j])
                .map(|i| &self.strata[i])
                .collect(),
            None => Vec::new(),
        }
    }
}

/// Euler characteristics with compact support of complex links, `e(α, β)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinkData {
    values: BTreeMap<(StratumId, StratumId), i64>,
}

impl LinkData {
    pub fn new() -> Self {
        LinkData::default()
    }

    /// Link data carrying only the diagonal convention `e(α, α) = -1`.
    pub fn with_diagonal(poset: &StratPoset) -> Self {
        let mut links = LinkData::new();
        for s in poset.strata() {
            links.set(&s.id, &s.id, -1);
        }
        links
    }

    pub fn set(&mut self, a: &StratumId, b: &StratumId, value: i64) {
        self.values.insert((a.clone(), b.clone()), value);
    }

    pub fn get(&self, a: &StratumId, b: &StratumId) -> Option<i64> {
        self.values.get(&(a.clone(), b.clone())).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StratumId, &StratumId, i64)> {
        self.values.iter().map(|((a, b), v)| (a, b, *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// The constructible function `χ(F)`: local Euler characteristic per stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibleFunction<I> {
    values: IndexMap<StratumId, I>,
}

impl<I: ExactInt> ConstructibleFunction<I> {
    pub fn new() -> Self {
        ConstructibleFunction {
            values: IndexMap::new(),
        }
    }

    pub fn zero(poset: &StratPoset) -> Self {
        ConstructibleFunction {
            values: poset
                .strata()
                .iter()
                .map(|s| (s.id.clone(), I::zero()))
                .collect(),
        }
    }

    /// The constant sheaf on the closure of `top`, extended by zero.
    pub fn constant_on_closure(poset: &StratPoset, top: &StratumId) -> Self {
        let mut f = Self::zero(poset);
        for s in poset.closure_of(top) {
            f.set(&s.id, I::one());
        }
        f
    }

    /// Value `1` on the listed strata, `0` elsewhere.
    pub fn indicator(poset: &StratPoset, ids: &[&str]) -> Self {
        let mut f = Self::zero(poset);
        for id in ids {
            f.set(&StratumId::from(*id), I::one());
        }
        f
    }

    pub fn set(&mut self, id: &StratumId, value: I) {
        self.values.insert(id.clone(), value);
    }

    pub fn get(&self, id: &StratumId) -> Option<&I> {
        self.values.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StratumId, &I)> {
        self.values.iter()
    }

    /// Values converted into another scalar type.
    pub fn convert<J: ExactInt>(&self) -> Result<ConstructibleFunction<J>> {
        let values = self
            .values
            .iter()
            .map(|(k, v)| {
                let v = v
                    .to_i128()
                    .and_then(J::from_i128)
                    .ok_or(Error::Overflow("scalar conversion"))?;
                Ok((k.clone(), v))
            })
            .collect::<Result<_>>()?;
        Ok(ConstructibleFunction { values })
    }

    /// Pointwise `self + other`, over the union of the supports.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (k, v) in &other.values {
            let cur = out.values.get(k).cloned().unwrap_or_else(I::zero);
            out.values.insert(
                k.clone(),
                scalar::add(&cur, v, "sum of constructible functions")?,
            );
        }
        Ok(out)
    }

    pub fn checked_scale(&self, factor: &I) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|(k, v)| {
                Ok((
                    k.clone(),
                    scalar::mul(v, factor, "scaled constructible function")?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(ConstructibleFunction { values })
    }

    fn value_on(&self, id: &StratumId) -> Result<&I> {
        self.values.get(id).ok_or_else(|| {
            Error::invalid(format!(
                "constructible function has no value on stratum `{id}`"
            ))
        })
    }

    fn check_domain(&self, poset: &StratPoset) -> Result<()> {
        for k in self.values.keys() {
            if poset.position(k).is_none() {
                return Err(Error::invalid(format!(
                    "constructible function names unknown stratum `{k}`"
                )));
            }
        }
        Ok(())
    }
}

impl<I: ExactInt> Default for ConstructibleFunction<I> {
    fn default() -> Self {
        Self::new()
    }
}

impl<I: ExactInt> FromIterator<(StratumId, I)> for ConstructibleFunction<I> {
    fn from_iter<T: IntoIterator<Item = (StratumId, I)>>(iter: T) -> Self {
        ConstructibleFunction {
            values: iter.into_iter().collect(),
        }
    }
}

/// Multiplicities `c_α` of the characteristic cycle `Σ c_α T*_{X_α} G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharCycle<I> {
    multiplicities: IndexMap<StratumId, I>,
}

impl<I: ExactInt> CharCycle<I> {
    pub fn get(&self, id: &StratumId) -> Option<&I> {
        self.multiplicities.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StratumId, &I)> {
        self.multiplicities.iter()
    }

    pub fn values(&self) -> impl Iterator<Item = &I> {
        self.multiplicities.values()
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    ClosureCycle,
    ClosureDimension,
    DimensionExceedsAmbient,
    TorusDimensionExceedsDimension,
    OrbitDirectionParity,
    OrbitDimension,
    TorusModelMismatch,
    FiniteChiMismatch,
    DiagonalLink,
    MissingLink,
    LinkOnIncomparablePair,
    UnknownLinkStratum,
    ForcedZeroLink,
}

impl ViolationKind {
    pub fn description(self) -> &'static str {
        match self {
            ViolationKind::ClosureCycle => "closure order must be irreflexive",
            ViolationKind::ClosureDimension => "closure order must strictly increase dimension",
            ViolationKind::DimensionExceedsAmbient => {
                "stratum dimension exceeds the group dimension"
            }
            ViolationKind::TorusDimensionExceedsDimension => "dim_in_torus exceeds dim",
            ViolationKind::OrbitDirectionParity => "orbit-direction parity",
            ViolationKind::OrbitDimension => "dim - dim_in_torus must equal dim G - rank",
            ViolationKind::TorusModelMismatch => "torus model inconsistent with dim_in_torus",
            ViolationKind::FiniteChiMismatch => "finite torus model must have chi_c = point count",
            ViolationKind::DiagonalLink => "diagonal link must be -1",
            ViolationKind::MissingLink => "link missing for comparable pair",
            ViolationKind::LinkOnIncomparablePair => "link given for incomparable pair",
            ViolationKind::UnknownLinkStratum => "link names unknown stratum",
            ViolationKind::ForcedZeroLink => {
                "link from semisimple to nonsemisimple stratum must be 0"
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub ids: Vec<StratumId>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<&str> = self.ids.iter().map(StratumId::as_str).collect();
        write!(f, "{}: {}", self.kind.description(), ids.join(", "))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, ids: &[&StratumId]) {
        self.violations.push(Violation {
            kind,
            ids: ids.iter().map(|&id| id.clone()).collect(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Checks every admissibility condition; violations are collected, not raised.
pub fn validate(poset: &StratPoset, links: &LinkData) -> ValidationReport {
    use ViolationKind::*;
    let mut report = ValidationReport::default();
    let strata = poset.strata();

    for (i, s) in strata.iter().enumerate() {
        if poset.below[i][i] {
            report.push(ClosureCycle, &[&s.id]);
        }
        if s.dim > poset.ambient_dim {
            report.push(DimensionExceedsAmbient, &[&s.id]);
        }
        if let StratumKind::Semisimple {
            rank,
            dim_in_torus,
            torus_model,
        } = &s.kind
        {
            let (rank, dit) = (*rank, *dim_in_torus);
            if dit > s.dim {
                report.push(TorusDimensionExceedsDimension, &[&s.id]);
            } else {
                if (s.dim - dit) % 2 != 0 {
                    report.push(OrbitDirectionParity, &[&s.id]);
                }
                if rank > poset.ambient_dim || s.dim - dit != poset.ambient_dim - rank {
                    report.push(OrbitDimension, &[&s.id]);
                }
            }
            let model_ok = match torus_model {
                TorusModel::Finite { .. } => dit == 0,
                TorusModel::FullDimensional => dit == poset.torus_dim,
                TorusModel::Subtorus { dim } => *dim >= 1 && *dim == dit && dit <= poset.torus_dim,
                TorusModel::Hypersurface { polytope } => {
                    poset.torus_dim >= 1
                        && dit + 1 == poset.torus_dim
                        && polytope.dim() == poset.torus_dim
                }
                TorusModel::Declared { .. } => dit <= poset.torus_dim,
            };
            if !model_ok {
                report.push(TorusModelMismatch, &[&s.id]);
            }
            if let TorusModel::Finite { count } = torus_model {
                if i64::try_from(*count).ok() != Some(s.chi_c) {
                    report.push(FiniteChiMismatch, &[&s.id]);
                }
            }
        }
    }

    for (i, a) in strata.iter().enumerate() {
        for (j, b) in strata.iter().enumerate() {
            if i != j && poset.below[i][j] && a.dim >= b.dim {
                report.push(ClosureDimension, &[&a.id, &b.id]);
            }
        }
    }

    for s in strata {
        match links.get(&s.id, &s.id) {
            Some(-1) => {}
            Some(_) => report.push(DiagonalLink, &[&s.id]),
            None => report.push(MissingLink, &[&s.id, &s.id]),
        }
    }
    for (i, a) in strata.iter().enumerate() {
        for (j, b) in strata.iter().enumerate() {
            if i == j || !poset.below[i][j] {
                continue;
            }
            match links.get(&a.id, &b.id) {
                None => report.push(MissingLink, &[&a.id, &b.id]),
                Some(v) => {
                    if a.is_semisimple() && !b.is_semisimple() && v != 0 {
                        report.push(ForcedZeroLink, &[&a.id, &b.id]);
                    }
                }
            }
        }
    }
    for (a, b, _) in links.iter() {
        match (poset.position(a), poset.position(b)) {
            (Some(i), Some(j)) => {
                if i != j && !poset.below[i][j] {
                    report.push(LinkOnIncomparablePair, &[a, b]);
                }
            }
            _ => report.push(UnknownLinkStratum, &[a, b]),
        }
    }
    report
}

fn require_valid(poset: &StratPoset, links: &LinkData) -> Result<()> {
    let report = validate(poset, links);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Validation(report))
    }
}

/// `χ(X, F) = Σ_α χ_α(F) · χ^c(X_α)`.
pub fn euler_integral<I: ExactInt>(poset: &StratPoset, f: &ConstructibleFunction<I>) -> Result<I> {
    f.check_domain(poset)?;
    let mut total = I::zero();
    for s in poset.strata() {
        let chi_c: I = scalar::from_i64(s.chi_c, "euler integral")?;
        let term = scalar::mul(f.value_on(&s.id)?, &chi_c, "euler integral")?;
        total = scalar::add(&total, &term, "euler integral")?;
    }
    Ok(total)
}

/// Dubson–Kashiwara: `c_α = (-1)^{dim X_α + 1} Σ_{β ≥ α} e(α, β) χ_β(F)`.
pub fn cc_multiplicities<I: ExactInt>(
    poset: &StratPoset,
    links: &LinkData,
    f: &ConstructibleFunction<I>,
) -> Result<CharCycle<I>> {
    require_valid(poset, links)?;
    f.check_domain(poset)?;
    let mut multiplicities = IndexMap::with_capacity(poset.len());
    for a in poset.strata() {
        let mut sum = I::zero();
        let diag: I = scalar::from_i64(-1, "multiplicity")?;
        sum = scalar::add(
            &sum,
            &scalar::mul(&diag, f.value_on(&a.id)?, "multiplicity")?,
            "multiplicity",
        )?;
        for b in poset.strictly_above(&a.id) {
            let e = links
                .get(&a.id, &b.id)
                .expect("validated poset has every comparable link");
            let e: I = scalar::from_i64(e, "multiplicity")?;
            let term = scalar::mul(&e, f.value_on(&b.id)?, "multiplicity")?;
            sum = scalar::add(&sum, &term, "multiplicity")?;
        }
        let c = scalar::mul(&scalar::sign_pow::<I>(a.dim + 1), &sum, "multiplicity")?;
        multiplicities.insert(a.id.clone(), c);
    }
    Ok(CharCycle { multiplicities })
}

/// The induced stratification of the maximal torus: semisimple strata only,
/// each replaced by its intersection with the torus. `χ^c` is unchanged and
/// link coefficients between semisimple strata carry over.
pub fn torus_restriction(poset: &StratPoset, links: &LinkData) -> Result<(StratPoset, LinkData)> {
    require_valid(poset, links)?;
    let torus_dim = poset.torus_dim();
    let strata: Vec<Stratum> = poset
        .strata()
        .iter()
        .filter_map(|s| match &s.kind {
            StratumKind::Semisimple {
                dim_in_torus,
                torus_model,
                ..
            } => Some(Stratum {
                id: s.id.clone(),
                dim: *dim_in_torus,
                kind: StratumKind::Semisimple {
                    rank: torus_dim,
                    dim_in_torus: *dim_in_torus,
                    torus_model: torus_model.clone(),
                },
                chi_c: s.chi_c,
            }),
            StratumKind::Nonsemisimple => None,
        })
        .collect();
    let mut relations = Vec::new();
    for a in &strata {
        for b in &strata {
            if poset.lt(&a.id, &b.id) {
                relations.push((a.id.clone(), b.id.clone()));
            }
        }
    }
    let restricted = StratPoset::new(strata, relations, torus_dim, torus_dim)?;
    let mut torus_links = LinkData::with_diagonal(&restricted);
    for (a, b) in restricted.relations() {
        let e = links
            .get(a, b)
            .expect("validated poset has every comparable link");
        torus_links.set(a, b, e);
    }
    Ok((restricted, torus_links))
}

/// Restriction of a constructible function to the torus strata.
pub fn restrict_function<I: ExactInt>(
    f: &ConstructibleFunction<I>,
    torus_poset: &StratPoset,
) -> Result<ConstructibleFunction<I>> {
    torus_poset
        .strata()
        .iter()
        .map(|s| Ok((s.id.clone(), f.value_on(&s.id)?.clone())))
        .collect()
}
