//! Gaussian degrees and the Gauss–Bonnet evaluation.
//!
//! Gaussian degrees are never computed from a Gauss map. They come from the
//! reductions to the maximal torus: a nonsemisimple stratum has degree 0, a
//! semisimple stratum has the degree of its torus intersection, and on the
//! torus a finite set counts its points, an open piece of a positive
//! dimensional subtorus has degree 0, and a generic hypersurface has the
//! normalized volume of its Newton polytope.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{self, ExactInt};
use crate::strata::{
    cc_multiplicities, euler_integral, CharCycle, ConstructibleFunction, LinkData, StratPoset,
    Stratum, StratumId, StratumKind, TorusModel,
};
use crate::weyl::{RootSystem, TorusPoint};

/// Convex hull of finitely many integer points.
/// Distinct points and simplices given as index lists into them.
pub type Triangulation<I> = (Vec<Vec<I>>, Vec<Vec<usize>>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope<I> {
    vertices: Vec<Vec<I>>,
    dim: usize,
}

impl<I: ExactInt> LatticePolytope<I> {
    pub fn new(vertices: Vec<Vec<I>>) -> Result<Self> {
        let dim = match vertices.first() {
            Some(v) => v.len(),
            None => return Err(Error::invalid("polytope needs at least one vertex")),
        };
        if dim == 0 {
            return Err(Error::invalid("polytope vertices must have dimension >= 1"));
        }
        if let Some(bad) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::invalid(format!(
                "vertex of dimension {} in a polytope of dimension {dim}",
                bad.len()
            )));
        }
        Ok(LatticePolytope { vertices, dim })
    }

    pub fn from_i64(vertices: &[&[i64]]) -> Result<Self> {
        let vertices = vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&x| scalar::from_i64(x, "polytope vertex"))
                    .collect::<Result<Vec<I>>>()
            })
            .collect::<Result<_>>()?;
        Self::new(vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<I>] {
        &self.vertices
    }

    pub fn translate(&self, offset: &[I]) -> Result<Self> {
        if offset.len() != self.dim {
            return Err(Error::invalid("translation vector has the wrong dimension"));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .zip(offset)
                    .map(|(a, b)| scalar::add(a, b, "translation"))
                    .collect::<Result<Vec<I>>>()
            })
            .collect::<Result<_>>()?;
        Self::new(vertices)
    }

    /// Image under `x ↦ M x` for a square integer matrix `M` (rows).
    pub fn transform(&self, matrix: &[Vec<I>]) -> Result<Self> {
        if matrix.len() != self.dim || matrix.iter().any(|r| r.len() != self.dim) {
            return Err(Error::invalid("transformation matrix has the wrong shape"));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                matrix
                    .iter()
                    .map(|row| dot(row, v, "linear transform"))
                    .collect::<Result<Vec<I>>>()
            })
            .collect::<Result<_>>()?;
        Self::new(vertices)
    }

    fn distinct_points(&self) -> Vec<Vec<I>> {
        let mut seen = BTreeSet::new();
        self.vertices
            .iter()
            .filter(|v| seen.insert((*v).clone()))
            .cloned()
            .collect()
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> Result<usize> {
        let pts = self.distinct_points();
        let all: Vec<usize> = (0..pts.len()).collect();
        affine_rank(&pts, &all, None)
    }

    /// Pulling triangulation of the convex hull: the distinct input points and
    /// the simplices (as index lists into them) covering the hull. Empty when
    /// the hull is lower dimensional.
    pub fn triangulation(&self) -> Result<Triangulation<I>> {
        let pts = self.distinct_points();
        let all: Vec<usize> = (0..pts.len()).collect();
        let d = affine_rank(&pts, &all, None)?;
        if d < self.dim {
            return Ok((pts, Vec::new()));
        }
        let simplices = pull(&pts, &all, d)?;
        Ok((pts, simplices))
    }

    /// `n!` times the Euclidean volume of the convex hull.
    pub fn normalized_volume(&self) -> Result<I> {
        let (pts, simplices) = self.triangulation()?;
        let mut total = I::zero();
        for simplex in &simplices {
            let base = &pts[simplex[0]];
            let rows = simplex[1..]
                .iter()
                .map(|&i| difference(&pts[i], base))
                .collect::<Result<Vec<_>>>()?;
            let vol = determinant(rows)?.abs();
            total = scalar::add(&total, &vol, "normalized volume")?;
        }
        Ok(total)
    }
}

fn dot<I: ExactInt>(a: &[I], b: &[I], what: &'static str) -> Result<I> {
    a.iter().zip(b).try_fold(I::zero(), |acc, (x, y)| {
        scalar::add(&acc, &scalar::mul(x, y, what)?, what)
    })
}

fn difference<I: ExactInt>(a: &[I], b: &[I]) -> Result<Vec<I>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| scalar::sub(x, y, "point difference"))
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn determinant<I: ExactInt>(mut m: Vec<Vec<I>>) -> Result<I> {
    let n = m.len();
    if n == 0 {
        return Ok(I::one());
    }
    let mut negate = false;
    let mut prev = I::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(I::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = scalar::mul(&m[i][j], &m[k][k], "determinant")?;
                let b = scalar::mul(&m[i][k], &m[k][j], "determinant")?;
                m[i][j] = scalar::sub(&a, &b, "determinant")? / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Rank of an integer matrix by fraction-free row reduction with content
/// removal.
pub fn rank<I: ExactInt>(mut m: Vec<Vec<I>>) -> Result<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for i in row + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let (piv, lead) = (m[row][col].clone(), m[i][col].clone());
            for j in col..cols {
                let a = scalar::mul(&m[i][j], &piv, "rank")?;
                let b = scalar::mul(&m[row][j], &lead, "rank")?;
                m[i][j] = scalar::sub(&a, &b, "rank")?;
            }
            let content = m[i].iter().fold(I::zero(), |g, x| g.gcd(x));
            if !content.is_zero() && !content.is_one() {
                for x in m[i].iter_mut() {
                    *x = x.clone() / content.clone();
                }
            }
        }
        row += 1;
        if row == m.len() {
            break;
        }
    }
    Ok(row)
}

fn affine_rank<I: ExactInt>(
    pts: &[Vec<I>],
    face: &[usize],
    cols: Option<&[usize]>,
) -> Result<usize> {
    let Some((&first, rest)) = face.split_first() else {
        return Ok(0);
    };
    let rows = rest
        .iter()
        .map(|&i| {
            let diff = difference(&pts[i], &pts[first])?;
            Ok(match cols {
                Some(cols) => cols.iter().map(|&c| diff[c].clone()).collect(),
                None => diff,
            })
        })
        .collect::<Result<Vec<Vec<I>>>>()?;
    if rows.is_empty() {
        return Ok(0);
    }
    rank(rows)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Facets of the convex hull of `face` (affine dimension `d`), each as the
/// sorted list of points of `face` lying on it.
fn facets<I: ExactInt>(pts: &[Vec<I>], face: &[usize], d: usize) -> Result<Vec<Vec<usize>>> {
    // Coordinates onto which the face projects isomorphically.
    let mut cols: Vec<usize> = Vec::with_capacity(d);
    for c in 0..pts[face[0]].len() {
        if cols.len() == d {
            break;
        }
        cols.push(c);
        if affine_rank(pts, face, Some(&cols))? < cols.len() {
            cols.pop();
        }
    }
    let proj: Vec<Vec<I>> = face
        .iter()
        .map(|&i| cols.iter().map(|&c| pts[i][c].clone()).collect())
        .collect();

    let mut found = BTreeSet::new();
    for combo in combinations(face.len(), d) {
        let base = &proj[combo[0]];
        let diffs = combo[1..]
            .iter()
            .map(|&k| difference(&proj[k], base))
            .collect::<Result<Vec<_>>>()?;
        // Normal vector by cofactor expansion.
        let mut normal = Vec::with_capacity(d);
        for j in 0..d {
            let minor = diffs
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let cof = determinant(minor)?;
            normal.push(if j % 2 == 0 { cof } else { -cof });
        }
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let offset = dot(&normal, base, "facet normal")?;
        let mut sides = Vec::with_capacity(proj.len());
        for q in &proj {
            sides.push(scalar::sub(
                &dot(&normal, q, "facet normal")?,
                &offset,
                "facet normal",
            )?);
        }
        let (pos, neg) = (
            sides.iter().any(|s| s.is_positive()),
            sides.iter().any(|s| s.is_negative()),
        );
        if pos && neg {
            continue;
        }
        let on: Vec<usize> = sides
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_zero())
            .map(|(k, _)| face[k])
            .collect();
        found.insert(on);
    }
    Ok(found.into_iter().collect())
}

/// Pulling triangulation: cone from the first point of the face over the
/// recursively triangulated facets that avoid it.
fn pull<I: ExactInt>(pts: &[Vec<I>], face: &[usize], d: usize) -> Result<Vec<Vec<usize>>> {
    if d == 0 {
        return Ok(vec![vec![face[0]]]);
    }
    let apex = face[0];
    let mut simplices = Vec::new();
    for facet in facets(pts, face, d)? {
        if facet.contains(&apex) {
            continue;
        }
        for sigma in pull(pts, &facet, d - 1)? {
            let mut s = Vec::with_capacity(d + 1);
            s.push(apex);
            s.extend(sigma);
            simplices.push(s);
        }
    }
    Ok(simplices)
}

/// `n!·vol(P)`.
pub fn polytope_normalized_volume<I: ExactInt>(p: &LatticePolytope<I>) -> Result<I> {
    p.normalized_volume()
}

/// Gaussian degree of a generic hypersurface of the torus with Newton
/// polytope `p`: its normalized volume.
pub fn gdeg_generic_hypersurface<I: ExactInt>(p: &LatticePolytope<I>) -> Result<I> {
    p.normalized_volume()
}

/// Gaussian degree of the adjoint orbit of a torus point: `|O_t ∩ T|`, the
/// size of its Weyl orbit.
pub fn gdeg_orbit(rs: &RootSystem, t: &TorusPoint) -> Result<u64> {
    Ok(rs.orbit(t)?.len() as u64)
}

pub fn gdeg_stratum(s: &Stratum, rs: &RootSystem) -> Result<u64> {
    let model = match &s.kind {
        StratumKind::Nonsemisimple => return Ok(0),
        StratumKind::Semisimple { torus_model, .. } => torus_model,
    };
    match model {
        TorusModel::Finite { count } => Ok(*count),
        TorusModel::FullDimensional => Ok(0),
        TorusModel::Subtorus { dim } => {
            if *dim == 0 || *dim > rs.torus_dim() {
                return Err(Error::invalid(format!(
                    "stratum `{}`: subtorus of dimension {dim} in a torus of dimension {}",
                    s.id,
                    rs.torus_dim()
                )));
            }
            Ok(0)
        }
        TorusModel::Hypersurface { polytope } => {
            if polytope.dim() != rs.torus_dim() {
                return Err(Error::invalid(format!(
                    "stratum `{}`: Newton polytope of dimension {} in a torus of dimension {}",
                    s.id,
                    polytope.dim(),
                    rs.torus_dim()
                )));
            }
            let v = gdeg_generic_hypersurface(polytope)?;
            u64::try_from(v).map_err(|_| Error::Overflow("gaussian degree"))
        }
        TorusModel::Declared { gdeg } => Ok(*gdeg),
    }
}

/// Gaussian degree of every stratum, in poset order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GdegAssignment {
    values: IndexMap<StratumId, u64>,
}

impl GdegAssignment {
    pub fn compute(poset: &StratPoset, rs: &RootSystem) -> Result<Self> {
        let values = poset
            .strata()
            .iter()
            .map(|s| Ok((s.id.clone(), gdeg_stratum(s, rs)?)))
            .collect::<Result<_>>()?;
        Ok(GdegAssignment { values })
    }

    pub fn get(&self, id: &StratumId) -> Option<u64> {
        self.values.get(id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StratumId, u64)> {
        self.values.iter().map(|(k, v)| (k, *v))
    }
}

/// Both sides of `χ(G, F) = Σ_α c_α · gdeg(X_α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussBonnet<I> {
    pub chi_via_integral: I,
    pub chi_via_cc: I,
    pub multiplicities: CharCycle<I>,
    pub gdegs: GdegAssignment,
    /// Strata whose degree is a trusted user declaration.
    pub declared: Vec<StratumId>,
}

impl<I: ExactInt> GaussBonnet<I> {
    pub fn is_match(&self) -> bool {
        self.chi_via_integral == self.chi_via_cc
    }
}

pub fn gauss_bonnet<I: ExactInt>(
    poset: &StratPoset,
    links: &LinkData,
    f: &ConstructibleFunction<I>,
    rs: &RootSystem,
) -> Result<GaussBonnet<I>> {
    if poset.torus_dim() != rs.torus_dim() {
        return Err(Error::invalid(format!(
            "stratification lives in a torus of dimension {}, root system has {}",
            poset.torus_dim(),
            rs.torus_dim()
        )));
    }
    let chi_via_integral = euler_integral(poset, f)?;
    let multiplicities = cc_multiplicities(poset, links, f)?;
    let gdegs = GdegAssignment::compute(poset, rs)?;
    let mut chi_via_cc = I::zero();
    for (id, c) in multiplicities.iter() {
        let g: I = scalar::from_u64(gdegs.get(id).unwrap_or(0), "gauss-bonnet sum")?;
        chi_via_cc = scalar::add(
            &chi_via_cc,
            &scalar::mul(c, &g, "gauss-bonnet sum")?,
            "gauss-bonnet sum",
        )?;
    }
    let declared = poset
        .strata()
        .iter()
        .filter(|s| {
            matches!(
                s.kind,
                StratumKind::Semisimple {
                    torus_model: TorusModel::Declared { .. },
                    ..
                }
            )
        })
        .map(|s| s.id.clone())
        .collect();
    Ok(GaussBonnet {
        chi_via_integral,
        chi_via_cc,
        multiplicities,
        gdegs,
        declared,
    })
}
