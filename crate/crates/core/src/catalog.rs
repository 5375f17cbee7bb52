//! Built-in desk-scale cases.
//!
//! No input number here is typed in by hand without a derivation:
//!
//! * `χ^c` of a semisimple stratum is computed on its torus intersection:
//!   `χ^c(X_α ∩ T) = χ^c(closure in T) − Σ_{β < α} χ^c(X_β ∩ T)`, where the
//!   closure is a finite point set, a (sub)torus (`χ^c = 0`) or an explicit
//!   curve. Nonsemisimple strata miss the torus and get `0`.
//! * Link coefficients are either forced (`e(α, α) = -1`, `e(α, β) = 0` from a
//!   semisimple to a nonsemisimple stratum) or solved from the requirement
//!   that the constant sheaf on a smooth closure has characteristic cycle
//!   `(-1)^dim` times its conormal.
//!
//! The expected values attached to each case are hand evaluations and are
//! checked against the engine by the test suites.

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::gdeg::LatticePolytope;
use crate::strata::{ConstructibleFunction, LinkData, StratPoset, Stratum, StratumId, TorusModel};
use crate::weyl::{CoordValue, Realization, RootSystem, Series, TorusPoint};

pub const CASE_NAMES: [&str; 7] = [
    "torus1_two_points",
    "torus2_subtorus",
    "torus2_flag",
    "torus2_line",
    "sl2_adjoint",
    "sl2_orbit_closure",
    "gl2_adjoint",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Chi,
    Multiplicity(StratumId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub sheaf: String,
    pub quantity: Quantity,
    pub value: i64,
    pub provenance: String,
}

#[derive(Debug, Clone)]
pub struct CaseSpec {
    pub name: String,
    pub description: String,
    pub root_system: RootSystem,
    pub poset: StratPoset,
    pub links: LinkData,
    pub sheaves: IndexMap<String, ConstructibleFunction<i64>>,
    pub expected: Vec<Expectation>,
    /// Strata whose closure is a smooth closed invariant subvariety.
    pub smooth_closures: Vec<StratumId>,
    /// Sheaves supported on an orbit closure, with the unique semisimple
    /// stratum of that closure.
    pub orbit_closures: Vec<(String, StratumId)>,
    /// Torus representatives of point strata that are single adjoint orbits.
    pub orbit_points: Vec<(StratumId, TorusPoint)>,
}

pub fn catalog_case(name: &str) -> Result<CaseSpec> {
    match name {
        "torus1_two_points" => Ok(torus1_two_points()),
        "torus2_subtorus" => Ok(torus2_subtorus()),
        "torus2_flag" => Ok(torus2_flag()),
        "torus2_line" => Ok(torus2_line()),
        "sl2_adjoint" => Ok(sl2_adjoint()),
        "sl2_orbit_closure" => Ok(sl2_orbit_closure()),
        "gl2_adjoint" => Ok(gl2_adjoint()),
        other => Err(Error::NotFound {
            name: other.to_owned(),
            available: CASE_NAMES.iter().map(|s| s.to_string()).collect(),
        }),
    }
}

pub fn all_cases() -> Vec<CaseSpec> {
    CASE_NAMES
        .iter()
        .map(|n| catalog_case(n).expect("catalog names are known"))
        .collect()
}

/// Closure of `X_α ∩ T` in `T`.
#[derive(Debug, Clone, Copy)]
enum TorusClosure {
    Points(u64),
    /// A closed subtorus of positive dimension, or `T` itself.
    Torus,
    Curve {
        chi_c: i64,
    },
}

impl TorusClosure {
    fn chi_c(self) -> i64 {
        match self {
            TorusClosure::Points(m) => m as i64,
            // (ℂ*)^k for k ≥ 1 carries a free circle action.
            TorusClosure::Torus => 0,
            TorusClosure::Curve { chi_c } => chi_c,
        }
    }
}

struct Builder {
    name: &'static str,
    description: &'static str,
    rs: RootSystem,
    strata: Vec<(Stratum, Option<TorusClosure>)>,
    relations: Vec<(StratumId, StratumId)>,
    smooth: Vec<StratumId>,
}

impl Builder {
    fn new(name: &'static str, description: &'static str, rs: RootSystem) -> Self {
        Builder {
            name,
            description,
            rs,
            strata: Vec::new(),
            relations: Vec::new(),
            smooth: Vec::new(),
        }
    }

    fn semisimple(
        mut self,
        id: &str,
        dim: usize,
        rank: usize,
        dim_in_torus: usize,
        model: TorusModel,
        closure: TorusClosure,
    ) -> Self {
        let s = Stratum::semisimple(id, dim, rank, dim_in_torus, model, 0);
        self.strata.push((s, Some(closure)));
        self
    }

    fn nonsemisimple(mut self, id: &str, dim: usize) -> Self {
        self.strata.push((Stratum::nonsemisimple(id, dim, 0), None));
        self
    }

    fn below(mut self, pairs: &[(&str, &str)]) -> Self {
        self.relations.extend(
            pairs
                .iter()
                .map(|(a, b)| (StratumId::from(*a), StratumId::from(*b))),
        );
        self
    }

    fn smooth(mut self, ids: &[&str]) -> Self {
        self.smooth.extend(ids.iter().map(|&s| StratumId::from(s)));
        self
    }

    fn build(self) -> CaseSpec {
        let ambient = self.rs.group_dim();
        let torus = self.rs.torus_dim();
        let shape = StratPoset::new(
            self.strata.iter().map(|(s, _)| s.clone()).collect(),
            self.relations.clone(),
            ambient,
            torus,
        )
        .expect("catalog strata are well formed");

        // Torus localization, processed by increasing dimension so every
        // down-set is known first.
        let mut order: Vec<usize> = (0..self.strata.len()).collect();
        order.sort_by_key(|&i| self.strata[i].0.dim);
        let mut chi_c = vec![0i64; self.strata.len()];
        for &i in &order {
            let (s, closure) = &self.strata[i];
            if let Some(closure) = closure {
                let lower: i64 = (0..self.strata.len())
                    .filter(|&j| shape.lt(&self.strata[j].0.id, &s.id))
                    .map(|j| chi_c[j])
                    .sum();
                chi_c[i] = closure.chi_c() - lower;
            }
        }
        let strata: Vec<Stratum> = self
            .strata
            .iter()
            .zip(&chi_c)
            .map(|((s, _), &c)| Stratum {
                chi_c: c,
                ..s.clone()
            })
            .collect();
        let poset = StratPoset::new(strata, self.relations, ambient, torus)
            .expect("catalog strata are well formed");
        let links = pin_links(&poset, &self.smooth);

        CaseSpec {
            name: self.name.to_owned(),
            description: self.description.to_owned(),
            root_system: self.rs,
            poset,
            links,
            sheaves: IndexMap::new(),
            expected: Vec::new(),
            smooth_closures: self.smooth,
            orbit_closures: Vec::new(),
            orbit_points: Vec::new(),
        }
    }
}

/// Link coefficients from the forced values and the smooth-closure oracle.
///
/// For `α < β` with `closure(X_β)` smooth, the constant sheaf on that closure
/// must have `c_α = 0`, i.e. `Σ_{α < γ ≤ β} e(α, γ) = 1`; this determines
/// `e(α, β)` once the links to strata strictly between are known.
fn pin_links(poset: &StratPoset, smooth: &[StratumId]) -> LinkData {
    let mut links = LinkData::with_diagonal(poset);
    let mut by_dim: Vec<&Stratum> = poset.strata().iter().collect();
    by_dim.sort_by_key(|s| s.dim);
    for a in poset.strata() {
        for b in &by_dim {
            if !poset.lt(&a.id, &b.id) {
                continue;
            }
            let e = if a.is_semisimple() && !b.is_semisimple() {
                0
            } else if smooth.contains(&b.id) {
                let between: i64 = poset
                    .strictly_above(&a.id)
                    .into_iter()
                    .filter(|g| poset.lt(&g.id, &b.id))
                    .map(|g| {
                        links
                            .get(&a.id, &g.id)
                            .expect("lower links are pinned first")
                    })
                    .sum();
                1 - between
            } else {
                panic!(
                    "catalog link e({}, {}) is not pinned by any oracle",
                    a.id, b.id
                );
            };
            links.set(&a.id, &b.id, e);
        }
    }
    links
}

impl CaseSpec {
    fn sheaf(mut self, name: &str, support: &[&str]) -> Self {
        let f = ConstructibleFunction::indicator(&self.poset, support);
        self.sheaves.insert(name.to_owned(), f);
        self
    }

    /// Hand-evaluated `χ` and the full multiplicity vector, in stratum order.
    fn expect(mut self, sheaf: &str, chi: i64, cc: &[i64], provenance: &str) -> Self {
        assert_eq!(cc.len(), self.poset.len(), "{}: {sheaf}", self.name);
        self.expected.push(Expectation {
            sheaf: sheaf.to_owned(),
            quantity: Quantity::Chi,
            value: chi,
            provenance: provenance.to_owned(),
        });
        let ids: Vec<StratumId> = self.poset.strata().iter().map(|s| s.id.clone()).collect();
        for (id, &c) in ids.into_iter().zip(cc) {
            self.expected.push(Expectation {
                sheaf: sheaf.to_owned(),
                quantity: Quantity::Multiplicity(id),
                value: c,
                provenance: provenance.to_owned(),
            });
        }
        self
    }

    fn orbit_closure(mut self, sheaf: &str, stratum: &str) -> Self {
        self.orbit_closures.push((sheaf.to_owned(), stratum.into()));
        self
    }

    fn orbit_point(mut self, stratum: &str, point: TorusPoint) -> Self {
        self.orbit_points.push((stratum.into(), point));
        self
    }
}

fn torus(rank: usize) -> RootSystem {
    RootSystem::build(Series::Torus, rank, None).expect("torus of small rank")
}

fn point(coords: &[&str]) -> TorusPoint {
    coords
        .iter()
        .map(|c| c.parse::<CoordValue>().expect("catalog coordinate"))
        .collect::<Vec<_>>()
        .into()
}

const HAND: &str = "hand evaluation of the index formula and the Euler integral";

fn torus1_two_points() -> CaseSpec {
    Builder::new(
        "torus1_two_points",
        "C* with the points 1 and -1 marked",
        torus(1),
    )
    .semisimple(
        "p1",
        0,
        1,
        0,
        TorusModel::Finite { count: 1 },
        TorusClosure::Points(1),
    )
    .semisimple(
        "p2",
        0,
        1,
        0,
        TorusModel::Finite { count: 1 },
        TorusClosure::Points(1),
    )
    .semisimple(
        "U",
        1,
        1,
        1,
        TorusModel::FullDimensional,
        TorusClosure::Torus,
    )
    .below(&[("p1", "U"), ("p2", "U")])
    .smooth(&["p1", "p2", "U"])
    .build()
    .sheaf("constant", &["p1", "p2", "U"])
    .sheaf("skyscraper", &["p1"])
    .sheaf("open_extension", &["U"])
    .sheaf("two_points", &["p1", "p2"])
    .expect(
        "constant",
        0,
        &[0, 0, -1],
        "chi(C*) = 0; smooth whole space has c = (-1)^1",
    )
    .expect(
        "skyscraper",
        1,
        &[1, 0, 0],
        "point sheaf: c is the point's conormal",
    )
    .expect("open_extension", -2, &[-1, -1, -1], HAND)
    .expect("two_points", 2, &[1, 1, 0], "sum of two point sheaves")
    .orbit_point("p1", point(&["1"]))
    .orbit_point("p2", point(&["w:1/2"]))
}

fn torus2_subtorus() -> CaseSpec {
    Builder::new(
        "torus2_subtorus",
        "(C*)^2 stratified by the subtorus {y = 1} and its complement",
        torus(2),
    )
    .semisimple(
        "S",
        1,
        2,
        1,
        TorusModel::Subtorus { dim: 1 },
        TorusClosure::Torus,
    )
    .semisimple(
        "U",
        2,
        2,
        2,
        TorusModel::FullDimensional,
        TorusClosure::Torus,
    )
    .below(&[("S", "U")])
    .smooth(&["S", "U"])
    .build()
    .sheaf("constant", &["S", "U"])
    .sheaf("subtorus", &["S"])
    .sheaf("open_extension", &["U"])
    .expect("constant", 0, &[0, 1], "smooth whole space has c = (-1)^2")
    .expect(
        "subtorus",
        0,
        &[-1, 0],
        "smooth closed subtorus has c = (-1)^1",
    )
    .expect("open_extension", 0, &[1, 1], HAND)
}

fn torus2_flag() -> CaseSpec {
    Builder::new(
        "torus2_flag",
        "(C*)^2 stratified by the point (1,1), the rest of the subtorus {y = 1}, and the complement",
        torus(2),
    )
    .semisimple("p", 0, 2, 0, TorusModel::Finite { count: 1 }, TorusClosure::Points(1))
    .semisimple("Sp", 1, 2, 1, TorusModel::Subtorus { dim: 1 }, TorusClosure::Torus)
    .semisimple("U", 2, 2, 2, TorusModel::FullDimensional, TorusClosure::Torus)
    .below(&[("p", "Sp"), ("p", "U"), ("Sp", "U")])
    .smooth(&["p", "Sp", "U"])
    .build()
    .sheaf("constant", &["p", "Sp", "U"])
    .sheaf("skyscraper", &["p"])
    .sheaf("subtorus", &["p", "Sp"])
    .sheaf("open_extension", &["U"])
    .expect("constant", 0, &[0, 0, 1], "smooth whole space has c = (-1)^2")
    .expect("skyscraper", 1, &[1, 0, 0], "point sheaf: c is the point's conormal")
    .expect("subtorus", 0, &[0, -1, 0], "smooth closed subtorus has c = (-1)^1")
    .expect("open_extension", 0, &[0, 1, 1], HAND)
    .orbit_point("p", point(&["1", "1"]))
}

fn torus2_line() -> CaseSpec {
    let simplex = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).expect("unit simplex");
    // {x + y + 1 = 0} ∩ (C*)^2 is C minus the two points x = 0 and x = -1.
    let curve = TorusClosure::Curve { chi_c: 1 - 2 };
    Builder::new(
        "torus2_line",
        "(C*)^2 stratified by the curve x + y + 1 = 0 and its complement",
        torus(2),
    )
    .semisimple(
        "C",
        1,
        2,
        1,
        TorusModel::Hypersurface { polytope: simplex },
        curve,
    )
    .semisimple(
        "U",
        2,
        2,
        2,
        TorusModel::FullDimensional,
        TorusClosure::Torus,
    )
    .below(&[("C", "U")])
    .smooth(&["C", "U"])
    .build()
    .sheaf("constant", &["C", "U"])
    .sheaf("curve", &["C"])
    .sheaf("open_extension", &["U"])
    .expect("constant", 0, &[0, 1], "smooth whole space has c = (-1)^2")
    .expect(
        "curve",
        -1,
        &[-1, 0],
        "chi of a thrice-punctured sphere; c = (-1)^1 on the curve",
    )
    .expect("open_extension", 1, &[1, 1], HAND)
}

fn sl2_builder(name: &'static str, description: &'static str) -> CaseSpec {
    let rs = RootSystem::build(Series::A, 1, Some(Realization::Sl)).expect("A1");
    Builder::new(name, description, rs)
        .semisimple(
            "I",
            0,
            3,
            0,
            TorusModel::Finite { count: 1 },
            TorusClosure::Points(1),
        )
        .semisimple(
            "mI",
            0,
            3,
            0,
            TorusModel::Finite { count: 1 },
            TorusClosure::Points(1),
        )
        .nonsemisimple("Ou", 2)
        .nonsemisimple("mOu", 2)
        .semisimple(
            "rs",
            3,
            1,
            1,
            TorusModel::FullDimensional,
            TorusClosure::Torus,
        )
        .below(&[
            ("I", "Ou"),
            ("I", "rs"),
            ("Ou", "rs"),
            ("mI", "mOu"),
            ("mI", "rs"),
            ("mOu", "rs"),
        ])
        .smooth(&["I", "mI", "rs"])
        .build()
        .orbit_point("I", point(&["1"]))
        .orbit_point("mI", point(&["w:1/2"]))
}

fn sl2_adjoint() -> CaseSpec {
    sl2_builder(
        "sl2_adjoint",
        "SL2 stratified by {I}, {-I}, the two nontrivial unipotent-type orbits, and the regular semisimple locus",
    )
    .sheaf("constant", &["I", "mI", "Ou", "mOu", "rs"])
    .sheaf("skyscraper", &["I"])
    .sheaf("orbit_closure", &["I", "Ou"])
    .sheaf("open_extension", &["rs"])
    .expect("constant", 0, &[0, 0, 0, 0, -1], "chi(SL2) = 0; smooth whole space has c = (-1)^3")
    .expect("skyscraper", 1, &[1, 0, 0, 0, 0], "point sheaf: c is the point's conormal")
    .expect("orbit_closure", 1, &[1, 0, 1, 0, 0], HAND)
    .expect("open_extension", -2, &[-1, -1, -1, -1, -1], HAND)
    .orbit_closure("orbit_closure", "I")
}

fn sl2_orbit_closure() -> CaseSpec {
    sl2_builder(
        "sl2_orbit_closure",
        "sheaves on SL2 supported on closures of the unipotent-type orbits",
    )
    .sheaf("orbit_closure", &["I", "Ou"])
    .sheaf("unipotent_orbit", &["Ou"])
    .sheaf("neg_orbit_closure", &["mI", "mOu"])
    .sheaf("both_orbit_closures", &["I", "Ou", "mI", "mOu"])
    .expect("orbit_closure", 1, &[1, 0, 1, 0, 0], HAND)
    .expect("unipotent_orbit", 0, &[0, 0, 1, 0, 0], HAND)
    .expect("neg_orbit_closure", 1, &[0, 1, 0, 1, 0], HAND)
    .expect("both_orbit_closures", 2, &[1, 1, 1, 1, 0], HAND)
    .orbit_closure("orbit_closure", "I")
    .orbit_closure("neg_orbit_closure", "mI")
}

fn gl2_adjoint() -> CaseSpec {
    let rs = RootSystem::build(Series::A, 1, Some(Realization::Gl)).expect("A1");
    Builder::new(
        "gl2_adjoint",
        "GL2 stratified by the center, the nonsemisimple elements, and the regular semisimple locus",
        rs,
    )
    .semisimple("Z", 1, 4, 1, TorusModel::Subtorus { dim: 1 }, TorusClosure::Torus)
    .nonsemisimple("N", 3)
    .semisimple("rs", 4, 2, 2, TorusModel::FullDimensional, TorusClosure::Torus)
    .below(&[("Z", "N"), ("Z", "rs"), ("N", "rs")])
    .smooth(&["Z", "rs"])
    .build()
    .sheaf("constant", &["Z", "N", "rs"])
    .sheaf("center", &["Z"])
    .sheaf("orbit_family_closure", &["Z", "N"])
    .sheaf("open_extension", &["rs"])
    .expect("constant", 0, &[0, 0, 1], "smooth whole space has c = (-1)^4")
    .expect("center", 0, &[-1, 0, 0], "smooth closed center has c = (-1)^1")
    .expect("orbit_family_closure", 0, &[-1, -1, 0], HAND)
    .expect("open_extension", 0, &[1, 1, 1], HAND)
}
