//! Deterministic plain-text reports behind the command-line front end.
//!
//! Every driver returns the report text together with the process exit code,
//! so the binary stays a thin shell and tests can call the drivers directly.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::casefile::parse_case_file;
use crate::catalog::{catalog_case, CaseSpec, Quantity, CASE_NAMES};
use crate::error::{Error, Result};
use crate::gdeg::{gauss_bonnet, gdeg_orbit, GdegAssignment, LatticePolytope};
use crate::strata::{
    cc_multiplicities, euler_integral, restrict_function, torus_restriction, validate,
    ConstructibleFunction, StratumKind, TorusModel,
};
use crate::weyl::{CoordValue, Realization, RootSystem, Series, TorusPoint};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Text plus exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn new(text: String, code: i32) -> Self {
        Outcome { text, code }
    }

    fn error(err: &Error) -> Self {
        let code = match err {
            Error::Validation(_) => EXIT_VALIDATION,
            _ => EXIT_PARSE,
        };
        Outcome::new(format!("error: {err}\n"), code)
    }
}

fn kind_label(kind: &StratumKind) -> &'static str {
    if kind.is_semisimple() {
        "ss"
    } else {
        "nss"
    }
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::from(" ");
        for (c, cell) in row.iter().enumerate() {
            let _ = write!(line, " {cell:<w$}", w = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Report for one sheaf of a parsed case.
pub fn compute_case(case: &CaseSpec, sheaf: &str) -> Outcome {
    let Some(f) = case.sheaves.get(sheaf) else {
        let names: Vec<&str> = case.sheaves.keys().map(String::as_str).collect();
        return Outcome::new(
            format!(
                "error: unknown sheaf `{sheaf}`; available: {}\n",
                names.join(", ")
            ),
            EXIT_PARSE,
        );
    };
    let mut out = String::new();
    let _ = writeln!(out, "case: {}", case.name);
    let _ = writeln!(out, "sheaf: {sheaf}");
    let report = validate(&case.poset, &case.links);
    if !report.is_valid() {
        let _ = writeln!(out, "validation: FAILED");
        for v in &report.violations {
            let _ = writeln!(out, "  {v}");
        }
        return Outcome::new(out, EXIT_VALIDATION);
    }
    let _ = writeln!(out, "validation: ok ({} strata)", case.poset.len());
    let gb = match gauss_bonnet(&case.poset, &case.links, f, &case.root_system) {
        Ok(gb) => gb,
        Err(e) => {
            let o = Outcome::error(&e);
            return Outcome::new(out + &o.text, o.code);
        }
    };
    let _ = writeln!(out, "strata:");
    let mut rows = vec![vec![
        "id".into(),
        "dim".into(),
        "kind".into(),
        "chi_c".into(),
        "gdeg".into(),
    ]];
    for s in case.poset.strata() {
        rows.push(vec![
            s.id.to_string(),
            s.dim.to_string(),
            kind_label(&s.kind).into(),
            s.chi_c.to_string(),
            gb.gdegs.get(&s.id).unwrap_or(0).to_string(),
        ]);
    }
    out.push_str(&table(&rows));
    let _ = writeln!(out, "multiplicities:");
    let mut rows = vec![vec!["id".into(), "chi".into(), "c".into()]];
    for (id, c) in gb.multiplicities.iter() {
        let chi = f.get(id).copied().unwrap_or(0);
        rows.push(vec![id.to_string(), chi.to_string(), c.to_string()]);
    }
    out.push_str(&table(&rows));
    for id in &gb.declared {
        let _ = writeln!(out, "note: gdeg of {id} is declared by the input");
    }
    let _ = writeln!(out, "chi_integral={}", gb.chi_via_integral);
    let _ = writeln!(out, "chi_cc={}", gb.chi_via_cc);
    if gb.is_match() {
        out.push_str("MATCH\n");
        Outcome::new(out, EXIT_OK)
    } else {
        out.push_str("MISMATCH\n");
        Outcome::new(out, EXIT_MISMATCH)
    }
}

/// Parses a case file and reports on one of its sheaves.
pub fn run_compute(text: &str, case_name: &str, sheaf: &str) -> Outcome {
    match parse_case_file(text, case_name) {
        Ok(case) => compute_case(&case, sheaf),
        Err(e) => Outcome::error(&e),
    }
}

/// `orbit <series> <rank> <SL|GL|-> <point>`.
pub fn run_orbit(series: &str, rank: usize, realization: &str, point: &str) -> Outcome {
    let result = (|| -> Result<String> {
        let series: Series = series.parse()?;
        let realization = match realization {
            "-" => None,
            r => Some(r.parse::<Realization>()?),
        };
        let rs = RootSystem::build(series, rank, realization)?;
        let t: TorusPoint = point.parse()?;
        if t.len() != rs.coordinate_count() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, the torus of {series}{rank} has {}",
                t.len(),
                rs.coordinate_count()
            )));
        }
        let summary = rs.orbit_summary(&t)?;
        let mut out = String::new();
        let _ = writeln!(out, "point={t}");
        let _ = writeln!(out, "|W|={}", summary.group_order);
        let _ = writeln!(out, "|orbit|={}", summary.orbit_size);
        let _ = writeln!(out, "|stab|={}", summary.stabilizer_order);
        let _ = writeln!(out, "chi_orbit={}", summary.euler_characteristic());
        let _ = writeln!(out, "gdeg_orbit={}", gdeg_orbit(&rs, &t)?);
        Ok(out)
    })();
    match result {
        Ok(text) => Outcome::new(text, EXIT_OK),
        Err(e) => Outcome::error(&e),
    }
}

/// Vertices, one per line, coordinates separated by whitespace or commas.
pub fn parse_vertices(text: &str) -> Result<LatticePolytope<BigInt>> {
    let mut vertices = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut column = 1;
        for piece in content.split(|c: char| c.is_whitespace() || c == ',') {
            if !piece.is_empty() {
                let v = piece.parse::<BigInt>().map_err(|_| Error::Parse {
                    line: i + 1,
                    column,
                    message: format!("expected an integer coordinate, found `{piece}`"),
                })?;
                row.push(v);
            }
            column += piece.chars().count() + 1;
        }
        vertices.push(row);
    }
    if vertices.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no vertices".into(),
        });
    }
    LatticePolytope::new(vertices)
}

pub fn run_volume(text: &str) -> Outcome {
    let result = parse_vertices(text).and_then(|p| {
        let dim = p.dim();
        let count = p.vertices().len();
        p.normalized_volume().map(|v| (dim, count, v))
    });
    match result {
        Ok((dim, count, v)) => Outcome::new(
            format!("dim={dim}\nvertices={count}\nnormalized_volume={v}\n"),
            EXIT_OK,
        ),
        Err(e) => Outcome::error(&e),
    }
}

/// Options for [`run_verify`].
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Restrict to one catalog case; skips the case-independent checks.
    pub case: Option<String>,
    /// Negative control: sets `e(I, rs) = 2` in `sl2_adjoint`.
    pub corrupt: bool,
}

#[derive(Debug, Clone)]
struct Check {
    scope: String,
    name: String,
    pass: bool,
    detail: String,
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(
        &mut self,
        scope: &str,
        name: impl Into<String>,
        pass: bool,
        detail: impl Into<String>,
    ) {
        self.0.push(Check {
            scope: scope.to_owned(),
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn push_result(&mut self, scope: &str, name: impl Into<String>, r: Result<(bool, String)>) {
        match r {
            Ok((pass, detail)) => self.push(scope, name, pass, detail),
            Err(e) => self.push(scope, name, false, format!("error: {e}")),
        }
    }
}

/// Applies the verification hook to a catalog case.
pub fn corrupt_case(case: &mut CaseSpec) {
    if case.name == "sl2_adjoint" {
        case.links.set(&"I".into(), &"rs".into(), 2);
    }
}

/// Runs every catalog case through every property check.
pub fn run_verify(opts: &VerifyOptions) -> Outcome {
    let names: Vec<&str> = match &opts.case {
        Some(name) => match catalog_case(name) {
            Ok(_) => vec![CASE_NAMES.iter().copied().find(|n| n == name).unwrap()],
            Err(e) => return Outcome::error(&e),
        },
        None => CASE_NAMES.to_vec(),
    };
    let mut checks = Checks(Vec::new());
    for name in names {
        let mut case = catalog_case(name).expect("known case");
        if opts.corrupt {
            corrupt_case(&mut case);
        }
        verify_case(&case, &mut checks);
    }
    if opts.case.is_none() {
        verify_orbits(&mut checks);
        verify_volumes(&mut checks);
    }
    let mut out = String::new();
    let mut failed = 0;
    for c in &checks.0 {
        if !c.pass {
            failed += 1;
        }
        let status = if c.pass { "PASS" } else { "FAIL" };
        let _ = write!(out, "{status} {} {}", c.scope, c.name);
        if !c.detail.is_empty() {
            let _ = write!(out, " {}", c.detail);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "checks={} failed={failed}", checks.0.len());
    let code = if failed == 0 { EXIT_OK } else { EXIT_MISMATCH };
    out.push_str(if failed == 0 {
        "ALL PASS\n"
    } else {
        "FAILURES\n"
    });
    Outcome::new(out, code)
}

fn verify_case(case: &CaseSpec, checks: &mut Checks) {
    let scope = case.name.as_str();
    let report = validate(&case.poset, &case.links);
    checks.push(
        scope,
        "validate",
        report.is_valid(),
        if report.is_valid() {
            String::new()
        } else {
            report.to_string().replace('\n', "; ")
        },
    );

    let restricted = torus_restriction(&case.poset, &case.links);
    for (sheaf, f) in &case.sheaves {
        checks.push_result(
            scope,
            format!("gauss_bonnet[{sheaf}]"),
            (|| {
                let gb = gauss_bonnet(&case.poset, &case.links, f, &case.root_system)?;
                Ok((
                    gb.is_match(),
                    format!(
                        "chi_integral={} chi_cc={}",
                        gb.chi_via_integral, gb.chi_via_cc
                    ),
                ))
            })(),
        );

        checks.push_result(
            scope,
            format!("expected[{sheaf}]"),
            (|| {
                let chi = euler_integral(&case.poset, f)?;
                let cc = cc_multiplicities(&case.poset, &case.links, f)?;
                let mut wrong = Vec::new();
                let mut count = 0;
                for e in case.expected.iter().filter(|e| &e.sheaf == sheaf) {
                    count += 1;
                    let got = match &e.quantity {
                        Quantity::Chi => chi,
                        Quantity::Multiplicity(id) => cc.get(id).copied().unwrap_or(0),
                    };
                    if got != e.value {
                        let what = match &e.quantity {
                            Quantity::Chi => "chi".to_owned(),
                            Quantity::Multiplicity(id) => format!("c[{id}]"),
                        };
                        wrong.push(format!("{what}={got}!={}", e.value));
                    }
                }
                let detail = if wrong.is_empty() {
                    format!("values={count}")
                } else {
                    wrong.join(" ")
                };
                Ok((wrong.is_empty(), detail))
            })(),
        );

        checks.push_result(
            scope,
            format!("localization[{sheaf}]"),
            (|| {
                let (tp, _) = restricted.clone()?;
                let ft = restrict_function(f, &tp)?;
                let g = euler_integral(&case.poset, f)?;
                let t = euler_integral(&tp, &ft)?;
                Ok((g == t, format!("chi_G={g} chi_T={t}")))
            })(),
        );

        checks.push_result(
            scope,
            format!("multiplicity_match[{sheaf}]"),
            (|| {
                let (tp, tl) = restricted.clone()?;
                let ft = restrict_function(f, &tp)?;
                let cg = cc_multiplicities(&case.poset, &case.links, f)?;
                let ct = cc_multiplicities(&tp, &tl, &ft)?;
                let mut wrong = Vec::new();
                for s in tp.strata() {
                    let (a, b) = (
                        cg.get(&s.id).copied().unwrap_or(0),
                        ct.get(&s.id).copied().unwrap_or(0),
                    );
                    if a != b {
                        wrong.push(format!("c[{}]={a}!={b}", s.id));
                    }
                }
                let detail = if wrong.is_empty() {
                    format!("strata={}", tp.len())
                } else {
                    wrong.join(" ")
                };
                Ok((wrong.is_empty(), detail))
            })(),
        );

        checks.push_result(
            scope,
            format!("bigint[{sheaf}]"),
            (|| {
                let small = gauss_bonnet(&case.poset, &case.links, f, &case.root_system)?;
                let big = gauss_bonnet(
                    &case.poset,
                    &case.links,
                    &f.convert::<BigInt>()?,
                    &case.root_system,
                )?;
                let same = big.chi_via_integral == BigInt::from(small.chi_via_integral)
                    && big.chi_via_cc == BigInt::from(small.chi_via_cc)
                    && big
                        .multiplicities
                        .iter()
                        .zip(small.multiplicities.iter())
                        .all(|((_, b), (_, s))| *b == BigInt::from(*s));
                Ok((same, String::new()))
            })(),
        );

        if let Ok(cc) = cc_multiplicities(&case.poset, &case.links, f) {
            if cc.values().all(|c| *c >= 0) {
                checks.push_result(
                    scope,
                    format!("nonnegativity[{sheaf}]"),
                    (|| {
                        let chi = euler_integral(&case.poset, f)?;
                        Ok((chi >= 0, format!("chi={chi}")))
                    })(),
                );
            }
        }
    }

    checks.push_result(
        scope,
        "linearity",
        (|| {
            let mut total = ConstructibleFunction::zero(&case.poset);
            let mut chi_sum = 0i64;
            let mut cc_sum: Vec<i64> = vec![0; case.poset.len()];
            for f in case.sheaves.values() {
                total = total.checked_add(f)?;
                chi_sum += euler_integral(&case.poset, f)?;
                for (slot, c) in cc_sum
                    .iter_mut()
                    .zip(cc_multiplicities(&case.poset, &case.links, f)?.values())
                {
                    *slot += c;
                }
            }
            let chi_total = euler_integral(&case.poset, &total)?;
            let cc_total: Vec<i64> = cc_multiplicities(&case.poset, &case.links, &total)?
                .values()
                .copied()
                .collect();
            let scaled = total.checked_scale(&-3)?;
            let chi_scaled = euler_integral(&case.poset, &scaled)?;
            let ok = chi_total == chi_sum && cc_total == cc_sum && chi_scaled == -3 * chi_total;
            Ok((ok, format!("chi_sum={chi_total}")))
        })(),
    );

    let gdegs = GdegAssignment::compute(&case.poset, &case.root_system);
    for id in &case.smooth_closures {
        let f = ConstructibleFunction::<i64>::constant_on_closure(&case.poset, id);
        let dim = case.poset.get(id).map(|s| s.dim).unwrap_or(0);
        let sign = if dim.is_multiple_of(2) { 1 } else { -1 };
        checks.push_result(
            scope,
            format!("smooth_cc[{id}]"),
            (|| {
                let cc = cc_multiplicities(&case.poset, &case.links, &f)?;
                let ok = cc.iter().all(|(b, c)| *c == if b == id { sign } else { 0 });
                Ok((ok, format!("c[{id}]={}", cc.get(id).copied().unwrap_or(0))))
            })(),
        );
        checks.push_result(
            scope,
            format!("hopf[{id}]"),
            (|| {
                let chi = euler_integral(&case.poset, &f)?;
                let g = gdegs.clone()?.get(id).unwrap_or(0) as i64;
                Ok((
                    sign * chi == g,
                    format!("signed_chi={} gdeg={g}", sign * chi),
                ))
            })(),
        );
    }

    for (sheaf, id) in &case.orbit_closures {
        checks.push_result(
            scope,
            format!("orbit_closure_cc[{sheaf}]"),
            (|| {
                let f = case
                    .sheaves
                    .get(sheaf)
                    .ok_or_else(|| Error::InvalidInput(format!("no sheaf {sheaf}")))?;
                let cc = cc_multiplicities(&case.poset, &case.links, f)?;
                let (c, chi) = (
                    cc.get(id).copied().unwrap_or(0),
                    f.get(id).copied().unwrap_or(0),
                );
                Ok((c == chi, format!("c[{id}]={c} chi[{id}]={chi}")))
            })(),
        );
    }

    for (id, point) in &case.orbit_points {
        checks.push_result(
            scope,
            format!("orbit_point[{id}]"),
            (|| {
                let summary = case.root_system.orbit_summary(point)?;
                let g = gdeg_orbit(&case.root_system, point)?;
                let s = case
                    .poset
                    .get(id)
                    .ok_or_else(|| Error::InvalidInput(format!("no stratum {id}")))?;
                let count = match &s.kind {
                    StratumKind::Semisimple {
                        torus_model: TorusModel::Finite { count },
                        ..
                    } => *count,
                    _ => return Ok((false, "stratum is not a finite torus set".into())),
                };
                let ok = summary.euler_characteristic() == g
                    && g == count
                    && s.chi_c == count as i64
                    && summary.group_order == summary.orbit_size * summary.stabilizer_order;
                Ok((
                    ok,
                    format!(
                        "point={point} |orbit|={} chi_c={}",
                        summary.orbit_size, s.chi_c
                    ),
                ))
            })(),
        );
    }
}

/// All classical root systems of rank ≤ 3 that admit a signed-permutation model.
pub fn small_root_systems() -> Vec<RootSystem> {
    let mut out = Vec::new();
    for rank in 1..=3 {
        if rank == 1 {
            out.push(RootSystem::build(Series::A, 1, Some(Realization::Sl)).expect("A1 SL"));
        }
        out.push(RootSystem::build(Series::A, rank, Some(Realization::Gl)).expect("A GL"));
        out.push(RootSystem::build(Series::B, rank, None).expect("B"));
        out.push(RootSystem::build(Series::C, rank, None).expect("C"));
        if rank >= 2 {
            out.push(RootSystem::build(Series::D, rank, None).expect("D"));
        }
    }
    out
}

/// Deterministic mix of generic, repeated, inverse-paired and torsion points.
pub fn sample_points(n: usize) -> Vec<TorusPoint> {
    let g = CoordValue::generic;
    let w = |p, q| CoordValue::root_of_unity(p, q).expect("valid root of unity");
    let patterns: Vec<Box<dyn Fn(usize) -> CoordValue>> = vec![
        Box::new(|_| CoordValue::identity()),
        Box::new(move |i| g(i + 1)),
        Box::new(move |_| g(1)),
        Box::new(move |i| g(i / 2 + 1)),
        Box::new(move |i| if i % 2 == 0 { g(1) } else { g(1).inv() }),
        Box::new(move |i| if i == 0 { w(1, 2) } else { g(i) }),
        Box::new(move |_| w(1, 2)),
        Box::new(move |i| w(i as i64, 3)),
        Box::new(move |i| g(1).pow(i as i64 + 1)),
        Box::new(move |i| if i % 2 == 0 { g(2) } else { g(1) }),
        Box::new(move |i| g(1).mul(&w(i as i64 % 2, 2))),
        Box::new(move |i| if i + 1 == n { g(1).inv() } else { g(1) }),
        Box::new(move |i| {
            if i == 0 {
                CoordValue::identity()
            } else {
                g(1).mul(&g(2).pow(i as i64))
            }
        }),
    ];
    patterns
        .iter()
        .map(|p| TorusPoint::new((0..n).map(p).collect()))
        .collect()
}

fn rs_label(rs: &RootSystem) -> String {
    match rs.realization() {
        Some(r) => format!("{}{}_{r}", rs.series(), rs.rank()),
        None => format!("{}{}", rs.series(), rs.rank()),
    }
}

fn verify_orbits(checks: &mut Checks) {
    for rs in small_root_systems() {
        let label = rs_label(&rs);
        checks.push_result(
            "weyl",
            format!("order[{label}]"),
            (|| {
                let w = rs.weyl_group()?;
                Ok((
                    w.len() as u64 == rs.classical_order(),
                    format!("|W|={}", w.len()),
                ))
            })(),
        );
        checks.push_result(
            "weyl",
            format!("orbit_stabilizer[{label}]"),
            (|| {
                let points = sample_points(rs.coordinate_count());
                let mut bad = Vec::new();
                for t in &points {
                    let s = rs.orbit_summary(t)?;
                    if s.group_order != s.orbit_size * s.stabilizer_order {
                        bad.push(t.to_string());
                    }
                }
                let detail = if bad.is_empty() {
                    format!("points={}", points.len())
                } else {
                    bad.join(" ")
                };
                Ok((bad.is_empty(), detail))
            })(),
        );
    }
}

/// Products of elementary integer matrices; determinant ±1 by construction.
pub fn unimodular_sequence(dim: usize, count: usize) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::with_capacity(count);
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..count {
        let mut m: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        for _ in 0..4 {
            let i = (next() % dim as u64) as usize;
            let j = (next() % dim as u64) as usize;
            if i == j {
                for x in m[i].iter_mut() {
                    *x = -*x;
                }
                continue;
            }
            let k = (next() % 5) as i64 - 2;
            let row = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(row) {
                *x += k * y;
            }
        }
        out.push(m);
    }
    out
}

fn volume(vertices: &[&[i64]]) -> Result<i64> {
    LatticePolytope::from_i64(vertices)?.normalized_volume()
}

fn verify_volumes(checks: &mut Checks) {
    checks.push_result(
        "volume",
        "segments",
        (|| {
            for d in 1..=10i64 {
                if volume(&[&[0], &[d]])? != d {
                    return Ok((false, format!("[0,{d}]")));
                }
            }
            Ok((true, "d=1..10".into()))
        })(),
    );
    checks.push_result(
        "volume",
        "unimodular_simplices",
        (|| {
            for n in 1..=4usize {
                let mut verts = vec![vec![0i64; n]];
                for i in 0..n {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    verts.push(v);
                }
                if LatticePolytope::new(verts)?.normalized_volume()? != 1 {
                    return Ok((false, format!("n={n}")));
                }
            }
            Ok((true, "n=1..4".into()))
        })(),
    );
    let square: &[&[i64]] = &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]];
    checks.push_result(
        "volume",
        "unit_square",
        volume(square).map(|v| (v == 2, format!("volume={v}"))),
    );
    checks.push_result(
        "volume",
        "unimodular_invariance",
        (|| {
            let shapes: [&[&[i64]]; 3] = [
                square,
                &[&[0, 0], &[3, 1], &[1, 2]],
                &[&[0, 0], &[2, 0], &[3, 2], &[1, 3], &[-1, 1]],
            ];
            let maps = unimodular_sequence(2, 20);
            for shape in shapes {
                let p = LatticePolytope::from_i64(shape)?;
                let v = p.normalized_volume()?;
                for (k, m) in maps.iter().enumerate() {
                    let shift = [k as i64 - 7, 3 - 2 * k as i64];
                    let q = p.transform(m)?.translate(&shift)?;
                    if q.normalized_volume()? != v {
                        return Ok((false, format!("map {k}")));
                    }
                }
            }
            Ok((true, format!("maps={}", maps.len())))
        })(),
    );
    checks.push_result(
        "volume",
        "subdivision",
        (|| {
            let lower = volume(&[&[0, 0], &[1, 0], &[1, 1]])?;
            let upper = volume(&[&[0, 0], &[0, 1], &[1, 1]])?;
            let whole = volume(square)?;
            Ok((lower + upper == whole, format!("{lower}+{upper}={whole}")))
        })(),
    );
}
