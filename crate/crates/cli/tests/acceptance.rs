//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p gbcheck --test acceptance -- --nocapture` to see the
//! summary lines.

use std::collections::HashSet;
use std::process::Command;
use std::time::Instant;

use gbcheck_core::casefile::export_case;
use gbcheck_core::catalog::{all_cases, catalog_case, CaseSpec, Quantity};
use gbcheck_core::gdeg::{gauss_bonnet, GdegAssignment, LatticePolytope};
use gbcheck_core::report::small_root_systems;
use gbcheck_core::strata::{
    cc_multiplicities, euler_integral, restrict_function, torus_restriction, ConstructibleFunction,
    StratumId,
};
use gbcheck_core::weyl::{CoordValue, TorusPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(label: &str, title: &str, failures: &[String]) -> bool {
    if failures.is_empty() {
        println!("PASS {label}: {title}");
        true
    } else {
        println!("FAIL {label}: {title}");
        for f in failures {
            println!("    {f}");
        }
        false
    }
}

fn id(s: &str) -> StratumId {
    StratumId::from(s)
}

fn gbcheck(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gbcheck"))
        .args(args)
        .output()
        .expect("binary runs");
    let mut text = String::from_utf8(out.stdout).unwrap();
    text.push_str(&String::from_utf8(out.stderr).unwrap());
    (out.status.code().unwrap_or(-1), text)
}

fn criterion_1(cases: &[CaseSpec]) -> Vec<String> {
    let start = Instant::now();
    let mut bad = Vec::new();
    if cases.len() < 5 {
        bad.push(format!("only {} cases", cases.len()));
    }
    for case in cases {
        if case.sheaves.len() < 3 {
            bad.push(format!(
                "{}: only {} sheaves",
                case.name,
                case.sheaves.len()
            ));
        }
        for (name, f) in &case.sheaves {
            let gb = gauss_bonnet(&case.poset, &case.links, f, &case.root_system).unwrap();
            if !gb.is_match() {
                bad.push(format!(
                    "{} {name}: chi_integral={} chi_cc={}",
                    case.name, gb.chi_via_integral, gb.chi_via_cc
                ));
            }
        }
    }
    let batteries = [
        ("sl2_adjoint", ["constant", "skyscraper", "orbit_closure"]),
        (
            "torus1_two_points",
            ["constant", "skyscraper", "two_points"],
        ),
    ];
    for (case, names) in batteries {
        let c = catalog_case(case).unwrap();
        for n in names {
            if !c.sheaves.contains_key(n) {
                bad.push(format!("{case}: missing sheaf {n}"));
            }
        }
    }
    if start.elapsed().as_secs_f64() >= 5.0 {
        bad.push(format!("took {:?}", start.elapsed()));
    }
    bad
}

fn criterion_2() -> Vec<String> {
    let case = catalog_case("sl2_adjoint").unwrap();
    let (p, l) = (&case.poset, &case.links);
    let order = ["I", "mI", "Ou", "mOu", "rs"];
    let mut bad = Vec::new();
    let mut check = |sheaf: &str, chi: i64, cc: &[(&str, i64)]| {
        let f = &case.sheaves[sheaf];
        let got_chi = euler_integral(p, f).unwrap();
        if got_chi != chi {
            bad.push(format!("{sheaf}: chi={got_chi}, want {chi}"));
        }
        let c = cc_multiplicities(p, l, f).unwrap();
        for (s, v) in cc {
            let got = *c.get(&id(s)).unwrap();
            if got != *v {
                bad.push(format!("{sheaf}: c[{s}]={got}, want {v}"));
            }
        }
    };
    let constant: Vec<(&str, i64)> = order.iter().copied().zip([0, 0, 0, 0, -1]).collect();
    check("constant", 0, &constant);
    check("skyscraper", 1, &[("I", 1)]);
    check("orbit_closure", 1, &[("I", 1), ("Ou", 1)]);
    let f = &case.sheaves["orbit_closure"];
    let c = cc_multiplicities(p, l, f).unwrap();
    if c.get(&id("I")) != f.get(&id("I")) {
        bad.push("orbit-closure identity c_I = chi_I fails".into());
    }
    bad
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> TorusPoint {
    let pool: Vec<CoordValue> = (0..n)
        .map(|_| {
            let base = CoordValue::generic(rng.gen_range(1..=3));
            match rng.gen_range(0..5) {
                0 => CoordValue::identity(),
                1 => base.inv(),
                2 => CoordValue::root_of_unity(rng.gen_range(0..6), 6).unwrap(),
                3 => base.mul(&CoordValue::root_of_unity(1, 2).unwrap()),
                _ => base,
            }
        })
        .collect();
    let coords = (0..n)
        .map(|i| {
            // Repeat or inverse-pair an earlier coordinate half of the time.
            if i > 0 && rng.gen_bool(0.5) {
                let j = rng.gen_range(0..i);
                if rng.gen_bool(0.5) {
                    pool[j].clone()
                } else {
                    pool[j].inv()
                }
            } else {
                pool[i].clone()
            }
        })
        .collect();
    TorusPoint::new(coords)
}

fn criterion_3() -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = Vec::new();
    for rs in small_root_systems() {
        let group = rs.weyl_group().unwrap();
        for _ in 0..12 {
            let t = random_point(&mut rng, rs.coordinate_count());
            let orbit: HashSet<TorusPoint> = group.iter().map(|w| w.act(&t).unwrap()).collect();
            let stab = group.iter().filter(|w| w.act(&t).unwrap() == t).count();
            let s = rs.orbit_summary(&t).unwrap();
            if group.len() / stab != orbit.len()
                || s.orbit_size as usize != orbit.len()
                || s.stabilizer_order as usize != stab
                || group.len() as u64 != rs.classical_order()
            {
                bad.push(format!("{:?}{} at {t}", rs.series(), rs.rank()));
            }
        }
    }
    bad
}

fn criterion_4(cases: &[CaseSpec]) -> Vec<String> {
    let mut bad = Vec::new();
    for case in cases {
        let (tp, tl) = torus_restriction(&case.poset, &case.links).unwrap();
        for (name, f) in &case.sheaves {
            let ft = restrict_function(f, &tp).unwrap();
            let (g, t) = (
                euler_integral(&case.poset, f).unwrap(),
                euler_integral(&tp, &ft).unwrap(),
            );
            if g != t {
                bad.push(format!("{} {name}: chi_G={g} chi_T={t}", case.name));
            }
            let cg = cc_multiplicities(&case.poset, &case.links, f).unwrap();
            let ct = cc_multiplicities(&tp, &tl, &ft).unwrap();
            for s in tp.strata() {
                if cg.get(&s.id) != ct.get(&s.id) {
                    bad.push(format!(
                        "{} {name}: multiplicity of {} differs",
                        case.name, s.id
                    ));
                }
            }
        }
    }
    bad
}

fn vol(points: &[Vec<i64>]) -> i64 {
    LatticePolytope::new(points.to_vec())
        .unwrap()
        .normalized_volume()
        .unwrap()
}

fn criterion_5() -> Vec<String> {
    let mut bad = Vec::new();
    for d in 1..=10 {
        if vol(&[vec![0], vec![d]]) != d {
            bad.push(format!("segment [0,{d}]"));
        }
    }
    for n in 1..=4usize {
        let mut s = vec![vec![0; n]];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            s.push(e);
        }
        if vol(&s) != 1 {
            bad.push(format!("unimodular simplex n={n}"));
        }
    }
    let square = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
    if vol(&square) != 2 {
        bad.push("unit square".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let shapes = [
        square.clone(),
        vec![vec![0, 0], vec![3, 1], vec![1, 2], vec![2, 5]],
    ];
    for shape in &shapes {
        let p = LatticePolytope::new(shape.clone()).unwrap();
        let v = p.normalized_volume().unwrap();
        for k in 0..20 {
            let mut m = vec![vec![1i64, 0], vec![0, 1]];
            for _ in 0..5 {
                let (i, j) = if rng.gen_bool(0.5) { (0, 1) } else { (1, 0) };
                let c = rng.gen_range(-3..=3);
                let row = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(row) {
                    *x += c * y;
                }
                if rng.gen_bool(0.3) {
                    m.swap(0, 1);
                }
            }
            let shift = [rng.gen_range(-20..=20), rng.gen_range(-20..=20)];
            let q = p.transform(&m).unwrap().translate(&shift).unwrap();
            if q.normalized_volume().unwrap() != v {
                bad.push(format!("transform {k} changed the volume of {shape:?}"));
            }
        }
    }
    let lower = vol(&[vec![0, 0], vec![1, 0], vec![1, 1]]);
    let upper = vol(&[vec![0, 0], vec![0, 1], vec![1, 1]]);
    if lower + upper != vol(&square) {
        bad.push("subdivision additivity".into());
    }
    bad
}

fn criterion_6(cases: &[CaseSpec]) -> Vec<String> {
    let mut bad = Vec::new();
    let mut seen = 0;
    for case in cases {
        let gdegs = GdegAssignment::compute(&case.poset, &case.root_system).unwrap();
        for sid in &case.smooth_closures {
            seen += 1;
            let s = case.poset.get(sid).unwrap();
            let f = ConstructibleFunction::<i64>::constant_on_closure(&case.poset, sid);
            let chi = euler_integral(&case.poset, &f).unwrap();
            let signed = if s.dim % 2 == 0 { chi } else { -chi };
            let g = gdegs.get(sid).unwrap() as i64;
            if signed != g {
                bad.push(format!(
                    "{} {sid}: (-1)^dim chi={signed}, gdeg={g}",
                    case.name
                ));
            }
        }
    }
    if seen == 0 {
        bad.push("no smooth closures in catalog".into());
    }
    bad
}

fn criterion_7() -> Vec<String> {
    let mut bad = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let text = export_case(&catalog_case("sl2_adjoint").unwrap());
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    };
    let diag = write("diag.case", &text.replace("e I I = -1", "e I I = 0"));
    let (code, out) = gbcheck(&["compute", &diag, "--sheaf", "constant"]);
    if code != 2 || !out.contains("diagonal link") {
        bad.push(format!("corrupted diagonal: exit {code}"));
    }
    let parity = write(
        "parity.case",
        &text.replace("I 0 ss 3 0 finite:1 1", "I 1 ss 3 0 finite:1 1"),
    );
    let (code, out) = gbcheck(&["compute", &parity, "--sheaf", "constant"]);
    if code != 2 || !out.contains("orbit-direction parity") {
        bad.push(format!("parity violation: exit {code}"));
    }
    let wrong = write("wrong.case", &text.replace("e I rs = 1", "e I rs = 2"));
    let (code, out) = gbcheck(&["compute", &wrong, "--sheaf", "constant"]);
    if code != 3 || !out.contains("MISMATCH") {
        bad.push(format!("wrong e-value: exit {code}"));
    }
    let (code, out) = gbcheck(&["verify", "--corrupt"]);
    if code != 3 || !out.contains("FAIL ") {
        bad.push(format!("verify --corrupt: exit {code}"));
    }
    bad
}

fn criterion_8() -> Vec<String> {
    let (c1, a) = gbcheck(&["verify"]);
    let (c2, b) = gbcheck(&["verify"]);
    let mut bad = Vec::new();
    if c1 != 0 || c2 != 0 {
        bad.push(format!("verify exit codes {c1}, {c2}"));
    }
    if a != b {
        bad.push("verify output differs between runs".into());
    }
    bad
}

/// Catalog expectations are the same numbers the criteria above rely on.
fn expected_values(cases: &[CaseSpec]) -> Vec<String> {
    let mut bad = Vec::new();
    for case in cases {
        for e in &case.expected {
            let f = &case.sheaves[&e.sheaf];
            let got = match &e.quantity {
                Quantity::Chi => euler_integral(&case.poset, f).unwrap(),
                Quantity::Multiplicity(s) => *cc_multiplicities(&case.poset, &case.links, f)
                    .unwrap()
                    .get(s)
                    .unwrap(),
            };
            if got != e.value || e.provenance.is_empty() {
                bad.push(format!("{} {} {:?}", case.name, e.sheaf, e.quantity));
            }
        }
    }
    bad
}

#[test]
fn acceptance() {
    let cases = all_cases();
    let results = [
        report(
            "criterion 1",
            "Gauss-Bonnet identity on every case and sheaf",
            &criterion_1(&cases),
        ),
        report("criterion 2", "SL2 pinned values", &criterion_2()),
        report(
            "criterion 3",
            "orbit formula by exhaustive enumeration",
            &criterion_3(),
        ),
        report(
            "criterion 4",
            "torus localization and multiplicity matching",
            &criterion_4(&cases),
        ),
        report("criterion 5", "normalized volume oracle", &criterion_5()),
        report(
            "criterion 6",
            "Hopf check on smooth closures",
            &criterion_6(&cases),
        ),
        report("criterion 7", "negative controls", &criterion_7()),
        report("criterion 8", "verify is deterministic", &criterion_8()),
    ];
    let catalog_ok = report(
        "catalog",
        "expectations reproduced",
        &expected_values(&cases),
    );
    assert!(results.iter().all(|&r| r) && catalog_ok);
}
