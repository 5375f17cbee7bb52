//! Plain-text case files.
//!
//! ```text
//! # comment
//! [group]
//! series = A
//! rank = 1
//! realization = SL
//!
//! [strata]
//! # id dim kind rank dim_in_torus torus_model chi_c
//! I  0 ss  3 0 finite:1 1
//! Ou 2 nss - - -        0
//! rs 3 ss  1 1 full     -2
//!
//! [closure]
//! I < Ou
//!
//! [links]
//! e I Ou = 0
//!
//! [sheaf constant]
//! I = 1
//!
//! [smooth]
//! I rs
//! ```
//!
//! Torus models: `finite:N`, `full`, `subtorus:D`, `declared:G`, and
//! `hypersurface:x,y;x,y;...` listing Newton polytope vertices. Diagonal
//! links default to `-1`; sheaf values default to `0`.

use std::fmt::Write as _;

use indexmap::IndexMap;

use crate::catalog::CaseSpec;
use crate::error::{Error, Result};
use crate::gdeg::LatticePolytope;
use crate::strata::{
    ConstructibleFunction, LinkData, StratPoset, Stratum, StratumId, StratumKind, TorusModel,
};
use crate::weyl::{Realization, RootSystem, Series};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (line[..s].chars().count() + 1, t))
        .collect()
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

#[derive(Debug, PartialEq)]
enum Section {
    None,
    Group,
    Strata,
    Closure,
    Links,
    Sheaf(String),
    Smooth,
}

#[derive(Default)]
struct GroupSpec {
    series: Option<(usize, Series)>,
    rank: Option<usize>,
    realization: Option<Realization>,
}

struct Parser {
    name: String,
    section: Section,
    group: GroupSpec,
    root_system: Option<RootSystem>,
    strata: Vec<Stratum>,
    relations: Vec<(StratumId, StratumId)>,
    poset: Option<StratPoset>,
    links: Option<LinkData>,
    sheaves: IndexMap<String, ConstructibleFunction<i64>>,
    smooth: Vec<StratumId>,
}

fn parse_int<T: std::str::FromStr>(tok: (usize, &str), line: usize, what: &str) -> Result<T> {
    tok.1
        .parse()
        .map_err(|_| parse_err(line, tok.0, format!("expected {what}, found `{}`", tok.1)))
}

fn parse_torus_model(tok: (usize, &str), line: usize) -> Result<TorusModel> {
    let (col, text) = tok;
    let (head, arg) = match text.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (text, None),
    };
    let need_arg =
        || arg.ok_or_else(|| parse_err(line, col, format!("`{head}` needs an argument")));
    let num = |a: &str| -> Result<u64> {
        a.parse()
            .map_err(|_| parse_err(line, col, format!("bad number `{a}` in torus model")))
    };
    match head {
        "finite" => Ok(TorusModel::Finite {
            count: num(need_arg()?)?,
        }),
        "full" if arg.is_none() => Ok(TorusModel::FullDimensional),
        "subtorus" => Ok(TorusModel::Subtorus {
            dim: num(need_arg()?)? as usize,
        }),
        "declared" => Ok(TorusModel::Declared {
            gdeg: num(need_arg()?)?,
        }),
        "hypersurface" => {
            let vertices = need_arg()?
                .split(';')
                .map(|v| {
                    v.split(',')
                        .map(|x| {
                            x.trim().parse::<i64>().map_err(|_| {
                                parse_err(line, col, format!("bad polytope coordinate `{x}`"))
                            })
                        })
                        .collect::<Result<Vec<i64>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let polytope =
                LatticePolytope::new(vertices).map_err(|e| parse_err(line, col, e.to_string()))?;
            Ok(TorusModel::Hypersurface { polytope })
        }
        _ => Err(parse_err(
            line,
            col,
            format!("unknown torus model `{text}`"),
        )),
    }
}

impl Parser {
    fn require_strata(&mut self, line: usize) -> Result<&StratPoset> {
        if self.poset.is_none() {
            return Err(parse_err(
                line,
                1,
                "section requires a preceding [strata] section",
            ));
        }
        Ok(self.poset.as_ref().unwrap())
    }

    fn known(&self, tok: (usize, &str), line: usize) -> Result<StratumId> {
        let id = StratumId::from(tok.1);
        let present = match &self.poset {
            Some(p) => p.position(&id).is_some(),
            None => self.strata.iter().any(|s| s.id == id),
        };
        if present {
            Ok(id)
        } else {
            Err(parse_err(
                line,
                tok.0,
                format!("unknown stratum `{}`", tok.1),
            ))
        }
    }

    fn finish_group(&mut self, line: usize) -> Result<()> {
        if self.root_system.is_some() {
            return Ok(());
        }
        let (series_line, series) = self
            .group
            .series
            .ok_or_else(|| parse_err(line, 1, "[group] must set `series`"))?;
        let rank = self
            .group
            .rank
            .ok_or_else(|| parse_err(line, 1, "[group] must set `rank`"))?;
        let rs = RootSystem::build(series, rank, self.group.realization)
            .map_err(|e| parse_err(series_line, 1, e.to_string()))?;
        self.root_system = Some(rs);
        Ok(())
    }

    fn finish_strata(&mut self, line: usize) -> Result<()> {
        if self.poset.is_some() {
            return Ok(());
        }
        let rs = self
            .root_system
            .as_ref()
            .expect("group finished before strata");
        let poset = StratPoset::new(
            std::mem::take(&mut self.strata),
            std::mem::take(&mut self.relations),
            rs.group_dim(),
            rs.torus_dim(),
        )
        .map_err(|e| parse_err(line, 1, e.to_string()))?;
        self.links = Some(LinkData::with_diagonal(&poset));
        self.poset = Some(poset);
        Ok(())
    }

    fn header(&mut self, text: &str, line: usize) -> Result<()> {
        let inner = text
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| parse_err(line, 1, "malformed section header"))?
            .trim();
        let next = match inner.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["group"] => Section::Group,
            ["strata"] => Section::Strata,
            ["closure"] => Section::Closure,
            ["links"] => Section::Links,
            ["smooth"] => Section::Smooth,
            ["sheaf", name] => Section::Sheaf((*name).to_owned()),
            _ => return Err(parse_err(line, 2, format!("unknown section `[{inner}]`"))),
        };
        match next {
            Section::Group => {
                if self.root_system.is_some() || self.section != Section::None {
                    return Err(parse_err(line, 1, "[group] must come first and only once"));
                }
            }
            Section::Strata => {
                if self.poset.is_some() || !self.strata.is_empty() {
                    return Err(parse_err(line, 1, "duplicate [strata] section"));
                }
                self.finish_group(line)?;
            }
            Section::Closure => {
                if self.poset.is_some() {
                    return Err(parse_err(
                        line,
                        1,
                        "[closure] must precede links and sheaves",
                    ));
                }
                if self.root_system.is_none() {
                    return Err(parse_err(
                        line,
                        1,
                        "section requires a preceding [strata] section",
                    ));
                }
            }
            Section::Sheaf(ref name) => {
                self.finish_strata(line)?;
                if self.sheaves.contains_key(name) {
                    return Err(parse_err(line, 1, format!("duplicate sheaf `{name}`")));
                }
                let f = ConstructibleFunction::zero(self.require_strata(line)?);
                self.sheaves.insert(name.clone(), f);
            }
            Section::Links | Section::Smooth => {
                if self.root_system.is_none() {
                    return Err(parse_err(
                        line,
                        1,
                        "section requires a preceding [strata] section",
                    ));
                }
                self.finish_strata(line)?;
            }
            Section::None => unreachable!(),
        }
        self.section = next;
        Ok(())
    }

    fn group_line(&mut self, toks: &[(usize, &str)], line: usize) -> Result<()> {
        let [key, eq, value] = toks else {
            return Err(parse_err(line, toks[0].0, "expected `key = value`"));
        };
        if eq.1 != "=" {
            return Err(parse_err(line, eq.0, "expected `=`"));
        }
        match key.1 {
            "series" => {
                let s = value
                    .1
                    .parse()
                    .map_err(|e: Error| parse_err(line, value.0, e.to_string()))?;
                self.group.series = Some((line, s));
            }
            "rank" => self.group.rank = Some(parse_int(*value, line, "a rank")?),
            "realization" => {
                if value.1 != "-" {
                    let r = value
                        .1
                        .parse()
                        .map_err(|e: Error| parse_err(line, value.0, e.to_string()))?;
                    self.group.realization = Some(r);
                }
            }
            other => return Err(parse_err(line, key.0, format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    fn strata_line(&mut self, toks: &[(usize, &str)], line: usize) -> Result<()> {
        if toks.len() != 7 {
            return Err(parse_err(
                line,
                toks[0].0,
                format!("stratum line needs 7 fields, found {}", toks.len()),
            ));
        }
        let id = StratumId::from(toks[0].1);
        if self.strata.iter().any(|s| s.id == id) {
            return Err(parse_err(
                line,
                toks[0].0,
                format!("duplicate stratum `{id}`"),
            ));
        }
        let dim: usize = parse_int(toks[1], line, "a dimension")?;
        let chi_c: i64 = parse_int(toks[6], line, "an integer chi_c")?;
        let kind = match toks[2].1 {
            "ss" | "semisimple" => StratumKind::Semisimple {
                rank: parse_int(toks[3], line, "a rank")?,
                dim_in_torus: parse_int(toks[4], line, "dim_in_torus")?,
                torus_model: parse_torus_model(toks[5], line)?,
            },
            "nss" | "nonsemisimple" => {
                for &t in &toks[3..6] {
                    if t.1 != "-" {
                        return Err(parse_err(line, t.0, "nonsemisimple strata take `-` here"));
                    }
                }
                StratumKind::Nonsemisimple
            }
            other => {
                return Err(parse_err(
                    line,
                    toks[2].0,
                    format!("unknown kind `{other}` (expected ss or nss)"),
                ))
            }
        };
        self.strata.push(Stratum {
            id,
            dim,
            kind,
            chi_c,
        });
        Ok(())
    }

    fn closure_line(&mut self, toks: &[(usize, &str)], line: usize) -> Result<()> {
        let [a, lt, b] = toks else {
            return Err(parse_err(line, toks[0].0, "expected `a < b`"));
        };
        if lt.1 != "<" {
            return Err(parse_err(line, lt.0, "expected `<`"));
        }
        let a = self.known(*a, line)?;
        let b = self.known(*b, line)?;
        self.relations.push((a, b));
        Ok(())
    }

    fn links_line(&mut self, toks: &[(usize, &str)], line: usize) -> Result<()> {
        let [e, a, b, eq, v] = toks else {
            return Err(parse_err(line, toks[0].0, "expected `e a b = integer`"));
        };
        if e.1 != "e" {
            return Err(parse_err(line, e.0, "link lines start with `e`"));
        }
        if eq.1 != "=" {
            return Err(parse_err(line, eq.0, "expected `=`"));
        }
        let a = self.known(*a, line)?;
        let b = self.known(*b, line)?;
        let v: i64 = parse_int(*v, line, "an integer")?;
        self.links
            .as_mut()
            .expect("links exist after strata")
            .set(&a, &b, v);
        Ok(())
    }

    fn sheaf_line(&mut self, name: &str, toks: &[(usize, &str)], line: usize) -> Result<()> {
        let [id, eq, v] = toks else {
            return Err(parse_err(line, toks[0].0, "expected `id = integer`"));
        };
        if eq.1 != "=" {
            return Err(parse_err(line, eq.0, "expected `=`"));
        }
        let id = self.known(*id, line)?;
        let v: i64 = parse_int(*v, line, "an integer")?;
        self.sheaves
            .get_mut(name)
            .expect("sheaf registered by header")
            .set(&id, v);
        Ok(())
    }

    fn smooth_line(&mut self, toks: &[(usize, &str)], line: usize) -> Result<()> {
        for &t in toks {
            let id = self.known(t, line)?;
            if !self.smooth.contains(&id) {
                self.smooth.push(id);
            }
        }
        Ok(())
    }
}

/// Parses a case file. Validation of the stratification is left to the caller.
pub fn parse_case_file(text: &str, name: &str) -> Result<CaseSpec> {
    let mut p = Parser {
        name: name.to_owned(),
        section: Section::None,
        group: GroupSpec::default(),
        root_system: None,
        strata: Vec::new(),
        relations: Vec::new(),
        poset: None,
        links: None,
        sheaves: IndexMap::new(),
        smooth: Vec::new(),
    };
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = strip_comment(raw);
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('[') {
            p.header(trimmed, line)?;
            continue;
        }
        let toks = tokens(content);
        match p.section {
            Section::None => return Err(parse_err(line, toks[0].0, "content outside any section")),
            Section::Group => p.group_line(&toks, line)?,
            Section::Strata => p.strata_line(&toks, line)?,
            Section::Closure => p.closure_line(&toks, line)?,
            Section::Links => p.links_line(&toks, line)?,
            Section::Sheaf(ref name) => {
                let name = name.clone();
                p.sheaf_line(&name, &toks, line)?
            }
            Section::Smooth => p.smooth_line(&toks, line)?,
        }
    }
    let end = last_line + 1;
    if p.root_system.is_none() {
        return Err(parse_err(end, 1, "missing [group] and [strata] sections"));
    }
    if p.poset.is_none() && p.strata.is_empty() && p.section == Section::Group {
        return Err(parse_err(end, 1, "missing [strata] section"));
    }
    p.finish_strata(end)?;
    Ok(CaseSpec {
        name: p.name,
        description: String::new(),
        root_system: p.root_system.expect("checked above"),
        poset: p.poset.expect("finished above"),
        links: p.links.expect("finished above"),
        sheaves: p.sheaves,
        expected: Vec::new(),
        smooth_closures: p.smooth,
        orbit_closures: Vec::new(),
        orbit_points: Vec::new(),
    })
}

fn torus_model_token(model: &TorusModel) -> String {
    match model {
        TorusModel::Finite { count } => format!("finite:{count}"),
        TorusModel::FullDimensional => "full".to_owned(),
        TorusModel::Subtorus { dim } => format!("subtorus:{dim}"),
        TorusModel::Declared { gdeg } => format!("declared:{gdeg}"),
        TorusModel::Hypersurface { polytope } => {
            let verts: Vec<String> = polytope
                .vertices()
                .iter()
                .map(|v| v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
                .collect();
            format!("hypersurface:{}", verts.join(";"))
        }
    }
}

/// Renders a case in the case-file format.
pub fn export_case(case: &CaseSpec) -> String {
    let mut out = String::new();
    let rs = &case.root_system;
    let _ = writeln!(out, "# case: {}", case.name);
    if !case.description.is_empty() {
        let _ = writeln!(out, "# {}", case.description);
    }
    let _ = writeln!(out, "[group]");
    let _ = writeln!(out, "series = {}", rs.series());
    let _ = writeln!(out, "rank = {}", rs.rank());
    if let Some(r) = rs.realization() {
        let _ = writeln!(out, "realization = {r}");
    }
    let _ = writeln!(out, "\n[strata]");
    let _ = writeln!(out, "# id dim kind rank dim_in_torus torus_model chi_c");
    for s in case.poset.strata() {
        let (kind, rank, dit, model) = match &s.kind {
            StratumKind::Semisimple {
                rank,
                dim_in_torus,
                torus_model,
            } => (
                "ss",
                rank.to_string(),
                dim_in_torus.to_string(),
                torus_model_token(torus_model),
            ),
            StratumKind::Nonsemisimple => ("nss", "-".into(), "-".into(), "-".into()),
        };
        let _ = writeln!(
            out,
            "{} {} {kind} {rank} {dit} {model} {}",
            s.id, s.dim, s.chi_c
        );
    }
    if !case.poset.relations().is_empty() {
        let _ = writeln!(out, "\n[closure]");
        for (a, b) in case.poset.relations() {
            let _ = writeln!(out, "{a} < {b}");
        }
    }
    let _ = writeln!(out, "\n[links]");
    for (a, b, v) in case.links.iter() {
        let _ = writeln!(out, "e {a} {b} = {v}");
    }
    for (name, f) in &case.sheaves {
        let _ = writeln!(out, "\n[sheaf {name}]");
        for (id, v) in f.iter() {
            let _ = writeln!(out, "{id} = {v}");
        }
    }
    if !case.smooth_closures.is_empty() {
        let ids: Vec<&str> = case.smooth_closures.iter().map(StratumId::as_str).collect();
        let _ = writeln!(out, "\n[smooth]\n{}", ids.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_case;
    use crate::strata::{validate, ViolationKind};

    const SL2: &str = "\
[group]
series = A
rank = 1
realization = SL

[strata]
I 0 ss 3 0 finite:1 1    # the identity
mI 0 ss 3 0 finite:1 1
Ou 2 nss - - - 0
mOu 2 nss - - - 0
rs 3 ss 1 1 full -2

[closure]
I < Ou
Ou < rs
I < rs
mI < mOu
mOu < rs
mI < rs

[links]
e I Ou = 0
e I rs = 1
e Ou rs = 1
e mI mOu = 0
e mI rs = 1
e mOu rs = 1

[sheaf constant]
I = 1
mI = 1
Ou = 1
mOu = 1
rs = 1
";

    #[test]
    fn parses_hand_written_file() {
        let case = parse_case_file(SL2, "sl2").unwrap();
        assert_eq!(case.poset.len(), 5);
        assert_eq!(case.poset.ambient_dim(), 3);
        assert!(validate(&case.poset, &case.links).is_valid());
        assert_eq!(case.links.get(&"I".into(), &"I".into()), Some(-1));
        assert_eq!(case.sheaves["constant"].get(&"rs".into()), Some(&1));
    }

    #[test]
    fn malformed_strata_line_reports_position() {
        let text = SL2.replace("Ou 2 nss - - - 0", "Ou 2 nss - -");
        match parse_case_file(&text, "x") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 9);
                assert_eq!(column, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = SL2.replace("rs 3 ss 1 1 full -2", "rs three ss 1 1 full -2");
        match parse_case_file(&text, "x") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (11, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_and_sections_are_rejected() {
        let text = SL2.replace("rank = 1", "rank = 1\ncolour = red");
        assert!(matches!(
            parse_case_file(&text, "x"),
            Err(Error::Parse { line: 4, .. })
        ));
        let text = format!("{SL2}\n[extras]\n");
        assert!(matches!(
            parse_case_file(&text, "x"),
            Err(Error::Parse { .. })
        ));
        let text = SL2.replace("e I rs = 1", "e I nope = 1");
        assert!(matches!(
            parse_case_file(&text, "x"),
            Err(Error::Parse { .. })
        ));
        let text = SL2.replace("finite:1 1    #", "finite:x 1 #");
        assert!(matches!(
            parse_case_file(&text, "x"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_case_file("I = 1\n", "x").is_err());
        assert!(parse_case_file("", "x").is_err());
    }

    #[test]
    fn diagonal_breach_parses_but_fails_validation() {
        let text = SL2.replace("[links]\n", "[links]\ne I I = 0\n");
        let case = parse_case_file(&text, "x").unwrap();
        let report = validate(&case.poset, &case.links);
        assert!(report.has(ViolationKind::DiagonalLink));
    }

    #[test]
    fn export_then_parse_preserves_catalog_cases() {
        for name in crate::catalog::CASE_NAMES {
            let case = catalog_case(name).unwrap();
            let text = export_case(&case);
            let back = parse_case_file(&text, name).unwrap();
            assert_eq!(back.poset, case.poset, "{name}");
            assert_eq!(back.links, case.links, "{name}");
            assert_eq!(back.sheaves, case.sheaves, "{name}");
            assert_eq!(back.smooth_closures, case.smooth_closures, "{name}");
            assert_eq!(back.root_system, case.root_system, "{name}");
            let body = |t: &str| -> Vec<String> {
                t.lines()
                    .filter(|l| !l.starts_with('#'))
                    .map(str::to_owned)
                    .collect()
            };
            assert_eq!(body(&export_case(&back)), body(&text));
        }
    }

    #[test]
    fn tokens_carry_columns() {
        assert_eq!(tokens("  a bc\td"), vec![(3, "a"), (5, "bc"), (8, "d")]);
    }
}
