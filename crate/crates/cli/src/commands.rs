use std::fmt;
use std::fs;

use serde_json::{json, Value};
use unimod::catalog::{self, Kind};
use unimod::graph::{parse_edge_list, write_edge_list};
use unimod::io::{parse_matrix, system_from_file, write_matrix, write_system, MatrixFile};
use unimod::linalg::IntMatrix;
use unimod::polytope::{self, MinimumSquare, ProjectionWitness};
use unimod::{
    are_isomorphic, automorphism_count, Error, LatticeModel, Multigraph, UnimodularSystem,
};

use crate::report::{big, join, one_based, yes_no, Input, Outcome};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Verification(m) | CliError::Cap(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Cap { .. } => CliError::Cap(e.to_string()),
            Error::Catalog(_) | Error::Parse { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub enumeration: usize,
    pub points: usize,
    pub signs: usize,
}

fn read(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {}", path, e)))
}

/// Reads a matrix file or resolves a `catalog:` system reference.
pub fn load_matrix(src: &str) -> CliResult<(MatrixFile, Input)> {
    if src.starts_with("catalog:") {
        let (name, param) = catalog::parse_reference(src)?;
        if catalog::entry(&name)?.kind == Kind::Graph {
            return Err(CliError::Usage(format!(
                "{} is a graph; use `unimod graph {} --graphic|--cographic`",
                name, src
            )));
        }
        let matrix = catalog::matrix(&name, param)?;
        let input = Input::new(src, write_matrix(&matrix).as_bytes());
        Ok((
            MatrixFile {
                matrix,
                labels: None,
            },
            input,
        ))
    } else {
        let text = read(src)?;
        let input = Input::new(src, text.as_bytes());
        Ok((parse_matrix(&text)?, input))
    }
}

pub fn load_system(src: &str) -> CliResult<(UnimodularSystem, Input)> {
    let (file, input) = load_matrix(src)?;
    Ok((system_from_file(&file)?, input))
}

/// Reads an edge-list file or resolves a `catalog:` graph reference.
pub fn load_graph(src: &str) -> CliResult<(Multigraph, Input)> {
    if src.starts_with("catalog:") {
        let (name, param) = catalog::parse_reference(src)?;
        let g = catalog::graph(&name, param)?;
        let input = Input::new(src, write_edge_list(&g).as_bytes());
        Ok((g, input))
    } else {
        let text = read(src)?;
        let input = Input::new(src, text.as_bytes());
        Ok((parse_edge_list(&text)?, input))
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(big).collect()))
            .collect(),
    )
}

fn matrix_rows_text(m: &IntMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        out.push_str("  ");
        out.push_str(&join(m.row(r)));
        out.push('\n');
    }
    out
}

fn system_json(s: &UnimodularSystem) -> Value {
    json!({
        "forms": s.len(),
        "rank": s.dim(),
        "base_rows": one_based(s.base_rows()),
        "labels": s.labels(),
        "orientation": s.orientation(),
        "matrix": matrix_json(s.matrix()),
    })
}

fn write_system_text(s: &UnimodularSystem) -> String {
    if s.is_empty() {
        "# empty system\n0 0\n".to_string()
    } else {
        write_system(s)
    }
}

pub fn check(src: &str) -> CliResult<(Outcome, Vec<Input>)> {
    let (file, input) = load_matrix(src)?;
    let outcome = match system_from_file(&file) {
        Ok(s) => {
            let text = format!(
                "unimodular: yes\nforms: {}\nrank: {}\n{}",
                s.len(),
                s.dim(),
                write_system_text(&s)
            );
            let mut j = system_json(&s);
            j["unimodular"] = json!(true);
            Outcome::ok(text, j)
        }
        Err(e) => {
            let witness = match &e {
                Error::NotUnimodular { witness } => Some(witness.clone()),
                _ => None,
            };
            let cli = CliError::from(e);
            if !matches!(cli, CliError::Verification(_)) {
                return Err(cli);
            }
            let mut text = format!("unimodular: no\nreason: {}\n", cli);
            if let Some(w) = &witness {
                text.push_str(&format!(
                    "witness: rows {} cols {} minor {}\n",
                    join(&one_based(&w.rows)),
                    join(&one_based(&w.cols)),
                    w.value
                ));
                if let Some(b) = &w.base_minor {
                    text.push_str(&format!("base minor: {}\n", b));
                }
            }
            let witness_json = witness.map(|w| {
                json!({
                    "rows": one_based(&w.rows),
                    "cols": one_based(&w.cols),
                    "value": big(&w.value),
                    "base_minor": w.base_minor.as_ref().map(big),
                })
            });
            Outcome {
                text,
                json: json!({"unimodular": false, "reason": cli.to_string(), "witness": witness_json}),
                failed: true,
            }
        }
    };
    Ok((outcome, vec![input]))
}

pub fn complexity(src: &str, enumerate: bool, caps: Caps) -> CliResult<(Outcome, Vec<Input>)> {
    let (s, input) = load_system(src)?;
    let c = s.complexity();
    let mut text = format!("{}\n", c);
    let mut j = json!({"complexity": big(&c)});
    let mut failed = false;
    if enumerate {
        let bases = s.enumerate_bases(caps.enumeration)?.len();
        let agree = num_bigint::BigInt::from(bases) == c;
        text.push_str(&format!("bases: {}\nagree: {}\n", bases, yes_no(agree)));
        j["bases"] = json!(bases);
        j["agree"] = json!(agree);
        failed = !agree;
    }
    Ok((
        Outcome {
            text,
            json: j,
            failed,
        },
        vec![input],
    ))
}

pub fn dual(src: &str, output: Option<&str>) -> CliResult<(Outcome, Vec<Input>)> {
    let (s, input) = load_system(src)?;
    let (d, source) = s.gale_dual_indexed();
    let body = write_system_text(&d);
    let text = match output {
        Some(path) => {
            fs::write(path, &body)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {}", path, e)))?;
            format!("wrote {} forms of rank {} to {}\n", d.len(), d.dim(), path)
        }
        None => body,
    };
    let mut j = system_json(&d);
    j["source_rows"] = json!(one_based(&source));
    j["complexity"] = big(&d.complexity());
    Ok((Outcome::ok(text, j), vec![input]))
}

pub fn decompose(src: &str) -> CliResult<(Outcome, Vec<Input>)> {
    let (s, input) = load_system(src)?;
    let split = s.split_upsilon();
    let mut text = format!(
        "upsilon summands: {}\nremoved rows: {}\ncore forms: {}\ncore rank: {}\n",
        split.count,
        join(&one_based(&split.removed_rows)),
        split.core.len(),
        split.core.dim()
    );
    if !split.core.is_empty() {
        text.push_str(&write_system_text(&split.core));
    }
    let j = json!({
        "upsilon_summands": split.count,
        "removed_rows": one_based(&split.removed_rows),
        "core_rows": one_based(&split.core_rows),
        "core": system_json(&split.core),
    });
    Ok((Outcome::ok(text, j), vec![input]))
}

pub fn isomorphic(a: &str, b: &str, caps: Caps) -> CliResult<(Outcome, Vec<Input>)> {
    let (sa, ia) = load_system(a)?;
    let (sb, ib) = load_system(b)?;
    let found = are_isomorphic(&sa, &sb, caps.enumeration)?;
    let outcome = match found {
        Some(c) => {
            let image: Vec<String> = c
                .permutation
                .iter()
                .enumerate()
                .map(|(i, p)| format!("{}->{}", i + 1, p + 1))
                .collect();
            let signs: Vec<&str> = c
                .signs
                .iter()
                .map(|&s| if s > 0 { "+" } else { "-" })
                .collect();
            let text = format!(
                "isomorphic: yes\npermutation: {}\nsigns: {}\nbase change:\n{}",
                image.join(" "),
                signs.join(" "),
                matrix_rows_text(&c.base_change)
            );
            let j = json!({
                "isomorphic": true,
                "permutation": one_based(&c.permutation),
                "signs": c.signs,
                "base_change": matrix_json(&c.base_change),
            });
            Outcome::ok(text, j)
        }
        None => Outcome::ok("isomorphic: no\n".into(), json!({"isomorphic": false})),
    };
    Ok((outcome, vec![ia, ib]))
}

pub fn aut(src: &str, caps: Caps) -> CliResult<(Outcome, Vec<Input>)> {
    let (s, input) = load_system(src)?;
    let n = automorphism_count(&s, caps.enumeration)?;
    Ok((
        Outcome::ok(format!("{}\n", n), json!({"automorphisms": big(&n)})),
        vec![input],
    ))
}

fn minimum_text(m: Option<MinimumSquare>) -> String {
    match m {
        None => "none".into(),
        Some(MinimumSquare::Exact(k)) => k.to_string(),
        Some(MinimumSquare::AtLeast(k)) => format!(">= {}", k),
    }
}

fn minimum_json(m: Option<MinimumSquare>) -> Value {
    match m {
        None => Value::Null,
        Some(MinimumSquare::Exact(k)) => json!({"exact": k}),
        Some(MinimumSquare::AtLeast(k)) => json!({"at_least": k}),
    }
}

pub fn lattice(src: &str, caps: Caps) -> CliResult<(Outcome, Vec<Input>)> {
    let (s, input) = load_system(src)?;
    let lat = LatticeModel::of(&s);
    let points = polytope::polytope_points(&s, caps.points)?;
    let short = polytope::short_vector_census(&points);
    let text = format!(
        "rank: {}\nambient dimension: {}\ndiscriminant: {}\ngram:\n{}square 1: {}\nsquare 2: {}\nsquare 3: {}\nminimum square: {}\n",
        lat.rank(),
        lat.ambient_dim,
        lat.discriminant(),
        matrix_rows_text(&lat.gram),
        short.units,
        short.roots,
        short.square3,
        minimum_text(short.minimum),
    );
    let complement: Vec<Value> = lat
        .complement_basis
        .iter()
        .map(|z| Value::Array(z.iter().map(big).collect()))
        .collect();
    let j = json!({
        "rank": lat.rank(),
        "ambient_dim": lat.ambient_dim,
        "discriminant": big(&lat.discriminant()),
        "gram": matrix_json(&lat.gram),
        "complement_basis": complement,
        "squares": {"1": short.units, "2": short.roots, "3": short.square3},
        "minimum_square": minimum_json(short.minimum),
    });
    Ok((Outcome::ok(text, j), vec![input]))
}

fn witness_text(w: &ProjectionWitness) -> String {
    let signs: Vec<&str> = w
        .signs
        .iter()
        .map(|&s| if s > 0 { "+" } else { "-" })
        .collect();
    format!(
        "projection of ({}) has form {} = {}/{}",
        signs.join(""),
        w.row + 1,
        w.numerator,
        w.denominator
    )
}

pub fn polytope(src: &str, list_points: bool, caps: Caps) -> CliResult<(Outcome, Vec<Input>)> {
    let (s, input) = load_system(src)?;
    let points = polytope::polytope_points(&s, caps.points)?;
    let facets = polytope::facets(&s, &points);
    let census = polytope::census(&points);
    let vertices = points.iter().filter(|p| p.is_vertex).count();
    let reflexive = polytope::reflexivity_check(&s, &points, &facets);
    let violation = polytope::zonotope_violation(&s, caps.signs)?;
    let short = polytope::short_vector_census(&points);

    let mut text = format!("points: {} (origin + {})\n", points.len(), points.len() - 1);
    for (sq, n) in &census {
        text.push_str(&format!("square {}: {}\n", sq, n));
    }
    text.push_str(&format!(
        "vertices: {}\nfacets: {}\n",
        vertices,
        2 * facets.len()
    ));
    text.push_str("facet pairs (rows: points/vertices on +1, on -1):\n");
    for f in &facets {
        text.push_str(&format!(
            "  {}: {}/{}, {}/{}\n",
            join(&one_based(&f.rows)),
            f.upper.points.len(),
            f.upper.vertices.len(),
            f.lower.points.len(),
            f.lower.vertices.len()
        ));
    }
    text.push_str(&format!(
        "minimum square: {}\n",
        minimum_text(short.minimum)
    ));
    match &violation {
        None => text.push_str("zonotope: yes\n"),
        Some(w) => text.push_str(&format!("zonotope: no ({})\n", witness_text(w))),
    }
    text.push_str(&format!("reflexive: {}\n", yes_no(reflexive)));
    if list_points {
        text.push_str("points:\n");
        for p in &points {
            text.push_str(&format!(
                "  {}{}\n",
                join(&p.coords),
                if p.is_vertex { "  vertex" } else { "" }
            ));
        }
    }

    let census_json: serde_json::Map<String, Value> = census
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let facet_json: Vec<Value> = facets
        .iter()
        .map(|f| {
            json!({
                "rows": one_based(&f.rows),
                "form": f.form,
                "upper": {"points": f.upper.points.len(), "vertices": f.upper.vertices.len()},
                "lower": {"points": f.lower.points.len(), "vertices": f.lower.vertices.len()},
            })
        })
        .collect();
    let mut j = json!({
        "points": points.len(),
        "census": census_json,
        "vertices": vertices,
        "facets": 2 * facets.len(),
        "facet_pairs": facet_json,
        "minimum_square": minimum_json(short.minimum),
        "zonotope": violation.is_none(),
        "zonotope_witness": violation.as_ref().map(|w| json!({
            "signs": w.signs,
            "row": w.row + 1,
            "numerator": big(&w.numerator),
            "denominator": big(&w.denominator),
        })),
        "reflexive": reflexive,
    });
    if list_points {
        j["point_list"] = Value::Array(
            points
                .iter()
                .map(|p| json!({"coords": p.coords, "square": p.square, "coefficients": p.coefficients, "vertex": p.is_vertex}))
                .collect(),
        );
    }
    Ok((Outcome::ok(text, j), vec![input]))
}

pub fn graph(src: &str, cographic: bool, stabilize: bool) -> CliResult<(Outcome, Vec<Input>)> {
    let (mut g, input) = load_graph(src)?;
    if stabilize {
        g = g.stabilize()?;
    }
    let s = if cographic {
        g.cographic_system()?
    } else {
        g.graphic_system()?
    };
    let mut j = system_json(&s);
    if stabilize {
        j["stabilized_graph"] = json!({
            "vertices": g.vertex_count(),
            "edges": g.edges().iter().map(|e| [e.tail, e.head]).collect::<Vec<_>>(),
        });
    }
    Ok((Outcome::ok(write_system_text(&s), j), vec![input]))
}

pub fn catalog_list() -> CliResult<(Outcome, Vec<Input>)> {
    let mut text = String::new();
    let mut entries = Vec::new();
    for e in catalog::ENTRIES {
        let reference = match e.min_param {
            Some(_) => format!("catalog:{}:<n>", e.name),
            None => format!("catalog:{}", e.name),
        };
        let kind = match e.kind {
            Kind::System => "system",
            Kind::Graph => "graph",
        };
        text.push_str(&format!(
            "{:<28} {:<7} {}\n",
            reference, kind, e.description
        ));
        entries.push(json!({
            "name": e.name,
            "kind": kind,
            "min_param": e.min_param,
            "description": e.description,
        }));
    }
    Ok((Outcome::ok(text, Value::Array(entries)), Vec::new()))
}
