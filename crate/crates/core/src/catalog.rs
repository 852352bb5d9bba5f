//! Named systems and graphs.
//!
//! References have the form `name` or `name:param`, optionally prefixed by
//! `catalog:`.

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::linalg::IntMatrix;
use crate::system::UnimodularSystem;

/// The 10 x 5 matrix whose rows are all arrangements of two ones and three
/// zeros. Not totally unimodular: its nonzero maximal minors are ±2.
pub const BIXBY_SEYMOUR_RAW: [[i64; 5]; 10] = [
    [1, 1, 0, 0, 0],
    [0, 1, 1, 0, 0],
    [0, 0, 1, 1, 0],
    [0, 0, 0, 1, 1],
    [1, 0, 0, 0, 1],
    [1, 0, 1, 0, 0],
    [0, 1, 0, 1, 0],
    [0, 0, 1, 0, 1],
    [1, 0, 0, 1, 0],
    [0, 1, 0, 0, 1],
];

/// The same forms expanded over the first five rows: the Bixby–Seymour
/// system, neither graphic nor cographic.
pub const BIXBY_SEYMOUR: [[i64; 5]; 10] = [
    [1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1],
    [0, 0, 1, -1, 1],
    [1, 0, 0, 1, -1],
    [-1, 1, 0, 0, 1],
    [1, -1, 1, 0, 0],
    [0, 1, -1, 1, 0],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    System,
    Graph,
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: Kind,
    /// Smallest accepted parameter, or `None` for entries without one.
    pub min_param: Option<usize>,
    pub description: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "upsilon",
        kind: Kind::System,
        min_param: Some(1),
        description: "m x m identity: m copies of the one-form system",
    },
    CatalogEntry {
        name: "sigma",
        kind: Kind::System,
        min_param: Some(1),
        description: "N x 1 column of ones: one form repeated N times",
    },
    CatalogEntry {
        name: "pair2",
        kind: Kind::System,
        min_param: None,
        description: "2 x 2 identity",
    },
    CatalogEntry {
        name: "triangle3",
        kind: Kind::System,
        min_param: None,
        description: "rows (1,0), (0,1), (1,1)",
    },
    CatalogEntry {
        name: "bixby_seymour_raw",
        kind: Kind::System,
        min_param: None,
        description: "10 x 5 matrix of all rows with two ones; standardizes to bixby_seymour",
    },
    CatalogEntry {
        name: "bixby_seymour",
        kind: Kind::System,
        min_param: None,
        description: "the 10-form rank-5 Bixby-Seymour system",
    },
    CatalogEntry {
        name: "theta",
        kind: Kind::Graph,
        min_param: Some(1),
        description: "two vertices joined by N parallel edges",
    },
    CatalogEntry {
        name: "cycle",
        kind: Kind::Graph,
        min_param: Some(1),
        description: "the N-gon",
    },
    CatalogEntry {
        name: "complete",
        kind: Kind::Graph,
        min_param: Some(1),
        description: "complete graph K_N",
    },
    CatalogEntry {
        name: "path",
        kind: Kind::Graph,
        min_param: Some(1),
        description: "path with m vertices",
    },
];

#[derive(Clone, Debug)]
pub enum CatalogItem {
    System(UnimodularSystem),
    Graph(Multigraph),
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Catalog(format!("unknown entry {:?}", name)))
}

/// The matrix a system entry is built from, exactly as tabulated.
pub fn matrix(name: &str, param: Option<usize>) -> Result<IntMatrix> {
    let e = entry(name)?;
    if e.kind != Kind::System {
        return Err(Error::Catalog(format!("{} is a graph, not a system", name)));
    }
    let p = check_param(e, param)?;
    Ok(match name {
        "upsilon" => IntMatrix::identity(p),
        "sigma" => IntMatrix::from_rows(&vec![[1i64]; p]),
        "pair2" => IntMatrix::identity(2),
        "triangle3" => IntMatrix::from_rows(&[[1i64, 0], [0, 1], [1, 1]]),
        "bixby_seymour_raw" => IntMatrix::from_rows(&BIXBY_SEYMOUR_RAW),
        "bixby_seymour" => IntMatrix::from_rows(&BIXBY_SEYMOUR),
        _ => unreachable!("entry table and match agree"),
    })
}

fn check_param(e: &CatalogEntry, param: Option<usize>) -> Result<usize> {
    match (e.min_param, param) {
        (None, None) => Ok(0),
        (None, Some(_)) => Err(Error::Catalog(format!("{} takes no parameter", e.name))),
        (Some(_), None) => Err(Error::Catalog(format!("{} needs a parameter", e.name))),
        (Some(min), Some(p)) if p < min => Err(Error::Catalog(format!(
            "{} needs a parameter of at least {}",
            e.name, min
        ))),
        (Some(_), Some(p)) => Ok(p),
    }
}

pub fn make(name: &str, param: Option<usize>) -> Result<CatalogItem> {
    let e = entry(name)?;
    match e.kind {
        Kind::System => Ok(CatalogItem::System(UnimodularSystem::from_matrix(
            &matrix(name, param)?,
        )?)),
        Kind::Graph => {
            let p = check_param(e, param)?;
            Ok(CatalogItem::Graph(match name {
                "theta" => Multigraph::theta(p),
                "cycle" => Multigraph::cycle(p),
                "complete" => Multigraph::complete(p),
                "path" => Multigraph::path(p),
                _ => unreachable!("entry table and match agree"),
            }))
        }
    }
}

pub fn system(name: &str, param: Option<usize>) -> Result<UnimodularSystem> {
    match make(name, param)? {
        CatalogItem::System(s) => Ok(s),
        CatalogItem::Graph(_) => Err(Error::Catalog(format!("{} is a graph, not a system", name))),
    }
}

pub fn graph(name: &str, param: Option<usize>) -> Result<Multigraph> {
    match make(name, param)? {
        CatalogItem::Graph(g) => Ok(g),
        CatalogItem::System(_) => Err(Error::Catalog(format!("{} is a system, not a graph", name))),
    }
}

/// Splits `catalog:name[:param]` (the prefix is optional).
pub fn parse_reference(reference: &str) -> Result<(String, Option<usize>)> {
    let body = reference.strip_prefix("catalog:").unwrap_or(reference);
    let mut parts = body.splitn(2, ':');
    let name = parts.next().unwrap_or_default().to_string();
    let param = match parts.next() {
        None => None,
        Some(p) => Some(
            p.parse::<usize>()
                .map_err(|_| Error::Catalog(format!("bad parameter {:?}", p)))?,
        ),
    };
    entry(&name)?;
    Ok((name, param))
}

pub fn resolve(reference: &str) -> Result<CatalogItem> {
    let (name, param) = parse_reference(reference)?;
    make(&name, param)
}

/// Systems used by the whole-catalog checks: every system entry at small
/// parameters, plus the graphic and cographic systems of the graph entries.
pub fn sample_systems() -> Vec<(String, UnimodularSystem)> {
    let mut out = Vec::new();
    let mut push = |name: String, s: Result<UnimodularSystem>| {
        out.push((name, s.expect("catalog entries are valid")));
    };
    for m in 1..=4 {
        push(format!("upsilon:{}", m), system("upsilon", Some(m)));
    }
    for n in 1..=8 {
        push(format!("sigma:{}", n), system("sigma", Some(n)));
    }
    for name in ["pair2", "triangle3", "bixby_seymour_raw", "bixby_seymour"] {
        push(name.to_string(), system(name, None));
    }
    let graphs: Vec<(String, Multigraph)> = (2..=6)
        .map(|n| (format!("theta:{}", n), Multigraph::theta(n)))
        .chain((3..=6).map(|n| (format!("cycle:{}", n), Multigraph::cycle(n))))
        .chain((3..=5).map(|n| (format!("complete:{}", n), Multigraph::complete(n))))
        .chain((3..=4).map(|n| (format!("path:{}", n), Multigraph::path(n))))
        .collect();
    for (name, g) in graphs {
        if let Ok(s) = g.graphic_system() {
            push(format!("graphic({})", name), Ok(s));
        }
        push(format!("cographic({})", name), g.cographic_system());
    }
    out
}
