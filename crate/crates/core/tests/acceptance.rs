//! The acceptance suite: twelve exact checks, one line of output each.
//!
//! Runs without the libtest harness so every criterion is reported even
//! when an earlier one fails. Exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use unimod::catalog::{self, BIXBY_SEYMOUR, BIXBY_SEYMOUR_RAW};
use unimod::linalg::{determinant, is_totally_unimodular, square_minors, IntMatrix};
use unimod::polytope::{self, ScanCaps};
use unimod::{are_isomorphic, automorphism_count, LatticeModel, Multigraph, UnimodularSystem};

type Outcome = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const CAP: usize = 16;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn sys(rows: &[&[i64]]) -> UnimodularSystem {
    UnimodularSystem::from_matrix(&IntMatrix::from_rows(rows)).expect("valid system")
}

fn isomorphic(a: &UnimodularSystem, b: &UnimodularSystem) -> Result<bool, String> {
    match are_isomorphic(a, b, CAP).map_err(|e| e.to_string())? {
        Some(c) => Ok(c.verify(a, b)),
        None => Ok(false),
    }
}

fn small_samples() -> Vec<(String, UnimodularSystem)> {
    catalog::sample_systems()
        .into_iter()
        .filter(|(_, s)| s.len() <= 12)
        .collect()
}

fn sigma_family() -> Outcome {
    for n in 1..=8 {
        let s = catalog::system("sigma", Some(n)).map_err(|e| e.to_string())?;
        ensure!(
            s.complexity() == big(n as i64),
            "c(Σ_{}) = {}",
            n,
            s.complexity()
        );
        let report =
            polytope::polytope_report(&s, ScanCaps::default()).map_err(|e| e.to_string())?;
        let origins = report
            .points
            .iter()
            .filter(|p| polytope::is_origin(p))
            .count();
        ensure!(
            report.points.len() == 3 && origins == 1 && report.census.get(&n) == Some(&2),
            "Δ(Σ_{}) census {:?} with {} points",
            n,
            report.census,
            report.points.len()
        );
        ensure!(
            report.facet_count() == 2,
            "Δ(Σ_{}) has {} facets",
            n,
            report.facet_count()
        );
    }
    Ok(())
}

fn small_systems() -> Outcome {
    let two = sys(&[&[1, 0], &[0, 1]]);
    let three = sys(&[&[1, 0], &[0, 1], &[1, 1]]);
    ensure!(
        two.complexity() == big(1),
        "c = {} for N = 2",
        two.complexity()
    );
    ensure!(
        three.complexity() == big(3),
        "c = {} for N = 3",
        three.complexity()
    );
    Ok(())
}

fn cayley() -> Outcome {
    for (n, expected) in [(3usize, 3i64), (4, 16), (5, 125)] {
        let g = Multigraph::complete(n);
        let c = g
            .cographic_system()
            .map_err(|e| e.to_string())?
            .complexity();
        ensure!(c == big(expected), "c(cographic K_{}) = {}", n, c);
        if n <= 4 {
            let trees = g.spanning_trees(CAP).map_err(|e| e.to_string())?.len();
            ensure!(
                big(trees as i64) == c,
                "K_{} has {} spanning trees",
                n,
                trees
            );
        }
    }
    Ok(())
}

fn cauchy_binet() -> Outcome {
    for (name, s) in small_samples() {
        let bases = s.enumerate_bases(12).map_err(|e| e.to_string())?.len();
        ensure!(
            big(bases as i64) == s.complexity(),
            "{}: det(Gram) = {} but {} bases",
            name,
            s.complexity(),
            bases
        );
    }
    Ok(())
}

fn bixby_seymour() -> Outcome {
    let q = IntMatrix::from_rows(&BIXBY_SEYMOUR_RAW);
    let r = IntMatrix::from_rows(&BIXBY_SEYMOUR);
    let minors = square_minors(&q, 5).map_err(|e| e.to_string())?;
    for m in minors {
        ensure!(
            m == big(0) || m == big(2) || m == big(-2),
            "Q has a maximal minor {}",
            m
        );
    }
    let from_q = UnimodularSystem::from_matrix(&q).map_err(|e| e.to_string())?;
    let psi = UnimodularSystem::from_matrix(&r).map_err(|e| e.to_string())?;
    ensure!(
        isomorphic(&from_q, &psi)?,
        "from_matrix(Q) is not isomorphic to R"
    );
    ensure!(is_totally_unimodular(&r), "R is not totally unimodular");
    ensure!(psi.complexity() == big(162), "c(Ψ) = {}", psi.complexity());
    ensure!(isomorphic(&psi.gale_dual(), &psi)?, "Ψ is not self-dual");

    let report = polytope::polytope_report(&psi, ScanCaps::default()).map_err(|e| e.to_string())?;
    let expected: Vec<(usize, usize)> = vec![(4, 30), (6, 30), (10, 12)];
    let census: Vec<(usize, usize)> = report.census.iter().map(|(&k, &v)| (k, v)).collect();
    let origins = report
        .points
        .iter()
        .filter(|p| polytope::is_origin(p))
        .count();
    ensure!(
        census == expected && origins == 1,
        "census {:?}, {} origins",
        census,
        origins
    );
    ensure!(
        report.vertex_count == 12,
        "{} vertices",
        report.vertex_count
    );
    ensure!(
        report.facet_count() == 20,
        "{} facets",
        report.facet_count()
    );
    for pair in &report.facets {
        for f in [&pair.upper, &pair.lower] {
            ensure!(
                f.vertices.len() == 6,
                "a facet of form {:?} has {} vertices",
                pair.form,
                f.vertices.len()
            );
        }
    }
    let lat = LatticeModel::of(&psi);
    let fours: Vec<Vec<BigInt>> = report
        .points
        .iter()
        .filter(|p| p.square == 4)
        .map(|p| p.to_big())
        .collect();
    ensure!(
        lat.generated_by(&fours).map_err(|e| e.to_string())?,
        "square-4 points do not generate L"
    );
    let short = polytope::short_vector_census(&report.points);
    ensure!(
        short.units == 0 && short.roots == 0 && short.square3 == 0,
        "short vectors {:?}",
        short
    );
    let aut = automorphism_count(&psi, CAP).map_err(|e| e.to_string())?;
    ensure!(aut == big(1440), "|Aut Ψ| = {}", aut);
    Ok(())
}

fn gale_duality_on_graphs() -> Outcome {
    let graphs: Vec<(String, Multigraph)> = (2..=6)
        .map(|n| (format!("Θ_{}", n), Multigraph::theta(n)))
        .chain((3..=6).map(|n| (format!("C_{}", n), Multigraph::cycle(n))))
        .chain(std::iter::once((
            "K_4".to_string(),
            Multigraph::complete(4),
        )))
        .collect();
    for (name, g) in graphs {
        let graphic = g.graphic_system().map_err(|e| e.to_string())?;
        let cographic = g.cographic_system().map_err(|e| e.to_string())?;
        ensure!(
            isomorphic(&graphic.gale_dual(), &cographic)?,
            "{}: dual(graphic) ≇ cographic",
            name
        );
        ensure!(
            isomorphic(&cographic.gale_dual(), &graphic)?,
            "{}: dual(cographic) ≇ graphic",
            name
        );
        ensure!(
            graphic.complexity() == cographic.complexity()
                && graphic.complexity() == graphic.gale_dual().complexity(),
            "{}: complexities differ",
            name
        );
    }
    Ok(())
}

fn double_dual() -> Outcome {
    for (name, s) in catalog::sample_systems() {
        let dual = s.gale_dual();
        ensure!(
            dual.split_upsilon().count == 0,
            "{}: the dual has Υ summands",
            name
        );
        let core = s.split_upsilon().core;
        ensure!(
            isomorphic(&dual.gale_dual(), &core)?,
            "{}: double dual ≇ core",
            name
        );
    }
    let p3 = Multigraph::path(3)
        .cographic_system()
        .map_err(|e| e.to_string())?;
    ensure!(
        p3.matrix() == &IntMatrix::identity(2),
        "cographic P_3 is\n{}",
        p3.matrix()
    );
    Ok(())
}

fn roots_and_multiplicity() -> Outcome {
    for n in 2..=6usize {
        let sigma = catalog::system("sigma", Some(n)).map_err(|e| e.to_string())?;
        let classes = sigma.multiplicity_classes();
        ensure!(
            classes.len() == 1 && classes[0].len() == n,
            "Σ_{} classes {:?}",
            n,
            classes
        );
        let pts = polytope::polytope_points(&sigma.gale_dual(), CAP).map_err(|e| e.to_string())?;
        let roots = polytope::short_vector_census(&pts).roots_up_to_sign();
        ensure!(
            roots == n * (n - 1) / 2,
            "dual of Σ_{} has {} roots up to sign",
            n,
            roots
        );
    }
    let psi = catalog::system("bixby_seymour", None).map_err(|e| e.to_string())?;
    let classes = psi.multiplicity_classes();
    ensure!(
        classes.len() == 10 && classes.iter().all(|c| c.len() == 1),
        "Ψ classes {:?}",
        classes
    );
    let pts = polytope::polytope_points(&psi.gale_dual(), CAP).map_err(|e| e.to_string())?;
    let roots = polytope::short_vector_census(&pts).roots;
    ensure!(roots == 0, "the dual lattice of Ψ has {} roots", roots);
    Ok(())
}

fn zonotope_and_reflexivity() -> Outcome {
    let mut failures = Vec::new();
    let samples = small_samples();
    let mut reflexive = 0;
    for (name, s) in &samples {
        let points = polytope::polytope_points(s, CAP).map_err(|e| e.to_string())?;
        let facets = polytope::facets(s, &points);
        if polytope::reflexivity_check(s, &points, &facets) {
            reflexive += 1;
        } else {
            failures.push(format!("{}: not reflexive", name));
        }
        if let Some(w) = polytope::zonotope_violation(s, CAP).map_err(|e| e.to_string())? {
            failures.push(format!(
                "{}: π{:?} has ξ_{} = {}/{}",
                name,
                w.signs,
                w.row + 1,
                w.numerator,
                w.denominator
            ));
        }
    }
    ensure!(
        failures.is_empty(),
        "reflexive {}/{}; {} failures:\n      {}",
        reflexive,
        samples.len(),
        failures.len(),
        failures.join("\n      ")
    );
    Ok(())
}

fn rhombic_dodecahedron() -> Outcome {
    let k4 = Multigraph::complete(4);
    let graphic = k4.graphic_system().map_err(|e| e.to_string())?;
    let cographic = k4.cographic_system().map_err(|e| e.to_string())?;
    ensure!(
        isomorphic(&graphic, &cographic)?,
        "graphic K_4 ≇ cographic K_4"
    );
    for s in [&graphic, &cographic] {
        let report =
            polytope::polytope_report(s, ScanCaps::default()).map_err(|e| e.to_string())?;
        ensure!(
            report.facet_count() == 12,
            "{} facets",
            report.facet_count()
        );
        ensure!(
            report.vertex_count == 14,
            "{} vertices",
            report.vertex_count
        );
        let disc = LatticeModel::of(s).discriminant();
        ensure!(disc == big(16), "discriminant {}", disc);
    }
    Ok(())
}

fn theta_family() -> Outcome {
    for n in 2..=6usize {
        let s = Multigraph::theta(n)
            .graphic_system()
            .map_err(|e| e.to_string())?;
        let lat = LatticeModel::of(&s);
        ensure!(
            lat.discriminant() == big(n as i64),
            "Θ_{}: discriminant {}",
            n,
            lat.discriminant()
        );
        // Undo the row sign normalization: the complement must be ±(1, ..., 1).
        let complement: Vec<Vec<BigInt>> = lat
            .complement_basis
            .iter()
            .map(|z| z.iter().zip(s.orientation()).map(|(x, &o)| x * o).collect())
            .collect();
        let ones = vec![big(1); n];
        let minus: Vec<BigInt> = ones.iter().map(|x| -x).collect();
        ensure!(
            complement.len() == 1 && (complement[0] == ones || complement[0] == minus),
            "Θ_{}: complement {:?}",
            n,
            complement
        );
    }
    let s = Multigraph::theta(3)
        .graphic_system()
        .map_err(|e| e.to_string())?;
    let vertices = polytope::polytope_points(&s, CAP)
        .map_err(|e| e.to_string())?
        .iter()
        .filter(|p| p.is_vertex)
        .count();
    ensure!(vertices == 6, "Δ(Θ_3) has {} vertices", vertices);
    Ok(())
}

fn kirchhoff() -> Outcome {
    let graphs = [
        ("triangle", Multigraph::cycle(3)),
        ("Θ_4", Multigraph::theta(4)),
        ("K_4", Multigraph::complete(4)),
        ("K_5", Multigraph::complete(5)),
    ];
    for (name, g) in graphs {
        let v = g.vertex_count();
        let keep: Vec<usize> = (1..v).collect();
        let reduced = g.laplacian().select(&keep, &keep);
        let det = determinant(&reduced).map_err(|e| e.to_string())?;
        let trees = g.spanning_trees(CAP).map_err(|e| e.to_string())?.len();
        let cut_complexity = g
            .cographic_system()
            .map_err(|e| e.to_string())?
            .complexity();
        ensure!(
            det == big(trees as i64) && det == cut_complexity,
            "{}: reduced Laplacian {}, {} trees, cut-system complexity {}",
            name,
            det,
            trees,
            cut_complexity
        );
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Σ-family complexity and segment", 1, sigma_family),
        ("small systems", 1, small_systems),
        ("Cayley formula", 10, cayley),
        ("Cauchy–Binet base count", 30, cauchy_binet),
        ("Bixby–Seymour golden report", 60, bixby_seymour),
        ("Gale duality on graphs", 10, gale_duality_on_graphs),
        ("double dual and Υ summands", 5, double_dual),
        ("roots and multiplicity", 5, roots_and_multiplicity),
        ("zonotope and reflexivity", 60, zonotope_and_reflexivity),
        ("K_4 rhombic dodecahedron", 5, rhombic_dodecahedron),
        ("Θ graphic family", 2, theta_family),
        ("Kirchhoff", 5, kirchhoff),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed > Duration::from_secs(*budget) {
                Err(format!("took {:.2?}, budget {} s", elapsed, budget))
            } else {
                Ok(())
            }
        });
        let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {} {:<34} {:>10.2?}",
            i + 1,
            verdict,
            name,
            elapsed
        );
        if let Err(msg) = outcome {
            failed += 1;
            println!("    {}", msg);
        }
    }
    println!(
        "acceptance: {} passed, {} failed",
        criteria.len() - failed,
        failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
