use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ribbon_cochain::cochain::{find_homotopy, is_homotopy_equivalence, ChainObject};
use ribbon_cochain::diagram::{evaluate, evaluate_closed, evaluate_separated, graded_link_invariant, RibbonDiagram, Strand};
use ribbon_cochain::hopf::verify_hopf_ribbon;
use ribbon_cochain::io::{self, DiagramFile, Loader, Witness};
use ribbon_cochain::rep::RepCategory;
use ribbon_cochain::strings::eval_string;
use ribbon_cochain::tqft::state_complex;
use ribbon_cochain::{Cyclo, Error};

mod selftest;

#[derive(Parser)]
#[command(name = "ribbon", version, about = "Exact evaluation of ribbon diagrams, state spaces and graded link invariants")]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also print decimal approximations of scalars (display only).
    #[arg(long, global = true)]
    approx: bool,
    /// Category reference: a file or `builtin:<name>`. Overrides the one named in input files.
    #[arg(long, global = true)]
    category: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the Hopf algebra and ribbon axioms of a category file.
    CheckCategory {
        /// Category file or `builtin:<name>`; defaults to --category.
        path: Option<String>,
    },
    /// Chain ranks and cohomology of the state space of a marked surface.
    StateSpace {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Evaluate a diagram file.
    EvalDiagram {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Graded invariant of a closed diagram labeled by complexes.
    Link {
        #[arg(long)]
        diagram: PathBuf,
        /// Replaces the diagram's labels, in order; repeat once per label.
        #[arg(long)]
        complex: Vec<String>,
    },
    /// Search for a homotopy between two chain maps, or for a homotopy
    /// inverse of one; or replay a witness with --verify.
    Homotopy {
        /// Chain map files.
        maps: Vec<PathBuf>,
        /// Write the witness here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Witness file to re-check.
        #[arg(long, conflicts_with = "maps")]
        verify: Option<PathBuf>,
    },
    /// Quick built-in checks.
    Selftest,
}

enum Failure {
    Math(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Shape(_) | Error::IncompatibleOrders(..) | Error::ZeroOrder => Failure::Usage(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(Value, bool), Failure>;

fn dir_of(p: &Path) -> PathBuf {
    p.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn load(loader: &Loader, p: &Path) -> std::result::Result<(Value, PathBuf), Failure> {
    Ok((loader.read(p)?, dir_of(p)))
}

fn rep_category(h: ribbon_cochain::HopfAlgebra) -> std::result::Result<RepCategory<Cyclo>, Failure> {
    RepCategory::new(h).map_err(Failure::from)
}

fn strands_json(s: &[Strand]) -> Value {
    Value::Array(s.iter().map(|x| json!([x.label, x.orient])).collect())
}

fn check_category(cli: &Cli, path: &Option<String>) -> Outcome {
    let reference = path.clone().or_else(|| cli.category.clone()).ok_or_else(|| Failure::Usage("no category given".into()))?;
    let (_, h) = Loader::default().category(&reference, Path::new("."))?;
    let failures = verify_hopf_ribbon(&h)?;
    let ok = failures.is_empty();
    Ok((json!({"category": h.name, "dim": h.dim, "passed": ok, "failures": failures}), ok))
}

fn poincare_polynomial(m: &std::collections::BTreeMap<i64, usize>) -> String {
    let terms: Vec<String> = m
        .iter()
        .filter(|(_, r)| **r > 0)
        .map(|(n, r)| match (*n, *r) {
            (0, r) => r.to_string(),
            (1, 1) => "t".into(),
            (1, r) => format!("{r}t"),
            (n, 1) => format!("t^{n}"),
            (n, r) => format!("{r}t^{n}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn state_space(loader: &Loader, surface: &Path) -> Outcome {
    let (v, base) = load(loader, surface)?;
    let (name, h) = loader.category_for(&v, &base)?;
    let cat = rep_category(h)?;
    let s = loader.surface(&cat, &v, &base)?;
    let z = state_complex(&cat, &s);
    let (p, c) = (z.poincare(), z.cohomology());
    let table: Vec<String> = c.iter().map(|(n, r)| format!("{r} in degree {n}")).collect();
    Ok((
        json!({
            "category": name,
            "genus": s.genus,
            "markings": s.markings.len(),
            "poincare": io::ranks_json(&p),
            "poincare_polynomial": poincare_polynomial(&p),
            "cohomology": io::ranks_json(&c),
            "cohomology_table": table,
        }),
        true,
    ))
}

fn diagram_category(loader: &Loader, v: &Value, base: &Path) -> std::result::Result<Option<(String, RepCategory<Cyclo>)>, Failure> {
    if v.get("labels").is_none() {
        return Ok(None);
    }
    let (name, h) = loader.category_for(v, base)?;
    Ok(Some((name, rep_category(h)?)))
}

fn eval_diagram(cli: &Cli, loader: &Loader, path: &Path) -> Outcome {
    let (v, base) = load(loader, path)?;
    let cat = diagram_category(loader, &v, &base)?;
    let out = match loader.diagram(cat.as_ref().map(|c| &c.1), &v, &base)? {
        DiagramFile::Graded(d) => json!({"kind": "graded", "sign": eval_string(&d)?}),
        DiagramFile::Rep(d) => {
            let (name, cat) = cat.expect("labeled diagram");
            if d.is_closed()? {
                json!({"kind": "rep", "category": name, "closed": true, "scalar": io::scalar_display(&evaluate_closed(&cat, &d)?, cli.approx)})
            } else {
                let m = evaluate(&cat, &d)?;
                json!({"kind": "rep", "category": name, "closed": false, "source": strands_json(&d.source),
                       "target": strands_json(&d.target()?), "matrix": io::matrix_to_json(&m)})
            }
        }
        DiagramFile::Chain(d) => {
            let (name, cat) = cat.expect("labeled diagram");
            let f = evaluate_separated(&cat, &d)?;
            if d.is_closed()? {
                json!({"kind": "complex", "category": name, "closed": true, "scalar": io::scalar_display(&f.component(0).get(0, 0), cli.approx)})
            } else {
                let comps: serde_json::Map<String, Value> = f.components().iter().map(|(n, m)| (n.to_string(), io::matrix_to_json(m))).collect();
                json!({"kind": "complex", "category": name, "closed": false, "source": strands_json(&d.source),
                       "target": strands_json(&d.target()?), "components": comps})
            }
        }
    };
    Ok((out, true))
}

fn link(cli: &Cli, loader: &Loader, path: &Path, overrides: &[String]) -> Outcome {
    let (v, base) = load(loader, path)?;
    let Some((name, cat)) = diagram_category(loader, &v, &base)? else {
        return Err(Failure::Usage("link needs a labeled diagram".into()));
    };
    let d = match loader.diagram(Some(&cat), &v, &base)? {
        DiagramFile::Chain(d) => d,
        DiagramFile::Rep(d) => RibbonDiagram {
            labels: d.labels.iter().map(|x| ChainObject::concentrated(x.clone(), 0)).collect(),
            coupons: Vec::new(),
            source: d.source.clone(),
            slices: if d.coupons.is_empty() { d.slices.clone() } else { return Err(Failure::Usage("link diagrams over rep may not carry coupons; use \"over\": \"complex\"".into())) },
        },
        DiagramFile::Graded(_) => unreachable!(),
    };
    let mut d = d;
    if !overrides.is_empty() {
        if overrides.len() != d.labels.len() {
            return Err(Failure::Usage(format!("{} --complex values for {} labels", overrides.len(), d.labels.len())));
        }
        if !d.coupons.is_empty() {
            return Err(Failure::Usage("cannot relabel a diagram with coupons".into()));
        }
        d.labels = overrides.iter().map(|r| loader.complex(&cat, &json!(r), Path::new("."))).collect::<Result<_, _>>()?;
    }
    if !d.is_closed()? {
        return Err(Failure::Math("diagram has open boundary".into()));
    }
    let k = graded_link_invariant(&cat, &d)?;
    Ok((json!({"category": name, "invariant": io::scalar_display(&k, cli.approx)}), true))
}

fn homotopy(loader: &Loader, maps: &[PathBuf], out: &Option<PathBuf>, verify: &Option<PathBuf>) -> Outcome {
    if let Some(w) = verify {
        let (v, base) = load(loader, w)?;
        let (_, h) = loader.category_for(&v, &base)?;
        let cat = rep_category(h)?;
        let ok = loader.witness(&cat, &v, &base)?.verify();
        return Ok((json!({"verified": ok}), ok));
    }
    let (first, second) = match maps {
        [f] => (f, None),
        [f, g] => (f, Some(g)),
        _ => return Err(Failure::Usage("homotopy takes one or two map files, or --verify".into())),
    };
    let (v, base) = load(loader, first)?;
    let (name, h) = loader.category_for(&v, &base)?;
    let cat = rep_category(h)?;
    let f = loader.chain_map(&cat, &v, &base)?;
    if !f.is_chain_map() {
        return Err(Failure::Math(format!("{} is not a chain map", first.display())));
    }
    let witness = match second {
        Some(gp) => {
            let (gv, gbase) = load(loader, gp)?;
            let g = loader.chain_map(&cat, &gv, &gbase)?;
            if !g.is_chain_map() {
                return Err(Failure::Math(format!("{} is not a chain map", gp.display())));
            }
            find_homotopy(&cat, &f, &g)?.map(|homotopy| Witness::Homotopy { f, g, homotopy })
        }
        None => is_homotopy_equivalence(&cat, &f)?.map(Witness::Equivalence),
    };
    let Some(w) = witness else {
        return Ok((json!({"result": "none"}), true));
    };
    let kind = if matches!(w, Witness::Homotopy { .. }) { "homotopy" } else { "equivalence" };
    let doc = w.to_json(&name);
    match out {
        Some(p) => {
            let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
            fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok((json!({"result": kind, "witness": p.display().to_string()}), true))
        }
        None => Ok((json!({"result": kind, "witness": doc}), true)),
    }
}

fn run(cli: &Cli) -> Outcome {
    let loader = Loader { category_override: cli.category.clone() };
    match &cli.command {
        Command::CheckCategory { path } => check_category(cli, path),
        Command::StateSpace { surface } => state_space(&loader, surface),
        Command::EvalDiagram { diagram } => eval_diagram(cli, &loader, diagram),
        Command::Link { diagram, complex } => link(cli, &loader, diagram, complex),
        Command::Homotopy { maps, out, verify } => homotopy(&loader, maps, out, verify),
        Command::Selftest => {
            let report = selftest::run();
            let ok = report.iter().all(|c| c.passed);
            Ok((json!({"passed": ok, "checks": report.iter().map(|c| json!({"name": c.name, "passed": c.passed})).collect::<Vec<_>>()}), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok((v, ok)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
