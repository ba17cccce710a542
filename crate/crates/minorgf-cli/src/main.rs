mod reference;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use minorgf::graph::{self, ColourMask, MinorPattern};
use minorgf::numerics::{self, GrowthResult, HighPrecisionValue};
use minorgf::oracle::{self, ClassArgs, ClassSpec, CountRecord};
use minorgf::series::{self, factorial, BivariatePoly, TruncatedEGF};
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "minorgf", version, about = "Counting series, brute-force oracles and growth constants for minor-closed graph classes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for the brute-force oracles.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Working precision in decimal digits.
    #[arg(long, env = "MINORGF_PRECISION", default_value_t = numerics::DEFAULT_DIGITS, global = true)]
    precision: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact series coefficients c_0..c_N with counts c_n n!.
    Series {
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Print a bivariate series (F2..F6, Rleaf) by powers of x.
        #[arg(long)]
        bivariate: bool,
    },
    /// Brute-force count of a class at size n (or every size up to max-n).
    Oracle {
        #[arg(long)]
        class: String,
        #[arg(long, conflicts_with = "max_n")]
        n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[command(flatten)]
        params: ClassParams,
    },
    /// Growth constant or singularity at working precision.
    Gamma {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Fail unless the result matches the reference digits.
        #[arg(long)]
        check: bool,
    },
    /// Compare series counts with the brute-force oracle for n <= max-n.
    Crosscheck {
        #[arg(long)]
        class: String,
        #[arg(long)]
        max_n: usize,
    },
    /// Tree shapes behind the fan classes, with their closed forms.
    Shapes {
        #[arg(long)]
        k: usize,
    },
    /// Evaluate a predicate on a graph file.
    Graph {
        #[arg(long)]
        file: std::path::PathBuf,
        #[arg(long, value_enum)]
        check: Predicate,
        #[command(flatten)]
        params: ClassParams,
        /// Vertex set such as `0,3,4`.
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
        #[arg(long)]
        root: Option<usize>,
    },
}

#[derive(clap::Args, Clone)]
struct ClassParams {
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Forbidden minors, comma separated (K4, K23).
    #[arg(long, value_delimiter = ',', default_value = "K4")]
    minor: Vec<String>,
    /// Colours for rooted classes, comma separated.
    #[arg(long, value_delimiter = ',')]
    colours: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    RdK4,
    ExK4,
    OuterRd,
    OuterEx,
    RhoSp,
    RhoOuter,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Predicate {
    SeriesParallel,
    Outerplanar,
    InEx,
    Packing,
    Blocker,
    RedundantBlocker,
    Network,
    Crd,
    GoodColours,
    CTree,
    AHat,
    Separator,
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<minorgf::Error> for Failure {
    fn from(e: minorgf::Error) -> Self {
        use minorgf::Error as E;
        match e {
            E::NoConvergence(_) | E::IdentityFailed(_) | E::Series(_) => Failure::Failed(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Out = Result<(Vec<u8>, bool), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let result = match &cli.cmd {
        Cmd::Series { class, order, bivariate } => run_series(class, *order, *bivariate, cli.format),
        Cmd::Oracle { class, n, max_n, params } => run_oracle(class, *n, *max_n, params, cli.format),
        Cmd::Gamma { target, l, k, check } => run_gamma(*target, *l, *k, *check, cli.precision, cli.format),
        Cmd::Crosscheck { class, max_n } => run_crosscheck(class, *max_n, cli.format),
        Cmd::Shapes { k } => run_shapes(*k, cli.format),
        Cmd::Graph { file, check, params, set, root } => run_graph(file, *check, params, set, *root, cli.format),
    };
    // timing goes to stderr so that stdout stays byte-stable
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok((bytes, pass)) => {
            use std::io::Write;
            let _ = std::io::stdout().write_all(&bytes);
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Failed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn json_out(v: &Value, pass: bool) -> Out {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    Ok((s.into_bytes(), pass))
}

fn csv_out(header: &[&str], rows: &[Vec<String>], pass: bool) -> Out {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| Failure::Failed(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| Failure::Failed(e.to_string()))?;
    }
    Ok((w.into_inner().map_err(|e| Failure::Failed(e.to_string()))?, pass))
}

fn text_out(s: String, pass: bool) -> Out {
    Ok((s.into_bytes(), pass))
}

fn run_series(class: &str, order: usize, bivariate: bool, format: Format) -> Out {
    if bivariate {
        let s = series::named_bivariate(class, order)?;
        return print_bivariate(class, &s, format);
    }
    let s = series::named_series(class, order)?;
    let counts = series::counts_or_rationals(&s);
    match format {
        Format::Json => json_out(
            &json!({"class": class, "order": order, "coefficients": series::to_json(&s), "counts": counts}),
            true,
        ),
        Format::Csv => Ok((series::to_csv(&s).into_bytes(), true)),
        Format::Text => {
            let mut out = format!("# {class}, order {order}: n coefficient count\n");
            for (n, (c, k)) in s.coeffs().iter().zip(&counts).enumerate() {
                out.push_str(&format!("{n} {c} {k}\n"));
            }
            text_out(out, true)
        }
    }
}

fn print_bivariate(class: &str, s: &BivariatePoly, format: Format) -> Out {
    let mut rows = Vec::new();
    for (n, p) in s.coeffs().iter().enumerate() {
        let fact = BigRational::from_integer(factorial(n));
        for (e, c) in p.coeffs().iter().enumerate() {
            if *c != BigRational::from_integer(0.into()) {
                rows.push(vec![n.to_string(), e.to_string(), c.to_string(), (c * &fact).to_string()]);
            }
        }
    }
    match format {
        Format::Json => {
            let lines: Vec<Value> = s.coeffs().iter().enumerate().map(|(n, p)| json!({"n": n, "poly": p.to_string()})).collect();
            let terms: Vec<Value> =
                rows.iter().map(|r| json!({"n": r[0].parse::<usize>().unwrap(), "y": r[1].parse::<usize>().unwrap(), "coefficient": r[2], "count": r[3]})).collect();
            json_out(&json!({"class": class, "order": s.order(), "rows": lines, "terms": terms}), true)
        }
        Format::Csv => csv_out(&["n", "y", "coefficient", "count"], &rows, true),
        Format::Text => text_out(series::bivariate_text(s), true),
    }
}

fn minors(names: &[String]) -> Result<Vec<MinorPattern>, Failure> {
    names.iter().map(|m| MinorPattern::from_name(m).map_err(Failure::from)).collect()
}

fn colour_set(p: &ClassParams) -> Result<Option<ColourMask>, Failure> {
    if p.colours.iter().any(|&c| !(1..=16).contains(&c)) {
        return usage("colours are numbered from 1");
    }
    Ok((!p.colours.is_empty()).then(|| ColourMask::from_colours(&p.colours)))
}

fn need(v: Option<usize>, flag: &str, class: &str) -> Result<usize, Failure> {
    v.map_or_else(|| usage(format!("{class} needs --{flag}")), Ok)
}

fn class_spec(class: &str, p: &ClassParams) -> Result<ClassSpec, Failure> {
    let args = ClassArgs { l: p.l, k: p.k, b: minors(&p.minor)?, colours: colour_set(p)? };
    Ok(ClassSpec::from_name(class, &args)?)
}

fn records_out(records: &[CountRecord], format: Format) -> Out {
    match format {
        Format::Json if records.len() == 1 => json_out(&serde_json::to_value(&records[0]).expect("json"), true),
        Format::Json => json_out(&serde_json::to_value(records).expect("json"), true),
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                records.iter().map(|r| vec![r.class.clone(), r.n.to_string(), r.count.to_string()]).collect();
            csv_out(&["class", "n", "count"], &rows, true)
        }
        Format::Text => {
            let mut out = String::new();
            for r in records {
                out.push_str(&format!("{} n={} count={}\n", r.class, r.n, r.count));
                if let Some(e) = &r.edges {
                    for (m, c) in e {
                        out.push_str(&format!("  edges={m} count={c}\n"));
                    }
                }
            }
            text_out(out, true)
        }
    }
}

fn run_oracle(class: &str, n: Option<usize>, max_n: Option<usize>, p: &ClassParams, format: Format) -> Out {
    let spec = class_spec(class, p)?;
    let records = match (n, max_n) {
        (Some(n), None) => vec![oracle::count_class(&spec, n)?],
        (None, Some(m)) => oracle::count_sequence(&spec, m)?,
        _ => return usage("oracle needs --n or --max-n"),
    };
    records_out(&records, format)
}

fn run_gamma(target: Target, l: Option<usize>, k: Option<usize>, check: bool, digits: usize, format: Format) -> Out {
    numerics::check_digits(digits)?;
    let (name, param_name, param, value, growth): (&str, &str, usize, HighPrecisionValue, Option<GrowthResult>) =
        match target {
            Target::RdK4 => {
                let l = need(l, "l", "rd-k4")?;
                let g = numerics::gamma_rd_k4(l, digits)?;
                ("rd-k4", "l", l, g.gamma.clone(), Some(g))
            }
            Target::ExK4 => {
                let k = need(k, "k", "ex-k4")?;
                let g = numerics::gamma_ex_k4(k, digits)?;
                ("ex-k4", "k", k, g.gamma.clone(), Some(g))
            }
            Target::OuterRd => {
                let l = need(l, "l", "outer-rd")?;
                let g = numerics::gamma_outer_rd(l, digits)?;
                ("outer-rd", "l", l, g.gamma.clone(), Some(g))
            }
            Target::OuterEx => {
                let k = need(k, "k", "outer-ex")?;
                let g = numerics::gamma_outer_ex(k, digits)?;
                ("outer-ex", "k", k, g.gamma.clone(), Some(g))
            }
            Target::RhoSp => ("rho-sp", "", 0, numerics::rho_d(digits)?, None),
            Target::RhoOuter => ("rho-outer", "", 0, numerics::rho_dtilde(digits)?, None),
        };
    let reference = reference::lookup(name, param);
    let cmp = reference.map(|r| reference::compare(&value, r));
    let pass = !check || cmp.as_ref().is_some_and(|c| c.1);
    if check && reference.is_none() {
        return usage(format!("no reference value for {name} {param_name}={param}"));
    }
    let constant = match target {
        Target::RdK4 => "gamma_rd_k4",
        Target::ExK4 => "gamma_ex_k4",
        Target::OuterRd => "gamma_outer_rd",
        Target::OuterEx => "gamma_outer_ex",
        Target::RhoSp => "rho_sp",
        Target::RhoOuter => "rho_outer",
    };
    match format {
        Format::Json => {
            let mut v = json!({"constant": constant, "value": value.to_string(), "precision": digits});
            if !param_name.is_empty() {
                v[param_name] = json!(param);
            }
            if let Some(g) = &growth {
                v["rho"] = json!(g.rho.to_string());
                v["residual"] = json!(format!("{:.6}", g.residual));
                v["method"] = json!(g.method);
            }
            if let (Some(r), Some((rel, ok))) = (reference, &cmp) {
                v["reference"] = json!(r.printed);
                v["relative_error"] = json!(format!("{rel:.3}"));
                v["matches_reference"] = json!(ok);
                v["reference_table"] = json!(reference::TABLE_VERSION);
            }
            json_out(&v, pass)
        }
        Format::Csv => {
            let row = vec![
                constant.to_string(),
                param.to_string(),
                value.to_string(),
                growth.as_ref().map_or(String::new(), |g| format!("{:.6}", g.residual)),
                reference.map_or(String::new(), |r| r.printed.to_string()),
                cmp.as_ref().map_or(String::new(), |c| c.1.to_string()),
            ];
            csv_out(&["constant", "param", "value", "residual", "reference", "matches_reference"], &[row], pass)
        }
        Format::Text => {
            let mut out = constant.to_string();
            if !param_name.is_empty() {
                out.push_str(&format!(" {param_name}={param}"));
            }
            out.push_str(&format!(" = {value}\n"));
            if let Some(g) = &growth {
                out.push_str(&format!("rho = {}\nmethod = {:?}\nresidual = {:.6}\n", g.rho, g.method, g.residual));
            }
            if let (Some(r), Some((rel, ok))) = (reference, &cmp) {
                let verdict = if *ok { "PASS" } else { "FAIL" };
                out.push_str(&format!("reference {} relative error {rel:.3} {verdict}\n", r.printed));
            }
            text_out(out, pass)
        }
    }
}

/// Pairs of (oracle class, exact series) for the cross-check.
fn crosscheck_pair(class: &str, order: usize) -> Result<(ClassSpec, Option<TruncatedEGF>), Failure> {
    let numbered = |prefix: &str| class.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    let egf = |name: &str| series::named_series(name, order).map(Some).map_err(Failure::from);
    Ok(match class {
        "D" => (ClassSpec::SpNetworkD, egf("D")?),
        "S" => (ClassSpec::SpNetworkS, egf("S")?),
        "P" => (ClassSpec::SpNetworkP, egf("P")?),
        "F" => (ClassSpec::RootedSp, egf("F")?),
        "Dtilde" => (ClassSpec::OuterNetwork, egf("Dtilde")?),
        "C3root" => (ClassSpec::RootableRooted { l: 3 }, egf("C3root")?),
        _ => {
            if let Some(j) = numbered("Ahat") {
                (ClassSpec::AHat { c: ColourMask::first(j) }, egf(class)?)
            } else if let Some(j) = numbered("A") {
                (ClassSpec::CTree { c: ColourMask::first(j) }, egf(class)?)
            } else if let Some(k) = numbered("B") {
                (ClassSpec::Bk { k }, egf(class)?)
            } else if let Some(k) = numbered("F") {
                (ClassSpec::FanPrime { k }, None)
            } else {
                return usage(format!("no series/oracle pair for {class:?}"));
            }
        }
    })
}

fn run_crosscheck(class: &str, max_n: usize, format: Format) -> Out {
    let (spec, egf) = crosscheck_pair(class, max_n)?;
    if max_n > spec.cap() {
        return usage(format!("max-n {max_n} exceeds the oracle cap {} for {class}", spec.cap()));
    }
    let fan = match &spec {
        ClassSpec::FanPrime { k } => Some(series::fan_bivariate(*k, max_n)?),
        _ => None,
    };
    let counts = egf.as_ref().map(|s| s.counts()).transpose()?;
    let mut rows = Vec::new();
    let mut all = true;
    for n in 0..=max_n {
        let rec = oracle::count_class(&spec, n)?;
        let (expected, ok) = match (&counts, &fan) {
            (Some(c), _) => {
                let want = c[n].to_string();
                let ok = want == rec.count.to_string();
                (want, ok)
            }
            (None, Some(f)) => {
                // compare the whole edge profile
                let fact = BigRational::from_integer(factorial(n));
                let by = rec.edges.clone().unwrap_or_default();
                let p = f.coeff(n);
                let mut ok = true;
                for e in 0..p.coeffs().len().max(by.keys().max().map_or(0, |m| m + 1)) {
                    let want = p.coeff(e) * &fact;
                    let got = BigRational::from_integer(by.get(&e).copied().unwrap_or(0).into());
                    ok &= want == got;
                }
                let total: BigRational = p.coeffs().iter().fold(BigRational::from_integer(0.into()), |a, c| a + c) * &fact;
                (total.to_string(), ok)
            }
            _ => unreachable!("every pair has a series"),
        };
        all &= ok;
        rows.push((n, rec.count.to_string(), expected, ok));
    }
    match format {
        Format::Json => {
            let rs: Vec<Value> =
                rows.iter().map(|(n, o, s, ok)| json!({"n": n, "oracle": o, "series": s, "pass": ok})).collect();
            json_out(&json!({"class": class, "max_n": max_n, "oracle_class": spec.to_string(), "rows": rs, "pass": all}), all)
        }
        Format::Csv => {
            let rs: Vec<Vec<String>> =
                rows.iter().map(|(n, o, s, ok)| vec![n.to_string(), o.clone(), s.clone(), ok.to_string()]).collect();
            csv_out(&["n", "oracle", "series", "pass"], &rs, all)
        }
        Format::Text => {
            let mut out = String::new();
            for (n, o, s, ok) in &rows {
                out.push_str(&format!("{class} n={n} oracle={o} series={s} {}\n", if *ok { "PASS" } else { "FAIL" }));
            }
            out.push_str(if all { "PASS\n" } else { "FAIL\n" });
            text_out(out, all)
        }
    }
}

fn run_shapes(k: usize, format: Format) -> Out {
    let shapes = oracle::enumerate_ut_trees(k)?;
    let census = series::shape_census(k)?;
    match format {
        Format::Json => {
            let list: Vec<Value> = shapes
                .iter()
                .map(|s| {
                    let g = series::ShapeGF::of(s);
                    json!({"vertices": s.vertices, "uncoloured": s.uncoloured(), "edges": s.edges,
                           "closed_form": {"a": g.a, "e": g.e, "f": g.f, "g": g.g}})
                })
                .collect();
            let groups: Vec<Value> = census
                .iter()
                .map(|(g, m)| json!({"a": g.a, "e": g.e, "f": g.f, "g": g.g, "multiplicity": m}))
                .collect();
            json_out(&json!({"k": k, "count": shapes.len(), "shapes": list, "closed_forms": groups}), true)
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = shapes
                .iter()
                .map(|s| {
                    let g = series::ShapeGF::of(s);
                    let edges = s.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ");
                    vec![s.vertices.to_string(), s.uncoloured().to_string(), edges, g.a.to_string(), g.e.to_string(), g.f.to_string(), g.g.to_string()]
                })
                .collect();
            csv_out(&["vertices", "uncoloured", "edges", "a", "e", "f", "g"], &rows, true)
        }
        Format::Text => {
            let mut out = format!("k={k}: {} shapes\n", shapes.len());
            for s in &shapes {
                let edges = s.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ");
                out.push_str(&format!("{} vertices ({} uncoloured): {edges}\n", s.vertices, s.uncoloured()));
            }
            out.push_str("closed forms x^a y^(e+f) (1+y)^g (1-xy^2)^-e:\n");
            for (g, m) in &census {
                out.push_str(&format!("  {m} x a={} e={} f={} g={}\n", g.a, g.e, g.f, g.g));
            }
            text_out(out, true)
        }
    }
}

fn mask_of(set: &[usize], n: usize) -> Result<u64, Failure> {
    let mut m = 0u64;
    for &v in set {
        if v >= n {
            return usage(format!("vertex {v} is not in the graph"));
        }
        m |= 1 << v;
    }
    Ok(m)
}

fn run_graph(
    file: &std::path::Path,
    check: Predicate,
    p: &ClassParams,
    set: &[usize],
    root: Option<usize>,
    format: Format,
) -> Out {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let gf = graph::io::parse(&text)?;
    let g = &gf.graph;
    let b = minors(&p.minor)?;
    let (name, result): (&str, Value) = match check {
        Predicate::SeriesParallel => ("series-parallel", json!(graph::is_series_parallel(g))),
        Predicate::Outerplanar => ("outerplanar", json!(graph::is_outerplanar(g))),
        Predicate::InEx => ("in-ex", json!(graph::in_ex(g, &b)?)),
        Predicate::Packing => ("packing", json!(graph::max_disjoint_minor_packing(g, &b)?)),
        Predicate::Blocker => ("blocker", json!(graph::is_blocker(g, mask_of(set, g.n())?, &b)?)),
        Predicate::RedundantBlocker => {
            ("redundant-blocker", json!(graph::is_redundant_blocker(g, mask_of(set, g.n())?, &b)?))
        }
        Predicate::Network => ("network", json!(graph::classify_network(&gf.network()?)?)),
        Predicate::Crd => {
            let l = need(p.l, "l", "crd")?;
            ("crd", json!(graph::is_crd_member(&gf.coloured(Some(l))?, l, &b)?))
        }
        Predicate::GoodColours => {
            let cg = gf.coloured(p.l)?;
            let good = (1..=cg.t).map(|c| graph::colour_is_good(&cg, c, &b)).collect::<minorgf::Result<Vec<_>>>()?;
            ("good-colours", json!(good))
        }
        Predicate::CTree | Predicate::AHat => {
            let root = need(root, "root", "c-tree")?;
            if root >= g.n() {
                return usage("root is not a vertex");
            }
            let cg = gf.coloured(None)?;
            let c = match (colour_set(p)?, p.l) {
                (Some(c), _) => c,
                (None, Some(l)) => ColourMask::first(l),
                (None, None) => return usage("c-tree needs --colours or --l"),
            };
            if check == Predicate::CTree {
                ("c-tree", json!(graph::is_c_tree(&cg, root, c)))
            } else {
                ("a-hat", json!(graph::is_ahat_member(&cg, root, c)))
            }
        }
        Predicate::Separator => {
            let l = need(p.l, "l", "separator")?;
            let sep = graph::colour_separator(&gf.coloured(Some(l))?, l)?;
            ("separator", json!(sep.map(|m| graph::bits(m).collect::<Vec<_>>())))
        }
    };
    match format {
        Format::Json => json_out(&json!({"predicate": name, "n": g.n(), "m": g.edge_count(), "result": result}), true),
        Format::Csv => csv_out(&["predicate", "result"], &[vec![name.to_string(), result.to_string()]], true),
        Format::Text => text_out(format!("{name}: {result}\n"), true),
    }
}
