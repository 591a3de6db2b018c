//! Command-line front end. Exit codes: 0 success, 1 a check failed, 2 bad
//! input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cartan::CartanView;
use crate::error::{Error, Result};
use crate::eta::{self, parse_class_file, MoonshineClass};
use crate::freelie::{elimination_check, isotropic_set, random_admissible, DegreeBound};
use crate::lambda::{level_one_exponents, twisted_identity_check, AdamsFamily};
use crate::plot::lattice_svg;
use crate::roots::{compare, mults_from_product, mults_from_structure, RootTable};

#[derive(Debug, Parser)]
#[command(name = "monstrous", version, about = "Root multiplicities of Borcherds algebras attached to non-Fricke moonshine classes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print N, ell, the prefactor and the sequences c(m,0), c(1,n/N)
    Expand(ExpandArgs),
    /// Expand T(-1/tau) directly and from the product, side by side
    Fricke(ExpandArgs),
    /// Show the Cartan matrix by level blocks and check its axioms
    Cartan(CartanArgs),
    /// Root multiplicity table on a box
    Mults(MultsArgs),
    /// Run every consistency check for a class
    Verify(VerifyArgs),
    /// Quotient dimensions of a free Lie algebra by isotropic relations
    FreelieOracle(FreelieArgs),
    /// SVG of the positive roots on the (m, n/N) lattice
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
struct ClassArgs {
    /// Built-in class label (2B or 4D)
    #[arg(long, conflicts_with = "class_file")]
    class: Option<String>,
    /// TOML file with [[class]] records
    #[arg(long)]
    class_file: Option<PathBuf>,
    /// Record to use when the class file holds several
    #[arg(long, requires = "class_file")]
    label: Option<String>,
    /// Number of terms of each sequence
    #[arg(long, env = "MONSTROUS_ORDER", default_value_t = eta::DEFAULT_ORDER)]
    order: i64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Args)]
struct ExpandArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct CartanArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[arg(long, default_value_t = 4)]
    mmax: u64,
    #[arg(long, default_value_t = 4)]
    nmax: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Product,
    Structure,
    Both,
}

#[derive(Debug, Args)]
struct MultsArgs {
    #[command(flatten)]
    class: ClassArgs,
    /// Largest m and largest n (for n/N)
    #[arg(long = "box", num_args = 2, value_names = ["M", "Q"], default_values_t = [10, 10])]
    bounds: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Route::Product)]
    route: Route,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[arg(long = "box", num_args = 2, value_names = ["M", "Q"], default_values_t = [10, 10])]
    bounds: Vec<u64>,
    /// Total degree bound for the free Lie checks
    #[arg(long, default_value_t = 6)]
    maxdeg: u64,
    /// Number of random matrices for the elimination check
    #[arg(long, default_value_t = 10)]
    samples: u64,
    /// Adams family for the twisted identity (default: h = id)
    #[arg(long)]
    adams_file: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct FreelieArgs {
    /// Symmetric matrix, rows separated by ';', entries by ','
    #[arg(long, allow_hyphen_values = true, conflicts_with = "random")]
    matrix: Option<String>,
    /// Size of a random admissible matrix
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    maxdeg: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[command(flatten)]
    class: ClassArgs,
    #[arg(long = "box", num_args = 2, value_names = ["M", "Q"], default_values_t = [7, 4])]
    bounds: Vec<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// What a command produced: text for the output, and whether every check
/// it ran passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (result, output) = match &cli.command {
        Command::Expand(a) => (cmd_expand(a), a.out.output.as_deref()),
        Command::Fricke(a) => (cmd_fricke(a), a.out.output.as_deref()),
        Command::Cartan(a) => (cmd_cartan(a), a.out.output.as_deref()),
        Command::Mults(a) => (cmd_mults(a), a.out.output.as_deref()),
        Command::Verify(a) => (cmd_verify(a), a.out.output.as_deref()),
        Command::FreelieOracle(a) => (cmd_freelie(a), a.out.output.as_deref()),
        Command::Plot(a) => (cmd_plot(a), a.output.as_deref()),
    };
    match result.and_then(|o| emit(&o.text, output).map(|_| o.passed)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn load_class(a: &ClassArgs, at_least: i64) -> Result<MoonshineClass> {
    if a.order < 1 {
        return Err(Error::Invalid("--order must be positive".into()));
    }
    let order = a.order.max(at_least);
    match (&a.class, &a.class_file) {
        (Some(label), None) => MoonshineClass::builtin(label, order),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            let defs = parse_class_file(&text)?;
            let def = match &a.label {
                Some(l) => defs
                    .iter()
                    .find(|d| &d.label == l)
                    .ok_or_else(|| Error::Invalid(format!("no class {l:?} in {}", path.display())))?,
                None if defs.len() == 1 => &defs[0],
                None => {
                    return Err(Error::Invalid(format!(
                        "{} holds {} classes; pick one with --label",
                        path.display(),
                        defs.len()
                    )))
                }
            };
            def.build(order)
        }
        _ => Err(Error::Invalid("give exactly one of --class or --class-file".into())),
    }
}

fn box_of(v: &[u64]) -> Result<(u64, u64)> {
    match v {
        [m, q] if *m >= 1 => Ok((*m, *q)),
        _ => Err(Error::Invalid("--box needs M >= 1 and Q >= 0".into())),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn cmd_expand(a: &ExpandArgs) -> Result<Outcome> {
    let c = load_class(&a.class, 1)?;
    if a.out.format == Format::Json {
        #[derive(Serialize)]
        struct Doc {
            class: String,
            #[serde(rename = "N")]
            n: u64,
            ell: u64,
            prefactor: String,
            order: i64,
            cm0: Vec<String>,
            c1n: Vec<String>,
        }
        let strs = |v: &[num_bigint::BigInt]| v.iter().map(|x| x.to_string()).collect();
        return Ok(Outcome::ok(json(&Doc {
            class: c.label().into(),
            n: c.n(),
            ell: c.ell(),
            prefactor: c.prefactor().to_string(),
            order: c.order(),
            cm0: strs(c.cm0_all()),
            c1n: strs(c.c1n_all()),
        })));
    }
    let mut s = format!(
        "# class={} N={} ell={} prefactor={} order={}\n",
        c.label(),
        c.n(),
        c.ell(),
        c.prefactor(),
        c.order()
    );
    s.push_str("m\tc(m,0)\tc(1,m/N)\n");
    for (i, (x, y)) in c.cm0_all().iter().zip(c.c1n_all()).enumerate() {
        writeln!(s, "{}\t{x}\t{y}", i + 1).unwrap();
    }
    Ok(Outcome::ok(s))
}

fn cmd_fricke(a: &ExpandArgs) -> Result<Outcome> {
    let c = load_class(&a.class, 1)?;
    let eq = c
        .quotient()
        .ok_or_else(|| Error::Invalid(format!("class {} has no eta quotient", c.label())))?;
    let direct = eta::fricke_direct(eq, c.order())?;
    let product = eta::fricke_from_product(c.n(), c.prefactor(), c.cm0_all(), c.order())?;
    let rows: Vec<(i64, String, String)> = (1..=c.order())
        .map(|k| {
            Ok((
                k,
                direct.series.coeff_num(k)?.to_string(),
                product.coeff_num(k)?.to_string(),
            ))
        })
        .collect::<Result<_>>()?;
    let passed = rows.iter().all(|(_, d, p)| d == p);
    let text = if a.out.format == Format::Json {
        #[derive(Serialize)]
        struct Row {
            n: i64,
            direct: String,
            product: String,
        }
        #[derive(Serialize)]
        struct Doc {
            class: String,
            #[serde(rename = "N")]
            n: u64,
            prefactor: String,
            agree: bool,
            rows: Vec<Row>,
        }
        json(&Doc {
            class: c.label().into(),
            n: c.n(),
            prefactor: c.prefactor().to_string(),
            agree: passed,
            rows: rows
                .into_iter()
                .map(|(n, direct, product)| Row { n, direct, product })
                .collect(),
        })
    } else {
        let mut s = format!(
            "# class={} N={} prefactor={} quotient={} agree={}\n",
            c.label(),
            c.n(),
            c.prefactor(),
            eq,
            passed
        );
        s.push_str("n\texponent\tdirect\tproduct\n");
        for (k, d, p) in rows {
            writeln!(s, "{k}\t{k}/{}\t{d}\t{p}", c.n()).unwrap();
        }
        s
    };
    Ok(Outcome { text, passed })
}

fn cmd_cartan(a: &CartanArgs) -> Result<Outcome> {
    let c = load_class(&a.class, a.mmax.max(a.nmax) as i64)?;
    let v = CartanView::new(&c, a.mmax, a.nmax)?;
    let axioms = v.validate_axioms();
    let rows = v.row_relations();
    let passed = axioms.passed() && rows.passed();
    let blocks = v.blocks();
    if a.out.format == Format::Json {
        #[derive(Serialize)]
        struct Block {
            side: crate::cartan::Side,
            level: u64,
            copies: String,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            class: &'a str,
            blocks: Vec<Block>,
            entries: Vec<Vec<i64>>,
            axioms: &'a crate::cartan::AxiomReport,
            row_relations: &'a crate::cartan::RowRelationReport,
        }
        let (reps, m) = v.representative_matrix();
        let entries = blocks
            .iter()
            .map(|(s, l, _)| {
                let i = reps.iter().position(|r| r.side == *s && r.level == *l).unwrap();
                blocks
                    .iter()
                    .map(|(s2, l2, _)| {
                        let j = reps.iter().position(|r| r.side == *s2 && r.level == *l2).unwrap();
                        m[i][j]
                    })
                    .collect()
            })
            .collect();
        let text = json(&Doc {
            class: c.label(),
            blocks: blocks
                .iter()
                .map(|(s, l, n)| Block {
                    side: *s,
                    level: *l,
                    copies: n.to_string(),
                })
                .collect(),
            entries,
            axioms: &axioms,
            row_relations: &rows,
        });
        return Ok(Outcome { text, passed });
    }
    let label = |(s, l, n): &(crate::cartan::Side, u64, num_bigint::BigInt)| match s {
        crate::cartan::Side::Minus => format!("-{l}x{n}"),
        crate::cartan::Side::Plus => format!("{l}x{n}"),
    };
    let labels: Vec<String> = blocks.iter().map(label).collect();
    let width = labels.iter().map(|l| l.len()).max().unwrap_or(1).max(5);
    let mut s = format!(
        "# class={} ell={} blocks are level x copies; entries are per block\n",
        c.label(),
        c.ell()
    );
    write!(s, "{:>width$}", "").unwrap();
    for l in &labels {
        write!(s, " {l:>width$}").unwrap();
    }
    s.push('\n');
    for (bi, l) in blocks.iter().zip(&labels) {
        write!(s, "{l:>width$}").unwrap();
        for bj in &blocks {
            let i = crate::cartan::SimpleRootIndex {
                side: bi.0,
                level: bi.1,
                copy: 1,
            };
            let j = crate::cartan::SimpleRootIndex {
                side: bj.0,
                level: bj.1,
                copy: 1,
            };
            write!(s, " {:>width$}", v.entry(&i, &j)?).unwrap();
        }
        s.push('\n');
    }
    writeln!(
        s,
        "axioms\t{}\t{} violations on {} representatives",
        status(axioms.passed()),
        axioms.violations.len(),
        axioms.size
    )
    .unwrap();
    for viol in &axioms.violations {
        writeln!(s, "  {viol}").unwrap();
    }
    writeln!(s, "row-relations\t{}\trank {}", status(rows.passed()), rows.rank).unwrap();
    for f in &rows.failures {
        writeln!(s, "  {f}").unwrap();
    }
    Ok(Outcome { text: s, passed })
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_table(t: &RootTable, format: Format) -> String {
    match format {
        Format::Tsv => t.to_tsv(),
        Format::Json => t.to_json(),
    }
}

fn cmd_mults(a: &MultsArgs) -> Result<Outcome> {
    let (m, q) = box_of(&a.bounds)?;
    let c = load_class(&a.class, m.max(q) as i64)?;
    match a.route {
        Route::Product => Ok(Outcome::ok(render_table(&mults_from_product(&c, m, q)?, a.out.format))),
        Route::Structure => Ok(Outcome::ok(render_table(&mults_from_structure(&c, m, q)?, a.out.format))),
        Route::Both => {
            let p = mults_from_product(&c, m, q)?;
            let s = mults_from_structure(&c, m, q)?;
            let diff = compare(&p, &s)?;
            let mut text = render_table(&p, a.out.format);
            if !diff.is_empty() {
                let d = &diff[0];
                eprintln!(
                    "routes disagree at {} points; first at ({}, {}/{}): product {} vs structure {}",
                    diff.len(),
                    d.m,
                    d.n,
                    c.n(),
                    d.left,
                    d.right
                );
                text.clear();
            }
            Ok(Outcome {
                text,
                passed: diff.is_empty(),
            })
        }
    }
}

#[derive(Debug, Serialize)]
struct CheckResult {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Result<CheckResult> {
    match f() {
        Ok((passed, detail)) => Ok(CheckResult { name, passed, detail }),
        Err(e) if e.is_input_error() => Err(e),
        Err(e) => Ok(CheckResult {
            name,
            passed: false,
            detail: e.to_string(),
        }),
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let (mmax, qmax) = box_of(&a.bounds)?;
    let c = load_class(&a.class, mmax.max(qmax) as i64)?;
    let family = match &a.adams_file {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| Error::Io {
                path: p.clone(),
                source,
            })?;
            Some(AdamsFamily::parse(&text)?)
        }
        None => None,
    };
    let mut checks = Vec::new();

    checks.push(check("sequences", || {
        let recon = c.reconstruction_holds()?;
        let fricke = c.fricke_coefficients_hold()?;
        Ok((
            recon && fricke,
            format!("c(m,0) reproduces T: {recon}; c(1,n/N) are the coefficients of T(-1/tau): {fricke}"),
        ))
    })?);

    let (cm, cn) = (mmax.min(6), qmax.clamp(1, 6));
    checks.push(check("cartan-axioms", || {
        let r = CartanView::new(&c, cm, cn)?.validate_axioms();
        let detail = match r.violations.first() {
            Some(v) => format!("{} violations, first {v}", r.violations.len()),
            None => format!("{} representatives, window ({cm}, {cn})", r.size),
        };
        Ok((r.passed(), detail))
    })?);

    checks.push(check("row-relations", || {
        let r = CartanView::new(&c, cm, cn)?.row_relations();
        let detail = match r.failures.first() {
            Some(f) => f.clone(),
            None => format!("ell {}, rank {}", r.ell, r.rank),
        };
        Ok((r.passed(), detail))
    })?);

    let product = mults_from_product(&c, mmax, qmax).map_err(|e| e.to_string());
    let product_table = || product.clone().map_err(Error::NonConforming);
    checks.push(check("product-vs-structure", || {
        let p = product_table()?;
        let s = mults_from_structure(&c, mmax, qmax)?;
        let diff = compare(&p, &s)?;
        let detail = match diff.first() {
            Some(d) => format!(
                "{} points differ; first at ({}, {}/{}): product {} vs structure {}",
                diff.len(),
                d.m,
                d.n,
                c.n(),
                d.left,
                d.right
            ),
            None => format!("box ({mmax}, {qmax}), {} nonzero points", p.iter().count()),
        };
        Ok((diff.is_empty(), detail))
    })?);

    checks.push(check("elimination", || {
        let bound = DegreeBound::Total(a.maxdeg);
        let mut cases = vec![(vec![vec![0, -1], vec![-1, -2]], vec![0])];
        cases.extend((0..a.samples).map(|s| random_admissible(3, s)));
        let total = cases.len();
        for (i, (m, j)) in cases.into_iter().enumerate() {
            isotropic_set(&m)?;
            let r = elimination_check(&m, &j, &bound)?;
            if !r.passed() {
                return Ok((false, format!("case {i} ({m:?}) fails: {:?}", r.mismatches.first())));
            }
        }
        Ok((true, format!("{total} matrices, total degree <= {}", a.maxdeg)))
    })?);

    checks.push(check("twisted-identity", || {
        let kmax = u32::try_from(mmax).map_err(|_| Error::Invalid("box too large".into()))?;
        let (fam, is_id) = match &family {
            Some(f) => (f.clone(), false),
            None => (AdamsFamily::identity(&c, kmax)?, true),
        };
        let r = twisted_identity_check(&fam, mmax, qmax)?;
        if !r.equal {
            let (i, j) = r.first_difference().unwrap_or_default();
            return Ok((false, format!("sides differ at p^{i} q^({j}/{})", fam.n())));
        }
        if is_id {
            let exps = level_one_exponents(&fam, &r, mmax)?;
            let table = product_table()?;
            let expect: std::collections::BTreeMap<_, _> =
                table.iter().map(|(k, v)| (k, v.clone())).collect();
            if let Some((k, v)) = expect.iter().find(|(k, v)| exps.get(k) != Some(v)) {
                return Ok((
                    false,
                    format!("level-one exponent at {k:?} is {:?}, root table has {v}", exps.get(k)),
                ));
            }
            if exps.len() != expect.len() {
                return Ok((false, "level-one exponents have extra nonzero points".into()));
            }
        }
        Ok((true, if is_id { "h = id".into() } else { "Adams family from file".into() }))
    })?);

    let passed = checks.iter().all(|c| c.passed);
    let text = if a.out.format == Format::Json {
        #[derive(Serialize)]
        struct Doc<'a> {
            class: &'a str,
            #[serde(rename = "box")]
            bounds: [u64; 2],
            passed: bool,
            checks: &'a [CheckResult],
        }
        json(&Doc {
            class: c.label(),
            bounds: [mmax, qmax],
            passed,
            checks: &checks,
        })
    } else {
        let mut s = String::from("check\tstatus\tdetail\n");
        for ch in &checks {
            writeln!(s, "{}\t{}\t{}", ch.name, status(ch.passed), ch.detail).unwrap();
        }
        writeln!(s, "overall\t{}\tclass {}", status(passed), c.label()).unwrap();
        s
    };
    Ok(Outcome { text, passed })
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad matrix entry {x:?}")))
                })
                .collect()
        })
        .collect()
}

fn cmd_freelie(a: &FreelieArgs) -> Result<Outcome> {
    let m = match (&a.matrix, a.random) {
        (Some(s), None) => parse_matrix(s)?,
        (None, Some(n)) if (1..=4).contains(&n) => random_admissible(n, a.seed).0,
        (None, Some(_)) => return Err(Error::Invalid("--random takes a size from 1 to 4".into())),
        _ => return Err(Error::Invalid("give --matrix or --random".into())),
    };
    let iso = isotropic_set(&m)?;
    let j: Vec<usize> = (0..iso.len()).filter(|&i| iso[i]).collect();
    let bound = DegreeBound::Total(a.maxdeg);
    let r = elimination_check(&m, &j, &bound)?;
    let passed = r.passed();
    let text = if a.out.format == Format::Json {
        #[derive(Serialize)]
        struct Row {
            degree: Vec<u64>,
            quotient: String,
            predicted: String,
        }
        #[derive(Serialize)]
        struct Doc {
            matrix: Vec<Vec<i64>>,
            isotropic: Vec<usize>,
            maxdeg: u64,
            passed: bool,
            rows: Vec<Row>,
        }
        json(&Doc {
            matrix: m.clone(),
            isotropic: j.iter().map(|x| x + 1).collect(),
            maxdeg: a.maxdeg,
            passed,
            rows: bound
                .degrees(m.len())
                .into_iter()
                .map(|d| Row {
                    quotient: r.quotient.get(&d).to_string(),
                    predicted: r.predicted.get(&d).to_string(),
                    degree: d,
                })
                .collect(),
        })
    } else {
        let rows: Vec<String> = m
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        let js: Vec<String> = j.iter().map(|x| (x + 1).to_string()).collect();
        let mut s = format!(
            "# matrix={} J={{{}}} maxdeg={} status={}\n",
            rows.join(";"),
            js.join(","),
            a.maxdeg,
            status(passed)
        );
        s.push_str("degree\tquotient\tpredicted\n");
        for d in bound.degrees(m.len()) {
            let (x, y) = (r.quotient.get(&d), r.predicted.get(&d));
            if x.bits() == 0 && y.bits() == 0 {
                continue;
            }
            let ds: Vec<String> = d.iter().map(|v| v.to_string()).collect();
            writeln!(s, "({})\t{x}\t{y}", ds.join(",")).unwrap();
        }
        s
    };
    Ok(Outcome { text, passed })
}

fn cmd_plot(a: &PlotArgs) -> Result<Outcome> {
    let (m, q) = box_of(&a.bounds)?;
    let c = load_class(&a.class, m.max(q) as i64)?;
    Ok(Outcome::ok(lattice_svg(&mults_from_product(&c, m, q)?)))
}
