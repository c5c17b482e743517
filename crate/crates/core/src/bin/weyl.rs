//! `weyl`: command-line front end for involution classes, cube classes,
//! invariant pairings, reductions and the character-gap search.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use weyl_core::atlas::{
    builtin_reductions, classify_cubes, load_or_compute, verify_reduction_with, Atlas, ReductionReport,
};
use weyl_core::invariant::{canonical_basis, expand, separation_report, InvariantExpr, InvariantVector};
use weyl_core::rational::fmt_q;
use weyl_core::reps::{builtin_hard_cases, default_catalogue, search_gap, Budget, Findings};
use weyl_core::root_system::{build_root_system, find_subsystem, RootSystem, TypeSpec};
use weyl_core::verify::{Mode, Verifier, CRITERIA};
use weyl_core::weyl::group_order;
use weyl_core::{Error, Result};

#[derive(Parser)]
#[command(name = "weyl", version, about = "Involutions, cubes and mod-2 invariants of Weyl groups")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Shorthand for `--format csv`.
    #[arg(long, global = true)]
    csv: bool,
    /// Directory for cached classifications.
    #[arg(long, env = "WEYL_CACHE", default_value = ".weylcache", global = true)]
    cache_dir: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Root counts; `--list` prints every root.
    Roots {
        spec: TypeSpec,
        #[arg(long)]
        list: bool,
    },
    /// Order of the Weyl group.
    Order { spec: TypeSpec },
    /// Involution classes with degree, size and splitting.
    Involutions { spec: TypeSpec },
    /// Cube classes with rank, size and representative.
    Cubes { spec: TypeSpec },
    /// Rank and degrees of the canonical basis of the invariant module.
    Basis { spec: TypeSpec },
    /// Pairings of w_i(cox), and of any `--expr`, with every class.
    Pair {
        spec: TypeSpec,
        /// Extra invariant, e.g. `w2(cox)*w1(roots) + t*w3(cox)`.
        #[arg(long = "expr")]
        exprs: Vec<String>,
    },
    /// Odd-index reductions; all built-in pairs unless a group is given.
    Reduce {
        spec: Option<TypeSpec>,
        /// Subsystem to use instead of the built-in one.
        #[arg(long)]
        sub: Option<TypeSpec>,
    },
    /// Character-gap search; the built-in hard cases unless a group is given.
    Gap {
        spec: Option<TypeSpec>,
        /// Degree of the classes to compare (with a group).
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Runs the acceptance checks; exit status 1 if any fails.
    Verify {
        /// Skip the E7 and E8 computations.
        #[arg(long, conflicts_with = "full")]
        fast: bool,
        /// Include E7 and E8 (default).
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args)]
struct BudgetArgs {
    /// Highest exterior power of the reflection representation.
    #[arg(long, default_value_t = Budget::default().max_exterior)]
    max_exterior: usize,
    /// Only scan single catalogue entries, not sums and tensor products.
    #[arg(long)]
    no_combinations: bool,
    /// Cap on scanned entries; reports beyond it are flagged partial.
    #[arg(long, default_value_t = Budget::default().max_entries)]
    max_entries: usize,
}

impl From<&BudgetArgs> for Budget {
    fn from(b: &BudgetArgs) -> Budget {
        Budget { max_exterior: b.max_exterior, combinations: !b.no_combinations, max_entries: b.max_entries }
    }
}

struct Ctx {
    format: Format,
    cache: Option<PathBuf>,
}

impl Ctx {
    fn system(&self, spec: &TypeSpec) -> Result<Arc<RootSystem>> {
        Ok(Arc::new(build_root_system(spec)?))
    }

    fn atlas(&self, rs: &Arc<RootSystem>) -> Result<Atlas> {
        load_or_compute(rs, self.cache.as_deref())
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Left-aligned text table.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec(), &mut out);
    for r in rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let quote =
        |c: &str| if c.contains([',', '"']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.to_string() };
    let mut out = header.join(",") + "\n";
    for r in rows {
        out += &(r.iter().map(|c| quote(c)).collect::<Vec<_>>().join(",") + "\n");
    }
    out
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn tabular<T: Serialize>(ctx: &Ctx, json: &T, header: &[&str], rows: &[Vec<String>], preamble: &str) -> Result<String> {
    Ok(match ctx.format {
        Format::Json => to_json(json)?,
        Format::Csv => csv(header, rows),
        Format::Table => format!("{preamble}{}", table(header, rows)),
    })
}

fn roots(ctx: &Ctx, spec: &TypeSpec, list: bool) -> Result<String> {
    let rs = ctx.system(spec)?;
    let rows: Vec<Vec<String>> = (0..rs.num_roots())
        .map(|i| {
            let coords: Vec<String> = rs.root(i).coords.iter().map(fmt_q).collect();
            vec![i.to_string(), rs.height(i).to_string(), format!("({})", coords.join(", "))]
        })
        .collect();
    let summary =
        format!("type {}\nrank {}\nroots {}\npositive {}\n", rs.spec(), rs.rank(), rs.num_roots(), rs.num_positive());
    match ctx.format {
        Format::Json => to_json(&rs.to_json()),
        Format::Csv => Ok(csv(&["index", "height", "coords"], &rows)),
        Format::Table if list => Ok(format!("{summary}\n{}", table(&["index", "height", "coords"], &rows))),
        Format::Table => Ok(summary),
    }
}

fn order(ctx: &Ctx, spec: &TypeSpec) -> Result<String> {
    #[derive(Serialize)]
    struct Order {
        #[serde(rename = "type")]
        group: String,
        order: u128,
    }
    let rs = ctx.system(spec)?;
    let o = Order { group: rs.spec().to_string(), order: group_order(&rs) };
    let rows = vec![vec![o.group.clone(), o.order.to_string()]];
    match ctx.format {
        Format::Table => Ok(format!("{} {}\n", o.group, o.order)),
        _ => tabular(ctx, &o, &["type", "order"], &rows, ""),
    }
}

fn involutions(ctx: &Ctx, spec: &TypeSpec) -> Result<String> {
    let rs = ctx.system(spec)?;
    let atlas = ctx.atlas(&rs)?;
    let rows: Vec<Vec<String>> = atlas
        .involution_classes
        .iter()
        .map(|c| vec![c.id.clone(), c.degree.to_string(), c.size.to_string(), join(c.splitting.roots(), " ")])
        .collect();
    let preamble = format!(
        "type {}  order {}  involutions {}  classes {}\n\n",
        rs.spec(),
        atlas.group_order,
        atlas.involution_count,
        atlas.involution_classes.len()
    );
    tabular(ctx, &atlas.to_json(), &["class", "degree", "size", "splitting"], &rows, &preamble)
}

fn cubes(ctx: &Ctx, spec: &TypeSpec) -> Result<String> {
    let rs = ctx.system(spec)?;
    let atlas = ctx.atlas(&rs)?;
    let rows: Vec<Vec<String>> = atlas
        .cube_classes
        .iter()
        .map(|c| vec![c.id.clone(), c.rank.to_string(), c.size.to_string(), join(c.representative.roots(), " ")])
        .collect();
    let preamble = format!("type {}  cube classes {}\n\n", rs.spec(), atlas.cube_classes.len());
    tabular(ctx, &atlas.to_json().cube_classes, &["class", "rank", "size", "representative"], &rows, &preamble)
}

fn basis(ctx: &Ctx, spec: &TypeSpec) -> Result<String> {
    let rs = ctx.system(spec)?;
    let b = canonical_basis(&ctx.atlas(&rs)?);
    let rows = vec![vec![b.group.clone(), b.rank.to_string(), join(&b.degrees, ",")]];
    match ctx.format {
        Format::Table => Ok(format!("type {}\nrank {}\ndegrees {}\n", b.group, b.rank, join(&b.degrees, ","))),
        _ => tabular(ctx, &b, &["type", "rank", "degrees"], &rows, ""),
    }
}

#[derive(Serialize)]
struct PairRow {
    expr: String,
    #[serde(flatten)]
    vector: InvariantVector,
}

fn pair(ctx: &Ctx, spec: &TypeSpec, extra: &[String]) -> Result<String> {
    let rs = ctx.system(spec)?;
    let atlas = ctx.atlas(&rs)?;
    let mut exprs: Vec<InvariantExpr> = Vec::new();
    for i in 0..=rs.rank() {
        exprs.push(InvariantExpr::parse(&rs, &format!("w{i}(cox)"))?);
    }
    for e in extra {
        exprs.push(InvariantExpr::parse(&rs, e)?);
    }
    let rows: Vec<PairRow> =
        exprs.iter().map(|e| Ok(PairRow { expr: e.to_string(), vector: expand(e, &atlas)? })).collect::<Result<_>>()?;
    let ids: Vec<String> = atlas.involution_classes.iter().map(|c| c.id.clone()).collect();
    let mut header = vec!["expr"];
    header.extend(ids.iter().map(String::as_str));
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| std::iter::once(r.expr.clone()).chain(r.vector.coeffs.iter().map(|(_, c)| c.to_string())).collect())
        .collect();
    tabular(ctx, &rows, &header, &cells, &format!("type {}\n\n", rs.spec()))
}

fn reduce(ctx: &Ctx, spec: Option<&TypeSpec>, sub: Option<&TypeSpec>) -> Result<String> {
    let pairs: Vec<(TypeSpec, TypeSpec)> = match (spec, sub) {
        (Some(g), Some(h)) => vec![(g.clone(), h.clone())],
        (Some(g), None) => {
            let name = g.to_string();
            let h = builtin_reductions()
                .iter()
                .find(|(a, _)| *a == name)
                .map(|(_, b)| b.parse())
                .ok_or_else(|| Error::Precondition(format!("no built-in reduction for {name}; pass --sub")))??;
            vec![(g.clone(), h)]
        }
        (None, Some(_)) => return Err(Error::Precondition("--sub needs a group".into())),
        (None, None) => {
            builtin_reductions().iter().map(|(a, b)| Ok((a.parse()?, b.parse()?))).collect::<Result<_>>()?
        }
    };
    let mut reports: Vec<ReductionReport> = Vec::new();
    for (g, h) in &pairs {
        let rs = ctx.system(g)?;
        let emb =
            find_subsystem(&rs, h)?.ok_or_else(|| Error::Precondition(format!("{g} has no subsystem of type {h}")))?;
        reports.push(verify_reduction_with(&rs, &emb, &classify_cubes(&rs)?));
    }
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.group.clone(),
                r.subgroup.clone(),
                r.index.to_string(),
                if r.index_odd { "odd" } else { "even" }.into(),
                format!("{}/{}", r.covered, r.cube_classes.len()),
                if r.pass { "pass" } else { "FAIL" }.into(),
            ]
        })
        .collect();
    tabular(ctx, &reports, &["group", "subgroup", "index", "parity", "cubes covered", "result"], &rows, "")
}

#[derive(Serialize)]
struct GapReport {
    #[serde(flatten)]
    findings: Findings,
    /// Whether some Stiefel–Whitney monomial of the catalogue already
    /// separates the pair.
    sw_separated: bool,
}

fn gap(ctx: &Ctx, spec: Option<&TypeSpec>, degree: Option<usize>, budget: &Budget) -> Result<String> {
    let cases: Vec<(TypeSpec, usize, bool)> = match (spec, degree) {
        (Some(s), Some(n)) => vec![(s.clone(), n, true)],
        (None, None) => builtin_hard_cases().iter().map(|&(s, n)| Ok((s.parse()?, n, false))).collect::<Result<_>>()?,
        _ => return Err(Error::Precondition("give both a group and --degree, or neither".into())),
    };
    let mut reports = Vec::new();
    for (s, n, all_pairs) in cases {
        let rs = ctx.system(&s)?;
        let atlas = ctx.atlas(&rs)?;
        let catalogue = default_catalogue(&rs, budget)?;
        let sep = separation_report(&atlas, &catalogue, n)?;
        if sep.pairs.is_empty() {
            return Err(Error::Precondition(format!("{s} has fewer than two involution classes of degree {n}")));
        }
        let chosen: Vec<_> = if all_pairs {
            sep.pairs.iter().collect()
        } else {
            vec![sep.unseparated().next().unwrap_or(&sep.pairs[0])]
        };
        for p in chosen {
            let a = atlas.class(&p.pair[0]).ok_or_else(|| Error::Internal("unknown class".into()))?;
            let b = atlas.class(&p.pair[1]).ok_or_else(|| Error::Internal("unknown class".into()))?;
            reports.push(GapReport { findings: search_gap(&rs, a, b, budget)?, sw_separated: p.witness.is_some() });
        }
    }
    if ctx.format == Format::Json {
        return to_json(&reports);
    }
    let mut rows = Vec::new();
    for r in &reports {
        let f = &r.findings;
        let base = vec![
            f.group.clone(),
            f.degree.to_string(),
            format!("{}/{}", f.pair[0], f.pair[1]),
            f.target.to_string(),
            if r.sw_separated { "yes" } else { "no" }.into(),
            format!("{}{}", f.catalogue_size, if f.partial { " (partial)" } else { "" }),
        ];
        if f.hits.is_empty() {
            rows.push([base.clone(), vec!["none found in catalogue".into(), String::new()]].concat());
        }
        for h in &f.hits {
            rows.push([base.clone(), vec![h.rep.clone(), h.gap.to_string()]].concat());
        }
    }
    let header = ["group", "degree", "pair", "target", "sw separates", "scanned", "rep", "gap"];
    Ok(if ctx.format == Format::Csv { csv(&header, &rows) } else { table(&header, &rows) })
}

fn verify(ctx: &Ctx, fast: bool) -> Result<(String, bool)> {
    let mode = if fast { Mode::Fast } else { Mode::Full };
    let mut v = Verifier::new(mode);
    let mut results = Vec::new();
    for &(id, _) in &CRITERIA {
        let r = v.run(id);
        log::info!("criterion {id} took {:.2} s", r.seconds);
        results.push(r);
    }
    let all = results.iter().all(|r| r.pass);
    let text = match ctx.format {
        Format::Json => to_json(&results)?,
        Format::Csv => csv(
            &["criterion", "result", "title"],
            &results
                .iter()
                .map(|r| vec![r.id.to_string(), if r.pass { "PASS" } else { "FAIL" }.into(), r.title.into()])
                .collect::<Vec<_>>(),
        ),
        Format::Table => {
            let mut s = String::new();
            for r in &results {
                let _ = writeln!(s, "{}", r.line());
                for d in &r.details {
                    let _ = writeln!(s, "    {d}");
                }
            }
            let _ = writeln!(s, "{}", if all { "all criteria pass" } else { "some criteria FAIL" });
            s
        }
    };
    Ok((text, all))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidSpec { .. }
        | Error::Parse(_)
        | Error::Precondition(_)
        | Error::NotHomogeneous(_)
        | Error::NotARoot(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let o = &cli.opts;
    let format = if o.json {
        Format::Json
    } else if o.csv {
        Format::Csv
    } else {
        o.format
    };
    #[cfg(feature = "parallel")]
    if let Some(n) = o.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    #[cfg(not(feature = "parallel"))]
    if o.threads.is_some() {
        log::warn!("built without the `parallel` feature; --threads ignored");
    }
    let ctx = Ctx { format, cache: (!o.no_cache).then(|| o.cache_dir.clone()) };

    let outcome = match &cli.command {
        Command::Roots { spec, list } => roots(&ctx, spec, *list).map(|s| (s, true)),
        Command::Order { spec } => order(&ctx, spec).map(|s| (s, true)),
        Command::Involutions { spec } => involutions(&ctx, spec).map(|s| (s, true)),
        Command::Cubes { spec } => cubes(&ctx, spec).map(|s| (s, true)),
        Command::Basis { spec } => basis(&ctx, spec).map(|s| (s, true)),
        Command::Pair { spec, exprs } => pair(&ctx, spec, exprs).map(|s| (s, true)),
        Command::Reduce { spec, sub } => reduce(&ctx, spec.as_ref(), sub.as_ref()).map(|s| (s, true)),
        Command::Gap { spec, degree, budget } => gap(&ctx, spec.as_ref(), *degree, &budget.into()).map(|s| (s, true)),
        Command::Verify { fast, full: _ } => verify(&ctx, *fast),
    };
    match outcome {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
