//! Command-line front end. Every subcommand prints one JSON report (or a
//! plain `key: value` rendering of it) and maps errors to stable exit codes:
//! 0 success, 1 negative result or internal failure, 2 usage or input
//! error, 3 budget exceeded.

use std::ffi::OsString;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::euclid::{cor17_embed, cor17_setup, dilation_check, symmetry_group, PointSet};
use crate::extract::{
    action_extractor, plan_length, run_extractor, solvable_extractor, ColoringSpec, Extractor,
};
use crate::group::{
    derived_series, is_solvable, subnormal_cyclic_series, ActionSpec, EquivalenceRelation,
    FiniteGroup, GroupAction, GroupSpec, SubnormalCyclicSeries,
};
use crate::hjdegree::{all_hj_degrees, hj_degree};
use crate::limits::Limits;
use crate::magnitude::Magnitude;
use crate::oracle::{minimal_n_search, verify_witness, Verdict};
use crate::words::{render_symbols, WordDoc};

pub const SCHEMA_VERSION: &str = "uhjp/v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "uhjp",
    version,
    about = "Uniform Hales-Jewett witnesses for finite solvable groups"
)]
pub struct Cli {
    /// Seed for random colorings without their own seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for exhaustive searches (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Dense symbol budget; overrides UHJP_DENSE_BUDGET.
    #[arg(long, global = true)]
    pub dense_budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Group or action input. JSON documents are given inline or as a path.
#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Group document; the group acts on itself.
    #[arg(long, conflicts_with = "action")]
    pub group: Option<String>,
    /// Action document; the relation is the orbit partition.
    #[arg(long)]
    pub action: Option<String>,
    /// Subnormal series as a JSON array of sorted element arrays.
    #[arg(long)]
    pub series: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, solvability and a cyclic series of a group.
    Group {
        #[arg(long)]
        group: String,
    },
    /// HJ-degree of a series, or of every series with --all.
    HjDegree {
        #[arg(long)]
        group: String,
        #[arg(long)]
        series: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 1000)]
        max_series: usize,
    },
    /// Length plan for r colors, without touching a coloring.
    Plan {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        colors: u64,
    },
    /// Runs the extractor on a coloring and verifies the witness.
    Extract {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        colors: u64,
        #[arg(long)]
        coloring: String,
    },
    /// Checks a given word against a coloring.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        word: String,
        #[arg(long)]
        colors: u64,
        #[arg(long)]
        coloring: String,
        /// Use the total relation instead of the orbit partition.
        #[arg(long)]
        total: bool,
    },
    /// Smallest N at which every r-coloring has a uniform witness.
    SearchMinN {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        colors: u64,
        #[arg(long)]
        max: usize,
        /// Colorings examined per length.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Symmetry group, dilation check and isometric embedding of a point set.
    Euclid {
        #[arg(long)]
        points: String,
        /// Elements of the symmetry group to keep, e.g. "0,3,4".
        #[arg(long)]
        subgroup: Option<String>,
        /// Word document for the dilation check.
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        colors: Option<u64>,
        /// Coloring of the scaled power; without it only the plan is reported.
        #[arg(long)]
        coloring: Option<String>,
    },
}

/// Exit status with what would be written to the two streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let format = cli.format;
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::InvalidInput(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok((code, report)) => Outcome {
            code,
            stdout: render(&report, format),
            stderr: String::new(),
        },
        Err(e) => {
            let code = exit_code(&e);
            let report =
                json!({ "schema": schema("error"), "error": e.kind(), "message": e.to_string() });
            Outcome {
                code,
                stdout: render(&report, format),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else if e.is_input() {
        EXIT_USAGE
    } else {
        EXIT_NEGATIVE
    }
}

fn schema(kind: &str) -> String {
    format!("{SCHEMA_VERSION}/{kind}")
}

fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(report).expect("plain data")
        ),
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(map) = report {
                for (k, v) in map {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    out.push_str(&format!("{k}: {shown}\n"));
                }
            }
            out
        }
    }
}

/// Inline JSON, or a path to a JSON file.
fn document(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Error::InvalidInput(format!("cannot read {arg}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn parse<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    serde_json::from_value(document(arg)?).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

fn group_of(arg: &str, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(
        parse::<GroupSpec>(arg, "group document")?.build(limits)?,
    ))
}

struct Resolved {
    action: Arc<GroupAction>,
    relation: EquivalenceRelation,
    series: SubnormalCyclicSeries,
    regular: bool,
}

impl Resolved {
    fn group(&self) -> &Arc<FiniteGroup> {
        self.action.group()
    }

    fn extractor(&self) -> Result<Arc<dyn Extractor>> {
        if self.regular {
            solvable_extractor(self.group(), &self.series)
        } else {
            action_extractor(self.action.clone(), &self.series)
        }
    }
}

fn series_of(g: &FiniteGroup, arg: Option<&str>) -> Result<SubnormalCyclicSeries> {
    match arg {
        None => subnormal_cyclic_series(g),
        Some(s) => SubnormalCyclicSeries::from_subgroups(g, parse(s, "series")?),
    }
}

fn resolve(t: &Target, limits: &Limits) -> Result<Resolved> {
    let (action, regular) = match (&t.group, &t.action) {
        (Some(g), None) => (Arc::new(GroupAction::regular(group_of(g, limits)?)), true),
        (None, Some(a)) => (
            Arc::new(parse::<ActionSpec>(a, "action document")?.build(limits)?),
            false,
        ),
        _ => {
            return Err(Error::InvalidInput(
                "exactly one of --group and --action is required".into(),
            ))
        }
    };
    let series = series_of(action.group(), t.series.as_deref())?;
    let relation = action.orbits();
    Ok(Resolved {
        action,
        relation,
        series,
        regular,
    })
}

fn dispatch(cli: &Cli) -> Result<(i32, Value)> {
    let mut limits = Limits::from_env()?;
    if let Some(b) = cli.dense_budget {
        limits = limits.with_dense_symbols(b);
    }
    match &cli.command {
        Command::Group { group } => cmd_group(group, &limits),
        Command::HjDegree {
            group,
            series,
            all,
            max_series,
        } => cmd_hj_degree(group, series.as_deref(), *all, *max_series, &limits),
        Command::Plan { target, colors } => cmd_plan(target, *colors, &limits),
        Command::Extract {
            target,
            colors,
            coloring,
        } => cmd_extract(target, *colors, coloring, cli.seed, &limits),
        Command::Verify {
            target,
            word,
            colors,
            coloring,
            total,
        } => cmd_verify(target, word, *colors, coloring, *total, cli.seed, &limits),
        Command::SearchMinN {
            target,
            degree,
            colors,
            max,
            budget,
        } => cmd_search(target, *degree, *colors, *max, *budget, &limits),
        Command::Euclid {
            points,
            subgroup,
            word,
            colors,
            coloring,
        } => cmd_euclid(
            points,
            subgroup.as_deref(),
            word.as_deref(),
            *colors,
            coloring.as_deref(),
            cli.seed,
            &limits,
        ),
    }
}

fn series_json(s: &SubnormalCyclicSeries) -> Value {
    json!({ "subgroups": s.subgroups, "factor_orders": s.factor_orders, "factor_generators": s.factor_generators })
}

fn cmd_group(arg: &str, limits: &Limits) -> Result<(i32, Value)> {
    let g = group_of(arg, limits)?;
    let solv = is_solvable(&g);
    let series = if solv.solvable {
        Some(series_json(&subnormal_cyclic_series(&g)?))
    } else {
        None
    };
    let labels: Vec<String> = g.elements().map(|x| g.label(x)).collect();
    Ok((
        EXIT_OK,
        json!({
            "schema": schema("group"),
            "order": g.order(),
            "abelian": g.is_abelian(),
            "solvable": solv.solvable,
            "derived_series": derived_series(&g),
            "series": series,
            "labels": labels,
        }),
    ))
}

fn cmd_hj_degree(
    arg: &str,
    series: Option<&str>,
    all: bool,
    max_series: usize,
    limits: &Limits,
) -> Result<(i32, Value)> {
    let g = group_of(arg, limits)?;
    if all {
        let rows = all_hj_degrees(&g, max_series)?;
        let min = rows.iter().map(|(_, d)| d.value.clone()).min();
        let list: Vec<Value> = rows
            .iter()
            .map(|(s, d)| {
                let mut v = d.to_json();
                v["subgroups"] = json!(s.subgroups);
                v
            })
            .collect();
        return Ok((
            EXIT_OK,
            json!({
                "schema": schema("hj-degrees"),
                "minimum": min.map(|m| m.to_string()),
                "series": list,
            }),
        ));
    }
    let s = series_of(&g, series)?;
    let mut v = hj_degree(&s)?.to_json();
    v["schema"] = json!(schema("hj-degree"));
    v["subgroups"] = json!(s.subgroups);
    Ok((EXIT_OK, v))
}

fn cmd_plan(t: &Target, colors: u64, limits: &Limits) -> Result<(i32, Value)> {
    if colors == 0 {
        return Err(Error::InvalidInput("--colors must be positive".into()));
    }
    let res = resolve(t, limits)?;
    let ext = res.extractor()?;
    let (n, plan) = plan_length(ext.as_ref(), &Magnitude::from(colors), limits)?;
    Ok((
        EXIT_OK,
        json!({
            "schema": schema("plan"),
            "extractor": ext.name(),
            "colors": colors,
            "degree": ext.context().degree.to_string(),
            "length": n.to_report_string(),
            "length_exact": n.is_exact(),
            "runnable": n.le_u64(limits.dense_symbols),
            "exceeds_dense_budget": plan.exceeds_dense_budget(),
            "stages": plan.stages,
            "stages_omitted": plan.omitted,
        }),
    ))
}

fn planned_length(ext: &dyn Extractor, colors: u64, limits: &Limits) -> Result<usize> {
    let n = ext.plan(&Magnitude::from(colors), limits)?;
    n.to_usize()
        .filter(|&n| n as u64 <= limits.dense_symbols)
        .ok_or_else(|| {
            Error::OverflowBudget(format!(
                "planned length {} is beyond the dense budget; see `plan`",
                n.render(80)
            ))
        })
}

fn coloring_of(arg: &str) -> Result<ColoringSpec> {
    parse(arg, "coloring document")
}

fn cmd_extract(
    t: &Target,
    colors: u64,
    coloring: &str,
    seed: u64,
    limits: &Limits,
) -> Result<(i32, Value)> {
    let res = resolve(t, limits)?;
    let ext = res.extractor()?;
    let n = planned_length(ext.as_ref(), colors, limits)?;
    let spec = coloring_of(coloring)?;
    let oracle = spec.build(n, res.action.set_size(), colors, seed, *limits)?;
    let out = run_extractor(ext.as_ref(), &oracle)?;
    let check = verify_witness(&out.witness, &oracle, &res.relation, &res.action)?;
    let mut v = out.to_json();
    v["schema"] = json!(schema("extract"));
    v["colors"] = json!(colors);
    v["rendered"] = json!(out
        .witness
        .materialize(200)
        .ok()
        .map(|s| render_symbols(&s)));
    v["verified"] = json!(check.verified);
    v["verification"] = json!(check.classes);
    let code = if check.verified {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok((code, v))
}

fn cmd_verify(
    t: &Target,
    word: &str,
    colors: u64,
    coloring: &str,
    total: bool,
    seed: u64,
    limits: &Limits,
) -> Result<(i32, Value)> {
    let res = resolve(t, limits)?;
    let doc: WordDoc = parse(word, "word document")?;
    let w = doc.build(res.group().order())?;
    let n = w
        .len_usize()
        .filter(|&n| n as u64 <= limits.dense_symbols)
        .ok_or_else(|| {
            Error::OverflowBudget(format!(
                "word of length {} is beyond the dense budget",
                w.len()
            ))
        })?;
    let oracle = coloring_of(coloring)?.build(n, res.action.set_size(), colors, seed, *limits)?;
    let relation = if total {
        EquivalenceRelation::total(res.action.set_size())
    } else {
        res.relation.clone()
    };
    let rep = verify_witness(&w, &oracle, &relation, &res.action)?;
    let a = w.analyze();
    Ok((
        if rep.verified { EXIT_OK } else { EXIT_NEGATIVE },
        json!({
            "schema": schema("verify"),
            "length": n,
            "degree": a.degree.to_string(),
            "uniform": a.uniform,
            "verified": rep.verified,
            "classes": rep.classes,
        }),
    ))
}

fn cmd_search(
    t: &Target,
    degree: usize,
    colors: u64,
    max: usize,
    budget: u64,
    limits: &Limits,
) -> Result<(i32, Value)> {
    let res = resolve(t, limits)?;
    let relation = if res.regular {
        EquivalenceRelation::total(res.action.set_size())
    } else {
        res.relation.clone()
    };
    let rep = minimal_n_search(&res.action, &relation, degree, colors, max, budget, limits)?;
    let code = match rep.verdict {
        Verdict::Holds => EXIT_OK,
        Verdict::Fails => EXIT_NEGATIVE,
        Verdict::Unknown => EXIT_BUDGET,
    };
    let mut v = serde_json::to_value(&rep)?;
    v["schema"] = json!(schema("search-min-n"));
    Ok((code, v))
}

fn cmd_euclid(
    points: &str,
    subgroup: Option<&str>,
    word: Option<&str>,
    colors: Option<u64>,
    coloring: Option<&str>,
    seed: u64,
    limits: &Limits,
) -> Result<(i32, Value)> {
    let x = PointSet::from_json(&document(points)?)?;
    let sym = symmetry_group(&x)?;
    let sub: Option<Vec<usize>> = subgroup
        .map(|s| {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad element {t:?}")))
                })
                .collect()
        })
        .transpose()?;
    let mut v = json!({
        "schema": schema("euclid"),
        "points": x.len(),
        "exact": x.is_exact(),
        "symmetry_order": sym.group.order(),
        "transitive": sym.is_transitive(),
        "orbits": sym.orbit_count(),
        "isometries": sym.permutations,
    });
    let mut code = EXIT_OK;
    let setup = cor17_setup(x.clone(), sub.as_deref(), None)?;
    v["acting_order"] = json!(setup.action.group().order());
    v["hj_degree"] = json!(setup.hj_degree.to_string());
    v["lambda"] = json!(setup.lambda_expression());
    v["lambda_squared"] = json!(setup.lambda_squared().to_string());
    if let Some(w) = word {
        let doc: WordDoc = parse(w, "word document")?;
        let rep = dilation_check(&doc.build(setup.action.group().order())?, &x, &setup.action)?;
        if !rep.holds {
            code = EXIT_NEGATIVE;
        }
        v["dilation"] = serde_json::to_value(rep)?;
    }
    if let Some(r) = colors {
        let (n, plan) = setup.plan(r, limits)?;
        v["length"] = json!(n.to_report_string());
        v["exceeds_dense_budget"] = json!(plan.exceeds_dense_budget());
        if let Some(c) = coloring {
            let n = planned_length(setup.extractor.as_ref(), r, limits)?;
            let oracle = coloring_of(c)?.build(n, x.len(), r, seed, *limits)?;
            let e = cor17_embed(&setup, &oracle)?;
            if !(e.isometric && e.monochromatic && e.scaling_coherent) {
                code = EXIT_NEGATIVE;
            }
            v["embedding"] = serde_json::to_value(e)?;
        }
    }
    Ok((code, v))
}
