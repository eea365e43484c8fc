//! `gpd`: build, inspect and verify finite groupoids from the command line.

mod corpus;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use groupoid_core::action::cf_terms;
use groupoid_core::builder::{build, load_groupoid, parse_sub_spec, BuildError, SubSpec};
use groupoid_core::coset::{double_cosets, left_cosets};
use groupoid_core::fnspace::y_rep;
use groupoid_core::format::{parse_gset, serialize_groupoid, serialize_subgroupoid, FormatError};
use groupoid_core::groupoid::{connected_components, index, GroupoidError};
use groupoid_core::linrep::{character, permutation_rep, rep_inner_product, trivial_rep, Representation};
use groupoid_core::random::gen_random;
use groupoid_core::verify::{verify_instance, VerificationReport, VerifyError};
use groupoid_core::{FiniteGroupoid, Subgroupoid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Parser, Debug)]
#[command(name = "gpd", version, about = "Finite groupoids, double cosets and representations")]
struct Cli {
    /// output style
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// seed for `gen` and `verify --random`
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical file form of a groupoid.
    Build { groupoid: String },
    /// Parse a groupoid file and check every axiom.
    Validate { groupoid: String },
    /// Object, morphism and component counts.
    Info { groupoid: String },
    /// Connected components with their isotropy orders.
    Components { groupoid: String },
    /// Left-coset count of a wide subgroupoid and the closed formula.
    Index {
        groupoid: String,
        #[arg(long)]
        h: String,
    },
    /// Orbit count of a G-set file from fixed points.
    Cf { gset: PathBuf },
    /// The partition of the morphisms into double cosets.
    DoubleCosets {
        groupoid: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
    },
    /// Characters of the trivial, coset and Y representations and their
    /// inner products.
    Characters {
        groupoid: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: Option<String>,
    },
    /// Run every check on one instance, a corpus manifest or random instances.
    Verify {
        groupoid: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        k: Option<String>,
        /// manifest with `name: groupoid | h | k` lines
        #[arg(long, conflicts_with_all = ["groupoid", "random"])]
        corpus: Option<PathBuf>,
        /// number of random instances starting at `--seed`
        #[arg(long, conflicts_with = "groupoid")]
        random: Option<u64>,
        #[arg(long, default_value_t = 3)]
        max_objects: usize,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long, default_value_t = 3)]
        max_objects: usize,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        /// write `g.gpd`, `h.sub` and `k.sub` here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Successful runs either pass or report failed checks.
enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// A groupoid argument: a builder expression, or else a file path.
fn load_any(arg: &str, base: &Path) -> Result<FiniteGroupoid, BuildError> {
    if arg.contains('(') {
        build(arg, base)
    } else {
        load_groupoid(&base.join(arg))
    }
}

fn load(arg: &str, base: &Path) -> Result<Arc<FiniteGroupoid>> {
    let g = load_any(arg, base).with_context(|| format!("cannot load `{arg}`"))?;
    Ok(Arc::new(g))
}

fn sub(g: &Arc<FiniteGroupoid>, role: &'static str, spec: &str, base: &Path) -> Result<Subgroupoid> {
    let s = if spec.ends_with(".sub") && !spec.contains('(') {
        SubSpec::File(spec.to_string())
    } else {
        parse_sub_spec(spec).with_context(|| format!("bad subgroupoid `{spec}`"))?
    };
    let s = s.eval(g, base)?;
    if !s.is_wide() {
        return Err(VerifyError::NotWide(role).into());
    }
    Ok(s)
}

fn here() -> PathBuf {
    PathBuf::from(".")
}

fn record(out: &mut String, fields: &[&dyn std::fmt::Display]) {
    let line: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
    out.push_str(&line.join("\t"));
    out.push('\n');
}

fn validate(arg: &str, fmt: Format, out: &mut String) -> Result<Outcome> {
    let g = match load_any(arg, &here()) {
        Ok(g) => g,
        Err(BuildError::Format {
            source: FormatError::Groupoid(GroupoidError::Invalid(violations)),
            ..
        }) => {
            for v in &violations {
                match fmt {
                    Format::Text => writeln!(out, "violation: {v}")?,
                    Format::Records => record(out, &[&"violation", v]),
                }
            }
            if fmt == Format::Text {
                writeln!(out, "{} violations", violations.len())?;
            }
            return Ok(Outcome::Fail);
        }
        Err(e) => return Err(e.into()),
    };
    match fmt {
        Format::Text => writeln!(
            out,
            "valid: {} objects, {} morphisms",
            g.object_count(),
            g.morphism_count()
        )?,
        Format::Records => record(out, &[&"valid", &g.object_count(), &g.morphism_count()]),
    }
    Ok(Outcome::Pass)
}

fn info(g: &FiniteGroupoid, fmt: Format, out: &mut String) -> Result<Outcome> {
    let iso: Vec<String> = (0..g.object_count())
        .map(|x| g.endomorphisms(x).len().to_string())
        .collect();
    let rows: [(&str, String); 5] = [
        ("objects", g.object_count().to_string()),
        ("morphisms", g.morphism_count().to_string()),
        ("components", g.component_count().to_string()),
        ("connected", g.is_connected().to_string()),
        ("isotropy", iso.join(" ")),
    ];
    for (key, value) in rows {
        match fmt {
            Format::Text => writeln!(out, "{key}: {value}")?,
            Format::Records => record(out, &[&key, &value]),
        }
    }
    Ok(Outcome::Pass)
}

fn components(g: &Arc<FiniteGroupoid>, fmt: Format, out: &mut String) -> Result<Outcome> {
    let comps = connected_components(g);
    for (i, c) in comps.components.iter().enumerate() {
        let objects: Vec<String> = c.objects().iter().map(ToString::to_string).collect();
        let iso = g.endomorphisms(c.objects()[0]).len();
        match fmt {
            Format::Text => writeln!(
                out,
                "component {i}: objects {} | morphisms {} | isotropy {iso}",
                objects.join(" "),
                c.morphisms().len()
            )?,
            Format::Records => record(out, &[&i, &objects.join(" "), &c.morphisms().len(), &iso]),
        }
    }
    Ok(Outcome::Pass)
}

fn index_cmd(g: &Arc<FiniteGroupoid>, h: &Subgroupoid, fmt: Format, out: &mut String) -> Result<Outcome> {
    let r = index(g, h)?;
    match fmt {
        Format::Text => {
            writeln!(out, "index = {}", r.cosets)?;
            writeln!(out, "formula = {} = {}", r, r.formula)?;
        }
        Format::Records => record(out, &[&"index", &r.cosets, &r, &r.formula]),
    }
    Ok(Outcome::from_ok(r.holds()))
}

fn cf(path: &Path, fmt: Format, out: &mut String) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = parse_gset(&text).with_context(|| path.display().to_string())?;
    let base = path.parent().unwrap_or(Path::new("."));
    let g = load(&doc.over, base)?;
    let x = doc.build(g)?;
    let terms = cf_terms(&x);
    let orbits = x.orbits().len();
    let value = groupoid_core::action::cf_value(&x);
    match fmt {
        Format::Text => {
            for t in &terms {
                writeln!(
                    out,
                    "component {}: {} fixed points over {} isomorphisms",
                    t.component, t.fixed_points, t.iso_order
                )?;
            }
            writeln!(out, "fixed-point count = {value}")?;
            writeln!(out, "orbits = {orbits}")?;
        }
        Format::Records => {
            for t in &terms {
                record(out, &[&"component", &t.component, &t.fixed_points, &t.iso_order]);
            }
            record(out, &[&"cf", &value]);
            record(out, &[&"orbits", &orbits]);
        }
    }
    Ok(Outcome::from_ok(value.to_string() == orbits.to_string()))
}

fn double_cosets_cmd(h: &Subgroupoid, k: &Subgroupoid, fmt: Format, out: &mut String) -> Result<Outcome> {
    let p = double_cosets(h, k)?;
    match fmt {
        Format::Text => {
            write!(out, "{p}")?;
            writeln!(out, "{} blocks", p.len())?;
        }
        Format::Records => {
            for (rep, size) in p.representatives().iter().zip(p.block_sizes()) {
                record(out, &[&"block", rep, &size]);
            }
        }
    }
    Ok(Outcome::Pass)
}

fn characters(
    g: &Arc<FiniteGroupoid>,
    h: &Subgroupoid,
    k: Option<&Subgroupoid>,
    fmt: Format,
    out: &mut String,
) -> Result<Outcome> {
    let mut family: Vec<(&str, Representation)> = vec![
        ("Tri", trivial_rep(g.clone())),
        ("C[G/H]", permutation_rep(&left_cosets(h)?.gset)),
        ("Y_H", y_rep(h)?.rep),
    ];
    if let Some(k) = k {
        family.push(("C[G/K]", permutation_rep(&left_cosets(k)?.gset)));
        family.push(("Y_K", y_rep(k)?.rep));
    }
    let endo: Vec<usize> = (0..g.morphism_count()).filter(|&a| g.is_endo(a)).collect();
    for (name, r) in &family {
        let chi = character(r);
        let values: Vec<String> = endo.iter().map(|&a| chi.values[a].to_string()).collect();
        match fmt {
            Format::Text => writeln!(out, "{name:<7} {}", values.join(" "))?,
            Format::Records => record(out, &[&"character", name, &values.join(" ")]),
        }
    }
    for (a, r) in &family {
        for (b, s) in &family {
            let ip = rep_inner_product(r, s)?;
            match fmt {
                Format::Text => writeln!(out, "<{a}, {b}> = {ip}")?,
                Format::Records => record(out, &[&"inner", a, b, &ip]),
            }
        }
    }
    Ok(Outcome::Pass)
}

fn emit_report(report: &VerificationReport, fmt: Format, out: &mut String) {
    match fmt {
        Format::Text => out.push_str(&report.to_string()),
        Format::Records => out.push_str(&report.to_records()),
    }
}

/// One verified instance: the report, or an input error.
type Checked = Result<VerificationReport, String>;

fn check_one(name: &str, g: &str, h: &str, k: &str, base: &Path) -> Checked {
    let run = || -> Result<VerificationReport> {
        let g = load(g, base)?;
        let h = sub(&g, "H", h, base)?;
        let k = sub(&g, "K", k, base)?;
        Ok(verify_instance(name, &h, &k)?)
    };
    run().map_err(|e| format!("{name}: {e:#}"))
}

fn verify_many(checked: Vec<Checked>, fmt: Format, out: &mut String) -> Result<Outcome> {
    let mut total = VerificationReport::default();
    let mut errors = Vec::new();
    for c in checked {
        match c {
            Ok(r) => {
                if fmt == Format::Records {
                    out.push_str(&r.to_records());
                }
                total.extend(r);
            }
            Err(e) => errors.push(e),
        }
    }
    if fmt == Format::Text {
        out.push_str(&total.to_string());
    }
    if !errors.is_empty() {
        bail!("{}", errors.join("\n"));
    }
    Ok(Outcome::from_ok(total.all_ok()))
}

fn run(cli: Cli, out: &mut String) -> Result<Outcome> {
    let fmt = cli.format;
    let base = here();
    match cli.command {
        Command::Build { groupoid } => {
            out.push_str(&serialize_groupoid(&*load(&groupoid, &base)?));
            Ok(Outcome::Pass)
        }
        Command::Validate { groupoid } => validate(&groupoid, fmt, out),
        Command::Info { groupoid } => info(&*load(&groupoid, &base)?, fmt, out),
        Command::Components { groupoid } => components(&load(&groupoid, &base)?, fmt, out),
        Command::Index { groupoid, h } => {
            let g = load(&groupoid, &base)?;
            let h = sub(&g, "H", &h, &base)?;
            index_cmd(&g, &h, fmt, out)
        }
        Command::Cf { gset } => cf(&gset, fmt, out),
        Command::DoubleCosets { groupoid, h, k } => {
            let g = load(&groupoid, &base)?;
            double_cosets_cmd(&sub(&g, "H", &h, &base)?, &sub(&g, "K", &k, &base)?, fmt, out)
        }
        Command::Characters { groupoid, h, k } => {
            let g = load(&groupoid, &base)?;
            let h = sub(&g, "H", &h, &base)?;
            let k = k.map(|k| sub(&g, "K", &k, &base)).transpose()?;
            characters(&g, &h, k.as_ref(), fmt, out)
        }
        Command::Verify {
            groupoid,
            h,
            k,
            corpus,
            random,
            max_objects,
            max_order,
        } => {
            if let Some(path) = corpus {
                let entries = corpus::read_manifest(&path)?;
                let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
                let checked: Vec<Checked> = entries
                    .par_iter()
                    .map(|e| check_one(&e.name, &e.groupoid, &e.h, &e.k, &dir))
                    .collect();
                return verify_many(checked, fmt, out);
            }
            if let Some(count) = random {
                let checked: Vec<Checked> = (cli.seed..cli.seed + count)
                    .into_par_iter()
                    .map(|seed| {
                        let r = gen_random(seed, max_objects, max_order);
                        verify_instance(&format!("seed {seed}"), &r.h, &r.k)
                            .map_err(|e| format!("seed {seed}: {e}"))
                    })
                    .collect();
                return verify_many(checked, fmt, out);
            }
            let groupoid = groupoid.ok_or_else(|| anyhow!("verify needs a groupoid, --corpus or --random"))?;
            let h = h.ok_or_else(|| anyhow!("verify needs --h"))?;
            let k = k.ok_or_else(|| anyhow!("verify needs --k"))?;
            let g = load(&groupoid, &base)?;
            let report = verify_instance(&groupoid, &sub(&g, "H", &h, &base)?, &sub(&g, "K", &k, &base)?)?;
            emit_report(&report, fmt, out);
            Ok(Outcome::from_ok(report.all_ok()))
        }
        Command::Gen {
            max_objects,
            max_order,
            out: dir,
        } => {
            let r = gen_random(cli.seed, max_objects, max_order);
            match fmt {
                Format::Text => writeln!(out, "seed-{}: {}", cli.seed, r.describe())?,
                Format::Records => record(out, &[&cli.seed, &r.describe()]),
            }
            if let Some(dir) = dir {
                std::fs::create_dir_all(&dir)?;
                std::fs::write(dir.join("g.gpd"), serialize_groupoid(&r.groupoid))?;
                std::fs::write(dir.join("h.sub"), serialize_subgroupoid(&r.h, Some("g.gpd")))?;
                std::fs::write(dir.join("k.sub"), serialize_subgroupoid(&r.k, Some("g.gpd")))?;
            }
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    print!("{out}");
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            if let Some(VerifyError::NotWide(which)) = e.downcast_ref::<VerifyError>() {
                eprintln!("usage error: {which} must be a wide subgroupoid");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
