//! The `slicekit` command line.

mod chart;

pub use chart::render_chart;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::group::{GroupError, GroupSpec, Perm, SubgroupLattice, DEFAULT_ELEMENT_CAP};
use crate::mackey::{check_mackey_axioms, mackey_to_json, MackeyError, MackeyFunctor, MackeySpec};
use crate::slice::{
    connective_generators, em_tower_minus, em_tower_plus, geometric_fixed_points_cell,
    irregular_tower_from_regular, negative_generators, pullback_degree, slice_cells, EmTower,
    QuotientMap, SliceError, TowerJson,
};

/// Environment variable overriding the group closure cap.
pub const ELEMENT_CAP_VAR: &str = "SLICEKIT_ELEMENT_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "slicekit",
    version,
    about = "Slice towers of Eilenberg-MacLane spectra over finite groups"
)]
pub struct RunConfig {
    /// Group: a preset name (trivial, C2, C3, C4, V4, S3, D8, Q8), a JSON
    /// document, or a path to one.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Mackey functor: a preset name (burnside, constant-Z, constant-Z/<n>,
    /// sign, regular, permutation), a JSON document, or a path to one.
    #[arg(long, global = true)]
    pub mackey: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stages and slices of the slice tower of Σ^{±1} H M.
    #[command(allow_negative_numbers = true)]
    Tower(TowerArgs),
    /// Slices of the slice tower of Σ^{±1} H M.
    #[command(allow_negative_numbers = true)]
    Slices(TowerArgs),
    /// Slice cells of a given dimension.
    #[command(allow_negative_numbers = true)]
    Cells {
        #[arg(long)]
        dim: i64,
        /// Only regular cells.
        #[arg(long)]
        regular: bool,
    },
    /// Sphere generators of the localizing subcategory of degree −n.
    Generators {
        #[arg(long)]
        n: i64,
        /// The generators of degree 1 instead.
        #[arg(long)]
        connective: bool,
        /// Highest degree listed for the infinite part.
        #[arg(long, default_value_t = 2)]
        max_degree: i64,
    },
    /// Geometric fixed points for a normal subgroup.
    #[command(allow_negative_numbers = true)]
    Phi {
        /// Subgroup id, or a JSON list of generating permutations.
        #[arg(long)]
        normal: String,
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Check the Mackey functor axioms.
    CheckAxioms,
    /// Draw the tower as an SVG chart.
    #[command(allow_negative_numbers = true)]
    Chart(TowerArgs),
    /// List the subgroups of the group.
    Lattice,
    /// Write the Mackey functor as a JSON document.
    Export,
}

#[derive(Debug, clap::Args)]
pub struct TowerArgs {
    /// Suspension degree, +1 or -1.
    #[arg(long, default_value = "1", value_parser = parse_shift)]
    pub shift: i32,
    /// The irregular tower of H M (requires shift +1).
    #[arg(long)]
    pub irregular: bool,
}

fn parse_shift(s: &str) -> Result<i32, String> {
    match s.trim() {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(format!("shift must be +1 or -1, got `{other}`")),
    }
}

/// A failure with its exit code: 2 for unreadable input, 1 for input that
/// parses but violates a precondition.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::UnknownPreset(_)
            | GroupError::NotABijection(_)
            | GroupError::DegreeMismatch { .. }
            | GroupError::ZeroDegree => CliError::parse(e.to_string()),
            _ => CliError::domain(e.to_string()),
        }
    }
}

impl From<MackeyError> for CliError {
    fn from(e: MackeyError) -> Self {
        match e {
            MackeyError::Group(g) => g.into(),
            MackeyError::Parse(_) | MackeyError::UnknownPreset(_) | MackeyError::MissingMap(_) => {
                CliError::parse(e.to_string())
            }
            _ => CliError::domain(e.to_string()),
        }
    }
}

impl From<SliceError> for CliError {
    fn from(e: SliceError) -> Self {
        match e {
            SliceError::Mackey(m) => m.into(),
            SliceError::Group(g) => g.into(),
            _ => CliError::domain(e.to_string()),
        }
    }
}

/// Input given inline, or the contents of the file it names.
fn read_input(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') || trimmed.starts_with('"') {
        return Ok(arg.to_string());
    }
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map_err(|e| CliError::parse(format!("cannot read {arg}: {e}")));
    }
    Ok(arg.to_string())
}

fn element_cap() -> Result<usize, CliError> {
    match std::env::var(ELEMENT_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::parse(format!("{ELEMENT_CAP_VAR} must be a positive integer"))),
        Err(_) => Ok(DEFAULT_ELEMENT_CAP),
    }
}

fn parse_group(arg: &str, cap: usize) -> Result<Arc<SubgroupLattice>, CliError> {
    let text = read_input(arg)?;
    let trimmed = text.trim();
    let spec = if trimmed.starts_with('{') || trimmed.starts_with('"') {
        serde_json::from_str::<GroupSpec>(trimmed)
            .map_err(|e| CliError::parse(format!("malformed group: {e}")))?
    } else {
        GroupSpec::Preset(trimmed.to_string())
    };
    Ok(Arc::new(SubgroupLattice::new(spec.build_with_cap(cap)?)))
}

/// Validated inputs for one invocation.
pub struct Inputs {
    pub lattice: Option<Arc<SubgroupLattice>>,
    pub mackey: Option<(MackeyFunctor, Value)>,
}

/// Builds the group and functor named on the command line. Functors given
/// as explicit documents must pass the axiom check unless `check_only`.
pub fn parse_inputs(config: &RunConfig, check_only: bool) -> Result<Inputs, CliError> {
    let cap = element_cap()?;
    let mut lattice = match &config.group {
        Some(g) => Some(parse_group(g, cap)?),
        None => None,
    };
    let mackey = match &config.mackey {
        None => None,
        Some(arg) => {
            let text = read_input(arg)?;
            let spec = MackeySpec::parse(&text)?;
            if lattice.is_none() && spec.group().is_none() {
                return Err(CliError::parse("a group is required (--group)"));
            }
            let m = spec.build(lattice.as_ref(), cap)?;
            if spec.is_explicit() && !check_only {
                let report = check_mackey_axioms(&m);
                if !report.passed() {
                    return Err(CliError::domain(format!(
                        "the supplied Mackey functor fails the axioms: {report}"
                    )));
                }
            }
            let reference = match &spec {
                MackeySpec::Name(name) => Value::String(name.clone()),
                _ => serde_json::from_str(text.trim()).expect("parsed above"),
            };
            lattice.get_or_insert_with(|| m.lattice().clone());
            Some((m, reference))
        }
    };
    Ok(Inputs { lattice, mackey })
}

fn need_lattice(inputs: &Inputs) -> Result<&Arc<SubgroupLattice>, CliError> {
    inputs
        .lattice
        .as_ref()
        .ok_or_else(|| CliError::parse("a group is required (--group)"))
}

fn need_mackey(inputs: &Inputs) -> Result<&(MackeyFunctor, Value), CliError> {
    inputs
        .mackey
        .as_ref()
        .ok_or_else(|| CliError::parse("a Mackey functor is required (--mackey)"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn build_tower(m: &MackeyFunctor, args: &TowerArgs) -> Result<EmTower, CliError> {
    let tower = match (args.shift, args.irregular) {
        (1, false) => em_tower_plus(m)?,
        (1, true) => irregular_tower_from_regular(&em_tower_plus(m)?)?,
        (-1, false) => em_tower_minus(m)?,
        _ => {
            return Err(CliError::domain(
                "the irregular tower is only available for shift +1",
            ))
        }
    };
    Ok(tower)
}

fn describe_tower(t: &EmTower) -> String {
    match t.shift() {
        0 => "irregular slice tower of H M".to_string(),
        1 => "regular slice tower of Σ H M".to_string(),
        _ => "regular slice tower of Σ^-1 H M".to_string(),
    }
}

fn lattice_legend(l: &SubgroupLattice) -> String {
    let reps: Vec<String> = l
        .class_reps()
        .into_iter()
        .map(|h| format!("H{h} (order {})", l.order(h)))
        .collect();
    format!("subgroup classes: {}\n", reps.join(", "))
}

fn tower_text(t: &EmTower, with_stages: bool) -> String {
    let l = t.base().lattice();
    let reps = l.class_reps();
    let mut out = format!(
        "{} over a group of order {}\n",
        describe_tower(t),
        l.group().order()
    );
    out.push_str(&lattice_legend(l));
    if with_stages {
        let _ = writeln!(
            out,
            "stages: whole functor below degree {}, zero from degree {}",
            t.lowest(),
            t.zero_from()
        );
        for d in t.lowest()..t.zero_from() {
            let stage = t.stage(d);
            let levels: Vec<String> = reps
                .iter()
                .map(|&h| format!("H{h}: {}", stage.level(h).group()))
                .collect();
            let _ = writeln!(out, "stage {d}: {}", levels.join("  "));
        }
    }
    if t.slices().is_empty() {
        out.push_str("no nonzero slices\n");
    }
    for (d, levels) in t.summary() {
        let levels: Vec<String> = levels
            .iter()
            .map(|(h, inv)| format!("H{h}: {inv}"))
            .collect();
        let _ = writeln!(out, "slice {d}: {}", levels.join("  "));
    }
    out
}

fn parse_normal(l: &SubgroupLattice, spec: &str) -> Result<usize, CliError> {
    if let Ok(id) = spec.trim().parse::<usize>() {
        return if id < l.len() {
            Ok(id)
        } else {
            Err(CliError::domain(format!("no subgroup with id {id}")))
        };
    }
    let text = read_input(spec)?;
    let images: Vec<Vec<usize>> = serde_json::from_str(text.trim())
        .map_err(|e| CliError::parse(format!("malformed subgroup: {e}")))?;
    let perms = images
        .into_iter()
        .map(Perm::new)
        .collect::<Result<Vec<_>, _>>()?;
    let sub = l.group().subgroup_from_perms(&perms)?;
    Ok(l.index_of(&sub).expect("every subgroup is listed"))
}

#[derive(Serialize)]
struct PhiReport {
    normal: usize,
    normal_order: usize,
    quotient_order: usize,
    family: Vec<usize>,
    complement: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pullback_degree: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    cells: Vec<PhiCell>,
}

#[derive(Serialize)]
struct PhiCell {
    cell: crate::slice::SliceCell,
    image: Option<crate::slice::SliceCell>,
}

fn phi(
    l: &Arc<SubgroupLattice>,
    normal: usize,
    degree: Option<i64>,
) -> Result<PhiReport, CliError> {
    let q = QuotientMap::new(l, normal)?;
    let split = l.family_not_containing(normal);
    let mut report = PhiReport {
        normal,
        normal_order: q.normal_order(),
        quotient_order: q.target().group().order(),
        family: split.family,
        complement: split.complement,
        degree,
        pullback_degree: None,
        cells: Vec::new(),
    };
    if let Some(m) = degree {
        if q.normal_order() > 1 {
            report.pullback_degree = Some(pullback_degree(m, q.normal_order())?);
        } else {
            report.pullback_degree = Some(m);
        }
        for cell in slice_cells(l, m, true) {
            let image = geometric_fixed_points_cell(&cell, &q)?;
            report.cells.push(PhiCell { cell, image });
        }
    }
    Ok(report)
}

fn phi_text(r: &PhiReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "N = H{} (order {}), G/N of order {}",
        r.normal, r.normal_order, r.quotient_order
    );
    let ids = |v: &[usize]| {
        v.iter()
            .map(|h| format!("H{h}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "subgroups not containing N: {}", ids(&r.family));
    let _ = writeln!(out, "subgroups containing N: {}", ids(&r.complement));
    if let (Some(m), Some(p)) = (r.degree, r.pullback_degree) {
        let _ = writeln!(out, "degree {m} over G corresponds to degree {p} over G/N");
        for c in &r.cells {
            match &c.image {
                Some(image) => {
                    let _ = writeln!(out, "Phi^N {} = {} over G/N", c.cell, image);
                }
                None => {
                    let _ = writeln!(out, "Phi^N {} = 0", c.cell);
                }
            }
        }
    }
    out
}

enum Output {
    Text(String),
    Svg(String),
}

fn execute(config: &RunConfig) -> Result<Output, CliError> {
    let svg_ok = matches!(
        config.command,
        Command::Tower(_) | Command::Slices(_) | Command::Chart(_)
    );
    if config.format == Format::Svg && !svg_ok {
        return Err(CliError::parse(
            "--format svg is only valid for tower, slices and chart",
        ));
    }
    let check_only = matches!(config.command, Command::CheckAxioms);
    let inputs = parse_inputs(config, check_only)?;
    let json = config.format == Format::Json;

    match &config.command {
        Command::Tower(args) | Command::Slices(args) | Command::Chart(args) => {
            let (m, reference) = need_mackey(&inputs)?;
            let tower = build_tower(m, args)?;
            let chart = matches!(config.command, Command::Chart(_)) || config.format == Format::Svg;
            if chart {
                let name = match reference {
                    Value::String(s) => s.clone(),
                    _ => "supplied functor".to_string(),
                };
                let title = format!("{} for {name}", describe_tower(&tower));
                return Ok(Output::Svg(render_chart(&tower, &title)));
            }
            if json {
                return Ok(Output::Text(to_json(&TowerJson::new(
                    &tower,
                    reference.clone(),
                ))));
            }
            let stages = matches!(config.command, Command::Tower(_));
            Ok(Output::Text(tower_text(&tower, stages)))
        }
        Command::Cells { dim, regular } => {
            let l = need_lattice(&inputs)?;
            let cells = slice_cells(l, *dim, *regular);
            if json {
                return Ok(Output::Text(to_json(&cells)));
            }
            let mut out = lattice_legend(l);
            for c in &cells {
                let _ = writeln!(out, "{c}");
            }
            Ok(Output::Text(out))
        }
        Command::Generators {
            n,
            connective,
            max_degree,
        } => {
            let l = need_lattice(&inputs)?;
            let gens = if *connective {
                connective_generators(l)
            } else {
                negative_generators(l, *n)?
            };
            let listed = gens.nonnegative_up_to(*max_degree);
            if json {
                #[derive(Serialize)]
                struct Report<'a> {
                    rule: String,
                    min_degree: i64,
                    negative: &'a [crate::slice::SphereGenerator],
                    listed: &'a [crate::slice::SphereGenerator],
                }
                return Ok(Output::Text(to_json(&Report {
                    rule: gens.rule(),
                    min_degree: gens.min_degree,
                    negative: &gens.negative,
                    listed: &listed,
                })));
            }
            let mut out = lattice_legend(l);
            let _ = writeln!(out, "{}", gens.rule());
            for g in &listed {
                let _ = writeln!(out, "G/H{}+ ^ S^{}", g.subgroup, g.degree);
            }
            if !listed.is_empty() {
                let _ = writeln!(out, "... (continues in every higher degree)");
            }
            if gens.negative.is_empty() {
                let _ = writeln!(out, "no negative spheres");
            } else {
                let _ = writeln!(out, "negative spheres:");
            }
            for g in &gens.negative {
                let _ = writeln!(out, "G/H{}+ ^ S^{}", g.subgroup, g.degree);
            }
            Ok(Output::Text(out))
        }
        Command::Phi { normal, degree } => {
            let l = need_lattice(&inputs)?;
            let id = parse_normal(l, normal)?;
            let report = phi(l, id, *degree)?;
            if json {
                return Ok(Output::Text(to_json(&report)));
            }
            Ok(Output::Text(phi_text(&report)))
        }
        Command::CheckAxioms => {
            let (m, _) = need_mackey(&inputs)?;
            let report = check_mackey_axioms(m);
            if report.passed() {
                Ok(Output::Text("PASS\n".into()))
            } else {
                Err(CliError::domain(report.to_string()))
            }
        }
        Command::Lattice => {
            let l = need_lattice(&inputs)?;
            if json {
                #[derive(Serialize)]
                struct Entry {
                    id: usize,
                    order: usize,
                    elements: Vec<usize>,
                    class_rep: usize,
                    normal: bool,
                }
                let entries: Vec<Entry> = (0..l.len())
                    .map(|h| Entry {
                        id: h,
                        order: l.order(h),
                        elements: l.subgroup(h).elements().to_vec(),
                        class_rep: l.class_rep(h),
                        normal: l.is_normal(h),
                    })
                    .collect();
                return Ok(Output::Text(to_json(&entries)));
            }
            let mut out = format!(
                "group of order {}, {} subgroups\n",
                l.group().order(),
                l.len()
            );
            for h in 0..l.len() {
                let gens: Vec<String> = l
                    .group()
                    .small_generating_set(l.subgroup(h))
                    .into_iter()
                    .map(|g| l.group().element(g).to_string())
                    .collect();
                let _ = writeln!(
                    out,
                    "H{h}: order {}, class of H{}{}, generated by [{}]",
                    l.order(h),
                    l.class_rep(h),
                    if l.is_normal(h) { ", normal" } else { "" },
                    gens.join(", ")
                );
            }
            Ok(Output::Text(out))
        }
        Command::Export => {
            let (m, _) = need_mackey(&inputs)?;
            Ok(Output::Text(to_json(&mackey_to_json(m))))
        }
    }
}

/// Runs one invocation, writing results to `stdout` (or `--out`) and
/// messages to `stderr`. Returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = execute(&config).and_then(|output| {
        let body = match output {
            Output::Text(s) | Output::Svg(s) => s,
        };
        match &config.out {
            Some(path) => std::fs::write(path, body)
                .map_err(|e| CliError::domain(format!("cannot write {}: {e}", path.display()))),
            None => stdout
                .write_all(body.as_bytes())
                .map_err(|e| CliError::domain(format!("cannot write output: {e}"))),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message.trim_end());
            e.code
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
