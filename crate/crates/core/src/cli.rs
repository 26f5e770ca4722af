//! Command line surface. Exit codes: 0 success, 1 a verification check
//! failed, 2 usage or input errors, 3 window or resource limits.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::converse::{classify_points_free_monoid, mset_to_etale, points_finite, FreeMonoidProbe};
use crate::corpus::Corpus;
use crate::coset::{build_coset_poset, CosetSpace};
use crate::equivariant::GroupActionOnPoset;
use crate::error::{Error, Result};
use crate::group::{Group, GroupDescriptor, GroupElem, Letter, Perm, SymmetricGroup, Window};
use crate::groupoid::{
    build_action_groupoid, build_groupoid, check_induced_action, check_translations, groupoid_axiom_check,
    groupoid_structure_check, pattern_grid, trivial_congruence_iso,
};
use crate::io::{EtaleFile, GroupoidFile, MSetFile, MonoidFile, PosetFile};
use crate::monoid::{idempotent_classes, validate_mset, QuotientMonoid};
use crate::render::{render_grid, render_hasse, Format, LabelStyle, RenderConfig};
use crate::report::Report;
use crate::sample::{Sampler, DEFAULT_SEED};
use crate::verify::{self, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "alexandrov", version, about = "Monoid actions as étale posets and Alexandrov groupoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Units, idempotents and congruence classes of a monoid spec.
    Monoid {
        #[command(subcommand)]
        command: MonoidCommand,
    },
    /// Builds the coset poset of units\G on a window.
    CosetPoset(CosetArgs),
    /// Equivariant étale posets of M-sets.
    Etale {
        #[command(subcommand)]
        command: EtaleCommand,
    },
    /// Groupoids of a monoid modulo a congruence.
    Groupoid {
        #[command(subcommand)]
        command: GroupoidCommand,
    },
    /// Topos points in the finite and free-monoid cases.
    Points {
        #[command(subcommand)]
        command: PointsCommand,
    },
    /// Runs the invariant suite over a corpus directory.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum MonoidCommand {
    /// Units, idempotents, stability and the nontrivial classes in the core
    Info(MonoidInfoArgs),
}

#[derive(Debug, Subcommand)]
pub enum EtaleCommand {
    /// JSON export with fiber labels and sampled action values.
    Build(EtaleArgs),
    /// Hasse diagram of the total poset.
    Render(EtaleArgs),
}

#[derive(Debug, Subcommand)]
pub enum GroupoidCommand {
    /// JSON export of objects, arrows and both orders.
    Build(GroupoidArgs),
    /// Axiom, structure, translation and induced-action checks.
    Check(GroupoidCheckArgs),
    /// The `size`×`size` grid of related offsets.
    Pattern(PatternArgs),
    /// Compares a trivial-congruence groupoid with its action groupoid.
    Iso(GroupoidArgs),
}

#[derive(Debug, Subcommand)]
pub enum PointsCommand {
    /// Orbits of `↓x` under a permutation group acting on a poset file.
    Finite(PointsFiniteArgs),
    /// Point class of a probe for the free monoid on `rank` letters.
    Free(PointsFreeArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    /// `A..B` box (lattices) or a radius.
    #[arg(long, conflicts_with = "radius")]
    pub window: Option<String>,
    #[arg(long)]
    pub radius: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub depth: u32,
    #[arg(long, default_value_t = 5)]
    pub margin: u32,
}

impl WindowArgs {
    fn window(&self, default_radius: u32) -> Result<Window> {
        let w = match (&self.window, self.radius) {
            (Some(w), _) => Window::parse(w)?,
            (None, Some(r)) => Window::Ball(r),
            (None, None) => Window::Ball(default_radius),
        };
        if let Window::Ball(r) = w {
            check_run_config(r, self.depth, self.margin)?;
        } else if self.depth < 1 || self.margin < 1 {
            return Err(Error::usage("need depth >= 1 and margin >= 1"));
        }
        Ok(w)
    }

    /// Radius of a ball containing the window.
    fn extent(&self, w: Window) -> u32 {
        match w {
            Window::Ball(r) => r,
            Window::Range(lo, hi) => lo.unsigned_abs().max(hi.unsigned_abs()) as u32,
        }
    }
}

fn check_run_config(radius: u32, depth: u32, margin: u32) -> Result<()> {
    if depth < 1 || radius < depth || margin < 1 {
        return Err(Error::usage(format!(
            "need radius >= depth >= 1 and margin >= 1 (got radius {radius}, depth {depth}, margin {margin})"
        )));
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct MonoidInfoArgs {
    #[arg(long)]
    pub monoid: PathBuf,
    /// Core radius of the congruence.
    #[arg(long, default_value_t = 12)]
    pub radius: u32,
    #[arg(long, default_value_t = 5)]
    pub margin: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CosetArgs {
    #[arg(long)]
    pub monoid: PathBuf,
    #[command(flatten)]
    pub window: WindowArgs,
    #[arg(long, default_value = "dot")]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EtaleArgs {
    #[arg(long)]
    pub monoid: PathBuf,
    #[arg(long)]
    pub mset: PathBuf,
    #[command(flatten)]
    pub window: WindowArgs,
    #[arg(long, default_value = "dot")]
    pub format: Format,
    /// fiber, group or both.
    #[arg(long, default_value = "both")]
    pub labels: LabelStyle,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GroupoidArgs {
    #[arg(long)]
    pub monoid: PathBuf,
    #[arg(long, default_value_t = 12)]
    pub radius: u32,
    #[arg(long, default_value_t = 3)]
    pub depth: u32,
    #[arg(long, default_value_t = 5)]
    pub margin: u32,
    #[arg(long, default_value_t = 120)]
    pub budget: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GroupoidCheckArgs {
    #[command(flatten)]
    pub groupoid: GroupoidArgs,
    /// M-sets whose induced actions are checked.
    #[arg(long)]
    pub mset: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    #[arg(long)]
    pub monoid: PathBuf,
    #[arg(long, default_value_t = 11)]
    pub size: usize,
    #[arg(long, default_value_t = 5)]
    pub margin: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PointsFiniteArgs {
    /// Poset file; every node is treated as interior.
    #[arg(long)]
    pub poset: PathBuf,
    /// A generator as the image list of the nodes, e.g. `1 0 2`. Repeatable.
    #[arg(long = "perm")]
    pub perms: Vec<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PointsFreeArgs {
    #[arg(long)]
    pub rank: u32,
    /// A finite positive word such as `x1*x2`.
    #[arg(long, conflicts_with_all = ["prefix", "period"])]
    pub word: Option<String>,
    /// Finite part of a left-infinite word.
    #[arg(long)]
    pub prefix: Option<String>,
    /// Repeating block of a left-infinite word.
    #[arg(long)]
    pub period: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run every module (the default when no `--module` is given).
    #[arg(long)]
    pub all: bool,
    /// Restrict to one module.
    #[arg(long, conflicts_with = "all")]
    pub module: Option<String>,
    #[arg(long, default_value = "specs")]
    pub specs: PathBuf,
    #[arg(long, default_value_t = 12)]
    pub radius: u32,
    #[arg(long, default_value_t = 3)]
    pub depth: u32,
    #[arg(long, default_value_t = 5)]
    pub margin: u32,
    #[arg(long, default_value_t = 120)]
    pub budget: usize,
    #[command(flatten)]
    pub common: Common,
}

/// What a command produced: text for the output and whether every check
/// in it passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn text(text: String) -> Self {
        Outcome { text, ok: true }
    }

    fn report(report: &Report) -> Self {
        Outcome {
            text: report.to_string(),
            ok: report.all_pass(),
        }
    }
}

/// Parses `args` and runs the command; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = match &cli.command {
        Command::Monoid { command: MonoidCommand::Info(a) } => &a.common.out,
        Command::CosetPoset(a) => &a.common.out,
        Command::Etale { command: EtaleCommand::Build(a) | EtaleCommand::Render(a) } => &a.common.out,
        Command::Groupoid { command } => match command {
            GroupoidCommand::Build(a) | GroupoidCommand::Iso(a) => &a.common.out,
            GroupoidCommand::Check(a) => &a.groupoid.common.out,
            GroupoidCommand::Pattern(a) => &a.common.out,
        },
        Command::Points { command } => match command {
            PointsCommand::Finite(a) => &a.common.out,
            PointsCommand::Free(a) => &a.common.out,
        },
        Command::Verify(a) => &a.common.out,
    }
    .clone();
    match dispatch(&cli.command).and_then(|o| emit(&o.text, out.as_deref()).map(|_| o.ok)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn dispatch(command: &Command) -> Result<Outcome> {
    match command {
        Command::Monoid { command: MonoidCommand::Info(a) } => monoid_info(a),
        Command::CosetPoset(a) => coset_poset(a),
        Command::Etale { command } => match command {
            EtaleCommand::Build(a) => etale(a, true),
            EtaleCommand::Render(a) => etale(a, false),
        },
        Command::Groupoid { command } => match command {
            GroupoidCommand::Build(a) => groupoid_build(a),
            GroupoidCommand::Check(a) => groupoid_check(a),
            GroupoidCommand::Pattern(a) => groupoid_pattern(a),
            GroupoidCommand::Iso(a) => groupoid_iso(a),
        },
        Command::Points { command } => match command {
            PointsCommand::Finite(a) => points_finite_cmd(a),
            PointsCommand::Free(a) => points_free_cmd(a),
        },
        Command::Verify(a) => verify_cmd(a),
    }
}

fn join(items: &[GroupElem]) -> String {
    items.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

fn monoid_info(a: &MonoidInfoArgs) -> Result<Outcome> {
    check_run_config(a.radius, 1, a.margin)?;
    let file = MonoidFile::load(&a.monoid)?;
    let m = file.build(a.radius, a.margin)?;
    let cong = m.congruence();
    let mut text = format!("group {}\n", m.descriptor());
    text += &format!("generators {}\n", join(m.spec().generators()));
    text += &format!("units {}\n", join(m.units()));
    let idem = idempotent_classes(&m)?;
    text += &format!("idempotents {}\n", join(&idem.idempotents));
    if !idem.unresolved.is_empty() {
        text += &format!("unresolved {}\n", join(&idem.unresolved));
    }
    text += &format!(
        "congruence core={} margin={} stable={}\n",
        cong.radius(),
        cong.margin(),
        cong.is_stable()
    );
    for class in cong.core_classes(m.spec())? {
        if class.len() > 1 || cong.is_trivial() {
            text += &format!("class {}\n", join(&class));
        }
    }
    Ok(Outcome::text(text))
}

fn coset_poset(a: &CosetArgs) -> Result<Outcome> {
    let window = a.window.window(4)?;
    let spec = MonoidFile::load(&a.monoid)?.spec()?;
    let poset = build_coset_poset(&spec, window, a.window.depth)?;
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&PosetFile::from_poset(poset.poset()))? + "\n",
        format => render_hasse(
            poset.poset(),
            &RenderConfig {
                format,
                ..Default::default()
            },
        ),
    };
    Ok(Outcome::text(text))
}

fn etale(a: &EtaleArgs, build: bool) -> Result<Outcome> {
    let window = a.window.window(4)?;
    let file = MonoidFile::load(&a.monoid)?;
    let m = file.build(2 * a.window.extent(window).max(6), a.window.margin)?;
    let set = MSetFile::load(&a.mset)?.to_mset(m.descriptor())?;
    let e = mset_to_etale(&m, &set, window, a.window.depth)?;
    let text = if build || a.format == Format::Json {
        serde_json::to_string_pretty(&EtaleFile::from_etale(&e)?)? + "\n"
    } else {
        render_hasse(
            e.total(),
            &RenderConfig {
                format: a.format,
                labels: a.labels,
                rank_hints: true,
            },
        )
    };
    Ok(Outcome::text(text))
}

fn load_groupoid_monoid(a: &GroupoidArgs) -> Result<QuotientMonoid> {
    check_run_config(a.radius, a.depth, a.margin)?;
    MonoidFile::load(&a.monoid)?.build(2 * a.radius, a.margin)
}

fn sampler(a: &GroupoidArgs) -> Sampler {
    Sampler::new(a.common.seed, a.budget, 4)
}

fn groupoid_build(a: &GroupoidArgs) -> Result<Outcome> {
    let m = load_groupoid_monoid(a)?;
    let g = build_groupoid(&m, a.radius, a.depth, &mut sampler(a))?;
    let file = GroupoidFile::from_groupoid(&g, &mut sampler(a))?;
    Ok(Outcome::text(serde_json::to_string_pretty(&file)? + "\n"))
}

fn groupoid_check(a: &GroupoidCheckArgs) -> Result<Outcome> {
    let ga = &a.groupoid;
    let m = load_groupoid_monoid(ga)?;
    let g = build_groupoid(&m, ga.radius, ga.depth, &mut sampler(ga))?;
    let mut report = groupoid_axiom_check(&g, &mut sampler(ga))?;
    report.extend(groupoid_structure_check(&g, &mut sampler(ga))?);
    let small_r = if m.descriptor().is_free() { ga.radius.min(3) } else { ga.radius.min(5) };
    let small = build_groupoid(&m, small_r, 1, &mut Sampler::exhaustive())?;
    report.extend(check_translations(&small, 6, &mut sampler(ga))?);
    for path in &a.mset {
        let set = MSetFile::load(path)?.to_mset(m.descriptor())?;
        let label = path.file_stem().and_then(|s| s.to_str()).unwrap_or("mset");
        report.extend(check_induced_action(&g, &set, label, &mut sampler(ga))?);
        let valid = validate_mset(&m, &set)?.is_empty();
        report.pass(&format!("mset.valid.{label}"), "monoid_core", &[("valid", valid.to_string())]);
    }
    Ok(Outcome::report(&report))
}

fn groupoid_pattern(a: &PatternArgs) -> Result<Outcome> {
    if a.size == 0 || a.margin < 1 {
        return Err(Error::usage("need size >= 1 and margin >= 1"));
    }
    let m = MonoidFile::load(&a.monoid)?.build(2 * a.size as u32 + 2, a.margin)?;
    Ok(Outcome::text(render_grid(&pattern_grid(&m, a.size)?) + "\n"))
}

fn groupoid_iso(a: &GroupoidArgs) -> Result<Outcome> {
    let m = load_groupoid_monoid(a)?;
    if !m.congruence().is_trivial() {
        return Err(Error::usage("the isomorphism needs a monoid without congruence pairs"));
    }
    let g = build_groupoid(&m, a.radius, a.depth, &mut sampler(a))?;
    let space = CosetSpace::for_monoid(&m, Window::Ball(a.radius), a.depth)?;
    let action = build_action_groupoid(&space, &mut sampler(a))?;
    Ok(Outcome::report(&trivial_congruence_iso(&g, &action, &mut sampler(a))?))
}

fn parse_perm(text: &str, n: usize) -> Result<Perm> {
    let images: Vec<usize> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::usage(format!("bad permutation `{text}`"))))
        .collect::<Result<_>>()?;
    let mut seen = vec![false; n];
    if images.len() != n || images.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
        return Err(Error::usage(format!("`{text}` is not a permutation of {n} nodes")));
    }
    Ok(Perm(images))
}

/// The subgroup of `Sym(n)` generated by `gens`.
fn generated_perms(group: &SymmetricGroup, gens: &[Perm]) -> Vec<Perm> {
    let mut all = std::collections::BTreeSet::from([group.identity()]);
    let mut frontier = vec![group.identity()];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = group.compose(&p, g);
            if all.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    all.into_iter().collect()
}

fn points_finite_cmd(a: &PointsFiniteArgs) -> Result<Outcome> {
    let poset = PosetFile::load(&a.poset)?.to_poset()?;
    let n = poset.len();
    let poset = poset.with_interior(vec![true; n]);
    let group = SymmetricGroup { degree: n };
    let gens = a.perms.iter().map(|p| parse_perm(p, n)).collect::<Result<Vec<_>>>()?;
    for g in &gens {
        if (0..n).any(|x| (0..n).any(|y| poset.leq(x, y) != poset.leq(g.apply(x), g.apply(y)))) {
            return Err(Error::usage(format!("{g} is not an order automorphism")));
        }
    }
    let elements = generated_perms(&group, &gens);
    let action = GroupActionOnPoset::new(group, poset, elements, |x, g: &Perm| Some(g.apply(x)))?;
    let reps = points_finite(&action)?;
    let mut text = format!("points {}\n", reps.len());
    for x in reps {
        text += &format!("orbit {}\n", action.poset().name(x));
    }
    Ok(Outcome::text(text))
}

fn parse_positive_word(rank: u32, text: &str) -> Result<Vec<Letter>> {
    if text.trim().is_empty() || text.trim() == "1" {
        return Ok(Vec::new());
    }
    let desc = GroupDescriptor::free(rank)?;
    let g = GroupElem::parse(desc, text)?;
    Ok(g.letters().unwrap_or_default().to_vec())
}

fn points_free_cmd(a: &PointsFreeArgs) -> Result<Outcome> {
    let probe = match (&a.word, &a.period) {
        (Some(w), _) => FreeMonoidProbe::Finite(parse_positive_word(a.rank, w)?),
        (None, Some(p)) => FreeMonoidProbe::Infinite {
            prefix: parse_positive_word(a.rank, a.prefix.as_deref().unwrap_or(""))?,
            period: parse_positive_word(a.rank, p)?,
        },
        (None, None) => return Err(Error::usage("give --word or --period")),
    };
    Ok(Outcome::text(format!("{}\n", classify_points_free_monoid(a.rank, &probe)?)))
}

const MODULES: [&str; 8] = [
    "ambient_group",
    "monoid_core",
    "poset_core",
    "equivariant",
    "converse",
    "alex_groupoid",
    "render",
    "cli",
];

fn verify_cmd(a: &VerifyArgs) -> Result<Outcome> {
    check_run_config(a.radius, a.depth, a.margin)?;
    let corpus = Corpus::load(&a.specs)?;
    let cfg = VerifyConfig {
        radius: a.radius,
        depth: a.depth,
        margin: a.margin,
        seed: a.common.seed,
        budget: a.budget,
        ..VerifyConfig::default()
    };
    let report = match a.module.as_deref() {
        None => verify::verify_all(&corpus, &cfg)?,
        Some(module) => {
            let report = match module {
                "ambient_group" => verify::verify_group(&cfg)?,
                "monoid_core" => verify::verify_monoid(&corpus, &cfg)?,
                "poset_core" => verify::verify_poset(&corpus, &cfg)?,
                "equivariant" => verify::verify_equivariant(&corpus, &cfg)?,
                "converse" => {
                    let mut r = verify::verify_converse(&corpus, &cfg)?;
                    r.extend(verify::verify_points(&cfg)?);
                    r
                }
                "alex_groupoid" => verify::verify_groupoid(&corpus, &cfg)?,
                "render" => verify::verify_render(&corpus, &cfg)?,
                "cli" => verify::verify_cli(&corpus, &cfg)?,
                other => {
                    return Err(Error::usage(format!("unknown module `{other}` (one of {})", MODULES.join(", "))))
                }
            };
            report
        }
    };
    let mut outcome = Outcome::report(&report);
    let failed = report.failures().count();
    outcome.text += &format!("# {} checks, {} failed\n", report.lines().len(), failed);
    Ok(outcome)
}
