//! Command-line front end. Every command renders to a string and an exit
//! code so that output can be compared byte for byte in tests.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or input error,
//! 3 resource limit or skipped check. `refute` uses 0 for a verified
//! `PumpedNonGeodesic`, 4 for `UncoveredElement` and 5 for
//! `NonGeodesicAccepted`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{
    bounded_language_audit, corpus, pump_refute, verify_witness, AuditOutcome, Dfa, PumpOptions,
    RefutationWitness, Verdict,
};
use crate::embed::{check_totally_geodesic, refute_on_subgroup, EmbeddingMap};
use crate::error::{Error, Result};
use crate::geodesy::{
    closed_form_length_h, enumerate_ball, epsilon_audit, family_a_element, family_b_element,
    formula_grid, verify_star_characterization, BallOptions, Family, GridBounds, LengthTable,
};
use crate::group::VAGroup;
use crate::presentation::VAPresentation;
use crate::presets;
use crate::report::{CheckReport, Status};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_UNCOVERED: i32 = 4;
pub const EXIT_NON_GEODESIC: i32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSelector {
    H,
    G,
    File(PathBuf),
}

impl GroupSelector {
    pub fn parse(s: &str) -> Self {
        match s {
            "H" | "h" => GroupSelector::H,
            "G" | "g" => GroupSelector::G,
            path => GroupSelector::File(PathBuf::from(path)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupSelector::H => "H".into(),
            GroupSelector::G => "G".into(),
            GroupSelector::File(p) => p.display().to_string(),
        }
    }

    pub fn load(&self) -> Result<VAGroup> {
        match self {
            GroupSelector::H => Ok(presets::h().clone()),
            GroupSelector::G => Ok(presets::g().clone()),
            GroupSelector::File(p) => {
                let text = read(p)?;
                let pres = VAPresentation::parse(&text).map_err(|e| in_file(p, e))?;
                VAGroup::compile(&pres)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Summary,
}

/// Settings shared by all commands; read from `key = value` lines and then
/// overridden by flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub group: GroupSelector,
    pub radius: Option<u32>,
    pub max_elements: usize,
    pub max_geodesics: usize,
    pub max_audit_words: usize,
    pub format: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: GroupSelector::H,
            radius: None,
            max_elements: 50_000_000,
            max_geodesics: 1_000_000,
            max_audit_words: 5_000_000,
            format: OutputFormat::Text,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| Error::Parse {
                line: line_no,
                message: m,
            };
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("expected `key = value`, got {line:?}")))?;
            let num = |v: &str| -> Result<u64> {
                v.parse()
                    .map_err(|_| err(format!("{key}: expected a non-negative integer, got {v:?}")))
            };
            match key {
                "group" => cfg.group = GroupSelector::parse(value),
                "radius" => cfg.radius = Some(num(value)? as u32),
                "max_elements" => cfg.max_elements = num(value)? as usize,
                "max_geodesics" => cfg.max_geodesics = num(value)? as usize,
                "max_audit_words" => cfg.max_audit_words = num(value)? as usize,
                "seed" => cfg.seed = num(value)?,
                "format" => {
                    cfg.format = OutputFormat::from_str(value, true)
                        .map_err(|_| err(format!("unknown format {value:?}")))?
                }
                _ => return Err(err(format!("unknown key {key:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_elements == 0 || self.max_geodesics == 0 || self.max_audit_words == 0 {
            return Err(Error::Domain("caps must be positive".into()));
        }
        Ok(())
    }

    fn ball_options(&self) -> BallOptions {
        BallOptions {
            max_elements: self.max_elements,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "geonf", version, about = "Geodesics and regular languages in two virtually abelian groups")]
pub struct Cli {
    /// `H`, `G`, or a group spec file.
    #[arg(long, global = true)]
    pub group: Option<String>,
    #[arg(long, global = true)]
    pub radius: Option<u32>,
    #[arg(long, global = true)]
    pub max_elements: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// File of `key = value` settings applied before the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    A,
    B,
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct FamilyParams {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long, default_value_t = 0)]
    pub a: u32,
    #[arg(long, default_value_t = 0)]
    pub b: u32,
    #[arg(long, default_value_t = 0)]
    pub c: u32,
    #[arg(long, default_value_t = 0)]
    pub d: u32,
    #[arg(long, default_value_t = 0)]
    pub e: u32,
    #[arg(long, default_value_t = 0)]
    pub f: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a group and print its lattice data and invariant checks.
    Compile,
    /// Enumerate a ball and print its size (and elements with --list).
    Ball {
        #[arg(long)]
        list: bool,
    },
    /// Length of a word's element, or of a family A/B element.
    Length {
        #[arg(long)]
        word: Option<String>,
        #[command(flatten)]
        family: FamilyParams,
    },
    /// All geodesic words for a word's element.
    Geodesics {
        #[arg(long)]
        word: String,
    },
    /// Sphere sizes up to the radius.
    Growth,
    /// Run the full grid of checks.
    Verify {
        /// Radius of the H-side part of the embedding check.
        #[arg(long, default_value_t = 5)]
        embed_radius: u32,
        /// Run the embedding check at radius 6.
        #[arg(long)]
        stretch: bool,
    },
    /// Refute a candidate DFA and verify the witness.
    Refute {
        #[arg(long)]
        dfa: PathBuf,
        /// Radius of G's own ball used to verify G witnesses.
        #[arg(long, default_value_t = 10)]
        verify_radius: u32,
    },
    /// Bounded check that a DFA is a geodesic language covering the ball.
    Audit {
        #[arg(long)]
        dfa: PathBuf,
    },
    /// Check the embedding H -> G (τ = s²) is isometric and totally geodesic.
    CheckEmbedding {
        #[arg(long)]
        stretch: bool,
    },
    /// Write seeded random DFAs over the group's alphabet.
    RandomDfa {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_states: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Rendered output of a command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn new(output: String, code: i32) -> Self {
        Outcome { output, code }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) | Error::OutOfRadius { .. } => EXIT_RESOURCE,
        Error::TheoremViolation(_) | Error::Overflow => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Io {
        path: p.display().to_string(),
        message: e.to_string(),
    })
}

fn in_file(p: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", p.display()),
        },
        other => other,
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return Outcome::new(e.to_string(), code);
        }
    };
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => Outcome::new(format!("error: {e}\n"), exit_code(&e)),
    }
}

pub fn config_from(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::parse(&read(p)?).map_err(|e| in_file(p, e))?,
        None => RunConfig::default(),
    };
    if let Some(g) = &cli.group {
        cfg.group = GroupSelector::parse(g);
    }
    if let Some(r) = cli.radius {
        cfg.radius = Some(r);
    }
    if let Some(m) = cli.max_elements {
        cfg.max_elements = m;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    let cfg = config_from(&cli)?;
    match cli.command {
        Command::Compile => cmd_compile(&cfg),
        Command::Ball { list } => cmd_ball(&cfg, list),
        Command::Length { word, family } => cmd_length(&cfg, word.as_deref(), &family),
        Command::Geodesics { word } => cmd_geodesics(&cfg, &word),
        Command::Growth => cmd_growth(&cfg),
        Command::Verify {
            embed_radius,
            stretch,
        } => Ok(cmd_verify(&cfg, if stretch { 6 } else { embed_radius })),
        Command::Refute { dfa, verify_radius } => cmd_refute(&cfg, &dfa, verify_radius),
        Command::Audit { dfa } => cmd_audit(&cfg, &dfa),
        Command::CheckEmbedding { stretch } => {
            let r = cfg.radius.unwrap_or(if stretch { 6 } else { 5 });
            cmd_check_embedding(&cfg, r)
        }
        Command::RandomDfa {
            count,
            max_states,
            out,
        } => cmd_random_dfa(&cfg, count, max_states, &out),
    }
}

/// Invariant checks of a compiled group as a report.
pub fn compile_report(name: &str, group: &VAGroup) -> CheckReport {
    let mut r = CheckReport::new(format!("compile-{name}"));
    let q = group.quotient().order();
    r.checked = q * q + group.relations().len() + group.letters().len();
    for f in group.invariant_failures() {
        r.violation(f);
    }
    r.note(format!("rank {}", group.rank()));
    r
}

pub fn cmd_compile(cfg: &RunConfig) -> Result<Outcome> {
    let group = cfg.group.load()?;
    let label = cfg.group.label();
    let q = group.quotient();
    let mut out = String::new();
    writeln!(out, "group {label}").unwrap();
    writeln!(out, "quotient order {}: {}", q.order(), q.names().join(" ")).unwrap();
    writeln!(out, "rank {}", group.rank()).unwrap();
    writeln!(out, "basis: {}", group.basis_description()).unwrap();
    writeln!(
        out,
        "relations: {} in the orbit, {} dependencies",
        group.relations().len(),
        group.relation_dependencies().len()
    )
    .unwrap();
    for a in 0..q.order() {
        if a == q.identity() {
            continue;
        }
        writeln!(out, "action {}:", q.name(a)).unwrap();
        write!(out, "{}", group.action_matrix(a)).unwrap();
    }
    let syms: Vec<String> = group
        .letters()
        .iter()
        .map(|l| format!("{}(w={})", l.symbol, l.weight))
        .collect();
    writeln!(out, "alphabet: {}", syms.join(" ")).unwrap();
    let report = compile_report(&label, &group);
    let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
    match cfg.format {
        OutputFormat::Text => write!(out, "{report}").unwrap(),
        OutputFormat::Summary => {
            out = report.summary_line() + "\n";
        }
    }
    Ok(Outcome::new(out, code))
}

fn radius_or(cfg: &RunConfig, default: u32) -> u32 {
    cfg.radius.unwrap_or(default)
}

pub fn cmd_ball(cfg: &RunConfig, list: bool) -> Result<Outcome> {
    let group = cfg.group.load()?;
    let r = radius_or(cfg, 4);
    let t = enumerate_ball(&group, r, cfg.ball_options())?;
    let mut out = format!("radius {r}: {} elements\n", t.len());
    if list {
        for (g, len) in t.sorted_entries() {
            writeln!(out, "{len} {g}").unwrap();
        }
    }
    Ok(Outcome::new(out, EXIT_PASS))
}

pub fn cmd_length(cfg: &RunConfig, word: Option<&str>, fam: &FamilyParams) -> Result<Outcome> {
    let group = cfg.group.load()?;
    let (element, bound, predicted) = match (word, fam.family) {
        (Some(w), None) => {
            let (g, weight) = group.evaluate_str(w)?;
            (g, weight, None)
        }
        (None, Some(kind)) => {
            if !matches!(cfg.group, GroupSelector::H) {
                return Err(Error::Domain("families are defined in H".into()));
            }
            let (family, g) = match kind {
                FamilyArg::A => (
                    Family::A {
                        a: fam.a,
                        b: fam.b,
                        c: fam.c,
                    },
                    family_a_element(&group, fam.a, fam.b, fam.c)?,
                ),
                FamilyArg::B => (
                    Family::B {
                        d: fam.d,
                        e: fam.e,
                        f: fam.f,
                    },
                    family_b_element(&group, fam.d, fam.e, fam.f)?,
                ),
            };
            let p = closed_form_length_h(family)?;
            (g, p, Some(p))
        }
        _ => return Err(Error::Domain("give exactly one of --word or --family".into())),
    };
    let r = radius_or(cfg, bound);
    let t = enumerate_ball(&group, r, cfg.ball_options())?;
    let len = t.length(&element)?;
    let mut out = format!("{len}\n");
    let mut code = EXIT_PASS;
    if cfg.format == OutputFormat::Text {
        writeln!(out, "element {element}, ball radius {r}").unwrap();
    }
    if let Some(p) = predicted {
        if p != len {
            writeln!(out, "closed form {p} disagrees").unwrap();
            code = EXIT_FAIL;
        }
    }
    Ok(Outcome::new(out, code))
}

pub fn cmd_geodesics(cfg: &RunConfig, word: &str) -> Result<Outcome> {
    let group = cfg.group.load()?;
    let (g, weight) = group.evaluate_str(word)?;
    let t = enumerate_ball(&group, radius_or(cfg, weight), cfg.ball_options())?;
    let geos = t.all_geodesics(&g, cfg.max_geodesics)?;
    let mut out = format!("length {}: {} geodesics\n", t.length(&g)?, geos.len());
    for w in geos {
        let s = group.format_word(&w);
        writeln!(out, "{}", if s.is_empty() { "ε" } else { &s }).unwrap();
    }
    Ok(Outcome::new(out, EXIT_PASS))
}

pub fn cmd_growth(cfg: &RunConfig) -> Result<Outcome> {
    let group = cfg.group.load()?;
    let t = enumerate_ball(&group, radius_or(cfg, 4), cfg.ball_options())?;
    let c: Vec<String> = t.growth_coefficients().iter().map(|c| c.to_string()).collect();
    Ok(Outcome::new(format!("{}\n", c.join(" ")), EXIT_PASS))
}

fn check_or_skip(name: &str, r: Result<CheckReport>) -> CheckReport {
    match r {
        Ok(rep) => rep,
        Err(e @ (Error::OutOfRadius { .. } | Error::ResourceLimit(_))) => {
            CheckReport::skipped(name, e.to_string())
        }
        Err(e) => {
            let mut rep = CheckReport::new(name);
            rep.violation(e.to_string());
            rep
        }
    }
}

/// Default bounds of the closed-form grid.
pub const GRID: GridBounds = GridBounds {
    a_max: 4,
    b_max: 4,
    c_max: 4,
    d_max: 4,
    e_max: 5,
    f_max: 2,
};

/// `φ∘evaluate_H = evaluate_G∘substitute` on seeded random words.
pub fn coherence_report(map: &EmbeddingMap<'_>, seed: u64, words: usize) -> CheckReport {
    let (h, g) = (map.source(), map.target());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = CheckReport::new("embedding-coherence");
    for _ in 0..words {
        r.checked += 1;
        let len = rng.random_range(0..=24);
        let w: Vec<usize> = (0..len).map(|_| rng.random_range(0..h.letters().len())).collect();
        let (x, wh) = h.evaluate(&w);
        let (y, wg) = g.evaluate(&map.substitute_tau(&w));
        if map.phi(&x) != y || wh != wg {
            r.violation(format!("word {}", h.format_word(&w)));
        }
    }
    r
}

/// The grid of checks run by `verify`, in a fixed order.
pub fn verify_reports(cfg: &RunConfig, embed_radius: u32) -> Vec<CheckReport> {
    let h = presets::h();
    let g = presets::g();
    let mut reports = vec![compile_report("H", h), compile_report("G", g)];
    let r = radius_or(cfg, GRID.required_radius());
    match enumerate_ball(h, r, cfg.ball_options()) {
        Ok(t) => {
            reports.push(check_or_skip("epsilon-audit", epsilon_audit(&t)));
            reports.push(check_or_skip("formula-grid", formula_grid(&t, GRID)));
            reports.push(check_or_skip(
                "star-characterization",
                verify_star_characterization(&t, 4, 4, 2, cfg.max_geodesics),
            ));
        }
        Err(e) => {
            for name in ["epsilon-audit", "formula-grid", "star-characterization"] {
                reports.push(CheckReport::skipped(name, e.to_string()));
            }
        }
    }
    match EmbeddingMap::tau_to_s2(h, g) {
        Ok(map) => {
            reports.push(embedding_report(cfg, &map, embed_radius));
            reports.push(coherence_report(&map, cfg.seed, 1000));
        }
        Err(e) => {
            let mut rep = CheckReport::new("embedding");
            rep.violation(e.to_string());
            reports.push(rep);
        }
    }
    reports
}

fn embedding_report(cfg: &RunConfig, map: &EmbeddingMap<'_>, radius: u32) -> CheckReport {
    let name = format!("totally-geodesic-r{radius}");
    let res = enumerate_ball(map.source(), radius, cfg.ball_options()).and_then(|th| {
        let tg = enumerate_ball(map.target(), radius, cfg.ball_options())?;
        check_totally_geodesic(map, &th, &tg, radius, cfg.max_geodesics).map(|c| c.report)
    });
    check_or_skip(&name, res)
}

fn overall(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.status() == Status::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.status() == Status::Skipped) {
        EXIT_RESOURCE
    } else {
        EXIT_PASS
    }
}

pub fn cmd_verify(cfg: &RunConfig, embed_radius: u32) -> Outcome {
    let reports = verify_reports(cfg, embed_radius);
    let mut out = String::new();
    for r in &reports {
        match cfg.format {
            OutputFormat::Text => write!(out, "{r}").unwrap(),
            OutputFormat::Summary => writeln!(out, "{}", r.summary_line()).unwrap(),
        }
    }
    Outcome::new(out, overall(&reports))
}

fn load_dfa(path: &Path, group: &VAGroup) -> Result<Dfa> {
    let dfa = corpus::load_dfa(path, group)?;
    Ok(dfa)
}

fn witness_code(w: &RefutationWitness) -> i32 {
    match w {
        RefutationWitness::PumpedNonGeodesic { .. } => EXIT_PASS,
        RefutationWitness::UncoveredElement { .. } => EXIT_UNCOVERED,
        RefutationWitness::NonGeodesicAccepted { .. } => EXIT_NON_GEODESIC,
    }
}

pub fn cmd_refute(cfg: &RunConfig, dfa_path: &Path, verify_radius: u32) -> Result<Outcome> {
    let opts = PumpOptions::default();
    let (text, verdict, code) = match cfg.group {
        GroupSelector::H => {
            let h = presets::h();
            let dfa = load_dfa(dfa_path, h)?;
            let need = crate::automata::target_for(dfa.num_states()).closed_form()?;
            let t = enumerate_ball(h, radius_or(cfg, need), cfg.ball_options())?;
            let w = pump_refute(&dfa, &t, opts)?;
            let v = verify_witness(&w, &dfa, &t, opts.max_nodes);
            (w.to_text(h, "H"), v, witness_code(&w))
        }
        GroupSelector::G => {
            let (h, g) = (presets::h(), presets::g());
            let map = EmbeddingMap::tau_to_s2(h, g)?;
            let dfa = load_dfa(dfa_path, g)?;
            let need = crate::automata::target_for(dfa.num_states()).closed_form()?;
            let th = enumerate_ball(h, radius_or(cfg, need), cfg.ball_options())?;
            let w = refute_on_subgroup(&map, &dfa, &th, opts)?;
            let tg = enumerate_ball(g, verify_radius, cfg.ball_options())?;
            let v = verify_witness(&w, &dfa, &tg, opts.max_nodes);
            (w.to_text(g, "G"), v, witness_code(&w))
        }
        GroupSelector::File(_) => {
            return Err(Error::Domain("refute supports the preset groups H and G".into()))
        }
    };
    let mut out = text;
    let code = match verdict {
        Ok(Verdict::Pass) => {
            out.push_str("VERIFY PASS\n");
            code
        }
        Ok(Verdict::Fail(reason)) => {
            writeln!(out, "VERIFY FAIL {reason}").unwrap();
            EXIT_FAIL
        }
        Err(e) => {
            writeln!(out, "VERIFY SKIPPED {e}").unwrap();
            exit_code(&e)
        }
    };
    Ok(Outcome::new(out, code))
}

pub fn cmd_audit(cfg: &RunConfig, dfa_path: &Path) -> Result<Outcome> {
    let group = cfg.group.load()?;
    let dfa = load_dfa(dfa_path, &group)?;
    let r = radius_or(cfg, 6);
    let t: LengthTable<'_> = enumerate_ball(&group, r, cfg.ball_options())?;
    let label = cfg.group.label();
    Ok(match bounded_language_audit(&dfa, &t, r, cfg.max_audit_words)? {
        AuditOutcome::Pass { radius, words } => Outcome::new(
            format!("AUDIT PASS radius={radius} accepted-words={words}\n"),
            EXIT_PASS,
        ),
        AuditOutcome::Fail(w) => Outcome::new(
            format!("AUDIT FAIL radius={r}\n{}", w.to_text(&group, &label)),
            EXIT_FAIL,
        ),
    })
}

pub fn cmd_check_embedding(cfg: &RunConfig, radius: u32) -> Result<Outcome> {
    let (h, g) = (presets::h(), presets::g());
    let map = EmbeddingMap::tau_to_s2(h, g)?;
    let th = enumerate_ball(h, radius, cfg.ball_options())?;
    let tg = enumerate_ball(g, radius, cfg.ball_options())?;
    let c = check_totally_geodesic(&map, &th, &tg, radius, cfg.max_geodesics)?;
    let mut out = String::new();
    writeln!(
        out,
        "radius {radius}: H ball {} elements, G ball {} elements",
        th.len(),
        tg.len()
    )
    .unwrap();
    writeln!(
        out,
        "isometry and pull-back: {} elements, {} G-geodesics",
        c.report.checked, c.geodesics
    )
    .unwrap();
    match &c.first_exception {
        Some((x, w)) => writeln!(
            out,
            "literal substitution fails for {} geodesics (first: {w} for {x}); all pull back after commuting t past s",
            c.literal_exceptions
        )
        .unwrap(),
        None => writeln!(out, "every geodesic is a literal substitution").unwrap(),
    }
    match cfg.format {
        OutputFormat::Text => write!(out, "{}", c.report).unwrap(),
        OutputFormat::Summary => writeln!(out, "{}", c.report.summary_line()).unwrap(),
    }
    let code = if c.report.passed() { EXIT_PASS } else { EXIT_FAIL };
    Ok(Outcome::new(out, code))
}

pub fn cmd_random_dfa(cfg: &RunConfig, count: usize, max_states: usize, out: &Path) -> Result<Outcome> {
    if max_states == 0 {
        return Err(Error::Domain("--max-states must be positive".into()));
    }
    let group = cfg.group.load()?;
    let io = |e: std::io::Error| Error::Io {
        path: out.display().to_string(),
        message: e.to_string(),
    };
    fs::create_dir_all(out).map_err(io)?;
    let mut listing = String::new();
    for (i, d) in corpus::random_corpus(&group, cfg.seed, count, max_states)
        .iter()
        .enumerate()
    {
        let name = format!("random_s{}_{:02}.dfa", cfg.seed, i);
        let text = format!(
            "# random DFA {i} from seed {}, {} states\n{}",
            cfg.seed,
            d.num_states(),
            d.to_spec(&group).to_text()
        );
        fs::write(out.join(&name), text).map_err(io)?;
        writeln!(listing, "{name}").unwrap();
    }
    Ok(Outcome::new(listing, EXIT_PASS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("geonf").chain(args.iter().copied()))
    }

    #[test]
    fn length_of_family_b() {
        let o = go(&["length", "--family", "b", "--d", "1", "--e", "3", "--f", "2", "--format", "summary"]);
        assert_eq!(o, Outcome::new("10\n".into(), 0));
    }

    #[test]
    fn geodesics_of_ytyt() {
        let o = go(&["geodesics", "--word", "ytyt"]);
        assert_eq!(o.code, 0);
        assert!(o.output.lines().any(|l| l == "tyty"), "{}", o.output);
    }

    #[test]
    fn growth_radius_zero() {
        assert_eq!(go(&["growth", "--radius", "0"]).output, "1\n");
    }

    #[test]
    fn compile_presets() {
        let o = go(&["compile"]);
        assert!(o.output.contains("rank 5\n"));
        assert_eq!(o.code, 0);
        let o = go(&["compile", "--group", "G", "--format", "summary"]);
        assert_eq!(o.output, "CHECK compile-G PASS checked=79 violations=0\n");
    }

    #[test]
    fn usage_and_io_errors() {
        assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
        let o = go(&["refute", "--dfa", "/nonexistent/x.dfa"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.output.contains("I/O error"));
        let o = go(&["length", "--word", "xq"]);
        assert_eq!(o.code, EXIT_USAGE);
    }

    #[test]
    fn out_of_radius_exit_code() {
        let o = go(&["length", "--word", "xxxx", "--radius", "2"]);
        assert_eq!(o.code, EXIT_RESOURCE);
        assert!(o.output.contains("enlarge"));
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let c = RunConfig::parse("radius = 3\nseed = 9\nformat = summary\n").unwrap();
        assert_eq!((c.radius, c.seed, c.format), (Some(3), 9, OutputFormat::Summary));
        assert!(matches!(
            RunConfig::parse("radius = 3\ncolour = blue\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(RunConfig::parse("max_elements = 0\n").is_err());
    }

    #[test]
    fn verify_small_radius_skips() {
        let cfg = RunConfig {
            radius: Some(8),
            format: OutputFormat::Summary,
            ..RunConfig::default()
        };
        let o = cmd_verify(&cfg, 3);
        assert_eq!(o.code, EXIT_RESOURCE);
        assert!(o.output.contains("CHECK formula-grid SKIPPED"));
        assert!(o.output.contains("CHECK epsilon-audit PASS"));
    }
}
