//! `arbor`: enumeration, Segal checks, envelopes, property suites and
//! export. Exit codes: 0 success, 1 a check failed, 2 bad input.

mod args;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use arbor::envelope::{env_corolla, envelope_slice, envelope_value, slice_to_dot, LiftWindow, SliceConfig, SliceMode};
use arbor::forest::{
    automorphism_count, corolla_count, enumerate_trees, forest_to_dot, Forest, Pattern, MAX_HEIGHT, MAX_WIDTH,
};
use arbor::operad::{self, Operad, OperadSpec};
use arbor::segal::{
    check_segal, check_segal_on, check_segal_parallel, window_maps, Corrupted, Corruption, Nerve, Presheaf,
    SegalReport, Tabulated, Terminal, Window,
};
use arbor::suites::{self, SuiteReport};
use clap::Parser;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use args::{Cli, Command, ExportWhat, Format, Opts, PatternArg, SliceModeArg, Suite};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

type Outcome = Result<(String, bool), CliError>;

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// Everything that shaped a run, echoed into every report.
#[derive(Debug, Serialize)]
struct ConfigEcho {
    command: &'static str,
    pattern: PatternArg,
    height: Option<usize>,
    width: Option<usize>,
    total_size: Option<usize>,
    cap: Option<usize>,
    slice_mode: Option<SliceMode>,
    strict: Option<bool>,
    exclude_empty: Option<bool>,
    lookahead: Option<usize>,
    operad: Option<String>,
    object: Option<String>,
    seed: Option<u64>,
}

impl ConfigEcho {
    fn new(command: &'static str, o: &Opts) -> Self {
        Self {
            command,
            pattern: o.pattern,
            height: None,
            width: None,
            total_size: o.total_size,
            cap: None,
            slice_mode: None,
            strict: None,
            exclude_empty: None,
            lookahead: None,
            operad: o.operad.clone(),
            object: None,
            seed: None,
        }
    }

    fn window(mut self, w: Window) -> Self {
        self.height = Some(w.max_height);
        self.width = Some(w.max_width);
        self
    }

    fn slice(mut self, c: SliceConfig) -> Self {
        self.cap = Some(c.cap);
        self.slice_mode = Some(c.mode);
        self.strict = Some(c.mode.strict());
        self.exclude_empty = Some(c.exclude_empty);
        self.lookahead = Some(c.lookahead);
        self
    }

    fn text(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

fn window(o: &Opts, height: usize, width: usize) -> Result<Window, CliError> {
    let (h, w) = (o.height.unwrap_or(height), o.width.unwrap_or(width));
    if h > MAX_HEIGHT || w > MAX_WIDTH {
        return Err(CliError::Input(format!(
            "bounds height {h}, width {w} exceed the supported {MAX_HEIGHT} and {MAX_WIDTH}"
        )));
    }
    let mut win = Window::new(h, w);
    if let Some(t) = o.total_size {
        win = win.with_total(t);
    }
    Ok(win)
}

fn slice_config(o: &Opts, cap: usize) -> Result<SliceConfig, CliError> {
    let cap = o.cap.unwrap_or(cap);
    if cap == 0 {
        return Err(CliError::Input("--cap must be positive".into()));
    }
    let mode = match o.slice_mode {
        Some(SliceModeArg::Plus) => SliceMode::Plus,
        Some(SliceModeArg::Iso) => SliceMode::Iso,
        Some(SliceModeArg::Pre) => SliceMode::Pre,
        None => SliceMode::from_strict(!o.no_strict),
    };
    Ok(SliceConfig::new(cap, mode, !o.include_empty).with_lookahead(o.lookahead))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_operad(o: &Opts) -> Result<Option<Operad>, CliError> {
    let Some(arg) = &o.operad else { return Ok(None) };
    let path = Path::new(arg);
    if !path.exists() {
        return operad::fixture(arg).map(Some).ok_or_else(|| {
            CliError::Input(format!("{arg}: no such file or fixture ({})", operad::FIXTURE_NAMES.join(", ")))
        });
    }
    let spec: OperadSpec = serde_json::from_str(&read(path)?).map_err(|e| input(format!("{arg}: {e}")))?;
    let name = path.file_stem().map_or("operad".into(), |s| s.to_string_lossy().into_owned());
    Operad::from_spec(&name, &spec).map(Some).map_err(|e| input(format!("{arg}: {e}")))
}

fn parse_object(sel: &str) -> Result<Forest, CliError> {
    if sel == "eta" {
        return Ok(Forest::eta());
    }
    if let Some(n) = sel.strip_prefix("c:") {
        let n: usize = n.parse().map_err(|_| input(format!("bad corolla selector {sel:?}")))?;
        return Ok(Forest::corolla(n));
    }
    if let Some(path) = sel.strip_prefix('@') {
        return serde_json::from_str(&read(Path::new(path))?).map_err(|e| input(format!("{path}: {e}")));
    }
    Err(CliError::Input(format!("object selector {sel:?} is not eta, c:N or @file.json")))
}

/// The presheaf a command works on: a tabulated file, the terminal
/// presheaf, or the nerve of `--operad`.
enum Source {
    Tabulated(Tabulated),
    Terminal(Terminal),
    Nerve(Box<Nerve>),
}

impl Source {
    fn get(&self) -> &dyn Presheaf {
        match self {
            Source::Tabulated(t) => t,
            Source::Terminal(t) => t,
            Source::Nerve(n) => n.as_ref(),
        }
    }
}

/// `height` levels at the width the source supports.
fn source(o: &Opts, height: usize, width: Option<usize>) -> Result<Source, CliError> {
    if let Some(p) = &o.presheaf {
        let t: Tabulated = serde_json::from_str(&read(p)?).map_err(|e| input(format!("{}: {e}", p.display())))?;
        return Ok(Source::Tabulated(t));
    }
    match load_operad(o)? {
        Some(op) => {
            let w = width.unwrap_or(op.max_arity()).min(op.max_arity());
            Ok(Source::Nerve(Box::new(Nerve::new(op, Window::new(height, w)).map_err(input)?)))
        }
        None if o.pattern != PatternArg::Gamma => {
            Ok(Source::Terminal(Terminal::new(Window::new(height, width.unwrap_or(MAX_WIDTH)))))
        }
        None => Err(CliError::Input("--operad or --presheaf is required (or --pattern terminal)".into())),
    }
}

fn corruption(o: &Opts) -> Result<Option<(Forest, Corruption)>, CliError> {
    let Some(spec) = &o.corrupt else { return Ok(None) };
    let at = parse_object(o.corrupt_at.as_deref().ok_or_else(|| input("--corrupt needs --corrupt-at"))?)?;
    let (kind, e) = spec.split_once(':').ok_or_else(|| input(format!("bad corruption {spec:?}")))?;
    let e: usize = e.parse().map_err(|_| input(format!("bad element in {spec:?}")))?;
    let kind = match kind {
        "remove" => Corruption::Remove(e),
        "duplicate" => Corruption::Duplicate(e),
        _ => return Err(input(format!("corruption kind {kind:?} is not remove or duplicate"))),
    };
    Ok(Some((at, kind)))
}

fn json_out<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_enumerate(o: &Opts) -> Outcome {
    let height = o.height.unwrap_or(2);
    let width = o.width.unwrap_or(3);
    let pattern = if o.pattern == PatternArg::Gamma { Pattern::Gamma } else { Pattern::Terminal };
    let listing = enumerate_trees(pattern, height, width).map_err(input)?;
    let trees: Vec<(&Forest, &String)> =
        listing.trees.iter().zip(&listing.codes).filter(|(t, _)| !o.exact || t.length() == height).collect();
    let echo = ConfigEcho { height: Some(height), width: Some(width), ..ConfigEcho::new("enumerate", o) };
    let out = match o.format {
        Format::Json => {
            let rows: Vec<_> = trees
                .iter()
                .map(|(t, c)| {
                    json!({
                        "code": c,
                        "sizes": t.sizes(),
                        "forest": t,
                        "corollas": corolla_count(t),
                        "automorphisms": automorphism_count(t).to_string(),
                    })
                })
                .collect();
            json_out(&json!({ "config": echo, "count": rows.len(), "trees": rows }))
        }
        Format::Dot => trees.iter().map(|(t, _)| forest_to_dot(t)).collect(),
        Format::Text => {
            let mut s = format!("# {}\n# {} trees\n", echo.text(), trees.len());
            for (t, c) in &trees {
                writeln!(
                    s,
                    "{c}\tsizes {:?}\tcorollas {}\t|Aut| {}",
                    t.sizes(),
                    corolla_count(t),
                    automorphism_count(t)
                )
                .unwrap();
            }
            s
        }
    };
    Ok((out, true))
}

fn segal_text(r: &SegalReport) -> String {
    let mut s = String::new();
    for (name, c) in [("level", &r.level), ("root", &r.root), ("shrub", &r.shrub)] {
        writeln!(s, "{name:<6} {} ({} checked)", if c.passed { "pass" } else { "FAIL" }, c.checked).unwrap();
        if let Some(w) = &c.witness {
            writeln!(s, "       witness at {:?}: {}", w.forest.sizes(), w.detail).unwrap();
        }
    }
    if r.vacuous {
        s.push_str("warning: vacuous, no forest of the window needed checking\n");
    }
    s
}

fn cmd_check_segal(o: &Opts) -> Outcome {
    let win = window(o, 2, 3)?;
    let base = source(o, win.max_height, Some(win.max_width))?;
    let x = base.get();
    if win.max_width > x.window().max_width {
        return Err(input(format!("window width {} exceeds what {} supports", win.max_width, x.name())));
    }
    let corrupted = corruption(o)?.map(|(f, k)| Corrupted::new(x, f, k));
    let target: &dyn Presheaf = match &corrupted {
        Some(c) => c,
        None => x,
    };
    let report = if win != x.window() {
        check_segal_on(target, &win.forests())
    } else if o.jobs > 1 {
        check_segal_parallel(target, o.jobs)
    } else {
        check_segal(target)
    };
    let echo = ConfigEcho::new("check-segal", o).window(win);
    let passed = report.passed();
    let out = match o.format {
        Format::Json => json_out(&json!({ "config": echo, "passed": passed, "report": report })),
        _ => format!(
            "# {}\n{}: {}\n{}",
            echo.text(),
            report.presheaf,
            if passed { "Segal on the window" } else { "not Segal" },
            segal_text(&report)
        ),
    };
    Ok((out, passed))
}

fn cmd_envelope(o: &Opts) -> Outcome {
    let t = parse_object(&o.object)?;
    let config = slice_config(o, 3)?;
    let base = source(o, t.length(), None)?;
    let x = base.get();
    let echo = ConfigEcho { object: Some(o.object.clone()), ..ConfigEcho::new("envelope", o).slice(config) };
    let corolla = (t.length() == 1 && t.size(1) == 1).then(|| t.size(0));
    if o.format == Format::Dot {
        return Ok((slice_to_dot(&envelope_slice(&t, config).map_err(input)?), true));
    }
    let (value, raw) = match corolla {
        Some(n) => {
            let c = env_corolla(x, n, config).map_err(input)?;
            let raw = json!({
                "raw_coproduct": c.raw_coproduct,
                "terms": c.terms,
                "unmapped": c.unmapped,
                "class_hits": c.class_hits,
                "surjective": c.surjective,
            });
            (c.value, Some(raw))
        }
        None => (envelope_value(x, &t, config).map_err(input)?, None),
    };
    let out = match o.format {
        Format::Json => json_out(&json!({ "config": echo, "envelope": value, "corolla_formula": raw })),
        _ => {
            let mut s = format!("# {}\n", echo.text());
            writeln!(s, "Env({})({:?}) at cap {}: {} classes", x.name(), t.sizes(), value.cap, value.class_count())
                .unwrap();
            writeln!(
                s,
                "stabilized: {} (next cap: {}, stable classes {})",
                value.stabilized,
                value.next_cap_classes.map_or("n/a".into(), |c| c.to_string()),
                value.stable_classes
            )
            .unwrap();
            if let Some(note) = &value.stabilization_note {
                writeln!(s, "note: {note}").unwrap();
            }
            writeln!(s, "slice objects {}, generators {}", value.slice_objects, value.generators).unwrap();
            for (i, c) in value.classes.iter().enumerate() {
                writeln!(
                    s,
                    "  class {i}: {:?} element {} ({}), orbit {}",
                    c.representative.slice_object.forest.sizes(),
                    c.representative.element,
                    c.representative.description,
                    c.size_of_orbit
                )
                .unwrap();
            }
            writeln!(s, "inner limit agrees: {} ({} checked)", value.inner_limit.agrees, value.inner_limit.checked)
                .unwrap();
            if let Some(raw) = raw {
                writeln!(
                    s,
                    "corolla formula: raw coproduct {} -> hits {} (unmapped {}, surjective {})",
                    raw["raw_coproduct"], raw["class_hits"], raw["unmapped"], raw["surjective"]
                )
                .unwrap();
            }
            s
        }
    };
    Ok((out, true))
}

/// Transport along random composable pairs of window maps agrees with
/// transport along the composite.
fn fuzz_suite(seed: u64, win: Window, operads: &[Operad]) -> SuiteReport {
    let mut r = SuiteReport::new("fuzz");
    let maps = window_maps(&win);
    let mut rng = StdRng::seed_from_u64(seed);
    for op in operads {
        let name = op.name().to_string();
        let x = match Nerve::new(op.clone(), win) {
            Ok(x) => x,
            Err(e) => {
                r.check(false, || format!("{name}: {e}"));
                continue;
            }
        };
        for _ in 0..200 {
            let f = &maps[rng.gen_range(0..maps.len())];
            let out: Vec<_> = maps.iter().filter(|g| g.src() == f.tgt()).collect();
            let g = out[rng.gen_range(0..out.len())];
            let gf = f.then(g).expect("composable");
            let ok = (|| {
                for e in 0..x.value(g.tgt())? {
                    if x.transport(f, x.transport(g, e)?)? != x.transport(&gf, e)? {
                        return Ok(false);
                    }
                }
                Ok::<_, arbor::segal::SegalError>(true)
            })();
            r.check(matches!(ok, Ok(true)), || {
                format!("{name}: transport along {:?} then {:?}: {ok:?}", f.phi(), g.phi())
            });
        }
    }
    r.note(format!("seed {seed}"));
    r
}

fn operads_or(o: &Opts, defaults: &[&str]) -> Result<Vec<Operad>, CliError> {
    Ok(match load_operad(o)? {
        Some(op) => vec![op],
        None => defaults.iter().map(|n| operad::fixture(n).expect("fixture")).collect(),
    })
}

fn cmd_verify(o: &Opts) -> Outcome {
    let suite = o.suite.ok_or_else(|| input("--suite is required"))?;
    let mut echo = ConfigEcho::new("verify", o);
    let report = match suite {
        Suite::Factorization => {
            if o.pattern != PatternArg::Gamma {
                return Err(input("the factorization suite runs on --pattern gamma"));
            }
            if o.size > arbor::gamma::MAX_ENUMERATION_SIZE {
                return Err(input(format!("--size {} exceeds {}", o.size, arbor::gamma::MAX_ENUMERATION_SIZE)));
            }
            let win = window(o, 2, 3)?;
            echo = echo.window(win);
            let mut r = SuiteReport::new("factorization");
            r.absorb(suites::gamma_factorization(o.size));
            r.absorb(suites::forest_factorization(win.max_height, win.max_width));
            r
        }
        Suite::Oracle => {
            let win = window(o, 3, 4)?;
            echo = echo.window(win);
            suites::tree_oracle(win.max_height, win.max_width)
        }
        Suite::Segal => {
            let win = window(o, 2, 3)?;
            echo = echo.window(win);
            suites::segal_suite(win)
        }
        Suite::Envelope => {
            let config = slice_config(o, 3)?;
            let win = window(o, 2, 2)?;
            echo = echo.window(win).slice(config);
            let mut r = suites::envelope_suite(config, config.cap);
            r.absorb(suites::envelope_segal_suite(&operads_or(o, &["com", "ass"])?, win, config));
            r
        }
        Suite::Adjunction => {
            let config = slice_config(o, 2)?;
            let win = window(o, 1, 2)?;
            echo = echo.window(win).slice(config);
            suites::adjunction_suite(&operads_or(o, &["com", "free-monoid"])?, win, config)
        }
        Suite::Counts => suites::inert_active_counts(o.size.max(1)),
        Suite::Automorphisms => suites::corolla_automorphisms(o.size),
        Suite::Patterns => {
            let win = window(o, 2, 3)?;
            echo = echo.window(win);
            suites::pattern_preservation(o.size, win.max_height, win.max_width)
        }
        Suite::Lifts => {
            let groups = o.width.unwrap_or(3);
            suites::lift_suite(
                LiftWindow { max_groups: groups, max_letters: groups },
                LiftWindow { max_groups: groups, max_letters: groups + 1 },
            )
        }
        Suite::Fuzz => {
            let win = window(o, 2, 2)?;
            echo = ConfigEcho { seed: Some(o.seed), ..echo.window(win) };
            fuzz_suite(o.seed, win, &operads_or(o, &["com", "ass", "free-binary", "two-colour"])?)
        }
    };
    let passed = report.passed;
    let out = match o.format {
        Format::Json => json_out(&json!({ "config": echo, "suite": suite, "report": report })),
        _ => {
            let mut s = format!("# {}\n", echo.text());
            writeln!(s, "{}: {} ({} checks)", report.suite, if passed { "pass" } else { "FAIL" }, report.checked)
                .unwrap();
            if let Some(f) = &report.failure {
                writeln!(s, "first failure: {f}").unwrap();
            }
            for n in &report.notes {
                writeln!(s, "note: {n}").unwrap();
            }
            s
        }
    };
    Ok((out, passed))
}

fn cmd_export(o: &Opts, what: ExportWhat) -> Outcome {
    let t = parse_object(&o.object)?;
    let out = match what {
        ExportWhat::Tree => match o.format {
            Format::Json => json_out(&t),
            _ => forest_to_dot(&t),
        },
        ExportWhat::Slice => slice_to_dot(&envelope_slice(&t, slice_config(o, 2)?).map_err(input)?),
        ExportWhat::Envelope => {
            let config = slice_config(o, 3)?;
            let base = source(o, t.length(), None)?;
            let value = envelope_value(base.get(), &t, config).map_err(input)?;
            let echo = ConfigEcho { object: Some(o.object.clone()), ..ConfigEcho::new("export", o).slice(config) };
            json_out(&json!({ "config": echo, "envelope": value }))
        }
        ExportWhat::Operad => json_out(&load_operad(o)?.ok_or_else(|| input("--operad is required"))?.to_spec()),
        ExportWhat::Presheaf => {
            let win = window(o, 1, 2)?;
            let base = source(o, win.max_height, Some(win.max_width))?;
            json_out(&Tabulated::from_presheaf(base.get(), win).map_err(input)?)
        }
    };
    Ok((out, true))
}

fn run(cli: &Cli) -> Outcome {
    let o = &cli.opts;
    match &cli.command {
        Command::Enumerate => cmd_enumerate(o),
        Command::CheckSegal => cmd_check_segal(o),
        Command::Envelope => cmd_envelope(o),
        Command::Verify => cmd_verify(o),
        Command::Export { what } => cmd_export(o, *what),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, passed)) => {
            if let Some(path) = &cli.opts.out {
                if let Err(e) = fs::write(path, &out) {
                    eprintln!("error: i/o error on {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{out}");
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
