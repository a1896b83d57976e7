//! `avk` — exact residue and partition forms of real curves and line
//! arrangements, with the signature and Euler-characteristic estimates.
//!
//! Exit codes: 0 all good, 1 a mathematical check failed (the failing
//! identity is named), 2 usage or input error.  All rationals print as
//! exact fractions; output is deterministic byte-for-byte.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use avk_core::arrangements::{
    chi_rx_eps, enumerate_cells, phi_face_route, phi_integral_route, phi_residue_route,
    predict_6_1_2, Arrangement, PhiResult,
};
use avk_core::bounds::{
    arnold_viro_rhs, cuspidal_bounds, hodge_identities, petrovskii_general, smith_rhs, AvVariant,
    BoundsReport, InvariantBundle,
};
use avk_core::curves::{gap_breakdown, milnor_pluecker_validate, sharpness_check, CurveInvariants,
    CurveModel};
use avk_core::morsify::{catalog, catalog_entries, AgDiagram, Block};
use avk_core::qforms::display_rat;
use avk_core::resolution::{lambda_from_resolution, BoundarySurface};
use avk_core::{rat, Inertia, SymmetricForm};

#[derive(Parser)]
#[command(
    name = "avk",
    version,
    about = "Exact residue and partition forms of real plane curves and arrangements"
)]
struct Cli {
    /// Output format; the AVK_OUTPUT environment variable sets the default.
    #[arg(long, short = 'o', global = true, value_enum)]
    output: Option<Format>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect a symmetric form
    #[command(subcommand)]
    Form(FormCmd),
    /// Local residue forms of real curve germs
    #[command(subcommand)]
    Singularity(SingularityCmd),
    /// The resolution route to local forms
    #[command(subcommand)]
    Resolution(ResolutionCmd),
    /// Partition forms of hyperplane arrangements
    #[command(subcommand)]
    Arrangement(ArrangementCmd),
    /// Partition forms and diagnostics of curve models
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Evaluate bound and identity catalogs on an invariant bundle
    Bounds(BoundsArgs),
    /// Built-in golden suites
    Selftest {
        /// Suite name (currently: table54)
        suite: String,
    },
}

#[derive(Subcommand)]
enum FormCmd {
    /// Inertia (σ₊, σ₋, σ₀) of a symmetric form
    Inertia {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum SingularityCmd {
    /// Boundary residue forms q, q₊, q₋, q̄ of a divide diagram
    Residue {
        /// Diagram JSON file
        #[arg(long, conflicts_with = "catalog")]
        diagram: Option<PathBuf>,
        /// Catalog entry name (e.g. A2-, A4+, E8); checks against the
        /// published matrix
        #[arg(long)]
        catalog: Option<String>,
    },
    /// List the catalog entries
    List,
}

#[derive(Subcommand)]
enum ResolutionCmd {
    /// λ of a resolved boundary surface
    Lambda {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Subcommand)]
enum ArrangementCmd {
    /// Assemble the partition form of an arrangement
    Phi {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Route::All)]
        route: Route,
        /// Check the block inertias against the closed-form prediction
        #[arg(long = "check-6-1-2")]
        check_6_1_2: bool,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Route {
    Face,
    Integral,
    Residue,
    All,
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Assemble φ and φ̄ of a curve model
    Phi {
        #[arg(long)]
        model: PathBuf,
    },
    /// Radical ranks, Milnor/Plücker consistency, and the gap breakdown
    Sharpness {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        invariants: PathBuf,
    },
}

#[derive(Args)]
struct BoundsArgs {
    /// Invariant bundle JSON (flat map of named exact numbers)
    #[arg(long)]
    invariants: PathBuf,
    /// Comma-separated selectors: arnold-viro:<id> with id one of
    /// 1.3.1, 1.3.2, 1-7, 3.1.1, 3.1.2, 4.1.1, 4.1.2, 4.2.1;
    /// petrovskii; smith; hodge; cuspidal
    #[arg(long)]
    which: String,
    /// Read σ₊/σ₋/σ₀ from a printed φ report (its plus/minus block)
    #[arg(long = "lhs-from")]
    lhs_from: Option<PathBuf>,
    /// Which sign block of --lhs-from feeds the σ's
    #[arg(long, value_enum, default_value_t = Side::Plus)]
    side: Side,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Side {
    Plus,
    Minus,
}

/// A usage or input problem: exit 2.
struct Usage(String);

/// Rendered result of a subcommand: the same content as JSON and as
/// table lines, plus the names of any failed mathematical checks.
struct Outcome {
    json: Value,
    table: Vec<String>,
    failures: Vec<String>,
}

fn usage<E: std::fmt::Display>(ctx: &'static str) -> impl FnOnce(E) -> Usage {
    move |e| Usage(format!("{ctx}: {e}"))
}

fn read_json(path: &Path) -> Result<Value, Usage> {
    let text = fs::read_to_string(path)
        .map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Usage(format!(
            "{}: malformed JSON at line {}, column {}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn inertia_str(i: &Inertia) -> String {
    format!("({},{},{})", i.plus, i.minus, i.zero)
}

fn inertia_json(i: &Inertia) -> Value {
    json!({"plus": i.plus, "minus": i.minus, "zero": i.zero})
}

fn form_lines(title: &str, f: &SymmetricForm) -> Vec<String> {
    let mut lines = vec![format!(
        "{title}: dim {}, inertia {}",
        f.dim(),
        inertia_str(&f.inertia())
    )];
    lines.extend(f.to_string().lines().map(str::to_string));
    lines
}

/// Named pass/fail assertions accumulated by the check commands.
#[derive(Default)]
struct Checks {
    lines: Vec<String>,
    json: Vec<Value>,
    failures: Vec<String>,
}

impl Checks {
    fn push(&mut self, id: &str, pass: bool, detail: String) {
        self.lines.push(format!(
            "{} {id}: {detail}",
            if pass { "ok  " } else { "FAIL" }
        ));
        self.json.push(json!({"id": id, "pass": pass, "detail": detail}));
        if !pass {
            self.failures.push(id.to_string());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match resolve_format(cli.output) {
        Ok(f) => f,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(out) => {
            match format {
                Format::Json => emit(
                    &serde_json::to_string_pretty(&out.json).expect("serializable report"),
                ),
                Format::Table => {
                    for line in &out.table {
                        emit(line);
                    }
                }
            }
            if out.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("failed checks: {}", out.failures.join(", "));
                ExitCode::from(1)
            }
        }
    }
}

/// Print one line, exiting quietly if the consumer closed the pipe.
fn emit(text: &str) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    if let Err(e) = writeln!(lock, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

fn resolve_format(flag: Option<Format>) -> Result<Format, Usage> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match std::env::var("AVK_OUTPUT") {
        Ok(s) if s.eq_ignore_ascii_case("json") => Ok(Format::Json),
        Ok(s) if s.eq_ignore_ascii_case("table") => Ok(Format::Table),
        Ok(s) => Err(Usage(format!(
            "AVK_OUTPUT must be `json` or `table`, not `{s}`"
        ))),
        Err(_) => Ok(Format::Table),
    }
}

fn run(cmd: Cmd) -> Result<Outcome, Usage> {
    match cmd {
        Cmd::Form(FormCmd::Inertia { input }) => form_inertia(&input),
        Cmd::Singularity(SingularityCmd::Residue { diagram, catalog }) => {
            singularity_residue(diagram.as_deref(), catalog.as_deref())
        }
        Cmd::Singularity(SingularityCmd::List) => singularity_list(),
        Cmd::Resolution(ResolutionCmd::Lambda { graph }) => resolution_lambda(&graph),
        Cmd::Arrangement(ArrangementCmd::Phi {
            input,
            route,
            check_6_1_2,
        }) => arrangement_phi(&input, route, check_6_1_2),
        Cmd::Curve(CurveCmd::Phi { model }) => curve_phi(&model),
        Cmd::Curve(CurveCmd::Sharpness { model, invariants }) => {
            curve_sharpness(&model, &invariants)
        }
        Cmd::Bounds(args) => bounds_cmd(&args),
        Cmd::Selftest { suite } => selftest(&suite),
    }
}

fn form_inertia(input: &Path) -> Result<Outcome, Usage> {
    let f = SymmetricForm::from_json(&read_json(input)?).map_err(usage("form"))?;
    let i = f.inertia();
    Ok(Outcome {
        json: json!({
            "schema": "avk-1",
            "dim": f.dim(),
            "inertia": inertia_json(&i),
            "nondegenerate": f.is_nondegenerate(),
        }),
        table: vec![inertia_str(&i)],
        failures: vec![],
    })
}

fn singularity_residue(
    diagram: Option<&Path>,
    catalog_name: Option<&str>,
) -> Result<Outcome, Usage> {
    let (d, entry) = match (diagram, catalog_name) {
        (Some(p), None) => (
            AgDiagram::from_json(&read_json(p)?).map_err(usage("diagram"))?,
            None,
        ),
        (None, Some(name)) => {
            let e = catalog(name).ok_err(format!(
                "unknown catalog entry `{name}`; try `avk singularity list`"
            ))?;
            (e.diagram.clone(), Some(e))
        }
        _ => {
            return Err(Usage(
                "supply exactly one of --diagram or --catalog".into(),
            ))
        }
    };
    let res = d.boundary_residue().map_err(usage("residue"))?;
    let mut checks = Checks::default();
    if let Some(e) = entry {
        let block = match e.expected_block {
            Block::Plus => &res.q_plus,
            Block::Minus => &res.q_minus,
        };
        let congruent = block.signed_perm_congruent(&e.expected_m).is_some();
        checks.push(
            &format!("table54:{}", e.name),
            congruent,
            format!(
                "germ {}, μ = {}, published block matches up to signed permutation: {}",
                e.germ, e.mu, congruent
            ),
        );
    }
    let mut table = Vec::new();
    for (title, f) in [
        ("q", &res.q),
        ("q_plus", &res.q_plus),
        ("q_minus", &res.q_minus),
        ("q_bar", &res.q_bar),
    ] {
        table.extend(form_lines(title, f));
    }
    table.extend(checks.lines.iter().cloned());
    Ok(Outcome {
        json: json!({
            "schema": "avk-1",
            "q": res.q.to_json(),
            "q_plus": res.q_plus.to_json(),
            "q_minus": res.q_minus.to_json(),
            "q_bar": res.q_bar.to_json(),
            "checks": checks.json,
        }),
        table,
        failures: checks.failures,
    })
}

fn singularity_list() -> Result<Outcome, Usage> {
    let entries: Vec<Value> = catalog_entries()
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "germ": e.germ,
                "mu": e.mu,
                "rho": e.rho,
                "mu_splitting": [e.mu_plus, e.mu_minus, e.mu_zero],
            })
        })
        .collect();
    let table = catalog_entries()
        .iter()
        .map(|e| format!("{:6} {}  (μ = {})", e.name, e.germ, e.mu))
        .collect();
    Ok(Outcome {
        json: json!({"schema": "avk-1", "catalog": entries}),
        table,
        failures: vec![],
    })
}

fn resolution_lambda(graph: &Path) -> Result<Outcome, Usage> {
    let b = BoundarySurface::from_json(&read_json(graph)?).map_err(usage("graph"))?;
    let lambda = lambda_from_resolution(&b).map_err(usage("resolution"))?;
    Ok(Outcome {
        json: json!({
            "schema": "avk-1",
            "lambda": lambda.to_json(),
            "inertia": inertia_json(&lambda.inertia()),
        }),
        table: form_lines("lambda", &lambda),
        failures: vec![],
    })
}

fn arrangement_phi(input: &Path, route: Route, check_6_1_2: bool) -> Result<Outcome, Usage> {
    let a = Arrangement::from_json(&read_json(input)?).map_err(usage("arrangement"))?;
    let runs: &[(&str, fn(&Arrangement) -> _)] = match route {
        Route::Face => &[("face", phi_face_route as fn(&Arrangement) -> _)],
        Route::Integral => &[("integral", phi_integral_route)],
        Route::Residue => &[("residue", phi_residue_route)],
        Route::All => &[
            ("face", phi_face_route),
            ("integral", phi_integral_route),
            ("residue", phi_residue_route),
        ],
    };
    let mut results: Vec<(&str, PhiResult)> = Vec::new();
    for (name, f) in runs {
        results.push((name, f(&a).map_err(usage("arrangement"))?));
    }
    let mut checks = Checks::default();
    if results.len() > 1 {
        let first = &results[0].1;
        let agree = results[1..]
            .iter()
            .all(|(_, r)| r.form == first.form && r.plus == first.plus && r.minus == first.minus);
        checks.push(
            "phi-route-agreement",
            agree,
            format!(
                "face, integral and residue assemblies identical entrywise: {agree}"
            ),
        );
    }
    let phi = &results[0].1;
    if check_6_1_2 {
        if a.d() != 2 {
            return Err(Usage(
                "the 6.1.2 check applies to plane (d = 2) arrangements".into(),
            ));
        }
        let complex = enumerate_cells(&a).map_err(usage("arrangement"))?;
        for (sign, word, block) in [(1i8, "plus", &phi.plus), (-1, "minus", &phi.minus)] {
            let chi = chi_rx_eps(&complex, sign);
            let predicted = predict_6_1_2(a.m(), chi).map_err(usage("6-1-2"))?;
            let got = block.inertia();
            checks.push(
                &format!("6.1.2:{word}"),
                got == predicted,
                format!(
                    "χ(RX^{word}) = {chi}; predicted {}, assembled {}",
                    inertia_str(&predicted),
                    inertia_str(&got)
                ),
            );
        }
    }
    let mut table = vec![format!(
        "arrangement: m = {}, d = {}, routes [{}]",
        a.m(),
        a.d(),
        results.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
    )];
    table.extend(form_lines("phi", &phi.form));
    table.extend(form_lines("phi_plus", &phi.plus));
    table.extend(form_lines("phi_minus", &phi.minus));
    table.extend(checks.lines.iter().cloned());
    Ok(Outcome {
        json: json!({
            "schema": "avk-1",
            "m": a.m(),
            "d": a.d(),
            "routes": results.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
            "omega": phi.omega,
            "form": phi.form.to_json(),
            "plus": phi.plus.to_json(),
            "minus": phi.minus.to_json(),
            "inertia": {
                "plus": inertia_json(&phi.plus.inertia()),
                "minus": inertia_json(&phi.minus.inertia()),
            },
            "checks": checks.json,
        }),
        table,
        failures: checks.failures,
    })
}

fn curve_phi(model: &Path) -> Result<Outcome, Usage> {
    let m = CurveModel::from_json(&read_json(model)?).map_err(usage("model"))?;
    let phi = m.assemble_phi().map_err(usage("curve"))?;
    let phi_bar = m.assemble_phi_bar().map_err(usage("curve"))?;
    let mut table = form_lines("phi", &phi.form);
    table.extend(form_lines("phi_plus", &phi.plus));
    table.extend(form_lines("phi_minus", &phi.minus));
    table.extend(form_lines("phi_bar", &phi_bar));
    Ok(Outcome {
        json: json!({
            "schema": "avk-1",
            "k": m.k(),
            "omega": phi.omega,
            "form": phi.form.to_json(),
            "plus": phi.plus.to_json(),
            "minus": phi.minus.to_json(),
            "phi_bar": phi_bar.to_json(),
            "inertia": {
                "plus": inertia_json(&phi.plus.inertia()),
                "minus": inertia_json(&phi.minus.inertia()),
            },
        }),
        table,
        failures: vec![],
    })
}

fn curve_sharpness(model: &Path, invariants: &Path) -> Result<Outcome, Usage> {
    let m = CurveModel::from_json(&read_json(model)?).map_err(usage("model"))?;
    let ci = CurveInvariants::from_json(&read_json(invariants)?).map_err(usage("invariants"))?;
    let mut checks = Checks::default();
    for line in &milnor_pluecker_validate(&ci).lines {
        checks.push(
            &line.id,
            line.pass(),
            format!("{} = {}", display_rat(&line.lhs), display_rat(&line.rhs)),
        );
    }
    let sharp = sharpness_check(&m, &ci).map_err(usage("curve"))?;
    checks.push(
        "radical:plus",
        sharp.plus_matches(),
        format!("rank {} expected {}", sharp.plus_radical, sharp.expected),
    );
    checks.push(
        "radical:minus",
        sharp.minus_matches(),
        format!("rank {} expected {}", sharp.minus_radical, sharp.expected),
    );
    let phi = m.assemble_phi().map_err(usage("curve"))?;
    let mut gaps = Vec::new();
    for (eps, word) in [(1i8, "plus"), (-1, "minus")] {
        let g = gap_breakdown(&ci, eps, &phi);
        checks.push(
            &format!("gap:{word}"),
            g.sum_matches_total(),
            format!(
                "Δ₊ = {}, Δ₋ = {}, Δ₀ = {}, total {}",
                display_rat(&g.delta_plus),
                display_rat(&g.delta_minus),
                display_rat(&g.delta_zero),
                display_rat(&g.delta_total)
            ),
        );
        gaps.push(json!({
            "side": word,
            "inertia": inertia_json(&g.inertia),
            "delta_plus": display_rat(&g.delta_plus),
            "delta_minus": display_rat(&g.delta_minus),
            "delta_zero": display_rat(&g.delta_zero),
            "delta_total": display_rat(&g.delta_total),
        }));
    }
    Ok(Outcome {
        json: json!({
            "schema": "avk-1",
            "expected_radical": sharp.expected,
            "radical": {"plus": sharp.plus_radical, "minus": sharp.minus_radical},
            "gaps": gaps,
            "checks": checks.json,
        }),
        table: checks.lines.clone(),
        failures: checks.failures,
    })
}

fn bounds_cmd(args: &BoundsArgs) -> Result<Outcome, Usage> {
    let mut iv =
        InvariantBundle::from_json(&read_json(&args.invariants)?).map_err(usage("invariants"))?;
    if let Some(path) = &args.lhs_from {
        let v = read_json(path)?;
        let key = match args.side {
            Side::Plus => "plus",
            Side::Minus => "minus",
        };
        let block = v.get(key).ok_err(format!(
            "--lhs-from file has no `{key}` block; expected the JSON printed by `avk arrangement phi` or `avk curve phi`"
        ))?;
        let f = SymmetricForm::from_json(block).map_err(usage("lhs-from"))?;
        let i = f.inertia();
        for (k, n) in [
            ("sigma_plus", i.plus),
            ("sigma_minus", i.minus),
            ("sigma_zero", i.zero),
        ] {
            iv.set(k, rat(n as i64)).map_err(usage("lhs-from"))?;
        }
    }
    let mut sections = Vec::new();
    for token in args.which.split(',') {
        let token = token.trim();
        let report: BoundsReport = if let Some(id) = token.strip_prefix("arnold-viro:") {
            let variant = AvVariant::parse(id).map_err(usage("bounds"))?;
            arnold_viro_rhs(variant, &iv).map_err(usage("bounds"))?
        } else {
            match token {
                "petrovskii" => petrovskii_general(&iv).map_err(usage("bounds"))?,
                "smith" => smith_rhs(&iv).map_err(usage("bounds"))?,
                "hodge" => hodge_identities(&iv).map_err(usage("bounds"))?,
                "cuspidal" => cuspidal_bounds(&iv).map_err(usage("bounds"))?,
                _ => {
                    return Err(Usage(format!(
                        "unknown selector `{token}`; expected arnold-viro:<id>, petrovskii, \
                         smith, hodge, or cuspidal"
                    )))
                }
            }
        };
        sections.push((token.to_string(), report));
    }
    let mut table = Vec::new();
    let mut failures = Vec::new();
    let mut sections_json = Vec::new();
    for (which, report) in &sections {
        table.push(format!("[{which}]"));
        for row in &report.rows {
            let mark = match row.verdict() {
                Some(true) => "ok  ",
                Some(false) => "FAIL",
                None => " -  ",
            };
            let lhs = row
                .lhs
                .as_ref()
                .map(|x| display_rat(x))
                .unwrap_or_else(|| "?".into());
            let slack = row
                .slack()
                .map(|s| format!(" (slack {})", display_rat(&s)))
                .unwrap_or_default();
            table.push(format!(
                "{mark} {}: {lhs} {} {}{slack}",
                row.id,
                row.relation.symbol(),
                display_rat(&row.rhs)
            ));
        }
        failures.extend(report.failures().iter().map(|r| r.id.clone()));
        sections_json.push(json!({"which": which, "report": report.to_json()}));
    }
    let all_hold = failures.is_empty();
    Ok(Outcome {
        json: json!({
            "schema": "avk-1",
            "sections": sections_json,
            "all_hold": all_hold,
        }),
        table,
        failures,
    })
}

fn selftest(suite: &str) -> Result<Outcome, Usage> {
    if suite != "table54" {
        return Err(Usage(format!(
            "unknown suite `{suite}`; the built-in suite is `table54`"
        )));
    }
    let mut checks = Checks::default();
    for e in catalog_entries() {
        let id = format!("table54:{}", e.name);
        if let Err(err) = e.diagram.validate(e.mu) {
            checks.push(&id, false, format!("diagram validation: {err}"));
            continue;
        }
        match e.diagram.boundary_residue() {
            Err(err) => checks.push(&id, false, format!("residue failed: {err}")),
            Ok(res) => {
                let block = match e.expected_block {
                    Block::Plus => &res.q_plus,
                    Block::Minus => &res.q_minus,
                };
                let congruent = block.signed_perm_congruent(&e.expected_m).is_some();
                checks.push(
                    &id,
                    congruent,
                    format!("germ {}, μ = {}, dim {}", e.germ, e.mu, e.expected_m.dim()),
                );
            }
        }
    }
    let total = catalog_entries().len();
    let failed = checks.failures.len();
    let mut table = checks.lines.clone();
    table.push(format!("{} entries, {} failing", total, failed));
    Ok(Outcome {
        json: json!({
            "schema": "avk-1",
            "suite": "table54",
            "entries": total,
            "failing": failed,
            "checks": checks.json,
        }),
        table,
        failures: checks.failures,
    })
}

/// Option::ok_or with a lazily formatted usage message.
trait OkErr<T> {
    fn ok_err(self, msg: String) -> Result<T, Usage>;
}

impl<T> OkErr<T> for Option<T> {
    fn ok_err(self, msg: String) -> Result<T, Usage> {
        self.ok_or(Usage(msg))
    }
}
