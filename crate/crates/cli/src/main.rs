//! `semigroupoid`: validate, analyze and transform structure files.
//!
//! Exit codes: 0 on success, 1 when a structure fails validation or a
//! check (the report goes to standard output), 2 on I/O, parse or usage
//! errors.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};

use semigroupoid::action::PartialAction;
use semigroupoid::congruence::is_e_unitary;
use semigroupoid::dot;
use semigroupoid::enumerate::enumerate_inverse_semigroupoids;
use semigroupoid::fixtures;
use semigroupoid::format::{self, action_doc, semigroupoid_doc, FormatError, Structure};
use semigroupoid::globalization::globalize;
use semigroupoid::inverse::InverseSemigroupoid;
use semigroupoid::poset::Semilatticeoid;
use semigroupoid::ptheorem::{mcalister_from_action, munn_action, ptheorem_isomorphism, semidirect_product};
use semigroupoid::random::{rng, small_order_ideals};
use semigroupoid::report;

#[derive(Parser)]
#[command(name = "semigroupoid", version, about = "Finite inverse semigroupoids and their ordered partial actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Diagram {
    /// Objects and arrows.
    Graph,
    /// Hasse diagram of the order.
    Order,
}

#[derive(Args)]
struct Io {
    /// Structure file to read; standard input when absent or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Where to write the result; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a structure file and check its axioms.
    Validate(Io),
    /// Idempotents, natural order, σ, S/σ and the E-unitary certificate.
    Analyze {
        #[command(flatten)]
        io: Io,
        /// Also run every cross-check.
        #[arg(long)]
        verify_all: bool,
    },
    /// Globalize an action file, or a random restriction of the Munn action
    /// of a semigroupoid file when `--seed` is given.
    Globalize {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        verify_all: bool,
    },
    /// The Munn action of an inverse semigroupoid on its idempotents.
    Munn(Io),
    /// The semidirect product of an ordered action on a semilatticeoid.
    Semidirect(Io),
    /// Check a triple file, or build the triple of a groupoid action file.
    Triple(Io),
    /// The isomorphism onto S/σ ⋉ E(S) for an E-unitary semigroupoid.
    Ptheorem {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        verify_all: bool,
    },
    /// All inverse semigroupoids up to isomorphism within the given bounds.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        max_arrows: usize,
        /// Defaults to `--max-arrows`.
        #[arg(long)]
        max_objects: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        verify_all: bool,
    },
    /// Graphviz output for any structure file.
    ExportDot {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Diagram::Graph)]
        diagram: Diagram,
    },
    /// Write a built-in example as a semigroupoid file.
    Fixture {
        /// One of trivial, chain2, b2, z2, z3, pair2, pair3, discrete2,
        /// semilatticeoid, sa-chain2, jpi-2.
        name: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    /// Exit 2.
    Input(anyhow::Error),
    /// Exit 1, with a report on standard output.
    Invalid(Value),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn invalid(kind: &str, error: impl ToString) -> Failure {
    Failure::Invalid(json!({ "valid": false, "kind": kind, "error": error.to_string() }))
}

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            Ok(fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?)
        }
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).context("cannot read standard input")?;
            Ok(text)
        }
    }
}

fn classify(kind: &str, e: FormatError) -> Failure {
    if e.is_parse_error() {
        Failure::Input(anyhow::Error::new(e).context("cannot parse structure file"))
    } else {
        invalid(kind, e)
    }
}

fn read_structure(path: &Option<PathBuf>) -> CliResult<Structure> {
    let text = read_input(path)?;
    let kind = format::parse_document(&text).map(|d| d.kind()).unwrap_or("unknown");
    format::parse(&text).map_err(|e| classify(kind, e))
}

fn wrong_kind(expected: &str, found: &Structure) -> Failure {
    Failure::Input(anyhow::anyhow!("expected a {expected} file, found a {} file", found.kind()))
}

fn read_inverse(path: &Option<PathBuf>) -> CliResult<InverseSemigroupoid> {
    match read_structure(path)? {
        Structure::Semigroupoid(s) => InverseSemigroupoid::new(s).map_err(|e| invalid("semigroupoid", e)),
        other => Err(wrong_kind("semigroupoid", &other)),
    }
}

fn read_action(path: &Option<PathBuf>) -> CliResult<PartialAction> {
    match read_structure(path)? {
        Structure::Action(a) => Ok(a),
        other => Err(wrong_kind("action", &other)),
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> CliResult<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
        None => io::stdout().write_all(text.as_bytes()).context("cannot write standard output")?,
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn checks_value(checks: &[report::Check]) -> (Value, bool) {
    let all = checks.iter().all(|c| c.passed);
    (serde_json::to_value(checks).expect("checks serialize"), all)
}

fn validate(io: &Io) -> CliResult<()> {
    let text = read_input(&io.input)?;
    let doc = format::parse_document(&text).map_err(|e| classify("unknown", e))?;
    if let format::StructureFile::Action(_) = doc {
        // Report both axiom sets for actions.
        let family = format::parse_action_family(&text).map_err(|e| classify("action", e))?;
        let (e, p) = (family.validate_e(), family.validate_p());
        let report = json!({
            "valid": e.is_ok(),
            "kind": "action",
            "e_axioms": e.as_ref().err().map(ToString::to_string),
            "p_axioms": p.as_ref().err().map(ToString::to_string),
        });
        return if e.is_ok() && p.is_ok() {
            write_output(&io.output, &pretty(&report))
        } else {
            Err(Failure::Invalid(report))
        };
    }
    let structure = format::decode(&doc).map_err(|e| classify("unknown", e))?;
    let mut report = json!({ "valid": true, "kind": structure.kind() });
    if let Structure::Semigroupoid(s) = &structure {
        report["inverse"] = json!(InverseSemigroupoid::new(s.clone()).is_ok());
    }
    write_output(&io.output, &pretty(&report))
}

fn analyze(io: &Io, verify_all: bool) -> CliResult<()> {
    let s = read_inverse(&io.input)?;
    let mut value = serde_json::to_value(report::analyze(&s)).expect("report serializes");
    if verify_all {
        let (checks, ok) = checks_value(&report::cross_checks(&s));
        value["checks"] = checks;
        if !ok {
            return Err(Failure::Invalid(value));
        }
    }
    write_output(&io.output, &pretty(&value))
}

fn globalize_cmd(io: &Io, seed: Option<u64>, verify_all: bool) -> CliResult<()> {
    let input = match (seed, read_structure(&io.input)?) {
        (_, Structure::Action(a)) => a,
        (Some(seed), Structure::Semigroupoid(s)) => {
            let s = InverseSemigroupoid::new(s).map_err(|e| invalid("semigroupoid", e))?;
            let munn = munn_action(&s);
            let ideals: Vec<BTreeSet<usize>> = small_order_ideals(&munn.order_or_discrete(), munn.carrier_len())
                .into_iter()
                .filter(|i| !i.is_empty())
                .collect();
            let pick = rng(seed).gen_range(0..ideals.len());
            munn.restrict_global(&ideals[pick]).map_err(|e| invalid("action", e))?.0
        }
        (_, other) => {
            return Err(Failure::Input(anyhow::anyhow!(
                "globalize needs an action file, or a semigroupoid file with --seed (got a {} file)",
                other.kind()
            )))
        }
    };
    let g = globalize(&input).map_err(|e| invalid("action", e))?;
    if io.format == Format::Dot {
        let highlight = g.embed.iter().copied().collect();
        return write_output(&io.output, &dot::hasse(&g.eta.labels, &g.eta.order_or_discrete(), &highlight));
    }
    let mut value = serde_json::to_value(report::globalization_report(&g)).expect("report serializes");
    value["input"] = serde_json::to_value(action_doc(&input)).expect("action serializes");
    if verify_all {
        let contract = g.verify_contract();
        value["contract"] = json!(contract.as_ref().err().map(ToString::to_string).unwrap_or_else(|| "ok".into()));
        if contract.is_err() {
            return Err(Failure::Invalid(value));
        }
    }
    write_output(&io.output, &pretty(&value))
}

fn munn(io: &Io) -> CliResult<()> {
    let s = read_inverse(&io.input)?;
    let m = munn_action(&s);
    match io.format {
        Format::Json => write_output(&io.output, &format::to_json(&Structure::Action(m))),
        Format::Dot => write_output(&io.output, &dot::hasse(&m.labels, &m.order_or_discrete(), &BTreeSet::new())),
    }
}

fn semidirect(io: &Io) -> CliResult<()> {
    let action = read_action(&io.input)?;
    let order = action.order.clone().ok_or_else(|| invalid("action", "the carrier must be ordered"))?;
    let x = Semilatticeoid::from_poset(&order).map_err(|e| invalid("action", e))?;
    let p = semidirect_product(&action, &x).map_err(|e| invalid("action", e))?;
    let product = p.product.base().clone();
    match io.format {
        Format::Json => write_output(&io.output, &format::to_json(&Structure::Semigroupoid(product))),
        Format::Dot => write_output(&io.output, &dot::object_graph(&product)),
    }
}

fn triple(io: &Io) -> CliResult<()> {
    match read_structure(&io.input)? {
        Structure::Triple(t) => {
            let p = t.p_semigroupoid().map_err(|e| invalid("triple", e))?;
            let e_unitary = is_e_unitary(&p.product).map_err(|e| invalid("triple", e))?.e_unitary;
            let value = json!({
                "valid": true,
                "groupoid_arrows": t.groupoid().len(),
                "poset_size": t.poset().len(),
                "ideal": t.ideal,
                "e_unitary": e_unitary,
                "p_semigroupoid": semigroupoid_doc(p.product.base()),
            });
            write_output(&io.output, &pretty(&value))
        }
        Structure::Action(a) => {
            let order = a.order.clone().ok_or_else(|| invalid("action", "the carrier must be ordered"))?;
            let x = Semilatticeoid::from_poset(&order).map_err(|e| invalid("action", e))?;
            let (t, _) = mcalister_from_action(&a, &x).map_err(|e| invalid("action", e))?;
            write_output(&io.output, &format::to_json(&Structure::Triple(t)))
        }
        other => Err(wrong_kind("triple or action", &other)),
    }
}

fn ptheorem(io: &Io, verify_all: bool) -> CliResult<()> {
    let s = read_inverse(&io.input)?;
    let cert = is_e_unitary(&s).map_err(|e| invalid("semigroupoid", e))?;
    if !cert.e_unitary {
        let name = |a: usize| s.base().arrow_name(a).to_string();
        return Err(Failure::Invalid(json!({
            "e_unitary": false,
            "witness": cert.witness.map(|(e, t)| (name(e), name(t))),
        })));
    }
    let r = ptheorem_isomorphism(&s).map_err(|e| invalid("semigroupoid", e))?;
    let mut value = serde_json::to_value(report::ptheorem_report(&s, &r)).expect("report serializes");
    if verify_all {
        let (checks, ok) = checks_value(&report::cross_checks(&s));
        value["checks"] = checks;
        if !ok {
            return Err(Failure::Invalid(value));
        }
    }
    write_output(&io.output, &pretty(&value))
}

fn enumerate(
    max_arrows: usize,
    max_objects: Option<usize>,
    output: &Option<PathBuf>,
    verify_all: bool,
) -> CliResult<()> {
    let all = enumerate_inverse_semigroupoids(max_arrows, max_objects.unwrap_or(max_arrows))
        .map_err(|e| Failure::Input(e.into()))?;
    let mut value = json!({
        "count": all.len(),
        "structures": all.iter().map(|s| semigroupoid_doc(s.base())).collect::<Vec<_>>(),
    });
    if verify_all {
        let mut failures = Vec::new();
        for (k, s) in all.iter().enumerate() {
            for c in report::cross_checks(s).into_iter().filter(|c| !c.passed) {
                failures.push(json!({ "structure": k, "check": c.name }));
            }
        }
        let ok = failures.is_empty();
        value["failed_checks"] = Value::Array(failures);
        if !ok {
            return Err(Failure::Invalid(value));
        }
    }
    write_output(output, &pretty(&value))
}

fn export_dot(input: &Option<PathBuf>, output: &Option<PathBuf>, diagram: Diagram) -> CliResult<()> {
    let none = BTreeSet::new();
    let text = match (read_structure(input)?, diagram) {
        (Structure::Semigroupoid(s), Diagram::Graph) => dot::object_graph(&s),
        (Structure::Semigroupoid(s), Diagram::Order) => {
            let s = InverseSemigroupoid::new(s).map_err(|e| invalid("semigroupoid", e))?;
            dot::hasse(s.base().arrow_names(), s.order(), &none)
        }
        (Structure::Poset(p), _) => dot::hasse(&p.names, &p.poset, &none),
        (Structure::Action(a), Diagram::Graph) => dot::object_graph(a.actor.base()),
        (Structure::Action(a), Diagram::Order) => dot::hasse(&a.labels, &a.order_or_discrete(), &none),
        (Structure::Triple(t), Diagram::Graph) => dot::object_graph(t.groupoid().base()),
        (Structure::Triple(t), Diagram::Order) => dot::hasse(&t.action.labels, t.poset(), &t.ideal),
    };
    write_output(output, &text)
}

fn fixture(name: &str, output: &Option<PathBuf>) -> CliResult<()> {
    let s = fixtures::by_name(name).ok_or_else(|| {
        Failure::Input(anyhow::anyhow!("unknown fixture {name:?}; known: {}", fixtures::NAMES.join(", ")))
    })?;
    write_output(output, &format::to_json(&Structure::Semigroupoid(s.into_base())))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Validate(io) => validate(&io),
        Command::Analyze { io, verify_all } => analyze(&io, verify_all),
        Command::Globalize { io, seed, verify_all } => globalize_cmd(&io, seed, verify_all),
        Command::Munn(io) => munn(&io),
        Command::Semidirect(io) => semidirect(&io),
        Command::Triple(io) => triple(&io),
        Command::Ptheorem { io, verify_all } => ptheorem(&io, verify_all),
        Command::Enumerate { max_arrows, max_objects, output, verify_all } => {
            enumerate(max_arrows, max_objects, &output, verify_all)
        }
        Command::ExportDot { input, output, diagram } => export_dot(&input, &output, diagram),
        Command::Fixture { name, output } => fixture(&name, &output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(report)) => {
            println!("{}", pretty(&report));
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
