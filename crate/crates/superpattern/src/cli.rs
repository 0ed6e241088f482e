//! The `superpattern` command line.
//!
//! Exit codes: `0` success, `1` a verification check failed, `2` bad input
//! (usage, parse, validation or cap errors). Errors are reported on stderr
//! as one JSON object `{"error": {"kind": ..., "message": ...}}`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use superpattern_core::hopf::{
    antipode_chi, antipode_delta_subgroup, antipode_takeuchi, coproduct, is_atomic_pair, primitive_generator,
    primitive_generator_closed_form, product, restriction_general,
};
use superpattern_core::lattice::{coideal_of, full_lattice, join_irreducible, lbl_ch, lbl_cl, meet_irreducible};
use superpattern_core::nonnesting::{count_nn, enumerate_nn};
use superpattern_core::supercharacter::determinant_report;
use superpattern_core::{Atom, AtomSet, Basis, BasisKey, CharacterData, NNPartition, Poset, SpeciesElement};

use crate::config::{parse_caps, parse_primes, parse_q, ConfigError, OutputFormat, RunConfig};
use crate::format::{
    decode_label, encode_pairs, read_json_arg, read_poset, render_rows, table_csv, to_json, ClassFunctionJson,
    DeterminantJson, FormatError, Label, PairsJson, PosetJson, QMode, SpeciesJson, TableJson, TensorJson,
};
use crate::verify::{run_suite, Scope, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "superpattern",
    version,
    about = "Supercharacters of pattern groups and the non-nesting poset-partition Hopf monoid"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format (json or csv; csv applies to `enumerate` and `table`).
    #[arg(long, global = true, default_value = "json")]
    pub format: String,
    /// Evaluate every scalar at this rational q ≥ 2 instead of printing it symbolically.
    #[arg(long, global = true)]
    pub q: Option<String>,
    /// Cap overrides, e.g. `partitions=1000,compositions=50000`; takes precedence over SUPERPATTERN_CAPS.
    #[arg(long, global = true)]
    pub caps: Option<String>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List (or count) the non-nesting partitions of a poset.
    Enumerate {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Co-ideals of Int°(R) with their labels, and the irreducible co-ideals.
    Lattice {
        #[arg(long)]
        poset: String,
    },
    /// Supercharacter table with its determinant computed both ways.
    Table {
        #[arg(long)]
        poset: String,
    },
    /// Restriction of χ^λ from UT_R to UT_Q in the χ basis of Q.
    Restrict {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        subposet: String,
        #[arg(long)]
        label: String,
    },
    /// Product of two species elements on disjoint atoms.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Coproduct Δ_{S,T} with S given and T its complement.
    Coproduct {
        #[arg(long)]
        element: String,
        /// JSON list of the atoms in S.
        #[arg(long)]
        split: String,
    },
    /// Antipode of χ^λ or of δ_{UT_Q}.
    Antipode {
        #[arg(long)]
        poset: String,
        #[arg(long, value_enum)]
        basis: AntipodeBasis,
        /// Label of χ^λ (chi basis); defaults to the empty partition.
        #[arg(long)]
        label: Option<String>,
        /// Normal subposet Q (delta-subgroup basis); defaults to the poset itself.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, value_enum, default_value = "takeuchi")]
        method: Method,
    },
    /// Primitive generators attached to an atomic normal pair (R, Q).
    Primitives {
        #[arg(long)]
        poset: String,
        /// Defaults to the poset itself.
        #[arg(long)]
        subgroup: Option<String>,
        /// Restrict to one atom; defaults to every atom.
        #[arg(long)]
        atom: Option<String>,
        #[arg(long, value_enum, default_value = "takeuchi")]
        method: Method,
    },
    /// Run verification suites over all labeled posets up to a size.
    Verify {
        /// Comma-separated suites; defaults to all of them.
        #[arg(long, default_value = "axioms,bases,restriction,hopf,antipode,catalan")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_atoms: u32,
        #[arg(long, default_value = "2,3")]
        primes: String,
        /// Random posets on max-atoms + 1 atoms added to every check.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AntipodeBasis {
    #[value(name = "delta-subgroup")]
    DeltaSubgroup,
    Chi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Takeuchi,
    #[value(name = "closed-form")]
    ClosedForm,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] superpattern_core::Error),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Config(_) => "config",
            CliError::Format(FormatError::Core(e)) | CliError::Core(e) => core_kind(e),
            CliError::Format(FormatError::Io { .. }) => "io",
            CliError::Format(_) => "parse",
            CliError::Output(_) => "io",
        }
    }
}

fn core_kind(e: &superpattern_core::Error) -> &'static str {
    use superpattern_core::Error as E;
    match e {
        E::SizeCap { .. } | E::TooManyAtoms(..) => "cap",
        E::Parse(_) => "parse",
        _ => "invalid",
    }
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

fn report_error(err: &mut dyn Write, kind: &str, message: String) {
    let body = ErrorJson {
        error: ErrorBody { kind, message },
    };
    let _ = writeln!(err, "{}", serde_json::to_string(&body).unwrap_or_default());
}

/// Parses `argv` (program name first) and runs the command, returning the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            report_error(err, "usage", e.to_string().trim_end().to_owned());
            return 2;
        }
    };
    match execute(&cli, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            report_error(err, e.kind(), e.to_string());
            2
        }
    }
}

fn config(g: &GlobalArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::from_env()?;
    if let Some(spec) = &g.caps {
        cfg.caps = parse_caps(spec, cfg.caps)?;
    }
    if let Some(q) = &g.q {
        cfg.q = QMode::Concrete(parse_q(q)?);
    }
    cfg.format = g.format.parse()?;
    cfg.seed = g.seed;
    Ok(cfg)
}

fn read_label(r: &Poset, arg: &str) -> Result<NNPartition, CliError> {
    Ok(decode_label(r, &read_json_arg::<PairsJson>(arg)?)?)
}

#[derive(Serialize)]
struct CoIdealJson {
    members: PairsJson,
    /// `lbl_cl`: minimal members.
    label_cl: PairsJson,
    /// `lbl_ch`: maximal non-members.
    label_ch: PairsJson,
    order: String,
}

#[derive(Serialize)]
struct IrreducibleJson {
    interval: [Label; 2],
    members: PairsJson,
}

#[derive(Serialize)]
struct LatticeJson {
    poset: PosetJson,
    coideals: Vec<CoIdealJson>,
    meet_irreducibles: Vec<IrreducibleJson>,
    join_irreducibles: Vec<IrreducibleJson>,
}

#[derive(Serialize)]
struct GeneratorJson {
    atom: Label,
    generator: SpeciesJson,
}

/// Returns `Ok(false)` only when a verification check fails.
fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    let cfg = config(&cli.global)?;
    let caps = &cfg.caps;
    let q = &cfg.q;
    match &cli.command {
        Command::Enumerate { poset, count_only } => {
            let r = read_poset(poset)?;
            if *count_only {
                writeln!(out, "{}", count_nn(&r)?)?;
                return Ok(true);
            }
            let labels = enumerate_nn(&r, caps.partitions)?;
            match cfg.format {
                OutputFormat::Json => {
                    let list: Vec<PairsJson> = labels.iter().map(|l| encode_pairs(l.arcs())).collect();
                    out.write_all(to_json(&list)?.as_bytes())?;
                }
                OutputFormat::Csv => {
                    writeln!(out, "label")?;
                    for l in &labels {
                        let s = crate::format::label_string(l);
                        writeln!(out, "\"{}\"", s.replace('"', "\"\""))?;
                    }
                }
            }
        }
        Command::Lattice { poset } => {
            let r = read_poset(poset)?;
            let coideals = full_lattice(&r, caps.partitions)?
                .iter()
                .map(|n| {
                    Ok(CoIdealJson {
                        members: encode_pairs(n.members()),
                        label_cl: encode_pairs(lbl_cl(n).arcs()),
                        label_ch: encode_pairs(lbl_ch(n).arcs()),
                        order: q.render(&n.order().value())?,
                    })
                })
                .collect::<Result<_, FormatError>>()?;
            let irreducibles = |f: fn(&Poset, &superpattern_core::Interval) -> superpattern_core::Result<_>| {
                r.proper_intervals()
                    .iter()
                    .map(|iv| {
                        let n: superpattern_core::CoIdeal = f(&r, iv)?;
                        Ok(IrreducibleJson {
                            interval: [(&iv.lo).into(), (&iv.hi).into()],
                            members: encode_pairs(n.members()),
                        })
                    })
                    .collect::<superpattern_core::Result<Vec<_>>>()
            };
            let json = LatticeJson {
                poset: PosetJson::encode(&r),
                coideals,
                meet_irreducibles: irreducibles(meet_irreducible)?,
                join_irreducibles: irreducibles(join_irreducible)?,
            };
            out.write_all(to_json(&json)?.as_bytes())?;
        }
        Command::Table { poset } => {
            let r = read_poset(poset)?;
            let d = CharacterData::new(&r, caps.partitions)?;
            let rows = render_rows(&d.table(), q)?;
            match cfg.format {
                OutputFormat::Json => {
                    let json = TableJson {
                        poset: PosetJson::encode(&r),
                        labels: d.labels().iter().map(|l| encode_pairs(l.arcs())).collect(),
                        rows,
                        determinant: Some(DeterminantJson::encode(&determinant_report(&r, caps.partitions)?, q)?),
                    };
                    out.write_all(to_json(&json)?.as_bytes())?;
                }
                OutputFormat::Csv => out.write_all(table_csv(d.labels(), &rows)?.as_bytes())?,
            }
        }
        Command::Restrict { poset, subposet, label } => {
            let r = read_poset(poset)?;
            let sub = read_poset(subposet)?;
            let lambda = read_label(&r, label)?;
            let res = restriction_general(&r, &sub, &lambda)?;
            out.write_all(to_json(&ClassFunctionJson::encode(&res, q)?)?.as_bytes())?;
        }
        Command::Product { left, right } => {
            let x = read_json_arg::<SpeciesJson>(left)?.decode()?;
            let y = read_json_arg::<SpeciesJson>(right)?.decode()?;
            let xy = product(&x, &y, caps)?;
            out.write_all(to_json(&SpeciesJson::encode(&xy, q)?)?.as_bytes())?;
        }
        Command::Coproduct { element, split } => {
            let x = read_json_arg::<SpeciesJson>(element)?.decode()?;
            let s: AtomSet = read_json_arg::<Vec<Label>>(split)?
                .iter()
                .map(|l| Atom::new(&l.0))
                .collect();
            let t: AtomSet = x.ground().difference(&s).cloned().collect();
            let d = coproduct(&x, &s, &t)?;
            out.write_all(to_json(&TensorJson::encode(&d, q)?)?.as_bytes())?;
        }
        Command::Antipode {
            poset,
            basis,
            label,
            subgroup,
            method,
        } => {
            let r = read_poset(poset)?;
            let s = match basis {
                AntipodeBasis::Chi => {
                    if subgroup.is_some() {
                        return Err(CliError::Usage("--subgroup applies to the delta-subgroup basis".into()));
                    }
                    let lambda = match label {
                        Some(l) => read_label(&r, l)?,
                        None => NNPartition::empty(),
                    };
                    match method {
                        Method::ClosedForm => antipode_chi(&r, &lambda, caps)?,
                        Method::Takeuchi => {
                            let x = SpeciesElement::basis_vector(Basis::Chi, BasisKey::new(r, lambda)?);
                            antipode_takeuchi(&x, caps)?
                        }
                    }
                }
                AntipodeBasis::DeltaSubgroup => {
                    if label.is_some() {
                        return Err(CliError::Usage("--label applies to the chi basis".into()));
                    }
                    let sub = match subgroup {
                        Some(s) => read_poset(s)?,
                        None => r.clone(),
                    };
                    let key = BasisKey {
                        label: lbl_ch(&coideal_of(&r, &sub)?),
                        ambient: r,
                    };
                    match method {
                        Method::ClosedForm => antipode_delta_subgroup(&sub, caps)?,
                        Method::Takeuchi => {
                            antipode_takeuchi(&SpeciesElement::basis_vector(Basis::SubgroupDelta, key), caps)?
                        }
                    }
                }
            };
            out.write_all(to_json(&SpeciesJson::encode(&s, q)?)?.as_bytes())?;
        }
        Command::Primitives {
            poset,
            subgroup,
            atom,
            method,
        } => {
            let r = read_poset(poset)?;
            let sub = match subgroup {
                Some(s) => read_poset(s)?,
                None => r.clone(),
            };
            coideal_of(&r, &sub)?;
            if !is_atomic_pair(&r, &sub)? {
                return Err(superpattern_core::Error::NotAtomic.into());
            }
            let atoms: Vec<Atom> = match atom {
                Some(a) => vec![Atom::new(a)],
                None => r.atoms().to_vec(),
            };
            let mut list = Vec::with_capacity(atoms.len());
            for a in &atoms {
                let g = match method {
                    Method::Takeuchi => primitive_generator(a, &r, &sub, caps)?,
                    Method::ClosedForm => primitive_generator_closed_form(a, &sub, caps)?,
                };
                list.push(GeneratorJson {
                    atom: a.into(),
                    generator: SpeciesJson::encode(&g, q)?,
                });
            }
            out.write_all(to_json(&list)?.as_bytes())?;
        }
        Command::Verify {
            suite,
            max_atoms,
            primes,
            samples,
        } => {
            let suites = suite
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::parse::<Suite>)
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::Usage)?;
            if *max_atoms == 0 || *max_atoms > 5 {
                return Err(CliError::Usage(format!("--max-atoms must be between 1 and 5, got {max_atoms}")));
            }
            let mut scope = Scope::new(*max_atoms, &parse_primes(primes)?);
            scope.caps = *caps;
            scope.samples = *samples;
            scope.seed = cfg.seed;
            let mut ok = true;
            for s in suites {
                for rep in run_suite(s, &scope) {
                    writeln!(out, "{s}: {rep}")?;
                    for f in rep.failures.iter().take(10) {
                        writeln!(out, "    {f}")?;
                    }
                    if rep.failures.len() > 10 {
                        writeln!(out, "    ... {} more", rep.failures.len() - 10)?;
                    }
                    ok &= rep.passed();
                }
            }
            if !ok {
                report_error(err, "verification", "at least one check failed".into());
            }
            return Ok(ok);
        }
    }
    Ok(true)
}
