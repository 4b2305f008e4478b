//! Command-line front end: reads JSON documents, runs the library, writes JSON.

pub mod document;

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use morgan_unify::duality::{demorgan_dual, demorgan_from_dual, downset_algebra, join_irreducibles};
use morgan_unify::involutive::{diamond, kleene_part, power, InvPoset};
use morgan_unify::projectivity::{
    build_retraction, canonical_embedding, has_retraction, is_projective_dual, lattice_oracle, pruned_embedding,
    Embedding, Verdict, MAX_POWER,
};
use morgan_unify::unification::{
    classify, core_of, enumerate_unifiers_bounded, witness_family, Certificate, Family, Structure, Unifier, Variety,
};
use morgan_unify::Error;
use serde_json::{json, Value};

use document::{Document, Mode, Parsed};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("malformed document: {0}")]
    Json(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Precondition(_) | Error::VarietyMismatch(_)) => 3,
            CliError::Core(Error::SizeGuard { .. }) => 4,
            CliError::Core(Error::Internal(_)) => 5,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Json(_) => "document",
            CliError::Core(e) => match e {
                Error::DuplicateElement(_) => "duplicate_element",
                Error::UnknownElement(_) => "unknown_element",
                Error::Antisymmetry { .. } => "antisymmetry",
                Error::NotTotal(_) => "not_total",
                Error::OutsideCodomain { .. } => "outside_codomain",
                Error::NotInvolutive(_) => "not_involutive",
                Error::NotAntitone { .. } => "not_antitone",
                Error::NotMonotone { .. } => "not_monotone",
                Error::InvolutionNotPreserved(_) => "involution_not_preserved",
                Error::EmptyCarrier => "empty_carrier",
                Error::NotALattice(..) => "not_a_lattice",
                Error::NotDistributive(..) => "not_distributive",
                Error::OperationNotPreserved { .. } => "operation_not_preserved",
                Error::VarietyMismatch(_) => "variety_mismatch",
                Error::Precondition(_) => "precondition",
                Error::SizeGuard { .. } => "size_guard",
                Error::Internal(_) => "internal",
            },
        }
    }

    fn witness(&self) -> Vec<String> {
        let CliError::Core(e) = self else { return Vec::new() };
        match e {
            Error::DuplicateElement(a)
            | Error::UnknownElement(a)
            | Error::NotTotal(a)
            | Error::NotInvolutive(a)
            | Error::InvolutionNotPreserved(a) => vec![a.clone()],
            Error::OutsideCodomain { element } => vec![element.clone()],
            Error::Antisymmetry { cycle } => cycle.clone(),
            Error::NotAntitone { lower, upper } | Error::NotMonotone { lower, upper } => vec![lower.clone(), upper.clone()],
            Error::NotALattice(a, b) => vec![a.clone(), b.clone()],
            Error::NotDistributive(a, b, c) => vec![a.clone(), b.clone(), c.clone()],
            Error::OperationNotPreserved { args, .. } => args.clone(),
            _ => Vec::new(),
        }
    }

    /// The JSON error report.
    pub fn report(&self) -> Value {
        json!({"error": {"kind": self.kind(), "message": self.to_string(), "witness": self.witness()}})
    }
}

#[derive(Parser, Debug)]
#[command(name = "morgan-unify", version, about = "Duality, projectivity and unification type for finite distributive, De Morgan and Kleene algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    ToDual,
    ToAlgebra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VarietyArg {
    Bdl,
    Kleene,
    Dm,
}

impl From<VarietyArg> for Variety {
    fn from(v: VarietyArg) -> Variety {
        match v {
            VarietyArg::Bdl => Variety::Bdl,
            VarietyArg::Kleene => Variety::Kleene,
            VarietyArg::Dm => Variety::DeMorgan,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Bdl,
    K1,
    K2,
    M1,
    M2,
    M3,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Bdl => Family::Bdl,
            FamilyArg::K1 => Family::K1,
            FamilyArg::K2 => Family::K2,
            FamilyArg::M1 => Family::M1,
            FamilyArg::M2 => Family::M2,
            FamilyArg::M3 => Family::M3,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    Retraction,
    Unifiers,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a document and print its canonical form.
    Validate { file: String },
    /// Pass between an algebra and its dual.
    Dualize {
        file: String,
        #[arg(long, value_enum)]
        direction: Direction,
    },
    /// The dual of the free algebra on n generators.
    Free {
        #[arg(long, value_enum)]
        variety: VarietyArg,
        #[arg(long)]
        n: usize,
    },
    /// Decide projectivity and report each condition with its witness.
    Projective {
        file: String,
        #[arg(long, value_enum)]
        variety: VarietyArg,
    },
    /// Classify the unification type of an instance.
    Classify {
        file: String,
        #[arg(long, value_enum)]
        variety: VarietyArg,
    },
    /// The unification core of an involutive instance.
    Core {
        file: String,
        #[arg(long, value_enum)]
        variety: VarietyArg,
    },
    /// The domain T_n of a null-pattern unifier family.
    Witness {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Also print where each element is sent.
        #[arg(long)]
        schema: bool,
    },
    /// Embed an involutive poset into a power of D.
    Embed {
        file: String,
        /// Drop redundant coordinates.
        #[arg(long)]
        prune: bool,
    },
    /// Build the retraction of a power of D onto an embedded projective dual.
    Retract {
        file: String,
        #[arg(long, value_enum)]
        variety: VarietyArg,
    },
    /// Run an exhaustive oracle.
    Oracle {
        file: String,
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, value_enum)]
        variety: Option<VarietyArg>,
    },
}

/// Exit code and the text written to standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json(code: i32, v: &Value) -> Outcome {
        Outcome { code, stdout: format!("{v}\n"), stderr: String::new() }
    }
}

/// Runs one command line. `argv[0]` is the program name.
pub fn run_cli<I, T>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return Outcome { code, stdout: String::new(), stderr: e.render().to_string() };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(out) => out,
        Err(e) => Outcome { code: e.exit_code(), stdout: format!("{}\n", e.report()), stderr: format!("error: {e}\n") },
    }
}

fn read_document(file: &str, stdin: &mut dyn Read) -> Result<Document, CliError> {
    let mut text = String::new();
    if file == "-" {
        stdin.read_to_string(&mut text).map_err(|e| CliError::Io(e.to_string()))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| CliError::Io(format!("{file}: {e}")))?;
    }
    Document::parse(&text)
}

fn read_structure(file: &str, stdin: &mut dyn Read) -> Result<Structure, CliError> {
    read_document(file, stdin)?.validate()?.structure()
}

fn read_inv(file: &str, stdin: &mut dyn Read) -> Result<InvPoset, CliError> {
    match read_structure(file, stdin)? {
        Structure::Involutive(q) => Ok(q),
        Structure::Plain(_) => Err(CliError::Usage("this command needs an involutive poset".into())),
    }
}

fn names(p: &morgan_unify::order::Poset, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| p.name(x).to_string()).collect()
}

fn verdict(p: &morgan_unify::order::Poset, v: &Verdict) -> Value {
    match v {
        Verdict::Holds => json!({"holds": true}),
        Verdict::Fails(w) => json!({"holds": false, "witness": names(p, w)}),
        Verdict::NotApplicable => json!({"holds": null}),
    }
}

fn unifier(u: &Unifier) -> Value {
    let (dom, cod) = (u.domain(), u.codomain());
    let map: Vec<[&str; 2]> = dom.base().elements().map(|x| [dom.base().name(x), cod.base().name(u.map()[x])]).collect();
    json!({"domain": Document::structure(&dom, Mode::Covers).to_json(), "map": map})
}

fn embedding(e: &Embedding) -> Value {
    let p = e.source();
    let points: Vec<[String; 2]> = p.elements().map(|x| [p.name(x).to_string(), e.label(x)]).collect();
    json!({"n": e.n(), "coordinates": names(p.base(), e.coordinates()), "points": points})
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let ok = |v: Value| Ok(Outcome::json(0, &v));
    match command {
        Command::Validate { file } => ok(read_document(&file, stdin)?.canonical()?.to_json()),
        Command::Dualize { file, direction } => {
            let parsed = read_document(&file, stdin)?.validate()?;
            let doc = match (direction, parsed) {
                (Direction::ToDual, Parsed::Algebra(a)) if a.neg().is_some() => {
                    Document::invposet(&demorgan_dual(&a)?, Mode::Covers)
                }
                (Direction::ToDual, Parsed::Algebra(a)) => Document::poset(&join_irreducibles(&a), Mode::Covers),
                (Direction::ToAlgebra, Parsed::Poset(p)) => Document::algebra(&downset_algebra(&p), Mode::Covers),
                (Direction::ToAlgebra, Parsed::Inv(q)) => Document::algebra(&demorgan_from_dual(&q), Mode::Covers),
                (Direction::ToDual, _) => return Err(CliError::Usage("to-dual needs an algebra".into())),
                (Direction::ToAlgebra, _) => return Err(CliError::Usage("to-algebra needs a poset or invposet".into())),
            };
            ok(doc.to_json())
        }
        Command::Free { variety, n } => {
            if n > MAX_POWER {
                return Err(Error::SizeGuard { what: "power of D", got: n, limit: MAX_POWER }.into());
            }
            let full = power(&diamond(), n);
            let q = match variety {
                VarietyArg::Dm => full,
                VarietyArg::Kleene => kleene_part(&full),
                VarietyArg::Bdl => return Err(CliError::Usage("free supports dm and kleene".into())),
            };
            ok(Document::invposet(&q, Mode::Covers).to_json())
        }
        Command::Projective { file, variety } => {
            let s = read_structure(&file, stdin)?;
            let r = is_projective_dual(&s, variety.into())?;
            let conditions: serde_json::Map<String, Value> = r
                .report
                .entries()
                .iter()
                .filter(|(_, v)| **v != Verdict::NotApplicable)
                .map(|(k, v)| (k.to_string(), verdict(s.base(), v)))
                .collect();
            ok(json!({"variety": Variety::from(variety).tag(), "projective": r.projective, "conditions": conditions}))
        }
        Command::Classify { file, variety } => {
            let s = read_structure(&file, stdin)?;
            let c = classify(&s, variety.into())?;
            if !c.solvable {
                return Ok(Outcome::json(2, &json!({"solvable": false})));
            }
            let certificate = match c.certificate.as_ref().expect("solvable instances carry a certificate") {
                Certificate::MostGeneral(u) => json!({"most_general": unifier(u)}),
                Certificate::MuSet(us) => json!({"mu_set": us.iter().map(unifier).collect::<Vec<_>>()}),
                Certificate::NullPattern { family, tuple, within } => {
                    json!({"family": family.tag(), "tuple": names(within.base(), tuple)})
                }
            };
            let utype = c.utype.expect("solvable instances carry a type").tag();
            let mut out = json!({"solvable": true, "type": utype, "certificate": certificate});
            if let Some(core) = &c.core {
                out["core"] = Document::invposet(core.structure(), Mode::Covers).to_json();
            }
            ok(out)
        }
        Command::Core { file, variety } => {
            let q = read_inv(&file, stdin)?;
            let s = Structure::Involutive(q.clone());
            s.expect(variety.into())?;
            let core = core_of(&q, variety.into())?;
            let mut out = Outcome::json(0, &Document::invposet(core.structure(), Mode::Covers).to_json());
            if core.closure_pairs_added() > 0 {
                out.stderr = format!("note: transitive closure added {} pairs\n", core.closure_pairs_added());
            }
            Ok(out)
        }
        Command::Witness { family, n, schema } => {
            let w = witness_family(family.into(), n)?;
            let doc = Document::structure(w.structure(), Mode::Covers).to_json();
            if !schema {
                return ok(doc);
            }
            let slots = w.family().slots();
            let base = w.structure().base();
            let schema: Vec<Value> = w
                .schema()
                .iter()
                .enumerate()
                .map(|(x, &(slot, inverted))| json!({"element": base.name(x), "slot": slots[slot], "inverted": inverted}))
                .collect();
            ok(json!({"family": w.family().tag(), "n": n, "structure": doc, "schema": schema}))
        }
        Command::Embed { file, prune } => {
            let q = read_inv(&file, stdin)?;
            let e = if prune { pruned_embedding(&q)? } else { canonical_embedding(&q)? };
            ok(embedding(&e))
        }
        Command::Retract { file, variety } => {
            let q = read_inv(&file, stdin)?;
            let e = pruned_embedding(&q)?;
            let r = build_retraction(&e, variety.into())?;
            let (dom, cod) = (r.dom(), r.cod());
            let map: Vec<[&str; 2]> = dom.elements().map(|x| [dom.name(x), cod.name(r.apply(x))]).collect();
            ok(json!({"variety": Variety::from(variety).tag(), "embedding": embedding(&e), "retraction": map}))
        }
        Command::Oracle { file, check, bound, variety } => {
            let s = read_structure(&file, stdin)?;
            let variety: Variety = match (variety, &s) {
                (Some(v), _) => v.into(),
                (None, Structure::Plain(_)) => Variety::Bdl,
                (None, Structure::Involutive(_)) => Variety::DeMorgan,
            };
            match check {
                Check::Retraction => {
                    let decider = is_projective_dual(&s, variety)?.projective;
                    let oracle = match &s {
                        Structure::Plain(p) => !p.is_empty() && lattice_oracle(p)?.is_some(),
                        Structure::Involutive(q) => has_retraction(q, variety)?,
                    };
                    ok(json!({"check": "retraction", "variety": variety.tag(), "oracle": oracle, "decider": decider, "agree": oracle == decider}))
                }
                Check::Unifiers => {
                    let k = bound.unwrap_or(3);
                    let us: Vec<Value> = enumerate_unifiers_bounded(&s, variety, k)?.map(|u| unifier(&u)).collect();
                    ok(json!({"check": "unifiers", "variety": variety.tag(), "bound": k, "count": us.len(), "unifiers": us}))
                }
            }
        }
    }
}
