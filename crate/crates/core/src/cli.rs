//! The `qg` command line: scenario files, operation evaluation and the
//! verifier.
//!
//! Exit codes: 0 success, 1 an identity failed, 2 bad input.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::rc::Rc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{permute, Integers, IntegersMod, Rationals, Ring};
use crate::loops::{check_family, make_simple, ClassTable, CyclicWord, GenericLoop, LoopSpec};
use crate::quasi_lie::{coboundary, cojacobiator, jacobiator};
use crate::string_ops::{self, LoopAlgebra, Orientation};
use crate::surface::{validate, GateOrientation, QuasiSurface, SurfaceSpec};
use crate::verify::{verify, Theorem, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

fn input<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> InputError + '_ {
    move |e| InputError(format!("{context}: {e}"))
}

/// A surface, named loops and evaluation settings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub surface: SurfaceSpec,
    #[serde(default)]
    pub loops: BTreeMap<String, LoopSpec>,
    #[serde(default)]
    pub ring: Option<String>,
    /// One bit per gate, `1` for the counterclockwise direction.
    #[serde(default)]
    pub omega: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub surface: QuasiSurface,
    pub loops: BTreeMap<String, GenericLoop>,
    pub ring: Option<String>,
    pub omega: Option<String>,
    pub seed: Option<u64>,
}

impl Scenario {
    pub fn from_spec(spec: &ScenarioSpec) -> Result<Self, InputError> {
        let surface = QuasiSurface::from_spec(&spec.surface).map_err(input("surface"))?;
        let mut loops = BTreeMap::new();
        for (name, l) in &spec.loops {
            let a = GenericLoop::from_spec(&surface, l).map_err(input(&format!("loop {name}")))?;
            loops.insert(name.clone(), a);
        }
        let all: Vec<&GenericLoop> = loops.values().collect();
        check_family(&all).map_err(input("loops are not jointly generic"))?;
        for (name, a) in &loops {
            a.self_intersections().map_err(input(&format!("loop {name}")))?;
        }
        Ok(Self {
            surface,
            loops,
            ring: spec.ring.clone(),
            omega: spec.omega.clone(),
            seed: spec.seed,
        })
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path).map_err(input(&path.display().to_string()))?;
        let spec: ScenarioSpec = serde_json::from_str(&text).map_err(input(&path.display().to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn loop_named(&self, name: &str) -> Result<&GenericLoop, InputError> {
        self.loops.get(name).ok_or_else(|| InputError(format!("no loop named {name:?} in the scenario")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingChoice {
    Z,
    Q,
    Zn(u64),
}

impl RingChoice {
    /// Accepts `Z`, `Q`, `Zn:<n>` and `Z/<n>`.
    pub fn parse(s: &str) -> Result<Self, InputError> {
        let s = s.trim();
        let modulus = s.strip_prefix("Zn:").or_else(|| s.strip_prefix("Z/"));
        match (s, modulus) {
            ("Z", _) => Ok(RingChoice::Z),
            ("Q", _) => Ok(RingChoice::Q),
            (_, Some(n)) => match n.parse::<u64>() {
                Ok(n) if IntegersMod::new(n).is_some() => Ok(RingChoice::Zn(n)),
                _ => Err(InputError(format!("bad modulus in ring {s:?}"))),
            },
            _ => Err(InputError(format!("unknown ring {s:?}; expected Z, Q or Zn:<n>"))),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qg", about = "Exact loop operations on quasi-surfaces", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ScenarioArgs {
    #[arg(long)]
    pub scenario: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a scenario file.
    Validate(ScenarioArgs),
    /// Print the free homotopy class of a loop.
    Class {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long = "loop")]
        name: String,
    },
    /// Replace a loop by a move-equivalent loop without self-intersections.
    Simplify {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long = "loop")]
        name: String,
    },
    /// Evaluate an operation on loops of a scenario.
    Op(OpArgs),
    /// Check an identity on seeded random scenarios.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OpArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// bracket-omega, bracket, mu, gamma, nu-omega, nu, zeta, jacobiator,
    /// cojacobiator or coboundary
    pub op: String,
    /// Loop names.
    pub args: Vec<String>,
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long)]
    pub omega: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Arity of mu or tensor degree of gamma.
    #[arg(long)]
    pub m: Option<usize>,
    /// Restrict a gate operation to one gate.
    #[arg(long)]
    pub gate: Option<String>,
    /// Negates every gate sign (debugging aid).
    #[arg(long)]
    pub flip_gate_sign: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Omit to run every check.
    #[arg(long)]
    pub theorem: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Negates every gate sign; the checks are then expected to fail.
    #[arg(long)]
    pub flip_gate_sign: bool,
}

/// Output text and exit code of one invocation.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => {
            let text = if cli.json {
                json!({ "error": e.0 }).to_string()
            } else {
                format!("error: {}", e.0)
            };
            Outcome {
                stdout: text,
                code: EXIT_INPUT,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Validate(args) => cmd_validate(&args.scenario, cli.json),
        Command::Class { scenario, name } => {
            let sc = Scenario::load(&scenario.scenario)?;
            let w = sc.loop_named(name)?.class_of().render(&sc.surface);
            let stdout = if cli.json { json!({ "loop": name, "class": w }).to_string() } else { w };
            Ok(ok(stdout))
        }
        Command::Simplify { scenario, name } => {
            let sc = Scenario::load(&scenario.scenario)?;
            let a = sc.loop_named(name)?;
            let r = make_simple(&sc.surface, a).map_err(input("simplification"))?;
            let out = json!({
                "loop": r.result.to_json(&sc.surface),
                "class": r.result.class_of().render(&sc.surface),
                "self_intersections": r.result.crossing_count(),
                "moves": r.moves,
            });
            Ok(ok(out.to_string()))
        }
        Command::Op(args) => cmd_op(args),
        Command::Verify(args) => cmd_verify(args, cli.json),
    }
}

fn ok(stdout: String) -> Outcome {
    Outcome { stdout, code: EXIT_OK }
}

pub fn cmd_validate(path: &Path, as_json: bool) -> Result<Outcome, InputError> {
    let text = std::fs::read_to_string(path).map_err(input(&path.display().to_string()))?;
    let spec: ScenarioSpec = serde_json::from_str(&text).map_err(input(&path.display().to_string()))?;
    let mut report = validate(&spec.surface);
    if report.valid {
        if let Err(e) = Scenario::from_spec(&spec) {
            report.valid = false;
            report.issues.push(e.0);
        }
    }
    let stdout = if as_json {
        serde_json::to_string(&report).expect("serializable")
    } else if report.valid {
        "valid".to_string()
    } else {
        format!("invalid:\n  {}", report.issues.join("\n  "))
    };
    let code = if report.valid { EXIT_OK } else { EXIT_INPUT };
    Ok(Outcome { stdout, code })
}

pub fn cmd_op(args: &OpArgs) -> Result<Outcome, InputError> {
    let sc = Scenario::load(&args.scenario.scenario)?;
    let ring = RingChoice::parse(args.ring.as_deref().or(sc.ring.as_deref()).unwrap_or("Z"))?;
    let value = match ring {
        RingChoice::Z => evaluate(Integers, &sc, args)?,
        RingChoice::Q => evaluate(Rationals, &sc, args)?,
        RingChoice::Zn(n) => evaluate(IntegersMod::new(n).expect("checked modulus"), &sc, args)?,
    };
    Ok(ok(serde_json::to_string_pretty(&value).expect("serializable")))
}

fn evaluate<R: Ring>(ring: R, sc: &Scenario, args: &OpArgs) -> Result<Value, InputError> {
    let s = &sc.surface;
    let bits = args.omega.as_deref().or(sc.omega.as_deref());
    let omega = match bits {
        Some(b) => GateOrientation::from_bits(b)
            .filter(|o| o.len() == s.gate_count())
            .ok_or_else(|| InputError(format!("orientation {b:?} needs one bit per gate")))?,
        None => GateOrientation::counterclockwise(s.gate_count()),
    };
    let mut or = Orientation::new(omega);
    or.flip_gate_sign = args.flip_gate_sign;
    let gate = match &args.gate {
        Some(g) => Some(s.gate_index(g).ok_or_else(|| InputError(format!("unknown gate {g:?}")))?),
        None => None,
    };
    let loops: Vec<&GenericLoop> = args.args.iter().map(|n| sc.loop_named(n)).collect::<Result<_, _>>()?;
    let arity = |n: usize| {
        if loops.len() == n {
            Ok(())
        } else {
            Err(InputError(format!("{} takes {n} loop(s), got {}", args.op, loops.len())))
        }
    };
    let geometry = input("geometry");
    let label = |w: &CyclicWord| w.render(s);
    let label2 = |(a, b): &(CyclicWord, CyclicWord)| format!("{} ⊗ {}", a.render(s), b.render(s));
    let label3 = |(a, b, c): &(CyclicWord, CyclicWord, CyclicWord)| {
        format!("{} ⊗ {} ⊗ {}", a.render(s), b.render(s), c.render(s))
    };
    let label_n = |v: &Vec<CyclicWord>| v.iter().map(label).collect::<Vec<_>>().join(" ⊗ ");
    let algebra = || {
        let seed = args.seed.or(sc.seed).unwrap_or(0);
        LoopAlgebra::new(ring.clone(), Rc::new(ClassTable::new(s.clone(), seed)), or.clone())
    };
    let value = match args.op.as_str() {
        "bracket-omega" => {
            arity(2)?;
            string_ops::bracket_omega(&ring, &or, loops[0], loops[1]).map_err(geometry)?.to_json(&ring, label)
        }
        "bracket" => {
            arity(2)?;
            let ab = string_ops::bracket_omega(&ring, &or, loops[0], loops[1]).map_err(input("geometry"))?;
            let ba = string_ops::bracket_omega(&ring, &or, loops[1], loops[0]).map_err(input("geometry"))?;
            ab.minus(&ring, &ba).to_json(&ring, label)
        }
        "mu" => {
            if loops.is_empty() || args.m.is_some_and(|m| m != loops.len()) {
                return Err(InputError("mu takes m ≥ 1 loops, matching --m when given".into()));
            }
            match gate {
                Some(k) => string_ops::gate_mu(&ring, k, &loops),
                None => string_ops::total_mu(&ring, s, &loops),
            }
            .to_json(&ring, label)
        }
        "gamma" => {
            arity(1)?;
            let m = args.m.ok_or_else(|| InputError("gamma needs --m".into()))?;
            match gate {
                Some(k) => string_ops::gate_gamma(&ring, k, m, loops[0]),
                None => string_ops::total_gamma(&ring, s, m, loops[0]),
            }
            .to_json(&ring, label_n)
        }
        "nu-omega" => {
            arity(1)?;
            string_ops::nu_omega(&ring, &or, loops[0]).map_err(geometry)?.to_json(&ring, label2)
        }
        "nu" => {
            arity(1)?;
            let v = string_ops::nu_omega(&ring, &or, loops[0]).map_err(geometry)?;
            v.minus(&ring, &permute(&ring, &v)).to_json(&ring, label2)
        }
        "zeta" => {
            arity(2)?;
            match gate {
                Some(k) => string_ops::gate_zeta(&ring, k, loops[0], loops[1]),
                None => string_ops::total_zeta(&ring, s, loops[0], loops[1]),
            }
            .to_json(&ring, label2)
        }
        "jacobiator" => {
            arity(3)?;
            let w: Vec<CyclicWord> = loops.iter().map(|a| a.class_of()).collect();
            jacobiator(&algebra().bracket()).on_basis(&w[0], &w[1], &w[2]).to_json(&ring, label)
        }
        "cojacobiator" => {
            arity(1)?;
            cojacobiator(&algebra().nu()).on_basis(&loops[0].class_of()).to_json(&ring, label3)
        }
        "coboundary" => {
            arity(2)?;
            let alg = algebra();
            coboundary(&alg.bracket(), &alg.nu())
                .on_generator(&loops[0].class_of(), &loops[1].class_of())
                .to_json(&ring, label2)
        }
        other => return Err(InputError(format!("unknown operation {other:?}"))),
    };
    Ok(value)
}

pub fn cmd_verify(args: &VerifyArgs, as_json: bool) -> Result<Outcome, InputError> {
    let theorems: Vec<Theorem> = match &args.theorem {
        Some(t) => vec![Theorem::parse(t).ok_or_else(|| InputError(format!("unknown theorem {t:?}")))?],
        None => Theorem::ALL.to_vec(),
    };
    let cfg = VerifyConfig {
        seed: args.seed,
        trials: args.trials,
        flip_gate_sign: args.flip_gate_sign,
    };
    let outcomes: Vec<_> = theorems.into_iter().map(|t| verify(t, &cfg)).collect();
    let passed = outcomes.iter().all(|o| o.report.passed);
    let stdout = if as_json {
        serde_json::to_string_pretty(&outcomes).expect("serializable")
    } else {
        let mut lines = Vec::new();
        for o in &outcomes {
            let r = &o.report;
            lines.push(format!(
                "{} {}: {} comparisons over {} trials, {} non-vacuous (seed {}, {} retries)",
                if r.passed { "PASS" } else { "FAIL" },
                o.theorem.name(),
                r.checked,
                o.trials,
                o.nontrivial,
                o.seed,
                o.retries,
            ));
            if let Some(w) = &r.witness {
                lines.push(format!("  first failure: {} at {}", w.property, w.input));
                lines.push(format!("    lhs = {}", w.lhs));
                lines.push(format!("    rhs = {}", w.rhs));
            }
        }
        lines.join("\n")
    };
    Ok(Outcome {
        stdout,
        code: if passed { EXIT_OK } else { EXIT_FAILURE },
    })
}
