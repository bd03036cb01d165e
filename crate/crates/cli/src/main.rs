use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use wclass::analysis::{
    check_scan_size, classify_suitability, scan_bipartitions, three_tangle, w_class_membership,
};
use wclass::catalog::{StateName, StateParams};
use wclass::io::{round15, scan_to_csv, state_from_json, state_to_json, transcript_to_json};
use wclass::protocols::{
    epr_dense2, epr_teleport, ghz_dense2, ghz_dense3, ghz_teleport, omega_dense, random_pair_input,
    run_all_messages, run_teleportation, w123_dense3, w_n_qubit_dense2, w_n_qubit_teleport,
    wn_teleport_via_transform, wtilde4_pair_teleport, DenseCodingProtocol, OutcomeRecord,
    PairFamily, ProtocolTranscript, TeleportationProtocol, FIDELITY_TOL,
};
use wclass::qstate::{
    bipartition_entanglement, random_state_with, seeded_rng, Bipartition, StateVector,
};
use wclass::Error;

#[derive(Parser, Debug)]
#[command(
    name = "wclass",
    version,
    about = "Teleportation, dense coding and entanglement analysis on W- and GHZ-class states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named state and print or save its JSON document.
    State {
        #[arg(long)]
        state: StateName,
        #[command(flatten)]
        params: Params,
        /// Write the JSON document to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON document on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Entanglement across one cut, or across every single-wire cut.
    Entropy {
        #[command(flatten)]
        input: Input,
        /// Wires on one side of the cut, e.g. `0,1`.
        #[arg(long)]
        cut: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Entanglement over all bipartitions up to complement.
    Scan {
        #[command(flatten)]
        input: Input,
        /// Write the scan as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Largest subset size to scan.
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Teleport seeded random inputs through a protocol.
    Teleport {
        #[arg(long)]
        protocol: String,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Send every message through a dense-coding protocol.
    Densecode {
        #[arg(long)]
        protocol: String,
        #[command(flatten)]
        params: Params,
        /// Print one row per message.
        #[arg(long)]
        all_messages: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a three-qubit state carries one ebit across a 2|1 cut.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug, Clone)]
struct Params {
    #[arg(long)]
    n_qubits: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    n_param: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    level: usize,
}

impl Params {
    fn to_state_params(&self) -> StateParams {
        StateParams {
            n_qubits: self.n_qubits.unwrap_or(3),
            n_param: self.n_param,
            gamma: self.gamma,
            delta: self.delta,
            d: self.d,
            level: self.level,
        }
    }
}

#[derive(Args, Debug)]
struct Input {
    #[arg(
        long,
        conflicts_with = "amplitudes_file",
        required_unless_present = "amplitudes_file"
    )]
    state: Option<StateName>,
    /// JSON state document.
    #[arg(long)]
    amplitudes_file: Option<PathBuf>,
    #[command(flatten)]
    params: Params,
}

/// Failure classes, each with its exit code.
#[derive(Debug)]
enum Failure {
    /// Bad flags or input: exit 2.
    Usage(String),
    /// A protocol failed validation: exit 3.
    Protocol(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotUnitary(_)
            | Error::NotOrthonormal(_)
            | Error::AmbiguousDecode { .. }
            | Error::IncompleteBasis(_)
            | Error::ProtocolFailure(_) => Failure::Protocol(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::State {
            state,
            params,
            out,
            json,
        } => cmd_state(state, &params, out.as_deref(), json),
        Command::Entropy { input, cut, json } => cmd_entropy(&input, cut.as_deref(), json),
        Command::Scan {
            input,
            csv,
            max_size,
            json,
        } => cmd_scan(&input, csv.as_deref(), max_size, json),
        Command::Teleport {
            protocol,
            params,
            trials,
            seed,
            json,
        } => cmd_teleport(&protocol, &params, trials, seed, json),
        Command::Densecode {
            protocol,
            params,
            all_messages,
            json,
        } => cmd_densecode(&protocol, &params, all_messages, json),
        Command::Classify { input, json } => cmd_classify(&input, json),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Protocol(msg)) => {
            eprintln!("protocol validation failed: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load_state(input: &Input) -> Result<StateVector, Failure> {
    match (&input.state, &input.amplitudes_file) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(state_from_json(&text)?)
        }
        (Some(name), None) => Ok(name.build(&input.params.to_state_params())?),
        (None, None) => Err(Failure::Usage("need --state or --amplitudes-file".into())),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_state(name: StateName, params: &Params, out: Option<&Path>, json: bool) -> Outcome {
    let state = name.build(&params.to_state_params())?;
    let doc = state_to_json(&state);
    if let Some(path) = out {
        write_file(path, &format!("{doc}\n"))?;
    }
    if json {
        println!("{doc}");
    } else {
        println!("state {name}");
        println!("dims  {:?}", state.dims());
        println!("norm  {:.6}", state.norm());
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_cut(spec: &str, n_wires: usize) -> Result<Bipartition, Failure> {
    let wires = spec
        .split([',', '-'])
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad --cut {spec:?}: {e}")))?;
    Ok(Bipartition::new(&wires, n_wires)?)
}

fn cmd_entropy(input: &Input, cut: Option<&str>, json: bool) -> Outcome {
    let state = load_state(input)?;
    let n = state.num_wires();
    let cuts = match cut {
        Some(spec) => vec![parse_cut(spec, n)?],
        None => (0..n)
            .map(|w| Bipartition::new(&[w], n))
            .collect::<Result<_, _>>()?,
    };
    let mut rows = Vec::with_capacity(cuts.len());
    for c in &cuts {
        rows.push((c.label(), bipartition_entanglement(&state, c)?));
    }
    if json {
        let doc: Vec<_> = rows
            .iter()
            .map(|(label, e)| json!({"cut": label, "entanglement_ebits": round15(*e)}))
            .collect();
        println!("{}", json!({ "cuts": doc }));
    } else {
        println!("{:<16} {:>12}", "cut", "ebits");
        for (label, e) in &rows {
            println!("{label:<16} {e:>12.6}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan(input: &Input, csv: Option<&Path>, max_size: Option<usize>, json: bool) -> Outcome {
    // Refuse before allocating a named state that would be too large.
    if input.state.is_some() {
        if let Some(n) = input.params.n_qubits {
            check_scan_size(n)?;
        }
    }
    let state = load_state(input)?;
    let sizes: Option<Vec<usize>> = max_size.map(|k| (1..=k).collect());
    let mut scan = scan_bipartitions(&state, sizes.as_deref())?;
    scan.source = match &input.state {
        Some(name) => name.to_string(),
        None => "file".into(),
    };
    if let Some(path) = csv {
        write_file(path, &scan_to_csv(&scan))?;
    }
    let best = scan.maximum();
    if json {
        let rows: Vec<_> = scan
            .rows
            .iter()
            .map(|r| json!({"subset": r.subset_label(), "size": r.size, "entanglement_ebits": round15(r.entanglement)}))
            .collect();
        let max = best.map(|r| json!({"subset": r.subset_label(), "size": r.size, "entanglement_ebits": round15(r.entanglement)}));
        println!(
            "{}",
            json!({"n_wires": scan.n_wires, "rows": rows, "maximum": max})
        );
    } else {
        println!("{} rows over {} wires", scan.rows.len(), scan.n_wires);
        match best {
            Some(r) => println!(
                "maximum  subset {}  size {}  {:.6} ebits",
                r.subset_label(),
                r.size,
                r.entanglement
            ),
            None => println!("no rows"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn teleport_protocol(name: &str, params: &Params) -> Result<TeleportationProtocol, Failure> {
    Ok(match name {
        "epr" => epr_teleport(),
        "ghz" => ghz_teleport(),
        "w-n-family" => wn_teleport_via_transform(params.n_param, params.gamma, params.delta)?,
        "w-n-qubit" => w_n_qubit_teleport(params.n_qubits.unwrap_or(3))?,
        "wtilde4-pair" => wtilde4_pair_teleport(),
        other => return Err(Failure::Usage(format!(
            "unknown teleport protocol {other:?} (epr, ghz, w-n-family, w-n-qubit, wtilde4-pair)"
        ))),
    })
}

fn teleport_inputs(
    p: &TeleportationProtocol,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<StateVector>, Failure> {
    if p.name() == "wtilde4-pair" {
        // Half the trials from each payload family.
        let mut inputs = Vec::with_capacity(2 * trials);
        for family in [PairFamily::Even, PairFamily::Odd] {
            for _ in 0..trials {
                inputs.push(random_pair_input(family, rng)?);
            }
        }
        return Ok(inputs);
    }
    let register = wclass::qstate::QuditRegister::new(p.input_dims().to_vec())?;
    Ok((0..trials)
        .map(|_| random_state_with(&register, rng))
        .collect())
}

/// Per-outcome mean probability and worst realized fidelity over all runs.
fn aggregate(p: &TeleportationProtocol, runs: &[ProtocolTranscript]) -> ProtocolTranscript {
    let outcomes = (0..p.num_outcomes())
        .map(|k| {
            let records: Vec<&OutcomeRecord> = runs.iter().map(|t| &t.outcomes[k]).collect();
            let probability =
                records.iter().map(|o| o.probability).sum::<f64>() / runs.len() as f64;
            let fidelity = records.iter().filter_map(|o| o.fidelity).reduce(f64::min);
            OutcomeRecord {
                index: k,
                probability,
                pre_correction: None,
                post_correction: None,
                fidelity,
            }
        })
        .collect();
    ProtocolTranscript {
        protocol: p.name().to_string(),
        outcomes,
        worst_fidelity: runs
            .iter()
            .map(|t| t.worst_fidelity)
            .fold(f64::INFINITY, f64::min),
        total_probability: runs
            .iter()
            .map(|t| t.total_probability)
            .fold(f64::INFINITY, f64::min),
        bits: p.classical_bits(),
    }
}

fn cmd_teleport(name: &str, params: &Params, trials: usize, seed: u64, json: bool) -> Outcome {
    if trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let p = teleport_protocol(name, params)?;
    let mut rng = seeded_rng(seed);
    let inputs = teleport_inputs(&p, trials, &mut rng)?;
    let runs = inputs
        .iter()
        .map(|input| run_teleportation(&p, input))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = aggregate(&p, &runs);
    let realized: Vec<usize> = runs.iter().map(|t| t.realized().count()).collect();
    let ok = summary.worst_fidelity >= 1.0 - FIDELITY_TOL;

    if json {
        println!("{}", transcript_to_json(&summary)?);
    } else {
        println!("protocol {}  runs {}  seed {seed}", p.name(), runs.len());
        println!("{:>7} {:>12} {:>14}", "outcome", "mean p", "worst fidelity");
        for o in &summary.outcomes {
            match o.fidelity {
                Some(f) => println!("{:>7} {:>12.6} {:>14.6}", o.index, o.probability, f),
                None => println!("{:>7} {:>12.6} {:>14}", o.index, o.probability, "-"),
            }
        }
        let lo = realized.iter().min().copied().unwrap_or(0);
        let hi = realized.iter().max().copied().unwrap_or(0);
        println!("realized outcomes per run  {lo}..{hi}");
        println!("classical bits             {:.6}", summary.bits);
        println!("worst fidelity             {:.6}", summary.worst_fidelity);
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn dense_protocol(name: &str, params: &Params) -> Result<DenseCodingProtocol, Failure> {
    Ok(match name {
        "epr" => epr_dense2(),
        "ghz" => ghz_dense2(),
        "ghz-3bit" => ghz_dense3(),
        "w123-3bit" => w123_dense3(),
        "w-n-qubit" => w_n_qubit_dense2(params.n_qubits.unwrap_or(3))?,
        "omega" => omega_dense(params.n_qubits.unwrap_or(3), params.d)?,
        other => {
            return Err(Failure::Usage(format!(
                "unknown dense-coding protocol {other:?} (epr, ghz, ghz-3bit, w123-3bit, w-n-qubit, omega)"
            )))
        }
    })
}

fn cmd_densecode(name: &str, params: &Params, all_messages: bool, json: bool) -> Outcome {
    let p = dense_protocol(name, params)?;
    let outcomes = run_all_messages(&p)?;
    let decoded = outcomes.iter().filter(|o| o.is_correct()).count();
    let ok = decoded == outcomes.len();
    let width = (p.num_messages() as f64).log2().ceil().max(1.0) as usize;

    if json {
        let rows: Vec<_> = outcomes
            .iter()
            .map(|o| json!({"message": o.message, "decoded": o.decoded, "overlap": round15(o.overlap)}))
            .collect();
        println!(
            "{}",
            json!({
                "protocol": p.name(),
                "bits": round15(p.capacity_bits()),
                "decoded": decoded,
                "messages": outcomes.len(),
                "outcomes": rows,
            })
        );
    } else {
        println!("protocol {}", p.name());
        if all_messages {
            println!("{:>8} {:>8} {:>10}", "message", "decoded", "overlap");
            for o in &outcomes {
                println!(
                    "{:>8} {:>8} {:>10.6}",
                    format!("{:0width$b}", o.message),
                    format!("{:0width$b}", o.decoded),
                    o.overlap
                );
            }
        }
        println!("decoded  {decoded}/{}", outcomes.len());
        println!("bits     {:.6}", p.capacity_bits());
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_classify(input: &Input, json: bool) -> Outcome {
    let state = load_state(input)?;
    let verdict = classify_suitability(&state)?;
    let tangle = three_tangle(&state)?;
    let w_class = w_class_membership(&state)?;
    let cut = verdict.witness_cut.as_ref().map(|c| c.label());

    if json {
        let cuts: Vec<_> = verdict
            .cuts
            .iter()
            .map(|c| {
                json!({
                    "cut": c.cut.label(),
                    "entanglement_ebits": round15(c.entanglement),
                    "schmidt_coefficients": c.coefficients.iter().map(|x| round15(*x)).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!(
            "{}",
            json!({
                "suitable": verdict.suitable,
                "entropy_suitable": verdict.entropy_suitable,
                "witness_cut": cut,
                "max_single_cut_entanglement": round15(verdict.max_single_cut_entanglement),
                "three_tangle": round15(tangle),
                "w_class": w_class,
                "cuts": cuts,
            })
        );
    } else {
        println!(
            "verdict       {}",
            if verdict.suitable {
                "suitable"
            } else {
                "unsuitable"
            }
        );
        println!("witness cut   {}", cut.as_deref().unwrap_or("-"));
        println!("max cut E     {:.6}", verdict.max_single_cut_entanglement);
        println!("three-tangle  {:.6}", tangle);
        println!("W-class       {}", if w_class { "yes" } else { "no" });
        for c in &verdict.cuts {
            println!("  {:<6} {:.6} ebits", c.cut.label(), c.entanglement);
        }
        if verdict.suitable != verdict.entropy_suitable {
            println!("note: coefficient and entropy criteria disagree");
        }
    }
    Ok(if verdict.suitable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
