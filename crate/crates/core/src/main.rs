//! Command-line surface: solve, verify, oracle queries, gadget generation,
//! reductions, and state-space reports.
//!
//! Exit codes: 0 success / reachable / valid; 1 unreachable / invalid (with
//! JSON diagnostics on stdout); 2 usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use reconfig::error::Error;
use reconfig::gadgets::{self, GadgetInstance};
use reconfig::graph::{Condition, Configuration, Hypergraph};
use reconfig::io::{
    parse_graph_text, InstanceFile, RelaxedSequenceFile, SequenceFile,
};
use reconfig::rules::{validate_relaxed_sequence, validate_sequence, ReconfSequence, Rule};
use reconfig::{oracle, reductions, solvers};

#[derive(Parser)]
#[command(
    name = "reconfig",
    about = "Reconfiguration of vertex covers, dominating sets, and independent sets under generalized token-jumping rules"
)]
struct Cli {
    /// Seed for randomized test-data generation. All built-in commands are
    /// deterministic; the flag pins downstream tooling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a reconfiguration sequence with the guarantee solver for
    /// the instance's condition.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// Overrides the instance's condition tag (vc | ds | is).
        #[arg(long)]
        condition: Option<String>,
        /// Must match the solver's guaranteed rule when given.
        #[arg(long)]
        rule: Option<String>,
        /// Write the sequence JSON here instead of inlining it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a sequence file against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        sequence: PathBuf,
    },
    /// Decide reachability exactly by brute force.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        /// Overrides the instance's rule string.
        #[arg(long)]
        rule: Option<String>,
        /// Report the exact shortest number of moves.
        #[arg(long)]
        shortest: bool,
        /// Write the witness sequence JSON here when reachable.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a verified lower-bound gadget instance.
    Gen {
        #[command(subcommand)]
        which: GenCmd,
    },
    /// Build reduction instances and transform sequences.
    Reduce {
        #[command(subcommand)]
        which: ReduceCmd,
    },
    /// Report the connected components of the solution space.
    Report {
        #[arg(long)]
        instance: PathBuf,
        /// Solution size; defaults to the instance's start size.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        rule: Option<String>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// C_2k with its two disjoint minimum vertex covers.
    CycleVc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// C_3k with its three disjoint minimum dominating sets.
    CycleDs {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The dominating-set lower-bound instance Q_i.
    DsGadget {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The independent-set lower-bound instance.
    IsGadget {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The T^l gadget whose shortest sequence has exactly l + 1 moves.
    TGadget {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Cover reconfiguration under classic token jumping to dominating-set
    /// reconfiguration under tj:all:1, with forward sequence translation.
    VcToDs {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// A cover sequence to translate forward.
        #[arg(long)]
        sequence: Option<PathBuf>,
        #[arg(long)]
        seq_out: Option<PathBuf>,
    },
    /// The vertex-cover decision problem to shortest cover reconfiguration.
    VcShortest {
        /// Graph text file for the source graph.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// A size-k cover (comma-separated) to emit the l-move schedule.
        #[arg(long)]
        cover: Option<String>,
        #[arg(long)]
        seq_out: Option<PathBuf>,
    },
    /// Normalize a relaxed cover sequence into single jumps.
    NormalizeRelaxed {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a tj:all:1 independent-set sequence on a split graph into
    /// token sliding.
    SplitToTs {
        #[arg(long)]
        instance: PathBuf,
        /// The clique side of the split partition, comma-separated.
        #[arg(long)]
        clique: String,
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_vertex_list(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad vertex id '{t}'")))
        })
        .collect()
}

fn load_instance(path: &Path) -> Result<(InstanceFile, Hypergraph), Error> {
    let inst = InstanceFile::load(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let graph = inst.resolve_graph(base)?;
    Ok((inst, graph))
}

fn emit(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
}

fn write_sequence(
    path: &Option<PathBuf>,
    cond: Condition,
    rule: &Rule,
    seq: &ReconfSequence,
) -> Result<serde_json::Value, Error> {
    let file = SequenceFile::new(cond, rule, seq);
    match path {
        Some(p) => {
            file.save(p)?;
            Ok(json!(p.display().to_string()))
        }
        None => Ok(serde_json::to_value(&file)?),
    }
}

fn instance_of_gadget(g: &GadgetInstance, rule: &Rule, bound: Option<usize>) -> InstanceFile {
    InstanceFile::new(&g.graph, g.condition, rule, &g.start, &g.target, bound)
}

fn cmd_solve(
    instance: &Path,
    condition: Option<String>,
    rule: Option<String>,
    out: Option<PathBuf>,
) -> Result<u8, Error> {
    let (inst, graph) = load_instance(instance)?;
    let cond = match condition {
        Some(c) => Condition::parse(&c)?,
        None => inst.condition()?,
    };
    let start = inst.start_config()?;
    let target = inst.target_config()?;
    let k = start.len();
    let solved = match cond {
        Condition::VertexCover => solvers::solve_vertex_cover(&graph, &start, &target)
            .map(|s| (s, Rule::all_slide())),
        Condition::DominatingSet => solvers::solve_dominating_set(&graph, &start, &target)
            .map(|s| (s, Rule::ds_guarantee(k))),
        Condition::IndependentSet => solvers::solve_independent_set(&graph, &start, &target)
            .map(|s| (s, Rule::is_guarantee())),
        Condition::Unconstrained => {
            solvers::reconfigure_keep_intersection(&graph, &start, &target)
                .map(|s| (s, Rule::all_slide()))
        }
    };
    let (seq, solver_rule) = match solved {
        Ok(pair) => pair,
        Err(e @ Error::OutsideGuarantee(_)) => {
            emit(json!({"status": "outside-guarantee", "reason": e.to_string()}));
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    if let Some(r) = rule {
        let requested = Rule::parse(&r)?;
        if requested != solver_rule {
            return Err(Error::InvalidInput(format!(
                "the {} solver guarantees rule {solver_rule}, not {requested}",
                cond.tag()
            )));
        }
    }
    validate_sequence(&graph, cond, &solver_rule, &seq)?;
    let sequence = write_sequence(&out, cond, &solver_rule, &seq)?;
    emit(json!({
        "status": "solved",
        "condition": cond.tag(),
        "rule": solver_rule.to_string(),
        "moves": seq.move_count(),
        "sequence": sequence,
    }));
    Ok(0)
}

fn cmd_verify(instance: &Path, sequence: &Path) -> Result<u8, Error> {
    let (inst, graph) = load_instance(instance)?;
    let text = std::fs::read_to_string(sequence)?;
    let probe: serde_json::Value = serde_json::from_str(&text)?;
    let rule_str = probe
        .get("rule")
        .and_then(|v| v.as_str())
        .unwrap_or_default()
        .to_string();
    // Everything past JSON parsing counts as sequence invalidity (exit 1),
    // not as a usage error.
    let outcome: Result<(), Error> = if rule_str == "relaxed" {
        let file: RelaxedSequenceFile = serde_json::from_str(&text)?;
        (|| {
            let moves = file.to_moves()?;
            let start = Configuration::new(file.start.clone())?;
            let target = Configuration::new(file.target.clone())?;
            if start != inst.start_config()? || target != inst.target_config()? {
                return Err(Error::RelaxedEndpointMismatch);
            }
            validate_relaxed_sequence(&graph, &start, &target, &moves)
        })()
    } else {
        let file: SequenceFile = serde_json::from_str(&text)?;
        (|| {
            let cond = Condition::parse(&file.condition)?;
            let rule = Rule::parse(&file.rule)?;
            let seq = file.to_sequence()?;
            if seq.start() != &inst.start_config()? || seq.end() != &inst.target_config()? {
                return Err(Error::SequenceStructure(
                    "sequence endpoints do not match the instance".into(),
                ));
            }
            validate_sequence(&graph, cond, &rule, &seq)
        })()
    };
    match outcome {
        Ok(()) => {
            emit(json!({"status": "valid"}));
            Ok(0)
        }
        Err(e) => {
            let index = match &e {
                Error::SequenceInvalid { index, .. } => Some(*index),
                Error::RelaxedAdditionBudget { index, .. }
                | Error::RelaxedJumpBudget { index, .. }
                | Error::RelaxedMissingToken { index, .. }
                | Error::RelaxedNotACover { index } => Some(*index),
                _ => None,
            };
            emit(json!({
                "status": "invalid",
                "index": index,
                "reason": e.to_string(),
            }));
            Ok(1)
        }
    }
}

fn cmd_oracle(
    instance: &Path,
    rule: Option<String>,
    shortest: bool,
    out: Option<PathBuf>,
) -> Result<u8, Error> {
    let (inst, graph) = load_instance(instance)?;
    let cond = inst.condition()?;
    let rule = match rule {
        Some(r) => Rule::parse(&r)?,
        None => inst.rule()?,
    };
    let start = inst.start_config()?;
    let target = inst.target_config()?;
    let r = oracle::reachability(&graph, cond, &rule, &start, &target)?;
    if r.reachable {
        let witness = match &r.witness {
            Some(seq) => Some(write_sequence(&out, cond, &rule, seq)?),
            None => None,
        };
        let mut body = json!({
            "status": "reachable",
            "rule": rule.to_string(),
        });
        if shortest {
            body["shortest"] = json!(r.shortest);
        }
        if let Some(w) = witness {
            body["witness"] = w;
        }
        emit(body);
        Ok(0)
    } else {
        emit(json!({"status": "unreachable", "rule": rule.to_string()}));
        Ok(1)
    }
}

fn cmd_gen(which: GenCmd) -> Result<u8, Error> {
    let (gadget, rule, bound, out) = match which {
        GenCmd::CycleVc { k, out } => (gadgets::gen_cycle_vc(k)?, Rule::all_slide(), None, out),
        GenCmd::CycleDs { k, out } => (gadgets::gen_cycle_ds(k)?, Rule::all_slide(), None, out),
        GenCmd::DsGadget { i, out } => {
            let g = gadgets::gen_ds_gadget(i)?;
            let rule = Rule::ds_guarantee(g.k);
            (g, rule, None, out)
        }
        GenCmd::IsGadget { k, out } => (gadgets::gen_is_gadget(k)?, Rule::is_guarantee(), None, out),
        GenCmd::TGadget { l, out } => {
            let g = gadgets::gen_t_gadget(l)?;
            (g, Rule::all_slide(), Some(l + 1), out)
        }
    };
    let inst = instance_of_gadget(&gadget, &rule, bound);
    let location = match &out {
        Some(p) => {
            inst.save(p)?;
            json!(p.display().to_string())
        }
        None => serde_json::to_value(&inst)?,
    };
    emit(json!({
        "status": "generated",
        "name": gadget.name,
        "n": gadget.graph.n(),
        "k": gadget.k,
        "claims": gadget.claims.len(),
        "verification": format!("{:?}", gadget.verification),
        "instance": location,
    }));
    Ok(0)
}

fn cmd_reduce(which: ReduceCmd) -> Result<u8, Error> {
    match which {
        ReduceCmd::VcToDs {
            instance,
            out,
            sequence,
            seq_out,
        } => {
            let (inst, graph) = load_instance(&instance)?;
            let vs = inst.start_config()?;
            let vt = inst.target_config()?;
            let red = reductions::reduce_vctj_to_ds(&graph, &vs, &vt)?;
            let ds_inst = InstanceFile::new(
                &red.graph,
                Condition::DominatingSet,
                &Rule::all_slide(),
                &red.start,
                &red.target,
                None,
            );
            let location = match &out {
                Some(p) => {
                    ds_inst.save(p)?;
                    json!(p.display().to_string())
                }
                None => serde_json::to_value(&ds_inst)?,
            };
            let mut body = json!({
                "status": "reduced",
                "n": red.graph.n(),
                "x": red.x,
                "y": red.y,
                "instance": location,
            });
            if let Some(seq_path) = sequence {
                let file = SequenceFile::load(&seq_path)?;
                let vc_seq = file.to_sequence()?;
                let ds_seq = reductions::vc_seq_to_ds_seq(&red, &vc_seq)?;
                body["sequence"] = write_sequence(
                    &seq_out,
                    Condition::DominatingSet,
                    &Rule::all_slide(),
                    &ds_seq,
                )?;
            }
            emit(body);
            Ok(0)
        }
        ReduceCmd::VcShortest {
            graph,
            k,
            l,
            out,
            cover,
            seq_out,
        } => {
            let text = std::fs::read_to_string(&graph)?;
            let g = parse_graph_text(&text)?;
            let red = reductions::reduce_vc_shortest(&g, k, l)?;
            let inst = InstanceFile::new(
                &red.graph,
                Condition::VertexCover,
                &Rule::all_slide(),
                &red.start,
                &red.target,
                Some(l),
            );
            let location = match &out {
                Some(p) => {
                    inst.save(p)?;
                    json!(p.display().to_string())
                }
                None => serde_json::to_value(&inst)?,
            };
            let mut body = json!({
                "status": "reduced",
                "n": red.graph.n(),
                "copies": red.copies,
                "bound": l,
                "instance": location,
            });
            if let Some(cover) = cover {
                let cover = Configuration::new(parse_vertex_list(&cover)?)?;
                let schedule = reductions::build_yes_schedule(&red, &cover)?;
                body["schedule"] = write_sequence(
                    &seq_out,
                    Condition::VertexCover,
                    &Rule::all_slide(),
                    &schedule,
                )?;
            }
            emit(body);
            Ok(0)
        }
        ReduceCmd::NormalizeRelaxed {
            instance,
            sequence,
            out,
        } => {
            let (inst, graph) = load_instance(&instance)?;
            let file = RelaxedSequenceFile::load(&sequence)?;
            let moves = file.to_moves()?;
            let vs = Configuration::new(file.start.clone())?;
            let vt = Configuration::new(file.target.clone())?;
            if vs != inst.start_config()? || vt != inst.target_config()? {
                return Err(Error::InvalidInput(
                    "relaxed sequence endpoints do not match the instance".into(),
                ));
            }
            match reductions::normalize_relaxed(&graph, &vs, &vt, &moves) {
                Ok(seq) => {
                    let rule = Rule::parse(&format!("tj:1:{}", graph.n().max(1)))?;
                    let sequence = write_sequence(&out, Condition::VertexCover, &rule, &seq)?;
                    emit(json!({
                        "status": "normalized",
                        "moves": seq.move_count(),
                        "sequence": sequence,
                    }));
                    Ok(0)
                }
                Err(e) => {
                    emit(json!({"status": "invalid", "reason": e.to_string()}));
                    Ok(1)
                }
            }
        }
        ReduceCmd::SplitToTs {
            instance,
            clique,
            sequence,
            out,
        } => {
            let (_inst, graph) = load_instance(&instance)?;
            let clique = Configuration::new(parse_vertex_list(&clique)?)?;
            let file = SequenceFile::load(&sequence)?;
            let seq = file.to_sequence()?;
            match reductions::split_to_token_sliding(&graph, &clique, &seq) {
                Ok(ts) => {
                    let sequence = write_sequence(
                        &out,
                        Condition::IndependentSet,
                        &Rule::token_sliding(),
                        &ts,
                    )?;
                    emit(json!({
                        "status": "transformed",
                        "moves": ts.move_count(),
                        "sequence": sequence,
                    }));
                    Ok(0)
                }
                Err(e @ (Error::SequenceInvalid { .. } | Error::TooManySlides { .. })) => {
                    emit(json!({"status": "invalid", "reason": e.to_string()}));
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
    }
}

fn cmd_report(instance: &Path, k: Option<usize>, rule: Option<String>) -> Result<u8, Error> {
    let (inst, graph) = load_instance(instance)?;
    let cond = inst.condition()?;
    let rule = match rule {
        Some(r) => Rule::parse(&r)?,
        None => inst.rule()?,
    };
    let k = k.unwrap_or(inst.start.len());
    let report = oracle::component_report(&graph, cond, &rule, k)?;
    let components: Vec<_> = report
        .iter()
        .map(|&(size, diameter)| json!({"size": size, "diameter": diameter}))
        .collect();
    emit(json!({
        "status": "ok",
        "k": k,
        "rule": rule.to_string(),
        "components": components,
    }));
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Solve {
            instance,
            condition,
            rule,
            out,
        } => cmd_solve(&instance, condition, rule, out),
        Cmd::Verify { instance, sequence } => cmd_verify(&instance, &sequence),
        Cmd::Oracle {
            instance,
            rule,
            shortest,
            out,
        } => cmd_oracle(&instance, rule, shortest, out),
        Cmd::Gen { which } => cmd_gen(which),
        Cmd::Reduce { which } => cmd_reduce(which),
        Cmd::Report { instance, k, rule } => cmd_report(&instance, k, rule),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
