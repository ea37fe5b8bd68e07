//! Command-line front end: one subcommand per subsystem, exact rational
//! arguments, reproducible seeds, machine-readable output.
//!
//! Exit codes: 0 success / PASS verdict, 1 FAIL verdict, 2 usage or input
//! errors (unreadable files, malformed graphs, capacity limits, bad
//! parameters).

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use permanental::consistency::{
    dr_refutation, ltp_check, ss_contradiction_chain, LtpWitness,
};
use permanental::crp::{
    consistency_check_dr, crp_partition_pmf, ewens_pmf, partition_consistency_check_dr,
    CrpSampler, EwensParams,
};
use permanental::error::Error;
use permanental::graphs::DirectedGraph;
use permanental::permanent::{alpha_permanent_graph_bruteforce, cycle_polynomial};
use permanental::pgm::{
    degree_pmf, normalizer_bruteforce, normalizer_closed_form, pmf, total_variation_vs_er,
    PgmParams, PgmSampler, SupportFamily,
};
use permanental::projection::{preimages_dr, preimages_ss, ProjectionOp};
use permanental::rational::{format_rational, parse_rational};
use permanental::Permutation;

#[derive(Parser)]
#[command(
    name = "permanental",
    version,
    about = "Exact cycle-weighted permanents, permanental graph distributions, \
             Ewens/CRP laws, and projective-consistency checks",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for parallel enumeration; results are identical for
    /// any setting.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OpArg {
    Ss,
    Dr,
}

impl From<OpArg> for ProjectionOp {
    fn from(op: OpArg) -> Self {
        match op {
            OpArg::Ss => ProjectionOp::Ss,
            OpArg::Dr => ProjectionOp::Dr,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    All,
    Permutations,
    Partitions,
    FixedPointFreePermutations,
    SingleCyclePermutations,
}

impl From<FamilyArg> for SupportFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::All => SupportFamily::All,
            FamilyArg::Permutations => SupportFamily::Permutations,
            FamilyArg::Partitions => SupportFamily::Partitions,
            FamilyArg::FixedPointFreePermutations => SupportFamily::FixedPointFreePermutations,
            FamilyArg::SingleCyclePermutations => SupportFamily::SingleCyclePermutations,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact alpha-weighted permanent of a boolean graph: the value at a
    /// rational alpha, or the whole cycle polynomial with --poly.
    Permanent {
        /// Evaluation point, as `p/q`, an integer, or a decimal.
        #[arg(long, conflicts_with = "poly")]
        alpha: Option<String>,
        /// Print the cycle-count coefficients c_1..c_n instead.
        #[arg(long)]
        poly: bool,
        /// Print the coefficients as a JSON array (with --poly).
        #[arg(long, requires = "poly")]
        json: bool,
        /// Use the factorial-enumeration oracle instead of the subset DP.
        #[arg(long)]
        brute: bool,
        /// Graph file (first line n, then n rows over {0,1}).
        graphfile: PathBuf,
    },
    /// Permanental graph model: normalizer, pmf, sampling, degree law.
    Pgm {
        #[command(subcommand)]
        cmd: PgmCmd,
    },
    /// Ewens/CRP distributions on permutations and partitions.
    Crp {
        #[command(subcommand)]
        cmd: CrpCmd,
    },
    /// Project a graph one level down (subselection or delete-and-repair).
    Project {
        #[arg(long, value_enum)]
        op: OpArg,
        graphfile: PathBuf,
    },
    /// Enumerate or count the preimages of a graph under a projection.
    Preimages {
        #[arg(long, value_enum)]
        op: OpArg,
        /// Keep only preimages containing at least one permutation.
        #[arg(long)]
        require_permutation: bool,
        /// Print just the number of preimages.
        #[arg(long)]
        count_only: bool,
        graphfile: PathBuf,
    },
    /// Law-of-total-probability checks and the impossibility certificate.
    Consistency {
        #[command(subcommand)]
        cmd: ConsistencyCmd,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Graph size.
    #[arg(long)]
    n: usize,
    /// Cycle weight, a positive rational.
    #[arg(long, default_value = "1")]
    alpha: String,
    /// Edge odds, a positive rational.
    #[arg(long, default_value = "1")]
    beta: String,
}

#[derive(Subcommand)]
enum PgmCmd {
    /// Normalization constant z_n(alpha, beta).
    Z {
        #[command(flatten)]
        model: ModelArgs,
        /// Sum over all 2^(n^2) graphs instead of the closed form (n <= 4).
        #[arg(long)]
        brute: bool,
    },
    /// Exact probability of one graph.
    Pmf {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value = "1")]
        beta: String,
    },
    /// Draw graphs with the exact two-stage sampler.
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Out-degree law: P(degree - 1 = k) = C(n-1,k) beta^k / (1+beta)^(n-1).
    Degree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        beta: String,
        /// Single entry instead of the whole table.
        #[arg(long)]
        k: Option<usize>,
        /// Also tabulate empirical frequencies from seeded samples.
        #[arg(long)]
        empirical: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Cycle weight used by the empirical sampler.
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact total-variation distance to Erdos-Renyi(beta/(1+beta)).
    Tv {
        #[command(flatten)]
        model: ModelArgs,
    },
}

#[derive(Subcommand)]
enum CrpCmd {
    /// Draw Ewens permutations or partitions by the seating process.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, value_enum, default_value_t = CrpKind::Permutation)]
        kind: CrpKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Verify delete-and-repair consistency of the Ewens law exactly.
    CheckDr {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Check the permutation law or its partition push-forward.
        #[arg(long, value_enum, default_value_t = CrpKind::Permutation)]
        kind: CrpKind,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CrpKind {
    Permutation,
    Partition,
}

#[derive(Subcommand)]
enum ConsistencyCmd {
    /// Check the total-probability identity between levels n and n+1.
    Check {
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long, default_value = "1")]
        beta: String,
    },
    /// The parameter-free difference certificate for the witness pair.
    Certificate,
    /// The subselection refutation chain, step by step.
    SsChain {
        #[arg(long)]
        n: usize,
    },
}

struct Output {
    target: Option<PathBuf>,
    buffer: String,
}

impl Output {
    fn new(target: Option<PathBuf>) -> Self {
        Output {
            target,
            buffer: String::new(),
        }
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.buffer.push_str(text.as_ref());
        self.buffer.push('\n');
    }

    fn finish(self) -> Result<(), Error> {
        match self.target {
            Some(path) => fs::write(path, self.buffer).map_err(Error::from),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(self.buffer.as_bytes()).map_err(Error::from)
            }
        }
    }
}

fn positive_rational(name: &'static str, s: &str) -> Result<BigRational, Error> {
    use num_traits::Signed;
    let value = parse_rational(s)?;
    if !value.is_positive() {
        return Err(Error::NonPositive {
            name,
            value: format_rational(&value),
        });
    }
    Ok(value)
}

fn load_graph(path: &PathBuf) -> Result<DirectedGraph, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    DirectedGraph::parse(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    let run_all = || -> Result<u8, Error> {
        let mut out = Output::new(cli.out.clone());
        let code = dispatch(&cli, &mut out)?;
        out.finish()?;
        Ok(code)
    };
    let result = match threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build();
            match pool {
                Ok(pool) => pool.install(run_all),
                Err(e) => {
                    eprintln!("error: cannot build thread pool: {e}");
                    return ExitCode::from(2);
                }
            }
        }
        None => run_all(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut Output) -> Result<u8, Error> {
    match &cli.command {
        Command::Permanent {
            alpha,
            poly,
            json,
            brute,
            graphfile,
        } => cmd_permanent(cli.format, out, alpha.as_deref(), *poly, *json, *brute, graphfile),
        Command::Pgm { cmd } => cmd_pgm(cli.format, out, cmd),
        Command::Crp { cmd } => cmd_crp(cli.format, out, cmd),
        Command::Project { op, graphfile } => {
            let g = load_graph(graphfile)?;
            let projected = ProjectionOp::from(*op).apply(&g)?;
            match cli.format {
                Format::Json => out.line(
                    json!({"n": projected.n(), "rows": rows_strings(&projected)}).to_string(),
                ),
                _ => out.line(projected.to_string().trim_end()),
            }
            Ok(0)
        }
        Command::Preimages {
            op,
            require_permutation,
            count_only,
            graphfile,
        } => {
            let g = load_graph(graphfile)?;
            let set = match ProjectionOp::from(*op) {
                ProjectionOp::Dr => preimages_dr(&g)?,
                ProjectionOp::Ss => preimages_ss(&g)?,
            };
            let set = if *require_permutation {
                set.filtered(permanental::has_permutation)
            } else {
                set
            };
            if *count_only {
                match cli.format {
                    Format::Json => out.line(json!({"count": set.len()}).to_string()),
                    _ => out.line(set.len().to_string()),
                }
            } else {
                match cli.format {
                    Format::Json => {
                        let members: Vec<Vec<String>> = set.iter().map(rows_strings).collect();
                        out.line(
                            json!({
                                "op": ProjectionOp::from(*op),
                                "count": set.len(),
                                "members": members,
                            })
                            .to_string(),
                        );
                    }
                    _ => {
                        for member in set.iter() {
                            out.line(member.to_string().trim_end());
                            out.line("");
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Consistency { cmd } => cmd_consistency(cli.format, out, cmd),
    }
}

fn rows_strings(g: &DirectedGraph) -> Vec<String> {
    g.compact().split('|').map(str::to_owned).collect()
}

fn cmd_permanent(
    format: Format,
    out: &mut Output,
    alpha: Option<&str>,
    poly: bool,
    json_array: bool,
    brute: bool,
    graphfile: &PathBuf,
) -> Result<u8, Error> {
    let g = load_graph(graphfile)?;
    if poly {
        let p = cycle_polynomial(&g)?;
        if json_array || format == Format::Json {
            let coeffs: Vec<String> = p.coefficients().iter().map(|c| c.to_string()).collect();
            out.line(serde_json::to_string(&coeffs).expect("serializable"));
        } else {
            for c in p.coefficients() {
                out.line(c.to_string());
            }
        }
        return Ok(0);
    }
    let alpha = alpha.ok_or_else(|| Error::Parse("need --alpha <rational> or --poly".into()))?;
    let alpha = parse_rational(alpha)?;
    let value = if brute {
        alpha_permanent_graph_bruteforce(&g, &alpha)?
    } else {
        cycle_polynomial(&g)?.evaluate(&alpha)
    };
    match format {
        Format::Json => out.line(
            json!({
                "n": g.n(),
                "alpha": format_rational(&alpha),
                "value": format_rational(&value),
            })
            .to_string(),
        ),
        _ => out.line(format_rational(&value)),
    }
    Ok(0)
}

fn cmd_pgm(format: Format, out: &mut Output, cmd: &PgmCmd) -> Result<u8, Error> {
    match cmd {
        PgmCmd::Z { model, brute } => {
            let params = PgmParams::new(
                model.n,
                positive_rational("alpha", &model.alpha)?,
                positive_rational("beta", &model.beta)?,
            )?;
            let value = if *brute {
                normalizer_bruteforce(&params, SupportFamily::All)?
            } else {
                normalizer_closed_form(&params)
            };
            emit_model_value(format, out, model.n, params.alpha(), params.beta(), &value);
            Ok(0)
        }
        PgmCmd::Pmf { graph, alpha, beta } => {
            let g = load_graph(graph)?;
            let params = PgmParams::new(
                g.n(),
                positive_rational("alpha", alpha)?,
                positive_rational("beta", beta)?,
            )?;
            let value = pmf(&g, &params)?;
            emit_model_value(format, out, g.n(), params.alpha(), params.beta(), &value);
            Ok(0)
        }
        PgmCmd::Sample { model, seed, count } => {
            let params = PgmParams::new(
                model.n,
                positive_rational("alpha", &model.alpha)?,
                positive_rational("beta", &model.beta)?,
            )?;
            let mut sampler = PgmSampler::new(params, *seed);
            for index in 0..*count {
                let g = sampler.draw();
                match format {
                    Format::Json => out.line(
                        json!({
                            "index": index,
                            "n": g.n(),
                            "edges": g.edge_count(),
                            "rows": rows_strings(&g),
                        })
                        .to_string(),
                    ),
                    Format::Csv => {
                        if index == 0 {
                            out.line("index,edges");
                        }
                        out.line(format!("{index},{}", g.edge_count()));
                    }
                    Format::Text => {
                        out.line(g.to_string().trim_end());
                        out.line("");
                    }
                }
            }
            Ok(0)
        }
        PgmCmd::Degree {
            n,
            beta,
            k,
            empirical,
            samples,
            alpha,
            seed,
        } => {
            let beta = positive_rational("beta", beta)?;
            let ks: Vec<usize> = match k {
                Some(k) => vec![*k],
                None => (0..*n).collect(),
            };
            let exact: Vec<(usize, BigRational)> = ks
                .iter()
                .map(|&k| Ok((k, degree_pmf(*n, &beta, k)?)))
                .collect::<Result<_, Error>>()?;
            let empirical_freqs: Option<Vec<f64>> = if *empirical {
                let params = PgmParams::new(*n, positive_rational("alpha", alpha)?, beta.clone())?;
                let mut sampler = PgmSampler::new(params, *seed);
                let mut counts = vec![0usize; *n];
                for _ in 0..*samples {
                    let g = sampler.draw();
                    counts[g.row(0).count_ones() as usize - 1] += 1;
                }
                Some(counts.iter().map(|&c| c as f64 / *samples as f64).collect())
            } else {
                None
            };
            match format {
                Format::Json => {
                    let table: Vec<serde_json::Value> = exact
                        .iter()
                        .map(|(k, v)| {
                            let mut entry = json!({"k": k, "value": format_rational(v)});
                            if let Some(emp) = &empirical_freqs {
                                entry["empirical"] = json!(emp[*k]);
                            }
                            entry
                        })
                        .collect();
                    out.line(
                        json!({"n": n, "beta": format_rational(&beta), "pmf": table}).to_string(),
                    );
                }
                Format::Csv => {
                    out.line(if empirical_freqs.is_some() {
                        "k,value,empirical"
                    } else {
                        "k,value"
                    });
                    for (k, v) in &exact {
                        match &empirical_freqs {
                            Some(emp) => {
                                out.line(format!("{k},{},{}", format_rational(v), emp[*k]))
                            }
                            None => out.line(format!("{k},{}", format_rational(v))),
                        }
                    }
                }
                Format::Text => {
                    for (k, v) in &exact {
                        match &empirical_freqs {
                            Some(emp) => {
                                out.line(format!("{k} {} {}", format_rational(v), emp[*k]))
                            }
                            None => out.line(format!("{k} {}", format_rational(v))),
                        }
                    }
                }
            }
            Ok(0)
        }
        PgmCmd::Tv { model } => {
            let params = PgmParams::new(
                model.n,
                positive_rational("alpha", &model.alpha)?,
                positive_rational("beta", &model.beta)?,
            )?;
            let value = total_variation_vs_er(&params)?;
            emit_model_value(format, out, model.n, params.alpha(), params.beta(), &value);
            Ok(0)
        }
    }
}

fn emit_model_value(
    format: Format,
    out: &mut Output,
    n: usize,
    alpha: &BigRational,
    beta: &BigRational,
    value: &BigRational,
) {
    match format {
        Format::Json => out.line(
            json!({
                "n": n,
                "alpha": format_rational(alpha),
                "beta": format_rational(beta),
                "value": format_rational(value),
            })
            .to_string(),
        ),
        _ => out.line(format_rational(value)),
    }
}

fn cmd_crp(format: Format, out: &mut Output, cmd: &CrpCmd) -> Result<u8, Error> {
    match cmd {
        CrpCmd::Sample {
            n,
            alpha,
            kind,
            seed,
            count,
        } => {
            let params = EwensParams::new(*n, positive_rational("alpha", alpha)?)?;
            let mut sampler = CrpSampler::new(params.clone(), *seed);
            for index in 0..*count {
                match kind {
                    CrpKind::Permutation => {
                        let sigma = sampler.draw_permutation();
                        match format {
                            Format::Json => {
                                let image: Vec<usize> =
                                    sigma.image().iter().map(|v| v + 1).collect();
                                out.line(
                                    json!({
                                        "index": index,
                                        "n": n,
                                        "kind": "permutation",
                                        "image": image,
                                        "cycles": sigma.to_cycle_string(),
                                        "probability": format_rational(
                                            &ewens_pmf(&sigma, &params)?,
                                        ),
                                    })
                                    .to_string(),
                                );
                            }
                            _ => out.line(sigma.to_cycle_string()),
                        }
                    }
                    CrpKind::Partition => {
                        let pi = sampler.draw_partition();
                        match format {
                            Format::Json => {
                                let blocks: Vec<Vec<usize>> = pi
                                    .blocks()
                                    .iter()
                                    .map(|b| b.iter().map(|v| v + 1).collect())
                                    .collect();
                                out.line(
                                    json!({
                                        "index": index,
                                        "n": n,
                                        "kind": "partition",
                                        "blocks": blocks,
                                        "probability": format_rational(
                                            &crp_partition_pmf(&pi, &params)?,
                                        ),
                                    })
                                    .to_string(),
                                );
                            }
                            _ => {
                                let blocks: Vec<String> = pi
                                    .blocks()
                                    .iter()
                                    .map(|b| {
                                        let inner: Vec<String> =
                                            b.iter().map(|v| (v + 1).to_string()).collect();
                                        format!("{{{}}}", inner.join(" "))
                                    })
                                    .collect();
                                out.line(blocks.join(""));
                            }
                        }
                    }
                }
            }
            Ok(0)
        }
        CrpCmd::CheckDr { n, alpha, kind } => {
            let alpha = positive_rational("alpha", alpha)?;
            let (pass, census_holds, witness) = match kind {
                CrpKind::Permutation => {
                    let report = consistency_check_dr(*n, &alpha)?;
                    (
                        report.holds && report.census_holds,
                        report.census_holds,
                        report.witness.as_ref().map(Permutation::to_cycle_string),
                    )
                }
                CrpKind::Partition => {
                    let report = partition_consistency_check_dr(*n, &alpha)?;
                    (
                        report.holds && report.census_holds,
                        report.census_holds,
                        report.witness.as_ref().map(|pi| format!("{pi:?}")),
                    )
                }
            };
            match format {
                Format::Json => out.line(
                    json!({
                        "n": n,
                        "alpha": format_rational(&alpha),
                        "pass": pass,
                        "census_holds": census_holds,
                        "witness": witness,
                    })
                    .to_string(),
                ),
                _ => match &witness {
                    None if pass => out.line("PASS"),
                    None => out.line("FAIL (preimage census violated)"),
                    Some(w) => out.line(format!("FAIL at {w}")),
                },
            }
            Ok(if pass { 0 } else { 1 })
        }
    }
}

fn cmd_consistency(format: Format, out: &mut Output, cmd: &ConsistencyCmd) -> Result<u8, Error> {
    match cmd {
        ConsistencyCmd::Check {
            op,
            family,
            n,
            alpha,
            beta,
        } => {
            let alpha = positive_rational("alpha", alpha)?;
            let beta = positive_rational("beta", beta)?;
            let lower = PgmParams::new(*n, alpha.clone(), beta.clone())?;
            let upper = PgmParams::new(*n + 1, alpha, beta)?;
            let report = ltp_check((*op).into(), (*family).into(), &lower, &upper)?;
            match format {
                Format::Json => out.line(serde_json::to_string(&report).expect("serializable")),
                _ => {
                    out.line(if report.pass { "PASS" } else { "FAIL" });
                    match &report.witness {
                        Some(LtpWitness::UnequalMass {
                            graph,
                            lower_mass,
                            preimage_mass,
                        }) => {
                            out.line(format!("witness graph: {graph}"));
                            out.line(format!(
                                "level-{n} mass {lower_mass} != preimage mass {preimage_mass}"
                            ));
                        }
                        Some(LtpWitness::MassLeak {
                            upper_graph,
                            projection,
                        }) => {
                            out.line(format!(
                                "witness: family member {upper_graph} projects to {projection}, \
                                 which is outside the family"
                            ));
                        }
                        Some(LtpWitness::CertificatePair { g1, g2, .. }) => {
                            out.line(format!("witness pair: G1 = {g1}, G2 = {g2}"));
                            out.line(
                                "equal denominators, strictly positive numerator difference: \
                                 the identity fails for every positive (alpha, beta)",
                            );
                        }
                        None => {}
                    }
                }
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        ConsistencyCmd::Certificate => {
            let cert = dr_refutation()?;
            match format {
                Format::Json => out.line(
                    json!({
                        "terms": cert.difference,
                        "denominators_equal": cert.denominators_equal,
                        "strictly_positive": cert.strictly_positive,
                        "refutes_for_all_parameters": cert.refutes_for_all_parameters(),
                    })
                    .to_string(),
                ),
                _ => {
                    for (a, b, c) in cert.difference.terms() {
                        out.line(format!("b^{b} a^{a}: {c}"));
                    }
                    out.line(format!(
                        "denominators equal: {}; all coefficients positive: {}",
                        cert.denominators_equal, cert.strictly_positive
                    ));
                }
            }
            Ok(0)
        }
        ConsistencyCmd::SsChain { n } => {
            let report = ss_contradiction_chain(*n)?;
            let pass = report.all_pass();
            match format {
                Format::Json => out.line(serde_json::to_string(&report).expect("serializable")),
                _ => {
                    for step in &report.steps {
                        out.line(format!(
                            "{}: {} - {}",
                            step.name,
                            if step.pass { "PASS" } else { "FAIL" },
                            step.detail
                        ));
                    }
                }
            }
            Ok(if pass { 0 } else { 1 })
        }
    }
}
