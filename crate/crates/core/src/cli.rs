//! The `mrdom` command line. [`run`] is the whole program minus process
//! plumbing so it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certificates::certificate_for;
use crate::closed_forms::{lemma_failures, predict, tree_independence_bounds, tree_support_leaf_bound, TheoremId};
use crate::error::{Error, Result};
use crate::family::GraphSpec;
use crate::graph::Graph;
use crate::harness::{check, export, CheckOptions, Format, Params, DEFAULT_EXACT_CAP};
use crate::mrdf::{validate_with, ThresholdMode};
use crate::solver::{solve, Method, SolveOptions};
use crate::tree::TreeProfile;

#[derive(Parser, Debug)]
#[command(
    name = "mrdom",
    version,
    about = "Majority Roman domination: exact solver, certificates and bound checks"
)]
pub struct Cli {
    /// Worker threads for the solver and the harness.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Majority threshold: ceil(n/2) (default) or the experimental floor(n/2).
    #[arg(long, global = true, value_enum, default_value_t = Threshold::Ceil)]
    pub threshold_mode: Threshold,
    /// Seed for random trees and sampled instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    Ceil,
    Floor,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Bnb,
    Brute,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the exact optimum and a witness labeling.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Bnb)]
        method: MethodArg,
        /// Stop after this many search nodes (result is then unproven).
        #[arg(long)]
        node_limit: Option<u64>,
        /// Known upper bound used to seed the search.
        #[arg(long, allow_hyphen_values = true)]
        upper: Option<i64>,
    },
    /// Write a generated graph as an edge list.
    Gen {
        #[command(flatten)]
        graph: GraphArgs,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a theorem's certificate labeling.
    Cert {
        /// Theorem id, e.g. wheel, cpath, corona_k3, tree_support_leaf.
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        graph: GraphArgs,
        /// Also validate the labeling against the generated graph.
        #[arg(long)]
        validate: bool,
    },
    /// Cross-check a theorem over a parameter range.
    Check {
        /// Theorem id, or the aliases corona_upper and tree_independence.
        #[arg(long)]
        theorem: String,
        /// Inclusive parameter range, `a..b`.
        #[arg(long, conflicts_with = "spec")]
        range: Option<String>,
        /// Explicit instances; repeatable.
        #[arg(long)]
        spec: Vec<String>,
        /// Write rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write rows as JSON lines.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Random instances per order for sampled theorems.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Largest order solved exactly.
        #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
        exact_cap: usize,
        /// Exit 2 on any MISMATCH or CERT_INVALID row.
        #[arg(long)]
        strict: bool,
    },
    /// Closed-form values and bounds for a graph; full profile for trees.
    Bounds {
        /// Edge-list file holding a tree.
        #[arg(long, conflicts_with_all = ["spec", "family"])]
        tree: Option<PathBuf>,
        #[command(flatten)]
        graph: GraphArgs,
        /// Also solve exactly.
        #[arg(long)]
        exact: bool,
    },
    /// Check the corona counting inequality on a grid.
    Lemma {
        /// Largest n checked (from 1).
        #[arg(long, default_value_t = 500)]
        n_max: usize,
        /// Largest m checked (from 3).
        #[arg(long, default_value_t = 500)]
        m_max: usize,
    },
}

#[derive(Args, Debug, Default)]
pub struct GraphArgs {
    /// Family name, e.g. wheel, complete, cpath, join, tree.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Second family parameter (join, double_star).
    #[arg(long)]
    pub m: Option<usize>,
    /// Full graph spec, e.g. `corona(complete(3),cycle(4))`.
    #[arg(long, conflicts_with = "family")]
    pub spec: Option<String>,
    /// Edge-list file.
    #[arg(long, conflicts_with_all = ["family", "spec"])]
    pub file: Option<PathBuf>,
}

impl GraphArgs {
    fn resolve(&self, seed: u64) -> Result<GraphSpec> {
        self.resolve_for(seed, None)
    }

    /// `theorem` supplies the family when only `--n`/`--m` are given.
    fn resolve_for(&self, seed: u64, theorem: Option<TheoremId>) -> Result<GraphSpec> {
        if let Some(s) = &self.spec {
            return s.parse();
        }
        if let Some(p) = &self.file {
            return Ok(GraphSpec::FromFile(p.clone()));
        }
        let family = self
            .family
            .as_deref()
            .or(theorem.and_then(theorem_family))
            .ok_or_else(|| Error::Precondition("one of --family, --spec or --file is required".into()))?;
        let n = self
            .n
            .ok_or_else(|| Error::Precondition(format!("--family {family} needs --n")))?;
        let text = match (family, self.m) {
            ("tree" | "random_tree", _) => format!("tree({n},{seed})"),
            (_, Some(m)) => format!("{family}({n},{m})"),
            (_, None) => format!("{family}({n})"),
        };
        text.parse()
    }
}

fn theorem_family(id: TheoremId) -> Option<&'static str> {
    use TheoremId as T;
    Some(match id {
        T::Complete => "complete",
        T::JoinComplete => "join",
        T::Wheel => "wheel",
        T::Fan => "fan",
        T::Star => "star",
        T::ComplementPath => "cpath",
        T::ComplementCycle => "ccycle",
        T::CompleteMinusMatching => "kmm",
        T::CoronaK3 => "corona_k3",
        T::TreeSupportLeaf | T::TreeDomination | T::TreeIndependenceProof => "tree",
        _ => return None,
    })
}

fn mode(t: Threshold) -> ThresholdMode {
    match t {
        Threshold::Ceil => ThresholdMode::Ceil,
        Threshold::Floor => ThresholdMode::Floor,
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 success, 1 usage or input error,
/// 2 when `check --strict` finds a MISMATCH or CERT_INVALID row.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        // A closed stdout (e.g. piped into `head`) is not an error.
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if cli.threads == 0 {
        return Err(Error::Precondition("--threads must be at least 1".into()));
    }
    let threshold = mode(cli.threshold_mode);
    if threshold == ThresholdMode::Floor {
        writeln!(
            out,
            "EXPERIMENTAL: threshold mode floor(n/2); results are not the normative definition"
        )?;
    }
    let solve_opts = SolveOptions {
        threads: cli.threads,
        threshold,
        ..SolveOptions::default()
    };
    match &cli.command {
        Command::Solve {
            graph,
            method,
            node_limit,
            upper,
        } => {
            let spec = graph.resolve(cli.seed)?;
            let g = spec.generate()?;
            let opts = SolveOptions {
                method: match method {
                    MethodArg::Bnb => Method::BranchAndBound,
                    MethodArg::Brute => Method::BruteForce,
                },
                node_limit: *node_limit,
                initial_upper_bound: *upper,
                ..solve_opts
            };
            let r = solve(&g, &opts)?;
            writeln!(out, "graph    {} (n={}, m={})", spec.label(), g.order(), g.edge_count())?;
            writeln!(out, "optimum  {}", r.optimum)?;
            writeln!(out, "proven   {}", r.proven)?;
            writeln!(out, "witness  {}", r.witness)?;
            writeln!(out, "nodes    {}", r.nodes_explored)?;
            writeln!(out, "method   {}", method_name(r.method))?;
            writeln!(err, "elapsed  {:.3}s", r.elapsed.as_secs_f64())?;
            writeln!(
                out,
                "RESULT graph={} n={} optimum={} proven={} nodes={} method={} witness={}",
                spec.label(),
                g.order(),
                r.optimum,
                r.proven,
                r.nodes_explored,
                method_name(r.method),
                r.witness
            )?;
            Ok(0)
        }
        Command::Gen { graph, output } => {
            let spec = graph.resolve(cli.seed)?;
            let g = spec.generate()?;
            let text = g.to_edge_list();
            match output {
                Some(p) => {
                    std::fs::write(p, &text)?;
                    writeln!(
                        out,
                        "RESULT graph={} n={} m={} file={}",
                        spec.label(),
                        g.order(),
                        g.edge_count(),
                        p.display()
                    )?;
                }
                None => {
                    out.write_all(text.as_bytes())?;
                }
            }
            Ok(0)
        }
        Command::Cert {
            theorem,
            graph,
            validate,
        } => {
            let id: TheoremId = theorem.parse()?;
            let spec = graph.resolve_for(cli.seed, Some(id))?;
            let cert = certificate_for(id, &spec)?
                .ok_or_else(|| Error::Precondition(format!("{id} has no certificate for {}", spec.label())))?;
            writeln!(out, "graph          {}", spec.label())?;
            writeln!(out, "theorem        {id}")?;
            writeln!(out, "labeling       {}", cert.labeling)?;
            writeln!(out, "weight         {}", cert.weight())?;
            writeln!(out, "claimed        {} ({:?})", cert.claimed_weight, cert.claim)?;
            writeln!(out, "transcription  {:?}", cert.transcription)?;
            let defects: Vec<String> = cert.defects.iter().map(|d| d.to_string()).collect();
            writeln!(
                out,
                "defects        {}",
                if defects.is_empty() {
                    "none".into()
                } else {
                    defects.join(" ")
                }
            )?;
            if let Some(note) = &cert.note {
                writeln!(out, "note           {note}")?;
            }
            let mut result = format!(
                "RESULT graph={} theorem={id} weight={} claimed={} defects={}",
                spec.label(),
                cert.weight(),
                cert.claimed_weight,
                cert.defects.len()
            );
            if *validate {
                let g = spec.generate()?;
                let rep = validate_with(&g, &cert.labeling, threshold)?;
                writeln!(out, "valid          {}", rep.is_valid)?;
                writeln!(
                    out,
                    "satisfied      {} / threshold {}",
                    rep.satisfied_count, rep.threshold
                )?;
                writeln!(out, "roman_violations {:?}", rep.roman_violations)?;
                result.push_str(&format!(" valid={} satisfied={}", rep.is_valid, rep.satisfied_count));
            }
            writeln!(out, "{result}")?;
            Ok(0)
        }
        Command::Check {
            theorem,
            range,
            spec,
            csv,
            json,
            samples,
            exact_cap,
            strict,
        } => {
            let params = match range {
                Some(r) => r.parse::<Params>()?,
                None if !spec.is_empty() => Params::Specs(spec.iter().map(|s| s.parse()).collect::<Result<_>>()?),
                None => return Err(Error::Precondition("check needs --range or --spec".into())),
            };
            let opts = CheckOptions {
                solve: solve_opts,
                exact_cap: *exact_cap,
                samples: *samples,
                seed: cli.seed,
            };
            let report = check(theorem, &params, &opts)?;
            out.write_all(export(&report, Format::Table).as_bytes())?;
            if let Some(p) = csv {
                std::fs::write(p, export(&report, Format::Csv))?;
            }
            if let Some(p) = json {
                std::fs::write(p, export(&report, Format::JsonLines))?;
            }
            let tally: Vec<String> = report
                .tally()
                .iter()
                .map(|(v, n)| format!("{}={n}", v.as_str().to_lowercase()))
                .collect();
            writeln!(
                out,
                "RESULT theorem={theorem} rows={} {}",
                report.rows.len(),
                tally.join(" ")
            )?;
            Ok(if *strict && report.has_failures() { 2 } else { 0 })
        }
        Command::Bounds { tree, graph, exact } => {
            let spec = match tree {
                Some(p) => GraphSpec::FromFile(p.clone()),
                None => graph.resolve(cli.seed)?,
            };
            let g = spec.generate()?;
            writeln!(out, "graph  {} (n={}, m={})", spec.label(), g.order(), g.edge_count())?;
            if tree.is_some() && !g.is_tree() {
                return Err(Error::NotATree(spec.label()));
            }
            if g.is_tree() && g.order() >= 2 {
                tree_profile(&g, out)?;
            }
            for p in predict(&spec)? {
                match p.value {
                    Some(v) => writeln!(out, "{:<26} {:<12} {v}", p.source.as_str(), kind_name(p.kind))?,
                    None => writeln!(
                        out,
                        "{:<26} {:<12} n/a ({})",
                        p.source.as_str(),
                        kind_name(p.kind),
                        p.inapplicable_reason.unwrap_or_default()
                    )?,
                }
            }
            let mut result = format!("RESULT graph={} n={}", spec.label(), g.order());
            if *exact {
                let r = solve(&g, &solve_opts)?;
                writeln!(out, "{:<26} {:<12} {}", "optimum", "exact", r.optimum)?;
                result.push_str(&format!(" optimum={}", r.optimum));
            }
            writeln!(out, "{result}")?;
            Ok(0)
        }
        Command::Lemma { n_max, m_max } => {
            if *n_max < 1 || *m_max < 3 {
                return Err(Error::Precondition("lemma needs --n-max >= 1 and --m-max >= 3".into()));
            }
            let failures = lemma_failures(*n_max, *m_max);
            let grid = format!("{}×{}", n_max, m_max - 2);
            if failures.is_empty() {
                writeln!(out, "inequality holds on {grid} grid")?;
            } else {
                writeln!(out, "inequality fails at {} of the {grid} grid points", failures.len())?;
                for (n, m) in failures.iter().take(20) {
                    writeln!(out, "  n={n} m={m}")?;
                }
            }
            writeln!(out, "RESULT n_max={n_max} m_max={m_max} failures={}", failures.len())?;
            Ok(0)
        }
    }
}

fn tree_profile(g: &Graph, out: &mut dyn Write) -> Result<()> {
    let p = TreeProfile::of(g)?;
    writeln!(
        out,
        "tree   gamma={} beta0={} supports={} leaves={}",
        p.gamma, p.beta0, p.supports, p.leaves
    )?;
    if p.n == 2 {
        // each endpoint of P_2 is both a support and a leaf; (1,1) is the other reading
        writeln!(
            out,
            "P_2    support/leaf bound {} with (s,l)=(2,2), {} with (s,l)=(1,1)",
            tree_support_leaf_bound(2, 2, 2)?,
            tree_support_leaf_bound(2, 1, 1)?
        )?;
    }
    let ind = tree_independence_bounds(p.n, p.beta0)?;
    writeln!(
        out,
        "independence  stated 2n-beta0={}  proof 2n-3beta0={}",
        ind.stated, ind.proof_derived
    )?;
    Ok(())
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::BruteForce => "brute",
        Method::BranchAndBound => "bnb",
    }
}

fn kind_name(k: crate::closed_forms::BoundKind) -> &'static str {
    use crate::closed_forms::BoundKind::*;
    match k {
        ExactValue => "exact",
        UpperBound => "upper",
        LowerBound => "lower",
    }
}
