mod args;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use serde::Serialize;
use serde_json::json;
use xfc_core::analysis::{lemma_audit, typical_clique};
use xfc_core::bounds::{self, BoundValue, SumProfile};
use xfc_core::constructions::{
    complete_layer, exceeder_construction, genl_equality_construction, layer_range,
    q10_construction, small_m_pigeonhole_witness, split_1100_construction, ConstructionMeta,
    LayerSpec,
};
use xfc_core::designs::{
    divisibility_check, lambda_fold, parse_design, sts, write_design, Design, IndexRange,
};
use xfc_core::matrix::{contains_config, max_block_multiplicity, parse_matrix, write_matrix};
use xfc_core::search::{
    exact_max_with, exhaustive_oracle, MultiplicityPolicy, SearchOptions, SearchProblem,
};
use xfc_core::{BinMatrix, Configuration};

use args::*;

/// Exit status for a well-formed request with a negative answer.
const NEGATIVE: u8 = 1;
/// Usage, I/O and parse failures.
const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("xfc: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<serde_json::Error>()
                .is_some_and(|j| j.io_error_kind() == Some(std::io::ErrorKind::BrokenPipe))
    })
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Construct(a) => construct(a),
        Command::Contains(a) => contains(a),
        Command::VerifyDesign(a) => verify_design(a),
        Command::Bounds(a) => bounds(a.formula),
        Command::Analyze(a) => analyze(a),
        Command::Search(a) => search(a),
        Command::Audit(a) => audit(a),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn read_matrix(path: &Path) -> Result<BinMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matrix(&text).with_context(|| format!("{}", path.display()))
}

fn read_design(path: &Path) -> Result<Design> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_design(&text).with_context(|| format!("{}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// `q,t,l`.
fn parse_block(s: &str) -> Result<Configuration> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| anyhow!("configuration {s:?} is not of the form q,t,l"))?;
    match parts[..] {
        [q, t, l] => Ok(Configuration::block(q, t, l)),
        _ => bail!("configuration {s:?} is not of the form q,t,l"),
    }
}

/// `a..b` and `a..=b` are inclusive; otherwise a comma-separated list.
fn parse_sums(s: &str) -> Result<Vec<usize>> {
    let bad = || anyhow!("sum range {s:?} is not `a..b` or a comma-separated list");
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect()
}

/// 1-based `1,4,5` into 0-based rows.
fn parse_rows(s: &str, m: usize) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            let r: usize = p
                .trim()
                .parse()
                .map_err(|_| anyhow!("bad row {p:?} in {s:?}"))?;
            if r == 0 || r > m {
                bail!("row {r} outside 1..={m}");
            }
            Ok(r - 1)
        })
        .collect()
}

fn construct(args: ConstructArgs) -> Result<ExitCode> {
    let out = args.out.as_deref();
    let built = match args.kind {
        ConstructKind::Sts { m, lambda } => {
            let d = lambda_fold(&sts(m)?, lambda)?;
            let text = write_design(&d);
            if args.meta {
                if out.is_some() {
                    emit(&text, out)?;
                }
                print_json(&json!({
                    "m": d.m,
                    "k": d.k,
                    "t": d.t,
                    "lambda": d.lambda,
                    "blocks": d.block_count(),
                    "verified": d.verify().valid,
                    "simple": d.is_simple(),
                }))?;
            } else {
                emit(&text, out)?;
            }
            return Ok(ExitCode::SUCCESS);
        }
        ConstructKind::Kms { m, s } => plain(complete_layer(m, s)?),
        ConstructKind::Layers { m, sums } => {
            plain(layer_range(&LayerSpec::new(m, parse_sums(&sums)?)?))
        }
        ConstructKind::Genl {
            t,
            l,
            lambda,
            m,
            design,
        } => {
            let d = match (design, m) {
                (Some(path), _) => read_design(&path)?,
                (None, Some(m)) if t == 2 => lambda_fold(&sts(m)?, lambda)?,
                (None, Some(_)) => bail!(
                    "t = {t} needs --design with a {t}-(m,{},lambda) design",
                    t + 1
                ),
                (None, None) => bail!("need --m or --design"),
            };
            genl_equality_construction(t, l, &d)?.meta_pair()
        }
        ConstructKind::Exceeder { t, l, lambda } => {
            exceeder_construction(t, l, lambda)?.meta_pair()
        }
        ConstructKind::Q10 { q, m } => q10_construction(q, m)?.meta_pair(),
        ConstructKind::Pigeonhole { q } => small_m_pigeonhole_witness(q)?.meta_pair(),
        ConstructKind::Split1100 { m, a, b } => split_1100_construction(m, a, b)?.meta_pair(),
    };
    let (matrix, meta) = built;
    let text = write_matrix(&matrix);
    if args.meta {
        if out.is_some() {
            emit(&text, out)?;
        }
        print_json(&meta)?;
    } else {
        emit(&text, out)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn plain(matrix: BinMatrix) -> (BinMatrix, ConstructionMeta) {
    let meta = ConstructionMeta {
        m: matrix.rows(),
        ncols: matrix.ncols(),
        claimed_bound: None,
        avoided_configuration: "none".into(),
        verified: true,
        simple: matrix.is_simple(),
    };
    (matrix, meta)
}

trait MetaPair {
    fn meta_pair(self) -> (BinMatrix, ConstructionMeta);
}

impl MetaPair for xfc_core::constructions::Construction {
    fn meta_pair(self) -> (BinMatrix, ConstructionMeta) {
        let meta = self.meta();
        (self.matrix, meta)
    }
}

fn contains(args: ContainsArgs) -> Result<ExitCode> {
    let a = read_matrix(&args.matrix)?;
    let f = match (&args.config, &args.config_file) {
        (Some(s), None) => parse_block(s)?,
        (None, Some(p)) => Configuration::General(read_matrix(p)?),
        _ => bail!("give exactly one of --config and --config-file"),
    };
    let found = contains_config(&f, &a);
    if args.quiet {
        return Ok(if found {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(NEGATIVE)
        });
    }
    let multiplicity = match f {
        Configuration::Block { t, l, .. } if t + l <= a.rows() => {
            let b = max_block_multiplicity(&a, t, l)?;
            Some(json!({
                "count": b.count,
                "ones": b.split.ones.iter().map(|r| r + 1).collect::<Vec<_>>(),
                "zeros": b.split.zeros.iter().map(|r| r + 1).collect::<Vec<_>>(),
            }))
        }
        _ => None,
    };
    if args.json {
        print_json(&json!({
            "contains": found,
            "configuration": f.label(),
            "rows": a.rows(),
            "columns": a.ncols(),
            "max_block_multiplicity": multiplicity,
        }))?;
    } else {
        println!("contains {}: {found}", f.label());
        if let Some(m) = multiplicity {
            println!(
                "max block multiplicity {} on ones {} zeros {}",
                m["count"], m["ones"], m["zeros"]
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_design(args: VerifyDesignArgs) -> Result<ExitCode> {
    let d = read_design(&args.design)?;
    let verdict = d.verify();
    let range = if args.positive_indices {
        IndexRange::PositiveOnly
    } else {
        IndexRange::Standard
    };
    let divisibility = divisibility_check(d.t, d.k, d.lambda, d.m, range);
    print_json(&json!({
        "m": d.m,
        "k": d.k,
        "t": d.t,
        "lambda": d.lambda,
        "valid": verdict.valid,
        "blocks": verdict.blocks,
        "expected_blocks": verdict.expected_blocks,
        "simple": d.is_simple(),
        "witness": verdict.witness,
        "divisibility": divisibility,
    }))?;
    Ok(if verdict.valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(NEGATIVE)
    })
}

fn bounds(formula: Formula) -> Result<ExitCode> {
    let value: BoundValue = match formula {
        Formula::Designconfig { t, k, lambda, m } => bounds::designconfig_bound(t, k, lambda, m)?,
        Formula::Genl { t, l, lambda, m } => bounds::genl_bound(t, l, lambda, m),
        Formula::DesignTplus1 { t, l, lambda, m } => bounds::design_tplus1_bound(t, l, lambda, m),
        Formula::Q10Lower { q, m } => bounds::q10_lower(q, m)?,
        Formula::Q10Upper { q, m } => bounds::q10_upper(q, m)?,
        Formula::Bound1100 { lambda, m } => bounds::bound_1100(lambda, m),
        Formula::Design1100 { lambda, m } => bounds::design_1100_bound(lambda, m),
        Formula::Turan { m, t, k, edges } => {
            let v = bounds::turan_threshold(m, t, k)?;
            if let Some(n) = edges {
                let mut j = serde_json::to_value(v.to_json())?;
                j["forces_clique"] = json!(bounds::turan_forces_clique(m, t, k, n)?);
                print_json(&j)?;
                return Ok(ExitCode::SUCCESS);
            }
            v
        }
        Formula::ExceederGap { t, l, lambda } => bounds::exceeder_gap(t, l, lambda)?,
        Formula::Pigeonhole {
            t,
            l,
            lambda,
            m,
            a_t,
            a_t1,
            a_ge_t2,
        } => {
            let terms =
                bounds::pigeonhole_terms(t, l, lambda, m, SumProfile { a_t, a_t1, a_ge_t2 })?;
            print_json(&terms)?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    print_json(&value.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn analyze(args: AnalyzeArgs) -> Result<ExitCode> {
    let a = read_matrix(&args.matrix)?;
    let rowsets = args
        .rowsets
        .iter()
        .map(|s| parse_rows(s, a.rows()))
        .collect::<Result<Vec<_>>>()?;
    let mut report = lemma_audit(&a, args.t, args.l, args.lambda, &rowsets)?;
    if !args.witness {
        report.strip_witnesses();
    }
    let mut value = serde_json::to_value(&report)?;
    if let Some(k) = args.clique {
        let clique = typical_clique(&a, args.t, args.lambda, k)?;
        value["typical_clique"] =
            json!(clique.map(|b| b.iter().map(|r| r + 1).collect::<Vec<_>>()));
    }
    print_json(&value)?;
    Ok(ExitCode::SUCCESS)
}

fn search(args: SearchArgs) -> Result<ExitCode> {
    let config = parse_block(&args.config)?;
    let sums = match &args.sums {
        Some(s) => parse_sums(s)?,
        None => (0..=args.m).collect(),
    };
    let policy: MultiplicityPolicy = args.policy.parse()?;
    let problem = SearchProblem::new(args.m, config, sums, policy)?.with_budget(args.budget_nodes);
    let result = if args.oracle {
        exhaustive_oracle(&problem)?
    } else {
        exact_max_with(
            &problem,
            SearchOptions {
                workers: args.workers,
            },
        )?
    };
    if let Some(p) = &args.witness_out {
        emit(&write_matrix(&result.witness), Some(p))?;
    }
    print_json(&result.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn audit(args: AuditArgs) -> Result<ExitCode> {
    let mut rows = Vec::new();
    let mut all = true;
    for &m in &args.m {
        for &lambda in &args.lambda {
            let d = lambda_fold(&sts(m)?, lambda)?;
            let c = genl_equality_construction(2, 1, &d)?;
            let mut report = lemma_audit(&c.matrix, 2, 1, lambda, &[])?;
            if !args.witness {
                report.strip_witnesses();
            }
            all &= report.all_pass;
            let failed: Vec<&str> = report
                .verdicts
                .iter()
                .filter(|v| !v.holds)
                .map(|v| v.id.as_str())
                .collect();
            rows.push(json!({
                "m": m,
                "lambda": lambda,
                "columns": c.matrix.ncols(),
                "all_pass": report.all_pass,
                "failed": failed,
                "verdicts": report.verdicts,
            }));
        }
    }
    print_json(&rows)?;
    Ok(if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(NEGATIVE)
    })
}
