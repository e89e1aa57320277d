//! ellblocks — exact ℓ-block and ℓ-defect computations for symmetric groups
//! and wreath products, with machine-checkable verification reports.
//!
//! Exit codes: 0 success / all checks pass; 1 a verified statement failed on
//! this instance (witnesses are in the report); 2 invalid input.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ellblocks::blocks::{block_partition, validate_closed};
use ellblocks::normalizer::{build_holomorph, holomorph_base_table};
use ellblocks::partitions::{ell_decompose, Partition};
use ellblocks::symmetric::{character_table, ell_regular_classes, sn_group_model};
use ellblocks::verify::{
    find_sign_isometry, run_sweep, sn_char_count, verify_congruence, verify_hook_defect,
    verify_isometries, verify_max_defect_weight, verify_mckay, verify_nakayama,
    verify_per_defect, wreath_char_count, SweepBounds, VerifyOutcome,
};
use ellblocks::wreath::{wreath_table, BaseTable};
use ellblocks::Error;

#[derive(Parser)]
#[command(name = "ellblocks", version)]
#[command(about = "Exact l-blocks and l-defects of symmetric groups and wreath products")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (JSON is canonical; CSV flattens per-character rows)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to a file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseKind {
    /// Cyclic group of order ell
    Cyclic,
    /// Holomorph of the cyclic group (normalizer of an ell-cycle in S_ell)
    Holomorph,
}

#[derive(Subcommand)]
enum Command {
    /// Exact character table of the symmetric group S_n
    SnTable {
        #[arg(long)]
        n: u64,
    },
    /// Exact character table of (base) wr S_w
    WreathTable {
        #[arg(long, value_enum)]
        base: BaseKind,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        w: u64,
    },
    /// Classes, character table and pi-class of the holomorph of Z_ell
    Holomorph {
        #[arg(long)]
        ell: u64,
    },
    /// l-block partition of Irr(S_n) over l-regular classes
    Blocks {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        ell: u32,
    },
    /// Per-character l-defects of S_n with core/quotient/weight data
    Defects {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        ell: u32,
    },
    /// Theorem checks with pass/fail reports and witnesses
    Verify {
        #[command(subcommand)]
        check: VerifyCmd,
    },
    /// Run the full verification sweep over default (or overridden) bounds
    Sweep {
        /// Block/defect/isometry sweeps cover 2 <= ell <= n <= max-n
        #[arg(long, default_value_t = 10)]
        max_n: u64,
        /// Wreath sweeps cover ell^w * w! <= this cap
        #[arg(long, default_value_t = 5000)]
        wreath_order_cap: u128,
        /// Additional cap on ell for wreath sweeps
        #[arg(long, default_value_t = 30)]
        wreath_max_ell: u64,
        /// Normalizer sweeps cover (ell*phi(ell))^w * w! * r! <= this cap
        #[arg(long, default_value_t = 5000)]
        mckay_order_cap: u128,
        /// ... and n = ell*w + r <= this bound
        #[arg(long, default_value_t = 12)]
        mckay_max_n: u64,
        /// Maximal-weight sweep covers n <= this bound (with n < ell^2)
        #[arg(long, default_value_t = 12)]
        max_weight_max_n: u64,
        /// Holomorph block-structure sweep covers ell up to this bound
        #[arg(long, default_value_t = 7)]
        holomorph_max_ell: u64,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Block partition of Irr(S_n) equals the partition by l-core
    Nakayama {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        ell: u32,
    },
    /// Direct l-defects equal the hook-length defect formula
    HookDefect {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        ell: u32,
    },
    /// Maximal-defect characters have maximal weight; boosts scale defects
    MaxWeight {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        ell: u32,
    },
    /// Sign isometry from an S_n block onto Irr(Z_ell wr S_w)
    Isometry {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        ell: u32,
        /// Core of the block, e.g. "2,1" or "-" (default: all blocks of
        /// weight >= 1)
        #[arg(long)]
        core: Option<String>,
    },
    /// Normalized regular inner products are integers = (-1)^w mod ell
    Congruence {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        w: u64,
    },
    /// Maximal-defect counts agree between S_n and the Sylow normalizer
    Mckay {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        r: u64,
    },
    /// Per-defect histograms agree for every defect != 1
    PerDefect {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        r: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().is_err() {
            eprintln!("ellblocks: could not configure {jobs} worker threads");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ellblocks: {e}");
            ExitCode::from(2)
        }
    }
}

/// Table cells allowed before the safety valve trips; override with
/// ELLBLOCKS_MAX_CELLS.
fn max_cells() -> u128 {
    std::env::var("ELLBLOCKS_MAX_CELLS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000_000)
}

fn check_cells(rows: u128, cols: u128, what: &str) -> Result<(), Error> {
    let cells = rows.saturating_mul(cols);
    if cells > max_cells() {
        return Err(Error::invalid(format!(
            "{what} needs {cells} cells, above the ELLBLOCKS_MAX_CELLS limit of {}",
            max_cells()
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::SnTable { n } => {
            if *n < 1 {
                return Err(Error::invalid("sn-table requires n >= 1"));
            }
            check_cells(sn_char_count(*n), sn_char_count(*n), "character table")?;
            let table = character_table(*n);
            let csv = sn_table_csv(&table);
            emit(cli, table.to_json(), csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::WreathTable { base, ell, w } => {
            if *ell < 2 || *w < 1 {
                return Err(Error::invalid("wreath-table requires ell >= 2 and w >= 1"));
            }
            let base_table = match base {
                BaseKind::Cyclic => BaseTable::cyclic(*ell),
                BaseKind::Holomorph => holomorph_base_table(*ell)?.0,
            };
            let count = wreath_char_count(base_table.num_classes(), *w);
            check_cells(count, count, "wreath character table")?;
            let table = wreath_table(&base_table, *w);
            let json = wreath_table_json(&table);
            let csv = wreath_table_csv(&table);
            emit(cli, json, csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Holomorph { ell } => {
            if *ell < 2 {
                return Err(Error::invalid("holomorph requires ell >= 2"));
            }
            let g = build_holomorph(*ell)?;
            check_cells(g.num_classes() as u128, g.num_classes() as u128, "holomorph table")?;
            let json = holomorph_json(&g);
            let csv = holomorph_csv(&g);
            emit(cli, json, csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Blocks { n, ell } => {
            let (report, _) = sn_blocks(*n, *ell)?;
            let mut json = report.to_json();
            json["group"] = json!(format!("S{n}"));
            json["ell"] = json!(ell);
            let csv = blocks_csv(&report);
            emit(cli, json, csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Defects { n, ell } => {
            let (report, table) = sn_blocks(*n, *ell)?;
            let rows: Vec<Value> = table
                .characters()
                .iter()
                .enumerate()
                .map(|(i, lam)| {
                    let dec = ell_decompose(lam, *ell);
                    json!({
                        "character": lam.to_string(),
                        "core": dec.core.to_string(),
                        "quotient": dec.quotient.to_string(),
                        "weight": dec.weight,
                        "defect": report.defects[i],
                    })
                })
                .collect();
            let json = json!({"group": format!("S{n}"), "ell": ell, "defects": rows});
            let mut csv = String::from("character,core,quotient,weight,defect\n");
            for (i, lam) in table.characters().iter().enumerate() {
                let dec = ell_decompose(lam, *ell);
                csv.push_str(&format!(
                    "\"{}\",\"{}\",\"{}\",{},{}\n",
                    lam, dec.core, dec.quotient, dec.weight, report.defects[i]
                ));
            }
            emit(cli, json, csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { check } => {
            let outcomes = run_verify(check)?;
            let pass = outcomes.iter().all(|o| o.pass);
            let json = if outcomes.len() == 1 {
                outcomes[0].to_json()
            } else {
                json!({
                    "pass": pass,
                    "reports": outcomes.iter().map(VerifyOutcome::to_json).collect::<Vec<_>>(),
                })
            };
            emit(cli, json, outcomes_csv(&outcomes))?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Sweep {
            max_n,
            wreath_order_cap,
            wreath_max_ell,
            mckay_order_cap,
            mckay_max_n,
            max_weight_max_n,
            holomorph_max_ell,
        } => {
            let bounds = SweepBounds {
                max_n: *max_n,
                wreath_order_cap: *wreath_order_cap,
                wreath_ell_cap: *wreath_max_ell,
                mckay_order_cap: *mckay_order_cap,
                mckay_max_n: *mckay_max_n,
                max_weight_max_n: *max_weight_max_n,
                holomorph_max_ell: *holomorph_max_ell,
            };
            let summary = run_sweep(&bounds)?;
            let pass = summary.failed == 0;
            emit(cli, summary.to_json(), outcomes_csv(&summary.outcomes))?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn run_verify(check: &VerifyCmd) -> Result<Vec<VerifyOutcome>, Error> {
    match check {
        VerifyCmd::Nakayama { n, ell } => Ok(vec![verify_nakayama(*n, *ell)?]),
        VerifyCmd::HookDefect { n, ell } => Ok(vec![verify_hook_defect(*n, *ell)?]),
        VerifyCmd::MaxWeight { n, ell } => Ok(vec![verify_max_defect_weight(*n, *ell)?]),
        VerifyCmd::Isometry { n, ell, core } => match core {
            Some(core_str) => {
                let core = Partition::from_str(core_str)?;
                Ok(vec![find_sign_isometry(*n, *ell, &core)?])
            }
            None => verify_isometries(*n, *ell),
        },
        VerifyCmd::Congruence { ell, w } => Ok(vec![verify_congruence(*ell, *w)?]),
        VerifyCmd::Mckay { ell, w, r } => Ok(vec![verify_mckay(*ell, *w, *r)?]),
        VerifyCmd::PerDefect { ell, w, r } => Ok(vec![verify_per_defect(*ell, *w, *r)?]),
    }
}

fn sn_blocks(
    n: u64,
    ell: u32,
) -> Result<(ellblocks::blocks::BlockReport, ellblocks::symmetric::SnCharacterTable), Error> {
    if n < 1 {
        return Err(Error::invalid("requires n >= 1"));
    }
    if ell < 2 {
        return Err(Error::invalid("requires ell >= 2"));
    }
    check_cells(sn_char_count(n), sn_char_count(n), "contribution matrix")?;
    let table = character_table(n);
    let model = sn_group_model(&table);
    let set = ell_regular_classes(n, ell).into_iter().collect();
    let closed = validate_closed(&model, &set)?;
    let report = block_partition(&model, &closed)?;
    Ok((report, table))
}

fn emit(cli: &Cli, json: Value, csv: String) -> Result<(), Error> {
    let content = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => csv,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| Error::invalid(format!("cannot write to stdout: {e}"))),
    }
}

// ---- flattened CSV forms ----------------------------------------------------

fn sn_table_csv(t: &ellblocks::symmetric::SnCharacterTable) -> String {
    let mut s = String::from("character");
    for c in t.classes() {
        s.push_str(&format!(",\"{}\"", c.partition));
    }
    s.push('\n');
    for (i, lam) in t.characters().iter().enumerate() {
        s.push_str(&format!("\"{lam}\""));
        for j in 0..t.classes().len() {
            s.push_str(&format!(",{}", t.value(i, j)));
        }
        s.push('\n');
    }
    s
}

fn cyclo_json(v: &ellblocks::arith::CycloValue) -> Value {
    json!({
        "conductor": v.conductor(),
        "coeffs": v.to_dense().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn wreath_table_json(t: &ellblocks::wreath::WreathTable) -> Value {
    json!({
        "group": format!("{} wr S{}", t.base.name, t.w),
        "base": t.base.name,
        "w": t.w,
        "conductor": t.base.conductor,
        "characters": t.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "classes": t.classes.iter().map(|c| json!({
            "label": c.shape.to_string(),
            "size": c.class_size.to_string(),
            "element_order": c.element_order,
        })).collect::<Vec<_>>(),
        "regular_classes": t.regular_classes().iter().map(|&i| t.classes[i].shape.to_string()).collect::<Vec<_>>(),
        "values": (0..t.labels.len()).map(|i| {
            (0..t.classes.len()).map(|j| cyclo_json(t.value(i, j))).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

fn wreath_table_csv(t: &ellblocks::wreath::WreathTable) -> String {
    let mut s = String::from("character");
    for c in &t.classes {
        s.push_str(&format!(",\"{}\"", c.shape));
    }
    s.push('\n');
    for (i, lam) in t.labels.iter().enumerate() {
        s.push_str(&format!("\"{lam}\""));
        for j in 0..t.classes.len() {
            s.push_str(&format!(",\"{}\"", t.value(i, j)));
        }
        s.push('\n');
    }
    s
}

fn holomorph_json(g: &ellblocks::normalizer::HolomorphGroup) -> Value {
    json!({
        "group": format!("Hol(Z{})", g.ell),
        "order": g.order,
        "conductor": g.conductor,
        "pi_class": g.pi_class,
        "classes": (0..g.num_classes()).map(|c| json!({
            "representative": format!("({},{})", g.class_rep(c).0, g.class_rep(c).1),
            "size": g.class_size(c),
        })).collect::<Vec<_>>(),
        "characters": g.char_labels().to_vec(),
        "values": (0..g.num_classes()).map(|i| {
            (0..g.num_classes()).map(|j| cyclo_json(g.value(i, j))).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

fn holomorph_csv(g: &ellblocks::normalizer::HolomorphGroup) -> String {
    let mut s = String::from("character");
    for c in 0..g.num_classes() {
        let rep = g.class_rep(c);
        s.push_str(&format!(",\"({},{})\"", rep.0, rep.1));
    }
    s.push('\n');
    for i in 0..g.num_classes() {
        s.push_str(&format!("\"{}\"", g.char_labels()[i]));
        for j in 0..g.num_classes() {
            s.push_str(&format!(",\"{}\"", g.value(i, j)));
        }
        s.push('\n');
    }
    s
}

fn blocks_csv(report: &ellblocks::blocks::BlockReport) -> String {
    let mut s = String::from("character,block,defect\n");
    for (i, label) in report.char_labels.iter().enumerate() {
        s.push_str(&format!("\"{label}\",{},{}\n", report.block_of(i), report.defects[i]));
    }
    s
}

fn outcomes_csv(outcomes: &[VerifyOutcome]) -> String {
    let mut s = String::from("instance,theorem,pass,witnesses\n");
    for o in outcomes {
        s.push_str(&format!(
            "\"{}\",\"{}\",{},{}\n",
            o.instance,
            o.theorem,
            o.pass,
            o.witnesses.len()
        ));
    }
    s
}
