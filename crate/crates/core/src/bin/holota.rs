//! Command-line front end. Every subcommand reads a TOML config and writes
//! CSV (plus SVG/TOML where relevant) into the output directory.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use holota::config::{linspace_step, RunConfig};
use holota::farfield::{write_pattern_csv, write_sweep_csv};
use holota::feed::{efficiency_report, optimize_f_over_d, write_feed_opt_csv};
use holota::pipeline::{run_synth, write_synth, Design};
use holota::sheet::{sweep_sheet, write_sheet_csv};
use holota::unit_cell::{write_cell_curves_csv, write_cell_table};
use holota::units::ETA0;
use holota::Result;

#[derive(Parser)]
#[command(name = "holota", version, about = "Holographic transmitarray synthesis and analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Design frequency override, GHz
    #[arg(long)]
    freq: Option<f64>,
    /// First beam elevation override, degrees
    #[arg(long)]
    theta0: Option<f64>,
    /// First beam azimuth override, degrees
    #[arg(long)]
    phi0: Option<f64>,
    /// Output directory (default: `[output] dir` of the config)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hologram CSV, layout SVG and summary
    Synth(Common),
    /// Far-field pattern CSV and metrics at the design frequency
    Pattern(Common),
    /// Gain and beam direction versus frequency
    Sweep(Common),
    /// Feed efficiency versus F/D and the optimum
    FeedOpt(Common),
    /// Cell table curves versus radius, one block per angle bin
    CellCurves(Common),
    /// Infinite-sheet transmission versus reactance (R = 20 ohm)
    SheetCurves(Common),
    /// Cell table, hologram and layout
    Export(Common),
}

fn prepare(c: &Common) -> Result<(RunConfig, PathBuf)> {
    let mut cfg = RunConfig::from_path(&c.config)?;
    cfg.apply_overrides(c.freq, c.theta0, c.phi0)?;
    let out = c.out.clone().unwrap_or_else(|| cfg.output_dir());
    fs::create_dir_all(&out)?;
    Ok((cfg, out))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(cmd: Command) -> Result<Vec<PathBuf>> {
    match cmd {
        Command::Synth(c) => {
            let (cfg, out) = prepare(&c)?;
            let art = run_synth(&Design::from_config(&cfg)?)?;
            write_synth(&art, &out)
        }
        Command::Pattern(c) => {
            let (cfg, out) = prepare(&c)?;
            let design = Design::from_config(&cfg)?;
            let map = design.synthesize()?;
            let pattern = design.pattern(&map, cfg.antenna.freq_ghz, &design.hemisphere()?)?;
            let m = design.metrics(&pattern)?;
            let csv = out.join("pattern.csv");
            write_pattern_csv(&pattern, create(&csv)?)?;
            let summary = out.join("metrics.toml");
            fs::write(
                &summary,
                format!(
                    "freq_ghz = {}\npeak_theta_deg = {}\npeak_phi_deg = {}\ndirectivity_dbi = {}\nsll_db = {}\nbeamwidth_3db_deg = {}\naperture_efficiency = {}\n",
                    cfg.antenna.freq_ghz,
                    m.peak_direction.0,
                    m.peak_direction.1,
                    m.directivity_dbi,
                    m.sll_db,
                    m.beamwidth_3db,
                    m.aperture_efficiency
                ),
            )?;
            Ok(vec![csv, summary])
        }
        Command::Sweep(c) => {
            let (cfg, out) = prepare(&c)?;
            let design = Design::from_config(&cfg)?;
            let map = design.synthesize()?;
            let sweep = design.sweep(&map)?;
            let csv = out.join("sweep.csv");
            write_sweep_csv(&sweep, create(&csv)?)?;
            let summary = out.join("sweep_summary.toml");
            let mut text = String::new();
            if let Some(bw) = sweep.bandwidth {
                text += &format!(
                    "bandwidth_lo_ghz = {}\nbandwidth_hi_ghz = {}\nbandwidth_open_lo = {}\nbandwidth_open_hi = {}\nbandwidth_relative = {}\n",
                    bw.lo, bw.hi, bw.open_lo, bw.open_hi, bw.relative
                );
            }
            for (f, sq) in sweep.squint() {
                text += &format!("# squint at {f} GHz: {sq} deg\n");
            }
            fs::write(&summary, text)?;
            Ok(vec![csv, summary])
        }
        Command::FeedOpt(c) => {
            let (cfg, out) = prepare(&c)?;
            let (q, spread) = (cfg.feed.q, cfg.flags.include_spread);
            let samples = linspace_step(0.3, 1.5, 0.01)
                .into_iter()
                .map(|fd| efficiency_report(q, fd, spread))
                .collect::<Result<Vec<_>>>()?;
            let (_, best) = optimize_f_over_d(q, (0.3, 1.5), spread)?;
            let csv = out.join("feed_opt.csv");
            write_feed_opt_csv(&samples, &best, cfg.diameter(), create(&csv)?)?;
            Ok(vec![csv])
        }
        Command::CellCurves(c) => {
            let (cfg, out) = prepare(&c)?;
            let table = holota::pipeline::build_table(&cfg)?;
            let rows = table.curves(table.angles(), cfg.antenna.freq_ghz);
            let csv = out.join("cell_curves.csv");
            write_cell_curves_csv(&rows, create(&csv)?)?;
            Ok(vec![csv])
        }
        Command::SheetCurves(c) => {
            let (_, out) = prepare(&c)?;
            let rows = sweep_sheet(20.0, (-1000.0, 1000.0), 5.0, ETA0)?;
            let csv = out.join("sheet_curves.csv");
            write_sheet_csv(&rows, create(&csv)?)?;
            Ok(vec![csv])
        }
        Command::Export(c) => {
            let (cfg, out) = prepare(&c)?;
            let design = Design::from_config(&cfg)?;
            let table_csv = out.join("cell_table.csv");
            write_cell_table(&design.table, create(&table_csv)?)?;
            let mut written = write_synth(&run_synth(&design)?, &out)?;
            written.insert(0, table_csv);
            Ok(written)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
