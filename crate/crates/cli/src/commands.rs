//! Execution of a parsed [`RunConfig`].

use std::io::Write;
use std::path::{Path, PathBuf};

use barbell_walk::asymptotics::{laplacian_baseline, ScheduleConstants};
use barbell_walk::experiments::{
    oracle_crosscheck, resonant_second_maximum, run_two_stage, sweep_weights,
};
use barbell_walk::propagator::{find_first_peak, sample_series};
use barbell_walk::{Observable, Series};

use crate::config::{Command, OutputFormat, RunConfig};
use crate::csv::{emit_csv, format_sig, series_csv, write_file};
use crate::error::{CliError, CliResult};
use crate::figures::run_figure;
use crate::svg::{emit_svg, Plot};

/// Tolerance reported by `oracle-check`.
pub const ORACLE_TOL: f64 = 1e-8;

fn say(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("stdout", e))
}

/// `(csv, svg)` targets for a single-series output path.
fn targets(path: &Path, format: OutputFormat) -> (Option<PathBuf>, Option<PathBuf>) {
    match format {
        OutputFormat::Csv => (Some(path.to_path_buf()), None),
        OutputFormat::Svg => (None, Some(path.to_path_buf())),
        OutputFormat::Both => (
            Some(path.with_extension("csv")),
            Some(path.with_extension("svg")),
        ),
    }
}

fn series_plot(title: &str, series: &Series) -> Plot {
    let t = &series.times;
    let mut plot = Plot::new(title);
    for (k, label) in ["p_a", "p_b", "p_c", "p_d", "p_e"].iter().enumerate() {
        plot = plot.curve(*label, t, &series.aggregate[k]);
    }
    plot.curve("p_clique", t, &series.clique)
}

fn write_series(
    cfg: &RunConfig,
    series: &Series,
    title: &str,
    vline: Option<f64>,
    out: &mut dyn Write,
) -> CliResult<()> {
    match &cfg.output {
        None => say(out, &series_csv(series)),
        Some(path) => {
            let (csv, svg) = targets(path, cfg.format);
            if let Some(p) = csv {
                emit_csv(series, &p)?;
            }
            if let Some(p) = svg {
                let mut plot = series_plot(title, series);
                if let Some(v) = vline {
                    plot = plot.vline(v);
                }
                emit_svg(&plot, &p)?;
            }
            Ok(())
        }
    }
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<()> {
    match &cfg.command {
        Command::Evolve => {
            let params = cfg.params();
            let series = sample_series(&params, cfg.t_max, cfg.n_samples)?;
            let title = format!(
                "{} walk, N = {}, w = {}",
                cfg.kind.name(),
                cfg.n,
                format_sig(cfg.weights[0])
            );
            write_series(cfg, &series, &title, None, out)
        }
        Command::Peak(obs) => {
            let peak = find_first_peak(&cfg.params(), *obs, cfg.t_max)?;
            let name = match obs {
                Observable::MarkedVertex => "marked",
                Observable::MarkedClique => "clique",
            };
            say(
                out,
                &format!(
                    "observable,t_star,p_star\n{name},{},{}\n",
                    format_sig(peak.t_star),
                    format_sig(peak.p_star)
                ),
            )
        }
        Command::Sweep => {
            let sweep = sweep_weights(cfg.n, cfg.kind, &cfg.weights, cfg.n_samples)?;
            let mut table = String::from("w,t_star,p_star,second_t,second_p\n");
            for row in &sweep.rows {
                let (st, sp) = match resonant_second_maximum(row, cfg.n) {
                    Some(p) => (format_sig(p.t_star), format_sig(p.p_star)),
                    None => (String::new(), String::new()),
                };
                table.push_str(&format!(
                    "{},{},{},{st},{sp}\n",
                    format_sig(row.w),
                    format_sig(row.peak.t_star),
                    format_sig(row.peak.p_star)
                ));
            }
            if let Some(dir) = &cfg.output {
                let mut plot = Plot::new(format!("{} walk, N = {}", cfg.kind.name(), cfg.n));
                for row in &sweep.rows {
                    let series = sweep.curve(row);
                    let w = format_sig(row.w);
                    if cfg.format.csv() {
                        emit_csv(series, &dir.join(format!("sweep_w{w}.csv")))?;
                    }
                    plot = plot.curve(format!("w = {w}"), &series.times, &series.aggregate[0]);
                }
                if cfg.format.csv() {
                    write_file(&dir.join("sweep_summary.csv"), &table)?;
                }
                if cfg.format.svg() {
                    emit_svg(&plot, &dir.join("sweep.svg"))?;
                }
            }
            say(out, &table)
        }
        Command::TwoStage {
            stage2_weight,
            switch,
        } => {
            let r = run_two_stage::<f64>(cfg.n, *stage2_weight, *switch, cfg.n_samples)?;
            let summary = format!(
                "switch_time,final_t,final_p,analytic_total\n{},{},{},{}\n",
                format_sig(r.switch_time),
                format_sig(r.final_peak.t_star),
                format_sig(r.final_peak.p_star),
                format_sig(r.schedule.total_time)
            );
            match &cfg.output {
                Some(_) => {
                    let title = format!("two-stage search, N = {}", cfg.n);
                    write_series(cfg, &r.series, &title, Some(r.switch_time), out)?;
                    say(out, &summary)
                }
                None => say(out, &summary),
            }
        }
        Command::Constants => {
            let k = ScheduleConstants::<f64>::compute();
            let base = laplacian_baseline::<f64>(1);
            let rows = [
                ("single_peak_x", k.single_peak_x),
                ("clique_peak_x", k.clique_peak_x),
                ("second_stage_x", k.second_stage_x),
                ("total_x", k.total_x),
                ("single_peak_p", k.single_peak_p),
                ("two_stage_p", k.two_stage_p),
                ("boundary_phase", k.boundary_phase),
                ("laplacian_expected_total_x", base.expected_total),
            ];
            let mut text = String::from("name,rounded,value\n");
            for (name, v) in rows {
                text.push_str(&format!("{name},{v:.3},{}\n", format_sig(v)));
            }
            say(out, &text)
        }
        Command::OracleCheck { n_times } => {
            let dev = oracle_crosscheck::<f64>(
                cfg.n,
                cfg.weights[0],
                cfg.kind,
                *n_times,
                cfg.fullspace_cap,
            )?;
            say(out, &format!("max_deviation,{}\n", format_sig(dev)))?;
            if dev < ORACLE_TOL {
                Ok(())
            } else {
                Err(CliError::Check(format!(
                    "deviation {dev:e} exceeds {ORACLE_TOL:e}"
                )))
            }
        }
        Command::Figure(k) => {
            let dir = cfg.output.as_deref().unwrap_or(Path::new("."));
            let written = run_figure(*k, dir, cfg.format, cfg.n_samples)?;
            let mut text = String::new();
            for f in written.files {
                text.push_str(&format!("{}\n", f.display()));
            }
            say(out, &text)
        }
    }
}
