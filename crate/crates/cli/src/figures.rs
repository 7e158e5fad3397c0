//! Regeneration of figures 4 to 10: per-curve CSV files and SVG plots.

use std::path::{Path, PathBuf};

use barbell_walk::experiments::{
    resonant_second_maximum, run_two_stage, sweep_weights, SwitchTime, TwoStageResult,
};
use barbell_walk::propagator::sample_series;
use barbell_walk::{basis, Params, Series, WalkKind};

use crate::config::OutputFormat;
use crate::csv::{format_sig, per_vertex_csv, series_csv, write_file};
use crate::error::CliResult;
use crate::svg::{emit_svg, Plot};

pub const FIGURE_N: usize = 1024;
pub const BROAD_WEIGHTS: [f64; 6] = [1.0, 256.0, 512.0, 768.0, 1024.0, 2048.0];
pub const TRANSITION_PANELS: [(char, [f64; 5]); 3] = [
    ('a', [430.0, 460.0, 477.0, 484.0, 498.0]),
    ('b', [512.0, 522.0, 532.0, 542.0, 552.0]),
    ('c', [562.0, 576.0, 590.0, 615.0, 710.0]),
];
pub const SCALING_N: [usize; 3] = [1024, 2048, 4096];

const SINGLE_WINDOW: f64 = 160.0;
const SCALING_WINDOW: f64 = 250.0;

/// The files written by one figure, in write order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FigureOutput {
    pub files: Vec<PathBuf>,
}

struct Writer<'a> {
    dir: &'a Path,
    format: OutputFormat,
    files: Vec<PathBuf>,
}

impl Writer<'_> {
    fn csv(&mut self, name: &str, contents: &str) -> CliResult<()> {
        if self.format.csv() {
            let path = self.dir.join(name);
            write_file(&path, contents)?;
            self.files.push(path);
        }
        Ok(())
    }

    fn svg(&mut self, name: &str, plot: &Plot) -> CliResult<()> {
        if self.format.svg() {
            let path = self.dir.join(name);
            emit_svg(plot, &path)?;
            self.files.push(path);
        }
        Ok(())
    }
}

fn type_plot(title: &str, series: &Series) -> Plot {
    let t = &series.times;
    Plot::new(title)
        .curve("a", t, &series.aggregate[basis::A])
        .curve("b (all)", t, &series.aggregate[basis::B])
        .curve("c", t, &series.aggregate[basis::C])
        .curve("d", t, &series.aggregate[basis::D])
        .curve("e (all)", t, &series.aggregate[basis::E])
        .curve("marked clique", t, &series.clique)
}

fn weight_curves(
    out: &mut Writer,
    prefix: &str,
    title: &str,
    kind: WalkKind,
    samples: usize,
) -> CliResult<()> {
    let mut plot = Plot::new(title);
    for &w in &BROAD_WEIGHTS {
        let series = sample_series(
            &Params::critical(FIGURE_N, w, kind)?,
            SINGLE_WINDOW,
            samples,
        )?;
        out.csv(
            &format!("{prefix}_w{}.csv", format_sig(w)),
            &series_csv(&series),
        )?;
        plot = plot.curve(
            format!("w = {}", format_sig(w)),
            &series.times,
            &series.aggregate[basis::A],
        );
    }
    out.svg(&format!("{prefix}.svg"), &plot)
}

fn two_stage_title(r: &TwoStageResult<f64>) -> String {
    format!("two-stage search, switch at t = {:.1}", r.switch_time)
}

pub fn run_figure(
    k: u8,
    dir: &Path,
    format: OutputFormat,
    samples: usize,
) -> CliResult<FigureOutput> {
    let mut out = Writer {
        dir,
        format,
        files: Vec::new(),
    };
    match k {
        4 => weight_curves(
            &mut out,
            "fig4",
            "Laplacian walk, N = 1024",
            WalkKind::Laplacian,
            samples,
        )?,
        5 => weight_curves(
            &mut out,
            "fig5",
            "adjacency walk, N = 1024",
            WalkKind::Adjacency,
            samples,
        )?,
        6 => {
            let params = Params::critical(FIGURE_N, FIGURE_N as f64 / 2.0, WalkKind::Adjacency)?;
            let series = sample_series(&params, SINGLE_WINDOW, samples)?;
            out.csv("fig6.csv", &series_csv(&series))?;
            out.csv("fig6_per_vertex.csv", &per_vertex_csv(&series))?;
            out.svg(
                "fig6.svg",
                &type_plot("adjacency walk, N = 1024, w = 512", &series),
            )?;
        }
        7 => {
            let r = run_two_stage::<f64>(FIGURE_N, 1.0, SwitchTime::Analytic, samples)?;
            out.csv("fig7.csv", &series_csv(&r.series))?;
            out.csv("fig7_per_vertex.csv", &per_vertex_csv(&r.series))?;
            out.svg(
                "fig7.svg",
                &type_plot(&two_stage_title(&r), &r.series).vline(r.switch_time),
            )?;
        }
        8 => {
            let mut plot = Plot::new("adjacency walk, w = N/2");
            for &n in &SCALING_N {
                let series = sample_series(
                    &Params::critical(n, n as f64 / 2.0, WalkKind::Adjacency)?,
                    SCALING_WINDOW,
                    samples,
                )?;
                out.csv(&format!("fig8_N{n}.csv"), &series_csv(&series))?;
                plot = plot.curve(
                    format!("N = {n}"),
                    &series.times,
                    &series.aggregate[basis::A],
                );
            }
            out.svg("fig8.svg", &plot)?;
        }
        9 => {
            let mut summary = String::from("w,first_t,first_p,second_t,second_p\n");
            for (panel, weights) in TRANSITION_PANELS {
                let sweep = sweep_weights(FIGURE_N, WalkKind::Adjacency, &weights, samples)?;
                let mut plot = Plot::new(format!("adjacency walk, N = 1024 ({panel})"));
                for row in &sweep.rows {
                    let series = sweep.curve(row);
                    let w = format_sig(row.w);
                    out.csv(&format!("fig9{panel}_w{w}.csv"), &series_csv(series))?;
                    plot = plot.curve(
                        format!("w = {w}"),
                        &series.times,
                        &series.aggregate[basis::A],
                    );
                    let first = row.maxima.first().expect("sweep rows have a peak");
                    let (st, sp) = match resonant_second_maximum(row, FIGURE_N) {
                        Some(p) => (format_sig(p.t_star), format_sig(p.p_star)),
                        None => (String::new(), String::new()),
                    };
                    summary.push_str(&format!(
                        "{w},{},{},{st},{sp}\n",
                        format_sig(first.t_star),
                        format_sig(first.p_star)
                    ));
                }
                out.svg(&format!("fig9{panel}.svg"), &plot)?;
            }
            out.csv("fig9_summary.csv", &summary)?;
        }
        10 => {
            let mut plot = Plot::new("two-stage search, w = N/2 then w = 1");
            for &n in &SCALING_N {
                let r = run_two_stage::<f64>(n, 1.0, SwitchTime::Analytic, samples)?;
                out.csv(&format!("fig10_N{n}.csv"), &series_csv(&r.series))?;
                plot = plot
                    .curve(
                        format!("N = {n}"),
                        &r.series.times,
                        &r.series.aggregate[basis::A],
                    )
                    .vline(r.switch_time);
            }
            out.svg("fig10.svg", &plot)?;
        }
        _ => unreachable!("figure index validated by the parser"),
    }
    Ok(FigureOutput { files: out.files })
}
