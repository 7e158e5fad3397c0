use barbell_cli::csv::{emit_csv, series_csv, HEADER};
use barbell_cli::svg::{emit_svg, render, Plot};
use barbell_walk::propagator::sample_series;
use barbell_walk::{Params, WalkKind};

fn series(n_samples: usize) -> barbell_walk::Series {
    let params = Params::critical(1024, 512.0, WalkKind::Adjacency).unwrap();
    sample_series(&params, 160.0, n_samples).unwrap()
}

#[test]
fn two_sample_series_has_three_lines() {
    let text = series_csv(&series(2));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], HEADER);
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn first_row_is_the_uniform_start() {
    let text = series_csv(&series(5));
    let first: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(first[0], 0.0);
    assert_eq!(first[1], 1.0 / 1024.0);
}

#[test]
fn rows_sum_to_one() {
    for line in series_csv(&series(301)).lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(v.len(), 7);
        let total: f64 = v[1..6].iter().sum();
        assert!((total - 1.0).abs() < 1e-9, "{line}");
    }
}

#[test]
fn csv_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    emit_csv(&series(101), &a).unwrap();
    emit_csv(&series(101), &b).unwrap();
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn svg_has_axes_curves_legend_and_marker() {
    let s = series(51);
    let plot = Plot::new("test")
        .curve("w = 512", &s.times, &s.aggregate[0])
        .curve("w = 1", &s.times, &s.aggregate[1])
        .vline(104.4);
    let svg = render(&plot).unwrap();
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert!(svg.contains(">time<") && svg.contains(">probability<"));
    assert!(svg.contains(">w = 512<") && svg.contains(">w = 1<"));
    assert!(svg.contains("class=\"switch\"") && svg.contains("data-t=\"104.4\""));
}

#[test]
fn single_point_series_gives_one_marker() {
    let plot = Plot::new("point").curve("only", &[3.0], &[0.25]);
    let svg = render(&plot).unwrap();
    assert_eq!(svg.matches("<circle").count(), 1);
    assert_eq!(svg.matches("<polyline").count(), 0);
    let dir = tempfile::tempdir().unwrap();
    emit_svg(&plot, &dir.path().join("p.svg")).unwrap();
}
