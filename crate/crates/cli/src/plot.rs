//! Gnuplot scripts that render the CSV outputs.

use std::fmt::Write;

use rcobs::GridResult;

/// Positive values spanning at least two decades are plotted on a log axis.
fn wants_log(values: &[f64]) -> bool {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    values.len() > 2 && min > 0.0 && max / min >= 100.0
}

fn header(out: &mut String, stem: &str, title: &str) {
    let _ = writeln!(out, "# render with: gnuplot {stem}.gp");
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set terminal pngcairo size 900,650");
    let _ = writeln!(out, "set output '{stem}.png'");
    let _ = writeln!(out, "set title '{title}' noenhanced");
}

/// Contour map of `log10(delta_ts_mean)` when both axes have at least three
/// values, otherwise one testing-error curve per `axis2` value.
pub fn grid_script(stem: &str, grid: &GridResult) -> String {
    let mut s = String::new();
    header(&mut s, stem, stem);
    let (n1, n2) = (grid.axis1.len(), grid.axis2.len());
    let (x, y) = (&grid.axis1_name, &grid.axis2_name);
    let log_x = wants_log(&grid.axis1);
    let log_y = wants_log(&grid.axis2);
    if n1 >= 3 && n2 >= 3 {
        let col = |c: usize, log: bool| if log { format!("(log10(${c}))") } else { c.to_string() };
        let label = |name: &str, log: bool| if log { format!("log10 {name}") } else { name.to_string() };
        let _ = writeln!(s, "set xlabel '{}' noenhanced", label(x, log_x));
        let _ = writeln!(s, "set ylabel '{}' noenhanced", label(y, log_y));
        let _ = writeln!(s, "set cblabel 'log10 delta_ts' noenhanced");
        let _ = writeln!(s, "set view map");
        let _ = writeln!(s, "set dgrid3d {n2},{n1} qnorm 2");
        let _ = writeln!(s, "set pm3d at b");
        let _ = writeln!(s, "set contour base");
        let _ = writeln!(s, "unset surface");
        let _ = writeln!(
            s,
            "splot '{stem}.csv' skip 1 using {}:{}:(log10($4)) with pm3d notitle",
            col(1, log_x),
            col(2, log_y)
        );
    } else {
        let _ = writeln!(s, "set xlabel '{x}' noenhanced");
        let _ = writeln!(s, "set ylabel 'delta_ts' noenhanced");
        if log_x {
            let _ = writeln!(s, "set logscale x");
        }
        let curves: Vec<String> = grid
            .axis2
            .iter()
            .enumerate()
            .map(|(j, v)| {
                format!("'{stem}.csv' skip 1 every {n2}::{j} using 1:4 with linespoints title '{y} = {v}' noenhanced")
            })
            .collect();
        let _ = writeln!(s, "plot {}", curves.join(", \\\n     "));
    }
    s
}

/// Log-scaled power spectrum with the chosen cutoff marked.
pub fn spectrum_script(stem: &str, cutoff_freq: f64) -> String {
    let mut s = String::new();
    header(&mut s, stem, stem);
    let _ = writeln!(s, "set xlabel 'frequency (cycles per time unit)'");
    let _ = writeln!(s, "set ylabel 'power'");
    let _ = writeln!(s, "set logscale y");
    let _ = writeln!(s, "set xrange [0:{}]", (4.0 * cutoff_freq).max(1.0));
    let _ = writeln!(
        s,
        "set arrow from {cutoff_freq}, graph 0 to {cutoff_freq}, graph 1 nohead dt 2"
    );
    let _ = writeln!(s, "plot '{stem}.csv' skip 1 using 1:2 with lines notitle");
    s
}
