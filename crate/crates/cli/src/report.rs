//! Tables rendered from a results document: one row per distribution, one
//! column per solver, cells holding the mean ratio and its spread.

use std::fmt::Write as _;

use crate::results::ResultsDocument;

struct Pivot {
    solvers: Vec<String>,
    distributions: Vec<String>,
    // [distribution][solver] -> (mean, std)
    cells: Vec<Vec<Option<(f64, f64)>>>,
}

fn pivot(doc: &ResultsDocument) -> Pivot {
    let mut solvers: Vec<String> = Vec::new();
    let mut distributions: Vec<String> = Vec::new();
    for s in &doc.summaries {
        if !solvers.contains(&s.solver) {
            solvers.push(s.solver.clone());
        }
        if !distributions.contains(&s.distribution) {
            distributions.push(s.distribution.clone());
        }
    }
    let cells = distributions
        .iter()
        .map(|d| {
            solvers
                .iter()
                .map(|s| {
                    doc.summaries
                        .iter()
                        .find(|x| &x.solver == s && &x.distribution == d)
                        .and_then(|x| Some((x.mean_ratio?, x.std_ratio?)))
                })
                .collect()
        })
        .collect();
    Pivot { solvers, distributions, cells }
}

pub fn to_csv(doc: &ResultsDocument) -> String {
    let p = pivot(doc);
    let mut out = String::from("distribution");
    for s in &p.solvers {
        let _ = write!(out, ",{s} mean,{s} std");
    }
    out.push('\n');
    for (d, row) in p.distributions.iter().zip(&p.cells) {
        out.push_str(d);
        for cell in row {
            match cell {
                Some((m, s)) => {
                    let _ = write!(out, ",{m:.6},{s:.6}");
                }
                None => out.push_str(",,"),
            }
        }
        out.push('\n');
    }
    out
}

/// Markdown table; the best mean in each row is bold.
pub fn to_markdown(doc: &ResultsDocument) -> String {
    let p = pivot(doc);
    let mut out = String::from("| Graph |");
    for s in &p.solvers {
        let _ = write!(out, " {s} |");
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(p.solvers.len()));
    out.push('\n');
    for (d, row) in p.distributions.iter().zip(&p.cells) {
        let best = row
            .iter()
            .flatten()
            .map(|(m, _)| format!("{m:.3}"))
            .max_by(|a, b| a.parse::<f64>().unwrap().total_cmp(&b.parse::<f64>().unwrap()));
        let _ = write!(out, "| {d} |");
        for cell in row {
            match cell {
                Some((m, s)) => {
                    let mean = format!("{m:.3}");
                    if Some(&mean) == best.as_ref() {
                        let _ = write!(out, " **{mean}** ± {s:.3} |");
                    } else {
                        let _ = write!(out, " {mean} ± {s:.3} |");
                    }
                }
                None => out.push_str(" n/a |"),
            }
        }
        out.push('\n');
    }
    out
}
