//! Gantt renderings of schedules: a compact text form and a standalone SVG.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, JobId, Schedule};

/// One bar of the chart: a job occupying `[start, end)` on its machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GanttSpan {
    pub job: JobId,
    pub start: i64,
    pub end: i64,
}

/// Expands a schedule into per-machine spans using the instance's
/// processing times.
pub fn spans(instance: &Instance, schedule: &Schedule) -> Result<Vec<Vec<GanttSpan>>> {
    schedule
        .machines
        .iter()
        .map(|row| {
            row.iter()
                .map(|entry| {
                    let job = instance.job(entry.job)?;
                    Ok(GanttSpan {
                        job: entry.job,
                        start: entry.completion - job.processing_time,
                        end: entry.completion,
                    })
                })
                .collect()
        })
        .collect()
}

/// One line per machine; jobs print as `job <id> [start,end)` with a `*` on
/// jobs completing exactly at the due date, and every line ends with the
/// due-date marker column.
pub fn render_text(due_date: i64, machines: &[Vec<GanttSpan>]) -> Result<String> {
    if machines.iter().all(|row| row.is_empty()) {
        return Err(Error::EmptySequence);
    }
    let mut out = String::new();
    for (index, row) in machines.iter().enumerate() {
        let mut line = format!("machine {}:", index + 1);
        for span in row {
            line.push_str(&format!(" job {} [{},{})", span.job, span.start, span.end));
            if span.end == due_date {
                line.push('*');
            }
        }
        line.push_str(&format!(" | due={due_date}"));
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// Standalone SVG: one row per machine, one rectangle per job and a vertical
/// due-date line.
pub fn render_svg(due_date: i64, machines: &[Vec<GanttSpan>]) -> Result<String> {
    if machines.iter().all(|row| row.is_empty()) {
        return Err(Error::EmptySequence);
    }
    const WIDTH: f64 = 900.0;
    const ROW: f64 = 34.0;
    const BAR: f64 = 26.0;
    const LEFT: f64 = 70.0;
    const TOP: f64 = 30.0;
    const BOTTOM: f64 = 26.0;

    let horizon = machines
        .iter()
        .flatten()
        .map(|span| span.end)
        .max()
        .unwrap_or(0)
        .max(due_date)
        .max(1);
    let scale = (WIDTH - LEFT - 20.0) / horizon as f64;
    let x = |t: i64| LEFT + t as f64 * scale;
    let height = TOP + machines.len() as f64 * ROW + BOTTOM;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" \
         viewBox=\"0 0 {WIDTH} {height}\" font-family=\"monospace\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{height}\" fill=\"#fcfcfc\"/>\n"
    ));
    // Time axis ticks, about ten of them, at a round step.
    let step = ((horizon as f64 / 10.0).ceil() as i64).max(1);
    let mut t = 0;
    while t <= horizon {
        svg.push_str(&format!(
            "  <line x1=\"{0:.1}\" y1=\"{TOP}\" x2=\"{0:.1}\" y2=\"{1:.1}\" stroke=\"#dddddd\"/>\n",
            x(t),
            height - BOTTOM
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" fill=\"#555555\">{t}</text>\n",
            x(t),
            height - 8.0
        ));
        t += step;
    }
    for (index, row) in machines.iter().enumerate() {
        let y = TOP + index as f64 * ROW;
        svg.push_str(&format!(
            "  <text x=\"8\" y=\"{:.1}\" fill=\"#333333\">machine {}</text>\n",
            y + BAR * 0.7,
            index + 1
        ));
        for span in row {
            let w = (span.end - span.start) as f64 * scale;
            svg.push_str(&format!(
                "  <rect x=\"{:.1}\" y=\"{y:.1}\" width=\"{w:.1}\" height=\"{BAR}\" \
                 fill=\"#7aa6d6\" stroke=\"#32526f\"/>\n",
                x(span.start)
            ));
            svg.push_str(&format!(
                "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" fill=\"#10253a\">{}</text>\n",
                x(span.start) + w / 2.0,
                y + BAR * 0.7,
                span.job
            ));
        }
    }
    // Due-date marker.
    svg.push_str(&format!(
        "  <line x1=\"{0:.1}\" y1=\"{1}\" x2=\"{0:.1}\" y2=\"{2:.1}\" stroke=\"#c0392b\" \
         stroke-width=\"2\" stroke-dasharray=\"5,3\"/>\n",
        x(due_date),
        TOP - 12.0,
        height - BOTTOM
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" fill=\"#c0392b\">D={due_date}</text>\n",
        x(due_date),
        TOP - 16.0
    ));
    svg.push_str("</svg>\n");
    Ok(svg)
}
