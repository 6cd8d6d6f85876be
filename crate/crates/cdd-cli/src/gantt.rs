use std::fs;

use cdd_core::gantt::{render_svg, render_text};

use crate::report::{gantt_rows, SolveReport};
use crate::{CliError, CliResult, GanttArgs, GanttFormat};

pub fn run(args: &GanttArgs) -> CliResult<()> {
    let text = fs::read_to_string(&args.result)?;
    let report: SolveReport = serde_json::from_str(&text)
        .map_err(|err| CliError::usage(format!("malformed result file: {err}")))?;
    let rows = gantt_rows(&report);
    let due = report.instance.due_date;
    let rendered = match args.format {
        GanttFormat::Text => render_text(due, &rows)?,
        GanttFormat::Svg => render_svg(due, &rows)?,
    };
    match &args.out {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}
