//! Gantt charts of schedules: one row per machine, blocks labelled with job
//! ids and late jobs marked.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write;

use crate::model::{JobId, Schedule, SchedulingInstance};
use crate::reduction::ReductionMeta;
use crate::time::TimePoint;
use crate::verify::{report, ReportError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GanttStyle {
    /// Monospace chart `width` characters wide.
    Text { width: usize },
    /// SVG document `width` pixels wide.
    Svg { width: usize },
}

impl Default for GanttStyle {
    fn default() -> Self {
        GanttStyle::Text { width: 96 }
    }
}

struct Layout {
    horizon: TimePoint,
    ruler: BTreeSet<TimePoint>,
    late: HashSet<JobId>,
    late_list: Vec<(JobId, TimePoint)>,
}

fn layout(
    instance: &SchedulingInstance,
    schedule: &Schedule,
    meta: Option<&ReductionMeta>,
) -> Result<Layout, ReportError> {
    let r = report(instance, schedule)?;
    let mut ruler: BTreeSet<TimePoint> = BTreeSet::from([TimePoint::ZERO, r.makespan()]);
    let mut horizon = r.makespan();
    if let Some(meta) = meta {
        ruler.insert(meta.l);
        ruler.extend(instance.jobs().iter().map(|j| j.due()));
        horizon = horizon.max(meta.l);
    }
    if horizon.is_zero() {
        horizon = TimePoint::ONE;
    }
    Ok(Layout {
        horizon,
        ruler,
        late: r.late_jobs.iter().map(|(id, _)| id.clone()).collect(),
        late_list: r.late_jobs,
    })
}

/// `floor(t / horizon * width)`.
fn column(t: TimePoint, horizon: TimePoint, width: usize) -> usize {
    let scaled = t.mul_int(width as u64) * TimePoint::new(horizon.denominator(), horizon.numerator()).expect("horizon > 0");
    (scaled.numerator() / scaled.denominator()) as usize
}

fn to_f64(t: TimePoint) -> f64 {
    t.numerator() as f64 / t.denominator() as f64
}

pub fn render_gantt(
    instance: &SchedulingInstance,
    schedule: &Schedule,
    meta: Option<&ReductionMeta>,
    style: GanttStyle,
) -> Result<String, ReportError> {
    let layout = layout(instance, schedule, meta)?;
    let schedule = schedule.canonicalized();
    Ok(match style {
        GanttStyle::Text { width } => render_text(instance, &schedule, &layout, width.max(8)),
        GanttStyle::Svg { width } => render_svg(instance, &schedule, &layout, width.max(100)),
    })
}

fn render_text(instance: &SchedulingInstance, schedule: &Schedule, layout: &Layout, width: usize) -> String {
    let label_width = format!("m{}", instance.machines()).len();
    let mut out = String::new();
    for machine in 0..instance.machines() {
        let mut row = vec![' '; width + 1];
        for piece in schedule.on_machine(machine) {
            let from = column(piece.start, layout.horizon, width);
            let to = column(piece.end, layout.horizon, width).max(from + 1);
            let late = layout.late.contains(&piece.job);
            let fill = if late { '#' } else { '-' };
            let mut label: Vec<char> = piece.job.as_str().chars().collect();
            if late {
                label.push('*');
            }
            row[from] = '|';
            for (c, slot) in row.iter_mut().enumerate().take(to).skip(from + 1) {
                *slot = label.get(c - from - 1).copied().unwrap_or(fill);
            }
        }
        let row: String = row.into_iter().collect();
        let _ = writeln!(out, "{:>label_width$} {}", format!("m{machine}"), row.trim_end());
    }
    let mut ticks = vec![' '; width + 1];
    for &t in &layout.ruler {
        ticks[column(t, layout.horizon, width).min(width)] = '^';
    }
    let ticks: String = ticks.into_iter().collect();
    let _ = writeln!(out, "{:>label_width$} {}", "", ticks.trim_end());
    let times: Vec<String> = layout.ruler.iter().map(TimePoint::to_string).collect();
    let _ = writeln!(out, "ruler: {}", times.join(" "));
    if !layout.late_list.is_empty() {
        let late: Vec<String> = layout
            .late_list
            .iter()
            .map(|(id, t)| format!("{id} (T={t})"))
            .collect();
        let _ = writeln!(out, "late (*): {}", late.join(", "));
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn render_svg(instance: &SchedulingInstance, schedule: &Schedule, layout: &Layout, width: usize) -> String {
    const ROW: f64 = 32.0;
    const LEFT: f64 = 40.0;
    let chart = width as f64 - LEFT - 10.0;
    let rows = instance.machines() as f64;
    let height = ROW * rows + 40.0;
    let x = |t: TimePoint| LEFT + to_f64(t) / to_f64(layout.horizon) * chart;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="10">"#
    );
    for machine in 0..instance.machines() {
        let y = ROW * machine as f64;
        let _ = writeln!(out, r#"  <text x="4" y="{:.1}">m{machine}</text>"#, y + ROW / 2.0 + 3.0);
        for piece in schedule.on_machine(machine) {
            let late = layout.late.contains(&piece.job);
            let (x0, x1) = (x(piece.start), x(piece.end));
            let fill = if late { "#e06666" } else { "#9fc5e8" };
            let _ = writeln!(
                out,
                r#"  <rect x="{x0:.2}" y="{:.1}" width="{:.2}" height="{:.1}" fill="{fill}" stroke="black"{}/>"#,
                y + 4.0,
                x1 - x0,
                ROW - 8.0,
                if late { r#" stroke-width="2" class="late""# } else { "" }
            );
            let _ = writeln!(
                out,
                r#"  <text x="{:.2}" y="{:.1}" text-anchor="middle">{}</text>"#,
                (x0 + x1) / 2.0,
                y + ROW / 2.0 + 3.0,
                escape(piece.job.as_str())
            );
        }
    }
    let base = ROW * rows;
    for &t in &layout.ruler {
        let xt = x(t);
        let _ = writeln!(
            out,
            r#"  <line x1="{xt:.2}" y1="0" x2="{xt:.2}" y2="{:.1}" stroke="gray" stroke-dasharray="2,2"/>"#,
            base + 4.0
        );
        let _ = writeln!(out, r#"  <text x="{xt:.2}" y="{:.1}" text-anchor="middle">{t}</text>"#, base + 16.0);
    }
    out.push_str("</svg>\n");
    out
}
