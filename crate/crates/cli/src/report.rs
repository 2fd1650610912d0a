//! Text and JSON rendering of error reports.

use qhtest::joint::ErrorReport;

const LN_2: f64 = std::f64::consts::LN_2;

/// 12 significant digits, the same formatting the CSV columns use.
pub(crate) fn fmt_cell(x: f64) -> String {
    format!("{x:.11e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => fmt_cell(v),
        None => "not computed".into(),
    }
}

pub(crate) fn render_text(report: &ErrorReport, bits: bool) -> String {
    let (unit, scale) = if bits { ("bits/copy", LN_2) } else { ("nats/copy", 1.0) };
    let rate = |r: f64| format!("{} {unit}", fmt_cell(r / scale));
    let mut out = String::new();
    out.push_str(&format!("n:                 {}\n", report.n));
    out.push_str(&format!("exact_error:       {}\n", fmt_opt(report.exact_error)));
    out.push_str(&format!(
        "bound interval:    [{}, {}]\n",
        fmt_cell(report.lower_fid),
        fmt_cell(report.upper_fid)
    ));
    out.push_str(&format!("lower_fid:         {}\n", fmt_cell(report.lower_fid)));
    out.push_str(&format!("upper_fid:         {}\n", fmt_cell(report.upper_fid)));
    if let Some(u) = report.upper_pure {
        out.push_str(&format!("upper_pure:        {}\n", fmt_cell(u)));
    }
    out.push_str(&format!("rate_lower_fid:    {}\n", rate(report.rate_lower_fid)));
    out.push_str(&format!("rate_upper_fid:    {}\n", rate(report.rate_upper_fid)));
    out.push_str(&format!("rate_lower_relent: {}\n", rate(report.rate_lower_relent)));
    out
}

/// JSON mirror of the report fields; rates are rescaled when `bits` is set
/// and non-finite rates serialize as null.
pub(crate) fn render_json(report: &ErrorReport, bits: bool) -> String {
    let mut value = serde_json::to_value(report).expect("report serializes");
    let map = value.as_object_mut().expect("report is an object");
    if bits {
        for key in ["rate_lower_fid", "rate_upper_fid", "rate_lower_relent"] {
            if let Some(r) = map.get(key).and_then(|v| v.as_f64()) {
                map.insert(key.into(), serde_json::json!(r / LN_2));
            }
        }
    }
    map.insert(
        "units".into(),
        serde_json::json!(if bits { "bits" } else { "nats" }),
    );
    serde_json::to_string_pretty(&value).expect("json renders")
}
