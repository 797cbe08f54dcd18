//! CSV and JSON emission.

use std::io::Write;

use serde::Serialize;

use crate::bounds::BoundReport;
use crate::spectral::SurvivalCurve;

/// Minimum significant digits in emitted numbers.
pub const MIN_SIGNIFICANT_DIGITS: usize = 12;

/// Shortest round-trip scientific representation, zero-padded to at least
/// [`MIN_SIGNIFICANT_DIGITS`] significant digits.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:e}");
    let (mantissa, exponent) = s.split_once('e').expect("{:e} always has an exponent");
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    let have = int.len() + frac.len();
    let pad = MIN_SIGNIFICANT_DIGITS.saturating_sub(have);
    format!("{sign}{int}.{frac}{}e{exponent}", "0".repeat(pad))
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn csv_err(e: csv::Error) -> std::io::Error {
    std::io::Error::new(std::io::ErrorKind::Other, e)
}

pub const REPORT_HEADER: [&str; 10] = [
    "model",
    "channel",
    "lifetime_s",
    "campaign_limit_s",
    "safety_factor",
    "gamma_mev",
    "delta_e_mev",
    "t_m_min_s",
    "coefficient_s_per_sqrt_s",
    "observable",
];

fn report_fields(r: &BoundReport) -> Vec<String> {
    vec![
        r.model.clone(),
        r.channel.clone(),
        format_number(r.lifetime_s),
        format_number(r.campaign_limit_s),
        format_number(r.safety_factor),
        format_number(r.gamma_mev),
        format_number(r.delta_e_mev),
        format_number(r.t_m_min_s),
        format_number(r.coefficient_s_per_sqrt_s),
        r.observable.to_string(),
    ]
}

pub fn write_reports_csv<W: Write>(out: W, reports: &[BoundReport]) -> std::io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(REPORT_HEADER).map_err(csv_err)?;
    for r in reports {
        w.write_record(report_fields(r)).map_err(csv_err)?;
    }
    w.flush()
}

/// Sweep rows: the swept parameter, its value and unit, then the report.
pub fn write_sweep_csv<W: Write>(
    out: W,
    param: &str,
    unit: &str,
    rows: &[(f64, BoundReport)],
) -> std::io::Result<()> {
    let mut w = csv_writer(out);
    let mut header = vec!["swept_param", "swept_value", "swept_unit"];
    header.extend(REPORT_HEADER);
    w.write_record(&header).map_err(csv_err)?;
    for (value, r) in rows {
        let mut rec = vec![param.to_string(), format_number(*value), unit.to_string()];
        rec.extend(report_fields(r));
        w.write_record(rec).map_err(csv_err)?;
    }
    w.flush()
}

pub fn write_survival_csv<W: Write>(out: W, curve: &SurvivalCurve, time_column: &str) -> std::io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record([time_column, "survival_probability"]).map_err(csv_err)?;
    for s in &curve.samples {
        w.write_record([format_number(s.t), format_number(s.p)]).map_err(csv_err)?;
    }
    w.flush()
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")
}

/// Generic CSV table with preformatted cells.
pub fn write_table_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row).map_err(csv_err)?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn padding() {
        assert_eq!(format_number(1.0), "1.00000000000e0");
        assert_eq!(format_number(-2.5e-8), "-2.50000000000e-8");
        assert_eq!(format_number(4.5776145575653605e-8), "4.5776145575653605e-8");
        assert_eq!(format_number(0.0), "0.00000000000e0");
    }

    proptest! {
        #[test]
        fn round_trips(x in proptest::num::f64::NORMAL) {
            let s = format_number(x);
            prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
            let digits = s.trim_start_matches('-').split('e').next().unwrap().replace('.', "");
            prop_assert!(digits.len() >= MIN_SIGNIFICANT_DIGITS);
        }
    }
}
