//! Summary rows and CSV formatting.

use std::fmt::Write as _;

/// One solver outcome, serialized as a summary CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub method: String,
    pub example: u8,
    pub p: usize,
    pub v: f64,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub res: f64,
    pub converged: bool,
    pub time_ms: f64,
}

pub const SUMMARY_HEADER: &str = "method,example,p,v,alpha,beta,iterations,res,converged,time_ms";

/// Scientific notation with three significant digits and a two-digit
/// exponent, e.g. 9.88e-07.
pub fn fmt_sci(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let raw = format!("{x:.2e}");
    // pad the exponent to two digits: "9.88e-7" -> "9.88e-07"
    match raw.split_once('e') {
        Some((mantissa, exp)) => {
            let (sign, digits) = match exp.strip_prefix('-') {
                Some(d) => ("-", d),
                None => ("+", exp.strip_prefix('+').unwrap_or(exp)),
            };
            format!("{mantissa}e{sign}{digits:0>2}")
        }
        None => raw,
    }
}

impl SummaryRow {
    pub fn to_csv_line(&self) -> String {
        let mut line = String::new();
        write!(
            line,
            "{},{},{},{},{},{},{},{},{},{:.3}",
            self.method,
            self.example,
            self.p,
            self.v,
            self.alpha,
            self.beta,
            self.iterations,
            fmt_sci(self.res),
            self.converged,
            self.time_ms
        )
        .unwrap();
        line
    }

    #[cfg(test)]
    pub fn parse_csv_line(line: &str) -> Option<Self> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return None;
        }
        Some(SummaryRow {
            method: fields[0].to_string(),
            example: fields[1].parse().ok()?,
            p: fields[2].parse().ok()?,
            v: fields[3].parse().ok()?,
            alpha: fields[4].parse().ok()?,
            beta: fields[5].parse().ok()?,
            iterations: fields[6].parse().ok()?,
            res: fields[7].parse().ok()?,
            converged: fields[8].parse().ok()?,
            time_ms: fields[9].parse().ok()?,
        })
    }
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

pub fn history_csv(history: &[f64]) -> String {
    let mut out = String::from("step,res\n");
    for (step, res) in history.iter().enumerate() {
        out.push_str(&format!("{step},{}\n", fmt_sci(*res)));
    }
    out
}
