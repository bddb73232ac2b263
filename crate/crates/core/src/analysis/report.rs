use std::fmt;

/// One checked metric: `name<TAB>value<TAB>bound<TAB>PASS|FAIL`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportLine {
    pub name: String,
    pub value: String,
    pub bound: String,
    pub pass: bool,
}

impl ReportLine {
    pub fn new(name: impl Into<String>, value: impl Into<String>, bound: impl Into<String>, pass: bool) -> Self {
        ReportLine { name: name.into(), value: value.into(), bound: bound.into(), pass }
    }

    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, fmt_num(value), format!("<= {}", fmt_num(bound)), value <= bound)
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, fmt_num(value), format!(">= {}", fmt_num(bound)), value >= bound)
    }

    pub fn within(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Self::new(
            name,
            fmt_num(value),
            format!("{} +- {}", fmt_num(target), fmt_num(tol)),
            (value - target).abs() <= tol,
        )
    }

    pub fn equals(name: impl Into<String>, value: impl fmt::Display, expected: impl fmt::Display) -> Self {
        let (value, expected) = (value.to_string(), expected.to_string());
        let pass = value == expected;
        Self::new(name, value, format!("== {expected}"), pass)
    }
}

/// Shortest round-trip representation, so reports are reproducible bit for bit.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:e}")
    }
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}",
            self.name,
            self.value,
            self.bound,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, line: ReportLine) {
        self.lines.push(line);
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
