use serde::{Deserialize, Serialize};

use super::special::f_survival;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnovaResult {
    pub df_between: u64,
    pub df_within: u64,
    pub ss_between: f64,
    pub ss_within: f64,
    /// `+inf` when within-group variance is zero but group means differ.
    pub f_value: f64,
    pub p_value: f64,
}

impl AnovaResult {
    pub fn ms_between(&self) -> f64 {
        self.ss_between / self.df_between as f64
    }

    pub fn ms_within(&self) -> f64 {
        self.ss_within / self.df_within as f64
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// One-way ANOVA across `groups`.
pub fn one_way_anova<G: AsRef<[f64]>>(groups: &[G]) -> Result<AnovaResult> {
    if groups.len() < 2 {
        return Err(Error::DegenerateInput(format!(
            "need at least 2 groups, got {}",
            groups.len()
        )));
    }
    for (i, g) in groups.iter().enumerate() {
        let g = g.as_ref();
        if g.len() < 2 {
            return Err(Error::DegenerateInput(format!(
                "group {} has {} observation(s), need 2",
                i + 1,
                g.len()
            )));
        }
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain(format!("group {} contains a non-finite value", i + 1)));
        }
    }

    let total: usize = groups.iter().map(|g| g.as_ref().len()).sum();
    let grand = groups.iter().flat_map(|g| g.as_ref()).sum::<f64>() / total as f64;

    let (mut ss_between, mut ss_within) = (0.0, 0.0);
    for g in groups {
        let g = g.as_ref();
        let m = mean(g);
        ss_between += g.len() as f64 * (m - grand).powi(2);
        ss_within += g.iter().map(|v| (v - m).powi(2)).sum::<f64>();
    }

    let df_between = groups.len() as u64 - 1;
    let df_within = (total - groups.len()) as u64;
    let ms_between = ss_between / df_between as f64;
    let ms_within = ss_within / df_within as f64;

    let (f_value, p_value) = if ms_within == 0.0 {
        if ms_between > 0.0 {
            (f64::INFINITY, 0.0)
        } else {
            (0.0, 1.0)
        }
    } else {
        let f = ms_between / ms_within;
        (f, f_survival(f, df_between as f64, df_within as f64))
    };

    Ok(AnovaResult {
        df_between,
        df_within,
        ss_between,
        ss_within,
        f_value,
        p_value,
    })
}

/// Parses a `group,value` CSV into groups in order of first appearance.
pub fn parse_group_csv(text: &str) -> Result<Vec<(String, Vec<f64>)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if headers.len() < 2 || &headers[0] != "group" || &headers[1] != "value" {
        return Err(Error::Parse("expected header `group,value`".into()));
    }
    let mut groups: Vec<(String, Vec<f64>)> = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let name = &record[0];
        let value: f64 = record[1]
            .parse()
            .map_err(|_| Error::Parse(format!("row {}: `{}` is not a number", line + 2, &record[1])))?;
        match groups.iter_mut().find(|(g, _)| g == name) {
            Some((_, values)) => values.push(value),
            None => groups.push((name.to_owned(), vec![value])),
        }
    }
    Ok(groups)
}
