use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub label: String,
    /// 1 is best.
    pub rank: u32,
}

/// Labels with competition ranks, ordered by rank then label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankVector {
    entries: Vec<RankEntry>,
}

impl RankVector {
    /// Wraps externally supplied ranks, checking labels are unique and ranks in `1..=n`.
    pub fn from_ranks(ranks: Vec<(String, u32)>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = ranks.len() as u32;
        let mut seen = HashSet::new();
        for (label, rank) in &ranks {
            if !seen.insert(label.as_str()) {
                return Err(Error::domain(format!("duplicate label `{label}`")));
            }
            if !(1..=n).contains(rank) {
                return Err(Error::domain(format!("rank {rank} of `{label}` outside 1..={n}")));
            }
        }
        let mut entries: Vec<RankEntry> = ranks
            .into_iter()
            .map(|(label, rank)| RankEntry { label, rank })
            .collect();
        entries.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.label.cmp(&b.label)));
        Ok(RankVector { entries })
    }

    pub fn entries(&self) -> &[RankEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<u32> {
        self.entries.iter().find(|e| e.label == label).map(|e| e.rank)
    }

    fn has_ties(&self) -> bool {
        let mut seen = HashSet::new();
        self.entries.iter().any(|e| !seen.insert(e.rank))
    }
}

/// Competition ranking ("1224"): tied values share the best position of
/// their group and the following positions are skipped.
pub fn rank_by_value(items: &[(String, f64)], descending: bool) -> Result<RankVector> {
    if items.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some((label, v)) = items.iter().find(|(_, v)| v.is_nan()) {
        return Err(Error::domain(format!("value of `{label}` is {v}")));
    }

    let mut order: Vec<&(String, f64)> = items.iter().collect();
    order.sort_by(|a, b| {
        let by_value = if descending {
            b.1.total_cmp(&a.1)
        } else {
            a.1.total_cmp(&b.1)
        };
        by_value.then_with(|| a.0.cmp(&b.0))
    });

    let mut ranks = Vec::with_capacity(order.len());
    let mut rank = 1;
    for (pos, item) in order.iter().enumerate() {
        if pos > 0 && item.1 != order[pos - 1].1 {
            rank = pos as u32 + 1;
        }
        ranks.push((item.0.clone(), rank));
    }
    RankVector::from_ranks(ranks)
}

/// Spearman's ρ between two rankings of the same labels. Tie-free inputs use
/// `1 − 6Σd²/(n(n²−1))`; with ties it is Pearson's r on the rank values.
pub fn spearman_rho(a: &RankVector, b: &RankVector) -> Result<f64> {
    let b_ranks: HashMap<&str, u32> = b.entries.iter().map(|e| (e.label.as_str(), e.rank)).collect();
    if a.len() != b.len() {
        return Err(Error::LabelMismatch(format!("{} labels vs {}", a.len(), b.len())));
    }
    let mut pairs = Vec::with_capacity(a.len());
    for e in &a.entries {
        let rb = b_ranks
            .get(e.label.as_str())
            .ok_or_else(|| Error::LabelMismatch(format!("`{}` missing from second ranking", e.label)))?;
        pairs.push((f64::from(e.rank), f64::from(*rb)));
    }
    let n = pairs.len() as f64;
    if pairs.len() < 2 {
        return Err(Error::DegenerateInput("need at least two labels".into()));
    }

    if !a.has_ties() && !b.has_ties() {
        let d2: f64 = pairs.iter().map(|(x, y)| (x - y).powi(2)).sum();
        return Ok(1.0 - 6.0 * d2 / (n * (n * n - 1.0)));
    }

    let mean_x = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in &pairs {
        sxy += (x - mean_x) * (y - mean_y);
        sxx += (x - mean_x).powi(2);
        syy += (y - mean_y).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateInput(
            "a ranking with all labels tied has no correlation".into(),
        ));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn items(values: &[f64]) -> Vec<(String, f64)> {
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| (format!("g{}", i + 1), v))
            .collect()
    }

    fn ranks_in_label_order(r: &RankVector, n: usize) -> Vec<u32> {
        (1..=n).map(|i| r.get(&format!("g{i}")).unwrap()).collect()
    }

    #[test]
    fn main_page_values_rank_in_group_order() {
        let r = rank_by_value(&items(&[0.9507, 0.9259, 0.6830, 0.4858]), true).unwrap();
        assert_eq!(ranks_in_label_order(&r, 4), vec![1, 2, 3, 4]);
    }

    #[test]
    fn ties_share_best_position() {
        let r = rank_by_value(&items(&[5.0, 5.0, 3.0]), true).unwrap();
        assert_eq!(ranks_in_label_order(&r, 3), vec![1, 1, 3]);
        let r = rank_by_value(&items(&[2.0, 2.0, 2.0, 2.0]), true).unwrap();
        assert_eq!(ranks_in_label_order(&r, 4), vec![1, 1, 1, 1]);
        let r = rank_by_value(&items(&[5.0, 5.0, 3.0]), false).unwrap();
        assert_eq!(ranks_in_label_order(&r, 3), vec![2, 2, 1]);
    }

    #[test]
    fn entries_are_ordered_by_rank_then_label() {
        let input = vec![("b".to_string(), 1.0), ("a".to_string(), 1.0), ("c".to_string(), 2.0)];
        let r = rank_by_value(&input, true).unwrap();
        let labels: Vec<&str> = r.entries().iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["c", "a", "b"]);
    }

    #[test]
    fn empty_and_nan_inputs_rejected() {
        assert_eq!(rank_by_value(&[], true), Err(Error::EmptyInput));
        assert!(matches!(
            rank_by_value(&items(&[1.0, f64::NAN]), true),
            Err(Error::Domain(_))
        ));
    }

    fn ranking(ranks: &[u32]) -> RankVector {
        RankVector::from_ranks(
            ranks
                .iter()
                .enumerate()
                .map(|(i, &r)| (format!("g{}", i + 1), r))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn spearman_examples() {
        assert_eq!(
            spearman_rho(&ranking(&[1, 2, 3, 4]), &ranking(&[1, 2, 3, 4])).unwrap(),
            1.0
        );
        assert_eq!(
            spearman_rho(&ranking(&[1, 2, 3, 4]), &ranking(&[4, 3, 2, 1])).unwrap(),
            -1.0
        );
        let rho = spearman_rho(&ranking(&[1, 2, 3, 4]), &ranking(&[1, 3, 2, 4])).unwrap();
        assert!((rho - 0.8).abs() < 1e-15);
    }

    #[test]
    fn spearman_with_ties_uses_pearson() {
        // Ranks (1,1,3) vs (1,2,3): Pearson on rank values = 0.866…
        let rho = spearman_rho(&ranking(&[1, 1, 3]), &ranking(&[1, 2, 3])).unwrap();
        assert!((rho - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn spearman_label_mismatch() {
        let other = RankVector::from_ranks(vec![("x".into(), 1), ("g2".into(), 2)]).unwrap();
        assert!(matches!(
            spearman_rho(&ranking(&[1, 2]), &other),
            Err(Error::LabelMismatch(_))
        ));
        assert!(matches!(
            spearman_rho(&ranking(&[1, 2, 3]), &ranking(&[1, 2])),
            Err(Error::LabelMismatch(_))
        ));
    }

    #[test]
    fn from_ranks_validates() {
        assert!(RankVector::from_ranks(vec![("a".into(), 0)]).is_err());
        assert!(RankVector::from_ranks(vec![("a".into(), 1), ("a".into(), 2)]).is_err());
        assert_eq!(RankVector::from_ranks(vec![]), Err(Error::EmptyInput));
    }
}
