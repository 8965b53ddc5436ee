//! Evaluation metrics and the human-scored sentence-pair dataset format.

use crate::error::{Error, Result};
use crate::linalg::{cosine, Vector};
use crate::semspace::Token;
use crate::tensorize::Role;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Spearman's rank correlation with average ranks for ties, computed as the
/// Pearson correlation of the rank vectors.
pub fn spearman_rho(model_scores: &[f64], human_scores: &[f64]) -> Result<f64> {
    if model_scores.len() != human_scores.len() {
        return Err(Error::LengthMismatch {
            left: model_scores.len(),
            right: human_scores.len(),
        });
    }
    if model_scores.len() < 2 {
        return Err(Error::LengthMismatch {
            left: model_scores.len(),
            right: 2,
        });
    }
    let ra = average_ranks(model_scores);
    let rb = average_ranks(human_scores);
    let var = |r: &[f64]| {
        let mean = r.iter().sum::<f64>() / r.len() as f64;
        r.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
    };
    if var(&ra) == 0.0 {
        return Err(Error::DegenerateRanks { which: "model" });
    }
    if var(&rb) == 0.0 {
        return Err(Error::DegenerateRanks { which: "human" });
    }
    let mean_a = ra.iter().sum::<f64>() / ra.len() as f64;
    let mean_b = rb.iter().sum::<f64>() / rb.len() as f64;
    let mut cov = 0.0;
    for (a, b) in ra.iter().zip(&rb) {
        cov += (a - mean_a) * (b - mean_b);
    }
    Ok(cov / (var(&ra).sqrt() * var(&rb).sqrt()))
}

/// 1-based ranks with ties sharing their average rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite scores"));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // Positions i..=j hold one tie group; average their 1-based ranks.
        let avg = (i + j + 2) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Ranks of the correct item per query, all >= 1.
#[derive(Debug, Clone)]
pub struct RankingResult {
    pub ranks: Vec<usize>,
}

impl RankingResult {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Empty("ranking result"));
        }
        assert!(ranks.iter().all(|&r| r >= 1), "ranks are 1-based");
        Ok(Self { ranks })
    }
}

/// Mean reciprocal rank.
pub fn mrr(r: &RankingResult) -> f64 {
    r.ranks.iter().map(|&rank| 1.0 / rank as f64).sum::<f64>() / r.ranks.len() as f64
}

/// Fraction of queries whose correct item ranked first.
pub fn accuracy_top1(r: &RankingResult) -> f64 {
    r.ranks.iter().filter(|&&rank| rank == 1).count() as f64 / r.ranks.len() as f64
}

/// Mean cosine similarity over paired vectors.
pub fn avg_cos(pairs: &[(Vector, Vector)]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::Empty("cosine pairs"));
    }
    let mut total = 0.0;
    for (a, b) in pairs {
        total += cosine(a, b)?;
    }
    Ok(total / pairs.len() as f64)
}

/// V-measure: harmonic mean of homogeneity and completeness over the label
/// contingency table, with natural-log entropies.
pub fn v_measure(gold: &[usize], predicted: &[usize]) -> Result<f64> {
    if gold.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            left: gold.len(),
            right: predicted.len(),
        });
    }
    if gold.is_empty() {
        return Err(Error::Empty("labels"));
    }
    let n = gold.len() as f64;
    let mut joint: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut by_gold: BTreeMap<usize, f64> = BTreeMap::new();
    let mut by_pred: BTreeMap<usize, f64> = BTreeMap::new();
    for (&c, &k) in gold.iter().zip(predicted) {
        *joint.entry((c, k)).or_insert(0.0) += 1.0;
        *by_gold.entry(c).or_insert(0.0) += 1.0;
        *by_pred.entry(k).or_insert(0.0) += 1.0;
    }
    let entropy = |counts: &BTreeMap<usize, f64>| -> f64 {
        counts
            .values()
            .filter(|&&c| c > 0.0)
            .map(|&c| -(c / n) * (c / n).ln())
            .sum()
    };
    let h_gold = entropy(&by_gold);
    let h_pred = entropy(&by_pred);
    // Conditional entropies from the joint table.
    let mut h_gold_given_pred = 0.0;
    let mut h_pred_given_gold = 0.0;
    for (&(c, k), &count) in &joint {
        let p = count / n;
        h_gold_given_pred -= p * (count / by_pred[&k]).ln();
        h_pred_given_gold -= p * (count / by_gold[&c]).ln();
    }
    let homogeneity = if h_gold == 0.0 {
        1.0
    } else {
        1.0 - h_gold_given_pred / h_gold
    };
    let completeness = if h_pred == 0.0 {
        1.0
    } else {
        1.0 - h_pred_given_gold / h_pred
    };
    if homogeneity + completeness == 0.0 {
        Ok(0.0)
    } else {
        Ok(2.0 * homogeneity * completeness / (homogeneity + completeness))
    }
}

/// Grammatical slot of a token within a dataset sentence. `Verb` marks the
/// relational head; the rest mirror the argument roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SentenceRole {
    Verb,
    Arg(Role),
}

impl FromStr for SentenceRole {
    type Err = ();
    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        if s == "VERB" {
            Ok(SentenceRole::Verb)
        } else {
            s.parse().map(SentenceRole::Arg)
        }
    }
}

impl fmt::Display for SentenceRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SentenceRole::Verb => f.write_str("VERB"),
            SentenceRole::Arg(role) => write!(f, "{role}"),
        }
    }
}

/// A role-tagged sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggedSentence {
    pub words: Vec<(SentenceRole, Token)>,
}

impl TaggedSentence {
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let mut words = Vec::new();
        for piece in s.split(';').filter(|p| !p.trim().is_empty()) {
            let (role_str, token_str) = piece
                .split_once('=')
                .ok_or_else(|| format!("expected `role=token` in `{piece}`"))?;
            let role: SentenceRole = role_str
                .trim()
                .parse()
                .map_err(|_| format!("unknown role `{role_str}`"))?;
            let token =
                Token::parse(token_str.trim()).map_err(|e| e.to_string())?;
            words.push((role, token));
        }
        if words.is_empty() {
            return Err("empty sentence".into());
        }
        Ok(Self { words })
    }

    pub fn tokens(&self) -> Vec<Token> {
        self.words.iter().map(|(_, t)| t.clone()).collect()
    }

    pub fn find(&self, role: SentenceRole) -> Option<&Token> {
        self.words
            .iter()
            .find(|(r, _)| *r == role)
            .map(|(_, t)| t)
    }
}

#[derive(Debug, Clone)]
pub struct DatasetEntry {
    pub id: String,
    pub sentence1: TaggedSentence,
    pub sentence2: TaggedSentence,
    pub scores: Vec<f64>,
}

/// Role-tagged sentence pairs with human similarity judgements in [1, 7].
#[derive(Debug, Clone)]
pub struct SentencePairDataset {
    pub entries: Vec<DatasetEntry>,
}

impl SentencePairDataset {
    /// Line format: `id<TAB>sentence1<TAB>sentence2<TAB>score[,score…]`.
    pub fn load(path: &Path) -> Result<Self> {
        let bad = |line: usize, message: String| Error::Format {
            path: path.to_path_buf(),
            line,
            message,
        };
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(bad(
                    lineno + 1,
                    format!("{} tab-separated fields, expected 4", fields.len()),
                ));
            }
            let sentence1 =
                TaggedSentence::parse(fields[1]).map_err(|e| bad(lineno + 1, e))?;
            let sentence2 =
                TaggedSentence::parse(fields[2]).map_err(|e| bad(lineno + 1, e))?;
            let scores: Vec<f64> = fields[3]
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| bad(lineno + 1, format!("bad score `{s}`")))
                })
                .collect::<Result<_>>()?;
            if scores.is_empty() {
                return Err(bad(lineno + 1, "entry needs at least one score".into()));
            }
            if scores.iter().any(|&s| !(1.0..=7.0).contains(&s)) {
                return Err(bad(lineno + 1, "scores must lie in [1, 7]".into()));
            }
            entries.push(DatasetEntry {
                id: fields[0].to_string(),
                sentence1,
                sentence2,
                scores,
            });
        }
        Ok(Self { entries })
    }
}
