use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::tropical::PositiveVector;

/// Ordered tie classes of zero-based alternative indices, best first.
///
/// Displayed one-based, e.g. `4>1>2=3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Ranking {
    classes: Vec<Vec<usize>>,
}

impl Ranking {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Alternatives in rank order, ties broken by index.
    pub fn order(&self) -> Vec<usize> {
        self.classes.iter().flatten().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Same ranking rendered with alternative names.
    pub fn with_labels(&self, labels: &[String]) -> String {
        self.classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&i| {
                        labels
                            .get(i)
                            .cloned()
                            .unwrap_or_else(|| (i + 1).to_string())
                    })
                    .collect::<Vec<_>>()
                    .join(" = ")
            })
            .collect::<Vec<_>>()
            .join(" > ")
    }
}

/// Sort by descending weight; neighbours within relative `tie_tol` of each
/// other share a class.
pub fn rank_alternatives(w: &PositiveVector, tie_tol: f64) -> Ranking {
    let w = w.as_slice();
    let mut idx: Vec<usize> = (0..w.len()).collect();
    idx.sort_by(|&a, &b| w[b].total_cmp(&w[a]).then(a.cmp(&b)));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut prev = f64::NAN;
    for i in idx {
        let tied = !prev.is_nan() && prev - w[i] <= tie_tol * prev;
        match classes.last_mut() {
            Some(class) if tied => class.push(i),
            _ => classes.push(vec![i]),
        }
        prev = w[i];
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    Ranking { classes }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join("=")
            })
            .collect();
        f.write_str(&s.join(">"))
    }
}

impl FromStr for Ranking {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut classes = Vec::new();
        let mut seen = Vec::new();
        for part in s.split('>') {
            let mut class = Vec::new();
            for tok in part.split('=') {
                let i: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad alternative index {tok:?} in ranking {s:?}"))?;
                if i == 0 {
                    return Err(format!("alternative indices are one-based in {s:?}"));
                }
                class.push(i - 1);
                seen.push(i - 1);
            }
            class.sort_unstable();
            classes.push(class);
        }
        seen.sort_unstable();
        if seen.iter().enumerate().any(|(k, &i)| k != i) {
            return Err(format!(
                "ranking {s:?} is not a partition of 1..{}",
                seen.len()
            ));
        }
        Ok(Ranking { classes })
    }
}

impl From<Ranking> for String {
    fn from(r: Ranking) -> Self {
        r.to_string()
    }
}

impl TryFrom<String> for Ranking {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}
