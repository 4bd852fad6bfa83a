//! Labelings `V → {-1, +1, 2}` and the two defining conditions of a
//! majority Roman dominating function: the majority condition on closed
//! neighborhood sums and the Roman guard on `-1` vertices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(i8)]
pub enum Label {
    Minus = -1,
    Plus = 1,
    Two = 2,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Minus, Label::Plus, Label::Two];

    pub fn value(self) -> i64 {
        self as i8 as i64
    }

    pub fn from_value(v: i64) -> Option<Label> {
        match v {
            -1 => Some(Label::Minus),
            1 => Some(Label::Plus),
            2 => Some(Label::Two),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Labeling(Vec<Label>);

impl Labeling {
    pub fn new(labels: Vec<Label>) -> Self {
        Labeling(labels)
    }

    pub fn uniform(n: usize, label: Label) -> Self {
        Labeling(vec![label; n])
    }

    pub fn from_values(values: &[i64]) -> Result<Self> {
        values
            .iter()
            .map(|&v| Label::from_value(v).ok_or_else(|| Error::InvalidLabel(v.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Labeling)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn values(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.value()).collect()
    }

    pub fn get(&self, v: usize) -> Label {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, label: Label) {
        self.0[v] = label;
    }

    /// `w(f) = Σ f(v)`.
    pub fn weight(&self) -> i64 {
        self.0.iter().map(|l| l.value()).sum()
    }

    fn with_label(&self, label: Label) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v] == label).collect()
    }

    /// `P_f`: vertices labeled +1.
    pub fn plus_set(&self) -> Vec<usize> {
        self.with_label(Label::Plus)
    }

    /// `Q_f`: vertices labeled 2.
    pub fn two_set(&self) -> Vec<usize> {
        self.with_label(Label::Two)
    }

    /// `O_f`: vertices labeled -1.
    pub fn minus_set(&self) -> Vec<usize> {
        self.with_label(Label::Minus)
    }
}

impl From<Vec<Label>> for Labeling {
    fn from(v: Vec<Label>) -> Self {
        Labeling(v)
    }
}

/// Comma-separated labels in vertex order, e.g. `2,-1,-1,1`.
impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", l.value())?;
        }
        Ok(())
    }
}

impl FromStr for Labeling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Labeling::default());
        }
        s.split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.strip_prefix('+')
                    .unwrap_or(tok)
                    .parse::<i64>()
                    .ok()
                    .and_then(Label::from_value)
                    .ok_or_else(|| Error::InvalidLabel(tok.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Labeling)
    }
}

/// How "at least half of the vertices" is rounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMode {
    /// `⌈n/2⌉`, the normative reading.
    #[default]
    Ceil,
    /// `⌊n/2⌋`, for sensitivity analysis only.
    Floor,
}

impl ThresholdMode {
    pub fn threshold(self, n: usize) -> usize {
        match self {
            ThresholdMode::Ceil => n.div_ceil(2),
            ThresholdMode::Floor => n / 2,
        }
    }
}

/// `⌈n/2⌉`.
pub fn majority_threshold(n: usize) -> usize {
    ThresholdMode::Ceil.threshold(n)
}

fn check_len(g: &Graph, f: &Labeling) -> Result<()> {
    if g.order() == f.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: g.order(),
            got: f.len(),
        })
    }
}

/// `f(N[v])`.
pub fn closed_sum(g: &Graph, f: &Labeling, v: usize) -> Result<i64> {
    check_len(g, f)?;
    g.degree(v)?;
    Ok(closed_sum_unchecked(g, f, v))
}

pub(crate) fn closed_sum_unchecked(g: &Graph, f: &Labeling, v: usize) -> i64 {
    f.get(v).value() + g.neighbors(v).iter().map(|&u| f.get(u).value()).sum::<i64>()
}

/// Number of vertices with `f(N[v]) >= 1`.
pub fn satisfied_count(g: &Graph, f: &Labeling) -> Result<usize> {
    check_len(g, f)?;
    Ok((0..g.order()).filter(|&v| closed_sum_unchecked(g, f, v) >= 1).count())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_valid: bool,
    pub satisfied_count: usize,
    pub threshold: usize,
    /// `-1` vertices with no neighbor labeled 2.
    pub roman_violations: Vec<usize>,
    pub weight: i64,
}

pub fn validate(g: &Graph, f: &Labeling) -> Result<ValidationReport> {
    validate_with(g, f, ThresholdMode::Ceil)
}

pub fn validate_with(g: &Graph, f: &Labeling, mode: ThresholdMode) -> Result<ValidationReport> {
    let satisfied = satisfied_count(g, f)?;
    let roman_violations: Vec<usize> = (0..g.order())
        .filter(|&v| f.get(v) == Label::Minus && !g.neighbors(v).iter().any(|&u| f.get(u) == Label::Two))
        .collect();
    let threshold = mode.threshold(g.order());
    Ok(ValidationReport {
        is_valid: satisfied >= threshold && roman_violations.is_empty(),
        satisfied_count: satisfied,
        threshold,
        roman_violations,
        weight: f.weight(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::GraphSpec;

    fn lab(s: &str) -> Labeling {
        s.parse().unwrap()
    }

    fn figure_one() -> Labeling {
        // hubs 2,2,2; copy of hub 0 is (1,-1,-1); other copies all -1
        lab("2,2,2,1,-1,-1,-1,-1,-1,-1,-1,-1")
    }

    #[test]
    fn weights() {
        assert_eq!(Labeling::uniform(7, Label::Plus).weight(), 7);
        assert_eq!(figure_one().weight(), -1);
        for n in 2..10 {
            let mut f = Labeling::uniform(n, Label::Minus);
            f.set(0, Label::Two);
            assert_eq!(f.weight(), 3 - n as i64);
        }
    }

    #[test]
    fn closed_sums() {
        let k1 = Graph::empty(1);
        assert_eq!(closed_sum(&k1, &lab("1"), 0).unwrap(), 1);
        let k3 = GraphSpec::Complete(3).generate().unwrap();
        for v in 0..3 {
            assert_eq!(closed_sum(&k3, &lab("1,1,1"), v).unwrap(), 3);
        }
        let c = GraphSpec::CoronaK3K3(1).generate().unwrap();
        assert_eq!(closed_sum(&c, &figure_one(), 4).unwrap(), 1);
        assert!(closed_sum(&c, &figure_one(), 12).is_err());
        assert!(closed_sum(&k3, &figure_one(), 0).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(majority_threshold(12), 6);
        assert_eq!(majority_threshold(5), 3);
        assert_eq!(majority_threshold(1), 1);
        assert_eq!(majority_threshold(0), 0);
        assert_eq!(ThresholdMode::Floor.threshold(5), 2);
    }

    #[test]
    fn satisfied_counts() {
        let c = GraphSpec::CoronaK3K3(1).generate().unwrap();
        // oracle: evaluate all twelve sums by hand
        let sums: Vec<i64> = (0..12).map(|v| closed_sum(&c, &figure_one(), v).unwrap()).collect();
        assert_eq!(sums, vec![5, 3, 3, 1, 1, 1, -1, -1, -1, -1, -1, -1]);
        assert_eq!(satisfied_count(&c, &figure_one()).unwrap(), 6);

        let w = GraphSpec::Wheel(6).generate().unwrap();
        assert_eq!(satisfied_count(&w, &lab("2,-1,-1,1,-1,-1")).unwrap(), 3);
        assert_eq!(satisfied_count(&w, &Labeling::uniform(6, Label::Two)).unwrap(), 6);
    }

    #[test]
    fn validation_examples() {
        let k3 = GraphSpec::Complete(3).generate().unwrap();
        let r = validate(&k3, &lab("2,-1,-1")).unwrap();
        assert!(!r.is_valid);
        assert_eq!(r.satisfied_count, 0);
        assert!(r.roman_violations.is_empty());

        let r = validate(&k3, &lab("2,1,-1")).unwrap();
        assert!(r.is_valid);
        assert_eq!((r.satisfied_count, r.threshold, r.weight), (3, 2, 2));

        let p2 = GraphSpec::Path(2).generate().unwrap();
        let r = validate(&p2, &lab("-1,1")).unwrap();
        assert!(!r.is_valid);
        assert_eq!(r.roman_violations, vec![0]);

        assert!(matches!(
            validate(&p2, &lab("1")),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn isolated_minus_is_guard_violation() {
        let g = Graph::empty(3);
        let r = validate(&g, &lab("2,-1,2")).unwrap();
        assert_eq!(r.roman_violations, vec![1]);
    }

    #[test]
    fn label_text() {
        assert_eq!(lab("2, -1,+1").to_string(), "2,-1,1");
        assert!("2,0".parse::<Labeling>().is_err());
        assert!("2,x".parse::<Labeling>().is_err());
        assert_eq!(lab(""), Labeling::default());
        assert!(Labeling::from_values(&[1, 3]).is_err());
    }

    #[test]
    fn partition_sets() {
        let f = lab("2,1,-1,-1,2");
        assert_eq!(f.two_set(), vec![0, 4]);
        assert_eq!(f.plus_set(), vec![1]);
        assert_eq!(f.minus_set(), vec![2, 3]);
    }
}
