//! Closed-form values and bounds as pure functions of family parameters.
//!
//! Every formula has an explicit applicability guard; outside it a
//! [`Prediction`] is reported as inapplicable instead of extrapolated.

use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::family::GraphSpec;
use crate::graph::Graph;
use crate::solver::delta_lower_bound;
use crate::tree::{find_gamma_set_independent_complement, TreeProfile, DEFAULT_GAMMA_SET_CAP};

/// Identifies the result a prediction, certificate or report row comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Complete,
    JoinComplete,
    Wheel,
    Fan,
    Star,
    ComplementPath,
    ComplementCycle,
    CompleteMinusMatching,
    CoronaK3,
    CoronaUpperStated,
    CoronaUpperConstruction,
    CoronaLower,
    DeltaLower,
    TreeSupportLeaf,
    TreeDomination,
    TreeIndependenceStated,
    TreeIndependenceProof,
    Subadditivity,
    Lemma,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Complete => "complete",
            TheoremId::JoinComplete => "join_complete",
            TheoremId::Wheel => "wheel",
            TheoremId::Fan => "fan",
            TheoremId::Star => "star",
            TheoremId::ComplementPath => "cpath",
            TheoremId::ComplementCycle => "ccycle",
            TheoremId::CompleteMinusMatching => "kmm",
            TheoremId::CoronaK3 => "corona_k3",
            TheoremId::CoronaUpperStated => "corona_upper_stated",
            TheoremId::CoronaUpperConstruction => "corona_upper_construction",
            TheoremId::CoronaLower => "corona_lower",
            TheoremId::DeltaLower => "delta",
            TheoremId::TreeSupportLeaf => "tree_support_leaf",
            TheoremId::TreeDomination => "tree_domination",
            TheoremId::TreeIndependenceStated => "tree_independence_stated",
            TheoremId::TreeIndependenceProof => "tree_independence_proof",
            TheoremId::Subadditivity => "subadditivity",
            TheoremId::Lemma => "lemma",
        }
    }
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::Complete,
        TheoremId::JoinComplete,
        TheoremId::Wheel,
        TheoremId::Fan,
        TheoremId::Star,
        TheoremId::ComplementPath,
        TheoremId::ComplementCycle,
        TheoremId::CompleteMinusMatching,
        TheoremId::CoronaK3,
        TheoremId::CoronaUpperStated,
        TheoremId::CoronaUpperConstruction,
        TheoremId::CoronaLower,
        TheoremId::DeltaLower,
        TheoremId::TreeSupportLeaf,
        TheoremId::TreeDomination,
        TheoremId::TreeIndependenceStated,
        TheoremId::TreeIndependenceProof,
        TheoremId::Subadditivity,
        TheoremId::Lemma,
    ];
}

impl std::str::FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    ExactValue,
    UpperBound,
    LowerBound,
}

/// A rational that prints as a plain integer when it is one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(pub Rational64);

impl Value {
    pub fn int(v: i64) -> Value {
        Value(Rational64::from(v))
    }

    pub fn as_int(self) -> Option<i64> {
        self.0.is_integer().then(|| self.0.to_integer())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.to_integer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_int() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub kind: BoundKind,
    /// Absent exactly when the prediction is inapplicable.
    pub value: Option<Value>,
    pub inapplicable_reason: Option<String>,
    pub source: TheoremId,
}

impl Prediction {
    fn guarded(source: TheoremId, kind: BoundKind, ok: bool, reason: &str, value: impl FnOnce() -> i64) -> Self {
        if ok {
            Prediction {
                kind,
                value: Some(Value::int(value())),
                inapplicable_reason: None,
                source,
            }
        } else {
            Prediction {
                kind,
                value: None,
                inapplicable_reason: Some(reason.to_string()),
                source,
            }
        }
    }

    pub fn is_applicable(&self) -> bool {
        self.value.is_some()
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// `γ_MR(K_n)`: 2 for `n = 3`, otherwise 1 (`n >= 2`).
pub fn complete_value(n: usize) -> i64 {
    if n == 3 {
        2
    } else {
        1
    }
}

/// `2⌈n/6⌉ - n + 3`, shared by wheels and fans.
pub fn wheel_value(n: usize) -> i64 {
    let n = n as i64;
    2 * ceil_div(n, 6) - n + 3
}

pub fn star_value(n: usize) -> i64 {
    3 - n as i64
}

/// `⌈(n + 7s - 5l)/4⌉`.
pub fn tree_support_leaf_bound(n: usize, s: usize, l: usize) -> Result<i64> {
    if n < 2 || s < 1 || l < 1 {
        return Err(Error::domain(
            "tree_support_leaf_bound",
            "requires n >= 2, s >= 1, l >= 1",
        ));
    }
    Ok(ceil_div(n as i64 + 7 * s as i64 - 5 * l as i64, 4))
}

/// `3γ - n`.
pub fn tree_domination_bound(n: usize, gamma: usize) -> Result<i64> {
    if n < 2 || gamma < 1 || gamma > n.div_ceil(2) {
        return Err(Error::domain(
            "tree_domination_bound",
            "requires n >= 2 and 1 <= gamma <= ceil(n/2)",
        ));
    }
    Ok(3 * gamma as i64 - n as i64)
}

/// The independence bound as stated (`2n - β₀`) and as its construction
/// actually yields (`2n - 3β₀`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndependenceBounds {
    pub stated: i64,
    pub proof_derived: i64,
}

pub fn tree_independence_bounds(n: usize, beta0: usize) -> Result<IndependenceBounds> {
    if n < 2 || beta0 < n.div_ceil(2) || beta0 > n {
        return Err(Error::domain(
            "tree_independence_bounds",
            "requires n >= 2 and ceil(n/2) <= beta0 <= n",
        ));
    }
    let (n, b) = (n as i64, beta0 as i64);
    Ok(IndependenceBounds {
        stated: 2 * n - b,
        proof_derived: 2 * n - 3 * b,
    })
}

/// The corona upper bound as printed, `(m-4)⌈n/2⌉ - m⌊n/2⌋ + 2n`, next to
/// the weight its labeling attains, `2n + (m-2)⌈n/2⌉ - m⌊n/2⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoronaUpper {
    pub stated_formula: i64,
    pub construction_weight: i64,
}

fn corona_domain(n: usize, m: usize, what: &'static str) -> Result<(i64, i64)> {
    if m < 3 || n < 1 {
        return Err(Error::domain(what, "requires n >= 1 and m >= 3"));
    }
    Ok((n as i64, m as i64))
}

pub fn corona_upper_bound(n: usize, m: usize) -> Result<CoronaUpper> {
    let (n, m) = corona_domain(n, m, "corona_upper_bound")?;
    let (hi, lo) = (ceil_div(n, 2), floor_div(n, 2));
    Ok(CoronaUpper {
        stated_formula: (m - 4) * hi - m * lo + 2 * n,
        construction_weight: 2 * n + (m - 2) * hi - m * lo,
    })
}

/// `(2 - m)n + 2⌊n/m⌋`.
pub fn corona_lower_bound(n: usize, m: usize) -> Result<i64> {
    let (n, m) = corona_domain(n, m, "corona_lower_bound")?;
    Ok((2 - m) * n + 2 * floor_div(n, m))
}

/// `⌊n/m⌋·m + n <= ⌈(nm + n)/2⌉`.
pub fn lemma_inequality_holds(n: usize, m: usize) -> Result<bool> {
    let (n, m) = corona_domain(n, m, "lemma_inequality")?;
    Ok(floor_div(n, m) * m + n <= ceil_div(n * m + n, 2))
}

/// Counts the `(n, m)` grid points where the lemma inequality fails.
pub fn lemma_failures(n_max: usize, m_max: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 3..=m_max {
            if !lemma_inequality_holds(n, m).expect("in domain") {
                out.push((n, m));
            }
        }
    }
    out
}

fn corona_predictions(n: usize, h: &Graph) -> Vec<Prediction> {
    let m = h.order();
    let ok = n >= 1 && m >= 3 && h.is_connected() && h.min_degree() >= 2;
    let why = "requires H connected with minimum degree >= 2";
    let upper = ok.then(|| corona_upper_bound(n, m).expect("guarded"));
    vec![
        Prediction::guarded(TheoremId::CoronaUpperStated, BoundKind::UpperBound, ok, why, || {
            upper.unwrap().stated_formula
        }),
        Prediction::guarded(
            TheoremId::CoronaUpperConstruction,
            BoundKind::UpperBound,
            ok,
            why,
            || upper.unwrap().construction_weight,
        ),
        Prediction::guarded(TheoremId::CoronaLower, BoundKind::LowerBound, ok, why, || {
            corona_lower_bound(n, m).expect("guarded")
        }),
    ]
}

/// Upper bounds that hold for trees, computed from the tree's profile.
pub fn tree_predictions(t: &Graph) -> Result<Vec<Prediction>> {
    let p = TreeProfile::of(t)?;
    let n = p.n;
    let gamma_set = if n <= DEFAULT_GAMMA_SET_CAP {
        find_gamma_set_independent_complement(t, DEFAULT_GAMMA_SET_CAP)?
    } else {
        None
    };
    let ind = tree_independence_bounds(n, p.beta0)?;
    Ok(vec![
        Prediction::guarded(TheoremId::TreeSupportLeaf, BoundKind::UpperBound, true, "", || {
            tree_support_leaf_bound(n, p.supports, p.leaves).expect("n >= 2")
        }),
        Prediction::guarded(
            TheoremId::TreeDomination,
            BoundKind::UpperBound,
            gamma_set.is_some(),
            "no gamma-set with independent complement (or tree beyond search cap)",
            || tree_domination_bound(n, p.gamma).expect("Ore bound"),
        ),
        Prediction::guarded(
            TheoremId::TreeIndependenceStated,
            BoundKind::UpperBound,
            true,
            "",
            || ind.stated,
        ),
        Prediction::guarded(
            TheoremId::TreeIndependenceProof,
            BoundKind::UpperBound,
            true,
            "",
            || ind.proof_derived,
        ),
    ])
}

/// Every applicable (and guarded-out) closed-form statement about `spec`.
pub fn predict(spec: &GraphSpec) -> Result<Vec<Prediction>> {
    use BoundKind::*;
    use TheoremId as T;
    let mut out = Vec::new();
    match *spec {
        GraphSpec::Complete(n) => out.push(Prediction::guarded(
            T::Complete,
            ExactValue,
            n >= 2,
            "requires n >= 2",
            || complete_value(n),
        )),
        GraphSpec::Wheel(n) => out.push(Prediction::guarded(
            T::Wheel,
            ExactValue,
            n >= 4,
            "requires n >= 4",
            || wheel_value(n),
        )),
        GraphSpec::Fan(n) => out.push(Prediction::guarded(
            T::Fan,
            ExactValue,
            n >= 4,
            "requires n >= 4",
            || wheel_value(n),
        )),
        GraphSpec::Star(n) => out.push(Prediction::guarded(
            T::Star,
            ExactValue,
            n >= 2,
            "requires n >= 2",
            || star_value(n),
        )),
        GraphSpec::ComplementPath(n) => out.push(Prediction::guarded(
            T::ComplementPath,
            ExactValue,
            n >= 12,
            "requires n >= 12",
            || -1,
        )),
        GraphSpec::ComplementCycle(n) => out.push(Prediction::guarded(
            T::ComplementCycle,
            ExactValue,
            n >= 12,
            "requires n >= 12",
            || -1,
        )),
        GraphSpec::CompleteMinusMatching(n) => out.push(Prediction::guarded(
            T::CompleteMinusMatching,
            ExactValue,
            n >= 3,
            "requires n >= 3",
            || 0,
        )),
        GraphSpec::JoinComplete(m, n) => out.push(Prediction::guarded(
            T::JoinComplete,
            ExactValue,
            2 <= m && m <= n && m != 3 && n != 3,
            "requires 2 <= m <= n with m, n != 3",
            || 1,
        )),
        GraphSpec::CoronaK3K3(k) => {
            out.push(Prediction::guarded(
                T::CoronaK3,
                ExactValue,
                k >= 1,
                "requires k >= 1",
                || -(k as i64),
            ));
            out.extend(corona_predictions(3 * k, &GraphSpec::Complete(3).generate()?));
        }
        GraphSpec::Corona(ref g, ref h) => {
            out.extend(corona_predictions(g.generate()?.order(), &h.generate()?));
        }
        _ => {}
    }

    let g = spec.generate()?;
    if g.order() >= 2 {
        if g.is_tree() {
            out.extend(tree_predictions(&g)?);
        }
        out.push(Prediction {
            kind: LowerBound,
            value: Some(Value(delta_lower_bound(&g)?)),
            inapplicable_reason: None,
            source: T::DeltaLower,
        });
    }
    Ok(out)
}

/// The single exact-value prediction for `spec`, if one applies.
pub fn predicted_exact(spec: &GraphSpec) -> Result<Option<i64>> {
    Ok(predict(spec)?
        .into_iter()
        .find(|p| p.kind == BoundKind::ExactValue && p.is_applicable())
        .and_then(|p| p.value)
        .and_then(Value::as_int))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(spec: &GraphSpec, id: TheoremId) -> Prediction {
        predict(spec).unwrap().into_iter().find(|p| p.source == id).unwrap()
    }

    #[test]
    fn exact_value_examples() {
        assert_eq!(predicted_exact(&GraphSpec::Wheel(7)).unwrap(), Some(0));
        assert_eq!(predicted_exact(&GraphSpec::Star(5)).unwrap(), Some(-2));
        assert_eq!(predicted_exact(&GraphSpec::CoronaK3K3(2)).unwrap(), Some(-2));
        assert_eq!(predicted_exact(&GraphSpec::Complete(3)).unwrap(), Some(2));
        assert_eq!(predicted_exact(&GraphSpec::Complete(8)).unwrap(), Some(1));
        assert_eq!(predicted_exact(&GraphSpec::Fan(12)).unwrap(), Some(-5));
    }

    #[test]
    fn guards_flag_inapplicable() {
        let p = find(&GraphSpec::ComplementPath(11), TheoremId::ComplementPath);
        assert!(!p.is_applicable());
        assert!(p.inapplicable_reason.unwrap().contains("12"));
        assert!(!find(&GraphSpec::JoinComplete(3, 4), TheoremId::JoinComplete).is_applicable());
        assert!(!find(&GraphSpec::JoinComplete(4, 2), TheoremId::JoinComplete).is_applicable());
        assert!(!find(&GraphSpec::Complete(1), TheoremId::Complete).is_applicable());
        let c = GraphSpec::corona(GraphSpec::Complete(2), GraphSpec::Path(3));
        assert!(!find(&c, TheoremId::CoronaLower).is_applicable());
    }

    #[test]
    fn wheel_four_agrees_with_k4() {
        assert_eq!(predicted_exact(&GraphSpec::Wheel(4)).unwrap(), Some(1));
        assert_eq!(predicted_exact(&GraphSpec::Complete(4)).unwrap(), Some(1));
    }

    #[test]
    fn join_agrees_with_complete() {
        for n in 2..12 {
            for m in 2..=n {
                if let Some(v) = predicted_exact(&GraphSpec::JoinComplete(m, n)).unwrap() {
                    assert_eq!(Some(v), predicted_exact(&GraphSpec::Complete(m + n)).unwrap());
                }
            }
        }
    }

    #[test]
    fn star_is_sharp_for_delta_bound() {
        for n in 2..30 {
            let lb = find(&GraphSpec::Star(n), TheoremId::DeltaLower).value.unwrap();
            assert_eq!(lb, Value::int(star_value(n)));
        }
    }

    #[test]
    fn support_leaf_arithmetic() {
        assert_eq!(tree_support_leaf_bound(4, 2, 2).unwrap(), 2);
        for n in 3..20 {
            assert_eq!(tree_support_leaf_bound(n, 1, n - 1).unwrap(), 3 - n as i64);
        }
        // P_2 under the three (s, l) readings
        assert_eq!(tree_support_leaf_bound(2, 1, 2).unwrap(), 0);
        assert_eq!(tree_support_leaf_bound(2, 1, 1).unwrap(), 1);
        assert_eq!(tree_support_leaf_bound(2, 2, 2).unwrap(), 2);
        assert!(tree_support_leaf_bound(1, 1, 1).is_err());
    }

    #[test]
    fn domination_bound_arithmetic() {
        assert_eq!(tree_domination_bound(4, 2).unwrap(), 2);
        assert_eq!(tree_domination_bound(3, 1).unwrap(), 0);
        for (a, b) in [(2, 2), (3, 2), (4, 5)] {
            assert_eq!(tree_domination_bound(a + b, 2).unwrap(), 6 - (a + b) as i64);
        }
        assert!(tree_domination_bound(4, 3).is_err());
        assert!(tree_domination_bound(4, 0).is_err());
    }

    #[test]
    fn independence_bound_arithmetic() {
        let b = tree_independence_bounds(5, 4).unwrap();
        assert_eq!((b.stated, b.proof_derived), (6, -2));
        let b = tree_independence_bounds(4, 2).unwrap();
        assert_eq!((b.stated, b.proof_derived), (6, 2));
        let b = tree_independence_bounds(2, 1).unwrap();
        assert_eq!((b.stated, b.proof_derived), (3, 1));
        assert!(tree_independence_bounds(6, 2).is_err());
    }

    #[test]
    fn corona_bound_arithmetic() {
        assert_eq!(
            corona_upper_bound(1, 3).unwrap(),
            CoronaUpper {
                stated_formula: 1,
                construction_weight: 3
            }
        );
        assert_eq!(
            corona_upper_bound(2, 3).unwrap(),
            CoronaUpper {
                stated_formula: 0,
                construction_weight: 2
            }
        );
        assert_eq!(corona_lower_bound(3, 3).unwrap(), -1);
        assert_eq!(corona_lower_bound(6, 3).unwrap(), -2);
        assert_eq!(corona_lower_bound(1, 4).unwrap(), -2);
        assert!(corona_upper_bound(1, 2).is_err());
        assert!(corona_lower_bound(0, 3).is_err());
        for n in 1..60 {
            for m in 3..60 {
                assert!(corona_lower_bound(n, m).unwrap() <= corona_upper_bound(n, m).unwrap().construction_weight);
            }
        }
    }

    #[test]
    fn lemma_examples() {
        assert!(lemma_inequality_holds(1, 3).unwrap());
        assert!(lemma_inequality_holds(3, 3).unwrap());
        assert!(lemma_inequality_holds(7, 3).unwrap());
        assert!(lemma_inequality_holds(1, 2).is_err());
        assert!(lemma_failures(500, 500).is_empty());
    }

    #[test]
    fn tree_predictions_on_double_star() {
        let preds = predict(&GraphSpec::DoubleStar(3, 4)).unwrap();
        let dom = preds.iter().find(|p| p.source == TheoremId::TreeDomination).unwrap();
        assert_eq!(dom.value, Some(Value::int(6 - 7)));
    }

    #[test]
    fn value_display() {
        assert_eq!(Value(Rational64::new(-10, 4)).to_string(), "-5/2");
        assert_eq!(Value::int(-7).to_string(), "-7");
    }
}
