mod common;

use mrdom::mrdf::{closed_sum, majority_threshold, satisfied_count, validate, validate_with};
use mrdom::{Graph, Label, Labeling, ThresholdMode};
use proptest::prelude::*;

/// Straight from the definition, sharing no code with the library.
fn reference(g: &Graph, f: &[i64]) -> (bool, usize, Vec<usize>, i64) {
    let n = f.len();
    let mut satisfied = 0;
    let mut violations = Vec::new();
    for v in 0..n {
        let mut sum = f[v];
        let mut has_two = false;
        for (u, &fu) in f.iter().enumerate() {
            if u != v && g.has_edge(u, v) {
                sum += fu;
                has_two |= fu == 2;
            }
        }
        if sum >= 1 {
            satisfied += 1;
        }
        if f[v] == -1 && !has_two {
            violations.push(v);
        }
    }
    let need = n.div_ceil(2);
    (
        satisfied >= need && violations.is_empty(),
        satisfied,
        violations,
        f.iter().sum(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn validate_matches_reference((g, f) in common::arb_graph_and_labeling(10)) {
        let r = validate(&g, &f).unwrap();
        let (ok, sat, viol, w) = reference(&g, &f.values());
        prop_assert_eq!(r.is_valid, ok);
        prop_assert_eq!(r.satisfied_count, sat);
        prop_assert_eq!(r.roman_violations, viol);
        prop_assert_eq!(r.weight, w);
        prop_assert_eq!(r.threshold, majority_threshold(g.order()));
    }

    #[test]
    fn partition_identity((_g, f) in common::arb_graph_and_labeling(10)) {
        let (p, q, o) = (f.plus_set().len() as i64, f.two_set().len() as i64, f.minus_set().len() as i64);
        prop_assert_eq!(f.weight(), p + 2 * q - o);
        prop_assert_eq!((p + q + o) as usize, f.len());
    }

    #[test]
    fn raising_a_label_never_lowers_satisfied_count((g, f) in common::arb_graph_and_labeling(10), pick in any::<prop::sample::Index>()) {
        let v = pick.index(g.order());
        let before = satisfied_count(&g, &f).unwrap();
        let raised = match f.get(v) {
            Label::Minus => Some(Label::Plus),
            Label::Plus => Some(Label::Two),
            Label::Two => None,
        };
        if let Some(l) = raised {
            let mut h = f.clone();
            h.set(v, l);
            prop_assert!(satisfied_count(&g, &h).unwrap() >= before);
        }
    }

    #[test]
    fn closed_sums_add_up((g, f) in common::arb_graph_and_labeling(10)) {
        // sum over v of f(N[v]) = sum over v of f(v) * (deg v + 1)
        let total: i64 = (0..g.order()).map(|v| closed_sum(&g, &f, v).unwrap()).sum();
        let by_degree: i64 = (0..g.order()).map(|v| f.get(v).value() * (g.neighbors(v).len() as i64 + 1)).sum();
        prop_assert_eq!(total, by_degree);
    }

    #[test]
    fn labeling_text_round_trip((_g, f) in common::arb_graph_and_labeling(10)) {
        prop_assert_eq!(f.to_string().parse::<Labeling>().unwrap(), f);
    }
}

#[test]
fn isolated_minus_vertex_is_a_roman_violation() {
    let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
    for rest in [Label::Plus, Label::Two, Label::Minus] {
        let f = Labeling::new(vec![rest, Label::Two, rest, Label::Minus]);
        let r = validate(&g, &f).unwrap();
        assert!(r.roman_violations.contains(&3));
        assert!(!r.is_valid);
    }
}

#[test]
fn all_two_is_always_valid() {
    for n in 1..12 {
        let g = Graph::empty(n);
        assert!(validate(&g, &Labeling::uniform(n, Label::Two)).unwrap().is_valid);
    }
}

#[test]
fn figure_one_labeling() {
    let g = mrdom::GraphSpec::CoronaK3K3(1).generate().unwrap();
    let f: Labeling = "2,2,2,1,-1,-1,-1,-1,-1,-1,-1,-1".parse().unwrap();
    let sums: Vec<i64> = (0..12).map(|v| closed_sum(&g, &f, v).unwrap()).collect();
    assert_eq!(sums, [5, 3, 3, 1, 1, 1, -1, -1, -1, -1, -1, -1]);
    let r = validate(&g, &f).unwrap();
    assert!(r.is_valid);
    assert_eq!((r.satisfied_count, r.threshold, r.weight), (6, 6, -1));
}

#[test]
fn floor_threshold_is_weaker() {
    let g = Graph::empty(3);
    let f: Labeling = "1,-1,2".parse().unwrap();
    assert!(!validate(&g, &f).unwrap().is_valid);
    let f: Labeling = "1,2,1".parse().unwrap();
    assert_eq!(validate_with(&g, &f, ThresholdMode::Floor).unwrap().threshold, 1);
}

#[test]
fn length_and_label_errors() {
    let g = Graph::empty(3);
    assert!(validate(&g, &"1,1".parse().unwrap()).is_err());
    assert!("1,0,2".parse::<Labeling>().is_err());
    assert!(closed_sum(&g, &"1,1,1".parse().unwrap(), 5).is_err());
}
