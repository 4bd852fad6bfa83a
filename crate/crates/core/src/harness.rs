//! Cross-checks closed forms, certificates and exact optima instance by
//! instance, and renders the verdicts as CSV, JSON lines or a table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::RangeInclusive;

use num_rational::Rational64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificates::{certificate_for, Certificate, Claim};
use crate::closed_forms::{lemma_inequality_holds, predict, tree_predictions, BoundKind, Prediction, TheoremId, Value};
use crate::error::{Error, Result};
use crate::family::GraphSpec;
use crate::graph::Graph;
use crate::solver::{delta_lower_bound, solve, SolveOptions};

/// Largest order the harness solves exactly by default.
pub const DEFAULT_EXACT_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Match,
    BoundHolds,
    BoundTight,
    Mismatch,
    CertInvalid,
    Unproven,
    /// The statement's hypothesis fails on this instance.
    Inapplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::BoundHolds => "BOUND_HOLDS",
            Verdict::BoundTight => "BOUND_TIGHT",
            Verdict::Mismatch => "MISMATCH",
            Verdict::CertInvalid => "CERT_INVALID",
            Verdict::Unproven => "UNPROVEN",
            Verdict::Inapplicable => "INAPPLICABLE",
        }
    }

    /// Verdicts that fail a `--strict` run.
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Mismatch | Verdict::CertInvalid)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub spec: String,
    pub theorem: TheoremId,
    pub kind: BoundKind,
    pub predicted: Option<Value>,
    pub cert_weight: Option<i64>,
    pub cert_valid: Option<bool>,
    pub cert_defects: Vec<String>,
    pub optimum: Option<i64>,
    pub verdict: Verdict,
    /// Whether the statement holds against the exact optimum.
    pub holds: Option<bool>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub rows: Vec<Row>,
    /// Instances dropped because they fail the statement's hypothesis.
    pub excluded: usize,
}

impl TheoremReport {
    pub fn tally(&self) -> BTreeMap<Verdict, usize> {
        let mut out = BTreeMap::new();
        for r in &self.rows {
            *out.entry(r.verdict).or_insert(0) += 1;
        }
        out
    }

    pub fn has_failures(&self) -> bool {
        self.rows.iter().any(|r| r.verdict.is_failure())
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == v).count()
    }
}

/// Instances to check: a parameter span expanded per theorem, or an
/// explicit list of graphs.
#[derive(Debug, Clone)]
pub enum Params {
    Span(RangeInclusive<usize>),
    Specs(Vec<GraphSpec>),
}

impl std::str::FromStr for Params {
    type Err = Error;

    /// `a..b` and `a..=b` are both inclusive; a bare `n` is `n..=n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::SpecSyntax {
            input: s.to_string(),
            reason: "expected a range a..b".into(),
        };
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        Ok(Params::Span(lo..=hi))
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub solve: SolveOptions,
    /// Orders above this are reported without an exact optimum.
    pub exact_cap: usize,
    /// Random instances per order for the sampled theorems.
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            solve: SolveOptions::default(),
            exact_cap: DEFAULT_EXACT_CAP,
            samples: 10,
            seed: 0,
        }
    }
}

/// Theorem ids accepted by [`check`]: every [`TheoremId`] plus
/// `corona_upper` (stated and construction rows) and `tree_independence`
/// (stated and proof-derived rows).
pub fn resolve_theorem(name: &str) -> Result<Vec<TheoremId>> {
    Ok(match name {
        "corona_upper" => vec![TheoremId::CoronaUpperStated, TheoremId::CoronaUpperConstruction],
        "tree_independence" => vec![TheoremId::TreeIndependenceStated, TheoremId::TreeIndependenceProof],
        _ => vec![name.parse()?],
    })
}

/// Coronas `G ∘ H` with `G ∈ {K_1, K_2, P_3, K_3}`, `H ∈ {K_3, C_4, C_5}`
/// whose order lies in `orders`.
pub fn corona_audit_specs(orders: RangeInclusive<usize>) -> Vec<GraphSpec> {
    let gs = [
        GraphSpec::Complete(1),
        GraphSpec::Complete(2),
        GraphSpec::Path(3),
        GraphSpec::Complete(3),
    ];
    let hs = [GraphSpec::Complete(3), GraphSpec::Cycle(4), GraphSpec::Cycle(5)];
    let order = |s: &GraphSpec| match s {
        GraphSpec::Complete(n) | GraphSpec::Path(n) | GraphSpec::Cycle(n) => *n,
        _ => unreachable!(),
    };
    let mut out = Vec::new();
    for g in &gs {
        for h in &hs {
            if orders.contains(&(order(g) * (1 + order(h)))) {
                out.push(GraphSpec::corona(g.clone(), h.clone()));
            }
        }
    }
    out
}

/// `samples` random trees of each order, seeds drawn from `seed`.
pub fn random_tree_specs(orders: RangeInclusive<usize>, samples: usize, seed: u64) -> Vec<GraphSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in orders {
        for _ in 0..samples {
            out.push(GraphSpec::RandomTree {
                n,
                seed: rng.next_u64(),
            });
        }
    }
    out
}

/// `samples` random trees and `samples` `G(n, p)` graphs (p cycling through
/// 30%, 50%, 70%) of each order.
pub fn random_graph_specs(orders: RangeInclusive<usize>, samples: usize, seed: u64) -> Vec<GraphSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in orders {
        for i in 0..samples {
            out.push(GraphSpec::RandomTree {
                n,
                seed: rng.next_u64(),
            });
            out.push(GraphSpec::Gnp {
                n,
                percent: [30, 50, 70][i % 3],
                seed: rng.next_u64(),
            });
        }
    }
    out
}

fn expand(ids: &[TheoremId], span: RangeInclusive<usize>, opts: &CheckOptions) -> Result<Vec<GraphSpec>> {
    use TheoremId as T;
    let one = |f: fn(usize) -> GraphSpec| span.clone().map(f).collect::<Vec<_>>();
    Ok(match ids[0] {
        T::Complete => one(GraphSpec::Complete),
        T::Wheel => one(GraphSpec::Wheel),
        T::Fan => one(GraphSpec::Fan),
        T::Star => one(GraphSpec::Star),
        T::ComplementPath => one(GraphSpec::ComplementPath),
        T::ComplementCycle => one(GraphSpec::ComplementCycle),
        T::CompleteMinusMatching => one(GraphSpec::CompleteMinusMatching),
        T::CoronaK3 => one(GraphSpec::CoronaK3K3),
        T::JoinComplete => {
            let mut out = Vec::new();
            for m in span.clone() {
                for n in m..=*span.end() {
                    out.push(GraphSpec::JoinComplete(m, n));
                }
            }
            out
        }
        T::CoronaUpperStated | T::CoronaUpperConstruction | T::CoronaLower => corona_audit_specs(span),
        T::DeltaLower => random_graph_specs(span, opts.samples, opts.seed),
        T::TreeSupportLeaf | T::TreeDomination | T::TreeIndependenceStated | T::TreeIndependenceProof => {
            random_tree_specs(span, opts.samples, opts.seed)
        }
        T::Subadditivity | T::Lemma => unreachable!("expanded by their own checks"),
    })
}

/// Runs one theorem (or alias, see [`resolve_theorem`]) over `params`.
/// Rows follow parameter order, and within an instance the alias order.
pub fn check(theorem: &str, params: &Params, opts: &CheckOptions) -> Result<TheoremReport> {
    let ids = resolve_theorem(theorem)?;
    if opts.solve.threads == 0 {
        return Err(Error::Precondition("threads must be at least 1".into()));
    }
    match (ids[0], params) {
        (TheoremId::Lemma, Params::Span(span)) => return Ok(lemma_report(theorem, span.clone())),
        (TheoremId::Lemma, Params::Specs(_)) => {
            return Err(Error::Precondition("lemma takes a range of n, not graphs".into()))
        }
        (TheoremId::Subadditivity, _) => return subadditivity_report(theorem, params, opts),
        _ => {}
    }
    let specs = match params {
        Params::Span(span) => expand(&ids, span.clone(), opts)?,
        Params::Specs(s) => s.clone(),
    };
    let suffix = ids.len() > 1;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.solve.threads)
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?;
    let mut inner = opts.clone();
    if specs.len() > 1 {
        inner.solve.threads = 1;
    }
    let per_spec: Vec<Result<Vec<Row>>> = pool.install(|| {
        specs
            .par_iter()
            .map(|s| instance_rows(&ids, s, &inner, suffix))
            .collect()
    });
    let mut rows = Vec::new();
    for r in per_spec {
        rows.extend(r?);
    }
    Ok(TheoremReport {
        theorem: theorem.to_string(),
        rows,
        excluded: 0,
    })
}

fn exact_optimum(g: &Graph, upper: Option<i64>, opts: &CheckOptions) -> Result<Option<i64>> {
    if g.order() > opts.exact_cap {
        return Ok(None);
    }
    let mut so = opts.solve.clone();
    so.initial_upper_bound = upper;
    let r = solve(g, &so)?;
    Ok(r.proven.then_some(r.optimum))
}

fn prediction_for(id: TheoremId, spec: &GraphSpec, g: &Graph) -> Result<Option<Prediction>> {
    let all = match id {
        TheoremId::TreeSupportLeaf
        | TheoremId::TreeDomination
        | TheoremId::TreeIndependenceStated
        | TheoremId::TreeIndependenceProof => tree_predictions(g)?,
        TheoremId::DeltaLower => {
            return Ok(Some(Prediction {
                kind: BoundKind::LowerBound,
                value: Some(Value(delta_lower_bound(g)?)),
                inapplicable_reason: None,
                source: id,
            }))
        }
        _ => predict(spec)?,
    };
    Ok(all.into_iter().find(|p| p.source == id))
}

fn instance_rows(ids: &[TheoremId], spec: &GraphSpec, opts: &CheckOptions, suffix: bool) -> Result<Vec<Row>> {
    let g = spec.generate()?;
    let mut staged = Vec::new();
    for &id in ids {
        let pred = prediction_for(id, spec, &g)?
            .ok_or_else(|| Error::Precondition(format!("{id} makes no statement about {}", spec.label())))?;
        let cert = if pred.is_applicable() {
            certificate_for(id, spec)?
        } else {
            None
        };
        let checked = match &cert {
            Some(c) => Some(c.check_with(&g, opts.solve.threshold)?),
            None => None,
        };
        staged.push((id, pred, cert, checked));
    }
    // one solve per instance, seeded by the best valid certificate
    let seed = staged
        .iter()
        .filter_map(|(_, _, c, k)| match (c, k) {
            (Some(c), Some(k)) if k.report.is_valid => Some(c.weight()),
            _ => None,
        })
        .min();
    let any_applicable = staged.iter().any(|(_, p, _, _)| p.is_applicable());
    let optimum = if any_applicable {
        exact_optimum(&g, seed, opts)?
    } else {
        None
    };
    let mut rows = Vec::new();
    for (id, pred, cert, checked) in staged {
        let label = if suffix {
            format!("{}@{}", spec.label(), id)
        } else {
            spec.label()
        };
        let cert_info = cert.as_ref().zip(checked.as_ref()).map(|(c, k)| CertInfo {
            weight: c.weight(),
            valid: k.report.is_valid,
            claim: c.claim,
        });
        let (verdict, holds) = match pred.value {
            None => (Verdict::Inapplicable, None),
            Some(v) => classify(pred.kind, v.0, cert_info.as_ref(), optimum),
        };
        rows.push(Row {
            spec: label,
            theorem: id,
            kind: pred.kind,
            predicted: pred.value,
            cert_weight: cert_info.as_ref().map(|c| c.weight),
            cert_valid: cert_info.as_ref().map(|c| c.valid),
            cert_defects: cert.as_ref().map(defect_strings).unwrap_or_default(),
            optimum: pred.value.and(optimum),
            verdict,
            holds,
            note: pred.inapplicable_reason.or(cert.and_then(|c| c.note)),
        });
    }
    Ok(rows)
}

fn defect_strings(c: &Certificate) -> Vec<String> {
    c.defects.iter().map(|d| d.to_string()).collect()
}

struct CertInfo {
    weight: i64,
    valid: bool,
    claim: Claim,
}

/// Verdict and whether the statement holds against the optimum.
fn classify(kind: BoundKind, b: Rational64, cert: Option<&CertInfo>, optimum: Option<i64>) -> (Verdict, Option<bool>) {
    let r = Rational64::from;
    let opt = optimum.map(r);
    let valid = cert.filter(|c| c.valid);
    let invalid = cert.is_some_and(|c| !c.valid);
    match kind {
        BoundKind::ExactValue => {
            let holds = opt.map(|o| o == b);
            let verdict = if holds == Some(false) {
                Verdict::Mismatch
            } else if invalid {
                Verdict::CertInvalid
            } else if valid.is_some_and(|c| r(c.weight) != b) {
                Verdict::Mismatch
            } else if holds == Some(true) {
                Verdict::Match
            } else {
                Verdict::Unproven
            };
            (verdict, holds)
        }
        BoundKind::UpperBound => {
            let holds = opt.map(|o| o <= b);
            let claim_broken = valid.is_some_and(|c| match c.claim {
                Claim::Exact => r(c.weight) != b,
                Claim::AtMost => r(c.weight) > b,
            });
            let verdict = if holds == Some(false) {
                Verdict::Mismatch
            } else if invalid {
                Verdict::CertInvalid
            } else if claim_broken {
                Verdict::Mismatch
            } else if let Some(o) = opt {
                if o == b {
                    Verdict::BoundTight
                } else {
                    Verdict::BoundHolds
                }
            } else if valid.is_some_and(|c| r(c.weight) <= b) {
                Verdict::BoundHolds
            } else {
                Verdict::Unproven
            };
            (verdict, holds)
        }
        BoundKind::LowerBound => {
            let holds = opt.map(|o| o >= b);
            let verdict = if holds == Some(false) || valid.is_some_and(|c| r(c.weight) < b) {
                Verdict::Mismatch
            } else {
                match opt {
                    Some(o) if o == b => Verdict::BoundTight,
                    Some(_) => Verdict::BoundHolds,
                    None => Verdict::Unproven,
                }
            };
            (verdict, holds)
        }
    }
}

fn lemma_report(theorem: &str, span: RangeInclusive<usize>) -> TheoremReport {
    let m_max = (*span.end()).max(3);
    let rows = span
        .filter(|&n| n >= 1)
        .map(|n| {
            let failures = (3..=m_max)
                .filter(|&m| !lemma_inequality_holds(n, m).expect("in domain"))
                .count();
            Row {
                spec: format!("lemma_n{n}"),
                theorem: TheoremId::Lemma,
                kind: BoundKind::UpperBound,
                predicted: None,
                cert_weight: None,
                cert_valid: None,
                cert_defects: Vec::new(),
                optimum: None,
                verdict: if failures == 0 {
                    Verdict::BoundHolds
                } else {
                    Verdict::Mismatch
                },
                holds: Some(failures == 0),
                note: Some(format!("m in 3..={m_max}, {failures} failures")),
            }
        })
        .collect();
    TheoremReport {
        theorem: theorem.to_string(),
        rows,
        excluded: 0,
    }
}

/// Operand pool for sampled joins: paths, cycles, completes, stars, trees
/// and `G(n, 1/2)` of each order.
fn operand_pool(orders: RangeInclusive<usize>, rng: &mut ChaCha8Rng) -> Vec<GraphSpec> {
    let mut out = Vec::new();
    for n in orders.filter(|&n| n >= 1) {
        out.push(GraphSpec::Path(n));
        out.push(GraphSpec::Complete(n));
        if n >= 3 {
            out.push(GraphSpec::Cycle(n));
        }
        if n >= 2 {
            out.push(GraphSpec::Star(n));
        }
        out.push(GraphSpec::RandomTree {
            n,
            seed: rng.next_u64(),
        });
        out.push(GraphSpec::Gnp {
            n,
            percent: 50,
            seed: rng.next_u64(),
        });
    }
    out
}

/// `γ_MR(G ∨ H) <= γ_MR(G) + γ_MR(H)` on pairs whose operands both have
/// non-negative value; other pairs are excluded. A span samples `samples`
/// pairs of operands with orders in the span, starting with `(P_2, K_1)`
/// when the span allows it.
fn subadditivity_report(theorem: &str, params: &Params, opts: &CheckOptions) -> Result<TheoremReport> {
    let mut cache: HashMap<GraphSpec, Option<i64>> = HashMap::new();
    let mut value = |s: &GraphSpec| -> Result<Option<i64>> {
        if let Some(v) = cache.get(s) {
            return Ok(*v);
        }
        let v = exact_optimum(&s.generate()?, None, opts)?;
        cache.insert(s.clone(), v);
        Ok(v)
    };
    let mut pairs = Vec::new();
    let mut excluded = 0;
    let mut consider = |g: GraphSpec, h: GraphSpec, pairs: &mut Vec<_>| -> Result<()> {
        match (value(&g)?, value(&h)?) {
            (Some(a), Some(b)) if a >= 0 && b >= 0 => pairs.push((g, h, a + b)),
            _ => excluded += 1,
        }
        Ok(())
    };
    match params {
        Params::Specs(specs) => {
            for s in specs {
                let GraphSpec::Join(g, h) = s else {
                    return Err(Error::Precondition(format!("{} is not a join", s.label())));
                };
                consider((**g).clone(), (**h).clone(), &mut pairs)?;
            }
        }
        Params::Span(span) => {
            if span.contains(&1) && span.contains(&2) {
                consider(GraphSpec::Path(2), GraphSpec::Complete(1), &mut pairs)?;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let pool = operand_pool(span.clone(), &mut rng);
            let mut attempts = 0;
            while !pool.is_empty() && pairs.len() < opts.samples && attempts < 50 * opts.samples.max(1) {
                attempts += 1;
                let g = pool[rng.gen_range(0..pool.len())].clone();
                let h = pool[rng.gen_range(0..pool.len())].clone();
                consider(g, h, &mut pairs)?;
            }
        }
    }
    let rows = pairs
        .into_par_iter()
        .map(|(g, h, sum)| {
            let join = GraphSpec::join(g, h);
            let optimum = exact_optimum(&join.generate()?, Some(sum), opts)?;
            let (verdict, holds) = classify(BoundKind::UpperBound, Rational64::from(sum), None, optimum);
            Ok(Row {
                spec: join.label(),
                theorem: TheoremId::Subadditivity,
                kind: BoundKind::UpperBound,
                predicted: Some(Value::int(sum)),
                cert_weight: None,
                cert_valid: None,
                cert_defects: Vec::new(),
                optimum,
                verdict,
                holds,
                note: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremReport {
        theorem: theorem.to_string(),
        rows,
        excluded,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
    Table,
}

pub const CSV_HEADER: [&str; 6] = ["spec", "predicted", "cert_weight", "cert_valid", "optimum", "verdict"];

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Renders the report; output depends only on the report's contents.
pub fn export(report: &TheoremReport, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("writing to memory");
            for r in &report.rows {
                w.write_record([
                    r.spec.clone(),
                    cell(r.predicted),
                    cell(r.cert_weight),
                    cell(r.cert_valid),
                    cell(r.optimum),
                    r.verdict.to_string(),
                ])
                .expect("writing to memory");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
        Format::JsonLines => report
            .rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("rows serialize") + "\n")
            .collect(),
        Format::Table => table(report),
    }
}

fn table(report: &TheoremReport) -> String {
    let head = [
        "spec",
        "theorem",
        "predicted",
        "cert",
        "valid",
        "defects",
        "optimum",
        "verdict",
    ];
    let body: Vec<[String; 8]> = report
        .rows
        .iter()
        .map(|r| {
            [
                r.spec.clone(),
                r.theorem.to_string(),
                cell(r.predicted),
                cell(r.cert_weight),
                cell(r.cert_valid),
                r.cert_defects.len().to_string(),
                cell(r.optimum),
                r.verdict.to_string(),
            ]
        })
        .collect();
    let mut width = head.map(str::len);
    for row in &body {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&head.map(String::from));
    for row in &body {
        out.push_str(&line(row));
    }
    let tally: Vec<String> = report.tally().iter().map(|(v, n)| format!("{v}={n}")).collect();
    out.push_str(&format!("{} rows: {}", report.rows.len(), tally.join(" ")));
    if report.excluded > 0 {
        out.push_str(&format!(" (excluded {})", report.excluded));
    }
    out.push('\n');
    out
}
