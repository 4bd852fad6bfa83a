//! Symbolic graph families and their generators.
//!
//! Vertex orderings are part of the public contract because certificate
//! labelings index into them:
//!
//! * `Path`, `Cycle`: vertices in path/cycle order.
//! * `Star(n)`: hub is 0, leaves `1..n`.
//! * `DoubleStar(a, b)`: centers `u = 0` (degree `a`) and `v = 1` (degree
//!   `b`); `u`'s leaves are `2..a+1`, `v`'s leaves `a+1..a+b`.
//! * `Wheel(n)`, `Fan(n)`: hub is 0, rim/path is `1..n` in order.
//! * `ComplementPath(n)`, `ComplementCycle(n)`: vertex `i - 1` is the
//!   1-based path vertex `v_i`.
//! * `CompleteMinusMatching(n)`: `2n` vertices, removed matching pairs are
//!   `(2i, 2i + 1)`.
//! * `JoinComplete(m, n)`: `0..m` is `K_m`, `m..m+n` is `K_n`.
//! * `Corona(G, H)` and `CoronaK3K3(k) = K_{3k} ∘ K_3`: `G` first, then one
//!   block of `|H|` vertices per vertex of `G`, in anchor order.
//! * `Join(G, H)`: `G` first, then `H`.
//! * `Gnp { n, percent, seed }`: each pair `u < v` in lexicographic order
//!   is an edge with probability `percent / 100`, drawn from ChaCha8.
//! * `RandomTree(n, seed)`: Prüfer decode of a sequence drawn from
//!   ChaCha8 seeded with `seed` (uniform over labeled trees).

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Builder, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `K_{1, n-1}` on `n` vertices.
    Star(usize),
    /// `S_{a,b}`: adjacent centers of degrees `a` and `b`.
    DoubleStar(usize, usize),
    Wheel(usize),
    /// `F_n = K_1 ∨ P_{n-1}`.
    Fan(usize),
    ComplementPath(usize),
    ComplementCycle(usize),
    /// `K_{2n} - M` for a perfect matching `M`.
    CompleteMinusMatching(usize),
    /// `K_m ∨ K_n`.
    JoinComplete(usize, usize),
    /// `K_{3k} ∘ K_3`.
    CoronaK3K3(usize),
    Corona(Box<GraphSpec>, Box<GraphSpec>),
    Join(Box<GraphSpec>, Box<GraphSpec>),
    /// Erdős–Rényi `G(n, p)` with `p = percent / 100`.
    Gnp {
        n: usize,
        percent: u32,
        seed: u64,
    },
    RandomTree {
        n: usize,
        seed: u64,
    },
    FromFile(PathBuf),
}

impl GraphSpec {
    pub fn corona(g: GraphSpec, h: GraphSpec) -> GraphSpec {
        GraphSpec::Corona(Box::new(g), Box::new(h))
    }

    pub fn join(g: GraphSpec, h: GraphSpec) -> GraphSpec {
        GraphSpec::Join(Box::new(g), Box::new(h))
    }

    fn family_name(&self) -> &'static str {
        match self {
            GraphSpec::Path(_) => "path",
            GraphSpec::Cycle(_) => "cycle",
            GraphSpec::Complete(_) => "complete",
            GraphSpec::Star(_) => "star",
            GraphSpec::DoubleStar(..) => "double_star",
            GraphSpec::Wheel(_) => "wheel",
            GraphSpec::Fan(_) => "fan",
            GraphSpec::ComplementPath(_) => "cpath",
            GraphSpec::ComplementCycle(_) => "ccycle",
            GraphSpec::CompleteMinusMatching(_) => "kmm",
            GraphSpec::JoinComplete(..) => "join",
            GraphSpec::CoronaK3K3(_) => "corona_k3",
            GraphSpec::Corona(..) => "corona",
            GraphSpec::Join(..) => "join",
            GraphSpec::Gnp { .. } => "gnp",
            GraphSpec::RandomTree { .. } => "tree",
            GraphSpec::FromFile(_) => "file",
        }
    }

    /// Checks every family's parameter domain.
    pub fn validate(&self) -> Result<()> {
        let name = self.family_name();
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::domain(name, what))
            }
        };
        match self {
            GraphSpec::Path(n) => need(*n >= 1, "requires n >= 1"),
            GraphSpec::Cycle(n) => need(*n >= 3, "requires n >= 3"),
            GraphSpec::Complete(n) => need(*n >= 1, "requires n >= 1"),
            GraphSpec::Star(n) => need(*n >= 2, "requires n >= 2"),
            GraphSpec::DoubleStar(a, b) => need(*a >= 2 && *b >= 2, "requires a >= 2 and b >= 2"),
            GraphSpec::Wheel(n) => need(*n >= 4, "requires n >= 4"),
            GraphSpec::Fan(n) => need(*n >= 2, "requires n >= 2"),
            GraphSpec::ComplementPath(n) => need(*n >= 1, "requires n >= 1"),
            GraphSpec::ComplementCycle(n) => need(*n >= 3, "requires n >= 3"),
            GraphSpec::CompleteMinusMatching(n) => need(*n >= 1, "requires n >= 1"),
            GraphSpec::JoinComplete(m, n) => need(*m >= 1 && *n >= 1, "requires m >= 1 and n >= 1"),
            GraphSpec::CoronaK3K3(k) => need(*k >= 1, "requires k >= 1"),
            GraphSpec::Corona(g, h) | GraphSpec::Join(g, h) => {
                g.validate()?;
                h.validate()
            }
            GraphSpec::Gnp { n, percent, .. } => need(*n >= 1 && *percent <= 100, "requires n >= 1 and percent <= 100"),
            GraphSpec::RandomTree { n, .. } => need(*n >= 1, "requires n >= 1"),
            GraphSpec::FromFile(_) => Ok(()),
        }
    }

    /// Builds the graph with the documented vertex ordering.
    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        Ok(match *self {
            GraphSpec::Path(n) => path(n),
            GraphSpec::Cycle(n) => {
                let mut b = path_builder(n);
                b.add(n - 1, 0);
                b.build()
            }
            GraphSpec::Complete(n) => complete(n),
            GraphSpec::Star(n) => {
                let mut b = Builder::new(n);
                for v in 1..n {
                    b.add(0, v);
                }
                b.build()
            }
            GraphSpec::DoubleStar(a, b_deg) => {
                let n = a + b_deg;
                let mut b = Builder::new(n);
                b.add(0, 1);
                for leaf in 2..a + 1 {
                    b.add(0, leaf);
                }
                for leaf in a + 1..n {
                    b.add(1, leaf);
                }
                b.build()
            }
            GraphSpec::Wheel(n) => {
                let mut b = Builder::new(n);
                for i in 1..n {
                    b.add(0, i);
                    b.add(i, if i + 1 < n { i + 1 } else { 1 });
                }
                b.build()
            }
            GraphSpec::Fan(n) => {
                let mut b = Builder::new(n);
                for i in 1..n {
                    b.add(0, i);
                    if i + 1 < n {
                        b.add(i, i + 1);
                    }
                }
                b.build()
            }
            GraphSpec::ComplementPath(n) => path(n).complement(),
            GraphSpec::ComplementCycle(n) => GraphSpec::Cycle(n).generate()?.complement(),
            GraphSpec::CompleteMinusMatching(n) => {
                let mut b = Builder::new(2 * n);
                for u in 0..2 * n {
                    for v in u + 1..2 * n {
                        if !(u % 2 == 0 && v == u + 1) {
                            b.add(u, v);
                        }
                    }
                }
                b.build()
            }
            GraphSpec::JoinComplete(m, n) => complete(m).join(&complete(n)),
            GraphSpec::CoronaK3K3(k) => complete(3 * k).corona(&complete(3)),
            GraphSpec::Corona(ref g, ref h) => g.generate()?.corona(&h.generate()?),
            GraphSpec::Join(ref g, ref h) => g.generate()?.join(&h.generate()?),
            GraphSpec::Gnp { n, percent, seed } => gnp(n, percent, seed),
            GraphSpec::RandomTree { n, seed } => random_tree(n, seed),
            GraphSpec::FromFile(ref p) => Graph::parse_edge_list(&std::fs::read_to_string(p)?)?,
        })
    }

    /// Short human label used in reports, e.g. `K_3`, `W_8`, `K_6oK_3`.
    /// Never contains a comma.
    pub fn label(&self) -> String {
        match self {
            GraphSpec::Path(n) => format!("P_{n}"),
            GraphSpec::Cycle(n) => format!("C_{n}"),
            GraphSpec::Complete(n) => format!("K_{n}"),
            GraphSpec::Star(n) => format!("Star_{n}"),
            GraphSpec::DoubleStar(a, b) => format!("S_{a}_{b}"),
            GraphSpec::Wheel(n) => format!("W_{n}"),
            GraphSpec::Fan(n) => format!("F_{n}"),
            GraphSpec::ComplementPath(n) => format!("coP_{n}"),
            GraphSpec::ComplementCycle(n) => format!("coC_{n}"),
            GraphSpec::CompleteMinusMatching(n) => format!("K_{}-M", 2 * n),
            GraphSpec::JoinComplete(m, n) => format!("K_{m}vK_{n}"),
            GraphSpec::CoronaK3K3(k) => format!("K_{}oK_3", 3 * k),
            GraphSpec::Corona(g, h) => format!("{}o{}", g.label(), h.label()),
            GraphSpec::Join(g, h) => format!("({})v({})", g.label(), h.label()),
            GraphSpec::Gnp { n, percent, seed } => format!("G_{n}_{percent}#{seed}"),
            GraphSpec::RandomTree { n, seed } => format!("T_{n}#{seed}"),
            GraphSpec::FromFile(p) => format!("file:{}", p.display()),
        }
    }
}

/// Round-trips through [`FromStr`].
impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.family_name();
        match self {
            GraphSpec::Path(n)
            | GraphSpec::Cycle(n)
            | GraphSpec::Complete(n)
            | GraphSpec::Star(n)
            | GraphSpec::Wheel(n)
            | GraphSpec::Fan(n)
            | GraphSpec::ComplementPath(n)
            | GraphSpec::ComplementCycle(n)
            | GraphSpec::CompleteMinusMatching(n)
            | GraphSpec::CoronaK3K3(n) => write!(f, "{name}({n})"),
            GraphSpec::DoubleStar(a, b) | GraphSpec::JoinComplete(a, b) => {
                write!(f, "{name}({a},{b})")
            }
            GraphSpec::Corona(g, h) | GraphSpec::Join(g, h) => write!(f, "{name}({g},{h})"),
            GraphSpec::Gnp { n, percent, seed } => write!(f, "{name}({n},{percent},{seed})"),
            GraphSpec::RandomTree { n, seed } => write!(f, "{name}({n},{seed})"),
            GraphSpec::FromFile(p) => write!(f, "{name}({})", p.display()),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    /// Accepts `family(args)`, e.g. `wheel(8)`, `join(2,4)`,
    /// `corona(complete(3),cycle(4))`, `tree(10,42)`, `file(g.el)`.
    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::SpecSyntax {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| fail("expected family(args)"))?;
        if !s.ends_with(')') {
            return Err(fail("missing closing parenthesis"));
        }
        let name = s[..open].trim().to_ascii_lowercase();
        let inner = &s[open + 1..s.len() - 1];
        if name == "file" {
            return Ok(GraphSpec::FromFile(PathBuf::from(inner.trim())));
        }
        let args = split_top_level(inner).ok_or_else(|| fail("unbalanced parentheses"))?;
        let nested = args.iter().any(|a| a.contains('('));
        if name == "corona" || (name == "join" && nested) {
            let [g, h] = args.as_slice() else {
                return Err(fail("expected two graph specs"));
            };
            let (g, h) = (g.parse()?, h.parse()?);
            return Ok(if name == "corona" {
                GraphSpec::corona(g, h)
            } else {
                GraphSpec::join(g, h)
            });
        }
        let nums = args
            .iter()
            .map(|a| a.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| fail("arguments must be non-negative integers"))?;
        let one = || match nums.as_slice() {
            [a] => Ok(*a as usize),
            _ => Err(fail("expected one argument")),
        };
        let two = || match nums.as_slice() {
            [a, b] => Ok((*a as usize, *b as usize)),
            _ => Err(fail("expected two arguments")),
        };
        Ok(match name.as_str() {
            "path" | "p" => GraphSpec::Path(one()?),
            "cycle" | "c" => GraphSpec::Cycle(one()?),
            "complete" | "k" => GraphSpec::Complete(one()?),
            "star" => GraphSpec::Star(one()?),
            "wheel" | "w" => GraphSpec::Wheel(one()?),
            "fan" | "f" => GraphSpec::Fan(one()?),
            "cpath" | "complement_path" => GraphSpec::ComplementPath(one()?),
            "ccycle" | "complement_cycle" => GraphSpec::ComplementCycle(one()?),
            "kmm" | "complete_minus_matching" => GraphSpec::CompleteMinusMatching(one()?),
            "corona_k3" => GraphSpec::CoronaK3K3(one()?),
            "double_star" => {
                let (a, b) = two()?;
                GraphSpec::DoubleStar(a, b)
            }
            "join" | "join_complete" => {
                let (a, b) = two()?;
                GraphSpec::JoinComplete(a, b)
            }
            "gnp" => match nums.as_slice() {
                [n, p, seed] => GraphSpec::Gnp {
                    n: *n as usize,
                    percent: u32::try_from(*p).map_err(|_| fail("percent out of range"))?,
                    seed: *seed,
                },
                _ => return Err(fail("gnp takes (n, percent, seed)")),
            },
            "tree" | "random_tree" => {
                let (n, seed) = match nums.as_slice() {
                    [n, seed] => (*n as usize, *seed),
                    _ => return Err(fail("tree takes (n, seed)")),
                };
                GraphSpec::RandomTree { n, seed }
            }
            _ => return Err(fail("unknown family")),
        })
    }
}

fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    out.push(&s[start..]);
    Some(out)
}

fn path_builder(n: usize) -> Builder {
    let mut b = Builder::new(n);
    for i in 1..n {
        b.add(i - 1, i);
    }
    b
}

fn path(n: usize) -> Graph {
    path_builder(n).build()
}

fn complete(n: usize) -> Graph {
    let mut b = Builder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            b.add(u, v);
        }
    }
    b.build()
}

fn gnp(n: usize, percent: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_range(0..100) < percent {
                b.add(u, v);
            }
        }
    }
    b.build()
}

/// Uniform random labeled tree on `n` vertices via Prüfer decoding.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &code)
}

pub(crate) fn prufer_decode(n: usize, code: &[usize]) -> Graph {
    debug_assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut b = Builder::new(n);
    for &c in code {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer sequence always leaves a leaf");
        b.add(leaf, c);
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(u) = leaves.pop().unwrap();
    let Reverse(v) = leaves.pop().unwrap();
    b.add(u, v);
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: GraphSpec) -> Graph {
        s.generate().unwrap()
    }

    #[test]
    fn wheel_four_is_k4() {
        assert_eq!(gen(GraphSpec::Wheel(4)), gen(GraphSpec::Complete(4)));
    }

    #[test]
    fn complete_minus_matching_counts() {
        let g = gen(GraphSpec::CompleteMinusMatching(3));
        assert_eq!(g.order(), 6);
        assert_eq!(g.edge_count(), 12);
        assert!((0..6).all(|v| g.degree(v).unwrap() == 4));
        assert!(!g.has_edge(0, 1) && !g.has_edge(4, 5) && g.has_edge(1, 2));
    }

    #[test]
    fn corona_k3_k3_edge_count() {
        // brute count over all pairs in the block layout: 3 hub edges,
        // 3 copies of K_3 and 9 anchor edges
        let g = gen(GraphSpec::CoronaK3K3(1));
        assert_eq!(g.order(), 12);
        let mut count = 0;
        for u in 0..12 {
            for v in u + 1..12 {
                let block = |x: usize| if x < 3 { None } else { Some((x - 3) / 3) };
                let adjacent = match (block(u), block(v)) {
                    (None, None) => true,
                    (None, Some(b)) => b == u,
                    (Some(a), Some(b)) => a == b,
                    (Some(_), None) => unreachable!(),
                };
                if adjacent {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 21);
        assert_eq!(g.edge_count(), 21);
    }

    #[test]
    fn degrees_per_family() {
        assert_eq!(gen(GraphSpec::Star(9)).max_degree(), 8);
        let w = gen(GraphSpec::Wheel(8));
        assert_eq!(w.degree(0).unwrap(), 7);
        assert!((1..8).all(|v| w.degree(v).unwrap() == 3));
        for n in 1..6 {
            let g = gen(GraphSpec::CompleteMinusMatching(n));
            assert!((0..2 * n).all(|v| g.degree(v).unwrap() == 2 * n - 2));
        }
    }

    #[test]
    fn fan_is_wheel_minus_rim_edge() {
        for n in 4..12 {
            let f = gen(GraphSpec::Fan(n));
            assert_eq!(f, gen(GraphSpec::Wheel(n)).without_edge(1, n - 1));
            assert_eq!(f, gen(GraphSpec::Complete(1)).join(&gen(GraphSpec::Path(n - 1))));
        }
    }

    #[test]
    fn complement_cycle_drops_end_edge() {
        for n in 3..16 {
            let cc = gen(GraphSpec::ComplementCycle(n));
            assert_eq!(cc, gen(GraphSpec::ComplementPath(n)).without_edge(0, n - 1));
        }
    }

    #[test]
    fn double_star_layout() {
        let g = gen(GraphSpec::DoubleStar(3, 4));
        assert_eq!(g.order(), 7);
        assert_eq!(g.degree(0).unwrap(), 3);
        assert_eq!(g.degree(1).unwrap(), 4);
        assert!(g.is_tree());
    }

    #[test]
    fn domain_errors_name_constraint() {
        let e = GraphSpec::Wheel(3).generate().unwrap_err().to_string();
        assert!(e.contains("n >= 4"), "{e}");
        let e = GraphSpec::DoubleStar(1, 3).generate().unwrap_err().to_string();
        assert!(e.contains("a >= 2 and b >= 2"), "{e}");
        assert!(GraphSpec::corona(GraphSpec::Complete(2), GraphSpec::Cycle(2))
            .generate()
            .is_err());
    }

    #[test]
    fn random_trees_are_reproducible_trees() {
        for n in 1..40 {
            for seed in 0..5 {
                let t = random_tree(n, seed);
                assert!(t.is_tree(), "n={n} seed={seed}");
                assert_eq!(t.edge_count(), n - 1);
                assert_eq!(t, random_tree(n, seed));
            }
        }
    }

    #[test]
    fn prufer_known_sequence() {
        // Sequence (3, 3, 3) on 5 vertices decodes to the star centered at 3.
        let t = prufer_decode(5, &[3, 3, 3]);
        assert_eq!(t.degree(3).unwrap(), 4);
    }

    #[test]
    fn spec_text_round_trip() {
        let specs = [
            GraphSpec::Wheel(8),
            GraphSpec::JoinComplete(2, 4),
            GraphSpec::corona(GraphSpec::Path(3), GraphSpec::Cycle(5)),
            GraphSpec::RandomTree { n: 10, seed: 42 },
            GraphSpec::FromFile("g.el".into()),
            GraphSpec::CoronaK3K3(2),
            GraphSpec::join(GraphSpec::Path(2), GraphSpec::Complete(1)),
            GraphSpec::Gnp {
                n: 7,
                percent: 40,
                seed: 3,
            },
        ];
        for s in specs {
            assert_eq!(s.to_string().parse::<GraphSpec>().unwrap(), s);
        }
        assert!("wheel".parse::<GraphSpec>().is_err());
        assert!("wheel(a)".parse::<GraphSpec>().is_err());
        assert!("blob(3)".parse::<GraphSpec>().is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(GraphSpec::Complete(3).label(), "K_3");
        assert_eq!(GraphSpec::CoronaK3K3(1).label(), "K_3oK_3");
        assert_eq!(
            GraphSpec::corona(GraphSpec::Complete(2), GraphSpec::Cycle(4)).label(),
            "K_2oC_4"
        );
    }

    #[test]
    fn general_join_and_gnp() {
        let j = GraphSpec::join(GraphSpec::Path(2), GraphSpec::Complete(1))
            .generate()
            .unwrap();
        assert_eq!(j, GraphSpec::Complete(3).generate().unwrap());
        let a = GraphSpec::Gnp {
            n: 9,
            percent: 50,
            seed: 1,
        }
        .generate()
        .unwrap();
        assert_eq!(
            a,
            GraphSpec::Gnp {
                n: 9,
                percent: 50,
                seed: 1
            }
            .generate()
            .unwrap()
        );
        assert_eq!(
            GraphSpec::Gnp {
                n: 6,
                percent: 0,
                seed: 1
            }
            .generate()
            .unwrap()
            .edge_count(),
            0
        );
        assert_eq!(
            GraphSpec::Gnp {
                n: 6,
                percent: 100,
                seed: 1
            }
            .generate()
            .unwrap()
            .edge_count(),
            15
        );
        assert!(GraphSpec::Gnp {
            n: 6,
            percent: 101,
            seed: 1
        }
        .generate()
        .is_err());
    }
}
