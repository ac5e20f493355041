//! Generators for the graph families used in interconnection-network studies
//! and the compact spec grammar that names them (`"circulant:8:1,7,4"`,
//! `"torus:3x4"`, ...).
//!
//! Circulant generator sets must already be closed under negation modulo the
//! order; asymmetric input is rejected rather than symmetrised.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::MAX_VERTICES;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid family: {0}")]
    Invalid(String),
    #[error("generator set {gens:?} is not closed under negation modulo {m}")]
    NotSymmetric { m: usize, gens: Vec<usize> },
    #[error("family would have {0} vertices, above the {MAX_VERTICES}-vertex cap")]
    TooLarge(usize),
    #[error("spec parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Circulant on `Z_m`; `gens` is sorted and negation-closed after validation.
    Circulant { m: usize, gens: Vec<usize> },
    Petersen,
    Hypercube(usize),
    FoldedCube(usize),
    Hamming { d: usize, q: usize },
    HalvedCube(usize),
    Torus(Vec<usize>),
    Product(Vec<FamilySpec>),
}

impl FamilySpec {
    /// Builds a circulant spec, normalising order and duplicates.
    pub fn circulant(m: usize, gens: impl IntoIterator<Item = usize>) -> Result<Self, FamilyError> {
        let mut gens: Vec<usize> = gens.into_iter().collect();
        gens.sort_unstable();
        gens.dedup();
        let spec = FamilySpec::Circulant { m, gens };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let invalid = |msg: String| Err(FamilyError::Invalid(msg));
        match self {
            FamilySpec::Cycle(n) if *n < 3 => return invalid(format!("cycle needs n >= 3, got {n}")),
            FamilySpec::Complete(0) => return invalid("complete graph needs n >= 1".into()),
            FamilySpec::CompleteBipartite(a, b) if *a == 0 || *b == 0 => {
                return invalid(format!("complete bipartite needs both sides >= 1, got {a},{b}"))
            }
            FamilySpec::Circulant { m, gens } => {
                if *m < 2 {
                    return invalid(format!("circulant order must be >= 2, got {m}"));
                }
                if gens.is_empty() {
                    return invalid("circulant needs at least one generator".into());
                }
                if let Some(g) = gens.iter().find(|&&g| g == 0 || g >= *m) {
                    return invalid(format!("generator {g} outside 1..{}", m - 1));
                }
                if gens.windows(2).any(|w| w[0] >= w[1]) {
                    return invalid(format!("generators {gens:?} are not sorted and distinct"));
                }
                if gens.iter().any(|&g| gens.binary_search(&(m - g)).is_err()) {
                    return Err(FamilyError::NotSymmetric {
                        m: *m,
                        gens: gens.clone(),
                    });
                }
            }
            FamilySpec::Hypercube(k) if *k < 2 => return invalid(format!("hypercube needs k >= 2, got {k}")),
            FamilySpec::FoldedCube(k) if *k < 3 => return invalid(format!("folded cube needs k >= 3, got {k}")),
            FamilySpec::HalvedCube(k) if *k < 3 => return invalid(format!("halved cube needs k >= 3, got {k}")),
            FamilySpec::Hamming { d, q } if *d < 1 || *q < 2 => {
                return invalid(format!("hamming needs d >= 1 and q >= 2, got {d},{q}"))
            }
            FamilySpec::Torus(dims) => {
                if dims.is_empty() {
                    return invalid("torus needs at least one dimension".into());
                }
                if let Some(d) = dims.iter().find(|&&d| d < 3) {
                    return invalid(format!("torus dimensions must be >= 3, got {d}"));
                }
            }
            FamilySpec::Product(parts) => {
                if parts.is_empty() {
                    return invalid("product needs at least one factor".into());
                }
                for p in parts {
                    p.validate()?;
                }
            }
            _ => {}
        }
        let n = self.order();
        if n > MAX_VERTICES {
            return Err(FamilyError::TooLarge(n));
        }
        Ok(())
    }

    /// Vertex count (saturating, so oversized specs are still detectable).
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Cycle(n) | FamilySpec::Complete(n) => *n,
            FamilySpec::CompleteBipartite(a, b) => a + b,
            FamilySpec::Circulant { m, .. } => *m,
            FamilySpec::Petersen => 10,
            FamilySpec::Hypercube(k) => pow2(*k),
            FamilySpec::FoldedCube(k) | FamilySpec::HalvedCube(k) => pow2(k.saturating_sub(1)),
            FamilySpec::Hamming { d, q } => (0..*d).fold(1usize, |acc, _| acc.saturating_mul(*q)),
            FamilySpec::Torus(dims) => dims.iter().fold(1usize, |acc, d| acc.saturating_mul(*d)),
            FamilySpec::Product(parts) => parts.iter().fold(1usize, |acc, p| acc.saturating_mul(p.order())),
        }
    }

    /// Degree every vertex should have, when the family is regular.
    pub fn nominal_degree(&self) -> Option<usize> {
        Some(match self {
            FamilySpec::Cycle(_) => 2,
            FamilySpec::Complete(n) => n - 1,
            FamilySpec::CompleteBipartite(a, b) => {
                if a != b {
                    return None;
                }
                *a
            }
            FamilySpec::Circulant { gens, .. } => gens.len(),
            FamilySpec::Petersen => 3,
            FamilySpec::Hypercube(k) | FamilySpec::FoldedCube(k) => *k,
            FamilySpec::Hamming { d, q } => d * (q - 1),
            FamilySpec::HalvedCube(k) => k * (k - 1) / 2,
            FamilySpec::Torus(dims) => 2 * dims.len(),
            FamilySpec::Product(parts) => {
                let mut sum = 0;
                for p in parts {
                    sum += p.nominal_degree()?;
                }
                sum
            }
        })
    }

    /// Whether the construction is vertex-transitive by design.
    ///
    /// Only a hint: the analyzer decides transitivity from automorphism orbits.
    pub fn vertex_transitive_hint(&self) -> bool {
        match self {
            FamilySpec::CompleteBipartite(a, b) => a == b,
            FamilySpec::Product(parts) => parts.iter().all(FamilySpec::vertex_transitive_hint),
            _ => true,
        }
    }

    pub fn generate(&self) -> Result<Graph, FamilyError> {
        self.validate()?;
        let g = match self {
            FamilySpec::Cycle(n) => Graph::new(*n, (0..*n).map(|i| (i, (i + 1) % n)))?,
            FamilySpec::Complete(n) => {
                Graph::new(*n, (0..*n).flat_map(|i| (i + 1..*n).map(move |j| (i, j))))?
            }
            FamilySpec::CompleteBipartite(a, b) => {
                Graph::new(a + b, (0..*a).flat_map(|i| (0..*b).map(move |j| (i, a + j))))?
            }
            FamilySpec::Circulant { m, gens } => {
                Graph::new(*m, (0..*m).flat_map(|i| gens.iter().map(move |g| (i, (i + g) % m))))?
            }
            FamilySpec::Petersen => {
                // Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
                let subsets: Vec<u8> = (0..5u8)
                    .flat_map(|a| (a + 1..5).map(move |b| (1 << a) | (1 << b)))
                    .collect();
                let mut pairs = Vec::new();
                for i in 0..10 {
                    for j in i + 1..10 {
                        if subsets[i] & subsets[j] == 0 {
                            pairs.push((i, j));
                        }
                    }
                }
                Graph::new(10, pairs)?
            }
            FamilySpec::Hypercube(k) => {
                let n = 1usize << k;
                Graph::new(n, (0..n).flat_map(|x| (0..*k).map(move |b| (x, x ^ (1 << b)))))?
            }
            FamilySpec::FoldedCube(k) => {
                let dim = k - 1;
                let n = 1usize << dim;
                let mask = n - 1;
                let cube = (0..n).flat_map(|x| (0..dim).map(move |b| (x, x ^ (1 << b))));
                let antipodal = (0..n).map(|x| (x, x ^ mask));
                Graph::new(n, cube.chain(antipodal))?
            }
            FamilySpec::Hamming { d, q } => {
                let n = self.order();
                let mut pairs = Vec::new();
                for x in 0..n {
                    let mut place = 1;
                    for _ in 0..*d {
                        let digit = (x / place) % q;
                        for other in digit + 1..*q {
                            pairs.push((x, x + (other - digit) * place));
                        }
                        place *= q;
                    }
                }
                Graph::new(n, pairs)?
            }
            FamilySpec::HalvedCube(k) => {
                let words: Vec<usize> = (0..1usize << k).filter(|x| x.count_ones() % 2 == 0).collect();
                let mut pairs = Vec::new();
                for i in 0..words.len() {
                    for j in i + 1..words.len() {
                        if (words[i] ^ words[j]).count_ones() == 2 {
                            pairs.push((i, j));
                        }
                    }
                }
                Graph::new(words.len(), pairs)?
            }
            FamilySpec::Torus(dims) => product_of(dims.iter().map(|&d| FamilySpec::Cycle(d)))?,
            FamilySpec::Product(parts) => product_of(parts.iter().cloned())?,
        };
        Ok(g)
    }
}

fn pow2(k: usize) -> usize {
    if k >= usize::BITS as usize {
        usize::MAX
    } else {
        1usize << k
    }
}

fn product_of(parts: impl IntoIterator<Item = FamilySpec>) -> Result<Graph, FamilyError> {
    let mut acc: Option<Graph> = None;
    for p in parts {
        let g = p.generate()?;
        acc = Some(match acc {
            None => g,
            Some(a) => a.cartesian_product(&g)?,
        });
    }
    acc.ok_or_else(|| FamilyError::Invalid("empty product".into()))
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(xs: &[usize], sep: &str) -> String {
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
        }
        match self {
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "bipartite:{a},{b}"),
            FamilySpec::Circulant { m, gens } => write!(f, "circulant:{m}:{}", join(gens, ",")),
            FamilySpec::Petersen => write!(f, "petersen"),
            FamilySpec::Hypercube(k) => write!(f, "hypercube:{k}"),
            FamilySpec::FoldedCube(k) => write!(f, "fq:{k}"),
            FamilySpec::Hamming { d, q } => write!(f, "hamming:{d},{q}"),
            FamilySpec::HalvedCube(k) => write!(f, "halfcube:{k}"),
            FamilySpec::Torus(dims) => write!(f, "torus:{}", join(dims, "x")),
            FamilySpec::Product(parts) => {
                write!(f, "product:")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct SpecParser<'a> {
    src: &'a str,
    offset: usize,
}

impl SpecParser<'_> {
    fn err(&self, at: usize, message: impl Into<String>) -> FamilyError {
        FamilyError::Parse {
            position: self.offset + at,
            message: message.into(),
        }
    }

    /// Parses a list of unsigned integers separated by `sep`, starting at byte `at`.
    fn numbers(&self, text: &str, at: usize, sep: char) -> Result<Vec<usize>, FamilyError> {
        let mut out = Vec::new();
        let mut pos = at;
        for tok in text.split(sep) {
            let trimmed = tok.trim();
            let value = trimmed
                .parse::<usize>()
                .map_err(|_| self.err(pos, format!("expected an unsigned integer, found {trimmed:?}")))?;
            out.push(value);
            pos += tok.len() + 1;
        }
        Ok(out)
    }

    fn exactly<const N: usize>(&self, text: &str, at: usize, sep: char) -> Result<[usize; N], FamilyError> {
        let nums = self.numbers(text, at, sep)?;
        nums.try_into()
            .map_err(|v: Vec<usize>| self.err(at, format!("expected {N} value(s), found {}", v.len())))
    }

    fn parse(&self) -> Result<FamilySpec, FamilyError> {
        let src = self.src.trim();
        let lead = self.src.len() - self.src.trim_start().len();
        let (name, rest) = match src.split_once(':') {
            Some((name, rest)) => (name, Some(rest)),
            None => (src, None),
        };
        let arg_at = lead + name.len() + 1;
        let need = || {
            rest.ok_or_else(|| self.err(lead + name.len(), format!("{name:?} needs parameters after ':'")))
        };
        let spec = match name {
            "petersen" => {
                if rest.is_some() {
                    return Err(self.err(arg_at - 1, "petersen takes no parameters"));
                }
                FamilySpec::Petersen
            }
            "cycle" => FamilySpec::Cycle(self.exactly::<1>(need()?, arg_at, ',')?[0]),
            "complete" => FamilySpec::Complete(self.exactly::<1>(need()?, arg_at, ',')?[0]),
            "bipartite" => {
                let [a, b] = self.exactly::<2>(need()?, arg_at, ',')?;
                FamilySpec::CompleteBipartite(a, b)
            }
            "hypercube" => FamilySpec::Hypercube(self.exactly::<1>(need()?, arg_at, ',')?[0]),
            "fq" => FamilySpec::FoldedCube(self.exactly::<1>(need()?, arg_at, ',')?[0]),
            "halfcube" => FamilySpec::HalvedCube(self.exactly::<1>(need()?, arg_at, ',')?[0]),
            "hamming" => {
                let [d, q] = self.exactly::<2>(need()?, arg_at, ',')?;
                FamilySpec::Hamming { d, q }
            }
            "torus" => FamilySpec::Torus(self.numbers(need()?, arg_at, 'x')?),
            "circulant" => {
                let rest = need()?;
                let (m_txt, gens_txt) = rest
                    .split_once(':')
                    .ok_or_else(|| self.err(arg_at, "expected circulant:<order>:<g1>,<g2>,..."))?;
                let [m] = self.exactly::<1>(m_txt, arg_at, ',')?;
                let gens = self.numbers(gens_txt, arg_at + m_txt.len() + 1, ',')?;
                let mut sorted = gens.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != gens.len() {
                    return Err(self.err(arg_at + m_txt.len() + 1, "duplicate generator"));
                }
                FamilySpec::Circulant { m, gens: sorted }
            }
            "product" => {
                let rest = need()?;
                let mut parts = Vec::new();
                let mut at = arg_at;
                for piece in rest.split('*') {
                    let sub = SpecParser {
                        src: piece,
                        offset: self.offset + at,
                    };
                    parts.push(sub.parse()?);
                    at += piece.len() + 1;
                }
                FamilySpec::Product(parts)
            }
            other => return Err(self.err(lead, format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpecParser { src: s, offset: 0 }.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn folded_three_cube_is_k4() {
        let g = gen("fq:3");
        assert_eq!((g.n(), g.m()), (4, 6));
        assert!(g.is_complete());
    }

    #[test]
    fn hamming_one_four_is_k4() {
        let g = gen("hamming:1,4");
        assert!(g.is_complete() && g.n() == 4);
    }

    #[test]
    fn halved_three_cube_is_k4() {
        // even-weight words 000, 011, 101, 110 are pairwise at distance two
        let g = gen("halfcube:3");
        assert!(g.is_complete() && g.n() == 4);
    }

    #[test]
    fn circulant_prism_expansion() {
        let g = gen("circulant:6:2,4,3");
        let expected = Graph::new(
            6,
            [(0, 2), (2, 4), (4, 0), (1, 3), (3, 5), (5, 1), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn petersen_is_cubic_on_ten() {
        let g = gen("petersen");
        assert_eq!((g.n(), g.m(), g.regular_degree()), (10, 15, Some(3)));
    }

    #[test]
    fn nominal_degrees_match() {
        for s in [
            "cycle:8",
            "complete:6",
            "bipartite:3,3",
            "circulant:10:1,9,4,6",
            "petersen",
            "hypercube:4",
            "fq:5",
            "hamming:2,4",
            "hamming:3,2",
            "halfcube:4",
            "torus:3x4",
            "product:cycle:3*complete:2",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            let g = spec.generate().unwrap();
            assert_eq!(g.n(), spec.order(), "{s}");
            assert_eq!(g.regular_degree(), spec.nominal_degree(), "{s}");
            assert!(g.is_connected(), "{s}");
        }
    }

    #[test]
    fn grammar_round_trips() {
        for s in ["cycle:6", "circulant:8:1,4,7", "petersen", "fq:4", "hamming:2,4", "halfcube:4", "hypercube:3", "torus:3x4"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec);
        }
    }

    #[test]
    fn asymmetric_generators_rejected() {
        let err = "circulant:8:1,4".parse::<FamilySpec>().unwrap_err();
        assert!(matches!(err, FamilyError::NotSymmetric { m: 8, .. }), "{err}");
    }

    #[test]
    fn parse_errors_carry_position() {
        match "hamming:2,x".parse::<FamilySpec>().unwrap_err() {
            FamilyError::Parse { position, .. } => assert_eq!(position, 10),
            e => panic!("unexpected {e}"),
        }
        match "torus:3x2".parse::<FamilySpec>().unwrap_err() {
            FamilyError::Invalid(_) => {}
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(
            "cube:3".parse::<FamilySpec>().unwrap_err(),
            FamilyError::Parse { position: 0, .. }
        ));
    }

    #[test]
    fn oversized_specs_rejected() {
        assert!(matches!(
            FamilySpec::Hypercube(10).generate().unwrap_err(),
            FamilyError::TooLarge(1024)
        ));
    }
}
