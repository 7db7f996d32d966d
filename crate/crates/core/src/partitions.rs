//! Information elements represented as partitions of a finite sample space.
//!
//! A [`Partition`] is stored as a restricted growth string: point `i` carries
//! the index of its block, and blocks are numbered in order of their minimum
//! element. That form is unique, so structural equality is partition equality.
//!
//! Two lattice operations are provided under names that do not depend on a
//! symbol convention:
//!
//! * [`common_refinement`] is the joint information element (information join).
//! * [`finest_common_coarsening`] is the common information element
//!   (information meet), computed by transitive closure over both inputs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dsu::UnionFind;
use crate::error::{Error, Result};

/// Logarithm base used when reporting entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    /// Converts a value in nats to this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Natural => nats,
            LogBase::Two => nats / std::f64::consts::LN_2,
        }
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" | "natural" | "nat" | "nats" => Ok(LogBase::Natural),
            "2" | "bits" => Ok(LogBase::Two),
            other => Err(Error::Invalid(format!("unknown log base `{other}`"))),
        }
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Invalid(format!("not a rational number: `{text}`"));
    let r = match t.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            BigRational::new(num, den)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
    };
    Ok(r)
}

/// Finite sample space with exact rational point probabilities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProbabilitySpace {
    probs: Vec<BigRational>,
}

impl ProbabilitySpace {
    /// Every probability must be strictly positive and they must sum to one.
    pub fn new(probs: Vec<BigRational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidSpace("sample space is empty".into()));
        }
        if let Some((i, p)) = probs.iter().enumerate().find(|(_, p)| !p.is_positive()) {
            return Err(Error::InvalidSpace(format!(
                "point {} has non-positive probability {p}",
                i + 1
            )));
        }
        let total: BigRational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidSpace(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(ProbabilitySpace { probs })
    }

    pub fn uniform(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidSpace("sample space is empty".into()));
        }
        let p = BigRational::new(BigInt::one(), BigInt::from(size));
        Ok(ProbabilitySpace {
            probs: vec![p; size],
        })
    }

    pub fn from_strs<S: AsRef<str>>(probs: &[S]) -> Result<Self> {
        let parsed = probs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn size(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    /// Probability of a set of points given by 0-based indices.
    pub fn mass(&self, points: impl IntoIterator<Item = usize>) -> BigRational {
        points.into_iter().map(|i| &self.probs[i]).sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.probs.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    size: usize,
    probs: Vec<String>,
}

impl Serialize for ProbabilitySpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpaceRepr {
            size: self.size(),
            probs: self.probs.iter().map(|p| p.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProbabilitySpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SpaceRepr::deserialize(d)?;
        if repr.size != repr.probs.len() {
            return Err(serde::de::Error::custom(format!(
                "size {} does not match {} probabilities",
                repr.size,
                repr.probs.len()
            )));
        }
        ProbabilitySpace::from_strs(&repr.probs).map_err(serde::de::Error::custom)
    }
}

/// A set partition of `{1..n}` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    // labels[i] = block of point i+1; blocks numbered by minimum element
    labels: Vec<u32>,
}

impl Partition {
    /// Builds the canonical partition whose blocks are the classes of equal labels.
    pub fn from_labels<T: Hash + Eq>(labels: &[T]) -> Self {
        let mut seen: HashMap<&T, u32> = HashMap::with_capacity(labels.len());
        let canon = labels
            .iter()
            .map(|l| {
                let next = seen.len() as u32;
                *seen.entry(l).or_insert(next)
            })
            .collect();
        Partition { labels: canon }
    }

    /// Builds a partition from explicit 1-based blocks, validating coverage.
    pub fn from_blocks(ground_size: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if ground_size == 0 {
            return Err(Error::InvalidPartition(
                "ground size must be positive".into(),
            ));
        }
        let mut owner = vec![usize::MAX; ground_size];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", b + 1)));
            }
            for &e in block {
                if e == 0 || e > ground_size {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} outside 1..={ground_size}"
                    )));
                }
                if owner[e - 1] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {e} is repeated")));
                }
                owner[e - 1] = b;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element {} is missing",
                i + 1
            )));
        }
        Ok(Self::from_labels(&owner))
    }

    /// Parses `"1,2|3|4"` notation over the ground set `{1..ground_size}`.
    pub fn parse(text: &str, ground_size: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for raw in text.split('|') {
            let mut block = Vec::new();
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                return Err(Error::parse(offset, "empty block"));
            }
            let mut pos = offset;
            for item in raw.split(',') {
                let tok = item.trim();
                let value: usize = tok.parse().map_err(|_| {
                    Error::parse(pos, format!("expected an element, found `{tok}`"))
                })?;
                if value == 0 || value > ground_size {
                    return Err(Error::parse(
                        pos,
                        format!("element {value} outside 1..={ground_size}"),
                    ));
                }
                block.push(value);
                pos += item.len() + 1;
            }
            blocks.push(block);
            offset += raw.len() + 1;
        }
        Self::from_blocks(ground_size, &blocks)
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            labels: (0..n as u32).collect(),
        }
    }

    /// The one-block partition.
    pub fn indiscrete(n: usize) -> Self {
        Partition { labels: vec![0; n] }
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Canonical block labels of the points (0-based points and blocks).
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Blocks as sorted lists of 1-based elements, ordered by minimum element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(i + 1);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    pub fn is_discrete(&self) -> bool {
        self.num_blocks() == self.ground_size()
    }

    pub fn refines(&self, other: &Partition) -> Result<bool> {
        refines(self, other)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                f.write_str("|")?;
            }
            for (k, e) in block.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionRepr {
            ground_size: self.ground_size(),
            blocks: self.blocks(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PartitionRepr::deserialize(d)?;
        Partition::from_blocks(repr.ground_size, &repr.blocks).map_err(serde::de::Error::custom)
    }
}

/// Every partition of `{1..n}`, in lexicographic order of their label strings.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut labels = vec![0u32; n];
    let mut max_prefix = vec![0u32; n];
    loop {
        out.push(Partition {
            labels: labels.clone(),
        });
        // advance the restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if labels[i] <= max_prefix[i - 1] {
                labels[i] += 1;
                break;
            }
            i -= 1;
        }
        max_prefix[i] = max_prefix[i - 1].max(labels[i]);
        for j in i + 1..n {
            labels[j] = 0;
            max_prefix[j] = max_prefix[i];
        }
    }
}

fn check_ground(p: &Partition, q: &Partition) -> Result<()> {
    if p.ground_size() != q.ground_size() {
        return Err(Error::GroundSizeMismatch {
            left: p.ground_size(),
            right: q.ground_size(),
        });
    }
    Ok(())
}

/// True iff every block of `p` lies inside a block of `q`.
pub fn refines(p: &Partition, q: &Partition) -> Result<bool> {
    check_ground(p, q)?;
    let mut target = vec![u32::MAX; p.num_blocks()];
    for (&lp, &lq) in p.labels.iter().zip(&q.labels) {
        let t = &mut target[lp as usize];
        if *t == u32::MAX {
            *t = lq;
        } else if *t != lq {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Blocks are the nonempty pairwise intersections of blocks of `p` and `q`.
pub fn common_refinement(p: &Partition, q: &Partition) -> Result<Partition> {
    check_ground(p, q)?;
    let pairs: Vec<(u32, u32)> = p
        .labels
        .iter()
        .copied()
        .zip(q.labels.iter().copied())
        .collect();
    Ok(Partition::from_labels(&pairs))
}

/// Merges points that share a block in either input (transitive closure).
pub fn finest_common_coarsening(p: &Partition, q: &Partition) -> Result<Partition> {
    check_ground(p, q)?;
    let n = p.ground_size();
    let mut uf = UnionFind::new(n);
    for part in [p, q] {
        let mut first = vec![usize::MAX; part.num_blocks()];
        for (i, &l) in part.labels.iter().enumerate() {
            let f = &mut first[l as usize];
            if *f == usize::MAX {
                *f = i;
            } else {
                uf.union(*f, i);
            }
        }
    }
    Ok(Partition::from_labels(&uf.roots()))
}

/// A partition paired with the probability space it lives on.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoElement {
    partition: Partition,
    space: Arc<ProbabilitySpace>,
}

impl InfoElement {
    pub fn new(partition: Partition, space: Arc<ProbabilitySpace>) -> Result<Self> {
        if partition.ground_size() != space.size() {
            return Err(Error::GroundSizeMismatch {
                left: partition.ground_size(),
                right: space.size(),
            });
        }
        Ok(InfoElement { partition, space })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn space(&self) -> &Arc<ProbabilitySpace> {
        &self.space
    }

    pub fn entropy(&self, base: LogBase) -> f64 {
        base.from_nats(entropy_nats(&self.partition, &self.space))
    }

    /// Rebinds a partition to this element's space.
    pub fn with_partition(&self, partition: Partition) -> Result<Self> {
        InfoElement::new(partition, self.space.clone())
    }
}

/// Exact probability of each block, in canonical block order.
pub fn block_masses(p: &Partition, space: &ProbabilitySpace) -> Vec<BigRational> {
    let mut masses = vec![BigRational::zero(); p.num_blocks()];
    for (i, &l) in p.labels.iter().enumerate() {
        masses[l as usize] += &space.probs[i];
    }
    masses
}

fn entropy_nats(p: &Partition, space: &ProbabilitySpace) -> f64 {
    if space.is_uniform() {
        // uniform spaces: work from block sizes, which keeps large dilated spaces cheap
        let n = p.ground_size() as f64;
        return p
            .block_sizes()
            .into_iter()
            .map(|s| {
                let pr = s as f64 / n;
                -pr * pr.ln()
            })
            .sum::<f64>()
            .max(0.0);
    }
    block_masses(p, space)
        .into_iter()
        .map(|m| {
            let pr = m.to_f64().unwrap_or(0.0);
            -pr * pr.ln()
        })
        .sum::<f64>()
        .max(0.0)
}

/// Shannon entropy of the block distribution of `p` under `space`.
pub fn entropy(p: &Partition, space: &ProbabilitySpace, base: LogBase) -> Result<f64> {
    if p.ground_size() != space.size() {
        return Err(Error::GroundSizeMismatch {
            left: p.ground_size(),
            right: space.size(),
        });
    }
    Ok(base.from_nats(entropy_nats(p, space)))
}

/// `H(q | p) = H(p ∨ q) - H(p)`, where `∨` is the common refinement.
pub fn conditional_entropy(
    q: &Partition,
    p: &Partition,
    space: &ProbabilitySpace,
    base: LogBase,
) -> Result<f64> {
    let joint = common_refinement(p, q)?;
    let h = entropy(&joint, space, base)? - entropy(p, space, base)?;
    Ok(h.max(0.0))
}

pub fn mutual_information(
    p: &Partition,
    q: &Partition,
    space: &ProbabilitySpace,
    base: LogBase,
) -> Result<f64> {
    let joint = common_refinement(p, q)?;
    let i = entropy(p, space, base)? + entropy(q, space, base)? - entropy(&joint, space, base)?;
    Ok(i.max(0.0))
}

/// Partition of sample points into preimages of equal labels.
pub fn rv_to_partition<T: Hash + Eq>(labels: &[T]) -> Result<Partition> {
    if labels.is_empty() {
        return Err(Error::Invalid(
            "random variable has no sample points".into(),
        ));
    }
    Ok(Partition::from_labels(labels))
}

/// Label bijection `f` with `labels2 = f ∘ labels1`, if the two variables
/// induce the same partition.
pub fn equivalence_witness<A, B>(labels1: &[A], labels2: &[B]) -> Result<Option<BTreeMap<A, B>>>
where
    A: Hash + Eq + Ord + Clone,
    B: Hash + Eq + Clone,
{
    if labels1.len() != labels2.len() {
        return Err(Error::LengthMismatch {
            left: labels1.len(),
            right: labels2.len(),
        });
    }
    if Partition::from_labels(labels1) != Partition::from_labels(labels2) {
        return Ok(None);
    }
    let map = labels1
        .iter()
        .cloned()
        .zip(labels2.iter().cloned())
        .collect::<BTreeMap<_, _>>();
    Ok(Some(map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Partition {
        Partition::parse(text, n).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("1,2|3|4", 4).blocks(), vec![vec![1, 2], vec![3], vec![4]]);
        assert_eq!(p("1,2,3,4", 4).num_blocks(), 1);
        assert!(p("1|2|3|4", 4).is_discrete());
        // canonicalization is independent of input order
        assert_eq!(p("4|3,1|2", 4).to_string(), "1,3|2|4");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Partition::parse("1,2|2|3,4", 4),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::parse("1,2|3", 4),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::parse("1,2|3|5", 4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Partition::parse("1,2||3,4", 4),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Partition::parse("1,x|2,3,4", 4),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn refinement_examples() {
        let d = Partition::discrete(4);
        assert!(refines(&d, &p("1,4|2,3", 4)).unwrap());
        assert!(refines(&p("1,2|3|4", 4), &p("1,2,4|3", 4)).unwrap());
        assert!(!refines(&p("1,2|3|4", 4), &p("1,4|2|3", 4)).unwrap());
        assert!(refines(&d, &Partition::discrete(5)).is_err());
    }

    #[test]
    fn join_meet_examples() {
        let a = p("1,2|3|4", 4);
        assert_eq!(common_refinement(&a, &a).unwrap(), a);
        assert_eq!(
            common_refinement(&p("1,2,4|3", 4), &p("2,3,4|1", 4)).unwrap(),
            p("2,4|1|3", 4)
        );
        assert_eq!(
            common_refinement(&a, &p("1,4|2|3", 4)).unwrap(),
            Partition::discrete(4)
        );
        assert_eq!(
            finest_common_coarsening(&a, &p("1,4|2|3", 4)).unwrap(),
            p("1,2,4|3", 4)
        );
        assert_eq!(
            finest_common_coarsening(&p("2,3|1|4", 4), &p("3,4|1|2", 4)).unwrap(),
            p("2,3,4|1", 4)
        );
        assert_eq!(
            finest_common_coarsening(&a, &Partition::discrete(4)).unwrap(),
            a
        );
        assert!(finest_common_coarsening(&a, &Partition::discrete(3)).is_err());
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn entropy_examples() {
        let u4 = ProbabilitySpace::uniform(4).unwrap();
        let half = p("1,2|3,4", 4);
        assert_eq!(
            entropy(&Partition::indiscrete(4), &u4, LogBase::Two).unwrap(),
            0.0
        );
        assert!((entropy(&half, &u4, LogBase::Two).unwrap() - 1.0).abs() < 1e-12);
        assert!((entropy(&half, &u4, LogBase::Natural).unwrap() - 0.693147).abs() < 1e-6);

        let skew = ProbabilitySpace::from_strs(&["1/2", "1/4", "1/8", "1/8"]).unwrap();
        assert_eq!(
            entropy(&Partition::indiscrete(4), &skew, LogBase::Two).unwrap(),
            0.0
        );
        assert!(
            (entropy(&Partition::discrete(4), &skew, LogBase::Two).unwrap() - 1.75).abs() < 1e-12
        );
    }

    #[test]
    fn conditional_and_mutual() {
        let u4 = ProbabilitySpace::uniform(4).unwrap();
        let a = p("1,2|3,4", 4);
        let b = p("1,3|2,4", 4);
        let fine = p("1|2|3,4", 4);
        assert_eq!(
            conditional_entropy(&a, &fine, &u4, LogBase::Two).unwrap(),
            0.0
        );
        assert_eq!(conditional_entropy(&a, &a, &u4, LogBase::Two).unwrap(), 0.0);
        assert!((conditional_entropy(&b, &a, &u4, LogBase::Two).unwrap() - 1.0).abs() < 1e-12);
        assert!((mutual_information(&a, &a, &u4, LogBase::Two).unwrap() - 1.0).abs() < 1e-12);
        assert!(mutual_information(&a, &b, &u4, LogBase::Two).unwrap().abs() < 1e-12);
        assert_eq!(
            mutual_information(&a, &Partition::indiscrete(4), &u4, LogBase::Two).unwrap(),
            0.0
        );
    }

    #[test]
    fn random_variables() {
        assert_eq!(rv_to_partition(&[0, 0, 1, 1]).unwrap(), p("1,2|3,4", 4));
        assert!(rv_to_partition(&['a', 'b', 'c', 'd'])
            .unwrap()
            .is_discrete());
        assert_eq!(rv_to_partition(&[0, 0, 0, 0]).unwrap().num_blocks(), 1);
        assert!(rv_to_partition::<u8>(&[]).is_err());

        let w = equivalence_witness(&[0, 0, 1, 1], &[5, 5, 7, 7])
            .unwrap()
            .unwrap();
        assert_eq!(w, BTreeMap::from([(0, 5), (1, 7)]));
        assert!(equivalence_witness(&[0, 0, 1, 1], &[0, 1, 0, 1])
            .unwrap()
            .is_none());
        let id = equivalence_witness(&[0, 0, 1, 1], &[0, 0, 1, 1])
            .unwrap()
            .unwrap();
        assert!(id.iter().all(|(a, b)| a == b));
        assert!(equivalence_witness(&[0, 1], &[0]).is_err());
    }

    #[test]
    fn space_validation() {
        assert!(ProbabilitySpace::from_strs(&["1/2", "1/2"]).is_ok());
        assert!(ProbabilitySpace::from_strs(&["1/2", "1/3"]).is_err());
        assert!(ProbabilitySpace::from_strs(&["1", "0"]).is_err());
        assert!(ProbabilitySpace::from_strs(&["0.5", "0.5"]).is_err());
        assert!(ProbabilitySpace::new(vec![]).is_err());
    }

    #[test]
    fn json_forms() {
        let a = p("1,2|3|4", 4);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"ground_size":4,"blocks":[[1,2],[3],[4]]}"#);
        assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), a);

        let s = ProbabilitySpace::from_strs(&["1/2", "1/4", "1/4"]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"size":3,"probs":["1/2","1/4","1/4"]}"#);
        assert_eq!(serde_json::from_str::<ProbabilitySpace>(&json).unwrap(), s);
        assert!(
            serde_json::from_str::<ProbabilitySpace>(r#"{"size":2,"probs":["1/2","1/4"]}"#)
                .is_err()
        );
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
    }
}
