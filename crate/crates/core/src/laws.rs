//! Linear information laws over lattice terms.
//!
//! A law is `Σ c_k·H(E_k) + c ⋈ 0` with rational coefficients, lattice terms
//! `E_k` and `⋈ ∈ {≥, ≤, =}`. It can be evaluated on partitions (entropies in
//! nats, `v` = common refinement, `^` = finest common coarsening) or on
//! subgroups (normalized log-indices, `v` = intersection, `^` = generated
//! subgroup).
//!
//! Syntax: `3*H(1v3) + H(2^4) - 1/2 H(1) >= H(2) + 1`. The `*` is optional.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approximation::{dilate, log_index_of_partition};
use crate::error::{Error, Result};
use crate::instance::{GroupInstance, Instance, PartitionInstance};
use crate::lattice::{evaluate_term, Convention, LatticeTerm, TermParser};
use crate::partitions::{
    entropy, parse_rational, InfoElement, LogBase, Partition, ProbabilitySpace,
};
use crate::perm_groups::{
    coset_partition, generated_join, intersection, normalized_log_index, PermGroup, Permutation,
    DEFAULT_GROUP_CAP,
};

/// Tolerance for `=` laws.
pub const EQ_TOLERANCE: f64 = 1e-9;
/// Slack for `≥`/`≤` laws.
pub const INEQ_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    /// How far `value ⋈ 0` is from holding; positive means violated.
    pub fn violation(self, value: f64) -> f64 {
        match self {
            Relation::Ge => -value,
            Relation::Le => value,
            Relation::Eq => value.abs(),
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Relation::Eq => EQ_TOLERANCE,
            _ => INEQ_SLACK,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawTerm {
    pub coef: BigRational,
    pub term: LatticeTerm,
}

/// `Σ coef·H(term) + constant  relation  0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawExpression {
    pub n_vars: usize,
    pub terms: Vec<LawTerm>,
    pub constant: BigRational,
    pub relation: Relation,
}

impl LawExpression {
    pub fn parse(text: &str) -> Result<Self> {
        parse_law(text)
    }

    fn coefficients(&self) -> Vec<f64> {
        self.terms
            .iter()
            .map(|t| t.coef.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    fn combine(&self, values: Vec<f64>) -> EvalResult {
        let value = self
            .coefficients()
            .iter()
            .zip(&values)
            .map(|(c, v)| c * v)
            .sum::<f64>()
            + self.constant.to_f64().unwrap_or(f64::NAN);
        let margin = self.relation.violation(value);
        EvalResult {
            lhs_value: value,
            satisfied: margin <= self.relation.tolerance(),
            margin,
            witness_values: values,
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for LawExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.terms {
            let neg = t.coef.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            let mag = t.coef.abs();
            if !mag.is_one() {
                write_rational(f, &mag)?;
                f.write_str("*")?;
            }
            write!(f, "H({})", t.term)?;
            first = false;
        }
        if !self.constant.is_zero() || first {
            let neg = self.constant.is_negative();
            if !first {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            write_rational(f, &self.constant.abs())?;
        }
        write!(f, " {} 0", self.relation)
    }
}

impl FromStr for LawExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_law(s)
    }
}

#[derive(Serialize, Deserialize)]
struct LawTermRepr {
    coef: String,
    term: String,
}

#[derive(Serialize, Deserialize)]
struct LawRepr {
    n_vars: usize,
    relation: Relation,
    terms: Vec<LawTermRepr>,
    constant: String,
}

impl Serialize for LawExpression {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LawRepr {
            n_vars: self.n_vars,
            relation: self.relation,
            terms: self
                .terms
                .iter()
                .map(|t| LawTermRepr {
                    coef: t.coef.to_string(),
                    term: t.term.to_string(),
                })
                .collect(),
            constant: self.constant.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LawExpression {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = LawRepr::deserialize(d)?;
        let terms = repr
            .terms
            .iter()
            .map(|t| {
                Ok(LawTerm {
                    coef: parse_rational(&t.coef)?,
                    term: t.term.parse()?,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let max = terms
            .iter()
            .map(|t| t.term.max_literal())
            .max()
            .unwrap_or(0);
        if max > repr.n_vars {
            return Err(D::Error::custom(format!(
                "literal {max} exceeds n_vars {}",
                repr.n_vars
            )));
        }
        if terms.is_empty() {
            return Err(D::Error::custom("a law needs at least one term"));
        }
        Ok(LawExpression {
            n_vars: repr.n_vars,
            terms,
            constant: parse_rational(&repr.constant).map_err(D::Error::custom)?,
            relation: repr.relation,
        })
    }
}

struct LawParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> LawParser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn relation(&mut self) -> Option<Relation> {
        for (tok, rel) in [
            (">=", Relation::Ge),
            ("≥", Relation::Ge),
            ("<=", Relation::Le),
            ("≤", Relation::Le),
            ("==", Relation::Eq),
            ("=", Relation::Eq),
        ] {
            if self.eat_str(tok) {
                return Some(rel);
            }
        }
        None
    }

    fn rational(&mut self) -> Option<BigRational> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while matches!(p.peek(), Some(c) if c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos > s
        };
        if !digits(self) {
            return None;
        }
        let num: BigInt = self.src[start..self.pos].parse().ok()?;
        let save = self.pos;
        if self.eat_str("/") {
            self.skip_ws();
            let ds = self.pos;
            if digits(self) {
                let den: BigInt = self.src[ds..self.pos].parse().ok()?;
                if !den.is_zero() {
                    return Some(BigRational::new(num, den));
                }
            }
            self.pos = save;
        }
        Some(BigRational::from_integer(num))
    }

    /// Parses one side into (terms, constant).
    fn side(&mut self) -> Result<(Vec<LawTerm>, BigRational)> {
        let mut terms = Vec::new();
        let mut constant = BigRational::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = BigRational::one();
            if self.eat_str("+") {
            } else if self.eat_str("-") {
                sign = -sign;
            } else if !first {
                break;
            }
            first = false;
            self.skip_ws();
            let item_pos = self.pos;
            let coef = self.rational();
            let had_star = coef.is_some() && self.eat_str("*");
            self.skip_ws();
            if self.eat_str("H") {
                if !self.eat_str("(") {
                    return Err(Error::parse(self.pos, "expected `(` after `H`"));
                }
                let mut tp = TermParser::at(self.src, self.pos);
                let term = tp.term()?;
                self.pos = tp.pos();
                if !self.eat_str(")") {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                terms.push(LawTerm {
                    coef: sign * coef.unwrap_or_else(BigRational::one),
                    term,
                });
            } else if had_star {
                return Err(Error::parse(self.pos, "expected `H(` after `*`"));
            } else if let Some(c) = coef {
                constant += sign * c;
            } else {
                return Err(Error::parse(
                    item_pos,
                    "expected a term `H(...)` or a number",
                ));
            }
        }
        Ok((terms, constant))
    }
}

/// Parses `expr rel expr` and moves everything to the left-hand side.
pub fn parse_law(text: &str) -> Result<LawExpression> {
    let mut p = LawParser { src: text, pos: 0 };
    let (mut terms, mut constant) = p.side()?;
    let relation = p
        .relation()
        .ok_or_else(|| Error::parse(p.pos, "expected `>=`, `<=` or `=`"))?;
    let (rhs_terms, rhs_const) = p.side()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(Error::parse(
            p.pos,
            format!("unexpected `{}`", &text[p.pos..]),
        ));
    }
    terms.extend(rhs_terms.into_iter().map(|t| LawTerm {
        coef: -t.coef,
        term: t.term,
    }));
    constant -= rhs_const;
    if terms.is_empty() {
        return Err(Error::parse(0, "a law needs at least one `H(...)` term"));
    }
    let n_vars = terms
        .iter()
        .map(|t| t.term.max_literal())
        .max()
        .unwrap_or(0);
    Ok(LawExpression {
        n_vars,
        terms,
        constant,
        relation,
    })
}

/// Names accepted by [`builtin_law`].
pub const BUILTIN_LAWS: [&str; 8] = [
    "nonneg",
    "joint-monotone",
    "joint-submodular",
    "zhang-yeung",
    "gk-bound",
    "common-monotone",
    "common-submodular",
    "common-supermodular",
];

pub fn builtin_law_text(name: &str) -> Result<&'static str> {
    Ok(match name {
        "nonneg" => "H(1) >= 0",
        "joint-monotone" => "H(1v2) >= H(1)",
        "joint-submodular" => "H(1v2) + H(2v3) - H(1v2v3) - H(2) >= 0",
        "zhang-yeung" => {
            "3H(1v3) + 3H(1v4) + H(2v3) + H(2v4) + 3H(3v4) \
             >= H(1) + 2H(3) + 2H(4) + H(1v2) + 4H(1v3v4) + H(2v3v4)"
        }
        "gk-bound" => "H(1^2) <= H(1) + H(2) - H(1v2)",
        "common-monotone" => "H(1^2) >= H(1^2^3)",
        "common-submodular" => "H(1^2) + H(2^3) >= H(1^2^3) + H(2)",
        "common-supermodular" => "H(1^2) + H(2^3) <= H(1^2^3) + H(2)",
        other => return Err(Error::UnknownLaw(other.to_string())),
    })
}

pub fn builtin_law(name: &str) -> Result<LawExpression> {
    parse_law(builtin_law_text(name)?)
}

/// Result of evaluating a law on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    /// Value of the left-hand side after moving everything left.
    pub lhs_value: f64,
    pub satisfied: bool,
    /// Amount of violation; positive when the law fails.
    pub margin: f64,
    /// Entropy or log-index of each term, in order.
    pub witness_values: Vec<f64>,
}

fn check_count(law: &LawExpression, got: usize) -> Result<()> {
    if got != law.n_vars {
        return Err(Error::LengthMismatch {
            left: law.n_vars,
            right: got,
        });
    }
    Ok(())
}

/// Evaluates on partitions with entropies in nats.
pub fn eval_on_partitions(law: &LawExpression, generators: &[InfoElement]) -> Result<EvalResult> {
    check_count(law, generators.len())?;
    let space = generators[0].space();
    let parts: Vec<Partition> = generators.iter().map(|g| g.partition().clone()).collect();
    eval_partitions_raw(law, &parts, space)
}

fn eval_partitions_raw(
    law: &LawExpression,
    parts: &[Partition],
    space: &ProbabilitySpace,
) -> Result<EvalResult> {
    let c = Convention::Info;
    let values = law
        .terms
        .iter()
        .map(|t| {
            let p = evaluate_term(&t.term, parts, &mut |a, b| c.join(a, b), &mut |a, b| {
                c.meet(a, b)
            })?;
            entropy(&p, space, LogBase::Natural)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(law.combine(values))
}

/// Evaluates on subgroups with degree-normalized log-indices.
pub fn eval_on_subgroups(
    law: &LawExpression,
    generators: &[PermGroup],
    ambient_order: u128,
    degree: usize,
    group_cap: usize,
) -> Result<EvalResult> {
    check_count(law, generators.len())?;
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: g.degree(),
        });
    }
    let values = law
        .terms
        .iter()
        .map(|t| {
            let g = evaluate_term(
                &t.term,
                generators,
                &mut |a, b| intersection(a, b, group_cap),
                &mut |a, b| generated_join(&[a, b]),
            )?;
            normalized_log_index(ambient_order, g.order(group_cap)?, degree)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(law.combine(values))
}

/// Evaluates with each term replaced by the normalized log-index of its
/// stabilizer on the space dilated with amplification `k`.
pub fn eval_on_dilated(
    law: &LawExpression,
    generators: &[InfoElement],
    k: usize,
) -> Result<EvalResult> {
    check_count(law, generators.len())?;
    let parts: Vec<Partition> = generators.iter().map(|g| g.partition().clone()).collect();
    let (_, dilated) = dilate(generators[0].space(), &parts, k)?;
    let c = Convention::Info;
    let values = law
        .terms
        .iter()
        .map(|t| {
            let p = evaluate_term(&t.term, &dilated, &mut |a, b| c.join(a, b), &mut |a, b| {
                c.meet(a, b)
            })?;
            Ok(log_index_of_partition(&p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(law.combine(values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Partitions,
    Subgroups,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "partitions" | "partition" => Ok(Side::Partitions),
            "subgroups" | "subgroup" | "groups" => Ok(Side::Subgroups),
            other => Err(Error::Invalid(format!("unknown side `{other}`"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Partitions => "partitions",
            Side::Subgroups => "subgroups",
        })
    }
}

/// Search ranges for random instances.
#[derive(Debug, Clone)]
pub struct FalsifyConfig {
    pub min_ground: usize,
    pub max_ground: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub max_generators: usize,
    pub group_cap: usize,
}

impl Default for FalsifyConfig {
    fn default() -> Self {
        FalsifyConfig {
            min_ground: 3,
            max_ground: 8,
            min_degree: 3,
            max_degree: 6,
            max_generators: 3,
            group_cap: DEFAULT_GROUP_CAP,
        }
    }
}

/// A replayable law violation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub side: Side,
    pub law: String,
    pub seed: u64,
    pub index: u64,
    pub margin: f64,
    /// `nats` on the partition side, `nats/degree` on the subgroup side.
    pub units: String,
    pub instance: serde_json::Value,
}

/// Per-instance generator, independent of how instances are scheduled.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Partition {
    let k = rng.random_range(1..=n);
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    Partition::from_labels(&labels)
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).expect("shuffle is a bijection")
}

/// Random uniform-space partition instance with `n_vars` elements.
pub fn random_partition_instance<R: Rng>(
    rng: &mut R,
    n_vars: usize,
    cfg: &FalsifyConfig,
) -> PartitionInstance {
    let n = rng.random_range(cfg.min_ground..=cfg.max_ground);
    let space = Arc::new(ProbabilitySpace::uniform(n).expect("n >= 1"));
    let elements = (0..n_vars).map(|_| random_partition(rng, n)).collect();
    PartitionInstance { space, elements }
}

/// Random subgroups of `S_d`, each generated by 1..=max_generators random permutations.
pub fn random_group_instance<R: Rng>(
    rng: &mut R,
    n_vars: usize,
    cfg: &FalsifyConfig,
) -> GroupInstance {
    let d = rng.random_range(cfg.min_degree..=cfg.max_degree);
    let groups = (0..n_vars)
        .map(|_| {
            let k = rng.random_range(1..=cfg.max_generators);
            let gens = (0..k).map(|_| random_permutation(rng, d)).collect();
            PermGroup::new(d, gens).expect("same degree")
        })
        .collect();
    GroupInstance::new(d, groups, None).expect("small degree")
}

fn try_instance(
    law: &LawExpression,
    side: Side,
    seed: u64,
    index: u64,
    cfg: &FalsifyConfig,
) -> Result<Option<Counterexample>> {
    let mut rng = instance_rng(seed, index);
    let (result, instance, units) = match side {
        Side::Partitions => {
            let inst = random_partition_instance(&mut rng, law.n_vars, cfg);
            let r = eval_on_partitions(law, &inst.info_elements())?;
            (r, Instance::Partitions(inst), "nats")
        }
        Side::Subgroups => {
            let inst = random_group_instance(&mut rng, law.n_vars, cfg);
            let r = eval_on_subgroups(
                law,
                &inst.groups,
                inst.ambient_order,
                inst.degree,
                cfg.group_cap,
            )?;
            (r, Instance::Groups(inst), "nats/degree")
        }
    };
    if result.satisfied {
        return Ok(None);
    }
    Ok(Some(Counterexample {
        side,
        law: law.to_string(),
        seed,
        index,
        margin: result.margin,
        units: units.to_string(),
        instance: instance.to_value(),
    }))
}

/// Seeded random search for a violation; the lowest violating instance index wins.
pub fn falsify(
    law: &LawExpression,
    side: Side,
    budget: u64,
    seed: u64,
    cfg: &FalsifyConfig,
) -> Result<Option<Counterexample>> {
    const CHUNK: u64 = 256;
    let mut start = 0;
    while start < budget {
        let end = (start + CHUNK).min(budget);
        let hits = (start..end)
            .into_par_iter()
            .map(|i| try_instance(law, side, seed, i, cfg))
            .collect::<Result<Vec<_>>>()?;
        if let Some(hit) = hits.into_iter().flatten().next() {
            return Ok(Some(hit));
        }
        start = end;
    }
    Ok(None)
}

/// Re-evaluates a counterexample's instance against its law.
pub fn replay(cx: &Counterexample, group_cap: usize) -> Result<EvalResult> {
    let law = parse_law(&cx.law)?;
    match Instance::from_value(&cx.instance)? {
        Instance::Partitions(p) => eval_on_partitions(&law, &p.info_elements()),
        Instance::Groups(g) => {
            eval_on_subgroups(&law, &g.groups, g.ambient_order, g.degree, group_cap)
        }
    }
}

/// Outcome of [`verify_s5_counterexample`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct S5Report {
    /// `|G1|, |G2|, |G3|, |G1∨G2|, |G2∨G3|, |G1∨G2∨G3|`.
    pub orders: [u128; 6],
    /// `|G1∨G2|·|G2∨G3|`.
    pub lhs_product: u128,
    /// `|G1∨G2∨G3|·|G2|`.
    pub rhs_product: u128,
    pub subgroup: EvalResult,
    pub partition: EvalResult,
    /// Checks that did not come out as expected; empty on success.
    pub failures: Vec<String>,
}

/// `G1, G2, G3`. The involution is `(1 2)(3 5)`: it is the only one that
/// reflects both pentagons, so both pairwise joins are dihedral of order 10.
/// The often-quoted `(1 2)(4 5)` generates `A5` together with either 5-cycle.
pub const S5_GENERATORS: [&str; 3] = ["(1 2 3 4 5)", "(1 2)(3 5)", "(1 2 5 4 3)"];

/// The S5 counterexample to supermodularity of common information, checked
/// on subgroups and on the coset partitions of the same subgroups.
pub fn verify_s5_counterexample(group_cap: usize) -> Result<S5Report> {
    let gs: Vec<PermGroup> = S5_GENERATORS
        .iter()
        .map(|g| PermGroup::from_cycles(5, &[g]))
        .collect::<Result<_>>()?;
    let j12 = generated_join(&[&gs[0], &gs[1]])?;
    let j23 = generated_join(&[&gs[1], &gs[2]])?;
    let j123 = generated_join(&[&gs[0], &gs[1], &gs[2]])?;
    let orders = [
        gs[0].order(group_cap)?,
        gs[1].order(group_cap)?,
        gs[2].order(group_cap)?,
        j12.order(group_cap)?,
        j23.order(group_cap)?,
        j123.order(group_cap)?,
    ];
    let lhs_product = orders[3] * orders[4];
    let rhs_product = orders[5] * orders[1];

    let law = builtin_law("common-supermodular")?;
    let s5 = PermGroup::symmetric(5);
    let ambient = s5.enumerate(group_cap)?;
    let subgroup = eval_on_subgroups(&law, &gs, ambient.len() as u128, 5, group_cap)?;

    let cosets = gs
        .iter()
        .map(|g| coset_partition(ambient, g, group_cap))
        .collect::<Result<Vec<_>>>()?;
    let space = Arc::new(ProbabilitySpace::uniform(ambient.len())?);
    let elems = cosets
        .into_iter()
        .map(|p| InfoElement::new(p, space.clone()))
        .collect::<Result<Vec<_>>>()?;
    let partition = eval_on_partitions(&law, &elems)?;

    let mut failures = Vec::new();
    if orders != [5, 2, 5, 10, 10, 60] {
        failures.push(format!("unexpected orders {orders:?}"));
    }
    if lhs_product >= rhs_product {
        failures.push(format!("{lhs_product} < {rhs_product} does not hold"));
    }
    if subgroup.satisfied {
        failures.push("subgroup side is not violated".into());
    }
    if partition.satisfied {
        failures.push("partition side is not violated".into());
    }
    Ok(S5Report {
        orders,
        lhs_product,
        rhs_product,
        subgroup,
        partition,
        failures,
    })
}
