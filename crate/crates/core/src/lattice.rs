//! Lattices generated by closing a set of elements under two binary operations.
//!
//! The closure is generic: partitions and enumerated subgroups both plug in
//! through `join`/`meet` callbacks. Node identity is element equality, so an
//! element reached along different paths is stored once.
//!
//! The duality between the two sides is fixed here once: the information join
//! (common refinement) corresponds to subgroup intersection, and the
//! information meet (finest common coarsening) to the generated subgroup.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{
    common_refinement, entropy, finest_common_coarsening, InfoElement, LogBase, Partition,
};
use crate::perm_groups::{
    generated_join, intersection, normalized_log_index, orbit_partition, partition_stabilizer,
    PermGroup, Subgroup,
};

/// Default cap on the number of lattice nodes.
pub const DEFAULT_NODE_CAP: usize = 4096;

/// Largest generator count accepted by the semilattice vector builders.
pub const MAX_VECTOR_VARS: usize = 16;

/// A lattice term over 1-based literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LatticeTerm {
    Literal(usize),
    Join(Box<LatticeTerm>, Box<LatticeTerm>),
    Meet(Box<LatticeTerm>, Box<LatticeTerm>),
}

impl LatticeTerm {
    pub fn join(a: LatticeTerm, b: LatticeTerm) -> Self {
        LatticeTerm::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: LatticeTerm, b: LatticeTerm) -> Self {
        LatticeTerm::Meet(Box::new(a), Box::new(b))
    }

    /// Left-nested join of the given literals.
    pub fn join_of(literals: &[usize]) -> Self {
        Self::fold(literals, LatticeTerm::join)
    }

    /// Left-nested meet of the given literals.
    pub fn meet_of(literals: &[usize]) -> Self {
        Self::fold(literals, LatticeTerm::meet)
    }

    fn fold(literals: &[usize], op: fn(LatticeTerm, LatticeTerm) -> LatticeTerm) -> Self {
        let mut it = literals.iter().map(|&i| LatticeTerm::Literal(i));
        let first = it.next().expect("at least one literal");
        it.fold(first, op)
    }

    /// Largest literal index appearing in the term.
    pub fn max_literal(&self) -> usize {
        match self {
            LatticeTerm::Literal(i) => *i,
            LatticeTerm::Join(a, b) | LatticeTerm::Meet(a, b) => {
                a.max_literal().max(b.max_literal())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            LatticeTerm::Literal(_) => 2,
            LatticeTerm::Meet(..) => 1,
            LatticeTerm::Join(..) => 0,
        }
    }
}

impl fmt::Display for LatticeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, t: &LatticeTerm, min: u8) -> fmt::Result {
            if t.precedence() < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        }
        match self {
            LatticeTerm::Literal(i) => write!(f, "{i}"),
            LatticeTerm::Join(a, b) => {
                side(f, a, 0)?;
                f.write_str("v")?;
                side(f, b, 1)
            }
            LatticeTerm::Meet(a, b) => {
                side(f, a, 1)?;
                f.write_str("^")?;
                side(f, b, 2)
            }
        }
    }
}

impl FromStr for LatticeTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = TermParser::new(s);
        let t = p.term()?;
        p.skip_ws();
        if let Some((pos, c)) = p.peek() {
            return Err(Error::parse(pos, format!("unexpected `{c}`")));
        }
        Ok(t)
    }
}

/// Recursive-descent parser for lattice terms; `^` binds tighter than `v`.
pub(crate) struct TermParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> TermParser<'a> {
    pub fn new(src: &'a str) -> Self {
        TermParser { src, pos: 0 }
    }

    pub fn at(src: &'a str, pos: usize) -> Self {
        TermParser { src, pos }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn peek(&self) -> Option<(usize, char)> {
        self.src[self.pos..].chars().next().map(|c| (self.pos, c))
    }

    pub fn bump(&mut self) {
        if let Some((_, c)) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    pub fn skip_ws(&mut self) {
        while matches!(self.peek(), Some((_, c)) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn eat(&mut self, pred: impl Fn(char) -> bool) -> bool {
        self.skip_ws();
        match self.peek() {
            Some((_, c)) if pred(c) => {
                self.bump();
                true
            }
            _ => false,
        }
    }

    pub fn term(&mut self) -> Result<LatticeTerm> {
        let mut t = self.meet_term()?;
        while self.eat(|c| matches!(c, 'v' | 'V' | '∨')) {
            t = LatticeTerm::join(t, self.meet_term()?);
        }
        Ok(t)
    }

    fn meet_term(&mut self) -> Result<LatticeTerm> {
        let mut t = self.atom()?;
        while self.eat(|c| matches!(c, '^' | '∧')) {
            t = LatticeTerm::meet(t, self.atom()?);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<LatticeTerm> {
        self.skip_ws();
        match self.peek() {
            Some((_, '(')) => {
                self.bump();
                let t = self.term()?;
                if !self.eat(|c| c == ')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                Ok(t)
            }
            Some((start, c)) if c.is_ascii_digit() => {
                while matches!(self.peek(), Some((_, d)) if d.is_ascii_digit()) {
                    self.bump();
                }
                let idx: usize = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| Error::parse(start, "literal index too large"))?;
                if idx == 0 {
                    return Err(Error::parse(start, "literal indices start at 1"));
                }
                Ok(LatticeTerm::Literal(idx))
            }
            Some((pos, c)) => Err(Error::parse(
                pos,
                format!("expected a literal, found `{c}`"),
            )),
            None => Err(Error::parse(
                self.pos,
                "expected a literal, found end of input",
            )),
        }
    }
}

/// Evaluates `t` with literal `i` bound to `assignment[i - 1]`.
pub fn evaluate_term<T, J, M>(
    t: &LatticeTerm,
    assignment: &[T],
    join: &mut J,
    meet: &mut M,
) -> Result<T>
where
    T: Clone,
    J: FnMut(&T, &T) -> Result<T>,
    M: FnMut(&T, &T) -> Result<T>,
{
    match t {
        LatticeTerm::Literal(i) => {
            assignment
                .get(i.wrapping_sub(1))
                .cloned()
                .ok_or(Error::LiteralOutOfRange {
                    index: *i,
                    n: assignment.len(),
                })
        }
        LatticeTerm::Join(a, b) => {
            let x = evaluate_term(a, assignment, join, meet)?;
            let y = evaluate_term(b, assignment, join, meet)?;
            join(&x, &y)
        }
        LatticeTerm::Meet(a, b) => {
            let x = evaluate_term(a, assignment, join, meet)?;
            let y = evaluate_term(b, assignment, join, meet)?;
            meet(&x, &y)
        }
    }
}

/// Which reading of `∨`/`∧` to use for partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// join = common refinement, meet = finest common coarsening.
    #[default]
    Info,
    /// join = finest common coarsening, meet = common refinement.
    Partition,
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "info" => Ok(Convention::Info),
            "partition" => Ok(Convention::Partition),
            other => Err(Error::Invalid(format!("unknown convention `{other}`"))),
        }
    }
}

impl Convention {
    pub fn join(self, a: &Partition, b: &Partition) -> Result<Partition> {
        match self {
            Convention::Info => common_refinement(a, b),
            Convention::Partition => finest_common_coarsening(a, b),
        }
    }

    pub fn meet(self, a: &Partition, b: &Partition) -> Result<Partition> {
        match self {
            Convention::Info => finest_common_coarsening(a, b),
            Convention::Partition => common_refinement(a, b),
        }
    }
}

/// A finite lattice with its operation tables and cover relation.
#[derive(Debug, Clone)]
pub struct Lattice<T> {
    pub nodes: Vec<T>,
    pub generator_indices: Vec<usize>,
    pub join_table: Vec<Vec<usize>>,
    pub meet_table: Vec<Vec<usize>>,
    /// Cover pairs `(lower, upper)`, where `a ≤ b` iff `join(a, b) = b`.
    pub hasse_edges: Vec<(usize, usize)>,
}

struct NodeSet<T> {
    nodes: Vec<T>,
    index: HashMap<T, usize>,
    cap: usize,
}

impl<T: Clone + Eq + Hash> NodeSet<T> {
    fn insert(&mut self, t: T) -> Result<usize> {
        if let Some(&i) = self.index.get(&t) {
            return Ok(i);
        }
        if self.nodes.len() >= self.cap {
            return Err(Error::Capacity {
                what: "lattice node",
                cap: self.cap,
            });
        }
        let i = self.nodes.len();
        self.index.insert(t.clone(), i);
        self.nodes.push(t);
        Ok(i)
    }
}

/// Closes `generators` under `join` and `meet`; nodes are kept in discovery
/// order with the generators first.
pub fn generate_lattice<T, J, M>(
    generators: &[T],
    mut join: J,
    mut meet: M,
    node_cap: usize,
) -> Result<Lattice<T>>
where
    T: Clone + Eq + Hash,
    J: FnMut(&T, &T) -> Result<T>,
    M: FnMut(&T, &T) -> Result<T>,
{
    if generators.is_empty() {
        return Err(Error::Invalid(
            "a lattice needs at least one generator".into(),
        ));
    }
    let mut set = NodeSet {
        nodes: Vec::new(),
        index: HashMap::new(),
        cap: node_cap,
    };
    let generator_indices = generators
        .iter()
        .map(|g| set.insert(g.clone()))
        .collect::<Result<Vec<_>>>()?;

    // rows[j][i] for i <= j
    let mut join_rows: Vec<Vec<usize>> = Vec::new();
    let mut meet_rows: Vec<Vec<usize>> = Vec::new();
    let mut j = 0;
    while j < set.nodes.len() {
        let mut jr = Vec::with_capacity(j + 1);
        let mut mr = Vec::with_capacity(j + 1);
        for i in 0..=j {
            let x = join(&set.nodes[i], &set.nodes[j])?;
            jr.push(set.insert(x)?);
            let y = meet(&set.nodes[i], &set.nodes[j])?;
            mr.push(set.insert(y)?);
        }
        join_rows.push(jr);
        meet_rows.push(mr);
        j += 1;
    }

    let n = set.nodes.len();
    let full = |rows: &[Vec<usize>]| -> Vec<Vec<usize>> {
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| if a <= b { rows[b][a] } else { rows[a][b] })
                    .collect()
            })
            .collect()
    };
    let join_table = full(&join_rows);
    let meet_table = full(&meet_rows);
    let hasse_edges = cover_relation(&join_table);
    Ok(Lattice {
        nodes: set.nodes,
        generator_indices,
        join_table,
        meet_table,
        hasse_edges,
    })
}

fn cover_relation(join_table: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let n = join_table.len();
    let words = n.div_ceil(64);
    // above[a] = { c : a < c }
    let mut above = vec![vec![0u64; words]; n];
    for (a, row) in above.iter_mut().enumerate() {
        for c in 0..n {
            if a != c && join_table[a][c] == c {
                row[c / 64] |= 1 << (c % 64);
            }
        }
    }
    let mut edges = Vec::new();
    for (a, row) in above.iter().enumerate() {
        for b in 0..n {
            if row[b / 64] & (1 << (b % 64)) == 0 {
                continue;
            }
            // b covers a iff nothing strictly between them
            let between = (0..n)
                .any(|c| c != b && row[c / 64] & (1 << (c % 64)) != 0 && join_table[c][b] == b);
            if !between {
                edges.push((a, b));
            }
        }
    }
    edges
}

impl<T> Lattice<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `a ≤ b` in the lattice order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.join_table[a][b] == b
    }

    pub fn index_of(&self, t: &T) -> Option<usize>
    where
        T: PartialEq,
    {
        self.nodes.iter().position(|n| n == t)
    }

    /// Checks commutativity, idempotence, absorption and associativity of the tables.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.len();
        let (j, m) = (&self.join_table, &self.meet_table);
        for a in 0..n {
            if j[a][a] != a || m[a][a] != a {
                return Err(format!("idempotence fails at node {a}"));
            }
            for b in 0..n {
                if j[a][b] != j[b][a] || m[a][b] != m[b][a] {
                    return Err(format!("commutativity fails at ({a}, {b})"));
                }
                if j[a][m[a][b]] != a || m[a][j[a][b]] != a {
                    return Err(format!("absorption fails at ({a}, {b})"));
                }
                for c in 0..n {
                    if j[j[a][b]][c] != j[a][j[b][c]] || m[m[a][b]][c] != m[a][m[b][c]] {
                        return Err(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_dump(&self, labeler: impl Fn(&T) -> String) -> LatticeDump {
        LatticeDump {
            nodes: self.nodes.iter().map(labeler).collect(),
            generators: self.generator_indices.clone(),
            join_table: self.join_table.clone(),
            meet_table: self.meet_table.clone(),
            hasse_edges: self.hasse_edges.clone(),
        }
    }
}

/// Serializable form of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDump {
    pub nodes: Vec<String>,
    pub generators: Vec<usize>,
    pub join_table: Vec<Vec<usize>>,
    pub meet_table: Vec<Vec<usize>>,
    pub hasse_edges: Vec<(usize, usize)>,
}

/// DOT digraph of the cover relation, edges pointing upward.
pub fn export_hasse_dot<T>(l: &Lattice<T>, labeler: impl Fn(&T) -> String) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, node) in l.nodes.iter().enumerate() {
        let label = labeler(node).replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
    }
    for &(a, b) in &l.hasse_edges {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// Partition lattice generated under the given convention.
pub fn partition_lattice(
    generators: &[Partition],
    convention: Convention,
    node_cap: usize,
) -> Result<Lattice<Partition>> {
    generate_lattice(
        generators,
        |a, b| convention.join(a, b),
        |a, b| convention.meet(a, b),
        node_cap,
    )
}

/// Subgroup lattice: join is the generated subgroup, meet is intersection.
pub fn subgroup_lattice(
    generators: &[Subgroup],
    node_cap: usize,
    group_cap: usize,
) -> Result<Lattice<Subgroup>> {
    generate_lattice(
        generators,
        |a, b| a.join(b, group_cap),
        |a, b| a.intersection(b, group_cap),
        node_cap,
    )
}

/// Whether a vector slot holds a joint (join) or common (meet) element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotKind {
    Join,
    Meet,
}

/// One coordinate of a semilattice vector: a kind and a 1-based index subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub kind: SlotKind,
    pub subset: Vec<usize>,
}

impl Slot {
    pub fn term(&self) -> LatticeTerm {
        match self.kind {
            SlotKind::Join => LatticeTerm::join_of(&self.subset),
            SlotKind::Meet => LatticeTerm::meet_of(&self.subset),
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({})", self.term())
    }
}

/// Nonempty subsets of `{1..n}` ordered by size, then lexicographically.
pub fn subsets_by_rank(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity((1usize << n) - 1);
    for k in 1..=n {
        let mut combo: Vec<usize> = (1..=k).collect();
        loop {
            out.push(combo.clone());
            // next k-combination in lexicographic order
            let mut i = k;
            while i > 0 && combo[i - 1] == n - k + i {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for t in i..k {
                combo[t] = combo[t - 1] + 1;
            }
        }
    }
    out
}

/// Slot layout: all joins, then meets of at least two generators.
pub fn vector_slots(n: usize) -> Vec<Slot> {
    let subsets = subsets_by_rank(n);
    let joins = subsets.iter().map(|s| Slot {
        kind: SlotKind::Join,
        subset: s.clone(),
    });
    let meets = subsets.iter().filter(|s| s.len() >= 2).map(|s| Slot {
        kind: SlotKind::Meet,
        subset: s.clone(),
    });
    joins.chain(meets).collect()
}

/// Expected vector length `2^(n+1) - n - 2`.
pub fn vector_len(n: usize) -> usize {
    (1usize << (n + 1)) - n - 2
}

/// Entropies (or log-indices) of all joint and common elements of a generating set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemilatticeVectors {
    pub slots: Vec<Slot>,
    pub entries: Vec<f64>,
}

impl SemilatticeVectors {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn check_vector_vars(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("no generators".into()));
    }
    if n > MAX_VECTOR_VARS {
        return Err(Error::Capacity {
            what: "semilattice vector variable",
            cap: MAX_VECTOR_VARS,
        });
    }
    Ok(())
}

/// Folds every nonempty subset with `op`, indexed by bitmask.
fn subset_folds<T: Clone>(
    gens: &[T],
    mut op: impl FnMut(&T, &T) -> Result<T>,
) -> Result<Vec<Option<T>>> {
    let n = gens.len();
    let mut table: Vec<Option<T>> = vec![None; 1 << n];
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        table[mask] = Some(if rest == 0 {
            gens[low].clone()
        } else {
            op(
                table[rest].as_ref().expect("smaller mask filled"),
                &gens[low],
            )?
        });
    }
    Ok(table)
}

fn mask_of(subset: &[usize]) -> usize {
    subset.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

/// Joint and common partitions of every subset, aligned with [`vector_slots`].
pub fn semilattice_partitions(generators: &[Partition]) -> Result<Vec<Partition>> {
    check_vector_vars(generators.len())?;
    let joins = subset_folds(generators, common_refinement)?;
    let meets = subset_folds(generators, finest_common_coarsening)?;
    Ok(vector_slots(generators.len())
        .iter()
        .map(|s| {
            let table = match s.kind {
                SlotKind::Join => &joins,
                SlotKind::Meet => &meets,
            };
            table[mask_of(&s.subset)].clone().expect("filled")
        })
        .collect())
}

/// Entropy vector (nats) of the joint and common elements of `generators`.
pub fn semilattice_vectors(generators: &[InfoElement]) -> Result<SemilatticeVectors> {
    check_vector_vars(generators.len())?;
    let space = generators[0].space().clone();
    if let Some(g) = generators.iter().find(|g| g.space() != &space) {
        return Err(Error::GroundSizeMismatch {
            left: space.size(),
            right: g.space().size(),
        });
    }
    let parts: Vec<Partition> = generators.iter().map(|g| g.partition().clone()).collect();
    let entries = semilattice_partitions(&parts)?
        .iter()
        .map(|p| entropy(p, &space, LogBase::Natural))
        .collect::<Result<Vec<_>>>()?;
    Ok(SemilatticeVectors {
        slots: vector_slots(generators.len()),
        entries,
    })
}

/// Normalized log-index vector aligned with [`semilattice_vectors`]: joint
/// slots use intersections, common slots use generated subgroups.
pub fn log_index_vector(
    generators: &[PermGroup],
    ambient_order: u128,
    degree: usize,
    group_cap: usize,
) -> Result<SemilatticeVectors> {
    check_vector_vars(generators.len())?;
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: g.degree(),
        });
    }
    let inters = subset_folds(generators, |a, b| intersection(a, b, group_cap))?;
    let joins = subset_folds(generators, |a, b| generated_join(&[a, b]))?;
    let slots = vector_slots(generators.len());
    let entries = slots
        .iter()
        .map(|s| {
            let table = match s.kind {
                SlotKind::Join => &inters,
                SlotKind::Meet => &joins,
            };
            let g = table[mask_of(&s.subset)].as_ref().expect("filled");
            normalized_log_index(ambient_order, g.order(group_cap)?, degree)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SemilatticeVectors { slots, entries })
}

/// Outcome of [`dual_isomorphism_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub passed: bool,
    pub info_nodes: usize,
    pub group_nodes: usize,
    pub failures: Vec<String>,
}

/// Builds the information lattice of `generators` and the subgroup lattice of
/// their stabilizers, and checks that taking orbit partitions is a bijection
/// sending intersection to common refinement and generated subgroup to finest
/// common coarsening.
pub fn dual_isomorphism_check(
    generators: &[Partition],
    node_cap: usize,
    group_cap: usize,
) -> Result<IsoReport> {
    let info = partition_lattice(generators, Convention::Info, node_cap)?;
    let stabs = generators
        .iter()
        .map(|p| Subgroup::new(partition_stabilizer(p), group_cap))
        .collect::<Result<Vec<_>>>()?;
    let groups = subgroup_lattice(&stabs, node_cap, group_cap)?;

    let mut failures = Vec::new();
    let image: Vec<Partition> = groups
        .nodes
        .iter()
        .map(|g| orbit_partition(g.group()))
        .collect();
    let info_index: HashMap<&Partition, usize> =
        info.nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();

    for (k, (&gi, p)) in groups.generator_indices.iter().zip(generators).enumerate() {
        if &image[gi] != p {
            failures.push(format!(
                "generator {} maps to {} instead of {p}",
                k + 1,
                image[gi]
            ));
        }
    }
    let mut hit = vec![false; info.len()];
    for (g, p) in image.iter().enumerate() {
        match info_index.get(p) {
            Some(&i) if hit[i] => failures.push(format!("two subgroups map to {p}")),
            Some(&i) => hit[i] = true,
            None => failures.push(format!(
                "orbit partition {p} of subgroup node {g} is not in the information lattice"
            )),
        }
    }
    for (i, p) in info.nodes.iter().enumerate() {
        if !hit[i] {
            failures.push(format!("information node {p} has no subgroup preimage"));
        }
    }
    for a in 0..groups.len() {
        for b in a..groups.len() {
            let inter = &image[groups.meet_table[a][b]];
            let cr = common_refinement(&image[a], &image[b])?;
            if inter != &cr {
                failures.push(format!(
                    "orbits of intersection {inter} differ from common refinement {cr}"
                ));
            }
            let joined = &image[groups.join_table[a][b]];
            let fcc = finest_common_coarsening(&image[a], &image[b])?;
            if joined != &fcc {
                failures.push(format!(
                    "orbits of generated subgroup {joined} differ from coarsening {fcc}"
                ));
            }
        }
    }
    Ok(IsoReport {
        passed: failures.is_empty(),
        info_nodes: info.len(),
        group_nodes: groups.len(),
        failures,
    })
}
