//! Permutations of `{1..n}` and finitely generated permutation groups.
//!
//! Groups are enumerated by breadth-first closure of their generators under
//! composition, with an explicit element cap. Enumerated element lists are
//! sorted by image array so anything indexed by them is reproducible.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// A bijection of `{1..n}`; stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            image: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its 1-based image array.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[x - 1] = true;
            image.push((x - 1) as u32);
        }
        Ok(Permutation { image })
    }

    /// Transposition of two 1-based points.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(degree);
        p.image.swap(a - 1, b - 1);
        p
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    ///
    /// Entries may be separated by whitespace or commas. A cycle written
    /// without separators, like `(12345)`, is read digit by digit when the
    /// degree is below 10.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut image: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c != '(' {
                return Err(Error::parse(i, format!("expected `(`, found `{c}`")));
            }
            let close = text[i..]
                .find(')')
                .map(|k| k + i)
                .ok_or_else(|| Error::parse(i, "unclosed `(`"))?;
            let body = &text[i + 1..close];
            if body.contains('(') {
                return Err(Error::parse(i, "nested `(`"));
            }
            let points = Self::cycle_points(body, degree, i + 1)?;
            for &pt in &points {
                if moved[pt - 1] {
                    return Err(Error::parse(i, format!("point {pt} repeated")));
                }
                moved[pt - 1] = true;
            }
            for (k, &pt) in points.iter().enumerate() {
                let next = points[(k + 1) % points.len()];
                image[pt - 1] = (next - 1) as u32;
            }
            i = close + 1;
        }
        Ok(Permutation { image })
    }

    fn cycle_points(body: &str, degree: usize, offset: usize) -> Result<Vec<usize>> {
        let trimmed = body.trim();
        if trimmed.is_empty() {
            return Ok(Vec::new());
        }
        let tokens: Vec<&str> =
            if degree < 10 && !trimmed.contains(|c: char| c.is_whitespace() || c == ',') {
                trimmed
                    .char_indices()
                    .map(|(k, ch)| &trimmed[k..k + ch.len_utf8()])
                    .collect()
            } else {
                trimmed
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .collect()
            };
        tokens
            .into_iter()
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 && v <= degree => Ok(v),
                Ok(v) => Err(Error::parse(
                    offset,
                    format!("point {v} outside 1..={degree}"),
                )),
                Err(_) => Err(Error::parse(offset, format!("bad cycle entry `{t}`"))),
            })
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { image: inv }
    }

    fn compose_unchecked(a: &Permutation, b: &Permutation) -> Permutation {
        Permutation {
            image: b.image.iter().map(|&x| a.image[x as usize]).collect(),
        }
    }

    /// Cycles of length at least two, each starting at its smallest point (1-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(Permutation::compose_unchecked(a, b))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Permutation group given by generators, enumerated lazily.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Arc<Vec<Permutation>>>,
    order: OnceLock<u128>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("order", &self.order.get())
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(Self::from_parts(degree, generators))
    }

    fn from_parts(degree: usize, mut generators: Vec<Permutation>) -> Self {
        generators.retain(|g| !g.is_identity());
        let mut seen = HashSet::new();
        generators.retain(|g| seen.insert(g.clone()));
        PermGroup {
            degree,
            generators,
            elements: OnceLock::new(),
            order: OnceLock::new(),
        }
    }

    /// Parses generators written in cycle notation.
    pub fn from_cycles<S: AsRef<str>>(degree: usize, generators: &[S]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse_cycles(s.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, Vec::new())
    }

    /// The full symmetric group, generated by `(1 2)` and `(1 2 .. n)`.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::transposition(degree, 1, 2));
            let cycle: Vec<usize> = (2..=degree).chain(std::iter::once(1)).collect();
            gens.push(Permutation::from_images(&cycle).expect("rotation is a bijection"));
        }
        let g = Self::from_parts(degree, gens);
        if let Some(order) = factorial_u128(degree) {
            let _ = g.order.set(order);
        }
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Cached element list, if the group has been enumerated.
    pub fn cached_elements(&self) -> Option<&Arc<Vec<Permutation>>> {
        self.elements.get()
    }

    /// Enumerates the group (sorted by image array), failing past `cap` elements.
    pub fn enumerate(&self, cap: usize) -> Result<&Arc<Vec<Permutation>>> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let elems = Arc::new(closure(self.degree, &self.generators, cap)?);
        let _ = self.order.set(elems.len() as u128);
        // a concurrent fill computes the same list, so losing the race is harmless
        let _ = self.elements.set(elems);
        Ok(self.elements.get().expect("just set"))
    }

    /// Group order, from a known formula when available, otherwise by enumeration.
    pub fn order(&self, cap: usize) -> Result<u128> {
        if let Some(&o) = self.order.get() {
            return Ok(o);
        }
        Ok(self.enumerate(cap)?.len() as u128)
    }

    pub fn contains(&self, p: &Permutation, cap: usize) -> Result<bool> {
        if p.degree() != self.degree {
            return Ok(false);
        }
        Ok(self.enumerate(cap)?.binary_search(p).is_ok())
    }

    /// True iff both groups have the same element set.
    pub fn same_elements(&self, other: &PermGroup, cap: usize) -> Result<bool> {
        Ok(self.degree == other.degree && self.enumerate(cap)? == other.enumerate(cap)?)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_json(json: &GroupJson) -> Result<Self> {
        Self::from_cycles(json.degree, &json.generators)
    }
}

/// JSON form of a group: `{"degree": n, "generators": ["(1 2 3)", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<String>,
}

pub fn factorial_u128(n: usize) -> Option<u128> {
    (2..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

fn closure(degree: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    if cap < 1 {
        return Err(Error::Capacity {
            what: "group element",
            cap,
        });
    }
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = Permutation::compose_unchecked(g, &x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::Capacity {
                        what: "group element",
                        cap,
                    });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elems: Vec<Permutation> = seen.into_iter().collect();
    elems.sort_unstable();
    Ok(elems)
}

/// A small generating set for the subgroup with the given (closed) element list.
fn generating_subset(
    degree: usize,
    elements: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
    for e in elements {
        if current.contains(e) {
            continue;
        }
        gens.push(e.clone());
        current = closure(degree, &gens, cap)?.into_iter().collect();
        if current.len() == elements.len() {
            break;
        }
    }
    Ok(gens)
}

fn check_degree(a: &PermGroup, b: &PermGroup) -> Result<()> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch {
            left: a.degree,
            right: b.degree,
        });
    }
    Ok(())
}

/// `A ∩ B`, by filtering the smaller element list through the larger.
///
/// The result carries its element list; its generators are a greedily chosen
/// generating subset of that list.
pub fn intersection(a: &PermGroup, b: &PermGroup, cap: usize) -> Result<PermGroup> {
    check_degree(a, b)?;
    let (ea, eb) = (a.enumerate(cap)?, b.enumerate(cap)?);
    let (small, large) = if ea.len() <= eb.len() {
        (ea, eb)
    } else {
        (eb, ea)
    };
    let common: Vec<Permutation> = small
        .iter()
        .filter(|p| large.binary_search(p).is_ok())
        .cloned()
        .collect();
    let gens = generating_subset(a.degree, &common, cap)?;
    let g = PermGroup::from_parts(a.degree, gens);
    let _ = g.order.set(common.len() as u128);
    let _ = g.elements.set(Arc::new(common));
    Ok(g)
}

/// Subgroup generated by the union of the given groups (not enumerated).
pub fn generated_join(groups: &[&PermGroup]) -> Result<PermGroup> {
    let first = groups
        .first()
        .ok_or_else(|| Error::Invalid("generated join of no groups".into()))?;
    let mut gens = Vec::new();
    for g in groups {
        check_degree(first, g)?;
        gens.extend(g.generators.iter().cloned());
    }
    Ok(PermGroup::from_parts(first.degree, gens))
}

/// Orbits of the natural action on `{1..degree}`.
pub fn orbit_partition(g: &PermGroup) -> Partition {
    let mut uf = UnionFind::new(g.degree);
    for s in &g.generators {
        for i in 0..g.degree {
            uf.union(i, s.apply(i));
        }
    }
    Partition::from_labels(&uf.roots())
}

/// Permutations that map every block of `p` onto itself, generated by
/// adjacent transpositions within each block.
pub fn partition_stabilizer(p: &Partition) -> PermGroup {
    let n = p.ground_size();
    let mut gens = Vec::new();
    let mut order: Option<u128> = Some(1);
    for block in p.blocks() {
        for w in block.windows(2) {
            gens.push(Permutation::transposition(n, w[0], w[1]));
        }
        order = order.and_then(|o| factorial_u128(block.len()).and_then(|f| o.checked_mul(f)));
    }
    let g = PermGroup::from_parts(n, gens);
    if let Some(o) = order {
        let _ = g.order.set(o);
    }
    g
}

/// Partition of the ambient element indices `1..=|G|` into right cosets `Hg`.
pub fn coset_partition(ambient: &[Permutation], h: &PermGroup, cap: usize) -> Result<Partition> {
    let sub = h.enumerate(cap)?;
    let mut labels = vec![usize::MAX; ambient.len()];
    let mut next = 0;
    for (i, g) in ambient.iter().enumerate() {
        if labels[i] != usize::MAX {
            continue;
        }
        for x in sub.iter() {
            let hg = compose(x, g)?;
            let j = ambient.binary_search(&hg).map_err(|_| {
                Error::NotSubgroup(format!("{x} · {g} is not in the ambient element list"))
            })?;
            labels[j] = next;
        }
        next += 1;
    }
    Ok(Partition::from_labels(&labels))
}

/// `(1/degree) · ln(ambient_order / sub_order)`.
pub fn normalized_log_index(ambient_order: u128, sub_order: u128, degree: usize) -> Result<f64> {
    if sub_order == 0 || !ambient_order.is_multiple_of(sub_order) {
        return Err(Error::NotDivisible {
            ambient: ambient_order,
            sub: sub_order,
        });
    }
    if degree == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    Ok(((ambient_order / sub_order) as f64).ln() / degree as f64)
}

/// A fully enumerated group whose identity is its element set.
///
/// Used as the node type of subgroup lattices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: PermGroup,
}

impl Subgroup {
    pub fn new(group: PermGroup, cap: usize) -> Result<Self> {
        group.enumerate(cap)?;
        Ok(Subgroup { group })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn elements(&self) -> &Arc<Vec<Permutation>> {
        self.group
            .cached_elements()
            .expect("enumerated on construction")
    }

    pub fn order(&self) -> u128 {
        self.elements().len() as u128
    }

    pub fn intersection(&self, other: &Subgroup, cap: usize) -> Result<Subgroup> {
        Subgroup::new(intersection(&self.group, &other.group, cap)?, cap)
    }

    pub fn join(&self, other: &Subgroup, cap: usize) -> Result<Subgroup> {
        let j = generated_join(&[&self.group, &other.group])?;
        let e = j.enumerate(cap)?;
        // keep generator lists short across repeated joins
        let gens = generating_subset(j.degree, e, cap)?;
        let g = PermGroup::from_parts(j.degree, gens);
        let _ = g.elements.set(e.clone());
        let _ = g.order.set(e.len() as u128);
        Ok(Subgroup { group: g })
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group.degree == other.group.degree && self.elements() == other.elements()
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group.degree.hash(state);
        self.elements().hash(state);
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (k, g) in self.group.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> (order {})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = DEFAULT_GROUP_CAP;

    fn perm(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(n, gens).unwrap()
    }

    #[test]
    fn parse_cycle_examples() {
        assert_eq!(perm("(1 2 3 4 5)", 5).images(), vec![2, 3, 4, 5, 1]);
        assert!(perm("()", 4).is_identity());
        assert_eq!(perm("(1 2)(4 5)", 5).images(), vec![2, 1, 3, 5, 4]);
        assert_eq!(perm("(12345)", 5), perm("(1 2 3 4 5)", 5));
        assert_eq!(perm("(10 11)", 12).images()[9], 11);
        assert_eq!(perm("(1 2)(4 5)", 5).to_string(), "(1 2)(4 5)");
    }

    #[test]
    fn parse_cycle_errors() {
        assert!(Permutation::parse_cycles("(1 2 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert!(Permutation::parse_cycles("1 2)", 3).is_err());
        assert!(Permutation::parse_cycles("((1 2))", 3).is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let s = perm("(1 3 2 4)", 4);
        let id = Permutation::identity(4);
        assert_eq!(compose(&s, &id).unwrap(), s);
        assert!(compose(&s, &s.inverse()).unwrap().is_identity());
        let c = compose(&perm("(1 2)", 3), &perm("(2 3)", 3)).unwrap();
        assert_eq!(c.images(), vec![2, 3, 1]);
        assert_eq!(c, perm("(1 2 3)", 3));
        assert!(id.inverse().is_identity());
        assert_eq!(perm("(1 2 3)", 3).inverse(), perm("(1 3 2)", 3));
        assert_eq!(s.inverse().inverse(), s);
        assert!(compose(&s, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn enumeration_and_orders() {
        assert_eq!(group(5, &["(1 2 3 4 5)"]).enumerate(CAP).unwrap().len(), 5);
        assert_eq!(group(5, &["(1 2)(4 5)"]).order(CAP).unwrap(), 2);
        let t = PermGroup::trivial(4);
        assert_eq!(t.enumerate(CAP).unwrap().len(), 1);
        assert!(t.enumerate(CAP).unwrap()[0].is_identity());
        assert_eq!(group(5, &["(12345)", "(12)(35)"]).order(CAP).unwrap(), 10);
        assert_eq!(
            group(5, &["(12345)", "(12)(35)", "(12543)"])
                .order(CAP)
                .unwrap(),
            60
        );
        assert_eq!(PermGroup::symmetric(5).enumerate(CAP).unwrap().len(), 120);
    }

    #[test]
    fn capacity_is_explicit() {
        let s6 = PermGroup::symmetric(6);
        let fresh = PermGroup::new(6, s6.generators().to_vec()).unwrap();
        assert!(matches!(fresh.enumerate(100), Err(Error::Capacity { .. })));
        assert!(fresh.cached_elements().is_none());
        assert_eq!(fresh.enumerate(720).unwrap().len(), 720);
    }

    #[test]
    fn enumeration_is_closed() {
        let g = group(5, &["(12345)", "(12)(45)"]);
        let e = g.enumerate(CAP).unwrap();
        assert!(e.windows(2).all(|w| w[0] < w[1]));
        for a in e.iter() {
            assert!(e.binary_search(&a.inverse()).is_ok());
            for b in e.iter() {
                assert!(e.binary_search(&compose(a, b).unwrap()).is_ok());
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let g = group(5, &["(12345)", "(12)(45)"]);
        assert!(intersection(&g, &g, CAP)
            .unwrap()
            .same_elements(&g, CAP)
            .unwrap());
        let i = intersection(&group(5, &["(12345)"]), &group(5, &["(12)(45)"]), CAP).unwrap();
        assert_eq!(i.order(CAP).unwrap(), 1);
        assert_eq!(
            intersection(&g, &PermGroup::trivial(5), CAP)
                .unwrap()
                .order(CAP)
                .unwrap(),
            1
        );
        assert!(intersection(&g, &PermGroup::trivial(4), CAP).is_err());
    }

    #[test]
    fn join_examples() {
        let g = group(5, &["(12345)"]);
        let t = PermGroup::trivial(5);
        assert!(generated_join(&[&g, &t])
            .unwrap()
            .same_elements(&g, CAP)
            .unwrap());
        let g2 = group(5, &["(12)(35)"]);
        let g3 = group(5, &["(12543)"]);
        assert_eq!(generated_join(&[&g, &g2]).unwrap().order(CAP).unwrap(), 10);
        assert_eq!(generated_join(&[&g2, &g3]).unwrap().order(CAP).unwrap(), 10);
        // (12)(45) is not a reflection of either pentagon; the pair generates A5
        let a5 = group(5, &["(12345)", "(12)(45)"]);
        assert_eq!(a5.order(CAP).unwrap(), 60);
        assert_eq!(
            generated_join(&[&g, &g2, &g3]).unwrap().order(CAP).unwrap(),
            60
        );
        assert!(generated_join(&[&g, &PermGroup::trivial(4)]).is_err());
    }

    #[test]
    fn orbits() {
        assert!(orbit_partition(&PermGroup::trivial(4)).is_discrete());
        assert_eq!(orbit_partition(&group(5, &["(1 2 3 4 5)"])).num_blocks(), 1);
        assert_eq!(
            orbit_partition(&group(4, &["(1 2)"])).to_string(),
            "1,2|3|4"
        );
    }

    #[test]
    fn stabilizers() {
        let d = partition_stabilizer(&Partition::discrete(4));
        assert_eq!(d.order(CAP).unwrap(), 1);
        assert!(d.generators().is_empty());
        let s = partition_stabilizer(&Partition::parse("1,2|3|4", 4).unwrap());
        assert_eq!(s.generators(), &[perm("(1 2)", 4)]);
        assert_eq!(s.order(CAP).unwrap(), 2);
        let full = partition_stabilizer(&Partition::indiscrete(4));
        assert_eq!(full.order(CAP).unwrap(), 24);
        let fresh = PermGroup::new(4, full.generators().to_vec()).unwrap();
        assert_eq!(fresh.enumerate(CAP).unwrap().len(), 24);
    }

    #[test]
    fn coset_partitions() {
        let s5 = PermGroup::symmetric(5);
        let amb = s5.enumerate(CAP).unwrap();
        assert_eq!(coset_partition(amb, &s5, CAP).unwrap().num_blocks(), 1);
        assert!(coset_partition(amb, &PermGroup::trivial(5), CAP)
            .unwrap()
            .is_discrete());
        let d10 = group(5, &["(12345)", "(12)(35)"]);
        let cp = coset_partition(amb, &d10, CAP).unwrap();
        assert_eq!(cp.num_blocks(), 12);
        assert!(cp.block_sizes().iter().all(|&s| s == 10));

        let c5 = group(5, &["(12345)"]);
        let amb_c5 = c5.enumerate(CAP).unwrap();
        assert!(matches!(
            coset_partition(amb_c5, &group(5, &["(1 2)"]), CAP),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn log_indices() {
        assert_eq!(normalized_log_index(120, 120, 5).unwrap(), 0.0);
        assert!((normalized_log_index(120, 10, 5).unwrap() - 0.496981).abs() < 1e-6);
        assert!((normalized_log_index(120, 2, 5).unwrap() - 0.818869).abs() < 1e-6);
        assert!(matches!(
            normalized_log_index(120, 7, 5),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn json_form() {
        let g = group(5, &["(1 2 3 4 5)", "(1 2)(4 5)"]);
        let json = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"degree":5,"generators":["(1 2 3 4 5)","(1 2)(4 5)"]}"#
        );
        let back = PermGroup::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert!(back.same_elements(&g, CAP).unwrap());
    }
}
