//! Finite windows of Alexandrov spaces: posets with up-sets, cover relations,
//! minimal-basis and étale checks, and irreducible closed subsets.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupElem;

/// Optional payload attached to a node by the module that built the window.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeLabel {
    Group(GroupElem),
    /// A point of an étale poset: base element and fiber element name.
    Fiber(GroupElem, String),
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeLabel::Group(g) => write!(f, "{g}"),
            NodeLabel::Fiber(g, s) => write!(f, "{g}|{s}"),
        }
    }
}

/// A finite poset, stored as a dense order matrix. `interior[x]` marks nodes
/// whose relevant up-set is known to lie completely inside the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowPoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    interior: Vec<bool>,
    labels: Option<Vec<NodeLabel>>,
}

impl WindowPoset {
    /// Builds the order from a predicate and checks the partial-order axioms.
    pub fn from_fn(names: Vec<String>, mut leq: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let n = names.len();
        let matrix: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        let poset = WindowPoset {
            interior: vec![true; n],
            names,
            leq: matrix,
            labels: None,
        };
        poset.check_axioms()?;
        Ok(poset)
    }

    /// Reflexive-transitive closure of `pairs` (given as `(a, b)` meaning
    /// `a <= b`); fails if the closure is not antisymmetric.
    pub fn from_relation(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::usage(format!("relation pair ({a},{b}) out of range")));
            }
            m[a][b] = true;
        }
        #[allow(clippy::needless_range_loop)]
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        let poset = WindowPoset {
            interior: vec![true; n],
            names,
            leq: m,
            labels: None,
        };
        poset.check_axioms()?;
        Ok(poset)
    }

    pub fn chain(n: usize) -> Self {
        WindowPoset::from_fn((0..n).map(|i| i.to_string()).collect(), |i, j| i <= j).expect("chain")
    }

    pub fn antichain(names: &[&str]) -> Self {
        WindowPoset::from_fn(names.iter().map(|s| s.to_string()).collect(), |i, j| i == j)
            .expect("antichain")
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(Error::usage(format!("order is not reflexive at {}", self.names[i])));
            }
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(Error::usage(format!(
                        "order is not antisymmetric: {} and {}",
                        self.names[i], self.names[j]
                    )));
                }
                if self.leq[i][j] {
                    for k in 0..n {
                        if self.leq[j][k] && !self.leq[i][k] {
                            return Err(Error::usage(format!(
                                "order is not transitive: {} <= {} <= {}",
                                self.names[i], self.names[j], self.names[k]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_interior(mut self, interior: Vec<bool>) -> Self {
        assert_eq!(interior.len(), self.len());
        self.interior = interior;
        self
    }

    pub fn with_labels(mut self, labels: Vec<NodeLabel>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = Some(labels);
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn label(&self, x: usize) -> Option<&NodeLabel> {
        self.labels.as_ref().map(|l| &l[x])
    }

    pub fn is_interior(&self, x: usize) -> bool {
        self.interior[x]
    }

    pub fn interior_nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.interior[x]).collect()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// `↑x = { y : x <= y }` within the window.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq[x][y]).collect()
    }

    /// `↓x = { y : y <= x }` within the window.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq[y][x]).collect()
    }

    pub fn is_up_closed(&self, set: &[usize]) -> bool {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        members.iter().all(|&x| self.up_set(x).iter().all(|y| members.contains(y)))
    }

    pub fn is_down_closed(&self, set: &[usize]) -> bool {
        let members: BTreeSet<usize> = set.iter().copied().collect();
        members.iter().all(|&x| self.down_set(x).iter().all(|y| members.contains(y)))
    }

    /// Cover pairs `p ⋖ q`: `p < q` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if self.lt(p, q) && !(0..n).any(|x| self.lt(p, x) && self.lt(x, q)) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// All pairs `a <= b` with `a != b`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.lt(a, b))
            .collect()
    }
}

/// `↑x`, exposed under the operation's name.
pub fn up_set(poset: &WindowPoset, x: usize) -> Vec<usize> {
    poset.up_set(x)
}

/// Outcome of a minimal-basis check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisVerdict {
    Minimal,
    /// Some `↑x` is not in the family, so it does not generate every open set.
    NotABasis { missing_upset_of: usize },
    /// `union` is the union of the strictly smaller members `parts`.
    NotMinimal { union: Vec<usize>, parts: Vec<Vec<usize>> },
}

impl BasisVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, BasisVerdict::Minimal)
    }
}

/// Checks that `family` (a list of up-closed sets) is a basis of the
/// Alexandrov topology in which no member is a union of strictly smaller
/// members.
pub fn is_minimal_basis(poset: &WindowPoset, family: &[Vec<usize>]) -> Result<BasisVerdict> {
    let family: Vec<BTreeSet<usize>> = family.iter().map(|u| u.iter().copied().collect()).collect();
    for u in &family {
        let members: Vec<usize> = u.iter().copied().collect();
        if members.iter().any(|&x| x >= poset.len()) || !poset.is_up_closed(&members) {
            return Err(Error::usage(format!("family member {members:?} is not an open (up-closed) set")));
        }
    }
    // In an Alexandrov space the only basic open sets that can sit between x
    // and ↑x are ↑x itself, so a basis must list every ↑x.
    for x in 0..poset.len() {
        let up: BTreeSet<usize> = poset.up_set(x).into_iter().collect();
        if !family.contains(&up) {
            return Ok(BasisVerdict::NotABasis { missing_upset_of: x });
        }
    }
    for u in &family {
        let smaller: Vec<&BTreeSet<usize>> = family.iter().filter(|v| v.len() < u.len() && v.is_subset(u)).collect();
        let union: BTreeSet<usize> = smaller.iter().flat_map(|v| v.iter().copied()).collect();
        if !u.is_empty() && &union == u {
            let mut parts: Vec<Vec<usize>> = smaller.iter().map(|v| v.iter().copied().collect()).collect();
            parts.sort();
            parts.dedup();
            return Ok(BasisVerdict::NotMinimal {
                union: u.iter().copied().collect(),
                parts,
            });
        }
    }
    Ok(BasisVerdict::Minimal)
}

/// An order-preserving map between two windows.
#[derive(Clone, Debug)]
pub struct MonotoneMap<'a> {
    source: &'a WindowPoset,
    target: &'a WindowPoset,
    mapping: Vec<usize>,
}

impl<'a> MonotoneMap<'a> {
    pub fn new(source: &'a WindowPoset, target: &'a WindowPoset, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != source.len() || mapping.iter().any(|&y| y >= target.len()) {
            return Err(Error::usage("map is not total into the target"));
        }
        for (a, b) in source.strict_pairs() {
            if !target.leq(mapping[a], mapping[b]) {
                return Err(Error::usage(format!(
                    "map is not monotone: {} <= {} but images are incomparable",
                    source.name(a),
                    source.name(b)
                )));
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            mapping,
        })
    }

    pub fn identity(poset: &'a WindowPoset) -> Self {
        MonotoneMap {
            source: poset,
            target: poset,
            mapping: (0..poset.len()).collect(),
        }
    }

    pub fn source(&self) -> &'a WindowPoset {
        self.source
    }

    pub fn target(&self) -> &'a WindowPoset {
        self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MonotoneMap<'a>) -> Result<MonotoneMap<'a>> {
        if self.target != next.source {
            return Err(Error::usage("maps are not composable"));
        }
        Ok(MonotoneMap {
            source: self.source,
            target: next.target,
            mapping: self.mapping.iter().map(|&y| next.mapping[y]).collect(),
        })
    }

    /// Whether the map restricts to an order isomorphism `↑q -> ↑f(q)`.
    pub fn is_etale_at(&self, q: usize) -> bool {
        let up = self.source.up_set(q);
        let image: BTreeSet<usize> = up.iter().map(|&y| self.mapping[y]).collect();
        if image.len() != up.len() {
            return false;
        }
        let target_up: BTreeSet<usize> = self.target.up_set(self.mapping[q]).into_iter().collect();
        if image != target_up {
            return false;
        }
        up.iter().all(|&a| {
            up.iter()
                .all(|&b| self.target.leq(self.mapping[a], self.mapping[b]) == self.source.leq(a, b))
        })
    }
}

/// Checks the étale condition at every interior node of the source; returns
/// the first failing node.
pub fn is_etale(map: &MonotoneMap<'_>) -> std::result::Result<(), usize> {
    match map
        .source
        .interior_nodes()
        .into_iter()
        .find(|&q| !map.is_etale_at(q))
    {
        Some(q) => Err(q),
        None => Ok(()),
    }
}

/// Nonempty, down-closed, up-directed subsets, found by enumerating the
/// down-sets along a linear extension. Each is returned sorted; the list is
/// sorted by maximum when every set has one (always, for a finite poset).
pub fn irreducible_closed_sets(poset: &WindowPoset) -> Result<Vec<Vec<usize>>> {
    let n = poset.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| poset.down_set(x).len());
    let mut found = Vec::new();
    let mut chosen = vec![false; n];
    let mut visited = 0usize;
    down_sets(poset, &order, 0, &mut chosen, &mut visited, &mut found)?;
    found.sort_by_key(|set: &Vec<usize>| {
        set.iter().copied().find(|&m| set.iter().all(|&y| poset.leq(y, m))).unwrap_or(usize::MAX)
    });
    Ok(found)
}

fn down_sets(
    poset: &WindowPoset,
    order: &[usize],
    at: usize,
    chosen: &mut Vec<bool>,
    visited: &mut usize,
    found: &mut Vec<Vec<usize>>,
) -> Result<()> {
    *visited += 1;
    if *visited > crate::group::DEFAULT_ELEMENT_CAP {
        return Err(Error::Resource {
            cap: crate::group::DEFAULT_ELEMENT_CAP,
            needed: *visited as u128,
            what: "down-sets of the window poset".into(),
        });
    }
    if at == order.len() {
        let set: Vec<usize> = (0..chosen.len()).filter(|&x| chosen[x]).collect();
        let directed = set
            .iter()
            .all(|&a| set.iter().all(|&b| set.iter().any(|&w| poset.leq(a, w) && poset.leq(b, w))));
        if !set.is_empty() && directed {
            found.push(set);
        }
        return Ok(());
    }
    let x = order[at];
    down_sets(poset, order, at + 1, chosen, visited, found)?;
    // every element below x comes earlier in `order`
    if (0..chosen.len()).all(|y| y == x || !poset.leq(y, x) || chosen[y]) {
        chosen[x] = true;
        down_sets(poset, order, at + 1, chosen, visited, found)?;
        chosen[x] = false;
    }
    Ok(())
}

/// A random partial order on `size` nodes: each pair `i < j` is related
/// with probability `density`, then closed transitively.
pub fn random_poset<R: rand::Rng>(rng: &mut R, size: usize, density: f64) -> WindowPoset {
    let mut pairs = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            if rng.random_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    let names = (0..size).map(|i| format!("v{i}")).collect();
    WindowPoset::from_relation(names, &pairs).expect("pairs i<j generate a partial order")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> WindowPoset {
        // a < b, c < d
        WindowPoset::from_relation(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    /// All subsets that are nonempty, down-closed and directed.
    fn brute_irreducible(p: &WindowPoset) -> BTreeSet<Vec<usize>> {
        let n = p.len();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if !p.is_down_closed(&set) {
                continue;
            }
            let directed = set
                .iter()
                .all(|&a| set.iter().all(|&b| set.iter().any(|&w| p.leq(a, w) && p.leq(b, w))));
            if directed {
                out.insert(set);
            }
        }
        out
    }

    #[test]
    fn up_set_examples() {
        assert_eq!(up_set(&WindowPoset::chain(3), 1), vec![1, 2]);
        assert_eq!(up_set(&WindowPoset::antichain(&["a", "b"]), 0), vec![0]);
        let window = WindowPoset::chain(7); // -3..=3 shifted by 3
        assert_eq!(up_set(&window, 3), vec![3, 4, 5, 6]);
    }

    #[test]
    fn order_axioms_are_enforced() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(WindowPoset::from_relation(names.clone(), &[(0, 1), (1, 0)]).is_err());
        assert!(WindowPoset::from_fn(names, |i, j| i != j).is_err());
    }

    #[test]
    fn minimal_basis_examples() {
        let chain = WindowPoset::chain(3);
        let principal: Vec<Vec<usize>> = (0..3).map(|x| chain.up_set(x)).collect();
        assert!(is_minimal_basis(&chain, &principal).unwrap().passes());

        let with_repeat = vec![vec![2], vec![1, 2], vec![0, 1, 2], vec![1, 2]];
        assert!(is_minimal_basis(&chain, &with_repeat).unwrap().passes());

        let not_open = vec![vec![2], vec![0, 1, 2], vec![1, 2], vec![0, 2]];
        assert!(matches!(is_minimal_basis(&chain, &not_open), Err(Error::Usage(_))));

        let anti = WindowPoset::antichain(&["a", "b"]);
        let family = vec![vec![0], vec![1], vec![0, 1]];
        assert_eq!(
            is_minimal_basis(&anti, &family).unwrap(),
            BasisVerdict::NotMinimal {
                union: vec![0, 1],
                parts: vec![vec![0], vec![1]],
            }
        );
    }

    #[test]
    fn family_missing_an_upset_is_not_a_basis() {
        let chain = WindowPoset::chain(3);
        let verdict = is_minimal_basis(&chain, &[vec![2], vec![0, 1, 2]]).unwrap();
        assert_eq!(verdict, BasisVerdict::NotABasis { missing_upset_of: 1 });
    }

    #[test]
    fn etale_examples() {
        let chain = WindowPoset::chain(3);
        assert!(is_etale(&MonotoneMap::identity(&chain)).is_ok());

        // two disjoint 3-chains onto one 3-chain
        let two = WindowPoset::from_relation(
            (0..6).map(|i| i.to_string()).collect(),
            &[(0, 1), (1, 2), (3, 4), (4, 5)],
        )
        .unwrap();
        let fold = MonotoneMap::new(&two, &chain, vec![0, 1, 2, 0, 1, 2]).unwrap();
        assert!(is_etale(&fold).is_ok());

        let short = WindowPoset::chain(2);
        let point = WindowPoset::chain(1);
        let collapse = MonotoneMap::new(&short, &point, vec![0, 0]).unwrap();
        assert_eq!(is_etale(&collapse), Err(0));
    }

    #[test]
    fn non_monotone_maps_are_rejected() {
        let chain = WindowPoset::chain(2);
        assert!(MonotoneMap::new(&chain, &chain, vec![1, 0]).is_err());
    }

    #[test]
    fn irreducible_examples() {
        let chain = WindowPoset::chain(3);
        let sets = irreducible_closed_sets(&chain).unwrap();
        assert_eq!(sets.len(), 3);
        assert_eq!(sets.iter().cloned().collect::<BTreeSet<_>>(), brute_irreducible(&chain));

        let anti = WindowPoset::antichain(&["a", "b"]);
        assert_eq!(irreducible_closed_sets(&anti).unwrap(), vec![vec![0], vec![1]]);

        let d = diamond();
        assert_eq!(irreducible_closed_sets(&d).unwrap().len(), 4);
        assert_eq!(brute_irreducible(&d).len(), 4);
    }

    #[test]
    fn covers_of_diamond() {
        assert_eq!(diamond().covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
