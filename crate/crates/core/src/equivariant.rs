//! Group actions on window posets, the site category with
//! `Hom(p, q) = {g : p·g >= q}`, endomorphism monoids of basic opens and
//! transitivity of the action on the basis `{↑x}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::coset::CosetPoset;
use crate::error::{Error, Result};
use crate::group::{ball, Group, GroupDescriptor};
use crate::poset::{is_minimal_basis, BasisVerdict, WindowPoset};
use crate::sample::Sampler;

/// Largest `|elements|² · |nodes|` for which the action law is checked on
/// every pair at construction; above it a seeded sample of pairs is used.
const EXHAUSTIVE_LAW_CHECK: usize = 4_000_000;

/// A right action of `G` on a window poset, tabulated for a finite list of
/// group elements. `act(x, g)` is `None` when `g` is not tabulated or when
/// `x·g` leaves the window.
#[derive(Clone, Debug)]
pub struct GroupActionOnPoset<G: Group> {
    group: G,
    poset: WindowPoset,
    elements: Vec<G::Elem>,
    index: HashMap<G::Elem, usize>,
    table: Vec<Vec<Option<usize>>>,
}

impl<G: Group> GroupActionOnPoset<G> {
    /// Tabulates `act` and checks the action axioms wherever all values are
    /// defined: the identity acts trivially, each element is monotone, and
    /// `(x·g)·h = x·(gh)`.
    pub fn new(
        group: G,
        poset: WindowPoset,
        elements: Vec<G::Elem>,
        mut act: impl FnMut(usize, &G::Elem) -> Option<usize>,
    ) -> Result<Self> {
        let n = poset.len();
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let index: HashMap<G::Elem, usize> = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let table: Vec<Vec<Option<usize>>> = elements
            .iter()
            .map(|g| {
                (0..n)
                    .map(|x| act(x, g))
                    .map(|y| y.filter(|&y| y < n))
                    .collect()
            })
            .collect();
        let action = GroupActionOnPoset {
            group,
            poset,
            elements,
            index,
            table,
        };
        action.check_axioms()?;
        Ok(action)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.poset.len();
        let id = self.group.identity();
        let Some(&e) = self.index.get(&id) else {
            return Err(Error::usage("the tabulated elements must include the identity"));
        };
        if let Some(x) = (0..n).find(|&x| self.table[e][x] != Some(x)) {
            return Err(Error::usage(format!("identity moves node {}", self.poset.name(x))));
        }
        let strict = self.poset.strict_pairs();
        for (gi, g) in self.elements.iter().enumerate() {
            for &(x, y) in &strict {
                if let (Some(a), Some(b)) = (self.table[gi][x], self.table[gi][y]) {
                    if !self.poset.leq(a, b) {
                        return Err(Error::usage(format!(
                            "{g} is not monotone: {} <= {} but images are not",
                            self.poset.name(x),
                            self.poset.name(y)
                        )));
                    }
                }
            }
        }
        let m = self.elements.len();
        let pairs: Vec<(usize, usize)> = if m * m * n.max(1) <= EXHAUSTIVE_LAW_CHECK {
            (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).collect()
        } else {
            let mut sampler = Sampler::default();
            let limit = (EXHAUSTIVE_LAW_CHECK / n.max(1)).max(1);
            let all: Vec<usize> = (0..m).collect();
            let left = sampler.pick(&all, (limit as f64).sqrt() as usize + 1);
            let right = sampler.pick(&all, (limit as f64).sqrt() as usize + 1);
            left.iter().flat_map(|&a| right.iter().map(move |&b| (a, b))).collect()
        };
        for (a, b) in pairs {
            let gh = self.group.compose(&self.elements[a], &self.elements[b]);
            let Some(&c) = self.index.get(&gh) else { continue };
            for x in 0..n {
                let Some(y) = self.table[a][x] else { continue };
                let (Some(lhs), Some(rhs)) = (self.table[b][y], self.table[c][x]) else {
                    continue;
                };
                if lhs != rhs {
                    return Err(Error::usage(format!(
                        "not a right action: ({}·{})·{} != {}·({})",
                        self.poset.name(x),
                        self.elements[a],
                        self.elements[b],
                        self.poset.name(x),
                        gh
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn poset(&self) -> &WindowPoset {
        &self.poset
    }

    pub fn elements(&self) -> &[G::Elem] {
        &self.elements
    }

    pub fn is_tabulated(&self, g: &G::Elem) -> bool {
        self.index.contains_key(g)
    }

    /// `x · g`.
    pub fn act(&self, x: usize, g: &G::Elem) -> Option<usize> {
        self.index.get(g).and_then(|&i| self.table[i][x])
    }

    /// Nodes whose image is defined and interior for every tabulated element.
    pub fn is_total(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(Option::is_some))
    }
}

/// The action of `Z` on a materialized coset poset by right
/// multiplication, tabulated on `ball(radius)`.
pub fn coset_action(poset: &CosetPoset, radius: u32) -> Result<GroupActionOnPoset<GroupDescriptor>> {
    let desc = poset.spec().descriptor();
    let elements = ball(desc, radius)?;
    GroupActionOnPoset::new(desc, poset.poset().clone(), elements, |x, g| poset.act(x, g))
}

/// The site category: objects are nodes, `Hom(p, q)` the tabulated `g`
/// with `p·g >= q`. A morphism `f: p → q` followed by `g: q → r` composes
/// to `fg`, the product in `G^op` of `g` and `f`.
pub struct SiteCategory<'a, G: Group> {
    action: &'a GroupActionOnPoset<G>,
}

impl<'a, G: Group> SiteCategory<'a, G> {
    pub fn new(action: &'a GroupActionOnPoset<G>) -> Self {
        SiteCategory { action }
    }

    pub fn hom(&self, p: usize, q: usize) -> Vec<G::Elem> {
        hom_set(self.action, p, q)
    }

    /// `g ∘ f` for `f: p → q`, `g: q → r`.
    pub fn compose(&self, g: &G::Elem, f: &G::Elem) -> G::Elem {
        self.action.group().compose(f, g)
    }

    pub fn identity(&self) -> G::Elem {
        self.action.group().identity()
    }
}

/// `Hom(p, q) = {g : p·g >= q}` among the tabulated elements.
pub fn hom_set<G: Group>(action: &GroupActionOnPoset<G>, p: usize, q: usize) -> Vec<G::Elem> {
    action
        .elements()
        .iter()
        .filter(|g| action.act(p, g).is_some_and(|pg| action.poset().leq(q, pg)))
        .cloned()
        .collect()
}

/// The monoid of `↑p`: tabulated `g` with `p·g >= p`. With this orientation
/// the translation action of `ℤ` on itself gives `ℕ`, and the coset poset
/// of `N` gives `N` itself at the identity class.
///
/// Fails with a window error if a product of two members that is tabulated
/// and defined at `p` is not a member.
pub fn endo_monoid<G: Group>(action: &GroupActionOnPoset<G>, p: usize) -> Result<Vec<G::Elem>> {
    let members = hom_set(action, p, p);
    let set: BTreeSet<&G::Elem> = members.iter().collect();
    for a in &members {
        for b in &members {
            let ab = action.group().compose(a, b);
            if action.act(p, &ab).is_some() && !set.contains(&ab) {
                return Err(Error::window(format!(
                    "endomorphisms of {} not closed: {a}·{b} = {ab}",
                    action.poset().name(p)
                )));
            }
        }
    }
    Ok(members)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub transitive: bool,
    /// Interior nodes `(x, y)` with no tabulated `g` taking `↑x` to `↑y`.
    pub witness: Option<(usize, usize)>,
    pub basis: BasisVerdict,
}

impl fmt::Display for TransitivityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "transitive within window: {}; minimal basis: {}",
            self.transitive,
            self.basis.passes()
        )?;
        if let Some((x, y)) = self.witness {
            write!(f, "; no element moves {x} to {y}")?;
        }
        Ok(())
    }
}

/// Whether the tabulated elements move every interior `↑x` onto every
/// interior `↑y` (`↑x · g = ↑(x·g)`), and whether `{↑x}` is a minimal basis.
pub fn check_transitive_basis_action<G: Group>(action: &GroupActionOnPoset<G>) -> Result<TransitivityReport> {
    let poset = action.poset();
    let interior = poset.interior_nodes();
    let mut reach: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); poset.len()];
    for g in action.elements() {
        for &x in &interior {
            if let Some(y) = action.act(x, g) {
                reach[x].insert(y);
            }
        }
    }
    let witness = interior
        .iter()
        .flat_map(|&x| interior.iter().map(move |&y| (x, y)))
        .find(|&(x, y)| !reach[x].contains(&y));
    let family: Vec<Vec<usize>> = (0..poset.len()).map(|x| poset.up_set(x)).collect();
    Ok(TransitivityReport {
        transitive: witness.is_none(),
        witness,
        basis: is_minimal_basis(poset, &family)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupElem, Perm, SymmetricGroup};

    fn int_line(lo: i64, hi: i64) -> WindowPoset {
        let names = (lo..=hi).map(|v| v.to_string()).collect();
        WindowPoset::from_fn(names, |a, b| a <= b).unwrap()
    }

    fn translation(lo: i64, hi: i64, radius: u32) -> GroupActionOnPoset<GroupDescriptor> {
        let desc = GroupDescriptor::int(1).unwrap();
        let n = (hi - lo + 1) as usize;
        GroupActionOnPoset::new(desc, int_line(lo, hi), ball(desc, radius).unwrap(), |x, g| {
            let y = x as i64 + g.coords().unwrap()[0];
            (0..n as i64).contains(&y).then_some(y as usize)
        })
        .unwrap()
    }

    fn values(v: &[GroupElem]) -> Vec<i64> {
        v.iter().map(|g| g.coords().unwrap()[0]).collect()
    }

    #[test]
    fn translation_endomorphisms_are_the_naturals() {
        let a = translation(-10, 10, 5);
        let zero = a.poset().index_of("0").unwrap();
        assert_eq!(values(&endo_monoid(&a, zero).unwrap()), vec![0, 1, 2, 3, 4, 5]);
        // Hom(0, 2) = {g : 0 + g >= 2}
        let two = a.poset().index_of("2").unwrap();
        assert_eq!(values(&hom_set(&a, zero, two)), vec![2, 3, 4, 5]);
    }

    #[test]
    fn site_composition_is_multiplication_in_the_opposite_group() {
        let a = translation(-10, 10, 5);
        let c = SiteCategory::new(&a);
        let p = a.poset().index_of("0").unwrap();
        let q = a.poset().index_of("1").unwrap();
        let r = a.poset().index_of("3").unwrap();
        for f in c.hom(p, q) {
            for g in c.hom(q, r) {
                let gf = c.compose(&g, &f);
                if a.is_tabulated(&gf) {
                    assert!(c.hom(p, r).contains(&gf));
                }
            }
        }
        assert!(c.hom(p, p).contains(&c.identity()));
    }

    #[test]
    fn trivial_group_on_a_point() {
        let desc = GroupDescriptor::int(1).unwrap();
        let a = GroupActionOnPoset::new(desc, WindowPoset::chain(1), vec![desc.identity()], |x, _| Some(x)).unwrap();
        assert_eq!(hom_set(&a, 0, 0), vec![desc.identity()]);
        assert!(check_transitive_basis_action(&a).unwrap().transitive);
    }

    #[test]
    fn parity_action_on_two_points() {
        let desc = GroupDescriptor::int(1).unwrap();
        let a = GroupActionOnPoset::new(desc, WindowPoset::antichain(&["a", "b"]), ball(desc, 4).unwrap(), |x, g| {
            Some((x + g.coords().unwrap()[0].rem_euclid(2) as usize) % 2)
        })
        .unwrap();
        assert_eq!(values(&hom_set(&a, 0, 1)), vec![-3, -1, 1, 3]);
        assert_eq!(values(&endo_monoid(&a, 0).unwrap()), vec![-4, -2, 0, 2, 4]);
    }

    #[test]
    fn symmetric_group_stabilizer_has_order_two() {
        let s3 = SymmetricGroup { degree: 3 };
        let elements = s3.elements();
        let a = GroupActionOnPoset::new(s3, WindowPoset::antichain(&["1", "2", "3"]), elements, |x, g: &Perm| {
            Some(g.apply(x))
        })
        .unwrap();
        let stab = endo_monoid(&a, 0).unwrap();
        assert_eq!(stab.len(), 2);
        assert!(stab.iter().all(|g| g.apply(0) == 0));
        assert!(check_transitive_basis_action(&a).unwrap().transitive);
    }

    #[test]
    fn transitivity_examples() {
        let a = translation(-6, 6, 12);
        let report = check_transitive_basis_action(&a).unwrap();
        assert!(report.transitive);
        assert!(report.basis.passes());

        // two copies of the line, translated componentwise
        let desc = GroupDescriptor::int(1).unwrap();
        let names: Vec<String> = (0..2).flat_map(|c| (-3..=3).map(move |v| format!("{c}:{v}"))).collect();
        let two = WindowPoset::from_fn(names, |a, b| a / 7 == b / 7 && a <= b).unwrap();
        let a = GroupActionOnPoset::new(desc, two, ball(desc, 6).unwrap(), |x, g| {
            let y = (x % 7) as i64 + g.coords().unwrap()[0];
            (0..7).contains(&y).then(|| x / 7 * 7 + y as usize)
        })
        .unwrap();
        let report = check_transitive_basis_action(&a).unwrap();
        assert!(!report.transitive);
        let (x, y) = report.witness.unwrap();
        assert_ne!(x / 7, y / 7);

        let a = GroupActionOnPoset::new(desc, WindowPoset::chain(2), vec![desc.identity()], |x, _| Some(x)).unwrap();
        assert_eq!(check_transitive_basis_action(&a).unwrap().witness, Some((0, 1)));
    }

    #[test]
    fn conjugate_points_have_conjugate_monoids() {
        let a = translation(-10, 10, 4);
        let desc = GroupDescriptor::int(1).unwrap();
        let p = a.poset().index_of("-2").unwrap();
        let g = GroupElem::int(3);
        let pg = a.act(p, &g).unwrap();
        let mp: BTreeSet<GroupElem> = endo_monoid(&a, p).unwrap().into_iter().collect();
        let mpg: BTreeSet<GroupElem> = endo_monoid(&a, pg).unwrap().into_iter().collect();
        let conj: BTreeSet<GroupElem> = mp.iter().map(|f| desc.compose(&desc.inverse(&g), &desc.compose(f, &g))).collect();
        assert_eq!(conj, mpg);
    }

    #[test]
    fn non_actions_are_rejected() {
        let desc = GroupDescriptor::int(1).unwrap();
        // reflection is not monotone
        let err = GroupActionOnPoset::new(desc, WindowPoset::chain(3), vec![desc.identity(), GroupElem::int(1)], |x, g| {
            Some(if g.is_identity() { x } else { 2 - x })
        });
        assert!(err.is_err());
    }
}
