//! Cosets `N^× \ Z` of the unit group, ordered by divisibility in `N` and
//! acted on by right multiplication.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElem, Window, DEFAULT_ELEMENT_CAP};
use crate::monoid::{unit_group, QuotientMonoid, SubmonoidSpec, UNIT_SEARCH_RADIUS};
use crate::poset::{NodeLabel, WindowPoset};
use crate::sample::Sampler;

/// The coset space without a materialized window: classes are named by
/// their canonical representative `σ(p)`, the least element of the unit
/// orbit. Needs a finite unit group.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    spec: SubmonoidSpec,
    units: Vec<GroupElem>,
    window: Window,
    depth: u32,
    depth_members: Vec<GroupElem>,
}

impl CosetSpace {
    pub fn new(spec: SubmonoidSpec, units: Vec<GroupElem>, window: Window, depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::usage("interior depth must be at least 1"));
        }
        if units.is_empty() {
            return Err(Error::usage("unit group must contain the identity"));
        }
        let depth_members = spec.members(depth)?;
        Ok(CosetSpace {
            spec,
            units,
            window,
            depth,
            depth_members,
        })
    }

    pub fn for_monoid(m: &QuotientMonoid, window: Window, depth: u32) -> Result<Self> {
        CosetSpace::new(m.spec().clone(), m.units().to_vec(), window, depth)
    }

    pub fn spec(&self) -> &SubmonoidSpec {
        &self.spec
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.spec.descriptor()
    }

    pub fn units(&self) -> &[GroupElem] {
        &self.units
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `N ∩ ball(depth)`, the multipliers used to certify interior nodes.
    pub fn depth_members(&self) -> &[GroupElem] {
        &self.depth_members
    }

    /// `σ([g])`.
    pub fn canon(&self, g: &GroupElem) -> GroupElem {
        self.units.iter().map(|u| u.mul(g)).min().expect("unit group is nonempty")
    }

    /// The unit `u` with `g = u σ([g])`.
    pub fn unit_part(&self, g: &GroupElem) -> GroupElem {
        g.mul(&self.canon(g).inverse())
    }

    /// `[p] <= [q]`, i.e. `q p⁻¹ ∈ N`.
    pub fn leq(&self, p: &GroupElem, q: &GroupElem) -> bool {
        self.spec.contains(&q.mul(&p.inverse()))
    }

    /// `[p · g]` as a canonical representative.
    pub fn act(&self, p: &GroupElem, g: &GroupElem) -> GroupElem {
        self.canon(&p.mul(g))
    }

    pub fn in_window(&self, p: &GroupElem) -> bool {
        self.window.contains(p)
    }

    /// Inside the window together with every `a p`, `a ∈ N ∩ ball(depth)`.
    pub fn is_interior(&self, p: &GroupElem) -> bool {
        self.in_window(p) && self.depth_members.iter().all(|a| self.in_window(&a.mul(p)))
    }

    /// Canonical representatives of every class meeting the window.
    pub fn points(&self) -> Result<Vec<GroupElem>> {
        let mut out: Vec<GroupElem> = self
            .window
            .elements(self.descriptor(), DEFAULT_ELEMENT_CAP)?
            .into_iter()
            .filter(|g| self.canon(g) == *g)
            .collect();
        out.sort();
        Ok(out)
    }

    /// Interior classes; all of them when the window is small enough,
    /// otherwise a seeded sample of `sampler.budget()` of them.
    pub fn interior_points(&self, sampler: &mut Sampler) -> Result<Vec<GroupElem>> {
        let size = match self.window {
            Window::Ball(r) => self.descriptor().ball_size(r),
            Window::Range(lo, hi) => {
                let side = (hi - lo + 1).max(0) as u128;
                side.saturating_pow(self.descriptor().dim().unwrap_or(1))
                    .saturating_mul(self.descriptor().modulus().unwrap_or(1) as u128)
            }
        };
        if size <= (sampler.budget() as u128).saturating_mul(4).min(DEFAULT_ELEMENT_CAP as u128) {
            let all: Vec<GroupElem> = self.points()?.into_iter().filter(|p| self.is_interior(p)).collect();
            return Ok(sampler.pick_budget(&all));
        }
        let Window::Ball(r) = self.window else {
            return Err(Error::Resource {
                cap: DEFAULT_ELEMENT_CAP,
                needed: size,
                what: format!("window {} of {}", self.window, self.descriptor()),
            });
        };
        let want = sampler.budget();
        let mut found = std::collections::BTreeSet::new();
        let mut attempts = 0usize;
        while found.len() < want && attempts < want * 200 {
            attempts += 1;
            let g = self.descriptor().random_element(r, sampler.rng());
            let p = self.canon(&g);
            if self.is_interior(&p) {
                found.insert(p);
            }
        }
        Ok(found.into_iter().collect())
    }

    /// `{[a p] : a ∈ N ∩ ball(depth)}`, the part of `↑p` used by
    /// monotonicity checks.
    pub fn up_within_depth(&self, p: &GroupElem) -> Vec<GroupElem> {
        let mut out: Vec<GroupElem> = self.depth_members.iter().map(|a| self.canon(&a.mul(p))).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// The coset poset materialized on a window.
#[derive(Clone, Debug)]
pub struct CosetPoset {
    spec: SubmonoidSpec,
    units: Option<Vec<GroupElem>>,
    window: Window,
    depth: u32,
    reps: Vec<GroupElem>,
    orbits: Vec<Vec<GroupElem>>,
    node_of: HashMap<GroupElem, usize>,
    poset: WindowPoset,
}

/// Builds `N^× \ Z` on `window`. When the unit group is finite the nodes are
/// unit orbits named by their least element. When it is not (for instance
/// `N = Z`), classes are formed by mutual divisibility inside the window
/// and the identity class is named by the identity.
pub fn build_coset_poset(spec: &SubmonoidSpec, window: Window, depth: u32) -> Result<CosetPoset> {
    match unit_group(spec, UNIT_SEARCH_RADIUS) {
        Ok(units) => CosetPoset::with_units(spec.clone(), units, window, depth),
        Err(Error::Window(_)) => CosetPoset::by_mutual_divisibility(spec.clone(), window, depth),
        Err(e) => Err(e),
    }
}

impl CosetPoset {
    pub fn for_monoid(m: &QuotientMonoid, window: Window, depth: u32) -> Result<Self> {
        CosetPoset::with_units(m.spec().clone(), m.units().to_vec(), window, depth)
    }

    pub fn with_units(spec: SubmonoidSpec, units: Vec<GroupElem>, window: Window, depth: u32) -> Result<Self> {
        let space = CosetSpace::new(spec.clone(), units.clone(), window, depth)?;
        let elements = window.elements(spec.descriptor(), DEFAULT_ELEMENT_CAP)?;
        let mut by_rep: HashMap<GroupElem, Vec<GroupElem>> = HashMap::new();
        for g in elements {
            by_rep.entry(space.canon(&g)).or_default().push(g);
        }
        let mut classes: Vec<(GroupElem, Vec<GroupElem>)> = by_rep.into_iter().collect();
        classes.sort();
        let (reps, mut orbits): (Vec<GroupElem>, Vec<Vec<GroupElem>>) = classes.into_iter().unzip();
        for orbit in &mut orbits {
            orbit.sort();
        }
        CosetPoset::assemble(spec, Some(units), window, depth, reps, orbits)
    }

    fn by_mutual_divisibility(spec: SubmonoidSpec, window: Window, depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::usage("interior depth must be at least 1"));
        }
        let elements = window.elements(spec.descriptor(), DEFAULT_ELEMENT_CAP)?;
        let mut classes: Vec<Vec<GroupElem>> = Vec::new();
        'next: for g in elements {
            for class in classes.iter_mut() {
                let h = &class[0];
                if spec.contains(&g.mul(&h.inverse())) && spec.contains(&h.mul(&g.inverse())) {
                    class.push(g);
                    continue 'next;
                }
            }
            classes.push(vec![g]);
        }
        let identity = spec.descriptor().identity();
        let mut named: Vec<(GroupElem, Vec<GroupElem>)> = classes
            .into_iter()
            .map(|mut c| {
                c.sort();
                let rep = if c.contains(&identity) { identity.clone() } else { c[0].clone() };
                (rep, c)
            })
            .collect();
        named.sort();
        let (reps, orbits) = named.into_iter().unzip();
        CosetPoset::assemble(spec, None, window, depth, reps, orbits)
    }

    fn assemble(
        spec: SubmonoidSpec,
        units: Option<Vec<GroupElem>>,
        window: Window,
        depth: u32,
        reps: Vec<GroupElem>,
        orbits: Vec<Vec<GroupElem>>,
    ) -> Result<Self> {
        let mut node_of = HashMap::new();
        for (i, orbit) in orbits.iter().enumerate() {
            for g in orbit {
                node_of.insert(g.clone(), i);
            }
        }
        let names = reps.iter().map(|r| r.to_string()).collect();
        let poset = WindowPoset::from_fn(names, |a, b| spec.contains(&reps[b].mul(&reps[a].inverse())))?;
        let depth_members = spec.members(depth)?;
        let interior = reps
            .iter()
            .map(|p| depth_members.iter().all(|a| node_of.contains_key(&a.mul(p))))
            .collect();
        let labels = reps.iter().cloned().map(NodeLabel::Group).collect();
        let poset = poset.with_interior(interior).with_labels(labels);
        Ok(CosetPoset {
            spec,
            units,
            window,
            depth,
            reps,
            orbits,
            node_of,
            poset,
        })
    }

    pub fn spec(&self) -> &SubmonoidSpec {
        &self.spec
    }

    /// The unit group, when it is finite.
    pub fn units(&self) -> Option<&[GroupElem]> {
        self.units.as_deref()
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn poset(&self) -> &WindowPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `σ(p)`.
    pub fn rep(&self, p: usize) -> &GroupElem {
        &self.reps[p]
    }

    pub fn reps(&self) -> &[GroupElem] {
        &self.reps
    }

    pub fn orbit(&self, p: usize) -> &[GroupElem] {
        &self.orbits[p]
    }

    /// The node containing `g`, if `g` lies in the window.
    pub fn node_of(&self, g: &GroupElem) -> Option<usize> {
        self.node_of.get(g).copied()
    }

    pub fn identity_node(&self) -> Option<usize> {
        self.node_of(&self.spec.descriptor().identity())
    }

    /// `p · g = [σ(p) g]`, or `None` when it leaves the window.
    pub fn act(&self, p: usize, g: &GroupElem) -> Option<usize> {
        self.node_of(&self.reps[p].mul(g))
    }

    /// The implicit coset space with the same data, when units are finite.
    pub fn space(&self) -> Option<CosetSpace> {
        let units = self.units.clone()?;
        CosetSpace::new(self.spec.clone(), units, self.window, self.depth).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ball;
    use crate::monoid::Oracle;

    fn nat() -> SubmonoidSpec {
        SubmonoidSpec::new(GroupDescriptor::int(1).unwrap(), Oracle::Nonneg, None).unwrap()
    }

    #[test]
    fn naturals_give_the_integer_chain() {
        let p = build_coset_poset(&nat(), Window::Range(-3, 3), 1).unwrap();
        assert_eq!(p.len(), 7);
        assert_eq!(p.rep(0), &GroupElem::int(-3));
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(p.poset().leq(a, b), a <= b);
            }
        }
        let interior: Vec<bool> = (0..7).map(|x| p.poset().is_interior(x)).collect();
        assert_eq!(interior, vec![true, true, true, true, true, true, false]);
        assert_eq!(p.identity_node(), Some(3));
        assert_eq!(p.act(3, &GroupElem::int(2)), Some(5));
        assert_eq!(p.act(3, &GroupElem::int(4)), None);
    }

    #[test]
    fn free_monoid_order_is_divisibility_on_the_left() {
        let desc = GroupDescriptor::free(2).unwrap();
        let spec = SubmonoidSpec::new(desc, Oracle::PositiveLetters, None).unwrap();
        let p = build_coset_poset(&spec, Window::Ball(2), 1).unwrap();
        assert_eq!(p.len(), 17);
        // oracle: h >= g iff the reduced word of h g^-1 has no inverse letters
        let words = ball(desc, 2).unwrap();
        for g in &words {
            for h in &words {
                let q = h.mul(&g.inverse());
                let expected = q.letters().unwrap().iter().all(|l| !l.inverse);
                let (a, b) = (p.node_of(g).unwrap(), p.node_of(h).unwrap());
                assert_eq!(p.poset().leq(a, b), expected, "{g} <= {h}");
            }
        }
    }

    #[test]
    fn whole_group_collapses_to_one_node() {
        let desc = GroupDescriptor::int(1).unwrap();
        let gens = vec![GroupElem::int(1), GroupElem::int(-1)];
        let spec = SubmonoidSpec::new(
            desc,
            Oracle::Generated {
                generators: gens.clone(),
                depth: 12,
            },
            Some(gens),
        )
        .unwrap();
        let p = build_coset_poset(&spec, Window::Range(-3, 3), 1).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.rep(0).is_identity());
        assert!(p.units().is_none());
    }

    #[test]
    fn cyclic_units_pair_up_residues() {
        let desc = GroupDescriptor::int_cyclic(1, 2).unwrap();
        let spec = SubmonoidSpec::new(desc, Oracle::Nonneg, None).unwrap();
        let p = build_coset_poset(&spec, Window::Ball(2), 1).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.orbit(2).len(), 2);
        assert_eq!(p.rep(p.identity_node().unwrap()), &desc.identity());
        let space = p.space().unwrap();
        let g = GroupElem::parse(desc, "(1);1").unwrap();
        assert_eq!(space.canon(&g).to_string(), "(1);0");
        assert_eq!(space.unit_part(&g).to_string(), "(0);1");
    }
}
