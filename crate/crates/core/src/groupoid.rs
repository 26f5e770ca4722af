//! Alexandrov groupoids: the groupoid of a congruence `(N, Z, ~)` with
//! objects `Z/R₀` and arrows `(Z×Z)/R₁`, action groupoids `P ⋊ Z`, axiom
//! and monotonicity checks, basic opens and the induced action of an
//! `N`-set on `S × G₁`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use crate::coset::CosetSpace;
use crate::equivariant::GroupActionOnPoset;
use crate::error::{Error, Result};
use crate::group::{Group, GroupDescriptor, GroupElem, Window, DEFAULT_ELEMENT_CAP};
use crate::monoid::{validate_mset, MSet, QuotientMonoid};
use crate::report::{Report, Tally};
use crate::sample::Sampler;

const MODULE: &str = "alex_groupoid";

/// Values that can name objects and arrows.
pub trait Item: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display {}
impl<T: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display> Item for T {}

/// A groupoid object in posets, seen through a window. Structure maps
/// return `None` when their value cannot be represented in the window;
/// checks skip such samples and count them.
pub trait Groupoid {
    type Obj: Item;
    type Arr: Item;

    fn source(&self, f: &Self::Arr) -> Self::Obj;
    fn target(&self, f: &Self::Arr) -> Option<Self::Obj>;
    fn unit(&self, x: &Self::Obj) -> Self::Arr;
    fn inverse(&self, f: &Self::Arr) -> Option<Self::Arr>;
    /// `μ(f, g)`, first `f` then `g`; `None` unless `t(f) = s(g)`.
    fn compose(&self, f: &Self::Arr, g: &Self::Arr) -> Option<Self::Arr>;
    fn obj_leq(&self, x: &Self::Obj, y: &Self::Obj) -> Result<bool>;
    fn arr_leq(&self, f: &Self::Arr, g: &Self::Arr) -> Result<bool>;

    /// Interior objects (fixed when the groupoid is built).
    fn objects(&self) -> &[Self::Obj];
    /// Interior arrows, at most `sampler.budget()` of them.
    fn arrows(&self, sampler: &mut Sampler) -> Result<Vec<Self::Arr>>;
    /// Interior arrows out of `x`, at most `sampler.branch()` of them.
    fn arrows_from(&self, x: &Self::Obj, sampler: &mut Sampler) -> Result<Vec<Self::Arr>>;
    /// Objects above `x` used for monotonicity checks (includes `x`).
    fn objects_above(&self, x: &Self::Obj) -> Result<Vec<Self::Obj>>;
    /// Arrows above `f` used for monotonicity checks (includes `f`).
    fn arrows_above(&self, f: &Self::Arr) -> Result<Vec<Self::Arr>>;
}

/// An arrow named by a pair of group elements: the class of `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairArrow(pub GroupElem, pub GroupElem);

impl fmt::Display for PairArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// The groupoid of `(N, Z, ~)` on `ball(radius)`, with objects named by
/// canonical `R₀` representatives and arrows by canonical `R₁` pairs.
/// Structure maps are exact; only the interior sample is finite.
#[derive(Clone, Debug)]
pub struct MonoidGroupoid {
    monoid: QuotientMonoid,
    space: CosetSpace,
    radius: u32,
    related_depth: Vec<(GroupElem, GroupElem)>,
    objects: Vec<GroupElem>,
}

/// Builds the groupoid of `m` on `ball(radius)` with interior depth
/// `depth`. Order tests compare elements of norm up to `2·radius`, so a
/// nontrivial congruence must be stable on `ball(2·radius)`.
pub fn build_groupoid(m: &QuotientMonoid, radius: u32, depth: u32, sampler: &mut Sampler) -> Result<MonoidGroupoid> {
    if depth == 0 || depth > radius {
        return Err(Error::usage(format!("need 1 <= depth <= radius, got depth {depth}, radius {radius}")));
    }
    let cong = m.congruence();
    if !cong.is_stable() {
        return Err(Error::window("congruence is not stable; refusing to build"));
    }
    if !cong.is_trivial() && cong.radius() < 2 * radius {
        return Err(Error::window(format!(
            "congruence core ball({}) does not cover ball({}) needed at radius {radius}",
            cong.radius(),
            2 * radius
        )));
    }
    let space = CosetSpace::for_monoid(m, Window::Ball(radius), depth)?;
    let members = space.depth_members().to_vec();
    let mut related_depth = Vec::new();
    for a in &members {
        for b in &members {
            if m.related(a, b)? {
                related_depth.push((a.clone(), b.clone()));
            }
        }
    }
    let objects = space.interior_points(sampler)?;
    Ok(MonoidGroupoid {
        monoid: m.clone(),
        space,
        radius,
        related_depth,
        objects,
    })
}

impl MonoidGroupoid {
    pub fn monoid(&self) -> &QuotientMonoid {
        &self.monoid
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn depth(&self) -> u32 {
        self.space.depth()
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.monoid.descriptor()
    }

    /// Canonical object of `i`.
    pub fn object(&self, i: &GroupElem) -> GroupElem {
        self.space.canon(i)
    }

    /// Canonical arrow of `(i, j)`: the least `(ui, vj)` over unit pairs
    /// `u ~ v`.
    pub fn pair_arrow(&self, i: &GroupElem, j: &GroupElem) -> PairArrow {
        self.monoid
            .unit_pairs()
            .iter()
            .map(|(u, v)| PairArrow(u.mul(i), v.mul(j)))
            .min()
            .expect("unit pairs contain (1,1)")
    }

    /// Composite of two arbitrary representatives `(i, j)` and `(j', k)`
    /// with `j' = wj` for a unit `w`: the class of `(i, w⁻¹k)`.
    pub fn compose_reps(&self, f: &PairArrow, g: &PairArrow) -> Option<PairArrow> {
        let w = g.0.mul(&f.1.inverse());
        if !self.monoid.is_unit(&w) {
            return None;
        }
        Some(self.pair_arrow(&f.0, &w.inverse().mul(&g.1)))
    }

    pub fn is_interior_obj(&self, x: &GroupElem) -> bool {
        self.space.is_interior(x)
    }

    pub fn is_interior_arr(&self, f: &PairArrow) -> bool {
        self.space.is_interior(&self.object(&f.0)) && self.space.is_interior(&self.object(&f.1))
    }

    /// Whether `[i] >= [z]` (membership in `U_z`).
    pub fn in_u(&self, z: &GroupElem, i: &GroupElem) -> bool {
        self.monoid.contains(&i.mul(&z.inverse()))
    }

    /// Whether `[(i,j)] ∈ Π_{(x,y)}`: `i = ax`, `j = by` with `a ~ b`.
    pub fn in_pi(&self, anchor: &PairArrow, f: &PairArrow) -> Result<bool> {
        let a = f.0.mul(&anchor.0.inverse());
        let b = f.1.mul(&anchor.1.inverse());
        if !(self.monoid.contains(&a) && self.monoid.contains(&b)) {
            return Ok(false);
        }
        self.monoid.related(&a, &b)
    }

    /// Related pairs `a ~ b` of `N`: every pair within the interior depth
    /// and every nontrivially related pair of the stable core, in both
    /// orders.
    pub fn related_offsets(&self) -> Result<Vec<(GroupElem, GroupElem)>> {
        let mut related = self.related_depth.clone();
        for (a, b) in self.monoid.congruence().core_pairs(self.monoid.spec())? {
            related.push((b.clone(), a.clone()));
            related.push((a, b));
        }
        related.sort();
        related.dedup();
        Ok(related)
    }

    /// Arrows `(ai, bj)` over related offsets whose endpoints stay in the
    /// window.
    pub fn arrows_above_in_window(&self, f: &PairArrow, related: &[(GroupElem, GroupElem)]) -> Vec<PairArrow> {
        let mut out: Vec<PairArrow> = related
            .iter()
            .map(|(a, b)| (a.mul(&f.0), b.mul(&f.1)))
            .filter(|(i, j)| self.space.in_window(&self.object(i)) && self.space.in_window(&self.object(j)))
            .map(|(i, j)| self.pair_arrow(&i, &j))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every object in the window.
    pub fn window_objects(&self) -> Result<Vec<GroupElem>> {
        self.space.points()
    }

    /// Every arrow whose endpoints lie in the window.
    pub fn window_arrows(&self) -> Result<Vec<PairArrow>> {
        let points = self.window_objects()?;
        let needed = (points.len() as u128).pow(2) * self.monoid.units().len() as u128;
        if needed > DEFAULT_ELEMENT_CAP as u128 {
            return Err(Error::Resource {
                cap: DEFAULT_ELEMENT_CAP,
                needed,
                what: "arrows of the groupoid window".into(),
            });
        }
        let mut out = BTreeSet::new();
        for x in &points {
            for y in &points {
                for v in self.monoid.units() {
                    out.insert(self.pair_arrow(x, &v.mul(y)));
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

impl Groupoid for MonoidGroupoid {
    type Obj = GroupElem;
    type Arr = PairArrow;

    fn source(&self, f: &PairArrow) -> GroupElem {
        self.object(&f.0)
    }

    fn target(&self, f: &PairArrow) -> Option<GroupElem> {
        Some(self.object(&f.1))
    }

    fn unit(&self, x: &GroupElem) -> PairArrow {
        self.pair_arrow(x, x)
    }

    fn inverse(&self, f: &PairArrow) -> Option<PairArrow> {
        Some(self.pair_arrow(&f.1, &f.0))
    }

    fn compose(&self, f: &PairArrow, g: &PairArrow) -> Option<PairArrow> {
        self.compose_reps(f, g)
    }

    fn obj_leq(&self, x: &GroupElem, y: &GroupElem) -> Result<bool> {
        Ok(self.space.leq(x, y))
    }

    fn arr_leq(&self, f: &PairArrow, g: &PairArrow) -> Result<bool> {
        let a = g.0.mul(&f.0.inverse());
        let b = g.1.mul(&f.1.inverse());
        if !(self.monoid.contains(&a) && self.monoid.contains(&b)) {
            return Ok(false);
        }
        self.monoid.related(&a, &b)
    }

    fn objects(&self) -> &[GroupElem] {
        &self.objects
    }

    fn arrows(&self, sampler: &mut Sampler) -> Result<Vec<PairArrow>> {
        let units = self.monoid.units();
        let total = self.objects.len() * self.objects.len() * units.len();
        if total <= sampler.budget().saturating_mul(4) {
            let mut all = BTreeSet::new();
            for x in &self.objects {
                for y in &self.objects {
                    for v in units {
                        all.insert(self.pair_arrow(x, &v.mul(y)));
                    }
                }
            }
            let all: Vec<PairArrow> = all.into_iter().collect();
            return Ok(sampler.pick_budget(&all));
        }
        let mut out = BTreeSet::new();
        let n = self.objects.len();
        let want = sampler.budget();
        let mut attempts = 0;
        while out.len() < want && attempts < want * 20 {
            attempts += 1;
            use rand::Rng;
            let rng = sampler.rng();
            let x = &self.objects[rng.random_range(0..n)];
            let y = &self.objects[rng.random_range(0..n)];
            let v = &units[rng.random_range(0..units.len())];
            out.insert(self.pair_arrow(x, &v.mul(y)));
        }
        Ok(out.into_iter().collect())
    }

    fn arrows_from(&self, x: &GroupElem, sampler: &mut Sampler) -> Result<Vec<PairArrow>> {
        let targets = sampler.pick_branch(&self.objects);
        let mut out = BTreeSet::new();
        for y in &targets {
            for v in self.monoid.units() {
                out.insert(self.pair_arrow(x, &v.mul(y)));
            }
        }
        Ok(out.into_iter().collect())
    }

    fn objects_above(&self, x: &GroupElem) -> Result<Vec<GroupElem>> {
        Ok(self.space.up_within_depth(x))
    }

    fn arrows_above(&self, f: &PairArrow) -> Result<Vec<PairArrow>> {
        let mut out: Vec<PairArrow> = self
            .related_depth
            .iter()
            .map(|(a, b)| self.pair_arrow(&a.mul(&f.0), &b.mul(&f.1)))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Groupoids whose objects and arrows are named by group elements and
/// pairs, so that the trivial-congruence comparison can be run on them.
pub trait PairGroupoid: Groupoid<Obj = GroupElem, Arr = PairArrow> {
    fn pair_arrow(&self, i: &GroupElem, j: &GroupElem) -> PairArrow;
    fn is_trivial_congruence(&self) -> bool;
}

impl PairGroupoid for MonoidGroupoid {
    fn pair_arrow(&self, i: &GroupElem, j: &GroupElem) -> PairArrow {
        MonoidGroupoid::pair_arrow(self, i, j)
    }

    fn is_trivial_congruence(&self) -> bool {
        self.monoid.congruence().is_trivial()
    }
}

/// A right action of a group on a poset, as needed to build `P ⋊ Z`.
pub trait PosetAction {
    type Point: Item;
    type Elem: Item;

    fn act(&self, p: &Self::Point, g: &Self::Elem) -> Option<Self::Point>;
    fn point_leq(&self, p: &Self::Point, q: &Self::Point) -> bool;
    fn identity(&self) -> Self::Elem;
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn interior_points(&self, sampler: &mut Sampler) -> Result<Vec<Self::Point>>;
    /// Points above `p` used for monotonicity checks (includes `p`).
    fn points_above(&self, p: &Self::Point) -> Vec<Self::Point>;
    /// Elements `z` with `p·z = q`.
    fn transporters(&self, p: &Self::Point, q: &Self::Point) -> Vec<Self::Elem>;
}

impl<G: Group> PosetAction for GroupActionOnPoset<G> {
    type Point = usize;
    type Elem = G::Elem;

    fn act(&self, p: &usize, g: &G::Elem) -> Option<usize> {
        GroupActionOnPoset::act(self, *p, g)
    }

    fn point_leq(&self, p: &usize, q: &usize) -> bool {
        self.poset().leq(*p, *q)
    }

    fn identity(&self) -> G::Elem {
        self.group().identity()
    }

    fn compose(&self, a: &G::Elem, b: &G::Elem) -> G::Elem {
        self.group().compose(a, b)
    }

    fn inverse(&self, a: &G::Elem) -> G::Elem {
        self.group().inverse(a)
    }

    fn interior_points(&self, sampler: &mut Sampler) -> Result<Vec<usize>> {
        Ok(sampler.pick_budget(&self.poset().interior_nodes()))
    }

    fn points_above(&self, p: &usize) -> Vec<usize> {
        self.poset().up_set(*p)
    }

    fn transporters(&self, p: &usize, q: &usize) -> Vec<G::Elem> {
        self.elements()
            .iter()
            .filter(|g| GroupActionOnPoset::act(self, *p, g) == Some(*q))
            .cloned()
            .collect()
    }
}

impl PosetAction for CosetSpace {
    type Point = GroupElem;
    type Elem = GroupElem;

    fn act(&self, p: &GroupElem, g: &GroupElem) -> Option<GroupElem> {
        Some(CosetSpace::act(self, p, g))
    }

    fn point_leq(&self, p: &GroupElem, q: &GroupElem) -> bool {
        self.leq(p, q)
    }

    fn identity(&self) -> GroupElem {
        self.descriptor().identity()
    }

    fn compose(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        a.mul(b)
    }

    fn inverse(&self, a: &GroupElem) -> GroupElem {
        a.inverse()
    }

    fn interior_points(&self, sampler: &mut Sampler) -> Result<Vec<GroupElem>> {
        CosetSpace::interior_points(self, sampler)
    }

    fn points_above(&self, p: &GroupElem) -> Vec<GroupElem> {
        self.up_within_depth(p)
    }

    fn transporters(&self, p: &GroupElem, q: &GroupElem) -> Vec<GroupElem> {
        let mut out: Vec<GroupElem> = self.units().iter().map(|v| p.inverse().mul(v).mul(q)).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// An arrow `(p, z): p → p·z` of `P ⋊ Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionArrow<P, E> {
    pub point: P,
    pub elem: E,
}

impl<P: fmt::Display, E: fmt::Display> fmt::Display for ActionArrow<P, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.point, self.elem)
    }
}

/// `P ⋊ Z`: `s(p,z) = p`, `t(p,z) = p·z`, `μ((p,z),(pz,z')) = (p,zz')`,
/// `e(p) = (p,1)`, `ι(p,z) = (pz,z⁻¹)`, and `(p,z) <= (p',z')` iff
/// `p <= p'` and `z = z'`.
pub struct ActionGroupoid<'a, A: PosetAction> {
    action: &'a A,
    objects: Vec<A::Point>,
}

pub fn build_action_groupoid<'a, A: PosetAction>(action: &'a A, sampler: &mut Sampler) -> Result<ActionGroupoid<'a, A>> {
    let objects = action.interior_points(sampler)?;
    Ok(ActionGroupoid { action, objects })
}

impl<A: PosetAction> ActionGroupoid<'_, A> {
    pub fn action(&self) -> &A {
        self.action
    }

    fn arrows_to(&self, p: &A::Point, targets: &[A::Point]) -> Vec<ActionArrow<A::Point, A::Elem>> {
        let mut out = Vec::new();
        for q in targets {
            for z in self.action.transporters(p, q) {
                out.push(ActionArrow {
                    point: p.clone(),
                    elem: z,
                });
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl<A: PosetAction> Groupoid for ActionGroupoid<'_, A> {
    type Obj = A::Point;
    type Arr = ActionArrow<A::Point, A::Elem>;

    fn source(&self, f: &Self::Arr) -> A::Point {
        f.point.clone()
    }

    fn target(&self, f: &Self::Arr) -> Option<A::Point> {
        self.action.act(&f.point, &f.elem)
    }

    fn unit(&self, x: &A::Point) -> Self::Arr {
        ActionArrow {
            point: x.clone(),
            elem: self.action.identity(),
        }
    }

    fn inverse(&self, f: &Self::Arr) -> Option<Self::Arr> {
        Some(ActionArrow {
            point: self.target(f)?,
            elem: self.action.inverse(&f.elem),
        })
    }

    fn compose(&self, f: &Self::Arr, g: &Self::Arr) -> Option<Self::Arr> {
        if self.target(f)? != g.point {
            return None;
        }
        Some(ActionArrow {
            point: f.point.clone(),
            elem: self.action.compose(&f.elem, &g.elem),
        })
    }

    fn obj_leq(&self, x: &A::Point, y: &A::Point) -> Result<bool> {
        Ok(self.action.point_leq(x, y))
    }

    fn arr_leq(&self, f: &Self::Arr, g: &Self::Arr) -> Result<bool> {
        Ok(f.elem == g.elem && self.action.point_leq(&f.point, &g.point))
    }

    fn objects(&self) -> &[A::Point] {
        &self.objects
    }

    fn arrows(&self, sampler: &mut Sampler) -> Result<Vec<Self::Arr>> {
        let sources = if self.objects.len().pow(2) <= sampler.budget().saturating_mul(4) {
            self.objects.clone()
        } else {
            let limit = (sampler.budget() as f64).sqrt().ceil() as usize + 1;
            sampler.pick(&self.objects, limit)
        };
        let mut all = Vec::new();
        for p in &sources {
            let targets = if self.objects.len() * sources.len() <= sampler.budget().saturating_mul(4) {
                self.objects.clone()
            } else {
                let limit = (sampler.budget() / sources.len().max(1)).max(1) * 2;
                sampler.pick(&self.objects, limit)
            };
            all.extend(self.arrows_to(p, &targets));
        }
        Ok(sampler.pick_budget(&all))
    }

    fn arrows_from(&self, x: &A::Point, sampler: &mut Sampler) -> Result<Vec<Self::Arr>> {
        let targets = sampler.pick_branch(&self.objects);
        Ok(self.arrows_to(x, &targets))
    }

    fn objects_above(&self, x: &A::Point) -> Result<Vec<A::Point>> {
        Ok(self.action.points_above(x))
    }

    fn arrows_above(&self, f: &Self::Arr) -> Result<Vec<Self::Arr>> {
        Ok(self
            .action
            .points_above(&f.point)
            .into_iter()
            .map(|p| ActionArrow {
                point: p,
                elem: f.elem.clone(),
            })
            .collect())
    }
}

/// A groupoid with one composite or one order relation deliberately
/// changed, used as a negative control for the checks.
pub struct Tampered<'a, G: Groupoid> {
    inner: &'a G,
    compose_override: Option<(G::Arr, G::Arr, G::Arr)>,
    detached: Option<G::Arr>,
}

impl<'a, G: Groupoid> Tampered<'a, G> {
    /// `μ(f, g)` is replaced by `value`.
    pub fn with_composite(inner: &'a G, f: G::Arr, g: G::Arr, value: G::Arr) -> Self {
        Tampered {
            inner,
            compose_override: Some((f, g, value)),
            detached: None,
        }
    }

    /// `f` is made incomparable with every other arrow.
    pub fn with_detached_arrow(inner: &'a G, f: G::Arr) -> Self {
        Tampered {
            inner,
            compose_override: None,
            detached: Some(f),
        }
    }
}

impl<G: Groupoid> Groupoid for Tampered<'_, G> {
    type Obj = G::Obj;
    type Arr = G::Arr;

    fn source(&self, f: &G::Arr) -> G::Obj {
        self.inner.source(f)
    }

    fn target(&self, f: &G::Arr) -> Option<G::Obj> {
        self.inner.target(f)
    }

    fn unit(&self, x: &G::Obj) -> G::Arr {
        self.inner.unit(x)
    }

    fn inverse(&self, f: &G::Arr) -> Option<G::Arr> {
        self.inner.inverse(f)
    }

    fn compose(&self, f: &G::Arr, g: &G::Arr) -> Option<G::Arr> {
        if let Some((a, b, value)) = &self.compose_override {
            if a == f && b == g {
                return Some(value.clone());
            }
        }
        self.inner.compose(f, g)
    }

    fn obj_leq(&self, x: &G::Obj, y: &G::Obj) -> Result<bool> {
        self.inner.obj_leq(x, y)
    }

    fn arr_leq(&self, f: &G::Arr, g: &G::Arr) -> Result<bool> {
        if f != g && self.detached.as_ref().is_some_and(|d| d == f || d == g) {
            return Ok(false);
        }
        self.inner.arr_leq(f, g)
    }

    fn objects(&self) -> &[G::Obj] {
        self.inner.objects()
    }

    fn arrows(&self, sampler: &mut Sampler) -> Result<Vec<G::Arr>> {
        self.inner.arrows(sampler)
    }

    fn arrows_from(&self, x: &G::Obj, sampler: &mut Sampler) -> Result<Vec<G::Arr>> {
        self.inner.arrows_from(x, sampler)
    }

    fn objects_above(&self, x: &G::Obj) -> Result<Vec<G::Obj>> {
        self.inner.objects_above(x)
    }

    fn arrows_above(&self, f: &G::Arr) -> Result<Vec<G::Arr>> {
        self.inner.arrows_above(f)
    }
}

impl<G: PairGroupoid> PairGroupoid for Tampered<'_, G> {
    fn pair_arrow(&self, i: &GroupElem, j: &GroupElem) -> PairArrow {
        self.inner.pair_arrow(i, j)
    }

    fn is_trivial_congruence(&self) -> bool {
        self.inner.is_trivial_congruence()
    }
}

/// Checks the groupoid laws and the monotonicity of `s, t, μ, ι, e` on
/// interior samples: every sampled arrow, pairs extended by up to
/// `sampler.branch()` composable arrows, and triples likewise.
pub fn groupoid_axiom_check<G: Groupoid>(g: &G, sampler: &mut Sampler) -> Result<Report> {
    let mut units = Tally::new();
    let mut unit_laws = Tally::new();
    let mut inverses = Tally::new();
    let mut ends = Tally::new();
    let mut assoc = Tally::new();
    let mut mono_s = Tally::new();
    let mut mono_t = Tally::new();
    let mut mono_iota = Tally::new();
    let mut mono_e = Tally::new();
    let mut mono_mu = Tally::new();

    for x in g.objects() {
        let e = g.unit(x);
        units.check(g.source(&e) == *x && g.target(&e).as_ref() == Some(x), || format!("e({x})={e}"));
        for y in g.objects_above(x)? {
            if g.obj_leq(x, &y)? {
                mono_e.check(g.arr_leq(&e, &g.unit(&y))?, || format!("{x}<={y}"));
            }
        }
    }

    let arrows = g.arrows(sampler)?;
    for f in &arrows {
        let s = g.source(f);
        let Some(t) = g.target(f) else {
            units.skip();
            continue;
        };
        let left = g.compose(&g.unit(&s), f);
        let right = g.compose(f, &g.unit(&t));
        unit_laws.check(left.as_ref() == Some(f) && right.as_ref() == Some(f), || format!("f={f}"));
        match g.inverse(f) {
            Some(fi) => {
                let ok = g.source(&fi) == t
                    && g.target(&fi).as_ref() == Some(&s)
                    && g.compose(f, &fi) == Some(g.unit(&s))
                    && g.compose(&fi, f) == Some(g.unit(&t));
                inverses.check(ok, || format!("f={f} inverse={fi}"));
            }
            None => inverses.skip(),
        }
        for f2 in g.arrows_above(f)? {
            if !g.arr_leq(f, &f2)? {
                continue;
            }
            mono_s.check(g.obj_leq(&s, &g.source(&f2))?, || format!("{f}<={f2}"));
            match g.target(&f2) {
                Some(t2) => mono_t.check(g.obj_leq(&t, &t2)?, || format!("{f}<={f2}")),
                None => mono_t.skip(),
            }
            match (g.inverse(f), g.inverse(&f2)) {
                (Some(a), Some(b)) => mono_iota.check(g.arr_leq(&a, &b)?, || format!("{f}<={f2}")),
                _ => mono_iota.skip(),
            }
        }
        for h in g.arrows_from(&t, sampler)? {
            let Some(fh) = g.compose(f, &h) else {
                ends.skip();
                continue;
            };
            ends.check(g.source(&fh) == s && g.target(&fh) == g.target(&h), || format!("{f};{h}={fh}"));
            if let Some(ht) = g.target(&h) {
                for k in g.arrows_from(&ht, sampler)? {
                    let lhs = g.compose(&fh, &k);
                    let rhs = g.compose(&h, &k).and_then(|hk| g.compose(f, &hk));
                    match (lhs, rhs) {
                        (Some(a), Some(b)) => assoc.check(a == b, || format!("({f};{h});{k}={a} but {f};({h};{k})={b}")),
                        _ => assoc.skip(),
                    }
                }
            }
            let above_f = g.arrows_above(f)?;
            let above_h = g.arrows_above(&h)?;
            for f2 in &above_f {
                if !g.arr_leq(f, f2)? {
                    continue;
                }
                for h2 in &above_h {
                    let Some(fh2) = g.compose(f2, h2) else { continue };
                    if g.arr_leq(&h, h2)? {
                        mono_mu.check(g.arr_leq(&fh, &fh2)?, || format!("({f},{h})<=({f2},{h2})"));
                    }
                }
            }
        }
    }

    let mut report = Report::new();
    report.tally("groupoid.unit_ends", MODULE, &units);
    report.tally("groupoid.unit_laws", MODULE, &unit_laws);
    report.tally("groupoid.inverse_laws", MODULE, &inverses);
    report.tally("groupoid.composite_ends", MODULE, &ends);
    report.tally("groupoid.associativity", MODULE, &assoc);
    report.tally("groupoid.monotone_s", MODULE, &mono_s);
    report.tally("groupoid.monotone_t", MODULE, &mono_t);
    report.tally("groupoid.monotone_iota", MODULE, &mono_iota);
    report.tally("groupoid.monotone_e", MODULE, &mono_e);
    report.tally("groupoid.monotone_mu", MODULE, &mono_mu);
    Ok(report)
}

/// Checks that composites do not depend on the representatives chosen for
/// their factors, that the order embeds `G₀` along `e`, and reports whether
/// `s` and `t` are étale (required when the congruence is trivial).
pub fn groupoid_structure_check(g: &MonoidGroupoid, sampler: &mut Sampler) -> Result<Report> {
    let mut reps = Tally::new();
    let mut embed = Tally::new();
    let mut s_etale = Tally::new();
    let mut t_etale = Tally::new();
    let pairs = g.monoid().unit_pairs().to_vec();
    let related = g.related_offsets()?;
    let arrows = g.arrows(sampler)?;
    for f in &arrows {
        let t = g.object(&f.1);
        for h in g.arrows_from(&t, sampler)? {
            let Some(fh) = Groupoid::compose(g, f, &h) else { continue };
            for (u, v) in &pairs {
                for (u2, v2) in &pairs {
                    let f_rep = PairArrow(u.mul(&f.0), v.mul(&f.1));
                    let h_rep = PairArrow(u2.mul(&h.0), v2.mul(&h.1));
                    let got = g.compose_reps(&f_rep, &h_rep);
                    reps.check(got.as_ref() == Some(&fh), || format!("{f_rep};{h_rep}"));
                }
            }
        }
        let above = g.arrows_above_in_window(f, &related);
        let sources: BTreeSet<GroupElem> = above.iter().map(|a| g.object(&a.0)).collect();
        let targets: BTreeSet<GroupElem> = above.iter().map(|a| g.object(&a.1)).collect();
        s_etale.check(sources.len() == above.len(), || format!("s not injective above {f}"));
        t_etale.check(targets.len() == above.len(), || format!("t not injective above {f}"));
    }
    let objects = sampler.pick_budget(g.objects());
    for x in &objects {
        for y in sampler.pick_branch(g.objects()) {
            let lhs = g.obj_leq(x, &y)?;
            let rhs = g.arr_leq(&g.unit(x), &g.unit(&y))?;
            embed.check(lhs == rhs, || format!("{x},{y}"));
        }
    }
    let mut report = Report::new();
    report.tally("groupoid.r2_representatives", MODULE, &reps);
    report.tally("groupoid.unit_embeds_order", MODULE, &embed);
    let trivial = g.monoid().congruence().is_trivial();
    for (id, tally) in [("groupoid.source_etale", &s_etale), ("groupoid.target_etale", &t_etale)] {
        let etale = !tally.failed();
        if trivial && !etale {
            report.tally(id, MODULE, tally);
        } else {
            report.pass(
                id,
                MODULE,
                &[
                    ("etale", etale.to_string()),
                    ("required", trivial.to_string()),
                    ("samples", tally.samples.to_string()),
                ],
            );
        }
    }
    Ok(report)
}

/// `U_z ∩ window`, by the membership test `i z⁻¹ ∈ N`.
pub fn basic_open_u(g: &MonoidGroupoid, z: &GroupElem) -> Result<Vec<GroupElem>> {
    Ok(g.window_objects()?.into_iter().filter(|i| g.in_u(z, i)).collect())
}

/// `Π_{(x,y)} ∩ window`, by membership and the related test.
pub fn basic_open_pi(g: &MonoidGroupoid, anchor: &PairArrow) -> Result<Vec<PairArrow>> {
    let mut out = Vec::new();
    for f in g.window_arrows()? {
        if g.in_pi(anchor, &f)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// `U_z = U_1·z` and `Π_{(x,y)} = Π_{(1,1)}·(x,y)` on in-window anchors:
/// the right-hand sides are enumerated from `N` and translated, the
/// left-hand sides come from the membership tests.
pub fn check_translations(g: &MonoidGroupoid, anchors: usize, sampler: &mut Sampler) -> Result<Report> {
    let mut u_tally = Tally::new();
    let mut pi_tally = Tally::new();
    let r = g.radius();
    let objects = g.window_objects()?;
    let chosen = sampler.pick(&objects, anchors);
    let in_window = |x: &GroupElem| g.space().in_window(x);
    for z in &chosen {
        let reach = r + z.norm() as u32;
        let translated: BTreeSet<GroupElem> = g
            .monoid()
            .spec()
            .members(reach)?
            .iter()
            .map(|n| g.object(&n.mul(z)))
            .filter(in_window)
            .collect();
        let direct: BTreeSet<GroupElem> = basic_open_u(g, z)?.into_iter().collect();
        u_tally.check(translated == direct, || format!("z={z}"));
    }
    let arrows_sample: Vec<(GroupElem, GroupElem)> = chosen
        .iter()
        .zip(chosen.iter().rev())
        .map(|(x, y)| (x.clone(), y.clone()))
        .collect();
    for (x, y) in arrows_sample {
        let anchor = g.pair_arrow(&x, &y);
        let reach = r + x.norm().max(y.norm()) as u32;
        let members = g.monoid().spec().members(reach)?;
        let mut translated = BTreeSet::new();
        for a in &members {
            for b in &members {
                let (i, j) = (a.mul(&anchor.0), b.mul(&anchor.1));
                if in_window(&g.object(&i)) && in_window(&g.object(&j)) && g.monoid().related(a, b)? {
                    translated.insert(g.pair_arrow(&i, &j));
                }
            }
        }
        let direct: BTreeSet<PairArrow> = basic_open_pi(g, &anchor)?.into_iter().collect();
        pi_tally.check(translated == direct, || format!("anchor={anchor}"));
    }
    let mut report = Report::new();
    report.tally("groupoid.u_translation", MODULE, &u_tally);
    report.tally("groupoid.pi_translation", MODULE, &pi_tally);
    Ok(report)
}

/// Compares a trivial-congruence groupoid with `P ⋊ Z` along
/// `(i,j) ↦ ([i], i⁻¹j)` and `(p,z) ↦ (σ(p), σ(p)z)`, identity on objects:
/// mutually inverse, compatible with all structure maps, and preserving
/// and reflecting both orders.
pub fn trivial_congruence_iso<G, A>(g: &G, a: &A, sampler: &mut Sampler) -> Result<Report>
where
    G: PairGroupoid,
    A: Groupoid<Obj = GroupElem, Arr = ActionArrow<GroupElem, GroupElem>>,
{
    if !g.is_trivial_congruence() {
        return Err(Error::usage("the comparison with P ⋊ Z needs the trivial congruence"));
    }
    let phi = |f: &PairArrow| ActionArrow {
        point: g.source(f),
        elem: f.0.inverse().mul(&f.1),
    };
    let psi = |x: &ActionArrow<GroupElem, GroupElem>| g.pair_arrow(&x.point, &x.point.mul(&x.elem));

    let mut bij = Tally::new();
    let mut maps = Tally::new();
    let mut comp = Tally::new();
    let mut order0 = Tally::new();
    let mut order1 = Tally::new();

    let g_objects: BTreeSet<&GroupElem> = g.objects().iter().collect();
    let a_objects: BTreeSet<&GroupElem> = a.objects().iter().collect();
    bij.check(g_objects == a_objects, || "object samples differ".into());
    for x in g.objects() {
        maps.check(phi(&g.unit(x)) == a.unit(x), || format!("e({x})"));
        for y in g.objects_above(x)?.into_iter().chain(sampler.pick_branch(g.objects())) {
            order0.check(g.obj_leq(x, &y)? == a.obj_leq(x, &y)?, || format!("{x},{y}"));
        }
    }

    let g_arrows = g.arrows(sampler)?;
    for f in &g_arrows {
        let pf = phi(f);
        bij.check(psi(&pf) == *f, || format!("psi(phi({f}))"));
        let ok = a.source(&pf) == g.source(f)
            && a.target(&pf) == g.target(f)
            && g.inverse(f).map(|fi| phi(&fi)) == a.inverse(&pf);
        maps.check(ok, || format!("f={f}"));
        if let Some(t) = g.target(f) {
            for h in g.arrows_from(&t, sampler)? {
                let lhs = g.compose(f, &h).map(|fh| phi(&fh));
                let rhs = a.compose(&pf, &phi(&h));
                comp.check(lhs == rhs, || format!("{f};{h}"));
            }
        }
        for f2 in g.arrows_above(f)? {
            order1.check(g.arr_leq(f, &f2)? == a.arr_leq(&pf, &phi(&f2))?, || format!("{f}<={f2}"));
        }
        for x2 in a.arrows_above(&pf)? {
            order1.check(a.arr_leq(&pf, &x2)? == g.arr_leq(f, &psi(&x2))?, || format!("{f}<={}", psi(&x2)));
        }
        for f2 in sampler.pick_branch(&g_arrows) {
            order1.check(g.arr_leq(f, &f2)? == a.arr_leq(&pf, &phi(&f2))?, || format!("{f} vs {f2}"));
        }
    }
    for x in a.arrows(sampler)? {
        bij.check(phi(&psi(&x)) == x, || format!("phi(psi({x}))"));
    }

    let mut report = Report::new();
    report.tally("iso.bijection", MODULE, &bij);
    report.tally("iso.structure_maps", MODULE, &maps);
    report.tally("iso.composition", MODULE, &comp);
    report.tally("iso.object_order", MODULE, &order0);
    report.tally("iso.arrow_order", MODULE, &order1);
    Ok(report)
}

/// Related pairs of compose-offsets anchored at `(x, y)`: cell `(a, b)` is
/// set iff `(n_a x, n_b y) ∈ Π_{(x,y)}`, where `n_0, n_1, …` are the first
/// elements of `N` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGrid {
    pub anchor: (GroupElem, GroupElem),
    pub offsets: Vec<GroupElem>,
    /// `cells[a][b]`.
    pub cells: Vec<Vec<bool>>,
}

impl PatternGrid {
    pub fn size(&self) -> usize {
        self.offsets.len()
    }

    pub fn dots(&self) -> BTreeSet<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.cells[a][b])
            .collect()
    }
}

/// The first `size` members of `N` in canonical order.
pub fn grid_offsets(m: &QuotientMonoid, size: usize) -> Result<Vec<GroupElem>> {
    let mut radius = 0u32;
    loop {
        let members = m.spec().members(radius)?;
        if members.len() >= size {
            let mut sorted = members;
            sorted.sort();
            sorted.truncate(size);
            // members of larger norm could still sort earlier; make sure the
            // chosen prefix is closed under that
            let next = m.spec().members(radius + 1)?;
            if next.iter().filter(|g| g.norm() > radius as u64).all(|g| sorted.last().is_some_and(|l| g > l)) {
                return Ok(sorted);
            }
        }
        radius += 1;
        if radius > 64 {
            return Err(Error::window("could not find enough grid offsets"));
        }
    }
}

/// The pattern of `Π_{(1,1)}`.
pub fn pattern_grid(m: &QuotientMonoid, size: usize) -> Result<PatternGrid> {
    let one = m.descriptor().identity();
    pattern_grid_at(m, size, (one.clone(), one))
}

/// The pattern of `Π_{(x,y)}`, computed by the membership test at the
/// translated points; by translation invariance it equals
/// `pattern_grid(m, size)`.
pub fn pattern_grid_at(m: &QuotientMonoid, size: usize, anchor: (GroupElem, GroupElem)) -> Result<PatternGrid> {
    let cong = m.congruence();
    if !cong.is_stable() {
        return Err(Error::window("congruence is not stable"));
    }
    let offsets = grid_offsets(m, size)?;
    if let Some(g) = offsets.iter().find(|g| !cong.in_core(g)) {
        return Err(Error::window(format!("grid offset {g} is outside the stable core")));
    }
    let (x, y) = &anchor;
    let mut cells = vec![vec![false; size]; size];
    for (a, na) in offsets.iter().enumerate() {
        for (b, nb) in offsets.iter().enumerate() {
            let (i, j) = (na.mul(x), nb.mul(y));
            let (da, db) = (i.mul(&x.inverse()), j.mul(&y.inverse()));
            cells[a][b] = m.contains(&da) && m.contains(&db) && m.related(&da, &db)?;
        }
    }
    Ok(PatternGrid { anchor, offsets, cells })
}

/// One evaluation of the induced action: `α(s, f) = (t(f), s')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedEntry {
    pub arrow: PairArrow,
    pub s: usize,
    pub target: GroupElem,
    pub image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedAction {
    pub table: Vec<InducedEntry>,
    pub comparisons: usize,
    /// First comparable pair whose images are not comparable.
    pub witness: Option<String>,
}

impl InducedAction {
    pub fn monotone(&self) -> bool {
        self.witness.is_none()
    }
}

/// `α(s, (i,j)) = (j, σ(j)j⁻¹iσ(i)⁻¹·s)` on `S × G₁`, with `S × G₀` ordered
/// by `(i,s) <= (i',s')` iff `i <= i'` and `s' = σ(i')σ(i)⁻¹·s`. Monotonicity
/// is tested on every sampled interior arrow `(i,j)` against every
/// `(ai, bj)` with `a ~ b` in the congruence core and both endpoints in
/// the window.
pub fn induced_action(g: &MonoidGroupoid, set: &MSet, sampler: &mut Sampler) -> Result<InducedAction> {
    let m = g.monoid();
    let spec = m.spec();
    let space = g.space();
    let related = g.related_offsets()?;

    let mut memo: HashMap<(GroupElem, usize), usize> = HashMap::new();
    let mut act = |n: &GroupElem, s: usize| -> Result<usize> {
        if let Some(&t) = memo.get(&(n.clone(), s)) {
            return Ok(t);
        }
        let t = set.act(spec, n, s)?;
        memo.insert((n.clone(), s), t);
        Ok(t)
    };
    let alpha = |f: &PairArrow, s: usize, act: &mut dyn FnMut(&GroupElem, usize) -> Result<usize>| -> Result<(GroupElem, usize)> {
        let si = space.canon(&f.0);
        let sj = space.canon(&f.1);
        let w = sj.mul(&f.1.inverse()).mul(&f.0).mul(&si.inverse());
        Ok((sj, act(&w, s)?))
    };

    let arrows = g.arrows(sampler)?;
    let mut table = Vec::new();
    let mut comparisons = 0;
    let mut witness = None;
    for f in &arrows {
        for s in 0..set.len() {
            let (tj, x) = alpha(f, s, &mut act)?;
            table.push(InducedEntry {
                arrow: f.clone(),
                s,
                target: tj.clone(),
                image: x,
            });
            if witness.is_some() {
                continue;
            }
            let si = space.canon(&f.0);
            for (a, b) in &related {
                let (i2, j2) = (a.mul(&f.0), b.mul(&f.1));
                if !(space.in_window(&space.canon(&i2)) && space.in_window(&space.canon(&j2))) {
                    continue;
                }
                let f2 = g.pair_arrow(&i2, &j2);
                let s2 = act(&space.canon(&f2.0).mul(&si.inverse()), s)?;
                let (tj2, x2) = alpha(&f2, s2, &mut act)?;
                let expected = act(&tj2.mul(&tj.inverse()), x)?;
                comparisons += 1;
                if x2 != expected {
                    witness = Some(format!(
                        "({},{f}) <= ({},{f2}) via a={a}, b={b}, but images {x} and {x2} are not comparable",
                        set.name(s),
                        set.name(s2)
                    ));
                    break;
                }
            }
        }
    }
    Ok(InducedAction {
        table,
        comparisons,
        witness,
    })
}

/// The induced-action verdict next to the `M`-set verdict; they agree
/// exactly when the criterion `a ~ b ⇒ a·s = b·s` is what decides
/// monotonicity.
pub fn check_induced_action(g: &MonoidGroupoid, set: &MSet, label: &str, sampler: &mut Sampler) -> Result<Report> {
    let induced = induced_action(g, set, sampler)?;
    let violations = validate_mset(g.monoid(), set)?;
    let mut report = Report::new();
    let check = format!("induced.verdict.{label}");
    if induced.monotone() == violations.is_empty() {
        report.pass(
            &check,
            MODULE,
            &[
                ("monotone", induced.monotone().to_string()),
                ("mset", violations.is_empty().to_string()),
                ("comparisons", induced.comparisons.to_string()),
            ],
        );
    } else {
        report.fail(
            &check,
            MODULE,
            format!(
                "monotone={} violations={} {}",
                induced.monotone(),
                violations.len(),
                induced.witness.unwrap_or_default()
            ),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{Oracle, SubmonoidSpec};

    fn nat_spec() -> SubmonoidSpec {
        SubmonoidSpec::new(GroupDescriptor::int(1).unwrap(), Oracle::Nonneg, None).unwrap()
    }

    fn nat_mod(a: i64, b: i64, radius: u32) -> QuotientMonoid {
        QuotientMonoid::build(nat_spec(), &[(GroupElem::int(a), GroupElem::int(b))], radius, 5).unwrap()
    }

    fn int(v: i64) -> GroupElem {
        GroupElem::int(v)
    }

    fn arrow(i: i64, j: i64) -> PairArrow {
        PairArrow(int(i), int(j))
    }

    #[test]
    fn diagonal_groupoid_orders() {
        let m = QuotientMonoid::free_of_relations(nat_spec()).unwrap();
        let g = build_groupoid(&m, 4, 1, &mut Sampler::exhaustive()).unwrap();
        assert!(g.arr_leq(&arrow(0, 1), &arrow(2, 3)).unwrap());
        assert!(!g.arr_leq(&arrow(0, 1), &arrow(2, 4)).unwrap());
        assert!(g.obj_leq(&int(-2), &int(3)).unwrap());
        assert_eq!(g.objects().len(), 8);
        let report = groupoid_axiom_check(&g, &mut Sampler::exhaustive()).unwrap();
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn nontrivial_congruence_orders() {
        let m = nat_mod(2, 5, 10);
        let g = build_groupoid(&m, 5, 1, &mut Sampler::exhaustive()).unwrap();
        assert!(g.arr_leq(&arrow(0, 0), &arrow(2, 5)).unwrap());
        assert!(!g.arr_leq(&arrow(0, 0), &arrow(2, 4)).unwrap());
        let pi = basic_open_pi(&g, &arrow(0, 0)).unwrap();
        assert!(pi.contains(&arrow(2, 5)) && pi.contains(&arrow(5, 2)));
        let u = basic_open_u(&g, &int(0)).unwrap();
        assert_eq!(u, (0..=5).map(int).collect::<Vec<_>>());
    }

    #[test]
    fn congruence_core_must_cover_twice_the_radius() {
        let m = nat_mod(2, 5, 6);
        assert!(matches!(build_groupoid(&m, 4, 1, &mut Sampler::exhaustive()), Err(Error::Window(_))));
    }

    #[test]
    fn trivial_monoid_gives_a_discrete_groupoid() {
        let desc = GroupDescriptor::int(1).unwrap();
        let spec = SubmonoidSpec::new(
            desc,
            Oracle::Generated {
                generators: vec![],
                depth: 1,
            },
            Some(vec![]),
        )
        .unwrap();
        let m = QuotientMonoid::free_of_relations(spec).unwrap();
        let g = build_groupoid(&m, 3, 1, &mut Sampler::exhaustive()).unwrap();
        assert!(!g.obj_leq(&int(0), &int(1)).unwrap());
        assert!(!g.arr_leq(&arrow(0, 1), &arrow(1, 2)).unwrap());
        assert_eq!(g.arrows_above(&arrow(0, 1)).unwrap(), vec![arrow(0, 1)]);
    }

    #[test]
    fn corrupted_composite_is_caught() {
        let m = QuotientMonoid::free_of_relations(nat_spec()).unwrap();
        let g = build_groupoid(&m, 4, 1, &mut Sampler::exhaustive()).unwrap();
        let f = arrow(0, 1);
        let bad = Tampered::with_composite(&g, g.unit(&int(0)), f.clone(), arrow(0, 2));
        let report = groupoid_axiom_check(&bad, &mut Sampler::exhaustive()).unwrap();
        let line = report.find("groupoid.unit_laws").unwrap();
        assert!(!line.passed());
        assert_eq!(line.witness(), Some("f=((0),(1))"));
    }

    #[test]
    fn action_groupoid_of_a_point() {
        let desc = GroupDescriptor::int_cyclic(1, 2).unwrap();
        let elements = vec![
            GroupElem::parse(desc, "(0);0").unwrap(),
            GroupElem::parse(desc, "(0);1").unwrap(),
        ];
        let a = GroupActionOnPoset::new(desc, crate::poset::WindowPoset::chain(1), elements, |x, _| Some(x)).unwrap();
        let ag = build_action_groupoid(&a, &mut Sampler::exhaustive()).unwrap();
        let arrows = ag.arrows(&mut Sampler::exhaustive()).unwrap();
        assert_eq!(arrows.len(), 2);
        let r = groupoid_axiom_check(&ag, &mut Sampler::exhaustive()).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn diagonal_matches_the_action_groupoid() {
        let m = QuotientMonoid::free_of_relations(nat_spec()).unwrap();
        let g = build_groupoid(&m, 5, 1, &mut Sampler::exhaustive()).unwrap();
        let space = CosetSpace::for_monoid(&m, Window::Ball(5), 1).unwrap();
        let a = build_action_groupoid(&space, &mut Sampler::exhaustive()).unwrap();
        let report = trivial_congruence_iso(&g, &a, &mut Sampler::exhaustive()).unwrap();
        assert!(report.all_pass(), "{report}");
        let bad = Tampered::with_detached_arrow(&g, g.arrows(&mut Sampler::exhaustive()).unwrap()[0].clone());
        let report = trivial_congruence_iso(&bad, &a, &mut Sampler::exhaustive()).unwrap();
        assert!(!report.find("iso.arrow_order").unwrap().passed());
    }

    fn oracle_grid(size: usize, related: impl Fn(usize, usize) -> bool) -> BTreeSet<(usize, usize)> {
        (0..size)
            .flat_map(|a| (0..size).map(move |b| (a, b)))
            .filter(|&(a, b)| related(a, b))
            .collect()
    }

    #[test]
    fn pattern_grids() {
        let m = nat_mod(2, 5, 24);
        let grid = pattern_grid(&m, 11).unwrap();
        let mut expected = BTreeSet::new();
        for i in 0..11 {
            expected.insert((i, i));
        }
        for i in 0..=5 {
            expected.insert((2 + i, 5 + i));
            expected.insert((5 + i, 2 + i));
        }
        for i in 0..=2 {
            expected.insert((2 + i, 8 + i));
            expected.insert((8 + i, 2 + i));
        }
        assert_eq!(grid.dots(), expected);

        let b = nat_mod(1, 2, 24);
        let grid = pattern_grid(&b, 11).unwrap();
        assert_eq!(grid.dots(), oracle_grid(11, |a, b| a == b || (a >= 1 && b >= 1)));

        let d = QuotientMonoid::free_of_relations(nat_spec()).unwrap();
        assert_eq!(pattern_grid(&d, 3).unwrap().dots(), oracle_grid(3, |a, b| a == b));
    }

    #[test]
    fn grids_do_not_depend_on_the_anchor() {
        let m = nat_mod(2, 5, 24);
        let base = pattern_grid(&m, 11).unwrap();
        for (x, y) in [(3, -4), (-7, 0), (2, 2)] {
            let moved = pattern_grid_at(&m, 11, (int(x), int(y))).unwrap();
            assert_eq!(moved.cells, base.cells);
        }
    }

    #[test]
    fn translations_on_small_windows() {
        let m = nat_mod(2, 5, 12);
        let g = build_groupoid(&m, 5, 1, &mut Sampler::exhaustive()).unwrap();
        let report = check_translations(&g, 6, &mut Sampler::new(3, 50, 5)).unwrap();
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn induced_action_matches_the_mset_criterion() {
        let b = nat_mod(1, 2, 12);
        let g = build_groupoid(&b, 5, 1, &mut Sampler::exhaustive()).unwrap();
        let one = [int(1)];
        let saturating = MSet::from_fn(2, &one, |_, _| 1).unwrap();
        let parity = MSet::from_fn(2, &one, |_, s| 1 - s).unwrap();
        let ok = induced_action(&g, &saturating, &mut Sampler::exhaustive()).unwrap();
        assert!(ok.monotone());
        assert!(ok.comparisons > 0);
        let bad = induced_action(&g, &parity, &mut Sampler::exhaustive()).unwrap();
        assert!(!bad.monotone());
        assert!(!validate_mset(&b, &parity).unwrap().is_empty());
        let d = QuotientMonoid::free_of_relations(nat_spec()).unwrap();
        let g = build_groupoid(&d, 5, 1, &mut Sampler::exhaustive()).unwrap();
        assert!(induced_action(&g, &parity, &mut Sampler::exhaustive()).unwrap().monotone());
    }

    #[test]
    fn structure_checks() {
        let m = nat_mod(2, 5, 12);
        let g = build_groupoid(&m, 5, 1, &mut Sampler::exhaustive()).unwrap();
        let report = groupoid_structure_check(&g, &mut Sampler::new(1, 60, 6)).unwrap();
        assert!(report.all_pass(), "{report}");
        assert_eq!(report.find("groupoid.source_etale").unwrap().field("etale"), Some("false"));
    }
}
