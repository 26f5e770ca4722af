//! M-sets as equivariant étale posets over the coset poset, the way back
//! through the fiber over the identity class, and points of the resulting
//! toposes.

use std::collections::BTreeSet;
use std::fmt;

use crate::coset::CosetPoset;
use crate::equivariant::GroupActionOnPoset;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElem, Letter, Window};
use crate::monoid::{MSet, QuotientMonoid};
use crate::poset::{irreducible_closed_sets, MonotoneMap, NodeLabel, WindowPoset};
use crate::report::{Report, Tally};
use crate::sample::Sampler;

const MODULE: &str = "converse";

/// `α = σ(p) g σ(q)⁻¹`, which lies in `N` exactly when `g` is an arrow
/// `p → q`, i.e. `p·g >= q`.
pub fn alpha_factor(poset: &CosetPoset, p: usize, g: &GroupElem, q: usize) -> Result<GroupElem> {
    let alpha = poset.rep(p).mul(g).mul(&poset.rep(q).inverse());
    if poset.spec().contains(&alpha) {
        Ok(alpha)
    } else {
        Err(Error::NotAnArrow(format!(
            "{g} from {} to {}: {alpha} is not in N",
            poset.rep(p),
            poset.rep(q)
        )))
    }
}

/// `u_g = σ(p) g σ(p·g)⁻¹`, the unit with `g = σ(p)⁻¹ u_g σ(p·g)`. `None`
/// when `p·g` leaves the window.
pub fn unit_twist(poset: &CosetPoset, p: usize, g: &GroupElem) -> Result<Option<(usize, GroupElem)>> {
    let Some(q) = poset.act(p, g) else { return Ok(None) };
    let u = poset.rep(p).mul(g).mul(&poset.rep(q).inverse());
    if !(poset.spec().contains(&u) && poset.spec().contains(&u.inverse())) {
        return Err(Error::NotAnArrow(format!("twist {u} of {g} at {} is not a unit", poset.rep(p))));
    }
    Ok(Some((q, u)))
}

/// `E = P × S` over a window of the coset poset, with
/// `(p,s) <= (q,s')` iff `p <= q` and `s' = σ(q)σ(p)⁻¹·s`, and the right
/// action `(p,s)·g = (p·g, u_g⁻¹·s)`. Node `(p, s)` has index `p·|S| + s`.
#[derive(Clone, Debug)]
pub struct EquivariantEtalePoset {
    base: CosetPoset,
    fiber: MSet,
    total: WindowPoset,
}

/// Builds `E` from an `N`-set on `window`, with interior depth `depth`.
pub fn mset_to_etale(m: &QuotientMonoid, set: &MSet, window: Window, depth: u32) -> Result<EquivariantEtalePoset> {
    let base = CosetPoset::for_monoid(m, window, depth)?;
    etale_over(base, set)
}

/// Builds `E` over an already materialized coset poset.
pub fn etale_over(base: CosetPoset, set: &MSet) -> Result<EquivariantEtalePoset> {
    let n = set.len();
    let bp = base.poset();
    let spec = base.spec();
    // transport[p][q] = the table of s ↦ σ(q)σ(p)⁻¹·s when p <= q
    let mut transport: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; base.len()]; base.len()];
    #[allow(clippy::needless_range_loop)]
    for p in 0..base.len() {
        for q in 0..base.len() {
            if bp.leq(p, q) {
                let w = base.rep(q).mul(&base.rep(p).inverse());
                let row = (0..n).map(|s| set.act(spec, &w, s)).collect::<Result<Vec<_>>>()?;
                transport[p][q] = Some(row);
            }
        }
    }
    let mut names = Vec::with_capacity(base.len() * n);
    let mut labels = Vec::with_capacity(base.len() * n);
    let mut interior = Vec::with_capacity(base.len() * n);
    for p in 0..base.len() {
        for s in 0..n {
            names.push(format!("{}|{}", base.rep(p), set.name(s)));
            labels.push(NodeLabel::Fiber(base.rep(p).clone(), set.name(s).to_string()));
            interior.push(bp.is_interior(p));
        }
    }
    let total = WindowPoset::from_fn(names, |x, y| {
        let (p, s, q, t) = (x / n, x % n, y / n, y % n);
        transport[p][q].as_ref().is_some_and(|row| row[s] == t)
    })?
    .with_interior(interior)
    .with_labels(labels);
    Ok(EquivariantEtalePoset {
        base,
        fiber: set.clone(),
        total,
    })
}

impl EquivariantEtalePoset {
    pub fn base(&self) -> &CosetPoset {
        &self.base
    }

    pub fn fiber(&self) -> &MSet {
        &self.fiber
    }

    pub fn total(&self) -> &WindowPoset {
        &self.total
    }

    pub fn node(&self, p: usize, s: usize) -> usize {
        p * self.fiber.len() + s
    }

    /// `(p, s)` of a node.
    pub fn split(&self, x: usize) -> (usize, usize) {
        (x / self.fiber.len(), x % self.fiber.len())
    }

    pub fn projection(&self) -> Result<MonotoneMap<'_>> {
        let n = self.fiber.len();
        MonotoneMap::new(&self.total, self.base.poset(), (0..self.total.len()).map(|x| x / n).collect())
    }

    /// `(p, s)·g = (p·g, u_g⁻¹·s)`, or `None` outside the window.
    pub fn act(&self, x: usize, g: &GroupElem) -> Result<Option<usize>> {
        let (p, s) = self.split(x);
        let Some((q, u)) = unit_twist(&self.base, p, g)? else { return Ok(None) };
        let t = self.fiber.act(self.base.spec(), &u.inverse(), s)?;
        Ok(Some(self.node(q, t)))
    }

    /// The action on `E` tabulated on `ball(radius)`.
    pub fn group_action(&self, radius: u32) -> Result<GroupActionOnPoset<crate::group::GroupDescriptor>> {
        let desc = self.base.spec().descriptor();
        let elements = crate::group::ball(desc, radius)?;
        let mut table = Vec::with_capacity(elements.len());
        for g in &elements {
            let row = (0..self.total.len()).map(|x| self.act(x, g)).collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let index: std::collections::HashMap<GroupElem, usize> =
            elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        GroupActionOnPoset::new(desc, self.total.clone(), elements, |x, g| table[index[g]][x])
    }
}

/// Recovers the `N`-set: the fiber over `[1]`, where a generator `n` acts
/// by following the order from `([1], s)` up to the fiber over `[n]` and
/// moving back with `n⁻¹`.
pub fn etale_to_mset(e: &EquivariantEtalePoset) -> Result<MSet> {
    let base = e.base();
    let one = base
        .identity_node()
        .filter(|&p| base.poset().is_interior(p))
        .ok_or_else(|| Error::window("the identity class is not an interior node"))?;
    let k = e.fiber().len();
    let mut action = Vec::new();
    for n in base.spec().generators() {
        let q = base
            .node_of(n)
            .ok_or_else(|| Error::window(format!("generator {n} lies outside the window")))?;
        let mut row = Vec::with_capacity(k);
        for s in 0..k {
            let x = e.node(one, s);
            let above: Vec<usize> = (0..k).map(|t| e.node(q, t)).filter(|&y| e.total().leq(x, y)).collect();
            let &[y] = above.as_slice() else {
                return Err(Error::window(format!(
                    "expected one node over {} above {}, found {}",
                    base.rep(q),
                    e.total().name(x),
                    above.len()
                )));
            };
            let back = e
                .act(y, &n.inverse())?
                .ok_or_else(|| Error::window(format!("{} · {n}⁻¹ leaves the window", e.total().name(y))))?;
            let (p, t) = e.split(back);
            if p != one {
                return Err(Error::window(format!("{n}⁻¹ did not return to the identity class")));
            }
            row.push(t);
        }
        action.push((n.clone(), row));
    }
    let mut out = MSet::new(e.fiber().elements().to_vec(), action)?;
    out.additive = e.fiber().additive;
    Ok(out)
}

/// Checks on `E`: étale projection, monotone and equivariant action,
/// the action law, the twist identity, and the translation identities
/// `((p,s)·θ_{p,u})·T_{p,pg} = ((p,s)·T_{p,pg})·θ_{pg,u}` and
/// `(p,s)·T_{p,pg} = (pg, s)`, with `θ_{p,u} = σ(p)⁻¹uσ(p)` and
/// `T_{p,q} = σ(p)⁻¹σ(q)`.
pub fn check_etale_poset(e: &EquivariantEtalePoset, radius: u32, sampler: &mut Sampler) -> Result<Report> {
    let mut report = Report::new();
    let base = e.base();
    let total = e.total();
    let pi = e.projection()?;
    match crate::poset::is_etale(&pi) {
        Ok(()) => report.pass(
            "converse.etale",
            MODULE,
            &[("interior", total.interior_nodes().len().to_string())],
        ),
        Err(q) => report.fail("converse.etale", MODULE, total.name(q).to_string()),
    }
    let desc = base.spec().descriptor();
    let elements = sampler.pick_budget(&crate::group::ball(desc, radius)?);
    let interior = total.interior_nodes();
    let units: Vec<GroupElem> = base.units().map(<[GroupElem]>::to_vec).unwrap_or_default();

    let mut monotone = Tally::new();
    let mut equivariant = Tally::new();
    let mut law = Tally::new();
    let mut twist = Tally::new();
    let mut translation = Tally::new();
    let mut theta = Tally::new();
    let strict = total.strict_pairs();
    for g in &elements {
        for &(x, y) in &strict {
            match (e.act(x, g)?, e.act(y, g)?) {
                (Some(a), Some(b)) => monotone.check(total.leq(a, b), || format!("{g} on {}<={}", total.name(x), total.name(y))),
                _ => monotone.skip(),
            }
        }
        for &x in &interior {
            let (p, _) = e.split(x);
            match e.act(x, g)? {
                Some(y) => equivariant.check(Some(e.split(y).0) == base.act(p, g), || {
                    format!("pi({}·{g}) != pi·{g}", total.name(x))
                }),
                None => equivariant.skip(),
            }
        }
    }
    let branch = sampler.pick_branch(&elements);
    for g in &elements {
        for h in &branch {
            for &x in &interior {
                let lhs = match e.act(x, g)? {
                    Some(y) => e.act(y, h)?,
                    None => None,
                };
                match (lhs, e.act(x, &g.mul(h))?) {
                    (Some(a), Some(b)) => law.check(a == b, || format!("({}·{g})·{h}", total.name(x))),
                    _ => law.skip(),
                }
            }
        }
    }
    for p in base.poset().interior_nodes() {
        let sp = base.rep(p);
        for g in &elements {
            let (q, u) = match unit_twist(base, p, g) {
                Ok(Some(found)) => found,
                Ok(None) => {
                    twist.skip();
                    continue;
                }
                Err(Error::NotAnArrow(msg)) => {
                    twist.check(false, || msg);
                    continue;
                }
                Err(e) => return Err(e),
            };
            twist.check(sp.inverse().mul(&u).mul(base.rep(q)) == *g, || format!("g={g} p={sp}"));
            let t = sp.inverse().mul(base.rep(q));
            for s in 0..e.fiber().len() {
                let x = e.node(p, s);
                match e.act(x, &t)? {
                    Some(y) => translation.check(y == e.node(q, s), || format!("T at {} by {g}", total.name(x))),
                    None => translation.skip(),
                }
                for v in &units {
                    let theta_p = sp.inverse().mul(v).mul(sp);
                    let theta_q = base.rep(q).inverse().mul(v).mul(base.rep(q));
                    let lhs = match e.act(x, &theta_p)? {
                        Some(y) => e.act(y, &t)?,
                        None => None,
                    };
                    let rhs = match e.act(x, &t)? {
                        Some(y) => e.act(y, &theta_q)?,
                        None => None,
                    };
                    match (lhs, rhs) {
                        (Some(a), Some(b)) => theta.check(a == b, || format!("theta u={v} at {} by {g}", total.name(x))),
                        _ => theta.skip(),
                    }
                }
            }
        }
    }
    report.tally("converse.action_monotone", MODULE, &monotone);
    report.tally("converse.action_over_base", MODULE, &equivariant);
    report.tally("converse.action_law", MODULE, &law);
    report.tally("converse.twist_identity", MODULE, &twist);
    report.tally("converse.translation", MODULE, &translation);
    report.tally("converse.theta_translation", MODULE, &theta);
    Ok(report)
}

/// Points of a finite equivariant situation: irreducible closed sets `↓x`
/// up to the group action, one least node index per orbit.
pub fn points_finite<G: Group>(action: &GroupActionOnPoset<G>) -> Result<Vec<usize>> {
    let poset = action.poset();
    if poset.interior_nodes().len() != poset.len() || !action.is_total() {
        return Err(Error::usage("points_finite needs a fully interior poset with a total action"));
    }
    let sets = irreducible_closed_sets(poset)?;
    let top = |set: &Vec<usize>| -> usize {
        *set.iter()
            .find(|&&x| set.iter().all(|&y| poset.leq(y, x)))
            .expect("irreducible closed sets of a finite poset are principal")
    };
    let tops: BTreeSet<usize> = sets.iter().map(top).collect();
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for &x in &tops {
        if seen.contains(&x) {
            continue;
        }
        reps.push(x);
        for g in action.elements() {
            seen.insert(action.act(x, g).expect("total action"));
        }
    }
    Ok(reps)
}

/// A point probe for the free monoid on `k` letters inside the free group:
/// a finite word (a principal closed set), or the left-infinite word
/// `…PPP·prefix` with a positive period `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeMonoidProbe {
    Finite(Vec<Letter>),
    Infinite { prefix: Vec<Letter>, period: Vec<Letter> },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointClass {
    /// All principal closed sets form one orbit.
    Principal,
    /// The class of an infinite word, named by its period reduced to a
    /// primitive word and rotated to its least rotation.
    Tail(Vec<Letter>),
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::Principal => f.write_str("principal"),
            PointClass::Tail(p) => {
                f.write_str("tail(")?;
                for (i, l) in p.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "x{}", l.generator + 1)?;
                }
                f.write_str(")^inf")
            }
        }
    }
}

fn check_letters(k: u32, word: &[Letter], what: &str) -> Result<()> {
    if let Some(l) = word.iter().find(|l| l.generator >= k) {
        return Err(Error::usage(format!("{what} uses x{} but k = {k}", l.generator + 1)));
    }
    if word.windows(2).any(|w| w[0].cancels(&w[1])) {
        return Err(Error::usage(format!("{what} is not reduced")));
    }
    Ok(())
}

/// Orbit class of a point of the free monoid's topos. Two infinite probes
/// fall in the same class iff their tails agree after finite truncation,
/// which for periodic tails means their periods are conjugate powers of a
/// common primitive word.
pub fn classify_points_free_monoid(k: u32, probe: &FreeMonoidProbe) -> Result<PointClass> {
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    match probe {
        FreeMonoidProbe::Finite(word) => {
            check_letters(k, word, "probe")?;
            Ok(PointClass::Principal)
        }
        FreeMonoidProbe::Infinite { prefix, period } => {
            check_letters(k, prefix, "prefix")?;
            if period.is_empty() || period.iter().any(|l| l.inverse) {
                return Err(Error::usage("the period must be a nonempty positive word"));
            }
            check_letters(k, period, "period")?;
            if let (Some(last), Some(first)) = (period.last(), prefix.first()) {
                if last.cancels(first) {
                    return Err(Error::usage("the period cancels against the prefix"));
                }
            }
            let root = primitive_root(period);
            Ok(PointClass::Tail(least_rotation(root)))
        }
    }
}

fn primitive_root(word: &[Letter]) -> &[Letter] {
    let n = word.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| word[i] == word[i - d]))
        .map(|d| &word[..d])
        .unwrap_or(word)
}

fn least_rotation(word: &[Letter]) -> Vec<Letter> {
    (0..word.len())
        .map(|i| word[i..].iter().chain(&word[..i]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// An entry of a point of the free commutative monoid on `n` generators:
/// a finite exponent or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtInt {
    Finite(i64),
    Infinite,
}

/// `f ≡ g` iff `f = g + h` for some `h: {1..n} → ℤ` (with `∞ + z = ∞`), i.e.
/// iff `f` and `g` are infinite at the same coordinates.
pub fn commutative_points_equivalent(f: &[ExtInt], g: &[ExtInt]) -> Result<bool> {
    if f.len() != g.len() {
        return Err(Error::usage("points have different ranks"));
    }
    Ok(f.iter()
        .zip(g)
        .all(|(a, b)| matches!(a, ExtInt::Infinite) == matches!(b, ExtInt::Infinite)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupDescriptor, Perm, SymmetricGroup};
    use crate::monoid::{Oracle, SubmonoidSpec};

    fn nat() -> QuotientMonoid {
        let spec = SubmonoidSpec::new(GroupDescriptor::int(1).unwrap(), Oracle::Nonneg, None).unwrap();
        QuotientMonoid::free_of_relations(spec).unwrap()
    }

    fn cyclic(k: usize) -> MSet {
        MSet::from_fn(k, &[GroupElem::int(1)], |_, s| (s + 1) % k).unwrap()
    }

    fn saturating() -> MSet {
        MSet::from_fn(2, &[GroupElem::int(1)], |_, _| 1).unwrap()
    }

    fn cover_labels(e: &EquivariantEtalePoset) -> BTreeSet<(String, String)> {
        let t = e.total();
        t.covers().into_iter().map(|(a, b)| (t.name(a).to_string(), t.name(b).to_string())).collect()
    }

    /// Covers of the figure windows from `(z',s') >= (z,s) iff z' >= z and
    /// s' = (z'-z)·s`: only `z' = z + 1` can be a cover.
    fn oracle_covers(k: usize, step: impl Fn(usize) -> usize) -> BTreeSet<(String, String)> {
        let mut out = BTreeSet::new();
        for z in 1..9 {
            for s in 0..k {
                out.insert((format!("({z})|{s}"), format!("({})|{}", z + 1, step(s))));
            }
        }
        out
    }

    #[test]
    fn figure_windows() {
        let m = nat();
        let w = Window::Range(1, 9);
        let trivial = MSet::from_fn(1, &[GroupElem::int(1)], |_, _| 0).unwrap();
        let e = mset_to_etale(&m, &trivial, w, 1).unwrap();
        assert_eq!(e.total().len(), 9);
        assert_eq!(cover_labels(&e), oracle_covers(1, |_| 0));
        for k in [2, 3] {
            let e = mset_to_etale(&m, &cyclic(k), w, 1).unwrap();
            assert_eq!(e.total().len(), 9 * k);
            assert_eq!(cover_labels(&e), oracle_covers(k, |s| (s + 1) % k));
        }
        let e = mset_to_etale(&m, &saturating(), w, 1).unwrap();
        assert_eq!(e.total().covers().len(), 16);
        assert_eq!(cover_labels(&e), oracle_covers(2, |_| 1));
    }

    #[test]
    fn round_trips_recover_the_tables() {
        let m = nat();
        for set in [cyclic(1), cyclic(2), cyclic(3), saturating()] {
            let e = mset_to_etale(&m, &set, Window::Ball(4), 1).unwrap();
            assert!(crate::poset::is_etale(&e.projection().unwrap()).is_ok());
            assert_eq!(etale_to_mset(&e).unwrap(), set);
        }
    }

    #[test]
    fn unit_twists_on_a_cyclic_factor() {
        let desc = GroupDescriptor::int_cyclic(1, 2).unwrap();
        let spec = SubmonoidSpec::new(desc, Oracle::Nonneg, None).unwrap();
        let m = QuotientMonoid::free_of_relations(spec).unwrap();
        // S = {a, b}; the unit (0);1 swaps, (1);0 fixes
        let gens = m.spec().generators().to_vec();
        let set = MSet::from_fn(2, &gens, |g, s| if g.residue() == 1 { 1 - s } else { s }).unwrap();
        let e = mset_to_etale(&m, &set, Window::Ball(3), 1).unwrap();
        let base = e.base();
        let one = base.identity_node().unwrap();
        let g = GroupElem::parse(desc, "(1);1").unwrap();
        let (q, u) = unit_twist(base, one, &g).unwrap().unwrap();
        assert_eq!(base.rep(q).to_string(), "(1);0");
        assert_eq!(u.to_string(), "(0);1");
        assert_eq!(e.act(e.node(one, 0), &g).unwrap(), Some(e.node(q, 1)));
        assert_eq!(alpha_factor(base, one, &g, q).unwrap(), u);
        assert_eq!(etale_to_mset(&e).unwrap(), set);
        let report = check_etale_poset(&e, 2, &mut Sampler::exhaustive()).unwrap();
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn alpha_factor_examples() {
        let m = nat();
        let base = CosetPoset::for_monoid(&m, Window::Range(-3, 3), 1).unwrap();
        let node = |v: i64| base.node_of(&GroupElem::int(v)).unwrap();
        assert_eq!(alpha_factor(&base, node(0), &GroupElem::int(2), node(0)).unwrap(), GroupElem::int(2));
        assert_eq!(alpha_factor(&base, node(2), &GroupElem::int(-2), node(0)).unwrap(), GroupElem::int(0));
        assert!(matches!(
            alpha_factor(&base, node(0), &GroupElem::int(-1), node(0)),
            Err(Error::NotAnArrow(_))
        ));
    }

    #[test]
    fn identities_hold_on_the_figures() {
        let m = nat();
        for set in [cyclic(2), cyclic(3), saturating()] {
            let e = mset_to_etale(&m, &set, Window::Range(-4, 4), 1).unwrap();
            let report = check_etale_poset(&e, 3, &mut Sampler::exhaustive()).unwrap();
            assert!(report.all_pass(), "{report}");
        }
    }

    #[test]
    fn endomorphisms_at_the_identity_class_are_n() {
        let m = nat();
        let base = CosetPoset::for_monoid(&m, Window::Range(-8, 8), 1).unwrap();
        let action = crate::equivariant::coset_action(&base, 4).unwrap();
        let one = base.identity_node().unwrap();
        let endo = crate::equivariant::endo_monoid(&action, one).unwrap();
        let expected = m.spec().members(4).unwrap();
        assert_eq!(endo, expected);
    }

    #[test]
    fn finite_points() {
        let s3 = SymmetricGroup { degree: 3 };
        let elements = s3.elements();
        let a = GroupActionOnPoset::new(s3, WindowPoset::antichain(&["1", "2", "3"]), elements, |x, g: &Perm| {
            Some(g.apply(x))
        })
        .unwrap();
        assert_eq!(points_finite(&a).unwrap(), vec![0]);

        let desc = GroupDescriptor::int(1).unwrap();
        let p = WindowPoset::from_relation(vec!["a".into(), "b".into(), "c".into()], &[(0, 1)]).unwrap();
        let a = GroupActionOnPoset::new(desc, p, vec![desc.identity()], |x, _| Some(x)).unwrap();
        assert_eq!(points_finite(&a).unwrap(), vec![0, 1, 2]);

        let swap = GroupActionOnPoset::new(
            SymmetricGroup { degree: 2 },
            WindowPoset::antichain(&["a", "b"]),
            SymmetricGroup { degree: 2 }.elements(),
            |x, g: &Perm| Some(g.apply(x)),
        )
        .unwrap();
        assert_eq!(points_finite(&swap).unwrap(), vec![0]);
    }

    fn word(text: &str) -> Vec<Letter> {
        GroupElem::parse(GroupDescriptor::free(2).unwrap(), text)
            .unwrap()
            .letters()
            .unwrap()
            .to_vec()
    }

    #[test]
    fn free_monoid_point_classes() {
        let x1 = word("x1");
        let x2 = word("x2");
        let principal = classify_points_free_monoid(1, &FreeMonoidProbe::Finite(word("x1^3"))).unwrap();
        let tail = classify_points_free_monoid(
            1,
            &FreeMonoidProbe::Infinite {
                prefix: vec![],
                period: x1.clone(),
            },
        )
        .unwrap();
        assert_eq!(principal, PointClass::Principal);
        assert_ne!(principal, tail);

        let t1 = classify_points_free_monoid(2, &FreeMonoidProbe::Infinite { prefix: vec![], period: x1 }).unwrap();
        let t2 = classify_points_free_monoid(2, &FreeMonoidProbe::Infinite { prefix: vec![], period: x2.clone() }).unwrap();
        assert_ne!(t1, t2);

        let t = word("x1*x2");
        let a = classify_points_free_monoid(2, &FreeMonoidProbe::Infinite { prefix: x2, period: t.clone() }).unwrap();
        let b = classify_points_free_monoid(2, &FreeMonoidProbe::Infinite { prefix: vec![], period: t }).unwrap();
        assert_eq!(a, b);
        let c = classify_points_free_monoid(
            2,
            &FreeMonoidProbe::Infinite {
                prefix: vec![],
                period: word("x2*x1*x2*x1"),
            },
        )
        .unwrap();
        assert_eq!(a, c);
        assert_eq!(c.to_string(), "tail(x1*x2)^inf");
    }

    #[test]
    fn bad_probes_are_usage_errors() {
        let bad = [
            FreeMonoidProbe::Finite(vec![Letter::positive(0), Letter::positive(0).inverted()]),
            FreeMonoidProbe::Infinite {
                prefix: vec![],
                period: vec![],
            },
            FreeMonoidProbe::Infinite {
                prefix: vec![],
                period: word("x1^-1"),
            },
            FreeMonoidProbe::Infinite {
                prefix: word("x1^-1"),
                period: word("x1"),
            },
            FreeMonoidProbe::Finite(word("x2")),
        ];
        for (i, probe) in bad.iter().enumerate() {
            let k = if i == 4 { 1 } else { 2 };
            assert!(matches!(classify_points_free_monoid(k, probe), Err(Error::Usage(_))), "{probe:?}");
        }
    }

    /// Irreducible down-closed sets of a window `[-n, n]` of ℤ modulo
    /// translation: the principal ones `↓x` (all translates of each other)
    /// and the set reaching the top of the window, standing in for ℤ.
    #[test]
    fn one_letter_classes_match_window_enumeration() {
        let n = 5usize;
        let chain = WindowPoset::chain(2 * n + 1);
        let sets = irreducible_closed_sets(&chain).unwrap();
        let mut classes = BTreeSet::new();
        for set in sets {
            let top = *set.iter().max().unwrap();
            classes.insert(top == 2 * n);
        }
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn commutative_points() {
        use ExtInt::*;
        assert!(commutative_points_equivalent(&[Finite(3), Infinite], &[Finite(-1), Infinite]).unwrap());
        assert!(!commutative_points_equivalent(&[Finite(3), Infinite], &[Infinite, Infinite]).unwrap());
        assert!(commutative_points_equivalent(&[], &[]).unwrap());
        assert!(commutative_points_equivalent(&[Finite(0)], &[Finite(0), Finite(1)]).is_err());
    }
}
