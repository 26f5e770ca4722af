//! Submonoids of ambient groups, congruences computed by window-bounded
//! closure, quotient monoids and finite left M-sets.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElem, DEFAULT_ELEMENT_CAP};

/// Radius searched for units when a quotient monoid is assembled.
pub const UNIT_SEARCH_RADIUS: u32 = 6;

/// How membership in the submonoid `N` is decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Oracle {
    /// Reduced words using no inverse letters (free monoid in a free group).
    PositiveLetters,
    /// Lattice vectors with every coordinate `>= 0`; the cyclic factor is
    /// unconstrained.
    Nonneg,
    /// Products of at most `depth` of the listed generators. Sound, and
    /// complete only for elements needing at most `depth` factors.
    Generated {
        generators: Vec<GroupElem>,
        depth: u32,
    },
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Oracle::PositiveLetters => f.write_str("positive_letters"),
            Oracle::Nonneg => f.write_str("nonneg"),
            Oracle::Generated { generators, depth } => {
                f.write_str("generated(")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "; depth {depth})")
            }
        }
    }
}

/// A submonoid `N` of an ambient group `Z`, with a monoid generating set.
#[derive(Clone, Debug)]
pub struct SubmonoidSpec {
    desc: GroupDescriptor,
    oracle: Oracle,
    generators: Vec<GroupElem>,
    standard_generators: bool,
    /// Shortest generator word for every member reachable within `depth`
    /// (generated oracle only).
    words: Option<HashMap<GroupElem, Vec<usize>>>,
}

impl SubmonoidSpec {
    /// Builds the spec; `generators` defaults to the oracle's natural
    /// generating set (letters, unit vectors plus the residue generator, or
    /// the listed generators).
    pub fn new(desc: GroupDescriptor, oracle: Oracle, generators: Option<Vec<GroupElem>>) -> Result<Self> {
        match (&oracle, desc) {
            (Oracle::PositiveLetters, GroupDescriptor::Free { .. }) => {}
            (Oracle::PositiveLetters, _) => {
                return Err(Error::usage("positive_letters needs a free group"))
            }
            (Oracle::Nonneg, GroupDescriptor::Free { .. }) => {
                return Err(Error::usage("nonneg needs a lattice group"))
            }
            _ => {}
        }
        let natural = natural_generators(desc, &oracle)?;
        let standard_generators = generators.as_ref().is_none_or(|g| *g == natural);
        let generators = generators.unwrap_or(natural);
        for g in &generators {
            if g.descriptor() != desc {
                return Err(Error::usage(format!("generator {g} is not in {desc}")));
            }
        }
        let words = match &oracle {
            Oracle::Generated {
                generators: gens,
                depth,
            } => Some(generated_words(desc, gens, *depth)?),
            _ => None,
        };
        let spec = SubmonoidSpec {
            desc,
            oracle,
            generators,
            standard_generators,
            words,
        };
        if let Some(g) = spec.generators.iter().find(|g| !spec.contains(g)) {
            return Err(Error::usage(format!("generator {g} is not a member of N")));
        }
        spec.check_closure_sample()?;
        Ok(spec)
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    pub fn generators(&self) -> &[GroupElem] {
        &self.generators
    }

    /// Membership test `g in N`.
    pub fn contains(&self, g: &GroupElem) -> bool {
        if g.descriptor() != self.desc {
            return false;
        }
        match &self.oracle {
            Oracle::PositiveLetters => g.letters().is_some_and(|w| w.iter().all(|l| !l.inverse)),
            Oracle::Nonneg => g.coords().is_some_and(|c| c.iter().all(|&x| x >= 0)),
            Oracle::Generated { .. } => self.words.as_ref().is_some_and(|w| w.contains_key(g)),
        }
    }

    /// Writes `n` as a product `g[w0] * g[w1] * ...` of the generators.
    pub fn decompose(&self, n: &GroupElem) -> Option<Vec<usize>> {
        if !self.contains(n) {
            return None;
        }
        if self.standard_generators {
            match &self.oracle {
                Oracle::PositiveLetters => {
                    return Some(n.letters()?.iter().map(|l| l.generator as usize).collect())
                }
                Oracle::Nonneg => {
                    let coords = n.coords()?;
                    let mut word = Vec::new();
                    for (i, &c) in coords.iter().enumerate() {
                        word.extend(std::iter::repeat_n(i, c as usize));
                    }
                    word.extend(std::iter::repeat_n(coords.len(), n.residue() as usize));
                    return Some(word);
                }
                Oracle::Generated { .. } => return self.words.as_ref()?.get(n).cloned(),
            }
        }
        self.search_word(n)
    }

    /// Breadth-first search over generator words whose partial products stay
    /// inside the ball of radius `|n| + max generator norm`.
    fn search_word(&self, n: &GroupElem) -> Option<Vec<usize>> {
        let bound = n.norm() + self.generators.iter().map(|g| g.norm()).max().unwrap_or(0);
        let identity = self.desc.identity();
        let mut parent: HashMap<GroupElem, (GroupElem, usize)> = HashMap::new();
        let mut seen: HashSet<GroupElem> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity.clone()]);
        while let Some(x) = queue.pop_front() {
            if &x == n {
                let mut word = Vec::new();
                let mut cur = x;
                while let Some((prev, gi)) = parent.get(&cur) {
                    word.push(*gi);
                    cur = prev.clone();
                }
                word.reverse();
                return Some(word);
            }
            if seen.len() > DEFAULT_ELEMENT_CAP {
                return None;
            }
            for (gi, g) in self.generators.iter().enumerate() {
                let y = x.mul(g);
                if y.norm() <= bound && self.contains(&y) && seen.insert(y.clone()) {
                    parent.insert(y.clone(), (x.clone(), gi));
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// `N` intersected with `ball(radius)`, in canonical order.
    pub fn members(&self, radius: u32) -> Result<Vec<GroupElem>> {
        match (&self.oracle, self.desc) {
            (Oracle::PositiveLetters, GroupDescriptor::Free { rank }) => {
                let needed: u128 = (0..=radius).map(|l| (rank as u128).saturating_pow(l)).sum();
                if needed > DEFAULT_ELEMENT_CAP as u128 {
                    return Err(Error::Resource {
                        cap: DEFAULT_ELEMENT_CAP,
                        needed,
                        what: format!("positive words of length <= {radius}"),
                    });
                }
                let mut out = vec![self.desc.identity()];
                let mut start = 0;
                for _ in 0..radius {
                    let end = out.len();
                    for i in start..end {
                        for g in 0..rank {
                            let next = out[i].mul(&GroupElem::generator(self.desc, g)?);
                            out.push(next);
                        }
                    }
                    start = end;
                }
                out.sort();
                Ok(out)
            }
            (Oracle::Nonneg, _) => {
                let all = crate::group::Window::Range(0, radius as i64)
                    .elements(self.desc, DEFAULT_ELEMENT_CAP)?;
                Ok(all)
            }
            (Oracle::Generated { .. }, _) => {
                let mut out: Vec<GroupElem> = self
                    .words
                    .as_ref()
                    .map(|w| w.keys().filter(|g| g.norm() <= radius as u64).cloned().collect())
                    .unwrap_or_default();
                out.sort();
                Ok(out)
            }
            _ => unreachable!("oracle/descriptor pairing validated in new"),
        }
    }

    fn check_closure_sample(&self) -> Result<()> {
        if !self.contains(&self.desc.identity()) {
            return Err(Error::usage("identity is not a member of N"));
        }
        if matches!(self.oracle, Oracle::Generated { .. }) {
            return Ok(());
        }
        let sample = self.members(2)?;
        for a in &sample {
            for b in &sample {
                if !self.contains(&a.mul(b)) {
                    return Err(Error::usage(format!("N is not closed: {a} * {b}")));
                }
            }
        }
        Ok(())
    }
}

fn natural_generators(desc: GroupDescriptor, oracle: &Oracle) -> Result<Vec<GroupElem>> {
    Ok(match (oracle, desc) {
        (Oracle::Generated { generators, .. }, _) => generators.clone(),
        (_, GroupDescriptor::Free { rank }) => (0..rank)
            .map(|i| GroupElem::generator(desc, i))
            .collect::<Result<_>>()?,
        (_, GroupDescriptor::IntVector { dim }) => (0..dim)
            .map(|i| GroupElem::generator(desc, i))
            .collect::<Result<_>>()?,
        (_, GroupDescriptor::IntVectorCyclic { dim, .. }) => (0..=dim)
            .map(|i| GroupElem::generator(desc, i))
            .collect::<Result<_>>()?,
    })
}

fn generated_words(
    desc: GroupDescriptor,
    gens: &[GroupElem],
    depth: u32,
) -> Result<HashMap<GroupElem, Vec<usize>>> {
    let mut words = HashMap::from([(desc.identity(), Vec::new())]);
    let mut frontier = vec![desc.identity()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in &frontier {
            for (gi, g) in gens.iter().enumerate() {
                if g.descriptor() != desc {
                    return Err(Error::usage(format!("generator {g} is not in {desc}")));
                }
                let y = x.mul(g);
                if !words.contains_key(&y) {
                    let mut w = words[x].clone();
                    w.push(gi);
                    words.insert(y.clone(), w);
                    next.push(y);
                }
            }
        }
        if words.len() > DEFAULT_ELEMENT_CAP {
            return Err(Error::Resource {
                cap: DEFAULT_ELEMENT_CAP,
                needed: words.len() as u128,
                what: "generated submonoid".into(),
            });
        }
        frontier = next;
    }
    Ok(words)
}

/// Units of `N` inside `ball(radius)`: members whose inverse is a member.
/// Fails when the result is not closed under composition inside the ball,
/// which is how infinite unit groups show up.
pub fn unit_group(spec: &SubmonoidSpec, radius: u32) -> Result<Vec<GroupElem>> {
    let units: Vec<GroupElem> = spec
        .members(radius)?
        .into_iter()
        .filter(|u| spec.contains(&u.inverse()))
        .collect();
    let set: HashSet<&GroupElem> = units.iter().collect();
    for u in &units {
        if !set.contains(&u.inverse()) {
            return Err(unit_window_error(radius, u, &u.inverse()));
        }
        for v in &units {
            let uv = u.mul(v);
            if !set.contains(&uv) {
                return Err(unit_window_error(radius, u, &uv));
            }
        }
    }
    Ok(units)
}

fn unit_window_error(radius: u32, u: &GroupElem, escaped: &GroupElem) -> Error {
    Error::window(format!(
        "unit group not closed within ball({radius}) (from {u} reached {escaped}); \
         retry with a larger radius, infinite unit groups are unsupported"
    ))
}

/// Disjoint-set forest over element indices.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    pub(crate) fn new(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct blocks were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller index wins so that roots are canonical minima
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A congruence on `N`, known exactly on its stable core `N ∩ ball(radius)`.
#[derive(Clone, Debug)]
pub struct Congruence {
    pairs: Vec<(GroupElem, GroupElem)>,
    radius: u32,
    margin: u32,
    stable: bool,
    blocks: Blocks,
}

#[derive(Clone, Debug)]
enum Blocks {
    /// The equality congruence; known everywhere without saturation.
    Trivial,
    Saturated {
        /// `N ∩ ball(radius + margin)` in canonical order.
        elements: Vec<GroupElem>,
        index: HashMap<GroupElem, usize>,
        /// Canonical (minimal) element index of each element's block.
        block: Vec<usize>,
    },
}

/// Least equivalence on `elements` containing `pairs` and closed under left
/// and right multiplication by `generators` whenever both products stay in
/// `elements`. Returns the minimal block member index for each element.
fn close(elements: &[GroupElem], pairs: &[(GroupElem, GroupElem)], generators: &[GroupElem]) -> Vec<usize> {
    let index: HashMap<&GroupElem, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut part = Partition::new(elements.len());
    for (a, b) in pairs {
        if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
            part.union(i, j);
        }
    }
    let images: Vec<Vec<Option<usize>>> = generators
        .iter()
        .flat_map(|g| {
            let left: Vec<Option<usize>> = elements.iter().map(|x| index.get(&g.mul(x)).copied()).collect();
            let right: Vec<Option<usize>> = elements.iter().map(|x| index.get(&x.mul(g)).copied()).collect();
            [left, right]
        })
        .collect();
    loop {
        let mut changed = false;
        for image in &images {
            let mut target_of_block: HashMap<usize, usize> = HashMap::new();
            for (i, img) in image.iter().enumerate() {
                let Some(j) = *img else { continue };
                let block = part.find(i);
                match target_of_block.get(&block) {
                    Some(&k) => changed |= part.union(k, j),
                    None => {
                        target_of_block.insert(block, j);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..elements.len()).map(|i| part.find(i)).collect()
}

/// Saturates `pairs` on `N ∩ ball(radius + margin)`. The result is stable
/// when the blocks restricted to `ball(radius)` agree with those computed at
/// margin `margin - 1`.
pub fn saturate_congruence(
    pairs: &[(GroupElem, GroupElem)],
    spec: &SubmonoidSpec,
    radius: u32,
    margin: u32,
) -> Result<Congruence> {
    for (a, b) in pairs {
        for x in [a, b] {
            if !spec.contains(x) {
                return Err(Error::usage(format!("congruence pair member {x} is not in N")));
            }
        }
    }
    if margin == 0 {
        return Err(Error::usage("congruence margin must be >= 1"));
    }
    if let Some(x) = pairs.iter().flat_map(|(a, b)| [a, b]).find(|x| x.norm() > radius as u64) {
        return Err(Error::window(format!(
            "congruence pair member {x} lies outside the saturation core ball({radius})"
        )));
    }
    let pairs: Vec<(GroupElem, GroupElem)> = pairs.to_vec();
    if pairs.iter().all(|(a, b)| a == b) {
        return Ok(Congruence {
            pairs,
            radius,
            margin,
            stable: true,
            blocks: Blocks::Trivial,
        });
    }
    let elements = spec.members(radius + margin)?;
    let block = close(&elements, &pairs, spec.generators());
    let previous_elements = spec.members(radius + margin - 1)?;
    let previous = close(&previous_elements, &pairs, spec.generators());
    let stable = core_blocks(&elements, &block, radius) == core_blocks(&previous_elements, &previous, radius);
    let index = elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
    Ok(Congruence {
        pairs,
        radius,
        margin,
        stable,
        blocks: Blocks::Saturated {
            elements,
            index,
            block,
        },
    })
}

/// Smallest margin in `1..=max_margin` at which saturation is stable.
pub fn saturate_until_stable(
    pairs: &[(GroupElem, GroupElem)],
    spec: &SubmonoidSpec,
    radius: u32,
    max_margin: u32,
) -> Result<Congruence> {
    let mut last = None;
    for margin in 1..=max_margin.max(1) {
        let c = saturate_congruence(pairs, spec, radius, margin)?;
        if c.stable {
            return Ok(c);
        }
        last = Some(c);
    }
    Ok(last.expect("at least one margin tried"))
}

fn core_blocks(elements: &[GroupElem], block: &[usize], radius: u32) -> Vec<Vec<GroupElem>> {
    let mut by_block: BTreeMap<&GroupElem, Vec<GroupElem>> = BTreeMap::new();
    for (i, g) in elements.iter().enumerate() {
        if g.norm() <= radius as u64 {
            by_block.entry(&elements[block[i]]).or_default().push(g.clone());
        }
    }
    let mut out: Vec<Vec<GroupElem>> = by_block.into_values().collect();
    out.sort();
    out
}

impl Congruence {
    /// The equality congruence, listed on `ball(radius)` when classes are
    /// requested.
    pub fn trivial(radius: u32) -> Self {
        Congruence {
            pairs: Vec::new(),
            radius,
            margin: 1,
            stable: true,
            blocks: Blocks::Trivial,
        }
    }

    pub fn pairs(&self) -> &[(GroupElem, GroupElem)] {
        &self.pairs
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    pub fn is_stable(&self) -> bool {
        self.stable
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.blocks, Blocks::Trivial)
    }

    /// Blocks of the stable core, each sorted, in canonical order of their
    /// minima. For the trivial congruence `members` supplies the core.
    pub fn core_classes(&self, spec: &SubmonoidSpec) -> Result<Vec<Vec<GroupElem>>> {
        match &self.blocks {
            Blocks::Trivial => Ok(spec.members(self.radius)?.into_iter().map(|g| vec![g]).collect()),
            Blocks::Saturated { elements, block, .. } => Ok(core_blocks(elements, block, self.radius)),
        }
    }

    /// Blocks of the whole saturated window (core plus margin).
    pub fn window_classes(&self, spec: &SubmonoidSpec) -> Result<Vec<Vec<GroupElem>>> {
        match &self.blocks {
            Blocks::Trivial => self.core_classes(spec),
            Blocks::Saturated { elements, block, .. } => {
                Ok(core_blocks(elements, block, self.radius + self.margin))
            }
        }
    }

    fn ensure_stable(&self) -> Result<()> {
        if self.stable {
            Ok(())
        } else {
            Err(Error::window(format!(
                "congruence not stable on ball({}) at margin {}",
                self.radius, self.margin
            )))
        }
    }

    pub fn in_core(&self, a: &GroupElem) -> bool {
        match &self.blocks {
            Blocks::Trivial => true,
            Blocks::Saturated { index, .. } => a.norm() <= self.radius as u64 && index.contains_key(a),
        }
    }

    /// The minimal member of the block of `a`; `a` must lie in the core.
    pub fn class_min(&self, a: &GroupElem) -> Result<GroupElem> {
        self.ensure_stable()?;
        match &self.blocks {
            Blocks::Trivial => Ok(a.clone()),
            Blocks::Saturated {
                elements,
                index,
                block,
            } => {
                if a.norm() > self.radius as u64 {
                    return Err(Error::window(format!(
                        "{a} lies outside the stable core ball({})",
                        self.radius
                    )));
                }
                let &i = index
                    .get(a)
                    .ok_or_else(|| Error::usage(format!("{a} is not a member of N")))?;
                Ok(elements[block[i]].clone())
            }
        }
    }

    /// `a ~ b`, for members of the stable core.
    pub fn related(&self, a: &GroupElem, b: &GroupElem) -> Result<bool> {
        if self.is_trivial() {
            return Ok(a == b);
        }
        Ok(self.class_min(a)? == self.class_min(b)?)
    }

    /// All ordered pairs `(a, b)` with `a < b` and `a ~ b` in the core.
    pub fn core_pairs(&self, spec: &SubmonoidSpec) -> Result<Vec<(GroupElem, GroupElem)>> {
        self.ensure_stable()?;
        if self.is_trivial() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for class in self.core_classes(spec)? {
            for (i, a) in class.iter().enumerate() {
                for b in &class[i + 1..] {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// `M = N / ~` together with the finite unit group of `N`.
#[derive(Clone, Debug)]
pub struct QuotientMonoid {
    spec: SubmonoidSpec,
    congruence: Congruence,
    units: Vec<GroupElem>,
    unit_pairs: Vec<(GroupElem, GroupElem)>,
}

impl QuotientMonoid {
    pub fn new(spec: SubmonoidSpec, congruence: Congruence) -> Result<Self> {
        let search = if congruence.is_trivial() {
            UNIT_SEARCH_RADIUS
        } else {
            congruence.radius().min(UNIT_SEARCH_RADIUS)
        };
        let units = unit_group(&spec, search)?;
        let mut unit_pairs = Vec::new();
        for u in &units {
            for v in &units {
                if congruence.related(u, v)? {
                    unit_pairs.push((u.clone(), v.clone()));
                }
            }
        }
        Ok(QuotientMonoid {
            spec,
            congruence,
            units,
            unit_pairs,
        })
    }

    /// Saturates `pairs` at the given radius and margin and assembles the
    /// quotient. Refuses unstable saturations.
    pub fn build(spec: SubmonoidSpec, pairs: &[(GroupElem, GroupElem)], radius: u32, margin: u32) -> Result<Self> {
        let congruence = saturate_congruence(pairs, &spec, radius, margin)?;
        congruence.ensure_stable()?;
        QuotientMonoid::new(spec, congruence)
    }

    /// `N` itself (the trivial congruence).
    pub fn free_of_relations(spec: SubmonoidSpec) -> Result<Self> {
        QuotientMonoid::new(spec, Congruence::trivial(UNIT_SEARCH_RADIUS))
    }

    pub fn spec(&self) -> &SubmonoidSpec {
        &self.spec
    }

    pub fn congruence(&self) -> &Congruence {
        &self.congruence
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.spec.descriptor()
    }

    pub fn units(&self) -> &[GroupElem] {
        &self.units
    }

    pub fn unit_pairs(&self) -> &[(GroupElem, GroupElem)] {
        &self.unit_pairs
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        self.spec.contains(g)
    }

    pub fn related(&self, a: &GroupElem, b: &GroupElem) -> Result<bool> {
        self.congruence.related(a, b)
    }

    pub fn is_unit(&self, g: &GroupElem) -> bool {
        self.spec.contains(g) && self.spec.contains(&g.inverse())
    }
}

/// Checks `a ~ b` on the stable core.
pub fn related(m: &QuotientMonoid, a: &GroupElem, b: &GroupElem) -> Result<bool> {
    m.related(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentReport {
    /// Minimal representatives of the idempotent classes.
    pub idempotents: Vec<GroupElem>,
    /// Classes whose square left the stable core, so their status is unknown.
    pub unresolved: Vec<GroupElem>,
}

/// Classes `c` of the stable core with `c * c = c`.
pub fn idempotent_classes(m: &QuotientMonoid) -> Result<IdempotentReport> {
    let cong = m.congruence();
    cong.ensure_stable()?;
    let mut report = IdempotentReport {
        idempotents: Vec::new(),
        unresolved: Vec::new(),
    };
    for class in cong.core_classes(m.spec())? {
        let rep = &class[0];
        let square = rep.mul(rep);
        if !cong.in_core(&square) {
            report.unresolved.push(rep.clone());
        } else if cong.related(&square, rep)? {
            report.idempotents.push(rep.clone());
        }
    }
    Ok(report)
}

/// A finite set with a left action of `N`, stored on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSet {
    elements: Vec<String>,
    /// For each listed generator, the image of every element (by index).
    action: Vec<(GroupElem, Vec<usize>)>,
    /// Presentation sugar: the action is written `n + s`.
    pub additive: bool,
}

impl MSet {
    pub fn new(elements: Vec<String>, action: Vec<(GroupElem, Vec<usize>)>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::usage("an M-set needs at least one element"));
        }
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return Err(Error::usage(format!("duplicate M-set element `{e}`")));
            }
        }
        for (g, table) in &action {
            if table.len() != n || table.iter().any(|&t| t >= n) {
                return Err(Error::usage(format!("action table of {g} is not total on the carrier")));
            }
        }
        Ok(MSet {
            elements,
            action,
            additive: false,
        })
    }

    /// Builds a carrier `0..size` (named by number) from a closure giving
    /// each generator's action.
    pub fn from_fn(
        size: usize,
        generators: &[GroupElem],
        mut act: impl FnMut(&GroupElem, usize) -> usize,
    ) -> Result<Self> {
        let elements = (0..size).map(|i| i.to_string()).collect();
        let action = generators
            .iter()
            .map(|g| (g.clone(), (0..size).map(|s| act(g, s)).collect()))
            .collect();
        MSet::new(elements, action)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, s: usize) -> &str {
        &self.elements[s]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn action_table(&self) -> &[(GroupElem, Vec<usize>)] {
        &self.action
    }

    pub fn generator_table(&self, g: &GroupElem) -> Option<&[usize]> {
        self.action.iter().find(|(h, _)| h == g).map(|(_, t)| t.as_slice())
    }

    /// `n . s`, evaluated through a generator decomposition of `n`
    /// (rightmost factor acts first).
    pub fn act(&self, spec: &SubmonoidSpec, n: &GroupElem, s: usize) -> Result<usize> {
        let word = spec.decompose(n).ok_or_else(|| {
            Error::Config(format!("{n} has no generator word in N, cannot act on the M-set"))
        })?;
        self.act_word(spec, &word, s)
    }

    fn act_word(&self, spec: &SubmonoidSpec, word: &[usize], mut s: usize) -> Result<usize> {
        for &gi in word.iter().rev() {
            let g = &spec.generators()[gi];
            let table = self
                .generator_table(g)
                .ok_or_else(|| Error::Config(format!("M-set has no action for generator {g}")))?;
            s = table[s];
        }
        Ok(s)
    }
}

/// A witness that two generator words with the same value in `N` act
/// differently, so the table is not an `N`-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSetViolation {
    pub element: GroupElem,
    pub s: usize,
    pub images: (usize, usize),
}

/// Checks that the generator table respects every relation among generator
/// words of length `<= depth`.
pub fn validate_nset(spec: &SubmonoidSpec, set: &MSet, depth: u32) -> Result<Vec<NSetViolation>> {
    let gens = spec.generators();
    let mut first: HashMap<GroupElem, Vec<usize>> = HashMap::new();
    let mut words: Vec<(GroupElem, Vec<usize>)> = vec![(spec.descriptor().identity(), Vec::new())];
    let mut violations = Vec::new();
    let mut frontier = words.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (value, word) in &frontier {
            for (gi, g) in gens.iter().enumerate() {
                let mut w = word.clone();
                w.push(gi);
                next.push((value.mul(g), w));
            }
        }
        if next.len() > DEFAULT_ELEMENT_CAP {
            return Err(Error::Resource {
                cap: DEFAULT_ELEMENT_CAP,
                needed: next.len() as u128,
                what: "generator words for N-set validation".into(),
            });
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    for (value, word) in &words {
        let images: Vec<usize> = (0..set.len())
            .map(|s| set.act_word(spec, word, s))
            .collect::<Result<_>>()?;
        match first.get(value) {
            Some(prev) => {
                for s in 0..set.len() {
                    if prev[s] != images[s] {
                        violations.push(NSetViolation {
                            element: value.clone(),
                            s,
                            images: (prev[s], images[s]),
                        });
                    }
                }
            }
            None => {
                first.insert(value.clone(), images);
            }
        }
    }
    violations.sort_by(|a, b| (&a.element, a.s).cmp(&(&b.element, b.s)));
    violations.dedup_by(|a, b| a.element == b.element && a.s == b.s);
    Ok(violations)
}

/// A triple with `a ~ b` but `a . s != b . s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSetViolation {
    pub a: GroupElem,
    pub b: GroupElem,
    pub s: usize,
    pub a_s: usize,
    pub b_s: usize,
}

impl fmt::Display for MSetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{}): {}.{}={} but {}.{}={}",
            self.a, self.b, self.s, self.a, self.s, self.a_s, self.b, self.s, self.b_s
        )
    }
}

/// Every violation of `a ~ b => a.s = b.s` over related pairs of the stable
/// core. Empty exactly when `S` is an `M`-set on the core.
pub fn validate_mset(m: &QuotientMonoid, set: &MSet) -> Result<Vec<MSetViolation>> {
    let mut out = Vec::new();
    for (a, b) in m.congruence().core_pairs(m.spec())? {
        for s in 0..set.len() {
            let a_s = set.act(m.spec(), &a, s)?;
            let b_s = set.act(m.spec(), &b, s)?;
            if a_s != b_s {
                out.push(MSetViolation {
                    a: a.clone(),
                    b: b.clone(),
                    s,
                    a_s,
                    b_s,
                });
            }
        }
    }
    Ok(out)
}

/// Membership test, exposed under the operation's name.
pub fn contains(spec: &SubmonoidSpec, g: &GroupElem) -> bool {
    spec.contains(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ball;

    fn nat() -> SubmonoidSpec {
        SubmonoidSpec::new(GroupDescriptor::int(1).unwrap(), Oracle::Nonneg, None).unwrap()
    }

    fn int(v: i64) -> GroupElem {
        GroupElem::int(v)
    }

    fn pair(a: i64, b: i64) -> (GroupElem, GroupElem) {
        (int(a), int(b))
    }

    fn block_values(c: &Congruence, spec: &SubmonoidSpec) -> Vec<Vec<i64>> {
        c.core_classes(spec)
            .unwrap()
            .into_iter()
            .map(|b| b.iter().map(|g| g.coords().unwrap()[0]).collect())
            .collect()
    }

    /// Closure of a relation on [0, hi] by pairwise rewriting:
    /// repeatedly add (a+1, b+1) and transitive/symmetric consequences.
    #[allow(clippy::needless_range_loop)]
    fn brute_classes(seed: (i64, i64), hi: i64) -> Vec<Vec<i64>> {
        let n = (hi + 1) as usize;
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            rel[i][i] = true;
        }
        rel[seed.0 as usize][seed.1 as usize] = true;
        rel[seed.1 as usize][seed.0 as usize] = true;
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    if !rel[a][b] {
                        continue;
                    }
                    if a + 1 < n && b + 1 < n && !rel[a + 1][b + 1] {
                        rel[a + 1][b + 1] = true;
                        changed = true;
                    }
                    for c in 0..n {
                        if rel[b][c] && !rel[a][c] {
                            rel[a][c] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out: Vec<Vec<i64>> = Vec::new();
        for a in 0..n {
            if out.iter().any(|c| c.contains(&(a as i64))) {
                continue;
            }
            out.push((0..n).filter(|&b| rel[a][b]).map(|b| b as i64).collect());
        }
        out
    }

    #[test]
    fn membership_examples() {
        let f2 = GroupDescriptor::free(2).unwrap();
        let free = SubmonoidSpec::new(f2, Oracle::PositiveLetters, None).unwrap();
        assert!(free.contains(&GroupElem::parse(f2, "x1*x2").unwrap()));
        assert!(!free.contains(&GroupElem::parse(f2, "x1*x2^-1").unwrap()));
        assert!(!nat().contains(&int(-2)));
        let z = GroupDescriptor::int(1).unwrap();
        let gen23 = SubmonoidSpec::new(
            z,
            Oracle::Generated {
                generators: vec![int(2), int(3)],
                depth: 6,
            },
            None,
        )
        .unwrap();
        // sums of at most six 2s and 3s
        let brute: HashSet<i64> = (0..=6)
            .flat_map(|twos| (0..=6 - twos).map(move |threes| 2 * twos + 3 * threes))
            .collect();
        assert_eq!(gen23.contains(&int(1)), brute.contains(&1));
        assert_eq!(gen23.contains(&int(5)), brute.contains(&5));
        assert!(!gen23.contains(&int(1)));
        assert!(gen23.contains(&int(5)));
    }

    #[test]
    fn bad_specs_are_rejected() {
        let z = GroupDescriptor::int(1).unwrap();
        assert!(SubmonoidSpec::new(z, Oracle::PositiveLetters, None).is_err());
        assert!(SubmonoidSpec::new(z, Oracle::Nonneg, Some(vec![int(-1)])).is_err());
    }

    #[test]
    fn unit_group_examples() {
        let f2 = GroupDescriptor::free(2).unwrap();
        let free = SubmonoidSpec::new(f2, Oracle::PositiveLetters, None).unwrap();
        assert_eq!(unit_group(&free, 4).unwrap(), vec![f2.identity()]);
        assert_eq!(unit_group(&nat(), 5).unwrap(), vec![int(0)]);
        let zc = GroupDescriptor::int_cyclic(1, 2).unwrap();
        let half = SubmonoidSpec::new(zc, Oracle::Nonneg, None).unwrap();
        let expected: Vec<GroupElem> = ball(zc, 3)
            .unwrap()
            .into_iter()
            .filter(|g| half.contains(g) && half.contains(&g.inverse()))
            .collect();
        let units = unit_group(&half, 3).unwrap();
        assert_eq!(units, expected);
        let names: Vec<String> = units.iter().map(|u| u.to_string()).collect();
        assert_eq!(names, ["(0);0", "(0);1"]);
    }

    #[test]
    fn infinite_unit_group_is_a_window_error() {
        let z = GroupDescriptor::int(1).unwrap();
        let whole = SubmonoidSpec::new(
            z,
            Oracle::Generated {
                generators: vec![int(1), int(-1)],
                depth: 8,
            },
            None,
        )
        .unwrap();
        assert!(matches!(unit_group(&whole, 3), Err(Error::Window(_))));
    }

    #[test]
    fn saturation_examples() {
        let spec = nat();
        let c = saturate_congruence(&[pair(2, 5)], &spec, 10, 2).unwrap();
        assert!(c.is_stable());
        let expected = vec![
            vec![0],
            vec![1],
            vec![2, 5, 8],
            vec![3, 6, 9],
            vec![4, 7, 10],
        ];
        assert_eq!(brute_classes((2, 5), 10), expected);
        assert_eq!(block_values(&c, &spec), expected);

        let b = saturate_congruence(&[pair(1, 2)], &spec, 10, 2).unwrap();
        assert_eq!(block_values(&b, &spec), brute_classes((1, 2), 10));
        assert_eq!(block_values(&b, &spec)[1], (1..=10).collect::<Vec<_>>());

        let d = saturate_congruence(&[], &spec, 10, 1).unwrap();
        assert!(d.is_trivial());
        assert!(block_values(&d, &spec).iter().all(|b| b.len() == 1));
    }

    #[test]
    fn saturation_rejects_non_members() {
        assert!(matches!(
            saturate_congruence(&[pair(-1, 2)], &nat(), 5, 1),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn pairs_outside_the_core_are_refused() {
        let err = saturate_congruence(&[pair(3, 20)], &nat(), 5, 3).unwrap_err();
        assert!(matches!(err, Error::Window(_)));
        assert!(saturate_congruence(&[pair(3, 20)], &nat(), 20, 3).unwrap().is_stable());
    }

    #[test]
    fn related_examples() {
        let m = QuotientMonoid::build(nat(), &[pair(2, 5)], 10, 2).unwrap();
        assert!(m.related(&int(3), &int(9)).unwrap());
        assert!(!m.related(&int(0), &int(3)).unwrap());
        assert!(matches!(m.related(&int(3), &int(40)), Err(Error::Window(_))));
        let delta = QuotientMonoid::free_of_relations(nat()).unwrap();
        assert!(delta.related(&int(7), &int(7)).unwrap());
    }

    #[test]
    fn idempotent_examples() {
        let delta = QuotientMonoid::free_of_relations(nat()).unwrap();
        assert_eq!(idempotent_classes(&delta).unwrap().idempotents, vec![int(0)]);
        let boolean = QuotientMonoid::build(nat(), &[pair(1, 2)], 10, 2).unwrap();
        assert_eq!(idempotent_classes(&boolean).unwrap().idempotents, vec![int(0), int(1)]);
        let m25 = QuotientMonoid::build(nat(), &[pair(2, 5)], 10, 2).unwrap();
        let report = idempotent_classes(&m25).unwrap();
        // [3] + [3] = [6] = [3] by the closure above
        assert_eq!(report.idempotents, vec![int(0), int(3)]);
        assert!(report.unresolved.is_empty());
    }

    fn saturating_set() -> MSet {
        MSet::from_fn(2, &[int(1)], |_, _| 1).unwrap()
    }

    fn rotation(m: usize) -> MSet {
        MSet::from_fn(m, &[int(1)], |_, s| (s + 1) % m).unwrap()
    }

    #[test]
    fn mset_validation_examples() {
        let boolean = QuotientMonoid::build(nat(), &[pair(1, 2)], 10, 2).unwrap();
        assert!(validate_mset(&boolean, &saturating_set()).unwrap().is_empty());
        let violations = validate_mset(&boolean, &rotation(2)).unwrap();
        let first = &violations[0];
        assert_eq!((first.a.clone(), first.b.clone(), first.s), (int(1), int(2), 0));
        assert_eq!((first.a_s, first.b_s), (1, 0));
        let delta = QuotientMonoid::free_of_relations(nat()).unwrap();
        assert!(validate_mset(&delta, &rotation(3)).unwrap().is_empty());
    }

    #[test]
    fn nset_validation_catches_noncommuting_tables() {
        let zc = GroupDescriptor::int_cyclic(1, 2).unwrap();
        let spec = SubmonoidSpec::new(zc, Oracle::Nonneg, None).unwrap();
        let gens = spec.generators().to_vec();
        // e1 shifts, residue generator swaps: commute, and the swap squares to 1
        let good = MSet::from_fn(4, &gens, |g, s| if g.residue() == 1 { s ^ 1 } else { (s + 2) % 4 }).unwrap();
        assert!(validate_nset(&spec, &good, 4).unwrap().is_empty());
        // residue generator of order 3 on a 3-cycle: (0;1)^2 = identity fails
        let bad = MSet::from_fn(3, &gens, |g, s| if g.residue() == 1 { (s + 1) % 3 } else { s }).unwrap();
        assert!(!validate_nset(&spec, &bad, 3).unwrap().is_empty());
    }

    #[test]
    fn action_uses_decomposition() {
        let set = rotation(3);
        assert_eq!(set.act(&nat(), &int(5), 0).unwrap(), 2);
        assert!(matches!(set.act(&nat(), &int(-1), 0), Err(Error::Config(_))));
    }
}
