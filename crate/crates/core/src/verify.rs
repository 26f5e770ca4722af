//! The invariant suite behind `verify`: one check id per invariant, run
//! over the shipped corpus and over seeded random samples.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;

use crate::converse::{
    check_etale_poset, classify_points_free_monoid, etale_to_mset, mset_to_etale, points_finite, FreeMonoidProbe,
    PointClass,
};
use crate::corpus::{Corpus, CorpusMonoid};
use crate::coset::{CosetPoset, CosetSpace};
use crate::equivariant::{coset_action, endo_monoid, GroupActionOnPoset, SiteCategory};
use crate::error::Result;
use crate::group::{ball, GroupDescriptor, GroupElem, Letter, Perm, SymmetricGroup, Window};
use crate::groupoid::{
    build_action_groupoid, build_groupoid, check_induced_action, check_translations, groupoid_axiom_check,
    groupoid_structure_check, pattern_grid, pattern_grid_at, trivial_congruence_iso, Groupoid, MonoidGroupoid,
    PairArrow, Tampered,
};
use crate::monoid::{
    idempotent_classes, saturate_congruence, validate_mset, validate_nset, MSet, QuotientMonoid, SubmonoidSpec,
};
use crate::poset::{irreducible_closed_sets, is_etale, is_minimal_basis, random_poset, BasisVerdict, MonotoneMap, WindowPoset};
use crate::render::{parse_dot_covers, render_grid, render_hasse, RenderConfig};
use crate::report::{Report, Tally};
use crate::sample::{Sampler, DEFAULT_SEED};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Groupoid window radius.
    pub radius: u32,
    /// Interior depth.
    pub depth: u32,
    /// Congruence stability margin.
    pub margin: u32,
    pub seed: u64,
    pub budget: usize,
    pub branch: usize,
    /// Radius of the materialized étale windows over lattices (free
    /// groups use at most 3).
    pub etale_radius: u32,
    /// Random posets per poset check.
    pub random_posets: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            radius: 12,
            depth: 3,
            margin: 5,
            seed: DEFAULT_SEED,
            budget: 120,
            branch: 4,
            etale_radius: 5,
            random_posets: 100,
        }
    }
}

impl VerifyConfig {
    pub fn sampler(&self) -> Sampler {
        Sampler::new(self.seed, self.budget, self.branch)
    }

    /// Groupoid radius for one corpus monoid.
    pub fn radius_for(&self, entry: &CorpusMonoid) -> u32 {
        entry.radius.map_or(self.radius, |r| r.min(self.radius))
    }
}

/// The quotient with its congruence saturated on `ball(2·radius)`.
pub fn corpus_quotient(entry: &CorpusMonoid, radius: u32, margin: u32) -> Result<QuotientMonoid> {
    entry.file.build(2 * radius, margin)
}

/// Every check, in module order.
pub fn verify_all(corpus: &Corpus, cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::new();
    report.extend(verify_group(cfg)?);
    report.extend(verify_monoid(corpus, cfg)?);
    report.extend(verify_poset(corpus, cfg)?);
    report.extend(verify_equivariant(corpus, cfg)?);
    report.extend(verify_converse(corpus, cfg)?);
    report.extend(verify_points(cfg)?);
    report.extend(verify_groupoid(corpus, cfg)?);
    report.extend(verify_render(corpus, cfg)?);
    report.extend(verify_cli(corpus, cfg)?);
    let coverage = check_coverage(&report);
    report.extend(coverage);
    Ok(report)
}

/// Each invariant of each module and the check ids that witness it.
pub const COVERAGE: &[(&str, &[&str])] = &[
    ("ambient_group", &["group.associativity", "group.canonical_form", "group.total_order", "group.ball_nesting"]),
    (
        "monoid_core",
        &[
            "monoid.related_equivalence",
            "monoid.compatibility",
            "monoid.margin_monotone",
            "monoid.closure_oracle",
            "monoid.unit_group",
            "monoid.idempotents",
        ],
    ),
    (
        "poset_core",
        &[
            "poset.upset_reversal",
            "poset.sobrification",
            "poset.etale_composition",
            "poset.minimal_basis",
            "poset.basis_counterexample",
        ],
    ),
    (
        "equivariant",
        &["equivariant.hom_anti_isomorphism", "equivariant.endo_conjugation", "equivariant.action_groupoid."],
    ),
    (
        "converse",
        &[
            "converse.round_trip",
            "converse.etale.",
            "converse.theta_translation.",
            "converse.translation.",
            "converse.twist_identity.",
            "converse.endo_identity.",
            "converse.nset_valid",
            "points.finite",
            "points.free_monoid",
        ],
    ),
    (
        "alex_groupoid",
        &[
            "groupoid.unit_laws.",
            "groupoid.associativity.",
            "groupoid.monotone_mu.",
            "groupoid.u_translation.",
            "groupoid.pi_translation.",
            "induced.verdict.",
            "groupoid.unit_embeds_order.",
            "groupoid.source_etale.",
            "groupoid.target_etale.",
            "iso.arrow_order.",
            "groupoid.negative_control_mu.",
            "iso.negative_control_order.",
        ],
    ),
    ("render", &["render.deterministic.", "render.covers_brute_force", "render.figure.", "render.grid."]),
    ("cli", &["cli.reproducible"]),
];

/// `cli.coverage`: every id of [`COVERAGE`] occurs in `report`.
pub fn check_coverage(report: &Report) -> Report {
    let missing: Vec<&str> = COVERAGE
        .iter()
        .flat_map(|(_, ids)| ids.iter().copied())
        .filter(|id| !report.lines().iter().any(|l| l.check == *id || l.check.starts_with(id)))
        .collect();
    let mut out = Report::new();
    if missing.is_empty() {
        let total: usize = COVERAGE.iter().map(|(_, ids)| ids.len()).sum();
        out.pass("cli.coverage", "cli", &[("invariants", total.to_string())]);
    } else {
        out.fail("cli.coverage", "cli", format!("no check for {}", missing.join(",")));
    }
    out
}

const GROUPS: [&str; 4] = ["free:2", "int:1", "int:2", "int:1xZ2"];

pub fn verify_group(cfg: &VerifyConfig) -> Result<Report> {
    const MODULE: &str = "ambient_group";
    let mut sampler = cfg.sampler();
    let mut assoc = Tally::new();
    let mut canonical = Tally::new();
    let mut order = Tally::new();
    let mut nesting = Tally::new();
    for name in GROUPS {
        let desc = GroupDescriptor::parse(name)?;
        let one = desc.identity();
        for _ in 0..cfg.budget {
            let rng = sampler.rng();
            let [a, b, c] = [0; 3].map(|_| desc.random_element(3, rng));
            let lhs = a.compose(&b)?.compose(&c)?;
            let rhs = a.compose(&b.compose(&c)?)?;
            assoc.check(lhs == rhs, || format!("{name}: ({a}*{b})*{c}"));
        }
        let b3 = ball(desc, 3)?;
        for g in sampler.pick_budget(&b3) {
            let reparsed = GroupElem::parse(desc, &g.to_string())?;
            let rereduced = match g.letters() {
                Some(w) => GroupElem::word(desc, w.iter().copied())?,
                None => g.clone(),
            };
            let ok = reparsed == g && rereduced == g && g.mul(&one) == g && g.mul(&g.inverse()).is_identity();
            canonical.check(ok, || format!("{name}: {g}"));
        }
        let b2 = ball(desc, 2)?;
        if desc.is_free() {
            order.check(b2.iter().all(|g| one <= *g), || format!("{name}: identity not minimal"));
        }
        for a in &b2 {
            for b in &b2 {
                let exactly_one = [a < b, a == b, a > b].iter().filter(|&&t| t).count() == 1;
                order.check(exactly_one && a.cmp(b) == b.cmp(a).reverse(), || format!("{name}: {a} vs {b}"));
            }
        }
        for _ in 0..cfg.budget {
            let rng = sampler.rng();
            let [a, b, c] = [0; 3].map(|_| b2[rng.random_range(0..b2.len())].clone());
            if a < b && b < c {
                order.check(a < c, || format!("{name}: {a}<{b}<{c}"));
            }
        }
        let balls: Vec<BTreeSet<GroupElem>> = (0..=3).map(|r| ball(desc, r).map(|v| v.into_iter().collect())).collect::<Result<_>>()?;
        for r in 0..3 {
            nesting.check(balls[r].is_subset(&balls[r + 1]), || format!("{name}: ball({r})"));
        }
        for _ in 0..cfg.budget {
            let rng = sampler.rng();
            let (r, s) = (rng.random_range(0..=1u32), rng.random_range(0..=2u32));
            let a = desc.random_element(r, rng);
            let b = desc.random_element(s, rng);
            let ab = a.mul(&b);
            nesting.check(balls[(r + s) as usize].contains(&ab) && ab.norm() <= (r + s) as u64, || {
                format!("{name}: {a}*{b} leaves ball({})", r + s)
            });
        }
    }
    let mut report = Report::new();
    report.tally("group.associativity", MODULE, &assoc);
    report.tally("group.canonical_form", MODULE, &canonical);
    report.tally("group.total_order", MODULE, &order);
    report.tally("group.ball_nesting", MODULE, &nesting);
    Ok(report)
}

/// Least relation on `N ∩ ball(radius + margin)` containing `pairs` that is
/// reflexive, symmetric, transitive and closed under multiplying both sides
/// by a generator, computed by rewriting pairs until nothing changes.
pub fn brute_force_closure(
    spec: &SubmonoidSpec,
    pairs: &[(GroupElem, GroupElem)],
    radius: u32,
    margin: u32,
) -> Result<Vec<Vec<GroupElem>>> {
    let elements = spec.members(radius + margin)?;
    let index: HashMap<&GroupElem, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let n = elements.len();
    let mut rel: Vec<BTreeSet<usize>> = (0..n).map(|i| BTreeSet::from([i])).collect();
    for (a, b) in pairs {
        if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
            rel[i].insert(j);
        }
    }
    loop {
        let mut next = rel.clone();
        for i in 0..n {
            for &j in &rel[i] {
                next[j].insert(i);
                for &k in &rel[j] {
                    next[i].insert(k);
                }
                for g in spec.generators() {
                    for (x, y) in [(g.mul(&elements[i]), g.mul(&elements[j])), (elements[i].mul(g), elements[j].mul(g))] {
                        if let (Some(&p), Some(&q)) = (index.get(&x), index.get(&y)) {
                            next[p].insert(q);
                        }
                    }
                }
            }
        }
        if next == rel {
            break;
        }
        rel = next;
    }
    let mut classes: BTreeSet<Vec<GroupElem>> = BTreeSet::new();
    for i in 0..n {
        if elements[i].norm() > radius as u64 {
            continue;
        }
        let mut class: Vec<GroupElem> = rel[i]
            .iter()
            .filter(|&&j| elements[j].norm() <= radius as u64)
            .map(|&j| elements[j].clone())
            .collect();
        class.sort();
        classes.insert(class);
    }
    Ok(classes.into_iter().collect())
}

fn related_sample(m: &QuotientMonoid, radius: u32) -> Result<Vec<(GroupElem, GroupElem)>> {
    let mut out: Vec<(GroupElem, GroupElem)> = m.spec().members(radius)?.into_iter().map(|a| (a.clone(), a)).collect();
    for (a, b) in m.congruence().core_pairs(m.spec())? {
        if a.norm() <= radius as u64 && b.norm() <= radius as u64 {
            out.push((b.clone(), a.clone()));
            out.push((a, b));
        }
    }
    Ok(out)
}

pub fn verify_monoid(corpus: &Corpus, cfg: &VerifyConfig) -> Result<Report> {
    const MODULE: &str = "monoid_core";
    let mut report = Report::new();
    for entry in &corpus.monoids {
        let mut sampler = cfg.sampler();
        let r = cfg.radius_for(entry);
        let m = corpus_quotient(entry, r, cfg.margin)?;
        let spec = m.spec();
        let cong = m.congruence();
        let core = cong.radius();
        let small = spec.members(core.min(6))?;

        let mut equiv = Tally::new();
        for a in &small {
            equiv.check(m.related(a, a)?, || format!("{a} not related to itself"));
            for b in &small {
                let ab = m.related(a, b)?;
                equiv.check(ab == m.related(b, a)?, || format!("{a},{b} not symmetric"));
            }
        }
        for _ in 0..cfg.budget * 4 {
            let rng = sampler.rng();
            let [a, b, c] = [0; 3].map(|_| small[rng.random_range(0..small.len())].clone());
            if m.related(&a, &b)? && m.related(&b, &c)? {
                equiv.check(m.related(&a, &c)?, || format!("{a}~{b}~{c}"));
            }
        }

        let mut compat = Tally::new();
        let related = related_sample(&m, (core / 2).min(8))?;
        let pairs_a = sampler.pick_budget(&related);
        let pairs_b = sampler.pick(&related, cfg.branch * 4);
        for (a, b) in &pairs_a {
            for (c, d) in &pairs_b {
                let (ac, bd) = (a.mul(c), b.mul(d));
                if cong.in_core(&ac) && cong.in_core(&bd) && spec.contains(&ac) && spec.contains(&bd) {
                    compat.check(m.related(&ac, &bd)?, || format!("{a}~{b}, {c}~{d} but not {ac}~{bd}"));
                } else {
                    compat.skip();
                }
            }
        }

        let mut margin = Tally::new();
        let mut oracle = Tally::new();
        let pairs = entry.file.pairs()?;
        if !cong.is_trivial() {
            // lattices get the [0, 30] window; positive words grow too fast for more than 4
            let radius = if spec.descriptor().is_free() { 4 } else { 30 };
            let a = saturate_congruence(&pairs, spec, radius, cfg.margin)?;
            let b = saturate_congruence(&pairs, spec, radius, cfg.margin + 1)?;
            let (ca, cb) = (a.core_classes(spec)?, b.core_classes(spec)?);
            let coarser = ca.iter().all(|class| cb.iter().any(|big| class.iter().all(|x| big.contains(x))));
            margin.check(coarser, || format!("margin {} splits a block", cfg.margin + 1));
            if a.is_stable() {
                margin.check(ca == cb, || format!("stable at margin {} but blocks change", cfg.margin));
            }
            let brute = brute_force_closure(spec, &pairs, radius, cfg.margin)?;
            oracle.check(brute == ca, || format!("blocks differ from brute force on ball({radius})"));
        } else {
            margin.skip();
            oracle.skip();
        }

        let mut units = Tally::new();
        let unit_set: BTreeSet<&GroupElem> = m.units().iter().collect();
        for u in m.units() {
            units.check(unit_set.contains(&u.inverse()), || format!("{u} inverse"));
            for v in m.units() {
                units.check(unit_set.contains(&u.mul(v)), || format!("{u}*{v}"));
            }
        }
        for (u, v) in m.unit_pairs() {
            for (a, b) in &pairs_a {
                let (ua, vb) = (u.mul(a), v.mul(b));
                if cong.in_core(&ua) && cong.in_core(&vb) {
                    units.check(m.related(&ua, &vb)?, || format!("({u},{v}) moves {a}~{b} off R1"));
                } else {
                    units.skip();
                }
            }
        }

        let mut idem = Tally::new();
        let delta = QuotientMonoid::free_of_relations(spec.clone())?;
        let found: BTreeSet<GroupElem> = idempotent_classes(&delta)?.idempotents.into_iter().collect();
        let direct: BTreeSet<GroupElem> = delta
            .congruence()
            .core_classes(spec)?
            .into_iter()
            .map(|c| c[0].clone())
            .filter(|n| n.mul(n) == *n)
            .collect();
        idem.check(found == direct, || format!("{found:?} vs {direct:?}"));

        let mut r = Report::new();
        r.tally("monoid.related_equivalence", MODULE, &equiv);
        r.tally("monoid.compatibility", MODULE, &compat);
        r.tally("monoid.margin_monotone", MODULE, &margin);
        r.tally("monoid.closure_oracle", MODULE, &oracle);
        r.tally("monoid.unit_group", MODULE, &units);
        r.tally("monoid.idempotents", MODULE, &idem);
        report.extend(r.suffixed(&entry.name));
    }
    Ok(report)
}

/// `k` disjoint copies of `p` and the fold map onto `p`.
fn copies(p: &WindowPoset, k: usize) -> Result<WindowPoset> {
    let n = p.len();
    let names = (0..k * n).map(|i| format!("{}#{}", p.name(i % n), i / n)).collect();
    WindowPoset::from_fn(names, |a, b| a / n == b / n && p.leq(a % n, b % n))
}

/// Small materialized coset posets of the corpus monoids.
fn corpus_coset_posets(corpus: &Corpus) -> Result<Vec<(String, CosetPoset)>> {
    let mut out = Vec::new();
    for entry in &corpus.monoids {
        let spec = entry.file.spec()?;
        let window = if spec.descriptor().is_free() {
            Window::Ball(2)
        } else {
            Window::Ball(4)
        };
        out.push((entry.name.clone(), crate::coset::build_coset_poset(&spec, window, 1)?));
    }
    Ok(out)
}

pub fn verify_poset(corpus: &Corpus, cfg: &VerifyConfig) -> Result<Report> {
    const MODULE: &str = "poset_core";
    let mut sampler = cfg.sampler();
    let mut posets: Vec<(String, WindowPoset)> = Vec::new();
    for i in 0..cfg.random_posets {
        let rng = sampler.rng();
        let size = rng.random_range(1..=8);
        let density = rng.random_range(0.1..0.7);
        posets.push((format!("random{i}"), random_poset(rng, size, density)));
    }
    let coset = corpus_coset_posets(corpus)?;
    let mut reversal = Tally::new();
    let mut basis = Tally::new();
    let all: Vec<(&str, &WindowPoset)> = posets
        .iter()
        .map(|(n, p)| (n.as_str(), p))
        .chain(coset.iter().map(|(n, c)| (n.as_str(), c.poset())))
        .collect();
    for (name, p) in all {
        let ups: Vec<BTreeSet<usize>> = (0..p.len()).map(|x| p.up_set(x).into_iter().collect()).collect();
        for x in 0..p.len() {
            for y in 0..p.len() {
                reversal.check(ups[x].is_subset(&ups[y]) == p.leq(y, x), || format!("{name}: {x},{y}"));
            }
        }
        let family: Vec<Vec<usize>> = (0..p.len()).map(|x| p.up_set(x)).collect();
        let verdict = is_minimal_basis(p, &family)?;
        basis.check(verdict.passes(), || format!("{name}: {verdict:?}"));
    }

    let mut sober = Tally::new();
    let mut etale = Tally::new();
    for (name, p) in &posets {
        let sets: BTreeSet<Vec<usize>> = irreducible_closed_sets(p)?.into_iter().collect();
        let downs: BTreeSet<Vec<usize>> = (0..p.len()).map(|x| p.down_set(x)).collect();
        sober.check(sets == downs && downs.len() == p.len(), || name.to_string());

        let q = copies(p, 2)?;
        let r = copies(&q, 2)?;
        let f = MonotoneMap::new(&q, p, (0..q.len()).map(|i| i % p.len()).collect())?;
        let g = MonotoneMap::new(&r, &q, (0..r.len()).map(|i| i % q.len()).collect())?;
        let both = is_etale(&f).is_ok() && is_etale(&g).is_ok();
        let composite = g.then(&f)?;
        etale.check(!both || is_etale(&composite).is_ok(), || name.to_string());
    }

    let mut counter = Tally::new();
    let anti = WindowPoset::antichain(&["a", "b"]);
    let verdict = is_minimal_basis(&anti, &[vec![0], vec![1], vec![0, 1]])?;
    counter.check(
        verdict
            == BasisVerdict::NotMinimal {
                union: vec![0, 1],
                parts: vec![vec![0], vec![1]],
            },
        || format!("{verdict:?}"),
    );

    let mut report = Report::new();
    report.tally("poset.upset_reversal", MODULE, &reversal);
    report.tally("poset.sobrification", MODULE, &sober);
    report.tally("poset.etale_composition", MODULE, &etale);
    report.tally("poset.minimal_basis", MODULE, &basis);
    report.tally("poset.basis_counterexample", MODULE, &counter);
    Ok(report)
}

fn s3_on_three() -> Result<GroupActionOnPoset<SymmetricGroup>> {
    let s3 = SymmetricGroup { degree: 3 };
    let elements = s3.elements();
    GroupActionOnPoset::new(s3, WindowPoset::antichain(&["1", "2", "3"]), elements, |x, g: &Perm| Some(g.apply(x)))
}

/// `{h ∈ elements : p·h >= p}` computed through the coset order.
fn endo_by_order(space: &CosetSpace, p: &GroupElem, elements: &[GroupElem]) -> BTreeSet<GroupElem> {
    elements
        .iter()
        .filter(|h| space.leq(p, &space.act(p, h)))
        .cloned()
        .collect()
}

pub fn verify_equivariant(corpus: &Corpus, cfg: &VerifyConfig) -> Result<Report> {
    const MODULE: &str = "equivariant";
    let mut report = Report::new();
    let mut anti = Tally::new();
    let mut conj = Tally::new();
    for (name, poset) in corpus_coset_posets(corpus)? {
        let action = coset_action(&poset, if poset.spec().descriptor().is_free() { 2 } else { 4 })?;
        let site = SiteCategory::new(&action);
        let Some(p) = poset.identity_node() else { continue };
        let homs = site.hom(p, p);
        let hom_set: BTreeSet<&GroupElem> = homs.iter().collect();
        let endo: BTreeSet<GroupElem> = endo_monoid(&action, p)?.into_iter().collect();
        anti.check(homs.iter().cloned().collect::<BTreeSet<_>>() == endo, || format!("{name}: hom(p,p) != endo(p)"));
        anti.check(hom_set.contains(&site.identity()), || format!("{name}: identity"));
        for f in &homs {
            for g in &homs {
                let composite = site.compose(g, f);
                anti.check(composite == f.mul(g), || format!("{name}: {g} after {f}"));
                if action.is_tabulated(&composite) {
                    anti.check(hom_set.contains(&composite), || format!("{name}: {g} after {f} leaves hom(p,p)"));
                }
            }
        }
    }
    let mut sampler = cfg.sampler();
    for entry in &corpus.monoids {
        let spec = entry.file.spec()?;
        let m = QuotientMonoid::free_of_relations(spec)?;
        let space = CosetSpace::for_monoid(&m, Window::Ball(cfg.radius), 1)?;
        let desc = m.descriptor();
        let inner = if desc.is_free() { 2 } else { 4 };
        let outer = ball(desc, inner + 4)?;
        let outer_set: BTreeSet<GroupElem> = outer.iter().cloned().collect();
        let inner_set: BTreeSet<GroupElem> = ball(desc, inner)?.into_iter().collect();
        let points = sampler.pick(&ball(desc, 2)?, cfg.branch);
        for p0 in &points {
            let p = space.canon(p0);
            let endo_p = endo_by_order(&space, &p, &outer);
            for g in sampler.pick(&ball(desc, 2)?, cfg.branch) {
                let pg = space.act(&p, &g);
                let lhs: BTreeSet<GroupElem> = endo_by_order(&space, &pg, &outer).intersection(&inner_set).cloned().collect();
                let rhs: BTreeSet<GroupElem> = endo_p
                    .iter()
                    .map(|f| g.inverse().mul(f).mul(&g))
                    .filter(|h| inner_set.contains(h))
                    .collect();
                // g⁻¹ f g with f ∈ ball(inner + 4) covers ball(inner) once |g| <= 2
                debug_assert!(rhs.iter().all(|h| outer_set.contains(h)));
                conj.check(lhs == rhs, || format!("{}: p={p} g={g}", entry.name));
            }
        }
    }
    report.tally("equivariant.hom_anti_isomorphism", MODULE, &anti);
    report.tally("equivariant.endo_conjugation", MODULE, &conj);

    for entry in &corpus.monoids {
        let spec = entry.file.spec()?;
        let m = QuotientMonoid::free_of_relations(spec)?;
        let r = cfg.radius_for(entry);
        let space = CosetSpace::for_monoid(&m, Window::Ball(r), cfg.depth.min(r))?;
        let mut sampler = cfg.sampler();
        let a = build_action_groupoid(&space, &mut sampler)?;
        let checks = groupoid_axiom_check(&a, &mut sampler)?;
        report.extend(rename_module(checks, "equivariant.action_groupoid", MODULE).suffixed(&entry.name));
    }
    let s3 = s3_on_three()?;
    let mut sampler = cfg.sampler();
    let a = build_action_groupoid(&s3, &mut sampler)?;
    let checks = groupoid_axiom_check(&a, &mut sampler)?;
    report.extend(rename_module(checks, "equivariant.action_groupoid", MODULE).suffixed("s3"));
    Ok(report)
}

/// Re-labels `groupoid.*` lines as `prefix.*` in `module`.
fn rename_module(report: Report, prefix: &str, module: &str) -> Report {
    let mut out = Report::new();
    for line in report.lines() {
        let mut line = line.clone();
        line.check = line.check.replacen("groupoid", prefix, 1);
        line.module = module.to_string();
        out.push(line);
    }
    out
}

fn load_mset(corpus: &Corpus, name: &str, desc: GroupDescriptor) -> Result<MSet> {
    let entry = corpus
        .msets
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| crate::error::Error::usage(format!("no M-set {name}")))?;
    entry.file.to_mset(desc)
}

fn etale_window(desc: GroupDescriptor, cfg: &VerifyConfig) -> Window {
    if desc.is_free() {
        Window::Ball(cfg.etale_radius.min(3))
    } else {
        Window::Ball(cfg.etale_radius)
    }
}

pub fn verify_converse(corpus: &Corpus, cfg: &VerifyConfig) -> Result<Report> {
    const MODULE: &str = "converse";
    let mut report = Report::new();
    let mut nset = Tally::new();
    let mut round = Tally::new();
    for entry in &corpus.monoids {
        let r = cfg.radius_for(entry);
        let m = corpus_quotient(entry, r, cfg.margin)?;
        let desc = m.descriptor();
        for s in corpus.msets_over(&entry.name) {
            let set = load_mset(corpus, &s.name, desc)?;
            let violations = validate_nset(m.spec(), &set, 4)?;
            nset.check(violations.is_empty(), || format!("{}: {:?}", s.name, violations.first()));
            let e = mset_to_etale(&m, &set, etale_window(desc, cfg), 1)?;
            let mut sampler = cfg.sampler();
            report.extend(check_etale_poset(&e, 2, &mut sampler)?.suffixed(&s.name));
            if validate_mset(&m, &set)?.is_empty() {
                let back = etale_to_mset(&e)?;
                let same = back.elements() == set.elements()
                    && m.spec().generators().iter().all(|g| back.generator_table(g) == set.generator_table(g));
                round.check(same, || s.name.clone());
            } else {
                round.skip();
            }
        }
        let poset = crate::coset::build_coset_poset(m.spec(), etale_window(desc, cfg), 1)?;
        let inner = if desc.is_free() { 2 } else { 3 };
        let action = coset_action(&poset, inner)?;
        let mut endo = Tally::new();
        match poset.identity_node() {
            Some(one) => {
                let found: BTreeSet<GroupElem> = endo_monoid(&action, one)?.into_iter().collect();
                let members: BTreeSet<GroupElem> = m.spec().members(inner)?.into_iter().collect();
                endo.check(found == members, || format!("{found:?}"));
                let classes: BTreeSet<GroupElem> = found.iter().filter_map(|g| poset.act(one, g)).collect::<BTreeSet<_>>().into_iter().map(|x| poset.rep(x).clone()).collect();
                let member_classes: BTreeSet<GroupElem> = members.iter().filter_map(|g| poset.node_of(g)).map(|x| poset.rep(x).clone()).collect();
                endo.check(classes == member_classes, || "classes differ".into());
            }
            None => endo.skip(),
        }
        report.tally(&format!("converse.endo_identity.{}", entry.name), MODULE, &endo);
    }
    report.tally("converse.nset_valid", MODULE, &nset);
    report.tally("converse.round_trip", MODULE, &round);
    Ok(report)
}

fn letters(word: &[u32]) -> Vec<Letter> {
    word.iter().map(|&g| Letter::positive(g)).collect()
}

pub fn verify_points(cfg: &VerifyConfig) -> Result<Report> {
    const MODULE: &str = "converse";
    let mut report = Report::new();
    let mut finite = Tally::new();
    let s3 = s3_on_three()?;
    let orbits = points_finite(&s3)?;
    finite.check(orbits.len() == 1, || format!("S3 orbits {orbits:?}"));
    let mut sampler = cfg.sampler();
    for _ in 0..cfg.random_posets / 4 {
        let rng = sampler.rng();
        let size = rng.random_range(1..=6);
        let p = random_poset(rng, size, 0.4);
        let trivial = GroupActionOnPoset::new(SymmetricGroup { degree: 1 }, p.clone(), SymmetricGroup { degree: 1 }.elements(), |x, _| Some(x))?;
        finite.check(points_finite(&trivial)?.len() == size, || format!("trivial group on {size} nodes"));
    }
    let swap = GroupActionOnPoset::new(SymmetricGroup { degree: 2 }, WindowPoset::antichain(&["a", "b"]), SymmetricGroup { degree: 2 }.elements(), |x, g: &Perm| Some(g.apply(x)))?;
    finite.check(points_finite(&swap)?.len() == 1, || "swap".into());
    report.tally("points.finite", MODULE, &finite);

    let mut free = Tally::new();
    let mut k1 = BTreeSet::new();
    k1.insert(classify_points_free_monoid(1, &FreeMonoidProbe::Finite(letters(&[0, 0])))?);
    k1.insert(classify_points_free_monoid(1, &FreeMonoidProbe::Finite(vec![]))?);
    for n in 1..4 {
        let probe = FreeMonoidProbe::Infinite {
            prefix: letters(&vec![0; n - 1]),
            period: letters(&vec![0; n]),
        };
        k1.insert(classify_points_free_monoid(1, &probe)?);
    }
    free.check(k1.len() == 2 && k1.contains(&PointClass::Principal), || format!("{k1:?}"));
    let t1 = classify_points_free_monoid(2, &FreeMonoidProbe::Infinite { prefix: vec![], period: letters(&[0]) })?;
    let t2 = classify_points_free_monoid(2, &FreeMonoidProbe::Infinite { prefix: vec![], period: letters(&[1]) })?;
    free.check(t1 != t2, || "x1^inf and x2^inf collide".into());
    let tail = letters(&[0, 1, 1]);
    let a = classify_points_free_monoid(2, &FreeMonoidProbe::Infinite { prefix: letters(&[1]), period: tail.clone() })?;
    let b = classify_points_free_monoid(2, &FreeMonoidProbe::Infinite { prefix: vec![], period: tail })?;
    free.check(a == b, || format!("{a} vs {b}"));
    // one-letter cross-check: down-closed directed sets of a ℤ-window up to
    // translation are the principal ones plus the whole window
    let chain = WindowPoset::chain(9);
    let mut kinds = BTreeSet::new();
    for set in irreducible_closed_sets(&chain)? {
        kinds.insert(set.len() == chain.len());
    }
    free.check(kinds.len() == 2, || format!("{kinds:?}"));
    report.tally("points.free_monoid", MODULE, &free);
    Ok(report)
}

/// A non-unit interior arrow of `g`, if any.
fn some_proper_arrow(g: &MonoidGroupoid, sampler: &mut Sampler) -> Result<Option<PairArrow>> {
    Ok(g
        .arrows(sampler)?
        .into_iter()
        .find(|f| {
            g.is_interior_arr(f)
                && g.object(&f.0) != g.object(&f.1)
                && g.arrows_above(f).map(|a| a.len() > 1).unwrap_or(false)
        }))
}

/// Groupoid checks for one corpus monoid.
pub fn verify_groupoid_for(corpus: &Corpus, entry: &CorpusMonoid, cfg: &VerifyConfig) -> Result<Report> {
    const MODULE: &str = "alex_groupoid";
    let r = cfg.radius_for(entry);
    let d = cfg.depth.min(r);
    let m = corpus_quotient(entry, r, cfg.margin)?;
    let g = build_groupoid(&m, r, d, &mut cfg.sampler())?;
    let mut report = Report::new();
    report.extend(groupoid_axiom_check(&g, &mut cfg.sampler())?);
    report.extend(groupoid_structure_check(&g, &mut cfg.sampler())?);

    let small_r = if m.descriptor().is_free() { r.min(3) } else { r.min(5) };
    let small = build_groupoid(&m, small_r, 1, &mut Sampler::exhaustive())?;
    report.extend(check_translations(&small, cfg.branch + 2, &mut cfg.sampler())?);

    if let Some(f) = some_proper_arrow(&g, &mut cfg.sampler())? {
        let x = g.object(&f.0);
        let bad = Tampered::with_composite(&g, g.unit(&x), f.clone(), g.pair_arrow(&f.1, &f.0));
        let caught = !groupoid_axiom_check(&bad, &mut cfg.sampler())?.all_pass();
        if caught {
            report.pass("groupoid.negative_control_mu", MODULE, &[("arrow", f.to_string())]);
        } else {
            report.fail("groupoid.negative_control_mu", MODULE, format!("corrupted composite at {f} went unnoticed"));
        }
    }

    if m.congruence().is_trivial() {
        let space = CosetSpace::for_monoid(&m, Window::Ball(r), d)?;
        let a = build_action_groupoid(&space, &mut cfg.sampler())?;
        report.extend(trivial_congruence_iso(&g, &a, &mut cfg.sampler())?);
        // the control runs exhaustively on a small window so the tampered
        // arrow is certain to be visited
        let small_r = if m.descriptor().is_free() { r.min(2) } else { r.min(5) };
        let small = build_groupoid(&m, small_r, 1, &mut Sampler::exhaustive())?;
        let space = CosetSpace::for_monoid(&m, Window::Ball(small_r), 1)?;
        let a = build_action_groupoid(&space, &mut Sampler::exhaustive())?;
        if let Some(f) = some_proper_arrow(&small, &mut Sampler::exhaustive())? {
            let bad = Tampered::with_detached_arrow(&small, f.clone());
            let caught = !trivial_congruence_iso(&bad, &a, &mut Sampler::exhaustive())?.all_pass();
            if caught {
                report.pass("iso.negative_control_order", MODULE, &[("arrow", f.to_string())]);
            } else {
                report.fail("iso.negative_control_order", MODULE, format!("detached arrow {f} went unnoticed"));
            }
        }
    }

    for s in corpus.msets_over(&entry.name) {
        let set = load_mset(corpus, &s.name, m.descriptor())?;
        report.extend(check_induced_action(&g, &set, &s.name, &mut cfg.sampler())?);
    }
    Ok(report.suffixed(&entry.name))
}

pub fn verify_groupoid(corpus: &Corpus, cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::new();
    for entry in &corpus.monoids {
        report.extend(verify_groupoid_for(corpus, entry, cfg)?);
    }
    Ok(report)
}

/// Cover pairs of `(z,s) <= (z',s') ⟺ z <= z' and s' = (z'-z)·s` on
/// `lo..=hi`, labelled `(z)|s`.
pub fn figure_covers(m: &QuotientMonoid, set: &MSet, lo: i64, hi: i64) -> Result<BTreeSet<(String, String)>> {
    let mut nodes = Vec::new();
    for z in lo..=hi {
        for s in 0..set.len() {
            nodes.push((z, s));
        }
    }
    let mut leq = BTreeMap::new();
    for &(z, s) in &nodes {
        for &(z2, s2) in &nodes {
            let ok = z <= z2 && set.act(m.spec(), &GroupElem::int(z2 - z), s)? == s2;
            leq.insert(((z, s), (z2, s2)), ok);
        }
    }
    let lt = |a: (i64, usize), b: (i64, usize)| a != b && leq[&(a, b)];
    let mut out = BTreeSet::new();
    for &a in &nodes {
        for &b in &nodes {
            if lt(a, b) && !nodes.iter().any(|&c| lt(a, c) && lt(c, b)) {
                out.insert((format!("({})|{}", a.0, set.name(a.1)), format!("({})|{}", b.0, set.name(b.1))));
            }
        }
    }
    Ok(out)
}

pub fn verify_render(corpus: &Corpus, cfg: &VerifyConfig) -> Result<Report> {
    const MODULE: &str = "render";
    let mut report = Report::new();
    for fig in &corpus.figures {
        let m = crate::io::MonoidFile::load(&corpus.path(&fig.monoid))?.build(24, cfg.margin)?;
        let set = crate::io::MSetFile::load(&corpus.path(&fig.mset))?.to_mset(m.descriptor())?;
        let window = Window::parse(&fig.window)?;
        let Window::Range(lo, hi) = window else {
            return Err(crate::error::Error::usage("figure windows are ranges"));
        };
        let e = mset_to_etale(&m, &set, window, 1)?;
        let dot = render_hasse(e.total(), &RenderConfig::default());
        let got: BTreeSet<(String, String)> = parse_dot_covers(&dot)?.into_iter().collect();
        let expected = figure_covers(&m, &set, lo, hi)?;
        let check = format!("render.figure.{}", fig.name);
        if got == expected {
            report.pass(&check, MODULE, &[("covers", got.len().to_string()), ("nodes", e.total().len().to_string())]);
        } else {
            let diff: Vec<_> = got.symmetric_difference(&expected).take(3).collect();
            report.fail(&check, MODULE, format!("{diff:?}"));
        }
        golden_line(&mut report, &format!("render.golden.{}", fig.name), &corpus.path(&fig.golden), &dot);
        let again = render_hasse(e.total(), &RenderConfig::default());
        deterministic(&mut report, &fig.name, dot == again);
    }
    for grid in &corpus.grids {
        let m = crate::io::MonoidFile::load(&corpus.path(&grid.monoid))?.build(2 * grid.size as u32 + 2, cfg.margin)?;
        let pattern = pattern_grid(&m, grid.size)?;
        let text = render_grid(&pattern) + "\n";
        golden_line(&mut report, &format!("render.grid.{}", grid.name), &corpus.path(&grid.golden), &text);
        let mut moved = Tally::new();
        for (x, y) in [(3, -4), (-7, 0), (2, 2)] {
            let shifted = pattern_grid_at(&m, grid.size, (GroupElem::int(x), GroupElem::int(y)))?;
            moved.check(shifted.cells == pattern.cells, || format!("anchor ({x},{y})"));
        }
        report.tally(&format!("groupoid.grid_translation.{}", grid.name), "alex_groupoid", &moved);
    }
    let mut covers = Tally::new();
    let mut sampler = cfg.sampler();
    for _ in 0..cfg.random_posets {
        let rng = sampler.rng();
        let size = rng.random_range(1..=8);
        let p = random_poset(rng, size, 0.4);
        let n = p.len();
        let mut brute = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if p.lt(a, b) && !(0..n).any(|x| p.lt(a, x) && p.lt(x, b)) {
                    brute.push((a, b));
                }
            }
        }
        let mut got = p.covers();
        got.sort();
        covers.check(got == brute, || format!("{got:?} vs {brute:?}"));
    }
    report.tally("render.covers_brute_force", MODULE, &covers);
    Ok(report)
}

fn deterministic(report: &mut Report, name: &str, same: bool) {
    let check = format!("render.deterministic.{name}");
    if same {
        report.pass(&check, "render", &[]);
    } else {
        report.fail(&check, "render", "two renders differ");
    }
}

fn golden_line(report: &mut Report, check: &str, path: &std::path::Path, text: &str) {
    match std::fs::read_to_string(path) {
        Ok(golden) if golden == text => report.pass(check, "render", &[("golden", path.display().to_string())]),
        Ok(_) => report.fail(check, "render", format!("output differs from {}", path.display())),
        Err(e) => report.fail(check, "render", format!("{}: {e}", path.display())),
    }
}

/// Runs one seeded pipeline twice and compares the reports byte for byte.
pub fn verify_cli(corpus: &Corpus, cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::new();
    let Some(entry) = corpus.monoids.iter().find(|m| !m.file.congruence_pairs.is_empty()).or(corpus.monoids.first()) else {
        return Ok(report);
    };
    let small = VerifyConfig {
        radius: cfg.radius.min(6),
        depth: cfg.depth.min(2),
        ..cfg.clone()
    };
    let first = verify_groupoid_for(corpus, entry, &small)?.to_string();
    let second = verify_groupoid_for(corpus, entry, &small)?.to_string();
    if first == second {
        report.pass("cli.reproducible", "cli", &[("pipeline", format!("groupoid {}", entry.name))]);
    } else {
        report.fail("cli.reproducible", "cli", "two runs with one seed differ");
    }
    Ok(report)
}
