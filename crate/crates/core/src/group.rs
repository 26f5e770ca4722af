//! Ambient groups: free groups, integer lattices, and lattices times a cyclic
//! group. Elements are kept in canonical form, so structural equality is group
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use rand::Rng;

use crate::error::{Error, Result};

/// Default bound on the number of elements a single enumeration may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupDescriptor {
    /// Free group on `rank` generators `x1 .. xk`.
    Free { rank: u32 },
    /// The lattice Z^dim under addition.
    IntVector { dim: u32 },
    /// Z^dim x Z/modulus.
    IntVectorCyclic { dim: u32, modulus: u32 },
}

impl GroupDescriptor {
    pub fn free(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::usage("free group needs at least one generator"));
        }
        Ok(GroupDescriptor::Free { rank })
    }

    pub fn int(dim: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::usage("integer lattice needs dimension >= 1"));
        }
        Ok(GroupDescriptor::IntVector { dim })
    }

    pub fn int_cyclic(dim: u32, modulus: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::usage("integer lattice needs dimension >= 1"));
        }
        if modulus < 2 {
            return Err(Error::usage("cyclic factor needs modulus >= 2"));
        }
        Ok(GroupDescriptor::IntVectorCyclic { dim, modulus })
    }

    /// Parses `free:2`, `int:1` or `int:1xZ2`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::parse(format!("unknown group descriptor `{text}`"));
        let (kind, rest) = text.split_once(':').ok_or_else(bad)?;
        match kind {
            "free" => GroupDescriptor::free(rest.parse().map_err(|_| bad())?),
            "int" => match rest.split_once("xZ") {
                Some((dim, m)) => GroupDescriptor::int_cyclic(
                    dim.parse().map_err(|_| bad())?,
                    m.parse().map_err(|_| bad())?,
                ),
                None => GroupDescriptor::int(rest.parse().map_err(|_| bad())?),
            },
            _ => Err(bad()),
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, GroupDescriptor::Free { .. })
    }

    /// Dimension of the lattice part, or `None` for free groups.
    pub fn dim(&self) -> Option<u32> {
        match *self {
            GroupDescriptor::Free { .. } => None,
            GroupDescriptor::IntVector { dim } | GroupDescriptor::IntVectorCyclic { dim, .. } => {
                Some(dim)
            }
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        match *self {
            GroupDescriptor::IntVectorCyclic { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElem {
        match *self {
            GroupDescriptor::Free { .. } => GroupElem {
                desc: *self,
                payload: Payload::Word(Vec::new()),
            },
            GroupDescriptor::IntVector { dim } | GroupDescriptor::IntVectorCyclic { dim, .. } => {
                GroupElem {
                    desc: *self,
                    payload: Payload::Vector {
                        coords: vec![0; dim as usize],
                        residue: 0,
                    },
                }
            }
        }
    }

    /// Number of elements in `ball(r)`, saturating rather than overflowing.
    pub fn ball_size(&self, radius: u32) -> u128 {
        match *self {
            GroupDescriptor::Free { rank } => {
                let letters = 2 * rank as u128;
                let mut total: u128 = 1;
                let mut layer: u128 = letters;
                for _ in 0..radius {
                    total = total.saturating_add(layer);
                    layer = layer.saturating_mul(letters - 1);
                }
                total
            }
            GroupDescriptor::IntVector { dim } => (2 * radius as u128 + 1).saturating_pow(dim),
            GroupDescriptor::IntVectorCyclic { dim, modulus } => (2 * radius as u128 + 1)
                .saturating_pow(dim)
                .saturating_mul(modulus as u128),
        }
    }

    /// Uniformly chosen letter count, then a uniformly extended reduced word
    /// (free case) or uniform coordinates (lattice case).
    pub fn random_element<R: Rng>(&self, radius: u32, rng: &mut R) -> GroupElem {
        match *self {
            GroupDescriptor::Free { rank } => {
                let len = rng.random_range(0..=radius) as usize;
                let mut letters: Vec<Letter> = Vec::with_capacity(len);
                while letters.len() < len {
                    let l = Letter {
                        generator: rng.random_range(0..rank),
                        inverse: rng.random_bool(0.5),
                    };
                    if letters.last().is_some_and(|last| last.cancels(&l)) {
                        continue;
                    }
                    letters.push(l);
                }
                GroupElem {
                    desc: *self,
                    payload: Payload::Word(letters),
                }
            }
            GroupDescriptor::IntVector { dim } | GroupDescriptor::IntVectorCyclic { dim, .. } => {
                let r = radius as i64;
                let coords = (0..dim).map(|_| rng.random_range(-r..=r)).collect();
                let residue = self.modulus().map_or(0, |m| rng.random_range(0..m));
                GroupElem {
                    desc: *self,
                    payload: Payload::Vector { coords, residue },
                }
            }
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupDescriptor::Free { rank } => write!(f, "free:{rank}"),
            GroupDescriptor::IntVector { dim } => write!(f, "int:{dim}"),
            GroupDescriptor::IntVectorCyclic { dim, modulus } => write!(f, "int:{dim}xZ{modulus}"),
        }
    }
}

/// A free generator `x{generator+1}` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn positive(generator: u32) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    /// Position in the order x1 < x1^-1 < x2 < x2^-1 < ...
    fn key(&self) -> u32 {
        2 * self.generator + self.inverse as u32
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Payload {
    Word(Vec<Letter>),
    Vector { coords: Vec<i64>, residue: u32 },
}

/// An element of an ambient group, always in canonical form.
///
/// `Ord` is the canonical order: shortlex for free words, lexicographic on
/// (coordinates, residue) for vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElem {
    desc: GroupDescriptor,
    payload: Payload,
}

impl GroupElem {
    /// Freely reduces `letters`.
    pub fn word(desc: GroupDescriptor, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let GroupDescriptor::Free { rank } = desc else {
            return Err(Error::usage(format!("words need a free group, got {desc}")));
        };
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l.generator >= rank {
                return Err(Error::usage(format!(
                    "generator x{} outside {desc}",
                    l.generator + 1
                )));
            }
            if out.last().is_some_and(|last| last.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(GroupElem {
            desc,
            payload: Payload::Word(out),
        })
    }

    pub fn vector(desc: GroupDescriptor, coords: Vec<i64>, residue: i64) -> Result<Self> {
        let Some(dim) = desc.dim() else {
            return Err(Error::usage(format!("vectors need a lattice group, got {desc}")));
        };
        if coords.len() != dim as usize {
            return Err(Error::usage(format!(
                "expected {dim} coordinates for {desc}, got {}",
                coords.len()
            )));
        }
        let residue = match desc.modulus() {
            Some(m) => residue.rem_euclid(m as i64) as u32,
            None if residue == 0 => 0,
            None => return Err(Error::usage(format!("{desc} has no cyclic factor"))),
        };
        Ok(GroupElem {
            desc,
            payload: Payload::Vector { coords, residue },
        })
    }

    /// Shorthand for an element of `int:1`.
    pub fn int(value: i64) -> Self {
        GroupElem {
            desc: GroupDescriptor::IntVector { dim: 1 },
            payload: Payload::Vector {
                coords: vec![value],
                residue: 0,
            },
        }
    }

    /// The `index`-th monoid-style generator: `x{index+1}` or the unit vector
    /// `e_index`; for cyclic groups `index == dim` is the residue generator.
    pub fn generator(desc: GroupDescriptor, index: u32) -> Result<Self> {
        match desc {
            GroupDescriptor::Free { rank } if index < rank => {
                GroupElem::word(desc, [Letter::positive(index)])
            }
            GroupDescriptor::IntVector { dim } | GroupDescriptor::IntVectorCyclic { dim, .. }
                if index < dim =>
            {
                let mut coords = vec![0; dim as usize];
                coords[index as usize] = 1;
                GroupElem::vector(desc, coords, 0)
            }
            GroupDescriptor::IntVectorCyclic { dim, .. } if index == dim => {
                GroupElem::vector(desc, vec![0; dim as usize], 1)
            }
            _ => Err(Error::usage(format!("no generator {index} in {desc}"))),
        }
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    pub fn letters(&self) -> Option<&[Letter]> {
        match &self.payload {
            Payload::Word(w) => Some(w),
            Payload::Vector { .. } => None,
        }
    }

    pub fn coords(&self) -> Option<&[i64]> {
        match &self.payload {
            Payload::Vector { coords, .. } => Some(coords),
            Payload::Word(_) => None,
        }
    }

    pub fn residue(&self) -> u32 {
        match &self.payload {
            Payload::Vector { residue, .. } => *residue,
            Payload::Word(_) => 0,
        }
    }

    /// Word length (free case) or max-norm of the coordinates.
    pub fn norm(&self) -> u64 {
        match &self.payload {
            Payload::Word(w) => w.len() as u64,
            Payload::Vector { coords, .. } => {
                coords.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match &self.payload {
            Payload::Word(w) => w.is_empty(),
            Payload::Vector { coords, residue } => *residue == 0 && coords.iter().all(|&c| c == 0),
        }
    }

    /// Group multiplication `self * other`.
    pub fn compose(&self, other: &GroupElem) -> Result<GroupElem> {
        if self.desc != other.desc {
            return Err(Error::usage(format!(
                "cannot compose elements of {} and {}",
                self.desc, other.desc
            )));
        }
        let payload = match (&self.payload, &other.payload) {
            (Payload::Word(a), Payload::Word(b)) => {
                let mut out = a.clone();
                for l in b {
                    if out.last().is_some_and(|last| last.cancels(l)) {
                        out.pop();
                    } else {
                        out.push(*l);
                    }
                }
                Payload::Word(out)
            }
            (
                Payload::Vector {
                    coords: a,
                    residue: ra,
                },
                Payload::Vector {
                    coords: b,
                    residue: rb,
                },
            ) => Payload::Vector {
                coords: a.iter().zip(b).map(|(x, y)| x + y).collect(),
                residue: match self.desc.modulus() {
                    Some(m) => (ra + rb) % m,
                    None => 0,
                },
            },
            _ => unreachable!("payload kind follows the descriptor"),
        };
        Ok(GroupElem {
            desc: self.desc,
            payload,
        })
    }

    /// Multiplication for elements already known to share a descriptor.
    pub fn mul(&self, other: &GroupElem) -> GroupElem {
        self.compose(other).expect("descriptor mismatch")
    }

    pub fn inverse(&self) -> GroupElem {
        let payload = match &self.payload {
            Payload::Word(w) => Payload::Word(w.iter().rev().map(|l| l.inverted()).collect()),
            Payload::Vector { coords, residue } => Payload::Vector {
                coords: coords.iter().map(|c| -c).collect(),
                residue: match self.desc.modulus() {
                    Some(m) => (m - residue) % m,
                    None => 0,
                },
            },
        };
        GroupElem {
            desc: self.desc,
            payload,
        }
    }

    /// `self * other^-1`, the element `m` with `self = m * other`.
    pub fn right_quotient(&self, other: &GroupElem) -> GroupElem {
        self.mul(&other.inverse())
    }

    /// Parses the textual syntax: `e`, `x1*x2^-1`, `(3,-1)`, `(3,-1);2`.
    /// For one-dimensional lattices a bare integer such as `-4` is accepted.
    pub fn parse(desc: GroupDescriptor, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = |why: &str| Error::parse(format!("`{text}` is not an element of {desc}: {why}"));
        match desc {
            GroupDescriptor::Free { .. } => {
                if text == "e" || text == "1" || text.is_empty() {
                    return Ok(desc.identity());
                }
                let mut letters = Vec::new();
                for token in text.split('*') {
                    let token = token.trim();
                    let (base, power) = match token.split_once('^') {
                        Some((b, p)) => (b, p.parse::<i64>().map_err(|_| bad("bad exponent"))?),
                        None => (token, 1),
                    };
                    let index: u32 = base
                        .strip_prefix('x')
                        .and_then(|i| i.parse().ok())
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| bad("letters look like x1, x2^-1"))?;
                    let letter = Letter {
                        generator: index - 1,
                        inverse: power < 0,
                    };
                    letters.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
                }
                GroupElem::word(desc, letters).map_err(|e| bad(&e.to_string()))
            }
            GroupDescriptor::IntVector { dim } | GroupDescriptor::IntVectorCyclic { dim, .. } => {
                let (vector_part, residue) = match text.split_once(';') {
                    Some((v, r)) => (v, r.trim().parse::<i64>().map_err(|_| bad("bad residue"))?),
                    None => (text, 0),
                };
                let vector_part = vector_part.trim();
                let inner = match vector_part.strip_prefix('(') {
                    Some(rest) => rest.strip_suffix(')').ok_or_else(|| bad("unclosed paren"))?,
                    None if dim == 1 => vector_part,
                    None => return Err(bad("vectors look like (3,-1)")),
                };
                let coords = inner
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("bad coordinate"))?;
                GroupElem::vector(desc, coords, residue).map_err(|e| bad(&e.to_string()))
            }
        }
    }
}

impl Ord for GroupElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.desc.cmp(&other.desc).then_with(|| match (&self.payload, &other.payload) {
            (Payload::Word(a), Payload::Word(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (
                Payload::Vector {
                    coords: a,
                    residue: ra,
                },
                Payload::Vector {
                    coords: b,
                    residue: rb,
                },
            ) => a.cmp(b).then(ra.cmp(rb)),
            _ => unreachable!("payload kind follows the descriptor"),
        })
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Word(w) if w.is_empty() => f.write_str("e"),
            Payload::Word(w) => {
                for (i, l) in w.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "x{}", l.generator + 1)?;
                    if l.inverse {
                        f.write_str("^-1")?;
                    }
                }
                Ok(())
            }
            Payload::Vector { coords, residue } => {
                f.write_str("(")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")?;
                if self.desc.modulus().is_some() {
                    write!(f, ";{residue}")?;
                }
                Ok(())
            }
        }
    }
}

/// All elements of norm at most `radius`, in canonical order.
pub fn ball(desc: GroupDescriptor, radius: u32) -> Result<Vec<GroupElem>> {
    ball_with_cap(desc, radius, DEFAULT_ELEMENT_CAP)
}

pub fn ball_with_cap(desc: GroupDescriptor, radius: u32, cap: usize) -> Result<Vec<GroupElem>> {
    let needed = desc.ball_size(radius);
    if needed > cap as u128 {
        return Err(Error::Resource {
            cap,
            needed,
            what: format!("ball({radius}) of {desc}"),
        });
    }
    Ok(match desc {
        GroupDescriptor::Free { rank } => {
            let alphabet: Vec<Letter> = (0..rank)
                .flat_map(|g| {
                    [
                        Letter::positive(g),
                        Letter {
                            generator: g,
                            inverse: true,
                        },
                    ]
                })
                .collect();
            let mut out = vec![Vec::<Letter>::new()];
            let mut layer_start = 0;
            for _ in 0..radius {
                let layer_end = out.len();
                for w in layer_start..layer_end {
                    for l in &alphabet {
                        if out[w].last().is_some_and(|last| last.cancels(l)) {
                            continue;
                        }
                        let mut next = out[w].clone();
                        next.push(*l);
                        out.push(next);
                    }
                }
                layer_start = layer_end;
            }
            out.into_iter()
                .map(|w| GroupElem {
                    desc,
                    payload: Payload::Word(w),
                })
                .collect()
        }
        GroupDescriptor::IntVector { .. } | GroupDescriptor::IntVectorCyclic { .. } => {
            let r = radius as i64;
            lattice_box(desc, -r, r)
        }
    })
}

/// Every lattice element whose coordinates all lie in `[lo, hi]`, in
/// canonical order.
fn lattice_box(desc: GroupDescriptor, lo: i64, hi: i64) -> Vec<GroupElem> {
    let dim = desc.dim().expect("lattice descriptor") as usize;
    let modulus = desc.modulus().unwrap_or(1);
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let mut coords = vec![lo; dim];
    loop {
        for residue in 0..modulus {
            out.push(GroupElem {
                desc,
                payload: Payload::Vector {
                    coords: coords.clone(),
                    residue,
                },
            });
        }
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if coords[i] < hi {
                coords[i] += 1;
                break;
            }
            coords[i] = lo;
        }
    }
}

/// The finite region of an ambient group on which a construction is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    /// `ball(r)`.
    Ball(u32),
    /// Lattice elements with every coordinate in `[lo, hi]`.
    Range(i64, i64),
}

impl Window {
    pub fn contains(&self, g: &GroupElem) -> bool {
        match *self {
            Window::Ball(r) => g.norm() <= r as u64,
            Window::Range(lo, hi) => g
                .coords()
                .is_some_and(|c| c.iter().all(|&x| lo <= x && x <= hi)),
        }
    }

    pub fn elements(&self, desc: GroupDescriptor, cap: usize) -> Result<Vec<GroupElem>> {
        match *self {
            Window::Ball(r) => ball_with_cap(desc, r, cap),
            Window::Range(lo, hi) => {
                let Some(dim) = desc.dim() else {
                    return Err(Error::usage("range windows need a lattice group"));
                };
                let side = (hi - lo + 1).max(0) as u128;
                let needed = side
                    .saturating_pow(dim)
                    .saturating_mul(desc.modulus().unwrap_or(1) as u128);
                if needed > cap as u128 {
                    return Err(Error::Resource {
                        cap,
                        needed,
                        what: format!("window {lo}..{hi} of {desc}"),
                    });
                }
                Ok(lattice_box(desc, lo, hi))
            }
        }
    }

    /// Parses `A..B` or a bare radius.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::parse(format!("bad window `{text}`, expected A..B or a radius"));
        match text.split_once("..") {
            Some((a, b)) => {
                let lo = a.trim().parse().map_err(|_| bad())?;
                let hi = b.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                Ok(Window::Range(lo, hi))
            }
            None => Ok(Window::Ball(text.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Window::Ball(r) => write!(f, "ball({r})"),
            Window::Range(lo, hi) => write!(f, "{lo}..{hi}"),
        }
    }
}

/// A group presented through its operations, so that actions on posets can
/// be written once for ambient groups and for small permutation groups.
pub trait Group {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display;

    fn identity(&self) -> Self::Elem;
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
}

impl Group for GroupDescriptor {
    type Elem = GroupElem;

    fn identity(&self) -> GroupElem {
        GroupDescriptor::identity(self)
    }

    fn compose(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        a.mul(b)
    }

    fn inverse(&self, a: &GroupElem) -> GroupElem {
        a.inverse()
    }
}

/// A permutation of `0..n`, written as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// The symmetric group on `degree` points. Products are read left to right
/// (`a * b` applies `a` first), which makes `x . g = g(x)` a right action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricGroup {
    pub degree: usize,
}

impl SymmetricGroup {
    /// All permutations, in lexicographic order of their image lists.
    pub fn elements(&self) -> Vec<Perm> {
        fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if prefix.len() == used.len() {
                out.push(Perm(prefix.clone()));
                return;
            }
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    prefix.push(x);
                    extend(prefix, used, out);
                    prefix.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::new(), &mut vec![false; self.degree], &mut out);
        out
    }
}

impl Group for SymmetricGroup {
    type Elem = Perm;

    fn identity(&self) -> Perm {
        Perm((0..self.degree).collect())
    }

    fn compose(&self, a: &Perm, b: &Perm) -> Perm {
        Perm(a.0.iter().map(|&x| b.0[x]).collect())
    }

    fn inverse(&self, a: &Perm) -> Perm {
        let mut out = vec![0; a.0.len()];
        for (i, &x) in a.0.iter().enumerate() {
            out[x] = i;
        }
        Perm(out)
    }
}
