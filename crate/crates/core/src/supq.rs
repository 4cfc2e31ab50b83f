//! SU(p,q) combinatorics: open orbits as sign sequences, the pairing and
//! strictly pairing conditions, γ_I, Perm_w / T_w, the per-orbit algorithm
//! for complete flags and its block version for partial flags.
//!
//! Conventions: n = p + q, h = −Σ_{i≤q}|z_i|² + Σ_{i>q}|z_i|², pair i is
//! (n−i+1, i) in w and (e_i, e_{2q−i+1}) in the point.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::FlagMatrix;
use crate::perm::{binomial, factorial, minimal_coset_representative, DimensionSequence, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// A word over {−,+}; `blocks` records the dimension sequence for G/P
/// labels and is `None` for complete flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSequence {
    signs: Vec<Sign>,
    blocks: Option<DimensionSequence>,
}

impl SignSequence {
    pub fn new(signs: Vec<Sign>, blocks: Option<DimensionSequence>) -> Result<Self> {
        if let Some(d) = &blocks {
            if d.n() != signs.len() {
                return Err(Error::InvalidOrbit(format!(
                    "blocks {d} do not cover {} signs",
                    signs.len()
                )));
            }
        }
        Ok(SignSequence { signs, blocks })
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn blocks(&self) -> Option<&DimensionSequence> {
        self.blocks.as_ref()
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn minus_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Minus).count()
    }

    pub fn plus_count(&self) -> usize {
        self.len() - self.minus_count()
    }

    /// Block structure, defaulting to singletons.
    pub fn dims(&self) -> DimensionSequence {
        self.blocks.clone().unwrap_or_else(|| DimensionSequence::ones(self.len()))
    }

    fn require(&self, p: usize, q: usize) -> Result<()> {
        if self.minus_count() != q || self.plus_count() != p {
            return Err(Error::InvalidOrbit(format!(
                "{self} needs {q} minus and {p} plus signs"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = self.signs.iter().map(|s| s.symbol()).collect();
        match &self.blocks {
            None => f.write_str(&text),
            Some(d) => {
                let mut start = 0;
                for &len in d.parts() {
                    write!(f, "({})", &text[start..start + len])?;
                    start += len;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for SignSequence {
    type Err = Error;

    /// "+-+-+" or "(-+)(-+++)(-++)".
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| -> Result<Vec<Sign>> {
            t.chars()
                .map(|c| match c {
                    '-' => Ok(Sign::Minus),
                    '+' => Ok(Sign::Plus),
                    _ => Err(Error::Parse(format!("unexpected {c:?} in sign sequence {s:?}"))),
                })
                .collect()
        };
        if !s.contains('(') {
            return SignSequence::new(parse(s)?, None);
        }
        let mut signs = Vec::new();
        let mut parts = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
            let block = parse(inner.0)?;
            parts.push(block.len());
            signs.extend(block);
            rest = inner.1.trim_start();
        }
        SignSequence::new(signs, Some(DimensionSequence::new(parts)?))
    }
}

impl Serialize for SignSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Open orbit in G/P: per-block negative counts a and positive counts b.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitDescriptor {
    pub p: usize,
    pub q: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl OrbitDescriptor {
    pub fn new(p: usize, q: usize, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        let desc = OrbitDescriptor { p, q, a, b };
        desc.validate()?;
        Ok(desc)
    }

    /// From running totals, e.g. a: 0,1,1,2,2 and b: 1,1,2,2,3.
    pub fn from_cumulative(p: usize, q: usize, ca: &[usize], cb: &[usize]) -> Result<Self> {
        let diff = |c: &[usize]| -> Result<Vec<usize>> {
            let mut prev = 0;
            c.iter()
                .map(|&x| {
                    let step = x.checked_sub(prev).ok_or_else(|| {
                        Error::InvalidOrbit(format!("running totals {c:?} must not decrease"))
                    })?;
                    prev = x;
                    Ok(step)
                })
                .collect()
        };
        OrbitDescriptor::new(p, q, diff(ca)?, diff(cb)?)
    }

    /// Per-block sign counts of α; complete flags when α has no blocks.
    pub fn from_sign_sequence(alpha: &SignSequence) -> Result<Self> {
        let d = alpha.dims();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let mut start = 0;
        for &len in d.parts() {
            let minus = alpha.signs[start..start + len].iter().filter(|&&s| s == Sign::Minus).count();
            a.push(minus);
            b.push(len - minus);
            start += len;
        }
        OrbitDescriptor::new(alpha.plus_count(), alpha.minus_count(), a, b)
    }

    fn validate(&self) -> Result<()> {
        if self.a.len() != self.b.len() || self.a.is_empty() {
            return Err(Error::InvalidOrbit("a and b need the same positive length".into()));
        }
        if self.a.iter().sum::<usize>() != self.q || self.b.iter().sum::<usize>() != self.p {
            return Err(Error::InvalidOrbit(format!(
                "Σa = {} and Σb = {} must equal q = {} and p = {}",
                self.a.iter().sum::<usize>(),
                self.b.iter().sum::<usize>(),
                self.q,
                self.p
            )));
        }
        if self.a.iter().zip(&self.b).any(|(x, y)| x + y == 0) {
            return Err(Error::InvalidOrbit("every block needs positive size".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn dims(&self) -> DimensionSequence {
        DimensionSequence::new(self.a.iter().zip(&self.b).map(|(x, y)| x + y).collect())
            .expect("validated block sizes")
    }

    pub fn f(&self) -> Vec<usize> {
        self.a.iter().zip(&self.b).map(|(&x, &y)| x.min(y)).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.a.len() == self.n()
    }
}

/// Canonical parametrization: per block f minuses, |a−b| copies of the
/// majority sign, f pluses. For complete flags this is the plain sign word.
pub fn sign_sequence_of(desc: &OrbitDescriptor) -> SignSequence {
    let mut signs = Vec::with_capacity(desc.n());
    for (&a, &b) in desc.a.iter().zip(&desc.b) {
        let f = a.min(b);
        let major = if a > b { Sign::Minus } else { Sign::Plus };
        signs.extend(std::iter::repeat_n(Sign::Minus, f));
        signs.extend(std::iter::repeat_n(major, a.max(b) - f));
        signs.extend(std::iter::repeat_n(Sign::Plus, f));
    }
    let blocks = (!desc.is_complete()).then(|| desc.dims());
    SignSequence { signs, blocks }
}

/// Every arrangement of q minuses among n slots, ordered by the minus
/// positions lexicographically.
pub fn all_sign_sequences(p: usize, q: usize) -> Vec<SignSequence> {
    let n = p + q;
    (0..n)
        .combinations(q)
        .map(|minus| {
            let signs = (0..n)
                .map(|k| if minus.contains(&k) { Sign::Minus } else { Sign::Plus })
                .collect();
            SignSequence { signs, blocks: None }
        })
        .collect()
}

/// Orbits in G/P for dims d: every split a_j + b_j = d_j with Σa = q.
pub fn all_orbit_descriptors(p: usize, q: usize, d: &DimensionSequence) -> Vec<OrbitDescriptor> {
    fn extend(parts: &[usize], q_left: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&first, rest)) = parts.split_first() else {
            if q_left == 0 {
                out.push(a.clone());
            }
            return;
        };
        for x in 0..=first.min(q_left) {
            a.push(x);
            extend(rest, q_left - x, a, out);
            a.pop();
        }
    }
    if d.n() != p + q {
        return Vec::new();
    }
    let mut all = Vec::new();
    extend(d.parts(), q, &mut Vec::new(), &mut all);
    all.into_iter()
        .map(|a| {
            let b = d.parts().iter().zip(&a).map(|(x, y)| x - y).collect();
            OrbitDescriptor { p, q, a, b }
        })
        .collect()
}

pub fn open_orbit_count(p: usize, q: usize) -> u128 {
    binomial(p + q, p)
}

/// Σ_{i<j} a_i a_j + Σ_{i<j} b_i b_j.
pub fn cycle_dimension_su(desc: &OrbitDescriptor) -> usize {
    pair_sum(&desc.a, &desc.a) + pair_sum(&desc.b, &desc.b)
}

/// Σ_{i<j} (a_i b_j + b_i a_j): the dimension of the meeting Schubert varieties.
pub fn complementary_dimension_su(desc: &OrbitDescriptor) -> usize {
    pair_sum(&desc.a, &desc.b) + pair_sum(&desc.b, &desc.a)
}

fn pair_sum(x: &[usize], y: &[usize]) -> usize {
    (0..x.len()).flat_map(|i| (i + 1..y.len()).map(move |j| (i, j))).map(|(i, j)| x[i] * y[j]).sum()
}

pub fn gamma_i(i: usize, p: usize, q: usize) -> usize {
    if i <= q {
        i
    } else if i <= p {
        i + q
    } else {
        i - p + q
    }
}

fn check_pq(w: &Permutation, p: usize, q: usize) -> Result<()> {
    if w.n() != p + q || q > p {
        return Err(Error::Precondition(format!(
            "{w} is not a permutation for SU({p},{q}) (need n = p+q and p ≥ q)"
        )));
    }
    Ok(())
}

/// n−i+1 stands left of i for every i ≤ q.
pub fn pairing_check(w: &Permutation, p: usize, q: usize) -> Result<bool> {
    check_pq(w, p, q)?;
    let n = w.n();
    Ok((1..=q).all(|i| w.position(n - i + 1) < w.position(i)))
}

/// Pairing, adjacency of each pair once earlier pairs are deleted, and the
/// leftover values q+1..p in increasing order.
pub fn strictly_pairing_check_su(w: &Permutation, p: usize, q: usize) -> Result<bool> {
    if !pairing_check(w, p, q)? {
        return Ok(false);
    }
    let n = w.n();
    let mut rest: Vec<usize> = w.word().to_vec();
    for i in 1..=q {
        let big = rest.iter().position(|&x| x == n - i + 1).unwrap();
        if rest.get(big + 1) != Some(&i) {
            return Ok(false);
        }
        rest.drain(big..big + 2);
    }
    Ok(rest.windows(2).all(|x| x[0] < x[1]))
}

/// (n−1)(n−3)…(n−2q+1).
pub fn m_q(p: usize, q: usize) -> u128 {
    let n = (p + q) as u128;
    (0..q as u128).map(|j| n - 1 - 2 * j).product()
}

/// ℐ_{p,q}: insert the adjacent pair (n,1) into every gap of w'+1 for
/// w' ∈ ℐ_{p−1,q−1}. Sorted.
pub fn enumerate_i_pq(p: usize, q: usize) -> Result<Vec<Permutation>> {
    if q > p || p == 0 {
        return Err(Error::Precondition(format!("SU({p},{q}) needs p ≥ q and p ≥ 1")));
    }
    let mut out = i_pq(p, q);
    out.sort();
    Ok(out)
}

fn i_pq(p: usize, q: usize) -> Vec<Permutation> {
    if q == 0 {
        return vec![Permutation::identity(p)];
    }
    let n = p + q;
    let mut out = Vec::new();
    for inner in i_pq(p - 1, q - 1) {
        let shifted: Vec<usize> = inner.word().iter().map(|x| x + 1).collect();
        for gap in 0..=shifted.len() {
            let mut word = shifted[..gap].to_vec();
            word.extend([n, 1]);
            word.extend(&shifted[gap..]);
            out.push(Permutation::new(word).expect("insertion keeps a permutation"));
        }
    }
    out
}

/// γ_I applied to each of the 2^q variants of w obtained by transposing
/// any subset of the pairs (n−i+1, i). Subsets enumerated by bitmask.
pub fn perm_w(w: &Permutation, p: usize, q: usize) -> Result<Vec<Permutation>> {
    check_pq(w, p, q)?;
    let n = w.n();
    let mut out = Vec::with_capacity(1 << q);
    for mask in 0..1usize << q {
        let mut word = w.word().to_vec();
        for i in (1..=q).filter(|i| mask >> (i - 1) & 1 == 1) {
            let (a, b) = (w.position(n - i + 1) - 1, w.position(i) - 1);
            word.swap(a, b);
        }
        out.push(Permutation::new(word.iter().map(|&x| gamma_i(x, p, q)).collect())?);
    }
    Ok(out)
}

/// A coordinate point with the orbit it lies in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabelledPoint {
    /// Index order u: the flag is ⟨e_{u(1)}⟩ ⊂ ⟨e_{u(1)}, e_{u(2)}⟩ ⊂ ….
    pub point: Permutation,
    pub orbit: SignSequence,
}

impl LabelledPoint {
    pub fn flag(&self) -> FlagMatrix {
        FlagMatrix::of_permutation(&self.point)
    }
}

/// Orbit of a coordinate flag: slot k is − iff e_{u(k)} is a negative direction.
pub fn orbit_of_coordinate_flag(u: &Permutation, q: usize) -> SignSequence {
    let signs = u.word().iter().map(|&x| if x <= q { Sign::Minus } else { Sign::Plus }).collect();
    SignSequence { signs, blocks: None }
}

/// T_w: the coordinate flags of Perm_w, each with its orbit.
pub fn t_w(w: &Permutation, p: usize, q: usize) -> Result<Vec<LabelledPoint>> {
    Ok(perm_w(w, p, q)?
        .into_iter()
        .map(|u| {
            let orbit = orbit_of_coordinate_flag(&u, q);
            LabelledPoint { point: u, orbit }
        })
        .collect())
}

/// A Schubert variety meeting a fixed open orbit and its single point there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitIntersection {
    pub w: Permutation,
    /// Index order of the coordinate point (blocks sorted for G/P).
    pub point: Permutation,
    pub dims: DimensionSequence,
}

impl OrbitIntersection {
    pub fn flag(&self) -> FlagMatrix {
        FlagMatrix::of_permutation(&self.point)
            .project_to(&self.dims)
            .expect("dims cover n")
    }
}

/// Slot contents while running the paired replacement: (w value, e index).
type Slots = Vec<Option<(usize, usize)>>;

/// Places pairs `next..=q` on adjacent (ignoring filled slots) opposite
/// signs in every possible way, then the singles in increasing order.
fn place_pairs(signs: &[Sign], slots: &mut Slots, next: usize, p: usize, q: usize, out: &mut Vec<Slots>) {
    let n = p + q;
    if next > q {
        let mut filled = slots.clone();
        let mut singles = (q + 1..=p).zip(2 * q + 1..=n);
        for s in filled.iter_mut().filter(|s| s.is_none()) {
            *s = Some(singles.next().expect("leftover slots match the singles"));
        }
        out.push(filled);
        return;
    }
    let open: Vec<usize> = (0..slots.len()).filter(|&k| slots[k].is_none()).collect();
    for (&x, &y) in open.iter().tuple_windows() {
        if signs[x] == signs[y] {
            continue;
        }
        let (minus, plus) = if signs[x] == Sign::Minus { (x, y) } else { (y, x) };
        let e_of = |k: usize| if k == minus { next } else { 2 * q - next + 1 };
        debug_assert!(plus != minus);
        slots[x] = Some((n - next + 1, e_of(x)));
        slots[y] = Some((next, e_of(y)));
        place_pairs(signs, slots, next + 1, p, q, out);
        slots[x] = None;
        slots[y] = None;
    }
}

fn unpack(slots: &Slots) -> (Permutation, Permutation) {
    let (w, e): (Vec<usize>, Vec<usize>) = slots.iter().map(|s| s.expect("all slots filled")).unzip();
    (
        Permutation::new(w).expect("replacement yields a permutation"),
        Permutation::new(e).expect("replacement yields a permutation"),
    )
}

/// Every Schubert variety of dimension pq meeting the open orbit α in G/B,
/// with its point. Sorted by w.
pub fn enumerate_for_orbit(alpha: &SignSequence) -> Result<Vec<OrbitIntersection>> {
    let (p, q) = (alpha.plus_count(), alpha.minus_count());
    if q > p {
        return Err(Error::InvalidOrbit(format!("{alpha} has more minus than plus signs")));
    }
    alpha.require(p, q)?;
    let mut raw = Vec::new();
    place_pairs(&alpha.signs, &mut vec![None; p + q], 1, p, q, &mut raw);
    let dims = DimensionSequence::ones(p + q);
    let set: BTreeSet<OrbitIntersection> = raw
        .iter()
        .map(|s| {
            let (w, point) = unpack(s);
            OrbitIntersection { w, point, dims: dims.clone() }
        })
        .collect();
    Ok(set.into_iter().collect())
}

/// Block version: in block j the chosen f_j pairs take the first f_j
/// minuses (e_i, i) and the last f_j pluses (e_{2q−i+1}, n−i+1), indices
/// increasing; the rest runs the complete-flag algorithm on the untouched
/// slots. Words are reported as minimal representatives, sorted by w.
pub fn enumerate_for_orbit_gp(desc: &OrbitDescriptor) -> Result<Vec<OrbitIntersection>> {
    desc.validate()?;
    let (p, q, n) = (desc.p, desc.q, desc.n());
    if q > p {
        return Err(Error::InvalidOrbit(format!("SU({p},{q}) needs p ≥ q")));
    }
    let alpha = sign_sequence_of(desc);
    let d = desc.dims();
    let f = desc.f();
    let total: usize = f.iter().sum();
    let starts: Vec<usize> = std::iter::once(0).chain(d.prefix_sums()).collect();

    let mut raw = Vec::new();
    for assignment in block_assignments(&f, total) {
        let mut slots: Slots = vec![None; n];
        for (j, pairs) in assignment.iter().enumerate() {
            let fj = pairs.len();
            let (lo, hi) = (starts[j], starts[j + 1]);
            for (t, &i) in pairs.iter().enumerate() {
                slots[lo + t] = Some((i, i));
            }
            // the large halves, increasing: pairs reversed
            for (t, &i) in pairs.iter().rev().enumerate() {
                slots[hi - fj + t] = Some((n - i + 1, 2 * q - i + 1));
            }
        }
        place_pairs(&alpha.signs, &mut slots, total + 1, p, q, &mut raw);
    }

    let set: BTreeSet<OrbitIntersection> = raw
        .iter()
        .map(|s| {
            let (w, e) = unpack(s);
            OrbitIntersection {
                w: minimal_coset_representative(&w, &d).expect("dims match"),
                point: minimal_coset_representative(&e, &d).expect("dims match"),
                dims: d.clone(),
            }
        })
        .collect();
    Ok(set.into_iter().collect())
}

/// Ways to hand pairs 1..total to blocks, block j receiving f_j of them
/// (each list increasing).
fn block_assignments(f: &[usize], total: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(f: &[usize], free: &[usize], acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&first, rest)) = f.split_first() else {
            out.push(acc.clone());
            return;
        };
        for pick in free.iter().copied().combinations(first) {
            let remaining: Vec<usize> = free.iter().copied().filter(|x| !pick.contains(x)).collect();
            acc.push(pick);
            go(rest, &remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(f, &(1..=total).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// Block-local feasibility of pairing: n−i+1 must not sit in a later block
/// than i (inside one block the larges can always go first).
pub fn generalized_pairing_check(w: &Permutation, d: &DimensionSequence, p: usize, q: usize) -> Result<bool> {
    check_pq(w, p, q)?;
    let n = w.n();
    let sums = d.prefix_sums();
    if d.n() != n {
        return Err(Error::LengthMismatch { word: n, dims: d.n() });
    }
    let block = |v: usize| sums.iter().position(|&s| w.position(v) <= s).unwrap();
    Ok((1..=q).all(|i| block(n - i + 1) <= block(i)))
}

/// Moves the small member of every pair contained in a block, in increasing
/// order, to just right of the largest large member of such pairs.
pub fn canonical_rearrangement_su(w: &Permutation, desc: &OrbitDescriptor) -> Result<Permutation> {
    let d = desc.dims();
    let (n, q) = (desc.n(), desc.q);
    let mut word = Vec::with_capacity(n);
    for block in crate::perm::blocks(w, &d)? {
        let inner: Vec<usize> = block.iter().copied().filter(|&h| h <= q && block.contains(&(n - h + 1))).collect();
        let Some(top) = inner.iter().map(|&h| n - h + 1).max() else {
            word.extend(block);
            continue;
        };
        let mut rest: Vec<usize> = block.iter().copied().filter(|x| !inner.contains(x)).collect();
        let at = rest.iter().position(|&x| x == top).unwrap() + 1;
        rest.splice(at..at, inner);
        word.extend(rest);
    }
    Permutation::new(word)
}

/// Per block: the first f minuses of the canonical parametrization moved to
/// the block end, giving an orbit in G/B.
pub fn canonical_lifting(desc: &OrbitDescriptor) -> SignSequence {
    let mut signs = Vec::with_capacity(desc.n());
    for (&a, &b) in desc.a.iter().zip(&desc.b) {
        let f = a.min(b);
        let major = if a > b { Sign::Minus } else { Sign::Plus };
        signs.extend(std::iter::repeat_n(major, a.max(b) - f));
        signs.extend(std::iter::repeat_n(Sign::Plus, f));
        signs.extend(std::iter::repeat_n(Sign::Minus, f));
    }
    SignSequence { signs, blocks: None }
}

/// |Fix(T) ∩ C_0| = q!·p!.
pub fn fixed_points_in_cycle_count(p: usize, q: usize) -> u128 {
    factorial(q) * factorial(p)
}
