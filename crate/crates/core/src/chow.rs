//! Chow classes on `C^n` modulo numerical equivalence, restricted to the
//! subalgebra generated by point pullbacks `pr_i^*[x]` and pairwise diagonals
//! `Δ_ij`.
//!
//! Every monomial in these generators is, up to a scalar, the class of a
//! [`Configuration`]: a set partition of `{1..n}` where each block asks its
//! coordinates to coincide, and a *pinned* block additionally asks them to
//! equal the fixed point `x`. A free block `B` has codimension `|B| - 1`, a
//! pinned block codimension `|B|`. A pinned block describes the same point
//! locus as the pinned singletons on its elements, so the normal form only
//! ever stores pinned singletons.
//!
//! Products are computed by writing the right factor as a word in generators
//! and letting each generator act on the left factor:
//!
//! | generator | acting on                       | result                              |
//! |-----------|---------------------------------|-------------------------------------|
//! | `P_i`     | free block containing `i`       | the block becomes pinned            |
//! | `P_i`     | pinned block containing `i`     | `0` (`[x]^2 = 0` on a curve)        |
//! | `Δ_ij`    | `i`, `j` in different blocks    | blocks merge; pinned if either was  |
//! |           |   ... both blocks pinned        | `0`                                 |
//! | `Δ_ij`    | `i`, `j` in the same free block | `(2 - 2g)` times the pinned block   |
//! | `Δ_ij`    | `i`, `j` in the same pinned one | `0`                                 |
//!
//! The `(2 - 2g)` factor is the degree of the normal bundle of the diagonal,
//! i.e. of the tangent bundle of `C`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// Hard upper bound on `n`; blocks are stored as 64-bit masks.
pub const MAX_AMBIENT: usize = 64;

/// Default cap on `n` for interactive use; callers may raise it up to
/// [`MAX_AMBIENT`].
pub const DEFAULT_AMBIENT_CAP: usize = 12;

/// One block of a [`Configuration`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    mask: u64,
    pinned: bool,
}

impl Block {
    fn singleton(i: usize) -> Self {
        Block {
            mask: 1 << (i - 1),
            pinned: false,
        }
    }

    pub fn is_pinned(&self) -> bool {
        self.pinned
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Smallest element (1-based).
    pub fn min(&self) -> usize {
        self.mask.trailing_zeros() as usize + 1
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask & (1 << (i - 1)) != 0
    }

    /// Elements in ascending order (1-based).
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        let mut m = self.mask;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i + 1)
        })
    }
}

/// A set partition of `{1..n}` with per-block pin flags, in canonical form:
/// blocks ordered by their smallest element, pinned blocks split into pinned
/// singletons.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    n: usize,
    blocks: Vec<Block>,
}

pub(crate) fn check_ambient(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::AmbientTooSmall {
            op: "C^n",
            n,
            min: 1,
        });
    }
    if n > MAX_AMBIENT {
        return Err(Error::AmbientTooLarge {
            n,
            cap: MAX_AMBIENT,
        });
    }
    Ok(())
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::IndexOutOfRange { index: i, n })
    } else {
        Ok(())
    }
}

/// Single factor of the generator word of a configuration.
#[derive(Clone, Copy, Debug)]
enum Factor {
    Point(usize),
    Diagonal(usize, usize),
}

impl Configuration {
    /// All singletons, nothing pinned: the class `[C^n]`.
    pub fn fundamental(n: usize) -> Result<Self> {
        check_ambient(n)?;
        Ok(Configuration {
            n,
            blocks: (1..=n).map(Block::singleton).collect(),
        })
    }

    /// Builds a configuration from explicit blocks, checking that they
    /// partition `{1..n}`.
    pub fn from_blocks<I, B>(n: usize, blocks: I) -> Result<Self>
    where
        I: IntoIterator<Item = (B, bool)>,
        B: IntoIterator<Item = usize>,
    {
        check_ambient(n)?;
        let mut seen = 0u64;
        let mut out = Vec::new();
        for (elems, pinned) in blocks {
            let mut mask = 0u64;
            for i in elems {
                check_index(i, n)?;
                let bit = 1u64 << (i - 1);
                if seen & bit != 0 {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
                seen |= bit;
                mask |= bit;
            }
            if mask != 0 {
                out.push(Block { mask, pinned });
            }
        }
        // any index not mentioned stays a free singleton
        for i in 1..=n {
            if seen & (1 << (i - 1)) == 0 {
                out.push(Block::singleton(i));
            }
        }
        Ok(Self::canonical(n, out))
    }

    // A pinned block and the pinned singletons on its elements cut out the
    // same point locus, so pinned blocks are always stored split.
    fn canonical(n: usize, blocks: Vec<Block>) -> Self {
        let mut out = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.pinned && b.len() > 1 {
                out.extend(b.elements().map(|i| Block {
                    mask: 1 << (i - 1),
                    pinned: true,
                }));
            } else {
                out.push(b);
            }
        }
        out.sort_by_key(|b| b.mask.trailing_zeros());
        Configuration { n, blocks: out }
    }

    fn pin_block(self, k: usize) -> Self {
        let mut blocks = self.blocks;
        blocks[k].pinned = true;
        Self::canonical(self.n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `n` minus the number of free blocks.
    pub fn codim(&self) -> usize {
        self.n - self.blocks.iter().filter(|b| !b.pinned).count()
    }

    fn block_of(&self, i: usize) -> usize {
        let bit = 1u64 << (i - 1);
        self.blocks
            .iter()
            .position(|b| b.mask & bit != 0)
            .expect("configuration covers 1..=n")
    }

    /// Multiplies by `pr_i^*[x]`.
    fn pin(self, i: usize) -> Option<Self> {
        let k = self.block_of(i);
        if self.blocks[k].pinned {
            return None;
        }
        Some(self.pin_block(k))
    }

    /// Multiplies by `Δ_ij`. The flag reports a self-intersection, which
    /// carries the factor `2 - 2g`.
    fn meet_diagonal(mut self, i: usize, j: usize) -> Option<(Self, bool)> {
        let (a, b) = (self.block_of(i), self.block_of(j));
        if a == b {
            if self.blocks[a].pinned {
                return None;
            }
            return Some((self.pin_block(a), true));
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (x, y) = (self.blocks[lo], self.blocks[hi]);
        if x.pinned && y.pinned {
            return None;
        }
        self.blocks[lo] = Block {
            mask: x.mask | y.mask,
            pinned: false,
        };
        self.blocks.remove(hi);
        if x.pinned || y.pinned {
            return Some((self.pin_block(lo), false));
        }
        Some((self, false))
    }

    /// The generator word: a chain of diagonals along each block, followed by
    /// one point class for pinned blocks.
    fn factors(&self) -> Vec<Factor> {
        let mut out = Vec::new();
        for b in &self.blocks {
            let elems: Vec<usize> = b.elements().collect();
            for w in elems.windows(2) {
                out.push(Factor::Diagonal(w[0], w[1]));
            }
            if b.pinned {
                out.push(Factor::Point(elems[0]));
            }
        }
        out
    }

    fn apply(self, factors: &[Factor]) -> Option<(Self, u32)> {
        let mut conf = self;
        let mut self_meets = 0;
        for f in factors {
            conf = match *f {
                Factor::Point(i) => conf.pin(i)?,
                Factor::Diagonal(i, j) => {
                    let (c, s) = conf.meet_diagonal(i, j)?;
                    self_meets += s as u32;
                    c
                }
            };
        }
        Some((conf, self_meets))
    }

    /// Product of two configurations on the same `C^n`: `None` if it vanishes,
    /// otherwise the resulting configuration and the exponent `k` of the
    /// scalar `(2 - 2g)^k`.
    pub fn product(&self, other: &Configuration) -> Result<Option<(Configuration, u32)>> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.clone().apply(&other.factors()))
    }

    /// Relabels index `i` to `perm[i - 1]`; `perm` must be a permutation of
    /// `1..=n`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| Block {
                mask: b.elements().fold(0, |m, i| m | 1 << (perm[i - 1] - 1)),
                pinned: b.pinned,
            })
            .collect();
        Ok(Self::canonical(self.n, blocks))
    }

    /// Pushforward along `C^n -> C^{n-1}` forgetting the first coordinate.
    pub fn forget_first(&self) -> Result<Option<Self>> {
        if self.n < 2 {
            return Err(Error::AmbientTooSmall {
                op: "pushforward",
                n: self.n,
                min: 2,
            });
        }
        let first = self.blocks[0];
        if first.mask == 1 && !first.pinned {
            // positive-dimensional fibres
            return Ok(None);
        }
        let blocks = self
            .blocks
            .iter()
            .filter_map(|b| {
                let mask = b.mask >> 1;
                (mask != 0).then_some(Block {
                    mask,
                    pinned: b.pinned,
                })
            })
            .collect();
        Ok(Some(Self::canonical(self.n - 1, blocks)))
    }

    /// Pullback along `C^{n+1} -> C^n` forgetting a new first coordinate.
    pub fn insert_first(&self) -> Result<Self> {
        check_ambient(self.n + 1)?;
        let mut blocks = vec![Block::singleton(1)];
        blocks.extend(self.blocks.iter().map(|b| Block {
            mask: b.mask << 1,
            pinned: b.pinned,
        }));
        Ok(Configuration {
            n: self.n + 1,
            blocks,
        })
    }
}

/// Every configuration on `C^n` of codimension `codim`, in canonical order.
pub fn configurations_of_codim(n: usize, codim: usize) -> Result<Vec<Configuration>> {
    check_ambient(n)?;
    // assign 1..=n in turn: new free block (+0), join a free block (+1),
    // or pinned singleton (+1)
    fn go(i: usize, n: usize, left: usize, blocks: &mut Vec<Block>, out: &mut Vec<Configuration>) {
        if i > n {
            if left == 0 {
                out.push(Configuration::canonical(n, blocks.clone()));
            }
            return;
        }
        let bit = 1u64 << (i - 1);
        blocks.push(Block {
            mask: bit,
            pinned: false,
        });
        go(i + 1, n, left, blocks, out);
        blocks.pop();
        if left == 0 {
            return;
        }
        blocks.push(Block {
            mask: bit,
            pinned: true,
        });
        go(i + 1, n, left - 1, blocks, out);
        blocks.pop();
        for k in 0..blocks.len() {
            if !blocks[k].pinned {
                blocks[k].mask |= bit;
                go(i + 1, n, left - 1, blocks, out);
                blocks[k].mask &= !bit;
            }
        }
    }
    let mut out = Vec::new();
    if codim <= n {
        go(1, n, codim, &mut Vec::new(), &mut out);
    }
    out.sort();
    Ok(out)
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::AmbientMismatch {
            left: n,
            right: perm.len(),
        });
    }
    let mut seen = 0u64;
    for &p in perm {
        check_index(p, n)?;
        if seen & (1 << (p - 1)) != 0 {
            return Err(Error::IndexOutOfRange { index: p, n });
        }
        seen |= 1 << (p - 1);
    }
    Ok(())
}

impl Ord for Configuration {
    // codimension, then the restricted growth string, then pinned blocks first
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.codim().cmp(&other.codim()))
            .then_with(|| {
                (1..=self.n.min(other.n))
                    .map(|i| self.block_of(i).cmp(&other.block_of(i)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| {
                self.blocks
                    .iter()
                    .zip(&other.blocks)
                    .map(|(a, b)| b.pinned.cmp(&a.pinned))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

impl PartialOrd for Configuration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str("{")?;
            for (m, i) in b.elements().enumerate() {
                if m > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
            }
            f.write_str("}")?;
            if b.pinned {
                f.write_str("*")?;
            }
        }
        f.write_str("]")
    }
}

/// The generating classes of the configuration algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `pr_i^*[x]`
    Point(usize),
    /// `Δ_ij`
    Diagonal(usize, usize),
    /// `η_I`, the product of `pr_i^*[x]` over `i ∈ I`
    Eta(Vec<usize>),
    /// `[C^n]`
    Fundamental,
}

/// A finite `RatPoly`-linear combination of configurations on a fixed `C^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass {
    n: usize,
    terms: BTreeMap<Configuration, RatPoly>,
}

impl ChowClass {
    pub fn zero(n: usize) -> Result<Self> {
        check_ambient(n)?;
        Ok(ChowClass {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn fundamental(n: usize) -> Result<Self> {
        Ok(Self::from(Configuration::fundamental(n)?))
    }

    pub fn generator(kind: &Generator, n: usize) -> Result<Self> {
        let conf = match kind {
            Generator::Fundamental => Configuration::fundamental(n)?,
            Generator::Point(i) => {
                check_index(*i, n)?;
                Configuration::from_blocks(n, [([*i], true)])?
            }
            Generator::Diagonal(i, j) => {
                check_index(*i, n)?;
                check_index(*j, n)?;
                if i == j {
                    return Err(Error::DegenerateDiagonal(*i));
                }
                Configuration::from_blocks(n, [([*i, *j], false)])?
            }
            Generator::Eta(set) => {
                for &i in set {
                    check_index(i, n)?;
                }
                let mut set = set.clone();
                set.sort_unstable();
                set.dedup();
                Configuration::from_blocks(n, set.into_iter().map(|i| ([i], true)))?
            }
        };
        Ok(Self::from(conf))
    }

    pub fn point(i: usize, n: usize) -> Result<Self> {
        Self::generator(&Generator::Point(i), n)
    }

    pub fn diagonal(i: usize, j: usize, n: usize) -> Result<Self> {
        Self::generator(&Generator::Diagonal(i, j), n)
    }

    pub fn eta(set: &[usize], n: usize) -> Result<Self> {
        Self::generator(&Generator::Eta(set.to_vec()), n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Configuration, &RatPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, conf: &Configuration) -> RatPoly {
        self.terms.get(conf).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, conf: Configuration, coeff: RatPoly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(conf) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ambient(&self, other: &ChowClass) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (c, p) in &other.terms {
            out.add_term(c.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ChowClass {
        self.scale(&RatPoly::int(-1))
    }

    /// Scalar action of the coefficient ring.
    pub fn scale(&self, s: &RatPoly) -> ChowClass {
        let mut out = ChowClass {
            n: self.n,
            terms: BTreeMap::new(),
        };
        if s.is_zero() {
            return out;
        }
        for (c, p) in &self.terms {
            out.add_term(c.clone(), p * s);
        }
        out
    }

    pub fn multiply(&self, other: &ChowClass) -> Result<ChowClass> {
        self.same_ambient(other)?;
        let mut out = ChowClass {
            n: self.n,
            terms: BTreeMap::new(),
        };
        let self_meet = RatPoly::int(2) - RatPoly::int(2) * RatPoly::g();
        let mut meet_powers = vec![RatPoly::one()];
        let right: Vec<(Vec<Factor>, &RatPoly)> =
            other.terms.iter().map(|(c, p)| (c.factors(), p)).collect();
        for (ca, pa) in &self.terms {
            for (factors, pb) in &right {
                let Some((conf, k)) = ca.clone().apply(factors) else {
                    continue;
                };
                while meet_powers.len() <= k as usize {
                    let next = meet_powers.last().unwrap() * &self_meet;
                    meet_powers.push(next);
                }
                out.add_term(conf, pa * *pb * &meet_powers[k as usize]);
            }
        }
        Ok(out)
    }

    /// `k`-fold product; the zeroth power is `[C^n]`.
    pub fn power(&self, k: u32) -> ChowClass {
        let mut acc = Self::from(Configuration {
            n: self.n,
            blocks: (1..=self.n).map(Block::singleton).collect(),
        });
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = acc.multiply(self).expect("same ambient");
        }
        acc
    }

    /// Degree of the codimension-`n` part.
    pub fn integrate(&self) -> RatPoly {
        self.terms
            .iter()
            .filter(|(c, _)| c.codim() == self.n)
            .map(|(_, p)| p.clone())
            .sum()
    }

    /// Pushforward along the projection forgetting the first factor.
    pub fn pushforward_forget_first(&self) -> Result<ChowClass> {
        if self.n < 2 {
            return Err(Error::AmbientTooSmall {
                op: "pushforward",
                n: self.n,
                min: 2,
            });
        }
        let mut out = ChowClass::zero(self.n - 1)?;
        for (c, p) in &self.terms {
            if let Some(image) = c.forget_first()? {
                out.add_term(image, p.clone());
            }
        }
        Ok(out)
    }

    /// Pullback along the projection `C^{n+1} -> C^n` forgetting the
    /// (new) first factor.
    pub fn pullback_insert_first(&self) -> Result<ChowClass> {
        let mut out = ChowClass::zero(self.n + 1)?;
        for (c, p) in &self.terms {
            out.add_term(c.insert_first()?, p.clone());
        }
        Ok(out)
    }

    /// Relabels every index `i` to `perm[i - 1]`.
    pub fn permute(&self, perm: &[usize]) -> Result<ChowClass> {
        check_permutation(perm, self.n)?;
        let mut out = ChowClass::zero(self.n)?;
        for (c, p) in &self.terms {
            out.add_term(c.permute(perm)?, p.clone());
        }
        Ok(out)
    }

    /// The homogeneous component of codimension `k`.
    pub fn codim_part(&self, k: usize) -> ChowClass {
        ChowClass {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(c, _)| c.codim() == k)
                .map(|(c, p)| (c.clone(), p.clone()))
                .collect(),
        }
    }

    /// Drops every term of codimension above `k`.
    pub fn truncate(&self, k: usize) -> ChowClass {
        ChowClass {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(c, _)| c.codim() <= k)
                .map(|(c, p)| (c.clone(), p.clone()))
                .collect(),
        }
    }

    /// The common codimension of all terms, if there is one.
    pub fn homogeneous_codim(&self) -> Option<usize> {
        let mut codims = self.terms.keys().map(Configuration::codim);
        let first = codims.next()?;
        codims.all(|c| c == first).then_some(first)
    }
}

impl From<Configuration> for ChowClass {
    fn from(conf: Configuration) -> Self {
        let mut terms = BTreeMap::new();
        let n = conf.n;
        terms.insert(conf, RatPoly::one());
        ChowClass { n, terms }
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (c, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if p.len() > 1 {
                write!(f, "({p}) · {c}")?;
            } else {
                write!(f, "{p} · {c}")?;
            }
        }
        Ok(())
    }
}

/// The symmetrised divisor classes `H̃ = Σ P_i`, `δ = Σ_{i<j} Δ_ij` and
/// `δ' = Σ_{j≥2} Δ_1j` on `C^n`.
#[derive(Clone, Debug)]
pub struct SymmetricDivisors {
    pub h: ChowClass,
    pub delta: ChowClass,
    pub delta_prime: ChowClass,
}

pub fn symmetric_classes(n: usize) -> Result<SymmetricDivisors> {
    let mut h = ChowClass::zero(n)?;
    let mut delta = ChowClass::zero(n)?;
    let mut delta_prime = ChowClass::zero(n)?;
    for i in 1..=n {
        h = h.add(&ChowClass::point(i, n)?)?;
        for j in i + 1..=n {
            let dij = ChowClass::diagonal(i, j, n)?;
            if i == 1 {
                delta_prime = delta_prime.add(&dij)?;
            }
            delta = delta.add(&dij)?;
        }
    }
    Ok(SymmetricDivisors {
        h,
        delta,
        delta_prime,
    })
}
