//! Finite abelian groups `Z_{n_1} x ... x Z_{n_k}` given by their invariants.
//!
//! Elements have two interchangeable forms: a [`GroupElement`] holding residue
//! coordinates, and a plain `usize` index given by the little-endian
//! mixed-radix codec `x_1 + n_1*(x_2 + n_2*(...))`. The index is the canonical
//! element id used by every table and file format in the crate; the hot paths
//! work on indices only.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{ForgeError, Result};

/// Groups up to this order carry a precomputed addition table.
const ADD_TABLE_MAX: usize = 256;
/// Upper bound on supported group orders.
const MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }
}

#[derive(Clone)]
pub struct AbelianGroup {
    invariants: Vec<u64>,
    order: usize,
    add_table: Option<Arc<[u32]>>,
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.invariants == other.invariants
    }
}

impl Eq for AbelianGroup {}

impl Hash for AbelianGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.invariants.hash(state)
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({})", self)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariants.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for AbelianGroup {
    type Err = ForgeError;

    /// Parses the literal `n1,n2,...,nk`. `1` and the empty string denote the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(AbelianGroup::trivial());
        }
        let mut inv = Vec::new();
        for part in s.split(',') {
            let n: u64 = part
                .trim()
                .parse()
                .map_err(|_| ForgeError::Parse(format!("bad group invariant {part:?} in {s:?}")))?;
            inv.push(n);
        }
        AbelianGroup::new(inv)
    }
}

impl AbelianGroup {
    pub fn new(invariants: Vec<u64>) -> Result<Self> {
        let mut order: u64 = 1;
        for &n in &invariants {
            if n < 2 {
                return Err(ForgeError::Validation(format!(
                    "group invariant {n} must be at least 2"
                )));
            }
            order = order.saturating_mul(n);
            if order > MAX_ORDER {
                return Err(ForgeError::Resource(format!(
                    "group order exceeds {MAX_ORDER}"
                )));
            }
        }
        let mut g = AbelianGroup {
            invariants,
            order: order as usize,
            add_table: None,
        };
        if g.order <= ADD_TABLE_MAX {
            let n = g.order;
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    t.push(g.add_slow(a, b) as u32);
                }
            }
            g.add_table = Some(t.into());
        }
        Ok(g)
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            invariants: Vec::new(),
            order: 1,
            add_table: Some(vec![0u32].into()),
        }
    }

    /// The cyclic group of order `n` (trivial for `n == 1`).
    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(vec![n])
        }
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.rank()])
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if x.coords.len() != self.rank() {
            return Err(ForgeError::Structural(format!(
                "element has {} coordinates, group {} has rank {}",
                x.coords.len(),
                self,
                self.rank()
            )));
        }
        for (c, n) in x.coords.iter().zip(&self.invariants) {
            if c >= n {
                return Err(ForgeError::Structural(format!(
                    "coordinate {c} out of range for Z_{n}"
                )));
            }
        }
        Ok(())
    }

    /// Builds an element, validating the coordinates.
    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        let x = GroupElement::new(coords);
        self.check(&x)?;
        Ok(x)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.invariants)
            .map(|((a, b), n)| (a + b) % n)
            .collect();
        Ok(GroupElement::new(coords))
    }

    /// `m * x` for any integer `m`; `scale(-1, x)` is the inverse of `x`.
    pub fn scale(&self, m: i64, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        let coords = x
            .coords
            .iter()
            .zip(&self.invariants)
            .map(|(&a, &n)| {
                let n = n as i128;
                ((m as i128 * a as i128).rem_euclid(n)) as u64
            })
            .collect();
        Ok(GroupElement::new(coords))
    }

    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        self.check(x)?;
        let mut idx: u64 = 0;
        for (c, n) in x.coords.iter().zip(&self.invariants).rev() {
            idx = idx * n + c;
        }
        Ok(idx as usize)
    }

    pub fn element_at(&self, idx: usize) -> Result<GroupElement> {
        if idx >= self.order {
            return Err(ForgeError::Structural(format!(
                "element index {idx} out of range for group {} of order {}",
                self, self.order
            )));
        }
        Ok(GroupElement::new(self.coords_of(idx)))
    }

    pub fn element_order(&self, x: &GroupElement) -> Result<u64> {
        Ok(self.order_idx(self.index_of(x)?))
    }

    /// Smallest subgroup containing `gens`, as a sorted element list.
    pub fn subgroup_span(&self, gens: &[GroupElement]) -> Result<Vec<GroupElement>> {
        let idx = gens
            .iter()
            .map(|g| self.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        self.span_indices(&idx)
            .into_iter()
            .map(|i| self.element_at(i))
            .collect()
    }

    /// True iff `y -> 3y` is onto, which for a finite group means 3 does not divide the order.
    pub fn is_three_divisible(&self) -> bool {
        !self.order.is_multiple_of(3)
    }

    // ---- index-level arithmetic ----

    fn coords_of(&self, mut idx: usize) -> Vec<u64> {
        self.invariants
            .iter()
            .map(|&n| {
                let c = idx as u64 % n;
                idx /= n as usize;
                c
            })
            .collect()
    }

    fn encode(&self, coords: &[u64]) -> usize {
        let mut idx: u64 = 0;
        for (c, n) in coords.iter().zip(&self.invariants).rev() {
            idx = idx * n + c;
        }
        idx as usize
    }

    fn add_slow(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut idx = 0usize;
        let mut radix = 1usize;
        for &n in &self.invariants {
            let n = n as usize;
            let c = (a % n + b % n) % n;
            a /= n;
            b /= n;
            idx += c * radix;
            radix *= n;
        }
        idx
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        match &self.add_table {
            Some(t) => t[a * self.order + b] as usize,
            None => self.add_slow(a, b),
        }
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        let c: Vec<u64> = self
            .coords_of(a)
            .iter()
            .zip(&self.invariants)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        self.encode(&c)
    }

    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn scale_idx(&self, m: i64, a: usize) -> usize {
        let c: Vec<u64> = self
            .coords_of(a)
            .iter()
            .zip(&self.invariants)
            .map(|(&x, &n)| ((m as i128 * x as i128).rem_euclid(n as i128)) as u64)
            .collect();
        self.encode(&c)
    }

    /// Order of the element with index `a`: lcm over coordinates of `n / gcd(n, x)`.
    pub fn order_idx(&self, a: usize) -> u64 {
        self.coords_of(a)
            .iter()
            .zip(&self.invariants)
            .fold(1u64, |acc, (&x, &n)| lcm(acc, n / gcd(n, x)))
    }

    /// Subgroup generated by the given element indices, sorted ascending.
    pub fn span_indices(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0usize];
        // Closure under addition of generators is enough: in a finite group
        // the cyclic subgroup of each generator already contains its negative.
        let gens: Vec<usize> = gens
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|&g| g != 0)
            .collect();
        let mut head = 0;
        while head < members.len() {
            let m = members[head];
            head += 1;
            for &g in &gens {
                let s = self.add_idx(m, g);
                if !seen[s] {
                    seen[s] = true;
                    members.push(s);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// True iff `set` (as indices) is closed under addition and negation and contains 0.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.order];
        for &s in set {
            if s >= self.order {
                return false;
            }
            mark[s] = true;
        }
        if !mark[0] {
            return false;
        }
        set.iter().all(|&a| {
            mark[self.neg_idx(a)] && set.iter().all(|&b| mark[self.add_idx(a, b)])
        })
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
