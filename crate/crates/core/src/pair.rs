//! Construction pairs `(g, γ)` and Moufang pairs `(f, β)` on a finite abelian group.
//!
//! A construction pair is a permutation `g` of `X` together with a symmetric
//! alternating biadditive `γ` such that
//!
//! * (C1) `g⁻¹(g(x)+g(y)) = x + y + γ(x,y) + g⁻¹γ(x,y) + g⁻²γ(x,y)`,
//! * (C2) `img γ ⊆ rad γ`,
//! * (C3) `g⁻¹γ(x,y) = γ(g(x),y)`.
//!
//! A Moufang permutation `f` is one whose additivity defect
//! `β(x,y) = f⁻¹(f(x)+f(y)) − x − y` is symmetric alternating biadditive with
//! (P2) `img β ⊆ rad β` and (P3) `β(f(x),f(y)) = f(β(f³(x),y))`.
//!
//! All axioms are checked exhaustively over pairs of elements. Verified pair
//! types can only be obtained through the checking constructors.

use std::fmt;

use serde::Serialize;

use crate::abelian::AbelianGroup;
use crate::error::{ForgeError, Result};
use crate::interval::{interval, IntervalSet};
use crate::maps::{bimap_check, bimap_radical, BiAddMap, BimapReport, PermTable};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub axiom: String,
    pub elements: Vec<usize>,
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.elements)
    }
}

/// Per-axiom outcome of a pair verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub holds: bool,
    pub map: BimapReport,
    /// `(axiom, passed)` in check order.
    pub axioms: Vec<(String, bool)>,
    /// First counterexample of each failed axiom, including failed map properties.
    pub failures: Vec<AxiomWitness>,
}

impl PairVerdict {
    fn from_parts(map: BimapReport, axioms: Vec<(String, bool)>, mut failures: Vec<AxiomWitness>) -> Self {
        let mut all = map
            .counterexamples
            .iter()
            .map(|w| AxiomWitness {
                axiom: w.property.to_string(),
                elements: w.elements.clone(),
            })
            .collect::<Vec<_>>();
        all.append(&mut failures);
        PairVerdict {
            holds: map.all_hold() && axioms.iter().all(|(_, ok)| *ok),
            map,
            axioms,
            failures: all,
        }
    }

    pub fn first_failure(&self) -> Option<&AxiomWitness> {
        self.failures.first()
    }
}

fn same_group(a: &AbelianGroup, b: &AbelianGroup, what: &str) -> Result<()> {
    if a != b {
        return Err(ForgeError::Structural(format!(
            "{what} is defined on group {b}, expected {a}"
        )));
    }
    Ok(())
}

fn radical_mask(gamma: &BiAddMap) -> Vec<bool> {
    let mut mask = vec![false; gamma.group().order()];
    for x in bimap_radical(gamma) {
        mask[x] = true;
    }
    mask
}

/// Checks the construction-pair axioms, reporting the first witness of each failure.
pub fn verify_construction_pair(
    group: &AbelianGroup,
    g: &PermTable,
    gamma: &BiAddMap,
) -> Result<PairVerdict> {
    same_group(group, g.group(), "g")?;
    same_group(group, gamma.group(), "gamma")?;
    let n = group.order();
    let map = bimap_check(gamma);
    let ginv = g.perm().inverse();
    let ginv2 = ginv.compose(&ginv);

    let mut c1 = None;
    'c1: for x in 0..n {
        for y in 0..n {
            let lhs = ginv.apply(group.add_idx(g.apply(x), g.apply(y)));
            let c = gamma.get(x, y);
            let rhs = [c, ginv.apply(c), ginv2.apply(c)]
                .iter()
                .fold(group.add_idx(x, y), |acc, &v| group.add_idx(acc, v));
            if lhs != rhs {
                c1 = Some(vec![x, y]);
                break 'c1;
            }
        }
    }

    let rad = radical_mask(gamma);
    let c2 = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| !rad[gamma.get(x, y)])
        .map(|(x, y)| vec![x, y]);

    let c3 = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| ginv.apply(gamma.get(x, y)) != gamma.get(g.apply(x), y))
        .map(|(x, y)| vec![x, y]);

    let mut failures = Vec::new();
    let mut axioms = Vec::new();
    for (name, w) in [("C1", c1), ("C2", c2), ("C3", c3)] {
        axioms.push((name.to_string(), w.is_none()));
        if let Some(elements) = w {
            failures.push(AxiomWitness {
                axiom: name.to_string(),
                elements,
            });
        }
    }
    Ok(PairVerdict::from_parts(map, axioms, failures))
}

/// `r(g,γ)`: least `r ≥ 1` with `Σ_{0≤k<r} g^k(x) ∈ rad γ` for every `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RValue {
    Finite(u64),
    Infinite,
}

impl RValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            RValue::Finite(r) => Some(r),
            RValue::Infinite => None,
        }
    }

    /// True iff `r` divides `n` (with `n = 0` always accepted).
    pub fn divides(self, n: i64) -> bool {
        match self {
            RValue::Finite(r) => n % r as i64 == 0,
            RValue::Infinite => n == 0,
        }
    }
}

impl fmt::Display for RValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RValue::Finite(r) => write!(f, "{r}"),
            RValue::Infinite => write!(f, "infinite"),
        }
    }
}

/// A verified construction pair with its powers of `g` cached.
#[derive(Clone)]
pub struct ConstructionPair {
    group: AbelianGroup,
    g: PermTable,
    gamma: BiAddMap,
    g_order: u64,
    /// `powers[e] = g^e` for `0 <= e < |g|`.
    powers: Vec<Perm>,
    rad: Vec<bool>,
    r: RValue,
}

impl fmt::Debug for ConstructionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstructionPair")
            .field("group", &self.group)
            .field("g", &self.g.images())
            .field("gamma", &self.gamma)
            .field("g_order", &self.g_order)
            .field("r", &self.r)
            .finish()
    }
}

impl PartialEq for ConstructionPair {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.g == other.g && self.gamma == other.gamma
    }
}

impl Eq for ConstructionPair {}

impl ConstructionPair {
    /// Verifies `(g, γ)` and caches the derived quantities.
    pub fn new(g: PermTable, gamma: BiAddMap) -> Result<Self> {
        let group = g.group().clone();
        let verdict = verify_construction_pair(&group, &g, &gamma)?;
        if !verdict.holds {
            let w = verdict.first_failure().map(|w| w.to_string()).unwrap_or_default();
            return Err(ForgeError::Validation(format!("not a construction pair: {w}")));
        }
        Ok(Self::assemble(group, g, gamma))
    }

    fn assemble(group: AbelianGroup, g: PermTable, gamma: BiAddMap) -> Self {
        let g_order = g.order();
        let mut powers = Vec::with_capacity(g_order as usize);
        let mut cur = Perm::identity(group.order());
        for _ in 0..g_order {
            powers.push(cur.clone());
            cur = g.perm().compose(&cur);
        }
        let rad = radical_mask(&gamma);
        let mut p = ConstructionPair {
            group,
            g,
            gamma,
            g_order,
            powers,
            rad,
            r: RValue::Infinite,
        };
        p.r = p.scan_r();
        p
    }

    /// The pair `(id, 0)` on `group`.
    pub fn trivial(group: AbelianGroup) -> Self {
        let g = PermTable::identity(group.clone());
        let gamma = BiAddMap::zero(group.clone());
        Self::assemble(group, g, gamma)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn g(&self) -> &PermTable {
        &self.g
    }

    pub fn gamma(&self) -> &BiAddMap {
        &self.gamma
    }

    pub fn g_order(&self) -> u64 {
        self.g_order
    }

    pub fn r(&self) -> RValue {
        self.r
    }

    pub fn in_radical(&self, x: usize) -> bool {
        self.rad[x]
    }

    pub fn radical(&self) -> Vec<usize> {
        (0..self.group.order()).filter(|&x| self.rad[x]).collect()
    }

    /// `g^e` for any integer exponent.
    #[inline]
    pub fn g_pow(&self, e: i64) -> &Perm {
        &self.powers[e.rem_euclid(self.g_order as i64) as usize]
    }

    /// `Δ_U(x,y) = Σ_{k∈U} g^{-k}(γ(x,y))`.
    pub fn delta_sum<I: IntoIterator<Item = i64>>(&self, u: I, x: usize, y: usize) -> usize {
        let c = self.gamma.get(x, y);
        if c == 0 {
            return 0;
        }
        u.into_iter()
            .fold(0, |acc, k| self.group.add_idx(acc, self.g_pow(-k).apply(c)))
    }

    /// `Δ_{I(i,j)}(x,y)`.
    #[inline]
    pub fn delta_interval(&self, i: i64, j: i64, x: usize, y: usize) -> usize {
        let c = self.gamma.get(x, y);
        if c == 0 {
            return 0;
        }
        let iv: IntervalSet = interval(i, j);
        iv.into_iter()
            .fold(0, |acc, k| self.group.add_idx(acc, self.g_pow(-k).apply(c)))
    }

    /// Definitional scan for `r(g,γ)` over `r = 1..=3|g|`.
    fn scan_r(&self) -> RValue {
        let n = self.group.order();
        let mut partial = vec![0usize; n];
        let limit = 3 * self.g_order;
        for r in 1..=limit {
            let gk = self.g_pow(r as i64 - 1);
            let mut all = true;
            for (x, s) in partial.iter_mut().enumerate() {
                *s = self.group.add_idx(*s, gk.apply(x));
                all &= self.rad[*s];
            }
            if all {
                return RValue::Finite(r);
            }
        }
        RValue::Infinite
    }

    /// `r` recomputed as the least divisor `d` of `3|g|` satisfying the radical condition.
    /// Used to cross-check the definitional scan.
    pub fn r_by_divisors(&self) -> RValue {
        let m = 3 * self.g_order;
        let n = self.group.order();
        for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
            let ok = (0..n).all(|x| {
                let s = (0..d as i64).fold(0, |acc, k| self.group.add_idx(acc, self.g_pow(k).apply(x)));
                self.rad[s]
            });
            if ok {
                return RValue::Finite(d);
            }
        }
        RValue::Infinite
    }
}

pub fn delta_sum<I: IntoIterator<Item = i64>>(p: &ConstructionPair, u: I, x: usize, y: usize) -> usize {
    p.delta_sum(u, x, y)
}

pub fn pair_r(p: &ConstructionPair) -> RValue {
    p.r()
}

/// `(g⁻¹, g∘γ)`, re-verified.
pub fn pair_inverse(p: &ConstructionPair) -> Result<ConstructionPair> {
    let ginv = p.g().inverse();
    let gamma = p.gamma().post_compose(p.g());
    ConstructionPair::new(ginv, gamma)
        .map_err(|e| ForgeError::Internal(format!("inverse pair failed verification: {e}")))
}

/// `β(x,y) = f⁻¹(f(x)+f(y)) − x − y`, assuming nothing about `f`.
pub fn beta_of(f: &PermTable) -> BiAddMap {
    let g = f.group();
    let finv = f.perm().inverse();
    BiAddMap::from_fn(g.clone(), |x, y| {
        let s = finv.apply(g.add_idx(f.apply(x), f.apply(y)));
        g.sub_idx(s, g.add_idx(x, y))
    })
}

/// Checks that `f` is a Moufang permutation.
pub fn verify_moufang_permutation(group: &AbelianGroup, f: &PermTable) -> Result<PairVerdict> {
    same_group(group, f.group(), "f")?;
    let n = group.order();
    let beta = beta_of(f);
    let map = bimap_check(&beta);
    let rad = radical_mask(&beta);
    let p2 = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| !rad[beta.get(x, y)])
        .map(|(x, y)| vec![x, y]);
    let f3 = f.perm().pow(3);
    let p3 = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| beta.get(f.apply(x), f.apply(y)) != f.apply(beta.get(f3.apply(x), y)))
        .map(|(x, y)| vec![x, y]);
    let mut failures = Vec::new();
    let mut axioms = Vec::new();
    for (name, w) in [("P2", p2), ("P3", p3)] {
        axioms.push((name.to_string(), w.is_none()));
        if let Some(elements) = w {
            failures.push(AxiomWitness {
                axiom: name.to_string(),
                elements,
            });
        }
    }
    Ok(PairVerdict::from_parts(map, axioms, failures))
}

/// A verified Moufang pair `(f, β)` with `β = beta_of(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoufangPair {
    group: AbelianGroup,
    f: PermTable,
    beta: BiAddMap,
}

impl MoufangPair {
    pub fn new(f: PermTable) -> Result<Self> {
        let group = f.group().clone();
        let verdict = verify_moufang_permutation(&group, &f)?;
        if !verdict.holds {
            let w = verdict.first_failure().map(|w| w.to_string()).unwrap_or_default();
            return Err(ForgeError::Validation(format!("not a Moufang permutation: {w}")));
        }
        let beta = beta_of(&f);
        Ok(MoufangPair { group, f, beta })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn f(&self) -> &PermTable {
        &self.f
    }

    pub fn beta(&self) -> &BiAddMap {
        &self.beta
    }

    /// `β_i = Σ_{k∈I(0,i)} f^{-3k} β`.
    pub fn beta_power(&self, i: i64) -> BiAddMap {
        let g = &self.group;
        let pows: Vec<Perm> = interval(0, i).iter().map(|k| self.f.perm().pow(-3 * k)).collect();
        BiAddMap::from_fn(g.clone(), |x, y| {
            let b = self.beta.get(x, y);
            pows.iter().fold(0, |acc, p| g.add_idx(acc, p.apply(b)))
        })
    }
}

/// `(f^i, β_i)`, checked against `beta_of(f^i)` and re-verified.
pub fn moufang_power_pair(mp: &MoufangPair, i: i64) -> Result<MoufangPair> {
    let fi = mp.f().power(i);
    let beta_i = mp.beta_power(i);
    let direct = beta_of(&fi);
    if beta_i != direct {
        return Err(ForgeError::Internal(format!(
            "β_{i} from the power sum differs from the additivity defect of f^{i}"
        )));
    }
    MoufangPair::new(fi).map_err(|e| ForgeError::Internal(format!("f^{i} is not Moufang: {e}")))
}

/// `(f³, β)` as a construction pair.
pub fn cube_pair(mp: &MoufangPair) -> Result<ConstructionPair> {
    ConstructionPair::new(mp.f().power(3), mp.beta().clone())
        .map_err(|e| ForgeError::Internal(format!("cube of a Moufang pair failed: {e}")))
}
