use std::collections::BTreeSet;

use serde::Serialize;

use super::{build_table, ext_nucleus_center, ExtElement, ExtensionSpec};
use crate::abelian::{gcd, AbelianGroup};
use crate::error::{ForgeError, Result};
use crate::loops::{isomorphic, IsoResult, LoopTable};
use crate::maps::PermTable;
use crate::pair::{cube_pair, MoufangPair};
use crate::perm::Perm;

/// An abelian group placed inside a loop: `elems[x]` is the table index of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub group: AbelianGroup,
    pub elems: Vec<usize>,
}

impl Embedding {
    pub fn new(group: AbelianGroup, elems: Vec<usize>) -> Self {
        Embedding { group, elems }
    }

    /// `1 × X` inside a built extension.
    pub fn of_spec(spec: &ExtensionSpec) -> Self {
        Embedding {
            group: spec.pair().group().clone(),
            elems: spec.x_indices(),
        }
    }

    fn check(&self, t: &LoopTable) -> Result<Vec<usize>> {
        let m = self.group.order();
        if self.elems.len() != m {
            return Err(ForgeError::Precondition(format!(
                "embedding lists {} elements for a group of order {m}",
                self.elems.len()
            )));
        }
        if let Some(&bad) = self.elems.iter().find(|&&e| e >= t.order()) {
            return Err(ForgeError::Precondition(format!("embedded index {bad} is outside the loop")));
        }
        let mut pos = vec![usize::MAX; t.order()];
        for (x, &e) in self.elems.iter().enumerate() {
            if pos[e] != usize::MAX {
                return Err(ForgeError::Precondition(format!("embedding is not injective at {e}")));
            }
            pos[e] = x;
        }
        for x in 0..m {
            for y in 0..m {
                if t.mul(self.elems[x], self.elems[y]) != self.elems[self.group.add_idx(x, y)] {
                    return Err(ForgeError::Precondition(format!(
                        "embedding is not a homomorphism at ({x},{y})"
                    )));
                }
            }
        }
        let mut image = self.elems.clone();
        image.sort_unstable();
        if !t.is_normal(&image) {
            return Err(ForgeError::Precondition("embedded subgroup is not normal".into()));
        }
        Ok(pos)
    }
}

/// `f = T_a` restricted to the embedded `X`, returned as a verified Moufang pair.
pub fn extract_moufang_permutation(t: &LoopTable, x: &Embedding, a: usize) -> Result<MoufangPair> {
    if a >= t.order() {
        return Err(ForgeError::Precondition(format!("element {a} is outside the loop")));
    }
    if !t.is_moufang() {
        return Err(ForgeError::Precondition("loop is not Moufang".into()));
    }
    let pos = x.check(t)?;
    let image: Vec<usize> = x
        .elems
        .iter()
        .map(|&e| pos[t.conj(a, e)])
        .collect();
    if image.contains(&usize::MAX) {
        return Err(ForgeError::Internal("conjugation does not preserve the normal subgroup".into()));
    }
    let f = PermTable::new(x.group.clone(), image)?;
    MoufangPair::new(f).map_err(|e| ForgeError::Internal(format!("restricted conjugation: {e}")))
}

/// `(i, j, x, y)` at which a multiplication formula disagrees with the table.
pub type FormulaWitness = (i64, i64, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    /// Exponents `i, j` ranged over `[-window, window]`.
    pub window: i64,
    pub f1_witness: Option<FormulaWitness>,
    pub f2_witness: Option<FormulaWitness>,
}

impl TheoremCheck {
    pub fn holds(&self) -> bool {
        self.f1_witness.is_none() && self.f2_witness.is_none()
    }
}

/// Checks, for `f = T_a|X`,
/// `a^{3i}x·ya^{3j} = a^{3(i+j)}(f^{-3j}x + f^{-3j}y + Σ_{k∈I(-2j,i)} f^{-3k}β(x,y))` and
/// `a^{3i}x·a^{3j}y = a^{3(i+j)}(f^{-3j}x + y + Σ_{k∈I(i+j,-j)} f^{-3k}β(x,y))`
/// for all `x, y` and `|i|, |j|` up to the order of `a³`.
pub fn verify_theorem_multiplication(t: &LoopTable, x: &Embedding, a: usize) -> Result<TheoremCheck> {
    let mp = extract_moufang_permutation(t, x, a)?;
    let grp = &x.group;
    let a3 = t.power(a, 3);
    let window = (1..=t.order() as i64)
        .find(|&k| t.power(a3, k) == t.identity())
        .unwrap_or(1);

    let f3 = mp.f().perm().pow(3);
    let ord3 = f3.order() as i64;
    let f3_pows: Vec<Perm> = (0..ord3).map(|e| f3.pow(e)).collect();
    let f3_pow = |e: i64| &f3_pows[e.rem_euclid(ord3) as usize];
    let beta_sum = |lo: i64, hi: i64, b: usize| -> usize {
        crate::interval::interval(lo, hi)
            .iter()
            .fold(0, |acc, k| grp.add_idx(acc, f3_pow(-k).apply(b)))
    };
    let a3_pow = |e: i64| t.power(a3, e);

    let m = grp.order();
    let mut f1 = None;
    let mut f2 = None;
    for i in -window..=window {
        let ai = a3_pow(i);
        for j in -window..=window {
            let aj = a3_pow(j);
            let aij = a3_pow(i + j);
            let fj = f3_pow(-j);
            for xx in 0..m {
                let aix = t.mul(ai, x.elems[xx]);
                for yy in 0..m {
                    let b = mp.beta().get(xx, yy);
                    if f1.is_none() {
                        let lhs = t.mul(aix, t.mul(x.elems[yy], aj));
                        let v = grp.add_idx(grp.add_idx(fj.apply(xx), fj.apply(yy)), beta_sum(-2 * j, i, b));
                        if lhs != t.mul(aij, x.elems[v]) {
                            f1 = Some((i, j, xx, yy));
                        }
                    }
                    if f2.is_none() {
                        let lhs = t.mul(aix, t.mul(aj, x.elems[yy]));
                        let v = grp.add_idx(grp.add_idx(fj.apply(xx), yy), beta_sum(i + j, -j, b));
                        if lhs != t.mul(aij, x.elems[v]) {
                            f2 = Some((i, j, xx, yy));
                        }
                    }
                }
            }
        }
    }
    Ok(TheoremCheck {
        window,
        f1_witness: f1,
        f2_witness: f2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub applicable: bool,
    pub reason: Option<String>,
    /// `a = b^t` with `3t ≡ 1 (mod n)`.
    pub t: Option<u64>,
    pub isomorphic: Option<bool>,
    /// `(a^{3i}, x) ↦ a^{3i}x` is an isomorphism from the rebuilt loop.
    pub phi_isomorphism: Option<bool>,
    /// Rebuilt pair `(f³, β)` equals the input pair.
    pub same_pair: Option<bool>,
    pub theorem: Option<TheoremCheck>,
}

impl RoundTrip {
    fn not_applicable(reason: String) -> Self {
        RoundTrip {
            applicable: false,
            reason: Some(reason),
            t: None,
            isomorphic: None,
            phi_isomorphism: None,
            same_pair: None,
            theorem: None,
        }
    }

    /// True when not applicable, or when every check passed.
    pub fn passed(&self) -> bool {
        !self.applicable
            || (self.isomorphic == Some(true)
                && self.phi_isomorphism == Some(true)
                && self.theorem.as_ref().is_some_and(TheoremCheck::holds))
    }
}

/// Rebuilds the loop from `(f³, β)` with `f = T_a|X` and compares.
pub fn split_roundtrip(spec: &ExtensionSpec) -> Result<RoundTrip> {
    let n = spec.n();
    if n.is_multiple_of(3) {
        return Ok(RoundTrip::not_applicable(format!("3 divides n = {n}")));
    }
    if !spec.pair().group().is_three_divisible() {
        return Ok(RoundTrip::not_applicable(format!(
            "X = {} is not 3-divisible",
            spec.pair().group()
        )));
    }
    let q = build_table(spec)?;
    let t_exp = (0..n).find(|&t| (3 * t) % n == 1 % n).expect("3 is invertible mod n");
    let a = spec.index_of(ExtElement { i: t_exp, x: 0 });
    let emb = Embedding::of_spec(spec);
    let mp = extract_moufang_permutation(&q, &emb, a)?;
    let cp = cube_pair(&mp)?;
    let same_pair = cp == *spec.pair();
    let spec2 = ExtensionSpec::new(n, cp)
        .map_err(|e| ForgeError::Internal(format!("rebuilt pair does not admit n = {n}: {e}")))?;
    let m2 = build_table(&spec2)?;

    let a3 = q.power(a, 3);
    let phi: Vec<usize> = (0..m2.order())
        .map(|idx| {
            let e = spec2.element_at(idx);
            q.mul(q.power(a3, e.i as i64), emb.elems[e.x])
        })
        .collect();
    let bijective = phi.iter().collect::<BTreeSet<_>>().len() == phi.len();
    let phi_ok = bijective
        && (0..m2.order()).all(|u| (0..m2.order()).all(|v| phi[m2.mul(u, v)] == q.mul(phi[u], phi[v])));

    let iso = match isomorphic(&m2, &q) {
        IsoResult::Isomorphic(_) => Some(true),
        IsoResult::NotIsomorphic => Some(false),
        IsoResult::Unknown => None,
    };
    let theorem = verify_theorem_multiplication(&q, &emb, a)?;
    Ok(RoundTrip {
        applicable: true,
        reason: None,
        t: Some(t_exp),
        isomorphic: iso.or(phi_ok.then_some(true)),
        phi_isomorphism: Some(phi_ok),
        same_pair: Some(same_pair),
        theorem: Some(theorem),
    })
}

/// All subloops `⟨(b^k, z)⟩` with `(b^k, z)` central and `|b^k| = |z|`,
/// each checked normal and meeting `C × 0` and `1 × X` trivially.
pub fn central_cyclic_kernels(spec: &ExtensionSpec) -> Result<Vec<Vec<usize>>> {
    let n = spec.n();
    let grp = spec.pair().group();
    let center = ext_nucleus_center(spec).center;
    let mut found = BTreeSet::new();
    for idx in center {
        let e = spec.element_at(idx);
        let ord_c = n / gcd(n, e.i);
        if ord_c != grp.order_idx(e.x) {
            continue;
        }
        let members: BTreeSet<usize> = (0..ord_c)
            .map(|s| {
                spec.index_of(ExtElement {
                    i: (s * e.i) % n,
                    x: grp.scale_idx(s as i64, e.x),
                })
            })
            .collect();
        found.insert(members.into_iter().collect::<Vec<_>>());
    }
    let t = build_table(spec)?;
    let xs: BTreeSet<usize> = spec.x_indices().into_iter().collect();
    let cs: BTreeSet<usize> = spec.c_indices().into_iter().collect();
    for s in &found {
        let meets_trivially = |other: &BTreeSet<usize>| s.iter().filter(|v| other.contains(v)).count() == 1;
        if !t.is_normal(s) || !meets_trivially(&xs) || !meets_trivially(&cs) {
            return Err(ForgeError::Internal(format!("candidate kernel {s:?} fails verification")));
        }
    }
    Ok(found.into_iter().collect())
}
